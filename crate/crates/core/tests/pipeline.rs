use wph_core::checkpoint::Checkpoint;
use wph_core::export::{export_records, export_series, import_records, import_series, Format};
use wph_core::jk::verify_jk;
use wph_core::linalg::polyhedron::hilbert_basis_2d;
use wph_core::linalg::Family;
use wph_core::pipeline::{classify, finish, search_stage, Classification, ClassifyOptions, Filter};
use wph_core::series::{analyze_family, SeriesOptions};
use wph_core::verify::is_good;
use wph_core::WeightSystem;

fn full_text(c: &Classification) -> String {
    let recs: Vec<_> = c.records(Filter::All).into_iter().cloned().collect();
    format!("{}\n{}{}", c.counts, export_series(&c.series, Format::Text), export_records(&recs, Format::Text))
}

#[test]
fn sharded_runs_merge_to_the_unsharded_result() {
    let (dim, k) = (2, -2);
    let whole = classify(dim, k, &ClassifyOptions::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let n = 3;
    let mut paths = Vec::new();
    for i in 0..n {
        let path = dir.path().join(format!("shard{i}.jsonl"));
        let opts = ClassifyOptions {
            shard: Some((i, n)),
            ..ClassifyOptions::default()
        };
        let cp = Checkpoint::load(dim, k, &[]).unwrap().append_to(&path).unwrap();
        search_stage(dim, k, &opts, Some(&cp)).unwrap();
        paths.push(path);
    }
    // Shard files in any order give the same answer.
    paths.reverse();
    let cp = Checkpoint::load(dim, k, &paths).unwrap();
    let raw = search_stage(dim, k, &ClassifyOptions::default(), Some(&cp)).unwrap();
    let merged = finish(dim, k, &raw, &ClassifyOptions::default());
    assert_eq!(full_text(&merged), full_text(&whole));
}

#[test]
fn resume_skips_a_truncated_last_line() {
    let (dim, k) = (2, 1);
    let opts = ClassifyOptions::default();
    let whole = classify(dim, k, &opts).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.jsonl");
    let cp = Checkpoint::load(dim, k, &[]).unwrap().append_to(&path).unwrap();
    search_stage(dim, k, &opts, Some(&cp)).unwrap();
    drop(cp);
    // Simulate a run killed while writing: keep half of the last entry.
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() > 2);
    let last = lines[lines.len() - 1];
    let mut cut = lines[..lines.len() - 1].join("\n");
    cut.push('\n');
    cut.push_str(&last[..last.len() / 2]);
    std::fs::write(&path, cut).unwrap();
    let cp = Checkpoint::load(dim, k, std::slice::from_ref(&path)).unwrap();
    assert_eq!(cp.done().len(), lines.len() - 1);
    // Entries of another run share the file; appending first drops the
    // partial line.
    let other = Checkpoint::load(1, 1, &[]).unwrap().append_to(&path).unwrap();
    search_stage(1, 1, &opts, Some(&other)).unwrap();
    drop(other);
    let cp = Checkpoint::load(dim, k, std::slice::from_ref(&path)).unwrap().append_to(&path).unwrap();
    let raw = search_stage(dim, k, &opts, Some(&cp)).unwrap();
    assert_eq!(full_text(&finish(dim, k, &raw, &opts)), full_text(&whole));
    drop(cp);
    assert_eq!(Checkpoint::load(dim, k, std::slice::from_ref(&path)).unwrap().done().len(), lines.len());
    assert!(Checkpoint::load(3, k, &[path]).unwrap().done().is_empty());
}

#[test]
fn records_round_trip_in_every_format() {
    let c = classify(2, 0, &ClassifyOptions::default()).unwrap();
    let recs: Vec<_> = c.records(Filter::All).into_iter().cloned().collect();
    assert_eq!(recs.len(), 95);
    for format in [Format::Text, Format::Json, Format::Csv] {
        let text = export_records(&recs, format);
        let back = import_records(&text, format).unwrap();
        let ws: Vec<&WeightSystem> = back.iter().map(|r| &r.ws).collect();
        let want: Vec<&WeightSystem> = recs.iter().map(|r| &r.ws).collect();
        assert_eq!(ws, want, "{format:?}");
        assert_eq!(export_records(&back, format), text, "{format:?}");
    }
}

#[test]
fn series_round_trip() {
    let c = classify(2, -2, &ClassifyOptions::default()).unwrap();
    let sols: Vec<_> = c.series.iter().map(|e| e.solution.clone()).collect();
    for format in [Format::Text, Format::Json] {
        let back = import_series(&export_series(&c.series, format), format).unwrap();
        assert_eq!(back, sols, "{format:?}");
    }
}

#[test]
fn tampered_record_is_rejected() {
    // X_6 ⊂ P(3,2,1,1) is quasismooth; claiming otherwise must fail.
    let err = import_records("6 3 2 1 1 1 0 SM\n", Format::Text).unwrap_err();
    assert!(err.to_string().contains('1'), "{err}");
}

#[test]
fn two_parameter_family_keeps_only_its_vertex() {
    let r1 = vec![15, 10, 3, 2, 0, 0, 30];
    let r2 = vec![15, 10, 3, 2, 2, 0, 32];
    let generators = hilbert_basis_2d(&r1, &r2);
    assert_eq!(generators.len(), 3);
    assert!(generators.contains(&vec![15, 10, 3, 2, 1, 0, 31]));
    let fam = Family {
        base: vec![15, 10, 3, 2, 1, 1, 31],
        rays: vec![r1, r2],
        generators,
    };
    let an = analyze_family(&fam, &SeriesOptions::default());
    let vertex = WeightSystem::new(vec![15, 10, 3, 2, 1, 1], 31).unwrap();
    assert!(is_good(&vertex, true));
    assert_eq!(an.sporadic, vec![vertex]);
    assert!(an.series.is_empty());
}

#[test]
fn index_one_surfaces_match_double_covers_of_curves() {
    let opts = ClassifyOptions::default();
    let c = classify(2, -1, &opts).unwrap();
    let cy = classify(1, 0, &opts).unwrap();
    let list: Vec<_> = cy.sporadic.iter().map(|r| r.ws.clone()).collect();
    let sols: Vec<_> = c.series.iter().map(|e| e.solution.clone()).collect();
    let report = verify_jk(&sols, &list);
    assert!(report.is_bijection(), "{}", report.text());
    assert_eq!(report.matched, 1);
}
