use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;

use wph_core::checkpoint::Checkpoint;
use wph_core::export::{export_records, export_series, Format};
use wph_core::jk::verify_jk;
use wph_core::pipeline::{finish, search_stage, Classification, ClassifyOptions, Filter, ReorderPolicy};
use wph_core::stats::{render, stats, Grouping};

/// Classifies well-formed quasismooth hypersurfaces X_d ⊂ P(a_1, ..., a_s)
/// of a given dimension and canonical degree k = d - Σ a_i.
#[derive(Parser, Debug)]
#[command(name = "wph", version)]
struct Args {
    /// Dimension of the hypersurface (s = dim + 2 weights).
    #[arg(long)]
    dim: usize,
    /// Canonical degree.
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    /// Drop the well-formedness requirement.
    #[arg(long)]
    no_wellformed: bool,
    /// Members scanned per surviving series.
    #[arg(long, default_value_t = 100)]
    scan: usize,
    /// Records to emit: all, canonical, terminal or smooth.
    #[arg(long, default_value = "all")]
    filter: Filter,
    /// Search only root branches i mod n; the raw result goes to --out.
    #[arg(long, value_parser = parse_shard)]
    shard: Option<(usize, usize)>,
    /// Checkpoint files to resume from; new results are appended to the first.
    #[arg(long)]
    resume: Vec<PathBuf>,
    /// Output format: text, json or csv.
    #[arg(long, default_value = "text")]
    format: Format,
    /// Histogram grouping: pg, p1, b, b/WIDTH, verdict or double-cover.
    #[arg(long)]
    stats: Option<Grouping>,
    /// Output directory (a checkpoint file when sharding).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sporadic cases lying in a series only after reordering: keep or remove.
    #[arg(long, value_parser = parse_reorder)]
    reorder: Option<ReorderPolicy>,
    /// Also compare the k = -1 series with the double covers among the
    /// Calabi–Yau hypersurfaces one dimension lower.
    #[arg(long)]
    jk: bool,
    /// Also list the raw search families before series analysis.
    #[arg(long)]
    raw: bool,
}

fn parse_shard(s: &str) -> Result<(usize, usize), String> {
    let (i, n) = s.split_once('/').ok_or("expected i/n")?;
    let i: usize = i.parse().map_err(|_| "bad shard index")?;
    let n: usize = n.parse().map_err(|_| "bad shard count")?;
    if n == 0 || i >= n {
        return Err("need 0 <= i < n".into());
    }
    Ok((i, n))
}

fn parse_reorder(s: &str) -> Result<ReorderPolicy, String> {
    match s {
        "keep" => Ok(ReorderPolicy::InOrder),
        "remove" => Ok(ReorderPolicy::Reordered),
        _ => Err("expected keep or remove".into()),
    }
}

fn summary(c: &Classification) -> String {
    let mut s = format!("dim {} k {}\n{}\n", c.dim, c.k, c.counts);
    let _ = writeln!(
        s,
        "removed_in_series {} (after reordering {}) kept_reordered {}",
        c.in_series.len(),
        c.in_series.iter().filter(|r| r.reordered).count(),
        c.kept_reordered.len()
    );
    for r in &c.in_series {
        let _ = writeln!(s, "removed {} series {} at {:?}", r.ws, r.series, r.lambda);
    }
    for r in &c.kept_reordered {
        let _ = writeln!(s, "kept {} lies in series {} at {:?} after reordering", r.ws, r.series, r.lambda);
    }
    for w in &c.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

fn display(c: &Classification) -> String {
    c.series
        .iter()
        .enumerate()
        .map(|(i, e)| format!("{i}. {}\n", e.display))
        .collect()
}

fn run(args: &Args) -> Result<i32> {
    let opts = ClassifyOptions {
        wellformed: !args.no_wellformed,
        scan: args.scan,
        shard: args.shard,
        reorder: args.reorder,
        filter: args.filter,
        ..ClassifyOptions::default()
    };
    let mut checkpoint = Checkpoint::load(args.dim, args.k, &args.resume)?;
    if args.shard.is_some() {
        let Some(out) = &args.out else {
            bail!("--shard needs --out for the raw checkpoint file");
        };
        checkpoint = checkpoint.append_to(out)?;
        let raw = search_stage(args.dim, args.k, &opts, Some(&checkpoint))?;
        eprintln!(
            "shard done: {} sporadic points, {} families",
            raw.sporadic.len(),
            raw.families.len()
        );
        return Ok(0);
    }
    if let Some(first) = args.resume.first() {
        checkpoint = checkpoint.append_to(first)?;
    }
    let raw = search_stage(args.dim, args.k, &opts, Some(&checkpoint))?;
    let c = finish(args.dim, args.k, &raw, &opts);
    let records: Vec<_> = c.records(args.filter).into_iter().cloned().collect();
    let sporadic: Vec<_> = records
        .iter()
        .filter(|r| matches!(r.provenance, wph_core::pipeline::Provenance::Sporadic))
        .cloned()
        .collect();
    let mut report = summary(&c);
    if args.jk {
        if args.k != -1 || args.dim == 0 {
            bail!("--jk needs --k -1 and dim >= 1");
        }
        let cy = search_stage(args.dim - 1, 0, &ClassifyOptions::default(), None)?;
        let cy = finish(args.dim - 1, 0, &cy, &ClassifyOptions::default());
        let list: Vec<_> = cy.sporadic.iter().map(|r| r.ws.clone()).collect();
        let sols: Vec<_> = c.series.iter().map(|e| e.solution.clone()).collect();
        report.push_str(&verify_jk(&sols, &list).text());
    }
    if args.raw {
        for f in &c.raw_families {
            let _ = writeln!(report, "raw family {f}");
        }
    }
    let table = args.stats.map(|g| render(&stats(&records, g)));
    match &args.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let ext = args.format.extension();
            std::fs::write(dir.join(format!("sporadic.{ext}")), export_records(&sporadic, args.format))?;
            std::fs::write(dir.join(format!("series.{ext}")), export_series(&c.series, args.format))?;
            std::fs::write(dir.join("series_display.txt"), display(&c))?;
            std::fs::write(dir.join("summary.txt"), &report)?;
            if let Some(t) = &table {
                std::fs::write(dir.join("stats.txt"), t)?;
            }
            emit(&report);
        }
        None => {
            let mut all = report;
            all.push_str(&display(&c));
            all.push_str(&export_series(&c.series, args.format));
            all.push_str(&export_records(&sporadic, args.format));
            if let Some(t) = &table {
                all.push_str(t);
            }
            emit(&all);
        }
    }
    Ok(c.exit_code())
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
