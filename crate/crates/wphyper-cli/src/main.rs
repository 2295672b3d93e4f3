//! Command-line front end: analyze arbitrary weighted hypersurfaces,
//! emit family members, run the published-value verification table,
//! and drive record searches.
//!
//! Exit codes: 0 all checks pass, 1 usage error, 2 any check failed.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rug::{Integer, Rational};
use wphyper::families::{generate, ExpectedBound, ProblemId};
use wphyper::geometry::{
    classify_hypersurface, first_nonvanishing, hyp_volume, ClassificationReport, Hypersurface,
    WeightSystem,
};
use wphyper::harness::verify_paper;
use wphyper::report::{family_report, JsonRecordSet, JsonReport};
use wphyper::search::{enumerate_cy_surfaces, RecordKind, RecordValue, SearchConfig};
use wphyper::singularities::SingClass;

#[derive(Parser)]
#[command(name = "wphyper", version, about = "exact classification of weighted hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Iteration budget for direct singularity loops (0 = certificates only).
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,
    /// Emit JSON instead of the table format.
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit the human-readable table (default).
    #[arg(long, global = true)]
    table: bool,
    /// Worker threads for search and verification.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify one hypersurface given its weights and degree.
    Analyze {
        /// Comma-separated positive weights, e.g. 33,22,6,5.
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u64>,
        #[arg(long)]
        degree: u64,
    },
    /// Emit and verify one member of a named family.
    Family {
        /// Problem id, 1a through 4b.
        #[arg(long)]
        problem: String,
        /// Dimension of the member.
        #[arg(long)]
        dim: u32,
    },
    /// Check every published value up to a dimension cap.
    VerifyPaper {
        #[arg(long, default_value_t = 10)]
        max_dim: u32,
    },
    /// Exhaustive Calabi-Yau surface record search.
    Search {
        /// Record to track: minvol or maxbottom.
        #[arg(long)]
        record: String,
        #[arg(long)]
        max_weight: u64,
    },
}

fn approx(q: &Rational) -> String {
    format!("{:.4e}", q.to_f64())
}

fn print_report_table(r: &ClassificationReport) {
    println!("{}", r.hypersurface);
    println!("  well-formed:   {}", r.well_formed);
    println!("  quasi-smooth:  {}", r.quasi_smooth);
    println!("  class:         {}", r.variety_class.as_str());
    println!("  adjunction:    {}", r.adjunction_degree);
    println!("  volume:        {} ({} approximate)", r.volume, approx(&r.volume));
    println!("  M:             {}", r.first_nonvanishing);
    println!("  overall:       {}", r.overall.class.as_str());
    for sv in &r.strata_verdicts {
        let cert = sv
            .verdict
            .certificate
            .as_ref()
            .map(wphyper::report::describe_certificate)
            .unwrap_or_else(|| "-".to_string());
        println!(
            "  stratum {:?}: {} -> {} [{}]",
            sv.stratum.indices,
            sv.singularity,
            sv.verdict.class.as_str(),
            cert
        );
    }
    for note in &r.notes {
        println!("  note: {note}");
    }
}

/// A report "fails" when structural checks fail or the singularities
/// are definitely bad; Unknown is a warning only.
fn report_fails(r: &ClassificationReport) -> bool {
    !r.well_formed || !r.quasi_smooth || r.overall.class == SingClass::NotCanonical
}

fn run_analyze(g: &Global, weights: &[u64], degree: u64) -> Result<ExitCode, String> {
    let space = WeightSystem::from_u64(weights).map_err(|e| e.to_string())?;
    let h = Hypersurface::new(space, Integer::from(degree)).map_err(|e| e.to_string())?;
    let report = classify_hypersurface(&h, g.budget).map_err(|e| e.to_string())?;
    if g.json {
        let json = JsonReport::from(&report);
        println!("{}", serde_json::to_string_pretty(&json).unwrap());
    } else {
        print_report_table(&report);
    }
    Ok(if report_fails(&report) {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn run_family(g: &Global, problem: &str, dim: u32) -> Result<ExitCode, String> {
    let p: ProblemId = problem.parse()?;
    let member = generate(p, dim).map_err(|e| e.to_string())?;
    let report = classify_hypersurface(&member.hypersurface, g.budget).map_err(|e| e.to_string())?;

    let mut checks: Vec<(String, bool)> = Vec::new();
    checks.push(("well-formed".into(), report.well_formed));
    checks.push(("quasi-smooth".into(), report.quasi_smooth));
    checks.push((
        format!("class is {}", member.expected_class.as_str()),
        report.variety_class == member.expected_class,
    ));
    match &member.expected_bound {
        Some(ExpectedBound::Volume(v)) => {
            checks.push((
                format!("volume is {v}"),
                hyp_volume(&member.hypersurface) == *v,
            ));
        }
        Some(ExpectedBound::FirstNonvanishing(m)) => {
            checks.push((
                format!("first non-vanishing degree is {m}"),
                first_nonvanishing(&member.hypersurface) == *m,
            ));
        }
        None => {}
    }

    if g.json {
        let json = family_report(&member, &report);
        println!("{}", serde_json::to_string_pretty(&json).unwrap());
    } else {
        println!("{p} n={dim} ({} branch)", member.branch.as_str());
        print_report_table(&report);
        for (name, ok) in &checks {
            println!("  check {}: {}", name, if *ok { "PASS" } else { "FAIL" });
        }
    }
    let ok = !report_fails(&report) && checks.iter().all(|(_, ok)| *ok);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn run_verify(g: &Global, max_dim: u32) -> Result<ExitCode, String> {
    let report = verify_paper(max_dim, g.budget);
    if g.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        for row in &report.rows {
            let mark = if row.passed { "PASS" } else { "FAIL" };
            if row.detail.is_empty() {
                println!("{mark}  {}", row.name);
            } else {
                println!("{mark}  {} ({})", row.name, row.detail);
            }
        }
        let failed = report.rows.iter().filter(|r| !r.passed).count();
        println!("{} rows, {} failed", report.rows.len(), failed);
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run_search(g: &Global, record: &str, max_weight: u64) -> Result<ExitCode, String> {
    let kind = match record {
        "minvol" => RecordKind::MinVolume,
        "maxbottom" => RecordKind::MaxBottomWeight,
        other => return Err(format!("--record must be minvol or maxbottom, got {other:?}")),
    };
    let cfg = SearchConfig {
        max_weight,
        kind,
        workers: g.jobs.max(1),
    };
    let result = enumerate_cy_surfaces(&cfg).map_err(|e| e.to_string())?;
    if g.json {
        let json = JsonRecordSet::from(&result);
        println!("{}", serde_json::to_string_pretty(&json).unwrap());
    } else {
        println!(
            "record {} over top weight <= {} ({} candidates)",
            kind.as_str(),
            max_weight,
            result.examined
        );
        match &result.best {
            Some(RecordValue::Volume(v)) => {
                println!("  best volume: {} ({} approximate)", v, approx(v))
            }
            Some(RecordValue::BottomWeight(b)) => println!("  best bottom weight: {b}"),
            None => println!("  no candidate survived the filters"),
        }
        for a in &result.achievers {
            println!("  achieved by {a:?}");
        }
        println!("  note: record certified only below the stated weight bound");
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.cmd {
        Cmd::Analyze { weights, degree } => run_analyze(&cli.global, weights, *degree),
        Cmd::Family { problem, dim } => run_family(&cli.global, problem, *dim),
        Cmd::VerifyPaper { max_dim } => run_verify(&cli.global, *max_dim),
        Cmd::Search { record, max_weight } => run_search(&cli.global, record, *max_weight),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
