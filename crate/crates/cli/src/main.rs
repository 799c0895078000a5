//! Command-line workbench.
//!
//! Subcommands: `reproduce <tag>` diffs a pipeline against the golden values
//! shipped with the repo; `analyze <manifest.json>` builds a configuration
//! and runs verdicts; `audit` replays the restriction engine against the
//! Gröbner engine on small configurations; `scan` tabulates conjecture
//! evidence.
//!
//! Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 usage error,
//! 3 budget exceeded.

mod reproduce;

use clap::{Parser, Subcommand};
use raolab::analyzer::{self, ScanSpec};
use raolab::configs::{self, Recipe};
use raolab::error::Error;
use raolab::gf::FieldSpec;
use raolab::ideal::{hilbert_function, GbBudget};
use raolab::restriction;
use serde::Deserialize;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "raolab",
    version,
    about = "Rao-module workbench over a prime field"
)]
struct Cli {
    /// Working prime.
    #[arg(long, global = true, env = "RAOLAB_PRIME", default_value_t = 32003)]
    prime: u64,

    /// Re-run under a second prime and flag disagreements.
    #[arg(long, global = true)]
    second_prime: Option<u64>,

    /// Base seed for all sampling.
    #[arg(long, global = true, env = "RAOLAB_SEED", default_value_t = 17)]
    seed: u64,

    /// Samples per verdict.
    #[arg(long, global = true, default_value_t = 5)]
    trials: usize,

    /// S-pair reduction cap per Gröbner call.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    budget: u64,

    /// Output directory for report files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "md"])]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Re-run a named pipeline and diff against the shipped golden values.
    Reproduce { tag: String },
    /// Build a configuration from a manifest and run rank sweeps.
    Analyze { manifest: PathBuf },
    /// Cross-engine audit: restriction matrices vs Gröbner bases.
    Audit {
        #[arg(long, default_value_t = 5)]
        max_r: usize,
        #[arg(long, default_value_t = 8)]
        max_t: i64,
    },
    /// Run a conjecture scan from a scan specification file.
    Scan { spec: PathBuf },
}

#[derive(Deserialize)]
struct RunManifest {
    recipe: Recipe,
    #[serde(default = "default_ms")]
    m: Vec<u32>,
    trials: Option<usize>,
    prime: Option<u64>,
    second_prime: Option<u64>,
    out: Option<PathBuf>,
}

fn default_ms() -> Vec<u32> {
    vec![1]
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let field = FieldSpec::new(cli.prime)?;
    match &cli.command {
        Command::Reproduce { tag } => reproduce::run(cli, field, tag),
        Command::Analyze { manifest } => analyze(cli, manifest),
        Command::Audit { max_r, max_t } => audit(cli, field, *max_r, *max_t),
        Command::Scan { spec } => scan(cli, field, spec),
    }
}

/// Write-temp-then-rename so report files are never observed half-written.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn now_epoch_s() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn out_dir(cli: &Cli, manifest_out: Option<&PathBuf>) -> PathBuf {
    cli.out
        .clone()
        .or_else(|| manifest_out.cloned())
        .unwrap_or_else(|| PathBuf::from("reports"))
}

fn analyze(cli: &Cli, manifest_path: &Path) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(manifest_path)?;
    let manifest: RunManifest = serde_json::from_str(&text)?;
    let dir = out_dir(cli, manifest.out.as_ref());
    let trials = manifest.trials.unwrap_or(cli.trials);
    let primes: Vec<u64> = {
        let mut v = vec![manifest.prime.unwrap_or(cli.prime)];
        if let Some(p2) = manifest.second_prime.or(cli.second_prime) {
            v.push(p2);
        }
        v
    };

    let mut payloads: Vec<serde_json::Value> = Vec::new();
    for &p in &primes {
        let field = FieldSpec::new(p)?;
        let cfg = manifest.recipe.build(field)?;
        let profile = restriction::rao_profile(&cfg)?;
        let mut reports = Vec::new();
        for &m in &manifest.m {
            let rep = analyzer::slp_range_verdict_with_profile(&cfg, &profile, m, trials)?;
            if cli.format == "md" {
                write_atomic(
                    &dir.join(format!("report_m{m}_p{p}.md")),
                    &rep.to_markdown(),
                )?;
            }
            let payload = serde_json::to_value(&rep)?;
            write_atomic(
                &dir.join(format!("report_m{m}_p{p}.json")),
                &serde_json::to_string_pretty(&json!({
                    "generated_at": now_epoch_s(),
                    "report": payload,
                }))?,
            )?;
            reports.push(payload);
        }
        payloads.push(json!({
            "prime": p,
            "configuration": configs::configuration_to_json(&cfg),
            "reports": reports,
        }));
    }

    if payloads.len() == 2 {
        let strip = |v: &serde_json::Value| {
            let mut v = v.clone();
            v.as_object_mut().map(|o| o.remove("prime"));
            if let Some(reports) = v.get_mut("reports").and_then(|r| r.as_array_mut()) {
                for r in reports {
                    if let Some(o) = r.as_object_mut() {
                        o.remove("prime");
                        o.remove("seeds");
                    }
                }
            }
            v.as_object_mut().map(|o| o.remove("configuration"));
            v
        };
        let agree = strip(&payloads[0]) == strip(&payloads[1]);
        write_atomic(
            &dir.join("agreement.json"),
            &serde_json::to_string_pretty(&json!({
                "generated_at": now_epoch_s(),
                "primes": primes,
                "agree": agree,
                "warning": (!agree).then_some("characteristic artifact suspected"),
            }))?,
        )?;
        if !agree {
            eprintln!("warning: characteristic artifact suspected: reports differ across primes");
            return Ok(ExitCode::from(1));
        }
    }
    println!("analyze: wrote reports to {}", dir.display());
    Ok(ExitCode::SUCCESS)
}

fn audit(cli: &Cli, field: FieldSpec, max_r: usize, max_t: i64) -> Result<ExitCode, Error> {
    let budget = GbBudget {
        max_spair_reductions: cli.budget,
    };
    let mut discrepancies: Vec<serde_json::Value> = Vec::new();
    let mut checks = 0usize;

    let mut check_cfg =
        |cfg: &restriction::Configuration, with_sections: bool| -> Result<(), Error> {
            let ideal = configs::configuration_ideal(cfg, budget)?;
            let data = hilbert_function(&ideal, max_t, budget)?;
            for t in 0..=max_t {
                let fast = restriction::ideal_dimension(cfg, t)?;
                let slow = data.dims_ideal[&t];
                checks += 1;
                if fast != slow {
                    discrepancies.push(json!({
                        "label": cfg.meta.label, "seed": cfg.meta.seed,
                        "t": t, "restriction": fast, "groebner": slow,
                    }));
                }
            }
            if with_sections {
                let plane = analyzer::sample_plane(cfg, cfg.meta.seed ^ 0x5EC7)?;
                for m in 1..=3u32 {
                    let lm = raolab::ideal::Ideal::new(cfg.ring, vec![plane.pow(m)])?;
                    let summed = ideal.sum(&lm)?;
                    let (sat, _) = raolab::ideal::ops::saturate(
                        &summed,
                        &raolab::ideal::ops::irrelevant_ideal(cfg.ring),
                        budget,
                    )?;
                    let sat_data = hilbert_function(&sat, max_t, budget)?;
                    for t in 0..=max_t {
                        let fast = restriction::section_scheme_dimension(cfg, &plane, m, t)?;
                        let slow = sat_data.dims_ideal[&t];
                        checks += 1;
                        if fast != slow {
                            discrepancies.push(json!({
                                "label": cfg.meta.label, "seed": cfg.meta.seed,
                                "m": m, "t": t, "restriction": fast, "groebner": slow,
                            }));
                        }
                    }
                }
            }
            Ok(())
        };

    for r in 2..=max_r {
        let cfg = configs::general_skew_lines(r, cli.seed.wrapping_add(r as u64), field)?;
        check_cfg(&cfg, true)?;
    }
    if max_r >= 3 {
        let cfg = configs::quadric_ruling_lines(3, cli.seed, field)?;
        check_cfg(&cfg, true)?;
    }
    for (s, m) in [(3usize, 2u32), (4, 3)] {
        let cfg = configs::flat_fat_points_plane(s, m, cli.seed, None, field)?;
        check_cfg(&cfg, false)?;
    }

    let dir = out_dir(cli, None);
    let report = json!({
        "generated_at": now_epoch_s(),
        "prime": field.p(),
        "max_r": max_r,
        "max_t": max_t,
        "checks": checks,
        "discrepancies": discrepancies,
    });
    write_atomic(
        &dir.join("audit.json"),
        &serde_json::to_string_pretty(&report)?,
    )?;
    if discrepancies.is_empty() {
        println!("audit: {checks} checks, zero discrepancies");
        Ok(ExitCode::SUCCESS)
    } else {
        println!(
            "audit: {} discrepancies out of {checks} checks (see audit.json)",
            discrepancies.len()
        );
        Ok(ExitCode::from(1))
    }
}

fn scan(cli: &Cli, field: FieldSpec, spec_path: &Path) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(spec_path)?;
    let spec: ScanSpec = serde_json::from_str(&text)?;
    let table = analyzer::conjecture_scan(&spec, field)?;
    let dir = out_dir(cli, None);
    write_atomic(
        &dir.join("scan.json"),
        &serde_json::to_string_pretty(&json!({
            "generated_at": now_epoch_s(),
            "prime": field.p(),
            "table": table,
        }))?,
    )?;
    if cli.format == "md" {
        write_atomic(&dir.join("scan.md"), &table.to_markdown())?;
    }
    println!(
        "scan: {} cells written to {}",
        table.cells.len(),
        dir.display()
    );
    Ok(ExitCode::SUCCESS)
}
