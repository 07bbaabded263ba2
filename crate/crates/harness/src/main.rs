use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::json;
use vctest_core::classes::parse_class_spec;
use vctest_core::dimension::{classify_extremal, lvc_dim_with_certificate, vc_dim_with_witness, MAX_ENUMERATED_POINTS};
use vctest_core::distance::exact_distance;
use vctest_core::domain::{normalize, FiniteDistribution, Labelling, Seed};
use vctest_core::hardness::Side;
use vctest_core::rational::{format_rational, parse_rational, q_to_f64};
use vctest_core::testers::TesterConfig;
use vctest_harness::config::{parse_key_values, SweepConfig};
use vctest_harness::emit::{parse_records, render, Format};
use vctest_harness::instance::Instance;
use vctest_harness::specs::{parse_domain_spec, run_tester, GeneratorSpec, TesterKind};
use vctest_harness::sweep::sweep;
use vctest_harness::verify::run_suite;
use vctest_harness::SEED_ENV;

#[derive(Parser)]
#[command(name = "vctest", version, about = "Dimension computations, testers and Monte-Carlo checks")]
struct Cli {
    /// Worker threads for parallel trials (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// VC and LVC dimensions of a class on a finite domain, with witnesses.
    Dim {
        #[arg(long)]
        class: String,
        #[arg(long)]
        domain: String,
    },
    /// Exact distance from a labelling to a class.
    Distance {
        #[arg(long)]
        class: String,
        /// Instance file; replaces --domain, --labelling and --weights.
        #[arg(long)]
        instance: Option<String>,
        #[arg(long)]
        domain: Option<String>,
        /// 0/1 string in domain order, or @file.
        #[arg(long)]
        labelling: Option<String>,
        /// Comma-separated nonnegative weights, normalized; uniform if absent.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Runs a tester once on an instance file and prints the verdict.
    Test {
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        instance: String,
        #[arg(long)]
        eps: f64,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        /// Sample size override.
        #[arg(long)]
        m: Option<usize>,
        /// vc, junta, monotone, symmetric, lp or cluster:k=K.
        #[arg(long)]
        tester: Option<String>,
        /// VC dimension used for the default sample size.
        #[arg(long)]
        vc: Option<usize>,
    },
    /// Acceptance rate against sample size.
    Sweep {
        /// key = value file; flags below override it.
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        generator: Option<String>,
        #[arg(long)]
        tester: Option<String>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        target: Option<f64>,
        #[arg(long, env = SEED_ENV)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Writes a generated instance file.
    Hardgen {
        /// Generator spec, e.g. `ssd:domain=line:20` or `lp:n=6`.
        #[arg(long)]
        generator: String,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        side: String,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Runs a verification suite (or `all`); exits nonzero on any failure.
    Verify {
        suite: String,
        #[arg(long)]
        json: bool,
    },
    /// Converts sweep records between csv, json and svg.
    Emit {
        #[arg(long)]
        input: String,
        #[arg(long)]
        format: String,
        #[arg(long)]
        out: Option<String>,
    },
}

fn read(path: &str) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

fn write_or_print(out: Option<&str>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {path}")),
        None => say(text.strip_suffix('\n').unwrap_or(text)),
    }
}

/// Writes a line to stdout. A closed pipe (`vctest ... | head`) ends the
/// process quietly instead of panicking.
fn say(line: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{line}").and_then(|()| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        r => r.context("writing to stdout"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Dim { class, domain } => {
            let class = parse_class_spec(&class)?;
            let domain = parse_domain_spec(&domain)?;
            let (vc, witness) = vc_dim_with_witness(&class, &domain)?;
            let (lvc, certificate) = lvc_dim_with_certificate(&class, &domain)?;
            let mut out = json!({
                "class": class.to_string(),
                "domain_size": domain.len(),
                "vc": vc,
                "vc_witness": witness,
                "lvc": lvc,
                "lvc_certificate": certificate,
            });
            if domain.len() <= MAX_ENUMERATED_POINTS {
                out["report"] = serde_json::to_value(classify_extremal(&class, &domain)?)?;
            }
            say(&serde_json::to_string_pretty(&out)?)?;
        }
        Command::Distance {
            class,
            instance,
            domain,
            labelling,
            weights,
        } => {
            let class = parse_class_spec(&class)?;
            let inst = match (instance, domain, labelling) {
                (Some(path), None, None) => Instance::parse(&read(&path)?)?,
                (None, Some(d), Some(l)) => {
                    let domain = parse_domain_spec(&d)?;
                    let bits = match l.strip_prefix('@') {
                        Some(path) => read(path)?,
                        None => l,
                    };
                    let f = Labelling::parse(bits.trim())?;
                    let dist = match weights {
                        Some(w) => normalize(
                            &w.split(',').map(parse_rational).collect::<vctest_core::Result<Vec<_>>>()?,
                        )?,
                        None => FiniteDistribution::uniform(domain.len()),
                    };
                    Instance::new(domain, dist, f)?
                }
                _ => bail!("give either --instance or both --domain and --labelling"),
            };
            let d = exact_distance(&inst.labelling, &class, &inst.domain, &inst.distribution)?;
            let out = json!({
                "class": class.to_string(),
                "distance": format_rational(&d),
                "distance_f64": q_to_f64(&d),
            });
            say(&serde_json::to_string_pretty(&out)?)?;
        }
        Command::Test {
            class,
            instance,
            eps,
            seed,
            m,
            tester,
            vc,
        } => {
            let class = class.map(|c| parse_class_spec(&c)).transpose()?;
            let inst = Instance::parse(&read(&instance)?)?;
            let kind = match (&tester, &class) {
                (Some(t), _) => TesterKind::parse(t)?,
                (None, Some(c)) => TesterKind::default_for(c),
                (None, None) => bail!("give --class or --tester"),
            };
            let mut cfg = TesterConfig::new(eps, Seed(seed))?;
            if let Some(m) = m {
                cfg = cfg.with_sample_size(m)?;
            }
            let verdict = run_tester(kind, class.as_ref(), &inst, vc, &cfg)?;
            say(&serde_json::to_string_pretty(&verdict)?)?;
        }
        Command::Sweep {
            config,
            class,
            generator,
            tester,
            eps,
            grid,
            trials,
            target,
            seed,
            out,
            format,
        } => {
            let mut map = match &config {
                Some(path) => parse_key_values(&read(path)?)?,
                None => Default::default(),
            };
            let overrides = [
                ("class", class),
                ("generator", generator),
                ("tester", tester),
                ("eps", eps.map(|v| v.to_string())),
                ("grid", grid),
                ("trials", trials.map(|v| v.to_string())),
                ("target", target.map(|v| v.to_string())),
                ("seed", seed.map(|v| v.to_string())),
                ("threads", cli.threads.map(|v| v.to_string())),
            ];
            for (k, v) in overrides {
                if let Some(v) = v {
                    map.insert(k.to_string(), v);
                }
            }
            let cfg = SweepConfig::from_map(&map)?;
            let outcome = sweep(&cfg)?;
            let text = render(&outcome.records, Format::parse(&format)?)?;
            write_or_print(out.as_deref(), &text)?;
            match outcome.minimal_m {
                Some(m) => eprintln!("smallest m meeting the target {:.4}: {m}", cfg.target),
                None => eprintln!("no grid size meets the target {:.4}", cfg.target),
            }
        }
        Command::Hardgen {
            generator,
            class,
            side,
            eps,
            seed,
            out,
        } => {
            let spec = GeneratorSpec::parse(&generator)?;
            let side = Side::parse(&side)?;
            let class = match class {
                Some(c) => Some(parse_class_spec(&c)?),
                None => spec.generator.natural_class(),
            };
            let prepared = spec.generator.prepare(class.as_ref(), side)?;
            let inst = spec.generator.generate(&prepared, side, eps, Seed(seed))?;
            let header = format!("# {generator} side={} seed={seed}\n", side.name());
            write_or_print(out.as_deref(), &(header + &inst.to_text()))?;
        }
        Command::Verify { suite, json } => {
            let reports = run_suite(&suite)?;
            let ok = reports.iter().all(|r| r.passed());
            if json {
                say(&serde_json::to_string_pretty(&reports)?)?;
            } else {
                for r in &reports {
                    for line in r.lines() {
                        say(&line)?;
                    }
                    say(&format!("{} suite {} in {:.1}s", if r.passed() { "PASS" } else { "FAIL" }, r.suite, r.seconds))?;
                }
            }
            return Ok(ok);
        }
        Command::Emit { input, format, out } => {
            let records = parse_records(&read(&input)?)?;
            let text = render(&records, Format::parse(&format)?)?;
            write_or_print(out.as_deref(), &text)?;
        }
    }
    Ok(true)
}
