use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use britton::elementary::{self, Center, SamplerConfig};
use britton::morphisms;
use britton::quotients::BUILTIN_TARGETS;
use britton::report::{Check, Report};
use britton::suite::{self, SuiteConfig};
use britton::{bass_serre, Error, Level, Tower, Word};

#[derive(Parser)]
#[command(name = "britton", version, about = "Word problems and certificates for the H0 < ... < G tower")]
struct Cli {
    /// Seed for every sampler.
    #[arg(long, global = true, env = "BRITTON_SEED", default_value_t = elementary::DEFAULT_SEED)]
    seed: u64,

    /// Also write the JSON report here.
    #[arg(long, global = true)]
    report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a word is trivial.
    Wp {
        #[arg(long)]
        group: Level,
        word: String,
        /// Fail unless the verdict matches.
        #[arg(long, value_parser = ["trivial", "nontrivial"])]
        expect: Option<String>,
    },
    /// Print a reduced form.
    Nf {
        #[arg(long)]
        group: Level,
        word: String,
    },
    /// Check that a homomorphism file respects every relator.
    HomCheck { file: PathBuf },
    /// Certify that psi: G -> G is surjective but not injective.
    CertifyNonhopfian {
        /// `letter = word` lines replacing the built-in witnesses.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Enumerate homomorphisms from H2 into finite groups.
    ScanQuotients {
        /// Comma-separated built-in names or JSON files.
        #[arg(long, value_delimiter = ',', default_values_t = BUILTIN_TARGETS.map(String::from))]
        targets: Vec<String>,
        #[arg(long, default_value_t = 30)]
        max_order: usize,
        /// Cross-check with the brute-force scan up to this order.
        #[arg(long, default_value_t = 24)]
        brute_force_max: usize,
    },
    /// Sample conjugates of powers of a hyperbolic element.
    ElementarySearch {
        #[arg(long)]
        group: Level,
        #[arg(long)]
        center: Center,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long, default_value_t = 3)]
        max_n: u32,
    },
    /// Build a ball in the Bass-Serre tree of H2.
    BassSerreBall {
        #[arg(long, default_value_t = 1)]
        radius: usize,
        /// DOT output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = bass_serre::DEFAULT_MAX_RADIUS)]
        max_radius: usize,
    },
    /// Every acceptance check in one report.
    RunAll {
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<String>>,
        #[arg(long, default_value_t = 1)]
        radius: usize,
        #[arg(long, default_value_t = 10_000)]
        property_samples: usize,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

fn word(text: &str) -> Result<Word, Error> {
    Word::parse(text)
}

fn run(cli: &Cli, tower: &Tower) -> Result<Report, Error> {
    let start = Instant::now();
    let seed = cli.seed;
    let (name, config, checks) = match &cli.command {
        Command::Wp { group, word: text, expect } => {
            let x = word(text)?;
            let trivial = tower.wp_is_trivial(*group, &x)?;
            let mut details = json!({ "word": x, "trivial": trivial });
            if matches!(group, Level::H0 | Level::H1) {
                details["canonical"] = json!(tower.normal_form(*group, &x)?);
            }
            let verdict = if trivial { "trivial" } else { "nontrivial" };
            let pass = expect.as_deref().is_none_or(|e| e == verdict);
            (
                "wp",
                json!({ "group": group, "word": text, "expect": expect }),
                vec![Check::new(format!("{x} is {verdict} in {group}"), "artifact", pass, details)],
            )
        }
        Command::Nf { group, word: text } => {
            let x = word(text)?;
            let nf = tower.normal_form(*group, &x)?;
            let same = tower.wp_equal(*group, &x, &nf)?;
            (
                "nf",
                json!({ "group": group, "word": text }),
                vec![Check::new(format!("normal form in {group}"), "artifact", same, json!({ "normal_form": nf }))],
            )
        }
        Command::HomCheck { file } => {
            let text = fs::read_to_string(file)?;
            let mut hom = morphisms::parse_hom(&text)?;
            let cert = hom.check_well_defined(tower)?;
            let checks = cert
                .evidence
                .iter()
                .map(|e| Check::new(&e.description, "artifact", e.pass, &e.words))
                .collect();
            ("hom-check", json!({ "file": file, "hom": hom.name() }), checks)
        }
        Command::CertifyNonhopfian { witnesses } => {
            let wit = match witnesses {
                Some(path) => morphisms::parse_witnesses(&fs::read_to_string(path)?)?,
                None => morphisms::psi_witnesses(),
            };
            let mut psi = morphisms::psi();
            let cert = morphisms::certify_non_hopfian(tower, &mut psi, &morphisms::psi_kernel_witness(), &wit)?;
            let mut checks = Vec::new();
            for (part, c) in [
                ("relator", &cert.well_defined),
                ("witness", &cert.surjectivity),
                ("kernel", &cert.kernel),
            ] {
                for e in &c.evidence {
                    checks.push(Check::new(format!("{part}: {}", e.description), "G is non-Hopfian", e.pass, &e.words));
                }
            }
            ("certify-nonhopfian", json!({ "witnesses": witnesses }), checks)
        }
        Command::ScanQuotients {
            targets,
            max_order,
            brute_force_max,
        } => (
            "scan-quotients",
            json!({ "targets": targets, "max_order": max_order, "brute_force_max": brute_force_max }),
            suite::quotient_scan(targets, *max_order, *brute_force_max)?,
        ),
        Command::ElementarySearch {
            group,
            center,
            samples,
            max_len,
            max_n,
        } => {
            let cfg = SamplerConfig {
                seed,
                samples: *samples,
                max_word_length: *max_len,
                max_n: *max_n,
            };
            let r = elementary::elementary_search(tower, *group, *center, &cfg)?;
            let mut checks = vec![Check::new(
                format!("no f outside <{center}> conjugates a power of {center} to a power"),
                format!("maximal elementary subgroup of {center}"),
                r.violations.is_empty(),
                json!({ "tested": r.tested, "excluded": r.excluded, "violations": r.violations }),
            )];
            checks.push(Check::new(
                "positive controls",
                "artifact",
                r.controls_pass(),
                &r.controls,
            ));
            ("elementary-search", json!({ "group": group, "center": center, "sampler": cfg }), checks)
        }
        Command::BassSerreBall { radius, out, max_radius } => {
            let b = bass_serre::ball(tower, *radius, *max_radius)?;
            if let Some(path) = out {
                fs::write(path, b.to_dot())?;
            }
            let checks = vec![Check::new(
                format!("ball({radius}) is a tree"),
                "Bass-Serre tree of H2",
                b.is_tree(),
                json!({
                    "vertices": b.vertices.len(),
                    "edges": b.edges.len(),
                    "base_degree": b.degree(0),
                }),
            )];
            ("bass-serre-ball", json!({ "radius": radius, "out": out }), checks)
        }
        Command::RunAll {
            targets,
            radius,
            property_samples,
            samples,
        } => {
            let mut cfg = SuiteConfig::with_seed(seed);
            if let Some(t) = targets {
                cfg.targets = t.clone();
            }
            cfg.ball_radius = *radius;
            cfg.property_samples = *property_samples;
            cfg.sampler.samples = *samples;
            let mut checks = suite::run_all(tower, &cfg)?;
            if *radius == 0 {
                let b = bass_serre::ball(tower, 0, 0)?;
                checks.push(Check::new(
                    "ball(0) is a single vertex",
                    "Bass-Serre tree of H2",
                    b.vertices.len() == 1 && b.edges.is_empty(),
                    json!({ "vertices": b.vertices.len() }),
                ));
            }
            ("run-all", serde_json::to_value(&cfg).expect("config serializes"), checks)
        }
    };
    Ok(Report::new(name, config, seed, checks, start.elapsed().as_secs_f64()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tower = Tower::new();
    match run(&cli, &tower) {
        Ok(report) => {
            let text = report.to_json();
            // a closed pipe on stdout is not an error worth reporting
            let _ = writeln!(io::stdout().lock(), "{text}");
            eprint!("{}", report.text_summary());
            if let Some(path) = &cli.report {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

