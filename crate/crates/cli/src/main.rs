//! `paige`: enumerate Paige loops, run the verification suites, decompose
//! elements, and build Aut(M*(2)) with a JSON certificate.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
//! and scope errors.

mod certificate;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use paige::theorems::{
    orbit_c2, orbit_reports, orbit_v4, run_suite, verify_main_theorem, AutContext, CheckReport,
    Suite, SuiteConfig,
};
use paige::zorn::{decompose_norm_one, Octonion, Zorn};
use paige::{FiniteField, LoopTable, DEFAULT_SAMPLES, DEFAULT_SEED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use certificate::{manifest_entries, Certificate, Manifest, Orbits};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

/// Runs `$body` with `$F` bound to `Gf<q>` for the runtime order `$q`.
macro_rules! with_field {
    ($q:expr, $F:ident => $body:expr) => {
        match $q {
            2 => {
                type $F = paige::Gf2;
                $body
            }
            3 => {
                type $F = paige::Gf3;
                $body
            }
            4 => {
                type $F = paige::Gf4;
                $body
            }
            5 => {
                type $F = paige::Gf5;
                $body
            }
            7 => {
                type $F = paige::Gf7;
                $body
            }
            8 => {
                type $F = paige::Gf8;
                $body
            }
            9 => {
                type $F = paige::Gf9;
                $body
            }
            q => Err(CliError::Usage(format!("unsupported field order {q}"))),
        }
    };
}

#[derive(Debug, Parser)]
#[command(
    name = "paige",
    version,
    about = "Split octonions and Paige loops over small finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the elements of M*(q), one per line; the order census goes to stderr.
    Enumerate {
        #[arg(long)]
        q: u32,
        /// Write the listing here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long)]
        q: u32,
        /// A suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Also write a JSON certificate.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Split an element into two elements of norm one.
    Decompose {
        #[arg(long)]
        q: u32,
        /// Element text `a;(a1,a2,a3);(b1,b2,b3);b`. Drawn from `--seed` when absent.
        element: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Build Aut(M*(2)), run the extension pipeline and write a certificate.
    AutGroup {
        #[arg(long)]
        q: u32,
        /// Certificate path; stdout when absent.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Directory for the generator cache.
        #[arg(long, default_value = ".paige-cache")]
        cache: PathBuf,
    },
    /// Orbits of Aut(M*(2)) on involutions or on Klein four-subgroups.
    Orbits {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum)]
        structure: Structure,
        #[arg(long, default_value = ".paige-cache")]
        cache: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Structure {
    #[value(name = "C2")]
    C2,
    #[value(name = "V4")]
    V4,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate { q, output } => with_field!(q, F => enumerate::<F>(output)),
        Command::Verify {
            q,
            suite,
            seed,
            samples,
            json,
        } => {
            let cfg = SuiteConfig { seed, samples };
            with_field!(q, F => verify::<F>(&suite, &cfg, json))
        }
        Command::Decompose { q, element, seed } => {
            with_field!(q, F => decompose::<F>(element.as_deref(), seed))
        }
        Command::AutGroup {
            q,
            emit,
            seed,
            cache,
        } => with_field!(q, F => aut_group::<F>(emit, seed, &cache)),
        Command::Orbits {
            q,
            structure,
            cache,
        } => with_field!(q, F => orbits::<F>(structure, &cache)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn require_q2<F: FiniteField>(what: &str) -> Result<(), CliError> {
    if F::ORDER == 2 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{what} is q=2 only")))
    }
}

fn census_text(census: &BTreeMap<u64, usize>) -> String {
    let parts: Vec<String> = census.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    parts.join(" ")
}

fn enumerate<F: FiniteField>(output: Option<PathBuf>) -> Result<(), CliError> {
    let t = LoopTable::<Zorn<F>>::paige().map_err(|e| CliError::Failed(e.to_string()))?;
    let sink: Box<dyn Write> = match &output {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    for x in t.elements() {
        writeln!(out, "{x}")?;
    }
    out.flush()?;
    eprintln!(
        "q={} elements={} census {}",
        F::ORDER,
        t.len(),
        census_text(&t.census())
    );
    Ok(())
}

fn print_reports(reports: &[CheckReport]) {
    for r in reports {
        println!(
            "{:<28} {:<4} {:>12} {:>10.3?}",
            r.name, r.status, r.cases, r.elapsed
        );
        for w in &r.witnesses {
            println!("    {w}");
        }
    }
}

fn orbit_sizes(ctx: &AutContext) -> Result<Orbits, CliError> {
    let c2 = orbit_c2(ctx).orbits.iter().map(Vec::len).collect();
    let v4 = orbit_v4(ctx)
        .map_err(|e| CliError::Failed(e.to_string()))?
        .orbits
        .iter()
        .map(Vec::len)
        .collect();
    Ok(Orbits { c2, v4 })
}

fn census_field(census: &BTreeMap<u64, usize>) -> BTreeMap<String, usize> {
    census.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn write_certificate(cert: &Certificate, path: Option<&PathBuf>) -> Result<(), CliError> {
    let text = cert.to_canonical_json();
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn verify<F: FiniteField>(
    suite: &str,
    cfg: &SuiteConfig,
    json: Option<PathBuf>,
) -> Result<(), CliError> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL
            .into_iter()
            .filter(|s| F::ORDER == 2 || !s.requires_q2())
            .collect()
    } else {
        let s: Suite = suite
            .parse()
            .map_err(|e: paige::theorems::UnknownSuite| CliError::Usage(e.to_string()))?;
        if s.requires_q2() {
            require_q2::<F>(&format!("suite {s}"))?;
        }
        vec![s]
    };
    let ctx = if suites.iter().any(|s| s.needs_group(F::ORDER)) {
        Some(AutContext::build().map_err(|e| CliError::Failed(e.to_string()))?)
    } else {
        None
    };
    let mut cert = Certificate::new(F::ORDER, cfg.seed);
    for s in &suites {
        let reports = run_suite::<F>(*s, cfg, ctx.as_ref());
        print_reports(&reports);
        cert.checks.extend(reports);
    }
    // the census needs every element's order; skip it where the loop is large
    if F::ORDER <= 3 {
        let t = LoopTable::<Zorn<F>>::paige().map_err(|e| CliError::Failed(e.to_string()))?;
        cert.census = Some(census_field(&t.census()));
    }
    if let Some(ctx) = &ctx {
        cert.aut_order = Some(ctx.group.order());
        cert.orbits = Some(orbit_sizes(ctx)?);
        cert.generators = Some(manifest_entries(&ctx.generators));
    }
    let passed = cert.seal();
    if let Some(path) = &json {
        write_certificate(&cert, Some(path))?;
    }
    println!("status: {}", cert.status);
    if passed {
        Ok(())
    } else {
        Err(CliError::Failed("some checks failed".into()))
    }
}

fn decompose<F: FiniteField>(element: Option<&str>, seed: u64) -> Result<(), CliError> {
    let x: Octonion<F> = match element {
        Some(text) => text
            .parse()
            .map_err(|e| CliError::Usage(format!("cannot parse `{text}`: {e}")))?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = Octonion::from_coords(std::array::from_fn(|_| {
                F::from_index(rng.gen_range(0..F::ORDER)).expect("index below q")
            }));
            eprintln!("x = {x}");
            x
        }
    };
    let (u, v) = decompose_norm_one(&x);
    if u.norm() != F::one() || v.norm() != F::one() || u + v != x {
        return Err(CliError::Failed(format!("bad split of {x}: {u} + {v}")));
    }
    println!("{u}");
    println!("{v}");
    Ok(())
}

fn aut_group<F: FiniteField>(
    emit: Option<PathBuf>,
    seed: u64,
    cache: &Path,
) -> Result<(), CliError> {
    require_q2::<F>("main theorem pipeline")?;
    let ctx = AutContext::build().map_err(|e| CliError::Failed(e.to_string()))?;
    Manifest::new(&ctx.generators).write(cache)?;
    let cfg = SuiteConfig {
        seed,
        samples: DEFAULT_SAMPLES,
    };
    let m = verify_main_theorem(&ctx, &cfg);
    let mut cert = Certificate::new(2, seed);
    cert.census = Some(census_field(&ctx.table.census()));
    cert.doubling_triple_count = Some(m.doubling_triple_count);
    cert.aut_order = Some(ctx.group.order());
    cert.orbits = Some(orbit_sizes(&ctx)?);
    cert.generators = Some(manifest_entries(&ctx.generators));
    cert.checks = m.checks;
    let passed = cert.seal();
    write_certificate(&cert, emit.as_ref())?;
    eprintln!(
        "aut_order={} doubling_triples={} distinct_restrictions={} extensions={} basis_subloop={}",
        m.aut_order,
        m.doubling_triple_count,
        m.distinct_restrictions,
        m.extensions,
        m.basis_subloop_order
    );
    if !passed {
        let witnesses: Vec<String> = cert
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| format!("{}: {}", c.name, c.witnesses.join("; ")))
            .collect();
        return Err(CliError::Failed(witnesses.join("\n")));
    }
    Ok(())
}

fn orbits<F: FiniteField>(structure: Structure, cache: &Path) -> Result<(), CliError> {
    require_q2::<F>("orbit computation")?;
    let ctx = Manifest::read(cache)?.context()?;
    let t = &ctx.table;
    let text = |i: u32| t.element(i).to_string();
    match structure {
        Structure::C2 => {
            let o = orbit_c2(&ctx);
            println!("orbits: {}", o.orbits.len());
            for (orbit, &rep) in o.orbits.iter().zip(&o.representatives) {
                println!("{:>4}  {}", orbit.len(), text(rep));
            }
            if let Some(w) = &o.word {
                println!("x1 -> x0: {}", ctx.word_labels(w).join(" "));
            }
        }
        Structure::V4 => {
            let o = orbit_v4(&ctx).map_err(|e| CliError::Failed(e.to_string()))?;
            println!("orbits: {}", o.orbits.len());
            for (orbit, rep) in o.orbits.iter().zip(&o.representatives) {
                let members: Vec<String> = rep[1..].iter().map(|&i| text(i)).collect();
                println!("{:>4}  {{{}}}", orbit.len(), members.join(", "));
            }
        }
    }
    let reports = orbit_reports(&ctx);
    let name = match structure {
        Structure::C2 => "c2-orbits",
        Structure::V4 => "v4-orbits",
    };
    match reports.iter().find(|r| r.name == name) {
        Some(r) if r.passed() => Ok(()),
        Some(r) => Err(CliError::Failed(format!(
            "{}: {}",
            r.name,
            r.witnesses.join("; ")
        ))),
        None => Err(CliError::Failed(format!("no {name} report"))),
    }
}
