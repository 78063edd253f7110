//! Acceptance criteria 1 to 11, exact. Prints one line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use paige::autos::diagonal_switch;
use paige::loops::named::{self, named};
use paige::theorems::{
    automorphisms, composition, conjugation_witness, minimal_equation, moufang, named_maps,
    sums_of_two, unit_pairs, verify_additivity, verify_main_theorem, AutContext, CheckReport,
    SuiteConfig,
};
use paige::{AutError, Gf2, Gf3, Gf5, PaigeLoop2};

const BIN: &str = env!("CARGO_BIN_EXE_paige");

type Outcome = Result<String, String>;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn all_pass(reports: &[CheckReport]) -> Result<u64, String> {
    let mut cases = 0;
    for r in reports {
        if !r.passed() {
            return Err(format!("{} failed: {:?}", r.name, r.witnesses));
        }
        cases += r.cases;
    }
    Ok(cases)
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(t)
    } else {
        Err(format!("{what} took {t:.2?}, limit {limit:?}"))
    }
}

fn cases_of(reports: &[CheckReport], name: &str) -> u64 {
    reports
        .iter()
        .find(|r| r.name == name)
        .map_or(0, |r| r.cases)
}

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .output()
        .expect("the paige binary runs")
}

fn loop_order() -> Outcome {
    let start = Instant::now();
    let t = PaigeLoop2::paige().map_err(|e| e.to_string())?;
    let census = t.census();
    let elapsed = within(start, Duration::from_secs(1), "enumeration")?;
    let expected = BTreeMap::from([(1, 1), (2, 63), (3, 56)]);
    if t.len() != 120 || census != expected {
        return Err(format!("{} elements, census {census:?}", t.len()));
    }
    let out = run(&["enumerate", "--q", "2"], Path::new("."));
    let lines = String::from_utf8_lossy(&out.stdout).lines().count();
    if !out.status.success() || lines != 120 {
        return Err(format!("enumerate printed {lines} lines"));
    }
    Ok(format!(
        "120 elements, census {{1:1, 2:63, 3:56}} in {elapsed:.2?}"
    ))
}

fn composition_and_moufang() -> Outcome {
    let cfg = SuiteConfig::default();
    let start = Instant::now();
    let mut reports = composition::<Gf2>(&cfg);
    let m2 = moufang::<Gf2>(&cfg);
    if m2.cases != 1 << 24 {
        return Err(format!("{} Moufang triples at q=2", m2.cases));
    }
    reports.push(m2);
    let elapsed = within(start, Duration::from_secs(120), "q=2 suites")?;
    let million = SuiteConfig {
        samples: 1_000_000,
        ..cfg
    };
    reports.push(moufang::<Gf3>(&million));
    reports.push(moufang::<Gf5>(&million));
    all_pass(&reports)?;
    Ok(format!(
        "256^3 triples at q=2 in {elapsed:.2?}; 10^6 seeded triples at q=3 and q=5"
    ))
}

fn minimal_equations() -> Outcome {
    let cfg = SuiteConfig::default();
    let mut reports = minimal_equation::<Gf2>(&cfg);
    let q3 = minimal_equation::<Gf3>(&cfg);
    if cases_of(&q3, "bilinear-product") != 6561 * 6561 {
        return Err("q=3 pairs were not exhaustive".into());
    }
    reports.extend(q3);
    let cases = all_pass(&reports)?;
    Ok(format!("{cases} cases, exhaustive at q=2 and q=3"))
}

fn unit_pair_equivalences() -> Outcome {
    let cfg = SuiteConfig::default();
    let start = Instant::now();
    let mut reports = unit_pairs::<Gf2>(&cfg);
    if cases_of(&reports, "unit-pair-equivalence") != 120 * 119 {
        return Err("q=2 pairs were not exhaustive".into());
    }
    reports.extend(unit_pairs::<Gf3>(&cfg));
    let elapsed = within(start, Duration::from_secs(10), "unit pairs")?;
    let cases = all_pass(&reports)?;
    Ok(format!("{cases} cases at q=2 and q=3 in {elapsed:.2?}"))
}

fn sums_of_two_units() -> Outcome {
    let cfg = SuiteConfig::default();
    let start = Instant::now();
    let reports = [sums_of_two::<Gf2>(&cfg), sums_of_two::<Gf3>(&cfg)];
    let elapsed = within(start, Duration::from_secs(1), "decomposition")?;
    if reports[0].cases != 256 || reports[1].cases != 6561 {
        return Err(format!(
            "{} and {} elements",
            reports[0].cases, reports[1].cases
        ));
    }
    all_pass(&reports)?;
    Ok(format!(
        "all 256 elements at q=2 and 6561 at q=3 in {elapsed:.2?}"
    ))
}

fn automorphism_audits() -> Outcome {
    let cfg = SuiteConfig::default();
    let reports = automorphisms::<Gf2>(&cfg);
    let names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
    if names
        != [
            "switch",
            "minus-permutations",
            "signed-permutations",
            "conjugation-criterion",
        ]
    {
        return Err(format!("unexpected q=2 reports {names:?}"));
    }
    all_pass(&reports)?;
    let witness = match diagonal_switch::<Gf3>() {
        Err(AutError::NotMultiplicative { x, y }) => format!("x={x} y={y}"),
        other => return Err(format!("switch at q=3: {other:?}")),
    };
    all_pass(&automorphisms::<Gf3>(&cfg))?;
    let t = PaigeLoop2::paige().map_err(|e| e.to_string())?;
    let x0 = t.lookup(&named(named::X0)).ok_or("x0 missing")?;
    let (y, z) = conjugation_witness(&t, x0).ok_or("T[x0] passed the audit")?;
    Ok(format!(
        "sigma and all six -pi pass at q=2, sigma fails at q=3 ({witness}), T[x0] fails at ({y}, {z})"
    ))
}

fn named_identities() -> Outcome {
    let n = named_maps().map_err(|e| e.to_string())?;
    if let Some(bad) = n.identities.iter().find(|i| !i.holds()) {
        return Err(format!(
            "{}: expected {} got {}",
            bad.label, bad.expected, bad.actual
        ));
    }
    Ok(format!("{} identities hold", n.identities.len()))
}

fn orbits(dir: &Path) -> Outcome {
    let out = run(&["aut-group", "--q", "2", "--emit", "cert.json"], dir);
    if !out.status.success() {
        return Err(format!(
            "aut-group failed: {}",
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let start = Instant::now();
    let c2 = run(&["orbits", "--q", "2", "--structure", "C2"], dir);
    let v4 = run(&["orbits", "--q", "2", "--structure", "V4"], dir);
    let elapsed = within(start, Duration::from_secs(30), "orbit commands")?;
    let text = |o: &Output| String::from_utf8_lossy(&o.stdout).to_string();
    let (c2, v4) = (text(&c2), text(&v4));
    if !c2.starts_with("orbits: 1\n") || !c2.contains(&format!("  63  {}", named::X0)) {
        return Err(format!("C2 output:\n{c2}"));
    }
    if !v4.starts_with("orbits: 2\n") {
        return Err(format!("V4 output:\n{v4}"));
    }
    Ok(format!(
        "1 orbit of 63 involutions, 2 orbits on V4 copies, from the cache in {elapsed:.2?}"
    ))
}

fn main_theorem(ctx: &AutContext) -> Outcome {
    let start = Instant::now();
    let m = verify_main_theorem(ctx, &SuiteConfig::default());
    let elapsed = within(start, Duration::from_secs(600), "pipeline")?;
    all_pass(&m.checks)?;
    let counts = [
        m.doubling_triple_count,
        m.aut_order,
        m.distinct_restrictions,
        m.extensions,
    ];
    if counts != [12096; 4] {
        return Err(format!(
            "triples, closure, restrictions, extensions = {counts:?}"
        ));
    }
    Ok(format!(
        "triples = closure = restrictions = extensions = 12096 in {elapsed:.2?}"
    ))
}

fn additivity(ctx: &AutContext) -> Outcome {
    let reports = verify_additivity(ctx, &SuiteConfig::default());
    if cases_of(&reports, "additivity-summands") != 10_000 {
        return Err("expected 10^4 multi-summand instances".into());
    }
    let cases = all_pass(&reports)?;
    Ok(format!("{cases} cases, including 10^4 multi-summand sums"))
}

fn determinism(dir: &Path) -> Outcome {
    let mut bytes = Vec::new();
    for name in ["first.json", "second.json"] {
        let out = run(&["aut-group", "--q", "2", "--emit", name], dir);
        if !out.status.success() {
            return Err(format!(
                "aut-group failed: {}",
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        bytes.push(std::fs::read(dir.join(name)).map_err(|e| e.to_string())?);
    }
    if bytes[0] != bytes[1] {
        return Err("certificates differ".into());
    }
    Ok(format!(
        "two certificates of {} bytes are identical",
        bytes[0].len()
    ))
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let ctx = AutContext::build().expect("standard generators close");
    let criteria: Vec<Criterion> = vec![
        ("loop order", Box::new(loop_order)),
        (
            "composition and Moufang identities",
            Box::new(composition_and_moufang),
        ),
        (
            "minimal equation and bilinear identities",
            Box::new(minimal_equations),
        ),
        ("unit-pair equivalences", Box::new(unit_pair_equivalences)),
        ("sums of two units", Box::new(sums_of_two_units)),
        ("automorphism audits", Box::new(automorphism_audits)),
        ("named identities", Box::new(named_identities)),
        ("orbits", Box::new(|| orbits(dir.path()))),
        ("main theorem", Box::new(|| main_theorem(&ctx))),
        ("additivity", Box::new(|| additivity(&ctx))),
        ("determinism", Box::new(|| determinism(dir.path()))),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} pass: {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL: {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria pass", criteria.len());
}
