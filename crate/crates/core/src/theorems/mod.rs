//! Verification suites. Every check produces a [`CheckReport`]; sampled
//! checks draw from a [`ChaCha8Rng`] seeded by [`SuiteConfig::seed`], so a
//! report is a pure function of `(q, seed, samples)`.

mod algebra;
mod main_theorem;
mod maps;
mod structure;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use algebra::{
    composition, minimal_equation, moufang, order_criteria, sums_of_two, unit_pairs,
};
pub use main_theorem::{verify_main_theorem, MainTheorem, G2_2_ORDER};
pub use maps::{automorphisms, conjugation_witness, named_maps, NamedMaps};
pub use structure::{
    additivity_odd, basis_expansions, orbit_c2, orbit_reports, orbit_v4, shift_witness,
    verify_additivity, verify_shift_pairs, AutContext, C2Orbits, V4Orbits,
};

use crate::scalar::FiniteField;
use crate::zorn::OctonionAlgebra;
use crate::{DEFAULT_SAMPLES, DEFAULT_SEED};

const MAX_WITNESSES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// Outcome of one check. `elapsed` is wall time and is not serialized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub cases: u64,
    pub witnesses: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates cases and failing witnesses for a [`CheckReport`].
#[derive(Debug)]
pub struct Check {
    name: String,
    cases: u64,
    failures: u64,
    witnesses: Vec<String>,
    start: Instant,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            cases: 0,
            failures: 0,
            witnesses: Vec::new(),
            start: Instant::now(),
        }
    }

    /// Counts one case; on failure keeps the witness if there is room.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(witness());
        }
    }

    /// Adds a failure without counting a case.
    pub fn fail(&mut self, witness: String) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    pub fn add_cases(&mut self, n: u64) {
        self.cases += n;
    }

    pub fn finish(self) -> CheckReport {
        CheckReport {
            name: self.name,
            status: if self.failures == 0 {
                Status::Pass
            } else {
                Status::Fail
            },
            cases: self.cases,
            witnesses: self.witnesses,
            elapsed: self.start.elapsed(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl SuiteConfig {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub(crate) fn random_element<A: OctonionAlgebra>(rng: &mut impl Rng) -> A::Elem {
    A::from_coords(std::array::from_fn(|_| {
        A::Scalar::from_index(rng.gen_range(0..A::Scalar::ORDER)).expect("index below q")
    }))
}

/// Rejection sampling on the norm; about one draw in q succeeds.
pub(crate) fn random_unit<A: OctonionAlgebra>(rng: &mut impl Rng) -> A::Elem {
    let one = <A::Scalar as num_traits::One>::one();
    loop {
        let x = random_element::<A>(rng);
        if A::norm(&x) == one {
            return x;
        }
    }
}

/// The named suites, in the order `all` runs them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Composition,
    Moufang,
    MinimalEquation,
    UnitPairs,
    OrderCriteria,
    SumsOfTwo,
    Automorphisms,
    NamedMaps,
    ShiftPairs,
    Orbits,
    Additivity,
    MainTheorem,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Composition,
        Suite::Moufang,
        Suite::MinimalEquation,
        Suite::UnitPairs,
        Suite::OrderCriteria,
        Suite::SumsOfTwo,
        Suite::Automorphisms,
        Suite::NamedMaps,
        Suite::ShiftPairs,
        Suite::Orbits,
        Suite::Additivity,
        Suite::MainTheorem,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Composition => "composition",
            Suite::Moufang => "moufang",
            Suite::MinimalEquation => "minimal-equation",
            Suite::UnitPairs => "unit-pairs",
            Suite::OrderCriteria => "order-criteria",
            Suite::SumsOfTwo => "sums-of-two",
            Suite::Automorphisms => "automorphisms",
            Suite::NamedMaps => "named-maps",
            Suite::ShiftPairs => "shift-pairs",
            Suite::Orbits => "orbits",
            Suite::Additivity => "additivity",
            Suite::MainTheorem => "main-theorem",
        }
    }

    /// Suites that only make sense for M*(2).
    pub fn requires_q2(self) -> bool {
        matches!(
            self,
            Suite::NamedMaps | Suite::ShiftPairs | Suite::Orbits | Suite::MainTheorem
        )
    }

    /// Whether the suite needs the closed automorphism group of M*(2).
    pub fn needs_group(self, q: u32) -> bool {
        q == 2 && matches!(self, Suite::Orbits | Suite::Additivity | Suite::MainTheorem)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, UnknownSuite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Runs one suite over GF(q). `ctx` must be supplied at q = 2 for suites with
/// [`Suite::needs_group`].
pub fn run_suite<F: FiniteField>(
    suite: Suite,
    cfg: &SuiteConfig,
    ctx: Option<&AutContext>,
) -> Vec<CheckReport> {
    let need = |s: Suite| -> &AutContext {
        ctx.unwrap_or_else(|| panic!("suite {s} needs the automorphism group"))
    };
    match suite {
        Suite::Composition => composition::<F>(cfg),
        Suite::Moufang => vec![moufang::<F>(cfg)],
        Suite::MinimalEquation => minimal_equation::<F>(cfg),
        Suite::UnitPairs => unit_pairs::<F>(cfg),
        Suite::OrderCriteria => vec![order_criteria::<F>(cfg)],
        Suite::SumsOfTwo => vec![sums_of_two::<F>(cfg)],
        Suite::Automorphisms => automorphisms::<F>(cfg),
        Suite::NamedMaps => named_maps()
            .map(|n| n.reports())
            .unwrap_or_else(error_report(suite)),
        Suite::ShiftPairs => vec![verify_shift_pairs()],
        Suite::Orbits => orbit_reports(need(suite)),
        Suite::Additivity if F::ORDER == 2 => verify_additivity(need(suite), cfg),
        Suite::Additivity => additivity_odd::<F>(cfg),
        Suite::MainTheorem => verify_main_theorem(need(suite), cfg).checks,
    }
}

fn error_report<E: fmt::Display>(suite: Suite) -> impl FnOnce(E) -> Vec<CheckReport> {
    move |e| {
        let mut c = Check::new(suite.name());
        c.fail(e.to_string());
        vec![c.finish()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_caps_witnesses() {
        let mut c = Check::new("x");
        for i in 0..25 {
            c.record(i % 2 == 0, || format!("{i}"));
        }
        let r = c.finish();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.cases, 25);
        assert_eq!(r.witnesses.len(), 10);
        assert_eq!(r.witnesses[0], "1");
        let ok = Check::new("y").finish();
        assert!(ok.passed() && ok.witnesses.is_empty());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn report_serialization_skips_elapsed() {
        let r = Check::new("z").finish();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"name":"z","status":"pass","cases":0,"witnesses":[]}"#
        );
    }
}
