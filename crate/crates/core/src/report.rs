//! Check reports shared by the verification suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactalg::{rat, Rat};

/// One failed case: what was checked, on which input, and the mismatch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub operation: String,
    pub input: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of a family of exact checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub cases_run: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport { check: check.into(), cases_run: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Record one case; `ok == false` adds a failure.
    pub fn case(&mut self, ok: bool, input: impl Into<String>, expected: impl Into<String>, got: impl Into<String>) {
        self.cases_run += 1;
        if !ok {
            self.failures.push(Failure {
                operation: self.check.clone(),
                input: input.into(),
                expected: expected.into(),
                got: got.into(),
            });
        }
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.cases_run += other.cases_run;
        self.failures.extend(other.failures);
    }
}

/// Deterministic generator used by every sampled check.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational with numerator in [−9, 9] and denominator in [1, 4].
pub fn random_rat<R: Rng>(rng: &mut R) -> Rat {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

/// Random non-zero rational from the same range.
pub fn random_nonzero_rat<R: Rng>(rng: &mut R) -> Rat {
    loop {
        let q = random_rat(rng);
        if q != rat(0, 1) {
            return q;
        }
    }
}

pub fn fmt_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(crate::exactalg::rat_to_string).collect();
    format!("({})", parts.join(", "))
}
