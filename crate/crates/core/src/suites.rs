//! Seeded randomized suites with line-oriented reports.
//!
//! Points are drawn from [`RatSampler`]. A draw that hits a pole, or is not
//! generic in the sense of [`HypSeries::is_generic_at`], is rejected and
//! counted.

use std::fmt::Write as _;

use crate::andrews;
use crate::error::Error;
use crate::hyperseries::HypSeries;
use crate::linform::Env;
use crate::rat::Rat;
use crate::saalschutz;
use crate::sampling::{RatSampler, GENERATOR_NAME};

/// Numerator magnitude bound for sampled rationals.
pub const NUM_BOUND: u64 = 200;
/// Denominators are drawn from `1..=DEN_BOUND`.
pub const DEN_BOUND: u64 = 50;
/// Draws allowed per requested sample before giving up.
pub const MAX_DRAWS_PER_SAMPLE: usize = 100;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub passed: usize,
    pub failed: usize,
    pub rejected: usize,
    pub text: String,
}

impl SuiteReport {
    fn new(suite: &str, m: u64, samples: usize, seed: u64) -> Self {
        let mut text = String::new();
        let _ = writeln!(text, "suite={suite} m={m} samples={samples} seed={seed} generator={GENERATOR_NAME}");
        SuiteReport {
            text,
            ..Default::default()
        }
    }

    fn line(&mut self, ok: bool, line: String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.text.push_str(&line);
        self.text.push('\n');
    }

    fn finish(mut self, wanted: usize) -> Self {
        if self.passed + self.failed < wanted {
            let _ = writeln!(self.text, "exhausted draws after {} samples", self.passed + self.failed);
            self.failed += wanted - self.passed - self.failed;
        }
        let _ = writeln!(
            self.text,
            "summary passed={} failed={} rejected={}",
            self.passed, self.failed, self.rejected
        );
        self
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn draw(s: &mut RatSampler) -> Rat {
    s.rat(NUM_BOUND, DEN_BOUND)
}

fn generic(series: &HypSeries, m: u64, values: &[(&str, &Rat)]) -> bool {
    let mut env: Env = values.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect();
    env.insert("m".into(), Rat::from(m as i64));
    series.is_generic_at(&env).unwrap_or(false)
}

/// Compares the terminating sum with the product form at random `a, b, c`.
pub fn saalschutz_numeric(m: u64, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("saalschutz", m, samples, seed);
    let series = saalschutz::series();
    let mut s = RatSampler::new(seed);
    let mut index = 0;
    for _ in 0..samples * MAX_DRAWS_PER_SAMPLE {
        if index == samples {
            break;
        }
        let (a, b, c) = (draw(&mut s), draw(&mut s), draw(&mut s));
        if !generic(&series, m, &[("a", &a), ("b", &b), ("c", &c)]) {
            report.rejected += 1;
            continue;
        }
        match saalschutz::verify_numeric(&a, &b, &c, m) {
            Ok(rep) => {
                report.line(rep.equal, format!("sample={index} a={a} b={b} c={c} {rep}"));
                index += 1;
            }
            Err(Error::Pole { .. }) => report.rejected += 1,
            Err(e) => {
                report.line(false, format!("sample={index} a={a} b={b} c={c} error={}", e.kind()));
                index += 1;
            }
        }
    }
    report.finish(samples)
}

/// Replays the polynomial-in-`c` argument at random `a, b` with `a - b`
/// not an integer.
pub fn saalschutz_symbolic(m: u64, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("saalschutz-symbolic", m, samples, seed);
    let mut s = RatSampler::new(seed);
    let mut index = 0;
    for _ in 0..samples * MAX_DRAWS_PER_SAMPLE {
        if index == samples {
            break;
        }
        let (a, b) = (draw(&mut s), draw(&mut s));
        if (&a - &b).is_integer() {
            report.rejected += 1;
            continue;
        }
        let outcome = match saalschutz::master_poly_in_c(&a, &b, m) {
            Ok(p) => format!("ok degree={}", p.degree_in(0).unwrap_or(0)),
            Err(e) => format!("error={}", e.kind()),
        };
        report.line(outcome.starts_with("ok"), format!("sample={index} a={a} b={b} {outcome}"));
        index += 1;
    }
    report.finish(samples)
}

/// Evaluates the `5F4` at random `x, z` and expects exactly zero.
pub fn andrews_numeric(m: u64, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("andrews", m, samples, seed);
    let series = andrews::series_in_x();
    let mut s = RatSampler::new(seed);
    let mut index = 0;
    for _ in 0..samples * MAX_DRAWS_PER_SAMPLE {
        if index == samples {
            break;
        }
        let (x, z) = (draw(&mut s), draw(&mut s));
        if !generic(&series, m, &[("x", &x), ("z", &z)]) {
            report.rejected += 1;
            continue;
        }
        match andrews::sum_numeric(m, &x, &z) {
            Ok(v) => {
                report.line(v.is_zero(), format!("sample={index} x={x} z={z} sum={v}"));
                index += 1;
            }
            Err(Error::Pole { .. }) => report.rejected += 1,
            Err(e) => {
                report.line(false, format!("sample={index} x={x} z={z} error={}", e.kind()));
                index += 1;
            }
        }
    }
    report.finish(samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_are_reproducible() {
        let a = saalschutz_numeric(3, 10, 42);
        let b = saalschutz_numeric(3, 10, 42);
        assert_eq!(a, b);
        assert!(a.all_passed());
        assert!(a.text.starts_with("suite=saalschutz m=3 samples=10 seed=42 generator=splitmix64\n"));
        assert!(a.text.ends_with(&format!("summary passed=10 failed=0 rejected={}\n", a.rejected)));
        assert_ne!(a.text, saalschutz_numeric(3, 10, 43).text);
    }

    #[test]
    fn andrews_small() {
        let r = andrews_numeric(2, 5, 9);
        assert!(r.all_passed(), "{}", r.text);
        assert_eq!(r.passed, 5);
    }

    #[test]
    fn symbolic_small() {
        let r = saalschutz_symbolic(2, 3, 1);
        assert!(r.all_passed(), "{}", r.text);
    }
}
