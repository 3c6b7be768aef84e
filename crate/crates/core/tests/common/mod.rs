#![allow(dead_code)]

use std::collections::BTreeSet;

use hypercert::linform::{LinForm, SymbolTable};
use hypercert::sampling::RatSampler;
use hypercert::{HypSeries, Poly, Rat};

pub const NAMES: [&str; 7] = ["a", "b", "c", "m", "x", "y", "z"];

pub fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// Small rational with numerator in `-20..=20` and denominator in `1..=9`.
pub fn small(s: &mut RatSampler) -> Rat {
    s.rat(20, 9)
}

pub fn random_linform(s: &mut RatSampler, names: &[String]) -> LinForm {
    let mut f = LinForm::constant(small(s));
    for n in names {
        if s.below(2) == 0 {
            f = &f + &LinForm::term(small(s), n);
        }
    }
    f
}

/// A random series: a random subset of [`NAMES`] declared (some as integer
/// symbols), up to five upper and four lower parameters.
pub fn random_series(s: &mut RatSampler) -> HypSeries {
    let names: Vec<String> = NAMES
        .iter()
        .filter(|_| s.below(2) == 0)
        .map(|n| n.to_string())
        .collect();
    let ints: BTreeSet<String> = names.iter().filter(|_| s.below(3) == 0).cloned().collect();
    let p = s.below(6) as usize;
    let q = s.below(5) as usize;
    let upper = (0..p).map(|_| random_linform(s, &names)).collect();
    let lower = (0..q).map(|_| random_linform(s, &names)).collect();
    let table = SymbolTable::new(names.iter().cloned()).unwrap();
    HypSeries::new(upper, lower, small(s), table, ints).unwrap()
}

/// Random polynomial in `vars` variables with up to `terms` terms of
/// per-variable degree at most `max_deg`.
pub fn random_poly(s: &mut RatSampler, vars: usize, terms: usize, max_deg: u64) -> Poly {
    (0..terms)
        .map(|_| {
            let exps = (0..vars).map(|_| s.below(max_deg + 1) as u32).collect();
            Poly::monomial(exps, small(s))
        })
        .sum()
}
