//! Pairing upper with lower parameters so that every pair differs by a
//! nonnegative integer.

use crate::error::{Error, Result};
use crate::linform::LinForm;
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PairEntry {
    pub upper: usize,
    pub lower: usize,
    pub d: u64,
}

/// A perfect matching between two equally long parameter lists, sorted by
/// lower index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<PairEntry>,
}

impl Pairing {
    /// `Σ d`, the degree of the summand polynomial the pairing produces.
    pub fn total_degree(&self) -> u64 {
        self.pairs.iter().map(|p| p.d).sum()
    }
}

/// `Some(d)` when `upper - lower` is the constant nonnegative integer `d`.
pub fn integer_gap(upper: &LinForm, lower: &LinForm) -> Option<u64> {
    (upper - lower).as_constant().and_then(Rat::as_nonnegative_int)
}

struct Kuhn<'a> {
    adj: &'a [Vec<(usize, u64)>],
    match_of_lower: Vec<Option<usize>>,
    seen: Vec<bool>,
}

impl Kuhn<'_> {
    fn augment(&mut self, u: usize) -> bool {
        for &(l, _) in &self.adj[u] {
            if self.seen[l] {
                continue;
            }
            self.seen[l] = true;
            if self.match_of_lower[l].is_none_or(|v| self.augment(v)) {
                self.match_of_lower[l] = Some(u);
                return true;
            }
        }
        false
    }
}

/// Finds a perfect matching by augmenting paths, or `NoPairing` if none
/// exists.
pub fn find_pairing(uppers: &[LinForm], lowers: &[LinForm]) -> Result<Pairing> {
    if uppers.len() != lowers.len() {
        return Err(Error::NoPairing);
    }
    let adj: Vec<Vec<(usize, u64)>> = uppers
        .iter()
        .map(|u| {
            lowers
                .iter()
                .enumerate()
                .filter_map(|(j, l)| integer_gap(u, l).map(|d| (j, d)))
                .collect()
        })
        .collect();

    let mut kuhn = Kuhn {
        adj: &adj,
        match_of_lower: vec![None; lowers.len()],
        seen: vec![false; lowers.len()],
    };
    for u in 0..uppers.len() {
        kuhn.seen.iter_mut().for_each(|s| *s = false);
        if !kuhn.augment(u) {
            return Err(Error::NoPairing);
        }
    }

    let pairs = kuhn
        .match_of_lower
        .iter()
        .enumerate()
        .map(|(lower, u)| {
            let upper = u.expect("perfect matching");
            let d = adj[upper]
                .iter()
                .find(|&&(l, _)| l == lower)
                .map(|&(_, d)| d)
                .expect("matched along an edge");
            PairEntry { upper, lower, d }
        })
        .collect();
    Ok(Pairing { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> LinForm {
        LinForm::symbol(s)
    }

    #[test]
    fn saalschutz_specialization() {
        // c - a = -i with i = 1, m = 3: uppers (c+1, b), lowers (c, b-1).
        let one = Rat::one();
        let uppers = [sym("c").add_const(&one), sym("b")];
        let lowers = [sym("c"), sym("b").add_const(&Rat::from(-1))];
        let p = find_pairing(&uppers, &lowers).unwrap();
        let ds: Vec<u64> = p.pairs.iter().map(|e| e.d).collect();
        assert_eq!(ds, vec![1, 1]);
        assert_eq!(p.total_degree(), 2);
    }

    #[test]
    fn trivial_and_impossible() {
        let a = sym("a");
        let p = find_pairing(std::slice::from_ref(&a), std::slice::from_ref(&a)).unwrap();
        assert_eq!(p.pairs, vec![PairEntry { upper: 0, lower: 0, d: 0 }]);
        let half = a.add_const(&Rat::new(1, 2));
        assert_eq!(find_pairing(&[half], std::slice::from_ref(&a)), Err(Error::NoPairing));
        assert_eq!(find_pairing(std::slice::from_ref(&a), &[]), Err(Error::NoPairing));
        assert!(find_pairing(&[], &[]).unwrap().pairs.is_empty());
    }

    #[test]
    fn greedy_would_fail() {
        // u0 fits l0 and l1, u1 only fits l0.
        let a = sym("a");
        let uppers = [a.add_const(&Rat::from(2)), a.add_const(&Rat::one())];
        let lowers = [a.clone(), a.add_const(&Rat::from(2))];
        let p = find_pairing(&uppers, &lowers).unwrap();
        assert_eq!(p.pairs[0], PairEntry { upper: 1, lower: 0, d: 1 });
        assert_eq!(p.pairs[1], PairEntry { upper: 0, lower: 1, d: 0 });
    }
}
