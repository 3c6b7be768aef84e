//! Terminating generalized hypergeometric series at a rational argument.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linform::{Env, LinForm, SymbolTable};
use crate::rat::Rat;

/// A `pFq` specification: upper and lower parameters, argument, and the
/// symbols the parameters may use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypSeries {
    pub upper: Vec<LinForm>,
    pub lower: Vec<LinForm>,
    pub arg: Rat,
    pub symbols: SymbolTable,
    /// Symbols declared to range over the nonnegative integers.
    pub integer_symbols: BTreeSet<String>,
}

impl HypSeries {
    pub fn new(
        upper: Vec<LinForm>,
        lower: Vec<LinForm>,
        arg: Rat,
        symbols: SymbolTable,
        integer_symbols: BTreeSet<String>,
    ) -> Result<Self> {
        for form in upper.iter().chain(&lower) {
            for name in form.symbols() {
                if !symbols.contains(name) {
                    return Err(Error::UnknownSymbol(name.to_string()));
                }
            }
        }
        for name in &integer_symbols {
            if !symbols.contains(name) {
                return Err(Error::UnknownSymbol(name.clone()));
            }
        }
        Ok(HypSeries {
            upper,
            lower,
            arg,
            symbols,
            integer_symbols,
        })
    }

    /// Builds a series whose symbol table is inferred from the parameters
    /// in order of first appearance.
    pub fn from_params(upper: Vec<LinForm>, lower: Vec<LinForm>, arg: Rat) -> Self {
        let mut symbols = SymbolTable::default();
        for form in upper.iter().chain(&lower) {
            for name in form.symbols() {
                if !symbols.contains(name) {
                    symbols.push(name).expect("fresh symbol");
                }
            }
        }
        HypSeries {
            upper,
            lower,
            arg,
            symbols,
            integer_symbols: BTreeSet::new(),
        }
    }

    /// Checks that every binding names a declared symbol and that integer
    /// symbols are bound to nonnegative integers.
    pub fn check_env(&self, env: &Env) -> Result<()> {
        for (name, value) in env {
            if !self.symbols.contains(name) {
                return Err(Error::UnknownSymbol(name.clone()));
            }
            if self.integer_symbols.contains(name) && value.as_nonnegative_int().is_none() {
                return Err(Error::InvalidBinding {
                    symbol: name.clone(),
                    reason: format!("{value} is not a nonnegative integer"),
                });
            }
        }
        Ok(())
    }

    /// Applies a (possibly partial) environment to every parameter. Bound
    /// symbols leave the table.
    pub fn substitute(&self, env: &Env) -> HypSeries {
        let keep = |n: &String| !env.contains_key(n);
        HypSeries {
            upper: self.upper.iter().map(|f| f.substitute(env)).collect(),
            lower: self.lower.iter().map(|f| f.substitute(env)).collect(),
            arg: self.arg.clone(),
            symbols: SymbolTable::new(self.symbols.names().iter().filter(|n| keep(n)).cloned())
                .expect("subset of a valid table"),
            integer_symbols: self.integer_symbols.iter().filter(|n| keep(n)).cloned().collect(),
        }
    }

    /// Upper parameters that are nonpositive integers `-n` under `env`,
    /// ordered by `n` and then by position.
    pub fn terminating_candidates(&self, env: &Env) -> Vec<(usize, u64)> {
        let mut out: Vec<(usize, u64)> = self
            .upper
            .iter()
            .enumerate()
            .filter_map(|(i, f)| {
                f.substitute(env)
                    .as_constant()
                    .and_then(Rat::as_nonpositive_int)
                    .map(|n| (i, n))
            })
            .collect();
        out.sort_by_key(|&(i, n)| (n, i));
        out
    }

    /// Position of the upper parameter that truncates the series, and the
    /// truncation order `n`. Ties resolve to the smallest `n`.
    pub fn termination_index(&self, env: &Env) -> Result<(usize, u64)> {
        self.terminating_candidates(env)
            .into_iter()
            .next()
            .ok_or(Error::NoTermination)
    }

    /// Exact value of the truncated sum under a full environment.
    pub fn evaluate_terminating(&self, env: &Env) -> Result<Rat> {
        self.check_env(env)?;
        if let Some(name) = self.symbols.names().iter().find(|n| !env.contains_key(*n)) {
            return Err(Error::Unbound(name.clone()));
        }
        let (_, n) = self.termination_index(env)?;
        let uppers = self
            .upper
            .iter()
            .map(|f| f.eval(env))
            .collect::<Result<Vec<_>>>()?;
        let lowers = self
            .lower
            .iter()
            .map(|f| f.eval(env))
            .collect::<Result<Vec<_>>>()?;
        check_poles(&lowers, n)?;

        let one = Rat::one();
        let mut term = Rat::one();
        let mut total = Rat::one();
        for k in 0..n {
            let kr = Rat::from(k as i64);
            let num: Rat = uppers.iter().map(|a| a + &kr).product();
            let den: Rat = lowers.iter().map(|b| b + &kr).product::<Rat>() * (&kr + &one);
            term = term * num / den * &self.arg;
            total += &term;
        }
        Ok(total)
    }

    /// Balanced: at unit argument with `Σ lower - Σ upper = 1` identically.
    pub fn is_balanced(&self) -> bool {
        if !self.arg.is_one() {
            return false;
        }
        let upper: LinForm = self.upper.iter().cloned().sum();
        let lower: LinForm = self.lower.iter().cloned().sum();
        (&lower - &upper).as_constant() == Some(&Rat::one())
    }

    /// False when some parameter depending on a non-integer symbol takes an
    /// integer value under `env`. At such points the sum can truncate early
    /// or meet a pole, and identities between rational functions of the
    /// parameters need not hold term by term.
    pub fn is_generic_at(&self, env: &Env) -> Result<bool> {
        for f in self.upper.iter().chain(&self.lower) {
            if f.symbols().all(|s| self.integer_symbols.contains(s)) {
                continue;
            }
            if f.eval(env)?.is_integer() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Fails if some lower parameter `b` has `b + j = 0` with `j < n`, i.e. a
/// vanishing `(b)_k` for some `k ≤ n`.
pub fn check_poles(lowers: &[Rat], n: u64) -> Result<()> {
    for (index, b) in lowers.iter().enumerate() {
        if let Some(j) = b.as_nonpositive_int() {
            if j < n {
                return Err(Error::Pole { index, shift: j });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> LinForm {
        LinForm::constant(n)
    }

    fn f21() -> HypSeries {
        HypSeries::from_params(vec![c(-2), c(1)], vec![c(1)], Rat::one())
    }

    #[test]
    fn two_f_one_binomial() {
        let s = f21();
        assert_eq!(s.evaluate_terminating(&Env::new()).unwrap(), Rat::zero());
        assert!(!s.is_balanced());
    }

    #[test]
    fn no_termination() {
        let s = HypSeries::from_params(vec![c(1), c(2)], vec![c(3)], Rat::one());
        assert_eq!(s.termination_index(&Env::new()), Err(Error::NoTermination));
        assert_eq!(s.evaluate_terminating(&Env::new()), Err(Error::NoTermination));
    }

    #[test]
    fn smallest_truncation_wins() {
        let s = HypSeries::from_params(vec![c(-4), c(-1), c(-1)], vec![c(2)], Rat::one());
        assert_eq!(s.termination_index(&Env::new()).unwrap(), (1, 1));
        // 1 + (-4)(-1)(-1)/(1*2) = -1
        assert_eq!(s.evaluate_terminating(&Env::new()).unwrap(), Rat::from(-1));
    }

    #[test]
    fn pole_in_range() {
        let s = HypSeries::from_params(vec![c(-3)], vec![c(-1)], Rat::one());
        assert_eq!(
            s.evaluate_terminating(&Env::new()),
            Err(Error::Pole { index: 0, shift: 1 })
        );
        // (b)_k with b = -3 only vanishes from k = 4 on.
        let s = HypSeries::from_params(vec![c(-3)], vec![c(-3)], Rat::one());
        assert!(s.evaluate_terminating(&Env::new()).is_ok());
    }

    #[test]
    fn pole_before_truncation() {
        let s = HypSeries::from_params(vec![c(-5), c(2)], vec![c(-3)], Rat::one());
        assert_eq!(
            s.evaluate_terminating(&Env::new()),
            Err(Error::Pole { index: 0, shift: 3 })
        );
    }

    #[test]
    fn argument_enters_as_power() {
        // 1F0(-2;;t) = (1-t)^2
        let s = HypSeries::from_params(vec![c(-2)], vec![], Rat::new(1, 3));
        assert_eq!(s.evaluate_terminating(&Env::new()).unwrap(), Rat::new(4, 9));
    }

    #[test]
    fn env_validation() {
        let m = LinForm::symbol("m");
        let mut s = HypSeries::from_params(vec![-&m], vec![], Rat::one());
        s.integer_symbols.insert("m".into());
        let mut env = Env::new();
        assert!(matches!(s.evaluate_terminating(&env), Err(Error::Unbound(_))));
        env.insert("m".into(), Rat::new(1, 2));
        assert!(matches!(s.evaluate_terminating(&env), Err(Error::InvalidBinding { .. })));
        env.insert("m".into(), Rat::from(2));
        env.insert("q".into(), Rat::from(2));
        assert!(matches!(s.evaluate_terminating(&env), Err(Error::UnknownSymbol(_))));
    }
}
