//! Sparse multivariate polynomials over the rationals.
//!
//! A term is keyed by its exponent vector, one entry per variable index of
//! some [`SymbolTable`]. Trailing zero exponents are trimmed, so the empty
//! vector is the constant monomial and `Vec` ordering coincides with the
//! lexicographic monomial order (variable 0 largest). Polynomials therefore
//! compare structurally, and the leading term is the last map entry.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linform::{LinForm, SymbolTable};
use crate::rat::Rat;

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exponents, Rat>,
}

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn mono_mul(a: &[u32], b: &[u32]) -> Exponents {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

/// `a / b` when `b` divides `a`.
fn mono_div(a: &[u32], b: &[u32]) -> Option<Exponents> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = a.to_vec();
    for (o, s) in out.iter_mut().zip(b) {
        if *o < *s {
            return None;
        }
        *o -= s;
    }
    Some(trim(out))
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::monomial(Vec::new(), c)
    }

    pub fn monomial(exponents: Exponents, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(trim(exponents), coeff);
        }
        Poly { terms }
    }

    /// The variable with index `var`.
    pub fn var(var: usize) -> Self {
        let mut e = vec![0; var + 1];
        e[var] = 1;
        Poly::monomial(e, Rat::one())
    }

    pub fn from_linform(form: &LinForm, table: &SymbolTable) -> Result<Self> {
        let mut p = Poly::constant(form.constant_term().clone());
        for (name, c) in form.terms() {
            let idx = table
                .index_of(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            let mut e = vec![0; idx + 1];
            e[idx] = 1;
            p.add_term(e, c.clone());
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Exponents, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_empty())
    }

    /// The constant value when no variable occurs.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.coeff(&[]))
        } else {
            None
        }
    }

    /// Coefficient of a monomial; trailing zero exponents are ignored.
    pub fn coeff(&self, exps: &[u32]) -> Rat {
        let len = exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        self.terms
            .get(&exps[..len])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Leading term in the lexicographic order.
    pub fn leading(&self) -> Option<(&Exponents, &Rat)> {
        self.terms.last_key_value()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.get(var).copied().unwrap_or(0))
            .max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.degree_in(var).unwrap_or(0) > 0
    }

    /// Number of variable slots any term uses.
    pub fn arity(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients with respect to `var`: entry `i` multiplies `var^i`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let p = if var < rest.len() {
                std::mem::replace(&mut rest[var], 0)
            } else {
                0
            };
            out[p as usize].add_term(trim(rest), c.clone());
        }
        out
    }

    /// Substitutes `var := value`, leaving the other variables in place.
    pub fn substitute(&self, var: usize, value: &Rat) -> Poly {
        let mut out = Poly::zero();
        let mut powers: Vec<Rat> = vec![Rat::one()];
        for (e, c) in &self.terms {
            let p = e.get(var).copied().unwrap_or(0) as usize;
            while powers.len() <= p {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = e.clone();
            if var < rest.len() {
                rest[var] = 0;
            }
            out.add_term(trim(rest), c * &powers[p]);
        }
        out
    }

    /// Substitutes `var := replacement`.
    pub fn compose(&self, var: usize, replacement: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (i, coeff) in self.coefficients_in(var).iter().enumerate() {
            if !coeff.is_zero() {
                out = &out + &(coeff * &replacement.pow(i as u32));
            }
        }
        out
    }

    /// Evaluates at a full point; `point[i]` is the value of variable `i`.
    ///
    /// Panics if a variable that occurs has no value in `point`.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert!(self.arity() <= point.len(), "point has too few coordinates");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&p, v)| acc * v.pow(p))
            })
            .sum()
    }

    /// Exact division: `q` with `q * divisor == self`, or `NotDivisible`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (lead_e, lead_c) = divisor.leading().ok_or(Error::DivisionByZeroPoly)?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((e, c)) = rem.leading() {
            let qe = mono_div(e, lead_e).ok_or(Error::NotDivisible)?;
            let qc = c / lead_c;
            for (de, dc) in &divisor.terms {
                rem.add_term(trim(mono_mul(&qe, de)), -(&qc * dc));
            }
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    pub fn display<'a>(&'a self, table: &'a SymbolTable) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, table }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(mono_mul(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |acc, x| &acc * &x)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Poly{")?;
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e:?}: {c}")?;
        }
        f.write_str("}")
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    table: &'a SymbolTable,
}

/// Leading term first, e.g. `y^2+3*y+2`.
impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.poly.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| {
                    let name = if v < self.table.len() {
                        self.table.name(v).to_string()
                    } else {
                        format!("v{v}")
                    };
                    if p == 1 {
                        name
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y() -> Poly {
        Poly::var(0)
    }

    fn c(n: i64) -> Poly {
        Poly::constant(Rat::from(n))
    }

    #[test]
    fn exact_division_examples() {
        let y2m1 = &(&y() * &y()) - &c(1);
        assert_eq!(y2m1.exact_div(&(&y() - &c(1))).unwrap(), &y() + &c(1));
        let y2p1 = &(&y() * &y()) + &c(1);
        assert_eq!(y2p1.exact_div(&(&y() - &c(1))), Err(Error::NotDivisible));
        assert_eq!(y2p1.exact_div(&Poly::zero()), Err(Error::DivisionByZeroPoly));

        let z = Poly::var(1);
        let d = &y() + &z.scale(&Rat::from(2));
        let n = &d * &(&y() + &c(1));
        assert_eq!(n.exact_div(&d).unwrap(), &y() + &c(1));
    }

    #[test]
    fn degrees_and_coefficients() {
        let z = Poly::var(1);
        let p = &(&(&y() * &y()) * &z) + &(&z * &z).scale(&Rat::from(3));
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.degree_in(0), Some(2));
        assert_eq!(p.degree_in(1), Some(2));
        assert_eq!(p.degree_in(5), Some(0));
        assert_eq!(Poly::zero().degree(), None);
        let cs = p.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], z);
        assert!(cs[1].is_zero());
    }

    #[test]
    fn substitution() {
        let z = Poly::var(1);
        let p = &(&y() * &z) + &c(2);
        assert_eq!(p.substitute(0, &Rat::from(3)), &z.scale(&Rat::from(3)) + &c(2));
        assert_eq!(p.eval(&[Rat::from(2), Rat::from(5)]), Rat::from(12));
        assert_eq!(p.compose(0, &z), &(&z * &z) + &c(2));
    }

    #[test]
    fn display_leading_first() {
        let t = SymbolTable::new(["y"]).unwrap();
        let p = &(&(&y() * &y()) + &y().scale(&Rat::from(3))) + &c(2);
        assert_eq!(p.display(&t).to_string(), "y^2+3*y+2");
        let q = &y().scale(&Rat::new(-1, 2)) + &c(-1);
        assert_eq!(q.display(&t).to_string(), "-1/2*y-1");
    }
}
