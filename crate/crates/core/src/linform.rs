//! Symbol tables and rational linear forms, the type of every series
//! parameter.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Bindings of symbol names to rational values. May be partial.
pub type Env = BTreeMap<String, Rat>;

/// Ordered list of distinct symbol names. A symbol's position is its
/// variable index in every [`crate::Poly`] built against the table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
}

impl SymbolTable {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = SymbolTable::default();
        for name in names {
            table.push(name)?;
        }
        Ok(table)
    }

    pub fn push<S: Into<String>>(&mut self, name: S) -> Result<usize> {
        let name = name.into();
        if self.names.contains(&name) {
            return Err(Error::Precondition(format!("duplicate symbol {name}")));
        }
        self.names.push(name);
        Ok(self.names.len() - 1)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }
}

/// `constant + Σ coeff·symbol` with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinForm {
    constant: Rat,
    coeffs: BTreeMap<String, Rat>,
}

impl LinForm {
    pub fn constant(c: impl Into<Rat>) -> Self {
        LinForm {
            constant: c.into(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn symbol(name: &str) -> Self {
        Self::term(Rat::one(), name)
    }

    pub fn term(coeff: Rat, name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(name.to_string(), coeff);
        }
        LinForm {
            constant: Rat::zero(),
            coeffs,
        }
    }

    pub fn constant_term(&self) -> &Rat {
        &self.constant
    }

    pub fn coeff(&self, name: &str) -> Rat {
        self.coeffs.get(name).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &Rat)> {
        self.coeffs.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    /// The value when no symbol occurs.
    pub fn as_constant(&self) -> Option<&Rat> {
        if self.coeffs.is_empty() {
            Some(&self.constant)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        if factor.is_zero() {
            return LinForm::default();
        }
        LinForm {
            constant: &self.constant * factor,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v * factor))
                .collect(),
        }
    }

    pub fn add_const(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        out.constant += c;
        out
    }

    /// Replaces every bound symbol by its value; unbound symbols stay.
    pub fn substitute(&self, env: &Env) -> Self {
        let mut out = LinForm::constant(self.constant.clone());
        for (name, c) in &self.coeffs {
            match env.get(name) {
                Some(v) => out.constant += &(c * v),
                None => {
                    out.coeffs.insert(name.clone(), c.clone());
                }
            }
        }
        out
    }

    /// Replaces symbol `name` by the form `with`.
    pub fn substitute_form(&self, name: &str, with: &LinForm) -> Self {
        let c = self.coeff(name);
        if c.is_zero() {
            return self.clone();
        }
        let mut rest = self.clone();
        rest.coeffs.remove(name);
        &rest + &with.scale(&c)
    }

    pub fn eval(&self, env: &Env) -> Result<Rat> {
        let mut acc = self.constant.clone();
        for (name, c) in &self.coeffs {
            let v = env.get(name).ok_or_else(|| Error::Unbound(name.clone()))?;
            acc += &(c * v);
        }
        Ok(acc)
    }
}

impl Add for &LinForm {
    type Output = LinForm;
    fn add(self, rhs: &LinForm) -> LinForm {
        let mut out = self.clone();
        out.constant += &rhs.constant;
        for (name, c) in &rhs.coeffs {
            let entry = out.coeffs.entry(name.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                out.coeffs.remove(name);
            }
        }
        out
    }
}

impl Neg for &LinForm {
    type Output = LinForm;
    fn neg(self) -> LinForm {
        self.scale(&Rat::from(-1))
    }
}

impl Sub for &LinForm {
    type Output = LinForm;
    fn sub(self, rhs: &LinForm) -> LinForm {
        self + &(-rhs)
    }
}

impl std::iter::Sum for LinForm {
    fn sum<I: Iterator<Item = LinForm>>(iter: I) -> LinForm {
        iter.fold(LinForm::default(), |acc, x| &acc + &x)
    }
}

/// Canonical text: symbol terms in name order, then the constant, with no
/// interior whitespace, e.g. `1/2*x-z+1/2`.
impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, c) in &self.coeffs {
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
            first = false;
        }
        if first {
            return write!(f, "{}", self.constant);
        }
        if !self.constant.is_zero() {
            let sign = if self.constant.is_negative() { "-" } else { "+" };
            write!(f, "{sign}{}", self.constant.abs())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LinForm {
        LinForm::symbol("x")
    }

    #[test]
    fn display_is_canonical() {
        let half = Rat::new(1, 2);
        let f = &(&x().scale(&half) - &LinForm::symbol("z")).add_const(&half);
        assert_eq!(f.to_string(), "1/2*x-z+1/2");
        assert_eq!(LinForm::default().to_string(), "0");
        assert_eq!(LinForm::constant(Rat::new(-3, 4)).to_string(), "-3/4");
        let g = &LinForm::term(Rat::from(-2), "m") + &LinForm::constant(-1);
        assert_eq!(g.to_string(), "-2*m-1");
    }

    #[test]
    fn cancellation_drops_zero_coefficients() {
        let d = &(&x() + &LinForm::constant(3)) - &x();
        assert_eq!(d.as_constant(), Some(&Rat::from(3)));
        assert_eq!(d.symbols().count(), 0);
    }

    #[test]
    fn substitute_and_eval() {
        let f = &x().scale(&Rat::from(2)) + &LinForm::symbol("y");
        let mut env = Env::new();
        env.insert("x".into(), Rat::new(1, 2));
        let g = f.substitute(&env);
        assert_eq!(g.to_string(), "y+1");
        assert!(matches!(f.eval(&env), Err(Error::Unbound(s)) if s == "y"));
        env.insert("y".into(), Rat::from(4));
        assert_eq!(f.eval(&env).unwrap(), Rat::from(5));
    }

    #[test]
    fn symbol_table_rejects_duplicates() {
        assert!(SymbolTable::new(["a", "b", "a"]).is_err());
        let t = SymbolTable::new(["a", "b"]).unwrap();
        assert_eq!(t.index_of("b"), Some(1));
    }
}
