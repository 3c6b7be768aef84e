//! Rising factorials, numeric and symbolic, and the closed form of a ratio
//! of rising factorials whose parameters differ by a nonnegative integer.

use crate::error::{Error, Result};
use crate::linform::{LinForm, SymbolTable};
use crate::poly::Poly;
use crate::rat::Rat;

/// Name of the distinguished summation-index symbol.
pub const KAPPA: &str = "κ";

/// `a (a+1) ... (a+k-1)`; the empty product for `k = 0`.
pub fn rf_num(a: &Rat, k: u64) -> Rat {
    let mut acc = Rat::one();
    let mut x = a.clone();
    let one = Rat::one();
    for _ in 0..k {
        if x.is_zero() {
            return Rat::zero();
        }
        acc *= &x;
        x += &one;
    }
    acc
}

/// Rising factorial with a polynomial base.
pub fn rf_poly(base: &Poly, k: u64) -> Poly {
    (0..k)
        .map(|j| base + &Poly::constant(Rat::from(j as i64)))
        .product()
}

/// Rising factorial of a linear form, expanded against `table`.
pub fn rf_sym(a: &LinForm, k: u64, table: &SymbolTable) -> Result<Poly> {
    Ok(rf_poly(&Poly::from_linform(a, table)?, k))
}

/// A quotient `num / den` where `num` may involve the summation variable
/// and `den` must not. Values are compared by cross-multiplication; no gcd
/// reduction is ever performed.
#[derive(Clone, Debug)]
pub struct KPolyRat {
    num: Poly,
    den: Poly,
    kappa: usize,
}

impl KPolyRat {
    pub fn new(num: Poly, den: Poly, kappa: usize) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if den.involves(kappa) {
            return Err(Error::Precondition(
                "denominator must not involve the summation variable".into(),
            ));
        }
        Ok(KPolyRat { num, den, kappa })
    }

    pub fn one(kappa: usize) -> Self {
        KPolyRat {
            num: Poly::one(),
            den: Poly::one(),
            kappa,
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    /// Degree of the numerator in the summation variable.
    pub fn kappa_degree(&self) -> u32 {
        self.num.degree_in(self.kappa).unwrap_or(0)
    }

    pub fn mul(&self, other: &KPolyRat) -> KPolyRat {
        assert_eq!(self.kappa, other.kappa, "mismatched summation variable");
        KPolyRat {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
            kappa: self.kappa,
        }
    }

    pub fn equivalent(&self, other: &KPolyRat) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Numerator and denominator with the summation variable set to `k`.
    pub fn at(&self, k: u64) -> (Poly, Poly) {
        (
            self.num.substitute(self.kappa, &Rat::from(k as i64)),
            self.den.clone(),
        )
    }
}

/// For `alpha - beta = d` a nonnegative integer, returns `d` and
/// `(beta+κ)_d / (beta)_d`, which equals `(alpha)_κ / (beta)_κ` at every
/// nonnegative integer `κ` wherever `(beta)_d` does not vanish.
pub fn poch_ratio_poly(
    alpha: &LinForm,
    beta: &LinForm,
    table: &SymbolTable,
    kappa: usize,
) -> Result<(u64, KPolyRat)> {
    let diff = alpha - beta;
    let d = diff
        .as_constant()
        .and_then(Rat::as_nonnegative_int)
        .ok_or_else(|| Error::NotIntegerDifference(diff.to_string()))?;
    let beta_poly = Poly::from_linform(beta, table)?;
    let shifted = &beta_poly + &Poly::var(kappa);
    let den = rf_poly(&beta_poly, d);
    if den.is_zero() {
        return Err(Error::Precondition(format!(
            "rising factorial ({beta})_{d} vanishes identically"
        )));
    }
    let ratio = KPolyRat::new(rf_poly(&shifted, d), den, kappa)?;
    Ok((d, ratio))
}
