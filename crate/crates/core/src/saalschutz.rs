//! The Pfaff-Saalschütz `3F2` summation, checked numerically and replayed
//! as a polynomial identity in `c`.

use crate::error::{Error, Result};
use crate::hyperseries::HypSeries;
use crate::interp::poly_interp_univar;
use crate::linform::{Env, LinForm, SymbolTable};
use crate::pochhammer::{rf_num, rf_poly};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::spec::parse_series_spec;
use crate::difference::binomial_row;

pub const SERIES_TEXT: &str = "sym m:int, a, b, c; upper: -m, a, b; lower: c, 1-m+a+b-c; arg: 1";

/// `3F2(-m, a, b; c, 1-m+a+b-c; 1)` with symbols `m, a, b, c`.
pub fn series() -> HypSeries {
    parse_series_spec(SERIES_TEXT)
        .expect("built-in series parses")
        .series
}

fn env(a: &Rat, b: &Rat, c: &Rat, m: u64) -> Env {
    [
        ("a", a.clone()),
        ("b", b.clone()),
        ("c", c.clone()),
        ("m", Rat::from(m as i64)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

pub fn lhs(a: &Rat, b: &Rat, c: &Rat, m: u64) -> Result<Rat> {
    series().evaluate_terminating(&env(a, b, c, m))
}

/// `(c-a)_m (c-b)_m / ((c)_m (c-a-b)_m)`.
pub fn rhs_product(a: &Rat, b: &Rat, c: &Rat, m: u64) -> Result<Rat> {
    let den_c = rf_num(c, m);
    if den_c.is_zero() {
        return Err(Error::Pole { index: 0, shift: c.as_nonpositive_int().unwrap_or(0) });
    }
    let cab = c - a - b;
    let den_cab = rf_num(&cab, m);
    if den_cab.is_zero() {
        return Err(Error::Pole { index: 1, shift: cab.as_nonpositive_int().unwrap_or(0) });
    }
    Ok(rf_num(&(c - a), m) * rf_num(&(c - b), m) / (den_c * den_cab))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericReport {
    pub lhs: Rat,
    pub rhs: Rat,
    pub equal: bool,
}

impl std::fmt::Display for NumericReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.equal { "equal" } else { "differ" };
        write!(f, "lhs={} rhs={} {verdict}", self.lhs, self.rhs)
    }
}

pub fn verify_numeric(a: &Rat, b: &Rat, c: &Rat, m: u64) -> Result<NumericReport> {
    let lhs = lhs(a, b, c, m)?;
    let rhs = rhs_product(a, b, c, m)?;
    Ok(NumericReport {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

fn fail(msg: String) -> Error {
    Error::Replay(msg)
}

/// `Σ_k C(m,k) (a)_k (b)_k (c+k)_{m-k} (c-a-b)_{m-k}` as a polynomial in
/// `c` (variable 0), with the replay of its characterization: monic of
/// degree `2m`, zero at `c = a-i` and `c = b-i` for `i < m`, hence equal
/// to `(c-a)_m (c-b)_m`.
pub fn master_poly_in_c(a: &Rat, b: &Rat, m: u64) -> Result<Poly> {
    if (a - b).is_integer() {
        return Err(Error::Precondition(format!("a - b = {} is an integer", a - b)));
    }
    let c = Poly::var(0);
    let constant = |r: Rat| Poly::constant(r);
    let cab = &c - &constant(a + b);
    let master: Poly = binomial_row(m)
        .into_iter()
        .enumerate()
        .map(|(k, binom)| {
            let k = k as u64;
            let coeff = Rat::from(binom) * rf_num(a, k) * rf_num(b, k);
            let shifted = &c + &constant(Rat::from(k as i64));
            (&rf_poly(&shifted, m - k) * &rf_poly(&cab, m - k)).scale(&coeff)
        })
        .sum();

    let deg = 2 * m as u32;
    if master.degree_in(0) != Some(deg) || master.coeff(&[deg]) != Rat::one() {
        return Err(fail(format!("master polynomial is not monic of degree {deg}")));
    }
    let roots: Vec<Rat> = (0..m as i64)
        .flat_map(|i| [a - Rat::from(i), b - Rat::from(i)])
        .collect();
    for r in &roots {
        if !master.eval(std::slice::from_ref(r)).is_zero() {
            return Err(fail(format!("master polynomial does not vanish at c = {r}")));
        }
    }

    // Leading coefficient plus 2m values determine the polynomial.
    let lead = Poly::var(0).pow(deg);
    let reconstructed = if m == 0 {
        lead
    } else {
        let points: Vec<(Rat, Rat)> = roots.iter().map(|r| (r.clone(), -r.pow(deg))).collect();
        &lead + &poly_interp_univar(&points, deg as usize - 1)?
    };
    if reconstructed != master {
        return Err(fail("reconstruction from roots disagrees".into()));
    }
    let product = &rf_poly(&(&c - &constant(a.clone())), m) * &rf_poly(&(&c - &constant(b.clone())), m);
    if product != master {
        return Err(fail("master polynomial differs from (c-a)_m (c-b)_m".into()));
    }
    Ok(master)
}

pub fn c_table() -> SymbolTable {
    SymbolTable::new(["c"]).expect("one symbol")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// The series with `c` replaced by `a - i` or `b - i`, symbolic in `a`
/// and `b`, and the binding `m`. These are the specializations on which the
/// left side vanishes for `i < m`.
pub fn specialized(m: u64, i: u64, side: Side) -> (HypSeries, Env) {
    let base = match side {
        Side::A => LinForm::symbol("a"),
        Side::B => LinForm::symbol("b"),
    };
    let c_form = base.add_const(&Rat::from(-(i as i64)));
    let s = series();
    let upper = s.upper.clone();
    let lower = s.lower.iter().map(|f| f.substitute_form("c", &c_form)).collect();
    let mut symbols = SymbolTable::default();
    for n in ["m", "a", "b"] {
        symbols.push(n).expect("distinct");
    }
    let spec = HypSeries::new(upper, lower, Rat::one(), symbols, s.integer_symbols.clone())
        .expect("symbols declared");
    let env = [("m".to_string(), Rat::from(m as i64))].into_iter().collect();
    (spec, env)
}
