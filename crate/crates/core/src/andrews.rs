//! Replay of the vanishing of the balanced `5F4`
//!
//! ```text
//! 5F4(-2m-1, x+2m+2, x-z+1/2, x+m+1, z+m+1; x/2+1/2, x/2+1, 2z+2m+2, 2x-2z+1; 1) = 0
//! ```
//!
//! After `x = y + 2z` the summand is a polynomial in `k` of degree `2m` for
//! each integer `y` in `0..=2m+1`, so the sum vanishes there. Multiplied by
//! `(y+z+1)_m (y+2z+1)_m` (and by the `y`-free `(2z+2m+2)_{2m+1}`), the sum
//! is a polynomial in `y` of degree at most `2m`, which therefore vanishes
//! identically.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::certificate::{check_certificate, Certificate, SeriesText, Verdict, RejectReason, CERTIFICATE_VERSION, VANISHES};
use crate::difference::{alt_binom_sum, binomial_row};
use crate::error::{Error, Result};
use crate::hyperseries::HypSeries;
use crate::interp::interp_in;
use crate::linform::{Env, LinForm, SymbolTable};
use crate::pochhammer::{poch_ratio_poly, rf_poly, rf_sym, KPolyRat, KAPPA};
use crate::poly::Poly;
use crate::prover::prove_vanishing;
use crate::rat::Rat;
use crate::spec::{parse_linform, parse_series_spec};

pub const EQ1_TEXT: &str = "sym m:int, x, z; upper: -2*m-1, x+2*m+2, x-z+1/2, x+m+1, z+m+1; \
                            lower: 1/2*x+1/2, 1/2*x+1, 2*z+2*m+2, 2*x-2*z+1; arg: 1";
pub const EQ4_TEXT: &str = "sym m:int, y, z; upper: -2*m-1, y+2*z+2*m+2, y+z+1/2, y+2*z+m+1, z+m+1; \
                            lower: 1/2*y+z+1/2, 1/2*y+z+1, 2*z+2*m+2, 2*y+2*z+1; arg: 1";

/// The series in `x` and its form after `x = y + 2z`.
pub fn series_in_x() -> HypSeries {
    parse_series_spec(EQ1_TEXT).expect("built-in series").series
}

pub fn series_in_y() -> HypSeries {
    parse_series_spec(EQ4_TEXT).expect("built-in series").series
}

#[derive(Clone, Debug)]
pub struct AndrewsInstance {
    pub m: u64,
    pub in_x: HypSeries,
    pub in_y: HypSeries,
}

impl AndrewsInstance {
    /// Checks parameter by parameter that substituting `x = y + 2z` turns
    /// the `x` series into the `y` series.
    pub fn new(m: u64) -> Result<Self> {
        let in_x = series_in_x();
        let in_y = series_in_y();
        let x_as = &LinForm::symbol("y") + &LinForm::term(Rat::from(2), "z");
        let same = |a: &[LinForm], b: &[LinForm]| {
            a.len() == b.len() && a.iter().zip(b).all(|(f, g)| &f.substitute_form("x", &x_as) == g)
        };
        if !same(&in_x.upper, &in_y.upper) || !same(&in_x.lower, &in_y.lower) {
            return Err(Error::Replay("x = y + 2z does not map one series onto the other".into()));
        }
        Ok(AndrewsInstance { m, in_x, in_y })
    }

    pub fn env(&self) -> Env {
        m_env(self.m)
    }
}

fn m_env(m: u64) -> Env {
    [("m".to_string(), Rat::from(m as i64))].into_iter().collect()
}

/// Exact value of the `x` series; the identity says it is zero.
pub fn sum_numeric(m: u64, x: &Rat, z: &Rat) -> Result<Rat> {
    let mut env = m_env(m);
    env.insert("x".into(), x.clone());
    env.insert("z".into(), z.clone());
    series_in_x().evaluate_terminating(&env)
}

/// Exact value of the `y` series.
pub fn sum_numeric_in_y(m: u64, y: &Rat, z: &Rat) -> Result<Rat> {
    let mut env = m_env(m);
    env.insert("y".into(), y.clone());
    env.insert("z".into(), z.clone());
    series_in_y().evaluate_terminating(&env)
}

fn lf(text: &str) -> LinForm {
    parse_linform(text, None).expect("built-in linear form")
}

/// One numerator/denominator pairing used for `P1` or `P2`.
#[derive(Clone, Debug)]
pub struct CasePair {
    pub upper: LinForm,
    pub lower: LinForm,
    pub d: u64,
}

/// The four pairings for integer `y`, chosen by `y ≤ m` versus
/// `y ≥ m + 1` (for `P1`) and by the parity of `y` (for `P2`). Parameters
/// are returned with `y` and `m` already substituted.
pub fn case_pairs(y: u64, m: u64) -> Result<[CasePair; 4]> {
    if y > 2 * m + 1 {
        return Err(Error::Precondition(format!("y = {y} outside 0..={}", 2 * m + 1)));
    }
    let mut env = m_env(m);
    env.insert("y".into(), Rat::from(y as i64));
    let pair = |u: &str, l: &str, d: u64| CasePair {
        upper: lf(u).substitute(&env),
        lower: lf(l).substitute(&env),
        d,
    };
    let p1 = if y <= m {
        [
            pair("y+2*z+2*m+2", "2*z+2*m+2", y),
            pair("y+2*z+m+1", "2*y+2*z+1", m - y),
        ]
    } else {
        [
            pair("y+2*z+2*m+2", "2*y+2*z+1", 2 * m + 1 - y),
            pair("y+2*z+m+1", "2*z+2*m+2", y - m - 1),
        ]
    };
    let p2 = if y.is_multiple_of(2) {
        [
            pair("y+z+1/2", "1/2*y+z+1/2", y / 2),
            pair("z+m+1", "1/2*y+z+1", m - y / 2),
        ]
    } else {
        [
            pair("y+z+1/2", "1/2*y+z+1", (y - 1) / 2),
            pair("z+m+1", "1/2*y+z+1/2", m - (y - 1) / 2),
        ]
    };
    let [a, b] = p1;
    let [c, d] = p2;
    Ok([a, b, c, d])
}

/// Table `[κ, z]` for the summand at integer `y`.
pub fn kappa_z_table() -> SymbolTable {
    SymbolTable::new([KAPPA, "z"]).expect("distinct")
}

/// Table `[y, z]` for `Q1`, `Q2` and the master polynomial.
pub fn y_z_table() -> SymbolTable {
    SymbolTable::new(["y", "z"]).expect("distinct")
}

/// `P1(k) P2(k)` at integer `y` as a polynomial in `κ` over `z`, of
/// `κ`-degree exactly `2m`.
pub fn build_p1p2(y: u64, m: u64) -> Result<KPolyRat> {
    let table = kappa_z_table();
    let mut product = KPolyRat::one(0);
    for case in case_pairs(y, m)? {
        let (d, ratio) = poch_ratio_poly(&case.upper, &case.lower, &table, 0)?;
        if d != case.d {
            return Err(Error::Replay(format!(
                "pairing {} / {} has gap {d}, expected {}",
                case.upper, case.lower, case.d
            )));
        }
        product = product.mul(&ratio);
    }
    if u64::from(product.kappa_degree()) != 2 * m {
        return Err(Error::Replay(format!(
            "P1 P2 has degree {} in k, expected {}",
            product.kappa_degree(),
            2 * m
        )));
    }
    Ok(product)
}

/// Outcome of the integer-`y` step for one `y`.
#[derive(Clone, Debug)]
pub struct IntegerYCase {
    pub y: u64,
    /// The alternating sum of the `P1 P2` numerator: the zero polynomial.
    pub alternating_sum: Poly,
    pub certificate: Certificate,
}

/// For every `y` in `0..=2m+1`, shows the alternating sum of `P1 P2` is the
/// zero polynomial in `z` and certifies the same instance through the
/// general prover.
pub fn integer_y_vanish(m: u64) -> Result<Vec<IntegerYCase>> {
    let series = series_in_y();
    (0..=2 * m + 1)
        .map(|y| {
            let summand = build_p1p2(y, m)?;
            let sum = alt_binom_sum(summand.numerator(), 2 * m + 1, 0);
            if !sum.is_zero() {
                return Err(Error::Replay(format!("alternating sum at y = {y} is not zero")));
            }
            let mut env = m_env(m);
            env.insert("y".into(), Rat::from(y as i64));
            let certificate = prove_vanishing(&series, &env)?;
            if certificate.total_degree != 2 * m {
                return Err(Error::Replay(format!(
                    "prover paired y = {y} to degree {}",
                    certificate.total_degree
                )));
            }
            if let Verdict::Reject { reason, detail } = check_certificate(&certificate) {
                return Err(Error::Replay(format!("certificate for y = {y}: {reason} {detail}")));
            }
            Ok(IntegerYCase {
                y,
                alternating_sum: sum,
                certificate,
            })
        })
        .collect()
}

fn rf(text: &str, k: u64) -> Poly {
    rf_sym(&lf(text), k, &y_z_table()).expect("symbols y, z")
}

fn check_range(k: u64, m: u64) -> Result<()> {
    if k > 2 * m + 1 {
        return Err(Error::Precondition(format!("k = {k} outside 0..={}", 2 * m + 1)));
    }
    Ok(())
}

fn shifted(base: &str, shift: u64) -> String {
    format!("{base}+{shift}")
}

/// `Q1 = (y+z+1)_m (y+z+1/2)_k / (2y+2z+1)_k` in closed form:
/// `2^{-2k} (y+z+1+k)_{m-k} (2y+2z+1+k)_k` for `k ≤ m`, and
/// `2^{-2m-1} (2y+2z+1+k)_{2m+1-k} (y+z+m+3/2)_{k-m-1}` otherwise.
pub fn build_q1(k: u64, m: u64) -> Result<Poly> {
    check_range(k, m)?;
    let closed = if k <= m {
        (&rf(&shifted("y+z+1", k), m - k) * &rf(&shifted("2*y+2*z+1", k), k))
            .scale(&Rat::pow2(-2 * k as i64))
    } else {
        (&rf(&shifted("2*y+2*z+1", k), 2 * m + 1 - k) * &rf(&format!("y+z+{m}+3/2"), k - m - 1))
            .scale(&Rat::pow2(-2 * m as i64 - 1))
    };
    if closed.degree_in(0) != Some(m as u32) {
        return Err(Error::Replay(format!("Q1({k}) has degree {:?} in y", closed.degree_in(0))));
    }
    let numerator = &rf("y+z+1", m) * &rf("y+z+1/2", k);
    let denominator = rf("2*y+2*z+1", k);
    if numerator.exact_div(&denominator)? != closed {
        return Err(Error::Replay(format!("Q1({k}) closed form fails exact division")));
    }
    Ok(closed)
}

/// `Q2 = (y+2z+1)_m (y+2z+2m+2)_k (y+2z+m+1)_k / ((y/2+z+1/2)_k (y/2+z+1)_k)`
/// in closed form: `2^{2k} (y+2z+1+2k)_{m-k} (y+2z+2m+2)_k` for `k ≤ m`, and
/// `2^{2k} (y+2z+2m+2)_{k-m-1} (y+2z+1+2k)_{2m+1-k}` otherwise.
pub fn build_q2(k: u64, m: u64) -> Result<Poly> {
    check_range(k, m)?;
    let scale = Rat::pow2(2 * k as i64);
    let closed = if k <= m {
        &rf(&shifted("y+2*z+1", 2 * k), m - k) * &rf(&shifted("y+2*z+2", 2 * m), k)
    } else {
        &rf(&shifted("y+2*z+2", 2 * m), k - m - 1) * &rf(&shifted("y+2*z+1", 2 * k), 2 * m + 1 - k)
    }
    .scale(&scale);
    if closed.degree_in(0) != Some(m as u32) {
        return Err(Error::Replay(format!("Q2({k}) has degree {:?} in y", closed.degree_in(0))));
    }
    // After the duplication formula the denominator is 2^{-2k} (y+2z+1)_{2k}.
    let doubled = (&rf("y+2*z+1", m + k) * &rf(&shifted("y+2*z+2", 2 * m), k)).scale(&scale);
    if doubled.exact_div(&rf("y+2*z+1", 2 * k))? != closed {
        return Err(Error::Replay(format!("Q2({k}) closed form fails the doubled division")));
    }
    // The definition itself, half-integral parameters included.
    let numerator = &(&rf("y+2*z+1", m) * &rf(&shifted("y+2*z+2", 2 * m), k)) * &rf(&format!("y+2*z+{m}+1"), k);
    let denominator = &rf("1/2*y+z+1/2", k) * &rf("1/2*y+z+1", k);
    if numerator.exact_div(&denominator)? != closed {
        return Err(Error::Replay(format!("Q2({k}) closed form fails exact division")));
    }
    Ok(closed)
}

/// The `y`-free constants `C1`, `C2` (polynomials in `z`) relating `Q1`
/// and `Q2` to rising factorials indexed by `y`, found by matching at
/// `y = 0` and then checked at `y = 0..=y_max`:
///
/// ```text
/// Q1(y) = C1 (z+m+1)_y (z+k+1/2)_y / ((z+k/2+1/2)_y (z+k/2+1)_y)
/// Q2(y) = C2 (2z+m+k+1)_y (2z+2m+k+2)_y / ((2z+2k+1)_y (2z+2m+2)_y)
/// ```
pub fn alternative_forms(k: u64, m: u64, y_max: u64) -> Result<(Poly, Poly)> {
    let q1 = build_q1(k, m)?;
    let q2 = build_q2(k, m)?;
    let c1 = q1.substitute(0, &Rat::zero());
    let c2 = q2.substitute(0, &Rat::zero());
    if c1.is_zero() || c2.is_zero() {
        return Err(Error::Replay(format!("vanishing anchor for k = {k}")));
    }
    let half_k = Rat::new(k as i64, 2);
    let z_form = |coeff: i64, constant: Rat| LinForm::term(Rat::from(coeff), "z").add_const(&constant);
    let int = |n: u64| Rat::from(n as i64);
    let half = Rat::new(1, 2);
    let table = y_z_table();
    for y in 0..=y_max {
        let r = |form: LinForm| rf_sym(&form, y, &table).expect("z only");
        let q1y = q1.substitute(0, &int(y));
        let lhs = &(&q1y * &r(z_form(1, &half_k + &half))) * &r(z_form(1, &half_k + &Rat::one()));
        let rhs = &(&c1 * &r(z_form(1, int(m + 1)))) * &r(z_form(1, &int(k) + &half));
        if lhs != rhs {
            return Err(Error::Replay(format!("Q1 alternative form fails at k = {k}, y = {y}")));
        }
        let q2y = q2.substitute(0, &int(y));
        let lhs = &(&q2y * &r(z_form(2, int(2 * k + 1)))) * &r(z_form(2, int(2 * m + 2)));
        let rhs = &(&c2 * &r(z_form(2, int(m + k + 1)))) * &r(z_form(2, int(2 * m + k + 2)));
        if lhs != rhs {
            return Err(Error::Replay(format!("Q2 alternative form fails at k = {k}, y = {y}")));
        }
    }
    Ok((c1, c2))
}

/// The term-`k` contribution to the master polynomial:
/// `(-1)^k C(2m+1,k) (z+m+1)_k (2z+2m+2+k)_{2m+1-k} Q1 Q2`.
pub fn master_term(k: u64, m: u64, binom: &Rat) -> Result<Poly> {
    Ok(master_term_from(k, m, binom, &build_q1(k, m)?, &build_q2(k, m)?))
}

fn master_term_from(k: u64, m: u64, binom: &Rat, q1: &Poly, q2: &Poly) -> Poly {
    let sign = if k.is_multiple_of(2) { binom.clone() } else { -binom.clone() };
    let z_part = &rf(&format!("z+{}", m + 1), k) * &rf(&shifted("2*z+2", 2 * m + k), 2 * m + 1 - k);
    (&(&z_part * q1) * q2).scale(&sign)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QDegrees {
    pub k: u64,
    pub q1: u32,
    pub q2: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub degrees: Vec<QDegrees>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasterRecord {
    pub y_degree_bound: u64,
    pub vanishing_points: Vec<u64>,
    pub zero: bool,
}

/// Composite certificate: the base vanishing fields for the `y` series
/// under `m`, the per-`y` certificates, the `Q` degrees and the master
/// polynomial claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AndrewsCertificate {
    pub version: u32,
    pub series: SeriesText,
    pub env: BTreeMap<String, String>,
    pub n: u64,
    pub conclusion: String,
    pub lemma3: Vec<Certificate>,
    pub lemma4: DegreeRecord,
    pub master: MasterRecord,
}

impl AndrewsCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Result of the full replay for one `m`.
#[derive(Clone, Debug)]
pub struct AndrewsProof {
    pub master: Poly,
    pub integer_y: Vec<IntegerYCase>,
    pub certificate: AndrewsCertificate,
}

/// Builds the master polynomial, checks its degree bound and its zeros at
/// `y = 0..=2m+1`, concludes by interpolation that it is zero, and confirms
/// that structurally.
pub fn master_poly_and_prove(m: u64) -> Result<AndrewsProof> {
    let instance = AndrewsInstance::new(m)?;
    let bound = 2 * m;
    let mut degrees = Vec::new();
    let mut master = Poly::zero();
    for (k, binom) in binomial_row(2 * m + 1).into_iter().enumerate() {
        let k = k as u64;
        let q1 = build_q1(k, m)?;
        let q2 = build_q2(k, m)?;
        degrees.push(QDegrees {
            k,
            q1: q1.degree_in(0).unwrap_or(0),
            q2: q2.degree_in(0).unwrap_or(0),
        });
        let term = master_term_from(k, m, &Rat::from(binom), &q1, &q2);
        if term.degree_in(0).unwrap_or(0) as u64 > bound {
            return Err(Error::Replay(format!("term {k} exceeds degree {bound} in y")));
        }
        master = &master + &term;
    }
    if master.degree_in(0).unwrap_or(0) as u64 > bound {
        return Err(Error::Replay("master polynomial exceeds the degree bound".into()));
    }

    let integer_y = integer_y_vanish(m)?;
    let mut values = Vec::new();
    for case in &integer_y {
        let at = master.substitute(0, &Rat::from(case.y as i64));
        if !at.is_zero() || !case.alternating_sum.is_zero() {
            return Err(Error::Replay(format!("master polynomial is nonzero at y = {}", case.y)));
        }
        values.push((Rat::from(case.y as i64), at));
    }
    // 2m+2 zeros of a polynomial of degree at most 2m.
    let reconstructed = interp_in(0, &values, bound as usize)?;
    if !reconstructed.is_zero() || !master.is_zero() {
        return Err(Error::Replay("master polynomial is not identically zero".into()));
    }

    let certificate = AndrewsCertificate {
        version: CERTIFICATE_VERSION,
        series: SeriesText::of(&instance.in_y),
        env: crate::certificate::env_text(&instance.env()),
        n: 2 * m + 1,
        conclusion: VANISHES.to_string(),
        lemma3: integer_y.iter().map(|c| c.certificate.clone()).collect(),
        lemma4: DegreeRecord { degrees },
        master: MasterRecord {
            y_degree_bound: bound,
            vanishing_points: (0..=2 * m + 1).collect(),
            zero: true,
        },
    };
    Ok(AndrewsProof {
        master,
        integer_y,
        certificate,
    })
}

/// Replays a composite certificate.
pub fn check_andrews_certificate(cert: &AndrewsCertificate) -> Verdict {
    let reject = |reason, detail: String| Verdict::Reject { reason, detail };
    if cert.version != CERTIFICATE_VERSION || cert.conclusion != VANISHES {
        return reject(RejectReason::Malformed, "version or conclusion".into());
    }
    if cert.series != SeriesText::of(&series_in_y()) {
        return reject(RejectReason::Malformed, "series is not the y form".into());
    }
    let m = match cert.env.get("m").and_then(|v| Rat::parse_canonical(v).ok()) {
        Some(v) if cert.env.len() == 1 => match v.as_nonnegative_int() {
            Some(m) => m,
            None => return reject(RejectReason::Malformed, "m is not a nonnegative integer".into()),
        },
        _ => return reject(RejectReason::Malformed, "environment must bind exactly m".into()),
    };
    if cert.n != 2 * m + 1 {
        return reject(RejectReason::BadDegree, format!("n = {} for m = {m}", cert.n));
    }
    if cert.lemma3.len() as u64 != 2 * m + 2 {
        return reject(RejectReason::Malformed, "wrong number of integer-y certificates".into());
    }
    for (y, sub) in cert.lemma3.iter().enumerate() {
        let want: BTreeMap<String, String> =
            [("m".to_string(), m.to_string()), ("y".to_string(), y.to_string())].into();
        if sub.env != want || sub.series != cert.series {
            return reject(RejectReason::Malformed, format!("certificate {y} is for another instance"));
        }
        if sub.total_degree != 2 * m {
            return reject(RejectReason::BadDegree, format!("certificate {y} degree"));
        }
        if let v @ Verdict::Reject { .. } = check_certificate(sub) {
            return v;
        }
    }
    let expected_k: Vec<u64> = (0..=2 * m + 1).collect();
    let got_k: Vec<u64> = cert.lemma4.degrees.iter().map(|d| d.k).collect();
    if got_k != expected_k {
        return reject(RejectReason::Malformed, "degree table does not cover k = 0..=2m+1".into());
    }
    for entry in &cert.lemma4.degrees {
        let q1 = build_q1(entry.k, m).map(|p| p.degree_in(0).unwrap_or(0));
        let q2 = build_q2(entry.k, m).map(|p| p.degree_in(0).unwrap_or(0));
        if q1 != Ok(entry.q1) || q2 != Ok(entry.q2) || entry.q1 as u64 != m || entry.q2 as u64 != m {
            return reject(RejectReason::BadDegree, format!("Q degrees at k = {}", entry.k));
        }
    }
    let master = &cert.master;
    if master.y_degree_bound != 2 * m {
        return reject(RejectReason::BadDegree, "master degree bound".into());
    }
    if master.vanishing_points != expected_k || !master.zero {
        return reject(RejectReason::BadSum, "master vanishing claim".into());
    }
    match master_poly_and_prove(m) {
        Ok(proof) if proof.master.is_zero() => Verdict::Accept,
        Ok(_) => reject(RejectReason::BadSum, "master polynomial is nonzero".into()),
        Err(e) => reject(RejectReason::BadSum, e.to_string()),
    }
}

/// The two `Q` constructions checked across the whole range of `k`.
pub fn q_degree_table(m: u64) -> Result<Vec<QDegrees>> {
    (0..=2 * m + 1)
        .map(|k| {
            Ok(QDegrees {
                k,
                q1: build_q1(k, m)?.degree_in(0).unwrap_or(0),
                q2: build_q2(k, m)?.degree_in(0).unwrap_or(0),
            })
        })
        .collect()
}

/// `(β)_k` as a polynomial; used by tests that build the definitional
/// ratios directly.
pub fn rising(form: &str, k: u64) -> Poly {
    rf_poly(&Poly::from_linform(&lf(form), &y_z_table()).expect("y, z"), k)
}
