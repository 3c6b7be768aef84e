//! Vanishing proofs for balanced terminating series.
//!
//! With the truncating parameter `-n` removed, `(-n)_k / k!` is
//! `(-1)^k C(n,k)`. If the remaining upper parameters can be matched to the
//! lower ones with nonnegative integer gaps `d`, each ratio
//! `(α)_k / (β)_k` equals `(β+k)_d / (β)_d`, so the summand is a polynomial
//! in `k` of degree `Σ d` times a `k`-free factor. For a balanced series
//! `Σ d = n - 1`, and the alternating binomial sum of a polynomial of degree
//! below `n` is zero.

use crate::certificate::{
    env_text, spot_check_points, Certificate, SeriesText, SpotCheck, CERTIFICATE_VERSION, VANISHES,
};
use crate::difference::alt_binom_sum;
use crate::error::{Error, Result};
use crate::hyperseries::{check_poles, HypSeries};
use crate::linform::{Env, LinForm, SymbolTable};
use crate::matching::{find_pairing, PairEntry, Pairing};
use crate::pochhammer::{poch_ratio_poly, KPolyRat, KAPPA};

/// The summand of a paired series as a polynomial in the summation
/// variable over the spectator symbols.
#[derive(Clone, Debug)]
pub struct PairedSummand {
    pub table: SymbolTable,
    pub ratio: KPolyRat,
    pub total_degree: u64,
}

/// Symbols occurring in the parameters of `series`, in name order.
pub fn spectators(series: &HypSeries) -> Vec<String> {
    let mut names: Vec<String> = series
        .upper
        .iter()
        .chain(&series.lower)
        .flat_map(|f| f.symbols().map(str::to_string))
        .collect();
    names.sort();
    names.dedup();
    names
}

/// The substituted series stripped of declarations, as a checker rebuilds
/// it from certificate text alone.
pub fn plain(series: &HypSeries) -> HypSeries {
    HypSeries::from_params(series.upper.clone(), series.lower.clone(), series.arg.clone())
}

/// Multiplies the closed forms of every paired ratio. `uppers` and
/// `lowers` are the already substituted parameters, indexed as in `pairs`.
pub fn paired_summand(
    uppers: &[LinForm],
    lowers: &[LinForm],
    pairs: &[PairEntry],
    spectator_names: &[String],
) -> Result<PairedSummand> {
    let table = SymbolTable::new(std::iter::once(KAPPA.to_string()).chain(spectator_names.iter().cloned()))?;
    let mut ratio = KPolyRat::one(0);
    let mut total_degree = 0;
    for pair in pairs {
        let (d, r) = poch_ratio_poly(&uppers[pair.upper], &lowers[pair.lower], &table, 0)?;
        if d != pair.d {
            return Err(Error::NotIntegerDifference(format!(
                "pair ({}, {}) has gap {d}, not {}",
                pair.upper, pair.lower, pair.d
            )));
        }
        total_degree += d;
        ratio = ratio.mul(&r);
    }
    Ok(PairedSummand {
        table,
        ratio,
        total_degree,
    })
}

/// Pole check restricted to lower parameters that are already constants.
fn constant_poles(lowers: &[LinForm], n: u64) -> Result<()> {
    for (index, b) in lowers.iter().enumerate() {
        if let Some(v) = b.as_constant() {
            check_poles(std::slice::from_ref(v), n).map_err(|_| Error::Pole {
                index,
                shift: v.as_nonpositive_int().unwrap_or(0),
            })?;
        }
    }
    Ok(())
}

/// Proves that `series` vanishes under the partial environment `env`;
/// unbound symbols are treated as polynomial indeterminates.
pub fn prove_vanishing(series: &HypSeries, env: &Env) -> Result<Certificate> {
    series.check_env(env)?;
    let sub = series.substitute(env);
    if !sub.is_balanced() {
        return Err(Error::NotBalanced);
    }
    let candidates = sub.terminating_candidates(&Env::new());
    let mut last = Error::NoTermination;
    for (index, n) in candidates {
        match prove_with_terminator(series, &sub, env, index, n) {
            Ok(cert) => return Ok(cert),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn prove_with_terminator(
    series: &HypSeries,
    sub: &HypSeries,
    env: &Env,
    terminator: usize,
    n: u64,
) -> Result<Certificate> {
    let rest: Vec<usize> = (0..sub.upper.len()).filter(|&i| i != terminator).collect();
    let rest_forms: Vec<LinForm> = rest.iter().map(|&i| sub.upper[i].clone()).collect();
    let local = find_pairing(&rest_forms, &sub.lower)?;
    let pairing = Pairing {
        pairs: local
            .pairs
            .iter()
            .map(|p| PairEntry {
                upper: rest[p.upper],
                ..*p
            })
            .collect(),
    };
    constant_poles(&sub.lower, n)?;

    let names = spectators(sub);
    let summand = paired_summand(&sub.upper, &sub.lower, &pairing.pairs, &names)?;
    let degree = summand.total_degree;
    if degree >= n {
        return Err(Error::DegreeTooHigh { degree, n });
    }
    if degree != n - 1 {
        return Err(Error::Replay(format!(
            "balanced series with n = {n} paired to degree {degree}"
        )));
    }
    if u64::from(summand.ratio.kappa_degree()) != degree {
        return Err(Error::Replay("summand degree disagrees with the pairing".into()));
    }
    if !alt_binom_sum(summand.ratio.numerator(), n, 0).is_zero() {
        return Err(Error::Replay("alternating sum of the summand is not zero".into()));
    }

    let open = plain(sub);
    let mut spot_checks = Vec::new();
    for point in spot_check_points(&open, env)? {
        let value = open.evaluate_terminating(&spectator_part(&point, env))?;
        if !value.is_zero() {
            return Err(Error::Replay(format!("spot check evaluated to {value}")));
        }
        spot_checks.push(SpotCheck::new(&point, &value));
    }

    Ok(Certificate {
        version: CERTIFICATE_VERSION,
        series: SeriesText::of(series),
        env: env_text(env),
        n,
        pairing: pairing.pairs,
        total_degree: degree,
        spot_checks,
        conclusion: VANISHES.to_string(),
    })
}

/// The bindings of `point` that are not already fixed by `base`.
pub(crate) fn spectator_part(point: &Env, base: &Env) -> Env {
    point
        .iter()
        .filter(|(k, _)| !base.contains_key(*k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect()
}
