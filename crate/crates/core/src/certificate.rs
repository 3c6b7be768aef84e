//! Vanishing certificates: the JSON record and its independent replay.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::difference::alt_binom_sum;
use crate::error::{Error, Result};
use crate::hyperseries::HypSeries;
use crate::linform::{Env, LinForm};
use crate::matching::{integer_gap, PairEntry};
use crate::prover::{paired_summand, plain, spectators};
use crate::rat::Rat;
use crate::sampling::RatSampler;
use crate::spec::parse_linform;

pub const CERTIFICATE_VERSION: u32 = 1;
pub const VANISHES: &str = "vanishes";

/// Seed of the spot-check point sequence. Emitter and checker both derive
/// the points from it.
pub const SPOT_SEED: u64 = 0x5EED_0F5A_A15C;
const SPOT_COUNT: usize = 3;
const SPOT_ATTEMPTS: usize = 1000;
const SPOT_NUM_BOUND: u64 = 20;
const SPOT_DEN_BOUND: u64 = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesText {
    pub upper: Vec<String>,
    pub lower: Vec<String>,
    pub arg: String,
}

impl SeriesText {
    pub fn of(series: &HypSeries) -> Self {
        SeriesText {
            upper: series.upper.iter().map(ToString::to_string).collect(),
            lower: series.lower.iter().map(ToString::to_string).collect(),
            arg: series.arg.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub env: BTreeMap<String, String>,
    pub value: String,
}

impl SpotCheck {
    pub fn new(env: &Env, value: &Rat) -> Self {
        SpotCheck {
            env: env_text(env),
            value: value.to_string(),
        }
    }
}

/// Serialized record of a vanishing proof. All rationals are canonical
/// `p/q` strings so that replay is bit-exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub series: SeriesText,
    pub env: BTreeMap<String, String>,
    pub n: u64,
    pub pairing: Vec<PairEntry>,
    pub total_degree: u64,
    pub spot_checks: Vec<SpotCheck>,
    pub conclusion: String,
}

pub fn env_text(env: &Env) -> BTreeMap<String, String> {
    env.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Deterministic spot-check environments for a substituted, declaration
/// free series. Spectators draw from [`SPOT_SEED`] in name order; draws
/// that make a spectator-dependent parameter an integer, or hit a pole, are
/// rejected. A series without spectators gets the
/// single point `env`.
pub fn spot_check_points(open: &HypSeries, env: &Env) -> Result<Vec<Env>> {
    let names = spectators(open);
    if names.is_empty() {
        return Ok(vec![env.clone()]);
    }
    let mut sampler = RatSampler::new(SPOT_SEED);
    let mut points = Vec::with_capacity(SPOT_COUNT);
    let mut attempts = 0;
    while points.len() < SPOT_COUNT {
        attempts += 1;
        if attempts > SPOT_ATTEMPTS {
            return Err(Error::Replay("no pole-free spot-check point found".into()));
        }
        let draw: Env = names
            .iter()
            .map(|n| (n.clone(), sampler.rat(SPOT_NUM_BOUND, SPOT_DEN_BOUND)))
            .collect();
        if !open.is_generic_at(&draw)? {
            continue;
        }
        match open.evaluate_terminating(&draw) {
            Ok(_) => {
                let mut full = env.clone();
                full.extend(draw);
                points.push(full);
            }
            Err(Error::Pole { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(points)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RejectReason {
    BadPairing,
    BadDegree,
    BadSum,
    Malformed,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RejectReason::BadPairing => "BadPairing",
            RejectReason::BadDegree => "BadDegree",
            RejectReason::BadSum => "BadSum",
            RejectReason::Malformed => "Malformed",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject { reason: RejectReason, detail: String },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    pub fn reason(&self) -> Option<RejectReason> {
        match self {
            Verdict::Accept => None,
            Verdict::Reject { reason, .. } => Some(*reason),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("accept"),
            Verdict::Reject { reason, .. } => write!(f, "reject {reason}"),
        }
    }
}

type Replay<T> = std::result::Result<T, (RejectReason, String)>;

fn reject<T>(reason: RejectReason, detail: impl Into<String>) -> Replay<T> {
    Err((reason, detail.into()))
}

fn parse_env(text: &BTreeMap<String, String>) -> Replay<Env> {
    text.iter()
        .map(|(k, v)| {
            Rat::parse_canonical(v)
                .map(|r| (k.clone(), r))
                .map_err(|e| (RejectReason::Malformed, e.to_string()))
        })
        .collect()
}

fn parse_forms(text: &[String]) -> Replay<Vec<LinForm>> {
    text.iter()
        .map(|t| {
            let f = parse_linform(t, None).map_err(|e| (RejectReason::Malformed, e.to_string()))?;
            if &f.to_string() != t {
                return reject(RejectReason::Malformed, format!("non-canonical parameter {t:?}"));
            }
            Ok(f)
        })
        .collect()
}

/// Parses and replays a certificate document.
pub fn check_certificate_json(text: &str) -> Verdict {
    match Certificate::from_json(text) {
        Ok(cert) => check_certificate(&cert),
        Err(e) => Verdict::Reject {
            reason: RejectReason::Malformed,
            detail: e.to_string(),
        },
    }
}

/// Recomputes every claim of `cert` from its stored data alone.
pub fn check_certificate(cert: &Certificate) -> Verdict {
    match replay(cert) {
        Ok(()) => Verdict::Accept,
        Err((reason, detail)) => Verdict::Reject { reason, detail },
    }
}

fn replay(cert: &Certificate) -> Replay<()> {
    use RejectReason::*;

    if cert.version != CERTIFICATE_VERSION {
        return reject(Malformed, format!("unsupported version {}", cert.version));
    }
    if cert.conclusion != VANISHES {
        return reject(Malformed, format!("unknown conclusion {:?}", cert.conclusion));
    }
    let upper = parse_forms(&cert.series.upper)?;
    let lower = parse_forms(&cert.series.lower)?;
    let arg = Rat::parse_canonical(&cert.series.arg).map_err(|e| (Malformed, e.to_string()))?;
    let env = parse_env(&cert.env)?;
    let series = HypSeries::from_params(upper, lower, arg);
    if let Some(name) = env.keys().find(|k| !series.symbols.contains(k)) {
        return reject(Malformed, format!("binding for unused symbol {name}"));
    }
    let sub = series.substitute(&env);

    // Pairing shape: a perfect matching of all but one upper parameter.
    let p = sub.upper.len();
    let q = sub.lower.len();
    if p != q + 1 || cert.pairing.len() != q {
        return reject(BadPairing, format!("{} pairs for a {p}F{q}", cert.pairing.len()));
    }
    let mut upper_used = vec![false; p];
    let mut lower_used = vec![false; q];
    for pair in &cert.pairing {
        if pair.upper >= p || pair.lower >= q {
            return reject(BadPairing, format!("index out of range in {pair:?}"));
        }
        if std::mem::replace(&mut upper_used[pair.upper], true)
            || std::mem::replace(&mut lower_used[pair.lower], true)
        {
            return reject(BadPairing, format!("parameter paired twice in {pair:?}"));
        }
    }
    let terminator = upper_used.iter().position(|u| !u).expect("one upper left over");

    for pair in &cert.pairing {
        match integer_gap(&sub.upper[pair.upper], &sub.lower[pair.lower]) {
            Some(d) if d == pair.d => {}
            Some(d) => return reject(BadPairing, format!("gap is {d}, claimed {}", pair.d)),
            None => return reject(BadPairing, format!("no integer gap in {pair:?}")),
        }
    }

    let n = cert.n;
    if sub.upper[terminator].as_constant().and_then(Rat::as_nonpositive_int) != Some(n) {
        return reject(
            BadDegree,
            format!("parameter {} is not -{n}", sub.upper[terminator]),
        );
    }
    let degree: u64 = cert.pairing.iter().map(|e| e.d).sum();
    if cert.total_degree != degree {
        return reject(
            BadDegree,
            format!("total degree {} but gaps sum to {degree}", cert.total_degree),
        );
    }
    if degree >= n {
        return reject(BadDegree, format!("degree {degree} is not below {n}"));
    }
    if !sub.is_balanced() {
        return reject(BadSum, "series is not balanced at unit argument");
    }
    if degree != n - 1 {
        return reject(BadDegree, format!("balanced series needs degree {}", n - 1));
    }

    let open = plain(&sub);
    let names = spectators(&open);
    let summand = paired_summand(&sub.upper, &sub.lower, &cert.pairing, &names)
        .map_err(|e| (BadSum, e.to_string()))?;
    for (index, b) in sub.lower.iter().enumerate() {
        if let Some(j) = b.as_constant().and_then(Rat::as_nonpositive_int) {
            if j < n {
                return reject(BadSum, format!("pole at lower parameter {index}"));
            }
        }
    }
    if !alt_binom_sum(summand.ratio.numerator(), n, 0).is_zero() {
        return reject(BadSum, "alternating binomial sum is not zero");
    }

    let expected = spot_check_points(&open, &env).map_err(|e| (BadSum, e.to_string()))?;
    if expected.len() != cert.spot_checks.len() {
        return reject(BadSum, "wrong number of spot checks");
    }
    for (want, got) in expected.iter().zip(&cert.spot_checks) {
        if env_text(want) != got.env {
            return reject(BadSum, "spot-check point differs from the derived sequence");
        }
        let local: Env = want
            .iter()
            .filter(|(k, _)| !env.contains_key(*k))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let value = open
            .evaluate_terminating(&local)
            .map_err(|e| (BadSum, e.to_string()))?;
        if value.to_string() != got.value || !value.is_zero() {
            return reject(BadSum, format!("spot check evaluates to {value}, recorded {}", got.value));
        }
    }
    Ok(())
}
