//! Exact evaluation of terminating hypergeometric series and mechanical
//! vanishing proofs for balanced ones.
//!
//! The proofs rest on two facts: the alternating binomial sum
//! `Σ (-1)^k C(n,k) p(k)` is zero whenever `p` has degree below `n`, and
//! `(α)_k / (β)_k` is a polynomial in `k` of degree `α - β` when that
//! difference is a nonnegative integer. A degree-bounded polynomial that
//! vanishes at enough points is then identically zero.

pub mod andrews;
pub mod certificate;
pub mod cli;
pub mod difference;
pub mod error;
pub mod hyperseries;
pub mod interp;
pub mod linform;
pub mod matching;
pub mod pochhammer;
pub mod poly;
pub mod prover;
pub mod rat;
pub mod saalschutz;
pub mod sampling;
pub mod spec;
pub mod suites;

pub use certificate::{check_certificate, check_certificate_json, Certificate, RejectReason, Verdict};
pub use difference::alt_binom_sum;
pub use error::{Error, Result};
pub use hyperseries::HypSeries;
pub use interp::{interp_in, poly_interp_univar};
pub use linform::{Env, LinForm, SymbolTable};
pub use matching::{find_pairing, Pairing};
pub use pochhammer::{poch_ratio_poly, rf_num, rf_poly, rf_sym, KPolyRat, KAPPA};
pub use poly::Poly;
pub use prover::prove_vanishing;
pub use rat::Rat;
pub use spec::{parse_series_spec, SeriesSpec};
