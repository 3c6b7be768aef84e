//! Alternating binomial sums, i.e. the `n`th forward difference up to sign.

use num_bigint::BigInt;

use crate::poly::Poly;
use crate::rat::Rat;

/// Row `n` of Pascal's triangle, built by the additive recurrence.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::from(1));
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::from(1));
        row = next;
    }
    row
}

/// `Σ_{k=0}^{n} (-1)^k C(n,k) p(k)` where `k` is substituted for variable
/// `kappa`. Other variables of `p` survive into the result. The sum is the
/// zero polynomial whenever `p` has degree below `n` in `kappa`.
pub fn alt_binom_sum(p: &Poly, n: u64, kappa: usize) -> Poly {
    binomial_row(n)
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let sign = if k % 2 == 0 { c } else { -c };
            p.substitute(kappa, &Rat::from(k as i64)).scale(&Rat::from(sign))
        })
        .sum()
}
