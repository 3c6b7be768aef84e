//! Reconstruction of a polynomial of bounded degree from its values.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::Rat;

/// Univariate interpolation in variable 0.
///
/// Uses the first `degree_bound + 1` points and fails with `Inconsistent`
/// if any later point disagrees with the result.
pub fn poly_interp_univar(points: &[(Rat, Rat)], degree_bound: usize) -> Result<Poly> {
    let lifted: Vec<(Rat, Poly)> = points
        .iter()
        .map(|(x, v)| (x.clone(), Poly::constant(v.clone())))
        .collect();
    interp_in(0, &lifted, degree_bound)
}

/// Interpolation in variable `var` with polynomial values in the remaining
/// variables. Values must not involve `var`.
pub fn interp_in(var: usize, points: &[(Rat, Poly)], degree_bound: usize) -> Result<Poly> {
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::DuplicateAbscissa(x.clone()));
        }
    }
    if points.len() < degree_bound + 1 {
        return Err(Error::TooFewPoints {
            got: points.len(),
            bound: degree_bound,
        });
    }
    if points.iter().any(|(_, v)| v.involves(var)) {
        return Err(Error::Precondition(
            "interpolation values must not involve the interpolation variable".into(),
        ));
    }
    let (used, rest) = points.split_at(degree_bound + 1);
    let t = Poly::var(var);

    // Lagrange basis.
    let mut result = Poly::zero();
    for (i, (xi, vi)) in used.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = Rat::one();
        for (j, (xj, _)) in used.iter().enumerate() {
            if i != j {
                basis = &basis * &(&t - &Poly::constant(xj.clone()));
                denom *= &(xi - xj);
            }
        }
        result = &result + &(&basis * vi).scale(&denom.recip());
    }

    for (x, v) in rest {
        if &result.substitute(var, x) != v {
            return Err(Error::Inconsistent(degree_bound));
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<(Rat, Rat)> {
        v.iter().map(|&(x, y)| (Rat::from(x), Rat::from(y))).collect()
    }

    #[test]
    fn examples() {
        let k = Poly::var(0);
        let p = poly_interp_univar(&pts(&[(0, 1), (1, 2), (2, 5)]), 2).unwrap();
        assert_eq!(p, &k.pow(2) + &Poly::one());
        assert!(poly_interp_univar(&pts(&[(0, 0), (1, 0), (2, 0)]), 2)
            .unwrap()
            .is_zero());
        assert_eq!(
            poly_interp_univar(&pts(&[(0, 0), (1, 0), (2, 1)]), 1),
            Err(Error::Inconsistent(1))
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            poly_interp_univar(&pts(&[(0, 0), (0, 1)]), 1),
            Err(Error::DuplicateAbscissa(_))
        ));
        assert!(matches!(
            poly_interp_univar(&pts(&[(0, 0)]), 1),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn polynomial_values() {
        // f(y, z) = y*z + 1 from values at y = 0, 1
        let z = Poly::var(1);
        let points = vec![
            (Rat::zero(), Poly::one()),
            (Rat::one(), &z + &Poly::one()),
            (Rat::from(2), &z.scale(&Rat::from(2)) + &Poly::one()),
        ];
        let f = interp_in(0, &points, 1).unwrap();
        assert_eq!(f, &(&Poly::var(0) * &z) + &Poly::one());
    }
}
