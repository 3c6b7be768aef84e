mod common;

use common::{r, random_poly, random_series, small};
use hypercert::andrews;
use hypercert::linform::{Env, LinForm, SymbolTable};
use hypercert::matching::integer_gap;
use hypercert::sampling::RatSampler;
use hypercert::spec::{parse_series_spec, print_series};
use hypercert::{
    alt_binom_sum, find_pairing, interp_in, poch_ratio_poly, prove_vanishing, rf_num, rf_sym, Error, Poly, Rat,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-200i64..=200, 1i64..=50).prop_map(|(n, d)| Rat::new(n, d))
}

fn yz() -> SymbolTable {
    SymbolTable::new(["y", "z"]).unwrap()
}

fn form() -> impl Strategy<Value = LinForm> {
    (rat(), rat(), rat()).prop_map(|(c, a, b)| {
        &(&LinForm::constant(c) + &LinForm::term(a, "y")) + &LinForm::term(b, "z")
    })
}

fn factorial(n: u64) -> Rat {
    (1..=n as i64).map(Rat::from).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shift_formula_numeric(u in rat(), i in 0u64..=20, j in 0u64..=20) {
        let shifted = &u + &Rat::from(i as i64);
        prop_assert_eq!(rf_num(&u, i + j), rf_num(&u, i) * rf_num(&shifted, j));
    }

    #[test]
    fn shift_formula_symbolic(a in form(), i in 0u64..=6, j in 0u64..=6) {
        let t = yz();
        let shifted = a.add_const(&Rat::from(i as i64));
        prop_assert_eq!(
            rf_sym(&a, i + j, &t).unwrap(),
            &rf_sym(&a, i, &t).unwrap() * &rf_sym(&shifted, j, &t).unwrap()
        );
    }

    #[test]
    fn duplication_formulas(a in form(), n in 0u64..=6) {
        let t = yz();
        let half = a.scale(&r(1, 2));
        let half_up = half.add_const(&r(1, 2));
        let even = (&rf_sym(&half, n, &t).unwrap() * &rf_sym(&half_up, n, &t).unwrap())
            .scale(&Rat::pow2(2 * n as i64));
        prop_assert_eq!(rf_sym(&a, 2 * n, &t).unwrap(), even);
        let odd = (&rf_sym(&half, n + 1, &t).unwrap() * &rf_sym(&half_up, n, &t).unwrap())
            .scale(&Rat::pow2(2 * n as i64 + 1));
        prop_assert_eq!(rf_sym(&a, 2 * n + 1, &t).unwrap(), odd);
    }

    #[test]
    fn alternating_sum_annihilates_low_degree(seed in any::<u64>(), n in 1u64..=12) {
        let mut s = RatSampler::new(seed);
        let deg = s.below(n);
        let p: Poly = (0..=deg).map(|e| Poly::monomial(vec![e as u32], small(&mut s))).sum();
        prop_assert!(alt_binom_sum(&p, n, 0).is_zero());
        // Monic of degree exactly n: (-1)^n n!.
        let monic = &p + &Poly::var(0).pow(n as u32);
        let sign = if n % 2 == 0 { Rat::one() } else { Rat::from(-1) };
        prop_assert_eq!(alt_binom_sum(&monic, n, 0), Poly::constant(sign * factorial(n)));
    }

    #[test]
    fn ratio_closed_form(beta in form(), d in 0u64..=6, y in rat(), z in rat()) {
        let table = SymbolTable::new(["κ", "y", "z"]).unwrap();
        let alpha = beta.add_const(&Rat::from(d as i64));
        let (got_d, ratio) = poch_ratio_poly(&alpha, &beta, &table, 0).unwrap();
        prop_assert_eq!(got_d, d);
        let env: Env = [("y".to_string(), y.clone()), ("z".to_string(), z.clone())].into();
        let b = beta.eval(&env).unwrap();
        let a = alpha.eval(&env).unwrap();
        for k in 0..=d + 3 {
            let bk = rf_num(&b, k);
            prop_assume!(!bk.is_zero() && !rf_num(&b, d).is_zero());
            let (num, _) = ratio.at(k);
            let point = [Rat::zero(), y.clone(), z.clone()];
            prop_assert_eq!(num.eval(&point), rf_num(&b, d) * rf_num(&a, k) / bk);
        }
    }

    #[test]
    fn exact_division_round_trip(seed in any::<u64>()) {
        let mut s = RatSampler::new(seed);
        let p = random_poly(&mut s, 3, 5, 3);
        let q = random_poly(&mut s, 3, 4, 2);
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
    }

    #[test]
    fn interpolation_recovers_poly(seed in any::<u64>(), d in 0usize..=8) {
        let mut s = RatSampler::new(seed);
        let p = random_poly(&mut s, 2, 6, d as u64);
        let bound = p.degree_in(0).unwrap_or(0) as usize;
        let points: Vec<(Rat, Poly)> = (0..=bound as i64)
            .map(|i| (Rat::new(3 * i - 4, 2), p.substitute(0, &Rat::new(3 * i - 4, 2))))
            .collect();
        prop_assert_eq!(interp_in(0, &points, bound).unwrap(), p);
    }

    #[test]
    fn substitution_coherence(m in 0u64..=6, y in rat(), z in rat()) {
        let x = &y + &(&z * &Rat::from(2));
        let env: Env = [("m".to_string(), Rat::from(m as i64)), ("x".to_string(), x.clone()), ("z".to_string(), z.clone())].into();
        prop_assume!(andrews::series_in_x().is_generic_at(&env).unwrap());
        match (andrews::sum_numeric(m, &x, &z), andrews::sum_numeric_in_y(m, &y, &z)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(&a, &b);
                prop_assert!(a.is_zero());
            }
            (Err(Error::Pole { .. }), Err(Error::Pole { .. })) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn truncation_adds_nothing(seed in any::<u64>(), n in 0u64..=8) {
        let mut s = RatSampler::new(seed);
        let uppers: Vec<Rat> = std::iter::once(Rat::from(-(n as i64)))
            .chain((0..2).map(|_| small(&mut s)))
            .collect();
        let lowers: Vec<Rat> = (0..2).map(|_| small(&mut s)).collect();
        prop_assume!(lowers.iter().all(|b| !rf_num(b, n + 6).is_zero()));
        for k in n + 1..=n + 5 {
            let num: Rat = uppers.iter().map(|a| rf_num(a, k)).product();
            prop_assert!(num.is_zero());
        }
    }

    #[test]
    fn planted_matching_is_found(seed in any::<u64>(), size in 1usize..=7) {
        let mut s = RatSampler::new(seed);
        let lowers: Vec<LinForm> = (0..size)
            .map(|_| &LinForm::term(small(&mut s), "y") + &LinForm::constant(Rat::from(s.below(4) as i64)))
            .collect();
        // Plant a permutation, then add decoys sharing slopes.
        let mut perm: Vec<usize> = (0..size).collect();
        for i in (1..size).rev() {
            perm.swap(i, s.below(i as u64 + 1) as usize);
        }
        let uppers: Vec<LinForm> = perm
            .iter()
            .map(|&j| lowers[j].add_const(&Rat::from(s.below(3) as i64)))
            .collect();
        let found = find_pairing(&uppers, &lowers).unwrap();
        prop_assert_eq!(found.pairs.len(), size);
        for p in &found.pairs {
            prop_assert_eq!(integer_gap(&uppers[p.upper], &lowers[p.lower]), Some(p.d));
        }
    }

    #[test]
    fn spec_round_trip(seed in any::<u64>()) {
        let mut s = RatSampler::new(seed);
        let series = random_series(&mut s);
        let text = print_series(&series);
        let parsed = parse_series_spec(&text).unwrap().series;
        prop_assert_eq!(&parsed, &series);
        prop_assert_eq!(print_series(&parsed), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn certified_series_vanish_at_random_points(m in 1u64..=5, i_frac in 0u64..100, side in any::<bool>(), seed in any::<u64>()) {
        let i = i_frac % m;
        let side = if side { hypercert::saalschutz::Side::A } else { hypercert::saalschutz::Side::B };
        let (series, env) = hypercert::saalschutz::specialized(m, i, side);
        let cert = prove_vanishing(&series, &env).unwrap();
        prop_assert_eq!(cert.total_degree, cert.n - 1);
        let mut s = RatSampler::new(seed);
        let mut checked = 0;
        while checked < 20 {
            let mut full = env.clone();
            full.insert("a".into(), s.rat(200, 50));
            full.insert("b".into(), s.rat(200, 50));
            if !series.is_generic_at(&full).unwrap() {
                continue;
            }
            match series.evaluate_terminating(&full) {
                Ok(v) => {
                    prop_assert!(v.is_zero());
                    checked += 1;
                }
                Err(Error::Pole { .. }) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}

#[test]
fn binomial_rows_sum_to_powers_of_two() {
    for n in 0..=30u64 {
        let total: BigInt = hypercert::difference::binomial_row(n).into_iter().sum();
        assert_eq!(total, BigInt::from(1u8) << n);
    }
}
