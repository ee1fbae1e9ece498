mod common;

use common::trajectory;
use gencluster::fixtures::{self, Fixture};
use gencluster::quantum::{verify_quantum_identity, CoefficientRule, QuantumReport};
use gencluster::tropical::TropicalData;

fn report(f: &Fixture, n: u32, rule: CoefficientRule) -> QuantumReport {
    let traj = trajectory(f);
    let data = TropicalData::compute(&traj).unwrap();
    verify_quantum_identity(&traj, &data, &traj.symmetrizer(), n, rule).unwrap()
}

#[test]
fn periodic_fixtures_give_exactly_one() {
    for f in [fixtures::involution(), fixtures::a2(), fixtures::b2(), fixtures::g2()] {
        let r = report(&f, f.quantum_n, CoefficientRule::SignAdjusted);
        assert!(r.is_one, "{}: {:?}", f.name, r.first_residual);
        assert_eq!(r.residual_count, 0);
        assert!(r.degree_one_cancels);
    }
}

/// B2 has a palindromic `z_1`, so the two rules agree there; G2 does not.
#[test]
fn literal_rule_needs_palindromes() {
    assert!(report(&fixtures::b2(), 4, CoefficientRule::Literal).is_one);
    let r = report(&fixtures::g2(), 3, CoefficientRule::Literal);
    assert!(!r.is_one);
    assert!(r.first_residual.is_some());
    assert!(!r.degree_one_cancels);
}

#[test]
fn truncated_sequence_leaves_a_residual() {
    let f = fixtures::b2_truncated();
    let r = report(&f, 3, CoefficientRule::SignAdjusted);
    assert!(!r.is_one);
    assert!(!r.degree_one_cancels);
}

mod torus {
    use gencluster::arith::{rational_from_int, QRat};
    use gencluster::quantum::{psi_coeffs, qrat_constant, qtorus_mul, QSeriesElem, QTorusContext};
    use num_rational::BigRational;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn series(ctx: &QTorusContext, terms: &[(u32, u32, i64, i64)]) -> QSeriesElem {
        let mut s = QSeriesElem::zero(ctx, 5);
        for &(a, b, k, c) in terms {
            let coeff = QRat::q_pow(ctx.nvars(), k).scale(&rational_from_int(c));
            s = s.add(&QSeriesElem::monomial(ctx, 5, vec![a, b], coeff));
        }
        s
    }

    fn terms() -> impl Strategy<Value = Vec<(u32, u32, i64, i64)>> {
        prop::collection::vec((0u32..=2, 0u32..=2, -2i64..=2, -3i64..=3), 1..=4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn product_is_associative(b01 in -2i64..=2, r in 1i64..=2, x in terms(), y in terms(), z in terms()) {
            let b = vec![vec![0, b01], vec![-b01 * r, 0]];
            let ctx = QTorusContext::new(&b, &[r, 1], 0);
            let (x, y, z) = (series(&ctx, &x), series(&ctx, &y), series(&ctx, &z));
            let left = qtorus_mul(&qtorus_mul(&x, &y, &ctx), &z, &ctx);
            let right = qtorus_mul(&x, &qtorus_mul(&y, &z, &ctx), &ctx);
            prop_assert_eq!(left, right);
        }
    }

    /// The coefficients agree with the infinite product `prod_k P(q^{2k+1} x)^{-1}`
    /// evaluated at `q = 1/2`.
    #[test]
    fn psi_matches_the_product_numerically() {
        let z_vals = [1i64, 3, 2, 1];
        let z: Vec<QRat> = z_vals.iter().map(|&c| qrat_constant(rational_from_int(c), 1)).collect();
        let coeffs = psi_coeffs(&z, 1, 12);
        let q = BigRational::new(1.into(), 2.into());
        let x = 0.02f64;
        let series: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.eval(std::slice::from_ref(&q)).unwrap().to_f64().unwrap() * x.powi(n as i32))
            .sum();
        let p = |v: f64| z_vals.iter().rev().fold(0.0, |acc, &c| acc * v + c as f64);
        let product: f64 = (0..80).map(|k| 1.0 / p(0.5f64.powi(2 * k + 1) * x)).product();
        assert!((series - product).abs() < 1e-13, "{series} vs {product}");
    }
}
