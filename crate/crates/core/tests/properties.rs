use std::sync::Arc;

use gencluster::arith::{coprime_basis, mpoly_gcd, rational_from_int, real_root_count, MPoly, RatFunc, UPoly};
use gencluster::fpoly::{check_separation, f_polynomials};
use gencluster::seed::{ambient_nvars, exchange_poly_ratfunc, run_sequence, skew_symmetrizer, GCASeed, IntMatrix};
use gencluster::semifield::{eval_phi, sf_eq, tropicalize, Generators, SubtractionFreeElem};
use gencluster::tropical::{duality_holds, TropicalData};
use gencluster::wedge::wedge_sum;
use num_rational::BigRational;
use proptest::prelude::*;

type Terms = Vec<(Vec<u32>, i64)>;

fn poly(nv: usize, terms: &Terms) -> MPoly {
    MPoly::from_terms(nv, terms.iter().map(|(e, c)| (e.clone(), rational_from_int(*c))))
}

fn terms(nv: usize, max_terms: usize, coeffs: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0u32..=2, nv), coeffs), 1..=max_terms)
}

fn nonzero_poly(nv: usize) -> impl Strategy<Value = MPoly> {
    terms(nv, 4, -3..=3)
        .prop_map(move |t| poly(nv, &t))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn positive_poly(nv: usize) -> impl Strategy<Value = MPoly> {
    terms(nv, 3, 1..=3).prop_map(move |t| poly(nv, &t))
}

fn is_unit(p: &MPoly) -> bool {
    p.is_constant() && !p.is_zero()
}

/// Skew-symmetrizable matrices `b_ij = s_ij r_j` with `s` skew-symmetric.
fn exchange_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    (
        prop::collection::vec(-1i64..=1, n * (n - 1) / 2),
        prop::collection::vec(1i64..=2, n),
    )
        .prop_map(move |(upper, r)| {
            let mut s = vec![vec![0i64; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let v = it.next().unwrap();
                    s[i][j] = v;
                    s[j][i] = -v;
                }
            }
            (0..n).map(|i| (0..n).map(|j| s[i][j] * r[j]).collect()).collect()
        })
}

fn random_seed(max_rank: usize, max_degree: u32) -> impl Strategy<Value = GCASeed> {
    (2..=max_rank)
        .prop_flat_map(move |n| (exchange_matrix(n), prop::collection::vec(1..=max_degree, n)))
        .prop_map(|(b, d)| GCASeed::initial(b, Arc::new(Generators::new(&d))).unwrap())
}

/// Every pair satisfies `|b_ij b_ji| d_i d_j <= 4`, which in rank 2 means
/// finite or affine type.
fn tame_seed() -> impl Strategy<Value = GCASeed> {
    random_seed(3, 2).prop_filter("wild pair", |s| {
        let d = s.degrees();
        (0..s.rank()).all(|i| (0..i).all(|j| (s.b[i][j] * s.b[j][i]).abs() * (d[i] * d[j]) as i64 <= 4))
    })
}

fn ratfunc_pow(p: &RatFunc, e: i64) -> RatFunc {
    if e == 0 {
        RatFunc::one(p.nvars())
    } else {
        p.pow(e)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_and_is_maximal(a in nonzero_poly(3), b in nonzero_poly(3), c in nonzero_poly(3)) {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = mpoly_gcd(&ac, &bc);
        let ca = ac.div_exact(&g);
        let cb = bc.div_exact(&g);
        prop_assert!(ca.is_some() && cb.is_some());
        prop_assert!(is_unit(&mpoly_gcd(&ca.unwrap(), &cb.unwrap())));
        prop_assert!(g.div_exact(&c).is_some());
    }

    #[test]
    fn univariate_gcd_recovers_common_factor(
        a in prop::collection::vec(-4i64..=4, 1..=6),
        b in prop::collection::vec(-4i64..=4, 1..=6),
        c in prop::collection::vec(-4i64..=4, 2..=5),
    ) {
        let (a, b, c) = (UPoly::from_ints(&a), UPoly::from_ints(&b), UPoly::from_ints(&c));
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let g = (&a * &c).gcd(&(&b * &c));
        prop_assert!(g.leading_coeff() == rational_from_int(1));
        prop_assert!(g.div_exact(&c).is_some());
        let ra = (&a * &c).div_exact(&g).unwrap();
        let rb = (&b * &c).div_exact(&g).unwrap();
        prop_assert!(ra.gcd(&rb).is_constant());
    }

    #[test]
    fn gcd_is_symmetric_up_to_units(a in nonzero_poly(2), b in nonzero_poly(2)) {
        let g = mpoly_gcd(&a, &b);
        let h = mpoly_gcd(&b, &a);
        prop_assert!(g.div_exact(&h).is_some_and(|q| is_unit(&q)));
    }

    #[test]
    fn coprime_basis_reconstructs_inputs(fs in prop::collection::vec(positive_poly(2), 1..=4)) {
        let cb = coprime_basis(&fs).unwrap();
        for (i, f) in fs.iter().enumerate() {
            let (num, den) = cb.reconstruct(i);
            let ratio = RatFunc::new(num, &den * f);
            prop_assert!(ratio.num().is_constant() && ratio.den().is_constant());
        }
        let polys = &cb.basis[..cb.num_polys];
        for (i, p) in polys.iter().enumerate() {
            for q in &polys[i + 1..] {
                prop_assert!(is_unit(&mpoly_gcd(p, q)));
            }
        }
    }

    #[test]
    fn sturm_counts_constructed_roots(
        roots in prop::collection::btree_set(-6i64..=6, 0..=4),
        mults in prop::collection::vec(1u32..=2, 4),
        shifts in prop::collection::vec(1i64..=5, 0..=2),
    ) {
        let mut p = UPoly::one();
        for (r, m) in roots.iter().zip(&mults) {
            p = &p * &UPoly::from_ints(&[-r, 1]).pow(*m);
        }
        // x^2 + c has no real roots
        for c in &shifts {
            p = &p * &UPoly::from_ints(&[*c, 0, 1]);
        }
        prop_assert_eq!(real_root_count(&p), roots.len());
    }

    #[test]
    fn tropicalization_and_evaluation_are_homomorphisms(
        fn_ in positive_poly(3), fd in positive_poly(3),
        gn in positive_poly(3), gd in positive_poly(3),
        point in prop::collection::vec(1i64..=9, 3),
    ) {
        let gens = Arc::new(Generators::new(&[1, 1, 1]));
        let f = SubtractionFreeElem::new(gens.clone(), fn_, fd).unwrap();
        let g = SubtractionFreeElem::new(gens, gn, gd).unwrap();
        prop_assert_eq!(tropicalize(&f.mul(&g)), tropicalize(&f).mul(&tropicalize(&g)));
        prop_assert_eq!(tropicalize(&f.add(&g)), tropicalize(&f).sum(&tropicalize(&g)));
        prop_assert_eq!(tropicalize(&f.inv()), tropicalize(&f).inv());
        let phi: Vec<BigRational> = point.iter().map(|&v| BigRational::new(v.into(), 3.into())).collect();
        let (vf, vg) = (eval_phi(&f, &phi).unwrap(), eval_phi(&g, &phi).unwrap());
        prop_assert_eq!(eval_phi(&f.mul(&g), &phi).unwrap(), &vf * &vg);
        prop_assert_eq!(eval_phi(&f.add(&g), &phi).unwrap(), &vf + &vg);
    }

    #[test]
    fn sf_equality_ignores_representation(fn_ in positive_poly(2), fd in positive_poly(2), h in positive_poly(2)) {
        let gens = Arc::new(Generators::new(&[1, 1]));
        let f = SubtractionFreeElem::new(gens.clone(), fn_.clone(), fd.clone()).unwrap();
        let g = SubtractionFreeElem::new(gens.clone(), &fn_ * &h, &fd * &h).unwrap();
        prop_assert!(sf_eq(&f, &g));
        prop_assert!(sf_eq(&f.simplified(), &f));
        let one = SubtractionFreeElem::one(gens);
        prop_assert!(!sf_eq(&f, &f.add(&one)));
    }

    #[test]
    fn wedge_is_bilinear_and_alternating(fs in prop::collection::vec(positive_poly(2), 3)) {
        let gens = Arc::new(Generators::new(&[1, 1]));
        let e: Vec<SubtractionFreeElem> = fs
            .into_iter()
            .map(|p| SubtractionFreeElem::from_poly(gens.clone(), p).unwrap())
            .collect();
        // f ∧ f = 0
        prop_assert!(wedge_sum(&[(1, e[0].clone(), e[0].clone())]).unwrap().is_zero_in_wedge());
        // f ∧ g + g ∧ f = 0
        let swapped = [(1, e[0].clone(), e[1].clone()), (1, e[1].clone(), e[0].clone())];
        prop_assert!(wedge_sum(&swapped).unwrap().is_zero_in_wedge());
        // (fg) ∧ h = f ∧ h + g ∧ h
        let split = [
            (1, e[0].mul(&e[1]), e[2].clone()),
            (-1, e[0].clone(), e[2].clone()),
            (-1, e[1].clone(), e[2].clone()),
        ];
        prop_assert!(wedge_sum(&split).unwrap().is_zero_in_wedge());
        // f ∧ g^2 = 2 (f ∧ g)
        let scaled = [(1, e[0].clone(), e[1].pow(2)), (-2, e[0].clone(), e[1].clone())];
        prop_assert!(wedge_sum(&scaled).unwrap().is_zero_in_wedge());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mutation_is_an_involution(seed in random_seed(3, 3), k in 0usize..3) {
        let k = k % seed.rank();
        let back = seed.mutate(k).unwrap().mutate(k).unwrap();
        prop_assert!(back.same_as(&seed));
    }

    #[test]
    fn symmetrizer_is_preserved(seed in random_seed(3, 3), ks in prop::collection::vec(0usize..3, 1..=6)) {
        let r = skew_symmetrizer(&seed.b).unwrap().r;
        let dk: Vec<i64> = seed.degrees().iter().map(|&d| d as i64).collect();
        let mut b = seed.b.clone();
        for k in ks.into_iter().map(|k| k % seed.rank()) {
            b = gencluster::seed::mutate_matrix(&b, k, dk[k]);
            for i in 0..b.len() {
                for j in 0..b.len() {
                    prop_assert_eq!(r[i] * b[i][j], -r[j] * b[j][i]);
                }
            }
        }
    }

    #[test]
    fn yhat_mutates_like_y(seed in random_seed(3, 2), k in 0usize..3) {
        let k = k % seed.rank();
        let nv = ambient_nvars(seed.generators());
        let yh = seed.yhat_vars();
        let z: Vec<MPoly> = seed.z[k]
            .iter()
            .map(|c| c.embed_ratfunc(nv).as_poly().unwrap())
            .collect();
        let p = exchange_poly_ratfunc(&z, &yh[k]);
        let dk = seed.degrees()[k] as i64;
        let after = seed.mutate(k).unwrap().yhat_vars();
        for i in 0..seed.rank() {
            let bki = seed.b[k][i];
            let want = if i == k {
                yh[k].inv()
            } else {
                yh[i].mul(&ratfunc_pow(&yh[k], bki.max(0) * dk)).mul(&ratfunc_pow(&p, -bki))
            };
            prop_assert!(after[i].equals(&want), "i = {}", i);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Seeds of wild type are excluded and rank-3 seeds take at most two
    /// steps: otherwise y-variables reach thousands of terms within a few
    /// mutations.
    #[test]
    fn random_trajectories_are_sign_coherent_dual_and_separate(
        seed in tame_seed(),
        ks in prop::collection::vec(0usize..3, 1..=4),
    ) {
        let cap = if seed.rank() == 3 { 2 } else { 4 };
        let ks: Vec<usize> = ks.into_iter().take(cap).map(|k| k % seed.rank()).collect();
        let traj = run_sequence(&seed, &ks).unwrap();
        let data = TropicalData::compute(&traj);
        prop_assert!(data.is_ok(), "{:?}", data.err());
        let data = data.unwrap();
        let sym = traj.symmetrizer();
        for (g, c) in data.g.iter().zip(&data.c) {
            prop_assert!(duality_holds(g, c, &sym));
        }
        let f = f_polynomials(&traj, &data.c).unwrap();
        prop_assert_eq!(check_separation(&traj, &data.c, &f), Ok(()));
        for row in &f.f {
            for p in row {
                prop_assert_eq!(p.constant_term(), rational_from_int(1));
            }
        }
    }
}
