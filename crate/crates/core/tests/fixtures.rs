mod common;

use common::{parse_formula, trajectory, y_mismatches, B2_SIGNS, B2_Y, G2_SIGNS, G2_Y};
use gencluster::fixtures;
use gencluster::semifield::{sf_eq, SubtractionFreeElem};
use gencluster::tropical::TropicalData;

#[test]
fn b2_y_variables() {
    assert_eq!(y_mismatches(&trajectory(&fixtures::b2()), &B2_Y), Vec::<usize>::new());
}

#[test]
fn g2_y_variables() {
    assert_eq!(y_mismatches(&trajectory(&fixtures::g2()), &G2_Y), Vec::<usize>::new());
}

#[test]
fn a_wrong_formula_is_caught() {
    let traj = trajectory(&fixtures::b2());
    let mut wrong = B2_Y;
    wrong[1] = "y_2(1+2y_1+y_1^2)";
    assert_eq!(y_mismatches(&traj, &wrong), vec![1]);
}

#[test]
fn tropical_signs_of_both_fixtures() {
    for (f, want) in [(fixtures::b2(), &B2_SIGNS[..]), (fixtures::g2(), &G2_SIGNS[..])] {
        let data = TropicalData::compute(&trajectory(&f)).unwrap();
        let got: Vec<i64> = data.signs.iter().map(|s| s.value()).collect();
        assert_eq!(got, want, "{}", f.name);
    }
}

/// `z_1` alternates with its reverse at the odd steps; `z_2 = (1, 1)` stays.
#[test]
fn z_coefficients_alternate() {
    let traj = trajectory(&fixtures::g2());
    let gens = traj.initial().generators().clone();
    let z1: Vec<SubtractionFreeElem> = ["1", "alpha", "beta", "1"]
        .iter()
        .map(|s| sf(s, &gens))
        .collect();
    let z1_rev: Vec<SubtractionFreeElem> = z1.iter().rev().cloned().collect();
    for t in [0, 4] {
        assert!(same(&traj.seeds[t].z[0], &z1), "z_1[{}]", t + 1);
    }
    for t in [2, 6] {
        assert!(same(&traj.seeds[t].z[0], &z1_rev), "z_1[{}]", t + 1);
    }
    for t in [1, 3, 5, 7] {
        assert!(traj.seeds[t].z[1].iter().all(|c| c.is_one()));
    }
}

fn sf(s: &str, gens: &std::sync::Arc<gencluster::semifield::Generators>) -> SubtractionFreeElem {
    let r = parse_formula(s, gens);
    SubtractionFreeElem::new(gens.clone(), r.num().clone(), r.den().clone()).unwrap()
}

fn same(a: &[SubtractionFreeElem], b: &[SubtractionFreeElem]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| sf_eq(x, y))
}

#[test]
fn involution_returns_immediately() {
    let traj = trajectory(&fixtures::involution());
    assert!(traj.last().same_as(traj.initial()));
    assert!(!traj.seeds[1].same_as(traj.initial()));
}
