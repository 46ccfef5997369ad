use super::*;
use crate::dickson::dickson_product;
use crate::subspace::enumerate_subspaces;

fn ctx(p: u32, n: usize) -> Arc<ChernContext> {
    ChernContext::new(p, n).unwrap()
}

#[test]
fn generators_at_rank_one() {
    let c = ctx(3, 1);
    assert_eq!(c.lagrangians().len(), 4);
    let kappa = c.kappa(0).unwrap();
    for comp in kappa.components() {
        assert_eq!(comp.to_string(), "1*x1^2");
    }
    // zeta = gamma^3 - gamma t^2 on every component.
    for comp in c.zeta().components() {
        assert_eq!(comp.to_string(), "2*x1^2*x2 + 1*x2^3");
    }
    let alpha = c.alpha(1).unwrap();
    let beta = c.beta(1).unwrap();
    assert!(alpha.components().iter().all(|a| a.degree() <= Some(1)));
    // Exactly one Lagrangian kills each generator.
    assert_eq!(alpha.components().iter().filter(|a| a.is_zero()).count(), 1);
    assert_eq!(beta.components().iter().filter(|a| a.is_zero()).count(), 1);
    assert!(c.alpha(0).is_err());
    assert!(c.beta(2).is_err());
    assert!(c.kappa(1).is_err());
}

#[test]
fn ring_operations_are_componentwise() {
    let c = ctx(3, 1);
    let a = c.alpha(1).unwrap();
    let b = c.beta(1).unwrap();
    let lhs = &(&a + &b) * &(&a - &b);
    let rhs = &(&a * &a) - &(&b * &b);
    assert_eq!(lhs, rhs);
    assert_eq!((&a * &c.one()), a);
    assert!((&a - &a).is_zero());
    assert_eq!(a.pow(3), &(&a * &a) * &a);
    assert_eq!(a.scale(2), -&a);
}

#[test]
fn mismatched_contexts_are_rejected() {
    let c1 = ctx(3, 1);
    let c2 = ctx(3, 1);
    let a = c1.alpha(1).unwrap();
    let b = c2.alpha(1).unwrap();
    assert!(matches!(a.try_add(&b), Err(Error::Usage(_))));
    assert!(a.try_eq(&b).is_err());
    let foreign = SparsePoly::var(PrimeField::new(5).unwrap(), 2, 0);
    assert!(c1.inflate(&foreign).is_err());
    assert!(c1.inflate(&SparsePoly::var(c1.field(), 3, 0)).is_err());
}

#[test]
fn relations_inflate_to_zero() {
    for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
        let c = ctx(p, n);
        c.relations_vanish().unwrap();
        for r in 1..=n as u32 {
            assert!(c.inflate(&c.ty_relation(r)).unwrap().is_zero());
        }
        // The generators themselves are not zero.
        assert!(!c.alpha(1).unwrap().is_zero());
    }
}

#[test]
fn factorwise_dickson_matches_expansion() {
    let c = ctx(3, 1);
    for k in 1..=2 {
        for v in enumerate_subspaces(c.field(), 2, k) {
            for r in 0..k {
                let direct = c.inflate(&dickson_product(&v, r).unwrap()).unwrap();
                assert_eq!(c.inflate_dickson(&v, r).unwrap(), direct, "{v:?} r={r}");
            }
        }
    }
    let c = ctx(3, 2);
    let samples = enumerate_subspaces(c.field(), 4, 2);
    for v in samples.iter().step_by(13) {
        for r in 0..2 {
            let direct = c.inflate(&dickson_product(v, r).unwrap()).unwrap();
            assert_eq!(c.inflate_dickson(v, r).unwrap(), direct);
        }
    }
    assert!(c.inflate_dickson(&samples[0], 2).is_err());
}

#[test]
fn factorwise_products_match_expansion() {
    let c = ctx(3, 2);
    let forms = vec![vec![1, 0, 2, 1], vec![0, 1, 1, 0], vec![1, 0, 2, 1], vec![2, 2, 0, 1]];
    let expanded = forms.iter().fold(SparsePoly::one(c.field(), 4), |acc, v| {
        &acc * &crate::dickson::linear_form(c.field(), v, 4)
    });
    assert_eq!(c.inflate_linear_product(&forms), c.inflate(&expanded).unwrap());
}

#[test]
fn total_chern_top_class_is_zeta() {
    let c = ctx(3, 1);
    let parts = c.total_chern(1).unwrap();
    let (top_deg, top) = parts.last().unwrap();
    assert_eq!(*top_deg, 3);
    assert_eq!(top, &c.zeta());
    assert_eq!(parts[0].0, 0);
    assert_eq!(parts[0].1, c.one());
    assert!(c.total_chern(0).is_err());
    assert!(c.total_chern(3).is_err());
}

#[test]
fn indicator_and_d_t_s() {
    let c = ctx(3, 2);
    let z = c.z().to_vec();
    assert_eq!(z.len(), 4);
    let single = c.indicator(&z[..1]).unwrap();
    assert!(!single.is_empty());
    let all = c.indicator(&z).unwrap();
    assert!(all.len() <= single.len());
    let d = c.d_t_s(&z[..2], 3, &[z[0].clone(), z[1].clone(), z[0].clone()]).unwrap();
    assert_eq!(d, c.indicator(&z[..2]).unwrap().class(&c, 3).unwrap());
    // Contract violations.
    assert!(c.d_t_s(&[], 0, &[]).is_err());
    assert!(c.d_t_s(&z[..2], 2, &[z[0].clone(), z[0].clone()]).is_err());
    assert!(c.d_t_s(&z[..1], 1, &[z[1].clone()]).is_err());
    let stranger = Subspace::span(c.field(), 4, &[vec![1, 1, 0, 0]]).unwrap();
    assert!(c.indicator(&[stranger]).is_err());
}

#[test]
fn membership_at_rank_one() {
    let c = ctx(3, 1);
    let solver = MembershipSolver::new(&c);
    let kappa = c.kappa(0).unwrap();
    let res = solver.solve(&kappa).unwrap();
    assert!(!res.is_member());
    assert!(res.witness_string().is_none());
    let sq = solver.solve(&kappa.pow(2)).unwrap();
    assert_eq!(
        sq.witness_string().unwrap(),
        "1*alpha1^4 + 2*alpha1^2*beta1^2 + 1*beta1^4"
    );
    let mixed = &kappa * &c.alpha(1).unwrap();
    assert_eq!(solver.solve(&mixed).unwrap().witness_string().unwrap(), "1*alpha1^3");
    assert!(solver.solve(&c.zero()).unwrap().is_member());
    let inhomogeneous = &c.one() + &c.alpha(1).unwrap();
    assert!(solver.solve(&inhomogeneous).is_err());
}

#[test]
fn pruned_and_full_bases_agree() {
    let c = ctx(3, 2);
    let pruned = MembershipSolver::new(&c);
    let full = MembershipSolver::new(&c).full_basis();
    let kappa1 = c.kappa(1).unwrap();
    let kappa0 = c.kappa(0).unwrap();
    for target in [kappa1.clone(), &kappa1 * &c.beta(2).unwrap(), kappa0] {
        let a = pruned.solve(&target).unwrap();
        let b = full.solve(&target).unwrap();
        assert_eq!(a.is_member(), b.is_member());
        assert!(a.unknowns <= b.unknowns);
    }
}

#[test]
fn pruned_counts_match_complete_intersection() {
    // Hilbert series of F_3[a1,a2,b1,b2]/(R_1, R_2): (1-t^4)(1-t^10)/(1-t)^4.
    let hilbert = |d: i64| -> i64 {
        let c3 = |k: i64| if k < 0 { 0 } else { (k + 1) * (k + 2) * (k + 3) / 6 };
        c3(d) - c3(d - 4) - c3(d - 10) + c3(d - 14)
    };
    for d in [0, 5, 12, 36] {
        assert_eq!(candidate_monomials(3, 2, d, true).len() as i64, hilbert(d as i64));
    }
    assert_eq!(candidate_monomials(3, 2, 36, true).len(), 1240);
}

#[test]
fn budget_guard() {
    let c = ctx(3, 2);
    let solver = MembershipSolver::new(&c).with_budget(10);
    assert!(matches!(solver.solve(&c.kappa(0).unwrap()), Err(Error::Envelope(_))));
}

#[test]
fn class_json_shape() {
    let c = ctx(3, 1);
    let json = c.alpha(1).unwrap().to_json();
    assert_eq!(json["p"], 3);
    assert_eq!(json["components"].as_array().unwrap().len(), 4);
    assert_eq!(json["components"][0]["lagrangian_index"], 0);
}
