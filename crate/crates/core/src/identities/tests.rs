use super::*;
use crate::report::Status;

fn ctx(p: u32, n: usize) -> Arc<ChernContext> {
    ChernContext::new(p, n).unwrap()
}

fn pass(r: VerificationReport) {
    assert_eq!(r.status, Status::Pass, "{r}");
    assert!(r.counterexample.is_none());
}

fn fail(r: VerificationReport) {
    assert_eq!(r.status, Status::Fail, "{r}");
    assert!(r.counterexample.is_some());
}

#[test]
fn rank_one_suite_passes_and_controls_fail() {
    for p in [3, 5] {
        let c = ctx(p, 1);
        pass(ty_relations(&c, Mode::Faithful).unwrap());
        fail(ty_relations(&c, Mode::Perturbed).unwrap());
        pass(newrel(&c, Mode::Faithful, 7, 5).unwrap());
        fail(newrel(&c, Mode::Perturbed, 7, 5).unwrap());
        pass(intro_presentation(&c, Mode::Faithful).unwrap());
        fail(intro_presentation(&c, Mode::Perturbed).unwrap());
        for s in [2, 3] {
            pass(kappa_n(&c, Mode::Faithful, s).unwrap());
            fail(kappa_n(&c, Mode::Perturbed, s).unwrap());
        }
        pass(kappa0_membership(&c, Mode::Faithful).unwrap());
        fail(kappa0_membership(&c, Mode::Perturbed).unwrap());
        pass(kr_dr(&c, Mode::Faithful, 1, 0, 1).unwrap());
        fail(kr_dr(&c, Mode::Perturbed, 1, 0, 1).unwrap());
        pass(kr_pvy(&c, Mode::Faithful, 1, 0, 0).unwrap());
        fail(kr_pvy(&c, Mode::Perturbed, 1, 0, 0).unwrap());
        for s in 0..=1 {
            pass(kappa_integral(&c, Mode::Faithful, 0, s).unwrap());
            fail(kappa_integral(&c, Mode::Perturbed, 0, s).unwrap());
        }
        pass(kappa_integral_membership(&c, Mode::Faithful, 0).unwrap());
        fail(kappa_integral_membership(&c, Mode::Perturbed, 0).unwrap());
        pass(mt_properties(&c, Mode::Faithful).unwrap());
        fail(mt_properties(&c, Mode::Perturbed).unwrap());
        pass(independence(&c, Mode::Faithful, 2 * p as u64).unwrap());
        fail(independence(&c, Mode::Perturbed, 2 * p as u64).unwrap());
    }
}

#[test]
fn parameter_contracts() {
    let c = ctx(3, 1);
    assert!(kappa_n(&c, Mode::Faithful, 1).is_err());
    assert!(kr_dr(&c, Mode::Faithful, 0, 1, 1).is_err());
    assert!(kr_dr(&c, Mode::Faithful, 0, 0, 0).is_err());
    assert!(kr_pvy(&c, Mode::Faithful, 0, 0, 1).is_err());
    assert!(kappa_integral(&c, Mode::Faithful, 0, 2).is_err());
    assert!(independence(&c, Mode::Faithful, 0).is_err());
    assert!(intro_presentation(&ctx(3, 2), Mode::Faithful).is_err());
}

#[test]
fn counterexample_names_first_failing_lagrangian() {
    let c = ctx(3, 1);
    let r = ty_relations(&c, Mode::Perturbed).unwrap();
    let cex = r.counterexample.unwrap();
    assert_eq!(cex.check, "R_1 inflates to zero");
    // The perturbed relation really is nonzero there.
    let li = cex.lagrangian_index.unwrap();
    assert!(!c.inflate(&relation(&c, 1, 2)).unwrap().component(li).is_zero());
    assert_ne!(cex.polynomial, "0");
}

#[test]
fn sampling_is_seeded() {
    let mut a = rng(42, 3);
    let mut b = rng(42, 3);
    let xa: Vec<u32> = (0..8).map(|_| a.gen_range(0..1000)).collect();
    let xb: Vec<u32> = (0..8).map(|_| b.gen_range(0..1000)).collect();
    assert_eq!(xa, xb);
    let mut c = rng(42, 4);
    let xc: Vec<u32> = (0..8).map(|_| c.gen_range(0..1000)).collect();
    assert_ne!(xa, xc);
    assert_eq!(sample_indices(5, 10, &mut a), vec![0, 1, 2, 3, 4]);
    let picked = sample_indices(100, 10, &mut a);
    assert_eq!(picked.len(), 10);
    assert!(picked.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn kappa_zeta_monomial_counts() {
    // p = 3, n = 1: kappa0 has degree 2, zeta degree 3, bound 6.
    let m = kappa_zeta_monomials(3, 1, 6);
    let labels: Vec<String> = m.iter().map(|e| monomial_label(e)).collect();
    assert_eq!(labels, ["1", "zeta", "zeta^2", "kappa0", "kappa0*zeta", "kappa0^2", "kappa0^3"]);
}

#[test]
fn complements() {
    let c = ctx(3, 2);
    let f = c.field();
    let v = Subspace::span(f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap();
    let y = Subspace::span(f, 4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap();
    let w = canonical_complement(&v, &y);
    assert_eq!(w.dim(), 1);
    assert_eq!(w.sum(&y), v);
    let mut g = rng(0, 0);
    let w2 = shifted_complement(&w, &y, &mut g);
    assert_eq!(w2.sum(&y), v);
}
