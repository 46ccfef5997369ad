//! One verifier per identity of the model. Every verifier builds both sides
//! from generators independently and compares them componentwise.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::chern::{ChernContext, MembershipSolver, QuillenClass};
use crate::dickson::linear_form;
use crate::error::{usage, Error, Result};
use crate::linalg;
use crate::poly::SparsePoly;
use crate::report::{difference, Checker, Counterexample, Mode, VerificationReport};
use crate::subspace::{enumerate_subspaces, Subspace};

/// Identity names with the statement each one checks.
pub const CATALOGUE: &[(&str, &str)] = &[
    (
        "ty_relations",
        "Tezuka-Yagita relations: R_r = sum_i (alpha_i^{p^r} beta_i - alpha_i beta_i^{p^r}) vanishes for every r >= 1",
    ),
    (
        "newrel",
        "first Chern class x of a one-dimensional representation: sum_{m=0}^{n} (-1)^{n-m} x^{p^m} kappa_m = 0 with kappa_n = 1",
    ),
    (
        "intro_presentation",
        "n = 1 presentation: alpha beta^p - alpha^p beta = 0, x kappa_0 = x^p for x in {alpha, beta}, kappa_0^2 = alpha^{2p-2} - alpha^{p-1} beta^{p-1} + beta^{2p-2}",
    ),
    (
        "kappa_n",
        "kappa_0^s = -sum_{T nonempty subset of Z} (-1)^{|T|} D_T^(s) for s >= 2^n",
    ),
    (
        "kappa0_membership",
        "kappa_0 lies in the Tezuka-Yagita subring for no n, kappa_0^{2^n} does, and for n = 2 kappa_0^s does iff s >= 2",
    ),
    (
        "kr_dr",
        "C_V (kappa_r^{p^{n-s}} - D_{n+r-s}(V^perp)) = 0 and D_0(V) (kappa_r^{p^{n-s}} - D_{n+r-s}(V^perp)) = 0 for dim V = s >= n - r",
    ),
    (
        "kr_pvy",
        "kappa_r^{p^s} P_{V,Y} = D_{r+s}(W^perp) P_{V,Y} for every complement W of Y in V, hence kappa_r^{t p^s} D_{2s}(V) lies in the Tezuka-Yagita subring",
    ),
    (
        "kappa_integral",
        "prod_{V in Z_s} (kappa_r^{p^{n-s}} - D_{n+r-s}(V^perp)) = 0",
    ),
    (
        "kappa_integral_membership",
        "kappa_r^{t p^r} lies in the Tezuka-Yagita subring for t >= 2^{n-r}",
    ),
    (
        "mt_properties",
        "indicator sets over Z: the I_V cover all Lagrangians, I_{T1} and I_{T2} meet in I_{T1 u T2}, prod_V (1 - chi_V) = 0, I_Z is nonempty, I_{Z \\ V} strictly contains I_Z, and I_{T1} = I_{T2} iff T1 = T2",
    ),
    (
        "independence",
        "kappa_0, ..., kappa_{n-1}, zeta are algebraically independent and restriction to a single maximal elementary abelian subgroup is injective on the subring they generate",
    ),
    (
        "commutator_form",
        "the commutator b(x1, x2) = [lift x1, lift x2] is a well-defined nondegenerate symplectic form on E",
    ),
    (
        "maximal_abelians",
        "maximal elementary abelian subgroups M correspond to Lagrangians via I = M/N and M = psi^{-1}(I), and all have rank n + 1",
    ),
    (
        "induced_characters",
        "the p - 1 irreducible characters of degree p^n equal p^n chi_j-hat on the center and 0 elsewhere; with the p^{2n} linear characters they exhaust the irreducibles",
    ),
];

pub fn statement(identity: &str) -> &'static str {
    CATALOGUE
        .iter()
        .find(|(name, _)| *name == identity)
        .map(|(_, s)| *s)
        .expect("identity is catalogued")
}

pub(crate) fn checker(p: u32, n: usize, identity: &str) -> Checker {
    Checker::new(identity, statement(identity)).param("p", p).param("n", n)
}

fn base(ctx: &ChernContext, identity: &str) -> Checker {
    checker(ctx.p(), ctx.n(), identity)
}

/// Deterministic generator for one sampled verification.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn p_pow(p: u32, e: usize) -> u64 {
    (p as u64).pow(e as u32)
}

/// `sum_i (alpha_i^{p^r} beta_i - sign * alpha_i beta_i^{p^r})` in `Sym(E*)`.
fn relation(ctx: &ChernContext, r: u32, sign: u32) -> SparsePoly {
    let n = ctx.n();
    let mut acc = SparsePoly::zero(ctx.field(), ctx.ambient_vars());
    for i in 0..n {
        let a = ctx.coordinate(i);
        let b = ctx.coordinate(n + i);
        acc = &(&acc + &(&a.frobenius(r) * &b)) - &(&a * &b.frobenius(r)).scale(sign);
    }
    acc
}

pub fn ty_relations(ctx: &Arc<ChernContext>, mode: Mode) -> Result<VerificationReport> {
    let n = ctx.n();
    let mut ck = base(ctx, "ty_relations").param("r", json!([1, n + 1]));
    for r in 1..=n as u32 + 1 {
        let rel = ctx.inflate(&relation(ctx, r, mode.sign(ctx.p())))?;
        ck.zero(format!("R_{r} inflates to zero"), &rel)?;
    }
    if n >= 2 {
        // Only the full sum vanishes.
        let a = ctx.coordinate(0);
        let b = ctx.coordinate(n);
        let single = &(&a.frobenius(1) * &b) - &(&a * &b.frobenius(1));
        let inflated = ctx.inflate(&single)?;
        ck.fact("single summand of R_1 is nonzero", !inflated.is_zero(), || {
            "alpha_1^p beta_1 - alpha_1 beta_1^p inflates to zero".into()
        });
    }
    Ok(ck.finish())
}

/// Left side of the one-dimensional-representation identity for `x`.
fn newrel_lhs(ctx: &Arc<ChernContext>, x: &QuillenClass, last_sign: u32) -> Result<QuillenClass> {
    let f = ctx.field();
    let n = ctx.n();
    let mut acc = x.pow(p_pow(ctx.p(), n));
    for m in 0..n {
        let mut sign = f.sign(n - m);
        if m == 0 {
            sign = f.mul(sign, last_sign);
        }
        let term = x.pow(p_pow(ctx.p(), m)).try_mul(&ctx.kappa(m)?)?;
        acc = acc.try_add(&term.scale(sign))?;
    }
    Ok(acc)
}

pub fn newrel(ctx: &Arc<ChernContext>, mode: Mode, seed: u64, samples: usize) -> Result<VerificationReport> {
    let n = ctx.n();
    let p = ctx.p();
    let mut ck = base(ctx, "newrel").param("random_forms", samples).seed(seed);
    let mut forms: Vec<(String, Vec<u32>)> = Vec::new();
    let space = ctx.space();
    for i in 1..=n {
        forms.push((format!("alpha{i}"), space.a(i)));
        forms.push((format!("beta{i}"), space.b(i)));
    }
    forms.push(("0".into(), vec![0; 2 * n]));
    let mut g = rng(seed, 1);
    for k in 0..samples {
        let v: Vec<u32> = (0..2 * n).map(|_| g.gen_range(0..p)).collect();
        forms.push((format!("random form {k} {v:?}"), v));
    }
    let results: Vec<Result<Option<Counterexample>>> = forms
        .par_iter()
        .map(|(label, v)| {
            let x = ctx.inflate(&linear_form(ctx.field(), v, 2 * n))?;
            let lhs = newrel_lhs(ctx, &x, mode.sign(p))?;
            difference(format!("x = {label}"), &lhs, &ctx.zero())
        })
        .collect();
    for r in results {
        ck.record(r?);
    }
    Ok(ck.finish())
}

pub fn intro_presentation(ctx: &Arc<ChernContext>, mode: Mode) -> Result<VerificationReport> {
    if ctx.n() != 1 {
        return usage("the rank-one presentation needs n = 1");
    }
    let p = ctx.p() as u64;
    let mut ck = base(ctx, "intro_presentation");
    let a = ctx.alpha(1)?;
    let b = ctx.beta(1)?;
    let k = ctx.kappa(0)?;
    let rel = &(&a * &b.pow(p)) - &(&a.pow(p) * &b);
    ck.zero("alpha beta^p - alpha^p beta = 0", &rel)?;
    for (name, x) in [("alpha", &a), ("beta", &b)] {
        let rhs = x.pow(p).scale(mode.sign(ctx.p()));
        ck.equal(format!("{name} kappa_0 = {name}^p"), &(x * &k), &rhs)?;
    }
    let rhs = &(&a.pow(2 * p - 2) - &(&a.pow(p - 1) * &b.pow(p - 1))) + &b.pow(2 * p - 2);
    ck.equal("kappa_0^2 = alpha^{2p-2} - alpha^{p-1} beta^{p-1} + beta^{2p-2}", &k.pow(2), &rhs)?;
    Ok(ck.finish())
}

/// Members of `Z` selected by `mask`, with a covering sequence of length `s`
/// that lists them in order and pads with the first (or last) one.
fn covering(z: &[Subspace], mask: usize, s: usize, pad_last: bool) -> (Vec<Subspace>, Vec<Subspace>) {
    let t: Vec<Subspace> = z
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, v)| v.clone())
        .collect();
    let pad = if pad_last { t.last() } else { t.first() }.unwrap().clone();
    let mut seq = t.clone();
    seq.resize(s, pad);
    (t, seq)
}

pub fn kappa_n(ctx: &Arc<ChernContext>, mode: Mode, s: usize) -> Result<VerificationReport> {
    let n = ctx.n();
    if s < 1 << n {
        return usage(format!("the formula needs s >= 2^n = {}", 1 << n));
    }
    let f = ctx.field();
    let z = ctx.z().to_vec();
    let mut ck = base(ctx, "kappa_n").param("s", s).param("subsets", (1usize << z.len()) - 1);
    let terms: Vec<Result<QuillenClass>> = (1..1usize << z.len())
        .into_par_iter()
        .map(|mask| {
            let (t, seq) = covering(&z, mask, s, false);
            // -(-1)^{|T|} D_T^(s)
            Ok(ctx.d_t_s(&t, s, &seq)?.scale(f.sign(t.len() + 1)))
        })
        .collect();
    let mut rhs = ctx.zero();
    for t in terms {
        rhs = rhs.try_add(&t?)?;
    }
    let rhs = rhs.scale(mode.sign(ctx.p()));
    ck.equal(format!("kappa_0^{s} = alternating sum of D_T^({s})"), &ctx.kappa(0)?.pow(s as u64), &rhs)?;
    // Choice independence of D_T^(s) for the full family.
    if z.len() >= 2 && s > z.len() {
        let all = (1usize << z.len()) - 1;
        let (t, seq1) = covering(&z, all, s, false);
        let (_, seq2) = covering(&z, all, s, true);
        ck.equal("D_Z^(s) independent of the covering sequence", &ctx.d_t_s(&t, s, &seq1)?, &ctx.d_t_s(&t, s, &seq2)?)?;
    }
    Ok(ck.finish())
}

/// Runs the solver and records whether membership matches `expect`.
/// Systems beyond the solver budget are listed under `skipped`.
fn membership_check(
    ck: &mut Checker,
    solver: &MembershipSolver,
    label: &str,
    target: &QuillenClass,
    expect: bool,
    log: &mut Vec<Value>,
) -> Result<()> {
    match solver.solve(target) {
        Ok(res) => {
            let member = res.is_member();
            let witness_terms = match &res.membership {
                crate::chern::Membership::Member { witness } => Some(witness.num_terms()),
                crate::chern::Membership::NotMember => None,
            };
            log.push(json!({
                "target": label,
                "degree": res.degree,
                "member": member,
                "unknowns": res.unknowns,
                "rank": res.rank,
                "witness_terms": witness_terms,
            }));
            ck.fact(format!("{label} membership"), member == expect, || {
                format!(
                    "expected {}, solver says {}",
                    if expect { "member" } else { "not a member" },
                    if member { "member" } else { "not a member" }
                )
            });
        }
        Err(Error::Envelope(msg)) => log.push(json!({ "target": label, "skipped": msg })),
        Err(e) => return Err(e),
    }
    Ok(())
}

pub fn kappa0_membership(ctx: &Arc<ChernContext>, mode: Mode) -> Result<VerificationReport> {
    let n = ctx.n();
    let mut ck = base(ctx, "kappa0_membership");
    let solver = MembershipSolver::new(ctx);
    let k = ctx.kappa(0)?;
    let flip = mode == Mode::Perturbed;
    let mut log = Vec::new();
    membership_check(&mut ck, &solver, "kappa0", &k, flip, &mut log)?;
    if n == 2 {
        membership_check(&mut ck, &solver, "kappa0^2", &k.pow(2), !flip, &mut log)?;
    }
    let top = 1u64 << n;
    membership_check(&mut ck, &solver, &format!("kappa0^{top}"), &k.pow(top), !flip, &mut log)?;
    ck.set_param("membership", log);
    Ok(ck.finish())
}

/// Seeded sample of at most `limit` items, in ascending order; everything
/// when the list is short enough.
fn sample_indices(len: usize, limit: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    if len <= limit {
        return (0..len).collect();
    }
    let mut idx = sample(rng, len, limit).into_vec();
    idx.sort_unstable();
    idx
}

/// Above this many subspaces the exhaustive loops switch to seeded samples.
pub const EXHAUSTIVE_LIMIT: usize = 200;

pub fn kr_dr(ctx: &Arc<ChernContext>, mode: Mode, seed: u64, r: usize, s: usize) -> Result<VerificationReport> {
    let n = ctx.n();
    if r >= n || s + r < n || s > n {
        return usage(format!("need 0 <= r <= n-1 and n-r <= s <= n, got r = {r}, s = {s}"));
    }
    let space = ctx.space();
    let all = enumerate_subspaces(ctx.field(), 2 * n, s);
    let picked = sample_indices(all.len(), EXHAUSTIVE_LIMIT, &mut rng(seed, 2 + (r * 8 + s) as u64));
    let mut ck = base(ctx, "kr_dr")
        .param("r", r)
        .param("s", s)
        .param("subspaces", picked.len())
        .param("exhaustive", picked.len() == all.len());
    if picked.len() < all.len() {
        ck = ck.seed(seed);
    }
    let kpow = ctx.kappa(r)?.pow(p_pow(ctx.p(), n - s));
    let sign = mode.sign(ctx.p());
    let results: Vec<Result<(Option<Counterexample>, bool)>> = picked
        .par_iter()
        .map(|&i| {
            let v = &all[i];
            let d = ctx.inflate_dickson(&space.perp(v), n + r - s)?;
            let diff = kpow.try_sub(&d.scale(sign))?;
            let c_v = ctx.inflate_linear_product(&v.line_representatives());
            let d0 = ctx.inflate_dickson(v, 0)?;
            let label = |what: &str| format!("{what} (kappa_r^(p^(n-s)) - D(V^perp)) = 0 for V = {:?}", v.basis());
            let cex = match difference(label("C_V"), &c_v.try_mul(&diff)?, &ctx.zero())? {
                Some(c) => Some(c),
                None => difference(label("D_0(V)"), &d0.try_mul(&diff)?, &ctx.zero())?,
            };
            Ok((cex, !diff.is_zero()))
        })
        .collect();
    let mut bare_nonzero = false;
    for res in results {
        let (cex, nz) = res?;
        ck.record(cex);
        bare_nonzero |= nz;
    }
    // The C_V and D_0(V) factors are needed: some bare difference is nonzero.
    ck.fact("bare difference is nonzero for some V", bare_nonzero, || {
        "kappa_r^(p^(n-s)) - D(V^perp) vanished for every V".into()
    });
    Ok(ck.finish())
}

/// A complement of `y` in `v` built from the RREF basis of `v`.
fn canonical_complement(v: &Subspace, y: &Subspace) -> Subspace {
    let mut acc = y.clone();
    let mut chosen = Vec::new();
    for row in v.basis() {
        if !acc.contains(row) {
            chosen.push(row.clone());
            acc = acc.sum(&Subspace::span(v.field(), v.ambient_dim(), &[row]).unwrap());
        }
    }
    Subspace::span(v.field(), v.ambient_dim(), &chosen).unwrap()
}

/// The graph of a random linear map `w -> Y`, another complement of `Y`.
fn shifted_complement(w: &Subspace, y: &Subspace, rng: &mut ChaCha8Rng) -> Subspace {
    let f = w.field();
    let ys = y.elements();
    let rows: Vec<Vec<u32>> = w
        .basis()
        .iter()
        .map(|row| {
            let shift = &ys[rng.gen_range(0..ys.len())];
            row.iter().zip(shift).map(|(&a, &b)| f.add(a, b)).collect()
        })
        .collect();
    Subspace::span(f, w.ambient_dim(), &rows).unwrap()
}

/// Number of seeded `(V, Y, W)` triples when `n >= 2`.
pub const PVY_TRIPLES: usize = 10;

pub fn kr_pvy(ctx: &Arc<ChernContext>, mode: Mode, seed: u64, r: usize, s: usize) -> Result<VerificationReport> {
    let n = ctx.n();
    if r >= n || s > r {
        return usage(format!("need 0 <= s <= r <= n-1, got r = {r}, s = {s}"));
    }
    let f = ctx.field();
    let space = ctx.space();
    let p = ctx.p();
    let all_v = enumerate_subspaces(f, 2 * n, n + s);
    let mut g = rng(seed, 100 + (r * 8 + s) as u64);
    // (V, Y, W1, W2)
    let mut triples = Vec::new();
    if n == 1 {
        for v in &all_v {
            let y = Subspace::zero(f, 2 * n);
            triples.push((v.clone(), y, v.clone(), v.clone()));
        }
    } else {
        for _ in 0..PVY_TRIPLES {
            let v = all_v[g.gen_range(0..all_v.len())].clone();
            let ys = v.subspaces(2 * s);
            let y = ys[g.gen_range(0..ys.len())].clone();
            let w1 = canonical_complement(&v, &y);
            let w2 = shifted_complement(&w1, &y, &mut g);
            triples.push((v, y, w1, w2));
        }
    }
    let mut ck = base(ctx, "kr_pvy")
        .param("r", r)
        .param("s", s)
        .param("triples", triples.len())
        .param("exhaustive", n == 1);
    if n > 1 {
        ck = ck.seed(seed);
    }
    let kpow = ctx.kappa(r)?.pow(p_pow(p, s));
    let sign = mode.sign(p);
    let results: Vec<Result<Option<Counterexample>>> = triples
        .par_iter()
        .map(|(v, y, w1, w2)| {
            let outside: Vec<Vec<u32>> = v.elements().into_iter().filter(|e| !y.contains(e)).collect();
            let pvy = ctx.inflate_linear_product(&outside);
            let lhs = kpow.try_mul(&pvy)?;
            let mut sides = Vec::new();
            for w in [w1, w2] {
                if w.dim() + y.dim() != v.dim() || &w.sum(y) != v {
                    return Err(Error::Inconsistent("chosen W is not a complement of Y in V".into()));
                }
                let d = ctx.inflate_dickson(&space.perp(w), r + s)?;
                let rhs = d.try_mul(&pvy)?.scale(sign);
                let label = format!("kappa_r^(p^s) P_VY = D(W^perp) P_VY for V = {:?}, W = {:?}", v.basis(), w.basis());
                if let Some(c) = difference(label, &lhs, &rhs)? {
                    return Ok(Some(c));
                }
                sides.push(rhs);
            }
            difference("product independent of the complement W", &sides[0], &sides[1])
        })
        .collect();
    for res in results {
        ck.record(res?);
    }
    // Consequence: kappa_r^{t p^s} D_{2s}(V) is in the Tezuka-Yagita subring.
    if let Some((v, ..)) = triples.first() {
        let solver = MembershipSolver::new(ctx);
        let d2s = ctx.inflate_dickson(v, 2 * s)?;
        let mut log = Vec::new();
        for t in 1..=2u64 {
            let target = ctx.kappa(r)?.pow(t * p_pow(p, s)).try_mul(&d2s)?;
            let label = format!("kappa{r}^{} D_{}(V)", t * p_pow(p, s), 2 * s);
            membership_check(&mut ck, &solver, &label, &target, mode == Mode::Faithful, &mut log)?;
        }
        ck.set_param("membership", log);
    }
    Ok(ck.finish())
}

pub fn kappa_integral(ctx: &Arc<ChernContext>, mode: Mode, r: usize, s: usize) -> Result<VerificationReport> {
    let n = ctx.n();
    if r >= n || s > n {
        return usage(format!("need 0 <= r <= n-1 and 0 <= s <= n, got r = {r}, s = {s}"));
    }
    let space = ctx.space();
    let family = space.z_family(s)?;
    let mut ck = base(ctx, "kappa_integral")
        .param("r", r)
        .param("s", s)
        .param("factors", family.len());
    let kpow = ctx.kappa(r)?.pow(p_pow(ctx.p(), n - s));
    let sign = mode.sign(ctx.p());
    let factors: Vec<Result<QuillenClass>> = family
        .par_iter()
        .map(|v| {
            let d = ctx.inflate_dickson(&space.perp(v), n + r - s)?;
            kpow.try_sub(&d.scale(sign))
        })
        .collect();
    let mut prod = ctx.one();
    for fac in factors {
        prod = prod.try_mul(&fac?)?;
    }
    ck.zero(format!("product over Z_{s} vanishes"), &prod)?;
    Ok(ck.finish())
}

pub fn kappa_integral_membership(ctx: &Arc<ChernContext>, mode: Mode, r: usize) -> Result<VerificationReport> {
    let n = ctx.n();
    if r >= n {
        return usage(format!("kappa index {r} outside 0..{n}"));
    }
    let t = 1u64 << (n - r);
    let e = t * p_pow(ctx.p(), r);
    let mut ck = base(ctx, "kappa_integral_membership").param("r", r).param("t", t);
    let solver = MembershipSolver::new(ctx);
    let mut log = Vec::new();
    let target = ctx.kappa(r)?.pow(e);
    membership_check(&mut ck, &solver, &format!("kappa{r}^{e}"), &target, mode == Mode::Faithful, &mut log)?;
    ck.set_param("membership", log);
    Ok(ck.finish())
}

pub fn mt_properties(ctx: &Arc<ChernContext>, mode: Mode) -> Result<VerificationReport> {
    let z = ctx.z();
    let k = z.len();
    let nl = ctx.lagrangians().len();
    let subsets = 1usize << k;
    let mut ck = base(ctx, "mt_properties").param("subsets", subsets);
    let mut sets: Vec<Vec<bool>> = Vec::with_capacity(subsets);
    for mask in 0..subsets {
        let t: Vec<Subspace> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| z[i].clone()).collect();
        let ind = ctx.indicator(&t)?;
        sets.push((0..nl).map(|li| ind.contains(li)).collect());
    }
    let full = subsets - 1;
    let single = |i: usize| &sets[1 << i];
    // Cover.
    for li in 0..nl {
        ck.fact("the I_V cover every Lagrangian", (0..k).any(|i| single(i)[li]), || format!("Lagrangian {li} uncovered"));
    }
    // Intersection law.
    for t1 in 0..subsets {
        for t2 in 0..subsets {
            let meet: Vec<bool> = sets[t1].iter().zip(&sets[t2]).map(|(a, b)| *a && *b).collect();
            ck.fact("I_T1 meet I_T2 = I_(T1 u T2)", meet == sets[t1 | t2], || format!("T1 = {t1:b}, T2 = {t2:b}"));
        }
    }
    // prod_V (1 - chi_V) vanishes pointwise; the perturbed control uses 1 + chi_V.
    let sign: i64 = if mode == Mode::Faithful { -1 } else { 1 };
    for li in 0..nl {
        let value: i64 = (0..k).map(|i| 1 + sign * single(i)[li] as i64).product();
        ck.record((value != 0).then(|| Counterexample {
            check: "prod_V (1 - chi_V) = 0".into(),
            lagrangian_index: Some(li),
            polynomial: value.to_string(),
        }));
    }
    ck.fact("I_Z is nonempty", sets[full].iter().any(|&m| m), || "I_Z is empty".into());
    let (xw, yw) = ctx.space().mt_witnesses();
    let index = |w: &Subspace| ctx.lagrangians().iter().position(|l| l == w);
    match index(&xw) {
        Some(li) => ck.fact("X-witness lies in I_Z", sets[full][li], || format!("Lagrangian {li}")),
        None => ck.fact("X-witness is a Lagrangian", false, || format!("{:?}", xw.basis())),
    }
    // Y-witness for V = span(A*_1..A*_n), which is Z member 0.
    match index(&yw) {
        Some(li) => ck.fact(
            "Y-witness lies in I_(Z \\ V) but not in I_Z",
            sets[full & !1][li] && !sets[full][li],
            || format!("Lagrangian {li}"),
        ),
        None => ck.fact("Y-witness is a Lagrangian", false, || format!("{:?}", yw.basis())),
    }
    for i in 0..k {
        let smaller = &sets[full & !(1 << i)];
        let strict = smaller.iter().zip(&sets[full]).all(|(a, b)| *a || !*b) && smaller != &sets[full];
        ck.fact("I_(Z \\ V) strictly contains I_Z", strict, || format!("V = Z member {i}"));
    }
    for t1 in 0..subsets {
        for t2 in t1 + 1..subsets {
            ck.fact("I_T1 = I_T2 only if T1 = T2", sets[t1] != sets[t2], || format!("T1 = {t1:b}, T2 = {t2:b}"));
        }
    }
    Ok(ck.finish())
}

/// Exponent vectors `(a_0, .., a_{n-1}, b)` of `kappa^a zeta^b` with
/// polynomial degree at most `bound`, in lexicographic order.
fn kappa_zeta_monomials(p: u32, n: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut degs: Vec<u64> = (0..n).map(|r| p_pow(p, n) - p_pow(p, r)).collect();
    degs.push(p_pow(p, n));
    let mut out = Vec::new();
    fn rec(degs: &[u64], left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == degs.len() {
            out.push(cur.clone());
            return;
        }
        let d = degs[cur.len()];
        for e in 0..=left / d {
            cur.push(e);
            rec(degs, left - e * d, cur, out);
            cur.pop();
        }
    }
    rec(&degs, bound, &mut Vec::new(), &mut out);
    out
}

fn monomial_label(e: &[u64]) -> String {
    let n = e.len() - 1;
    let mut parts: Vec<String> = Vec::new();
    for (i, &x) in e.iter().enumerate().filter(|(_, &x)| x > 0) {
        let name = if i < n { format!("kappa{i}") } else { "zeta".into() };
        parts.push(if x == 1 { name } else { format!("{name}^{x}") });
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Coefficient vectors of the given classes over a shared monomial index,
/// restricted to the listed Lagrangians.
fn vectorize(classes: &[QuillenClass], lagrangians: &[usize]) -> Vec<Vec<u32>> {
    use std::collections::BTreeMap;
    let mut index: BTreeMap<(usize, crate::poly::Monomial), usize> = BTreeMap::new();
    for c in classes {
        for &li in lagrangians {
            for &(m, _) in c.component(li).terms() {
                let next = index.len();
                index.entry((li, m)).or_insert(next);
            }
        }
    }
    classes
        .iter()
        .map(|c| {
            let mut row = vec![0u32; index.len()];
            for &li in lagrangians {
                for &(m, coef) in c.component(li).terms() {
                    row[index[&(li, m)]] = coef;
                }
            }
            row
        })
        .collect()
}

pub fn independence(ctx: &Arc<ChernContext>, mode: Mode, bound: u64) -> Result<VerificationReport> {
    if bound == 0 {
        return usage("degree bound must be at least 1");
    }
    let n = ctx.n();
    let exps = kappa_zeta_monomials(ctx.p(), n, bound);
    let gens: Vec<QuillenClass> = (0..n)
        .map(|r| ctx.kappa(r))
        .chain(std::iter::once(Ok(ctx.zeta())))
        .collect::<Result<_>>()?;
    let mut classes: Vec<QuillenClass> = exps
        .par_iter()
        .map(|e| {
            e.iter()
                .zip(&gens)
                .fold(ctx.one(), |acc, (&k, g)| &acc * &g.pow(k))
        })
        .collect();
    let mut labels: Vec<String> = exps.iter().map(|e| monomial_label(e)).collect();
    if mode == Mode::Perturbed && classes.len() >= 2 {
        // A fabricated dependency: the sum of the first two monomials.
        classes.push(&classes[0] + &classes[1]);
        labels.push(format!("({} + {})", labels[0], labels[1]));
    }
    let mut ck = base(ctx, "independence")
        .param("degree_bound", bound)
        .param("monomials", classes.len());
    let f = ctx.field();
    let nl = ctx.lagrangians().len();
    let render = |dep: &[u32]| -> String {
        dep.iter()
            .zip(&labels)
            .filter(|(&c, _)| c != 0)
            .map(|(c, l)| format!("{c}*{l}"))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    let all: Vec<usize> = (0..nl).collect();
    let rows = vectorize(&classes, &all);
    match linalg::dependency(f, &rows) {
        None => ck.fact("independent as classes", true, String::new),
        Some(dep) => ck.fact("independent as classes", false, || render(&dep)),
    }
    let per: Vec<Option<(usize, Vec<u32>)>> = (0..nl)
        .into_par_iter()
        .map(|li| linalg::dependency(f, &vectorize(&classes, &[li])).map(|d| (li, d)))
        .collect();
    for res in per {
        ck.record(res.map(|(li, dep)| Counterexample {
            check: "independent after restriction to one Lagrangian".into(),
            lagrangian_index: Some(li),
            polynomial: render(&dep),
        }));
    }
    Ok(ck.finish())
}

#[cfg(test)]
mod tests;
