//! Brute-force model of the extraspecial group of order p^{2n+1} and
//! exponent p, used to cross-check the structure the symbolic model relies on.

use std::collections::HashSet;

use rand::Rng;
use rayon::prelude::*;

use crate::cyclotomic::CyclotomicInteger;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::identities::{checker, rng};
use crate::report::{Counterexample, Mode, VerificationReport};
use crate::subspace::Subspace;
use crate::symplectic::SymplecticSpace;

/// Largest group the oracle will enumerate.
pub const MAX_ORDER: u64 = 100_000;

/// Coordinates of the largest admissible group (3^11 exceeds the order cap).
const MAX_COORDS: usize = 11;

/// Work cap for the character inner products (classes cubed times the cost
/// of one cyclotomic product).
pub const CHARACTER_BUDGET: u64 = 300_000_000;

type Grown = (Vec<usize>, Vec<usize>);

/// `(a, b, c)` with `a, b` in F_p^n and `c` in F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c: u32,
}

/// The group law `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a.b')`.
#[derive(Clone, Copy, Debug)]
pub struct ExtraspecialGroup {
    field: PrimeField,
    n: usize,
}

impl ExtraspecialGroup {
    pub fn new(p: u32, n: usize) -> Result<ExtraspecialGroup> {
        let field = PrimeField::new(p)?;
        if n == 0 {
            return Err(Error::Usage("n must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(2 * n as u32 + 1).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(Error::Envelope(format!(
                "group of order {p}^{} exceeds the brute-force limit {MAX_ORDER}",
                2 * n + 1
            )));
        }
        Ok(ExtraspecialGroup { field, n })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        (self.field.p() as usize).pow(2 * self.n as u32 + 1)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            a: vec![0; self.n],
            b: vec![0; self.n],
            c: 0,
        }
    }

    fn dot(&self, x: &[u32], y: &[u32]) -> u32 {
        let f = self.field;
        x.iter().zip(y).fold(0, |acc, (&u, &v)| f.add(acc, f.mul(u, v)))
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let f = self.field;
        GroupElement {
            a: g.a.iter().zip(&h.a).map(|(&x, &y)| f.add(x, y)).collect(),
            b: g.b.iter().zip(&h.b).map(|(&x, &y)| f.add(x, y)).collect(),
            c: f.add(f.add(g.c, h.c), self.dot(&g.a, &h.b)),
        }
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let f = self.field;
        // (a,b,c)^{-1} = (-a, -b, -c + a.b)
        GroupElement {
            a: g.a.iter().map(|&x| f.neg(x)).collect(),
            b: g.b.iter().map(|&x| f.neg(x)).collect(),
            c: f.add(f.neg(g.c), self.dot(&g.a, &g.b)),
        }
    }

    pub fn pow(&self, g: &GroupElement, k: u64) -> GroupElement {
        (0..k).fold(self.identity(), |acc, _| self.mul(&acc, g))
    }

    /// `a, b, c` laid out as one coordinate vector.
    pub fn coords(&self, g: &GroupElement) -> Vec<u32> {
        g.a.iter().chain(&g.b).chain(std::iter::once(&g.c)).copied().collect()
    }

    pub fn unflatten(&self, x: &[u32]) -> GroupElement {
        let n = self.n;
        GroupElement {
            a: x[..n].to_vec(),
            b: x[n..2 * n].to_vec(),
            c: x[2 * n],
        }
    }

    // Allocation-free versions of `mul` and `inverse` on coordinate vectors.
    fn mul_flat(&self, x: &[u32], y: &[u32], out: &mut [u32]) {
        let (f, n) = (self.field, self.n);
        for i in 0..2 * n {
            out[i] = f.add(x[i], y[i]);
        }
        out[2 * n] = f.add(f.add(x[2 * n], y[2 * n]), self.dot(&x[..n], &y[n..2 * n]));
    }

    fn inverse_flat(&self, x: &[u32], out: &mut [u32]) {
        let (f, n) = (self.field, self.n);
        for i in 0..2 * n {
            out[i] = f.neg(x[i]);
        }
        out[2 * n] = f.add(f.neg(x[2 * n]), self.dot(&x[..n], &x[n..2 * n]));
    }

    /// `[g, h] = g h g^{-1} h^{-1}`.
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let gh = self.mul(g, h);
        let ghg = self.mul(&gh, &self.inverse(g));
        self.mul(&ghg, &self.inverse(h))
    }

    /// Image in `E = G/N`.
    pub fn psi(&self, g: &GroupElement) -> Vec<u32> {
        g.a.iter().chain(&g.b).copied().collect()
    }

    pub fn is_central(&self, g: &GroupElement) -> bool {
        g.a.iter().chain(&g.b).all(|&x| x == 0)
    }

    /// Elements ordered by the digits of `(a, b, c)`.
    pub fn elements(&self) -> Vec<GroupElement> {
        let p = self.field.p() as usize;
        let n = self.n;
        (0..self.order())
            .map(|mut idx| {
                let mut digits = vec![0u32; 2 * n + 1];
                for d in digits.iter_mut().rev() {
                    *d = (idx % p) as u32;
                    idx /= p;
                }
                GroupElement {
                    a: digits[..n].to_vec(),
                    b: digits[n..2 * n].to_vec(),
                    c: digits[2 * n],
                }
            })
            .collect()
    }

    pub fn index(&self, g: &GroupElement) -> usize {
        let p = self.field.p() as usize;
        g.a.iter()
            .chain(&g.b)
            .chain(std::iter::once(&g.c))
            .fold(0, |acc, &d| acc * p + d as usize)
    }

    fn space(&self) -> SymplecticSpace {
        SymplecticSpace::new(self.field, self.n).expect("n >= 1")
    }

    /// Every maximal elementary abelian subgroup, as sorted element indices.
    /// Subgroups are grown one commuting element at a time from the trivial
    /// group; an extension by `x` is skipped when `x` already lies in an
    /// extension found for the same subgroup.
    pub fn maximal_abelians(&self) -> Vec<Vec<usize>> {
        let elements = self.elements();
        let order = elements.len();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        // (members, generators) of each subgroup in the current layer.
        let mut layer: Vec<Grown> = vec![(vec![0], vec![])];
        let mut maximal = Vec::new();
        while !layer.is_empty() {
            let expanded: Vec<(Vec<usize>, Vec<Grown>)> = layer
                .par_iter()
                .map(|(members, gens)| {
                    let mut covered = vec![false; order];
                    for &m in members {
                        covered[m] = true;
                    }
                    let mut children = Vec::new();
                    for x in 0..order {
                        if covered[x] {
                            continue;
                        }
                        let ex = &elements[x];
                        let commutes = gens.iter().all(|&g| {
                            let c = self.commutator(ex, &elements[g]);
                            self.is_central(&c) && c.c == 0
                        });
                        if !commutes {
                            continue;
                        }
                        let mut next = Vec::with_capacity(members.len() * self.field.p() as usize);
                        let mut power = self.identity();
                        for _ in 0..self.field.p() {
                            for &m in members {
                                next.push(self.index(&self.mul(&elements[m], &power)));
                            }
                            power = self.mul(&power, ex);
                        }
                        next.sort_unstable();
                        for &m in &next {
                            covered[m] = true;
                        }
                        let mut g2 = gens.clone();
                        g2.push(x);
                        children.push((next, g2));
                    }
                    (members.clone(), children)
                })
                .collect();
            let mut next_layer = Vec::new();
            for (members, children) in expanded {
                if children.is_empty() {
                    maximal.push(members);
                }
                for (m, g) in children {
                    if seen.insert(m.clone()) {
                        next_layer.push((m, g));
                    }
                }
            }
            layer = next_layer;
        }
        maximal.sort();
        maximal
    }
}

/// Commutators land in the center and equal `b(psi g, psi h)`; the form is
/// nondegenerate; group axioms and exponent `p` hold.
pub fn commutator_form_check(p: u32, n: usize, mode: Mode, seed: u64) -> Result<VerificationReport> {
    let group = ExtraspecialGroup::new(p, n)?;
    let space = group.space();
    let f = group.field();
    let elements = group.elements();
    let order = elements.len();
    let mut ck = checker(p, n, "commutator_form").param("order", order);
    let id = group.identity();
    // Axioms: identity, inverses, exponent p, associativity.
    for g in &elements {
        ck.fact("identity", group.mul(g, &id) == *g && group.mul(&id, g) == *g, || format!("{g:?}"));
        ck.fact("inverse", group.mul(g, &group.inverse(g)) == id, || format!("{g:?}"));
        ck.fact("exponent p", group.pow(g, p as u64) == id, || format!("{g:?}"));
    }
    let w = 2 * n + 1;
    let flat: Vec<u32> = elements.iter().flat_map(|g| group.coords(g)).collect();
    let at = |i: usize| &flat[i * w..(i + 1) * w];
    let associative = |&[x, y, z]: &[usize; 3]| {
        let (mut xy, mut yz, mut l, mut r) = ([0u32; MAX_COORDS], [0; MAX_COORDS], [0; MAX_COORDS], [0; MAX_COORDS]);
        group.mul_flat(at(x), at(y), &mut xy[..w]);
        group.mul_flat(&xy[..w], at(z), &mut l[..w]);
        group.mul_flat(at(y), at(z), &mut yz[..w]);
        group.mul_flat(at(x), &yz[..w], &mut r[..w]);
        l == r
    };
    let bad = if order.pow(3) <= 20_000_000 {
        ck.set_param("associativity", "exhaustive");
        (0..order.pow(3))
            .into_par_iter()
            .map(|t| [t % order, t / order % order, t / order / order])
            .find_first(|t| !associative(t))
    } else {
        ck = ck.seed(seed);
        ck.set_param("associativity", "sampled 200000 triples");
        let mut g_rng = rng(seed, 200);
        let triples: Vec<[usize; 3]> = (0..200_000)
            .map(|_| [g_rng.gen_range(0..order), g_rng.gen_range(0..order), g_rng.gen_range(0..order)])
            .collect();
        triples.into_par_iter().find_first(|t| !associative(t))
    };
    ck.fact("associativity", bad.is_none(), || format!("{bad:?}"));

    let sign = mode.sign(p);
    let failures: Vec<Option<Counterexample>> = flat
        .par_chunks(w)
        .map(|g| {
            let mut nondegenerate = g[..2 * n].iter().all(|&x| x == 0);
            let (mut gi, mut s, mut t, mut c) = ([0u32; MAX_COORDS], [0; MAX_COORDS], [0; MAX_COORDS], [0; MAX_COORDS]);
            let mut hi = [0u32; MAX_COORDS];
            group.inverse_flat(g, &mut gi[..w]);
            for h in flat.chunks(w) {
                group.inverse_flat(h, &mut hi[..w]);
                group.mul_flat(g, h, &mut s[..w]);
                group.mul_flat(&s[..w], &gi[..w], &mut t[..w]);
                group.mul_flat(&t[..w], &hi[..w], &mut c[..w]);
                let want = f.mul(sign, space.form(&g[..2 * n], &h[..2 * n]));
                if c[..2 * n].iter().any(|&x| x != 0) || c[2 * n] != want {
                    return Some(Counterexample {
                        check: "[g, h] = (0, 0, b(psi g, psi h))".into(),
                        lagrangian_index: None,
                        polynomial: format!("g = {:?}, h = {:?}, [g, h] = {:?}", group.unflatten(g), group.unflatten(h), group.unflatten(&c[..w])),
                    });
                }
                nondegenerate |= c[2 * n] != 0;
            }
            (!nondegenerate).then(|| Counterexample {
                check: "form is nondegenerate".into(),
                lagrangian_index: None,
                polynomial: format!("{:?} commutes with everything", group.unflatten(g)),
            })
        })
        .collect();
    for fail in failures {
        ck.record(fail);
    }
    Ok(ck.finish())
}

/// The maximal elementary abelian subgroups match the Lagrangians: same
/// count, each of order `p^{n+1}`, each the full preimage of its image.
pub fn maximal_abelians_check(p: u32, n: usize, mode: Mode) -> Result<VerificationReport> {
    let group = ExtraspecialGroup::new(p, n)?;
    let space = group.space();
    let f = group.field();
    let elements = group.elements();
    let lagrangians = space.lagrangians();
    let found = group.maximal_abelians();
    let mut ck = checker(p, n, "maximal_abelians")
        .param("subgroups", found.len())
        .param("lagrangians", lagrangians.len());
    ck.fact("count matches the Lagrangians", found.len() == lagrangians.len(), || {
        format!("{} subgroups, {} Lagrangians", found.len(), lagrangians.len())
    });
    let rank_order = (p as usize).pow(n as u32 + 1);
    let mut images = HashSet::new();
    // The perturbed control tests isotropy for a + b instead of a - b.
    let form = |u: &[u32], v: &[u32]| -> u32 {
        let s = space.form(u, v);
        match mode {
            Mode::Faithful => s,
            Mode::Perturbed => {
                let twisted: u32 = (0..n).fold(0, |acc, i| f.add(acc, f.mul(u[n + i], v[i])));
                f.add(s, f.mul(2, twisted))
            }
        }
    };
    for (k, m) in found.iter().enumerate() {
        ck.fact("order p^{n+1}", m.len() == rank_order, || format!("subgroup {k} has order {}", m.len()));
        let psi: Vec<Vec<u32>> = m.iter().map(|&i| group.psi(&elements[i])).collect();
        let image = Subspace::span(f, 2 * n, &psi)?;
        let isotropic = image
            .basis()
            .iter()
            .all(|u| image.basis().iter().all(|v| form(u, v) == 0));
        ck.fact("psi(M) is Lagrangian", image.dim() == n && isotropic, || {
            format!("subgroup {k}: psi(M) = {:?}", image.basis())
        });
        let preimage = elements.iter().filter(|g| image.contains(&group.psi(g))).count();
        ck.fact("M = psi^{-1}(psi(M))", preimage == m.len(), || format!("subgroup {k}"));
        images.insert(image);
    }
    ck.fact("M -> psi(M) is injective onto the Lagrangians", images.len() == lagrangians.len() && lagrangians.iter().all(|l| images.contains(l)), || {
        format!("{} distinct images", images.len())
    });
    Ok(ck.finish())
}

/// Values on `group.elements()` of the character induced from `w^{jc}` on
/// the abelian subgroup `{(a, 0, c)}`:
/// `chi_j(g) = (1/|M|) sum_x lambda(x g x^{-1})`, with `lambda` extended by 0.
pub fn induced_character(group: &ExtraspecialGroup, j: u32) -> Vec<CyclotomicInteger> {
    let f = group.field();
    let p = f.p();
    let elements = group.elements();
    let subgroup_order = (p as i64).pow(group.n() as u32 + 1);
    elements
        .par_iter()
        .map(|g| {
            let mut counts = vec![0i64; p as usize];
            for x in &elements {
                let conj = group.mul(&group.mul(x, g), &group.inverse(x));
                if conj.b.iter().all(|&v| v == 0) {
                    counts[f.mul(j, conj.c) as usize] += 1;
                }
            }
            CyclotomicInteger::from_powers(p, &counts)
                .div_exact(subgroup_order)
                .expect("induced character values are integral")
        })
        .collect()
}

/// Rough operation count of [`verify_induced_characters`].
pub fn character_cost(p: u32, n: usize) -> u64 {
    let classes = (p as u64).pow(2 * n as u32) + p as u64 - 1;
    classes.pow(3) * (p as u64 - 1).pow(2)
}

/// Induces `w^{jc}` from `{(a, 0, c)}` for each `j`, checks the value
/// formula on every element, the restriction to every maximal elementary
/// abelian subgroup, orthonormality against the linear characters, and the
/// degree census.
pub fn verify_induced_characters(p: u32, n: usize, mode: Mode) -> Result<VerificationReport> {
    let group = ExtraspecialGroup::new(p, n)?;
    let cost = character_cost(p, n);
    if cost > CHARACTER_BUDGET {
        return Err(Error::Envelope(format!(
            "character check at p = {p}, n = {n} needs about {cost} operations (budget {CHARACTER_BUDGET})"
        )));
    }
    let f = group.field();
    let space = group.space();
    let elements = group.elements();
    let order = elements.len() as i64;
    let pn = (p as i64).pow(n as u32);
    let mut ck = checker(p, n, "induced_characters").param("order", order);

    let induced: Vec<Vec<CyclotomicInteger>> = (1..p).map(|j| induced_character(&group, j)).collect();

    let sign = match mode {
        Mode::Faithful => 1,
        Mode::Perturbed => -1,
    };
    for (j, chi) in (1..p).zip(&induced) {
        for (g, value) in elements.iter().zip(chi) {
            let want = if group.is_central(g) {
                CyclotomicInteger::omega_pow(p, (j * g.c) as i64).scale(sign * pn)
            } else {
                CyclotomicInteger::zero(p)
            };
            if *value != want {
                ck.fail(Counterexample {
                    check: format!("chi_{j}(g) = p^n chi-hat_{j}(g) on N and 0 elsewhere"),
                    lagrangian_index: None,
                    polynomial: format!("g = {g:?}: {value} vs {want}"),
                });
            }
        }
        ck.record(None);
    }

    // Restriction to M = psi^{-1}(I): the sum of the p^n linear characters
    // w^{j phi(m) + u(m)} with phi(a, b, c) = c - a.b / 2 and u in I*.
    let half = f.inv(2).unwrap();
    for (li, lag) in space.lagrangians().iter().enumerate() {
        let pivots = lag.pivots();
        for (j, chi) in (1..p).zip(&induced) {
            let mut ok = true;
            for (g, value) in elements.iter().zip(chi) {
                let e = group.psi(g);
                if !lag.contains(&e) {
                    continue;
                }
                let t: Vec<u32> = pivots.iter().map(|&c| e[c]).collect();
                let ab = g.a.iter().zip(&g.b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                let phi = f.sub(g.c, f.mul(ab, half));
                let mut counts = vec![0i64; p as usize];
                for u in crate::subspace::coefficient_tuples(f, n) {
                    let ut = u.iter().zip(&t).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                    counts[f.add(f.mul(j, phi), ut) as usize] += 1;
                }
                ok &= CyclotomicInteger::from_powers(p, &counts) == *value;
            }
            ck.record((!ok).then(|| Counterexample {
                check: format!("Res_M chi_{j} is the sum over the coset of linear characters"),
                lagrangian_index: Some(li),
                polynomial: String::new(),
            }));
        }
    }

    // Class representatives: (0,0,c) and (a,b,0) with (a,b) != 0.
    let mut reps: Vec<(usize, i64)> = Vec::new();
    for (idx, g) in elements.iter().enumerate() {
        if group.is_central(g) {
            reps.push((idx, 1));
        } else if g.c == 0 {
            reps.push((idx, p as i64));
        }
    }
    let mut table: Vec<Vec<CyclotomicInteger>> = Vec::new();
    for u in crate::subspace::coefficient_tuples(f, 2 * n) {
        table.push(
            reps.iter()
                .map(|&(idx, _)| {
                    let e = group.psi(&elements[idx]);
                    let k = u.iter().zip(&e).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                    CyclotomicInteger::omega_pow(p, k as i64)
                })
                .collect(),
        );
    }
    for chi in &induced {
        table.push(reps.iter().map(|&(idx, _)| chi[idx].clone()).collect());
    }
    ck.fact("one character per conjugacy class", table.len() == reps.len(), || {
        format!("{} characters, {} classes", table.len(), reps.len())
    });
    let conj: Vec<Vec<CyclotomicInteger>> = table.iter().map(|row| row.iter().map(|v| v.conj()).collect()).collect();
    let bad: Option<(usize, usize, String)> = (0..table.len())
        .into_par_iter()
        .flat_map_iter(|a| (a..table.len()).map(move |b| (a, b)))
        .map(|(a, b)| {
            let mut acc = CyclotomicInteger::zero(p);
            for (k, &(_, size)) in reps.iter().enumerate() {
                acc = &acc + &(&table[a][k] * &conj[b][k]).scale(size);
            }
            let want = if a == b { order } else { 0 };
            (acc.as_integer() != Some(want)).then(|| (a, b, acc.to_string()))
        })
        .find_first(Option::is_some)
        .flatten();
    ck.fact("characters are orthonormal", bad.is_none(), || {
        let (a, b, v) = bad.clone().unwrap();
        format!("|G| <chi_{a}, chi_{b}> = {v}")
    });
    let degrees: i64 = table
        .iter()
        .map(|row| row[0].as_integer().unwrap_or(0).pow(2))
        .sum();
    ck.fact("sum of squared degrees is |G|", degrees == order, || format!("{degrees} != {order}"));
    let big = induced.iter().filter(|chi| chi[0].as_integer() == Some(pn)).count();
    ck.fact("p - 1 characters of degree p^n", big == p as usize - 1, || format!("{big}"));
    ck = ck.param("characters", table.len());
    Ok(ck.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn group_law_basics() {
        let g = ExtraspecialGroup::new(3, 1).unwrap();
        let e1 = GroupElement { a: vec![1], b: vec![0], c: 0 };
        let f1 = GroupElement { a: vec![0], b: vec![1], c: 0 };
        assert_eq!(g.commutator(&e1, &f1), GroupElement { a: vec![0], b: vec![0], c: 1 });
        assert_eq!(g.commutator(&e1, &e1), g.identity());
        assert_eq!(g.elements().len(), 27);
        for (i, x) in g.elements().iter().enumerate() {
            assert_eq!(g.index(x), i);
        }
        assert!(matches!(ExtraspecialGroup::new(7, 3), Err(Error::Envelope(_))));
    }

    #[test]
    fn maximal_abelian_counts() {
        let g = ExtraspecialGroup::new(3, 1).unwrap();
        let found = g.maximal_abelians();
        assert_eq!(found.len(), 4);
        assert!(found.iter().all(|m| m.len() == 9));
    }

    #[test]
    fn checks_pass_and_controls_fail() {
        for (p, n) in [(3, 1), (5, 1)] {
            assert_eq!(commutator_form_check(p, n, Mode::Faithful, 0).unwrap().status, Status::Pass);
            assert_eq!(commutator_form_check(p, n, Mode::Perturbed, 0).unwrap().status, Status::Fail);
            assert_eq!(maximal_abelians_check(p, n, Mode::Faithful).unwrap().status, Status::Pass);
            assert_eq!(maximal_abelians_check(p, n, Mode::Perturbed).unwrap().status, Status::Fail);
            let r = verify_induced_characters(p, n, Mode::Faithful).unwrap();
            assert_eq!(r.status, Status::Pass, "{r}");
            assert_eq!(verify_induced_characters(p, n, Mode::Perturbed).unwrap().status, Status::Fail);
        }
    }
}
