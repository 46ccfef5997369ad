//! Independent routes to values the library computes, plus a few frozen
//! reference values obtained from them.

use chern_core::cyclotomic::CyclotomicInteger;
use chern_core::dickson::{dickson_all, vanishing_polynomial};
use chern_core::group::{induced_character, ExtraspecialGroup};
use chern_core::subspace::{coefficient_tuples, enumerate_subspaces};
use chern_core::{ChernContext, PrimeField, SparsePoly, Subspace, SymplecticSpace};

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    if k == 0 {
        return vec![(vec![], true)];
    }
    let mut out = Vec::new();
    for (perm, even) in permutations(k - 1) {
        // Insert k - 1 at every position; moving it left by d swaps d times.
        for pos in 0..=perm.len() {
            let mut q = perm.clone();
            q.insert(pos, k - 1);
            let swaps = perm.len() - pos;
            out.push((q, even == (swaps % 2 == 0)));
        }
    }
    out
}

/// `det [x_k^{p^i}]` over the first `k` of `nvars` variables.
fn moore(field: PrimeField, nvars: usize, k: usize) -> SparsePoly {
    let p = field.p() as u64;
    let mut acc = SparsePoly::zero(field, nvars);
    for (perm, even) in permutations(k) {
        let term = perm.iter().enumerate().fold(SparsePoly::one(field, nvars), |t, (i, &col)| {
            &t * &SparsePoly::var(field, nvars, col).pow(p.pow(i as u32))
        });
        acc = if even { &acc + &term } else { &acc - &term };
    }
    acc
}

#[test]
fn moore_quotient_is_the_vanishing_polynomial() {
    for (p, m) in [(3u32, 1usize), (3, 2), (5, 2), (3, 3)] {
        let field = PrimeField::new(p).unwrap();
        let num = moore(field, m + 1, m + 1);
        let den = moore(field, m + 1, m);
        let quotient = num.div_exact(&den).unwrap().expect("Moore determinants divide");
        assert_eq!(quotient, vanishing_polynomial(&Subspace::full(field, m)), "p={p} m={m}");
    }
}

#[test]
fn rank_two_dickson_invariants_in_closed_form() {
    for p in [3u32, 5, 7] {
        let field = PrimeField::new(p).unwrap();
        let q = p as u64;
        let x = SparsePoly::var(field, 2, 0);
        let y = SparsePoly::var(field, 2, 1);
        let l = &(&x * &y.pow(q)) - &(&y * &x.pow(q));
        let top = &(&x * &y.pow(q * q)) - &(&y * &x.pow(q * q));
        let d = dickson_all(&Subspace::full(field, 2)).unwrap();
        assert_eq!(d[0], l.pow(q - 1));
        assert_eq!(Some(d[1].clone()), top.div_exact(&l).unwrap());
    }
}

/// Lagrangians by filtering every n-dimensional subspace with a form
/// written out independently of the library.
fn naive_lagrangians(p: u32, n: usize) -> Vec<Subspace> {
    let field = PrimeField::new(p).unwrap();
    let form = |u: &[u32], v: &[u32]| -> i64 {
        (0..n).map(|i| u[i] as i64 * v[n + i] as i64 - u[n + i] as i64 * v[i] as i64).sum::<i64>()
    };
    enumerate_subspaces(field, 2 * n, n)
        .into_iter()
        .filter(|s| {
            s.basis()
                .iter()
                .all(|u| s.basis().iter().all(|v| form(u, v).rem_euclid(p as i64) == 0))
        })
        .collect()
}

#[test]
fn lagrangian_counts_three_ways() {
    for (p, n, want) in [(3u32, 1usize, 4usize), (3, 2, 40), (5, 1, 6)] {
        let naive = naive_lagrangians(p, n);
        let space = SymplecticSpace::new(PrimeField::new(p).unwrap(), n).unwrap();
        let mut model = space.lagrangians();
        model.sort();
        let mut naive_sorted = naive.clone();
        naive_sorted.sort();
        assert_eq!(naive.len(), want);
        assert_eq!(model, naive_sorted);
        let group = ExtraspecialGroup::new(p, n).unwrap();
        assert_eq!(group.maximal_abelians().len(), want);
    }
}

/// Per Lagrangian, `alpha -> lambda t`, `beta -> mu t` and `kappa_0 -> t^{p-1}`,
/// so the square identity reduces to a scalar identity over F_p^2.
#[test]
fn rank_one_square_identity_by_scalars() {
    for p in [3u32, 5, 7] {
        let f = PrimeField::new(p).unwrap();
        let e = p as u64 - 1;
        let mut points = 0;
        for l in 0..p {
            for m in 0..p {
                if (l, m) == (0, 0) {
                    continue;
                }
                let v = f.add(f.sub(f.pow(l, 2 * e), f.mul(f.pow(l, e), f.pow(m, e))), f.pow(m, 2 * e));
                assert_eq!(v, 1);
                points += 1;
            }
        }
        assert_eq!(points, p * p - 1);

        let ctx = ChernContext::new(p, 1).unwrap();
        let (a, b, k) = (ctx.alpha(1).unwrap(), ctx.beta(1).unwrap(), ctx.kappa(0).unwrap());
        let k2 = k.pow(2);
        for li in 0..ctx.lagrangians().len() {
            let lambda = a.component(li).coefficient(&[1, 0]);
            let mu = b.component(li).coefficient(&[1, 0]);
            assert!((lambda, mu) != (0, 0));
            assert_eq!(k2.component(li).coefficient(&[2 * e as u32, 0]), 1);
            assert_eq!(k2.component(li).num_terms(), 1);
        }
    }
}

/// The Schroedinger model: `rho(a, b, c) = w^{jc} M_b T_a` on functions of
/// `u` in F_p^n, with `T_a f(u) = f(u + a)` and `M_b f(u) = w^{j b.u} f(u)`.
/// Each matrix is monomial, stored as `(target basis index, phase exponent)`.
struct Schroedinger {
    field: PrimeField,
    j: u32,
    points: Vec<Vec<u32>>,
}

impl Schroedinger {
    fn index(&self, u: &[u32]) -> usize {
        let p = self.field.p() as usize;
        u.iter().fold(0, |acc, &x| acc * p + x as usize)
    }

    fn matrix(&self, a: &[u32], b: &[u32], c: u32) -> Vec<(usize, u32)> {
        let f = self.field;
        self.points
            .iter()
            .map(|w| {
                let target: Vec<u32> = w.iter().zip(a).map(|(&x, &y)| f.sub(x, y)).collect();
                let bu = b.iter().zip(&target).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                (self.index(&target), f.mul(self.j, f.add(c, bu)))
            })
            .collect()
    }

    fn compose(&self, g: &[(usize, u32)], h: &[(usize, u32)]) -> Vec<(usize, u32)> {
        h.iter()
            .map(|&(mid, ph)| (g[mid].0, self.field.add(g[mid].1, ph)))
            .collect()
    }

    fn trace(&self, g: &[(usize, u32)]) -> CyclotomicInteger {
        let p = self.field.p();
        let mut counts = vec![0i64; p as usize];
        for (w, &(t, ph)) in g.iter().enumerate() {
            if t == w {
                counts[ph as usize] += 1;
            }
        }
        CyclotomicInteger::from_powers(p, &counts)
    }
}

#[test]
fn induced_characters_are_schroedinger_traces() {
    for (p, n) in [(3u32, 1usize), (5, 1), (3, 2)] {
        let group = ExtraspecialGroup::new(p, n).unwrap();
        let field = group.field();
        let elements = group.elements();
        for j in 1..p {
            let rep = Schroedinger { field, j, points: coefficient_tuples(field, n).collect() };
            let mats: Vec<Vec<(usize, u32)>> = elements.iter().map(|g| rep.matrix(&g.a, &g.b, g.c)).collect();
            // Homomorphism on all pairs.
            for (gi, g) in elements.iter().enumerate() {
                for (hi, h) in elements.iter().enumerate() {
                    let gh = group.index(&group.mul(g, h));
                    assert_eq!(rep.compose(&mats[gi], &mats[hi]), mats[gh]);
                }
            }
            let chi = induced_character(&group, j);
            for (g, m) in elements.iter().zip(&mats) {
                assert_eq!(rep.trace(m), chi[group.index(g)], "p={p} n={n} j={j} g={g:?}");
            }
        }
    }
}

#[test]
fn frozen_character_values() {
    let group = ExtraspecialGroup::new(3, 1).unwrap();
    let chi = induced_character(&group, 1);
    let z = group.index(&chern_core::group::GroupElement { a: vec![0], b: vec![0], c: 1 });
    assert_eq!(chi[z], CyclotomicInteger::omega_pow(3, 1).scale(3));
    assert_eq!(chi[0].as_integer(), Some(3));
    let off_center = group.index(&chern_core::group::GroupElement { a: vec![1], b: vec![2], c: 0 });
    assert!(chi[off_center].is_zero());
}
