//! Randomized verification suites.  Every check is deterministic in the seed;
//! cases run in parallel and are collected in case order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebras::Alg;
use crate::clifford::{random_symplectic_pair, Cliff, Parity};
use crate::exactla::{self, Mat, Subspace, Vector};
use crate::quadforms::{pfister_quad, quaternion_norm_form, random_form, random_form_with_arf, QForm};
use crate::quadpairs::{canonical_otimes, canonical_otimes_at, Inv, QPair};
use crate::scalars::{Field, Gf2k};
use crate::triality::{make_triple, random_similitude, verify_triple_permutation, Oct, PairInvariants, Triality};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: usize,
    pub total: usize,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.total > 0 && self.passed == self.total
    }
}

fn tally(name: &str, results: impl IntoIterator<Item = bool>) -> Check {
    let (mut passed, mut total) = (0, 0);
    for r in results {
        total += 1;
        passed += r as usize;
    }
    Check { name: name.to_string(), passed, total }
}

fn case_rng(seed: u64, tag: &str, i: usize) -> ChaCha8Rng {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in tag.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(h ^ (i as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9))
}

fn field_for(i: usize) -> Gf2k {
    if i % 2 == 0 {
        Gf2k::gf2()
    } else {
        Gf2k::gf4()
    }
}

fn random_trace_one<R: Rng + ?Sized>(f: &Gf2k, n: usize, rng: &mut R) -> Mat<Gf2k> {
    let mut l = Mat::from_fn(f, n, n, |_, _| f.random(rng));
    let t = l.trace().expect("square");
    let last = f.add(l.get(n - 1, n - 1), &f.add(&t, &f.one()));
    l.set(n - 1, n - 1, last);
    l
}

fn random_invertible<R: Rng + ?Sized>(f: &Gf2k, n: usize, rng: &mut R) -> Mat<Gf2k> {
    loop {
        let m = Mat::from_fn(f, n, n, |_, _| f.random(rng));
        if m.rank() == n {
            return m;
        }
    }
}

/// `ℍ ⊥ q'` in a random basis; `trivial_arf` forces `Δ(q') = 0`.
pub fn random_isotropic_form<R: Rng + ?Sized>(f: &Gf2k, dim: usize, trivial_arf: bool, rng: &mut R) -> QForm<Gf2k> {
    let rest = if trivial_arf { random_form_with_arf(f, dim - 2, false, rng) } else { random_form(f, dim - 2, rng) };
    let q = QForm::hyperbolic(f, 1).orthogonal_sum(&rest);
    q.pullback(&random_invertible(f, dim, rng)).expect("invertible change of basis")
}

fn quaternion_inv(f: &Gf2k, a: u32, b: u32) -> Inv<Gf2k> {
    Inv::quaternion_canonical(&Alg::quaternion(f, &a, &b).expect("b nonzero")).expect("quaternion")
}

/// `c(A) ∩ Skew = c(A) ∩ Alt` with the expected dimensions, for `m ∈ {3, 4}`
/// over GF(2) and GF(4), `forms` random forms each.
pub fn image_subspaces(seed: u64, forms: usize) -> Check {
    let cases: Vec<(usize, usize, usize)> =
        [3usize, 4].iter().flat_map(|&m| (0..2).flat_map(move |fi| (0..forms).map(move |i| (m, fi, i)))).collect();
    let results: Vec<bool> = cases
        .par_iter()
        .map(|&(m, fi, i)| {
            let f = field_for(fi);
            let mut rng = case_rng(seed, "image", (m * 2 + fi) * 100_000 + i);
            let q = random_form(&f, 2 * m, &mut rng);
            let Ok(c) = Cliff::new(&q, Parity::Even) else { return false };
            match c.image_subspaces() {
                Ok((ca, skew, alt)) => ca.dim() == 2 * m * m - m + 1 && skew.dim() == 2 * m * m - m && skew == alt,
                Err(_) => false,
            }
        })
        .collect();
    tally("image-subspaces", results)
}

/// The canonical semi-trace does not depend on the trace-one element.
pub fn semitrace_independence(seed: u64, forms: usize, pairs: usize) -> Check {
    let results: Vec<Vec<bool>> = (0..forms)
        .into_par_iter()
        .map(|i| {
            let f = field_for(i);
            let mut rng = case_rng(seed, "lambda", i);
            let q = random_form(&f, 8, &mut rng);
            let c = Cliff::new(&q, Parity::Even).expect("nonsingular");
            (0..pairs)
                .map(|_| {
                    let (l1, l2) = (random_trace_one(&f, 8, &mut rng), random_trace_one(&f, 8, &mut rng));
                    matches!((c.canonical_semitrace(&l1), c.canonical_semitrace(&l2)), (Ok(a), Ok(b)) if a == b)
                })
                .collect()
        })
        .collect();
    tally("canonical-semitrace-independent", results.into_iter().flatten())
}

/// `f_{e,e'}` agrees for random symplectic pairs and equals the canonical
/// semi-trace computed from `c(φ_q(e ⊗ e'))`.
pub fn pair_semitraces(seed: u64, forms: usize, pairs: usize) -> Check {
    let results: Vec<Vec<bool>> = (0..forms)
        .into_par_iter()
        .map(|i| {
            let f = field_for(i);
            let mut rng = case_rng(seed, "pairs", i);
            let q = random_form(&f, 8, &mut rng);
            let b = q.polar_matrix();
            let c = Cliff::new(&q, Parity::Even).expect("nonsingular");
            let base = c.canonical_semitrace(&random_trace_one(&f, 8, &mut rng)).expect("degree 8");
            (0..pairs)
                .map(|_| {
                    let (e, ep) = random_symplectic_pair(&q, &mut rng);
                    let phi = Mat::from_entries(&f, 8, 8, QPair::rank_one(&b, &e, &ep)).expect("8x8");
                    let via_pair = c.pair_semitrace(&e, &ep);
                    let via_phi = c.canonical_semitrace(&phi);
                    matches!((via_pair, via_phi), (Ok(x), Ok(y)) if x == base && y == base)
                })
                .collect()
        })
        .collect();
    tally("pair-semitraces-agree", results.into_iter().flatten())
}

/// Quaternion generators of `C₀(q)` for `m ∈ {2, 3, 4}`, and vanishing of the
/// canonical semi-trace on products of symmetric quaternion elements (`m = 4`).
pub fn decomposition(seed: u64, forms: usize) -> Vec<Check> {
    let cases: Vec<(usize, usize)> = [2usize, 3, 4].iter().flat_map(|&m| (0..forms).map(move |i| (m, i))).collect();
    let results: Vec<(usize, bool, Option<bool>)> = cases
        .par_iter()
        .map(|&(m, i)| {
            let f = field_for(i);
            let mut rng = case_rng(seed, "decompose", m * 100_000 + i);
            let q = random_form(&f, 2 * m, &mut rng);
            let c = Cliff::new(&q, Parity::Even).expect("nonsingular");
            let Ok(dec) = c.decompose_even() else { return (m, false, None) };
            let relations = c.verify_decomposition(&dec).is_empty();
            let params_ok = dec.params.iter().zip(c.blocks()).all(|((p0, p1), blk)| {
                let last = &c.blocks()[m - 1];
                *p0 == f.mul(&blk.a, &blk.b) && *p1 == f.mul(&blk.a, &last.a)
            });
            let vanishing = (m == 4).then(|| {
                let Ok(st) = c.canonical_semitrace(&random_trace_one(&f, 8, &mut rng)) else { return false };
                let one = c.alg().unit().clone();
                let syms: Vec<[Vector<Gf2k>; 3]> =
                    dec.u.iter().zip(&dec.v).map(|(u, v)| [one.clone(), v.clone(), c.mul(u, v)]).collect();
                let mut ok = true;
                for x in &syms[0] {
                    for y in &syms[1] {
                        for z in &syms[2] {
                            let s = c.mul(&c.mul(x, y), z);
                            ok &= c.eval_semitrace(&st, &s).map(|v| v == (0, 0)).unwrap_or(false);
                        }
                    }
                }
                ok
            });
            (m, relations && params_ok, vanishing)
        })
        .collect();
    vec![
        tally("even-decomposition-relations", results.iter().map(|r| r.1)),
        tally("canonical-semitrace-vanishes-on-tensor-sym", results.iter().filter_map(|r| r.2)),
    ]
}

fn pfister_parameters() -> Vec<(Gf2k, u32, u32, u32)> {
    let mut out = Vec::new();
    for f in [Gf2k::gf2(), Gf2k::gf4()] {
        let els: Vec<u32> = f.elements().expect("finite");
        for &b1 in els.iter().filter(|x| **x != 0) {
            for &b2 in els.iter().filter(|x| **x != 0) {
                for &c in &els {
                    out.push((f.clone(), b1, b2, c));
                }
            }
        }
    }
    out
}

/// Both components of the Clifford algebra of `Ad_π` carry pairs whose
/// recovered forms have the dimension, Arf invariant and Witt index of `π`,
/// for every 3-fold Pfister form over GF(2) and GF(4).
pub fn pfister_components(seed: u64) -> Check {
    let params = pfister_parameters();
    let results: Vec<bool> = params
        .par_iter()
        .map(|(f, b1, b2, c)| {
            let Ok(pi) = pfister_quad(f, &[*b1, *b2], c) else { return false };
            let Ok(witt) = pi.witt_index() else { return false };
            let want = PairInvariants { degree: 8, disc: pi.arf().class, arf: pi.arf().class, witt };
            let Ok(t) = make_triple(&QPair::adjoint(&pi).expect("nonsingular"), seed) else { return false };
            [&t.b, &t.c].iter().all(|p| PairInvariants::of(p, seed).map(|i| i == want).unwrap_or(false))
        })
        .collect();
    tally("pfister-components", results)
}

/// Isotropic forms give hyperbolic components (8-dimensional, split centre)
/// and a hyperbolic full Clifford pair (6-dimensional).
pub fn isotropic(seed: u64, forms8: usize, forms6: usize) -> Vec<Check> {
    let even: Vec<bool> = (0..forms8)
        .into_par_iter()
        .map(|i| {
            let f = field_for(i);
            let mut rng = case_rng(seed, "iso8", i);
            let q = random_isotropic_form(&f, 8, true, &mut rng);
            let Ok(c) = Cliff::new(&q, Parity::Even) else { return false };
            let Ok(comps) = c.split_components() else { return false };
            [&comps.plus.pair, &comps.minus.pair]
                .iter()
                .all(|p| p.recover_form(seed).ok().and_then(|r| r.witt_index().ok()) == Some(4))
        })
        .collect();
    let full: Vec<bool> = (0..forms6)
        .into_par_iter()
        .map(|i| {
            let f = field_for(i);
            let mut rng = case_rng(seed, "iso6", i);
            let q = random_isotropic_form(&f, 6, false, &mut rng);
            let Ok(c) = Cliff::new(&q, Parity::Full) else { return false };
            let (e, ep) = random_symplectic_pair(&q, &mut rng);
            c.full_semitrace(&e, &ep).and_then(|p| Ok(p.is_hyperbolic(seed)?)).unwrap_or(false)
        })
        .collect();
    vec![tally("isotropic-components-hyperbolic", even), tally("isotropic-full-clifford-hyperbolic", full)]
}

/// The discriminant of `Ad_q`, computed from the pair, is the Arf invariant.
pub fn discriminant(seed: u64, forms: usize) -> Check {
    let results: Vec<bool> = (0..forms)
        .into_par_iter()
        .map(|i| {
            let f = field_for(i);
            let mut rng = case_rng(seed, "disc", i);
            let q = random_form(&f, 4 + 2 * (i % 3), &mut rng);
            let Ok(p) = QPair::adjoint(&q) else { return false };
            p.discriminant(seed).map(|d| d.class == q.arf().class && d.class.is_some()).unwrap_or(false)
        })
        .collect();
    tally("disc-equals-arf", results)
}

/// Induced automorphisms of random isometries: `C₀(g)c(x) = c(gxg⁻¹)` and the
/// action on the two semi-trace rows.
pub fn automorphisms(seed: u64, forms: usize) -> Check {
    let results: Vec<bool> = (0..forms)
        .into_par_iter()
        .map(|i| {
            let f = field_for(i);
            let mut rng = case_rng(seed, "aut", i);
            let q = random_form(&f, 8, &mut rng);
            let c = Cliff::new(&q, Parity::Even).expect("nonsingular");
            let g = random_similitude(&q, i % 4 < 2, &mut rng);
            let (Ok(a), Ok(ginv)) = (c.induced_automorphism(&g), g.inverse()) else { return false };
            let Some(ginv) = ginv else { return false };
            let Ok(cm) = c.canonical_map_matrix() else { return false };
            let equivariant = (0..64).all(|k| {
                let mut x = Mat::zeros(&f, 8, 8);
                x.set(k / 8, k % 8, f.one());
                let moved = g.mul(&x).and_then(|y| y.mul(&ginv)).expect("8x8");
                a.mul_vec(&cm.column(k)).ok() == c.canonical_map(&moved).ok()
            });
            let Ok(proper) = c.is_proper(&g) else { return false };
            let (e, ep) = random_symplectic_pair(&q, &mut rng);
            let Ok(st) = c.pair_semitrace(&e, &ep) else { return false };
            let rows = c.involution().sym().basis().iter().all(|s| {
                let (Ok((x0, x1)), Ok(img)) = (c.eval_semitrace(&st, s), a.mul_vec(s)) else { return false };
                let Ok((y0, y1)) = c.eval_semitrace(&st, &img) else { return false };
                (y0, y1) == if proper { (x0, x1) } else { (x0, f.add(&x0, &x1)) }
            });
            equivariant && rows && proper == (i % 4 < 2)
        })
        .collect();
    tally("induced-automorphisms", results)
}

/// Triality solver on the split octonions over GF(2).
pub fn triality_solver(seed: u64, proper: usize, improper: usize) -> Vec<Check> {
    let f = Gf2k::gf2();
    let tri = Triality::new(Oct::cayley_dickson(&f, &0, &1, &1).expect("parameters")).expect("octonions");
    let results: Vec<(bool, bool, bool, bool)> = (0..proper)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, "proper", i);
            let Ok(t) = tri.similitude(&random_similitude(tri.oct().norm(), true, &mut rng)) else {
                return (false, false, false, false);
            };
            let nullity = t.proper && tri.triality_nullspace(&t).dim() == 1;
            let Ok(pair) = tri.triality_pair(&t) else { return (nullity, false, false, false) };
            let failures = tri.check_relations(&t, &pair);
            let relations = failures.iter().all(|s| s.starts_with("multiplier"));
            let multiplier = !failures.iter().any(|s| s.starts_with("multiplier"));
            let theta = tri.check_theta(&t, &pair).map(|v| v.is_empty()).unwrap_or(false);
            (nullity, relations, multiplier, theta)
        })
        .collect();
    let refused: Vec<bool> = (0..improper)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, "improper", i);
            let Ok(t) = tri.similitude(&random_similitude(tri.oct().norm(), false, &mut rng)) else { return false };
            !t.proper && tri.triality_nullspace(&t).dim() == 0 && tri.triality_pair(&t).is_err()
        })
        .collect();
    vec![
        tally("triality-nullity-one", results.iter().map(|r| r.0)),
        tally("triality-relations", results.iter().map(|r| r.1)),
        tally("triality-multipliers", results.iter().map(|r| r.2)),
        tally("triality-theta-action", results.iter().map(|r| r.3)),
        tally("triality-improper-refused", refused),
    ]
}

/// `Ψ₁` is an isomorphism of algebras with quadratic pairs onto `Ad_n × Ad_n`.
pub fn psi1_transport() -> Vec<Check> {
    let models: Vec<(Gf2k, u32, u32, u32)> =
        vec![(Gf2k::gf2(), 0, 1, 1), (Gf2k::gf2(), 1, 1, 1), (Gf2k::gf4(), 2, 3, 1)];
    let results: Vec<(bool, bool, bool)> = models
        .par_iter()
        .map(|(f, a, b, c)| {
            let Ok(tri) = Oct::cayley_dickson(f, a, b, c).map_err(|_| ()).and_then(|o| Triality::new(o).map_err(|_| ()))
            else {
                return (false, false, false);
            };
            (
                tri.verify_psi1_iso().is_empty(),
                tri.verify_involution_transport().is_empty(),
                tri.verify_semitrace_transport().is_empty() && tri.xi_image().is_ok(),
            )
        })
        .collect();
    vec![
        tally("psi1-algebra-isomorphism", results.iter().map(|r| r.0)),
        tally("psi1-involution-transport", results.iter().map(|r| r.1)),
        tally("psi1-semitrace-transport", results.iter().map(|r| r.2)),
    ]
}

/// Invariant-level triple permutation for random trivial-discriminant forms,
/// and the explicit form attached to a totally decomposable pair.
pub fn triples(seed: u64, forms: usize) -> Vec<Check> {
    let perm: Vec<bool> = (0..forms)
        .into_par_iter()
        .map(|i| {
            let f = field_for(i);
            let mut rng = case_rng(seed, "triple", i);
            let q = random_form_with_arf(&f, 8, false, &mut rng);
            let Ok(t) = make_triple(&QPair::adjoint(&q).expect("nonsingular"), seed) else { return false };
            verify_triple_permutation(&t, seed).map(|r| r.iter().all(|(_, ok)| *ok)).unwrap_or(false)
        })
        .collect();
    let totdec: Vec<bool> = (0..forms)
        .into_par_iter()
        .map(|i| {
            let f = field_for(i);
            let mut rng = case_rng(seed, "totdec", i);
            let a: Vec<u32> = (0..3).map(|_| f.random(&mut rng)).collect();
            let b: Vec<u32> = (0..3).map(|_| f.random_nonzero(&mut rng)).collect();
            let mut blocks: Vec<(u32, u32)> =
                (0..3).map(|k| (b[k], f.div(&a[k], &b[k]).expect("nonzero"))).collect();
            blocks.push((1, f.add(&f.add(&a[0], &a[1]), &a[2])));
            let q = QForm::from_blocks(&f, &blocks);
            let c = Cliff::new(&q, Parity::Even).expect("nonsingular");
            let params_ok = c.decompose_even().map(|d| d.params == (0..3).map(|k| (a[k], b[k])).collect::<Vec<_>>());
            let factors: Vec<Inv<Gf2k>> = (0..3).map(|k| quaternion_inv(&f, a[k], b[k])).collect();
            let Ok(input) = canonical_otimes(&factors) else { return false };
            let Ok(want) = PairInvariants::of(&input, seed) else { return false };
            let Ok(comps) = c.split_components() else { return false };
            params_ok == Ok(true)
                && q.arf().class == Some(false)
                && [&comps.plus.pair, &comps.minus.pair]
                    .iter()
                    .all(|p| PairInvariants::of(p, seed).map(|i| i == want).unwrap_or(false))
        })
        .collect();
    vec![tally("triple-permutation", perm), tally("totally-decomposable-components", totdec)]
}

fn tensor_sym(factors: &[Inv<Gf2k>]) -> Subspace<Gf2k> {
    let f = factors[0].alg().field().clone();
    let mut vecs: Vec<Vector<Gf2k>> = vec![vec![f.one()]];
    for s in factors {
        vecs = vecs
            .iter()
            .flat_map(|v| s.sym().basis().iter().map(move |w| (v, w)))
            .map(|(v, w)| v.iter().flat_map(|x| w.iter().map(|y| f.mul(x, y))).collect())
            .collect();
    }
    let dim = vecs[0].len();
    Subspace::span(&f, dim, vecs).expect("equal lengths")
}

/// Canonical semi-trace on tensor products of quaternion algebras: unique
/// with the vanishing property, independent of the factor carrying the
/// semi-trace, and `(Q, ‾) ⊗ (Q, ‾) ≅ Ad_{Nrd_Q}` at invariant level.
pub fn tensor_semitraces(seed: u64, samples: usize) -> Vec<Check> {
    let results: Vec<(bool, bool, bool)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let f = field_for(i);
            let mut rng = case_rng(seed, "tensor", i);
            let r = 2 + i % 2;
            let factors: Vec<Inv<Gf2k>> =
                (0..r).map(|_| quaternion_inv(&f, f.random(&mut rng), f.random_nonzero(&mut rng))).collect();
            let Ok(p) = canonical_otimes(&factors) else { return (false, false, false) };
            let inv = p.inv();
            let tsym = tensor_sym(&factors);
            let vanishes = tsym.basis().iter().all(|s| p.eval(s).map(|v| v == 0).unwrap_or(false));
            let unique = inv.symd().sum(&tsym).map(|s| s.dim() == inv.sym().dim()).unwrap_or(false);
            let independent = (0..r).all(|k| {
                let unit = factors[k].alg().unit().clone();
                let mut ell = factors[k].unit_witness().expect("symplectic");
                exactla::axpy(&f, &mut ell, &f.random(&mut rng), &unit);
                exactla::axpy(&f, &mut ell, &f.random(&mut rng), &factors[k].symmetrize(&factors[k].alg().random_elem(&mut rng)));
                canonical_otimes_at(&factors, k, Some(&ell)).map(|o| o.same_pair(&p)).unwrap_or(false)
            });
            let (a, b) = (f.random(&mut rng), f.random_nonzero(&mut rng));
            let q = quaternion_inv(&f, a, b);
            let square = canonical_otimes(&[q.clone(), q]).ok().and_then(|s| PairInvariants::of(&s, seed).ok());
            let nrd = quaternion_norm_form(&f, &a, &b).expect("b nonzero");
            let target = nrd.witt_index().ok().map(|w| PairInvariants { degree: 4, disc: nrd.arf().class, arf: nrd.arf().class, witt: w });
            (vanishes && unique, independent, square.is_some() && square == target)
        })
        .collect();
    vec![
        tally("tensor-semitrace-unique", results.iter().map(|r| r.0)),
        tally("tensor-semitrace-factor-independent", results.iter().map(|r| r.1)),
        tally("quaternion-square-is-norm-pair", results.iter().map(|r| r.2)),
    ]
}

/// Full Clifford algebra of 6-dimensional forms: the semi-trace `Trd(ee'x)`
/// does not depend on `(e, e')`, vanishes on monomials without a complete
/// symplectic pair, and matches `⊗[aᵢbᵢ, aᵢ)` with `f_⊗`.
pub fn full_clifford(seed: u64, forms: usize) -> Vec<Check> {
    let results: Vec<(bool, bool, bool)> = (0..forms)
        .into_par_iter()
        .map(|i| {
            let f = field_for(i);
            let mut rng = case_rng(seed, "full", i);
            let q = random_form(&f, 6, &mut rng);
            let c = Cliff::new(&q, Parity::Full).expect("nonsingular");
            let p = c.symplectic_matrix();
            let Ok(base) = c.full_semitrace(&p.column(0), &p.column(1)) else { return (false, false, false) };
            let independent = (0..5).all(|_| {
                let (e, ep) = random_symplectic_pair(&q, &mut rng);
                c.full_semitrace(&e, &ep).map(|o| o.same_pair(&base)).unwrap_or(false)
            });
            let vanishing = c.masks().iter().enumerate().all(|(k, &mask)| {
                let complete = (0..3).any(|b| mask >> (2 * b) & 3 == 3);
                complete || base.eval(&c.alg().basis_elem(k)).map(|v| v == 0).unwrap_or(false)
            });
            let factors: Vec<Inv<Gf2k>> = c.blocks().iter().map(|blk| quaternion_inv(&f, f.mul(&blk.a, &blk.b), blk.a)).collect();
            let tensor = canonical_otimes(&factors).ok().and_then(|t| PairInvariants::of(&t, seed).ok());
            let matches = tensor.is_some() && tensor == PairInvariants::of(&base, seed).ok();
            (independent, vanishing, matches)
        })
        .collect();
    vec![
        tally("full-semitrace-independent", results.iter().map(|r| r.0)),
        tally("full-semitrace-vanishes-on-tensor-sym", results.iter().map(|r| r.1)),
        tally("full-clifford-is-quaternion-tensor", results.iter().map(|r| r.2)),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Semitrace,
    Clifford,
    Triality,
    Triples,
    Appendix,
    All,
}

pub fn run_suite(name: SuiteName, seed: u64, n: usize) -> Vec<Check> {
    let n = n.max(1);
    let mut out = Vec::new();
    let all = name == SuiteName::All;
    if all || name == SuiteName::Semitrace {
        out.push(semitrace_independence(seed, 2, n));
        out.push(pair_semitraces(seed, 2, n));
        out.push(discriminant(seed, n));
        out.extend(tensor_semitraces(seed, n));
    }
    if all || name == SuiteName::Clifford {
        out.push(image_subspaces(seed, n));
        out.extend(decomposition(seed, n));
        out.extend(isotropic(seed, n, n));
        out.push(automorphisms(seed, n));
    }
    if all || name == SuiteName::Triality {
        out.extend(triality_solver(seed, n, n.div_ceil(2)));
        out.extend(psi1_transport());
    }
    if all || name == SuiteName::Triples {
        out.push(pfister_components(seed));
        out.extend(triples(seed, n));
    }
    if all || name == SuiteName::Appendix {
        out.extend(full_clifford(seed, n));
    }
    out
}
