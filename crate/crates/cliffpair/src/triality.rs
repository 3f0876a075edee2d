//! Cayley algebras, similitudes of the norm, the para-Cayley identification of
//! the even Clifford algebra, and the triality action on proper similitudes.

use std::sync::OnceLock;

use rand::Rng;
use thiserror::Error;

use crate::algebras::{Alg, AlgError, AlgElt, Provenance};
use crate::clifford::{reflection, similitude_multiplier, Cliff, CliffError, Parity};
use crate::exactla::{self, axpy, LinalgError, Mat, Subspace, Vector};
use crate::quadforms::{FormError, QForm};
use crate::quadpairs::{Inv, PairError, QPair};
use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriError {
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("matrix is not a similitude of the norm")]
    NotSimilitude,
    #[error("similitude is improper")]
    Improper,
    #[error("solution space has dimension {0}, expected 1")]
    Nullity(usize),
    #[error("pair has degree {0}, expected 8")]
    Degree(usize),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Cliff(#[from] CliffError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// An octonion algebra with conjugation and norm.
#[derive(Clone, Debug)]
pub struct Oct<F: Field> {
    alg: Alg<F>,
    conj: Mat<F>,
    norm: QForm<F>,
}

impl<F: Field> Oct<F> {
    /// Doubling of `[a,b)` with parameter `c`:
    /// `(p, q)(r, s) = (pr + c·s̄q, sp + qr̄)`, norm `N(p) + c·N(q)`.
    pub fn cayley_dickson(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) -> Result<Self, TriError> {
        if f.is_zero(b) || f.is_zero(c) {
            return Err(TriError::ZeroParameter);
        }
        let q = Alg::quaternion(f, a, b)?;
        let bar = Inv::quaternion_canonical(&q)?;
        let half = |x: &[F::Elem]| -> (Vector<F>, Vector<F>) { (x[..4].to_vec(), x[4..].to_vec()) };
        let mut table = Vec::with_capacity(64);
        for i in 0..8 {
            for j in 0..8 {
                let (p, qq) = half(&exactla::unit_vec(f, 8, i));
                let (r, s) = half(&exactla::unit_vec(f, 8, j));
                let mut left = q.mul(&p, &r);
                axpy(f, &mut left, c, &q.mul(&bar.apply(&s), &qq));
                let right = exactla::vec_add(f, &q.mul(&s, &p), &q.mul(&qq, &bar.apply(&r)));
                table.push(left.into_iter().chain(right).enumerate().filter(|(_, x)| !f.is_zero(x)).collect());
            }
        }
        let labels = ["1", "u", "v", "w", "l", "ul", "vl", "wl"].map(String::from).to_vec();
        let conj_cols: Vec<Vector<F>> = (0..8)
            .map(|j| {
                let (p, qq) = half(&exactla::unit_vec(f, 8, j));
                bar.apply(&p).into_iter().chain(qq).collect()
            })
            .collect();
        let prov = Provenance::Octonion(format!(
            "doubling [{}, {}) by {}",
            f.format_elem(a),
            f.format_elem(b),
            f.format_elem(c)
        ));
        Self::from_table(f, labels, table, exactla::unit_vec(f, 8, 0), Mat::from_columns(f, 8, &conj_cols)?, prov)
    }

    /// Split octonions as Zorn vector matrices `[[α, a], [b, β]]`, basis
    /// `(E₁₁, E₂₂, a₁, a₂, a₃, b₁, b₂, b₃)`.
    pub fn zorn(f: &F) -> Result<Self, TriError> {
        type Z<E> = (E, E, [E; 3], [E; 3]);
        let dotp = |x: &[F::Elem; 3], y: &[F::Elem; 3]| (0..3).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&x[i], &y[i])));
        let cross = |x: &[F::Elem; 3], y: &[F::Elem; 3]| -> [F::Elem; 3] {
            std::array::from_fn(|i| {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                f.add(&f.mul(&x[j], &y[k]), &f.mul(&x[k], &y[j]))
            })
        };
        let decode = |v: &[F::Elem]| -> Z<F::Elem> {
            (v[0].clone(), v[1].clone(), std::array::from_fn(|i| v[2 + i].clone()), std::array::from_fn(|i| v[5 + i].clone()))
        };
        let encode = |z: Z<F::Elem>| -> Vector<F> {
            let mut v = vec![z.0, z.1];
            v.extend(z.2);
            v.extend(z.3);
            v
        };
        let add3 = |x: [F::Elem; 3], y: [F::Elem; 3]| -> [F::Elem; 3] { std::array::from_fn(|i| f.add(&x[i], &y[i])) };
        let scale3 = |c: &F::Elem, x: &[F::Elem; 3]| -> [F::Elem; 3] { std::array::from_fn(|i| f.mul(c, &x[i])) };
        let mut table = Vec::with_capacity(64);
        for i in 0..8 {
            for j in 0..8 {
                let (al, be, a, b) = decode(&exactla::unit_vec(f, 8, i));
                let (al2, be2, a2, b2) = decode(&exactla::unit_vec(f, 8, j));
                let z = (
                    f.add(&f.mul(&al, &al2), &dotp(&a, &b2)),
                    f.add(&f.mul(&be, &be2), &dotp(&b, &a2)),
                    add3(add3(scale3(&al, &a2), scale3(&be2, &a)), cross(&b, &b2)),
                    add3(add3(scale3(&al2, &b), scale3(&be, &b2)), cross(&a, &a2)),
                );
                table.push(encode(z).into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).collect());
            }
        }
        let labels = ["E11", "E22", "a1", "a2", "a3", "b1", "b2", "b3"].map(String::from).to_vec();
        let mut conj = Mat::identity(f, 8);
        conj.set(0, 0, f.zero());
        conj.set(1, 1, f.zero());
        conj.set(0, 1, f.one());
        conj.set(1, 0, f.one());
        let mut unit = exactla::zero_vec(f, 8);
        unit[0] = f.one();
        unit[1] = f.one();
        Self::from_table(f, labels, table, unit, conj, Provenance::Octonion("Zorn vector matrices".into()))
    }

    fn from_table(
        f: &F,
        labels: Vec<String>,
        table: Vec<Vec<(usize, F::Elem)>>,
        unit: Vector<F>,
        conj: Mat<F>,
        prov: Provenance,
    ) -> Result<Self, TriError> {
        let draft = Alg::from_table(f, labels.clone(), table.clone(), unit.clone(), exactla::zero_vec(f, 8), None, prov.clone())?;
        let scalar_part = |y: &[F::Elem]| -> Result<F::Elem, TriError> {
            let k = unit.iter().position(|c| !f.is_zero(c)).expect("nonzero unit");
            let lam = f.div(&y[k], &unit[k]).expect("nonzero");
            if exactla::vec_scale(f, &unit, &lam) == y {
                Ok(lam)
            } else {
                Err(TriError::Verification("expected a scalar".into()))
            }
        };
        let mut trd = Vec::with_capacity(8);
        let mut gram = Mat::zeros(f, 8, 8);
        for i in 0..8 {
            let bi = exactla::unit_vec(f, 8, i);
            trd.push(scalar_part(&exactla::vec_add(f, &bi, &conj.mul_vec(&bi)?))?);
            for j in i..8 {
                let bj = exactla::unit_vec(f, 8, j);
                let x = draft.mul(&bi, &conj.mul_vec(&bj)?);
                let v = if i == j { x } else { exactla::vec_add(f, &x, &draft.mul(&bj, &conj.mul_vec(&bi)?)) };
                gram.set(i, j, scalar_part(&v)?);
            }
        }
        let alg = Alg::from_table(f, labels, table, unit, trd, None, prov)?;
        Ok(Oct { alg, conj, norm: QForm::new(gram)? })
    }

    pub fn alg(&self) -> &Alg<F> {
        &self.alg
    }
    pub fn field(&self) -> &F {
        self.alg.field()
    }
    pub fn norm(&self) -> &QForm<F> {
        &self.norm
    }
    pub fn unit(&self) -> &Vector<F> {
        self.alg.unit()
    }
    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        self.alg.mul(x, y)
    }
    pub fn conj(&self, x: &[F::Elem]) -> Vector<F> {
        self.conj.mul_vec(x).expect("dimension 8")
    }
    pub fn n(&self, x: &[F::Elem]) -> F::Elem {
        self.norm.eval(x)
    }

    /// `x ⋆ y = x̄·ȳ`.
    pub fn para(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        self.mul(&self.conj(x), &self.conj(y))
    }

    /// `ℓ_x: y ↦ x ⋆ y`.
    pub fn left_para(&self, x: &[F::Elem]) -> Mat<F> {
        let f = self.field();
        let cols: Vec<Vector<F>> = (0..8).map(|j| self.para(x, &exactla::unit_vec(f, 8, j))).collect();
        Mat::from_columns(f, 8, &cols).expect("8x8")
    }

    /// `r_x: y ↦ y ⋆ x`.
    pub fn right_para(&self, x: &[F::Elem]) -> Mat<F> {
        let f = self.field();
        let cols: Vec<Vector<F>> = (0..8).map(|j| self.para(&exactla::unit_vec(f, 8, j), x)).collect();
        Mat::from_columns(f, 8, &cols).expect("8x8")
    }

    /// `[[0, ℓ_x], [r_x, 0]]` on `O ⊕ O`.
    pub fn psi1(&self, x: &[F::Elem]) -> Mat<F> {
        let f = self.field();
        let (l, r) = (self.left_para(x), self.right_para(x));
        Mat::from_fn(f, 16, 16, |i, j| match (i < 8, j < 8) {
            (true, false) => l.get(i, j - 8).clone(),
            (false, true) => r.get(i - 8, j).clone(),
            _ => f.zero(),
        })
    }

    /// Checks `(xy)x = x(yx)`, `(xx)y = x(xy)`, `n(xy) = n(x)n(y)` and
    /// `x·x̄ = n(x)` on the given pairs; returns the failed identities.
    pub fn check_composition(&self, pairs: &[(Vector<F>, Vector<F>)]) -> Vec<String> {
        let f = self.field();
        let mut failures = Vec::new();
        for (k, (x, y)) in pairs.iter().enumerate() {
            let xy = self.mul(x, y);
            if self.mul(&xy, x) != self.mul(x, &self.mul(y, x)) {
                failures.push(format!("flexible law fails on pair {k}"));
            }
            if self.mul(&self.mul(x, x), y) != self.mul(x, &xy) {
                failures.push(format!("left alternative law fails on pair {k}"));
            }
            if self.mul(&self.mul(y, x), x) != self.mul(y, &self.mul(x, x)) {
                failures.push(format!("right alternative law fails on pair {k}"));
            }
            if self.n(&xy) != f.mul(&self.n(x), &self.n(y)) {
                failures.push(format!("norm is not multiplicative on pair {k}"));
            }
            if self.mul(x, &self.conj(x)) != exactla::vec_scale(f, self.unit(), &self.n(x)) {
                failures.push(format!("x times its conjugate is not n(x) on pair {k}"));
            }
        }
        failures
    }

    /// Checks `x⋆(y⋆x) = n(x)y = (x⋆y)⋆x` and `n(x⋆y) = n(x)n(y)`.
    pub fn check_para(&self, pairs: &[(Vector<F>, Vector<F>)]) -> Vec<String> {
        let f = self.field();
        let mut failures = Vec::new();
        for (k, (x, y)) in pairs.iter().enumerate() {
            let ny = exactla::vec_scale(f, y, &self.n(x));
            let xy = self.para(x, y);
            if self.para(x, &self.para(y, x)) != ny || self.para(&xy, x) != ny {
                failures.push(format!("para-product identity fails on pair {k}"));
            }
            if self.n(&xy) != f.mul(&self.n(x), &self.n(y)) {
                failures.push(format!("para-product norm fails on pair {k}"));
            }
        }
        failures
    }
}

/// A similitude of the norm, with multiplier and Dickson properness.
#[derive(Clone, Debug, PartialEq)]
pub struct Simil<F: Field> {
    pub matrix: Mat<F>,
    pub mu: F::Elem,
    pub proper: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Output of the triality solver.
#[derive(Clone, Debug)]
pub struct TrialityPair<F: Field> {
    pub plus: Simil<F>,
    pub minus: Simil<F>,
    pub nullity: usize,
}

/// Scales so the first nonzero entry in row-major order is 1.
pub fn class_rep<F: Field>(m: &Mat<F>) -> Mat<F> {
    let f = m.field();
    match m.entries().iter().find(|c| !f.is_zero(c)) {
        Some(c) => m.scale(&f.inv(c).expect("nonzero")),
        None => m.clone(),
    }
}

fn mat_trace_product<F: Field>(f: &F, x: &Mat<F>, y: &Mat<F>) -> F::Elem {
    let n = x.rows();
    let mut acc = f.zero();
    for i in 0..n {
        for j in 0..n {
            acc = f.add(&acc, &f.mul(x.get(i, j), y.get(j, i)));
        }
    }
    acc
}

/// Octonions together with the even Clifford algebra of the norm and the
/// isomorphism `Ψ₁: C₀(n) → End(O) × End(O)` induced by `x ↦ [[0, ℓ_x], [r_x, 0]]`.
#[derive(Clone, Debug)]
pub struct Triality<F: Field> {
    oct: Oct<F>,
    cliff: Cliff<F>,
    ad: QPair<F>,
    psi: OnceLock<(Vec<(Mat<F>, Mat<F>)>, Mat<F>)>,
}

impl<F: Field> Triality<F> {
    pub fn new(oct: Oct<F>) -> Result<Self, TriError> {
        let cliff = Cliff::new(oct.norm(), Parity::Even)?;
        let ad = QPair::adjoint(oct.norm())?;
        Ok(Triality { oct, cliff, ad, psi: OnceLock::new() })
    }

    pub fn oct(&self) -> &Oct<F> {
        &self.oct
    }
    pub fn cliff(&self) -> &Cliff<F> {
        &self.cliff
    }
    pub fn adjoint_pair(&self) -> &QPair<F> {
        &self.ad
    }
    fn field(&self) -> &F {
        self.oct.field()
    }

    /// `Ψ₁(b)` for every monomial `b` of `C₀(n)`, and the matrix of `Ψ₁`
    /// into `End(O) × End(O)` (row-major blocks stacked).
    fn psi_data(&self) -> &(Vec<(Mat<F>, Mat<F>)>, Mat<F>) {
        self.psi.get_or_init(|| {
            let f = self.field();
            let p = self.cliff.symplectic_matrix();
            let gens: Vec<Mat<F>> = (0..8).map(|k| self.oct.psi1(&p.column(k))).collect();
            let blocks: Vec<(Mat<F>, Mat<F>)> = self
                .cliff
                .masks()
                .iter()
                .map(|&mask| {
                    let mut m = Mat::identity(f, 16);
                    for (k, g) in gens.iter().enumerate() {
                        if mask >> k & 1 == 1 {
                            m = m.mul(g).expect("16x16");
                        }
                    }
                    let x = Mat::from_fn(f, 8, 8, |i, j| m.get(i, j).clone());
                    let y = Mat::from_fn(f, 8, 8, |i, j| m.get(i + 8, j + 8).clone());
                    debug_assert!((0..8).all(|i| (0..8).all(|j| f.is_zero(m.get(i, j + 8)) && f.is_zero(m.get(i + 8, j)))));
                    (x, y)
                })
                .collect();
            let cols: Vec<Vector<F>> =
                blocks.iter().map(|(x, y)| x.entries().iter().chain(y.entries()).cloned().collect()).collect();
            let mat = Mat::from_columns(f, 128, &cols).expect("128 columns");
            (blocks, mat)
        })
    }

    /// `Ψ₁(x) = (X, Y)` for `x ∈ C₀(n)`.
    pub fn psi1_even(&self, x: &[F::Elem]) -> (Mat<F>, Mat<F>) {
        let f = self.field();
        let v = self.psi_data().1.mul_vec(x).expect("dimension 128");
        (
            Mat::from_entries(f, 8, 8, v[..64].to_vec()).expect("8x8"),
            Mat::from_entries(f, 8, 8, v[64..].to_vec()).expect("8x8"),
        )
    }

    pub fn psi1_even_inverse(&self, x: &Mat<F>, y: &Mat<F>) -> Result<AlgElt<F>, TriError> {
        let rhs: Vector<F> = x.entries().iter().chain(y.entries()).cloned().collect();
        self.psi_data().1.solve(&rhs)?.ok_or_else(|| TriError::Verification("Psi1 is not surjective".into()))
    }

    /// Checks block-diagonal images, `Ψ₁(1) = 1`, multiplicativity on all
    /// monomial pairs, and bijectivity.
    pub fn verify_psi1_iso(&self) -> Vec<String> {
        let (blocks, mat) = self.psi_data();
        let alg = self.cliff.alg();
        let mut failures = Vec::new();
        if mat.rank() != 128 {
            failures.push("Psi1 is not bijective".into());
        }
        if !(blocks[0].0.is_identity() && blocks[0].1.is_identity()) {
            failures.push("Psi1(1) is not the identity".into());
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let (x, y) = self.psi1_even(&alg.mul(&alg.basis_elem(i), &alg.basis_elem(j)));
                let (bi, bj) = (&blocks[i], &blocks[j]);
                if x != bi.0.mul(&bj.0).expect("8x8") || y != bi.1.mul(&bj.1).expect("8x8") {
                    failures.push(format!("Psi1 is not multiplicative on ({i}, {j})"));
                }
            }
        }
        failures
    }

    /// `Ψ₁ ∘ σ = (ad_n × ad_n) ∘ Ψ₁` on the monomial basis.
    pub fn verify_involution_transport(&self) -> Vec<String> {
        let alg = self.cliff.alg();
        let ad = self.ad.inv();
        let mut failures = Vec::new();
        for i in 0..alg.dim() {
            let b = alg.basis_elem(i);
            let (x, y) = self.psi1_even(&self.cliff.involution().apply(&b));
            let (bx, by) = self.psi1_even(&b);
            if x.entries() != ad.apply(bx.entries()).as_slice() || y.entries() != ad.apply(by.entries()).as_slice() {
                failures.push(format!("involution transport fails on monomial {i}"));
            }
        }
        failures
    }

    /// `Ψ₁(1)` of the central element `ξ`, as the pair of scalars `(α, α+1)`.
    pub fn xi_image(&self) -> Result<(F::Elem, F::Elem), TriError> {
        let f = self.field();
        let (x, y) = self.psi1_even(&self.cliff.xi());
        let (a, b) = (x.get(0, 0).clone(), y.get(0, 0).clone());
        if x != Mat::identity(f, 8).scale(&a) || y != Mat::identity(f, 8).scale(&b) || f.add(&a, &b) != f.one() {
            return Err(TriError::Verification("xi does not map to a pair of complementary scalars".into()));
        }
        Ok((a, b))
    }

    /// Splits the two-row canonical semi-trace value on `s ∈ Sym(C₀(n))` into
    /// its values on the two factors of `End(O) × End(O)`.
    pub fn semitrace_factors(&self, s: &[F::Elem]) -> Result<(F::Elem, F::Elem), TriError> {
        let f = self.field();
        let (alpha, _) = self.xi_image()?;
        let p = self.cliff.symplectic_matrix();
        let st = self.cliff.pair_semitrace(&p.column(0), &p.column(1))?;
        let (r0, r1) = self.cliff.eval_semitrace(&st, s)?;
        let g1 = f.add(&f.mul(&f.add(&alpha, &f.one()), &r0), &r1);
        let g2 = f.add(&f.mul(&alpha, &r0), &r1);
        Ok((g1, g2))
    }

    /// Checks that `Ψ₁(e₁e₁') = (W₁, W₂)` has `Trd(W_k S) = f_n(S)` for every
    /// `S` in a basis of `Sym(ad_n)`, and that the two-row semi-trace on
    /// `Sym(C₀(n))` splits as `(f_n, f_n)` under `Ψ₁`.
    pub fn verify_semitrace_transport(&self) -> Vec<String> {
        let f = self.field();
        let mut failures = Vec::new();
        let p = self.cliff.symplectic_matrix();
        let w = match self.cliff.product_of_vectors(&[p.column(0), p.column(1)]) {
            Ok(w) => w,
            Err(e) => return vec![e.to_string()],
        };
        let (w1, w2) = self.psi1_even(&w);
        let ell = Mat::from_entries(f, 8, 8, self.ad.ell().clone()).expect("8x8");
        for (k, s) in self.ad.inv().sym().basis().iter().enumerate() {
            let s = Mat::from_entries(f, 8, 8, s.clone()).expect("8x8");
            let target = mat_trace_product(f, &ell, &s);
            if mat_trace_product(f, &w1, &s) != target || mat_trace_product(f, &w2, &s) != target {
                failures.push(format!("witness disagrees with f_n on symmetric element {k}"));
            }
        }
        for (k, s) in self.cliff.involution().sym().basis().iter().enumerate() {
            let (x, y) = self.psi1_even(s);
            let expected = (self.ad.eval(x.entries()), self.ad.eval(y.entries()));
            let ok = match (self.semitrace_factors(s), expected) {
                (Ok(got), (Ok(e1), Ok(e2))) => got == (e1, e2),
                _ => false,
            };
            if !ok {
                failures.push(format!("semi-trace transport fails on symmetric element {k}"));
            }
        }
        failures
    }

    pub fn similitude(&self, t: &Mat<F>) -> Result<Simil<F>, TriError> {
        let mu = similitude_multiplier(self.oct.norm(), t).ok_or(TriError::NotSimilitude)?;
        let proper = self.cliff.is_proper(t)?;
        Ok(Simil { matrix: t.clone(), mu, proper })
    }

    /// Solutions `(s₀, s₂)` of `s₀ℓ_x = ℓ_{t(x)}s₂` and `s₂r_x = μ⁻¹r_{t(x)}s₀`
    /// for all basis `x`, as a subspace of `F^128` (`s₀` then `s₂`, row-major).
    pub fn triality_nullspace(&self, t: &Simil<F>) -> Subspace<F> {
        let f = self.field();
        let mu_inv = f.inv(&t.mu).expect("nonzero multiplier");
        let mut rows: Vec<Vector<F>> = Vec::with_capacity(1024);
        for k in 0..8 {
            let x = exactla::unit_vec(f, 8, k);
            let tx = t.matrix.column(k);
            let (l, lt) = (self.oct.left_para(&x), self.oct.left_para(&tx));
            let (r, rt) = (self.oct.right_para(&x), self.oct.right_para(&tx));
            for i in 0..8 {
                for c in 0..8 {
                    let mut row = exactla::zero_vec(f, 128);
                    for j in 0..8 {
                        row[i * 8 + j] = f.add(&row[i * 8 + j], l.get(j, c));
                        row[64 + j * 8 + c] = f.add(&row[64 + j * 8 + c], lt.get(i, j));
                    }
                    rows.push(row);
                    let mut row = exactla::zero_vec(f, 128);
                    for j in 0..8 {
                        row[64 + i * 8 + j] = f.add(&row[64 + i * 8 + j], r.get(j, c));
                        row[j * 8 + c] = f.add(&row[j * 8 + c], &f.mul(&mu_inv, rt.get(i, j)));
                    }
                    rows.push(row);
                }
            }
        }
        Mat::from_rows(f, &rows).expect("rows of length 128").kernel()
    }

    /// `(t⁺, t⁻)` with `t⁺ = μ(s₀)⁻¹s₀`, `t⁻ = s₂`, rescaled by `(λ⁻¹, λ)` so
    /// the first nonzero entry of `t⁻` is 1.
    pub fn triality_pair(&self, t: &Simil<F>) -> Result<TrialityPair<F>, TriError> {
        if !t.proper {
            return Err(TriError::Improper);
        }
        let f = self.field();
        let kernel = self.triality_nullspace(t);
        if kernel.dim() != 1 {
            return Err(TriError::Nullity(kernel.dim()));
        }
        let s = &kernel.basis()[0];
        let s0 = Mat::from_entries(f, 8, 8, s[..64].to_vec())?;
        let s2 = Mat::from_entries(f, 8, 8, s[64..].to_vec())?;
        let mu0 = similitude_multiplier(self.oct.norm(), &s0).ok_or(TriError::NotSimilitude)?;
        let plus = s0.scale(&f.inv(&mu0).expect("nonzero"));
        let lead = s2.entries().iter().find(|c| !f.is_zero(c)).cloned().ok_or(TriError::NotSimilitude)?;
        let lam = f.inv(&lead).expect("nonzero");
        let plus = self.similitude(&plus.scale(&lead))?;
        let minus = self.similitude(&s2.scale(&lam))?;
        if !(plus.proper && minus.proper) {
            return Err(TriError::Verification("solver produced an improper similitude".into()));
        }
        Ok(TrialityPair { plus, minus, nullity: 1 })
    }

    /// Relations `t⁺(x⋆y) = μ(t⁺) t(x)⋆t⁻(y)`, `t(x⋆y) = μ(t) t⁻(x)⋆t⁺(y)`,
    /// `t⁻(x⋆y) = μ(t⁻) t⁺(x)⋆t(y)` on all basis pairs, and
    /// `μ(t⁺)μ(t)μ(t⁻) = 1`.  Returns the failures.
    pub fn check_relations(&self, t: &Simil<F>, pair: &TrialityPair<F>) -> Vec<String> {
        let f = self.field();
        let mut failures = Vec::new();
        let cyc = [(&pair.plus, t, &pair.minus, "a"), (t, &pair.minus, &pair.plus, "b"), (&pair.minus, &pair.plus, t, "c")];
        for i in 0..8 {
            for j in 0..8 {
                let (x, y) = (exactla::unit_vec(f, 8, i), exactla::unit_vec(f, 8, j));
                let xy = self.oct.para(&x, &y);
                for (lhs, l, r, name) in cyc {
                    let left = lhs.matrix.mul_vec(&xy).expect("8");
                    let right = exactla::vec_scale(
                        f,
                        &self.oct.para(&l.matrix.mul_vec(&x).expect("8"), &r.matrix.mul_vec(&y).expect("8")),
                        &lhs.mu,
                    );
                    if left != right {
                        failures.push(format!("relation ({name}) fails on basis pair ({i}, {j})"));
                    }
                }
            }
        }
        if f.mul(&f.mul(&pair.plus.mu, &t.mu), &pair.minus.mu) != f.one() {
            failures.push("multiplier identity fails".into());
        }
        failures
    }

    /// `θ^±([t])` as a class representative.
    pub fn theta(&self, sign: Sign, t: &Simil<F>) -> Result<Simil<F>, TriError> {
        let pair = self.triality_pair(t)?;
        let out = match sign {
            Sign::Plus => pair.plus,
            Sign::Minus => pair.minus,
        };
        self.similitude(&class_rep(&out.matrix))
    }

    /// Failures among `θ⁺θ⁺ = θ⁻`, `θ⁺θ⁺θ⁺ = id` and `θ⁻θ⁺ = id` on `[t]`,
    /// given the solver output for `t`.
    pub fn check_theta(&self, t: &Simil<F>, pair: &TrialityPair<F>) -> Result<Vec<String>, TriError> {
        let rep = class_rep(&t.matrix);
        let p1 = self.similitude(&class_rep(&pair.plus.matrix))?;
        let m1 = class_rep(&pair.minus.matrix);
        let pair1 = self.triality_pair(&p1)?;
        let p2 = self.similitude(&class_rep(&pair1.plus.matrix))?;
        let mp = class_rep(&pair1.minus.matrix);
        let p3 = class_rep(&self.triality_pair(&p2)?.plus.matrix);
        let mut failures = Vec::new();
        if p2.matrix != m1 {
            failures.push("theta+ squared differs from theta-".into());
        }
        if p3 != rep {
            failures.push("theta+ cubed is not the identity".into());
        }
        if mp != rep {
            failures.push("theta- after theta+ is not the identity".into());
        }
        Ok(failures)
    }
}

/// Product of reflections in anisotropic vectors, times a random nonzero
/// scalar; an even count gives a proper similitude.
pub fn random_similitude<F: Field, R: Rng + ?Sized>(q: &QForm<F>, proper: bool, rng: &mut R) -> Mat<F> {
    let f = q.field();
    let count = 2 * rng.gen_range(0..5) + if proper { 2 } else { 1 };
    let mut m = Mat::identity(f, q.dim());
    for _ in 0..count {
        let v = loop {
            let v = exactla::random_vec(f, q.dim(), rng);
            if !f.is_zero(&q.eval(&v)) {
                break v;
            }
        };
        m = m.mul(&reflection(q, &v).expect("anisotropic vector")).expect("square");
    }
    m.scale(&f.random_nonzero(rng))
}

/// Invariants of a split pair: degree, discriminant from the pair, and the
/// Arf class and Witt index of the recovered form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairInvariants {
    pub degree: usize,
    pub disc: Option<bool>,
    pub arf: Option<bool>,
    pub witt: usize,
}

impl PairInvariants {
    pub fn of<F: Field>(p: &QPair<F>, seed: u64) -> Result<Self, TriError> {
        let q = p.recover_form(seed)?;
        Ok(PairInvariants {
            degree: q.dim(),
            disc: p.discriminant(seed)?.class,
            arf: q.arf().class,
            witt: q.witt_index()?,
        })
    }
}

/// `(A, C⁺, C⁻)` for a degree-8 pair `A` with trivial discriminant, realized
/// through the Clifford algebra of a recovered form.
#[derive(Clone, Debug)]
pub struct Triple<F: Field> {
    pub a: QPair<F>,
    pub b: QPair<F>,
    pub c: QPair<F>,
    pub form: QForm<F>,
    pub idempotents: (AlgElt<F>, AlgElt<F>),
}

pub fn make_triple<F: Field>(p: &QPair<F>, seed: u64) -> Result<Triple<F>, TriError> {
    let form = p.recover_form(seed)?;
    if form.dim() != 8 {
        return Err(TriError::Degree(form.dim()));
    }
    let comps = Cliff::new(&form, Parity::Even)?.split_components()?;
    Ok(Triple {
        a: p.clone(),
        b: comps.plus.pair,
        c: comps.minus.pair,
        form,
        idempotents: (comps.plus.idempotent, comps.minus.idempotent),
    })
}

/// Invariant-level check that the Clifford pairs of the second and third
/// slots split as the other two slots.  Returns `(check, passed)` lines.
pub fn verify_triple_permutation<F: Field>(t: &Triple<F>, seed: u64) -> Result<Vec<(String, bool)>, TriError> {
    let inv = [PairInvariants::of(&t.a, seed)?, PairInvariants::of(&t.b, seed)?, PairInvariants::of(&t.c, seed)?];
    let mut report = vec![
        ("A has trivial discriminant".to_string(), inv[0].disc == Some(false)),
        ("disc agrees with the Arf invariant in every slot".to_string(), inv.iter().all(|i| i.disc == i.arf)),
        ("B and C agree (A is split)".to_string(), inv[1] == inv[2]),
    ];
    for (slot, others, name) in [(&t.b, [&inv[2], &inv[0]], "B"), (&t.c, [&inv[0], &inv[1]], "C")] {
        let sub = make_triple(slot, seed)?;
        let mut got = [PairInvariants::of(&sub.b, seed)?, PairInvariants::of(&sub.c, seed)?];
        let mut want = [others[0].clone(), others[1].clone()];
        got.sort();
        want.sort();
        report.push((format!("Clifford pair of slot {name} matches the other two slots"), got == want));
    }
    Ok(report)
}
