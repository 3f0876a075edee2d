//! Full and even Clifford algebras of a nonsingular form in characteristic 2.
//!
//! Monomials are bitmasks over a symplectic basis: bit `2i` is `e_i` and bit
//! `2i+1` is `e_i'`, in the order `e₁ < e₁' < e₂ < …`.  Generators from
//! different symplectic pairs commute, so the algebra is the tensor product of
//! the local quaternion algebras on `(1, e_i, e_i', e_ie_i')` and products are
//! computed factor by factor.

use std::sync::OnceLock;

use thiserror::Error;

use crate::algebras::{Alg, AlgError, AlgElt, Provenance};
use crate::exactla::{self, axpy, dot, LinalgError, Mat, Subspace, Vector};
use crate::quadforms::{FormError, QForm, SymplecticBlock};
use crate::quadpairs::{Inv, PairError, QPair};
use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffError {
    #[error("operation needs the {0} Clifford algebra")]
    WrongParity(&'static str),
    #[error("form dimension {got} is too small, need at least {need}")]
    DimensionTooSmall { need: usize, got: usize },
    #[error("canonical semi-trace needs an even number of symplectic blocks, got {0}")]
    OddBlockCount(usize),
    #[error("element has reduced trace {0}, expected 1")]
    TraceNotOne(String),
    #[error("element does not satisfy u + sigma(u) = 1")]
    BadWitness,
    #[error("vectors do not satisfy b(e, e') = 1")]
    NotSymplecticPair,
    #[error("centre is a field: discriminant {0} is not in the image of x^2+x")]
    NontrivialDiscriminant(String),
    #[error("matrix is not a similitude of the form")]
    NotSimilitude,
    #[error("expected a vector or matrix of size {0}")]
    Size(usize),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] crate::scalars::ScalarError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Full,
    Even,
}

/// Local product of codes `0 = 1, 1 = e, 2 = e', 3 = ee'` in the quaternion
/// algebra with `e² = a`, `e'² = b`, `ee' + e'e = 1`.
fn local_product<F: Field>(f: &F, x: u32, y: u32, a: &F::Elem, b: &F::Elem) -> Vec<(u32, F::Elem)> {
    let one = f.one();
    match (x, y) {
        (0, y) => vec![(y, one)],
        (x, 0) => vec![(x, one)],
        (1, 1) => vec![(0, a.clone())],
        (1, 2) => vec![(3, one)],
        (1, 3) => vec![(2, a.clone())],
        (2, 1) => vec![(0, one.clone()), (3, one)],
        (2, 2) => vec![(0, b.clone())],
        (2, 3) => vec![(2, one), (1, b.clone())],
        (3, 1) => vec![(1, one), (2, a.clone())],
        (3, 2) => vec![(1, b.clone())],
        (3, 3) => vec![(3, one), (0, f.mul(a, b))],
        _ => unreachable!("codes are two bits"),
    }
}

/// Canonical involution on local codes: `e, e'` fixed, `ee' ↦ e'e = 1 + ee'`.
fn local_reverse<F: Field>(f: &F, x: u32) -> Vec<(u32, F::Elem)> {
    match x {
        3 => vec![(0, f.one()), (3, f.one())],
        x => vec![(x, f.one())],
    }
}

fn mask_label(mask: u32, m: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    let mut s = String::new();
    for i in 0..m {
        if mask >> (2 * i) & 1 == 1 {
            s.push_str(&format!("e{}", i + 1));
        }
        if mask >> (2 * i + 1) & 1 == 1 {
            s.push_str(&format!("e{}'", i + 1));
        }
    }
    s
}

/// A semi-trace with values in the centre `Z = F[ξ]` of the even Clifford
/// algebra, stored as the two `F`-rows `s ↦ T(w·s)` and `s ↦ T(ξ·w·s)` on the
/// echelon basis of the symmetric elements, where `T` is the restricted
/// reduced trace and `w` the witness.  These rows determine the `Z`-valued
/// map because the trace form of `Z/F` is nondegenerate.
#[derive(Clone, Debug)]
pub struct CentreSemiTr<F: Field> {
    witness: AlgElt<F>,
    rows: [Vector<F>; 2],
}

impl<F: Field> PartialEq for CentreSemiTr<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl<F: Field> CentreSemiTr<F> {
    pub fn witness(&self) -> &AlgElt<F> {
        &self.witness
    }
    pub fn rows(&self) -> &[Vector<F>; 2] {
        &self.rows
    }
}

/// Orthogonal idempotent splitting of the even Clifford algebra.
#[derive(Clone, Debug)]
pub struct Component<F: Field> {
    pub idempotent: AlgElt<F>,
    pub pair: QPair<F>,
    /// Columns are the component basis in even-Clifford coordinates.
    pub embedding: Mat<F>,
}

#[derive(Clone, Debug)]
pub struct Components<F: Field> {
    pub plus: Component<F>,
    pub minus: Component<F>,
    pub centre_root: F::Elem,
}

/// Quaternion generators of the even Clifford algebra.
#[derive(Clone, Debug)]
pub struct EvenDecomposition<F: Field> {
    pub u: Vec<AlgElt<F>>,
    pub v: Vec<AlgElt<F>>,
    pub xi: AlgElt<F>,
    /// `[aᵢbᵢ, aᵢa_m)` for `i < m`.
    pub params: Vec<(F::Elem, F::Elem)>,
}

#[derive(Clone, Debug)]
pub struct Cliff<F: Field> {
    form: QForm<F>,
    blocks: Vec<SymplecticBlock<F>>,
    m: usize,
    parity: Parity,
    masks: Vec<u32>,
    index: Vec<usize>,
    to_symplectic: Mat<F>,
    alg: Alg<F>,
    inv: Inv<F>,
    canonical_map: OnceLock<Mat<F>>,
}

impl<F: Field> Cliff<F> {
    pub fn new(q: &QForm<F>, parity: Parity) -> Result<Self, CliffError> {
        let f = q.field();
        let blocks = q.symplectic_basis();
        let m = blocks.len();
        let n = q.dim();
        let p = QForm::symplectic_matrix(&blocks, f, n);
        let to_symplectic = p.inverse()?.ok_or(FormError::Singular)?;
        let masks: Vec<u32> = (0..1u32 << (2 * m))
            .filter(|x| parity == Parity::Full || x.count_ones() % 2 == 0)
            .collect();
        let mut index = vec![usize::MAX; 1 << (2 * m)];
        for (i, x) in masks.iter().enumerate() {
            index[*x as usize] = i;
        }
        let mut c = Cliff {
            form: q.clone(),
            blocks,
            m,
            parity,
            masks,
            index,
            to_symplectic,
            alg: Alg::matrix(f, 1),
            inv: Inv::new(&Alg::matrix(f, 1), Mat::identity(f, 1))?,
            canonical_map: OnceLock::new(),
        };
        c.alg = c.build_alg()?;
        c.inv = c.build_inv()?;
        Ok(c)
    }

    fn build_alg(&self) -> Result<Alg<F>, CliffError> {
        let f = self.form.field();
        let d = self.masks.len();
        let mut table = Vec::with_capacity(d * d);
        for &x in &self.masks {
            for &y in &self.masks {
                table.push(self.mono_mul(x, y).into_iter().map(|(z, c)| (self.index[z as usize], c)).collect());
            }
        }
        let labels = self.masks.iter().map(|x| mask_label(*x, self.m)).collect();
        let top = self.top_mask();
        let trd = exactla::unit_vec(f, d, self.index[top as usize]);
        let (degree, prov) = match self.parity {
            Parity::Full => (Some(1usize << self.m), Provenance::CliffordFull),
            Parity::Even => (None, Provenance::CliffordEven),
        };
        Ok(Alg::from_table(f, labels, table, exactla::unit_vec(f, d, 0), trd, degree, prov)?)
    }

    fn build_inv(&self) -> Result<Inv<F>, CliffError> {
        let f = self.form.field();
        let d = self.masks.len();
        let mut m = Mat::zeros(f, d, d);
        for (j, &x) in self.masks.iter().enumerate() {
            for (z, c) in self.mono_reverse(x) {
                let i = self.index[z as usize];
                m.set(i, j, f.add(m.get(i, j), &c));
            }
        }
        Ok(Inv::from_trusted(&self.alg, m))
    }

    fn top_mask(&self) -> u32 {
        ((1u64 << (2 * self.m)) - 1) as u32
    }

    /// Product of two monomials as a list of `(mask, coefficient)`.
    pub fn mono_mul(&self, x: u32, y: u32) -> Vec<(u32, F::Elem)> {
        let f = self.form.field();
        let mut terms = vec![(0u32, f.one())];
        for (i, blk) in self.blocks.iter().enumerate() {
            let (cx, cy) = ((x >> (2 * i)) & 3, (y >> (2 * i)) & 3);
            let local = local_product(f, cx, cy, &blk.a, &blk.b);
            let mut next = Vec::with_capacity(terms.len() * local.len());
            for (mask, c) in &terms {
                for (code, lc) in &local {
                    let coef = f.mul(c, lc);
                    if !f.is_zero(&coef) {
                        next.push((mask | (code << (2 * i)), coef));
                    }
                }
            }
            terms = next;
        }
        terms
    }

    fn mono_reverse(&self, x: u32) -> Vec<(u32, F::Elem)> {
        let f = self.form.field();
        let mut terms = vec![(0u32, f.one())];
        for i in 0..self.m {
            let local = local_reverse(f, (x >> (2 * i)) & 3);
            let mut next = Vec::with_capacity(terms.len() * local.len());
            for (mask, c) in &terms {
                for (code, lc) in &local {
                    next.push((mask | (code << (2 * i)), f.mul(c, lc)));
                }
            }
            terms = next;
        }
        terms
    }

    pub fn form(&self) -> &QForm<F> {
        &self.form
    }
    pub fn field(&self) -> &F {
        self.form.field()
    }
    pub fn blocks(&self) -> &[SymplecticBlock<F>] {
        &self.blocks
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn parity(&self) -> Parity {
        self.parity
    }
    pub fn dim(&self) -> usize {
        self.masks.len()
    }
    pub fn masks(&self) -> &[u32] {
        &self.masks
    }
    pub fn alg(&self) -> &Alg<F> {
        &self.alg
    }
    pub fn involution(&self) -> &Inv<F> {
        &self.inv
    }

    pub fn monomial(&self, mask: u32) -> Option<AlgElt<F>> {
        let i = *self.index.get(mask as usize)?;
        (i != usize::MAX).then(|| self.alg.basis_elem(i))
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> AlgElt<F> {
        self.alg.mul(x, y)
    }

    /// Restricted reduced trace: the coefficient of `e₁e₁'⋯e_me_m'`.
    pub fn trace(&self, x: &[F::Elem]) -> F::Elem {
        self.alg.trd(x)
    }

    /// `ξ = Σ e_ie_i'`.
    pub fn xi(&self) -> AlgElt<F> {
        let f = self.field();
        let mut out = self.alg.zero();
        for i in 0..self.m {
            out[self.index[(3u32 << (2 * i)) as usize]] = f.one();
        }
        out
    }

    /// Products in the full monomial space (length `4^m`).
    fn full_mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        let f = self.field();
        let mut out = exactla::zero_vec(f, x.len());
        let ys: Vec<(usize, &F::Elem)> = y.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for &(j, yj) in &ys {
                let c = f.mul(xi, yj);
                for (z, t) in self.mono_mul(i as u32, j as u32) {
                    out[z as usize] = f.add(&out[z as usize], &f.mul(&c, &t));
                }
            }
        }
        out
    }

    /// `ι(v)` in the full monomial space, for `v` in standard coordinates.
    fn full_vector(&self, v: &[F::Elem]) -> Vector<F> {
        let f = self.field();
        let y = self.to_symplectic.mul_vec(v).expect("dimension");
        let mut out = exactla::zero_vec(f, 1 << (2 * self.m));
        for (k, c) in y.into_iter().enumerate() {
            out[1 << k] = c;
        }
        out
    }

    fn restrict(&self, full: &[F::Elem]) -> Result<AlgElt<F>, CliffError> {
        let f = self.field();
        let mut out = self.alg.zero();
        for (mask, c) in full.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let i = self.index[mask];
            if i == usize::MAX {
                return Err(CliffError::WrongParity("full"));
            }
            out[i] = c.clone();
        }
        Ok(out)
    }

    /// `ι(v₁)⋯ι(v_k)` for vectors in standard coordinates.
    pub fn product_of_vectors(&self, vs: &[Vector<F>]) -> Result<AlgElt<F>, CliffError> {
        let f = self.field();
        let n = self.form.dim();
        let mut acc = exactla::unit_vec(f, 1 << (2 * self.m), 0);
        for v in vs {
            if v.len() != n {
                return Err(CliffError::Size(n));
            }
            acc = self.full_mul(&acc, &self.full_vector(v));
        }
        self.restrict(&acc)
    }

    fn require_even(&self) -> Result<(), CliffError> {
        match self.parity {
            Parity::Even => Ok(()),
            Parity::Full => Err(CliffError::WrongParity("even")),
        }
    }

    /// Matrix of the canonical map `c: End(V) → C₀(q)`, column `i·n + j`
    /// holding `c(E_ij) = ι(e_i)·ι(B⁻¹e_j)`.
    pub fn canonical_map_matrix(&self) -> Result<&Mat<F>, CliffError> {
        self.require_even()?;
        if let Some(m) = self.canonical_map.get() {
            return Ok(m);
        }
        let f = self.field();
        let n = self.form.dim();
        let binv = self.form.polar_matrix().inverse()?.ok_or(FormError::Singular)?;
        let left: Vec<Vector<F>> = (0..n).map(|i| self.full_vector(&exactla::unit_vec(f, n, i))).collect();
        let right: Vec<Vector<F>> = (0..n).map(|j| self.full_vector(&binv.column(j))).collect();
        let mut cols = Vec::with_capacity(n * n);
        for l in &left {
            for r in &right {
                cols.push(self.restrict(&self.full_mul(l, r))?);
            }
        }
        let m = Mat::from_columns(f, self.dim(), &cols)?;
        Ok(self.canonical_map.get_or_init(|| m))
    }

    /// `c(x)` for `x ∈ End(V)` given as an `n×n` matrix.
    pub fn canonical_map(&self, x: &Mat<F>) -> Result<AlgElt<F>, CliffError> {
        let n = self.form.dim();
        if x.rows() != n || x.cols() != n {
            return Err(CliffError::Size(n));
        }
        Ok(self.canonical_map_matrix()?.mul_vec(x.entries())?)
    }

    /// `(c(A), c(A) ∩ Skew, c(A) ∩ Alt)`.
    pub fn image_subspaces(&self) -> Result<(Subspace<F>, Subspace<F>, Subspace<F>), CliffError> {
        self.require_even()?;
        let n = self.form.dim();
        if n < 6 {
            return Err(CliffError::DimensionTooSmall { need: 6, got: n });
        }
        let c = self.canonical_map_matrix()?;
        let ca = Subspace::span(self.field(), self.dim(), (0..c.cols()).map(|j| c.column(j)))?;
        let skew = ca.intersect(self.inv.sym())?;
        let alt = ca.intersect(self.inv.symd())?;
        Ok((ca, skew, alt))
    }

    fn check_witness(&self, u: &[F::Elem]) -> Result<(), CliffError> {
        if &self.inv.symmetrize(u) != self.alg.unit() {
            return Err(CliffError::BadWitness);
        }
        Ok(())
    }

    /// Centre-valued semi-trace determined by a witness `w` with `w + σ(w) = 1`.
    pub fn semitrace_from_witness(&self, w: &[F::Elem]) -> Result<CentreSemiTr<F>, CliffError> {
        self.require_even()?;
        self.check_witness(w)?;
        let f = self.field();
        let xw = self.mul(&self.xi(), w);
        let (r0, r1) = (self.alg.trd_mul_row(w), self.alg.trd_mul_row(&xw));
        let sym = self.inv.sym();
        let rows = [
            sym.basis().iter().map(|s| dot(f, &r0, s)).collect(),
            sym.basis().iter().map(|s| dot(f, &r1, s)).collect(),
        ];
        Ok(CentreSemiTr { witness: w.to_vec(), rows })
    }

    fn require_canonical_degree(&self) -> Result<(), CliffError> {
        let n = self.form.dim();
        if n < 8 {
            return Err(CliffError::DimensionTooSmall { need: 8, got: n });
        }
        if self.m % 2 == 1 {
            return Err(CliffError::OddBlockCount(self.m));
        }
        Ok(())
    }

    /// Canonical semi-trace `s ↦ Trd(c(λ)s)` for `λ ∈ End(V)` of trace 1.
    pub fn canonical_semitrace(&self, lambda: &Mat<F>) -> Result<CentreSemiTr<F>, CliffError> {
        self.require_even()?;
        self.require_canonical_degree()?;
        let t = lambda.trace()?;
        if !self.field().is_one(&t) {
            return Err(CliffError::TraceNotOne(self.field().format_elem(&t)));
        }
        let w = self.canonical_map(lambda)?;
        self.semitrace_from_witness(&w)
    }

    /// `f_{e,e'}`, determined by `ee' ∈ C₀(q)` for `b(e, e') = 1`.
    pub fn pair_semitrace(&self, e: &[F::Elem], e_prime: &[F::Elem]) -> Result<CentreSemiTr<F>, CliffError> {
        self.require_even()?;
        if !self.field().is_one(&self.form.polar(e, e_prime)) {
            return Err(CliffError::NotSymplecticPair);
        }
        let w = self.product_of_vectors(&[e.to_vec(), e_prime.to_vec()])?;
        self.semitrace_from_witness(&w)
    }

    pub fn eval_semitrace(&self, st: &CentreSemiTr<F>, s: &[F::Elem]) -> Result<(F::Elem, F::Elem), CliffError> {
        let f = self.field();
        let coords = self.inv.sym().coordinates(s).ok_or(PairError::NotSymmetric)?;
        Ok((dot(f, &coords, &st.rows[0]), dot(f, &coords, &st.rows[1])))
    }

    /// Splits `C₀(q) = C⁺ × C⁻` along `c(ℓ) + u` and `c(ℓ) + u + 1`, where
    /// `ℓ ∈ End(V)` gives the semi-trace of `Ad_q` and `u² + u = c(ℓ)² + c(ℓ)`.
    pub fn split_components_with(&self, ell: &Mat<F>) -> Result<Components<F>, CliffError> {
        self.require_even()?;
        self.require_canonical_degree()?;
        let f = self.field();
        let z = self.canonical_map(ell)?;
        let mut zz = self.mul(&z, &z);
        axpy(f, &mut zz, &f.one(), &z);
        let d = zz[0].clone();
        if zz != self.alg.scalar(&d) {
            return Err(CliffError::Inconsistent("c(l)^2 + c(l) is not a scalar".into()));
        }
        let u = f
            .artin_schreier_solve(&d)?
            .ok_or_else(|| CliffError::NontrivialDiscriminant(f.format_elem(&d)))?;
        let mut e_plus = z.clone();
        axpy(f, &mut e_plus, &u, self.alg.unit());
        let e_minus = exactla::vec_add(f, &e_plus, self.alg.unit());
        let n = self.form.dim();
        let mut lambda = Mat::zeros(f, n, n);
        lambda.set(0, 0, f.one());
        let cl = self.canonical_map(&lambda)?;
        Ok(Components {
            plus: self.component(&e_plus, &cl)?,
            minus: self.component(&e_minus, &cl)?,
            centre_root: u,
        })
    }

    /// Components for `Ad_q` itself, with witness `ℓ = B⁻¹U`.
    pub fn split_components(&self) -> Result<Components<F>, CliffError> {
        let b = self.form.polar_matrix();
        let ell = b.inverse()?.ok_or(FormError::Singular)?.mul(self.form.gram())?;
        self.split_components_with(&ell)
    }

    fn component(&self, e: &[F::Elem], cl: &[F::Elem]) -> Result<Component<F>, CliffError> {
        let f = self.field();
        let d = self.dim();
        let proj: Vec<AlgElt<F>> = (0..d).map(|t| self.mul(&self.alg.basis_elem(t), e)).collect();
        let mut ech = exactla::EchelonBasis::new(f, d);
        let mut chosen = Vec::new();
        for (t, p) in proj.iter().enumerate() {
            if ech.insert(p) {
                chosen.push(t);
            }
        }
        let k = chosen.len();
        if k * 2 != d {
            return Err(CliffError::Inconsistent(format!("component of dimension {k}")));
        }
        let embedding = Mat::from_columns(f, d, &chosen.iter().map(|t| proj[*t].clone()).collect::<Vec<_>>())?;
        let (_, pivot_rows) = embedding.transpose().rref();
        let sub = Mat::from_fn(f, k, k, |i, j| embedding.get(pivot_rows[i], j).clone());
        let sub_inv = sub.inverse()?.ok_or_else(|| CliffError::Inconsistent("pivot block".into()))?;
        let coords = |x: &[F::Elem]| -> Vector<F> {
            let xs: Vector<F> = pivot_rows.iter().map(|r| x[*r].clone()).collect();
            sub_inv.mul_vec(&xs).expect("shape")
        };
        let proj_coords: Vec<Vector<F>> = proj.iter().map(|p| coords(p)).collect();
        let mut table = Vec::with_capacity(k * k);
        for &i in &chosen {
            for &j in &chosen {
                let mut acc = exactla::zero_vec(f, k);
                for (t, c) in self.alg.basis_product(i, j) {
                    axpy(f, &mut acc, c, &proj_coords[*t]);
                }
                table.push(acc.into_iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect());
            }
        }
        let trd: Vector<F> = chosen.iter().map(|t| self.trace(&proj[*t])).collect();
        let labels = chosen.iter().map(|t| format!("{}*e", mask_label(self.masks[*t], self.m))).collect();
        let alg = Alg::from_table(
            f,
            labels,
            table,
            coords(e),
            trd,
            Some(1 << (self.m - 1)),
            Provenance::Component,
        )?;
        let sigma_cols: Vec<Vector<F>> = chosen
            .iter()
            .map(|t| {
                let img = self.inv.apply(&self.alg.basis_elem(*t));
                let mut acc = exactla::zero_vec(f, k);
                for (s, c) in img.iter().enumerate() {
                    if !f.is_zero(c) {
                        axpy(f, &mut acc, c, &proj_coords[s]);
                    }
                }
                acc
            })
            .collect();
        let inv = Inv::from_trusted(&alg, Mat::from_columns(f, k, &sigma_cols)?);
        let witness = coords(&self.mul(cl, e));
        let pair = QPair::new(inv, &witness)?;
        Ok(Component { idempotent: e.to_vec(), pair, embedding })
    }

    /// `uᵢ = eᵢeᵢ'`, `vᵢ = eᵢe_m` for `i < m`, and `ξ`.
    pub fn decompose_even(&self) -> Result<EvenDecomposition<F>, CliffError> {
        self.require_even()?;
        if self.m < 2 {
            return Err(CliffError::DimensionTooSmall { need: 4, got: self.form.dim() });
        }
        let f = self.field();
        let last = 2 * (self.m - 1) as u32;
        let mut u = Vec::new();
        let mut v = Vec::new();
        let mut params = Vec::new();
        for i in 0..self.m - 1 {
            u.push(self.monomial(3 << (2 * i)).expect("even"));
            v.push(self.monomial((1 << (2 * i)) | (1 << last)).expect("even"));
            let (bi, bm) = (&self.blocks[i], &self.blocks[self.m - 1]);
            params.push((f.mul(&bi.a, &bi.b), f.mul(&bi.a, &bm.a)));
        }
        Ok(EvenDecomposition { u, v, xi: self.xi(), params })
    }

    /// Checks the quaternion relations of [`Cliff::decompose_even`], the
    /// commutation rules, the involution on generators, and that the
    /// generated subalgebra is all of `C₀(q)`.  Returns failed checks.
    pub fn verify_decomposition(&self, dec: &EvenDecomposition<F>) -> Vec<String> {
        let f = self.field();
        let one = self.alg.unit().clone();
        let arf = self.form.arf().value;
        let mut failures = Vec::new();
        let comm = |x: &[F::Elem], y: &[F::Elem]| self.mul(x, y) == self.mul(y, x);
        for (i, (ui, vi)) in dec.u.iter().zip(&dec.v).enumerate() {
            let one_u = exactla::vec_add(f, &one, ui);
            if self.mul(ui, &one_u) != self.alg.scalar(&dec.params[i].0) {
                failures.push(format!("u{}(1+u{}) != a b", i + 1, i + 1));
            }
            if self.mul(vi, vi) != self.alg.scalar(&dec.params[i].1) {
                failures.push(format!("v{}^2 != a a_m", i + 1));
            }
            if self.mul(ui, vi) != self.mul(vi, &one_u) {
                failures.push(format!("u{}v{} != v{}(1+u{})", i + 1, i + 1, i + 1, i + 1));
            }
            if self.inv.apply(ui) != one_u || &self.inv.apply(vi) != vi {
                failures.push(format!("involution on Q{}", i + 1));
            }
            if !comm(ui, &dec.xi) || !comm(vi, &dec.xi) {
                failures.push(format!("xi does not commute with Q{}", i + 1));
            }
            for j in 0..i {
                for (x, y) in [(ui, &dec.u[j]), (ui, &dec.v[j]), (vi, &dec.u[j]), (vi, &dec.v[j])] {
                    if !comm(x, y) {
                        failures.push(format!("Q{} and Q{} do not commute", j + 1, i + 1));
                    }
                }
            }
        }
        let mut xx = self.mul(&dec.xi, &dec.xi);
        axpy(f, &mut xx, &f.one(), &dec.xi);
        if xx != self.alg.scalar(&arf) {
            failures.push("xi^2 != xi + arf".into());
        }
        let mut spanning = vec![one.clone()];
        for (ui, vi) in dec.u.iter().zip(&dec.v) {
            let local = [one.clone(), ui.clone(), vi.clone(), self.mul(ui, vi)];
            spanning = spanning.iter().flat_map(|s| local.iter().map(move |l| (s, l))).map(|(s, l)| self.mul(s, l)).collect();
        }
        let with_xi: Vec<AlgElt<F>> = spanning.iter().flat_map(|s| [s.clone(), self.mul(s, &dec.xi)]).collect();
        if Subspace::span(f, self.dim(), with_xi).map(|s| s.dim()).unwrap_or(0) != self.dim() {
            failures.push("generators do not span".into());
        }
        failures
    }

    /// Matrix of `C₀(g)`: `vw ↦ μ⁻¹·g(v)g(w)` for a similitude `g` of `q`.
    pub fn induced_automorphism(&self, g: &Mat<F>) -> Result<Mat<F>, CliffError> {
        self.require_even()?;
        let f = self.field();
        let mu = similitude_multiplier(&self.form, g).ok_or(CliffError::NotSimilitude)?;
        let mu_inv = f.inv(&mu).expect("nonzero multiplier");
        let p = QForm::symplectic_matrix(&self.blocks, f, self.form.dim());
        let images: Vec<Vector<F>> = (0..2 * self.m)
            .map(|k| Ok(self.full_vector(&g.mul_vec(&p.column(k))?)))
            .collect::<Result<_, CliffError>>()?;
        let cols: Vec<AlgElt<F>> = self
            .masks
            .iter()
            .map(|&mask| {
                let mut acc = exactla::unit_vec(f, 1 << (2 * self.m), 0);
                for (k, img) in images.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        acc = self.full_mul(&acc, img);
                    }
                }
                let scale = f.pow(&mu_inv, (mask.count_ones() / 2) as u64);
                self.restrict(&exactla::vec_scale(f, &acc, &scale))
            })
            .collect::<Result<_, _>>()?;
        Ok(Mat::from_columns(f, self.dim(), &cols)?)
    }

    /// `C₀(g)(ξ) = μ⁻¹·Σ g(e_i)g(e_i')`.
    pub fn xi_image(&self, g: &Mat<F>) -> Result<AlgElt<F>, CliffError> {
        self.require_even()?;
        let f = self.field();
        let mu = similitude_multiplier(&self.form, g).ok_or(CliffError::NotSimilitude)?;
        let mu_inv = f.inv(&mu).expect("nonzero multiplier");
        let mut acc = exactla::zero_vec(f, 1 << (2 * self.m));
        for blk in &self.blocks {
            let x = self.full_vector(&g.mul_vec(&blk.e)?);
            let y = self.full_vector(&g.mul_vec(&blk.e_prime)?);
            axpy(f, &mut acc, &mu_inv, &self.full_mul(&x, &y));
        }
        self.restrict(&acc)
    }

    /// Proper similitudes fix `ξ`; improper ones send it to `ξ + 1`.
    pub fn is_proper(&self, g: &Mat<F>) -> Result<bool, CliffError> {
        let img = self.xi_image(g)?;
        let xi = self.xi();
        if img == xi {
            Ok(true)
        } else if img == exactla::vec_add(self.field(), &xi, self.alg.unit()) {
            Ok(false)
        } else {
            Err(CliffError::Inconsistent("centre is not preserved".into()))
        }
    }

    /// Columns `e₁, e₁', …` of the chosen symplectic basis.
    pub fn symplectic_matrix(&self) -> Mat<F> {
        QForm::symplectic_matrix(&self.blocks, self.field(), self.form.dim())
    }

    /// The semi-trace `x ↦ Trd(ee'x)` on the full Clifford algebra.
    pub fn full_semitrace(&self, e: &[F::Elem], e_prime: &[F::Elem]) -> Result<QPair<F>, CliffError> {
        if self.parity != Parity::Full {
            return Err(CliffError::WrongParity("full"));
        }
        let n = self.form.dim();
        if n < 6 {
            return Err(CliffError::DimensionTooSmall { need: 6, got: n });
        }
        if !self.field().is_one(&self.form.polar(e, e_prime)) {
            return Err(CliffError::NotSymplecticPair);
        }
        let w = self.product_of_vectors(&[e.to_vec(), e_prime.to_vec()])?;
        Ok(QPair::new(self.inv.clone(), &w)?)
    }
}

/// `μ` with `q(g·x) = μ·q(x)` for all `x`, checked on basis vectors and their
/// pairwise sums; `None` if `g` is not a similitude.
pub fn similitude_multiplier<F: Field>(q: &QForm<F>, g: &Mat<F>) -> Option<F::Elem> {
    let f = q.field();
    let n = q.dim();
    if g.rows() != n || g.cols() != n {
        return None;
    }
    let gq = q.pullback(g).ok()?;
    let ratios = gq.gram().entries().iter().zip(q.gram().entries()).find(|(_, b)| !f.is_zero(b))?;
    let mu = f.div(ratios.0, ratios.1)?;
    (!f.is_zero(&mu) && gq == q.scaled(&mu)).then_some(mu)
}

/// Uniformly chosen vectors `(e, e')` with `b(e, e') = 1`.
pub fn random_symplectic_pair<F: Field, R: rand::Rng + ?Sized>(q: &QForm<F>, rng: &mut R) -> (Vector<F>, Vector<F>) {
    let f = q.field();
    loop {
        let e = exactla::random_vec(f, q.dim(), rng);
        let w = exactla::random_vec(f, q.dim(), rng);
        let b = q.polar(&e, &w);
        if let Some(bi) = f.inv(&b) {
            return (e, exactla::vec_scale(f, &w, &bi));
        }
    }
}

/// Orthogonal reflection `x ↦ x + b(x,v)q(v)⁻¹v` for `q(v) ≠ 0`.
pub fn reflection<F: Field>(q: &QForm<F>, v: &[F::Elem]) -> Option<Mat<F>> {
    let f = q.field();
    let qv_inv = f.inv(&q.eval(v))?;
    let n = q.dim();
    let cols: Vec<Vector<F>> = (0..n)
        .map(|j| {
            let x = exactla::unit_vec(f, n, j);
            let mut y = x.clone();
            axpy(f, &mut y, &f.mul(&q.polar(&x, v), &qv_inv), v);
            y
        })
        .collect();
    Mat::from_columns(f, n, &cols).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadforms::random_form;
    use crate::quadpairs::canonical_otimes;
    use crate::scalars::Gf2k;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn even(q: &QForm<Gf2k>) -> Cliff<Gf2k> {
        Cliff::new(q, Parity::Even).unwrap()
    }

    #[test]
    fn dimensions_and_small_cases() {
        let f = Gf2k::gf2();
        let h = QForm::hyperbolic(&f, 1);
        let c = even(&h);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.alg().labels(), &["1".to_string(), "e1e1'".to_string()]);
        let q = QForm::from_blocks(&f, &[(1, 1), (1, 1)]);
        let c = even(&q);
        assert_eq!(c.dim(), 8);
        let xi = c.xi();
        let mut xx = c.mul(&xi, &xi);
        axpy(&f, &mut xx, &1, &xi);
        assert!(exactla::is_zero_vec(&f, &xx));
        let full = Cliff::new(&QForm::hyperbolic(&f, 4), Parity::Full).unwrap();
        assert_eq!(full.dim(), 256);
    }

    #[test]
    fn generator_relations_hold() {
        let f = Gf2k::gf4();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = random_form(&f, 6, &mut rng);
        let c = Cliff::new(&q, Parity::Full).unwrap();
        let n = q.dim();
        let p = QForm::symplectic_matrix(c.blocks(), &f, n);
        for i in 0..n {
            for j in 0..n {
                let (vi, vj) = (p.column(i), p.column(j));
                let a = c.product_of_vectors(&[vi.clone(), vj.clone()]).unwrap();
                let b = c.product_of_vectors(&[vj.clone(), vi.clone()]).unwrap();
                let s = exactla::vec_add(&f, &a, &b);
                assert_eq!(s, c.alg().scalar(&q.polar(&vi, &vj)));
            }
            let vi = p.column(i);
            assert_eq!(c.product_of_vectors(&[vi.clone(), vi.clone()]).unwrap(), c.alg().scalar(&q.eval(&vi)));
        }
        for _ in 0..20 {
            let v = exactla::random_vec(&f, n, &mut rng);
            assert_eq!(c.product_of_vectors(&[v.clone(), v.clone()]).unwrap(), c.alg().scalar(&q.eval(&v)));
        }
    }

    #[test]
    fn algebra_and_involution_are_valid() {
        let f = Gf2k::gf2();
        let q = QForm::from_blocks(&f, &[(1, 1), (1, 0), (1, 1)]);
        for parity in [Parity::Even, Parity::Full] {
            let c = Cliff::new(&q, parity).unwrap();
            c.alg().check_associative().unwrap();
            c.alg().check_unit().unwrap();
            c.involution().validate().unwrap();
        }
        let full = Cliff::new(&q, Parity::Full).unwrap();
        assert!(full.involution().is_symplectic());
        assert_eq!(full.alg().centre().dim(), 1);
        let ev = even(&q);
        assert_eq!(ev.alg().centre().dim(), 2);
    }

    #[test]
    fn centre_of_even_algebra_is_spanned_by_xi() {
        let f = Gf2k::gf2();
        let q = QForm::from_blocks(&f, &[(1, 1), (1, 1)]);
        let c = even(&q);
        let z = c.alg().centre();
        assert_eq!(z.dim(), 2);
        assert!(z.contains(&c.xi()));
        assert!(z.contains(c.alg().unit()));
    }

    #[test]
    fn canonical_map_examples() {
        let f = Gf2k::gf2();
        let q = QForm::from_blocks(&f, &[(1, 1), (1, 0), (1, 1), (1, 0)]);
        let c = even(&q);
        let b = q.polar_matrix();
        let e1 = exactla::unit_vec(&f, 8, 0);
        let e1p = exactla::unit_vec(&f, 8, 1);
        let x = Mat::from_entries(&f, 8, 8, QPair::rank_one(&b, &e1, &e1p)).unwrap();
        assert_eq!(c.canonical_map(&x).unwrap(), c.monomial(3).unwrap());
        let cm = c.canonical_map_matrix().unwrap();
        for k in 0..64 {
            let col = cm.column(k);
            let t = if k / 8 == k % 8 { 1 } else { 0 };
            assert_eq!(c.involution().symmetrize(&col), c.alg().scalar(&t));
        }
        assert_eq!(cm.rank(), 29);
        let v = Mat::from_entries(&f, 8, 8, QPair::rank_one(&b, &e1, &e1)).unwrap();
        let cv = c.canonical_map(&v).unwrap();
        assert_eq!(cv, c.alg().scalar(&1));
        assert!(exactla::is_zero_vec(&f, &c.involution().symmetrize(&cv)));
    }

    #[test]
    fn image_subspace_examples() {
        let f = Gf2k::gf2();
        let q = QForm::from_blocks(&f, &[(1, 1), (1, 0), (1, 1)]);
        let c = even(&q);
        let (ca, skew, alt) = c.image_subspaces().unwrap();
        assert_eq!((ca.dim(), skew.dim()), (16, 15));
        assert_eq!(skew, alt);
        let (e1, e2, e3, e3p) = (1u32, 1 << 2, 1 << 4, 1 << 5);
        let x = c.monomial(e1 | e2 | e3 | e3p).unwrap();
        assert_eq!(c.involution().symmetrize(&x), c.monomial(e1 | e2).unwrap());
        let small = even(&QForm::hyperbolic(&f, 2));
        assert!(matches!(small.image_subspaces(), Err(CliffError::DimensionTooSmall { .. })));
    }

    #[test]
    fn canonical_semitrace_is_independent_of_lambda() {
        let f = Gf2k::gf4();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let q = random_form(&f, 8, &mut rng);
        let c = even(&q);
        let mut lambda = Mat::zeros(&f, 8, 8);
        lambda.set(0, 0, 1);
        let base = c.canonical_semitrace(&lambda).unwrap();
        for _ in 0..10 {
            let mut l = Mat::from_fn(&f, 8, 8, |_, _| f.random(&mut rng));
            let t = l.trace().unwrap();
            l.set(7, 7, f.add(l.get(7, 7), &f.add(&t, &1)));
            assert_eq!(c.canonical_semitrace(&l).unwrap(), base);
        }
        let (e, ep) = random_symplectic_pair(&q, &mut rng);
        assert_eq!(c.pair_semitrace(&e, &ep).unwrap(), base);
        let mut bad = Mat::zeros(&f, 8, 8);
        bad.set(0, 1, 1);
        assert!(matches!(c.canonical_semitrace(&bad), Err(CliffError::TraceNotOne(_))));
        let c6 = even(&random_form(&f, 6, &mut rng));
        let mut l6 = Mat::zeros(&f, 6, 6);
        l6.set(0, 0, 1);
        assert!(matches!(c6.canonical_semitrace(&l6), Err(CliffError::DimensionTooSmall { .. })));
    }

    #[test]
    fn components_of_hyperbolic_and_anisotropic_discriminant() {
        let f = Gf2k::gf2();
        let h = QForm::hyperbolic(&f, 4);
        let c = even(&h);
        let comps = c.split_components().unwrap();
        assert_eq!(comps.plus.pair.alg().dim(), 64);
        assert_eq!(comps.minus.pair.alg().dim(), 64);
        assert_eq!(c.xi(), comps.plus.idempotent);
        let nontrivial = QForm::from_blocks(&f, &[(1, 1), (0, 0), (0, 0), (0, 0)]);
        let c = even(&nontrivial);
        assert!(matches!(c.split_components(), Err(CliffError::NontrivialDiscriminant(_))));
    }

    #[test]
    fn components_are_valid_pairs() {
        let f = Gf2k::gf2();
        let q = QForm::from_blocks(&f, &[(1, 1), (1, 1), (1, 0), (1, 0)]);
        let c = even(&q);
        let comps = c.split_components().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for comp in [&comps.plus, &comps.minus] {
            let alg = comp.pair.alg();
            alg.check_associative().unwrap();
            alg.check_unit().unwrap();
            comp.pair.inv().validate().unwrap();
            assert!(comp.pair.inv().is_symplectic());
            let xs: Vec<Vec<u32>> = (0..20).map(|_| alg.random_elem(&mut rng)).collect();
            assert!(comp.pair.check_semitrace(&xs));
            assert_eq!(alg.centre().dim(), 1);
        }
    }

    #[test]
    fn decomposition_relations() {
        let f = Gf2k::gf2();
        let q = QForm::from_blocks(&f, &[(1, 1), (1, 1)]);
        let c = even(&q);
        let dec = c.decompose_even().unwrap();
        assert_eq!(dec.params, vec![(1, 1)]);
        assert!(c.verify_decomposition(&dec).is_empty());
        let f4 = Gf2k::gf4();
        let q = QForm::from_blocks(&f4, &[(1, 1), (2, 1), (1, 2), (1, 1)]);
        let c = even(&q);
        let dec = c.decompose_even().unwrap();
        assert_eq!(dec.params, vec![(1, 1), (2, 2), (2, 1)]);
        assert!(c.verify_decomposition(&dec).is_empty());
    }

    #[test]
    fn canonical_semitrace_is_the_tensor_semitrace() {
        let f = Gf2k::gf4();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let q = random_form(&f, 8, &mut rng);
        let c = even(&q);
        let dec = c.decompose_even().unwrap();
        let mut lambda = Mat::zeros(&f, 8, 8);
        lambda.set(3, 3, 1);
        let st = c.canonical_semitrace(&lambda).unwrap();
        let one = c.alg().unit().clone();
        let syms: Vec<[AlgElt<Gf2k>; 3]> =
            dec.u.iter().zip(&dec.v).map(|(u, v)| [one.clone(), v.clone(), c.mul(u, v)]).collect();
        for x in &syms[0] {
            for y in &syms[1] {
                for z in &syms[2] {
                    let s = c.mul(&c.mul(x, y), z);
                    assert_eq!(c.eval_semitrace(&st, &s).unwrap(), (0, 0));
                }
            }
        }
    }

    #[test]
    fn automorphisms_of_isometries() {
        let f = Gf2k::gf2();
        let q = QForm::from_blocks(&f, &[(1, 1), (1, 0), (1, 1), (1, 0)]);
        let c = even(&q);
        let id = Mat::identity(&f, 8);
        assert!(c.induced_automorphism(&id).unwrap().is_identity());
        let v = exactla::unit_vec(&f, 8, 0);
        let r = reflection(&q, &v).unwrap();
        assert_eq!(similitude_multiplier(&q, &r), Some(1));
        assert!(!c.is_proper(&r).unwrap());
        let w = exactla::unit_vec(&f, 8, 4);
        let r2 = r.mul(&reflection(&q, &w).unwrap()).unwrap();
        assert!(c.is_proper(&r2).unwrap());
        let a = c.induced_automorphism(&r).unwrap();
        let comps = c.split_components().unwrap();
        assert_eq!(a.mul_vec(&comps.plus.idempotent).unwrap(), comps.minus.idempotent);
        let rinv = r.inverse().unwrap().unwrap();
        let cm = c.canonical_map_matrix().unwrap();
        for k in 0..64 {
            let mut x = Mat::zeros(&f, 8, 8);
            x.set(k / 8, k % 8, 1);
            let moved = r.mul(&x).unwrap().mul(&rinv).unwrap();
            assert_eq!(a.mul_vec(&cm.column(k)).unwrap(), c.canonical_map(&moved).unwrap());
        }
    }

    #[test]
    fn automorphisms_act_on_semitrace_rows() {
        let f = Gf2k::gf4();
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let q = random_form(&f, 8, &mut rng);
        let c = even(&q);
        let (e, ep) = random_symplectic_pair(&q, &mut rng);
        let st = c.pair_semitrace(&e, &ep).unwrap();
        let v = loop {
            let v = exactla::random_vec(&f, 8, &mut rng);
            if q.eval(&v) != 0 {
                break v;
            }
        };
        let r = reflection(&q, &v).unwrap();
        let a = c.induced_automorphism(&r).unwrap();
        for s in c.involution().sym().basis() {
            let (x0, x1) = c.eval_semitrace(&st, s).unwrap();
            let (y0, y1) = c.eval_semitrace(&st, &a.mul_vec(s).unwrap()).unwrap();
            assert_eq!((y0, y1), (x0, f.add(&x0, &x1)));
        }
    }

    #[test]
    fn full_semitrace_examples() {
        let f = Gf2k::gf2();
        let q = QForm::from_blocks(&f, &[(1, 1), (1, 0), (1, 1)]);
        let c = Cliff::new(&q, Parity::Full).unwrap();
        let p = QForm::symplectic_matrix(c.blocks(), &f, 6);
        let base = c.full_semitrace(&p.column(0), &p.column(1)).unwrap();
        let other = c.full_semitrace(&p.column(2), &p.column(3)).unwrap();
        assert!(base.same_pair(&other));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let (e, ep) = random_symplectic_pair(&q, &mut rng);
            assert!(base.same_pair(&c.full_semitrace(&e, &ep).unwrap()));
        }
        for (k, &mask) in c.masks().iter().enumerate() {
            let complete = (0..3).any(|i| mask >> (2 * i) & 3 == 3);
            let s = c.alg().basis_elem(k);
            if !complete {
                assert_eq!(base.eval(&s).unwrap(), 0);
            }
        }
        assert!(base.is_hyperbolic(1).unwrap());
        assert!(matches!(
            c.full_semitrace(&p.column(0), &p.column(0)),
            Err(CliffError::NotSymplecticPair)
        ));
    }

    #[test]
    fn full_clifford_is_a_tensor_of_quaternions() {
        let f = Gf2k::gf4();
        let blocks = [(1, 2), (2, 3), (3, 1)];
        let q = QForm::from_blocks(&f, &blocks);
        let c = Cliff::new(&q, Parity::Full).unwrap();
        let factors: Vec<Inv<Gf2k>> = blocks
            .iter()
            .map(|(a, b)| Inv::quaternion_canonical(&Alg::quaternion(&f, &f.mul(a, b), a).unwrap()).unwrap())
            .collect();
        let otimes = canonical_otimes(&factors).unwrap();
        let p = QForm::symplectic_matrix(c.blocks(), &f, 6);
        let full = c.full_semitrace(&p.column(0), &p.column(1)).unwrap();
        assert_eq!(
            full.recover_form(0).unwrap().arf().class,
            otimes.recover_form(0).unwrap().arf().class
        );
        assert_eq!(
            full.recover_form(0).unwrap().witt_index().unwrap(),
            otimes.recover_form(0).unwrap().witt_index().unwrap()
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        #[test]
        fn rewriting_is_associative(seed in any::<u64>()) {
            let f = Gf2k::gf4();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = random_form(&f, 8, &mut rng);
            let c = Cliff::new(&q, Parity::Full).unwrap();
            use rand::Rng;
            for _ in 0..2000 {
                let (x, y, z) = (rng.gen_range(0..256u32), rng.gen_range(0..256u32), rng.gen_range(0..256u32));
                let (bx, by, bz) = (c.monomial(x).unwrap(), c.monomial(y).unwrap(), c.monomial(z).unwrap());
                prop_assert_eq!(c.mul(&c.mul(&bx, &by), &bz), c.mul(&bx, &c.mul(&by, &bz)));
            }
        }

        #[test]
        fn symplectic_pairs_give_one_semitrace(seed in any::<u64>()) {
            let f = Gf2k::gf2();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = random_form(&f, 8, &mut rng);
            let c = even(&q);
            let (e, ep) = random_symplectic_pair(&q, &mut rng);
            let (g, gp) = random_symplectic_pair(&q, &mut rng);
            prop_assert_eq!(c.pair_semitrace(&e, &ep).unwrap(), c.pair_semitrace(&g, &gp).unwrap());
        }
    }
}
