//! Involutions, semi-traces and quadratic pairs in characteristic 2.
//!
//! A semi-trace is stored as the witness `ℓ` together with its values on a
//! fixed (reduced echelon) basis of the symmetric elements; two semi-traces on
//! the same involution are equal exactly when those value rows agree.

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::algebras::{Alg, AlgError, AlgElt, MatrixRep, Provenance};
use crate::exactla::{self, dot, LinalgError, Mat, Subspace, Vector};
use crate::quadforms::{ArfInvariant, FormError, QForm};
use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("element does not satisfy l + sigma(l) = 1")]
    BadWitness,
    #[error("element is not symmetric")]
    NotSymmetric,
    #[error("quadratic pairs need even degree")]
    OddDegree,
    #[error("factor {0} does not carry a symplectic involution")]
    NotSymplectic(usize),
    #[error("canonical tensor semi-trace needs at least two factors")]
    TooFewFactors,
    #[error("operation needs a split algebra: {0}")]
    NotSplit(String),
    #[error("involution is not adjoint to a unique bilinear form (kernel dimension {0})")]
    NoAdjointForm(usize),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvKind {
    Orthogonal,
    Symplectic,
}

#[derive(Clone, Debug)]
pub struct SymmetrySpaces<F: Field> {
    pub sym: Subspace<F>,
    pub skew: Subspace<F>,
    pub symd: Subspace<F>,
    pub alt: Subspace<F>,
}

#[derive(Debug)]
struct InvCache<F: Field> {
    sym: OnceLock<Arc<Subspace<F>>>,
    symd: OnceLock<Subspace<F>>,
}

/// An `F`-linear involution, given by its matrix on the algebra basis
/// (column `j` is `σ(b_j)`).
#[derive(Clone, Debug)]
pub struct Inv<F: Field> {
    alg: Alg<F>,
    matrix: Mat<F>,
    columns: Arc<Vec<Vec<(usize, F::Elem)>>>,
    kind: InvKind,
    cache: Arc<InvCache<F>>,
}

impl<F: Field> Inv<F> {
    fn build(alg: &Alg<F>, matrix: Mat<F>) -> Self {
        let f = alg.field();
        let columns = (0..alg.dim())
            .map(|j| {
                (0..alg.dim()).filter(|&i| !f.is_zero(matrix.get(i, j))).map(|i| (i, matrix.get(i, j).clone())).collect()
            })
            .collect();
        let mut inv = Inv {
            alg: alg.clone(),
            matrix,
            columns: Arc::new(columns),
            kind: InvKind::Orthogonal,
            cache: Arc::new(InvCache { sym: OnceLock::new(), symd: OnceLock::new() }),
        };
        if inv.symd().contains(alg.unit()) {
            inv.kind = InvKind::Symplectic;
        }
        inv
    }

    /// Validated involution: `σ² = id`, `σ(1) = 1`, and `σ(xy) = σ(y)σ(x)`
    /// on all basis pairs.
    pub fn new(alg: &Alg<F>, matrix: Mat<F>) -> Result<Self, PairError> {
        if matrix.rows() != alg.dim() || matrix.cols() != alg.dim() {
            return Err(PairError::NotInvolution("matrix size".into()));
        }
        let inv = Self::build(alg, matrix);
        inv.validate()?;
        Ok(inv)
    }

    /// Unvalidated involution for matrices that are correct by construction.
    pub(crate) fn from_trusted(alg: &Alg<F>, matrix: Mat<F>) -> Self {
        Self::build(alg, matrix)
    }

    pub fn validate(&self) -> Result<(), PairError> {
        let a = &self.alg;
        if !self.matrix.mul(&self.matrix)?.is_identity() {
            return Err(PairError::NotInvolution("square is not the identity".into()));
        }
        if &self.apply(a.unit()) != a.unit() {
            return Err(PairError::NotInvolution("unit is not fixed".into()));
        }
        let images: Vec<AlgElt<F>> = (0..a.dim()).map(|i| self.apply(&a.basis_elem(i))).collect();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.apply(&a.mul(&a.basis_elem(i), &a.basis_elem(j)));
                if lhs != a.mul(&images[j], &images[i]) {
                    return Err(PairError::NotInvolution(format!("not anti-multiplicative on ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    /// Canonical involution of `[a,b)`: fixes `1, v, w` and sends `u` to `1 + u`.
    pub fn quaternion_canonical(alg: &Alg<F>) -> Result<Self, PairError> {
        if !matches!(alg.provenance(), Provenance::Quaternion { .. }) {
            return Err(PairError::NotInvolution("not a quaternion algebra".into()));
        }
        let f = alg.field();
        let mut m = Mat::identity(f, 4);
        m.set(0, 1, f.one());
        Self::new(alg, m)
    }

    /// Transpose on `M_n(F)`.
    pub fn transpose(alg: &Alg<F>) -> Result<Self, PairError> {
        let Provenance::Matrix(n) = alg.provenance() else {
            return Err(PairError::NotSplit("transpose needs a matrix algebra".into()));
        };
        let n = *n;
        let f = alg.field();
        let m = Mat::from_fn(f, n * n, n * n, |r, c| if r == (c % n) * n + c / n { f.one() } else { f.zero() });
        Self::new(alg, m)
    }

    /// Adjoint involution `X ↦ B⁻¹XᵀB` of a nondegenerate bilinear form on `M_n(F)`.
    pub fn adjoint(alg: &Alg<F>, b: &Mat<F>) -> Result<Self, PairError> {
        let Provenance::Matrix(n) = alg.provenance() else {
            return Err(PairError::NotSplit("adjoint involutions live on matrix algebras".into()));
        };
        let n = *n;
        if b.rows() != n || !b.is_square() {
            return Err(PairError::NotInvolution("form size".into()));
        }
        if b != &b.transpose() {
            return Err(PairError::NotInvolution("form is not symmetric".into()));
        }
        let binv = b.inverse()?.ok_or_else(|| PairError::NotInvolution("degenerate form".into()))?;
        let f = alg.field();
        let m = Mat::from_fn(f, n * n, n * n, |r, c| {
            let (k, l) = (r / n, r % n);
            let (i, j) = (c / n, c % n);
            f.mul(binv.get(k, j), b.get(i, l))
        });
        Self::new(alg, m)
    }

    /// `τ ⊗ σ` on `A_τ ⊗ A_σ`.
    pub fn tensor(&self, other: &Self) -> Result<Self, PairError> {
        let alg = Alg::tensor(&self.alg, &other.alg)?;
        let m = self.matrix.kron(&other.matrix)?;
        Ok(Self::build(&alg, m))
    }

    pub fn alg(&self) -> &Alg<F> {
        &self.alg
    }
    pub fn matrix(&self) -> &Mat<F> {
        &self.matrix
    }
    pub fn kind(&self) -> InvKind {
        self.kind
    }
    pub fn is_symplectic(&self) -> bool {
        self.kind == InvKind::Symplectic
    }

    pub fn apply(&self, x: &[F::Elem]) -> AlgElt<F> {
        let f = self.alg.field();
        let mut out = self.alg.zero();
        for (j, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (i, s) in &self.columns[j] {
                out[*i] = f.add(&out[*i], &f.mul(c, s));
            }
        }
        out
    }

    /// `x + σ(x)`.
    pub fn symmetrize(&self, x: &[F::Elem]) -> AlgElt<F> {
        exactla::vec_add(self.alg.field(), x, &self.apply(x))
    }

    fn plus_identity(&self) -> Mat<F> {
        let f = self.alg.field();
        self.matrix.add(&Mat::identity(f, self.alg.dim())).expect("square")
    }

    /// `Sym = ker(σ + 1)`, which equals `Skew` in characteristic 2.
    pub fn sym(&self) -> &Subspace<F> {
        self.cache.sym.get_or_init(|| Arc::new(self.plus_identity().kernel()))
    }

    fn sym_arc(&self) -> Arc<Subspace<F>> {
        self.sym();
        self.cache.sym.get().expect("initialized").clone()
    }

    /// `Symd = im(σ + 1)`, which equals `Alt` in characteristic 2.
    pub fn symd(&self) -> &Subspace<F> {
        self.cache.symd.get_or_init(|| {
            let m = self.plus_identity();
            let cols = (0..m.cols()).map(|j| m.column(j));
            Subspace::span(self.alg.field(), self.alg.dim(), cols).expect("ambient")
        })
    }

    pub fn symmetry_subspaces(&self) -> SymmetrySpaces<F> {
        SymmetrySpaces {
            sym: self.sym().clone(),
            skew: self.sym().clone(),
            symd: self.symd().clone(),
            alt: self.symd().clone(),
        }
    }

    /// Some `ℓ` with `ℓ + σ(ℓ) = 1`; exists exactly for symplectic involutions.
    pub fn unit_witness(&self) -> Option<AlgElt<F>> {
        self.plus_identity().solve(self.alg.unit()).expect("shape")
    }
}

/// A semi-trace `f_ℓ(s) = Trd(ℓs)` on `Sym(A, σ)`.
#[derive(Clone, Debug)]
pub struct SemiTr<F: Field> {
    ell: AlgElt<F>,
    sym: Arc<Subspace<F>>,
    values: Vector<F>,
}

impl<F: Field> PartialEq for SemiTr<F> {
    fn eq(&self, other: &Self) -> bool {
        self.sym == other.sym && self.values == other.values
    }
}

impl<F: Field> SemiTr<F> {
    pub fn from_element(inv: &Inv<F>, ell: &[F::Elem]) -> Result<Self, PairError> {
        let alg = inv.alg();
        if &inv.symmetrize(ell) != alg.unit() {
            return Err(PairError::BadWitness);
        }
        let sym = inv.sym_arc();
        let row = alg.trd_mul_row(ell);
        let values = sym.basis().iter().map(|s| dot(alg.field(), &row, s)).collect();
        Ok(SemiTr { ell: ell.to_vec(), sym, values })
    }

    pub fn ell(&self) -> &AlgElt<F> {
        &self.ell
    }
    /// Values on the echelon basis of `Sym`.
    pub fn values(&self) -> &Vector<F> {
        &self.values
    }
    pub fn sym_basis(&self) -> &[Vector<F>] {
        self.sym.basis()
    }

    pub fn eval(&self, f: &F, s: &[F::Elem]) -> Result<F::Elem, PairError> {
        let coords = self.sym.coordinates(s).ok_or(PairError::NotSymmetric)?;
        Ok(dot(f, &coords, &self.values))
    }
}

/// Algebra with quadratic pair `(A, σ, f)`.
#[derive(Clone, Debug)]
pub struct QPair<F: Field> {
    inv: Inv<F>,
    semi: SemiTr<F>,
}

impl<F: Field> QPair<F> {
    pub fn new(inv: Inv<F>, ell: &[F::Elem]) -> Result<Self, PairError> {
        if inv.alg().degree().is_some_and(|d| d % 2 == 1) {
            return Err(PairError::OddDegree);
        }
        let semi = SemiTr::from_element(&inv, ell)?;
        Ok(QPair { inv, semi })
    }

    /// `Ad_q` on `M_n(F)`: `σ` adjoint to the polar form and `f(φ(v⊗v)) = q(v)`
    /// with `φ(v⊗w) = v·wᵀB`; the witness is `ℓ = B⁻¹U`.
    pub fn adjoint(q: &QForm<F>) -> Result<Self, PairError> {
        let f = q.field();
        let n = q.dim();
        let alg = Alg::matrix(f, n);
        let b = q.polar_matrix();
        let inv = Inv::adjoint(&alg, &b)?;
        let binv = b.inverse()?.ok_or(FormError::Singular)?;
        let ell = binv.mul(q.gram())?;
        Self::new(inv, ell.entries())
    }

    /// `φ(v⊗w) = v·wᵀB` as an element of `M_n(F)`.
    pub fn rank_one(b: &Mat<F>, v: &[F::Elem], w: &[F::Elem]) -> Vector<F> {
        let f = b.field();
        let wb = b.vec_mul(w).expect("shape");
        v.iter().flat_map(|x| wb.iter().map(move |y| f.mul(x, y))).collect()
    }

    pub fn inv(&self) -> &Inv<F> {
        &self.inv
    }
    pub fn alg(&self) -> &Alg<F> {
        self.inv.alg()
    }
    pub fn semitrace(&self) -> &SemiTr<F> {
        &self.semi
    }
    pub fn ell(&self) -> &AlgElt<F> {
        self.semi.ell()
    }
    pub fn field(&self) -> &F {
        self.alg().field()
    }

    pub fn eval(&self, s: &[F::Elem]) -> Result<F::Elem, PairError> {
        self.semi.eval(self.field(), s)
    }

    /// Same involution and same semi-trace values.
    pub fn same_pair(&self, other: &Self) -> bool {
        self.inv.matrix() == other.inv.matrix() && self.semi == other.semi
    }

    /// `f(x + σ(x)) = Trd(x)` on the given elements.
    pub fn check_semitrace(&self, xs: &[AlgElt<F>]) -> bool {
        xs.iter().all(|x| self.eval(&self.inv.symmetrize(x)).ok() == Some(self.alg().trd(x)))
    }

    fn split_rep(&self, seed: u64) -> Result<MatrixRep<F>, PairError> {
        if let Some(rep) = self.alg().representation() {
            return Ok(rep.clone());
        }
        let split = self.alg().clone().split(seed)?;
        Ok(split.representation().expect("attached").clone())
    }

    /// Transports the pair to `M_n(F)`: returns the matrix of `σ` on the
    /// `E_ij` basis and the witness `ℓ` as an `n×n` matrix.
    fn to_matrix_model(&self, seed: u64) -> Result<(usize, Mat<F>, Mat<F>), PairError> {
        let f = self.field();
        if let Provenance::Matrix(n) = self.alg().provenance() {
            let ell = Mat::from_entries(f, *n, *n, self.ell().clone())?;
            return Ok((*n, self.inv.matrix().clone(), ell));
        }
        let rep = self.split_rep(seed)?;
        let n = rep.degree();
        let cols: Vec<Vector<F>> = (0..n * n)
            .map(|k| {
                let mut e = Mat::zeros(f, n, n);
                e.set(k / n, k % n, f.one());
                let x = rep.preimage(&e);
                rep.apply(&self.inv.apply(&x)).entries().to_vec()
            })
            .collect();
        let sigma = Mat::from_columns(f, n * n, &cols)?;
        Ok((n, sigma, rep.apply(self.ell())))
    }

    /// The bilinear form `B` with `σ = ad_B`, normalized so that its first
    /// nonzero entry in row-major order is 1, and the witness in `M_n(F)`.
    pub fn recover_bilinear(&self, seed: u64) -> Result<(Mat<F>, Mat<F>), PairError> {
        let f = self.field();
        let (n, sigma, ell) = self.to_matrix_model(seed)?;
        let nn = n * n;
        let mut rows = Vec::with_capacity(nn * nn);
        for x in 0..nn {
            let (i, j) = (x / n, x % n);
            for r in 0..n {
                for c in 0..n {
                    let mut row = exactla::zero_vec(f, nn);
                    for k in 0..n {
                        row[r * n + k] = sigma.get(k * n + c, x).clone();
                    }
                    if r == j {
                        row[i * n + c] = f.add(&row[i * n + c], &f.one());
                    }
                    if !exactla::is_zero_vec(f, &row) {
                        rows.push(row);
                    }
                }
            }
        }
        let system = Mat::from_rows(f, &rows)?;
        let ker = if rows.is_empty() { Subspace::full(f, nn) } else { system.kernel() };
        if ker.dim() != 1 {
            return Err(PairError::NoAdjointForm(ker.dim()));
        }
        let b = exactla::normalize_leading(f, &ker.basis()[0]);
        Ok((Mat::from_entries(f, n, n, b)?, ell))
    }

    /// A quadratic form whose adjoint is this pair (defined up to a scalar).
    pub fn recover_form(&self, seed: u64) -> Result<QForm<F>, PairError> {
        let f = self.field();
        let (b, ell) = self.recover_bilinear(seed)?;
        let bl = b.mul(&ell)?;
        let n = b.rows();
        let g = Mat::from_fn(f, n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => b.get(i, j).clone(),
            std::cmp::Ordering::Equal => bl.get(i, i).clone(),
            std::cmp::Ordering::Greater => f.zero(),
        });
        Ok(QForm::new(g)?)
    }

    /// `disc(σ, f) = Srd(ℓ) + m(m−1)/2` in `F/℘(F)`.
    pub fn discriminant(&self, seed: u64) -> Result<ArfInvariant<F>, PairError> {
        let f = self.field();
        let m_ell = match self.alg().provenance() {
            Provenance::Matrix(n) => Mat::from_entries(f, *n, *n, self.ell().clone())?,
            _ => self.split_rep(seed)?.apply(self.ell()),
        };
        let n = m_ell.rows();
        if n % 2 == 1 {
            return Err(PairError::OddDegree);
        }
        let p = m_ell.char_poly()?;
        let srd = if n >= 2 { p[n - 2].clone() } else { f.zero() };
        let m = n / 2;
        let value = f.add(&srd, &f.from_bool((m * m.saturating_sub(1) / 2) % 2 == 1));
        let class = f.artin_schreier_class(&value).ok();
        Ok(ArfInvariant { value, class })
    }

    /// Hyperbolic when the recovered form has Witt index `m`.
    pub fn is_hyperbolic(&self, seed: u64) -> Result<bool, PairError> {
        Ok(self.recover_form(seed)?.is_hyperbolic()?)
    }
}

/// `(B, τ) ⊗ (A, σ, f)` with witness `1 ⊗ ℓ`, so `f_⋆(b⊗a) = Trd(b)·f(a)`.
pub fn tensor_pair<F: Field>(tau: &Inv<F>, p: &QPair<F>) -> Result<QPair<F>, PairError> {
    let inv = tau.tensor(p.inv())?;
    let f = p.field();
    let ell: Vector<F> =
        tau.alg().unit().iter().flat_map(|a| p.ell().iter().map(move |b| f.mul(a, b))).collect();
    QPair::new(inv, &ell)
}

/// Canonical semi-trace on `⊗(A_i, σ_i)`, induced from a semi-trace on
/// factor `index` with witness `ell` (any witness when `None`).
pub fn canonical_otimes_at<F: Field>(
    factors: &[Inv<F>],
    index: usize,
    ell: Option<&[F::Elem]>,
) -> Result<QPair<F>, PairError> {
    if factors.len() < 2 {
        return Err(PairError::TooFewFactors);
    }
    if let Some(i) = factors.iter().position(|s| !s.is_symplectic()) {
        return Err(PairError::NotSymplectic(i));
    }
    let f = factors[0].alg().field();
    let local = match ell {
        Some(l) => l.to_vec(),
        None => factors[index].unit_witness().ok_or(PairError::NotSymplectic(index))?,
    };
    let mut inv = factors[0].clone();
    let mut witness = if index == 0 { local.clone() } else { factors[0].alg().unit().clone() };
    for (k, s) in factors.iter().enumerate().skip(1) {
        inv = inv.tensor(s)?;
        let right = if k == index { &local } else { s.alg().unit() };
        witness = witness.iter().flat_map(|a| right.iter().map(move |b| f.mul(a, b))).collect();
    }
    QPair::new(inv, &witness)
}

pub fn canonical_otimes<F: Field>(factors: &[Inv<F>]) -> Result<QPair<F>, PairError> {
    canonical_otimes_at(factors, factors.len().saturating_sub(1), None)
}

/// Split orthogonal sum on `End(V₁ ⊕ V₂)`: block-diagonal witness, involution
/// adjoint to `B₁ ⊕ μB₂`.
pub fn orthogonal_sum<F: Field>(p1: &QPair<F>, p2: &QPair<F>, mu: &F::Elem) -> Result<QPair<F>, PairError> {
    for p in [p1, p2] {
        if !matches!(p.alg().provenance(), Provenance::Matrix(_)) {
            return Err(PairError::NotSplit("orthogonal sums are realized on matrix algebras".into()));
        }
    }
    if p1.field() != p2.field() {
        return Err(PairError::Alg(AlgError::FieldMismatch));
    }
    let f = p1.field();
    if f.is_zero(mu) {
        return Err(PairError::NotInvolution("zero scaling factor".into()));
    }
    let (b1, l1) = p1.recover_bilinear(0)?;
    let (b2, l2) = p2.recover_bilinear(0)?;
    let b = b1.block_diag(&b2.scale(mu))?;
    let ell = l1.block_diag(&l2)?;
    let alg = Alg::matrix(f, b.rows());
    let inv = Inv::adjoint(&alg, &b)?;
    QPair::new(inv, ell.entries())
}
