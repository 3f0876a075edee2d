//! Finite-dimensional associative algebras given by structure constants.
//!
//! Elements are coordinate vectors over a fixed basis.  The reduced trace is
//! stored as a linear functional because it cannot be recovered from the
//! regular representation in characteristic 2.

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactla::{self, axpy, dot, LinalgError, Mat, Subspace, Vector};
use crate::scalars::poly::{self, Poly};
use crate::scalars::{Field, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("quaternion parameter b must be nonzero")]
    ZeroParameter,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails on basis element {0}")]
    NoUnit(usize),
    #[error("algebra is not central simple: {0}")]
    NotSimple(String),
    #[error("{0} needs a finite field")]
    InfiniteField(&'static str),
    #[error("no primitive idempotent found after {0} attempts")]
    SplitFailed(usize),
    #[error("split representation check failed: {0}")]
    BadRepresentation(String),
    #[error("no split representation is attached")]
    NoRepresentation,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// How an algebra was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Quaternion { a: String, b: String },
    Matrix(usize),
    Tensor(Box<Provenance>, Box<Provenance>),
    Product(Box<Provenance>, Box<Provenance>),
    CliffordEven,
    CliffordFull,
    Component,
    Octonion(String),
}

pub type AlgElt<F> = Vector<F>;

/// Explicit algebra map `A → M_n(F)`, given on basis elements.
#[derive(Clone, Debug)]
pub struct MatrixRep<F: Field> {
    n: usize,
    images: Vec<Mat<F>>,
    inverse: OnceLock<Mat<F>>,
}

impl<F: Field> MatrixRep<F> {
    pub fn degree(&self) -> usize {
        self.n
    }
    pub fn images(&self) -> &[Mat<F>] {
        &self.images
    }

    pub fn apply(&self, x: &[F::Elem]) -> Mat<F> {
        let f = self.images[0].field();
        let mut out = Mat::zeros(f, self.n, self.n);
        for (c, m) in x.iter().zip(&self.images) {
            if !f.is_zero(c) {
                out = out.add(&m.scale(c)).expect("same shape");
            }
        }
        out
    }

    /// Preimage of a matrix (the map is bijective once verified).
    pub fn preimage(&self, m: &Mat<F>) -> Vector<F> {
        let f = m.field();
        let inv = self.inverse.get_or_init(|| {
            let cols: Vec<Vector<F>> = self.images.iter().map(|x| x.entries().to_vec()).collect();
            Mat::from_columns(f, self.n * self.n, &cols)
                .expect("square")
                .inverse()
                .expect("square")
                .expect("representation is bijective")
        });
        inv.mul_vec(m.entries()).expect("shape")
    }
}

#[derive(Clone, Debug)]
pub struct Alg<F: Field> {
    field: F,
    dim: usize,
    labels: Vec<String>,
    table: Arc<Vec<Vec<(usize, F::Elem)>>>,
    unit: Vector<F>,
    trd: Vector<F>,
    degree: Option<usize>,
    provenance: Provenance,
    trace_form: Arc<OnceLock<Mat<F>>>,
    representation: Option<Arc<MatrixRep<F>>>,
}

fn isqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

impl<F: Field> Alg<F> {
    /// Builds an algebra from sparse structure constants:
    /// `b_i·b_j = Σ c·b_k` for `(k, c)` in `table[i*dim + j]`.
    pub fn from_table(
        field: &F,
        labels: Vec<String>,
        table: Vec<Vec<(usize, F::Elem)>>,
        unit: Vector<F>,
        trd: Vector<F>,
        degree: Option<usize>,
        provenance: Provenance,
    ) -> Result<Self, AlgError> {
        let dim = labels.len();
        for (len, expected) in [(table.len(), dim * dim), (unit.len(), dim), (trd.len(), dim)] {
            if len != expected {
                return Err(AlgError::DimensionMismatch { expected, got: len });
            }
        }
        let table = table
            .into_iter()
            .map(|terms| {
                let mut acc = exactla::zero_vec(field, dim);
                for (k, c) in terms {
                    acc[k] = field.add(&acc[k], &c);
                }
                acc.into_iter().enumerate().filter(|(_, c)| !field.is_zero(c)).collect()
            })
            .collect();
        Ok(Alg {
            field: field.clone(),
            dim,
            labels,
            table: Arc::new(table),
            unit,
            trd,
            degree,
            provenance,
            trace_form: Arc::new(OnceLock::new()),
            representation: None,
        })
    }

    /// `[a,b)` with basis `(1,u,v,w)`: `u² = u + a`, `v² = b`, `w = uv = v(1+u)`.
    pub fn quaternion(f: &F, a: &F::Elem, b: &F::Elem) -> Result<Self, AlgError> {
        if f.is_zero(b) {
            return Err(AlgError::ZeroParameter);
        }
        let one = f.one();
        let ab = f.mul(a, b);
        let t = |k: usize, c: &F::Elem| (k, c.clone());
        let table = vec![
            vec![t(0, &one)],
            vec![t(1, &one)],
            vec![t(2, &one)],
            vec![t(3, &one)],
            vec![t(1, &one)],
            vec![t(0, a), t(1, &one)],
            vec![t(3, &one)],
            vec![t(2, a), t(3, &one)],
            vec![t(2, &one)],
            vec![t(2, &one), t(3, &one)],
            vec![t(0, b)],
            vec![t(0, b), t(1, b)],
            vec![t(3, &one)],
            vec![t(2, a)],
            vec![t(1, b)],
            vec![t(0, &ab)],
        ];
        let labels = ["1", "u", "v", "w"].iter().map(|s| s.to_string()).collect();
        Self::from_table(
            f,
            labels,
            table,
            exactla::unit_vec(f, 4, 0),
            exactla::unit_vec(f, 4, 1),
            Some(2),
            Provenance::Quaternion { a: f.format_elem(a), b: f.format_elem(b) },
        )
    }

    /// `M_n(F)` with basis `E_ij` at index `i·n + j`.
    pub fn matrix(f: &F, n: usize) -> Self {
        let mut table = vec![Vec::new(); n.pow(4)];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    table[(i * n + j) * n * n + (j * n + l)] = vec![(i * n + l, f.one())];
                }
            }
        }
        let labels = (0..n * n).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
        let diag: Vector<F> = (0..n * n).map(|k| if k / n == k % n { f.one() } else { f.zero() }).collect();
        Self::from_table(f, labels, table, diag.clone(), diag, Some(n), Provenance::Matrix(n))
            .expect("consistent sizes")
    }

    /// `L ⊗ R`, basis `l_i ⊗ r_j ↦ i·dim(R) + j`, reduced trace by the product rule.
    pub fn tensor(l: &Self, r: &Self) -> Result<Self, AlgError> {
        if l.field != r.field {
            return Err(AlgError::FieldMismatch);
        }
        let f = &l.field;
        let (dl, dr) = (l.dim, r.dim);
        let d = dl * dr;
        let mut table = vec![Vec::new(); d * d];
        for i1 in 0..dl {
            for j1 in 0..dr {
                for i2 in 0..dl {
                    for j2 in 0..dr {
                        let mut terms = Vec::new();
                        for (k1, c1) in &l.table[i1 * dl + i2] {
                            for (k2, c2) in &r.table[j1 * dr + j2] {
                                terms.push((k1 * dr + k2, f.mul(c1, c2)));
                            }
                        }
                        table[(i1 * dr + j1) * d + (i2 * dr + j2)] = terms;
                    }
                }
            }
        }
        let labels = l
            .labels
            .iter()
            .flat_map(|a| r.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        let kron = |x: &[F::Elem], y: &[F::Elem]| -> Vector<F> {
            x.iter().flat_map(|a| y.iter().map(move |b| f.mul(a, b))).collect()
        };
        let degree = l.degree.zip(r.degree).map(|(a, b)| a * b);
        Self::from_table(
            f,
            labels,
            table,
            kron(&l.unit, &r.unit),
            kron(&l.trd, &r.trd),
            degree,
            Provenance::Tensor(Box::new(l.provenance.clone()), Box::new(r.provenance.clone())),
        )
    }

    /// `L × R`, basis of `L` followed by basis of `R`.
    pub fn product(l: &Self, r: &Self) -> Result<Self, AlgError> {
        if l.field != r.field {
            return Err(AlgError::FieldMismatch);
        }
        let f = &l.field;
        let (dl, dr) = (l.dim, r.dim);
        let d = dl + dr;
        let mut table = vec![Vec::new(); d * d];
        for i in 0..dl {
            for j in 0..dl {
                table[i * d + j] = l.table[i * dl + j].clone();
            }
        }
        for i in 0..dr {
            for j in 0..dr {
                table[(dl + i) * d + dl + j] = r.table[i * dr + j].iter().map(|(k, c)| (dl + k, c.clone())).collect();
            }
        }
        let labels = l.labels.iter().map(|s| format!("({s},0)")).chain(r.labels.iter().map(|s| format!("(0,{s})"))).collect();
        let cat = |x: &[F::Elem], y: &[F::Elem]| x.iter().chain(y).cloned().collect::<Vector<F>>();
        Self::from_table(
            f,
            labels,
            table,
            cat(&l.unit, &r.unit),
            cat(&l.trd, &r.trd),
            None,
            Provenance::Product(Box::new(l.provenance.clone()), Box::new(r.provenance.clone())),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &Vector<F> {
        &self.unit
    }
    pub fn trd_row(&self) -> &Vector<F> {
        &self.trd
    }
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }
    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
    pub fn representation(&self) -> Option<&MatrixRep<F>> {
        self.representation.as_deref()
    }
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i * self.dim + j]
    }

    pub fn zero(&self) -> AlgElt<F> {
        exactla::zero_vec(&self.field, self.dim)
    }
    pub fn basis_elem(&self, i: usize) -> AlgElt<F> {
        exactla::unit_vec(&self.field, self.dim, i)
    }
    pub fn scalar(&self, c: &F::Elem) -> AlgElt<F> {
        exactla::vec_scale(&self.field, &self.unit, c)
    }
    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgElt<F> {
        exactla::random_vec(&self.field, self.dim, rng)
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> AlgElt<F> {
        let f = &self.field;
        let mut out = self.zero();
        let ys: Vec<(usize, &F::Elem)> = y.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for &(j, yj) in &ys {
                let c = f.mul(xi, yj);
                for (k, t) in &self.table[i * self.dim + j] {
                    out[*k] = f.add(&out[*k], &f.mul(&c, t));
                }
            }
        }
        out
    }

    pub fn trd(&self, x: &[F::Elem]) -> F::Elem {
        dot(&self.field, &self.trd, x)
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mul_matrix(&self, x: &[F::Elem]) -> Mat<F> {
        let cols: Vec<Vector<F>> = (0..self.dim).map(|j| self.mul(x, &self.basis_elem(j))).collect();
        Mat::from_columns(&self.field, self.dim, &cols).expect("shape")
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mul_matrix(&self, x: &[F::Elem]) -> Mat<F> {
        let cols: Vec<Vector<F>> = (0..self.dim).map(|j| self.mul(&self.basis_elem(j), x)).collect();
        Mat::from_columns(&self.field, self.dim, &cols).expect("shape")
    }

    /// `G_ij = Trd(b_i b_j)`, so that `Trd(x·y) = xᵀGy`.
    pub fn trace_form(&self) -> &Mat<F> {
        self.trace_form.get_or_init(|| {
            let f = &self.field;
            Mat::from_fn(f, self.dim, self.dim, |i, j| {
                self.table[i * self.dim + j]
                    .iter()
                    .fold(f.zero(), |acc, (k, c)| f.add(&acc, &f.mul(c, &self.trd[*k])))
            })
        })
    }

    /// The row `y ↦ Trd(x·y)`.
    pub fn trd_mul_row(&self, x: &[F::Elem]) -> Vector<F> {
        self.trace_form().vec_mul(x).expect("shape")
    }

    fn check_triple(&self, i: usize, j: usize, k: usize) -> bool {
        let (bi, bj, bk) = (self.basis_elem(i), self.basis_elem(j), self.basis_elem(k));
        self.mul(&self.mul(&bi, &bj), &bk) == self.mul(&bi, &self.mul(&bj, &bk))
    }

    /// Associativity on every basis triple up to dimension 64, on `10⁴`
    /// seeded random triples above.
    pub fn check_associative(&self) -> Result<(), AlgError> {
        if self.dim <= 64 {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    for k in 0..self.dim {
                        if !self.check_triple(i, j, k) {
                            return Err(AlgError::NotAssociative(i, j, k));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.dim as u64);
            for _ in 0..10_000 {
                let (i, j, k) = (rng.gen_range(0..self.dim), rng.gen_range(0..self.dim), rng.gen_range(0..self.dim));
                if !self.check_triple(i, j, k) {
                    return Err(AlgError::NotAssociative(i, j, k));
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<(), AlgError> {
        for i in 0..self.dim {
            let b = self.basis_elem(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(AlgError::NoUnit(i));
            }
        }
        Ok(())
    }

    /// Elements commuting with every basis element.
    pub fn centre(&self) -> Subspace<F> {
        let f = &self.field;
        let mut current = Mat::identity(f, self.dim);
        for j in 0..self.dim {
            if current.cols() == 0 {
                break;
            }
            let cols: Vec<Vector<F>> = (0..self.dim)
                .map(|i| {
                    let mut v = self.zero();
                    for (k, c) in &self.table[i * self.dim + j] {
                        v[*k] = f.add(&v[*k], c);
                    }
                    for (k, c) in &self.table[j * self.dim + i] {
                        v[*k] = f.add(&v[*k], c);
                    }
                    v
                })
                .collect();
            let comm = Mat::from_columns(f, self.dim, &cols).expect("shape");
            let restricted = comm.mul(&current).expect("shape");
            let ker = restricted.kernel();
            if ker.dim() == current.cols() {
                continue;
            }
            let new_cols: Vec<Vector<F>> =
                ker.basis().iter().map(|k| current.mul_vec(k).expect("shape")).collect();
            current = Mat::from_columns(f, self.dim, &new_cols).expect("shape");
        }
        let cols: Vec<Vector<F>> = (0..current.cols()).map(|j| current.column(j)).collect();
        Subspace::span(f, self.dim, cols).expect("ambient")
    }

    /// Minimal polynomial of `x` inside the corner algebra with unit `e`
    /// (`e·x = x·e = x`), by Krylov iteration.
    pub fn min_poly_in_corner(&self, x: &[F::Elem], e: &[F::Elem]) -> Poly<F> {
        let f = &self.field;
        let mut powers = vec![e.to_vec()];
        loop {
            let next = self.mul(powers.last().expect("nonempty"), x);
            let cols: Vec<Vector<F>> = powers.clone();
            let m = Mat::from_columns(f, self.dim, &cols).expect("shape");
            if let Some(c) = m.solve(&next).expect("shape") {
                let mut p: Poly<F> = c;
                p.push(f.one());
                return poly::trim(f, p);
            }
            powers.push(next);
        }
    }

    /// `p(x)` with `e` playing the role of the unit.
    pub fn eval_poly_in_corner(&self, p: &Poly<F>, x: &[F::Elem], e: &[F::Elem]) -> AlgElt<F> {
        let f = &self.field;
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.mul(&acc, x);
            axpy(f, &mut acc, c, e);
        }
        acc
    }

    fn left_ideal(&self, e: &[F::Elem]) -> Subspace<F> {
        let vecs = (0..self.dim).map(|i| self.mul(&self.basis_elem(i), e));
        Subspace::span(&self.field, self.dim, vecs).expect("ambient")
    }

    /// Searches for a primitive idempotent by splitting idempotents with
    /// Fitting decompositions of random corner elements.
    pub fn primitive_idempotent(&self, seed: u64) -> Result<AlgElt<F>, AlgError> {
        const MAX_TRIES: usize = 256;
        let f = &self.field;
        let elements = f.elements().ok_or(AlgError::InfiniteField("idempotent search"))?;
        let n = isqrt(self.dim).ok_or_else(|| AlgError::NotSimple(format!("dimension {} is not a square", self.dim)))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut e = self.unit.clone();
        let mut rank = n;
        let mut tries = 0;
        while rank > 1 {
            tries += 1;
            if tries > MAX_TRIES {
                return Err(AlgError::SplitFailed(MAX_TRIES));
            }
            let a = self.random_elem(&mut rng);
            let x = self.mul(&self.mul(&e, &a), &e);
            let p = self.min_poly_in_corner(&x, &e);
            let Some(c) = elements.iter().find(|c| f.is_zero(&poly::eval(f, &p, c))) else {
                continue;
            };
            let mut y = x.clone();
            axpy(f, &mut y, c, &e);
            let py = self.min_poly_in_corner(&y, &e);
            let k = py.iter().position(|c| !f.is_zero(c)).expect("nonzero polynomial");
            if k + 1 == py.len() {
                continue;
            }
            let xk = poly::monomial(f, k);
            let g: Poly<F> = py[k..].to_vec();
            let (_, s, _) = poly::ext_gcd(f, &xk, &g);
            let fit = poly::mul(f, &xk, &s);
            let idem = self.eval_poly_in_corner(&fit, &y, &e);
            let other = exactla::vec_add(f, &e, &idem);
            let r1 = self.left_ideal(&idem).dim() / n;
            let r2 = self.left_ideal(&other).dim() / n;
            if r1 == 0 || r2 == 0 {
                continue;
            }
            if r1 <= r2 {
                e = idem;
                rank = r1;
            } else {
                e = other;
                rank = r2;
            }
        }
        Ok(e)
    }

    /// Explicit isomorphism onto `M_n(F)` through the simple left module
    /// `A·e`, checked on every basis product and against the reduced trace.
    pub fn split_isomorphism(&self, seed: u64) -> Result<MatrixRep<F>, AlgError> {
        let f = &self.field;
        if f.size().is_none() {
            return Err(AlgError::InfiniteField("split isomorphism"));
        }
        let n = isqrt(self.dim).ok_or_else(|| AlgError::NotSimple(format!("dimension {} is not a square", self.dim)))?;
        let z = self.centre().dim();
        if z != 1 {
            return Err(AlgError::NotSimple(format!("centre has dimension {z}")));
        }
        let e = self.primitive_idempotent(seed)?;
        let module = self.left_ideal(&e);
        if module.dim() != n {
            return Err(AlgError::NotSimple(format!("minimal left ideal has dimension {}", module.dim())));
        }
        let images: Vec<Mat<F>> = (0..self.dim)
            .map(|i| {
                let b = self.basis_elem(i);
                let cols: Vec<Vector<F>> = module
                    .basis()
                    .iter()
                    .map(|m| module.coordinates(&self.mul(&b, m)).expect("left ideal is stable"))
                    .collect();
                Mat::from_columns(f, n, &cols).expect("shape")
            })
            .collect();
        let rep = MatrixRep { n, images, inverse: OnceLock::new() };
        self.verify_representation(&rep)?;
        Ok(rep)
    }

    pub fn verify_representation(&self, rep: &MatrixRep<F>) -> Result<(), AlgError> {
        let f = &self.field;
        if rep.images.len() != self.dim || rep.n * rep.n != self.dim {
            return Err(AlgError::BadRepresentation("size".into()));
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = rep.images[i].mul(&rep.images[j])?;
                let rhs = rep.apply(&self.mul(&self.basis_elem(i), &self.basis_elem(j)));
                if lhs != rhs {
                    return Err(AlgError::BadRepresentation(format!("product of basis {i} and {j}")));
                }
            }
        }
        let cols: Vec<Vector<F>> = rep.images.iter().map(|m| m.entries().to_vec()).collect();
        if Mat::from_columns(f, self.dim, &cols)?.rank() != self.dim {
            return Err(AlgError::BadRepresentation("not injective".into()));
        }
        for (i, m) in rep.images.iter().enumerate() {
            if m.trace()? != self.trd[i] {
                return Err(AlgError::BadRepresentation(format!("reduced trace of basis {i}")));
            }
        }
        Ok(())
    }

    /// Returns a copy carrying `rep` as its split representation.
    pub fn with_representation(mut self, rep: MatrixRep<F>) -> Result<Self, AlgError> {
        self.verify_representation(&rep)?;
        self.representation = Some(Arc::new(rep));
        Ok(self)
    }

    /// Attaches a split representation, found by search when needed.
    pub fn split(self, seed: u64) -> Result<Self, AlgError> {
        if self.representation.is_some() {
            return Ok(self);
        }
        let rep = match self.provenance {
            Provenance::Matrix(n) => MatrixRep {
                n,
                images: (0..self.dim)
                    .map(|k| {
                        let mut m = Mat::zeros(&self.field, n, n);
                        m.set(k / n, k % n, self.field.one());
                        m
                    })
                    .collect(),
                inverse: OnceLock::new(),
            },
            _ => self.split_isomorphism(seed)?,
        };
        self.with_representation(rep)
    }

    pub fn to_matrix(&self, x: &[F::Elem]) -> Result<Mat<F>, AlgError> {
        let rep = self.representation.as_ref().ok_or(AlgError::NoRepresentation)?;
        Ok(rep.apply(x))
    }

    /// Reduced characteristic polynomial through the split representation.
    pub fn reduced_char_poly(&self, x: &[F::Elem]) -> Result<Poly<F>, AlgError> {
        if let Provenance::Matrix(n) = self.provenance {
            let m = Mat::from_entries(&self.field, n, n, x.to_vec())?;
            return Ok(m.char_poly()?);
        }
        Ok(self.to_matrix(x)?.char_poly()?)
    }

    /// `Srd(x)`: the coefficient of `X^{n−2}` in the reduced characteristic polynomial.
    pub fn srd(&self, x: &[F::Elem]) -> Result<F::Elem, AlgError> {
        let p = self.reduced_char_poly(x)?;
        let n = p.len() - 1;
        Ok(if n >= 2 { p[n - 2].clone() } else { self.field.zero() })
    }

    /// `Nrd(x)`: the determinant of the representing matrix.
    pub fn nrd(&self, x: &[F::Elem]) -> Result<F::Elem, AlgError> {
        let p = self.reduced_char_poly(x)?;
        Ok(p.first().cloned().unwrap_or_else(|| self.field.zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadforms::quaternion_norm_form;
    use crate::scalars::Gf2k;
    use proptest::prelude::*;

    fn quat(f: &Gf2k, a: u32, b: u32) -> Alg<Gf2k> {
        Alg::quaternion(f, &a, &b).unwrap()
    }

    /// Conjugation `x ↦ x̄` on `(1,u,v,w)`: fixes `1, v, w`, sends `u` to `1+u`.
    fn conj(x: &[u32]) -> Vec<u32> {
        vec![x[0] ^ x[1], x[1], x[2], x[3]]
    }

    #[test]
    fn quaternion_relations() {
        let f = Gf2k::gf4();
        for a in f.elements().unwrap() {
            for b in 1..4u32 {
                let q = quat(&f, a, b);
                q.check_associative().unwrap();
                q.check_unit().unwrap();
                let (one, u, v, w) = (q.basis_elem(0), q.basis_elem(1), q.basis_elem(2), q.basis_elem(3));
                let one_plus_u = exactla::vec_add(&f, &one, &u);
                assert_eq!(q.mul(&u, &one_plus_u), q.scalar(&a));
                assert_eq!(q.mul(&v, &v), q.scalar(&b));
                assert_eq!(q.mul(&u, &v), w);
                assert_eq!(q.mul(&v, &one_plus_u), w);
                assert_eq!(q.trd(&u), 1);
                assert_eq!(q.trd(&one), 0);
            }
        }
    }

    #[test]
    fn conjugation_gives_the_norm_form() {
        let f = Gf2k::gf4();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (a, b) in [(0, 1), (2, 3), (1, 2)] {
            let q = quat(&f, a, b);
            let n = quaternion_norm_form(&f, &a, &b).unwrap();
            for _ in 0..50 {
                let x = q.random_elem(&mut rng);
                let y = q.random_elem(&mut rng);
                assert_eq!(q.mul(&x, &conj(&x)), q.scalar(&n.eval(&x)));
                assert_eq!(conj(&q.mul(&x, &y)), q.mul(&conj(&y), &conj(&x)));
                assert_eq!(exactla::vec_add(&f, &x, &conj(&x)), q.scalar(&q.trd(&x)));
            }
            assert_eq!(n.eval(&[0, 0, 1, 0]), b);
        }
    }

    #[test]
    fn matrix_algebra_and_srd() {
        let f = Gf2k::gf2();
        let m2 = Alg::matrix(&f, 2);
        m2.check_associative().unwrap();
        m2.check_unit().unwrap();
        assert_eq!(m2.srd(m2.unit()).unwrap(), 1);
        assert_eq!(m2.srd(&m2.zero()).unwrap(), 0);
        assert_eq!(m2.srd(&m2.basis_elem(0)).unwrap(), 0);
        assert_eq!(m2.centre().dim(), 1);
        assert_eq!(m2.trd(m2.unit()), 0);
    }

    #[test]
    fn tensor_products() {
        let f = Gf2k::gf2();
        let q = quat(&f, 0, 1);
        let scalars = Alg::matrix(&f, 1);
        let qf = Alg::tensor(&q, &scalars).unwrap();
        assert_eq!(qf.dim(), 4);
        let t = Alg::tensor(&q, &q).unwrap();
        assert_eq!(t.dim(), 16);
        t.check_associative().unwrap();
        t.check_unit().unwrap();
        assert_eq!(t.centre().dim(), 1);
        let x = [0, 1, 0, 0];
        let ux: Vec<u32> = x.iter().flat_map(|a| [1u32, 0, 0, 0].iter().map(move |b| a & b)).collect();
        let xu: Vec<u32> = [1u32, 0, 0, 0].iter().flat_map(|a| x.iter().map(move |b| a & b)).collect();
        assert_eq!(t.trd(&t.mul(&ux, &xu)), 1);
        let split = t.split(5).unwrap();
        assert_eq!(split.representation().unwrap().degree(), 4);
    }

    #[test]
    fn centre_of_a_product_is_two_dimensional() {
        let f = Gf2k::gf2();
        let m1 = Alg::matrix(&f, 1);
        assert_eq!(Alg::product(&m1, &m1).unwrap().centre().dim(), 2);
        let m2 = Alg::matrix(&f, 2);
        assert_eq!(Alg::product(&m2, &m2).unwrap().centre().dim(), 2);
    }

    #[test]
    fn split_quaternions() {
        for f in [Gf2k::gf2(), Gf2k::gf4(), Gf2k::with_default_modulus(3).unwrap()] {
            for a in f.elements().unwrap() {
                let q = quat(&f, a, 1).split(9).unwrap();
                let rep = q.representation().unwrap();
                assert_eq!(rep.degree(), 2);
                let mut rng = ChaCha8Rng::seed_from_u64(a as u64);
                for _ in 0..20 {
                    let x = q.random_elem(&mut rng);
                    let n = quaternion_norm_form(&f, &a, &1).unwrap();
                    assert_eq!(q.nrd(&x).unwrap(), n.eval(&x));
                    assert_eq!(rep.preimage(&rep.apply(&x)), x);
                }
            }
        }
    }

    #[test]
    fn split_fails_for_non_simple_and_infinite() {
        let f = Gf2k::gf2();
        let m2 = Alg::matrix(&f, 2);
        let p = Alg::product(&m2, &m2).unwrap();
        assert!(matches!(p.split_isomorphism(1), Err(AlgError::NotSimple(_))));
        let k = crate::scalars::RationalFunctionField::new(&f);
        let q = Alg::quaternion(&k, &k.t(), &k.one()).unwrap();
        assert!(matches!(q.split_isomorphism(1), Err(AlgError::InfiniteField(_))));
        assert!(matches!(q.srd(q.unit()), Err(AlgError::NoRepresentation)));
        assert_eq!(Alg::quaternion(&f, &1, &0).unwrap_err(), AlgError::ZeroParameter);
    }

    #[test]
    fn biquaternion_splits_to_degree_four() {
        let f = Gf2k::gf4();
        let q1 = quat(&f, 2, 3);
        let q2 = quat(&f, 1, 2);
        let t = Alg::tensor(&q1, &Alg::tensor(&q2, &q1).unwrap()).unwrap();
        assert_eq!(t.dim(), 64);
        let s = t.split(3).unwrap();
        assert_eq!(s.representation().unwrap().degree(), 8);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn reduced_trace_is_symmetric(seed in any::<u64>(), a in 0u32..4, b in 1u32..4) {
            let f = Gf2k::gf4();
            let t = Alg::tensor(&quat(&f, a, b), &Alg::matrix(&f, 2)).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = t.random_elem(&mut rng);
            let y = t.random_elem(&mut rng);
            prop_assert_eq!(t.trd(&t.mul(&x, &y)), t.trd(&t.mul(&y, &x)));
            let g = t.trace_form();
            prop_assert_eq!(dot(&f, &g.vec_mul(&x).unwrap(), &y), t.trd(&t.mul(&x, &y)));
        }
    }
}
