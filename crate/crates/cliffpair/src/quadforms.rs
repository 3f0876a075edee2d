//! Nonsingular quadratic forms and symmetric bilinear forms in characteristic 2.
//!
//! A quadratic form is stored by an upper-triangular matrix `U` with
//! `q(x) = xᵀUx`; its polar form has matrix `U + Uᵀ`.  Symplectic bases are
//! produced greedily with lowest-index tie-breaking, so every derived quantity
//! is deterministic.

use rand::Rng;
use thiserror::Error;

use crate::exactla::{self, axpy, dot, EchelonBasis, LinalgError, Mat, Vector};
use crate::scalars::{Field, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("the polar form is degenerate")]
    Singular,
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("bilinear form matrix is not symmetric")]
    NotSymmetric,
    #[error("Pfister slot {0} is zero")]
    ZeroSlot(usize),
    #[error("{0} is only supported over finite fields")]
    NeedsFiniteField(&'static str),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// One hyperbolic-type block of a symplectic basis: `b(e, e') = 1`,
/// `q(e) = a`, `q(e') = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticBlock<F: Field> {
    pub e: Vector<F>,
    pub e_prime: Vector<F>,
    pub a: F::Elem,
    pub b: F::Elem,
}

/// Raw value `Σ aᵢbᵢ` and its class in `F/℘(F)` (`None` when undecidable).
#[derive(Clone, Debug, PartialEq)]
pub struct ArfInvariant<F: Field> {
    pub value: F::Elem,
    pub class: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct WittDecomposition<F: Field> {
    pub index: usize,
    pub hyperbolic_pairs: Vec<(Vector<F>, Vector<F>)>,
    pub anisotropic: QForm<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QForm<F: Field> {
    gram: Mat<F>,
}

/// Folds an arbitrary square matrix `G` into the upper-triangular matrix
/// defining the same quadratic form `xᵀGx`.
fn fold_upper<F: Field>(g: &Mat<F>) -> Mat<F> {
    let f = g.field();
    Mat::from_fn(f, g.rows(), g.cols(), |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => f.add(g.get(i, j), g.get(j, i)),
        std::cmp::Ordering::Equal => g.get(i, i).clone(),
        std::cmp::Ordering::Greater => f.zero(),
    })
}

impl<F: Field> QForm<F> {
    /// Form `xᵀGx`; `G` need not be triangular.
    pub fn new(gram: Mat<F>) -> Result<Self, FormError> {
        if !gram.is_square() {
            return Err(FormError::NotSquare(gram.rows(), gram.cols()));
        }
        let q = QForm { gram: fold_upper(&gram) };
        if q.polar_matrix().rank() != q.dim() {
            return Err(FormError::Singular);
        }
        Ok(q)
    }

    /// The zero-dimensional form.
    pub fn empty(f: &F) -> Self {
        QForm { gram: Mat::zeros(f, 0, 0) }
    }

    /// `[b1, b2] = b1·x² + xy + b2·y²`.
    pub fn binary_block(f: &F, b1: F::Elem, b2: F::Elem) -> Self {
        QForm { gram: Mat::from_rows(f, &[vec![b1, f.one()], vec![f.zero(), b2]]).expect("2x2") }
    }

    /// `[a₁,b₁] ⊥ … ⊥ [a_m,b_m]`.
    pub fn from_blocks(f: &F, blocks: &[(F::Elem, F::Elem)]) -> Self {
        blocks
            .iter()
            .fold(Self::empty(f), |acc, (a, b)| acc.orthogonal_sum(&Self::binary_block(f, a.clone(), b.clone())))
    }

    /// `m` copies of the hyperbolic plane `[0,0]`.
    pub fn hyperbolic(f: &F, m: usize) -> Self {
        Self::from_blocks(f, &vec![(f.zero(), f.zero()); m])
    }

    pub fn field(&self) -> &F {
        self.gram.field()
    }
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
    pub fn gram(&self) -> &Mat<F> {
        &self.gram
    }
    pub fn polar_matrix(&self) -> Mat<F> {
        self.gram.add(&self.gram.transpose()).expect("same shape")
    }

    pub fn eval(&self, x: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let mut acc = f.zero();
        for i in 0..self.dim() {
            if f.is_zero(&x[i]) {
                continue;
            }
            let row = &self.gram.row(i)[i..];
            acc = f.add(&acc, &f.mul(&x[i], &dot(f, row, &x[i..])));
        }
        acc
    }

    pub fn polar(&self, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let mut acc = f.zero();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let u = self.gram.get(i, j);
                if f.is_zero(u) {
                    continue;
                }
                let t = f.add(&f.mul(&x[i], &y[j]), &f.mul(&x[j], &y[i]));
                acc = f.add(&acc, &f.mul(u, &t));
            }
        }
        acc
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        QForm { gram: self.gram.block_diag(&other.gram).expect("same field") }
    }

    /// `λ·q`.
    pub fn scaled(&self, lambda: &F::Elem) -> Self {
        QForm { gram: self.gram.scale(lambda) }
    }

    /// The form `y ↦ q(P·y)`.
    pub fn pullback(&self, p: &Mat<F>) -> Result<Self, FormError> {
        let g = p.transpose().mul(&self.gram)?.mul(p)?;
        Self::new(g)
    }

    /// Restriction to the span of `vectors`, in those coordinates.
    pub fn restrict(&self, vectors: &[Vector<F>]) -> Result<Self, FormError> {
        let f = self.field();
        let n = vectors.len();
        let g = Mat::from_fn(f, n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => self.polar(&vectors[i], &vectors[j]),
            std::cmp::Ordering::Equal => self.eval(&vectors[i]),
            std::cmp::Ordering::Greater => f.zero(),
        });
        Self::new(g)
    }

    /// Projects `x` onto the polar complement of a hyperbolic-type pair
    /// `(v, w)` with `b(v, w) = 1`.
    fn project_off(&self, x: &[F::Elem], v: &[F::Elem], w: &[F::Elem]) -> Vector<F> {
        let f = self.field();
        let mut y = x.to_vec();
        axpy(f, &mut y, &self.polar(x, w), v);
        axpy(f, &mut y, &self.polar(x, v), w);
        y
    }

    fn complement_basis(&self, span: &[Vector<F>], v: &[F::Elem], w: &[F::Elem]) -> Vec<Vector<F>> {
        let f = self.field();
        let mut ech = EchelonBasis::new(f, self.dim());
        let mut out = Vec::new();
        for x in span {
            let y = self.project_off(x, v, w);
            if ech.insert(&y) {
                out.push(y);
            }
        }
        out
    }

    /// Greedy symplectic basis: within the current polar complement take the
    /// first spanning vector with `q ≠ 0` (or the first sum of two with
    /// nonzero polar value), pair it with the first vector it pairs with
    /// nontrivially, and recurse on the complement.  Every `aᵢ` is nonzero.
    pub fn symplectic_basis(&self) -> Vec<SymplecticBlock<F>> {
        let f = self.field();
        let n = self.dim();
        let mut span: Vec<Vector<F>> = (0..n).map(|i| exactla::unit_vec(f, n, i)).collect();
        let mut blocks = Vec::new();
        while !span.is_empty() {
            let v = match span.iter().find(|x| !f.is_zero(&self.eval(x))) {
                Some(x) => x.clone(),
                None => {
                    let mut found = None;
                    'outer: for i in 0..span.len() {
                        for j in i + 1..span.len() {
                            if !f.is_zero(&self.polar(&span[i], &span[j])) {
                                found = Some(exactla::vec_add(f, &span[i], &span[j]));
                                break 'outer;
                            }
                        }
                    }
                    found.expect("nonsingular complement has a non-orthogonal pair")
                }
            };
            let w = span
                .iter()
                .find_map(|x| {
                    let c = self.polar(&v, x);
                    (!f.is_zero(&c)).then(|| exactla::vec_scale(f, x, &f.inv(&c).expect("nonzero")))
                })
                .expect("nonsingular complement pairs v with some vector");
            span = self.complement_basis(&span, &v, &w);
            let (a, b) = (self.eval(&v), self.eval(&w));
            blocks.push(SymplecticBlock { e: v, e_prime: w, a, b });
        }
        blocks
    }

    /// Matrix whose columns are `e₁, e₁', e₂, e₂', …`.
    pub fn symplectic_matrix(blocks: &[SymplecticBlock<F>], f: &F, n: usize) -> Mat<F> {
        let cols: Vec<Vector<F>> =
            blocks.iter().flat_map(|b| [b.e.clone(), b.e_prime.clone()]).collect();
        Mat::from_columns(f, n, &cols).expect("block vectors have length n")
    }

    pub fn arf(&self) -> ArfInvariant<F> {
        let f = self.field();
        let value = self
            .symplectic_basis()
            .iter()
            .fold(f.zero(), |acc, blk| f.add(&acc, &f.mul(&blk.a, &blk.b)));
        let class = f.artin_schreier_class(&value).ok();
        ArfInvariant { value, class }
    }

    fn require_finite(&self, what: &'static str) -> Result<u64, FormError> {
        self.field().size().ok_or(FormError::NeedsFiniteField(what))
    }

    /// Exhaustive search over projective space in lexicographic order.
    pub fn find_isotropic_exhaustive(&self) -> Result<Option<Vector<F>>, FormError> {
        self.require_finite("isotropy search")?;
        let f = self.field();
        let elements = f.elements().expect("finite");
        let n = self.dim();
        let s = elements.len();
        for lead in 0..n {
            let tail = n - lead - 1;
            let count = (s as u64).checked_pow(tail as u32).expect("search space fits in u64");
            for idx in 0..count {
                let mut x = exactla::zero_vec(f, n);
                x[lead] = f.one();
                let mut r = idx;
                for slot in x.iter_mut().skip(lead + 1) {
                    *slot = elements[(r % s as u64) as usize].clone();
                    r /= s as u64;
                }
                if f.is_zero(&self.eval(&x)) {
                    return Ok(Some(x));
                }
            }
        }
        Ok(None)
    }

    /// Isotropic vector from the symplectic blocks: a block with a zero
    /// entry, two blocks combined as `β·e₁' + e₂` with `b₁β² = a₂`, or a
    /// single block `[a,b]` with `ab ∈ ℘(F)`.
    pub fn find_isotropic_fiberwise(&self) -> Result<Option<Vector<F>>, FormError> {
        self.require_finite("isotropy search")?;
        let f = self.field();
        let blocks = self.symplectic_basis();
        for blk in &blocks {
            if f.is_zero(&blk.a) {
                return Ok(Some(blk.e.clone()));
            }
            if f.is_zero(&blk.b) {
                return Ok(Some(blk.e_prime.clone()));
            }
        }
        match blocks.as_slice() {
            [] => Ok(None),
            [blk] => {
                let ab = f.mul(&blk.a, &blk.b);
                Ok(f.artin_schreier_solve(&ab)?.map(|z| {
                    let x = f.div(&z, &blk.a).expect("a is nonzero");
                    let mut v = exactla::vec_scale(f, &blk.e, &x);
                    axpy(f, &mut v, &f.one(), &blk.e_prime);
                    v
                }))
            }
            [b1, b2, ..] => {
                let ratio = f.div(&b2.a, &b1.b).expect("b1 is nonzero");
                let beta = f.sqrt(&ratio).expect("finite fields of characteristic 2 are perfect");
                let mut v = exactla::vec_scale(f, &b1.e_prime, &beta);
                axpy(f, &mut v, &f.one(), &b2.e);
                Ok(Some(v))
            }
        }
    }

    /// Exhaustive search when at most 2²⁰ candidates, fiberwise otherwise.
    pub fn find_isotropic(&self) -> Result<Option<Vector<F>>, FormError> {
        let size = self.require_finite("isotropy search")?;
        let bits = (size.trailing_zeros() as usize) * self.dim();
        if bits <= 20 {
            self.find_isotropic_exhaustive()
        } else {
            self.find_isotropic_fiberwise()
        }
    }

    pub fn is_isotropic(&self) -> Result<bool, FormError> {
        Ok(self.find_isotropic()?.is_some())
    }

    /// Splits off hyperbolic planes until the remainder is anisotropic.
    pub fn witt_decompose(&self) -> Result<WittDecomposition<F>, FormError> {
        self.require_finite("Witt decomposition")?;
        let f = self.field();
        let n = self.dim();
        let mut span: Vec<Vector<F>> = (0..n).map(|i| exactla::unit_vec(f, n, i)).collect();
        let mut pairs = Vec::new();
        loop {
            let sub = self.restrict(&span)?;
            let Some(y) = sub.find_isotropic()? else {
                return Ok(WittDecomposition { index: pairs.len(), hyperbolic_pairs: pairs, anisotropic: sub });
            };
            let mut v = exactla::zero_vec(f, n);
            for (c, b) in y.iter().zip(&span) {
                axpy(f, &mut v, c, b);
            }
            let w0 = span
                .iter()
                .find_map(|x| {
                    let c = self.polar(&v, x);
                    (!f.is_zero(&c)).then(|| exactla::vec_scale(f, x, &f.inv(&c).expect("nonzero")))
                })
                .expect("nonsingular subspace");
            let mut w = w0.clone();
            axpy(f, &mut w, &self.eval(&w0), &v);
            span = self.complement_basis(&span, &v, &w);
            pairs.push((v, w));
        }
    }

    pub fn witt_index(&self) -> Result<usize, FormError> {
        Ok(self.witt_decompose()?.index)
    }

    pub fn is_hyperbolic(&self) -> Result<bool, FormError> {
        Ok(2 * self.witt_index()? == self.dim())
    }
}

/// Symmetric bilinear form given by its matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BilForm<F: Field> {
    matrix: Mat<F>,
}

impl<F: Field> BilForm<F> {
    pub fn new(matrix: Mat<F>) -> Result<Self, FormError> {
        if !matrix.is_square() {
            return Err(FormError::NotSquare(matrix.rows(), matrix.cols()));
        }
        if matrix != matrix.transpose() {
            return Err(FormError::NotSymmetric);
        }
        Ok(BilForm { matrix })
    }

    /// `⟨d₁, …, d_n⟩`.
    pub fn diagonal(f: &F, entries: &[F::Elem]) -> Self {
        BilForm { matrix: Mat::diagonal(f, entries) }
    }

    /// `⟨⟨b₁,…,b_r⟩⟩ = ⟨1,b₁⟩ ⊗ … ⊗ ⟨1,b_r⟩` (signs vanish in characteristic 2).
    pub fn pfister(f: &F, slots: &[F::Elem]) -> Self {
        slots.iter().fold(Self::diagonal(f, &[f.one()]), |acc, b| {
            acc.tensor(&Self::diagonal(f, &[f.one(), b.clone()]))
        })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        BilForm { matrix: self.matrix.kron(&other.matrix).expect("same field") }
    }

    pub fn matrix(&self) -> &Mat<F> {
        &self.matrix
    }
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.rank() == self.dim()
    }
}

/// `B ⊗ q`: the form on `W ⊗ V` with `(B⊗q)(w⊗v) = B(w,w)·q(v)` and polar
/// form `B ⊗ b_q`.  Basis order is `w_a ⊗ v_i ↦ a·dim(V) + i`.
pub fn tensor_bil_quad<F: Field>(b: &BilForm<F>, q: &QForm<F>) -> Result<QForm<F>, FormError> {
    let f = q.field();
    let (dw, dv) = (b.dim(), q.dim());
    let p = q.polar_matrix();
    let g = Mat::from_fn(f, dw * dv, dw * dv, |r, c| {
        let (a, i) = (r / dv, r % dv);
        let (cc, j) = (c / dv, c % dv);
        match r.cmp(&c) {
            std::cmp::Ordering::Equal => f.mul(b.matrix.get(a, a), q.gram.get(i, i)),
            std::cmp::Ordering::Less => f.mul(b.matrix.get(a, cc), p.get(i, j)),
            std::cmp::Ordering::Greater => f.zero(),
        }
    });
    QForm::new(g)
}

/// `⟨⟨b₁,…,b_{m−1},c]] = ⟨⟨b₁,…,b_{m−1}⟩⟩ ⊗ [1,c]`.
pub fn pfister_quad<F: Field>(f: &F, slots: &[F::Elem], c: &F::Elem) -> Result<QForm<F>, FormError> {
    if let Some(i) = slots.iter().position(|b| f.is_zero(b)) {
        return Err(FormError::ZeroSlot(i));
    }
    tensor_bil_quad(&BilForm::pfister(f, slots), &QForm::binary_block(f, f.one(), c.clone()))
}

/// Reduced norm of the quaternion algebra `[a,b)` in the basis `(1,u,v,w)`:
/// `x₀² + x₀x₁ + a·x₁² + b·(x₂² + x₂x₃ + a·x₃²)`.
pub fn quaternion_norm_form<F: Field>(f: &F, a: &F::Elem, b: &F::Elem) -> Result<QForm<F>, FormError> {
    if f.is_zero(b) {
        return Err(FormError::ZeroSlot(1));
    }
    let z = f.zero();
    let rows = vec![
        vec![f.one(), f.one(), z.clone(), z.clone()],
        vec![z.clone(), a.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), b.clone(), b.clone()],
        vec![z.clone(), z.clone(), z, f.mul(a, b)],
    ];
    QForm::new(Mat::from_rows(f, &rows)?)
}

/// Uniformly random nonsingular form of dimension `dim` (even).
pub fn random_form<F: Field, R: Rng + ?Sized>(f: &F, dim: usize, rng: &mut R) -> QForm<F> {
    assert!(dim % 2 == 0, "nonsingular forms have even dimension");
    loop {
        let g = Mat::from_fn(f, dim, dim, |i, j| if i <= j { f.random(rng) } else { f.zero() });
        if let Ok(q) = QForm::new(g) {
            return q;
        }
    }
}

/// Random nonsingular form whose Arf class is `class` (finite fields).
pub fn random_form_with_arf<F: Field, R: Rng + ?Sized>(f: &F, dim: usize, class: bool, rng: &mut R) -> QForm<F> {
    loop {
        let q = random_form(f, dim, rng);
        if q.arf().class == Some(class) {
            return q;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Gf2k, RationalFunctionField};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_vectors(f: &Gf2k, n: usize) -> Vec<Vec<u32>> {
        let els = f.elements().unwrap();
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    let els = &els;
                    els.iter().map(move |e| {
                        let mut w = v.clone();
                        w.push(*e);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Witt index by brute force: largest totally isotropic subspace.
    fn brute_witt_index(q: &QForm<Gf2k>) -> usize {
        let f = q.field().clone();
        let iso: Vec<Vec<u32>> =
            all_vectors(&f, q.dim()).into_iter().filter(|v| v.iter().any(|x| *x != 0) && q.eval(v) == 0).collect();
        fn grow(q: &QForm<Gf2k>, iso: &[Vec<u32>], chosen: &mut Vec<Vec<u32>>, start: usize) -> usize {
            let f = q.field();
            let mut best = chosen.len();
            for (k, v) in iso.iter().enumerate().skip(start) {
                if chosen.iter().any(|c| q.polar(c, v) != 0) {
                    continue;
                }
                let mut e = EchelonBasis::new(f, q.dim());
                for c in chosen.iter() {
                    e.insert(c);
                }
                if !e.insert(v) {
                    continue;
                }
                chosen.push(v.clone());
                best = best.max(grow(q, iso, chosen, k + 1));
                chosen.pop();
            }
            best
        }
        grow(q, &iso, &mut Vec::new(), 0)
    }

    #[test]
    fn binary_block_examples() {
        let f = Gf2k::gf2();
        let h = QForm::binary_block(&f, 0, 0);
        assert_eq!(h.witt_index().unwrap(), 1);
        let anis = QForm::binary_block(&f, 1, 1);
        for v in [[1, 0], [0, 1], [1, 1]] {
            assert_eq!(anis.eval(&v), 1);
        }
        let wd = anis.witt_decompose().unwrap();
        assert_eq!(wd.index, 0);
        assert_eq!(wd.anisotropic.dim(), 2);
        let f4 = Gf2k::gf4();
        assert!(QForm::binary_block(&f4, 3, 0).is_isotropic().unwrap());
        assert_eq!(anis.orthogonal_sum(&anis).witt_index().unwrap(), 2);
    }

    #[test]
    fn arf_examples() {
        let f = Gf2k::gf2();
        let h2 = QForm::hyperbolic(&f, 2);
        assert_eq!(h2.arf().class, Some(false));
        assert_eq!(QForm::binary_block(&f, 1, 1).arf().class, Some(true));
        let f4 = Gf2k::gf4();
        let g = f4.generator();
        let q = QForm::binary_block(&f4, 1, g);
        assert_eq!(q.arf().class, f4.artin_schreier_class(&g).ok());
    }

    #[test]
    fn arf_over_function_field_is_undecided() {
        let k = RationalFunctionField::new(&Gf2k::gf2());
        let q = QForm::binary_block(&k, k.one(), k.t());
        let arf = q.arf();
        assert_eq!(arf.value, k.t());
        assert_eq!(arf.class, None);
        assert!(matches!(q.witt_decompose(), Err(FormError::NeedsFiniteField(_))));
    }

    #[test]
    fn singular_input_is_rejected() {
        let f = Gf2k::gf2();
        let g = Mat::from_rows(&f, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(QForm::new(g), Err(FormError::Singular));
        let odd = Mat::identity(&f, 3);
        assert_eq!(QForm::new(odd), Err(FormError::Singular));
    }

    #[test]
    fn symplectic_basis_examples() {
        let f = Gf2k::gf2();
        let q = QForm::from_blocks(&f, &[(1, 1), (1, 1)]);
        let blocks = q.symplectic_basis();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| (b.a, b.b) == (1, 1)));
        let h = QForm::hyperbolic(&f, 1);
        let hb = h.symplectic_basis();
        assert_eq!(hb.len(), 1);
        assert_eq!(f.mul(&hb[0].a, &hb[0].b), 0);
    }

    fn check_symplectic(q: &QForm<Gf2k>) {
        let f = q.field();
        let blocks = q.symplectic_basis();
        assert_eq!(2 * blocks.len(), q.dim());
        let vecs: Vec<Vec<u32>> = blocks.iter().flat_map(|b| [b.e.clone(), b.e_prime.clone()]).collect();
        for (i, x) in vecs.iter().enumerate() {
            for (j, y) in vecs.iter().enumerate() {
                let expected = if i / 2 == j / 2 && i != j { f.one() } else { f.zero() };
                assert_eq!(q.polar(x, y), expected);
            }
        }
        for b in &blocks {
            assert_eq!(q.eval(&b.e), b.a);
            assert_eq!(q.eval(&b.e_prime), b.b);
            assert_ne!(b.a, 0);
        }
    }

    #[test]
    fn symplectic_basis_of_random_forms() {
        let f = Gf2k::gf4();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for dim in [2, 4, 6, 8] {
            for _ in 0..10 {
                check_symplectic(&random_form(&f, dim, &mut rng));
            }
        }
    }

    #[test]
    fn tensor_examples() {
        let f = Gf2k::gf2();
        let q = QForm::binary_block(&f, 1, 1);
        let one = BilForm::diagonal(&f, &[1]);
        assert_eq!(tensor_bil_quad(&one, &q).unwrap(), q);
        let t = tensor_bil_quad(&BilForm::diagonal(&f, &[1, 1]), &q).unwrap();
        assert_eq!(t, q.orthogonal_sum(&q));
        assert_eq!(t.arf().class, Some(false));
        let f4 = Gf2k::gf4();
        let g = f4.generator();
        let p = pfister_quad(&f4, &[g], &1).unwrap();
        let direct = tensor_bil_quad(&BilForm::pfister(&f4, &[g]), &QForm::binary_block(&f4, 1, 1)).unwrap();
        assert_eq!(p, direct);
        assert_eq!(p.dim(), 4);
    }

    #[test]
    fn tensor_value_and_polar_rules() {
        let f = Gf2k::gf4();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let q = random_form(&f, 4, &mut rng);
        let bm = Mat::from_rows(&f, &[vec![2, 1], vec![1, 2]]).unwrap();
        let b = BilForm::new(bm.clone()).unwrap();
        let t = tensor_bil_quad(&b, &q).unwrap();
        for _ in 0..30 {
            let w = exactla::random_vec(&f, 2, &mut rng);
            let v = exactla::random_vec(&f, 4, &mut rng);
            let fr = &f;
            let wv: Vec<u32> = w.iter().flat_map(|wi| v.iter().map(move |vi| fr.mul(wi, vi))).collect();
            let bww = dot(&f, &w, &bm.mul_vec(&w).unwrap());
            assert_eq!(t.eval(&wv), f.mul(&bww, &q.eval(&v)));
        }
        assert_eq!(t.polar_matrix(), bm.kron(&q.polar_matrix()).unwrap());
    }

    #[test]
    fn pfister_examples() {
        let f = Gf2k::gf2();
        assert_eq!(pfister_quad(&f, &[], &1).unwrap(), QForm::binary_block(&f, 1, 1));
        let p = pfister_quad(&f, &[1], &1).unwrap();
        assert!(p.is_isotropic().unwrap());
        assert!(p.is_hyperbolic().unwrap());
        assert_eq!(pfister_quad(&f, &[0], &1), Err(FormError::ZeroSlot(0)));
        let k = RationalFunctionField::new(&Gf2k::gf2());
        let t = k.t();
        let p = pfister_quad(&k, &[t.clone()], &k.inv(&t).unwrap()).unwrap();
        assert_eq!(p.dim(), 4);
    }

    #[test]
    fn pfister_forms_are_anisotropic_or_hyperbolic() {
        for f in [Gf2k::gf2(), Gf2k::gf4()] {
            let els = f.elements().unwrap();
            let nonzero: Vec<u32> = els.iter().copied().filter(|x| *x != 0).collect();
            for b in &nonzero {
                for c in &els {
                    let p = pfister_quad(&f, &[*b], c).unwrap();
                    let idx = p.witt_index().unwrap();
                    assert!(idx == 0 || idx == 2);
                    assert_eq!(p.eval(&[1, 0, 0, 0]), 1);
                }
            }
        }
    }

    #[test]
    fn quaternion_norm_examples() {
        let f = Gf2k::gf2();
        let n = quaternion_norm_form(&f, &0, &1).unwrap();
        assert!(n.is_hyperbolic().unwrap());
        assert_eq!(n.eval(&[1, 0, 0, 0]), 1);
        let f4 = Gf2k::gf4();
        let g = f4.generator();
        let n = quaternion_norm_form(&f4, &g, &1).unwrap();
        assert_eq!(n.eval(&[0, 1, 0, 0]), g);
        let p = pfister_quad(&f4, &[1], &g).unwrap();
        assert_eq!(n.arf().class, p.arf().class);
        assert_eq!(n.witt_index().unwrap(), p.witt_index().unwrap());
        assert!(quaternion_norm_form(&f4, &g, &0).is_err());
    }

    #[test]
    fn witt_index_matches_brute_force_and_arf_rule() {
        for f in [Gf2k::gf2(), Gf2k::gf4()] {
            let mut rng = ChaCha8Rng::seed_from_u64(8);
            for dim in [2, 4] {
                for _ in 0..6 {
                    let q = random_form(&f, dim, &mut rng);
                    let wd = q.witt_decompose().unwrap();
                    assert_eq!(wd.index, brute_witt_index(&q));
                    let expected = if q.arf().class.unwrap() { dim / 2 - 1 } else { dim / 2 };
                    assert_eq!(wd.index, expected);
                }
            }
        }
    }

    #[test]
    fn anisotropic_part_has_no_isotropic_vector() {
        let f = Gf2k::with_default_modulus(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let q = random_form_with_arf(&f, 6, true, &mut rng);
            let wd = q.witt_decompose().unwrap();
            assert_eq!(wd.index, 2);
            let an = &wd.anisotropic;
            assert_eq!(an.dim(), 2);
            for v in all_vectors(&f, 2).into_iter().skip(1) {
                assert_ne!(an.eval(&v), 0);
            }
            for (v, w) in &wd.hyperbolic_pairs {
                assert_eq!(q.eval(v), 0);
                assert_eq!(q.eval(w), 0);
                assert_eq!(q.polar(v, w), 1);
            }
        }
    }

    #[test]
    fn exhaustive_and_fiberwise_isotropy_agree() {
        let f = Gf2k::gf4();
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for dim in [2, 4, 6] {
            for _ in 0..20 {
                let q = random_form(&f, dim, &mut rng);
                let a = q.find_isotropic_exhaustive().unwrap();
                let b = q.find_isotropic_fiberwise().unwrap();
                assert_eq!(a.is_some(), b.is_some());
                if let Some(v) = b {
                    assert_eq!(q.eval(&v), 0);
                    assert!(!exactla::is_zero_vec(&f, &v));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn arf_is_invariant_under_rebasing(seed in any::<u64>(), m in 1usize..5) {
            let f = Gf2k::gf4();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = random_form(&f, 2 * m, &mut rng);
            let arf = q.arf();
            for _ in 0..20 {
                let p = loop {
                    let p = Mat::from_fn(&f, 2 * m, 2 * m, |_, _| f.random(&mut rng));
                    if p.rank() == 2 * m { break p; }
                };
                prop_assert_eq!(q.pullback(&p).unwrap().arf().class, arf.class);
            }
        }

        #[test]
        fn arf_is_additive_and_scale_invariant(seed in any::<u64>(), m1 in 1usize..4, m2 in 1usize..4) {
            let f = Gf2k::with_default_modulus(3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q1 = random_form(&f, 2 * m1, &mut rng);
            let q2 = random_form(&f, 2 * m2, &mut rng);
            let sum = q1.orthogonal_sum(&q2).arf().class.unwrap();
            prop_assert_eq!(sum, q1.arf().class.unwrap() ^ q2.arf().class.unwrap());
            let lambda = f.random_nonzero(&mut rng);
            prop_assert_eq!(q1.scaled(&lambda).arf().class, q1.arf().class);
        }
    }
}
