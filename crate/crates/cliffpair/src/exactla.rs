//! Exact dense linear algebra over a [`Field`].
//!
//! Elimination pivots on the first nonzero entry, so every result is a
//! deterministic function of the input.  Subspaces are stored by their reduced
//! row echelon basis, which makes equality of subspaces plain equality of
//! values.

use thiserror::Error;

use crate::scalars::poly::Poly;
use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
}

pub type Vector<F> = Vec<<F as Field>::Elem>;

pub fn zero_vec<F: Field>(f: &F, n: usize) -> Vector<F> {
    vec![f.zero(); n]
}

pub fn unit_vec<F: Field>(f: &F, n: usize, i: usize) -> Vector<F> {
    let mut v = zero_vec(f, n);
    v[i] = f.one();
    v
}

pub fn vec_add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

/// `a += c·b`.
pub fn axpy<F: Field>(f: &F, a: &mut [F::Elem], c: &F::Elem, b: &[F::Elem]) {
    if f.is_zero(c) {
        return;
    }
    if f.is_one(c) {
        for (x, y) in a.iter_mut().zip(b) {
            if !f.is_zero(y) {
                *x = f.add(x, y);
            }
        }
    } else {
        for (x, y) in a.iter_mut().zip(b) {
            if !f.is_zero(y) {
                *x = f.add(x, &f.mul(c, y));
            }
        }
    }
}

pub fn vec_scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vector<F> {
    a.iter().map(|x| f.mul(x, c)).collect()
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            acc = f.add(&acc, &f.mul(x, y));
        }
    }
    acc
}

pub fn is_zero_vec<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

pub fn random_vec<F: Field, R: rand::Rng + ?Sized>(f: &F, n: usize, rng: &mut R) -> Vector<F> {
    (0..n).map(|_| f.random(rng)).collect()
}

/// Position of the first nonzero entry.
pub fn leading_index<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().position(|x| !f.is_zero(x))
}

/// Scales so that the first nonzero entry is one.
pub fn normalize_leading<F: Field>(f: &F, a: &[F::Elem]) -> Vector<F> {
    match leading_index(f, a) {
        None => a.to_vec(),
        Some(i) => vec_scale(f, a, &f.inv(&a[i]).expect("nonzero entry")),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(f: &F, rows: usize, cols: usize) -> Self {
        Mat { field: f.clone(), rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    pub fn from_fn(f: &F, rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(g(i, j));
            }
        }
        Mat { field: f.clone(), rows, cols, data }
    }

    pub fn from_rows(f: &F, rows: &[Vector<F>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Mat { field: f.clone(), rows: rows.len(), cols, data: rows.concat() })
    }

    /// Matrix with the given vectors as columns.
    pub fn from_columns(f: &F, n_rows: usize, columns: &[Vector<F>]) -> Result<Self, LinalgError> {
        if columns.iter().any(|c| c.len() != n_rows) {
            return Err(LinalgError::DimensionMismatch("column length".into()));
        }
        Ok(Self::from_fn(f, n_rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn diagonal(f: &F, entries: &[F::Elem]) -> Self {
        let n = entries.len();
        Self::from_fn(f, n, n, |i, j| if i == j { entries[i].clone() } else { f.zero() })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vector<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn row_vectors(&self) -> Vec<Vector<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    /// Entries in row-major order.
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn from_entries(f: &F, rows: usize, cols: usize, data: Vector<F>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!("{} entries for {rows}x{cols}", data.len())));
        }
        Ok(Mat { field: f.clone(), rows, cols, data })
    }

    fn same_field(&self, other: &Self) -> Result<(), LinalgError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(LinalgError::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch("matrix sum".into()));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Mat { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Mat { field: f.clone(), rows: self.rows, cols: self.cols, data: vec_scale(f, &self.data, c) }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !f.is_zero(a) {
                    axpy(f, dst, a, other.row(k));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vector<F>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch("matrix-vector product".into()));
        }
        Ok((0..self.rows).map(|i| dot(&self.field, self.row(i), v)).collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F::Elem]) -> Result<Vector<F>, LinalgError> {
        if v.len() != self.rows {
            return Err(LinalgError::DimensionMismatch("vector-matrix product".into()));
        }
        let f = &self.field;
        let mut out = zero_vec(f, self.cols);
        for (i, c) in v.iter().enumerate() {
            axpy(f, &mut out, c, self.row(i));
        }
        Ok(out)
    }

    /// Kronecker product; entry `((i,k),(j,l))` is `a_ij·b_kl`.
    pub fn kron(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_field(other)?;
        let f = &self.field;
        Ok(Self::from_fn(f, self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (i, k) = (r / other.rows, r % other.rows);
            let (j, l) = (c / other.cols, c % other.cols);
            f.mul(self.get(i, j), other.get(k, l))
        }))
    }

    pub fn block_diag(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_field(other)?;
        let f = &self.field;
        let (r1, c1) = (self.rows, self.cols);
        Ok(Self::from_fn(f, r1 + other.rows, c1 + other.cols, |i, j| match (i < r1, j < c1) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - r1, j - c1).clone(),
            _ => f.zero(),
        }))
    }

    pub fn trace(&self) -> Result<F::Elem, LinalgError> {
        self.require_square()?;
        let f = &self.field;
        Ok((0..self.rows).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i))))
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.field, &self.data)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field, self.rows) && self.is_square()
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (rows, pivots) = rref_rows(&self.field, self.row_vectors(), self.cols);
        let mut data = rows.concat();
        data.resize(self.rows * self.cols, self.field.zero());
        (Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, data }, pivots)
    }

    pub fn rank(&self) -> usize {
        rref_rows(&self.field, self.row_vectors(), self.cols).1.len()
    }

    /// Null space `{x : A·x = 0}`.
    pub fn kernel(&self) -> Subspace<F> {
        let f = &self.field;
        let (rows, pivots) = rref_rows(f, self.row_vectors(), self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for j in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = zero_vec(f, self.cols);
            v[j] = f.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.sub(&f.zero(), &rows[r][j]);
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, basis).expect("kernel vectors have ambient length")
    }

    /// Some `x` with `A·x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vector<F>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch("right-hand side length".into()));
        }
        let f = &self.field;
        let aug: Vec<Vector<F>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let (rows, pivots) = rref_rows(f, aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vec(f, self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<Self>, LinalgError> {
        self.require_square()?;
        let f = &self.field;
        let n = self.rows;
        let aug: Vec<Vector<F>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(unit_vec(f, n, i));
                r
            })
            .collect();
        let (rows, pivots) = rref_rows(f, aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(Self::from_fn(f, n, n, |i, j| rows[i][n + j].clone())))
    }

    /// Characteristic polynomial `det(X·I − A)`, coefficients low to high,
    /// by the division-free Berkowitz recursion.
    pub fn char_poly(&self) -> Result<Poly<F>, LinalgError> {
        self.require_square()?;
        let f = &self.field;
        let n = self.rows;
        if n == 0 {
            return Ok(vec![f.one()]);
        }
        let neg = |x: &F::Elem| f.sub(&f.zero(), x);
        let mut c: Vec<F::Elem> = vec![f.one(), neg(self.get(0, 0))];
        for r in 1..n {
            let row: Vector<F> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut v: Vector<F> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let mut t = vec![f.one(), neg(self.get(r, r))];
            for _ in 0..r {
                t.push(neg(&dot(f, &row, &v)));
                v = (0..r)
                    .map(|i| {
                        let mut acc = f.zero();
                        for (j, vj) in v.iter().enumerate() {
                            acc = f.add(&acc, &f.mul(self.get(i, j), vj));
                        }
                        acc
                    })
                    .collect();
            }
            let mut next = Vec::with_capacity(r + 2);
            for i in 0..r + 2 {
                let mut acc = f.zero();
                for j in 0..=i.min(r) {
                    acc = f.add(&acc, &f.mul(&t[i - j], &c[j]));
                }
                next.push(acc);
            }
            c = next;
        }
        c.reverse();
        Ok(c)
    }
}

/// Row reduction of `rows` (each of length `cols`) to reduced echelon form;
/// zero rows are dropped.
pub fn rref_rows<F: Field>(f: &F, mut rows: Vec<Vector<F>>, cols: usize) -> (Vec<Vector<F>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).expect("pivot is nonzero");
        if !f.is_one(&inv) {
            for x in rows[r][c..].iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("row r exists");
        for other in head.iter_mut().chain(rest.iter_mut()) {
            let factor = other[c].clone();
            if !f.is_zero(&factor) {
                axpy(f, &mut other[c..], &factor, &pivot_row[c..]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Incrementally maintained reduced echelon basis.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(f: &F, ambient: usize) -> Self {
        EchelonBasis { field: f.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, v: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if !f.is_zero(&c) {
                axpy(f, &mut w, &c, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        is_zero_vec(&self.field, &self.reduce(v))
    }

    /// Adds `v`; returns `true` if it was independent of the current basis.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient dimension");
        let f = &self.field;
        let w = self.reduce(v);
        let Some(p) = leading_index(f, &w) else {
            return false;
        };
        let w = vec_scale(f, &w, &f.inv(&w[p]).expect("nonzero"));
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if !f.is_zero(&c) {
                axpy(f, row, &c, &w);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, w);
        true
    }

    pub fn into_subspace(self) -> Subspace<F> {
        Subspace { field: self.field, ambient: self.ambient, basis: self.rows, pivots: self.pivots }
    }
}

/// A subspace of `F^n` stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn span(f: &F, ambient: usize, vectors: impl IntoIterator<Item = Vector<F>>) -> Result<Self, LinalgError> {
        let rows: Vec<Vector<F>> = vectors.into_iter().collect();
        if rows.iter().any(|r| r.len() != ambient) {
            return Err(LinalgError::DimensionMismatch("vector length differs from ambient dimension".into()));
        }
        let (basis, pivots) = rref_rows(f, rows, ambient);
        Ok(Subspace { field: f.clone(), ambient, basis, pivots })
    }

    pub fn zero(f: &F, ambient: usize) -> Self {
        Subspace { field: f.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(f: &F, ambient: usize) -> Self {
        Subspace {
            field: f.clone(),
            ambient,
            basis: (0..ambient).map(|i| unit_vec(f, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &[Vector<F>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vector<F>> {
        if v.len() != self.ambient {
            return None;
        }
        let f = &self.field;
        let coords: Vector<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = v.to_vec();
        for (c, row) in coords.iter().zip(&self.basis) {
            axpy(f, &mut w, c, row);
        }
        is_zero_vec(f, &w).then_some(coords)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    fn check(&self, other: &Self) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        Subspace::span(&self.field, self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Intersection by the Zassenhaus construction: reduce the rows `(u | u)`
    /// and `(v | 0)`; rows with vanishing left half span `U ∩ V` on the right.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        let f = &self.field;
        let n = self.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut r = u.clone();
            r.extend(u.iter().cloned());
            rows.push(r);
        }
        for v in &other.basis {
            let mut r = v.clone();
            r.extend(zero_vec(f, n));
            rows.push(r);
        }
        let (reduced, pivots) = rref_rows(f, rows, 2 * n);
        let inter = reduced
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(r, _)| r[n..].to_vec());
        Subspace::span(f, n, inter)
    }

    pub fn as_mat(&self) -> Mat<F> {
        Mat::from_rows(&self.field, &self.basis)
            .unwrap_or_else(|_| Mat::zeros(&self.field, 0, self.ambient))
    }
}
