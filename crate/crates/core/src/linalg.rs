//! Sparse matrices over a [`Field`] and exact elimination.
//!
//! Every operator built in this crate is weight-preserving, so its nonzero
//! pattern splits into many small independent blocks. Rank, image, kernel and
//! inversion find those blocks (connected components of the row/column
//! incidence graph) and run dense Gauss-Jordan elimination on each one.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::par::{self, Strategy};

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

/// Accumulates sparse linear combinations.
#[derive(Clone, Debug)]
pub struct Accum<F: Field> {
    map: BTreeMap<usize, F>,
}

impl<F: Field> Default for Accum<F> {
    fn default() -> Self {
        Accum {
            map: BTreeMap::new(),
        }
    }
}

impl<F: Field> Accum<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, idx: usize, v: &F) {
        if v.is_zero() {
            return;
        }
        match self.map.get_mut(&idx) {
            Some(x) => {
                *x = x.add(v);
                if x.is_zero() {
                    self.map.remove(&idx);
                }
            }
            None => {
                self.map.insert(idx, v.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, vec: &[(usize, F)], c: &F) {
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (i, v) in vec {
            if one {
                self.add(*i, v);
            } else {
                self.add(*i, &v.mul(c));
            }
        }
    }

    pub fn finish(self) -> SparseVec<F> {
        self.map.into_iter().collect()
    }
}

pub fn sv_scale<F: Field>(v: &[(usize, F)], c: &F) -> SparseVec<F> {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.mul(c))).collect()
}

pub fn sv_get<F: Field>(v: &[(usize, F)], idx: usize) -> Option<&F> {
    v.binary_search_by_key(&idx, |(i, _)| *i)
        .ok()
        .map(|k| &v[k].1)
}

pub fn sv_sub<F: Field>(a: &[(usize, F)], b: &[(usize, F)]) -> SparseVec<F> {
    let mut acc = Accum::new();
    acc.add_scaled(a, &F::one());
    acc.add_scaled(b, &F::one().neg());
    acc.finish()
}

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, F::one())]).collect(),
        }
    }

    pub fn scalar(n: usize, c: &F) -> Self {
        if c.is_zero() {
            return Self::zeros(n, n);
        }
        Matrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, c.clone())]).collect(),
        }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<SparseVec<F>>) -> Self {
        assert_eq!(data.len(), rows);
        debug_assert!(data.iter().all(|r| r.iter().all(|(c, v)| *c < cols && !v.is_zero())));
        Matrix { rows, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[SparseVec<F>]) -> Self {
        let mut data: Vec<SparseVec<F>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                assert!(*i < rows, "column entry out of range");
                if !v.is_zero() {
                    data[*i].push((j, v.clone()));
                }
            }
        }
        Matrix {
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn from_dense(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, F)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        sv_get(&self.data[i], j).cloned().unwrap_or_else(F::zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, F)> {
        self.data
            .iter()
            .enumerate()
            .find_map(|(i, r)| r.first().map(|(j, v)| (i, *j, v.clone())))
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut data: Vec<SparseVec<F>> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                data[*j].push((i, v.clone()));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn columns(&self) -> Vec<SparseVec<F>> {
        self.transpose().data
    }

    pub fn column(&self, j: usize) -> SparseVec<F> {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, r)| sv_get(r, j).map(|v| (i, v.clone())))
            .collect()
    }

    /// Apply to a sparse column vector.
    pub fn apply(&self, v: &[(usize, F)]) -> SparseVec<F> {
        // Column access through the transpose would be cleaner but costs a copy.
        let mut out = Vec::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = F::zero();
            let (mut a, mut b) = (0, 0);
            while a < r.len() && b < v.len() {
                match r[a].0.cmp(&v[b].0) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        acc = acc.add(&r[a].1.mul(&v[b].1));
                        a += 1;
                        b += 1;
                    }
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        self.mul_with(other, Strategy::Parallel)
    }

    pub fn mul_with(&self, other: &Matrix<F>, strategy: Strategy) -> Matrix<F> {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let data = par::map_slice(&self.data, strategy, |r| {
            let mut acc = Accum::new();
            for (k, a) in r {
                acc.add_scaled(&other.data[*k], a);
            }
            acc.finish()
        });
        Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    fn zip_rows(&self, other: &Matrix<F>, sign: &F) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut acc = Accum::new();
                acc.add_scaled(a, &F::one());
                acc.add_scaled(b, sign);
                acc.finish()
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        self.zip_rows(other, &F::one())
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        self.zip_rows(other, &F::one().neg())
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| sv_scale(r, c)).collect(),
        }
    }

    /// `self + c·I`.
    pub fn add_scalar(&self, c: &F) -> Matrix<F> {
        assert_eq!(self.rows, self.cols);
        self.add(&Matrix::scalar(self.rows, c))
    }

    /// Kronecker product, indexing `(i, j) -> i * other.dim + j`.
    pub fn kron(&self, other: &Matrix<F>) -> Matrix<F> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        row.push((ja * other.cols + jb, a.mul(b)));
                    }
                }
                data.push(row);
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn map_entries<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(j, v)| (*j, f(v)))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn try_map_entries<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Matrix<G>> {
        let mut data = Vec::with_capacity(self.rows);
        for r in &self.data {
            let mut row = Vec::with_capacity(r.len());
            for (j, v) in r {
                let g = f(v)?;
                if !g.is_zero() {
                    row.push((*j, g));
                }
            }
            data.push(row);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Select a submatrix by row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        let mut colmap = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            colmap[c] = k;
        }
        let data = rows
            .iter()
            .map(|&i| {
                let mut r: SparseVec<F> = self.data[i]
                    .iter()
                    .filter(|(j, _)| colmap[*j] != usize::MAX)
                    .map(|(j, v)| (colmap[*j], v.clone()))
                    .collect();
                r.sort_by_key(|(j, _)| *j);
                r
            })
            .collect();
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn trace(&self) -> F {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(F::zero(), |acc, i| acc.add(&self.get(i, i)))
    }

    /// Independent blocks of the nonzero pattern.
    pub fn blocks(&self) -> Vec<Block> {
        blocks_of(self)
    }

    pub fn rank(&self) -> usize {
        self.rank_with(Strategy::Parallel)
    }

    pub fn rank_with(&self, strategy: Strategy) -> usize {
        let blocks = self.blocks();
        par::map_slice(&blocks, strategy, |b| {
            if b.rows.is_empty() || b.cols.is_empty() {
                return 0;
            }
            let dense = self.dense_block(&b.rows, &b.cols);
            forward_rank(dense)
        })
        .into_iter()
        .sum()
    }

    fn dense_block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<F>> {
        let mut colmap = BTreeMap::new();
        for (k, &c) in cols.iter().enumerate() {
            colmap.insert(c, k);
        }
        rows.iter()
            .map(|&i| {
                let mut row = vec![F::zero(); cols.len()];
                for (j, v) in &self.data[i] {
                    if let Some(&k) = colmap.get(j) {
                        row[k] = v.clone();
                    }
                }
                row
            })
            .collect()
    }

    /// Column space as a reduced subspace of the codomain.
    pub fn image(&self) -> Subspace<F> {
        let blocks = self.blocks();
        let parts = par::map_slice(&blocks, Strategy::Parallel, |b| {
            if b.rows.is_empty() || b.cols.is_empty() {
                return Vec::new();
            }
            // Row-reduce the transpose: its nonzero rows are a reduced basis
            // of the column space.
            let dense = self.dense_block(&b.rows, &b.cols);
            let t = transpose_dense(dense);
            let (rref, pivots) = rref(t);
            pivots
                .iter()
                .enumerate()
                .map(|(r, &pc)| {
                    let vec: SparseVec<F> = rref[r]
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(k, v)| (b.rows[k], v.clone()))
                        .collect();
                    (b.rows[pc], vec)
                })
                .collect::<Vec<_>>()
        });
        let mut pairs: Vec<(usize, SparseVec<F>)> = parts.into_iter().flatten().collect();
        pairs.sort_by_key(|(p, _)| *p);
        let (pivots, basis) = pairs.into_iter().unzip();
        Subspace::from_reduced(self.rows, basis, pivots)
    }

    /// Null space as a reduced subspace of the domain.
    pub fn kernel(&self) -> Subspace<F> {
        let blocks = self.blocks();
        let parts = par::map_slice(&blocks, Strategy::Parallel, |b| {
            if b.cols.is_empty() {
                return Vec::new();
            }
            if b.rows.is_empty() {
                return b
                    .cols
                    .iter()
                    .map(|&c| (c, vec![(c, F::one())]))
                    .collect();
            }
            let dense = self.dense_block(&b.rows, &b.cols);
            let (rref, pivots) = rref(dense);
            let mut is_pivot = vec![false; b.cols.len()];
            for &pc in &pivots {
                is_pivot[pc] = true;
            }
            let mut out = Vec::new();
            for f in 0..b.cols.len() {
                if is_pivot[f] {
                    continue;
                }
                let mut v: SparseVec<F> = vec![(b.cols[f], F::one())];
                for (r, &pc) in pivots.iter().enumerate() {
                    let x = &rref[r][f];
                    if !x.is_zero() {
                        v.push((b.cols[pc], x.neg()));
                    }
                }
                v.sort_by_key(|(i, _)| *i);
                out.push((b.cols[f], v));
            }
            out
        });
        let mut pairs: Vec<(usize, SparseVec<F>)> = parts.into_iter().flatten().collect();
        pairs.sort_by_key(|(p, _)| *p);
        let (pivots, basis) = pairs.into_iter().unzip();
        Subspace::from_reduced(self.cols, basis, pivots)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let blocks = self.blocks();
        if blocks.iter().any(|b| b.rows.len() != b.cols.len()) {
            return None;
        }
        let parts = par::map_slice(&blocks, Strategy::Parallel, |b| {
            let k = b.rows.len();
            let mut dense = self.dense_block(&b.rows, &b.cols);
            for (i, row) in dense.iter_mut().enumerate() {
                row.extend((0..k).map(|j| if i == j { F::one() } else { F::zero() }));
            }
            let (rref, pivots) = rref(dense);
            if pivots.len() < k || pivots.iter().enumerate().any(|(i, &p)| i != p) {
                return None;
            }
            // Inverse maps block rows (codomain) back to block columns (domain).
            let mut entries = Vec::new();
            for (i, row) in rref.iter().enumerate() {
                for j in 0..k {
                    let v = &row[k + j];
                    if !v.is_zero() {
                        entries.push((b.cols[i], b.rows[j], v.clone()));
                    }
                }
            }
            Some(entries)
        });
        let mut data: Vec<SparseVec<F>> = vec![Vec::new(); n];
        for part in parts {
            for (i, j, v) in part? {
                data[i].push((j, v));
            }
        }
        for r in &mut data {
            r.sort_by_key(|(j, _)| *j);
        }
        Some(Matrix {
            rows: n,
            cols: n,
            data,
        })
    }
}

/// One connected block of a sparse matrix's nonzero pattern.
#[derive(Clone, Debug, Default)]
pub struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn blocks_of<F: Field>(m: &Matrix<F>) -> Vec<Block> {
    // Nodes: rows 0..R, columns R..R+C.
    let n = m.rows + m.cols;
    let mut parent: Vec<usize> = (0..n).collect();
    for (i, r) in m.data.iter().enumerate() {
        for (j, _) in r {
            let a = find(&mut parent, i);
            let b = find(&mut parent, m.rows + j);
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut map: BTreeMap<usize, Block> = BTreeMap::new();
    for i in 0..m.rows {
        let root = find(&mut parent, i);
        map.entry(root).or_default().rows.push(i);
    }
    for j in 0..m.cols {
        let root = find(&mut parent, m.rows + j);
        map.entry(root).or_default().cols.push(j);
    }
    let mut blocks: Vec<Block> = map.into_values().collect();
    blocks.sort_by_key(|b| (b.cols.first().copied(), b.rows.first().copied()));
    blocks
}

fn transpose_dense<F: Field>(m: Vec<Vec<F>>) -> Vec<Vec<F>> {
    let r = m.len();
    let c = m.first().map_or(0, |x| x.len());
    let mut out = vec![Vec::with_capacity(r); c];
    for row in m {
        for (j, v) in row.into_iter().enumerate() {
            out[j].push(v);
        }
    }
    out
}

fn pick_pivot<F: Field>(m: &[Vec<F>], from: usize, col: usize) -> Option<usize> {
    m.iter()
        .enumerate()
        .skip(from)
        .filter(|(_, r)| !r[col].is_zero())
        .min_by_key(|(_, r)| r[col].size())
        .map(|(i, _)| i)
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(mut m: Vec<Vec<F>>) -> (Vec<Vec<F>>, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |x| x.len());
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        let Some(p) = pick_pivot(&m, pr, col) else {
            continue;
        };
        m.swap(pr, p);
        let inv = m[pr][col].inv().unwrap();
        if !inv.is_one() {
            for v in m[pr].iter_mut().skip(col) {
                *v = v.mul(&inv);
            }
        }
        let pivot_row = m[pr].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == pr || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(col) {
                if !pv.is_zero() {
                    row[j] = row[j].sub(&f.mul(pv));
                }
            }
        }
        pivots.push(col);
        pr += 1;
    }
    m.truncate(pr.max(pivots.len()));
    (m, pivots)
}

/// Rank by forward elimination only.
fn forward_rank<F: Field>(mut m: Vec<Vec<F>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |x| x.len());
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        let Some(p) = pick_pivot(&m, pr, col) else {
            continue;
        };
        m.swap(pr, p);
        let inv = m[pr][col].inv().unwrap();
        let pivot_row: Vec<F> = m[pr].iter().map(|v| v.mul(&inv)).collect();
        for row in m.iter_mut().skip(pr + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(col) {
                if !pv.is_zero() {
                    row[j] = row[j].sub(&f.mul(pv));
                }
            }
        }
        pr += 1;
    }
    pr
}

/// A subspace of a coordinate space `F^n`, stored as a reduced basis:
/// `basis[j]` has a 1 at `pivots[j]` and 0 at every other pivot.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    projector: Option<Matrix<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
            projector: None,
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| vec![(i, F::one())]).collect(),
            pivots: (0..ambient).collect(),
            projector: None,
        }
    }

    fn from_reduced(ambient: usize, basis: Vec<SparseVec<F>>, pivots: Vec<usize>) -> Self {
        Subspace {
            ambient,
            basis,
            pivots,
            projector: None,
        }
    }

    /// Span of arbitrary vectors.
    pub fn span(ambient: usize, vectors: &[SparseVec<F>]) -> Self {
        Matrix::from_columns(ambient, vectors).image()
    }

    pub fn with_projector(mut self, projector: Matrix<F>) -> Self {
        self.projector = Some(projector);
        self
    }

    pub fn projector(&self) -> Option<&Matrix<F>> {
        self.projector.as_ref()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Spanning matrix (ambient × dim).
    pub fn matrix(&self) -> Matrix<F> {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    /// Coordinates of `v`, assuming membership.
    pub fn coords_unchecked(&self, v: &[(usize, F)]) -> Vec<F> {
        self.pivots
            .iter()
            .map(|&p| sv_get(v, p).cloned().unwrap_or_else(F::zero))
            .collect()
    }

    /// Coordinates of `v`, or `None` if `v` is not in the subspace.
    pub fn coords(&self, v: &[(usize, F)]) -> Option<Vec<F>> {
        let c = self.coords_unchecked(v);
        let mut acc = Accum::new();
        acc.add_scaled(v, &F::one());
        let minus = F::one().neg();
        for (b, x) in self.basis.iter().zip(&c) {
            acc.add_scaled(b, &x.mul(&minus));
        }
        acc.finish().is_empty().then_some(c)
    }

    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Coordinates of a sparse vector, as a sparse vector.
    pub fn coords_sparse(&self, v: &[(usize, F)]) -> Option<SparseVec<F>> {
        self.coords(v).map(|c| {
            c.into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect()
        })
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient);
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    /// Push the subspace through a matrix whose domain is the ambient space.
    pub fn image_under(&self, m: &Matrix<F>) -> Subspace<F> {
        assert_eq!(m.cols(), self.ambient);
        let cols: Vec<SparseVec<F>> = self.basis.iter().map(|b| m.apply(b)).collect();
        Subspace::span(m.rows(), &cols)
    }
}

/// Matrix of `m` restricted to `dom` with values read in `cod` coordinates.
/// Fails with a witness column when `m(dom)` is not contained in `cod`.
pub fn restrict<F: Field>(m: &Matrix<F>, dom: &Subspace<F>, cod: &Subspace<F>) -> Result<Matrix<F>> {
    if m.cols() != dom.ambient || m.rows() != cod.ambient {
        return Err(Error::Shape(format!(
            "restrict: map is {}x{}, subspaces live in {} and {}",
            m.rows(),
            m.cols(),
            dom.ambient,
            cod.ambient
        )));
    }
    let mut cols = Vec::with_capacity(dom.dim());
    for (j, b) in dom.basis.iter().enumerate() {
        let img = m.apply(b);
        let c = cod
            .coords_sparse(&img)
            .ok_or(Error::Containment { column: j })?;
        cols.push(c);
    }
    Ok(Matrix::from_columns(cod.dim(), &cols))
}

/// `(Im M, Ker M)`.
pub fn image_kernel<F: Field>(m: &Matrix<F>) -> (Subspace<F>, Subspace<F>) {
    (m.image(), m.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn dense(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_dense(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn identity_image_kernel() {
        let id = Matrix::<Q>::identity(4);
        let (im, ker) = image_kernel(&id);
        assert_eq!(im.dim(), 4);
        assert_eq!(ker.dim(), 0);
        let z = Matrix::<Q>::zeros(4, 4);
        let (im, ker) = image_kernel(&z);
        assert_eq!(im.dim(), 0);
        assert_eq!(ker.dim(), 4);
    }

    #[test]
    fn rank_nullity_on_coupled_blocks() {
        let m = dense(&[&[1, 2, 0, 0], &[2, 4, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 0]]);
        assert_eq!(m.rank(), 2);
        let (im, ker) = image_kernel(&m);
        assert_eq!(im.dim() + ker.dim(), 4);
        for v in ker.basis() {
            assert!(m.apply(v).is_empty());
        }
        for j in 0..4 {
            assert!(im.contains(&m.column(j)));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = dense(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 3]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert!(dense(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn restrict_reports_witness() {
        let m = dense(&[&[0, 1], &[1, 0]]);
        let line = Subspace::span(2, &[vec![(0, q(1))]]);
        assert!(matches!(
            restrict(&m, &line, &line),
            Err(Error::Containment { column: 0 })
        ));
        let r = restrict(&Matrix::identity(2), &line, &line).unwrap();
        assert_eq!(r, Matrix::identity(1));
    }

    #[test]
    fn kron_indexing() {
        let a = dense(&[&[1, 2], &[3, 4]]);
        let b = dense(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.get(0, 1), q(1));
        assert_eq!(k.get(1, 2), q(2));
        assert_eq!(k.get(3, 2), q(4));
    }
}
