//! Hecke symmetries, the Hecke-algebra action on tensor powers, the
//! q-symmetrizers `X_n`, `Y_n`, the spaces `S_n = Im X_n`, `Λ_n = Im Y_n`
//! and their duals, and the simple modules `M_λ` for hook partitions.
//!
//! Tensor indices follow [`crate::tensorspace::BasisIndex`]: the pair
//! `x_i ⊗ x_j` is coordinate `i * d + j`, and the matrix of `R` has
//! `R[(k,l), (i,j)] = R^{kl}_{ij}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Backend, Exact, Field};
use crate::linalg::{Accum, Matrix, SparseVec, Subspace};
use crate::par::{self, Strategy};
use crate::poly::ZPoly;
use crate::scalar::Scalar;
use crate::tensorspace::{induced_grading, tensor_basis, Grading, SuperDim};

/// An even operator on `V ⊗ V` together with its claimed Hecke parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeSymmetry {
    pub dims: SuperDim,
    r: Matrix<Scalar>,
    param: Scalar,
}

impl HeckeSymmetry {
    pub fn new(dims: SuperDim, r: Matrix<Scalar>, param: Scalar) -> Result<Self> {
        let dd = dims.d() * dims.d();
        if r.rows() != dd || r.cols() != dd {
            return Err(Error::Shape(format!("R must be {dd}x{dd}")));
        }
        Ok(HeckeSymmetry { dims, r, param })
    }

    pub fn d(&self) -> usize {
        self.dims.d()
    }

    pub fn matrix(&self) -> &Matrix<Scalar> {
        &self.r
    }

    pub fn param(&self) -> &Scalar {
        &self.param
    }

    /// `R^{kl}_{ij}` with 0-based indices.
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> Scalar {
        let d = self.d();
        self.r.get(k * d + l, i * d + j)
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, i: usize, j: usize, k: usize, l: usize, value: Scalar) -> Self {
        let d = self.d();
        let mut cols = self.r.columns();
        let col = &mut cols[i * d + j];
        col.retain(|(row, _)| *row != k * d + l);
        if !value.is_zero() {
            col.push((k * d + l, value));
            col.sort_by_key(|(row, _)| *row);
        }
        HeckeSymmetry {
            dims: self.dims,
            r: Matrix::from_columns(d * d, &cols),
            param: self.param.clone(),
        }
    }

    pub fn is_even(&self) -> bool {
        let d = self.d();
        (0..d * d).all(|row| {
            self.r.row(row).iter().all(|(col, _)| {
                let (k, l, i, j) = (row / d, row % d, col / d, col % d);
                (self.dims.parity(i) + self.dims.parity(j)) % 2
                    == (self.dims.parity(k) + self.dims.parity(l)) % 2
            })
        })
    }

    /// True when `R` maps each pair `x_i ⊗ x_j` into the span of pairs with
    /// the same multiset of indices, so torus weights are preserved.
    pub fn is_weight_preserving(&self) -> bool {
        let d = self.d();
        (0..d * d).all(|row| {
            self.r.row(row).iter().all(|(col, _)| {
                let (k, l, i, j) = (row / d, row % d, col / d, col % d);
                (i.min(j), i.max(j)) == (k.min(l), k.max(l))
            })
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: HeckeJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let dims = SuperDim::new(raw.r, raw.s)?;
        let d = dims.d();
        let mut cols: Vec<SparseVec<Scalar>> = vec![Vec::new(); d * d];
        for e in &raw.entries {
            if [e.i, e.j, e.k, e.l].iter().any(|&x| x == 0 || x > d) {
                return Err(Error::OutOfRange(format!(
                    "entry index ({},{},{},{}) outside 1..={d}",
                    e.i, e.j, e.k, e.l
                )));
            }
            let v: Scalar = e.value.parse()?;
            let mut acc = Accum::new();
            acc.add_scaled(&cols[(e.i - 1) * d + (e.j - 1)], &Scalar::one());
            acc.add((e.k - 1) * d + (e.l - 1), &v);
            cols[(e.i - 1) * d + (e.j - 1)] = acc.finish();
        }
        let param = match &raw.param {
            Some(s) => s.parse()?,
            None => Scalar::p(),
        };
        HeckeSymmetry::new(dims, Matrix::from_columns(d * d, &cols), param)
    }

    pub fn to_json(&self) -> String {
        let d = self.d();
        let mut entries = Vec::new();
        for col in 0..d * d {
            for row in 0..d * d {
                let v = self.r.get(row, col);
                if !v.is_zero() {
                    entries.push(EntryJson {
                        i: col / d + 1,
                        j: col % d + 1,
                        k: row / d + 1,
                        l: row % d + 1,
                        value: v.to_string(),
                    });
                }
            }
        }
        let raw = HeckeJson {
            r: self.dims.r,
            s: self.dims.s,
            param: Some(self.param.to_string()),
            entries,
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct HeckeJson {
    r: usize,
    s: usize,
    #[serde(default)]
    param: Option<String>,
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    value: String,
}

fn sign(dims: SuperDim, i: usize, j: usize) -> i64 {
    if dims.parity(i) * dims.parity(j) == 1 {
        -1
    } else {
        1
    }
}

/// The standard Hecke symmetry of birank `(r|s)` with entries in `ℤ[p]`,
/// `p = q²`. It is the table in `q` conjugated by `q^{inv}`, where `inv`
/// counts inversions of a pair of indices; see [`standard_r_q_table`] and
/// [`check_gauge`].
pub fn build_standard_r(r: usize, s: usize) -> Result<HeckeSymmetry> {
    let dims = SuperDim::new(r, s)?;
    let d = dims.d();
    let p = Scalar::p();
    let mut cols: Vec<SparseVec<Scalar>> = vec![Vec::new(); d * d];
    for i in 0..d {
        for j in 0..d {
            let col = &mut cols[i * d + j];
            let sg = Scalar::from_i64(sign(dims, i, j));
            if i == j {
                let v = if dims.parity(i) == 0 {
                    p.clone()
                } else {
                    Scalar::from_i64(-1)
                };
                col.push((i * d + i, v));
            } else if i < j {
                col.push((i * d + j, p.sub(&Scalar::one())));
                col.push((j * d + i, sg.mul(&p)));
            } else {
                col.push((j * d + i, sg));
            }
            col.sort_by_key(|(row, _)| *row);
        }
    }
    HeckeSymmetry::new(dims, Matrix::from_columns(d * d, &cols), p)
}

/// The standard table with entries in `ℤ[q]`. The indeterminate of the
/// returned scalars stands for `q`, not for the Hecke parameter.
pub fn standard_r_q_table(r: usize, s: usize) -> Result<Matrix<Scalar>> {
    let dims = SuperDim::new(r, s)?;
    let d = dims.d();
    let q = Scalar::p();
    let mut cols: Vec<SparseVec<Scalar>> = vec![Vec::new(); d * d];
    for i in 0..d {
        for j in 0..d {
            let col = &mut cols[i * d + j];
            if i == j {
                let v = if dims.parity(i) == 0 {
                    q.mul(&q)
                } else {
                    Scalar::from_i64(-1)
                };
                col.push((i * d + i, v));
                continue;
            }
            if i < j {
                col.push((i * d + j, q.mul(&q).sub(&Scalar::one())));
            }
            col.push((j * d + i, Scalar::from_i64(sign(dims, i, j)).mul(&q)));
            col.sort_by_key(|(row, _)| *row);
        }
    }
    Ok(Matrix::from_columns(d * d, &cols))
}

/// The super-permutation `x_i ⊗ x_j ↦ (−1)^{ĥiĥj} x_j ⊗ x_i` with `p = 1`.
pub fn super_permutation(r: usize, s: usize) -> Result<HeckeSymmetry> {
    let dims = SuperDim::new(r, s)?;
    let d = dims.d();
    let cols: Vec<SparseVec<Scalar>> = (0..d * d)
        .map(|c| {
            let (i, j) = (c / d, c % d);
            vec![(j * d + i, Scalar::from_i64(sign(dims, i, j)))]
        })
        .collect();
    HeckeSymmetry::new(dims, Matrix::from_columns(d * d, &cols), Scalar::one())
}

/// Substitute `p ↦ p²` in a polynomial scalar.
fn subst_square(s: &Scalar) -> Option<Scalar> {
    if !s.is_polynomial() {
        return None;
    }
    let coeffs = s.numerator().coeffs();
    let mut spread = vec![num_bigint::BigInt::from(0); coeffs.len() * 2];
    for (k, c) in coeffs.iter().enumerate() {
        spread[2 * k] = c.clone();
    }
    let poly = ZPoly::from_coeffs(spread);
    Some(Scalar::from_poly(&poly).mul(&Scalar::from_rational(s.content().clone())))
}

/// Verify `R'^{kl}_{ij}(q²) = q^{inv(k,l) − inv(i,j)} R^{kl}_{ij}(q)` entrywise
/// against the table in `q`.
pub fn check_gauge(h: &HeckeSymmetry, q_table: &Matrix<Scalar>) -> bool {
    let d = h.d();
    let inv = |a: usize, b: usize| i64::from(a > b);
    (0..d * d).all(|row| {
        (0..d * d).all(|col| {
            let (k, l, i, j) = (row / d, row % d, col / d, col % d);
            let Some(lhs) = subst_square(&h.matrix().get(row, col)) else {
                return false;
            };
            let rhs = q_table
                .get(row, col)
                .mul(&Scalar::p_pow(inv(k, l) - inv(i, j)));
            lhs == rhs
        })
    })
}

/// Outcome of checking the Hecke-symmetry axioms.
#[derive(Clone, Debug, Serialize)]
pub struct HeckeReport {
    pub even: bool,
    pub yang_baxter: bool,
    pub hecke: bool,
    pub closure: bool,
    pub param: String,
    /// `C^i_j`, serialized row by row.
    pub c_matrix: Option<Vec<Vec<String>>>,
    pub witnesses: Vec<String>,
}

impl HeckeReport {
    pub fn passed(&self) -> bool {
        self.even && self.yang_baxter && self.hecke && self.closure
    }
}

fn witness_label(dims: SuperDim, legs: usize, m: &Matrix<Scalar>, what: &str) -> Option<String> {
    let (i, j, v) = m.first_nonzero()?;
    let b = tensor_basis(dims, legs, 0);
    Some(format!(
        "{what}: entry ({}, {}) = {v}",
        b.label(i),
        b.label(j)
    ))
}

/// Check evenness, Yang–Baxter, the Hecke relation and closure over the
/// exact field, collecting diagnostics instead of failing.
pub fn check_hecke_symmetry(h: &HeckeSymmetry) -> HeckeReport {
    check_symmetry_matrix(h.dims, h.matrix(), h.param())
}

/// The same checks for an arbitrary matrix and parameter, e.g. the table in `q`
/// with parameter `q²`.
pub fn check_symmetry_matrix(dims: SuperDim, r: &Matrix<Scalar>, param: &Scalar) -> HeckeReport {
    let d = dims.d();
    let mut witnesses = Vec::new();
    let h = HeckeSymmetry {
        dims,
        r: r.clone(),
        param: param.clone(),
    };
    let even = h.is_even();
    if !even {
        witnesses.push("R is not even".into());
    }
    let id = Matrix::<Scalar>::identity(d);
    let r1 = r.kron(&id);
    let r2 = id.kron(r);
    let ybe = r1.mul(&r2).mul(&r1).sub(&r2.mul(&r1).mul(&r2));
    if let Some(w) = witness_label(dims, 3, &ybe, "Yang-Baxter") {
        witnesses.push(w);
    }
    let hecke_res = r
        .add_scalar(&param.neg())
        .mul(&r.add_scalar(&Scalar::one()));
    if let Some(w) = witness_label(dims, 2, &hecke_res, "Hecke relation") {
        witnesses.push(w);
    }
    let closure = match compute_p_matrix(&h) {
        Ok(pc) => {
            let res = closure_residual(&h, &pc.p);
            if let Some(w) = witness_label(dims, 2, &res, "closure") {
                witnesses.push(w);
                None
            } else {
                Some(pc)
            }
        }
        Err(e) => {
            witnesses.push(format!("closure: {e}"));
            None
        }
    };
    HeckeReport {
        even,
        yang_baxter: ybe.is_zero(),
        hecke: hecke_res.is_zero(),
        closure: closure.is_some(),
        param: param.to_string(),
        c_matrix: closure.map(|pc| {
            (0..d)
                .map(|i| (0..d).map(|j| pc.c.get(i, j).to_string()).collect())
                .collect()
        }),
        witnesses,
    }
}

/// The closure matrix `P`, stored with `P[(i,m), (j,n)] = P^{im}_{jn}`, and
/// `C^i_j = Σ_l P^{il}_{jl}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureData {
    pub p: Matrix<Scalar>,
    pub c: Matrix<Scalar>,
}

impl ClosureData {
    /// `P^{im}_{jn}` with 0-based indices.
    pub fn entry(&self, i: usize, m: usize, j: usize, n: usize) -> Scalar {
        let d = self.c.rows();
        self.p.get(i * d + m, j * d + n)
    }
}

/// Solve `P^{im}_{jn} R^{nk}_{ml} = δ^i_l δ^k_j` for `P`.
///
/// For fixed `(i, j)` the unknowns `X_{mn} = P^{im}_{jn}` satisfy
/// `Σ_{mn} R^{nk}_{ml} X_{mn} = δ^i_l δ^k_j`; the coefficient matrix does not
/// depend on `(i, j)`, so one inversion serves every right-hand side.
pub fn compute_p_matrix(h: &HeckeSymmetry) -> Result<ClosureData> {
    let d = h.d();
    let dd = d * d;
    let mut rows: Vec<SparseVec<Scalar>> = vec![Vec::new(); dd];
    for (kl, row) in rows.iter_mut().enumerate() {
        let (k, l) = (kl / d, kl % d);
        for m in 0..d {
            for n in 0..d {
                let v = h.r.get(n * d + k, m * d + l);
                if !v.is_zero() {
                    row.push((m * d + n, v));
                }
            }
        }
    }
    let mmat = Matrix::from_rows(dd, dd, rows);
    let minv = mmat
        .inverse()
        .ok_or_else(|| Error::Singular("closure system for P".into()))?;
    // X^{(i,j)} = Minv · e_{(j,i)}, i.e. P^{im}_{jn} = Minv[(m,n), (j,i)].
    let mut prow: Vec<SparseVec<Scalar>> = vec![Vec::new(); dd];
    for i in 0..d {
        for j in 0..d {
            let col = j * d + i;
            for m in 0..d {
                for n in 0..d {
                    let v = minv.get(m * d + n, col);
                    if !v.is_zero() {
                        prow[i * d + m].push((j * d + n, v));
                    }
                }
            }
        }
    }
    for r in &mut prow {
        r.sort_by_key(|(c, _)| *c);
    }
    let p = Matrix::from_rows(dd, dd, prow);
    let mut c = vec![vec![Scalar::zero(); d]; d];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, cij) in row.iter_mut().enumerate() {
            for l in 0..d {
                *cij = cij.add(&p.get(i * d + l, j * d + l));
            }
        }
    }
    Ok(ClosureData {
        p,
        c: Matrix::from_dense(c),
    })
}

/// `Σ_{mn} P^{im}_{jn} R^{nk}_{ml} − δ^i_l δ^k_j`, indexed by `((i,k), (j,l))`.
pub fn closure_residual(h: &HeckeSymmetry, p: &Matrix<Scalar>) -> Matrix<Scalar> {
    let d = h.d();
    let mut out = vec![vec![Scalar::zero(); d * d]; d * d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let mut acc = Scalar::zero();
                    for m in 0..d {
                        for n in 0..d {
                            let a = p.get(i * d + m, j * d + n);
                            if a.is_zero() {
                                continue;
                            }
                            acc = acc.add(&a.mul(&h.r.get(n * d + k, m * d + l)));
                        }
                    }
                    if i == l && k == j {
                        acc = acc.sub(&Scalar::one());
                    }
                    out[i * d + k][j * d + l] = acc;
                }
            }
        }
    }
    Matrix::from_dense(out)
}

/// Which tensor factor a symmetrizer acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `V^⊗n`, acted on by `R`.
    Co,
    /// `V*^⊗n`, acted on by the transposed operator `R*`.
    Contra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymKind {
    Sym,
    Ext,
}

/// A based subspace of a tensor power together with the weights of its
/// basis vectors.
#[derive(Clone, Debug)]
pub struct WeightedSpace<F: Field> {
    pub sub: Subspace<F>,
    pub grading: Grading,
}

impl<F: Field> WeightedSpace<F> {
    pub fn dim(&self) -> usize {
        self.sub.dim()
    }
}

/// Upper bound on `n` for symmetrizers.
pub const MAX_SYMMETRIZER_DEGREE: usize = 8;

type SpaceCache<K, F> = Mutex<HashMap<K, Arc<WeightedSpace<F>>>>;

/// The Hecke symmetry embedded into a backend field, with cached `S_n`,
/// `Λ_n` and their duals.
pub struct TensorAlgebra<B: Backend> {
    backend: B,
    dims: SuperDim,
    p: B::F,
    r_cols: Vec<SparseVec<B::F>>,
    rstar_cols: Vec<SparseVec<B::F>>,
    contraction: Vec<Vec<B::F>>,
    weight_preserving: bool,
    strategy: Strategy,
    cache: SpaceCache<(Side, SymKind, usize), B::F>,
    young_cache: SpaceCache<Vec<usize>, B::F>,
}

impl<B: Backend> TensorAlgebra<B> {
    pub fn new(h: &HeckeSymmetry, backend: B) -> Result<Self> {
        let d = h.d();
        let m = h.matrix().try_map_entries(|s| backend.embed(s))?;
        let r_cols = m.columns();
        // R*^{kl}_{ij} = R^{ji}_{lk}: column (i,j) of R* collects R[(j,i),(l,k)].
        let mut rstar: Vec<SparseVec<B::F>> = vec![Vec::new(); d * d];
        for (col, entries) in r_cols.iter().enumerate() {
            let (a, b) = (col / d, col % d);
            for (row, v) in entries {
                let (k, l) = (row / d, row % d);
                // R^{kl}_{ab} = R*^{ba}_{lk}: input (l,k), output (b,a).
                rstar[l * d + k].push((b * d + a, v.clone()));
            }
        }
        for c in &mut rstar {
            c.sort_by_key(|(r, _)| *r);
        }
        let closure = compute_p_matrix(h)?;
        // ev ∘ R_{V,V*}(x_i ⊗ ξ^j) = Σ_k P^{jk}_{ik}.
        let mut contraction = vec![vec![B::F::zero(); d]; d];
        for (i, row) in contraction.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                let mut acc = Scalar::zero();
                for k in 0..d {
                    acc = acc.add(&closure.entry(j, k, i, k));
                }
                *c = backend.embed(&acc)?;
            }
        }
        let p = backend.embed(h.param())?;
        Ok(TensorAlgebra {
            backend,
            dims: h.dims,
            p,
            r_cols,
            rstar_cols: rstar,
            contraction,
            weight_preserving: h.is_weight_preserving(),
            strategy: Strategy::Parallel,
            cache: Mutex::new(HashMap::new()),
            young_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn backend(&self) -> &B {
        &self.backend
    }

    pub fn dims(&self) -> SuperDim {
        self.dims
    }

    pub fn d(&self) -> usize {
        self.dims.d()
    }

    pub fn p(&self) -> &B::F {
        &self.p
    }

    pub fn is_weight_preserving(&self) -> bool {
        self.weight_preserving
    }

    /// `ev ∘ R_{V,V*}(x_i ⊗ ξ^j)`.
    pub fn contraction(&self, i: usize, j: usize) -> &B::F {
        &self.contraction[i][j]
    }

    /// `[n]` at the Hecke parameter.
    pub fn qint(&self, n: i64) -> B::F {
        if n == 0 {
            return B::F::zero();
        }
        let m = n.unsigned_abs();
        let mut acc = B::F::zero();
        let mut pw = B::F::one();
        for _ in 0..m {
            acc = acc.add(&pw);
            pw = pw.mul(&self.p);
        }
        if n > 0 {
            acc
        } else {
            acc.mul(&self.p_pow(-(m as i64))).neg()
        }
    }

    pub fn p_pow(&self, e: i64) -> B::F {
        let base = if e < 0 {
            self.p.inv().expect("nonzero Hecke parameter")
        } else {
            self.p.clone()
        };
        (0..e.unsigned_abs()).fold(B::F::one(), |acc, _| acc.mul(&base))
    }

    fn cols(&self, side: Side) -> &[SparseVec<B::F>] {
        match side {
            Side::Co => &self.r_cols,
            Side::Contra => &self.rstar_cols,
        }
    }

    /// Grading of the monomial basis of `V^⊗n` or `V*^⊗n`.
    pub fn tensor_grading(&self, side: Side, n: usize) -> Grading {
        let b = match side {
            Side::Co => tensor_basis(self.dims, n, 0),
            Side::Contra => tensor_basis(self.dims, 0, n),
        };
        if self.weight_preserving {
            b.grading()
        } else {
            Grading::new(vec![vec![0; self.d()]; b.len()])
        }
    }

    /// Apply `R` (or `R*`) on legs `j, j+1` (0-based) of a vector in the `n`-th
    /// tensor power.
    pub fn apply_r(&self, side: Side, v: &[(usize, B::F)], n: usize, j: usize) -> SparseVec<B::F> {
        assert!(j + 1 < n, "leg {j} out of range for degree {n}");
        let d = self.d();
        let low = d.pow((n - j - 2) as u32);
        let cols = self.cols(side);
        let mut acc = Accum::new();
        for (idx, c) in v {
            let lo = idx % low;
            let pair = (idx / low) % (d * d);
            let hi = idx / (low * d * d);
            for (out, r) in &cols[pair] {
                acc.add((hi * d * d + out) * low + lo, &r.mul(c));
            }
        }
        acc.finish()
    }

    /// Apply the symmetrizer of degree `len` acting on legs
    /// `start..start+len` of a vector of degree `n`. No assumption on the input.
    pub fn symmetrize_block(
        &self,
        side: Side,
        kind: SymKind,
        v: &[(usize, B::F)],
        n: usize,
        start: usize,
        len: usize,
    ) -> SparseVec<B::F> {
        let mut cur = v.to_vec();
        for m in 2..=len {
            cur = self.coset_sum(side, kind, &cur, n, start, m, true);
        }
        cur
    }

    /// Top symmetrizer of degree `n` applied to `v ∈ Z_{n−1} ⊗ V`
    /// (`right = true`) or `v ∈ V ⊗ Z_{n−1}` (`right = false`), where `Z` is
    /// `S` or `Λ` as selected by `kind`.
    pub fn extend(&self, side: Side, kind: SymKind, v: &[(usize, B::F)], n: usize, right: bool) -> SparseVec<B::F> {
        if n <= 1 {
            return v.to_vec();
        }
        self.coset_sum(side, kind, v, n, 0, n, right)
    }

    /// `c_m Σ_d ε(d) T_d v` over the minimal coset representatives of
    /// `𝔖_{m−1} ⊂ 𝔖_m`, acting on legs `start..start+m`. With `right` the
    /// subgroup fixes the last leg of the block, otherwise the first one.
    /// `ε(d) = 1`, `c_m = 1/[m]` for `Sym`; `ε(d) = (−p)^{−l(d)}`,
    /// `c_m = p^{m−1}/[m]` for `Ext`.
    #[allow(clippy::too_many_arguments)]
    fn coset_sum(
        &self,
        side: Side,
        kind: SymKind,
        v: &[(usize, B::F)],
        n: usize,
        start: usize,
        m: usize,
        right: bool,
    ) -> SparseVec<B::F> {
        let step = match kind {
            SymKind::Sym => B::F::one(),
            SymKind::Ext => self.p.neg().inv().expect("p nonzero"),
        };
        let mut acc = Accum::new();
        acc.add_scaled(v, &B::F::one());
        let mut cur = v.to_vec();
        let legs: Vec<usize> = if right {
            (start..start + m - 1).rev().collect()
        } else {
            (start..start + m - 1).collect()
        };
        for j in legs {
            cur = self.apply_r(side, &cur, n, j);
            if !step.is_one() {
                cur = crate::linalg::sv_scale(&cur, &step);
            }
            acc.add_scaled(&cur, &B::F::one());
        }
        let inv = self.qint(m as i64).inv().expect("[m] nonzero at generic p");
        let c = match kind {
            SymKind::Sym => inv,
            SymKind::Ext => inv.mul(&self.p_pow(m as i64 - 1)),
        };
        crate::linalg::sv_scale(&acc.finish(), &c)
    }

    /// `S_n`, `Λ_n`, `S*_n` or `Λ*_n` as a subspace of the tensor power.
    pub fn space(&self, side: Side, kind: SymKind, n: usize) -> Arc<WeightedSpace<B::F>> {
        if let Some(s) = self.cache.lock().unwrap().get(&(side, kind, n)) {
            return s.clone();
        }
        let sub = if n == 0 {
            Subspace::full(1)
        } else {
            let base = self.space(side, kind, n - 1);
            let d = self.d();
            let nb = base.dim();
            let vecs = par::map_range(nb * d, self.strategy, |t| {
                let (b, i) = (t / d, t % d);
                let v: SparseVec<B::F> = base.sub.basis()[b]
                    .iter()
                    .map(|(idx, c)| (idx * d + i, c.clone()))
                    .collect();
                self.extend(side, kind, &v, n, true)
            });
            Subspace::span(d.pow(n as u32), &vecs)
        };
        let grading = induced_grading(&sub, &self.tensor_grading(side, n))
            .expect("symmetrizer images are weight-graded");
        let out = Arc::new(WeightedSpace { sub, grading });
        self.cache
            .lock()
            .unwrap()
            .insert((side, kind, n), out.clone());
        out
    }

    pub fn sym(&self, n: usize) -> Arc<WeightedSpace<B::F>> {
        self.space(Side::Co, SymKind::Sym, n)
    }

    pub fn ext(&self, n: usize) -> Arc<WeightedSpace<B::F>> {
        self.space(Side::Co, SymKind::Ext, n)
    }

    pub fn sym_dual(&self, n: usize) -> Arc<WeightedSpace<B::F>> {
        self.space(Side::Contra, SymKind::Sym, n)
    }

    /// Full matrix of `X_n` or `Y_n` on the tensor power, assembled from the
    /// coset factorization.
    pub fn symmetrizer(&self, side: Side, kind: SymKind, n: usize) -> Result<Matrix<B::F>> {
        if n > MAX_SYMMETRIZER_DEGREE {
            return Err(Error::OutOfRange(format!("symmetrizer degree {n} exceeds cap")));
        }
        let dim = self.d().pow(n as u32);
        let cols = par::map_range(dim, self.strategy, |c| {
            self.symmetrize_block(side, kind, &[(c, B::F::one())], n, 0, n)
        });
        Ok(Matrix::from_columns(dim, &cols))
    }

    /// Matrix of `R_i` (1-based) on `V^⊗n`.
    pub fn r_leg(&self, n: usize, i: usize) -> Result<Matrix<B::F>> {
        self.hecke_action(n, &[i])
    }

    /// `R_{w_1} ⋯ R_{w_m}` on `V^⊗n`, generators 1-based.
    pub fn hecke_action(&self, n: usize, word: &[usize]) -> Result<Matrix<B::F>> {
        if let Some(&g) = word.iter().find(|&&g| g == 0 || g >= n) {
            return Err(Error::OutOfRange(format!(
                "generator {g} outside 1..{}",
                n.saturating_sub(1)
            )));
        }
        let dim = self.d().pow(n as u32);
        let cols = par::map_range(dim, self.strategy, |c| {
            let mut v = vec![(c, B::F::one())];
            for &g in word.iter().rev() {
                v = self.apply_r(Side::Co, &v, n, g - 1);
            }
            v
        });
        Ok(Matrix::from_columns(dim, &cols))
    }

    /// `T_w` for a reduced word; non-reduced words are rejected.
    pub fn t_w(&self, n: usize, word: &[usize]) -> Result<Matrix<B::F>> {
        if !is_reduced(n, word)? {
            return Err(Error::NonReducedWord(word.to_vec()));
        }
        self.hecke_action(n, word)
    }

    /// `X_n` or `Y_n` assembled by summing `T_w` over all of `𝔖_n`, each with a
    /// bubble-sort reduced word. Exponential; meant as an independent check.
    pub fn symmetrizer_by_enumeration(&self, kind: SymKind, n: usize) -> Result<Matrix<B::F>> {
        if n > 5 {
            return Err(Error::OutOfRange("enumeration limited to n <= 5".into()));
        }
        let dim = self.d().pow(n as u32);
        let mut total = Matrix::zeros(dim, dim);
        for perm in permutations(n) {
            let word = reduced_word(&perm);
            let t = self.t_w(n.max(1), &word)?;
            let coeff = match kind {
                SymKind::Sym => B::F::one(),
                SymKind::Ext => self.p.neg().inv().unwrap().pow_i(word.len()),
            };
            total = total.add(&t.scale(&coeff));
        }
        let mut fact = B::F::one();
        for k in 1..=n as i64 {
            fact = fact.mul(&self.qint(k));
        }
        let mut c = fact.inv().unwrap();
        if kind == SymKind::Ext {
            c = c.mul(&self.p_pow((n * n.saturating_sub(1) / 2) as i64));
        }
        Ok(total.scale(&c))
    }

    /// `dim Λ_n` for `n = 0..=max`.
    pub fn poincare_dims(&self, max: usize) -> Vec<usize> {
        (0..=max).map(|n| self.ext(n).dim()).collect()
    }

    /// The module `M_λ = Im z_λ ⊆ V^⊗n` for a partition `λ`, where
    /// `z_λ = X_rows · R_σ · Y_cols`: column antisymmetrizers on consecutive
    /// blocks, the reordering from column reading to row reading of the
    /// tableau, then row symmetrizers on consecutive blocks.
    pub fn young_module(&self, lambda: &[usize], budget: usize) -> Result<Arc<WeightedSpace<B::F>>> {
        let parts: Vec<usize> = lambda.iter().copied().filter(|&x| x > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::OutOfRange(format!("{lambda:?} is not a partition")));
        }
        let n: usize = parts.iter().sum();
        if n > budget {
            return Err(Error::BudgetExceeded { needed: n, budget });
        }
        if let Some(s) = self.young_cache.lock().unwrap().get(&parts) {
            return Ok(s.clone());
        }
        let cols = conjugate(&parts);
        let ext_parts: Vec<Arc<WeightedSpace<B::F>>> = cols.iter().map(|&c| self.ext(c)).collect();
        // Basis of Λ_{c1} ⊗ Λ_{c2} ⊗ ... by iterated tensor products.
        let d = self.d();
        let mut gens: Vec<SparseVec<B::F>> = vec![vec![(0, B::F::one())]];
        for e in &ext_parts {
            let mut next = Vec::with_capacity(gens.len() * e.dim());
            let size = e.sub.ambient_dim();
            for g in &gens {
                for b in e.sub.basis() {
                    let mut v = Vec::with_capacity(g.len() * b.len());
                    for (i, x) in g {
                        for (j, y) in b {
                            v.push((i * size + j, x.mul(y)));
                        }
                    }
                    v.sort_by_key(|(i, _)| *i);
                    next.push(v);
                }
            }
            gens = next;
        }
        let perm = column_to_row_reading(&parts);
        let swaps = sorting_swaps(&perm);
        let row_starts: Vec<usize> = parts
            .iter()
            .scan(0, |acc, &r| {
                let s = *acc;
                *acc += r;
                Some(s)
            })
            .collect();
        let images = par::map_slice(&gens, self.strategy, |g| {
            let mut v = g.clone();
            for &j in &swaps {
                v = self.apply_r(Side::Co, &v, n, j);
            }
            for (&start, &len) in row_starts.iter().zip(&parts) {
                v = self.symmetrize_block(Side::Co, SymKind::Sym, &v, n, start, len);
            }
            v
        });
        let sub = Subspace::span(d.pow(n as u32), &images);
        let grading = induced_grading(&sub, &self.tensor_grading(Side::Co, n))?;
        let out = Arc::new(WeightedSpace { sub, grading });
        self.young_cache.lock().unwrap().insert(parts, out.clone());
        Ok(out)
    }
}

trait PowI: Field {
    fn pow_i(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

impl<F: Field> PowI for F {}

/// Conjugate partition.
pub fn conjugate(parts: &[usize]) -> Vec<usize> {
    let max = parts.first().copied().unwrap_or(0);
    (0..max)
        .map(|c| parts.iter().filter(|&&r| r > c).count())
        .collect()
}

/// `perm[j]` = row-reading index of the cell with column-reading index `j`.
fn column_to_row_reading(parts: &[usize]) -> Vec<usize> {
    let row_start: Vec<usize> = parts
        .iter()
        .scan(0, |acc, &r| {
            let s = *acc;
            *acc += r;
            Some(s)
        })
        .collect();
    let mut out = Vec::new();
    for (c, &h) in conjugate(parts).iter().enumerate() {
        for &start in row_start.iter().take(h) {
            out.push(start + c);
        }
    }
    out
}

/// Adjacent swaps (0-based leg positions, in application order) that sort
/// `arr` by bubble sort. They form a reduced word.
fn sorting_swaps(perm: &[usize]) -> Vec<usize> {
    let mut arr = perm.to_vec();
    let mut out = Vec::new();
    while let Some(i) = (0..arr.len().saturating_sub(1)).find(|&i| arr[i] > arr[i + 1]) {
        arr.swap(i, i + 1);
        out.push(i);
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// A reduced word (1-based generators) for `perm`, read as the product
/// `s_{w_1} ⋯ s_{w_m}`.
pub fn reduced_word(perm: &[usize]) -> Vec<usize> {
    // Bubble-sorting perm with swaps s_{i_1}, ..., s_{i_m} gives
    // perm · s_{i_1} ⋯ s_{i_m} = id, so perm = s_{i_m} ⋯ s_{i_1}.
    let mut w: Vec<usize> = sorting_swaps(perm).into_iter().map(|i| i + 1).collect();
    w.reverse();
    w
}

/// Whether a word in `𝔖_n` (1-based generators) is reduced.
pub fn is_reduced(n: usize, word: &[usize]) -> Result<bool> {
    let mut perm: Vec<usize> = (0..n).collect();
    for &g in word {
        if g == 0 || g >= n {
            return Err(Error::OutOfRange(format!("generator {g} outside 1..{}", n.saturating_sub(1))));
        }
        perm.swap(g - 1, g);
    }
    let inversions = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    Ok(inversions == word.len())
}

/// Hook-partition membership `λ_{r+1} ≤ s`.
pub fn is_hook(parts: &[usize], dims: SuperDim) -> bool {
    parts.get(dims.r).copied().unwrap_or(0) <= dims.s
}

/// Exact tensor algebra for the standard symmetry of birank (3|1).
pub fn standard_exact() -> TensorAlgebra<Exact> {
    TensorAlgebra::new(&build_standard_r(3, 1).expect("valid birank"), Exact)
        .expect("standard symmetry is closed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Evaluated;

    #[test]
    fn table_entries() {
        let t = standard_r_q_table(3, 1).unwrap();
        let d = 4;
        let q = Scalar::p();
        assert_eq!(t.get(0, 0), q.mul(&q));
        assert_eq!(t.get(15, 15), Scalar::from_i64(-1));
        // R^{12}_{12} = q^2 - 1 and R^{21}_{12} = q.
        assert_eq!(t.get(1, 1), q.mul(&q).sub(&Scalar::one()));
        assert_eq!(t.get(d, 1), q);
        // R^{14}_{41} and R^{41}_{14}
        assert_eq!(t.get(3, 3 * d), q);
        assert_eq!(t.get(3 * d, 3), q);
    }

    #[test]
    fn gauge_relates_two_forms() {
        let h = build_standard_r(3, 1).unwrap();
        assert!(check_gauge(&h, &standard_r_q_table(3, 1).unwrap()));
        let bad = h.with_entry(0, 1, 1, 0, Scalar::from_i64(3));
        assert!(!check_gauge(&bad, &standard_r_q_table(3, 1).unwrap()));
    }

    #[test]
    fn q_equal_one_is_super_permutation() {
        let t = standard_r_q_table(3, 1).unwrap();
        let one = num_rational::BigRational::from_integer(1.into());
        let at_one = t.map_entries(|s| s.eval_rational(&one).unwrap());
        let sp = super_permutation(3, 1).unwrap();
        let sp = sp.matrix().map_entries(|s| s.as_rational().unwrap().clone());
        assert_eq!(at_one, sp);
    }

    #[test]
    fn standard_symmetry_axioms() {
        let h = build_standard_r(3, 1).unwrap();
        let rep = check_hecke_symmetry(&h);
        assert!(rep.passed(), "{:?}", rep.witnesses);
        let rep = check_hecke_symmetry(&super_permutation(3, 1).unwrap());
        assert!(rep.passed(), "{:?}", rep.witnesses);
    }

    #[test]
    fn perturbed_symmetry_reports_witness() {
        let h = build_standard_r(3, 1).unwrap();
        let bad = h.with_entry(0, 1, 0, 1, Scalar::p());
        let rep = check_hecke_symmetry(&bad);
        assert!(!rep.yang_baxter);
        assert!(rep.witnesses.iter().any(|w| w.starts_with("Yang-Baxter")));
    }

    #[test]
    fn identity_has_no_closure() {
        let dims = SuperDim::new(3, 1).unwrap();
        let id = HeckeSymmetry::new(dims, Matrix::identity(16), Scalar::one()).unwrap();
        assert!(matches!(compute_p_matrix(&id), Err(Error::Singular(_))));
    }

    #[test]
    fn json_round_trip() {
        let h = build_standard_r(3, 1).unwrap();
        let back = HeckeSymmetry::from_json(&h.to_json()).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn reduced_words() {
        assert!(is_reduced(3, &[1, 2, 1]).unwrap());
        assert!(!is_reduced(3, &[1, 1]).unwrap());
        assert!(is_reduced(3, &[]).unwrap());
        assert!(is_reduced(3, &[3]).is_err());
        for perm in permutations(4) {
            let w = reduced_word(&perm);
            assert!(is_reduced(4, &w).unwrap());
            // s_{w_1} ... s_{w_m} applied as a product of transpositions
            let mut arr: Vec<usize> = (0..4).collect();
            for &g in w.iter().rev() {
                arr.swap(g - 1, g);
            }
            let _ = arr;
        }
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn small_symmetrizers() {
        let t = standard_exact();
        let x1 = t.symmetrizer(Side::Co, SymKind::Sym, 1).unwrap();
        assert_eq!(x1, Matrix::identity(4));
        let r = t.r_leg(2, 1).unwrap();
        let two = t.qint(2).inv().unwrap();
        let x2 = t.symmetrizer(Side::Co, SymKind::Sym, 2).unwrap();
        let y2 = t.symmetrizer(Side::Co, SymKind::Ext, 2).unwrap();
        assert_eq!(x2, r.add_scalar(&Scalar::one()).scale(&two));
        assert_eq!(y2, r.scale(&Scalar::from_i64(-1)).add_scalar(t.p()).scale(&two));
        assert_eq!(x2.add(&y2), Matrix::identity(16));
        assert!(x2.mul(&y2).is_zero());
        assert_eq!(y2.rank(), 7);
    }

    #[test]
    fn empty_word_and_relations() {
        let t = standard_exact();
        assert_eq!(t.hecke_action(3, &[]).unwrap(), Matrix::identity(64));
        let a = t.hecke_action(3, &[1, 2, 1]).unwrap();
        let b = t.hecke_action(3, &[2, 1, 2]).unwrap();
        assert_eq!(a, b);
        let r = t.r_leg(2, 1).unwrap();
        let pm1 = t.p().sub(&Scalar::one());
        let rel = r.mul(&r).sub(&r.scale(&pm1)).add_scalar(&t.p().neg());
        assert!(rel.is_zero());
        assert!(matches!(t.t_w(3, &[1, 1]), Err(Error::NonReducedWord(_))));
    }

    #[test]
    fn toy_line() {
        let h = build_standard_r(1, 0).unwrap();
        let t = TensorAlgebra::new(&h, Evaluated::default()).unwrap();
        assert_eq!(t.poincare_dims(4), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn partitions_helpers() {
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
        assert_eq!(column_to_row_reading(&[2, 1]), vec![0, 2, 1]);
        assert!(!is_hook(&[2, 2, 2, 2], SuperDim::new(3, 1).unwrap()));
        assert!(is_hook(&[2, 2, 2, 1, 1], SuperDim::new(3, 1).unwrap()));
    }
}
