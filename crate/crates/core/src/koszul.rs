//! The Koszul complexes `K` (terms `Λ_k ⊗ S*_l`, differentials `d`, `∂`) and
//! `L` (terms `S_p ⊗ Λ_r`, differentials `P`, `Q`) as explicit matrices in
//! the bases of the symmetrizer images, together with identity, bicomplex
//! and homology checks.
//!
//! Index conventions: `d_{k,l}: K_{k,l} → K_{k+1,l+1}` and
//! `P_{p,r}: L_{p,r} → L_{p−1,r+1}` are labeled by their source, while
//! `∂_{k,l}: K_{k+1,l+1} → K_{k,l}` and `Q_{p,r}: L_{p−1,r+1} → L_{p,r}` are
//! labeled by their target.
//!
//! Every map is a sum of Kronecker products of small "piece" maps between
//! consecutive symmetrizer images (append a leg and symmetrize, or read off a
//! leg), so no matrix on the full tensor power is ever formed.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::charformula::LaurentChar;
use crate::error::{Error, Result};
use crate::field::{Backend, Field};
use crate::hecke::{Side, SymKind, TensorAlgebra, WeightedSpace};
use crate::linalg::{Matrix, SparseVec, Subspace};
use crate::par;
use crate::tensorspace::{basis_weights, weight_violation, Grading};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Piece {
    AppendRight,
    AppendLeft,
    SliceLast,
    SliceFirst,
}

/// Which bracket appears on the right side of the `d∂ + ∂d` identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BirankSign {
    /// `[r − s]`
    RMinusS,
    /// `[s − r]`
    SMinusR,
}

/// Outcome of one operator identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityRecord {
    pub identity: String,
    pub indices: Vec<i64>,
    pub dim: usize,
    pub residual_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub backend: String,
}

/// Homology of `K_a` at one term.
#[derive(Clone, Debug, Serialize)]
pub struct HomologySlot {
    pub k: usize,
    pub l: usize,
    pub dim: usize,
    pub character: String,
}

/// Structure maps `db`, `ev` and `R_{V,V*}` as matrices in monomial bases.
#[derive(Clone, Debug)]
pub struct StructureMaps<F: Field> {
    /// `𝕜 → V ⊗ V*`, a single column.
    pub db: Matrix<F>,
    /// `V* ⊗ V → 𝕜`, a single row.
    pub ev: Matrix<F>,
    /// `V ⊗ V* → V* ⊗ V`, `x_i ⊗ ξ^j ↦ Σ ξ^k ⊗ x_l P^{jl}_{ik}`.
    pub rvv: Matrix<F>,
}

type MatrixCache<K, F> = Mutex<HashMap<K, Arc<Matrix<F>>>>;
/// `c · (A ⊗ B)`.
type KronTerm<F> = (F, Arc<Matrix<F>>, Arc<Matrix<F>>);
/// A direct-sum decomposition `(first, second)`.
pub type Split<F> = (Subspace<F>, Subspace<F>);

/// Matrices of the Koszul differentials over one backend, with caching.
pub struct Koszul<B: Backend> {
    t: TensorAlgebra<B>,
    pieces: MatrixCache<(Piece, Side, SymKind, usize, usize), B::F>,
    maps: MatrixCache<(char, i64, i64), B::F>,
}

fn zero_dim<B: Backend>(t: &TensorAlgebra<B>, side: Side, kind: SymKind, n: i64) -> usize {
    if n < 0 {
        0
    } else {
        t.space(side, kind, n as usize).dim()
    }
}

impl<B: Backend> Koszul<B> {
    pub fn new(t: TensorAlgebra<B>) -> Self {
        Koszul {
            t,
            pieces: Mutex::new(HashMap::new()),
            maps: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &TensorAlgebra<B> {
        &self.t
    }

    pub fn label(&self) -> String {
        self.t.backend().label()
    }

    fn space_opt(&self, side: Side, kind: SymKind, n: i64) -> Option<Arc<WeightedSpace<B::F>>> {
        (n >= 0).then(|| self.t.space(side, kind, n as usize))
    }

    fn sdim(&self, side: Side, kind: SymKind, n: i64) -> usize {
        zero_dim(&self.t, side, kind, n)
    }

    fn grading(&self, side: Side, kind: SymKind, n: i64) -> Grading {
        match self.space_opt(side, kind, n) {
            Some(s) => s.grading.clone(),
            None => Grading::new(Vec::new()),
        }
    }

    /// Grading of the coordinates of `Λ_k ⊗ S*_l`.
    pub fn k_grading(&self, k: i64, l: i64) -> Grading {
        self.grading(Side::Co, SymKind::Ext, k)
            .tensor(&self.grading(Side::Contra, SymKind::Sym, l))
    }

    /// Grading of the coordinates of `S_p ⊗ Λ_r`.
    pub fn l_grading(&self, p: i64, r: i64) -> Grading {
        self.grading(Side::Co, SymKind::Sym, p)
            .tensor(&self.grading(Side::Co, SymKind::Ext, r))
    }

    pub fn k_dim(&self, k: i64, l: i64) -> usize {
        self.sdim(Side::Co, SymKind::Ext, k) * self.sdim(Side::Contra, SymKind::Sym, l)
    }

    pub fn l_dim(&self, p: i64, r: i64) -> usize {
        self.sdim(Side::Co, SymKind::Sym, p) * self.sdim(Side::Co, SymKind::Ext, r)
    }

    /// Piece maps between `Z_n` and `Z_{n±1}` in subspace coordinates.
    ///
    /// * `AppendRight`: `z ↦ Z_{n+1}(z ⊗ e_i)`
    /// * `AppendLeft`: `z ↦ Z_{n+1}(e_i ⊗ z)`
    /// * `SliceLast`: `z = Σ_i z_i ⊗ e_i ↦ z_i ∈ Z_{n−1}`
    /// * `SliceFirst`: `z = Σ_i e_i ⊗ z_i ↦ z_i ∈ Z_{n−1}`
    fn piece(&self, piece: Piece, side: Side, kind: SymKind, n: i64, i: usize) -> Result<Arc<Matrix<B::F>>> {
        let target = match piece {
            Piece::AppendRight | Piece::AppendLeft => n + 1,
            Piece::SliceLast | Piece::SliceFirst => n - 1,
        };
        if n < 0 || target < 0 {
            return Ok(Arc::new(Matrix::zeros(
                self.sdim(side, kind, target),
                self.sdim(side, kind, n),
            )));
        }
        let key = (piece, side, kind, n as usize, i);
        if let Some(m) = self.pieces.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let n = n as usize;
        let target = target as usize;
        let src = self.t.space(side, kind, n);
        let dst = self.t.space(side, kind, target);
        let d = self.t.d();
        let low = d.pow(n.saturating_sub(1) as u32);
        let cols = par::map_range(src.dim(), self.t.strategy(), |j| -> Result<SparseVec<B::F>> {
            let b = &src.sub.basis()[j];
            let v: SparseVec<B::F> = match piece {
                Piece::AppendRight => {
                    let raw: SparseVec<B::F> =
                        b.iter().map(|(idx, c)| (idx * d + i, c.clone())).collect();
                    self.t.extend(side, kind, &raw, target, true)
                }
                Piece::AppendLeft => {
                    let shift = i * d.pow(n as u32);
                    let raw: SparseVec<B::F> =
                        b.iter().map(|(idx, c)| (shift + idx, c.clone())).collect();
                    self.t.extend(side, kind, &raw, target, false)
                }
                Piece::SliceLast => b
                    .iter()
                    .filter(|(idx, _)| idx % d == i)
                    .map(|(idx, c)| (idx / d, c.clone()))
                    .collect(),
                Piece::SliceFirst => b
                    .iter()
                    .filter(|(idx, _)| idx / low == i)
                    .map(|(idx, c)| (idx % low, c.clone()))
                    .collect(),
            };
            let mut v = v;
            v.sort_by_key(|(idx, _)| *idx);
            dst.sub
                .coords_sparse(&v)
                .ok_or(Error::Containment { column: j })
        });
        let cols: Vec<SparseVec<B::F>> = cols.into_iter().collect::<Result<_>>()?;
        let m = Arc::new(Matrix::from_columns(dst.dim(), &cols));
        self.pieces.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    fn cached(&self, key: (char, i64, i64), build: impl FnOnce() -> Result<Matrix<B::F>>) -> Result<Arc<Matrix<B::F>>> {
        if let Some(m) = self.maps.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(build()?);
        self.maps.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    fn sum_kron(&self, terms: Vec<KronTerm<B::F>>, rows: usize, cols: usize) -> Matrix<B::F> {
        let parts = par::map_slice(&terms, self.t.strategy(), |(c, a, b)| a.kron(b).scale(c));
        parts
            .into_iter()
            .fold(Matrix::zeros(rows, cols), |acc, m| acc.add(&m))
    }

    /// `d_{k,l}: Λ_k ⊗ S*_l → Λ_{k+1} ⊗ S*_{l+1}`.
    pub fn d(&self, k: i64, l: i64) -> Result<Arc<Matrix<B::F>>> {
        self.cached(('d', k, l), || {
            let terms = (0..self.t.d())
                .map(|i| {
                    Ok((
                        B::F::one(),
                        self.piece(Piece::AppendRight, Side::Co, SymKind::Ext, k, i)?,
                        self.piece(Piece::AppendLeft, Side::Contra, SymKind::Sym, l, i)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(self.sum_kron(terms, self.k_dim(k + 1, l + 1), self.k_dim(k, l)))
        })
    }

    /// `∂_{k,l}: Λ_{k+1} ⊗ S*_{l+1} → Λ_k ⊗ S*_l`.
    pub fn partial(&self, k: i64, l: i64) -> Result<Arc<Matrix<B::F>>> {
        self.cached(('e', k, l), || {
            let d = self.t.d();
            let mut terms = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    let c = self.t.contraction(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    terms.push((
                        c.clone(),
                        self.piece(Piece::SliceLast, Side::Co, SymKind::Ext, k + 1, i)?,
                        self.piece(Piece::SliceFirst, Side::Contra, SymKind::Sym, l + 1, j)?,
                    ));
                }
            }
            Ok(self.sum_kron(terms, self.k_dim(k, l), self.k_dim(k + 1, l + 1)))
        })
    }

    /// `P_{p,r}: S_p ⊗ Λ_r → S_{p−1} ⊗ Λ_{r+1}`.
    pub fn p_map(&self, p: i64, r: i64) -> Result<Arc<Matrix<B::F>>> {
        self.cached(('P', p, r), || {
            let terms = (0..self.t.d())
                .map(|i| {
                    Ok((
                        B::F::one(),
                        self.piece(Piece::SliceLast, Side::Co, SymKind::Sym, p, i)?,
                        self.piece(Piece::AppendLeft, Side::Co, SymKind::Ext, r, i)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(self.sum_kron(terms, self.l_dim(p - 1, r + 1), self.l_dim(p, r)))
        })
    }

    /// `Q_{p,r}: S_{p−1} ⊗ Λ_{r+1} → S_p ⊗ Λ_r`.
    pub fn q_map(&self, p: i64, r: i64) -> Result<Arc<Matrix<B::F>>> {
        self.cached(('Q', p, r), || {
            let terms = (0..self.t.d())
                .map(|i| {
                    Ok((
                        B::F::one(),
                        self.piece(Piece::AppendRight, Side::Co, SymKind::Sym, p - 1, i)?,
                        self.piece(Piece::SliceFirst, Side::Co, SymKind::Ext, r + 1, i)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(self.sum_kron(terms, self.l_dim(p, r), self.l_dim(p - 1, r + 1)))
        })
    }

    pub fn identity_record(&self, name: &str, indices: Vec<i64>, residual: &Matrix<B::F>) -> IdentityRecord {
        let witness = residual
            .first_nonzero()
            .map(|(i, j, v)| format!("row {i}, column {j}: {v}"));
        IdentityRecord {
            identity: name.to_string(),
            indices,
            dim: residual.cols(),
            residual_zero: witness.is_none(),
            witness,
            backend: self.label(),
        }
    }

    /// Residual of `p[l][k] d∂ + [l+1][k+1] ∂d − p^k([l−k] − [c]) id` on
    /// `K_{k,l}`, where `c = r − s` or `s − r`.
    pub fn ct3_residual(&self, k: i64, l: i64, sign: BirankSign) -> Result<Matrix<B::F>> {
        if k < 0 || l < 0 {
            return Err(Error::OutOfRange(format!("K_{{{k},{l}}}")));
        }
        let t = &self.t;
        let dims = t.dims();
        let c = match sign {
            BirankSign::RMinusS => dims.r as i64 - dims.s as i64,
            BirankSign::SMinusR => dims.s as i64 - dims.r as i64,
        };
        let n = self.k_dim(k, l);
        let strategy = t.strategy();
        let mut total = self
            .partial(k, l)?
            .mul_with(&*self.d(k, l)?, strategy)
            .scale(&t.qint(l + 1).mul(&t.qint(k + 1)));
        if k > 0 && l > 0 {
            let dd = self
                .d(k - 1, l - 1)?
                .mul_with(&*self.partial(k - 1, l - 1)?, strategy)
                .scale(&t.p().mul(&t.qint(l)).mul(&t.qint(k)));
            total = total.add(&dd);
        }
        let rhs = t.p_pow(k).mul(&t.qint(l - k).sub(&t.qint(c)));
        Ok(total.sub(&Matrix::scalar(n, &rhs)))
    }

    pub fn verify_ct3(&self, k: i64, l: i64, sign: BirankSign) -> Result<IdentityRecord> {
        let res = self.ct3_residual(k, l, sign)?;
        let name = match sign {
            BirankSign::RMinusS => "ct3[r-s]",
            BirankSign::SMinusR => "ct3[s-r]",
        };
        Ok(self.identity_record(name, vec![k, l], &res))
    }

    /// Find which bracket makes the identity hold at `K_{0,0}`.
    pub fn resolve_ct3_sign(&self) -> Result<Option<BirankSign>> {
        let a = self.ct3_residual(0, 0, BirankSign::RMinusS)?.is_zero();
        let b = self.ct3_residual(0, 0, BirankSign::SMinusR)?.is_zero();
        Ok(match (a, b) {
            (true, false) => Some(BirankSign::RMinusS),
            (false, true) => Some(BirankSign::SMinusR),
            _ => None,
        })
    }

    /// Residual of `[r][p+1] PQ + [p][r+1] QP − [p+r] id` on `L_{p,r}`.
    pub fn ct60_residual(&self, p: i64, r: i64) -> Result<Matrix<B::F>> {
        if p < 0 || r < 0 {
            return Err(Error::OutOfRange(format!("L_{{{p},{r}}}")));
        }
        let t = &self.t;
        let n = self.l_dim(p, r);
        let strategy = t.strategy();
        let mut total = Matrix::scalar(n, &t.qint(p + r).neg());
        if r > 0 {
            let pq = self
                .p_map(p + 1, r - 1)?
                .mul_with(&*self.q_map(p + 1, r - 1)?, strategy)
                .scale(&t.qint(r).mul(&t.qint(p + 1)));
            total = total.add(&pq);
        }
        if p > 0 {
            let qp = self
                .q_map(p, r)?
                .mul_with(&*self.p_map(p, r)?, strategy)
                .scale(&t.qint(p).mul(&t.qint(r + 1)));
            total = total.add(&qp);
        }
        Ok(total)
    }

    pub fn verify_ct60(&self, p: i64, r: i64) -> Result<IdentityRecord> {
        let res = self.ct60_residual(p, r)?;
        Ok(self.identity_record("ct60", vec![p, r], &res))
    }

    /// `d_{k+1,l+1} d_{k,l}` and `∂_{k,l} ∂_{k+1,l+1}` on `K_{k,l}` and
    /// `K_{k+2,l+2}`.
    pub fn verify_squares_zero(&self, k: i64, l: i64) -> Result<Vec<IdentityRecord>> {
        let s = self.t.strategy();
        let dd = self.d(k + 1, l + 1)?.mul_with(&*self.d(k, l)?, s);
        let pp = self.partial(k, l)?.mul_with(&*self.partial(k + 1, l + 1)?, s);
        Ok(vec![
            self.identity_record("d∘d", vec![k, l], &dd),
            self.identity_record("∂∘∂", vec![k + 2, l + 2], &pp),
        ])
    }

    /// `id_{S_i} ⊗ d_{k,l}` on `S_i ⊗ Λ_k ⊗ S*_l`.
    pub fn id_d(&self, i: i64, k: i64, l: i64) -> Result<Matrix<B::F>> {
        let n = self.sdim(Side::Co, SymKind::Sym, i);
        Ok(Matrix::identity(n).kron(&*self.d(k, l)?))
    }

    /// `id_{S_i} ⊗ ∂_{k,l}` on `S_i ⊗ Λ_{k+1} ⊗ S*_{l+1}`.
    pub fn id_partial(&self, i: i64, k: i64, l: i64) -> Result<Matrix<B::F>> {
        let n = self.sdim(Side::Co, SymKind::Sym, i);
        Ok(Matrix::identity(n).kron(&*self.partial(k, l)?))
    }

    /// `P_{i,k} ⊗ id_{S*_l}`.
    pub fn p_id(&self, i: i64, k: i64, l: i64) -> Result<Matrix<B::F>> {
        let n = self.sdim(Side::Contra, SymKind::Sym, l);
        Ok(self.p_map(i, k)?.kron(&Matrix::identity(n)))
    }

    /// `Q_{i,k} ⊗ id_{S*_l}`.
    pub fn q_id(&self, i: i64, k: i64, l: i64) -> Result<Matrix<B::F>> {
        let n = self.sdim(Side::Contra, SymKind::Sym, l);
        Ok(self.q_map(i, k)?.kron(&Matrix::identity(n)))
    }

    /// `(P ⊗ id)(id ⊗ d) = (id ⊗ d)(P ⊗ id)` on `S_i ⊗ Λ_k ⊗ S*_l`.
    pub fn verify_pd_square(&self, i: i64, k: i64, l: i64) -> Result<IdentityRecord> {
        let s = self.t.strategy();
        let lhs = self.p_id(i, k + 1, l + 1)?.mul_with(&self.id_d(i, k, l)?, s);
        let rhs = self.id_d(i - 1, k + 1, l)?.mul_with(&self.p_id(i, k, l)?, s);
        Ok(self.identity_record("Pd=dP", vec![i, k, l], &lhs.sub(&rhs)))
    }

    /// `(Q ⊗ id)(id ⊗ ∂) = (id ⊗ ∂)(Q ⊗ id)` on `S_i ⊗ Λ_k ⊗ S*_l`.
    pub fn verify_q_partial_square(&self, i: i64, k: i64, l: i64) -> Result<IdentityRecord> {
        let s = self.t.strategy();
        let lhs = self
            .q_id(i + 1, k - 2, l - 1)?
            .mul_with(&self.id_partial(i, k - 1, l - 1)?, s);
        let rhs = self
            .id_partial(i + 1, k - 2, l - 1)?
            .mul_with(&self.q_id(i + 1, k - 1, l)?, s);
        Ok(self.identity_record("Q∂=∂Q", vec![i, k, l], &lhs.sub(&rhs)))
    }

    /// Every bicomplex relation whose source has total degree `≤ max_degree`.
    pub fn verify_bicomplex(&self, max_degree: i64) -> Result<Vec<IdentityRecord>> {
        let mut out = Vec::new();
        for n in 0..=max_degree {
            for k in 0..=n {
                let l = n - k;
                out.extend(self.verify_squares_zero(k, l)?);
            }
        }
        for n in 1..=max_degree {
            for i in 1..=n {
                for k in 0..=n - i {
                    out.push(self.verify_pd_square(i, k, n - i - k)?);
                }
            }
            for i in 0..n {
                for k in 1..=n - i {
                    out.push(self.verify_q_partial_square(i, k, n - i - k)?);
                }
            }
        }
        Ok(out)
    }

    /// First map among `d`, `∂`, `P`, `Q` at the given index that moves a
    /// weight, as `(name, row, col)`.
    pub fn weight_check(&self, k: i64, l: i64) -> Result<Option<(String, usize, usize)>> {
        let zero = vec![0; self.t.d()];
        let checks = [
            ("d", self.d(k, l)?, self.k_grading(k, l), self.k_grading(k + 1, l + 1)),
            ("∂", self.partial(k, l)?, self.k_grading(k + 1, l + 1), self.k_grading(k, l)),
            ("P", self.p_map(k, l)?, self.l_grading(k, l), self.l_grading(k - 1, l + 1)),
            ("Q", self.q_map(k, l)?, self.l_grading(k - 1, l + 1), self.l_grading(k, l)),
        ];
        for (name, m, dom, cod) in checks {
            if let Some((r, c)) = weight_violation(&m, &dom, &cod, &zero) {
                return Ok(Some((name.to_string(), r, c)));
            }
        }
        Ok(None)
    }

    /// Character of a graded subspace of a coordinate space with grading `g`.
    pub fn character(&self, sub: &Subspace<B::F>, g: &Grading) -> Result<LaurentChar> {
        if !self.t.is_weight_preserving() {
            return Err(Error::NonStandardR);
        }
        let ws = basis_weights(sub, g)?;
        LaurentChar::from_weights(ws.iter())
    }

    /// `Im d_{k,l} ⊆ Λ_{k+1} ⊗ S*_{l+1}`.
    pub fn image_d(&self, k: i64, l: i64) -> Result<WeightedSpace<B::F>> {
        let sub = self.d(k, l)?.image();
        let grading = crate::tensorspace::induced_grading(&sub, &self.k_grading(k + 1, l + 1))?;
        Ok(WeightedSpace { sub, grading })
    }

    /// Homology of `K_a` at each term `(k, l)` with `k − l = a`, `k, l ≥ 0`,
    /// `k + l ≤ window`.
    pub fn homology(&self, a: i64, window: i64) -> Result<Vec<HomologySlot>> {
        let mut out = Vec::new();
        for k in 0..=window {
            let l = k - a;
            if l < 0 || k + l > window {
                continue;
            }
            let (h, ch) = self.homology_at(k, l)?;
            out.push(HomologySlot {
                k: k as usize,
                l: l as usize,
                dim: h.dim(),
                character: ch.to_string(),
            });
        }
        Ok(out)
    }

    /// A complement of `Im d_{k−1,l−1}` in `Ker d_{k,l}`, chosen weight by
    /// weight, and its character.
    pub fn homology_at(&self, k: i64, l: i64) -> Result<(Subspace<B::F>, LaurentChar)> {
        let n = self.k_dim(k, l);
        let ker = self.d(k, l)?.kernel();
        let im = if k > 0 && l > 0 {
            self.d(k - 1, l - 1)?.image()
        } else {
            Subspace::zero(n)
        };
        if !ker.contains_subspace(&im) {
            return Err(Error::Containment { column: 0 });
        }
        let mut acc = im.clone();
        let mut reps = Vec::new();
        for v in ker.basis() {
            if acc.dim() == ker.dim() {
                break;
            }
            if !acc.contains(v) {
                acc = acc.sum(&Subspace::span(n, std::slice::from_ref(v)));
                reps.push(v.clone());
            }
        }
        let h = Subspace::span(n, &reps);
        let g = self.k_grading(k, l);
        let ch = if self.t.is_weight_preserving() {
            let ws = basis_weights(&h, &g)?;
            LaurentChar::from_weights(ws.iter())?
        } else {
            LaurentChar::zero()
        };
        Ok((h, ch))
    }

    /// `K_{k,l} = Im d_{k−1,l−1} ⊕ Im(∂_{k,l} d_{k,l})`, the second summand
    /// being isomorphic to `Im d_{k,l}` through `d`.
    pub fn image_splitting(&self, k: i64, l: i64) -> Result<Split<B::F>> {
        let dims = self.t.dims();
        if k - l == dims.r as i64 - dims.s as i64 {
            return Err(Error::OutOfRange(format!(
                "K_{{{k},{l}}} lies in the complex with homology"
            )));
        }
        let n = self.k_dim(k, l);
        let first = if k > 0 && l > 0 {
            self.d(k - 1, l - 1)?.image()
        } else {
            Subspace::zero(n)
        };
        let loop_map = self.partial(k, l)?.mul_with(&*self.d(k, l)?, self.t.strategy());
        let second = loop_map.image();
        let total = first.sum(&second);
        let rank_d = self.d(k, l)?.rank();
        if total.dim() != n || first.dim() + second.dim() != n || second.dim() != rank_d {
            return Err(Error::DirectSum(format!(
                "K_{{{k},{l}}}: {} + {} in {n}, rank d = {rank_d}",
                first.dim(),
                second.dim()
            )));
        }
        Ok((first, second))
    }

    /// `db`, `ev` and `R_{V,V*}` in monomial bases.
    pub fn structure_maps(&self, closure: &crate::hecke::ClosureData) -> Result<StructureMaps<B::F>> {
        let d = self.t.d();
        let b = self.t.backend();
        let db = Matrix::from_columns(
            d * d,
            &[(0..d).map(|i| (i * d + i, B::F::one())).collect()],
        );
        let ev = Matrix::from_rows(1, d * d, vec![(0..d).map(|i| (i * d + i, B::F::one())).collect()]);
        let mut cols: Vec<SparseVec<B::F>> = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let v = closure.entry(j, l, i, k);
                        if !v.is_zero() {
                            cols[i * d + j].push((k * d + l, b.embed(&v)?));
                        }
                    }
                }
            }
        }
        for c in &mut cols {
            c.sort_by_key(|(r, _)| *r);
        }
        Ok(StructureMaps {
            db,
            ev,
            rvv: Matrix::from_columns(d * d, &cols),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{compute_p_matrix, standard_exact};

    #[test]
    fn d00_is_a_nonzero_weight_zero_vector() {
        let k = Koszul::new(standard_exact());
        let d = k.d(0, 0).unwrap();
        assert_eq!((d.rows(), d.cols()), (16, 1));
        assert!(!d.is_zero());
        assert!(k.weight_check(0, 0).unwrap().is_none());
    }

    #[test]
    fn contraction_of_the_structure_maps_is_c() {
        let k = Koszul::new(standard_exact());
        let h = crate::hecke::build_standard_r(3, 1).unwrap();
        let pc = compute_p_matrix(&h).unwrap();
        let s = k.structure_maps(&pc).unwrap();
        let evr = s.ev.mul(&s.rvv);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(evr.get(0, i * 4 + j), pc.c.get(j, i));
            }
        }
        assert_eq!(s.ev.mul(&s.db).get(0, 0), crate::Scalar::from_i64(4));
    }

    #[test]
    fn low_degree_identities() {
        let k = Koszul::new(standard_exact());
        let sign = k.resolve_ct3_sign().unwrap().expect("one sign fits");
        assert!(k.verify_ct3(1, 1, sign).unwrap().residual_zero);
        assert!(k.verify_ct60(1, 0).unwrap().residual_zero);
        assert!(k.verify_ct60(0, 2).unwrap().residual_zero);
    }
}
