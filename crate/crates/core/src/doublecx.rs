//! Loops through the double Koszul complex: `∂PQd` on `S_i ⊗ S*_{a+i}` and
//! `P∂dQ` on `Ker P_{i,k+1} ⊗ S*_{a+i+k+1}`, their spectra, and the direct
//! summands `X_{i,a}` and `Y_{i,k,a}` split off by them.
//!
//! Composites are read right to left: `∂PQd` applies `d` first.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::charformula::LaurentChar;
use crate::error::{Error, Result};
use crate::field::{Backend, Field};
use crate::koszul::Koszul;
use crate::linalg::{restrict, Matrix, Subspace};
use crate::scalar::{q_int, Scalar};
use crate::tensorspace::{basis_weights, induced_grading, Grading};

fn qi(n: i64) -> Scalar {
    q_int(n)
}

fn pw(k: i64) -> Scalar {
    Scalar::p_pow(k)
}

/// `[n] − [−2]`.
fn shifted(n: i64) -> Scalar {
    qi(n).sub(&qi(-2))
}

fn div(a: Scalar, b: Scalar) -> Scalar {
    a.div(&b).expect("q-integers are nonzero at generic p")
}

/// `{([a+2i+1−j] − [−2]) [j] / ([i+1][a+i+1]) : j = 1..i+1}`.
pub fn claimed_loop_s(i: i64, a: i64) -> Vec<Scalar> {
    (1..=i + 1)
        .map(|j| div(shifted(a + 2 * i + 1 - j).mul(&qi(j)), qi(i + 1).mul(&qi(a + i + 1))))
        .collect()
}

/// The eigenvalue lists for `P∂dQ` written out for `i = 0` and `i = 1`.
pub fn claimed_loop_ker(i: i64, k: i64, a: i64) -> Option<Vec<Scalar>> {
    let k1sq = qi(k + 1).mul(&qi(k + 1));
    match i {
        0 => {
            let den = k1sq.mul(&qi(a + k + 2));
            Some(vec![
                div(pw(k).mul(&qi(k + 1)).mul(&shifted(a + 1)), den.clone()),
                div(pw(k).mul(&shifted(a + k + 1)), den),
            ])
        }
        1 => {
            let den = qi(2).mul(&k1sq).mul(&qi(a + k + 3));
            Some(vec![
                div(pw(k).mul(&shifted(a + 2)).mul(&qi(k + 2)), den.clone()),
                div(pw(k).mul(&shifted(a + k + 3)), den.clone()),
                div(pw(k).mul(&qi(2)).mul(&shifted(a + k + 2)), den),
            ])
        }
        _ => None,
    }
}

/// The general list `{p^k([a+k+2i−j+2] − [−2])[j] / ([i+1][k+1]²[a+i+k+2])}`
/// over `j = 1..i+1` and `j = i+k+1`.
pub fn claimed_loop_ker_general(i: i64, k: i64, a: i64) -> Vec<Scalar> {
    let den = qi(i + 1).mul(&qi(k + 1)).mul(&qi(k + 1)).mul(&qi(a + i + k + 2));
    (1..=i + 1)
        .chain(std::iter::once(i + k + 1))
        .map(|j| div(pw(k).mul(&shifted(a + k + 2 * i - j + 2)).mul(&qi(j)), den.clone()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopKind {
    LoopS,
    LoopKer,
    DPartial,
}

/// Spectral certificate for a loop operator.
#[derive(Clone, Debug, Serialize)]
pub struct LoopReport {
    pub operator: LoopKind,
    pub params: Vec<i64>,
    pub dim: usize,
    pub claimed: Vec<String>,
    /// `∏ (M − λ) = 0` over the distinct claimed values.
    pub annihilation: bool,
    /// Per claimed value: whether `M − λ` is singular.
    pub attained: Vec<bool>,
    pub invertible: bool,
    /// Eigenvalues found among the candidates, with geometric multiplicity.
    pub empirical: Vec<(String, usize)>,
    /// The empirical eigenspaces span the whole space.
    pub spectrum_complete: bool,
    pub backend: String,
    pub certification: String,
}

impl LoopReport {
    pub fn all_attained(&self) -> bool {
        self.attained.iter().all(|&x| x)
    }
}

/// A square operator on a based space together with the weights of the basis.
pub struct LoopOperator<F: Field> {
    pub matrix: Matrix<F>,
    pub grading: Grading,
}

/// `∂PQd` on `S_i ⊗ S*_{a+i}` (with `Λ_0` suppressed).
pub fn loop_s<B: Backend>(kz: &Koszul<B>, i: i64, a: i64) -> Result<LoopOperator<B::F>> {
    if i < 0 || a + i < 0 {
        return Err(Error::OutOfRange(format!("loop_S needs i, a+i >= 0 (got {i},{a})")));
    }
    let j = a + i;
    let s = kz.algebra().strategy();
    let d = kz.id_d(i, 0, j)?;
    let q = kz.q_id(i + 1, 0, j + 1)?;
    let p = kz.p_id(i + 1, 0, j + 1)?;
    let del = kz.id_partial(i, 0, j)?;
    let m = del.mul_with(&p.mul_with(&q.mul_with(&d, s), s), s);
    let grading = s_grading(kz, i).tensor(&kz.k_grading(0, j));
    Ok(LoopOperator { matrix: m, grading })
}

fn s_grading<B: Backend>(kz: &Koszul<B>, i: i64) -> Grading {
    kz.l_grading(i, 0)
}

/// `Ker P_{i,k} ⊆ S_i ⊗ Λ_k`, checked against `Im P_{i+1,k−1}`.
pub fn ker_p<B: Backend>(kz: &Koszul<B>, i: i64, k: i64) -> Result<Subspace<B::F>> {
    let ker = kz.p_map(i, k)?.kernel();
    let im = kz.p_map(i + 1, k - 1)?.image();
    if k >= 1 && !(ker.contains_subspace(&im) && im.contains_subspace(&ker)) {
        return Err(Error::DirectSum(format!(
            "Ker P_{{{i},{k}}} (dim {}) differs from Im P_{{{},{}}} (dim {})",
            ker.dim(),
            i + 1,
            k - 1,
            im.dim()
        )));
    }
    Ok(ker)
}

/// `W = Ker P_{i,k+1} ⊗ S*_l` inside `S_i ⊗ Λ_{k+1} ⊗ S*_l`.
fn kernel_times_dual<B: Backend>(kz: &Koszul<B>, i: i64, k: i64, l: i64) -> Result<Subspace<B::F>> {
    let ker = ker_p(kz, i, k + 1)?;
    let nd = kz.k_dim(0, l);
    let id = Matrix::<B::F>::identity(nd);
    Ok(ker.matrix().kron(&id).image())
}

/// The full composite `P∂dQ` on `S_i ⊗ Λ_{k+1} ⊗ S*_l`, `l = a+i+k+1`.
fn loop_ker_full<B: Backend>(kz: &Koszul<B>, i: i64, k: i64, l: i64) -> Result<Matrix<B::F>> {
    let s = kz.algebra().strategy();
    let q = kz.q_id(i + 1, k, l)?;
    let d = kz.id_d(i + 1, k, l)?;
    let del = kz.id_partial(i + 1, k, l)?;
    let p = kz.p_id(i + 1, k, l)?;
    Ok(p.mul_with(&del.mul_with(&d.mul_with(&q, s), s), s))
}

/// `P∂dQ` restricted to `Ker P_{i,k+1} ⊗ S*_{a+i+k+1}`, in the reduced basis
/// of that subspace. Fails if the composite leaves the subspace.
pub fn loop_ker<B: Backend>(kz: &Koszul<B>, i: i64, k: i64, a: i64) -> Result<LoopOperator<B::F>> {
    let l = a + i + k + 1;
    if i < 0 || k < 1 || l < 0 {
        return Err(Error::OutOfRange(format!("loop_ker needs i >= 0, k >= 1, a+i+k+1 >= 0 (got {i},{k},{a})")));
    }
    let w = kernel_times_dual(kz, i, k, l)?;
    let full = loop_ker_full(kz, i, k, l)?;
    let matrix = restrict(&full, &w, &w)?;
    let ambient = s_grading(kz, i)
        .tensor(&kz.l_grading(0, k + 1))
        .tensor(&kz.k_grading(0, l));
    let grading = induced_grading(&w, &ambient)?;
    Ok(LoopOperator { matrix, grading })
}

/// Dimension of `Ker(M − λ)`.
fn eigen_mult<F: Field>(m: &Matrix<F>, lambda: &F) -> usize {
    m.cols() - m.add_scalar(&lambda.neg()).rank()
}

/// Spectral report for an operator and a list of claimed eigenvalues
/// (elements of `ℚ(p)`, embedded into the backend).
pub fn spectral_report<B: Backend>(
    backend: &B,
    op: &LoopOperator<B::F>,
    kind: LoopKind,
    params: Vec<i64>,
    claimed: &[Scalar],
    extra_candidates: &[Scalar],
) -> Result<LoopReport> {
    let m = &op.matrix;
    let n = m.cols();
    let embed = |s: &Scalar| backend.embed(s);
    let claimed_f: Vec<B::F> = claimed.iter().map(embed).collect::<Result<_>>()?;
    let mut distinct: Vec<B::F> = Vec::new();
    for c in &claimed_f {
        if !distinct.contains(c) {
            distinct.push(c.clone());
        }
    }
    let mut prod = Matrix::<B::F>::identity(n);
    for c in &distinct {
        prod = m.add_scalar(&c.neg()).mul(&prod);
    }
    let attained: Vec<bool> = claimed_f.iter().map(|c| eigen_mult(m, c) > 0).collect();
    // Candidates: claimed values, supplied extras, and the entries of
    // one-dimensional weight blocks (which are eigenvalues outright).
    let mut candidates = distinct.clone();
    for s in extra_candidates {
        let c = embed(s)?;
        if !candidates.contains(&c) {
            candidates.push(c);
        }
    }
    let mut by_weight: BTreeMap<&Vec<i32>, Vec<usize>> = BTreeMap::new();
    for (j, w) in op.grading.weights().iter().enumerate() {
        by_weight.entry(w).or_default().push(j);
    }
    for idx in by_weight.values() {
        if idx.len() == 1 {
            let c = m.get(idx[0], idx[0]);
            if !candidates.contains(&c) {
                candidates.push(c);
            }
        }
    }
    let mut empirical = Vec::new();
    let mut covered = 0;
    for c in &candidates {
        let mult = eigen_mult(m, c);
        if mult > 0 {
            covered += mult;
            empirical.push((c.to_string(), mult));
        }
    }
    Ok(LoopReport {
        operator: kind,
        params,
        dim: n,
        claimed: claimed.iter().map(|s| s.to_string()).collect(),
        annihilation: prod.is_zero(),
        attained,
        invertible: m.rank() == n,
        empirical,
        spectrum_complete: covered == n,
        backend: backend.label(),
        certification: match backend.kind() {
            crate::field::BackendKind::Exact => "exact".into(),
            crate::field::BackendKind::Evaluated => format!("evaluated at {}", backend.label()),
        },
    })
}

/// Report for `∂PQd` against the set `A_i`.
pub fn eigen_check_loop_s<B: Backend>(kz: &Koszul<B>, i: i64, a: i64) -> Result<LoopReport> {
    let op = loop_s(kz, i, a)?;
    let extras: Vec<Scalar> = (0..i).flat_map(|h| claimed_loop_s(h, a + 2 * (i - h))).collect();
    spectral_report(kz.algebra().backend(), &op, LoopKind::LoopS, vec![i, a], &claimed_loop_s(i, a), &extras)
}

/// Report for `P∂dQ` against the explicit lists for `i ≤ 1`, or the general
/// list otherwise; the general list is always offered as extra candidates.
pub fn eigen_check_loop_ker<B: Backend>(kz: &Koszul<B>, i: i64, k: i64, a: i64) -> Result<LoopReport> {
    let op = loop_ker(kz, i, k, a)?;
    let general = claimed_loop_ker_general(i, k, a);
    let claimed = claimed_loop_ker(i, k, a).unwrap_or_else(|| general.clone());
    spectral_report(kz.algebra().backend(), &op, LoopKind::LoopKer, vec![i, k, a], &claimed, &general)
}

/// Merge two reports computed at different evaluation points.
pub fn two_point(a: LoopReport, b: &LoopReport) -> LoopReport {
    LoopReport {
        annihilation: a.annihilation && b.annihilation,
        attained: a.attained.iter().zip(&b.attained).map(|(x, y)| *x && *y).collect(),
        invertible: a.invertible && b.invertible,
        spectrum_complete: a.spectrum_complete && b.spectrum_complete,
        certification: format!("evaluated at {} and {}", a.backend, b.backend),
        ..a
    }
}

/// `PQ` on `Λ_1 ⊗ S*_{a+1}` (the step out of `S_0` in `∂PQd`), which is the identity.
pub fn pq_step<B: Backend>(kz: &Koszul<B>, a: i64) -> Result<Matrix<B::F>> {
    let s = kz.algebra().strategy();
    Ok(kz.p_id(1, 0, a + 1)?.mul_with(&kz.q_id(1, 0, a + 1)?, s))
}

/// `d∂` on `Λ_{k+1} ⊗ S*_{a+k+1}`.
pub fn d_partial<B: Backend>(kz: &Koszul<B>, k: i64, a: i64) -> Result<LoopOperator<B::F>> {
    let l = a + k + 1;
    let s = kz.algebra().strategy();
    let matrix = kz.d(k, l - 1)?.mul_with(&*kz.partial(k, l - 1)?, s);
    Ok(LoopOperator { matrix, grading: kz.k_grading(k + 1, l) })
}

/// Spectrum of `d∂` on `Λ_{k+1} ⊗ S*_{a+k+1}` against `{0, p^k([a] − [−2])/([k+1][a+k+1])}`.
pub fn eigen_check_d_partial<B: Backend>(kz: &Koszul<B>, k: i64, a: i64) -> Result<LoopReport> {
    let op = d_partial(kz, k, a)?;
    let claimed = [Scalar::zero(), div(pw(k).mul(&shifted(a)), qi(k + 1).mul(&qi(a + k + 1)))];
    spectral_report(kz.algebra().backend(), &op, LoopKind::DPartial, vec![k, a], &claimed, &[])
}

/// `P∂dQ − (α·id − β·d∂)` on `Λ_{k+1} ⊗ S*_{a+k+1}` (the case `i = 0`), with
/// `α = p^k([a+1] − [−2])/([k+1][a+k+2])` and `β = c·[k][a+k+1]/([k+1][a+k+2])`,
/// where `c` is `p` or `1` according to `with_p`.
pub fn loop_ker_base_residual<B: Backend>(kz: &Koszul<B>, k: i64, a: i64, with_p: bool) -> Result<Matrix<B::F>> {
    let l = a + k + 1;
    let full = loop_ker_full(kz, 0, k, l)?;
    let den = qi(k + 1).mul(&qi(a + k + 2));
    let alpha = div(pw(k).mul(&shifted(a + 1)), den.clone());
    let c = if with_p { Scalar::p() } else { Scalar::one() };
    let beta = div(c.mul(&qi(k)).mul(&qi(a + k + 1)), den);
    let b = kz.algebra().backend();
    let dp = d_partial(kz, k, a)?.matrix;
    let rhs = Matrix::scalar(full.rows(), &b.embed(&alpha)?).sub(&dp.scale(&b.embed(&beta)?));
    Ok(full.sub(&rhs))
}

/// `d∂·dQP∂ − dQP∂·d∂` on `S_{i+1} ⊗ Λ_{k+1} ⊗ S*_{l+1}`, `l = a+i+k+1`.
pub fn commuting_residual<B: Backend>(kz: &Koszul<B>, i: i64, k: i64, a: i64) -> Result<Matrix<B::F>> {
    let l = a + i + k + 1;
    let s = kz.algebra().strategy();
    let d = kz.id_d(i + 1, k, l)?;
    let del = kz.id_partial(i + 1, k, l)?;
    let dd = d.mul_with(&del, s);
    let qp = kz.q_id(i + 1, k, l)?.mul_with(&kz.p_id(i + 1, k, l)?, s);
    let dqpd = d.mul_with(&qp.mul_with(&del, s), s);
    Ok(dd.mul_with(&dqpd, s).sub(&dqpd.mul_with(&dd, s)))
}

/// A summand split off by an idempotent, with the characters needed for the
/// additivity check.
#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    /// The ambient space of the split, as a subspace of its coordinate space.
    pub ambient: Subspace<F>,
    /// The complement `Im(1 − e)`.
    pub complement: Subspace<F>,
    /// The split image `Im e`.
    pub image: Subspace<F>,
    pub grading: Grading,
    pub idempotent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandReport {
    pub summand: String,
    pub params: Vec<i64>,
    pub ambient_dim: usize,
    pub image_dim: usize,
    pub complement_dim: usize,
    pub expected_complement_dim: usize,
    pub idempotent: bool,
    pub additive: bool,
    pub character: String,
    pub backend: String,
}

impl<F: Field> Summand<F> {
    pub fn complement_char(&self) -> Result<LaurentChar> {
        LaurentChar::from_weights(basis_weights(&self.complement, &self.grading)?.iter())
    }

    pub fn image_char(&self) -> Result<LaurentChar> {
        LaurentChar::from_weights(basis_weights(&self.image, &self.grading)?.iter())
    }

    pub fn ambient_char(&self) -> Result<LaurentChar> {
        LaurentChar::from_weights(basis_weights(&self.ambient, &self.grading)?.iter())
    }

    /// `ch(complement) + ch(image) = ch(ambient)` and the dimensions add up.
    pub fn additive(&self) -> Result<bool> {
        Ok(self.complement.dim() + self.image.dim() == self.ambient.dim()
            && self.complement_char()?.add(&self.image_char()?) == self.ambient_char()?)
    }
}

fn split<F: Field>(e: &Matrix<F>, ambient: Subspace<F>, grading: Grading) -> Result<Summand<F>> {
    let ew = restrict(e, &ambient, &ambient)?;
    let idempotent = ew.mul(&ew) == ew;
    let one_minus = Matrix::identity(ew.rows()).sub(&ew);
    let basis = ambient.matrix();
    let image = basis.mul(&ew).image();
    let complement = basis.mul(&one_minus).image();
    Ok(Summand {
        ambient,
        complement,
        image,
        grading,
        idempotent,
    })
}

/// `X_{i,a} = Im(1 − e) ⊆ S_{i+1} ⊗ S*_{a+i+1}` with
/// `e = Qd (∂PQd)^{−1} ∂P`.
pub fn extract_x<B: Backend>(kz: &Koszul<B>, i: i64, a: i64) -> Result<Summand<B::F>> {
    let j = a + i;
    let s = kz.algebra().strategy();
    let l = loop_s(kz, i, a)?.matrix;
    let linv = l
        .inverse()
        .ok_or_else(|| Error::NonInvertible(format!("∂PQd on S_{i}S*_{j}")))?;
    let qd = kz.q_id(i + 1, 0, j + 1)?.mul_with(&kz.id_d(i, 0, j)?, s);
    let dp = kz.id_partial(i, 0, j)?.mul_with(&kz.p_id(i + 1, 0, j + 1)?, s);
    let e = qd.mul_with(&linv.mul_with(&dp, s), s);
    let n = e.rows();
    let grading = s_grading(kz, i + 1).tensor(&kz.k_grading(0, j + 1));
    split(&e, Subspace::full(n), grading)
}

/// `Y_{i,k,a} = Im(1 − e) ⊆ S_{i+1} ⊗ Im d_{k,l}`, `l = a+i+k+1`, with
/// `e = dQ (P∂dQ|_W)^{−1} P∂` and `W = Ker P_{i,k+1} ⊗ S*_l`.
pub fn extract_y<B: Backend>(kz: &Koszul<B>, i: i64, k: i64, a: i64) -> Result<Summand<B::F>> {
    let l = a + i + k + 1;
    let s = kz.algebra().strategy();
    let w = kernel_times_dual(kz, i, k, l)?;
    let lw = restrict(&loop_ker_full(kz, i, k, l)?, &w, &w)?;
    let linv = lw
        .inverse()
        .ok_or_else(|| Error::NonInvertible(format!("P∂dQ on Ker P_{{{i},{}}}S*_{l}", k + 1)))?;
    let dq = kz.id_d(i + 1, k, l)?.mul_with(&kz.q_id(i + 1, k, l)?, s);
    let pd = kz.p_id(i + 1, k, l)?.mul_with(&kz.id_partial(i + 1, k, l)?, s);
    // coordinates of P∂(x) in the basis of W
    let pd_cols: Vec<_> = pd
        .columns()
        .iter()
        .enumerate()
        .map(|(c, col)| w.coords_sparse(col).ok_or(Error::Containment { column: c }))
        .collect::<Result<_>>()?;
    // Columns outside S_{i+1} ⊗ Im d may leave W; only the restriction to
    // the ambient matters, so containment is required on that subspace only.
    let ns = kz.l_dim(i + 1, 0);
    let img_d = kz.d(k, l)?.image();
    let ambient = Matrix::<B::F>::identity(ns).kron(&img_d.matrix()).image();
    let pd_w = Matrix::from_columns(w.dim(), &pd_cols);
    let e = dq.mul_with(&w.matrix().mul_with(&linv.mul_with(&pd_w, s), s), s);
    let grading = s_grading(kz, i + 1)
        .tensor(&kz.l_grading(0, k + 1))
        .tensor(&kz.k_grading(0, l + 1));
    split(&e, ambient, grading)
}

impl<F: Field> Summand<F> {
    pub fn report(&self, name: &str, params: Vec<i64>, expected: usize, backend: String) -> Result<SummandReport> {
        Ok(SummandReport {
            summand: name.to_string(),
            params,
            ambient_dim: self.ambient.dim(),
            image_dim: self.image.dim(),
            complement_dim: self.complement.dim(),
            expected_complement_dim: expected,
            idempotent: self.idempotent,
            additive: self.additive()?,
            character: self.complement_char()?.to_string(),
            backend,
        })
    }
}

/// `dim S_{i+1}S*_{a+i+1} − dim S_iS*_{a+i}`.
pub fn expected_x_dim<B: Backend>(kz: &Koszul<B>, i: i64, a: i64) -> usize {
    kz.l_dim(i + 1, 0) * kz.k_dim(0, a + i + 1) - kz.l_dim(i, 0) * kz.k_dim(0, a + i)
}

/// `dim(S_{i+1} ⊗ Im d_{k,l}) − dim(Ker P_{i,k+1} ⊗ S*_l)`.
pub fn expected_y_dim<B: Backend>(kz: &Koszul<B>, i: i64, k: i64, a: i64) -> Result<usize> {
    let l = a + i + k + 1;
    let im = kz.d(k, l)?.rank() * kz.l_dim(i + 1, 0);
    let w = ker_p(kz, i, k + 1)?.dim() * kz.k_dim(0, l);
    Ok(im - w)
}
