//! Mixed tensor spaces `V^⊗k ⊗ V*^⊗l` over a super vector space, their
//! torus weights, and weight decompositions of subspaces.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

/// An integer weight vector in `ℤ^{r+s}`.
pub type Weight = Vec<i32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SuperDim {
    pub r: usize,
    pub s: usize,
}

impl SuperDim {
    pub fn new(r: usize, s: usize) -> Result<Self> {
        if r + s == 0 {
            return Err(Error::OutOfRange("super dimension must be positive".into()));
        }
        Ok(SuperDim { r, s })
    }

    pub fn d(&self) -> usize {
        self.r + self.s
    }

    /// Parity of the basis vector with 0-based index `i`.
    pub fn parity(&self, i: usize) -> u8 {
        u8::from(i >= self.r)
    }

    pub fn unit_weight(&self, i: usize) -> Weight {
        let mut w = vec![0; self.d()];
        w[i] = 1;
        w
    }
}

/// Monomial basis of `V^⊗k ⊗ V*^⊗l`. Monomials are numbered
/// lexicographically with the first covariant leg most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisIndex {
    pub dims: SuperDim,
    pub k: usize,
    pub l: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisEntry {
    pub legs: Vec<usize>,
    pub parity: u8,
    pub weight: Weight,
}

pub fn tensor_basis(dims: SuperDim, k: usize, l: usize) -> BasisIndex {
    BasisIndex { dims, k, l }
}

impl BasisIndex {
    pub fn legs(&self) -> usize {
        self.k + self.l
    }

    pub fn len(&self) -> usize {
        self.dims.d().pow(self.legs() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let d = self.dims.d();
        let mut out = vec![0; self.legs()];
        for slot in out.iter_mut().rev() {
            *slot = idx % d;
            idx /= d;
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        let d = self.dims.d();
        digits.iter().fold(0, |acc, &x| acc * d + x)
    }

    pub fn weight(&self, idx: usize) -> Weight {
        let mut w = vec![0; self.dims.d()];
        for (pos, a) in self.digits(idx).into_iter().enumerate() {
            w[a] += if pos < self.k { 1 } else { -1 };
        }
        w
    }

    pub fn parity(&self, idx: usize) -> u8 {
        let odd = self
            .digits(idx)
            .into_iter()
            .filter(|&a| self.dims.parity(a) == 1)
            .count();
        (odd % 2) as u8
    }

    pub fn entry(&self, idx: usize) -> BasisEntry {
        BasisEntry {
            legs: self.digits(idx),
            parity: self.parity(idx),
            weight: self.weight(idx),
        }
    }

    pub fn entries(&self) -> Vec<BasisEntry> {
        (0..self.len()).map(|i| self.entry(i)).collect()
    }

    pub fn label(&self, idx: usize) -> String {
        self.digits(idx)
            .into_iter()
            .enumerate()
            .map(|(pos, a)| {
                if pos < self.k {
                    format!("x{}", a + 1)
                } else {
                    format!("xi{}", a + 1)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn grading(&self) -> Grading {
        Grading::new((0..self.len()).map(|i| self.weight(i)).collect())
    }
}

/// Weights attached to the coordinates of a coordinate space.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Grading {
    weights: Vec<Weight>,
}

impl Grading {
    pub fn new(weights: Vec<Weight>) -> Self {
        Grading { weights }
    }

    /// Grading of the one-dimensional trivial space.
    pub fn unit(rank: usize) -> Self {
        Grading {
            weights: vec![vec![0; rank]],
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    /// Grading of `A ⊗ B` with coordinates `(i, j) -> i * |B| + j`.
    pub fn tensor(&self, other: &Grading) -> Grading {
        let mut weights = Vec::with_capacity(self.len() * other.len());
        for a in &self.weights {
            for b in &other.weights {
                weights.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Grading { weights }
    }

    pub fn dual(&self) -> Grading {
        Grading {
            weights: self
                .weights
                .iter()
                .map(|w| w.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    pub fn shift(&self, by: &[i32]) -> Grading {
        Grading {
            weights: self
                .weights
                .iter()
                .map(|w| w.iter().zip(by).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    /// Coordinate multiplicities per weight.
    pub fn components(&self) -> BTreeMap<Weight, usize> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }
}

/// Weight of every basis vector of `sub`. A subspace is graded exactly when
/// its reduced basis is homogeneous, so the first inhomogeneous basis vector
/// is reported as the witness.
pub fn basis_weights<F: Field>(sub: &Subspace<F>, ambient: &Grading) -> Result<Vec<Weight>> {
    if sub.ambient_dim() != ambient.len() {
        return Err(Error::Shape(format!(
            "subspace ambient {} vs grading {}",
            sub.ambient_dim(),
            ambient.len()
        )));
    }
    sub.basis()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let w = ambient.weight(v[0].0);
            if v.iter().all(|(i, _)| ambient.weight(*i) == w) {
                Ok(w.clone())
            } else {
                Err(Error::NonGraded { witness: j })
            }
        })
        .collect()
}

/// Grading on the coordinates of `sub` induced from its ambient space.
pub fn induced_grading<F: Field>(sub: &Subspace<F>, ambient: &Grading) -> Result<Grading> {
    basis_weights(sub, ambient).map(Grading::new)
}

/// `dim W_μ` for every weight `μ` occurring in `W`.
pub fn weight_components<F: Field>(
    sub: &Subspace<F>,
    ambient: &Grading,
) -> Result<BTreeMap<Weight, usize>> {
    Ok(induced_grading(sub, ambient)?.components())
}

/// Check that a matrix maps each weight space into the same weight space.
/// Returns the first offending entry.
pub fn weight_violation<F: Field>(
    m: &Matrix<F>,
    dom: &Grading,
    cod: &Grading,
    shift: &[i32],
) -> Option<(usize, usize)> {
    for i in 0..m.rows() {
        for (j, _) in m.row(i) {
            let expect: Weight = dom.weight(*j).iter().zip(shift).map(|(a, b)| a + b).collect();
            if *cod.weight(i) != expect {
                return Some((i, *j));
            }
        }
    }
    None
}

/// CSV dump: one line per row, entries serialized with `Display`.
pub fn matrix_csv<F: Field>(m: &Matrix<F>) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

/// Ambient descriptor line followed by the spanning matrix as CSV.
pub fn subspace_dump<F: Field>(sub: &Subspace<F>, descriptor: &str) -> String {
    format!(
        "# ambient {} dim {} dim_sub {}\n{}",
        descriptor,
        sub.ambient_dim(),
        sub.dim(),
        matrix_csv(&sub.matrix())
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn basis_of_v_and_dual() {
        let dims = SuperDim::new(3, 1).unwrap();
        let b = tensor_basis(dims, 1, 0);
        assert_eq!(b.len(), 4);
        let parities: Vec<u8> = (0..4).map(|i| b.parity(i)).collect();
        assert_eq!(parities, vec![0, 0, 0, 1]);
        assert_eq!(b.weight(3), vec![0, 0, 0, 1]);
        let dual = tensor_basis(dims, 0, 1);
        assert_eq!(dual.weight(0), vec![-1, 0, 0, 0]);
    }

    #[test]
    fn x4_x4_is_even() {
        let b = tensor_basis(SuperDim::new(3, 1).unwrap(), 2, 0);
        assert_eq!(b.len(), 16);
        let idx = b.index(&[3, 3]);
        assert_eq!(b.weight(idx), vec![0, 0, 0, 2]);
        assert_eq!(b.parity(idx), 0);
        assert_eq!(b.label(idx), "x4*x4");
    }

    #[test]
    fn non_graded_span_is_rejected() {
        let b = tensor_basis(SuperDim::new(3, 1).unwrap(), 1, 0);
        let one = BigRational::from_integer(1.into());
        let sub = Subspace::span(4, &[vec![(0, one.clone()), (1, one)]]);
        assert_eq!(
            weight_components(&sub, &b.grading()),
            Err(Error::NonGraded { witness: 0 })
        );
        let full = Subspace::<BigRational>::full(4);
        assert_eq!(weight_components(&full, &b.grading()).unwrap().len(), 4);
    }
}
