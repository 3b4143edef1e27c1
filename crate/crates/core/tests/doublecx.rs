use dkoszul::charformula::{x_summand_char, y_summand_char};
use dkoszul::doublecx::*;
use dkoszul::field::{Evaluated, Exact};
use dkoszul::hecke::{build_standard_r, standard_exact, TensorAlgebra};
use dkoszul::koszul::Koszul;
use dkoszul::linalg::Matrix;
use dkoszul::{EvalPoint, Scalar};

fn exact() -> Koszul<Exact> {
    Koszul::new(standard_exact())
}

fn evaluated(pt: EvalPoint) -> Koszul<Evaluated> {
    Koszul::new(TensorAlgebra::new(&build_standard_r(3, 1).unwrap(), Evaluated::new(pt)).unwrap())
}

fn q(n: i64) -> Scalar {
    dkoszul::scalar::q_int(n)
}

#[test]
fn loop_s_spectra_in_low_degree() {
    let kz = exact();
    for (i, a) in [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)] {
        let r = eigen_check_loop_s(&kz, i, a).unwrap();
        assert!(r.annihilation && r.all_attained() && r.invertible, "{r:?}");
        assert!(r.spectrum_complete);
        assert_eq!(r.dim, ((i + 1) * (a + i + 1)).pow(2) as usize);
    }
}

#[test]
fn loop_s_base_step_is_identity() {
    let kz = exact();
    for a in 0..=2 {
        let m = pq_step(&kz, a).unwrap();
        assert_eq!(m, Matrix::identity(m.rows()));
    }
}

#[test]
fn loop_s_at_i_two_certified_at_two_points() {
    let a = evaluated(EvalPoint::default_point());
    let b = evaluated(EvalPoint::seeded(0));
    let ra = eigen_check_loop_s(&a, 2, 0).unwrap();
    let rb = eigen_check_loop_s(&b, 2, 0).unwrap();
    let r = two_point(ra, &rb);
    assert!(r.annihilation && r.invertible && r.all_attained(), "{r:?}");
    assert!(r.certification.contains("and"));
}

#[test]
fn seeded_points_differ_from_default() {
    for s in [0, 1, 7, 1000] {
        assert_ne!(EvalPoint::seeded(s), EvalPoint::default_point());
    }
}

#[test]
fn loop_ker_spectra_match_base_lists() {
    let kz = exact();
    for (i, k, a) in [(0, 1, 0), (0, 1, 1), (0, 2, 0), (1, 1, 0)] {
        let r = eigen_check_loop_ker(&kz, i, k, a).unwrap();
        assert!(r.annihilation && r.all_attained() && r.invertible, "{r:?}");
        assert!(r.spectrum_complete);
    }
}

#[test]
fn loop_ker_i1_eigenvalues_multiplicities() {
    let kz = exact();
    let r = eigen_check_loop_ker(&kz, 1, 1, 0).unwrap();
    let mults: Vec<usize> = r.empirical.iter().map(|e| e.1).collect();
    assert_eq!(mults.iter().sum::<usize>(), r.dim);
    assert_eq!(r.dim, 320);
    assert_eq!(r.empirical.len(), 3);
}

#[test]
fn loop_ker_base_case_decomposes_through_d_partial() {
    let kz = exact();
    for (k, a) in [(1, 0), (1, 1), (2, 0)] {
        assert!(loop_ker_base_residual(&kz, k, a, true).unwrap().is_zero());
        assert!(!loop_ker_base_residual(&kz, k, a, false).unwrap().is_zero());
    }
}

#[test]
fn d_partial_has_two_eigenvalues() {
    let kz = exact();
    for (k, a) in [(1, 0), (1, 1), (2, 0)] {
        let r = eigen_check_d_partial(&kz, k, a).unwrap();
        assert!(r.annihilation && r.all_attained() && !r.invertible, "{r:?}");
    }
}

#[test]
fn commuting_relation() {
    let kz = exact();
    assert!(commuting_residual(&kz, 0, 1, 0).unwrap().is_zero());
    assert!(commuting_residual(&kz, 0, 1, 1).unwrap().is_zero());
}

#[test]
fn kernels_of_p() {
    let kz = exact();
    for i in 1..=3 {
        assert_eq!(ker_p(&kz, i, 0).unwrap().dim(), 0);
    }
    for k in 0..=3 {
        assert_eq!(ker_p(&kz, 0, k).unwrap().dim(), kz.l_dim(0, k));
    }
    let k11 = ker_p(&kz, 1, 1).unwrap();
    let rank = kz.p_map(1, 1).unwrap().rank();
    assert_eq!(k11.dim(), 16 - rank);
    assert_eq!(k11.dim(), kz.p_map(2, 0).unwrap().rank());
}

#[test]
fn x_summands() {
    let kz = exact();
    for (i, a) in [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)] {
        let x = extract_x(&kz, i, a).unwrap();
        assert!(x.idempotent && x.additive().unwrap());
        assert_eq!(x.complement.dim(), expected_x_dim(&kz, i, a));
        assert_eq!(x.image.dim(), kz.l_dim(i, 0) * kz.k_dim(0, a + i));
        assert_eq!(x.complement_char().unwrap(), x_summand_char(i, a).unwrap(), "X_{i},{a}");
    }
    assert_eq!(extract_x(&kz, 0, 0).unwrap().complement.dim(), 15);
}

#[test]
fn x_summand_at_i_two_evaluated() {
    let kz = evaluated(EvalPoint::default_point());
    let x = extract_x(&kz, 2, 0).unwrap();
    assert!(x.idempotent && x.additive().unwrap());
    assert_eq!(x.complement.dim(), expected_x_dim(&kz, 2, 0));
}

#[test]
fn y_summands() {
    let kz = exact();
    for (i, k, a) in [(0, 1, 0), (0, 1, 1), (0, 2, 0), (1, 1, 0)] {
        let y = extract_y(&kz, i, k, a).unwrap();
        assert!(y.idempotent && y.additive().unwrap(), "Y_{i},{k},{a}");
        assert_eq!(y.complement.dim(), expected_y_dim(&kz, i, k, a).unwrap());
    }
    let y = extract_y(&kz, 0, 2, 0).unwrap();
    assert_eq!(y.complement.dim(), 192);
    assert_eq!(y.complement_char().unwrap(), y_summand_char(0, 2, 0).unwrap());
}

#[test]
fn claimed_loop_s_values_are_distinct_for_small_i() {
    let a = claimed_loop_s(1, 0);
    assert_ne!(a[0], a[1]);
    let expected = q(2).sub(&q(-2)).div(&q(2).mul(&q(2))).unwrap();
    assert_eq!(a[0], expected);
}

#[test]
fn extracted_summands_are_weight_graded() {
    let kz = exact();
    let x = extract_x(&kz, 0, 1).unwrap();
    let y = extract_y(&kz, 0, 1, 0).unwrap();
    for s in [&x, &y] {
        for part in [&s.complement, &s.image] {
            let comps = dkoszul::tensorspace::weight_components(part, &s.grading).unwrap();
            assert_eq!(comps.values().sum::<usize>(), part.dim());
        }
    }
}
