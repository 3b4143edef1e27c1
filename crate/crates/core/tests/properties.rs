use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use dkoszul::charformula::{schur3, two_row_expr, x_summand_expr, LaurentChar, RationalCharExpr};
use dkoszul::comodule::young_char;
use dkoszul::linalg::{image_kernel, Matrix};
use dkoszul::poly::ZPoly;
use dkoszul::scalar::{eval_at, q_int};
use dkoszul::{EvalPoint, Scalar};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn poly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-3i64..=3, 0..4).prop_map(|cs| ZPoly::from_i64s(&cs))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=4, poly(), poly().prop_filter("nonzero", |d| !d.is_zero()))
        .prop_map(|(n, d, num, den)| Scalar::from_parts(rat(n, d), num, den))
}

fn rational_matrix(max: usize) -> impl Strategy<Value = Matrix<BigRational>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        // Mostly zeros, so that rank deficiency actually occurs.
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 1 => -2i64..=2], c), r)
            .prop_map(|rows| Matrix::from_dense(rows.into_iter().map(|r| r.into_iter().map(|x| rat(x, 1)).collect()).collect()))
    })
}

proptest! {
    #[test]
    fn q_int_is_additive(m in -6i64..=6, n in -6i64..=6) {
        let rhs = q_int(m).add(&Scalar::p_pow(m).mul(&q_int(n)));
        prop_assert_eq!(q_int(m + n), rhs);
    }

    #[test]
    fn normalization_is_idempotent(s in scalar()) {
        let again = Scalar::from_parts(s.content().clone(), s.numerator().clone(), s.denominator().clone());
        prop_assert_eq!(&again, &s);
        prop_assert_eq!(s.to_string().parse::<Scalar>().unwrap(), s);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar()) {
        let pt = EvalPoint::default_point();
        let (Ok(ea), Ok(eb)) = (eval_at(&a, &pt), eval_at(&b, &pt)) else {
            return Ok(());
        };
        prop_assert_eq!(eval_at(&a.add(&b), &pt).unwrap(), &ea + &eb);
        prop_assert_eq!(eval_at(&a.mul(&b), &pt).unwrap(), &ea * &eb);
        if let Some(inv) = a.inv() {
            if let Ok(ei) = eval_at(&inv, &pt) {
                prop_assert_eq!(ei * &ea, rat(1, 1));
            }
        }
    }

    #[test]
    fn rank_nullity(m in rational_matrix(7)) {
        let (im, ker) = image_kernel(&m);
        prop_assert_eq!(im.dim() + ker.dim(), m.cols());
        prop_assert_eq!(im.dim(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
        for v in ker.basis() {
            prop_assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn schur_is_symmetric(m in -4i64..=4, dn in 0i64..=3, dp in 0i64..=3) {
        let s = schur3(m, m - dn, m - dn - dp).unwrap();
        prop_assert_eq!(s.swap_x(0, 1), s.clone());
        prop_assert_eq!(s.swap_x(1, 2), s);
    }
}

#[test]
fn exact_matrices_keep_their_rank_at_the_evaluation_point() {
    let pt = EvalPoint::default_point();
    let q = Scalar::p();
    let m = Matrix::from_dense(vec![
        vec![q.clone(), Scalar::one(), q_int(2)],
        vec![Scalar::one(), q.inv().unwrap(), q_int(2).div(&q).unwrap()],
        vec![q_int(3), Scalar::zero(), Scalar::one()],
    ]);
    let ev = m.try_map_entries(|s| eval_at(s, &pt)).unwrap();
    assert_eq!(m.rank(), 2);
    assert_eq!(ev.rank(), m.rank());
}

/// Semistandard tableaux of shape `λ` in the letters `1 < 2 < 3`.
fn tableau_schur(lambda: &[usize]) -> LaurentChar {
    super_tableaux(lambda, 0)
}

/// Fillings by `1 < 2 < 3 < 1'`: unprimed letters strictly increase down
/// columns and weakly along rows; `1'` strictly along rows, weakly down columns.
fn super_tableaux(lambda: &[usize], odd: usize) -> LaurentChar {
    let cells: Vec<(usize, usize)> = lambda.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut grid = vec![vec![0u8; lambda.first().copied().unwrap_or(0)]; lambda.len()];
    let mut acc = LaurentChar::zero();
    fill(&cells, 0, &mut grid, 3 + odd as u8, &mut acc);
    acc
}

fn fill(cells: &[(usize, usize)], at: usize, grid: &mut Vec<Vec<u8>>, letters: u8, acc: &mut LaurentChar) {
    if at == cells.len() {
        let mut e = [0i32; 4];
        for &(r, c) in cells {
            e[(grid[r][c] - 1) as usize] += 1;
        }
        *acc = acc.add(&LaurentChar::monomial(e, 1).unwrap());
        return;
    }
    let (r, c) = cells[at];
    for v in 1..=letters {
        let odd = v == 4;
        if c > 0 {
            let left = grid[r][c - 1];
            if left > v || (odd && left == v) {
                continue;
            }
        }
        if r > 0 {
            let up = grid[r - 1][c];
            if up > v || (!odd && up == v) {
                continue;
            }
        }
        grid[r][c] = v;
        fill(cells, at + 1, grid, letters, acc);
    }
    grid[r][c] = 0;
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n.min(max))
        .rev()
        .flat_map(|first| {
            partitions(n - first, first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[test]
fn schur_matches_tableaux() {
    for n in 0..=6 {
        for lambda in partitions(n, n).into_iter().filter(|l| l.len() <= 3) {
            let part = |i: usize| lambda.get(i).copied().unwrap_or(0) as i64;
            assert_eq!(schur3(part(0), part(1), part(2)).unwrap(), tableau_schur(&lambda), "{lambda:?}");
        }
    }
    assert!(tableau_schur(&[1, 1, 1, 1]).is_zero());
}

#[test]
fn hook_characters_match_super_tableaux() {
    for n in 0..=6 {
        for lambda in partitions(n, n) {
            let oracle = super_tableaux(&lambda, 1);
            if lambda.len() <= 3 {
                assert_eq!(young_char(&lambda).unwrap(), oracle, "{lambda:?}");
            }
            let is_hook = lambda.get(3).is_none_or(|&x| x <= 1);
            assert_eq!(oracle.is_zero(), !is_hook, "{lambda:?}");
        }
    }
}

#[test]
fn pieri_rule() {
    let box1 = schur3(1, 0, 0).unwrap();
    for m in 0..=6i64 {
        for n in 0..=m {
            for p in 0..=n {
                if m + n + p > 6 {
                    continue;
                }
                let mut rhs = schur3(m + 1, n, p).unwrap();
                if n < m {
                    rhs = rhs.add(&schur3(m, n + 1, p).unwrap());
                }
                if p < n {
                    rhs = rhs.add(&schur3(m, n, p + 1).unwrap());
                }
                assert_eq!(schur3(m, n, p).unwrap().mul(&box1).unwrap(), rhs, "({m},{n},{p})");
            }
        }
    }
}

fn divides(e: RationalCharExpr) -> bool {
    e.to_poly().is_ok()
}

#[test]
fn closed_form_quotients_divide_exactly() {
    for m in 0..=6 {
        for n in 0..=m {
            assert!(divides(two_row_expr(m, n).unwrap()), "two-row ({m},{n})");
        }
    }
    for i in 0..=2 {
        for a in -1..=2 {
            if a + i + 1 < 0 {
                continue;
            }
            assert!(divides(x_summand_expr(i, a).unwrap()), "X_{i},{a}");
        }
    }
    let odd = RationalCharExpr::new(LaurentChar::x(1), LaurentChar::x(2).add(&LaurentChar::y())).unwrap();
    assert!(!divides(odd));
}
