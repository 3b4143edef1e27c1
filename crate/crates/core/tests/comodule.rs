use dkoszul::charformula::{berezinian_char, equal_top_char, schur3, LaurentChar};
use dkoszul::comodule::*;
use dkoszul::field::{Evaluated, Exact};
use dkoszul::hecke::{build_standard_r, standard_exact, Side, SymKind, TensorAlgebra};
use dkoszul::koszul::Koszul;
use dkoszul::Error;

fn evaluated() -> Koszul<Evaluated> {
    Koszul::new(TensorAlgebra::new(&build_standard_r(3, 1).unwrap(), Evaluated::default()).unwrap())
}

fn exact() -> Koszul<Exact> {
    Koszul::new(standard_exact())
}

fn w(m: i64, n: i64, p: i64, t: i64) -> WeightLabel {
    WeightLabel::new(m, n, p, t).unwrap()
}

fn dominant(lo: i64, hi: i64) -> impl Iterator<Item = (i64, i64, i64)> {
    (lo..=hi).flat_map(move |m| (lo..=m).flat_map(move |n| (lo..=n).map(move |p| (m, n, p))))
}

#[test]
fn dispatch_is_total_and_disjoint() {
    for (m, n, p) in dominant(-10, 10) {
        for t in -10..=10 {
            let label = w(m, n, p, t);
            assert_eq!(matching_cases(&label).len(), 1, "{label}");
        }
    }
}

#[test]
fn individual_constructions_agree_with_dispatch() {
    for (m, n, p) in dominant(-10, 10) {
        let label = w(m, n, p, 0);
        assert!(reading_conflicts(&label).unwrap().is_empty(), "{label}");
    }
}

#[test]
fn literal_first_item_overlaps_second() {
    // Reading item (1) as `m ≥ n ≥ 0` would also claim every weight of item (2).
    for (m, n, p) in dominant(-4, 4) {
        let literal = n >= 0;
        let case = dispatch(&w(m, n, p, 0)).unwrap();
        let second = matches!(case, CaseTag::EqualTop | CaseTag::YSummand);
        assert_eq!(literal && !CaseTag::Polynomial.matches(m, n, p), second);
    }
}

#[test]
fn highest_weights_are_unique_and_correct() {
    for (m, n, p) in dominant(-6, 6) {
        for t in [-2, 0, 1] {
            let label = w(m, n, p, t);
            let ch = plan(&label).unwrap().character().unwrap();
            assert_eq!(maximal_weights(&ch), vec![label.highest_weight()], "{label}");
            assert_eq!(ch.coeff(&label.highest_weight()), 1);
        }
    }
}

#[test]
fn plans_for_named_weights() {
    let b = plan(&w(1, 1, 1, 1)).unwrap();
    assert_eq!(b.base, BaseConstruction::Berezinian);
    assert_eq!(b.character().unwrap().to_string(), "x1*x2*x3*y^-1");
    for (m, n, p) in dominant(0, 3) {
        let pl = plan(&w(m, n, p, 0)).unwrap();
        assert_eq!(pl.case, Some(CaseTag::Polynomial));
        assert!(matches!(pl.base, BaseConstruction::YoungModule { .. }));
    }
    let pl = plan(&w(0, 0, -1, 0)).unwrap();
    assert_eq!(pl.base, BaseConstruction::ImageSplitting { k: 2, l: 1 });
    assert_eq!(pl.twist, -1);
    assert_eq!(pl.to_string(), "Im d(2,1)·Ber^-1");
}

#[test]
fn equal_top_closed_form_agrees_with_assembly() {
    for m in 0..=3 {
        for p in -4..0 {
            let pl = plan(&w(m, m, p, 0)).unwrap();
            assert_eq!(pl.character().unwrap(), equal_top_char(m, p).unwrap());
        }
    }
}

#[test]
fn berezinian_line() {
    let kz = exact();
    let b = berezinian(&kz).unwrap();
    assert_eq!(b.dim(), 1);
    assert_eq!(b.character().unwrap(), berezinian_char());
    let v = &b.sub.basis()[0];
    assert!(kz.d(3, 1).unwrap().apply(v).is_empty());
    assert!(!kz.d(2, 0).unwrap().image().contains(v));
}

#[test]
fn characters_of_basic_spaces() {
    let kz = exact();
    let t = kz.algebra();
    let v = character_of(&t.sym(1).sub, &t.tensor_grading(Side::Co, 1)).unwrap();
    assert_eq!(v, "x1 + x2 + x3 + y".parse().unwrap());
    let l3 = character_of(&t.ext(3).sub, &t.tensor_grading(Side::Co, 3)).unwrap();
    let e = |s: &str| s.parse::<LaurentChar>().unwrap();
    let expected = e("x1*x2*x3")
        .add(&e("x1*x2 + x1*x3 + x2*x3").mul(&LaurentChar::y()).unwrap())
        .add(&e("x1 + x2 + x3").mul(&e("y^2")).unwrap())
        .add(&e("y^3"));
    assert_eq!(l3, expected);
}

#[test]
fn tensor_products_are_multiplicative() {
    let kz = evaluated();
    let t = kz.algebra();
    for (i, k) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let s = ExplicitModule {
            sub: t.sym(i).sub.clone(),
            ambient: t.tensor_grading(Side::Co, i),
        };
        let l = ExplicitModule {
            sub: t.space(Side::Co, SymKind::Ext, k).sub.clone(),
            ambient: t.tensor_grading(Side::Co, k),
        };
        let st = s.tensor(&l);
        assert_eq!(st.dim(), s.dim() * l.dim());
        assert_eq!(st.character().unwrap(), s.character().unwrap().mul(&l.character().unwrap()).unwrap());
    }
}

#[test]
fn vector_level_duals_match_inverted_characters() {
    let kz = evaluated();
    let t = kz.algebra();
    for lambda in [vec![2], vec![1, 1], vec![2, 1]] {
        let y = t.young_module(&lambda, 8).unwrap();
        let m = ExplicitModule {
            sub: y.sub.clone(),
            ambient: t.tensor_grading(Side::Co, lambda.iter().sum()),
        };
        let d = m.dual();
        assert_eq!(d.dim(), m.dim());
        assert_eq!(d.character().unwrap(), dual_char(&m.character().unwrap()));
    }
}

#[test]
fn explicit_realizations_match_assembled_characters() {
    let kz = evaluated();
    let weights = [
        w(0, 0, 0, 0),
        w(2, 1, 0, 0),
        w(1, 1, 1, 1),
        w(1, 1, -1, 0),
        w(2, 1, -1, 0),
        w(0, -1, -1, 0),
        w(1, -1, -1, 0),
        w(-1, -1, -1, 0),
        w(-1, -1, -2, 0),
        w(0, 0, 0, 2),
        w(0, -2, -2, 3),
        w(3, 0, 0, 3),
        w(2, 0, 0, 3),
    ];
    let mut cases = std::collections::BTreeSet::new();
    for label in weights {
        let b = build_irrep(&kz, &label, 8).unwrap();
        assert!(b.explicit.is_some(), "{label}: {:?}", b.plan.degree());
        assert!(b.verified().unwrap(), "{label} {}", b.plan);
        cases.insert(b.plan.case.unwrap());
    }
    assert_eq!(cases.len(), 9, "{cases:?}");
}

#[test]
fn over_budget_returns_plan_and_character() {
    let kz = exact();
    let b = build_irrep(&kz, &w(0, 0, -1, 0), 5).unwrap();
    assert!(b.explicit.is_none());
    assert!(matches!(b.skipped, Some(Error::BudgetExceeded { needed: 9, budget: 5 })));
    assert_eq!(b.character, plan(&w(0, 0, -1, 0)).unwrap().character().unwrap());
}

#[test]
fn decomposition_series_of_exceptional_images() {
    let kz = evaluated();
    for k in 3..=4 {
        let (lhs, rhs) = decomposition_series(&kz, k).unwrap();
        assert_eq!(lhs, rhs, "k = {k}");
    }
    let im = kz.image_d(2, 0).unwrap();
    assert_eq!(im.dim(), 7);
    let ch = LaurentChar::from_weights(im.grading.weights().iter()).unwrap();
    assert_eq!(ch, young_char(&[1, 1]).unwrap());
}

#[test]
fn young_characters_of_small_partitions() {
    // Plain Schur functions are the y-free part of the hook characters.
    for (m, n) in [(1, 0), (2, 0), (1, 1), (2, 1)] {
        let ch = young_char(&[m as usize, n as usize]).unwrap();
        let no_y: LaurentChar = ch
            .terms()
            .filter(|(e, _)| e[3] == 0)
            .fold(LaurentChar::zero(), |acc, (e, c)| acc.add(&LaurentChar::monomial(*e, *c).unwrap()));
        assert_eq!(no_y, schur3(m, n, 0).unwrap());
    }
}
