//! Characters of constructed comodules and the dominant-weight dispatch that
//! assembles `I(m,n,p|t)` from Young modules, images of `d`, the summands
//! `X` and `Y`, duals and Berezinian twists.
//!
//! Labels follow the construction: `I(m,n,p|t) = I(m−t,n−t,p−t|0) ⊗ Ber^t`
//! with `Ber = I(1,1,1|1)`, whose character is `x1x2x3y^{-1}`. The highest
//! weight of `I(m,n,p|t)` is therefore `(m,n,p|−t)` in the exponents of
//! `x1,x2,x3,y`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::charformula::{
    berezinian_char, hook_char, image_d_char, one_row_char, two_row_char, x_summand_char, y_summand_char,
    Exponent, LaurentChar,
};
use crate::doublecx::{extract_x, extract_y};
use crate::error::{Error, Result};
use crate::field::{Backend, Field};
use crate::hecke::Side;
use crate::koszul::Koszul;
use crate::linalg::{Matrix, SparseVec, Subspace};
use crate::tensorspace::{basis_weights, Grading};

/// A dominant weight `(m,n,p|t)`, `m ≥ n ≥ p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WeightLabel {
    pub m: i64,
    pub n: i64,
    pub p: i64,
    pub t: i64,
}

impl WeightLabel {
    pub fn new(m: i64, n: i64, p: i64, t: i64) -> Result<Self> {
        if m < n || n < p {
            return Err(Error::NonDominant(m, n, p));
        }
        Ok(WeightLabel { m, n, p, t })
    }

    /// `(m−t, n−t, p−t|0)`.
    pub fn untwisted(&self) -> WeightLabel {
        WeightLabel {
            m: self.m - self.t,
            n: self.n - self.t,
            p: self.p - self.t,
            t: 0,
        }
    }

    /// Exponent vector of the highest weight: `(m, n, p, −t)`.
    pub fn highest_weight(&self) -> Exponent {
        [self.m as i32, self.n as i32, self.p as i32, -self.t as i32]
    }
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}|{})", self.m, self.n, self.p, self.t)
    }
}

impl std::str::FromStr for WeightLabel {
    type Err = Error;

    /// `m,n,p,t` or `m,n,p|t`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<i64> = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split([',', '|'])
            .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad weight `{s}`"))))
            .collect::<Result<_>>()?;
        match parts[..] {
            [m, n, p, t] => WeightLabel::new(m, n, p, t),
            [m, n, p] => WeightLabel::new(m, n, p, 0),
            _ => Err(Error::Parse(format!("weight `{s}` needs 3 or 4 entries"))),
        }
    }
}

/// The disjoint cases of the dispatch for an untwisted weight `(m,n,p|0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    /// `p ≥ 0`: the Young module `M_{(m,n,p)}`.
    Polynomial,
    /// `m = n ≥ 0 > p`: `Im d_{m+2,m−p} ⊗ Ber^{m−1}`.
    EqualTop,
    /// `m > n ≥ 0 > p`: `Y_{m−n−1,n+2,n−m−p−2} ⊗ Ber^{n−1}`.
    YSummand,
    /// `m ≥ 0 > n = −1`: `X_{m,−m−p−1} ⊗ Ber^{−1}`.
    XSummand,
    /// `m ≥ 0 > −2 ≥ n`: reflection.
    ReflectMixed,
    /// `m = n = −1`: `I(−p,0,0|0)* ⊗ Ber^{−1}`.
    DualOneRow,
    /// `m = −1 > n`: reflection.
    ReflectNegative,
    /// `m = −2`: `I(−p−1,−n−1,0|0)* ⊗ Ber^{−2}`.
    DualTwoRow,
    /// `−2 > m`: reflection.
    ReflectDeep,
}

impl CaseTag {
    pub const ALL: [CaseTag; 9] = [
        CaseTag::Polynomial,
        CaseTag::EqualTop,
        CaseTag::YSummand,
        CaseTag::XSummand,
        CaseTag::ReflectMixed,
        CaseTag::DualOneRow,
        CaseTag::ReflectNegative,
        CaseTag::DualTwoRow,
        CaseTag::ReflectDeep,
    ];

    /// Item label in the case enumeration.
    pub fn item(&self) -> &'static str {
        match self {
            CaseTag::Polynomial => "1",
            CaseTag::EqualTop => "2a",
            CaseTag::YSummand => "2b",
            CaseTag::XSummand => "3a",
            CaseTag::ReflectMixed => "3b",
            CaseTag::DualOneRow => "4a",
            CaseTag::ReflectNegative => "4b",
            CaseTag::DualTwoRow => "4c",
            CaseTag::ReflectDeep => "4d",
        }
    }

    /// The guard of this case on an untwisted dominant weight.
    pub fn matches(&self, m: i64, n: i64, p: i64) -> bool {
        match self {
            CaseTag::Polynomial => p >= 0,
            CaseTag::EqualTop => m == n && n >= 0 && p < 0,
            CaseTag::YSummand => m > n && n >= 0 && p < 0,
            CaseTag::XSummand => m >= 0 && n == -1,
            CaseTag::ReflectMixed => m >= 0 && n <= -2,
            CaseTag::DualOneRow => m == -1 && n == -1,
            CaseTag::ReflectNegative => m == -1 && n < -1,
            CaseTag::DualTwoRow => m == -2,
            CaseTag::ReflectDeep => m < -2,
        }
    }
}

/// All cases whose guard holds; a total, disjoint dispatch yields exactly one.
pub fn matching_cases(w: &WeightLabel) -> Vec<CaseTag> {
    let u = w.untwisted();
    CaseTag::ALL.iter().copied().filter(|c| c.matches(u.m, u.n, u.p)).collect()
}

/// The unique case of an untwisted weight.
pub fn dispatch(w: &WeightLabel) -> Result<CaseTag> {
    match matching_cases(w)[..] {
        [c] => Ok(c),
        ref cs => Err(Error::OutOfRange(format!("{w} matches {} cases", cs.len()))),
    }
}

/// The recipes attached to each individual defining construction, read off
/// their own guards (rather than the case enumeration). A weight may match
/// several; they must all agree with the dispatch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reading {
    pub construction: &'static str,
    pub recipe: String,
}

pub fn construction_readings(w: &WeightLabel) -> Vec<Reading> {
    let WeightLabel { m, n, p, .. } = w.untwisted();
    let mut out = Vec::new();
    let push = |out: &mut Vec<Reading>, c: &'static str, r: String| out.push(Reading { construction: c, recipe: r });
    if p >= 0 {
        push(&mut out, "young", format!("M({m},{n},{p})"));
    }
    // I(m,n,p)* ⊗ Ber*^3 relabels (−p−2,−n−2,−m−2) for p ≥ 1.
    if -m - 2 >= 1 {
        push(&mut out, "reflect", reflect_recipe(m, n, p));
    }
    // I(m,n,0)* ⊗ Ber*^2 relabels (−2,−n−1,−m−1).
    let (a, b) = (-p - 1, -n - 1);
    if m == -2 && a >= b && b >= 0 {
        push(&mut out, "dual_two_row", format!("M({a},{b},0)*·Ber^-2"));
    }
    // I(m,0,0)* ⊗ Ber* relabels (−1,−1,−m).
    if m == -1 && n == -1 && -p >= 0 {
        push(&mut out, "dual_one_row", format!("M({},0,0)*·Ber^-1", -p));
    }
    if m == n && m >= 0 && p < 0 {
        push(&mut out, "image_d", format!("Im d({},{})·Ber^{}", m + 2, m - p, m - 1));
    }
    // I(m,m,p)* ⊗ Ber*^3 relabels (−2−p,−m−2,−m−2) for m ≥ 0 > p.
    if n == p && n <= -2 && -2 - m < 0 {
        push(&mut out, "reflect", reflect_recipe(m, n, p));
    }
    if m >= 0 && n == -1 {
        push(&mut out, "x_summand", format!("X({},{})·Ber^-1", m, -m - p - 1));
    }
    if m > n && n >= 0 && p < 0 {
        push(&mut out, "y_summand", format!("Y({},{},{})·Ber^{}", m - n - 1, n + 2, n - m - p - 2, n - 1));
    }
    if m != -2 && n <= -2 {
        push(&mut out, "reflect", reflect_recipe(m, n, p));
    }
    out.dedup();
    out
}

fn reflect_recipe(m: i64, n: i64, p: i64) -> String {
    format!("I({},{},{})*·Ber^-3", -2 - p, -2 - n, -2 - m)
}

/// Recipe string of the dispatch case, in the same format as
/// [`construction_readings`].
pub fn case_recipe(w: &WeightLabel) -> Result<String> {
    let WeightLabel { m, n, p, .. } = w.untwisted();
    Ok(match dispatch(w)? {
        CaseTag::Polynomial => format!("M({m},{n},{p})"),
        CaseTag::EqualTop => format!("Im d({},{})·Ber^{}", m + 2, m - p, m - 1),
        CaseTag::YSummand => format!("Y({},{},{})·Ber^{}", m - n - 1, n + 2, n - m - p - 2, n - 1),
        CaseTag::XSummand => format!("X({},{})·Ber^-1", m, -m - p - 1),
        CaseTag::DualOneRow => format!("M({},0,0)*·Ber^-1", -p),
        CaseTag::DualTwoRow => format!("M({},{},0)*·Ber^-2", -p - 1, -n - 1),
        CaseTag::ReflectMixed | CaseTag::ReflectNegative | CaseTag::ReflectDeep => reflect_recipe(m, n, p),
    })
}

/// Weights whose individual constructions disagree with the dispatch.
pub fn reading_conflicts(w: &WeightLabel) -> Result<Vec<Reading>> {
    let recipe = case_recipe(w)?;
    let readings = construction_readings(w);
    if readings.is_empty() {
        return Ok(vec![Reading {
            construction: "none",
            recipe: String::new(),
        }]);
    }
    Ok(readings.into_iter().filter(|r| r.recipe != recipe).collect())
}

/// The underlying construction of a plan node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseConstruction {
    YoungModule { partition: Vec<usize> },
    ImageSplitting { k: i64, l: i64 },
    ExtractX { i: i64, a: i64 },
    ExtractY { i: i64, k: i64, a: i64 },
    Berezinian,
    /// The dual of the single child plan.
    Dual,
}

/// `base ⊗ Ber^{twist}`, where `base` is a construction or the dual of a child.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionPlan {
    pub weight: WeightLabel,
    pub case: Option<CaseTag>,
    pub base: BaseConstruction,
    pub duals: u32,
    pub twist: i64,
    pub children: Vec<ConstructionPlan>,
}

/// Tensor degree of a Berezinian factor (`Λ_3 ⊗ V*`).
pub const BEREZINIAN_DEGREE: usize = 4;

impl ConstructionPlan {
    /// Total tensor degree (covariant plus contravariant legs) of the
    /// explicit realization.
    pub fn degree(&self) -> usize {
        let base = match &self.base {
            BaseConstruction::YoungModule { partition } => partition.iter().sum(),
            BaseConstruction::ImageSplitting { k, l } => (k + l + 2) as usize,
            BaseConstruction::ExtractX { i, a } => (2 * i + a + 2) as usize,
            BaseConstruction::ExtractY { i, k, a } => (2 * i + 2 * k + a + 4) as usize,
            BaseConstruction::Berezinian => 0,
            BaseConstruction::Dual => self.children[0].degree(),
        };
        base + BEREZINIAN_DEGREE * self.twist.unsigned_abs() as usize
    }

    /// Character assembled from closed forms: duals invert variables,
    /// twists multiply by `(x1x2x3/y)^{twist}`.
    pub fn character(&self) -> Result<LaurentChar> {
        let base = match &self.base {
            BaseConstruction::YoungModule { partition } => young_char(partition)?,
            BaseConstruction::ImageSplitting { k, l } => image_d_char(*k, *l)?,
            BaseConstruction::ExtractX { i, a } => x_summand_char(*i, *a)?,
            BaseConstruction::ExtractY { i, k, a } => y_summand_char(*i, *k, *a)?,
            BaseConstruction::Berezinian => LaurentChar::one(),
            BaseConstruction::Dual => dual_char(&self.children[0].character()?),
        };
        base.mul(&berezinian_power(self.twist)?)
    }

    fn recipe(&self) -> String {
        let base = match &self.base {
            BaseConstruction::YoungModule { partition } => format!("M{partition:?}"),
            BaseConstruction::ImageSplitting { k, l } => format!("Im d({k},{l})"),
            BaseConstruction::ExtractX { i, a } => format!("X({i},{a})"),
            BaseConstruction::ExtractY { i, k, a } => format!("Y({i},{k},{a})"),
            BaseConstruction::Berezinian => "1".to_string(),
            BaseConstruction::Dual => format!("({})*", self.children[0].recipe()),
        };
        if self.twist == 0 {
            base
        } else {
            format!("{base}·Ber^{}", self.twist)
        }
    }
}

impl fmt::Display for ConstructionPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.recipe())
    }
}

/// `(x1x2x3/y)^e`.
pub fn berezinian_power(e: i64) -> Result<LaurentChar> {
    let b = if e >= 0 { berezinian_char() } else { dual_char(&berezinian_char()) };
    b.pow(e.unsigned_abs() as u32)
}

/// `x_i ↦ x_i^{−1}`, `y ↦ y^{−1}`.
pub fn dual_char(c: &LaurentChar) -> LaurentChar {
    c.dual()
}

/// `ch M_λ` for a partition with at most three parts, by the hook, two-row
/// and one-row closed forms.
pub fn young_char(partition: &[usize]) -> Result<LaurentChar> {
    let mut parts: Vec<i64> = partition.iter().map(|&x| x as i64).collect();
    if parts.len() > 3 {
        return Err(Error::OutOfRange(format!("{partition:?} has more than three parts")));
    }
    parts.resize(3, 0);
    let (m, n, p) = (parts[0], parts[1], parts[2]);
    if p >= 1 {
        hook_char(m, n, p)
    } else if n >= 1 {
        two_row_char(m, n)
    } else {
        one_row_char(m)
    }
}

/// The construction plan of a dominant weight.
pub fn plan(w: &WeightLabel) -> Result<ConstructionPlan> {
    let u = w.untwisted();
    let (m, n, p) = (u.m, u.n, u.p);
    let case = dispatch(w)?;
    let node = |base, twist, children| ConstructionPlan {
        weight: *w,
        case: Some(case),
        duals: matches!(base, BaseConstruction::Dual) as u32,
        base,
        twist: twist + w.t,
        children,
    };
    let reflect = |mm, nn, pp, twist| -> Result<ConstructionPlan> {
        let child = plan(&WeightLabel::new(mm, nn, pp, 0)?)?;
        Ok(node(BaseConstruction::Dual, twist, vec![child]))
    };
    Ok(match case {
        CaseTag::Polynomial if m == 0 && w.t != 0 => node(BaseConstruction::Berezinian, 0, vec![]),
        CaseTag::Polynomial => {
            let partition = [m, n, p].iter().filter(|&&x| x > 0).map(|&x| x as usize).collect();
            node(BaseConstruction::YoungModule { partition }, 0, vec![])
        }
        CaseTag::EqualTop => node(BaseConstruction::ImageSplitting { k: m + 2, l: m - p }, m - 1, vec![]),
        CaseTag::YSummand => node(
            BaseConstruction::ExtractY {
                i: m - n - 1,
                k: n + 2,
                a: n - m - p - 2,
            },
            n - 1,
            vec![],
        ),
        CaseTag::XSummand => node(BaseConstruction::ExtractX { i: m, a: -m - p - 1 }, -1, vec![]),
        CaseTag::ReflectMixed | CaseTag::ReflectNegative | CaseTag::ReflectDeep => {
            reflect(-2 - p, -2 - n, -2 - m, -3)?
        }
        CaseTag::DualOneRow => reflect(-p, 0, 0, -1)?,
        CaseTag::DualTwoRow => reflect(-p - 1, -n - 1, 0, -2)?,
    })
}

/// Weights `μ` of `c` maximal for the order generated by the simple roots
/// `ε1−ε2`, `ε2−ε3`, `ε3−δ`.
pub fn maximal_weights(c: &LaurentChar) -> Vec<Exponent> {
    let ws: Vec<Exponent> = c.terms().filter(|(_, &k)| k != 0).map(|(e, _)| *e).collect();
    let above = |nu: &Exponent, mu: &Exponent| {
        let d: Vec<i32> = (0..4).map(|i| nu[i] - mu[i]).collect();
        let c1 = d[0];
        let c2 = c1 + d[1];
        let c3 = c2 + d[2];
        nu != mu && c1 >= 0 && c2 >= 0 && c3 >= 0 && d[3] == -c3
    };
    ws.iter()
        .filter(|mu| !ws.iter().any(|nu| above(nu, mu)))
        .copied()
        .collect()
}

/// A subspace of a coordinate space with weighted coordinates.
#[derive(Clone, Debug)]
pub struct ExplicitModule<F: Field> {
    pub sub: Subspace<F>,
    pub ambient: Grading,
}

impl<F: Field> ExplicitModule<F> {
    pub fn dim(&self) -> usize {
        self.sub.dim()
    }

    pub fn tensor(&self, other: &ExplicitModule<F>) -> ExplicitModule<F> {
        let nb = other.sub.ambient_dim();
        let mut vecs: Vec<SparseVec<F>> = Vec::with_capacity(self.dim() * other.dim());
        for a in self.sub.basis() {
            for b in other.sub.basis() {
                let mut v = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (j, y) in b {
                        v.push((i * nb + j, x.mul(y)));
                    }
                }
                vecs.push(v);
            }
        }
        ExplicitModule {
            sub: Subspace::span(self.sub.ambient_dim() * nb, &vecs),
            ambient: self.ambient.tensor(&other.ambient),
        }
    }

    /// The dual, realized in the dual coordinate space as the image of the
    /// transpose of a weight-preserving projector onto the subspace.
    pub fn dual(&self) -> ExplicitModule<F> {
        let n = self.sub.ambient_dim();
        let proj = match self.sub.projector() {
            Some(p) => p.clone(),
            None => pivot_projector(&self.sub),
        };
        ExplicitModule {
            sub: proj.transpose().image(),
            ambient: self.ambient.dual(),
        }
        .check_ambient(n)
    }

    fn check_ambient(self, n: usize) -> Self {
        debug_assert_eq!(self.sub.ambient_dim(), n);
        self
    }

    pub fn character(&self) -> Result<LaurentChar> {
        character_of(&self.sub, &self.ambient)
    }
}

/// `π e_{pivot_k} = b_k`, `π e_j = 0` off pivots; idempotent with image `W`.
fn pivot_projector<F: Field>(w: &Subspace<F>) -> Matrix<F> {
    let n = w.ambient_dim();
    let mut cols: Vec<SparseVec<F>> = vec![Vec::new(); n];
    for (b, &piv) in w.basis().iter().zip(w.pivots()) {
        cols[piv] = b.clone();
    }
    Matrix::from_columns(n, &cols)
}

/// `Σ_μ dim W_μ x^μ` for a graded subspace.
pub fn character_of<F: Field>(w: &Subspace<F>, ambient: &Grading) -> Result<LaurentChar> {
    LaurentChar::from_weights(basis_weights(w, ambient)?.iter())
}

/// The Berezinian line: the homology representative at `Λ_3 ⊗ S*_1`.
pub fn berezinian<B: Backend>(kz: &Koszul<B>) -> Result<ExplicitModule<B::F>> {
    require_standard(kz)?;
    let (h, _) = kz.homology_at(3, 1)?;
    Ok(ExplicitModule {
        sub: h,
        ambient: kz.k_grading(3, 1),
    })
}

fn require_standard<B: Backend>(kz: &Koszul<B>) -> Result<()> {
    if kz.algebra().is_weight_preserving() && kz.algebra().d() == 4 {
        Ok(())
    } else {
        Err(Error::NonStandardR)
    }
}

/// Realize a plan in tensor space. Fails with a budget error when its
/// degree exceeds `budget`.
pub fn realize<B: Backend>(kz: &Koszul<B>, plan: &ConstructionPlan, budget: usize) -> Result<ExplicitModule<B::F>> {
    require_standard(kz)?;
    let needed = plan.degree();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let t = kz.algebra();
    let base = match &plan.base {
        BaseConstruction::YoungModule { partition } => {
            let n = partition.iter().sum();
            let y = t.young_module(partition, budget)?;
            ExplicitModule {
                sub: y.sub.clone(),
                ambient: t.tensor_grading(Side::Co, n),
            }
        }
        BaseConstruction::ImageSplitting { k, l } => ExplicitModule {
            sub: kz.d(*k, *l)?.image(),
            ambient: kz.k_grading(k + 1, l + 1),
        },
        BaseConstruction::ExtractX { i, a } => {
            let x = extract_x(kz, *i, *a)?;
            ExplicitModule {
                sub: x.complement,
                ambient: x.grading,
            }
        }
        BaseConstruction::ExtractY { i, k, a } => {
            let y = extract_y(kz, *i, *k, *a)?;
            ExplicitModule {
                sub: y.complement,
                ambient: y.grading,
            }
        }
        BaseConstruction::Berezinian => ExplicitModule {
            sub: Subspace::full(1),
            ambient: Grading::unit(4),
        },
        BaseConstruction::Dual => realize(kz, &plan.children[0], budget)?.dual(),
    };
    if plan.twist == 0 {
        return Ok(base);
    }
    let ber = berezinian(kz)?;
    let factor = if plan.twist > 0 { ber } else { ber.dual() };
    let mut out = base;
    for _ in 0..plan.twist.unsigned_abs() {
        out = out.tensor(&factor);
    }
    Ok(out)
}

/// Result of [`build_irrep`].
#[derive(Clone, Debug)]
pub struct IrrepBuild<F: Field> {
    pub plan: ConstructionPlan,
    pub character: LaurentChar,
    pub explicit: Option<ExplicitModule<F>>,
    /// Set when the explicit realization was skipped.
    pub skipped: Option<Error>,
}

impl<F: Field> IrrepBuild<F> {
    /// The explicit subspace exists and its character equals the assembled one.
    pub fn verified(&self) -> Result<bool> {
        match &self.explicit {
            Some(e) => Ok(e.character()? == self.character),
            None => Ok(false),
        }
    }
}

/// Plan, assembled character and (within budget) the explicit module.
pub fn build_irrep<B: Backend>(kz: &Koszul<B>, w: &WeightLabel, budget: usize) -> Result<IrrepBuild<B::F>> {
    let plan = plan(w)?;
    let character = plan.character()?;
    let (explicit, skipped) = match realize(kz, &plan, budget) {
        Ok(e) => (Some(e), None),
        Err(e @ Error::BudgetExceeded { .. }) => (None, Some(e)),
        Err(e) => return Err(e),
    };
    Ok(IrrepBuild {
        plan,
        character,
        explicit,
        skipped,
    })
}

/// `ch Im d_{k,k−2}` computed in tensor space, and the sum of the characters
/// of `I(1,1,2−k|2−k)` and `I(1,1,3−k|3−k)` assembled from the dispatch.
pub fn decomposition_series<B: Backend>(kz: &Koszul<B>, k: i64) -> Result<(LaurentChar, LaurentChar)> {
    let im = kz.image_d(k, k - 2)?;
    let lhs = LaurentChar::from_weights(im.grading.weights().iter())?;
    let a = plan(&WeightLabel::new(1, 1, 2 - k, 2 - k)?)?.character()?;
    let b = plan(&WeightLabel::new(1, 1, 3 - k, 3 - k)?)?.character()?;
    Ok((lhs, a.add(&b)))
}

/// Multiplicities by weight, as sorted `(exponent, dim)` pairs.
pub fn dims_by_weight(c: &LaurentChar) -> BTreeMap<String, i64> {
    c.terms()
        .map(|(e, k)| (LaurentChar::monomial(*e, 1).map(|m| m.to_string()).unwrap_or_default(), *k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(m: i64, n: i64, p: i64, t: i64) -> WeightLabel {
        WeightLabel::new(m, n, p, t).unwrap()
    }

    #[test]
    fn parse_labels() {
        assert_eq!("1,1,1,1".parse::<WeightLabel>().unwrap(), w(1, 1, 1, 1));
        assert_eq!("(2,0,-1|3)".parse::<WeightLabel>().unwrap(), w(2, 0, -1, 3));
        assert!("0,1,0,0".parse::<WeightLabel>().is_err());
    }

    #[test]
    fn berezinian_plan() {
        let pl = plan(&w(1, 1, 1, 1)).unwrap();
        assert_eq!(pl.base, BaseConstruction::Berezinian);
        assert_eq!(pl.character().unwrap(), berezinian_char());
    }

    #[test]
    fn equal_top_example() {
        let pl = plan(&w(0, 0, -1, 0)).unwrap();
        assert_eq!(pl.case, Some(CaseTag::EqualTop));
        assert_eq!(pl.base, BaseConstruction::ImageSplitting { k: 2, l: 1 });
        assert_eq!(pl.twist, -1);
    }

    #[test]
    fn duality_is_an_involution() {
        let c: LaurentChar = "x1 + x2 + x3 + y".parse().unwrap();
        assert_eq!(dual_char(&c).to_string(), "y^-1 + x3^-1 + x2^-1 + x1^-1");
        assert_eq!(dual_char(&dual_char(&c)), c);
        assert_eq!(dual_char(&berezinian_char()), "x1^-1*x2^-1*x3^-1*y".parse().unwrap());
    }
}
