//! Link data, normalization of the two-variable polynomial, and polynomial obstructions.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::hinv::{Axis, NTable};
use crate::laurent::{expand_tail, LaurentPoly1, LaurentPoly2, StableSeries, Var};

/// A two-component link described by its linking number and Alexander polynomials.
#[derive(Clone, Debug)]
pub struct LinkData {
    pub name: String,
    pub lk: i64,
    delta: LaurentPoly2,
    comp1: LaurentPoly1,
    comp2: LaurentPoly1,
    series1: StableSeries,
    series2: StableSeries,
}

impl LinkData {
    /// Validate and normalize. Component polynomials may be omitted when `lk != 0`.
    pub fn new(
        name: impl Into<String>,
        lk: i64,
        delta: LaurentPoly2,
        comp1: Option<LaurentPoly1>,
        comp2: Option<LaurentPoly1>,
    ) -> Result<Self> {
        let name = name.into();
        for ((i, j), _) in delta.terms() {
            if !i.in_coset(lk - 1) || !j.in_coset(lk - 1) {
                return Err(Error::Input(format!(
                    "{name}: exponent ({i}, {j}) outside Z + (lk-1)/2 for lk = {lk}"
                )));
            }
        }
        if !delta.is_symmetric() {
            return Err(Error::Input(format!(
                "{name}: polynomial is not symmetric under (i, j) -> (-i, -j)"
            )));
        }
        let derived = if lk != 0 {
            Some(murasugi_components(&delta, lk)?)
        } else {
            None
        };
        let pick = |given: Option<LaurentPoly1>, idx: usize| -> Result<LaurentPoly1> {
            match (given, &derived) {
                (Some(p), d) => {
                    let p = normalize_knot(&p)?;
                    if let Some((c1, c2)) = d {
                        let expected = if idx == 0 { c1 } else { c2 };
                        if &p != expected {
                            return Err(Error::Input(format!(
                                "{name}: component {} polynomial disagrees with the Murasugi reduction",
                                idx + 1
                            )));
                        }
                    }
                    Ok(p)
                }
                (None, Some((c1, c2))) => Ok(if idx == 0 { c1.clone() } else { c2.clone() }),
                (None, None) => Err(Error::Input(format!(
                    "{name}: components required when lk = 0"
                ))),
            }
        };
        let comp1 = pick(comp1, 0)?;
        let comp2 = pick(comp2, 1)?;
        let series1 = expand_tail(&comp1)?;
        let series2 = expand_tail(&comp2)?;
        let delta = normalize(&delta, lk, &series2);
        Ok(LinkData {
            name,
            lk,
            delta,
            comp1,
            comp2,
            series1,
            series2,
        })
    }

    /// Normalized coefficients of the link polynomial.
    pub fn delta(&self) -> &LaurentPoly2 {
        &self.delta
    }

    pub fn component_poly(&self, axis: Axis) -> &LaurentPoly1 {
        match axis {
            Axis::L1 => &self.comp1,
            Axis::L2 => &self.comp2,
        }
    }

    pub fn series(&self, axis: Axis) -> &StableSeries {
        match axis {
            Axis::L1 => &self.series1,
            Axis::L2 => &self.series2,
        }
    }

    /// The same link with its components listed in the opposite order.
    pub fn swapped(&self) -> LinkData {
        LinkData {
            name: format!("{} (swapped)", self.name),
            lk: self.lk,
            delta: normalize(&self.delta.transpose(), self.lk, &self.series1),
            comp1: self.comp2.clone(),
            comp2: self.comp1.clone(),
            series1: self.series2.clone(),
            series2: self.series1.clone(),
        }
    }

    /// The same link with the orientation of the second component reversed.
    pub fn reversed_second(&self) -> Result<LinkData> {
        LinkData::new(
            format!("{} (second component reversed)", self.name),
            -self.lk,
            self.delta.invert_y(),
            Some(self.comp1.clone()),
            Some(self.comp2.clone()),
        )
    }

    /// Largest absolute exponent among the polynomial data, used to size windows.
    pub fn support_radius(&self) -> i64 {
        let mut r = self.delta.max_abs_exp().ceil();
        for s in [&self.series1, &self.series2] {
            r = r.max(s.upper_bound().abs()).max(s.window_min().abs());
        }
        r
    }
}

/// Center a knot polynomial and fix its sign so that it evaluates to 1 at 1.
fn normalize_knot(p: &LaurentPoly1) -> Result<LaurentPoly1> {
    let c = p.centered();
    let c = match c.eval_one() {
        1 => c,
        -1 => c.negate(),
        v => {
            return Err(Error::Input(format!(
                "knot polynomial evaluates to {v} at 1, expected +-1"
            )))
        }
    };
    if !c.is_symmetric() {
        return Err(Error::Input("knot polynomial is not symmetric".into()));
    }
    Ok(c)
}

/// Recover both component polynomials from `delta(t, 1)` and `delta(1, t)`.
pub fn murasugi_components(delta: &LaurentPoly2, lk: i64) -> Result<(LaurentPoly1, LaurentPoly1)> {
    if lk == 0 {
        return Err(Error::Input("components required when lk = 0".into()));
    }
    let one = |var| -> Result<LaurentPoly1> {
        let reduced = delta.substitute_one(var);
        if reduced.is_zero() {
            return Err(Error::Input(
                "Murasugi reduction vanishes although lk != 0".into(),
            ));
        }
        let quotient = divide_by_cyclotomic_sum(&reduced, lk.unsigned_abs())?;
        normalize_knot(&quotient)
    };
    Ok((one(Var::Y)?, one(Var::X)?))
}

/// Exact division by `1 + t + ... + t^(n-1)`.
fn divide_by_cyclotomic_sum(p: &LaurentPoly1, n: u64) -> Result<LaurentPoly1> {
    let lo = p.min_exp().expect("nonzero polynomial");
    let hi = p.max_exp().expect("nonzero polynomial");
    let deg = ((hi - lo).doubled() / 2) as usize;
    let mut rem: Vec<i64> = (0..=deg)
        .map(|k| p.coeff(lo + HalfInt::from_int(k as i64)))
        .collect();
    let n = n as usize;
    if deg + 1 < n {
        return Err(Error::Input("Murasugi division is not exact".into()));
    }
    let qdeg = deg + 1 - n;
    let mut quot = vec![0i64; qdeg + 1];
    for k in (0..=qdeg).rev() {
        let c = rem[k + n - 1];
        quot[k] = c;
        for m in 0..n {
            rem[k + m] -= c;
        }
    }
    if rem.iter().any(|&c| c != 0) {
        return Err(Error::Input("Murasugi division is not exact".into()));
    }
    Ok(LaurentPoly1::from_terms(
        quot.into_iter()
            .enumerate()
            .map(|(k, c)| (HalfInt::from_int(k as i64), c)),
    ))
}

/// Fix the global sign of `delta` by the corner rule at its top-right corner.
pub fn normalize(delta: &LaurentPoly2, lk: i64, series2: &StableSeries) -> LaurentPoly2 {
    let Some((j0, c)) = top_corner(delta) else {
        return delta.clone();
    };
    let want = if series2.coeff(corner_index(j0, lk)) == 1 {
        1
    } else {
        -1
    };
    if c.signum() == want {
        delta.clone()
    } else {
        delta.negate()
    }
}

/// `j0` = largest `y`-exponent, then the coefficient at the largest `x`-exponent in that row.
fn top_corner(delta: &LaurentPoly2) -> Option<(HalfInt, i64)> {
    delta
        .terms()
        .max_by_key(|&((i, j), _)| (j, i))
        .map(|((_, j), c)| (j, c))
}

/// Series index `e + 1/2 - lk/2` matched against a corner exponent `e`.
fn corner_index(e: HalfInt, lk: i64) -> i64 {
    (e.doubled() + 1 - lk) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    CoefficientBound,
    SignAlternation,
    ComponentSeries,
    CornerCompatibility,
    NonNegativity,
    UnitSteps,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::CoefficientBound => "(a) coefficient bound",
            Check::SignAlternation => "(b) alternating signs",
            Check::ComponentSeries => "(c) component series in {0,1}",
            Check::CornerCompatibility => "(d) corner compatibility",
            Check::NonNegativity => "(e) n-values non-negative",
            Check::UnitSteps => "(f) n-value steps in {0,1}",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

impl CheckResult {
    fn pass(check: Check) -> Self {
        CheckResult {
            check,
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    fn fail(check: Check, witness: String) -> Self {
        CheckResult {
            check,
            verdict: Verdict::Fail,
            witness: Some(witness),
        }
    }

    fn not_applicable(check: Check) -> Self {
        CheckResult {
            check,
            verdict: Verdict::NotApplicable,
            witness: None,
        }
    }

    fn from_witness(check: Check, witness: Option<String>) -> Self {
        match witness {
            Some(w) => Self::fail(check, w),
            None => Self::pass(check),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub link: String,
    pub components: usize,
    pub checks: Vec<CheckResult>,
}

impl ObstructionReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn get(&self, check: Check) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == check)
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "obstructions for {} ({} components)",
            self.link, self.components
        )?;
        for c in &self.checks {
            let v = match c.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
                Verdict::NotApplicable => "n/a",
            };
            write!(f, "  {:<40} {v}", c.check.to_string())?;
            if let Some(w) = &c.witness {
                write!(f, "  [{w}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Run every polynomial-level check on a two-component link.
pub fn obstruction_report(link: &LinkData) -> ObstructionReport {
    let zero = link.delta.is_zero();
    let checks = vec![
        CheckResult::from_witness(
            Check::CoefficientBound,
            bound_witness(
                link.delta
                    .terms()
                    .map(|((i, j), c)| (format!("({i}, {j})"), c)),
                2,
            ),
        ),
        if zero {
            CheckResult::not_applicable(Check::SignAlternation)
        } else {
            CheckResult::from_witness(Check::SignAlternation, alternation_witness(&link.delta))
        },
        CheckResult::from_witness(Check::ComponentSeries, component_witness(link)),
        if zero {
            CheckResult::not_applicable(Check::CornerCompatibility)
        } else {
            CheckResult::from_witness(Check::CornerCompatibility, corner_witness(link))
        },
        CheckResult::from_witness(Check::NonNegativity, n_table_witness(link, false)),
        CheckResult::from_witness(Check::UnitSteps, n_table_witness(link, true)),
    ];
    ObstructionReport {
        link: link.name.clone(),
        components: 2,
        checks,
    }
}

/// Coefficient bound for a link with `components >= 2` components, given its coefficients.
pub fn coefficient_bound_report<I>(name: &str, components: usize, coeffs: I) -> ObstructionReport
where
    I: IntoIterator<Item = (String, i64)>,
{
    let mut checks = vec![CheckResult::from_witness(
        Check::CoefficientBound,
        bound_witness(coeffs, components),
    )];
    for c in [
        Check::SignAlternation,
        Check::ComponentSeries,
        Check::CornerCompatibility,
        Check::NonNegativity,
        Check::UnitSteps,
    ] {
        checks.push(CheckResult::not_applicable(c));
    }
    ObstructionReport {
        link: name.to_string(),
        components,
        checks,
    }
}

fn bound_witness<I: IntoIterator<Item = (String, i64)>>(
    coeffs: I,
    components: usize,
) -> Option<String> {
    let bound = 1i64 << components.saturating_sub(2);
    coeffs
        .into_iter()
        .find(|(_, c)| c.abs() > bound)
        .map(|(at, c)| format!("a{at} = {c} exceeds {bound}"))
}

fn alternation_witness(delta: &LaurentPoly2) -> Option<String> {
    use std::collections::BTreeMap;
    let mut rows: BTreeMap<HalfInt, Vec<(HalfInt, i64)>> = BTreeMap::new();
    let mut cols: BTreeMap<HalfInt, Vec<(HalfInt, i64)>> = BTreeMap::new();
    for ((i, j), c) in delta.terms() {
        rows.entry(j).or_default().push((i, c));
        cols.entry(i).or_default().push((j, c));
    }
    for (j, row) in &mut rows {
        row.sort();
        for w in row.windows(2) {
            if w[0].1.signum() == w[1].1.signum() {
                return Some(format!(
                    "row j = {j}: a({}, {j}) and a({}, {j}) share a sign",
                    w[0].0, w[1].0
                ));
            }
        }
    }
    for (i, col) in &mut cols {
        col.sort();
        for w in col.windows(2) {
            if w[0].1.signum() == w[1].1.signum() {
                return Some(format!(
                    "column i = {i}: a({i}, {}) and a({i}, {}) share a sign",
                    w[0].0, w[1].0
                ));
            }
        }
    }
    None
}

/// Scan a window ordered by distance from the origin, so witnesses are as small as possible.
fn n_table_witness(link: &LinkData, steps: bool) -> Option<String> {
    let table = NTable::new(link);
    let w = link.support_radius() + link.lk.abs() + 3;
    let mut pts = Vec::new();
    for d1 in -2 * w - 1..=2 * w + 1 {
        for d2 in -2 * w - 1..=2 * w + 1 {
            if (d1 - link.lk).rem_euclid(2) == 0 && (d2 - link.lk).rem_euclid(2) == 0 {
                pts.push((HalfInt::from_doubled(d1), HalfInt::from_doubled(d2)));
            }
        }
    }
    pts.sort_by_key(|&(a, b)| (a.abs() + b.abs(), a.abs().max(b.abs()), a, b));
    for (s1, s2) in pts {
        for axis in [Axis::L1, Axis::L2] {
            let n = table.n_plus(axis, s1, s2);
            if !steps {
                if n < 0 {
                    return Some(format!("n^(+{axis})_({s1}, {s2}) = {n}"));
                }
                continue;
            }
            let (t1, t2) = match axis {
                Axis::L1 => (s1 + HalfInt::ONE, s2),
                Axis::L2 => (s1, s2 + HalfInt::ONE),
            };
            let step = n - table.n_plus(axis, t1, t2);
            if !(0..=1).contains(&step) {
                return Some(format!(
                    "n^(+{axis})_({s1}, {s2}) - n^(+{axis})_({t1}, {t2}) = {step}"
                ));
            }
        }
    }
    None
}

/// Every local top-right corner must match the component series.
fn corner_witness(link: &LinkData) -> Option<String> {
    let delta = &link.delta;
    for ((i0, j0), c) in delta.terms() {
        let right_clear = delta.terms().all(|((i, j), _)| j != j0 || i <= i0);
        let up_clear = delta.terms().all(|((i, j), _)| i != i0 || j <= j0);
        if !right_clear || !up_clear {
            continue;
        }
        let k1 = corner_index(i0, link.lk);
        let k2 = corner_index(j0, link.lk);
        let a1 = link.series1.coeff(k1);
        let a2 = link.series2.coeff(k2);
        let ok = matches!((c, a1, a2), (1, 1, 1) | (-1, 0, 0));
        if !ok {
            return Some(format!(
                "corner ({i0}, {j0}) has a = {c} but a^L1_{k1} = {a1}, a^L2_{k2} = {a2}"
            ));
        }
    }
    None
}

fn component_witness(link: &LinkData) -> Option<String> {
    for axis in [Axis::L1, Axis::L2] {
        let s = link.series(axis);
        if !s.is_lspace_shaped() {
            let bad = (s.window_min()..=s.upper_bound())
                .find(|&k| !matches!(s.coeff(k), 0 | 1))
                .map(|k| format!("a^{axis}_{k} = {}", s.coeff(k)))
                .unwrap_or_else(|| format!("tail of {axis} is {}", s.tail_value()));
            return Some(bad);
        }
    }
    None
}
