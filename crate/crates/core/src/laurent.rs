//! Laurent polynomials with half-integer exponents and one-sided stable series.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

/// Univariate Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly1 {
    coeffs: BTreeMap<HalfInt, i64>,
}

impl LaurentPoly1 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (HalfInt, i64)>>(terms: I) -> Self {
        let mut p = Self::new();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Terms given as `(doubled exponent, coefficient)`.
    pub fn from_doubled<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        Self::from_terms(
            terms
                .into_iter()
                .map(|(d, c)| (HalfInt::from_doubled(d), c)),
        )
    }

    pub fn one() -> Self {
        Self::from_terms([(HalfInt::ZERO, 1)])
    }

    pub fn add_term(&mut self, e: HalfInt, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: HalfInt) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (HalfInt, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<HalfInt> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<HalfInt> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn shift(&self, by: HalfInt) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e + by, c)))
    }

    pub fn negate(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }

    /// Shift so the support is symmetric about zero.
    pub fn centered(&self) -> Self {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mid = HalfInt::from_doubled((lo.doubled() + hi.doubled()) / 2);
                self.shift(-mid)
            }
            _ => self.clone(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(e, c)| self.coeff(-e) == c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// Bivariate Laurent polynomial in `x`, `y`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly2 {
    coeffs: BTreeMap<(HalfInt, HalfInt), i64>,
}

/// Which variable of a bivariate polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

impl LaurentPoly2 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((HalfInt, HalfInt), i64)>>(terms: I) -> Self {
        let mut p = Self::new();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Terms given as `(doubled i, doubled j, coefficient)`.
    pub fn from_doubled<I: IntoIterator<Item = (i64, i64, i64)>>(terms: I) -> Self {
        Self::from_terms(
            terms
                .into_iter()
                .map(|(i, j, c)| ((HalfInt::from_doubled(i), HalfInt::from_doubled(j)), c)),
        )
    }

    pub fn add_term(&mut self, e: (HalfInt, HalfInt), c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, i: HalfInt, j: HalfInt) -> i64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((HalfInt, HalfInt), i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn negate(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }

    /// Exchange the roles of `x` and `y`.
    pub fn transpose(&self) -> Self {
        Self::from_terms(self.terms().map(|((i, j), c)| ((j, i), c)))
    }

    /// Replace `y` by `1/y`.
    pub fn invert_y(&self) -> Self {
        Self::from_terms(self.terms().map(|((i, j), c)| ((i, -j), c)))
    }

    /// Largest absolute exponent appearing in either variable.
    pub fn max_abs_exp(&self) -> HalfInt {
        self.terms()
            .map(|((i, j), _)| i.abs().max(j.abs()))
            .max()
            .unwrap_or(HalfInt::ZERO)
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|((i, j), c)| self.coeff(-i, -j) == c)
    }

    /// Substitute `1` for the chosen variable.
    pub fn substitute_one(&self, var: Var) -> LaurentPoly1 {
        LaurentPoly1::from_terms(self.terms().map(|((i, j), c)| match var {
            Var::X => (j, c),
            Var::Y => (i, c),
        }))
    }
}

/// Coefficients `a_k` (integer `k`) with `a_k = tail` below the window and `0` above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableSeries {
    lo: i64,
    window: Vec<i64>,
    tail: i64,
}

impl StableSeries {
    pub fn coeff(&self, k: i64) -> i64 {
        if k < self.lo {
            self.tail
        } else {
            self.window
                .get((k - self.lo) as usize)
                .copied()
                .unwrap_or(0)
        }
    }

    pub fn tail_value(&self) -> i64 {
        self.tail
    }

    /// Smallest index stored explicitly.
    pub fn window_min(&self) -> i64 {
        self.lo
    }

    /// All coefficients above this index vanish.
    pub fn upper_bound(&self) -> i64 {
        self.lo + self.window.len() as i64 - 1
    }

    /// `sum_{i >= 1} a_{k+i}`, the knot-level U-power of the inclusion at `k`.
    pub fn v(&self, k: i64) -> i64 {
        let hi = self.upper_bound();
        if k >= hi {
            return 0;
        }
        let mut total = 0;
        let first = k + 1;
        if first < self.lo {
            total += self.tail * (self.lo - first);
        }
        for m in first.max(self.lo)..=hi {
            total += self.coeff(m);
        }
        total
    }

    /// True when every coefficient is 0 or 1 and the tail is 1.
    pub fn is_lspace_shaped(&self) -> bool {
        self.tail == 1 && self.window.iter().all(|&c| c == 0 || c == 1)
    }

    /// Multiply back by `(t - 1)/t` on the stored window, recovering the polynomial.
    pub fn recover_polynomial(&self) -> LaurentPoly1 {
        let mut p = LaurentPoly1::new();
        for k in (self.lo - 1)..=self.upper_bound() {
            p.add_term(HalfInt::from_int(k), self.coeff(k) - self.coeff(k + 1));
        }
        p
    }
}

/// Expand `t * delta(t) / (t - 1)` in descending powers of `t`.
pub fn expand_tail(delta: &LaurentPoly1) -> Result<StableSeries> {
    if delta.is_zero() {
        return Ok(StableSeries {
            lo: 0,
            window: Vec::new(),
            tail: 0,
        });
    }
    if delta.terms().any(|(e, _)| !e.is_integer()) {
        return Err(Error::Input(
            "knot polynomial must have integer exponents".into(),
        ));
    }
    let lo = delta.min_exp().map(|e| e.doubled() / 2).unwrap_or(0);
    let hi = delta.max_exp().map(|e| e.doubled() / 2).unwrap_or(0);
    let mut window = vec![0; (hi - lo + 1) as usize];
    let mut acc = 0;
    for k in (lo..=hi).rev() {
        acc += delta.coeff(HalfInt::from_int(k));
        window[(k - lo) as usize] = acc;
    }
    let mut series = StableSeries {
        lo,
        window,
        tail: acc,
    };
    series.trim();
    Ok(series)
}

impl StableSeries {
    fn trim(&mut self) {
        while self.window.last() == Some(&0) {
            self.window.pop();
        }
        while self.window.first() == Some(&self.tail) {
            self.window.remove(0);
            self.lo += 1;
        }
    }
}
