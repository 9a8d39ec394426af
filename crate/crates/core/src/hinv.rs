//! The surgery-map powers `n^{±Li}_s`, their vanishing thresholds, and the truncation bound.

use std::fmt;

use serde::Serialize;

use crate::alexander::LinkData;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::laurent::StableSeries;

/// Which link component an edge map forgets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axis {
    L1,
    L2,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::L1 => "L1",
            Axis::L2 => "L2",
        })
    }
}

/// Constant-time evaluator for `n^{±Li}_s`, built once from a link.
///
/// The double sum over the link polynomial is replaced by a 2D suffix-sum grid,
/// so every lookup is a clamp plus an index.
#[derive(Clone, Debug)]
pub struct NTable {
    lk: i64,
    series1: StableSeries,
    series2: StableSeries,
    xmin: i64,
    ymin: i64,
    nx: usize,
    ny: usize,
    suffix: Vec<i64>,
    radius: i64,
}

impl NTable {
    pub fn new(link: &LinkData) -> Self {
        let delta = link.delta();
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (0, -2, 0, -2);
        if !delta.is_zero() {
            xmin = i64::MAX;
            xmax = i64::MIN;
            ymin = i64::MAX;
            ymax = i64::MIN;
            for ((i, j), _) in delta.terms() {
                xmin = xmin.min(i.doubled());
                xmax = xmax.max(i.doubled());
                ymin = ymin.min(j.doubled());
                ymax = ymax.max(j.doubled());
            }
        }
        let nx = ((xmax - xmin) / 2 + 1) as usize;
        let ny = ((ymax - ymin) / 2 + 1) as usize;
        let stride = ny + 1;
        let mut suffix = vec![0i64; (nx + 1) * stride];
        for ((i, j), c) in delta.terms() {
            let m = ((i.doubled() - xmin) / 2) as usize;
            let n = ((j.doubled() - ymin) / 2) as usize;
            suffix[m * stride + n] += c;
        }
        for m in (0..nx).rev() {
            for n in (0..ny).rev() {
                let v = suffix[m * stride + n]
                    + suffix[(m + 1) * stride + n]
                    + suffix[m * stride + n + 1]
                    - suffix[(m + 1) * stride + n + 1];
                suffix[m * stride + n] = v;
            }
        }
        NTable {
            lk: link.lk,
            series1: link.series(Axis::L1).clone(),
            series2: link.series(Axis::L2).clone(),
            xmin,
            ymin,
            nx,
            ny,
            suffix,
            radius: link.support_radius() + link.lk.abs() + 1,
        }
    }

    pub fn lk(&self) -> i64 {
        self.lk
    }

    /// Radius beyond which every threshold has stabilized.
    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// `sum a_{e1,e2}` over `e1 > s1`, `e2 > s2` (doubled coordinates).
    fn quadrant(&self, s1d: i64, s2d: i64) -> i64 {
        let idx = |sd: i64, min: i64, len: usize| -> usize {
            ((sd - min).div_euclid(2) + 1).clamp(0, len as i64) as usize
        };
        let m = idx(s1d, self.xmin, self.nx);
        let n = idx(s2d, self.ymin, self.ny);
        self.suffix[m * (self.ny + 1) + n]
    }

    /// Knot-level `V` of the given component at integer index `k`.
    pub fn knot_v(&self, axis: Axis, k: i64) -> i64 {
        match axis {
            Axis::L1 => self.series1.v(k),
            Axis::L2 => self.series2.v(k),
        }
    }

    /// `V` evaluated at `t - lk/2` for a lattice coordinate `t`.
    pub fn shifted_v(&self, axis: Axis, t: HalfInt) -> i64 {
        self.knot_v(axis, (t.doubled() - self.lk).div_euclid(2))
    }

    /// `V` evaluated at `-t + lk/2`.
    pub fn mirrored_v(&self, axis: Axis, t: HalfInt) -> i64 {
        self.knot_v(axis, (self.lk - t.doubled()).div_euclid(2))
    }

    /// `n^{+Li}_{s1,s2}`. Negative values mean the link is not an L-space link.
    pub fn n_plus(&self, axis: Axis, s1: HalfInt, s2: HalfInt) -> i64 {
        debug_assert!(s1.in_coset(self.lk) && s2.in_coset(self.lk));
        let own = match axis {
            Axis::L1 => s1,
            Axis::L2 => s2,
        };
        self.shifted_v(axis, own) - self.quadrant(s1.doubled(), s2.doubled())
    }

    /// `n^{-Li}_{s} = n^{+Li}_{-s}`.
    pub fn n_minus(&self, axis: Axis, s1: HalfInt, s2: HalfInt) -> i64 {
        self.n_plus(axis, -s1, -s2)
    }

    /// Smallest coordinate along `axis` from which `n^{+axis}` vanishes, with the other
    /// coordinate fixed at `s_other`.
    pub fn nu(&self, axis: Axis, s_other: HalfInt) -> Result<HalfInt> {
        let at = |t: HalfInt| match axis {
            Axis::L1 => self.n_plus(axis, t, s_other),
            Axis::L2 => self.n_plus(axis, s_other, t),
        };
        let top = self.coset_point(self.radius + 1);
        let bottom = self.coset_point(-self.radius - s_other.abs().ceil() - 2);
        if at(top) != 0 {
            return Err(Error::Input(format!(
                "n^(+{axis}) does not vanish at {top} (other coordinate {s_other})"
            )));
        }
        let mut t = top;
        while t > bottom {
            let below = t - HalfInt::ONE;
            match at(below) {
                0 => t = below,
                n if n > 0 => return Ok(t),
                n => {
                    return Err(Error::Input(format!(
                        "n^(+{axis}) is negative ({n}) at {below} (other coordinate {s_other})"
                    )))
                }
            }
        }
        Err(Error::Input(format!(
            "n^(+{axis}) never becomes positive (other coordinate {s_other})"
        )))
    }

    /// The coset point `Z + lk/2` nearest to `k` from above.
    fn coset_point(&self, k: i64) -> HalfInt {
        let d = 2 * k;
        HalfInt::from_doubled(if (d - self.lk).rem_euclid(2) == 0 {
            d
        } else {
            d + 1
        })
    }

    /// Coset points in `[-w, w]`.
    pub fn coset_window(&self, w: i64) -> Vec<HalfInt> {
        (-2 * w..=2 * w)
            .filter(|d| (d - self.lk).rem_euclid(2) == 0)
            .map(HalfInt::from_doubled)
            .collect()
    }

    /// The thresholds for both axes and the truncation bound `b`.
    pub fn nu_profile(&self) -> Result<NuProfile> {
        let mut w = self.radius;
        for _ in 0..4 {
            let pts = self.coset_window(w);
            let nu1 = pts
                .iter()
                .map(|&s| self.nu(Axis::L1, s).map(|v| (s, v)))
                .collect::<Result<Vec<_>>>()?;
            let nu2 = pts
                .iter()
                .map(|&s| self.nu(Axis::L2, s).map(|v| (s, v)))
                .collect::<Result<Vec<_>>>()?;
            if stabilized(&nu1) && stabilized(&nu2) {
                let top = nu1
                    .iter()
                    .chain(&nu2)
                    .map(|&(_, v)| v.ceil())
                    .max()
                    .unwrap_or(0);
                return Ok(NuProfile {
                    nu1,
                    nu2,
                    b: top.max(1),
                });
            }
            w *= 2;
        }
        Err(Error::Internal("thresholds did not stabilize".into()))
    }

    /// `n^{+L2}` on the square window, rows `s2` descending and columns `s1` ascending.
    pub fn nmatrix(&self, window: i64) -> NMatrix {
        let cols = self.coset_window(window);
        let rows: Vec<HalfInt> = cols.iter().rev().copied().collect();
        let values = rows
            .iter()
            .map(|&s2| {
                cols.iter()
                    .map(|&s1| self.n_plus(Axis::L2, s1, s2))
                    .collect()
            })
            .collect();
        NMatrix {
            s1: cols,
            s2: rows,
            values,
        }
    }
}

fn stabilized(nu: &[(HalfInt, HalfInt)]) -> bool {
    let n = nu.len();
    n >= 2 && nu[0].1 == nu[1].1 && nu[n - 1].1 == nu[n - 2].1
}

/// Thresholds `ν^{+L1}_{s2}`, `ν^{+L2}_{s1}` on a stabilized window, and the bound `b`.
#[derive(Clone, Debug, Serialize)]
pub struct NuProfile {
    pub nu1: Vec<(HalfInt, HalfInt)>,
    pub nu2: Vec<(HalfInt, HalfInt)>,
    pub b: i64,
}

impl NuProfile {
    pub fn get(&self, axis: Axis, s_other: HalfInt) -> Option<HalfInt> {
        let list = match axis {
            Axis::L1 => &self.nu1,
            Axis::L2 => &self.nu2,
        };
        list.iter().find(|&&(s, _)| s == s_other).map(|&(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NMatrix {
    pub s1: Vec<HalfInt>,
    pub s2: Vec<HalfInt>,
    pub values: Vec<Vec<i64>>,
}

impl fmt::Display for NMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .values
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .chain(self.s1.iter().map(|s| s.to_string().len()))
            .max()
            .unwrap_or(1);
        let label = self
            .s2
            .iter()
            .map(|s| s.to_string().len())
            .max()
            .unwrap_or(1);
        for (s2, row) in self.s2.iter().zip(&self.values) {
            write!(f, "{:>label$} |", s2.to_string())?;
            for v in row {
                write!(f, " {v:>width$}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{:>label$} +", "")?;
        writeln!(f, "{}", "-".repeat((width + 1) * self.s1.len()))?;
        write!(f, "{:>label$}  ", "")?;
        for s1 in &self.s1 {
            write!(f, " {:>width$}", s1.to_string())?;
        }
        writeln!(f)
    }
}
