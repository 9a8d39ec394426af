//! Framing matrices and Spin^c representatives of the surgered manifold.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

/// The symmetric framing matrix with `p1`, `p2` on the diagonal and `lk` off it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Framing {
    pub p1: i64,
    pub p2: i64,
    pub lk: i64,
}

impl Framing {
    pub fn new(p1: i64, p2: i64, lk: i64) -> Self {
        Framing { p1, p2, lk }
    }

    pub fn det(&self) -> i64 {
        self.p1 * self.p2 - self.lk * self.lk
    }

    /// Columns `Λ1 = (p1, lk)` and `Λ2 = (lk, p2)`.
    pub fn columns(&self) -> [(i64, i64); 2] {
        [(self.p1, self.lk), (self.lk, self.p2)]
    }

    pub fn swapped(&self) -> Self {
        Framing::new(self.p2, self.p1, self.lk)
    }

    /// `s + iΛ1 + jΛ2`.
    pub fn shift(&self, s: (HalfInt, HalfInt), i: i64, j: i64) -> (HalfInt, HalfInt) {
        (
            s.0 + HalfInt::from_int(i * self.p1 + j * self.lk),
            s.1 + HalfInt::from_int(i * self.lk + j * self.p2),
        )
    }

    /// A lower-triangular basis `(g, c), (0, h)` of the lattice spanned by the columns.
    fn hermite_basis(&self) -> Result<(i64, i64, i64)> {
        let det = self.det();
        if det == 0 {
            return Err(Error::Input(format!(
                "framing ({}, {}) with lk = {} has det = 0: b1 > 0 unsupported",
                self.p1, self.p2, self.lk
            )));
        }
        let e = self.p1.extended_gcd(&self.lk);
        let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
        if g < 0 {
            g = -g;
            x = -x;
            y = -y;
        }
        let c = x * self.lk + y * self.p2;
        let h = det.abs() / g;
        Ok((g, c.rem_euclid(h), h))
    }

    /// Exactly `|det|` canonical Spin^c representatives in `Z^2 + (lk/2, lk/2)`.
    pub fn spinc_reps(&self) -> Result<Vec<SpinC>> {
        let (g, _, h) = self.hermite_basis()?;
        let mut out = Vec::with_capacity((g * h) as usize);
        for x in 0..g {
            for y in 0..h {
                out.push(self.lift(x, y));
            }
        }
        Ok(out)
    }

    fn lift(&self, x: i64, y: i64) -> SpinC {
        SpinC {
            s1: HalfInt::from_doubled(2 * x + self.lk),
            s2: HalfInt::from_doubled(2 * y + self.lk),
        }
    }

    /// The canonical representative of the class of `s`.
    pub fn reduce(&self, s1: HalfInt, s2: HalfInt) -> Result<SpinC> {
        let (g, c, h) = self.hermite_basis()?;
        let x = (s1.doubled() - self.lk) / 2;
        let y = (s2.doubled() - self.lk) / 2;
        let k = x.div_euclid(g);
        let (x, y) = (x - k * g, y - k * c);
        Ok(self.lift(x, y.rem_euclid(h)))
    }
}

/// A Spin^c structure, identified by its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SpinC {
    pub s1: HalfInt,
    pub s2: HalfInt,
}

impl SpinC {
    pub fn as_pair(&self) -> (HalfInt, HalfInt) {
        (self.s1, self.s2)
    }
}

impl std::fmt::Display for SpinC {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.s1, self.s2)
    }
}
