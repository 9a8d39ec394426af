//! Truncated hat-flavor surgery complexes and their homology.
//!
//! For a framing `Λ` and a Spin^c class `u = [s]`, generators of the four corners
//! `A = C^{00}`, `B = C^{10}`, `C = C^{01}`, `D = C^{11}` are indexed by `(i, j)`,
//! standing for the lattice point `s + iΛ1 + jΛ2`. Maps `A -> B` and `C -> D` move along `i`,
//! maps `A -> C` and `B -> D` move along `j`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::alexander::{obstruction_report, LinkData, ObstructionReport};
use crate::error::{Error, Result};
use crate::f2::{self, BitMatrix, ZigzagCode};
use crate::hinv::{Axis, NTable};
use crate::lattice::{Framing, SpinC};

/// The six sign patterns of the framing matrix, plus `det < 0` with a zero coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TruncationCase {
    I,
    II,
    III,
    IV,
    V,
    VI,
    ZeroCoefficient,
}

impl TruncationCase {
    pub fn of(f: &Framing) -> Result<Self> {
        let det = f.det();
        let (p1, p2) = (f.p1, f.p2);
        if det == 0 {
            return Err(Error::Input(format!(
                "framing ({p1}, {p2}) with lk = {} has det = 0: b1 > 0 unsupported",
                f.lk
            )));
        }
        if det > 0 {
            return Ok(if p1 > 0 { Self::I } else { Self::II });
        }
        match (p1.signum(), p2.signum()) {
            (1, -1) => Ok(Self::III),
            (-1, 1) => Ok(Self::IV),
            (1, 1) => Ok(Self::V),
            (-1, -1) => Ok(Self::VI),
            _ => Ok(Self::ZeroCoefficient),
        }
    }

    /// Sign of the Euler characteristic of every truncated complex.
    pub fn euler(&self) -> i64 {
        match self {
            Self::I | Self::II => 1,
            _ => -1,
        }
    }
}

impl fmt::Display for TruncationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// How the finite piece of the complex is cut out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// Rectangles in `(i, j)` around a parallelogram in the lattice.
    Parallelogram { i0: i64, j0: i64 },
    /// Minimal windows on each line of fixed `i`.
    Sheared,
    /// For `p1 = p2 = 0`: `i` moves only the second coordinate and `j` only the first,
    /// each kept within `b` of the origin.
    Rectangle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ShapeChoice {
    /// Whichever of the two has fewer generators.
    #[default]
    Auto,
    Parallelogram,
    Sheared,
}

/// Knobs for cross-validation. The defaults give the smallest valid truncation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TruncationOptions {
    pub shape: ShapeChoice,
    /// Added to `i0`, `j0` for parallelograms and to `b` for sheared windows.
    pub enlarge: i64,
}

/// Index sets of one corner: contiguous `j`-intervals on consecutive lines `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Region {
    lines: BTreeMap<i64, (i64, i64, usize)>,
    len: usize,
}

impl Region {
    fn push_line(&mut self, i: i64, lo: i64, hi: i64) {
        if hi < lo {
            return;
        }
        self.lines.insert(i, (lo, hi, self.len));
        self.len += (hi - lo + 1) as usize;
    }

    fn rect(i: (i64, i64), j: (i64, i64)) -> Self {
        let mut r = Region::default();
        for line in i.0..=i.1 {
            r.push_line(line, j.0, j.1);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self, i: i64, j: i64) -> Option<usize> {
        let &(lo, hi, off) = self.lines.get(&i)?;
        (lo <= j && j <= hi).then(|| off + (j - lo) as usize)
    }

    pub fn line(&self, i: i64) -> Option<(i64, i64)> {
        self.lines.get(&i).map(|&(lo, hi, _)| (lo, hi))
    }

    pub fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.lines
            .iter()
            .flat_map(|(&i, &(lo, hi, _))| (lo..=hi).map(move |j| (i, j)))
    }

    pub fn lines(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        self.lines.iter().map(|(&i, &(lo, hi, _))| (i, lo, hi))
    }
}

/// The four corner regions for one Spin^c class.
#[derive(Clone, Debug)]
pub struct Regions {
    pub a: Region,
    pub b: Region,
    pub c: Region,
    pub d: Region,
}

impl Regions {
    pub fn euler(&self) -> i64 {
        self.a.len() as i64 - self.b.len() as i64 - self.c.len() as i64 + self.d.len() as i64
    }

    pub fn generators(&self) -> usize {
        self.a.len() + self.b.len() + self.c.len() + self.d.len()
    }
}

/// Truncation data shared by every Spin^c class of one framing.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub case: TruncationCase,
    pub shape: Shape,
    pub b: i64,
    framing: Framing,
}

impl Truncation {
    pub fn choose(framing: Framing, b: i64, opts: TruncationOptions) -> Result<Self> {
        let case = TruncationCase::of(&framing)?;
        if framing.p1 == 0 && framing.p2 == 0 {
            if opts.shape != ShapeChoice::Auto {
                return Err(Error::UnsupportedFraming {
                    p1: 0,
                    p2: 0,
                    reason: "only the rectangle truncation applies to (0, 0)".into(),
                });
            }
            return Ok(Truncation {
                case,
                shape: Shape::Rectangle,
                b: b + opts.enlarge,
                framing,
            });
        }
        if framing.p2 == 0 {
            return Err(Error::UnsupportedFraming {
                p1: framing.p1,
                p2: framing.p2,
                reason: "no truncation with p2 = 0; swap the components".into(),
            });
        }
        let parallelogram = matches!(
            case,
            TruncationCase::I | TruncationCase::II | TruncationCase::III | TruncationCase::IV
        );
        let shape = match opts.shape {
            ShapeChoice::Sheared => Shape::Sheared,
            ShapeChoice::Parallelogram | ShapeChoice::Auto if parallelogram => {
                match find_parallelogram(&framing, b) {
                    Some((i0, j0)) => Shape::Parallelogram {
                        i0: i0 + opts.enlarge,
                        j0: j0 + opts.enlarge,
                    },
                    None if opts.shape == ShapeChoice::Auto => Shape::Sheared,
                    None => {
                        return Err(Error::UnsupportedFraming {
                            p1: framing.p1,
                            p2: framing.p2,
                            reason: "no parallelogram clears the bound".into(),
                        })
                    }
                }
            }
            ShapeChoice::Auto => Shape::Sheared,
            ShapeChoice::Parallelogram => {
                return Err(Error::UnsupportedFraming {
                    p1: framing.p1,
                    p2: framing.p2,
                    reason: format!("no parallelogram truncation for case {case}"),
                })
            }
        };
        let b = match shape {
            Shape::Parallelogram { .. } => b,
            _ => b + opts.enlarge,
        };
        let chosen = Truncation {
            case,
            shape,
            b,
            framing,
        };
        if opts.shape == ShapeChoice::Auto && shape != Shape::Sheared {
            let sheared = Truncation {
                shape: Shape::Sheared,
                b: b + opts.enlarge,
                ..chosen.clone()
            };
            let s = framing.spinc_reps()?[0];
            if sheared.regions(s).generators() < chosen.regions(s).generators() {
                return Ok(sheared);
            }
        }
        Ok(chosen)
    }

    pub fn regions(&self, s: SpinC) -> Regions {
        match self.shape {
            Shape::Parallelogram { i0, j0 } => self.parallelogram_regions(s, i0, j0),
            Shape::Sheared => self.sheared_regions(s),
            Shape::Rectangle => self.rectangle_regions(s),
        }
    }

    fn rectangle_regions(&self, s: SpinC) -> Regions {
        let lk = self.framing.lk;
        let (l, bd) = (2 * lk.abs() as i128, 2 * self.b as i128);
        // Steps `k` with `|c + k·2lk| <= 2b`.
        let steps = |c: i64| {
            let (lo, hi) = (ceil_div(-bd - c as i128, l), floor_div(bd - c as i128, l));
            if lk > 0 {
                (lo, hi)
            } else {
                (-hi, -lo)
            }
        };
        let (i0, i1) = steps(s.s2.doubled());
        let (j0, j1) = steps(s.s1.doubled());
        Regions {
            a: Region::rect((i0, i1), (j0, j1)),
            b: Region::rect((i0 + 1, i1), (j0, j1)),
            c: Region::rect((i0, i1), (j0, j1 + 1)),
            d: Region::rect((i0 + 1, i1), (j0, j1 + 1)),
        }
    }

    fn parallelogram_regions(&self, s: SpinC, i0: i64, j0: i64) -> Regions {
        let Framing { p1, p2, lk } = self.framing;
        let det = self.framing.det() as i128;
        let (s1, s2) = (s.s1.doubled() as i128, s.s2.doubled() as i128);
        // 2·det·θ = (s1 p2 - s2 lk, -s1 lk + s2 p1) in doubled coordinates.
        let t1 = s1 * p2 as i128 - s2 * lk as i128;
        let t2 = -s1 * lk as i128 + s2 * p1 as i128;
        let den = 2 * det;
        let a1 = ceil_div(-t1 - i0 as i128 * det, den);
        let a2 = floor_div(-t1 + i0 as i128 * det, den);
        let b1 = ceil_div(-t2 - j0 as i128 * det, den);
        let b2 = floor_div(-t2 + j0 as i128 * det, den);
        let rect = |di: (i64, i64), dj: (i64, i64)| {
            Region::rect((a1 + di.0, a2 + di.1), (b1 + dj.0, b2 + dj.1))
        };
        // For each corner, (lower, upper) adjustments of the i- and j-ranges.
        let adj = |d1: i64, d2: i64| -> ((i64, i64), (i64, i64)) {
            match self.case {
                TruncationCase::I => ((d1, 0), (d2, 0)),
                TruncationCase::II => ((0, d1), (0, d2)),
                TruncationCase::III => ((d1, 0), (0, d2)),
                _ => ((0, d1), (d2, 0)),
            }
        };
        let make = |d1, d2| {
            let (di, dj) = adj(d1, d2);
            rect(di, dj)
        };
        Regions {
            a: make(0, 0),
            b: make(1, 0),
            c: make(0, 1),
            d: make(1, 1),
        }
    }

    fn sheared_regions(&self, s: SpinC) -> Regions {
        let sh = Sheared::new(self.framing, s, self.b);
        sh.regions()
    }
}

fn fdiv(a: i128, b: i128) -> i128 {
    if b > 0 {
        a.div_euclid(b)
    } else {
        (-a).div_euclid(-b)
    }
}

fn floor_div(a: i128, b: i128) -> i64 {
    fdiv(a, b) as i64
}

fn ceil_div(a: i128, b: i128) -> i64 {
    -fdiv(-a, b) as i64
}

/// Smallest `(i0, j0)`, both at least 2, such that the four vertices `(±i0Λ1 ± j0Λ2)/2`
/// lie one in each open quadrant, every coordinate exceeding `b` in absolute value.
pub fn find_parallelogram(f: &Framing, b: i64) -> Option<(i64, i64)> {
    let limit = 8 * (b + f.p1.abs() + f.p2.abs() + f.lk.abs() + 2);
    for sum in 4..=limit {
        for i0 in 2..=sum - 2 {
            let j0 = sum - i0;
            let mut quadrants = [false; 4];
            let mut ok = true;
            for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let x = e1 * i0 * f.p1 + e2 * j0 * f.lk;
                let y = e1 * i0 * f.lk + e2 * j0 * f.p2;
                if x.abs() <= 2 * b || y.abs() <= 2 * b {
                    ok = false;
                    break;
                }
                quadrants[(x > 0) as usize * 2 + (y > 0) as usize] = true;
            }
            if ok && quadrants.iter().all(|&q| q) {
                return Some((i0, j0));
            }
        }
    }
    None
}

/// Line-by-line truncation: on each line of fixed `i`, keep the shortest `j`-window
/// outside which the `A -> C` and `B -> D` maps cancel in pairs, then keep the lines
/// on which the `i`-direction maps do not yet cancel.
/// The `j`-window of a line `i`.
type Window<'a> = Box<dyn Fn(i64) -> (i64, i64) + 'a>;

struct Sheared {
    f: Framing,
    s: (i64, i64),
    bd: i64,
}

impl Sheared {
    fn new(f: Framing, s: SpinC, b: i64) -> Self {
        assert!(f.p2 != 0, "sheared truncation needs p2 != 0");
        Sheared {
            f,
            s: (s.s1.doubled(), s.s2.doubled()),
            bd: 2 * b,
        }
    }

    fn t1(&self, i: i64, j: i64) -> i64 {
        self.s.0 + 2 * (i * self.f.p1 + j * self.f.lk)
    }

    /// Source window on line `i`: for `j` above it the second coordinate is `>= b`
    /// (or `<= -b` when `p2 < 0`), and symmetrically below.
    fn min_window(&self, i: i64) -> (i64, i64) {
        let c = self.s.1 + 2 * i * self.f.lk;
        let st = 2 * self.f.p2;
        let (c, st, bd) = (c as i128, st as i128, self.bd as i128);
        let (j1, j2) = if st > 0 {
            (floor_div(-bd - c, st) + 1, ceil_div(bd - c, st) - 1)
        } else {
            (floor_div(bd - c, st) + 1, ceil_div(-bd - c, st) - 1)
        };
        (j1.min(j2), j2)
    }

    /// Target window matching a source window.
    fn target(&self, w: (i64, i64)) -> (i64, i64) {
        if self.f.p2 > 0 {
            (w.0 + 1, w.1)
        } else {
            (w.0, w.1 + 1)
        }
    }

    fn span(&self, w: (i64, i64)) -> (i64, i64) {
        let t = self.target(w);
        (w.0.min(t.0), w.1.max(t.1))
    }

    fn hull(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
        (a.0.min(b.0), a.1.max(b.1))
    }

    /// First coordinate is `>= b` on the whole window of line `i`.
    fn forward_good(&self, i: i64) -> bool {
        let (lo, hi) = self.span(self.min_window(i));
        (lo..=hi).all(|j| self.t1(i, j) >= self.bd)
    }

    /// First coordinate is `<= -b` on the window of line `i` widened by line `i + 1`.
    fn backward_good(&self, i: i64) -> bool {
        let w = Self::hull(self.min_window(i), self.min_window(i + 1));
        let (lo, hi) = self.span(w);
        (lo..=hi).all(|j| -self.t1(i, j) >= self.bd)
    }

    /// Lines outside `[centre - r, centre + r]` are good in the appropriate direction.
    fn scan_range(&self) -> (i64, i64) {
        let Framing { p2, lk, .. } = self.f;
        let det = self.f.det() as i128;
        let (p2, lk) = (p2 as i128, lk as i128);
        let b = self.bd as i128 / 2;
        let (s1, s2) = (self.s.0 as i128, self.s.1 as i128);
        // Along a line, t1 = κ + i·det/p2 + lk·t2/p2 with κ = s1 - s2·lk/p2.
        let err = ceil_div(lk.abs() * (b + lk.abs() + 2 * p2.abs() + 2), p2.abs()) as i128 + 1;
        let radius = ceil_div((b + err + 2) * p2.abs(), det.abs()) as i128 + 3;
        let centre = -fdiv(s1 * p2 - s2 * lk, 2 * det);
        ((centre - radius) as i64, (centre + radius) as i64)
    }

    fn regions(&self) -> Regions {
        let sigma_pos = (self.f.det() > 0) == (self.f.p2 > 0);
        let (lo, hi) = self.scan_range();
        let (up, down): (&dyn Fn(i64) -> bool, &dyn Fn(i64) -> bool) = if sigma_pos {
            (&|i| self.forward_good(i), &|i| self.backward_good(i))
        } else {
            (&|i| self.backward_good(i), &|i| self.forward_good(i))
        };
        let i2 = (lo..=hi).rev().find(|&i| !up(i)).unwrap_or(lo - 1);
        let i1 = (lo..=hi).find(|&i| !down(i)).unwrap_or(hi + 1);
        let i2 = i2.max(i1);
        let (x_lines, y_lines) = if sigma_pos {
            ((i1, i2), (i1 + 1, i2))
        } else {
            ((i1, i2), (i1, i2 + 1))
        };
        let (xw, yw): (Window<'_>, Window<'_>) = if self.f.p2 > 0 {
            (
                Box::new(|i| Self::hull(self.min_window(i), self.min_window(i + 1))),
                Box::new(|k| self.min_window(k)),
            )
        } else {
            (
                Box::new(|i| self.min_window(i)),
                Box::new(|k| Self::hull(self.min_window(k), self.min_window(k - 1))),
            )
        };
        let mut r = Regions {
            a: Region::default(),
            b: Region::default(),
            c: Region::default(),
            d: Region::default(),
        };
        for i in x_lines.0..=x_lines.1 {
            let w = xw(i);
            let t = self.target(w);
            r.a.push_line(i, w.0, w.1);
            r.c.push_line(i, t.0, t.1);
        }
        for k in y_lines.0..=y_lines.1 {
            let w = yw(k);
            let t = self.target(w);
            r.b.push_line(k, w.0, w.1);
            r.d.push_line(k, t.0, t.1);
        }
        r
    }
}

/// The four edge maps of one truncated complex.
#[derive(Clone, Debug)]
pub struct Complex {
    pub regions: Regions,
    /// `A -> B`.
    pub h1: BitMatrix,
    /// `A -> C`.
    pub v1: BitMatrix,
    /// `C -> D`.
    pub h2: BitMatrix,
    /// `B -> D`.
    pub v2: BitMatrix,
    v1_codes: Vec<(i64, ZigzagCode)>,
    v2_codes: Vec<(i64, ZigzagCode)>,
}

impl Complex {
    pub fn build(table: &NTable, f: &Framing, s: SpinC, regions: Regions) -> Self {
        let Regions { a, b, c, d } = &regions;
        let mut h1 = BitMatrix::zeros(b.len(), a.len());
        let mut v1 = BitMatrix::zeros(c.len(), a.len());
        let mut h2 = BitMatrix::zeros(d.len(), c.len());
        let mut v2 = BitMatrix::zeros(d.len(), b.len());
        let at = |i, j| f.shift(s.as_pair(), i, j);
        let link = |m: &mut BitMatrix, target: &Region, col: usize, ti: i64, tj: i64| {
            if let Some(row) = target.index(ti, tj) {
                m.toggle(row, col);
            }
        };
        let (mut v1_codes, mut v2_codes) = (Vec::new(), Vec::new());

        for (i, lo, hi) in a.lines() {
            let mut s1 = std::collections::BTreeSet::new();
            let mut s2 = std::collections::BTreeSet::new();
            for j in lo..=hi {
                let col = a.index(i, j).expect("point of A");
                let (t1, t2) = at(i, j);
                if table.n_plus(Axis::L1, t1, t2) == 0 {
                    link(&mut h1, b, col, i, j);
                }
                if table.n_minus(Axis::L1, t1, t2) == 0 {
                    link(&mut h1, b, col, i + 1, j);
                }
                if table.n_plus(Axis::L2, t1, t2) == 0 {
                    link(&mut v1, c, col, i, j);
                    s1.insert(j);
                }
                if table.n_minus(Axis::L2, t1, t2) == 0 {
                    link(&mut v1, c, col, i, j + 1);
                    s2.insert(j);
                }
            }
            let target = c.line(i).unwrap_or((lo, lo - 1));
            v1_codes.push((i, ZigzagCode::new((lo, hi), target, s1, s2)));
        }
        for (i, lo, hi) in b.lines() {
            let mut s1 = std::collections::BTreeSet::new();
            let mut s2 = std::collections::BTreeSet::new();
            for j in lo..=hi {
                let col = b.index(i, j).expect("point of B");
                let (_, t2) = at(i, j);
                if table.shifted_v(Axis::L2, t2) == 0 {
                    link(&mut v2, d, col, i, j);
                    s1.insert(j);
                }
                if table.mirrored_v(Axis::L2, t2) == 0 {
                    link(&mut v2, d, col, i, j + 1);
                    s2.insert(j);
                }
            }
            let target = d.line(i).unwrap_or((lo, lo - 1));
            v2_codes.push((i, ZigzagCode::new((lo, hi), target, s1, s2)));
        }
        for (i, j) in c.points() {
            let col = c.index(i, j).expect("point of C");
            let (t1, _) = at(i, j);
            if table.shifted_v(Axis::L1, t1) == 0 {
                link(&mut h2, d, col, i, j);
            }
            if table.mirrored_v(Axis::L1, t1) == 0 {
                link(&mut h2, d, col, i + 1, j);
            }
        }
        Complex {
            regions,
            h1,
            v1,
            h2,
            v2,
            v1_codes,
            v2_codes,
        }
    }

    fn dims(&self) -> [usize; 4] {
        let r = &self.regions;
        [r.a.len(), r.b.len(), r.c.len(), r.d.len()]
    }

    pub fn is_chain_complex(&self) -> bool {
        self.v2.mul(&self.h1) == self.h2.mul(&self.v1)
    }

    /// `dim(total) - 2·rank(differential)`.
    pub fn rank_dim(&self) -> usize {
        f2::square_rank_dim(self.dims(), &self.h1, &self.v1, &self.h2, &self.v2)
    }

    pub fn square_dim(&self) -> Result<usize> {
        let [a, b, c, d] = self.dims();
        f2::square_lemma_dim(a, b, c, d, &self.h1, &self.v1, &self.h2, &self.v2)
    }

    /// The zigzag codes of `A -> C`, one per line.
    pub fn v1_codes(&self) -> &[(i64, ZigzagCode)] {
        &self.v1_codes
    }

    /// `dim(Ker h1 ∩ Ker v1)`, with `Ker v1` read off the zigzag codes line by line.
    pub fn joint_kernel(&self) -> usize {
        let a = &self.regions.a;
        let mut cols = Vec::new();
        for (i, code) in &self.v1_codes {
            for (k, m) in f2::zigzag_kernel_support(code) {
                let mut v = vec![false; a.len()];
                for j in k..=m {
                    v[a.index(*i, j).expect("support inside A")] = true;
                }
                cols.push(v);
            }
        }
        cols.len() - image_rank(&self.h1, &cols)
    }

    /// `dim Coker(v2 + h2) = dim(Ker v2ᵀ ∩ Ker h2ᵀ)`, with `Ker v2ᵀ` from the dual zigzags.
    pub fn joint_cokernel(&self) -> usize {
        let d = &self.regions.d;
        let mut covered = vec![false; d.len()];
        let mut cols = Vec::new();
        for (i, code) in &self.v2_codes {
            if let Some((lo, hi)) = d.line(*i) {
                for j in lo..=hi {
                    covered[d.index(*i, j).expect("point of D")] = true;
                }
            }
            for (k, m) in f2::zigzag_kernel_support(&code.dual()) {
                let mut v = vec![false; d.len()];
                for j in -m..=-k {
                    v[d.index(*i, j).expect("support inside D")] = true;
                }
                cols.push(v);
            }
        }
        // Lines of D with no line of B above them contribute every generator.
        for (idx, &c) in covered.iter().enumerate() {
            if !c {
                let mut v = vec![false; d.len()];
                v[idx] = true;
                cols.push(v);
            }
        }
        let h2t = self.h2.transpose();
        cols.len() - image_rank(&h2t, &cols)
    }
}

/// Rank of `m` applied to a list of column vectors.
fn image_rank(m: &BitMatrix, cols: &[Vec<bool>]) -> usize {
    let mut img = BitMatrix::zeros(m.rows(), cols.len());
    for (c, v) in cols.iter().enumerate() {
        for (k, &bit) in v.iter().enumerate() {
            if bit {
                for r in 0..m.rows() {
                    if m.get(r, k) {
                        img.toggle(r, c);
                    }
                }
            }
        }
    }
    img.rank()
}

/// Which of the two kernel/cokernel criteria decides the verdict for a Spin^c class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Criterion {
    /// Euler characteristic `+1`: L-space iff kernel + cokernel = 1.
    A,
    /// Euler characteristic `-1`: L-space iff kernel + cokernel = 0.
    B,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpinCResult {
    pub spinc: SpinC,
    pub dim: usize,
    pub euler: i64,
    pub generators: usize,
    pub joint_kernel: usize,
    pub joint_cokernel: usize,
    pub criterion: Criterion,
}

impl SpinCResult {
    pub fn is_lspace(&self) -> bool {
        self.dim == 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HFResult {
    pub link: String,
    pub framing: Framing,
    pub det: i64,
    pub case: TruncationCase,
    pub shape: Shape,
    pub b: i64,
    pub spinc: Vec<SpinCResult>,
    pub total: usize,
    pub lspace: bool,
    pub unreliable: bool,
}

impl HFResult {
    pub fn dim_of(&self, s: SpinC) -> Option<usize> {
        self.spinc.iter().find(|r| r.spinc == s).map(|r| r.dim)
    }

    /// Human-readable reason for the verdict.
    pub fn certificate(&self) -> String {
        match self.spinc.iter().find(|r| !r.is_lspace()) {
            None => format!(
                "every Spin^c class has dim 1 ({} classes, total {})",
                self.spinc.len(),
                self.total
            ),
            Some(r) => {
                let want = match r.criterion {
                    Criterion::A => 1,
                    Criterion::B => 0,
                };
                format!(
                    "Spin^c {}: Ker∩Ker dimension {} + Coker dimension {} = {} != {} (criterion {:?}), dim {}",
                    r.spinc,
                    r.joint_kernel,
                    r.joint_cokernel,
                    r.joint_kernel + r.joint_cokernel,
                    want,
                    r.criterion,
                    r.dim
                )
            }
        }
    }
}

impl fmt::Display for HFResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unreliable {
            writeln!(f, "UNRELIABLE: input failed L-space gate")?;
        }
        let Framing { p1, p2, lk } = self.framing;
        writeln!(
            f,
            "{}: framing ({p1}, {p2}), lk = {lk}, det = {}, case {}, b = {}",
            self.link, self.det, self.case, self.b
        )?;
        for r in &self.spinc {
            writeln!(f, "  spin^c {:<14} dim {}", r.spinc.to_string(), r.dim)?;
        }
        writeln!(f, "total {}", self.total)?;
        writeln!(
            f,
            "verdict: {}",
            if self.lspace {
                "L-space"
            } else {
                "not an L-space"
            }
        )?;
        writeln!(f, "certificate: {}", self.certificate())
    }
}

/// A link prepared for surgery computations: gated, with its n-table and bound `b`.
#[derive(Clone, Debug)]
pub struct Surgeon {
    link: LinkData,
    table: NTable,
    swapped: NTable,
    b: i64,
    report: ObstructionReport,
    unreliable: bool,
}

impl Surgeon {
    /// Refuses links that fail a polynomial obstruction unless `force` is set.
    pub fn new(link: LinkData, force: bool) -> Result<Self> {
        let report = obstruction_report(&link);
        let passes = report.passes();
        if !passes && !force {
            let w = report
                .failures()
                .map(|c| format!("{}: {}", c.check, c.witness.clone().unwrap_or_default()))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(Error::Obstructed(format!(
                "{} is not an L-space link ({w})",
                link.name
            )));
        }
        let table = NTable::new(&link);
        let b = match table.nu_profile() {
            Ok(p) => p.b,
            Err(e) if passes => return Err(e),
            Err(_) => table.radius() + 1,
        };
        Ok(Surgeon {
            swapped: NTable::new(&link.swapped()),
            link,
            table,
            b,
            report,
            unreliable: !passes,
        })
    }

    pub fn link(&self) -> &LinkData {
        &self.link
    }

    pub fn table(&self) -> &NTable {
        &self.table
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn report(&self) -> &ObstructionReport {
        &self.report
    }

    pub fn framing(&self, p1: i64, p2: i64) -> Framing {
        Framing::new(p1, p2, self.link.lk)
    }

    pub fn truncation(&self, f: &Framing, opts: TruncationOptions) -> Result<Truncation> {
        Truncation::choose(*f, self.b, opts)
    }

    pub fn complex(&self, f: &Framing, s: SpinC, opts: TruncationOptions) -> Result<Complex> {
        let t = self.truncation(f, opts)?;
        Ok(Complex::build(&self.table, f, s, t.regions(s)))
    }

    pub fn hf_hat(&self, p1: i64, p2: i64) -> Result<HFResult> {
        self.hf_hat_with(p1, p2, TruncationOptions::default())
    }

    /// Framings with `p2 = 0` are computed on the component-swapped link.
    pub fn hf_hat_with(&self, p1: i64, p2: i64, opts: TruncationOptions) -> Result<HFResult> {
        let f = self.framing(p1, p2);
        let flip = p2 == 0 && p1 != 0 && f.det() != 0;
        let (g, table) = if flip {
            (f.swapped(), &self.swapped)
        } else {
            (f, &self.table)
        };
        let trunc = self.truncation(&g, opts)?;
        let mut spinc = Vec::new();
        for s in g.spinc_reps()? {
            let mut r = self.spinc_dim(table, &g, &trunc, s)?;
            if flip {
                r.spinc = f.reduce(s.s2, s.s1)?;
            }
            spinc.push(r);
        }
        spinc.sort_by_key(|r| r.spinc);
        let total = spinc.iter().map(|r| r.dim).sum();
        let lspace = spinc.iter().all(|r| r.is_lspace());
        if lspace != (total == f.det().unsigned_abs() as usize) {
            return Err(Error::Internal(format!(
                "verdict mismatch at ({p1}, {p2}): total {total}, det {}",
                f.det()
            )));
        }
        Ok(HFResult {
            link: self.link.name.clone(),
            framing: f,
            det: f.det(),
            case: trunc.case,
            shape: trunc.shape,
            b: trunc.b,
            spinc,
            total,
            lspace,
            unreliable: self.unreliable,
        })
    }

    pub fn is_lspace(&self, p1: i64, p2: i64) -> Result<bool> {
        Ok(self.hf_hat(p1, p2)?.lspace)
    }

    fn spinc_dim(
        &self,
        table: &NTable,
        f: &Framing,
        trunc: &Truncation,
        s: SpinC,
    ) -> Result<SpinCResult> {
        let regions = trunc.regions(s);
        let euler = regions.euler();
        if euler != f.det().signum() {
            return Err(Error::Internal(format!(
                "truncation at {s} for ({}, {}) has Euler characteristic {euler}",
                f.p1, f.p2
            )));
        }
        let cx = Complex::build(table, f, s, regions);
        if !cx.is_chain_complex() {
            return Err(Error::Internal(format!(
                "d^2 != 0 at {s} for ({}, {})",
                f.p1, f.p2
            )));
        }
        let by_rank = cx.rank_dim();
        let by_square = cx.square_dim()?;
        let (k, co) = (cx.joint_kernel(), cx.joint_cokernel());
        let by_zigzag = 2 * (k + co) as i64 - euler;
        if by_rank != by_square || by_rank as i64 != by_zigzag {
            return Err(Error::Internal(format!(
                "dimension paths disagree at {s} for ({}, {}): rank {by_rank}, square {by_square}, zigzag {by_zigzag}",
                f.p1, f.p2
            )));
        }
        Ok(SpinCResult {
            spinc: s,
            dim: by_rank,
            euler,
            generators: cx.regions.generators(),
            joint_kernel: k,
            joint_cokernel: co,
            criterion: if euler > 0 {
                Criterion::A
            } else {
                Criterion::B
            },
        })
    }
}

/// The class of `-s`.
pub fn conjugate(f: &Framing, s: SpinC) -> Result<SpinC> {
    f.reduce(-s.s1, -s.s2)
}
