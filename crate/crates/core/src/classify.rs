//! Framing-grid sweeps, rendering, certificate propagation, and the `T(2,2n)` oracle.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hinv::Axis;
use crate::lattice::Framing;
use crate::surgery::Surgeon;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Lspace,
    NotLspace,
    B1Positive,
    Unsupported,
}

impl Verdict {
    pub fn glyph(self) -> char {
        match self {
            Verdict::Lspace => 'L',
            Verdict::NotLspace => '.',
            Verdict::B1Positive => '0',
            Verdict::Unsupported => 'x',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub p1: i64,
    pub p2: i64,
    pub verdict: Verdict,
}

/// Verdicts on the square `[lo, hi]^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionVerdict {
    pub link: String,
    pub lk: i64,
    pub range: (i64, i64),
    pub cells: Vec<Cell>,
    pub unreliable: bool,
}

impl RegionVerdict {
    pub fn get(&self, p1: i64, p2: i64) -> Option<Verdict> {
        let (lo, hi) = self.range;
        if p1 < lo || p1 > hi || p2 < lo || p2 > hi {
            return None;
        }
        let w = hi - lo + 1;
        let idx = (hi - p2) * w + (p1 - lo);
        self.cells.get(idx as usize).map(|c| c.verdict)
    }

    pub fn lspaces(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.cells
            .iter()
            .filter(|c| c.verdict == Verdict::Lspace)
            .map(|c| (c.p1, c.p2))
    }
}

pub fn classify_cell(surgeon: &Surgeon, p1: i64, p2: i64) -> Result<Verdict> {
    if Framing::new(p1, p2, surgeon.link().lk).det() == 0 {
        return Ok(Verdict::B1Positive);
    }
    match surgeon.hf_hat(p1, p2) {
        Ok(r) if r.lspace => Ok(Verdict::Lspace),
        Ok(_) => Ok(Verdict::NotLspace),
        Err(Error::UnsupportedFraming { .. }) => Ok(Verdict::Unsupported),
        Err(e) => Err(e),
    }
}

/// Classify every framing in `[lo, hi]^2`, rows ordered by descending `p2`.
pub fn region_scan(surgeon: &Surgeon, lo: i64, hi: i64) -> Result<RegionVerdict> {
    let coords: Vec<(i64, i64)> = if lo > hi {
        Vec::new()
    } else {
        (lo..=hi)
            .rev()
            .flat_map(|p2| (lo..=hi).map(move |p1| (p1, p2)))
            .collect()
    };
    let cells = coords
        .par_iter()
        .map(|&(p1, p2)| classify_cell(surgeon, p1, p2).map(|verdict| Cell { p1, p2, verdict }))
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionVerdict {
        link: surgeon.link().name.clone(),
        lk: surgeon.link().lk,
        range: (lo, hi),
        cells,
        unreliable: !surgeon.report().passes(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "svg" => Ok(Format::Svg),
            "json" => Ok(Format::Json),
            other => Err(Error::Input(format!("unknown format {other:?}"))),
        }
    }
}

pub fn render(region: &RegionVerdict, format: Format) -> String {
    match format {
        Format::Ascii => render_ascii(region),
        Format::Svg => render_svg(region),
        Format::Json => serde_json::to_string_pretty(region).expect("serializable"),
    }
}

/// One row per `p2`, highest first; `L` L-space, `.` not, `0` det = 0, `x` unsupported.
pub fn render_ascii(region: &RegionVerdict) -> String {
    let (lo, hi) = region.range;
    let mut out = String::new();
    if lo > hi {
        return out;
    }
    let w = (hi - lo + 1) as usize;
    for row in region.cells.chunks(w) {
        out.extend(row.iter().map(|c| c.verdict.glyph()));
        out.push('\n');
    }
    out
}

const CELL: i64 = 10;
const MARGIN: i64 = 20;

pub fn render_svg(region: &RegionVerdict) -> String {
    let (lo, hi) = region.range;
    let mut s = String::new();
    if lo > hi {
        s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"0\" height=\"0\"/>\n");
        return s;
    }
    let size = (hi - lo + 1) * CELL + 2 * MARGIN;
    let x = |p1: f64| MARGIN as f64 + (p1 - lo as f64) * CELL as f64 + CELL as f64 / 2.0;
    let y = |p2: f64| MARGIN as f64 + (hi as f64 - p2) * CELL as f64 + CELL as f64 / 2.0;
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(
        s,
        "<title>L-space surgeries on {}</title>",
        escape(&region.link)
    );
    let _ = writeln!(
        s,
        "<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>"
    );
    if lo <= 0 && 0 <= hi {
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{MARGIN}\" x2=\"{:.2}\" y2=\"{}\" stroke=\"#bbb\"/>",
            x(0.0),
            x(0.0),
            size - MARGIN
        );
        let _ = writeln!(
            s,
            "<line x1=\"{MARGIN}\" y1=\"{:.2}\" x2=\"{}\" y2=\"{:.2}\" stroke=\"#bbb\"/>",
            y(0.0),
            size - MARGIN,
            y(0.0)
        );
    }
    for branch in hyperbola(region.lk, lo, hi) {
        let pts: Vec<String> = branch
            .iter()
            .map(|&(a, b)| format!("{:.2},{:.2}", x(a), y(b)))
            .collect();
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\"/>",
            pts.join(" ")
        );
    }
    for c in &region.cells {
        let (cx, cy) = (x(c.p1 as f64), y(c.p2 as f64));
        match c.verdict {
            Verdict::Lspace => {
                let _ = writeln!(
                    s,
                    "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"3\" fill=\"#d62728\"/>"
                );
            }
            Verdict::Unsupported => {
                let _ = writeln!(
                    s,
                    "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"2\" fill=\"none\" stroke=\"#999\"/>"
                );
            }
            _ => {}
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Sample points of `p1·p2 = lk^2` inside the plotting square.
fn hyperbola(lk: i64, lo: i64, hi: i64) -> Vec<Vec<(f64, f64)>> {
    let (lo, hi) = (lo as f64, hi as f64);
    if lk == 0 {
        let mut out = Vec::new();
        if lo <= 0.0 && 0.0 <= hi {
            out.push(vec![(lo, 0.0), (hi, 0.0)]);
            out.push(vec![(0.0, lo), (0.0, hi)]);
        }
        return out;
    }
    let k = (lk * lk) as f64;
    let mut out = Vec::new();
    for sign in [1.0, -1.0] {
        let mut branch = Vec::new();
        for step in 0..=400 {
            let p1 = sign * (0.05 + step as f64 * 0.1);
            let p2 = k / p1;
            if (lo..=hi).contains(&p1) && (lo..=hi).contains(&p2) {
                branch.push((p1, p2));
            }
        }
        if branch.len() > 1 {
            out.push(branch);
        }
    }
    out
}

/// How a certified framing was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Provenance {
    Seed,
    /// Varying one coefficient from a certified framing; the product of the determinant
    /// and the remaining component's coefficient fixes the direction.
    Induction {
        from: (i64, i64),
        axis: Axis,
        det: i64,
        det_sublink: i64,
    },
    /// All coefficients at least those of a framing positive on every sublink.
    Positive {
        from: (i64, i64),
        det: i64,
    },
    /// One of the five cases for two unknotted components.
    TwoUnknots {
        from: (i64, i64),
        case: u8,
        det: i64,
    },
}

/// L-space surgery slopes of a component knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnotKind {
    Unknot,
    /// A positive L-space knot of the given genus.
    LspaceKnot {
        genus: i64,
    },
}

impl KnotKind {
    pub fn lspace_slope(self, p: i64) -> bool {
        match self {
            KnotKind::Unknot => p != 0,
            KnotKind::LspaceKnot { genus } => p >= 2 * genus - 1,
        }
    }

    pub fn of(link: &crate::LinkData, axis: Axis) -> KnotKind {
        let poly = link.component_poly(axis);
        match poly.max_exp() {
            Some(g) if g.doubled() > 0 => KnotKind::LspaceKnot {
                genus: g.doubled() / 2,
            },
            _ => KnotKind::Unknot,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropagationInput {
    pub lk: i64,
    pub components: [KnotKind; 2],
    pub seeds: Vec<(i64, i64)>,
    pub range: (i64, i64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateSet {
    pub facts: BTreeMap<(i64, i64), Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub p1: i64,
    pub p2: i64,
    pub det: i64,
    pub provenance: Provenance,
}

impl CertificateSet {
    /// Certified framings in lexicographic order, each with its determinant.
    pub fn list(&self, lk: i64) -> Vec<Fact> {
        self.facts
            .iter()
            .map(|(&(p1, p2), why)| Fact {
                p1,
                p2,
                det: p1 * p2 - lk * lk,
                provenance: why.clone(),
            })
            .collect()
    }

    pub fn contains(&self, p1: i64, p2: i64) -> bool {
        self.facts.contains_key(&(p1, p2))
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }
}

/// Close the seed framings under the induction rule, the positive criterion and, when both
/// components are unknots, the two-unknot rules. Only framings inside `range` with
/// `det != 0` are recorded.
pub fn propagate(input: &PropagationInput) -> CertificateSet {
    let (lo, hi) = input.range;
    let lk = input.lk;
    let det = |p1: i64, p2: i64| p1 * p2 - lk * lk;
    let inside = |p: i64| lo <= p && p <= hi;
    let [k1, k2] = input.components;
    let unknots = k1 == KnotKind::Unknot && k2 == KnotKind::Unknot;
    let mut set = CertificateSet::default();
    let mut queue = VecDeque::new();
    let add = |set: &mut CertificateSet,
               queue: &mut VecDeque<(i64, i64)>,
               p: (i64, i64),
               why: Provenance| {
        if inside(p.0) && inside(p.1) && det(p.0, p.1) != 0 && !set.facts.contains_key(&p) {
            set.facts.insert(p, why);
            queue.push_back(p);
        }
    };
    for &s in &input.seeds {
        add(&mut set, &mut queue, s, Provenance::Seed);
    }
    while let Some((p1, p2)) = queue.pop_front() {
        let d = det(p1, p2);
        // Vary p1 with the L2 surgery as the sublink, then p2 with L1.
        if k2.lspace_slope(p2) {
            let step = if d * p2 > 0 { 1 } else { -1 };
            add(
                &mut set,
                &mut queue,
                (p1 + step, p2),
                Provenance::Induction {
                    from: (p1, p2),
                    axis: Axis::L1,
                    det: d,
                    det_sublink: p2,
                },
            );
        }
        if k1.lspace_slope(p1) {
            let step = if d * p1 > 0 { 1 } else { -1 };
            add(
                &mut set,
                &mut queue,
                (p1, p2 + step),
                Provenance::Induction {
                    from: (p1, p2),
                    axis: Axis::L2,
                    det: d,
                    det_sublink: p1,
                },
            );
        }
        if d > 0 && p1 > 0 && p2 > 0 && k1.lspace_slope(p1) && k2.lspace_slope(p2) {
            for n1 in p1..=hi {
                for n2 in p2..=hi {
                    add(
                        &mut set,
                        &mut queue,
                        (n1, n2),
                        Provenance::Positive {
                            from: (p1, p2),
                            det: d,
                        },
                    );
                }
            }
        }
        if unknots {
            for (case, q) in two_unknot_consequences(p1, p2, lk, lo, hi) {
                add(
                    &mut set,
                    &mut queue,
                    q,
                    Provenance::TwoUnknots {
                        from: (p1, p2),
                        case,
                        det: d,
                    },
                );
            }
        }
    }
    set
}

fn two_unknot_consequences(p1: i64, p2: i64, lk: i64, lo: i64, hi: i64) -> Vec<(u8, (i64, i64))> {
    let prod = p1 * p2;
    let l2 = lk * lk;
    let mut out = Vec::new();
    let up = |p: i64| p..=hi;
    let down = |p: i64| lo..=p;
    if prod > l2 && p1 > 0 && p2 > 0 {
        for a in up(p1) {
            for b in up(p2) {
                out.push((1, (a, b)));
            }
        }
    }
    if prod > l2 && p1 < 0 && p2 < 0 {
        for a in down(p1) {
            for b in down(p2) {
                out.push((2, (a, b)));
            }
        }
    }
    if p1 > 0 && p2 < 0 {
        for a in up(p1) {
            for b in down(p2) {
                out.push((3, (a, b)));
            }
        }
    }
    if p1 < 0 && p2 > 0 {
        for a in down(p1) {
            for b in up(p2) {
                out.push((3, (a, b)));
            }
        }
    }
    if prod < l2 && p1 > 0 && p2 > 0 {
        for a in up(p1) {
            for b in down(-1) {
                out.push((4, (a, b)));
            }
        }
        for a in down(-1) {
            for b in up(p2) {
                out.push((4, (a, b)));
            }
        }
        for a in 1..=p1 {
            for b in 1..=p2 {
                out.push((4, (a, b)));
            }
        }
    }
    if prod < l2 && p1 < 0 && p2 < 0 {
        for a in down(p1 - 1) {
            for b in 1..=hi {
                out.push((5, (a, b)));
            }
        }
        for a in 1..=hi {
            for b in down(p2 - 1) {
                out.push((5, (a, b)));
            }
        }
        for a in p1..=-1 {
            for b in p2..=-1 {
                out.push((5, (a, b)));
            }
        }
    }
    out
}

/// Which reading of the `T(2,2n)` conditions to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusReading {
    /// The conditions as printed.
    Literal,
    /// With the upper bound of condition (6) read as `m(1 - 1/(n-p))` and condition (5)
    /// also covering the smaller coefficient `n - 1`.
    Corrected,
}

/// L-space verdict for `(p, q)`-surgery on `T(2, 2n)`; `None` when `det = 0`.
pub fn torus_oracle(n: i64, p: i64, q: i64) -> Option<bool> {
    torus_oracle_with(n, p, q, TorusReading::Corrected)
}

pub fn torus_oracle_with(n: i64, p: i64, q: i64, reading: TorusReading) -> Option<bool> {
    assert!(n >= 2);
    if p * q == n * n {
        return None;
    }
    if p == n || q == n {
        return Some(true);
    }
    let (p, q) = if p >= q { (p, q) } else { (q, p) };
    let c1 = p >= n + 2 && q > n;
    let c2 = p >= 2 * n && q <= n - 2 && !coprime_pair((n - q - 1, n - q), (n - 1, n), p - n);
    let c3 = n + 2 <= p
        && p <= 2 * n
        && q <= n - 2
        && !coprime_pair((n - q - 1, n - q), (p - n - 1, p - n), n);
    let c4 = p == n + 1 && q <= n + 1;
    let c5 = match reading {
        TorusReading::Literal => p == n - 1 && q < n,
        TorusReading::Corrected => (p == n - 1 && q < n) || q == n - 1,
    };
    let upper6 = match reading {
        TorusReading::Literal => (1, n - p),
        TorusReading::Corrected => (n - p - 1, n - p),
    };
    let c6 = p <= n - 2 && q <= p && !coprime_pair((n - 1, n), upper6, n - q);
    Some(c1 || c2 || c3 || c4 || c5 || c6)
}

/// Whether coprime `m > a > 0` exist with `m·lo < a < m·hi` and `m < m_bound`,
/// fractions given as `(numerator, positive denominator)`.
fn coprime_pair(lo: (i64, i64), hi: (i64, i64), m_bound: i64) -> bool {
    (2..m_bound)
        .any(|m| (1..m).any(|a| m * lo.0 < a * lo.1 && a * hi.1 < m * hi.0 && m.gcd(&a) == 1))
}

/// Framings in `[lo, hi]^2` listed as L-spaces by the closed-form `T(2,2n)` description.
pub fn torus_listed(n: i64, lo: i64, hi: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p1 in lo..=hi {
        for p2 in lo..=hi {
            let listed = (p1 > n && p2 > n)
                || (p1 <= n + 1 && p2 == n - 1)
                || (p1 <= -1 && p2 >= n - 1)
                || (p1 == n && p2 != n);
            if listed {
                out.push((p1, p2));
            }
        }
    }
    out
}
