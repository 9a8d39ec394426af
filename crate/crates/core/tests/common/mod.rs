//! Strategies, brute-force oracles and property checks shared by the property suite and the
//! acceptance run.
#![allow(dead_code)]

use std::collections::BTreeSet;

use lspace_core::f2::{self, BitMatrix, ZigzagCode};
use lspace_core::surgery::{conjugate, ShapeChoice, TruncationOptions};
use lspace_core::{corpus, Axis, Error, HalfInt, LinkData, NTable, Surgeon};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub type Check = Result<(), TestCaseError>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($msg)+)));
        }
    };
}

/// A runner with a fixed seed, for reproducible acceptance counts.
pub fn fixed_runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

// ---------------------------------------------------------------- zigzags

pub fn zigzag_code() -> impl Strategy<Value = ZigzagCode> {
    (-3i64..3, 0i64..9, -4i64..4, 0i64..10)
        .prop_flat_map(|(a0, alen, b0, blen)| {
            let a = (a0, a0 + alen - 1);
            let b = (b0, b0 + blen - 1);
            let span = (a0.min(b0) - 1)..(a0.max(b0) + 10);
            (
                Just(a),
                Just(b),
                proptest::collection::btree_set(span.clone(), 0..12),
                proptest::collection::btree_set(span, 0..12),
            )
        })
        .prop_map(|(a, b, s1, s2)| ZigzagCode::new(a, b, s1, s2))
}

fn b_has(code: &ZigzagCode, t: i64) -> bool {
    code.b.0 <= t && t <= code.b.1
}

/// Image of `sum_{s in support} A_s`, straight from the code's definition.
fn apply(code: &ZigzagCode, support: &BTreeSet<i64>) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    let mut flip = |t: i64| {
        if !out.remove(&t) {
            out.insert(t);
        }
    };
    for &s in support {
        if code.s1.contains(&s) && b_has(code, s) {
            flip(s);
        }
        if code.s2.contains(&s) && b_has(code, s + 1) {
            flip(s + 1);
        }
    }
    out
}

fn a_points(code: &ZigzagCode) -> Vec<i64> {
    (code.a.0..=code.a.1).collect()
}

/// Kernel dimension by enumerating every subset of the sources.
pub fn brute_kernel_dim(code: &ZigzagCode) -> usize {
    let pts = a_points(code);
    let n = pts.len();
    let mut count = 0u64;
    for mask in 0u64..(1 << n) {
        let support: BTreeSet<i64> = (0..n)
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| pts[k])
            .collect();
        if apply(code, &support).is_empty() {
            count += 1;
        }
    }
    count.trailing_zeros() as usize
}

pub fn brute_cokernel_dim(code: &ZigzagCode) -> usize {
    let pts = a_points(code);
    let b_len = (code.b.1 - code.b.0 + 1).max(0) as usize;
    b_len - (pts.len() - brute_kernel_dim(code))
}

pub fn check_zigzag(code: &ZigzagCode) -> Check {
    let kernel = brute_kernel_dim(code);
    let supports = f2::zigzag_kernel_support(code);
    ensure!(
        supports.len() == kernel,
        "kernel dim {} != brute {kernel} for {code:?}",
        supports.len()
    );
    for &(k, m) in &supports {
        let support: BTreeSet<i64> = (k..=m).collect();
        ensure!(
            apply(code, &support).is_empty(),
            "support [{k}, {m}] not in kernel of {code:?}"
        );
    }
    // Interval supports are independent iff their left endpoints differ.
    let lefts: BTreeSet<i64> = supports.iter().map(|s| s.0).collect();
    ensure!(
        lefts.len() == supports.len(),
        "dependent supports {supports:?}"
    );
    let co = f2::zigzag_cokernel_dim(code);
    let brute = brute_cokernel_dim(code);
    ensure!(co == brute, "cokernel {co} != brute {brute} for {code:?}");
    ensure!(
        code.to_matrix().rank() == a_points(code).len() - kernel,
        "matrix rank disagrees with brute kernel for {code:?}"
    );
    Ok(())
}

// ---------------------------------------------------------------- squares

pub struct Square {
    pub dims: [usize; 4],
    pub h1: BitMatrix,
    pub v1: BitMatrix,
    pub h2: BitMatrix,
    pub v2: BitMatrix,
}

fn bits(rows: usize, cols: usize, v: &[bool]) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, v[r * cols + c]);
        }
    }
    m
}

/// Random `h1`, `v1`, then `(h2, v2)` drawn from the solutions of `h2·v1 = v2·h1`.
pub fn commuting_square() -> impl Strategy<Value = Square> {
    (0usize..5, 0usize..5, 0usize..5, 0usize..5)
        .prop_flat_map(|(a, b, c, d)| {
            (
                Just([a, b, c, d]),
                proptest::collection::vec(any::<bool>(), b * a),
                proptest::collection::vec(any::<bool>(), c * a),
                proptest::collection::vec(any::<bool>(), 64),
            )
        })
        .prop_map(|([a, b, c, d], h1, v1, pick)| {
            let h1 = bits(b, a, &h1);
            let v1 = bits(c, a, &v1);
            // Unknowns: h2 (d x c) then v2 (d x b); one equation per entry of the d x a product.
            let unknowns = d * c + d * b;
            let mut sys = BitMatrix::zeros(d * a, unknowns);
            for r in 0..d {
                for col in 0..a {
                    let eq = r * a + col;
                    for k in 0..c {
                        if v1.get(k, col) {
                            sys.toggle(eq, r * c + k);
                        }
                    }
                    for k in 0..b {
                        if h1.get(k, col) {
                            sys.toggle(eq, d * c + r * b + k);
                        }
                    }
                }
            }
            let basis = sys.kernel_basis();
            let mut x = vec![false; unknowns];
            for (i, v) in basis.iter().enumerate() {
                if pick[i % pick.len()] ^ (i >= pick.len()) {
                    for (xi, &vi) in x.iter_mut().zip(v) {
                        *xi ^= vi;
                    }
                }
            }
            let h2 = bits(d, c, &x[..d * c]);
            let v2 = bits(d, b, &x[d * c..]);
            Square {
                dims: [a, b, c, d],
                h1,
                v1,
                h2,
                v2,
            }
        })
}

impl std::fmt::Debug for Square {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Square{:?}", self.dims)
    }
}

pub fn check_square(sq: &Square) -> Check {
    let [a, b, c, d] = sq.dims;
    ensure!(
        sq.v2.mul(&sq.h1) == sq.h2.mul(&sq.v1),
        "generated square does not commute"
    );
    let lemma = f2::square_lemma_dim(a, b, c, d, &sq.h1, &sq.v1, &sq.h2, &sq.v2)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let by_rank = f2::square_rank_dim(sq.dims, &sq.h1, &sq.v1, &sq.h2, &sq.v2);
    ensure!(
        lemma == by_rank,
        "square lemma {lemma} != rank path {by_rank} on {sq:?}"
    );
    for m in [&sq.h1, &sq.v1, &sq.h2, &sq.v2] {
        ensure!(
            m.rank() == m.transpose().rank(),
            "rank differs from rank of transpose"
        );
    }
    Ok(())
}

// ---------------------------------------------------------------- surgeries

fn core_err(e: Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn supported(link: &LinkData, p1: i64, p2: i64) -> bool {
    p1 * p2 != link.lk * link.lk
}

/// Per-Spin^c dimensions are unchanged by enlarging the truncation, and both shapes agree.
pub fn check_stability(s: &Surgeon, p1: i64, p2: i64) -> Check {
    if !supported(s.link(), p1, p2) {
        return Ok(());
    }
    let base = s.hf_hat(p1, p2).map_err(core_err)?;
    let variants = [
        TruncationOptions {
            shape: ShapeChoice::Auto,
            enlarge: 2,
        },
        TruncationOptions {
            shape: ShapeChoice::Sheared,
            enlarge: 0,
        },
        TruncationOptions {
            shape: ShapeChoice::Sheared,
            enlarge: 2,
        },
        TruncationOptions {
            shape: ShapeChoice::Parallelogram,
            enlarge: 2,
        },
    ];
    for opts in variants {
        let other = match s.hf_hat_with(p1, p2, opts) {
            Ok(r) => r,
            // Only the rectangle reaches (0, 0).
            Err(Error::UnsupportedFraming { .. })
                if opts.shape == ShapeChoice::Parallelogram || (p1, p2) == (0, 0) =>
            {
                continue
            }
            Err(e) => return Err(core_err(e)),
        };
        for r in &base.spinc {
            ensure!(
                other.dim_of(r.spinc) == Some(r.dim),
                "{} ({p1}, {p2}) {}: dim {} vs {:?} with {opts:?}",
                s.link().name,
                r.spinc,
                r.dim,
                other.dim_of(r.spinc)
            );
        }
    }
    Ok(())
}

/// Odd dimensions, the `|det|` lower bound, conjugation and component-swap symmetry.
pub fn check_structure(s: &Surgeon, swapped: &Surgeon, p1: i64, p2: i64) -> Check {
    if !supported(s.link(), p1, p2) {
        return Ok(());
    }
    let r = s.hf_hat(p1, p2).map_err(core_err)?;
    let det = r.det.unsigned_abs() as usize;
    for x in &r.spinc {
        ensure!(x.dim % 2 == 1, "even dim {} at {}", x.dim, x.spinc);
        let bar = conjugate(&r.framing, x.spinc).map_err(core_err)?;
        ensure!(
            r.dim_of(bar) == Some(x.dim),
            "{} ({p1}, {p2}): dim {} at {} but {:?} at {bar}",
            s.link().name,
            x.dim,
            x.spinc,
            r.dim_of(bar)
        );
    }
    ensure!(r.total >= det, "total {} below |det| {det}", r.total);
    ensure!(
        r.lspace == (r.total == det),
        "verdict inconsistent with total"
    );
    let t = swapped.hf_hat(p2, p1).map_err(core_err)?;
    ensure!(
        t.total == r.total,
        "{} ({p1}, {p2}): total {} but swapped total {}",
        s.link().name,
        r.total,
        t.total
    );
    Ok(())
}

// ---------------------------------------------------------------- n-tables

/// `V` straight from the component polynomial: `a_k = sum_{e >= k} c_e`,
/// `V(k) = sum_{i >= 1} a_{k+i}`.
pub fn brute_v(link: &LinkData, axis: Axis, k: i64) -> i64 {
    let terms: Vec<(i64, i64)> = link
        .component_poly(axis)
        .terms()
        .map(|(e, c)| (e.to_int().expect("integer exponent"), c))
        .collect();
    let top = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let a = |m: i64| -> i64 { terms.iter().filter(|t| t.0 >= m).map(|t| t.1).sum() };
    (k + 1..=top.max(k + 1)).map(a).sum()
}

/// `n^{+axis}_s` by the defining double sum over the link polynomial.
pub fn brute_n_plus(link: &LinkData, axis: Axis, s1: HalfInt, s2: HalfInt) -> i64 {
    let quad: i64 = link
        .delta()
        .terms()
        .filter(|((e1, e2), _)| *e1 > s1 && *e2 > s2)
        .map(|(_, c)| c)
        .sum();
    let own = match axis {
        Axis::L1 => s1,
        Axis::L2 => s2,
    };
    brute_v(link, axis, (own.doubled() - link.lk).div_euclid(2)) - quad
}

/// Agreement with the double sum, `n^- = n^+` at `-s`, agreement with the component-swapped
/// link, non-negativity, and steps in `{0,1}` along the own coordinate.
pub fn check_ntable(link: &LinkData) -> Check {
    let table = NTable::new(link);
    let swapped = NTable::new(&link.swapped());
    let b = table.nu_profile().map_err(core_err)?.b;
    let pts = table.coset_window(2 * b + 2);
    for &s1 in &pts {
        for &s2 in &pts {
            for axis in [Axis::L1, Axis::L2] {
                let n = table.n_plus(axis, s1, s2);
                ensure!(
                    n == brute_n_plus(link, axis, s1, s2),
                    "{} n^(+{axis})_({s1}, {s2}) = {n} disagrees with the double sum",
                    link.name
                );
                ensure!(n >= 0, "{} negative n at ({s1}, {s2})", link.name);
                ensure!(
                    table.n_minus(axis, s1, s2) == table.n_plus(axis, -s1, -s2),
                    "n^- is not n^+ at -s"
                );
                let other = match axis {
                    Axis::L1 => swapped.n_plus(Axis::L2, s2, s1),
                    Axis::L2 => swapped.n_plus(Axis::L1, s2, s1),
                };
                ensure!(
                    n == other,
                    "{} n^(+{axis})_({s1}, {s2}) = {n} but {other} after swapping components",
                    link.name
                );
                let next = match axis {
                    Axis::L1 => table.n_plus(axis, s1 + HalfInt::ONE, s2),
                    Axis::L2 => table.n_plus(axis, s1, s2 + HalfInt::ONE),
                };
                ensure!(
                    (0..=1).contains(&(n - next)),
                    "{} step of n^(+{axis}) at ({s1}, {s2}) is {}",
                    link.name,
                    n - next
                );
            }
        }
    }
    Ok(())
}

/// The links used by the structural suites.
pub fn corpus_surgeons() -> Vec<(Surgeon, Surgeon)> {
    corpus::lspace_links()
        .into_iter()
        .map(|l| {
            let sw = l.swapped();
            (
                Surgeon::new(l, false).unwrap(),
                Surgeon::new(sw, false).unwrap(),
            )
        })
        .collect()
}
