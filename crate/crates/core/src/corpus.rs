//! Built-in links.

use crate::alexander::LinkData;
use crate::halfint::HalfInt;
use crate::laurent::{LaurentPoly1, LaurentPoly2};

fn unknot() -> LaurentPoly1 {
    LaurentPoly1::one()
}

fn right_trefoil() -> LaurentPoly1 {
    LaurentPoly1::from_doubled([(2, 1), (0, -1), (-2, 1)])
}

fn build(
    name: &str,
    lk: i64,
    delta: LaurentPoly2,
    c: Option<(LaurentPoly1, LaurentPoly1)>,
) -> LinkData {
    let (c1, c2) = match c {
        Some((a, b)) => (Some(a), Some(b)),
        None => (None, None),
    };
    LinkData::new(name, lk, delta, c1, c2).expect("corpus entry is valid")
}

/// Positive Hopf link.
pub fn hopf() -> LinkData {
    build("hopf", 1, LaurentPoly2::from_doubled([(0, 0, 1)]), None)
}

/// Two-component unlink.
pub fn unlink() -> LinkData {
    build("unlink", 0, LaurentPoly2::new(), Some((unknot(), unknot())))
}

/// Polynomial of the two-bridge link `b(4n^2 + 4n, -2n - 1)`, before normalization.
pub fn l_n_polynomial(n: i64) -> LaurentPoly2 {
    let mut p = LaurentPoly2::new();
    for j in -n..n {
        // |j + 1/2| - 1/2
        let r = if j >= 0 { j } else { -j - 1 };
        for i in (-n + r)..=(n - 1 - r) {
            let sign = if (i + j).rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(
                (
                    HalfInt::from_doubled(2 * i + 1),
                    HalfInt::from_doubled(2 * j + 1),
                ),
                sign,
            );
        }
    }
    p
}

/// The two-bridge link `L_n = b(4n^2 + 4n, -2n - 1)`; `L_1` is the Whitehead link.
pub fn l_n(n: i64) -> LinkData {
    assert!(n >= 1);
    build(
        &format!("L_{n}"),
        0,
        l_n_polynomial(n),
        Some((unknot(), unknot())),
    )
}

pub fn whitehead() -> LinkData {
    let mut l = l_n(1);
    l.name = "whitehead".into();
    l
}

/// Polynomial of `T(2, 2n)` with parallel orientations: `((xy)^n - 1)/(xy - 1)`, centered.
pub fn torus_polynomial(n: i64) -> LaurentPoly2 {
    LaurentPoly2::from_doubled((0..n).map(|k| (2 * k - (n - 1), 2 * k - (n - 1), 1)))
}

/// The torus link `T(2, 2n)`, linking number `n`.
pub fn torus(n: i64) -> LinkData {
    assert!(n >= 1);
    build(&format!("T(2,{})", 2 * n), n, torus_polynomial(n), None)
}

/// `T(2, 2n)` with the second component reversed, linking number `-n`.
pub fn torus_reversed(n: i64) -> LinkData {
    assert!(n >= 1);
    build(
        &format!("T(2,{}) reversed", 2 * n),
        -n,
        torus_polynomial(n).invert_y(),
        None,
    )
}

/// `L7n2`: an unknot and a right-handed trefoil. Not an L-space link.
pub fn l7n2() -> LinkData {
    build(
        "L7n2",
        0,
        LaurentPoly2::from_doubled([(1, 1, 1), (-1, 1, -1), (1, -1, -1), (-1, -1, 1)]),
        Some((unknot(), right_trefoil())),
    )
}

/// Coefficients of the mirror of `L7a7`, a three-component L-space link, keyed by
/// doubled exponents in `(u, v, w)`.
pub fn l7a7_mirror() -> Vec<([i64; 3], i64)> {
    vec![
        ([1, 1, 1], 1),
        ([1, 1, -1], -1),
        ([1, -1, 1], -1),
        ([1, -1, -1], 2),
        ([-1, 1, 1], -2),
        ([-1, 1, -1], 1),
        ([-1, -1, 1], 1),
        ([-1, -1, -1], -1),
    ]
}

/// Every built-in two-component L-space link with small parameters.
pub fn lspace_links() -> Vec<LinkData> {
    let mut v = vec![hopf(), unlink()];
    v.extend((1..=3).map(l_n));
    v.extend((2..=4).map(torus));
    v.push(torus_reversed(2));
    v
}

/// Look up a built-in link by name, e.g. `whitehead`, `L_3`, `T(2,6)`, `l7n2`.
pub fn by_name(name: &str) -> Option<LinkData> {
    let key = name.trim().to_ascii_lowercase().replace(' ', "");
    let num = |prefix: &str| -> Option<i64> { key.strip_prefix(prefix)?.parse().ok() };
    match key.as_str() {
        "hopf" => return Some(hopf()),
        "unlink" => return Some(unlink()),
        "whitehead" | "wh" => return Some(whitehead()),
        "l7n2" => return Some(l7n2()),
        _ => {}
    }
    if let Some(n) = num("l_").or_else(|| num("l")) {
        return (n >= 1).then(|| l_n(n));
    }
    if let Some(rest) = key.strip_prefix("t(2,") {
        if let Some(inner) = rest.strip_suffix(")reversed") {
            let m: i64 = inner.parse().ok()?;
            return (m >= 2 && m % 2 == 0).then(|| torus_reversed(m / 2));
        }
        let m: i64 = rest.strip_suffix(')')?.parse().ok()?;
        return (m >= 2 && m % 2 == 0).then(|| torus(m / 2));
    }
    None
}
