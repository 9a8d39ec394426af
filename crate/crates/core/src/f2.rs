//! Linear algebra over GF(2), the square-complex dimension formula, and zigzag kernels.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Dense GF(2) matrix with bit-packed rows. A map `X -> Y` has `dim Y` rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.as_ref().len(), cols, "ragged rows");
            for (c, &v) in row.as_ref().iter().enumerate() {
                m.set(r, c, v & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words..(r + 1) * self.words]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.bits[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.bits[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let src = other.row(k).to_vec();
                    let dst = &mut out.bits[r * out.words..(r + 1) * out.words];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let mut out = self.clone();
        for (d, s) in out.bits.iter_mut().zip(&other.bits) {
            *d ^= s;
        }
        out
    }

    /// `[self; other]`, stacking rows.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "shape mismatch");
        let mut out = self.clone();
        out.rows += other.rows;
        out.bits.extend_from_slice(&other.bits);
        out
    }

    /// `[self | other]`, placing columns side by side.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(r, c, true);
                }
            }
            for c in 0..other.cols {
                if other.get(r, c) {
                    out.set(r, self.cols + c, true);
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination on a private copy.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, b) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = std::mem::take(&mut rows[rank]);
            for row in rows.iter_mut().skip(rank + 1) {
                if row[w] & b != 0 {
                    for (x, y) in row.iter_mut().zip(&pivot).skip(w) {
                        *x ^= y;
                    }
                }
            }
            rows[rank] = pivot;
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Basis of the kernel, as bit vectors over the columns.
    pub fn kernel_basis(&self) -> Vec<Vec<bool>> {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, b) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & b != 0 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![false; self.cols];
            v[free] = true;
            for (r, &pc) in pivots.iter().enumerate() {
                if rows[r][free / 64] >> (free % 64) & 1 == 1 {
                    v[pc] = true;
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Total homology dimension of `A -> B + C -> D` with `d1 = (h1, v1)`, `d2 = v2 + h2`,
/// computed from kernel and image data of the four edges.
#[allow(clippy::too_many_arguments)]
pub fn square_lemma_dim(
    dim_a: usize,
    dim_b: usize,
    dim_c: usize,
    dim_d: usize,
    h1: &BitMatrix,
    v1: &BitMatrix,
    h2: &BitMatrix,
    v2: &BitMatrix,
) -> Result<usize> {
    let shapes = [
        (h1, dim_b, dim_a, "h1"),
        (v1, dim_c, dim_a, "v1"),
        (h2, dim_d, dim_c, "h2"),
        (v2, dim_d, dim_b, "v2"),
    ];
    for (m, r, c, name) in shapes {
        if (m.rows(), m.cols()) != (r, c) {
            return Err(Error::Internal(format!(
                "{name} has shape {}x{}, expected {r}x{c}",
                m.rows(),
                m.cols()
            )));
        }
    }
    if v2.mul(h1) != h2.mul(v1) {
        return Err(Error::Internal("square does not commute".into()));
    }
    let kernel = dim_a - h1.vstack(v1).rank();
    let image = v2.hstack(h2).rank();
    Ok(2 * kernel + dim_b + dim_c + dim_d - 2 * image - dim_a)
}

/// Homology dimension of `A -> B + C -> D` from the ranks of the full differential.
pub fn square_rank_dim(
    dims: [usize; 4],
    h1: &BitMatrix,
    v1: &BitMatrix,
    h2: &BitMatrix,
    v2: &BitMatrix,
) -> usize {
    let d1 = h1.vstack(v1);
    let d2 = v2.hstack(h2);
    dims.iter().sum::<usize>() - 2 * (d1.rank() + d2.rank())
}

/// A zigzag map `A_{a1..a2} -> B_{b1..b2}` with `A_s -> B_s` for `s` in `S1`
/// and `A_s -> B_{s+1}` for `s` in `S2`. Edges into missing targets are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagCode {
    pub a: (i64, i64),
    pub b: (i64, i64),
    pub s1: BTreeSet<i64>,
    pub s2: BTreeSet<i64>,
}

impl ZigzagCode {
    pub fn new(a: (i64, i64), b: (i64, i64), s1: BTreeSet<i64>, s2: BTreeSet<i64>) -> Self {
        ZigzagCode { a, b, s1, s2 }
    }

    fn a_len(&self) -> usize {
        (self.a.1 - self.a.0 + 1).max(0) as usize
    }

    fn b_len(&self) -> usize {
        (self.b.1 - self.b.0 + 1).max(0) as usize
    }

    fn b_has(&self, t: i64) -> bool {
        self.b.0 <= t && t <= self.b.1
    }

    fn straight(&self, s: i64) -> bool {
        self.s1.contains(&s) && self.b_has(s)
    }

    fn diagonal(&self, s: i64) -> bool {
        self.s2.contains(&s) && self.b_has(s + 1)
    }

    /// The map as a matrix, rows indexed by `B`, columns by `A`.
    pub fn to_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.b_len(), self.a_len());
        for s in self.a.0..=self.a.1 {
            let c = (s - self.a.0) as usize;
            if self.straight(s) {
                m.toggle((s - self.b.0) as usize, c);
            }
            if self.diagonal(s) {
                m.toggle((s + 1 - self.b.0) as usize, c);
            }
        }
        m
    }

    /// The transpose map `B -> A`, re-indexed by `s -> -s` so it is again a zigzag.
    pub fn dual(&self) -> ZigzagCode {
        let s1 = (self.b.0..=self.b.1)
            .filter(|&t| self.s1.contains(&t) && self.a.0 <= t && t <= self.a.1)
            .map(|t| -t)
            .collect();
        let s2 = (self.b.0..=self.b.1)
            .filter(|&t| self.s2.contains(&(t - 1)) && self.a.0 < t && t - 1 <= self.a.1)
            .map(|t| -t)
            .collect();
        ZigzagCode {
            a: (-self.b.1, -self.b.0),
            b: (-self.a.1, -self.a.0),
            s1,
            s2,
        }
    }
}

/// Supports `[k, m]` of a kernel basis: each basis vector is the sum of `A_s` over its support.
///
/// Singletons are sources with no surviving edge. Longer intervals start at a source with
/// only a diagonal edge, end at one with only a straight edge, and have both edges in between.
pub fn zigzag_kernel_support(code: &ZigzagCode) -> Vec<(i64, i64)> {
    let (lo, hi) = code.a;
    let mut out = Vec::new();
    let mut open: Option<i64> = None;
    for s in lo..=hi {
        let (f, g) = (code.straight(s), code.diagonal(s));
        match (f, g) {
            (false, false) => {
                out.push((s, s));
                open = None;
            }
            (false, true) => open = Some(s),
            (true, false) => {
                if let Some(k) = open.take() {
                    out.push((k, s));
                }
            }
            (true, true) => {}
        }
    }
    out
}

pub fn zigzag_kernel_dim(code: &ZigzagCode) -> usize {
    zigzag_kernel_support(code).len()
}

/// Cokernel dimension via the kernel of the dual zigzag.
pub fn zigzag_cokernel_dim(code: &ZigzagCode) -> usize {
    zigzag_kernel_dim(&code.dual())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> BTreeSet<i64> {
        v.iter().copied().collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(4, 7).rank(), 0);
        assert_eq!(BitMatrix::from_rows(&[[1, 1], [1, 1]]).rank(), 1);
        let wide = BitMatrix::from_rows(&[vec![1u8; 130], vec![0u8; 130]]);
        assert_eq!(wide.rank(), 1);
    }

    #[test]
    fn kernel_basis_is_kernel() {
        let m = BitMatrix::from_rows(&[[1, 1, 0, 1], [0, 1, 1, 0], [1, 0, 1, 1]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 4 - m.rank());
        for v in basis {
            for r in 0..m.rows() {
                let dot = (0..m.cols()).filter(|&c| v[c] && m.get(r, c)).count();
                assert_eq!(dot % 2, 0);
            }
        }
    }

    #[test]
    fn square_examples() {
        let id = BitMatrix::identity(1);
        assert_eq!(square_lemma_dim(1, 1, 1, 1, &id, &id, &id, &id).unwrap(), 0);
        let z = BitMatrix::zeros(1, 1);
        assert_eq!(square_lemma_dim(1, 1, 1, 1, &z, &z, &z, &z).unwrap(), 4);
        assert!(square_lemma_dim(1, 1, 1, 1, &id, &z, &id, &id).is_err());
    }

    #[test]
    fn zigzag_examples() {
        let diag = ZigzagCode::new((0, 3), (0, 3), set(&[0, 1, 2, 3]), set(&[]));
        assert!(zigzag_kernel_support(&diag).is_empty());
        assert_eq!(zigzag_cokernel_dim(&diag), 0);

        let two = ZigzagCode::new((0, 2), (0, 3), set(&[1, 2]), set(&[1, 2]));
        assert_eq!(zigzag_kernel_support(&two), vec![(0, 0)]);

        let long = ZigzagCode::new((0, 4), (0, 5), set(&[1, 2, 3, 4]), set(&[0, 1, 2]));
        assert_eq!(zigzag_kernel_support(&long), vec![(0, 3)]);
        assert_eq!(zigzag_cokernel_dim(&long), 2);

        let zero = ZigzagCode::new((0, 0), (0, 3), set(&[]), set(&[]));
        assert_eq!(zigzag_cokernel_dim(&zero), 4);
    }

    #[test]
    fn adjacent_endpoints_form_a_kernel_vector() {
        // a_0 -> b_1 and a_1 -> b_1 cancel.
        let code = ZigzagCode::new((0, 1), (0, 2), set(&[1]), set(&[0]));
        assert_eq!(zigzag_kernel_support(&code), vec![(0, 1)]);
        assert_eq!(code.to_matrix().rank(), 1);
    }
}
