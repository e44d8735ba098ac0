//! Dense exact linear algebra: rational matrices and modules over `Z/p^k`.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::nt::{inv_mod, mul_mod};
use crate::arith::Rational;

/// Row-major dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|q| q.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        QMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        self.rows().map(|row| row.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![Rational::zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, b) in self.row(r).iter().enumerate() {
                if !b.is_zero() {
                    out[c] += a * b;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * q).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Restriction of `self` (acting on column vectors) to an invariant subspace
    /// spanned by the columns of `basis`: returns `A` with `self * basis = basis * A`.
    pub fn restrict(&self, basis: &QMatrix) -> Option<QMatrix> {
        let image = self.mul(basis);
        solve_columns(basis, &image)
    }
}

/// Solves `B X = Y` for `X` when `B` has full column rank and a solution exists.
pub fn solve_columns(b: &QMatrix, y: &QMatrix) -> Option<QMatrix> {
    assert_eq!(b.nrows(), y.nrows());
    let n = b.ncols();
    let mut aug = QMatrix::zeros(b.nrows(), n + y.ncols());
    for r in 0..b.nrows() {
        for c in 0..n {
            aug[(r, c)] = b[(r, c)].clone();
        }
        for c in 0..y.ncols() {
            aug[(r, n + c)] = y[(r, c)].clone();
        }
    }
    let (red, pivots) = aug.rref();
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    // rows beyond n must vanish for consistency
    for r in n..red.nrows() {
        if red.row(r).iter().any(|q| !q.is_zero()) {
            return None;
        }
    }
    let mut x = QMatrix::zeros(n, y.ncols());
    for i in 0..n {
        for c in 0..y.ncols() {
            x[(i, c)] = red[(i, n + c)].clone();
        }
    }
    Some(x)
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

/// Submodules of `(Z/p^k)^n` in Howell normal form, so that membership is
/// decided by a single reduction pass.
#[derive(Clone, Debug)]
pub struct PadicSpan {
    p: u64,
    k: u32,
    modulus: u64,
    width: usize,
    /// (pivot column, pivot valuation, row) with the pivot entry equal to `p^v`.
    rows: Vec<(usize, u32, Vec<u64>)>,
}

fn val_mod(x: u64, p: u64, k: u32) -> u32 {
    if x == 0 {
        return k;
    }
    let mut v = 0;
    let mut x = x;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

impl PadicSpan {
    /// Span of `generators` (each of length `width`, entries reduced mod `p^k`).
    pub fn new(p: u64, k: u32, width: usize, generators: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let modulus = p.checked_pow(k).expect("p^k overflows u64");
        assert!(modulus < (1u64 << 62), "modulus too large");
        let mut pending: Vec<Vec<u64>> = generators
            .into_iter()
            .map(|g| {
                assert_eq!(g.len(), width);
                g.into_iter().map(|x| x % modulus).collect()
            })
            .collect();
        let mut rows = Vec::new();
        for col in 0..width {
            pending.retain(|r| r.iter().any(|&x| x != 0));
            let Some((best, v)) =
                pending.iter().enumerate().map(|(i, r)| (i, val_mod(r[col], p, k))).min_by_key(|&(_, v)| v)
            else {
                break;
            };
            if v == k {
                continue;
            }
            let mut piv = pending.swap_remove(best);
            let unit = piv[col] / p.pow(v);
            let uinv = inv_mod(unit as i64, modulus).expect("unit");
            for x in piv.iter_mut() {
                *x = mul_mod(*x, uinv, modulus);
            }
            let pv = p.pow(v);
            for r in pending.iter_mut() {
                let f = r[col] / pv;
                if f != 0 {
                    for (x, y) in r.iter_mut().zip(&piv) {
                        *x = (*x + modulus - mul_mod(f, *y, modulus)) % modulus;
                    }
                }
            }
            if v > 0 {
                // p^(k-v) * pivot row has a zero in this column but may be new.
                let f = p.pow(k - v);
                let sat: Vec<u64> = piv.iter().map(|&y| mul_mod(f, y, modulus)).collect();
                pending.push(sat);
            }
            rows.push((col, v, piv));
        }
        PadicSpan { p, k, modulus, width, rows }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Whether `target` lies in the span.
    pub fn contains(&self, target: &[u64]) -> bool {
        assert_eq!(target.len(), self.width);
        let mut t: Vec<u64> = target.iter().map(|&x| x % self.modulus).collect();
        for (col, v, row) in &self.rows {
            let x = t[*col];
            if x == 0 {
                continue;
            }
            let pv = self.p.pow(*v);
            if !x.is_multiple_of(pv) {
                return false;
            }
            let f = x / pv;
            for (a, b) in t.iter_mut().zip(row) {
                *a = (*a + self.modulus - mul_mod(f, *b, self.modulus)) % self.modulus;
            }
        }
        t.iter().all(|&x| x == 0)
    }

    /// Number of elements of the span (as a power of `p`).
    pub fn log_p_size(&self) -> u32 {
        self.rows.iter().map(|(_, v, _)| self.k - v).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn qm(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn restrict_to_invariant_subspace() {
        let a = qm(&[&[2, 0, 0], &[0, 3, 1], &[0, 0, 3]]);
        let basis = qm(&[&[1, 0], &[0, 1], &[0, 0]]);
        let r = a.restrict(&basis).unwrap();
        assert_eq!(r, qm(&[&[2, 0], &[0, 3]]));
        let not_inv = qm(&[&[0], &[0], &[1]]);
        assert!(a.restrict(&not_inv).is_none());
        let _ = rat(1, 2);
    }

    #[test]
    fn howell_saturation_matters() {
        // Over Z/9 the span of (3, 1) contains (0, 3) = 3*(3,1) - (9, 0).
        let s = PadicSpan::new(3, 2, 2, [vec![3, 1]]);
        assert!(s.contains(&[0, 3]));
        assert!(s.contains(&[6, 2]));
        assert!(!s.contains(&[0, 1]));
        assert!(!s.contains(&[3, 0]));
        assert_eq!(s.log_p_size(), 2);
    }

    fn brute_span(gens: &[Vec<u64>], m: u64) -> std::collections::HashSet<Vec<u64>> {
        let width = gens.first().map_or(0, Vec::len);
        let mut set = std::collections::HashSet::new();
        set.insert(vec![0; width]);
        loop {
            let mut grew = false;
            let current: Vec<Vec<u64>> = set.iter().cloned().collect();
            for v in &current {
                for g in gens {
                    let w: Vec<u64> = v.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
                    grew |= set.insert(w);
                }
            }
            if !grew {
                return set;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn span_membership_matches_brute(
            gens in prop::collection::vec(prop::collection::vec(0u64..9, 3), 1..4),
            target in prop::collection::vec(0u64..9, 3),
        ) {
            let span = PadicSpan::new(3, 2, 3, gens.clone());
            let brute = brute_span(&gens, 9);
            prop_assert_eq!(span.contains(&target), brute.contains(&target));
            prop_assert_eq!(3u64.pow(span.log_p_size()) as usize, brute.len());
        }
    }
}
