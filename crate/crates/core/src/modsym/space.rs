//! Manin presentation of plus modular symbols for `Gamma_0(N)`.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::p1::P1List;
use super::ModSymError;
use crate::arith::nt::{gcd, inv_mod, is_prime};
use crate::arith::Rational;
use crate::linalg::QMatrix;

/// Default resource guard for [`ManinSymbolSpace::new`].
pub const DEFAULT_MAX_LEVEL: u64 = 1000;

/// A cusp `p/q` in lowest terms with `q >= 0`; infinity is `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cusp {
    pub num: i64,
    pub den: i64,
}

impl Cusp {
    fn new(num: i64, den: i64) -> Self {
        let g = num.gcd(&den).max(1);
        let (num, den) = (num / g, den / g);
        if den < 0 || (den == 0 && num < 0) {
            Self { num: -num, den: -den }
        } else {
            Self { num, den }
        }
    }

    /// Equivalence under `Gamma_0(N)`: with `p s = 1 mod q`, the cusps
    /// `p1/q1` and `p2/q2` agree iff `s1 q2 = s2 q1 mod gcd(q1 q2, N)`.
    fn equivalent(self, other: Cusp, level: u64) -> bool {
        let s = |c: Cusp| -> i64 {
            match c.den {
                0 => 1,
                q => inv_mod(c.num, q as u64).unwrap_or(0) as i64,
            }
        };
        let m = gcd((self.den as u64) * (other.den as u64), level).max(1) as i128;
        let lhs = s(self) as i128 * other.den as i128 - s(other) as i128 * self.den as i128;
        lhs.rem_euclid(m) == 0
    }
}

/// Lifts `(c : d)` to a matrix `[[a, b], [c', d']]` of determinant one.
pub(crate) fn lift_to_sl2(c: u64, d: u64, level: u64) -> [i64; 4] {
    let c0 = if c == 0 { level as i64 } else { c as i64 };
    let mut d0 = d as i64;
    while c0.gcd(&d0) != 1 {
        d0 += level as i64;
    }
    // a d0 - b c0 = 1
    let eg = d0.extended_gcd(&c0);
    [eg.x, -eg.y, c0, d0]
}

/// Plus quotient of the Manin-symbol space with its boundary and cuspidal part.
#[derive(Clone, Debug)]
pub struct ManinSymbolSpace {
    level: u64,
    p1: P1List,
    /// Coordinates of every generator in the quotient basis.
    coords: Vec<Vec<Rational>>,
    /// Generator representing each quotient basis vector.
    basis_gens: Vec<usize>,
    cusps: Vec<Cusp>,
    boundary: QMatrix,
    /// Columns span the cuspidal subspace, in quotient coordinates.
    cuspidal: QMatrix,
}

impl ManinSymbolSpace {
    pub fn new(level: u64) -> Result<Self, ModSymError> {
        Self::with_max_level(level, DEFAULT_MAX_LEVEL)
    }

    pub fn with_max_level(level: u64, max_level: u64) -> Result<Self, ModSymError> {
        if level == 0 || level > max_level {
            return Err(ModSymError::LevelTooLarge { level, max_level });
        }
        let p1 = P1List::new(level);
        let n = p1.len();
        let sym = |c: i64, d: i64| p1.index(c, d).expect("unimodular image stays in P^1");
        let reps: Vec<(i64, i64)> = p1.reps().iter().map(|&(c, d)| (c as i64, d as i64)).collect();

        // Two-term and star relations identify generators up to sign.
        let mut class: Vec<Option<Option<(usize, bool)>>> = vec![None; n];
        let mut reduced = 0usize;
        for start in 0..n {
            if class[start].is_some() {
                continue;
            }
            let mut orbit = vec![(start, true)];
            let mut killed = false;
            let mut i = 0;
            while i < orbit.len() {
                let (g, sign) = orbit[i];
                let (c, d) = reps[g];
                for (h, s) in [(sym(d, -c), !sign), (sym(-c, d), sign)] {
                    match orbit.iter().find(|(x, _)| *x == h) {
                        Some(&(_, prev)) => killed |= prev != s,
                        None => orbit.push((h, s)),
                    }
                }
                i += 1;
            }
            for (g, s) in orbit {
                class[g] = Some(if killed { None } else { Some((reduced, s)) });
            }
            if !killed {
                reduced += 1;
            }
        }
        let class: Vec<Option<(usize, bool)>> = class.into_iter().map(|c| c.expect("all visited")).collect();

        // Three-term relations on the reduced variables.
        let mut rows = Vec::new();
        let mut seen = vec![false; n];
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let (c, d) = reps[g];
            let orbit = [g, sym(d, -c - d), sym(-c - d, c)];
            let mut row = vec![Rational::zero(); reduced];
            for &h in &orbit {
                seen[h] = true;
                if let Some((v, s)) = class[h] {
                    row[v] += if s { Rational::one() } else { -Rational::one() };
                }
            }
            if row.iter().any(|q| !q.is_zero()) {
                rows.push(row);
            }
        }
        let (rref, pivots) =
            if rows.is_empty() { (QMatrix::zeros(0, reduced), Vec::new()) } else { QMatrix::from_rows(rows).rref() };
        let free: Vec<usize> = (0..reduced).filter(|v| !pivots.contains(v)).collect();
        let dim = free.len();
        let mut var_coords = vec![vec![Rational::zero(); dim]; reduced];
        for (k, &v) in free.iter().enumerate() {
            var_coords[v][k] = Rational::one();
        }
        for (row, &p) in pivots.iter().enumerate() {
            for (k, &v) in free.iter().enumerate() {
                var_coords[p][k] = -rref[(row, v)].clone();
            }
        }
        let coords: Vec<Vec<Rational>> = class
            .iter()
            .map(|cl| match cl {
                None => vec![Rational::zero(); dim],
                Some((v, true)) => var_coords[*v].clone(),
                Some((v, false)) => var_coords[*v].iter().map(|q| -q).collect(),
            })
            .collect();
        let basis_gens: Vec<usize> = free
            .iter()
            .map(|&v| class.iter().position(|cl| *cl == Some((v, true))).expect("variable has a representative"))
            .collect();

        let mut space = Self {
            level,
            p1,
            coords,
            basis_gens,
            cusps: Vec::new(),
            boundary: QMatrix::zeros(0, dim),
            cuspidal: QMatrix::zeros(dim, 0),
        };
        space.compute_boundary();
        Ok(space)
    }

    fn cusp_index(&mut self, cusp: Cusp) -> usize {
        let neg = Cusp::new(-cusp.num, cusp.den);
        if let Some(i) =
            self.cusps.iter().position(|&c| c.equivalent(cusp, self.level) || c.equivalent(neg, self.level))
        {
            return i;
        }
        self.cusps.push(cusp);
        self.cusps.len() - 1
    }

    fn compute_boundary(&mut self) {
        let dim = self.dimension();
        let mut columns: Vec<Vec<(usize, i64)>> = Vec::with_capacity(dim);
        for k in 0..dim {
            let (c, d) = self.p1.reps()[self.basis_gens[k]];
            let [a, b, c, d] = lift_to_sl2(c, d, self.level);
            let end = self.cusp_index(Cusp::new(a, c));
            let start = self.cusp_index(Cusp::new(b, d));
            columns.push(vec![(end, 1), (start, -1)]);
        }
        let mut boundary = QMatrix::zeros(self.cusps.len(), dim);
        for (k, col) in columns.into_iter().enumerate() {
            for (i, v) in col {
                boundary[(i, k)] += Rational::from_integer(v.into());
            }
        }
        let kernel = boundary.kernel();
        let mut cuspidal = QMatrix::zeros(dim, kernel.len());
        for (j, v) in kernel.iter().enumerate() {
            for (i, q) in v.iter().enumerate() {
                cuspidal[(i, j)] = q.clone();
            }
        }
        self.boundary = boundary;
        self.cuspidal = cuspidal;
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Representatives `(c : d)` of `P^1(Z/N)`.
    pub fn generators(&self) -> &[(u64, u64)] {
        self.p1.reps()
    }

    /// Dimension of the plus quotient.
    pub fn dimension(&self) -> usize {
        self.basis_gens.len()
    }

    pub fn cuspidal_dimension(&self) -> usize {
        self.cuspidal.ncols()
    }

    /// Columns spanning the cuspidal plus subspace.
    pub fn cuspidal_basis(&self) -> &QMatrix {
        &self.cuspidal
    }

    /// Boundary map to the plus cusp space, one row per cusp class.
    pub fn boundary_map(&self) -> &QMatrix {
        &self.boundary
    }

    /// Quotient coordinates of the Manin symbol `(c : d)`.
    pub fn symbol_coords(&self, c: i64, d: i64) -> Option<&[Rational]> {
        self.p1.index(c, d).map(|i| self.coords[i].as_slice())
    }

    pub(crate) fn generator_index(&self, c: i64, d: i64) -> Option<usize> {
        self.p1.index(c, d)
    }

    pub(crate) fn generator_coords(&self) -> &[Vec<Rational>] {
        &self.coords
    }

    /// Matrix of `T_ell` on the full plus quotient (columns are images).
    pub fn hecke_full(&self, ell: u64) -> Result<QMatrix, ModSymError> {
        if !is_prime(ell) {
            return Err(ModSymError::NotPrime(ell));
        }
        if self.level.is_multiple_of(ell) {
            return Err(ModSymError::PrimeDividesLevel(ell));
        }
        let heilbronn = heilbronn_merel(ell);
        let dim = self.dimension();
        let mut t = QMatrix::zeros(dim, dim);
        for k in 0..dim {
            let (c, d) = self.p1.reps()[self.basis_gens[k]];
            let (c, d) = (c as i64, d as i64);
            for &[a, b, cc, dd] in &heilbronn {
                let image = self.symbol_coords(c * a + d * cc, c * b + d * dd).expect("determinant prime to the level");
                for (i, q) in image.iter().enumerate() {
                    if !q.is_zero() {
                        t[(i, k)] += q;
                    }
                }
            }
        }
        Ok(t)
    }

    /// Matrix of `T_ell` in the stored basis of the cuspidal plus subspace.
    pub fn hecke_operator(&self, ell: u64) -> Result<QMatrix, ModSymError> {
        let full = self.hecke_full(ell)?;
        Ok(full.restrict(&self.cuspidal).expect("the cuspidal subspace is Hecke stable"))
    }
}

/// Merel's matrices `[[a, b], [c, d]]` with `a > b >= 0`, `d > c >= 0`, `ad - bc = ell`.
pub fn heilbronn_merel(ell: u64) -> Vec<[i64; 4]> {
    let l = ell as i64;
    let mut out = Vec::new();
    for a in 1..=l {
        for d in 1..=(l + 1 - a) {
            let excess = a * d - l;
            if excess < 0 {
                continue;
            }
            if excess == 0 {
                out.extend((0..d).map(|c| [a, 0, c, d]));
                out.extend((1..a).map(|b| [a, b, 0, d]));
                continue;
            }
            for b in 1..a {
                if excess % b == 0 && excess / b < d {
                    out.push([a, b, excess / b, d]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nt::{divisors, euler_phi, factor, legendre};

    /// Kronecker symbol `(d / p)` for a fundamental discriminant `d`.
    fn kronecker(d: i64, p: u64) -> i64 {
        match p {
            2 => match d.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            },
            _ => legendre(d, p) as i64,
        }
    }

    fn genus(n: u64) -> usize {
        let primes = factor(n);
        let mu = primes.iter().fold(n, |acc, &(p, _)| acc / p * (p + 1)) as i64;
        let elliptic = |d: i64, square: u64| -> i64 {
            if n.is_multiple_of(square) {
                0
            } else {
                primes.iter().map(|&(p, _)| 1 + kronecker(d, p)).product()
            }
        };
        let cusps: i64 = divisors(n).iter().map(|&d| euler_phi(gcd(d, n / d)) as i64).sum();
        (12 + mu - 3 * elliptic(-4, 4) - 4 * elliptic(-3, 9) - 6 * cusps) as usize / 12
    }

    #[test]
    fn cuspidal_dimension_is_the_genus() {
        assert_eq!(ManinSymbolSpace::new(11).unwrap().generators().len(), 12);
        assert_eq!(ManinSymbolSpace::new(11).unwrap().cuspidal_dimension(), 1);
        assert_eq!(ManinSymbolSpace::new(37).unwrap().cuspidal_dimension(), 2);
        for n in 1..=100 {
            let space = ManinSymbolSpace::new(n).unwrap();
            assert_eq!(space.cuspidal_dimension(), genus(n), "N = {n}");
        }
    }

    #[test]
    fn heilbronn_matches_brute_force() {
        for ell in [2i64, 3, 5, 7, 13] {
            let mut brute = Vec::new();
            for a in 1..=ell {
                for b in 0..a {
                    for d in 1..=ell {
                        for c in 0..d {
                            if a * d - b * c == ell {
                                brute.push([a, b, c, d]);
                            }
                        }
                    }
                }
            }
            let mut fast = heilbronn_merel(ell as u64);
            brute.sort();
            fast.sort();
            assert_eq!(fast, brute, "ell = {ell}");
        }
    }

    #[test]
    fn hecke_eigenvalues_level_11() {
        let space = ManinSymbolSpace::new(11).unwrap();
        for (ell, a) in [(2u64, -2i64), (3, -1), (5, 1), (7, -2)] {
            let t = space.hecke_operator(ell).unwrap();
            assert_eq!(t.nrows(), 1);
            assert_eq!(t[(0, 0)], Rational::from_integer(a.into()), "ell = {ell}");
        }
        assert_eq!(space.hecke_operator(11), Err(ModSymError::PrimeDividesLevel(11)));
    }

    #[test]
    fn hecke_operators_commute() {
        let space = ManinSymbolSpace::new(37).unwrap();
        let t2 = space.hecke_operator(2).unwrap();
        let t3 = space.hecke_operator(3).unwrap();
        assert_eq!(t2.mul(&t3), t3.mul(&t2));
        let space = ManinSymbolSpace::new(65).unwrap();
        let t2 = space.hecke_operator(2).unwrap();
        let t7 = space.hecke_operator(7).unwrap();
        assert_eq!(t2.mul(&t7), t7.mul(&t2));
    }

    #[test]
    fn eisenstein_eigenvalue_on_the_full_space() {
        // On the boundary the Hecke operator acts by 1 + ell.
        let space = ManinSymbolSpace::new(11).unwrap();
        let t = space.hecke_full(2).unwrap();
        let b = space.boundary_map();
        assert_eq!(b.mul(&t), b.scale(&Rational::from_integer(3.into())));
    }

    #[test]
    fn lifts_are_unimodular() {
        for n in [1u64, 11, 12, 37, 60] {
            for &(c, d) in P1List::new(n).reps() {
                let [a, b, cc, dd] = lift_to_sl2(c, d, n);
                assert_eq!(a * dd - b * cc, 1);
                assert_eq!(crate::arith::nt::modulo(cc, n), c);
                assert_eq!(crate::arith::nt::modulo(dd, n), d);
            }
        }
    }
}
