//! Finite abelian groups as products of cyclic groups.

use super::GroupRingError;
use crate::arith::CycloElem;

/// `Z/d_1 x ... x Z/d_r` with `d_i | d_{i+1}` and every `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbGroup {
    factors: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl AbGroup {
    /// Group with the given invariant factors; factors equal to one are dropped.
    pub fn new(factors: &[u64]) -> Result<Self, GroupRingError> {
        let factors: Vec<u64> = factors.iter().copied().filter(|&d| d != 1).collect();
        if factors.contains(&0) || factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(GroupRingError::NotInvariantFactors(factors));
        }
        Ok(Self { factors, labels: None })
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(&[n]).expect("a single factor is always valid")
    }

    pub fn trivial() -> Self {
        Self { factors: Vec::new(), labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        self.labels = Some(labels);
        self
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    /// Exponent of the group (the last invariant factor).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("{:?}", self.coords(g)),
        }
    }

    /// Coordinates of the element with index `g`.
    pub fn coords(&self, mut g: usize) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&d| {
                let x = g as u64 % d;
                g /= d as usize;
                x
            })
            .collect()
    }

    /// Index of the element with the given coordinates (reduced).
    pub fn index(&self, coords: &[i64]) -> usize {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (&d, &x) in self.factors.iter().zip(coords) {
            idx += x.rem_euclid(d as i64) as usize * stride;
            stride *= d as usize;
        }
        idx
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Generator of the `i`-th cyclic factor.
    pub fn generator(&self, i: usize) -> usize {
        let mut coords = vec![0i64; self.factors.len()];
        coords[i] = 1;
        self.index(&coords)
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.factors.len()).map(|i| self.generator(i)).collect()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        let (a, b) = (self.coords(g), self.coords(h));
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| (x + y) as i64).collect();
        self.index(&sum)
    }

    pub fn inv(&self, g: usize) -> usize {
        let neg: Vec<i64> = self.coords(g).iter().map(|&x| -(x as i64)).collect();
        self.index(&neg)
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let scaled: Vec<i64> = self.coords(g).iter().map(|&x| x as i64 * k).collect();
        self.index(&scaled)
    }

    pub fn element_order(&self, g: usize) -> u64 {
        self.coords(g).iter().zip(&self.factors).map(|(&x, &d)| d / num_integer::gcd(x, d)).fold(1, num_integer::lcm)
    }

    /// All characters, in the order of their exponent vectors.
    pub fn characters(&self) -> Vec<GroupChar> {
        (0..self.order()).map(|k| GroupChar { factors: self.factors.clone(), exponents: self.coords(k) }).collect()
    }
}

/// A character `g -> zeta_e^{sum_i x_i g_i e/d_i}` with `e` the group exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupChar {
    factors: Vec<u64>,
    exponents: Vec<u64>,
}

impl GroupChar {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    fn level(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// `k` with `psi(g) = zeta_e^k`.
    pub fn value_exponent(&self, group: &AbGroup, g: usize) -> u64 {
        let e = self.level();
        group
            .coords(g)
            .iter()
            .zip(&self.exponents)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| x * y % d * (e / d))
            .sum::<u64>()
            % e
    }

    pub fn value(&self, group: &AbGroup, g: usize) -> CycloElem {
        CycloElem::zeta_pow(self.level(), self.value_exponent(group, g) as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&x| x == 0)
    }

    pub fn order(&self) -> u64 {
        self.exponents.iter().zip(&self.factors).map(|(&x, &d)| d / num_integer::gcd(x, d)).fold(1, num_integer::lcm)
    }

    pub fn kernel_contains(&self, group: &AbGroup, g: usize) -> bool {
        self.value_exponent(group, g) == 0
    }
}

/// A homomorphism given by the image of every element.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: AbGroup,
    target: AbGroup,
    images: Vec<usize>,
}

impl GroupHom {
    /// Checks that `images` defines a homomorphism `source -> target`.
    pub fn new(source: AbGroup, target: AbGroup, images: Vec<usize>) -> Result<Self, GroupRingError> {
        if images.len() != source.order() || images.iter().any(|&i| i >= target.order()) {
            return Err(GroupRingError::NotHomomorphism);
        }
        for g in 0..source.order() {
            for h in source.generators() {
                if images[source.mul(g, h)] != target.mul(images[g], images[h]) {
                    return Err(GroupRingError::NotHomomorphism);
                }
            }
        }
        Ok(Self { source, target, images })
    }

    /// Homomorphism determined by the images of the source generators.
    pub fn from_generator_images(source: AbGroup, target: AbGroup, gens: &[usize]) -> Result<Self, GroupRingError> {
        let images = (0..source.order())
            .map(|g| {
                source
                    .coords(g)
                    .iter()
                    .zip(gens)
                    .fold(target.identity(), |acc, (&x, &img)| target.mul(acc, target.pow(img, x as i64)))
            })
            .collect();
        Self::new(source, target, images)
    }

    /// Augmentation map onto the trivial group.
    pub fn augmentation(source: AbGroup) -> Self {
        let images = vec![0; source.order()];
        Self { source, target: AbGroup::trivial(), images }
    }

    pub fn source(&self) -> &AbGroup {
        &self.source
    }

    pub fn target(&self) -> &AbGroup {
        &self.target
    }

    pub fn image(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &i in &self.images {
            hit[i] = true;
        }
        hit.into_iter().all(|b| b)
    }
}

/// Smith normal form `D = P R Q` of an integer matrix, returning the diagonal
/// and the column transform `Q`.
pub fn smith_normal_form(rows: &[Vec<i64>], ncols: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let nrows = m.len();
    let mut q: Vec<Vec<i128>> = (0..ncols).map(|i| (0..ncols).map(|j| i128::from(i == j)).collect()).collect();
    let swap_cols = |m: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, a: usize, b: usize| {
        for row in m.iter_mut().chain(q.iter_mut()) {
            row.swap(a, b);
        }
    };
    // column_b -= k column_a
    let col_op = |m: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, a: usize, b: usize, k: i128| {
        for row in m.iter_mut().chain(q.iter_mut()) {
            row[b] -= k * row[a];
        }
    };
    let mut diag = Vec::new();
    for t in 0..nrows.min(ncols) {
        loop {
            let pivot = (t..nrows)
                .flat_map(|i| (t..ncols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            m.swap(t, pi);
            swap_cols(&mut m, &mut q, t, pj);
            let mut clean = true;
            for i in t + 1..nrows {
                let k = m[i][t].div_euclid(m[t][t]);
                if k != 0 {
                    let pivot_row = m[t].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= k * y;
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..ncols {
                let k = m[t][j].div_euclid(m[t][t]);
                if k != 0 {
                    col_op(&mut m, &mut q, t, j, k);
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the rest of the matrix
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| m[i][j] % m[t][t] != 0));
            match bad {
                Some(i) => {
                    let row = m[i].clone();
                    for (x, y) in m[t].iter_mut().zip(&row) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if m.get(t).is_some_and(|r| r[t] != 0) {
            diag.push(m[t][t].abs() as i64);
        } else {
            diag.push(0);
        }
    }
    diag.resize(ncols, 0);
    let q = q.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect();
    (diag, q)
}

/// The quotient `Z^r / <relations>` together with the coordinate map.
#[derive(Clone, Debug)]
pub struct FinitePresentation {
    group: AbGroup,
    transform: Vec<Vec<i64>>,
    kept: Vec<(usize, u64)>,
}

impl FinitePresentation {
    /// `relations` are rows; the quotient must be finite.
    pub fn new(ncols: usize, relations: &[Vec<i64>]) -> Result<Self, GroupRingError> {
        let (diag, transform) = smith_normal_form(relations, ncols);
        if diag.contains(&0) {
            return Err(GroupRingError::InfiniteQuotient);
        }
        let kept: Vec<(usize, u64)> =
            diag.iter().enumerate().filter(|(_, &d)| d != 1).map(|(i, &d)| (i, d as u64)).collect();
        let factors: Vec<u64> = kept.iter().map(|&(_, d)| d).collect();
        Ok(Self { group: AbGroup::new(&factors)?, transform, kept })
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    /// Element of the quotient represented by the integer vector `x`.
    pub fn element(&self, x: &[i64]) -> usize {
        let coords: Vec<i64> = self
            .kept
            .iter()
            .map(|&(col, d)| {
                let v: i128 = x.iter().zip(&self.transform).map(|(&xi, row)| xi as i128 * row[col] as i128).sum();
                v.rem_euclid(d as i128) as i64
            })
            .collect();
        self.group.index(&coords)
    }
}
