//! The projective line over `Z/N`.

use crate::arith::nt::{gcd, modulo, units_mod};

/// Canonical representatives of `P^1(Z/N)` with a dense lookup table.
#[derive(Clone, Debug)]
pub struct P1List {
    level: u64,
    reps: Vec<(u64, u64)>,
    index: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl P1List {
    pub fn new(level: u64) -> Self {
        let n = level as usize;
        let units = units_mod(level);
        let mut index = vec![NONE; n * n];
        let mut reps = Vec::new();
        for c in 0..level {
            for d in 0..level {
                if index[(c * level + d) as usize] != NONE || gcd(gcd(c, d), level) != 1 {
                    continue;
                }
                // (c, d) is the smallest member of its orbit: it is visited first.
                let id = reps.len() as u32;
                reps.push((c, d));
                for &u in &units {
                    let (uc, ud) = (c * u % level, d * u % level);
                    index[(uc * level + ud) as usize] = id;
                }
            }
        }
        if level == 1 {
            reps = vec![(0, 0)];
            index = vec![0];
        }
        Self { level, reps, index }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[(u64, u64)] {
        &self.reps
    }

    /// Index of the class of `(c : d)`, or `None` when `gcd(c, d, N) > 1`.
    pub fn index(&self, c: i64, d: i64) -> Option<usize> {
        let (c, d) = (modulo(c, self.level), modulo(d, self.level));
        match self.index[(c * self.level + d) as usize] {
            NONE => None,
            id => Some(id as usize),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nt::factor;

    fn expected_size(n: u64) -> usize {
        factor(n).iter().fold(n, |acc, &(p, _)| acc / p * (p + 1)) as usize
    }

    #[test]
    fn sizes() {
        assert_eq!(P1List::new(1).len(), 1);
        assert_eq!(P1List::new(11).len(), 12);
        for n in 2..80 {
            assert_eq!(P1List::new(n).len(), expected_size(n), "N = {n}");
        }
    }

    #[test]
    fn scaling_invariance() {
        let p1 = P1List::new(15);
        for &(c, d) in p1.reps() {
            let id = p1.index(c as i64, d as i64);
            for u in [2i64, 4, 7, -1] {
                assert_eq!(p1.index(u * c as i64, u * d as i64), id);
            }
        }
        assert_eq!(p1.index(3, 6), None);
    }
}
