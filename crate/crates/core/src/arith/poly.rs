//! Dense univariate polynomials over the rationals, used for inverses in
//! cyclotomic fields.

use super::Rational;
use num_traits::{One, Zero};

/// Coefficients in increasing degree, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(pub Vec<Rational>);

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        let out = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(Rational::zero);
                let b = other.0.get(i).cloned().unwrap_or_else(Rational::zero);
                a - b
            })
            .collect();
        QPoly::new(out)
    }

    /// Euclidean division `self = q * d + r`.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.lead().expect("nonzero").recip();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (QPoly(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = &r[i] * &lead_inv;
            for (j, c) in d.0.iter().enumerate() {
                let t = &f * c;
                r[i - dd + j] -= t;
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    /// Returns `(g, s)` with `g = gcd(self, m)` monic and `s * self ≡ g (mod m)`.
    pub fn gcd_cofactor(&self, m: &QPoly) -> (QPoly, QPoly) {
        let (mut r0, mut r1) = (m.clone(), self.clone());
        let (mut s0, mut s1) = (QPoly(Vec::new()), QPoly(vec![Rational::one()]));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        let Some(lead) = r0.lead().cloned() else {
            return (r0, s0);
        };
        let inv = lead.recip();
        let scale = |p: QPoly| QPoly::new(p.0.into_iter().map(|c| c * &inv).collect());
        (scale(r0), scale(s0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let a = QPoly::from_ints(&[1, 2, 3, 4, 5]);
        let d = QPoly::from_ints(&[1, 1, 1]);
        let (q, r) = a.div_rem(&d);
        let back = q.mul(&d);
        let diff = a.sub(&back).sub(&r);
        assert!(diff.is_zero());
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn inverse_modulo_quadratic() {
        // (1 + x) * s = 1 mod x^2 + x + 1
        let m = QPoly::from_ints(&[1, 1, 1]);
        let a = QPoly::from_ints(&[1, 1]);
        let (g, s) = a.gcd_cofactor(&m);
        assert_eq!(g, QPoly::from_ints(&[1]));
        let (_, r) = a.mul(&s).div_rem(&m);
        assert_eq!(r, QPoly::from_ints(&[1]));
    }
}
