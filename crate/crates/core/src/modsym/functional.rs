//! The rational Hecke eigen-functional of a curve and plus symbols `[a/c]^+`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::space::ManinSymbolSpace;
use super::ModSymError;
use crate::arith::nt::{divisors, gcd, inv_mod, is_prime, mobius, modulo, primes_up_to};
use crate::arith::Rational;
use crate::elliptic::CurveQ;
use crate::linalg::QMatrix;

/// `ceil((N / 6) * prod_{p | N} (1 + 1/p))`.
pub fn sturm_bound(level: u64) -> u64 {
    let index = crate::arith::nt::prime_divisors(level).iter().fold(level, |acc, &p| acc / p * (p + 1));
    index.div_ceil(6)
}

/// Linear functional on the plus quotient, with the scaling to `[.]^+`.
#[derive(Clone, Debug)]
pub struct ModularSymbolFunctional {
    space: Arc<ManinSymbolSpace>,
    dual_vector: Vec<Rational>,
    /// Value of the raw functional on every generator.
    generator_values: Vec<Rational>,
    scaling: Rational,
    normalized: bool,
}

/// The eigen-functional with the default Sturm bound.
pub fn eigen_functional(space: Arc<ManinSymbolSpace>, curve: &CurveQ) -> Result<ModularSymbolFunctional, ModSymError> {
    let bound = sturm_bound(space.level());
    eigen_functional_with_bound(space, curve, bound)
}

/// The unique functional, up to scalar, on which every `T_ell` with good
/// `ell <= bound` acts by `a_ell(curve)`.
pub fn eigen_functional_with_bound(
    space: Arc<ManinSymbolSpace>,
    curve: &CurveQ,
    bound: u64,
) -> Result<ModularSymbolFunctional, ModSymError> {
    let curve = curve.minimal_model();
    let conductor = curve.conductor();
    if conductor != space.level() {
        return Err(ModSymError::NoEigenline { conductor, level: space.level() });
    }
    let dim = space.dimension();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for ell in primes_up_to(bound.max(2)).into_iter().filter(|&l| !space.level().is_multiple_of(l)) {
        let t = space.hecke_full(ell)?;
        let a = Rational::from_integer(curve.ap_count(ell)?.into());
        // phi T = a phi, i.e. (T - a)^t phi^t = 0
        for k in 0..dim {
            let mut row: Vec<Rational> = (0..dim).map(|i| t[(i, k)].clone()).collect();
            row[k] -= &a;
            rows.push(row);
        }
    }
    let kernel = if rows.is_empty() { QMatrix::zeros(1, dim).kernel() } else { QMatrix::from_rows(rows).kernel() };
    match kernel.len() {
        0 => Err(ModSymError::NoEigenline { conductor, level: space.level() }),
        1 => {
            Ok(ModularSymbolFunctional::new(space, primitive_integral(kernel.into_iter().next().expect("one vector"))))
        }
        n => Err(ModSymError::AmbiguousEigenline(n)),
    }
}

fn primitive_integral(v: Vec<Rational>) -> Vec<Rational> {
    let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| Rational::from_integer(x * &sign / &g)).collect()
}

impl ModularSymbolFunctional {
    fn new(space: Arc<ManinSymbolSpace>, dual_vector: Vec<Rational>) -> Self {
        let generator_values = space
            .generator_coords()
            .iter()
            .map(|coords| coords.iter().zip(&dual_vector).map(|(a, b)| a * b).sum())
            .collect();
        Self { space, dual_vector, generator_values, scaling: Rational::one(), normalized: false }
    }

    pub fn level(&self) -> u64 {
        self.space.level()
    }

    pub fn space(&self) -> &Arc<ManinSymbolSpace> {
        &self.space
    }

    pub fn dual_vector(&self) -> &[Rational] {
        &self.dual_vector
    }

    pub fn scaling(&self) -> &Rational {
        &self.scaling
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub(crate) fn with_scaling(&self, scaling: Rational) -> Self {
        Self { scaling, normalized: true, ..self.clone() }
    }

    /// Raw functional on the path `{inf, a/c}`, expanded along the
    /// continued-fraction convergents of `a/c`.
    pub fn raw_path_value(&self, a: i64, c: i64) -> Result<Rational, ModSymError> {
        if c <= 0 || (c != 1 && gcd(a.unsigned_abs(), c as u64) != 1) {
            return Err(ModSymError::NotCoprime { a, c });
        }
        let (mut num, mut den) = (a.rem_euclid(c), c);
        // (p_{k-1}, q_{k-1}) and (p_k, q_k), starting from 1/0 and 0/1
        let (mut p_prev, mut q_prev, mut p, mut q) = (0i64, 1i64, 1i64, 0i64);
        let mut total = Rational::zero();
        let mut sign = -1i64;
        loop {
            let quot = num / den;
            let (p_next, q_next) = (quot * p + p_prev, quot * q + q_prev);
            (p_prev, q_prev, p, q) = (p, q, p_next, q_next);
            // [[p, p_prev], [q, q_prev]] has determinant `sign`
            let g = self.space.generator_index(sign * q, q_prev).expect("coprime bottom row");
            total += &self.generator_values[g];
            sign = -sign;
            (num, den) = (den, num - quot * den);
            if den == 0 {
                break;
            }
        }
        Ok(total)
    }

    /// Raw regularized symbol `sum_{t | c} mu(c/t) [a (c/t)^{-1} / t]`.
    pub fn raw_regularized(&self, a: i64, c: i64) -> Result<Rational, ModSymError> {
        if c <= 0 || gcd(a.unsigned_abs(), c as u64) != 1 {
            return Err(ModSymError::NotCoprime { a, c });
        }
        let mut total = Rational::zero();
        for t in divisors(c as u64) {
            let cofactor = c as u64 / t;
            let mu = mobius(cofactor);
            if mu == 0 {
                continue;
            }
            let inv = inv_mod(cofactor as i64, t).expect("cofactor is a unit mod t");
            let num = (modulo(a, t) as u128 * inv as u128 % t as u128) as i64;
            let v = self.raw_path_value(num, t as i64)?;
            if mu > 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        Ok(total)
    }

    /// Regularized symbol `[a/c]^*` under the current scaling.
    pub fn eval_regularized(&self, a: i64, c: i64) -> Result<Rational, ModSymError> {
        Ok(&self.scaling * self.raw_regularized(a, c)?)
    }

    /// `[a/c]^+`, which depends only on `a mod c`.
    pub fn eval_plus_symbol(&self, a: i64, c: i64) -> Result<Rational, ModSymError> {
        Ok(&self.scaling * self.raw_path_value(a, c)?)
    }

    /// Positive integer `D` with `D [a/c]^+` integral for every `a/c`.
    pub fn denominator_bound(&self) -> BigInt {
        self.generator_values.iter().fold(BigInt::one(), |acc, v| acc.lcm((&self.scaling * v).denom()))
    }

    /// Checks `sum_j [(r + j)/ell] + [ell r] = a_ell [r]` at `r = a/c`.
    pub fn hecke_relation_holds(&self, a: i64, c: i64, ell: u64, a_ell: i64) -> Result<bool, ModSymError> {
        if !is_prime(ell) {
            return Err(ModSymError::NotPrime(ell));
        }
        let l = ell as i64;
        let reduced = |num: i64, den: i64| {
            let g = num.gcd(&den).max(1);
            self.eval_plus_symbol(num / g, den / g)
        };
        let mut lhs = reduced(l * a, c)?;
        for j in 0..l {
            lhs += reduced(a + j * c, l * c)?;
        }
        Ok(lhs == Rational::from_integer(a_ell.into()) * self.eval_plus_symbol(a, c)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn functional(level: u64, ainvs: [i64; 5]) -> ModularSymbolFunctional {
        let space = Arc::new(ManinSymbolSpace::new(level).unwrap());
        eigen_functional(space, &CurveQ::new(ainvs).unwrap()).unwrap()
    }

    #[test]
    fn sturm_bounds() {
        assert_eq!(sturm_bound(11), 2);
        assert_eq!(sturm_bound(37), 7);
        assert_eq!(sturm_bound(14), 4);
    }

    #[test]
    fn eigenline_for_37a1() {
        let f = functional(37, [0, 0, 1, -1, 0]);
        let space = f.space().clone();
        let t2 = space.hecke_full(2).unwrap();
        let image = t2.vec_mul(f.dual_vector());
        let expected: Vec<Rational> = f.dual_vector().iter().map(|q| q * Rational::from_integer((-2).into())).collect();
        assert_eq!(image, expected);
        // the other cuspidal eigenvalue is 0, so a_2 = -2 singles out one line
        let t = space.hecke_operator(2).unwrap();
        let trace = &t[(0, 0)] + &t[(1, 1)];
        assert_eq!(trace, Rational::from_integer((-2).into()));
    }

    #[test]
    fn eigenvalues_up_to_fifty() {
        for (level, ainvs) in [(11u64, [0, -1, 1, -10, -20]), (37, [0, 0, 1, -1, 0]), (43, [0, 1, 1, 0, 0])] {
            let curve = CurveQ::new(ainvs).unwrap();
            let f = functional(level, ainvs);
            for ell in primes_up_to(50).into_iter().filter(|l| level % l != 0) {
                let t = f.space().hecke_full(ell).unwrap();
                let a = Rational::from_integer(curve.ap_count(ell).unwrap().into());
                let expected: Vec<Rational> = f.dual_vector().iter().map(|q| q * &a).collect();
                assert_eq!(t.vec_mul(f.dual_vector()), expected, "N = {level}, ell = {ell}");
            }
        }
    }

    #[test]
    fn mismatched_level_has_no_eigenline() {
        let space = Arc::new(ManinSymbolSpace::new(11).unwrap());
        let e37 = CurveQ::new([0, 0, 1, -1, 0]).unwrap();
        assert!(matches!(eigen_functional(space, &e37), Err(ModSymError::NoEigenline { .. })));
    }

    #[test]
    fn rejects_non_reduced_fractions() {
        let f = functional(11, [0, -1, 1, -10, -20]);
        assert_eq!(f.eval_plus_symbol(2, 4), Err(ModSymError::NotCoprime { a: 2, c: 4 }));
        assert_eq!(f.eval_plus_symbol(1, 0), Err(ModSymError::NotCoprime { a: 1, c: 0 }));
        assert!(f.eval_plus_symbol(5, 1).is_ok());
    }

    proptest! {
        #[test]
        fn symbols_depend_on_residue_and_are_even(a in -500i64..500, c in 1i64..200, k in -5i64..5) {
            prop_assume!(gcd(a.unsigned_abs(), c as u64) == 1 || c == 1);
            let f = functional(37, [0, 0, 1, -1, 0]);
            let v = f.eval_plus_symbol(a, c).unwrap();
            prop_assert_eq!(&f.eval_plus_symbol(a + k * c, c).unwrap(), &v);
            prop_assert_eq!(&f.eval_plus_symbol(-a, c).unwrap(), &v);
        }

        #[test]
        fn hecke_compatibility(a in 0i64..300, c in 1i64..60) {
            prop_assume!(gcd(a.unsigned_abs(), c as u64) == 1 || c == 1);
            let curve = CurveQ::new([0, -1, 1, -10, -20]).unwrap();
            let f = functional(11, [0, -1, 1, -10, -20]);
            for ell in [2u64, 3, 5, 7] {
                if (c as u64).is_multiple_of(ell) {
                    continue;
                }
                let a_ell = curve.ap_count(ell).unwrap();
                prop_assert!(f.hecke_relation_holds(a, c, ell, a_ell).unwrap());
            }
        }
    }
}
