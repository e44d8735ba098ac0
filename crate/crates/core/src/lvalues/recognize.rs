//! Recognising numerical values as rationals or cyclotomic numbers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::float::{Complex, Real};
use crate::arith::nt::euler_phi;
use crate::arith::{CycloElem, Rational};

/// Best rational approximation `p/q` with `q <= max_den` within `tol` of `x`.
pub fn rational_reconstruct(x: &Real, max_den: u64, tol: f64) -> Option<Rational> {
    let tol = Real::from_f64(tol);
    let max_den = BigInt::from(max_den);
    let (mut p_prev, mut q_prev) = (BigInt::zero(), BigInt::one());
    let (mut p, mut q) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    for _ in 0..200 {
        let a = floor(&rest);
        let (p_next, q_next) = (&a * &p + &p_prev, &a * &q + &q_prev);
        if q_next > max_den {
            return None;
        }
        (p_prev, q_prev, p, q) = (p, q, p_next, q_next);
        let approx = Rational::new(p.clone(), q.clone());
        if (&Real::from_rational(&approx) - x).abs() <= tol {
            return Some(approx);
        }
        let frac = &rest - &Real::from_bigint(&a);
        if frac.is_zero() {
            return None;
        }
        rest = &Real::from_i64(1) / &frac;
    }
    None
}

fn floor(x: &Real) -> BigInt {
    let r = x.round();
    if &Real::from_bigint(&r) > x {
        r - 1
    } else {
        r
    }
}

/// Recognises `z` as an element of `Q(zeta_m)` whose power-basis coordinates
/// have a common denominator at most `max_den`, by lattice reduction.
pub fn recognize_cyclotomic(z: &Complex, m: u64, max_den: u64, tol: f64) -> Option<CycloElem> {
    let degree = euler_phi(m) as usize;
    let digits = (-tol.log10()).ceil().max(8.0) as i32 + 4;
    let scale = Real::parse(&format!("1e{digits}"));
    let embed = |w: &Complex| [(&w.re * &scale).round(), (&w.im * &scale).round()];
    // rows: [e_j | K Re(zeta^j), K Im(zeta^j)] and the target [e_d | K Re z, K Im z]
    let width = degree + 3;
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(degree + 1);
    for j in 0..=degree {
        let mut row = vec![BigInt::zero(); width];
        row[j] = BigInt::one();
        let w = if j < degree { Complex::root_of_unity(j as i64, m) } else { z.clone() };
        let [re, im] = embed(&w);
        row[degree + 1] = re;
        row[degree + 2] = im;
        basis.push(row);
    }
    lll(&mut basis);
    let tol_real = Real::from_f64(tol);
    for row in &basis {
        let den = row[degree].clone();
        if den.is_zero() || den.abs() > BigInt::from(max_den) {
            continue;
        }
        // den * z + sum row_j zeta^j = 0
        let x = CycloElem::from_terms(m, (0..degree).map(|j| (j as i64, Rational::new(-row[j].clone(), den.clone()))));
        let value = super::series::cyclo_to_complex(&x);
        if (&value - z).abs() <= tol_real {
            return Some(x);
        }
    }
    None
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Textbook LLL reduction with `delta = 3/4`, exact over the rationals.
fn lll(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    let to_q = |v: &Vec<BigInt>| v.iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>();
    let gram_schmidt = |basis: &[Vec<BigInt>]| {
        let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut mu = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            let mut v = to_q(&basis[i]);
            let bi = to_q(&basis[i]);
            for j in 0..i {
                let norm = dot(&star[j], &star[j]);
                mu[i][j] = if norm.is_zero() { Rational::zero() } else { dot(&bi, &star[j]) / norm };
                for (x, y) in v.iter_mut().zip(&star[j]) {
                    *x -= &mu[i][j] * y;
                }
            }
            star.push(v);
        }
        (star, mu)
    };
    let delta = Rational::new(3.into(), 4.into());
    let half = Rational::new(1.into(), 2.into());
    let mut k = 1;
    let (mut star, mut mu) = gram_schmidt(basis);
    while k < n {
        for j in (0..k).rev() {
            if mu[k][j].abs() > half {
                let r = mu[k][j].round().to_integer();
                let (head, tail) = basis.split_at_mut(k);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= &r * y;
                }
                (star, mu) = gram_schmidt(basis);
            }
        }
        let lhs = dot(&star[k], &star[k]);
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * dot(&star[k - 1], &star[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            (star, mu) = gram_schmidt(basis);
            k = (k - 1).max(1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn reconstructs_rationals() {
        let x = Real::from_rational(&rat(-7, 25));
        assert_eq!(rational_reconstruct(&x, 1000, 1e-20), Some(rat(-7, 25)));
        let third = &Real::from_i64(1) / &Real::from_i64(3);
        assert_eq!(rational_reconstruct(&third, 10, 1e-30), Some(rat(1, 3)));
        assert_eq!(rational_reconstruct(&Real::pi(), 1000, 1e-20), None);
    }

    #[test]
    fn recognizes_cyclotomic_numbers() {
        let x = CycloElem::from_terms(3, [(0, rat(2, 5)), (1, rat(-3, 10))]);
        let z = super::super::series::cyclo_to_complex(&x);
        assert_eq!(recognize_cyclotomic(&z, 3, 100, 1e-25), Some(x));
        let y = CycloElem::from_terms(5, [(0, rat(1, 2)), (2, rat(3, 2)), (3, rat(-1, 1))]);
        let z = super::super::series::cyclo_to_complex(&y);
        assert_eq!(recognize_cyclotomic(&z, 5, 100, 1e-25), Some(y));
    }
}
