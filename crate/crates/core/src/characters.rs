//! Dirichlet characters, Gauss sums and modified Galois-Gauss sums.
//!
//! A character modulo `c` is stored by the exponents it assigns to a fixed
//! generator system of `(Z/c)^x`; its values are `zeta_m^e` with `m` the
//! order of the character.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::nt::{divisors, factor, gcd, is_squarefree, lcm, modulo, pow_mod};
use crate::arith::{ArithError, CycloElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("conductor {conductor} does not divide {modulus}")]
    ConductorNotDividing { conductor: u64, modulus: u64 },
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("characters have different moduli: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `(Z/c)^x` with a fixed generator system and a discrete-log table.
#[derive(Debug, PartialEq, Eq)]
pub struct UnitGroup {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    /// Exponent vector of each residue, `None` for non-units.
    logs: Vec<Option<Vec<u64>>>,
}

impl UnitGroup {
    pub fn new(modulus: u64) -> Result<Self, CharError> {
        if modulus == 0 {
            return Err(CharError::ZeroModulus);
        }
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (p, e) in factor(modulus) {
            let q = p.pow(e);
            let rest = modulus / q;
            // local generators mod q, lifted to be 1 modulo the complementary part
            let local: Vec<(u64, u64)> = if p == 2 {
                match e {
                    1 => vec![],
                    2 => vec![(q - 1, 2)],
                    _ => vec![(q - 1, 2), (5, q / 4)],
                }
            } else {
                vec![(primitive_root_prime_power(p, e), q - q / p)]
            };
            for (g, ord) in local {
                generators.push(crt_pair(g, q, 1, rest));
                orders.push(ord);
            }
        }
        let mut logs = vec![None; modulus as usize];
        if modulus == 1 {
            logs[0] = Some(vec![]);
        }
        let mut exps = vec![0u64; generators.len()];
        let total: u64 = orders.iter().product();
        for _ in 0..total {
            let value =
                exps.iter().zip(&generators).fold(1 % modulus, |acc, (&k, &g)| acc * pow_mod(g, k, modulus) % modulus);
            logs[value as usize] = Some(exps.clone());
            for (k, &ord) in exps.iter_mut().zip(&orders) {
                *k += 1;
                if *k < ord {
                    break;
                }
                *k = 0;
            }
        }
        Ok(UnitGroup { modulus, generators, orders, logs })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn log(&self, a: i64) -> Option<&[u64]> {
        self.logs[modulo(a, self.modulus) as usize].as_deref()
    }

    /// Units in increasing order.
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.modulus).filter(|&a| self.logs[a as usize].is_some())
    }
}

fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    let q = p.pow(e);
    let phi = q - q / p;
    let prime_factors: Vec<u64> = factor(phi).into_iter().map(|(r, _)| r).collect();
    (2..q).find(|&g| gcd(g, p) == 1 && prime_factors.iter().all(|&r| pow_mod(g, phi / r, q) != 1)).unwrap_or(1)
}

/// The residue mod `m1 * m2` congruent to `a1` mod `m1` and `a2` mod `m2`.
fn crt_pair(a1: u64, m1: u64, a2: u64, m2: u64) -> u64 {
    let m = m1 * m2;
    (0..m2).map(|k| a1 + k * m1).find(|x| x % m2 == a2 % m2).map(|x| x % m).expect("coprime moduli")
}

/// A Dirichlet character.
#[derive(Clone)]
pub struct DirichletChar {
    group: Arc<UnitGroup>,
    order: u64,
    /// `chi(g_i) = zeta_order^gen_exponents[i]`.
    gen_exponents: Vec<u64>,
}

impl PartialEq for DirichletChar {
    fn eq(&self, other: &Self) -> bool {
        self.group.modulus == other.group.modulus && self.values_table() == other.values_table()
    }
}

impl Eq for DirichletChar {}

impl fmt::Debug for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "chi mod {} (order {}, exponents {:?} on generators {:?})",
            self.modulus(),
            self.order,
            self.gen_exponents,
            self.group.generators
        )
    }
}

impl DirichletChar {
    /// Character of `group` sending generator `i` to `zeta_{n_i}^{e_i}`.
    pub fn from_generator_exponents(group: Arc<UnitGroup>, exps: &[u64]) -> Self {
        assert_eq!(exps.len(), group.orders.len(), "one exponent per generator");
        let order = exps.iter().zip(&group.orders).map(|(&e, &n)| n / gcd(e % n, n)).fold(1, lcm);
        // zeta_n^e = zeta_order^(e * order / n), exact because n / gcd(e, n) divides order
        let gen_exponents = exps
            .iter()
            .zip(&group.orders)
            .map(|(&e, &n)| ((e % n) as u128 * order as u128 / n as u128) as u64 % order)
            .collect();
        DirichletChar { group, order, gen_exponents }
    }

    pub fn trivial(modulus: u64) -> Result<Self, CharError> {
        let group = Arc::new(UnitGroup::new(modulus)?);
        let exps = vec![0; group.orders.len()];
        Ok(Self::from_generator_exponents(group, &exps))
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator_exponents(&self) -> &[u64] {
        &self.gen_exponents
    }

    /// `e` with `chi(a) = zeta_order^e`, or `None` when `gcd(a, c) > 1`.
    pub fn value_exponent(&self, a: i64) -> Option<u64> {
        let log = self.group.log(a)?;
        let m = self.order;
        Some(log.iter().zip(&self.gen_exponents).map(|(&k, &x)| k * x % m).sum::<u64>() % m)
    }

    /// `chi(a)` in `Q(zeta_level)`; zero when `gcd(a, c) > 1`.
    pub fn value_at_level(&self, a: i64, level: u64) -> CycloElem {
        assert_eq!(level % self.order, 0, "level must be a multiple of the order");
        match self.value_exponent(a) {
            Some(e) => CycloElem::zeta_pow(level, (e * (level / self.order)) as i64),
            None => CycloElem::zero(level),
        }
    }

    pub fn value(&self, a: i64) -> CycloElem {
        self.value_at_level(a, self.order)
    }

    /// Values as reduced fractions `e / m` of a full turn.
    fn values_table(&self) -> Vec<Option<(u64, u64)>> {
        let m = self.order;
        (0..self.modulus() as i64)
            .map(|a| {
                self.value_exponent(a).map(|e| {
                    let g = gcd(e, m);
                    (e / g, m / g)
                })
            })
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_even(&self) -> bool {
        self.value_exponent(-1) == Some(0)
    }

    /// Whether `chi(h) = 1` for every `h` in the list.
    pub fn is_trivial_on(&self, elements: &[u64]) -> bool {
        elements.iter().all(|&h| self.value_exponent(h as i64) == Some(0))
    }

    pub fn conj(&self) -> Self {
        self.pow(self.order as i64 - 1)
    }

    /// `chi^k`.
    pub fn pow(&self, k: i64) -> Self {
        let exps: Vec<u64> = self
            .gen_exponents
            .iter()
            .zip(&self.group.orders)
            .map(|(&x, &n)| {
                // chi(g_i) = zeta_order^x, so as an element of Z/n_i the exponent is x n_i / order
                let base = x * n / self.order;
                modulo(base as i64 * k, n)
            })
            .collect();
        Self::from_generator_exponents(self.group.clone(), &exps)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CharError> {
        if self.modulus() != other.modulus() {
            return Err(CharError::ModulusMismatch(self.modulus(), other.modulus()));
        }
        let exps: Vec<u64> = self
            .gen_exponents
            .iter()
            .zip(&other.gen_exponents)
            .zip(&self.group.orders)
            .map(|((&x, &y), &n)| (x * n / self.order + y * n / other.order) % n)
            .collect();
        Ok(Self::from_generator_exponents(self.group.clone(), &exps))
    }

    /// Smallest `d | c` such that `chi` is trivial on units congruent to 1 mod `d`.
    pub fn conductor(&self) -> u64 {
        let c = self.modulus();
        divisors(c)
            .into_iter()
            .find(|&d| self.group.units().filter(|a| a % d == 1 % d).all(|a| self.value_exponent(a as i64) == Some(0)))
            .unwrap_or(c)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    /// The character modulo `m` with the same primitive part, for `conductor | m`.
    pub fn induce(&self, m: u64) -> Result<Self, CharError> {
        let f = self.conductor();
        if m == 0 || !m.is_multiple_of(f) {
            return Err(CharError::ConductorNotDividing { conductor: f, modulus: m });
        }
        let c = self.modulus();
        let target = Arc::new(UnitGroup::new(m)?);
        // value at each target generator: pick a unit mod c with the same residue mod f
        let exps: Vec<u64> = target
            .generators
            .iter()
            .zip(&target.orders)
            .map(|(&g, &n)| {
                let rep =
                    (0..c).map(|k| (g % f) + k * f).find(|&a| gcd(a, c) == 1).expect("unit representative exists");
                let e = self.value_exponent(rep as i64).expect("unit");
                // zeta_order^e as an element of Z/n
                e * n / self.order % n.max(1)
            })
            .collect();
        Ok(Self::from_generator_exponents(target, &exps))
    }

    pub fn primitive(&self) -> Self {
        self.induce(self.conductor()).expect("conductor divides itself")
    }
}

impl fmt::Display for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi_{}{:?}", self.modulus(), self.gen_exponents)
    }
}

/// All characters modulo `c`, optionally only the even ones.
pub fn enumerate_chars(c: u64, even_only: bool) -> Result<Vec<DirichletChar>, CharError> {
    let group = Arc::new(UnitGroup::new(c)?);
    let mut out = Vec::new();
    let mut exps = vec![0u64; group.orders.len()];
    for _ in 0..group.order() {
        let chi = DirichletChar::from_generator_exponents(group.clone(), &exps);
        if !even_only || chi.is_even() {
            out.push(chi);
        }
        for (k, &ord) in exps.iter_mut().zip(&group.orders) {
            *k += 1;
            if *k < ord {
                break;
            }
            *k = 0;
        }
    }
    Ok(out)
}

/// `tau_m(chi) = sum_{a in (Z/m)^x} chi(a) zeta_m^a` in `Q(zeta_L)`, `L = lcm(m, order)`.
pub fn gauss_sum(chi: &DirichletChar, m: u64) -> Result<CycloElem, CharError> {
    let lifted = chi.induce(m)?;
    let order = lifted.order();
    let level = lcm(m, order);
    let terms = (0..m as i64).filter_map(|a| {
        let e = lifted.value_exponent(a)?;
        Some(((a as u64 * (level / m) + e * (level / order)) as i64, 1i64))
    });
    Ok(CycloElem::from_int_terms(level, terms))
}

/// Unramified characteristic `prod_{l | c / c_chi} (-chi(l))` in `Q(zeta_order)`.
pub fn unramified_characteristic(chi: &DirichletChar, c: u64) -> Result<CycloElem, CharError> {
    if !is_squarefree(c) {
        return Err(CharError::NotSquarefree(c));
    }
    let prim = chi.primitive();
    let f = prim.modulus();
    if !c.is_multiple_of(f) {
        return Err(CharError::ConductorNotDividing { conductor: f, modulus: c });
    }
    let level = prim.order();
    let mut u = CycloElem::one(level);
    for (ell, _) in factor(c / f) {
        u = &u * &(-prim.value_at_level(ell as i64, level));
    }
    Ok(u)
}

/// Modified Galois-Gauss sum `tau*(Q, chi)` for the abelian field cut out at conductor `c`.
pub fn tau_star(chi: &DirichletChar, c: u64) -> Result<CycloElem, CharError> {
    let u = unramified_characteristic(chi, c)?;
    let prim = chi.primitive();
    let tau = gauss_sum(&prim, prim.modulus())?;
    let level = lcm(tau.level(), lcm(u.level(), c));
    Ok(&tau.embed(level)? * &u.embed(level)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn unit_group_structure() {
        for c in 1..=64u64 {
            let g = UnitGroup::new(c).unwrap();
            assert_eq!(g.order(), crate::arith::nt::euler_phi(c));
            assert_eq!(g.units().count() as u64, g.order());
        }
    }

    #[test]
    fn enumeration_counts() {
        let trivial = enumerate_chars(1, false).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].is_trivial());
        assert_eq!(enumerate_chars(5, true).unwrap().len(), 2);
        let all15 = enumerate_chars(15, false).unwrap();
        assert_eq!(all15.len(), 8);
        let mut conductors: Vec<u64> = all15.iter().map(DirichletChar::conductor).collect();
        conductors.sort();
        assert_eq!(conductors, vec![1, 3, 5, 5, 5, 15, 15, 15]);
    }

    #[test]
    fn characters_are_homomorphisms() {
        for c in [7u64, 8, 12, 15, 16, 21, 24, 35] {
            for chi in enumerate_chars(c, false).unwrap() {
                for a in 0..c as i64 {
                    for b in 0..c as i64 {
                        let lhs = &chi.value(a) * &chi.value(b);
                        assert_eq!(lhs, chi.value(a * b), "{chi:?} at {a},{b}");
                    }
                }
            }
        }
    }

    #[test]
    fn distinct_characters() {
        for c in [8u64, 12, 13, 20] {
            let chars = enumerate_chars(c, false).unwrap();
            for (i, x) in chars.iter().enumerate() {
                for y in &chars[i + 1..] {
                    assert_ne!(x, y);
                }
            }
        }
    }

    #[test]
    fn induce_and_primitive() {
        for chi in enumerate_chars(15, false).unwrap() {
            let prim = chi.primitive();
            assert!(prim.is_primitive());
            assert_eq!(prim.induce(15).unwrap(), chi);
            for a in 0..15 {
                if gcd(a as u64, 15) == 1 {
                    assert_eq!(chi.value(a), prim.value(a));
                }
            }
        }
    }

    #[test]
    fn quadratic_gauss_sum_mod_5() {
        let chi = enumerate_chars(5, true).unwrap().into_iter().find(|c| !c.is_trivial()).unwrap();
        let tau = gauss_sum(&chi, 5).unwrap();
        assert_eq!((&tau * &tau).as_rational(), Some(int(5)));
    }

    #[test]
    fn trivial_gauss_sum_prime() {
        let one = DirichletChar::trivial(1).unwrap();
        for ell in [2u64, 3, 5, 7, 11] {
            assert_eq!(gauss_sum(&one, ell).unwrap().as_rational(), Some(int(-1)));
        }
    }

    #[test]
    fn tau_star_examples() {
        let one = DirichletChar::trivial(1).unwrap();
        assert_eq!(tau_star(&one, 7).unwrap().as_rational(), Some(int(-1)));
        let chi3 = enumerate_chars(3, false).unwrap().into_iter().find(|c| !c.is_trivial()).unwrap();
        let lifted = chi3.induce(15).unwrap();
        let ts = tau_star(&lifted, 15).unwrap();
        let direct = gauss_sum(&lifted, 15).unwrap();
        assert_eq!(
            ts.embed(lcm(ts.level(), direct.level())).unwrap(),
            direct.embed(lcm(ts.level(), direct.level())).unwrap()
        );
        assert!(matches!(tau_star(&one, 12), Err(CharError::NotSquarefree(12))));
    }

    /// With `-chi(l)^{-1}` in place of `-chi(l)` the identity fails as soon as
    /// `chi(l)` is not real.
    #[test]
    fn inverse_convention_fails_for_nonreal_values() {
        let chi7 = enumerate_chars(7, true).unwrap().into_iter().find(|c| c.order() == 3).unwrap();
        let lifted = chi7.induce(7 * 2).unwrap();
        let direct = gauss_sum(&lifted, 14).unwrap();
        let tau = gauss_sum(&chi7, 7).unwrap();
        let wrong_factor = -chi7.conj().value(2);
        let level = lcm(direct.level(), lcm(tau.level(), 3));
        let wrong = &tau.embed(level).unwrap() * &wrong_factor.embed(level).unwrap();
        assert_ne!(wrong, direct.embed(level).unwrap());
        assert_eq!(tau_star(&lifted, 14).unwrap().embed(level).unwrap(), direct.embed(level).unwrap());
    }
}
