//! Real abelian fields of squarefree conductor as quotients of `(Z/c)^x`.

use std::sync::Arc;

use super::ThetaError;
use crate::arith::nt::{factor, gcd, is_squarefree, modulo, units_mod};
use crate::characters::{DirichletChar, UnitGroup};
use crate::grouprings::{AbGroup, FinitePresentation, GroupChar, GroupHom};

/// The fixed field of `H <= (Z/c)^x` in `Q(zeta_c)`, with `-1` in `H`.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    conductor: u64,
    subgroup: Vec<u64>,
    units: Arc<UnitGroup>,
    presentation: FinitePresentation,
    group: Arc<AbGroup>,
    reps: Vec<u64>,
}

impl FieldSpec {
    /// Validated field: `c` squarefree, `-1` in `H`, and `c` the exact conductor.
    pub fn new(conductor: u64, subgroup: &[u64]) -> Result<Self, ThetaError> {
        let field = Self::build(conductor, subgroup)?;
        let actual = field.actual_conductor();
        if actual != conductor {
            return Err(ThetaError::NotConductor { given: conductor, actual });
        }
        Ok(field)
    }

    /// `Q(zeta_c)^+`, the carrier of level-`c` theta elements.
    pub fn real_cyclotomic(c: u64) -> Result<Self, ThetaError> {
        Self::build(c, &[])
    }

    pub fn rationals() -> Self {
        Self::build(1, &[]).expect("level one")
    }

    /// The subfield of degree `degree` in `Q(zeta_ell)` for a prime `ell`.
    pub fn cyclic_prime_conductor(ell: u64, degree: u64) -> Result<Self, ThetaError> {
        let units = UnitGroup::new(ell)?;
        let g = *units.generators().first().ok_or(ThetaError::NotConductor { given: ell, actual: 1 })?;
        let h = crate::arith::nt::pow_mod(g, degree, ell);
        Self::new(ell, &[h])
    }

    fn build(conductor: u64, subgroup: &[u64]) -> Result<Self, ThetaError> {
        if conductor == 0 || !is_squarefree(conductor) {
            return Err(ThetaError::NotSquarefree(conductor));
        }
        let units = Arc::new(UnitGroup::new(conductor)?);
        let r = units.orders().len();
        let mut relations: Vec<Vec<i64>> = units
            .orders()
            .iter()
            .enumerate()
            .map(|(i, &n)| (0..r).map(|j| if i == j { n as i64 } else { 0 }).collect())
            .collect();
        for &h in subgroup.iter().chain(std::iter::once(&(conductor - 1))) {
            let log = units.log(h as i64).ok_or(ThetaError::NotCoprime { a: h as i64, c: conductor })?;
            relations.push(log.iter().map(|&x| x as i64).collect());
        }
        let presentation = FinitePresentation::new(r, &relations)?;
        let mut reps = vec![0u64; presentation.group().order()];
        let mut seen = vec![false; reps.len()];
        for a in units_mod(conductor) {
            let log: Vec<i64> = units.log(a as i64).expect("unit").iter().map(|&x| x as i64).collect();
            let g = presentation.element(&log);
            if !seen[g] {
                seen[g] = true;
                reps[g] = a;
            }
        }
        let labels = reps.iter().map(|a| format!("sigma_{a}")).collect();
        let group = Arc::new(presentation.group().clone().with_labels(labels));
        let mut subgroup: Vec<u64> = subgroup.iter().map(|&h| h % conductor).collect();
        subgroup.sort_unstable();
        subgroup.dedup();
        Ok(Self { conductor, subgroup, units, presentation, group, reps })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Generators of `H` as supplied (besides `-1`).
    pub fn subgroup_generators(&self) -> &[u64] {
        &self.subgroup
    }

    pub fn group(&self) -> &Arc<AbGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.group.order()
    }

    /// Least positive residue representing each group element.
    pub fn reps(&self) -> &[u64] {
        &self.reps
    }

    /// Image of `sigma_a` for `a` prime to the conductor.
    pub fn element_of(&self, a: i64) -> Option<usize> {
        let log: Vec<i64> = self.units.log(a)?.iter().map(|&x| x as i64).collect();
        Some(self.presentation.element(&log))
    }

    /// Smallest `c'` such that the field lies in `Q(zeta_{c'})`.
    fn actual_conductor(&self) -> u64 {
        let mut c = self.conductor;
        for (ell, _) in factor(self.conductor) {
            let rest = c / ell;
            let kernel_trivial = units_mod(c)
                .into_iter()
                .filter(|&a| a % rest == 1 % rest)
                .all(|a| self.element_of(a as i64) == Some(self.group.identity()));
            if kernel_trivial {
                c = rest;
            }
        }
        c
    }

    /// Inertia subgroup at a prime `ell | c`: images of `a = 1 mod c/ell`.
    pub fn inertia(&self, ell: u64) -> Vec<usize> {
        if !self.conductor.is_multiple_of(ell) {
            return vec![self.group.identity()];
        }
        let rest = self.conductor / ell;
        let mut out: Vec<usize> = units_mod(self.conductor)
            .into_iter()
            .filter(|&a| a % rest == 1 % rest)
            .filter_map(|a| self.element_of(a as i64))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Frobenius at `ell` modulo inertia: the image of `a` with
    /// `a = ell mod c/ell` and `a = 1 mod ell` (or of `ell` when unramified).
    pub fn frobenius(&self, ell: u64) -> usize {
        let c = self.conductor;
        if !c.is_multiple_of(ell) {
            return self.element_of(ell as i64).expect("unramified prime is a unit");
        }
        let rest = c / ell;
        let a = (0..c).find(|&a| a % rest == ell % rest && a % ell == 1 % ell).expect("CRT solution");
        self.element_of(a as i64).expect("unit")
    }

    /// Residue degree of `ell` in the field.
    pub fn residue_degree(&self, ell: u64) -> u64 {
        let inertia = self.inertia(ell);
        let frob = self.frobenius(ell);
        let mut power = frob;
        let mut f = 1u64;
        while !inertia.contains(&power) {
            power = self.group.mul(power, frob);
            f += 1;
        }
        f
    }

    /// Ramification index of `ell` in the field.
    pub fn ramification_index(&self, ell: u64) -> u64 {
        self.inertia(ell).len() as u64
    }

    /// The Dirichlet character mod `c` obtained by composing `psi` with the quotient map.
    pub fn dirichlet_char(&self, psi: &GroupChar) -> DirichletChar {
        let e = self.group.exponent();
        let exps: Vec<u64> = self
            .units
            .generators()
            .iter()
            .zip(self.units.orders())
            .map(|(&g, &n)| {
                let k = psi.value_exponent(&self.group, self.element_of(g as i64).expect("unit"));
                // zeta_e^k = zeta_n^(k n / e)
                k * n / e % n
            })
            .collect();
        DirichletChar::from_generator_exponents(self.units.clone(), &exps)
    }

    /// Characters of `G` paired with their Dirichlet characters mod `c`.
    pub fn characters(&self) -> Vec<(GroupChar, DirichletChar)> {
        self.group
            .characters()
            .into_iter()
            .map(|psi| {
                let chi = self.dirichlet_char(&psi);
                (psi, chi)
            })
            .collect()
    }

    /// Whether a Dirichlet character (of modulus dividing `c`) factors through `G`.
    pub fn character_factors(&self, chi: &DirichletChar) -> bool {
        if !self.conductor.is_multiple_of(chi.modulus()) {
            return false;
        }
        units_mod(self.conductor)
            .into_iter()
            .filter(|&a| self.element_of(a as i64) == Some(self.group.identity()))
            .all(|a| chi.value_exponent(modulo(a as i64, chi.modulus()) as i64) == Some(0))
    }

    /// The restriction `Gal(self/Q) -> Gal(sub/Q)` for a subfield `sub`.
    pub fn restriction_to(&self, sub: &FieldSpec) -> Result<GroupHom, ThetaError> {
        if !self.conductor.is_multiple_of(sub.conductor) {
            return Err(ThetaError::NotSubfield);
        }
        let images = self.reps.iter().map(|&a| sub.element_of(a as i64).expect("unit modulo a divisor")).collect();
        GroupHom::new(self.group.as_ref().clone(), sub.group.as_ref().clone(), images)
            .map_err(|_| ThetaError::NotSubfield)
    }

    /// The maximal subfield `F'` whose degree is prime to `p`.
    pub fn max_prime_to_p_subfield(&self, p: u64) -> Result<FieldSpec, ThetaError> {
        let mut extra: Vec<u64> = self.subgroup.clone();
        for (i, &d) in self.group.invariant_factors().iter().enumerate() {
            let mut prime_to_p = d;
            while prime_to_p % p == 0 {
                prime_to_p /= p;
            }
            let g = self.group.pow(self.group.generator(i), prime_to_p as i64);
            extra.push(self.reps[g]);
        }
        let mut field = Self::build(self.conductor, &extra)?;
        // shrink the level to the conductor
        loop {
            let actual = field.actual_conductor();
            if actual == field.conductor {
                return Ok(field);
            }
            let reduced: Vec<u64> =
                field.subgroup.iter().map(|&h| h % actual).filter(|&h| gcd(h, actual) == 1 && actual > 1).collect();
            field = Self::build(actual, &reduced)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_and_cubic_fields() {
        let f = FieldSpec::real_cyclotomic(13).unwrap();
        assert_eq!(f.degree(), 6);
        let cubic = FieldSpec::cyclic_prime_conductor(13, 3).unwrap();
        assert_eq!(cubic.degree(), 3);
        assert_eq!(cubic.group().invariant_factors(), &[3]);
        assert_eq!(FieldSpec::rationals().degree(), 1);
        let g15 = FieldSpec::real_cyclotomic(15).unwrap();
        // (Z/15)^x = Z/2 x Z/4 and -1 = (1, 2), so the quotient is cyclic
        assert_eq!(g15.group().invariant_factors(), &[4]);
    }

    #[test]
    fn validation() {
        assert!(matches!(FieldSpec::new(12, &[]), Err(ThetaError::NotSquarefree(12))));
        // H = {1, 4, ...} in (Z/15)^x: the field Q(zeta_15)^+ has conductor 15
        assert!(FieldSpec::new(15, &[]).is_ok());
        // H containing everything that is 1 mod 5 gives conductor 5
        assert!(matches!(FieldSpec::new(15, &[11]), Err(ThetaError::NotConductor { given: 15, actual: 5 })));
    }

    #[test]
    fn splitting_data() {
        let cubic = FieldSpec::cyclic_prime_conductor(7, 3).unwrap();
        // only primes = +-1 mod 7 split
        assert_eq!(cubic.residue_degree(2), 3);
        assert_eq!(cubic.residue_degree(3), 3);
        assert_eq!(cubic.ramification_index(7), 3);
        assert_eq!(cubic.residue_degree(7), 1);
        assert_eq!(cubic.residue_degree(13), 1);
        assert_eq!(cubic.residue_degree(29), 1);
        // Q(zeta_21)^+ contains Q(sqrt 21), so both 3 and 7 ramify
        let f21 = FieldSpec::real_cyclotomic(21).unwrap();
        assert_eq!((f21.ramification_index(7), f21.residue_degree(7)), (6, 1));
        assert_eq!((f21.ramification_index(3), f21.residue_degree(3)), (2, 3));
    }

    #[test]
    fn characters_factor() {
        let f = FieldSpec::cyclic_prime_conductor(13, 3).unwrap();
        let chars = f.characters();
        assert_eq!(chars.len(), 3);
        for (psi, chi) in &chars {
            assert!(chi.is_even());
            assert!(f.character_factors(chi));
            assert_eq!(chi.order(), psi.order());
        }
        let full = FieldSpec::real_cyclotomic(13).unwrap();
        assert_eq!(full.characters().iter().filter(|(_, chi)| chi.order() == 6).count(), 2);
    }

    #[test]
    fn prime_to_p_subfields() {
        let f = FieldSpec::real_cyclotomic(13).unwrap();
        let sub = f.max_prime_to_p_subfield(3).unwrap();
        assert_eq!((sub.conductor(), sub.degree()), (13, 2));
        let cubic = FieldSpec::cyclic_prime_conductor(7, 3).unwrap();
        let sub = cubic.max_prime_to_p_subfield(3).unwrap();
        assert_eq!((sub.conductor(), sub.degree()), (1, 1));
        let hom = f.restriction_to(&FieldSpec::cyclic_prime_conductor(13, 3).unwrap()).unwrap();
        assert!(hom.is_surjective());
    }
}
