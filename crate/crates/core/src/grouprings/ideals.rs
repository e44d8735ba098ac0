//! Units, augmentation powers and Fitting ideals in `Z_p[G]`.

use super::ring::{GroupRingElem, ZpGroupRingElem};
use super::GroupRingError;
use crate::arith::nt::inv_mod;
use crate::linalg::PadicSpan;

/// `p`-integrality of an element of `Q[G]` and whether it is a unit of `Z_p[G]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitVerdict {
    pub integral: bool,
    pub unit: bool,
}

/// Integral iff every coefficient is `p`-integral; a unit iff moreover the
/// regular representation is invertible over `F_p`.
pub fn padic_integrality_and_unit(x: &GroupRingElem, p: u64) -> Result<UnitVerdict, GroupRingError> {
    if p == 2 {
        return Err(GroupRingError::EvenPrime);
    }
    let Ok(reduced) = x.reduce(p, 1) else {
        return Ok(UnitVerdict { integral: false, unit: false });
    };
    Ok(UnitVerdict { integral: true, unit: regular_determinant_mod_p(&reduced) != 0 })
}

/// Determinant of multiplication by `x` on `F_p[G]`.
pub fn regular_determinant_mod_p(x: &ZpGroupRingElem) -> u64 {
    let p = x.prime();
    let group = x.group();
    let n = group.order();
    // column h is the image of h: coefficient of g is x_{g h^{-1}}
    let mut m: Vec<Vec<u64>> =
        (0..n).map(|g| (0..n).map(|h| x.coeffs()[group.mul(g, group.inv(h))] % p).collect()).collect();
    let mut det = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            m.swap(pivot, col);
            det = (p - det) % p;
        }
        det = det * m[col][col] % p;
        let inv = inv_mod(m[col][col] as i64, p).expect("non-zero mod p");
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            let f = row[col] * inv % p;
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = (*x + p * p - f * y % p) % p;
            }
        }
    }
    det
}

fn span_of_ideal(generators: &[ZpGroupRingElem], template: &ZpGroupRingElem) -> PadicSpan {
    let group = template.group();
    let vectors = generators.iter().flat_map(|g| (0..group.order()).map(move |h| g.translate(h).coeffs().to_vec()));
    PadicSpan::new(template.prime(), template.precision(), group.order(), vectors)
}

/// Whether `x` lies in `I_p(G)^n` modulo `p^k`.
pub fn aug_ideal_membership(x: &ZpGroupRingElem, n: u32) -> bool {
    let group = x.group().clone();
    let (p, k) = (x.prime(), x.precision());
    let one = ZpGroupRingElem::basis(group.clone(), p, k, group.identity());
    let gens: Vec<ZpGroupRingElem> =
        group.generators().into_iter().map(|g| ZpGroupRingElem::basis(group.clone(), p, k, g).sub(&one)).collect();
    // products of n generators, as multisets
    let gens = &gens;
    let mut products = vec![(one.clone(), 0usize)];
    for _ in 0..n {
        products = products
            .iter()
            .flat_map(|(prod, start)| (*start..gens.len()).map(move |i| (prod.mul(&gens[i]), i)))
            .collect();
    }
    let products: Vec<ZpGroupRingElem> = products.into_iter().map(|(p, _)| p).collect();
    if products.is_empty() {
        // trivial group: I = 0
        return x.is_zero();
    }
    span_of_ideal(&products, x).contains(x.coeffs())
}

/// Determinant over the commutative ring `(Z/p^k)[G]` by Laplace expansion.
fn determinant(m: &[Vec<ZpGroupRingElem>], template: &ZpGroupRingElem) -> ZpGroupRingElem {
    let group = template.group().clone();
    let (p, k) = (template.prime(), template.precision());
    match m.len() {
        0 => ZpGroupRingElem::basis(group.clone(), p, k, group.identity()),
        1 => m[0][0].clone(),
        n => {
            let mut total = ZpGroupRingElem::zero(group, p, k);
            for j in 0..n {
                let minor: Vec<Vec<ZpGroupRingElem>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, e)| e.clone()).collect())
                    .collect();
                let term = m[0][j].mul(&determinant(&minor, template));
                total = if j % 2 == 0 { total.add(&term) } else { total.sub(&term) };
            }
            total
        }
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if size > n {
        return Vec::new();
    }
    let mut out = subsets(n - 1, size);
    for mut s in subsets(n - 1, size - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Whether `x` lies in `Fit^a` of the module presented by the `r x s`
/// matrix `presentation` (rows are relations on `s` generators), modulo `p^k`.
pub fn fitting_membership(
    x: &ZpGroupRingElem,
    presentation: &[Vec<ZpGroupRingElem>],
    a: usize,
) -> Result<bool, GroupRingError> {
    let s = presentation.first().map_or(0, Vec::len);
    if a >= s {
        return Err(GroupRingError::IndexOutOfRange { index: a, generators: s });
    }
    let size = s - a;
    let mut minors = Vec::new();
    for rows in subsets(presentation.len(), size) {
        for cols in subsets(s, size) {
            let sub: Vec<Vec<ZpGroupRingElem>> =
                rows.iter().map(|&r| cols.iter().map(|&c| presentation[r][c].clone()).collect()).collect();
            minors.push(determinant(&sub, x));
        }
    }
    if minors.is_empty() {
        return Ok(x.is_zero());
    }
    Ok(span_of_ideal(&minors, x).contains(x.coeffs()))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;
    use crate::arith::rat;
    use crate::grouprings::AbGroup;

    fn z3() -> Arc<AbGroup> {
        Arc::new(AbGroup::cyclic(3))
    }

    fn zp(g: &Arc<AbGroup>, k: u32, c: &[i64]) -> ZpGroupRingElem {
        ZpGroupRingElem::new(g.clone(), 3, k, c)
    }

    #[test]
    fn unit_examples() {
        let g = z3();
        // 1 + 3 (sigma - 1)
        let x = GroupRingElem::from_coeffs(g.clone(), vec![rat(-2, 1), rat(3, 1), rat(0, 1)]);
        assert_eq!(padic_integrality_and_unit(&x, 3), Ok(UnitVerdict { integral: true, unit: true }));
        let y = GroupRingElem::from_coeffs(g.clone(), vec![rat(-1, 1), rat(1, 1), rat(0, 1)]);
        assert_eq!(padic_integrality_and_unit(&y, 3), Ok(UnitVerdict { integral: true, unit: false }));
        let z = GroupRingElem::from_coeffs(g, vec![rat(1, 3), rat(0, 1), rat(0, 1)]);
        assert_eq!(padic_integrality_and_unit(&z, 3), Ok(UnitVerdict { integral: false, unit: false }));
        assert_eq!(padic_integrality_and_unit(&z, 2), Err(GroupRingError::EvenPrime));
    }

    #[test]
    fn augmentation_powers() {
        let g = z3();
        let s1 = zp(&g, 2, &[-1, 1, 0]);
        assert!(aug_ideal_membership(&s1.mul(&s1), 2));
        assert!(!aug_ideal_membership(&zp(&g, 2, &[3, 0, 0]), 1));
        // brute enumeration of I^3 mod 9 as a Z/9-module
        let cube = s1.mul(&s1).mul(&s1);
        let mut span: HashSet<Vec<u64>> = HashSet::new();
        let translates: Vec<ZpGroupRingElem> = (0..3).map(|h| cube.translate(h)).collect();
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    let v = translates[0].scale(a).add(&translates[1].scale(b)).add(&translates[2].scale(c));
                    span.insert(v.coeffs().to_vec());
                }
            }
        }
        let target = s1.scale(3);
        assert_eq!(aug_ideal_membership(&target, 3), span.contains(target.coeffs()));
        for v in [[1i64, 2, 3], [3, 3, 3], [0, 3, 6], [6, 0, 3]] {
            let x = zp(&g, 2, &v);
            assert_eq!(aug_ideal_membership(&x, 3), span.contains(x.coeffs()), "{v:?}");
        }
    }

    #[test]
    fn fitting_examples() {
        let trivial = Arc::new(AbGroup::trivial());
        let p_mat = vec![vec![ZpGroupRingElem::new(trivial.clone(), 3, 2, &[3])]];
        assert!(fitting_membership(&ZpGroupRingElem::new(trivial.clone(), 3, 2, &[3]), &p_mat, 0).unwrap());
        assert!(!fitting_membership(&ZpGroupRingElem::new(trivial.clone(), 3, 2, &[1]), &p_mat, 0).unwrap());
        assert!(fitting_membership(&ZpGroupRingElem::new(trivial.clone(), 3, 2, &[1]), &p_mat, 1).is_err());

        let g = z3();
        let identity = vec![
            vec![zp(&g, 2, &[1, 0, 0]), zp(&g, 2, &[0, 0, 0])],
            vec![zp(&g, 2, &[0, 0, 0]), zp(&g, 2, &[1, 0, 0])],
        ];
        assert!(fitting_membership(&zp(&g, 2, &[4, 7, 1]), &identity, 0).unwrap());

        // one generator, relations sigma - 1 and 3
        let pres = vec![vec![zp(&g, 2, &[-1, 1, 0])], vec![zp(&g, 2, &[3, 0, 0])]];
        let gens = [zp(&g, 2, &[-1, 1, 0]), zp(&g, 2, &[3, 0, 0])];
        let mut span: HashSet<Vec<u64>> = HashSet::new();
        let translates: Vec<ZpGroupRingElem> = gens.iter().flat_map(|x| (0..3).map(|h| x.translate(h))).collect();
        let mut frontier = vec![zp(&g, 2, &[0, 0, 0])];
        span.insert(frontier[0].coeffs().to_vec());
        while let Some(v) = frontier.pop() {
            for t in &translates {
                let w = v.add(t);
                if span.insert(w.coeffs().to_vec()) {
                    frontier.push(w);
                }
            }
        }
        for v in [[1i64, 2, 0], [3, 0, 0], [2, 2, 2], [1, 1, 1], [0, 3, 6], [4, 4, 1]] {
            let x = zp(&g, 2, &v);
            assert_eq!(fitting_membership(&x, &pres, 0).unwrap(), span.contains(x.coeffs()), "{v:?}");
        }
    }

    fn arb_elem() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-20i64..20, 3)
    }

    proptest! {
        #[test]
        fn unit_flag_is_multiplicative(a in arb_elem(), b in arb_elem()) {
            let g = z3();
            let to_q = |v: &[i64]| GroupRingElem::from_coeffs(g.clone(), v.iter().map(|&c| rat(c, 1)).collect());
            let (x, y) = (to_q(&a), to_q(&b));
            let ux = padic_integrality_and_unit(&x, 3).unwrap().unit;
            let uy = padic_integrality_and_unit(&y, 3).unwrap().unit;
            prop_assert_eq!(padic_integrality_and_unit(&x.mul(&y), 3).unwrap().unit, ux && uy);
        }

        #[test]
        fn augmentation_filtration_is_decreasing(a in arb_elem(), n in 1u32..4) {
            let x = zp(&z3(), 2, &a);
            if aug_ideal_membership(&x, n + 1) {
                prop_assert!(aug_ideal_membership(&x, n));
            }
        }

        #[test]
        fn fitting_ideals_increase(rel in proptest::collection::vec(arb_elem(), 4), x in arb_elem()) {
            let g = z3();
            let pres = vec![vec![zp(&g, 2, &rel[0]), zp(&g, 2, &rel[1])], vec![zp(&g, 2, &rel[2]), zp(&g, 2, &rel[3])]];
            let x = zp(&g, 2, &x);
            if fitting_membership(&x, &pres, 0).unwrap() {
                prop_assert!(fitting_membership(&x, &pres, 1).unwrap());
            }
        }
    }
}
