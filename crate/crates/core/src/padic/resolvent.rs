//! Logarithmic resolvents of semi-local points and the integrality prediction.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::formal::{formal_group_log, FormalLogSeries};
use super::num::PadicNum;
use super::unram::{fixed_by, fp, UnramExt, UnramExtElem};
use super::PadicError;
use crate::arith::nt::{factor, lcm, multiplicative_order, prime_divisors};
use crate::arith::{CycloElem, Rational};
use crate::characters::gauss_sum;
use crate::elliptic::CurveQ;
use crate::grouprings::{GroupChar, ZpGroupRingElem};
use crate::modsym::ModularSymbolFunctional;
use crate::theta::{character_component, theta_element, FieldSpec};

/// Smallest relative precision at which prediction verdicts are reported.
pub const DEFAULT_PRECISION_FLOOR: u32 = 5;

/// A fixed embedding `Q(zeta_m) -> Q_{p^f}`: the Hensel lift of a chosen
/// residue of exact order `m`.
#[derive(Clone, Debug)]
pub struct CyclotomicEmbedding {
    m: u64,
    zeta: UnramExtElem,
    /// Residue coordinates of the chosen root, recorded in reports.
    choice: Vec<u64>,
}

impl CyclotomicEmbedding {
    /// Pins a residue of exact order `m`. Index `skip` selects among the
    /// `phi(m)/f` Frobenius orbits of such residues, in order of first appearance.
    pub fn new(ctx: &Arc<UnramExt>, m: u64, skip: usize) -> Result<Self, PadicError> {
        let p = ctx.prime();
        if m.is_multiple_of(p) {
            return Err(PadicError::RamifiedCase { p, m });
        }
        let f = multiplicative_order(p as i64, m).expect("p is prime to m") as usize;
        if !ctx.degree().is_multiple_of(f) {
            return Err(PadicError::DegreeTooSmall { needed: f, available: ctx.degree() });
        }
        let q = ctx.residue_size();
        let n = q - 1;
        let modulus = ctx.modulus();
        let primes: Vec<u64> = factor(m).into_iter().map(|(l, _)| l).collect();
        let digits = |mut k: u128| -> Vec<u64> {
            (0..ctx.degree())
                .map(|_| {
                    let d = (k % p as u128) as u64;
                    k /= p as u128;
                    d
                })
                .collect()
        };
        let mut roots = Vec::new();
        for k in 1..q {
            let y = fp::trim(fp::pow_mod(&digits(k), n / m as u128, modulus, p));
            let exact = primes.iter().all(|&l| fp::pow_mod(&y, (m / l) as u128, modulus, p) != vec![1]);
            // one root per Frobenius orbit: y and y^{p^j} give conjugate embeddings
            let conjugate =
                |r: &Vec<u64>| (0..f).any(|j| fp::trim(fp::pow_mod(r, (p as u128).pow(j as u32), modulus, p)) == y);
            if exact && !roots.iter().any(conjugate) {
                roots.push(y);
                if roots.len() > skip {
                    break;
                }
            }
        }
        let choice = roots.get(skip).cloned().ok_or(PadicError::EmbeddingUnavailable { m, skip })?;
        let mut zeta = UnramExtElem::from_coords(ctx, &choice, ctx.cap());
        if m > 1 {
            let mm = UnramExtElem::from_u64(ctx, m);
            let one = UnramExtElem::one(ctx);
            for _ in 0..(32 - ctx.cap().leading_zeros() + 2) {
                let value = zeta.pow(m).sub(&one);
                let deriv = mm.mul(&zeta.pow(m - 1));
                zeta = zeta.sub(&value.div(&deriv)?);
            }
        } else {
            zeta = UnramExtElem::one(ctx);
        }
        let mut choice = choice;
        choice.resize(ctx.degree(), 0);
        Ok(Self { m, zeta, choice })
    }

    pub fn level(&self) -> u64 {
        self.m
    }

    pub fn zeta(&self) -> &UnramExtElem {
        &self.zeta
    }

    pub fn choice(&self) -> &[u64] {
        &self.choice
    }
}

/// Image of a cyclotomic number whose level divides the embedding's level.
pub fn embed_cyclotomic(z: &CycloElem, emb: &CyclotomicEmbedding) -> Result<UnramExtElem, PadicError> {
    if !emb.m.is_multiple_of(z.level()) {
        return Err(PadicError::LevelMismatch { level: z.level(), embedding: emb.m });
    }
    let ctx = emb.zeta.ctx();
    let step = emb.zeta.pow(emb.m / z.level());
    let mut acc = UnramExtElem::zero_exact(ctx);
    let mut power = UnramExtElem::one(ctx);
    for (i, c) in z.coeffs().iter().enumerate() {
        if i > 0 {
            power = power.mul(&step);
        }
        if !c.is_zero() {
            acc = acc.add(&power.scale_rational(c));
        }
    }
    Ok(acc)
}

/// Decomposition data of `p` in `field`: Frobenius, its order, and one group
/// element per place above `p`.
fn places_above(field: &FieldSpec, p: u64) -> Result<(usize, usize, Vec<usize>), PadicError> {
    if field.conductor().is_multiple_of(p) {
        return Err(PadicError::RamifiedPlace(p));
    }
    let group = field.group();
    let frob = field.frobenius(p);
    let f = group.element_order(frob) as usize;
    let mut seen = vec![false; group.order()];
    let mut reps = Vec::new();
    for g in 0..group.order() {
        if seen[g] {
            continue;
        }
        reps.push(g);
        let mut h = g;
        for _ in 0..f {
            seen[h] = true;
            h = group.mul(frob, h);
        }
    }
    Ok((frob, f, reps))
}

/// A point of the formal group over `F (x) Q_p`, stored through its images
/// `iota(g x)` under the embeddings `iota o g` for every `g` in `G`.
#[derive(Clone, Debug)]
pub struct SemiLocalPoint {
    coords: Vec<UnramExtElem>,
    seed: Option<u64>,
}

impl SemiLocalPoint {
    /// Builds the point from one parameter per place above `p`, in the order
    /// of the smallest group element labelling each place.
    pub fn from_local_parameters(field: &FieldSpec, p: u64, params: &[UnramExtElem]) -> Result<Self, PadicError> {
        let (frob, f, reps) = places_above(field, p)?;
        if params.len() != reps.len() {
            return Err(PadicError::WrongPlaceCount { expected: reps.len(), given: params.len() });
        }
        let group = field.group();
        let ctx = params
            .first()
            .map(|x| x.ctx().clone())
            .ok_or(PadicError::WrongPlaceCount { expected: reps.len(), given: 0 })?;
        if ctx.degree() % f != 0 {
            return Err(PadicError::DegreeTooSmall { needed: f, available: ctx.degree() });
        }
        let mut coords = vec![UnramExtElem::zero(&ctx, 0); group.order()];
        for (&g, t) in reps.iter().zip(params) {
            if let Some(v) = t.valuation() {
                if v < 1 {
                    return Err(PadicError::NotInFormalGroup(v));
                }
            }
            if !fixed_by(t, f) {
                return Err(PadicError::NotInLocalField);
            }
            let (mut h, mut value) = (g, t.clone());
            for _ in 0..f {
                coords[h] = value.clone();
                h = group.mul(frob, h);
                value = value.frobenius();
            }
        }
        Ok(Self { coords, seed: None })
    }

    /// Parameters of valuation exactly one, drawn from a seeded generator.
    pub fn random(field: &FieldSpec, p: u64, ctx: &Arc<UnramExt>, seed: u64) -> Result<Self, PadicError> {
        let (_, f, reps) = places_above(field, p)?;
        if !ctx.degree().is_multiple_of(f) {
            return Err(PadicError::DegreeTooSmall { needed: f, available: ctx.degree() });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bound = (p as u128).pow(ctx.cap()) as u64;
        let pe = UnramExtElem::from_u64(ctx, p);
        let params = reps
            .iter()
            .map(|_| loop {
                let coords: Vec<u64> = (0..ctx.degree()).map(|_| rng.gen_range(0..bound)).collect();
                let y = UnramExtElem::from_coords(ctx, &coords, ctx.cap());
                // trace down to Q_{p^f}
                let trace = (0..ctx.degree() / f)
                    .fold(UnramExtElem::zero_exact(ctx), |acc, j| acc.add(&y.frobenius_pow(f * j)));
                if trace.valuation() == Some(0) {
                    break pe.mul(&trace);
                }
            })
            .collect::<Vec<_>>();
        let mut point = Self::from_local_parameters(field, p, &params)?;
        point.seed = Some(seed);
        Ok(point)
    }

    /// `iota(g x)` for each group element `g`.
    pub fn coords(&self) -> &[UnramExtElem] {
        &self.coords
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// The point `h x`.
    pub fn act(&self, field: &FieldSpec, h: usize) -> Self {
        let group = field.group();
        let coords = (0..group.order()).map(|g| self.coords[group.mul(g, h)].clone()).collect();
        Self { coords, seed: None }
    }

    pub fn add(&self, other: &Self, fg: &FormalLogSeries) -> Result<Self, PadicError> {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| fg.add(a, b)).collect::<Result<_, _>>()?;
        Ok(Self { coords, seed: None })
    }

    pub fn multiply(&self, n: i64, fg: &FormalLogSeries) -> Result<Self, PadicError> {
        let coords = self.coords.iter().map(|a| fg.multiply(n, a)).collect::<Result<_, _>>()?;
        Ok(Self { coords, seed: None })
    }
}

/// `LR_psi(x) = sum_g iota(g^{-1} log x) psi(g)`.
pub fn log_resolvent(
    field: &FieldSpec,
    fg: &FormalLogSeries,
    x: &SemiLocalPoint,
    psi: &GroupChar,
    emb: &CyclotomicEmbedding,
) -> Result<UnramExtElem, PadicError> {
    let logs = x.coords.iter().map(|t| fg.log(t)).collect::<Result<Vec<_>, _>>()?;
    resolvent_of_logs(field, &logs, psi, emb)
}

fn resolvent_of_logs(
    field: &FieldSpec,
    logs: &[UnramExtElem],
    psi: &GroupChar,
    emb: &CyclotomicEmbedding,
) -> Result<UnramExtElem, PadicError> {
    let group = field.group();
    let ctx = emb.zeta.ctx();
    let mut acc = UnramExtElem::zero_exact(ctx);
    for g in 0..group.order() {
        let value = embed_cyclotomic(&psi.value(group, g), emb)?;
        acc = acc.add(&logs[group.inv(g)].mul(&value));
    }
    Ok(acc)
}

/// The assembled element and its integrality data.
#[derive(Clone, Debug)]
pub struct FirstPrediction {
    pub prime: u64,
    /// Coefficient of each group element, in `Q_p`.
    pub coeffs: Vec<PadicNum>,
    /// Smallest absolute precision among the coefficients.
    pub precision: i64,
    pub integral: bool,
    /// For each `g`, whether `sum_psi psi(g) V_psi = 0 mod |G|`.
    pub congruences: Vec<bool>,
    /// Reduction mod `p^precision` when integral.
    pub reduced: Option<ZpGroupRingElem>,
    /// Residue coordinates pinning the embedding of roots of unity.
    pub embedding_choice: Vec<u64>,
    pub seed: Option<u64>,
}

/// Places that must lie in `S`: `p`, primes dividing the conductor, bad primes.
pub fn required_places(curve: &CurveQ, field: &FieldSpec, p: u64) -> Vec<u64> {
    let mut out = vec![p];
    out.extend(prime_divisors(field.conductor()));
    out.extend(curve.minimal_model().bad_primes());
    out.sort_unstable();
    out.dedup();
    out
}

/// `sum_psi L_S(A, psi-check, 1) LR_psi(x) / Omega^+ e_psi`, with each
/// `L_S / Omega^+` obtained exactly from the theta element at the conductor.
#[allow(clippy::too_many_arguments)]
pub fn first_prediction_sum(
    f: &ModularSymbolFunctional,
    curve: &CurveQ,
    field: &FieldSpec,
    p: u64,
    x: &SemiLocalPoint,
    places: &[u64],
    emb_skip: usize,
    floor: u32,
) -> Result<FirstPrediction, PadicError> {
    let curve = curve.minimal_model();
    if let Some(&missing) = required_places(&curve, field, p).iter().find(|l| !places.contains(l)) {
        return Err(PadicError::InvalidPlaceSet(missing));
    }
    let ctx = x.coords.first().expect("nonempty group").ctx().clone();
    if ctx.prime() != p {
        return Err(PadicError::PrimeMismatch { expected: p, found: ctx.prime() });
    }
    let c = field.conductor();
    let group = field.group();
    let level = lcm(group.exponent(), c);
    let emb = CyclotomicEmbedding::new(&ctx, level, emb_skip)?;
    let theta = theta_element(f, c)?;
    let fg = formal_group_log(&curve, ctx.cap() as usize + 12);
    let logs = x.coords.iter().map(|t| fg.log(t)).collect::<Result<Vec<_>, _>>()?;

    let mut values = Vec::new();
    let psis = group.characters();
    for psi in &psis {
        // psi corresponds to the Dirichlet character a -> psi(sigma_a)^{-1} under
        // geometric Frobenius, so L(A, psi-check) is the twist by a -> psi(sigma_a)
        let chi_psi = field.dirichlet_char(psi);
        let chi = chi_psi.conj();
        let component = character_component(&theta, &chi)?;
        if component.is_zero() {
            return Err(PadicError::CharacterValueUnavailable(psi.exponents().to_vec()));
        }
        let ratio = Rational::new(BigInt::from(2 * chi.conductor()), BigInt::from(c));
        let tau = gauss_sum(&chi, c)?.embed(level)?;
        let mut algebraic = &component.embed(level)?.scale(&ratio) * &tau.inverse()?;
        let primitive = chi_psi.primitive();
        for &ell in places.iter().filter(|&&l| !c.is_multiple_of(l)) {
            let a = Rational::from_integer(curve.ap(ell)?.into());
            let ell_q = Rational::from_integer(ell.into());
            let v = primitive.value_at_level(ell as i64, primitive.order()).embed(level)?;
            let mut factor = &CycloElem::one(level) - &v.scale(&(a / &ell_q));
            if !curve.conductor().is_multiple_of(ell) {
                factor = &factor + &(&v * &v).scale(&ell_q.recip());
            }
            algebraic = &algebraic * &factor;
        }
        let lr = resolvent_of_logs(field, &logs, psi, &emb)?;
        values.push(embed_cyclotomic(&algebraic, &emb)?.mul(&lr));
    }

    let base = PadicNum::context(p, ctx.cap())?;
    let order = Rational::from_integer(BigInt::from(group.order()));
    let mut coeffs = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let mut total = UnramExtElem::zero_exact(&ctx);
        for (psi, v) in psis.iter().zip(&values) {
            let conj = embed_cyclotomic(&psi.value(group, g).conj(), &emb)?;
            total = total.add(&v.mul(&conj));
        }
        let total = total.scale_rational(&order.recip());
        coeffs.push(PadicNum::from_extension(&base, &total).ok_or(PadicError::NotInBaseField(g))?);
    }
    let precision = coeffs.iter().map(PadicNum::absolute_precision).min().unwrap_or(0);
    if precision < floor as i64 {
        return Err(PadicError::PrecisionExhausted { available: precision, floor });
    }
    let integral = coeffs.iter().all(PadicNum::is_integral);
    let congruences = (0..group.order()).map(|g| coeffs[group.inv(g)].is_integral()).collect();
    let reduced = if integral {
        let k = precision.min(ctx.cap() as i64) as u32;
        let residues: Vec<i64> = coeffs.iter().map(|x| x.residue(k).expect("integral") as i64).collect();
        Some(ZpGroupRingElem::new(group.clone(), p, k, &residues))
    } else {
        None
    };
    Ok(FirstPrediction {
        prime: p,
        coeffs,
        precision,
        integral,
        congruences,
        reduced,
        embedding_choice: emb.choice().to_vec(),
        seed: x.seed(),
    })
}

/// Degree of the smallest unramified extension holding the local fields of
/// `field` at `p` and the values needed by the prediction.
pub fn working_degree(field: &FieldSpec, p: u64) -> Result<usize, PadicError> {
    let (_, f, _) = places_above(field, p)?;
    let level = lcm(field.group().exponent(), field.conductor());
    if level.is_multiple_of(p) {
        return Err(PadicError::RamifiedCase { p, m: level });
    }
    let g = multiplicative_order(p as i64, level).expect("unit") as usize;
    Ok(f.lcm(&g))
}
