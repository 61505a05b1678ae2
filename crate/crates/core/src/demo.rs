//! Worked scenarios that tie several modules together.
//!
//! * Six points on a conic are self-associated; six general points are not.
//! * Seven general points of `ℙ³` lie on a net of quadrics whose base locus
//!   has an eighth point, and projecting from it gives their Gale transform.
//! * Eleven general points of `ℙ⁶` complete to a self-associated set, and the
//!   three added points always span the same plane.

use rand::seq::index;
use rand::Rng;

use crate::curves::{fit_rational_normal_curve, moment_vector};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::gale::gale_transform;
use crate::generic::Verdict;
use crate::matrix::ExactMatrix;
use crate::pointconfig::{monomial_exponents, monomial_matrix, proportional, Equivalence, PointConfiguration};
use crate::sample;
use crate::scan::scan_projective;
use crate::selfassoc::{complete_to_self_associated, is_arithmetically_gorenstein, self_association_witness, Completion, SelfAssociation};

/// Smallest field accepted by the seven-point demo.
pub const SEVEN_P3_MIN_PRIME: u64 = 101;

/// Distinct parameter values: from `[-9, 9]` over ℚ, from `GF(p)` otherwise.
fn distinct_parameters<R: Rng>(field: FieldSpec, n: usize, rng: &mut R) -> Vec<Scalar> {
    match field.modulus() {
        Some(p) => index::sample(rng, p as usize, n)
            .into_iter()
            .map(|v| field.residue(v as u64))
            .collect(),
        None => index::sample(rng, 19, n)
            .into_iter()
            .map(|v| field.from_i64(v as i64 - 9))
            .collect(),
    }
}

/// `n` points on a random curve `t ↦ T·ν_e(1, t)`.
pub fn points_on_random_rnc<R: Rng>(field: FieldSpec, e: usize, n: usize, rng: &mut R) -> PointConfiguration {
    let t = sample::random_invertible(field, e + 1, rng);
    let rows = distinct_parameters(field, n, rng)
        .iter()
        .map(|x| t.apply(&moment_vector(&field.one(), x, e)))
        .collect();
    PointConfiguration::new(field, e, rows).expect("distinct parameters give distinct points")
}

/// Six points on a random smooth conic.
pub fn conic_sextuple<R: Rng>(field: FieldSpec, rng: &mut R) -> PointConfiguration {
    points_on_random_rnc(field, 2, 6, rng)
}

/// Six points in linearly general position on no conic.
pub fn generic_sextuple<R: Rng>(field: FieldSpec, rng: &mut R) -> PointConfiguration {
    loop {
        let cfg = sample::random_configuration(field, 2, 6, rng);
        if cfg.is_linearly_general_position() && cfg.quadric_defect() == 0 {
            return cfg;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PascalReport {
    pub conic_points: PointConfiguration,
    pub witness: SelfAssociation,
    pub quadric_defect: usize,
    pub gorenstein: Verdict,
    pub generic_points: PointConfiguration,
    pub generic: SelfAssociation,
}

impl PascalReport {
    pub fn passed(&self) -> bool {
        matches!(self.witness, SelfAssociation::Witness(_))
            && self.quadric_defect == 1
            && self.gorenstein == Verdict::Holds
            && self.generic == SelfAssociation::NotSelfAssociated
    }
}

pub fn pascal(field: FieldSpec, seed: u64) -> Result<PascalReport> {
    let mut rng = sample::rng(seed);
    let conic_points = conic_sextuple(field, &mut rng);
    let generic_points = generic_sextuple(field, &mut rng);
    Ok(PascalReport {
        witness: self_association_witness(&conic_points)?,
        quadric_defect: conic_points.quadric_defect(),
        gorenstein: is_arithmetically_gorenstein(&conic_points)?,
        generic: self_association_witness(&generic_points)?,
        conic_points,
        generic_points,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SevenP3Outcome {
    /// The net has exactly eight rational base points.
    Projection {
        eighth: Vec<Scalar>,
        projected: PointConfiguration,
        gale: PointConfiguration,
        equivalence: Equivalence,
    },
    /// The quadrics share a curve; `on_curve` records that every common zero
    /// lies on the twisted cubic through the first six points.
    TwistedCubic { common_zeros: usize, on_curve: bool },
    /// The eighth base point coincides with one of the seven.
    Unusable { common_zeros: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SevenP3Report {
    pub points: PointConfiguration,
    /// Coefficients of the three quadrics, one per row, in lexicographic
    /// monomial order.
    pub quadrics: ExactMatrix,
    pub attempts: usize,
    pub outcome: SevenP3Outcome,
}

impl SevenP3Report {
    pub fn passed(&self) -> bool {
        matches!(
            self.outcome,
            SevenP3Outcome::Projection {
                equivalence: Equivalence::Equivalent,
                ..
            }
        )
    }
}

/// Runs the eighth-point construction on seven given points of `ℙ³(F_p)`.
pub fn seven_p3_from(cfg: &PointConfiguration) -> Result<SevenP3Report> {
    let field = cfg.field();
    let p = field.modulus().ok_or(Error::NotPrimeField)?;
    if p < SEVEN_P3_MIN_PRIME {
        return Err(Error::FieldTooSmall(format!("need p >= {SEVEN_P3_MIN_PRIME}, got {p}")));
    }
    if cfg.r() != 3 || cfg.gamma() != 7 {
        return Err(Error::DimensionMismatch("need seven points of P^3".into()));
    }
    let quadrics = monomial_matrix(cfg.coords(), 2).kernel_basis().transpose();
    if quadrics.rows() != 3 {
        return Err(Error::VerificationFailed(format!(
            "expected a net of quadrics, found dimension {}",
            quadrics.rows()
        )));
    }
    let exps = monomial_exponents(4, 2);
    let coeffs: Vec<Vec<u64>> = quadrics
        .row_vecs()
        .iter()
        .map(|q| q.iter().map(|c| c.residue().expect("prime field")).collect())
        .collect();
    let zeros: Vec<Vec<u64>> = scan_projective(3, p, |x| {
        let monos: Vec<u64> = exps
            .iter()
            .map(|e| e.iter().zip(x).fold(1u64, |m, (&k, &xi)| m * xi.pow(k as u32) % p))
            .collect();
        coeffs
            .iter()
            .all(|q| q.iter().zip(&monos).fold(0u64, |acc, (c, m)| (acc + c * m) % p) == 0)
            .then_some(())
    })
    .into_iter()
    .map(|(x, _)| x)
    .collect();
    let zeros: Vec<Vec<Scalar>> = zeros
        .into_iter()
        .map(|x| x.into_iter().map(|c| field.residue(c)).collect())
        .collect();
    for i in 0..7 {
        if !zeros.iter().any(|z| proportional(z, cfg.point(i))) {
            return Err(Error::VerificationFailed(format!("point {i} is not a common zero")));
        }
    }
    let outcome = match zeros.len() {
        8 => {
            let eighth = zeros
                .into_iter()
                .find(|z| (0..7).all(|i| !proportional(z, cfg.point(i))))
                .expect("one zero beyond the seven");
            // rows of the projection span the annihilator of the eighth point
            let q = ExactMatrix::from_rows(field, vec![eighth.clone()])?;
            let projection = q.kernel_basis().transpose();
            let projected = PointConfiguration::from_matrix(cfg.coords().mul(&projection.transpose())?)?;
            let gale = gale_transform(cfg)?.transform;
            SevenP3Outcome::Projection {
                equivalence: projected.is_equivalent_labeled(&gale),
                eighth,
                projected,
                gale,
            }
        }
        n if n > 8 => {
            let six = cfg.select(&crate::pointconfig::SubsetSelector::new((0..6).collect(), 7)?)?;
            let on_curve = match fit_rational_normal_curve(&six) {
                Ok(curve) => zeros.iter().all(|z| curve.contains(z)),
                Err(_) => false,
            };
            SevenP3Outcome::TwistedCubic {
                common_zeros: n,
                on_curve,
            }
        }
        n => SevenP3Outcome::Unusable { common_zeros: n },
    };
    Ok(SevenP3Report {
        points: cfg.clone(),
        quadrics,
        attempts: 1,
        outcome,
    })
}

/// Samples seven points in linearly general position until the net of
/// quadrics through them has eight distinct base points.
pub fn seven_p3(p: u64, seed: u64, retries: usize) -> Result<SevenP3Report> {
    if p < SEVEN_P3_MIN_PRIME {
        return Err(Error::FieldTooSmall(format!("need p >= {SEVEN_P3_MIN_PRIME}, got {p}")));
    }
    let field = FieldSpec::prime(p)?;
    let mut rng = sample::rng(seed);
    for attempt in 1..=retries {
        let cfg = sample::random_lgp_configuration(field, 3, 7, &mut rng, 100)?;
        let mut report = seven_p3_from(&cfg)?;
        if let SevenP3Outcome::Projection { .. } = report.outcome {
            report.attempts = attempt;
            return Ok(report);
        }
    }
    Err(Error::RetryBudgetExceeded(retries))
}

/// The degenerate branch: seven points on a twisted cubic.
pub fn seven_p3_twisted_cubic(p: u64, seed: u64) -> Result<SevenP3Report> {
    if p < SEVEN_P3_MIN_PRIME {
        return Err(Error::FieldTooSmall(format!("need p >= {SEVEN_P3_MIN_PRIME}, got {p}")));
    }
    let field = FieldSpec::prime(p)?;
    let cfg = points_on_random_rnc(field, 3, 7, &mut sample::rng(seed));
    seven_p3_from(&cfg)
}

/// Reduced row echelon basis of the span of the selected points.
pub fn span_of(cfg: &PointConfiguration, indices: &[usize]) -> ExactMatrix {
    let rref = cfg.coords().select_rows(indices).rref();
    rref.reduced.select_rows(&(0..rref.rank).collect::<Vec<_>>())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElevenP6Report {
    pub points: PointConfiguration,
    /// Completion seed and the span of the added points.
    pub planes: Vec<(u64, ExactMatrix)>,
}

impl ElevenP6Report {
    pub fn same_plane(&self) -> bool {
        !self.planes.is_empty() && self.planes.iter().all(|(_, p)| p.rows() == 3 && *p == self.planes[0].1)
    }
}

/// Completes eleven random points of `ℙ⁶` with `runs` different completion
/// seeds and records the plane of the added triple each time.
pub fn eleven_p6(field: FieldSpec, seed: u64, runs: usize) -> Result<ElevenP6Report> {
    let points = sample::random_lgp_configuration(field, 6, 11, &mut sample::rng(seed), 100)?;
    let mut planes = Vec::with_capacity(runs);
    for k in 1..=runs as u64 {
        let completion_seed = seed.wrapping_add(k);
        match complete_to_self_associated(&points, completion_seed)? {
            Completion::Completed {
                configuration, added, ..
            } => planes.push((completion_seed, span_of(&configuration, added.indices()))),
            Completion::NotCompletable => {
                return Err(Error::VerificationFailed("general points failed to complete".into()))
            }
            Completion::Indeterminate => return Err(Error::Indeterminate("completion search".into())),
        }
    }
    Ok(ElevenP6Report { points, planes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_demo() {
        assert!(pascal(FieldSpec::Rationals, 1).unwrap().passed());
        assert!(pascal(FieldSpec::prime(101).unwrap(), 2).unwrap().passed());
    }

    #[test]
    fn seven_points_project_to_their_gale_transform() {
        let report = seven_p3(101, 1, 10).unwrap();
        assert!(report.passed(), "{:?}", report.outcome);
    }

    #[test]
    fn seven_points_on_a_twisted_cubic() {
        let report = seven_p3_twisted_cubic(101, 3).unwrap();
        assert_eq!(
            report.outcome,
            SevenP3Outcome::TwistedCubic {
                common_zeros: 102,
                on_curve: true
            }
        );
    }

    #[test]
    fn small_field_rejected() {
        assert!(matches!(seven_p3(97, 1, 10), Err(Error::FieldTooSmall(_))));
    }

    #[test]
    fn eleven_points_complete_along_one_plane() {
        let report = eleven_p6(FieldSpec::Rationals, 7, 3).unwrap();
        assert!(report.same_plane(), "{:?}", report.planes);
    }
}
