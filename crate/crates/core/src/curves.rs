//! Rational normal curves.
//!
//! A curve of degree `r` is `t ↦ M·ν_r(t)` with `ν_r(a:b) = (aʳ, aʳ⁻¹b, …, bʳ)`
//! and `M` invertible. Through `r+3` points in linearly general position
//! there is exactly one; it is found here by the Gale route: the transform of
//! the points is `r+3` points of `ℙ¹`, which are the curve parameters.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::gale::gale_transform;
use crate::matrix::ExactMatrix;
use crate::pointconfig::{proportional, Equivalence, PointConfiguration};

/// Distinct points `(a : b)` of `ℙ¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterList {
    field: FieldSpec,
    params: Vec<(Scalar, Scalar)>,
}

impl ParameterList {
    pub fn new(field: FieldSpec, params: Vec<(Scalar, Scalar)>) -> Result<Self> {
        let rows = params.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect();
        // reuses zero/duplicate validation
        PointConfiguration::new(field, 1, rows)?;
        Ok(ParameterList { field, params })
    }

    /// Affine parameters `t ↦ (1 : t)`.
    pub fn affine(field: FieldSpec, values: &[Scalar]) -> Result<Self> {
        Self::new(field, values.iter().map(|t| (field.one(), t.clone())).collect())
    }

    pub fn from_configuration(cfg: &PointConfiguration) -> Result<Self> {
        if cfg.r() != 1 {
            return Err(Error::DimensionMismatch("parameters must live in P^1".into()));
        }
        Ok(ParameterList {
            field: cfg.field(),
            params: (0..cfg.gamma())
                .map(|i| (cfg.point(i)[0].clone(), cfg.point(i)[1].clone()))
                .collect(),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn params(&self) -> &[(Scalar, Scalar)] {
        &self.params
    }
}

/// `(aᵉ, aᵉ⁻¹b, …, bᵉ)`.
pub fn moment_vector(a: &Scalar, b: &Scalar, e: usize) -> Vec<Scalar> {
    (0..=e).map(|k| &a.pow((e - k) as u32) * &b.pow(k as u32)).collect()
}

/// The parameters on the degree-`e` moment curve in `ℙᵉ`.
pub fn rnc_embed(params: &ParameterList, e: usize) -> Result<PointConfiguration> {
    if e < 1 {
        return Err(Error::InvalidArgument("embedding degree must be at least 1".into()));
    }
    let rows = params.params.iter().map(|(a, b)| moment_vector(a, b, e)).collect();
    PointConfiguration::new(params.field, e, rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RncParametrization {
    r: usize,
    matrix: ExactMatrix,
    inverse: ExactMatrix,
}

impl RncParametrization {
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.rows() < 2 {
            return Err(Error::DimensionMismatch("curve matrix must be square of size at least 2".into()));
        }
        let inverse = matrix
            .inverse()
            .ok_or_else(|| Error::InvalidArgument("curve matrix is singular".into()))?;
        Ok(RncParametrization {
            r: matrix.rows() - 1,
            matrix,
            inverse,
        })
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// The curve point with parameter `(a : b)`.
    pub fn point(&self, a: &Scalar, b: &Scalar) -> Vec<Scalar> {
        self.matrix.apply(&moment_vector(a, b, self.r))
    }

    /// Membership through the 2×2 minors of the catalecticant of `M⁻¹p`.
    pub fn contains(&self, p: &[Scalar]) -> bool {
        assert_eq!(p.len(), self.r + 1, "point length");
        let v = self.inverse.apply(p);
        if v.iter().all(Scalar::is_zero) {
            return false;
        }
        is_moment_vector(&v)
    }
}

/// All 2×2 minors of `[[v0 … v(r−1)], [v1 … vr]]` vanish.
pub fn is_moment_vector(v: &[Scalar]) -> bool {
    let r = v.len() - 1;
    for i in 0..r {
        for j in i + 1..r {
            if &v[i] * &v[j + 1] != &v[i + 1] * &v[j] {
                return false;
            }
        }
    }
    true
}

pub fn rnc_contains(curve: &RncParametrization, p: &[Scalar]) -> bool {
    curve.contains(p)
}

/// The unique rational normal curve through `r+3` points in linearly
/// general position, labeled so that point `i` has the `i`-th Gale parameter.
pub fn fit_rational_normal_curve(cfg: &PointConfiguration) -> Result<RncParametrization> {
    Ok(fit_with_parameters(cfg)?.0)
}

/// Like [`fit_rational_normal_curve`], also returning the parameters of the points.
pub fn fit_with_parameters(cfg: &PointConfiguration) -> Result<(RncParametrization, ParameterList)> {
    let r = cfg.r();
    if cfg.gamma() != r + 3 {
        return Err(Error::WrongDegree {
            expected: r + 3,
            found: cfg.gamma(),
        });
    }
    if !cfg.is_linearly_general_position() {
        return Err(Error::NotLgp);
    }
    let params = ParameterList::from_configuration(&gale_transform(cfg)?.transform)?;
    let moment = rnc_embed(&params, r)?;
    // M sends the standard frame of the moment points to that of the input,
    // so M·ν_r(t_i) ∝ p_i for the first r+2 points
    let frame: Vec<usize> = (0..r + 2).collect();
    let a_points = cfg.frame_transform(&frame).ok_or(Error::NotLgp)?;
    let a_moment = moment
        .frame_transform(&frame)
        .ok_or_else(|| Error::VerificationFailed("moment points are not a frame".into()))?;
    let m = a_points.mul(&a_moment.inverse().expect("frame matrix is invertible"))?;
    let curve = RncParametrization::new(m)?;
    for i in 0..cfg.gamma() {
        let (a, b) = &params.params[i];
        if !proportional(&curve.point(a, b), cfg.point(i)) || !curve.contains(cfg.point(i)) {
            return Err(Error::VerificationFailed(format!(
                "point {i} is not on the fitted curve"
            )));
        }
    }
    Ok((curve, params))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoppaReport {
    pub n: usize,
    pub h: usize,
    pub dual_degree: usize,
    pub equivalence: Equivalence,
    pub transform_canonical: Option<PointConfiguration>,
    pub dual_canonical: Option<PointConfiguration>,
}

impl GoppaReport {
    pub fn passed(&self) -> bool {
        self.equivalence == Equivalence::Equivalent
    }
}

/// Compares the Gale transform of the degree-`h` embedding of `n` parameters
/// with their degree-`(n−h−2)` embedding.
pub fn goppa_dual_check(params: &ParameterList, h: usize) -> Result<GoppaReport> {
    let n = params.len();
    let max = n.saturating_sub(3);
    if h < 1 || h > max {
        return Err(Error::DegreeOutOfRange { h, max });
    }
    let dual_degree = n - h - 2;
    let transform = gale_transform(&rnc_embed(params, h)?)?.transform;
    let dual = rnc_embed(params, dual_degree)?;
    Ok(GoppaReport {
        n,
        h,
        dual_degree,
        equivalence: transform.is_equivalent_labeled(&dual),
        transform_canonical: transform.canonical_form(),
        dual_canonical: dual.canonical_form(),
    })
}
