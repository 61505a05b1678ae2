//! Linear codes over prime fields and generalized Reed–Solomon duality.
//!
//! The columns of a generator matrix are a point configuration, and the dual
//! code is its Gale transform. For GRS codes the dual is again GRS on the
//! same evaluation points, with complementary dimension and new multipliers.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;
use crate::pointconfig::PointConfiguration;

/// Upper bound on the number of messages enumerated by [`min_distance`].
pub const MIN_DISTANCE_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: ExactMatrix,
}

impl LinearCode {
    /// A `[n, k]` code from a full-rank `k × n` generator over `GF(p)`.
    pub fn new(generator: ExactMatrix) -> Result<Self> {
        if !generator.field().is_prime_field() {
            return Err(Error::NotPrimeField);
        }
        let (k, n) = (generator.rows(), generator.cols());
        if k < 1 || k >= n {
            return Err(Error::InvalidArgument(format!("need 1 <= k < n, got k={k}, n={n}")));
        }
        let rank = generator.rank();
        if rank != k {
            return Err(Error::RankDeficient { rank, expected: k });
        }
        Ok(LinearCode { generator })
    }

    pub fn field(&self) -> FieldSpec {
        self.generator.field()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &ExactMatrix {
        &self.generator
    }

    /// Generator columns as points of `ℙ^(k−1)`; fails if two columns are
    /// proportional or one vanishes.
    pub fn column_configuration(&self) -> Result<PointConfiguration> {
        PointConfiguration::from_matrix(self.generator.transpose())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsSpec {
    field: FieldSpec,
    points: Vec<(Scalar, Scalar)>,
    multipliers: Vec<Scalar>,
    k: usize,
}

impl GrsSpec {
    pub fn new(field: FieldSpec, points: Vec<(Scalar, Scalar)>, multipliers: Vec<Scalar>, k: usize) -> Result<Self> {
        let p = field.modulus().ok_or(Error::NotPrimeField)?;
        let n = points.len();
        if n as u64 > p + 1 {
            return Err(Error::TooManyPoints {
                n,
                limit: (p + 1) as usize,
            });
        }
        if multipliers.len() != n {
            return Err(Error::DimensionMismatch("one multiplier per evaluation point".into()));
        }
        if multipliers.iter().any(Scalar::is_zero) {
            return Err(Error::InvalidArgument("multipliers must be nonzero".into()));
        }
        if k < 1 || k >= n {
            return Err(Error::InvalidArgument(format!("need 1 <= k < n, got k={k}, n={n}")));
        }
        let rows = points.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect();
        PointConfiguration::new(field, 1, rows)?;
        Ok(GrsSpec {
            field,
            points,
            multipliers,
            k,
        })
    }

    /// Points `0, 1, …, n−1` of the affine line, then `∞ = (0:1)` when
    /// `n = p + 1`, with unit multipliers.
    pub fn standard(field: FieldSpec, n: usize, k: usize) -> Result<Self> {
        let p = field.modulus().ok_or(Error::NotPrimeField)?;
        if n as u64 > p + 1 {
            return Err(Error::TooManyPoints {
                n,
                limit: (p + 1) as usize,
            });
        }
        let points = (0..n)
            .map(|i| {
                if i as u64 == p {
                    (field.zero(), field.one())
                } else {
                    (field.one(), field.from_i64(i as i64))
                }
            })
            .collect();
        Self::new(field, points, vec![field.one(); n], k)
    }

    pub fn points(&self) -> &[(Scalar, Scalar)] {
        &self.points
    }

    pub fn multipliers(&self) -> &[Scalar] {
        &self.multipliers
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with(&self, multipliers: Vec<Scalar>, k: usize) -> Result<Self> {
        Self::new(self.field, self.points.clone(), multipliers, k)
    }
}

/// Row `i`, column `j`: `m_j · a_j^(k−1−i) b_j^i`.
pub fn grs_code(spec: &GrsSpec) -> Result<LinearCode> {
    let n = spec.points.len();
    let mut g = ExactMatrix::zeros(spec.field, spec.k, n);
    for (j, ((a, b), m)) in spec.points.iter().zip(&spec.multipliers).enumerate() {
        let column = crate::curves::moment_vector(a, b, spec.k - 1);
        for (i, v) in column.into_iter().enumerate() {
            g.set(i, j, m * &v);
        }
    }
    LinearCode::new(g)
}

pub fn dual_code(c: &LinearCode) -> Result<LinearCode> {
    LinearCode::new(c.generator.kernel_basis().transpose())
}

/// Equality of row spaces.
pub fn same_code(a: &LinearCode, b: &LinearCode) -> Result<bool> {
    if a.field() != b.field() || a.length() != b.length() {
        return Err(Error::ShapeMismatch);
    }
    if a.dimension() != b.dimension() {
        return Ok(false);
    }
    Ok(a.generator.rref().reduced == b.generator.rref().reduced)
}

/// Multipliers `m'` making the dual of `GRS(points, m, k)` equal to
/// `GRS(points, m', n−k)`.
///
/// Orthogonality of every pair of rows reduces to `Σ_l w_l μ(P_l) = 0` for
/// every monomial `μ` of degree `n−2`, where `w_l = m_l m'_l`; the solution
/// space is a line, and `m'_l = w_l / m_l`.
pub fn grs_dual_multipliers(spec: &GrsSpec) -> Result<Vec<Scalar>> {
    let n = spec.points.len();
    let mut rows = Vec::with_capacity(n);
    for (a, b) in &spec.points {
        rows.push(crate::curves::moment_vector(a, b, n - 2));
    }
    let system = ExactMatrix::from_rows(spec.field, rows)?.transpose();
    let kernel = system.kernel_basis();
    if kernel.cols() != 1 {
        return Err(Error::NoSolution);
    }
    let w = kernel.column(0);
    if w.iter().any(Scalar::is_zero) {
        return Err(Error::NoSolution);
    }
    Ok(w.iter().zip(&spec.multipliers).map(|(w, m)| w / m).collect())
}

/// `1 / (m_j ∏_{i≠j} (α_j − α_i))` for affine points `(1 : α)`; `None` if
/// some point is at infinity.
pub fn grs_dual_multipliers_closed_form(spec: &GrsSpec) -> Option<Vec<Scalar>> {
    if spec.points.iter().any(|(a, _)| !a.is_one()) {
        return None;
    }
    let alphas: Vec<&Scalar> = spec.points.iter().map(|(_, b)| b).collect();
    Some(
        alphas
            .iter()
            .enumerate()
            .map(|(j, aj)| {
                let prod = alphas
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != j)
                    .fold(spec.field.one(), |acc, (_, ai)| &acc * &(*aj - *ai));
                (&prod * &spec.multipliers[j]).inv().expect("distinct points")
            })
            .collect(),
    )
}

/// Minimum Hamming weight by enumerating every nonzero message.
pub fn min_distance(c: &LinearCode) -> Result<usize> {
    let p = c.field().modulus().ok_or(Error::NotPrimeField)?;
    let k = c.dimension();
    let size = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > MIN_DISTANCE_LIMIT {
        return Err(Error::TooLarge {
            size,
            limit: MIN_DISTANCE_LIMIT,
        });
    }
    let n = c.length();
    let rows: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            c.generator
                .row(i)
                .iter()
                .map(|s| s.residue().expect("prime field"))
                .collect()
        })
        .collect();
    // odometer over messages; adding row i p times returns to the start, so
    // the codeword can be updated incrementally on every digit change
    let mut digits = vec![0u64; k];
    let mut word = vec![0u64; n];
    let mut best = n;
    loop {
        let mut i = 0;
        loop {
            if i == k {
                return Ok(best);
            }
            for (w, g) in word.iter_mut().zip(&rows[i]) {
                *w = (*w + g) % p;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        let weight = word.iter().filter(|&&x| x != 0).count();
        if weight > 0 {
            best = best.min(weight);
        }
    }
}
