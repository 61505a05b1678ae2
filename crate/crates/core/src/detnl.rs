//! Trilinear forms and the Gale duality of their determinantal loci.
//!
//! A tensor `φ ∈ F ⊗ V ⊗ W` with `dim F = r+s`, `dim V = r+1`,
//! `dim W = s+1` gives two matrices of linear forms: `φ_V` on `ℙ(V) = ℙʳ`
//! of size `(s+1) × (r+s)` and `φ_W` on `ℙ(W) = ℙˢ` of size `(r+1) × (r+s)`.
//! Where each drops rank we get point sets `Γ_V` and `Γ_W` of degree
//! `C(r+s, s)`, matched through kernel lines, and `ν_{s−1}(Γ_V)` is the Gale
//! transform of `ν_{r−1}(Γ_W)`.
//!
//! Loci are found by scanning every point of projective space over `GF(p)`.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::gale::{gale_transform, is_gale_pair};
use crate::generic::Verdict;
use crate::matrix::ExactMatrix;
use crate::pointconfig::{binomial, monomial_exponents, monomial_matrix, proportional, Equivalence, PointConfiguration};
use crate::sample;
use crate::scan::{rank_mod_p, scan_projective, scan_size, SCAN_LIMIT};

/// Default number of fresh tensors tried before giving up.
pub const DEFAULT_RETRIES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    V,
    W,
}

/// Entries `φ[m][i][j]` with `m` indexing `F`, `i` indexing `V` and `j`
/// indexing `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrilinearForm {
    field: FieldSpec,
    r: usize,
    s: usize,
    entries: Vec<Scalar>,
}

impl TrilinearForm {
    pub fn new(field: FieldSpec, r: usize, s: usize, entries: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        if !field.is_prime_field() {
            return Err(Error::NotPrimeField);
        }
        if r < 1 || s < 1 {
            return Err(Error::InvalidArgument(format!("need r, s >= 1, got r={r}, s={s}")));
        }
        if entries.len() != r + s {
            return Err(Error::DimensionMismatch(format!(
                "expected {} slices, found {}",
                r + s,
                entries.len()
            )));
        }
        let mut flat = Vec::with_capacity((r + s) * (r + 1) * (s + 1));
        for (m, slice) in entries.into_iter().enumerate() {
            if slice.len() != r + 1 || slice.iter().any(|row| row.len() != s + 1) {
                return Err(Error::DimensionMismatch(format!(
                    "slice {m} must be {}x{}",
                    r + 1,
                    s + 1
                )));
            }
            for x in slice.into_iter().flatten() {
                if x.field() != field {
                    return Err(Error::FieldMismatch);
                }
                flat.push(x);
            }
        }
        Ok(TrilinearForm {
            field,
            r,
            s,
            entries: flat,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `(dim F, dim V, dim W)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.r + self.s, self.r + 1, self.s + 1)
    }

    pub fn get(&self, m: usize, i: usize, j: usize) -> &Scalar {
        &self.entries[(m * (self.r + 1) + i) * (self.s + 1) + j]
    }

    /// The `m`-th slice as an `(r+1) × (s+1)` matrix.
    pub fn slice(&self, m: usize) -> ExactMatrix {
        let rows = (0..=self.r)
            .map(|i| (0..=self.s).map(|j| self.get(m, i, j).clone()).collect())
            .collect();
        ExactMatrix::from_rows(self.field, rows).expect("rectangular")
    }

    /// Exchanges the roles of `V` and `W`.
    pub fn transpose(&self) -> TrilinearForm {
        let entries = (0..self.r + self.s)
            .map(|m| {
                (0..=self.s)
                    .map(|j| (0..=self.r).map(|i| self.get(m, i, j).clone()).collect())
                    .collect()
            })
            .collect();
        TrilinearForm::new(self.field, self.s, self.r, entries).expect("same shape")
    }

    fn ambient(&self, side: Side) -> usize {
        match side {
            Side::V => self.r,
            Side::W => self.s,
        }
    }

    fn residues(&self) -> Vec<u64> {
        self.entries.iter().map(|x| x.residue().expect("prime field")).collect()
    }
}

/// `φ_V(x)`: `(s+1) × (r+s)` with entry `(j, m) = Σ_i φ[m][i][j] x_i`; or
/// `φ_W(y)`: `(r+1) × (r+s)` with entry `(i, m) = Σ_j φ[m][i][j] y_j`.
pub fn adjoint_eval(phi: &TrilinearForm, side: Side, point: &[Scalar]) -> Result<ExactMatrix> {
    let n = phi.ambient(side) + 1;
    if point.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, expected {n}",
            point.len()
        )));
    }
    let f = phi.r + phi.s;
    let (rows, other) = match side {
        Side::V => (phi.s + 1, phi.r + 1),
        Side::W => (phi.r + 1, phi.s + 1),
    };
    let mut out = ExactMatrix::zeros(phi.field, rows, f);
    for a in 0..rows {
        for m in 0..f {
            let mut acc = phi.field.zero();
            for (b, x) in point.iter().enumerate().take(other) {
                let entry = match side {
                    Side::V => phi.get(m, b, a),
                    Side::W => phi.get(m, a, b),
                };
                acc = &acc + &(entry * x);
            }
            out.set(a, m, acc);
        }
    }
    Ok(out)
}

/// Every point of `ℙʳ(F_p)` (side `V`) or `ℙˢ(F_p)` (side `W`) where the
/// adjoint drops rank, in lexicographic order of normalized coordinates.
/// A drop by two or more anywhere rejects the tensor.
pub fn determinantal_locus(phi: &TrilinearForm, side: Side) -> Result<PointConfiguration> {
    let p = phi.field.modulus().ok_or(Error::NotPrimeField)?;
    let n = phi.ambient(side);
    let size = scan_size(n, p);
    if size > SCAN_LIMIT {
        return Err(Error::SearchTooLarge {
            size,
            limit: SCAN_LIMIT,
        });
    }
    let res = phi.residues();
    let (r, s) = (phi.r, phi.s);
    let f = r + s;
    let (rows, full) = match side {
        Side::V => (s + 1, s + 1),
        Side::W => (r + 1, r + 1),
    };
    let idx = |m: usize, i: usize, j: usize| (m * (r + 1) + i) * (s + 1) + j;
    let hits = scan_projective(n, p, |x| {
        let mut mat = vec![vec![0u64; f]; rows];
        for (a, row) in mat.iter_mut().enumerate() {
            for (m, cell) in row.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (b, &xb) in x.iter().enumerate() {
                    let e = match side {
                        Side::V => res[idx(m, b, a)],
                        Side::W => res[idx(m, a, b)],
                    };
                    acc = (acc + e * xb) % p;
                }
                *cell = acc;
            }
        }
        let drop = full - rank_mod_p(&mut mat, p);
        (drop > 0).then_some(drop)
    });
    if let Some((x, _)) = hits.iter().find(|(_, d)| *d >= 2) {
        return Err(Error::RankTwoDrop(x.clone()));
    }
    if hits.is_empty() {
        return Err(Error::EmptyLocus);
    }
    let rows = hits
        .into_iter()
        .map(|(x, _)| x.into_iter().map(|c| phi.field.residue(c)).collect())
        .collect();
    PointConfiguration::new(phi.field, n, rows)
}

fn left_kernel_line(m: &ExactMatrix) -> Option<Vec<Scalar>> {
    let k = m.transpose().kernel_basis();
    (k.cols() == 1).then(|| k.column(0))
}

/// `result[i]` is the index in `gw` of the point spanning the left kernel
/// of `φ_V(gv[i])`; symmetrically `gv[i]` spans the left kernel of
/// `φ_W(gw[result[i]])`.
pub fn match_pairs(phi: &TrilinearForm, gv: &PointConfiguration, gw: &PointConfiguration) -> Result<Vec<usize>> {
    if gv.r() != phi.r || gw.r() != phi.s {
        return Err(Error::DimensionMismatch("loci do not live in P(V) and P(W)".into()));
    }
    if gv.gamma() != gw.gamma() {
        return Err(Error::NotBijective);
    }
    let mut matching = Vec::with_capacity(gv.gamma());
    let mut used = vec![false; gw.gamma()];
    for i in 0..gv.gamma() {
        let y = left_kernel_line(&adjoint_eval(phi, Side::V, gv.point(i))?).ok_or(Error::NoMatch(i))?;
        let j = (0..gw.gamma())
            .find(|&j| proportional(gw.point(j), &y))
            .ok_or(Error::NoMatch(i))?;
        let x = left_kernel_line(&adjoint_eval(phi, Side::W, gw.point(j))?).ok_or(Error::NoMatch(i))?;
        if !proportional(gv.point(i), &x) {
            return Err(Error::NoMatch(i));
        }
        if std::mem::replace(&mut used[j], true) {
            return Err(Error::NotBijective);
        }
        matching.push(j);
    }
    Ok(matching)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VeroneseGaleOutcome {
    /// One side is `ℙ¹`, so a Veronese image lands in `ℙ⁰` and there is no
    /// Gale transform to compare.
    Skipped,
    Checked {
        equivalence: Equivalence,
        gale_pair: Verdict,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeroneseGaleReport {
    pub r: usize,
    pub s: usize,
    pub degree: usize,
    pub gamma_v: PointConfiguration,
    /// `Γ_W` relabeled so that point `i` is matched with `gamma_v` point `i`.
    pub gamma_w: PointConfiguration,
    pub matching: Vec<usize>,
    pub outcome: VeroneseGaleOutcome,
}

impl VeroneseGaleReport {
    pub fn passed(&self) -> bool {
        match &self.outcome {
            VeroneseGaleOutcome::Skipped => true,
            VeroneseGaleOutcome::Checked { equivalence, gale_pair } => {
                *equivalence == Equivalence::Equivalent && *gale_pair == Verdict::Holds
            }
        }
    }

    pub fn skipped(&self) -> bool {
        self.outcome == VeroneseGaleOutcome::Skipped
    }
}

/// Computes both loci, checks their degree, matches them and compares
/// `gale(ν_{r−1}(Γ_W))` with `ν_{s−1}(Γ_V)`.
pub fn verify_veronese_gale(phi: &TrilinearForm) -> Result<VeroneseGaleReport> {
    let (r, s) = (phi.r, phi.s);
    let degree = binomial(r + s, s);
    let gv = determinantal_locus(phi, Side::V)?;
    let gw = determinantal_locus(phi, Side::W)?;
    if gv.gamma() > degree || gw.gamma() > degree {
        return Err(Error::LocusTooLarge {
            expected: degree,
            found: gv.gamma().max(gw.gamma()),
        });
    }
    if gv.gamma() < degree || gw.gamma() < degree {
        return Err(Error::LocusIncomplete {
            expected: degree,
            found_v: gv.gamma(),
            found_w: gw.gamma(),
        });
    }
    let matching = match_pairs(phi, &gv, &gw)?;
    let gw = gw.permute(&matching)?;
    let outcome = if r == 1 || s == 1 {
        VeroneseGaleOutcome::Skipped
    } else {
        let a = gw.veronese(r - 1)?;
        let b = gv.veronese(s - 1)?;
        let transform = gale_transform(&a)?.transform;
        VeroneseGaleOutcome::Checked {
            equivalence: transform.is_equivalent_labeled(&b),
            gale_pair: is_gale_pair(&a, &b)?,
        }
    };
    Ok(VeroneseGaleReport {
        r,
        s,
        degree,
        gamma_v: gv,
        gamma_w: gw,
        matching,
        outcome,
    })
}

/// How random tensors are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampler {
    /// Independent uniform entries. Loci are usually only partly rational.
    Uniform,
    /// Hilbert–Burch construction from random rational points; needs
    /// `r = 2` or `s = 2`.
    Points,
}

pub fn random_trilinear_form<R: Rng>(field: FieldSpec, r: usize, s: usize, rng: &mut R) -> Result<TrilinearForm> {
    let entries = (0..r + s)
        .map(|_| (0..=r).map(|_| sample::random_vector(field, s + 1, rng)).collect())
        .collect();
    TrilinearForm::new(field, r, s, entries)
}

/// A tensor whose `V`-side locus contains `C(s+2, 2)` random points of `ℙ²`.
///
/// The forms of degree `s+1` through the points are the maximal minors of
/// their `(s+2) × (s+1)` Hilbert–Burch matrix of linear forms, which is
/// recovered as the space of linear syzygies and read off as `φ_V`. For
/// `s = 2` and `r ≠ 2` the construction is run with the roles swapped.
pub fn rational_locus_form<R: Rng>(field: FieldSpec, r: usize, s: usize, rng: &mut R) -> Result<TrilinearForm> {
    if r != 2 {
        if s == 2 {
            return Ok(rational_locus_form(field, s, r, rng)?.transpose());
        }
        return Err(Error::InvalidArgument("the points sampler needs r = 2 or s = 2".into()));
    }
    let gamma = binomial(s + 2, 2);
    let points = sample::random_configuration(field, 2, gamma, rng);
    let forms = monomial_matrix(points.coords(), s + 1).kernel_basis();
    if forms.cols() != s + 2 {
        return Err(Error::NoSolution);
    }
    let low = monomial_exponents(3, s + 1);
    let high = monomial_exponents(3, s + 2);
    let index: HashMap<&[usize], usize> = high.iter().enumerate().map(|(k, e)| (e.as_slice(), k)).collect();
    // column (m, i) holds the coefficients of x_i * f_m
    let unknowns = 3 * (s + 2);
    let mut system = ExactMatrix::zeros(field, high.len(), unknowns);
    for m in 0..s + 2 {
        for i in 0..3 {
            for (k, e) in low.iter().enumerate() {
                let c = forms.get(k, m);
                if c.is_zero() {
                    continue;
                }
                let mut shifted = e.clone();
                shifted[i] += 1;
                system.set(index[shifted.as_slice()], m * 3 + i, c.clone());
            }
        }
    }
    let syzygies = system.kernel_basis();
    if syzygies.cols() != s + 1 {
        return Err(Error::NoSolution);
    }
    let entries = (0..s + 2)
        .map(|m| {
            (0..3)
                .map(|i| (0..=s).map(|j| syzygies.get(m * 3 + i, j).clone()).collect())
                .collect()
        })
        .collect();
    TrilinearForm::new(field, 2, s, entries)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetnlRun {
    pub form: TrilinearForm,
    pub report: VeroneseGaleReport,
    pub attempts: usize,
}

/// Whether a failure is a property of the sampled tensor rather than of the
/// check, so that a fresh sample is warranted.
pub fn is_sample_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::RankTwoDrop(_)
            | Error::EmptyLocus
            | Error::LocusIncomplete { .. }
            | Error::LocusTooLarge { .. }
            | Error::NoMatch(_)
            | Error::NotBijective
            | Error::NoSolution
            | Error::GaleDegenerate(_)
            | Error::GaleNonReduced(_, _)
            | Error::Degenerate
    )
}

/// Samples tensors until one has fully rational loci of the right degree,
/// then returns its report, whether or not the comparison passed.
pub fn verify_random(
    field: FieldSpec,
    r: usize,
    s: usize,
    seed: u64,
    retries: usize,
    sampler: Sampler,
) -> Result<DetnlRun> {
    let p = field.modulus().ok_or(Error::NotPrimeField)?;
    for n in [r, s] {
        let size = scan_size(n, p);
        if size > SCAN_LIMIT {
            return Err(Error::SearchTooLarge {
                size,
                limit: SCAN_LIMIT,
            });
        }
    }
    if sampler == Sampler::Points && r != 2 && s != 2 {
        return Err(Error::InvalidArgument("the points sampler needs r = 2 or s = 2".into()));
    }
    let mut rng = sample::rng(seed);
    for attempt in 1..=retries {
        let form = match sampler {
            Sampler::Uniform => random_trilinear_form(field, r, s, &mut rng),
            Sampler::Points => rational_locus_form(field, r, s, &mut rng),
        };
        match form.and_then(|phi| verify_veronese_gale(&phi).map(|rep| (phi, rep))) {
            Ok((form, report)) => {
                return Ok(DetnlRun {
                    form,
                    report,
                    attempts: attempt,
                })
            }
            Err(e) if is_sample_failure(&e) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetryBudgetExceeded(retries))
}
