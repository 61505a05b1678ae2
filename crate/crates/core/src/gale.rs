//! The Gale transform and the rank duality it satisfies.
//!
//! For `γ = r+s+2` points of `ℙʳ` with coordinate matrix `G`, the transform is
//! the configuration in `ℙˢ` whose coordinate matrix `G'` has columns spanning
//! `ker Gᵀ`, so `Gᵀ·G' = 0`. The diagonal in `GᵀDG' = 0` is fixed to the
//! identity; other choices differ by row scalings, which the labeled
//! equivalence of [`PointConfiguration::is_equivalent_labeled`] ignores.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::generic::{coordinate_functionals, find_avoiding, Search, Verdict};
use crate::matrix::ExactMatrix;
use crate::pointconfig::{proportional, PointConfiguration, SubsetSelector};
use crate::selfassoc::DiagonalWitness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleResult {
    pub source: PointConfiguration,
    pub transform: PointConfiguration,
    pub witness: DiagonalWitness,
}

impl GaleResult {
    /// Re-multiplies `Gᵀ·diag(witness)·G'` from scratch.
    pub fn verify(&self) -> bool {
        self.witness.certifies(&self.source, &self.transform)
    }
}

/// Raw kernel matrix of `Gᵀ`, one row per point, without checking that the
/// rows form a valid configuration.
pub fn gale_matrix(cfg: &PointConfiguration) -> Result<ExactMatrix> {
    let needed = cfg.r() + 3;
    if cfg.gamma() < needed {
        return Err(Error::TooFewPoints {
            needed,
            found: cfg.gamma(),
        });
    }
    if !cfg.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    Ok(cfg.coords().transpose().kernel_basis())
}

pub fn gale_transform(cfg: &PointConfiguration) -> Result<GaleResult> {
    let k = gale_matrix(cfg)?;
    let rows = k.row_vecs();
    if let Some(i) = rows.iter().position(|r| r.iter().all(|x| x.is_zero())) {
        return Err(Error::GaleDegenerate(i));
    }
    for (i, j) in (0..rows.len()).tuple_combinations() {
        if proportional(&rows[i], &rows[j]) {
            return Err(Error::GaleNonReduced(i, j));
        }
    }
    let transform = PointConfiguration::from_matrix(k)?;
    let witness = DiagonalWitness::ones(cfg.field(), cfg.gamma());
    Ok(GaleResult {
        source: cfg.clone(),
        transform,
        witness,
    })
}

fn every_subset_of_size_spans(cfg: &PointConfiguration, size: usize) -> Result<bool> {
    if !cfg.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    Ok((0..cfg.gamma())
        .combinations(size)
        .all(|s| cfg.rank_of(&s) == cfg.r() + 1))
}

/// No hyperplane contains all points but one (over the input field).
pub fn gale_is_basepoint_free(cfg: &PointConfiguration) -> Result<bool> {
    every_subset_of_size_spans(cfg, cfg.gamma().saturating_sub(1))
}

/// No hyperplane contains all points but two (over the input field).
pub fn gale_is_very_ample(cfg: &PointConfiguration) -> Result<bool> {
    every_subset_of_size_spans(cfg, cfg.gamma().saturating_sub(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualityDefects {
    /// `(r+1) − rank` of the selected points.
    pub span_failure: usize,
    /// `|complement| − rank` of the complementary rows of the Gale matrix.
    pub condition_failure: usize,
}

/// Both sides of the span/conditions duality for a subset and its complement.
///
/// Computed on the raw Gale matrix, so the identity can be checked even where
/// the transform is not a reduced configuration.
pub fn duality_defects(cfg: &PointConfiguration, s: &SubsetSelector) -> Result<DualityDefects> {
    if s.indices().last().is_some_and(|&i| i >= cfg.gamma()) {
        return Err(Error::InvalidSubset("index out of range".into()));
    }
    let g = gale_matrix(cfg)?;
    let complement = s.complement(cfg.gamma());
    let comp_rank = if complement.is_empty() {
        0
    } else {
        g.select_rows(complement.indices()).rank()
    };
    Ok(DualityDefects {
        span_failure: cfg.r() + 1 - cfg.span_rank(s),
        condition_failure: complement.len() - comp_rank,
    })
}

/// Whether `second` is a Gale transform of `first` in the sense of a
/// nonsingular diagonal `D` with `Gᵀ·D·G' = 0`, decided by solving for `D`
/// directly rather than through canonical forms.
pub fn is_gale_pair(first: &PointConfiguration, second: &PointConfiguration) -> Result<Verdict> {
    if first.field() != second.field() {
        return Err(Error::FieldMismatch);
    }
    if first.gamma() != second.gamma() {
        return Ok(Verdict::Fails);
    }
    let field = first.field();
    let gamma = first.gamma();
    // one equation per entry (i, j) of Gᵀ D G': Σ_k d_k G[k][i] G'[k][j] = 0
    let mut eqs = Vec::new();
    for i in 0..=first.r() {
        for j in 0..=second.r() {
            eqs.push(
                (0..gamma)
                    .map(|k| first.coords().get(k, i) * second.coords().get(k, j))
                    .collect(),
            );
        }
    }
    let system = ExactMatrix::from_rows(field, eqs)?;
    let kernel = system.kernel_basis().transpose().row_vecs();
    Ok(
        match find_avoiding(field, &kernel, &coordinate_functionals(field, gamma)) {
            Search::Found(_) => Verdict::Holds,
            Search::Absent => Verdict::Fails,
            Search::Indeterminate => Verdict::Indeterminate,
        },
    )
}
