//! Labeled point configurations in projective space.
//!
//! A configuration is a `γ × (r+1)` coordinate matrix whose rows are the
//! homogeneous coordinates of `γ` distinct points of `ℙʳ`. Labels are the row
//! indices. Everything here is invariant (or equivariant) under the group
//! generated by row scalings and invertible column transformations, and
//! [`PointConfiguration::canonical_form`] picks an orbit representative.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;

/// Largest configuration handled by exhaustive subset scans.
pub const SUBSET_SCAN_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    r: usize,
    coords: ExactMatrix,
}

/// Strictly increasing point indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetSelector(Vec<usize>);

impl SubsetSelector {
    pub fn new(indices: Vec<usize>, gamma: usize) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSubset("indices must strictly increase".into()));
        }
        if let Some(&i) = indices.last() {
            if i >= gamma {
                return Err(Error::InvalidSubset(format!("index {i} out of range for {gamma} points")));
            }
        }
        Ok(SubsetSelector(indices))
    }

    pub fn all(gamma: usize) -> Self {
        SubsetSelector((0..gamma).collect())
    }

    pub fn empty() -> Self {
        SubsetSelector(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn complement(&self, gamma: usize) -> Self {
        SubsetSelector((0..gamma).filter(|i| !self.0.contains(i)).collect())
    }
}

/// Outcome of a labeled projective-equivalence test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    NotEquivalent,
    Indeterminate,
}

impl PointConfiguration {
    /// Validates and builds a configuration of points in `ℙʳ`.
    pub fn new(field: FieldSpec, r: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        if r < 1 {
            return Err(Error::InvalidArgument("ambient dimension must be at least 1".into()));
        }
        if rows.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != r + 1) {
            return Err(Error::DimensionMismatch(format!(
                "point {i} has {} coordinates, expected {}",
                row.len(),
                r + 1
            )));
        }
        let coords = ExactMatrix::from_rows(field, rows)?;
        Self::from_matrix(coords)
    }

    /// Uses the rows of `coords` as points of `ℙ^(cols−1)`.
    pub fn from_matrix(coords: ExactMatrix) -> Result<Self> {
        if coords.rows() == 0 {
            return Err(Error::EmptyConfiguration);
        }
        if coords.cols() < 2 {
            return Err(Error::InvalidArgument("ambient dimension must be at least 1".into()));
        }
        let normalized: Vec<Option<Vec<Scalar>>> =
            (0..coords.rows()).map(|i| normalize_point(coords.row(i))).collect();
        for (i, n) in normalized.iter().enumerate() {
            if n.is_none() {
                return Err(Error::ZeroPoint(i));
            }
        }
        for j in 1..normalized.len() {
            for i in 0..j {
                if normalized[i] == normalized[j] {
                    return Err(Error::DuplicatePoint(i, j));
                }
            }
        }
        Ok(PointConfiguration {
            r: coords.cols() - 1,
            coords,
        })
    }

    pub fn from_ints<R: AsRef<[i64]>>(field: FieldSpec, rows: &[R]) -> Result<Self> {
        Self::from_matrix(ExactMatrix::from_ints(field, rows))
    }

    pub fn field(&self) -> FieldSpec {
        self.coords.field()
    }

    /// Ambient projective dimension.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn gamma(&self) -> usize {
        self.coords.rows()
    }

    pub fn coords(&self) -> &ExactMatrix {
        &self.coords
    }

    pub fn point(&self, i: usize) -> &[Scalar] {
        self.coords.row(i)
    }

    pub fn span_rank(&self, s: &SubsetSelector) -> usize {
        self.rank_of(s.indices())
    }

    pub(crate) fn rank_of(&self, idx: &[usize]) -> usize {
        if idx.is_empty() {
            return 0;
        }
        self.coords.select_rows(idx).rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.coords.rank() == self.r + 1
    }

    /// Every subset of `min(γ, r+1)` points is linearly independent.
    pub fn is_linearly_general_position(&self) -> bool {
        let k = self.gamma().min(self.r + 1);
        (0..self.gamma())
            .combinations(k)
            .all(|s| self.rank_of(&s) == k)
    }

    /// The `d`-th Veronese re-embedding, monomials in lexicographic order
    /// (`x0^d` first, `xr^d` last).
    pub fn veronese(&self, d: usize) -> Result<PointConfiguration> {
        if d < 1 {
            return Err(Error::InvalidArgument("Veronese degree must be at least 1".into()));
        }
        let m = monomial_matrix(&self.coords, d);
        Ok(PointConfiguration::from_matrix(m).expect("Veronese images of distinct points are distinct"))
    }

    /// Rank of the degree-`d` evaluation matrix: the number of independent
    /// conditions the points impose on forms of degree `d`.
    pub fn conditions_imposed(&self, d: usize) -> usize {
        monomial_matrix(&self.coords, d).rank()
    }

    /// Failure to impose independent conditions on quadrics.
    pub fn quadric_defect(&self) -> usize {
        self.gamma() - self.conditions_imposed(2)
    }

    /// Dimension of the space of degree-`d` forms vanishing on the selected points.
    pub fn forms_vanishing(&self, s: &SubsetSelector, d: usize) -> usize {
        let total = binomial(self.r + d, d);
        if s.is_empty() {
            return total;
        }
        total - monomial_matrix(&self.coords.select_rows(s.indices()), d).rank()
    }

    pub fn is_semistable(&self) -> Result<bool> {
        Ok(self.stability_scan()?.0)
    }

    pub fn is_stable(&self) -> Result<bool> {
        Ok(self.stability_scan()?.1)
    }

    /// Walks every nonempty proper subset of size `m` and rank `k`; the span
    /// bound `k − 1 ≥ m(r+1)/γ − 1` is compared as `k·γ ≥ m·(r+1)`.
    /// Returns `(semistable, stable)`.
    fn stability_scan(&self) -> Result<(bool, bool)> {
        let gamma = self.gamma();
        if gamma > SUBSET_SCAN_LIMIT {
            return Err(Error::ConfigurationTooLarge {
                gamma,
                limit: SUBSET_SCAN_LIMIT,
            });
        }
        let mut state = (true, true);
        let mut echelon = Echelon::new(self.field());
        self.stability_dfs(0, 0, &mut echelon, &mut state);
        Ok(state)
    }

    fn stability_dfs(&self, start: usize, m: usize, echelon: &mut Echelon, state: &mut (bool, bool)) {
        let gamma = self.gamma();
        let full = self.r + 1;
        for j in start..gamma {
            let mut next = echelon.clone();
            next.insert(self.point(j));
            let size = m + 1;
            if size == gamma {
                continue;
            }
            let lhs = next.rank() * gamma;
            let rhs = size * full;
            if lhs < rhs {
                state.0 = false;
                state.1 = false;
                return;
            }
            if lhs == rhs {
                state.1 = false;
            }
            // each further point lowers the slack rank·γ − size·(r+1) by at
            // most r+1, so a subtree that cannot reach zero is skipped; a
            // spanning subset has slack ≥ 0 and so does each superset
            let remaining = gamma - 1 - j;
            if next.rank() < full && lhs <= rhs + remaining * full {
                self.stability_dfs(j + 1, size, &mut next, state);
                if !state.0 {
                    return;
                }
            }
        }
    }

    /// For `γ = 2r+2`: the lexicographically first split into two bases.
    pub fn partition_into_two_bases(&self) -> Result<Option<(SubsetSelector, SubsetSelector)>> {
        let gamma = self.gamma();
        if gamma != 2 * self.r + 2 {
            return Err(Error::WrongDegree {
                expected: 2 * self.r + 2,
                found: gamma,
            });
        }
        if gamma > SUBSET_SCAN_LIMIT {
            return Err(Error::ConfigurationTooLarge {
                gamma,
                limit: SUBSET_SCAN_LIMIT,
            });
        }
        let mut chosen = Vec::with_capacity(self.r + 1);
        Ok(self
            .first_split(0, &mut chosen, &Echelon::new(self.field()))
            .map(|first| {
                let first = SubsetSelector(first);
                let second = first.complement(gamma);
                (first, second)
            }))
    }

    /// Independent subsets in lexicographic order; a point that does not
    /// raise the rank cannot extend the current prefix to a basis.
    fn first_split(&self, start: usize, chosen: &mut Vec<usize>, echelon: &Echelon) -> Option<Vec<usize>> {
        let full = self.r + 1;
        if chosen.len() == full {
            let second = SubsetSelector(chosen.clone()).complement(self.gamma());
            return (self.span_rank(&second) == full).then(|| chosen.clone());
        }
        let needed = full - chosen.len();
        for j in start..=self.gamma() - needed {
            let mut next = echelon.clone();
            if !next.insert(self.point(j)) {
                continue;
            }
            chosen.push(j);
            if let Some(found) = self.first_split(j + 1, chosen, &next) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }

    /// Whether the selected `r+2` points form a projective frame.
    pub fn is_frame(&self, subset: &[usize]) -> bool {
        self.frame_transform(subset).is_some()
    }

    /// Lexicographically first `(r+2)`-subset forming a frame.
    pub fn first_frame(&self) -> Option<Vec<usize>> {
        (0..self.gamma())
            .combinations(self.r + 2)
            .find(|s| self.is_frame(s))
    }

    /// Matrix `A` whose columns send `e_i` to multiples of the first `r+1`
    /// selected points and `(1,…,1)` to the last one. `None` unless the subset
    /// is a frame.
    pub(crate) fn frame_transform(&self, subset: &[usize]) -> Option<ExactMatrix> {
        if subset.len() != self.r + 2 {
            return None;
        }
        let (basis, last) = subset.split_at(self.r + 1);
        let p = self.coords.select_rows(basis).transpose();
        let target = self.coords.select_rows(last).transpose();
        let lambda = p.solve(&target).ok()??;
        if p.rank() != self.r + 1 || lambda.column(0).iter().any(Scalar::is_zero) {
            return None;
        }
        let mut a = p;
        for j in 0..=self.r {
            let l = lambda.get(j, 0).clone();
            for i in 0..=self.r {
                let v = a.get(i, j) * &l;
                a.set(i, j, v);
            }
        }
        Some(a)
    }

    /// Representative of the orbit under row scaling and projective
    /// transformations, normalized on the given frame subset.
    pub fn canonical_form_with_frame(&self, frame: &[usize]) -> Option<PointConfiguration> {
        let a = self.frame_transform(frame)?;
        let t = a.inverse().expect("frame matrix is invertible");
        let moved = self.coords.mul(&t.transpose()).expect("shapes agree");
        let rows = (0..moved.rows())
            .map(|i| normalize_point(moved.row(i)).expect("nonzero image"))
            .collect();
        Some(PointConfiguration {
            r: self.r,
            coords: ExactMatrix::from_rows(self.field(), rows).expect("rectangular"),
        })
    }

    /// Orbit representative: the first frame is sent to the standard frame
    /// `e_0, …, e_r, (1:…:1)` and every row is scaled to lead with 1.
    pub fn canonical_form(&self) -> Option<PointConfiguration> {
        self.canonical_form_with_frame(&self.first_frame()?)
    }

    /// Labeled projective equivalence (row scalings times `PGL`).
    ///
    /// Being a frame is invariant under the group, so equivalent
    /// configurations share their first frame; differing first frames
    /// already decide inequivalence.
    pub fn is_equivalent_labeled(&self, other: &PointConfiguration) -> Equivalence {
        if self.field() != other.field() || self.r != other.r || self.gamma() != other.gamma() {
            return Equivalence::NotEquivalent;
        }
        match (self.first_frame(), other.first_frame()) {
            (None, None) => Equivalence::Indeterminate,
            (Some(a), Some(b)) if a == b => {
                let ca = self.canonical_form_with_frame(&a);
                let cb = other.canonical_form_with_frame(&b);
                if ca == cb {
                    Equivalence::Equivalent
                } else {
                    Equivalence::NotEquivalent
                }
            }
            _ => Equivalence::NotEquivalent,
        }
    }

    /// Union inside complementary coordinate subspaces of `ℙ^(r_a + r_b + 1)`.
    pub fn direct_sum(&self, other: &PointConfiguration) -> Result<PointConfiguration> {
        let field = self.field();
        if other.field() != field {
            return Err(Error::FieldMismatch);
        }
        let (wa, wb) = (self.r + 1, other.r + 1);
        let mut rows = Vec::with_capacity(self.gamma() + other.gamma());
        for i in 0..self.gamma() {
            let mut row = self.point(i).to_vec();
            row.resize(wa + wb, field.zero());
            rows.push(row);
        }
        for i in 0..other.gamma() {
            let mut row = vec![field.zero(); wa];
            row.extend_from_slice(other.point(i));
            rows.push(row);
        }
        PointConfiguration::new(field, wa + wb - 1, rows)
    }

    /// Relabels so that new point `k` is old point `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<PointConfiguration> {
        let mut seen = perm.to_vec();
        seen.sort_unstable();
        if seen != (0..self.gamma()).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        Ok(PointConfiguration {
            r: self.r,
            coords: self.coords.select_rows(perm),
        })
    }

    /// Scales point `i` by `factors[i]` (all nonzero).
    pub fn scale_rows(&self, factors: &[Scalar]) -> Result<PointConfiguration> {
        if factors.len() != self.gamma() || factors.iter().any(Scalar::is_zero) {
            return Err(Error::InvalidArgument("need one nonzero factor per point".into()));
        }
        let rows = (0..self.gamma())
            .map(|i| self.point(i).iter().map(|x| x * &factors[i]).collect())
            .collect();
        PointConfiguration::new(self.field(), self.r, rows)
    }

    /// Applies `p ↦ t·p` to every point; `t` must be invertible.
    pub fn transform(&self, t: &ExactMatrix) -> Result<PointConfiguration> {
        if t.rows() != self.r + 1 || t.cols() != self.r + 1 {
            return Err(Error::DimensionMismatch("transformation must be square of size r+1".into()));
        }
        if t.determinant()?.is_zero() {
            return Err(Error::InvalidArgument("transformation is singular".into()));
        }
        PointConfiguration::from_matrix(self.coords.mul(&t.transpose())?)
    }

    pub fn select(&self, s: &SubsetSelector) -> Result<PointConfiguration> {
        PointConfiguration::from_matrix(self.coords.select_rows(s.indices()))
    }
}

/// Scales a vector so its first nonzero entry is 1; `None` for the zero vector.
pub fn normalize_point(v: &[Scalar]) -> Option<Vec<Scalar>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv().expect("nonzero");
    Some(v.iter().map(|x| x * &inv).collect())
}

pub fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    normalize_point(a) == normalize_point(b)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Exponent vectors of the degree-`d` monomials in `nvars` variables, in
/// lexicographic order with `x0^d` first.
pub fn monomial_exponents(nvars: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(nvars: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if nvars == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(nvars, d, &mut Vec::new(), &mut out);
    }
    out
}

pub fn evaluate_monomials(point: &[Scalar], exps: &[Vec<usize>], field: FieldSpec) -> Vec<Scalar> {
    let max = exps.iter().flatten().copied().max().unwrap_or(0);
    let powers: Vec<Vec<Scalar>> = point
        .iter()
        .map(|x| {
            let mut p = vec![field.one()];
            for k in 1..=max {
                let next = &p[k - 1] * x;
                p.push(next);
            }
            p
        })
        .collect();
    exps.iter()
        .map(|e| {
            e.iter()
                .enumerate()
                .fold(field.one(), |acc, (i, &k)| &acc * &powers[i][k])
        })
        .collect()
}

/// Rows of `points` evaluated at every degree-`d` monomial.
pub fn monomial_matrix(points: &ExactMatrix, d: usize) -> ExactMatrix {
    let field = points.field();
    let exps = monomial_exponents(points.cols(), d);
    if points.rows() == 0 {
        return ExactMatrix::zeros(field, 0, exps.len());
    }
    let rows = (0..points.rows())
        .map(|i| evaluate_monomials(points.row(i), &exps, field))
        .collect();
    ExactMatrix::from_rows(field, rows).expect("rectangular")
}

/// Incrementally maintained reduced basis for rank-of-subset scans.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    field: FieldSpec,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub(crate) fn new(field: FieldSpec) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether the rank grew.
    pub(crate) fn insert(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(pivot) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[pivot].inv().expect("nonzero");
        let w: Vec<Scalar> = w.iter().map(|x| x * &inv).collect();
        debug_assert_eq!(w[pivot].field(), self.field);
        self.rows.push((pivot, w));
        true
    }
}
