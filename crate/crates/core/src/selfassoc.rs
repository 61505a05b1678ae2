//! Self-associated configurations: `2r+2` points of `ℙʳ` that are their own
//! Gale transform.
//!
//! A certificate is a diagonal `D` with every entry nonzero and
//! `Gᵀ·D·G = 0`, equivalently a relation `Σ dᵢ gᵢgᵢᵀ = 0` among the rank-one
//! quadrics of the points. When the points split into two bases this is the
//! same as both bases being orthogonal for one nonsingular symmetric form,
//! which is also how sets are completed to self-associated ones.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::generic::{coordinate_functionals, find_avoiding, Search, Verdict};
use crate::matrix::ExactMatrix;
use crate::pointconfig::{monomial_matrix, proportional, PointConfiguration, SubsetSelector};
use crate::sample;

/// Candidates tried per Gram–Schmidt slot before giving up.
pub const GRAM_SCHMIDT_TRIES: usize = 64;

/// Nonsingular diagonal `D`, stored as its diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalWitness {
    entries: Vec<Scalar>,
}

impl DiagonalWitness {
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        if entries.is_empty() || entries.iter().any(Scalar::is_zero) {
            return Err(Error::InvalidArgument("witness entries must be nonzero".into()));
        }
        Ok(DiagonalWitness { entries })
    }

    pub fn ones(field: FieldSpec, n: usize) -> Self {
        DiagonalWitness {
            entries: vec![field.one(); n],
        }
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Checks `Gᵀ·diag(d)·G' = 0` by direct multiplication.
    pub fn certifies(&self, g: &PointConfiguration, g2: &PointConfiguration) -> bool {
        if g.gamma() != self.entries.len() || g2.gamma() != self.entries.len() || g.field() != g2.field() {
            return false;
        }
        let scaled = ExactMatrix::from_rows(
            g2.field(),
            (0..g2.gamma())
                .map(|k| g2.point(k).iter().map(|x| x * &self.entries[k]).collect())
                .collect(),
        )
        .expect("rectangular");
        g.coords().transpose().mul(&scaled).expect("shapes agree").is_zero()
    }
}

/// Symmetric bilinear form with diagonal Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalBilinearForm {
    diagonal: Vec<Scalar>,
}

impl DiagonalBilinearForm {
    pub fn new(diagonal: Vec<Scalar>) -> Self {
        DiagonalBilinearForm { diagonal }
    }

    pub fn diagonal(&self) -> &[Scalar] {
        &self.diagonal
    }

    pub fn is_nonsingular(&self) -> bool {
        self.diagonal.iter().all(|x| !x.is_zero())
    }

    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let field = self.diagonal[0].field();
        self.diagonal
            .iter()
            .zip(u.iter().zip(v))
            .fold(field.zero(), |acc, (b, (x, y))| &acc + &(b * &(x * y)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelfAssociation {
    Witness(DiagonalWitness),
    NotSelfAssociated,
    Indeterminate,
}

impl SelfAssociation {
    pub fn verdict(&self) -> Verdict {
        match self {
            SelfAssociation::Witness(_) => Verdict::Holds,
            SelfAssociation::NotSelfAssociated => Verdict::Fails,
            SelfAssociation::Indeterminate => Verdict::Indeterminate,
        }
    }
}

fn require_self_dual_degree(cfg: &PointConfiguration) -> Result<()> {
    let expected = 2 * cfg.r() + 2;
    if cfg.gamma() != expected {
        return Err(Error::WrongDegree {
            expected,
            found: cfg.gamma(),
        });
    }
    Ok(())
}

/// Searches for `d` with all entries nonzero in the kernel of the transposed
/// quadric evaluation matrix, i.e. `Σ dᵢ gᵢgᵢᵀ = 0`.
pub fn self_association_witness(cfg: &PointConfiguration) -> Result<SelfAssociation> {
    require_self_dual_degree(cfg)?;
    if !cfg.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let field = cfg.field();
    let relations = monomial_matrix(cfg.coords(), 2).transpose().kernel_basis();
    let basis = relations.transpose().row_vecs();
    Ok(
        match find_avoiding(field, &basis, &coordinate_functionals(field, cfg.gamma())) {
            Search::Found(d) => {
                let w = DiagonalWitness::new(d).expect("search returns a totally nonzero vector");
                assert!(w.certifies(cfg, cfg), "witness failed re-verification");
                SelfAssociation::Witness(w)
            }
            Search::Absent => SelfAssociation::NotSelfAssociated,
            Search::Indeterminate => SelfAssociation::Indeterminate,
        },
    )
}

/// Self-associated and failing by exactly one to impose independent
/// conditions on quadrics.
pub fn is_arithmetically_gorenstein(cfg: &PointConfiguration) -> Result<Verdict> {
    Ok(match self_association_witness(cfg)? {
        SelfAssociation::Witness(_) => Verdict::from_bool(cfg.quadric_defect() == 1),
        SelfAssociation::NotSelfAssociated => Verdict::Fails,
        SelfAssociation::Indeterminate => Verdict::Indeterminate,
    })
}

/// Coordinates of every point in the basis given by the rows `basis_rows`:
/// row `k` becomes `g_k · P⁻¹`.
fn in_basis(cfg: &PointConfiguration, basis_rows: &[usize]) -> Option<ExactMatrix> {
    let p = cfg.coords().select_rows(basis_rows);
    let inv = p.inverse()?;
    Some(cfg.coords().mul(&inv).expect("shapes agree"))
}

/// Homogeneous conditions `Σ_k x_k u_k v_k = 0` for every pair of `vectors`.
fn orthogonality_system(field: FieldSpec, vectors: &[Vec<Scalar>], n: usize) -> ExactMatrix {
    let mut eqs = Vec::new();
    for a in 0..vectors.len() {
        for b in a + 1..vectors.len() {
            eqs.push((0..n).map(|k| &vectors[a][k] * &vectors[b][k]).collect());
        }
    }
    if eqs.is_empty() {
        return ExactMatrix::zeros(field, 0, n);
    }
    ExactMatrix::from_rows(field, eqs).expect("rectangular")
}

fn squares(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| x * x).collect()
}

/// A nonsingular diagonal form, in the coordinates where the `split` points
/// are the standard basis, for which both `split` and its complement are
/// orthogonal bases.
pub fn orthogonalizing_form(cfg: &PointConfiguration, split: &SubsetSelector) -> Result<Option<DiagonalBilinearForm>> {
    require_self_dual_degree(cfg)?;
    let n = cfg.r() + 1;
    let complement = split.complement(cfg.gamma());
    if split.len() != n || cfg.span_rank(split) != n || cfg.span_rank(&complement) != n {
        return Err(Error::NotTwoBases);
    }
    let field = cfg.field();
    let moved = in_basis(cfg, split.indices()).expect("split is a basis");
    let others: Vec<Vec<Scalar>> = complement.indices().iter().map(|&k| moved.row(k).to_vec()).collect();
    let kernel = orthogonality_system(field, &others, n).kernel_basis().transpose().row_vecs();
    match find_avoiding(field, &kernel, &coordinate_functionals(field, n)) {
        Search::Found(b) => Ok(Some(DiagonalBilinearForm::new(b))),
        Search::Absent => Ok(None),
        Search::Indeterminate => Err(Error::Indeterminate("no nonsingular form found by search".into())),
    }
}

/// Witness read off from a form making `split` and its complement orthogonal:
/// `1/B(e_i, e_i)` on the split and `−1/B(v, v)` on the complement, from
/// `B⁻¹ = Σ e_i e_iᵀ / B(e_i,e_i) = Σ v vᵀ / B(v,v)`.
pub fn witness_from_form(
    cfg: &PointConfiguration,
    split: &SubsetSelector,
    form: &DiagonalBilinearForm,
) -> Result<DiagonalWitness> {
    let moved = in_basis(cfg, split.indices()).ok_or(Error::NotTwoBases)?;
    let mut entries = Vec::with_capacity(cfg.gamma());
    let mut slot = 0;
    for k in 0..cfg.gamma() {
        if split.indices().contains(&k) {
            entries.push(form.diagonal()[slot].inv().ok_or(Error::NoSolution)?);
            slot += 1;
        } else {
            let v = moved.row(k);
            entries.push(-form.eval(v, v).inv().ok_or(Error::NoSolution)?);
        }
    }
    DiagonalWitness::new(entries)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completion {
    Completed {
        configuration: PointConfiguration,
        /// Diagonal in the coordinates where the first `r+1` points are the standard basis.
        form: DiagonalBilinearForm,
        added: SubsetSelector,
        witness: DiagonalWitness,
    },
    NotCompletable,
    Indeterminate,
}

/// Extends `γ = r+1+d` points to `2r+2` self-associated points.
///
/// The first `r+1` points must be a basis. In their coordinates the form is
/// diagonal and the remaining `d` points must be mutually orthogonal and
/// non-isotropic; the basis they start is completed by Gram–Schmidt from a
/// seeded candidate pool (standard basis vectors in shuffled order, then
/// small random integer vectors).
pub fn complete_to_self_associated(cfg: &PointConfiguration, seed: u64) -> Result<Completion> {
    let n = cfg.r() + 1;
    if cfg.gamma() <= n {
        return Err(Error::InvalidArgument(format!(
            "completion needs more than r+1 = {n} points"
        )));
    }
    let field = cfg.field();
    let first: Vec<usize> = (0..n).collect();
    let moved = in_basis(cfg, &first).ok_or(Error::FirstBlockNotBasis)?;
    let sigma: Vec<Vec<Scalar>> = (n..cfg.gamma()).map(|k| moved.row(k).to_vec()).collect();
    let kernel = orthogonality_system(field, &sigma, n).kernel_basis().transpose().row_vecs();
    let mut functionals = coordinate_functionals(field, n);
    functionals.extend(sigma.iter().map(|v| squares(v)));
    let form = match find_avoiding(field, &kernel, &functionals) {
        Search::Found(b) => DiagonalBilinearForm::new(b),
        Search::Absent => return Ok(Completion::NotCompletable),
        Search::Indeterminate => return Ok(Completion::Indeterminate),
    };
    // more than n mutually orthogonal non-isotropic vectors cannot exist
    if sigma.len() > n {
        return Ok(Completion::NotCompletable);
    }

    let mut rng = sample::rng(seed);
    let mut standard: Vec<usize> = (0..n).collect();
    standard.shuffle(&mut rng);
    let mut pool = standard.into_iter();

    let p = cfg.coords().select_rows(&first);
    let mut orthogonal = sigma.clone();
    let mut rows = cfg.coords().row_vecs();
    for slot in 0..n - sigma.len() {
        let mut accepted = None;
        for _ in 0..GRAM_SCHMIDT_TRIES {
            let candidate = match pool.next() {
                Some(i) => {
                    let mut e = vec![field.zero(); n];
                    e[i] = field.one();
                    e
                }
                None => sample::small_int_vector(field, n, 3, &mut rng),
            };
            let w = gram_schmidt_step(&form, &orthogonal, candidate);
            if w.iter().all(Scalar::is_zero) || form.eval(&w, &w).is_zero() {
                continue;
            }
            let original = p.transpose().apply(&w);
            if rows.iter().any(|r| proportional(r, &original)) {
                continue;
            }
            accepted = Some((w, original));
            break;
        }
        let Some((w, original)) = accepted else {
            return Err(Error::IsotropicObstruction {
                slot,
                tries: GRAM_SCHMIDT_TRIES,
            });
        };
        orthogonal.push(w);
        rows.push(original);
    }

    let configuration = PointConfiguration::new(field, cfg.r(), rows)?;
    let added = SubsetSelector::new((cfg.gamma()..2 * n).collect(), 2 * n)?;
    let split = SubsetSelector::new(first, 2 * n)?;
    let witness = witness_from_form(&configuration, &split, &form)?;
    if !witness.certifies(&configuration, &configuration) {
        return Err(Error::VerificationFailed("completed set is not self-associated".into()));
    }
    Ok(Completion::Completed {
        configuration,
        form,
        added,
        witness,
    })
}

fn gram_schmidt_step(form: &DiagonalBilinearForm, basis: &[Vec<Scalar>], mut v: Vec<Scalar>) -> Vec<Scalar> {
    for u in basis {
        let coeff = &form.eval(&v, u) / &form.eval(u, u);
        for (x, y) in v.iter_mut().zip(u) {
            *x = &*x - &(&coeff * y);
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSumReport {
    pub first: Verdict,
    pub second: Verdict,
    pub sum: Verdict,
    pub first_defect: usize,
    pub second_defect: usize,
    pub sum_defect: usize,
}

impl DirectSumReport {
    /// The sum is self-associated iff both summands are, and quadric defects add.
    pub fn consistent(&self) -> bool {
        let both = match (self.first, self.second) {
            (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            _ => Verdict::Indeterminate,
        };
        both == self.sum && self.sum_defect == self.first_defect + self.second_defect
    }
}

pub fn direct_sum_self_association_check(a: &PointConfiguration, b: &PointConfiguration) -> Result<DirectSumReport> {
    require_self_dual_degree(a)?;
    require_self_dual_degree(b)?;
    let sum = a.direct_sum(b)?;
    Ok(DirectSumReport {
        first: self_association_witness(a)?.verdict(),
        second: self_association_witness(b)?.verdict(),
        sum: self_association_witness(&sum)?.verdict(),
        first_defect: a.quadric_defect(),
        second_defect: b.quadric_defect(),
        sum_defect: sum.quadric_defect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn cfg(rows: &[Vec<i64>]) -> PointConfiguration {
        PointConfiguration::from_ints(q(), rows).unwrap()
    }

    /// Five points of the conic `xz = y²` plus (0,0,1).
    fn pascal() -> PointConfiguration {
        let mut rows: Vec<Vec<i64>> = (0..5).map(|t| vec![1, t, t * t]).collect();
        rows.push(vec![0, 0, 1]);
        cfg(&rows)
    }

    /// Standard basis together with an orthonormal basis of the identity form.
    fn two_orthogonal_bases() -> PointConfiguration {
        cfg(&[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 2, 2],
            vec![2, 1, -2],
            vec![2, -2, 1],
        ])
    }

    fn generic_six() -> PointConfiguration {
        cfg(&[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 1],
            vec![1, 2, 3],
            vec![2, -1, 5],
        ])
    }

    #[test]
    fn pascal_sextuple_has_a_witness() {
        let SelfAssociation::Witness(w) = self_association_witness(&pascal()).unwrap() else {
            panic!("expected witness");
        };
        assert!(w.certifies(&pascal(), &pascal()));
        assert_eq!(is_arithmetically_gorenstein(&pascal()).unwrap(), Verdict::Holds);
    }

    #[test]
    fn generic_sextuple_is_not_self_associated() {
        assert_eq!(
            self_association_witness(&generic_six()).unwrap(),
            SelfAssociation::NotSelfAssociated
        );
        assert_eq!(is_arithmetically_gorenstein(&generic_six()).unwrap(), Verdict::Fails);
    }

    #[test]
    fn orthogonal_bases_witness_is_proportional() {
        let c = two_orthogonal_bases();
        let SelfAssociation::Witness(w) = self_association_witness(&c).unwrap() else {
            panic!("expected witness");
        };
        let expected: Vec<Scalar> = [-9, -9, -9, 1, 1, 1].iter().map(|&v| q().from_i64(v)).collect();
        assert!(crate::pointconfig::proportional(w.entries(), &expected));
    }

    #[test]
    fn wrong_degree_rejected() {
        let five = cfg(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1], vec![1, 2, 3]]);
        assert!(matches!(self_association_witness(&five), Err(Error::WrongDegree { .. })));
        assert!(matches!(is_arithmetically_gorenstein(&five), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn orthogonalizing_form_examples() {
        let c = two_orthogonal_bases();
        let split = SubsetSelector::new(vec![0, 1, 2], 6).unwrap();
        let b = orthogonalizing_form(&c, &split).unwrap().unwrap();
        assert!(crate::pointconfig::proportional(b.diagonal(), &[q().one(), q().one(), q().one()]));
        let w = witness_from_form(&c, &split, &b).unwrap();
        assert!(w.certifies(&c, &c));

        let g = generic_six();
        assert_eq!(orthogonalizing_form(&g, &split).unwrap(), None);

        let bad = SubsetSelector::new(vec![0, 1, 3], 6).unwrap();
        let degenerate = cfg(&[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 0],
            vec![1, 2, 0],
            vec![1, 3, 0],
        ]);
        assert_eq!(orthogonalizing_form(&degenerate, &SubsetSelector::new(vec![0, 1, 2], 6).unwrap()), Err(Error::NotTwoBases));
        assert_eq!(orthogonalizing_form(&degenerate, &bad), Err(Error::NotTwoBases));
    }

    #[test]
    fn five_general_points_complete() {
        let five = cfg(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1], vec![1, 2, 3]]);
        let Completion::Completed {
            configuration,
            added,
            witness,
            ..
        } = complete_to_self_associated(&five, 7).unwrap()
        else {
            panic!("expected completion");
        };
        assert_eq!(added.indices(), &[5]);
        assert!(witness.certifies(&configuration, &configuration));
        assert!(matches!(
            self_association_witness(&configuration).unwrap(),
            SelfAssociation::Witness(_)
        ));
        // the sixth point lies on the conic through the five
        assert_eq!(configuration.quadric_defect(), 1);
    }

    #[test]
    fn too_many_points_do_not_complete() {
        let six = generic_six();
        assert_eq!(complete_to_self_associated(&six, 0).unwrap(), Completion::NotCompletable);
        let mut rows = generic_six().coords().row_vecs();
        rows.push(vec![q().from_i64(3), q().from_i64(-4), q().from_i64(7)]);
        let seven = PointConfiguration::new(q(), 2, rows).unwrap();
        assert_eq!(complete_to_self_associated(&seven, 0).unwrap(), Completion::NotCompletable);
    }

    #[test]
    fn first_block_must_be_a_basis() {
        let c = cfg(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(complete_to_self_associated(&c, 0), Err(Error::FirstBlockNotBasis));
    }

    #[test]
    fn direct_sums_of_sextuples() {
        let r = direct_sum_self_association_check(&pascal(), &pascal()).unwrap();
        assert_eq!(r.sum, Verdict::Holds);
        assert_eq!(r.sum_defect, 2);
        assert!(r.consistent());
        let r = direct_sum_self_association_check(&pascal(), &generic_six()).unwrap();
        assert_eq!(r.sum, Verdict::Fails);
        assert!(r.consistent());
        let line = cfg(&[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 3]]);
        let r = direct_sum_self_association_check(&line, &line).unwrap();
        assert_eq!((r.first, r.sum), (Verdict::Holds, Verdict::Holds));
        assert!(r.consistent());
    }
}
