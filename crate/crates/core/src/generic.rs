//! Finding a vector of a subspace that avoids finitely many hyperplanes.
//!
//! Over ℚ a greedy integer combination always succeeds when no functional
//! vanishes on the whole subspace. Over `GF(p)` the greedy may run out of
//! admissible coefficients; small subspaces are then scanned exhaustively and
//! large ones are reported as undecided.

use crate::field::{FieldSpec, Scalar};
use crate::matrix::dot;

/// Subspaces with at most this many vectors are scanned exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search {
    Found(Vec<Scalar>),
    /// No vector of the subspace avoids all hyperplanes.
    Absent,
    Indeterminate,
}

/// Three-valued answer for predicates that are certified over the working field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

/// Searches `span(basis)` for `v` with `ℓ(v) ≠ 0` for every `ℓ` in
/// `functionals` (all vectors of the same length, over `field`).
pub fn find_avoiding(field: FieldSpec, basis: &[Vec<Scalar>], functionals: &[Vec<Scalar>]) -> Search {
    // a functional vanishing on every basis vector vanishes on the span
    if functionals
        .iter()
        .any(|l| basis.iter().all(|b| dot(l, b, field).is_zero()))
    {
        return Search::Absent;
    }
    if let Some(v) = greedy(field, basis, functionals) {
        return Search::Found(v);
    }
    let Some(p) = field.modulus() else {
        unreachable!("greedy combination cannot fail over an infinite field");
    };
    let size = (p as u128).checked_pow(basis.len() as u32);
    match size {
        Some(n) if n <= EXHAUSTIVE_LIMIT => exhaustive(field, p, basis, functionals),
        _ => Search::Indeterminate,
    }
}

/// `v ← v + c·b_j` with the smallest positive integer `c` keeping every
/// functional that is nonzero on `v` or on `b_j` nonzero afterwards.
fn greedy(field: FieldSpec, basis: &[Vec<Scalar>], functionals: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    let n = basis.first()?.len();
    let mut v = vec![field.zero(); n];
    let mut values: Vec<Scalar> = vec![field.zero(); functionals.len()];
    for b in basis {
        let lb: Vec<Scalar> = functionals.iter().map(|l| dot(l, b, field)).collect();
        let forbidden: Vec<Scalar> = values
            .iter()
            .zip(&lb)
            .filter(|(lv, lb)| !lv.is_zero() && !lb.is_zero())
            .map(|(lv, lb)| -(lv / lb))
            .collect();
        let bound = field.modulus().unwrap_or(u64::MAX);
        let c = (1..bound)
            .map(|c| field.from_i64(c as i64))
            .find(|c| !forbidden.contains(c))?;
        for (x, y) in v.iter_mut().zip(b) {
            *x = &*x + &(&c * y);
        }
        for (val, l) in values.iter_mut().zip(&lb) {
            *val = &*val + &(&c * l);
        }
    }
    values.iter().all(|x| !x.is_zero()).then_some(v)
}

fn exhaustive(field: FieldSpec, p: u64, basis: &[Vec<Scalar>], functionals: &[Vec<Scalar>]) -> Search {
    let k = basis.len();
    let n = basis[0].len();
    let mut digits = vec![0u64; k];
    loop {
        let mut v = vec![field.zero(); n];
        for (d, b) in digits.iter().zip(basis) {
            if *d == 0 {
                continue;
            }
            let c = field.residue(*d);
            for (x, y) in v.iter_mut().zip(b) {
                *x = &*x + &(&c * y);
            }
        }
        if functionals.iter().all(|l| !dot(l, &v, field).is_zero()) {
            return Search::Found(v);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == k {
                return Search::Absent;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Coordinate functionals `e_0, …, e_{n−1}`.
pub fn coordinate_functionals(field: FieldSpec, n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|i| {
            let mut e = vec![field.zero(); n];
            e[i] = field.one();
            e
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(field: FieldSpec, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn greedy_over_rationals() {
        let q = FieldSpec::Rationals;
        let basis = vec![ints(q, &[1, 0, -1]), ints(q, &[0, 1, 1])];
        let Search::Found(v) = find_avoiding(q, &basis, &coordinate_functionals(q, 3)) else {
            panic!("expected a vector");
        };
        // c = 1 would cancel the last coordinate
        assert_eq!(v, ints(q, &[1, 2, 1]));
    }

    #[test]
    fn identically_zero_coordinate_is_absent() {
        let q = FieldSpec::Rationals;
        let basis = vec![ints(q, &[1, 0, 2])];
        assert_eq!(find_avoiding(q, &basis, &coordinate_functionals(q, 3)), Search::Absent);
        assert_eq!(find_avoiding(q, &[], &coordinate_functionals(q, 2)), Search::Absent);
    }

    #[test]
    fn prime_field_falls_back_to_scan() {
        // Over GF(2) the plane spanned by (1,1,0),(0,1,1) contains only
        // (1,1,0),(0,1,1),(1,0,1) besides zero: no totally nonzero vector.
        let f = FieldSpec::prime(2).unwrap();
        let basis = vec![ints(f, &[1, 1, 0]), ints(f, &[0, 1, 1])];
        assert_eq!(find_avoiding(f, &basis, &coordinate_functionals(f, 3)), Search::Absent);
        // over GF(3) the greedy takes c = 1: (1,2,1)
        let f = FieldSpec::prime(3).unwrap();
        let basis = vec![ints(f, &[1, 1, 0]), ints(f, &[0, 1, 1])];
        assert_eq!(
            find_avoiding(f, &basis, &coordinate_functionals(f, 3)),
            Search::Found(ints(f, &[1, 2, 1]))
        );
    }
}
