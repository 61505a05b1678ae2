//! Certificate checks written against raw entries, independent of the
//! matrix routines that produced the certificates.

use gale_core::pointconfig::monomial_exponents;
use gale_core::{ExactMatrix, FieldSpec, PointConfiguration, Scalar};

use crate::CliError;

pub fn ensure(ok: bool, what: impl Into<String>) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Recheck(what.into()))
    }
}

fn dot(field: FieldSpec, a: impl Iterator<Item = Scalar>) -> Scalar {
    a.fold(field.zero(), |acc, x| &acc + &x)
}

/// `Σₖ dₖ·aₖ·bₖᵀ = 0`, i.e. `Aᵀ·diag(d)·B = 0` for points stored as rows.
pub fn weighted_gram_vanishes(a: &PointConfiguration, b: &PointConfiguration, d: &[Scalar]) -> bool {
    if a.gamma() != b.gamma() || d.len() != a.gamma() {
        return false;
    }
    let f = a.field();
    (0..=a.r()).all(|i| {
        (0..=b.r()).all(|j| dot(f, (0..a.gamma()).map(|k| &(&d[k] * &a.point(k)[i]) * &b.point(k)[j])).is_zero())
    })
}

/// Every row of `a` is orthogonal to every row of `b`.
pub fn rows_orthogonal(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    a.cols() == b.cols()
        && (0..a.rows()).all(|i| {
            (0..b.rows()).all(|j| dot(a.field(), a.row(i).iter().zip(b.row(j)).map(|(x, y)| x * y)).is_zero())
        })
}

/// Nonzero and proportional, by cross-multiplication.
pub fn proportional(u: &[Scalar], v: &[Scalar]) -> bool {
    u.len() == v.len()
        && u.iter().any(|x| !x.is_zero())
        && v.iter().any(|x| !x.is_zero())
        && (0..u.len()).all(|i| (0..u.len()).all(|j| &u[i] * &v[j] == &u[j] * &v[i]))
}

/// Value of a quadric in four variables, coefficients in lexicographic
/// monomial order with `x₀²` first.
pub fn eval_form(coeffs: &[Scalar], x: &[Scalar], degree: usize) -> Scalar {
    let f = x[0].field();
    let exps = monomial_exponents(x.len(), degree);
    dot(
        f,
        coeffs.iter().zip(&exps).map(|(c, e)| {
            e.iter()
                .zip(x)
                .fold(c.clone(), |acc, (&k, xi)| &acc * &xi.pow(k as u32))
        }),
    )
}
