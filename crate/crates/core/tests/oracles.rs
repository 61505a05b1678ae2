//! Cross-checks against deliberately naive reimplementations.

use itertools::Itertools;

use gale_core::codes::{grs_code, grs_dual_multipliers, grs_dual_multipliers_closed_form, min_distance, GrsSpec, LinearCode};
use gale_core::detnl::{adjoint_eval, determinantal_locus, random_trilinear_form, Side};
use gale_core::gale::is_gale_pair;
use gale_core::pointconfig::proportional;
use gale_core::sample::{self, rng};
use gale_core::{gale_transform, ExactMatrix, FieldSpec, PointConfiguration, Scalar, SubsetSelector, Verdict};

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn cofactor(m: &[Vec<Scalar>], field: FieldSpec) -> Scalar {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut total = field.zero();
    for (j, a) in m[0].iter().enumerate() {
        let minor: Vec<Vec<Scalar>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = a * &cofactor(&minor, field);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

#[test]
fn determinant_matches_cofactor_expansion() {
    let mut g = rng(1);
    for field in [FieldSpec::Rationals, gf(7), gf(101)] {
        for n in 1..=6 {
            for _ in 0..3 {
                let rows: Vec<Vec<Scalar>> = (0..n).map(|_| sample::random_vector(field, n, &mut g)).collect();
                let m = ExactMatrix::from_rows(field, rows.clone()).unwrap();
                assert_eq!(m.determinant().unwrap(), cofactor(&rows, field), "{field} {n}x{n}");
            }
        }
    }
}

#[test]
fn solve_residual_vanishes() {
    let f = gf(7);
    let mut g = rng(2);
    for _ in 0..20 {
        let a = ExactMatrix::from_rows(f, (0..4).map(|_| sample::random_vector(f, 5, &mut g)).collect()).unwrap();
        let x = ExactMatrix::from_rows(f, (0..5).map(|_| sample::random_vector(f, 2, &mut g)).collect()).unwrap();
        let b = a.mul(&x).unwrap();
        let y = a.solve(&b).unwrap().expect("consistent by construction");
        assert_eq!(a.mul(&y).unwrap(), b);
    }
}

fn naive_semistable(cfg: &PointConfiguration) -> (bool, bool) {
    let gamma = cfg.gamma();
    let full = cfg.r() + 1;
    let mut state = (true, true);
    for mask in 1u32..(1 << gamma) - 1 {
        let idx: Vec<usize> = (0..gamma).filter(|i| mask >> i & 1 == 1).collect();
        let k = cfg.coords().select_rows(&idx).rank();
        let (lhs, rhs) = (k * gamma, idx.len() * full);
        if lhs < rhs {
            state = (false, false);
        } else if lhs == rhs {
            state.1 = false;
        }
    }
    state
}

fn naive_two_bases(cfg: &PointConfiguration) -> Option<Vec<usize>> {
    let full = cfg.r() + 1;
    (0..cfg.gamma()).combinations(full).find(|s| {
        let rest: Vec<usize> = (0..cfg.gamma()).filter(|i| !s.contains(i)).collect();
        cfg.coords().select_rows(s).rank() == full && cfg.coords().select_rows(&rest).rank() == full
    })
}

#[test]
fn stability_matches_subset_enumeration() {
    let mut g = rng(3);
    for (field, r) in [(gf(3), 2), (gf(3), 3), (gf(5), 2), (gf(2), 3), (FieldSpec::Rationals, 2)] {
        for gamma in r + 2..=2 * r + 3 {
            for _ in 0..6 {
                let cfg = sample::random_configuration(field, r, gamma, &mut g);
                let stable = (cfg.is_semistable().unwrap(), cfg.is_stable().unwrap());
                assert_eq!(stable, naive_semistable(&cfg), "{field} r={r} gamma={gamma}\n{}", cfg.coords());
            }
        }
    }
}

#[test]
fn two_bases_matches_subset_enumeration() {
    let mut g = rng(4);
    for (field, r) in [(gf(3), 2), (gf(2), 3), (gf(3), 3), (gf(5), 1)] {
        for _ in 0..15 {
            let cfg = sample::random_configuration(field, r, 2 * r + 2, &mut g);
            let got = cfg.partition_into_two_bases().unwrap().map(|(a, _)| a.indices().to_vec());
            assert_eq!(got, naive_two_bases(&cfg));
        }
    }
}

#[test]
fn gale_pairs_found_by_diagonal_solve() {
    let mut g = rng(5);
    for _ in 0..10 {
        let cfg = sample::random_lgp_configuration(FieldSpec::Rationals, 2, 7, &mut g, 100).unwrap();
        let t = gale_transform(&cfg).unwrap().transform;
        assert_eq!(is_gale_pair(&cfg, &t).unwrap(), Verdict::Holds);
        // rescaling points of the transform keeps it a Gale transform
        let units = sample::random_units(FieldSpec::Rationals, 7, &mut g);
        assert_eq!(is_gale_pair(&cfg, &t.scale_rows(&units).unwrap()).unwrap(), Verdict::Holds);
    }
}

fn naive_contraction(phi: &gale_core::detnl::TrilinearForm, side: Side, x: &[Scalar]) -> Vec<Vec<Scalar>> {
    let f = phi.field();
    let (n_f, n_v, n_w) = phi.dims();
    match side {
        Side::V => (0..n_w)
            .map(|j| {
                (0..n_f)
                    .map(|m| (0..n_v).fold(f.zero(), |acc, i| &acc + &(phi.get(m, i, j) * &x[i])))
                    .collect()
            })
            .collect(),
        Side::W => (0..n_v)
            .map(|i| {
                (0..n_f)
                    .map(|m| (0..n_w).fold(f.zero(), |acc, j| &acc + &(phi.get(m, i, j) * &x[j])))
                    .collect()
            })
            .collect(),
    }
}

#[test]
fn adjoint_matches_triple_loop() {
    let f = gf(7);
    let mut g = rng(6);
    for (r, s) in [(1, 1), (2, 2), (2, 3), (3, 1)] {
        let phi = random_trilinear_form(f, r, s, &mut g).unwrap();
        for (side, n) in [(Side::V, r + 1), (Side::W, s + 1)] {
            let x = sample::random_vector(f, n, &mut g);
            let got = adjoint_eval(&phi, side, &x).unwrap();
            assert_eq!(got.row_vecs(), naive_contraction(&phi, side, &x));
        }
    }
}

#[test]
fn locus_matches_point_by_point_rank() {
    let f = gf(5);
    let mut g = rng(7);
    let mut seen = 0;
    for _ in 0..30 {
        let phi = random_trilinear_form(f, 2, 2, &mut g).unwrap();
        let Ok(locus) = determinantal_locus(&phi, Side::V) else {
            continue;
        };
        seen += 1;
        // every point of P^2(F_5), rank checked through the exact matrix type
        let mut expected = Vec::new();
        for lead in 0..3 {
            for tail in (0..3 - lead - 1).map(|_| 0..5u64).multi_cartesian_product() {
                let mut x = [0u64; 3];
                x[lead] = 1;
                x[lead + 1..].copy_from_slice(&tail);
                let point: Vec<Scalar> = x.iter().map(|&c| f.residue(c)).collect();
                if adjoint_eval(&phi, Side::V, &point).unwrap().rank() == 2 {
                    expected.push(point);
                }
            }
        }
        expected.sort_by_key(|p| p.iter().map(|c| c.residue().unwrap()).collect::<Vec<_>>());
        assert_eq!(locus.coords().row_vecs(), expected);
    }
    assert!(seen > 0);
}

fn naive_min_distance(c: &LinearCode) -> usize {
    let f = c.field();
    let p = f.modulus().unwrap();
    let k = c.dimension();
    (0..k)
        .map(|_| 0..p)
        .multi_cartesian_product()
        .filter(|msg| msg.iter().any(|&x| x != 0))
        .map(|msg| {
            let m: Vec<Scalar> = msg.iter().map(|&x| f.residue(x)).collect();
            c.generator().transpose().apply(&m).iter().filter(|x| !x.is_zero()).count()
        })
        .min()
        .unwrap()
}

#[test]
fn min_distance_matches_naive_enumeration() {
    let f = gf(5);
    let mut g = rng(8);
    for _ in 0..10 {
        let rows: Vec<Vec<Scalar>> = (0..3).map(|_| sample::random_vector(f, 6, &mut g)).collect();
        let Ok(c) = LinearCode::new(ExactMatrix::from_rows(f, rows).unwrap()) else {
            continue;
        };
        assert_eq!(min_distance(&c).unwrap(), naive_min_distance(&c));
    }
    let grs = grs_code(&GrsSpec::standard(f, 6, 3).unwrap()).unwrap();
    assert_eq!(min_distance(&grs).unwrap(), 4);
}

#[test]
fn dual_multipliers_match_closed_form() {
    let f = gf(13);
    let mut g = rng(9);
    for n in 3..=12 {
        let points: Vec<(Scalar, Scalar)> = rand::seq::index::sample(&mut g, 13, n)
            .into_iter()
            .map(|a| (f.one(), f.residue(a as u64)))
            .collect();
        let spec = GrsSpec::new(f, points, sample::random_units(f, n, &mut g), 1).unwrap();
        let solved = grs_dual_multipliers(&spec).unwrap();
        let closed = grs_dual_multipliers_closed_form(&spec).unwrap();
        assert!(proportional(&solved, &closed), "n={n}");
    }
}

#[test]
fn cayley_bacharach_identity_on_complete_intersection() {
    // cubic-cubic grid, a = 3: failure of Γ1 to impose independent conditions
    // in degree d equals the forms of degree 3 − d through Γ2, counted modulo
    // those through all of Γ
    let q = FieldSpec::Rationals;
    let rows: Vec<[i64; 3]> = (0..3).cartesian_product(0..3).map(|(i, j)| [i, j, 1]).collect();
    let grid = PointConfiguration::from_ints(q, &rows).unwrap();
    for mask in 1u32..(1 << 9) - 1 {
        let first = SubsetSelector::new((0..9).filter(|i| mask >> i & 1 == 1).collect(), 9).unwrap();
        let second = first.complement(9);
        let g1 = grid.select(&first).unwrap();
        for d in 0..=3 {
            let failure = g1.gamma() - g1.conditions_imposed(d);
            let vanishing = if second.is_empty() {
                gale_core::pointconfig::binomial(2 + 3 - d, 2)
            } else {
                grid.forms_vanishing(&second, 3 - d)
            };
            let through_all = grid.forms_vanishing(&SubsetSelector::all(9), 3 - d);
            assert_eq!(failure, vanishing - through_all, "subset {:?}, d={d}", first.indices());
        }
    }
}
