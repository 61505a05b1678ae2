//! Acceptance gate. Runs every criterion, prints one line each with its
//! wall time against the limit, and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::Rng;

use gale_core::codes::{dual_code, grs_code, grs_dual_multipliers, min_distance, same_code, GrsSpec};
use gale_core::curves::{fit_rational_normal_curve, goppa_dual_check, ParameterList};
use gale_core::demo::{conic_sextuple, eleven_p6, generic_sextuple, seven_p3};
use gale_core::detnl::{verify_random, Sampler, DEFAULT_RETRIES};
use gale_core::gale::duality_defects;
use gale_core::pointconfig::binomial;
use gale_core::sample::{self, rng};
use gale_core::selfassoc::{
    complete_to_self_associated, direct_sum_self_association_check, is_arithmetically_gorenstein,
    self_association_witness, Completion, SelfAssociation,
};
use gale_core::{gale_transform, Equivalence, FieldSpec, PointConfiguration, Scalar, SubsetSelector, Verdict};

type Outcome = Result<(), String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn involution() -> Outcome {
    let mut g = rng(101);
    let mut done = 0;
    let mut skipped = 0;
    while done < 200 {
        let field = if done % 2 == 0 { FieldSpec::Rationals } else { gf(101) };
        let r = g.gen_range(1..=5);
        let gamma = g.gen_range(r + 3..=12);
        let cfg = sample::random_configuration(field, r, gamma, &mut g);
        let Ok(first) = gale_transform(&cfg) else {
            skipped += 1;
            continue;
        };
        let Ok(second) = gale_transform(&first.transform) else {
            skipped += 1;
            continue;
        };
        check(first.verify() && second.verify(), || format!("certificate failed on sample {done}"))?;
        check(second.transform.is_equivalent_labeled(&cfg) == Equivalence::Equivalent, || {
            format!("gale(gale(G)) differs from G on sample {done}")
        })?;
        check(second.transform.canonical_form() == cfg.canonical_form(), || {
            format!("canonical forms differ on sample {done}")
        })?;
        done += 1;
    }
    if skipped > 50 {
        return Err(format!("{skipped} samples had an undefined transform"));
    }
    Ok(())
}

fn rank_duality() -> Outcome {
    let mut g = rng(22);
    for n in 0..50 {
        let field = if n % 2 == 0 { FieldSpec::Rationals } else { gf(11) };
        let r = g.gen_range(1..=4);
        let gamma = g.gen_range(r + 3..=10);
        let cfg = loop {
            let c = sample::random_configuration(field, r, gamma, &mut g);
            if c.is_nondegenerate() {
                break c;
            }
        };
        for mask in 0u32..1 << gamma {
            let s = SubsetSelector::new((0..gamma).filter(|i| mask >> i & 1 == 1).collect(), gamma).unwrap();
            let d = duality_defects(&cfg, &s).map_err(|e| e.to_string())?;
            check(d.span_failure == d.condition_failure, || {
                format!("sample {n}, subset {:?}: {d:?}", s.indices())
            })?;
        }
    }
    Ok(())
}

fn pascal() -> Outcome {
    let q = FieldSpec::Rationals;
    let mut g = rng(9);
    for n in 0..100 {
        let cfg = conic_sextuple(q, &mut g);
        let SelfAssociation::Witness(w) = self_association_witness(&cfg).map_err(|e| e.to_string())? else {
            return Err(format!("conic sextuple {n} has no witness"));
        };
        check(w.certifies(&cfg, &cfg), || format!("witness {n} does not certify"))?;
        check(cfg.quadric_defect() == 1, || format!("conic sextuple {n}: defect {}", cfg.quadric_defect()))?;
        check(is_arithmetically_gorenstein(&cfg) == Ok(Verdict::Holds), || {
            format!("conic sextuple {n} not Gorenstein")
        })?;
    }
    for n in 0..100 {
        let cfg = generic_sextuple(q, &mut g);
        check(
            self_association_witness(&cfg) == Ok(SelfAssociation::NotSelfAssociated),
            || format!("generic sextuple {n} reported self-associated"),
        )?;
    }
    Ok(())
}

fn castelnuovo() -> Outcome {
    let q = FieldSpec::Rationals;
    let mut g = rng(41);
    for r in 2..=4 {
        for n in 0..20 {
            let cfg = sample::random_lgp_configuration(q, r, r + 3, &mut g, 100).map_err(|e| e.to_string())?;
            let curve = fit_rational_normal_curve(&cfg).map_err(|e| format!("r={r}, sample {n}: {e}"))?;
            for i in 0..cfg.gamma() {
                check(curve.contains(cfg.point(i)), || format!("r={r}, sample {n}: point {i} off the curve"))?;
            }
            // the same points fitted through a different frame
            let reversed: Vec<usize> = (0..cfg.gamma()).rev().collect();
            let other = fit_rational_normal_curve(&cfg.permute(&reversed).unwrap())
                .map_err(|e| format!("r={r}, sample {n}, second fit: {e}"))?;
            for _ in 0..20 {
                let (a, b) = loop {
                    let a = q.from_i64(g.gen_range(-20..=20));
                    let b = q.from_i64(g.gen_range(-20..=20));
                    if !(a.is_zero() && b.is_zero()) {
                        break (a, b);
                    }
                };
                let p = curve.point(&a, &b);
                check(other.contains(&p), || format!("r={r}, sample {n}: extra point rejected by second fit"))?;
            }
        }
    }
    Ok(())
}

fn goppa() -> Outcome {
    let q = FieldSpec::Rationals;
    let mut g = rng(5);
    for n in 4..=9 {
        for h in 1..=n - 3 {
            let values: Vec<Scalar> = rand::seq::index::sample(&mut g, 41, n)
                .into_iter()
                .map(|v| q.from_i64(v as i64 - 20))
                .collect();
            let params = ParameterList::affine(q, &values).unwrap();
            let report = goppa_dual_check(&params, h).map_err(|e| format!("n={n}, h={h}: {e}"))?;
            check(report.passed(), || format!("n={n}, h={h}: {:?}", report.equivalence))?;
        }
    }
    Ok(())
}

fn grs_duality() -> Outcome {
    let f = gf(13);
    let mut brute = 0;
    for n in 2..=12 {
        for k in 1..n {
            let spec = GrsSpec::standard(f, n, k).map_err(|e| e.to_string())?;
            let code = grs_code(&spec).map_err(|e| e.to_string())?;
            let m = grs_dual_multipliers(&spec).map_err(|e| format!("n={n}, k={k}: {e}"))?;
            let dual_spec = spec.with(m, n - k).map_err(|e| e.to_string())?;
            let same = same_code(&dual_code(&code).unwrap(), &grs_code(&dual_spec).unwrap()).unwrap();
            check(same, || format!("n={n}, k={k}: dual is not the predicted GRS code"))?;
            if 13u128.pow(k as u32) <= gale_core::codes::MIN_DISTANCE_LIMIT {
                let d = min_distance(&code).map_err(|e| e.to_string())?;
                check(d == n - k + 1, || format!("n={n}, k={k}: distance {d}"))?;
                brute += 1;
            }
        }
    }
    check(brute > 0, || "no code was small enough to brute force".into())
}

fn completion() -> Outcome {
    let q = FieldSpec::Rationals;
    let five = sample::random_lgp_configuration(q, 2, 5, &mut rng(3), 100).unwrap();
    match complete_to_self_associated(&five, 1).map_err(|e| e.to_string())? {
        Completion::Completed { configuration, witness, .. } => {
            check(witness.certifies(&configuration, &configuration), || "five-point witness".into())?
        }
        other => return Err(format!("five points: {other:?}")),
    }
    let report = eleven_p6(q, 11, 5).map_err(|e| e.to_string())?;
    check(report.planes.len() == 5 && report.same_plane(), || {
        "eleven points: added triples span different planes".into()
    })?;
    let seven = sample::random_lgp_configuration(q, 2, 7, &mut rng(4), 100).unwrap();
    let c = complete_to_self_associated(&seven, 1).map_err(|e| e.to_string())?;
    check(c == Completion::NotCompletable, || format!("seven points: {c:?}"))
}

fn crafted_degenerate(r: usize, k: usize) -> PointConfiguration {
    // many points crowded into a low-dimensional subspace
    let q = FieldSpec::Rationals;
    let gamma = 2 * r + 2;
    let mut g = rng((r * 100 + k) as u64);
    loop {
        // points 0..crowd lie in span(e_0, …, e_{dim−1}), a line or larger
        let dim = 2 + k % (r - 1);
        let crowd = (gamma * dim).div_ceil(r + 1) + 1 + k % 2;
        let rows: Vec<Vec<Scalar>> = (0..gamma)
            .map(|i| {
                let mut v = sample::small_int_vector(q, r + 1, 5, &mut g);
                if i < crowd.min(gamma) {
                    for x in v.iter_mut().skip(dim) {
                        *x = q.zero();
                    }
                }
                v
            })
            .collect();
        if let Ok(cfg) = PointConfiguration::new(q, r, rows) {
            return cfg;
        }
    }
}

fn two_bases_vs_semistable() -> Outcome {
    let mut g = rng(88);
    let fields = [FieldSpec::Rationals, gf(3), gf(5), gf(7)];
    let mut disagreements = Vec::new();
    let mut unstable = 0;
    let mut run = |cfg: &PointConfiguration, label: String| -> Outcome {
        let split = cfg.partition_into_two_bases().map_err(|e| e.to_string())?.is_some();
        let semi = cfg.is_semistable().map_err(|e| e.to_string())?;
        if !semi {
            unstable += 1;
        }
        if split != semi {
            disagreements.push(label);
        }
        Ok(())
    };
    for n in 0..200 {
        let field = fields[n % fields.len()];
        let r = g.gen_range(1..=6);
        let max = field.modulus().map_or(usize::MAX, |p| ((p.pow(r as u32 + 1) - 1) / (p - 1)) as usize);
        if 2 * r + 2 > max {
            continue;
        }
        let cfg = sample::random_configuration(field, r, 2 * r + 2, &mut g);
        run(&cfg, format!("random {n}"))?;
    }
    for k in 0..20 {
        let r = 2 + k % 5;
        run(&crafted_degenerate(r, k), format!("crafted {k}"))?;
    }
    check(disagreements.is_empty(), || format!("disagree on {disagreements:?}"))?;
    check(unstable >= 20, || format!("only {unstable} unstable samples"))
}

fn direct_sums() -> Outcome {
    let q = FieldSpec::Rationals;
    let mut g = rng(12);
    let a = conic_sextuple(q, &mut g);
    let b = conic_sextuple(q, &mut g);
    let generic = generic_sextuple(q, &mut g);
    let both = direct_sum_self_association_check(&a, &b).map_err(|e| e.to_string())?;
    check(both.sum == Verdict::Holds && both.sum_defect == 2 && both.consistent(), || {
        format!("conic + conic: {both:?}")
    })?;
    let mixed = direct_sum_self_association_check(&a, &generic).map_err(|e| e.to_string())?;
    check(mixed.sum == Verdict::Fails && mixed.consistent(), || format!("conic + generic: {mixed:?}"))
}

fn veronese_gale() -> Outcome {
    for (r, s, p, runs) in [(2, 2, 11, 10), (2, 3, 31, 3)] {
        for seed in 0..runs {
            let run = verify_random(gf(p), r, s, seed, DEFAULT_RETRIES, Sampler::Points)
                .map_err(|e| format!("(r,s)=({r},{s}), seed {seed}: {e}"))?;
            let degree = binomial(r + s, s);
            check(
                run.report.degree == degree
                    && run.report.gamma_v.gamma() == degree
                    && run.report.gamma_w.gamma() == degree,
                || format!("(r,s)=({r},{s}), seed {seed}: wrong degree"),
            )?;
            check(!run.report.skipped() && run.report.passed(), || {
                format!("(r,s)=({r},{s}), seed {seed}: {:?}", run.report.outcome)
            })?;
        }
    }
    Ok(())
}

fn seven_points() -> Outcome {
    for seed in 1..=10 {
        let report = seven_p3(101, seed, 20).map_err(|e| format!("seed {seed}: {e}"))?;
        check(report.passed(), || format!("seed {seed}: {:?}", report.outcome))?;
    }
    Ok(())
}

fn cayley_bacharach() -> Outcome {
    // x(x−z)(x−2z) = y(y−z)(y−2z) = 0
    let q = FieldSpec::Rationals;
    let rows: Vec<[i64; 3]> = (0..3).cartesian_product(0..3).map(|(i, j)| [i, j, 1]).collect();
    let grid = PointConfiguration::from_ints(q, &rows).unwrap();
    check(grid.conditions_imposed(3) == 8, || {
        format!("nine points impose {} conditions", grid.conditions_imposed(3))
    })?;
    for skip in 0..9 {
        let s = SubsetSelector::new((0..9).filter(|&i| i != skip).collect(), 9).unwrap();
        let eight = grid.select(&s).unwrap();
        check(eight.conditions_imposed(3) == 8, || format!("without point {skip}: dependent"))?;
    }
    Ok(())
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("gale involution", 10, involution),
        ("span/condition rank duality", 30, rank_duality),
        ("six points on a conic", 10, pascal),
        ("rational normal curve through r+3 points", 30, castelnuovo),
        ("Goppa duality on the line", 20, goppa),
        ("GRS duality and MDS distance", 60, grs_duality),
        ("completion to self-associated sets", 30, completion),
        ("two bases iff semistable", 30, two_bases_vs_semistable),
        ("direct sums", 5, direct_sums),
        ("Veronese Gale duality of determinantal loci", 120, veronese_gale),
        ("seven points of P^3 and the eighth point", 120, seven_points),
        ("Cayley-Bacharach on a cubic grid", 5, cayley_bacharach),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            check(elapsed <= Duration::from_secs(*limit), || format!("over the {limit}s limit"))
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({:.2}s / {limit}s)", i + 1, elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {name} ({:.2}s / {limit}s): {msg}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
