use std::path::{Path, PathBuf};

use gale_core::codes::{self, GrsSpec, LinearCode};
use gale_core::curves::{self, moment_vector, ParameterList};
use gale_core::demo::{self, SevenP3Outcome};
use gale_core::detnl::{self, Sampler, Side, TrilinearForm, VeroneseGaleOutcome};
use gale_core::format;
use gale_core::sample;
use gale_core::selfassoc::{self, Completion, SelfAssociation};
use gale_core::{gale_transform, Equivalence, Error, FieldSpec, PointConfiguration, Scalar, Verdict};
use itertools::Itertools;

use crate::recheck::{self, ensure};
use crate::report::{Document, Fact, Report, Status};
use crate::{CliError, CodeCommand, Command, DemoCommand, DetnlCommand, Property, SamplerArg};

type Result<T> = std::result::Result<T, CliError>;

pub fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Transform { file, output } => transform(file, output.as_deref()),
        Command::Check { property, file } => check(*property, &load(file, format::parse_configuration)?),
        Command::Complete { file, seed } => complete(&load(file, format::parse_configuration)?, *seed),
        Command::FitRnc { file } => fit_rnc(&load(file, format::parse_configuration)?),
        Command::GoppaCheck { n, h, seed, field } => goppa(field.field().expect("validated"), *n, *h, *seed),
        Command::Code(CodeCommand::Grs { p, n, k }) => code_grs(FieldSpec::prime(*p)?, *n, *k),
        Command::Code(CodeCommand::Dual { file }) => code_dual(&load(file, format::parse_matrix)?),
        Command::Code(CodeCommand::Mindist { file }) => code_mindist(&load(file, format::parse_matrix)?),
        Command::Detnl(DetnlCommand::Verify {
            r,
            s,
            p,
            seed,
            retries,
            sampler,
            tensor,
            save_tensor,
        }) => {
            let run = match tensor {
                Some(path) => {
                    let phi = load(path, format::parse_tensor)?;
                    let report = detnl::verify_veronese_gale(&phi)?;
                    detnl::DetnlRun {
                        form: phi,
                        report,
                        attempts: 1,
                    }
                }
                None => {
                    let (r, s) = (r.expect("required"), s.expect("required"));
                    let sampler = match sampler {
                        Some(SamplerArg::Points) => Sampler::Points,
                        Some(SamplerArg::Uniform) => Sampler::Uniform,
                        None if r == 2 || s == 2 => Sampler::Points,
                        None => Sampler::Uniform,
                    };
                    let field = FieldSpec::prime(p.expect("required"))?;
                    detnl::verify_random(field, r, s, *seed, *retries, sampler)?
                }
            };
            if let Some(path) = save_tensor {
                write(path, &format::write_tensor(&run.form))?;
            }
            detnl_report(&run)
        }
        Command::Demo(DemoCommand::Pascal { seed, field }) => pascal(field.field().expect("validated"), *seed),
        Command::Demo(DemoCommand::SevenP3 {
            seed,
            p,
            retries,
            twisted_cubic,
        }) => seven_p3(*p, *seed, *retries, *twisted_cubic),
        Command::Demo(DemoCommand::ElevenP6 { seed, runs, field }) => {
            eleven_p6(field.field().expect("validated"), *seed, *runs)
        }
    }
}

fn load<T>(path: &Path, parse: fn(&str) -> gale_core::Result<T>) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: PathBuf::from(path),
        source,
    })
}

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::Holds => Status::Holds,
        Verdict::Fails => Status::Fails,
        Verdict::Indeterminate => Status::Indeterminate,
    }
}

fn equivalence_status(e: Equivalence) -> Status {
    match e {
        Equivalence::Equivalent => Status::Holds,
        Equivalence::NotEquivalent => Status::Fails,
        Equivalence::Indeterminate => Status::Indeterminate,
    }
}

fn equivalence_name(e: Equivalence) -> &'static str {
    match e {
        Equivalence::Equivalent => "equivalent",
        Equivalence::NotEquivalent => "not-equivalent",
        Equivalence::Indeterminate => "indeterminate",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "true",
        Verdict::Fails => "false",
        Verdict::Indeterminate => "indeterminate",
    }
}

fn params_fact(params: &[(Scalar, Scalar)]) -> Fact {
    Fact::List(params.iter().map(|(a, b)| format!("{a}:{b}")).collect())
}

fn shape(report: Report, cfg: &PointConfiguration) -> Report {
    report
        .fact("field", Fact::Text(cfg.field().to_string()))
        .fact("dim", Fact::Int(cfg.r() as u64))
        .fact("points", Fact::Int(cfg.gamma() as u64))
}

fn transform(file: &Path, output: Option<&Path>) -> Result<Report> {
    let cfg = load(file, format::parse_configuration)?;
    let g = gale_transform(&cfg)?;
    let d = g.witness.entries();
    ensure(
        recheck::weighted_gram_vanishes(&cfg, &g.transform, d),
        "G^T diag(d) G' is not zero",
    )?;
    ensure(
        g.transform.coords().rank() == cfg.gamma() - cfg.r() - 1,
        "the transform does not have full rank",
    )?;
    let report = Report::new("transform", Status::Holds)
        .fact("source_dim", Fact::Int(cfg.r() as u64))
        .fact("source_points", Fact::Int(cfg.gamma() as u64))
        .fact("check", Fact::Text("G^T diag(d) G' = 0".into()))
        .fact("d", Fact::scalars(d))
        .with_document(Document::Configuration(g.transform));
    if let Some(path) = output {
        write(path, &report.to_text())?;
    }
    Ok(report)
}

/// First dependent subset of size `min(r+1, γ)`; every dependent subset
/// extends to one of that size.
fn dependent_subset(cfg: &PointConfiguration) -> Option<Vec<usize>> {
    let size = (cfg.r() + 1).min(cfg.gamma());
    (0..cfg.gamma())
        .combinations(size)
        .find(|s| cfg.coords().select_rows(s).rank() < size)
}

fn check(property: Property, cfg: &PointConfiguration) -> Result<Report> {
    let name = match property {
        Property::Lgp => "lgp",
        Property::Stable => "stable",
        Property::Semistable => "semistable",
        Property::SelfAssociated => "self-associated",
        Property::Ag => "ag",
        Property::TwoBases => "two-bases",
    };
    let command = format!("check {name}");
    match property {
        Property::Lgp => {
            let holds = cfg.is_linearly_general_position();
            let mut report = shape(Report::new(&command, if holds { Status::Holds } else { Status::Fails }), cfg);
            if !holds {
                let subset = dependent_subset(cfg);
                ensure(subset.is_some(), "no dependent subset found")?;
                report.push("dependent_subset", Fact::indices(&subset.unwrap()));
            }
            Ok(report)
        }
        Property::Stable | Property::Semistable => {
            let holds = if property == Property::Stable {
                cfg.is_stable()?
            } else {
                cfg.is_semistable()?
            };
            Ok(shape(Report::new(&command, if holds { Status::Holds } else { Status::Fails }), cfg))
        }
        Property::SelfAssociated => {
            let found = selfassoc::self_association_witness(cfg)?;
            let mut report = shape(Report::new(&command, verdict_status(found.verdict())), cfg);
            if let SelfAssociation::Witness(w) = &found {
                ensure(
                    recheck::weighted_gram_vanishes(cfg, cfg, w.entries()),
                    "sum d_i g_i g_i^T is not zero",
                )?;
                report.push("witness", Fact::scalars(w.entries()));
            }
            Ok(report)
        }
        Property::Ag => {
            let found = selfassoc::self_association_witness(cfg)?;
            let mut status = verdict_status(found.verdict());
            let mut facts = vec![("self_associated", Fact::Text(verdict_name(found.verdict()).into()))];
            if let SelfAssociation::Witness(w) = &found {
                ensure(
                    recheck::weighted_gram_vanishes(cfg, cfg, w.entries()),
                    "sum d_i g_i g_i^T is not zero",
                )?;
                let defect = cfg.gamma() - cfg.conditions_imposed(2);
                ensure(defect == cfg.quadric_defect(), "quadric defect disagrees")?;
                status = if defect == 1 { Status::Holds } else { Status::Fails };
                facts.push(("witness", Fact::scalars(w.entries())));
                facts.push(("quadric_defect", Fact::Int(defect as u64)));
            }
            let mut report = shape(Report::new(&command, status), cfg);
            for (k, v) in facts {
                report.push(k, v);
            }
            Ok(report)
        }
        Property::TwoBases => match cfg.partition_into_two_bases()? {
            Some((a, b)) => {
                let full = cfg.r() + 1;
                for half in [&a, &b] {
                    ensure(
                        half.len() == full && cfg.coords().select_rows(half.indices()).rank() == full,
                        "a half is not a basis",
                    )?;
                }
                Ok(shape(Report::new(&command, Status::Holds), cfg)
                    .fact("first", Fact::indices(a.indices()))
                    .fact("second", Fact::indices(b.indices())))
            }
            None => Ok(shape(Report::new(&command, Status::Fails), cfg)),
        },
    }
}

fn complete(cfg: &PointConfiguration, seed: u64) -> Result<Report> {
    match selfassoc::complete_to_self_associated(cfg, seed)? {
        Completion::Completed {
            configuration,
            form,
            added,
            witness,
        } => {
            ensure(configuration.gamma() == 2 * cfg.r() + 2, "wrong number of points")?;
            ensure(
                recheck::weighted_gram_vanishes(&configuration, &configuration, witness.entries()),
                "sum d_i g_i g_i^T is not zero",
            )?;
            let kept: Vec<usize> = added.complement(configuration.gamma()).indices().to_vec();
            ensure(
                kept.len() == cfg.gamma()
                    && kept
                        .iter()
                        .enumerate()
                        .all(|(i, &k)| recheck::proportional(cfg.point(i), configuration.point(k))),
                "the input points were not kept",
            )?;
            Ok(Report::new("complete", Status::Holds)
                .fact("seed", Fact::Int(seed))
                .fact("added", Fact::indices(added.indices()))
                .fact("form", Fact::scalars(form.diagonal()))
                .fact("witness", Fact::scalars(witness.entries()))
                .with_document(Document::Configuration(configuration)))
        }
        Completion::NotCompletable => Ok(Report::new("complete", Status::Fails).fact("seed", Fact::Int(seed))),
        Completion::Indeterminate => Ok(Report::new("complete", Status::Indeterminate).fact("seed", Fact::Int(seed))),
    }
}

fn fit_rnc(cfg: &PointConfiguration) -> Result<Report> {
    let (curve, params) = curves::fit_with_parameters(cfg)?;
    let r = cfg.r();
    let mut transcript = Vec::new();
    for (i, (a, b)) in params.params().iter().enumerate() {
        let image = curve.matrix().apply(&moment_vector(a, b, r));
        ensure(
            recheck::proportional(&image, cfg.point(i)),
            format!("M·ν({a}:{b}) is not point {i}"),
        )?;
        ensure(curves::rnc_contains(&curve, cfg.point(i)), format!("point {i} fails the rank test"))?;
        transcript.push(vec![i.to_string(), format!("{a}:{b}"), "on-curve".into()]);
    }
    Ok(shape(Report::new("fit-rnc", Status::Holds), cfg)
        .fact("degree", Fact::Int(curve.degree() as u64))
        .fact("parameters", params_fact(params.params()))
        .fact("matrix", Fact::matrix(curve.matrix()))
        .fact("transcript", Fact::Rows(transcript)))
}

/// `n` distinct parameters: residues over GF(p), integers in `[-2n, 2n)` over ℚ.
fn random_parameters(field: FieldSpec, n: usize, seed: u64) -> Result<ParameterList> {
    let mut rng = sample::rng(seed);
    let values: Vec<Scalar> = match field.modulus() {
        Some(p) => rand::seq::index::sample(&mut rng, p as usize, n)
            .into_iter()
            .map(|a| field.residue(a as u64))
            .collect(),
        None => rand::seq::index::sample(&mut rng, 4 * n, n)
            .into_iter()
            .map(|a| field.from_i64(a as i64 - 2 * n as i64))
            .collect(),
    };
    Ok(ParameterList::affine(field, &values)?)
}

fn goppa(field: FieldSpec, n: usize, h: usize, seed: u64) -> Result<Report> {
    let params = random_parameters(field, n, seed)?;
    let report = curves::goppa_dual_check(&params, h)?;
    if report.equivalence == Equivalence::Equivalent {
        ensure(
            report.transform_canonical.is_some() && report.transform_canonical == report.dual_canonical,
            "canonical forms differ",
        )?;
    }
    Ok(Report::new("goppa-check", equivalence_status(report.equivalence))
        .fact("field", Fact::Text(field.to_string()))
        .fact("seed", Fact::Int(seed))
        .fact("n", Fact::Int(n as u64))
        .fact("h", Fact::Int(h as u64))
        .fact("dual_degree", Fact::Int(report.dual_degree as u64))
        .fact("parameters", params_fact(params.params()))
        .fact("equivalence", Fact::Text(equivalence_name(report.equivalence).into())))
}

/// Minimum distance, or `skipped` when exhaustive search is too large.
fn distance_fact(code: &LinearCode) -> Result<(Fact, Option<usize>)> {
    match codes::min_distance(code) {
        Ok(d) => {
            ensure(
                d >= 1 && d <= code.length() - code.dimension() + 1,
                "distance violates the Singleton bound",
            )?;
            Ok((Fact::Int(d as u64), Some(d)))
        }
        Err(Error::TooLarge { .. }) => Ok((Fact::Text("skipped".into()), None)),
        Err(e) => Err(e.into()),
    }
}

fn check_duality(code: &LinearCode, dual: &LinearCode) -> Result<()> {
    ensure(
        recheck::rows_orthogonal(code.generator(), dual.generator()),
        "G·Hᵀ is not zero",
    )?;
    ensure(
        code.generator().rank() + dual.generator().rank() == code.length(),
        "dimensions do not add up to n",
    )
}

fn code_grs(field: FieldSpec, n: usize, k: usize) -> Result<Report> {
    let spec = GrsSpec::standard(field, n, k)?;
    let code = codes::grs_code(&spec)?;
    let multipliers = codes::grs_dual_multipliers(&spec)?;
    let dual_spec = spec.with(multipliers.clone(), n - k)?;
    let dual = codes::grs_code(&dual_spec)?;
    check_duality(&code, &dual)?;
    let (distance, d) = distance_fact(&code)?;
    let mut report = Report::new("code grs", Status::Holds)
        .fact("n", Fact::Int(n as u64))
        .fact("k", Fact::Int(k as u64))
        .fact("evaluation_points", params_fact(spec.points()))
        .fact("multipliers", Fact::scalars(spec.multipliers()))
        .fact("dual_multipliers", Fact::scalars(&multipliers))
        .fact("dual_generator", Fact::matrix(dual.generator()))
        .fact("min_distance", distance);
    if let Some(d) = d {
        report.push("mds", Fact::Bool(d == n - k + 1));
    }
    Ok(report.with_document(Document::Matrix(code.generator().clone())))
}

fn code_dual(m: &gale_core::ExactMatrix) -> Result<Report> {
    let code = LinearCode::new(m.clone())?;
    let dual = codes::dual_code(&code)?;
    check_duality(&code, &dual)?;
    Ok(Report::new("code dual", Status::Holds)
        .fact("n", Fact::Int(code.length() as u64))
        .fact("k", Fact::Int(code.dimension() as u64))
        .fact("dual_dimension", Fact::Int(dual.dimension() as u64))
        .with_document(Document::Matrix(dual.generator().clone())))
}

fn code_mindist(m: &gale_core::ExactMatrix) -> Result<Report> {
    let code = LinearCode::new(m.clone())?;
    let (distance, d) = distance_fact(&code)?;
    let status = if d.is_some() { Status::Holds } else { Status::Indeterminate };
    let (n, k) = (code.length(), code.dimension());
    let mut report = Report::new("code mindist", status)
        .fact("field", Fact::Text(code.field().to_string()))
        .fact("n", Fact::Int(n as u64))
        .fact("k", Fact::Int(k as u64))
        .fact("min_distance", distance)
        .fact("singleton_bound", Fact::Int((n - k + 1) as u64));
    if let Some(d) = d {
        report.push("mds", Fact::Bool(d == n - k + 1));
    }
    Ok(report)
}

/// `Σ φ[m][i][j]·xᵢ·yⱼ = 0` for every `m`.
fn pairs_annihilate(phi: &TrilinearForm, x: &[Scalar], y: &[Scalar]) -> bool {
    let f = phi.field();
    let (n_f, n_v, n_w) = phi.dims();
    (0..n_f).all(|m| {
        (0..n_v)
            .flat_map(|i| (0..n_w).map(move |j| (i, j)))
            .fold(f.zero(), |acc, (i, j)| &acc + &(&(phi.get(m, i, j) * &x[i]) * &y[j]))
            .is_zero()
    })
}

fn detnl_report(run: &detnl::DetnlRun) -> Result<Report> {
    let (phi, rep) = (&run.form, &run.report);
    let (r, s) = (phi.r(), phi.s());
    for i in 0..rep.gamma_v.gamma() {
        let (x, y) = (rep.gamma_v.point(i), rep.gamma_w.point(i));
        ensure(
            detnl::adjoint_eval(phi, Side::V, x)?.rank() == s,
            format!("point {i} of the V locus has no rank drop"),
        )?;
        ensure(
            detnl::adjoint_eval(phi, Side::W, y)?.rank() == r,
            format!("point {i} of the W locus has no rank drop"),
        )?;
        ensure(pairs_annihilate(phi, x, y), format!("pair {i} is not annihilated by the form"))?;
    }
    let (status, comparison, gale_pair) = match &rep.outcome {
        VeroneseGaleOutcome::Skipped => (Status::Holds, "skipped", None),
        VeroneseGaleOutcome::Checked { equivalence, gale_pair } => {
            let status = match (equivalence, gale_pair) {
                (Equivalence::Equivalent, Verdict::Holds) => Status::Holds,
                (Equivalence::Indeterminate, _) | (_, Verdict::Indeterminate) => Status::Indeterminate,
                _ => Status::Fails,
            };
            (status, equivalence_name(*equivalence), Some(*gale_pair))
        }
    };
    let mut report = Report::new("detnl verify", status)
        .fact("field", Fact::Text(phi.field().to_string()))
        .fact("r", Fact::Int(r as u64))
        .fact("s", Fact::Int(s as u64))
        .fact("attempts", Fact::Int(run.attempts as u64))
        .fact("degree", Fact::Int(rep.degree as u64))
        .fact("gamma_v", Fact::points(&rep.gamma_v))
        .fact("gamma_w", Fact::points(&rep.gamma_w))
        .fact("matching", Fact::indices(&rep.matching))
        .fact("comparison", Fact::Text(comparison.into()));
    if let Some(v) = gale_pair {
        report.push("gale_pair", Fact::Text(verdict_name(v).into()));
    }
    Ok(report)
}

fn pascal(field: FieldSpec, seed: u64) -> Result<Report> {
    let rep = demo::pascal(field, seed)?;
    let mut report = Report::new(
        "demo pascal",
        if rep.passed() {
            Status::Holds
        } else if rep.witness.verdict() == Verdict::Indeterminate || rep.generic.verdict() == Verdict::Indeterminate {
            Status::Indeterminate
        } else {
            Status::Fails
        },
    )
    .fact("field", Fact::Text(field.to_string()))
    .fact("seed", Fact::Int(seed))
    .fact("conic_points", Fact::points(&rep.conic_points))
    .fact("conic_self_associated", Fact::Text(verdict_name(rep.witness.verdict()).into()));
    if let SelfAssociation::Witness(w) = &rep.witness {
        ensure(
            recheck::weighted_gram_vanishes(&rep.conic_points, &rep.conic_points, w.entries()),
            "sum d_i g_i g_i^T is not zero",
        )?;
        report.push("witness", Fact::scalars(w.entries()));
    }
    report.push("quadric_defect", Fact::Int(rep.quadric_defect as u64));
    report.push("gorenstein", Fact::Text(verdict_name(rep.gorenstein).into()));
    report.push("generic_points", Fact::points(&rep.generic_points));
    report.push("generic_self_associated", Fact::Text(verdict_name(rep.generic.verdict()).into()));
    Ok(report)
}

fn seven_p3(p: u64, seed: u64, retries: usize, twisted: bool) -> Result<Report> {
    let rep = if twisted {
        demo::seven_p3_twisted_cubic(p, seed)?
    } else {
        demo::seven_p3(p, seed, retries)?
    };
    for q in 0..rep.quadrics.rows() {
        for i in 0..rep.points.gamma() {
            ensure(
                recheck::eval_form(rep.quadrics.row(q), rep.points.point(i), 2).is_zero(),
                format!("quadric {q} misses point {i}"),
            )?;
        }
    }
    let base = Report::new("demo seven-p3", Status::Holds)
        .fact("field", Fact::Text(rep.points.field().to_string()))
        .fact("seed", Fact::Int(seed))
        .fact("attempts", Fact::Int(rep.attempts as u64))
        .fact("points", Fact::points(&rep.points))
        .fact("quadrics", Fact::matrix(&rep.quadrics));
    let report = match &rep.outcome {
        SevenP3Outcome::Projection {
            eighth,
            projected,
            gale,
            equivalence,
        } => {
            for q in 0..rep.quadrics.rows() {
                ensure(
                    recheck::eval_form(rep.quadrics.row(q), eighth, 2).is_zero(),
                    format!("quadric {q} misses the eighth point"),
                )?;
            }
            ensure(
                (0..7).all(|i| !recheck::proportional(eighth, rep.points.point(i))),
                "the eighth point is one of the seven",
            )?;
            if *equivalence == Equivalence::Equivalent {
                let canon = projected.canonical_form();
                ensure(canon.is_some() && canon == gale.canonical_form(), "canonical forms differ")?;
            }
            let mut r = base.fact("branch", Fact::Text("projection".into()));
            r.set_status(equivalence_status(*equivalence));
            r.fact("eighth", Fact::scalars(eighth))
                .fact("projected", Fact::points(projected))
                .fact("gale", Fact::points(gale))
                .fact("equivalence", Fact::Text(equivalence_name(*equivalence).into()))
        }
        SevenP3Outcome::TwistedCubic { common_zeros, on_curve } => {
            let mut r = base
                .fact("branch", Fact::Text("twisted-cubic".into()))
                .fact("common_zeros", Fact::Int(*common_zeros as u64))
                .fact("on_curve", Fact::Bool(*on_curve));
            r.set_status(if *on_curve { Status::Holds } else { Status::Fails });
            r
        }
        SevenP3Outcome::Unusable { common_zeros } => {
            let mut r = base
                .fact("branch", Fact::Text("unusable".into()))
                .fact("common_zeros", Fact::Int(*common_zeros as u64));
            r.set_status(Status::Fails);
            r
        }
    };
    Ok(report)
}

fn eleven_p6(field: FieldSpec, seed: u64, runs: usize) -> Result<Report> {
    let rep = demo::eleven_p6(field, seed, runs)?;
    // redo each completion and re-certify it
    for (completion_seed, plane) in &rep.planes {
        match selfassoc::complete_to_self_associated(&rep.points, *completion_seed)? {
            Completion::Completed {
                configuration,
                added,
                witness,
                ..
            } => {
                ensure(
                    recheck::weighted_gram_vanishes(&configuration, &configuration, witness.entries()),
                    "sum d_i g_i g_i^T is not zero",
                )?;
                ensure(
                    demo::span_of(&configuration, added.indices()) == *plane,
                    "plane differs on recomputation",
                )?;
            }
            _ => return Err(CliError::Recheck("completion did not reproduce".into())),
        }
    }
    let same = rep.same_plane();
    let seeds: Vec<String> = rep.planes.iter().map(|(s, _)| s.to_string()).collect();
    let mut report = Report::new("demo eleven-p6", if same { Status::Holds } else { Status::Fails })
        .fact("field", Fact::Text(field.to_string()))
        .fact("seed", Fact::Int(seed))
        .fact("points", Fact::points(&rep.points))
        .fact("completion_seeds", Fact::List(seeds))
        .fact("same_plane", Fact::Bool(same));
    for (s, plane) in &rep.planes {
        report.push(&format!("plane_{s}"), Fact::matrix(plane));
    }
    Ok(report)
}
