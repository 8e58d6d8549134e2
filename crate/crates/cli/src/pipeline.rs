//! Orchestration: group → Molien series → degrees → invariants →
//! harmonics → per-weight eigenspace certificates.

use std::collections::BTreeMap;
use std::time::Instant;

use eigenspace_core::eigen::{
    certify, dot, dual_cyclic_check, eigen_check, equivariance_check, intertwiner,
    plane_wave_symbol_check, InducedModel, Weight, NON_GENERIC_STATUS,
};
use eigenspace_core::group::is_pseudo_reflection_group;
use eigenspace_core::invariants::{
    compute_harmonics, find_fundamental_invariants, verify_product_decomposition,
    FundamentalInvariants, HarmonicSpace,
};
use eigenspace_core::numeric::DEFAULT_PRECISION;
use eigenspace_core::poly::{invariant_subspace, jacobian_independent};
use eigenspace_core::series::{default_truncation, extract_degrees, molien, series_identity_holds, SeriesQ};
use eigenspace_core::{Cyclotomic, Rational, ReflectionGroup};
use rand_chacha::ChaCha8Rng;

use crate::report::{
    Check, EigenspaceReport, GroupInfo, HarmonicsReport, InvariantsReport, MolienReport, Report,
    SampleCount, NOT_RUN, SCHEMA_VERSION, TOOL_VERSION,
};
use crate::sampling;

pub const DEGREE_EXTRACTION_FAILURE: &str = "lemma-4.2/degree-extraction";
pub const GENERATOR_FAILURE: &str = "lemma-4.2/fundamental-invariants";
pub const HARMONICS_FAILURE: &str = "thm-4.11/harmonics";
/// Molien coefficients are compared with Reynolds-projection ranks up to
/// this degree.
pub const REYNOLDS_CHECK_DEGREE: usize = 8;
pub const DEFAULT_SAMPLES: usize = 20;

pub const CONVENTION_NOTE: &str = "weights are written lambda = i*l with l real; an invariant j acts on \
the eigenspace by j(lambda), so the symbol (x1^2 + ... + xn^2)/4 gives (lambda.lambda)/4 = -(l.l)/4; \
formulas that write lambda_k for the real entries l_k differ from this by the sign of even-degree terms";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Info,
    Molien,
    Invariants,
    Harmonics,
    Eigenspace,
    All,
}

impl Stage {
    pub fn command(self) -> &'static str {
        match self {
            Stage::Info => "info",
            Stage::Molien => "molien",
            Stage::Invariants => "invariants",
            Stage::Harmonics => "harmonics",
            Stage::Eigenspace => "eigenspace",
            Stage::All => "verify-all",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub max_degree: Option<usize>,
    pub precision: u32,
    pub seed: u64,
    pub samples: usize,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_degree: None,
            precision: DEFAULT_PRECISION,
            seed: sampling::DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            timings: false,
        }
    }
}

/// The enumerated built-in groups used by the batteries: every group of
/// order at most `max_order` among dihedral:3..12, symmetric:1..4,
/// hyperoctahedral:1..3 and trivial:1..3.
pub fn builtin_catalog(max_order: usize) -> Vec<ReflectionGroup> {
    let specs = (3..=12)
        .map(|n| format!("dihedral:{n}"))
        .chain((1..=4).map(|n| format!("symmetric:{n}")))
        .chain((1..=3).map(|n| format!("hyperoctahedral:{n}")))
        .chain((1..=3).map(|n| format!("trivial:{n}")));
    specs
        .map(|s| eigenspace_core::builtin(&s).expect("catalog specs are valid"))
        .filter(|g| g.order() <= max_order)
        .collect()
}

pub fn group_info(group: &ReflectionGroup) -> GroupInfo {
    GroupInfo {
        name: group.name().to_string(),
        dimension: group.dimension(),
        order: group.order(),
        cyclotomic_order: group.field_order(),
        reflection_count: group.reflection_count(),
        orthogonal: group.check_orthogonal().is_ok(),
        pseudo_reflection_group: is_pseudo_reflection_group(group).unwrap_or(false),
    }
}

struct Run<'a> {
    opts: &'a Options,
    report: Report,
    timings: BTreeMap<String, f64>,
    clock: Instant,
}

impl<'a> Run<'a> {
    fn lap(&mut self, name: &str) {
        if self.opts.timings {
            let now = Instant::now();
            let ms = (now - self.clock).as_secs_f64() * 1000.0;
            self.timings.insert(name.to_string(), ms);
            self.clock = now;
        }
    }

    fn check(&mut self, key: &str, check: Check) {
        self.report.checks.insert(key.to_string(), check);
    }

    fn abort(&mut self, failure: &str, pending: &[&str]) {
        self.report.failure = Some(failure.to_string());
        for key in pending {
            self.report
                .checks
                .entry(key.to_string())
                .or_insert_with(|| Check::with_status(NOT_RUN, format!("stopped at {failure}")));
        }
    }

    fn finish(mut self) -> Report {
        if self.opts.timings {
            self.report.timings_ms = Some(self.timings);
        }
        self.report
    }
}

/// Runs the pipeline up to `stage`. When no weights are supplied the
/// eigenspace stages draw one generic weight from the seed.
pub fn run(stage: Stage, group: &ReflectionGroup, weights: &[Weight], opts: &Options) -> Report {
    let mut run = Run {
        opts,
        report: Report {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            command: stage.command().to_string(),
            seed: opts.seed,
            precision: opts.precision,
            group: group_info(group),
            molien: None,
            invariants: None,
            harmonics: None,
            eigenspace: Vec::new(),
            checks: BTreeMap::new(),
            failure: None,
            timings_ms: None,
        },
        timings: BTreeMap::new(),
        clock: Instant::now(),
    };
    run.lap("info");
    if stage == Stage::Info {
        return run.finish();
    }
    if stage == Stage::All {
        let g = &run.report.group;
        let ok = g.orthogonal && g.pseudo_reflection_group;
        let detail = format!(
            "{} pseudo-reflections among {} orthogonal elements; generated by them: {}",
            g.reflection_count, g.order, g.pseudo_reflection_group
        );
        run.check("def-1.1", Check::new(ok, detail));
    }

    let pending: &[&str] = match stage {
        Stage::All => &["lemma-4.5", "thm-4.11", "thm-4.14", "thm-3.10"],
        Stage::Invariants => &["lemma-4.5"],
        Stage::Harmonics => &["lemma-4.5", "thm-4.11"],
        Stage::Eigenspace => &["thm-4.14", "thm-3.10"],
        _ => &[],
    };

    let order = group.order();
    let requested = opts.max_degree.unwrap_or_else(|| default_truncation(order));
    let working = requested.max(default_truncation(order));
    let series = match molien(group, working) {
        Ok(s) => s,
        Err(e) => {
            run.check("lemma-4.3", Check::new(false, e.to_string()));
            run.abort("lemma-4.3", pending);
            return run.finish();
        }
    };
    let coefficients = series.to_u64().expect("molien coefficients are integers");
    let reynolds_to = requested.min(REYNOLDS_CHECK_DEGREE);
    let mismatch = (0..=reynolds_to)
        .find(|&k| invariant_subspace(group, k as u32).len() as u64 != coefficients[k]);
    let degrees = extract_degrees(&series, group.dimension(), order);
    run.report.molien = Some(MolienReport {
        truncation: requested,
        coefficients: coefficients[..=requested].to_vec(),
        reynolds_checked_to: reynolds_to,
        degrees: degrees.as_ref().ok().map(|d| d.degrees().to_vec()),
        degree_error: degrees.as_ref().err().map(ToString::to_string),
    });
    if stage == Stage::Molien || stage == Stage::All {
        let detail = match mismatch {
            None => format!("nonnegative integer coefficients; equal to Reynolds ranks up to degree {reynolds_to}"),
            Some(k) => format!("coefficient of t^{k} differs from the Reynolds rank"),
        };
        run.check("lemma-4.3", Check::new(mismatch.is_none(), detail));
    }
    run.lap("molien");
    if stage == Stage::Molien {
        return run.finish();
    }
    if degrees.is_err() {
        run.abort(DEGREE_EXTRACTION_FAILURE, pending);
        return run.finish();
    }

    let f = match find_fundamental_invariants(group) {
        Ok(f) => f,
        Err(e) => {
            run.check("lemma-4.5", Check::new(false, e.to_string()));
            run.abort(GENERATOR_FAILURE, pending);
            return run.finish();
        }
    };
    if stage != Stage::Eigenspace {
        let product = f.degrees.product();
        let independent = jacobian_independent(&f.generators).unwrap_or(false);
        let ok = product == order as u64 && f.generators.len() == group.dimension() && independent;
        run.report.invariants = Some(InvariantsReport {
            degrees: f.degrees.degrees().to_vec(),
            degree_product: product,
            generators: f.generators.iter().map(ToString::to_string).collect(),
            jacobian_independent: independent,
        });
        run.check(
            "lemma-4.5",
            Check::new(ok, format!("product of degrees {product}, |K| = {order}")),
        );
    }
    run.lap("invariants");
    if stage == Stage::Invariants {
        return run.finish();
    }

    let h = match compute_harmonics(group, &f) {
        Ok(h) => h,
        Err(e) => {
            run.check("thm-4.11", Check::new(false, e.to_string()));
            run.abort(HARMONICS_FAILURE, pending);
            return run.finish();
        }
    };
    if stage != Stage::Eigenspace {
        run.report.harmonics = Some(harmonics_report(group, &series, &f, &h));
        let hr = run.report.harmonics.as_ref().expect("just set");
        let ok = hr.total == order && hr.series_identity && hr.product_decomposition;
        let detail = format!(
            "dim H = {} = |K|: {}; molien * harmonic series = (1-t)^-n: {}; S = I*H: {}",
            hr.total,
            hr.total == order,
            hr.series_identity,
            hr.product_decomposition
        );
        run.check("thm-4.11", Check::new(ok, detail));
    }
    run.lap("harmonics");
    if stage == Stage::Harmonics {
        return run.finish();
    }

    let mut rng = sampling::rng(opts.seed);
    let weights: Vec<Weight> = if weights.is_empty() {
        vec![sampling::generic_weight(&mut rng, group)]
    } else {
        weights.to_vec()
    };
    let translations = sampling::spanning_translations(&mut rng, group.dimension());
    for w in &weights {
        let section = eigenspace_report(group, &f, &h, w, &translations, opts, &mut rng);
        run.report.eigenspace.push(section);
    }
    let (c414, c310) = eigenspace_checks(order, &run.report.eigenspace);
    run.check("thm-4.14", c414);
    run.check("thm-3.10", c310);
    run.lap("eigenspace");
    run.finish()
}

fn harmonics_report(
    group: &ReflectionGroup,
    series: &SeriesQ,
    f: &FundamentalInvariants,
    h: &HarmonicSpace,
) -> HarmonicsReport {
    let top = f.degrees.top_harmonic_degree();
    HarmonicsReport {
        dims: h.dims(),
        total: h.total_dimension(),
        series_identity: series_identity_holds(series, &f.degrees, group.dimension()),
        product_decomposition: verify_product_decomposition(group, f, h, top).verified,
        basis: h
            .basis_by_degree
            .iter()
            .map(|ps| ps.iter().map(ToString::to_string).collect())
            .collect(),
    }
}

/// Certificates for one weight.
pub fn eigenspace_report(
    group: &ReflectionGroup,
    f: &FundamentalInvariants,
    h: &HarmonicSpace,
    w: &Weight,
    translations: &[Vec<Cyclotomic>],
    opts: &Options,
    rng: &mut ChaCha8Rng,
) -> EigenspaceReport {
    let m = InducedModel::new(group, w.clone()).expect("weight dimension checked by caller");
    let cert = certify(&m, h, translations, opts.precision).expect("inputs validated");
    let all_waves = intertwiner(&m, &m.fixed_vector());
    let lambda = w.lambda();
    let mut passed = 0;
    for _ in 0..opts.samples {
        let g = sampling::group_element(rng, group);
        let v = m.vector(&sampling::model_coordinates(rng, group.order()));
        if equivariance_check(&m, &g, &v).expect("valid sample") {
            passed += 1;
        }
    }
    let dual = sampling::dual_samples(rng, group);
    let quarter = dot(lambda, lambda).scale(&Rational::new(1.into(), 4.into()));
    EigenspaceReport {
        weight: lambda.iter().map(ToString::to_string).collect(),
        generic: cert.generic,
        orbit_size_distinct: cert.orbit_size_distinct,
        stabilizer_order: m.orbit().multiplicity(),
        evaluation_rank: cert.evaluation_rank,
        commutant_dim: cert.commutant.numeric,
        commutant_dim_exact: cert.commutant.exact,
        irreducible_certified: cert.irreducible_certified,
        status: cert.status,
        eigen_check: eigen_check(&all_waves, f, w),
        symbol_check: f.generators.iter().all(|j| plane_wave_symbol_check(j, lambda, 2)),
        invariant_values: f.generators.iter().map(|j| j.evaluate(lambda).to_string()).collect(),
        quarter_square_norm: quarter.to_string(),
        equivariance: SampleCount {
            tested: opts.samples,
            passed,
        },
        dual_cyclic: dual_cyclic_check(&m, &dual, opts.precision).expect("samples cover K"),
        note: CONVENTION_NOTE.to_string(),
    }
}

fn eigenspace_checks(order: usize, sections: &[EigenspaceReport]) -> (Check, Check) {
    let generic: Vec<&EigenspaceReport> = sections.iter().filter(|e| e.generic).collect();
    let membership = sections.iter().all(|e| e.eigen_check && e.symbol_check);
    let c414 = if !membership {
        Check::new(false, "an orbit plane wave is not in the eigenspace")
    } else if generic.is_empty() {
        Check::with_status(NON_GENERIC_STATUS, "no generic weight supplied")
    } else {
        let certified = generic.iter().filter(|e| e.irreducible_certified).count();
        Check::new(
            certified == generic.len(),
            format!(
                "{certified}/{} generic weights: evaluation rank {order} and commutant dimension 1",
                generic.len()
            ),
        )
    };
    let equivariant = sections.iter().all(|e| e.equivariance.passed == e.equivariance.tested);
    let injective = generic
        .iter()
        .all(|e| e.dual_cyclic && e.evaluation_rank == order);
    let c310 = Check::new(
        equivariant && injective,
        format!(
            "equivariance on all samples: {equivariant}; cyclic dual vector and injective intertwiner for generic weights: {injective}"
        ),
    );
    (c414, c310)
}
