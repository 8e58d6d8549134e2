//! Acceptance battery. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use eigenspace_cli::pipeline::{self, builtin_catalog, Options, Stage, CONVENTION_NOTE};
use eigenspace_cli::sampling;
use eigenspace_core::eigen::{
    commutant_dimension, eigen_check, eigenvalue, equivariance_check, harmonic_evaluation_rank,
    intertwiner, plane_wave_symbol_check, InducedModel, Weight,
};
use eigenspace_core::group::is_pseudo_reflection_group;
use eigenspace_core::invariants::{
    compute_harmonics, find_fundamental_invariants, in_subalgebra, subalgebra_dimension,
};
use eigenspace_core::linalg;
use eigenspace_core::poly::{reynolds, GradedBasis};
use eigenspace_core::series::{
    default_truncation, extract_degrees, molien, series_identity_holds, SeriesError,
};
use eigenspace_core::{builtin, Cyclotomic, Poly, Rational, ReflectionGroup};

const PRECISION: u32 = 128;

struct Outcome {
    failures: Vec<String>,
    cases: usize,
    slowest: Duration,
    limit: Duration,
    unit: &'static str,
    extra: Option<String>,
}

impl Outcome {
    fn new(limit_secs: u64, unit: &'static str) -> Self {
        Outcome {
            failures: Vec::new(),
            cases: 0,
            slowest: Duration::ZERO,
            limit: Duration::from_secs(limit_secs),
            unit,
            extra: None,
        }
    }

    /// Runs one timed case; `body` returns a failure description or None.
    fn case(&mut self, name: &str, body: impl FnOnce() -> Option<String>) {
        let start = Instant::now();
        let result = body();
        let elapsed = start.elapsed();
        self.cases += 1;
        self.slowest = self.slowest.max(elapsed);
        if let Some(msg) = result {
            self.failures.push(format!("{name}: {msg}"));
        }
        if elapsed > self.limit {
            self.failures.push(format!("{name}: took {:.2}s", elapsed.as_secs_f64()));
        }
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn outcome(r: Result<(), String>) -> Option<String> {
    r.err()
}

fn pipeline_parts(g: &ReflectionGroup) -> Result<(eigenspace_core::invariants::FundamentalInvariants, eigenspace_core::invariants::HarmonicSpace), String> {
    let f = find_fundamental_invariants(g).map_err(|e| e.to_string())?;
    let h = compute_harmonics(g, &f).map_err(|e| e.to_string())?;
    Ok((f, h))
}

fn reflection_battery() -> Vec<ReflectionGroup> {
    builtin_catalog(48)
        .into_iter()
        .filter(|g| g.reflection_count() > 0)
        .collect()
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new(5, "n");
    for n in 3..=8usize {
        out.case(&format!("dihedral:{n}"), || {
            outcome((|| {
                let g = builtin(&format!("dihedral:{n}")).map_err(|e| e.to_string())?;
                expect(g.order() == 2 * n, || format!("order {}", g.order()))?;
                let (f, h) = pipeline_parts(&g)?;
                let mut want = vec![2u32, n as u32];
                want.sort();
                expect(f.degrees.degrees() == want.as_slice(), || format!("degrees {:?}", f.degrees.degrees()))?;
                expect(f.degrees.product() == 2 * n as u64, || "degree product".into())?;
                expect(h.total_dimension() == 2 * n, || format!("dim H = {}", h.total_dimension()))?;
                let mut profile = vec![1usize];
                profile.extend(std::iter::repeat_n(2, n - 1));
                profile.push(1);
                expect(h.dims() == profile, || format!("profile {:?}", h.dims()))
            })())
        });
    }
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new(10, "n");
    for n in 3..=8u32 {
        out.case(&format!("dihedral:{n}"), || {
            outcome((|| {
                let g = builtin(&format!("dihedral:{n}")).map_err(|e| e.to_string())?;
                let f = find_fundamental_invariants(&g).map_err(|e| e.to_string())?;
                let x = Poly::var(2, 0);
                let iy = Poly::var(2, 1).scale(&Cyclotomic::i());
                let reference = [
                    x.pow(2).add(&Poly::var(2, 1).pow(2)),
                    x.add(&iy).pow(n).add(&x.sub(&iy).pow(n)),
                ];
                for d in 0..=2 * n {
                    let a = subalgebra_dimension(&f.generators, 2, d);
                    let b = subalgebra_dimension(&reference, 2, d);
                    expect(a == b, || format!("degree {d}: {a} vs {b}"))?;
                }
                expect(reference.iter().all(|p| in_subalgebra(&f.generators, p)), || "reference not generated".into())?;
                expect(f.generators.iter().all(|p| in_subalgebra(&reference, p)), || "generator not in reference algebra".into())
            })())
        });
    }
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new(10, "group");
    let catalog = builtin_catalog(48);
    out.extra = Some(format!("{} groups", catalog.len()));
    for g in &catalog {
        out.case(g.name(), || {
            outcome((|| {
                let t = default_truncation(g.order()).max(2 * g.order());
                let m = molien(g, t).map_err(|e| e.to_string())?;
                let d = extract_degrees(&m, g.dimension(), g.order()).map_err(|e| e.to_string())?;
                expect(series_identity_holds(&m, &d, g.dimension()), || format!("identity fails to degree {t}"))
            })())
        });
    }
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new(30, "group");
    let mut rng = sampling::rng(4);
    for g in reflection_battery() {
        out.case(g.name(), || {
            outcome((|| {
                let (_, h) = pipeline_parts(&g)?;
                let order = g.order();
                let ys = sampling::spanning_translations(&mut rng, g.dimension());
                let measure = |w: &Weight| -> Result<(usize, usize), String> {
                    let m = InducedModel::new(&g, w.clone()).map_err(|e| e.to_string())?;
                    let rank = harmonic_evaluation_rank(&m, &h).map_err(|e| e.to_string())?;
                    let cd = commutant_dimension(&m, &ys, PRECISION).map_err(|e| e.to_string())?;
                    expect(cd.agree(), || format!("weight ({w}): numeric {} vs exact {}", cd.numeric, cd.exact))?;
                    Ok((rank, cd.exact))
                };
                for _ in 0..20 {
                    let w = sampling::generic_weight(&mut rng, &g);
                    let (rank, cd) = measure(&w)?;
                    expect(rank == order && cd == 1, || format!("generic ({w}): rank {rank}, commutant {cd}"))?;
                }
                for _ in 0..5 {
                    let w = sampling::fixed_weight(&mut rng, &g).expect("group has reflections");
                    let (rank, cd) = measure(&w)?;
                    expect(rank < order && cd > 1, || format!("non-generic ({w}): rank {rank}, commutant {cd}"))?;
                }
                let (_, cd) = measure(&Weight::zero(g.dimension()))?;
                expect(cd == order, || format!("zero weight: commutant {cd}"))
            })())
        });
    }
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new(10, "group");
    let mut rng = sampling::rng(5);
    for g in reflection_battery() {
        out.case(g.name(), || {
            outcome((|| {
                let (_, h) = pipeline_parts(&g)?;
                for round in 0..4 {
                    let w = sampling::generic_weight(&mut rng, &g);
                    let m = InducedModel::new(&g, w.clone()).map_err(|e| e.to_string())?;
                    for _ in 0..25 {
                        let x = sampling::group_element(&mut rng, &g);
                        let v = m.vector(&sampling::model_coordinates(&mut rng, g.order()));
                        let ok = equivariance_check(&m, &x, &v).map_err(|e| e.to_string())?;
                        expect(ok, || format!("round {round}: equivariance fails at rotation {}", x.rotation))?;
                    }
                    let rank = harmonic_evaluation_rank(&m, &h).map_err(|e| e.to_string())?;
                    expect(rank == g.order(), || format!("({w}): intertwiner kernel nontrivial, rank {rank}"))?;
                }
                Ok(())
            })())
        });
    }
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new(5, "run");
    let mut rng = sampling::rng(6);
    out.case("dihedral:3..8", || {
        outcome((|| {
            let quarter = Cyclotomic::from_rational(Rational::new(1.into(), 4.into()));
            for n in 3..=8 {
                let g = builtin(&format!("dihedral:{n}")).map_err(|e| e.to_string())?;
                let f = find_fundamental_invariants(&g).map_err(|e| e.to_string())?;
                let w = sampling::generic_weight(&mut rng, &g);
                let m = InducedModel::new(&g, w.clone()).map_err(|e| e.to_string())?;
                expect(eigen_check(&intertwiner(&m, &m.fixed_vector()), &f, &w), || format!("D{n}: eigen_check"))?;
                let r2 = Poly::var(2, 0).pow(2).add(&Poly::var(2, 1).pow(2));
                expect(f.generators[0] == r2, || format!("D{n}: degree-2 invariant {}", f.generators[0]))?;
                let symbol = r2.scale(&quarter);
                let l = w.lambda();
                let expected = l[0].mul(&l[0]).add(&l[1].mul(&l[1])).mul(&quarter);
                expect(eigenvalue(&symbol, &w) == expected, || format!("D{n}: eigenvalue"))?;
                for mu in &m.orbit().points {
                    expect(plane_wave_symbol_check(&symbol, mu, 3), || format!("D{n}: symbol on plane wave"))?;
                    expect(symbol.evaluate(mu) == expected, || format!("D{n}: orbit value"))?;
                }
            }
            Ok(())
        })())
    });
    out.extra = Some(format!("note: {CONVENTION_NOTE}"));
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new(5, "run");
    out.case("cyclic:3..8", || {
        outcome((|| {
            for n in 3..=8 {
                let g = builtin(&format!("cyclic:{n}")).map_err(|e| e.to_string())?;
                expect(is_pseudo_reflection_group(&g) == Ok(false), || format!("C{n} classified as reflection group"))?;
                let m = molien(&g, default_truncation(g.order())).map_err(|e| e.to_string())?;
                let err = extract_degrees(&m, 2, g.order());
                expect(matches!(err, Err(SeriesError::NotReflectionSeries { .. })), || format!("C{n}: {err:?}"))?;
                let report = pipeline::run(Stage::All, &g, &[], &Options::default());
                expect(
                    report.failure.as_deref() == Some(pipeline::DEGREE_EXTRACTION_FAILURE),
                    || format!("C{n}: failure {:?}", report.failure),
                )?;
            }
            Ok(())
        })())
    });
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new(10, "group");
    for spec in ["symmetric:3", "hyperoctahedral:2"] {
        out.case(spec, || {
            outcome((|| {
                let g = builtin(spec).map_err(|e| e.to_string())?;
                let series = molien(&g, 10).map_err(|e| e.to_string())?.to_u64().ok_or("non-integer")?;
                for k in 0..=10u32 {
                    let basis = GradedBasis::new(g.dimension(), k);
                    let rows: Vec<Vec<Cyclotomic>> = basis
                        .monomials
                        .iter()
                        .map(|mono| basis.coordinates(&reynolds(&g, &Poly::monomial(mono.clone(), Cyclotomic::one()))))
                        .collect();
                    let rank = linalg::rank(&rows) as u64;
                    expect(rank == series[k as usize], || format!("degree {k}: molien {} vs reynolds {rank}", series[k as usize]))?;
                }
                Ok(())
            })())
        });
    }
    out
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("dihedral battery", criterion_1),
        ("dihedral invariants vs Re z^n", criterion_2),
        ("molien x harmonic = free series", criterion_3),
        ("eigenspace rank and commutant", criterion_4),
        ("intertwiner equivariance", criterion_5),
        ("degree-2 eigenvalue spot check", criterion_6),
        ("cyclic negative control", criterion_7),
        ("molien vs reynolds ranks", criterion_8),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        all &= o.passed();
        println!(
            "criterion {}: {} {name} ({} cases, slowest {:.2}s, limit {}s per {})",
            i + 1,
            if o.passed() { "PASS" } else { "FAIL" },
            o.cases,
            o.slowest.as_secs_f64(),
            o.limit.as_secs(),
            o.unit
        );
        for f in &o.failures {
            println!("    {f}");
        }
        if let Some(extra) = &o.extra {
            println!("    {extra}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
