//! Named verification suites and the parallel case runner.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qsuspend_core::fockrep::{lowering_coefficient_check, multi_indices, psi_gram, verify_relations};
use qsuspend_core::ktheory::{
    build_e, build_g, check_defect, check_lemma_m, classical_g, expected_trace, idempotency_residual,
    matrix_trace, pair_charge, pair_charge_entrywise, pair_epsilon, sphere_point, NCMatrix,
};
use qsuspend_core::ncalg::{check_local_confluence, Algebra, Preset};
use qsuspend_core::poisson::{
    determinant, pfaffian_recursive, structure_matrix, verify_poisson_map, verify_sphere_constraint,
    PairResidual, PoissonStructure,
};
use qsuspend_core::scalars::{rat_int, LaurentQ};
use qsuspend_core::semiclassical::verify_semiclassical;
use qsuspend_core::{Error as CoreError, Result as CoreResult};

use crate::report::{CaseResult, Status, SuiteReport, VerificationReport};

/// Suites run by `verify all`, in order.
pub const ALL: &[&str] = &[
    "confluence",
    "jacobi",
    "poisson-map",
    "constraint",
    "semiclassical",
    "relations",
    "lowering",
    "gram",
    "lemma",
    "defect",
    "idempotency",
    "traces",
    "pairings",
    "pfaffian",
];

/// Suites that exist but are not part of `all`.
pub const EXTRA: &[&str] = &["classical"];

pub const RELATION_TOLERANCE: f64 = 1e-12;
pub const PSI_TOLERANCE: f64 = 1e-10;
pub const PAIRING_TOLERANCE: f64 = 1e-6;
pub const PFAFFIAN_TOLERANCE: f64 = 1e-8;
pub const CLASSICAL_TOLERANCE: f64 = 1e-12;
pub const PFAFFIAN_POINTS: usize = 100;
pub const CLASSICAL_POINTS: usize = 50;

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub n: usize,
    pub q0: f64,
    pub trunc: Option<usize>,
    pub margin: usize,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(n: usize) -> Self {
        Self { n, q0: 0.5, trunc: None, margin: 4, seed: 7 }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub pass: bool,
    pub residual: Option<f64>,
    pub bound: Option<f64>,
    pub detail: Option<String>,
}

impl Outcome {
    fn exact(zero: bool, detail: Option<String>) -> Self {
        Self { pass: zero, residual: Some(if zero { 0.0 } else { 1.0 }), bound: None, detail }
    }

    fn within(residual: f64, tol: f64) -> Self {
        Self { pass: residual <= tol, residual: Some(residual), bound: Some(tol), detail: None }
    }

    fn with_detail(mut self, d: String) -> Self {
        self.detail = Some(d);
        self
    }
}

type CaseFn = Box<dyn Fn() -> CoreResult<Outcome> + Send + Sync>;

pub struct Case {
    pub id: String,
    run: CaseFn,
}

fn case<F>(id: String, f: F) -> Case
where
    F: Fn() -> CoreResult<Outcome> + Send + Sync + 'static,
{
    Case { id, run: Box::new(f) }
}

/// Errors that indicate a broken internal invariant rather than bad input.
pub fn is_internal(e: &CoreError) -> bool {
    matches!(e, CoreError::StepBudget { .. } | CoreError::NotDivisible)
}

fn run_case(c: &Case) -> CaseResult {
    let start = Instant::now();
    let out = (c.run)();
    let runtime = start.elapsed();
    match out {
        Ok(o) => CaseResult {
            id: c.id.clone(),
            status: if o.pass { Status::Pass } else { Status::Fail },
            residual: o.residual,
            bound: o.bound,
            runtime,
            detail: o.detail,
            internal_error: false,
        },
        Err(e) => CaseResult {
            id: c.id.clone(),
            status: Status::Fail,
            residual: None,
            bound: None,
            runtime,
            internal_error: is_internal(&e),
            detail: Some(e.to_string()),
        },
    }
}

fn presets(n: usize) -> Vec<Preset> {
    vec![Preset::PodlesSphere, Preset::PodlesProductPower(n), Preset::EvenSphere(n), Preset::OddPlane(n)]
}

fn structures(n: usize) -> Vec<PoissonStructure> {
    vec![
        PoissonStructure::PodlesStandard,
        PoissonStructure::ProductPodles(n),
        PoissonStructure::EvenSphereCoinduced(n),
        PoissonStructure::ChartPlane(n),
    ]
}

fn pair_residuals(res: &[PairResidual]) -> Outcome {
    let bad: Vec<String> = res
        .iter()
        .filter(|r| !r.residual.is_zero())
        .map(|r| format!("{{{}, {}}}", r.pair.0, r.pair.1))
        .collect();
    let worst = res.iter().map(|r| r.residual.max_abs_coeff()).fold(0.0, f64::max);
    Outcome {
        pass: bad.is_empty(),
        residual: Some(worst),
        bound: None,
        detail: Some(if bad.is_empty() {
            format!("{} pairs", res.len())
        } else {
            format!("nonzero on {}", bad.join(", "))
        }),
    }
}

fn zero_matrix(m: &NCMatrix) -> Outcome {
    let nonzero = m.entries().filter(|(_, _, f)| !f.is_zero()).count();
    Outcome::exact(nonzero == 0, (nonzero > 0).then(|| format!("{nonzero} nonzero entries")))
}

fn relation_levels(n: usize) -> usize {
    if n <= 2 {
        30
    } else {
        12
    }
}

fn pairing_levels(q0: f64) -> usize {
    if q0 > 0.7 {
        80
    } else {
        60
    }
}

fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// Seeded points of `C^n` for the chart Pfaffian check.
pub fn pfaffian_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32));
    (0..count).map(|_| (0..n).map(|_| random_complex(&mut rng, 1.5)).collect()).collect()
}

/// Seeded points `(t, a)` on the classical even sphere.
pub fn sphere_points(n: usize, count: usize, seed: u64) -> Vec<(f64, Vec<Complex64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 40));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let t: f64 = rng.gen_range(0.0..=1.0);
        let dir: Vec<Complex64> = (0..n).map(|_| random_complex(&mut rng, 1.0)).collect();
        if let Some(a) = sphere_point(t, &dir) {
            out.push((t, a));
        }
    }
    out
}

pub fn pfaffian_case(n: usize, point: &[Complex64]) -> CoreResult<Outcome> {
    let s = structure_matrix(n, point)?;
    let det = determinant(&s.matrix);
    let pf = pfaffian_recursive(n, point)?;
    let rel = (det - Complex64::new(pf * pf, 0.0)).norm() / det.norm();
    Ok(Outcome { pass: rel <= PFAFFIAN_TOLERANCE && pf > 0.0, ..Outcome::within(rel, PFAFFIAN_TOLERANCE) })
}

pub fn classical_case(t: f64, a: &[Complex64]) -> CoreResult<Outcome> {
    let p = classical_g(t, a)?;
    let rank = (1u64 << (a.len() - 1)) as f64;
    let trace_gap = (p.trace - Complex64::new(rank, 0.0)).norm();
    let worst = p.idempotency_residual.max(trace_gap);
    Ok(Outcome::within(worst, CLASSICAL_TOLERANCE))
}

/// The trace of `G` with `q` set to one, which must be the scalar `2^{n-1}`.
pub fn quantum_trace_at_one(n: usize) -> CoreResult<bool> {
    let alg = Algebra::new(Preset::EvenSphere(n));
    let tr = matrix_trace(&build_g(n)?)?.map_coeffs(|c| LaurentQ::constant(c.at_one()));
    Ok(tr == alg.scalar(LaurentQ::constant(rat_int(1 << (n - 1)))))
}

/// Concrete cases of one suite.
pub fn cases(suite: &str, cfg: SuiteConfig) -> Option<Vec<Case>> {
    let SuiteConfig { n, q0, trunc, margin, seed } = cfg;
    let mut out = Vec::new();
    match suite {
        "confluence" => {
            for p in presets(n) {
                out.push(case(format!("confluence/{p}"), move || {
                    let r = check_local_confluence(&Algebra::new(p))?;
                    Ok(Outcome {
                        pass: r.is_confluent(),
                        residual: Some(r.unresolved.len() as f64),
                        bound: None,
                        detail: Some(format!("{} overlaps", r.overlaps_checked)),
                    })
                }));
            }
        }
        "jacobi" => {
            for p in structures(n) {
                out.push(case(format!("jacobi/{p}"), move || {
                    let r = p.check_jacobi();
                    Ok(Outcome {
                        pass: r.failures.is_empty(),
                        residual: Some(r.max_residual()),
                        bound: None,
                        detail: Some(format!("{} triples", r.triples_checked)),
                    })
                }));
                out.push(case(format!("jacobi/{p}/relations"), move || {
                    Ok(Outcome::exact(p.relations_are_poisson(), None))
                }));
            }
        }
        "poisson-map" => {
            out.push(case(format!("poisson-map/n{n}"), move || Ok(pair_residuals(&verify_poisson_map(n)?))));
        }
        "constraint" => {
            out.push(case(format!("constraint/n{n}"), move || {
                let r = verify_sphere_constraint(n)?;
                Ok(Outcome::exact(r.is_zero(), (!r.is_zero()).then(|| r.to_string())))
            }));
        }
        "semiclassical" => {
            out.push(case(format!("semiclassical/n{n}"), move || {
                Ok(pair_residuals(&verify_semiclassical(n)?))
            }));
        }
        "relations" => {
            let levels = trunc.unwrap_or_else(|| relation_levels(n));
            out.push(case(format!("relations/{}", Preset::EvenSphere(n)), move || {
                let r = verify_relations(Preset::EvenSphere(n), q0, levels, margin)?;
                Ok(Outcome::within(r, RELATION_TOLERANCE).with_detail(format!("N={levels} margin={margin}")))
            }));
        }
        "lowering" => {
            for m in multi_indices(n, 3) {
                let levels = trunc.unwrap_or(8);
                for i in 1..=n {
                    let m = m.clone();
                    let id = format!("lowering/i{i}/m{}", join(&m));
                    out.push(case(id, move || {
                        Ok(Outcome::within(lowering_coefficient_check(i, &m, q0, levels)?, PSI_TOLERANCE))
                    }));
                }
            }
        }
        "gram" => {
            let levels = trunc.unwrap_or(8);
            out.push(case(format!("gram/n{n}"), move || {
                let ms = multi_indices(n, 3);
                let g = psi_gram(&ms, q0, levels)?;
                let mut worst: f64 = 0.0;
                for (i, row) in g.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        let id = if i == j { 1.0 } else { 0.0 };
                        worst = worst.max((v - id).abs());
                    }
                }
                Ok(Outcome::within(worst, PSI_TOLERANCE).with_detail(format!("{} vectors", ms.len())))
            }));
        }
        "lemma" => {
            for k in 1..=n {
                for l in k + 1..=n {
                    out.push(case(format!("lemma/n{n}/k{k}/l{l}"), move || {
                        Ok(zero_matrix(&check_lemma_m(n, k, l)?))
                    }));
                }
            }
        }
        "defect" => {
            for k in 1..=n {
                out.push(case(format!("defect/n{n}/k{k}"), move || Ok(zero_matrix(&check_defect(n, k)?))));
            }
        }
        "idempotency" => {
            out.push(case(format!("idempotency/n{n}"), move || Ok(zero_matrix(&idempotency_residual(n)?))));
        }
        "traces" => {
            out.push(case(format!("traces/G/n{n}"), move || {
                let alg = Algebra::new(Preset::EvenSphere(n));
                let tr = matrix_trace(&build_g(n)?)?;
                let want = expected_trace(&alg, n)?;
                Ok(Outcome::exact(tr == want, Some(tr.to_text())))
            }));
            for k in 1..=n {
                out.push(case(format!("traces/e/n{n}/k{k}"), move || {
                    let alg = Algebra::new(Preset::OddPlane(n));
                    let tr = matrix_trace(&build_e(n, k)?)?;
                    let want = expected_trace(&alg, k)?;
                    Ok(Outcome::exact(tr == want, Some(tr.to_text())))
                }));
            }
        }
        "pairings" => {
            out.push(case(format!("pairings/epsilon/n{n}"), move || {
                let e = pair_epsilon(n)?;
                let want = 1i64 << (n - 1);
                Ok(Outcome::exact(e == want, Some(format!("value {e}"))))
            }));
            let levels = trunc.unwrap_or_else(|| pairing_levels(q0));
            out.push(case(format!("pairings/charge/n{n}"), move || {
                let tb = pair_charge(n, q0, levels)?;
                let entry = pair_charge_entrywise(n, q0, levels)?;
                let gap = (tb.value + 1.0).abs();
                let consistent = tb.bound <= PAIRING_TOLERANCE
                    && (tb.value - entry.value).abs() <= tb.bound + entry.bound + 1e-12;
                Ok(Outcome {
                    pass: gap <= PAIRING_TOLERANCE && consistent,
                    residual: Some(gap),
                    bound: Some(tb.bound),
                    detail: Some(format!("value {} N={levels} q={q0}", tb.value)),
                })
            }));
        }
        "pfaffian" => {
            for (i, p) in pfaffian_points(n, PFAFFIAN_POINTS, seed).into_iter().enumerate() {
                out.push(case(format!("pfaffian/n{n}/p{i:03}"), move || pfaffian_case(n, &p)));
            }
        }
        "classical" => {
            for (i, (t, a)) in sphere_points(n, CLASSICAL_POINTS, seed).into_iter().enumerate() {
                out.push(case(format!("classical/n{n}/p{i:03}"), move || classical_case(t, &a)));
            }
            out.push(case(format!("classical/n{n}/quantum-at-one"), move || {
                Ok(Outcome::exact(quantum_trace_at_one(n)?, None))
            }));
        }
        _ => return None,
    }
    Some(out)
}

fn join(m: &[usize]) -> String {
    m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("-")
}

/// Runs the named suite (or every suite for `all`), fanning cases out over
/// the current rayon pool. Cases are reported sorted by id.
pub fn run(suite: &str, cfg: SuiteConfig) -> Option<VerificationReport> {
    let names: Vec<&str> = if suite == "all" { ALL.to_vec() } else { vec![suite] };
    let mut plan = Vec::new();
    for (idx, name) in names.iter().enumerate() {
        plan.extend(cases(name, cfg)?.into_iter().map(|c| (idx, c)));
    }
    let mut results: Vec<(usize, CaseResult)> = plan.par_iter().map(|(idx, c)| (*idx, run_case(c))).collect();
    results.sort_by(|a, b| (a.0, &a.1.id).cmp(&(b.0, &b.1.id)));
    let mut suites: Vec<SuiteReport> =
        names.iter().map(|name| SuiteReport { suite: name.to_string(), cases: Vec::new() }).collect();
    for (idx, r) in results {
        suites[idx].cases.push(r);
    }
    Some(VerificationReport { n: cfg.n, suites })
}
