//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsuspend::{parse_expression, Target};
use qsuspend_core::fockrep::{
    char_trace, lowering_coefficient_check, multi_indices, psi_gram, verify_relations,
};
use qsuspend_core::ktheory::{
    build_e, build_g, check_defect, check_lemma_m, classical_g, idempotency_residual, matrix_trace,
    pair_charge, pair_epsilon, sphere_point, NCMatrix,
};
use qsuspend_core::ncalg::{
    check_local_confluence, Algebra, FreePoly, NCPoly, Preset, Strategy as Order, Word,
};
use qsuspend_core::poisson::{
    determinant, pfaffian_recursive, structure_matrix, verify_poisson_map, verify_sphere_constraint,
};
use qsuspend_core::scalars::{rat_int, LaurentQ};
use qsuspend_core::semiclassical::verify_semiclassical;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_zero(m: &NCMatrix) -> bool {
    m.entries().all(|(_, _, f)| f.is_zero())
}

fn poly(text: &str, preset: Preset) -> NCPoly {
    parse_expression(text, &Target::quantum(preset)).unwrap().into_quantum().unwrap()
}

fn c1_idempotency() -> Check {
    let start = Instant::now();
    for n in 1..=3 {
        let r = idempotency_residual(n).map_err(|e| e.to_string())?;
        ensure(all_zero(&r), || format!("G^2 - G is nonzero for n = {n}"))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("n = 1..3 exact, {took:.2?}"))
}

fn c2_traces() -> Check {
    for n in 1..=3usize {
        let tr = matrix_trace(&build_g(n).unwrap()).unwrap();
        let want = poly(&format!("{} - (1 - q^2)^{n} * t", 1 << (n - 1)), Preset::EvenSphere(n));
        ensure(tr == want, || format!("trace G_{n} = {tr}"))?;
        for k in 1..=n {
            let tr = matrix_trace(&build_e(n, k).unwrap()).unwrap();
            let want = poly(&format!("{} - (1 - q^2)^{k} * y", 1 << (k - 1)), Preset::OddPlane(n));
            ensure(tr == want, || format!("trace e_{k} (n = {n}) = {tr}"))?;
        }
    }
    Ok("G and e_k for 1 <= k <= n <= 3".into())
}

fn c3_pairings() -> Check {
    let mut worst: f64 = 0.0;
    for n in 1..=3usize {
        let eps = pair_epsilon(n).map_err(|e| e.to_string())?;
        ensure(eps == 1 << (n - 1), || format!("epsilon pairing {eps} for n = {n}"))?;
        for (q0, levels) in [(0.3, 60), (0.5, 60), (0.8, 80)] {
            let tb = pair_charge(n, q0, levels).map_err(|e| e.to_string())?;
            let gap = (tb.value + 1.0).abs();
            ensure(gap <= 1e-6, || format!("charge {} at n = {n}, q = {q0}", tb.value))?;
            ensure(tb.bound <= 1e-6, || format!("tail bound {} at n = {n}, q = {q0}", tb.bound))?;
            // the bound must cover the true error up to floating point rounding
            ensure(gap <= tb.bound + 1e-12, || {
                format!("bound {} misses gap {gap} at n = {n}, q = {q0}", tb.bound)
            })?;
            worst = worst.max(gap);
        }
    }
    Ok(format!("max |charge + 1| = {worst:e}"))
}

fn c4_character() -> Check {
    let mut report = Vec::new();
    for n in 1..=3usize {
        let alg = Algebra::new(Preset::EvenSphere(n));
        let one = char_trace(&alg.one(), 0.5, 40).map_err(|e| e.to_string())?;
        ensure(one.value == 0.0, || format!("char_trace(1) = {} for n = {n}", one.value))?;
        let tb = char_trace(&alg.t(0).unwrap(), 0.5, 40).map_err(|e| e.to_string())?;
        let exact = (1.0f64 / (1.0 - 0.25)).powi(n as i32);
        let gap = (tb.value - exact).abs();
        ensure(gap <= tb.bound, || format!("n = {n}: |{} - {exact}| = {gap:e} > {:e}", tb.value, tb.bound))?;
        ensure(tb.bound <= 1e-20, || format!("n = {n}: bound {:e}", tb.bound))?;
        report.push(format!("{:.1e}", tb.bound));
    }
    Ok(format!("tail bounds {}", report.join(", ")))
}

fn c5_lemma_defect() -> Check {
    let mut count = 0;
    for n in 1..=3 {
        for k in 1..=n {
            for l in k + 1..=n {
                ensure(all_zero(&check_lemma_m(n, k, l).unwrap()), || format!("lemma n={n} k={k} l={l}"))?;
                count += 1;
            }
            ensure(all_zero(&check_defect(n, k).unwrap()), || format!("defect n={n} k={k}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} identities exact"))
}

fn c6_relations() -> Check {
    let mut out = Vec::new();
    for (n, levels) in [(1, 30), (2, 30), (3, 12)] {
        let r = verify_relations(Preset::EvenSphere(n), 0.5, levels, 4).map_err(|e| e.to_string())?;
        ensure(r <= 1e-12, || format!("n = {n}: residual {r:e}"))?;
        out.push(format!("{r:.1e}"));
    }
    Ok(format!("residuals {}", out.join(", ")))
}

fn c7_poisson_map() -> Check {
    for n in 2..=3 {
        let res = verify_poisson_map(n).map_err(|e| e.to_string())?;
        if let Some(bad) = res.iter().find(|r| !r.residual.is_zero()) {
            return Err(format!("n = {n}: {{{}, {}}} leaves {}", bad.pair.0, bad.pair.1, bad.residual));
        }
        let c = verify_sphere_constraint(n).map_err(|e| e.to_string())?;
        ensure(c.is_zero(), || format!("n = {n}: constraint leaves {c}"))?;
    }
    Ok("n = 2, 3 exact".into())
}

fn c8_semiclassical() -> Check {
    let mut pairs = 0;
    for n in 1..=3 {
        let res = verify_semiclassical(n).map_err(|e| e.to_string())?;
        if let Some(bad) = res.iter().find(|r| !r.residual.is_zero()) {
            return Err(format!("n = {n}: {{{}, {}}} leaves {}", bad.pair.0, bad.pair.1, bad.residual));
        }
        pairs += res.len();
    }
    Ok(format!("{pairs} generator pairs exact"))
}

fn c9_pfaffian() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for _ in 0..100 {
            let z: Vec<Complex64> =
                (0..n).map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
            let s = structure_matrix(n, &z).map_err(|e| e.to_string())?;
            let det = determinant(&s.matrix);
            let pf = pfaffian_recursive(n, &z).map_err(|e| e.to_string())?;
            ensure(pf > 0.0, || format!("Pf = {pf} at {z:?}"))?;
            let rel = (det - pf * pf).norm() / det.norm();
            ensure(rel <= 1e-8, || format!("relative gap {rel:e} at {z:?}"))?;
            worst = worst.max(rel);
        }
    }
    Ok(format!("400 points, worst relative gap {worst:.1e}"))
}

fn c10_psi() -> Check {
    let ms = multi_indices(2, 3);
    let g = psi_gram(&ms, 0.5, 8).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            worst = worst.max((v - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    ensure(worst <= 1e-10, || format!("Gram deviation {worst:e}"))?;
    let mut lower: f64 = 0.0;
    for m in &ms {
        for i in 1..=2 {
            lower = lower.max(lowering_coefficient_check(i, m, 0.5, 8).map_err(|e| e.to_string())?);
        }
    }
    ensure(lower <= 1e-10, || format!("lowering residual {lower:e}"))?;
    Ok(format!("{} vectors, Gram {worst:.1e}, lowering {lower:.1e}", ms.len()))
}

fn presets() -> Vec<Preset> {
    let mut out = vec![Preset::PodlesSphere];
    for n in 1..=3 {
        out.push(Preset::PodlesProductPower(n));
        out.push(Preset::EvenSphere(n));
        out.push(Preset::OddPlane(n));
    }
    out
}

fn free_poly(preset: Preset, max_len: usize) -> impl Strategy<Value = FreePoly> {
    let word = prop::collection::vec(prop::sample::select(preset.generators()), 0..=max_len).prop_map(Word);
    let coeff =
        (prop_oneof![-3i64..=-1, 1i64..=3], -2i32..=2).prop_map(|(c, k)| LaurentQ::monomial(rat_int(c), k));
    prop::collection::vec((word, coeff), 1..=3).prop_map(FreePoly::from_terms)
}

fn c11_rewriting() -> Check {
    let mut overlaps = 0;
    for p in presets() {
        let alg = Algebra::new(p);
        let r = check_local_confluence(&alg).map_err(|e| e.to_string())?;
        ensure(r.is_confluent(), || format!("{p}: {} unresolved overlaps", r.unresolved.len()))?;
        overlaps += r.overlaps_checked;

        let mut runner =
            TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
        runner
            .run(&free_poly(p, 6), |raw| {
                let a = alg.normalize_with(&raw, Order::LeftmostInnermost).unwrap();
                let b = alg.normalize_with(&raw, Order::RightmostOutermost).unwrap();
                prop_assert_eq!(a, b);
                Ok(())
            })
            .map_err(|e| format!("{p}: strategy dependence {e}"))?;

        let mut runner =
            TestRunner::new(Config { cases: 200, failure_persistence: None, ..Config::default() });
        let triple = (free_poly(p, 2), free_poly(p, 2), free_poly(p, 2));
        runner
            .run(&triple, |(f, g, h)| {
                let (f, g, h) =
                    (alg.normalize(&f).unwrap(), alg.normalize(&g).unwrap(), alg.normalize(&h).unwrap());
                let left = alg.mul(&alg.mul(&f, &g).unwrap(), &h).unwrap();
                let right = alg.mul(&f, &alg.mul(&g, &h).unwrap()).unwrap();
                prop_assert_eq!(left, right);
                prop_assert_eq!(alg.star(&alg.star(&f).unwrap()).unwrap(), f.clone());
                let lhs = alg.star(&alg.mul(&f, &g).unwrap()).unwrap();
                let rhs = alg.mul(&alg.star(&g).unwrap(), &alg.star(&f).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
                Ok(())
            })
            .map_err(|e| format!("{p}: {e}"))?;
    }
    Ok(format!("{} presets, {overlaps} overlaps, 1000 strategy cases each", presets().len()))
}

fn c12_classical() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst: f64 = 0.0;
    for n in 1..=3usize {
        let rank = (1u64 << (n - 1)) as f64;
        let mut done = 0;
        while done < 50 {
            let t: f64 = rng.gen_range(0.0..=1.0);
            let dir: Vec<Complex64> =
                (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let Some(a) = sphere_point(t, &dir) else { continue };
            let p = classical_g(t, &a).map_err(|e| e.to_string())?;
            ensure(p.idempotency_residual <= 1e-12, || format!("|G^2 - G| = {:e}", p.idempotency_residual))?;
            let gap = (p.trace - Complex64::new(rank, 0.0)).norm();
            ensure(gap <= 1e-12, || format!("trace {} for n = {n}", p.trace))?;
            worst = worst.max(p.idempotency_residual).max(gap);
            done += 1;
        }
        let alg = Algebra::new(Preset::EvenSphere(n));
        let at_one =
            matrix_trace(&build_g(n).unwrap()).unwrap().map_coeffs(|c| LaurentQ::constant(c.at_one()));
        let want = alg.scalar(LaurentQ::constant(rat_int(1 << (n - 1))));
        ensure(at_one == want, || format!("quantum trace at q = 1 is {at_one} for n = {n}"))?;
    }
    Ok(format!("150 points, worst {worst:.1e}; quantum trace at q = 1 matches"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("symbolic idempotency", c1_idempotency),
        ("trace formulas", c2_traces),
        ("counit and character pairings", c3_pairings),
        ("character values", c4_character),
        ("lemma and defect identities", c5_lemma_defect),
        ("representation relations", c6_relations),
        ("Poisson map", c7_poisson_map),
        ("semiclassical limit", c8_semiclassical),
        ("Pfaffian oracle", c9_pfaffian),
        ("psi orthonormality and lowering", c10_psi),
        ("rewriting soundness", c11_rewriting),
        ("classical oracle", c12_classical),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
