use proptest::prelude::*;
use qsuspend_core::fockrep::{char_trace, represent, SparseOperator};
use qsuspend_core::ncalg::{Algebra, FreePoly, NCPoly, Preset, Word};
use qsuspend_core::scalars::{powi, rat_int, LaurentQ};

const Q: f64 = 0.5;

fn element(preset: Preset, max_len: usize) -> impl Strategy<Value = NCPoly> {
    let word = prop::collection::vec(prop::sample::select(preset.generators()), 0..=max_len).prop_map(Word);
    let coeff =
        (prop_oneof![-2i64..=-1, 1i64..=2], -1i32..=1).prop_map(|(c, k)| LaurentQ::monomial(rat_int(c), k));
    prop::collection::vec((word, coeff), 1..=3)
        .prop_map(move |terms| Algebra::new(preset).normalize(&FreePoly::from_terms(terms)).unwrap())
}

fn sphere_pairs() -> impl Strategy<Value = (usize, NCPoly, NCPoly)> {
    (1usize..=2).prop_flat_map(|n| {
        let p = Preset::EvenSphere(n);
        (Just(n), element(p, 2), element(p, 2))
    })
}

fn scale(f: &NCPoly) -> f64 {
    f.terms().map(|(_, c)| c.abs_eval_f64(Q)).sum::<f64>().max(1.0)
}

/// Largest column norm of `a - b` over states at least `margin` below the cutoff.
fn interior_gap(a: &SparseOperator, b: &SparseOperator, margin: usize) -> f64 {
    let space = a.space;
    a.sub(b)
        .column_norms()
        .into_iter()
        .filter(|(c, _)| space.state(*c).iter().all(|&k| k + margin < space.levels))
        .map(|(_, v)| v)
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn representation_is_multiplicative_inside((n, f, g) in sphere_pairs()) {
        let alg = Algebra::new(Preset::EvenSphere(n));
        let levels = 10;
        let fg = represent(&alg.mul(&f, &g).unwrap(), Q, levels).unwrap();
        let prod = represent(&f, Q, levels).unwrap().mul(&represent(&g, Q, levels).unwrap());
        prop_assert!(interior_gap(&fg, &prod, 4) <= 1e-10 * scale(&f) * scale(&g));
    }

    #[test]
    fn star_is_the_transpose((n, f, _g) in sphere_pairs()) {
        let alg = Algebra::new(Preset::EvenSphere(n));
        let a = represent(&alg.star(&f).unwrap(), Q, 8).unwrap();
        let b = represent(&f, Q, 8).unwrap().transpose();
        prop_assert!(a.sub(&b).max_abs() <= 1e-12 * scale(&f));
    }

    #[test]
    fn character_trace_is_cyclic((n, f, g) in sphere_pairs()) {
        let alg = Algebra::new(Preset::EvenSphere(n));
        let levels = if n == 1 { 40 } else { 24 };
        let fg = char_trace(&alg.mul(&f, &g).unwrap(), Q, levels).unwrap();
        let gf = char_trace(&alg.mul(&g, &f).unwrap(), Q, levels).unwrap();
        let rounding = 1e-12 * scale(&f) * scale(&g);
        prop_assert!((fg.value - gf.value).abs() <= fg.bound + gf.bound + rounding);
    }
}

#[test]
fn t_is_diagonal_with_geometric_spectrum() {
    for n in 1..=3 {
        let alg = Algebra::new(Preset::EvenSphere(n));
        let t = represent(&alg.t(0).unwrap(), Q, 6).unwrap();
        for ((r, c), v) in t.entries() {
            assert_eq!(r, c);
            let k: usize = t.space.state(r).iter().sum();
            assert_eq!(v, powi(Q, 2 * k as i32));
        }
    }
}

#[test]
fn traces_of_powers_of_t_are_geometric() {
    for n in 1..=2 {
        let alg = Algebra::new(Preset::EvenSphere(n));
        let t = alg.t(0).unwrap();
        for k in 1..=3u32 {
            let tk = alg.pow(&t, k).unwrap();
            let tb = char_trace(&tk, Q, 30).unwrap();
            let mut one_factor = 0.0;
            for j in 0..200 {
                one_factor += powi(Q, 2 * k as i32 * j);
            }
            let exact = powi(one_factor, n as i32);
            assert!((tb.value - exact).abs() <= tb.bound + 1e-15, "n={n} k={k}");
        }
    }
}
