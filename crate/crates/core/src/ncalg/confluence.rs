//! Overlap ambiguities of the rule table, resolved both ways.
//!
//! All left-hand sides have length two, so the only ambiguities are words
//! `x y z` where both `x y` and `y z` are redexes. If every such word reduces
//! to the same normal form whichever redex is contracted first, the system is
//! locally confluent; with the degree-lex termination order this makes normal
//! forms unique.

use alloc::vec::Vec;

use super::algebra::Algebra;
use super::generator::Word;
use super::poly::{FreePoly, NCPoly};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct Ambiguity {
    pub word: Word,
    pub via_left: NCPoly,
    pub via_right: NCPoly,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub overlaps_checked: usize,
    pub unresolved: Vec<Ambiguity>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.unresolved.is_empty()
    }
}

pub fn check_local_confluence(alg: &Algebra) -> Result<ConfluenceReport> {
    let rules = alg.rules();
    let mut overlaps_checked = 0;
    let mut unresolved = Vec::new();
    for ([x, y], _) in rules.rules() {
        for ([y2, z], _) in rules.rules() {
            if y2 != y {
                continue;
            }
            overlaps_checked += 1;
            let word = Word(alloc::vec![x, y, z]);
            let resolve = |pos: usize| -> Result<NCPoly> {
                let step = rules.rewrite_at(&word, pos).unwrap_or_default();
                alg.normalize(&FreePoly::from_terms(step))
            };
            let via_left = resolve(0)?;
            let via_right = resolve(1)?;
            if via_left != via_right {
                unresolved.push(Ambiguity { word, via_left, via_right });
            }
        }
    }
    Ok(ConfluenceReport { overlaps_checked, unresolved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{Generator, Preset, RewriteSystem};
    use crate::scalars::LaurentQ;

    #[test]
    fn presets_are_locally_confluent() {
        let mut presets = alloc::vec![Preset::PodlesSphere];
        for n in 1..=3 {
            presets.push(Preset::PodlesProductPower(n));
            presets.push(Preset::EvenSphere(n));
            presets.push(Preset::OddPlane(n));
        }
        for p in presets {
            let report = check_local_confluence(&Algebra::new(p)).unwrap();
            assert!(report.is_confluent(), "{p}: {:?}", report.unresolved);
            if p.rank() > 1 {
                assert!(report.overlaps_checked > 0);
            }
        }
    }

    #[test]
    fn corrupted_table_is_reported() {
        let preset = Preset::OddPlane(2);
        let mut rules = RewriteSystem::for_preset(preset);
        // correct coefficient is q^3
        rules.insert(
            Generator::a(2),
            Generator::a_star(1),
            alloc::vec![(Word(alloc::vec![Generator::a_star(1), Generator::a(2)]), LaurentQ::q_pow(2))],
        );
        let report = check_local_confluence(&Algebra::with_rules(preset, rules)).unwrap();
        assert!(!report.is_confluent());
    }
}
