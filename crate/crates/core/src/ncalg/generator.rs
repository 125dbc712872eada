use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// The three kinds of generator every preset is built from.
///
/// Declaration order is the within-index generator order `t < a* < a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Self-adjoint generator: `t`, `y` or `tau_i`.
    T,
    /// `a_i*`, `x_i*` or `alpha_i*`.
    AStar,
    /// `a_i`, `x_i` or `alpha_i`.
    A,
}

/// A generator, ordered by `(index, family)`.
///
/// For the sphere and odd-plane presets the central generator sits at index 0,
/// which yields `t < a_1* < a_1 < a_2* < a_2 < ...`. In the Podleś product each
/// copy `i` owns `tau_i < alpha_i* < alpha_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub index: u16,
    pub family: Family,
}

impl Generator {
    pub const fn new(family: Family, index: u16) -> Self {
        Self { index, family }
    }

    pub const fn t() -> Self {
        Self::new(Family::T, 0)
    }

    pub const fn a(i: u16) -> Self {
        Self::new(Family::A, i)
    }

    pub const fn a_star(i: u16) -> Self {
        Self::new(Family::AStar, i)
    }

    pub fn star(self) -> Self {
        let family = match self.family {
            Family::T => Family::T,
            Family::AStar => Family::A,
            Family::A => Family::AStar,
        };
        Self { family, ..self }
    }
}

/// A word in the generators. Ordered degree-lexicographically, which is the
/// termination order of every rewrite system in this crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(g: Generator) -> Self {
        Self(alloc::vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Reverses the word and stars each letter.
    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.star()).collect())
    }

    /// Number of letters from each family, as `(t, a*, a)`.
    pub fn family_counts(&self) -> (usize, usize, usize) {
        self.0.iter().fold((0, 0, 0), |(t, s, a), g| match g.family {
            Family::T => (t + 1, s, a),
            Family::AStar => (t, s + 1, a),
            Family::A => (t, s, a + 1),
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

/// The algebras the rewriting engine knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    /// Standard Podleś sphere, generators `alpha1, alpha1*, tau1`.
    PodlesSphere,
    /// `n` mutually commuting copies of the Podleś sphere.
    PodlesProductPower(usize),
    /// The quantum even sphere with generators `a_i, a_i*, t`.
    EvenSphere(usize),
    /// The odd quantum plane with generators `x_i, x_i*, y`.
    OddPlane(usize),
}

impl Preset {
    pub fn rank(&self) -> usize {
        match *self {
            Preset::PodlesSphere => 1,
            Preset::PodlesProductPower(n) | Preset::EvenSphere(n) | Preset::OddPlane(n) => n,
        }
    }

    /// True when each index carries its own `tau_i`.
    pub fn is_product(&self) -> bool {
        matches!(self, Preset::PodlesSphere | Preset::PodlesProductPower(_))
    }

    pub fn generators(&self) -> Vec<Generator> {
        let n = self.rank() as u16;
        let mut out = Vec::new();
        if self.is_product() {
            for i in 1..=n {
                out.push(Generator::new(Family::T, i));
                out.push(Generator::a_star(i));
                out.push(Generator::a(i));
            }
        } else {
            out.push(Generator::t());
            for i in 1..=n {
                out.push(Generator::a_star(i));
                out.push(Generator::a(i));
            }
        }
        out
    }

    pub fn contains(&self, g: Generator) -> bool {
        let n = self.rank() as u16;
        match g.family {
            Family::T if self.is_product() => (1..=n).contains(&g.index),
            Family::T => g.index == 0,
            _ => (1..=n).contains(&g.index),
        }
    }

    /// The self-adjoint generator attached to `index` (`t` ignores the index).
    pub fn t_for(&self, index: u16) -> Generator {
        if self.is_product() {
            Generator::new(Family::T, index)
        } else {
            Generator::t()
        }
    }

    pub fn generator_name(&self, g: Generator) -> String {
        let (t, a) = match self {
            Preset::PodlesSphere | Preset::PodlesProductPower(_) => ("tau", "alpha"),
            Preset::EvenSphere(_) => ("t", "a"),
            Preset::OddPlane(_) => ("y", "x"),
        };
        match g.family {
            Family::T if self.is_product() => format!("{t}{}", g.index),
            Family::T => String::from(t),
            Family::AStar => format!("{a}{}*", g.index),
            Family::A => format!("{a}{}", g.index),
        }
    }

    /// Space separated, with runs collapsed to powers: `t^2 a1*^2 a1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return String::from("1");
        }
        let mut parts: Vec<String> = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let g = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == g {
                run += 1;
            }
            let name = self.generator_name(g);
            if run == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{run}"));
            }
            i += run;
        }
        parts.join(" ")
    }

    /// Stable short name used on the command line and in reports.
    pub fn slug(&self) -> &'static str {
        match self {
            Preset::PodlesSphere => "podles",
            Preset::PodlesProductPower(_) => "podles-power",
            Preset::EvenSphere(_) => "even-sphere",
            Preset::OddPlane(_) => "odd-plane",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::PodlesSphere => write!(f, "PodlesSphere"),
            Preset::PodlesProductPower(n) => write!(f, "PodlesProductPower({n})"),
            Preset::EvenSphere(n) => write!(f, "EvenSphere({n})"),
            Preset::OddPlane(n) => write!(f, "OddPlane({n})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_order_matches_pbw_order() {
        let gens = Preset::EvenSphere(2).generators();
        let mut sorted = gens.clone();
        sorted.sort();
        assert_eq!(gens, sorted);
        assert!(Generator::t() < Generator::a_star(1));
        assert!(Generator::a_star(1) < Generator::a(1));
        assert!(Generator::a(1) < Generator::a_star(2));
    }

    #[test]
    fn star_is_an_involution() {
        for g in Preset::PodlesProductPower(3).generators() {
            assert_eq!(g.star().star(), g);
        }
    }

    #[test]
    fn words_compare_by_length_first() {
        let long = Word(alloc::vec![Generator::t(), Generator::t()]);
        let short = Word::single(Generator::a(3));
        assert!(short < long);
    }

    #[test]
    fn word_formatting_collapses_runs() {
        let p = Preset::EvenSphere(1);
        let w = Word(alloc::vec![Generator::t(), Generator::t(), Generator::a_star(1), Generator::a(1)]);
        assert_eq!(p.format_word(&w), "t^2 a1* a1");
        assert_eq!(p.format_word(&Word::empty()), "1");
    }
}
