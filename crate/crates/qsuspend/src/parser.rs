//! Expression grammar shared by every command.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*"? factor)*
//! factor := "-" factor | atom ("^" uint)?
//! atom   := gen | scalar | "(" expr ")" | "[" expr "," expr "]" | "{" expr "," expr "}"
//! gen    := ("a" | "x" | "z" | "alpha" | "tau") uint "*"? | "t" | "y"
//! scalar := uint ("/" uint)? | "q" ("^" "-"? uint)?
//! ```
//!
//! A `*` written directly after a generator index stars the generator, so
//! `a1*a1` is `a1* a1` while `a1 * a1` is `a1^2`. Adjacent factors multiply.

use std::fmt;

use qsuspend_core::ncalg::{Algebra, Family, Generator, NCPoly, Preset};
use qsuspend_core::poisson::{ClassicalPoly, PoissonStructure, Var};
use qsuspend_core::scalars::{parse_rational, LaurentQ, Rational};
use qsuspend_core::Error as CoreError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("column {col}: {source}")]
    Algebra { col: usize, source: CoreError },
}

impl ParseError {
    fn syntax(col: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax { col, msg: msg.into() }
    }

    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { col, .. } | ParseError::Algebra { col, .. } => *col,
        }
    }

    /// The underlying algebra error, if evaluation rather than syntax failed.
    pub fn core_error(&self) -> Option<&CoreError> {
        match self {
            ParseError::Algebra { source, .. } => Some(source),
            ParseError::Syntax { .. } => None,
        }
    }
}

/// Where a parsed expression is evaluated.
#[derive(Clone, Debug)]
pub enum Target {
    Quantum(Algebra),
    Classical(PoissonStructure),
}

impl Target {
    pub fn quantum(preset: Preset) -> Self {
        Target::Quantum(Algebra::new(preset))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Quantum(NCPoly),
    Classical(ClassicalPoly),
}

impl Value {
    pub fn to_text(&self) -> String {
        match self {
            Value::Quantum(p) => p.to_text(),
            Value::Classical(p) => p.to_string(),
        }
    }

    pub fn into_quantum(self) -> Option<NCPoly> {
        match self {
            Value::Quantum(p) => Some(p),
            Value::Classical(_) => None,
        }
    }

    pub fn into_classical(self) -> Option<ClassicalPoly> {
        match self {
            Value::Classical(p) => Some(p),
            Value::Quantum(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Gen { name: String, index: Option<u16>, star: bool },
    Q,
    Plus,
    Minus,
    Times,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Times),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, col });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut lit = digits(&mut i);
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                lit.push('/');
                lit.push_str(&digits(&mut i));
            }
            let r =
                parse_rational(&lit).map_err(|_| ParseError::syntax(col, format!("bad number `{lit}`")))?;
            out.push(Token { tok: Tok::Num(r), col });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            if name == "q" {
                out.push(Token { tok: Tok::Q, col });
                continue;
            }
            let idx = digits(&mut i);
            let index = if idx.is_empty() {
                None
            } else {
                Some(
                    idx.parse::<u16>()
                        .map_err(|_| ParseError::syntax(col, format!("index `{idx}` is too large")))?,
                )
            };
            let star = index.is_some() && i < chars.len() && chars[i] == '*';
            if star {
                i += 1;
            }
            out.push(Token { tok: Tok::Gen { name, index, star }, col });
            continue;
        }
        return Err(ParseError::syntax(col, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Sum(Vec<(bool, Node)>, usize),
    Product(Vec<Node>, usize),
    Neg(Box<Node>),
    Pow(Box<Node>, u32, usize),
    Rat(Rational),
    QPow(i32, usize),
    Gen { name: String, index: Option<u16>, star: bool, col: usize },
    Commutator(Box<Node>, Box<Node>, usize),
    Bracket(Box<Node>, Box<Node>, usize),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(ParseError::syntax(self.col(), format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let col = self.col();
        let mut terms = vec![(false, self.term()?)];
        loop {
            let negative = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.pos += 1;
            terms.push((negative, self.term()?));
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap().1 } else { Node::Sum(terms, col) })
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_) | Tok::Gen { .. } | Tok::Q | Tok::LParen | Tok::LBracket | Tok::LBrace)
        )
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let col = self.col();
        let mut factors = vec![self.factor()?];
        loop {
            if self.peek() == Some(&Tok::Times) {
                self.pos += 1;
                factors.push(self.factor()?);
            } else if self.starts_atom() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Node::Product(factors, col) })
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Node::Neg(Box::new(self.factor()?)));
        }
        let col = self.col();
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.uint("an exponent")?;
            return Ok(Node::Pow(Box::new(base), e, col));
        }
        Ok(base)
    }

    fn uint(&mut self, what: &str) -> Result<u32, ParseError> {
        let col = self.col();
        match self.bump().map(|t| t.tok) {
            Some(Tok::Num(r)) if r.is_integer() => r
                .to_integer()
                .to_string()
                .parse::<u32>()
                .map_err(|_| ParseError::syntax(col, format!("{what} is too large"))),
            _ => Err(ParseError::syntax(col, format!("expected {what}"))),
        }
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let col = self.col();
        let Some(tok) = self.bump() else {
            return Err(ParseError::syntax(col, "unexpected end of input"));
        };
        match tok.tok {
            Tok::Num(r) => Ok(Node::Rat(r)),
            Tok::Q => {
                if self.peek() != Some(&Tok::Caret) {
                    return Ok(Node::QPow(1, col));
                }
                self.pos += 1;
                let negative = self.peek() == Some(&Tok::Minus);
                if negative {
                    self.pos += 1;
                }
                let e = self.uint("a power of q")?;
                let e = i32::try_from(e).map_err(|_| ParseError::syntax(col, "power of q is too large"))?;
                Ok(Node::QPow(if negative { -e } else { e }, col))
            }
            Tok::Gen { name, index, star } => Ok(Node::Gen { name, index, star, col }),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::LBracket => {
                let f = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let g = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Node::Commutator(Box::new(f), Box::new(g), col))
            }
            Tok::LBrace => {
                let f = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let g = self.expr()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(Node::Bracket(Box::new(f), Box::new(g), col))
            }
            _ => Err(ParseError::syntax(col, "expected a generator, number, `q` or an opening bracket")),
        }
    }
}

fn quantum_generator(preset: Preset, name: &str, index: Option<u16>, star: bool) -> Option<Generator> {
    let (t, a) = match preset {
        Preset::PodlesSphere | Preset::PodlesProductPower(_) => ("tau", "alpha"),
        Preset::EvenSphere(_) => ("t", "a"),
        Preset::OddPlane(_) => ("y", "x"),
    };
    let g = if name == t {
        match (preset.is_product(), index, star) {
            (true, Some(i), false) => Generator::new(Family::T, i),
            (false, None, false) => Generator::t(),
            _ => return None,
        }
    } else if name == a {
        let i = index?;
        if star {
            Generator::a_star(i)
        } else {
            Generator::a(i)
        }
    } else {
        return None;
    };
    preset.contains(g).then_some(g)
}

fn classical_var(p: PoissonStructure, name: &str, index: Option<u16>, star: bool) -> Option<Var> {
    let v = match (name, index, star) {
        ("t", None, false) => Var::T,
        ("a", Some(i), false) => Var::A(i),
        ("a", Some(i), true) => Var::ABar(i),
        ("tau", Some(i), false) => Var::Tau(i),
        ("alpha", Some(i), false) => Var::Alpha(i),
        ("alpha", Some(i), true) => Var::AlphaBar(i),
        ("z", Some(i), false) => Var::Z(i),
        ("z", Some(i), true) => Var::ZBar(i),
        _ => return None,
    };
    p.contains(v).then_some(v)
}

fn spell(name: &str, index: Option<u16>, star: bool) -> String {
    let mut s = name.to_string();
    if let Some(i) = index {
        s.push_str(&i.to_string());
    }
    if star {
        s.push('*');
    }
    s
}

fn eval_quantum(alg: &Algebra, node: &Node) -> Result<NCPoly, ParseError> {
    let at = |col: usize| move |source| ParseError::Algebra { col, source };
    Ok(match node {
        Node::Sum(terms, col) => {
            let mut acc = alg.zero();
            for (negative, t) in terms {
                let v = eval_quantum(alg, t)?;
                acc = if *negative { alg.sub(&acc, &v) } else { alg.add(&acc, &v) }.map_err(at(*col))?;
            }
            acc
        }
        Node::Product(fs, col) => {
            let mut acc = alg.one();
            for f in fs {
                acc = alg.mul(&acc, &eval_quantum(alg, f)?).map_err(at(*col))?;
            }
            acc
        }
        Node::Neg(f) => eval_quantum(alg, f)?.neg(),
        Node::Pow(f, e, col) => alg.pow(&eval_quantum(alg, f)?, *e).map_err(at(*col))?,
        Node::Rat(r) => alg.scalar(LaurentQ::constant(r.clone())),
        Node::QPow(k, _) => alg.scalar(LaurentQ::q_pow(*k)),
        Node::Gen { name, index, star, col } => {
            let g =
                quantum_generator(alg.preset(), name, *index, *star).ok_or_else(|| ParseError::Algebra {
                    col: *col,
                    source: CoreError::UnknownGenerator(spell(name, *index, *star), alg.preset()),
                })?;
            alg.generator(g).map_err(at(*col))?
        }
        Node::Commutator(f, g, col) => {
            alg.commutator(&eval_quantum(alg, f)?, &eval_quantum(alg, g)?).map_err(at(*col))?
        }
        Node::Bracket(_, _, col) => {
            return Err(ParseError::syntax(
                *col,
                format!("Poisson brackets need a classical preset, {} is quantum", alg.preset()),
            ))
        }
    })
}

fn eval_classical(p: PoissonStructure, node: &Node) -> Result<ClassicalPoly, ParseError> {
    Ok(match node {
        Node::Sum(terms, _) => {
            let mut acc = ClassicalPoly::zero();
            for (negative, t) in terms {
                let v = eval_classical(p, t)?;
                acc = if *negative { acc.sub(&v) } else { acc.add(&v) };
            }
            acc
        }
        Node::Product(fs, _) => {
            let mut acc = ClassicalPoly::one();
            for f in fs {
                acc = acc.mul(&eval_classical(p, f)?);
            }
            p.reduce(&acc)
        }
        Node::Neg(f) => eval_classical(p, f)?.scale_int(-1),
        Node::Pow(f, e, _) => p.reduce(&eval_classical(p, f)?.pow(*e)),
        Node::Rat(r) => ClassicalPoly::constant(r.clone()),
        Node::QPow(_, col) => {
            return Err(ParseError::syntax(*col, "`q` has no meaning in a classical algebra"))
        }
        Node::Gen { name, index, star, col } => {
            let v = classical_var(p, name, *index, *star).ok_or_else(|| {
                ParseError::syntax(*col, format!("`{}` is not a variable of {p}", spell(name, *index, *star)))
            })?;
            ClassicalPoly::var(v)
        }
        Node::Bracket(f, g, col) => p
            .bracket(&eval_classical(p, f)?, &eval_classical(p, g)?)
            .map_err(|source| ParseError::Algebra { col: *col, source })?,
        Node::Commutator(_, _, _) => ClassicalPoly::zero(),
    })
}

/// Parses `text` and evaluates it in `target`.
pub fn parse_expression(text: &str, target: &Target) -> Result<Value, ParseError> {
    let toks = lex(text)?;
    let end_col = text.chars().count() + 1;
    let mut parser = Parser { toks, pos: 0, end_col };
    let node = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return Err(ParseError::syntax(parser.col(), "unexpected trailing input"));
    }
    match target {
        Target::Quantum(alg) => eval_quantum(alg, &node).map(Value::Quantum),
        Target::Classical(p) => eval_classical(*p, &node).map(|f| Value::Classical(p.reduce(&f))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsuspend_core::scalars::rat_int;

    fn even(n: usize) -> Target {
        Target::quantum(Preset::EvenSphere(n))
    }

    #[test]
    fn ordering_rule_applies() {
        let v = parse_expression("a1 * t", &even(2)).unwrap();
        assert_eq!(v.to_text(), "q^2 * t a1");
    }

    #[test]
    fn scalar_arithmetic() {
        let v = parse_expression("q^2 * t - t", &even(1)).unwrap();
        assert_eq!(v.to_text(), "(-1 + q^2) * t");
    }

    #[test]
    fn chart_bracket() {
        let v = parse_expression("{z1, z1*}", &Target::Classical(PoissonStructure::ChartPlane(1))).unwrap();
        let expect = ClassicalPoly::constant(rat_int(2))
            .add(&ClassicalPoly::var(Var::Z(1)).mul(&ClassicalPoly::var(Var::ZBar(1))).scale_int(2));
        assert_eq!(v, Value::Classical(expect));
    }

    #[test]
    fn star_binds_to_the_index() {
        let a = parse_expression("a1*a1", &even(1)).unwrap();
        let b = parse_expression("a1* a1", &even(1)).unwrap();
        let c = parse_expression("a1 * a1", &even(1)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_expression("t + + a1", &even(1)).unwrap_err();
        assert_eq!(e.column(), 5);
        let e = parse_expression("t + a3", &even(2)).unwrap_err();
        assert_eq!(e.column(), 5);
        assert!(matches!(e.core_error(), Some(CoreError::UnknownGenerator(..))));
        let e = parse_expression("{t, a1}", &even(1)).unwrap_err();
        assert_eq!(e.column(), 1);
        let e = parse_expression("(t", &even(1)).unwrap_err();
        assert_eq!(e.column(), 3);
    }

    #[test]
    fn commutator_matches_the_algebra() {
        let alg = Algebra::new(Preset::PodlesSphere);
        let v = parse_expression("[alpha1, alpha1*]", &Target::Quantum(alg.clone())).unwrap();
        let direct = alg.commutator(&alg.a(1).unwrap(), &alg.a_star(1).unwrap()).unwrap();
        assert_eq!(v, Value::Quantum(direct));
    }
}
