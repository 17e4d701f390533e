//! Loop words and identities: parsing, evaluation in a Cayley table, and
//! exhaustive checking with counterexample witnesses.
//!
//! The surface syntax is deliberately strict. `*`, `\` and `/` share one
//! precedence level and an unparenthesized chain of two binary operators is
//! rejected, so `x*y*z` must be written `(x*y)*z` or `x*(y*z)`. A postfix `'`
//! is the two-sided inverse and `1` is the identity.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::loops::CayleyLoop;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("ambiguous expression at byte {pos}: parenthesize chained operators")]
    Ambiguity { pos: usize },
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("inverse of {element} is not two-sided (loop is not IP)")]
    NotIP { element: usize },
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<TermError>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    One,
    Mul(Box<Term>, Box<Term>),
    LDiv(Box<Term>, Box<Term>),
    RDiv(Box<Term>, Box<Term>),
    Inv(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn ldiv(a: Term, b: Term) -> Term {
        Term::LDiv(Box::new(a), Box::new(b))
    }

    pub fn rdiv(a: Term, b: Term) -> Term {
        Term::RDiv(Box::new(a), Box::new(b))
    }

    pub fn inv(a: Term) -> Term {
        Term::Inv(Box::new(a))
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::One => {}
            Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Inv(a) => a.collect_vars(out),
        }
    }

    pub fn contains_inverse(&self) -> bool {
        match self {
            Term::Var(_) | Term::One => false,
            Term::Inv(_) => true,
            Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => {
                a.contains_inverse() || b.contains_inverse()
            }
        }
    }

    /// The same word read in the opposite loop: products swap their
    /// arguments and `a \ b` becomes `b / a`.
    pub fn mirror(&self) -> Term {
        match self {
            Term::Var(_) | Term::One => self.clone(),
            Term::Mul(a, b) => Term::mul(b.mirror(), a.mirror()),
            Term::LDiv(a, b) => Term::rdiv(b.mirror(), a.mirror()),
            Term::RDiv(a, b) => Term::ldiv(b.mirror(), a.mirror()),
            Term::Inv(a) => Term::inv(a.mirror()),
        }
    }

    fn is_binary(&self) -> bool {
        matches!(self, Term::Mul(..) | Term::LDiv(..) | Term::RDiv(..))
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_binary() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, op, b) = match self {
            Term::Var(v) => return f.write_str(v),
            Term::One => return f.write_str("1"),
            Term::Inv(a) => {
                a.fmt_operand(f)?;
                return f.write_str("'");
            }
            Term::Mul(a, b) => (a, '*', b),
            Term::LDiv(a, b) => (a, '\\', b),
            Term::RDiv(a, b) => (a, '/', b),
        };
        a.fmt_operand(f)?;
        write!(f, "{op}")?;
        b.fmt_operand(f)
    }
}

/// A universally quantified equation between two terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: Option<String>,
    pub lhs: Term,
    pub rhs: Term,
    pub vars: Vec<String>,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Identity {
        let mut vars = lhs.variables();
        for v in rhs.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        Identity {
            name: None,
            lhs,
            rhs,
            vars,
        }
    }

    pub fn named(mut self, name: &str) -> Identity {
        self.name = Some(name.to_string());
        self
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.to_string())
    }

    pub fn mirror(&self) -> Identity {
        let mut m = Identity::new(self.lhs.mirror(), self.rhs.mirror());
        m.name = self.name.as_ref().map(|n| format!("{n}~"));
        m
    }

    pub fn contains_inverse(&self) -> bool {
        self.lhs.contains_inverse() || self.rhs.contains_inverse()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl FromStr for Identity {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_identity(s)
    }
}

/// Parses `LHS = RHS`.
pub fn parse_identity(src: &str) -> Result<Identity, TermError> {
    let mut p = Parser::new(src);
    let lhs = p.expr()?;
    p.expect('=')?;
    let rhs = p.expr()?;
    p.skip_ws();
    if let Some((pos, c)) = p.peek() {
        return Err(TermError::Syntax {
            pos,
            message: format!("unexpected {c:?} after identity"),
        });
    }
    Ok(Identity::new(lhs, rhs))
}

/// Parses a single term.
pub fn parse_term(src: &str) -> Result<Term, TermError> {
    let mut p = Parser::new(src);
    let t = p.expr()?;
    p.skip_ws();
    if let Some((pos, c)) = p.peek() {
        return Err(TermError::Syntax {
            pos,
            message: format!("unexpected {c:?} after term"),
        });
    }
    Ok(t)
}

/// Parses `name : LHS = RHS`, or a bare `LHS = RHS`.
pub fn parse_named_identity(line: &str) -> Result<Identity, TermError> {
    match line.split_once(':') {
        Some((name, body)) => {
            let name = name.trim();
            if name.is_empty() {
                return Err(TermError::Syntax {
                    pos: 0,
                    message: "empty identity name".into(),
                });
            }
            Ok(parse_identity(body)?.named(name))
        }
        None => parse_identity(line),
    }
}

/// Identity file: one `name : LHS = RHS` per line, `#` comments.
pub fn parse_identity_file(src: &str) -> Result<Vec<Identity>, TermError> {
    src.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            parse_named_identity(l).map_err(|e| TermError::Line {
                line: i + 1,
                source: Box::new(e),
            })
        })
        .collect()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.src[self.pos..].chars().next().map(|c| (self.pos, c))
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn expect(&mut self, want: char) -> Result<(), TermError> {
        match self.peek() {
            Some((_, c)) if c == want => {
                self.bump();
                Ok(())
            }
            Some((pos, c)) => Err(TermError::Syntax {
                pos,
                message: format!("expected {want:?}, found {c:?}"),
            }),
            None => Err(TermError::Syntax {
                pos: self.pos,
                message: format!("expected {want:?}, found end of input"),
            }),
        }
    }

    fn binop(&mut self) -> Option<(usize, char)> {
        match self.peek() {
            Some((pos, c @ ('*' | '\\' | '/'))) => Some((pos, c)),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Term, TermError> {
        let left = self.postfix()?;
        let Some((_, op)) = self.binop() else {
            return Ok(left);
        };
        self.bump();
        let right = self.postfix()?;
        if let Some((pos, _)) = self.binop() {
            return Err(TermError::Ambiguity { pos });
        }
        Ok(match op {
            '*' => Term::mul(left, right),
            '\\' => Term::ldiv(left, right),
            _ => Term::rdiv(left, right),
        })
    }

    fn postfix(&mut self) -> Result<Term, TermError> {
        let mut t = self.atom()?;
        while let Some((_, '\'')) = self.peek() {
            self.bump();
            t = Term::inv(t);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, TermError> {
        match self.peek() {
            Some((_, '(')) => {
                self.bump();
                let t = self.expr()?;
                self.expect(')')?;
                Ok(t)
            }
            Some((pos, '1')) => {
                self.bump();
                if let Some(c) = self.src[self.pos..].chars().next() {
                    if c.is_ascii_alphanumeric() {
                        return Err(TermError::Syntax {
                            pos,
                            message: "the only numeric constant is 1".into(),
                        });
                    }
                }
                Ok(Term::One)
            }
            Some((start, c)) if c.is_ascii_lowercase() => {
                let rest = &self.src[start..];
                let len = rest
                    .find(|ch: char| !(ch.is_ascii_lowercase() || ch.is_ascii_digit() || ch == '_'))
                    .unwrap_or(rest.len());
                self.pos = start + len;
                Ok(Term::Var(rest[..len].to_string()))
            }
            Some((pos, c)) => Err(TermError::Syntax {
                pos,
                message: format!("expected a variable, 1 or '(', found {c:?}"),
            }),
            None => Err(TermError::Syntax {
                pos: self.pos,
                message: "unexpected end of input".into(),
            }),
        }
    }
}

/// One instruction of a compiled term. Operands are register indices; the
/// first registers hold the identity's variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Op {
    One,
    Mul(usize, usize),
    LDiv(usize, usize),
    RDiv(usize, usize),
    Inv(usize),
}

/// Straight-line program for both sides of an identity, with shared
/// subterms computed once.
#[derive(Debug, Clone)]
pub(crate) struct Program {
    pub(crate) nvars: usize,
    pub(crate) ops: Vec<Op>,
    pub(crate) lhs: usize,
    pub(crate) rhs: usize,
}

impl Program {
    pub(crate) fn compile(id: &Identity) -> Program {
        let mut b = ProgramBuilder {
            vars: &id.vars,
            ops: Vec::new(),
            memo: HashMap::new(),
        };
        let lhs = b.emit(&id.lhs);
        let rhs = b.emit(&id.rhs);
        Program {
            nvars: id.vars.len(),
            ops: b.ops,
            lhs,
            rhs,
        }
    }

    pub(crate) fn registers(&self) -> usize {
        self.nvars + self.ops.len()
    }

    #[inline]
    fn run(&self, l: &CayleyLoop, regs: &mut [usize]) -> Result<(), TermError> {
        let k = self.nvars;
        for (i, op) in self.ops.iter().enumerate() {
            regs[k + i] = match *op {
                Op::One => 0,
                Op::Mul(a, b) => l.mul(regs[a], regs[b]),
                Op::LDiv(a, b) => l.ldiv(regs[a], regs[b]),
                Op::RDiv(a, b) => l.rdiv(regs[a], regs[b]),
                Op::Inv(a) => l
                    .inverse(regs[a])
                    .map_err(|_| TermError::NotIP { element: regs[a] })?,
            };
        }
        Ok(())
    }
}

struct ProgramBuilder<'a> {
    vars: &'a [String],
    ops: Vec<Op>,
    memo: HashMap<Op, usize>,
}

impl ProgramBuilder<'_> {
    fn push(&mut self, op: Op) -> usize {
        if let Some(&r) = self.memo.get(&op) {
            return r;
        }
        let r = self.vars.len() + self.ops.len();
        self.ops.push(op);
        self.memo.insert(op, r);
        r
    }

    fn emit(&mut self, t: &Term) -> usize {
        match t {
            Term::Var(v) => self.vars.iter().position(|w| w == v).unwrap(),
            Term::One => self.push(Op::One),
            Term::Mul(a, b) => {
                let (a, b) = (self.emit(a), self.emit(b));
                self.push(Op::Mul(a, b))
            }
            Term::LDiv(a, b) => {
                let (a, b) = (self.emit(a), self.emit(b));
                self.push(Op::LDiv(a, b))
            }
            Term::RDiv(a, b) => {
                let (a, b) = (self.emit(a), self.emit(b));
                self.push(Op::RDiv(a, b))
            }
            Term::Inv(a) => {
                let a = self.emit(a);
                self.push(Op::Inv(a))
            }
        }
    }
}

/// Evaluates `t` in `l` under `env`.
pub fn eval(l: &CayleyLoop, t: &Term, env: &BTreeMap<String, usize>) -> Result<usize, TermError> {
    Ok(match t {
        Term::Var(v) => *env
            .get(v)
            .ok_or_else(|| TermError::UnboundVariable(v.clone()))?,
        Term::One => 0,
        Term::Mul(a, b) => l.mul(eval(l, a, env)?, eval(l, b, env)?),
        Term::LDiv(a, b) => l.ldiv(eval(l, a, env)?, eval(l, b, env)?),
        Term::RDiv(a, b) => l.rdiv(eval(l, a, env)?, eval(l, b, env)?),
        Term::Inv(a) => {
            let x = eval(l, a, env)?;
            l.inverse(x).map_err(|_| TermError::NotIP { element: x })?
        }
    })
}

/// Both sides of `id` under the assignment `values` (in `id.vars` order).
pub fn eval_sides(
    l: &CayleyLoop,
    id: &Identity,
    values: &[usize],
) -> Result<(usize, usize), TermError> {
    let env: BTreeMap<String, usize> = id
        .vars
        .iter()
        .cloned()
        .zip(values.iter().copied())
        .collect();
    Ok((eval(l, &id.lhs, &env)?, eval(l, &id.rhs, &env)?))
}

/// Outcome of an exhaustive identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub holds: bool,
    /// First falsifying assignment in lexicographic order, as
    /// `(variable, element)` pairs in the identity's variable order.
    pub witness: Option<Vec<(String, usize)>>,
    /// Assignments examined, including the witness.
    pub evaluations: u64,
}

impl CheckResult {
    pub fn witness_values(&self) -> Option<Vec<usize>> {
        self.witness
            .as_ref()
            .map(|w| w.iter().map(|(_, v)| *v).collect())
    }
}

/// Checks `id` on every assignment of its variables, in lexicographic order
/// with the first variable most significant.
pub fn holds(l: &CayleyLoop, id: &Identity) -> Result<CheckResult, TermError> {
    let prog = Program::compile(id);
    let n = l.order();
    let k = prog.nvars;
    let mut regs = vec![0usize; prog.registers()];
    let mut evaluations = 0u64;
    loop {
        evaluations += 1;
        prog.run(l, &mut regs)?;
        if regs[prog.lhs] != regs[prog.rhs] {
            let witness = id
                .vars
                .iter()
                .cloned()
                .zip(regs[..k].iter().copied())
                .collect();
            return Ok(CheckResult {
                holds: false,
                witness: Some(witness),
                evaluations,
            });
        }
        // odometer increment, last variable fastest
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(CheckResult {
                    holds: true,
                    witness: None,
                    evaluations,
                });
            }
            i -= 1;
            regs[i] += 1;
            if regs[i] < n {
                break;
            }
            regs[i] = 0;
        }
    }
}

/// Convenience wrapper: true iff `id` holds, treating a non-IP error as
/// failure.
pub fn satisfies(l: &CayleyLoop, id: &Identity) -> bool {
    matches!(holds(l, id), Ok(CheckResult { holds: true, .. }))
}

const CATALOG: &[(&str, &str)] = &[
    ("ASSOC", "(x*y)*z = x*(y*z)"),
    ("COMM", "x*y = y*x"),
    ("FLEX", "x*(y*x) = (x*y)*x"),
    ("RALT", "x*(y*y) = (x*y)*y"),
    ("LALT", "y*(y*x) = (y*y)*x"),
    ("M1", "(x*(y*z))*x = (x*y)*(z*x)"),
    ("M2", "(x*z)*(y*x) = x*((z*y)*x)"),
    ("N1", "((x*y)*z)*y = x*(y*(z*y))"),
    ("N2", "((y*z)*y)*x = y*(z*(y*x))"),
    ("C", "((x*y)*y)*z = x*(y*(y*z))"),
    ("W1", "(z*x)*((y*x)*y) = (z*((x*y)*x))*y"),
    ("W2", "(y*(x*y))*(x*z) = y*((x*(y*x))*z)"),
    ("RIF3", "(x*y)*(z*(x*y)) = ((x*(y*z))*x)*y"),
    ("RIF4", "((x*y)*z)*(x*y) = x*(y*((z*x)*y))"),
    ("RIFC", "((x*(y*z))*x)*y = x*(y*((z*x)*y))"),
];

/// The named identities used throughout the crate.
pub fn catalog() -> Vec<Identity> {
    CATALOG
        .iter()
        .map(|(name, src)| {
            parse_identity(src)
                .expect("catalog entry parses")
                .named(name)
        })
        .collect()
}

/// Looks up a catalog identity by name.
pub fn catalog_identity(name: &str) -> Option<Identity> {
    CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, src)| parse_identity(src).expect("catalog entry parses").named(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_c_law() {
        let id = parse_identity("((x*y)*y)*z = x*(y*(y*z))").unwrap();
        let (x, y, z) = (Term::var("x"), Term::var("y"), Term::var("z"));
        assert_eq!(
            id.lhs,
            Term::mul(
                Term::mul(Term::mul(x.clone(), y.clone()), y.clone()),
                z.clone()
            )
        );
        assert_eq!(id.rhs, Term::mul(x, Term::mul(y.clone(), Term::mul(y, z))));
        assert_eq!(id.vars, vec!["x", "y", "z"]);
    }

    #[test]
    fn parses_identity_law() {
        let id = parse_identity("x*1 = x").unwrap();
        assert_eq!(id.vars, vec!["x"]);
        assert_eq!(id.lhs, Term::mul(Term::var("x"), Term::One));
    }

    #[test]
    fn rejects_unparenthesized_chains() {
        assert!(matches!(
            parse_identity("x*y*z = x"),
            Err(TermError::Ambiguity { pos: 3 })
        ));
        assert!(matches!(
            parse_identity("x\\y/z = x"),
            Err(TermError::Ambiguity { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(
            parse_identity("x*(y = x"),
            Err(TermError::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_identity("x*y"),
            Err(TermError::Syntax { .. })
        ));
        assert!(matches!(
            parse_identity("x = 2"),
            Err(TermError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_identity("X = x"),
            Err(TermError::Syntax { pos: 0, .. })
        ));
    }

    #[test]
    fn postfix_inverse_and_divisions() {
        let id = parse_identity("x'\\(x*y) = (y/x')'").unwrap();
        assert_eq!(
            id.lhs,
            Term::ldiv(
                Term::inv(Term::var("x")),
                Term::mul(Term::var("x"), Term::var("y"))
            )
        );
        assert_eq!(
            id.rhs,
            Term::inv(Term::rdiv(Term::var("y"), Term::inv(Term::var("x"))))
        );
        assert_eq!(id.to_string(), "x'\\(x*y) = (y/x')'");
    }

    #[test]
    fn named_lines() {
        let id = parse_named_identity("flex : x*(y*x) = (x*y)*x").unwrap();
        assert_eq!(id.name.as_deref(), Some("flex"));
        let ids = parse_identity_file("# c\nA : x*1 = x\n\nB: 1*x = x\n").unwrap();
        assert_eq!(ids.len(), 2);
        let err = parse_identity_file("A : x*1 = x\nB : x*y*z = x\n").unwrap_err();
        assert!(matches!(err, TermError::Line { line: 2, .. }));
    }

    #[test]
    fn eval_basics() {
        let z5 = CayleyLoop::cyclic(5);
        assert_eq!(eval(&z5, &Term::One, &BTreeMap::new()), Ok(0));
        let env: BTreeMap<String, usize> = [("x".to_string(), 2)].into_iter().collect();
        assert_eq!(eval(&z5, &Term::inv(Term::var("x")), &env), Ok(3));
        assert_eq!(
            eval(&z5, &Term::var("y"), &env),
            Err(TermError::UnboundVariable("y".into()))
        );
    }

    #[test]
    fn holds_on_groups() {
        let z6 = CayleyLoop::cyclic(6);
        let assoc = catalog_identity("ASSOC").unwrap();
        let r = holds(&z6, &assoc).unwrap();
        assert!(r.holds);
        assert_eq!(r.evaluations, 216);
        assert!(r.witness.is_none());
    }

    #[test]
    fn witness_is_lexicographically_first() {
        let s3 = CayleyLoop::symmetric_group(3);
        let comm = catalog_identity("COMM").unwrap();
        let r = holds(&s3, &comm).unwrap();
        assert!(!r.holds);
        let w = r.witness_values().unwrap();
        // brute force: first (x, y) with xy != yx
        let mut first = None;
        'outer: for x in 0..6 {
            for y in 0..6 {
                if s3.mul(x, y) != s3.mul(y, x) {
                    first = Some(vec![x, y]);
                    break 'outer;
                }
            }
        }
        assert_eq!(Some(w.clone()), first);
        assert_eq!(r.evaluations, (w[0] * 6 + w[1] + 1) as u64);
    }

    #[test]
    fn closed_identity_evaluates_once() {
        let z3 = CayleyLoop::cyclic(3);
        let r = holds(&z3, &parse_identity("1*1 = 1").unwrap()).unwrap();
        assert!(r.holds);
        assert_eq!(r.evaluations, 1);
    }

    #[test]
    fn inverse_on_non_ip_loop_errors() {
        let l = CayleyLoop::from_table(&[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ])
        .unwrap();
        let id = parse_identity("x'*x = 1").unwrap();
        assert_eq!(holds(&l, &id), Err(TermError::NotIP { element: 2 }));
        // no inverse term, no error
        assert!(
            holds(&l, &parse_identity("x*1 = x").unwrap())
                .unwrap()
                .holds
        );
    }

    #[test]
    fn catalog_is_closed_and_mirrors_pair_up() {
        let cat = catalog();
        for id in &cat {
            let vars = id.vars.clone();
            let mut both = id.lhs.variables();
            both.extend(id.rhs.variables());
            assert!(both.iter().all(|v| vars.contains(v)));
            assert!(vars.iter().all(|v| both.contains(v)));
        }
        let w1 = catalog_identity("W1").unwrap().mirror();
        let w2 = catalog_identity("W2").unwrap();
        assert_eq!((w1.lhs, w1.rhs), (w2.lhs, w2.rhs));
    }

    #[test]
    fn mirror_swaps_divisions() {
        let t = parse_term("x\\(y/z)").unwrap();
        assert_eq!(t.mirror().to_string(), "(z\\y)/x");
        assert_eq!(t.mirror().mirror(), t);
    }
}
