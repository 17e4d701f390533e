//! Finite model finder for loops: backtracking Latin square completion with
//! bitmask domains and propagation of ground identity instances.
//!
//! Row 0 and column 0 are fixed to the identity. Branching picks the unset
//! cell with the fewest candidates, lowest `(row, col)` first, and tries
//! values in ascending order, so node counts and the first model are
//! reproducible.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::loops::CayleyLoop;
use crate::term::{holds, parse_identity, parse_named_identity, Identity, Op, Program, TermError};

/// Largest order the bitmask representation supports.
pub const MAX_ORDER: usize = 64;

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FinderError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Term(#[from] TermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Stop at the first model.
    First,
    /// Count all completions.
    Count,
    /// All completions, keeping one representative per isomorphism class.
    EnumerateUpToIso,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub nodes: u64,
    pub time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nodes: 10_000_000,
            time: Duration::from_secs(300),
        }
    }
}

impl Budget {
    /// Parses `<nodes>` or `<nodes>:<seconds>`.
    pub fn parse(s: &str) -> Option<Budget> {
        let mut b = Budget::default();
        let (nodes, secs) = match s.split_once(':') {
            Some((n, t)) => (n, Some(t)),
            None => (s, None),
        };
        b.nodes = nodes.trim().parse().ok()?;
        if let Some(t) = secs {
            b.time = Duration::from_secs_f64(t.trim().parse().ok()?);
        }
        Some(b)
    }
}

#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub order: usize,
    pub identities: Vec<Identity>,
    /// Identities that must fail somewhere in a model.
    pub forbid: Vec<Identity>,
    pub require_ip: bool,
    pub require_exponent_two: bool,
    /// Cells fixed before search, as `(row, col, value)`.
    pub fixed: Vec<(usize, usize, usize)>,
    pub budget: Budget,
    pub mode: Mode,
}

impl SearchProblem {
    pub fn new(order: usize) -> SearchProblem {
        SearchProblem {
            order,
            identities: Vec::new(),
            forbid: Vec::new(),
            require_ip: false,
            require_exponent_two: false,
            fixed: Vec::new(),
            budget: Budget::default(),
            mode: Mode::First,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    /// Problem file: `n = <int>`, identity lines, `forbid: <identity>`,
    /// `flag: ip` and `flag: exp2`; `#` starts a comment line.
    pub fn parse(src: &str) -> Result<SearchProblem, FinderError> {
        let mut order = None;
        let mut p = SearchProblem::new(0);
        for (i, raw) in src.lines().enumerate() {
            let line = i + 1;
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let wrap = |e: TermError| FinderError::Parse {
                line,
                message: e.to_string(),
            };
            if let Some(rest) = text.strip_prefix("forbid:") {
                p.forbid.push(parse_identity(rest).map_err(wrap)?);
            } else if let Some(rest) = text.strip_prefix("flag:") {
                match rest.trim() {
                    "ip" => p.require_ip = true,
                    "exp2" => p.require_exponent_two = true,
                    other => {
                        return Err(FinderError::Parse {
                            line,
                            message: format!("unknown flag {other:?}"),
                        })
                    }
                }
            } else if let Some(rest) = text
                .strip_prefix('n')
                .and_then(|r| r.trim_start().strip_prefix('='))
            {
                order = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|e| FinderError::Parse {
                            line,
                            message: format!("bad order: {e}"),
                        })?,
                );
            } else {
                p.identities.push(parse_named_identity(text).map_err(wrap)?);
            }
        }
        p.order = order.ok_or(FinderError::Parse {
            line: 1,
            message: "missing `n = <int>` line".into(),
        })?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
    BudgetExhausted,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes: u64,
    pub propagations: u64,
    /// Complete tables rejected by the independent re-check.
    pub rejected: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub status: Status,
    /// First model, or one representative per isomorphism class.
    pub models: Vec<CayleyLoop>,
    /// Completions found (all modes).
    pub count: u64,
    pub unsat_reason: Option<String>,
    pub stats: Stats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conflict {
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conflict at cell ({}, {})", self.row, self.col)
    }
}

/// A partially filled Cayley table with per-line masks of unused values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialTable {
    n: usize,
    cells: Vec<usize>,
    row_free: Vec<u64>,
    col_free: Vec<u64>,
    /// `row_pos[a * n + v]` is the column holding `v` in row `a`.
    row_pos: Vec<usize>,
    /// `col_pos[b * n + v]` is the row holding `v` in column `b`.
    col_pos: Vec<usize>,
    unset: usize,
}

impl PartialTable {
    /// Empty table with the identity row and column filled in.
    pub fn new(n: usize) -> Result<PartialTable, FinderError> {
        if n == 0 || n > MAX_ORDER {
            return Err(FinderError::InvalidProblem(format!(
                "order must be between 1 and {MAX_ORDER}, got {n}"
            )));
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut t = PartialTable {
            n,
            cells: vec![UNSET; n * n],
            row_free: vec![full; n],
            col_free: vec![full; n],
            row_pos: vec![UNSET; n * n],
            col_pos: vec![UNSET; n * n],
            unset: n * n,
        };
        for x in 0..n {
            t.assign(0, x, x);
            if x > 0 {
                t.assign(x, 0, x);
            }
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Option<usize> {
        let v = self.cells[row * self.n + col];
        (v != UNSET).then_some(v)
    }

    pub fn is_complete(&self) -> bool {
        self.unset == 0
    }

    /// Candidate values of an unset cell.
    pub fn candidates(&self, row: usize, col: usize) -> u64 {
        if self.cells[row * self.n + col] != UNSET {
            return 0;
        }
        self.row_free[row] & self.col_free[col]
    }

    /// Total number of candidates over unset cells.
    pub fn freedom(&self) -> u64 {
        (0..self.n * self.n)
            .map(|i| self.candidates(i / self.n, i % self.n).count_ones() as u64)
            .sum()
    }

    fn assign(&mut self, row: usize, col: usize, v: usize) {
        let n = self.n;
        self.cells[row * n + col] = v;
        self.row_free[row] &= !(1u64 << v);
        self.col_free[col] &= !(1u64 << v);
        self.row_pos[row * n + v] = col;
        self.col_pos[col * n + v] = row;
        self.unset -= 1;
    }

    /// Sets a cell, or reports a conflict if `v` cannot go there. Setting a
    /// cell to its current value is a no-op.
    pub fn set(&mut self, row: usize, col: usize, v: usize) -> Result<bool, Conflict> {
        let n = self.n;
        if row >= n || col >= n || v >= n {
            return Err(Conflict { row, col });
        }
        match self.cells[row * n + col] {
            UNSET if self.candidates(row, col) & (1u64 << v) != 0 => {
                self.assign(row, col, v);
                Ok(true)
            }
            cur if cur == v => Ok(false),
            _ => Err(Conflict { row, col }),
        }
    }

    /// Minimum-remaining-values cell, lowest `(row, col)` on ties.
    pub fn branching(&self) -> Option<(usize, usize)> {
        let n = self.n;
        let mut best: Option<(u32, usize)> = None;
        for i in 0..n * n {
            if self.cells[i] != UNSET {
                continue;
            }
            let c = self.candidates(i / n, i % n).count_ones();
            if best.is_none_or(|(b, _)| c < b) {
                best = Some((c, i));
                if c <= 1 {
                    break;
                }
            }
        }
        best.map(|(_, i)| (i / n, i % n))
    }

    pub fn to_loop(&self) -> Option<CayleyLoop> {
        if !self.is_complete() {
            return None;
        }
        CayleyLoop::from_flat(self.n, self.cells.clone()).ok()
    }

    /// Latin rules: cells with one candidate, values with one place in a
    /// row or column. Returns whether anything changed.
    fn latin_pass(&mut self, stats: &mut Stats) -> Result<bool, Conflict> {
        let n = self.n;
        let mut changed = false;
        for row in 0..n {
            for col in 0..n {
                if self.cells[row * n + col] != UNSET {
                    continue;
                }
                let c = self.candidates(row, col);
                match c.count_ones() {
                    0 => return Err(Conflict { row, col }),
                    1 => {
                        self.assign(row, col, c.trailing_zeros() as usize);
                        stats.propagations += 1;
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        for line in 0..n {
            for v in 0..n {
                if self.row_pos[line * n + v] == UNSET {
                    let places: Vec<usize> = (0..n)
                        .filter(|&col| self.candidates(line, col) >> v & 1 == 1)
                        .take(2)
                        .collect();
                    match places.len() {
                        0 => return Err(Conflict { row: line, col: 0 }),
                        1 => {
                            self.assign(line, places[0], v);
                            stats.propagations += 1;
                            changed = true;
                        }
                        _ => {}
                    }
                }
                if self.col_pos[line * n + v] == UNSET {
                    let places: Vec<usize> = (0..n)
                        .filter(|&row| self.candidates(row, line) >> v & 1 == 1)
                        .take(2)
                        .collect();
                    match places.len() {
                        0 => return Err(Conflict { row: 0, col: line }),
                        1 => {
                            self.assign(places[0], line, v);
                            stats.propagations += 1;
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(changed)
    }

    fn eval_op(&self, op: Op, regs: &[usize]) -> usize {
        let n = self.n;
        let known = |r: usize| regs[r] != UNSET;
        match op {
            Op::One => 0,
            Op::Mul(a, b) if known(a) && known(b) => self.cells[regs[a] * n + regs[b]],
            // a \ b = u with a u = b
            Op::LDiv(a, b) if known(a) && known(b) => self.row_pos[regs[a] * n + regs[b]],
            // a / b = u with u b = a
            Op::RDiv(a, b) if known(a) && known(b) => self.col_pos[regs[b] * n + regs[a]],
            Op::Inv(a) if known(a) => {
                let right = self.row_pos[regs[a] * n];
                let left = self.col_pos[regs[a] * n];
                if right == left {
                    right
                } else {
                    UNSET
                }
            }
            _ => UNSET,
        }
    }

    /// Forces the cell that makes register `r` equal `v`, if its inputs
    /// are known.
    fn force(
        &mut self,
        prog: &Program,
        regs: &[usize],
        r: usize,
        v: usize,
    ) -> Result<bool, Conflict> {
        if r < prog.nvars {
            return Ok(false);
        }
        let known = |r: usize| regs[r] != UNSET;
        match prog.ops[r - prog.nvars] {
            Op::Mul(a, b) if known(a) && known(b) => self.set(regs[a], regs[b], v),
            Op::LDiv(a, b) if known(a) && known(b) => self.set(regs[a], v, regs[b]),
            Op::RDiv(a, b) if known(a) && known(b) => self.set(v, regs[b], regs[a]),
            Op::Inv(a) if known(a) => {
                let x = self.set(regs[a], v, 0)?;
                let y = self.set(v, regs[a], 0)?;
                Ok(x || y)
            }
            _ => Ok(false),
        }
    }

    /// One sweep over all ground instances of `prog`.
    fn identity_pass(&mut self, prog: &Program, stats: &mut Stats) -> Result<bool, Conflict> {
        let n = self.n;
        let k = prog.nvars;
        let mut regs = vec![0usize; prog.registers()];
        let mut changed = false;
        loop {
            for i in 0..prog.ops.len() {
                regs[k + i] = self.eval_op(prog.ops[i], &regs);
            }
            let (l, r) = (regs[prog.lhs], regs[prog.rhs]);
            match (l != UNSET, r != UNSET) {
                (true, true) if l != r => {
                    return Err(Conflict {
                        row: regs.first().copied().unwrap_or(0),
                        col: regs.get(1).copied().unwrap_or(0),
                    })
                }
                (true, false) if self.force(prog, &regs, prog.rhs, l)? => {
                    stats.propagations += 1;
                    changed = true;
                }
                (false, true) if self.force(prog, &regs, prog.lhs, r)? => {
                    stats.propagations += 1;
                    changed = true;
                }
                _ => {}
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(changed);
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
}

/// Propagation rules compiled from a problem.
pub struct Rules {
    programs: Vec<Program>,
}

impl Rules {
    /// Identity constraints plus the inverse property, written with explicit
    /// divisions so they propagate before inverses are known.
    pub fn new(problem: &SearchProblem) -> Rules {
        let mut ids = problem.identities.clone();
        if problem.require_ip {
            for src in ["(1/x)*(x*y) = y", "(y*x)*(x\\1) = y", "1/x = x\\1"] {
                ids.push(parse_identity(src).expect("built-in identity"));
            }
        }
        Rules {
            programs: ids.iter().map(Program::compile).collect(),
        }
    }

    /// Latin-only rules.
    pub fn latin() -> Rules {
        Rules {
            programs: Vec::new(),
        }
    }
}

/// Runs all rules to a fixpoint.
pub fn propagate(t: &mut PartialTable, rules: &Rules) -> Result<(), Conflict> {
    let mut stats = Stats::default();
    propagate_counting(t, rules, &mut stats)
}

fn propagate_counting(
    t: &mut PartialTable,
    rules: &Rules,
    stats: &mut Stats,
) -> Result<(), Conflict> {
    loop {
        let mut changed = t.latin_pass(stats)?;
        for prog in &rules.programs {
            changed |= t.identity_pass(prog, stats)?;
        }
        if !changed {
            return Ok(());
        }
    }
}

/// The problem's starting table: identity row and column, fixed cells and
/// the unit diagonal for exponent two.
pub fn initial_table(
    problem: &SearchProblem,
) -> Result<Result<PartialTable, Conflict>, FinderError> {
    let n = problem.order;
    let mut t = PartialTable::new(n)?;
    let mut fill = || -> Result<(), Conflict> {
        if problem.require_exponent_two {
            for x in 0..n {
                t.set(x, x, 0)?;
            }
        }
        for &(r, c, v) in &problem.fixed {
            t.set(r, c, v)?;
        }
        Ok(())
    };
    Ok(fill().map(|_| t))
}

type Invariant = Vec<(Vec<usize>, Vec<usize>)>;

struct Search<'a> {
    problem: &'a SearchProblem,
    rules: Rules,
    stats: Stats,
    start: Instant,
    out_of_budget: bool,
    count: u64,
    models: Vec<CayleyLoop>,
    /// Model indices bucketed by isomorphism invariant.
    classes: HashMap<Invariant, Vec<usize>>,
}

impl Search<'_> {
    fn accept(&mut self, l: &CayleyLoop) -> bool {
        let ok_ids = self
            .problem
            .identities
            .iter()
            .all(|id| matches!(holds(l, id), Ok(r) if r.holds));
        let ok_ip = !self.problem.require_ip || crate::varieties::is_ip(l);
        let ok_exp2 =
            !self.problem.require_exponent_two || (0..l.order()).all(|x| l.mul(x, x) == 0);
        if !(ok_ids && ok_ip && ok_exp2) {
            self.stats.rejected += 1;
            return false;
        }
        // an identity that cannot be evaluated does not hold
        self.problem
            .forbid
            .iter()
            .all(|id| !matches!(holds(l, id), Ok(r) if r.holds))
    }

    fn record(&mut self, l: CayleyLoop) {
        self.count += 1;
        match self.problem.mode {
            Mode::First => self.models.push(l),
            Mode::Count => {}
            Mode::EnumerateUpToIso => {
                let key = l.isomorphism_invariant();
                let bucket = self.classes.entry(key).or_default();
                if !bucket.iter().any(|&i| self.models[i].isomorphic(&l)) {
                    bucket.push(self.models.len());
                    self.models.push(l);
                }
            }
        }
    }

    fn done(&self) -> bool {
        self.out_of_budget || (self.problem.mode == Mode::First && !self.models.is_empty())
    }

    fn dfs(&mut self, mut t: PartialTable) {
        if propagate_counting(&mut t, &self.rules, &mut self.stats).is_err() {
            return;
        }
        let Some((row, col)) = t.branching() else {
            if let Some(l) = t.to_loop() {
                if self.accept(&l) {
                    self.record(l);
                }
            }
            return;
        };
        let mut cands = t.candidates(row, col);
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            self.stats.nodes += 1;
            if self.stats.nodes > self.problem.budget.nodes
                || (self.stats.nodes.is_multiple_of(1024)
                    && self.start.elapsed() > self.problem.budget.time)
            {
                self.out_of_budget = true;
                return;
            }
            let mut child = t.clone();
            child.assign(row, col, v);
            self.dfs(child);
            if self.done() {
                return;
            }
        }
    }
}

/// Searches for loops satisfying the problem. Models are re-checked with
/// the exhaustive identity checker before they are reported.
pub fn solve(problem: &SearchProblem) -> Result<SearchOutcome, FinderError> {
    let n = problem.order;
    if n == 0 || n > MAX_ORDER {
        return Err(FinderError::InvalidProblem(format!(
            "order must be between 1 and {MAX_ORDER}, got {n}"
        )));
    }
    let start = Instant::now();
    let unsat = |reason: &str| SearchOutcome {
        status: Status::Unsat,
        models: Vec::new(),
        count: 0,
        unsat_reason: Some(reason.to_string()),
        stats: Stats {
            elapsed: start.elapsed(),
            ..Stats::default()
        },
    };
    if problem.require_ip && problem.require_exponent_two && n > 1 && n % 2 == 1 {
        // IP with exponent two makes the table symmetric with a constant
        // diagonal, impossible for odd order
        return Ok(unsat("IP loops of exponent two have even order"));
    }
    let t = match initial_table(problem)? {
        Ok(t) => t,
        Err(c) => return Ok(unsat(&format!("fixed cells: {c}"))),
    };
    let mut search = Search {
        problem,
        rules: Rules::new(problem),
        stats: Stats::default(),
        start,
        out_of_budget: false,
        count: 0,
        models: Vec::new(),
        classes: HashMap::new(),
    };
    search.dfs(t);
    search.stats.elapsed = start.elapsed();
    let status = if search.out_of_budget {
        Status::BudgetExhausted
    } else if search.count > 0 {
        Status::Sat
    } else {
        Status::Unsat
    };
    Ok(SearchOutcome {
        status,
        models: search.models,
        count: search.count,
        unsat_reason: (status == Status::Unsat).then(|| "search space exhausted".to_string()),
        stats: search.stats,
    })
}
