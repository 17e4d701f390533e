//! Finite loops stored as Cayley tables.
//!
//! Elements are plain indices `0..n`, and element `0` is always the identity.
//! Division tables are computed once at construction so that `\` and `/` are
//! table lookups just like `·`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A row or column of a Cayley table, used to locate validation failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Column(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(r) => write!(f, "row {r}"),
            Line::Column(c) => write!(f, "column {c}"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LoopError {
    #[error("empty table")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not a Latin square: {line} repeats symbol {symbol}")]
    NotLatin { line: Line, symbol: usize },
    #[error("element 0 is not a two-sided identity: {line} is not the identity map")]
    NoIdentityAtZero { line: Line },
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("not an IP loop: left and right inverses of {element} differ")]
    NotIP { element: usize },
    #[error("not a group: ({0} * {1}) * {2} != {0} * ({1} * {2})")]
    NotAGroup(usize, usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A finite loop given by its multiplication table.
///
/// Immutable after construction; every query is a pure function of the table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyLoop {
    n: usize,
    mul: Vec<usize>,
    // ldiv[a * n + b] = a \ b
    ldiv: Vec<usize>,
    // rdiv[b * n + a] = b / a
    rdiv: Vec<usize>,
}

/// The subloop generated by a seed set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubloopClosure {
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
}

impl SubloopClosure {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

impl CayleyLoop {
    /// Validates a square grid and builds the loop.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, LoopError> {
        let n = rows.len();
        if n == 0 {
            return Err(LoopError::Empty);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(LoopError::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: n,
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, flat)
    }

    /// Builds a loop from a row-major table of length `n * n`.
    pub fn from_flat(n: usize, table: Vec<usize>) -> Result<Self, LoopError> {
        if n == 0 {
            return Err(LoopError::Empty);
        }
        if table.len() != n * n {
            return Err(LoopError::NotSquare {
                row: table.len() / n,
                len: table.len() % n,
                expected: n,
            });
        }
        check_latin(n, &table)?;
        for x in 0..n {
            if table[x] != x {
                return Err(LoopError::NoIdentityAtZero { line: Line::Row(0) });
            }
            if table[x * n] != x {
                return Err(LoopError::NoIdentityAtZero {
                    line: Line::Column(0),
                });
            }
        }
        Ok(Self::build(n, table))
    }

    /// Builds a loop from a Latin square whose identity is not necessarily
    /// element 0, swapping the identity's label with 0.
    pub fn normalize(rows: &[Vec<usize>]) -> Result<Self, LoopError> {
        let n = rows.len();
        if n == 0 {
            return Err(LoopError::Empty);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(LoopError::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: n,
                });
            }
            flat.extend_from_slice(row);
        }
        check_latin(n, &flat)?;
        let e = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] == x && flat[x * n + e] == x))
            .ok_or(LoopError::NoIdentity)?;
        let swap = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[swap(a) * n + swap(b)] = swap(flat[a * n + b]);
            }
        }
        Self::from_flat(n, table)
    }

    fn build(n: usize, mul: Vec<usize>) -> Self {
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for a in 0..n {
            for x in 0..n {
                let b = mul[a * n + x];
                ldiv[a * n + b] = x;
                // x * a = mul[x * n + a]
                let c = mul[x * n + a];
                rdiv[c * n + a] = x;
            }
        }
        CayleyLoop { n, mul, ldiv, rdiv }
    }

    pub fn trivial() -> Self {
        Self::build(1, vec![0])
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::build(n, table)
    }

    /// The elementary abelian 2-group of rank `k` (XOR on `0..2^k`).
    pub fn boolean_group(k: u32) -> Self {
        let n = 1usize << k;
        let table = (0..n * n).map(|i| (i / n) ^ (i % n)).collect();
        Self::build(n, table)
    }

    /// The symmetric group on `k` points; permutations are listed in
    /// lexicographic order so the identity is element 0.
    pub fn symmetric_group(k: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        loop {
            perms.push(current.clone());
            // next permutation in lexicographic order
            let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        let n = perms.len();
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                // apply a, then b
                let prod: Vec<usize> = (0..k).map(|i| perms[b][perms[a][i]]).collect();
                table[a * n + b] = index(&prod);
            }
        }
        Self::build(n, table)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    /// `a \ b`: the unique `x` with `a·x = b`.
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.n + b]
    }

    /// `b / a`: the unique `x` with `x·a = b`.
    #[inline]
    pub fn rdiv(&self, b: usize, a: usize) -> usize {
        self.rdiv[b * self.n + a]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.mul[a * self.n..(a + 1) * self.n]
    }

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// The `z` with `z·x = 1`, i.e. `1 / x`.
    #[inline]
    pub fn left_inverse(&self, x: usize) -> usize {
        self.rdiv(0, x)
    }

    /// The `z` with `x·z = 1`, i.e. `x \ 1`.
    #[inline]
    pub fn right_inverse(&self, x: usize) -> usize {
        self.ldiv(x, 0)
    }

    /// Two-sided inverse of `x`; fails when the one-sided inverses differ.
    pub fn inverse(&self, x: usize) -> Result<usize, LoopError> {
        let l = self.left_inverse(x);
        if l == self.right_inverse(x) {
            Ok(l)
        } else {
            Err(LoopError::NotIP { element: x })
        }
    }

    /// Right-associated power `x^k = 1·L(x)^k`. Negative exponents use
    /// `L(x⁻¹)` and need a two-sided inverse of `x`.
    pub fn power(&self, x: usize, k: i64) -> Result<usize, LoopError> {
        let base = if k < 0 { self.inverse(x)? } else { x };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(base, acc);
        }
        Ok(acc)
    }

    /// Period of the orbit of `1` under `L(x)`. `L(x)` is a permutation of
    /// a finite set, so the orbit always closes.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(x, acc);
            k += 1;
        }
        k
    }

    /// Least subloop containing `seed`.
    pub fn subloop_closure(&self, seed: impl IntoIterator<Item = usize>) -> SubloopClosure {
        let generators: Vec<usize> = {
            let mut g: Vec<usize> = seed.into_iter().collect();
            g.sort_unstable();
            g.dedup();
            g
        };
        let mut member = vec![false; self.n];
        let mut list = vec![0];
        member[0] = true;
        for &g in &generators {
            if !member[g] {
                member[g] = true;
                list.push(g);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            let mut j = 0;
            while j <= i {
                let b = list[j];
                for c in [
                    self.mul(a, b),
                    self.mul(b, a),
                    self.ldiv(a, b),
                    self.ldiv(b, a),
                    self.rdiv(a, b),
                    self.rdiv(b, a),
                ] {
                    if !member[c] {
                        member[c] = true;
                        list.push(c);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        list.sort_unstable();
        SubloopClosure {
            elements: list,
            generators,
        }
    }

    /// Three-sided nucleus: elements that associate in every position.
    pub fn nucleus(&self) -> Vec<usize> {
        self.elements()
            .filter(|&a| {
                self.elements().all(|x| {
                    self.elements().all(|y| {
                        self.mul(a, self.mul(x, y)) == self.mul(self.mul(a, x), y)
                            && self.mul(x, self.mul(a, y)) == self.mul(self.mul(x, a), y)
                            && self.mul(x, self.mul(y, a)) == self.mul(self.mul(x, y), a)
                    })
                })
            })
            .collect()
    }

    /// Componentwise product; the pair `(a, b)` gets index `a * |other| + b`.
    pub fn direct_product(&self, other: &CayleyLoop) -> CayleyLoop {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut table = vec![0; n * n];
        for a in 0..n {
            let (a1, a2) = (a / n2, a % n2);
            for b in 0..n {
                let (b1, b2) = (b / n2, b % n2);
                table[a * n + b] = self.mul(a1, b1) * n2 + other.mul(a2, b2);
            }
        }
        Self::build(n, table)
    }

    /// The loop with `x ∘ y = y · x`.
    pub fn opposite(&self) -> CayleyLoop {
        let n = self.n;
        let table = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        Self::build(n, table)
    }

    /// Chein's doubling `M(G, 2)` of a group `G`: elements `g` keep their
    /// index and `g·u` gets index `|G| + g`.
    pub fn chein_double(&self) -> Result<CayleyLoop, LoopError> {
        if let Some((a, b, c)) = self.associativity_witness() {
            return Err(LoopError::NotAGroup(a, b, c));
        }
        let g = self.n;
        let n = 2 * g;
        let inv = |x: usize| self.left_inverse(x);
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (x, xu) = (a % g, a >= g);
                let (y, yu) = (b % g, b >= g);
                table[a * n + b] = match (xu, yu) {
                    (false, false) => self.mul(x, y),
                    (false, true) => g + self.mul(y, x),
                    (true, false) => g + self.mul(x, inv(y)),
                    (true, true) => self.mul(inv(y), x),
                };
            }
        }
        Ok(Self::build(n, table))
    }

    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.mul(a, b);
                for c in self.elements() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        for a in self.elements() {
            for b in a + 1..self.n {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    pub fn is_boolean_group(&self) -> bool {
        self.elements().all(|x| self.mul(x, x) == 0) && self.is_associative()
    }

    /// Relabels elements by `perm` (element `x` becomes `perm[x]`).
    /// `perm` must be a permutation fixing 0.
    pub fn relabel(&self, perm: &[usize]) -> Result<CayleyLoop, LoopError> {
        let n = self.n;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        Self::from_flat(n, table)
    }

    /// Per-element isomorphism invariants: cycle types of `L(x)` and `R(x)`.
    fn signatures(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let cycle_type = |image: &dyn Fn(usize) -> usize| {
            let mut seen = vec![false; self.n];
            let mut lens = Vec::new();
            for start in 0..self.n {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut p = start;
                while !seen[p] {
                    seen[p] = true;
                    p = image(p);
                    len += 1;
                }
                lens.push(len);
            }
            lens.sort_unstable();
            lens
        };
        self.elements()
            .map(|x| {
                (
                    cycle_type(&|y| self.mul(x, y)),
                    cycle_type(&|y| self.mul(y, x)),
                )
            })
            .collect()
    }

    /// Sorted per-element invariants; equal for isomorphic loops.
    pub fn isomorphism_invariant(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut s = self.signatures();
        s.sort();
        s
    }

    /// An isomorphism `self → other` as an image list, if one exists.
    pub fn isomorphism(&self, other: &CayleyLoop) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let sa = self.signatures();
        let sb = other.signatures();
        let mut sorted_a = sa.clone();
        let mut sorted_b = sb.clone();
        sorted_a.sort();
        sorted_b.sort();
        if sorted_a != sorted_b {
            return None;
        }
        let mut search = IsoSearch {
            a: self,
            b: other,
            sig_a: &sa,
            sig_b: &sb,
            map: vec![usize::MAX; self.n],
            inv: vec![usize::MAX; self.n],
            assigned: Vec::new(),
        };
        if !search.assign(0, 0) {
            return None;
        }
        if search.backtrack() {
            Some(search.map)
        } else {
            None
        }
    }

    pub fn isomorphic(&self, other: &CayleyLoop) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Canonical text form: the order, then one row per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for row in self.mul.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(src: &str) -> Result<Self, LoopError> {
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first, header) = lines.next().ok_or(LoopError::Empty)?;
        let n: usize = header.parse().map_err(|_| LoopError::Parse {
            line: first,
            message: format!("expected the order, found {header:?}"),
        })?;
        let mut rows = Vec::with_capacity(n);
        for (lineno, line) in lines {
            if rows.len() == n {
                return Err(LoopError::Parse {
                    line: lineno,
                    message: format!("more than {n} rows"),
                });
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| LoopError::Parse {
                        line: lineno,
                        message: format!("not an element index: {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(LoopError::Parse {
                line: first,
                message: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        Self::from_table(&rows)
    }
}

fn check_latin(n: usize, table: &[usize]) -> Result<(), LoopError> {
    let mut seen = vec![false; n];
    for r in 0..n {
        seen.fill(false);
        for c in 0..n {
            let v = table[r * n + c];
            if v >= n {
                return Err(LoopError::OutOfRange {
                    row: r,
                    col: c,
                    value: v,
                    order: n,
                });
            }
            if seen[v] {
                return Err(LoopError::NotLatin {
                    line: Line::Row(r),
                    symbol: v,
                });
            }
            seen[v] = true;
        }
    }
    for c in 0..n {
        seen.fill(false);
        for r in 0..n {
            let v = table[r * n + c];
            if seen[v] {
                return Err(LoopError::NotLatin {
                    line: Line::Column(c),
                    symbol: v,
                });
            }
            seen[v] = true;
        }
    }
    Ok(())
}

struct IsoSearch<'a> {
    a: &'a CayleyLoop,
    b: &'a CayleyLoop,
    sig_a: &'a [(Vec<usize>, Vec<usize>)],
    sig_b: &'a [(Vec<usize>, Vec<usize>)],
    map: Vec<usize>,
    inv: Vec<usize>,
    assigned: Vec<usize>,
}

impl IsoSearch<'_> {
    /// Maps `x ↦ y` and closes the partial map under products. Leaves the
    /// trail in place on failure; the caller undoes it.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut stack = vec![(x, y)];
        while let Some((x, y)) = stack.pop() {
            if self.map[x] == y {
                continue;
            }
            if self.map[x] != usize::MAX || self.inv[y] != usize::MAX {
                return false;
            }
            if self.sig_a[x] != self.sig_b[y] {
                return false;
            }
            self.map[x] = y;
            self.inv[y] = x;
            self.assigned.push(x);
            for i in 0..self.assigned.len() {
                let z = self.assigned[i];
                let w = self.map[z];
                stack.push((self.a.mul(x, z), self.b.mul(y, w)));
                stack.push((self.a.mul(z, x), self.b.mul(w, y)));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().unwrap();
            self.inv[self.map[x]] = usize::MAX;
            self.map[x] = usize::MAX;
        }
    }

    fn backtrack(&mut self) -> bool {
        let Some(x) = (0..self.a.n).find(|&x| self.map[x] == usize::MAX) else {
            return true;
        };
        for y in 0..self.b.n {
            if self.inv[y] != usize::MAX || self.sig_a[x] != self.sig_b[y] {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign(x, y) && self.backtrack() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

impl fmt::Debug for CayleyLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyLoop(order {})", self.n)?;
        if self.n <= 16 {
            for row in self.mul.chunks(self.n) {
                write!(f, "\n  {row:?}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for CayleyLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for CayleyLoop {
    type Err = LoopError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_text(s)
    }
}
