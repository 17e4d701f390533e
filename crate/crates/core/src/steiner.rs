//! Steiner triple systems and their Steiner loops.
//!
//! Points of a system are `0..v`. In the associated loop the identity is
//! element 0 and point `p` is element `p + 1`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::loops::CayleyLoop;
use crate::varieties::is_steiner;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SteinerError {
    #[error("block {index} is not three distinct points below {v}: {block:?}")]
    BadBlock {
        index: usize,
        block: [usize; 3],
        v: usize,
    },
    #[error("pair {{{0}, {1}}} lies in no block")]
    PairMissing(usize, usize),
    #[error("pair {{{0}, {1}}} lies in more than one block")]
    PairDuplicated(usize, usize),
    #[error("loop is not a Steiner loop")]
    NotSteiner,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSystem {
    pub v: usize,
    /// Each block sorted ascending; blocks sorted lexicographically.
    pub blocks: Vec<[usize; 3]>,
}

impl TripleSystem {
    /// Normalizes block order; does not validate.
    pub fn new(v: usize, blocks: impl IntoIterator<Item = [usize; 3]>) -> TripleSystem {
        let mut blocks: Vec<[usize; 3]> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable();
        TripleSystem { v, blocks }
    }

    /// Every pair of distinct points lies in exactly one block. Reports the
    /// lexicographically first offending pair.
    pub fn validate(&self) -> Result<(), SteinerError> {
        let v = self.v;
        let mut count = vec![0u32; v * v];
        for (index, &block) in self.blocks.iter().enumerate() {
            let [a, b, c] = block;
            if c >= v || a == b || b == c {
                return Err(SteinerError::BadBlock { index, block, v });
            }
            for (x, y) in [(a, b), (a, c), (b, c)] {
                count[x * v + y] += 1;
            }
        }
        for x in 0..v {
            for y in x + 1..v {
                match count[x * v + y] {
                    0 => return Err(SteinerError::PairMissing(x, y)),
                    1 => {}
                    _ => return Err(SteinerError::PairDuplicated(x, y)),
                }
            }
        }
        Ok(())
    }

    /// Third point of the block through `x != y`.
    pub fn third_point(&self, x: usize, y: usize) -> Option<usize> {
        self.blocks.iter().find_map(|b| {
            if b.contains(&x) && b.contains(&y) && x != y {
                b.iter().copied().find(|&p| p != x && p != y)
            } else {
                None
            }
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("v = {}\n", self.v);
        for [a, b, c] in &self.blocks {
            out.push_str(&format!("{a} {b} {c}\n"));
        }
        out
    }

    /// `v = <int>` then one block per line; blank and `#` lines ignored.
    pub fn parse_text(src: &str) -> Result<TripleSystem, SteinerError> {
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(SteinerError::Parse {
            line: 1,
            message: "missing `v = <int>` line".into(),
        })?;
        let v = header
            .strip_prefix('v')
            .and_then(|r| r.trim_start().strip_prefix('='))
            .and_then(|r| r.trim().parse::<usize>().ok())
            .ok_or(SteinerError::Parse {
                line,
                message: format!("expected `v = <int>`, found {header:?}"),
            })?;
        let mut blocks = Vec::new();
        for (line, text) in lines {
            let pts: Vec<usize> = text
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|e| SteinerError::Parse {
                    line,
                    message: format!("{e}"),
                })?;
            let block: [usize; 3] = pts.try_into().map_err(|_| SteinerError::Parse {
                line,
                message: "a block has exactly three points".into(),
            })?;
            blocks.push(block);
        }
        Ok(TripleSystem::new(v, blocks))
    }
}

impl fmt::Display for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for TripleSystem {
    type Err = SteinerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TripleSystem::parse_text(s)
    }
}

/// The cyclic system on `Z_13` with blocks `{n, n+2, n+8}` and
/// `{n, n+3, n+4}`.
pub fn z13_system() -> TripleSystem {
    TripleSystem::new(
        13,
        (0..13).flat_map(|n| {
            [
                [n, (n + 2) % 13, (n + 8) % 13],
                [n, (n + 3) % 13, (n + 4) % 13],
            ]
        }),
    )
}

/// The affine plane of order 3: rows, columns and both diagonal classes of
/// the 3x3 grid with point `3r + c`.
pub fn affine_plane_9() -> TripleSystem {
    let p = |r: usize, c: usize| 3 * (r % 3) + (c % 3);
    let mut blocks = Vec::new();
    for i in 0..3 {
        blocks.push([p(i, 0), p(i, 1), p(i, 2)]);
        blocks.push([p(0, i), p(1, i), p(2, i)]);
        blocks.push([p(0, i), p(1, i + 1), p(2, i + 2)]);
        blocks.push([p(0, i), p(1, i + 2), p(2, i + 1)]);
    }
    TripleSystem::new(9, blocks)
}

/// The Fano plane.
pub fn fano() -> TripleSystem {
    TripleSystem::new(7, (0..7).map(|i| [i, (i + 1) % 7, (i + 3) % 7]))
}

/// Adjoins an identity: `x x = 1` and `x y` is the third point of the block
/// through `x` and `y`.
pub fn steiner_loop(ts: &TripleSystem) -> Result<CayleyLoop, SteinerError> {
    ts.validate()?;
    let n = ts.v + 1;
    let mut table = vec![0usize; n * n];
    for x in 0..n {
        table[x] = x;
        table[x * n] = x;
    }
    for &[a, b, c] in &ts.blocks {
        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
            table[(x + 1) * n + (y + 1)] = z + 1;
            table[(y + 1) * n + (x + 1)] = z + 1;
        }
    }
    Ok(CayleyLoop::from_flat(n, table).expect("a valid triple system gives a loop"))
}

/// The blocks `{x, y, xy}` of a Steiner loop, shifted back to points.
pub fn loop_to_system(l: &CayleyLoop) -> Result<TripleSystem, SteinerError> {
    if !is_steiner(l) {
        return Err(SteinerError::NotSteiner);
    }
    let n = l.order();
    let mut blocks = Vec::new();
    for x in 1..n {
        for y in x + 1..n {
            let z = l.mul(x, y);
            if z > y {
                blocks.push([x - 1, y - 1, z - 1]);
            }
        }
    }
    let ts = TripleSystem::new(n - 1, blocks);
    ts.validate()?;
    Ok(ts)
}

/// Point name of a loop element: `e` for the identity, else the point.
pub fn point_label(element: usize) -> String {
    match element {
        0 => "e".to_string(),
        x => (x - 1).to_string(),
    }
}

/// Loop element of point `p`.
pub fn point_element(p: usize) -> usize {
    p + 1
}
