//! Independent oracles shared by the integration tests. Nothing here calls
//! into the finder or the isomorphism search.

#![allow(dead_code)]

use std::collections::BTreeSet;

use loopforge::CayleyLoop;

/// Every loop table of order `n` with identity 0, by plain cell-by-cell
/// backtracking over row-major cells.
pub fn naive_loops(n: usize) -> Vec<Vec<usize>> {
    let mut t = vec![usize::MAX; n * n];
    for x in 0..n {
        t[x] = x;
        t[x * n] = x;
    }
    let cells: Vec<usize> = (1..n)
        .flat_map(|r| (1..n).map(move |c| r * n + c))
        .collect();
    let mut out = Vec::new();
    fill(n, &mut t, &cells, 0, &mut out);
    out
}

fn fill(n: usize, t: &mut [usize], cells: &[usize], k: usize, out: &mut Vec<Vec<usize>>) {
    let Some(&cell) = cells.get(k) else {
        out.push(t.to_vec());
        return;
    };
    let (r, c) = (cell / n, cell % n);
    for v in 0..n {
        let clash = (0..n).any(|j| t[r * n + j] == v || t[j * n + c] == v);
        if !clash {
            t[cell] = v;
            fill(n, t, cells, k + 1, out);
            t[cell] = usize::MAX;
        }
    }
}

/// All permutations of `0..n` that fix 0.
pub fn perms_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    permute(&mut p, 1, &mut out);
    out
}

fn permute(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k >= p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, out);
        p.swap(k, i);
    }
}

/// Lexicographically least relabeling of a table under all permutations
/// fixing 0.
pub fn canonical(n: usize, t: &[usize], perms: &[Vec<usize>]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    let mut img = vec![0; n * n];
    for p in perms {
        for a in 0..n {
            for b in 0..n {
                img[p[a] * n + p[b]] = p[t[a * n + b]];
            }
        }
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img.clone());
        }
    }
    best.unwrap_or_default()
}

/// Number of isomorphism classes of loops of order `n`.
pub fn naive_class_count(n: usize) -> usize {
    let perms = perms_fixing_zero(n);
    naive_loops(n)
        .iter()
        .map(|t| canonical(n, t, &perms))
        .collect::<BTreeSet<_>>()
        .len()
}

/// Brute-force isomorphism test by trying every relabeling.
pub fn naive_isomorphic(a: &CayleyLoop, b: &CayleyLoop) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let perms = perms_fixing_zero(n);
    canonical(n, a.table(), &perms) == canonical(n, b.table(), &perms)
}

/// The principal isotope `x o y = (x / b)(a \ y)`, renormalized so its
/// identity `ab` becomes 0.
pub fn principal_isotope(l: &CayleyLoop, a: usize, b: usize) -> CayleyLoop {
    let n = l.order();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| l.mul(l.rdiv(x, b), l.ldiv(a, y))).collect())
        .collect();
    CayleyLoop::normalize(&rows).expect("principal isotopes are loops")
}
