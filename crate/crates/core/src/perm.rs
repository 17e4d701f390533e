//! Permutations of loop elements, translation maps, multiplication and inner
//! mapping groups.
//!
//! Composition is diagrammatic: `p.then(&q)` applies `p` first, so
//! `i (pq) = (i p) q`. Operator products such as `R(x) L(x)^-1` are therefore
//! built left to right in the order they are written.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::loops::{CayleyLoop, LoopError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("closure exceeded cap after {partial} elements")]
    CapExceeded { partial: usize },
    #[error(transparent)]
    Loop(#[from] LoopError),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] || n > u16::MAX as usize {
                return Err(PermError::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Self::from_fn(n, |i| images[i]))
    }

    /// Caller guarantees `f` is a bijection on `0..n`.
    pub(crate) fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Permutation {
        Permutation {
            images: (0..n).map(|i| f(i) as u16).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        Permutation { images }
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.apply(i) == i
    }

    /// Cycles including fixed points, e.g. `(0)(1 4)(2 3)`.
    pub fn cycle_notation(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i.to_string());
                i = self.apply(i);
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        out
    }

    /// One-line image list, `[i0 i1 ...]`.
    pub fn image_list(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(|i| i.to_string()).collect();
        format!("[{}]", parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// Left translation `y -> x*y`.
pub fn l_map(l: &CayleyLoop, x: usize) -> Permutation {
    Permutation::from_fn(l.order(), |y| l.mul(x, y))
}

/// Right translation `y -> y*x`.
pub fn r_map(l: &CayleyLoop, x: usize) -> Permutation {
    Permutation::from_fn(l.order(), |y| l.mul(y, x))
}

/// `L(x) R(x)`: `y -> (x*y)*x`.
pub fn p_map(l: &CayleyLoop, x: usize) -> Permutation {
    l_map(l, x).then(&r_map(l, x))
}

/// Label of an inner mapping generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InnerLabel {
    /// `R(x) L(x)^-1`
    T(usize),
    /// `L(x) L(y) L(yx)^-1`
    L(usize, usize),
    /// `R(x) R(y) R(xy)^-1`
    R(usize, usize),
}

impl InnerLabel {
    /// Image of `i` under this inner mapping, computed from the table.
    #[inline]
    pub fn apply(&self, l: &CayleyLoop, i: usize) -> usize {
        match *self {
            InnerLabel::T(x) => l.ldiv(x, l.mul(i, x)),
            InnerLabel::L(x, y) => l.ldiv(l.mul(y, x), l.mul(y, l.mul(x, i))),
            InnerLabel::R(x, y) => l.rdiv(l.mul(l.mul(i, x), y), l.mul(x, y)),
        }
    }

    pub fn permutation(&self, l: &CayleyLoop) -> Permutation {
        Permutation::from_fn(l.order(), |i| self.apply(l, i))
    }
}

impl fmt::Display for InnerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerLabel::T(x) => write!(f, "T({x})"),
            InnerLabel::L(x, y) => write!(f, "L({x},{y})"),
            InnerLabel::R(x, y) => write!(f, "R({x},{y})"),
        }
    }
}

/// All `T(x)`, then all `L(x,y)`, then all `R(x,y)`, in index order.
pub fn inner_labels(n: usize) -> impl Iterator<Item = InnerLabel> {
    (0..n)
        .map(InnerLabel::T)
        .chain((0..n * n).map(move |k| InnerLabel::L(k / n, k % n)))
        .chain((0..n * n).map(move |k| InnerLabel::R(k / n, k % n)))
}

/// The `2n^2 + n` standard inner mapping generators.
pub fn inner_generators(l: &CayleyLoop) -> Vec<(InnerLabel, Permutation)> {
    inner_labels(l.order())
        .map(|lab| (lab, lab.permutation(l)))
        .collect()
}

/// The inverse map `x -> x^-1`.
pub fn j_perm(l: &CayleyLoop) -> Result<Permutation, PermError> {
    let images = (0..l.order())
        .map(|x| l.inverse(x))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Permutation::from_fn(l.order(), |x| images[x]))
}

/// `J p J`.
pub fn conj_by_j(l: &CayleyLoop, p: &Permutation) -> Result<Permutation, PermError> {
    let j = j_perm(l)?;
    j.compose(p).map(|jp| jp.then(&j))
}

/// Outcome of the inverse-preservation test on inner mappings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerCheck {
    pub holds: bool,
    pub witness: Option<InnerLabel>,
}

/// True iff every inner mapping generator commutes with `J`. Since
/// conjugation by `J` is an automorphism of the symmetric group, this
/// decides the property for all of `Mlt_1`.
pub fn is_rif_inner(l: &CayleyLoop) -> Result<InnerCheck, PermError> {
    let j = j_perm(l)?;
    let n = l.order();
    for lab in inner_labels(n) {
        if (0..n).any(|i| lab.apply(l, j.apply(i)) != j.apply(lab.apply(l, i))) {
            return Ok(InnerCheck {
                holds: false,
                witness: Some(lab),
            });
        }
    }
    Ok(InnerCheck {
        holds: true,
        witness: None,
    })
}

/// Slow variant of [`is_rif_inner`]: closes `Mlt_1` and checks every
/// element. Returns `CapExceeded` when the group is too large to list.
pub fn is_rif_inner_full(l: &CayleyLoop, cap: usize) -> Result<bool, PermError> {
    let j = j_perm(l)?;
    let mut g = mlt1(l);
    g.cap = cap;
    let elements = g.close()?;
    Ok(elements.iter().all(|p| j.then(p).then(&j) == *p))
}

pub const DEFAULT_CAP: usize = 1_000_000;

/// A permutation group given by generators, with optional explicit closure.
#[derive(Debug, Clone)]
pub struct GeneratedGroup {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub cap: usize,
    elements: Option<Vec<Permutation>>,
}

impl GeneratedGroup {
    /// Identity generators and duplicates are dropped.
    pub fn new(degree: usize, generators: impl IntoIterator<Item = Permutation>) -> GeneratedGroup {
        let mut seen = HashSet::new();
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        GeneratedGroup {
            degree,
            generators,
            cap: DEFAULT_CAP,
            elements: None,
        }
    }

    /// Breadth-first closure. The element list is sorted.
    pub fn close(&mut self) -> Result<&[Permutation], PermError> {
        if self.elements.is_none() {
            let id = Permutation::identity(self.degree);
            let mut seen: HashSet<Permutation> = HashSet::new();
            seen.insert(id.clone());
            let mut queue = VecDeque::from([id]);
            while let Some(p) = queue.pop_front() {
                for g in &self.generators {
                    let q = p.then(g);
                    if !seen.contains(&q) {
                        if seen.len() >= self.cap {
                            return Err(PermError::CapExceeded {
                                partial: seen.len(),
                            });
                        }
                        seen.insert(q.clone());
                        queue.push_back(q);
                    }
                }
            }
            let mut elements: Vec<Permutation> = seen.into_iter().collect();
            elements.sort();
            self.elements = Some(elements);
        }
        Ok(self.elements.as_deref().unwrap())
    }

    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    pub fn chain(&self) -> StabChain {
        StabChain::new(self.degree, &self.generators)
    }

    /// Group order from a stabilizer chain; works beyond the closure cap.
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    /// Orbit of `point`, in discovery order, with a transversal: `reps[k]`
    /// maps `point` to `orbit[k]`.
    pub fn orbit(&self, point: usize) -> (Vec<usize>, Vec<Permutation>) {
        let mut index = vec![usize::MAX; self.degree];
        let mut orbit = vec![point];
        let mut reps = vec![Permutation::identity(self.degree)];
        index[point] = 0;
        let mut k = 0;
        while k < orbit.len() {
            for g in &self.generators {
                let q = g.apply(orbit[k]);
                if index[q] == usize::MAX {
                    index[q] = orbit.len();
                    orbit.push(q);
                    reps.push(reps[k].then(g));
                }
            }
            k += 1;
        }
        (orbit, reps)
    }

    /// Schreier generators `t_p s t_{ps}^-1` of the stabilizer of `point`.
    pub fn stabilizer_generators(&self, point: usize) -> Vec<Permutation> {
        let (orbit, reps) = self.orbit(point);
        let mut index = vec![usize::MAX; self.degree];
        for (k, &p) in orbit.iter().enumerate() {
            index[p] = k;
        }
        let mut out = Vec::new();
        for (k, &p) in orbit.iter().enumerate() {
            for s in &self.generators {
                let q = s.apply(p);
                out.push(reps[k].then(s).then(&reps[index[q]].inverse()));
            }
        }
        out
    }

    /// True iff both generate the same group.
    pub fn same_group(&self, other: &GeneratedGroup) -> bool {
        if self.degree != other.degree {
            return false;
        }
        let a = self.chain();
        let b = other.chain();
        a.order() == b.order()
            && self.generators.iter().all(|g| b.contains(g))
            && other.generators.iter().all(|g| a.contains(g))
    }
}

/// `Mlt(L)`, generated by all left and right translations.
pub fn mlt(l: &CayleyLoop) -> GeneratedGroup {
    let n = l.order();
    GeneratedGroup::new(n, (0..n).flat_map(|x| [l_map(l, x), r_map(l, x)]))
}

/// `Mlt_1(L)`, generated by the standard inner mappings.
pub fn mlt1(l: &CayleyLoop) -> GeneratedGroup {
    GeneratedGroup::new(
        l.order(),
        inner_labels(l.order()).map(|lab| lab.permutation(l)),
    )
}

/// Stabilizer of the identity in `Mlt(L)`, generated from Schreier's lemma.
pub fn schreier_stabilizer(l: &CayleyLoop) -> GeneratedGroup {
    GeneratedGroup::new(l.order(), mlt(l).stabilizer_generators(0))
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// `transversal[p]` maps `base` to `p`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

/// Deterministic Schreier-Sims stabilizer chain, for order and membership.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            chain.extend(0, g.clone());
        }
        chain
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(0, g.clone()).is_identity()
    }

    fn sift(&self, from: usize, mut g: Permutation) -> Permutation {
        for level in &self.levels[from..] {
            let b = g.apply(level.base);
            match &level.transversal[b] {
                Some(t) => g = g.then(&t.inverse()),
                None => return g,
            }
        }
        g
    }

    fn extend(&mut self, i: usize, g: Permutation) {
        if self.sift(i, g.clone()).is_identity() {
            return;
        }
        if i == self.levels.len() {
            let base = (0..self.degree).find(|&p| !g.fixes(p)).unwrap();
            let mut transversal = vec![None; self.degree];
            transversal[base] = Some(Permutation::identity(self.degree));
            self.levels.push(Level {
                base,
                gens: Vec::new(),
                transversal,
                orbit: vec![base],
            });
        }
        self.levels[i].gens.push(g);
        // extend the orbit; existing transversal entries never change
        let level = &mut self.levels[i];
        let mut k = 0;
        while k < level.orbit.len() {
            let p = level.orbit[k];
            for s in &level.gens {
                let q = s.apply(p);
                if level.transversal[q].is_none() {
                    let t = level.transversal[p].as_ref().unwrap().then(s);
                    level.transversal[q] = Some(t);
                    level.orbit.push(q);
                }
            }
            k += 1;
        }
        let mut schreier = Vec::new();
        let level = &self.levels[i];
        for &p in &level.orbit {
            let tp = level.transversal[p].as_ref().unwrap();
            for s in &level.gens {
                let q = s.apply(p);
                let h = tp
                    .then(s)
                    .then(&level.transversal[q].as_ref().unwrap().inverse());
                if !h.is_identity() {
                    schreier.push(h);
                }
            }
        }
        for h in schreier {
            self.extend(i + 1, h);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn composition_is_left_to_right() {
        let p = perm(&[1, 2, 0]);
        let q = perm(&[1, 0, 2]);
        // 0 -> 1 under p, then 1 -> 0 under q
        assert_eq!(p.then(&q).apply(0), 0);
        assert_eq!(p.then(&q).apply(1), 2);
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(
            p.compose(&Permutation::identity(4)),
            Err(PermError::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn translations_in_z5() {
        let z5 = CayleyLoop::cyclic(5);
        assert!(l_map(&z5, 0).is_identity());
        assert!(l_map(&z5, 2).then(&l_map(&z5, 3)).is_identity());
        assert_eq!(l_map(&z5, 2), r_map(&z5, 2));
        assert_eq!(j_perm(&z5).unwrap().cycle_notation(), "(0)(1 4)(2 3)");
    }

    #[test]
    fn inner_generators_fix_identity() {
        let l = CayleyLoop::chein_double(&CayleyLoop::symmetric_group(3)).unwrap();
        let gens = inner_generators(&l);
        assert_eq!(gens.len(), 2 * 144 + 12);
        assert!(gens.iter().all(|(_, p)| p.fixes(0)));
    }

    #[test]
    fn inner_maps_of_groups_are_automorphisms() {
        let s3 = CayleyLoop::symmetric_group(3);
        for (_, p) in inner_generators(&s3) {
            for a in 0..6 {
                for b in 0..6 {
                    assert_eq!(p.apply(s3.mul(a, b)), s3.mul(p.apply(a), p.apply(b)));
                }
            }
        }
    }

    #[test]
    fn inner_generator_formulas_match_operator_products() {
        let l = CayleyLoop::chein_double(&CayleyLoop::symmetric_group(3)).unwrap();
        for x in 0..12 {
            let t = r_map(&l, x).then(&l_map(&l, x).inverse());
            assert_eq!(InnerLabel::T(x).permutation(&l), t);
            for y in 0..12 {
                let lxy = l_map(&l, x)
                    .then(&l_map(&l, y))
                    .then(&l_map(&l, l.mul(y, x)).inverse());
                assert_eq!(InnerLabel::L(x, y).permutation(&l), lxy);
                let rxy = r_map(&l, x)
                    .then(&r_map(&l, y))
                    .then(&r_map(&l, l.mul(x, y)).inverse());
                assert_eq!(InnerLabel::R(x, y).permutation(&l), rxy);
            }
        }
    }

    #[test]
    fn closures() {
        let mut g = GeneratedGroup::new(4, [Permutation::identity(4)]);
        assert_eq!(g.close().unwrap().len(), 1);
        let z5 = CayleyLoop::cyclic(5);
        let mut m = mlt(&z5);
        assert_eq!(m.close().unwrap().len(), 5);
        assert_eq!(m.order(), 5);
        let mut m1 = mlt1(&z5);
        assert_eq!(m1.close().unwrap().len(), 1);
    }

    #[test]
    fn cap_is_reported() {
        let s6 = GeneratedGroup {
            cap: 100,
            ..GeneratedGroup::new(6, [perm(&[1, 2, 3, 4, 5, 0]), perm(&[1, 0, 2, 3, 4, 5])])
        };
        let mut s6 = s6;
        assert!(matches!(
            s6.close(),
            Err(PermError::CapExceeded { partial: 100 })
        ));
        assert_eq!(s6.order(), 720);
    }

    #[test]
    fn chain_order_matches_closure() {
        let s3 = CayleyLoop::symmetric_group(3);
        let l = CayleyLoop::chein_double(&s3).unwrap();
        for g in [mlt(&l), mlt1(&l), mlt(&s3)] {
            let mut h = g.clone();
            let n = h.close().unwrap().len() as u128;
            assert_eq!(g.order(), n);
            let chain = g.chain();
            for e in h.elements().unwrap() {
                assert!(chain.contains(e));
            }
        }
    }

    #[test]
    fn membership_rejects_outsiders() {
        let a4ish = GeneratedGroup::new(4, [perm(&[1, 2, 0, 3]), perm(&[0, 2, 3, 1])]);
        let chain = a4ish.chain();
        assert_eq!(chain.order(), 12);
        assert!(!chain.contains(&perm(&[1, 0, 2, 3])));
        assert!(chain.contains(&perm(&[1, 0, 3, 2])));
    }

    #[test]
    fn schreier_stabilizer_matches_inner_group() {
        let l = CayleyLoop::chein_double(&CayleyLoop::symmetric_group(3)).unwrap();
        let a = mlt1(&l);
        let b = schreier_stabilizer(&l);
        assert!(a.same_group(&b));
        assert_eq!(mlt(&l).order(), 12 * a.order());
    }

    #[test]
    fn j_conjugation() {
        let l = CayleyLoop::chein_double(&CayleyLoop::symmetric_group(3)).unwrap();
        let id = Permutation::identity(12);
        assert_eq!(conj_by_j(&l, &id).unwrap(), id);
        for x in 0..12 {
            let xi = l.inverse(x).unwrap();
            assert_eq!(conj_by_j(&l, &l_map(&l, x)).unwrap(), r_map(&l, xi));
            assert_eq!(conj_by_j(&l, &r_map(&l, x)).unwrap(), l_map(&l, xi));
            let t = InnerLabel::T(x).permutation(&l);
            assert_eq!(conj_by_j(&l, &t).unwrap(), t);
        }
        assert!(is_rif_inner(&l).unwrap().holds);
        assert!(is_rif_inner_full(&l, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn j_requires_ip() {
        let l = CayleyLoop::from_table(&[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ])
        .unwrap();
        assert!(matches!(
            j_perm(&l),
            Err(PermError::Loop(LoopError::NotIP { .. }))
        ));
        assert!(is_rif_inner(&l).is_err());
    }
}
