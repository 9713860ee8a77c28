//! Explicit finite permutation groups.
//!
//! Groups are stored with their full element list. Every witness group the
//! decider builds has order well under 10^5, so closure by breadth-first
//! multiplication is fast and easy to audit. [`DEFAULT_CAP`] guards against
//! runaway closures.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::{binomial, euler_phi, is_prime, multiplicative_order};
use crate::triple::Triple;

pub const DEFAULT_CAP: usize = 100_000;

/// A permutation of `{0, .., degree-1}`; `images[x]` is the image of `x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (idx, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if touched[x] {
                    return Err(Error::NotAPermutation(format!(
                        "point {x} appears twice in cycles"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// Places `self` on points `[0, d1)` and `other` on `[d1, d1 + d2)`.
    pub fn disjoint_sum(&self, other: &Perm) -> Perm {
        let shift = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + shift));
        Perm { images }
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A permutation group together with its full element list.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.elements.iter().all(|e| other.contains(e))
    }
}

impl Eq for PermGroup {}

/// Closure of `gens` under composition, breadth-first from the identity with
/// generators applied in the given order.
pub fn closure(degree: usize, gens: &[Perm], cap: usize) -> Result<PermGroup> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    if cap == 0 {
        return Err(Error::CapExceeded { cap });
    }
    let id = Perm::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let y = elements[i].compose_unchecked(g);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    Ok(PermGroup {
        degree,
        generators: gens.to_vec(),
        elements,
        index,
    })
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        closure(degree, &[], 1).expect("trivial group fits any cap")
    }

    /// Wraps an element set already known to be a group, choosing a small
    /// generating set greedily.
    fn from_group_elements(degree: usize, elements: Vec<Perm>) -> Self {
        let mut gens: Vec<Perm> = Vec::new();
        let mut current: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
        for e in &elements {
            if !current.contains(e) {
                gens.push(e.clone());
                let sub = closure(degree, &gens, elements.len())
                    .expect("subgroup closure stays within the parent");
                current = sub.elements.into_iter().collect();
            }
        }
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        PermGroup {
            degree,
            generators: gens,
            elements,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// Position of `p` in the element list.
    pub fn position(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    /// Orbit of `point` under the generators, in discovery order.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        Ok(orbit)
    }
}

pub fn compose(p: &Perm, q: &Perm) -> Result<Perm> {
    p.compose(q)
}

pub fn subgroup_generated(g: &PermGroup, gens: &[Perm]) -> Result<PermGroup> {
    if gens.iter().any(|x| !g.contains(x)) {
        return Err(Error::NotInGroup);
    }
    closure(g.degree, gens, g.order())
}

pub fn subgroup_intersection(h: &PermGroup, k: &PermGroup) -> Result<PermGroup> {
    if h.degree != k.degree {
        return Err(Error::DegreeMismatch {
            left: h.degree,
            right: k.degree,
        });
    }
    let elements: Vec<Perm> = h
        .elements
        .iter()
        .filter(|e| k.contains(e))
        .cloned()
        .collect();
    Ok(PermGroup::from_group_elements(h.degree, elements))
}

pub fn stabilizer(g: &PermGroup, point: usize) -> Result<PermGroup> {
    if point >= g.degree {
        return Err(Error::PointOutOfRange {
            point,
            degree: g.degree,
        });
    }
    let elements: Vec<Perm> = g
        .elements
        .iter()
        .filter(|e| e.apply(point) == point)
        .cloned()
        .collect();
    Ok(PermGroup::from_group_elements(g.degree, elements))
}

pub fn symmetric_group(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("symmetric group needs n >= 1".into()));
    }
    if n > 8 {
        return Err(Error::CapExceeded { cap: DEFAULT_CAP });
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let transposition = Perm::from_cycles(n, &[&[0, 1]])?;
    let cycle: Vec<usize> = (0..n).collect();
    let long = Perm::from_cycles(n, &[&cycle])?;
    closure(n, &[transposition, long], DEFAULT_CAP)
}

pub fn cyclic_group(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group needs n >= 1".into()));
    }
    let cycle: Vec<usize> = (0..n).collect();
    let gen = Perm::from_cycles(n, &[&cycle])?;
    closure(n, &[gen], n.max(1))
}

/// A group with two subgroups: a candidate realization of a triple.
#[derive(Debug, Clone)]
pub struct GroupTriple {
    pub g: PermGroup,
    pub h: PermGroup,
    pub k: PermGroup,
}

impl GroupTriple {
    pub fn new(g: PermGroup, h: PermGroup, k: PermGroup) -> Result<Self> {
        if h.degree != g.degree || k.degree != g.degree {
            return Err(Error::DegreeMismatch {
                left: g.degree,
                right: if h.degree != g.degree { h.degree } else { k.degree },
            });
        }
        if !h.is_subgroup_of(&g) || !k.is_subgroup_of(&g) {
            return Err(Error::NotInGroup);
        }
        Ok(GroupTriple { g, h, k })
    }

    /// `H = K = G` on one point: realizes `(1, 1, 1)`.
    pub fn trivial() -> Self {
        let g = PermGroup::trivial(1);
        GroupTriple {
            h: g.clone(),
            k: g.clone(),
            g,
        }
    }

    pub fn intersection(&self) -> PermGroup {
        subgroup_intersection(&self.h, &self.k).expect("degrees checked at construction")
    }
}

/// `([G:H], [G:K], [G:H∩K])` by cardinality division.
pub fn triple_indices(t: &GroupTriple) -> Triple {
    let g = t.g.order() as u64;
    let hk = t.intersection().order() as u64;
    Triple::new(g / t.h.order() as u64, g / t.k.order() as u64, g / hk)
}

/// `(G × G', H × H', K × K')` acting on the disjoint union of the point sets.
pub fn direct_product(t1: &GroupTriple, t2: &GroupTriple, cap: usize) -> Result<GroupTriple> {
    let order = t1.g.order().checked_mul(t2.g.order());
    if order.is_none_or(|o| o > cap) {
        return Err(Error::CapExceeded { cap });
    }
    let d1 = t1.g.degree;
    let d2 = t2.g.degree;
    let embed = |a: &PermGroup, b: &PermGroup| -> Vec<Perm> {
        let id1 = Perm::identity(d1);
        let id2 = Perm::identity(d2);
        a.generators
            .iter()
            .map(|x| x.disjoint_sum(&id2))
            .chain(b.generators.iter().map(|y| id1.disjoint_sum(y)))
            .collect()
    };
    let g = closure(d1 + d2, &embed(&t1.g, &t2.g), cap)?;
    let h = closure(d1 + d2, &embed(&t1.h, &t2.h), cap)?;
    let k = closure(d1 + d2, &embed(&t1.k, &t2.k), cap)?;
    GroupTriple::new(g, h, k)
}

/// Smallest `u` in `[2, n)` of multiplicative order `p` modulo `n`.
pub fn smallest_unit_of_order(n: u64, p: u64) -> Option<u64> {
    (2..n).find(|&u| multiplicative_order(u as i64, n).is_ok_and(|t| t == p))
}

/// The affine group `{x ↦ u^i x + j}` on `Z/n`, `u` of order `p`, with the
/// stabilizers of 0 and 1. Realizes `(n, n, np)`.
pub fn semidirect_affine(n: u64, p: u64) -> Result<GroupTriple> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if n < 2 || !euler_phi(n).is_multiple_of(p) {
        return Err(Error::NoSuchUnit { n, p });
    }
    let u = smallest_unit_of_order(n, p).ok_or(Error::NoSuchUnit { n, p })?;
    let nn = n as usize;
    let mul = Perm::from_images((0..n).map(|x| (u * x % n) as usize).collect())?;
    let add = Perm::from_images((0..n).map(|x| ((x + 1) % n) as usize).collect())?;
    let g = closure(nn, &[mul, add], DEFAULT_CAP)?;
    let h = stabilizer(&g, 0)?;
    let k = stabilizer(&g, 1)?;
    GroupTriple::new(g, h, k)
}

/// The action of a group on the `k`-subsets of its points.
#[derive(Debug, Clone)]
pub struct SubsetAction {
    pub group: PermGroup,
    /// Sorted `k`-subsets in lexicographic order; point `i` of `group` is
    /// `subsets[i]`.
    pub subsets: Vec<Vec<usize>>,
}

impl SubsetAction {
    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        self.subsets.binary_search(&s).ok()
    }
}

pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

pub fn induced_action_on_ksubsets(g: &PermGroup, k: usize, cap: usize) -> Result<SubsetAction> {
    if k == 0 || k > g.degree {
        return Err(Error::InvalidArgument(format!(
            "k={k} must lie in [1, {}]",
            g.degree
        )));
    }
    let count = binomial(g.degree as u64, k as u64)?;
    if count > cap as u128 {
        return Err(Error::CapExceeded { cap });
    }
    let subsets = k_subsets(g.degree, k);
    let lookup: HashMap<&[usize], usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let gens = g
        .generators
        .iter()
        .map(|x| {
            let images = subsets
                .iter()
                .map(|s| {
                    let mut img: Vec<usize> = s.iter().map(|&p| x.apply(p)).collect();
                    img.sort_unstable();
                    lookup[img.as_slice()]
                })
                .collect();
            Perm::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    let group = closure(subsets.len(), &gens, cap)?;
    Ok(SubsetAction { group, subsets })
}

/// Named explicit group witnesses.
pub mod families {
    use super::*;

    /// `Z/a × Z/b` with `H = Z/b`, `K = Z/a`: realizes `(a, b, ab)`.
    pub fn cyclic_pair(a: usize, b: usize) -> Result<GroupTriple> {
        let za = cyclic_group(a)?;
        let zb = cyclic_group(b)?;
        let left = GroupTriple::new(za.clone(), PermGroup::trivial(a), za)?;
        let right = GroupTriple::new(zb.clone(), zb, PermGroup::trivial(b))?;
        direct_product(&left, &right, DEFAULT_CAP)
    }

    /// `Z/f` with both subgroups trivial: realizes `(f, f, f)`.
    pub fn cyclic_trivial_pair(f: usize) -> Result<GroupTriple> {
        let z = cyclic_group(f)?;
        GroupTriple::new(z, PermGroup::trivial(f), PermGroup::trivial(f))
    }

    /// `S_n` with the stabilizers of points 0 and 1: realizes `(n, n, n(n-1))`.
    pub fn symmetric_point_stabilizers(n: usize) -> Result<GroupTriple> {
        if n < 2 {
            return Err(Error::InvalidArgument("need n >= 2".into()));
        }
        let g = symmetric_group(n)?;
        let h = stabilizer(&g, 0)?;
        let k = stabilizer(&g, 1)?;
        GroupTriple::new(g, h, k)
    }

    /// `S_4` with `<(0 1 2)>` and `<(0 1 3)>`: realizes `(8, 8, 24)`.
    pub fn s4_sylow3_pair() -> Result<GroupTriple> {
        let g = symmetric_group(4)?;
        let h = subgroup_generated(&g, &[Perm::from_cycles(4, &[&[0, 1, 2]])?])?;
        let k = subgroup_generated(&g, &[Perm::from_cycles(4, &[&[0, 1, 3]])?])?;
        GroupTriple::new(g, h, k)
    }

    /// `S_5` acting on 2-subsets with the setwise stabilizers of `{0,1}` and
    /// `{2,3}`: realizes `(10, 10, 30)`.
    pub fn s5_two_subsets() -> Result<GroupTriple> {
        let action = induced_action_on_ksubsets(&symmetric_group(5)?, 2, DEFAULT_CAP)?;
        let h = stabilizer(&action.group, action.index_of(&[0, 1]).expect("subset exists"))?;
        let k = stabilizer(&action.group, action.index_of(&[2, 3]).expect("subset exists"))?;
        GroupTriple::new(action.group, h, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::gcd;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cyc(n: usize, c: &[usize]) -> Perm {
        Perm::from_cycles(n, &[c]).unwrap()
    }

    #[test]
    fn compose_examples() {
        let p = cyc(3, &[0, 1, 2]);
        let id = Perm::identity(3);
        assert_eq!(compose(&id, &p).unwrap(), p);
        let t = cyc(3, &[0, 1]);
        assert!(compose(&t, &t).unwrap().is_identity());
        assert_eq!(compose(&p, &p).unwrap(), cyc(3, &[0, 2, 1]));
        assert!(matches!(
            compose(&p, &Perm::identity(4)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let p = cyc(3, &[0, 1]);
        let q = cyc(3, &[1, 2]);
        let pq = p.compose(&q).unwrap();
        for x in 0..3 {
            assert_eq!(pq.apply(x), p.apply(q.apply(x)));
        }
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![0, 2]).is_err());
        assert!(Perm::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(5, &[], 10).unwrap().order(), 1);
        let s4 = closure(4, &[cyc(4, &[0, 1]), cyc(4, &[0, 1, 2, 3])], DEFAULT_CAP).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(closure(3, &[cyc(3, &[0, 1, 2])], 10).unwrap().order(), 3);
        assert_eq!(
            closure(4, &[cyc(4, &[0, 1]), cyc(4, &[0, 1, 2, 3])], 10).unwrap_err(),
            Error::CapExceeded { cap: 10 }
        );
    }

    #[test]
    fn closure_is_closed_and_ordered_from_identity() {
        let s4 = symmetric_group(4).unwrap();
        assert!(s4.elements()[0].is_identity());
        for x in s4.elements() {
            assert!(s4.contains(&x.inverse()));
            for y in s4.elements() {
                assert!(s4.contains(&x.compose(y).unwrap()));
            }
        }
        for g in s4.generators() {
            assert!(s4.contains(g));
        }
    }

    #[test]
    fn subgroup_generated_examples() {
        let s4 = symmetric_group(4).unwrap();
        let a = subgroup_generated(&s4, &[cyc(4, &[0, 1, 2])]).unwrap();
        assert_eq!(a.order(), 3);
        assert_eq!(subgroup_generated(&s4, &[]).unwrap().order(), 1);
        let b = subgroup_generated(&s4, &[cyc(4, &[0, 1, 3])]).unwrap();
        assert_eq!(b.order(), 3);
        assert_ne!(a, b);
        let z3 = cyclic_group(3).unwrap();
        assert_eq!(
            subgroup_generated(&z3, &[cyc(3, &[0, 1])]).unwrap_err(),
            Error::NotInGroup
        );
    }

    #[test]
    fn intersection_examples() {
        let s4 = symmetric_group(4).unwrap();
        let a = subgroup_generated(&s4, &[cyc(4, &[0, 1, 2])]).unwrap();
        let b = subgroup_generated(&s4, &[cyc(4, &[0, 1, 3])]).unwrap();
        assert_eq!(subgroup_intersection(&a, &a).unwrap(), a);
        assert_eq!(subgroup_intersection(&a, &b).unwrap().order(), 1);
        let aff = semidirect_affine(5, 2).unwrap();
        assert_eq!(aff.g.order(), 10);
        assert_eq!(aff.intersection().order(), 1);
    }

    #[test]
    fn triple_indices_examples() {
        let g = symmetric_group(3).unwrap();
        let t = GroupTriple::new(g.clone(), g.clone(), g).unwrap();
        assert_eq!(triple_indices(&t), Triple::new(1, 1, 1));
        assert_eq!(
            triple_indices(&families::s4_sylow3_pair().unwrap()),
            Triple::new(8, 8, 24)
        );
        assert_eq!(
            triple_indices(&semidirect_affine(5, 2).unwrap()),
            Triple::new(5, 5, 10)
        );
    }

    #[test]
    fn symmetric_and_cyclic_orders() {
        assert_eq!(symmetric_group(1).unwrap().order(), 1);
        assert_eq!(symmetric_group(4).unwrap().order(), 24);
        assert_eq!(symmetric_group(5).unwrap().order(), 120);
        assert!(matches!(symmetric_group(9), Err(Error::CapExceeded { .. })));
        assert_eq!(cyclic_group(1).unwrap().order(), 1);
        assert_eq!(cyclic_group(5).unwrap().order(), 5);
        assert_eq!(cyclic_group(6).unwrap().order(), 6);
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(stabilizer(&PermGroup::trivial(1), 0).unwrap().order(), 1);
        let s4 = symmetric_group(4).unwrap();
        assert_eq!(stabilizer(&s4, 0).unwrap().order(), 6);
        let s5 = symmetric_group(5).unwrap();
        assert_eq!(stabilizer(&s5, 1).unwrap().order(), 24);
        assert!(matches!(stabilizer(&s5, 5), Err(Error::PointOutOfRange { .. })));
    }

    #[test]
    fn direct_product_examples() {
        let t = semidirect_affine(5, 2).unwrap();
        let p = direct_product(&t, &GroupTriple::trivial(), DEFAULT_CAP).unwrap();
        assert_eq!(triple_indices(&p), Triple::new(5, 5, 10));

        let s3 = families::symmetric_point_stabilizers(3).unwrap();
        assert_eq!(triple_indices(&s3), Triple::new(3, 3, 6));
        let sq = direct_product(&s3, &s3, DEFAULT_CAP).unwrap();
        assert_eq!(triple_indices(&sq), Triple::new(9, 9, 36));

        let two = families::cyclic_pair(2, 1).unwrap();
        assert_eq!(triple_indices(&two), Triple::new(2, 1, 2));
        let p = direct_product(&t, &two, DEFAULT_CAP).unwrap();
        assert_eq!(triple_indices(&p), Triple::new(10, 5, 20));

        assert!(matches!(
            direct_product(&sq, &sq, 100),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn semidirect_affine_examples() {
        let t = semidirect_affine(7, 3).unwrap();
        assert_eq!(t.g.order(), 21);
        assert_eq!(triple_indices(&t), Triple::new(7, 7, 21));
        assert_eq!(smallest_unit_of_order(9, 3), Some(4));
        let t = semidirect_affine(9, 3).unwrap();
        assert_eq!(triple_indices(&t), Triple::new(9, 9, 27));
        assert_eq!(
            semidirect_affine(8, 3).unwrap_err(),
            Error::NoSuchUnit { n: 8, p: 3 }
        );
    }

    #[test]
    fn semidirect_affine_sweep() {
        for n in 2..=30u64 {
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29] {
                if !euler_phi(n).is_multiple_of(p) || n * p > 1000 {
                    continue;
                }
                let t = semidirect_affine(n, p).unwrap();
                assert_eq!(t.intersection().order(), 1, "n={n} p={p}");
                assert_eq!(triple_indices(&t), Triple::new(n, n, n * p), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn ksubset_action_examples() {
        let s5 = symmetric_group(5).unwrap();
        let act = induced_action_on_ksubsets(&s5, 2, DEFAULT_CAP).unwrap();
        assert_eq!(act.group.degree(), 10);
        assert_eq!(act.group.order(), 120);
        let s4 = symmetric_group(4).unwrap();
        let whole = induced_action_on_ksubsets(&s4, 4, DEFAULT_CAP).unwrap();
        assert_eq!(whole.group.degree(), 1);
        assert_eq!(
            triple_indices(&families::s5_two_subsets().unwrap()),
            Triple::new(10, 10, 30)
        );
    }

    fn corpus() -> Vec<GroupTriple> {
        let mut out = vec![GroupTriple::trivial()];
        for n in 2..=5 {
            out.push(families::symmetric_point_stabilizers(n).unwrap());
        }
        out.push(families::cyclic_pair(2, 3).unwrap());
        out.push(families::cyclic_trivial_pair(4).unwrap());
        out.push(semidirect_affine(5, 2).unwrap());
        out.push(semidirect_affine(7, 3).unwrap());
        out.push(families::s4_sylow3_pair().unwrap());
        out.push(families::s5_two_subsets().unwrap());
        out
    }

    #[test]
    fn necessary_conditions_hold_on_corpus() {
        for t in corpus() {
            assert!(triple_indices(&t).passes_necessary());
        }
    }

    #[test]
    fn orbit_stabilizer_on_corpus() {
        for t in corpus() {
            for grp in [&t.g, &t.h, &t.k] {
                for x in 0..grp.degree() {
                    let orbit = grp.orbit(x).unwrap().len();
                    assert_eq!(stabilizer(grp, x).unwrap().order() * orbit, grp.order());
                }
            }
        }
    }

    #[test]
    fn lagrange_on_random_subgroups() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let groups = [
            symmetric_group(4).unwrap(),
            semidirect_affine(5, 2).unwrap().g,
            semidirect_affine(7, 3).unwrap().g,
        ];
        for g in &groups {
            for _ in 0..40 {
                let k = rand::Rng::gen_range(&mut rng, 0..3);
                let gens: Vec<Perm> = g.elements().choose_multiple(&mut rng, k).cloned().collect();
                let sub = subgroup_generated(g, &gens).unwrap();
                assert_eq!(g.order() % sub.order(), 0);
            }
        }
    }

    #[test]
    fn direct_product_indices_multiply() {
        let c = corpus();
        for x in &c {
            for y in &c {
                if x.g.order() * y.g.order() > 5000 {
                    continue;
                }
                let p = direct_product(x, y, DEFAULT_CAP).unwrap();
                assert_eq!(
                    triple_indices(&p),
                    triple_indices(x).times(&triple_indices(y))
                );
            }
        }
    }

    #[test]
    fn group_order_divides_factorial() {
        for t in corpus() {
            let fact: u64 = (1..=t.g.degree() as u64).product();
            assert_eq!(gcd(fact, t.g.order() as u64), t.g.order() as u64);
        }
    }
}
