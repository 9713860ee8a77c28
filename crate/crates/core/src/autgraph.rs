//! Side-preserving automorphisms of bipartite graphs.
//!
//! The engine is a small individualization-refinement search. Vertices are
//! numbered `0..a` (η) then `a..a+b` (κ) and start in two colour classes, so
//! every automorphism it finds fixes both sides set-wise. Colour refinement
//! splits classes by the multiset of neighbour colours until stable; the
//! search then branches on the first smallest non-singleton class.
//!
//! Generators come from the first-path method: walk the leftmost branch to a
//! discrete leaf, then for each level (deepest first) look for automorphisms
//! sending the chosen vertex to every other vertex of its class that is not
//! already in a known orbit. The orbit sizes along that path multiply to the
//! group order, and the same orbits prune the canonical-form search.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::bigraph::BiGraph;
use crate::error::{Error, Result};
use crate::permgroup::{closure, Perm, PermGroup};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search-tree nodes per call.
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// A side-preserving automorphism: one permutation per side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiAut {
    pub eta: Perm,
    pub kappa: Perm,
}

impl BiAut {
    pub fn identity(a: usize, b: usize) -> Self {
        BiAut {
            eta: Perm::identity(a),
            kappa: Perm::identity(b),
        }
    }

    /// The combined permutation on `a + b` points (κ shifted by `a`).
    pub fn to_perm(&self) -> Perm {
        self.eta.disjoint_sum(&self.kappa)
    }

    pub fn from_perm(p: &Perm, a: usize) -> Result<Self> {
        let images = p.images();
        if images.len() < a || images[..a].iter().any(|&x| x >= a) {
            return Err(Error::SizeMismatch("permutation does not preserve sides".into()));
        }
        let eta = Perm::from_images(images[..a].to_vec())?;
        let kappa = Perm::from_images(images[a..].iter().map(|&x| x - a).collect())?;
        Ok(BiAut { eta, kappa })
    }
}

/// Relabeling-invariant encoding of a bipartite graph: `a`, `b` (little-endian
/// `u32`) followed by the canonically permuted adjacency matrix, row-major,
/// bit-packed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCertificate(pub Vec<u8>);

impl CanonicalCertificate {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Result of the generator search.
#[derive(Debug, Clone)]
pub struct AutGroup {
    pub a: usize,
    pub b: usize,
    pub generators: Vec<BiAut>,
    /// Orbit length of the vertex individualized at each level of the first
    /// path; their product is the group order.
    pub orbit_lengths: Vec<usize>,
    pub nodes: u64,
}

impl AutGroup {
    /// Group order from the stabilizer chain, `None` on `u128` overflow.
    pub fn order(&self) -> Option<u128> {
        self.orbit_lengths
            .iter()
            .try_fold(1u128, |acc, &x| acc.checked_mul(x as u128))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.0[hi] = lo;
        }
    }
}

#[derive(Clone)]
struct Node {
    colors: Vec<u32>,
    cells: usize,
    trace: u64,
}

struct FirstPath {
    nodes: Vec<Node>,
    /// Target cell (sorted vertex ids) at each non-leaf node.
    cells: Vec<Vec<usize>>,
    chosen: Vec<usize>,
}

/// A generator tagged with the search level that produced it.
type LeveledGen = (usize, Vec<usize>);

struct Engine<'g> {
    g: &'g BiGraph,
    n: usize,
    adj: Vec<Vec<u32>>,
    offsets: Vec<usize>,
    budget: u64,
    nodes: u64,
}

impl<'g> Engine<'g> {
    fn new(g: &'g BiGraph, cfg: &SearchConfig) -> Self {
        let a = g.a();
        let n = a + g.b();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in g.edges() {
            adj[i].push((a + j) as u32);
            adj[a + j].push(i as u32);
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + adj[v].len();
        }
        Engine {
            g,
            n,
            adj,
            offsets,
            budget: cfg.node_budget,
            nodes: 0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::SearchBudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    /// Equitable refinement. Classes keep their relative order; a split class
    /// is ordered by the sorted neighbour-colour list, which does not depend
    /// on vertex labels, so neither does the hash of the refinement history.
    fn refine(&self, mut colors: Vec<u32>, mut cells: usize, seed: u64) -> Node {
        let mut hasher = DefaultHasher::new();
        seed.hash(&mut hasher);
        let mut order: Vec<usize> = (0..self.n).collect();
        // Sorted neighbour colours of each vertex, laid out by `self.offsets`.
        let mut nbr = vec![0u32; self.offsets[self.n]];
        let mut fresh = vec![0u32; self.n];
        loop {
            for v in 0..self.n {
                let slot = &mut nbr[self.offsets[v]..self.offsets[v + 1]];
                for (s, &w) in slot.iter_mut().zip(&self.adj[v]) {
                    *s = colors[w as usize];
                }
                slot.sort_unstable();
            }
            let key = |v: usize| (colors[v], &nbr[self.offsets[v]..self.offsets[v + 1]]);
            order.sort_by(|&x, &y| key(x).cmp(&key(y)));
            let mut c = 0u32;
            let mut run = 0usize;
            for idx in 0..self.n {
                if idx > 0 && key(order[idx]) != key(order[idx - 1]) {
                    key(order[idx - 1]).hash(&mut hasher);
                    run.hash(&mut hasher);
                    c += 1;
                    run = 0;
                }
                run += 1;
                fresh[order[idx]] = c;
            }
            if self.n > 0 {
                key(order[self.n - 1]).hash(&mut hasher);
                run.hash(&mut hasher);
            }
            let new_cells = c as usize + 1;
            std::mem::swap(&mut colors, &mut fresh);
            if new_cells == cells {
                break;
            }
            cells = new_cells;
        }
        cells.hash(&mut hasher);
        Node {
            colors,
            cells,
            trace: hasher.finish(),
        }
    }

    fn root(&self) -> Node {
        let a = self.g.a();
        let colors = (0..self.n).map(|v| u32::from(v >= a)).collect();
        self.refine(colors, 2, 0)
    }

    fn individualize(&self, node: &Node, v: usize) -> Node {
        let c = node.colors[v];
        let size = node.colors.iter().filter(|&&x| x == c).count();
        let colors = node
            .colors
            .iter()
            .enumerate()
            .map(|(u, &x)| {
                if x > c || (x == c && u != v) {
                    x + 1
                } else {
                    x
                }
            })
            .collect();
        self.refine(colors, node.cells + 1, ((c as u64) << 32) | size as u64)
    }

    fn is_discrete(&self, node: &Node) -> bool {
        node.cells == self.n
    }

    /// First smallest non-singleton class, as sorted vertex ids.
    fn target_cell(&self, node: &Node) -> Option<Vec<usize>> {
        if self.is_discrete(node) {
            return None;
        }
        let mut sizes = vec![0usize; node.cells];
        for &c in &node.colors {
            sizes[c as usize] += 1;
        }
        let (best, _) = sizes
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > 1)
            .min_by_key(|&(c, &s)| (s, c))?;
        Some(
            (0..self.n)
                .filter(|&v| node.colors[v] as usize == best)
                .collect(),
        )
    }

    /// Maps each vertex to the vertex occupying the same leaf position.
    fn leaf_map(&self, from: &Node, to: &Node) -> Vec<usize> {
        let mut inv = vec![0usize; self.n];
        for (v, &c) in to.colors.iter().enumerate() {
            inv[c as usize] = v;
        }
        from.colors.iter().map(|&c| inv[c as usize]).collect()
    }

    fn is_aut_map(&self, map: &[usize]) -> bool {
        let a = self.g.a();
        self.g
            .edges()
            .iter()
            .all(|&(i, j)| map[i] < a && map[a + j] >= a && self.g.has_edge(map[i], map[a + j] - a))
    }

    fn first_path(&mut self) -> Result<FirstPath> {
        let mut nodes = vec![self.root()];
        let mut cells = Vec::new();
        let mut chosen = Vec::new();
        self.tick()?;
        while let Some(cell) = self.target_cell(nodes.last().unwrap()) {
            let v = cell[0];
            let child = self.individualize(nodes.last().unwrap(), v);
            self.tick()?;
            cells.push(cell);
            chosen.push(v);
            nodes.push(child);
        }
        Ok(FirstPath {
            nodes,
            cells,
            chosen,
        })
    }

    fn find_equivalent(&mut self, node: Node, depth: usize, path: &FirstPath) -> Result<Option<Vec<usize>>> {
        if self.is_discrete(&node) {
            let map = self.leaf_map(path.nodes.last().unwrap(), &node);
            return Ok(self.is_aut_map(&map).then_some(map));
        }
        let cell = self.target_cell(&node).expect("non-discrete node has a target cell");
        for u in cell {
            let child = self.individualize(&node, u);
            self.tick()?;
            if child.trace != path.nodes[depth + 1].trace {
                continue;
            }
            if let Some(map) = self.find_equivalent(child, depth + 1, path)? {
                return Ok(Some(map));
            }
        }
        Ok(None)
    }

    /// Generators as maps on `0..n`, each tagged with the first-path level
    /// it was found at (it fixes every vertex chosen above that level).
    fn generators(&mut self, path: &FirstPath) -> Result<(Vec<LeveledGen>, Vec<usize>)> {
        let depth = path.chosen.len();
        let mut gens: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut orbit_lengths = vec![1usize; depth];
        let mut uf = UnionFind::new(self.n);
        for level in (0..depth).rev() {
            let v = path.chosen[level];
            for &w in &path.cells[level] {
                if w == v || uf.find(w) == uf.find(v) {
                    continue;
                }
                let child = self.individualize(&path.nodes[level], w);
                self.tick()?;
                if child.trace != path.nodes[level + 1].trace {
                    continue;
                }
                if let Some(map) = self.find_equivalent(child, level + 1, path)? {
                    for (x, &y) in map.iter().enumerate() {
                        uf.union(x, y);
                    }
                    gens.push((level, map));
                }
            }
            let root = uf.find(v);
            orbit_lengths[level] = path.cells[level]
                .iter()
                .filter(|&&w| uf.find(w) == root)
                .count();
        }
        Ok((gens, orbit_lengths))
    }

    fn leaf_bytes(&self, node: &Node) -> Vec<u8> {
        let a = self.g.a();
        let b = self.g.b();
        let mut bytes = Vec::with_capacity(8 + (a * b).div_ceil(8));
        bytes.extend_from_slice(&(a as u32).to_le_bytes());
        bytes.extend_from_slice(&(b as u32).to_le_bytes());
        let mut bits = vec![0u8; (a * b).div_ceil(8)];
        for &(i, j) in self.g.edges() {
            let r = node.colors[i] as usize;
            let c = node.colors[a + j] as usize - a;
            let idx = r * b + c;
            bits[idx / 8] |= 0x80 >> (idx % 8);
        }
        bytes.extend(bits);
        bytes
    }

    /// Depth-first search for the leaf minimizing (trace sequence, leaf
    /// bytes). Children equivalent under a known automorphism fixing the
    /// current prefix are skipped; ties between leaves yield new automorphisms.
    fn canonical(&mut self, node: &Node, prefix: &mut Vec<usize>, mut less: bool, st: &mut CanonState) -> Result<()> {
        let depth = prefix.len();
        if !less {
            match st.traces.get(depth).map(|t| node.trace.cmp(t)) {
                Some(std::cmp::Ordering::Greater) => return Ok(()),
                Some(std::cmp::Ordering::Less) | None => less = true,
                Some(std::cmp::Ordering::Equal) => {}
            }
        }
        st.path.truncate(depth);
        st.path.push(node.trace);
        let Some(cell) = self.target_cell(node) else {
            let bytes = self.leaf_bytes(node);
            let order = if less { std::cmp::Ordering::Less } else { bytes.cmp(&st.bytes) };
            match order {
                std::cmp::Ordering::Less => {
                    st.traces.clone_from(&st.path);
                    st.bytes = bytes;
                    st.leaf = node.clone();
                }
                std::cmp::Ordering::Equal => {
                    let map = self.leaf_map(&st.leaf, node);
                    if map.iter().enumerate().any(|(x, &y)| x != y) && self.is_aut_map(&map) {
                        st.gens.push(map);
                    }
                }
                std::cmp::Ordering::Greater => {}
            }
            return Ok(());
        };
        let mut done: Vec<usize> = Vec::new();
        let mut uf = UnionFind::new(self.n);
        let mut used = 0;
        for u in cell {
            if used < st.gens.len() {
                for map in &st.gens[used..] {
                    if prefix.iter().all(|&v| map[v] == v) {
                        for (x, &y) in map.iter().enumerate() {
                            uf.union(x, y);
                        }
                    }
                }
                used = st.gens.len();
            }
            let root = uf.find(u);
            if done.iter().any(|&w| uf.find(w) == root) {
                continue;
            }
            done.push(u);
            // Once the best leaf lies below this node, siblings compare against it.
            let child_less = less && st.traces.get(..=depth) != Some(&st.path[..=depth]);
            self.tick()?;
            let child = self.individualize(node, u);
            prefix.push(u);
            self.canonical(&child, prefix, child_less, st)?;
            prefix.pop();
        }
        Ok(())
    }
}

struct CanonState {
    gens: Vec<Vec<usize>>,
    /// Trace sequence and bytes of the best leaf so far.
    traces: Vec<u64>,
    bytes: Vec<u8>,
    leaf: Node,
    /// Trace sequence of the current branch.
    path: Vec<u64>,
}

fn to_biaut(map: &[usize], a: usize) -> BiAut {
    let eta = Perm::from_images(map[..a].to_vec()).expect("leaf map is a bijection");
    let kappa = Perm::from_images(map[a..].iter().map(|&x| x - a).collect())
        .expect("leaf map is a bijection");
    BiAut { eta, kappa }
}

pub fn is_automorphism(g: &BiGraph, f: &BiAut) -> Result<bool> {
    if f.eta.degree() != g.a() || f.kappa.degree() != g.b() {
        return Err(Error::SizeMismatch(format!(
            "automorphism on {}+{} points for a {}x{} graph",
            f.eta.degree(),
            f.kappa.degree(),
            g.a(),
            g.b()
        )));
    }
    // Injective on edges, so mapping E into E means onto.
    Ok(g
        .edges()
        .iter()
        .all(|&(i, j)| g.has_edge(f.eta.apply(i), f.kappa.apply(j))))
}

pub fn automorphism_group(g: &BiGraph, cfg: &SearchConfig) -> Result<AutGroup> {
    let mut engine = Engine::new(g, cfg);
    let path = engine.first_path()?;
    let (gens, orbit_lengths) = engine.generators(&path)?;
    Ok(AutGroup {
        a: g.a(),
        b: g.b(),
        generators: gens.iter().map(|(_, m)| to_biaut(m, g.a())).collect(),
        orbit_lengths,
        nodes: engine.nodes,
    })
}

pub fn automorphism_generators(g: &BiGraph, cfg: &SearchConfig) -> Result<Vec<BiAut>> {
    Ok(automorphism_group(g, cfg)?.generators)
}

/// The generated group as an explicit permutation group on `a + b` points.
pub fn automorphism_closure(g: &BiGraph, cfg: &SearchConfig, cap: usize) -> Result<PermGroup> {
    let gens: Vec<Perm> = automorphism_generators(g, cfg)?
        .iter()
        .map(BiAut::to_perm)
        .collect();
    closure(g.a() + g.b(), &gens, cap)
}

/// Order of the automorphism group, by explicit closure of the generators.
pub fn aut_order(g: &BiGraph, cfg: &SearchConfig, cap: usize) -> Result<usize> {
    Ok(automorphism_closure(g, cfg, cap)?.order())
}

fn orbits_from_generators(g: &BiGraph, gens: &[BiAut]) -> Vec<Vec<(usize, usize)>> {
    let m = g.edge_count();
    let mut uf = UnionFind::new(m);
    for f in gens {
        for (idx, &(i, j)) in g.edges().iter().enumerate() {
            let img = g
                .edge_index(f.eta.apply(i), f.kappa.apply(j))
                .expect("generator is an automorphism");
            uf.union(idx, img);
        }
    }
    let mut orbits: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for idx in 0..m {
        let r = uf.find(idx);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(g.edges()[idx]);
    }
    // Edges are scanned in sorted order, so each orbit is sorted and orbits
    // appear by least representative.
    orbits
}

pub fn edge_orbits(g: &BiGraph, cfg: &SearchConfig) -> Result<Vec<Vec<(usize, usize)>>> {
    Ok(orbits_from_generators(g, &automorphism_generators(g, cfg)?))
}

/// One edge orbit and at least one edge. The empty graph is not edge-transitive.
pub fn is_edge_transitive(g: &BiGraph, cfg: &SearchConfig) -> Result<bool> {
    if g.edge_count() == 0 {
        return Ok(false);
    }
    Ok(edge_orbits(g, cfg)?.len() == 1)
}

impl Engine<'_> {
    fn canonical_from(&mut self, path: &FirstPath, gens: Vec<Vec<usize>>) -> Result<CanonicalCertificate> {
        let leaf = path.nodes.last().expect("path has a root").clone();
        let mut st = CanonState {
            gens,
            traces: path.nodes.iter().map(|n| n.trace).collect(),
            bytes: self.leaf_bytes(&leaf),
            leaf,
            path: Vec::new(),
        };
        let root = path.nodes[0].clone();
        self.canonical(&root, &mut Vec::new(), false, &mut st)?;
        Ok(CanonicalCertificate(st.bytes))
    }
}

/// Automorphism group and canonical certificate from one search.
pub fn analyze(g: &BiGraph, cfg: &SearchConfig) -> Result<(AutGroup, CanonicalCertificate)> {
    let mut engine = Engine::new(g, cfg);
    let path = engine.first_path()?;
    let (gens, orbit_lengths) = engine.generators(&path)?;
    let cert = engine.canonical_from(&path, gens.iter().map(|(_, m)| m.clone()).collect())?;
    let group = AutGroup {
        a: g.a(),
        b: g.b(),
        generators: gens.iter().map(|(_, m)| to_biaut(m, g.a())).collect(),
        orbit_lengths,
        nodes: engine.nodes,
    };
    Ok((group, cert))
}

/// Canonical certificate alone; automorphisms are only learned from ties
/// between leaves, so this skips the generator search.
pub fn canonical_certificate(g: &BiGraph, cfg: &SearchConfig) -> Result<CanonicalCertificate> {
    let mut engine = Engine::new(g, cfg);
    let path = engine.first_path()?;
    engine.canonical_from(&path, Vec::new())
}

pub fn is_edge_transitive_group(g: &BiGraph, group: &AutGroup) -> bool {
    g.edge_count() > 0 && orbits_from_generators(g, &group.generators).len() == 1
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub(crate) fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// Every side-preserving automorphism, by trying all `a!·b!` pairs.
pub fn brute_force_aut(g: &BiGraph) -> Result<Vec<BiAut>> {
    if g.a() > 6 || g.b() > 6 {
        return Err(Error::TooLarge(format!(
            "brute force needs a, b <= 6, got {}x{}",
            g.a(),
            g.b()
        )));
    }
    let kappa_perms = all_permutations(g.b());
    let mut out = Vec::new();
    for pe in all_permutations(g.a()) {
        for pk in &kappa_perms {
            if g.edges().iter().all(|&(i, j)| g.has_edge(pe[i], pk[j])) {
                out.push(BiAut {
                    eta: Perm::from_images(pe.clone())?,
                    kappa: Perm::from_images(pk.clone())?,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::DEFAULT_CAP;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn complete(a: usize, b: usize) -> BiGraph {
        BiGraph::new(a, b, (0..a).flat_map(|i| (0..b).map(move |j| (i, j)))).unwrap()
    }

    fn cycle(n: usize) -> BiGraph {
        // 2n-cycle as an n x n bipartite graph.
        BiGraph::new(n, n, (0..n).flat_map(|i| [(i, i), (i, (i + 1) % n)])).unwrap()
    }

    fn path3() -> BiGraph {
        BiGraph::new(2, 2, [(0, 0), (0, 1), (1, 1)]).unwrap()
    }

    fn brute_set(g: &BiGraph) -> BTreeSet<Perm> {
        brute_force_aut(g).unwrap().iter().map(BiAut::to_perm).collect()
    }

    fn engine_set(g: &BiGraph) -> BTreeSet<Perm> {
        automorphism_closure(g, &cfg(), DEFAULT_CAP)
            .unwrap()
            .elements()
            .iter()
            .cloned()
            .collect()
    }

    fn random_graph(rng: &mut ChaCha8Rng, a: usize, b: usize, p: f64) -> BiGraph {
        let edges: Vec<(usize, usize)> = (0..a)
            .flat_map(|i| (0..b).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        BiGraph::new(a, b, edges).unwrap()
    }

    fn random_relabel(rng: &mut ChaCha8Rng, g: &BiGraph) -> BiGraph {
        let mut eta: Vec<usize> = (0..g.a()).collect();
        let mut kappa: Vec<usize> = (0..g.b()).collect();
        eta.shuffle(rng);
        kappa.shuffle(rng);
        g.relabel(&eta, &kappa).unwrap()
    }

    #[test]
    fn is_automorphism_examples() {
        let k22 = complete(2, 2);
        assert!(is_automorphism(&path3(), &BiAut::identity(2, 2)).unwrap());
        let swap = BiAut {
            eta: Perm::from_cycles(2, &[&[0, 1]]).unwrap(),
            kappa: Perm::identity(2),
        };
        assert!(is_automorphism(&k22, &swap).unwrap());
        assert!(!is_automorphism(&path3(), &swap).unwrap());
        assert!(is_automorphism(&k22, &BiAut::identity(3, 2)).is_err());
    }

    #[test]
    fn generator_examples() {
        let single = complete(1, 1);
        assert_eq!(aut_order(&single, &cfg(), DEFAULT_CAP).unwrap(), 1);
        assert_eq!(aut_order(&complete(2, 2), &cfg(), DEFAULT_CAP).unwrap(), 4);
        assert_eq!(aut_order(&cycle(3), &cfg(), DEFAULT_CAP).unwrap(), 6);
        assert_eq!(aut_order(&complete(3, 3), &cfg(), DEFAULT_CAP).unwrap(), 36);
        assert_eq!(aut_order(&cycle(5), &cfg(), DEFAULT_CAP).unwrap(), 10);
    }

    #[test]
    fn chain_order_matches_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut graphs = vec![complete(4, 3), cycle(4), cycle(6), path3()];
        for _ in 0..50 {
            let a = rng.gen_range(1..=5);
            let b = rng.gen_range(1..=5);
            graphs.push(random_graph(&mut rng, a, b, 0.5));
        }
        for g in graphs {
            let grp = automorphism_group(&g, &cfg()).unwrap();
            assert_eq!(
                grp.order().unwrap(),
                aut_order(&g, &cfg(), DEFAULT_CAP).unwrap() as u128,
                "{g:?}"
            );
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_aut(&complete(1, 2)).unwrap().len(), 2);
        assert_eq!(brute_force_aut(&BiGraph::empty(2, 2).unwrap()).unwrap().len(), 4);
        assert_eq!(brute_force_aut(&cycle(3)).unwrap().len(), 6);
        assert!(brute_force_aut(&complete(7, 1)).is_err());
    }

    #[test]
    fn edge_orbit_examples() {
        let orbits = edge_orbits(&complete(3, 4), &cfg()).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].len(), 12);
        // Sides are fixed, so the end edges (degree pairs (2,1) and (1,2))
        // cannot be exchanged; the middle edge is alone as well.
        let orbits = edge_orbits(&path3(), &cfg()).unwrap();
        assert_eq!(orbits, vec![vec![(0, 0)], vec![(0, 1)], vec![(1, 1)]]);
        assert_eq!(brute_force_aut(&path3()).unwrap().len(), 1);
    }

    #[test]
    fn edge_transitivity_examples() {
        assert!(is_edge_transitive(&complete(2, 5), &cfg()).unwrap());
        let split = BiGraph::new(3, 3, [(0, 0), (1, 1), (1, 2), (2, 1), (2, 2)]).unwrap();
        assert!(!is_edge_transitive(&split, &cfg()).unwrap());
        assert!(is_edge_transitive(&cycle(3), &cfg()).unwrap());
        assert!(!is_edge_transitive(&BiGraph::empty(2, 2).unwrap(), &cfg()).unwrap());
    }

    #[test]
    fn certificate_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = random_graph(&mut rng, 4, 5, 0.5);
        let h = random_relabel(&mut rng, &g);
        assert_eq!(
            canonical_certificate(&g, &cfg()).unwrap(),
            canonical_certificate(&h, &cfg()).unwrap()
        );
        let c4 = BiGraph::new(2, 2, [(1, 1), (0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(
            canonical_certificate(&complete(2, 2), &cfg()).unwrap(),
            canonical_certificate(&c4, &cfg()).unwrap()
        );
        let path = BiGraph::new(2, 3, [(0, 0), (0, 1), (1, 1)]).unwrap();
        let star = BiGraph::new(2, 3, [(0, 0), (0, 1), (0, 2)]).unwrap();
        assert_ne!(
            canonical_certificate(&path, &cfg()).unwrap(),
            canonical_certificate(&star, &cfg()).unwrap()
        );
    }

    #[test]
    fn budget_is_enforced() {
        let tight = SearchConfig { node_budget: 2 };
        assert!(matches!(
            automorphism_group(&cycle(6), &tight),
            Err(Error::SearchBudgetExceeded { budget: 2 })
        ));
    }

    /// Every bipartite graph with a, b <= 3, plus random ones up to 5 x 5.
    #[test]
    fn engine_matches_brute_force() {
        for a in 1..=3 {
            for b in 1..=3 {
                for mask in 0u32..(1 << (a * b)) {
                    let edges = (0..a * b)
                        .filter(|k| mask >> k & 1 == 1)
                        .map(|k| (k / b, k % b));
                    let g = BiGraph::new(a, b, edges).unwrap();
                    assert_eq!(engine_set(&g), brute_set(&g), "{g:?}");
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let a = rng.gen_range(1..=5);
            let b = rng.gen_range(1..=5);
            let p = rng.gen_range(0.2..0.8);
            let g = random_graph(&mut rng, a, b, p);
            assert_eq!(engine_set(&g), brute_set(&g), "{g:?}");
        }
    }

    #[test]
    fn orbit_sizes_divide_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let g = random_graph(&mut rng, 5, 4, 0.5);
            let order = aut_order(&g, &cfg(), DEFAULT_CAP).unwrap();
            for orbit in edge_orbits(&g, &cfg()).unwrap() {
                assert_eq!(order % orbit.len(), 0);
            }
        }
    }

    /// Equal certificates exactly on isomorphic pairs, checked against brute
    /// force isomorphism on small graphs.
    #[test]
    fn certificates_decide_isomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let graphs: Vec<BiGraph> = (0..40).map(|_| random_graph(&mut rng, 3, 4, 0.5)).collect();
        let iso = |g: &BiGraph, h: &BiGraph| {
            g.edge_count() == h.edge_count()
                && all_permutations(3).iter().any(|pe| {
                    all_permutations(4)
                        .iter()
                        .any(|pk| g.edges().iter().all(|&(i, j)| h.has_edge(pe[i], pk[j])))
                })
        };
        for g in &graphs {
            for h in &graphs {
                let same = canonical_certificate(g, &cfg()).unwrap()
                    == canonical_certificate(h, &cfg()).unwrap();
                assert_eq!(same, iso(g, h), "{g:?} vs {h:?}");
            }
        }
    }

    #[test]
    fn certificate_invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let corpus = [cycle(5), complete(3, 2), path3(), random_graph(&mut rng, 5, 5, 0.4)];
        for g in &corpus {
            let base = canonical_certificate(g, &cfg()).unwrap();
            for _ in 0..100 {
                let h = random_relabel(&mut rng, g);
                assert_eq!(canonical_certificate(&h, &cfg()).unwrap(), base);
            }
        }
    }

    #[test]
    fn edge_transitive_graphs_are_biregular() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let a = rng.gen_range(1..=5);
            let b = rng.gen_range(1..=5);
            let g = random_graph(&mut rng, a, b, 0.6);
            if g.has_isolated_vertex() || !is_edge_transitive(&g, &cfg()).unwrap() {
                continue;
            }
            let (e, k) = g.degree_profile();
            assert!(e.windows(2).all(|w| w[0] == w[1]));
            assert!(k.windows(2).all(|w| w[0] == w[1]));
        }
    }
}
