//! From groups to graphs, and the explicit witness graph families.

use crate::bigraph::BiGraph;
use crate::error::{Error, Result};
use crate::numtheory::{binomial, is_prime, q_binomial};
use crate::permgroup::{k_subsets, smallest_unit_of_order, GroupTriple, Perm, PermGroup};

/// Largest side allowed for [`subspace_complement_graph`].
pub const SUBSPACE_CAP: usize = 4096;

/// Coset intersection graph together with coset representatives.
#[derive(Debug, Clone)]
pub struct LabeledCIG {
    pub graph: BiGraph,
    /// Least element of each left coset `xH`, in coset order.
    pub eta_labels: Vec<Perm>,
    pub kappa_labels: Vec<Perm>,
    /// Least element of the `H∩K`-coset mapped to each edge, aligned with
    /// `graph.edges()`.
    pub edge_labels: Vec<Perm>,
}

/// Left-coset index of every element of `g` (by element position), numbered
/// in order of first appearance, plus the representative of each coset.
fn left_cosets(g: &PermGroup, sub: &PermGroup) -> (Vec<usize>, Vec<usize>) {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for (pos, x) in g.elements().iter().enumerate() {
        if coset_of[pos] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(pos);
        for h in sub.elements() {
            let y = x.compose(h).expect("same degree");
            let ypos = g.position(&y).expect("subgroup lies in G");
            coset_of[ypos] = id;
        }
    }
    (coset_of, reps)
}

/// Builds the bipartite graph on `G/H ⊔ G/K` with `yH ~ zK` iff the cosets
/// meet, and checks that `x(H∩K) ↦ (xH, xK)` is a bijection onto its edges.
///
/// Panics if the bijection or the degree formula fails: for a valid
/// [`GroupTriple`] that is a bug, not an input error.
pub fn coset_intersection_graph(t: &GroupTriple) -> Result<LabeledCIG> {
    let hk = t.intersection();
    let (c_h, reps_h) = left_cosets(&t.g, &t.h);
    let (c_k, reps_k) = left_cosets(&t.g, &t.k);
    let (c_hk, reps_hk) = left_cosets(&t.g, &hk);

    // Membership scan: (i, j) is an edge iff some x lies in coset i and coset j.
    let mut pair_of_hk: Vec<Option<(usize, usize)>> = vec![None; reps_hk.len()];
    for pos in 0..t.g.order() {
        let pair = (c_h[pos], c_k[pos]);
        match pair_of_hk[c_hk[pos]] {
            None => pair_of_hk[c_hk[pos]] = Some(pair),
            Some(p) => assert_eq!(p, pair, "x(H∩K) ↦ (xH, xK) is not well defined"),
        }
    }
    let pairs: Vec<(usize, usize)> = pair_of_hk.into_iter().map(|p| p.expect("every coset visited")).collect();
    let graph = BiGraph::new(reps_h.len(), reps_k.len(), pairs.iter().copied())
        .expect("distinct H∩K-cosets map to distinct edges");
    assert_eq!(graph.edge_count(), reps_hk.len());

    let deg_h = t.h.order() / hk.order();
    let deg_k = t.k.order() / hk.order();
    assert!(graph.is_biregular(deg_h, deg_k), "degree formula violated");

    let mut edge_labels = vec![None; graph.edge_count()];
    for (coset, &(i, j)) in pairs.iter().enumerate() {
        let idx = graph.edge_index(i, j).expect("edge present");
        edge_labels[idx] = Some(t.g.elements()[reps_hk[coset]].clone());
    }
    let label = |reps: &[usize]| reps.iter().map(|&p| t.g.elements()[p].clone()).collect();
    Ok(LabeledCIG {
        eta_labels: label(&reps_h),
        kappa_labels: label(&reps_k),
        edge_labels: edge_labels.into_iter().map(Option::unwrap).collect(),
        graph,
    })
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<BiGraph> {
    BiGraph::new(a, b, (0..a).flat_map(|i| (0..b).map(move |j| (i, j))))
}

/// `f` disjoint edges: realizes `(f, f, f)`.
pub fn perfect_matching(f: usize) -> Result<BiGraph> {
    BiGraph::new(f, f, (0..f).map(|i| (i, i)))
}

/// `K_{n,n}` minus the perfect matching `{(i, i)}`: realizes `(n, n, n(n-1))`.
pub fn matching_complement(n: usize) -> Result<BiGraph> {
    if n < 2 {
        return Err(Error::InvalidArgument("matching complement needs n >= 2".into()));
    }
    Ok(perfect_matching(n)?.complement())
}

/// Complement of the incidence graph in which every unordered pair of the
/// `n` η-vertices appears `2l/(n-1)` times on the κ side. Realizes
/// `(n, nl, n(n-2)l)`.
pub fn pair_block_complement(n: usize, l: usize) -> Result<BiGraph> {
    if n < 3 || l == 0 {
        return Err(Error::InvalidArgument(format!(
            "pair blocks need n >= 3 and l >= 1, got n={n}, l={l}"
        )));
    }
    if !(2 * l).is_multiple_of(n - 1) {
        return Err(Error::DivisibilityViolated(format!(
            "{} does not divide {}",
            n - 1,
            2 * l
        )));
    }
    let copies = 2 * l / (n - 1);
    let mut incidence = Vec::new();
    let mut j = 0;
    for pair in k_subsets(n, 2) {
        for _ in 0..copies {
            incidence.push((pair[0], j));
            incidence.push((pair[1], j));
            j += 1;
        }
    }
    debug_assert_eq!(j, n * l);
    Ok(BiGraph::new(n, j, incidence)?.complement())
}

/// Every `p`-subset of an `n`-set on the κ side, each repeated `copies`
/// times, joined to its elements. Realizes `(n, C(n,p)·copies, p·C(n,p)·copies)`.
pub fn subset_incidence(n: usize, p: usize, copies: usize) -> Result<BiGraph> {
    if p == 0 || p > n || copies == 0 {
        return Err(Error::InvalidArgument(format!(
            "subset incidence needs 1 <= p <= n and copies >= 1, got n={n}, p={p}, copies={copies}"
        )));
    }
    let count = binomial(n as u64, p as u64)? as usize;
    if count.saturating_mul(copies) > SUBSPACE_CAP * 4 {
        return Err(Error::TooLarge(format!("{count} subsets x {copies} copies")));
    }
    let mut edges = Vec::new();
    let mut j = 0;
    for s in k_subsets(n, p) {
        for _ in 0..copies {
            edges.extend(s.iter().map(|&i| (i, j)));
            j += 1;
        }
    }
    BiGraph::new(n, j, edges)
}

/// Coset intersection graph of the affine group `{x ↦ u^i x + j}` on `Z/n`
/// with the stabilizers of 0 and 1, written down directly: `x ~ y` iff
/// `y - x` is a power of `u`. Realizes `(n, n, np)`.
pub fn affine_graph(n: u64, p: u64) -> Result<BiGraph> {
    let u = smallest_unit_of_order(n, p).ok_or(Error::NoSuchUnit { n, p })?;
    let mut powers = Vec::with_capacity(p as usize);
    let mut x = 1u64;
    for _ in 0..p {
        powers.push(x);
        x = x * u % n;
    }
    let nn = n as usize;
    BiGraph::new(
        nn,
        nn,
        (0..n).flat_map(|x| powers.iter().map(move |&s| (x as usize, ((x + s) % n) as usize))),
    )
}

/// A subspace of `F_q^n` in reduced row-echelon form, one row per basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    pub rows: Vec<Vec<u8>>,
}

/// All `d`-dimensional subspaces of `F_q^n` (q prime), one RREF basis each,
/// ordered by pivot columns then free entries.
pub fn subspaces(q: u64, n: usize, d: usize) -> Result<Vec<Subspace>> {
    if !is_prime(q) {
        return Err(Error::NonPrimeField(q));
    }
    if d > n {
        return Err(Error::InvalidArgument(format!("dimension {d} exceeds {n}")));
    }
    let expected = q_binomial(n as u64, d as u64, q)?;
    if expected > SUBSPACE_CAP as u128 {
        return Err(Error::TooLarge(format!("{expected} subspaces")));
    }
    let mut out = Vec::with_capacity(expected as usize);
    for pivots in k_subsets(n, d) {
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u8; free.len()];
        loop {
            let mut rows = vec![vec![0u8; n]; d];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&digits) {
                rows[r][c] = v;
            }
            out.push(Subspace { rows });
            // Odometer over F_q^free.
            let mut idx = 0;
            while idx < digits.len() {
                digits[idx] += 1;
                if digits[idx] as u64 == q {
                    digits[idx] = 0;
                    idx += 1;
                } else {
                    break;
                }
            }
            if idx == digits.len() {
                break;
            }
        }
    }
    debug_assert_eq!(out.len() as u128, expected);
    Ok(out)
}

fn inverse_mod(x: u64, q: u64) -> u64 {
    // q is prime: x^(q-2).
    let mut result = 1u64;
    let mut base = x % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    result
}

/// Rank over `F_q` by Gaussian elimination.
pub fn rank_mod(mut rows: Vec<Vec<u8>>, q: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inverse_mod(rows[rank][c] as u64, q);
        for x in rows[rank].iter_mut() {
            *x = (*x as u64 * inv % q) as u8;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] as u64;
                let pivot = rows[rank].clone();
                for (x, &y) in rows[r].iter_mut().zip(&pivot) {
                    *x = ((*x as u64 + q * q - f * y as u64 % q) % q) as u8;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `U ⊕ W = F_q^n` for `dim U + dim W = n`.
pub fn are_complements(u: &Subspace, w: &Subspace, q: u64) -> bool {
    let n = u.rows.first().or(w.rows.first()).map_or(0, Vec::len);
    let stacked: Vec<Vec<u8>> = u.rows.iter().chain(&w.rows).cloned().collect();
    stacked.len() == n && rank_mod(stacked, q) == n
}

/// η = `d`-subspaces, κ = `(n-d)`-subspaces of `F_q^n`, joined when they are
/// complements. Each vertex has `q^{d(n-d)}` neighbours.
pub fn subspace_complement_graph(q: u64, n: usize, d: usize) -> Result<BiGraph> {
    if d == 0 || d >= n {
        return Err(Error::InvalidArgument(format!("need 0 < d < n, got d={d}, n={n}")));
    }
    let eta = subspaces(q, n, d)?;
    let kappa = subspaces(q, n, n - d)?;
    let mut edges = Vec::new();
    for (i, u) in eta.iter().enumerate() {
        for (j, w) in kappa.iter().enumerate() {
            if are_complements(u, w, q) {
                edges.push((i, j));
            }
        }
    }
    BiGraph::new(eta.len(), kappa.len(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgraph::{canonical_certificate, is_edge_transitive, SearchConfig};
    use crate::numtheory::checked_pow_u64;
    use crate::permgroup::{direct_product, families, semidirect_affine, triple_indices, DEFAULT_CAP};

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn dims(g: &BiGraph) -> (usize, usize, usize) {
        (g.a(), g.b(), g.edge_count())
    }

    #[test]
    fn cig_of_whole_group() {
        let g = crate::permgroup::symmetric_group(3).unwrap();
        let t = GroupTriple::new(g.clone(), g.clone(), g).unwrap();
        let cig = coset_intersection_graph(&t).unwrap();
        assert_eq!(dims(&cig.graph), (1, 1, 1));
    }

    #[test]
    fn cig_of_affine_witness() {
        let cig = coset_intersection_graph(&semidirect_affine(5, 2).unwrap()).unwrap();
        assert_eq!(dims(&cig.graph), (5, 5, 10));
        assert!(cig.graph.is_biregular(2, 2));
        assert_eq!(cig.graph.degree_profile(), (vec![2; 5], vec![2; 5]));
    }

    #[test]
    fn cig_of_sylow_pair() {
        let cig = coset_intersection_graph(&families::s4_sylow3_pair().unwrap()).unwrap();
        assert_eq!(dims(&cig.graph), (8, 8, 24));
        assert!(cig.graph.is_biregular(3, 3));
        assert!(is_edge_transitive(&cig.graph, &cfg()).unwrap());
    }

    #[test]
    fn cig_labels_lie_in_both_cosets() {
        let t = families::s5_two_subsets().unwrap();
        let cig = coset_intersection_graph(&t).unwrap();
        let in_coset = |x: &Perm, rep: &Perm, sub: &PermGroup| {
            sub.contains(&rep.inverse().compose(x).unwrap())
        };
        for (idx, &(i, j)) in cig.graph.edges().iter().enumerate() {
            let x = &cig.edge_labels[idx];
            assert!(in_coset(x, &cig.eta_labels[i], &t.h));
            assert!(in_coset(x, &cig.kappa_labels[j], &t.k));
        }
        assert_eq!(cig.eta_labels.len(), 10);
        assert_eq!(cig.edge_labels.len(), 30);
    }

    #[test]
    fn family_shapes() {
        assert_eq!(dims(&complete_bipartite(1, 1).unwrap()), (1, 1, 1));
        assert_eq!(dims(&complete_bipartite(2, 3).unwrap()), (2, 3, 6));
        let k57 = complete_bipartite(5, 7).unwrap();
        assert_eq!(k57.edge_count(), 35);
        assert!(is_edge_transitive(&k57, &cfg()).unwrap());

        let m2 = matching_complement(2).unwrap();
        assert_eq!(dims(&m2), (2, 2, 2));
        assert!(is_edge_transitive(&m2, &cfg()).unwrap());
        let m3 = matching_complement(3).unwrap();
        assert_eq!(dims(&m3), (3, 3, 6));
        assert!(m3.is_biregular(2, 2));
        assert!(matching_complement(1).is_err());
    }

    #[test]
    fn matching_complement_is_symmetric_group_cig() {
        for n in 2..=6 {
            let cig = coset_intersection_graph(&families::symmetric_point_stabilizers(n).unwrap())
                .unwrap();
            assert_eq!(
                canonical_certificate(&cig.graph, &cfg()).unwrap(),
                canonical_certificate(&matching_complement(n).unwrap(), &cfg()).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn pair_block_examples() {
        let g = pair_block_complement(3, 1).unwrap();
        assert_eq!(dims(&g), (3, 3, 3));
        assert!(g.is_biregular(1, 1));
        let g = pair_block_complement(5, 2).unwrap();
        assert_eq!(dims(&g), (5, 10, 30));
        assert!(g.is_biregular(6, 3));
        assert!(is_edge_transitive(&g, &cfg()).unwrap());
        let g = pair_block_complement(4, 3).unwrap();
        assert_eq!(dims(&g), (4, 12, 24));
        assert!(is_edge_transitive(&g, &cfg()).unwrap());
        assert!(matches!(
            pair_block_complement(5, 1),
            Err(Error::DivisibilityViolated(_))
        ));
    }

    #[test]
    fn subset_incidence_realizes_window_shapes() {
        let g = subset_incidence(5, 3, 1).unwrap();
        assert_eq!(dims(&g), (5, 10, 30));
        assert!(is_edge_transitive(&g, &cfg()).unwrap());
        let g = subset_incidence(7, 5, 1).unwrap();
        assert_eq!(dims(&g), (7, 21, 105));
        assert!(is_edge_transitive(&g, &cfg()).unwrap());
    }

    #[test]
    fn affine_graph_matches_group_cig() {
        for (n, p) in [(5, 2), (7, 3), (9, 3), (7, 2), (13, 3)] {
            let cig = coset_intersection_graph(&semidirect_affine(n, p).unwrap()).unwrap();
            let direct = affine_graph(n, p).unwrap();
            assert_eq!(dims(&direct), (n as usize, n as usize, (n * p) as usize));
            assert_eq!(
                canonical_certificate(&cig.graph, &cfg()).unwrap(),
                canonical_certificate(&direct, &cfg()).unwrap()
            );
        }
    }

    #[test]
    fn subspace_graph_examples() {
        let g = subspace_complement_graph(2, 2, 1).unwrap();
        assert_eq!(dims(&g), (3, 3, 6));
        assert!(g.is_biregular(2, 2));
        let fano = subspace_complement_graph(2, 3, 1).unwrap();
        assert_eq!(dims(&fano), (7, 7, 28));
        assert!(fano.is_biregular(4, 4));
        let g = subspace_complement_graph(3, 2, 1).unwrap();
        assert_eq!(dims(&g), (4, 4, 12));
        assert!(g.is_biregular(3, 3));
        assert_eq!(subspace_complement_graph(4, 2, 1).unwrap_err(), Error::NonPrimeField(4));
    }

    #[test]
    fn complement_counts_match_power() {
        for (q, n, d) in [(2u64, 2usize, 1usize), (2, 3, 1), (2, 4, 1), (2, 4, 2), (3, 2, 1)] {
            let g = subspace_complement_graph(q, n, d).unwrap();
            let expected = checked_pow_u64(q, (d * (n - d)) as u64).unwrap() as usize;
            assert!(g.is_biregular(expected, expected), "(q,n,d)=({q},{n},{d})");
        }
    }

    #[test]
    fn subspace_counts_match_q_binomial() {
        for q in [2u64, 3] {
            for n in 0..=4usize {
                for d in 0..=n {
                    let count = subspaces(q, n, d).unwrap().len() as u128;
                    assert_eq!(count, q_binomial(n as u64, d as u64, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_mod(vec![vec![1, 1], vec![1, 1]], 2), 1);
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 2]], 3), 2);
    }

    fn corpus() -> Vec<GroupTriple> {
        let mut out = vec![GroupTriple::trivial(), families::cyclic_pair(3, 4).unwrap()];
        for n in 2..=6 {
            out.push(families::symmetric_point_stabilizers(n).unwrap());
        }
        out.push(semidirect_affine(7, 3).unwrap());
        out.push(families::s4_sylow3_pair().unwrap());
        out.push(families::s5_two_subsets().unwrap());
        let s3 = families::symmetric_point_stabilizers(3).unwrap();
        out.push(direct_product(&s3, &semidirect_affine(5, 2).unwrap(), DEFAULT_CAP).unwrap());
        out
    }

    #[test]
    fn cig_bijection_and_transitivity_on_corpus() {
        for t in corpus() {
            let idx = triple_indices(&t);
            let cig = coset_intersection_graph(&t).unwrap();
            assert_eq!(cig.graph.edge_count() as u64, idx.c);
            assert_eq!((cig.graph.a() as u64, cig.graph.b() as u64), (idx.a, idx.b));
            assert!(is_edge_transitive(&cig.graph, &cfg()).unwrap(), "{idx}");
        }
    }
}
