//! Bipartite graphs with distinguished sides.
//!
//! The two sides are called η (size `a`, indices `0..a`) and κ (size `b`,
//! indices `0..b`). Edges are pairs `(i, j)` with `i` on η and `j` on κ.
//!
//! Text format, one record per line:
//!
//! ```text
//! bipartite <a> <b>
//! e <i> <j>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored on input.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Eta,
    Kappa,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiGraph {
    a: usize,
    b: usize,
    /// Sorted by `(i, j)`.
    edges: Vec<(usize, usize)>,
    eta_adj: Vec<Vec<usize>>,
    kappa_adj: Vec<Vec<usize>>,
}

impl std::fmt::Debug for BiGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BiGraph({}x{}, {:?})", self.a, self.b, self.edges)
    }
}

impl BiGraph {
    pub fn new(a: usize, b: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidArgument("both sides need at least one vertex".into()));
        }
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (i, j) in edges {
            if i >= a || j >= b {
                return Err(Error::OutOfRange { i, j, a, b });
            }
            list.push((i, j));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(a, b, list))
    }

    fn from_sorted(a: usize, b: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut eta_adj = vec![Vec::new(); a];
        let mut kappa_adj = vec![Vec::new(); b];
        for &(i, j) in &edges {
            eta_adj[i].push(j);
            kappa_adj[j].push(i);
        }
        BiGraph {
            a,
            b,
            edges,
            eta_adj,
            kappa_adj,
        }
    }

    pub fn empty(a: usize, b: usize) -> Result<Self> {
        Self::new(a, b, [])
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.a && self.eta_adj[i].binary_search(&j).is_ok()
    }

    /// Position of `(i, j)` in [`BiGraph::edges`].
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        self.edges.binary_search(&(i, j)).ok()
    }

    pub fn neighbors(&self, side: Side, v: usize) -> Result<&[usize]> {
        let (adj, a, b) = match side {
            Side::Eta => (&self.eta_adj, v, 0),
            Side::Kappa => (&self.kappa_adj, 0, v),
        };
        adj.get(v).map(Vec::as_slice).ok_or(Error::OutOfRange {
            i: a,
            j: b,
            a: self.a,
            b: self.b,
        })
    }

    pub fn eta_neighbors(&self, i: usize) -> &[usize] {
        &self.eta_adj[i]
    }

    pub fn kappa_neighbors(&self, j: usize) -> &[usize] {
        &self.kappa_adj[j]
    }

    /// Sorted η-degrees and sorted κ-degrees.
    pub fn degree_profile(&self) -> (Vec<usize>, Vec<usize>) {
        let mut eta: Vec<usize> = self.eta_adj.iter().map(Vec::len).collect();
        let mut kappa: Vec<usize> = self.kappa_adj.iter().map(Vec::len).collect();
        eta.sort_unstable();
        kappa.sort_unstable();
        (eta, kappa)
    }

    pub fn is_biregular(&self, r_eta: usize, r_kappa: usize) -> bool {
        self.eta_adj.iter().all(|n| n.len() == r_eta)
            && self.kappa_adj.iter().all(|n| n.len() == r_kappa)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.eta_adj.iter().chain(&self.kappa_adj).any(Vec::is_empty)
    }

    pub fn complement(&self) -> BiGraph {
        let mut edges = Vec::with_capacity(self.a * self.b - self.edges.len());
        for i in 0..self.a {
            let row = &self.eta_adj[i];
            let mut r = row.iter().peekable();
            for j in 0..self.b {
                if r.peek() == Some(&&j) {
                    r.next();
                } else {
                    edges.push((i, j));
                }
            }
        }
        Self::from_sorted(self.a, self.b, edges)
    }

    /// The same graph with the roles of η and κ exchanged.
    pub fn transpose(&self) -> BiGraph {
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|&(i, j)| (j, i)).collect();
        edges.sort_unstable();
        Self::from_sorted(self.b, self.a, edges)
    }

    /// Bipartite tensor product: η = η₁×η₂, κ = κ₁×κ₂, with `((h₁,h₂),(k₁,k₂))`
    /// an edge iff both coordinates are edges. Realizes the componentwise
    /// product of the two parameter triples.
    pub fn tensor(&self, other: &BiGraph) -> BiGraph {
        let mut edges = Vec::with_capacity(self.edges.len() * other.edges.len());
        for &(i1, j1) in &self.edges {
            for &(i2, j2) in &other.edges {
                edges.push((i1 * other.a + i2, j1 * other.b + j2));
            }
        }
        edges.sort_unstable();
        Self::from_sorted(self.a * other.a, self.b * other.b, edges)
    }

    /// Applies vertex relabelings on both sides.
    pub fn relabel(&self, eta: &[usize], kappa: &[usize]) -> Result<BiGraph> {
        if eta.len() != self.a || kappa.len() != self.b {
            return Err(Error::SizeMismatch("relabeling length".into()));
        }
        BiGraph::new(
            self.a,
            self.b,
            self.edges.iter().map(|&(i, j)| (eta[i], kappa[j])),
        )
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("bipartite {} {}\n", self.a, self.b);
        for &(i, j) in &self.edges {
            let _ = writeln!(out, "e {i} {j}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<BiGraph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: line_no,
                msg: msg.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let nums = |fs: &[&str]| -> Result<(usize, usize)> {
                if fs.len() != 2 {
                    return Err(err("expected two integers"));
                }
                let x = fs[0].parse().map_err(|_| err("bad integer"))?;
                let y = fs[1].parse().map_err(|_| err("bad integer"))?;
                Ok((x, y))
            };
            match (fields[0], header) {
                ("bipartite", None) => header = Some(nums(&fields[1..])?),
                ("bipartite", Some(_)) => return Err(err("duplicate header")),
                ("e", Some(_)) => edges.push((line_no, nums(&fields[1..])?)),
                ("e", None) => return Err(err("edge before header")),
                _ => return Err(err("unknown record")),
            }
        }
        let (a, b) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        if a == 0 || b == 0 {
            return Err(Error::Parse {
                line: 0,
                msg: "side sizes must be positive".into(),
            });
        }
        let mut list = Vec::with_capacity(edges.len());
        let mut seen = std::collections::HashSet::new();
        for (line, (i, j)) in edges {
            if i >= a || j >= b {
                return Err(Error::Parse {
                    line,
                    msg: format!("edge ({i}, {j}) out of range"),
                });
            }
            if !seen.insert((i, j)) {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate edge ({i}, {j})"),
                });
            }
            list.push((i, j));
        }
        list.sort_unstable();
        Ok(Self::from_sorted(a, b, list))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph bipartite {\n");
        let names = |prefix: char, n: usize| -> String {
            (0..n)
                .map(|v| format!("{prefix}{v};"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(out, "  {{ rank=same; {} }}", names('h', self.a));
        let _ = writeln!(out, "  {{ rank=same; {} }}", names('k', self.b));
        for &(i, j) in &self.edges {
            let _ = writeln!(out, "  h{i} -- k{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// Convenience constructor mirroring the library-wide naming.
pub fn new_bigraph(a: usize, b: usize, edges: &[(usize, usize)]) -> Result<BiGraph> {
    BiGraph::new(a, b, edges.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(a: usize, b: usize) -> BiGraph {
        BiGraph::new(a, b, (0..a).flat_map(|i| (0..b).map(move |j| (i, j)))).unwrap()
    }

    fn matching(n: usize) -> BiGraph {
        BiGraph::new(n, n, (0..n).map(|i| (i, i))).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(new_bigraph(1, 1, &[(0, 0)]).unwrap().edge_count(), 1);
        assert_eq!(k(2, 2).edge_count(), 4);
        assert_eq!(
            new_bigraph(2, 2, &[(0, 0), (0, 0)]).unwrap_err(),
            Error::DuplicateEdge(0, 0)
        );
        assert!(matches!(
            new_bigraph(2, 2, &[(2, 0)]),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(k(3, 4).complement().edge_count(), 0);
        assert_eq!(BiGraph::empty(3, 3).unwrap().complement(), k(3, 3));
        let hexagon = matching(3).complement();
        assert_eq!(hexagon.edge_count(), 6);
        assert!(hexagon.is_biregular(2, 2));
    }

    #[test]
    fn neighbor_queries() {
        let g = new_bigraph(2, 2, &[(0, 0)]).unwrap();
        assert!(g.neighbors(Side::Eta, 1).unwrap().is_empty());
        assert_eq!(k(2, 3).neighbors(Side::Eta, 0).unwrap(), &[0, 1, 2]);
        assert_eq!(k(2, 3).neighbors(Side::Kappa, 2).unwrap(), &[0, 1]);
        let hexagon = matching(3).complement();
        assert_eq!(hexagon.neighbors(Side::Eta, 0).unwrap(), &[1, 2]);
        assert!(g.neighbors(Side::Kappa, 2).is_err());
    }

    #[test]
    fn degrees() {
        assert_eq!(k(2, 3).degree_profile(), (vec![3, 3], vec![2, 2, 2]));
        assert_eq!(BiGraph::empty(2, 2).unwrap().degree_profile(), (vec![0, 0], vec![0, 0]));
        assert!(k(4, 3).is_biregular(3, 4));
        let path = new_bigraph(2, 2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(!path.is_biregular(2, 2));
    }

    #[test]
    fn serialize_format() {
        let g = new_bigraph(1, 1, &[(0, 0)]).unwrap();
        assert_eq!(g.serialize(), "bipartite 1 1\ne 0 0\n");
        let parsed = BiGraph::parse("# comment\n\nbipartite 2 2\n# more\ne 1 0\ne 0 1\n").unwrap();
        assert_eq!(parsed.serialize(), "bipartite 2 2\ne 0 1\ne 1 0\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("bipartite 2 2\ne 0 5\n", 2),
            ("bipartite 2 2\ne 0 0\ne 0 0\n", 3),
            ("e 0 0\n", 1),
            ("bipartite 2\n", 1),
            ("bipartite 2 2\nx 1 1\n", 2),
            ("bipartite 2 2\ne a 1\n", 2),
        ];
        for (text, line) in cases {
            match BiGraph::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
        assert!(BiGraph::parse("# nothing\n").is_err());
    }

    #[test]
    fn dot_output() {
        let empty = BiGraph::empty(1, 1).unwrap();
        assert_eq!(
            empty.to_dot(),
            "graph bipartite {\n  { rank=same; h0; }\n  { rank=same; k0; }\n}\n"
        );
        let single = new_bigraph(1, 1, &[(0, 0)]).unwrap();
        assert_eq!(single.to_dot().matches(" -- ").count(), 1);
        assert!(single.to_dot().contains("  h0 -- k0;\n"));
        let lines: Vec<String> = k(2, 2)
            .to_dot()
            .lines()
            .filter(|l| l.contains("--"))
            .map(str::to_string)
            .collect();
        assert_eq!(
            lines,
            ["  h0 -- k0;", "  h0 -- k1;", "  h1 -- k0;", "  h1 -- k1;"]
        );
    }

    #[test]
    fn tensor_and_transpose() {
        let t = matching(3).complement().tensor(&k(1, 2));
        assert_eq!((t.a(), t.b(), t.edge_count()), (3, 6, 12));
        assert!(t.is_biregular(4, 2));
        let tr = t.transpose();
        assert_eq!((tr.a(), tr.b()), (6, 3));
        assert_eq!(tr.transpose(), t);
    }

    fn arb_graph() -> impl Strategy<Value = BiGraph> {
        (1usize..=5, 1usize..=5).prop_flat_map(|(a, b)| {
            proptest::collection::vec(any::<bool>(), a * b).prop_map(move |bits| {
                let edges = bits
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x)
                    .map(|(idx, _)| (idx / b, idx % b));
                BiGraph::new(a, b, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn complement_is_involution(g in arb_graph()) {
            let c = g.complement();
            prop_assert_eq!(c.edge_count() + g.edge_count(), g.a() * g.b());
            prop_assert_eq!(c.complement(), g);
        }

        #[test]
        fn text_round_trip(g in arb_graph()) {
            let text = g.serialize();
            let back = BiGraph::parse(&text).unwrap();
            prop_assert_eq!(back.serialize(), text);
            prop_assert_eq!(back, g);
        }

        #[test]
        fn degree_sums_match(g in arb_graph()) {
            let (e, k) = g.degree_profile();
            prop_assert_eq!(e.iter().sum::<usize>(), g.edge_count());
            prop_assert_eq!(k.iter().sum::<usize>(), g.edge_count());
        }
    }
}
