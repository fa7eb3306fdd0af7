//! Prime-labelled graphs: the character degree graph `Δ(G)` and the orbit
//! graph `Δ_orb`, with connectivity, cut vertices and complete vertices.

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chardeg::DegreeMultiset;
use crate::error::{Error, Result};
use crate::numtheory::{prime_set, PrimeSet};

/// Maximum number of vertices; adjacency rows are 64-bit masks.
pub const MAX_VERTICES: usize = 64;

/// A simple graph whose vertices are distinct primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeGraph {
    vertices: PrimeSet,
    adj: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<u64>,
    edges: Vec<[u64; 2]>,
}

impl Serialize for PrimeGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDoc {
            vertices: self.vertices.as_slice().to_vec(),
            edges: self.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PrimeGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        let vertices = PrimeSet::new(doc.vertices).map_err(serde::de::Error::custom)?;
        PrimeGraph::new(vertices, doc.edges.iter().map(|e| (e[0], e[1])))
            .map_err(serde::de::Error::custom)
    }
}

impl PrimeGraph {
    /// Builds a graph; every edge must join two distinct listed vertices.
    pub fn new<I: IntoIterator<Item = (u64, u64)>>(
        vertices: PrimeSet,
        edges: I,
    ) -> Result<PrimeGraph> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "{} vertices exceed the limit of {MAX_VERTICES}",
                vertices.len()
            )));
        }
        let mut g = PrimeGraph {
            adj: vec![0; vertices.len()],
            vertices,
        };
        for (p, q) in edges {
            g.add_edge(p, q)?;
        }
        Ok(g)
    }

    pub fn empty() -> PrimeGraph {
        PrimeGraph {
            vertices: PrimeSet::empty(),
            adj: vec![],
        }
    }

    /// Complete graph on `vertices`.
    pub fn complete(vertices: PrimeSet) -> Result<PrimeGraph> {
        let vs: Vec<u64> = vertices.iter().collect();
        let pairs: Vec<(u64, u64)> = vs
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| vs[i + 1..].iter().map(move |&q| (p, q)))
            .collect();
        PrimeGraph::new(vertices, pairs)
    }

    fn pos(&self, p: u64) -> Option<usize> {
        self.vertices.as_slice().binary_search(&p).ok()
    }

    fn add_edge(&mut self, p: u64, q: u64) -> Result<()> {
        let (i, j) = match (self.pos(p), self.pos(q)) {
            (Some(i), Some(j)) if i != j => (i, j),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "edge {p}-{q} is not between two distinct vertices"
                )))
            }
        };
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
        Ok(())
    }

    pub fn vertices(&self) -> &PrimeSet {
        &self.vertices
    }

    /// Edges `[p, q]` with `p < q`, sorted.
    pub fn edges(&self) -> Vec<[u64; 2]> {
        let vs = self.vertices.as_slice();
        let mut out = Vec::new();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if self.adj[i] >> j & 1 == 1 {
                    out.push([vs[i], vs[j]]);
                }
            }
        }
        out
    }

    pub fn is_adjacent(&self, p: u64, q: u64) -> bool {
        match (self.pos(p), self.pos(q)) {
            (Some(i), Some(j)) => self.adj[i] >> j & 1 == 1,
            _ => false,
        }
    }

    /// Neighbours of `p`, ascending.
    pub fn neighbours(&self, p: u64) -> Vec<u64> {
        self.pos(p)
            .map_or_else(Vec::new, |i| self.labels(self.adj[i]))
    }

    fn labels(&self, mask: u64) -> Vec<u64> {
        let vs = self.vertices.as_slice();
        (0..vs.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| vs[i])
            .collect()
    }

    fn full_mask(&self) -> u64 {
        match self.vertices.len() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    /// The graph with `p` and its edges deleted.
    pub fn remove_vertex(&self, p: u64) -> PrimeGraph {
        let keep: Vec<u64> = self.vertices.iter().filter(|&v| v != p).collect();
        let edges = self
            .edges()
            .into_iter()
            .filter(|e| e[0] != p && e[1] != p)
            .map(|e| (e[0], e[1]));
        PrimeGraph::new(PrimeSet::from_sorted_unchecked(keep), edges).expect("induced subgraph")
    }

    fn component_masks(&self, alive: u64) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            if alive >> i & 1 == 0 || seen >> i & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << i;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & alive & !comp;
                comp |= new;
                frontier |= new;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Connected components, each ascending, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<PrimeSet> {
        self.component_masks(self.full_mask())
            .into_iter()
            .map(|m| PrimeSet::from_sorted_unchecked(self.labels(m)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_masks(self.full_mask()).len() <= 1
    }

    /// Articulation vertices, by depth-first search with low links.
    pub fn cut_vertices(&self) -> PrimeSet {
        let n = self.vertices.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // frames: (vertex, parent, neighbours still to visit)
            let mut stack: Vec<(usize, usize, u64)> = vec![(root, usize::MAX, self.adj[root])];
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            while let Some(&mut (v, parent, ref mut rest)) = stack.last_mut() {
                if *rest != 0 {
                    let w = rest.trailing_zeros() as usize;
                    *rest &= *rest - 1;
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, self.adj[w]));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        let vs = self.vertices.as_slice();
        PrimeSet::from_sorted_unchecked((0..n).filter(|&i| is_cut[i]).map(|i| vs[i]).collect())
    }

    /// Vertices adjacent to every other vertex.
    pub fn complete_vertices(&self) -> PrimeSet {
        let full = self.full_mask();
        let vs = self.vertices.as_slice();
        PrimeSet::from_sorted_unchecked(
            (0..vs.len())
                .filter(|&i| self.adj[i] | 1 << i == full)
                .map(|i| vs[i])
                .collect(),
        )
    }

    /// Whether `subset` is pairwise adjacent; `subset` must be made of vertices.
    pub fn is_clique(&self, subset: &PrimeSet) -> Result<bool> {
        if !subset.is_subset(&self.vertices) {
            return Err(Error::InvalidArgument(format!(
                "{subset} is not contained in {}",
                self.vertices
            )));
        }
        let idx: Vec<usize> = subset
            .iter()
            .map(|p| self.pos(p).expect("checked"))
            .collect();
        Ok(idx
            .iter()
            .all(|&i| idx.iter().all(|&j| i == j || self.adj[i] >> j & 1 == 1)))
    }

    /// Labelled equality: same vertices and same edges.
    pub fn graph_equals(&self, other: &PrimeGraph) -> bool {
        self == other
    }

    /// Union of vertices and edges.
    pub fn union(&self, other: &PrimeGraph) -> Result<PrimeGraph> {
        let edges: Vec<(u64, u64)> = self
            .edges()
            .into_iter()
            .chain(other.edges())
            .map(|e| (e[0], e[1]))
            .collect();
        PrimeGraph::new(self.vertices.union(&other.vertices), edges)
    }

    /// Graphviz rendering, vertices and edges ascending.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for p in self.vertices.iter() {
            writeln!(out, "  {p};").expect("string write");
        }
        for [p, q] in self.edges() {
            writeln!(out, "  {p} -- {q};").expect("string write");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }
}

/// Graph on the primes of a list of integers: `p ~ q` iff `pq` divides one of them.
pub fn graph_of_numbers<I: IntoIterator<Item = u64>>(numbers: I) -> Result<PrimeGraph> {
    let sets: Vec<PrimeSet> = numbers.into_iter().map(prime_set).collect::<Result<_>>()?;
    let vertices = sets.iter().fold(PrimeSet::empty(), |acc, s| acc.union(s));
    let mut g = PrimeGraph::new(vertices, std::iter::empty())?;
    for s in &sets {
        let ps = s.as_slice();
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                g.add_edge(ps[i], ps[j])?;
            }
        }
    }
    Ok(g)
}

/// `Δ(G)` from `cd(G)`.
pub fn degree_graph(degrees: &DegreeMultiset) -> PrimeGraph {
    graph_of_numbers(degrees.degree_set()).expect("degrees are positive and have few primes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ps(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    fn graph(v: &[u64], e: &[(u64, u64)]) -> PrimeGraph {
        PrimeGraph::new(ps(v), e.iter().copied()).unwrap()
    }

    fn path_253() -> PrimeGraph {
        graph(&[2, 3, 5], &[(2, 5), (5, 3)])
    }

    // Oracle: delete each vertex and recount components.
    fn brute_cut_vertices(g: &PrimeGraph) -> Vec<u64> {
        let base = g.connected_components().len();
        g.vertices()
            .iter()
            .filter(|&p| g.remove_vertex(p).connected_components().len() > base)
            .collect()
    }

    #[test]
    fn degree_graph_examples() {
        let a5 = degree_graph(&DegreeMultiset::from_degrees([1, 3, 3, 4, 5]));
        assert_eq!(a5, graph(&[2, 3, 5], &[]));
        assert_eq!(
            a5.connected_components(),
            vec![ps(&[2]), ps(&[3]), ps(&[5])]
        );
        let sl16 = degree_graph(&DegreeMultiset::from_degrees([1, 15, 16, 17]));
        assert_eq!(sl16, graph(&[2, 3, 5, 17], &[(3, 5)]));
        assert_eq!(
            sl16.connected_components(),
            vec![ps(&[2]), ps(&[3, 5]), ps(&[17])]
        );
        let tri = degree_graph(&DegreeMultiset::from_degrees([6, 10, 15]));
        assert_eq!(tri, PrimeGraph::complete(ps(&[2, 3, 5])).unwrap());
        assert!(PrimeGraph::empty().connected_components().is_empty());
    }

    #[test]
    fn cut_and_complete_examples() {
        assert_eq!(path_253().cut_vertices(), ps(&[5]));
        assert_eq!(path_253().complete_vertices(), ps(&[5]));
        let tri = PrimeGraph::complete(ps(&[2, 3, 5])).unwrap();
        assert!(tri.cut_vertices().is_empty());
        // two cliques meeting only at 7
        let glued = graph(
            &[2, 3, 5, 7, 11],
            &[(2, 3), (2, 7), (3, 7), (5, 11), (5, 7), (11, 7)],
        );
        assert_eq!(glued.cut_vertices(), ps(&[7]));
        assert_eq!(glued.complete_vertices(), ps(&[7]));
        let a5 = graph(&[2, 3, 5], &[]);
        assert!(a5.complete_vertices().is_empty());
        assert_eq!(graph(&[13], &[]).complete_vertices(), ps(&[13]));
    }

    #[test]
    fn clique_and_equality() {
        let tri = PrimeGraph::complete(ps(&[2, 3, 5])).unwrap();
        assert!(tri.is_clique(&ps(&[2, 3, 5])).unwrap());
        assert!(!path_253().is_clique(&ps(&[2, 3, 5])).unwrap());
        assert!(path_253().is_clique(&ps(&[3])).unwrap());
        assert!(path_253().is_clique(&ps(&[7])).is_err());
        let path_325 = graph(&[2, 3, 5], &[(3, 2), (2, 5)]);
        assert!(path_253().graph_equals(&path_253()));
        assert!(!path_253().graph_equals(&path_325));
        assert!(PrimeGraph::empty().graph_equals(&PrimeGraph::empty()));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(PrimeGraph::new(ps(&[2, 3]), [(2, 2)]).is_err());
        assert!(PrimeGraph::new(ps(&[2, 3]), [(2, 5)]).is_err());
    }

    #[test]
    fn serialization() {
        let g = graph(&[2, 3, 5, 17], &[(5, 3)]);
        assert_eq!(g.to_json(), r#"{"vertices":[2,3,5,17],"edges":[[3,5]]}"#);
        let back: PrimeGraph = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<PrimeGraph>(r#"{"vertices":[2,4],"edges":[]}"#).is_err());
        assert!(
            serde_json::from_str::<PrimeGraph>(r#"{"vertices":[2,3],"edges":[[2,7]]}"#).is_err()
        );
        assert_eq!(
            path_253().to_dot(),
            "graph G {\n  2;\n  3;\n  5;\n  2 -- 5;\n  3 -- 5;\n}\n"
        );
    }

    const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

    fn arb_graph() -> impl Strategy<Value = PrimeGraph> {
        (0usize..=8, any::<u64>()).prop_map(|(n, bits)| {
            let vs = &PRIMES[..n];
            let mut edges = vec![];
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits >> (k % 64) & 1 == 1 {
                        edges.push((vs[i], vs[j]));
                    }
                    k += 1;
                }
            }
            graph(vs, &edges)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn cut_vertices_match_brute_force(g in arb_graph()) {
            prop_assert_eq!(g.cut_vertices().as_slice().to_vec(), brute_cut_vertices(&g));
        }

        #[test]
        fn complete_cut_vertex_disconnects_rest(g in arb_graph()) {
            for p in g.complete_vertices().iter() {
                let rest_disconnected = g.remove_vertex(p).connected_components().len() > 1;
                prop_assert_eq!(g.cut_vertices().contains(p), rest_disconnected);
            }
        }

        #[test]
        fn adding_a_degree_is_monotone(
            ds in proptest::collection::vec(1u64..5000, 0..8),
            extra in 1u64..5000,
        ) {
            let before = graph_of_numbers(ds.clone()).unwrap();
            let mut more = ds;
            more.push(extra);
            let after = graph_of_numbers(more).unwrap();
            prop_assert!(before.vertices().is_subset(after.vertices()));
            for [p, q] in before.edges() {
                prop_assert!(after.is_adjacent(p, q));
            }
        }

        #[test]
        fn product_degrees_join_factor_graphs(
            a in proptest::collection::vec(1u64..200, 1..5),
            b in proptest::collection::vec(1u64..200, 1..5),
        ) {
            // cd(G x H) = cd(G)cd(H) with 1 in both
            let da = DegreeMultiset::from_degrees(a.iter().copied().chain([1]));
            let db = DegreeMultiset::from_degrees(b.iter().copied().chain([1]));
            let (ga, gb) = (degree_graph(&da), degree_graph(&db));
            let gp = degree_graph(&da.product(&db));
            prop_assert_eq!(gp.vertices(), &ga.vertices().union(gb.vertices()));
            for p in ga.vertices().iter() {
                for q in gb.vertices().iter() {
                    if p != q {
                        prop_assert!(gp.is_adjacent(p, q));
                    }
                }
            }
        }
    }
}
