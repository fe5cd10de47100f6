//! Planarity of stacking-pair structures.
//!
//! Drawing the bases on a horizontal line and routing each base pair above
//! or below it is a two-page book embedding with a fixed spine. Such a
//! drawing exists without crossings exactly when the crossing graph of the
//! pairs is bipartite, so for structures in which every pair belongs to a
//! stacking pair, bipartiteness of the crossing graph decides planarity of
//! the backbone-plus-pairs graph. A triple of stacking pairs whose indices
//! interleave as `i < i' < i'' < j < j' < j''` forces an odd crossing cycle
//! (a K3,3 shape) and certifies non-planarity on its own.

use serde::{Deserialize, Serialize};

use crate::structure::{BasePair, SecondaryStructure};

/// The crossing graph of a structure: one node per base pair, an edge
/// between every two pairs `(i, j)`, `(k, l)` with `i < k < j < l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingGraph {
    pub nodes: Vec<BasePair>,
    /// Edges as index pairs into `nodes`, with the smaller index first.
    pub edges: Vec<(usize, usize)>,
}

impl CrossingGraph {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// Build the crossing graph by checking all pairs of pairs.
pub fn crossing_graph(structure: &SecondaryStructure) -> CrossingGraph {
    let nodes: Vec<BasePair> = structure.pairs().to_vec();
    let mut edges = Vec::new();
    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            if nodes[a].crosses(&nodes[b]) {
                edges.push((a, b));
            }
        }
    }
    CrossingGraph { nodes, edges }
}

/// The page (half-plane) a pair is drawn in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Page {
    Above,
    Below,
}

impl Page {
    fn flip(self) -> Page {
        match self {
            Page::Above => Page::Below,
            Page::Below => Page::Above,
        }
    }
}

/// A two-page assignment in which no two crossing pairs share a page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageAssignment {
    /// Pairs with their pages, sorted by pair.
    pub pages: Vec<(BasePair, Page)>,
}

impl PageAssignment {
    pub fn page_of(&self, pair: &BasePair) -> Option<Page> {
        self.pages
            .binary_search_by(|(p, _)| p.cmp(pair))
            .ok()
            .map(|idx| self.pages[idx].1)
    }
}

/// Two-color the crossing graph, or return `None` if it is not bipartite.
///
/// Deterministic rule: connected components are processed in ascending order
/// of their smallest left endpoint, and that component's representative pair
/// is assigned `Above`.
pub fn page_assignment(structure: &SecondaryStructure) -> Option<PageAssignment> {
    let graph = crossing_graph(structure);
    let adj = graph.adjacency();
    let n = graph.nodes.len();
    let mut color: Vec<Option<Page>> = vec![None; n];

    // Nodes are already sorted by (i, j), so scanning in index order visits
    // components by their smallest left endpoint.
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(Page::Above);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &v in &adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(cu.flip());
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }

    let pages = graph
        .nodes
        .iter()
        .zip(color)
        .map(|(p, c)| (*p, c.unwrap()))
        .collect();
    Some(PageAssignment { pages })
}

/// True iff the structure contains three stacking pairs whose outer pairs
/// `(i, j)`, `(i', j')`, `(i'', j'')` satisfy `i < i' < i'' < j < j' < j''`,
/// i.e. three mutually crossing stacking pairs.
pub fn has_interleaving_block(structure: &SecondaryStructure) -> bool {
    let reps = structure.stacking_outer_pairs();
    for a in 0..reps.len() {
        for b in a + 1..reps.len() {
            if !reps[a].crosses(&reps[b]) {
                continue;
            }
            for c in b + 1..reps.len() {
                if reps[a].crosses(&reps[c]) && reps[b].crosses(&reps[c]) {
                    return true;
                }
            }
        }
    }
    false
}

/// Decide planarity of the stacking-pair content of a structure.
///
/// Pairs not participating in any stacking pair are dropped first (they do
/// not contribute to the objective), then the remaining pairs must admit a
/// two-page assignment.
pub fn is_planar_stacked(structure: &SecondaryStructure) -> bool {
    page_assignment(&structure.stacking_only()).is_some()
}
