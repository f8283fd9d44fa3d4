//! Finite forests approximating the free pseudoplane, with rank as
//! shortest-path distance.
//!
//! Infinite valency is approximated by a target branching `b`: a vertex with
//! fewer than `b` neighbours is a boundary vertex, where the approximation
//! stops. Walks that need a fresh neighbour never step onto one.

mod text;

use std::collections::VecDeque;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::families::stream_rng;

pub use text::ParseGraphError;

/// Largest vertex count accepted from text or generation.
pub const MAX_VERTICES: usize = 1 << 22;

/// Default per-level cap on expanded vertices in [`generate_tree`].
pub const DEFAULT_LEVEL_WIDTH: usize = 1024;

/// Number of cycle witnesses kept by [`axiom_check`].
pub const MAX_CYCLE_WITNESSES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {vertex} (graph has {vertices})")]
    UnknownVertex { vertex: usize, vertices: usize },
    #[error("{name} must be at least {min}, got {value}")]
    OutOfRange { name: &'static str, min: usize, value: usize },
    #[error("graph would exceed {MAX_VERTICES} vertices")]
    TooLarge,
    #[error("{a} and {b} are not adjacent")]
    NotAnEdge { a: usize, b: usize },
    #[error("walk step {step}: no fresh admissible neighbour of {vertex}")]
    Stuck { step: usize, vertex: usize },
}

/// Vertices `0..n` with an adjacency relation and a target branching.
///
/// Values built by [`generate_tree`] and the edge-list parser are
/// symmetric; [`PseudoplaneGraph::from_arcs`] accepts any relation so that
/// [`axiom_check`] can be pointed at broken input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoplaneGraph {
    adj: Vec<Vec<usize>>,
    target_branching: usize,
}

impl PseudoplaneGraph {
    /// Undirected graph from edges; duplicates are merged, self-loops kept.
    pub fn from_edges(vertices: usize, edges: &[(usize, usize)], target_branching: usize) -> Result<Self, GraphError> {
        let mut arcs = Vec::with_capacity(2 * edges.len());
        for &(u, v) in edges {
            arcs.push((u, v));
            arcs.push((v, u));
        }
        Self::from_arcs(vertices, &arcs, target_branching)
    }

    /// Graph from directed arcs, taken as given.
    pub fn from_arcs(vertices: usize, arcs: &[(usize, usize)], target_branching: usize) -> Result<Self, GraphError> {
        if vertices > MAX_VERTICES {
            return Err(GraphError::TooLarge);
        }
        let mut adj = vec![Vec::new(); vertices];
        for &(u, v) in arcs {
            for x in [u, v] {
                if x >= vertices {
                    return Err(GraphError::UnknownVertex { vertex: x, vertices });
                }
            }
            adj[u].push(v);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(PseudoplaneGraph { adj, target_branching })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of undirected edges (arcs `u → v` with `u ≤ v`).
    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn target_branching(&self) -> usize {
        self.target_branching
    }

    pub fn neighbors(&self, v: usize) -> Result<&[usize], GraphError> {
        self.check(v)?;
        Ok(&self.adj[v])
    }

    /// Neighbours other than `v` itself.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&u| u != v).count()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.degree(v) < self.target_branching
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|l| l.binary_search(&v).is_ok())
    }

    /// Each edge once, as `(u, v)` with `u ≤ v`, in ascending order. Arcs
    /// present only as `v → u` with `u < v` are listed as `(u, v)` too.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mut all: Vec<(usize, usize)> = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                let e = (u.min(v), u.max(v));
                all.push(e);
            }
        }
        all.sort_unstable();
        all.dedup();
        all.into_iter()
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex { vertex: v, vertices: self.adj.len() })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RankValue {
    Finite(usize),
    Omega,
}

impl RankValue {
    /// The finite value; panics on `Omega`.
    pub fn unwrap_finite(self) -> usize {
        match self {
            RankValue::Finite(n) => n,
            RankValue::Omega => panic!("rank is omega"),
        }
    }
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankValue::Finite(n) => write!(f, "{n}"),
            RankValue::Omega => f.write_str("omega"),
        }
    }
}

/// Shortest-path length from `a` to `b`, or `Omega` when disconnected.
pub fn rank(g: &PseudoplaneGraph, a: usize, b: usize) -> Result<RankValue, GraphError> {
    g.check(a)?;
    g.check(b)?;
    if a == b {
        return Ok(RankValue::Finite(0));
    }
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[a] = 0;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        for &v in &g.adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                if v == b {
                    return Ok(RankValue::Finite(dist[v]));
                }
                queue.push_back(v);
            }
        }
    }
    Ok(RankValue::Omega)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `from → to` present without `to → from`.
    Asymmetric {
        from: usize,
        to: usize,
    },
    SelfLoop {
        vertex: usize,
    },
    /// A closed path `v0 – v1 – … – vk – v0` of length at least 3.
    Cycle {
        vertices: Vec<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Asymmetric { from, to } => write!(f, "asymmetric edge {from} -> {to}"),
            Violation::SelfLoop { vertex } => write!(f, "self-loop at {vertex}"),
            Violation::Cycle { vertices } => {
                let path: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
                write!(f, "cycle {} - {}", path.join(" - "), vertices[0])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    /// Edges closing a cycle; at most [`MAX_CYCLE_WITNESSES`] of them have a
    /// witness in `violations`.
    pub cycle_edges: usize,
    /// Vertices with fewer than `target_branching` neighbours.
    pub boundary: Vec<usize>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks symmetry, irreflexivity and acyclicity, and lists boundary vertices.
pub fn axiom_check(g: &PseudoplaneGraph) -> AxiomReport {
    let n = g.vertex_count();
    let mut violations = Vec::new();
    for (u, list) in g.adj.iter().enumerate() {
        for &v in list {
            if u == v {
                violations.push(Violation::SelfLoop { vertex: u });
            } else if !g.has_edge(v, u) {
                violations.push(Violation::Asymmetric { from: u, to: v });
            }
        }
    }

    // Undirected view without loops for the forest check.
    let mut und: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        if u != v {
            und[u].push(v);
            und[v].push(u);
        }
    }
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut cycle_edges = 0;
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &und[u] {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if v != parent[u] && u < v {
                    cycle_edges += 1;
                    if cycle_edges <= MAX_CYCLE_WITNESSES {
                        violations.push(Violation::Cycle { vertices: tree_cycle(&parent, &depth, u, v) });
                    }
                }
            }
        }
    }

    let boundary = (0..n).filter(|&v| g.is_boundary(v)).collect();
    AxiomReport { violations, cycle_edges, boundary }
}

/// The cycle formed by non-tree edge `u – v` and the BFS-tree paths to their
/// common ancestor.
fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    let (mut x, mut y) = (u, v);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// Forest of `components` rooted trees in which every expanded vertex has
/// degree `branching` (the root `branching` children, others
/// `branching - 1`) and vertices at `depth` are leaves.
///
/// At most `level_width` vertices per level are expanded; when a level has
/// more candidates, every expanded parent keeps at least one expanded child
/// and the rest are chosen by a shuffle seeded from `(seed, component)`.
/// Unexpanded vertices are leaves, hence boundary vertices. When no level
/// exceeds the cap the result is the full tree, independent of `seed`.
/// Vertices are numbered breadth-first, component by component.
pub fn generate_pruned_tree(
    branching: usize,
    depth: usize,
    components: usize,
    seed: u64,
    level_width: usize,
) -> Result<PseudoplaneGraph, GraphError> {
    for (name, min, value) in [
        ("branching", 2, branching),
        ("depth", 1, depth),
        ("components", 1, components),
        ("level width", 1, level_width),
    ] {
        if value < min {
            return Err(GraphError::OutOfRange { name, min, value });
        }
    }
    let mut adj: Vec<Vec<usize>> = Vec::new();
    for component in 0..components {
        let mut rng = stream_rng(seed, component as u64);
        let root = adj.len();
        adj.push(Vec::new());
        let mut expanded = vec![root];
        for level in 0..depth {
            // Children of every expanded vertex, grouped by parent.
            let mut groups: Vec<Vec<usize>> = Vec::with_capacity(expanded.len());
            for &p in &expanded {
                let count = if p == root { branching } else { branching - 1 };
                if adj.len() + count > MAX_VERTICES {
                    return Err(GraphError::TooLarge);
                }
                let kids: Vec<usize> = (adj.len()..adj.len() + count).collect();
                for _ in &kids {
                    adj.push(vec![p]);
                }
                adj[p].extend(&kids);
                groups.push(kids);
            }
            if level + 1 == depth {
                break;
            }
            let total: usize = groups.iter().map(Vec::len).sum();
            expanded =
                if total <= level_width { groups.concat() } else { pick_expanded(&groups, level_width, &mut rng) };
        }
    }
    Ok(PseudoplaneGraph { adj, target_branching: branching })
}

/// [`generate_pruned_tree`] with [`DEFAULT_LEVEL_WIDTH`].
pub fn generate_tree(
    branching: usize,
    depth: usize,
    components: usize,
    seed: u64,
) -> Result<PseudoplaneGraph, GraphError> {
    generate_pruned_tree(branching, depth, components, seed, DEFAULT_LEVEL_WIDTH)
}

fn pick_expanded<R: Rng>(groups: &[Vec<usize>], width: usize, rng: &mut R) -> Vec<usize> {
    let mut chosen = Vec::with_capacity(width.max(groups.len()));
    let mut rest = Vec::new();
    for kids in groups {
        let keep = rng.gen_range(0..kids.len());
        chosen.push(kids[keep]);
        rest.extend(kids.iter().enumerate().filter(|&(i, _)| i != keep).map(|(_, &k)| k));
    }
    if chosen.len() < width {
        rest.shuffle(rng);
        chosen.extend(rest.into_iter().take(width - chosen.len()));
    }
    chosen.sort_unstable();
    chosen
}

/// Vertices in one full tree of the given shape: `1 + Σ_{i<d} b(b-1)^i`.
pub fn full_tree_size(branching: usize, depth: usize) -> u128 {
    let (b, mut layer, mut total) = (branching as u128, branching as u128, 1u128);
    for _ in 0..depth {
        total += layer;
        layer *= b - 1;
    }
    total
}

/// How [`claim_walk`] picks among admissible neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighborChoice {
    /// Smallest admissible vertex.
    First,
    /// Uniform among admissible vertices, seeded.
    Seeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimWalk {
    /// `[(a0, b0), (a1, b1), …, (an, bn)]`.
    pub pairs: Vec<(usize, usize)>,
    /// `rank(b0, bn)`.
    pub distance: RankValue,
}

impl ClaimWalk {
    /// The walk as a vertex path `b0, a1, b1, …, an, bn`.
    pub fn path(&self) -> Vec<usize> {
        let mut path = vec![self.pairs[0].1];
        for &(a, b) in &self.pairs[1..] {
            path.push(a);
            path.push(b);
        }
        path
    }
}

/// From the edge `a0 – b0`, picks `a_{i+1}` adjacent to `b_i` and `b_{i+1}`
/// adjacent to `a_{i+1}`, each a vertex not visited before. A pick must not
/// be a boundary vertex unless it is the final `b_n`. Returns the pairs and
/// `rank(b0, bn)`, which in a forest is `Finite(2n)`.
pub fn claim_walk(
    g: &PseudoplaneGraph,
    a0: usize,
    b0: usize,
    n: usize,
    choice: NeighborChoice,
) -> Result<ClaimWalk, GraphError> {
    g.check(a0)?;
    g.check(b0)?;
    if a0 == b0 || !g.has_edge(a0, b0) {
        return Err(GraphError::NotAnEdge { a: a0, b: b0 });
    }
    let mut rng = match choice {
        NeighborChoice::Seeded(seed) => Some(stream_rng(seed, 0)),
        NeighborChoice::First => None,
    };
    let mut visited = vec![false; g.vertex_count()];
    visited[a0] = true;
    visited[b0] = true;
    let mut pairs = vec![(a0, b0)];
    let mut current = b0;
    for step in 1..=n {
        let mut pair = [0usize; 2];
        for (half, slot) in pair.iter_mut().enumerate() {
            let last = step == n && half == 1;
            let options: Vec<usize> =
                g.adj[current].iter().copied().filter(|&v| !visited[v] && (last || !g.is_boundary(v))).collect();
            let next = match (&mut rng, options.is_empty()) {
                (_, true) => return Err(GraphError::Stuck { step, vertex: current }),
                (Some(rng), false) => options[rng.gen_range(0..options.len())],
                (None, false) => options[0],
            };
            visited[next] = true;
            *slot = next;
            current = next;
        }
        pairs.push((pair[0], pair[1]));
    }
    let distance = rank(g, b0, current)?;
    Ok(ClaimWalk { pairs, distance })
}
