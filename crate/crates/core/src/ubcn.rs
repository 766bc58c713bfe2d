//! The unreliable binary-state complete network.
//!
//! Node ids: `0` is the source, `1..=n` are the attribute nodes and `n + 1`
//! is the sink. Every pair of attribute nodes is joined by an arc, the source
//! is joined to every attribute node and every attribute node to the sink.
//! Arcs are undirected. Source and sink never fail.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tag written into model files for the arc ordering below.
pub const ARC_ORDERING: &str = "pairs-then-source-then-sink";

/// Largest attribute count [`exact_reliability`] will enumerate.
pub const MAX_EXACT_NODES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    n: usize,
    arcs: Vec<(usize, usize)>,
    /// `(arc index, neighbour)` per node id.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Topology {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("network needs at least one attribute node".into()));
        }
        let sink = n + 1;
        let mut arcs = Vec::with_capacity(n * (n - 1) / 2 + 2 * n);
        for j in 1..=n {
            for k in (j + 1)..=n {
                arcs.push((j, k));
            }
        }
        arcs.extend((1..=n).map(|j| (0, j)));
        arcs.extend((1..=n).map(|j| (j, sink)));

        let mut adjacency = vec![Vec::new(); n + 2];
        for (idx, &(a, b)) in arcs.iter().enumerate() {
            adjacency[a].push((idx, b));
            adjacency[b].push((idx, a));
        }
        Ok(Self { n, arcs, adjacency })
    }

    /// Number of attribute nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of arcs, `n(n-1)/2 + 2n`.
    pub fn n_var(&self) -> usize {
        self.arcs.len()
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        self.n + 1
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Index of the arc joining `a` and `b`, in either orientation.
    pub fn arc_index(&self, a: usize, b: usize) -> Option<usize> {
        self.adjacency
            .get(a)?
            .iter()
            .find(|&&(_, nb)| nb == b)
            .map(|&(idx, _)| idx)
    }

    fn is_terminal(&self, v: usize) -> bool {
        v == 0 || v == self.n + 1
    }
}

pub fn build_topology(n: usize) -> Result<Topology> {
    Topology::new(n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentState {
    pub arc_up: Vec<bool>,
    /// Attribute nodes only; index `j - 1` holds node `j`.
    pub node_up: Vec<bool>,
}

impl ComponentState {
    pub fn all(topology: &Topology, up: bool) -> Self {
        Self {
            arc_up: vec![up; topology.n_var()],
            node_up: vec![up; topology.n()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityAssignment {
    pub arc_rel: Vec<f64>,
    pub node_rel: Vec<f64>,
}

impl ReliabilityAssignment {
    pub fn new(topology: &Topology, arc_rel: Vec<f64>, node_rel: Vec<f64>) -> Result<Self> {
        check_len(topology.n_var(), arc_rel.len())?;
        check_len(topology.n(), node_rel.len())?;
        if let Some(p) = arc_rel.iter().chain(&node_rel).find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidParameter(format!("reliability {p} outside [0, 1]")));
        }
        Ok(Self { arc_rel, node_rel })
    }

    pub fn uniform(topology: &Topology, arc: f64, node: f64) -> Result<Self> {
        Self::new(topology, vec![arc; topology.n_var()], vec![node; topology.n()])
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}

/// Reusable scratch space for repeated sampling and connectivity checks.
#[derive(Debug, Clone)]
pub struct Sampler<'a> {
    topology: &'a Topology,
    state: ComponentState,
    visited: Vec<bool>,
    stack: Vec<usize>,
}

impl<'a> Sampler<'a> {
    pub fn new(topology: &'a Topology) -> Self {
        Self {
            topology,
            state: ComponentState::all(topology, false),
            visited: vec![false; topology.n() + 2],
            stack: Vec::with_capacity(topology.n() + 2),
        }
    }

    /// Draws one state (arcs first, then attribute nodes, one uniform each)
    /// and reports whether source and sink are connected.
    pub fn trial<R: Rng + ?Sized>(&mut self, arc_rel: &[f64], node_rel: &[f64], rng: &mut R) -> bool {
        fill_state(&mut self.state, arc_rel, node_rel, rng);
        connected_with(self.topology, &self.state, &mut self.visited, &mut self.stack)
    }

    pub fn state(&self) -> &ComponentState {
        &self.state
    }
}

fn fill_state<R: Rng + ?Sized>(state: &mut ComponentState, arc_rel: &[f64], node_rel: &[f64], rng: &mut R) {
    for (up, &p) in state.arc_up.iter_mut().zip(arc_rel) {
        *up = rng.random::<f64>() < p;
    }
    for (up, &p) in state.node_up.iter_mut().zip(node_rel) {
        *up = rng.random::<f64>() < p;
    }
}

pub fn sample_state<R: Rng + ?Sized>(topology: &Topology, assign: &ReliabilityAssignment, rng: &mut R) -> ComponentState {
    let mut state = ComponentState::all(topology, false);
    fill_state(&mut state, &assign.arc_rel, &assign.node_rel, rng);
    state
}

pub fn is_connected(topology: &Topology, state: &ComponentState) -> bool {
    let mut visited = vec![false; topology.n() + 2];
    let mut stack = Vec::new();
    connected_with(topology, state, &mut visited, &mut stack)
}

fn connected_with(topology: &Topology, state: &ComponentState, visited: &mut [bool], stack: &mut Vec<usize>) -> bool {
    visited.iter_mut().for_each(|v| *v = false);
    stack.clear();
    let sink = topology.sink();
    visited[0] = true;
    stack.push(0);
    while let Some(v) = stack.pop() {
        for &(arc, w) in &topology.adjacency[v] {
            if visited[w] || !state.arc_up[arc] {
                continue;
            }
            if w == sink {
                return true;
            }
            if !topology.is_terminal(w) && !state.node_up[w - 1] {
                continue;
            }
            visited[w] = true;
            stack.push(w);
        }
    }
    false
}

/// Exact two-terminal reliability by enumerating every component state.
///
/// Only meant as a test oracle: the cost is `2^(n_var + n)` connectivity
/// checks, so `n` is capped at [`MAX_EXACT_NODES`].
pub fn exact_reliability(topology: &Topology, assign: &ReliabilityAssignment) -> Result<f64> {
    let n = topology.n();
    if n > MAX_EXACT_NODES {
        return Err(Error::EnumerationTooLarge { n, max: MAX_EXACT_NODES });
    }
    check_len(topology.n_var(), assign.arc_rel.len())?;
    check_len(n, assign.node_rel.len())?;

    let arc_probs = state_probabilities(&assign.arc_rel);
    let node_probs = state_probabilities(&assign.node_rel);
    let sink = topology.sink();

    let mut total = 0.0;
    for (node_mask, &p_nodes) in node_probs.iter().enumerate() {
        if p_nodes == 0.0 {
            continue;
        }
        // bit v of `alive` set when node v can be traversed
        let alive: u32 = 1 | (1 << sink) | ((node_mask as u32) << 1);
        for (arc_mask, &p_arcs) in arc_probs.iter().enumerate() {
            if p_arcs == 0.0 {
                continue;
            }
            if mask_connected(topology, alive, arc_mask) {
                total += p_nodes * p_arcs;
            }
        }
    }
    Ok(total.clamp(0.0, 1.0))
}

/// Probability of every up/down pattern; bit `i` of the index is component `i`.
fn state_probabilities(rel: &[f64]) -> Vec<f64> {
    let mut table = vec![1.0];
    for (i, &p) in rel.iter().enumerate() {
        let mut next = vec![0.0; table.len() * 2];
        for (mask, &t) in table.iter().enumerate() {
            next[mask] = t * (1.0 - p);
            next[mask | (1 << i)] = t * p;
        }
        table = next;
    }
    table
}

fn mask_connected(topology: &Topology, alive: u32, arc_mask: usize) -> bool {
    let mut adj = [0u32; MAX_EXACT_NODES + 2];
    for (i, &(a, b)) in topology.arcs().iter().enumerate() {
        if arc_mask & (1 << i) != 0 && alive & (1 << a) != 0 && alive & (1 << b) != 0 {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    let sink_bit = 1u32 << topology.sink();
    let mut reached = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !reached;
        reached |= fresh;
        frontier |= fresh;
        if reached & sink_bit != 0 {
            return true;
        }
    }
    false
}
