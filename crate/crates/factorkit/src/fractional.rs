//! Fractional degree-prescribed subgraph feasibility.
//!
//! An instance assigns every vertex a demanded weighted degree, either an
//! exact value `q(v)` or a range `[g(v), f(v)]`, and asks for edge weights
//! `h(e)` in `[0, 1]` meeting the demands. Feasibility is decided on a
//! doubled bipartite network: each vertex appears as a left and a right
//! copy, each edge `uv` becomes the two unit arcs `u_L -> v_R` and
//! `v_L -> u_R`, and per-vertex demands sit on the source and sink arcs.
//! An integral flow then yields the weight `h(uv) = (x(u_L v_R) +
//! x(v_L u_R)) / 2`, so every feasible instance has a witness with all
//! weights in `{0, 1/2, 1}`.
//!
//! Infeasible instances get a certificate instead: a vertex set `S`
//! minimizing `f(S) - g(T) + sum_{v in T} d_{G-S}(v)` over all subsets,
//! where `T` collects the vertices outside `S` whose surviving degree
//! falls below `g`. The minimum is negative exactly when the flow check
//! fails, and the minimizing pair is the reported witness.

use crate::deficiency;
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Graph, VertexSet};
use crate::limits::Cutoffs;

/// Per-vertex nonnegative integer degree prescription.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeFunc(Vec<u32>);

impl DegreeFunc {
    pub fn new(values: Vec<u32>) -> Self {
        DegreeFunc(values)
    }

    pub fn constant(n: usize, value: u32) -> Self {
        DegreeFunc(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// Sum over all vertices.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    /// Sum over the members of `s`.
    pub fn sum_over(&self, s: &VertexSet) -> u64 {
        s.iter().map(|v| self.0[v] as u64).sum()
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &DegreeFunc) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// The constant value if all entries agree (and the function is
    /// nonempty), else `None`.
    pub fn constant_value(&self) -> Option<u32> {
        match self.0.split_first() {
            Some((&first, rest)) if rest.iter().all(|&x| x == first) => Some(first),
            _ => None,
        }
    }
}

/// Half-integral edge weights, stored as numerators over the fixed
/// denominator 2. Entries follow the graph's edge order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IndicatorAssignment {
    entries: Vec<IndicatorEntry>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IndicatorEntry {
    pub u: usize,
    pub v: usize,
    pub numerator: u8,
}

impl IndicatorAssignment {
    pub const DENOMINATOR: u8 = 2;

    pub fn entries(&self) -> &[IndicatorEntry] {
        &self.entries
    }

    /// Edges with positive weight.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries
            .iter()
            .filter(|e| e.numerator > 0)
            .map(|e| (e.u, e.v))
    }

    /// Twice the weighted degree of every vertex, resummed from the raw
    /// entries.
    pub fn degree_numerators(&self, n: usize) -> Vec<u64> {
        let mut sums = vec![0u64; n];
        for e in &self.entries {
            sums[e.u] += e.numerator as u64;
            sums[e.v] += e.numerator as u64;
        }
        sums
    }

    fn check_edges(&self, graph: &Graph) -> std::result::Result<(), String> {
        if self.entries.len() != graph.edge_count() {
            return Err(format!(
                "{} entries for {} edges",
                self.entries.len(),
                graph.edge_count()
            ));
        }
        for (e, &(u, v)) in self.entries.iter().zip(graph.edges()) {
            if (e.u, e.v) != (u, v) {
                return Err(format!(
                    "entry ({}, {}) does not match edge ({u}, {v})",
                    e.u, e.v
                ));
            }
            if e.numerator > 2 {
                return Err(format!("edge ({u}, {v}) has numerator {} > 2", e.numerator));
            }
        }
        Ok(())
    }

    /// Checks that the weights are a valid witness for exact demands `q`.
    pub fn validate_exact(&self, graph: &Graph, q: &DegreeFunc) -> std::result::Result<(), String> {
        self.check_edges(graph)?;
        for (v, &sum) in self.degree_numerators(graph.n()).iter().enumerate() {
            if sum != 2 * q.get(v) as u64 {
                return Err(format!(
                    "vertex {v}: weighted degree {}/2, demanded {}",
                    sum,
                    q.get(v)
                ));
            }
        }
        Ok(())
    }

    /// Checks that the weights are a valid witness for range demands
    /// `[lo, hi]`.
    pub fn validate_range(
        &self,
        graph: &Graph,
        lo: &DegreeFunc,
        hi: &DegreeFunc,
    ) -> std::result::Result<(), String> {
        self.check_edges(graph)?;
        for (v, &sum) in self.degree_numerators(graph.n()).iter().enumerate() {
            if sum < 2 * lo.get(v) as u64 || sum > 2 * hi.get(v) as u64 {
                return Err(format!(
                    "vertex {v}: weighted degree {}/2 outside [{}, {}]",
                    sum,
                    lo.get(v),
                    hi.get(v)
                ));
            }
        }
        Ok(())
    }
}

/// Failure witness: a vertex set `S`, the `T` it prescribes, and the
/// (negative, when infeasible) deficiency value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeficiencyCertificate {
    pub s: VertexSet,
    pub t: VertexSet,
    pub deficiency: i64,
}

/// Outcome of a feasibility check: a half-integral witness or a
/// deficiency certificate. Infeasibility is a result, not an error.
#[derive(Clone, Debug)]
pub enum FactorOutcome {
    Feasible(IndicatorAssignment),
    Infeasible(DeficiencyCertificate),
}

impl FactorOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FactorOutcome::Feasible(_))
    }

    pub fn indicator(&self) -> Option<&IndicatorAssignment> {
        match self {
            FactorOutcome::Feasible(ind) => Some(ind),
            FactorOutcome::Infeasible(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&DeficiencyCertificate> {
        match self {
            FactorOutcome::Feasible(_) => None,
            FactorOutcome::Infeasible(cert) => Some(cert),
        }
    }
}

/// Node layout of the doubled network for a graph on `n` vertices:
/// left copy `v`, right copy `n + v`, source `2n`, sink `2n + 1`.
fn network_layout(n: usize) -> (usize, usize) {
    (2 * n, 2 * n + 1)
}

/// Builds the doubled bipartite network for exact demands: source arcs of
/// capacity `demand(v)` into each left copy, two unit arcs per edge, and
/// sink arcs of capacity `demand(v)` out of each right copy. Demands are
/// met exactly when a maximum flow saturates every source arc.
///
/// The network has `2n + 2` nodes and `2n + 2|E|` arcs; total source
/// capacity is the demand total.
pub fn build_symmetric_network(graph: &Graph, demand: &DegreeFunc) -> Result<FlowNetwork> {
    build_network(graph, None, demand)
}

/// Range variant: source and sink arcs carry bounds `[lo(v), hi(v)]`
/// (`lo = None` meaning all-zero lower bounds).
fn build_network(graph: &Graph, lo: Option<&DegreeFunc>, hi: &DegreeFunc) -> Result<FlowNetwork> {
    let n = graph.n();
    if lo.is_some_and(|lo| lo.len() != n) || hi.len() != n {
        return Err(Error::domain(format!(
            "prescription length does not match vertex count {n}"
        )));
    }
    let lower = |v: usize| lo.map_or(0, |lo| lo.get(v) as i64);
    let (source, sink) = network_layout(n);
    let mut net = FlowNetwork::new(2 * n + 2, source, sink)?;
    for v in 0..n {
        net.add_arc(source, v, lower(v), hi.get(v) as i64)?;
    }
    for &(u, v) in graph.edges() {
        net.add_arc(u, n + v, 0, 1)?;
        net.add_arc(v, n + u, 0, 1)?;
    }
    for v in 0..n {
        net.add_arc(n + v, sink, lower(v), hi.get(v) as i64)?;
    }
    Ok(net)
}

/// Reads edge weights back out of a solved network: the numerator of edge
/// `uv` is the flow on `u_L -> v_R` plus the flow on `v_L -> u_R`.
fn extract_indicator(graph: &Graph, flows: &[i64]) -> IndicatorAssignment {
    let n = graph.n();
    let entries = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| IndicatorEntry {
            u,
            v,
            numerator: (flows[n + 2 * i] + flows[n + 2 * i + 1]) as u8,
        })
        .collect();
    IndicatorAssignment { entries }
}

/// Whether exact demands `q` are feasible, without producing a witness.
pub(crate) fn q_saturates(graph: &Graph, q: &DegreeFunc) -> Result<bool> {
    let net = build_symmetric_network(graph, q)?;
    Ok(net.max_flow()?.value as u64 == q.total())
}

/// Decides feasibility of exact per-vertex demands `q` and returns a
/// half-integral witness, or the minimizing deficiency certificate (with
/// `lo = hi = q`) when none exists.
pub fn fractional_q_feasible(
    graph: &Graph,
    q: &DegreeFunc,
    cutoffs: Cutoffs,
) -> Result<FactorOutcome> {
    let net = build_symmetric_network(graph, q)?;
    let result = net.max_flow()?;
    if result.value as u64 == q.total() {
        let indicator = extract_indicator(graph, &result.flows);
        debug_assert_eq!(indicator.validate_exact(graph, q), Ok(()));
        Ok(FactorOutcome::Feasible(indicator))
    } else {
        let certificate = anstee_deficiency(graph, q, q, cutoffs)?;
        debug_assert!(certificate.deficiency < 0);
        Ok(FactorOutcome::Infeasible(certificate))
    }
}

/// Decides feasibility of range demands `[lo, hi]` via a lower-bounded
/// circulation, returning a half-integral witness or the minimizing
/// deficiency certificate.
pub fn fractional_gf_feasible(
    graph: &Graph,
    lo: &DegreeFunc,
    hi: &DegreeFunc,
    cutoffs: Cutoffs,
) -> Result<FactorOutcome> {
    if lo.len() == hi.len() && !lo.le(hi) {
        return Err(Error::domain("lower prescription exceeds upper somewhere"));
    }
    let net = build_network(graph, Some(lo), hi)?;
    match net.feasible_circulation() {
        Some(result) => {
            let indicator = extract_indicator(graph, &result.flows);
            debug_assert_eq!(indicator.validate_range(graph, lo, hi), Ok(()));
            Ok(FactorOutcome::Feasible(indicator))
        }
        None => {
            let certificate = anstee_deficiency(graph, lo, hi, cutoffs)?;
            debug_assert!(certificate.deficiency < 0);
            Ok(FactorOutcome::Infeasible(certificate))
        }
    }
}

/// Exhaustively minimizes `hi(S) - lo(T) + sum_{v in T} d_{G-S}(v)` over
/// all subsets `S`, where `T = { v outside S : d_{G-S}(v) < lo(v) }`.
///
/// The minimum is nonnegative exactly when `[lo, hi]` demands are
/// feasible. Ties go to smaller `|S|`, then to the smaller bitmask.
pub fn anstee_deficiency(
    graph: &Graph,
    lo: &DegreeFunc,
    hi: &DegreeFunc,
    cutoffs: Cutoffs,
) -> Result<DeficiencyCertificate> {
    if lo.len() == hi.len() && !lo.le(hi) {
        return Err(Error::domain("lower prescription exceeds upper somewhere"));
    }
    deficiency::minimize(graph, hi, lo, cutoffs)
}
