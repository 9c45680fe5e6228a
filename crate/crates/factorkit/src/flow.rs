//! Integral maximum flow and lower-bounded circulation feasibility.
//!
//! The solver is a level-graph blocking-flow search over paired residual
//! arcs. Capacities are 64-bit integers, so every returned flow is integral,
//! and arcs are explored strictly in insertion order, which pins down which
//! of several maximum flows is returned.

use crate::error::{Error, Result};

/// Safety margin for aggregate capacity sums.
const CAP_LIMIT: i64 = i64::MAX / 4;

/// A directed arc with a flow range `[lower, capacity]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub lower: i64,
    pub capacity: i64,
}

/// A flow network over nodes `0..nodes` with designated source and sink.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    nodes: usize,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
    total_capacity: i64,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= nodes || sink >= nodes {
            return Err(Error::domain(format!(
                "source/sink ({source}, {sink}) outside 0..{nodes}"
            )));
        }
        if source == sink {
            return Err(Error::domain("source and sink must differ"));
        }
        Ok(FlowNetwork {
            nodes,
            arcs: Vec::new(),
            source,
            sink,
            total_capacity: 0,
        })
    }

    /// Appends an arc and returns its index. Bounds must satisfy
    /// `0 <= lower <= capacity`; aggregate capacity is kept far away from
    /// the 64-bit limit so no later summation can overflow.
    pub fn add_arc(
        &mut self,
        tail: usize,
        head: usize,
        lower: i64,
        capacity: i64,
    ) -> Result<usize> {
        if tail >= self.nodes || head >= self.nodes {
            return Err(Error::domain(format!(
                "arc ({tail}, {head}) has an endpoint outside 0..{}",
                self.nodes
            )));
        }
        if lower < 0 || capacity < 0 || lower > capacity {
            return Err(Error::domain(format!(
                "arc bounds [{lower}, {capacity}] are not 0 <= lower <= capacity"
            )));
        }
        self.total_capacity = self
            .total_capacity
            .checked_add(capacity)
            .filter(|&t| t <= CAP_LIMIT)
            .ok_or_else(|| Error::domain("aggregate capacity exceeds the 64-bit budget"))?;
        self.arcs.push(Arc {
            tail,
            head,
            lower,
            capacity,
        });
        Ok(self.arcs.len() - 1)
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Maximum flow from source to sink. All lower bounds must be zero.
    pub fn max_flow(&self) -> Result<FlowResult> {
        if self.arcs.iter().any(|a| a.lower != 0) {
            return Err(Error::domain(
                "max_flow requires all lower bounds to be zero",
            ));
        }
        let mut dinic = Dinic::new(self.nodes);
        let ids: Vec<usize> = self
            .arcs
            .iter()
            .map(|a| dinic.add_edge(a.tail, a.head, a.capacity))
            .collect();
        let value = dinic.run(self.source, self.sink);
        let flows = ids.iter().map(|&id| dinic.flow_on(id)).collect();
        Ok(FlowResult { value, flows })
    }

    /// A circulation respecting every arc's `[lower, capacity]` range once a
    /// return arc of effectively unbounded capacity is added from sink to
    /// source, or `None` when no such circulation exists.
    ///
    /// Uses the excess/deficit supernode transformation: each lower bound is
    /// pre-paid, the imbalance it leaves at the endpoints is routed from a
    /// super-source to a super-sink, and feasibility is exactly saturation
    /// of the super-source.
    pub fn feasible_circulation(&self) -> Option<FlowResult> {
        let super_source = self.nodes;
        let super_sink = self.nodes + 1;
        let mut dinic = Dinic::new(self.nodes + 2);

        let mut excess = vec![0i64; self.nodes];
        let ids: Vec<usize> = self
            .arcs
            .iter()
            .map(|a| {
                excess[a.head] += a.lower;
                excess[a.tail] -= a.lower;
                dinic.add_edge(a.tail, a.head, a.capacity - a.lower)
            })
            .collect();
        // return arc making source/sink ordinary conserving nodes
        let total_lower: i64 = self.arcs.iter().map(|a| a.lower).sum();
        dinic.add_edge(
            self.sink,
            self.source,
            self.total_capacity + total_lower + 1,
        );

        let mut need = 0i64;
        for (v, &e) in excess.iter().enumerate() {
            if e > 0 {
                dinic.add_edge(super_source, v, e);
                need += e;
            } else if e < 0 {
                dinic.add_edge(v, super_sink, -e);
            }
        }
        if dinic.run(super_source, super_sink) < need {
            return None;
        }
        let flows: Vec<i64> = self
            .arcs
            .iter()
            .zip(&ids)
            .map(|(a, &id)| a.lower + dinic.flow_on(id))
            .collect();
        let value = net_outflow(self, &flows, self.source);
        Some(FlowResult { value, flows })
    }
}

/// A flow assignment: one value per arc of the network it was computed on,
/// and the net amount leaving the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    pub value: i64,
    pub flows: Vec<i64>,
}

fn net_outflow(net: &FlowNetwork, flows: &[i64], v: usize) -> i64 {
    net.arcs
        .iter()
        .zip(flows)
        .map(|(a, &f)| {
            if a.tail == v {
                f
            } else if a.head == v {
                -f
            } else {
                0
            }
        })
        .sum()
}

/// Independent validity check for a flow result: per-arc bounds, flow
/// conservation at interior nodes, and `value` matching the source's net
/// outflow (mirrored at the sink).
pub fn validate(net: &FlowNetwork, result: &FlowResult) -> std::result::Result<(), String> {
    if result.flows.len() != net.arcs.len() {
        return Err(format!(
            "flow vector has {} entries for {} arcs",
            result.flows.len(),
            net.arcs.len()
        ));
    }
    for (i, (a, &f)) in net.arcs.iter().zip(&result.flows).enumerate() {
        if f < a.lower || f > a.capacity {
            return Err(format!(
                "arc {i}: flow {f} outside [{}, {}]",
                a.lower, a.capacity
            ));
        }
    }
    for v in 0..net.nodes {
        let balance = net_outflow(net, &result.flows, v);
        let expected = if v == net.source {
            result.value
        } else if v == net.sink {
            -result.value
        } else {
            0
        };
        if balance != expected {
            return Err(format!(
                "node {v}: net outflow {balance}, expected {expected}"
            ));
        }
    }
    Ok(())
}

const INF: i64 = i64::MAX / 2;

/// Blocking-flow solver over paired residual arcs (forward arc `2i`,
/// reverse arc `2i + 1`).
struct Dinic {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    residual: Vec<i64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            residual: Vec::new(),
            level: vec![-1; n],
            iter: vec![0; n],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.to.len();
        self.adj[u].push(id);
        self.to.push(v);
        self.residual.push(cap);
        self.adj[v].push(id + 1);
        self.to.push(u);
        self.residual.push(0);
        id
    }

    /// Flow pushed through the forward arc `id`.
    fn flow_on(&self, id: usize) -> i64 {
        self.residual[id ^ 1]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let w = self.to[e];
                if self.residual[e] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, limit: i64) -> i64 {
        if v == t {
            return limit;
        }
        while self.iter[v] < self.adj[v].len() {
            let e = self.adj[v][self.iter[v]];
            let w = self.to[e];
            if self.residual[e] > 0 && self.level[v] < self.level[w] {
                let pushed = self.dfs(w, t, limit.min(self.residual[e]));
                if pushed > 0 {
                    self.residual[e] -= pushed;
                    self.residual[e ^ 1] += pushed;
                    return pushed;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    fn run(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.fill(0);
            loop {
                let pushed = self.dfs(s, t, INF);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn net(nodes: usize, s: usize, t: usize, arcs: &[(usize, usize, i64, i64)]) -> FlowNetwork {
        let mut n = FlowNetwork::new(nodes, s, t).unwrap();
        for &(tail, head, lo, cap) in arcs {
            n.add_arc(tail, head, lo, cap).unwrap();
        }
        n
    }

    /// Exhaustive min cut: minimum total capacity of arcs leaving a node set
    /// that contains the source but not the sink.
    fn enumerated_min_cut(net: &FlowNetwork) -> i64 {
        assert!(net.nodes() <= 20);
        let mut best = i64::MAX;
        for mask in 0u64..1 << net.nodes() {
            if mask >> net.source() & 1 == 0 || mask >> net.sink() & 1 == 1 {
                continue;
            }
            let cut: i64 = net
                .arcs()
                .iter()
                .filter(|a| mask >> a.tail & 1 == 1 && mask >> a.head & 1 == 0)
                .map(|a| a.capacity)
                .sum();
            best = best.min(cut);
        }
        best
    }

    #[test]
    fn max_flow_single_arc() {
        let n = net(2, 0, 1, &[(0, 1, 0, 5)]);
        let r = n.max_flow().unwrap();
        assert_eq!(r.value, 5);
        assert_eq!(r.flows, vec![5]);
        validate(&n, &r).unwrap();
    }

    #[test]
    fn max_flow_small_network() {
        // s=0, a=1, b=2, t=3; min cut enumerated by hand is 4
        let n = net(
            4,
            0,
            3,
            &[
                (0, 1, 0, 3),
                (0, 2, 0, 2),
                (1, 3, 0, 2),
                (2, 3, 0, 2),
                (1, 2, 0, 1),
            ],
        );
        let r = n.max_flow().unwrap();
        assert_eq!(r.value, 4);
        assert_eq!(r.value, enumerated_min_cut(&n));
        validate(&n, &r).unwrap();
    }

    #[test]
    fn max_flow_disconnected() {
        let n = net(3, 0, 2, &[(0, 1, 0, 7)]);
        assert_eq!(n.max_flow().unwrap().value, 0);
    }

    #[test]
    fn max_flow_rejects_lower_bounds() {
        let n = net(2, 0, 1, &[(0, 1, 1, 5)]);
        assert!(matches!(n.max_flow(), Err(Error::Domain(_))));
    }

    #[test]
    fn construction_rejects_bad_bounds() {
        let mut n = FlowNetwork::new(2, 0, 1).unwrap();
        assert!(n.add_arc(0, 1, 3, 2).is_err());
        assert!(n.add_arc(0, 1, -1, 2).is_err());
        assert!(n.add_arc(0, 2, 0, 1).is_err());
        assert!(FlowNetwork::new(2, 1, 1).is_err());
        assert!(FlowNetwork::new(1, 0, 1).is_err());
    }

    #[test]
    fn circulation_picks_minimum_on_bounded_arc() {
        let n = net(2, 0, 1, &[(0, 1, 2, 5)]);
        let r = n.feasible_circulation().unwrap();
        assert_eq!(r.flows, vec![2]);
        assert_eq!(r.value, 2);
        validate(&n, &r).unwrap();
    }

    #[test]
    fn circulation_infeasible_conservation() {
        // 3 units forced into node 1, at most 2 can leave
        let n = net(3, 0, 2, &[(0, 1, 3, 3), (1, 2, 0, 2)]);
        assert!(n.feasible_circulation().is_none());
    }

    #[test]
    fn circulation_zero_lower_bounds_gives_zero_flow() {
        let n = net(
            4,
            0,
            3,
            &[(0, 1, 0, 3), (1, 3, 0, 2), (0, 2, 0, 1), (2, 3, 0, 4)],
        );
        let r = n.feasible_circulation().unwrap();
        assert_eq!(r.value, 0);
        assert!(r.flows.iter().all(|&f| f == 0));
    }

    #[test]
    fn deterministic_for_fixed_insertion_order() {
        let n = net(
            4,
            0,
            3,
            &[
                (0, 1, 0, 2),
                (0, 2, 0, 2),
                (1, 3, 0, 2),
                (2, 3, 0, 2),
                (1, 2, 0, 2),
            ],
        );
        assert_eq!(n.max_flow().unwrap(), n.max_flow().unwrap());
    }

    /// Strategy: small random network with capacities in 0..=10.
    fn arb_network() -> impl Strategy<Value = FlowNetwork> {
        (2usize..=8).prop_flat_map(|nodes| {
            proptest::collection::vec((0..nodes, 0..nodes, 0i64..=10), 0..=16).prop_map(
                move |arcs| {
                    let mut n = FlowNetwork::new(nodes, 0, nodes - 1).unwrap();
                    for (t, h, c) in arcs {
                        if t != h {
                            n.add_arc(t, h, 0, c).unwrap();
                        }
                    }
                    n
                },
            )
        })
    }

    proptest! {
        #[test]
        fn max_flow_matches_enumerated_min_cut(n in arb_network()) {
            let r = n.max_flow().unwrap();
            prop_assert_eq!(r.value, enumerated_min_cut(&n));
            prop_assert!(validate(&n, &r).is_ok());
        }

        #[test]
        fn circulation_results_validate(n in arb_network(), lows in proptest::collection::vec(0i64..=3, 0..=16)) {
            // impose lower bounds on a prefix of the arcs where they fit
            let mut with_lowers = FlowNetwork::new(n.nodes(), n.source(), n.sink()).unwrap();
            for (i, a) in n.arcs().iter().enumerate() {
                let lo = lows.get(i).copied().unwrap_or(0).min(a.capacity);
                with_lowers.add_arc(a.tail, a.head, lo, a.capacity).unwrap();
            }
            if let Some(r) = with_lowers.feasible_circulation() {
                prop_assert!(validate(&with_lowers, &r).is_ok());
            }
        }
    }
}
