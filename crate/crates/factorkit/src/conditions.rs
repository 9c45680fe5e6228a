//! Exact-arithmetic sufficient-condition predicates and the brute-force
//! integral all-factors check.
//!
//! Every rational threshold is compared by cross-multiplication in wide
//! integers; no floating point appears anywhere. That matters because the
//! sharpness families sit within distance one of the thresholds.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fractional::DegreeFunc;
use crate::graph::{Graph, VertexSet};
use crate::limits::Cutoffs;

/// One evaluated hypothesis: what was compared, the instantiated integer
/// comparison, and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub description: String,
    pub comparison: String,
    pub holds: bool,
}

impl Hypothesis {
    fn new(name: &str, description: &str, comparison: impl Into<String>, holds: bool) -> Self {
        Hypothesis {
            name: name.to_string(),
            description: description.to_string(),
            comparison: comparison.into(),
            holds,
        }
    }
}

/// A bundle of hypotheses; the overall verdict is their conjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub hypotheses: Vec<Hypothesis>,
    pub holds: bool,
}

impl ConditionReport {
    pub fn from_hypotheses(hypotheses: Vec<Hypothesis>) -> Self {
        let holds = hypotheses.iter().all(|h| h.holds);
        ConditionReport { hypotheses, holds }
    }
}

/// Hypotheses of the minimum-degree / neighborhood-union sufficient
/// condition for all fractional `[a, b]`-factors, `1 <= a < b`:
///
/// * order: `a*n >= 2*(a+b)*(a+b-1)`
/// * minimum degree: `4*a*delta >= (a+b-1)^2 + 4*b`
/// * neighborhood union: `(a+b)*NC >= b*n` over nonadjacent pairs,
///   vacuously true when no nonadjacent pair exists.
pub fn neighborhood_union_hypotheses(graph: &Graph, a: u32, b: u32) -> Result<ConditionReport> {
    if a < 1 {
        return Err(Error::domain("a must be a positive integer"));
    }
    if a >= b {
        return Err(Error::domain(format!(
            "requires a < b, got a = {a}, b = {b}"
        )));
    }
    let (a, b) = (a as i128, b as i128);
    let n = graph.n() as i128;
    let delta = graph.min_degree() as i128;

    let order_lhs = a * n;
    let order_rhs = 2 * (a + b) * (a + b - 1);
    let degree_lhs = 4 * a * delta;
    let degree_rhs = (a + b - 1) * (a + b - 1) + 4 * b;
    let nc = graph.min_nonadjacent_neighborhood_union();

    let mut hypotheses = vec![
        Hypothesis::new(
            "order",
            "a*n >= 2*(a+b)*(a+b-1)",
            format!("{order_lhs} >= {order_rhs}"),
            order_lhs >= order_rhs,
        ),
        Hypothesis::new(
            "min-degree",
            "4*a*min_degree >= (a+b-1)^2 + 4*b",
            format!("{degree_lhs} >= {degree_rhs}"),
            degree_lhs >= degree_rhs,
        ),
    ];
    hypotheses.push(match nc {
        None => Hypothesis::new(
            "neighborhood-union",
            "(a+b)*min_nonadjacent_neighborhood_union >= b*n",
            "vacuous: no nonadjacent pair",
            true,
        ),
        Some(nc) => {
            let lhs = (a + b) * nc as i128;
            let rhs = b * n;
            Hypothesis::new(
                "neighborhood-union",
                "(a+b)*min_nonadjacent_neighborhood_union >= b*n",
                format!("{lhs} >= {rhs}"),
                lhs >= rhs,
            )
        }
    });
    Ok(ConditionReport::from_hypotheses(hypotheses))
}

/// Hypotheses of the minimum-degree condition for an `f`-factor with
/// `a <= f <= b`: connectivity, `a*n >= (a+b)^2`, even `f`-total, and
/// `(a+b)*delta > a*n - 2`. Predicate only; no factor is constructed.
pub fn kano_tokushige_hypotheses(
    graph: &Graph,
    a: u32,
    b: u32,
    f: &DegreeFunc,
) -> Result<ConditionReport> {
    if a < 1 || a > b {
        return Err(Error::domain(format!(
            "requires 1 <= a <= b, got a = {a}, b = {b}"
        )));
    }
    if f.len() != graph.n() {
        return Err(Error::domain(
            "degree function length differs from vertex count",
        ));
    }
    if let Some(v) = (0..graph.n()).find(|&v| f.get(v) < a || f.get(v) > b) {
        return Err(Error::domain(format!(
            "f({v}) = {} outside [{a}, {b}]",
            f.get(v)
        )));
    }
    let components = graph.components().len();
    let (a, b) = (a as i128, b as i128);
    let n = graph.n() as i128;
    let delta = graph.min_degree() as i128;
    let total = f.total() as i128;

    let hypotheses = vec![
        Hypothesis::new(
            "connected",
            "graph is connected",
            format!("{components} == 1"),
            components == 1,
        ),
        Hypothesis::new(
            "order",
            "a*n >= (a+b)^2",
            format!("{} >= {}", a * n, (a + b) * (a + b)),
            a * n >= (a + b) * (a + b),
        ),
        Hypothesis::new(
            "parity",
            "f(V) is even",
            format!("{total} % 2 == 0"),
            total % 2 == 0,
        ),
        Hypothesis::new(
            "min-degree",
            "(a+b)*min_degree > a*n - 2",
            format!("{} > {}", (a + b) * delta, a * n - 2),
            (a + b) * delta > a * n - 2,
        ),
    ];
    Ok(ConditionReport::from_hypotheses(hypotheses))
}

/// Outcome of the integral all-factors check: the minimizing disjoint pair
/// `(S, T)` and the threshold the minimum was held against.
#[derive(Clone, Debug)]
pub struct NiessenVerdict {
    pub holds: bool,
    /// Minimum over all disjoint pairs of
    /// `g(S) - f(T) + sum_{x in T} d_{G-S}(x) - q*(S, T)`.
    pub value: i64,
    /// `-1` when `g < f` somewhere, `0` when `g = f` everywhere.
    pub threshold: i64,
    pub s: VertexSet,
    pub t: VertexSet,
}

/// Tie-break key for the minimizing pair: value, then size and mask of
/// `S`, then size and mask of `T`.
type PairKey = (i64, u32, u64, u32, u64);

/// Brute-force check of the integral all-factors characterization over
/// every disjoint pair `(S, T)`.
///
/// `q*(S, T)` counts components `C` of `G - (S + T)` containing a vertex
/// with `g < f`, or with `e(C, T) + f(C)` odd. The property holds when the
/// displayed value stays at or above `-1` (`g < f` somewhere) or `0`
/// (`g = f` everywhere). Ties on the minimizing pair break to smaller
/// `|S|`, then smaller `S` bitmask, then the same on `T`.
pub fn niessen_all_integral(
    graph: &Graph,
    g: &DegreeFunc,
    f: &DegreeFunc,
    cutoffs: Cutoffs,
) -> Result<NiessenVerdict> {
    let n = graph.n();
    if g.len() != n || f.len() != n {
        return Err(Error::domain(
            "degree function length differs from vertex count",
        ));
    }
    if !g.le(f) {
        return Err(Error::domain("lower prescription exceeds upper somewhere"));
    }
    let limit = cutoffs.labeling_max_n.min(32);
    if n as u32 > limit {
        return Err(Error::resource(format!(
            "pair enumeration over n = {n} vertices exceeds the cutoff {limit}"
        )));
    }

    let threshold = if g.values() == f.values() { 0 } else { -1 };
    let adj = graph.adjacency_masks();
    let g_i: Vec<i64> = g.values().iter().map(|&x| x as i64).collect();
    let f_i: Vec<i64> = f.values().iter().map(|&x| x as i64).collect();
    let strict_mask: u64 = (0..n)
        .filter(|&v| g.get(v) < f.get(v))
        .map(|v| 1 << v)
        .sum();

    let sum_over = |values: &[i64], mut mask: u64| -> i64 {
        let mut total = 0;
        while mask != 0 {
            total += values[mask.trailing_zeros() as usize];
            mask &= mask - 1;
        }
        total
    };

    let best = (0u64..1 << n)
        .into_par_iter()
        .map(|s| {
            let full = (1u64 << n) - 1;
            let comp = !s & full;
            let g_s = sum_over(&g_i, s);
            let mut local: Option<(PairKey, i64)> = None;
            let mut t = comp;
            loop {
                // value of the pair (s, t)
                let f_t = sum_over(&f_i, t);
                let mut sum_d = 0i64;
                let mut tm = t;
                while tm != 0 {
                    let v = tm.trailing_zeros() as usize;
                    sum_d += (adj[v] & !s).count_ones() as i64;
                    tm &= tm - 1;
                }
                let mut q_star = 0i64;
                let mut rest = comp & !t;
                while rest != 0 {
                    // flood one component of the leftover graph
                    let mut members = 0u64;
                    let mut frontier = rest & rest.wrapping_neg();
                    while frontier != 0 {
                        members |= frontier;
                        let mut expand = 0u64;
                        let mut fm = frontier;
                        while fm != 0 {
                            let v = fm.trailing_zeros() as usize;
                            expand |= adj[v];
                            fm &= fm - 1;
                        }
                        frontier = expand & rest & !members;
                    }
                    rest &= !members;
                    let counted = members & strict_mask != 0 || {
                        let mut crossing = 0i64;
                        let mut cm = members;
                        while cm != 0 {
                            let v = cm.trailing_zeros() as usize;
                            crossing += (adj[v] & t).count_ones() as i64;
                            cm &= cm - 1;
                        }
                        (crossing + sum_over(&f_i, members)) % 2 == 1
                    };
                    if counted {
                        q_star += 1;
                    }
                }
                let value = g_s - f_t + sum_d - q_star;
                let key = (value, s.count_ones(), s, t.count_ones(), t);
                if local.as_ref().is_none_or(|(k, _)| key < *k) {
                    local = Some((key, value));
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & comp;
            }
            local.expect("every subset yields at least the empty pair")
        })
        .min_by_key(|(key, _)| *key)
        .expect("at least the empty set");

    let ((_, _, s_mask, _, t_mask), value) = best;
    Ok(NiessenVerdict {
        holds: value >= threshold,
        value,
        threshold,
        s: VertexSet::from_mask(n, s_mask),
        t: VertexSet::from_mask(n, t_mask),
    })
}
