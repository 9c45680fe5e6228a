//! The "all fractional factors" property: does the graph admit a
//! fractional q-factor for *every* integer prescription `q` with
//! `g <= q <= f` pointwise?
//!
//! The production check minimizes the worst-set deficiency
//! `g(S) - f(T) + sum_{x in T} d_{G-S}(x)` over all subsets `S`, with
//! `T = { v outside S : d_{G-S}(v) < f(v) }`; the property holds exactly
//! when the minimum is nonnegative. Two definitional oracles — checking
//! every prescription in the box, and checking every corner prescription —
//! exist to cross-validate that characterization on small instances. They
//! are test instruments, not production paths.

use rayon::prelude::*;

use crate::conditions;
use crate::deficiency;
use crate::error::{Error, Result};
use crate::fractional::{self, DeficiencyCertificate, DegreeFunc, FactorOutcome};
use crate::graph::{Graph, VertexSet};
use crate::limits::Cutoffs;

/// Which engine produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    WorstSet,
    BoxOracle,
    CornerOracle,
    /// The sufficient-condition predicate fired; no enumeration ran.
    FastPath,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::WorstSet => "worst-set",
            Engine::BoxOracle => "box-oracle",
            Engine::CornerOracle => "corner-oracle",
            Engine::FastPath => "fast-path",
        }
    }
}

/// Verdict for the all-fractional-factors property.
///
/// When a full worst-set minimization ran, `certificate` carries the
/// attained minimum even if the property holds, and `holds` is exactly
/// "certificate deficiency >= 0". Oracle verdicts attach the first failing
/// prescription (and for the corner oracle, the corner set) instead.
#[derive(Clone, Debug)]
pub struct AllFactorsVerdict {
    pub holds: bool,
    pub engine: Engine,
    pub certificate: Option<DeficiencyCertificate>,
    pub failing_prescription: Option<DegreeFunc>,
    pub failing_corner: Option<VertexSet>,
}

fn validate_box(graph: &Graph, lo: &DegreeFunc, hi: &DegreeFunc) -> Result<()> {
    if lo.len() != graph.n() || hi.len() != graph.n() {
        return Err(Error::domain(
            "degree function length differs from vertex count",
        ));
    }
    if !lo.le(hi) {
        return Err(Error::domain("lower prescription exceeds upper somewhere"));
    }
    Ok(())
}

/// Exhaustively minimizes the worst-set deficiency
/// `lo(S) - hi(T) + sum_{x in T} d_{G-S}(x)` with
/// `T = { v outside S : d_{G-S}(v) < hi(v) }` (strict inequality).
///
/// Ties break to smaller `|S|`, then to the smaller membership bitmask.
pub fn worst_set_deficiency(
    graph: &Graph,
    lo: &DegreeFunc,
    hi: &DegreeFunc,
    cutoffs: Cutoffs,
) -> Result<DeficiencyCertificate> {
    validate_box(graph, lo, hi)?;
    deficiency::minimize(graph, lo, hi, cutoffs)
}

/// Evaluates the worst-set deficiency of one given subset `S`.
pub fn deficiency_at(
    graph: &Graph,
    lo: &DegreeFunc,
    hi: &DegreeFunc,
    s: &VertexSet,
) -> Result<DeficiencyCertificate> {
    validate_box(graph, lo, hi)?;
    deficiency::certificate_at(graph, lo, hi, s)
}

/// Decides the property by worst-set minimization, with no shortcut.
pub fn worst_set_verdict(
    graph: &Graph,
    lo: &DegreeFunc,
    hi: &DegreeFunc,
    cutoffs: Cutoffs,
) -> Result<AllFactorsVerdict> {
    let certificate = worst_set_deficiency(graph, lo, hi, cutoffs)?;
    Ok(AllFactorsVerdict {
        holds: certificate.deficiency >= 0,
        engine: Engine::WorstSet,
        certificate: Some(certificate),
        failing_prescription: None,
        failing_corner: None,
    })
}

/// Decides the property. For constant prescriptions `a < b` the
/// sufficient-condition predicate is tried first and, when it holds,
/// answers without enumeration; otherwise this is a worst-set
/// minimization.
pub fn has_all_fractional(
    graph: &Graph,
    lo: &DegreeFunc,
    hi: &DegreeFunc,
    cutoffs: Cutoffs,
) -> Result<AllFactorsVerdict> {
    validate_box(graph, lo, hi)?;
    if let (Some(a), Some(b)) = (lo.constant_value(), hi.constant_value()) {
        if a >= 1 && a < b && conditions::neighborhood_union_hypotheses(graph, a, b)?.holds {
            return Ok(AllFactorsVerdict {
                holds: true,
                engine: Engine::FastPath,
                certificate: None,
                failing_prescription: None,
                failing_corner: None,
            });
        }
    }
    worst_set_verdict(graph, lo, hi, cutoffs)
}

/// Constant-prescription convenience: all fractional `[a, b]`-factors.
///
/// Requires `1 <= a <= b`. The degenerate case `a = b` is a single exact
/// feasibility check, delegated to the box oracle (whose box then has one
/// prescription).
pub fn has_all_fractional_ab(
    graph: &Graph,
    a: u32,
    b: u32,
    cutoffs: Cutoffs,
) -> Result<AllFactorsVerdict> {
    if a < 1 {
        return Err(Error::domain("a must be a positive integer"));
    }
    if a > b {
        return Err(Error::domain(format!("a = {a} exceeds b = {b}")));
    }
    let lo = DegreeFunc::constant(graph.n(), a);
    let hi = DegreeFunc::constant(graph.n(), b);
    if a == b {
        box_oracle(graph, &lo, &hi, cutoffs)
    } else {
        has_all_fractional(graph, &lo, &hi, cutoffs)
    }
}

/// Mixed-radix decode of prescription index `idx` (vertex 0 is the most
/// significant digit, so ascending indices are ascending lexicographic
/// order).
fn decode_prescription(lo: &DegreeFunc, widths: &[u64], mut idx: u64) -> DegreeFunc {
    let mut values: Vec<u32> = lo.values().to_vec();
    for v in (0..values.len()).rev() {
        let w = widths[v];
        values[v] += (idx % w) as u32;
        idx /= w;
    }
    debug_assert_eq!(idx, 0);
    DegreeFunc::new(values)
}

/// Definitional oracle: checks a fractional q-factor for every integer
/// prescription in the box, in lexicographic order. On failure reports the
/// first failing prescription and its certificate.
pub fn box_oracle(
    graph: &Graph,
    lo: &DegreeFunc,
    hi: &DegreeFunc,
    cutoffs: Cutoffs,
) -> Result<AllFactorsVerdict> {
    validate_box(graph, lo, hi)?;
    let widths: Vec<u64> = lo
        .values()
        .iter()
        .zip(hi.values())
        .map(|(&l, &h)| (h - l + 1) as u64)
        .collect();
    let count = widths
        .iter()
        .try_fold(1u64, |acc, &w| {
            acc.checked_mul(w)
                .filter(|&c| c <= cutoffs.box_max_prescriptions)
        })
        .ok_or_else(|| {
            Error::resource(format!(
                "prescription box exceeds the cutoff of {} prescriptions",
                cutoffs.box_max_prescriptions
            ))
        })?;

    let first_failing = (0..count)
        .into_par_iter()
        .filter(|&idx| {
            let q = decode_prescription(lo, &widths, idx);
            !fractional::q_saturates(graph, &q).unwrap_or(false)
        })
        .min();

    match first_failing {
        None => Ok(AllFactorsVerdict {
            holds: true,
            engine: Engine::BoxOracle,
            certificate: None,
            failing_prescription: None,
            failing_corner: None,
        }),
        Some(idx) => {
            let q = decode_prescription(lo, &widths, idx);
            let outcome = fractional::fractional_q_feasible(graph, &q, cutoffs)?;
            let certificate = match outcome {
                FactorOutcome::Infeasible(cert) => cert,
                FactorOutcome::Feasible(_) => {
                    unreachable!("prescription failed saturation but produced a witness")
                }
            };
            Ok(AllFactorsVerdict {
                holds: false,
                engine: Engine::BoxOracle,
                certificate: Some(certificate),
                failing_prescription: Some(q),
                failing_corner: None,
            })
        }
    }
}

/// Definitional oracle from the corner prescriptions: for each subset `S`
/// the prescription taking `lo` on `S` and `hi` elsewhere is checked
/// exactly. Corners agreeing on every vertex are deduplicated by
/// enumerating only over vertices with `lo < hi`.
pub fn corner_oracle(
    graph: &Graph,
    lo: &DegreeFunc,
    hi: &DegreeFunc,
    cutoffs: Cutoffs,
) -> Result<AllFactorsVerdict> {
    validate_box(graph, lo, hi)?;
    let n = graph.n();
    let limit = cutoffs.subset_max_n.min(62);
    if n as u32 > limit {
        return Err(Error::resource(format!(
            "corner enumeration over n = {n} vertices exceeds the cutoff {limit}"
        )));
    }
    let free: Vec<usize> = (0..n).filter(|&v| lo.get(v) < hi.get(v)).collect();

    let corner = |mask: u64| -> DegreeFunc {
        let mut values: Vec<u32> = hi.values().to_vec();
        for (bit, &v) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                values[v] = lo.get(v);
            }
        }
        DegreeFunc::new(values)
    };

    let first_failing = (0u64..1 << free.len())
        .into_par_iter()
        .filter(|&mask| !fractional::q_saturates(graph, &corner(mask)).unwrap_or(false))
        .min();

    match first_failing {
        None => Ok(AllFactorsVerdict {
            holds: true,
            engine: Engine::CornerOracle,
            certificate: None,
            failing_prescription: None,
            failing_corner: None,
        }),
        Some(mask) => {
            let q = corner(mask);
            let outcome = fractional::fractional_q_feasible(graph, &q, cutoffs)?;
            let certificate = match outcome {
                FactorOutcome::Infeasible(cert) => cert,
                FactorOutcome::Feasible(_) => {
                    unreachable!("corner failed saturation but produced a witness")
                }
            };
            let mut s = VertexSet::empty(n);
            for (bit, &v) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    s.insert(v);
                }
            }
            Ok(AllFactorsVerdict {
                holds: false,
                engine: Engine::CornerOracle,
                certificate: Some(certificate),
                failing_prescription: Some(q),
                failing_corner: Some(s),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::arb_graph;
    use crate::graph::{cycle, path};
    use proptest::prelude::*;

    fn defaults() -> Cutoffs {
        Cutoffs::default()
    }

    fn consts(n: usize, a: u32, b: u32) -> (DegreeFunc, DegreeFunc) {
        (DegreeFunc::constant(n, a), DegreeFunc::constant(n, b))
    }

    #[test]
    fn worst_set_path_certificate() {
        // deleting the middle vertex isolates both endpoints: 1 - 4 + 0
        let g = path(3);
        let (lo, hi) = consts(3, 1, 2);
        let cert = worst_set_deficiency(&g, &lo, &hi, defaults()).unwrap();
        assert_eq!(cert.deficiency, -3);
        assert_eq!(cert.s.to_vec(), vec![1]);
        assert_eq!(cert.t.to_vec(), vec![0, 2]);
        let slow = crate::deficiency::tests::naive_minimize(&g, &lo, &hi);
        assert_eq!(slow.deficiency, -3);
        assert_eq!(slow.s.to_vec(), vec![1]);
    }

    #[test]
    fn worst_set_k4_is_tight() {
        let g = Graph::complete(4);
        let (lo, hi) = consts(4, 1, 2);
        let cert = worst_set_deficiency(&g, &lo, &hi, defaults()).unwrap();
        assert_eq!(cert.deficiency, 0);
        // value 0 is already attained by the empty set, which wins ties
        assert!(cert.s.is_empty());
        // a two-element set attains 2 - 4 + 2 = 0 as well
        let s = VertexSet::from_vertices(4, [0, 1]);
        assert_eq!(deficiency_at(&g, &lo, &hi, &s).unwrap().deficiency, 0);
    }

    #[test]
    fn worst_set_join_witness() {
        // K2 joined with two isolated vertices: deleting the K2 leaves
        // both independents stranded, 2 - 4 + 0
        let g = Graph::join(&Graph::complete(2), &Graph::edgeless(2));
        let (lo, hi) = consts(4, 1, 2);
        let cert = worst_set_deficiency(&g, &lo, &hi, defaults()).unwrap();
        assert_eq!(cert.deficiency, -2);
        assert_eq!(cert.s.to_vec(), vec![0, 1]);
        assert_eq!(cert.t.to_vec(), vec![2, 3]);
    }

    #[test]
    fn has_all_fractional_examples() {
        let k4 = Graph::complete(4);
        let (lo, hi) = consts(4, 1, 2);
        let verdict = has_all_fractional(&k4, &lo, &hi, defaults()).unwrap();
        assert!(verdict.holds);

        let g = path(3);
        let (lo, hi) = consts(3, 1, 2);
        let verdict = has_all_fractional(&g, &lo, &hi, defaults()).unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.certificate.unwrap().s.to_vec(), vec![1]);
    }

    #[test]
    fn fast_path_fires_on_dense_complete_graph() {
        let g = Graph::complete(13);
        let (lo, hi) = consts(13, 1, 2);
        let fast = has_all_fractional(&g, &lo, &hi, defaults()).unwrap();
        assert!(fast.holds);
        assert_eq!(fast.engine, Engine::FastPath);
        // enumeration confirms the shortcut
        let slow = worst_set_verdict(&g, &lo, &hi, defaults()).unwrap();
        assert!(slow.holds);
        assert_eq!(slow.engine, Engine::WorstSet);
    }

    #[test]
    fn ab_examples() {
        let c4 = cycle(4);
        let verdict = has_all_fractional_ab(&c4, 1, 2, defaults()).unwrap();
        assert!(!verdict.holds);
        let cert = verdict.certificate.unwrap();
        assert_eq!(cert.deficiency, -2);
        assert_eq!(cert.s.to_vec(), vec![0, 2]);

        assert!(
            has_all_fractional_ab(&Graph::complete(4), 1, 2, defaults())
                .unwrap()
                .holds
        );

        assert!(has_all_fractional_ab(&c4, 2, 1, defaults()).is_err());
        assert!(has_all_fractional_ab(&c4, 0, 2, defaults()).is_err());
    }

    #[test]
    fn ab_degenerate_equals_exact_feasibility() {
        for g in [cycle(4), cycle(5), path(4), Graph::complete(5)] {
            let verdict = has_all_fractional_ab(&g, 1, 1, defaults()).unwrap();
            let q = DegreeFunc::constant(g.n(), 1);
            let direct = fractional::fractional_q_feasible(&g, &q, defaults()).unwrap();
            assert_eq!(verdict.holds, direct.is_feasible());
        }
    }

    #[test]
    fn box_oracle_examples() {
        let k4 = Graph::complete(4);
        let (lo, hi) = consts(4, 1, 2);
        assert!(box_oracle(&k4, &lo, &hi, defaults()).unwrap().holds);

        let g = path(3);
        let (lo, hi) = consts(3, 1, 2);
        let verdict = box_oracle(&g, &lo, &hi, defaults()).unwrap();
        assert!(!verdict.holds);
        // the middle vertex cannot carry both unit endpoints: the very
        // first prescription in lexicographic order already fails
        assert_eq!(verdict.failing_prescription.unwrap().values(), &[1, 1, 1]);

        // lo = hi: single prescription, same verdict as the direct check
        let q = DegreeFunc::constant(3, 1);
        let verdict = box_oracle(&g, &q, &q, defaults()).unwrap();
        assert!(!verdict.holds);
        assert!(!fractional::fractional_q_feasible(&g, &q, defaults())
            .unwrap()
            .is_feasible());
    }

    #[test]
    fn box_oracle_cutoff() {
        let g = Graph::edgeless(8);
        let lo = DegreeFunc::constant(8, 0);
        let hi = DegreeFunc::constant(8, 9);
        let mut cutoffs = defaults();
        cutoffs.box_max_prescriptions = 100;
        assert!(matches!(
            box_oracle(&g, &lo, &hi, cutoffs),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn corner_oracle_examples() {
        let k4 = Graph::complete(4);
        let (lo, hi) = consts(4, 1, 2);
        assert!(corner_oracle(&k4, &lo, &hi, defaults()).unwrap().holds);

        let g = Graph::join(&Graph::complete(2), &Graph::edgeless(2));
        let (lo, hi) = consts(4, 1, 2);
        let verdict = corner_oracle(&g, &lo, &hi, defaults()).unwrap();
        assert!(!verdict.holds);
        let corner = verdict.failing_corner.unwrap();
        let q = verdict.failing_prescription.unwrap();
        // the reported corner really is infeasible
        assert!(!fractional::q_saturates(&g, &q).unwrap());
        for v in 0..4 {
            let expected = if corner.contains(v) {
                lo.get(v)
            } else {
                hi.get(v)
            };
            assert_eq!(q.get(v), expected);
        }
        // so is the full join side, the canonical worst set
        let mut values = vec![2u32; 4];
        values[0] = 1;
        values[1] = 1;
        assert!(!fractional::q_saturates(&g, &DegreeFunc::new(values)).unwrap());

        // lo = hi: exactly one corner
        let q = DegreeFunc::constant(4, 2);
        let verdict = corner_oracle(&g, &q, &q, defaults()).unwrap();
        assert_eq!(verdict.holds, fractional::q_saturates(&g, &q).unwrap());
    }

    /// Instance family for the equivalence properties: demands stay at or
    /// below the vertex degree and spread at most 2.
    fn arb_bounded_instance(
        max_n: usize,
    ) -> impl Strategy<Value = (Graph, DegreeFunc, DegreeFunc)> {
        arb_graph(max_n).prop_flat_map(|g| {
            let n = g.n();
            (
                Just(g),
                proptest::collection::vec(0u32..=4, n),
                proptest::collection::vec(0u32..=2, n),
            )
                .prop_map(|(g, lo_raw, extra)| {
                    let lo: Vec<u32> = lo_raw
                        .iter()
                        .enumerate()
                        .map(|(v, &x)| x.min(g.degree(v) as u32))
                        .collect();
                    let hi: Vec<u32> = lo
                        .iter()
                        .zip(&extra)
                        .enumerate()
                        .map(|(v, (&l, &e))| (l + e).min(g.degree(v) as u32).max(l))
                        .collect();
                    (g, DegreeFunc::new(lo), DegreeFunc::new(hi))
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// The worst-set characterization agrees with both definitional
        /// oracles.
        #[test]
        fn three_way_equivalence((g, lo, hi) in arb_bounded_instance(6)) {
            let worst = worst_set_deficiency(&g, &lo, &hi, defaults()).unwrap();
            let by_box = box_oracle(&g, &lo, &hi, defaults()).unwrap();
            let by_corner = corner_oracle(&g, &lo, &hi, defaults()).unwrap();
            prop_assert_eq!(worst.deficiency >= 0, by_box.holds);
            prop_assert_eq!(by_box.holds, by_corner.holds);
        }

        /// Adding edges never destroys the property.
        #[test]
        fn monotone_under_edge_addition((g, lo, hi) in arb_bounded_instance(6)) {
            let mut current = g;
            let mut held = has_all_fractional(&current, &lo, &hi, defaults()).unwrap().holds;
            let n = current.n();
            for u in 0..n {
                for v in u + 1..n {
                    if !current.has_edge(u, v) {
                        current = current.with_edge(u, v).unwrap();
                        let now = has_all_fractional(&current, &lo, &hi, defaults()).unwrap().holds;
                        prop_assert!(!(held && !now), "edge ({u}, {v}) flipped true -> false");
                        held = now;
                    }
                }
            }
        }

        /// Constant wrapper agrees with the general routine.
        #[test]
        fn ab_matches_general(g in arb_graph(6), a in 1u32..=2, extra in 0u32..=2) {
            let b = a + extra;
            let verdict = has_all_fractional_ab(&g, a, b, defaults()).unwrap();
            let lo = DegreeFunc::constant(g.n(), a);
            let hi = DegreeFunc::constant(g.n(), b);
            let general = worst_set_verdict(&g, &lo, &hi, defaults()).unwrap();
            prop_assert_eq!(verdict.holds, general.holds);
        }

        /// If the box oracle holds, the two extreme prescriptions are in
        /// particular feasible.
        #[test]
        fn box_implies_extremes((g, lo, hi) in arb_bounded_instance(5)) {
            if box_oracle(&g, &lo, &hi, defaults()).unwrap().holds {
                prop_assert!(fractional::q_saturates(&g, &lo).unwrap());
                prop_assert!(fractional::q_saturates(&g, &hi).unwrap());
            }
        }
    }
}
