//! Generators for the two families showing the sufficient-condition bounds
//! cannot be weakened, plus automated verification that each instance fails
//! the all-fractional-factors property exactly as claimed.
//!
//! Vertex layout is fixed so regression fixtures stay stable: the join
//! clique always takes the lowest ids, appended parts follow in order.

use crate::all_factors::{self, AllFactorsVerdict};
use crate::conditions::Hypothesis;
use crate::error::{Error, Result};
use crate::fractional::{DeficiencyCertificate, DegreeFunc};
use crate::graph::{Graph, VertexSet};
use crate::limits::Cutoffs;

/// Which sharpness construction, with its free parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SharpnessFamily {
    /// `K_{bm}` joined with `am + 1` isolated vertices: every hypothesis
    /// margin but the neighborhood-union bound, which it misses by less
    /// than one.
    Neighborhood { m: u32 },
    /// `K_m` joined with `K_r` and `K_{(a+b+1)/2}` side by side: the
    /// minimum degree sits just below its threshold while the
    /// neighborhood-union bound holds.
    MinDegree { r: u32 },
}

/// Verified measurements of one sharpness instance. Every entry of
/// `checks` holds by the time a report is returned; a failing clause
/// aborts with [`Error::Verification`] instead.
#[derive(Clone, Debug)]
pub struct SharpnessReport {
    pub construction: &'static str,
    pub a: u32,
    pub b: u32,
    /// Clique multiplier: the given `m` for the neighborhood family, the
    /// derived join-clique size for the min-degree family.
    pub m: u32,
    pub r: Option<u32>,
    pub n: usize,
    pub edge_count: usize,
    pub min_degree: usize,
    pub nc_min: Option<usize>,
    pub checks: Vec<Hypothesis>,
    /// The closed-form witness set, evaluated.
    pub witness: DeficiencyCertificate,
    pub verdict: AllFactorsVerdict,
}

fn require_ab(a: u32, b: u32) -> Result<()> {
    if a < 1 {
        return Err(Error::domain("a must be a positive integer"));
    }
    if a >= b {
        return Err(Error::domain(format!(
            "requires a < b, got a = {a}, b = {b}"
        )));
    }
    Ok(())
}

/// `K_{bm}` joined with `am + 1` isolated vertices; clique ids come first.
pub fn gen_neighborhood_sharp(a: u32, b: u32, m: u32) -> Result<Graph> {
    require_ab(a, b)?;
    if m < 1 {
        return Err(Error::domain("m must be a positive integer"));
    }
    let clique = b as usize * m as usize;
    let independents = a as usize * m as usize + 1;
    Ok(Graph::join(
        &Graph::complete(clique),
        &Graph::edgeless(independents),
    ))
}

/// Size of the join clique in the min-degree construction: the largest
/// integer strictly below `((a+b-1)^2 + 4b) / (4a) - (a+b-1)/2`, computed
/// exactly over integers.
pub fn mindegree_clique_size(a: u32, b: u32) -> Result<u32> {
    require_ab(a, b)?;
    if (a + b).is_multiple_of(2) {
        return Err(Error::domain("requires a + b odd"));
    }
    let (a, b) = (a as u128, b as u128);
    // bound = ((a+b-1)^2 + 4b - 2a(a+b-1)) / 4a; both factors of the
    // numerator are nonnegative since a < b
    let numerator = (a + b - 1) * (b - a - 1) + 4 * b;
    let m = (numerator - 1) / (4 * a);
    u32::try_from(m).map_err(|_| Error::domain("parameters too large"))
}

/// `K_m + (K_r \cup K_{(a+b+1)/2})` with `m` from
/// [`mindegree_clique_size`]; ids are the join clique, then `K_r`, then
/// the small clique.
pub fn gen_mindegree_sharp(a: u32, b: u32, r: u32) -> Result<Graph> {
    let m = mindegree_clique_size(a, b)?;
    if r < 1 {
        return Err(Error::domain("r must be a positive integer"));
    }
    let small = (a as usize + b as usize).div_ceil(2);
    let parts = Graph::disjoint_union(&Graph::complete(r as usize), &Graph::complete(small));
    Ok(Graph::join(&Graph::complete(m as usize), &parts))
}

fn push_check(
    checks: &mut Vec<Hypothesis>,
    name: &str,
    description: &str,
    comparison: String,
    holds: bool,
) -> Result<()> {
    checks.push(Hypothesis {
        name: name.to_string(),
        description: description.to_string(),
        comparison: comparison.clone(),
        holds,
    });
    if holds {
        Ok(())
    } else {
        Err(Error::Verification(format!("{name}: {comparison}")))
    }
}

/// Generates the requested instance and verifies the claimed inequalities
/// and the failing all-factors verdict, returning the full measurement
/// report. Any clause that does not hold aborts with a verification error
/// naming it.
pub fn verify_sharpness(
    a: u32,
    b: u32,
    family: SharpnessFamily,
    cutoffs: Cutoffs,
) -> Result<SharpnessReport> {
    match family {
        SharpnessFamily::Neighborhood { m } => verify_neighborhood(a, b, m, cutoffs),
        SharpnessFamily::MinDegree { r } => verify_mindegree(a, b, r, cutoffs),
    }
}

fn verify_neighborhood(a: u32, b: u32, m: u32, cutoffs: Cutoffs) -> Result<SharpnessReport> {
    let graph = gen_neighborhood_sharp(a, b, m)?;
    let clique = b as i64 * m as i64;
    let independents = a as i64 * m as i64 + 1;
    let n = graph.n() as i64;
    let ab = a as i64 + b as i64;
    let mut checks = Vec::new();

    push_check(
        &mut checks,
        "chain-lower",
        "(a+b)*bm < b*n",
        format!("{} < {}", ab * clique, b as i64 * n),
        ab * clique < b as i64 * n,
    )?;
    push_check(
        &mut checks,
        "chain-upper",
        "b*n < (a+b)*(bm+1)",
        format!("{} < {}", b as i64 * n, ab * (clique + 1)),
        b as i64 * n < ab * (clique + 1),
    )?;

    let lo = DegreeFunc::constant(graph.n(), a);
    let hi = DegreeFunc::constant(graph.n(), b);
    let witness_set = VertexSet::from_vertices(graph.n(), 0..clique as usize);
    let witness = all_factors::deficiency_at(&graph, &lo, &hi, &witness_set)?;
    let expected = a as i64 * clique - b as i64 * independents;
    push_check(
        &mut checks,
        "witness-deficiency",
        "deleting the clique leaves deficiency a*bm - b*(am+1) = -b",
        format!("{} == {}", witness.deficiency, expected),
        witness.deficiency == expected,
    )?;

    let verdict = all_factors::has_all_fractional_ab(&graph, a, b, cutoffs)?;
    push_check(
        &mut checks,
        "all-factors-fails",
        "the all-fractional-factors property fails",
        format!("holds == {}", verdict.holds),
        !verdict.holds,
    )?;
    let attained = verdict
        .certificate
        .as_ref()
        .expect("worst-set verdict carries the attained minimum")
        .deficiency;
    push_check(
        &mut checks,
        "certificate-bound",
        "attained minimum is at most -b",
        format!("{attained} <= {}", -(b as i64)),
        attained <= -(b as i64),
    )?;

    Ok(SharpnessReport {
        construction: "neighborhood",
        a,
        b,
        m,
        r: None,
        n: graph.n(),
        edge_count: graph.edge_count(),
        min_degree: graph.min_degree(),
        nc_min: graph.min_nonadjacent_neighborhood_union(),
        checks,
        witness,
        verdict,
    })
}

fn verify_mindegree(a: u32, b: u32, r: u32, cutoffs: Cutoffs) -> Result<SharpnessReport> {
    let m = mindegree_clique_size(a, b)?;
    let graph = gen_mindegree_sharp(a, b, r)?;
    let n = graph.n() as i64;
    let (ai, bi) = (a as i64, b as i64);
    let delta = graph.min_degree() as i64;
    let mut checks = Vec::new();

    push_check(
        &mut checks,
        "delta-formula",
        "min_degree == m + (a+b-1)/2",
        format!("{delta} == {}", m as i64 + (ai + bi - 1) / 2),
        delta == m as i64 + (ai + bi - 1) / 2,
    )?;
    push_check(
        &mut checks,
        "min-degree-fails",
        "4*a*min_degree < (a+b-1)^2 + 4*b",
        format!("{} < {}", 4 * ai * delta, (ai + bi - 1).pow(2) + 4 * bi),
        4 * ai * delta < (ai + bi - 1).pow(2) + 4 * bi,
    )?;

    let nc_min = graph.min_nonadjacent_neighborhood_union();
    let nc = nc_min.ok_or_else(|| {
        Error::Verification("neighborhood-union: no nonadjacent pair to measure".into())
    })? as i64;
    push_check(
        &mut checks,
        "neighborhood-union-holds",
        "(a+b)*min_nonadjacent_neighborhood_union >= b*n",
        format!("{} >= {}", (ai + bi) * nc, bi * n),
        (ai + bi) * nc >= bi * n,
    )?;

    let lo = DegreeFunc::constant(graph.n(), a);
    let hi = DegreeFunc::constant(graph.n(), b);
    let witness_set = VertexSet::from_vertices(graph.n(), 0..m as usize);
    let witness = all_factors::deficiency_at(&graph, &lo, &hi, &witness_set)?;
    // deleting the join clique strands the small clique:
    // a*m - (a+b+1)/2 * (b - (a+b-1)/2)
    let expected = ai * m as i64 - (ai + bi + 1) * (bi - ai + 1) / 4;
    push_check(
        &mut checks,
        "witness-deficiency",
        "deleting the join clique leaves deficiency a*m - (a+b+1)*(b-a+1)/4",
        format!("{} == {}", witness.deficiency, expected),
        witness.deficiency == expected,
    )?;
    push_check(
        &mut checks,
        "witness-negative",
        "the witness deficiency is negative",
        format!("{} < 0", witness.deficiency),
        witness.deficiency < 0,
    )?;

    let verdict = all_factors::has_all_fractional_ab(&graph, a, b, cutoffs)?;
    push_check(
        &mut checks,
        "all-factors-fails",
        "the all-fractional-factors property fails",
        format!("holds == {}", verdict.holds),
        !verdict.holds,
    )?;
    let attained = verdict
        .certificate
        .as_ref()
        .expect("worst-set verdict carries the attained minimum")
        .deficiency;
    push_check(
        &mut checks,
        "certificate-bound",
        "attained minimum is at most the witness value",
        format!("{attained} <= {}", witness.deficiency),
        attained <= witness.deficiency,
    )?;

    Ok(SharpnessReport {
        construction: "mindegree",
        a,
        b,
        m,
        r: Some(r),
        n: graph.n(),
        edge_count: graph.edge_count(),
        min_degree: graph.min_degree(),
        nc_min,
        checks,
        witness,
        verdict,
    })
}
