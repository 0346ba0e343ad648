//! Canonical JSON reports, one shape per subcommand.
//!
//! Serialization order is the struct declaration order and all collections
//! are canonically sorted upstream, so reruns are byte-identical.

use crate::instance::Instance;
use crate::Failure;
use drinrel_core::newton::{masser_divisor, slope_divisor, slope_table};
use drinrel_core::parse::{parse_ratfunc, parse_t_poly};
use drinrel_core::places::{div_of_vector, height, Divisor};
use drinrel_core::poly::Poly;
use drinrel_core::polymat::vec_degree;
use drinrel_core::solver::{
    is_independent, oracle_relations, recover_g, relation_basis, verify_relation,
};
use serde::Serialize;

#[derive(Serialize)]
struct PlaceCoeff {
    place: String,
    coeff: i64,
}

fn divisor_json(d: &Divisor) -> Vec<PlaceCoeff> {
    d.entries()
        .map(|(v, c)| PlaceCoeff { place: v.to_string(), coeff: c })
        .collect()
}

fn relations_json(vectors: &[Vec<Poly>]) -> Vec<Vec<String>> {
    vectors
        .iter()
        .map(|v| v.iter().map(Poly::to_string).collect())
        .collect()
}

fn render<T: Serialize>(report: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(report)
        .map_err(|e| Failure::Internal(format!("report serialization failed: {e}")))
}

#[derive(Serialize)]
struct SlopeRow {
    place: String,
    ord_kappa: Vec<Option<i64>>,
    ord_t_minus_theta: i64,
    slope: String,
    slope_ceil: i64,
    cv: i64,
}

#[derive(Serialize)]
struct BoundReport {
    command: &'static str,
    file: String,
    q: u64,
    rank: usize,
    phi: Vec<String>,
    points: Vec<String>,
    j_invariant: Option<String>,
    div_points: Vec<PlaceCoeff>,
    div_slope: Vec<PlaceCoeff>,
    bound_divisor: Vec<PlaceCoeff>,
    deg_bound_divisor: i64,
    height_points: i64,
    d: usize,
    ell: usize,
    degree_bound: usize,
    slope_table: Vec<SlopeRow>,
}

pub fn bound(inst: &Instance) -> Result<String, Failure> {
    let e = &inst.module;
    let d = masser_divisor(e, &inst.points)?;
    let dim = drinrel_core::riemann_roch::rr_dimension(&d) as usize;
    let table = slope_table(e, &inst.points)?
        .into_iter()
        .map(|row| SlopeRow {
            place: row.place.to_string(),
            ord_kappa: row.ord_kappa,
            ord_t_minus_theta: row.ord_t_minus_theta,
            slope: format!("{}/{}", row.slope.numer(), row.slope.denom()),
            slope_ceil: row.slope_ceil,
            cv: row.cv,
        })
        .collect();
    let report = BoundReport {
        command: "bound",
        file: inst.file.clone(),
        q: inst.field.q(),
        rank: e.rank(),
        phi: inst.phi_strings.clone(),
        points: inst.point_strings.clone(),
        j_invariant: e.j_invariant().ok().map(|j| j.to_string()),
        div_points: divisor_json(&div_of_vector(&inst.points)?),
        div_slope: divisor_json(&slope_divisor(e)?),
        bound_divisor: divisor_json(&d),
        deg_bound_divisor: d.degree(),
        height_points: height(&inst.points)?,
        d: dim,
        ell: inst.points.len(),
        degree_bound: dim + inst.points.len(),
        slope_table: table,
    };
    render(&report)
}

#[derive(Serialize)]
struct AuditJson {
    delta: usize,
    oracle_dim: usize,
    solver_slice_dim: usize,
    spans_agree: bool,
    saturation_stable: bool,
}

#[derive(Serialize)]
struct BasisReport {
    command: &'static str,
    file: String,
    d: usize,
    ell: usize,
    degree_bound: usize,
    nu: usize,
    basis: Vec<Vec<String>>,
    degrees: Vec<usize>,
    independent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<AuditJson>,
}

fn audit_json(inst: &Instance, audit: bool) -> Result<Option<AuditJson>, Failure> {
    if !audit {
        return Ok(None);
    }
    let cert = is_independent(&inst.module, &inst.points, true)?;
    Ok(cert.audit.map(|a| AuditJson {
        delta: a.delta,
        oracle_dim: a.oracle_dim,
        solver_slice_dim: a.solver_slice_dim,
        spans_agree: a.spans_agree,
        saturation_stable: a.saturation_stable,
    }))
}

pub fn basis(inst: &Instance, audit: bool) -> Result<String, Failure> {
    let rb = relation_basis(&inst.module, &inst.points)?;
    let report = BasisReport {
        command: "basis",
        file: inst.file.clone(),
        d: rb.d,
        ell: rb.ell,
        degree_bound: rb.bound,
        nu: rb.rank(),
        basis: relations_json(&rb.vectors),
        degrees: rb.degrees(),
        independent: rb.is_empty(),
        audit: audit_json(inst, audit)?,
    };
    render(&report)
}

#[derive(Serialize)]
struct IndependentReport {
    command: &'static str,
    file: String,
    independent: bool,
    d: usize,
    ell: usize,
    degree_bound: usize,
    nu: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<AuditJson>,
}

pub fn independent(inst: &Instance, audit: bool) -> Result<String, Failure> {
    let cert = is_independent(&inst.module, &inst.points, audit)?;
    let report = IndependentReport {
        command: "independent",
        file: inst.file.clone(),
        independent: cert.independent,
        d: cert.d,
        ell: cert.ell,
        degree_bound: cert.bound,
        nu: cert.nu,
        audit: cert.audit.map(|a| AuditJson {
            delta: a.delta,
            oracle_dim: a.oracle_dim,
            solver_slice_dim: a.solver_slice_dim,
            spans_agree: a.spans_agree,
            saturation_stable: a.saturation_stable,
        }),
    };
    render(&report)
}

#[derive(Serialize)]
struct OracleReport {
    command: &'static str,
    file: String,
    degree: usize,
    dimension: usize,
    relations: Vec<Vec<String>>,
}

pub fn oracle(inst: &Instance, deg: usize) -> Result<String, Failure> {
    let relations = oracle_relations(&inst.module, &inst.points, deg)?;
    let report = OracleReport {
        command: "oracle",
        file: inst.file.clone(),
        degree: deg,
        dimension: relations.len(),
        relations: relations_json(&relations),
    };
    render(&report)
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    file: String,
    relation: Vec<String>,
    max_degree: Option<usize>,
    is_relation: bool,
    witness: Option<String>,
}

pub fn verify(inst: &Instance, relation: &str) -> Result<String, Failure> {
    let parts: Vec<&str> = relation.split(',').collect();
    if parts.len() != inst.points.len() {
        return Err(Failure::Input(format!(
            "relation has {} entries but the instance has {} points",
            parts.len(),
            inst.points.len()
        )));
    }
    let a: Vec<Poly> = parts
        .iter()
        .map(|s| {
            parse_t_poly(&inst.field, s)
                .map_err(|e| Failure::Input(format!("relation entry {s:?}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    let holds = verify_relation(&inst.module, &inst.points, &a)?;
    let witness = if a.iter().all(Poly::is_zero) {
        Some("0".to_string())
    } else {
        let g = recover_g(&inst.module, &inst.points, &a)?;
        if g.is_some() != holds {
            return Err(Failure::Internal(
                "direct evaluation and witness recovery disagree".into(),
            ));
        }
        g.map(|g| g.to_string())
    };
    let report = VerifyReport {
        command: "verify",
        file: inst.file.clone(),
        relation: parts.iter().map(|s| s.trim().to_string()).collect(),
        max_degree: a.iter().filter_map(|p| p.degree()).max(),
        is_relation: holds,
        witness,
    };
    render(&report)
}

#[derive(Serialize)]
struct TwistReport {
    command: &'static str,
    file: String,
    u: String,
    div_u: Vec<PlaceCoeff>,
    bound_divisor: Vec<PlaceCoeff>,
    twisted_bound_divisor: Vec<PlaceCoeff>,
    deg_bound_divisor: i64,
    deg_twisted_bound_divisor: i64,
    twisted_phi: Vec<String>,
}

pub fn twist(inst: &Instance, u: &str) -> Result<String, Failure> {
    let unit = parse_ratfunc(&inst.field, u)
        .map_err(|e| Failure::Input(format!("twist unit {u:?}: {e}")))?;
    if unit.is_zero() {
        return Err(Failure::Input("twist unit must be nonzero".into()));
    }
    let (deg_d, deg_d2) =
        drinrel_core::solver::invariance_check(&inst.module, &inst.points, &unit)?;
    let d = masser_divisor(&inst.module, &inst.points)?;
    let twisted = inst.module.twist_by_unit(&unit)?;
    let moved: Vec<_> = inst.points.iter().map(|p| p.mul(&unit)).collect();
    let d2 = masser_divisor(&twisted, &moved)?;
    let report = TwistReport {
        command: "twist",
        file: inst.file.clone(),
        u: u.to_string(),
        div_u: divisor_json(&div_of_vector(std::slice::from_ref(&unit))?),
        bound_divisor: divisor_json(&d),
        twisted_bound_divisor: divisor_json(&d2),
        deg_bound_divisor: deg_d,
        deg_twisted_bound_divisor: deg_d2,
        twisted_phi: twisted.kappas().iter().map(|k| k.to_string()).collect(),
    };
    render(&report)
}

