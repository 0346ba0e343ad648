//! The relation-solving pipeline.
//!
//! Given a Drinfeld module `E` over `k` and nonzero distinct points
//! `P_1, ..., P_l`, the module of linear relations is
//! `G = {(a_1, ..., a_l) in F_q[t]^l : sum_i phi_{a_i}(P_i) = 0}`.
//! Every relation corresponds to a solution `g in k[t]` of the Frobenius
//! difference equation
//!
//! ```text
//! (t - T) g + F = kappa_r g^(r) + ... + kappa_1 g^(1),   F = sum a_i P_i,
//! ```
//!
//! whose coefficients are confined to the Riemann-Roch space `L(D)` of the
//! bound divisor `D`. Expanding `g` over a basis of `L(D)` and matching
//! coordinates in a larger space `L(D~)` linearizes the equation into an
//! `F_q[t]`-matrix `B` of degree at most 1; the kernel of `B` projects
//! onto `G`, and a degree-minimal kernel basis stays within degree
//! `d + l`, where `d = dim L(D)`.
//!
//! A brute-force oracle ([`oracle_relations`]) solves the same problem by
//! direct linear algebra over `F_q` on the values `phi_{t^e}(P_i)`; it
//! shares nothing with the divisor route and cross-checks it in audit
//! mode.

use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::newton::{check_points, masser_divisor};
use crate::places::{div_of_vector, Divisor};
use crate::poly::{Poly, Var};
use crate::polymat::{
    kernel_module_basis, modules_equal, module_basis_reduce, vec_degree, PolyMatrix,
};
use crate::ratfunc::RatFunc;
use crate::riemann_roch::{rr_basis, rr_contains, rr_coordinates, RrBasis};
use crate::sparse::SparsePoly;
use crate::tpoly::TPoly;

/// The linearized system: rows are indexed by the basis of `L(D~)`,
/// columns by the `d` coefficients of `g` followed by the `l` relation
/// coefficients.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub b: PolyMatrix,
    pub bound_divisor: Divisor,
    pub beta: RrBasis,
    pub tilde_divisor: Divisor,
    pub gamma: RrBasis,
    pub d: usize,
    pub ell: usize,
}

impl LinearSystem {
    pub fn bound(&self) -> usize {
        self.d + self.ell
    }
}

/// A degree-minimal basis of the relation module `G`.
#[derive(Clone, Debug)]
pub struct RelationBasis {
    pub vectors: Vec<Vec<Poly>>,
    pub d: usize,
    pub ell: usize,
    pub bound: usize,
}

impl RelationBasis {
    /// Rank of `G`.
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.vectors
            .iter()
            .map(|v| vec_degree(v).expect("basis vectors are nonzero"))
            .collect()
    }
}

/// Certificate accompanying an independence verdict.
#[derive(Clone, Debug)]
pub struct IndependenceCertificate {
    pub independent: bool,
    pub d: usize,
    pub ell: usize,
    pub bound: usize,
    pub nu: usize,
    pub audit: Option<AuditReport>,
}

/// Results of the audit-mode cross-checks.
#[derive(Clone, Debug)]
pub struct AuditReport {
    /// Degree cap used for the oracle comparison (`d + l`).
    pub delta: usize,
    /// `F_q`-dimension of the oracle's relation space at the cap.
    pub oracle_dim: usize,
    /// `F_q`-dimension of the solver's degree-capped slice.
    pub solver_slice_dim: usize,
    pub spans_agree: bool,
    /// Kernel recomputed at `delta + 2` spans the same module.
    pub saturation_stable: bool,
}

/// Build the `F_q[t]`-linear system `B` for an instance.
pub fn build_linear_system(e: &DrinfeldModule, points: &[RatFunc]) -> Result<LinearSystem> {
    check_points(points)?;
    let field = e.field().clone();
    let bound_divisor = masser_divisor(e, points)?;
    let beta = rr_basis(&field, &bound_divisor);
    let d = beta.dimension();
    let ell = points.len();
    for p in points {
        if !rr_contains(&bound_divisor, p) {
            return Err(Error::TheoremBoundViolated(format!(
                "point {p} escapes the Riemann-Roch space of {bound_divisor}"
            )));
        }
    }

    // the generator products that the rows must accommodate
    let theta = RatFunc::theta(&field);
    let mut generator_elements: Vec<RatFunc> = Vec::new();
    for b in beta.elements() {
        generator_elements.push(b.clone());
        generator_elements.push(theta.mul(b));
        for j in 1..=e.rank() {
            let kappa = e.kappa(j);
            if !kappa.is_zero() {
                generator_elements.push(kappa.mul(&b.pow_q(j as u32)));
            }
        }
    }
    generator_elements.extend(points.iter().cloned());

    // the smallest divisor containing D that holds every generator element
    let mut tilde_divisor = bound_divisor.clone();
    for g in &generator_elements {
        tilde_divisor = tilde_divisor.join(&div_of_vector(std::slice::from_ref(g))?.neg());
    }
    let gamma = rr_basis(&field, &tilde_divisor);
    let dtilde = gamma.dimension();
    for g in &generator_elements {
        debug_assert!(rr_contains(&tilde_divisor, g));
    }

    // row s of B: in column g_i the entry t*c_s(beta_i) - c_s(T beta_i)
    // - sum_j c_s(kappa_j beta_i^(q^j)); in column a_i the entry c_s(P_i)
    let mut b = PolyMatrix::zero(&field, dtilde, d + ell);
    for (i, beta_i) in beta.elements().iter().enumerate() {
        let cb = rr_coordinates(&gamma, beta_i)?;
        let ctb = rr_coordinates(&gamma, &theta.mul(beta_i))?;
        let mut cks = vec![vec![0u64; dtilde]; 0];
        for j in 1..=e.rank() {
            let kappa = e.kappa(j);
            if kappa.is_zero() {
                continue;
            }
            cks.push(rr_coordinates(&gamma, &kappa.mul(&beta_i.pow_q(j as u32)))?);
        }
        for s in 0..dtilde {
            let mut constant = field.neg(ctb[s]);
            for ck in &cks {
                constant = field.sub(constant, ck[s]);
            }
            b.set(s, i, Poly::from_reps(&field, Var::T, vec![constant, cb[s]]));
        }
    }
    for (i, p) in points.iter().enumerate() {
        let cp = rr_coordinates(&gamma, p)?;
        for s in 0..dtilde {
            b.set(s, d + i, Poly::constant(&field, Var::T, cp[s]));
        }
    }
    debug_assert!(b.max_deg().unwrap_or(0) <= 1);

    Ok(LinearSystem { b, bound_divisor, beta, tilde_divisor, gamma, d, ell })
}

/// Relation basis plus the system it came from.
pub fn relation_basis_with_system(
    e: &DrinfeldModule,
    points: &[RatFunc],
) -> Result<(LinearSystem, RelationBasis)> {
    let sys = build_linear_system(e, points)?;
    let bound = sys.bound();
    let kernel = kernel_module_basis(&sys.b, bound)?;
    let projections: Vec<Vec<Poly>> = kernel
        .iter()
        .map(|x| x[sys.d..].to_vec())
        .collect();
    let vectors = module_basis_reduce(&projections);
    for m in &vectors {
        let deg = vec_degree(m).expect("nonzero basis vector");
        if deg > bound {
            return Err(Error::TheoremBoundViolated(format!(
                "relation degree {deg} exceeds the bound {bound}"
            )));
        }
        if !verify_relation(e, points, m)? {
            return Err(Error::TheoremBoundViolated(
                "projected kernel vector is not a relation".into(),
            ));
        }
    }
    let rb = RelationBasis { vectors, d: sys.d, ell: sys.ell, bound };
    Ok((sys, rb))
}

/// Degree-minimal `F_q[t]`-basis of the relation module `G`, every vector
/// within degree `d + l`.
pub fn relation_basis(e: &DrinfeldModule, points: &[RatFunc]) -> Result<RelationBasis> {
    relation_basis_with_system(e, points).map(|(_, rb)| rb)
}

/// Direct check that `sum_i phi_{a_i}(P_i) = 0`, through the module
/// action alone (value iteration of `phi_t`; no divisors, no `B`).
pub fn verify_relation(e: &DrinfeldModule, points: &[RatFunc], a: &[Poly]) -> Result<bool> {
    assert_eq!(a.len(), points.len(), "relation length mismatch");
    for ai in a {
        assert_eq!(ai.var(), Var::T, "relations live in F_q[t]");
    }
    if a.iter().all(Poly::is_zero) {
        return Ok(true);
    }
    let field = e.field().clone();
    if e.is_polynomial_instance(points) {
        let mut total = SparsePoly::zero(&field, Var::Theta);
        for (ai, p) in a.iter().zip(points) {
            let Some(deg) = ai.degree() else { continue };
            let iterates =
                e.phi_value_iterates_sparse(&SparsePoly::from_dense(p.num()), deg);
            for (c, w) in ai.coeffs().iter().zip(&iterates) {
                if *c != 0 {
                    total = total.add(&w.mul_scalar(*c));
                }
            }
        }
        Ok(total.is_zero())
    } else {
        let mut total = RatFunc::zero(&field);
        for (ai, p) in a.iter().zip(points) {
            total = total.add(&e.phi_value(ai, p));
        }
        Ok(total.is_zero())
    }
}

/// Recover the difference-equation witness `g` for a candidate relation.
///
/// With `F = sum a_i P_i` of `t`-degree `n + 1`, the top coefficient
/// forces `g_n = -F_{n+1}` and the recursion `g_{i-1} = T g_i - F_i +
/// sum_j kappa_j g_i^(q^j)` determines the rest; the candidate is a
/// relation exactly when the leftover constant equation
/// `-T g_0 + F_0 = sum_j kappa_j g_0^(q^j)` holds. Returns `None` when it
/// does not ("no relation").
pub fn recover_g(
    e: &DrinfeldModule,
    points: &[RatFunc],
    a: &[Poly],
) -> Result<Option<TPoly>> {
    assert_eq!(a.len(), points.len(), "relation length mismatch");
    if a.iter().all(Poly::is_zero) {
        return Err(Error::TrivialCandidate);
    }
    let field = e.field().clone();
    let theta = RatFunc::theta(&field);
    let mut f = TPoly::zero(&field);
    for (ai, p) in a.iter().zip(points) {
        f = f.add(&TPoly::from_fqt_scaled(ai, p));
    }
    if f.is_zero() {
        // the equation degenerates to (t - T) g = sum kappa_j g^(j), whose
        // only polynomial solution is g = 0; the relation holds
        return Ok(Some(TPoly::zero(&field)));
    }
    let deg_f = f.degree().unwrap();
    if deg_f == 0 {
        // a nonzero constant F admits no solution: deg_t of the left side
        // would exceed the right
        return Ok(None);
    }
    let n = deg_f - 1;
    let mut g = vec![RatFunc::zero(&field); n + 1];
    g[n] = f.coeff(n + 1).neg();
    for i in (1..=n).rev() {
        let mut next = theta.mul(&g[i]).sub(&f.coeff(i));
        for j in 1..=e.rank() {
            let kappa = e.kappa(j);
            if !kappa.is_zero() {
                next = next.add(&kappa.mul(&g[i].pow_q(j as u32)));
            }
        }
        g[i - 1] = next;
    }
    let mut rhs0 = RatFunc::zero(&field);
    for j in 1..=e.rank() {
        let kappa = e.kappa(j);
        if !kappa.is_zero() {
            rhs0 = rhs0.add(&kappa.mul(&g[0].pow_q(j as u32)));
        }
    }
    let lhs0 = f.coeff(0).sub(&theta.mul(&g[0]));
    if lhs0 == rhs0 {
        Ok(Some(TPoly::from_coeffs(&field, g)))
    } else {
        Ok(None)
    }
}

/// Termwise check of the full difference equation for a recovered
/// witness: `(t - T) g + F = kappa_r g^(r) + ... + kappa_1 g^(1)`.
pub fn check_difference_equation(e: &DrinfeldModule, g: &TPoly, f: &TPoly) -> bool {
    let lhs = TPoly::t_minus_theta(e.field()).mul(g).add(f);
    let mut rhs = TPoly::zero(e.field());
    for j in 1..=e.rank() {
        let kappa = e.kappa(j);
        if !kappa.is_zero() {
            rhs = rhs.add(&g.pow_q_coeffwise(j as u32).scale(kappa));
        }
    }
    lhs == rhs
}

/// `F = sum a_i P_i` as an element of `k[t]`.
pub fn relation_rhs(points: &[RatFunc], a: &[Poly]) -> TPoly {
    let field = points[0].field().clone();
    let mut f = TPoly::zero(&field);
    for (ai, p) in a.iter().zip(points) {
        f = f.add(&TPoly::from_fqt_scaled(ai, p));
    }
    f
}

fn flatten_relation(a: &[Poly], delta: usize) -> Vec<u64> {
    let mut flat = vec![0u64; a.len() * (delta + 1)];
    for (i, ai) in a.iter().enumerate() {
        for (e, &c) in ai.coeffs().iter().enumerate() {
            flat[i * (delta + 1) + e] = c;
        }
    }
    flat
}

/// `F_q`-basis of all relations with `deg_t(a_i) <= delta`, computed by
/// exact linear algebra on the values `phi_{t^e}(P_i)`: the map
/// `(a_i) -> sum phi_{a_i}(P_i)` is `F_q`-linear in the monomial
/// coefficients, and its kernel is read off one coefficient row at a
/// time. Completely independent of divisors, Riemann-Roch spaces, and the
/// matrix `B`.
pub fn oracle_relations(
    e: &DrinfeldModule,
    points: &[RatFunc],
    delta: usize,
) -> Result<Vec<Vec<Poly>>> {
    let field = e.field().clone();
    let ell = points.len();
    let cols = ell * (delta + 1);
    let mut space = RowSpace::new(&field, cols);

    if e.is_polynomial_instance(points) {
        let values: Vec<Vec<SparsePoly>> = points
            .iter()
            .map(|p| e.phi_value_iterates_sparse(&SparsePoly::from_dense(p.num()), delta))
            .collect();
        let mut exponents: Vec<u64> = values
            .iter()
            .flatten()
            .flat_map(|v| v.terms().iter().map(|&(exp, _)| exp))
            .collect();
        exponents.sort_unstable();
        exponents.dedup();
        let flat_values: Vec<&SparsePoly> = values.iter().flatten().collect();
        let mut cursors = vec![0usize; flat_values.len()];
        let mut row = vec![0u64; cols];
        for &exp in &exponents {
            for c in row.iter_mut() {
                *c = 0;
            }
            for (idx, v) in flat_values.iter().enumerate() {
                let terms = v.terms();
                while cursors[idx] < terms.len() && terms[cursors[idx]].0 < exp {
                    cursors[idx] += 1;
                }
                if cursors[idx] < terms.len() && terms[cursors[idx]].0 == exp {
                    row[idx] = terms[cursors[idx]].1;
                }
            }
            space.absorb(&row);
        }
    } else {
        let values: Vec<Vec<RatFunc>> = points
            .iter()
            .map(|p| e.phi_value_iterates(p, delta))
            .collect();
        // clear all values to one common denominator
        let mut common = Poly::one(&field, Var::Theta);
        for v in values.iter().flatten() {
            let g = Poly::gcd(&common, v.den())?;
            let (cofactor, _) = v.den().div_rem(&g)?;
            common = common.mul(&cofactor);
        }
        let cleared: Vec<Poly> = values
            .iter()
            .flatten()
            .map(|v| {
                let (cofactor, rem) = common.div_rem(v.den())?;
                debug_assert!(rem.is_zero());
                Ok(v.num().mul(&cofactor))
            })
            .collect::<Result<_>>()?;
        let max_deg = cleared.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let mut row = vec![0u64; cols];
        for deg in 0..=max_deg {
            for (idx, poly) in cleared.iter().enumerate() {
                row[idx] = poly.coeff(deg);
            }
            space.absorb(&row);
        }
    }

    let kernel = space.nullspace_basis();
    Ok(kernel
        .into_iter()
        .map(|flat| {
            (0..ell)
                .map(|i| {
                    Poly::from_reps(
                        &field,
                        Var::T,
                        flat[i * (delta + 1)..(i + 1) * (delta + 1)].to_vec(),
                    )
                })
                .collect()
        })
        .collect())
}

/// The degree-`delta` slice of the relation module, as `F_q`-spanning
/// vectors `t^e m_i` with `e + deg(m_i) <= delta`. For a row-reduced
/// basis this spans exactly the relations of degree at most `delta`.
pub fn relation_slice(rb: &RelationBasis, delta: usize) -> Vec<Vec<Poly>> {
    let mut out = Vec::new();
    for m in &rb.vectors {
        let deg = vec_degree(m).expect("nonzero basis vector");
        if deg > delta {
            continue;
        }
        for e in 0..=(delta - deg) {
            out.push(m.iter().map(|p| p.shift(e)).collect());
        }
    }
    out
}

/// Compare two families of relations of degree at most `delta` as
/// `F_q`-subspaces.
pub fn relation_spans_equal(
    field: &crate::field::Fq,
    ell: usize,
    delta: usize,
    a: &[Vec<Poly>],
    b: &[Vec<Poly>],
) -> bool {
    let cols = ell * (delta + 1);
    let flatten = |vs: &[Vec<Poly>]| -> Vec<Vec<u64>> {
        vs.iter().map(|v| flatten_relation(v, delta)).collect()
    };
    crate::linalg::row_space_rref(field, &flatten(a), cols)
        == crate::linalg::row_space_rref(field, &flatten(b), cols)
}

/// Decide `F_q[t]`-linear independence of the points. In audit mode the
/// verdict is cross-checked against the brute-force oracle at the full
/// degree bound and the kernel is recomputed with extra degree headroom;
/// any disagreement is an internal error.
pub fn is_independent(
    e: &DrinfeldModule,
    points: &[RatFunc],
    audit: bool,
) -> Result<IndependenceCertificate> {
    let (sys, rb) = relation_basis_with_system(e, points)?;
    let independent = rb.is_empty();
    let audit_report = if audit {
        let delta = rb.bound;
        let oracle = oracle_relations(e, points, delta)?;
        let slice = relation_slice(&rb, delta);
        let field = e.field();
        let spans_agree = relation_spans_equal(field, rb.ell, delta, &oracle, &slice);
        let saturated = kernel_module_basis(&sys.b, delta + 2)?;
        let base = kernel_module_basis(&sys.b, delta)?;
        let saturation_stable = modules_equal(&saturated, &base);
        let report = AuditReport {
            delta,
            oracle_dim: oracle.len(),
            solver_slice_dim: crate::linalg::row_space_rref(
                field,
                &slice
                    .iter()
                    .map(|v| flatten_relation(v, delta))
                    .collect::<Vec<_>>(),
                rb.ell * (delta + 1),
            )
            .len(),
            spans_agree,
            saturation_stable,
        };
        if !report.spans_agree {
            return Err(Error::SolverOracleDisagreement(format!(
                "oracle dimension {} vs solver slice dimension {} at degree {delta}",
                report.oracle_dim, report.solver_slice_dim
            )));
        }
        if !report.saturation_stable {
            return Err(Error::SolverOracleDisagreement(
                "kernel module changed when the degree cap was raised".into(),
            ));
        }
        Some(report)
    } else {
        None
    };
    Ok(IndependenceCertificate {
        independent,
        d: rb.d,
        ell: rb.ell,
        bound: rb.bound,
        nu: rb.rank(),
        audit: audit_report,
    })
}

/// Recompute the bound divisor for the isomorphic module `u * E` with
/// points `u P_i` and verify the covariance `D' = D - div(u)`; returns
/// the two (equal) degrees.
pub fn invariance_check(
    e: &DrinfeldModule,
    points: &[RatFunc],
    u: &RatFunc,
) -> Result<(i64, i64)> {
    if u.is_zero() {
        return Err(Error::ZeroUnit);
    }
    let d = masser_divisor(e, points)?;
    let twisted = e.twist_by_unit(u)?;
    let moved: Vec<RatFunc> = points.iter().map(|p| p.mul(u)).collect();
    let d2 = masser_divisor(&twisted, &moved)?;
    let expected = d.sub(&div_of_vector(std::slice::from_ref(u))?);
    if d2 != expected {
        return Err(Error::TheoremBoundViolated(format!(
            "twist covariance failed: got {d2}, expected {expected}"
        )));
    }
    debug_assert_eq!(d.degree(), d2.degree());
    Ok((d.degree(), d2.degree()))
}
