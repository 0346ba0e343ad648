//! Matrices and module bases over `F_q[t]`.
//!
//! Submodules of `F_q[t]^n` are free; this module computes degree-minimal
//! bases in Popov form. The pivot of a nonzero vector is the rightmost
//! position whose entry degree equals the vector degree (the maximum entry
//! degree). The reduction has three stages:
//!
//! 1. conflict resolution: while two vectors share a pivot position, the
//!    one with the larger pivot degree is reduced by the other (its row
//!    degree never increases), until pivots are pairwise distinct;
//! 2. normalization: sort by pivot position, make pivot entries monic;
//! 3. full reduction: in every other vector, entries at a pivot position
//!    are brought below that pivot's degree, always attacking the offense
//!    of highest degree (rightmost among ties). Degree-d content only
//!    propagates to positions further left, so this terminates.
//!
//! The multiset of degrees of the result is pointwise minimal among all
//! bases of the spanned module, and no degree exceeds the largest
//! generator degree.

use crate::error::Result;
use crate::field::Fq;
use crate::linalg::FqMatrix;
use crate::poly::{Poly, Var};
use std::fmt;

/// Dense matrix over `F_q[t]`, with cached degree statistics.
#[derive(Clone)]
pub struct PolyMatrix {
    field: Fq,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(field: &Fq, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![Poly::zero(field, Var::T); rows * cols],
        }
    }

    pub fn from_rows(field: &Fq, rows: Vec<Vec<Poly>>) -> PolyMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            for e in &row {
                assert_eq!(e.var(), Var::T, "matrix entries live in F_q[t]");
            }
            entries.extend(row);
        }
        PolyMatrix { field: field.clone(), rows: nrows, cols: ncols, entries }
    }

    pub fn identity(field: &Fq, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(field, Var::T));
        }
        m
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        assert_eq!(p.var(), Var::T);
        self.entries[r * self.cols + c] = p;
    }

    /// Maximum degree over nonzero entries; `None` for the zero matrix.
    pub fn max_deg(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// Minimum degree over nonzero entries; `None` for the zero matrix.
    pub fn min_deg(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).min()
    }

    pub fn mul_vec(&self, x: &[Poly]) -> Vec<Poly> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Poly::zero(&self.field, Var::T);
                for c in 0..self.cols {
                    acc = acc.add(&self.get(r, c).mul(&x[c]));
                }
                acc
            })
            .collect()
    }

    /// Rank over the fraction field `F_q(t)`, by fraction-free Bareiss
    /// elimination (divisions by the previous pivot are exact).
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Poly>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut prev = Poly::one(&self.field, Var::T);
        let mut rank = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pr);
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = m[r][c].mul(&m[rank][col]).sub(&m[r][col].mul(&m[rank][c]));
                    let (quot, rem) = num.div_rem(&prev).expect("nonzero previous pivot");
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    m[r][c] = quot;
                }
                m[r][col] = Poly::zero(&self.field, Var::T);
            }
            prev = m[rank][col].clone();
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Degree of a vector: maximum entry degree, `None` when all zero.
pub fn vec_degree(v: &[Poly]) -> Option<usize> {
    v.iter().filter_map(Poly::degree).max()
}

/// Pivot of a nonzero vector: rightmost position attaining the vector
/// degree, together with that degree.
fn pivot(v: &[Poly]) -> Option<(usize, usize)> {
    let deg = vec_degree(v)?;
    let pos = (0..v.len()).rev().find(|&i| v[i].degree() == Some(deg))?;
    Some((pos, deg))
}

/// `a -= c * t^shift * b`, entrywise.
fn reduce_step(a: &mut [Poly], b: &[Poly], c: u64, shift: usize) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = x.sub(&y.shift(shift).mul_scalar(c));
        }
    }
}

/// Degree-minimal basis (canonical Popov form) of the `F_q[t]`-span of
/// the given vectors. Zero vectors are dropped; the empty input yields the
/// empty basis.
pub fn module_basis_reduce(generators: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let mut rows: Vec<Vec<Poly>> = generators
        .iter()
        .filter(|v| vec_degree(v).is_some())
        .cloned()
        .collect();
    if rows.is_empty() {
        return rows;
    }
    let field = rows[0][0].field().clone();

    // stage 1: make pivot positions pairwise distinct
    'outer: loop {
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let (pi, di) = pivot(&rows[i]).expect("nonzero row");
                let (pj, dj) = pivot(&rows[j]).expect("nonzero row");
                if pi != pj {
                    continue;
                }
                let (red, by) = if di > dj { (i, j) } else { (j, i) };
                let (rp, rd) = pivot(&rows[red]).unwrap();
                let (_, bd) = pivot(&rows[by]).unwrap();
                let c = field
                    .mul(
                        rows[red][rp].leading(),
                        field.inv(rows[by][rp].leading()).expect("nonzero pivot"),
                    );
                let by_row = rows[by].clone();
                reduce_step(&mut rows[red], &by_row, c, rd - bd);
                if vec_degree(&rows[red]).is_none() {
                    rows.remove(red);
                }
                continue 'outer;
            }
        }
        break;
    }

    // stage 2: sort by pivot position, make pivots monic
    rows.sort_by_key(|r| pivot(r).expect("nonzero row").0);
    for row in rows.iter_mut() {
        let (p, _) = pivot(row).unwrap();
        let inv = field.inv(row[p].leading()).expect("nonzero pivot");
        if inv != 1 {
            for e in row.iter_mut() {
                *e = e.mul_scalar(inv);
            }
        }
    }

    // stage 3: full reduction against the other pivots
    let pivots: Vec<(usize, usize)> = rows.iter().map(|r| pivot(r).unwrap()).collect();
    for i in 0..rows.len() {
        loop {
            // the offense of highest degree, rightmost among ties
            let mut target: Option<(usize, usize)> = None; // (deg, j)
            for (j, &(pj, dj)) in pivots.iter().enumerate() {
                if j == i {
                    continue;
                }
                if let Some(d) = rows[i][pj].degree() {
                    if d >= dj && target.map_or(true, |(td, tj)| (d, pj) > (td, pivots[tj].0)) {
                        target = Some((d, j));
                    }
                }
            }
            let Some((d, j)) = target else { break };
            let (pj, dj) = pivots[j];
            let c = rows[i][pj].leading();
            let by_row = rows[j].clone();
            reduce_step(&mut rows[i], &by_row, c, d - dj);
        }
        debug_assert_eq!(pivot(&rows[i]).map(|(p, _)| p), Some(pivots[i].0));
    }
    rows
}

/// Remainder of `v` after reduction against a Popov basis (distinct monic
/// pivots). A zero remainder certifies membership of `v` in the spanned
/// module, and every member reduces to zero.
pub fn reduce_vector(basis: &[Vec<Poly>], v: &[Poly]) -> Vec<Poly> {
    let mut v = v.to_vec();
    let pivots: Vec<(usize, usize)> = basis.iter().map(|r| pivot(r).expect("nonzero basis row")).collect();
    loop {
        let Some((pos, deg)) = pivot(&v) else {
            return v;
        };
        let Some(j) = pivots
            .iter()
            .position(|&(p, d)| p == pos && d <= deg)
        else {
            return v;
        };
        let c = v[pos].leading();
        reduce_step(&mut v, &basis[j], c, deg - pivots[j].1);
    }
}

pub fn span_contains(basis: &[Vec<Poly>], v: &[Poly]) -> bool {
    reduce_vector(basis, v).iter().all(Poly::is_zero)
}

/// Module equality via mutual membership of Popov bases.
pub fn modules_equal(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> bool {
    a.iter().all(|v| span_contains(b, v)) && b.iter().all(|v| span_contains(a, v))
}

/// Sorted degree multiset of a basis.
pub fn degree_profile(basis: &[Vec<Poly>]) -> Vec<usize> {
    let mut profile: Vec<usize> = basis.iter().filter_map(|v| vec_degree(v)).collect();
    profile.sort_unstable();
    profile
}

/// Basis of the module of kernel vectors of `b` found at degree at most
/// `delta`: each unknown is expanded as `sum_{e <= delta} x_e t^e`, the
/// induced `F_q`-linear system is solved, and the solution space is
/// compressed to a module basis.
///
/// When `delta >= rank(b) * max_deg(b)` the result is a basis of the full
/// kernel over `F_q[t]`: the kernel admits a basis within that degree, so
/// the degree-bounded solutions generate it.
pub fn kernel_module_basis(b: &PolyMatrix, delta: usize) -> Result<Vec<Vec<Poly>>> {
    let field = b.field().clone();
    let n = b.cols();
    let db = b.max_deg().unwrap_or(0);
    let unknowns = n * (delta + 1);
    let eq_rows = b.rows() * (delta + db + 1);
    let mut m = FqMatrix::zero(&field, eq_rows.max(1), unknowns);
    for i in 0..b.rows() {
        for deg in 0..=(delta + db) {
            let row = i * (delta + db + 1) + deg;
            for j in 0..n {
                let entry = b.get(i, j);
                if entry.is_zero() {
                    continue;
                }
                for e in 0..=delta {
                    if deg >= e && deg - e <= db {
                        let c = entry.coeff(deg - e);
                        if c != 0 {
                            m.set(row, j * (delta + 1) + e, c);
                        }
                    }
                }
            }
        }
    }
    let solutions = m.nullspace_basis();
    let vectors: Vec<Vec<Poly>> = solutions
        .iter()
        .map(|sol| {
            (0..n)
                .map(|j| {
                    Poly::from_reps(
                        &field,
                        Var::T,
                        sol[j * (delta + 1)..(j + 1) * (delta + 1)].to_vec(),
                    )
                })
                .collect()
        })
        .collect();
    Ok(module_basis_reduce(&vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    fn tp(f: &Fq, coeffs: &[u64]) -> Poly {
        Poly::from_reps(f, Var::T, coeffs.to_vec())
    }

    #[test]
    fn popov_drops_multiples() {
        let f = f2();
        // {(t,0), (t^2,0)} -> {(t,0)}
        let gens = vec![
            vec![tp(&f, &[0, 1]), tp(&f, &[])],
            vec![tp(&f, &[0, 0, 1]), tp(&f, &[])],
        ];
        let basis = module_basis_reduce(&gens);
        assert_eq!(basis, vec![vec![tp(&f, &[0, 1]), tp(&f, &[])]]);
        // {(t+1,1), (t^2+t,t)}: second = t * first
        let gens2 = vec![
            vec![tp(&f, &[1, 1]), tp(&f, &[1])],
            vec![tp(&f, &[0, 1, 1]), tp(&f, &[0, 1])],
        ];
        let first = gens2[0].clone();
        assert_eq!(
            gens2[1],
            first.iter().map(|p| p.shift(1)).collect::<Vec<_>>(),
            "second generator is t times the first"
        );
        let basis2 = module_basis_reduce(&gens2);
        assert_eq!(basis2, vec![first]);
        // empty input
        assert!(module_basis_reduce(&[]).is_empty());
    }

    #[test]
    fn kernel_examples() {
        let f = f2();
        // identity has trivial kernel
        let id = PolyMatrix::identity(&f, 2);
        assert!(kernel_module_basis(&id, 3).unwrap().is_empty());
        // one row (t, -1): kernel basis {(1, t)}
        let b = PolyMatrix::from_rows(&f, vec![vec![tp(&f, &[0, 1]), tp(&f, &[1])]]);
        let k = kernel_module_basis(&b, 1).unwrap();
        assert_eq!(k, vec![vec![tp(&f, &[1]), tp(&f, &[0, 1])]]);
        // zero 1x2 matrix: full module
        let z = PolyMatrix::zero(&f, 1, 2);
        let k2 = kernel_module_basis(&z, 2).unwrap();
        assert_eq!(
            k2,
            vec![
                vec![tp(&f, &[1]), tp(&f, &[])],
                vec![tp(&f, &[]), tp(&f, &[1])],
            ]
        );
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = Fq::prime(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(73);
        for _ in 0..40 {
            let rows = rng.gen_range(1..4);
            let cols = rng.gen_range(1..5);
            let b = PolyMatrix::from_rows(
                &f,
                (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| {
                                tp(
                                    &f,
                                    &(0..=rng.gen_range(0..2))
                                        .map(|_| rng.gen_range(0..3))
                                        .collect::<Vec<_>>(),
                                )
                            })
                            .collect()
                    })
                    .collect(),
            );
            let delta = cols * b.max_deg().unwrap_or(0);
            let kernel = kernel_module_basis(&b, delta).unwrap();
            for x in &kernel {
                assert!(b.mul_vec(x).iter().all(Poly::is_zero), "kernel vector fails");
                assert!(vec_degree(x).unwrap_or(0) <= b.rank() * b.max_deg().unwrap_or(0));
            }
            // rank over F_q(t) is complementary to the kernel rank
            assert_eq!(b.rank(), cols - kernel.len());
        }
    }

    fn rand_vec(f: &Fq, rng: &mut rand_chacha::ChaCha8Rng, n: usize, maxdeg: usize) -> Vec<Poly> {
        (0..n)
            .map(|_| {
                tp(
                    f,
                    &(0..=rng.gen_range(0..=maxdeg))
                        .map(|_| rng.gen_range(0..f.q()))
                        .collect::<Vec<_>>(),
                )
            })
            .collect()
    }

    #[test]
    fn popov_form_is_reduced_and_minimal_degree() {
        let f = f2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(79);
        for _ in 0..60 {
            let n = rng.gen_range(1..4);
            let gens: Vec<Vec<Poly>> =
                (0..rng.gen_range(1..4)).map(|_| rand_vec(&f, &mut rng, n, 3)).collect();
            let basis = module_basis_reduce(&gens);
            if basis.is_empty() {
                continue;
            }
            // pivots distinct and monic, entries below pivot degree elsewhere
            let pivots: Vec<(usize, usize)> =
                basis.iter().map(|r| pivot(r).unwrap()).collect();
            for (i, &(p, d)) in pivots.iter().enumerate() {
                assert!(basis[i][p].is_monic());
                for (j, &(pj, dj)) in pivots.iter().enumerate() {
                    if i != j {
                        assert_ne!(p, pj, "pivot collision");
                        assert!(
                            basis[i][pj].degree().map_or(true, |deg| deg < dj),
                            "entry not reduced below pivot degree"
                        );
                    }
                }
                let _ = d;
            }
            // no degree exceeds the largest generator degree
            let max_gen = gens.iter().filter_map(|v| vec_degree(v)).max().unwrap();
            assert!(degree_profile(&basis).last().copied().unwrap_or(0) <= max_gen);
            // the module is unchanged: generators reduce to zero, and the
            // basis lies in the F_q-span of shifted generators
            for g in &gens {
                assert!(span_contains(&basis, g));
            }
            let total: usize = gens.iter().filter_map(|v| vec_degree(v)).sum();
            let big = max_gen + total + 3;
            let cols = n * (big + 1);
            let mut space = crate::linalg::RowSpace::new(&f, cols);
            for g in &gens {
                let Some(gdeg) = vec_degree(g) else { continue };
                for e in 0..=(big - gdeg) {
                    let shifted: Vec<Poly> = g.iter().map(|p| p.shift(e)).collect();
                    let mut flat = vec![0u64; cols];
                    for (j, p) in shifted.iter().enumerate() {
                        for (deg, &c) in p.coeffs().iter().enumerate() {
                            flat[j * (big + 1) + deg] = c;
                        }
                    }
                    space.absorb(&flat);
                }
            }
            for b in &basis {
                let mut flat = vec![0u64; cols];
                for (j, p) in b.iter().enumerate() {
                    for (deg, &c) in p.coeffs().iter().enumerate() {
                        flat[j * (big + 1) + deg] = c;
                    }
                }
                assert!(space.contains(&flat), "basis vector escapes the generator span");
            }
        }
    }

    #[test]
    fn popov_is_canonical_for_the_module() {
        let f = f2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(83);
        for _ in 0..40 {
            let n = rng.gen_range(1..4);
            let gens: Vec<Vec<Poly>> =
                (0..rng.gen_range(1..3)).map(|_| rand_vec(&f, &mut rng, n, 2)).collect();
            let basis = module_basis_reduce(&gens);
            // shuffle the generating set by invertible operations
            let mut gens2 = gens.clone();
            gens2.reverse();
            if gens2.len() == 2 {
                let sum: Vec<Poly> =
                    gens2[0].iter().zip(&gens2[1]).map(|(a, b)| a.add(b)).collect();
                gens2.push(sum);
            }
            let basis2 = module_basis_reduce(&gens2);
            assert_eq!(basis, basis2, "Popov form must not depend on the generators");
        }
    }
}
