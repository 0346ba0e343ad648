//! Newton polygons of the associate polynomial, slope divisors, the local
//! constants `C_v`, and the bound divisor `D`.
//!
//! For a module with `phi_t = T + kappa_1 tau + ... + kappa_r tau^r`, the
//! associate polynomial is `(t - T) x + kappa_1 x^q + ... +
//! kappa_r x^(q^r)`. Its Newton polygon at a place `v` consists of the
//! points `(1, ord_v(t - T)), (q, ord_v(kappa_1)), ..., (q^r,
//! ord_v(kappa_r))` (points with zero coefficient omitted). `S_v` is the
//! slope of the bottom rightmost hull edge, equivalently the maximum of
//! the chord slopes into the last point; the slope divisor collects
//! `ceil(S_v)` over all places, and joining it with `-div(points)` yields
//! the divisor `D` whose Riemann-Roch dimension drives the degree bound.
//!
//! All slope arithmetic is exact rational: an off-by-one in a ceiling
//! changes `D` and with it the bound.

use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::places::{
    candidate_places, div_of_vector, height, ord_at_place, ord_tpoly, Divisor, Place,
};
use crate::ratfunc::RatFunc;
use crate::tpoly::TPoly;
use num_rational::Ratio;

type Rat = Ratio<i128>;

/// The Newton polygon data at one place: the defining points and the
/// vertices of the lower convex hull.
#[derive(Clone, Debug)]
pub struct NewtonPolygon {
    points: Vec<(i128, i128)>,
    hull: Vec<(i128, i128)>,
}

impl NewtonPolygon {
    /// Build from the points `(q^j, ord)` for the nonzero coefficients.
    pub fn new(points: Vec<(i128, i128)>) -> NewtonPolygon {
        debug_assert!(points.windows(2).all(|w| w[0].0 < w[1].0));
        let mut hull: Vec<(i128, i128)> = Vec::new();
        for &p in &points {
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                // pop b when slope(a,b) >= slope(b,p): hull slopes must
                // strictly increase left to right
                if (b.1 - a.1) * (p.0 - b.0) >= (p.1 - b.1) * (b.0 - a.0) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        NewtonPolygon { points, hull }
    }

    pub fn points(&self) -> &[(i128, i128)] {
        &self.points
    }

    pub fn hull(&self) -> &[(i128, i128)] {
        &self.hull
    }

    /// Slope of the hull edge ending at the rightmost point.
    pub fn last_edge_slope(&self) -> Rat {
        assert!(self.hull.len() >= 2, "polygon needs at least two points");
        let a = self.hull[self.hull.len() - 2];
        let b = self.hull[self.hull.len() - 1];
        Ratio::new(b.1 - a.1, b.0 - a.0)
    }
}

/// Per-place slope record, as reported by the CLI.
#[derive(Clone, Debug)]
pub struct SlopeData {
    pub place: Place,
    /// `ord_v(kappa_j)` for `j = 1..=r`; `None` where `kappa_j = 0`.
    pub ord_kappa: Vec<Option<i64>>,
    pub ord_t_minus_theta: i64,
    pub slope: Rat,
    pub slope_ceil: i64,
    pub cv: i64,
}

/// Places where any slope or point data can live: infinity plus the
/// support of every nonzero `kappa_j` and every point. This witnesses the
/// finiteness of all the place-indexed sums below.
pub fn relevant_places(e: &DrinfeldModule, points: &[RatFunc]) -> Result<Vec<Place>> {
    let mut all: Vec<RatFunc> = e.kappas().iter().filter(|k| !k.is_zero()).cloned().collect();
    all.extend(points.iter().cloned());
    candidate_places(&all)
}

/// Places where the module data alone can contribute slope.
fn module_places(e: &DrinfeldModule) -> Result<Vec<Place>> {
    let ks: Vec<RatFunc> = e.kappas().iter().filter(|k| !k.is_zero()).cloned().collect();
    candidate_places(&ks)
}

fn ord_t_minus_theta(e: &DrinfeldModule, v: &Place) -> i64 {
    ord_tpoly(&TPoly::t_minus_theta(e.field()), v).expect("t - T is nonzero")
}

/// The Newton polygon of the associate polynomial at `v`.
pub fn newton_polygon(e: &DrinfeldModule, v: &Place) -> Result<NewtonPolygon> {
    let q = e.field().q() as i128;
    let mut pts = vec![(1i128, ord_t_minus_theta(e, v) as i128)];
    for j in 1..=e.rank() {
        let kappa = e.kappa(j);
        if kappa.is_zero() {
            continue;
        }
        pts.push((q.pow(j as u32), ord_at_place(kappa, v)? as i128));
    }
    Ok(NewtonPolygon::new(pts))
}

/// `S_v` by the closed-form maximum over chord slopes into the last
/// point; the index `j` ranges over `1..r` (at `j = r` the chord
/// degenerates) plus the `(t - T)` term.
pub fn slope_at_place(e: &DrinfeldModule, v: &Place) -> Result<Rat> {
    let q = e.field().q() as i128;
    let r = e.rank();
    let ord_kr = ord_at_place(e.kappa(r), v)? as i128;
    let qr = q.pow(r as u32);
    let mut best = Ratio::new(ord_kr - ord_t_minus_theta(e, v) as i128, qr - 1);
    for j in 1..r {
        let kappa = e.kappa(j);
        if kappa.is_zero() {
            continue;
        }
        let cand = Ratio::new(ord_kr - ord_at_place(kappa, v)? as i128, qr - q.pow(j as u32));
        if cand > best {
            best = cand;
        }
    }
    debug_assert_eq!(
        best,
        newton_polygon(e, v)?.last_edge_slope(),
        "hull slope disagrees with the max formula at {v}"
    );
    Ok(best)
}

fn ceil_i64(r: Rat) -> i64 {
    i64::try_from(r.ceil().to_integer()).expect("ceiling fits i64")
}

fn floor_i64(r: Rat) -> i64 {
    i64::try_from(r.floor().to_integer()).expect("floor fits i64")
}

/// The slope divisor `sum ceil(S_v) * v`; depends on the module only.
pub fn slope_divisor(e: &DrinfeldModule) -> Result<Divisor> {
    let mut d = Divisor::zero();
    for v in module_places(e)? {
        let c = ceil_i64(slope_at_place(e, &v)?);
        d.set(v, c);
    }
    Ok(d)
}

/// The local constant `C_v`: the minimum of the point valuations and the
/// floors of the negated chord slopes.
pub fn cv(e: &DrinfeldModule, points: &[RatFunc], v: &Place) -> Result<i64> {
    let q = e.field().q() as i128;
    let r = e.rank();
    let ord_kr = ord_at_place(e.kappa(r), v)? as i128;
    let qr = q.pow(r as u32);
    let mut best = floor_i64(Ratio::new(ord_t_minus_theta(e, v) as i128 - ord_kr, qr - 1));
    for j in 1..r {
        let kappa = e.kappa(j);
        if kappa.is_zero() {
            continue;
        }
        let cand = floor_i64(Ratio::new(
            ord_at_place(kappa, v)? as i128 - ord_kr,
            qr - q.pow(j as u32),
        ));
        best = best.min(cand);
    }
    for p in points {
        best = best.min(ord_at_place(p, v)?);
    }
    Ok(best)
}

/// Check the theorem hypotheses: nonzero, pairwise distinct points.
pub fn check_points(points: &[RatFunc]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::HypothesisViolated("no points given".into()));
    }
    if points.iter().any(RatFunc::is_zero) {
        return Err(Error::HypothesisViolated("points must be nonzero".into()));
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                return Err(Error::HypothesisViolated(format!(
                    "points must be distinct (positions {} and {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// The bound divisor `D = (-div(points)) v div(E_slope)`.
///
/// Two independent routes are computed and compared: the join of the two
/// divisors, and the placewise sum of `-C_v`. A mismatch is an internal
/// error. The degree lower bound `deg D >= h(points)` is also asserted.
pub fn masser_divisor(e: &DrinfeldModule, points: &[RatFunc]) -> Result<Divisor> {
    check_points(points)?;
    let d = div_of_vector(points)?.neg().join(&slope_divisor(e)?);
    let mut via_cv = Divisor::zero();
    for v in relevant_places(e, points)? {
        let c = -cv(e, points, &v)?;
        via_cv.set(v, c);
    }
    if d != via_cv {
        return Err(Error::TheoremBoundViolated(format!(
            "divisor identity failed: join gave {d}, local constants gave {via_cv}"
        )));
    }
    let h = height(points)?;
    if d.degree() < h {
        return Err(Error::TheoremBoundViolated(format!(
            "deg D = {} below the height {h}",
            d.degree()
        )));
    }
    Ok(d)
}

/// Per-place table for reporting: valuations, slope, ceiling, `C_v`.
pub fn slope_table(e: &DrinfeldModule, points: &[RatFunc]) -> Result<Vec<SlopeData>> {
    let mut out = Vec::new();
    for v in relevant_places(e, points)? {
        let ord_kappa = e
            .kappas()
            .iter()
            .map(|k| {
                if k.is_zero() {
                    Ok(None)
                } else {
                    ord_at_place(k, &v).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let slope = slope_at_place(e, &v)?;
        out.push(SlopeData {
            ord_kappa,
            ord_t_minus_theta: ord_t_minus_theta(e, &v),
            slope,
            slope_ceil: ceil_i64(slope),
            cv: cv(e, points, &v)?,
            place: v,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::poly::{Poly, Var};
    use rand::{Rng, SeedableRng};

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    fn example_module() -> DrinfeldModule {
        let f = f2();
        let th = RatFunc::theta(&f);
        DrinfeldModule::new(&f, vec![th.inv().unwrap(), RatFunc::one(&f)]).unwrap()
    }

    fn example_points(f: &Fq) -> Vec<RatFunc> {
        let th = RatFunc::theta(f);
        vec![th.clone(), th.add(&RatFunc::one(f))]
    }

    fn theta_place(f: &Fq) -> Place {
        Place::finite(Poly::var_poly(f, Var::Theta))
    }

    #[test]
    fn relevant_places_of_example() {
        let e = example_module();
        let f = e.field().clone();
        let pts = example_points(&f);
        let places = relevant_places(&e, &pts).unwrap();
        let tp1 = Place::finite(Poly::from_reps(&f, Var::Theta, vec![1, 1]));
        assert!(places.contains(&Place::Infinity));
        assert!(places.contains(&theta_place(&f)));
        assert!(places.contains(&tp1));
        assert_eq!(places.len(), 3);
        // constant data leaves only infinity
        let e2 = DrinfeldModule::new(&f, vec![RatFunc::one(&f)]).unwrap();
        let places2 = relevant_places(&e2, &[RatFunc::one(&f)]).unwrap();
        assert_eq!(places2, vec![Place::Infinity]);
    }

    #[test]
    fn slopes_of_example() {
        let e = example_module();
        let f = e.field().clone();
        // at (T): max{(0-(-1))/(4-2), (0-0)/3} = 1/2
        assert_eq!(slope_at_place(&e, &theta_place(&f)).unwrap(), Ratio::new(1, 2));
        // at inf: max{(0-1)/2, (0-(-1))/3} = 1/3
        assert_eq!(slope_at_place(&e, &Place::Infinity).unwrap(), Ratio::new(1, 3));
    }

    #[test]
    fn rank_one_slope() {
        let f = f2();
        let e = DrinfeldModule::new(&f, vec![RatFunc::one(&f)]).unwrap();
        // r = 1: only the (t - T) chord; at inf this is (0 - (-1))/(q - 1)
        assert_eq!(slope_at_place(&e, &Place::Infinity).unwrap(), Ratio::new(1, 1));
        let d = slope_divisor(&e).unwrap();
        assert_eq!(d.coeff(&Place::Infinity), 1);
        assert_eq!(d.entries().count(), 1);
    }

    #[test]
    fn slope_divisor_of_example() {
        let e = example_module();
        let f = e.field().clone();
        let d = slope_divisor(&e).unwrap();
        assert_eq!(d.coeff(&theta_place(&f)), 1);
        assert_eq!(d.coeff(&Place::Infinity), 1);
        assert_eq!(d.entries().count(), 2);
    }

    #[test]
    fn cv_of_example() {
        let e = example_module();
        let f = e.field().clone();
        let pts = example_points(&f);
        assert_eq!(cv(&e, &pts, &theta_place(&f)).unwrap(), -1);
        assert_eq!(cv(&e, &pts, &Place::Infinity).unwrap(), -1);
        // a place outside every support
        let far = Place::finite(Poly::from_reps(&f, Var::Theta, vec![1, 1, 1]));
        assert_eq!(cv(&e, &pts, &far).unwrap(), 0);
    }

    #[test]
    fn masser_divisor_of_example() {
        let e = example_module();
        let f = e.field().clone();
        let pts = example_points(&f);
        let d = masser_divisor(&e, &pts).unwrap();
        assert_eq!(d.coeff(&Place::Infinity), 1);
        assert_eq!(d.coeff(&theta_place(&f)), 1);
        assert_eq!(d.degree(), 2);
    }

    #[test]
    fn hypothesis_violations_are_input_errors() {
        let e = example_module();
        let f = e.field().clone();
        let th = RatFunc::theta(&f);
        assert!(matches!(
            masser_divisor(&e, &[th.clone(), th.clone()]),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            masser_divisor(&e, &[RatFunc::zero(&f)]),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            masser_divisor(&e, &[]),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn zero_height_points_give_slope_divisor() {
        let f = f2();
        let e = DrinfeldModule::new(&f, vec![RatFunc::one(&f)]).unwrap();
        let pts = vec![RatFunc::one(&f)];
        let d = masser_divisor(&e, &pts).unwrap();
        assert_eq!(d, slope_divisor(&e).unwrap());
    }

    pub(crate) fn rand_ratfunc(
        f: &Fq,
        rng: &mut rand_chacha::ChaCha8Rng,
        max_deg: usize,
        allow_fraction: bool,
    ) -> RatFunc {
        let q = f.q();
        loop {
            let num = Poly::from_reps(
                f,
                Var::Theta,
                (0..=rng.gen_range(0..=max_deg)).map(|_| rng.gen_range(0..q)).collect(),
            );
            let den = if allow_fraction {
                Poly::from_reps(
                    f,
                    Var::Theta,
                    (0..=rng.gen_range(0..=max_deg)).map(|_| rng.gen_range(0..q)).collect(),
                )
            } else {
                Poly::one(f, Var::Theta)
            };
            if num.is_zero() || den.is_zero() {
                continue;
            }
            return RatFunc::new(num, den).unwrap();
        }
    }

    fn rand_instance(
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> (DrinfeldModule, Vec<RatFunc>) {
        let fields = [
            Fq::prime(2).unwrap(),
            Fq::prime(3).unwrap(),
            Fq::new(crate::field::FieldDesc { p: 2, e: 2, modulus: Some(vec![1, 1, 1]) })
                .unwrap(),
        ];
        let f = fields[rng.gen_range(0..fields.len())].clone();
        loop {
            let r = rng.gen_range(1..=3);
            let mut kappa: Vec<RatFunc> = (0..r)
                .map(|_| {
                    if rng.gen_bool(0.2) {
                        RatFunc::zero(&f)
                    } else {
                        rand_ratfunc(&f, rng, 2, true)
                    }
                })
                .collect();
            if kappa.last().unwrap().is_zero() {
                *kappa.last_mut().unwrap() = RatFunc::one(&f);
            }
            let e = DrinfeldModule::new(&f, kappa).unwrap();
            let ell = rng.gen_range(1..=3);
            let mut pts = Vec::new();
            for _ in 0..ell {
                pts.push(rand_ratfunc(&f, rng, 2, true));
            }
            pts.dedup();
            if check_points(&pts).is_ok() {
                return (e, pts);
            }
        }
    }

    #[test]
    fn hull_equals_formula_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        for _ in 0..300 {
            let (e, pts) = rand_instance(&mut rng);
            for v in relevant_places(&e, &pts).unwrap() {
                let s = slope_at_place(&e, &v).unwrap();
                let hull = newton_polygon(&e, &v).unwrap().last_edge_slope();
                assert_eq!(s, hull, "slope mismatch at {v}");
            }
        }
    }

    #[test]
    fn divisor_identity_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        for _ in 0..200 {
            let (e, pts) = rand_instance(&mut rng);
            // masser_divisor internally checks the identity and the height
            // bound; reaching Ok is the assertion
            let d = masser_divisor(&e, &pts).unwrap();
            assert!(d.degree() >= height(&pts).unwrap());
        }
    }

    #[test]
    fn equality_when_effective() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(67);
        let mut seen = 0;
        for _ in 0..400 {
            let (e, pts) = rand_instance(&mut rng);
            let dp = div_of_vector(&pts).unwrap();
            let ds = slope_divisor(&e).unwrap();
            let d = masser_divisor(&e, &pts).unwrap();
            if dp.add(&ds).neg().is_effective() {
                seen += 1;
                assert_eq!(d.degree(), height(&pts).unwrap());
            }
        }
        assert!(seen > 0, "no effective cases sampled");
    }

    #[test]
    fn twist_covariance_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for _ in 0..100 {
            let (e, pts) = rand_instance(&mut rng);
            let f = e.field().clone();
            let u = rand_ratfunc(&f, &mut rng, 2, true);
            let e2 = e.twist_by_unit(&u).unwrap();
            let ds = slope_divisor(&e).unwrap();
            let ds2 = slope_divisor(&e2).unwrap();
            let du = div_of_vector(std::slice::from_ref(&u)).unwrap();
            assert_eq!(ds2, ds.sub(&du), "slope divisor twist covariance");
            // and the full bound divisor moves the same way
            let d = masser_divisor(&e, &pts).unwrap();
            let pts2: Vec<RatFunc> = pts.iter().map(|p| p.mul(&u)).collect();
            let d2 = masser_divisor(&e2, &pts2).unwrap();
            assert_eq!(d2, d.sub(&du));
            assert_eq!(d2.degree(), d.degree());
        }
    }
}
