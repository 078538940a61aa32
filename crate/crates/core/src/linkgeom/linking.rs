//! Linking numbers by signed crossings in exact generic projections.
//!
//! A projection direction is generic for a pair of curves when no
//! segment is parallel to it and every projected crossing between the
//! two curves is transverse and interior to both segments. Directions
//! are drawn from a fixed deterministic sequence (coordinate axes, then
//! points on the moment curve), advancing past non-generic ones; the
//! degeneracy tests are exact, so a crossing sign is never corrupted by
//! rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::curve::{pushoff, GeomError, NormalField, PolyCurve3};
use super::vec3::QVec3;

/// The fixed deterministic candidate sequence of projection directions.
pub fn direction_sequence(count: usize) -> Vec<QVec3> {
    let mut dirs = vec![
        QVec3::from_ints(0, 0, 1),
        QVec3::from_ints(0, 1, 0),
        QVec3::from_ints(1, 0, 0),
    ];
    let mut k: i64 = 1;
    while dirs.len() < count {
        dirs.push(QVec3::from_ints(1, k, k * k));
        k += 1;
    }
    dirs.truncate(count);
    dirs
}

const DIRECTION_ATTEMPTS: usize = 64;

/// Exact projection data for one direction: a dual basis giving planar
/// coordinates and a height, positively oriented.
struct Frame {
    plane_u: QVec3,
    plane_v: QVec3,
    height: QVec3,
}

impl Frame {
    fn for_direction(d: &QVec3) -> Frame {
        assert!(!d.is_zero(), "projection direction must be nonzero");
        let axes = [
            QVec3::from_ints(1, 0, 0),
            QVec3::from_ints(0, 1, 0),
            QVec3::from_ints(0, 0, 1),
        ];
        let axis = axes
            .iter()
            .find(|a| !a.cross(d).is_zero())
            .expect("some axis is not parallel to d");
        let u = axis.cross(d);
        let v = d.cross(&u);
        // dual basis of (u, v, d): projections are dot products with it
        let det = u.triple(&v, d);
        debug_assert!(det.is_positive());
        Frame {
            plane_u: v.cross(d).scale(&det.recip()),
            plane_v: d.cross(&u).scale(&det.recip()),
            height: u.cross(&v).scale(&det.recip()),
        }
    }

    fn project(&self, p: &QVec3) -> (BigRational, BigRational) {
        (self.plane_u.dot(p), self.plane_v.dot(p))
    }

    fn height(&self, p: &QVec3) -> BigRational {
        self.height.dot(p)
    }
}

fn cross2(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn sub2(
    a: &(BigRational, BigRational),
    b: &(BigRational, BigRational),
) -> (BigRational, BigRational) {
    (&a.0 - &b.0, &a.1 - &b.1)
}

enum PairCrossing {
    None,
    /// Transverse interior crossing with the given sign.
    Proper(i64),
    /// Vertex-on-segment or overlap in projection.
    Degenerate,
}

/// Crossing contribution of one segment pair in a given frame.
fn segment_pair_crossing(
    frame: &Frame,
    a0: &QVec3,
    a1: &QVec3,
    b0: &QVec3,
    b1: &QVec3,
) -> PairCrossing {
    let p0 = frame.project(a0);
    let p1 = frame.project(a1);
    let q0 = frame.project(b0);
    let q1 = frame.project(b1);
    let e = sub2(&p1, &p0);
    let f = sub2(&q1, &q0);
    let denom = cross2(&e, &f);
    let r = sub2(&q0, &p0);
    if denom.is_zero() {
        // parallel projected segments: collinear with overlap is degenerate
        if !cross2(&r, &e).is_zero() {
            return PairCrossing::None;
        }
        let len2 = &e.0 * &e.0 + &e.1 * &e.1;
        if len2.is_zero() {
            return PairCrossing::Degenerate; // segment projects to a point
        }
        let dot = |a: &(BigRational, BigRational), b: &(BigRational, BigRational)| {
            &a.0 * &b.0 + &a.1 * &b.1
        };
        let t0 = dot(&r, &e) / &len2;
        let t1 = dot(&sub2(&q1, &p0), &e) / &len2;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        if hi >= BigRational::zero() && lo <= BigRational::one() {
            return PairCrossing::Degenerate;
        }
        return PairCrossing::None;
    }
    let t = cross2(&r, &f) / &denom;
    let u = cross2(&r, &e) / &denom;
    let zero = BigRational::zero();
    let one = BigRational::one();
    if t < zero || t > one || u < zero || u > one {
        return PairCrossing::None;
    }
    if t.is_zero() || t == one || u.is_zero() || u == one {
        return PairCrossing::Degenerate;
    }
    // heights of the two strands at the crossing point
    let ha0 = frame.height(a0);
    let ha1 = frame.height(a1);
    let hb0 = frame.height(b0);
    let hb1 = frame.height(b1);
    let ha = &ha0 + &(&t * &(&ha1 - &ha0));
    let hb = &hb0 + &(&u * &(&hb1 - &hb0));
    debug_assert!(ha != hb, "equal heights mean the curves intersect");
    // sign is the orientation of (over-tangent, under-tangent)
    let orient = cross2(&e, &f);
    let sign = if ha > hb {
        if orient.is_positive() {
            1
        } else {
            -1
        }
    } else if orient.is_positive() {
        -1
    } else {
        1
    };
    PairCrossing::Proper(sign)
}

/// Sum of crossing signs between the two curves in the projection along
/// `direction`, or `None` when the direction is not generic for them.
fn try_crossing_sum(k1: &PolyCurve3, k2: &PolyCurve3, direction: &QVec3) -> Option<i64> {
    let frame = Frame::for_direction(direction);
    // every segment of both curves must survive projection
    for (s, e) in k1.segments().chain(k2.segments()) {
        let p = frame.project(s);
        let q = frame.project(e);
        if p == q {
            return None;
        }
    }
    let mut sum = 0i64;
    for (a0, a1) in k1.segments() {
        for (b0, b1) in k2.segments() {
            match segment_pair_crossing(&frame, a0, a1, b0, b1) {
                PairCrossing::None => {}
                PairCrossing::Proper(s) => sum += s,
                PairCrossing::Degenerate => return None,
            }
        }
    }
    Some(sum)
}

/// Signed crossing sum in one prescribed direction; errors when the
/// direction is not generic for this pair.
pub fn crossing_sum_in_direction(
    k1: &PolyCurve3,
    k2: &PolyCurve3,
    direction: &QVec3,
) -> Result<i64, GeomError> {
    k1.disjoint_from(k2)?;
    try_crossing_sum(k1, k2, direction).ok_or(GeomError::NoGenericDirection(1))
}

/// Linking number of two disjoint curves: half the signed crossing
/// count between them in the first generic projection.
pub fn linking_number(k1: &PolyCurve3, k2: &PolyCurve3) -> Result<i64, GeomError> {
    k1.disjoint_from(k2)?;
    for d in direction_sequence(DIRECTION_ATTEMPTS) {
        if let Some(sum) = try_crossing_sum(k1, k2, &d) {
            debug_assert!(
                sum % 2 == 0,
                "inter-curve crossing signs sum to an even number"
            );
            return Ok(sum / 2);
        }
    }
    Err(GeomError::NoGenericDirection(DIRECTION_ATTEMPTS))
}

fn default_eps() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(8))
}

/// Self-linking of `curve` with respect to the framing induced by
/// `field`: the linking number with the pushoff, computed at two scales
/// (`eps` and `eps/2`) which must agree.
pub fn self_linking(curve: &PolyCurve3, field: &NormalField) -> Result<i64, GeomError> {
    let coarse = pushoff(curve, field, &default_eps())?;
    let lk_coarse = linking_number(curve, &coarse.curve)?;
    let finer_eps = coarse.eps / BigRational::from_integer(BigInt::from(2));
    let fine = pushoff(curve, field, &finer_eps)?;
    let lk_fine = linking_number(curve, &fine.curve)?;
    if lk_coarse != lk_fine {
        return Err(GeomError::UnstablePushoff {
            coarse: lk_coarse,
            fine: lk_fine,
        });
    }
    Ok(lk_coarse)
}

/// Does the framing induced by `field` extend over a Seifert surface?
/// Equivalent to the degree of the comparison map being odd, i.e. to
/// odd self-linking relative to the Seifert framing.
pub fn extends_over_seifert(curve: &PolyCurve3, field: &NormalField) -> Result<bool, GeomError> {
    Ok(self_linking(curve, field)? % 2 != 0)
}

/// Class in `π1(SO(3)) = Z/2` of the framing loop along the boundary of
/// a once-bounded surface of Euler characteristic `chi_f` with
/// comparison degree `deg_phi`: `(chi_f + deg_phi) mod 2`. Extension
/// over the surface is possible exactly when the class vanishes.
///
/// `chi_f` must be odd (`1 − 2·genus` for a connected orientable
/// surface with one boundary circle).
pub fn so3_loop_class(chi_f: i64, deg_phi: i64) -> Result<u8, GeomError> {
    if chi_f.rem_euclid(2) == 0 {
        return Err(GeomError::EvenEulerCharacteristic(chi_f));
    }
    Ok(((chi_f + deg_phi).rem_euclid(2)) as u8)
}
