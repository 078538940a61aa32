//! Reference curves: split pairs, a polygonal Hopf link, and planar
//! unknots carrying normal fields with a prescribed number of twists.

use num_rational::BigRational;

use super::curve::{GeomError, NormalField, PolyCurve3};
use super::vec3::QVec3;

/// Two unit squares in parallel planes at distance 10: a split pair
/// with linking number zero.
pub fn split_pair() -> (PolyCurve3, PolyCurve3) {
    let a = PolyCurve3::from_ints("splitA", &[(1, 1, 0), (-1, 1, 0), (-1, -1, 0), (1, -1, 0)])
        .expect("square is embedded");
    let b = a.translated(&QVec3::from_ints(0, 0, 10));
    (a, b)
}

/// A polygonal Hopf link with linking number +1: a square in the
/// `z = 0` plane around the origin, threaded by a rectangle in the
/// `y = 0` plane crossing the square's disk once.
pub fn hopf_pair() -> (PolyCurve3, PolyCurve3) {
    let a = PolyCurve3::from_ints("hopfA", &[(1, 1, 0), (-1, 1, 0), (-1, -1, 0), (1, -1, 0)])
        .expect("square is embedded");
    let b = PolyCurve3::new(
        "hopfB",
        vec![
            QVec3::from_ratios((1, 2), (0, 1), (-2, 1)),
            QVec3::from_ratios((1, 2), (0, 1), (2, 1)),
            QVec3::from_ints(3, 0, 2),
            QVec3::from_ints(3, 0, -2),
        ],
    )
    .expect("rectangle is embedded");
    (a, b)
}

/// Rational near-unit direction table at angles close to `2πj/16`,
/// increasing counterclockwise.
const DIRECTIONS_16: [((i64, i64), (i64, i64)); 16] = [
    ((1, 1), (0, 1)),
    ((12, 13), (5, 13)),
    ((20, 29), (21, 29)),
    ((5, 13), (12, 13)),
    ((0, 1), (1, 1)),
    ((-5, 13), (12, 13)),
    ((-20, 29), (21, 29)),
    ((-12, 13), (5, 13)),
    ((-1, 1), (0, 1)),
    ((-12, 13), (-5, 13)),
    ((-20, 29), (-21, 29)),
    ((-5, 13), (-12, 13)),
    ((0, 1), (-1, 1)),
    ((5, 13), (-12, 13)),
    ((20, 29), (-21, 29)),
    ((12, 13), (-5, 13)),
];

fn ratio(r: (i64, i64)) -> BigRational {
    BigRational::new(r.0.into(), r.1.into())
}

/// Planar 16-gon vertices around the origin, counterclockwise.
fn sixteen_gon() -> Vec<QVec3> {
    let pts: [(i64, i64, i64, i64); 16] = [
        (2, 1, 0, 1),
        (3, 2, 1, 2),
        (1, 1, 1, 1),
        (1, 2, 3, 2),
        (0, 1, 2, 1),
        (-1, 2, 3, 2),
        (-1, 1, 1, 1),
        (-3, 2, 1, 2),
        (-2, 1, 0, 1),
        (-3, 2, -1, 2),
        (-1, 1, -1, 1),
        (-1, 2, -3, 2),
        (0, 1, -2, 1),
        (1, 2, -3, 2),
        (1, 1, -1, 1),
        (3, 2, -1, 2),
    ];
    pts.iter()
        .map(|&(xn, xd, yn, yd)| QVec3::from_ratios((xn, xd), (yn, yd), (0, 1)))
        .collect()
}

/// Planar polygonal unknot with a normal field performing `twists` full
/// rotations (in the radial/vertical plane) along one traversal. The
/// self-linking of the field equals `twists`.
///
/// `|twists|` must be at most 7 so that consecutive field directions
/// rotate by less than a half turn, which pins the rotation count.
pub fn twisted_unknot(twists: i64) -> Result<(PolyCurve3, NormalField), GeomError> {
    assert!(
        twists.abs() <= 7,
        "at most 7 twists are representable on 16 vertices"
    );
    let vertices = sixteen_gon();
    let curve = PolyCurve3::new(format!("unknot-twist{twists}"), vertices)?;
    let z_axis = QVec3::from_ints(0, 0, 1);
    // clockwise rotation in the (radial, z) frame along the
    // counterclockwise curve yields self-linking +1 per turn
    let vectors: Vec<QVec3> = curve
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let j = (-twists * i as i64).rem_euclid(16) as usize;
            let (a, b) = DIRECTIONS_16[j];
            &v.scale(&ratio(a)) + &z_axis.scale(&ratio(b))
        })
        .collect();
    let field = NormalField::new(&curve, vectors)?;
    Ok((curve, field))
}
