//! Floating-point Gauss-integral oracle for linking numbers.
//!
//! The double integral over a pair of segments has a closed form (the
//! signed solid angle of the associated spherical quadrilateral, as in
//! the standard writhe computations for polygonal chains); summing it
//! over all segment pairs of two disjoint closed curves approximates
//! the linking number. This is the only floating-point code path in the
//! crate and exists purely as an independent cross-check of the exact
//! signed-crossing route.

use std::f64::consts::PI;

use super::curve::{GeomError, PolyCurve3};

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn normalize(a: [f64; 3]) -> Option<[f64; 3]> {
    let n = dot(a, a).sqrt();
    if n < 1e-12 {
        return None;
    }
    Some([a[0] / n, a[1] / n, a[2] / n])
}

fn asin_clamped(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).asin()
}

/// Gauss integral of one ordered segment pair, `(1/4π)·Ω` with `Ω` the
/// signed solid angle. Degenerate (coplanar or parallel) configurations
/// contribute zero, matching the vanishing of the integrand there.
fn segment_pair_gauss(p1: [f64; 3], p2: [f64; 3], p3: [f64; 3], p4: [f64; 3]) -> f64 {
    let r12 = sub(p2, p1);
    let r34 = sub(p4, p3);
    let r13 = sub(p3, p1);
    let r14 = sub(p4, p1);
    let r23 = sub(p3, p2);
    let r24 = sub(p4, p2);
    let orientation = dot(cross(r34, r12), r13);
    let (Some(n1), Some(n2), Some(n3), Some(n4)) = (
        normalize(cross(r13, r14)),
        normalize(cross(r14, r24)),
        normalize(cross(r24, r23)),
        normalize(cross(r23, r13)),
    ) else {
        return 0.0;
    };
    let omega = asin_clamped(dot(n1, n2))
        + asin_clamped(dot(n2, n3))
        + asin_clamped(dot(n3, n4))
        + asin_clamped(dot(n4, n1));
    omega * orientation.signum() / (4.0 * PI)
}

/// Numerical linking number of two disjoint curves via the pairwise
/// closed-form Gauss integral. Within 0.1 of the exact value on all
/// valid inputs of the test corpus.
pub fn gauss_linking(k1: &PolyCurve3, k2: &PolyCurve3) -> Result<f64, GeomError> {
    k1.disjoint_from(k2)?;
    let mut total = 0.0;
    for (a0, a1) in k1.segments() {
        for (b0, b1) in k2.segments() {
            total += segment_pair_gauss(a0.to_f64(), a1.to_f64(), b0.to_f64(), b1.to_f64());
        }
    }
    Ok(total)
}
