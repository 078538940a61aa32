//! Closed polygonal curves, normal fields, and pushoffs.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::vec3::QVec3;
use crate::textfmt::{ParseError, Tokens};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("a closed polygonal curve needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("consecutive vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("curve backtracks at vertex {0} (adjacent segments overlap)")]
    Backtrack(usize),
    #[error("segments {0} and {1} of the curve intersect")]
    SelfIntersection(usize, usize),
    #[error("curves intersect (segment {0} of the first, {1} of the second)")]
    CurvesIntersect(usize, usize),
    #[error("normal field has {found} vectors for a curve with {expected} vertices")]
    FieldLength { expected: usize, found: usize },
    #[error("normal field vanishes at vertex {0}")]
    ZeroNormal(usize),
    #[error("normal field at vertex {0} is parallel to the incident edge average")]
    ParallelNormal(usize),
    #[error("no embedded disjoint pushoff found after {0} halvings of eps")]
    NoValidEps(usize),
    #[error("pushoff scale not fine enough: linking {coarse} at eps, {fine} at eps/2")]
    UnstablePushoff { coarse: i64, fine: i64 },
    #[error("no generic projection direction among {0} candidates")]
    NoGenericDirection(usize),
    #[error("eps must be positive")]
    NonPositiveEps,
    #[error("Euler characteristic {0} is even; a connected surface with one boundary circle has odd characteristic")]
    EvenEulerCharacteristic(i64),
}

/// Do the closed segments `[a0,a1]` and `[b0,b1]` share a point?
/// Exact, assuming both segments are nondegenerate.
pub(crate) fn segments_intersect(a0: &QVec3, a1: &QVec3, b0: &QVec3, b1: &QVec3) -> bool {
    let d1 = a1 - a0;
    let d2 = b1 - b0;
    let r = b0 - a0;
    let cross = d1.cross(&d2);
    if cross.is_zero() {
        // parallel lines; intersection needs collinearity plus overlap
        if !r.cross(&d1).is_zero() {
            return false;
        }
        let len2 = d1.norm_squared();
        let t0 = r.dot(&d1) / &len2;
        let t1 = (b1 - a0).dot(&d1) / &len2;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        hi >= BigRational::zero() && lo <= BigRational::one()
    } else {
        // skew unless coplanar
        if !r.triple(&d1, &d2).is_zero() {
            return false;
        }
        let denom = cross.norm_squared();
        let t = r.cross(&d2).dot(&cross) / &denom;
        let u = r.cross(&d1).dot(&cross) / &denom;
        let in01 = |v: &BigRational| *v >= BigRational::zero() && *v <= BigRational::one();
        in01(&t) && in01(&u)
    }
}

/// Closed polygonal curve with exact rational vertices, oriented by
/// vertex order; the last vertex connects back to the first.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyCurve3 {
    name: String,
    vertices: Vec<QVec3>,
}

impl PolyCurve3 {
    pub fn new(name: impl Into<String>, vertices: Vec<QVec3>) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices(n));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i] == vertices[j] {
                return Err(GeomError::DuplicateVertex(i, j));
            }
        }
        // adjacent segments may share only their common endpoint:
        // collinear opposite directions means an overlap
        for i in 0..n {
            let prev = &vertices[i];
            let mid = &vertices[(i + 1) % n];
            let next = &vertices[(i + 2) % n];
            let u = mid - prev;
            let w = next - mid;
            if u.cross(&w).is_zero() && u.dot(&w).is_negative() {
                return Err(GeomError::Backtrack((i + 1) % n));
            }
        }
        // non-adjacent segment pairs must be disjoint
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                let (a0, a1) = (&vertices[i], &vertices[(i + 1) % n]);
                let (b0, b1) = (&vertices[j], &vertices[(j + 1) % n]);
                if segments_intersect(a0, a1, b0, b1) {
                    return Err(GeomError::SelfIntersection(i, j));
                }
            }
        }
        Ok(PolyCurve3 {
            name: name.into(),
            vertices,
        })
    }

    pub fn from_ints(name: impl Into<String>, pts: &[(i64, i64, i64)]) -> Result<Self, GeomError> {
        let vertices = pts
            .iter()
            .map(|&(x, y, z)| QVec3::from_ints(x, y, z))
            .collect();
        Self::new(name, vertices)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[QVec3] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &QVec3 {
        &self.vertices[i % self.vertices.len()]
    }

    /// Oriented segments `(start, end)` in curve order.
    pub fn segments(&self) -> impl Iterator<Item = (&QVec3, &QVec3)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Same curve traversed backwards.
    pub fn reversed(&self) -> PolyCurve3 {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PolyCurve3 {
            name: format!("{}-rev", self.name),
            vertices,
        }
    }

    pub fn translated(&self, offset: &QVec3) -> PolyCurve3 {
        PolyCurve3 {
            name: self.name.clone(),
            vertices: self.vertices.iter().map(|v| v + offset).collect(),
        }
    }

    /// Exact disjointness check against another curve.
    pub fn disjoint_from(&self, other: &PolyCurve3) -> Result<(), GeomError> {
        for (i, (a0, a1)) in self.segments().enumerate() {
            for (j, (b0, b1)) in other.segments().enumerate() {
                if segments_intersect(a0, a1, b0, b1) {
                    return Err(GeomError::CurvesIntersect(i, j));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyCurve3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PolyCurve3({:?}, {} vertices)",
            self.name,
            self.vertex_count()
        )
    }
}

/// Nowhere-zero vector field along a curve, one vector per vertex.
/// Unit length is not required: only the direction class matters, and
/// normalizing would force irrational coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct NormalField {
    vectors: Vec<QVec3>,
}

impl NormalField {
    /// Validate against the owning curve: vectors are nowhere zero and
    /// not parallel to the average of the incident edge directions, so
    /// the pushoff leaves the curve at every vertex.
    pub fn new(curve: &PolyCurve3, vectors: Vec<QVec3>) -> Result<Self, GeomError> {
        let n = curve.vertex_count();
        if vectors.len() != n {
            return Err(GeomError::FieldLength {
                expected: n,
                found: vectors.len(),
            });
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.is_zero() {
                return Err(GeomError::ZeroNormal(i));
            }
            let prev = curve.vertex(i + n - 1);
            let here = curve.vertex(i);
            let next = curve.vertex(i + 1);
            let average = &(here - prev) + &(next - here);
            if v.cross(&average).is_zero() {
                return Err(GeomError::ParallelNormal(i));
            }
        }
        Ok(NormalField { vectors })
    }

    pub fn vectors(&self) -> &[QVec3] {
        &self.vectors
    }
}

impl fmt::Debug for NormalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalField({} vectors)", self.vectors.len())
    }
}

/// A pushoff curve together with the scale that produced it.
#[derive(Debug, Clone)]
pub struct Pushoff {
    pub curve: PolyCurve3,
    pub eps: BigRational,
}

/// Vertexwise pushoff `K + eps·n`, halving `eps` (at most 20 times)
/// until the result is an embedded curve disjoint from `K`.
pub fn pushoff(
    curve: &PolyCurve3,
    field: &NormalField,
    eps: &BigRational,
) -> Result<Pushoff, GeomError> {
    if field.vectors.len() != curve.vertex_count() {
        return Err(GeomError::FieldLength {
            expected: curve.vertex_count(),
            found: field.vectors.len(),
        });
    }
    if !eps.is_positive() {
        return Err(GeomError::NonPositiveEps);
    }
    let mut eps = eps.clone();
    let halvings = 20;
    for _ in 0..=halvings {
        let vertices: Vec<QVec3> = curve
            .vertices()
            .iter()
            .zip(&field.vectors)
            .map(|(v, n)| v + &n.scale(&eps))
            .collect();
        if let Ok(pushed) = PolyCurve3::new(format!("{}-pushoff", curve.name()), vertices) {
            if pushed.disjoint_from(curve).is_ok() {
                return Ok(Pushoff { curve: pushed, eps });
            }
        }
        eps /= BigRational::from_integer(BigInt::from(2));
    }
    Err(GeomError::NoValidEps(halvings))
}

/// Serialize a curve (and optionally its normal field) in the curve
/// file format: `curve <name> <k>`, `k` vertex lines of three
/// rationals, then optionally `normal <name>` and `k` vector lines.
pub fn curve_file_text(curve: &PolyCurve3, field: Option<&NormalField>) -> String {
    let mut out = format!("curve {} {}\n", curve.name(), curve.vertex_count());
    for v in curve.vertices() {
        out.push_str(&format!("{v}\n"));
    }
    if let Some(f) = field {
        out.push_str(&format!("normal {}\n", curve.name()));
        for v in f.vectors() {
            out.push_str(&format!("{v}\n"));
        }
    }
    out
}

/// Parse the curve file format.
pub fn parse_curve_file(input: &str) -> Result<(PolyCurve3, Option<NormalField>), ParseError> {
    let mut toks = Tokens::new(input);
    toks.expect("curve")?;
    let name = toks.next_token("curve name")?.to_string();
    let k: usize = toks.next_parsed("vertex count")?;
    let read_vec = |toks: &mut Tokens<'_>| -> Result<QVec3, ParseError> {
        let mut coords = Vec::with_capacity(3);
        for _ in 0..3 {
            let tok = toks.next_token("rational coordinate")?;
            coords.push(QVec3::parse_rational(tok, toks.current_line())?);
        }
        let z = coords.pop().expect("three coords");
        let y = coords.pop().expect("three coords");
        let x = coords.pop().expect("three coords");
        Ok(QVec3::new(x, y, z))
    };
    let mut vertices = Vec::with_capacity(k);
    for _ in 0..k {
        vertices.push(read_vec(&mut toks)?);
    }
    let curve = PolyCurve3::new(name.clone(), vertices)
        .map_err(|e| ParseError::new(toks.current_line(), e.to_string()))?;
    if toks.is_empty() {
        return Ok((curve, None));
    }
    toks.expect("normal")?;
    let field_name = toks.next_token("curve name")?;
    if field_name != name {
        return Err(ParseError::new(
            toks.current_line(),
            format!("normal field names {field_name:?} but the curve is {name:?}"),
        ));
    }
    let mut vectors = Vec::with_capacity(k);
    for _ in 0..k {
        vectors.push(read_vec(&mut toks)?);
    }
    toks.expect_end()?;
    let field = NormalField::new(&curve, vectors)
        .map_err(|e| ParseError::new(toks.current_line(), e.to_string()))?;
    Ok((curve, Some(field)))
}
