//! Generalized circles (circles and lines) as Hermitian coefficient triples.
//!
//! A triple (p, q, s) with p, s real and q complex represents the locus
//!
//! ```text
//! p·z·z̄ + q̄·z + q·z̄ + s = 0
//! ```
//!
//! which is a circle for p ≠ 0 (center −q/p, radius² = (|q|² − ps)/p²) and a
//! line for p = 0. Storing the triple lets the Möbius action be a single
//! Hermitian congruence with no circle/line special cases.

use crate::moebius::{MoebiusMap, SpherePoint};
use crate::{tol, Error, Result};
use num_complex::Complex64 as C;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Circle-or-line, normalized so |q|² − ps = 1, with p ≥ 0 and, for lines,
/// the first nonzero coordinate of q positive.
#[derive(Debug, Clone, Copy)]
pub struct GeneralizedCircle {
    p: f64,
    q: C,
    s: f64,
}

/// Which complementary region of a [`GeneralizedCircle`] is selected.
/// `Interior` is the region where the defining form is negative; for a
/// circle (p > 0) that is the bounded disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Interior,
    Exterior,
}

/// Circle with a chosen complementary side.
#[derive(Debug, Clone, Copy)]
pub struct OrientedCircle {
    pub circle: GeneralizedCircle,
    pub side: Side,
}

impl OrientedCircle {
    pub fn interior(circle: GeneralizedCircle) -> Self {
        Self { circle, side: Side::Interior }
    }

    pub fn exterior(circle: GeneralizedCircle) -> Self {
        Self { circle, side: Side::Exterior }
    }

    /// Strict membership in the selected open region.
    pub fn contains(&self, z: SpherePoint) -> bool {
        let v = self.circle.side_of(z);
        match self.side {
            Side::Interior => v < 0.0,
            Side::Exterior => v > 0.0,
        }
    }
}

/// Mutual position of two generalized circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleRelation {
    DisjointExternal,
    DisjointNested,
    Tangent,
    Crossing,
}

impl GeneralizedCircle {
    /// Circle of the given center and radius.
    pub fn from_center_radius(center: C, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Self {
            p: 1.0 / radius,
            q: -center / radius,
            s: (center.norm_sqr() - radius * radius) / radius,
        })
    }

    /// Line {z : 2 Re(q̄ z) + s = 0}; q must be nonzero.
    pub fn from_line(q: C, s: f64) -> Result<Self> {
        if q.norm_sqr() == 0.0 || !q.is_finite() || !s.is_finite() {
            return Err(Error::DegenerateCircle("line with zero normal"));
        }
        Self::from_triple(0.0, q, s)
    }

    /// Raw Hermitian triple; rejected unless |q|² − ps > 0.
    pub fn from_triple(p: f64, q: C, s: f64) -> Result<Self> {
        let disc = q.norm_sqr() - p * s;
        if !(disc > 0.0) || !disc.is_finite() {
            return Err(Error::DegenerateCircle("non-positive discriminant"));
        }
        let scale = disc.sqrt();
        let mut c = Self { p: p / scale, q: q / scale, s: s / scale };
        // canonical sign: p > 0 for circles; for lines, first nonzero q coord positive
        let flip = if c.p.abs() > 1e-14 {
            c.p < 0.0
        } else {
            c.p = 0.0;
            if c.q.re.abs() > 1e-14 {
                c.q.re < 0.0
            } else {
                c.q.im < 0.0
            }
        };
        if flip {
            c.p = -c.p;
            c.q = -c.q;
            c.s = -c.s;
        }
        Ok(c)
    }

    /// Circle or line through three distinct points.
    pub fn through_points(z1: C, z2: C, z3: C) -> Result<Self> {
        // collinear test via cross product
        let cross = ((z2 - z1) * (z3 - z1).conj()).im;
        let scale = (z2 - z1).norm() * (z3 - z1).norm();
        if cross.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
            let dir = z2 - z1;
            let normal = C::new(-dir.im, dir.re);
            let s = -2.0 * (normal.conj() * z1).re;
            return Self::from_line(normal, s);
        }
        // circumcenter from perpendicular bisectors
        let d = 2.0 * (z1.re * (z2.im - z3.im) + z2.re * (z3.im - z1.im) + z3.re * (z1.im - z2.im));
        let ux = (z1.norm_sqr() * (z2.im - z3.im)
            + z2.norm_sqr() * (z3.im - z1.im)
            + z3.norm_sqr() * (z1.im - z2.im))
            / d;
        let uy = (z1.norm_sqr() * (z3.re - z2.re)
            + z2.norm_sqr() * (z1.re - z3.re)
            + z3.norm_sqr() * (z2.re - z1.re))
            / d;
        let center = C::new(ux, uy);
        Self::from_center_radius(center, (z1 - center).norm())
    }

    pub fn is_line(&self) -> bool {
        self.p == 0.0
    }

    pub fn triple(&self) -> (f64, C, f64) {
        (self.p, self.q, self.s)
    }

    /// Center of a circle (`None` for lines).
    pub fn center(&self) -> Option<C> {
        (!self.is_line()).then(|| -self.q / self.p)
    }

    /// Radius of a circle (`None` for lines). Equals 1/p after normalization.
    pub fn radius(&self) -> Option<f64> {
        (!self.is_line()).then(|| 1.0 / self.p)
    }

    /// Value of the defining Hermitian form at a finite point.
    pub fn form(&self, z: C) -> f64 {
        self.p * z.norm_sqr() + 2.0 * (self.q.conj() * z).re + self.s
    }

    /// Signed side of the form at a sphere point; ∞ lies on every line and
    /// in the exterior of every circle.
    pub fn side_of(&self, z: SpherePoint) -> f64 {
        match z {
            SpherePoint::Finite(z) => self.form(z),
            SpherePoint::Infinity => {
                if self.is_line() {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    pub fn contains_point(&self, z: SpherePoint, tolerance: f64) -> bool {
        match z {
            SpherePoint::Finite(z) => {
                // scale-aware incidence: normalize by the form's local magnitude
                let scale = self.p * z.norm_sqr() + 2.0 * self.q.norm() * z.norm() + self.s.abs();
                self.form(z).abs() <= tolerance * scale.max(1.0)
            }
            SpherePoint::Infinity => self.is_line(),
        }
    }

    /// Parametrized point for circles: center + radius·e^{iθ}.
    pub fn point_at(&self, theta: f64) -> Result<C> {
        let center = self.center().ok_or(Error::DegenerateCircle("point_at on a line"))?;
        Ok(center + C::from_polar(self.radius().unwrap(), theta))
    }

    /// Image under a Möbius map, computed as the Hermitian congruence
    /// transform of the coefficient triple by the inverse map. Exact on
    /// circle-to-line transitions up to rounding (tiny p is snapped to 0).
    pub fn transform(&self, m: &MoebiusMap) -> GeneralizedCircle {
        let inv = m.inverse();
        // H' = (M⁻¹)* H (M⁻¹) with H = [[p, q], [q̄, s]]
        let (a, b, c, d) = (inv.a, inv.b, inv.c, inv.d);
        let p = C::new(self.p, 0.0);
        let s = C::new(self.s, 0.0);
        let q = self.q;
        // column action first: H (M⁻¹)
        let h11 = p * a + q * c;
        let h12 = p * b + q * d;
        let h21 = q.conj() * a + s * c;
        let h22 = q.conj() * b + s * d;
        // then (M⁻¹)^* on the left; entry (1,2) of H is the q coefficient
        let mut p2 = (a.conj() * h11 + c.conj() * h21).re;
        let q2 = a.conj() * h12 + c.conj() * h22;
        let s2 = (b.conj() * h12 + d.conj() * h22).re;
        let scale = p2.abs().max(q2.norm()).max(s2.abs());
        if p2.abs() < 1e-12 * scale {
            p2 = 0.0;
        }
        GeneralizedCircle::from_triple(p2, q2, s2)
            .expect("Möbius congruence preserves the discriminant")
    }
}

impl Serialize for GeneralizedCircle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(if self.is_line() { 1 } else { 2 }))?;
        if let (Some(center), Some(radius)) = (self.center(), self.radius()) {
            map.serialize_entry("center", &[center.re, center.im])?;
            map.serialize_entry("radius", &radius)?;
        } else {
            #[derive(Serialize)]
            struct LineRepr {
                p: f64,
                q: [f64; 2],
                s: f64,
            }
            map.serialize_entry(
                "line",
                &LineRepr { p: 0.0, q: [self.q.re, self.q.im], s: self.s },
            )?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for GeneralizedCircle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct LineRepr {
            #[allow(dead_code)]
            #[serde(default)]
            p: f64,
            q: [f64; 2],
            s: f64,
        }
        #[derive(Deserialize)]
        enum Repr {
            #[serde(rename = "line")]
            Line(LineRepr),
            #[serde(untagged)]
            Circle { center: [f64; 2], radius: f64 },
        }
        match Repr::deserialize(d)? {
            Repr::Circle { center, radius } => {
                GeneralizedCircle::from_center_radius(C::new(center[0], center[1]), radius)
                    .map_err(D::Error::custom)
            }
            Repr::Line(l) => GeneralizedCircle::from_line(C::new(l.q[0], l.q[1]), l.s)
                .map_err(D::Error::custom),
        }
    }
}

/// Signed inversive product of two normalized triples. For circles with
/// centers z₁, z₂ and radii r₁, r₂ this equals
/// (|z₁ − z₂|² − r₁² − r₂²) / (2 r₁ r₂); it is > 1 for externally disjoint
/// pairs and < −1 for nested disjoint pairs, and is invariant under every
/// Möbius map.
pub fn inversive_product(c1: &GeneralizedCircle, c2: &GeneralizedCircle) -> f64 {
    let (p1, q1, s1) = c1.triple();
    let (p2, q2, s2) = c2.triple();
    (p1 * s2 + p2 * s1 - 2.0 * (q1 * q2.conj()).re) / 2.0
}

/// Möbius-invariant inversive distance |·| of the signed product: δ > 1 iff
/// the circles are disjoint (nested or external), δ < 1 iff they cross,
/// δ = 1 iff they are tangent.
pub fn inversive_distance(c1: &GeneralizedCircle, c2: &GeneralizedCircle) -> f64 {
    inversive_product(c1, c2).abs()
}

/// Classifies the mutual position of two generalized circles, with the
/// tangency band controlled by `tolerance`.
pub fn circles_relation(
    c1: &GeneralizedCircle,
    c2: &GeneralizedCircle,
    tolerance: f64,
) -> CircleRelation {
    let i = inversive_product(c1, c2);
    if (i.abs() - 1.0).abs() <= tolerance {
        CircleRelation::Tangent
    } else if i.abs() < 1.0 {
        CircleRelation::Crossing
    } else if i > 1.0 {
        CircleRelation::DisjointExternal
    } else {
        CircleRelation::DisjointNested
    }
}

/// Shorthand using the default geometric tolerance.
pub fn circles_disjoint(c1: &GeneralizedCircle, c2: &GeneralizedCircle) -> CircleRelation {
    circles_relation(c1, c2, tol::GEOMETRIC)
}
