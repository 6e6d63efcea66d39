//! Möbius transformations and points of the Riemann sphere.
//!
//! Maps are stored as determinant-normalized coefficient quadruples, so a
//! transformation and its negative represent the same map; equality tests
//! account for that.

use crate::{tol, Error, Result};
use num_complex::Complex64 as C;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A point of the Riemann sphere: a finite complex value or the point at
/// infinity. Non-finite coordinates are collapsed to [`SpherePoint::Infinity`]
/// so no NaN/overflow state is representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(C),
    Infinity,
}

impl SpherePoint {
    pub fn finite(re: f64, im: f64) -> Self {
        Self::from_complex(C::new(re, im))
    }

    /// Total embedding of `Complex64`: overflowed or NaN values map to ∞.
    pub fn from_complex(z: C) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            SpherePoint::Finite(z)
        } else {
            SpherePoint::Infinity
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn as_complex(&self) -> Option<C> {
        match self {
            SpherePoint::Finite(z) => Some(*z),
            SpherePoint::Infinity => None,
        }
    }

    /// Chordal distance on the sphere (diameter 2).
    pub fn chordal(&self, other: &SpherePoint) -> f64 {
        chordal(*self, *other)
    }
}

impl From<C> for SpherePoint {
    fn from(z: C) -> Self {
        SpherePoint::from_complex(z)
    }
}

pub fn chordal(a: SpherePoint, b: SpherePoint) -> f64 {
    use SpherePoint::*;
    match (a, b) {
        (Finite(z), Finite(w)) => {
            2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt())
        }
        (Finite(z), Infinity) | (Infinity, Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
        (Infinity, Infinity) => 0.0,
    }
}

/// Chordal distance between raw complex values, treating non-finite ones as ∞.
pub fn chordal_c(z: C, w: C) -> f64 {
    chordal(SpherePoint::from_complex(z), SpherePoint::from_complex(w))
}

impl Serialize for SpherePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SpherePoint::Finite(z) => [z.re, z.im].serialize(s),
            SpherePoint::Infinity => "inf".serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for SpherePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) if s == "inf" => Ok(SpherePoint::Infinity),
            serde_json::Value::Array(_) => {
                let [re, im]: [f64; 2] =
                    serde_json::from_value(v).map_err(D::Error::custom)?;
                Ok(SpherePoint::finite(re, im))
            }
            _ => Err(D::Error::custom("expected [re, im] or \"inf\"")),
        }
    }
}

pub(crate) fn serialize_complex<S: Serializer>(
    z: &C,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

pub(crate) fn deserialize_complex<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<C, D::Error> {
    let [re, im] = <[f64; 2]>::deserialize(d)?;
    Ok(C::new(re, im))
}

/// A fractional-linear transformation z ↦ (az + b)/(cz + d), normalized so
/// that ad − bc = 1. The normalization is canonical up to a global sign.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MoebiusMap {
    #[serde(serialize_with = "serialize_complex", deserialize_with = "deserialize_complex")]
    pub a: C,
    #[serde(serialize_with = "serialize_complex", deserialize_with = "deserialize_complex")]
    pub b: C,
    #[serde(serialize_with = "serialize_complex", deserialize_with = "deserialize_complex")]
    pub c: C,
    #[serde(serialize_with = "serialize_complex", deserialize_with = "deserialize_complex")]
    pub d: C,
}

/// Conjugacy class of a Möbius transformation, decided from the squared trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapClass {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

/// Fixed-point data of a non-identity map. For loxodromic maps the
/// attracting point is listed first and `multiplier` is the derivative
/// there, so |multiplier| ≤ 1.
#[derive(Debug, Clone, Copy)]
pub struct FixedPoints {
    pub first: SpherePoint,
    pub second: Option<SpherePoint>,
    pub multiplier: C,
}

impl MoebiusMap {
    /// Builds a map from raw coefficients, normalizing the determinant to 1.
    /// Rejects (numerically) singular input.
    pub fn new(a: C, b: C, c: C, d: C) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm_sqr().max(b.norm_sqr()).max(c.norm_sqr()).max(d.norm_sqr());
        if !det.is_finite() || det.norm_sqr() <= 1e-26 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::SingularMatrix);
        }
        let s = det.sqrt();
        Ok(Self { a: a / s, b: b / s, c: c / s, d: d / s }.canonical_sign())
    }

    pub fn identity() -> Self {
        Self { a: C::new(1.0, 0.0), b: C::new(0.0, 0.0), c: C::new(0.0, 0.0), d: C::new(1.0, 0.0) }
    }

    /// z ↦ λz.
    pub fn scaling(lambda: C) -> Result<Self> {
        Self::new(lambda, C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0))
    }

    /// z ↦ z + t.
    pub fn translation(t: C) -> Self {
        Self { a: C::new(1.0, 0.0), b: t, c: C::new(0.0, 0.0), d: C::new(1.0, 0.0) }
    }

    /// z ↦ 1/z.
    pub fn inversion() -> Self {
        // determinant -1; new() renormalizes
        Self::new(C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0)).unwrap()
    }

    fn canonical_sign(self) -> Self {
        // Flip the global sign so the largest coefficient has (re, im)
        // lexicographically positive; keeps printed output deterministic.
        let coeffs = [self.a, self.b, self.c, self.d];
        let lead = coeffs
            .iter()
            .cloned()
            .max_by(|x, y| x.norm_sqr().partial_cmp(&y.norm_sqr()).unwrap())
            .unwrap();
        let neg = lead.re < 0.0 || (lead.re == 0.0 && lead.im < 0.0);
        if neg {
            Self { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
        } else {
            self
        }
    }

    pub fn det(&self) -> C {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C {
        self.a + self.d
    }

    pub fn trace_sq(&self) -> C {
        let t = self.trace();
        t * t
    }

    /// Composition acting as `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let (u, v) = (self, other);
        MoebiusMap {
            a: u.a * v.a + u.b * v.c,
            b: u.a * v.b + u.b * v.d,
            c: u.c * v.a + u.d * v.c,
            d: u.c * v.b + u.d * v.d,
        }
        .renormalize()
    }

    fn renormalize(self) -> Self {
        // compose of unimodular maps is unimodular up to roundoff drift
        let s = self.det().sqrt();
        Self { a: self.a / s, b: self.b / s, c: self.c / s, d: self.d / s }.canonical_sign()
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }.canonical_sign()
    }

    /// Applies the map with full pole/infinity handling: −d/c ↦ ∞ and
    /// ∞ ↦ a/c (∞ again when c = 0).
    pub fn apply(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Infinity => {
                if self.c.norm_sqr() == 0.0 {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from_complex(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm_sqr() == 0.0 {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from_complex((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// Convenience wrapper around [`MoebiusMap::apply`] for finite inputs;
    /// returns ∞ as an infinite float pair.
    pub fn apply_c(&self, z: C) -> C {
        match self.apply(SpherePoint::from_complex(z)) {
            SpherePoint::Finite(w) => w,
            SpherePoint::Infinity => C::new(f64::INFINITY, 0.0),
        }
    }

    /// Equality up to the global sign ambiguity of the normalization.
    pub fn approx_eq(&self, other: &MoebiusMap, tolerance: f64) -> bool {
        let d_plus = (self.a - other.a)
            .norm()
            .max((self.b - other.b).norm())
            .max((self.c - other.c).norm())
            .max((self.d - other.d).norm());
        let d_minus = (self.a + other.a)
            .norm()
            .max((self.b + other.b).norm())
            .max((self.c + other.c).norm())
            .max((self.d + other.d).norm());
        d_plus.min(d_minus) < tolerance
    }

    pub fn is_identity(&self, tolerance: f64) -> bool {
        self.approx_eq(&MoebiusMap::identity(), tolerance)
    }

    /// Classification by the squared trace of the normalized matrix:
    /// tr² = 4 and m ≠ id ⇒ parabolic, tr² real in [0, 4) ⇒ elliptic,
    /// anything else ⇒ loxodromic.
    pub fn classify(&self) -> MapClass {
        self.classify_with_tol(tol::ALGEBRAIC.sqrt())
    }

    pub fn classify_with_tol(&self, tolerance: f64) -> MapClass {
        if self.is_identity(tolerance) {
            return MapClass::Identity;
        }
        let t2 = self.trace_sq();
        if (t2 - C::new(4.0, 0.0)).norm() < tolerance {
            MapClass::Parabolic
        } else if t2.im.abs() < tolerance && t2.re >= -tolerance && t2.re < 4.0 {
            MapClass::Elliptic
        } else {
            MapClass::Loxodromic
        }
    }

    /// Fixed points as roots of cz² + (d − a)z − b = 0, with the attracting
    /// point first for loxodromic maps and lexicographic order otherwise
    /// (∞ sorts last). The multiplier is the derivative at the first point.
    pub fn fixed_points(&self) -> Result<FixedPoints> {
        let eps = tol::ALGEBRAIC.sqrt();
        if self.is_identity(eps) {
            return Err(Error::IdentityMap);
        }
        let class = self.classify_with_tol(eps);
        if self.c.norm() < eps {
            // fixed: ∞, and b/(d-a) when a ≠ d
            if (self.d - self.a).norm() < eps {
                // parabolic translation: single fixed point ∞
                return Ok(FixedPoints {
                    first: SpherePoint::Infinity,
                    second: None,
                    multiplier: C::new(1.0, 0.0),
                });
            }
            let finite = self.b / (self.d - self.a);
            let mult_inf = self.d / self.a; // derivative at ∞ in w = 1/z
            let mult_fin = self.a / self.d;
            return Ok(match class {
                MapClass::Loxodromic if mult_inf.norm() <= 1.0 => FixedPoints {
                    first: SpherePoint::Infinity,
                    second: Some(SpherePoint::from_complex(finite)),
                    multiplier: mult_inf,
                },
                MapClass::Loxodromic => FixedPoints {
                    first: SpherePoint::from_complex(finite),
                    second: Some(SpherePoint::Infinity),
                    multiplier: mult_fin,
                },
                _ => FixedPoints {
                    // lexicographic: finite point before ∞
                    first: SpherePoint::from_complex(finite),
                    second: Some(SpherePoint::Infinity),
                    multiplier: mult_fin,
                },
            });
        }
        let disc = self.trace_sq() - C::new(4.0, 0.0);
        if disc.norm() < eps * eps {
            // parabolic: double root
            let z = (self.a - self.d) / (2.0 * self.c);
            return Ok(FixedPoints {
                first: SpherePoint::from_complex(z),
                second: None,
                multiplier: C::new(1.0, 0.0),
            });
        }
        let sq = disc.sqrt();
        let z1 = (self.a - self.d + sq) / (2.0 * self.c);
        let z2 = (self.a - self.d - sq) / (2.0 * self.c);
        let mult = |z: C| {
            let den = self.c * z + self.d;
            1.0 / (den * den)
        };
        let (m1, m2) = (mult(z1), mult(z2));
        let (first, second, multiplier) = match class {
            MapClass::Loxodromic => {
                if m1.norm() <= m2.norm() {
                    (z1, z2, m1)
                } else {
                    (z2, z1, m2)
                }
            }
            _ => {
                // lexicographic by (re, im)
                if (z1.re, z1.im) <= (z2.re, z2.im) {
                    (z1, z2, m1)
                } else {
                    (z2, z1, m2)
                }
            }
        };
        Ok(FixedPoints {
            first: SpherePoint::from_complex(first),
            second: Some(SpherePoint::from_complex(second)),
            multiplier,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    pub(crate) fn omega3() -> C {
        C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
    }

    fn random_map(rng: &mut ChaCha8Rng) -> MoebiusMap {
        loop {
            let coeff = |rng: &mut ChaCha8Rng| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if let Ok(m) = MoebiusMap::new(coeff(rng), coeff(rng), coeff(rng), coeff(rng)) {
                return m;
            }
        }
    }

    #[test]
    fn compose_identity_is_noop() {
        let m = MoebiusMap::new(c(3.0, 1.0), c(0.5, 0.0), c(1.0, -1.0), c(2.0, 0.0)).unwrap();
        assert!(m.compose(&MoebiusMap::identity()).approx_eq(&m, tol::ALGEBRAIC));
        assert!(MoebiusMap::identity().compose(&m).approx_eq(&m, tol::ALGEBRAIC));
    }

    #[test]
    fn rotation_by_cube_root_has_order_three() {
        let a = MoebiusMap::scaling(omega3()).unwrap();
        let a3 = a.compose(&a).compose(&a);
        assert!(a3.is_identity(tol::ALGEBRAIC));
        assert!(!a.compose(&a).is_identity(1e-6));
    }

    #[test]
    fn inversion_is_an_involution() {
        let b = MoebiusMap::inversion();
        assert!(b.compose(&b).is_identity(tol::ALGEBRAIC));
    }

    #[test]
    fn apply_handles_poles_and_infinity() {
        let b = MoebiusMap::inversion();
        assert!(b.apply(SpherePoint::finite(0.0, 0.0)).is_infinity());

        let a = MoebiusMap::scaling(omega3()).unwrap();
        let img = a.apply(SpherePoint::finite(1.0, 0.0)).as_complex().unwrap();
        assert!((img - omega3()).norm() < tol::ALGEBRAIC);

        // (10z + 1)/z sends ∞ to 10
        let m = MoebiusMap::new(c(10.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let img = m.apply(SpherePoint::Infinity).as_complex().unwrap();
        assert!((img - c(10.0, 0.0)).norm() < tol::ALGEBRAIC);
        assert!(m.apply(SpherePoint::finite(0.0, 0.0)).is_infinity());
    }

    #[test]
    fn classification_of_named_maps() {
        assert_eq!(MoebiusMap::scaling(omega3()).unwrap().classify(), MapClass::Elliptic);
        assert_eq!(MoebiusMap::scaling(c(4.0, 0.0)).unwrap().classify(), MapClass::Loxodromic);
        assert_eq!(MoebiusMap::translation(c(1.0, 0.0)).classify(), MapClass::Parabolic);
        assert_eq!(MoebiusMap::identity().classify(), MapClass::Identity);
        // multiplier of the elliptic rotation stays on the unit circle
        let fp = MoebiusMap::scaling(omega3()).unwrap().fixed_points().unwrap();
        assert!((fp.multiplier.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn classification_is_conjugation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let named = [
            MoebiusMap::scaling(omega3()).unwrap(),
            MoebiusMap::scaling(c(4.0, 0.0)).unwrap(),
            MoebiusMap::translation(c(1.0, 0.0)),
            MoebiusMap::new(c(10.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap(),
        ];
        for m in named {
            for _ in 0..25 {
                let g = random_map(&mut rng);
                let conj = g.compose(&m).compose(&g.inverse());
                assert_eq!(conj.classify(), m.classify(), "conjugation changed class of {m:?}");
            }
        }
    }

    #[test]
    fn fixed_points_of_diagonal_map() {
        // z ↦ 4z: attracting point ∞ (multiplier 1/4), repelling 0
        let fp = MoebiusMap::scaling(c(4.0, 0.0)).unwrap().fixed_points().unwrap();
        assert!(fp.first.is_infinity());
        assert_eq!(fp.second.unwrap().as_complex().unwrap(), c(0.0, 0.0));
        assert!((fp.multiplier - c(0.25, 0.0)).norm() < tol::ALGEBRAIC);
    }

    #[test]
    fn fixed_points_of_translation() {
        let fp = MoebiusMap::translation(c(1.0, 0.0)).fixed_points().unwrap();
        assert!(fp.first.is_infinity());
        assert!(fp.second.is_none());
        assert!((fp.multiplier - c(1.0, 0.0)).norm() < tol::ALGEBRAIC);
    }

    #[test]
    fn fixed_points_match_quadratic_oracle() {
        // (10z + 1)/z fixes z² − 10z − 1 = 0, i.e. 5 ± √26
        let m = MoebiusMap::new(c(10.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let fp = m.fixed_points().unwrap();
        let r1 = 5.0 + 26.0_f64.sqrt();
        let r2 = 5.0 - 26.0_f64.sqrt();
        let got1 = fp.first.as_complex().unwrap();
        let got2 = fp.second.unwrap().as_complex().unwrap();
        let hit = |z: C, r: f64| (z - c(r, 0.0)).norm() < 1e-9;
        assert!((hit(got1, r1) && hit(got2, r2)) || (hit(got1, r2) && hit(got2, r1)));
        assert!(fp.multiplier.norm() <= 1.0 + 1e-12);
        // fixed points actually fixed
        for p in [got1, got2] {
            let img = m.apply(SpherePoint::from_complex(p)).as_complex().unwrap();
            assert!((img - p).norm() < 1e-9);
        }
    }

    #[test]
    fn identity_has_no_fixed_point_data() {
        assert!(matches!(MoebiusMap::identity().fixed_points(), Err(Error::IdentityMap)));
    }

    #[test]
    fn determinant_normalized_on_random_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let m = random_map(&mut rng);
            assert!((m.det() - c(1.0, 0.0)).norm() < tol::ALGEBRAIC);
            assert!(m.compose(&m.inverse()).is_identity(tol::ALGEBRAIC));
        }
    }

    #[test]
    fn singular_input_rejected() {
        assert!(MoebiusMap::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)).is_err());
    }

    #[test]
    fn sphere_point_json_round_trip() {
        let p = SpherePoint::finite(1.5, -2.0);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[1.5,-2.0]");
        let q: SpherePoint = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        let inf: SpherePoint = serde_json::from_str("\"inf\"").unwrap();
        assert!(inf.is_infinity());
        assert_eq!(serde_json::to_string(&inf).unwrap(), "\"inf\"");
    }
}
