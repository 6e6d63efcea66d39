//! Conformal moduli of annuli.
//!
//! Moduli are normalized against the symmetric round annulus
//! A_r = {r⁻¹ < |z| < r} with mod(A_r) = (1/π)·log r. The ring between two
//! nested circles has the closed form arccosh(δ)/(2π) in the inversive
//! distance δ; an independent normalization construction (mapping the ring
//! to a concentric one through its coaxial limit points) is kept as a
//! cross-check oracle. Sampled, non-circular annuli go through the discrete
//! Dirichlet-energy estimator in [`crate::laplace`].

use crate::circle::{circles_relation, CircleRelation, GeneralizedCircle};
use crate::laplace;
use crate::moebius::MoebiusMap;
use crate::{tol, Error, Result};
use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

/// Orientation of the modulus relation for annulus coverings: composing with
/// z ↦ z^d multiplies the modulus by d from covering domain to covered
/// target, mod(A_{ρ^d}) = d · mod(A_ρ). A statement assigning the factor d
/// the other way around has its two annuli swapped.
pub const COVER_ORIENTATION_NOTE: &str = "for the degree-d covering z -> z^d from A_rho onto \
     A_rho^d the measured relation is mod(A_rho^d) = d * mod(A_rho); the factor d goes from \
     covering domain to covered target, so any statement with the factor on the other side has \
     its annuli swapped";

/// Default parameters for numeric modulus estimation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NumericParams {
    /// Grid step of the log-polar solve, in (log r, radians) units.
    pub grid_h: f64,
    /// Points per sampled boundary component.
    pub boundary_samples: usize,
}

impl Default for NumericParams {
    fn default() -> Self {
        Self { grid_h: 0.02, boundary_samples: 512 }
    }
}

/// mod(A_r) = (1/π) log r for the round annulus {r⁻¹ < |z| < r}; requires r > 1.
pub fn modulus_round(r: f64) -> Result<f64> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::DegenerateAnnulus(r));
    }
    Ok(r.ln() / PI)
}

/// The ring between two strictly nested circles.
#[derive(Debug, Clone, Copy)]
pub struct CircleRing {
    inner: GeneralizedCircle,
    outer: GeneralizedCircle,
}

impl CircleRing {
    pub fn new(inner: GeneralizedCircle, outer: GeneralizedCircle) -> Result<Self> {
        if inner.is_line() || outer.is_line() {
            return Err(Error::DegenerateCircle("ring boundaries must be bounded circles"));
        }
        if circles_relation(&inner, &outer, tol::GEOMETRIC) != CircleRelation::DisjointNested {
            return Err(Error::CirclesNotNested);
        }
        // nested: the smaller disk must actually sit inside the bigger one
        let (inner, outer) = if outer.form(inner.center().unwrap()) < 0.0 {
            (inner, outer)
        } else if inner.form(outer.center().unwrap()) < 0.0 {
            (outer, inner)
        } else {
            return Err(Error::CirclesNotNested);
        };
        Ok(Self { inner, outer })
    }

    pub fn inner(&self) -> &GeneralizedCircle {
        &self.inner
    }

    pub fn outer(&self) -> &GeneralizedCircle {
        &self.outer
    }

    /// Closed-form modulus arccosh(δ)/(2π) from the inversive distance δ.
    pub fn modulus(&self) -> f64 {
        let delta = crate::circle::inversive_distance(&self.inner, &self.outer);
        delta.acosh() / TAU
    }
}

/// Concentric normalization of a nested circle pair: a Möbius map sending
/// the ring onto {r_inner < |w| < r_outer} around the origin.
#[derive(Debug, Clone, Copy)]
pub struct RingNormalization {
    pub map: MoebiusMap,
    pub r_inner: f64,
    pub r_outer: f64,
}

impl RingNormalization {
    pub fn modulus(&self) -> f64 {
        (self.r_outer / self.r_inner).ln().abs() / TAU
    }
}

/// Maps a nested circle pair to a concentric ring through the two common
/// inverse points of the coaxial pencil. Independent of the arccosh route:
/// it never evaluates the inversive distance.
pub fn normalize_ring(ring: &CircleRing) -> Result<RingNormalization> {
    let c1 = ring.inner.center().unwrap();
    let r1 = ring.inner.radius().unwrap();
    let c2 = ring.outer.center().unwrap();
    let r2 = ring.outer.radius().unwrap();
    let span = (c2 - c1).norm();
    if span < 1e-13 * r2 {
        // already concentric: recenter only
        let map = MoebiusMap::translation(-c1);
        return Ok(RingNormalization { map, r_inner: r1, r_outer: r2 });
    }
    let u = (c2 - c1) / span;
    // rotated coordinates: inner center at 0, outer at l on the real axis
    let l = span;
    // common inverse pair x, y solves (t)(t') = r1², (t − l)(t' − l) = r2²
    let sum = (l * l - r2 * r2 + r1 * r1) / l;
    let prod = r1 * r1;
    let disc = sum * sum - 4.0 * prod;
    if disc <= 0.0 {
        return Err(Error::CirclesNotNested);
    }
    let x = 0.5 * (sum - disc.sqrt());
    let y = 0.5 * (sum + disc.sqrt());
    // one limit point lies inside the inner disk
    let (x, y) = if x.abs() < r1 { (x, y) } else { (y, x) };
    if x.abs() >= r1 {
        return Err(Error::CirclesNotNested);
    }

    let rotate = MoebiusMap::new(
        C::new(1.0, 0.0) / u,
        -c1 / u,
        C::new(0.0, 0.0),
        C::new(1.0, 0.0),
    )?;
    let pencil =
        MoebiusMap::new(C::new(1.0, 0.0), C::new(-x, 0.0), C::new(1.0, 0.0), C::new(-y, 0.0))?;
    let map = pencil.compose(&rotate);

    // image radii from diametral real points; the configuration is
    // conjugation-symmetric in rotated coordinates
    let m = |t: f64| (t - x) / (t - y);
    let (a1, b1) = (m(-r1), m(r1));
    let (a2, b2) = (m(l - r2), m(l + r2));
    let center_drift = (a1 + b1).abs().max((a2 + b2).abs());
    let r_inner = 0.5 * (b1 - a1).abs();
    let r_outer = 0.5 * (b2 - a2).abs();
    if center_drift > 1e-6 * r_outer.max(1.0) {
        return Err(Error::InvalidAnnulus("normalized ring is not concentric".into()));
    }
    Ok(RingNormalization { map, r_inner, r_outer })
}

/// A finite Laurent polynomial Σ c_k z^k over a range of exponents.
#[derive(Debug, Clone)]
pub struct LaurentMap {
    min_exp: i32,
    coeffs: Vec<C>,
}

impl LaurentMap {
    pub fn new(min_exp: i32, coeffs: Vec<C>) -> Result<Self> {
        let nonzero = coeffs.iter().filter(|c| c.norm_sqr() > 0.0).count();
        let nonconstant = coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| c.norm_sqr() > 0.0 && min_exp + i as i32 != 0);
        if nonzero == 0 || !nonconstant {
            return Err(Error::InvalidAnnulus("Laurent map must be non-constant".into()));
        }
        Ok(Self { min_exp, coeffs })
    }

    /// z + c/z.
    pub fn joukowski(c: C) -> Self {
        Self { min_exp: -1, coeffs: vec![c, C::new(0.0, 0.0), C::new(1.0, 0.0)] }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .map(|(i, c)| (self.min_exp + i as i32, *c))
    }

    pub fn eval(&self, z: C) -> C {
        let mut acc = C::new(0.0, 0.0);
        // Horner in z from the top coefficient, then shift by z^min_exp
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(self.min_exp)
    }
}

impl Serialize for LaurentMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, [f64; 2]> =
            self.terms().map(|(k, c)| (k.to_string(), [c.re, c.im])).collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let map = BTreeMap::<String, [f64; 2]>::deserialize(d)?;
        let mut terms = Vec::new();
        for (k, v) in map {
            let exp: i32 = k.parse().map_err(|_| D::Error::custom("bad exponent key"))?;
            terms.push((exp, C::new(v[0], v[1])));
        }
        if terms.is_empty() {
            return Err(D::Error::custom("empty Laurent map"));
        }
        let min_exp = terms.iter().map(|t| t.0).min().unwrap();
        let max_exp = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![C::new(0.0, 0.0); (max_exp - min_exp + 1) as usize];
        for (exp, c) in terms {
            coeffs[(exp - min_exp) as usize] = c;
        }
        LaurentMap::new(min_exp, coeffs).map_err(D::Error::custom)
    }
}

/// An annulus, in one of three concrete forms.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnnulusSpec {
    /// A_r = {r⁻¹ < |z| < r}.
    Round { r: f64 },
    /// Region between two nested circles.
    Ring { inner: GeneralizedCircle, outer: GeneralizedCircle },
    /// Image of A_r under an injective Laurent polynomial.
    Mapped { r: f64, laurent: LaurentMap },
}

impl AnnulusSpec {
    pub fn round(r: f64) -> Result<Self> {
        modulus_round(r)?;
        Ok(Self::Round { r })
    }

    pub fn ring(inner: GeneralizedCircle, outer: GeneralizedCircle) -> Result<Self> {
        let ring = CircleRing::new(inner, outer)?;
        Ok(Self::Ring { inner: *ring.inner(), outer: *ring.outer() })
    }

    /// Mapped annulus; checks injectivity on the closed base annulus by
    /// boundary winding and a sampled self-intersection test.
    pub fn mapped(r: f64, laurent: LaurentMap, samples: usize) -> Result<Self> {
        modulus_round(r)?;
        let spec = Self::Mapped { r, laurent };
        // simple, mutually disjoint curves with containment
        let sampling = spec.sample_boundaries(samples.max(64))?;
        // fold signature: an injective image has both boundary curves
        // winding exactly once, the same way, around the hole
        let hole = sampling.inner().iter().sum::<C>() / sampling.inner().len() as f64;
        let w_in = winding_number(sampling.inner(), hole);
        let w_out = winding_number(sampling.outer(), hole);
        if w_in.abs() != 1 || w_in != w_out {
            return Err(Error::InvalidAnnulus(format!(
                "boundary windings {w_in}/{w_out} betray a non-injective Laurent image"
            )));
        }
        if let Self::Mapped { laurent, .. } = &spec {
            // the core image must lie strictly between the curves
            let probe = laurent.eval(C::from_polar(1.0, 0.39));
            let inside_outer = winding_number(sampling.outer(), probe) != 0;
            let outside_inner = winding_number(sampling.inner(), probe) == 0;
            if !inside_outer || !outside_inner {
                return Err(Error::InvalidAnnulus(
                    "Laurent image of the core circle leaves the image annulus".into(),
                ));
            }
        }
        Ok(spec)
    }

    pub fn validated(&self, params: &NumericParams) -> Result<()> {
        match self {
            Self::Round { r } => modulus_round(*r).map(|_| ()),
            Self::Ring { inner, outer } => CircleRing::new(*inner, *outer).map(|_| ()),
            Self::Mapped { r, laurent } => {
                Self::mapped(*r, laurent.clone(), params.boundary_samples).map(|_| ())
            }
        }
    }

    /// Closed-form modulus where available, numeric estimate otherwise.
    pub fn modulus(&self, params: &NumericParams) -> Result<f64> {
        match self {
            Self::Round { r } => modulus_round(*r),
            Self::Ring { inner, outer } => Ok(CircleRing::new(*inner, *outer)?.modulus()),
            Self::Mapped { .. } => {
                let sampling = self.sample_boundaries(params.boundary_samples)?;
                modulus_numeric(&sampling, params.grid_h)
            }
        }
    }

    /// Closed polylines approximating the two boundary components.
    pub fn sample_boundaries(&self, n: usize) -> Result<BoundarySampling> {
        let n = n.max(16);
        let circle_pts = |center: C, radius: f64| -> Vec<C> {
            (0..n).map(|k| center + C::from_polar(radius, k as f64 * TAU / n as f64)).collect()
        };
        match self {
            Self::Round { r } => {
                modulus_round(*r)?;
                BoundarySampling::new(
                    circle_pts(C::new(0.0, 0.0), 1.0 / r),
                    circle_pts(C::new(0.0, 0.0), *r),
                )
            }
            Self::Ring { inner, outer } => {
                let ring = CircleRing::new(*inner, *outer)?;
                BoundarySampling::new(
                    circle_pts(ring.inner().center().unwrap(), ring.inner().radius().unwrap()),
                    circle_pts(ring.outer().center().unwrap(), ring.outer().radius().unwrap()),
                )
            }
            Self::Mapped { r, laurent } => {
                modulus_round(*r)?;
                let image = |radius: f64| -> Vec<C> {
                    (0..n)
                        .map(|k| laurent.eval(C::from_polar(radius, k as f64 * TAU / n as f64)))
                        .collect()
                };
                BoundarySampling::new(image(1.0 / r), image(*r))
            }
        }
    }

    /// Separating-circle search on this annulus' sampled boundaries.
    pub fn find_separating_circle(
        &self,
        params: &NumericParams,
        tolerance: f64,
    ) -> Result<SeparatingCircle> {
        let sampling = self.sample_boundaries(params.boundary_samples)?;
        Ok(find_separating_circle(&sampling, tolerance))
    }

    /// Sampled core curve: the image of the unit circle (or its conformal
    /// analog through the ring normalization).
    pub fn core_curve(&self, n: usize) -> Result<Vec<C>> {
        let n = n.max(16);
        match self {
            Self::Round { .. } => {
                Ok((0..n).map(|k| C::from_polar(1.0, k as f64 * TAU / n as f64)).collect())
            }
            Self::Mapped { laurent, .. } => Ok((0..n)
                .map(|k| laurent.eval(C::from_polar(1.0, k as f64 * TAU / n as f64)))
                .collect()),
            Self::Ring { inner, outer } => {
                let ring = CircleRing::new(*inner, *outer)?;
                let norm = normalize_ring(&ring)?;
                let inv = norm.map.inverse();
                let mid = (norm.r_inner * norm.r_outer).sqrt();
                Ok((0..n)
                    .map(|k| inv.apply_c(C::from_polar(mid, k as f64 * TAU / n as f64)))
                    .collect())
            }
        }
    }
}

/// Two closed polylines approximating the boundary components of an
/// annulus, with `inner` contained in `outer`.
#[derive(Debug, Clone)]
pub struct BoundarySampling {
    inner: Vec<C>,
    outer: Vec<C>,
}

impl BoundarySampling {
    /// Validates that both polylines are simple closed curves, mutually
    /// disjoint, and that one encloses the other; stores them inner-first.
    pub fn new(a: Vec<C>, b: Vec<C>) -> Result<Self> {
        if a.len() < 3 || b.len() < 3 {
            return Err(Error::InvalidAnnulus("boundary sampling needs at least 3 points".into()));
        }
        for (name, curve) in [("first", &a), ("second", &b)] {
            if !polyline_is_simple(curve) {
                return Err(Error::InvalidAnnulus(format!(
                    "{name} boundary curve intersects itself"
                )));
            }
        }
        if polylines_cross(&a, &b) {
            return Err(Error::InvalidAnnulus("boundary curves intersect".into()));
        }
        let b_in_a = winding_number(&a, b[0]) != 0;
        let a_in_b = winding_number(&b, a[0]) != 0;
        match (a_in_b, b_in_a) {
            (true, false) => Ok(Self { inner: a, outer: b }),
            (false, true) => Ok(Self { inner: b, outer: a }),
            _ => Err(Error::InvalidAnnulus(
                "boundary curves do not bound an annulus (no containment)".into(),
            )),
        }
    }

    pub fn inner(&self) -> &[C] {
        &self.inner
    }

    pub fn outer(&self) -> &[C] {
        &self.outer
    }

    fn scale(&self) -> f64 {
        self.outer.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-12)
    }
}

/// Nonzero-rule winding number of a closed polyline around a point.
pub fn winding_number(curve: &[C], point: C) -> i32 {
    let mut w = 0i32;
    let n = curve.len();
    for i in 0..n {
        let p = curve[i];
        let q = curve[(i + 1) % n];
        if p.im <= point.im {
            if q.im > point.im && cross(q - p, point - p) > 0.0 {
                w += 1;
            }
        } else if q.im <= point.im && cross(q - p, point - p) < 0.0 {
            w -= 1;
        }
    }
    w
}

fn cross(a: C, b: C) -> f64 {
    a.re * b.im - a.im * b.re
}

fn segments_cross(a: C, b: C, c: C, d: C) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0)
}

fn polyline_is_simple(curve: &[C]) -> bool {
    let n = curve.len();
    for i in 0..n {
        for j in i + 1..n {
            // skip adjacent segments sharing an endpoint
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            if segments_cross(curve[i], curve[(i + 1) % n], curve[j], curve[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

fn polylines_cross(a: &[C], b: &[C]) -> bool {
    for i in 0..a.len() {
        for j in 0..b.len() {
            if segments_cross(a[i], a[(i + 1) % a.len()], b[j], b[(j + 1) % b.len()]) {
                return true;
            }
        }
    }
    false
}

/// Numeric modulus: 1 / (discrete Dirichlet energy) on a log-polar grid.
/// With u = 0 on the inner boundary and u = 1 on the outer, the concentric
/// exact value (1/2π)·log(b/a) is recovered as 1/E.
pub fn modulus_numeric(boundaries: &BoundarySampling, grid_h: f64) -> Result<f64> {
    laplace::modulus_estimate(boundaries.inner(), boundaries.outer(), grid_h)
}

/// Monotonicity harness: checks that the essential circle ring `inner` sits
/// inside `outer` (both its circles separate the outer annulus' boundary
/// components) and returns mod(inner) ≤ mod(outer) + tolerance.
pub fn grotzsch_check(
    outer: &AnnulusSpec,
    inner: &CircleRing,
    params: &NumericParams,
    tolerance: f64,
) -> Result<bool> {
    let sampling = outer.sample_boundaries(params.boundary_samples)?;
    let eps = 1e-9 * sampling.scale();
    for circle in [inner.inner(), inner.outer()] {
        let center = circle.center().unwrap();
        let radius = circle.radius().unwrap();
        // each circle of B separates the ambient boundary samplings; shared
        // boundaries (B touching A) pass within tolerance. Dense sampling
        // makes separation imply containment in the ambient annulus.
        let all_inside = sampling.inner().iter().all(|p| (p - center).norm() < radius + eps);
        let all_outside = sampling.outer().iter().all(|p| (p - center).norm() > radius - eps);
        if !all_inside || !all_outside {
            return Err(Error::NotEssential);
        }
    }
    let mod_outer = outer.modulus(params)?;
    let mod_inner = inner.modulus();
    Ok(mod_inner <= mod_outer + tolerance)
}

/// Exact modulus bookkeeping for the covering z ↦ z^d : A_ρ → A_{ρ^d}.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CoverModulusRelation {
    pub mod_domain: f64,
    pub mod_target: f64,
    /// mod(domain) / mod(target) = 1/d.
    pub ratio: f64,
    pub degree: u32,
}

pub fn cover_modulus_relation(rho: f64, d: u32) -> Result<CoverModulusRelation> {
    if d == 0 {
        return Err(Error::InvalidAnnulus("covering degree must be positive".into()));
    }
    let mod_domain = modulus_round(rho)?;
    let mod_target = d as f64 * mod_domain;
    Ok(CoverModulusRelation { mod_domain, mod_target, ratio: 1.0 / d as f64, degree: d })
}

/// Result of the separating-circle search.
#[derive(Debug, Clone)]
pub enum SeparatingCircle {
    Found { circle: GeneralizedCircle, clearance: f64 },
    NotFound { best_clearance: f64 },
}

/// Deterministic two-phase search for a euclidean circle separating the two
/// boundary components: a coarse lattice of candidate centers scored by
/// log-clearance to both samplings, then compass-descent refinement. The
/// returned circle's radius is the geometric mean of the two clearance
/// radii, so concentric inputs yield the concentric mid circle.
pub fn find_separating_circle(sampling: &BoundarySampling, tolerance: f64) -> SeparatingCircle {
    let inner = sampling.inner();
    let outer = sampling.outer();
    let score = |q: C| -> f64 {
        let far_in = inner.iter().map(|p| (p - q).norm()).fold(0.0, f64::max);
        let near_out = outer.iter().map(|p| (p - q).norm()).fold(f64::INFINITY, f64::min);
        if near_out <= far_in || far_in == 0.0 {
            f64::NEG_INFINITY
        } else {
            (near_out / far_in).ln()
        }
    };

    // bounding box of the hole
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in inner {
        lo_x = lo_x.min(p.re);
        hi_x = hi_x.max(p.re);
        lo_y = lo_y.min(p.im);
        hi_y = hi_y.max(p.im);
    }
    let centroid = inner.iter().sum::<C>() / inner.len() as f64;
    let mut best = centroid;
    let mut best_score = score(centroid);
    let steps = 12;
    for iy in 0..=steps {
        for ix in 0..=steps {
            let q = C::new(
                lo_x + (hi_x - lo_x) * ix as f64 / steps as f64,
                lo_y + (hi_y - lo_y) * iy as f64 / steps as f64,
            );
            let s = score(q);
            if s > best_score {
                best_score = s;
                best = q;
            }
        }
    }

    // compass descent on the center
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-9);
    let mut step = span / 4.0;
    let diag = std::f64::consts::FRAC_1_SQRT_2;
    let dirs = [
        C::new(1.0, 0.0),
        C::new(-1.0, 0.0),
        C::new(0.0, 1.0),
        C::new(0.0, -1.0),
        C::new(diag, diag),
        C::new(-diag, diag),
        C::new(diag, -diag),
        C::new(-diag, -diag),
    ];
    let mut guard = 0;
    while step > 1e-12 * span && guard < 20_000 {
        let mut moved = false;
        for d in dirs {
            guard += 1;
            let q = best + d * step;
            let s = score(q);
            if s > best_score {
                best_score = s;
                best = q;
                moved = true;
                break;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }

    if best_score == f64::NEG_INFINITY {
        return SeparatingCircle::NotFound { best_clearance: f64::NEG_INFINITY };
    }
    let far_in = inner.iter().map(|p| (p - best).norm()).fold(0.0, f64::max);
    let near_out = outer.iter().map(|p| (p - best).norm()).fold(f64::INFINITY, f64::min);
    let radius = (far_in * near_out).sqrt();
    let circle = match GeneralizedCircle::from_center_radius(best, radius) {
        Ok(c) => c,
        Err(_) => return SeparatingCircle::NotFound { best_clearance: f64::NEG_INFINITY },
    };
    match circle_separates(&circle, sampling) {
        Some(clearance) if clearance > tolerance => SeparatingCircle::Found { circle, clearance },
        Some(clearance) => SeparatingCircle::NotFound { best_clearance: clearance },
        None => SeparatingCircle::NotFound { best_clearance: (near_out - radius).min(radius - far_in) },
    }
}

/// Independent geometric check that a circle separates the sampled boundary
/// components: every inner sample strictly inside, every outer sample
/// strictly outside. Returns the clearance (minimum distance from the
/// circle to either sampling) on success.
pub fn circle_separates(circle: &GeneralizedCircle, sampling: &BoundarySampling) -> Option<f64> {
    let center = circle.center()?;
    let radius = circle.radius()?;
    let mut clearance = f64::INFINITY;
    for p in sampling.inner() {
        let d = (p - center).norm();
        if d >= radius {
            return None;
        }
        clearance = clearance.min(radius - d);
    }
    for p in sampling.outer() {
        let d = (p - center).norm();
        if d <= radius {
            return None;
        }
        clearance = clearance.min(d - radius);
    }
    Some(clearance)
}

/// A rational map given by numerator/denominator coefficients in ascending
/// powers of z.
#[derive(Debug, Clone)]
pub struct RationalMap {
    num: Vec<C>,
    den: Vec<C>,
}

impl RationalMap {
    pub fn new(num: Vec<C>, den: Vec<C>) -> Result<Self> {
        if num.iter().all(|c| c.norm_sqr() == 0.0) || den.iter().all(|c| c.norm_sqr() == 0.0) {
            return Err(Error::InvalidAnnulus("zero rational map".into()));
        }
        Ok(Self { num, den })
    }

    /// z ↦ z^d.
    pub fn monomial(d: u32) -> Self {
        let mut num = vec![C::new(0.0, 0.0); d as usize + 1];
        num[d as usize] = C::new(1.0, 0.0);
        Self { num, den: vec![C::new(1.0, 0.0)] }
    }

    pub fn identity() -> Self {
        Self::monomial(1)
    }

    pub fn eval(&self, z: C) -> C {
        let horner = |cs: &[C]| {
            let mut acc = C::new(0.0, 0.0);
            for c in cs.iter().rev() {
                acc = acc * z + c;
            }
            acc
        };
        horner(&self.num) / horner(&self.den)
    }
}

/// Empirical witness for the modulus ratio of a holomorphic annulus map.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CoverRatioWitness {
    /// Winding degree of the image of the domain's core curve.
    pub covering_degree: i32,
    pub mod_domain: f64,
    pub mod_target: f64,
    /// mod(domain) / mod(target), an empirical lower-bound witness for the
    /// constant relating the two moduli; no closed form is claimed.
    pub ratio: f64,
}

/// Measures mod(a)/mod(b) for a holomorphic map q : a → b whose image of
/// the core loop of `a` wraps the core of `b` (checked by winding number
/// around the hole of `b`, and by containment of the image in `b`).
pub fn covering_modulus_ratio(
    q: &RationalMap,
    a: &AnnulusSpec,
    b: &AnnulusSpec,
    params: &NumericParams,
    samples: usize,
) -> Result<CoverRatioWitness> {
    let n = samples.max(64);
    let core = a.core_curve(n)?;
    let image: Vec<C> = core.iter().map(|&z| q.eval(z)).collect();
    let b_sampling = b.sample_boundaries(params.boundary_samples)?;
    let hole_probe = b_sampling.inner().iter().sum::<C>() / b_sampling.inner().len() as f64;
    let degree = winding_number(&image, hole_probe);
    if degree == 0 {
        return Err(Error::NotEssential);
    }
    // the image of the core must stay inside the target annulus
    for w in &image {
        if winding_number(b_sampling.outer(), *w) == 0
            || winding_number(b_sampling.inner(), *w) != 0
        {
            return Err(Error::NotEssential);
        }
    }
    let mod_domain = a.modulus(params)?;
    let mod_target = b.modulus(params)?;
    Ok(CoverRatioWitness {
        covering_degree: degree.abs(),
        mod_domain,
        mod_target,
        ratio: mod_domain / mod_target,
    })
}
