//! Classical Schottky configurations: circle pairings, verification of the
//! defining conditions, reduced-word enumeration, and limit-set sampling.
//!
//! A configuration is g pairings (C_j, C_j', A_j) where A_j maps the
//! exterior of C_j onto the interior of C_j' and the 2g circles are pairwise
//! disjoint. The common exterior of the closed disks is the standard
//! fundamental domain; words in the pairing maps push it into nested disks
//! whose radii shrink toward the limit set.

use crate::circle::{circles_relation, CircleRelation, GeneralizedCircle};
use crate::moebius::{MoebiusMap, SpherePoint};
use crate::{tol, Error, Result};
use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

/// Default hard cap on enumerated words; (2g−1)^k growth makes anything
/// larger a mistake at desk scale.
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

/// One circle pairing: `map` sends `c` to `c_prime` as point sets and the
/// exterior side of `c` onto the interior side of `c_prime`.
#[derive(Debug, Clone)]
pub struct CirclePairing {
    pub c: GeneralizedCircle,
    pub c_prime: GeneralizedCircle,
    pub map: MoebiusMap,
    /// Twist angle when built from the one-parameter family; raw pairings
    /// have none.
    pub twist: Option<f64>,
}

impl CirclePairing {
    /// Pairing in the closed-form family z ↦ q + ρρ'e^{iθ}/(z − p), which
    /// carries |z − p| = ρ onto |w − q| = ρ' and exterior to interior.
    /// The circles must be externally disjoint.
    pub fn from_circles(
        center: C,
        radius: f64,
        center_prime: C,
        radius_prime: f64,
        twist: f64,
    ) -> Result<Self> {
        let c = GeneralizedCircle::from_center_radius(center, radius)?;
        let c_prime = GeneralizedCircle::from_center_radius(center_prime, radius_prime)?;
        match circles_relation(&c, &c_prime, tol::GEOMETRIC) {
            CircleRelation::DisjointExternal => {}
            CircleRelation::Tangent => return Err(Error::CirclesNotDisjoint("tangent")),
            CircleRelation::Crossing => return Err(Error::CirclesNotDisjoint("crossing")),
            CircleRelation::DisjointNested => return Err(Error::CirclesNotDisjoint("nested")),
        }
        Self::from_circles_unverified(center, radius, center_prime, radius_prime, twist)
    }

    /// Same closed-form family as [`CirclePairing::from_circles`] but without
    /// the disjointness precondition, so that a configuration built from bad
    /// input fails `verify_classical` instead of failing to construct.
    pub fn from_circles_unverified(
        center: C,
        radius: f64,
        center_prime: C,
        radius_prime: f64,
        twist: f64,
    ) -> Result<Self> {
        let c = GeneralizedCircle::from_center_radius(center, radius)?;
        let c_prime = GeneralizedCircle::from_center_radius(center_prime, radius_prime)?;
        // w = q + k/(z − p) with k = ρρ'e^{iθ}: matrix ((q, k − qp), (1, −p))
        let k = C::from_polar(radius * radius_prime, twist);
        let map =
            MoebiusMap::new(center_prime, k - center_prime * center, C::new(1.0, 0.0), -center)?;
        Ok(Self { c, c_prime, map, twist: Some(twist) })
    }

    /// Accepts an arbitrary Möbius pairing, re-checking the type invariants:
    /// the map carries `c` onto `c_prime` (sampled) and exterior to interior.
    pub fn from_raw(
        c: GeneralizedCircle,
        c_prime: GeneralizedCircle,
        map: MoebiusMap,
    ) -> Result<Self> {
        if c.is_line() || c_prime.is_line() {
            return Err(Error::DegenerateCircle("pairings require bounded circles"));
        }
        let pairing = Self { c, c_prime, map, twist: None };
        let (ok, dev) = pairing.check(tol::GEOMETRIC);
        if !ok {
            return Err(Error::UnverifiedConfiguration(format!(
                "pairing map does not send C onto C' (deviation {dev:.3e})"
            )));
        }
        if !pairing.orientation_ok(tol::GEOMETRIC) {
            return Err(Error::UnverifiedConfiguration(
                "pairing map does not send the exterior of C into the interior of C'".into(),
            ));
        }
        Ok(pairing)
    }

    /// Checks map(C) = C' on coefficients and sampled points; returns
    /// (ok, max deviation).
    pub fn check(&self, tolerance: f64) -> (bool, f64) {
        let image = self.c.transform(&self.map);
        let mut dev: f64 = match (image.center(), image.radius(), self.c_prime.center(), self.c_prime.radius())
        {
            (Some(ic), Some(ir), Some(tc), Some(tr)) => (ic - tc).norm().max((ir - tr).abs()),
            _ => return (false, f64::INFINITY),
        };
        for k in 0..16 {
            let z = self.c.point_at(k as f64 * std::f64::consts::TAU / 16.0).unwrap();
            let w = self.map.apply_c(z);
            let r = self.c_prime.radius().unwrap();
            dev = dev.max(((w - self.c_prime.center().unwrap()).norm() - r).abs());
        }
        (dev < tolerance.max(1e-12) * self.scale(), dev)
    }

    fn scale(&self) -> f64 {
        let r1 = self.c.radius().unwrap_or(1.0);
        let r2 = self.c_prime.radius().unwrap_or(1.0);
        let d = match (self.c.center(), self.c_prime.center()) {
            (Some(a), Some(b)) => (a - b).norm(),
            _ => 1.0,
        };
        r1.max(r2).max(d).max(1.0)
    }

    /// True when a sample exterior point of `c` lands inside `c_prime`.
    pub fn orientation_ok(&self, tolerance: f64) -> bool {
        // ∞ is exterior to every bounded circle
        match self.map.apply(SpherePoint::Infinity) {
            SpherePoint::Infinity => false,
            SpherePoint::Finite(w) => self.c_prime.form(w) < -tolerance,
        }
    }
}

/// g circle pairings whose 2g circles bound a common 2g-connected region.
#[derive(Debug, Clone)]
pub struct SchottkyConfiguration {
    pairings: Vec<CirclePairing>,
}

/// Outcome of checking the classical defining conditions. The condition
/// A_j(D) ∩ D = ∅ is implied by disjointness plus orientation and is
/// recorded as derived.
#[derive(Debug, Clone, Serialize)]
pub struct ClassicalReport {
    pub genus: usize,
    /// (i) the 2g circles are pairwise externally disjoint.
    pub circles_disjoint: bool,
    /// First violating pair, as circle indices, when (i) fails.
    pub first_overlap: Option<(usize, usize)>,
    /// (ii) per pairing: map sends C_j onto C_j' within tolerance.
    pub pairing_maps_circles: Vec<bool>,
    /// (iii) per pairing: exterior of C_j maps into the interior of C_j'.
    pub orientation: Vec<bool>,
    /// A_j(D) ∩ D = ∅, derived from (i) + (iii).
    pub domain_moves_off_itself: bool,
    pub passed: bool,
}

/// A letter of the free group: generator index with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter { index: self.index, inverse: !self.inverse }
    }
}

/// Freely reduced word; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ReducedWord(pub Vec<Letter>);

impl ReducedWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn notation(&self) -> String {
        if self.0.is_empty() {
            return "e".to_string();
        }
        self.0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("A{}'", l.index + 1)
                } else {
                    format!("A{}", l.index + 1)
                }
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

/// Sampled limit points: one per reduced word of the requested length,
/// together with the radius of the nested disk enclosing each point.
#[derive(Debug, Clone, Serialize)]
pub struct LimitSample {
    pub points: Vec<LimitPoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitPoint {
    pub word: ReducedWord,
    pub point: SpherePoint,
    pub enclosing_radius: f64,
}

impl SchottkyConfiguration {
    /// Builds a configuration from pairings; requires rank ≥ 2 and bounded
    /// circles. Classical verification is a separate step.
    pub fn new(pairings: Vec<CirclePairing>) -> Result<Self> {
        if pairings.len() < 2 {
            return Err(Error::RankTooSmall(pairings.len()));
        }
        if pairings.iter().any(|p| p.c.is_line() || p.c_prime.is_line()) {
            return Err(Error::DegenerateCircle("configuration circles must be bounded"));
        }
        Ok(Self { pairings })
    }

    /// Koebe-symmetric configuration: circles with real centers on the real
    /// axis, consecutive input circles paired with real-coefficient maps, so
    /// the whole circle set is invariant under complex conjugation.
    pub fn koebe_symmetric(centers: &[C], radii: &[f64]) -> Result<Self> {
        if centers.len() != radii.len() || centers.len() % 2 != 0 {
            return Err(Error::UnverifiedConfiguration(
                "need an even number of circles with matching radii".into(),
            ));
        }
        for c in centers {
            if c.im.abs() > tol::GEOMETRIC {
                return Err(Error::UnverifiedConfiguration(format!(
                    "symmetric centers must be real, got {c}"
                )));
            }
        }
        let pairings = centers
            .chunks(2)
            .zip(radii.chunks(2))
            .map(|(cs, rs)| {
                CirclePairing::from_circles(
                    C::new(cs[0].re, 0.0),
                    rs[0],
                    C::new(cs[1].re, 0.0),
                    rs[1],
                    0.0,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let cfg = Self::new(pairings)?;
        let report = cfg.verify_classical();
        if !report.passed {
            return Err(Error::UnverifiedConfiguration(
                "symmetric circles overlap or fail pairing checks".into(),
            ));
        }
        Ok(cfg)
    }

    pub fn genus(&self) -> usize {
        self.pairings.len()
    }

    pub fn pairings(&self) -> &[CirclePairing] {
        &self.pairings
    }

    /// All 2g circles in the fixed order C_1, C_1', C_2, C_2', …
    pub fn circles(&self) -> Vec<&GeneralizedCircle> {
        self.pairings.iter().flat_map(|p| [&p.c, &p.c_prime]).collect()
    }

    /// Checks the classical defining conditions and reports each one.
    pub fn verify_classical(&self) -> ClassicalReport {
        let circles = self.circles();
        let mut disjoint = true;
        let mut first_overlap = None;
        for i in 0..circles.len() {
            for j in i + 1..circles.len() {
                if circles_relation(circles[i], circles[j], tol::GEOMETRIC)
                    != CircleRelation::DisjointExternal
                {
                    disjoint = false;
                    if first_overlap.is_none() {
                        first_overlap = Some((i, j));
                    }
                }
            }
        }
        let pairing_maps_circles: Vec<bool> =
            self.pairings.iter().map(|p| p.check(tol::GEOMETRIC).0).collect();
        let orientation: Vec<bool> =
            self.pairings.iter().map(|p| p.orientation_ok(tol::GEOMETRIC)).collect();
        let derived =
            disjoint && orientation.iter().all(|&b| b) && pairing_maps_circles.iter().all(|&b| b);
        ClassicalReport {
            genus: self.genus(),
            circles_disjoint: disjoint,
            first_overlap,
            pairing_maps_circles,
            orientation,
            domain_moves_off_itself: derived,
            passed: derived,
        }
    }

    fn require_verified(&self) -> Result<()> {
        let report = self.verify_classical();
        if report.passed {
            Ok(())
        } else {
            Err(Error::UnverifiedConfiguration(
                serde_json::to_string(&report).unwrap_or_else(|_| "verification failed".into()),
            ))
        }
    }

    pub fn map_of_letter(&self, l: Letter) -> MoebiusMap {
        let m = &self.pairings[l.index].map;
        if l.inverse {
            m.inverse()
        } else {
            *m
        }
    }

    /// Disk into which the letter's map pushes the fundamental domain:
    /// interior of C_j' for A_j, interior of C_j for A_j⁻¹.
    pub fn disk_of_letter(&self, l: Letter) -> &GeneralizedCircle {
        if l.inverse {
            &self.pairings[l.index].c
        } else {
            &self.pairings[l.index].c_prime
        }
    }

    fn alphabet(&self) -> Vec<Letter> {
        let g = self.genus();
        // generators before inverses, each block by index
        (0..g)
            .map(|i| Letter { index: i, inverse: false })
            .chain((0..g).map(|i| Letter { index: i, inverse: true }))
            .collect()
    }

    /// Enumerates all freely reduced words up to `max_len` in length-major
    /// lexicographic order (generators before inverses), with their maps.
    /// The count is exactly 1 + Σ_{k=1..max_len} 2g·(2g−1)^{k−1}.
    pub fn enumerate_words(
        &self,
        max_len: usize,
        cap: usize,
    ) -> Result<Vec<(ReducedWord, MoebiusMap)>> {
        let g = self.genus();
        let mut expected: usize = 1;
        let mut layer = 2 * g;
        for _ in 1..=max_len {
            expected = expected.checked_add(layer).ok_or(Error::WordCapExceeded(cap))?;
            layer = layer.checked_mul(2 * g - 1).ok_or(Error::WordCapExceeded(cap))?;
        }
        if expected > cap {
            return Err(Error::WordCapExceeded(cap));
        }

        let alphabet = self.alphabet();
        let mut out: Vec<(ReducedWord, MoebiusMap)> =
            vec![(ReducedWord::default(), MoebiusMap::identity())];
        let mut frontier: Vec<(ReducedWord, MoebiusMap)> = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(frontier.len() * (2 * g - 1) + 2);
            for (word, map) in &frontier {
                for &l in &alphabet {
                    if word.0.last().is_some_and(|&last| last == l.inv()) {
                        continue; // adjacent cancellation
                    }
                    let mut w = word.clone();
                    w.0.push(l);
                    // the word's first letter is applied last
                    let m = map.compose(&self.map_of_letter(l));
                    next.push((w, m));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        debug_assert_eq!(out.len(), expected);
        Ok(out)
    }

    /// Limit-set sample: for every reduced word of length exactly `max_len`,
    /// the image under the word of the center of the disk indexed by its
    /// last (first-applied) letter, plus the radius of the enclosing image
    /// disk. Requires a configuration passing classical verification.
    pub fn limit_points(&self, max_len: usize, cap: usize) -> Result<LimitSample> {
        self.require_verified()?;
        if max_len == 0 {
            return Ok(LimitSample { points: Vec::new() });
        }
        let words = self.enumerate_words(max_len, cap)?;
        let mut points = Vec::new();
        for (word, map) in words.into_iter().filter(|(w, _)| w.len() == max_len) {
            let last = *word.0.last().unwrap();
            let disk = self.disk_of_letter(last);
            let image_disk = disk.transform(&map);
            let point = map.apply(SpherePoint::from_complex(disk.center().unwrap()));
            points.push(LimitPoint {
                word,
                point,
                enclosing_radius: image_disk.radius().unwrap_or(f64::INFINITY),
            });
        }
        Ok(LimitSample { points })
    }

    /// Membership in the open fundamental domain: strictly outside every
    /// closed disk (boundary excluded, tolerance-controlled).
    pub fn in_fundamental_domain(&self, z: SpherePoint) -> bool {
        self.in_fundamental_domain_with_tol(z, tol::GEOMETRIC)
    }

    pub fn in_fundamental_domain_with_tol(&self, z: SpherePoint, tolerance: f64) -> bool {
        match z {
            SpherePoint::Infinity => true,
            SpherePoint::Finite(z) => self.circles().iter().all(|c| {
                let center = c.center().unwrap();
                let r = c.radius().unwrap();
                (z - center).norm() > r + tolerance * r.max(1.0)
            }),
        }
    }

    /// Euler characteristic of the closed surface obtained by gluing the
    /// boundary circles in pairs, computed structurally: `marks` points per
    /// circle are identified through the pairing maps (orbit count via
    /// union-find), the circles contribute arcs, and cutting the domain open
    /// along 2g − 1 arcs leaves a single disk face. Must equal 2 − 2g.
    pub fn quotient_euler_characteristic(&self, marks: usize) -> i64 {
        let g = self.genus() as i64;
        let n = marks.max(1);
        let total = 2 * self.genus() * n;
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (j, pairing) in self.pairings.iter().enumerate() {
            let r = pairing.c.radius().unwrap();
            let center = pairing.c.center().unwrap();
            let cp_center = pairing.c_prime.center().unwrap();
            for k in 0..n {
                // mark k on C_j is glued to the image slot on C_j'; the image
                // angles define the slots there, so this is a relabeling
                let z = center + C::from_polar(r, k as f64 * std::f64::consts::TAU / n as f64);
                let w = pairing.map.apply_c(z);
                let angle = (w - cp_center).arg().rem_euclid(std::f64::consts::TAU);
                let slot = ((angle / std::f64::consts::TAU * n as f64).round() as usize) % n;
                let a = find(&mut parent, (2 * j) * n + k);
                let b = find(&mut parent, (2 * j + 1) * n + slot);
                parent[a] = b;
            }
        }
        let mut vertices = 0i64;
        for i in 0..total {
            if find(&mut parent, i) == i {
                vertices += 1;
            }
        }
        // edges: n arcs per circle glued in pairs (g·n survive) plus 2g − 1
        // cut arcs joining the circles into a tree; one disk face remains
        let edges = g * n as i64 + (2 * g - 1);
        let faces = 1i64;
        vertices - edges + faces
    }
}

/// JSON form of a configuration: genus plus per-pairing circle data and
/// twist angle, matching the CLI input format.
#[derive(Debug, Serialize, Deserialize)]
pub struct ConfigurationFile {
    pub genus: usize,
    pub pairings: Vec<PairingFile>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PairingFile {
    pub c: GeneralizedCircle,
    pub c_prime: GeneralizedCircle,
    pub theta: f64,
}

impl ConfigurationFile {
    pub fn build(&self) -> Result<SchottkyConfiguration> {
        if self.pairings.len() != self.genus {
            return Err(Error::UnverifiedConfiguration(format!(
                "genus {} does not match {} pairings",
                self.genus,
                self.pairings.len()
            )));
        }
        let pairings = self
            .pairings
            .iter()
            .map(|p| {
                let c = p.c.center().ok_or(Error::DegenerateCircle("line in configuration"))?;
                let r = p.c.radius().unwrap_or(0.0);
                let cp =
                    p.c_prime.center().ok_or(Error::DegenerateCircle("line in configuration"))?;
                let rp = p.c_prime.radius().unwrap_or(0.0);
                // bad geometry should surface as a verification failure, not
                // as a parse error
                CirclePairing::from_circles_unverified(c, r, cp, rp, p.theta)
            })
            .collect::<Result<Vec<_>>>()?;
        SchottkyConfiguration::new(pairings)
    }

    pub fn from_configuration(cfg: &SchottkyConfiguration) -> Result<Self> {
        let pairings = cfg
            .pairings()
            .iter()
            .map(|p| {
                p.twist.map(|theta| PairingFile { c: p.c, c_prime: p.c_prime, theta }).ok_or(
                    Error::UnverifiedConfiguration("raw pairings carry no twist angle".into()),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { genus: cfg.genus(), pairings })
    }
}

/// The genus-2 configuration with circles of radius 1 centered at
/// −6, −2, 2, 6 on the real axis, paired (−6 ↔ −2) and (2 ↔ 6).
pub fn real_axis_genus2() -> SchottkyConfiguration {
    let p1 = CirclePairing::from_circles(C::new(-6.0, 0.0), 1.0, C::new(-2.0, 0.0), 1.0, 0.0)
        .expect("disjoint by construction");
    let p2 = CirclePairing::from_circles(C::new(2.0, 0.0), 1.0, C::new(6.0, 0.0), 1.0, 0.0)
        .expect("disjoint by construction");
    SchottkyConfiguration::new(vec![p1, p2]).expect("rank 2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::MapClass;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    /// Random verified configuration: circles strung along the real axis
    /// with positive gaps, random radii and twists.
    pub(crate) fn random_config(rng: &mut ChaCha8Rng, genus: usize) -> SchottkyConfiguration {
        let mut centers = Vec::new();
        let mut radii = Vec::new();
        let mut x = 0.0;
        for _ in 0..2 * genus {
            let r = rng.gen_range(0.4..1.5);
            let gap = rng.gen_range(0.3..1.2);
            x += r + gap;
            centers.push(x);
            x += r;
            radii.push(r);
        }
        let pairings = (0..genus)
            .map(|j| {
                CirclePairing::from_circles(
                    c(centers[2 * j], 0.0),
                    radii[2 * j],
                    c(centers[2 * j + 1], 0.0),
                    radii[2 * j + 1],
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
                .unwrap()
            })
            .collect();
        SchottkyConfiguration::new(pairings).unwrap()
    }

    #[test]
    fn family_pairing_examples() {
        let p = CirclePairing::from_circles(c(0.0, 0.0), 1.0, c(10.0, 0.0), 1.0, 0.0).unwrap();
        // z ↦ 10 + 1/z carries 1 to 11, on the target circle
        let w = p.map.apply_c(c(1.0, 0.0));
        assert!((w - c(11.0, 0.0)).norm() < 1e-12);
        assert!(((w - c(10.0, 0.0)).norm() - 1.0).abs() < 1e-12);

        let p = CirclePairing::from_circles(c(0.0, 0.0), 2.0, c(0.0, 8.0), 1.0, 0.0).unwrap();
        // z ↦ 8i + 2/z sends 2 to 8i + 1
        let w = p.map.apply_c(c(2.0, 0.0));
        assert!((w - c(1.0, 8.0)).norm() < 1e-12);

        // half-turn twist changes the map but not the image circle
        let q =
            CirclePairing::from_circles(c(0.0, 0.0), 2.0, c(0.0, 8.0), 1.0, std::f64::consts::PI)
                .unwrap();
        assert!(!q.map.approx_eq(&p.map, 1e-6));
        let img_p = p.c.transform(&p.map);
        let img_q = q.c.transform(&q.map);
        assert!((img_p.center().unwrap() - img_q.center().unwrap()).norm() < 1e-9);
        assert!((img_p.radius().unwrap() - img_q.radius().unwrap()).abs() < 1e-9);
    }

    #[test]
    fn overlapping_pairing_rejected() {
        assert!(CirclePairing::from_circles(c(0.0, 0.0), 1.0, c(1.0, 0.0), 1.0, 0.0).is_err());
        assert!(CirclePairing::from_circles(c(0.0, 0.0), 1.0, c(2.0, 0.0), 1.0, 0.0).is_err());
        assert!(CirclePairing::from_circles(c(0.0, 0.0), -1.0, c(9.0, 0.0), 1.0, 0.0).is_err());
    }

    #[test]
    fn raw_pairing_reconstruction() {
        let family = CirclePairing::from_circles(c(0.0, 0.0), 1.0, c(10.0, 0.0), 1.0, 0.3).unwrap();
        let raw = CirclePairing::from_raw(family.c, family.c_prime, family.map).unwrap();
        assert!(raw.twist.is_none());
        // a map sending exterior to exterior is rejected
        let bad = MoebiusMap::translation(c(10.0, 0.0));
        assert!(CirclePairing::from_raw(family.c, family.c_prime, bad).is_err());
    }

    #[test]
    fn genus2_real_axis_verifies() {
        let report = real_axis_genus2().verify_classical();
        assert!(report.passed, "{report:?}");
        assert!(report.circles_disjoint);
        assert!(report.pairing_maps_circles.iter().all(|&b| b));
        assert!(report.orientation.iter().all(|&b| b));
        assert!(report.domain_moves_off_itself);
    }

    #[test]
    fn overlapping_circles_fail_condition_one() {
        // radius 2.5 makes adjacent circles overlap (distance 4 < 5)
        let p1 =
            CirclePairing::from_circles_unverified(c(-6.0, 0.0), 2.5, c(-2.0, 0.0), 2.5, 0.0)
                .unwrap();
        let p2 =
            CirclePairing::from_circles_unverified(c(2.0, 0.0), 2.5, c(6.0, 0.0), 2.5, 0.0)
                .unwrap();
        let cfg = SchottkyConfiguration::new(vec![p1, p2]).unwrap();
        let report = cfg.verify_classical();
        assert!(!report.passed);
        assert!(!report.circles_disjoint);
        assert!(report.first_overlap.is_some());
        // the per-pairing conditions still hold; only (i) fails
        assert!(report.pairing_maps_circles.iter().all(|&b| b));
        assert!(report.orientation.iter().all(|&b| b));
    }

    #[test]
    fn rank_one_rejected() {
        let p = CirclePairing::from_circles(c(-6.0, 0.0), 1.0, c(-2.0, 0.0), 1.0, 0.0).unwrap();
        assert!(matches!(SchottkyConfiguration::new(vec![p]), Err(Error::RankTooSmall(1))));
    }

    #[test]
    fn word_counts_match_free_group_formula() {
        let cfg = real_axis_genus2();
        assert_eq!(cfg.enumerate_words(1, DEFAULT_WORD_CAP).unwrap().len(), 5);
        assert_eq!(cfg.enumerate_words(2, DEFAULT_WORD_CAP).unwrap().len(), 17);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg3 = random_config(&mut rng, 3);
        assert_eq!(cfg3.enumerate_words(2, DEFAULT_WORD_CAP).unwrap().len(), 37);
    }

    #[test]
    fn word_cap_enforced() {
        let cfg = real_axis_genus2();
        assert!(matches!(cfg.enumerate_words(4, 100), Err(Error::WordCapExceeded(100))));
    }

    #[test]
    fn words_are_reduced_and_sorted() {
        let cfg = real_axis_genus2();
        let words = cfg.enumerate_words(3, DEFAULT_WORD_CAP).unwrap();
        for (w, _) in &words {
            for pair in w.0.windows(2) {
                assert_ne!(pair[0], pair[1].inv(), "cancellation in {}", w.notation());
            }
        }
        for pair in words.windows(2) {
            assert!(pair[0].0.len() <= pair[1].0.len(), "length-major order violated");
        }
    }

    #[test]
    fn no_duplicate_maps_at_desk_scale() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..3 {
            let cfg = random_config(&mut rng, 2);
            assert!(cfg.verify_classical().passed);
            let words = cfg.enumerate_words(4, DEFAULT_WORD_CAP).unwrap();
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    assert!(
                        !words[i].1.approx_eq(&words[j].1, 1e-7),
                        "duplicate maps for {} and {}",
                        words[i].0.notation(),
                        words[j].0.notation()
                    );
                }
            }
        }
    }

    #[test]
    fn pairing_maps_are_loxodromic() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..5 {
            let cfg = random_config(&mut rng, 2);
            assert!(cfg.verify_classical().passed);
            for p in cfg.pairings() {
                assert_eq!(p.map.classify(), MapClass::Loxodromic);
            }
        }
    }

    #[test]
    fn limit_sample_basics() {
        let cfg = real_axis_genus2();
        assert!(cfg.limit_points(0, DEFAULT_WORD_CAP).unwrap().points.is_empty());

        let sample = cfg.limit_points(1, DEFAULT_WORD_CAP).unwrap();
        assert_eq!(sample.points.len(), 4);
        // one point inside each of the four circles
        let circles = cfg.circles();
        let mut used = vec![false; 4];
        for lp in &sample.points {
            let z = lp.point.as_complex().unwrap();
            let inside: Vec<usize> = (0..4).filter(|&i| circles[i].form(z) < 0.0).collect();
            assert_eq!(inside.len(), 1, "limit point must lie in exactly one circle");
            used[inside[0]] = true;
        }
        assert!(used.iter().all(|&b| b));
    }

    #[test]
    fn limit_points_requires_verification() {
        let p1 =
            CirclePairing::from_circles_unverified(c(-6.0, 0.0), 2.5, c(-2.0, 0.0), 2.5, 0.0)
                .unwrap();
        let p2 =
            CirclePairing::from_circles_unverified(c(2.0, 0.0), 2.5, c(6.0, 0.0), 2.5, 0.0)
                .unwrap();
        let cfg = SchottkyConfiguration::new(vec![p1, p2]).unwrap();
        assert!(matches!(
            cfg.limit_points(2, DEFAULT_WORD_CAP),
            Err(Error::UnverifiedConfiguration(_))
        ));
    }

    #[test]
    fn nested_disks_shrink_along_prefix_chains() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let cfg = random_config(&mut rng, 2);
        assert!(cfg.verify_classical().passed);
        for (word, _) in cfg.enumerate_words(4, DEFAULT_WORD_CAP).unwrap() {
            if word.is_empty() {
                continue;
            }
            let mut prev: Option<GeneralizedCircle> = None;
            let mut prefix_map = MoebiusMap::identity();
            for (k, &letter) in word.0.iter().enumerate() {
                let disk = cfg.disk_of_letter(letter).transform(&prefix_map);
                if let Some(outer) = prev {
                    let (oc, or) = (outer.center().unwrap(), outer.radius().unwrap());
                    let (ic, ir) = (disk.center().unwrap(), disk.radius().unwrap());
                    assert!(ir < or, "radii must strictly decrease along {}", word.notation());
                    assert!(
                        (ic - oc).norm() + ir < or + 1e-9,
                        "disk of prefix {} not nested in its predecessor",
                        k + 1
                    );
                }
                prefix_map = prefix_map.compose(&cfg.map_of_letter(letter));
                prev = Some(disk);
            }
        }
    }

    #[test]
    fn length2_points_inside_length1_disks() {
        let cfg = real_axis_genus2();
        let l1 = cfg.limit_points(1, DEFAULT_WORD_CAP).unwrap();
        let l2 = cfg.limit_points(2, DEFAULT_WORD_CAP).unwrap();
        for lp in &l2.points {
            let disk = cfg.disk_of_letter(lp.word.0[0]);
            let z = lp.point.as_complex().unwrap();
            assert!(disk.form(z) < 0.0, "length-2 point escaped its prefix disk");
        }
        // distinct words gave distinct points
        for (i, a) in l2.points.iter().enumerate() {
            for b in &l2.points[i + 1..] {
                let (za, zb) = (a.point.as_complex().unwrap(), b.point.as_complex().unwrap());
                assert!((za - zb).norm() > 1e-9);
            }
        }
        assert_eq!(l1.points.len(), 4);
        assert_eq!(l2.points.len(), 12);
    }

    #[test]
    fn fundamental_domain_membership() {
        let cfg = real_axis_genus2();
        assert!(cfg.in_fundamental_domain(SpherePoint::finite(0.0, 10.0)));
        assert!(cfg.in_fundamental_domain(SpherePoint::Infinity));
        assert!(!cfg.in_fundamental_domain(SpherePoint::finite(-6.0, 0.0)));
        // boundary points excluded: the domain is open
        assert!(!cfg.in_fundamental_domain(SpherePoint::finite(-5.0, 0.0)));
    }

    #[test]
    fn koebe_symmetric_construction() {
        let cfg = SchottkyConfiguration::koebe_symmetric(
            &[c(-6.0, 0.0), c(-2.0, 0.0), c(2.0, 0.0), c(6.0, 0.0)],
            &[1.0, 1.0, 1.0, 1.0],
        )
        .unwrap();
        assert!(cfg.verify_classical().passed);
        // conjugation-invariant: real centers, and the maps carry real
        // points to real points (real coefficients up to projective scale)
        for p in cfg.pairings() {
            assert!(p.c.center().unwrap().im.abs() < 1e-12);
            for x in [-20.0, 0.1, 13.5] {
                let w = p.map.apply_c(c(x, 0.0));
                assert!(w.im.abs() < 1e-9, "image of real point not real: {w}");
            }
        }

        assert!(SchottkyConfiguration::koebe_symmetric(
            &[c(-6.0, 1.0), c(-2.0, 0.0), c(2.0, 0.0), c(6.0, 0.0)],
            &[1.0, 1.0, 1.0, 1.0],
        )
        .is_err());

        let cfg = SchottkyConfiguration::koebe_symmetric(
            &[c(-8.0, 0.0), c(-3.0, 0.0), c(3.0, 0.0), c(8.0, 0.0)],
            &[1.0, 1.0, 2.0, 2.0],
        )
        .unwrap();
        assert!(cfg.verify_classical().passed);
    }

    #[test]
    fn quotient_euler_characteristic_matches_genus() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for genus in [2usize, 3, 4] {
            let cfg = random_config(&mut rng, genus);
            assert_eq!(cfg.quotient_euler_characteristic(8), 2 - 2 * genus as i64);
        }
    }

    #[test]
    fn configuration_file_round_trip() {
        let cfg = real_axis_genus2();
        let file = ConfigurationFile::from_configuration(&cfg).unwrap();
        let json = serde_json::to_string_pretty(&file).unwrap();
        let parsed: ConfigurationFile = serde_json::from_str(&json).unwrap();
        let rebuilt = parsed.build().unwrap();
        assert!(rebuilt.verify_classical().passed);
        assert_eq!(rebuilt.genus(), 2);
    }
}
