//! Seeded property suites behind `verify --suite …`: each suite exercises
//! the invariants of one module family and reports per-check results.

use crate::report::CheckEntry;
use num_complex::Complex64 as C;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schottkylab::annulus::{
    self, cover_modulus_relation, find_separating_circle, grotzsch_check, modulus_numeric,
    modulus_round, AnnulusSpec, CircleRing, LaurentMap, NumericParams, RationalMap,
    SeparatingCircle, COVER_ORIENTATION_NOTE,
};
use schottkylab::belyi::{desk_corpus, genus2_five_cycles, r_constellation};
use schottkylab::circle::{inversive_distance, GeneralizedCircle};
use schottkylab::dessin::{
    find_disjoint_loops_with_refinement, Dessin, LoopSearchOutcome, SearchLimits,
};
use schottkylab::moebius::{chordal_c, MapClass, MoebiusMap, SpherePoint};
use schottkylab::schottky::{real_axis_genus2, CirclePairing, SchottkyConfiguration};
use schottkylab::{rmap, tol};

fn random_map(rng: &mut ChaCha8Rng) -> MoebiusMap {
    loop {
        let coeff =
            |rng: &mut ChaCha8Rng| C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if let Ok(m) = MoebiusMap::new(coeff(rng), coeff(rng), coeff(rng), coeff(rng)) {
            return m;
        }
    }
}

fn random_circle(rng: &mut ChaCha8Rng) -> GeneralizedCircle {
    GeneralizedCircle::from_center_radius(
        C::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
        rng.gen_range(0.2..2.0),
    )
    .unwrap()
}

fn random_schottky(rng: &mut ChaCha8Rng, genus: usize) -> SchottkyConfiguration {
    let mut pairings = Vec::new();
    let mut x = 0.0;
    let mut circles = Vec::new();
    for _ in 0..2 * genus {
        let r = rng.gen_range(0.4..1.5);
        x += r + rng.gen_range(0.3..1.2);
        circles.push((x, r));
        x += r;
    }
    for j in 0..genus {
        pairings.push(
            CirclePairing::from_circles(
                C::new(circles[2 * j].0, 0.0),
                circles[2 * j].1,
                C::new(circles[2 * j + 1].0, 0.0),
                circles[2 * j + 1].1,
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
            .unwrap(),
        );
    }
    SchottkyConfiguration::new(pairings).unwrap()
}

/// Nested ring with the prescribed modulus, random eccentricity.
pub fn random_ring_with_modulus(rng: &mut ChaCha8Rng, modulus: f64) -> CircleRing {
    loop {
        let r1 = rng.gen_range(0.2..1.0);
        let center = C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let delta = (std::f64::consts::TAU * modulus).cosh();
        let ecc = rng.gen_range(0.0..0.8) * r1;
        // solve R² − 2·δ·r1·R·cosh-free: R from δ = (R² + r1² − e²)/(2·R·r1)
        let disc = (delta * r1) * (delta * r1) - (r1 * r1 - ecc * ecc);
        let r2 = delta * r1 + disc.sqrt();
        let dir = C::from_polar(ecc, rng.gen_range(0.0..std::f64::consts::TAU));
        let inner = GeneralizedCircle::from_center_radius(center, r1).unwrap();
        let outer = GeneralizedCircle::from_center_radius(center + dir, r2).unwrap();
        if let Ok(ring) = CircleRing::new(inner, outer) {
            if (ring.modulus() - modulus).abs() < 1e-9 {
                return ring;
            }
        }
    }
}

pub fn moebius_suite(seed: u64) -> Vec<CheckEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let mut worst_det: f64 = 0.0;
    let mut worst_inv: f64 = 0.0;
    let maps: Vec<MoebiusMap> = (0..100).map(|_| random_map(&mut rng)).collect();
    for m in &maps {
        worst_det = worst_det.max((m.det() - C::new(1.0, 0.0)).norm());
        let id = m.compose(&m.inverse());
        let dist = [
            (id.a - C::new(1.0, 0.0)).norm(),
            id.b.norm(),
            id.c.norm(),
            (id.d - C::new(1.0, 0.0)).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        worst_inv = worst_inv.max(dist.min(
            // sign-flipped representative
            [
                (id.a + C::new(1.0, 0.0)).norm(),
                id.b.norm(),
                id.c.norm(),
                (id.d + C::new(1.0, 0.0)).norm(),
            ]
            .into_iter()
            .fold(0.0, f64::max),
        ));
    }
    checks.push(
        CheckEntry::new("determinant normalization on 100 random maps", worst_det < tol::ALGEBRAIC)
            .measured(worst_det)
            .tolerance(tol::ALGEBRAIC),
    );
    checks.push(
        CheckEntry::new("group law m∘m⁻¹ = id on 100 random maps", worst_inv < tol::ALGEBRAIC)
            .measured(worst_inv)
            .tolerance(tol::ALGEBRAIC),
    );

    let mut point_action_ok = true;
    let mut worst_form: f64 = 0.0;
    for _ in 0..50 {
        let m = random_map(&mut rng);
        let c = random_circle(&mut rng);
        let image = c.transform(&m);
        for k in 0..20 {
            let z = c.point_at(k as f64 * 0.3141).unwrap();
            let w = m.apply(SpherePoint::from_complex(z));
            if !image.contains_point(w, 1e-9) {
                point_action_ok = false;
            }
            if let Some(w) = w.as_complex() {
                worst_form = worst_form.max(image.form(w).abs());
            }
        }
    }
    checks.push(
        CheckEntry::new("circle transforms track point images (50×20 samples)", point_action_ok)
            .measured(worst_form)
            .tolerance(1e-9),
    );

    let mut worst_delta: f64 = 0.0;
    for _ in 0..50 {
        let m = random_map(&mut rng);
        let (c1, c2) = (random_circle(&mut rng), random_circle(&mut rng));
        let before = inversive_distance(&c1, &c2);
        let after = inversive_distance(&c1.transform(&m), &c2.transform(&m));
        worst_delta = worst_delta.max((before - after).abs() / before.max(1.0));
    }
    checks.push(
        CheckEntry::new("inversive distance is Möbius-invariant (50 random)", worst_delta < 1e-9)
            .measured(worst_delta)
            .tolerance(1e-9),
    );

    let named = [
        MoebiusMap::scaling(C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)).unwrap(),
        MoebiusMap::scaling(C::new(4.0, 0.0)).unwrap(),
        MoebiusMap::translation(C::new(1.0, 0.0)),
    ];
    let mut conj_ok = true;
    for m in named {
        for _ in 0..25 {
            let g = random_map(&mut rng);
            if g.compose(&m).compose(&g.inverse()).classify() != m.classify() {
                conj_ok = false;
            }
        }
    }
    checks.push(CheckEntry::new("classification invariant under conjugation", conj_ok));
    checks
}

pub fn schottky_suite(seed: u64) -> Vec<CheckEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let cfg = real_axis_genus2();
    let report = cfg.verify_classical();
    checks.push(CheckEntry::new("real-axis genus-2 configuration verifies", report.passed));

    let p1 = CirclePairing::from_circles_unverified(C::new(-6.0, 0.0), 2.5, C::new(-2.0, 0.0), 2.5, 0.0)
        .unwrap();
    let p2 = CirclePairing::from_circles_unverified(C::new(2.0, 0.0), 2.5, C::new(6.0, 0.0), 2.5, 0.0)
        .unwrap();
    let bad = SchottkyConfiguration::new(vec![p1, p2]).unwrap();
    let bad_report = bad.verify_classical();
    checks.push(CheckEntry::new(
        "overlapping circles fail exactly the disjointness condition",
        !bad_report.passed
            && !bad_report.circles_disjoint
            && bad_report.pairing_maps_circles.iter().all(|&b| b)
            && bad_report.orientation.iter().all(|&b| b),
    ));

    let counts_ok = cfg.enumerate_words(1, 1_000_000).map(|w| w.len()).unwrap_or(0) == 5
        && cfg.enumerate_words(2, 1_000_000).map(|w| w.len()).unwrap_or(0) == 17
        && random_schottky(&mut rng, 3).enumerate_words(2, 1_000_000).map(|w| w.len()).unwrap_or(0) == 37;
    checks.push(CheckEntry::new("word counts 5 / 17 / 37 match the free-group formula", counts_ok));

    let mut lox_ok = true;
    let mut nesting_ok = true;
    let mut duplicate_free = true;
    for _ in 0..3 {
        let cfg = random_schottky(&mut rng, 2);
        for p in cfg.pairings() {
            lox_ok &= p.map.classify() == MapClass::Loxodromic;
        }
        let words = cfg.enumerate_words(4, 1_000_000).unwrap();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                duplicate_free &= !words[i].1.approx_eq(&words[j].1, 1e-7);
            }
        }
        for (word, _) in &words {
            let mut prefix_map = MoebiusMap::identity();
            let mut prev_radius = f64::INFINITY;
            for &letter in &word.0 {
                let disk = cfg.disk_of_letter(letter).transform(&prefix_map);
                let r = disk.radius().unwrap();
                nesting_ok &= r < prev_radius;
                prev_radius = r;
                prefix_map = prefix_map.compose(&cfg.map_of_letter(letter));
            }
        }
    }
    checks.push(CheckEntry::new("pairing maps of verified configurations are loxodromic", lox_ok));
    checks.push(CheckEntry::new("image-disk radii strictly decrease along prefix chains", nesting_ok));
    checks.push(CheckEntry::new("no duplicate word maps up to length 4", duplicate_free));

    let mut euler_ok = true;
    for genus in [2usize, 3] {
        let cfg = random_schottky(&mut rng, genus);
        euler_ok &= cfg.quotient_euler_characteristic(8) == 2 - 2 * genus as i64;
    }
    checks.push(CheckEntry::new("glued-surface Euler count equals 2 − 2g", euler_ok));

    let koebe = SchottkyConfiguration::koebe_symmetric(
        &[C::new(-8.0, 0.0), C::new(-3.0, 0.0), C::new(3.0, 0.0), C::new(8.0, 0.0)],
        &[1.0, 1.0, 2.0, 2.0],
    );
    checks.push(CheckEntry::new(
        "conjugation-symmetric configuration builds and verifies",
        koebe.map(|c| c.verify_classical().passed).unwrap_or(false),
    ));
    checks
}

pub fn lemmas_suite(seed: u64) -> Vec<CheckEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = NumericParams::default();
    let mut checks = Vec::new();

    let dev = (modulus_round(std::f64::consts::PI.exp()).unwrap() - 1.0).abs();
    checks.push(
        CheckEntry::new("mod(A_r) = (1/π)·log r normalization at r = e^π", dev < 1e-12)
            .measured(dev)
            .tolerance(1e-12),
    );

    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let rho = rng.gen_range(1.0_f64..10.0).max(1.0 + 1e-9);
        let d = rng.gen_range(1..=6u32);
        let rel = cover_modulus_relation(rho, d).unwrap();
        let target = modulus_round(rho.powi(d as i32)).unwrap();
        worst = worst.max((rel.mod_target - target).abs());
        worst = worst.max((rel.mod_target - d as f64 * rel.mod_domain).abs());
    }
    checks.push(
        CheckEntry::new("covering relation mod(A_ρ^d) = d·mod(A_ρ), 100 random (ρ, d)", worst < 1e-12)
            .measured(worst)
            .tolerance(1e-12)
            .note(COVER_ORIENTATION_NOTE),
    );

    // monotonicity on closed-form nested essential pairs
    let mut mono_ok = true;
    let mut tested = 0;
    while tested < 500 {
        let m = rng.gen_range(0.2..1.2);
        let outer_ring = random_ring_with_modulus(&mut rng, m);
        let outer = AnnulusSpec::ring(*outer_ring.inner(), *outer_ring.outer()).unwrap();
        // a concentric-in-normalized-coordinates sub-ring stays essential
        let inner = match sub_ring(&mut rng, &outer_ring) {
            Some(r) => r,
            None => continue,
        };
        match grotzsch_check(&outer, &inner, &params, 1e-9) {
            Ok(ok) => {
                mono_ok &= ok;
                tested += 1;
            }
            Err(_) => continue,
        }
    }
    checks.push(CheckEntry::new(
        "monotonicity: 500 random nested closed-form ring pairs",
        mono_ok,
    ));

    // numeric monotonicity on Laurent images
    let mut numeric_mono_ok = true;
    for _ in 0..20 {
        let r = rng.gen_range(1.6..3.0);
        // stay inside the injectivity bound |c| < r⁻²
        let c_mod = rng.gen_range(0.0..0.8 / (r * r));
        let c_arg = rng.gen_range(0.0..std::f64::consts::TAU);
        let spec = AnnulusSpec::mapped(
            r,
            LaurentMap::joukowski(C::from_polar(c_mod, c_arg)),
            params.boundary_samples,
        )
        .unwrap();
        let sampling = spec.sample_boundaries(params.boundary_samples).unwrap();
        // concentric circles strictly between the image curves
        let inner_far = sampling.inner().iter().map(|z| z.norm()).fold(0.0, f64::max);
        let outer_near = sampling.outer().iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        if inner_far * 1.05 >= outer_near * 0.95 {
            continue;
        }
        let ring = CircleRing::new(
            GeneralizedCircle::from_center_radius(C::new(0.0, 0.0), inner_far * 1.05).unwrap(),
            GeneralizedCircle::from_center_radius(C::new(0.0, 0.0), outer_near * 0.95).unwrap(),
        )
        .unwrap();
        match grotzsch_check(&spec, &ring, &params, 0.01) {
            Ok(ok) => numeric_mono_ok &= ok,
            Err(_) => numeric_mono_ok = false,
        }
    }
    checks.push(CheckEntry::new(
        "monotonicity against numeric moduli on 20 Laurent-image annuli",
        numeric_mono_ok,
    ));

    // separating circles above the threshold modulus
    let mut found_all = true;
    let mut worst_clearance = f64::INFINITY;
    for _ in 0..200 {
        let m = rng.gen_range(0.5 + 1e-6..2.5);
        let ring = random_ring_with_modulus(&mut rng, m);
        let spec = AnnulusSpec::ring(*ring.inner(), *ring.outer()).unwrap();
        let sampling = spec.sample_boundaries(params.boundary_samples).unwrap();
        match find_separating_circle(&sampling, 1e-9) {
            SeparatingCircle::Found { circle, clearance } => {
                worst_clearance = worst_clearance.min(clearance);
                found_all &= annulus::circle_separates(&circle, &sampling).is_some();
            }
            SeparatingCircle::NotFound { .. } => found_all = false,
        }
    }
    checks.push(
        CheckEntry::new(
            "separating circle found on 200 random rings with modulus > 1/2",
            found_all && worst_clearance > 1e-9,
        )
        .measured(worst_clearance)
        .tolerance(1e-9),
    );

    // numeric oracle accuracy and convergence
    let mut numeric_ok = true;
    let mut worst_rel: f64 = 0.0;
    for _ in 0..6 {
        let m = rng.gen_range(0.3..1.1);
        let ring = random_ring_with_modulus(&mut rng, m);
        let spec = AnnulusSpec::ring(*ring.inner(), *ring.outer()).unwrap();
        let sampling = spec.sample_boundaries(params.boundary_samples).unwrap();
        let exact = ring.modulus();
        let est = modulus_numeric(&sampling, params.grid_h).unwrap();
        worst_rel = worst_rel.max((est - exact).abs() / exact);
        numeric_ok &= (est - exact).abs() < 0.01 * exact;
    }
    {
        let ring = random_ring_with_modulus(&mut rng, 0.7);
        let spec = AnnulusSpec::ring(*ring.inner(), *ring.outer()).unwrap();
        let sampling = spec.sample_boundaries(1024).unwrap();
        let exact = ring.modulus();
        let e1 = (modulus_numeric(&sampling, 0.04).unwrap() - exact).abs();
        let e2 = (modulus_numeric(&sampling, 0.02).unwrap() - exact).abs();
        numeric_ok &= e2 <= e1 + 1e-12;
    }
    checks.push(
        CheckEntry::new("numeric modulus within 1% of closed forms, improving under halving", numeric_ok)
            .measured(worst_rel)
            .tolerance(0.01),
    );

    // modulus ratios of annulus coverings
    let w = annulus::covering_modulus_ratio(
        &RationalMap::monomial(3),
        &AnnulusSpec::round(2.0).unwrap(),
        &AnnulusSpec::round(8.0).unwrap(),
        &params,
        256,
    );
    let monomial_ok = w.map(|w| (w.ratio - 1.0 / 3.0).abs() < 1e-12).unwrap_or(false);
    let joukowski_ok = {
        let a = AnnulusSpec::mapped(2.0, LaurentMap::joukowski(C::new(0.2, 0.0)), 512).unwrap();
        let b = AnnulusSpec::mapped(
            4.0,
            LaurentMap::new(-1, vec![C::new(0.04, 0.0), C::new(0.4, 0.0), C::new(1.0, 0.0)])
                .unwrap(),
            512,
        )
        .unwrap();
        let q =
            RationalMap::new(vec![C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0)], vec![
                C::new(1.0, 0.0),
            ])
            .unwrap();
        annulus::covering_modulus_ratio(&q, &a, &b, &params, 256)
            .map(|w| w.covering_degree == 2 && (w.ratio - 0.5).abs() < 0.02 && w.ratio > 0.0)
            .unwrap_or(false)
    };
    checks.push(CheckEntry::new(
        "measured modulus ratios of annulus coverings (z^3 exact, Laurent square numeric)",
        monomial_ok && joukowski_ok,
    ));
    checks
}

/// Essential sub-ring of a ring, built concentrically in normalized
/// coordinates and mapped back.
fn sub_ring(rng: &mut ChaCha8Rng, outer: &CircleRing) -> Option<CircleRing> {
    let norm = annulus::normalize_ring(outer).ok()?;
    let inv = norm.map.inverse();
    let (lo, hi) = (norm.r_inner, norm.r_outer);
    let a = lo * (hi / lo).powf(rng.gen_range(0.05..0.45));
    let b = lo * (hi / lo).powf(rng.gen_range(0.55..0.95));
    let circle_back = |radius: f64| {
        let pts: Vec<C> =
            (0..3).map(|k| inv.apply_c(C::from_polar(radius, 0.7 + 2.1 * k as f64))).collect();
        GeneralizedCircle::through_points(pts[0], pts[1], pts[2]).ok()
    };
    CircleRing::new(circle_back(a)?, circle_back(b)?).ok()
}

pub fn belyi_suite(seed: u64) -> Vec<CheckEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let z = C::from_polar(rng.gen_range(0.25..4.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let base = rmap::eval(z);
        worst = worst.max(chordal_c(rmap::eval(rmap::omega3() * z), base));
        worst = worst.max(chordal_c(rmap::eval(1.0 / z), base));
    }
    checks.push(
        CheckEntry::new("deck invariance of the quotient map at 1000 random points", worst < 1e-9)
            .measured(worst)
            .tolerance(1e-9),
    );

    let mut crit_dev: f64 = 0.0;
    for v in rmap::critical_values() {
        let nearest = rmap::branch_values()
            .iter()
            .map(|t| (v - t).norm())
            .fold(f64::INFINITY, f64::min);
        crit_dev = crit_dev.max(nearest);
    }
    let mut closure_dev: f64 = 0.0;
    for v in rmap::branch_values() {
        let image = rmap::eval(v);
        let nearest = rmap::branch_values()
            .iter()
            .map(|t| (image - t).norm())
            .fold(f64::INFINITY, f64::min);
        closure_dev = closure_dev.max(nearest);
    }
    checks.push(
        CheckEntry::new(
            "critical values and branch-point images stay in {1, ω₃, ω₃²}",
            crit_dev < 1e-9 && closure_dev < 1e-9,
        )
        .measured(crit_dev.max(closure_dev))
        .tolerance(1e-9),
    );

    let constellation_ok = match r_constellation() {
        Ok(r) => {
            r.degree() == 6
                && r.genus() == 0
                && r.s1().cycle_type() == vec![3, 3]
                && r.sw().cycle_type() == vec![2, 2, 2]
                && r.sw2().cycle_type() == vec![2, 2, 2]
        }
        Err(_) => false,
    };
    checks.push(CheckEntry::new(
        "path-lifted constellation: degree 6, genus 0, cycle types (3,3)/(2,2,2)/(2,2,2)",
        constellation_ok,
    ));

    let mut refine_ok = true;
    let mut euler_ok = true;
    for t in desk_corpus() {
        let d0 = Dessin::build(&t);
        euler_ok &= d0.euler_characteristic() == 2 - 2 * t.genus() as i64
            && d0.edge_count() == 3 * t.degree();
        match t.refine().and_then(|r1| r1.refine().map(|r2| (r1, r2))) {
            Ok((r1, r2)) => {
                refine_ok &= r1.degree() == 6 * t.degree() && r1.genus() == t.genus();
                refine_ok &= r2.degree() == 36 * t.degree() && r2.genus() == t.genus();
                euler_ok &=
                    Dessin::build(&r1).euler_characteristic() == 2 - 2 * t.genus() as i64;
            }
            Err(_) => refine_ok = false,
        }
    }
    checks.push(CheckEntry::new(
        "two refinement stages: degree ×6 each, genus preserved across the corpus",
        refine_ok,
    ));
    checks.push(CheckEntry::new("Euler identity V − E + F = 2 − 2g across the corpus", euler_ok));

    let loops_ok = match find_disjoint_loops_with_refinement(
        &genus2_five_cycles(),
        2,
        2,
        &SearchLimits::default(),
    ) {
        Ok(LoopSearchOutcome::Found { dessin, loops, .. }) => {
            loops.loops.len() == 2 && loops.verify(&dessin).is_ok()
        }
        _ => false,
    };
    checks.push(CheckEntry::new(
        "two disjoint independent covering loops on the genus-2 triple (budget 2)",
        loops_ok,
    ));

    let d = Dessin::build(&genus2_five_cycles());
    let basis = d.fundamental_cycles();
    let rank_ok = d.homology_rank(&basis).unwrap_or(0) == 4
        && d.homology_rank(&[d.faces()[0].darts.clone()]).unwrap_or(9) == 0;
    checks.push(CheckEntry::new(
        "homology ranks: full cycle basis 2g, face boundary 0",
        rank_ok,
    ));
    checks
}
