//! Numeric monodromy of the degree-6 quotient map by path lifting.
//!
//! Fixed geometry: punctures at the branch values 1, ω₃, ω₃² and cut rays
//! {t·v : t ≥ 1} from each puncture out to ∞. The complement of the rays is
//! simply connected, so the homotopy class of a path avoiding the punctures
//! is exactly its sequence of signed ray crossings, and monodromy acts one
//! crossing at a time. The base point b₀ = e^{−iπ/3} sits on the unit
//! circle between ω₃² and 1; its six R-preimages have angles 60°, 180°,
//! 300° and radii |−3 ± 2√2|^{1/3}, away from every ray.
//!
//! The standard loop around v runs from b₀ inside the unit disk to the
//! antipodal point of the small circle around v, once counterclockwise
//! around it, and back; it crosses only v's ray, once, positively.

use crate::rmap;
use crate::{Error, Result};
use num_complex::Complex64 as C;
use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

/// One signed crossing of the cut ray attached to branch value `value`
/// (0 ↔ 1, 1 ↔ ω₃, 2 ↔ ω₃²). `positive` means counterclockwise around the
/// puncture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub value: usize,
    pub positive: bool,
}

pub type Word = Vec<Crossing>;

pub fn invert_word(w: &Word) -> Word {
    w.iter().rev().map(|c| Crossing { value: c.value, positive: !c.positive }).collect()
}

pub fn base_point() -> C {
    C::from_polar(1.0, -PI / 3.0)
}

/// The six preimages of the base point, ordered by (branch of z³, cube
/// root): R(z) = b₀ forces z³ + z⁻³ = −6, i.e. z³ = −3 ± 2√2.
pub fn base_fiber() -> [C; 6] {
    let u1: f64 = -3.0 + 2.0 * 2.0_f64.sqrt();
    let u2: f64 = -3.0 - 2.0 * 2.0_f64.sqrt();
    let mut out = [C::new(0.0, 0.0); 6];
    for (b, u) in [u1, u2].into_iter().enumerate() {
        let r = u.abs().cbrt();
        for m in 0..3 {
            out[3 * b + m] = C::from_polar(r, (PI + TAU * m as f64) / 3.0);
        }
    }
    out
}

/// Signed ray-crossing word of a polyline, read in path order. Points
/// exactly on a ray line are carried until the next strictly signed point.
pub fn crossing_word(path: &[C]) -> Word {
    let rays = rmap::branch_values();
    let mut word: Vec<(usize, Crossing)> = Vec::new();
    for (v, dir) in rays.iter().enumerate() {
        let side = |p: &C| dir.re * p.im - dir.im * p.re;
        let mut last: Option<(usize, f64)> = None;
        for (i, p) in path.iter().enumerate() {
            let s = side(p);
            if s == 0.0 {
                continue;
            }
            if let Some((i0, s0)) = last {
                if (s0 > 0.0) != (s > 0.0) {
                    // crossing between path[i0] and path[i]
                    let (p0, p1) = (path[i0], path[i]);
                    let t = s0 / (s0 - s);
                    let x = p0 + (p1 - p0) * t;
                    let along = x.re * dir.re + x.im * dir.im;
                    if along >= 1.0 {
                        word.push((i0, Crossing { value: v, positive: s0 < 0.0 }));
                    }
                }
            }
            last = Some((i, s));
        }
    }
    word.sort_by_key(|(i, _)| *i);
    word.into_iter().map(|(_, c)| c).collect()
}

fn min_distance_to_punctures(path: &[C]) -> f64 {
    let punct = rmap::branch_values();
    path.iter()
        .flat_map(|p| punct.iter().map(move |v| (p - v).norm()))
        .fold(f64::INFINITY, f64::min)
}

fn subdivided_segment(from: C, to: C, max_step: f64) -> Vec<C> {
    let n = ((to - from).norm() / max_step).ceil().max(1.0) as usize;
    (0..=n).map(|k| from + (to - from) * (k as f64 / n as f64)).collect()
}

/// The standard positively-oriented loop around branch value `v`, as a
/// polyline from the base point. Stays inside the closed unit disk on the
/// way, so it crosses exactly v's ray, once.
fn standard_loop(v: usize) -> Vec<C> {
    let target = rmap::branch_values()[v];
    let theta = target.arg();
    let eps = 0.08;
    let waypoint = C::from_polar(0.45, theta - 0.5);
    let approach = target * (1.0 - eps);
    let mut path = subdivided_segment(base_point(), waypoint, 0.02);
    path.extend(subdivided_segment(waypoint, approach, 0.02).into_iter().skip(1));
    // counterclockwise circle of radius ε around the puncture, starting and
    // ending at the approach point (which faces the origin)
    let n = 192;
    for k in 1..=n {
        let phi = theta + PI + TAU * k as f64 / n as f64;
        path.push(target + C::from_polar(eps, phi));
    }
    let mut back = subdivided_segment(approach, waypoint, 0.02);
    back.extend(subdivided_segment(waypoint, base_point(), 0.02).into_iter().skip(1));
    path.extend(back.into_iter().skip(1));
    path
}

fn newton_solve(target: C, start: C) -> Option<C> {
    let mut z = start;
    for _ in 0..30 {
        let f = rmap::eval(z) - target;
        if f.norm() < 1e-13 * (1.0 + target.norm()) {
            return Some(z);
        }
        let d = rmap::derivative(z);
        if d.norm() < 1e-14 {
            return None;
        }
        let step = f / d;
        if step.norm() > 0.5 {
            return None;
        }
        z -= step;
    }
    let f = rmap::eval(z) - target;
    (f.norm() < 1e-11 * (1.0 + target.norm())).then_some(z)
}

/// Lifts the target polyline through R by continuation from `start`,
/// halving steps near critical points; returns the upstairs polyline.
fn lift_path(targets: &[C], start: C) -> Result<Vec<C>> {
    let mut lifted = vec![start];
    for w in targets.windows(2) {
        lift_segment(w[0], w[1], &mut lifted, 0)?;
    }
    Ok(lifted)
}

fn lift_segment(from: C, to: C, lifted: &mut Vec<C>, depth: usize) -> Result<()> {
    if depth > 48 {
        return Err(Error::LiftingFailure("step size underflow near a critical point".into()));
    }
    let z = *lifted.last().unwrap();
    match newton_solve(to, z) {
        // reject sheet jumps: the lift must move continuously
        Some(next) if (next - z).norm() <= 0.2 => {
            lifted.push(next);
            Ok(())
        }
        _ => {
            let mid = (from + to) / 2.0;
            lift_segment(from, mid, lifted, depth + 1)?;
            lift_segment(mid, to, lifted, depth + 1)
        }
    }
}

/// Monodromy data of R over the base point, with respect to the cut rays.
#[derive(Debug, Clone)]
pub struct RMonodromy {
    /// Sheet permutation per branch value: `sigma[v][k]` is the sheet at
    /// which the lift of the standard loop around value v, started on
    /// sheet k, ends.
    pub sigma: [[usize; 6]; 3],
    /// Crossing word of that lifted path, per (value, start sheet).
    pub lift_words: [[Word; 6]; 3],
    /// Crossing word of the straight tail b₀ → z_k labeling the fiber.
    pub tail_words: [Word; 6],
}

fn compute_monodromy() -> std::result::Result<RMonodromy, String> {
    let fiber = base_fiber();
    for (k, z) in fiber.iter().enumerate() {
        let err = (rmap::eval(*z) - base_point()).norm();
        if err > 1e-10 {
            return Err(format!("fiber point {k} misses the base point by {err:.2e}"));
        }
    }

    let mut tail_words: [Word; 6] = Default::default();
    for (k, z) in fiber.iter().enumerate() {
        let tail = subdivided_segment(base_point(), *z, 0.01);
        if min_distance_to_punctures(&tail) < 0.05 {
            return Err(format!("tail {k} passes too close to a puncture"));
        }
        tail_words[k] = crossing_word(&tail);
    }

    let mut sigma = [[0usize; 6]; 3];
    let mut lift_words: [[Word; 6]; 3] = Default::default();
    for v in 0..3 {
        let loop_v = standard_loop(v);
        let downstairs = crossing_word(&loop_v);
        if downstairs.len() != 1 || downstairs[0] != (Crossing { value: v, positive: true }) {
            return Err(format!("standard loop {v} has word {downstairs:?}"));
        }
        for k in 0..6 {
            let lifted = lift_path(&loop_v, fiber[k]).map_err(|e| e.to_string())?;
            if min_distance_to_punctures(&lifted) < 0.02 {
                return Err(format!("lift ({v}, {k}) grazes a puncture"));
            }
            let end = *lifted.last().unwrap();
            let (target, dist) = fiber
                .iter()
                .enumerate()
                .map(|(j, z)| (j, (end - z).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            if dist > 1e-6 {
                return Err(format!("lift ({v}, {k}) ends {dist:.2e} away from the fiber"));
            }
            sigma[v][k] = target;
            lift_words[v][k] = crossing_word(&lifted);
        }
        // each sigma must be a bijection of the fiber
        let mut seen = [false; 6];
        for &j in &sigma[v] {
            if seen[j] {
                return Err(format!("monodromy around value {v} is not a permutation"));
            }
            seen[j] = true;
        }
    }
    Ok(RMonodromy { sigma, lift_words, tail_words })
}

static MONODROMY: OnceLock<std::result::Result<RMonodromy, String>> = OnceLock::new();

/// The cached path-lifted monodromy of R. The numeric work runs once per
/// process.
pub fn r_monodromy() -> Result<&'static RMonodromy> {
    MONODROMY
        .get_or_init(compute_monodromy)
        .as_ref()
        .map_err(|e| Error::LiftingFailure(e.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fiber_points_are_preimages() {
        for z in base_fiber() {
            assert!((rmap::eval(z) - base_point()).norm() < 1e-12);
        }
        // distinct
        let fiber = base_fiber();
        for i in 0..6 {
            for j in i + 1..6 {
                assert!((fiber[i] - fiber[j]).norm() > 0.1);
            }
        }
    }

    #[test]
    fn standard_loops_have_single_positive_crossing() {
        for v in 0..3 {
            let w = crossing_word(&standard_loop(v));
            assert_eq!(w, vec![Crossing { value: v, positive: true }]);
        }
    }

    #[test]
    fn crossing_word_of_big_circle() {
        // a counterclockwise circle of radius 2 crosses all three rays once,
        // positively, in the order met from its starting angle
        let path: Vec<C> =
            (0..=600).map(|k| C::from_polar(2.0, -PI / 3.0 + TAU * k as f64 / 600.0)).collect();
        let w = crossing_word(&path);
        assert_eq!(w.len(), 3);
        assert_eq!(
            w,
            vec![
                Crossing { value: 0, positive: true },
                Crossing { value: 1, positive: true },
                Crossing { value: 2, positive: true },
            ]
        );
        // the reversed circle gives the inverse word
        let rev: Vec<C> = path.iter().rev().cloned().collect();
        assert_eq!(crossing_word(&rev), invert_word(&w));
        // a small circle far from the rays crosses nothing
        let path: Vec<C> =
            (0..=100).map(|k| C::new(0.1, 0.1) + C::from_polar(0.2, TAU * k as f64 / 100.0)).collect();
        assert!(crossing_word(&path).is_empty());
    }

    #[test]
    fn monodromy_is_computed_and_consistent() {
        let mono = r_monodromy().expect("lifting succeeds");
        // left-to-right product of the three sheet permutations is trivial
        for k in 0..6 {
            let after = mono.sigma[2][mono.sigma[1][mono.sigma[0][k]]];
            assert_eq!(after, k, "sheet {k} does not return to itself");
        }
        // cycle types: (3,3) around 1, (2,2,2) around ω₃ and ω₃²
        let cycle_type = |p: &[usize; 6]| {
            let mut seen = [false; 6];
            let mut t = Vec::new();
            for mut i in 0..6 {
                if seen[i] {
                    continue;
                }
                let mut len = 0;
                while !seen[i] {
                    seen[i] = true;
                    i = p[i];
                    len += 1;
                }
                t.push(len);
            }
            t.sort_unstable();
            t
        };
        assert_eq!(cycle_type(&mono.sigma[0]), vec![3, 3]);
        assert_eq!(cycle_type(&mono.sigma[1]), vec![2, 2, 2]);
        assert_eq!(cycle_type(&mono.sigma[2]), vec![2, 2, 2]);
    }
}
