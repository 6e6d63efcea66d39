//! Discrete Dirichlet-energy estimator for the modulus of a doubly
//! connected region given by two sampled boundary curves.
//!
//! The solve runs on a uniform 5-point grid in log-polar coordinates
//! (s, θ) = (log|z − c|, arg(z − c)) around a point c inside the hole.
//! Dirichlet energy is a conformal invariant, so the flat (s, θ) energy of
//! the harmonic u (u = 0 on the inner boundary, u = 1 on the outer) equals
//! the euclidean one, and the modulus estimate is 1/E. Grid edges crossing
//! a boundary are shortened to the actual crossing point and reweighted,
//! which makes concentric rings exact and keeps the boundary error small
//! for smooth curves.

use crate::{Error, Result};
use num_complex::Complex64 as C;
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Region {
    Hole,
    Domain,
    Outside,
}

struct Grid {
    n_s: usize,
    n_theta: usize,
    h_s: f64,
    h_theta: f64,
    s0: f64,
    /// crossing s-values per θ-column, per curve, sorted
    col_cross: [Vec<Vec<f64>>; 2],
    /// crossing θ-values per s-row, per curve, sorted in [0, 2π)
    row_cross: [Vec<Vec<f64>>; 2],
    region: Vec<Region>,
}

fn ray_crossings(curve: &[C], center: C, theta: f64) -> Vec<f64> {
    // intersections of the closed polyline with the ray {c + t e^{iθ}, t > 0}
    let dir = C::from_polar(1.0, theta);
    let mut out = Vec::new();
    let n = curve.len();
    for i in 0..n {
        let p = curve[i] - center;
        let q = curve[(i + 1) % n] - center;
        // side of the ray line, signed by cross(dir, ·)
        let sp = dir.re * p.im - dir.im * p.re;
        let sq = dir.re * q.im - dir.im * q.re;
        if (sp > 0.0) == (sq > 0.0) || sp == sq {
            continue;
        }
        let t = sp / (sp - sq);
        let x = p + (q - p) * t;
        let along = x.re * dir.re + x.im * dir.im;
        if along > 0.0 {
            out.push(along.ln());
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

fn circle_crossings(curve: &[C], center: C, radius: f64) -> Vec<f64> {
    // θ-values where the polyline crosses |z − c| = radius
    let mut out = Vec::new();
    let n = curve.len();
    for i in 0..n {
        let p = curve[i] - center;
        let q = curve[(i + 1) % n] - center;
        let (rp, rq) = (p.norm(), q.norm());
        if (rp > radius) == (rq > radius) {
            continue;
        }
        let f = |t: f64| (p + (q - p) * t).norm() - radius;
        let (mut a, mut b) = (0.0_f64, 1.0_f64);
        let mut fa = f(a);
        for _ in 0..40 {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if (fa > 0.0) == (fm > 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        let x = p + (q - p) * (0.5 * (a + b));
        out.push(x.arg().rem_euclid(TAU));
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

fn build_grid(inner: &[C], outer: &[C], center: C, h: f64) -> Result<Grid> {
    let s_of = |z: &C| (z - center).norm().ln();
    let s_in_min = inner.iter().map(s_of).fold(f64::INFINITY, f64::min);
    let s_out_max = outer.iter().map(s_of).fold(f64::NEG_INFINITY, f64::max);
    if !s_in_min.is_finite() || !s_out_max.is_finite() || s_out_max <= s_in_min {
        return Err(Error::InvalidAnnulus("boundary curves do not enclose the center".into()));
    }
    let n_theta = ((TAU / h).round() as usize).max(8);
    let h_theta = TAU / n_theta as f64;
    // offset grid lines off the boundaries of aligned inputs
    let s0 = s_in_min - 1.5 * h + 0.313 * h;
    let n_s = (((s_out_max + 1.5 * h) - s0) / h).ceil() as usize + 1;
    if n_s < 4 {
        return Err(Error::GridTooCoarse { h });
    }
    if n_s.saturating_mul(n_theta) > 40_000_000 {
        return Err(Error::InvalidAnnulus(format!(
            "grid of {n_s}x{n_theta} nodes is too large; increase the grid step"
        )));
    }

    let curves = [inner, outer];
    let mut col_cross: [Vec<Vec<f64>>; 2] = [Vec::new(), Vec::new()];
    for (k, curve) in curves.iter().enumerate() {
        col_cross[k] = (0..n_theta)
            .map(|j| ray_crossings(curve, center, (j as f64 + 0.29) * h_theta))
            .collect();
        // every ray from an interior point must cross a surrounding curve
        if col_cross[k].iter().any(|v| v.is_empty()) {
            return Err(Error::InvalidAnnulus(
                "a boundary curve does not wind around the hole center".into(),
            ));
        }
    }
    let mut row_cross: [Vec<Vec<f64>>; 2] = [Vec::new(), Vec::new()];
    for (k, curve) in curves.iter().enumerate() {
        row_cross[k] = (0..n_s)
            .map(|i| circle_crossings(curve, center, (s0 + i as f64 * h).exp()))
            .collect();
    }

    let mut region = vec![Region::Outside; n_s * n_theta];
    for j in 0..n_theta {
        for i in 0..n_s {
            let s = s0 + i as f64 * h;
            let ci = col_cross[0][j].partition_point(|&x| x < s);
            let co = col_cross[1][j].partition_point(|&x| x < s);
            region[i * n_theta + j] = if ci % 2 == 0 {
                Region::Hole
            } else if co % 2 == 0 {
                Region::Domain
            } else {
                Region::Outside
            };
        }
    }
    Ok(Grid { n_s, n_theta, h_s: h, h_theta, s0, col_cross, row_cross, region })
}

impl Grid {
    fn theta_of(&self, j: usize) -> f64 {
        (j as f64 + 0.29) * self.h_theta
    }

    fn s_of(&self, i: usize) -> f64 {
        self.s0 + i as f64 * self.h_s
    }

    /// cut fraction along a vertical edge from (i, j) toward (i±1, j)
    fn vertical_cut(&self, i: usize, j: usize, up: bool, curve: usize) -> f64 {
        let (s_lo, s_hi) = if up {
            (self.s_of(i), self.s_of(i + 1))
        } else {
            (self.s_of(i - 1), self.s_of(i))
        };
        let cr = &self.col_cross[curve][j];
        let lo = cr.partition_point(|&x| x <= s_lo);
        let hi = cr.partition_point(|&x| x < s_hi);
        if lo >= hi {
            return 0.5;
        }
        let a = if up { (cr[lo] - s_lo) / self.h_s } else { (s_hi - cr[hi - 1]) / self.h_s };
        a.clamp(1e-3, 1.0)
    }

    /// cut fraction along a horizontal (periodic θ) edge leaving column j
    fn horizontal_cut(&self, i: usize, j: usize, forward: bool, curve: usize) -> f64 {
        let t_from = self.theta_of(j);
        let cr = &self.row_cross[curve][i];
        let mut best: Option<f64> = None;
        for &t in cr {
            let d = if forward {
                (t - t_from).rem_euclid(TAU)
            } else {
                (t_from - t).rem_euclid(TAU)
            };
            if d <= self.h_theta * (1.0 + 1e-12) {
                best = Some(best.map_or(d, |b: f64| b.min(d)));
            }
        }
        match best {
            Some(d) => (d / self.h_theta).clamp(1e-3, 1.0),
            None => 0.5,
        }
    }
}

struct Link {
    to: usize,
    w: f64,
    value: f64,
}

/// Solves the Dirichlet problem and returns the modulus estimate 1/E.
pub fn modulus_estimate(inner: &[C], outer: &[C], h: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::GridTooCoarse { h });
    }
    let center = inner.iter().sum::<C>() / inner.len() as f64;
    let grid = build_grid(inner, outer, center, h)?;
    let (n_s, n_theta) = (grid.n_s, grid.n_theta);

    let mut index = vec![usize::MAX; n_s * n_theta];
    let mut nodes = Vec::new();
    for (k, &r) in grid.region.iter().enumerate() {
        if r == Region::Domain {
            index[k] = nodes.len();
            nodes.push(k);
        }
    }
    if nodes.len() < 4 {
        return Err(Error::GridTooCoarse { h });
    }

    let w_v = grid.h_theta / grid.h_s;
    let w_h = grid.h_s / grid.h_theta;
    let mut links: Vec<Vec<Link>> = Vec::with_capacity(nodes.len());
    for &cell in &nodes {
        let (i, j) = (cell / n_theta, cell % n_theta);
        let mut ls = Vec::with_capacity(4);
        let mut push = |other: usize, region: Region, w_full: f64, cut: f64| match region {
            Region::Domain => ls.push(Link { to: other, w: w_full, value: 0.0 }),
            Region::Hole => ls.push(Link { to: usize::MAX, w: w_full / cut, value: 0.0 }),
            Region::Outside => ls.push(Link { to: usize::MAX, w: w_full / cut, value: 1.0 }),
        };
        // the padded grid keeps domain nodes off the s-borders
        if i + 1 < n_s {
            let other = cell + n_theta;
            let r = grid.region[other];
            let cut = match r {
                Region::Domain => 1.0,
                Region::Hole => grid.vertical_cut(i, j, true, 0),
                Region::Outside => grid.vertical_cut(i, j, true, 1),
            };
            push(index[other], r, w_v, cut);
        }
        if i > 0 {
            let other = cell - n_theta;
            let r = grid.region[other];
            let cut = match r {
                Region::Domain => 1.0,
                Region::Hole => grid.vertical_cut(i, j, false, 0),
                Region::Outside => grid.vertical_cut(i, j, false, 1),
            };
            push(index[other], r, w_v, cut);
        }
        for (forward, j2) in [(true, (j + 1) % n_theta), (false, (j + n_theta - 1) % n_theta)] {
            let other = i * n_theta + j2;
            let r = grid.region[other];
            let cut = match r {
                Region::Domain => 1.0,
                Region::Hole => grid.horizontal_cut(i, j, forward, 0),
                Region::Outside => grid.horizontal_cut(i, j, forward, 1),
            };
            push(index[other], r, w_h, cut);
        }
        links.push(ls);
    }

    // Jacobi-preconditioned conjugate gradient on the graph Laplacian
    let n = nodes.len();
    let mut diag = vec![0.0f64; n];
    let mut rhs = vec![0.0f64; n];
    for (u, ls) in links.iter().enumerate() {
        for l in ls {
            diag[u] += l.w;
            if l.to == usize::MAX {
                rhs[u] += l.w * l.value;
            }
        }
    }
    let apply = |x: &[f64], y: &mut [f64]| {
        for (u, ls) in links.iter().enumerate() {
            let mut acc = diag[u] * x[u];
            for l in ls {
                if l.to != usize::MAX {
                    acc -= l.w * x[l.to];
                }
            }
            y[u] = acc;
        }
    };

    let mut u = vec![0.5f64; n];
    let mut r = vec![0.0f64; n];
    apply(&u, &mut r);
    for k in 0..n {
        r[k] = rhs[k] - r[k];
    }
    let mut z: Vec<f64> = r.iter().zip(&diag).map(|(ri, di)| ri / di).collect();
    let mut p = z.clone();
    let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
    let rhs_norm: f64 = rhs.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let mut ap = vec![0.0f64; n];
    let max_iter = 40 * (n_s + n_theta) + 200;
    for _ in 0..max_iter {
        apply(&p, &mut ap);
        let pap: f64 = p.iter().zip(&ap).map(|(a, b)| a * b).sum();
        if pap <= 0.0 {
            break;
        }
        let alpha = rz / pap;
        for k in 0..n {
            u[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        let rnorm: f64 = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if rnorm < 1e-12 * rhs_norm {
            break;
        }
        for k in 0..n {
            z[k] = r[k] / diag[k];
        }
        let rz_new: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let beta = rz_new / rz;
        rz = rz_new;
        for k in 0..n {
            p[k] = z[k] + beta * p[k];
        }
    }

    // Dirichlet energy, each interior edge counted once
    let mut energy = 0.0f64;
    for (idx, ls) in links.iter().enumerate() {
        for l in ls {
            if l.to == usize::MAX {
                energy += l.w * (u[idx] - l.value) * (u[idx] - l.value);
            } else if l.to > idx {
                energy += l.w * (u[idx] - u[l.to]) * (u[idx] - u[l.to]);
            }
        }
    }
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(Error::GridTooCoarse { h });
    }
    Ok(1.0 / energy)
}
