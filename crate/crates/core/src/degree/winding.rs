use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sample counts as zero when it is this small relative to the largest sample of its loop, so that
/// determinants of higher multiplicity (which scale like a power of the distance) are judged fairly.
const ZERO_TOL: f64 = 1e-13;
pub const DEFAULT_BUDGET: usize = 1 << 20;

/// Samples of a closed loop in `C \ {0}`; the last sample connects back to the first.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosedPath {
    pub samples: Vec<Complex64>,
}

fn near_zero(s: &[Complex64]) -> Option<Complex64> {
    let scale = s.iter().map(|z| z.norm()).fold(0.0, f64::max);
    s.iter()
        .copied()
        .find(|z| !z.is_finite() || z.norm() <= ZERO_TOL * scale || *z == Complex64::new(0.0, 0.0))
}

fn step(a: Complex64, b: Complex64) -> f64 {
    (b / a).arg()
}

impl ClosedPath {
    pub fn new(samples: Vec<Complex64>) -> Self {
        ClosedPath { samples }
    }

    /// Winding number around the origin; every step must turn by less than `pi/2`.
    pub fn winding_number(&self) -> Result<i64> {
        let s = &self.samples;
        if s.is_empty() {
            return Err(Error::Winding("empty path".into()));
        }
        if let Some(z) = near_zero(s) {
            return Err(Error::Winding(format!(
                "sample {z} too close to the origin"
            )));
        }
        let mut total = 0.0;
        for i in 0..s.len() {
            let d = step(s[i], s[(i + 1) % s.len()]);
            if d.abs() >= PI / 2.0 {
                return Err(Error::Winding(
                    "argument step exceeds pi/2; refine the path".into(),
                ));
            }
            total += d;
        }
        let w = total / (2.0 * PI);
        if (w - w.round()).abs() > 1e-6 {
            return Err(Error::Winding(format!("non-integral accumulation {w}")));
        }
        Ok(w.round() as i64)
    }

    pub fn reversed(&self) -> Self {
        let mut s = self.samples.clone();
        s.reverse();
        ClosedPath { samples: s }
    }
}

/// Sample `f` on `[0, 1)` (with `f(0) = f(1)`) adaptively until all argument steps are below `pi/2`.
///
/// A segment is accepted only when it and both of its halves turn by less than `pi/4`, which guards
/// against a full turn hiding between two samples.
pub fn sample_loop<F: Fn(f64) -> Complex64>(f: F, budget: usize) -> Result<ClosedPath> {
    let n0 = 64usize;
    let mut ts: Vec<f64> = (0..=n0).map(|i| i as f64 / n0 as f64).collect();
    let mut vals: Vec<Complex64> = ts.iter().map(|&t| f(t)).collect();
    let mut done = vec![false; n0];
    loop {
        if let Some(z) = near_zero(&vals) {
            return Err(Error::Winding(format!(
                "loop passes through or near zero ({z})"
            )));
        }
        let mut nt = Vec::with_capacity(ts.len());
        let mut nv = Vec::with_capacity(ts.len());
        let mut nd = Vec::with_capacity(ts.len());
        let mut refined = false;
        for i in 0..ts.len() - 1 {
            nt.push(ts[i]);
            nv.push(vals[i]);
            if done[i] {
                nd.push(true);
                continue;
            }
            let m = 0.5 * (ts[i] + ts[i + 1]);
            let zm = f(m);
            let small = |a, b| step(a, b).abs() < PI / 4.0;
            let ok = small(vals[i], vals[i + 1]) && small(vals[i], zm) && small(zm, vals[i + 1]);
            nt.push(m);
            nv.push(zm);
            nd.extend([ok, ok]);
            refined |= !ok;
        }
        nt.push(ts[ts.len() - 1]);
        nv.push(vals[vals.len() - 1]);
        ts = nt;
        vals = nv;
        done = nd;
        if !refined {
            if let Some(z) = near_zero(&vals) {
                return Err(Error::Winding(format!(
                    "loop passes through or near zero ({z})"
                )));
            }
            vals.pop();
            return Ok(ClosedPath { samples: vals });
        }
        if ts.len() > budget {
            return Err(Error::Winding(format!(
                "refinement budget {budget} exhausted"
            )));
        }
    }
}

/// Winding number of `t -> f(t)`, `t in [0, 1]`.
pub fn winding_of<F: Fn(f64) -> Complex64>(f: F) -> Result<i64> {
    sample_loop(f, DEFAULT_BUDGET)?.winding_number()
}

/// Positively oriented boundary of the rectangle `[x0, x1] x [y0, y1]` as `t in [0,1] -> C`.
pub fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64) -> impl Fn(f64) -> Complex64 {
    move |t: f64| {
        let s = 4.0 * (t - t.floor());
        let (w, h) = (x1 - x0, y1 - y0);
        match s as u32 {
            0 => Complex64::new(x0 + s * w, y0),
            1 => Complex64::new(x1, y0 + (s - 1.0) * h),
            2 => Complex64::new(x1 - (s - 2.0) * w, y1),
            _ => Complex64::new(x0, y1 - (s - 3.0) * h),
        }
    }
}

pub fn circle(c: Complex64, r: f64) -> impl Fn(f64) -> Complex64 {
    move |t: f64| c + Complex64::from_polar(r, 2.0 * PI * t)
}
