//! Pairwise linking numbers and subtorus degrees.
//!
//! `pairwise_linking` evaluates the Gauss integral
//!
//! ```text
//! Lk(X,Y) = (1/4π) ∬ (dx/ds × dy/dt) · (x−y)/|x−y|³ ds dt
//! ```
//!
//! by the equal-weight periodic trapezoid rule, which converges exponentially
//! for disjoint analytic curves. `subtorus_degree` integrates the pullback of
//! the normalized sphere area form under the generalized Gauss map over one
//! coordinate 2-subtorus of T³, with partial derivatives taken spectrally
//! along the two free axes. Slot by slot the degrees reproduce the linking
//! numbers: s ↔ Lk(Y,Z) = p, t ↔ Lk(Z,X) = q, u ↔ Lk(X,Y) = r.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fft::{bin_mode, Fft1};
use crate::geometry::{key_map_e, Vec3};
use crate::link::{Link3, TrigCurve, DISJOINT_EPS};

/// Coordinate axis of the domain 3-torus (s, t, u).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    S,
    T,
    U,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::S, Axis::T, Axis::U];
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::S => "s",
            Axis::T => "t",
            Axis::U => "u",
        })
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(Axis::S),
            "t" => Ok(Axis::T),
            "u" => Ok(Axis::U),
            other => Err(Error::InvalidArgument(format!(
                "unknown axis `{other}` (expected s, t or u)"
            ))),
        }
    }
}

/// Gauss linking integral of two disjoint closed curves on a
/// `samples`×`samples` periodic trapezoid grid.
pub fn pairwise_linking(a: &TrigCurve, b: &TrigCurve, samples: usize) -> Result<f64> {
    pairwise_linking_labeled(a, b, samples, 'A', 'B')
}

fn pairwise_linking_labeled(
    a: &TrigCurve,
    b: &TrigCurve,
    samples: usize,
    label_a: char,
    label_b: char,
) -> Result<f64> {
    if samples < 8 {
        return Err(Error::InvalidArgument(format!(
            "need at least 8 quadrature samples, got {samples}"
        )));
    }
    let h = TAU / samples as f64;
    let pa: Vec<Vec3> = (0..samples).map(|i| a.eval(i as f64 * h)).collect();
    let da: Vec<Vec3> = (0..samples).map(|i| a.derivative(i as f64 * h)).collect();
    let pb: Vec<Vec3> = (0..samples).map(|j| b.eval(j as f64 * h)).collect();
    let db: Vec<Vec3> = (0..samples).map(|j| b.derivative(j as f64 * h)).collect();

    let mut sum = 0.0;
    for i in 0..samples {
        for j in 0..samples {
            let r = pa[i] - pb[j];
            let dist = r.norm();
            if dist < DISJOINT_EPS {
                return Err(Error::DisjointnessViolation {
                    first: label_a,
                    second: label_b,
                    distance: dist,
                    theta_first: i as f64 * h,
                    theta_second: j as f64 * h,
                    minimum: DISJOINT_EPS,
                });
            }
            sum += da[i].cross(db[j]).dot(r) / (dist * dist * dist);
        }
    }
    Ok(sum * h * h / (4.0 * PI))
}

/// Numerical degree of the generalized Gauss map restricted to the 2-subtorus
/// where `axis` is frozen at `fixed_value`, on a `grid`×`grid` quadrature
/// grid over the two free axes (taken in cyclic order).
pub fn subtorus_degree(link: &Link3, axis: Axis, fixed_value: f64, grid: usize) -> Result<f64> {
    if grid < 16 {
        return Err(Error::InvalidArgument(format!(
            "need a subtorus grid of at least 16, got {grid}"
        )));
    }
    let g = grid;
    let step = TAU / g as f64;

    // Free axes follow the frozen one cyclically: s → (t,u), t → (u,s),
    // u → (s,t); the integrand is then (F_first × F_second)·F / 4π|F|³.
    let fixed_x = link.cx().eval(fixed_value);
    let fixed_y = link.cy().eval(fixed_value);
    let fixed_z = link.cz().eval(fixed_value);
    let evals = |curve: &TrigCurve| -> Vec<Vec3> {
        (0..g).map(|i| curve.eval(i as f64 * step)).collect()
    };

    let mut field = vec![Vec3::ZERO; g * g];
    match axis {
        Axis::S => {
            let ys = evals(link.cy());
            let zs = evals(link.cz());
            for ia in 0..g {
                for ib in 0..g {
                    field[ia * g + ib] = key_map_e(fixed_x, ys[ia], zs[ib])?;
                }
            }
        }
        Axis::T => {
            let zs = evals(link.cz());
            let xs = evals(link.cx());
            for ia in 0..g {
                for ib in 0..g {
                    field[ia * g + ib] = key_map_e(xs[ib], fixed_y, zs[ia])?;
                }
            }
        }
        Axis::U => {
            let xs = evals(link.cx());
            let ys = evals(link.cy());
            for ia in 0..g {
                for ib in 0..g {
                    field[ia * g + ib] = key_map_e(xs[ia], ys[ib], fixed_z)?;
                }
            }
        }
    }

    let fft = Fft1::new(g);
    let fa = partial2(&field, g, 0, &fft);
    let fb = partial2(&field, g, 1, &fft);

    let mut sum = 0.0;
    for idx in 0..g * g {
        let f = field[idx];
        let norm = f.norm();
        sum += fa[idx].cross(fb[idx]).dot(f) / (4.0 * PI * norm * norm * norm);
    }
    Ok(sum * step * step)
}

/// Spectral partial derivative of a `g`×`g` sampled field along index axis 0
/// (stride g) or 1 (stride 1).
fn partial2(field: &[Vec3], g: usize, axis: usize, fft: &Fft1) -> Vec<Vec3> {
    let mut out = vec![Vec3::ZERO; g * g];
    let mut line = vec![Complex64::new(0.0, 0.0); g];
    for comp in 0..3 {
        for other in 0..g {
            for i in 0..g {
                let idx = if axis == 0 { i * g + other } else { other * g + i };
                line[i] = Complex64::new(field[idx].component(comp), 0.0);
            }
            fft.forward(&mut line);
            for (i, value) in line.iter_mut().enumerate() {
                let mode = bin_mode(i, g);
                // derivative multiplier i·m with the Nyquist mode zeroed,
                // folded together with the 1/g inverse normalization
                let m = if g % 2 == 0 && 2 * i == g { 0.0 } else { mode as f64 };
                *value *= Complex64::new(0.0, m / g as f64);
            }
            fft.backward(&mut line);
            for i in 0..g {
                let idx = if axis == 0 { i * g + other } else { other * g + i };
                out[idx].set_component(comp, line[i].re);
            }
        }
    }
    out
}

/// Raw and rounded pairwise linking numbers (p, q, r) = (Lk(Y,Z), Lk(Z,X), Lk(X,Y)).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PairwiseReport {
    pub lk_yz: f64,
    pub lk_zx: f64,
    pub lk_xy: f64,
    pub rounded: [i64; 3],
    /// max |raw − rounded|; below 0.5 once quadrature has converged
    pub residual: f64,
}

impl PairwiseReport {
    pub fn raw(&self) -> [f64; 3] {
        [self.lk_yz, self.lk_zx, self.lk_xy]
    }

    /// Integer readings are only trusted when the residual is small.
    pub fn converged(&self) -> bool {
        self.residual < 0.1
    }
}

pub fn pairwise_report(link: &Link3, samples: usize) -> Result<PairwiseReport> {
    let lk_yz = pairwise_linking_labeled(link.cy(), link.cz(), samples, 'Y', 'Z')?;
    let lk_zx = pairwise_linking_labeled(link.cz(), link.cx(), samples, 'Z', 'X')?;
    let lk_xy = pairwise_linking_labeled(link.cx(), link.cy(), samples, 'X', 'Y')?;
    let rounded = [
        lk_yz.round() as i64,
        lk_zx.round() as i64,
        lk_xy.round() as i64,
    ];
    let residual = [lk_yz, lk_zx, lk_xy]
        .iter()
        .zip(&rounded)
        .map(|(raw, r)| (raw - *r as f64).abs())
        .fold(0.0f64, f64::max);
    Ok(PairwiseReport {
        lk_yz,
        lk_zx,
        lk_xy,
        rounded,
        residual,
    })
}

/// Combined Gauss-integral and subtorus-degree report; the two computations
/// must agree slot by slot.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct InvariantReport {
    pub pairwise: PairwiseReport,
    /// subtorus degrees in axis order (s, t, u)
    pub degrees: [f64; 3],
    pub degrees_rounded: [i64; 3],
    pub degree_residual: f64,
    /// worst |linking − degree| across the three slots
    pub max_gap: f64,
}

const SLOT_NAMES: [&str; 3] = [
    "p = Lk(Y,Z) vs s-subtorus",
    "q = Lk(Z,X) vs t-subtorus",
    "r = Lk(X,Y) vs u-subtorus",
];

pub fn invariant_report(link: &Link3, samples: usize, grid: usize) -> Result<InvariantReport> {
    let pairwise = pairwise_report(link, samples)?;
    let degrees = [
        subtorus_degree(link, Axis::S, 0.0, grid)?,
        subtorus_degree(link, Axis::T, 0.0, grid)?,
        subtorus_degree(link, Axis::U, 0.0, grid)?,
    ];
    let raw = pairwise.raw();
    let mut max_gap = 0.0f64;
    for slot in 0..3 {
        let gap = (raw[slot] - degrees[slot]).abs();
        if gap >= 0.1 {
            return Err(Error::CorrespondenceMismatch {
                entry: SLOT_NAMES[slot],
                linking: raw[slot],
                degree: degrees[slot],
            });
        }
        max_gap = max_gap.max(gap);
    }
    let degrees_rounded = degrees.map(|d| d.round() as i64);
    let degree_residual = degrees
        .iter()
        .zip(&degrees_rounded)
        .map(|(raw, r)| (raw - *r as f64).abs())
        .fold(0.0f64, f64::max);
    Ok(InvariantReport {
        pairwise,
        degrees,
        degrees_rounded,
        degree_residual,
        max_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::preset;

    /// Hopf pair: unit circle in the xy-plane at the origin and a unit circle
    /// in the xz-plane centered at (1,0,0).
    pub(crate) fn hopf_pair() -> (TrigCurve, TrigCurve) {
        let ex = Vec3::new(1.0, 0.0, 0.0);
        let ey = Vec3::new(0.0, 1.0, 0.0);
        let ez = Vec3::new(0.0, 0.0, 1.0);
        (
            TrigCurve::circle(Vec3::ZERO, 1.0, ex, ey),
            TrigCurve::circle(ex, 1.0, ex, ez),
        )
    }

    #[test]
    fn hopf_pair_links_once() {
        let (a, b) = hopf_pair();
        let lk = pairwise_linking(&a, &b, 512).unwrap();
        // orientation fixed by the parametrization above; magnitude is 1
        assert!((lk.abs() - 1.0).abs() < 1e-6, "lk = {lk}");
        // symmetric in the two curves
        let lk_ba = pairwise_linking(&b, &a, 512).unwrap();
        assert!((lk - lk_ba).abs() < 1e-9);
        // converged: doubling the sample count does not move the value
        let lk_256 = pairwise_linking(&a, &b, 256).unwrap();
        assert!((lk - lk_256).abs() < 1e-9);
    }

    #[test]
    fn split_circles_do_not_link() {
        let ex = Vec3::new(1.0, 0.0, 0.0);
        let ey = Vec3::new(0.0, 1.0, 0.0);
        let a = TrigCurve::circle(Vec3::ZERO, 1.0, ex, ey);
        let b = TrigCurve::circle(Vec3::new(20.0, 0.0, 0.0), 1.0, ex, ey);
        assert!(pairwise_linking(&a, &b, 512).unwrap().abs() < 1e-9);
    }

    #[test]
    fn borromean_pairs_do_not_link() {
        let link = preset("borromean").unwrap();
        let report = pairwise_report(&link, 512).unwrap();
        for value in report.raw() {
            assert!(value.abs() < 1e-6, "pairwise = {value}");
        }
        assert_eq!(report.rounded, [0, 0, 0]);
        assert!(report.converged());
    }

    #[test]
    fn orientation_reversal_flips_involved_pairs() {
        let (a, b) = hopf_pair();
        let lk = pairwise_linking(&a, &b, 256).unwrap();
        let lk_rev = pairwise_linking(&a.reversed(), &b, 256).unwrap();
        assert!((lk + lk_rev).abs() < 1e-9);
    }

    #[test]
    fn touching_curves_are_rejected() {
        let ex = Vec3::new(1.0, 0.0, 0.0);
        let ey = Vec3::new(0.0, 1.0, 0.0);
        let a = TrigCurve::circle(Vec3::ZERO, 1.0, ex, ey);
        assert!(matches!(
            pairwise_linking(&a, &a, 64),
            Err(Error::DisjointnessViolation { .. })
        ));
    }

    #[test]
    fn degree_vanishes_for_split_unlink() {
        let link = preset("split-unlink").unwrap();
        for axis in Axis::ALL {
            let deg = subtorus_degree(&link, axis, 0.0, 64).unwrap();
            assert!(deg.abs() < 1e-6, "axis {axis}: degree = {deg}");
        }
    }

    #[test]
    fn degrees_match_linking_for_each_hopf_slot() {
        // A Hopf pair in each pair slot pins the axis ↔ pair correspondence.
        let ex = Vec3::new(1.0, 0.0, 0.0);
        let ey = Vec3::new(0.0, 1.0, 0.0);
        let far = |center: f64| TrigCurve::circle(Vec3::new(0.0, 0.0, center), 1.0, ex, ey);
        let (h1, h2) = hopf_pair();

        // (Y,Z) Hopf, X far → only the s-degree is nonzero
        let link = Link3::new(far(30.0), h1.clone(), h2.clone()).unwrap();
        let lk = pairwise_linking(&h1, &h2, 512).unwrap();
        let deg_s = subtorus_degree(&link, Axis::S, 0.0, 64).unwrap();
        assert!((deg_s - lk).abs() < 1e-2, "deg_s = {deg_s}, lk = {lk}");
        assert!(subtorus_degree(&link, Axis::T, 0.0, 64).unwrap().abs() < 1e-2);
        assert!(subtorus_degree(&link, Axis::U, 0.0, 64).unwrap().abs() < 1e-2);

        // (Z,X) Hopf, Y far → t-degree
        let link = Link3::new(h2.clone(), far(30.0), h1.clone()).unwrap();
        let deg_t = subtorus_degree(&link, Axis::T, 0.0, 64).unwrap();
        let lk = pairwise_linking(&h1, &h2, 512).unwrap();
        assert!((deg_t - lk).abs() < 1e-2, "deg_t = {deg_t}, lk = {lk}");

        // (X,Y) Hopf, Z far → u-degree
        let link = Link3::new(h1.clone(), h2.clone(), far(30.0)).unwrap();
        let deg_u = subtorus_degree(&link, Axis::U, 0.0, 64).unwrap();
        assert!((deg_u - lk).abs() < 1e-2, "deg_u = {deg_u}, lk = {lk}");
    }

    #[test]
    fn invariant_report_for_borromean() {
        let link = preset("borromean").unwrap();
        let report = invariant_report(&link, 256, 64).unwrap();
        assert_eq!(report.pairwise.rounded, [0, 0, 0]);
        assert_eq!(report.degrees_rounded, [0, 0, 0]);
        assert!(report.max_gap < 0.1);
    }
}
