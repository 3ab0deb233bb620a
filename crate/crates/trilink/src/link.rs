//! Three-component links with trigonometric-polynomial components.
//!
//! Components are finite trigonometric polynomials Σₖ cos_k·cos(kθ) +
//! sin_k·sin(kθ), so derivatives are analytic and periodic quadrature over
//! them converges spectrally. A `Link3` is an ordered, oriented triple of
//! such curves whose pairwise separation is probed at construction.

use std::f64::consts::TAU;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Mat3, Vec3};

/// Default minimum allowed separation between distinct components.
pub const DISJOINT_EPS: f64 = 1e-6;

/// Samples per component in the disjointness probe.
pub const DISJOINT_PROBE: usize = 512;

const COMPONENT_NAMES: [char; 3] = ['X', 'Y', 'Z'];

/// Closed curve S¹ → R³ given by a finite trigonometric polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigCurve {
    cos: Vec<Vec3>,
    sin: Vec<Vec3>,
}

impl TrigCurve {
    /// Coefficients of cos(kθ) and sin(kθ), indexed by harmonic k. The
    /// shorter list is zero-padded so both run to the same max harmonic.
    pub fn new(mut cos: Vec<Vec3>, mut sin: Vec<Vec3>) -> Self {
        let len = cos.len().max(sin.len()).max(1);
        cos.resize(len, Vec3::ZERO);
        sin.resize(len, Vec3::ZERO);
        TrigCurve { cos, sin }
    }

    pub fn constant(p: Vec3) -> Self {
        TrigCurve::new(vec![p], Vec::new())
    }

    /// Circle of the given radius about `center` in the plane spanned by the
    /// orthonormal pair (e1, e2).
    pub fn circle(center: Vec3, radius: f64, e1: Vec3, e2: Vec3) -> Self {
        TrigCurve::new(
            vec![center, e1 * radius],
            vec![Vec3::ZERO, e2 * radius],
        )
    }

    pub fn max_harmonic(&self) -> usize {
        self.cos.len() - 1
    }

    pub fn cos_coeffs(&self) -> &[Vec3] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[Vec3] {
        &self.sin
    }

    /// Evaluate at `theta`, reduced mod 2π.
    pub fn eval(&self, theta: f64) -> Vec3 {
        let t = theta.rem_euclid(TAU);
        let mut acc = Vec3::ZERO;
        for k in 0..self.cos.len() {
            let (sk, ck) = (k as f64 * t).sin_cos();
            acc += self.cos[k] * ck + self.sin[k] * sk;
        }
        acc
    }

    /// Termwise analytic derivative at `theta`.
    pub fn derivative(&self, theta: f64) -> Vec3 {
        let t = theta.rem_euclid(TAU);
        let mut acc = Vec3::ZERO;
        for k in 1..self.cos.len() {
            let kf = k as f64;
            let (sk, ck) = (kf * t).sin_cos();
            acc += (self.sin[k] * ck - self.cos[k] * sk) * kf;
        }
        acc
    }

    /// The same curve traversed backward (θ ↦ −θ).
    pub fn reversed(&self) -> TrigCurve {
        TrigCurve {
            cos: self.cos.clone(),
            sin: self.sin.iter().map(|v| -*v).collect(),
        }
    }

    fn transformed(&self, rotation: &Mat3, translation: Vec3, scale: f64) -> TrigCurve {
        let map = |v: &Vec3| rotation.apply(*v) * scale;
        let mut cos: Vec<Vec3> = self.cos.iter().map(map).collect();
        let sin = self.sin.iter().map(map).collect();
        // only the constant term carries the offset
        cos[0] += translation;
        TrigCurve { cos, sin }
    }
}

/// Ordered, oriented three-component link (X, Y, Z).
#[derive(Clone, Debug, PartialEq)]
pub struct Link3 {
    cx: TrigCurve,
    cy: TrigCurve,
    cz: TrigCurve,
}

impl Link3 {
    /// Build a link, probing each component pair on a `DISJOINT_PROBE`-point
    /// grid and requiring separation of at least `DISJOINT_EPS`.
    pub fn new(cx: TrigCurve, cy: TrigCurve, cz: TrigCurve) -> Result<Self> {
        Self::with_separation(cx, cy, cz, DISJOINT_EPS, DISJOINT_PROBE)
    }

    pub fn with_separation(
        cx: TrigCurve,
        cy: TrigCurve,
        cz: TrigCurve,
        eps: f64,
        probe: usize,
    ) -> Result<Self> {
        let link = Link3 { cx, cy, cz };
        link.probe_disjoint(eps, probe)?;
        Ok(link)
    }

    pub(crate) fn new_unchecked(cx: TrigCurve, cy: TrigCurve, cz: TrigCurve) -> Self {
        Link3 { cx, cy, cz }
    }

    fn probe_disjoint(&self, eps: f64, probe: usize) -> Result<()> {
        for (ia, ib) in [(0usize, 1usize), (1, 2), (2, 0)] {
            let (dist, ta, tb) = min_separation_pair(self.component(ia), self.component(ib), probe);
            if dist < eps {
                return Err(Error::DisjointnessViolation {
                    first: COMPONENT_NAMES[ia],
                    second: COMPONENT_NAMES[ib],
                    distance: dist,
                    theta_first: ta,
                    theta_second: tb,
                    minimum: eps,
                });
            }
        }
        Ok(())
    }

    pub fn component(&self, i: usize) -> &TrigCurve {
        match i {
            0 => &self.cx,
            1 => &self.cy,
            2 => &self.cz,
            _ => panic!("component index out of range"),
        }
    }

    pub fn cx(&self) -> &TrigCurve {
        &self.cx
    }

    pub fn cy(&self) -> &TrigCurve {
        &self.cy
    }

    pub fn cz(&self) -> &TrigCurve {
        &self.cz
    }

    /// Smallest pairwise separation seen on a probe grid.
    pub fn min_separation(&self, probe: usize) -> f64 {
        [(0usize, 1usize), (1, 2), (2, 0)]
            .iter()
            .map(|&(a, b)| min_separation_pair(self.component(a), self.component(b), probe).0)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: LinkConfig = serde_json::from_str(text)?;
        Link3::new(
            config.x.into_curve(),
            config.y.into_curve(),
            config.z.into_curve(),
        )
    }

    pub fn to_json(&self) -> String {
        let config = LinkConfig {
            x: CurveConfig::from_curve(&self.cx),
            y: CurveConfig::from_curve(&self.cy),
            z: CurveConfig::from_curve(&self.cz),
        };
        serde_json::to_string_pretty(&config).expect("link config serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Link3::from_json(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        Ok(fs::write(path, self.to_json())?)
    }
}

fn min_separation_pair(a: &TrigCurve, b: &TrigCurve, probe: usize) -> (f64, f64, f64) {
    let step = TAU / probe as f64;
    let pa: Vec<Vec3> = (0..probe).map(|i| a.eval(i as f64 * step)).collect();
    let pb: Vec<Vec3> = (0..probe).map(|i| b.eval(i as f64 * step)).collect();
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for (i, p) in pa.iter().enumerate() {
        for (j, q) in pb.iter().enumerate() {
            let d = p.distance(*q);
            if d < best.0 {
                best = (d, i as f64 * step, j as f64 * step);
            }
        }
    }
    best
}

/// Built-in links.
///
/// * `borromean`: x(s) = (2cos s, 7sin s, 0), y(t) = (0, 2cos t, 7sin t),
///   z(u) = (7sin u, 0, 2cos u) — Borromean rings with μ = −1.
/// * `split-unlink`: three unit circles centered at (0,0,0), (10,0,0),
///   (20,0,0) in parallel planes.
/// * `borromean-reversed`: `borromean` with component X traversed backward.
pub fn preset(name: &str) -> Result<Link3> {
    match name {
        "borromean" => Link3::new(
            TrigCurve::new(
                vec![Vec3::ZERO, Vec3::new(2.0, 0.0, 0.0)],
                vec![Vec3::ZERO, Vec3::new(0.0, 7.0, 0.0)],
            ),
            TrigCurve::new(
                vec![Vec3::ZERO, Vec3::new(0.0, 2.0, 0.0)],
                vec![Vec3::ZERO, Vec3::new(0.0, 0.0, 7.0)],
            ),
            TrigCurve::new(
                vec![Vec3::ZERO, Vec3::new(0.0, 0.0, 2.0)],
                vec![Vec3::ZERO, Vec3::new(7.0, 0.0, 0.0)],
            ),
        ),
        "split-unlink" => {
            let ex = Vec3::new(1.0, 0.0, 0.0);
            let ey = Vec3::new(0.0, 1.0, 0.0);
            Link3::new(
                TrigCurve::circle(Vec3::ZERO, 1.0, ex, ey),
                TrigCurve::circle(Vec3::new(10.0, 0.0, 0.0), 1.0, ex, ey),
                TrigCurve::circle(Vec3::new(20.0, 0.0, 0.0), 1.0, ex, ey),
            )
        }
        "borromean-reversed" => {
            let base = preset("borromean")?;
            Link3::new(base.cx.reversed(), base.cy, base.cz)
        }
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

/// Names accepted by [`preset`].
pub const PRESET_NAMES: [&str; 3] = ["borromean", "split-unlink", "borromean-reversed"];

/// Apply the orientation-preserving similarity p ↦ scale·R·p + translation
/// coefficient-wise. Disjointness is preserved by construction, so the probe
/// is not re-run.
pub fn transform_link(
    link: &Link3,
    rotation: &Mat3,
    translation: Vec3,
    scale: f64,
) -> Result<Link3> {
    if !(scale > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "scale must be positive, got {scale}"
        )));
    }
    if !rotation.is_rotation(1e-9) {
        return Err(Error::NotARotation {
            det: rotation.det(),
        });
    }
    Ok(Link3::new_unchecked(
        link.cx.transformed(rotation, translation, scale),
        link.cy.transformed(rotation, translation, scale),
        link.cz.transformed(rotation, translation, scale),
    ))
}

#[derive(Serialize, Deserialize)]
struct CurveConfig {
    cos: Vec<[f64; 3]>,
    sin: Vec<[f64; 3]>,
}

impl CurveConfig {
    fn from_curve(curve: &TrigCurve) -> Self {
        CurveConfig {
            cos: curve.cos.iter().map(|v| v.as_array()).collect(),
            sin: curve.sin.iter().map(|v| v.as_array()).collect(),
        }
    }

    fn into_curve(self) -> TrigCurve {
        TrigCurve::new(
            self.cos.into_iter().map(Vec3::from_array).collect(),
            self.sin.into_iter().map(Vec3::from_array).collect(),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct LinkConfig {
    x: CurveConfig,
    y: CurveConfig,
    z: CurveConfig,
}
