//! Sampling of the generalized Gauss map on T³, its pullback 2-form, Fourier
//! analysis, and the three equivalent formulas for the triple linking number.
//!
//! With F(s,t,u) the (unnormalized) key map sampled along the three
//! components, the pullback of the normalized sphere area form has components
//!
//! ```text
//! p = (F_t × F_u)·F / 4π|F|³,  q = (F_u × F_s)·F / 4π|F|³,  r = (F_s × F_t)·F / 4π|F|³
//! ```
//!
//! on dt∧du, du∧ds and ds∧dt respectively; partial derivatives are taken
//! spectrally. Writing c_n = a_n + i·b_n for the Fourier coefficients of the
//! sampled (p,q,r) field (1/(2π)³ integral convention, so the discrete
//! estimate is the plain DFT divided by N³), the triple linking number of a
//! link whose pairwise linking numbers vanish is
//!
//! ```text
//! μ = 8π³ Σ_{n≠0} (a_n × b_n)·n / |n|²
//! ```
//!
//! and equivalently μ = ½∫ α ∧ ω where α is the least-L²-norm primitive of
//! ω, realized per mode as Â_n = i(n × c_n)/|n|², and μ = ½·(helicity of the
//! dual vector field), evaluated as a double Riemann sum against the gradient
//! of the fundamental solution φ of the Laplacian on T³.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fft::{bin_mode, mode_bin, Fft1};
use crate::gauss::{subtorus_degree, Axis};
use crate::geometry::{inverse_stereographic, key_map_e, key_map_s, Vec3};
use crate::link::Link3;

/// Numerical threshold under which a subtorus degree or mean Fourier
/// coefficient counts as zero for the μ preconditions.
pub const NULL_HOMOLOGY_TOL: f64 = 1e-3;

/// Hard cap on the helicity grid; the double sum costs O(N⁶).
pub const HELICITY_GRID_CAP: usize = 24;

/// Grid used for the subtorus-degree precondition gate.
const GATE_GRID: usize = 128;

fn validate_grid(n: usize) -> Result<()> {
    if n < 8 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "grid must be even and at least 8, got {n}"
        )));
    }
    Ok(())
}

/// N×N×N grid of `Vec3` samples over T³ = (R/2πZ)³; index (j,k,l)
/// corresponds to (s,t,u) = 2π(j,k,l)/N, stored row-major in (j,k,l).
#[derive(Clone, Debug, PartialEq)]
pub struct Grid3Field {
    n: usize,
    data: Vec<Vec3>,
}

impl Grid3Field {
    pub fn zeros(n: usize) -> Self {
        Grid3Field {
            n,
            data: vec![Vec3::ZERO; n * n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn idx(&self, j: usize, k: usize, l: usize) -> usize {
        (j * self.n + k) * self.n + l
    }

    pub fn get(&self, j: usize, k: usize, l: usize) -> Vec3 {
        self.data[self.idx(j, k, l)]
    }

    pub fn set(&mut self, j: usize, k: usize, l: usize, value: Vec3) {
        let idx = self.idx(j, k, l);
        self.data[idx] = value;
    }

    pub fn data(&self) -> &[Vec3] {
        &self.data
    }

    /// Angle of grid index `i` along any axis.
    pub fn node_angle(&self, i: usize) -> f64 {
        TAU * i as f64 / self.n as f64
    }

    /// Mean of the samples (deterministic serial reduction).
    pub fn mean(&self) -> Vec3 {
        let mut acc = Vec3::ZERO;
        for v in &self.data {
            acc += *v;
        }
        acc / self.data.len() as f64
    }

    fn try_sample<F>(n: usize, f: F) -> Result<Grid3Field>
    where
        F: Fn(usize, usize, usize) -> Result<Vec3> + Sync,
    {
        let mut data = vec![Vec3::ZERO; n * n * n];
        data.par_chunks_mut(n * n)
            .enumerate()
            .try_for_each(|(j, slab)| -> Result<()> {
                for k in 0..n {
                    for l in 0..n {
                        slab[k * n + l] = f(j, k, l)?;
                    }
                }
                Ok(())
            })?;
        Ok(Grid3Field { n, data })
    }
}

/// Complex 3-vector Fourier coefficient per integer mode, with components of
/// the mode vector in (−N/2, N/2]. Stored in DFT bin order matching
/// `Grid3Field`'s layout.
#[derive(Clone, Debug)]
pub struct FourierField {
    n: usize,
    data: Vec<[Complex64; 3]>,
}

impl FourierField {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[[Complex64; 3]] {
        &self.data
    }

    /// Coefficient of the mode (ns, nt, nu).
    pub fn coeff(&self, ns: i64, nt: i64, nu: i64) -> [Complex64; 3] {
        let n = self.n;
        let idx = (mode_bin(ns, n) * n + mode_bin(nt, n)) * n + mode_bin(nu, n);
        self.data[idx]
    }

    pub fn c0(&self) -> [Complex64; 3] {
        self.data[0]
    }

    /// Euclidean norm of the mean coefficient c₀.
    pub fn c0_norm(&self) -> f64 {
        self.c0().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Mode vector of the flattened bin index.
    fn mode_of(&self, idx: usize) -> (i64, i64, i64) {
        let n = self.n;
        let l = idx % n;
        let k = (idx / n) % n;
        let j = idx / (n * n);
        (bin_mode(j, n), bin_mode(k, n), bin_mode(l, n))
    }
}

// ---------------------------------------------------------------------------
// axis-wise FFT plumbing

/// dst[(a·n + b)·n + c] = src[(c·n + b)·n + a]; applying it twice restores
/// the original layout.
fn transpose_02(src: &[Complex64], dst: &mut [Complex64], n: usize) {
    dst.par_chunks_mut(n * n).enumerate().for_each(|(a, plane)| {
        for b in 0..n {
            for c in 0..n {
                plane[b * n + c] = src[(c * n + b) * n + a];
            }
        }
    });
}

fn fft_along_axis(data: &mut [Complex64], n: usize, axis: usize, inverse: bool, fft: &Fft1) {
    let run = |line: &mut [Complex64]| {
        if inverse {
            fft.backward(line);
        } else {
            fft.forward(line);
        }
    };
    match axis {
        2 => data.par_chunks_mut(n).for_each(run),
        1 => data.par_chunks_mut(n * n).for_each(|plane| {
            let mut line = vec![Complex64::new(0.0, 0.0); n];
            for l in 0..n {
                for k in 0..n {
                    line[k] = plane[k * n + l];
                }
                run(&mut line);
                for k in 0..n {
                    plane[k * n + l] = line[k];
                }
            }
        }),
        0 => {
            let mut tmp = vec![Complex64::new(0.0, 0.0); data.len()];
            transpose_02(data, &mut tmp, n);
            tmp.par_chunks_mut(n).for_each(run);
            transpose_02(&tmp, data, n);
        }
        _ => panic!("axis out of range"),
    }
}

fn component_buffer(field: &Grid3Field, comp: usize) -> Vec<Complex64> {
    field
        .data
        .par_iter()
        .map(|v| Complex64::new(v.component(comp), 0.0))
        .collect()
}

/// Spectral partial derivative of a sampled field along torus axis 0, 1 or 2
/// (that is, s, t or u): forward transform along that axis, multiply mode m
/// by i·m (Nyquist zeroed), transform back.
pub fn spectral_partial_field(field: &Grid3Field, axis: usize) -> Grid3Field {
    assert!(axis < 3, "axis out of range");
    let fft = Fft1::new(field.n);
    spectral_partial(field, axis, &fft)
}

fn spectral_partial(field: &Grid3Field, axis: usize, fft: &Fft1) -> Grid3Field {
    let n = field.n;
    let mut out = Grid3Field::zeros(n);
    for comp in 0..3 {
        let mut buf = component_buffer(field, comp);
        fft_along_axis(&mut buf, n, axis, false, fft);
        let scale = 1.0 / n as f64;
        buf.par_iter_mut().enumerate().for_each(|(idx, value)| {
            let bin = match axis {
                0 => idx / (n * n),
                1 => (idx / n) % n,
                _ => idx % n,
            };
            let m = if 2 * bin == n { 0.0 } else { bin_mode(bin, n) as f64 };
            *value *= Complex64::new(0.0, m * scale);
        });
        fft_along_axis(&mut buf, n, axis, true, fft);
        out.data
            .par_iter_mut()
            .zip(buf.par_iter())
            .for_each(|(v, b)| v.set_component(comp, b.re));
    }
    out
}

// ---------------------------------------------------------------------------
// field sampling

/// Sample the (unnormalized) key map F(x(s), y(t), z(u)) on an N³ grid.
pub fn sample_gauss_field(link: &Link3, n: usize) -> Result<Grid3Field> {
    validate_grid(n)?;
    let step = TAU / n as f64;
    let xs: Vec<Vec3> = (0..n).map(|j| link.cx().eval(j as f64 * step)).collect();
    let ys: Vec<Vec3> = (0..n).map(|k| link.cy().eval(k as f64 * step)).collect();
    let zs: Vec<Vec3> = (0..n).map(|l| link.cz().eval(l as f64 * step)).collect();
    Grid3Field::try_sample(n, |j, k, l| key_map_e(xs[j], ys[k], zs[l]))
}

/// Sample the spherical key map of the stereographically lifted link,
/// F_S(h(x(s)), h(y(t)), h(z(u))).
pub fn sample_spherical_field(link: &Link3, n: usize) -> Result<Grid3Field> {
    validate_grid(n)?;
    let step = TAU / n as f64;
    let lift = |curve: &crate::link::TrigCurve| -> Vec<crate::geometry::Quaternion> {
        (0..n)
            .map(|i| inverse_stereographic(curve.eval(i as f64 * step)))
            .collect()
    };
    let hx = lift(link.cx());
    let hy = lift(link.cy());
    let hz = lift(link.cz());
    Grid3Field::try_sample(n, |j, k, l| key_map_s(hx[j], hy[k], hz[l]))
}

/// Components (p, q, r) of the pullback of the normalized sphere area form
/// under the normalization of the sampled field.
pub fn pullback_area_form(field: &Grid3Field) -> Grid3Field {
    let n = field.n;
    let fft = Fft1::new(n);
    let fs = spectral_partial(field, 0, &fft);
    let ft = spectral_partial(field, 1, &fft);
    let fu = spectral_partial(field, 2, &fft);
    let mut out = Grid3Field::zeros(n);
    out.data
        .par_iter_mut()
        .enumerate()
        .for_each(|(idx, value)| {
            let f = field.data[idx];
            let norm = f.norm();
            let scale = 1.0 / (4.0 * PI * norm * norm * norm);
            *value = Vec3::new(
                ft.data[idx].cross(fu.data[idx]).dot(f) * scale,
                fu.data[idx].cross(fs.data[idx]).dot(f) * scale,
                fs.data[idx].cross(ft.data[idx]).dot(f) * scale,
            );
        });
    out
}

/// Characteristic 2-form of the link: sampled (p, q, r) on the N³ grid.
/// Via ω(A,B) = (A×B)·V this same grid is the sampled characteristic vector
/// field.
pub fn characteristic_form(link: &Link3, n: usize) -> Result<Grid3Field> {
    Ok(pullback_area_form(&sample_gauss_field(link, n)?))
}

// ---------------------------------------------------------------------------
// discrete Fourier analysis

/// Forward 3-torus transform: c_n = (1/N³) Σ f(x) e^{−i n·x}.
pub fn dft3(grid: &Grid3Field) -> FourierField {
    let n = grid.n;
    let fft = Fft1::new(n);
    let mut data = vec![[Complex64::new(0.0, 0.0); 3]; n * n * n];
    let scale = 1.0 / (n * n * n) as f64;
    for comp in 0..3 {
        let mut buf = component_buffer(grid, comp);
        for axis in [2, 1, 0] {
            fft_along_axis(&mut buf, n, axis, false, &fft);
        }
        data.par_iter_mut().zip(buf.par_iter()).for_each(|(d, b)| {
            d[comp] = b * scale;
        });
    }
    FourierField { n, data }
}

/// Inverse transform f(x) = Σ c_n e^{+i n·x}, returning the real part.
pub fn idft3(coeffs: &FourierField) -> Grid3Field {
    let n = coeffs.n;
    let fft = Fft1::new(n);
    let mut out = Grid3Field::zeros(n);
    for comp in 0..3 {
        let mut buf: Vec<Complex64> = coeffs.data.par_iter().map(|c| c[comp]).collect();
        for axis in [2, 1, 0] {
            fft_along_axis(&mut buf, n, axis, true, &fft);
        }
        out.data
            .par_iter_mut()
            .zip(buf.par_iter())
            .for_each(|(v, b)| v.set_component(comp, b.re));
    }
    out
}

// ---------------------------------------------------------------------------
// μ formulas

fn require_small_c0(c0_norm: f64) -> Result<()> {
    if c0_norm >= NULL_HOMOLOGY_TOL {
        return Err(Error::NotNullHomologous {
            reason: format!(
                "mean Fourier coefficient |c0| = {c0_norm:.3e} exceeds {NULL_HOMOLOGY_TOL:.0e}"
            ),
        });
    }
    Ok(())
}

/// Verify that all three subtorus degrees vanish numerically — the
/// precondition for every μ formula. Returns the measured degrees.
pub fn require_null_homologous(link: &Link3) -> Result<[f64; 3]> {
    let mut degrees = [0.0; 3];
    for (slot, axis) in Axis::ALL.into_iter().enumerate() {
        let deg = subtorus_degree(link, axis, 0.0, GATE_GRID)?;
        if deg.abs() >= NULL_HOMOLOGY_TOL {
            return Err(Error::NotNullHomologous {
                reason: format!("subtorus degree on the {axis}-slice is {deg:.4}"),
            });
        }
        degrees[slot] = deg;
    }
    Ok(degrees)
}

/// μ from the Fourier coefficients of the characteristic form, summed over
/// every stored mode: 8π³ Σ_{n≠0} (a_n × b_n)·n/|n|².
pub fn mu_fourier(coeffs: &FourierField) -> Result<f64> {
    require_small_c0(coeffs.c0_norm())?;
    let n = coeffs.n;
    let partials: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut acc = 0.0;
            for k in 0..n {
                for l in 0..n {
                    let idx = (j * n + k) * n + l;
                    if idx == 0 {
                        continue;
                    }
                    let (ns, nt, nu) = coeffs.mode_of(idx);
                    acc += mode_term(coeffs.data[idx], ns, nt, nu);
                }
            }
            acc
        })
        .collect();
    Ok(8.0 * PI.powi(3) * partials.iter().sum::<f64>())
}

/// μ restricted to the cube of modes with |n_i| ≤ cutoff. At cutoff = N/2 the
/// two Nyquist aliases ±N/2 are both visited, matching what a grid-sampled
/// plane-wave expansion (and hence the helicity double sum) sees.
pub fn mu_fourier_modes(coeffs: &FourierField, cutoff: usize) -> Result<f64> {
    require_small_c0(coeffs.c0_norm())?;
    let n = coeffs.n;
    if cutoff == 0 || 2 * cutoff > n {
        return Err(Error::InvalidArgument(format!(
            "mode cutoff must lie in 1..=N/2 = {}, got {cutoff}",
            n / 2
        )));
    }
    let c = cutoff as i64;
    let mut sum = 0.0;
    for ns in -c..=c {
        for nt in -c..=c {
            for nu in -c..=c {
                if ns == 0 && nt == 0 && nu == 0 {
                    continue;
                }
                let idx = (mode_bin(ns, n) * n + mode_bin(nt, n)) * n + mode_bin(nu, n);
                sum += mode_term(coeffs.data[idx], ns, nt, nu);
            }
        }
    }
    Ok(8.0 * PI.powi(3) * sum)
}

fn mode_term(c: [Complex64; 3], ns: i64, nt: i64, nu: i64) -> f64 {
    let a = Vec3::new(c[0].re, c[1].re, c[2].re);
    let b = Vec3::new(c[0].im, c[1].im, c[2].im);
    let nvec = Vec3::new(ns as f64, nt as f64, nu as f64);
    a.cross(b).dot(nvec) / nvec.norm_sq()
}

/// Least-L²-norm primitive of an exact 2-form, per mode Â_n = i(n × c_n)/|n|²
/// with Â_0 = 0; satisfies the curl relation i·n × Â_n = c_n whenever
/// n·c_n = 0, and n·Â_n = 0 always.
pub fn least_norm_primitive(coeffs: &FourierField) -> Result<FourierField> {
    require_small_c0(coeffs.c0_norm())?;
    let n = coeffs.n;
    let mut data = vec![[Complex64::new(0.0, 0.0); 3]; coeffs.data.len()];
    data.par_iter_mut().enumerate().for_each(|(idx, out)| {
        if idx == 0 {
            return;
        }
        let (ns, nt, nu) = coeffs.mode_of(idx);
        let nvec = Vec3::new(ns as f64, nt as f64, nu as f64);
        let c = coeffs.data[idx];
        // i (n × c) / |n|², componentwise over the complex coefficient
        let cross = [
            Complex64::new(0.0, 1.0) * (nvec.y * c[2] - nvec.z * c[1]),
            Complex64::new(0.0, 1.0) * (nvec.z * c[0] - nvec.x * c[2]),
            Complex64::new(0.0, 1.0) * (nvec.x * c[1] - nvec.y * c[0]),
        ];
        let inv = 1.0 / nvec.norm_sq();
        *out = [cross[0] * inv, cross[1] * inv, cross[2] * inv];
    });
    Ok(FourierField { n, data })
}

/// ½ ∫ α ∧ ω evaluated as ½ (2π/N)³ Σ (α_s p + α_t q + α_u r) over the grid.
pub fn whitehead_pairing(alpha: &Grid3Field, form: &Grid3Field) -> f64 {
    assert_eq!(alpha.n, form.n, "grids must match");
    let n = alpha.n;
    let partials: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut acc = 0.0;
            for idx in j * n * n..(j + 1) * n * n {
                acc += alpha.data[idx].dot(form.data[idx]);
            }
            acc
        })
        .collect();
    0.5 * (TAU / n as f64).powi(3) * partials.iter().sum::<f64>()
}

fn mu_whitehead_of_form(form: &Grid3Field) -> Result<f64> {
    let coeffs = dft3(form);
    let primitive = least_norm_primitive(&coeffs)?;
    let alpha = idft3(&primitive);
    Ok(whitehead_pairing(&alpha, form))
}

/// μ by the primitive pairing ½∫ d⁻¹(ω) ∧ ω with the least-norm primitive;
/// agrees with `mu_fourier` at identical truncation up to roundoff.
pub fn mu_whitehead(link: &Link3, n: usize) -> Result<f64> {
    validate_grid(n)?;
    require_null_homologous(link)?;
    mu_whitehead_of_form(&characteristic_form(link, n)?)
}

/// μ through the spherical key map: the same primitive-pairing pipeline run
/// on the field F_S(h(x(s)), h(y(t)), h(z(u))). Rounds to the same integer as
/// the Euclidean routes.
pub fn mu_spherical(link: &Link3, n: usize) -> Result<f64> {
    validate_grid(n)?;
    require_null_homologous(link)?;
    mu_whitehead_of_form(&pullback_area_form(&sample_spherical_field(link, n)?))
}

/// μ as one-half the helicity of the characteristic vector field:
/// ½ ∬ V(x) × V(y) · ∇_y φ(x−y) dx dy as a double Riemann sum on an N³ grid,
/// with φ truncated to the cube |n_i| ≤ cutoff. Matches
/// `mu_fourier_modes(·, cutoff)` at cutoff ≤ N/2.
pub fn mu_helicity(link: &Link3, n_small: usize, cutoff: usize) -> Result<f64> {
    if n_small > HELICITY_GRID_CAP {
        return Err(Error::GridTooLarge {
            n: n_small,
            cap: HELICITY_GRID_CAP,
        });
    }
    validate_grid(n_small)?;
    if cutoff == 0 {
        return Err(Error::InvalidArgument("cutoff must be positive".into()));
    }
    require_null_homologous(link)?;
    let field = characteristic_form(link, n_small)?;
    require_small_c0(field.mean().norm())?;

    let n = n_small;
    let series = PhiSeries::new(cutoff);
    let step = TAU / n as f64;
    // ∇φ at every grid offset; x−y is then a table lookup
    let gradients: Vec<Vec3> = (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let l = idx % n;
            let k = (idx / n) % n;
            let j = idx / (n * n);
            series.grad(Vec3::new(
                j as f64 * step,
                k as f64 * step,
                l as f64 * step,
            ))
        })
        .collect();

    let data = field.data();
    let partials: Vec<f64> = (0..n * n * n)
        .into_par_iter()
        .map(|x_idx| {
            let lx = x_idx % n;
            let kx = (x_idx / n) % n;
            let jx = x_idx / (n * n);
            let vx = data[x_idx];
            let mut acc = 0.0;
            let mut y_idx = 0;
            for jy in 0..n {
                let dj = (jx + n - jy) % n;
                for ky in 0..n {
                    let dk = (kx + n - ky) % n;
                    let base = (dj * n + dk) * n;
                    for ly in 0..n {
                        let dl = (lx + n - ly) % n;
                        acc += vx.cross(data[y_idx]).dot(gradients[base + dl]);
                        y_idx += 1;
                    }
                }
            }
            acc
        })
        .collect();
    // ∇_y φ(x−y) = −(∇φ)(x−y)
    let double_sum = -partials.iter().sum::<f64>() * step.powi(6);
    Ok(0.5 * double_sum)
}

/// μ evaluation routes exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuMethod {
    Fourier,
    Whitehead,
    Helicity,
    Spherical,
}

impl fmt::Display for MuMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MuMethod::Fourier => "fourier",
            MuMethod::Whitehead => "whitehead",
            MuMethod::Helicity => "helicity",
            MuMethod::Spherical => "spherical",
        })
    }
}

impl FromStr for MuMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fourier" => Ok(MuMethod::Fourier),
            "whitehead" => Ok(MuMethod::Whitehead),
            "helicity" => Ok(MuMethod::Helicity),
            "spherical" => Ok(MuMethod::Spherical),
            other => Err(Error::InvalidArgument(format!(
                "unknown μ method `{other}` (expected fourier, whitehead, helicity or spherical)"
            ))),
        }
    }
}

/// Run the chosen μ pipeline. `cutoff` restricts the Fourier mode cube for
/// the fourier method and truncates the φ series for the helicity method
/// (default N/2); the other methods ignore it.
pub fn compute_mu(link: &Link3, method: MuMethod, n: usize, cutoff: Option<usize>) -> Result<f64> {
    match method {
        MuMethod::Fourier => {
            validate_grid(n)?;
            require_null_homologous(link)?;
            let coeffs = dft3(&characteristic_form(link, n)?);
            match cutoff {
                Some(c) => mu_fourier_modes(&coeffs, c),
                None => mu_fourier(&coeffs),
            }
        }
        MuMethod::Whitehead => mu_whitehead(link, n),
        MuMethod::Helicity => mu_helicity(link, n, cutoff.unwrap_or(n / 2)),
        MuMethod::Spherical => mu_spherical(link, n),
    }
}

// ---------------------------------------------------------------------------
// fundamental solution of the Laplacian

/// Truncated Fourier series of the fundamental solution of the scalar
/// Laplacian on the torus, φ(x) = (1/8π³) Σ_{n≠0} e^{i n·x}/|n|², summed over
/// the cube |n_i| ≤ cutoff (evaluated on demand, no stored samples).
#[derive(Clone, Copy, Debug)]
pub struct PhiSeries {
    cutoff: usize,
}

impl PhiSeries {
    pub fn new(cutoff: usize) -> Self {
        assert!(cutoff >= 1, "cutoff must be at least 1");
        PhiSeries { cutoff }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// φ(x); the imaginary part of the complex sum cancels by the n ↔ −n
    /// symmetry and is asserted small before being discarded. At x = 0 this
    /// returns the (large, finite) truncated partial sum.
    pub fn phi(&self, x: Vec3) -> f64 {
        let c = self.cutoff as i64;
        let mut acc = Complex64::new(0.0, 0.0);
        for ns in -c..=c {
            for nt in -c..=c {
                for nu in -c..=c {
                    if ns == 0 && nt == 0 && nu == 0 {
                        continue;
                    }
                    let norm_sq = (ns * ns + nt * nt + nu * nu) as f64;
                    let angle = ns as f64 * x.x + nt as f64 * x.y + nu as f64 * x.z;
                    acc += Complex64::new(angle.cos(), angle.sin()) / norm_sq;
                }
            }
        }
        assert!(acc.im.abs() < 1e-10, "imaginary residue {:.3e}", acc.im);
        acc.re / (8.0 * PI.powi(3))
    }

    /// Termwise gradient (1/8π³) Σ_{n≠0} i·n e^{i n·x}/|n|².
    pub fn grad(&self, x: Vec3) -> Vec3 {
        let c = self.cutoff as i64;
        let mut acc = [Complex64::new(0.0, 0.0); 3];
        for ns in -c..=c {
            for nt in -c..=c {
                for nu in -c..=c {
                    if ns == 0 && nt == 0 && nu == 0 {
                        continue;
                    }
                    let norm_sq = (ns * ns + nt * nt + nu * nu) as f64;
                    let angle = ns as f64 * x.x + nt as f64 * x.y + nu as f64 * x.z;
                    let phase =
                        Complex64::new(0.0, 1.0) * Complex64::new(angle.cos(), angle.sin()) / norm_sq;
                    acc[0] += ns as f64 * phase;
                    acc[1] += nt as f64 * phase;
                    acc[2] += nu as f64 * phase;
                }
            }
        }
        for a in &acc {
            assert!(a.im.abs() < 1e-10, "imaginary residue {:.3e}", a.im);
        }
        Vec3::new(acc[0].re, acc[1].re, acc[2].re) / (8.0 * PI.powi(3))
    }

    /// Two-dimensional analogue (1/4π²) Σ_{n≠0} e^{i n·x}/|n|² on T².
    pub fn phi2(&self, x1: f64, x2: f64) -> f64 {
        let c = self.cutoff as i64;
        let mut acc = Complex64::new(0.0, 0.0);
        for ns in -c..=c {
            for nt in -c..=c {
                if ns == 0 && nt == 0 {
                    continue;
                }
                let norm_sq = (ns * ns + nt * nt) as f64;
                let angle = ns as f64 * x1 + nt as f64 * x2;
                acc += Complex64::new(angle.cos(), angle.sin()) / norm_sq;
            }
        }
        assert!(acc.im.abs() < 1e-10, "imaginary residue {:.3e}", acc.im);
        acc.re / (4.0 * PI * PI)
    }
}

/// φ(x) with the series truncated at |n|∞ ≤ cutoff.
pub fn phi(x: Vec3, cutoff: usize) -> f64 {
    PhiSeries::new(cutoff).phi(x)
}

/// ∇φ(x) with the series truncated at |n|∞ ≤ cutoff.
pub fn grad_phi(x: Vec3, cutoff: usize) -> Vec3 {
    PhiSeries::new(cutoff).grad(x)
}

// ---------------------------------------------------------------------------
// dumps

/// CSV dump of a grid field: node indices, torus coordinates and the three
/// vector components, row-major in (j,k,l).
pub fn write_field_csv<W: Write>(out: &mut W, field: &Grid3Field) -> std::io::Result<()> {
    writeln!(out, "j,k,l,s,t,u,px,py,pz")?;
    let n = field.n();
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                let v = field.get(j, k, l);
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    j,
                    k,
                    l,
                    field.node_angle(j),
                    field.node_angle(k),
                    field.node_angle(l),
                    v.x,
                    v.y,
                    v.z
                )?;
            }
        }
    }
    Ok(())
}

/// CSV dump of the two-dimensional fundamental solution over [−3π, 3π]² on a
/// `points`×`points` inclusive grid.
pub fn write_phi2d_csv<W: Write>(out: &mut W, cutoff: usize, points: usize) -> std::io::Result<()> {
    assert!(points >= 2);
    writeln!(out, "x1,x2,phi")?;
    let series = PhiSeries::new(cutoff);
    let lo = -3.0 * PI;
    let span = 6.0 * PI;
    let coord = |i: usize| lo + span * i as f64 / (points - 1) as f64;
    let rows: Vec<String> = (0..points)
        .into_par_iter()
        .map(|i| {
            let mut block = String::new();
            for jj in 0..points {
                let (x1, x2) = (coord(i), coord(jj));
                block.push_str(&format!("{},{},{}\n", x1, x2, series.phi2(x1, x2)));
            }
            block
        })
        .collect();
    for block in rows {
        out.write_all(block.as_bytes())?;
    }
    Ok(())
}
