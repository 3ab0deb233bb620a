//! Pointwise geometry: the Euclidean and spherical key maps and the
//! stereographic bridge between them.
//!
//! For distinct points x, y, z in R³ with oriented triangle sides a = z−y,
//! b = x−z, c = y−x, the key map is
//!
//! ```text
//! F(x,y,z) = a/|a| + b/|b| + c/|c|
//!          + (b×c)/(|b||c|) + (c×a)/(|c||a|) + (a×b)/(|a||b|)
//! ```
//!
//! The first three terms sum to a vector tangent to the triangle's plane that
//! vanishes only for equilateral triangles; the cross-product terms sum to
//! (sin α + sin β + sin γ)·n, which vanishes only for collinear points. The
//! two parts are orthogonal and never vanish together, so F misses the
//! origin and f = F/|F| lands on the unit sphere. f is scale-invariant,
//! equivariant under orientation-preserving isometries, and sign-symmetric
//! under permutations of the three points.
//!
//! The spherical key map acts on distinct unit quaternions as
//! F_S(u,v,w) = Im((v−w)·conj(u−w)). `based_lift` carries a Euclidean triple
//! onto the 3-sphere by translating its third point to the origin and
//! applying inverse stereographic projection; `reduced_bridge_map` is the
//! closed form |a|²b + a|b|² + a×b of that composition with the positive
//! factor `bridge_scale` divided out, and `bridge_gap` measures the cosine of
//! the angle between the two unit fields, which stays strictly above −1.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Points closer than this fraction of the configuration diameter count as
/// coincident.
pub const DISTINCT_REL_TOL: f64 = 1e-12;

/// Real 3-vector.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, rhs: Vec3) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn cross(self, rhs: Vec3) -> Vec3 {
        Vec3::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn distance(self, rhs: Vec3) -> f64 {
        (self - rhs).norm()
    }

    /// Unit vector along `self`; the caller guarantees `self` is nonzero.
    pub fn normalized(self) -> Vec3 {
        self / self.norm()
    }

    pub fn component(self, i: usize) -> f64 {
        match i {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("component index out of range"),
        }
    }

    pub fn set_component(&mut self, i: usize, value: f64) {
        match i {
            0 => self.x = value,
            1 => self.y = value,
            2 => self.z = value,
            _ => panic!("component index out of range"),
        }
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, rhs: Vec3) {
        *self = *self + rhs;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

/// Quaternion with real part `re` and imaginary part `im` in the span of
/// i, j, k (ij = k convention); R³ sits inside as the purely imaginary ones.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub re: f64,
    pub im: Vec3,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion {
        re: 1.0,
        im: Vec3::ZERO,
    };

    pub const fn new(re: f64, im: Vec3) -> Self {
        Quaternion { re, im }
    }

    /// Purely imaginary quaternion with the given vector part.
    pub const fn pure(v: Vec3) -> Self {
        Quaternion { re: 0.0, im: v }
    }

    pub fn conj(self) -> Quaternion {
        Quaternion::new(self.re, -self.im)
    }

    pub fn norm_sq(self) -> f64 {
        self.re * self.re + self.im.norm_sq()
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn distance(self, rhs: Quaternion) -> f64 {
        (self - rhs).norm()
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.re, -self.im)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        // Im(q1 q2) = Re(q1)Im(q2) + Im(q1)Re(q2) + Im(q1)×Im(q2)
        Quaternion::new(
            self.re * rhs.re - self.im.dot(rhs.im),
            self.re * rhs.im + rhs.re * self.im + self.im.cross(rhs.im),
        )
    }
}

/// Row-major 3×3 matrix; carries the rotational part of rigid motions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.0;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn matmul(&self, rhs: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Mat3(out)
    }

    /// Rotation by `angle` radians about the (not necessarily unit) `axis`.
    pub fn rotation(axis: Vec3, angle: f64) -> Mat3 {
        let u = axis.normalized();
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        Mat3([
            [
                c + u.x * u.x * t,
                u.x * u.y * t - u.z * s,
                u.x * u.z * t + u.y * s,
            ],
            [
                u.y * u.x * t + u.z * s,
                c + u.y * u.y * t,
                u.y * u.z * t - u.x * s,
            ],
            [
                u.z * u.x * t - u.y * s,
                u.z * u.y * t + u.x * s,
                c + u.z * u.z * t,
            ],
        ])
    }

    /// True when the rows are orthonormal and the determinant is +1, both
    /// within `tol`.
    pub fn is_rotation(&self, tol: f64) -> bool {
        let gram = self.matmul(&self.transpose());
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                if (gram.0[i][j] - want).abs() > tol {
                    return false;
                }
            }
        }
        (self.det() - 1.0).abs() <= tol
    }
}

fn guard_distinct(pairs: [(usize, usize, f64); 3]) -> Result<()> {
    let scale = pairs.iter().fold(0.0f64, |m, p| m.max(p.2));
    for (i, j, dist) in pairs {
        if dist < DISTINCT_REL_TOL * scale || scale == 0.0 {
            return Err(Error::DegenerateInput {
                i,
                j,
                distance: dist,
                scale,
            });
        }
    }
    Ok(())
}

/// Distinctness guard shared by the key maps: errors when two points fall
/// within `DISTINCT_REL_TOL` of the configuration diameter.
pub fn check_points_distinct(x: Vec3, y: Vec3, z: Vec3) -> Result<()> {
    guard_distinct([
        (0, 1, x.distance(y)),
        (1, 2, y.distance(z)),
        (2, 0, z.distance(x)),
    ])
}

pub(crate) fn check_distinct_quaternions(u: Quaternion, v: Quaternion, w: Quaternion) -> Result<()> {
    guard_distinct([
        (0, 1, u.distance(v)),
        (1, 2, v.distance(w)),
        (2, 0, w.distance(u)),
    ])
}

/// Oriented triangle sides (a, b, c) = (z−y, x−z, y−x) of the triple.
fn sides(x: Vec3, y: Vec3, z: Vec3) -> (Vec3, Vec3, Vec3) {
    (z - y, x - z, y - x)
}

/// Tangential part [a]+[b]+[c] and normal part [b,c]+[c,a]+[a,b] of the key
/// map; their sum is `key_map_e`.
pub fn key_map_e_parts(x: Vec3, y: Vec3, z: Vec3) -> Result<(Vec3, Vec3)> {
    check_points_distinct(x, y, z)?;
    let (a, b, c) = sides(x, y, z);
    let (la, lb, lc) = (a.norm(), b.norm(), c.norm());
    let tangential = a / la + b / lb + c / lc;
    // Written as cross products so exact collinearity yields a zero normal
    // part without branching on a separately-computed unit normal.
    let normal = b.cross(c) / (lb * lc) + c.cross(a) / (lc * la) + a.cross(b) / (la * lb);
    Ok((tangential, normal))
}

/// Key map F of the ordered triple (x, y, z); never zero for distinct points.
pub fn key_map_e(x: Vec3, y: Vec3, z: Vec3) -> Result<Vec3> {
    let (tangential, normal) = key_map_e_parts(x, y, z)?;
    Ok(tangential + normal)
}

/// Unit-normalized key map f = F/|F|.
pub fn normalized_key_map_e(x: Vec3, y: Vec3, z: Vec3) -> Result<Vec3> {
    Ok(key_map_e(x, y, z)?.normalized())
}

/// Inverse stereographic projection from −1: maps q ∈ R³ (viewed as a purely
/// imaginary quaternion) to a unit quaternion distinct from −1, with −1, q
/// and h(q) collinear in R⁴.
pub fn inverse_stereographic(q: Vec3) -> Quaternion {
    let n2 = q.norm_sq();
    let denom = 1.0 + n2;
    Quaternion::new((1.0 - n2) / denom, q * (2.0 / denom))
}

/// Spherical key map Im((v−w)·conj(u−w)) on distinct unit quaternions.
pub fn key_map_s(u: Quaternion, v: Quaternion, w: Quaternion) -> Result<Vec3> {
    check_distinct_quaternions(u, v, w)?;
    Ok(((v - w) * (u - w).conj()).im)
}

/// Lift of a Euclidean triple to the 3-sphere, based so the third point maps
/// to the identity: (h(x−z), h(y−z), 1).
pub fn based_lift(x: Vec3, y: Vec3, z: Vec3) -> Result<(Quaternion, Quaternion, Quaternion)> {
    check_points_distinct(x, y, z)?;
    Ok((
        inverse_stereographic(x - z),
        inverse_stereographic(y - z),
        Quaternion::ONE,
    ))
}

/// Closed form |a|²b + a|b|² + a×b of `key_map_s` ∘ `based_lift` with the
/// positive factor `bridge_scale` divided out.
pub fn reduced_bridge_map(x: Vec3, y: Vec3, z: Vec3) -> Result<Vec3> {
    check_points_distinct(x, y, z)?;
    let (a, b, _) = sides(x, y, z);
    Ok(b * a.norm_sq() + a * b.norm_sq() + a.cross(b))
}

/// Scale factor C = 4(1+|a|²)⁻¹(1+|b|²)⁻¹ relating the lifted spherical key
/// map to `reduced_bridge_map`.
pub fn bridge_scale(x: Vec3, y: Vec3, z: Vec3) -> f64 {
    let (a, b, _) = sides(x, y, z);
    4.0 / ((1.0 + a.norm_sq()) * (1.0 + b.norm_sq()))
}

/// Cosine of the angle between the normalized Euclidean key map and the
/// normalized lifted spherical key map. Lies in [−1, 1] and never reaches −1:
/// the segment between the two images misses the origin.
pub fn bridge_gap(x: Vec3, y: Vec3, z: Vec3) -> Result<f64> {
    let fe = key_map_e(x, y, z)?;
    let (u, v, w) = based_lift(x, y, z)?;
    let fs = key_map_s(u, v, w)?;
    Ok(fe.normalized().dot(fs.normalized()))
}

/// Summary statistics from sampling `bridge_gap` and the C-scaling identity
/// over seeded random triples.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BridgeCheckSummary {
    pub trials: u64,
    pub seed: u64,
    pub min_gap: f64,
    pub mean_gap: f64,
    pub max_scale_rel_err: f64,
}

/// Sample `trials` random distinct triples from a seeded generator and record
/// the min/mean of `bridge_gap` along with the worst relative error of the
/// identity key_map_s ∘ based_lift = C · reduced_bridge_map.
pub fn bridge_check(trials: u64, seed: u64) -> BridgeCheckSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = |rng: &mut ChaCha8Rng| {
        Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        )
    };
    let mut min_gap = f64::INFINITY;
    let mut gap_sum = 0.0;
    let mut max_rel = 0.0f64;
    let mut done = 0u64;
    while done < trials {
        let (x, y, z) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        if check_points_distinct(x, y, z).is_err() {
            continue;
        }
        let gap = bridge_gap(x, y, z).expect("distinct by construction");
        min_gap = min_gap.min(gap);
        gap_sum += gap;

        let (u, v, w) = based_lift(x, y, z).expect("distinct by construction");
        let lhs = key_map_s(u, v, w).expect("distinct by construction");
        let rhs = reduced_bridge_map(x, y, z).expect("distinct by construction") * bridge_scale(x, y, z);
        max_rel = max_rel.max((lhs - rhs).norm() / lhs.norm());
        done += 1;
    }
    BridgeCheckSummary {
        trials,
        seed,
        min_gap,
        mean_gap: gap_sum / trials as f64,
        max_scale_rel_err: max_rel,
    }
}
