//! One-dimensional complex discrete Fourier transform.
//!
//! Power-of-two lengths run on an iterative radix-2 Cooley-Tukey path; any
//! other length falls back to direct summation against the same precomputed
//! root table. Both directions are unscaled sums; callers fold in whatever
//! normalization their convention needs.

use num_complex::Complex64;
use std::f64::consts::TAU;

pub struct Fft1 {
    n: usize,
    /// roots[k] = exp(−2πi k / n)
    roots: Vec<Complex64>,
}

impl Fft1 {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "transform length must be positive");
        let roots = (0..n)
            .map(|k| {
                let angle = -TAU * k as f64 / n as f64;
                Complex64::new(angle.cos(), angle.sin())
            })
            .collect();
        Fft1 { n, roots }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Unscaled forward transform X[k] = Σ_j x[j] e^{−2πi jk/n}.
    pub fn forward(&self, buf: &mut [Complex64]) {
        self.transform(buf, false);
    }

    /// Unscaled backward transform X[j] = Σ_k x[k] e^{+2πi jk/n}.
    pub fn backward(&self, buf: &mut [Complex64]) {
        self.transform(buf, true);
    }

    fn transform(&self, buf: &mut [Complex64], inverse: bool) {
        assert_eq!(buf.len(), self.n, "buffer length mismatch");
        if self.n.is_power_of_two() {
            self.radix2(buf, inverse);
        } else {
            self.direct(buf, inverse);
        }
    }

    fn root(&self, idx: usize, inverse: bool) -> Complex64 {
        let w = self.roots[idx % self.n];
        if inverse {
            w.conj()
        } else {
            w
        }
    }

    fn radix2(&self, buf: &mut [Complex64], inverse: bool) {
        let n = self.n;
        if n == 1 {
            return;
        }
        let bits = n.trailing_zeros();
        for j in 0..n {
            let r = j.reverse_bits() >> (usize::BITS - bits);
            if r > j {
                buf.swap(j, r);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..half {
                    let w = self.root(k * stride, inverse);
                    let a = buf[start + k];
                    let b = buf[start + k + half] * w;
                    buf[start + k] = a + b;
                    buf[start + k + half] = a - b;
                }
            }
            len *= 2;
        }
    }

    fn direct(&self, buf: &mut [Complex64], inverse: bool) {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (k, value) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, x) in buf.iter().enumerate() {
                acc += x * self.root((j * k) % n, inverse);
            }
            *value = acc;
        }
        buf.copy_from_slice(&out);
    }
}

/// Integer frequency of DFT bin `idx` for length `n`, in (−n/2, n/2].
pub fn bin_mode(idx: usize, n: usize) -> i64 {
    if 2 * idx <= n {
        idx as i64
    } else {
        idx as i64 - n as i64
    }
}

/// Bin index carrying the integer frequency `mode` for length `n`.
pub fn mode_bin(mode: i64, n: usize) -> usize {
    mode.rem_euclid(n as i64) as usize
}
