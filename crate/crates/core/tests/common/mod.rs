//! Independent reference implementations used across the integration tests.
//!
//! Nothing here calls the transforms, matrix builders or solvers under test;
//! every oracle is a direct evaluation of its defining sum.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ris_otfs::channel::{CascadedTap, PathTap, SparseChannelMatrix};
use ris_otfs::optim::GramMatrix;
use ris_otfs::DdGrid;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cis(x: f64) -> C {
    C::new(x.cos(), x.sin())
}

pub fn crandn<R: Rng>(rng: &mut R) -> C {
    let a: f64 = rng.sample(rand_distr::StandardNormal);
    let b: f64 = rng.sample(rand_distr::StandardNormal);
    C::new(a, b) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_vec<R: Rng>(len: usize, rng: &mut R) -> Vec<C> {
    (0..len).map(|_| crandn(rng)).collect()
}

pub fn max_abs_diff(a: &[C], b: &[C]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn norm_sqr(a: &[C]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

pub fn dot(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `X[n,m] = (1/√MN) Σ_k Σ_l x[k,l] e^{j2π(nk/N − ml/M)}`, output stored `[n + N·m]`.
pub fn isfft_naive(x: &[C], m: usize, n: usize) -> Vec<C> {
    let scale = 1.0 / ((m * n) as f64).sqrt();
    let mut out = vec![C::new(0.0, 0.0); m * n];
    for nn in 0..n {
        for mm in 0..m {
            let mut acc = C::new(0.0, 0.0);
            for k in 0..n {
                for l in 0..m {
                    let ph = 2.0 * PI * ((nn * k) as f64 / n as f64 - (mm * l) as f64 / m as f64);
                    acc += x[k + n * l] * cis(ph);
                }
            }
            out[nn + n * mm] = acc * scale;
        }
    }
    out
}

/// `z[k,l] = (1/√MN) Σ_n Σ_m Z[n,m] e^{−j2π(nk/N − ml/M)}`.
pub fn sfft_naive(z: &[C], m: usize, n: usize) -> Vec<C> {
    let scale = 1.0 / ((m * n) as f64).sqrt();
    let mut out = vec![C::new(0.0, 0.0); m * n];
    for k in 0..n {
        for l in 0..m {
            let mut acc = C::new(0.0, 0.0);
            for nn in 0..n {
                for mm in 0..m {
                    let ph = -2.0 * PI * ((nn * k) as f64 / n as f64 - (mm * l) as f64 / m as f64);
                    acc += z[nn + n * mm] * cis(ph);
                }
            }
            out[k + n * l] = acc * scale;
        }
    }
    out
}

/// Literal Doppler spreading kernel `(e^{−j2π(−n'−k')} − 1) / (N e^{−j2π(−n'−k')/N} − N)`,
/// with its limit `1` where numerator and denominator both vanish.
pub fn kernel_literal(n_prime: i64, k_frac: f64, n: usize) -> C {
    let b = -(n_prime as f64) - k_frac;
    let num = cis(-2.0 * PI * b) - 1.0;
    let den = cis(-2.0 * PI * b / n as f64) * n as f64 - n as f64;
    if den.norm() < 1e-12 {
        C::new(1.0, 0.0)
    } else {
        num / den
    }
}

/// Direct evaluation of the truncated DD input-output sum for one element:
/// `z[k,l] = Σ_taps Σ_{|n'|≤N'} w(n',k') h e^{−j2πντ} x[[k − k_i + n']_N, [l − l_i]_M]`.
pub fn dd_sum_oracle(taps: &[CascadedTap<f64>], x: &[C], grid: &DdGrid, n_prime_max: usize) -> Vec<C> {
    let (m, n) = (grid.m(), grid.n());
    let mut z = vec![C::new(0.0, 0.0); m * n];
    for k in 0..n {
        for l in 0..m {
            let mut acc = C::new(0.0, 0.0);
            for t in taps {
                let coef = t.gain * cis(-2.0 * PI * t.doppler * t.delay);
                let span = if t.k_frac == 0.0 { 0 } else { n_prime_max as i64 };
                for np in -span..=span {
                    let kk = (k as i64 - t.k + np).rem_euclid(n as i64) as usize;
                    let ll = (l + m - t.l % m) % m;
                    acc += kernel_literal(np, t.k_frac, n) * coef * x[kk + n * ll];
                }
            }
            z[k + n * l] = acc;
        }
    }
    z
}

/// Dense matrix of a linear map given by its action on basis vectors, row-major.
pub fn dense_of(len: usize, apply: impl Fn(&[C]) -> Vec<C>) -> Vec<C> {
    let mut dense = vec![C::new(0.0, 0.0); len * len];
    let mut e = vec![C::new(0.0, 0.0); len];
    for col in 0..len {
        e[col] = C::new(1.0, 0.0);
        let y = apply(&e);
        e[col] = C::new(0.0, 0.0);
        for row in 0..len {
            dense[row * len + col] = y[row];
        }
    }
    dense
}

pub fn matvec(a: &[C], x: &[C]) -> Vec<C> {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| a[i * n + j] * x[j]).sum()).collect()
}

/// `C_{iℓ} = tr(H_i^H H_ℓ)` from dense materializations.
pub fn gram_dense(channels: &[SparseChannelMatrix<f64>]) -> Vec<Vec<C>> {
    let dense: Vec<Vec<C>> = channels.iter().map(|h| h.to_dense()).collect();
    dense.iter().map(|a| dense.iter().map(|b| dot(a, b)).collect()).collect()
}

pub fn quad_form(c: &GramMatrix<f64>, theta: &[C]) -> f64 {
    let l = theta.len();
    let mut acc = C::new(0.0, 0.0);
    for i in 0..l {
        for j in 0..l {
            acc += theta[i].conj() * c.get(i, j) * theta[j];
        }
    }
    acc.re
}

/// Random Hermitian PSD Gram matrix `A^H A` with `A` of shape `rank × l`.
pub fn random_gram<R: Rng>(l: usize, rank: usize, rng: &mut R) -> GramMatrix<f64> {
    let a: Vec<C> = random_vec(rank * l, rng);
    let mut data = vec![C::new(0.0, 0.0); l * l];
    for i in 0..l {
        for j in 0..l {
            data[i * l + j] = (0..rank).map(|r| a[r * l + i].conj() * a[r * l + j]).sum();
        }
    }
    GramMatrix::from_rows(l, data).unwrap()
}

/// Time-domain two-hop channel with ideal pulses and a cyclic prefix.
///
/// A signal is a function from `(symbol n, reference time t)` to the `M`
/// samples of that symbol. Each hop with `(a, τ, ν)` maps `s` to
/// `a e^{j2πν(t − τ)} cshift(s(n, t − τ), τMΔf)`, the delay acting as a
/// cyclic shift inside the symbol. The receiver evaluates symbol `n` at
/// `t = nT` and takes an `M`-point DFT.
/// BS-RIS and RIS-MT paths of one element.
pub type LinkPair = (Vec<PathTap<f64>>, Vec<PathTap<f64>>);

pub struct TwoHopOracle {
    pub grid: DdGrid,
}

type Signal<'a> = Box<dyn Fn(usize, f64) -> Vec<C> + 'a>;

impl TwoHopOracle {
    fn hop<'a>(&'a self, input: Signal<'a>, paths: &'a [PathTap<f64>]) -> Signal<'a> {
        let m = self.grid.m();
        let res = self.grid.delay_resolution();
        Box::new(move |n, t| {
            let mut out = vec![C::new(0.0, 0.0); m];
            for p in paths {
                let l = (p.delay / res).round() as usize;
                assert!((p.delay / res - l as f64).abs() < 1e-9, "oracle needs integer delays");
                let s = input(n, t - p.delay);
                let a = p.gain * cis(2.0 * PI * p.doppler * (t - p.delay));
                for (j, o) in out.iter_mut().enumerate() {
                    *o += a * s[(j + m - l % m) % m];
                }
            }
            out
        })
    }

    fn heisenberg<'a>(&'a self, tf: &'a [C]) -> Signal<'a> {
        let (m, n) = (self.grid.m(), self.grid.n());
        Box::new(move |sym, _t| {
            (0..m)
                .map(|s| (0..m).map(|mm| tf[sym + n * mm] * cis(2.0 * PI * (mm * s) as f64 / m as f64)).sum())
                .collect()
        })
    }

    /// Received DD frame for DD input `x` through `Σ_i θ_i (g_i ∘ u_i)`.
    pub fn run(&self, x: &[C], links: &[LinkPair], theta: &[C]) -> Vec<C> {
        let (m, n) = (self.grid.m(), self.grid.n());
        let t_sym = self.grid.symbol_duration();
        let tf = isfft_naive(x, m, n);
        let mut z_tf = vec![C::new(0.0, 0.0); m * n];
        for ((u, g), w) in links.iter().zip(theta) {
            let rx = self.hop(self.hop(self.heisenberg(&tf), u), g);
            for sym in 0..n {
                let samples = rx(sym, sym as f64 * t_sym);
                for mm in 0..m {
                    let y: C =
                        samples.iter().enumerate().map(|(s, v)| v * cis(-2.0 * PI * (mm * s) as f64 / m as f64)).sum();
                    z_tf[sym + n * mm] += w * y / m as f64;
                }
            }
        }
        sfft_naive(&z_tf, m, n)
    }
}

/// Standard normal upper tail `Q(x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(x / std::f64::consts::SQRT_2)
}

/// Gray-coded QPSK BER over AWGN at `SNR = 1/σ₀²`.
pub fn qpsk_awgn_ber(snr_db: f64) -> f64 {
    q_function(10f64.powf(snr_db / 10.0).sqrt())
}

/// `log10(BER)`-linear interpolation of the SNR at which a decreasing curve crosses `target`.
pub fn snr_at_ber(points: &[(f64, f64)], target: f64) -> Option<f64> {
    points.windows(2).find_map(|w| {
        let ((s0, b0), (s1, b1)) = (w[0], w[1]);
        if b0 >= target && b1 <= target && b0 > 0.0 && b1 > 0.0 {
            let (y0, y1, y) = (b0.log10(), b1.log10(), target.log10());
            Some(if y0 == y1 { s0 } else { s0 + (s1 - s0) * (y - y0) / (y1 - y0) })
        } else {
            None
        }
    })
}
