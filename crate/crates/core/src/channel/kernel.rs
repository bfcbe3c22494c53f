use num_complex::Complex;

use crate::scalar::Real;

use std::f64::consts::PI;

/// Doppler spreading weight of offset `n'` for fractional Doppler `k'`:
///
/// `(e^{−j2π(−n'−k')} − 1) / (N e^{−j(2π/N)(−n'−k')} − N)`
///
/// evaluated in the equivalent Dirichlet form
/// `e^{jπ(N−1)(n'+k')/N} · sin(π(n'+k')) / (N sin(π(n'+k')/N))`.
/// For integer Doppler the weight is exactly 1 at `n' ≡ 0 (mod N)` and 0 elsewhere.
pub fn dd_spreading_weight<T: Real>(n_prime: i64, k_frac: f64, n: usize) -> Complex<T> {
    let nn = n as i64;
    if k_frac == 0.0 {
        let one = if n_prime.rem_euclid(nn) == 0 { T::one() } else { T::zero() };
        return Complex::new(one, T::zero());
    }
    let a = n_prime as f64 + k_frac;
    let nf = n as f64;
    let den = nf * (PI * a / nf).sin();
    if den.abs() < 1e-300 {
        // a is a multiple of N: every term of the underlying geometric sum is 1
        return Complex::new(T::one(), T::zero());
    }
    let mag = (PI * a).sin() / den;
    let phase = PI * (nf - 1.0) * a / nf;
    Complex::new(T::of(mag * phase.cos()), T::of(mag * phase.sin()))
}

/// `Σ_{|n'| ≤ N'} |w(n', k')|²`, the share of a tap's energy kept by truncation.
pub fn kernel_energy_captured(k_frac: f64, n: usize, n_prime_max: usize) -> f64 {
    let np = n_prime_max as i64;
    (-np..=np).map(|p| dd_spreading_weight::<f64>(p, k_frac, n).norm_sqr()).sum()
}
