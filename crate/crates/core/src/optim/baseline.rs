use std::collections::BTreeMap;

use num_complex::Complex;
use rand::Rng;

use super::PhaseVector;
use crate::channel::CascadedChannel;
use crate::scalar::{cis, Real};

use std::f64::consts::PI;

/// `(delay bin, Doppler bin mod N)`.
type Bin = (usize, usize);

/// DD bin `(l, k mod N)` whose per-element coefficients carry the most summed
/// energy, with those coefficients. Taps of one element landing in the same bin
/// are summed first; ties go to the smallest `(l, k)`.
pub fn strongest_bin<T: Real>(channel: &CascadedChannel<T>) -> Option<(Bin, Vec<Complex<T>>)> {
    let n = channel.grid.n() as i64;
    let zero = Complex::new(T::zero(), T::zero());
    let mut bins: BTreeMap<Bin, Vec<Complex<T>>> = BTreeMap::new();
    let len = channel.element_count();
    for (i, taps) in channel.elements.iter().enumerate() {
        for t in taps {
            let key = (t.l, t.k.rem_euclid(n) as usize);
            let slot = bins.entry(key).or_insert_with(|| vec![zero; len]);
            slot[i] = slot[i] + t.dd_coefficient();
        }
    }
    let mut best: Option<(Bin, Vec<Complex<T>>, T)> = None;
    for (key, coeffs) in bins {
        let e: T = coeffs.iter().map(|z| z.norm_sqr()).sum();
        if best.as_ref().is_none_or(|(_, _, b)| e > *b) {
            best = Some((key, coeffs, e));
        }
    }
    best.map(|(k, c, _)| (k, c))
}

/// Strongest-cascaded-path baseline: co-phase all elements on the strongest bin,
/// `θ_i = e^{−j·arg c_i}`; elements with no energy there get `θ_i = 1`.
pub fn scp_phases<T: Real>(channel: &CascadedChannel<T>) -> PhaseVector<T> {
    let one = Complex::new(T::one(), T::zero());
    let theta = match strongest_bin(channel) {
        Some((_, coeffs)) => coeffs
            .iter()
            .map(|c| {
                let r = c.norm();
                if r > T::zero() {
                    c.conj() / r
                } else {
                    one
                }
            })
            .collect(),
        None => vec![one; channel.element_count()],
    };
    PhaseVector::from_raw(theta)
}

/// `θ_i = e^{jφ_i}`, `φ_i ~ U[0, 2π)` i.i.d.
pub fn random_phases<T: Real, R: Rng + ?Sized>(len: usize, rng: &mut R) -> PhaseVector<T> {
    PhaseVector::from_raw((0..len).map(|_| cis(rng.random::<f64>() * 2.0 * PI)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::CascadedTap;
    use crate::dd::DdGrid;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grid() -> DdGrid {
        DdGrid::new(8, 8, 1.0).unwrap()
    }

    fn tap(gain: Complex<f64>, l: usize, k: f64) -> CascadedTap<f64> {
        let g = grid();
        CascadedTap::new(gain, l as f64 * g.delay_resolution(), k * g.doppler_resolution(), &g).unwrap()
    }

    #[test]
    fn picks_dominant_bin() {
        let ch = CascadedChannel {
            grid: grid(),
            elements: vec![
                vec![tap(Complex::new(0.8, 0.1), 1, 2.0), tap(Complex::new(0.3, 0.0), 0, 0.0)],
                vec![tap(Complex::new(-0.5, 0.6), 1, 2.0), tap(Complex::new(0.0, 0.4), 0, 0.0)],
            ],
        };
        let (bin, coeffs) = strongest_bin(&ch).unwrap();
        assert_eq!(bin, (1, 2));
        let theta = scp_phases(&ch);
        let aligned: Vec<Complex<f64>> = coeffs.iter().zip(theta.as_slice()).map(|(c, t)| c * t).collect();
        for z in aligned {
            assert!(z.im.abs() < 1e-12 && z.re > 0.0);
        }
    }

    #[test]
    fn coherent_channel_gives_common_phase() {
        let g = Complex::from_polar(0.7, 0.9);
        let ch = CascadedChannel { grid: grid(), elements: vec![vec![tap(g, 0, 0.0)]; 4] };
        let theta = scp_phases(&ch);
        for t in theta.as_slice() {
            assert!((t - theta.as_slice()[0]).norm() < 1e-15);
        }
    }

    #[test]
    fn silent_element_gets_unit_phase() {
        let ch = CascadedChannel {
            grid: grid(),
            elements: vec![vec![tap(Complex::new(0.0, 1.0), 2, 0.0)], vec![tap(Complex::new(0.0, 1.0), 3, 0.0)]],
        };
        let theta = scp_phases(&ch);
        assert_eq!(theta.as_slice()[1], Complex::new(1.0, 0.0));
    }

    #[test]
    fn random_is_unit_and_seeded() {
        let a: PhaseVector<f64> = random_phases(64, &mut ChaCha8Rng::seed_from_u64(5));
        let b: PhaseVector<f64> = random_phases(64, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
        assert!(PhaseVector::new(a.as_slice().to_vec()).is_ok());
    }
}
