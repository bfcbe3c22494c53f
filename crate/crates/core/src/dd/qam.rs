//! Square Gray-coded QAM.
//!
//! Label layout: a point's index equals its bit label read MSB first, with the
//! in-phase bits ahead of the quadrature bits. Along each axis, level `i` (of
//! `s = √order`) sits at amplitude `s − 1 − 2i` and carries the Gray code
//! `i ^ (i >> 1)`, so bit 0 selects the positive half-plane. For 4-QAM:
//!
//! | label | point          |
//! |-------|----------------|
//! | 00    | `(+1 + j)/√2`  |
//! | 01    | `(+1 − j)/√2`  |
//! | 10    | `(−1 + j)/√2`  |
//! | 11    | `(−1 − j)/√2`  |
//!
//! Points are scaled to unit average energy. Hard decisions pick the nearest
//! point; exact ties go to the lowest index.

use num_complex::Complex;

use super::{DdFrame, DdGrid};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct QamConstellation<T> {
    order: usize,
    bits_per_axis: usize,
    points: Vec<Complex<T>>,
}

impl<T: Real> QamConstellation<T> {
    pub fn new(order: usize) -> Result<Self> {
        let bits = order.trailing_zeros() as usize;
        if order < 4 || !order.is_power_of_two() || !bits.is_multiple_of(2) {
            return Err(Error::UnsupportedOrder(order));
        }
        let bits_per_axis = bits / 2;
        let side = 1usize << bits_per_axis;
        let scale = (2.0 * ((side * side) as f64 - 1.0) / 3.0).sqrt().recip();
        let level_of = |gray: usize| {
            // inverse Gray code
            let mut i = gray;
            let mut shift = gray >> 1;
            while shift != 0 {
                i ^= shift;
                shift >>= 1;
            }
            (side as f64 - 1.0 - 2.0 * i as f64) * scale
        };
        let mask = side - 1;
        let points = (0..order)
            .map(|label| Complex::new(T::of(level_of(label >> bits_per_axis)), T::of(level_of(label & mask))))
            .collect();
        Ok(Self { order, bits_per_axis, points })
    }

    pub fn qpsk() -> Self {
        Self::new(4).expect("4-QAM is supported")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits_per_symbol(&self) -> usize {
        2 * self.bits_per_axis
    }

    pub fn points(&self) -> &[Complex<T>] {
        &self.points
    }

    /// Bit label of point `index`, MSB first.
    pub fn label(&self, index: usize) -> Vec<bool> {
        let b = self.bits_per_symbol();
        (0..b).map(|j| (index >> (b - 1 - j)) & 1 == 1).collect()
    }

    pub fn map_bits(&self, bits: &[bool]) -> Complex<T> {
        let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        self.points[index]
    }

    /// Nearest point index; the strict comparison keeps the lowest index on ties.
    pub fn decide(&self, z: Complex<T>) -> usize {
        let mut best = 0;
        let mut best_d = (z - self.points[0]).norm_sqr();
        for (i, p) in self.points.iter().enumerate().skip(1) {
            let d = (z - p).norm_sqr();
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        best
    }

    /// Maps `MN·log2(order)` bits onto the grid, symbol `j` at `(k, l) = (j / M, j % M)`.
    pub fn modulate(&self, bits: &[bool], grid: DdGrid) -> Result<DdFrame<T>> {
        let b = self.bits_per_symbol();
        let expected = grid.len() * b;
        if bits.len() != expected {
            return Err(Error::BitCount { expected, actual: bits.len() });
        }
        let mut frame = DdFrame::zeros(grid);
        for (j, chunk) in bits.chunks_exact(b).enumerate() {
            frame.set(j / grid.m(), j % grid.m(), self.map_bits(chunk));
        }
        Ok(frame)
    }

    /// Hard-decision demodulation in the same symbol order as [`Self::modulate`].
    pub fn demodulate(&self, frame: &DdFrame<T>) -> Vec<bool> {
        let grid = frame.grid();
        let mut bits = Vec::with_capacity(grid.len() * self.bits_per_symbol());
        for j in 0..grid.len() {
            let idx = self.decide(frame.get(j / grid.m(), j % grid.m()));
            bits.extend(self.label(idx));
        }
        bits
    }
}

pub fn qam_modulate<T: Real>(bits: &[bool], constellation: &QamConstellation<T>, grid: DdGrid) -> Result<DdFrame<T>> {
    constellation.modulate(bits, grid)
}

pub fn qam_demodulate<T: Real>(frame: &DdFrame<T>, constellation: &QamConstellation<T>) -> Vec<bool> {
    constellation.demodulate(frame)
}
