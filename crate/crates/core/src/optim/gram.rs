use num_complex::Complex;

use crate::channel::SparseChannelMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

type SparseColumn<T> = Vec<(usize, Complex<T>)>;

/// Hermitian `L × L` matrix of inner products between vectorized channel matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<T> {
    size: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> GramMatrix<T> {
    /// Row-major `size × size` data; Hermitian symmetry is not enforced here.
    pub fn from_rows(size: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != size * size {
            return Err(Error::DimensionMismatch { expected: size * size, actual: data.len() });
        }
        Ok(Self { size, data })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, l: usize) -> Complex<T> {
        self.data[i * self.size + l]
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn trace(&self) -> T {
        (0..self.size).map(|i| self.get(i, i).re).sum()
    }

    /// `C θ`.
    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        self.data.chunks_exact(self.size).map(|row| row.iter().zip(v).map(|(c, x)| c * x).sum()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == T::zero() && z.im == T::zero())
    }
}

fn check_grids<T: Real>(channels: &[SparseChannelMatrix<T>]) -> Result<()> {
    if let Some(first) = channels.first() {
        if channels.iter().any(|h| h.grid() != first.grid()) {
            return Err(Error::GridMismatch);
        }
    }
    Ok(())
}

/// Conjugated inner product of two sorted sparse vectors, `Σ conj(a)·b`.
fn sparse_dot<T: Real>(a: &[(usize, Complex<T>)], b: &[(usize, Complex<T>)]) -> Complex<T> {
    let (mut i, mut j) = (0, 0);
    let mut acc = Complex::new(T::zero(), T::zero());
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc = acc + a[i].1.conj() * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

fn assemble<T: Real>(size: usize, mut entry: impl FnMut(usize, usize) -> Complex<T>) -> GramMatrix<T> {
    let mut data = vec![Complex::new(T::zero(), T::zero()); size * size];
    for i in 0..size {
        data[i * size + i] = Complex::new(entry(i, i).re, T::zero());
        for l in i + 1..size {
            let c = entry(i, l);
            data[i * size + l] = c;
            data[l * size + i] = c.conj();
        }
    }
    GramMatrix { size, data }
}

/// `C_{iℓ} = MN·⟨g_i, g_ℓ⟩` from the generating columns; every column of a
/// doubly circulant matrix is a permutation of column 0.
pub fn gram_matrix<T: Real>(channels: &[SparseChannelMatrix<T>]) -> Result<GramMatrix<T>> {
    check_grids(channels)?;
    let scale = match channels.first() {
        Some(h) => T::of(h.grid().len() as f64),
        None => T::one(),
    };
    Ok(assemble(channels.len(), |i, l| sparse_dot(channels[i].entries(), channels[l].entries()) * scale))
}

/// Same Gram matrix accumulated column by column over all `MN` columns.
pub fn gram_matrix_full<T: Real>(channels: &[SparseChannelMatrix<T>]) -> Result<GramMatrix<T>> {
    check_grids(channels)?;
    let len = channels.first().map_or(0, |h| h.grid().len());
    let columns: Vec<Vec<SparseColumn<T>>> = channels.iter().map(|h| (0..len).map(|c| h.column(c)).collect()).collect();
    Ok(assemble(channels.len(), |i, l| (0..len).map(|c| sparse_dot(&columns[i][c], &columns[l][c])).sum()))
}
