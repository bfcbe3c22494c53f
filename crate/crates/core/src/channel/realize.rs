//! Per-element channel realizations and their text fixture format.
//!
//! ```text
//! ris-otfs-channel v1
//! grid <M> <N> <delta_f>
//! element <i> <tap count>
//! tap <gain re> <gain im> <delay s> <doppler Hz>
//! ...
//! ```
//!
//! Floats use Rust's shortest round-trip formatting, so a parsed fixture
//! reproduces the written channel bit for bit. Grid indices are recomputed on load.

use std::fmt::Write as _;

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::matrix::{build_channel_matrix, SparseChannelMatrix};
use super::profile::{sample_doppler, sample_link_paths, LinkProfile};
use super::tap::{cascade_links, CascadedTap, PathTap};
use crate::dd::DdGrid;
use crate::error::{Error, Result};
use crate::scalar::Real;

const HEADER: &str = "ris-otfs-channel v1";

/// Whether path Dopplers are redrawn for every RIS element or shared by all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DopplerSharing {
    #[default]
    PerElement,
    Shared,
}

/// BS-RIS and RIS-MT link statistics for an `L`-element surface.
///
/// Every element sees the same delays on each link; gains are drawn
/// independently per element.
#[derive(Debug, Clone, PartialEq)]
pub struct RisLinkModel {
    pub bs_ris: LinkProfile,
    pub ris_mt: LinkProfile,
    pub sharing: DopplerSharing,
}

impl RisLinkModel {
    pub fn new(bs_ris: LinkProfile, ris_mt: LinkProfile, sharing: DopplerSharing) -> Self {
        Self { bs_ris, ris_mt, sharing }
    }

    /// Cascaded delay index of the longest path.
    pub fn max_cascaded_delay(&self) -> usize {
        self.bs_ris.max_delay() + self.ris_mt.max_delay()
    }

    pub fn sample<T: Real, R: Rng + ?Sized>(
        &self,
        elements: usize,
        grid: &DdGrid,
        rng: &mut R,
    ) -> Result<CascadedChannel<T>> {
        let shared = match self.sharing {
            DopplerSharing::PerElement => None,
            DopplerSharing::Shared => Some((draw_dopplers(&self.bs_ris, rng), draw_dopplers(&self.ris_mt, rng))),
        };
        let mut taps = Vec::with_capacity(elements);
        for _ in 0..elements {
            let mut u: Vec<PathTap<T>> = sample_link_paths(&self.bs_ris, grid, rng);
            let mut g: Vec<PathTap<T>> = sample_link_paths(&self.ris_mt, grid, rng);
            if let Some((du, dg)) = &shared {
                u.iter_mut().zip(du).for_each(|(t, &d)| t.doppler = d);
                g.iter_mut().zip(dg).for_each(|(t, &d)| t.doppler = d);
            }
            taps.push(cascade_links(&u, &g, grid)?);
        }
        Ok(CascadedChannel { grid: *grid, elements: taps })
    }
}

fn draw_dopplers<R: Rng + ?Sized>(profile: &LinkProfile, rng: &mut R) -> Vec<f64> {
    (0..profile.path_count()).map(|_| sample_doppler(profile.doppler(), rng)).collect()
}

/// Cascaded taps of every RIS element.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadedChannel<T> {
    pub grid: DdGrid,
    pub elements: Vec<Vec<CascadedTap<T>>>,
}

impl<T: Real> CascadedChannel<T> {
    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    /// `H_i` for every element.
    pub fn matrices(&self, n_prime_max: usize) -> Result<Vec<SparseChannelMatrix<T>>> {
        self.elements.iter().map(|taps| build_channel_matrix(taps, &self.grid, n_prime_max)).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let g = &self.grid;
        writeln!(s, "{HEADER}").unwrap();
        writeln!(s, "grid {} {} {:e}", g.m(), g.n(), g.subcarrier_spacing()).unwrap();
        for (i, taps) in self.elements.iter().enumerate() {
            writeln!(s, "element {i} {}", taps.len()).unwrap();
            for t in taps {
                writeln!(s, "tap {:e} {:e} {:e} {:e}", t.gain.re, t.gain.im, t.delay, t.doppler).unwrap();
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            Some((_, l)) if l.trim() == HEADER => {}
            Some((i, l)) => return Err(err(i + 1, format!("bad header `{l}`"))),
            None => return Err(err(0, "empty input".into())),
        }
        fn fields<'a, F: std::str::FromStr>(
            line: usize,
            rest: impl Iterator<Item = &'a str>,
            count: usize,
        ) -> Result<Vec<F>> {
            let v: Vec<&str> = rest.collect();
            if v.len() != count {
                return Err(Error::Parse { line, message: format!("expected {count} fields, got {}", v.len()) });
            }
            v.iter()
                .map(|f| f.parse::<F>().map_err(|_| Error::Parse { line, message: format!("bad number `{f}`") }))
                .collect()
        }
        let grid = match lines.next() {
            Some((i, l)) => {
                let mut it = l.split_whitespace();
                if it.next() != Some("grid") {
                    return Err(err(i + 1, "expected `grid`".into()));
                }
                let v: Vec<f64> = fields(i + 1, it, 3)?;
                DdGrid::new(v[0] as usize, v[1] as usize, v[2])?
            }
            None => return Err(err(0, "missing grid line".into())),
        };
        let mut elements: Vec<Vec<CascadedTap<T>>> = Vec::new();
        let mut expected = 0usize;
        for (i, l) in lines {
            let mut it = l.split_whitespace();
            match it.next() {
                Some("element") => {
                    if elements.last().is_some_and(|e| e.len() != expected) {
                        return Err(err(i + 1, "previous element has the wrong tap count".into()));
                    }
                    let v: Vec<usize> = fields(i + 1, it, 2)?;
                    if v[0] != elements.len() {
                        return Err(err(i + 1, format!("element {} out of order", v[0])));
                    }
                    expected = v[1];
                    elements.push(Vec::with_capacity(expected));
                }
                Some("tap") => {
                    let v: Vec<T> = fields(i + 1, it.clone(), 4)?;
                    let w: Vec<f64> = fields(i + 1, it, 4)?;
                    let current = elements.last_mut().ok_or_else(|| err(i + 1, "tap before element".into()))?;
                    current.push(CascadedTap::new(Complex::new(v[0], v[1]), w[2], w[3], &grid)?);
                }
                other => return Err(err(i + 1, format!("unexpected record {other:?}"))),
            }
        }
        if elements.last().is_some_and(|e| e.len() != expected) {
            return Err(err(text.lines().count(), "last element has the wrong tap count".into()));
        }
        Ok(Self { grid, elements })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::DopplerModel;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn model(sharing: DopplerSharing) -> RisLinkModel {
        let bs = LinkProfile::equal(vec![0, 1, 2, 3], DopplerModel::None).unwrap();
        let mt = LinkProfile::equal(vec![0, 2, 4, 6], DopplerModel::UniformCosine { nu_max: 1800.0 }).unwrap();
        RisLinkModel::new(bs, mt, sharing)
    }

    #[test]
    fn tap_counts_and_delay_structure() {
        let grid = DdGrid::new(32, 16, 15e3).unwrap();
        let ch: CascadedChannel<f64> =
            model(DopplerSharing::PerElement).sample(5, &grid, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(ch.element_count(), 5);
        for taps in &ch.elements {
            assert_eq!(taps.len(), 16);
            let ls: Vec<usize> = taps.iter().map(|t| t.l).collect();
            assert_eq!(ls, ch.elements[0].iter().map(|t| t.l).collect::<Vec<_>>());
        }
        assert_ne!(ch.elements[0][0].doppler, ch.elements[1][0].doppler);
    }

    #[test]
    fn shared_doppler() {
        let grid = DdGrid::new(32, 16, 15e3).unwrap();
        let ch: CascadedChannel<f64> =
            model(DopplerSharing::Shared).sample(4, &grid, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        for taps in &ch.elements[1..] {
            for (a, b) in taps.iter().zip(&ch.elements[0]) {
                assert_eq!(a.doppler, b.doppler);
                assert_ne!(a.gain, b.gain);
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let grid = DdGrid::new(32, 16, 15e3).unwrap();
        let ch: CascadedChannel<f64> =
            model(DopplerSharing::PerElement).sample(3, &grid, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let text = ch.to_text();
        assert_eq!(CascadedChannel::<f64>::from_text(&text).unwrap(), ch);
    }

    #[test]
    fn text_errors() {
        assert!(CascadedChannel::<f64>::from_text("").is_err());
        assert!(CascadedChannel::<f64>::from_text("nope\n").is_err());
        let bad = "ris-otfs-channel v1\ngrid 4 4 1e0\nelement 0 2\ntap 1e0 0e0 0e0 0e0\n";
        assert!(CascadedChannel::<f64>::from_text(bad).is_err());
        let bad = "ris-otfs-channel v1\ngrid 4 4 1e0\ntap 1e0 0e0 0e0 0e0\n";
        assert!(CascadedChannel::<f64>::from_text(bad).is_err());
    }
}
