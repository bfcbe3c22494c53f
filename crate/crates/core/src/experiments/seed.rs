//! Per-trial random streams.
//!
//! Trial `t` of point `p` in scenario `s` draws from
//!
//! ```text
//! ChaCha8Rng::seed_from_u64(master_seed) on stream  s·2^56 + p·2^32 + t
//! ```
//!
//! ChaCha streams are independent keystreams for one key, so adding trials or
//! points never changes the numbers drawn by existing ones. `p` is the index
//! into `elements`.
//!
//! Within a trial stream the channel is drawn from word 0, the random-start
//! draws of policy `j` from word `2^40·(1 + j)` and the frame data (bits, then
//! noise) from word `2^44`. Enabling or disabling a policy therefore never
//! changes the channel, the other policies or the data.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{Policy, Scenario};

pub fn stream_id(scenario: Scenario, point: usize, trial: usize) -> u64 {
    assert!(point < 1 << 24 && trial < 1 << 32, "point or trial index out of range");
    (scenario.id() << 56) | ((point as u64) << 32) | trial as u64
}

pub fn trial_rng(master_seed: u64, scenario: Scenario, point: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream_id(scenario, point, trial));
    rng
}

/// Independent parts of one trial's stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Substream {
    Channel,
    Policy(Policy),
    Data,
}

impl Substream {
    fn word_pos(self) -> u128 {
        match self {
            Self::Channel => 0,
            Self::Policy(p) => {
                let j = Policy::ALL.iter().position(|&q| q == p).expect("listed policy") as u128;
                (1 + j) << 40
            }
            Self::Data => 1 << 44,
        }
    }
}

pub fn substream_rng(master_seed: u64, scenario: Scenario, point: usize, trial: usize, part: Substream) -> ChaCha8Rng {
    let mut rng = trial_rng(master_seed, scenario, point, trial);
    rng.set_word_pos(part.word_pos());
    rng
}
