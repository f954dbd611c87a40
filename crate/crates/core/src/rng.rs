//! Seeded random sub-streams.
//!
//! A run owns one master seed. Each consumer gets its own ChaCha stream
//! derived from it, so the draws of one consumer never depend on how many
//! draws another made:
//!
//! | stream              | id            | used for                              |
//! |---------------------|---------------|---------------------------------------|
//! | `Init`              | 1             | initial positions and velocities      |
//! | `Leader`            | 2             | MOPSO-CD leader picks                 |
//! | `Rcs`               | 3             | Rayleigh cross-section table          |
//! | `Random`            | 4             | random-deployment baseline            |
//! | `Particle(i)`       | 2^32 + i      | `r1`, `r2` vectors of particle `i`    |

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Init,
    Leader,
    Rcs,
    Random,
    Particle(u32),
}

impl Stream {
    pub fn id(self) -> u64 {
        match self {
            Stream::Init => 1,
            Stream::Leader => 2,
            Stream::Rcs => 3,
            Stream::Random => 4,
            Stream::Particle(i) => (1u64 << 32) + u64::from(i),
        }
    }
}

pub fn stream(seed: u64, which: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(which.id());
    rng
}
