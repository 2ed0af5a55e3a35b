//! Seeded counter-based generator used everywhere randomness is needed.
//!
//! Each draw hashes `(seed, counter)` through the splitmix64 finalizer, so a
//! stream is reproducible across platforms and independent of call order
//! history. Not cryptographic.

#[derive(Clone, Debug)]
pub struct SplitMix {
    seed: u64,
    counter: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix { seed, counter: 0 }
    }

    /// Independent substream, for parallel or per-item use.
    pub fn fork(&self, stream: u64) -> Self {
        SplitMix {
            seed: mix(self.seed ^ mix(stream).wrapping_add(0x9e3779b97f4a7c15)),
            counter: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let x = self
            .seed
            .wrapping_add(self.counter.wrapping_mul(0x9e3779b97f4a7c15));
        self.counter += 1;
        mix(x)
    }

    /// Uniform in `0..n`. Uses rejection to avoid modulo bias.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Uniform f64 in [0, 1).
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let mut a = SplitMix::new(42);
        let mut b = SplitMix::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn below_in_range() {
        let mut r = SplitMix::new(1);
        for _ in 0..1000 {
            assert!(r.below(7) < 7);
        }
    }
}
