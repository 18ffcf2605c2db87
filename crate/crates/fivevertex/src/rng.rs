//! Seeded deterministic random rationals for the verification suites.
//!
//! The generator is SplitMix64 (Steele, Lea, Flood 2014): from state `s`,
//! each step does `s += 0x9E3779B97F4A7C15` and mixes the result with two
//! xor-shift-multiply rounds. Numerators are drawn uniformly from
//! `[-9, 9] \ {0}` and denominators from `[1, 9]` by taking the next
//! output modulo the range size, then rejection-resampled until the
//! caller's preconditions hold. A seed therefore fully determines every
//! draw, and the scheme is simple enough to reproduce in any language.

use num_traits::{One, Zero};

use crate::exact::{rat, Rational};

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Derives an independent stream; used to give each verification case
    /// its own generator so cases can run in any order.
    pub fn fork(&mut self, tag: u64) -> SplitMix64 {
        SplitMix64::new(self.next_u64() ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    /// Uniform value in `0..bound` (`bound > 0`); modulo bias is accepted
    /// for the sake of cross-implementation simplicity.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Random rational with numerator in `[-9, 9] \ {0}` and denominator
    /// in `[1, 9]`.
    pub fn rational(&mut self) -> Rational {
        let n = self.below(18) as i64;
        let numer = if n < 9 { n - 9 } else { n - 8 };
        let denom = self.below(9) as i64 + 1;
        rat(numer, denom)
    }

    /// Random nonzero rational, additionally avoiding `+1` and `-1` when
    /// `avoid_unit` is set.
    pub fn rational_where(&mut self, avoid_unit: bool) -> Rational {
        loop {
            let v = self.rational();
            if v.is_zero() {
                continue;
            }
            if avoid_unit && (v.is_one() || v == -Rational::one()) {
                continue;
            }
            return v;
        }
    }

    /// `count` nonzero rationals with pairwise distinct squares, avoiding
    /// `0` and optionally `+/-1`.
    pub fn distinct_square_rationals(&mut self, count: usize, avoid_unit: bool) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        while out.len() < count {
            let v = self.rational_where(avoid_unit);
            let sq = &v * &v;
            if out.iter().any(|w| w * w == sq) {
                continue;
            }
            out.push(v);
        }
        out
    }
}
