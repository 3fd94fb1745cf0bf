//! Reproducible letter streams.
//!
//! Trajectory `index` under `seed` reads ChaCha8 stream `2 * index` one word
//! per block; each accepted word yields `K` base-`n` digits, where `n` is the
//! alphabet size and `n^K <= 2^52`, so fewer than one word in 4096 is
//! rejected. A rejected block word is replaced by
//! attempts read at fixed positions of stream `2 * index + 1`, so block `b`
//! and therefore letter `i` can be computed without generating the prefix.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const MAX_ATTEMPTS: u128 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Blocking {
    n: u64,
    digits: u32,
    modulus: u64,
    /// Largest multiple of `modulus` not above `2^64`.
    limit: u128,
}

impl Blocking {
    fn new(n: u64) -> Self {
        assert!(n >= 2, "alphabet needs at least two letters");
        let mut digits = 0;
        let mut modulus: u64 = 1;
        while modulus.checked_mul(n).is_some_and(|m| m <= 1 << 52) {
            modulus *= n;
            digits += 1;
        }
        let limit = ((1u128 << 64) / u128::from(modulus)) * u128::from(modulus);
        Blocking { n, digits, modulus, limit }
    }

    fn accept(&self, word: u64) -> Option<u64> {
        (u128::from(word) < self.limit).then_some(word % self.modulus)
    }
}

/// Maps a letter index `0..2g` to a signed generator: `+1, -1, +2, -2, ...`.
#[inline]
pub fn letter_of_index(k: u64) -> i32 {
    let g = (k / 2 + 1) as i32;
    if k.is_multiple_of(2) {
        g
    } else {
        -g
    }
}

/// An addressable stream of uniform letters over `generators` generators.
#[derive(Clone, Debug)]
pub struct Trajectory {
    seed: u64,
    index: u64,
    generators: usize,
    steps: u64,
    blocking: Blocking,
}

impl Trajectory {
    pub fn new(seed: u64, index: u64, generators: usize, steps: u64) -> Self {
        assert!(index < 1 << 63, "trajectory index out of range");
        Trajectory { seed, index, generators, steps, blocking: Blocking::new(2 * generators as u64) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn len(&self) -> u64 {
        self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps == 0
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn fallback(&self, block: u64) -> u64 {
        let mut rng = self.rng(2 * self.index + 1);
        for attempt in 0..MAX_ATTEMPTS {
            rng.set_word_pos(2 * (u128::from(block) * MAX_ATTEMPTS + attempt));
            if let Some(v) = self.blocking.accept(rng.next_u64()) {
                return v;
            }
        }
        panic!("rejection sampling failed {MAX_ATTEMPTS} times in a row");
    }

    fn block_from_word(&self, block: u64, word: u64) -> u64 {
        self.blocking.accept(word).unwrap_or_else(|| self.fallback(block))
    }

    /// The letter at step `i` (0-based), without generating earlier letters.
    pub fn letter_at(&self, i: u64) -> i32 {
        assert!(i < self.steps, "step {i} beyond trajectory of length {}", self.steps);
        let k = u64::from(self.blocking.digits);
        let block = i / k;
        let mut rng = self.rng(2 * self.index);
        rng.set_word_pos(2 * u128::from(block));
        let v = self.block_from_word(block, rng.next_u64());
        let digit = (v / self.blocking.n.pow((i % k) as u32)) % self.blocking.n;
        letter_of_index(digit)
    }

    pub fn letters(&self) -> Letters<'_> {
        Letters {
            traj: self,
            rng: self.rng(2 * self.index),
            block: 0,
            buf: [0; 64],
            // Empty buffer: the first letter triggers a block read.
            next_in_block: self.blocking.digits as usize,
            produced: 0,
        }
    }
}

/// Writes the base-`N` digits of `v`, least significant first.
#[inline]
fn digits_const<const N: u64>(mut v: u64, out: &mut [u8]) {
    for slot in out {
        *slot = (v % N) as u8;
        v /= N;
    }
}

fn decode_block(mut v: u64, n: u64, out: &mut [u8]) {
    match n {
        2 => digits_const::<2>(v, out),
        4 => digits_const::<4>(v, out),
        6 => digits_const::<6>(v, out),
        8 => digits_const::<8>(v, out),
        10 => digits_const::<10>(v, out),
        _ => {
            for slot in out {
                *slot = (v % n) as u8;
                v /= n;
            }
        }
    }
}

/// Sequential letters of a [`Trajectory`].
pub struct Letters<'a> {
    traj: &'a Trajectory,
    rng: ChaCha8Rng,
    block: u64,
    buf: [u8; 64],
    next_in_block: usize,
    produced: u64,
}

impl Iterator for Letters<'_> {
    type Item = i32;

    #[inline]
    fn next(&mut self) -> Option<i32> {
        if self.produced == self.traj.steps {
            return None;
        }
        let k = self.traj.blocking.digits as usize;
        if self.next_in_block == k {
            let word = self.rng.next_u64();
            let v = self.traj.block_from_word(self.block, word);
            decode_block(v, self.traj.blocking.n, &mut self.buf[..k]);
            self.block += 1;
            self.next_in_block = 0;
        }
        let digit = self.buf[self.next_in_block];
        self.next_in_block += 1;
        self.produced += 1;
        Some(letter_of_index(u64::from(digit)))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.traj.steps - self.produced) as usize;
        (left, Some(left))
    }

    fn fold<B, F: FnMut(B, i32) -> B>(mut self, init: B, mut f: F) -> B {
        let mut acc = Some(init);
        let left = self.traj.steps - self.produced;
        self.feed(left, |l| acc = Some(f(acc.take().expect("accumulator"), l)));
        acc.expect("accumulator")
    }
}

impl Letters<'_> {
    /// Passes the next `count` letters to `f`, a block at a time. This is
    /// the hot loop of every simulation.
    pub fn feed(&mut self, count: u64, mut f: impl FnMut(i32)) {
        assert!(count <= self.traj.steps - self.produced, "feeding past the end of the trajectory");
        let k = self.traj.blocking.digits as usize;
        let mut left = count;
        while self.next_in_block < k && left > 0 {
            f(letter_of_index(u64::from(self.buf[self.next_in_block])));
            self.next_in_block += 1;
            left -= 1;
        }
        while left > 0 {
            let word = self.rng.next_u64();
            let v = self.traj.block_from_word(self.block, word);
            decode_block(v, self.traj.blocking.n, &mut self.buf[..k]);
            self.block += 1;
            let take = (k as u64).min(left) as usize;
            for &digit in &self.buf[..take] {
                f(letter_of_index(u64::from(digit)));
            }
            self.next_in_block = take;
            left -= take as u64;
        }
        self.produced += count;
    }
}

impl ExactSizeIterator for Letters<'_> {}
