//! Counter-based deterministic random numbers.
//!
//! The generator is fully specified by its mixing constants so any
//! implementation, in any language, reproduces the same streams:
//!
//! * output `i` of the stream seeded with `s` is `mix64(s + (i+1)·GOLDEN)`
//!   with all arithmetic modulo 2⁶⁴;
//! * `GOLDEN = 0x9E3779B97F4A7C15`;
//! * `mix64(z)`: `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//!   z *= 0x94D049BB133111EB; z ^= z >> 31`.
//!
//! Uniform doubles take the top 53 bits of one output; Gaussian values come
//! from the Box-Muller transform applied to two such uniforms. Stream seeds
//! for (law, trial) pairs derive from the master seed by two chained `mix64`
//! applications (see [`derive_seed`]), which keeps results independent of
//! evaluation order and thread count.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX_1: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX_2: u64 = 0x94D0_49BB_1331_11EB;
/// Salt for the second derivation stage; any odd constant works, fixed here
/// for cross-implementation reproducibility.
const DERIVE_SALT: u64 = 0xD1B5_4A32_D192_ED03;

/// The 64-bit finalizer shared by the stream and the seed derivation.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(MIX_1);
    z = (z ^ (z >> 27)).wrapping_mul(MIX_2);
    z ^ (z >> 31)
}

/// Stream seed for one (law, trial) cell under a master seed.
pub fn derive_seed(master: u64, law_index: u64, trial: u64) -> u64 {
    mix64(mix64(master ^ law_index.wrapping_mul(GOLDEN)) ^ trial.wrapping_mul(DERIVE_SALT))
}

/// Counter-based generator over the splitmix stream of a fixed seed.
#[derive(Debug, Clone)]
pub struct CounterRng {
    seed: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        mix64(self.seed.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_unit()
    }

    /// Log-uniform in [lo, hi], lo > 0.
    pub fn next_log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo * (self.next_unit() * (hi / lo).ln()).exp()
    }

    /// Index in 0..n. The modulo bias is negligible for the small n used
    /// here and keeps the stream consumption at exactly one output.
    pub fn next_index(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn next_bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// Standard Gaussian pair by Box-Muller from two 53-bit uniforms.
    pub fn next_gaussian_pair(&mut self) -> (f64, f64) {
        let u1 = self.next_unit();
        let u2 = self.next_unit();
        let r = (-2.0 * (1.0 - u1).ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        (r * theta.cos(), r * theta.sin())
    }
}
