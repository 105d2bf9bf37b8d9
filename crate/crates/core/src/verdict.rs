//! Scan modes, verdicts and the deterministic sampling shared by every law checker.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::Error;

/// How a law is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exhaustive,
    Random { seed: u64, samples: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => f.write_str("exhaustive"),
            Mode::Random { seed, samples } => write!(f, "random(seed={seed},k={samples})"),
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Named inputs and observed values of a failing instance, in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witness(pub Vec<(String, String)>);

impl Witness {
    pub fn new() -> Self {
        Witness(Vec::new())
    }

    pub fn with(mut self, key: impl Into<String>, value: impl fmt::Display) -> Self {
        self.0.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// Outcome of one law check: how many instances were examined and the first failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub checked: u64,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass(checked: u64) -> Self {
        Verdict {
            checked,
            witness: None,
        }
    }

    pub fn fail(checked: u64, witness: Witness) -> Self {
        Verdict {
            checked,
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    /// Combines sequential sub-checks, keeping the first failure.
    pub fn and(self, other: Verdict) -> Verdict {
        Verdict {
            checked: self.checked + other.checked,
            witness: self.witness.or(other.witness),
        }
    }
}

/// 64-bit FNV-1a.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Seed of the stream belonging to one check, so checks can run in any order.
pub fn derive_seed(master: u64, check_id: &str) -> u64 {
    let mut bytes = master.to_le_bytes().to_vec();
    bytes.extend_from_slice(check_id.as_bytes());
    fnv1a(&bytes)
}

/// Generator for sample number `index` of a seeded scan.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Lowest index in `0..count` for which `probe` reports a failure.
///
/// Runs in parallel when the `parallel` feature is on; the answer is the same either way.
pub fn first_failure<T, F>(count: u64, probe: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().find_map_first(probe)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).find_map(probe)
    }
}

/// `(0..count).map(f)`, in parallel when the `parallel` feature is on, in index order.
pub fn par_map<T, F>(count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

/// Scans `0..count` and wraps the first failure into a verdict.
pub fn scan<F>(count: u64, probe: F) -> Verdict
where
    F: Fn(u64) -> Option<Witness> + Sync + Send,
{
    match first_failure(count, probe) {
        Some(w) => Verdict::fail(count, w),
        None => Verdict::pass(count),
    }
}

/// Why a sequential check stopped early.
#[derive(Debug)]
pub enum Stop {
    Fail(Witness),
    Error(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Error(e)
    }
}

/// Instance counter handed to the body of [`tally`].
#[derive(Debug, Default)]
pub struct Counter(u64);

impl Counter {
    /// Counts one instance and stops the scan with `witness` unless `ok`.
    pub fn ensure(&mut self, ok: bool, witness: impl FnOnce() -> Witness) -> Result<(), Stop> {
        self.0 += 1;
        if ok {
            Ok(())
        } else {
            Err(Stop::Fail(witness()))
        }
    }

    pub fn count(&self) -> u64 {
        self.0
    }
}

/// Sequential counterpart of [`scan`] for nested loops over configurations.
pub fn tally(body: impl FnOnce(&mut Counter) -> Result<(), Stop>) -> crate::Result<Verdict> {
    let mut counter = Counter::default();
    match body(&mut counter) {
        Ok(()) => Ok(Verdict::pass(counter.0)),
        Err(Stop::Fail(w)) => Ok(Verdict::fail(counter.0, w)),
        Err(Stop::Error(e)) => Err(e),
    }
}

/// Decodes `index` as a mixed-radix tuple of `arity` digits in base `m`, most significant first.
pub fn decode(index: u64, m: usize, arity: usize) -> Vec<usize> {
    let mut digits = vec![0; arity];
    let mut rest = index;
    for d in digits.iter_mut().rev() {
        *d = (rest % m as u64) as usize;
        rest /= m as u64;
    }
    digits
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a(b""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv1a(b"a"), 0xaf63_dc4c_8601_ec8c);
        assert_ne!(derive_seed(7, "x"), derive_seed(7, "y"));
        assert_ne!(derive_seed(7, "x"), derive_seed(8, "x"));
    }

    #[test]
    fn sample_streams_are_reproducible_and_distinct() {
        let a: u64 = sample_rng(3, 5).gen();
        let b: u64 = sample_rng(3, 5).gen();
        let c: u64 = sample_rng(3, 6).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn first_failure_is_lowest_index() {
        let hit = first_failure(10_000, |i| (i % 997 == 996 || i == 4321).then_some(i));
        assert_eq!(hit, Some(996));
        assert_eq!(first_failure(100, |_| None::<u64>), None);
    }

    #[test]
    fn decoding() {
        assert_eq!(decode(0, 4, 3), vec![0, 0, 0]);
        assert_eq!(decode(27, 4, 3), vec![1, 2, 3]);
        assert_eq!(decode(63, 4, 3), vec![3, 3, 3]);
    }

    #[test]
    fn witness_serializes_in_order() {
        let w = Witness::new().with("x", "0,1").with("a", 3);
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"x":"0,1","a":"3"}"#);
        assert_eq!(w.to_string(), "x=0,1 a=3");
        assert_eq!(w.get("a"), Some("3"));
    }
}
