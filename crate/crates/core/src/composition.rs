//! Palindromic weight compositions `λ_1, ..., λ_n` with `λ_i = λ_{n+1-i}`
//! summing to `D = 2d`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Builds from explicit parts, checking symmetry and an even positive length.
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        let n = parts.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::CompositionLength { n });
        }
        if (0..n).any(|i| parts[i] != parts[n - 1 - i]) {
            return Err(Error::NotPalindromic(format!("{parts:?}")));
        }
        Ok(Composition { parts })
    }

    fn from_half(half: &[u64]) -> Self {
        let mut parts = half.to_vec();
        parts.extend(half.iter().rev());
        Composition { parts }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All compositions in `Λ_{n,d}`, in lexicographic order.
///
/// The free half `λ_1..λ_{n/2}` ranges over weak compositions of `d`.
pub fn enumerate_compositions(n: usize, d: usize) -> Result<Vec<Composition>> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::CompositionLength { n });
    }
    if d < 3 {
        return Err(Error::RankTooSmall { d });
    }
    let r = n / 2;
    let mut out = Vec::new();
    let mut half = vec![0u64; r];
    fill(&mut half, 0, d as u64, &mut out);
    Ok(out)
}

fn fill(half: &mut [u64], pos: usize, remaining: u64, out: &mut Vec<Composition>) {
    if pos + 1 == half.len() {
        half[pos] = remaining;
        out.push(Composition::from_half(half));
        return;
    }
    for x in 0..=remaining {
        half[pos] = x;
        fill(half, pos + 1, remaining - x, out);
    }
}
