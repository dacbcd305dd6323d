//! Content-addressed refinement colors.
//!
//! A color is the 128-bit truncated SHA-256 of its canonical construction
//! string. Identical constructions hash identically across graphs, runs,
//! and machines, which is what makes cross-graph histogram comparison
//! exact. All counts are fixed-width little-endian and all variable parts
//! are length-prefixed, so the encoding is injective.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const DOMAIN: &[u8] = b"pewl-color-v1";

/// Construction tags; one per color kind.
#[derive(Clone, Copy)]
pub enum Tag {
    NodeInit = 1,
    ClassicalUpdate = 2,
    AugUpdate = 3,
    PairInit = 4,
    PairUpdate = 5,
    Histogram = 6,
    UnorderedPair = 7,
    CanonicalReadout = 8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorId(pub [u8; 16]);

impl ColorId {
    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl Serialize for ColorId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.hex())
    }
}

impl<'de> Deserialize<'de> for ColorId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s.len() != 32 {
            return Err(serde::de::Error::custom("color id must be 32 hex chars"));
        }
        let mut bytes = [0u8; 16];
        for i in 0..16 {
            bytes[i] = u8::from_str_radix(&s[2 * i..2 * i + 2], 16)
                .map_err(serde::de::Error::custom)?;
        }
        Ok(ColorId(bytes))
    }
}

/// Incremental construction-string hasher.
pub struct ColorBuilder {
    hasher: Sha256,
}

impl ColorBuilder {
    pub fn new(tag: Tag) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(DOMAIN);
        hasher.update([tag as u8]);
        ColorBuilder { hasher }
    }

    pub fn color(&mut self, id: &ColorId) -> &mut Self {
        self.hasher.update(id.0);
        self
    }

    pub fn bytes(&mut self, data: &[u8]) -> &mut Self {
        self.hasher.update((data.len() as u64).to_le_bytes());
        self.hasher.update(data);
        self
    }

    pub fn count(&mut self, n: usize) -> &mut Self {
        self.hasher.update((n as u64).to_le_bytes());
        self
    }

    /// Sorted fixed-width items: lexicographic byte order gives the
    /// deterministic multiset ordering.
    pub fn sorted_items(&mut self, items: &mut [Vec<u8>]) -> &mut Self {
        items.sort_unstable();
        self.count(items.len());
        for item in items.iter() {
            self.hasher.update((item.len() as u64).to_le_bytes());
            self.hasher.update(item);
        }
        self
    }

    pub fn sorted_colors(&mut self, colors: &mut [ColorId]) -> &mut Self {
        colors.sort_unstable();
        self.count(colors.len());
        for c in colors.iter() {
            self.hasher.update(c.0);
        }
        self
    }

    pub fn finish(&mut self) -> ColorId {
        let digest = std::mem::replace(&mut self.hasher, Sha256::new()).finalize();
        let mut out = [0u8; 16];
        out.copy_from_slice(&digest[..16]);
        ColorId(out)
    }
}

/// Digest of a color histogram: sorted (color, count) pairs.
pub fn histogram_digest(colors: &[ColorId]) -> ColorId {
    let mut counts: std::collections::BTreeMap<ColorId, u64> = std::collections::BTreeMap::new();
    for c in colors {
        *counts.entry(*c).or_insert(0) += 1;
    }
    let mut b = ColorBuilder::new(Tag::Histogram);
    b.count(counts.len());
    for (c, k) in counts {
        b.color(&c);
        b.count(k as usize);
    }
    b.finish()
}

/// Cartesian square of a multiset, sorted. The square determines the
/// multiset: equal squares imply equal multisets.
pub fn multiset_square<T: Clone + Ord>(a: &[T]) -> Vec<(T, T)> {
    let mut out = Vec::with_capacity(a.len() * a.len());
    for x in a {
        for y in a {
            out.push((x.clone(), y.clone()));
        }
    }
    out.sort();
    out
}
