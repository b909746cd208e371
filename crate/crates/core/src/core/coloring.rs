use std::collections::BTreeMap;

use bitvec::prelude::*;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::core::colex::{binomial, colex_rank, colex_unrank, KSubsets};
use crate::core::edge::{Color, Edge};
use crate::error::{Error, Result};

pub type Bits = BitVec<u64, Lsb0>;

/// Largest number of edges we are willing to materialize as a bitmap.
pub const MATERIALIZE_LIMIT: u64 = 1 << 28;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// The splitmix64 finalizer applied to `x + GOLDEN`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A probability `num/den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Ratio> {
        if den == 0 || num > den {
            return Err(Error::InvalidParameters(format!("probability {num}/{den} is not in [0,1]")));
        }
        let g = num.gcd(&den);
        Ok(Ratio { num: num / g, den: den / g })
    }

    /// Rounds `p` to a multiple of 1e-6.
    pub fn from_f64(p: f64) -> Result<Ratio> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameters(format!("probability {p} is not in [0,1]")));
        }
        Ratio::new((p * 1e6).round() as u64, 1_000_000)
    }
}

/// Deterministic coloring rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Uniform(Color),
    /// Red iff the edge lies inside `{0..a-1}`; vertices `a..a+b-1` form B.
    Split { a: usize, b: usize },
    /// Red iff `splitmix64(seed ^ rank * GOLDEN) mod den < num`.
    Hash { seed: u64, p: Ratio },
    /// A rule with a few edges recolored.
    Overlay { base: Box<Rule>, overrides: BTreeMap<Edge, Color> },
}

impl Rule {
    fn color(&self, e: &Edge, n: usize, k: usize) -> Color {
        match self {
            Rule::Uniform(c) => *c,
            Rule::Split { a, .. } => Color::from_bit((e.max_vertex() as usize) < *a),
            Rule::Hash { seed, p } => {
                let r = colex_rank(e, n, k).expect("edge checked by caller");
                hash_color(*seed, *p, r)
            }
            Rule::Overlay { base, overrides } => overrides.get(e).copied().unwrap_or_else(|| base.color(e, n, k)),
        }
    }
}

fn hash_color(seed: u64, p: Ratio, rank: u64) -> Color {
    Color::from_bit(splitmix64(seed ^ rank.wrapping_mul(GOLDEN)) % p.den < p.num)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringSource {
    /// Bit r is the color of the edge of colex rank r; 1 is red.
    Bitmap(Bits),
    Rule(Rule),
}

/// A red/blue coloring of all k-subsets of `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KUniformColoring {
    n: usize,
    k: usize,
    source: ColoringSource,
}

impl KUniformColoring {
    pub fn new(n: usize, k: usize, source: ColoringSource) -> Result<KUniformColoring> {
        if k == 0 || n < k {
            return Err(Error::InvalidParameters(format!("need N >= k >= 1, got N={n}, k={k}")));
        }
        let total = binomial(n as u64, k as u64)
            .ok_or_else(|| Error::InvalidParameters(format!("C({n},{k}) overflows u64")))?;
        match &source {
            ColoringSource::Bitmap(bits) if bits.len() as u64 != total => {
                return Err(Error::InvalidParameters(format!(
                    "bitmap has {} bits, C({n},{k}) = {total}",
                    bits.len()
                )))
            }
            ColoringSource::Rule(Rule::Split { a, b }) if a + b != n => {
                return Err(Error::InvalidParameters(format!("split {a}+{b} does not cover {n} vertices")))
            }
            _ => {}
        }
        Ok(KUniformColoring { n, k, source })
    }

    pub fn uniform(n: usize, k: usize, c: Color) -> Result<KUniformColoring> {
        KUniformColoring::new(n, k, ColoringSource::Rule(Rule::Uniform(c)))
    }

    pub fn split(n: usize, k: usize, a: usize) -> Result<KUniformColoring> {
        if a > n {
            return Err(Error::InvalidParameters(format!("split part {a} exceeds N={n}")));
        }
        KUniformColoring::new(n, k, ColoringSource::Rule(Rule::Split { a, b: n - a }))
    }

    /// Colors from a predicate evaluated once per edge in colex order.
    pub fn from_fn(n: usize, k: usize, mut f: impl FnMut(&Edge) -> Color) -> Result<KUniformColoring> {
        let total = checked_total(n, k)?;
        let mut bits = Bits::with_capacity(total as usize);
        for m in KSubsets::new(n, k)? {
            bits.push(f(&crate::core::colex::mask_to_edge(u128::from(m))).bit());
        }
        KUniformColoring::new(n, k, ColoringSource::Bitmap(bits))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn source(&self) -> &ColoringSource {
        &self.source
    }

    pub fn edge_count(&self) -> u64 {
        binomial(self.n as u64, self.k as u64).expect("checked at construction")
    }

    fn check(&self, e: &Edge) -> Result<()> {
        if e.len() != self.k || e.max_vertex() as usize >= self.n {
            return Err(Error::InvalidEdge(format!("{e:?} is not a {}-subset of 0..{}", self.k, self.n)));
        }
        Ok(())
    }

    pub fn try_color(&self, e: &Edge) -> Result<Color> {
        self.check(e)?;
        Ok(match &self.source {
            ColoringSource::Bitmap(bits) => Color::from_bit(bits[colex_rank(e, self.n, self.k)? as usize]),
            ColoringSource::Rule(rule) => rule.color(e, self.n, self.k),
        })
    }

    /// Panics if `e` is not a k-subset of `0..N`.
    pub fn color(&self, e: &Edge) -> Color {
        self.try_color(e).expect("edge outside the host hypergraph")
    }

    pub fn color_rank(&self, rank: u64) -> Result<Color> {
        match &self.source {
            ColoringSource::Bitmap(bits) => {
                if rank >= bits.len() as u64 {
                    return Err(Error::RankOutOfRange { rank, n: self.n, k: self.k });
                }
                Ok(Color::from_bit(bits[rank as usize]))
            }
            ColoringSource::Rule(Rule::Hash { seed, p }) => {
                if rank >= self.edge_count() {
                    return Err(Error::RankOutOfRange { rank, n: self.n, k: self.k });
                }
                Ok(hash_color(*seed, *p, rank))
            }
            ColoringSource::Rule(_) => self.try_color(&colex_unrank(rank, self.n, self.k)?),
        }
    }

    /// The bitmap of this coloring, computing it if rule-defined.
    pub fn to_bits(&self) -> Result<Bits> {
        if let ColoringSource::Bitmap(bits) = &self.source {
            return Ok(bits.clone());
        }
        let total = checked_total(self.n, self.k)?;
        if let ColoringSource::Rule(Rule::Hash { seed, p }) = &self.source {
            return Ok((0..total).map(|r| hash_color(*seed, *p, r).bit()).collect());
        }
        let mut bits = Bits::with_capacity(total as usize);
        for m in KSubsets::new(self.n, self.k)? {
            let e = crate::core::colex::mask_to_edge(u128::from(m));
            bits.push(self.color(&e).bit());
        }
        Ok(bits)
    }

    pub fn materialize(&self) -> Result<KUniformColoring> {
        KUniformColoring::new(self.n, self.k, ColoringSource::Bitmap(self.to_bits()?))
    }

    /// A copy with the given edges recolored.
    pub fn with_overrides(&self, overrides: BTreeMap<Edge, Color>) -> Result<KUniformColoring> {
        for e in overrides.keys() {
            self.check(e)?;
        }
        let source = match &self.source {
            ColoringSource::Bitmap(bits) => {
                let mut bits = bits.clone();
                for (e, c) in &overrides {
                    bits.set(colex_rank(e, self.n, self.k)? as usize, c.bit());
                }
                ColoringSource::Bitmap(bits)
            }
            ColoringSource::Rule(Rule::Overlay { base, overrides: old }) => {
                let mut merged = old.clone();
                merged.extend(overrides);
                ColoringSource::Rule(Rule::Overlay { base: base.clone(), overrides: merged })
            }
            ColoringSource::Rule(rule) => {
                ColoringSource::Rule(Rule::Overlay { base: Box::new(rule.clone()), overrides })
            }
        };
        KUniformColoring::new(self.n, self.k, source)
    }

    /// Bitmap as lowercase hex, four edges per digit, LSB first.
    pub fn to_hex(&self) -> Result<String> {
        Ok(bits_to_hex(&self.to_bits()?))
    }

    pub fn from_hex(n: usize, k: usize, hex: &str) -> Result<KUniformColoring> {
        let total = checked_total(n, k)?;
        KUniformColoring::new(n, k, ColoringSource::Bitmap(hex_to_bits(hex, total as usize)?))
    }
}

fn checked_total(n: usize, k: usize) -> Result<u64> {
    let total = binomial(n as u64, k as u64).unwrap_or(u64::MAX);
    if total > MATERIALIZE_LIMIT {
        return Err(Error::BudgetExceeded(format!("C({n},{k}) = {total} edges is too many to materialize")));
    }
    Ok(total)
}

pub(crate) fn bits_to_hex(bits: &Bits) -> String {
    bits.chunks(4)
        .map(|ch| {
            let d = ch.iter().enumerate().fold(0u32, |acc, (i, b)| acc | (u32::from(*b) << i));
            char::from_digit(d, 16).expect("nibble")
        })
        .collect()
}

pub(crate) fn hex_to_bits(hex: &str, len: usize) -> Result<Bits> {
    let hex = hex.trim();
    if hex.len() != len.div_ceil(4) {
        return Err(Error::Format(format!("expected {} hex digits, found {}", len.div_ceil(4), hex.len())));
    }
    let mut bits = Bits::with_capacity(len);
    for ch in hex.chars() {
        let d = ch
            .to_digit(16)
            .filter(|_| !ch.is_ascii_uppercase())
            .ok_or_else(|| Error::Format(format!("bad hex digit {ch:?}")))?;
        for i in 0..4 {
            if bits.len() < len {
                bits.push(d >> i & 1 == 1);
            } else if d >> i & 1 == 1 {
                return Err(Error::Format("padding bits must be zero".into()));
            }
        }
    }
    Ok(bits)
}

/// Seeded random coloring: edge of rank r is red iff
/// `splitmix64(seed ^ r * 0x9E3779B97F4A7C15) mod den < num`, where
/// `num/den` is `p_red` rounded to six decimals. Materialized when small.
pub fn random_coloring(n: usize, k: usize, seed: u64, p_red: f64) -> Result<KUniformColoring> {
    let c = KUniformColoring::new(n, k, ColoringSource::Rule(Rule::Hash { seed, p: Ratio::from_f64(p_red)? }))?;
    if c.edge_count() <= 1 << 24 {
        c.materialize()
    } else {
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_examples() {
        let c = KUniformColoring::uniform(4, 3, Color::Red).unwrap();
        for m in KSubsets::new(4, 3).unwrap() {
            assert_eq!(c.color(&crate::core::colex::mask_to_edge(u128::from(m))), Color::Red);
        }
        let s = KUniformColoring::split(6, 3, 5).unwrap();
        assert_eq!(s.color(&Edge::new(vec![0, 1, 2]).unwrap()), Color::Red);
        assert_eq!(s.color(&Edge::new(vec![0, 1, 5]).unwrap()), Color::Blue);
        assert!(KUniformColoring::uniform(2, 3, Color::Red).is_err());
    }

    #[test]
    fn random_is_reproducible() {
        let a = random_coloring(6, 3, 1, 0.5).unwrap();
        let b = random_coloring(6, 3, 1, 0.5).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_coloring(6, 3, 2, 0.5).unwrap());
        assert_eq!(Ratio::from_f64(0.5).unwrap(), Ratio { num: 1, den: 2 });
    }

    #[test]
    fn hex_roundtrip_and_overrides() {
        let a = random_coloring(7, 3, 9, 0.3).unwrap();
        let h = a.to_hex().unwrap();
        assert_eq!(h.len(), 9);
        assert_eq!(KUniformColoring::from_hex(7, 3, &h).unwrap(), a);
        let e = Edge::new(vec![0, 1, 2]).unwrap();
        let flipped = a.color(&e).complement();
        let b = a.with_overrides([(e.clone(), flipped)].into()).unwrap();
        assert_eq!(b.color(&e), flipped);
        let s = KUniformColoring::split(6, 3, 5).unwrap().with_overrides([(e.clone(), Color::Blue)].into()).unwrap();
        assert_eq!(s.color(&e), Color::Blue);
        assert_eq!(s.materialize().unwrap().color(&e), Color::Blue);
    }
}
