//! Spectrum at infinity, Milnor number and Jordan type of the monodromy.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::sectors::SectorTable;

/// Multiset of spectral values, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    #[serde(with = "crate::rational::serde_str_vec")]
    pub values: Vec<Rational>,
    pub mu: u64,
}

impl Spectrum {
    pub fn is_symmetric(&self, n: usize) -> bool {
        let mut mirrored: Vec<Rational> = self.values.iter().map(|a| int(n as i64) - a).collect();
        mirrored.sort();
        mirrored == self.values
    }

    pub fn multiplicities(&self) -> BTreeMap<Rational, u64> {
        let mut m = BTreeMap::new();
        for v in &self.values {
            *m.entry(*v).or_insert(0) += 1;
        }
        m
    }
}

/// Each sector contributes `age + k` with multiplicity `b_{2k}`.
pub fn spectrum(table: &SectorTable) -> Spectrum {
    let mut values = Vec::new();
    for s in table.iter() {
        for (k, &b) in s.betti.iter().enumerate() {
            values.extend(std::iter::repeat_n(s.age + int(k as i64), b as usize));
        }
    }
    values.sort();
    let mu = values.len() as u64;
    Spectrum { values, mu }
}

pub fn milnor_number(table: &SectorTable) -> u64 {
    spectrum(table).mu
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JordanBlock {
    /// Spectral value of the bottom (primitive) vector of the chain.
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
    pub size: usize,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanType {
    pub blocks: Vec<JordanBlock>,
}

impl JordanType {
    pub fn mass(&self) -> u64 {
        self.blocks.iter().map(|b| b.size as u64 * b.multiplicity).sum()
    }

    /// Sizes with repetition, largest first.
    pub fn partition(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self
            .blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.size, b.multiplicity as usize))
            .collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// The spectrum rebuilt from the chains `a, a+1, .., a+s-1`.
    pub fn spectral_values(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self
            .blocks
            .iter()
            .flat_map(|b| {
                (0..b.size as i64)
                    .flat_map(move |k| std::iter::repeat_n(b.value + int(k), b.multiplicity as usize))
            })
            .collect();
        v.sort();
        v
    }
}

/// Lefschetz decomposition on each sector: `b_{2k} - b_{2k-2}` primitive
/// classes in degree `k` start chains of length `dim - 2k + 1`.
pub fn jordan_type(table: &SectorTable) -> JordanType {
    let mut blocks: BTreeMap<(Rational, usize), u64> = BTreeMap::new();
    for s in table.iter() {
        for k in 0..=s.dim / 2 {
            let prev = if k == 0 { 0 } else { s.betti[k - 1] };
            let primitive = s.betti[k].checked_sub(prev).expect("Betti numbers are unimodal");
            if primitive > 0 {
                *blocks.entry((s.age + int(k as i64), s.dim - 2 * k + 1)).or_insert(0) += primitive;
            }
        }
    }
    JordanType {
        blocks: blocks
            .into_iter()
            .map(|((value, size), multiplicity)| JordanBlock { value, size, multiplicity })
            .collect(),
    }
}

/// Block `(a, s)` is paired with `(n - a - (s - 1), s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPairing {
    /// `(block, dual block)` indices into `JordanType::blocks`.
    pub pairs: Vec<(usize, usize)>,
}

impl BlockPairing {
    pub fn is_involution(&self) -> bool {
        self.pairs
            .iter()
            .enumerate()
            .all(|(i, &(a, b))| a == i && self.pairs.get(b).map(|p| p.1) == Some(a))
    }
}

pub fn dual_value(n: usize, block: &JordanBlock) -> Rational {
    int(n as i64) - block.value - int(block.size as i64 - 1)
}

pub fn block_pairing(j: &JordanType, table: &SectorTable) -> Result<BlockPairing> {
    let index: BTreeMap<(Rational, usize), usize> =
        j.blocks.iter().enumerate().map(|(i, b)| ((b.value, b.size), i)).collect();
    let pairs = j
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let unpaired = || Error::UnpairedBlock { value: b.value.to_string(), size: b.size };
            let &d = index.get(&(dual_value(table.n, b), b.size)).ok_or_else(unpaired)?;
            if j.blocks[d].multiplicity != b.multiplicity {
                return Err(unpaired());
            }
            Ok((i, d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockPairing { pairs })
}
