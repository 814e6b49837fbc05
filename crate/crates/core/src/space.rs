//! Multipartite index arithmetic: local dimensions, computational basis
//! labels, mixed-radix flat encoding, and measured/kept bipartitions.
//!
//! Flat encoding is most-significant-party-first, so the digit string of a
//! label reads the same as its ket, e.g. `|102⟩ ↔ (1,0,2)`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Local dimensions `d_1..d_N` of a multipartite space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dims(Vec<u32>);

impl Dims {
    pub fn new(party_dims: Vec<u32>) -> Result<Self> {
        if party_dims.len() < 2 {
            return Err(Error::BadParameters(format!(
                "need at least two parties, got {}",
                party_dims.len()
            )));
        }
        if let Some((p, &d)) = party_dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(Error::BadParameters(format!(
                "party {p} has local dimension {d}; every local dimension must be at least 2"
            )));
        }
        Ok(Dims(party_dims))
    }

    pub fn n_parties(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self, party: usize) -> u32 {
        self.0[party]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&d| d as usize).product()
    }

    /// All basis labels of the space in flat-index order.
    pub fn labels(&self) -> impl Iterator<Item = BasisLabel> + '_ {
        (0..self.total()).map(move |i| decode(i, self))
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A computational basis label, one digit per party.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel(Vec<u32>);

impl BasisLabel {
    pub fn new(digits: Vec<u32>) -> Self {
        BasisLabel(digits)
    }

    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    pub fn validate(&self, dims: &Dims) -> Result<()> {
        if self.0.len() != dims.n_parties() {
            return Err(Error::DimsMismatch(format!(
                "label {} has {} digits, dims {} has {} parties",
                self,
                self.0.len(),
                dims,
                dims.n_parties()
            )));
        }
        for (party, (&digit, &dim)) in self.0.iter().zip(dims.as_slice()).enumerate() {
            if digit >= dim {
                return Err(Error::DigitOutOfRange { party, digit, dim });
            }
        }
        Ok(())
    }

    /// Renders as a plain digit string when every digit is below 10,
    /// comma-separated otherwise.
    pub fn to_compact_string(&self) -> String {
        if self.0.iter().all(|&d| d < 10) {
            self.0.iter().map(|d| d.to_string()).collect()
        } else {
            let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
            parts.join(",")
        }
    }

    pub fn parse(s: &str, n_parties: usize) -> Result<Self> {
        let digits: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::BadDocument(format!("bad basis label {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::BadDocument(format!("bad basis label {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        if digits.len() != n_parties {
            return Err(Error::BadDocument(format!(
                "basis label {s:?} has {} digits, expected {n_parties}",
                digits.len()
            )));
        }
        Ok(BasisLabel(digits))
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact_string())
    }
}

impl From<&[u32]> for BasisLabel {
    fn from(digits: &[u32]) -> Self {
        BasisLabel(digits.to_vec())
    }
}

pub(crate) fn mixed_radix_encode(digits: &[u32], radix: &[u32]) -> usize {
    let mut idx = 0usize;
    for (&digit, &dim) in digits.iter().zip(radix) {
        idx = idx * dim as usize + digit as usize;
    }
    idx
}

pub(crate) fn mixed_radix_decode(mut index: usize, radix: &[u32]) -> Vec<u32> {
    let mut digits = vec![0u32; radix.len()];
    for (slot, &dim) in digits.iter_mut().zip(radix).rev() {
        *slot = (index % dim as usize) as u32;
        index /= dim as usize;
    }
    digits
}

/// Flat index of a label, most-significant party first.
pub fn encode(label: &BasisLabel, dims: &Dims) -> Result<usize> {
    label.validate(dims)?;
    Ok(mixed_radix_encode(label.digits(), dims.as_slice()))
}

/// Inverse of [`encode`].
pub fn decode(index: usize, dims: &Dims) -> BasisLabel {
    BasisLabel(mixed_radix_decode(index, dims.as_slice()))
}

/// A bipartition of the parties into a measured subset and its kept
/// complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasuredSet {
    measured: Vec<usize>,
    kept: Vec<usize>,
    n_parties: usize,
}

impl MeasuredSet {
    pub fn new(parties: &[usize], n_parties: usize) -> Result<Self> {
        let mut measured: Vec<usize> = parties.to_vec();
        measured.sort_unstable();
        measured.dedup();
        if measured.is_empty()
            || measured.len() != parties.len()
            || measured.len() >= n_parties
            || measured.iter().any(|&p| p >= n_parties)
        {
            return Err(Error::BadMeasuredSet);
        }
        let kept = (0..n_parties).filter(|p| !measured.contains(p)).collect();
        Ok(MeasuredSet {
            measured,
            kept,
            n_parties,
        })
    }

    /// Everything except `party`: the bipartition used for strongest
    /// nonlocality.
    pub fn complement_of(party: usize, n_parties: usize) -> Result<Self> {
        let others: Vec<usize> = (0..n_parties).filter(|&p| p != party).collect();
        MeasuredSet::new(&others, n_parties)
    }

    pub fn single(party: usize, n_parties: usize) -> Result<Self> {
        MeasuredSet::new(&[party], n_parties)
    }

    pub fn measured_parties(&self) -> &[usize] {
        &self.measured
    }

    pub fn kept_parties(&self) -> &[usize] {
        &self.kept
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    /// Swaps measured and kept sides.
    pub fn complement(&self) -> Self {
        MeasuredSet {
            measured: self.kept.clone(),
            kept: self.measured.clone(),
            n_parties: self.n_parties,
        }
    }

    pub fn check_dims(&self, dims: &Dims) -> Result<()> {
        if self.n_parties != dims.n_parties() {
            return Err(Error::DimsMismatch(format!(
                "measured set over {} parties used with dims {}",
                self.n_parties, dims
            )));
        }
        Ok(())
    }

    pub fn measured_dims(&self, dims: &Dims) -> Vec<u32> {
        self.measured.iter().map(|&p| dims.dim(p)).collect()
    }

    pub fn kept_dims(&self, dims: &Dims) -> Vec<u32> {
        self.kept.iter().map(|&p| dims.dim(p)).collect()
    }

    pub fn measured_dim(&self, dims: &Dims) -> usize {
        self.measured_dims(dims).iter().map(|&d| d as usize).product()
    }

    pub fn kept_dim(&self, dims: &Dims) -> usize {
        self.kept_dims(dims).iter().map(|&d| d as usize).product()
    }

    /// Splits a full label into (kept digits, measured digits).
    pub fn split(&self, label: &BasisLabel) -> (Vec<u32>, Vec<u32>) {
        let digits = label.digits();
        let kept = self.kept.iter().map(|&p| digits[p]).collect();
        let measured = self.measured.iter().map(|&p| digits[p]).collect();
        (kept, measured)
    }

    /// Reassembles a full label from kept and measured digit groups.
    pub fn join(&self, kept: &[u32], measured: &[u32]) -> BasisLabel {
        let mut digits = vec![0u32; self.n_parties];
        for (&p, &d) in self.kept.iter().zip(kept) {
            digits[p] = d;
        }
        for (&p, &d) in self.measured.iter().zip(measured) {
            digits[p] = d;
        }
        BasisLabel(digits)
    }
}

impl fmt::Display for MeasuredSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.measured.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
