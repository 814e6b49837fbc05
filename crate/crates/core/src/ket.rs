//! Normalized states over a multipartite computational basis.
//!
//! Amplitudes are exact scalars; a dense complex vector is rendered lazily
//! for the numerical layers. Symbolic layers read the exact map directly.

use crate::error::{Error, Result};
use crate::exact::{ExactScalar, ExactSum};
use crate::space::{encode, mixed_radix_encode, BasisLabel, Dims, MeasuredSet};
use ndarray::Array2;
use ndarray_linalg::{c64, JobSvd, SVDDC};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Relative singular-value tolerance used for rank decisions when the caller
/// has no better choice.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Ket {
    dims: Dims,
    amps: BTreeMap<BasisLabel, ExactScalar>,
    dense_cache: OnceLock<Vec<c64>>,
}

impl PartialEq for Ket {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.amps == other.amps
    }
}
impl Eq for Ket {}

impl Ket {
    /// Builds a ket from exact amplitudes, validating labels and exact unit
    /// norm.
    pub fn new(dims: Dims, amplitudes: Vec<(BasisLabel, ExactScalar)>) -> Result<Self> {
        let mut amps = BTreeMap::new();
        let mut norm_sq = BigRational::zero();
        for (label, amp) in amplitudes {
            label.validate(&dims)?;
            if amp.is_zero() {
                continue;
            }
            norm_sq += amp.abs_sq();
            if amps.insert(label.clone(), amp).is_some() {
                return Err(Error::BadParameters(format!(
                    "duplicate amplitude for label {label}"
                )));
            }
        }
        if !norm_sq.is_one() {
            return Err(Error::NotOrthonormal(format!(
                "ket has squared norm {norm_sq}, expected exactly 1"
            )));
        }
        Ok(Ket {
            dims,
            amps,
            dense_cache: OnceLock::new(),
        })
    }

    pub fn basis_state(dims: Dims, label: BasisLabel) -> Result<Self> {
        Ket::new(dims, vec![(label, ExactScalar::one())])
    }

    /// Uniform superposition `(Σ |label⟩)/√m` of distinct labels.
    pub fn uniform(dims: Dims, labels: &[BasisLabel]) -> Result<Self> {
        let amp = ExactScalar::inv_sqrt(labels.len() as u64);
        Ket::new(
            dims,
            labels.iter().map(|l| (l.clone(), amp.clone())).collect(),
        )
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (&BasisLabel, &ExactScalar)> {
        self.amps.iter()
    }

    pub fn amplitude(&self, label: &BasisLabel) -> Option<&ExactScalar> {
        self.amps.get(label)
    }

    pub fn support_len(&self) -> usize {
        self.amps.len()
    }

    /// Dense float rendering, cached after the first call.
    pub fn dense(&self) -> &[c64] {
        self.dense_cache.get_or_init(|| {
            let mut v = vec![c64::new(0.0, 0.0); self.dims.total()];
            for (label, amp) in &self.amps {
                v[encode(label, &self.dims).expect("validated label")] = amp.to_c64();
            }
            v
        })
    }

    /// Multiplies every amplitude by a unit-modulus scalar.
    pub fn with_global_phase(&self, phase: &ExactScalar) -> Result<Ket> {
        if !phase.abs_sq().is_one() {
            return Err(Error::BadParameters(format!(
                "global phase must have unit modulus, got |{phase}|^2 = {}",
                phase.abs_sq()
            )));
        }
        Ket::new(
            self.dims.clone(),
            self.amps
                .iter()
                .map(|(l, a)| (l.clone(), a.mul(phase)))
                .collect(),
        )
    }

    /// Applies a permutation of parties: digit `p` of each label moves to
    /// position `perm[p]`.
    pub fn permute_parties(&self, perm: &[usize]) -> Result<Ket> {
        let n = self.dims.n_parties();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::BadParameters(format!(
                "not a permutation of {n} parties: {perm:?}"
            )));
        }
        let mut new_dims = vec![0u32; n];
        for (p, &q) in perm.iter().enumerate() {
            new_dims[q] = self.dims.dim(p);
        }
        let dims = Dims::new(new_dims)?;
        let amps = self
            .amps
            .iter()
            .map(|(label, amp)| {
                let mut digits = vec![0u32; n];
                for (p, &q) in perm.iter().enumerate() {
                    digits[q] = label.digits()[p];
                }
                (BasisLabel::new(digits), amp.clone())
            })
            .collect();
        Ket::new(dims, amps)
    }
}

/// `⟨a|b⟩` in float rendering; conjugate-linear in `a`.
pub fn inner(a: &Ket, b: &Ket) -> Result<c64> {
    Ok(inner_exact(a, b)?.to_c64())
}

/// `⟨a|b⟩` as a formal exact sum. Structural zero detection is exact for
/// states whose shared amplitudes live on a common unit, which covers every
/// basis-expansion state this crate constructs.
pub fn inner_exact(a: &Ket, b: &Ket) -> Result<ExactSum> {
    if a.dims != b.dims {
        return Err(Error::DimsMismatch(format!(
            "inner product between dims {} and {}",
            a.dims, b.dims
        )));
    }
    let mut sum = ExactSum::new();
    // iterate over the smaller support
    let (small, large, small_is_a) = if a.amps.len() <= b.amps.len() {
        (&a.amps, &b.amps, true)
    } else {
        (&b.amps, &a.amps, false)
    };
    for (label, amp) in small {
        if let Some(other) = large.get(label) {
            if small_is_a {
                sum.add_conj_product(amp, other);
            } else {
                sum.add_conj_product(other, amp);
            }
        }
    }
    Ok(sum)
}

/// Reshapes a ket into a kept-dim × measured-dim matrix: entry `(r, c)` is
/// the amplitude of the label reassembled from kept digits `r` and measured
/// digits `c`, each in mixed-radix order.
pub fn reshape(k: &Ket, m: &MeasuredSet) -> Result<Array2<c64>> {
    m.check_dims(k.dims())?;
    let kept_radix = m.kept_dims(k.dims());
    let meas_radix = m.measured_dims(k.dims());
    let mut out = Array2::zeros((m.kept_dim(k.dims()), m.measured_dim(k.dims())));
    for (label, amp) in k.amplitudes() {
        let (kept, meas) = m.split(label);
        let r = mixed_radix_encode(&kept, &kept_radix);
        let c = mixed_radix_encode(&meas, &meas_radix);
        out[(r, c)] = amp.to_c64();
    }
    Ok(out)
}

/// Sparse reshape: `(kept index, measured index, amplitude)` triples.
pub(crate) fn reshape_cells(k: &Ket, m: &MeasuredSet) -> Result<Vec<(usize, usize, c64)>> {
    m.check_dims(k.dims())?;
    let kept_radix = m.kept_dims(k.dims());
    let meas_radix = m.measured_dims(k.dims());
    Ok(k.amplitudes()
        .map(|(label, amp)| {
            let (kept, meas) = m.split(label);
            (
                mixed_radix_encode(&kept, &kept_radix),
                mixed_radix_encode(&meas, &meas_radix),
                amp.to_c64(),
            )
        })
        .collect())
}

/// Exact sparse reshape used by the symbolic engine.
pub(crate) fn reshape_cells_exact(
    k: &Ket,
    m: &MeasuredSet,
) -> Result<Vec<(usize, usize, ExactScalar)>> {
    m.check_dims(k.dims())?;
    let kept_radix = m.kept_dims(k.dims());
    let meas_radix = m.measured_dims(k.dims());
    Ok(k.amplitudes()
        .map(|(label, amp)| {
            let (kept, meas) = m.split(label);
            (
                mixed_radix_encode(&kept, &kept_radix),
                mixed_radix_encode(&meas, &meas_radix),
                amp.clone(),
            )
        })
        .collect())
}

/// Number of singular values of `reshape(k, m)` above `tol` times the
/// largest one.
pub fn schmidt_rank(k: &Ket, m: &MeasuredSet, tol: f64) -> Result<usize> {
    if tol <= 0.0 {
        return Err(Error::BadParameters(format!(
            "rank tolerance must be positive, got {tol}"
        )));
    }
    let mat = reshape(k, m)?;
    let (_, s, _) = mat
        .svddc(JobSvd::None)
        .map_err(|e| Error::BadParameters(format!("svd failed: {e}")))?;
    let smax = s.iter().cloned().fold(0.0f64, f64::max);
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(s.iter().filter(|&&sv| sv > tol * smax).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(v: &[u32]) -> Dims {
        Dims::new(v.to_vec()).unwrap()
    }

    fn label(digits: &[u32]) -> BasisLabel {
        BasisLabel::new(digits.to_vec())
    }

    fn bell() -> Ket {
        Ket::uniform(dims(&[2, 2]), &[label(&[0, 0]), label(&[1, 1])]).unwrap()
    }

    #[test]
    fn norm_must_be_exactly_one() {
        let d = dims(&[2, 2]);
        let bad = Ket::new(
            d.clone(),
            vec![
                (label(&[0, 0]), ExactScalar::ratio(1, 2)),
                (label(&[1, 1]), ExactScalar::ratio(1, 2)),
            ],
        );
        assert!(matches!(bad, Err(Error::NotOrthonormal(_))));
        assert!(bell().support_len() == 2);
    }

    #[test]
    fn inner_basis_cases() {
        let d = dims(&[2, 2, 2]);
        let a = Ket::basis_state(d.clone(), label(&[0, 0, 0])).unwrap();
        let b = Ket::basis_state(d.clone(), label(&[0, 0, 1])).unwrap();
        let c = Ket::basis_state(d, label(&[0, 1, 0])).unwrap();
        assert!((inner(&a, &a).unwrap() - c64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(inner_exact(&b, &c).unwrap().is_zero());
        assert!(inner_exact(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn inner_rejects_mismatched_dims() {
        let a = Ket::basis_state(dims(&[2, 2]), label(&[0, 0])).unwrap();
        let b = Ket::basis_state(dims(&[2, 3]), label(&[0, 0])).unwrap();
        assert!(inner(&a, &b).is_err());
    }

    #[test]
    fn reshape_basis_state() {
        let d = dims(&[2, 2, 2]);
        let k = Ket::basis_state(d, label(&[0, 0, 0])).unwrap();
        let m = MeasuredSet::new(&[1, 2], 3).unwrap();
        let r = reshape(&k, &m).unwrap();
        assert_eq!(r.shape(), &[2, 4]);
        assert!((r[(0, 0)] - c64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(r.iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn reshape_bell_is_scaled_identity() {
        let m = MeasuredSet::new(&[1], 2).unwrap();
        let r = reshape(&bell(), &m).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(r.shape(), &[2, 2]);
        assert!((r[(0, 0)].re - s).abs() < 1e-15 && (r[(1, 1)].re - s).abs() < 1e-15);
        assert!(r[(0, 1)].norm() < 1e-15 && r[(1, 0)].norm() < 1e-15);
    }

    #[test]
    fn schmidt_rank_examples() {
        let d = dims(&[2, 2, 2]);
        let prod = Ket::basis_state(d, label(&[0, 0, 0])).unwrap();
        let m = MeasuredSet::new(&[1, 2], 3).unwrap();
        assert_eq!(schmidt_rank(&prod, &m, DEFAULT_RANK_TOL).unwrap(), 1);
        let m2 = MeasuredSet::new(&[1], 2).unwrap();
        assert_eq!(schmidt_rank(&bell(), &m2, DEFAULT_RANK_TOL).unwrap(), 2);
    }

    #[test]
    fn schmidt_rank_invariant_under_complement() {
        let d = dims(&[2, 3, 2]);
        let k = Ket::uniform(
            d,
            &[label(&[0, 0, 0]), label(&[1, 1, 1]), label(&[0, 2, 1])],
        )
        .unwrap();
        for parties in [vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2]] {
            let m = MeasuredSet::new(&parties, 3).unwrap();
            let r1 = schmidt_rank(&k, &m, DEFAULT_RANK_TOL).unwrap();
            let r2 = schmidt_rank(&k, &m.complement(), DEFAULT_RANK_TOL).unwrap();
            assert_eq!(r1, r2, "bipartition {parties:?}");
        }
    }

    #[test]
    fn permute_parties_moves_digits() {
        let d = dims(&[2, 3, 4]);
        let k = Ket::basis_state(d, label(&[1, 2, 3])).unwrap();
        // party 0 -> 2, 1 -> 0, 2 -> 1
        let p = k.permute_parties(&[2, 0, 1]).unwrap();
        assert_eq!(p.dims().as_slice(), &[3, 4, 2]);
        assert!(p.amplitude(&label(&[2, 3, 1])).is_some());
        assert!(k.permute_parties(&[0, 0, 1]).is_err());
    }

    #[test]
    fn global_phase_preserves_norm_and_overlaps() {
        let k = bell();
        let phase = ExactScalar::root_of_unity(8, 3);
        let kp = k.with_global_phase(&phase).unwrap();
        let ov = inner(&k, &kp).unwrap();
        assert!((ov.norm() - 1.0).abs() < 1e-12);
        assert!(k.with_global_phase(&ExactScalar::ratio(1, 2)).is_err());
    }
}
