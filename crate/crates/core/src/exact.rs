//! Exact scalars of the form `(p/q) · (1/√r) · ω_n^k` with `ω_n = e^{2πi/n}`,
//! plus formal sums of such scalars.
//!
//! Products and conjugates stay in this representation, which is all the
//! symbolic layers need: amplitudes of the shipped states are single terms,
//! squared magnitudes are plain rationals, and Fourier coefficients are
//! roots of unity over a common order.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// `(p/q) · (1/√r) · ω_n^k`, kept in a canonical form:
/// `r` square-free, `gcd(k, n) = 1`, and orders 1 and 2 folded into the sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    rational: BigRational,
    inv_sqrt: u64,
    phase_order: u64,
    phase_power: u64,
}

fn big_ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Splits `r` into `(s, r')` with `r = s²·r'` and `r'` square-free.
fn extract_square(mut r: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = 2u64;
    while f * f <= r {
        while r % (f * f) == 0 {
            r /= f * f;
            s *= f;
        }
        f += 1;
    }
    (s, r)
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar {
            rational: BigRational::zero(),
            inv_sqrt: 1,
            phase_order: 1,
            phase_power: 0,
        }
    }

    pub fn one() -> Self {
        ExactScalar::from_int(1)
    }

    pub fn from_int(p: i64) -> Self {
        ExactScalar::new(big_ratio(p, 1), 1, 1, 0)
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        ExactScalar::new(big_ratio(p, q), 1, 1, 0)
    }

    /// `1/√r`, `r ≥ 1`.
    pub fn inv_sqrt(r: u64) -> Self {
        ExactScalar::new(BigRational::one(), r, 1, 0)
    }

    /// `ω_n^k`.
    pub fn root_of_unity(n: u64, k: u64) -> Self {
        ExactScalar::new(BigRational::one(), 1, n, k)
    }

    pub fn new(rational: BigRational, inv_sqrt: u64, phase_order: u64, phase_power: u64) -> Self {
        assert!(inv_sqrt >= 1, "inv_sqrt radicand must be positive");
        assert!(phase_order >= 1, "phase order must be positive");
        let mut s = ExactScalar {
            rational,
            inv_sqrt,
            phase_order,
            phase_power,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.rational.is_zero() {
            self.inv_sqrt = 1;
            self.phase_order = 1;
            self.phase_power = 0;
            return;
        }
        let (s, r) = extract_square(self.inv_sqrt);
        if s > 1 {
            self.rational /= BigRational::from(BigInt::from(s));
        }
        self.inv_sqrt = r;

        self.phase_power %= self.phase_order;
        if self.phase_power == 0 {
            self.phase_order = 1;
            return;
        }
        let g = self.phase_power.gcd(&self.phase_order);
        self.phase_order /= g;
        self.phase_power /= g;
        if self.phase_order == 2 {
            // ω_2 = −1
            self.rational = -std::mem::take(&mut self.rational);
            self.phase_order = 1;
            self.phase_power = 0;
        } else if self.phase_order == 1 {
            self.phase_power = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rational.is_one() && self.inv_sqrt == 1 && self.phase_order == 1
    }

    /// True when the value is a real number (possibly negative).
    pub fn is_real(&self) -> bool {
        self.phase_order == 1
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    /// The canonical irrational/phase unit `(r, n, k)`; scalars with equal
    /// units differ by a rational factor.
    pub fn unit_key(&self) -> (u64, u64, u64) {
        (self.inv_sqrt, self.phase_order, self.phase_power)
    }

    pub fn parts(&self) -> (&BigRational, u64, u64, u64) {
        (
            &self.rational,
            self.inv_sqrt,
            self.phase_order,
            self.phase_power,
        )
    }

    pub fn mul(&self, other: &ExactScalar) -> ExactScalar {
        if self.is_zero() || other.is_zero() {
            return ExactScalar::zero();
        }
        let n = self.phase_order.lcm(&other.phase_order);
        let k = (self.phase_power * (n / self.phase_order)
            + other.phase_power * (n / other.phase_order))
            % n;
        ExactScalar::new(
            &self.rational * &other.rational,
            self.inv_sqrt * other.inv_sqrt,
            n,
            k,
        )
    }

    pub fn conj(&self) -> ExactScalar {
        if self.phase_order == 1 {
            return self.clone();
        }
        ExactScalar::new(
            self.rational.clone(),
            self.inv_sqrt,
            self.phase_order,
            self.phase_order - self.phase_power,
        )
    }

    pub fn neg(&self) -> ExactScalar {
        ExactScalar::new(
            -self.rational.clone(),
            self.inv_sqrt,
            self.phase_order,
            self.phase_power,
        )
    }

    /// `|x|²` as an exact rational.
    pub fn abs_sq(&self) -> BigRational {
        let sq = &self.rational * &self.rational;
        sq / BigRational::from(BigInt::from(self.inv_sqrt))
    }

    /// Float rendering.
    pub fn to_c64(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let mag = rational_to_f64(&self.rational) / (self.inv_sqrt as f64).sqrt();
        if self.phase_order == 1 {
            Complex64::new(mag, 0.0)
        } else {
            let theta = 2.0 * std::f64::consts::PI * (self.phase_power as f64)
                / (self.phase_order as f64);
            Complex64::from_polar(mag.abs(), theta) * mag.signum()
        }
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap())
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.rational)?;
        if self.inv_sqrt > 1 {
            write!(f, "/sqrt({})", self.inv_sqrt)?;
        }
        if self.phase_order > 1 {
            write!(f, "*w{}^{}", self.phase_order, self.phase_power)?;
        }
        Ok(())
    }
}

/// A formal sum of exact scalars, grouped by unit. Zero detection is
/// structural: identities between distinct roots of unity are not reduced,
/// so `is_zero` is sound but not complete.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExactSum {
    terms: BTreeMap<(u64, u64, u64), BigRational>,
}

impl ExactSum {
    pub fn new() -> Self {
        ExactSum::default()
    }

    pub fn from_scalar(s: &ExactScalar) -> Self {
        let mut sum = ExactSum::new();
        sum.add(s);
        sum
    }

    pub fn add(&mut self, s: &ExactScalar) {
        if s.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(s.unit_key())
            .or_insert_with(BigRational::zero);
        *entry += s.rational_part();
        if entry.is_zero() {
            self.terms.remove(&s.unit_key());
        }
    }

    /// Adds `conj(a)·b`.
    pub fn add_conj_product(&mut self, a: &ExactScalar, b: &ExactScalar) {
        self.add(&a.conj().mul(b));
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the sum is certainly nonzero: a single term, or a sum of
    /// real terms all of one sign.
    pub fn is_provably_nonzero(&self) -> bool {
        if self.terms.is_empty() {
            return false;
        }
        if self.terms.len() == 1 {
            return true;
        }
        let all_real = self.terms.keys().all(|&(_, n, _)| n == 1);
        if !all_real {
            return false;
        }
        let all_pos = self.terms.values().all(|c| c.is_positive());
        let all_neg = self.terms.values().all(|c| c.is_negative());
        all_pos || all_neg
    }

    /// The sum as a single scalar, when it has at most one term.
    pub fn as_scalar(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 => {
                let (&(r, n, k), coeff) = self.terms.iter().next().unwrap();
                Some(ExactScalar::new(coeff.clone(), r, n, k))
            }
            _ => None,
        }
    }

    /// The sum as an exact rational, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (&(r, n, _), coeff) = self.terms.iter().next().unwrap();
                (r == 1 && n == 1).then(|| coeff.clone())
            }
            _ => None,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(r, n, k), coeff)| {
                ExactScalar::new(coeff.clone(), r, n, k).to_c64()
            })
            .sum()
    }
}

impl fmt::Display for ExactSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(r, n, k), coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", ExactScalar::new(coeff.clone(), r, n, k))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_factors_fold_into_the_rational() {
        // 1/√2 · 1/√2 = 1/2
        let a = ExactScalar::inv_sqrt(2);
        let p = a.mul(&a);
        assert_eq!(p, ExactScalar::ratio(1, 2));
        // 1/√12 = (1/2)·1/√3
        let b = ExactScalar::inv_sqrt(12);
        assert_eq!(b, ExactScalar::ratio(1, 2).mul(&ExactScalar::inv_sqrt(3)));
    }

    #[test]
    fn order_two_phase_becomes_a_sign() {
        let m1 = ExactScalar::root_of_unity(2, 1);
        assert_eq!(m1, ExactScalar::from_int(-1));
        let w4 = ExactScalar::root_of_unity(4, 1);
        assert_eq!(w4.mul(&w4), ExactScalar::from_int(-1));
        assert_eq!(w4.mul(&w4).mul(&w4).mul(&w4), ExactScalar::one());
    }

    #[test]
    fn phase_reduction_is_canonical() {
        // ω_8^2 = ω_4
        assert_eq!(
            ExactScalar::root_of_unity(8, 2),
            ExactScalar::root_of_unity(4, 1)
        );
        // ω_27^27 = 1
        assert_eq!(ExactScalar::root_of_unity(27, 27), ExactScalar::one());
    }

    #[test]
    fn conjugate_flips_the_phase() {
        let w = ExactScalar::root_of_unity(27, 5);
        assert_eq!(w.conj(), ExactScalar::root_of_unity(27, 22));
        assert!(w.mul(&w.conj()).is_one());
    }

    #[test]
    fn abs_sq_is_rational() {
        let a = ExactScalar::ratio(1, 1)
            .mul(&ExactScalar::inv_sqrt(3))
            .mul(&ExactScalar::root_of_unity(9, 4));
        assert_eq!(a.abs_sq(), big_ratio(1, 3));
    }

    #[test]
    fn zero_iff_rational_zero() {
        assert!(ExactScalar::ratio(0, 5).is_zero());
        assert!(!ExactScalar::inv_sqrt(7).is_zero());
        assert!(ExactScalar::zero().mul(&ExactScalar::inv_sqrt(2)).is_zero());
    }

    #[test]
    fn float_rendering_matches_known_values() {
        let half_i = ExactScalar::ratio(1, 2).mul(&ExactScalar::root_of_unity(4, 1));
        let v = half_i.to_c64();
        assert!((v.re - 0.0).abs() < 1e-15 && (v.im - 0.5).abs() < 1e-15);
        let r = ExactScalar::inv_sqrt(2).to_c64();
        assert!((r.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn sum_groups_by_unit_and_cancels_rationally() {
        let mut s = ExactSum::new();
        s.add(&ExactScalar::inv_sqrt(2));
        s.add(&ExactScalar::inv_sqrt(2).neg());
        assert!(s.is_zero());

        let mut t = ExactSum::new();
        t.add(&ExactScalar::inv_sqrt(2));
        t.add(&ExactScalar::inv_sqrt(3));
        assert_eq!(t.n_terms(), 2);
        assert!(t.is_provably_nonzero());
        t.add(&ExactScalar::root_of_unity(3, 1));
        assert!(!t.is_provably_nonzero());
    }

    #[test]
    fn product_rendering_matches_rendered_product() {
        let cases = [
            ExactScalar::ratio(3, 7).mul(&ExactScalar::inv_sqrt(5)),
            ExactScalar::root_of_unity(12, 5),
            ExactScalar::ratio(-2, 3).mul(&ExactScalar::root_of_unity(9, 7)),
            ExactScalar::inv_sqrt(8),
        ];
        for a in &cases {
            for b in &cases {
                let lhs = a.mul(b).to_c64();
                let rhs = a.to_c64() * b.to_c64();
                assert!((lhs - rhs).norm() <= 1e-12, "{a} * {b}");
            }
        }
    }
}
