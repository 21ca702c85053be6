//! Exact 2-adic valuations of qⁱ − 1 for odd prime powers q, and the
//! identities among them that the torsion-order schedules rely on.
//!
//! For odd q and even i, ν₂(qⁱ − 1) = ν₂(q² − 1) + ν₂(i/2) stays well
//! below 64, so wrapping u64 exponentiation preserves the trailing-zero
//! count and no big-integer arithmetic is needed.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("q must be odd, got {0}")]
    EvenInput(u64),
    #[error("q must be at least 3, got {0}")]
    TooSmall(u64),
}

/// 2-adic valuation ν₂(n) of a nonzero integer.
pub fn nu2(n: u64) -> u32 {
    assert!(n != 0, "nu2 of zero is undefined");
    n.trailing_zeros()
}

/// ν₂(qⁱ − 1) for odd q ≥ 3, computed with wrapping arithmetic.
pub fn nu2_of_power_minus_one(q: u64, i: u32) -> Result<u32, ArithError> {
    if q % 2 == 0 {
        return Err(ArithError::EvenInput(q));
    }
    if q < 3 {
        return Err(ArithError::TooSmall(q));
    }
    let mut acc: u64 = 1;
    for _ in 0..i {
        acc = acc.wrapping_mul(q);
    }
    let v = acc.wrapping_sub(1);
    assert!(v != 0, "valuation would exceed the word size");
    Ok(nu2(v))
}

/// The four exponents r_i = ν₂(qⁱ − 1) that control the torsion orders,
/// for the i that actually occur (2, 4, 6, 14).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorsionExponents {
    pub q: u64,
    pub r2: u32,
    pub r4: u32,
    pub r6: u32,
    pub r14: u32,
}

impl TorsionExponents {
    pub fn new(q: u64) -> Result<TorsionExponents, ArithError> {
        Ok(TorsionExponents {
            q,
            r2: nu2_of_power_minus_one(q, 2)?,
            r4: nu2_of_power_minus_one(q, 4)?,
            r6: nu2_of_power_minus_one(q, 6)?,
            r14: nu2_of_power_minus_one(q, 14)?,
        })
    }

    /// Checks the identities r₂ = r₆ = r₁₄, r₄ = r₂ + 1, and
    /// r₂ = ν₂(k) + 3 where q = 4k ± 1. Returns the first violated
    /// identity as text.
    pub fn verify_identities(&self) -> Result<(), String> {
        if self.r6 != self.r2 {
            return Err(format!("r6 = {} but r2 = {}", self.r6, self.r2));
        }
        if self.r14 != self.r2 {
            return Err(format!("r14 = {} but r2 = {}", self.r14, self.r2));
        }
        if self.r4 != self.r2 + 1 {
            return Err(format!("r4 = {} but r2 + 1 = {}", self.r4, self.r2 + 1));
        }
        let k = if self.q % 4 == 1 {
            (self.q - 1) / 4
        } else {
            (self.q + 1) / 4
        };
        if k == 0 {
            return Err(format!("q = {} is not 4k ± 1 with k ≥ 1", self.q));
        }
        if nu2(k) + 3 != self.r2 {
            return Err(format!(
                "q = 4k±1 with k = {k} gives nu2(k) + 3 = {}, but r2 = {}",
                nu2(k) + 3,
                self.r2
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_odd_values_are_classical() {
        let t3 = TorsionExponents::new(3).unwrap();
        assert_eq!((t3.r2, t3.r4, t3.r6, t3.r14), (3, 4, 3, 3));
        let t5 = TorsionExponents::new(5).unwrap();
        assert_eq!((t5.r2, t5.r4, t5.r6, t5.r14), (3, 4, 3, 3));
        let t7 = TorsionExponents::new(7).unwrap();
        assert_eq!((t7.r2, t7.r4, t7.r6, t7.r14), (4, 5, 4, 4));
        let t9 = TorsionExponents::new(9).unwrap();
        assert_eq!(t9.r2, nu2(80));
    }

    #[test]
    fn valuations_match_direct_division_in_range() {
        for q in (3u64..200).step_by(2) {
            let direct = {
                let mut n = q * q - 1;
                let mut v = 0;
                while n % 2 == 0 {
                    n /= 2;
                    v += 1;
                }
                v
            };
            assert_eq!(nu2_of_power_minus_one(q, 2).unwrap(), direct, "q = {q}");
        }
    }

    #[test]
    fn identities_hold_for_every_odd_q_up_to_a_thousand() {
        for q in (3u64..=999).step_by(2) {
            let t = TorsionExponents::new(q).unwrap();
            t.verify_identities()
                .unwrap_or_else(|e| panic!("q = {q}: {e}"));
        }
    }

    #[test]
    fn even_and_degenerate_inputs_are_rejected() {
        assert_eq!(TorsionExponents::new(4), Err(ArithError::EvenInput(4)));
        assert_eq!(TorsionExponents::new(1), Err(ArithError::TooSmall(1)));
        assert_eq!(nu2_of_power_minus_one(0, 2), Err(ArithError::EvenInput(0)));
    }

    #[test]
    fn large_q_does_not_overflow_the_valuation() {
        // q^14 wraps u64 many times over; the trailing-zero count must
        // still match the LTE prediction nu2(q^2 - 1) + nu2(7).
        let q = 9999u64;
        let t = TorsionExponents::new(q).unwrap();
        assert_eq!(t.r14, t.r2);
        t.verify_identities().unwrap();
    }

    proptest! {
        #[test]
        fn identities_hold_for_random_odd_q(k in 1u64..1_000_000) {
            let q = 2 * k + 1;
            let t = TorsionExponents::new(q).unwrap();
            prop_assert!(t.verify_identities().is_ok());
        }

        #[test]
        fn lte_controls_higher_powers(k in 1u64..100_000, e in 1u32..5) {
            let q = 2 * k + 1;
            let i = 2u32.pow(e);
            let got = nu2_of_power_minus_one(q, i).unwrap();
            let base = nu2_of_power_minus_one(q, 2).unwrap();
            prop_assert_eq!(got, base + (e - 1));
        }
    }
}
