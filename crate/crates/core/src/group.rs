//! The cyclic group `C_{r,a} = <diag(ε, ε^a)>` and its characters.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Validated parameters of a small cyclic subgroup `C_{r,a}` of `GL(2, C)`.
///
/// Invariants: `r >= 2`, `1 <= a < r` and `gcd(r, a) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupParams {
    r: u32,
    a: u32,
}

/// Index `i` of the irreducible representation `ρ_i`, reduced mod `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharIndex(pub u32);

/// The element `g^k`, reduced mod `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub u32);

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Validates `(r, a)` and reduces `a` mod `r`.
pub fn make_group(r: i64, a: i64) -> Result<GroupParams> {
    if r <= 1 {
        return Err(Error::TrivialGroup { r });
    }
    let reduced = a.rem_euclid(r);
    if reduced == 0 {
        return Err(Error::BadExponent { r, a });
    }
    let g = gcd(r, reduced);
    if g != 1 {
        return Err(Error::NotSmall { r, a, gcd: g });
    }
    let r = u32::try_from(r).map_err(|_| Error::TrivialGroup { r })?;
    Ok(GroupParams { r, a: reduced as u32 })
}

impl GroupParams {
    pub fn new(r: i64, a: i64) -> Result<Self> {
        make_group(r, a)
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn exponent(&self) -> u32 {
        self.a
    }

    /// `det diag(ε, ε^a) = ε^{1+a}` is trivial.
    pub fn is_in_sl2(&self) -> bool {
        (1 + self.a).is_multiple_of(self.r)
    }

    pub fn char_index(&self, i: i64) -> CharIndex {
        CharIndex(i.rem_euclid(self.r as i64) as u32)
    }

    /// The absolute weight `m + a n` of `x^m y^n`.
    pub fn weight(&self, m: u32, n: u32) -> u64 {
        m as u64 + self.a as u64 * n as u64
    }

    /// Character of `x^m y^n` for non-negative exponents.
    pub fn character(&self, m: u32, n: u32) -> CharIndex {
        CharIndex((self.weight(m, n) % self.r as u64) as u32)
    }

    /// Character of `x^m y^n`, rejecting negative exponents.
    pub fn monomial_character(&self, m: i64, n: i64) -> Result<CharIndex> {
        if m < 0 || n < 0 {
            return Err(Error::NegativeExponent { m, n });
        }
        let r = self.r as i64;
        Ok(CharIndex(((m % r + (self.a as i64) * (n % r)) % r) as u32))
    }

    /// Character of a Laurent exponent vector; used for dual-lattice membership.
    pub fn laurent_character(&self, w: [i64; 2]) -> CharIndex {
        self.char_index(w[0] + self.a as i64 * w[1])
    }

    pub fn element(&self, k: i64) -> GroupElement {
        GroupElement(k.rem_euclid(self.r as i64) as u32)
    }

    /// `age(g^k) = (<k> + <a k>) / r` with `<.>` the residue in `[0, r)`.
    pub fn age(&self, g: GroupElement) -> Ratio<u32> {
        let k = g.0 % self.r;
        let ak = ((self.a as u64 * k as u64) % self.r as u64) as u32;
        Ratio::new(k + ak, self.r)
    }

    /// Characters acting on the coordinates `x` and `y`.
    pub fn natural_rep_summands(&self) -> (CharIndex, CharIndex) {
        (CharIndex(1 % self.r), CharIndex(self.a))
    }

    /// The inverse `a'` of `a` mod `r`, so that `C_{r,a'}` is `C_{r,a}` with axes swapped.
    pub fn inverse_exponent(&self) -> u32 {
        (1..self.r)
            .find(|&b| (self.a as u64 * b as u64) % self.r as u64 == 1)
            .expect("a is a unit mod r")
    }

    pub fn characters(&self) -> impl Iterator<Item = CharIndex> {
        (0..self.r).map(CharIndex)
    }

    pub fn nontrivial_characters(&self) -> impl Iterator<Item = CharIndex> {
        (1..self.r).map(CharIndex)
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{})", self.r, self.a)
    }
}

impl CharIndex {
    pub fn is_trivial(&self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for CharIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ρ{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn construction() {
        let g = make_group(7, 3).unwrap();
        assert_eq!((g.order(), g.exponent()), (7, 3));
        assert_eq!(make_group(7, 10).unwrap(), g);
        assert_eq!(make_group(7, -4).unwrap(), g);
        assert!(matches!(make_group(6, 3), Err(Error::NotSmall { gcd: 3, .. })));
        assert!(matches!(make_group(1, 1), Err(Error::TrivialGroup { .. })));
        assert!(matches!(make_group(0, 1), Err(Error::TrivialGroup { .. })));
        assert!(matches!(make_group(7, 14), Err(Error::BadExponent { .. })));
    }

    #[test]
    fn sl2_membership() {
        assert!(make_group(7, 6).unwrap().is_in_sl2());
        assert!(!make_group(7, 3).unwrap().is_in_sl2());
        assert!(make_group(2, 1).unwrap().is_in_sl2());
    }

    #[test]
    fn characters_of_monomials() {
        let g = make_group(7, 3).unwrap();
        assert_eq!(g.monomial_character(1, 1).unwrap(), CharIndex(4));
        assert_eq!(g.monomial_character(3, 1).unwrap(), CharIndex(6));
        assert_eq!(g.monomial_character(0, 0).unwrap(), CharIndex(0));
        assert_eq!(g.weight(3, 1), 6);
        assert_eq!(g.weight(1, 2), 7);
        assert!(matches!(
            g.monomial_character(-1, 0),
            Err(Error::NegativeExponent { .. })
        ));
    }

    #[test]
    fn ages() {
        let g = make_group(7, 3).unwrap();
        assert_eq!(g.age(g.element(0)), Ratio::from_integer(0));
        assert_eq!(g.age(g.element(2)), Ratio::new(8, 7));
        let a1 = make_group(2, 1).unwrap();
        assert_eq!(a1.age(a1.element(1)), Ratio::from_integer(1));
    }

    #[test]
    fn natural_summands() {
        let pairs = [((7, 3), (1, 3)), ((2, 1), (1, 1)), ((4, 1), (1, 1))];
        for ((r, a), (c1, c2)) in pairs {
            let g = make_group(r, a).unwrap();
            assert_eq!(g.natural_rep_summands(), (CharIndex(c1), CharIndex(c2)));
        }
    }

    fn small_group() -> impl Strategy<Value = GroupParams> {
        (2i64..80, 1i64..80).prop_filter_map("not small", |(r, a)| make_group(r, a).ok())
    }

    proptest! {
        #[test]
        fn age_pairs_sum_to_two(g in small_group(), k in 1i64..80) {
            prop_assume!(k % g.order() as i64 != 0);
            let sum = g.age(g.element(k)) + g.age(g.element(-k));
            prop_assert_eq!(sum, Ratio::from_integer(2));
        }

        #[test]
        fn sl2_iff_all_ages_one(g in small_group()) {
            let all_one = (1..g.order() as i64)
                .all(|k| g.age(g.element(k)) == Ratio::from_integer(1));
            prop_assert_eq!(g.is_in_sl2(), all_one);
        }

        #[test]
        fn character_is_additive(g in small_group(), m1 in 0u32..200, n1 in 0u32..200, m2 in 0u32..200, n2 in 0u32..200) {
            let lhs = g.character(m1 + m2, n1 + n2);
            let rhs = g.char_index(g.character(m1, n1).0 as i64 + g.character(m2, n2).0 as i64);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pure_r_th_powers_are_invariant(g in small_group()) {
            prop_assert!(g.character(g.order(), 0).is_trivial());
            prop_assert!(g.character(0, g.order()).is_trivial());
        }

        #[test]
        fn inverse_exponent_is_inverse(g in small_group()) {
            let b = g.inverse_exponent() as u64;
            prop_assert_eq!((g.exponent() as u64 * b) % g.order() as u64, 1 % g.order() as u64);
        }
    }
}
