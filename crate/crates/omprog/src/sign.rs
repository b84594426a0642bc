//! Sign algebra and sign vectors over a fixed ground set.
//!
//! Elements of the ground set are indices `0..n`. Sign vectors are stored in
//! a canonical fixed element order, so sorting and equality are well defined
//! and deterministic everywhere downstream.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use crate::error::{OmError, Result};

/// One of `-`, `0`, `+` with the order `- < 0 < +`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(i8)]
pub enum Sign {
    Minus = -1,
    Zero = 0,
    Plus = 1,
}

impl Sign {
    /// Composition: keeps `self` unless it is zero.
    #[inline]
    pub fn compose(self, other: Sign) -> Sign {
        if self == Sign::Zero {
            other
        } else {
            self
        }
    }

    /// Multiplication of signs.
    #[inline]
    pub fn times(self, other: Sign) -> Sign {
        Sign::from_i8((self as i8) * (other as i8))
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    #[inline]
    pub fn from_i8(v: i8) -> Sign {
        match v.signum() {
            -1 => Sign::Minus,
            0 => Sign::Zero,
            _ => Sign::Plus,
        }
    }

    #[inline]
    pub fn of_i64(v: i64) -> Sign {
        match v.signum() {
            -1 => Sign::Minus,
            0 => Sign::Zero,
            _ => Sign::Plus,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Zero => '0',
            Sign::Plus => '+',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '-' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Plus),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
            Sign::Plus => Sign::Minus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A subset of the ground set, stored as a bitmask. Ground sets are capped at
/// 32 elements, far above the instance sizes this library targets.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElemSet(pub u32);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn full(n: usize) -> ElemSet {
        debug_assert!(n <= 32);
        if n == 32 {
            ElemSet(u32::MAX)
        } else {
            ElemSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> ElemSet {
        ElemSet(1u32 << e)
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        self.0 & (1u32 << e) != 0
    }

    #[inline]
    pub fn with(self, e: usize) -> ElemSet {
        ElemSet(self.0 | (1u32 << e))
    }

    #[inline]
    pub fn without(self, e: usize) -> ElemSet {
        ElemSet(self.0 & !(1u32 << e))
    }

    #[inline]
    pub fn union(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 | o.0)
    }

    #[inline]
    pub fn inter(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 & o.0)
    }

    #[inline]
    pub fn minus(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 & !o.0)
    }

    #[inline]
    pub fn is_subset(self, o: ElemSet) -> bool {
        self.0 & !o.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = ElemSet::EMPTY;
        for e in iter {
            s = s.with(e);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for e in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// A sign vector over the ground set `0..len()`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector {
    signs: Vec<Sign>,
}

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> SignVector {
        SignVector { signs }
    }

    pub fn zero(n: usize) -> SignVector {
        SignVector {
            signs: vec![Sign::Zero; n],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    #[inline]
    pub fn get(&self, e: usize) -> Sign {
        self.signs[e]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn is_zero(&self) -> bool {
        self.signs.iter().all(|s| s.is_zero())
    }

    fn check_ground(&self, other: &SignVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(OmError::GroundMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// Composition `X o Y`: coordinate of `X` unless zero, else of `Y`.
    pub fn compose(&self, other: &SignVector) -> Result<SignVector> {
        self.check_ground(other)?;
        Ok(SignVector {
            signs: self
                .signs
                .iter()
                .zip(&other.signs)
                .map(|(&a, &b)| a.compose(b))
                .collect(),
        })
    }

    /// Separation set: elements where the vectors carry opposite nonzero signs.
    pub fn separation(&self, other: &SignVector) -> Result<ElemSet> {
        self.check_ground(other)?;
        let mut s = ElemSet::EMPTY;
        for (e, (&a, &b)) in self.signs.iter().zip(&other.signs).enumerate() {
            if !a.is_zero() && b == -a {
                s = s.with(e);
            }
        }
        Ok(s)
    }

    /// Conformal means the separation set is empty.
    pub fn conformal(&self, other: &SignVector) -> Result<bool> {
        Ok(self.separation(other)?.is_empty())
    }

    pub fn support(&self) -> ElemSet {
        self.signs
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(e, _)| e)
            .collect()
    }

    pub fn zero_set(&self) -> ElemSet {
        ElemSet::full(self.len()).minus(self.support())
    }

    pub fn pos_set(&self) -> ElemSet {
        self.signs
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Sign::Plus)
            .map(|(e, _)| e)
            .collect()
    }

    pub fn neg_set(&self) -> ElemSet {
        self.signs
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Sign::Minus)
            .map(|(e, _)| e)
            .collect()
    }

    pub fn negated(&self) -> SignVector {
        SignVector {
            signs: self.signs.iter().map(|&s| -s).collect(),
        }
    }

    /// Restriction to the listed elements, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> SignVector {
        SignVector {
            signs: keep.iter().map(|&e| self.signs[e]).collect(),
        }
    }

    /// Copy with one extra coordinate appended.
    pub fn extended(&self, s: Sign) -> SignVector {
        let mut signs = self.signs.clone();
        signs.push(s);
        SignVector { signs }
    }

    /// Copy with the listed coordinates negated.
    pub fn reoriented(&self, flip: ElemSet) -> SignVector {
        SignVector {
            signs: self
                .signs
                .iter()
                .enumerate()
                .map(|(e, &s)| if flip.contains(e) { -s } else { s })
                .collect(),
        }
    }

    /// The member of `{X, -X}` whose first nonzero coordinate is `+`.
    pub fn canonical_representative(&self) -> SignVector {
        match self.signs.iter().find(|s| !s.is_zero()) {
            Some(Sign::Minus) => self.negated(),
            _ => self.clone(),
        }
    }
}

impl Neg for &SignVector {
    type Output = SignVector;
    fn neg(self) -> SignVector {
        self.negated()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SignVector {
    type Err = OmError;

    fn from_str(s: &str) -> Result<SignVector> {
        let mut signs = Vec::with_capacity(s.len());
        for c in s.chars() {
            match Sign::from_char(c) {
                Some(v) => signs.push(v),
                None => {
                    return Err(OmError::Parse {
                        line: 0,
                        msg: format!("invalid sign character {c:?}"),
                    })
                }
            }
        }
        Ok(SignVector { signs })
    }
}
