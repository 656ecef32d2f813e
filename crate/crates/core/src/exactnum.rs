//! Exact arithmetic over Q-linear combinations of square roots.
//!
//! An [`ExactReal`] is a finite sum `Σ qₘ·√m` where every radicand `m` is a
//! squarefree positive integer and every coefficient `qₘ` is a nonzero
//! arbitrary-precision rational. The radicand 1 holds the rational part.
//! Because square roots of distinct squarefree integers are linearly
//! independent over Q, this representation is canonical: two values are
//! mathematically equal if and only if their term maps are identical, and a
//! value is zero if and only if the map is empty. Every comparison and
//! every zero test in the engine leans on that uniqueness.
//!
//! The field operations stay inside the representation (products of square
//! roots re-split into square × squarefree parts; division rationalizes the
//! denominator by repeated conjugation), so no precision is ever lost.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision rational: always gcd-reduced with a positive
/// denominator, and zero is canonically 0/1.
pub type Rational = Ratio<BigInt>;

/// Shorthand constructor for a rational from machine integers.
///
/// Panics if `q == 0`; intended for literals in code and tests.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand constructor for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

// ======================================================================
// Errors
// ======================================================================

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("square root of negative value {0}")]
    NegativeSqrt(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no exact square root in the radical domain for {0}")]
    UnrepresentableRoot(String),
}

// ======================================================================
// ExactReal
// ======================================================================

/// An exact real number of the form `Σ qₘ·√m` (squarefree `m`, rational `qₘ`).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExactReal {
    /// radicand → coefficient; radicand 1 is the rational part.
    /// Invariants: every key squarefree, every value nonzero.
    terms: BTreeMap<BigUint, Rational>,
}

impl ExactReal {
    pub fn zero() -> Self {
        ExactReal::default()
    }

    pub fn one() -> Self {
        ExactReal::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        ExactReal::from_rational(int(n))
    }

    /// `p/q` as an exact value. Panics if `q == 0` (literal helper).
    pub fn from_ratio(p: i64, q: i64) -> Self {
        ExactReal::from_rational(rat(p, q))
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(BigUint::one(), r);
        }
        ExactReal { terms }
    }

    /// A single term `q·√m`. The radicand is normalized to squarefree form.
    pub fn radical(coeff: Rational, radicand: u64) -> Self {
        let mut out = ExactReal::zero();
        if coeff.is_zero() {
            return out;
        }
        let (outside, core) = squarefree_split(BigUint::from(radicand));
        let c = coeff * Rational::from_integer(BigInt::from(outside));
        if !c.is_zero() {
            out.terms.insert(core, c);
        }
        out
    }

    /// `√n` for a machine integer, e.g. `sqrt_int(12) = 2·√3`.
    pub fn sqrt_int(n: u64) -> Self {
        ExactReal::radical(Rational::one(), n)
    }

    /// Exact square root of a nonnegative rational:
    /// `√(p/q) = √(p·q)/q` with the square part extracted.
    pub fn sqrt_of(r: &Rational) -> Result<Self, NumError> {
        if r.is_negative() {
            return Err(NumError::NegativeSqrt(r.to_string()));
        }
        if r.is_zero() {
            return Ok(ExactReal::zero());
        }
        let p = r.numer().to_biguint().expect("checked nonnegative");
        let q = r.denom().to_biguint().expect("positive denominator");
        let (outside, core) = squarefree_split(&p * &q);
        let coeff = Rational::new(BigInt::from(outside), BigInt::from(q));
        let mut terms = BTreeMap::new();
        terms.insert(core, coeff);
        Ok(ExactReal { terms })
    }

    /// Exact square root of this value, when one exists in the domain.
    ///
    /// Succeeds when the value is a nonnegative rational (`√` of it is a
    /// single radical term) and fails otherwise — roots of sums of radicals
    /// would need nested radicals, which the representation excludes.
    pub fn sqrt(&self) -> Result<Self, NumError> {
        match self.as_rational() {
            Some(r) => ExactReal::sqrt_of(&r),
            None => Err(NumError::UnrepresentableRoot(self.to_string())),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// `Some(r)` when the value has no radical part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, q) = self.terms.iter().next().expect("len checked");
                if m.is_one() {
                    Some(q.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// The terms as (radicand, coefficient) pairs in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &Rational)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, radicand: BigUint, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(radicand) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    /// Exact division. Rationalizes the denominator by conjugating away one
    /// prime at a time: writing `b = X + √p·Y` (with `p` a prime dividing
    /// some radicand of `b`), `b·(X − √p·Y) = X² − p·Y²` contains strictly
    /// fewer primes, and linear independence of the radicals guarantees the
    /// conjugate product is nonzero whenever `b` is.
    pub fn checked_div(&self, rhs: &ExactReal) -> Result<ExactReal, NumError> {
        if rhs.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let mut num = self.clone();
        let mut den = rhs.clone();
        while den.as_rational().is_none() {
            let radicand = den
                .terms
                .keys()
                .find(|m| !m.is_one())
                .expect("non-rational value has a radical term")
                .clone();
            let p = smallest_prime_factor(&radicand);
            // Terms whose radicand is divisible by p, i.e. the √p·Y part.
            let mut pdiv = ExactReal::zero();
            for (m, q) in &den.terms {
                if (m % &p).is_zero() {
                    pdiv.insert_term(m.clone(), q.clone());
                }
            }
            let conj = &den - &(&pdiv + &pdiv); // X − √p·Y
            num = &num * &conj;
            den = &den * &conj;
            debug_assert!(
                den.terms.keys().all(|m| !(m % &p).is_zero()),
                "conjugation must eliminate the chosen prime"
            );
        }
        let d = den.as_rational().expect("loop exits on rational");
        if d.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let inv = Rational::one() / d;
        let mut out = ExactReal::zero();
        for (m, q) in &num.terms {
            out.insert_term(m.clone(), q * &inv);
        }
        Ok(out)
    }

    /// Total order on the represented real numbers.
    ///
    /// Structural equality decides `Equal` outright (the form is canonical);
    /// otherwise the sign of the difference is determined by interval
    /// arithmetic, doubling the working precision until the interval clears
    /// zero. A canonical nonzero value is a nonzero algebraic number, so it
    /// is bounded away from zero and the refinement terminates.
    pub fn compare(&self, other: &ExactReal) -> Ordering {
        let diff = self - other;
        if diff.is_zero() {
            return Ordering::Equal;
        }
        let mut bits = 64u32;
        loop {
            let (lo, hi) = diff.interval(bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    /// Rational interval `[lo, hi]` guaranteed to contain the value,
    /// with each radical bounded to `bits` fractional bits.
    fn interval(&self, bits: u32) -> (Rational, Rational) {
        let scale = BigInt::from(1u8) << bits;
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (m, q) in &self.terms {
            if m.is_one() {
                lo += q;
                hi += q;
                continue;
            }
            // floor(√m · 2^bits) via integer sqrt of m · 2^(2·bits)
            let shifted = m << (2 * bits);
            let root = BigInt::from(shifted.sqrt());
            let r_lo = Rational::new(root.clone(), scale.clone());
            let r_hi = Rational::new(root + 1, scale.clone());
            if q.is_positive() {
                lo += q * &r_lo;
                hi += q * &r_hi;
            } else {
                lo += q * &r_hi;
                hi += q * &r_lo;
            }
        }
        (lo, hi)
    }

    /// Nearest-double approximation, computed from a 128-bit interval
    /// midpoint so cancellation between terms cannot poison the result.
    pub fn to_float(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (lo, hi) = self.interval(128);
        let mid = (lo + hi) / int(2);
        mid.to_f64().expect("finite by construction")
    }

    pub fn abs(&self) -> ExactReal {
        if self.compare(&ExactReal::zero()) == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, n: u32) -> ExactReal {
        let mut out = ExactReal::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

// ======================================================================
// Squarefree decomposition
// ======================================================================

/// `n = outside² · core` with `core` squarefree; returns `(outside, core)`.
fn squarefree_split(n: BigUint) -> (BigUint, BigUint) {
    assert!(!n.is_zero(), "radicand must be positive");
    let mut n = n;
    let mut outside = BigUint::one();
    let mut core = BigUint::one();
    let mut d = 2u64;
    loop {
        let big_d = BigUint::from(d);
        if &big_d * &big_d > n {
            break;
        }
        if (&n % &big_d).is_zero() {
            let mut e = 0u32;
            while (&n % &big_d).is_zero() {
                n /= &big_d;
                e += 1;
            }
            outside *= big_d.pow(e / 2);
            if e % 2 == 1 {
                core *= &big_d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        core *= n; // leftover prime
    }
    (outside, core)
}

fn smallest_prime_factor(n: &BigUint) -> BigUint {
    let mut d = 2u64;
    loop {
        let big_d = BigUint::from(d);
        if &big_d * &big_d > *n {
            return n.clone();
        }
        if (n % &big_d).is_zero() {
            return big_d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
}

// ======================================================================
// Operators
// ======================================================================

impl Add for &ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: &ExactReal) -> ExactReal {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.insert_term(m.clone(), q.clone());
        }
        out
    }
}

impl Sub for &ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: &ExactReal) -> ExactReal {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.insert_term(m.clone(), -q.clone());
        }
        out
    }
}

impl Mul for &ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: &ExactReal) -> ExactReal {
        let mut out = ExactReal::zero();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &rhs.terms {
                // √m1·√m2 = g·√((m1/g)(m2/g)) with g = gcd; the product of
                // the cofactors is automatically squarefree.
                let g = m1.gcd(m2);
                let rad = (m1 / &g) * (m2 / &g);
                let coeff = q1 * q2 * Rational::from_integer(BigInt::from(g));
                out.insert_term(rad, coeff);
            }
        }
        out
    }
}

impl Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        let mut out = ExactReal::zero();
        for (m, q) in &self.terms {
            out.terms.insert(m.clone(), -q.clone());
        }
        out
    }
}

/// Panicking division for expression-building convenience; use
/// [`ExactReal::checked_div`] where the divisor may be zero.
impl Div for &ExactReal {
    type Output = ExactReal;
    fn div(self, rhs: &ExactReal) -> ExactReal {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned_binop {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: ExactReal) -> ExactReal {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_owned_binop!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        -&self
    }
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

// ======================================================================
// Rendering
// ======================================================================

/// Canonical text form: terms in ascending radicand order, rational part
/// first — `"6 + 6*sqrt(3)"`, `"sqrt(3)/2"`, `"2*sqrt(37)"`, `"-1/2"`.
impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let p = q.numer().abs();
            let d = q.denom();
            if m.is_one() {
                write!(f, "{}", p)?;
                if !d.is_one() {
                    write!(f, "/{}", d)?;
                }
            } else {
                if !p.is_one() {
                    write!(f, "{}*", p)?;
                }
                write!(f, "sqrt({})", m)?;
                if !d.is_one() {
                    write!(f, "/{}", d)?;
                }
            }
        }
        Ok(())
    }
}

// ======================================================================
// Tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(n: u64) -> ExactReal {
        ExactReal::sqrt_int(n)
    }

    #[test]
    fn sqrt_extracts_square_factors() {
        assert_eq!(sqrt(12), ExactReal::radical(int(2), 3));
        assert_eq!(sqrt(8), ExactReal::radical(int(2), 2));
        assert_eq!(sqrt(1), ExactReal::one());
        assert_eq!(sqrt(49), ExactReal::from_int(7));
        // oracle: (2·√37)² = 4·37 = 148
        let r = sqrt(148);
        assert_eq!(r, ExactReal::radical(int(2), 37));
        assert_eq!(&r * &r, ExactReal::from_int(148));
    }

    #[test]
    fn sqrt_of_rational_clears_denominator() {
        // √(9/4) = 3/2
        assert_eq!(
            ExactReal::sqrt_of(&rat(9, 4)).unwrap(),
            ExactReal::from_ratio(3, 2)
        );
        // √(1/2) = √2/2
        assert_eq!(
            ExactReal::sqrt_of(&rat(1, 2)).unwrap(),
            ExactReal::radical(rat(1, 2), 2)
        );
        // √(3/4) = √3/2
        assert_eq!(
            ExactReal::sqrt_of(&rat(3, 4)).unwrap(),
            ExactReal::radical(rat(1, 2), 3)
        );
    }

    #[test]
    fn sqrt_of_negative_is_rejected() {
        assert!(matches!(
            ExactReal::sqrt_of(&int(-3)),
            Err(NumError::NegativeSqrt(_))
        ));
    }

    #[test]
    fn products_of_radicals_recombine() {
        // √2·√3 = √6
        assert_eq!(&sqrt(2) * &sqrt(3), sqrt(6));
        // √6·√10 = 2·√15
        assert_eq!(&sqrt(6) * &sqrt(10), ExactReal::radical(int(2), 15));
        // √3·√3 = 3
        assert_eq!(&sqrt(3) * &sqrt(3), ExactReal::from_int(3));
    }

    #[test]
    fn unit_hypotenuse_dot_product_is_one() {
        // (1/2)·(1/2) + (√3/2)·(√3/2) = 1
        let half = ExactReal::from_ratio(1, 2);
        let root3_half = ExactReal::radical(rat(1, 2), 3);
        let sum = &(&half * &half) + &(&root3_half * &root3_half);
        assert_eq!(sum, ExactReal::one());
    }

    #[test]
    fn division_rationalizes_denominator() {
        // 12 / (√3 − 1) = 6 + 6√3; oracle: multiply back.
        let twelve = ExactReal::from_int(12);
        let den = &sqrt(3) - &ExactReal::one();
        let q = twelve.checked_div(&den).unwrap();
        let expected = &ExactReal::from_int(6) + &ExactReal::radical(int(6), 3);
        assert_eq!(q, expected);
        assert_eq!(&q * &den, ExactReal::from_int(12));
    }

    #[test]
    fn division_handles_multi_radical_denominators() {
        // 1 / (√2 + √3 + √5): verified by multiplying back.
        let one = ExactReal::one();
        let den = &(&sqrt(2) + &sqrt(3)) + &sqrt(5);
        let q = one.checked_div(&den).unwrap();
        assert_eq!(&q * &den, ExactReal::one());
    }

    #[test]
    fn division_by_zero_is_rejected() {
        assert_eq!(
            ExactReal::one().checked_div(&ExactReal::zero()),
            Err(NumError::DivisionByZero)
        );
    }

    #[test]
    fn compare_separates_close_values() {
        // √2 + √3 = 3.1462… < √10 = 3.1622…
        let lhs = &sqrt(2) + &sqrt(3);
        assert_eq!(lhs.compare(&sqrt(10)), Ordering::Less);
        // 2√37 = 12.165… > 12 (148 > 144)
        assert_eq!(
            sqrt(148).compare(&ExactReal::from_int(12)),
            Ordering::Greater
        );
        assert_eq!(sqrt(2).compare(&sqrt(2)), Ordering::Equal);
    }

    #[test]
    fn to_float_matches_reference_values() {
        let v = &ExactReal::from_int(6) + &ExactReal::radical(int(6), 3);
        assert!((v.to_float() - 16.392304845413264).abs() < 1e-12);
        assert!((sqrt(148).to_float() - 12.165525060596439).abs() < 1e-12);
        assert_eq!(ExactReal::zero().to_float(), 0.0);
    }

    #[test]
    fn rendering_is_canonical() {
        let v = &ExactReal::from_int(6) + &ExactReal::radical(int(6), 3);
        assert_eq!(v.to_string(), "6 + 6*sqrt(3)");
        assert_eq!(ExactReal::radical(rat(1, 2), 3).to_string(), "sqrt(3)/2");
        assert_eq!(ExactReal::radical(int(2), 37).to_string(), "2*sqrt(37)");
        assert_eq!(ExactReal::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(ExactReal::zero().to_string(), "0");
        let mixed = &ExactReal::from_ratio(1, 2) - &ExactReal::radical(rat(3, 4), 5);
        assert_eq!(mixed.to_string(), "1/2 - 3*sqrt(5)/4");
    }

    #[test]
    fn exact_sqrt_of_rational_values_only() {
        let quarter = ExactReal::from_ratio(1, 4);
        assert_eq!(quarter.sqrt().unwrap(), ExactReal::from_ratio(1, 2));
        let nested = &ExactReal::from_int(25) + &ExactReal::radical(int(12), 3);
        assert!(matches!(
            nested.sqrt(),
            Err(NumError::UnrepresentableRoot(_))
        ));
    }
}
