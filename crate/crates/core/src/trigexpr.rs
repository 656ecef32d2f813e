//! A free commutative ring in sine/cosine indeterminates.
//!
//! For each angle symbol `a` there are two independent indeterminates,
//! `sin(a)` and `cos(a)`. Nothing relates them: `cos(a)^2 + sin(a)^2` and
//! `1` are *different* elements here, and [`TrigRational::expr_equals`]
//! says so. That is deliberate — the proof layer derives the Pythagorean
//! identity from geometry and certifies it as ideal membership, and any
//! built-in simplification between sin and cos would make those proofs
//! circular.
//!
//! The one place the relation `cos² + sin² = 1` is allowed to act is
//! [`ideal_reduce`], an explicit rewriting pass that returns the cofactors
//! it used, so callers can recompose and check its work. A thread-local
//! guard ([`FreeRingGuard`]) lets the proof layer assert that no reduction
//! runs while derivation steps are being produced.
//!
//! Scalar length symbols (side lengths like `a`, `b`, `c`) live in the
//! same ring so the sine-rule and cosine-rule formulas are ordinary
//! polynomial identities.

use crate::exactnum::{ExactReal, NumError};
use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

// ======================================================================
// Symbols and variables
// ======================================================================

/// A named angle, e.g. `a` in `sin(a)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AngleSymbol(String);

impl AngleSymbol {
    pub fn new(name: &str) -> Self {
        debug_assert!(
            !name.is_empty()
                && name.chars().next().unwrap().is_ascii_alphabetic()
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'),
            "angle symbol must be an identifier"
        );
        AngleSymbol(name.to_string())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AngleSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One indeterminate of the ring.
///
/// The derived order (all cosines, then all sines, then all scalar
/// lengths, each alphabetically) is the significance order of the
/// lexicographic monomial comparison. What matters for the membership
/// machinery is only that `Cos(a)` outranks `Sin(a)` for every angle:
/// that makes `cos(a)^2` the leading monomial of the generator
/// `cos(a)^2 + sin(a)^2 - 1`, and the generators' leading monomials are
/// pairwise coprime, so remainders of the rewriting pass are unique.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Cos(AngleSymbol),
    Sin(AngleSymbol),
    Len(String),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Cos(a) => write!(f, "cos({})", a),
            Var::Sin(a) => write!(f, "sin({})", a),
            Var::Len(n) => write!(f, "{}", n),
        }
    }
}

// ======================================================================
// Monomials
// ======================================================================

/// A power product of indeterminates; the empty product is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TrigMonomial {
    /// variable → exponent, every exponent ≥ 1.
    exps: BTreeMap<Var, u32>,
}

impl TrigMonomial {
    pub fn unit() -> Self {
        TrigMonomial::default()
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = TrigMonomial::unit();
        if e > 0 {
            m.exps.insert(v, e);
        }
        m
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree_of(&self, v: &Var) -> u32 {
        self.exps.get(v).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (&Var, u32)> {
        self.exps.iter().map(|(v, e)| (v, *e))
    }

    pub fn mul(&self, other: &TrigMonomial) -> TrigMonomial {
        let mut out = self.clone();
        for (v, e) in &other.exps {
            *out.exps.entry(v.clone()).or_insert(0) += e;
        }
        out
    }

    /// Exact monomial quotient, when `other` divides `self`.
    pub fn try_div(&self, other: &TrigMonomial) -> Option<TrigMonomial> {
        let mut out = self.clone();
        for (v, e) in &other.exps {
            match out.exps.get_mut(v) {
                Some(have) if *have >= *e => {
                    *have -= e;
                    if *have == 0 {
                        out.exps.remove(v);
                    }
                }
                _ => return None,
            }
        }
        Some(out)
    }
}

/// Pure lexicographic order: walk the variables in significance order and
/// let the first differing exponent decide (larger exponent wins).
impl Ord for TrigMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut lhs = self.exps.iter().peekable();
        let mut rhs = other.exps.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((lv, le)), Some((rv, re))) => match lv.cmp(rv) {
                    // The earlier variable is more significant; only the
                    // side that owns it has a positive exponent there.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if le != re {
                            return le.cmp(re);
                        }
                        lhs.next();
                        rhs.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for TrigMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// ======================================================================
// Polynomials
// ======================================================================

/// Polynomial with [`ExactReal`] coefficients in the free indeterminates.
/// Canonical: no zero coefficients are stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TrigPoly {
    terms: BTreeMap<TrigMonomial, ExactReal>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly::default()
    }

    pub fn one() -> Self {
        TrigPoly::constant(ExactReal::one())
    }

    pub fn constant(c: ExactReal) -> Self {
        let mut p = TrigPoly::zero();
        p.insert(TrigMonomial::unit(), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        TrigPoly::constant(ExactReal::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        let mut p = TrigPoly::zero();
        p.insert(TrigMonomial::var(v, 1), ExactReal::one());
        p
    }

    pub fn sin(a: &AngleSymbol) -> Self {
        TrigPoly::var(Var::Sin(a.clone()))
    }

    pub fn cos(a: &AngleSymbol) -> Self {
        TrigPoly::var(Var::Cos(a.clone()))
    }

    pub fn length(name: &str) -> Self {
        TrigPoly::var(Var::Len(name.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<ExactReal> {
        match self.terms.len() {
            0 => Some(ExactReal::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("len checked");
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&TrigMonomial, &ExactReal)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under the lexicographic order.
    pub fn leading(&self) -> Option<(&TrigMonomial, &ExactReal)> {
        self.terms.iter().next_back()
    }

    /// Every angle symbol appearing in the polynomial.
    pub fn angles(&self) -> BTreeSet<AngleSymbol> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.vars() {
                match v {
                    Var::Cos(a) | Var::Sin(a) => {
                        out.insert(a.clone());
                    }
                    Var::Len(_) => {}
                }
            }
        }
        out
    }

    fn insert(&mut self, m: TrigMonomial, c: ExactReal) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn scale(&self, c: &ExactReal) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (m, q) in &self.terms {
            out.insert(m.clone(), q * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> TrigPoly {
        let mut out = TrigPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Replace indeterminates by polynomials; `f` returning `None` keeps
    /// the variable as itself.
    pub fn substitute<F>(&self, f: F) -> TrigPoly
    where
        F: Fn(&Var) -> Option<TrigPoly>,
    {
        let mut out = TrigPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = TrigPoly::constant(c.clone());
            for (v, e) in m.vars() {
                let base = f(v).unwrap_or_else(|| TrigPoly::var(v.clone()));
                acc = &acc * &base.pow(e);
            }
            out = &out + &acc;
        }
        out
    }

    /// Numeric evaluation with machine floats.
    pub fn eval(&self, asg: &Assignment) -> Result<f64, ExprError> {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut prod = c.to_float();
            for (v, e) in m.vars() {
                let x = asg.value_of(v)?;
                prod *= x.powi(e as i32);
            }
            total += prod;
        }
        Ok(total)
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), -c);
        }
        out
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.insert(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }
}

macro_rules! forward_poly_owned {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for TrigPoly {
            type Output = TrigPoly;
            fn $method(self, rhs: TrigPoly) -> TrigPoly {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_poly_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        -&self
    }
}

// ======================================================================
// Rational expressions
// ======================================================================

/// Quotient of two free-ring polynomials.
///
/// No gcd reduction is ever applied — the pair is kept exactly as built,
/// and equality is decided by cross-multiplication in the free ring
/// ([`TrigRational::expr_equals`]). Structural `PartialEq` is deliberately
/// not implemented to keep the two notions from being confused.
#[derive(Clone, Debug)]
pub struct TrigRational {
    num: TrigPoly,
    den: TrigPoly,
}

impl TrigRational {
    /// Build `num/den`. Panics if `den` is structurally zero; callers
    /// dividing by an expression that could be zero must record the
    /// side condition themselves (see [`SideCondition::nonzero`]).
    pub fn new(num: TrigPoly, den: TrigPoly) -> Self {
        assert!(!den.is_zero(), "structurally zero denominator");
        TrigRational { num, den }
    }

    pub fn from_poly(p: TrigPoly) -> Self {
        TrigRational {
            num: p,
            den: TrigPoly::one(),
        }
    }

    pub fn constant(c: ExactReal) -> Self {
        TrigRational::from_poly(TrigPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        TrigRational::from_poly(TrigPoly::from_int(n))
    }

    pub fn sin(a: &AngleSymbol) -> Self {
        TrigRational::from_poly(TrigPoly::sin(a))
    }

    pub fn cos(a: &AngleSymbol) -> Self {
        TrigRational::from_poly(TrigPoly::cos(a))
    }

    pub fn length(name: &str) -> Self {
        TrigRational::from_poly(TrigPoly::length(name))
    }

    pub fn num(&self) -> &TrigPoly {
        &self.num
    }

    pub fn den(&self) -> &TrigPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(c)` when numerator and denominator are both constants.
    pub fn as_constant(&self) -> Option<ExactReal> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        n.checked_div(&d).ok()
    }

    pub fn recip(&self) -> Result<TrigRational, ExprError> {
        if self.num.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(TrigRational {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn pow(&self, n: u32) -> TrigRational {
        TrigRational {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    /// Free-ring equality by cross-multiplication:
    /// `a/b = c/d  ⟺  a·d = c·b` as canonical polynomials.
    pub fn expr_equals(&self, other: &TrigRational) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn substitute<F>(&self, f: F) -> TrigRational
    where
        F: Fn(&Var) -> Option<TrigPoly> + Copy,
    {
        TrigRational::new(self.num.substitute(f), self.den.substitute(f))
    }

    pub fn angles(&self) -> BTreeSet<AngleSymbol> {
        let mut out = self.num.angles();
        out.extend(self.den.angles());
        out
    }

    /// Numeric evaluation; refuses denominators within `1e-12` of zero and
    /// names the violated side condition in the error.
    pub fn eval_numeric(&self, asg: &Assignment) -> Result<f64, ExprError> {
        let d = self.den.eval(asg)?;
        if d.abs() <= 1e-12 {
            let cond = SideCondition::nonzero(TrigRational::from_poly(self.den.clone()));
            return Err(ExprError::DomainViolation {
                condition: cond.to_string(),
            });
        }
        Ok(self.num.eval(asg)? / d)
    }
}

impl Add for &TrigRational {
    type Output = TrigRational;
    fn add(self, rhs: &TrigRational) -> TrigRational {
        TrigRational {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub for &TrigRational {
    type Output = TrigRational;
    fn sub(self, rhs: &TrigRational) -> TrigRational {
        TrigRational {
            num: &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Mul for &TrigRational {
    type Output = TrigRational;
    fn mul(self, rhs: &TrigRational) -> TrigRational {
        TrigRational {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

/// Panicking division for expression building; the divisor must not be
/// structurally zero.
impl Div for &TrigRational {
    type Output = TrigRational;
    fn div(self, rhs: &TrigRational) -> TrigRational {
        assert!(!rhs.num.is_zero(), "division by structurally zero expression");
        TrigRational {
            num: &self.num * &rhs.den,
            den: &self.den * &rhs.num,
        }
    }
}

macro_rules! forward_rational_owned {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for TrigRational {
            type Output = TrigRational;
            fn $method(self, rhs: TrigRational) -> TrigRational {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_rational_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for &TrigRational {
    type Output = TrigRational;
    fn neg(self) -> TrigRational {
        TrigRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for TrigRational {
    type Output = TrigRational;
    fn neg(self) -> TrigRational {
        -&self
    }
}

// ======================================================================
// Side conditions
// ======================================================================

#[derive(Clone, Debug)]
pub enum ConditionKind {
    NonZero,
    Positive,
    LessThan,
}

/// A domain assumption recorded by a symbolic step: a division by a
/// possibly-zero expression, a sign assumption, or a series convergence
/// bound. Conditions are carried on formulas and certificates and checked
/// numerically when evaluating.
#[derive(Clone, Debug)]
pub struct SideCondition {
    pub kind: ConditionKind,
    pub subject: TrigRational,
    pub bound: Option<TrigRational>,
}

impl SideCondition {
    pub fn nonzero(subject: TrigRational) -> Self {
        SideCondition {
            kind: ConditionKind::NonZero,
            subject,
            bound: None,
        }
    }

    pub fn positive(subject: TrigRational) -> Self {
        SideCondition {
            kind: ConditionKind::Positive,
            subject,
            bound: None,
        }
    }

    pub fn less_than(subject: TrigRational, bound: TrigRational) -> Self {
        SideCondition {
            kind: ConditionKind::LessThan,
            subject,
            bound: Some(bound),
        }
    }

    /// Signed distance from the condition's boundary under `asg`:
    /// positive means the condition holds, with that much slack.
    pub fn margin(&self, asg: &Assignment) -> Result<f64, ExprError> {
        let s = self.subject.eval_numeric(asg)?;
        Ok(match self.kind {
            ConditionKind::NonZero => s.abs(),
            ConditionKind::Positive => s,
            ConditionKind::LessThan => {
                let b = self
                    .bound
                    .as_ref()
                    .expect("less_than carries a bound")
                    .eval_numeric(asg)?;
                b - s
            }
        })
    }

    pub fn holds_with_margin(&self, asg: &Assignment, margin: f64) -> Result<bool, ExprError> {
        Ok(self.margin(asg)? >= margin)
    }
}

impl fmt::Display for SideCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ConditionKind::NonZero => write!(f, "{} != 0", self.subject),
            ConditionKind::Positive => write!(f, "{} > 0", self.subject),
            ConditionKind::LessThan => write!(
                f,
                "{} < {}",
                self.subject,
                self.bound.as_ref().expect("less_than carries a bound")
            ),
        }
    }
}

/// Append `cond` unless an identically rendered condition is present.
pub fn push_condition(list: &mut Vec<SideCondition>, cond: SideCondition) {
    let text = cond.to_string();
    if !list.iter().any(|c| c.to_string() == text) {
        list.push(cond);
    }
}

// ======================================================================
// Numeric assignments
// ======================================================================

/// Numeric bindings for evaluation: angle symbols map to radians, scalar
/// length symbols to plain numbers.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    pub angles: BTreeMap<String, f64>,
    pub lengths: BTreeMap<String, f64>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn angle(mut self, name: &str, radians: f64) -> Self {
        self.angles.insert(name.to_string(), radians);
        self
    }

    pub fn length(mut self, name: &str, value: f64) -> Self {
        self.lengths.insert(name.to_string(), value);
        self
    }

    fn value_of(&self, v: &Var) -> Result<f64, ExprError> {
        match v {
            Var::Sin(a) => self
                .angles
                .get(a.name())
                .map(|t| t.sin())
                .ok_or_else(|| ExprError::UnboundSymbol(a.name().to_string())),
            Var::Cos(a) => self
                .angles
                .get(a.name())
                .map(|t| t.cos())
                .ok_or_else(|| ExprError::UnboundSymbol(a.name().to_string())),
            Var::Len(n) => self
                .lengths
                .get(n)
                .copied()
                .ok_or_else(|| ExprError::UnboundSymbol(n.clone())),
        }
    }
}

// ======================================================================
// Errors
// ======================================================================

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("division by a structurally zero expression")]
    DivisionByZero,
    #[error("geometric series is degenerate: ratio is identically 1")]
    DegenerateSeries,
    #[error("evaluation violates side condition: {condition}")]
    DomainViolation { condition: String },
    #[error("no value bound for symbol {0}")]
    UnboundSymbol(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

// ======================================================================
// The rewriting pass and its guard
// ======================================================================

thread_local! {
    static PROOF_MODE_DEPTH: Cell<usize> = const { Cell::new(0) };
    static GUARDED_REDUCTIONS: Cell<usize> = const { Cell::new(0) };
}

/// RAII marker for proof-derivation sections.
///
/// While any guard is alive on the current thread, calls to
/// [`ideal_reduce`] are counted as violations: derivation steps of an
/// identity proof must stay in the free ring, or the proof would assume
/// what it is proving. The certificate search itself runs after the guard
/// is dropped — its output is re-checked by exact recomposition, so *how*
/// the cofactors were found does not bear on soundness.
pub struct FreeRingGuard(());

impl FreeRingGuard {
    pub fn enter() -> Self {
        PROOF_MODE_DEPTH.with(|d| d.set(d.get() + 1));
        FreeRingGuard(())
    }
}

impl Drop for FreeRingGuard {
    fn drop(&mut self) {
        PROOF_MODE_DEPTH.with(|d| d.set(d.get() - 1));
    }
}

/// Number of [`ideal_reduce`] calls that have run inside a guard on this
/// thread. The test suite asserts this stays zero across every proof.
pub fn guarded_reduction_count() -> usize {
    GUARDED_REDUCTIONS.with(|c| c.get())
}

fn note_reduction() {
    PROOF_MODE_DEPTH.with(|d| {
        if d.get() > 0 {
            GUARDED_REDUCTIONS.with(|c| c.set(c.get() + 1));
        }
    });
}

/// The generator `cos(a)^2 + sin(a)^2 - 1` whose multiples form the ideal
/// of consequences of the Pythagorean identity for angle `a`.
pub fn pythagorean_generator(a: &AngleSymbol) -> TrigPoly {
    &(&TrigPoly::cos(a).pow(2) + &TrigPoly::sin(a).pow(2)) - &TrigPoly::one()
}

/// Result of [`ideal_reduce`]: `input = remainder + Σ cofactorₐ·genₐ`,
/// exactly, in the free ring.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub remainder: TrigPoly,
    pub cofactors: BTreeMap<AngleSymbol, TrigPoly>,
}

impl Reduction {
    /// Rebuild the input from remainder and cofactors — the self-evident
    /// check that makes certificates trustworthy.
    pub fn recompose(&self) -> TrigPoly {
        let mut acc = self.remainder.clone();
        for (a, cof) in &self.cofactors {
            acc = &acc + &(cof * &pythagorean_generator(a));
        }
        acc
    }
}

/// Rewrite `cos(a)^2 → 1 - sin(a)^2` (for every angle) until no cosine
/// appears with degree ≥ 2, returning the remainder and the cofactors of
/// each generator. Because the generators' leading monomials are pairwise
/// coprime under the monomial order, the remainder is unique no matter
/// which divisible term is rewritten first.
pub fn ideal_reduce(p: &TrigPoly) -> Reduction {
    note_reduction();
    reduce_choosing(p, |candidates| candidates[0].clone())
}

/// Division loop with a pluggable choice of which reducible angle to
/// rewrite when several apply; exposed to tests so confluence (identical
/// remainders for different strategies) can be exercised directly.
pub fn reduce_choosing<F>(p: &TrigPoly, choose: F) -> Reduction
where
    F: Fn(&[AngleSymbol]) -> AngleSymbol,
{
    let mut working = p.clone();
    let mut remainder = TrigPoly::zero();
    let mut cofactors: BTreeMap<AngleSymbol, TrigPoly> = BTreeMap::new();
    while let Some((mono, coeff)) = working.leading() {
        let mono = mono.clone();
        let coeff = coeff.clone();
        let reducible: Vec<AngleSymbol> = mono
            .vars()
            .filter_map(|(v, e)| match v {
                Var::Cos(a) if e >= 2 => Some(a.clone()),
                _ => None,
            })
            .collect();
        if reducible.is_empty() {
            // Move the leading term into the remainder.
            let mut t = TrigPoly::zero();
            t.insert(mono.clone(), coeff.clone());
            remainder = &remainder + &t;
            working = &working - &t;
        } else {
            let a = choose(&reducible);
            let quot_mono = mono
                .try_div(&TrigMonomial::var(Var::Cos(a.clone()), 2))
                .expect("degree checked ≥ 2");
            let mut quot = TrigPoly::zero();
            quot.insert(quot_mono, coeff);
            let gen = pythagorean_generator(&a);
            working = &working - &(&quot * &gen);
            let entry = cofactors.entry(a).or_insert_with(TrigPoly::zero);
            *entry = &*entry + &quot;
        }
    }
    cofactors.retain(|_, c| !c.is_zero());
    Reduction {
        remainder,
        cofactors,
    }
}

/// Membership certificate for the Pythagorean ideal: `Some(cofactors)`
/// with `p = Σ cofactorₐ·(cos(a)² + sin(a)² − 1)` exactly, or `None` if
/// `p` is not a member (its reduced remainder is nonzero).
pub fn membership_certificate(p: &TrigPoly) -> Option<BTreeMap<AngleSymbol, TrigPoly>> {
    let red = ideal_reduce(p);
    if red.remainder.is_zero() {
        debug_assert_eq!(red.recompose(), *p, "recomposition must be exact");
        Some(red.cofactors)
    } else {
        None
    }
}

/// Closed form of the geometric series `first·(1 + ratio + ratio² + …)`,
/// namely `first/(1 − ratio)`, with the convergence assumption
/// `ratio < 1` recorded as a side condition rather than assumed silently.
pub fn sum_geometric(
    first: &TrigRational,
    ratio: &TrigRational,
) -> Result<(TrigRational, Vec<SideCondition>), ExprError> {
    let one = TrigRational::from_int(1);
    if ratio.expr_equals(&one) {
        return Err(ExprError::DegenerateSeries);
    }
    let closed = first / &(&one - ratio);
    let conditions = vec![SideCondition::less_than(ratio.clone(), one)];
    Ok((closed, conditions))
}

// ======================================================================
// Rendering
// ======================================================================

/// A printable flattened term: one radical coefficient piece times one
/// monomial. Polynomials render as these atoms joined by signs, poly
/// terms in descending monomial order, coefficient radicals in ascending
/// radicand order — a canonical, re-parseable text form.
fn fmt_atom(
    f: &mut fmt::Formatter<'_>,
    numer: &num_bigint::BigInt,
    denom: &num_bigint::BigInt,
    radicand: &num_bigint::BigUint,
    mono: &TrigMonomial,
) -> fmt::Result {
    use num_traits::One;
    let mut factors: Vec<String> = Vec::new();
    let p_is_one = numer.is_one();
    let m_is_one = radicand.is_one();
    if !p_is_one || (m_is_one && mono.is_unit()) {
        factors.push(numer.to_string());
    }
    if !m_is_one {
        factors.push(format!("sqrt({})", radicand));
    }
    for (v, e) in mono.vars() {
        if e == 1 {
            factors.push(v.to_string());
        } else {
            factors.push(format!("{}^{}", v, e));
        }
    }
    write!(f, "{}", factors.join("*"))?;
    if !denom.is_one() {
        write!(f, "/{}", denom)?;
    }
    Ok(())
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::Signed;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms.iter().rev() {
            for (radicand, q) in coeff.terms() {
                let neg = q.is_negative();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if neg {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                fmt_atom(f, &q.numer().abs(), q.denom(), radicand, mono)?;
            }
        }
        Ok(())
    }
}

impl TrigPoly {
    /// Number of flattened printable atoms (poly terms × coefficient
    /// radical terms); used by the rational renderer to decide parens.
    fn atom_count(&self) -> usize {
        self.terms.values().map(|c| c.terms().count()).sum()
    }

    /// True when the polynomial prints as a single variable power with
    /// coefficient exactly 1 (safe as a bare denominator).
    fn is_bare_var_power(&self) -> bool {
        if self.terms.len() != 1 {
            return false;
        }
        let (m, c) = self.terms.iter().next().expect("len checked");
        c.is_one() && m.vars().count() == 1
    }
}

impl fmt::Display for TrigRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_is_one = self
            .den
            .as_constant()
            .is_some_and(|c| c.is_one());
        if den_is_one {
            return write!(f, "{}", self.num);
        }
        if self.num.atom_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.is_bare_var_power() {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

// ======================================================================
// Tests
// ======================================================================
