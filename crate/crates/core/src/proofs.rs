//! Certified proofs of the squared-length identity and its variants,
//! read off the registered figures.
//!
//! Everything here works in the *free* ring of [`crate::trigexpr`]: the
//! symbols `cos(a)` and `sin(a)` obey nothing beyond ordinary polynomial
//! arithmetic. Each proof assembles a trace of equations — segment
//! readings from a figure, chain sums, area accounting, rearrangement —
//! ending in a candidate equation. [`certify`] then reduces the
//! cross-multiplied difference of that equation against the ideal
//! generated by `cos²+sin²−1` and records the cofactors, so the
//! certificate can be re-verified by exact recomposition without any
//! trust in the search that produced it.
//!
//! The discipline that keeps this honest: a [`FreeRingGuard`] is held
//! while a trace is assembled, and the reduction counter it instruments
//! must stay at zero — steps may use free-ring arithmetic only, never
//! the relation being established. The single membership search per
//! proof runs *after* the guard is dropped, on the finished equation.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::construction::{Construction, ConstructionError};
use crate::derive::{
    DerivationTrace, TraceStep, RULE_CHAIN, RULE_COFUNCTION, RULE_READING, RULE_REARRANGE,
    RULE_SCALING,
};
use crate::exactnum::ExactReal;
use crate::figures;
use crate::trigexpr::{
    ideal_reduce, push_condition, sum_geometric, AngleSymbol, ExprError, FreeRingGuard,
    SideCondition, TrigPoly, TrigRational,
};

// ======================================================================
// Rule labels specific to the proof traces
// ======================================================================

pub(crate) const RULE_AREA: &str = "area-accounting";
pub(crate) const RULE_THALES: &str = "right-angle-in-semicircle";
pub(crate) const RULE_SERIES: &str = "geometric-series-limit";
pub(crate) const RULE_PREMISE: &str = "established-identity";
pub(crate) const RULE_PERP: &str = "exact-perpendicularity";

// ======================================================================
// Errors, verdicts, certificates
// ======================================================================

#[derive(Debug, Error)]
pub enum ProofError {
    #[error("no proof is registered under the name `{0}`")]
    UnknownCase(String),
    #[error("prerequisite certificate `{0}` is not verified")]
    UnverifiedPremise(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Outcome of checking one candidate equation against the ideal.
#[derive(Clone, Debug)]
pub enum Verdict {
    /// The difference reduces to zero, the certificate recomposes to the
    /// difference exactly, and the principal angle's cofactor is nonzero.
    Verified,
    /// Nonzero remainder: the equation does not follow from the
    /// relations. The remainder is kept as the witness.
    Failed(TrigPoly),
    /// A trace step was marked as leaning on the very relation under
    /// proof, so the argument would be circular.
    Circular,
    /// The equation already holds in the free ring: true, but it says
    /// nothing about the principal angle.
    Vacuous,
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified => write!(f, "verified"),
            Verdict::Failed(rem) => write!(f, "failed (remainder {rem})"),
            Verdict::Circular => write!(f, "rejected as circular"),
            Verdict::Vacuous => write!(f, "vacuous (free-ring tautology)"),
        }
    }
}

/// A finished proof: the steps that led to the final equation, the
/// equation itself, and the ideal-membership certificate for it.
///
/// The certificate is self-checking: `lhs·den(rhs) − rhs·den(lhs)` must
/// equal `Σ cofactorₐ · (cos²(a)+sin²(a)−1)` exactly, which anyone can
/// re-verify by polynomial arithmetic alone.
#[derive(Clone, Debug)]
pub struct ProofCertificate {
    pub case_id: String,
    /// Human-readable statement of what was established.
    pub claim: String,
    pub trace: DerivationTrace,
    /// Left side of the final equation.
    pub lhs: TrigRational,
    /// Right side of the final equation.
    pub rhs: TrigRational,
    /// Cofactors of the membership certificate, keyed by angle.
    pub cofactors: BTreeMap<AngleSymbol, TrigPoly>,
    pub conditions: Vec<SideCondition>,
    pub verdict: Verdict,
}

impl ProofCertificate {
    /// Worst numeric mismatch over every step and the final equation.
    pub fn max_step_deviation(
        &self,
        asg: &crate::trigexpr::Assignment,
    ) -> Result<f64, ExprError> {
        let worst = self.trace.max_step_deviation(asg)?;
        let l = self.lhs.eval_numeric(asg)?;
        let r = self.rhs.eval_numeric(asg)?;
        Ok(worst.max((l - r).abs()))
    }

    /// True when every recorded side condition clears `margin` under
    /// the assignment.
    pub fn conditions_hold(
        &self,
        asg: &crate::trigexpr::Assignment,
        margin: f64,
    ) -> Result<bool, ExprError> {
        for cond in &self.conditions {
            if !cond.holds_with_margin(asg, margin)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for ProofCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "proof `{}`: {}", self.case_id, self.claim)?;
        for (i, step) in self.trace.steps.iter().enumerate() {
            writeln!(f, "  {}. [{}] {}", i + 1, step.rule, step.description)?;
            writeln!(f, "       {} = {}", step.lhs, step.rhs)?;
        }
        writeln!(f, "  final equation: {} = {}", self.lhs, self.rhs)?;
        if !self.conditions.is_empty() {
            let rendered: Vec<String> =
                self.conditions.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  requires: {}", rendered.join("; "))?;
        }
        for (angle, cof) in &self.cofactors {
            writeln!(f, "  cofactor[{angle}] = {cof}")?;
        }
        write!(f, "  verdict: {}", self.verdict)
    }
}

// ======================================================================
// The certifier
// ======================================================================

/// Check a candidate equation against the ideal and wrap the result.
///
/// The difference `num(lhs)·den(rhs) − num(rhs)·den(lhs)` is reduced
/// once; the verdict is `Verified` only when the remainder is zero, the
/// recomposition reproduces the difference exactly, and the cofactor of
/// `principal` is nonzero (so the equation genuinely used that angle's
/// relation rather than holding for free).
pub fn certify(
    case_id: &str,
    claim: &str,
    trace: DerivationTrace,
    lhs: TrigRational,
    rhs: TrigRational,
    conditions: Vec<SideCondition>,
    principal: &AngleSymbol,
) -> ProofCertificate {
    let diff = &(lhs.num() * rhs.den()) - &(rhs.num() * lhs.den());
    let reduction = ideal_reduce(&diff);
    let circular = trace.steps.iter().any(|s| s.identity_dependent);
    let verdict = if circular {
        Verdict::Circular
    } else if !reduction.remainder.is_zero() || reduction.recompose() != diff {
        Verdict::Failed(reduction.remainder.clone())
    } else if reduction
        .cofactors
        .get(principal)
        .is_none_or(TrigPoly::is_zero)
    {
        Verdict::Vacuous
    } else {
        Verdict::Verified
    };
    ProofCertificate {
        case_id: case_id.to_string(),
        claim: claim.to_string(),
        trace,
        lhs,
        rhs,
        cofactors: reduction.cofactors,
        conditions,
        verdict,
    }
}

// ======================================================================
// Shared shorthands
// ======================================================================

fn fig(name: &str) -> Construction {
    (figures::by_name(name).expect("figure is registered").build)()
}

fn step(rule: &str, description: &str, lhs: TrigRational, rhs: TrigRational) -> TraceStep {
    TraceStep {
        description: description.to_string(),
        rule: rule.to_string(),
        lhs,
        rhs,
        identity_dependent: false,
    }
}

fn pythagorean_sum(a: &AngleSymbol) -> TrigRational {
    TrigRational::from_poly(&TrigPoly::cos(a).pow(2) + &TrigPoly::sin(a).pow(2))
}

fn one() -> TrigRational {
    TrigRational::from_int(1)
}

fn half() -> TrigRational {
    TrigRational::constant(ExactReal::from_ratio(1, 2))
}

// ======================================================================
// The two chain proofs on the combined figure
// ======================================================================

/// The identity read along the baseline chain `A-C-D` of the combined
/// figure: `1/cos = cos + sin²/cos`, cleared of denominators.
pub fn prove_main() -> Result<ProofCertificate, ProofError> {
    let a = AngleSymbol::new("a");
    let (trace, conditions) = {
        let _guard = FreeRingGuard::enter();
        let f = fig("combined");
        let s = TrigRational::sin(&a);
        let c = TrigRational::cos(&a);
        let tan = &s / &c;
        let mut steps = Vec::new();
        steps.push(step(
            RULE_SCALING,
            "triangle C-B-D is the unit triangle scaled by tan(a), so the outer piece \
             of the baseline is CD = sin(a)*tan(a)",
            f.segment("C", "D")?.clone(),
            &s * &tan,
        ));
        steps.push(step(
            RULE_SCALING,
            "triangle A-B-D is the unit triangle scaled by 1/cos(a); its hypotenuse \
             lies along the baseline, so AD = 1/cos(a)",
            f.segment("A", "D")?.clone(),
            &one() / &c,
        ));
        let (whole, parts) = f.chain_equation(&["A", "C", "D"])?;
        steps.push(step(
            RULE_CHAIN,
            "C lies between A and D on the baseline, so AD = AC + CD",
            whole,
            parts,
        ));
        steps.push(step(
            RULE_REARRANGE,
            "multiply both sides by cos(a) and swap sides",
            pythagorean_sum(&a),
            one(),
        ));
        let conditions = vec![SideCondition::nonzero(c.clone())];
        (DerivationTrace { steps }, conditions)
    };
    Ok(certify(
        "main",
        "cos(a)^2 + sin(a)^2 = 1, read along the baseline chain A-C-D",
        trace,
        pythagorean_sum(&a),
        one(),
        conditions,
        &a,
    ))
}

/// The same identity read along the slanted chain `D-B-E` of the
/// combined figure: `1/(sin·cos) = tan + cot`, cleared of denominators.
pub fn prove_alt() -> Result<ProofCertificate, ProofError> {
    let a = AngleSymbol::new("a");
    let (trace, conditions) = {
        let _guard = FreeRingGuard::enter();
        let f = fig("combined");
        let s = TrigRational::sin(&a);
        let c = TrigRational::cos(&a);
        let mut steps = Vec::new();
        steps.push(step(
            RULE_SCALING,
            "triangle B-C-D is the unit triangle scaled by tan(a); its hypotenuse is \
             DB = tan(a)",
            f.segment("D", "B")?.clone(),
            &s / &c,
        ));
        steps.push(step(
            RULE_SCALING,
            "triangle A-B-E is the unit triangle scaled by 1/sin(a) (right angle at B, \
             angle a at E), so BE = cos(a)/sin(a)",
            f.segment("B", "E")?.clone(),
            &c / &s,
        ));
        let (whole, parts) = f.chain_equation(&["D", "B", "E"])?;
        steps.push(step(
            RULE_CHAIN,
            "B lies between D and E on the slanted line, so DE = DB + BE",
            whole,
            parts,
        ));
        steps.push(step(
            RULE_REARRANGE,
            "multiply both sides by sin(a)*cos(a) and swap sides",
            pythagorean_sum(&a),
            one(),
        ));
        let mut conditions = Vec::new();
        push_condition(&mut conditions, SideCondition::nonzero(s.clone()));
        push_condition(&mut conditions, SideCondition::nonzero(c.clone()));
        (DerivationTrace { steps }, conditions)
    };
    Ok(certify(
        "alt",
        "cos(a)^2 + sin(a)^2 = 1, read along the slanted chain D-B-E",
        trace,
        pythagorean_sum(&a),
        one(),
        conditions,
        &a,
    ))
}

// ======================================================================
// The squared variants, built on top of the verified baseline
// ======================================================================

/// `1 + tan² = sec²`: the baseline certificate divided through by
/// `cos²`. Its cofactor is `cos²` rather than 1, recording the scaling.
pub fn prove_tangent_squared() -> Result<ProofCertificate, ProofError> {
    let main = prove_main()?;
    if !main.verdict.is_verified() {
        return Err(ProofError::UnverifiedPremise("main".to_string()));
    }
    let a = AngleSymbol::new("a");
    let (trace, lhs, rhs, conditions) = {
        let _guard = FreeRingGuard::enter();
        let s = TrigRational::sin(&a);
        let c = TrigRational::cos(&a);
        let tan = &s / &c;
        let sec = &one() / &c;
        let csq = TrigRational::from_poly(TrigPoly::cos(&a).pow(2));
        let steps = vec![
            step(
                RULE_PREMISE,
                "the certified baseline identity",
                main.lhs.clone(),
                main.rhs.clone(),
            ),
            step(
                RULE_REARRANGE,
                "divide both sides by cos(a)^2",
                &main.lhs / &csq,
                &main.rhs / &csq,
            ),
            step(
                RULE_READING,
                "name the ratios: sin/cos = tan and 1/cos = sec",
                &one() + &tan.pow(2),
                sec.pow(2),
            ),
        ];
        let lhs = &one() + &tan.pow(2);
        let rhs = sec.pow(2);
        let conditions = vec![SideCondition::nonzero(c.clone())];
        (DerivationTrace { steps }, lhs, rhs, conditions)
    };
    Ok(certify(
        "tangent-squared",
        "1 + tan(a)^2 = sec(a)^2",
        trace,
        lhs,
        rhs,
        conditions,
        &a,
    ))
}

/// `cot² + 1 = csc²`: the baseline certificate divided through by
/// `sin²`. Its cofactor is `sin²`.
pub fn prove_cotangent_squared() -> Result<ProofCertificate, ProofError> {
    let main = prove_main()?;
    if !main.verdict.is_verified() {
        return Err(ProofError::UnverifiedPremise("main".to_string()));
    }
    let a = AngleSymbol::new("a");
    let (trace, lhs, rhs, conditions) = {
        let _guard = FreeRingGuard::enter();
        let s = TrigRational::sin(&a);
        let c = TrigRational::cos(&a);
        let cot = &c / &s;
        let csc = &one() / &s;
        let ssq = TrigRational::from_poly(TrigPoly::sin(&a).pow(2));
        let steps = vec![
            step(
                RULE_PREMISE,
                "the certified baseline identity",
                main.lhs.clone(),
                main.rhs.clone(),
            ),
            step(
                RULE_REARRANGE,
                "divide both sides by sin(a)^2",
                &main.lhs / &ssq,
                &main.rhs / &ssq,
            ),
            step(
                RULE_READING,
                "name the ratios: cos/sin = cot and 1/sin = csc",
                &cot.pow(2) + &one(),
                csc.pow(2),
            ),
        ];
        let lhs = &cot.pow(2) + &one();
        let rhs = csc.pow(2);
        let conditions = vec![SideCondition::nonzero(s.clone())];
        (DerivationTrace { steps }, lhs, rhs, conditions)
    };
    Ok(certify(
        "cotangent-squared",
        "cot(a)^2 + 1 = csc(a)^2",
        trace,
        lhs,
        rhs,
        conditions,
        &a,
    ))
}

// ======================================================================
// The eight standalone figure proofs
// ======================================================================

/// Names of the standalone figure proofs, in presentation order. Each
/// name doubles as the figure name in [`crate::figures`].
pub const CASE_NAMES: [&str; 8] = [
    "square-in-square",
    "pinwheel",
    "altitude-split",
    "thales-chords",
    "sine-chord",
    "three-squares",
    "trapezoid",
    "staircase",
];

fn prove_square_in_square() -> Result<ProofCertificate, ProofError> {
    let a = AngleSymbol::new("a");
    let trace = {
        let _guard = FreeRingGuard::enter();
        let f = fig("square-in-square");
        let s = TrigRational::sin(&a);
        let c = TrigRational::cos(&a);
        let (whole, parts) = f.chain_equation(&["A", "E", "B"])?;
        let mut steps = Vec::new();
        steps.push(step(
            RULE_CHAIN,
            "each side of the outer square splits into the two legs of a corner \
             triangle: AB = AE + EB",
            whole.clone(),
            parts,
        ));
        let corner_triangles = &(&TrigRational::from_int(4) * &half()) * &(&c * &s);
        let inner_square = f.segment("E", "F")?.pow(2);
        steps.push(step(
            RULE_AREA,
            "the outer square is tiled by four corner triangles with legs sin(a), \
             cos(a) and by the unit inner square: (sin+cos)^2 = 4*(sin*cos/2) + 1",
            whole.pow(2),
            &corner_triangles + &inner_square,
        ));
        steps.push(step(
            RULE_REARRANGE,
            "subtract the cross term 2*sin(a)*cos(a) from both sides and swap",
            pythagorean_sum(&a),
            one(),
        ));
        DerivationTrace { steps }
    };
    Ok(certify(
        "square-in-square",
        "cos(a)^2 + sin(a)^2 = 1 by tiling the square of side sin(a)+cos(a)",
        trace,
        pythagorean_sum(&a),
        one(),
        Vec::new(),
        &a,
    ))
}

fn prove_pinwheel() -> Result<ProofCertificate, ProofError> {
    let a = AngleSymbol::new("a");
    let (trace, conditions) = {
        let _guard = FreeRingGuard::enter();
        let f = fig("pinwheel");
        let s = TrigRational::sin(&a);
        let c = TrigRational::cos(&a);
        let mut steps = Vec::new();
        steps.push(step(
            RULE_SCALING,
            "each side of the unit square is the hypotenuse of one blade; the blade \
             with hypotenuse AB reads AF = cos(a)",
            f.segment("A", "F")?.clone(),
            c.clone(),
        ));
        steps.push(step(
            RULE_REARRANGE,
            "the inner square has side cos(a) - sin(a); squaring expands it",
            f.segment("E", "F")?.pow(2),
            (&c - &s).pow(2),
        ));
        let blades = &(&TrigRational::from_int(4) * &half()) * &(&c * &s);
        steps.push(step(
            RULE_AREA,
            "the unit square is tiled by the four blades and the inner square: \
             1 = 4*(sin*cos/2) + (cos-sin)^2",
            one(),
            &blades + &f.segment("E", "F")?.pow(2),
        ));
        steps.push(step(
            RULE_REARRANGE,
            "expanding the small square cancels the blade areas; swap sides",
            pythagorean_sum(&a),
            one(),
        ));
        let conditions = vec![SideCondition::less_than(s.clone(), c.clone())];
        (DerivationTrace { steps }, conditions)
    };
    Ok(certify(
        "pinwheel",
        "cos(a)^2 + sin(a)^2 = 1 by the pinwheel tiling of the unit square",
        trace,
        pythagorean_sum(&a),
        one(),
        conditions,
        &a,
    ))
}

fn prove_altitude_split() -> Result<ProofCertificate, ProofError> {
    let a = AngleSymbol::new("a");
    let trace = {
        let _guard = FreeRingGuard::enter();
        let f = fig("altitude-split");
        let s = TrigRational::sin(&a);
        let c = TrigRational::cos(&a);
        let mut steps = Vec::new();
        steps.push(step(
            RULE_SCALING,
            "triangle A-C-D is similar to the whole with hypotenuse AC, so the shadow \
             of the near leg is AD = cos(a)*AC",
            f.segment("A", "D")?.clone(),
            &c * f.segment("A", "C")?,
        ));
        steps.push(step(
            RULE_SCALING,
            "triangle C-B-D is similar to the whole with hypotenuse CB, so the shadow \
             of the far leg is DB = sin(a)*CB",
            f.segment("D", "B")?.clone(),
            &s * f.segment("C", "B")?,
        ));
        let (whole, parts) = f.chain_equation(&["A", "D", "B"])?;
        steps.push(step(
            RULE_CHAIN,
            "the altitude foot D lies between A and B, so AB = AD + DB",
            whole,
            parts,
        ));
        steps.push(step(RULE_REARRANGE, "swap sides", pythagorean_sum(&a), one()));
        DerivationTrace { steps }
    };
    Ok(certify(
        "altitude-split",
        "cos(a)^2 + sin(a)^2 = 1 from the altitude foot splitting the unit hypotenuse",
        trace,
        pythagorean_sum(&a),
        one(),
        Vec::new(),
        &a,
    ))
}

fn prove_thales_chords() -> Result<ProofCertificate, ProofError> {
    let a = AngleSymbol::new("a");
    let b = AngleSymbol::new("b");
    let (trace, conditions) = {
        let _guard = FreeRingGuard::enter();
        let f = fig("thales-chords");
        let sa = TrigRational::sin(&a);
        let ca = TrigRational::cos(&a);
        let sb = TrigRational::sin(&b);
        let cb = TrigRational::cos(&b);
        let ec = f.segment("E", "C")?.clone();
        let db = f.segment("D", "B")?.clone();
        let mut steps = Vec::new();
        steps.push(step(
            RULE_SCALING,
            "triangle E-F-C is right-angled at F with the marked angle b at E; as the \
             unit triangle scaled by the chord EC, its horizontal leg is FE = EC*cos(b)",
            f.segment("F", "E")?.clone(),
            &ec * &cb,
        ));
        let upper = step(
            RULE_SCALING,
            "the vertical leg of the same triangle: FC = EC*sin(b)",
            f.segment("F", "C")?.clone(),
            &ec * &sb,
        );
        steps.push(upper.clone());
        steps.push(step(
            RULE_THALES,
            "the diameter BC subtends a right angle at D, so triangle D-F-B is \
             right-angled at F with angle b at B; its far leg is DF = DB*sin(b)",
            f.segment("D", "F")?.clone(),
            &db * &sb,
        ));
        let lower = step(
            RULE_SCALING,
            "the vertical leg of the same triangle: FB = DB*cos(b)",
            f.segment("F", "B")?.clone(),
            &db * &cb,
        );
        steps.push(lower.clone());
        steps.push(step(
            RULE_REARRANGE,
            "multiply the two vertical-leg readings: (1-sin(a))*(1+sin(a)) = \
             (EC*sin(b))*(DB*cos(b))",
            &upper.lhs * &lower.lhs,
            &upper.rhs * &lower.rhs,
        ));
        steps.push(step(
            RULE_REARRANGE,
            "cancel sin(b)*cos(b) from the right side",
            &upper.lhs * &lower.lhs,
            &ca * &ca,
        ));
        steps.push(step(
            RULE_REARRANGE,
            "move sin(a)^2 across and swap sides",
            pythagorean_sum(&a),
            one(),
        ));
        let mut conditions = Vec::new();
        push_condition(&mut conditions, SideCondition::nonzero(cb.clone()));
        push_condition(&mut conditions, SideCondition::nonzero(sb.clone()));
        push_condition(&mut conditions, SideCondition::less_than(sa.clone(), one()));
        (DerivationTrace { steps }, conditions)
    };
    Ok(certify(
        "thales-chords",
        "cos(a)^2 + sin(a)^2 = 1 from two chord readings against the diameter",
        trace,
        pythagorean_sum(&a),
        one(),
        conditions,
        &a,
    ))
}

fn prove_sine_chord() -> Result<ProofCertificate, ProofError> {
    let a = AngleSymbol::new("a");
    let (trace, conditions) = {
        let _guard = FreeRingGuard::enter();
        let f = fig("sine-chord");
        let s = TrigRational::sin(&a);
        let c = TrigRational::cos(&a);
        let tan = &s / &c;
        let mut steps = Vec::new();
        steps.push(step(
            RULE_READING,
            "C on the unit circle and F on the inner circle of radius sin(a) lie on \
             one ray from A, so the gap between them is FC = 1 - sin(a)",
            f.segment("F", "C")?.clone(),
            &one() - &s,
        ));
        steps.push(step(
            RULE_SCALING,
            "the tangent at F crosses the horizontal at G; triangle C-F-G is \
             right-angled at F with angle a at C, so GC = FC/cos(a)",
            f.segment("G", "C")?.clone(),
            f.segment("F", "C")? / &c,
        ));
        steps.push(step(
            RULE_SCALING,
            "triangle D-E-G is right-angled at E with angle a at D, so EG = ED*tan(a)",
            f.segment("E", "G")?.clone(),
            f.segment("E", "D")? * &tan,
        ));
        let (whole, parts) = f.chain_equation(&["E", "G", "C"])?;
        steps.push(step(
            RULE_CHAIN,
            "G lies between E and C on the horizontal, so EC = EG + GC",
            whole,
            parts,
        ));
        steps.push(step(
            RULE_REARRANGE,
            "multiply both sides by cos(a)",
            &c * &c,
            &one() - &(&s * &s),
        ));
        steps.push(step(
            RULE_REARRANGE,
            "move sin(a)^2 across",
            pythagorean_sum(&a),
            one(),
        ));
        let mut conditions = Vec::new();
        push_condition(&mut conditions, SideCondition::nonzero(c.clone()));
        push_condition(&mut conditions, SideCondition::less_than(s.clone(), one()));
        (DerivationTrace { steps }, conditions)
    };
    Ok(certify(
        "sine-chord",
        "cos(a)^2 + sin(a)^2 = 1 from the tangent line crossing the horizontal chord",
        trace,
        pythagorean_sum(&a),
        one(),
        conditions,
        &a,
    ))
}

fn prove_three_squares() -> Result<ProofCertificate, ProofError> {
    let a = AngleSymbol::new("a");
    let trace = {
        let _guard = FreeRingGuard::enter();
        let f = fig("three-squares");
        let c = TrigRational::cos(&a);
        let s = TrigRational::sin(&a);
        let mut steps = vec![
            step(
                RULE_SCALING,
                "the altitude foot K projects the near leg onto the hypotenuse: \
                 AK = cos(a)*AC",
                f.segment("A", "K")?.clone(),
                &c * f.segment("A", "C")?,
            ),
            step(
                RULE_AREA,
                "the square on leg AC and the rectangle A-K-J-E have equal area: \
                 AC^2 = AK*KJ",
                f.segment("A", "C")?.pow(2),
                f.segment("A", "K")? * f.segment("K", "J")?,
            ),
            step(
                RULE_AREA,
                "the square on leg CB and the rectangle K-B-D-J have equal area: \
                 CB^2 = KB*KJ",
                f.segment("C", "B")?.pow(2),
                f.segment("K", "B")? * f.segment("K", "J")?,
            ),
            step(
                RULE_SCALING,
                "the far shadow mirrors it: KB = sin(a)*CB",
                f.segment("K", "B")?.clone(),
                &s * f.segment("C", "B")?,
            ),
        ];
        let (whole, parts) = f.chain_equation(&["A", "K", "B"])?;
        steps.push(step(
            RULE_CHAIN,
            "the two rectangles tile the unit square on the hypotenuse exactly: \
             AB = AK + KB",
            whole,
            parts,
        ));
        steps.push(step(RULE_REARRANGE, "swap sides", pythagorean_sum(&a), one()));
        DerivationTrace { steps }
    };
    Ok(certify(
        "three-squares",
        "cos(a)^2 + sin(a)^2 = 1 by the three squares on the right triangle",
        trace,
        pythagorean_sum(&a),
        one(),
        Vec::new(),
        &a,
    ))
}

fn prove_trapezoid() -> Result<ProofCertificate, ProofError> {
    let a = AngleSymbol::new("a");
    let trace = {
        let _guard = FreeRingGuard::enter();
        let f = fig("trapezoid");
        let s = TrigRational::sin(&a);
        let c = TrigRational::cos(&a);
        let mut steps = Vec::new();
        steps.push(step(
            RULE_PERP,
            "the two unit hypotenuses meet at B at an exact right angle: the dot \
             product of B->A = (-sin, cos) and B->G = (cos, sin) vanishes in the \
             free ring",
            &(&(-&s) * &c) + &(&c * &s),
            TrigRational::from_int(0),
        ));
        let (whole, parts) = f.chain_equation(&["C", "B", "H"])?;
        steps.push(step(
            RULE_CHAIN,
            "the base is walked leg by leg: CH = CB + BH",
            whole.clone(),
            parts,
        ));
        let parallel_sides = f.segment("C", "A")? + f.segment("H", "G")?;
        steps.push(step(
            RULE_AREA,
            "the trapezoid C-A-G-H has parallel sides CA, HG and base CH; its area \
             (CA+HG)/2 * CH is tiled by the two leg triangles and the right isosceles \
             triangle between them",
            &(&half() * &parallel_sides) * &whole,
            &(&c * &s) + &half(),
        ));
        steps.push(step(
            RULE_REARRANGE,
            "double both sides, subtract the cross term 2*sin(a)*cos(a), and swap",
            pythagorean_sum(&a),
            one(),
        ));
        DerivationTrace { steps }
    };
    Ok(certify(
        "trapezoid",
        "cos(a)^2 + sin(a)^2 = 1 from the trapezoid of two tilted unit triangles",
        trace,
        pythagorean_sum(&a),
        one(),
        Vec::new(),
        &a,
    ))
}

fn prove_staircase() -> Result<ProofCertificate, ProofError> {
    let a = AngleSymbol::new("a");
    let (trace, conditions) = {
        let _guard = FreeRingGuard::enter();
        let f = fig("staircase");
        let s = TrigRational::sin(&a);
        let c = TrigRational::cos(&a);
        let tan = &s / &c;
        let ratio = tan.pow(2);
        let mut conditions = Vec::new();
        let mut steps = Vec::new();

        let (base_whole, base_parts) = f.chain_equation(&["A", "G", "C"])?;
        steps.push(step(
            RULE_CHAIN,
            "the apex triangle is isosceles with unit slants, so its base is split \
             symmetrically: AC = AG + GC = 2*sin(a)",
            base_whole,
            base_parts,
        ));
        steps.push(step(
            RULE_SCALING,
            "the first stair: the ray from A at angle a meets the vertical through C \
             at D, so AD = AC/cos(a)",
            f.segment("A", "D")?.clone(),
            f.segment("A", "C")? / &c,
        ));

        let first_out = f.segment("A", "D")?.clone();
        let (sum_out, conds_out) = sum_geometric(&first_out, &ratio)?;
        for cond in conds_out {
            push_condition(&mut conditions, cond);
        }
        steps.push(step(
            RULE_SERIES,
            "every further stair is a similar triangle shrunk by tan(a)^2; the stair \
             hypotenuses laid outward from A sum to the limit point E: \
             EA = AD/(1 - tan(a)^2)",
            f.segment("E", "A")?.clone(),
            sum_out,
        ));

        let twice_ratio = &TrigRational::from_int(2) * &ratio;
        let (sum_back, conds_back) = sum_geometric(&twice_ratio, &ratio)?;
        for cond in conds_back {
            push_condition(&mut conditions, cond);
        }
        steps.push(step(
            RULE_SERIES,
            "walking the stairs back toward B repeats the unit slant and the shrunken \
             returns: EB = 1 + 2*tan(a)^2/(1 - tan(a)^2)",
            f.segment("E", "B")?.clone(),
            &one() + &sum_back,
        ));

        steps.push(step(
            RULE_COFUNCTION,
            "the altitude foot O on AB: triangle A-O-C is right-angled at O and shows \
             the complement of a at A, so OC = AC*cos(a)",
            f.segment("O", "C")?.clone(),
            f.segment("A", "C")? * &c,
        ));
        let (ab_whole, ab_parts) = f.chain_equation(&["A", "O", "B"])?;
        steps.push(step(
            RULE_CHAIN,
            "O lies between A and B on the unit slant: AB = AO + OB",
            ab_whole,
            ab_parts,
        ));

        steps.push(step(
            RULE_SCALING,
            "triangles E-A-B and C-O-B are similar: right angles at A and O, and both \
             show the doubled angle 2a at B; hence EA*CB = OC*EB",
            f.segment("E", "A")? * f.segment("C", "B")?,
            f.segment("O", "C")? * f.segment("E", "B")?,
        ));
        steps.push(step(
            RULE_REARRANGE,
            "divide both sides by EA = 2*sin(a)*cos(a)/(cos(a)^2 - sin(a)^2)",
            one(),
            pythagorean_sum(&a),
        ));
        steps.push(step(RULE_REARRANGE, "swap sides", pythagorean_sum(&a), one()));

        push_condition(&mut conditions, SideCondition::nonzero(s.clone()));
        push_condition(&mut conditions, SideCondition::nonzero(c.clone()));
        push_condition(&mut conditions, SideCondition::less_than(s.clone(), c.clone()));
        (DerivationTrace { steps }, conditions)
    };
    Ok(certify(
        "staircase",
        "cos(a)^2 + sin(a)^2 = 1 from the staircase limit and the altitude similarity",
        trace,
        pythagorean_sum(&a),
        one(),
        conditions,
        &a,
    ))
}

// ======================================================================
// Dispatch
// ======================================================================

/// Run the standalone proof registered under `name` (one of
/// [`CASE_NAMES`]).
pub fn prove_case(name: &str) -> Result<ProofCertificate, ProofError> {
    match name {
        "square-in-square" => prove_square_in_square(),
        "pinwheel" => prove_pinwheel(),
        "altitude-split" => prove_altitude_split(),
        "thales-chords" => prove_thales_chords(),
        "sine-chord" => prove_sine_chord(),
        "three-squares" => prove_three_squares(),
        "trapezoid" => prove_trapezoid(),
        "staircase" => prove_staircase(),
        other => Err(ProofError::UnknownCase(other.to_string())),
    }
}

/// Run any named proof: `main`, `alt`, the squared variants, or one of
/// the standalone cases.
pub fn prove_target(name: &str) -> Result<ProofCertificate, ProofError> {
    match name {
        "main" => prove_main(),
        "alt" => prove_alt(),
        "tangent-squared" => prove_tangent_squared(),
        "cotangent-squared" => prove_cotangent_squared(),
        other => prove_case(other),
    }
}

/// Every certificate the engine can produce: the two chain proofs, the
/// two squared variants, then the standalone figures in order.
pub fn prove_all() -> Result<Vec<ProofCertificate>, ProofError> {
    let mut certs = vec![
        prove_main()?,
        prove_alt()?,
        prove_tangent_squared()?,
        prove_cotangent_squared()?,
    ];
    for name in CASE_NAMES {
        certs.push(prove_case(name)?);
    }
    Ok(certs)
}

/// The figure a certificate's steps are read from, for sampling and
/// rendering.
pub fn figure_for(case_id: &str) -> Option<&'static str> {
    match case_id {
        "main" | "alt" | "tangent-squared" | "cotangent-squared" => Some("combined"),
        name if CASE_NAMES.contains(&name) => Some(figures::by_name(name)?.name),
        _ => None,
    }
}

// ======================================================================
// Tests
// ======================================================================
