//! Derivations: reading formulas off the figures.
//!
//! Every operation here walks a registered construction, records what it
//! reads as a [`DerivationTrace`] of checkable equations, and returns
//! [`Formula`] values whose right-hand sides live in the free ring. A
//! step is flagged `identity_dependent` only when it rewrites through
//! the ideal generated by `cos²+sin²−1` (via a membership certificate);
//! everything else holds in the free ring or is an authored geometric
//! reading validated numerically.
//!
//! Angle semantics (what "`sin(a+b)`" *means* numerically) live in
//! [`CompoundAngle`] and [`FnKind`], so every formula can be checked
//! against plain floating-point trigonometry without the symbolic layer
//! vouching for itself.

use crate::construction::ConstructionError;
use crate::exactnum::{rat, ExactReal};
use crate::figures;
use crate::trigexpr::{
    membership_certificate, push_condition, AngleSymbol, Assignment, ExprError, SideCondition,
    TrigPoly, TrigRational, Var,
};
use std::fmt;

// ======================================================================
// Errors
// ======================================================================

#[derive(Debug, thiserror::Error)]
pub enum DeriveError {
    #[error("the two derivation routes disagree for {0}")]
    RouteMismatch(String),
    #[error("{0} is undefined")]
    Undefined(String),
    #[error("quadrant must be between 1 and 4, got {0}")]
    BadQuadrant(u8),
    #[error("no ideal-membership certificate for {0}")]
    NoCertificate(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

// ======================================================================
// Function names and compound angles
// ======================================================================

/// The six function names, with their numeric meaning.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FnKind {
    Sin,
    Cos,
    Tan,
    Sec,
    Csc,
    Cot,
}

impl FnKind {
    pub const ALL: [FnKind; 6] = [
        FnKind::Sin,
        FnKind::Cos,
        FnKind::Tan,
        FnKind::Sec,
        FnKind::Csc,
        FnKind::Cot,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            FnKind::Sin => "sin",
            FnKind::Cos => "cos",
            FnKind::Tan => "tan",
            FnKind::Sec => "sec",
            FnKind::Csc => "csc",
            FnKind::Cot => "cot",
        }
    }

    /// Plain floating-point meaning, used as the independent oracle.
    pub fn apply(&self, theta: f64) -> f64 {
        match self {
            FnKind::Sin => theta.sin(),
            FnKind::Cos => theta.cos(),
            FnKind::Tan => theta.tan(),
            FnKind::Sec => 1.0 / theta.cos(),
            FnKind::Csc => 1.0 / theta.sin(),
            FnKind::Cot => theta.cos() / theta.sin(),
        }
    }
}

impl fmt::Display for FnKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The angle a formula speaks about, as a function of bound symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompoundAngle {
    /// The symbol itself.
    Single(String),
    /// Sum of two symbols.
    Sum(String, String),
    /// Difference of two symbols.
    Difference(String, String),
    /// Twice a symbol.
    Double(String),
    /// `90° − a`.
    Complement(String),
    /// The oriented angle whose reference angle is the symbol, placed in
    /// the given quadrant (1–4).
    InQuadrant(u8, String),
}

impl CompoundAngle {
    pub fn radians(&self, asg: &Assignment) -> Result<f64, ExprError> {
        let get = |n: &String| {
            asg.angles
                .get(n)
                .copied()
                .ok_or_else(|| ExprError::UnboundSymbol(n.clone()))
        };
        Ok(match self {
            CompoundAngle::Single(a) => get(a)?,
            CompoundAngle::Sum(a, b) => get(a)? + get(b)?,
            CompoundAngle::Difference(a, b) => get(a)? - get(b)?,
            CompoundAngle::Double(a) => 2.0 * get(a)?,
            CompoundAngle::Complement(a) => std::f64::consts::FRAC_PI_2 - get(a)?,
            CompoundAngle::InQuadrant(q, a) => {
                let r = get(a)?;
                match q {
                    1 => r,
                    2 => std::f64::consts::PI - r,
                    3 => std::f64::consts::PI + r,
                    _ => 2.0 * std::f64::consts::PI - r,
                }
            }
        })
    }
}

impl fmt::Display for CompoundAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompoundAngle::Single(a) => write!(f, "{a}"),
            CompoundAngle::Sum(a, b) => write!(f, "{a}+{b}"),
            CompoundAngle::Difference(a, b) => write!(f, "{a}-{b}"),
            CompoundAngle::Double(a) => write!(f, "2{a}"),
            CompoundAngle::Complement(a) => write!(f, "90deg-{a}"),
            CompoundAngle::InQuadrant(q, a) => match q {
                1 => write!(f, "{a}"),
                2 => write!(f, "180deg-{a}"),
                3 => write!(f, "180deg+{a}"),
                _ => write!(f, "360deg-{a}"),
            },
        }
    }
}

// ======================================================================
// Formulas and traces
// ======================================================================

/// A derived identity: `func(angle) = rhs`, valid under `conditions`.
#[derive(Clone, Debug)]
pub struct Formula {
    pub func: FnKind,
    pub angle: CompoundAngle,
    pub rhs: TrigRational,
    pub conditions: Vec<SideCondition>,
}

impl Formula {
    pub fn name(&self) -> String {
        format!("{}({})", self.func, self.angle)
    }

    /// Compare the formula against plain floating-point trigonometry.
    /// Returns the absolute deviation.
    pub fn numeric_deviation(&self, asg: &Assignment) -> Result<f64, ExprError> {
        let theta = self.angle.radians(asg)?;
        let want = self.func.apply(theta);
        let got = self.rhs.eval_numeric(asg)?;
        Ok((want - got).abs())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.name(), self.rhs)
    }
}

/// One recorded equation in a derivation, with the rule that licensed it.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub description: String,
    pub rule: String,
    pub lhs: TrigRational,
    pub rhs: TrigRational,
    /// `true` only for rewrites through the `cos²+sin²−1` ideal.
    pub identity_dependent: bool,
}

/// An ordered list of checkable equations.
#[derive(Clone, Debug, Default)]
pub struct DerivationTrace {
    pub steps: Vec<TraceStep>,
}

impl DerivationTrace {
    pub fn new() -> Self {
        DerivationTrace::default()
    }

    fn push(&mut self, rule: &str, description: String, lhs: TrigRational, rhs: TrigRational) {
        self.steps.push(TraceStep {
            description,
            rule: rule.to_string(),
            lhs,
            rhs,
            identity_dependent: false,
        });
    }

    fn push_identity_dependent(
        &mut self,
        rule: &str,
        description: String,
        lhs: TrigRational,
        rhs: TrigRational,
    ) {
        self.steps.push(TraceStep {
            description,
            rule: rule.to_string(),
            lhs,
            rhs,
            identity_dependent: true,
        });
    }

    /// Largest `|lhs − rhs|` over all steps at the given assignment.
    pub fn max_step_deviation(&self, asg: &Assignment) -> Result<f64, ExprError> {
        let mut worst: f64 = 0.0;
        for step in &self.steps {
            let l = step.lhs.eval_numeric(asg)?;
            let r = step.rhs.eval_numeric(asg)?;
            worst = worst.max((l - r).abs());
        }
        Ok(worst)
    }
}

// ======================================================================
// Rule labels
// ======================================================================

pub(crate) const RULE_DEFINITION: &str = "unit-triangle-definition";
pub(crate) const RULE_SCALING: &str = "similar-triangle-scaling";
pub(crate) const RULE_CHAIN: &str = "segment-chain-sum";
pub(crate) const RULE_RECTANGLE: &str = "rectangle-opposite-sides";
pub(crate) const RULE_READING: &str = "compound-angle-reading";
pub(crate) const RULE_SUBSTITUTE_NEG: &str = "substitute-negated-angle";
pub(crate) const RULE_SUBSTITUTE_EQ: &str = "substitute-equal-angles";
pub(crate) const RULE_NORMALIZE: &str = "ring-normalization";
pub(crate) const RULE_ALTITUDE: &str = "altitude-two-readings";
pub(crate) const RULE_COFUNCTION: &str = "cofunction-reading";
pub(crate) const RULE_REARRANGE: &str = "algebraic-rearrangement";

fn fig(name: &str) -> crate::construction::Construction {
    (figures::by_name(name).expect("figure is registered").build)()
}

// ======================================================================
// The six functions by similarity scaling
// ======================================================================

/// All six function formulas read off the scaled copies of the unit
/// triangle, with the scaling steps recorded.
pub struct DerivedFunctions {
    pub formulas: Vec<Formula>,
    pub trace: DerivationTrace,
}

pub fn derived_functions() -> Result<DerivedFunctions, DeriveError> {
    let a = &AngleSymbol::new("a");
    let one = TrigRational::from_int(1);
    let s = TrigRational::sin(a);
    let c = TrigRational::cos(a);
    let mut trace = DerivationTrace::new();

    let primary = fig("primary");
    trace.push(
        RULE_DEFINITION,
        format!(
            "with hypotenuse 1, the leg opposite {a} is sin({a}) and the \
             adjacent leg is cos({a}) by definition"
        ),
        primary.segment("C", "B")?.clone(),
        s.clone(),
    );

    let tangent = fig("tangent");
    let bd = tangent.segment("B", "D")?.clone();
    let ad = tangent.segment("A", "D")?.clone();
    trace.push(
        RULE_SCALING,
        format!(
            "scaling the unit triangle by 1/cos({a}) sets the baseline to 1; \
             the opposite-over-hypotenuse ratio is unchanged"
        ),
        &bd / &ad,
        s.clone(),
    );
    trace.push(
        RULE_READING,
        format!("the far leg of the baseline-1 copy is tan({a}), the hypotenuse sec({a})"),
        bd.clone(),
        &s / &c,
    );

    let cotangent = fig("cotangent");
    let eb = cotangent.segment("E", "B")?.clone();
    let ea = cotangent.segment("E", "A")?.clone();
    trace.push(
        RULE_SCALING,
        format!(
            "scaling the unit triangle by 1/sin({a}) sets the far leg to 1; \
             the adjacent-over-hypotenuse ratio is unchanged"
        ),
        &eb / &ea,
        c.clone(),
    );
    trace.push(
        RULE_READING,
        format!("the baseline of the far-leg-1 copy is cot({a}), the hypotenuse csc({a})"),
        eb,
        &c / &s,
    );

    let cos_nonzero = SideCondition::nonzero(c.clone());
    let sin_nonzero = SideCondition::nonzero(s.clone());
    let single = CompoundAngle::Single(a.name().to_string());
    let formulas = vec![
        Formula {
            func: FnKind::Sin,
            angle: single.clone(),
            rhs: s.clone(),
            conditions: vec![],
        },
        Formula {
            func: FnKind::Cos,
            angle: single.clone(),
            rhs: c.clone(),
            conditions: vec![],
        },
        Formula {
            func: FnKind::Tan,
            angle: single.clone(),
            rhs: &s / &c,
            conditions: vec![cos_nonzero.clone()],
        },
        Formula {
            func: FnKind::Sec,
            angle: single.clone(),
            rhs: &one / &c,
            conditions: vec![cos_nonzero],
        },
        Formula {
            func: FnKind::Csc,
            angle: single.clone(),
            rhs: &one / &s,
            conditions: vec![sin_nonzero.clone()],
        },
        Formula {
            func: FnKind::Cot,
            angle: single,
            rhs: &c / &s,
            conditions: vec![sin_nonzero],
        },
    ];
    Ok(DerivedFunctions { formulas, trace })
}

// ======================================================================
// Compound angles: sum and difference
// ======================================================================

/// Sine and cosine of a compound angle, with the figure walk recorded.
pub struct CompoundFormulas {
    pub sin: Formula,
    pub cos: Formula,
    pub trace: DerivationTrace,
    /// What the *figure* needed to exist (the formulas themselves hold
    /// for all angles once derived).
    pub figure_conditions: Vec<SideCondition>,
}

/// `sin(a+b)` and `cos(a+b)` from the stacked-triangles figure.
pub fn sum_formulas() -> Result<CompoundFormulas, DeriveError> {
    let (a, b) = (&AngleSymbol::new("a"), &AngleSymbol::new("b"));
    let f = fig("angle-sum");
    let mut trace = DerivationTrace::new();
    let ca = TrigRational::cos(a);
    let sa = TrigRational::sin(a);
    let cb = TrigRational::cos(b);
    let sb = TrigRational::sin(b);

    trace.push(
        RULE_SCALING,
        format!(
            "the triangle on the lower ray has hypotenuse cos({a}) and angle {b}: \
             its legs are cos({a})cos({b}) and cos({a})sin({b})"
        ),
        f.segment("F", "C")?.clone(),
        &ca * &sb,
    );
    trace.push(
        RULE_SCALING,
        format!(
            "the triangle perched on it has hypotenuse sin({a}) and angle {b}: \
             its legs are sin({a})cos({b}) and sin({a})sin({b})"
        ),
        f.segment("C", "G")?.clone(),
        &sa * &cb,
    );
    let (fg_whole, fg_parts) = f.chain_equation(&["F", "C", "G"])?;
    trace.push(
        RULE_CHAIN,
        "the vertical through F stacks the two short legs".to_string(),
        fg_whole.clone(),
        fg_parts,
    );
    trace.push(
        RULE_RECTANGLE,
        "HFGB is a rectangle, so the height of B equals that stack".to_string(),
        f.segment("H", "B")?.clone(),
        fg_whole,
    );
    let sin_rhs = &(&ca * &sb) + &(&sa * &cb);
    trace.push(
        RULE_READING,
        format!(
            "HB is the height of the unit hypotenuse inclined at {a}+{b}, \
             i.e. sin({a}+{b})"
        ),
        f.segment("H", "B")?.clone(),
        sin_rhs.clone(),
    );
    let (af_whole, af_parts) = f.chain_equation(&["A", "H", "F"])?;
    trace.push(
        RULE_CHAIN,
        "the baseline splits at the foot of B".to_string(),
        af_whole,
        af_parts,
    );
    let cos_rhs = &(&ca * &cb) - &(&sa * &sb);
    trace.push(
        RULE_READING,
        format!(
            "AH is the baseline shadow of the unit hypotenuse, i.e. cos({a}+{b}): \
             the whole baseline minus the rectangle width"
        ),
        f.segment("A", "H")?.clone(),
        cos_rhs.clone(),
    );

    let mut figure_conditions = Vec::new();
    push_condition(
        &mut figure_conditions,
        SideCondition::positive(cos_rhs.clone()),
    );
    Ok(CompoundFormulas {
        sin: Formula {
            func: FnKind::Sin,
            angle: CompoundAngle::Sum(a.name().to_string(), b.name().to_string()),
            rhs: sin_rhs,
            conditions: vec![],
        },
        cos: Formula {
            func: FnKind::Cos,
            angle: CompoundAngle::Sum(a.name().to_string(), b.name().to_string()),
            rhs: cos_rhs,
            conditions: vec![],
        },
        trace,
        figure_conditions,
    })
}

/// `sin(a−b)` and `cos(a−b)`, derived twice: once from the folded
/// figure, once by negating `b` in the sum formulas. The two routes
/// must agree exactly.
pub fn difference_formulas() -> Result<CompoundFormulas, DeriveError> {
    let (a, b) = (&AngleSymbol::new("a"), &AngleSymbol::new("b"));
    let f = fig("angle-difference");
    let mut trace = DerivationTrace::new();
    let ca = TrigRational::cos(a);
    let sa = TrigRational::sin(a);
    let cb = TrigRational::cos(b);
    let sb = TrigRational::sin(b);

    trace.push(
        RULE_SCALING,
        format!(
            "the triangle under the ray at {a} has hypotenuse cos({b}): \
             its legs are cos({a})cos({b}) and sin({a})cos({b})"
        ),
        f.segment("H", "F")?.clone(),
        &sa * &cb,
    );
    trace.push(
        RULE_SCALING,
        format!(
            "the folded-down triangle has hypotenuse sin({b}) and angle {a} \
             at its lower vertex: legs sin({a})sin({b}) and cos({a})sin({b})"
        ),
        f.segment("G", "B")?.clone(),
        &ca * &sb,
    );
    trace.push(
        RULE_RECTANGLE,
        "HFGC is a rectangle: the baseline extension equals the top side".to_string(),
        f.segment("H", "C")?.clone(),
        f.segment("F", "G")?.clone(),
    );
    let (ac_whole, ac_parts) = f.chain_equation(&["A", "H", "C"])?;
    trace.push(
        RULE_CHAIN,
        "the baseline runs to the foot of B".to_string(),
        ac_whole,
        ac_parts,
    );
    let cos_rhs = &(&ca * &cb) + &(&sa * &sb);
    trace.push(
        RULE_READING,
        format!("AC is the baseline shadow of the unit hypotenuse at {a}-{b}"),
        f.segment("A", "C")?.clone(),
        cos_rhs.clone(),
    );
    let (gc_whole, gc_parts) = f.chain_equation(&["G", "B", "C"])?;
    trace.push(
        RULE_CHAIN,
        "the vertical through B splits at B".to_string(),
        gc_whole,
        gc_parts,
    );
    let sin_rhs = &(&sa * &cb) - &(&ca * &sb);
    trace.push(
        RULE_READING,
        format!(
            "BC is the height of the unit hypotenuse at {a}-{b}: \
             the rectangle side minus the folded leg"
        ),
        f.segment("B", "C")?.clone(),
        sin_rhs.clone(),
    );

    // Independent route: negate b in the sum formulas. In the free ring
    // that is the substitution sin(b) → −sin(b), cos(b) → cos(b).
    let sum = sum_formulas()?;
    let negate_b = |v: &Var| match v {
        Var::Sin(x) if x.name() == b.name() => Some(-&TrigPoly::sin(x)),
        _ => None,
    };
    let sin_via_sum = sum.sin.rhs.substitute(negate_b);
    let cos_via_sum = sum.cos.rhs.substitute(negate_b);
    if !sin_via_sum.expr_equals(&sin_rhs) {
        return Err(DeriveError::RouteMismatch(format!("sin({a}-{b})")));
    }
    if !cos_via_sum.expr_equals(&cos_rhs) {
        return Err(DeriveError::RouteMismatch(format!("cos({a}-{b})")));
    }
    trace.push(
        RULE_SUBSTITUTE_NEG,
        format!(
            "negating {b} in the sum formulas reproduces both right-hand sides exactly"
        ),
        sin_via_sum,
        sin_rhs.clone(),
    );

    let mut figure_conditions = Vec::new();
    push_condition(
        &mut figure_conditions,
        SideCondition::positive(sin_rhs.clone()),
    );
    Ok(CompoundFormulas {
        sin: Formula {
            func: FnKind::Sin,
            angle: CompoundAngle::Difference(a.name().to_string(), b.name().to_string()),
            rhs: sin_rhs,
            conditions: vec![],
        },
        cos: Formula {
            func: FnKind::Cos,
            angle: CompoundAngle::Difference(a.name().to_string(), b.name().to_string()),
            rhs: cos_rhs,
            conditions: vec![],
        },
        trace,
        figure_conditions,
    })
}

// ======================================================================
// Double angle
// ======================================================================

/// The double-angle formulas: the product forms are free-ring facts,
/// the single-function cosine forms need the identity and carry its
/// membership certificate in the trace.
pub struct DoubleAngle {
    pub sin: Formula,
    pub cos: Formula,
    pub cos_from_cos_only: Formula,
    pub cos_from_sin_only: Formula,
    pub trace: DerivationTrace,
}

pub fn double_angle() -> Result<DoubleAngle, DeriveError> {
    let a = &AngleSymbol::new("a");
    let sum = sum_formulas()?;
    let mut trace = DerivationTrace::new();
    let s = TrigRational::sin(a);
    let c = TrigRational::cos(a);
    let two = TrigRational::from_int(2);
    let one = TrigRational::from_int(1);

    let rename_b = |v: &Var| match v {
        Var::Sin(x) if x.name() == "b" => Some(TrigPoly::sin(a)),
        Var::Cos(x) if x.name() == "b" => Some(TrigPoly::cos(a)),
        _ => None,
    };
    let sin_rhs = &(&two * &c) * &s;
    trace.push(
        RULE_SUBSTITUTE_EQ,
        format!("setting b := {a} in the angle-sum sine collapses the two products"),
        sum.sin.rhs.substitute(rename_b),
        sin_rhs.clone(),
    );
    let cos_rhs = &(&c * &c) - &(&s * &s);
    trace.push(
        RULE_SUBSTITUTE_EQ,
        format!("setting b := {a} in the angle-sum cosine"),
        sum.cos.rhs.substitute(rename_b),
        cos_rhs.clone(),
    );

    // cos(2a) = 2cos²(a) − 1: the difference from cos²−sin² is exactly
    // one copy of the identity generator.
    let via_cos = &(&(&two * &c) * &c) - &one;
    let diff_cos = via_cos.num().clone() - cos_rhs.num().clone();
    let cert = membership_certificate(&diff_cos)
        .ok_or_else(|| DeriveError::NoCertificate(format!("cos(2{a}) via cos only")))?;
    trace.push_identity_dependent(
        RULE_NORMALIZE,
        format!(
            "2cos({a})^2 - 1 differs from cos({a})^2 - sin({a})^2 by \
             {} times the identity generator",
            cert.get(a).expect("single-angle certificate")
        ),
        via_cos.clone(),
        cos_rhs.clone(),
    );

    let via_sin = &one - &(&(&two * &s) * &s);
    let diff_sin = via_sin.num().clone() - cos_rhs.num().clone();
    let cert = membership_certificate(&diff_sin)
        .ok_or_else(|| DeriveError::NoCertificate(format!("cos(2{a}) via sin only")))?;
    trace.push_identity_dependent(
        RULE_NORMALIZE,
        format!(
            "1 - 2sin({a})^2 differs from cos({a})^2 - sin({a})^2 by \
             {} times the identity generator",
            cert.get(a).expect("single-angle certificate")
        ),
        via_sin.clone(),
        cos_rhs.clone(),
    );

    let double = CompoundAngle::Double(a.name().to_string());
    Ok(DoubleAngle {
        sin: Formula {
            func: FnKind::Sin,
            angle: double.clone(),
            rhs: sin_rhs,
            conditions: vec![],
        },
        cos: Formula {
            func: FnKind::Cos,
            angle: double.clone(),
            rhs: cos_rhs,
            conditions: vec![],
        },
        cos_from_cos_only: Formula {
            func: FnKind::Cos,
            angle: double.clone(),
            rhs: via_cos,
            conditions: vec![],
        },
        cos_from_sin_only: Formula {
            func: FnKind::Cos,
            angle: double,
            rhs: via_sin,
            conditions: vec![],
        },
        trace,
    })
}

// ======================================================================
// Oblique-triangle laws
// ======================================================================

/// An equation between two expressions, e.g. the two sides of a law.
pub struct Law {
    pub lhs: TrigRational,
    pub rhs: TrigRational,
    pub conditions: Vec<SideCondition>,
    pub trace: DerivationTrace,
}

impl Law {
    pub fn numeric_deviation(&self, asg: &Assignment) -> Result<f64, ExprError> {
        Ok((self.lhs.eval_numeric(asg)? - self.rhs.eval_numeric(asg)?).abs())
    }
}

/// The proportionality of sides and opposite sines: `a/sin(alpha) =
/// c/sin(gamma)`, from the two readings of the shared altitude.
pub fn sine_rule() -> Result<Law, DeriveError> {
    let alpha = AngleSymbol::new("alpha");
    let gamma = AngleSymbol::new("gamma");
    let f = fig("oblique");
    let mut trace = DerivationTrace::new();
    let len_a = TrigRational::length("a");
    let len_c = TrigRational::length("c");
    let left_reading = f.segment("D", "B")?.clone(); // c·sin(alpha), as authored
    let right_reading = &len_a * &TrigRational::sin(&gamma);
    trace.push(
        RULE_SCALING,
        "the left triangle has hypotenuse c and angle alpha, so the altitude is c*sin(alpha)"
            .to_string(),
        left_reading.clone(),
        &len_c * &TrigRational::sin(&alpha),
    );
    trace.push(
        RULE_ALTITUDE,
        "the right triangle reads the same altitude as a*sin(gamma)".to_string(),
        left_reading,
        right_reading.clone(),
    );
    let mut conditions = Vec::new();
    push_condition(
        &mut conditions,
        SideCondition::nonzero(TrigRational::sin(&alpha)),
    );
    push_condition(
        &mut conditions,
        SideCondition::nonzero(TrigRational::sin(&gamma)),
    );
    let lhs = &len_a / &TrigRational::sin(&alpha);
    let rhs = &len_c / &TrigRational::sin(&gamma);
    trace.push(
        RULE_REARRANGE,
        "dividing both readings by sin(alpha)*sin(gamma) pairs each side with its opposite sine"
            .to_string(),
        lhs.clone(),
        rhs.clone(),
    );
    Ok(Law {
        lhs,
        rhs,
        conditions,
        trace,
    })
}

/// The side-angle-side law: `a² = b² + c² − 2bc·cos(alpha)`, from the
/// altitude split; the squared-hypotenuse step and the final collapse
/// of `cos²+sin²` are flagged as identity-dependent.
pub fn cosine_rule() -> Result<Law, DeriveError> {
    let alpha = AngleSymbol::new("alpha");
    let f = fig("oblique");
    let mut trace = DerivationTrace::new();
    let len_a = TrigRational::length("a");
    let len_b = TrigRational::length("b");
    let len_c = TrigRational::length("c");
    let cos_alpha = TrigRational::cos(&alpha);
    let sin_alpha = TrigRational::sin(&alpha);

    let (ac_whole, ac_parts) = f.chain_equation(&["A", "D", "C"])?;
    trace.push(
        RULE_CHAIN,
        "writing b for the base, the altitude foot splits it".to_string(),
        ac_whole,
        ac_parts.clone(),
    );
    trace.push(
        RULE_REARRANGE,
        "the far piece of the base is b - c*cos(alpha)".to_string(),
        &len_b - &(&len_c * &cos_alpha),
        &ac_parts - &(&len_c * &cos_alpha),
    );
    let dc = &len_b - &(&len_c * &cos_alpha);
    let db = &len_c * &sin_alpha;
    let squared = &(&dc * &dc) + &(&db * &db);
    trace.push_identity_dependent(
        RULE_READING,
        "the squared far side collects the two legs at the altitude foot \
         (this reading rests on the squared-hypotenuse law)"
            .to_string(),
        &len_a * &len_a,
        squared.clone(),
    );
    let expanded = &(&(&len_b * &len_b)
        + &(&(&len_c * &len_c)
            * &(&(&cos_alpha * &cos_alpha) + &(&sin_alpha * &sin_alpha))))
        - &(&(&(&TrigRational::from_int(2) * &len_b) * &len_c) * &cos_alpha);
    trace.push(
        RULE_REARRANGE,
        "expanding the square and grouping the two quadratic function terms".to_string(),
        squared,
        expanded.clone(),
    );
    let collapsed = &(&(&len_b * &len_b) + &(&len_c * &len_c))
        - &(&(&(&TrigRational::from_int(2) * &len_b) * &len_c) * &cos_alpha);
    let diff = expanded.num().clone() - collapsed.num().clone();
    let cert = membership_certificate(&diff)
        .ok_or_else(|| DeriveError::NoCertificate("cosine-rule collapse".to_string()))?;
    trace.push_identity_dependent(
        RULE_NORMALIZE,
        format!(
            "cos(alpha)^2 + sin(alpha)^2 collapses to 1: the difference is \
             {} times the identity generator",
            cert.get(&alpha).expect("single-angle certificate")
        ),
        expanded,
        collapsed.clone(),
    );
    Ok(Law {
        lhs: &len_a * &len_a,
        rhs: collapsed,
        conditions: vec![],
        trace,
    })
}

// ======================================================================
// Cofunctions
// ======================================================================

/// The six cofunction formulas, from re-reading one right triangle of
/// the combined figure through its other acute angle `g = 90° − a`.
pub struct Cofunctions {
    pub formulas: Vec<Formula>,
    pub trace: DerivationTrace,
}

pub fn cofunction() -> Result<Cofunctions, DeriveError> {
    let a = &AngleSymbol::new("a");
    let f = fig("cofunction");
    let mut trace = DerivationTrace::new();
    let one = TrigRational::from_int(1);
    let s = TrigRational::sin(a);
    let c = TrigRational::cos(a);
    let ae = f.segment("A", "E")?.clone(); // 1/sin(a)
    let eb = f.segment("E", "B")?.clone(); // cos(a)/sin(a)
    let ab = f.segment("A", "B")?.clone(); // 1

    trace.push(
        RULE_COFUNCTION,
        format!(
            "in the upper triangle the angle at A is the complement g of {a}; \
             its opposite leg over the hypotenuse is cos({a})"
        ),
        &eb / &ae,
        c.clone(),
    );
    trace.push(
        RULE_COFUNCTION,
        format!("the leg adjacent to g over the hypotenuse is sin({a})"),
        &ab / &ae,
        s.clone(),
    );

    let comp = CompoundAngle::Complement(a.name().to_string());
    let cos_nonzero = SideCondition::nonzero(c.clone());
    let sin_nonzero = SideCondition::nonzero(s.clone());
    let formulas = vec![
        Formula {
            func: FnKind::Sin,
            angle: comp.clone(),
            rhs: c.clone(),
            conditions: vec![],
        },
        Formula {
            func: FnKind::Cos,
            angle: comp.clone(),
            rhs: s.clone(),
            conditions: vec![],
        },
        Formula {
            func: FnKind::Tan,
            angle: comp.clone(),
            rhs: &c / &s,
            conditions: vec![sin_nonzero.clone()],
        },
        Formula {
            func: FnKind::Cot,
            angle: comp.clone(),
            rhs: &s / &c,
            conditions: vec![cos_nonzero.clone()],
        },
        Formula {
            func: FnKind::Sec,
            angle: comp.clone(),
            rhs: &one / &s,
            conditions: vec![sin_nonzero],
        },
        Formula {
            func: FnKind::Csc,
            angle: comp,
            rhs: &one / &c,
            conditions: vec![cos_nonzero],
        },
    ];
    Ok(Cofunctions { formulas, trace })
}

// ======================================================================
// Quadrants and special values
// ======================================================================

/// The named angles with exact function values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialAngle {
    D0,
    D30,
    D45,
    D60,
    D90,
}

impl SpecialAngle {
    pub const ALL: [SpecialAngle; 5] = [
        SpecialAngle::D0,
        SpecialAngle::D30,
        SpecialAngle::D45,
        SpecialAngle::D60,
        SpecialAngle::D90,
    ];

    pub fn from_degrees(d: u32) -> Option<SpecialAngle> {
        match d {
            0 => Some(SpecialAngle::D0),
            30 => Some(SpecialAngle::D30),
            45 => Some(SpecialAngle::D45),
            60 => Some(SpecialAngle::D60),
            90 => Some(SpecialAngle::D90),
            _ => None,
        }
    }

    pub fn degrees(&self) -> u32 {
        match self {
            SpecialAngle::D0 => 0,
            SpecialAngle::D30 => 30,
            SpecialAngle::D45 => 45,
            SpecialAngle::D60 => 60,
            SpecialAngle::D90 => 90,
        }
    }

    /// Exact sine: the 30° value is the halved side of an equilateral
    /// triangle, 45° the isosceles diagonal, 60° its complement.
    pub fn sin_value(&self) -> ExactReal {
        match self {
            SpecialAngle::D0 => ExactReal::zero(),
            SpecialAngle::D30 => ExactReal::from_ratio(1, 2),
            SpecialAngle::D45 => ExactReal::sqrt_of(&rat(1, 2)).expect("positive"),
            SpecialAngle::D60 => ExactReal::sqrt_of(&rat(3, 4)).expect("positive"),
            SpecialAngle::D90 => ExactReal::one(),
        }
    }

    pub fn cos_value(&self) -> ExactReal {
        match self {
            SpecialAngle::D0 => ExactReal::one(),
            SpecialAngle::D30 => ExactReal::sqrt_of(&rat(3, 4)).expect("positive"),
            SpecialAngle::D45 => ExactReal::sqrt_of(&rat(1, 2)).expect("positive"),
            SpecialAngle::D60 => ExactReal::from_ratio(1, 2),
            SpecialAngle::D90 => ExactReal::zero(),
        }
    }
}

/// Exact value of a function at a named angle; division by an exactly
/// zero leg is reported as undefined, not approximated.
pub fn special_value(func: FnKind, angle: SpecialAngle) -> Result<ExactReal, DeriveError> {
    let s = angle.sin_value();
    let c = angle.cos_value();
    let undef = || DeriveError::Undefined(format!("{}({}deg)", func.label(), angle.degrees()));
    let div = |n: &ExactReal, d: &ExactReal| n.checked_div(d).map_err(|_| undef());
    match func {
        FnKind::Sin => Ok(s),
        FnKind::Cos => Ok(c),
        FnKind::Tan => div(&s, &c),
        FnKind::Sec => div(&ExactReal::one(), &c),
        FnKind::Csc => div(&ExactReal::one(), &s),
        FnKind::Cot => div(&c, &s),
    }
}

/// Signed cosine/sine of a symbolic reference angle placed in a
/// quadrant, as free-ring expressions.
pub fn quadrant_signed(
    a: &AngleSymbol,
    quadrant: u8,
) -> Result<(Formula, Formula), DeriveError> {
    let (cos_sign, sin_sign) = quadrant_signs(quadrant)?;
    let c = TrigRational::cos(a);
    let s = TrigRational::sin(a);
    let signed = |expr: &TrigRational, positive: bool| {
        if positive {
            expr.clone()
        } else {
            -expr
        }
    };
    let angle = CompoundAngle::InQuadrant(quadrant, a.name().to_string());
    Ok((
        Formula {
            func: FnKind::Cos,
            angle: angle.clone(),
            rhs: signed(&c, cos_sign),
            conditions: vec![],
        },
        Formula {
            func: FnKind::Sin,
            angle,
            rhs: signed(&s, sin_sign),
            conditions: vec![],
        },
    ))
}

/// Signed exact cosine/sine of a named reference angle in a quadrant.
pub fn quadrant_signed_special(
    angle: SpecialAngle,
    quadrant: u8,
) -> Result<(ExactReal, ExactReal), DeriveError> {
    let (cos_sign, sin_sign) = quadrant_signs(quadrant)?;
    let apply = |v: ExactReal, positive: bool| if positive { v } else { -&v };
    Ok((
        apply(angle.cos_value(), cos_sign),
        apply(angle.sin_value(), sin_sign),
    ))
}

/// `(cos positive?, sin positive?)` per quadrant.
fn quadrant_signs(quadrant: u8) -> Result<(bool, bool), DeriveError> {
    match quadrant {
        1 => Ok((true, true)),
        2 => Ok((false, true)),
        3 => Ok((false, false)),
        4 => Ok((true, false)),
        q => Err(DeriveError::BadQuadrant(q)),
    }
}

/// Reduce a whole-degree angle to `(quadrant, reference degrees)` with
/// the reference in `[0, 90]`.
pub fn decompose_degrees(degrees: i64) -> (u8, u32) {
    let d = degrees.rem_euclid(360) as u32;
    match d {
        0..=90 => (1, d),
        91..=180 => (2, 180 - d),
        181..=270 => (3, d - 180),
        _ => (4, 360 - d),
    }
}

// ======================================================================
// Tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn a() -> AngleSymbol {
        AngleSymbol::new("a")
    }

    fn b() -> AngleSymbol {
        AngleSymbol::new("b")
    }

    #[test]
    fn six_functions_have_the_expected_shapes() {
        let d = derived_functions().unwrap();
        let rendered: Vec<String> = d.formulas.iter().map(|f| f.to_string()).collect();
        assert_eq!(
            rendered,
            vec![
                "sin(a) = sin(a)",
                "cos(a) = cos(a)",
                "tan(a) = sin(a)/cos(a)",
                "sec(a) = 1/cos(a)",
                "csc(a) = 1/sin(a)",
                "cot(a) = cos(a)/sin(a)",
            ]
        );
        assert_eq!(d.formulas[2].conditions[0].to_string(), "cos(a) != 0");
        let asg = Assignment::new().angle("a", 0.7);
        for f in &d.formulas {
            assert!(f.numeric_deviation(&asg).unwrap() < 1e-12, "{f}");
        }
        assert!(d.trace.max_step_deviation(&asg).unwrap() < 1e-12);
    }

    #[test]
    fn sum_formulas_match_the_expected_expressions() {
        let sum = sum_formulas().unwrap();
        let expect_sin = &(&TrigRational::cos(&a()) * &TrigRational::sin(&b()))
            + &(&TrigRational::sin(&a()) * &TrigRational::cos(&b()));
        assert!(sum.sin.rhs.expr_equals(&expect_sin));
        assert_eq!(sum.sin.name(), "sin(a+b)");
        assert_eq!(sum.cos.name(), "cos(a+b)");
        let asg = Assignment::new().angle("a", 0.5).angle("b", 0.3);
        assert!(sum.sin.numeric_deviation(&asg).unwrap() < 1e-12);
        assert!(sum.cos.numeric_deviation(&asg).unwrap() < 1e-12);
        assert!(sum.trace.max_step_deviation(&asg).unwrap() < 1e-12);
        assert!(sum.trace.steps.iter().all(|s| !s.identity_dependent));
    }

    #[test]
    fn difference_routes_agree_and_check_numerically() {
        let diff = difference_formulas().unwrap();
        assert_eq!(diff.sin.name(), "sin(a-b)");
        let asg = Assignment::new().angle("a", 1.1).angle("b", 0.4);
        assert!(diff.sin.numeric_deviation(&asg).unwrap() < 1e-12);
        assert!(diff.cos.numeric_deviation(&asg).unwrap() < 1e-12);
        assert!(diff.trace.max_step_deviation(&asg).unwrap() < 1e-12);
    }

    #[test]
    fn double_angle_has_three_agreeing_cosine_forms() {
        let d = double_angle().unwrap();
        assert_eq!(d.sin.name(), "sin(2a)");
        let asg = Assignment::new().angle("a", 0.9);
        for f in [&d.sin, &d.cos, &d.cos_from_cos_only, &d.cos_from_sin_only] {
            assert!(f.numeric_deviation(&asg).unwrap() < 1e-12, "{f}");
        }
        // the single-function forms are NOT free-ring equal to cos²−sin²…
        assert!(!d.cos_from_cos_only.rhs.expr_equals(&d.cos.rhs));
        assert!(!d.cos_from_sin_only.rhs.expr_equals(&d.cos.rhs));
        // …and exactly the steps that bridge them carry the dependence flag.
        let flags: Vec<bool> = d.trace.steps.iter().map(|s| s.identity_dependent).collect();
        assert_eq!(flags, vec![false, false, true, true]);
    }

    #[test]
    fn sine_rule_reads_the_shared_altitude() {
        let law = sine_rule().unwrap();
        let entry = figures::by_name("oblique").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let u: Vec<f64> = (0..3).map(|_| rng.gen::<f64>()).collect();
            let asg = entry.sample(&u);
            assert!(law.numeric_deviation(&asg).unwrap() < 1e-12);
            assert!(law.trace.max_step_deviation(&asg).unwrap() < 1e-12);
        }
        let conds: Vec<String> = law.conditions.iter().map(|c| c.to_string()).collect();
        assert_eq!(conds, vec!["sin(alpha) != 0", "sin(gamma) != 0"]);
    }

    #[test]
    fn cosine_rule_collapses_to_the_classic_form() {
        let law = cosine_rule().unwrap();
        let b2 = &TrigRational::length("b") * &TrigRational::length("b");
        let c2 = &TrigRational::length("c") * &TrigRational::length("c");
        let cross = &(&(&TrigRational::from_int(2) * &TrigRational::length("b"))
            * &TrigRational::length("c"))
            * &TrigRational::cos(&AngleSymbol::new("alpha"));
        assert!(law.rhs.expr_equals(&(&(&b2 + &c2) - &cross)));
        let entry = figures::by_name("oblique").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let u: Vec<f64> = (0..3).map(|_| rng.gen::<f64>()).collect();
            let mut asg = entry.sample(&u);
            // bind the base length the law names b
            let alpha = asg.angles["alpha"];
            let gamma = asg.angles["gamma"];
            let c = asg.lengths["c"];
            let a_len = asg.lengths["a"];
            asg.lengths.insert(
                "b".to_string(),
                c * alpha.cos() + a_len * gamma.cos(),
            );
            assert!(law.numeric_deviation(&asg).unwrap() < 1e-10);
            assert!(law.trace.max_step_deviation(&asg).unwrap() < 1e-10);
        }
        assert!(law.trace.steps.iter().any(|s| s.identity_dependent));
    }

    #[test]
    fn cofunctions_swap_the_six_names() {
        let cof = cofunction().unwrap();
        let rendered: Vec<String> = cof.formulas.iter().map(|f| f.to_string()).collect();
        assert_eq!(
            rendered,
            vec![
                "sin(90deg-a) = cos(a)",
                "cos(90deg-a) = sin(a)",
                "tan(90deg-a) = cos(a)/sin(a)",
                "cot(90deg-a) = sin(a)/cos(a)",
                "sec(90deg-a) = 1/sin(a)",
                "csc(90deg-a) = 1/cos(a)",
            ]
        );
        let asg = Assignment::new().angle("a", 0.6);
        for f in &cof.formulas {
            assert!(f.numeric_deviation(&asg).unwrap() < 1e-12, "{f}");
        }
    }

    #[test]
    fn quadrant_signs_follow_the_axes() {
        let (cos_q2, sin_q2) = quadrant_signed(&a(), 2).unwrap();
        assert_eq!(cos_q2.to_string(), "cos(180deg-a) = -cos(a)");
        assert_eq!(sin_q2.to_string(), "sin(180deg-a) = sin(a)");
        let asg = Assignment::new().angle("a", 0.35);
        for q in 1..=4 {
            let (fc, fs) = quadrant_signed(&a(), q).unwrap();
            assert!(fc.numeric_deviation(&asg).unwrap() < 1e-12);
            assert!(fs.numeric_deviation(&asg).unwrap() < 1e-12);
        }
        assert!(matches!(
            quadrant_signed(&a(), 5),
            Err(DeriveError::BadQuadrant(5))
        ));
        let (c, s) = quadrant_signed_special(SpecialAngle::D30, 4).unwrap();
        assert_eq!(c.to_string(), "sqrt(3)/2");
        assert_eq!(s.to_string(), "-1/2");
    }

    #[test]
    fn special_values_are_exact_and_guard_division() {
        assert_eq!(
            special_value(FnKind::Sin, SpecialAngle::D30).unwrap(),
            ExactReal::from_ratio(1, 2)
        );
        assert_eq!(
            special_value(FnKind::Cos, SpecialAngle::D30).unwrap().to_string(),
            "sqrt(3)/2"
        );
        assert_eq!(
            special_value(FnKind::Tan, SpecialAngle::D45).unwrap(),
            ExactReal::one()
        );
        assert_eq!(
            special_value(FnKind::Sec, SpecialAngle::D60).unwrap(),
            ExactReal::from_int(2)
        );
        match special_value(FnKind::Tan, SpecialAngle::D90) {
            Err(DeriveError::Undefined(msg)) => assert_eq!(msg, "tan(90deg)"),
            other => panic!("expected undefined, got {other:?}"),
        }
        assert!(special_value(FnKind::Cot, SpecialAngle::D0).is_err());
        assert!(special_value(FnKind::Csc, SpecialAngle::D0).is_err());
    }

    #[test]
    fn degree_decomposition_matches_float_trig() {
        for d in 0..360i64 {
            let (q, r) = decompose_degrees(d);
            let (cos_pos, sin_pos) = quadrant_signs(q).unwrap();
            let rr = (r as f64).to_radians();
            let want = (d as f64).to_radians();
            let cos_val = if cos_pos { rr.cos() } else { -rr.cos() };
            let sin_val = if sin_pos { rr.sin() } else { -rr.sin() };
            assert!((cos_val - want.cos()).abs() < 1e-12, "cos {d}");
            assert!((sin_val - want.sin()).abs() < 1e-12, "sin {d}");
        }
        assert_eq!(decompose_degrees(-30), (4, 30));
        assert_eq!(decompose_degrees(450), (1, 90));
    }

    #[test]
    fn compound_angle_rendering_and_radians() {
        let asg = Assignment::new().angle("a", 0.4).angle("b", 0.1);
        let sum = CompoundAngle::Sum("a".into(), "b".into());
        assert_eq!(sum.to_string(), "a+b");
        assert!((sum.radians(&asg).unwrap() - 0.5).abs() < 1e-15);
        let comp = CompoundAngle::Complement("a".into());
        assert_eq!(comp.to_string(), "90deg-a");
        assert!(
            (comp.radians(&asg).unwrap() - (std::f64::consts::FRAC_PI_2 - 0.4)).abs() < 1e-15
        );
        let q3 = CompoundAngle::InQuadrant(3, "a".into());
        assert_eq!(q3.to_string(), "180deg+a");
        let missing = CompoundAngle::Single("zz".into());
        assert!(matches!(
            missing.radians(&asg),
            Err(ExprError::UnboundSymbol(_))
        ));
    }
}
