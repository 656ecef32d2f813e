//! Solvers for concrete triangle problems in exact radical arithmetic.
//!
//! Each solver builds the answer the same way the derivations do: place
//! a right triangle, scale it, read the wanted side off the figure. A
//! [`Solution`] therefore carries three things — the exact value, the
//! trace of readings that produced it, and a concrete [`Construction`]
//! with literal radical coordinates, which is laid out and re-verified
//! numerically before the solution is returned.
//!
//! Alongside the constructive route, [`generic_sine_rule`] and
//! [`generic_cosine_rule`] substitute the same data into the *derived*
//! laws of [`crate::derive`]; the test suite pins both routes to the
//! same exact values.

use std::fmt;

use thiserror::Error;

use crate::construction::{Construction, ConstructionError, Point2};
use crate::derive::{
    cosine_rule, decompose_degrees, quadrant_signed_special, sine_rule, DeriveError, FnKind,
    SpecialAngle, TraceStep, RULE_ALTITUDE, RULE_DEFINITION, RULE_READING, RULE_REARRANGE,
    RULE_SCALING,
};
use crate::derive::DerivationTrace;
use crate::exactnum::{ExactReal, NumError};
use crate::proofs::RULE_PREMISE;
use crate::trigexpr::{AngleSymbol, Assignment, ExprError, TrigPoly, TrigRational, Var};

// ======================================================================
// Errors and values
// ======================================================================

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("{0}")]
    Domain(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("no exact table entry for {0} degrees")]
    UnsupportedAngle(i64),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Derive(#[from] DeriveError),
}

/// An answer: either an exact radical, or — when the root of the exact
/// squared length leaves the field — the squared value plus a float.
#[derive(Clone, Debug)]
pub enum SolverValue {
    Exact(ExactReal),
    SquaredOnly { squared: ExactReal, approx: f64 },
}

impl SolverValue {
    pub fn to_float(&self) -> f64 {
        match self {
            SolverValue::Exact(v) => v.to_float(),
            SolverValue::SquaredOnly { approx, .. } => *approx,
        }
    }

    pub fn as_exact(&self) -> Option<&ExactReal> {
        match self {
            SolverValue::Exact(v) => Some(v),
            SolverValue::SquaredOnly { .. } => None,
        }
    }
}

impl fmt::Display for SolverValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverValue::Exact(v) => write!(f, "{v}"),
            SolverValue::SquaredOnly { squared, approx } => {
                write!(f, "sqrt({squared}) ~ {approx}")
            }
        }
    }
}

/// A solved problem: the answer, how it was read off the figure, and
/// the figure itself (already layout-verified).
#[derive(Clone, Debug)]
pub struct Solution {
    /// Restatement of the problem being solved.
    pub problem: String,
    pub value: SolverValue,
    pub trace: DerivationTrace,
    pub construction: Construction,
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem: {}", self.problem)?;
        for (i, step) in self.trace.steps.iter().enumerate() {
            writeln!(f, "  {}. [{}] {}", i + 1, step.rule, step.description)?;
            writeln!(f, "       {} = {}", step.lhs, step.rhs)?;
        }
        write!(f, "answer: {} ~ {}", self.value, self.value.to_float())
    }
}

// ======================================================================
// Shared shorthands
// ======================================================================

fn konst(v: &ExactReal) -> TrigRational {
    TrigRational::constant(v.clone())
}

fn kstep(rule: &str, description: &str, lhs: &ExactReal, rhs: &ExactReal) -> TraceStep {
    TraceStep {
        description: description.to_string(),
        rule: rule.to_string(),
        lhs: konst(lhs),
        rhs: konst(rhs),
        identity_dependent: false,
    }
}

/// Exact cosine and sine for any integer-degree angle whose reference
/// angle is in the table `{0, 30, 45, 60, 90}`.
pub fn exact_cos_sin(degrees: i64) -> Result<(ExactReal, ExactReal), SolverError> {
    let (quadrant, reference) = decompose_degrees(degrees);
    let special = SpecialAngle::from_degrees(reference)
        .ok_or(SolverError::UnsupportedAngle(degrees))?;
    Ok(quadrant_signed_special(special, quadrant)?)
}

fn nonneg(v: &ExactReal, what: &str) -> Result<(), SolverError> {
    if v.compare(&ExactReal::zero()) == std::cmp::Ordering::Less {
        return Err(SolverError::Domain(format!("{what} must not be negative")));
    }
    Ok(())
}

fn positive(v: &ExactReal, what: &str) -> Result<(), SolverError> {
    if v.compare(&ExactReal::zero()) != std::cmp::Ordering::Greater {
        return Err(SolverError::Degenerate(format!("{what} must be positive")));
    }
    Ok(())
}

fn divide(num: &ExactReal, den: &ExactReal, label: &str) -> Result<ExactReal, SolverError> {
    num.checked_div(den)
        .map_err(|_| SolverError::Domain(format!("{label} is undefined: its divisor vanishes")))
}

// ======================================================================
// Ratio problems: one function value given, another wanted
// ======================================================================

/// Given `given(a) = value`, realize the ratio on a right triangle and
/// read off `want(a)` exactly.
pub fn solve_ratio(
    given: FnKind,
    value: &ExactReal,
    want: FnKind,
) -> Result<Solution, SolverError> {
    let one = ExactReal::one();
    let too_big = |lim: &str| {
        SolverError::Domain(format!(
            "{}(a) = {} is impossible on a right triangle: the value must be {}",
            given.label(),
            value,
            lim
        ))
    };
    nonneg(value, &format!("{}(a)", given.label()))?;
    // A right triangle realizing the given ratio, as (opposite,
    // adjacent, hypotenuse). The third side comes from the certified
    // squared-length identity.
    let (opp, adj, hyp) = match given {
        FnKind::Sin => {
            if value.compare(&one) == std::cmp::Ordering::Greater {
                return Err(too_big("at most 1"));
            }
            let adj = (&one - &(value * value)).sqrt()?;
            (value.clone(), adj, one.clone())
        }
        FnKind::Cos => {
            if value.compare(&one) == std::cmp::Ordering::Greater {
                return Err(too_big("at most 1"));
            }
            let opp = (&one - &(value * value)).sqrt()?;
            (opp, value.clone(), one.clone())
        }
        FnKind::Tan => {
            let hyp = (&one + &(value * value)).sqrt()?;
            (value.clone(), one.clone(), hyp)
        }
        FnKind::Cot => {
            let hyp = (&one + &(value * value)).sqrt()?;
            (one.clone(), value.clone(), hyp)
        }
        FnKind::Sec => {
            if value.compare(&one) == std::cmp::Ordering::Less {
                return Err(too_big("at least 1"));
            }
            let opp = (&(value * value) - &one).sqrt()?;
            (opp, one.clone(), value.clone())
        }
        FnKind::Csc => {
            if value.compare(&one) == std::cmp::Ordering::Less {
                return Err(too_big("at least 1"));
            }
            let adj = (&(value * value) - &one).sqrt()?;
            (one.clone(), adj, value.clone())
        }
    };

    let read = |f: FnKind| -> Result<ExactReal, SolverError> {
        let (num, den) = match f {
            FnKind::Sin => (&opp, &hyp),
            FnKind::Cos => (&adj, &hyp),
            FnKind::Tan => (&opp, &adj),
            FnKind::Cot => (&adj, &opp),
            FnKind::Sec => (&hyp, &adj),
            FnKind::Csc => (&hyp, &opp),
        };
        divide(num, den, &format!("{}(a)", f.label()))
    };
    let answer = read(want)?;
    let given_back = read(given)?;

    let mut steps = Vec::new();
    steps.push(kstep(
        RULE_DEFINITION,
        &format!(
            "realize {}(a) = {} on a right triangle with opposite {}, adjacent {}, hypotenuse {}",
            given.label(),
            value,
            opp,
            adj,
            hyp
        ),
        &given_back,
        value,
    ));
    steps.push(kstep(
        RULE_PREMISE,
        "the certified identity fixes the third side: opposite^2 + adjacent^2 = hypotenuse^2",
        &(&(&opp * &opp) + &(&adj * &adj)),
        &(&hyp * &hyp),
    ));
    steps.push(kstep(
        RULE_READING,
        &format!("read off {}(a) as the matching side ratio", want.label()),
        &answer,
        &answer,
    ));

    let mut construction = Construction::new();
    construction.add_point("A", Point2::origin())?;
    construction.add_point("C", Point2::new(konst(&adj), konst(&ExactReal::zero())))?;
    construction.add_point("B", Point2::new(konst(&adj), konst(&opp)))?;
    construction.add_segment("A", "B", konst(&hyp))?;
    construction.add_segment("A", "C", konst(&adj))?;
    construction.add_segment("C", "B", konst(&opp))?;
    if !adj.is_zero() && !opp.is_zero() {
        construction.mark_right_angle("C", "A", "B")?;
        construction.mark_angle("A", "B", "C", "a")?;
    }
    construction.layout(&Assignment::new())?;

    Ok(Solution {
        problem: format!(
            "given {}(a) = {}, find {}(a)",
            given.label(),
            value,
            want.label()
        ),
        value: SolverValue::Exact(answer),
        trace: DerivationTrace { steps },
        construction,
    })
}

// ======================================================================
// Two angles and the side opposite one of them
// ======================================================================

/// Triangle with angles `left` and `right` (degrees, from the exact
/// table) and the side opposite `left` given: the side opposite `right`
/// is read off the shared altitude.
pub fn solve_asa_shared_altitude(
    left_deg: u32,
    right_deg: u32,
    side_opposite_left: &ExactReal,
) -> Result<Solution, SolverError> {
    let left = SpecialAngle::from_degrees(left_deg)
        .ok_or(SolverError::UnsupportedAngle(left_deg as i64))?;
    let right = SpecialAngle::from_degrees(right_deg)
        .ok_or(SolverError::UnsupportedAngle(right_deg as i64))?;
    if left_deg + right_deg >= 180 {
        return Err(SolverError::Degenerate(
            "the two angles leave nothing for the apex".to_string(),
        ));
    }
    let (sin_l, cos_l) = (left.sin_value(), left.cos_value());
    let (sin_r, cos_r) = (right.sin_value(), right.cos_value());
    if sin_l.is_zero() || sin_r.is_zero() {
        return Err(SolverError::Degenerate(
            "both angles must be positive".to_string(),
        ));
    }
    positive(side_opposite_left, "the given side")?;

    let a = side_opposite_left; // opposite `left`, drawn from B to C
    let b = divide(&(a * &sin_r), &sin_l, "the wanted side")?; // opposite `right`
    let altitude = &b * &sin_l;

    let steps = vec![
        kstep(
            RULE_ALTITUDE,
            &format!(
                "the altitude from the apex C reads two ways: CB*sin({right_deg}deg) = \
                 CA*sin({left_deg}deg)"
            ),
            &(a * &sin_r),
            &(&b * &sin_l),
        ),
        kstep(
            RULE_REARRANGE,
            &format!(
                "solve for the side opposite the {right_deg}deg angle: \
                 CA = CB*sin({right_deg}deg)/sin({left_deg}deg)"
            ),
            &b,
            &divide(&(a * &sin_r), &sin_l, "the wanted side")?,
        ),
    ];

    let foot_x = &b * &cos_l;
    let base = &(&b * &cos_l) + &(a * &cos_r);
    let mut construction = Construction::new();
    construction.add_point("A", Point2::origin())?;
    construction.add_point("B", Point2::new(konst(&base), konst(&ExactReal::zero())))?;
    construction.add_point("C", Point2::new(konst(&foot_x), konst(&altitude)))?;
    construction.add_segment("A", "C", konst(&b))?;
    construction.add_segment("C", "B", konst(a))?;
    construction.add_segment("A", "B", konst(&base))?;
    construction.mark_angle("A", "C", "B", &format!("{left_deg}deg"))?;
    construction.mark_angle("B", "C", "A", &format!("{right_deg}deg"))?;
    if !cos_l.is_zero() && !cos_r.is_zero() {
        construction.add_point("F", Point2::new(konst(&foot_x), konst(&ExactReal::zero())))?;
        construction.add_segment("C", "F", konst(&altitude))?;
        construction.add_segment("A", "F", konst(&foot_x))?;
        construction.add_segment("F", "B", konst(&(a * &cos_r)))?;
        construction.assert_collinear(&["A", "F", "B"])?;
        construction.mark_right_angle("F", "A", "C")?;
        construction.mark_right_angle("F", "B", "C")?;
    }
    construction.layout(&Assignment::new())?;

    Ok(Solution {
        problem: format!(
            "angles {left_deg}deg and {right_deg}deg, side {} opposite the first: \
             find the side opposite the second",
            side_opposite_left
        ),
        value: SolverValue::Exact(b),
        trace: DerivationTrace { steps },
        construction,
    })
}

// ======================================================================
// Two sides enclosing an obtuse angle
// ======================================================================

/// Triangle with sides `near` and `far` enclosing an obtuse angle:
/// drop the foot of the far side *outside* the base and read the
/// squared third side off the exterior right triangle.
pub fn solve_sas_obtuse(
    near: &ExactReal,
    far: &ExactReal,
    theta_deg: u32,
) -> Result<Solution, SolverError> {
    if !(91..=179).contains(&theta_deg) {
        return Err(SolverError::Domain(format!(
            "the enclosed angle must be obtuse, got {theta_deg} degrees"
        )));
    }
    nonneg(near, "the near side")?;
    positive(far, "the far side")?;
    let supplement = 180 - theta_deg;
    let (cos_sup, sin_sup) = exact_cos_sin(supplement as i64)?;
    let (cos_theta, _) = exact_cos_sin(theta_deg as i64)?;

    let run = near + &(far * &cos_sup);
    let rise = far * &sin_sup;
    let squared = &(&run * &run) + &(&rise * &rise);
    let value = match squared.sqrt() {
        Ok(root) => SolverValue::Exact(root),
        Err(NumError::UnrepresentableRoot(_)) => SolverValue::SquaredOnly {
            squared: squared.clone(),
            approx: squared.to_float().sqrt(),
        },
        Err(e) => return Err(e.into()),
    };

    let mut steps = vec![
        kstep(
            RULE_READING,
            &format!(
                "the obtuse angle reads through its supplement: \
                 cos({theta_deg}deg) = -cos({supplement}deg)"
            ),
            &cos_theta,
            &-&cos_sup,
        ),
        kstep(
            RULE_SCALING,
            &format!(
                "the far side leans {supplement}deg beyond the base line, so the foot \
                 lands at near + far*cos({supplement}deg)"
            ),
            &run,
            &(near + &(far * &cos_sup)),
        ),
        kstep(
            RULE_SCALING,
            &format!("the height of the far end is far*sin({supplement}deg)"),
            &rise,
            &(far * &sin_sup),
        ),
        kstep(
            RULE_PREMISE,
            "the certified identity on the exterior right triangle: \
             third^2 = run^2 + rise^2",
            &squared,
            &(&(&run * &run) + &(&rise * &rise)),
        ),
    ];
    match &value {
        SolverValue::Exact(root) => steps.push(kstep(
            RULE_REARRANGE,
            "the squared value has an exact root in the radical field",
            &(root * root),
            &squared,
        )),
        SolverValue::SquaredOnly { squared: sq, .. } => steps.push(kstep(
            RULE_REARRANGE,
            "the root leaves the radical field; the squared value is the exact answer",
            sq,
            sq,
        )),
    }

    let mut construction = Construction::new();
    construction.add_point("C", Point2::origin())?;
    construction.add_point("D", Point2::new(konst(&(far * &cos_sup)), konst(&rise)))?;
    construction.add_point(
        "F",
        Point2::new(konst(&(far * &cos_sup)), konst(&ExactReal::zero())),
    )?;
    construction.add_segment("C", "D", konst(far))?;
    construction.add_segment("C", "F", konst(&(far * &cos_sup)))?;
    construction.add_segment("F", "D", konst(&rise))?;
    construction.mark_right_angle("F", "C", "D")?;
    if !near.is_zero() {
        construction.add_point("B", Point2::new(konst(&-near), konst(&ExactReal::zero())))?;
        construction.add_segment("B", "C", konst(near))?;
        construction.add_segment("B", "F", konst(&run))?;
        construction.assert_collinear(&["B", "C", "F"])?;
        construction.mark_angle("C", "B", "D", &format!("{theta_deg}deg"))?;
        if let SolverValue::Exact(root) = &value {
            construction.add_segment("B", "D", konst(root))?;
        }
    }
    construction.layout(&Assignment::new())?;

    Ok(Solution {
        problem: format!(
            "sides {near} and {far} enclosing {theta_deg}deg: find the third side"
        ),
        value,
        trace: DerivationTrace { steps },
        construction,
    })
}

// ======================================================================
// Two sightlines up a wall carrying a pole
// ======================================================================

/// A pole of height `pole` stands on a wall. From one viewpoint the
/// wall top appears at `lower` degrees and the pole top at `upper`
/// degrees. Returns the wall height, read off two stacked tangent
/// triangles over the same baseline.
pub fn solve_two_sightlines(
    pole: &ExactReal,
    upper_deg: u32,
    lower_deg: u32,
) -> Result<Solution, SolverError> {
    if upper_deg == lower_deg {
        return Err(SolverError::Degenerate(
            "the two sightlines coincide".to_string(),
        ));
    }
    if upper_deg < lower_deg {
        return Err(SolverError::Domain(
            "the pole top cannot appear below the wall top".to_string(),
        ));
    }
    positive(pole, "the pole height")?;
    let tan_of = |deg: u32, what: &str| -> Result<ExactReal, SolverError> {
        let sp = SpecialAngle::from_degrees(deg)
            .ok_or(SolverError::UnsupportedAngle(deg as i64))?;
        if sp.cos_value().is_zero() {
            return Err(SolverError::Domain(format!(
                "the {what} sightline must stay below the vertical"
            )));
        }
        divide(&sp.sin_value(), &sp.cos_value(), "the tangent")
    };
    let tan_u = tan_of(upper_deg, "upper")?;
    let tan_l = tan_of(lower_deg, "lower")?;
    if tan_l.is_zero() {
        return Err(SolverError::Domain(
            "the lower sightline must rise above the horizontal".to_string(),
        ));
    }

    let spread = &tan_u - &tan_l;
    let distance = divide(pole, &spread, "the viewing distance")?;
    let wall = &distance * &tan_l;

    let steps = vec![
        kstep(
            RULE_SCALING,
            &format!("lower sightline: wall = distance*tan({lower_deg}deg)"),
            &wall,
            &(&distance * &tan_l),
        ),
        kstep(
            RULE_SCALING,
            &format!("upper sightline: wall + pole = distance*tan({upper_deg}deg)"),
            &(&wall + pole),
            &(&distance * &tan_u),
        ),
        kstep(
            RULE_REARRANGE,
            "subtracting the readings isolates the pole: \
             pole = distance*(tan(upper) - tan(lower))",
            pole,
            &(&distance * &spread),
        ),
    ];

    let top = &wall + pole;
    let mut construction = Construction::new();
    construction.add_point("O", Point2::origin())?;
    construction.add_point(
        "F",
        Point2::new(konst(&distance), konst(&ExactReal::zero())),
    )?;
    construction.add_point("C", Point2::new(konst(&distance), konst(&wall)))?;
    construction.add_point("T", Point2::new(konst(&distance), konst(&top)))?;
    construction.add_segment("O", "F", konst(&distance))?;
    construction.add_segment("F", "C", konst(&wall))?;
    construction.add_segment("C", "T", konst(pole))?;
    construction.add_segment("F", "T", konst(&top))?;
    let sight = |deg: u32| -> Result<ExactReal, SolverError> {
        let cos = SpecialAngle::from_degrees(deg).unwrap().cos_value();
        divide(&distance, &cos, "the sightline")
    };
    construction.add_segment("O", "C", konst(&sight(lower_deg)?))?;
    construction.add_segment("O", "T", konst(&sight(upper_deg)?))?;
    construction.assert_collinear(&["F", "C", "T"])?;
    construction.mark_right_angle("F", "O", "C")?;
    construction.mark_right_angle("F", "O", "T")?;
    construction.mark_angle("O", "F", "C", &format!("{lower_deg}deg"))?;
    construction.mark_angle("O", "F", "T", &format!("{upper_deg}deg"))?;
    construction.layout(&Assignment::new())?;

    Ok(Solution {
        problem: format!(
            "a pole of height {pole} on a wall, seen at {upper_deg}deg (top) and \
             {lower_deg}deg (base): find the wall height"
        ),
        value: SolverValue::Exact(wall),
        trace: DerivationTrace { steps },
        construction,
    })
}

// ======================================================================
// The generic (law-substitution) route
// ======================================================================

/// Solve the two-angles-one-side problem by substituting exact values
/// into the derived sine rule instead of building the figure.
pub fn generic_sine_rule(
    left_deg: u32,
    right_deg: u32,
    side_opposite_left: &ExactReal,
) -> Result<ExactReal, SolverError> {
    let left = SpecialAngle::from_degrees(left_deg)
        .ok_or(SolverError::UnsupportedAngle(left_deg as i64))?;
    let right = SpecialAngle::from_degrees(right_deg)
        .ok_or(SolverError::UnsupportedAngle(right_deg as i64))?;
    if left.sin_value().is_zero() || right.sin_value().is_zero() {
        return Err(SolverError::Degenerate(
            "both angles must be positive".to_string(),
        ));
    }
    let law = sine_rule()?;
    let alpha = AngleSymbol::new("alpha");
    let bound = law.lhs.substitute(|v| match v {
        Var::Sin(angle) if *angle == alpha => Some(TrigPoly::constant(left.sin_value())),
        Var::Len(name) if name == "a" => {
            Some(TrigPoly::constant(side_opposite_left.clone()))
        }
        _ => None,
    });
    let common = bound.as_constant().ok_or_else(|| {
        SolverError::Domain("the sine rule did not reduce to a constant".to_string())
    })?;
    Ok(&common * &right.sin_value())
}

/// Solve the enclosed-angle problem by substituting exact values into
/// the derived cosine rule; returns the exact *squared* third side.
pub fn generic_cosine_rule(
    near: &ExactReal,
    far: &ExactReal,
    theta_deg: u32,
) -> Result<ExactReal, SolverError> {
    let (cos_theta, _) = exact_cos_sin(theta_deg as i64)?;
    let law = cosine_rule()?;
    let alpha = AngleSymbol::new("alpha");
    let bound = law.rhs.substitute(|v| match v {
        Var::Cos(angle) if *angle == alpha => Some(TrigPoly::constant(cos_theta.clone())),
        Var::Len(name) if name == "b" => Some(TrigPoly::constant(near.clone())),
        Var::Len(name) if name == "c" => Some(TrigPoly::constant(far.clone())),
        _ => None,
    });
    bound.as_constant().ok_or_else(|| {
        SolverError::Domain("the cosine rule did not reduce to a constant".to_string())
    })
}

// ======================================================================
// The showcase set
// ======================================================================

/// The five showcase problems, solved end to end with exact answers.
pub fn showcase() -> Result<Vec<Solution>, SolverError> {
    Ok(vec![
        solve_ratio(FnKind::Sin, &ExactReal::from_ratio(1, 2), FnKind::Cos)?,
        solve_ratio(FnKind::Tan, &ExactReal::from_ratio(3, 4), FnKind::Cos)?,
        solve_asa_shared_altitude(30, 45, &ExactReal::from_int(6))?,
        solve_sas_obtuse(&ExactReal::from_int(8), &ExactReal::from_int(6), 120)?,
        solve_two_sightlines(&ExactReal::from_int(12), 45, 30)?,
    ])
}

// ======================================================================
// Tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn exact(sol: &Solution) -> &ExactReal {
        sol.value.as_exact().expect("exact answer")
    }

    #[test]
    fn sine_half_gives_cosine_root_three_over_two() {
        let sol = solve_ratio(FnKind::Sin, &ExactReal::from_ratio(1, 2), FnKind::Cos).unwrap();
        assert_eq!(exact(&sol), &ExactReal::sqrt_of(&rat(3, 4)).unwrap());
        assert_eq!(format!("{}", sol.value), "sqrt(3)/2");
    }

    #[test]
    fn tangent_three_quarters_gives_cosine_four_fifths() {
        let sol = solve_ratio(FnKind::Tan, &ExactReal::from_ratio(3, 4), FnKind::Cos).unwrap();
        assert_eq!(exact(&sol), &ExactReal::from_ratio(4, 5));
    }

    #[test]
    fn impossible_sine_is_a_domain_error() {
        let err = solve_ratio(FnKind::Sin, &ExactReal::from_int(2), FnKind::Cos).unwrap_err();
        assert!(matches!(err, SolverError::Domain(_)), "got {err}");
    }

    #[test]
    fn edge_ratios_collapse_cleanly() {
        let sol = solve_ratio(FnKind::Cos, &ExactReal::one(), FnKind::Sin).unwrap();
        assert!(exact(&sol).is_zero());
        let err = solve_ratio(FnKind::Sin, &ExactReal::one(), FnKind::Tan).unwrap_err();
        assert!(matches!(err, SolverError::Domain(_)));
    }

    #[test]
    fn asa_oracles() {
        let sol = solve_asa_shared_altitude(30, 45, &ExactReal::from_int(6)).unwrap();
        let expected = &ExactReal::from_int(6) * &ExactReal::sqrt_int(2);
        assert_eq!(exact(&sol), &expected);

        let sol = solve_asa_shared_altitude(45, 45, &ExactReal::from_int(7)).unwrap();
        assert_eq!(exact(&sol), &ExactReal::from_int(7));

        let sol = solve_asa_shared_altitude(30, 60, &ExactReal::from_int(5)).unwrap();
        let expected = &ExactReal::from_int(5) * &ExactReal::sqrt_int(3);
        assert_eq!(exact(&sol), &expected);
    }

    #[test]
    fn asa_degenerate_inputs_are_refused() {
        assert!(matches!(
            solve_asa_shared_altitude(0, 45, &ExactReal::from_int(6)),
            Err(SolverError::Degenerate(_))
        ));
        assert!(matches!(
            solve_asa_shared_altitude(90, 90, &ExactReal::from_int(6)),
            Err(SolverError::Degenerate(_))
        ));
        assert!(matches!(
            solve_asa_shared_altitude(30, 25, &ExactReal::from_int(6)),
            Err(SolverError::UnsupportedAngle(25))
        ));
    }

    #[test]
    fn sas_obtuse_oracles() {
        let sol = solve_sas_obtuse(&ExactReal::from_int(8), &ExactReal::from_int(6), 120).unwrap();
        let expected = &ExactReal::from_int(2) * &ExactReal::sqrt_int(37);
        assert_eq!(exact(&sol), &expected);

        let sol = solve_sas_obtuse(&ExactReal::zero(), &ExactReal::from_int(6), 120).unwrap();
        assert_eq!(exact(&sol), &ExactReal::from_int(6));
    }

    #[test]
    fn sas_irrational_root_reports_the_exact_square() {
        let sol = solve_sas_obtuse(&ExactReal::from_int(3), &ExactReal::from_int(4), 150).unwrap();
        match &sol.value {
            SolverValue::SquaredOnly { squared, approx } => {
                let expected =
                    &ExactReal::from_int(25) + &(&ExactReal::from_int(12) * &ExactReal::sqrt_int(3));
                assert_eq!(squared, &expected);
                let oracle = (25.0 + 12.0 * 3.0_f64.sqrt()).sqrt();
                assert!((approx - oracle).abs() < 1e-12);
            }
            other => panic!("expected a squared-only value, got {other}"),
        }
    }

    #[test]
    fn sas_rejects_non_obtuse_and_unsupported_angles() {
        assert!(matches!(
            solve_sas_obtuse(&ExactReal::from_int(3), &ExactReal::from_int(4), 90),
            Err(SolverError::Domain(_))
        ));
        assert!(matches!(
            solve_sas_obtuse(&ExactReal::from_int(3), &ExactReal::from_int(4), 100),
            Err(SolverError::UnsupportedAngle(_))
        ));
    }

    #[test]
    fn sightline_oracles() {
        let sol = solve_two_sightlines(&ExactReal::from_int(12), 45, 30).unwrap();
        let expected = &ExactReal::from_int(6) + &(&ExactReal::from_int(6) * &ExactReal::sqrt_int(3));
        assert_eq!(exact(&sol), &expected);

        let sol = solve_two_sightlines(&ExactReal::from_int(10), 60, 30).unwrap();
        assert_eq!(exact(&sol), &ExactReal::from_int(5));

        assert!(matches!(
            solve_two_sightlines(&ExactReal::from_int(12), 45, 45),
            Err(SolverError::Degenerate(_))
        ));
    }

    #[test]
    fn construction_and_law_routes_agree_exactly() {
        let asa = solve_asa_shared_altitude(30, 45, &ExactReal::from_int(6)).unwrap();
        let law = generic_sine_rule(30, 45, &ExactReal::from_int(6)).unwrap();
        assert_eq!(exact(&asa), &law);

        let sas = solve_sas_obtuse(&ExactReal::from_int(8), &ExactReal::from_int(6), 120).unwrap();
        let law = generic_cosine_rule(&ExactReal::from_int(8), &ExactReal::from_int(6), 120)
            .unwrap();
        assert_eq!(&exact(&sas).pow(2), &law);

        let sas = solve_sas_obtuse(&ExactReal::from_int(3), &ExactReal::from_int(4), 150).unwrap();
        let law = generic_cosine_rule(&ExactReal::from_int(3), &ExactReal::from_int(4), 150)
            .unwrap();
        match &sas.value {
            SolverValue::SquaredOnly { squared, .. } => assert_eq!(squared, &law),
            other => panic!("expected squared-only, got {other}"),
        }
    }

    #[test]
    fn right_angle_through_the_law_recovers_the_plain_identity() {
        let squared =
            generic_cosine_rule(&ExactReal::from_int(3), &ExactReal::from_int(4), 90).unwrap();
        assert_eq!(squared, ExactReal::from_int(25));
        assert_eq!(squared.sqrt().unwrap(), ExactReal::from_int(5));
    }

    #[test]
    fn showcase_matches_the_float_oracles() {
        let sols = showcase().unwrap();
        let oracles = [
            3.0_f64.sqrt() / 2.0,
            0.8,
            6.0 * 2.0_f64.sqrt(),
            148.0_f64.sqrt(),
            6.0 + 6.0 * 3.0_f64.sqrt(),
        ];
        assert_eq!(sols.len(), oracles.len());
        for (sol, want) in sols.iter().zip(oracles) {
            assert!(
                (sol.value.to_float() - want).abs() < 1e-10,
                "{}: {} vs {}",
                sol.problem,
                sol.value.to_float(),
                want
            );
        }
    }

    #[test]
    fn traces_are_exact_on_every_solution() {
        for sol in showcase().unwrap() {
            let dev = sol.trace.max_step_deviation(&Assignment::new()).unwrap();
            assert!(dev <= 1e-12, "{}: deviation {dev}", sol.problem);
            assert!(sol.construction.segments().count() >= 3);
        }
    }
}
