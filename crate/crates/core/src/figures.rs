//! The figure gallery: every construction the derivations and proofs
//! read from, addressable by name.
//!
//! Each entry bundles a builder (exact symbolic coordinates), the list
//! of symbols a caller must bind to evaluate it, a sampler that turns
//! uniform variates into a valid assignment (respecting each figure's
//! domain, e.g. `a + b < 90°` for the angle-sum figure), and an
//! `augment` hook that fills in dependent bindings (a complement angle,
//! a side length forced by the shape closing up).
//!
//! Figures whose coordinates only satisfy their segment claims for
//! genuine angles — where `cos` and `sin` are no longer independent —
//! are exactly the interesting ones: `Construction::layout` checks
//! every claim numerically, while the symbolic layer keeps the claims
//! unproven until a certificate says otherwise.

use crate::construction::{combined_figure, Construction, Point2};
use crate::trigexpr::{AngleSymbol, Assignment, ExprError, TrigRational};

// ======================================================================
// Registry plumbing
// ======================================================================

/// A symbol the caller must bind before evaluating a figure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeVar {
    /// Angle in radians.
    Angle(&'static str),
    /// Positive scalar length.
    Length(&'static str),
}

impl FreeVar {
    pub fn name(&self) -> &'static str {
        match self {
            FreeVar::Angle(n) | FreeVar::Length(n) => n,
        }
    }
}

/// One named figure: how to build it, what to bind, how to sample it.
pub struct FigureEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub build: fn() -> Construction,
    /// Symbols the caller supplies; dependent symbols are filled by
    /// [`FigureEntry::augment`].
    pub free: &'static [FreeVar],
    sample_fn: fn(&[f64]) -> Assignment,
    augment_fn: fn(&mut Assignment) -> Result<(), ExprError>,
}

impl FigureEntry {
    /// Build a valid assignment from uniform variates in `[0, 1)`,
    /// one per free symbol, dependent bindings included.
    pub fn sample(&self, uniforms: &[f64]) -> Assignment {
        assert_eq!(
            uniforms.len(),
            self.free.len(),
            "figure {} wants {} uniforms",
            self.name,
            self.free.len()
        );
        let mut asg = (self.sample_fn)(uniforms);
        (self.augment_fn)(&mut asg).expect("sampler binds all free symbols");
        asg
    }

    /// Fill in dependent bindings (complement angles, forced lengths)
    /// from the free ones the caller provided.
    pub fn augment(&self, asg: &mut Assignment) -> Result<(), ExprError> {
        (self.augment_fn)(asg)
    }
}

fn need_angle(asg: &Assignment, name: &str) -> Result<f64, ExprError> {
    asg.angles
        .get(name)
        .copied()
        .ok_or_else(|| ExprError::UnboundSymbol(name.to_string()))
}

fn need_length(asg: &Assignment, name: &str) -> Result<f64, ExprError> {
    asg.lengths
        .get(name)
        .copied()
        .ok_or_else(|| ExprError::UnboundSymbol(name.to_string()))
}

fn no_augment(_: &mut Assignment) -> Result<(), ExprError> {
    Ok(())
}

fn deg(d: f64) -> f64 {
    d.to_radians()
}

/// Uniform variate mapped into an open degree interval.
fn angle_in(u: f64, lo_deg: f64, hi_deg: f64) -> f64 {
    deg(lo_deg + u * (hi_deg - lo_deg))
}

// ======================================================================
// Shared expression shorthands
// ======================================================================

fn a_sym() -> AngleSymbol {
    AngleSymbol::new("a")
}

fn b_sym() -> AngleSymbol {
    AngleSymbol::new("b")
}

fn rint(n: i64) -> TrigRational {
    TrigRational::from_int(n)
}

// ======================================================================
// Single-angle function figures
// ======================================================================

/// The primary triangle in standard position: hypotenuse 1 from the
/// origin, so the legs *are* `cos(a)` and `sin(a)`.
fn build_primary() -> Construction {
    let a = a_sym();
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let mut f = Construction::new();
    f.add_point("A", Point2::origin()).expect("fresh");
    f.add_point("C", Point2::new(c.clone(), rint(0))).expect("fresh");
    f.add_point("B", Point2::new(c.clone(), s.clone())).expect("fresh");
    f.add_segment("A", "B", rint(1)).expect("points exist");
    f.add_segment("A", "C", c).expect("points exist");
    f.add_segment("C", "B", s).expect("points exist");
    f.mark_right_angle("C", "A", "B").expect("points exist");
    f.mark_angle("A", "B", "C", "a").expect("points exist");
    f
}

/// The similar copy scaled by `1/cos(a)`: baseline 1, so the far leg is
/// `tan(a)` and the hypotenuse `sec(a)`.
fn build_tangent() -> Construction {
    let a = a_sym();
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let mut f = Construction::new();
    f.add_point("A", Point2::origin()).expect("fresh");
    f.add_point("B", Point2::new(rint(1), rint(0))).expect("fresh");
    f.add_point("D", Point2::new(rint(1), &s / &c)).expect("fresh");
    f.add_segment("A", "B", rint(1)).expect("points exist");
    f.add_segment("B", "D", &s / &c).expect("points exist");
    f.add_segment("A", "D", &rint(1) / &c).expect("points exist");
    f.mark_right_angle("B", "A", "D").expect("points exist");
    f.mark_angle("A", "B", "D", "a").expect("points exist");
    f
}

/// The similar copy scaled by `1/sin(a)`: far leg 1, so the baseline is
/// `cot(a)` and the hypotenuse `csc(a)`.
fn build_cotangent() -> Construction {
    let a = a_sym();
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let mut f = Construction::new();
    f.add_point("E", Point2::origin()).expect("fresh");
    f.add_point("B", Point2::new(&c / &s, rint(0))).expect("fresh");
    f.add_point("A", Point2::new(&c / &s, rint(1))).expect("fresh");
    f.add_segment("E", "B", &c / &s).expect("points exist");
    f.add_segment("B", "A", rint(1)).expect("points exist");
    f.add_segment("E", "A", &rint(1) / &s).expect("points exist");
    f.mark_right_angle("B", "E", "A").expect("points exist");
    f.mark_angle("E", "A", "B", "a").expect("points exist");
    f
}

fn build_combined() -> Construction {
    combined_figure(&a_sym())
}

/// The combined figure re-read through the complementary angle `g`:
/// same points and lengths, with the complement marked wherever it
/// appears, so each length carries two function names at once.
fn build_cofunction() -> Construction {
    let mut f = combined_figure(&a_sym());
    f.mark_angle("A", "B", "E", "g").expect("points exist");
    f.mark_angle("B", "A", "C", "g").expect("points exist");
    f.mark_angle("D", "B", "C", "g").expect("points exist");
    f
}

fn augment_complement(asg: &mut Assignment) -> Result<(), ExprError> {
    let a = need_angle(asg, "a")?;
    asg.angles
        .insert("g".to_string(), std::f64::consts::FRAC_PI_2 - a);
    Ok(())
}

fn sample_single_angle(u: &[f64]) -> Assignment {
    Assignment::new().angle("a", angle_in(u[0], 5.0, 85.0))
}

fn sample_below_45(u: &[f64]) -> Assignment {
    Assignment::new().angle("a", angle_in(u[0], 5.0, 40.0))
}

// ======================================================================
// Two-angle figures (sum and difference)
// ======================================================================

/// Angle-sum figure: hypotenuse 1 at angle `a + b`, the inner triangle
/// with hypotenuse `cos(a)` at angle `b`, and the rectangle that carries
/// the vertical leg over to the baseline.
///
/// Coordinates (x = cos, s = sin): `B = (x_a x_b − s_a s_b, x_a s_b + s_a x_b)`.
fn build_angle_sum() -> Construction {
    let a = a_sym();
    let b = b_sym();
    let ca = TrigRational::cos(&a);
    let sa = TrigRational::sin(&a);
    let cb = TrigRational::cos(&b);
    let sb = TrigRational::sin(&b);
    let cacb = &ca * &cb;
    let casb = &ca * &sb;
    let sacb = &sa * &cb;
    let sasb = &sa * &sb;
    let rise = &casb + &sacb; // vertical reach of the tilted hypotenuse
    let run = &cacb - &sasb; // horizontal reach
    let mut f = Construction::new();
    f.add_point("A", Point2::origin()).expect("fresh");
    f.add_point("F", Point2::new(cacb.clone(), rint(0))).expect("fresh");
    f.add_point("C", Point2::new(cacb.clone(), casb.clone())).expect("fresh");
    f.add_point("G", Point2::new(cacb.clone(), rise.clone())).expect("fresh");
    f.add_point("H", Point2::new(run.clone(), rint(0))).expect("fresh");
    f.add_point("B", Point2::new(run.clone(), rise.clone())).expect("fresh");
    let mut seg = |p: &str, q: &str, len: TrigRational| {
        f.add_segment(p, q, len).expect("points exist");
    };
    seg("A", "B", rint(1));
    seg("A", "C", ca.clone());
    seg("C", "B", sa.clone());
    seg("A", "F", cacb.clone());
    seg("F", "C", casb.clone());
    seg("C", "G", sacb.clone());
    seg("G", "B", sasb.clone());
    seg("A", "H", run.clone());
    seg("H", "F", sasb.clone());
    seg("H", "B", rise.clone());
    seg("F", "G", rise.clone());
    f.assert_collinear(&["F", "C", "G"]).expect("points exist");
    f.assert_collinear(&["A", "H", "F"]).expect("points exist");
    f.mark_right_angle("C", "A", "B").expect("points exist");
    f.mark_right_angle("F", "A", "G").expect("points exist");
    f.mark_right_angle("H", "A", "B").expect("points exist");
    f.mark_right_angle("G", "C", "B").expect("points exist");
    f.mark_right_angle("B", "G", "H").expect("points exist");
    f.mark_angle("A", "C", "F", "b").expect("points exist");
    f.mark_angle("A", "B", "C", "a").expect("points exist");
    f.mark_angle("C", "B", "G", "b").expect("points exist");
    f
}

fn sample_angle_sum(u: &[f64]) -> Assignment {
    let a = 5.0 + u[0] * 75.0;
    let b = 5.0 + u[1] * (85.0 - a - 5.0).max(1.0);
    Assignment::new().angle("a", deg(a)).angle("b", deg(b))
}

/// Angle-difference figure: hypotenuse 1 at angle `a − b`, the inner
/// triangle with hypotenuse `cos(b)` along the ray at angle `a`.
fn build_angle_difference() -> Construction {
    let a = a_sym();
    let b = b_sym();
    let ca = TrigRational::cos(&a);
    let sa = TrigRational::sin(&a);
    let cb = TrigRational::cos(&b);
    let sb = TrigRational::sin(&b);
    let cacb = &ca * &cb;
    let casb = &ca * &sb;
    let sacb = &sa * &cb;
    let sasb = &sa * &sb;
    let run = &cacb + &sasb;
    let drop = &sacb - &casb; // height of the lowered endpoint
    let mut f = Construction::new();
    f.add_point("A", Point2::origin()).expect("fresh");
    f.add_point("H", Point2::new(cacb.clone(), rint(0))).expect("fresh");
    f.add_point("F", Point2::new(cacb.clone(), sacb.clone())).expect("fresh");
    f.add_point("G", Point2::new(run.clone(), sacb.clone())).expect("fresh");
    f.add_point("B", Point2::new(run.clone(), drop.clone())).expect("fresh");
    f.add_point("C", Point2::new(run.clone(), rint(0))).expect("fresh");
    let mut seg = |p: &str, q: &str, len: TrigRational| {
        f.add_segment(p, q, len).expect("points exist");
    };
    seg("A", "B", rint(1));
    seg("A", "F", cb.clone());
    seg("F", "B", sb.clone());
    seg("A", "H", cacb.clone());
    seg("H", "F", sacb.clone());
    seg("F", "G", sasb.clone());
    seg("G", "B", casb.clone());
    seg("G", "C", sacb.clone());
    seg("B", "C", drop.clone());
    seg("H", "C", sasb.clone());
    seg("A", "C", run.clone());
    f.assert_collinear(&["A", "H", "C"]).expect("points exist");
    f.assert_collinear(&["G", "B", "C"]).expect("points exist");
    f.mark_right_angle("F", "A", "B").expect("points exist");
    f.mark_right_angle("H", "A", "F").expect("points exist");
    f.mark_right_angle("G", "F", "C").expect("points exist");
    f.mark_right_angle("C", "A", "G").expect("points exist");
    f.mark_angle("A", "C", "F", "a").expect("points exist");
    f.mark_angle("A", "B", "F", "b").expect("points exist");
    f.mark_angle("B", "F", "G", "a").expect("points exist");
    f
}

fn sample_angle_difference(u: &[f64]) -> Assignment {
    let a = 15.0 + u[0] * 70.0;
    let b = 5.0 + u[1] * (a - 5.0 - 5.0).max(1.0);
    Assignment::new().angle("a", deg(a)).angle("b", deg(b))
}

// ======================================================================
// Oblique-triangle figure (shared altitude)
// ======================================================================

/// A general triangle split by the altitude from its apex: the left
/// right-triangle has hypotenuse `c` and angle `alpha`, the right one
/// hypotenuse `a` and angle `gamma`. The altitude is stored once, read
/// twice — equating the two readings is the law the derivation extracts.
fn build_oblique() -> Construction {
    let alpha = AngleSymbol::new("alpha");
    let gamma = AngleSymbol::new("gamma");
    let len_a = TrigRational::length("a");
    let len_c = TrigRational::length("c");
    let ad = &len_c * &TrigRational::cos(&alpha);
    let db = &len_c * &TrigRational::sin(&alpha);
    let dc = &len_a * &TrigRational::cos(&gamma);
    let ac = &ad + &dc;
    let mut f = Construction::new();
    f.add_point("A", Point2::origin()).expect("fresh");
    f.add_point("D", Point2::new(ad.clone(), rint(0))).expect("fresh");
    f.add_point("B", Point2::new(ad.clone(), db.clone())).expect("fresh");
    f.add_point("C", Point2::new(ac.clone(), rint(0))).expect("fresh");
    f.add_segment("A", "B", len_c.clone()).expect("points exist");
    f.add_segment("A", "D", ad).expect("points exist");
    f.add_segment("D", "B", db).expect("points exist");
    f.add_segment("D", "C", dc).expect("points exist");
    f.add_segment("B", "C", len_a.clone()).expect("points exist");
    f.add_segment("A", "C", ac).expect("points exist");
    f.assert_collinear(&["A", "D", "C"]).expect("points exist");
    f.mark_right_angle("D", "A", "B").expect("points exist");
    f.mark_right_angle("D", "B", "C").expect("points exist");
    f.mark_angle("A", "B", "C", "alpha").expect("points exist");
    f.mark_angle("C", "A", "B", "gamma").expect("points exist");
    f
}

fn sample_oblique(u: &[f64]) -> Assignment {
    Assignment::new()
        .angle("alpha", angle_in(u[0], 10.0, 80.0))
        .angle("gamma", angle_in(u[1], 10.0, 80.0))
        .length("c", 0.5 + 2.5 * u[2])
}

/// The figure only closes when `a·sin(gamma) = c·sin(alpha)`, so `a` is
/// a dependent binding, not a free one.
fn augment_oblique(asg: &mut Assignment) -> Result<(), ExprError> {
    let alpha = need_angle(asg, "alpha")?;
    let gamma = need_angle(asg, "gamma")?;
    let c = need_length(asg, "c")?;
    asg.lengths
        .insert("a".to_string(), c * alpha.sin() / gamma.sin());
    Ok(())
}

// ======================================================================
// Dissection figures
// ======================================================================

/// Tilted unit square inside a square of side `sin(a) + cos(a)`: four
/// corner triangles with legs `sin(a)`, `cos(a)` around a unit square.
fn build_square_in_square() -> Construction {
    let a = a_sym();
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let side = &s + &c;
    let mut f = Construction::new();
    f.add_point("A", Point2::origin()).expect("fresh");
    f.add_point("B", Point2::new(side.clone(), rint(0))).expect("fresh");
    f.add_point("C", Point2::new(side.clone(), side.clone())).expect("fresh");
    f.add_point("D", Point2::new(rint(0), side.clone())).expect("fresh");
    f.add_point("E", Point2::new(c.clone(), rint(0))).expect("fresh");
    f.add_point("F", Point2::new(side.clone(), c.clone())).expect("fresh");
    f.add_point("G", Point2::new(s.clone(), side.clone())).expect("fresh");
    f.add_point("H", Point2::new(rint(0), s.clone())).expect("fresh");
    let mut seg = |p: &str, q: &str, len: TrigRational| {
        f.add_segment(p, q, len).expect("points exist");
    };
    for (p, q) in [("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")] {
        seg(p, q, side.clone());
    }
    seg("A", "E", c.clone());
    seg("E", "B", s.clone());
    seg("B", "F", c.clone());
    seg("F", "C", s.clone());
    seg("C", "G", c.clone());
    seg("G", "D", s.clone());
    seg("D", "H", c.clone());
    seg("H", "A", s.clone());
    for (p, q) in [("E", "F"), ("F", "G"), ("G", "H"), ("H", "E")] {
        seg(p, q, rint(1));
    }
    f.assert_collinear(&["A", "E", "B"]).expect("points exist");
    f.assert_collinear(&["B", "F", "C"]).expect("points exist");
    f.assert_collinear(&["C", "G", "D"]).expect("points exist");
    f.assert_collinear(&["D", "H", "A"]).expect("points exist");
    f.mark_right_angle("A", "B", "D").expect("points exist");
    f.mark_right_angle("B", "A", "C").expect("points exist");
    f.mark_right_angle("C", "B", "D").expect("points exist");
    f.mark_right_angle("D", "A", "C").expect("points exist");
    f.mark_right_angle("E", "F", "H").expect("points exist");
    f.mark_right_angle("F", "E", "G").expect("points exist");
    f.mark_right_angle("G", "F", "H").expect("points exist");
    f.mark_right_angle("H", "E", "G").expect("points exist");
    f.mark_angle("E", "A", "H", "a").expect("points exist");
    f.mark_angle("F", "B", "E", "a").expect("points exist");
    f.mark_angle("G", "C", "F", "a").expect("points exist");
    f.mark_angle("H", "D", "G", "a").expect("points exist");
    f
}

/// Pinwheel dissection of the unit square: four right triangles with
/// legs `cos(a)`, `sin(a)` whose hypotenuses are the square's sides,
/// around an inner square of side `cos(a) − sin(a)` (so `a < 45°`).
fn build_pinwheel() -> Construction {
    let a = a_sym();
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let cc = &c * &c;
    let cs = &c * &s;
    let one = rint(1);
    let mut f = Construction::new();
    f.add_point("A", Point2::origin()).expect("fresh");
    f.add_point("B", Point2::new(one.clone(), rint(0))).expect("fresh");
    f.add_point("C", Point2::new(one.clone(), one.clone())).expect("fresh");
    f.add_point("D", Point2::new(rint(0), one.clone())).expect("fresh");
    f.add_point("F", Point2::new(cc.clone(), cs.clone())).expect("fresh");
    f.add_point("G", Point2::new(&one - &cs, cc.clone())).expect("fresh");
    f.add_point("H", Point2::new(&one - &cc, &one - &cs)).expect("fresh");
    f.add_point("E", Point2::new(cs.clone(), &one - &cc)).expect("fresh");
    let inner = &c - &s;
    let mut seg = |p: &str, q: &str, len: TrigRational| {
        f.add_segment(p, q, len).expect("points exist");
    };
    for (p, q) in [("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")] {
        seg(p, q, rint(1));
    }
    seg("A", "F", c.clone());
    seg("F", "B", s.clone());
    seg("B", "G", c.clone());
    seg("G", "C", s.clone());
    seg("C", "H", c.clone());
    seg("H", "D", s.clone());
    seg("D", "E", c.clone());
    seg("E", "A", s.clone());
    for (p, q) in [("E", "F"), ("F", "G"), ("G", "H"), ("H", "E")] {
        seg(p, q, inner.clone());
    }
    f.mark_right_angle("A", "B", "D").expect("points exist");
    f.mark_right_angle("B", "A", "C").expect("points exist");
    f.mark_right_angle("C", "B", "D").expect("points exist");
    f.mark_right_angle("D", "A", "C").expect("points exist");
    f.mark_right_angle("F", "A", "B").expect("points exist");
    f.mark_right_angle("G", "B", "C").expect("points exist");
    f.mark_right_angle("H", "C", "D").expect("points exist");
    f.mark_right_angle("E", "D", "A").expect("points exist");
    f.mark_right_angle("F", "E", "G").expect("points exist");
    f.mark_right_angle("G", "F", "H").expect("points exist");
    f.mark_right_angle("H", "G", "E").expect("points exist");
    f.mark_right_angle("E", "H", "F").expect("points exist");
    f.mark_angle("A", "B", "F", "a").expect("points exist");
    f.mark_angle("B", "C", "G", "a").expect("points exist");
    f.mark_angle("C", "D", "H", "a").expect("points exist");
    f.mark_angle("D", "A", "E", "a").expect("points exist");
    f
}

/// Right triangle with the altitude to the hypotenuse: the foot splits
/// the unit hypotenuse into `cos²(a)` and the remaining piece, each leg
/// being the geometric mean of its shadow and the whole.
fn build_altitude_split() -> Construction {
    let a = a_sym();
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let cc = &c * &c;
    let ss = &s * &s;
    let sc = &s * &c;
    let mut f = Construction::new();
    f.add_point("A", Point2::origin()).expect("fresh");
    f.add_point("B", Point2::new(rint(1), rint(0))).expect("fresh");
    f.add_point("C", Point2::new(cc.clone(), sc.clone())).expect("fresh");
    f.add_point("D", Point2::new(cc.clone(), rint(0))).expect("fresh");
    f.add_segment("A", "B", rint(1)).expect("points exist");
    f.add_segment("A", "C", c.clone()).expect("points exist");
    f.add_segment("C", "B", s.clone()).expect("points exist");
    f.add_segment("C", "D", sc).expect("points exist");
    f.add_segment("A", "D", cc).expect("points exist");
    f.add_segment("D", "B", ss).expect("points exist");
    f.assert_collinear(&["A", "D", "B"]).expect("points exist");
    f.mark_right_angle("C", "A", "B").expect("points exist");
    f.mark_right_angle("D", "A", "C").expect("points exist");
    f.mark_right_angle("D", "C", "B").expect("points exist");
    f.mark_angle("A", "B", "C", "a").expect("points exist");
    f.mark_angle("C", "B", "D", "a").expect("points exist");
    f
}

/// Semicircle on diameter `BC` with an inscribed point `D`: the chord
/// through the top splits the vertical diameter at `F`, and the two
/// shadow triangles at `F` face the auxiliary angle `b`.
fn build_thales_chords() -> Construction {
    let a = a_sym();
    let b = b_sym();
    let sa = TrigRational::sin(&a);
    let ca = TrigRational::cos(&a);
    let cb = TrigRational::cos(&b);
    let sb = TrigRational::sin(&b);
    let one = rint(1);
    let mut f = Construction::new();
    f.add_point("A", Point2::origin()).expect("fresh");
    f.add_point("B", Point2::new(rint(0), rint(-1))).expect("fresh");
    f.add_point("C", Point2::new(rint(0), rint(1))).expect("fresh");
    f.add_point("F", Point2::new(rint(0), sa.clone())).expect("fresh");
    f.add_point("D", Point2::new(-&ca, sa.clone())).expect("fresh");
    f.add_point("E", Point2::new(ca.clone(), sa.clone())).expect("fresh");
    let mut seg = |p: &str, q: &str, len: TrigRational| {
        f.add_segment(p, q, len).expect("points exist");
    };
    seg("A", "B", one.clone());
    seg("A", "C", one.clone());
    seg("A", "D", one.clone());
    seg("A", "E", one.clone());
    seg("A", "F", sa.clone());
    seg("F", "C", &one - &sa);
    seg("F", "B", &one + &sa);
    seg("D", "F", ca.clone());
    seg("F", "E", ca.clone());
    seg("D", "E", &rint(2) * &ca);
    seg("B", "C", rint(2));
    seg("E", "C", &ca / &cb);
    seg("D", "C", &ca / &cb);
    seg("D", "B", &ca / &sb);
    f.assert_collinear(&["B", "A", "F", "C"]).expect("points exist");
    f.assert_collinear(&["D", "F", "E"]).expect("points exist");
    f.mark_right_angle("F", "C", "D").expect("points exist");
    f.mark_right_angle("F", "C", "E").expect("points exist");
    f.mark_right_angle("F", "B", "D").expect("points exist");
    f.mark_right_angle("F", "B", "E").expect("points exist");
    f.mark_right_angle("D", "B", "C").expect("points exist");
    f.mark_right_angle("E", "B", "C").expect("points exist");
    f.mark_angle("D", "A", "F", "a").expect("points exist");
    f.mark_angle("E", "A", "F", "a").expect("points exist");
    f.mark_angle("E", "C", "F", "b").expect("points exist");
    f.mark_angle("D", "C", "F", "b").expect("points exist");
    f
}

/// The auxiliary chord angle is forced by the figure:
/// `tan(b) = (1 − sin(a)) / cos(a)`.
fn augment_thales(asg: &mut Assignment) -> Result<(), ExprError> {
    let a = need_angle(asg, "a")?;
    asg.angles
        .insert("b".to_string(), ((1.0 - a.sin()) / a.cos()).atan());
    Ok(())
}

/// Sine-chord figure: vertical unit chord `AD`, horizontal line through
/// `E` at height `sin(a)`, and the slanted line `D`–`F`–`G` cutting it.
fn build_sine_chord() -> Construction {
    let a = a_sym();
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let one = rint(1);
    let rest = &one - &s; // the upper piece of the unit chord
    let mut f = Construction::new();
    f.add_point("A", Point2::origin()).expect("fresh");
    f.add_point("D", Point2::new(rint(0), one.clone())).expect("fresh");
    f.add_point("E", Point2::new(rint(0), s.clone())).expect("fresh");
    f.add_point("C", Point2::new(c.clone(), s.clone())).expect("fresh");
    f.add_point("F", Point2::new(&s * &c, &s * &s)).expect("fresh");
    f.add_point("G", Point2::new(&(&s / &c) * &rest, s.clone()))
        .expect("fresh");
    let mut seg = |p: &str, q: &str, len: TrigRational| {
        f.add_segment(p, q, len).expect("points exist");
    };
    seg("A", "D", one.clone());
    seg("A", "E", s.clone());
    seg("E", "D", rest.clone());
    seg("E", "C", c.clone());
    seg("E", "G", &(&s / &c) * &rest);
    seg("G", "C", &rest / &c);
    seg("D", "F", c.clone());
    seg("A", "F", s.clone());
    seg("F", "C", rest.clone());
    seg("F", "G", &(&s * &rest) / &c);
    f.assert_collinear(&["A", "E", "D"]).expect("points exist");
    f.assert_collinear(&["E", "G", "C"]).expect("points exist");
    f.assert_collinear(&["D", "G", "F"]).expect("points exist");
    f.mark_right_angle("E", "D", "G").expect("points exist");
    f.mark_right_angle("E", "D", "C").expect("points exist");
    f.mark_right_angle("F", "A", "D").expect("points exist");
    f.mark_right_angle("F", "G", "C").expect("points exist");
    f.mark_angle("D", "E", "G", "a").expect("points exist");
    f.mark_angle("C", "F", "G", "a").expect("points exist");
    f.mark_angle("D", "A", "F", "a").expect("points exist");
    f
}

/// Euclid-style figure: squares erected on both legs, the square on the
/// hypotenuse below, and the altitude line splitting it into the two
/// rectangles that absorb the leg squares.
fn build_three_squares() -> Construction {
    let a = a_sym();
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let cc = &c * &c;
    let ss = &s * &s;
    let sc = &s * &c;
    let one = rint(1);
    let mut f = Construction::new();
    f.add_point("A", Point2::origin()).expect("fresh");
    f.add_point("B", Point2::new(one.clone(), rint(0))).expect("fresh");
    f.add_point("C", Point2::new(cc.clone(), sc.clone())).expect("fresh");
    f.add_point("K", Point2::new(cc.clone(), rint(0))).expect("fresh");
    f.add_point("E", Point2::new(rint(0), rint(-1))).expect("fresh");
    f.add_point("D", Point2::new(one.clone(), rint(-1))).expect("fresh");
    f.add_point("J", Point2::new(cc.clone(), rint(-1))).expect("fresh");
    f.add_point("H", Point2::new(-&sc, cc.clone())).expect("fresh");
    f.add_point("I", Point2::new(&cc - &sc, &sc + &cc)).expect("fresh");
    f.add_point("G", Point2::new(&cc + &sc, &sc + &ss)).expect("fresh");
    f.add_point("F", Point2::new(&one + &sc, ss.clone())).expect("fresh");
    let mut seg = |p: &str, q: &str, len: TrigRational| {
        f.add_segment(p, q, len).expect("points exist");
    };
    seg("A", "B", one.clone());
    seg("A", "C", c.clone());
    seg("C", "B", s.clone());
    seg("C", "K", sc.clone());
    seg("A", "K", cc.clone());
    seg("K", "B", ss.clone());
    seg("A", "H", c.clone());
    seg("H", "I", c.clone());
    seg("I", "C", c.clone());
    seg("C", "G", s.clone());
    seg("G", "F", s.clone());
    seg("F", "B", s.clone());
    seg("A", "E", one.clone());
    seg("E", "D", one.clone());
    seg("D", "B", one.clone());
    seg("K", "J", one.clone());
    seg("E", "J", cc.clone());
    seg("J", "D", ss.clone());
    f.assert_collinear(&["A", "K", "B"]).expect("points exist");
    f.assert_collinear(&["E", "J", "D"]).expect("points exist");
    f.mark_right_angle("C", "A", "B").expect("points exist");
    f.mark_right_angle("K", "A", "C").expect("points exist");
    f.mark_right_angle("K", "B", "C").expect("points exist");
    f.mark_right_angle("A", "B", "E").expect("points exist");
    f.mark_right_angle("B", "A", "D").expect("points exist");
    f.mark_right_angle("E", "A", "J").expect("points exist");
    f.mark_right_angle("J", "E", "K").expect("points exist");
    f.mark_right_angle("A", "C", "H").expect("points exist");
    f.mark_right_angle("C", "A", "I").expect("points exist");
    f.mark_right_angle("H", "A", "I").expect("points exist");
    f.mark_right_angle("B", "C", "F").expect("points exist");
    f.mark_right_angle("C", "B", "G").expect("points exist");
    f.mark_right_angle("G", "C", "F").expect("points exist");
    f.mark_right_angle("D", "B", "J").expect("points exist");
    f.mark_angle("A", "B", "C", "a").expect("points exist");
    f.mark_angle("C", "B", "K", "a").expect("points exist");
    f
}

/// Trapezoid built from two leg-square triangles and the right isosceles
/// triangle between them; the two hypotenuses meet at an exact right
/// angle even in the free ring.
fn build_trapezoid() -> Construction {
    let a = a_sym();
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let side = &s + &c;
    let mut f = Construction::new();
    f.add_point("C", Point2::origin()).expect("fresh");
    f.add_point("A", Point2::new(rint(0), c.clone())).expect("fresh");
    f.add_point("B", Point2::new(s.clone(), rint(0))).expect("fresh");
    f.add_point("H", Point2::new(side.clone(), rint(0))).expect("fresh");
    f.add_point("G", Point2::new(side.clone(), s.clone())).expect("fresh");
    let mut seg = |p: &str, q: &str, len: TrigRational| {
        f.add_segment(p, q, len).expect("points exist");
    };
    seg("C", "A", c.clone());
    seg("C", "B", s.clone());
    seg("A", "B", rint(1));
    seg("B", "H", c.clone());
    seg("H", "G", s.clone());
    seg("B", "G", rint(1));
    seg("C", "H", side.clone());
    seg(
        "A",
        "G",
        TrigRational::constant(crate::exactnum::ExactReal::sqrt_int(2)),
    );
    f.assert_collinear(&["C", "B", "H"]).expect("points exist");
    f.mark_right_angle("C", "A", "B").expect("points exist");
    f.mark_right_angle("H", "B", "G").expect("points exist");
    f.mark_right_angle("B", "A", "G").expect("points exist");
    f.mark_angle("A", "B", "C", "a").expect("points exist");
    f.mark_angle("B", "G", "H", "a").expect("points exist");
    f
}

/// Isosceles staircase figure: apex angle `2a` at `B`, the ray from `A`
/// at angle `a` meeting the vertical through `C`, the altitude foot `O`
/// on `AB`, and the limit point `E` of the staircase on the far side,
/// with `AE ⊥ AB` exactly.
fn build_staircase() -> Construction {
    let a = a_sym();
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let one = rint(1);
    let two = rint(2);
    let ss = &s * &s;
    let sc = &s * &c;
    let gap = &(&c * &c) - &ss; // cos² − sin², positive while a < 45°
    let ea = &(&two * &sc) / &gap;
    let mut f = Construction::new();
    f.add_point("G", Point2::origin()).expect("fresh");
    f.add_point("A", Point2::new(-&s, rint(0))).expect("fresh");
    f.add_point("C", Point2::new(s.clone(), rint(0))).expect("fresh");
    f.add_point("B", Point2::new(rint(0), c.clone())).expect("fresh");
    f.add_point("D", Point2::new(s.clone(), &(&two * &ss) / &c))
        .expect("fresh");
    f.add_point(
        "E",
        Point2::new(&(-&s) - &(&ea * &c), &ea * &s),
    )
    .expect("fresh");
    f.add_point(
        "O",
        Point2::new(&(&(&two * &ss) * &s) - &s, &(&two * &ss) * &c),
    )
    .expect("fresh");
    let mut seg = |p: &str, q: &str, len: TrigRational| {
        f.add_segment(p, q, len).expect("points exist");
    };
    seg("A", "B", one.clone());
    seg("B", "C", one.clone());
    seg("G", "A", s.clone());
    seg("G", "C", s.clone());
    seg("G", "B", c.clone());
    seg("A", "C", &two * &s);
    seg("A", "D", &(&two * &s) / &c);
    seg("C", "D", &(&two * &ss) / &c);
    seg("E", "A", ea.clone());
    seg("E", "B", &(&(&c * &c) + &ss) / &gap);
    seg("A", "O", &two * &ss);
    seg("O", "C", &two * &sc);
    seg("O", "B", &one - &(&two * &ss));
    f.assert_collinear(&["A", "G", "C"]).expect("points exist");
    f.assert_collinear(&["A", "O", "B"]).expect("points exist");
    f.mark_right_angle("G", "A", "B").expect("points exist");
    f.mark_right_angle("G", "C", "B").expect("points exist");
    f.mark_right_angle("C", "A", "D").expect("points exist");
    f.mark_right_angle("A", "E", "B").expect("points exist");
    f.mark_right_angle("O", "A", "C").expect("points exist");
    f.mark_right_angle("O", "B", "C").expect("points exist");
    f.mark_angle("A", "C", "D", "a").expect("points exist");
    f.mark_angle("B", "A", "G", "a").expect("points exist");
    f.mark_angle("B", "C", "G", "a").expect("points exist");
    f
}

// ======================================================================
// The registry
// ======================================================================

static FIGURES: &[FigureEntry] = &[
    FigureEntry {
        name: "primary",
        summary: "unit-hypotenuse right triangle defining sin and cos",
        build: build_primary,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_single_angle,
        augment_fn: no_augment,
    },
    FigureEntry {
        name: "tangent",
        summary: "similar copy with baseline 1 carrying tan and sec",
        build: build_tangent,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_single_angle,
        augment_fn: no_augment,
    },
    FigureEntry {
        name: "cotangent",
        summary: "similar copy with far leg 1 carrying cot and csc",
        build: build_cotangent,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_single_angle,
        augment_fn: no_augment,
    },
    FigureEntry {
        name: "combined",
        summary: "one figure carrying all six function lengths",
        build: build_combined,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_single_angle,
        augment_fn: no_augment,
    },
    FigureEntry {
        name: "cofunction",
        summary: "combined figure re-read through the complement angle",
        build: build_cofunction,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_single_angle,
        augment_fn: augment_complement,
    },
    FigureEntry {
        name: "angle-sum",
        summary: "stacked triangles realizing sin and cos of a + b",
        build: build_angle_sum,
        free: &[FreeVar::Angle("a"), FreeVar::Angle("b")],
        sample_fn: sample_angle_sum,
        augment_fn: no_augment,
    },
    FigureEntry {
        name: "angle-difference",
        summary: "folded triangles realizing sin and cos of a - b",
        build: build_angle_difference,
        free: &[FreeVar::Angle("a"), FreeVar::Angle("b")],
        sample_fn: sample_angle_difference,
        augment_fn: no_augment,
    },
    FigureEntry {
        name: "oblique",
        summary: "general triangle split by the apex altitude",
        build: build_oblique,
        free: &[
            FreeVar::Angle("alpha"),
            FreeVar::Angle("gamma"),
            FreeVar::Length("c"),
        ],
        sample_fn: sample_oblique,
        augment_fn: augment_oblique,
    },
    FigureEntry {
        name: "square-in-square",
        summary: "tilted unit square inside a sin+cos square",
        build: build_square_in_square,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_single_angle,
        augment_fn: no_augment,
    },
    FigureEntry {
        name: "pinwheel",
        summary: "unit square dissected into four triangles and a core",
        build: build_pinwheel,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_below_45,
        augment_fn: no_augment,
    },
    FigureEntry {
        name: "altitude-split",
        summary: "altitude to the hypotenuse splitting it into shadows",
        build: build_altitude_split,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_single_angle,
        augment_fn: no_augment,
    },
    FigureEntry {
        name: "thales-chords",
        summary: "semicircle chords through the sine point on a diameter",
        build: build_thales_chords,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_single_angle,
        augment_fn: augment_thales,
    },
    FigureEntry {
        name: "sine-chord",
        summary: "unit chord cut at sin(a) with a slanted similar pair",
        build: build_sine_chord,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_single_angle,
        augment_fn: no_augment,
    },
    FigureEntry {
        name: "three-squares",
        summary: "leg squares sheared into rectangles of the base square",
        build: build_three_squares,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_single_angle,
        augment_fn: no_augment,
    },
    FigureEntry {
        name: "trapezoid",
        summary: "two leg triangles and an isosceles one in a trapezoid",
        build: build_trapezoid,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_single_angle,
        augment_fn: no_augment,
    },
    FigureEntry {
        name: "staircase",
        summary: "isosceles apex with a geometric staircase to its limit",
        build: build_staircase,
        free: &[FreeVar::Angle("a")],
        sample_fn: sample_below_45,
        augment_fn: no_augment,
    },
];

/// Every registered figure, in gallery order.
pub fn all() -> &'static [FigureEntry] {
    FIGURES
}

/// Look a figure up by its gallery name.
pub fn by_name(name: &str) -> Option<&'static FigureEntry> {
    FIGURES.iter().find(|f| f.name == name)
}

// ======================================================================
// Tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_figure_lays_out_at_sampled_assignments() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for entry in all() {
            let fig = (entry.build)();
            for round in 0..25 {
                let uniforms: Vec<f64> =
                    (0..entry.free.len()).map(|_| rng.gen::<f64>()).collect();
                let asg = entry.sample(&uniforms);
                if let Err(e) = fig.layout(&asg) {
                    panic!("figure {} round {round}: {e}", entry.name);
                }
            }
        }
    }

    #[test]
    fn registry_lookup_finds_every_entry_once() {
        for entry in all() {
            let found = by_name(entry.name).expect("entry is registered");
            assert_eq!(found.name, entry.name);
        }
        assert!(by_name("no-such-figure").is_none());
        let mut names: Vec<_> = all().iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), all().len(), "names are unique");
    }

    #[test]
    fn staircase_limit_point_at_thirty_degrees() {
        let entry = by_name("staircase").unwrap();
        let fig = (entry.build)();
        let asg = Assignment::new().angle("a", 30f64.to_radians());
        let coords = fig.layout(&asg).unwrap();
        let (ex, ey) = coords["E"];
        assert!((ex - (-2.0)).abs() < 1e-12);
        assert!((ey - 30f64.to_radians().cos()).abs() < 1e-12);
        // The limit hypotenuse: 1/(cos² − sin²) = 2 at 30°.
        let (bx, by) = coords["B"];
        let eb = ((bx - ex).powi(2) + (by - ey).powi(2)).sqrt();
        assert!((eb - 2.0).abs() < 1e-12);
        // and the apex angle seen from E spans 2a = 60°.
        let (ax, ay) = coords["A"];
        let v1 = (ax - bx, ay - by);
        let v2 = (ex - bx, ey - by);
        let dot = v1.0 * v2.0 + v1.1 * v2.1;
        let n1 = (v1.0 * v1.0 + v1.1 * v1.1).sqrt();
        let n2 = (v2.0 * v2.0 + v2.1 * v2.1).sqrt();
        let angle = (dot / (n1 * n2)).acos();
        assert!((angle - 60f64.to_radians()).abs() < 1e-9);
    }

    #[test]
    fn oblique_figure_forces_the_dependent_side() {
        let entry = by_name("oblique").unwrap();
        let mut asg = Assignment::new()
            .angle("alpha", 40f64.to_radians())
            .angle("gamma", 65f64.to_radians())
            .length("c", 2.0);
        entry.augment(&mut asg).unwrap();
        let a = asg.lengths["a"];
        assert!((a * 65f64.to_radians().sin() - 2.0 * 40f64.to_radians().sin()).abs() < 1e-12);
        let fig = (entry.build)();
        fig.layout(&asg).unwrap();
    }

    #[test]
    fn thales_chords_bind_the_auxiliary_angle() {
        let entry = by_name("thales-chords").unwrap();
        let mut asg = Assignment::new().angle("a", 50f64.to_radians());
        entry.augment(&mut asg).unwrap();
        let a = 50f64.to_radians();
        let b = asg.angles["b"];
        assert!((b.tan() - (1.0 - a.sin()) / a.cos()).abs() < 1e-12);
        (entry.build)().layout(&asg).unwrap();
    }

    #[test]
    fn augment_reports_missing_free_symbols() {
        let entry = by_name("oblique").unwrap();
        let mut empty = Assignment::new();
        assert!(matches!(
            entry.augment(&mut empty),
            Err(ExprError::UnboundSymbol(_))
        ));
    }
}
