//! Straightedge constructions: labeled points, segments with symbolic
//! lengths, collinearity assertions, and right-angle marks.
//!
//! The primitive object is a right triangle with hypotenuse 1 whose acute
//! angle names the indeterminates: the leg opposite the angle *is*
//! `sin(a)` and the adjacent leg *is* `cos(a)` — those are definitions
//! here, not theorems. Larger figures are assembled by scaling similar
//! copies and gluing them along edges whose symbolic lengths agree
//! exactly.
//!
//! Every point carries author-assigned exact coordinates. [`Construction::layout`]
//! evaluates them numerically and then *checks the author's claims*: each
//! segment length, each right-angle mark, and each collinearity chain must
//! hold to 1e-9, so a mis-drawn figure cannot survive evaluation. The
//! symbolic layer never infers lengths from coordinates — the interesting
//! chain equations are exactly the ones the free ring cannot prove, which
//! is the point of the proof layer.

use crate::trigexpr::{
    push_condition, Assignment, ExprError, SideCondition, TrigRational,
};
use crate::trigexpr::AngleSymbol;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

// ======================================================================
// Errors
// ======================================================================

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("duplicate point label {0}")]
    DuplicateLabel(String),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("segment {a}-{b} already has length {existing}, refusing {offered}")]
    EdgeMismatch {
        a: String,
        b: String,
        existing: String,
        offered: String,
    },
    #[error("no segment between {a} and {b}")]
    MissingSegment { a: String, b: String },
    #[error("chain {0} was not asserted collinear")]
    ChainNotAsserted(String),
    #[error("a collinear chain needs at least three points")]
    ChainTooShort,
    #[error("scale factor is identically zero")]
    DegenerateScale,
    #[error("gluing leaves triangle vertex {0} unmapped (or maps it twice)")]
    IncompleteGluing(String),
    #[error("layout: segment {a}-{b} should have length {expected} but the embedding gives {actual}")]
    LayoutLength {
        a: String,
        b: String,
        expected: String,
        actual: String,
    },
    #[error("layout: marked right angle at {vertex} (rays to {p}, {q}) deviates from a right angle")]
    LayoutAngle {
        vertex: String,
        p: String,
        q: String,
    },
    #[error("layout: chain through {0} is not collinear in the embedding")]
    LayoutCollinearity(String),
    #[error("layout: ray {from}-{to} degenerates to a point")]
    DegenerateRay { from: String, to: String },
    #[error(transparent)]
    Expr(#[from] ExprError),
}

// ======================================================================
// Points and triangles
// ======================================================================

/// Exact planar coordinates.
#[derive(Clone, Debug)]
pub struct Point2 {
    pub x: TrigRational,
    pub y: TrigRational,
}

impl Point2 {
    pub fn new(x: TrigRational, y: TrigRational) -> Self {
        Point2 { x, y }
    }

    pub fn origin() -> Self {
        Point2::new(TrigRational::from_int(0), TrigRational::from_int(0))
    }
}

/// A right triangle described by its three side lengths and the acute
/// angle at `angle_vertex`; the right angle sits at `right_vertex`.
///
/// Invariant (up to cross-multiplied equality): `opp/hyp = sin(angle)`
/// and `adj/hyp = cos(angle)` — scaling preserves both ratios.
#[derive(Clone, Debug)]
pub struct GasingTriangle {
    pub angle: AngleSymbol,
    pub angle_vertex: String,
    pub apex: String,
    pub right_vertex: String,
    pub hyp: TrigRational,
    pub opp: TrigRational,
    pub adj: TrigRational,
}

impl GasingTriangle {
    /// The primary triangle: hypotenuse exactly 1, legs `sin(angle)` and
    /// `cos(angle)` by definition.
    pub fn primary(
        angle: &AngleSymbol,
        angle_vertex: &str,
        apex: &str,
        right_vertex: &str,
    ) -> Result<Self, ConstructionError> {
        let labels = [angle_vertex, apex, right_vertex];
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(ConstructionError::DuplicateLabel(l.to_string()));
            }
        }
        Ok(GasingTriangle {
            angle: angle.clone(),
            angle_vertex: angle_vertex.to_string(),
            apex: apex.to_string(),
            right_vertex: right_vertex.to_string(),
            hyp: TrigRational::from_int(1),
            opp: TrigRational::sin(angle),
            adj: TrigRational::cos(angle),
        })
    }

    /// A similar copy with every side multiplied by the factor.
    pub fn scale_similar(&self, k: &ScaleFactor) -> GasingTriangle {
        GasingTriangle {
            angle: self.angle.clone(),
            angle_vertex: self.angle_vertex.clone(),
            apex: self.apex.clone(),
            right_vertex: self.right_vertex.clone(),
            hyp: &self.hyp * &k.value,
            opp: &self.opp * &k.value,
            adj: &self.adj * &k.value,
        }
    }

    /// The same triangle under new vertex labels.
    pub fn with_labels(
        &self,
        angle_vertex: &str,
        apex: &str,
        right_vertex: &str,
    ) -> Result<Self, ConstructionError> {
        let mut t = self.clone();
        let labels = [angle_vertex, apex, right_vertex];
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(ConstructionError::DuplicateLabel(l.to_string()));
            }
        }
        t.angle_vertex = angle_vertex.to_string();
        t.apex = apex.to_string();
        t.right_vertex = right_vertex.to_string();
        Ok(t)
    }

    /// Side length between two of the triangle's vertex labels.
    pub fn side_between(&self, p: &str, q: &str) -> Option<&TrigRational> {
        let pair = |a: &str, b: &str| (p == a && q == b) || (p == b && q == a);
        if pair(&self.angle_vertex, &self.apex) {
            Some(&self.hyp)
        } else if pair(&self.angle_vertex, &self.right_vertex) {
            Some(&self.adj)
        } else if pair(&self.apex, &self.right_vertex) {
            Some(&self.opp)
        } else {
            None
        }
    }

    /// `opp/hyp` — stays `expr_equal` to `sin(angle)` under any scaling.
    pub fn opp_over_hyp(&self) -> TrigRational {
        &self.opp / &self.hyp
    }

    /// `adj/hyp` — stays `expr_equal` to `cos(angle)` under any scaling.
    pub fn adj_over_hyp(&self) -> TrigRational {
        &self.adj / &self.hyp
    }
}

/// A similarity ratio together with the side conditions accumulated while
/// forming it (reciprocal factors record that the divisor is nonzero).
#[derive(Clone, Debug)]
pub struct ScaleFactor {
    pub value: TrigRational,
    pub conditions: Vec<SideCondition>,
}

impl ScaleFactor {
    pub fn new(value: TrigRational) -> Result<Self, ConstructionError> {
        if value.is_zero() {
            return Err(ConstructionError::DegenerateScale);
        }
        let mut conditions = Vec::new();
        if value.as_constant().is_none() {
            push_condition(
                &mut conditions,
                SideCondition::nonzero(value.clone()),
            );
        }
        Ok(ScaleFactor { value, conditions })
    }

    /// `1/expr`, recording `expr != 0`.
    pub fn reciprocal_of(expr: &TrigRational) -> Result<Self, ConstructionError> {
        if expr.is_zero() {
            return Err(ConstructionError::DegenerateScale);
        }
        let value = &TrigRational::from_int(1) / expr;
        let mut conditions = Vec::new();
        if expr.as_constant().is_none() {
            push_condition(&mut conditions, SideCondition::nonzero(expr.clone()));
        }
        Ok(ScaleFactor { value, conditions })
    }
}

// ======================================================================
// Gluing
// ======================================================================

/// How a triangle's three vertices land in an existing construction:
/// `shared` identifies vertices with existing points (the glued edge),
/// `placed` introduces the rest as new points with explicit coordinates.
#[derive(Clone, Debug, Default)]
pub struct Gluing {
    shared: Vec<(String, String)>,
    placed: Vec<(String, String, Point2)>,
}

impl Gluing {
    pub fn new() -> Self {
        Gluing::default()
    }

    pub fn share(mut self, triangle_vertex: &str, existing_point: &str) -> Self {
        self.shared
            .push((triangle_vertex.to_string(), existing_point.to_string()));
        self
    }

    pub fn place(mut self, triangle_vertex: &str, name: &str, at: Point2) -> Self {
        self.placed
            .push((triangle_vertex.to_string(), name.to_string(), at));
        self
    }

    fn target_of(&self, vertex: &str) -> Option<String> {
        for (v, p) in &self.shared {
            if v == vertex {
                return Some(p.clone());
            }
        }
        for (v, p, _) in &self.placed {
            if v == vertex {
                return Some(p.clone());
            }
        }
        None
    }

    fn mapping_count(&self, vertex: &str) -> usize {
        self.shared.iter().filter(|(v, _)| v == vertex).count()
            + self.placed.iter().filter(|(v, _, _)| v == vertex).count()
    }
}

// ======================================================================
// Construction
// ======================================================================

fn seg_key(p: &str, q: &str) -> (String, String) {
    if p <= q {
        (p.to_string(), q.to_string())
    } else {
        (q.to_string(), p.to_string())
    }
}

fn ray_key(vertex: &str, p: &str, q: &str) -> (String, String, String) {
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    (vertex.to_string(), p.to_string(), q.to_string())
}

/// A figure: points with exact coordinates, segments with exact symbolic
/// lengths, and the author's collinearity/right-angle annotations.
#[derive(Clone, Debug, Default)]
pub struct Construction {
    points: BTreeMap<String, Point2>,
    segments: BTreeMap<(String, String), TrigRational>,
    chains: Vec<Vec<String>>,
    right_angles: BTreeSet<(String, String, String)>,
    angle_marks: BTreeMap<(String, String, String), String>,
}

impl Construction {
    pub fn new() -> Self {
        Construction::default()
    }

    pub fn add_point(&mut self, name: &str, at: Point2) -> Result<(), ConstructionError> {
        if self.points.contains_key(name) {
            return Err(ConstructionError::DuplicateLabel(name.to_string()));
        }
        self.points.insert(name.to_string(), at);
        Ok(())
    }

    pub fn point(&self, name: &str) -> Result<&Point2, ConstructionError> {
        self.points
            .get(name)
            .ok_or_else(|| ConstructionError::UnknownPoint(name.to_string()))
    }

    pub fn has_point(&self, name: &str) -> bool {
        self.points.contains_key(name)
    }

    pub fn points(&self) -> impl Iterator<Item = (&String, &Point2)> {
        self.points.iter()
    }

    /// Record a segment's symbolic length. Re-adding an existing segment
    /// is accepted only when the lengths agree by cross-multiplication;
    /// a disagreement is exactly the "mismatched glue edge" failure.
    pub fn add_segment(
        &mut self,
        p: &str,
        q: &str,
        length: TrigRational,
    ) -> Result<(), ConstructionError> {
        if !self.points.contains_key(p) {
            return Err(ConstructionError::UnknownPoint(p.to_string()));
        }
        if !self.points.contains_key(q) {
            return Err(ConstructionError::UnknownPoint(q.to_string()));
        }
        let key = seg_key(p, q);
        if let Some(existing) = self.segments.get(&key) {
            if existing.expr_equals(&length) {
                return Ok(());
            }
            return Err(ConstructionError::EdgeMismatch {
                a: key.0,
                b: key.1,
                existing: existing.to_string(),
                offered: length.to_string(),
            });
        }
        self.segments.insert(key, length);
        Ok(())
    }

    pub fn segment(&self, p: &str, q: &str) -> Result<&TrigRational, ConstructionError> {
        self.segments
            .get(&seg_key(p, q))
            .ok_or_else(|| ConstructionError::MissingSegment {
                a: p.to_string(),
                b: q.to_string(),
            })
    }

    pub fn segments(&self) -> impl Iterator<Item = (&(String, String), &TrigRational)> {
        self.segments.iter()
    }

    /// Assert that the named points lie on one line, in order.
    pub fn assert_collinear(&mut self, chain: &[&str]) -> Result<(), ConstructionError> {
        if chain.len() < 3 {
            return Err(ConstructionError::ChainTooShort);
        }
        for p in chain {
            if !self.points.contains_key(*p) {
                return Err(ConstructionError::UnknownPoint(p.to_string()));
            }
        }
        self.chains
            .push(chain.iter().map(|s| s.to_string()).collect());
        Ok(())
    }

    pub fn chains(&self) -> &[Vec<String>] {
        &self.chains
    }

    pub fn mark_right_angle(
        &mut self,
        vertex: &str,
        p: &str,
        q: &str,
    ) -> Result<(), ConstructionError> {
        for name in [vertex, p, q] {
            if !self.points.contains_key(name) {
                return Err(ConstructionError::UnknownPoint(name.to_string()));
            }
        }
        self.right_angles.insert(ray_key(vertex, p, q));
        Ok(())
    }

    pub fn right_angles(&self) -> impl Iterator<Item = &(String, String, String)> {
        self.right_angles.iter()
    }

    pub fn mark_angle(
        &mut self,
        vertex: &str,
        p: &str,
        q: &str,
        label: &str,
    ) -> Result<(), ConstructionError> {
        for name in [vertex, p, q] {
            if !self.points.contains_key(name) {
                return Err(ConstructionError::UnknownPoint(name.to_string()));
            }
        }
        self.angle_marks
            .insert(ray_key(vertex, p, q), label.to_string());
        Ok(())
    }

    pub fn angle_marks(&self) -> impl Iterator<Item = (&(String, String, String), &String)> {
        self.angle_marks.iter()
    }

    /// Glue a triangle onto the construction. Shared vertices land on
    /// existing points (and any triangle side between two shared vertices
    /// must match the already-drawn segment exactly); the remaining
    /// vertices are placed as new points. The triangle's sides, right
    /// angle, and angle mark are recorded under the mapped names.
    pub fn attach(
        mut self,
        t: &GasingTriangle,
        gluing: &Gluing,
    ) -> Result<Construction, ConstructionError> {
        let vertices = [
            t.angle_vertex.clone(),
            t.apex.clone(),
            t.right_vertex.clone(),
        ];
        for v in &vertices {
            if gluing.mapping_count(v) != 1 {
                return Err(ConstructionError::IncompleteGluing(v.clone()));
            }
        }
        for (_, p) in &gluing.shared {
            if !self.points.contains_key(p) {
                return Err(ConstructionError::UnknownPoint(p.clone()));
            }
        }
        // Shared edges must already be drawn with the same exact length.
        for (i, (v1, p1)) in gluing.shared.iter().enumerate() {
            for (v2, p2) in gluing.shared.iter().skip(i + 1) {
                if let Some(side) = t.side_between(v1, v2) {
                    let existing = self.segment(p1, p2)?;
                    if !existing.expr_equals(side) {
                        return Err(ConstructionError::EdgeMismatch {
                            a: p1.clone(),
                            b: p2.clone(),
                            existing: existing.to_string(),
                            offered: side.to_string(),
                        });
                    }
                }
            }
        }
        for (_, name, at) in &gluing.placed {
            self.add_point(name, at.clone())?;
        }
        let mapped = |v: &str| gluing.target_of(v).expect("mapping checked complete");
        let (av, ap, rv) = (
            mapped(&t.angle_vertex),
            mapped(&t.apex),
            mapped(&t.right_vertex),
        );
        self.add_segment(&av, &ap, t.hyp.clone())?;
        self.add_segment(&av, &rv, t.adj.clone())?;
        self.add_segment(&ap, &rv, t.opp.clone())?;
        self.mark_right_angle(&rv, &av, &ap)?;
        self.mark_angle(&av, &ap, &rv, t.angle.name())?;
        Ok(self)
    }

    /// The whole-equals-sum-of-parts equation of an asserted chain:
    /// segment(first, last) on the left, the sum of the consecutive
    /// segment lengths on the right.
    pub fn chain_equation(
        &self,
        chain: &[&str],
    ) -> Result<(TrigRational, TrigRational), ConstructionError> {
        let as_vec: Vec<String> = chain.iter().map(|s| s.to_string()).collect();
        let reversed: Vec<String> = as_vec.iter().rev().cloned().collect();
        if !self.chains.iter().any(|c| *c == as_vec || *c == reversed) {
            return Err(ConstructionError::ChainNotAsserted(as_vec.join("-")));
        }
        let first = chain.first().expect("asserted chains have ≥ 3 points");
        let last = chain.last().expect("asserted chains have ≥ 3 points");
        let whole = self.segment(first, last)?.clone();
        let mut parts = TrigRational::from_int(0);
        for w in chain.windows(2) {
            parts = &parts + self.segment(w[0], w[1])?;
        }
        Ok((whole, parts))
    }

    /// Evaluate every point numerically and verify the author's claims:
    /// segment lengths to 1e-9, right-angle marks to 1e-9 radians, and
    /// collinearity chains to 1e-9 (normalized cross product, with
    /// forward progress along the line).
    pub fn layout(
        &self,
        asg: &Assignment,
    ) -> Result<BTreeMap<String, (f64, f64)>, ConstructionError> {
        let mut coords = BTreeMap::new();
        for (name, p) in &self.points {
            let x = p.x.eval_numeric(asg)?;
            let y = p.y.eval_numeric(asg)?;
            coords.insert(name.clone(), (x, y));
        }
        let at = |n: &str| -> (f64, f64) { coords[n] };
        for ((p, q), len) in &self.segments {
            let expected = len.eval_numeric(asg)?;
            let (x1, y1) = at(p);
            let (x2, y2) = at(q);
            let actual = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt();
            if (actual - expected).abs() > 1e-9 {
                return Err(ConstructionError::LayoutLength {
                    a: p.clone(),
                    b: q.clone(),
                    expected: format!("{expected}"),
                    actual: format!("{actual}"),
                });
            }
        }
        for (v, p, q) in &self.right_angles {
            let (vx, vy) = at(v);
            let (px, py) = at(p);
            let (qx, qy) = at(q);
            let (ux, uy) = (px - vx, py - vy);
            let (wx, wy) = (qx - vx, qy - vy);
            let nu = (ux * ux + uy * uy).sqrt();
            let nw = (wx * wx + wy * wy).sqrt();
            if nu < 1e-12 {
                return Err(ConstructionError::DegenerateRay {
                    from: v.clone(),
                    to: p.clone(),
                });
            }
            if nw < 1e-12 {
                return Err(ConstructionError::DegenerateRay {
                    from: v.clone(),
                    to: q.clone(),
                });
            }
            let cosang = ((ux * wx + uy * wy) / (nu * nw)).clamp(-1.0, 1.0);
            if (cosang.acos() - std::f64::consts::FRAC_PI_2).abs() > 1e-9 {
                return Err(ConstructionError::LayoutAngle {
                    vertex: v.clone(),
                    p: p.clone(),
                    q: q.clone(),
                });
            }
        }
        for chain in &self.chains {
            for w in chain.windows(3) {
                let (ax, ay) = at(&w[0]);
                let (bx, by) = at(&w[1]);
                let (cx, cy) = at(&w[2]);
                let (ux, uy) = (bx - ax, by - ay);
                let (wx, wy) = (cx - bx, cy - by);
                let nu = (ux * ux + uy * uy).sqrt();
                let nw = (wx * wx + wy * wy).sqrt();
                if nu < 1e-12 {
                    return Err(ConstructionError::DegenerateRay {
                        from: w[0].clone(),
                        to: w[1].clone(),
                    });
                }
                if nw < 1e-12 {
                    return Err(ConstructionError::DegenerateRay {
                        from: w[1].clone(),
                        to: w[2].clone(),
                    });
                }
                let sin_dev = (ux * wy - uy * wx).abs() / (nu * nw);
                let forward = ux * wx + uy * wy;
                if sin_dev > 1e-9 || forward <= 0.0 {
                    return Err(ConstructionError::LayoutCollinearity(w[1].clone()));
                }
            }
        }
        Ok(coords)
    }
}

// ======================================================================
// Standard figures
// ======================================================================

/// Place a triangle in standard position: angle vertex at the origin,
/// adjacent leg along +x, so the right angle sits at the axis-aligned
/// corner and the apex above it.
pub fn standard_position(t: &GasingTriangle) -> Result<Construction, ConstructionError> {
    let mut c = Construction::new();
    c.add_point(&t.angle_vertex, Point2::origin())?;
    c.add_point(
        &t.right_vertex,
        Point2::new(t.adj.clone(), TrigRational::from_int(0)),
    )?;
    c.add_point(&t.apex, Point2::new(t.adj.clone(), t.opp.clone()))?;
    c.add_segment(&t.angle_vertex, &t.apex, t.hyp.clone())?;
    c.add_segment(&t.angle_vertex, &t.right_vertex, t.adj.clone())?;
    c.add_segment(&t.apex, &t.right_vertex, t.opp.clone())?;
    c.mark_right_angle(&t.right_vertex, &t.angle_vertex, &t.apex)?;
    c.mark_angle(&t.angle_vertex, &t.apex, &t.right_vertex, t.angle.name())?;
    Ok(c)
}

/// The combined figure carrying all six function lengths at once:
/// the primary triangle `A,B,C`, the tangent/secant extension to `D`
/// on the baseline, and the cotangent/cosecant extension to `E` on the
/// vertical axis, with `E`, `B`, `D` collinear.
///
/// Segment lengths (angle `a`, written `s = sin(a)`, `c = cos(a)`):
/// `AB = 1`, `AC = c`, `CB = s`, `BD = s/c`, `CD = s²/c`, `AD = 1/c`,
/// `AE = 1/s`, `EB = c/s`, `DE = 1/(s·c)`.
pub fn combined_figure(angle: &AngleSymbol) -> Construction {
    let one = TrigRational::from_int(1);
    let s = TrigRational::sin(angle);
    let c = TrigRational::cos(angle);
    let mut f = Construction::new();
    f.add_point("A", Point2::origin()).expect("fresh");
    f.add_point("C", Point2::new(c.clone(), TrigRational::from_int(0)))
        .expect("fresh");
    f.add_point("B", Point2::new(c.clone(), s.clone())).expect("fresh");
    f.add_point("D", Point2::new(&one / &c, TrigRational::from_int(0)))
        .expect("fresh");
    f.add_point("E", Point2::new(TrigRational::from_int(0), &one / &s))
        .expect("fresh");
    let mut seg = |p: &str, q: &str, len: TrigRational| {
        f.add_segment(p, q, len).expect("points exist");
    };
    seg("A", "B", one.clone());
    seg("A", "C", c.clone());
    seg("C", "B", s.clone());
    seg("B", "D", &s / &c);
    seg("C", "D", &(&s * &s) / &c);
    seg("A", "D", &one / &c);
    seg("A", "E", &one / &s);
    seg("E", "B", &c / &s);
    seg("D", "E", &one / &(&s * &c));
    f.assert_collinear(&["A", "C", "D"]).expect("points exist");
    f.assert_collinear(&["D", "B", "E"]).expect("points exist");
    f.mark_right_angle("C", "A", "B").expect("points exist");
    f.mark_right_angle("C", "B", "D").expect("points exist");
    f.mark_right_angle("B", "A", "D").expect("points exist");
    f.mark_right_angle("B", "A", "E").expect("points exist");
    f.mark_right_angle("A", "C", "E").expect("points exist");
    f.mark_angle("A", "B", "C", angle.name()).expect("points exist");
    f.mark_angle("B", "C", "D", angle.name()).expect("points exist");
    f.mark_angle("E", "A", "B", angle.name()).expect("points exist");
    f
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "points:")?;
        for name in self.points.keys() {
            writeln!(f, "  {name}")?;
        }
        writeln!(f, "segments:")?;
        for ((p, q), len) in &self.segments {
            writeln!(f, "  {p}-{q} = {len}")?;
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
    use crate::trigexpr::TrigRational;

    fn a() -> AngleSymbol {
        AngleSymbol::new("a")
    }

    fn deg(d: f64) -> f64 {
        d.to_radians()
    }

    #[test]
    fn primary_triangle_has_unit_hypotenuse_and_defining_legs() {
        let t = GasingTriangle::primary(&a(), "A", "B", "C").unwrap();
        assert!(t.hyp.expr_equals(&TrigRational::from_int(1)));
        assert!(t.opp.expr_equals(&TrigRational::sin(&a())));
        assert!(t.adj.expr_equals(&TrigRational::cos(&a())));
        assert!(GasingTriangle::primary(&a(), "A", "A", "C").is_err());
    }

    #[test]
    fn scaling_preserves_the_defining_ratios() {
        let t = GasingTriangle::primary(&a(), "A", "B", "C").unwrap();
        let k = ScaleFactor::reciprocal_of(&TrigRational::cos(&a())).unwrap();
        let scaled = t.scale_similar(&k);
        assert!(scaled.opp_over_hyp().expr_equals(&TrigRational::sin(&a())));
        assert!(scaled.adj_over_hyp().expr_equals(&TrigRational::cos(&a())));
        // hyp 1/cos(a), opp sin(a)/cos(a), adj 1
        assert!(scaled.adj.expr_equals(&TrigRational::from_int(1)));
        assert_eq!(k.conditions.len(), 1);
        assert_eq!(k.conditions[0].to_string(), "cos(a) != 0");
    }

    #[test]
    fn zero_scale_factors_are_rejected() {
        assert!(matches!(
            ScaleFactor::new(TrigRational::from_int(0)),
            Err(ConstructionError::DegenerateScale)
        ));
    }

    #[test]
    fn standard_position_lands_the_right_angle_on_the_axis() {
        let t = GasingTriangle::primary(&a(), "A", "B", "C").unwrap();
        let c = standard_position(&t).unwrap();
        let coords = c.layout(&Assignment::new().angle("a", deg(30.0))).unwrap();
        let (cx, cy) = coords["C"];
        assert!((cx - deg(30.0).cos()).abs() < 1e-12 && cy.abs() < 1e-12);
        let (bx, by) = coords["B"];
        assert!((bx - deg(30.0).cos()).abs() < 1e-12);
        assert!((by - deg(30.0).sin()).abs() < 1e-12);
        let (ax, ay) = coords["A"];
        assert!(ax.abs() < 1e-12 && ay.abs() < 1e-12);
    }

    #[test]
    fn gluing_checks_shared_edges_exactly() {
        let t = GasingTriangle::primary(&a(), "A", "B", "C").unwrap();
        let base = standard_position(&t).unwrap();
        // A second unit triangle glued along AB: fine (lengths agree).
        let t2 = GasingTriangle::primary(&a(), "A", "B", "F").unwrap();
        let glued = base.clone().attach(
            &t2,
            &Gluing::new().share("A", "A").share("B", "B").place(
                "F",
                "F",
                Point2::new(TrigRational::from_int(0), TrigRational::sin(&a())),
            ),
        );
        assert!(glued.is_ok());
        // A triangle whose "shared" side is cos(a) glued onto AB = 1: rejected.
        let k = ScaleFactor::new(TrigRational::cos(&a())).unwrap();
        let shrunk = t2.scale_similar(&k);
        let err = base.clone().attach(
            &shrunk,
            &Gluing::new().share("A", "A").share("B", "B").place(
                "F",
                "F",
                Point2::origin(),
            ),
        );
        assert!(matches!(err, Err(ConstructionError::EdgeMismatch { .. })));
    }

    #[test]
    fn chain_equations_read_whole_equals_sum_of_parts() {
        let f = combined_figure(&a());
        let (whole, parts) = f.chain_equation(&["A", "C", "D"]).unwrap();
        // 1/cos(a) vs cos(a) + sin²(a)/cos(a)
        let s = TrigRational::sin(&a());
        let c = TrigRational::cos(&a());
        assert!(whole.expr_equals(&(&TrigRational::from_int(1) / &c)));
        assert!(parts.expr_equals(&(&c + &(&(&s * &s) / &c))));
        // unasserted chains are refused
        assert!(matches!(
            f.chain_equation(&["A", "B", "D"]),
            Err(ConstructionError::ChainNotAsserted(_))
        ));
    }

    #[test]
    fn combined_figure_lays_out_at_thirty_degrees() {
        let f = combined_figure(&a());
        let coords = f.layout(&Assignment::new().angle("a", deg(30.0))).unwrap();
        let (ex, ey) = coords["E"];
        assert!(ex.abs() < 1e-12);
        assert!((ey - 2.0).abs() < 1e-12, "1/sin(30°) = 2");
        let (dx, dy) = coords["D"];
        assert!((dx - 1.0 / deg(30.0).cos()).abs() < 1e-12 && dy.abs() < 1e-12);
    }

    #[test]
    fn layout_rejects_the_degenerate_angle() {
        let f = combined_figure(&a());
        let err = f.layout(&Assignment::new().angle("a", 0.0)).unwrap_err();
        match err {
            ConstructionError::Expr(ExprError::DomainViolation { condition }) => {
                assert_eq!(condition, "sin(a) != 0");
            }
            other => panic!("expected a domain violation, got {other:?}"),
        }
    }

    #[test]
    fn layout_catches_a_lying_author() {
        let mut f = Construction::new();
        f.add_point("P", Point2::origin()).unwrap();
        f.add_point(
            "Q",
            Point2::new(TrigRational::from_int(3), TrigRational::from_int(0)),
        )
        .unwrap();
        f.add_segment("P", "Q", TrigRational::from_int(5)).unwrap();
        assert!(matches!(
            f.layout(&Assignment::new()),
            Err(ConstructionError::LayoutLength { .. })
        ));
    }
}
