//! SVG figures for two-dimensional max-plus and location problems.
//!
//! Geometry is emitted in data coordinates inside a group flipped with
//! `scale(1,-1)`, so the attributes of every shape can be read back as
//! points of the plane. Each shape carries a class naming its role:
//!
//! | class        | shape    | meaning                                    |
//! |--------------|----------|--------------------------------------------|
//! | `axis`       | line     | coordinate axes                            |
//! | `pq-box`     | rect     | box with opposite corners `q` and `p`      |
//! | `bounds`     | rect     | box `[g, h]`                               |
//! | `constraint` | line     | boundary `x_i = x_j + b_ij`                |
//! | `feasible`   | polygon  | `[g, h]` cut by the constraints            |
//! | `solution`   | line, circle or polygon                          |
//! | `demand`     | circle   | demand point `r_j`                         |
//! | `shifted`    | circle   | `r_j + w_j` and `r_j - w_j`                |
//! | `spread`     | line     | segment joining the two shifted points     |

use std::fmt::Write;

use tropopt_core::location::{build_pq, solve_location_with};
use tropopt_core::{LocationOutcome, Outcome, SemifieldKind, Solver, Tolerance};

use crate::number::fmt;
use crate::problem_file::{ProblemFile, ProblemType};
use crate::CliError;

type Pt = [f64; 2];

/// Constraint `x_i ≥ x_j + b` with `i ≠ j`.
#[derive(Debug, Clone, Copy)]
struct HalfPlane {
    i: usize,
    b: f64,
}

impl HalfPlane {
    /// Signed slack `x_i - x_j - b`, non-negative inside.
    fn slack(&self, x: Pt) -> f64 {
        x[self.i] - x[1 - self.i] - self.b
    }

    /// Crossing of the boundary with segment `a → b`. Axis-parallel edges
    /// are solved directly so integer data stays exact.
    fn crossing(&self, a: Pt, b: Pt) -> Pt {
        let (i, j) = (self.i, 1 - self.i);
        let mut out = [0.0; 2];
        if a[j] == b[j] {
            out[j] = a[j];
            out[i] = a[j] + self.b;
        } else if a[i] == b[i] {
            out[i] = a[i];
            out[j] = a[i] - self.b;
        } else {
            let (sa, sb) = (self.slack(a), self.slack(b));
            let t = sa / (sa - sb);
            out = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
        }
        out
    }
}

/// Sutherland-Hodgman clipping of a convex polygon by half-planes.
fn clip(mut poly: Vec<Pt>, planes: &[HalfPlane]) -> Vec<Pt> {
    for hp in planes {
        if poly.is_empty() {
            break;
        }
        let mut next = Vec::with_capacity(poly.len() + 1);
        for k in 0..poly.len() {
            let a = poly[k];
            let b = poly[(k + 1) % poly.len()];
            let (ina, inb) = (hp.slack(a) >= 0.0, hp.slack(b) >= 0.0);
            if ina {
                next.push(a);
            }
            if ina != inb {
                next.push(hp.crossing(a, b));
            }
        }
        poly = next;
    }
    poly
}

fn rect(lo: Pt, hi: Pt) -> Vec<Pt> {
    vec![lo, [hi[0], lo[1]], hi, [lo[0], hi[1]]]
}

#[derive(Debug, Clone, PartialEq)]
enum Region {
    Point(Pt),
    Segment(Pt, Pt),
    Polygon(Vec<Pt>),
}

fn classify(poly: Vec<Pt>) -> Option<Region> {
    let mut pts: Vec<Pt> = Vec::new();
    for p in poly {
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    match pts.len() {
        0 => None,
        1 => Some(Region::Point(pts[0])),
        _ => {
            let o = pts[0];
            let d = pts[1];
            let collinear = pts
                .iter()
                .all(|p| (d[0] - o[0]) * (p[1] - o[1]) - (d[1] - o[1]) * (p[0] - o[0]) == 0.0);
            if collinear {
                let mut sorted = pts;
                sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
                Some(Region::Segment(sorted[0], sorted[sorted.len() - 1]))
            } else {
                Some(Region::Polygon(pts))
            }
        }
    }
}

fn finite2(v: &[f64]) -> Option<Pt> {
    (v.len() == 2 && v.iter().all(|x| x.is_finite())).then(|| [v[0], v[1]])
}

/// Everything drawn, in data coordinates.
#[derive(Debug, Default)]
struct Figure {
    pq: Option<(Pt, Pt)>,
    bounds: Option<(Pt, Pt)>,
    planes: Vec<HalfPlane>,
    feasible: Option<Vec<Pt>>,
    solution: Option<Region>,
    demand: Vec<(Pt, f64)>,
}

fn half_planes(b: &[Vec<f64>]) -> Vec<HalfPlane> {
    let mut out = Vec::new();
    for (i, row) in b.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if i != j && v.is_finite() {
                out.push(HalfPlane { i, b: v });
            }
        }
    }
    out
}

impl Figure {
    fn build(file: &ProblemFile, tol: Tolerance) -> Result<Figure, CliError> {
        let mut fig = Figure::default();
        let (p, q, g, h, u) = if file.problem == ProblemType::Location {
            let inst = file.location()?;
            let (p, q) = build_pq(inst.points(), inst.weights());
            fig.planes = inst.constraints().map(half_planes).unwrap_or_default();
            fig.demand = inst
                .points()
                .iter()
                .zip(inst.weights())
                .map(|(r, &w)| ([r[0], r[1]], w))
                .collect();
            let u = match solve_location_with(&inst, tol)? {
                LocationOutcome::Optimal(s) => Some((s.u_lower, s.u_upper)),
                LocationOutcome::Infeasible(_) => None,
            };
            (
                p,
                q,
                inst.lower().map(<[f64]>::to_vec),
                inst.upper().map(<[f64]>::to_vec),
                u,
            )
        } else {
            if file.semifield != SemifieldKind::MaxPlus {
                return Err(CliError::Unsupported(format!(
                    "plot draws max-plus problems only, got {}",
                    file.semifield
                )));
            }
            let inst = file.instance()?;
            fig.planes = inst
                .matrix()
                .map(|b| half_planes(&b.to_rows()))
                .unwrap_or_default();
            let u = match Solver::new(tol).solve(&inst)? {
                Outcome::Optimal(s) => Some((s.u_lo.values().to_vec(), s.u_hi.values().to_vec())),
                Outcome::Infeasible(_) => None,
            };
            let col = |m: Option<&tropopt_core::Matrix>| m.map(|m| m.values().to_vec());
            (
                inst.p().values().to_vec(),
                inst.q().values().to_vec(),
                col(inst.lower()),
                col(inst.upper()),
                u,
            )
        };

        if let (Some(p), Some(q)) = (finite2(&p), finite2(&q)) {
            fig.pq = Some((q, p));
        }
        if let (Some(g), Some(h)) = (
            g.as_deref().and_then(finite2),
            h.as_deref().and_then(finite2),
        ) {
            fig.bounds = Some((g, h));
            if !fig.planes.is_empty() {
                fig.feasible = Some(clip(rect(g, h), &fig.planes)).filter(|v| !v.is_empty());
            }
        }
        if let Some((lo, hi)) = u {
            if let (Some(lo), Some(hi)) = (finite2(&lo), finite2(&hi)) {
                fig.solution = classify(clip(rect(lo, hi), &fig.planes));
            }
        }
        Ok(fig)
    }

    fn extent(&self) -> (Pt, Pt) {
        let mut pts: Vec<Pt> = vec![[0.0, 0.0]];
        for (a, b) in self.pq.iter().chain(&self.bounds) {
            pts.extend([*a, *b]);
        }
        pts.extend(self.feasible.iter().flatten());
        match &self.solution {
            Some(Region::Point(p)) => pts.push(*p),
            Some(Region::Segment(a, b)) => pts.extend([*a, *b]),
            Some(Region::Polygon(v)) => pts.extend(v),
            None => {}
        }
        for (r, w) in &self.demand {
            pts.extend([[r[0] - w, r[1] - w], [r[0] + w, r[1] + w]]);
        }
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in pts {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }
}

/// The data box widened on each side by 10% of its span, rounded up to a
/// quarter unit so that the view corners stay exact binary fractions (one
/// unit if the box is flat).
fn with_margin(mut lo: Pt, mut hi: Pt) -> (Pt, Pt) {
    for k in 0..2 {
        let span = hi[k] - lo[k];
        let margin = if span > 0.0 {
            (span * 0.4).ceil() / 4.0
        } else {
            1.0
        };
        lo[k] -= margin;
        hi[k] += margin;
    }
    (lo, hi)
}

/// Boundary `x_i = x_j + b` inside the rectangle `[lo, hi]`.
fn boundary(hp: &HalfPlane, lo: Pt, hi: Pt) -> Option<(Pt, Pt)> {
    // as y = x + k
    let k = if hp.i == 1 { hp.b } else { -hp.b };
    let x0 = lo[0].max(lo[1] - k);
    let x1 = hi[0].min(hi[1] - k);
    (x0 < x1).then_some(([x0, x0 + k], [x1, x1 + k]))
}

struct Svg {
    out: String,
}

impl Svg {
    fn line(&mut self, class: &str, a: Pt, b: Pt) {
        let _ = writeln!(
            self.out,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            fmt(a[0]),
            fmt(a[1]),
            fmt(b[0]),
            fmt(b[1])
        );
    }

    fn rect(&mut self, class: &str, a: Pt, b: Pt) {
        let _ = writeln!(
            self.out,
            r#"<rect class="{class}" x="{}" y="{}" width="{}" height="{}"/>"#,
            fmt(a[0].min(b[0])),
            fmt(a[1].min(b[1])),
            fmt((b[0] - a[0]).abs()),
            fmt((b[1] - a[1]).abs())
        );
    }

    fn circle(&mut self, class: &str, c: Pt, r: f64) {
        let _ = writeln!(
            self.out,
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}"/>"#,
            fmt(c[0]),
            fmt(c[1]),
            fmt(r)
        );
    }

    fn polygon(&mut self, class: &str, pts: &[Pt]) {
        let list: Vec<String> = pts
            .iter()
            .map(|p| format!("{},{}", fmt(p[0]), fmt(p[1])))
            .collect();
        let _ = writeln!(
            self.out,
            r#"<polygon class="{class}" points="{}"/>"#,
            list.join(" ")
        );
    }

    fn label(&mut self, text: &str, at: Pt) {
        let _ = writeln!(
            self.out,
            r#"<text x="{}" y="{}">{text}</text>"#,
            fmt(at[0]),
            fmt(-at[1])
        );
    }
}

const STYLE: &str = "\
line,rect,circle,polygon{vector-effect:non-scaling-stroke}\
.axis{stroke:#888}\
.pq-box,.bounds,.constraint,.spread{stroke:#000}\
.bounds{stroke-dasharray:4 2}\
.feasible{fill:#ddd;stroke:none}\
.solution{stroke:#c00;stroke-width:3;fill:#c00}\
.demand{fill:#000}\
.shifted{fill:#fff;stroke:#000}";

pub fn render(file: &ProblemFile, tol: Tolerance) -> Result<String, CliError> {
    if file.dim() != 2 {
        return Err(CliError::Unsupported(format!(
            "plot needs a two-dimensional problem, got n = {}",
            file.dim()
        )));
    }
    let fig = Figure::build(file, tol)?;
    let (lo, hi) = fig.extent();
    let (lo, hi) = with_margin(lo, hi);
    let (w, h) = (hi[0] - lo[0], hi[1] - lo[1]);
    let unit = w.max(h);
    let r = unit * 0.01;
    const PX: f64 = 16.0;

    let mut svg = Svg { out: String::new() };
    let _ = writeln!(
        svg.out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        fmt(lo[0]),
        fmt(-hi[1]),
        fmt(w),
        fmt(h),
        fmt((w * PX).round()),
        fmt((h * PX).round())
    );
    let _ = writeln!(svg.out, "<style>{STYLE}</style>");
    svg.out
        .push_str("<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"1\">\n");
    if let Some(poly) = &fig.feasible {
        svg.polygon("feasible", poly);
    }
    svg.line("axis", [lo[0], 0.0], [hi[0], 0.0]);
    svg.line("axis", [0.0, lo[1]], [0.0, hi[1]]);
    if let Some((q, p)) = fig.pq {
        svg.rect("pq-box", q, p);
    }
    if let Some((g, h)) = fig.bounds {
        svg.rect("bounds", g, h);
    }
    for hp in &fig.planes {
        if let Some((a, b)) = boundary(hp, lo, hi) {
            svg.line("constraint", a, b);
        }
    }
    for (c, wt) in &fig.demand {
        let minus = [c[0] - wt, c[1] - wt];
        let plus = [c[0] + wt, c[1] + wt];
        svg.line("spread", minus, plus);
        svg.circle("shifted", minus, r);
        svg.circle("shifted", plus, r);
        svg.circle("demand", *c, r);
    }
    match &fig.solution {
        Some(Region::Point(p)) => svg.circle("solution", *p, r * 1.5),
        Some(Region::Segment(a, b)) => svg.line("solution", *a, *b),
        Some(Region::Polygon(v)) => svg.polygon("solution", v),
        None => {}
    }
    svg.out.push_str("</g>\n");

    let _ = writeln!(
        svg.out,
        r#"<g font-family="serif" font-size="{}">"#,
        fmt(unit * 0.04)
    );
    let nudge = unit * 0.02;
    if let Some((q, p)) = fig.pq {
        svg.label("q", [q[0] - 2.0 * nudge, q[1] - 2.0 * nudge]);
        svg.label("p", [p[0] + nudge, p[1]]);
    }
    if let Some((g, h)) = fig.bounds {
        svg.label("g", [g[0] - 2.0 * nudge, g[1] - 2.0 * nudge]);
        svg.label("h", [h[0] + nudge, h[1]]);
    }
    for (k, (c, _)) in fig.demand.iter().enumerate() {
        svg.label(&format!("r{}", k + 1), [c[0] + nudge, c[1] - 2.0 * nudge]);
    }
    svg.out.push_str("</g>\n</svg>\n");
    Ok(svg.out)
}
