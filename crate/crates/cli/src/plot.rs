//! Deterministic SVG rendering of 2-d polytopes and chain snapshots.
//! All pixel coordinates come from exact rational arithmetic rounded at
//! the last step, so identical inputs give identical bytes.

use lctpoly_core::chainlab::ParametricChain;
use lctpoly_core::exactgeom::{HPolytope, QVector};
use lctpoly_core::rational::{rat, rat_i, rat_to_string, Rat};
use num_traits::{Signed, Zero};

use crate::CliError;

const WIDTH: i64 = 640;
const HEIGHT: i64 = 480;
const MARGIN: i64 = 48;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

struct Frame {
    min_x: Rat,
    min_y: Rat,
    scale: Rat,
}

impl Frame {
    /// Fits the world bounding box into the canvas, preserving aspect.
    fn fit(points: &[QVector]) -> Frame {
        let mut min_x = Rat::zero();
        let mut max_x = rat_i(1);
        let mut min_y = Rat::zero();
        let mut max_y = rat_i(1);
        for p in points {
            let (x, y) = (&p.coords()[0], &p.coords()[1]);
            if *x < min_x {
                min_x = x.clone();
            }
            if *x > max_x {
                max_x = x.clone();
            }
            if *y < min_y {
                min_y = y.clone();
            }
            if *y > max_y {
                max_y = y.clone();
            }
        }
        let pad = rat(1, 10) * (&max_x - &min_x).max(&max_y - &min_y);
        min_x = min_x - &pad;
        max_x = max_x + &pad;
        min_y = min_y - &pad;
        max_y = max_y + &pad;
        let w = &max_x - &min_x;
        let h = &max_y - &min_y;
        let sx = rat_i(WIDTH - 2 * MARGIN) / w;
        let sy = rat_i(HEIGHT - 2 * MARGIN) / h;
        Frame {
            min_x,
            min_y,
            scale: sx.min(sy),
        }
    }

    fn px(&self, p: &QVector) -> (i64, i64) {
        let x = (&p.coords()[0] - &self.min_x) * &self.scale + rat_i(MARGIN);
        let y = (&p.coords()[1] - &self.min_y) * &self.scale + rat_i(MARGIN);
        (round_px(&x), HEIGHT - round_px(&y))
    }
}

fn round_px(v: &Rat) -> i64 {
    let shifted = v + rat(1, 2);
    let floor = shifted.floor();
    floor
        .numer()
        .try_into()
        .expect("pixel coordinates stay small")
}

/// Vertices of a 2-d polygon in counterclockwise ring order around the
/// vertex barycenter, by exact half-plane plus cross-product comparison.
fn ring_order(vertices: &[QVector]) -> Vec<QVector> {
    if vertices.len() <= 2 {
        return vertices.to_vec();
    }
    let n = rat_i(vertices.len() as i64);
    let cx: Rat = vertices.iter().map(|v| v.coords()[0].clone()).sum::<Rat>() / &n;
    let cy: Rat = vertices.iter().map(|v| v.coords()[1].clone()).sum::<Rat>() / &n;
    let mut ring = vertices.to_vec();
    let upper = |v: &QVector| -> bool {
        let dy = &v.coords()[1] - &cy;
        let dx = &v.coords()[0] - &cx;
        dy.is_positive() || (dy.is_zero() && dx.is_positive())
    };
    ring.sort_by(|a, b| {
        let (ua, ub) = (upper(a), upper(b));
        if ua != ub {
            return ub.cmp(&ua); // upper half first
        }
        let ax = &a.coords()[0] - &cx;
        let ay = &a.coords()[1] - &cy;
        let bx = &b.coords()[0] - &cx;
        let by = &b.coords()[1] - &cy;
        let cross = &ax * &by - &ay * &bx;
        // counterclockwise: positive cross means a comes first
        if cross.is_positive() {
            std::cmp::Ordering::Less
        } else if cross.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            a.cmp(b)
        }
    });
    ring
}

fn polygon_path(frame: &Frame, ring: &[QVector]) -> String {
    let mut d = String::new();
    for (i, v) in ring.iter().enumerate() {
        let (x, y) = frame.px(v);
        if i == 0 {
            d.push_str(&format!("M {x} {y}"));
        } else {
            d.push_str(&format!(" L {x} {y}"));
        }
    }
    d.push_str(" Z");
    d
}

fn svg_header(out: &mut String) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str(&format!(
        "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
}

fn draw_axes(out: &mut String, frame: &Frame) {
    let origin = QVector::zero(2);
    let (ox, oy) = frame.px(&origin);
    if (0..WIDTH).contains(&ox) {
        out.push_str(&format!(
            "  <line x1=\"{ox}\" y1=\"0\" x2=\"{ox}\" y2=\"{HEIGHT}\" stroke=\"#cccccc\"/>\n"
        ));
    }
    if (0..HEIGHT).contains(&oy) {
        out.push_str(&format!(
            "  <line x1=\"0\" y1=\"{oy}\" x2=\"{WIDTH}\" y2=\"{oy}\" stroke=\"#cccccc\"/>\n"
        ));
    }
}

fn draw_markers(out: &mut String, frame: &Frame, markers: &[QVector]) {
    for m in markers {
        let (x, y) = frame.px(m);
        out.push_str(&format!(
            "  <path d=\"M {} {} L {} {} M {} {} L {} {}\" stroke=\"#000000\" stroke-width=\"2\"/>\n",
            x - 6, y - 6, x + 6, y + 6, x - 6, y + 6, x + 6, y - 6,
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"monospace\">{}</text>\n",
            x + 8,
            y - 8,
            label_of(m),
        ));
    }
}

fn label_of(v: &QVector) -> String {
    format!(
        "({}, {})",
        rat_to_string(&v.coords()[0]),
        rat_to_string(&v.coords()[1])
    )
}

fn ring_of(p: &HPolytope) -> Result<Vec<QVector>, CliError> {
    if p.dim_ambient() != 2 {
        return Err(CliError::Precondition(format!(
            "plot requires ambient dimension 2, got {}",
            p.dim_ambient()
        )));
    }
    if !p.is_feasible() {
        return Err(CliError::Precondition("cannot plot the empty polytope".into()));
    }
    let v = p.vertex_enumerate().map_err(CliError::precondition)?;
    if !v.is_bounded() {
        return Err(CliError::Precondition("cannot plot an unbounded polyhedron".into()));
    }
    Ok(ring_order(&v.vertices))
}

/// SVG of a single 2-d polytope with labeled vertices.
pub fn plot_polytope(p: &HPolytope, markers: &[QVector]) -> Result<String, CliError> {
    let ring = ring_of(p)?;
    let mut world: Vec<QVector> = ring.clone();
    world.extend(markers.iter().cloned());
    let frame = Frame::fit(&world);
    let mut out = String::new();
    svg_header(&mut out);
    draw_axes(&mut out, &frame);
    out.push_str(&format!(
        "  <path d=\"{}\" fill=\"#1f77b422\" stroke=\"{}\" stroke-width=\"2\"/>\n",
        polygon_path(&frame, &ring),
        PALETTE[0],
    ));
    for v in &ring {
        let (x, y) = frame.px(v);
        out.push_str(&format!(
            "  <circle cx=\"{x}\" cy=\"{y}\" r=\"3\" fill=\"{}\"/>\n",
            PALETTE[0]
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"monospace\">{}</text>\n",
            x + 6,
            y - 6,
            label_of(v),
        ));
    }
    draw_markers(&mut out, &frame, markers);
    out.push_str("</svg>\n");
    Ok(out)
}

/// SVG of chain snapshots `P_m` for the listed `m` plus the limit
/// polytope, with optional markers (e.g. unstable points).
pub fn plot_chain(
    chain: &ParametricChain,
    snapshots: &[u64],
    markers: &[QVector],
) -> Result<String, CliError> {
    if chain.dim_ambient() != 2 {
        return Err(CliError::Precondition(
            "plot requires a 2-dimensional chain".into(),
        ));
    }
    let mut outlines: Vec<(String, Vec<QVector>)> = Vec::new();
    for &m in snapshots {
        let p = chain.instantiate(m).map_err(CliError::precondition)?;
        outlines.push((format!("m = {m}"), ring_of(&p)?));
    }
    let limit = chain.limit_polytope().map_err(CliError::precondition)?;
    outlines.push(("m = \u{221e}".into(), ring_of(&limit)?));

    let mut world: Vec<QVector> = outlines.iter().flat_map(|(_, r)| r.clone()).collect();
    world.extend(markers.iter().cloned());
    let frame = Frame::fit(&world);
    let mut out = String::new();
    svg_header(&mut out);
    draw_axes(&mut out, &frame);
    for (idx, (label, ring)) in outlines.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        out.push_str(&format!(
            "  <path d=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            polygon_path(&frame, ring),
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"13\" font-family=\"monospace\" fill=\"{color}\">{label}</text>\n",
            WIDTH - MARGIN - 90,
            MARGIN + 18 * (idx as i64 + 1),
        ));
    }
    draw_markers(&mut out, &frame, markers);
    out.push_str("</svg>\n");
    Ok(out)
}
