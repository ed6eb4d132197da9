//! Plain SVG drawings. Coordinates are exact rationals converted to f64 only
//! here, at the very end.

use std::fmt::Write;

use num_traits::ToPrimitive;

use tropex::exactq::Rational;
use tropex::rigidity::Framework;
use tropex::tropcurve::{Curve, EdgeKind};
use tropex::{Error, Result};

const SIZE: f64 = 480.0;

fn f(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

#[derive(Clone, Copy)]
struct Frame {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

impl Frame {
    /// Bounding box of `pts` padded by 20% on every side.
    fn around(pts: &[(f64, f64)]) -> Frame {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in pts {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        if pts.is_empty() {
            (x0, y0, x1, y1) = (0.0, 0.0, 0.0, 0.0);
        }
        let side = (x1 - x0).max(y1 - y0).max(1.0);
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let half = side * 0.5 * 1.4;
        Frame {
            x0: cx - half,
            y0: cy - half,
            x1: cx + half,
            y1: cy + half,
        }
    }

    fn px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let s = SIZE / (self.x1 - self.x0);
        ((x - self.x0) * s, (self.y1 - y) * s)
    }

    /// Largest `t` with `p + t d` still inside the frame.
    fn exit(&self, p: (f64, f64), d: (f64, f64)) -> f64 {
        let mut t = f64::INFINITY;
        if d.0 > 0.0 {
            t = t.min((self.x1 - p.0) / d.0);
        } else if d.0 < 0.0 {
            t = t.min((self.x0 - p.0) / d.0);
        }
        if d.1 > 0.0 {
            t = t.min((self.y1 - p.1) / d.1);
        } else if d.1 < 0.0 {
            t = t.min((self.y0 - p.1) / d.1);
        }
        t.max(0.0)
    }
}

struct Svg {
    frame: Frame,
    body: String,
}

impl Svg {
    fn new(frame: Frame) -> Svg {
        Svg { frame, body: String::new() }
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), stroke: &str, width: f64) {
        let (pa, pb) = (self.frame.px(a), self.frame.px(b));
        let _ = writeln!(
            self.body,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{stroke}" stroke-width="{width}"/>"#,
            pa.0, pa.1, pb.0, pb.1
        );
    }

    fn dot(&mut self, p: (f64, f64), r: f64) {
        let q = self.frame.px(p);
        let _ = writeln!(self.body, r#"<circle cx="{:.2}" cy="{:.2}" r="{r}" fill="black"/>"#, q.0, q.1);
    }

    fn text(&mut self, p: (f64, f64), s: &str) {
        let q = self.frame.px(p);
        let _ = writeln!(
            self.body,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif">{s}</text>"#,
            q.0 + 4.0,
            q.1 - 4.0
        );
    }

    fn grid(&mut self) {
        let fr = self.frame;
        for x in fr.x0.ceil() as i64..=fr.x1.floor() as i64 {
            self.line((x as f64, fr.y0), (x as f64, fr.y1), "#ccc", 0.5);
        }
        for y in fr.y0.ceil() as i64..=fr.y1.floor() as i64 {
            self.line((fr.x0, y as f64), (fr.x1, y as f64), "#ccc", 0.5);
        }
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

fn pt(p: &[Rational]) -> (f64, f64) {
    (f(&p[0]), f(&p[1]))
}

pub fn curve(c: &Curve) -> String {
    let mut bounded: Vec<(f64, f64)> = c.vertices.iter().map(|v| pt(v)).collect();
    for e in &c.edges {
        if let EdgeKind::Line { point } = &e.kind {
            bounded.push(pt(point));
        }
    }
    let mut svg = Svg::new(Frame::around(&bounded));
    for e in &c.edges {
        let d = (e.direction[0].to_f64().unwrap_or(0.0), e.direction[1].to_f64().unwrap_or(0.0));
        let (a, b) = match &e.kind {
            EdgeKind::Segment { from, to } => (pt(&c.vertices[*from]), pt(&c.vertices[*to])),
            EdgeKind::Ray { from } => {
                let p = pt(&c.vertices[*from]);
                let t = svg.frame.exit(p, d);
                (p, (p.0 + t * d.0, p.1 + t * d.1))
            }
            EdgeKind::Line { point } => {
                let p = pt(point);
                let (t, s) = (svg.frame.exit(p, d), svg.frame.exit(p, (-d.0, -d.1)));
                ((p.0 - s * d.0, p.1 - s * d.1), (p.0 + t * d.0, p.1 + t * d.1))
            }
        };
        svg.line(a, b, "black", 1.5);
        if e.weight > 1.into() {
            svg.text(((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0), &e.weight.to_string());
        }
    }
    for v in &c.vertices {
        svg.dot(pt(v), 3.0);
    }
    svg.finish()
}

pub fn subdivision(c: &Curve) -> String {
    let sd = &c.subdivision;
    let ip = |p: (i64, i64)| (p.0 as f64, p.1 as f64);
    let pts: Vec<(f64, f64)> = sd.points.iter().map(|&p| ip(p)).collect();
    let mut svg = Svg::new(Frame::around(&pts));
    svg.grid();
    for e in &sd.edges {
        svg.line(ip(e.a), ip(e.b), "black", 1.5);
    }
    for &p in &pts {
        svg.dot(p, 3.0);
    }
    svg.finish()
}

pub fn framework(fw: &Framework) -> Result<String> {
    if fw.dim != 2 {
        return Err(Error::WrongDimension { expected: 2, got: fw.dim });
    }
    let pts: Vec<(f64, f64)> = fw.points.iter().map(|p| pt(p)).collect();
    let mut svg = Svg::new(Frame::around(&pts));
    svg.grid();
    for &(u, v) in &fw.edges {
        svg.line(pts[u], pts[v], "black", 1.5);
    }
    for (p, id) in pts.iter().zip(&fw.ids) {
        svg.dot(*p, 3.0);
        svg.text(*p, id);
    }
    Ok(svg.finish())
}
