//! SVG rendering of tilings.

use std::fmt::Write as _;

use thiserror::Error;

use crate::lattice::{EPoint, Wedge};
use crate::pentagon::{Chirality, UnitKind, UnitPlacement};
use crate::tiling::{cell_parallelogram, Domain, Tiling, Violation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("scale must be positive, got {0}")]
    Scale(f64),
    #[error("precision must lie in 3..=12, got {0}")]
    Precision(usize),
    #[error("torus block must be at least 1x1")]
    Block,
    #[error("tiling is invalid ({0} violations); enable violation marking to render it")]
    Invalid(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColorBy {
    #[default]
    Chirality,
    Kind,
    UnitParity,
}

impl std::str::FromStr for ColorBy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chirality" => Ok(ColorBy::Chirality),
            "kind" => Ok(ColorBy::Kind),
            "unit-parity" => Ok(ColorBy::UnitParity),
            _ => Err(format!("unknown coloring `{s}` (expected chirality, kind or unit-parity)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Palette {
    pub anterior: String,
    pub posterior: String,
    pub windmill: String,
    pub ship: String,
    pub even: String,
    pub odd: String,
    pub line: String,
    pub highlight: String,
    pub domain: String,
    pub violation: String,
}

impl Default for Palette {
    fn default() -> Self {
        let s = |x: &str| x.to_string();
        Palette {
            anterior: s("#f3ead2"),
            posterior: s("#5d6d8c"),
            windmill: s("#a6cee3"),
            ship: s("#fdbf6f"),
            even: s("#e5e5e5"),
            odd: s("#9a9a9a"),
            line: s("#202020"),
            highlight: s("#d62728"),
            domain: s("#1f77b4"),
            violation: s("#ff00ff"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Pixels per unit edge.
    pub scale: f64,
    pub color_by: ColorBy,
    pub pentagon_stroke: f64,
    pub unit_stroke: f64,
    pub highlight_stroke: f64,
    /// Outlines drawn on top, e.g. reversible regions.
    pub highlights: Vec<Vec<EPoint>>,
    /// Digits after the decimal point.
    pub precision: usize,
    /// Block of fundamental cells drawn for a torus tiling.
    pub torus_block: (i32, i32),
    pub mark_violations: bool,
    pub palette: Palette,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: 40.0,
            color_by: ColorBy::Chirality,
            pentagon_stroke: 0.5,
            unit_stroke: 2.0,
            highlight_stroke: 3.0,
            highlights: Vec::new(),
            precision: 6,
            torus_block: (3, 3),
            mark_violations: false,
            palette: Palette::default(),
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), RenderError> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(RenderError::Scale(self.scale));
        }
        if !(3..=12).contains(&self.precision) {
            return Err(RenderError::Precision(self.precision));
        }
        if self.torus_block.0 < 1 || self.torus_block.1 < 1 {
            return Err(RenderError::Block);
        }
        Ok(())
    }
}

struct Frame {
    scale: f64,
    min_x: f64,
    max_y: f64,
    margin: f64,
    precision: usize,
}

impl Frame {
    fn num(&self, v: f64) -> String {
        let s = format!("{:.*}", self.precision, v);
        if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
            s[1..].to_string()
        } else {
            s
        }
    }

    fn xy(&self, p: EPoint) -> (String, String) {
        let (x, y) = p.to_cartesian();
        (self.num((x - self.min_x) * self.scale + self.margin), self.num((self.max_y - y) * self.scale + self.margin))
    }

    fn points(&self, poly: &[EPoint]) -> String {
        poly.iter()
            .map(|&p| {
                let (x, y) = self.xy(p);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn path(&self, poly: &[EPoint]) -> String {
        let mut d = String::new();
        for (i, &p) in poly.iter().enumerate() {
            let (x, y) = self.xy(p);
            let _ = write!(d, "{}{x} {y} ", if i == 0 { "M" } else { "L" });
        }
        d.push('Z');
        d
    }
}

fn fill<'a>(opts: &'a RenderOptions, unit: &UnitPlacement, index: usize, chirality: Chirality) -> &'a str {
    let p = &opts.palette;
    match opts.color_by {
        ColorBy::Chirality => match chirality {
            Chirality::Anterior => &p.anterior,
            Chirality::Posterior => &p.posterior,
        },
        ColorBy::Kind => match unit.kind() {
            UnitKind::Windmill => &p.windmill,
            UnitKind::Ship => &p.ship,
        },
        ColorBy::UnitParity => {
            if index.is_multiple_of(2) {
                &p.even
            } else {
                &p.odd
            }
        }
    }
}

/// Renders `t` as an SVG 1.1 document with one `<polygon>` per pentagon.
///
/// Units are drawn in sorted order. A torus tiling is drawn as a block of
/// `opts.torus_block` cells with the fundamental cell outlined.
pub fn render_svg(t: &Tiling, opts: &RenderOptions) -> Result<String, RenderError> {
    opts.validate()?;
    let verdict = t.verify();
    if !verdict.is_valid() && !opts.mark_violations {
        return Err(RenderError::Invalid(verdict.violations().len()));
    }
    let (drawn, domain_outline) = match &t.domain {
        Domain::Torus(b) => {
            let (m, n) = opts.torus_block;
            let block = t.lift(m, n).map_err(|_| RenderError::Block)?;
            (block.units, Some(cell_parallelogram(b, 0, 0).to_vec()))
        }
        Domain::Finite(_) => (t.units.clone(), None),
    };
    let mut units = drawn;
    units.sort();

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for u in &units {
        for p in u.pentagons() {
            for v in p.vertices() {
                let (x, y) = v.to_cartesian();
                xs.push(x);
                ys.push(y);
            }
        }
    }
    if let Domain::Finite(r) = &t.domain {
        for tri in r.iter() {
            for v in tri.vertices() {
                let (x, y) = v.to_cartesian();
                xs.push(x);
                ys.push(y);
            }
        }
    }
    let fold = |v: &[f64], f: fn(f64, f64) -> f64| v.iter().copied().reduce(f).unwrap_or(0.0);
    let (min_x, max_x) = (fold(&xs, f64::min), fold(&xs, f64::max));
    let (min_y, max_y) = (fold(&ys, f64::min), fold(&ys, f64::max));
    let margin = opts.unit_stroke.max(opts.highlight_stroke) * 2.0;
    let frame = Frame { scale: opts.scale, min_x, max_y, margin, precision: opts.precision };
    let width = frame.num((max_x - min_x) * opts.scale + 2.0 * margin);
    let height = frame.num((max_y - min_y) * opts.scale + 2.0 * margin);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let line = &opts.palette.line;
    let _ = writeln!(s, "<g id=\"pentagons\" stroke=\"{line}\" stroke-width=\"{}\">", frame.num(opts.pentagon_stroke));
    for (i, u) in units.iter().enumerate() {
        for p in u.pentagons() {
            let _ = writeln!(
                s,
                "<polygon points=\"{}\" fill=\"{}\"/>",
                frame.points(&p.vertices()),
                fill(opts, u, i, p.chirality())
            );
        }
    }
    s.push_str("</g>\n");
    let _ = writeln!(
        s,
        "<g id=\"units\" fill=\"none\" stroke=\"{line}\" stroke-width=\"{}\" stroke-linejoin=\"round\">",
        frame.num(opts.unit_stroke)
    );
    for u in &units {
        if let Ok(o) = u.outline().outline() {
            let _ = writeln!(s, "<path d=\"{}\"/>", frame.path(&o));
        }
    }
    s.push_str("</g>\n");
    if let Some(o) = domain_outline {
        let _ = writeln!(
            s,
            "<g id=\"domain\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-dasharray=\"6 4\">\n<path d=\"{}\"/>\n</g>",
            opts.palette.domain,
            frame.num(opts.unit_stroke),
            frame.path(&o)
        );
    }
    if !opts.highlights.is_empty() {
        let _ = writeln!(
            s,
            "<g id=\"highlights\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\">",
            opts.palette.highlight,
            frame.num(opts.highlight_stroke)
        );
        for h in &opts.highlights {
            let _ = writeln!(s, "<path d=\"{}\"/>", frame.path(h));
        }
        s.push_str("</g>\n");
    }
    if opts.mark_violations && !verdict.is_valid() {
        let _ = writeln!(s, "<g id=\"violations\" fill=\"{}\" fill-opacity=\"0.6\">", opts.palette.violation);
        let mut wedges: Vec<Wedge> = Vec::new();
        for v in verdict.violations() {
            match *v {
                Violation::Gap { wedge } | Violation::Overlap { wedge, .. } => wedges.push(wedge),
                Violation::OutOfDomain { unit } => {
                    if let Some(u) = t.units.get(unit) {
                        wedges.extend(u.wedges());
                    }
                }
            }
        }
        wedges.sort();
        wedges.dedup();
        for w in wedges {
            let _ = writeln!(s, "<path d=\"{}\"/>", frame.path(&w.vertices()));
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Tri;

    fn single(u: UnitPlacement) -> Tiling {
        Tiling::new(Domain::Finite(u.outline()), vec![u])
    }

    fn fills(svg: &str) -> Vec<&str> {
        svg.lines()
            .filter(|l| l.starts_with("<polygon"))
            .map(|l| l.split("fill=\"").nth(1).unwrap().trim_end_matches("\"/>"))
            .collect()
    }

    #[test]
    fn windmill_by_kind() {
        let w = UnitPlacement::windmill(Tri::up(0, 0), Chirality::Anterior);
        let opts = RenderOptions { color_by: ColorBy::Kind, ..Default::default() };
        let f = fills(&render_svg(&single(w), &opts).unwrap()).into_iter().map(String::from).collect::<Vec<_>>();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|x| *x == f[0]));
    }

    #[test]
    fn anterior_ship_by_chirality() {
        let u = UnitPlacement::ship(Tri::up(0, 0), Chirality::Anterior, 0);
        let svg = render_svg(&single(u), &RenderOptions::default()).unwrap();
        let p = Palette::default();
        let f = fills(&svg);
        assert_eq!(f.iter().filter(|x| **x == p.anterior).count(), 2);
        assert_eq!(f.iter().filter(|x| **x == p.posterior).count(), 1);
    }

    #[test]
    fn options_are_checked() {
        let t = single(UnitPlacement::windmill(Tri::up(0, 0), Chirality::Anterior));
        let bad = RenderOptions { precision: 2, ..Default::default() };
        assert_eq!(render_svg(&t, &bad), Err(RenderError::Precision(2)));
        let bad = RenderOptions { scale: 0.0, ..Default::default() };
        assert_eq!(render_svg(&t, &bad), Err(RenderError::Scale(0.0)));
        let broken = Tiling::new(t.domain.clone(), vec![]);
        assert_eq!(render_svg(&broken, &RenderOptions::default()), Err(RenderError::Invalid(21)));
        let marked = RenderOptions { mark_violations: true, ..Default::default() };
        let svg = render_svg(&broken, &marked).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 0);
        assert!(svg.contains("id=\"violations\""));
    }

    #[test]
    fn no_negative_zero() {
        let f = Frame { scale: 1.0, min_x: 0.0, max_y: 0.0, margin: 0.0, precision: 3 };
        assert_eq!(f.num(-0.0001), "0.000");
        assert_eq!(f.num(-0.5), "-0.500");
    }
}
