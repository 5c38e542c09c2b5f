//! Deterministic SVG pictures of Ford circles, the Farey tessellation and
//! geodesics.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::hypgeo::{ford_circles, Horocycle};
use crate::moebius::ProjPoint;

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub window: (Rational, Rational),
    pub q_max: u64,
    pub geodesics: Vec<(ProjPoint, ProjPoint)>,
    /// Pixels per unit.
    pub scale: f64,
}

impl RenderSpec {
    pub fn new(window: (Rational, Rational), q_max: u64) -> Self {
        RenderSpec { window, q_max, geodesics: Vec::new(), scale: 400.0 }
    }

    fn validate(&self) -> Result<()> {
        if self.window.0 >= self.window.1 {
            return Err(Error::InvalidArgument("window must satisfy x_min < x_max".into()));
        }
        if self.q_max == 0 {
            return Err(Error::InvalidArgument("q_max must be at least 1".into()));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidArgument("scale must be positive".into()));
        }
        Ok(())
    }
}

const MARGIN: f64 = 20.0;
const TOP: f64 = 1.25;

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Renders `spec` as an SVG document.
pub fn render_svg(spec: &RenderSpec) -> Result<String> {
    spec.validate()?;
    let (lo, hi) = (&spec.window.0, &spec.window.1);
    let s = spec.scale;
    let width = (f(hi) - f(lo)) * s + 2.0 * MARGIN;
    let height = TOP * s + 2.0 * MARGIN;
    let px = |x: f64| MARGIN + (x - f(lo)) * s;
    let py = |y: f64| MARGIN + (TOP - y) * s;

    let circles = ford_circles(spec.q_max, (lo, hi))?;
    let finite: Vec<&Horocycle> = circles.iter().filter(|h| !h.q.is_zero()).collect();

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(width),
        num(height),
        num(width),
        num(height)
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1"/>"#,
        num(px(f(lo))),
        num(py(0.0)),
        num(px(f(hi))),
        num(py(0.0))
    )
    .unwrap();

    out.push_str("<g class=\"ford\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"0.75\">\n");
    for h in &finite {
        let c = f(&h.p) / f(&h.q);
        let rad = 0.5 / (f(&h.q) * f(&h.q));
        writeln!(out, r#"<circle cx="{}" cy="{}" r="{}"/>"#, num(px(c)), num(py(rad)), num(rad * s)).unwrap();
    }
    // h(1, 0)
    writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(px(f(lo))), num(py(1.0)), num(px(f(hi))), num(py(1.0))).unwrap();
    out.push_str("</g>\n");

    out.push_str("<g class=\"farey\" fill=\"none\" stroke=\"#7f7f7f\" stroke-width=\"0.5\">\n");
    let fr: Vec<(BigInt, BigInt)> = finite.iter().map(|h| (h.p.to_integer(), h.q.to_integer())).collect();
    for (i, (p, q)) in fr.iter().enumerate() {
        if q == &BigInt::from(1) {
            let x = px(p.to_f64().unwrap());
            writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(x), num(py(0.0)), num(x), num(py(TOP))).unwrap();
        }
        for (r, t) in &fr[i + 1..] {
            if (p * t - r * q).abs() == BigInt::from(1) {
                let a = p.to_f64().unwrap() / q.to_f64().unwrap();
                let b = r.to_f64().unwrap() / t.to_f64().unwrap();
                out.push_str(&arc(&px, &py, a, b, s));
            }
        }
    }
    out.push_str("</g>\n");

    if !spec.geodesics.is_empty() {
        out.push_str("<g class=\"geodesics\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\">\n");
        for (e1, e2) in &spec.geodesics {
            match (e1, e2) {
                (ProjPoint::Finite(a), ProjPoint::Finite(b)) => out.push_str(&arc(&px, &py, a.to_f64(), b.to_f64(), s)),
                (ProjPoint::Finite(a), ProjPoint::Infinity) | (ProjPoint::Infinity, ProjPoint::Finite(a)) => {
                    let x = px(a.to_f64());
                    writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(x), num(py(0.0)), num(x), num(py(TOP))).unwrap();
                }
                _ => return Err(Error::DegenerateGeodesic),
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn arc(px: &dyn Fn(f64) -> f64, py: &dyn Fn(f64) -> f64, a: f64, b: f64, s: f64) -> String {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let r = (b - a) / 2.0 * s;
    format!(
        "<path d=\"M {} {} A {} {} 0 0 1 {} {}\"/>\n",
        num(px(a)),
        num(py(0.0)),
        num(r),
        num(r),
        num(px(b)),
        num(py(0.0))
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn counts() {
        let svg = render_svg(&RenderSpec::new((int(0), int(1)), 5)).unwrap();
        assert_eq!(svg.matches("<circle").count(), 11);
        assert!(svg.starts_with("<svg"));
        assert!(render_svg(&RenderSpec::new((int(1), int(0)), 5)).is_err());
    }

    #[test]
    fn deterministic() {
        let mut spec = RenderSpec::new((int(-1), int(2)), 7);
        spec.geodesics.push(("1/2 - 1/2*sqrt(5)".parse().unwrap(), "1/2 + 1/2*sqrt(5)".parse().unwrap()));
        assert_eq!(render_svg(&spec).unwrap(), render_svg(&spec).unwrap());
    }
}
