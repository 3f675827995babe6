//! Polylines and dots, nothing else.

use std::fmt::Write as _;

use num_complex::Complex64;

const SIZE: f64 = 800.0;
const PAD: f64 = 20.0;

enum Item {
    Line {
        pts: Vec<Complex64>,
        closed: bool,
        color: &'static str,
    },
    Dots {
        pts: Vec<Complex64>,
        color: &'static str,
    },
}

#[derive(Default)]
pub struct Figure {
    items: Vec<Item>,
}

impl Figure {
    pub fn polyline(&mut self, pts: &[Complex64], closed: bool, color: &'static str) {
        if pts.len() > 1 {
            self.items.push(Item::Line {
                pts: pts.to_vec(),
                closed,
                color,
            });
        }
    }

    pub fn dots(&mut self, pts: &[Complex64], color: &'static str) {
        self.items.push(Item::Dots {
            pts: pts.to_vec(),
            color,
        });
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for it in &self.items {
            let pts = match it {
                Item::Line { pts, .. } | Item::Dots { pts, .. } => pts,
            };
            for p in pts.iter().filter(|p| p.re.is_finite() && p.im.is_finite()) {
                b = (b.0.min(p.re), b.1.min(p.im), b.2.max(p.re), b.3.max(p.im));
            }
        }
        if !b.0.is_finite() {
            return (-1.0, -1.0, 1.0, 1.0);
        }
        b
    }

    /// Equal axis scaling, y up.
    pub fn render(&self) -> String {
        let (x0, y0, x1, y1) = self.bounds();
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        let s = (SIZE - 2.0 * PAD) / span;
        let cx = 0.5 * (x0 + x1);
        let cy = 0.5 * (y0 + y1);
        let map = |p: &Complex64| (SIZE / 2.0 + (p.re - cx) * s, SIZE / 2.0 - (p.im - cy) * s);
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        for it in &self.items {
            match it {
                Item::Line { pts, closed, color } => {
                    let tag = if *closed { "polygon" } else { "polyline" };
                    let coords: Vec<String> = pts
                        .iter()
                        .filter(|p| p.re.is_finite() && p.im.is_finite())
                        .map(|p| {
                            let (x, y) = map(p);
                            format!("{x:.2},{y:.2}")
                        })
                        .collect();
                    let _ = writeln!(
                        out,
                        r#"<{tag} points="{}" fill="none" stroke="{color}" stroke-width="1"/>"#,
                        coords.join(" ")
                    );
                }
                Item::Dots { pts, color } => {
                    for p in pts {
                        let (x, y) = map(p);
                        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2" fill="{color}"/>"#);
                    }
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}
