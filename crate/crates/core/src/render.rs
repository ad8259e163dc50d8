//! Deterministic SVG drawing of an ontograph: legend column on the left,
//! mini world on a grid to its right.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::world::{Ontograph, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Glyph {
    CirclePerson,
    SquareObject,
    Triangle,
    Diamond,
    Star,
    Generic,
}

impl Glyph {
    pub const ALL: [Glyph; 6] = [
        Glyph::CirclePerson,
        Glyph::SquareObject,
        Glyph::Triangle,
        Glyph::Diamond,
        Glyph::Star,
        Glyph::Generic,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Glyph::CirclePerson => "circle_person",
            Glyph::SquareObject => "square_object",
            Glyph::Triangle => "triangle",
            Glyph::Diamond => "diamond",
            Glyph::Star => "star",
            Glyph::Generic => "generic",
        }
    }

    /// Shape of half-size `r` centered on `(cx, cy)`.
    fn svg(self, cx: f64, cy: f64, r: f64, fill: &str) -> String {
        let style = format!("fill=\"{fill}\" stroke=\"#333\" stroke-width=\"1.5\"");
        match self {
            Glyph::CirclePerson => format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {style}/><path d=\"M {} {} Q {} {} {} {} Z\" {style}/>",
                n(cx),
                n(cy - r * 0.45),
                n(r * 0.4),
                n(cx - r * 0.7),
                n(cy + r),
                n(cx),
                n(cy - r * 0.3),
                n(cx + r * 0.7),
                n(cy + r),
            ),
            Glyph::SquareObject => format!(
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" {style}/>",
                n(cx - r * 0.8),
                n(cy - r * 0.8),
                n(r * 1.6),
                n(r * 1.6)
            ),
            Glyph::Triangle => polygon(&[(cx, cy - r), (cx + r, cy + r * 0.8), (cx - r, cy + r * 0.8)], &style),
            Glyph::Diamond => polygon(&[(cx, cy - r), (cx + r, cy), (cx, cy + r), (cx - r, cy)], &style),
            Glyph::Star => {
                let points: Vec<(f64, f64)> = (0..10)
                    .map(|i| {
                        let radius = if i % 2 == 0 { r } else { r * 0.45 };
                        let angle = std::f64::consts::PI * (i as f64 / 5.0 - 0.5);
                        (cx + radius * angle.cos(), cy + radius * angle.sin())
                    })
                    .collect();
                polygon(&points, &style)
            }
            Glyph::Generic => format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\" stroke=\"#333\" stroke-width=\"1.5\" stroke-dasharray=\"3 2\"/>",
                n(cx),
                n(cy),
                n(r * 0.8)
            ),
        }
    }
}

fn polygon(points: &[(f64, f64)], style: &str) -> String {
    let pts: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{},{}", n(*x), n(*y)))
        .collect();
    format!("<polygon points=\"{}\" {style}/>", pts.join(" "))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrokePattern {
    Solid,
    Dashed,
    Dotted,
}

impl StrokePattern {
    fn dasharray(self) -> Option<&'static str> {
        match self {
            StrokePattern::Solid => None,
            StrokePattern::Dashed => Some("8 4"),
            StrokePattern::Dotted => Some("2 4"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderConfig {
    pub cell_size: u32,
    pub icons: BTreeMap<String, Glyph>,
    pub arrow_styles: BTreeMap<String, StrokePattern>,
}

impl Default for RenderConfig {
    /// Every built-in glyph under its own name, and the three stroke
    /// patterns as `solid`, `dashed` and `dotted`.
    fn default() -> Self {
        RenderConfig {
            cell_size: 120,
            icons: Glyph::ALL.iter().map(|g| (g.id().to_owned(), *g)).collect(),
            arrow_styles: [
                ("solid", StrokePattern::Solid),
                ("dashed", StrokePattern::Dashed),
                ("dotted", StrokePattern::Dotted),
            ]
            .into_iter()
            .map(|(k, v)| (k.to_owned(), v))
            .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("type {type_name} uses icon {icon:?}, which the render config does not define")]
    UnknownIcon { type_name: String, icon: String },
    #[error(
        "relation {relation} uses arrow style {style:?}, which the render config does not define"
    )]
    UnknownStyle { relation: String, style: String },
    #[error("ontograph is invalid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidWorld(Vec<Violation>),
    #[error("cell size must be at least {MIN_CELL}")]
    CellTooSmall,
}

const MARGIN: f64 = 20.0;
const LEGEND_WIDTH: f64 = 190.0;
const LEGEND_ROW: f64 = 32.0;
const ICON: f64 = 13.0;
const MIN_CELL: u32 = 60;
const TYPE_COLORS: [&str; 6] = [
    "#f4a261", "#e76f51", "#2a9d8f", "#e9c46a", "#8ab17d", "#a8dadc",
];
const RELATION_COLORS: [&str; 6] = [
    "#264653", "#9b2226", "#3a5a40", "#6a4c93", "#bc6c25", "#1d3557",
];

/// Formats a coordinate with at most one decimal.
fn n(v: f64) -> String {
    let r = (v * 10.0).round() / 10.0;
    if r == r.trunc() {
        format!("{}", r as i64)
    } else {
        format!("{r:.1}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// SVG text for a valid world. Same input, same bytes.
pub fn render(world: &Ontograph, config: &RenderConfig) -> Result<String, RenderError> {
    let violations = world.validate();
    if !violations.is_empty() {
        return Err(RenderError::InvalidWorld(violations));
    }
    if config.cell_size < MIN_CELL {
        return Err(RenderError::CellTooSmall);
    }
    let mut glyphs = BTreeMap::new();
    for (i, t) in world.legend.types.iter().enumerate() {
        let glyph = config
            .icons
            .get(&t.icon)
            .ok_or_else(|| RenderError::UnknownIcon {
                type_name: t.name.clone(),
                icon: t.icon.clone(),
            })?;
        glyphs.insert(
            t.name.as_str(),
            (*glyph, TYPE_COLORS[i % TYPE_COLORS.len()]),
        );
    }
    let mut strokes = BTreeMap::new();
    for (i, r) in world.legend.relations.iter().enumerate() {
        let pattern =
            config
                .arrow_styles
                .get(&r.style)
                .ok_or_else(|| RenderError::UnknownStyle {
                    relation: r.name.clone(),
                    style: r.style.clone(),
                })?;
        strokes.insert(
            r.name.as_str(),
            (i, *pattern, RELATION_COLORS[i % RELATION_COLORS.len()]),
        );
    }

    let cell = config.cell_size as f64;
    let mut individuals: Vec<_> = world.individuals.iter().collect();
    individuals.sort_by(|a, b| a.id.cmp(&b.id));
    let columns = (individuals.len() as f64).sqrt().ceil() as u32;
    let slots: BTreeMap<&str, (u32, u32)> = individuals
        .iter()
        .enumerate()
        .map(|(i, ind)| {
            let explicit = world
                .positions
                .as_ref()
                .and_then(|p| p.get(&ind.id))
                .copied();
            let slot = explicit.unwrap_or((i as u32 % columns, i as u32 / columns));
            (ind.id.as_str(), slot)
        })
        .collect();
    let grid_w = slots.values().map(|s| s.0 + 1).max().unwrap_or(1) as f64;
    let grid_h = slots.values().map(|s| s.1 + 1).max().unwrap_or(1) as f64;
    let world_x = MARGIN * 2.0 + LEGEND_WIDTH;
    let world_y = MARGIN;
    let center = |id: &str| {
        let (gx, gy) = slots[id];
        (
            world_x + (gx as f64 + 0.5) * cell,
            world_y + (gy as f64 + 0.5) * cell - 8.0,
        )
    };

    let legend_rows = (world.legend.types.len() + world.legend.relations.len()) as f64;
    let legend_h = 30.0 + legend_rows * LEGEND_ROW;
    let width = (world_x + grid_w * cell + MARGIN).ceil() as u32;
    let height = (MARGIN * 2.0 + legend_h.max(grid_h * cell)).ceil() as u32;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(out, "<!-- ontograph: {} -->", escape(&world.id));
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\" font-size=\"13\">"
    );

    out.push_str("<defs>\n");
    for r in &world.legend.relations {
        let (_, _, color) = strokes[r.name.as_str()];
        let _ = writeln!(
            out,
            "<marker id=\"arrow-{}\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" orient=\"auto\"><path d=\"M 0 0 L 10 5 L 0 10 Z\" fill=\"{color}\"/></marker>",
            r.name
        );
    }
    out.push_str("</defs>\n");

    // legend
    out.push_str("<g class=\"legend\">\n");
    let _ = writeln!(
        out,
        "<rect class=\"frame\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#fafafa\" stroke=\"#999\"/>",
        n(MARGIN),
        n(MARGIN),
        n(LEGEND_WIDTH),
        n(legend_h)
    );
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-weight=\"bold\">Legend</text>",
        n(MARGIN + 10.0),
        n(MARGIN + 20.0)
    );
    let mut y = MARGIN + 30.0 + LEGEND_ROW / 2.0;
    for t in &world.legend.types {
        let (glyph, color) = glyphs[t.name.as_str()];
        let _ = writeln!(
            out,
            "<g class=\"legend-type\">{}<text x=\"{}\" y=\"{}\">{}</text></g>",
            glyph.svg(MARGIN + 25.0, y, ICON * 0.8, color),
            n(MARGIN + 50.0),
            n(y + 4.0),
            escape(&t.name)
        );
        y += LEGEND_ROW;
    }
    for r in &world.legend.relations {
        let (_, pattern, color) = strokes[r.name.as_str()];
        let _ = writeln!(
            out,
            "<g class=\"legend-relation\"><line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"{} marker-end=\"url(#arrow-{})\"/><text x=\"{}\" y=\"{}\">{}</text></g>",
            n(MARGIN + 8.0),
            n(y),
            n(MARGIN + 42.0),
            n(y),
            stroke_attrs(pattern, color),
            r.name,
            n(MARGIN + 50.0),
            n(y + 4.0),
            escape(&r.name)
        );
        y += LEGEND_ROW;
    }
    out.push_str("</g>\n");

    // mini world
    out.push_str("<g class=\"world\">\n");
    let _ = writeln!(
        out,
        "<rect class=\"frame\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#999\"/>",
        n(world_x),
        n(world_y),
        n(grid_w * cell),
        n(grid_h * cell)
    );
    for ind in &individuals {
        let (cx, cy) = center(&ind.id);
        let shapes: Vec<(Glyph, &str)> = if ind.types.is_empty() {
            vec![(Glyph::Generic, "#ddd")]
        } else {
            // legend order, so co-typed individuals look alike
            world
                .legend
                .types
                .iter()
                .filter(|t| ind.types.contains(&t.name))
                .map(|t| glyphs[t.name.as_str()])
                .collect()
        };
        let _ = write!(
            out,
            "<g class=\"individual\" id=\"ind-{}\">",
            escape(&ind.id)
        );
        let k = shapes.len() as f64;
        for (i, (glyph, color)) in shapes.iter().enumerate() {
            let dx = (i as f64 - (k - 1.0) / 2.0) * ICON * 2.2;
            out.push_str(&glyph.svg(cx + dx, cy, ICON, color));
        }
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text></g>",
            n(cx),
            n(cy + ICON + 18.0),
            escape(ind.display_name())
        );
    }

    let mut arrows: Vec<_> = world.relations.iter().collect();
    arrows.sort_by(|a, b| {
        (&a.relation, &a.source, &a.target).cmp(&(&b.relation, &b.source, &b.target))
    });
    for a in arrows {
        let (index, pattern, color) = strokes[a.relation.as_str()];
        let bend = 12.0 + 10.0 * index as f64;
        let (sx, sy) = center(&a.source);
        let d = if a.source == a.target {
            let h = ICON + 18.0 + bend;
            format!(
                "M {} {} C {} {} {} {} {} {}",
                n(sx - 6.0),
                n(sy - ICON - 2.0),
                n(sx - 26.0),
                n(sy - h - 10.0),
                n(sx + 26.0),
                n(sy - h - 10.0),
                n(sx + 6.0),
                n(sy - ICON - 2.0)
            )
        } else {
            let (tx, ty) = center(&a.target);
            let (dx, dy) = (tx - sx, ty - sy);
            let len = (dx * dx + dy * dy).sqrt();
            let (ux, uy) = (dx / len, dy / len);
            let gap = ICON + 6.0;
            let (x1, y1) = (sx + ux * gap, sy + uy * gap);
            let (x2, y2) = (tx - ux * gap, ty - uy * gap);
            // bend to the left of travel so opposite arrows separate
            let (mx, my) = ((x1 + x2) / 2.0 + uy * bend, (y1 + y2) / 2.0 - ux * bend);
            format!(
                "M {} {} Q {} {} {} {}",
                n(x1),
                n(y1),
                n(mx),
                n(my),
                n(x2),
                n(y2)
            )
        };
        let _ = writeln!(
            out,
            "<path class=\"relation\" data-rel=\"{}\" data-from=\"{}\" data-to=\"{}\" d=\"{d}\" fill=\"none\"{} marker-end=\"url(#arrow-{})\"/>",
            a.relation,
            a.source,
            a.target,
            stroke_attrs(pattern, color),
            a.relation
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

fn stroke_attrs(pattern: StrokePattern, color: &str) -> String {
    let mut s = format!(" stroke=\"{color}\" stroke-width=\"2\"");
    if let Some(dash) = pattern.dasharray() {
        let _ = write!(s, " stroke-dasharray=\"{dash}\"");
    }
    s
}
