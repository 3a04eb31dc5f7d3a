//! SVG rendering of the part partition, optionally highlighting a cover.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{BBox, PolygonSet, SimplePolygon};
use crate::instance::DiscreteInstance;
use crate::objectives::Cover;

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 10.0;

#[derive(Debug, Clone, Default)]
pub struct RenderOptions<'a> {
    pub cover: Option<&'a Cover>,
    pub aoi: Option<&'a SimplePolygon>,
    pub title: Option<String>,
}

/// Draws every part once as a `<path>` with class `part`, or with a cover,
/// `clear` / `cloudy` depending on whether any taken image sees it
/// cloud-free. Needs part geometry (instances built by preprocessing).
pub fn render_svg(inst: &DiscreteInstance, options: &RenderOptions<'_>) -> Result<String> {
    let parts = inst
        .provenance
        .as_ref()
        .ok_or_else(|| Error::contract("instance carries no part geometry to render"))?;
    let mut bbox = parts.iter().filter_map(PolygonSet::bbox).reduce(|a, b| a.union(&b));
    if let Some(aoi) = options.aoi {
        let b = aoi.bbox();
        bbox = Some(bbox.map_or(b, |a| a.union(&b)));
    }
    let bbox = bbox.ok_or_else(|| Error::contract("nothing to render"))?;
    let view = View::new(bbox);

    let clear = options.cover.map(|c| {
        let mut seen = vec![false; inst.n()];
        for &i in &c.taken {
            let img = &inst.images[i];
            for &k in &img.parts {
                if !img.is_cloudy(k) {
                    seen[k] = true;
                }
            }
        }
        seen
    });

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.0} {:.0}">"#,
        view.width, view.height, view.width, view.height
    );
    out.push_str(concat!(
        "<style>path{stroke:#333;stroke-width:0.5;fill-rule:evenodd}",
        ".part{fill:#cfe3f5}.clear{fill:#8fd18f}.cloudy{fill:#9a9a9a}",
        ".aoi{fill:none;stroke:#d00;stroke-width:2;stroke-dasharray:6 3}</style>\n"
    ));
    let title = match (&options.title, options.cover) {
        (Some(t), _) => Some(t.clone()),
        (None, Some(c)) => Some(format!("images {} objectives {}", c.image_ids(inst).join(" "), c.objectives)),
        (None, None) => None,
    };
    if let Some(t) = title {
        let _ = writeln!(out, "<title>{}</title>", escape(&t));
    }
    for (k, region) in parts.iter().enumerate() {
        let class = match &clear {
            None => "part",
            Some(seen) if seen[k] => "clear",
            Some(_) => "cloudy",
        };
        let d: String = region.polygons.iter().map(|p| view.path(p.exterior())).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, r#"<path id="part-{}" class="{class}" d="{d}"/>"#, k + 1);
    }
    if let Some(aoi) = options.aoi {
        let _ = writeln!(out, r#"<path class="aoi" d="{}"/>"#, view.path(aoi.exterior()));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

struct View {
    bbox: BBox,
    scale: f64,
    width: f64,
    height: f64,
}

impl View {
    fn new(bbox: BBox) -> Self {
        let span = bbox.width().max(bbox.height()).max(f64::MIN_POSITIVE);
        let scale = (WIDTH - 2.0 * MARGIN) / span;
        Self {
            bbox,
            scale,
            width: bbox.width() * scale + 2.0 * MARGIN,
            height: bbox.height() * scale + 2.0 * MARGIN,
        }
    }

    /// SVG y grows downwards, so northings are flipped.
    fn path(&self, ring: &[[f64; 2]]) -> String {
        let mut d = String::new();
        for (i, p) in ring.iter().enumerate() {
            let x = MARGIN + (p[0] - self.bbox.min[0]) * self.scale;
            let y = MARGIN + (self.bbox.max[1] - p[1]) * self.scale;
            let _ = write!(d, "{}{x:.2},{y:.2} ", if i == 0 { "M" } else { "L" });
        }
        d.push('Z');
        d
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
