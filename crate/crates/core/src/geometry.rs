//! Planar polygon kernel.
//!
//! Coordinates are planar metres in a projected CRS. Clipping and unions are
//! delegated to `geo` (backed by `i_overlay`); their results are snapped to a
//! [`SNAP_GRID`] grid and pieces smaller than [`SLIVER_AREA`] are dropped.
//! The overlay builds its own planar arrangement.

use geo::{BooleanOps, Coord, LineString, MultiPolygon, Polygon};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

mod arrangement;

/// Coordinates are rounded to this grid after every boolean operation.
pub const SNAP_GRID: f64 = 1e-7;

/// Faces and holes with smaller area (m²) are discarded as slivers.
pub const SLIVER_AREA: f64 = 1e-4;

pub type Point = [f64; 2];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 distinct vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon has a non-finite coordinate")]
    NonFinite,
    #[error("polygon edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("polygons with holes are not supported")]
    HasHoles,
    #[error("expected a GeoJSON {expected}, found {found}")]
    WrongGeometryType {
        expected: &'static str,
        found: &'static str,
    },
}

/// A simple polygon without holes, stored open and counter-clockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon {
    exterior: Vec<Point>,
}

impl SimplePolygon {
    /// Validates the ring and normalises it to counter-clockwise order. A
    /// trailing vertex equal to the first one is dropped.
    pub fn new(points: Vec<Point>) -> Result<Self, GeometryError> {
        if points.iter().flatten().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let mut ring = dedup_ring(points);
        if ring.len() < 3 {
            return Err(GeometryError::TooFewVertices(ring.len()));
        }
        if let Some((a, b)) = first_self_intersection(&ring) {
            return Err(GeometryError::SelfIntersecting(a, b));
        }
        let signed = signed_area(&ring);
        if signed.abs() <= f64::EPSILON {
            return Err(GeometryError::ZeroArea);
        }
        if signed < 0.0 {
            ring.reverse();
        }
        Ok(Self { exterior: ring })
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self::new(vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]]).expect("rectangle must be non-degenerate")
    }

    /// Builds from a ring produced by the kernel itself; skips the quadratic
    /// self-intersection check.
    fn from_kernel_ring(points: Vec<Point>) -> Option<Self> {
        let mut ring = dedup_ring(points);
        if ring.len() < 3 {
            return None;
        }
        let signed = signed_area(&ring);
        if signed.abs() < SLIVER_AREA {
            return None;
        }
        if signed < 0.0 {
            ring.reverse();
        }
        Some(Self { exterior: ring })
    }

    pub fn exterior(&self) -> &[Point] {
        &self.exterior
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.exterior)
    }

    pub fn bbox(&self) -> BBox {
        BBox::of_points(&self.exterior)
    }

    pub(crate) fn to_geo(&self) -> Polygon<f64> {
        Polygon::new(ring_to_linestring(&self.exterior), vec![])
    }

    /// Strict point-in-polygon test (even-odd rule).
    pub fn contains_point(&self, p: Point) -> bool {
        point_in_ring(&self.exterior, p)
    }
}

/// A possibly disconnected region made of interior-disjoint simple polygons.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolygonSet {
    pub polygons: Vec<SimplePolygon>,
}

impl PolygonSet {
    pub fn new(polygons: Vec<SimplePolygon>) -> Self {
        Self { polygons }
    }

    pub fn is_empty(&self) -> bool {
        self.polygons.is_empty()
    }

    pub fn area(&self) -> f64 {
        area(self)
    }

    pub fn bbox(&self) -> Option<BBox> {
        self.polygons.iter().map(SimplePolygon::bbox).reduce(|a, b| a.union(&b))
    }

    pub(crate) fn to_geo(&self) -> MultiPolygon<f64> {
        MultiPolygon::new(self.polygons.iter().map(SimplePolygon::to_geo).collect())
    }

    fn from_geo_polygons(polys: Vec<Polygon<f64>>) -> Self {
        Self {
            polygons: polys.into_iter().flat_map(decompose_holes).collect(),
        }
    }
}

impl From<SimplePolygon> for PolygonSet {
    fn from(p: SimplePolygon) -> Self {
        Self { polygons: vec![p] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    fn of_points(points: &[Point]) -> Self {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            for d in 0..2 {
                min[d] = min[d].min(p[d]);
                max[d] = max[d].max(p[d]);
            }
        }
        Self { min, max }
    }

    pub fn union(&self, other: &BBox) -> BBox {
        BBox {
            min: [self.min[0].min(other.min[0]), self.min[1].min(other.min[1])],
            max: [self.max[0].max(other.max[0]), self.max[1].max(other.max[1])],
        }
    }

    pub fn overlaps(&self, other: &BBox) -> bool {
        self.min[0] < other.max[0] && other.min[0] < self.max[0] && self.min[1] < other.max[1] && other.min[1] < self.max[1]
    }

    pub fn width(&self) -> f64 {
        self.max[0] - self.min[0]
    }

    pub fn height(&self) -> f64 {
        self.max[1] - self.min[1]
    }
}

/// One cell of an overlay arrangement and the input regions containing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub region: PolygonSet,
    /// Zero-based indices into the overlay input, ascending.
    pub owners: Vec<usize>,
}

/// Intersection of `subject` and `window`. Degenerate results come back empty.
pub fn clip(subject: &SimplePolygon, window: &SimplePolygon) -> PolygonSet {
    if !subject.bbox().overlaps(&window.bbox()) {
        return PolygonSet::default();
    }
    let out = subject.to_geo().intersection(&window.to_geo());
    PolygonSet::from_geo_polygons(snap(out))
}

/// Shoelace area, summed over member polygons.
pub fn area(region: &PolygonSet) -> f64 {
    region.polygons.iter().map(SimplePolygon::area).sum()
}

/// Area of `a ∩ b`.
pub fn intersection_area(a: &PolygonSet, b: &PolygonSet) -> f64 {
    match (a.bbox(), b.bbox()) {
        (Some(ba), Some(bb)) if ba.overlaps(&bb) => {}
        _ => return 0.0,
    }
    geo_area(&a.to_geo().intersection(&b.to_geo()))
}

/// Area of the union of all regions, computed directly with a unary union.
pub fn union_area(regions: &[PolygonSet]) -> f64 {
    let polys: Vec<Polygon<f64>> = regions.iter().flat_map(|r| r.to_geo().0).collect();
    geo_area(&geo::unary_union(&polys))
}

/// `window ∖ (r_1 ∪ … ∪ r_k)`.
pub fn uncovered(window: &SimplePolygon, regions: &[PolygonSet]) -> PolygonSet {
    let polys: Vec<Polygon<f64>> = regions.iter().flat_map(|r| r.to_geo().0).collect();
    let covered = geo::unary_union(&polys);
    PolygonSet::from_geo_polygons(snap(window.to_geo().difference(&covered)))
}

/// Splits the plane covered by `regions` into interior-disjoint faces, each
/// labelled with the regions that contain it.
///
/// All boundaries are inserted into one planar arrangement, so adjacent
/// faces share their vertices exactly.
pub fn overlay(regions: &[PolygonSet]) -> Vec<Face> {
    arrangement::overlay(regions)
}

/// Rounds to the snap grid and drops slivers (outer rings and holes).
fn snap(mp: MultiPolygon<f64>) -> Vec<Polygon<f64>> {
    mp.0.into_iter()
        .filter_map(|poly| {
            let (ext, holes) = poly.into_inner();
            let ext = snap_ring(&ext)?;
            let holes = holes.iter().filter_map(snap_ring).collect();
            Some(Polygon::new(ext, holes))
        })
        .collect()
}

fn snap_ring(ls: &LineString<f64>) -> Option<LineString<f64>> {
    let pts: Vec<Point> = linestring_points(ls)
        .into_iter()
        .map(|[x, y]| [snap_coord(x), snap_coord(y)])
        .collect();
    let pts = dedup_ring(pts);
    if pts.len() < 3 || signed_area(&pts).abs() < SLIVER_AREA {
        return None;
    }
    Some(ring_to_linestring(&pts))
}

fn snap_coord(v: f64) -> f64 {
    (v / SNAP_GRID).round() * SNAP_GRID
}

/// Splits a polygon with holes into simple pieces by cutting vertically
/// through the middle of a hole until no holes remain.
fn decompose_holes(poly: Polygon<f64>) -> Vec<SimplePolygon> {
    if poly.interiors().is_empty() {
        return SimplePolygon::from_kernel_ring(linestring_points(poly.exterior()))
            .into_iter()
            .collect();
    }
    let hole = BBox::of_points(&linestring_points(&poly.interiors()[0]));
    let outer = BBox::of_points(&linestring_points(poly.exterior()));
    let cut = (hole.min[0] + hole.max[0]) / 2.0;
    let (y0, y1) = (outer.min[1] - 1.0, outer.max[1] + 1.0);
    let halves = [
        SimplePolygon::rect(outer.min[0] - 1.0, y0, cut, y1),
        SimplePolygon::rect(cut, y0, outer.max[0] + 1.0, y1),
    ];
    halves
        .iter()
        .flat_map(|half| snap(poly.intersection(&half.to_geo())))
        .flat_map(decompose_holes)
        .collect()
}

fn geo_area(mp: &MultiPolygon<f64>) -> f64 {
    use geo::Area;
    mp.unsigned_area()
}

fn linestring_points(ls: &LineString<f64>) -> Vec<Point> {
    ls.0.iter().map(|c| [c.x, c.y]).collect()
}

fn ring_to_linestring(points: &[Point]) -> LineString<f64> {
    let mut coords: Vec<Coord<f64>> = points.iter().map(|&[x, y]| Coord { x, y }).collect();
    if let Some(&first) = coords.first() {
        coords.push(first);
    }
    LineString::new(coords)
}

/// Removes consecutive duplicates and the closing vertex.
fn dedup_ring(mut points: Vec<Point>) -> Vec<Point> {
    points.dedup();
    while points.len() > 1 && points.first() == points.last() {
        points.pop();
    }
    points
}

fn signed_area(ring: &[Point]) -> f64 {
    let n = ring.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let a = ring[i];
            let b = ring[(i + 1) % n];
            a[0] * b[1] - b[0] * a[1]
        })
        .sum();
    twice / 2.0
}

fn cross(a: Point, b: Point, c: Point) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn point_in_ring(ring: &[Point], p: Point) -> bool {
    let n = ring.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (ring[i], ring[j]);
        if (a[1] > p[1]) != (b[1] > p[1]) && p[0] < (b[0] - a[0]) * (p[1] - a[1]) / (b[1] - a[1]) + a[0] {
            inside = !inside;
        }
        j = i;
    }
    inside
}

fn segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: Point, b: Point, c: Point, d: f64| {
        d == 0.0 && c[0] >= a[0].min(b[0]) && c[0] <= a[0].max(b[0]) && c[1] >= a[1].min(b[1]) && c[1] <= a[1].max(b[1])
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

/// Returns the first pair of non-adjacent edges that touch or cross.
fn first_self_intersection(ring: &[Point]) -> Option<(usize, usize)> {
    let n = ring.len();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            if segments_intersect(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n]) {
                return Some((i, j));
            }
        }
    }
    // Adjacent edges folding back onto each other.
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        let c = ring[(i + 2) % n];
        if n > 3 && cross(a, b, c) == 0.0 && (c[0] - b[0]) * (a[0] - b[0]) + (c[1] - b[1]) * (a[1] - b[1]) > 0.0 {
            return Some((i, (i + 1) % n));
        }
    }
    None
}

// GeoJSON encoding. Rings are closed on output and may be open or closed on
// input.

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
enum GeoJsonGeometry {
    Polygon { coordinates: Vec<Vec<Point>> },
    MultiPolygon { coordinates: Vec<Vec<Vec<Point>>> },
}

impl GeoJsonGeometry {
    fn kind(&self) -> &'static str {
        match self {
            GeoJsonGeometry::Polygon { .. } => "Polygon",
            GeoJsonGeometry::MultiPolygon { .. } => "MultiPolygon",
        }
    }
}

fn closed(points: &[Point]) -> Vec<Point> {
    let mut ring = points.to_vec();
    ring.push(points[0]);
    ring
}

fn polygon_from_rings(rings: Vec<Vec<Point>>) -> Result<SimplePolygon, GeometryError> {
    let mut rings = rings.into_iter();
    let exterior = rings.next().ok_or(GeometryError::TooFewVertices(0))?;
    if rings.next().is_some() {
        return Err(GeometryError::HasHoles);
    }
    SimplePolygon::new(exterior)
}

impl SimplePolygon {
    /// Parses a GeoJSON `Polygon` geometry object.
    pub fn from_geojson(value: serde_json::Value) -> Result<Self, String> {
        let geom: GeoJsonGeometry = serde_json::from_value(value).map_err(|e| e.to_string())?;
        match geom {
            GeoJsonGeometry::Polygon { coordinates } => polygon_from_rings(coordinates).map_err(|e| e.to_string()),
            other => Err(GeometryError::WrongGeometryType {
                expected: "Polygon",
                found: other.kind(),
            }
            .to_string()),
        }
    }
}

impl Serialize for SimplePolygon {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GeoJsonGeometry::Polygon {
            coordinates: vec![closed(&self.exterior)],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplePolygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match GeoJsonGeometry::deserialize(d)? {
            GeoJsonGeometry::Polygon { coordinates } => polygon_from_rings(coordinates).map_err(serde::de::Error::custom),
            other => Err(serde::de::Error::custom(GeometryError::WrongGeometryType {
                expected: "Polygon",
                found: other.kind(),
            })),
        }
    }
}

impl Serialize for PolygonSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GeoJsonGeometry::MultiPolygon {
            coordinates: self.polygons.iter().map(|p| vec![closed(&p.exterior)]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolygonSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let polygons = match GeoJsonGeometry::deserialize(d)? {
            GeoJsonGeometry::Polygon { coordinates } => vec![polygon_from_rings(coordinates)],
            GeoJsonGeometry::MultiPolygon { coordinates } => coordinates.into_iter().map(polygon_from_rings).collect(),
        };
        let polygons = polygons.into_iter().collect::<Result<Vec<_>, _>>().map_err(serde::de::Error::custom)?;
        Ok(PolygonSet { polygons })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> SimplePolygon {
        SimplePolygon::rect(0.0, 0.0, 1.0, 1.0)
    }

    #[test]
    fn construction_enforces_ccw() {
        let cw = SimplePolygon::new(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]).unwrap();
        // area() is the signed shoelace value, positive only for CCW rings.
        assert_eq!(cw.area(), 1.0);
        assert!(cw.exterior().contains(&[0.0, 1.0]));
    }

    #[test]
    fn construction_rejects_bad_rings() {
        assert_eq!(SimplePolygon::new(vec![[0.0, 0.0], [1.0, 0.0]]), Err(GeometryError::TooFewVertices(2)));
        let bowtie = vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]];
        assert!(matches!(SimplePolygon::new(bowtie), Err(GeometryError::SelfIntersecting(..))));
        let flat = vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]];
        assert!(SimplePolygon::new(flat).is_err());
        assert_eq!(SimplePolygon::new(vec![[0.0, f64::NAN], [1.0, 0.0], [1.0, 1.0]]), Err(GeometryError::NonFinite));
    }

    #[test]
    fn closed_ring_input_is_accepted() {
        let p = SimplePolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 0.0]]).unwrap();
        assert_eq!(p.exterior().len(), 3);
    }

    #[test]
    fn area_examples() {
        assert_eq!(unit().area(), 1.0);
        let tri = SimplePolygon::new(vec![[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]).unwrap();
        assert_eq!(tri.area(), 2.0);
        let set = PolygonSet::new(vec![unit(), SimplePolygon::rect(5.0, 5.0, 7.0, 6.0)]);
        assert_eq!(area(&set), 3.0);
    }

    #[test]
    fn clip_examples() {
        let half = clip(&unit(), &SimplePolygon::rect(0.5, 0.0, 1.5, 1.0));
        assert_eq!(half.polygons.len(), 1);
        assert!((area(&half) - 0.5).abs() < 1e-9);
        let b = half.bbox().unwrap();
        assert!((b.min[0] - 0.5).abs() < 1e-9 && (b.max[0] - 1.0).abs() < 1e-9);

        assert!((area(&clip(&unit(), &unit())) - 1.0).abs() < 1e-9);
        assert!(clip(&unit(), &SimplePolygon::rect(2.0, 2.0, 3.0, 3.0)).is_empty());
        // Shares only an edge.
        assert!(clip(&unit(), &SimplePolygon::rect(1.0, 0.0, 2.0, 1.0)).is_empty());
    }

    #[test]
    fn clip_can_return_several_pieces() {
        // A U shape clipped by a horizontal band gives two legs.
        let u = SimplePolygon::new(vec![
            [0.0, 0.0],
            [3.0, 0.0],
            [3.0, 3.0],
            [2.0, 3.0],
            [2.0, 1.0],
            [1.0, 1.0],
            [1.0, 3.0],
            [0.0, 3.0],
        ])
        .unwrap();
        let legs = clip(&u, &SimplePolygon::rect(-1.0, 2.0, 4.0, 2.5));
        assert_eq!(legs.polygons.len(), 2);
        assert!((area(&legs) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn clip_is_idempotent() {
        let subject = SimplePolygon::new(vec![[0.0, 0.0], [4.0, 1.0], [3.0, 5.0], [-1.0, 3.0]]).unwrap();
        let window = SimplePolygon::rect(0.5, 0.5, 3.5, 3.5);
        let once = clip(&subject, &window);
        let twice: f64 = once.polygons.iter().map(|p| area(&clip(p, &window))).sum();
        assert!((twice - area(&once)).abs() <= 1e-9 * area(&once));
    }

    #[test]
    fn overlay_two_offset_squares() {
        let a = PolygonSet::from(unit());
        let b = PolygonSet::from(SimplePolygon::rect(0.5, 0.0, 1.5, 1.0));
        let mut faces = overlay(&[a, b]);
        faces.sort_by(|x, y| x.owners.cmp(&y.owners));
        let owners: Vec<_> = faces.iter().map(|f| f.owners.clone()).collect();
        assert_eq!(owners, vec![vec![0], vec![0, 1], vec![1]]);
        for f in &faces {
            assert!((area(&f.region) - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn overlay_single_region() {
        let faces = overlay(&[PolygonSet::from(unit())]);
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].owners, vec![0]);
        assert!(overlay(&[]).is_empty());
    }

    #[test]
    fn overlay_nested_squares_decomposes_holes() {
        let regions: Vec<PolygonSet> = [3.0, 2.0, 1.0]
            .iter()
            .map(|&s| PolygonSet::from(SimplePolygon::rect(-s / 2.0, -s / 2.0, s / 2.0, s / 2.0)))
            .collect();
        let mut faces = overlay(&regions);
        faces.sort_by(|x, y| x.owners.cmp(&y.owners));
        let got: Vec<(Vec<usize>, f64)> = faces.iter().map(|f| (f.owners.clone(), area(&f.region))).collect();
        assert_eq!(got.len(), 3);
        let expected = [(vec![0], 5.0), (vec![0, 1], 3.0), (vec![0, 1, 2], 1.0)];
        for ((owners, a), (eo, ea)) in got.iter().zip(expected.iter()) {
            assert_eq!(owners, eo);
            assert!((a - ea).abs() < 1e-9, "{a} vs {ea}");
        }
        // Ring faces have holes and must come out as several simple pieces.
        assert!(faces[0].region.polygons.len() >= 2);
        let total: f64 = faces.iter().map(|f| area(&f.region)).sum();
        assert!((total - union_area(&regions)).abs() < 1e-9);
    }

    #[test]
    fn overlay_rotated_quads_partition() {
        let quad = |cx: f64, cy: f64, w: f64, h: f64, theta: f64| {
            let (s, c) = theta.sin_cos();
            let pts = [[-w, -h], [w, -h], [w, h], [-w, h]]
                .iter()
                .map(|&[x, y]| [cx + c * x - s * y, cy + s * x + c * y])
                .collect();
            PolygonSet::from(SimplePolygon::new(pts).unwrap())
        };
        let regions = vec![
            quad(0.0, 0.0, 3.0, 2.0, 0.1),
            quad(2.0, 1.0, 2.0, 2.0, -0.2),
            quad(-1.0, 1.5, 2.5, 1.0, 0.25),
            quad(1.0, -1.0, 1.0, 3.0, 0.0),
        ];
        let faces = overlay(&regions);
        let total: f64 = faces.iter().map(|f| area(&f.region)).sum();
        let union = union_area(&regions);
        assert!((total - union).abs() <= 1e-6 * union);
        for (i, a) in faces.iter().enumerate() {
            assert!(!a.owners.is_empty());
            for b in &faces[i + 1..] {
                assert!(intersection_area(&a.region, &b.region) < SLIVER_AREA);
            }
            // Every owner contains the face, no other region overlaps it.
            for (r, region) in regions.iter().enumerate() {
                let shared = intersection_area(&a.region, region);
                if a.owners.contains(&r) {
                    assert!((shared - area(&a.region)).abs() < 1e-6);
                } else {
                    assert!(shared < SLIVER_AREA);
                }
            }
        }
    }

    #[test]
    fn geojson_round_trip() {
        let p = SimplePolygon::new(vec![[0.0, 0.0], [2.0, 0.0], [1.0, 1.5]]).unwrap();
        let json = serde_json::to_value(&p).unwrap();
        assert_eq!(json["type"], "Polygon");
        assert_eq!(json["coordinates"][0].as_array().unwrap().len(), 4);
        let back: SimplePolygon = serde_json::from_value(json).unwrap();
        assert_eq!(back, p);

        let set = PolygonSet::new(vec![p.clone(), unit()]);
        let back: PolygonSet = serde_json::from_str(&serde_json::to_string(&set).unwrap()).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn geojson_rejects_holes_and_unknown_fields() {
        let holed = serde_json::json!({
            "type": "Polygon",
            "coordinates": [[[0,0],[4,0],[4,4],[0,4],[0,0]], [[1,1],[2,1],[2,2],[1,1]]]
        });
        assert!(serde_json::from_value::<SimplePolygon>(holed).is_err());
        let extra = serde_json::json!({"type": "Polygon", "coordinates": [[[0,0],[1,0],[1,1],[0,0]]], "bbox": [0,0,1,1]});
        assert!(serde_json::from_value::<SimplePolygon>(extra).is_err());
    }
}
