//! Planar arrangement of region boundaries.
//!
//! All boundary segments are split once at every crossing and every nearby
//! vertex, so neighbouring faces share identical vertices and edges. Faces
//! are traced on a half-edge structure and labelled by winding numbers
//! propagated outwards-in from the unbounded face.

use std::collections::HashMap;

use super::{signed_area, Face, Point, PolygonSet, SimplePolygon};

/// Vertices closer than this are merged.
const MERGE_TOL: f64 = 1e-6;
/// A vertex this close to a segment splits it.
const ON_TOL: f64 = 1e-6;

struct Segment {
    a: usize,
    b: usize,
    region: usize,
}

#[derive(Default)]
struct Vertices {
    points: Vec<Point>,
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl Vertices {
    fn cell(p: Point) -> (i64, i64) {
        ((p[0] / MERGE_TOL).floor() as i64, (p[1] / MERGE_TOL).floor() as i64)
    }

    /// Returns an existing vertex within `MERGE_TOL` of `p`, or adds `p`.
    fn insert(&mut self, p: Point) -> usize {
        let (cx, cy) = Self::cell(p);
        let mut best: Option<(f64, usize)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                for &id in self.cells.get(&(cx + dx, cy + dy)).into_iter().flatten() {
                    let q = self.points[id];
                    let d = (q[0] - p[0]).hypot(q[1] - p[1]);
                    if d <= MERGE_TOL && best.is_none_or(|(bd, bi)| d < bd || (d == bd && id < bi)) {
                        best = Some((d, id));
                    }
                }
            }
        }
        if let Some((_, id)) = best {
            return id;
        }
        let id = self.points.len();
        self.points.push(p);
        self.cells.entry((cx, cy)).or_default().push(id);
        id
    }
}

struct Edge {
    a: usize,
    b: usize,
    /// Per region: boundary segments along `a → b` minus those along `b → a`.
    net: Vec<(usize, i32)>,
}

impl Edge {
    fn is_connector(&self) -> bool {
        self.net.is_empty()
    }
}

pub(super) fn overlay(regions: &[PolygonSet]) -> Vec<Face> {
    let mut verts = Vertices::default();
    let mut segments = Vec::new();
    for (r, region) in regions.iter().enumerate() {
        for poly in &region.polygons {
            let ring = poly.exterior();
            for i in 0..ring.len() {
                let a = verts.insert(ring[i]);
                let b = verts.insert(ring[(i + 1) % ring.len()]);
                if a != b {
                    segments.push(Segment { a, b, region: r });
                }
            }
        }
    }
    if segments.is_empty() {
        return Vec::new();
    }

    let splits = split_points(&mut verts, &segments);
    let mut edges = build_edges(&verts.points, &segments, splits);
    connect_components(&mut verts, &mut edges);
    trace_faces(&verts.points, &edges, regions.len())
}

/// Collects, per segment, every vertex that lies on it (endpoints included).
fn split_points(verts: &mut Vertices, segments: &[Segment]) -> Vec<Vec<usize>> {
    let mut on: Vec<Vec<usize>> = segments.iter().map(|s| vec![s.a, s.b]).collect();

    // Crossings, found with a sweep over x-extents.
    let mut order: Vec<usize> = (0..segments.len()).collect();
    let xmin = |s: &Segment, v: &Vertices| v.points[s.a][0].min(v.points[s.b][0]);
    let xmax = |s: &Segment, v: &Vertices| v.points[s.a][0].max(v.points[s.b][0]);
    order.sort_by(|&i, &j| xmin(&segments[i], verts).total_cmp(&xmin(&segments[j], verts)).then(i.cmp(&j)));
    for (k, &i) in order.iter().enumerate() {
        let si = &segments[i];
        let limit = xmax(si, verts) + ON_TOL;
        for &j in &order[k + 1..] {
            let sj = &segments[j];
            if xmin(sj, verts) > limit {
                break;
            }
            let (p1, p2) = (verts.points[si.a], verts.points[si.b]);
            let (q1, q2) = (verts.points[sj.a], verts.points[sj.b]);
            if p1[1].min(p2[1]) > q1[1].max(q2[1]) + ON_TOL || q1[1].min(q2[1]) > p1[1].max(p2[1]) + ON_TOL {
                continue;
            }
            if let Some(x) = crossing(p1, p2, q1, q2) {
                let id = verts.insert(x);
                on[i].push(id);
                on[j].push(id);
            }
        }
    }

    // Vertices touching a segment away from its endpoints.
    let mut by_x: Vec<usize> = (0..verts.points.len()).collect();
    by_x.sort_by(|&i, &j| verts.points[i][0].total_cmp(&verts.points[j][0]).then(i.cmp(&j)));
    let xs: Vec<f64> = by_x.iter().map(|&i| verts.points[i][0]).collect();
    for (s, seg) in segments.iter().enumerate() {
        let (a, b) = (verts.points[seg.a], verts.points[seg.b]);
        let lo = xs.partition_point(|&x| x < a[0].min(b[0]) - ON_TOL);
        let hi = xs.partition_point(|&x| x <= a[0].max(b[0]) + ON_TOL);
        for &v in &by_x[lo..hi] {
            if v != seg.a && v != seg.b && near_segment(verts.points[v], a, b) {
                on[s].push(v);
            }
        }
    }
    on
}

/// Intersection point of two non-parallel segments, if they meet.
fn crossing(p1: Point, p2: Point, q1: Point, q2: Point) -> Option<Point> {
    let d1 = [p2[0] - p1[0], p2[1] - p1[1]];
    let d2 = [q2[0] - q1[0], q2[1] - q1[1]];
    let denom = d1[0] * d2[1] - d1[1] * d2[0];
    let scale = d1[0].hypot(d1[1]) * d2[0].hypot(d2[1]);
    if denom.abs() <= 1e-12 * scale {
        return None;
    }
    let w = [q1[0] - p1[0], q1[1] - p1[1]];
    let t = (w[0] * d2[1] - w[1] * d2[0]) / denom;
    let u = (w[0] * d1[1] - w[1] * d1[0]) / denom;
    let (tp, tq) = (ON_TOL / d1[0].hypot(d1[1]), ON_TOL / d2[0].hypot(d2[1]));
    if t < -tp || t > 1.0 + tp || u < -tq || u > 1.0 + tq {
        return None;
    }
    Some([p1[0] + t * d1[0], p1[1] + t * d1[1]])
}

fn near_segment(p: Point, a: Point, b: Point) -> bool {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = ((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2;
    if t <= 0.0 || t >= 1.0 {
        return false;
    }
    let proj = [a[0] + t * d[0], a[1] + t * d[1]];
    (p[0] - proj[0]).hypot(p[1] - proj[1]) <= ON_TOL
}

/// Splits segments at their vertices and merges coincident pieces. Edges
/// whose net count is zero for every region separate nothing and are dropped.
fn build_edges(points: &[Point], segments: &[Segment], splits: Vec<Vec<usize>>) -> Vec<Edge> {
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    for (seg, mut ids) in segments.iter().zip(splits) {
        let a = points[seg.a];
        let d = [points[seg.b][0] - a[0], points[seg.b][1] - a[1]];
        let param = |v: usize| (points[v][0] - a[0]) * d[0] + (points[v][1] - a[1]) * d[1];
        ids.sort_by(|&u, &v| param(u).total_cmp(&param(v)).then(u.cmp(&v)));
        ids.dedup();
        for w in ids.windows(2) {
            let (u, v) = (w[0], w[1]);
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            let sign = if u < v { 1 } else { -1 };
            let e = *index.entry(key).or_insert_with(|| {
                edges.push(Edge {
                    a: key.0,
                    b: key.1,
                    net: Vec::new(),
                });
                edges.len() - 1
            });
            let net = &mut edges[e].net;
            match net.iter_mut().find(|(r, _)| *r == seg.region) {
                Some((_, n)) => *n += sign,
                None => net.push((seg.region, sign)),
            }
        }
    }
    for e in &mut edges {
        e.net.retain(|&(_, n)| n != 0);
    }
    edges.retain(|e| !e.net.is_empty());
    edges
}

/// Links every connected component to whatever lies directly above its top
/// vertex and below its bottom vertex. Enclosed components then split their
/// surrounding face instead of forming a hole in it.
fn connect_components(verts: &mut Vertices, edges: &mut Vec<Edge>) {
    let n = verts.points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges.iter() {
        let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut extremes: Vec<(usize, usize, usize)> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut used = vec![false; n];
    for e in edges.iter() {
        used[e.a] = true;
        used[e.b] = true;
    }
    for v in (0..n).filter(|&v| used[v]) {
        let root = find(&mut parent, v);
        let k = *slot.entry(root).or_insert_with(|| {
            extremes.push((root, v, v));
            extremes.len() - 1
        });
        let p = verts.points[v];
        let (_, top, bottom) = &mut extremes[k];
        let t = verts.points[*top];
        if p[1] > t[1] || (p[1] == t[1] && p[0] < t[0]) {
            *top = v;
        }
        let b = verts.points[*bottom];
        if p[1] < b[1] || (p[1] == b[1] && p[0] > b[0]) {
            *bottom = v;
        }
    }
    if extremes.len() < 2 {
        return;
    }
    for &(_, top, bottom) in &extremes {
        for (v, up) in [(top, true), (bottom, false)] {
            if let Some(hit) = cast_ray(verts, edges, v, up) {
                if hit != v {
                    edges.push(Edge {
                        a: v,
                        b: hit,
                        net: Vec::new(),
                    });
                }
            }
        }
    }
}

/// Shoots a vertical ray from vertex `v` and returns the first vertex it
/// reaches, splitting the edge it lands on when needed.
fn cast_ray(verts: &mut Vertices, edges: &mut Vec<Edge>, v: usize, up: bool) -> Option<usize> {
    let p = verts.points[v];
    let ahead = |y: f64| if up { y - p[1] } else { p[1] - y };
    let mut best: Option<(f64, usize, Point)> = None;
    for (i, e) in edges.iter().enumerate() {
        if e.a == v || e.b == v {
            continue;
        }
        let (a, b) = (verts.points[e.a], verts.points[e.b]);
        if p[0] < a[0].min(b[0]) - ON_TOL || p[0] > a[0].max(b[0]) + ON_TOL {
            continue;
        }
        let y = if (b[0] - a[0]).abs() <= ON_TOL {
            if ahead(a[1]) < ahead(b[1]) {
                a[1]
            } else {
                b[1]
            }
        } else {
            let t = ((p[0] - a[0]) / (b[0] - a[0])).clamp(0.0, 1.0);
            a[1] + t * (b[1] - a[1])
        };
        let d = ahead(y);
        if d > MERGE_TOL && best.is_none_or(|(bd, _, _)| d < bd) {
            best = Some((d, i, [p[0], y]));
        }
    }
    let (_, i, hit) = best?;
    let (a, b) = (edges[i].a, edges[i].b);
    let close = |u: usize| {
        let q = verts.points[u];
        (q[0] - hit[0]).hypot(q[1] - hit[1]) <= ON_TOL
    };
    if close(a) {
        return Some(a);
    }
    if close(b) {
        return Some(b);
    }
    let w = verts.insert(hit);
    if w == a || w == b {
        return Some(w);
    }
    let tail = Edge {
        a: w,
        b,
        net: edges[i].net.clone(),
    };
    edges[i].b = w;
    edges.push(tail);
    Some(w)
}

/// Traces face cycles, propagates winding numbers and groups faces that are
/// separated only by connector edges.
fn trace_faces(points: &[Point], edges: &[Edge], n_regions: usize) -> Vec<Face> {
    let n_half = edges.len() * 2;
    let origin = |h: usize| if h.is_multiple_of(2) { edges[h / 2].a } else { edges[h / 2].b };
    let angle = |h: usize| {
        let (o, d) = (points[origin(h)], points[origin(h ^ 1)]);
        (d[1] - o[1]).atan2(d[0] - o[0])
    };

    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for h in 0..n_half {
        outgoing[origin(h)].push(h);
    }
    let mut position = vec![0usize; n_half];
    for list in &mut outgoing {
        list.sort_by(|&x, &y| angle(x).total_cmp(&angle(y)).then(x.cmp(&y)));
        for (k, &h) in list.iter().enumerate() {
            position[h] = k;
        }
    }
    let next = |h: usize| {
        let twin = h ^ 1;
        let list = &outgoing[origin(twin)];
        list[(position[twin] + list.len() - 1) % list.len()]
    };

    let mut cycle_of = vec![usize::MAX; n_half];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..n_half {
        if cycle_of[start] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut hs = Vec::new();
        let mut h = start;
        while cycle_of[h] == usize::MAX {
            cycle_of[h] = id;
            hs.push(h);
            h = next(h);
        }
        cycles.push(hs);
    }
    let rings: Vec<Vec<Point>> = cycles.iter().map(|hs| hs.iter().map(|&h| points[origin(h)]).collect()).collect();
    let bounded: Vec<bool> = rings.iter().map(|r| signed_area(r) > 0.0).collect();

    // Winding numbers: zero on the unbounded face, changing by the net
    // boundary count when crossing an edge.
    let mut winding: Vec<Option<Vec<i32>>> = vec![None; cycles.len()];
    let mut queue = std::collections::VecDeque::new();
    for c in 0..cycles.len() {
        if !bounded[c] {
            winding[c] = Some(vec![0; n_regions]);
            queue.push_back(c);
        }
    }
    while let Some(c) = queue.pop_front() {
        let wc = winding[c].clone().expect("queued faces have a winding");
        for &h in &cycles[c] {
            let d = cycle_of[h ^ 1];
            if winding[d].is_some() {
                continue;
            }
            let mut wd = wc.clone();
            let sign = if h.is_multiple_of(2) { 1 } else { -1 };
            for &(r, n) in &edges[h / 2].net {
                wd[r] -= sign * n;
            }
            winding[d] = Some(wd);
            queue.push_back(d);
        }
    }

    // Faces split only by connectors form one part.
    let mut group: Vec<usize> = (0..cycles.len()).collect();
    fn find(group: &mut [usize], mut x: usize) -> usize {
        while group[x] != x {
            group[x] = group[group[x]];
            x = group[x];
        }
        x
    }
    for (e, edge) in edges.iter().enumerate() {
        let (c, d) = (cycle_of[2 * e], cycle_of[2 * e + 1]);
        if edge.is_connector() && bounded[c] && bounded[d] {
            let (rc, rd) = (find(&mut group, c), find(&mut group, d));
            if rc != rd {
                group[rc.max(rd)] = rc.min(rd);
            }
        }
    }

    let mut faces: Vec<Face> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (c, ring) in rings.into_iter().enumerate() {
        if !bounded[c] {
            continue;
        }
        let owners: Vec<usize> = match &winding[c] {
            Some(w) => (0..n_regions).filter(|&r| w[r] > 0).collect(),
            None => Vec::new(),
        };
        if owners.is_empty() {
            continue;
        }
        let Some(poly) = SimplePolygon::from_kernel_ring(ring) else { continue };
        let root = find(&mut group, c);
        match slot.get(&root) {
            Some(&k) => faces[k].region.polygons.push(poly),
            None => {
                slot.insert(root, faces.len());
                faces.push(Face {
                    region: PolygonSet::new(vec![poly]),
                    owners,
                });
            }
        }
    }
    faces
}
