use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::instance::DiscreteInstance;
use crate::objectives::ObjectiveVector;

/// Component-wise worst value any cover can reach: all images taken for
/// cost and incidence, the whole universe cloudy, and the worst containing
/// image chosen for every part.
pub fn worst_case(inst: &DiscreteInstance) -> ObjectiveVector {
    let mut worst_res = vec![0u64; inst.n()];
    for img in &inst.images {
        for &k in &img.parts {
            worst_res[k] = worst_res[k].max(img.resolution);
        }
    }
    ObjectiveVector([
        inst.images.iter().map(|i| i.cost).sum(),
        inst.total_area(),
        worst_res.iter().sum(),
        inst.images.iter().map(|i| u64::from(i.angle)).max().unwrap_or(0),
    ])
}

/// Worst case plus one in every component, so every cover is strictly better.
pub fn reference_point(inst: &DiscreteInstance) -> ObjectiveVector {
    ObjectiveVector(worst_case(inst).0.map(|v| v + 1))
}

/// Hypervolume of a 4-objective front against `reference`.
pub fn hypervolume(points: &[ObjectiveVector], reference: ObjectiveVector) -> Result<f64> {
    if let Some(p) = points.iter().find(|p| p.0.iter().zip(&reference.0).any(|(a, r)| a >= r)) {
        return Err(Error::contract(format!("point {p} does not strictly dominate reference {reference}")));
    }
    let pts: Vec<Vec<f64>> = points.iter().map(|p| p.0.iter().map(|&v| v as f64).collect()).collect();
    let r: Vec<f64> = reference.0.iter().map(|&v| v as f64).collect();
    Ok(hypervolume_points(&pts, &r))
}

/// Measure of the union of boxes `[p, reference]` in any dimension, by
/// slicing along the last coordinate and recursing on the rest. Points not
/// strictly below the reference contribute nothing.
pub fn hypervolume_points(points: &[Vec<f64>], reference: &[f64]) -> f64 {
    let mut pts: Vec<&[f64]> = points
        .iter()
        .map(Vec::as_slice)
        .filter(|p| p.len() == reference.len() && p.iter().zip(reference).all(|(a, r)| a < r))
        .collect();
    slice(&mut pts, reference)
}

fn slice(points: &mut Vec<&[f64]>, reference: &[f64]) -> f64 {
    let d = reference.len();
    if points.is_empty() || d == 0 {
        return if points.is_empty() { 0.0 } else { 1.0 };
    }
    if d == 1 {
        let best = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        return reference[0] - best;
    }
    points.sort_by(|a, b| a[d - 1].total_cmp(&b[d - 1]));
    let mut total = 0.0;
    let mut active: Vec<&[f64]> = Vec::with_capacity(points.len());
    for (idx, p) in points.iter().enumerate() {
        active.push(&p[..d - 1]);
        let top = points.get(idx + 1).map_or(reference[d - 1], |q| q[d - 1]);
        let depth = top - p[d - 1];
        if depth > 0.0 {
            let mut layer = non_dominated(&active);
            total += depth * slice(&mut layer, &reference[..d - 1]);
        }
    }
    total
}

/// Drops points weakly dominated by another (keeping one of equal copies).
fn non_dominated<'p>(points: &[&'p [f64]]) -> Vec<&'p [f64]> {
    let weakly = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut out: Vec<&[f64]> = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let covered = points
            .iter()
            .enumerate()
            .any(|(j, q)| j != i && weakly(q, p) && (q != p || j < i));
        if !covered {
            out.push(p);
        }
    }
    out
}

/// Each strategy's hypervolume divided by the best one; all zeros when no
/// strategy has a positive hypervolume.
pub fn score(hypervolumes: &BTreeMap<String, f64>) -> BTreeMap<String, f64> {
    let best = hypervolumes.values().copied().fold(0.0, f64::max);
    hypervolumes
        .iter()
        .map(|(k, &v)| (k.clone(), if best > 0.0 { v / best } else { 0.0 }))
        .collect()
}
