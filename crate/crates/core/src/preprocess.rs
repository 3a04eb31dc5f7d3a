//! From footprints over an AOI to a discrete set-cover instance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::geometry::{self, PolygonSet};
use crate::instance::{DiscreteImage, DiscreteInstance, RawProblem};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscretizeReport {
    pub parts: usize,
    pub aoi_area: f64,
    /// Area of the union of clipped footprints.
    pub covered_area: f64,
    /// AOI area no image reaches; excluded from the universe.
    pub uncoverable_area: f64,
    pub uncoverable_polygons: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CloudReport {
    pub seed: u64,
    pub images: Vec<ImageCloud>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImageCloud {
    pub id: String,
    pub target_pct: u32,
    pub achieved_pct: f64,
    pub cloudy_parts: usize,
}

/// Clips every footprint to the AOI and overlays the pieces. Parts are the
/// overlay faces; image i owns the faces it covers. Cloud sets are empty.
pub fn discretize(raw: &RawProblem) -> Result<(DiscreteInstance, DiscretizeReport)> {
    let regions: Vec<PolygonSet> = raw
        .images
        .iter()
        .map(|img| geometry::clip(&img.footprint, &raw.aoi))
        .collect();
    if regions.iter().all(PolygonSet::is_empty) {
        return Err(Error::NoCoverage);
    }

    let faces = geometry::overlay(&regions);
    let mut parts_of = vec![Vec::new(); raw.images.len()];
    let mut areas = Vec::with_capacity(faces.len());
    let mut provenance = Vec::with_capacity(faces.len());
    for (k, face) in faces.into_iter().enumerate() {
        for &i in &face.owners {
            parts_of[i].push(k);
        }
        areas.push((geometry::area(&face.region).round() as u64).max(1));
        provenance.push(face.region);
    }

    let images = raw
        .images
        .iter()
        .zip(parts_of)
        .map(|(img, parts)| DiscreteImage {
            id: img.id.clone(),
            cost: img.cost,
            resolution: img.resolution,
            angle: img.incidence_angle,
            parts,
            cloudy: Vec::new(),
        })
        .collect();

    let missing = geometry::uncovered(&raw.aoi, &regions);
    let aoi_area = raw.aoi.area();
    let report = DiscretizeReport {
        parts: areas.len(),
        aoi_area,
        covered_area: geometry::union_area(&regions),
        uncoverable_area: missing.area().max(0.0),
        uncoverable_polygons: missing.polygons.len(),
    };

    let mut meta = raw.meta.clone();
    meta.insert("parts".into(), json!(report.parts));
    let inst = DiscreteInstance {
        areas,
        images,
        provenance: Some(provenance),
        meta,
    };
    Ok((inst, report))
}

/// Flags parts of each image as cloudy, one uniformly drawn part at a time,
/// until the flagged area first reaches the image's cloud percentage.
///
/// Images are processed in index order from a single seeded stream, so the
/// result is a pure function of `(inst, raw, seed)`.
pub fn assign_clouds(inst: &DiscreteInstance, raw: &RawProblem, seed: u64) -> Result<(DiscreteInstance, CloudReport)> {
    if raw.images.len() != inst.m() {
        return Err(Error::contract(format!(
            "raw problem has {} images, instance has {}",
            raw.images.len(),
            inst.m()
        )));
    }
    let pcts: Vec<u32> = raw.images.iter().map(|img| img.cloud_cover_pct).collect();
    assign_clouds_pct(inst, &pcts, seed)
}

/// As [`assign_clouds`], with per-image percentages given directly.
pub fn assign_clouds_pct(inst: &DiscreteInstance, pcts: &[u32], seed: u64) -> Result<(DiscreteInstance, CloudReport)> {
    if pcts.len() != inst.m() {
        return Err(Error::contract("one cloud percentage per image is required"));
    }
    if let Some(p) = pcts.iter().find(|&&p| p > 100) {
        return Err(Error::invariant(format!("cloud_cover_pct out of range: {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = inst.clone();
    let mut report = CloudReport { seed, images: Vec::with_capacity(inst.m()) };

    for (img, &pct) in out.images.iter_mut().zip(pcts) {
        let total: u64 = img.parts.iter().map(|&k| inst.areas[k]).sum();
        let mut pool = img.parts.clone();
        let mut cloudy = Vec::new();
        let mut cloudy_area = 0u64;
        // Integer form of cloudy_area / total >= pct / 100.
        while 100 * cloudy_area < u64::from(pct) * total {
            let k = pool.remove(rng.gen_range(0..pool.len()));
            cloudy_area += inst.areas[k];
            cloudy.push(k);
        }
        cloudy.sort_unstable();
        report.images.push(ImageCloud {
            id: img.id.clone(),
            target_pct: pct,
            achieved_pct: if total == 0 { 0.0 } else { 100.0 * cloudy_area as f64 / total as f64 },
            cloudy_parts: cloudy.len(),
        });
        img.cloudy = cloudy;
    }
    out.meta.insert("cloud_seed".into(), json!(seed));
    Ok((out, report))
}
