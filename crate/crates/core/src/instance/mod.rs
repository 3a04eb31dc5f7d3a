//! Problem data model: raw images over an area of interest, and the
//! discrete set-cover instance the solvers work on.

mod catalog;
mod synthetic;

pub use catalog::{ingest_catalog, ingest_catalog_str, IngestOptions, IngestReport, SkippedItem};
pub use synthetic::{generate_synthetic, SyntheticConfig};

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};
use crate::geometry::{self, PolygonSet, SimplePolygon, SLIVER_AREA};

/// Free-form run metadata (seeds, generator settings) echoed into files.
pub type Meta = BTreeMap<String, serde_json::Value>;

pub const MAX_INCIDENCE: u32 = 900;

/// One purchasable image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageRecord {
    pub id: String,
    pub footprint: SimplePolygon,
    /// Price in cents.
    pub cost: u64,
    /// Ground area of one pixel in cm².
    pub resolution: u64,
    /// Tenths of a degree.
    pub incidence_angle: u32,
    pub cloud_cover_pct: u32,
}

impl ImageRecord {
    pub fn validate(&self) -> Result<()> {
        if self.resolution < 1 {
            return Err(Error::invariant(format!("image {}: resolution must be at least 1", self.id)));
        }
        if self.incidence_angle > MAX_INCIDENCE {
            return Err(Error::invariant(format!("image {}: incidence_angle out of range", self.id)));
        }
        if self.cloud_cover_pct > 100 {
            return Err(Error::invariant(format!("image {}: cloud_cover_pct out of range", self.id)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawProblem {
    pub aoi: SimplePolygon,
    pub images: Vec<ImageRecord>,
    #[serde(default)]
    pub meta: Meta,
}

impl RawProblem {
    /// Checks every image record and that each footprint overlaps the AOI.
    pub fn validate(&self) -> Result<()> {
        for img in &self.images {
            img.validate()?;
            if geometry::clip(&img.footprint, &self.aoi).area() < SLIVER_AREA {
                return Err(Error::invariant(format!("image {}: footprint does not intersect the AOI", img.id)));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawProblem = error::from_json_str(text)?;
        raw.validate()?;
        Ok(raw)
    }

    pub fn to_json(&self) -> String {
        error::to_json_string(self)
    }
}

pub fn load_raw(path: &Path) -> Result<RawProblem> {
    RawProblem::from_json(&error::read_file(path)?)
}

pub fn save_raw(raw: &RawProblem, path: &Path) -> Result<()> {
    error::write_file(path, &raw.to_json())
}

/// One image of a discrete instance. Part ids are zero-based in memory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteImage {
    pub id: String,
    pub cost: u64,
    pub resolution: u64,
    pub angle: u32,
    /// P_i, ascending.
    pub parts: Vec<usize>,
    /// C_i ⊆ P_i, ascending.
    pub cloudy: Vec<usize>,
}

impl DiscreteImage {
    pub fn is_cloudy(&self, part: usize) -> bool {
        self.cloudy.binary_search(&part).is_ok()
    }
}

/// The weighted multi-objective set-cover instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DiscreteWire", into = "DiscreteWire")]
pub struct DiscreteInstance {
    /// A_k in m², one per part.
    pub areas: Vec<u64>,
    pub images: Vec<DiscreteImage>,
    /// Geometry of each part, when the instance came out of preprocessing.
    pub provenance: Option<Vec<PolygonSet>>,
    pub meta: Meta,
}

/// Per-part incidence lists derived from an instance.
#[derive(Debug, Clone)]
pub struct PartIndex {
    /// L_k: images containing part k.
    pub containing: Vec<Vec<usize>>,
    /// D_k: images with a cloud-free view of part k.
    pub clear: Vec<Vec<usize>>,
}

impl DiscreteInstance {
    pub fn n(&self) -> usize {
        self.areas.len()
    }

    pub fn m(&self) -> usize {
        self.images.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if let Some(k) = self.areas.iter().position(|&a| a == 0) {
            return Err(Error::invariant(format!("areas[{}]: part area must be positive", k + 1)));
        }
        let mut covered = vec![false; n];
        for (i, img) in self.images.iter().enumerate() {
            let label = format!("images[{}]", i + 1);
            if img.resolution < 1 {
                return Err(Error::invariant(format!("{label}: resolution must be at least 1")));
            }
            if img.angle > MAX_INCIDENCE {
                return Err(Error::invariant(format!("{label}: angle out of range")));
            }
            if !img.parts.windows(2).all(|w| w[0] < w[1]) || !img.cloudy.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::invariant(format!("{label}: part lists must not contain duplicates")));
            }
            if let Some(&k) = img.parts.iter().find(|&&k| k >= n) {
                return Err(Error::invariant(format!("{label}: part {} out of range 1..={n}", k + 1)));
            }
            if let Some(&k) = img.cloudy.iter().find(|&&k| img.parts.binary_search(&k).is_err()) {
                return Err(Error::invariant(format!("{label}: cloudy part {} is not in parts", k + 1)));
            }
            for &k in &img.parts {
                covered[k] = true;
            }
        }
        if let Some(k) = covered.iter().position(|&c| !c) {
            return Err(Error::invariant(format!("part {} is not contained in any image", k + 1)));
        }
        if let Some(prov) = &self.provenance {
            if prov.len() != n {
                return Err(Error::invariant(format!("provenance has {} entries for {n} parts", prov.len())));
            }
        }
        Ok(())
    }

    pub fn index(&self) -> PartIndex {
        let n = self.n();
        let mut containing = vec![Vec::new(); n];
        let mut clear = vec![Vec::new(); n];
        for (i, img) in self.images.iter().enumerate() {
            for &k in &img.parts {
                containing[k].push(i);
                if !img.is_cloudy(k) {
                    clear[k].push(i);
                }
            }
        }
        PartIndex { containing, clear }
    }

    pub fn total_area(&self) -> u64 {
        self.areas.iter().sum()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        error::from_json_str(text)
    }

    pub fn to_json(&self) -> String {
        error::to_json_string(self)
    }
}

pub fn load_discrete(path: &Path) -> Result<DiscreteInstance> {
    DiscreteInstance::from_json(&error::read_file(path)?)
}

pub fn save_discrete(inst: &DiscreteInstance, path: &Path) -> Result<()> {
    error::write_file(path, &inst.to_json())
}

// On-disk form: part ids are one-based.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiscreteWire {
    n: usize,
    areas: Vec<u64>,
    images: Vec<DiscreteImageWire>,
    #[serde(default)]
    provenance: Option<Vec<PolygonSet>>,
    #[serde(default)]
    meta: Meta,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiscreteImageWire {
    #[serde(default)]
    id: Option<String>,
    cost: u64,
    resolution: u64,
    angle: u32,
    parts: Vec<usize>,
    #[serde(default)]
    cloudy: Vec<usize>,
}

impl TryFrom<DiscreteWire> for DiscreteInstance {
    type Error = Error;

    fn try_from(w: DiscreteWire) -> Result<Self> {
        if w.areas.len() != w.n {
            return Err(Error::invariant(format!("n = {} but {} areas given", w.n, w.areas.len())));
        }
        let to_zero_based = |ids: Vec<usize>, label: &str| -> Result<Vec<usize>> {
            let mut out = ids
                .into_iter()
                .map(|k| {
                    k.checked_sub(1)
                        .ok_or_else(|| Error::invariant(format!("{label}: part ids start at 1")))
                })
                .collect::<Result<Vec<_>>>()?;
            out.sort_unstable();
            Ok(out)
        };
        let images = w
            .images
            .into_iter()
            .enumerate()
            .map(|(i, img)| {
                let label = format!("images[{}]", i + 1);
                Ok(DiscreteImage {
                    id: img.id.unwrap_or_else(|| (i + 1).to_string()),
                    cost: img.cost,
                    resolution: img.resolution,
                    angle: img.angle,
                    parts: to_zero_based(img.parts, &label)?,
                    cloudy: to_zero_based(img.cloudy, &label)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let inst = DiscreteInstance {
            areas: w.areas,
            images,
            provenance: w.provenance,
            meta: w.meta,
        };
        inst.validate()?;
        Ok(inst)
    }
}

impl From<DiscreteInstance> for DiscreteWire {
    fn from(inst: DiscreteInstance) -> Self {
        let one_based = |ids: &[usize]| ids.iter().map(|k| k + 1).collect();
        DiscreteWire {
            n: inst.areas.len(),
            images: inst
                .images
                .iter()
                .map(|img| DiscreteImageWire {
                    id: Some(img.id.clone()),
                    cost: img.cost,
                    resolution: img.resolution,
                    angle: img.angle,
                    parts: one_based(&img.parts),
                    cloudy: one_based(&img.cloudy),
                })
                .collect(),
            areas: inst.areas,
            provenance: inst.provenance,
            meta: inst.meta,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_IMAGES: &str = r#"{
        "aoi": {"type": "Polygon", "coordinates": [[[0,0],[1500,0],[1500,1000],[0,1000],[0,0]]]},
        "images": [
            {"id": "a", "footprint": {"type": "Polygon", "coordinates": [[[0,0],[1000,0],[1000,1000],[0,1000],[0,0]]]},
             "cost": 300, "resolution": 2500, "incidence_angle": 150, "cloud_cover_pct": 10},
            {"id": "b", "footprint": {"type": "Polygon", "coordinates": [[[500,0],[1500,0],[1500,1000],[500,1000],[500,0]]]},
             "cost": 500, "resolution": 900, "incidence_angle": 47, "cloud_cover_pct": 0}
        ]
    }"#;

    #[test]
    fn loads_two_image_fixture() {
        let raw = RawProblem::from_json(TWO_IMAGES).unwrap();
        assert_eq!(raw.images.len(), 2);
        assert_eq!(raw.images[1].incidence_angle, 47);
        let again = RawProblem::from_json(&raw.to_json()).unwrap();
        assert_eq!(again, raw);
    }

    #[test]
    fn cloud_cover_out_of_range_is_named() {
        let bad = TWO_IMAGES.replace("\"cloud_cover_pct\": 10", "\"cloud_cover_pct\": 140");
        let err = RawProblem::from_json(&bad).unwrap_err();
        assert!(err.to_string().contains("cloud_cover_pct out of range"), "{err}");
    }

    #[test]
    fn unknown_fields_are_rejected_with_position() {
        let bad = TWO_IMAGES.replace("\"cost\": 300,", "\"cost\": 300, \"price\": 3,");
        match RawProblem::from_json(&bad).unwrap_err() {
            Error::Parse { line, field, .. } => {
                assert_eq!(line, 5);
                assert!(field.starts_with("images[0]"), "{field}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn footprint_outside_aoi_is_rejected() {
        let bad = TWO_IMAGES.replace("[[[500,0],[1500,0],[1500,1000],[500,1000],[500,0]]]", "[[[5000,0],[6000,0],[6000,1000],[5000,1000],[5000,0]]]");
        let err = RawProblem::from_json(&bad).unwrap_err();
        assert!(err.to_string().contains("image b"), "{err}");
    }

    const FIG3: &str = r#"{
        "n": 7,
        "areas": [1, 1, 1, 1, 1, 1, 1],
        "images": [
            {"id": "I", "cost": 1, "resolution": 1, "angle": 0, "parts": [1, 3, 4, 5, 6, 7], "cloudy": [4, 5, 7]},
            {"id": "II", "cost": 1, "resolution": 1, "angle": 0, "parts": [2, 3, 5, 6, 7], "cloudy": [6, 7]}
        ]
    }"#;

    #[test]
    fn discrete_parts_are_one_based_on_disk() {
        let inst = DiscreteInstance::from_json(FIG3).unwrap();
        assert_eq!(inst.n(), 7);
        assert_eq!(inst.images[0].parts, vec![0, 2, 3, 4, 5, 6]);
        assert!(inst.images[1].is_cloudy(5));
        let text = inst.to_json();
        assert!(text.contains("\"provenance\": null"));
        assert_eq!(DiscreteInstance::from_json(&text).unwrap(), inst);
    }

    #[test]
    fn discrete_invariants() {
        let uncovered = FIG3.replace("[2, 3, 5, 6, 7], \"cloudy\"", "[3, 5, 6, 7], \"cloudy\"");
        assert!(DiscreteInstance::from_json(&uncovered).unwrap_err().to_string().contains("part 2"));
        let not_subset = FIG3.replace("\"cloudy\": [6, 7]", "\"cloudy\": [1]");
        assert!(DiscreteInstance::from_json(&not_subset).unwrap_err().to_string().contains("cloudy part 1"));
        let zero = FIG3.replace("\"areas\": [1, 1", "\"areas\": [0, 1");
        assert!(DiscreteInstance::from_json(&zero).is_err());
        let short = FIG3.replace("\"n\": 7", "\"n\": 8");
        assert!(DiscreteInstance::from_json(&short).is_err());
        let zero_id = FIG3.replace("[1, 3, 4", "[0, 3, 4");
        assert!(DiscreteInstance::from_json(&zero_id).is_err());
    }

    #[test]
    fn part_index_lists() {
        let inst = DiscreteInstance::from_json(FIG3).unwrap();
        let idx = inst.index();
        assert_eq!(idx.containing[2], vec![0, 1]);
        assert_eq!(idx.clear[4], vec![1]);
        assert_eq!(idx.clear[6], Vec::<usize>::new());
    }
}
