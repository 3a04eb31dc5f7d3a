//! Seeded synthetic instances: rotated rectangular footprints scattered over
//! a rectangular AOI.

use std::ops::RangeInclusive;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{ImageRecord, Meta, RawProblem, MAX_INCIDENCE};
use crate::error::{Error, Result};
use crate::geometry::SimplePolygon;

const MAX_ROTATION_DEG: f64 = 15.0;

#[derive(Debug, Clone)]
pub struct SyntheticConfig {
    /// AOI extent in metres.
    pub width: f64,
    pub height: f64,
    pub images: usize,
    pub seed: u64,
    pub cost: RangeInclusive<u64>,
    pub resolution: RangeInclusive<u64>,
    pub angle: RangeInclusive<u32>,
    pub cloud: RangeInclusive<u32>,
    /// Footprint side lengths as fractions of the AOI sides.
    pub scale: RangeInclusive<f64>,
    /// Make the first footprint a rectangle enclosing the whole AOI.
    pub first_covers_aoi: bool,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            width: 10_000.0,
            height: 10_000.0,
            images: 30,
            seed: 0,
            cost: 10_000..=200_000,
            resolution: 900..=22_500,
            angle: 0..=300,
            cloud: 0..=60,
            scale: 0.3..=0.7,
            first_covers_aoi: false,
        }
    }
}

impl SyntheticConfig {
    fn validate(&self) -> Result<()> {
        if self.images == 0 {
            return Err(Error::invariant("images must be at least 1"));
        }
        if !(self.width > 0.0 && self.height > 0.0) {
            return Err(Error::invariant("AOI width and height must be positive"));
        }
        if self.cost.is_empty() || self.resolution.is_empty() || self.angle.is_empty() || self.cloud.is_empty() {
            return Err(Error::invariant("attribute ranges must be non-empty"));
        }
        if *self.resolution.start() < 1 {
            return Err(Error::invariant("resolution range must start at 1 or above"));
        }
        if *self.angle.end() > MAX_INCIDENCE {
            return Err(Error::invariant("angle range exceeds 900 tenths of a degree"));
        }
        if !(*self.scale.start() > 0.0 && self.scale.start() <= self.scale.end()) {
            return Err(Error::invariant("footprint scale range must be positive and non-empty"));
        }
        if *self.cloud.end() > 100 {
            return Err(Error::invariant("cloud range exceeds 100%"));
        }
        Ok(())
    }
}

pub fn generate_synthetic(cfg: &SyntheticConfig) -> Result<RawProblem> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (w, h) = (cfg.width, cfg.height);
    let aoi = SimplePolygon::rect(0.0, 0.0, w, h);

    let images = (0..cfg.images)
        .map(|i| {
            let footprint = if i == 0 && cfg.first_covers_aoi {
                SimplePolygon::rect(-0.05 * w, -0.05 * h, 1.05 * w, 1.05 * h)
            } else {
                random_quad(&mut rng, w, h, &cfg.scale)
            };
            ImageRecord {
                id: format!("img-{:03}", i + 1),
                footprint,
                cost: rng.gen_range(cfg.cost.clone()),
                resolution: rng.gen_range(cfg.resolution.clone()),
                incidence_angle: rng.gen_range(cfg.angle.clone()),
                cloud_cover_pct: rng.gen_range(cfg.cloud.clone()),
            }
        })
        .collect();

    let mut meta = Meta::new();
    meta.insert("generator".into(), json!("synthetic"));
    meta.insert("seed".into(), json!(cfg.seed));
    meta.insert("width".into(), json!(w));
    meta.insert("height".into(), json!(h));
    Ok(RawProblem { aoi, images, meta })
}

/// A rectangle centred inside the AOI, so it always overlaps it.
fn random_quad(rng: &mut ChaCha8Rng, w: f64, h: f64, scale: &RangeInclusive<f64>) -> SimplePolygon {
    let cx = rng.gen_range(0.0..w);
    let cy = rng.gen_range(0.0..h);
    let half_w = rng.gen_range(scale.clone()) * w / 2.0;
    let half_h = rng.gen_range(scale.clone()) * h / 2.0;
    let theta = rng.gen_range(-MAX_ROTATION_DEG..=MAX_ROTATION_DEG).to_radians();
    let (s, c) = theta.sin_cos();
    let corners = [[-half_w, -half_h], [half_w, -half_h], [half_w, half_h], [-half_w, half_h]]
        .iter()
        .map(|&[x, y]| [round_cm(cx + c * x - s * y), round_cm(cy + s * x + c * y)])
        .collect();
    SimplePolygon::new(corners).expect("rotated rectangle is simple")
}

fn round_cm(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry;

    #[test]
    fn deterministic_for_seed() {
        let cfg = SyntheticConfig { width: 1000.0, height: 1000.0, images: 30, seed: 42, ..Default::default() };
        let a = generate_synthetic(&cfg).unwrap().to_json();
        let b = generate_synthetic(&cfg).unwrap().to_json();
        assert_eq!(a, b);
        let other = generate_synthetic(&SyntheticConfig { seed: 43, ..cfg }).unwrap().to_json();
        assert_ne!(a, other);
    }

    #[test]
    fn footprints_overlap_aoi_and_attributes_in_range() {
        let cfg = SyntheticConfig { images: 50, seed: 7, ..Default::default() };
        let raw = generate_synthetic(&cfg).unwrap();
        raw.validate().unwrap();
        for img in &raw.images {
            assert!(geometry::clip(&img.footprint, &raw.aoi).area() > 0.0);
            assert!(cfg.cost.contains(&img.cost));
            assert!(cfg.resolution.contains(&img.resolution));
            assert!(cfg.angle.contains(&img.incidence_angle));
            assert!(cfg.cloud.contains(&img.cloud_cover_pct));
            assert_eq!(img.footprint.exterior().len(), 4);
        }
        assert_eq!(raw.meta["seed"], 7);
    }

    #[test]
    fn rejects_empty_ranges() {
        #[allow(clippy::reversed_empty_ranges)]
        let cfg = SyntheticConfig { cost: 5..=4, ..Default::default() };
        assert!(generate_synthetic(&cfg).is_err());
        assert!(generate_synthetic(&SyntheticConfig { images: 0, ..Default::default() }).is_err());
    }
}
