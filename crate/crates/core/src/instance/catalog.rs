//! Offline ingestion of STAC-style ItemCollection files.
//!
//! Each feature needs `geometry` (a planar Polygon), and the properties
//! `eo:cloud_cover` (percent), `gsd` (m/pixel) and `view:incidence_angle`
//! (degrees). The price is looked up at a configurable dotted path relative
//! to the feature and is given in currency units.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::{ImageRecord, MAX_INCIDENCE};
use crate::error::{self, Error, Result};
use crate::geometry::SimplePolygon;

#[derive(Debug, Clone)]
pub struct IngestOptions {
    pub price_path: String,
}

impl Default for IngestOptions {
    fn default() -> Self {
        Self {
            price_path: "properties.price".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedItem {
    pub id: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IngestReport {
    pub records: Vec<ImageRecord>,
    pub skipped: Vec<SkippedItem>,
}

pub fn ingest_catalog(path: &Path, options: &IngestOptions) -> Result<IngestReport> {
    ingest_catalog_str(&error::read_file(path)?, options)
}

pub fn ingest_catalog_str(text: &str, options: &IngestOptions) -> Result<IngestReport> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        field: ".".into(),
        message: e.to_string(),
    })?;
    let features = root
        .get("features")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Catalog("missing `features` array".into()))?;

    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (idx, item) in features.iter().enumerate() {
        let id = item
            .get("id")
            .and_then(Value::as_str)
            .map(str::to_owned)
            .unwrap_or_else(|| format!("item-{}", idx + 1));
        match parse_item(&id, item, options) {
            Ok(rec) => records.push(rec),
            Err(reason) => skipped.push(SkippedItem { id, reason }),
        }
    }
    if records.is_empty() {
        return Err(Error::Catalog(format!("no usable items ({} skipped)", skipped.len())));
    }
    Ok(IngestReport { records, skipped })
}

fn parse_item(id: &str, item: &Value, options: &IngestOptions) -> Result<ImageRecord, String> {
    let geometry = item.get("geometry").cloned().ok_or("missing geometry")?;
    let footprint = SimplePolygon::from_geojson(geometry).map_err(|e| format!("geometry: {e}"))?;
    let props = item.get("properties").ok_or("missing properties")?;

    let number = |key: &str| -> Result<f64, String> {
        props
            .get(key)
            .and_then(Value::as_f64)
            .ok_or_else(|| format!("missing {key}"))
    };
    let cloud = number("eo:cloud_cover")?;
    let gsd = number("gsd")?;
    let angle = number("view:incidence_angle")?;
    let price = lookup(item, &options.price_path)
        .and_then(Value::as_f64)
        .ok_or_else(|| format!("missing price at {}", options.price_path))?;

    if !(0.0..=100.0).contains(&cloud) {
        return Err("eo:cloud_cover out of range".into());
    }
    if !gsd.is_finite() || gsd <= 0.0 {
        return Err("gsd must be positive".into());
    }
    let angle_tenths = (angle * 10.0).round();
    if !(0.0..=f64::from(MAX_INCIDENCE)).contains(&angle_tenths) {
        return Err("view:incidence_angle out of range".into());
    }
    if !price.is_finite() || price < 0.0 {
        return Err("price must be non-negative".into());
    }

    Ok(ImageRecord {
        id: id.to_owned(),
        footprint,
        cost: (price * 100.0).round() as u64,
        resolution: ((gsd * 100.0).powi(2).round() as u64).max(1),
        incidence_angle: angle_tenths as u32,
        cloud_cover_pct: cloud.round() as u32,
    })
}

fn lookup<'a>(root: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(root, |v, key| v.get(key))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn item(id: &str, props: Value) -> Value {
        serde_json::json!({
            "type": "Feature",
            "id": id,
            "geometry": {"type": "Polygon", "coordinates": [[[0,0],[100,0],[100,100],[0,100],[0,0]]]},
            "properties": props,
        })
    }

    fn collection(items: Vec<Value>) -> String {
        serde_json::json!({"type": "FeatureCollection", "features": items}).to_string()
    }

    #[test]
    fn converts_units() {
        let text = collection(vec![item(
            "a",
            serde_json::json!({"eo:cloud_cover": 12.4, "gsd": 0.5, "view:incidence_angle": 14.96, "price": 123.45, "datetime": "2022-01-01"}),
        )]);
        let report = ingest_catalog_str(&text, &IngestOptions::default()).unwrap();
        let rec = &report.records[0];
        assert_eq!(rec.resolution, 2500);
        assert_eq!(rec.incidence_angle, 150);
        assert_eq!(rec.cloud_cover_pct, 12);
        assert_eq!(rec.cost, 12345);
    }

    #[test]
    fn skips_incomplete_items() {
        let good = serde_json::json!({"eo:cloud_cover": 0, "gsd": 1.5, "view:incidence_angle": 3, "price": 10});
        let text = collection(vec![
            item("a", good.clone()),
            item("b", serde_json::json!({"gsd": 0.5, "view:incidence_angle": 3, "price": 10})),
            item("c", good),
        ]);
        let report = ingest_catalog_str(&text, &IngestOptions::default()).unwrap();
        assert_eq!(report.records.len(), 2);
        assert_eq!(report.skipped, vec![SkippedItem { id: "b".into(), reason: "missing eo:cloud_cover".into() }]);
    }

    #[test]
    fn custom_price_path() {
        let props = serde_json::json!({"eo:cloud_cover": 5, "gsd": 0.3, "view:incidence_angle": 3, "order": {"amount": 2.5}});
        let text = collection(vec![item("a", props)]);
        let opts = IngestOptions { price_path: "properties.order.amount".into() };
        assert_eq!(ingest_catalog_str(&text, &opts).unwrap().records[0].cost, 250);
        assert!(matches!(ingest_catalog_str(&text, &IngestOptions::default()), Err(Error::Catalog(_))));
    }

    #[test]
    fn empty_or_malformed_catalog() {
        assert!(matches!(ingest_catalog_str(&collection(vec![]), &IngestOptions::default()), Err(Error::Catalog(_))));
        assert!(matches!(ingest_catalog_str("{", &IngestOptions::default()), Err(Error::Parse { .. })));
        assert!(ingest_catalog(Path::new("/nonexistent/catalog.json"), &IngestOptions::default()).is_err());
    }
}
