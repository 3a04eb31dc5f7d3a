use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};
use crate::instance::{DiscreteInstance, Meta};
use crate::objectives::{dominates, Cover, ObjectiveVector};
use crate::solver::SolverStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FrontStatus {
    Complete,
    /// The budget ran out before the front was proven complete.
    Partial,
}

/// Mutually non-dominated covers, each kept with its witness image set.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoFront {
    pub points: Vec<Cover>,
    pub status: FrontStatus,
    pub stats: SolverStats,
}

impl Default for ParetoFront {
    fn default() -> Self {
        Self {
            points: Vec::new(),
            status: FrontStatus::Complete,
            stats: SolverStats::default(),
        }
    }
}

impl ParetoFront {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `cover` unless an equal or better vector is already stored;
    /// evicts the points it dominates. Returns whether it was added.
    pub fn insert(&mut self, cover: Cover) -> bool {
        let v = cover.objectives;
        if self.points.iter().any(|p| p.objectives == v || dominates(&p.objectives, &v)) {
            return false;
        }
        self.points.retain(|p| !dominates(&v, &p.objectives));
        self.points.push(cover);
        debug_assert!(self.is_mutually_non_dominated());
        true
    }

    pub fn is_mutually_non_dominated(&self) -> bool {
        self.points.iter().enumerate().all(|(i, a)| {
            self.points
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || (a.objectives != b.objectives && !dominates(&a.objectives, &b.objectives)))
        })
    }

    /// Lexicographic order by objective vector.
    pub fn sort(&mut self) {
        self.points.sort_by(|a, b| a.objectives.cmp(&b.objectives).then_with(|| a.taken.cmp(&b.taken)));
    }

    pub fn vectors(&self) -> Vec<ObjectiveVector> {
        let mut v: Vec<_> = self.points.iter().map(|p| p.objectives).collect();
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_file(&self, inst: &DiscreteInstance, reference_point: ObjectiveVector, meta: Meta) -> FrontFile {
        let mut sorted = self.clone();
        sorted.sort();
        FrontFile {
            status: self.status,
            reference_point,
            points: sorted
                .points
                .iter()
                .map(|c| FrontPointRecord {
                    objectives: c.objectives,
                    images: c.image_ids(inst),
                })
                .collect(),
            meta,
        }
    }
}

/// On-disk front: canonically sorted points with witness image ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrontFile {
    pub status: FrontStatus,
    pub reference_point: ObjectiveVector,
    pub points: Vec<FrontPointRecord>,
    #[serde(default)]
    pub meta: Meta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrontPointRecord {
    pub objectives: ObjectiveVector,
    pub images: Vec<String>,
}

impl FrontFile {
    pub fn from_json(text: &str) -> Result<Self> {
        error::from_json_str(text)
    }

    pub fn to_json(&self) -> String {
        error::to_json_string(self)
    }

    pub fn vectors(&self) -> Vec<ObjectiveVector> {
        self.points.iter().map(|p| p.objectives).collect()
    }

    /// Resolves the witness of point `idx` to a cover of `inst`.
    pub fn witness(&self, inst: &DiscreteInstance, idx: usize) -> Result<Cover> {
        let point = self
            .points
            .get(idx)
            .ok_or_else(|| Error::contract(format!("front has no point {idx}")))?;
        let taken = point
            .images
            .iter()
            .map(|id| {
                inst.images
                    .iter()
                    .position(|img| &img.id == id)
                    .ok_or_else(|| Error::invariant(format!("front references unknown image {id}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Cover::new(inst, taken)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(v: [u64; 4]) -> Cover {
        Cover { taken: vec![], objectives: ObjectiveVector(v) }
    }

    #[test]
    fn insert_keeps_front_clean() {
        let mut f = ParetoFront::new();
        assert!(f.insert(cover([5, 5, 5, 5])));
        assert!(!f.insert(cover([5, 5, 5, 5])));
        assert!(!f.insert(cover([6, 5, 5, 5])));
        assert!(f.insert(cover([1, 9, 5, 5])));
        assert!(f.insert(cover([4, 4, 4, 4])));
        assert_eq!(f.vectors(), vec![ObjectiveVector([1, 9, 5, 5]), ObjectiveVector([4, 4, 4, 4])]);
        assert!(f.is_mutually_non_dominated());
    }

    #[test]
    fn status_serialization() {
        assert_eq!(serde_json::to_string(&FrontStatus::Partial).unwrap(), "\"PARTIAL\"");
        let file = FrontFile {
            status: FrontStatus::Complete,
            reference_point: ObjectiveVector([9, 9, 9, 9]),
            points: vec![FrontPointRecord { objectives: ObjectiveVector([1, 2, 3, 4]), images: vec!["a".into()] }],
            meta: Meta::new(),
        };
        let text = file.to_json();
        assert!(text.contains("\"COMPLETE\""));
        assert_eq!(FrontFile::from_json(&text).unwrap(), file);
    }
}
