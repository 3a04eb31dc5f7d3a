//! Feasibility and the four objectives of a candidate cover.
//!
//! All objectives are minimised and always appear in the order
//! (cost, cloud area, resolution sum, max incidence).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::DiscreteInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Cost = 0,
    Cloud = 1,
    Resolution = 2,
    Incidence = 3,
}

impl Objective {
    pub const ALL: [Objective; 4] = [Objective::Cost, Objective::Cloud, Objective::Resolution, Objective::Incidence];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::Cost => "cost",
            Objective::Cloud => "cloud",
            Objective::Resolution => "resolution",
            Objective::Incidence => "incidence",
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Objective::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| format!("unknown objective `{s}` (expected cost, cloud, resolution or incidence)"))
    }
}

/// (cost in cents, cloudy area in m², Σ per-part best resolution, max
/// incidence in tenths of a degree). Serialised as a 4-integer array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectiveVector(pub [u64; 4]);

impl ObjectiveVector {
    pub fn cost(&self) -> u64 {
        self.0[0]
    }

    pub fn cloud_area(&self) -> u64 {
        self.0[1]
    }

    pub fn resolution_sum(&self) -> u64 {
        self.0[2]
    }

    pub fn max_incidence(&self) -> u64 {
        self.0[3]
    }

    pub fn get(&self, obj: Objective) -> u64 {
        self.0[obj.index()]
    }

    /// Pareto dominance under minimisation.
    pub fn dominates(&self, other: &ObjectiveVector) -> bool {
        dominates(self, other)
    }
}

impl fmt::Display for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// `a` is no worse everywhere and differs somewhere.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| x <= y) && a != b
}

/// A selected image subset with its objective vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    /// Zero-based image indices, ascending.
    pub taken: Vec<usize>,
    pub objectives: ObjectiveVector,
}

impl Cover {
    /// Evaluates `taken` (any order, duplicates ignored).
    pub fn new(inst: &DiscreteInstance, taken: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut taken: Vec<usize> = taken.into_iter().collect();
        taken.sort_unstable();
        taken.dedup();
        let objectives = evaluate(inst, &taken)?;
        Ok(Self { taken, objectives })
    }

    pub fn image_ids(&self, inst: &DiscreteInstance) -> Vec<String> {
        self.taken.iter().map(|&i| inst.images[i].id.clone()).collect()
    }
}

/// True iff the union of the selected images' parts is the whole universe.
pub fn is_cover(inst: &DiscreteInstance, taken: &[usize]) -> bool {
    let mut covered = vec![false; inst.n()];
    for &i in taken {
        let Some(img) = inst.images.get(i) else { return false };
        for &k in &img.parts {
            covered[k] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// Objective vector of a feasible cover.
pub fn evaluate(inst: &DiscreteInstance, taken: &[usize]) -> Result<ObjectiveVector> {
    if let Some(&i) = taken.iter().find(|&&i| i >= inst.m()) {
        return Err(Error::contract(format!("image index {i} out of range")));
    }
    if !is_cover(inst, taken) {
        return Err(Error::contract("evaluate called on a subset that does not cover the universe"));
    }
    let n = inst.n();
    let mut best_res = vec![u64::MAX; n];
    let mut clear = vec![false; n];
    let mut cost = 0;
    let mut incidence = 0;
    for &i in taken {
        let img = &inst.images[i];
        cost += img.cost;
        incidence = incidence.max(u64::from(img.angle));
        for &k in &img.parts {
            best_res[k] = best_res[k].min(img.resolution);
            if !img.is_cloudy(k) {
                clear[k] = true;
            }
        }
    }
    let cloud = (0..n).filter(|&k| !clear[k]).map(|k| inst.areas[k]).sum();
    Ok(ObjectiveVector([cost, cloud, best_res.iter().sum(), incidence]))
}
