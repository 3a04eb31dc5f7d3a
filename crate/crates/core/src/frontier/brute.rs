use crate::error::{Error, Result};
use crate::instance::DiscreteInstance;
use crate::objectives::{Cover, ObjectiveVector};

use super::front::ParetoFront;

pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Enumerates all 2^m subsets, keeps the covers and filters dominated
/// vectors. Objectives are computed here from per-part image masks,
/// independently of [`crate::objectives::evaluate`].
///
/// The witness of each point is the cover with the smallest bitmask.
pub fn brute_force_front(inst: &DiscreteInstance) -> Result<ParetoFront> {
    let m = inst.m();
    if m > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { m, limit: BRUTE_FORCE_LIMIT });
    }
    let n = inst.n();
    let mut containing = vec![0u32; n];
    let mut clear = vec![0u32; n];
    for (i, img) in inst.images.iter().enumerate() {
        for &k in &img.parts {
            containing[k] |= 1 << i;
            if !img.is_cloudy(k) {
                clear[k] |= 1 << i;
            }
        }
    }

    let mut covers: Vec<(ObjectiveVector, u32)> = Vec::new();
    'masks: for mask in 1u32..(1u32 << m) {
        let mut v = [0u64; 4];
        for k in 0..n {
            let sel = containing[k] & mask;
            if sel == 0 {
                continue 'masks;
            }
            let mut bits = sel;
            let mut best = u64::MAX;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                best = best.min(inst.images[i].resolution);
                bits &= bits - 1;
            }
            v[2] += best;
            if clear[k] & mask == 0 {
                v[1] += inst.areas[k];
            }
        }
        for i in (0..m).filter(|i| mask >> i & 1 == 1) {
            v[0] += inst.images[i].cost;
            v[3] = v[3].max(u64::from(inst.images[i].angle));
        }
        covers.push((ObjectiveVector(v), mask));
    }

    // Lexicographic order puts every dominator before what it dominates.
    covers.sort();
    let mut kept: Vec<(ObjectiveVector, u32)> = Vec::new();
    for (v, mask) in covers {
        let beaten = kept.iter().any(|(w, _)| *w == v || w.dominates(&v));
        if !beaten {
            kept.push((v, mask));
        }
    }

    let mut front = ParetoFront::new();
    for (v, mask) in kept {
        let taken: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        front.points.push(Cover { taken, objectives: v });
    }
    debug_assert!(front.is_mutually_non_dominated());
    front.sort();
    Ok(front)
}
