use crate::instance::DiscreteInstance;
use crate::solver::{Budget, SatOutcome, SideConstraint, Solver};

use super::front::{FrontStatus, ParetoFront};

/// Repeatedly asks for any cover not dominated by the current front and adds
/// it, until no such cover exists (COMPLETE) or the budget runs out (PARTIAL).
///
/// Only cuts for points still on the front are posted: a cover dominated by
/// an evicted point is also dominated by the point that evicted it.
pub fn pareto_gavanelli(inst: &DiscreteInstance, budget: Budget) -> ParetoFront {
    let mut solver = Solver::new(inst, budget);
    let mut front = ParetoFront::new();
    loop {
        let cuts: Vec<SideConstraint> = front
            .points
            .iter()
            .map(|p| SideConstraint::ParetoCut(p.objectives))
            .collect();
        match solver.solve_satisfy(&cuts) {
            SatOutcome::Found(cover) => {
                let added = front.insert(cover);
                debug_assert!(added, "solution violates a Pareto cut");
            }
            SatOutcome::Unsat => break,
            SatOutcome::Timeout => {
                front.status = FrontStatus::Partial;
                break;
            }
        }
    }
    front.stats = solver.stats.clone();
    front.sort();
    front
}
