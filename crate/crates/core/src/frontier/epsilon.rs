//! Saugmented epsilon-constraint enumeration.
//!
//! One objective is minimised while the others are bounded by nested integer
//! grids, each walked from its worst-case value down to its ideal value.
//! Every subproblem is solved lexicographically (main objective first, then
//! the constrained ones), so each answer is Pareto optimal.
//!
//! Two accelerations skip grid values whose subproblems provably repeat an
//! earlier answer:
//! - early exit: once a level finds nothing, tighter values at that level
//!   cannot either;
//! - bound jumping: after a level's subtree completes, its next bound is the
//!   largest value any answer in that subtree attained, minus one. Every
//!   bound between that value and the current one yields the same sequence
//!   of answers.

use crate::instance::DiscreteInstance;
use crate::objectives::Objective;
use crate::solver::{Budget, MinOutcome, SideConstraint, Solver};

use super::front::{FrontStatus, ParetoFront};
use super::hypervolume::worst_case;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonConfig {
    pub main: Objective,
    /// Bounded objectives, outermost loop first.
    pub constrained: Vec<Objective>,
}

impl EpsilonConfig {
    /// Loops run over incidence, resolution and cloud (outer to inner), with
    /// cost taking the outermost slot when it is not the main objective.
    pub fn new(main: Objective) -> Self {
        let constrained = [Objective::Cost, Objective::Incidence, Objective::Resolution, Objective::Cloud]
            .into_iter()
            .filter(|&o| o != main)
            .collect();
        Self { main, constrained }
    }
}

impl Default for EpsilonConfig {
    fn default() -> Self {
        Self::new(Objective::Cost)
    }
}

pub fn saugmencon(inst: &DiscreteInstance, main: Objective, budget: Budget) -> ParetoFront {
    Epsilon::new(inst, EpsilonConfig::new(main), budget).run()
}

struct Epsilon<'a> {
    solver: Solver<'a>,
    config: EpsilonConfig,
    lex: Vec<Objective>,
    ideal: Vec<u64>,
    nadir: Vec<u64>,
    bounds: Vec<u64>,
    front: ParetoFront,
    timed_out: bool,
}

impl<'a> Epsilon<'a> {
    fn new(inst: &'a DiscreteInstance, config: EpsilonConfig, budget: Budget) -> Self {
        let worst = worst_case(inst);
        let nadir = config.constrained.iter().map(|o| worst.get(*o)).collect();
        let mut lex = vec![config.main];
        lex.extend(&config.constrained);
        Self {
            solver: Solver::new(inst, budget),
            bounds: vec![0; config.constrained.len()],
            ideal: Vec::new(),
            nadir,
            config,
            lex,
            front: ParetoFront::new(),
            timed_out: false,
        }
    }

    fn run(mut self) -> ParetoFront {
        if self.compute_ideal() {
            self.level(0);
        }
        if self.timed_out {
            self.front.status = FrontStatus::Partial;
        }
        self.front.stats = self.solver.stats.clone();
        self.front.sort();
        self.front
    }

    /// Returns false when the instance has no cover or the budget ran out.
    fn compute_ideal(&mut self) -> bool {
        for idx in 0..self.config.constrained.len() {
            match self.solver.solve_min(self.config.constrained[idx], &[]) {
                MinOutcome::Optimal(c) => self.ideal.push(c.objectives.get(self.config.constrained[idx])),
                MinOutcome::Unsat => return false,
                MinOutcome::Timeout(best) => {
                    if let Some(c) = best {
                        self.front.insert(c);
                    }
                    self.timed_out = true;
                    return false;
                }
            }
        }
        true
    }

    /// Walks the grid of constrained objective `depth` with the outer bounds
    /// fixed. Returns the component-wise maximum objective vector over every
    /// answer found in this subtree, or `None` if there was none.
    fn level(&mut self, depth: usize) -> Option<[u64; 4]> {
        let obj = self.config.constrained[depth];
        let mut eps = self.nadir[depth];
        let mut seen: Option<[u64; 4]> = None;
        loop {
            if eps < self.ideal[depth] || self.timed_out {
                break;
            }
            self.bounds[depth] = eps;
            let sub = if depth + 1 == self.config.constrained.len() {
                self.subproblem()
            } else {
                self.level(depth + 1)
            };
            let Some(max) = sub else { break };
            seen = Some(match seen {
                None => max,
                Some(s) => std::array::from_fn(|j| s[j].max(max[j])),
            });
            let reached = max[obj.index()];
            debug_assert!(reached <= eps);
            match reached.checked_sub(1) {
                Some(next) => eps = next,
                None => break,
            }
        }
        seen
    }

    fn subproblem(&mut self) -> Option<[u64; 4]> {
        if self.solver.is_exhausted() {
            self.timed_out = true;
            return None;
        }
        let cons: Vec<SideConstraint> = self
            .config
            .constrained
            .iter()
            .zip(&self.bounds)
            .map(|(&objective, &max)| SideConstraint::Bound { objective, max })
            .collect();
        match self.solver.solve_lex(&self.lex, &cons) {
            MinOutcome::Optimal(cover) => {
                let v = cover.objectives.0;
                self.front.insert(cover);
                Some(v)
            }
            MinOutcome::Unsat => None,
            MinOutcome::Timeout(best) => {
                if let Some(c) = best {
                    self.front.insert(c);
                }
                self.timed_out = true;
                None
            }
        }
    }
}
