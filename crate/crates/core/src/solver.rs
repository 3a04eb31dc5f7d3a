//! Exact depth-first search over the image selection variables.
//!
//! The search branches on the free image that would cover the most uncovered
//! parts, trying "take" before "reject"; with no side constraints the first
//! cover it reaches is exactly the greedy set-cover heuristic's answer.
//!
//! Propagation at every node:
//! - a part with no remaining candidate image fails the node;
//! - a part with a single remaining candidate makes that image required;
//! - lower bounds on all four objectives are checked against objective
//!   bounds, Pareto cuts and (when minimising) the incumbent;
//! - images whose cost or incidence angle alone would break a bound are
//!   rejected.
//!
//! Required images are not taken eagerly: they stay in the branching pool
//! (with only the "take" branch) so the coverage-driven order is unchanged.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::instance::{DiscreteInstance, PartIndex};
use crate::objectives::{self, Cover, Objective, ObjectiveVector};

/// Extra restriction on the objective vector of a cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideConstraint {
    /// `objective ≤ max`.
    Bound { objective: Objective, max: u64 },
    /// Some objective must be strictly below the given vector's component.
    ParetoCut(ObjectiveVector),
}

impl SideConstraint {
    pub fn is_satisfied_by(&self, v: &ObjectiveVector) -> bool {
        match self {
            SideConstraint::Bound { objective, max } => v.get(*objective) <= *max,
            SideConstraint::ParetoCut(cut) => v.0.iter().zip(&cut.0).any(|(a, b)| a < b),
        }
    }
}

/// Wall-clock and node limits, shared by every search run through one
/// [`Solver`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub deadline: Option<Instant>,
    pub max_nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    /// Starts the clock now.
    pub fn new(millis: Option<u64>, max_nodes: Option<u64>) -> Self {
        Self {
            deadline: millis.map(|ms| Instant::now() + Duration::from_millis(ms)),
            max_nodes,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SolverStats {
    pub nodes: u64,
    pub failures: u64,
    pub solutions: u64,
    pub incumbents: u64,
    pub time_ms: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SatOutcome {
    Found(Cover),
    Unsat,
    Timeout,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MinOutcome {
    Optimal(Cover),
    Unsat,
    /// Budget ran out; carries the best cover found so far.
    Timeout(Option<Cover>),
}

/// Chvátal's greedy heuristic: repeatedly take the image covering the most
/// uncovered parts, lowest index on ties.
pub fn greedy_cover(inst: &DiscreteInstance) -> Cover {
    let mut covered = vec![false; inst.n()];
    let mut remaining = inst.n();
    let mut taken = Vec::new();
    while remaining > 0 {
        let (best, gain) = inst
            .images
            .iter()
            .enumerate()
            .map(|(i, img)| (i, img.parts.iter().filter(|&&k| !covered[k]).count()))
            .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        assert!(gain > 0, "instance is not coverable");
        for &k in &inst.images[best].parts {
            if !covered[k] {
                covered[k] = true;
                remaining -= 1;
            }
        }
        taken.push(best);
    }
    Cover::new(inst, taken).expect("greedy result covers the universe")
}

/// Search engine bound to one instance. Statistics and the budget accumulate
/// across calls.
pub struct Solver<'a> {
    inst: &'a DiscreteInstance,
    index: PartIndex,
    budget: Budget,
    started: Instant,
    pub stats: SolverStats,
}

impl<'a> Solver<'a> {
    pub fn new(inst: &'a DiscreteInstance, budget: Budget) -> Self {
        Self {
            inst,
            index: inst.index(),
            budget,
            started: Instant::now(),
            stats: SolverStats::default(),
        }
    }

    pub fn instance(&self) -> &'a DiscreteInstance {
        self.inst
    }

    /// Any cover meeting every constraint.
    pub fn solve_satisfy(&mut self, constraints: &[SideConstraint]) -> SatOutcome {
        let mut search = Search::new(self, constraints, None);
        let flow = search.run();
        let found = search.incumbent.take();
        self.finish(search.stats);
        match (flow, found) {
            (_, Some(cover)) => SatOutcome::Found(cover),
            (Flow::Timeout, None) => SatOutcome::Timeout,
            _ => SatOutcome::Unsat,
        }
    }

    /// A cover minimising `objective` subject to the constraints.
    pub fn solve_min(&mut self, objective: Objective, constraints: &[SideConstraint]) -> MinOutcome {
        let mut search = Search::new(self, constraints, Some(objective));
        let flow = search.run();
        let best = search.incumbent.take();
        self.finish(search.stats);
        match (flow, best) {
            (Flow::Timeout, best) => MinOutcome::Timeout(best),
            (_, Some(cover)) => MinOutcome::Optimal(cover),
            (_, None) => MinOutcome::Unsat,
        }
    }

    /// Lexicographic minimisation: each objective in `order` is minimised with
    /// the previous ones fixed at their optimum.
    pub fn solve_lex(&mut self, order: &[Objective], constraints: &[SideConstraint]) -> MinOutcome {
        let mut cons = constraints.to_vec();
        let mut best: Option<Cover> = None;
        for &obj in order {
            match self.solve_min(obj, &cons) {
                MinOutcome::Optimal(c) => {
                    cons.push(SideConstraint::Bound {
                        objective: obj,
                        max: c.objectives.get(obj),
                    });
                    best = Some(c);
                }
                MinOutcome::Unsat => return MinOutcome::Unsat,
                MinOutcome::Timeout(inc) => return MinOutcome::Timeout(inc.or(best)),
            }
        }
        best.map_or(MinOutcome::Unsat, MinOutcome::Optimal)
    }

    pub fn is_exhausted(&self) -> bool {
        self.budget.max_nodes.is_some_and(|max| self.stats.nodes >= max)
            || self.budget.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn finish(&mut self, run: SolverStats) {
        self.stats.nodes += run.nodes;
        self.stats.failures += run.failures;
        self.stats.solutions += run.solutions;
        self.stats.incumbents += run.incumbents;
        self.stats.time_ms = self.started.elapsed().as_millis() as u64;
    }
}

/// Convenience wrapper around [`Solver::solve_satisfy`].
pub fn solve_satisfy(inst: &DiscreteInstance, constraints: &[SideConstraint], budget: Budget) -> SatOutcome {
    Solver::new(inst, budget).solve_satisfy(constraints)
}

/// Convenience wrapper around [`Solver::solve_min`].
pub fn solve_min(inst: &DiscreteInstance, objective: Objective, constraints: &[SideConstraint], budget: Budget) -> MinOutcome {
    Solver::new(inst, budget).solve_min(objective, constraints)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Free,
    Taken,
    Rejected,
}

#[derive(Debug, Clone, Copy)]
enum Change {
    Take(usize),
    Reject(usize),
    Require(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    Timeout,
}

const NONE: u64 = u64::MAX;

struct Search<'s> {
    inst: &'s DiscreteInstance,
    index: &'s PartIndex,
    budget: Budget,
    nodes_before: u64,
    stats: SolverStats,

    status: Vec<Status>,
    required: Vec<bool>,
    /// Taken images containing each part.
    cover_count: Vec<u32>,
    /// Non-rejected images containing each part.
    avail: Vec<u32>,
    uncovered: usize,
    trail: Vec<Change>,

    static_ub: [u64; 4],
    cuts: Vec<ObjectiveVector>,
    minimize: Option<Objective>,
    /// Needs objective lower bounds at all.
    bounded: bool,
    incumbent: Option<Cover>,
}

impl<'s> Search<'s> {
    fn new(solver: &'s Solver<'_>, constraints: &[SideConstraint], minimize: Option<Objective>) -> Self {
        let inst = solver.inst;
        let index = &solver.index;
        let mut static_ub = [NONE; 4];
        let mut cuts = Vec::new();
        for c in constraints {
            match *c {
                SideConstraint::Bound { objective, max } => {
                    let slot = &mut static_ub[objective.index()];
                    *slot = (*slot).min(max);
                }
                SideConstraint::ParetoCut(v) => cuts.push(v),
            }
        }
        Self {
            inst,
            index,
            budget: solver.budget,
            nodes_before: solver.stats.nodes,
            stats: SolverStats::default(),
            status: vec![Status::Free; inst.m()],
            required: vec![false; inst.m()],
            cover_count: vec![0; inst.n()],
            avail: index.containing.iter().map(|l| l.len() as u32).collect(),
            uncovered: inst.n(),
            trail: Vec::new(),
            bounded: minimize.is_some() || !cuts.is_empty() || static_ub.iter().any(|&b| b != NONE),
            static_ub,
            cuts,
            minimize,
            incumbent: None,
        }
    }

    fn run(&mut self) -> Flow {
        self.node()
    }

    fn out_of_budget(&self) -> bool {
        let nodes = self.nodes_before + self.stats.nodes;
        if self.budget.max_nodes.is_some_and(|max| nodes >= max) {
            return true;
        }
        nodes.is_multiple_of(64) && self.budget.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn node(&mut self) -> Flow {
        if self.out_of_budget() {
            return Flow::Timeout;
        }
        self.stats.nodes += 1;
        let mark = self.trail.len();
        let flow = self.expand();
        self.undo_to(mark);
        flow
    }

    fn expand(&mut self) -> Flow {
        if !self.propagate() {
            self.stats.failures += 1;
            return Flow::Continue;
        }

        let branch = if self.uncovered > 0 {
            self.pick_covering_image()
        } else {
            let taken: Vec<usize> = (0..self.inst.m()).filter(|&i| self.status[i] == Status::Taken).collect();
            let v = objectives::evaluate(self.inst, &taken).expect("all parts covered");
            if self.accepts(&v) {
                self.stats.solutions += 1;
                let cover = Cover { taken: taken.clone(), objectives: v };
                if self.minimize.is_none() {
                    self.incumbent = Some(cover);
                    return Flow::Stop;
                }
                self.stats.incumbents += 1;
                self.incumbent = Some(cover);
                // Extensions may still improve cloud or resolution; the
                // tightened incumbent bound prunes them otherwise.
                if !self.propagate() {
                    return Flow::Continue;
                }
            }
            match self.pick_improving_image(&taken) {
                Some(i) => i,
                None => return Flow::Continue,
            }
        };

        let mark = self.trail.len();
        self.take(branch);
        let flow = self.node();
        self.undo_to(mark);
        if flow != Flow::Continue || self.required[branch] {
            return flow;
        }
        self.reject(branch);
        self.node()
    }

    /// Free image with the most uncovered parts; lowest index on ties.
    fn pick_covering_image(&self) -> usize {
        let mut best = (usize::MAX, 0usize);
        for (i, img) in self.inst.images.iter().enumerate() {
            if self.status[i] != Status::Free {
                continue;
            }
            let gain = img.parts.iter().filter(|&&k| self.cover_count[k] == 0).count();
            if gain > best.1 {
                best = (i, gain);
            }
        }
        debug_assert!(best.1 > 0, "propagation guarantees a covering candidate");
        best.0
    }

    /// After the universe is covered only cloud and resolution can still
    /// improve. Images that improve neither are rejected (they never will,
    /// as the taken set only grows); returns the free image improving the
    /// most parts.
    fn pick_improving_image(&mut self, taken: &[usize]) -> Option<usize> {
        let n = self.inst.n();
        let mut best_res = vec![u64::MAX; n];
        let mut clear = vec![false; n];
        for &i in taken {
            let img = &self.inst.images[i];
            for &k in &img.parts {
                best_res[k] = best_res[k].min(img.resolution);
                clear[k] |= !img.is_cloudy(k);
            }
        }
        let mut best = (usize::MAX, 0usize);
        let mut useless = Vec::new();
        for (i, img) in self.inst.images.iter().enumerate() {
            if self.status[i] != Status::Free {
                continue;
            }
            let gain = img
                .parts
                .iter()
                .filter(|&&k| img.resolution < best_res[k] || (!clear[k] && !img.is_cloudy(k)))
                .count();
            if gain == 0 {
                useless.push(i);
            } else if gain > best.1 {
                best = (i, gain);
            }
        }
        for i in useless {
            self.reject(i);
        }
        (best.1 > 0).then_some(best.0)
    }

    fn accepts(&self, v: &ObjectiveVector) -> bool {
        if v.0.iter().zip(&self.static_ub).any(|(x, ub)| x > ub) {
            return false;
        }
        if !self.cuts.iter().all(|c| SideConstraint::ParetoCut(*c).is_satisfied_by(v)) {
            return false;
        }
        match (self.minimize, &self.incumbent) {
            (Some(obj), Some(inc)) => v.get(obj) < inc.objectives.get(obj),
            _ => true,
        }
    }

    /// Runs all propagation rules to a fixpoint; false on failure.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;

            for k in 0..self.inst.n() {
                if self.cover_count[k] > 0 {
                    continue;
                }
                match self.avail[k] {
                    0 => return false,
                    1 => {
                        let i = self.index.containing[k]
                            .iter()
                            .copied()
                            .find(|&i| self.status[i] != Status::Rejected)
                            .expect("one available image");
                        if !self.required[i] {
                            self.require(i);
                            changed = true;
                        }
                    }
                    _ => {}
                }
            }

            if self.bounded {
                let Some(ub) = self.upper_bounds() else { return false };
                let committed_cost = self.committed_cost();
                for i in 0..self.inst.m() {
                    if self.status[i] != Status::Free {
                        continue;
                    }
                    let img = &self.inst.images[i];
                    let too_steep = u64::from(img.angle) > ub[Objective::Incidence.index()];
                    let too_dear = !self.required[i]
                        && committed_cost.saturating_add(img.cost) > ub[Objective::Cost.index()];
                    if too_steep || too_dear {
                        if self.required[i] {
                            return false;
                        }
                        self.reject(i);
                        changed = true;
                    }
                }
            }

            if !changed {
                return true;
            }
        }
    }

    /// Effective upper bounds, or `None` when the lower bounds already
    /// violate a constraint.
    fn upper_bounds(&self) -> Option<[u64; 4]> {
        let lb = self.lower_bounds();
        let mut ub = self.static_ub;
        if let (Some(obj), Some(inc)) = (self.minimize, &self.incumbent) {
            let v = inc.objectives.get(obj);
            if v == 0 {
                return None;
            }
            ub[obj.index()] = ub[obj.index()].min(v - 1);
        }
        for cut in &self.cuts {
            let mut open = (0..4).filter(|&j| lb[j] < cut.0[j]);
            match (open.next(), open.next()) {
                (None, _) => return None,
                (Some(j), None) => ub[j] = ub[j].min(cut.0[j] - 1),
                _ => {}
            }
        }
        if lb.iter().zip(&ub).any(|(l, u)| l > u) {
            return None;
        }
        Some(ub)
    }

    fn committed_cost(&self) -> u64 {
        (0..self.inst.m())
            .filter(|&i| self.status[i] == Status::Taken || self.required[i])
            .map(|i| self.inst.images[i].cost)
            .sum()
    }

    /// Valid lower bounds on every objective over all completions.
    fn lower_bounds(&self) -> [u64; 4] {
        let inst = self.inst;
        let mut cost = 0u64;
        let mut angle = 0u64;
        for (i, img) in inst.images.iter().enumerate() {
            if self.status[i] == Status::Taken || self.required[i] {
                cost += img.cost;
                angle = angle.max(u64::from(img.angle));
            }
        }

        // Each uncovered part still needs some free image.
        let mut extra_cost = 0u64;
        let mut extra_angle = 0u64;
        let mut resolution = 0u64;
        let mut cloud = 0u64;
        for k in 0..inst.n() {
            let mut cheapest = u64::MAX;
            let mut flattest = u64::MAX;
            let mut finest = u64::MAX;
            let mut pending = self.cover_count[k] == 0;
            for &i in &self.index.containing[k] {
                if self.status[i] == Status::Rejected {
                    continue;
                }
                let img = &inst.images[i];
                finest = finest.min(img.resolution);
                if self.required[i] {
                    pending = false;
                }
                if self.status[i] == Status::Free {
                    cheapest = cheapest.min(img.cost);
                    flattest = flattest.min(u64::from(img.angle));
                }
            }
            if pending && cheapest != u64::MAX {
                extra_cost = extra_cost.max(cheapest);
                extra_angle = extra_angle.max(flattest);
            }
            resolution += finest;
            if self.index.clear[k].iter().all(|&i| self.status[i] == Status::Rejected) {
                cloud += inst.areas[k];
            }
        }
        [cost + extra_cost, cloud, resolution, angle.max(extra_angle)]
    }

    fn take(&mut self, i: usize) {
        debug_assert_eq!(self.status[i], Status::Free);
        self.status[i] = Status::Taken;
        for &k in &self.inst.images[i].parts {
            self.cover_count[k] += 1;
            if self.cover_count[k] == 1 {
                self.uncovered -= 1;
            }
        }
        self.trail.push(Change::Take(i));
    }

    fn reject(&mut self, i: usize) {
        debug_assert_eq!(self.status[i], Status::Free);
        self.status[i] = Status::Rejected;
        for &k in &self.inst.images[i].parts {
            self.avail[k] -= 1;
        }
        self.trail.push(Change::Reject(i));
    }

    fn require(&mut self, i: usize) {
        self.required[i] = true;
        self.trail.push(Change::Require(i));
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail entry") {
                Change::Take(i) => {
                    self.status[i] = Status::Free;
                    for &k in &self.inst.images[i].parts {
                        self.cover_count[k] -= 1;
                        if self.cover_count[k] == 0 {
                            self.uncovered += 1;
                        }
                    }
                }
                Change::Reject(i) => {
                    self.status[i] = Status::Free;
                    for &k in &self.inst.images[i].parts {
                        self.avail[k] += 1;
                    }
                }
                Change::Require(i) => self.required[i] = false,
            }
        }
    }
}
