//! Mixed integer linear program in CPLEX LP text format.
//!
//! Variables (indices are 1-based, as in instance files):
//! - `x_i` binary, image i is taken;
//! - `r_k` continuous, best resolution over taken images containing part k;
//! - `z_k_j` binary, for each image j containing part k; exactly one per
//!   part is 0 and selects the image whose resolution `r_k` pays;
//! - `max_f` continuous, maximum incidence angle over taken images;
//! - `y_k` binary, part k is seen cloud-free; only for parts that are cloudy
//!   in at least one containing image.
//!
//! The cloud objective is written as `-Σ A_k y_k`; the true cloud area is
//! that plus the constant `Σ A_k` over the same parts.

use std::fmt::Write as _;

use crate::instance::DiscreteInstance;
use crate::objectives::Objective;

const MAX_LINE: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub enum LpObjective {
    Single(Objective),
    /// Weights in objective order (cost, cloud, resolution, incidence).
    Weighted([f64; 4]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOptions {
    pub objective: LpObjective,
    /// Extra `objective ≤ bound` rows, as used for one epsilon-grid point.
    pub bounds: Vec<(Objective, u64)>,
}

impl LpOptions {
    pub fn single(objective: Objective) -> Self {
        Self { objective: LpObjective::Single(objective), bounds: Vec::new() }
    }
}

/// Closed-form model size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LpCounts {
    pub x: usize,
    pub z: usize,
    pub y: usize,
    pub cover_rows: usize,
}

impl LpCounts {
    pub fn of(inst: &DiscreteInstance) -> Self {
        Self {
            x: inst.m(),
            z: inst.images.iter().map(|img| img.parts.len()).sum(),
            y: cloud_parts(inst).len(),
            cover_rows: inst.n(),
        }
    }

    pub fn binaries(&self) -> usize {
        self.x + self.z + self.y
    }
}

/// Big constant of the resolution rows: one more than every image resolution.
pub fn big_b(inst: &DiscreteInstance) -> u64 {
    inst.images.iter().map(|i| i.resolution).max().unwrap_or(0) + 1
}

/// Parts that are cloudy in at least one containing image, ascending.
fn cloud_parts(inst: &DiscreteInstance) -> Vec<usize> {
    let mut flagged = vec![false; inst.n()];
    for img in &inst.images {
        for &k in &img.cloudy {
            flagged[k] = true;
        }
    }
    (0..inst.n()).filter(|&k| flagged[k]).collect()
}

/// Linear expression as (coefficient, variable) terms.
type Expr = Vec<(f64, String)>;

pub fn export_lp(inst: &DiscreteInstance, options: &LpOptions) -> String {
    let index = inst.index();
    let b = big_b(inst) as f64;
    let clouds = cloud_parts(inst);
    let x = |i: usize| format!("x_{}", i + 1);
    let r = |k: usize| format!("r_{}", k + 1);
    let z = |k: usize, j: usize| format!("z_{}_{}", k + 1, j + 1);
    let y = |k: usize| format!("y_{}", k + 1);

    let cost: Expr = inst.images.iter().enumerate().map(|(i, img)| (img.cost as f64, x(i))).collect();
    let cloud: Expr = clouds.iter().map(|&k| (-(inst.areas[k] as f64), y(k))).collect();
    let cloud_const: u64 = clouds.iter().map(|&k| inst.areas[k]).sum();
    let resolution: Expr = (0..inst.n()).map(|k| (1.0, r(k))).collect();
    let incidence: Expr = vec![(1.0, "max_f".to_string())];
    let exprs = [cost, cloud, resolution, incidence];

    let mut out = String::new();
    let _ = writeln!(out, "\\ parts {} images {}", inst.n(), inst.m());
    let _ = writeln!(out, "\\ cloud area = {cloud_const} + cloud objective terms");
    out.push_str("Minimize\n");
    let objective = match &options.objective {
        LpObjective::Single(o) => exprs[o.index()].clone(),
        LpObjective::Weighted(w) => Objective::ALL
            .iter()
            .filter(|o| w[o.index()] != 0.0)
            .flat_map(|o| exprs[o.index()].iter().map(|(c, v)| (c * w[o.index()], v.clone())))
            .collect(),
    };
    push_row(&mut out, "obj:", &objective, None);

    out.push_str("Subject To\n");
    for k in 0..inst.n() {
        let terms: Expr = index.containing[k].iter().map(|&i| (1.0, x(i))).collect();
        push_row(&mut out, &format!("cover_{}:", k + 1), &terms, Some(">= 1"));
    }
    for k in 0..inst.n() {
        let l = &index.containing[k];
        let terms: Expr = l.iter().map(|&j| (1.0, z(k, j))).collect();
        push_row(&mut out, &format!("pick_{}:", k + 1), &terms, Some(&format!("= {}", l.len() - 1)));
        for &j in l {
            let rj = inst.images[j].resolution as f64;
            let terms = vec![(1.0, r(k)), (b - rj, x(j)), (2.0 * b, z(k, j))];
            push_row(&mut out, &format!("res_{}_{}:", k + 1, j + 1), &terms, Some(&format!(">= {}", fmt_num(b))));
        }
    }
    for (i, img) in inst.images.iter().enumerate() {
        let terms = vec![(1.0, "max_f".to_string()), (-f64::from(img.angle), x(i))];
        push_row(&mut out, &format!("angle_{}:", i + 1), &terms, Some(">= 0"));
    }
    for &k in &clouds {
        let mut terms: Expr = index.clear[k].iter().map(|&i| (1.0, x(i))).collect();
        terms.push((-1.0, y(k)));
        push_row(&mut out, &format!("clear_{}:", k + 1), &terms, Some(">= 0"));
    }
    for &(o, bound) in &options.bounds {
        let name = format!("eps_{}:", o.name());
        match o {
            // -Σ A y ≤ bound - constant
            Objective::Cloud => {
                let rhs = bound as i128 - cloud_const as i128;
                push_row(&mut out, &name, &exprs[1], Some(&format!("<= {rhs}")));
            }
            _ => push_row(&mut out, &name, &exprs[o.index()], Some(&format!("<= {bound}"))),
        }
    }

    out.push_str("Bounds\n");
    for k in 0..inst.n() {
        let _ = writeln!(out, " {} >= 0", r(k));
    }
    out.push_str(" max_f >= 0\n");

    out.push_str("Binaries\n");
    let mut binaries: Vec<String> = (0..inst.m()).map(x).collect();
    for k in 0..inst.n() {
        binaries.extend(index.containing[k].iter().map(|&j| z(k, j)));
    }
    binaries.extend(clouds.iter().map(|&k| y(k)));
    push_names(&mut out, &binaries);
    out.push_str("End\n");
    out
}

fn fmt_num(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn push_row(out: &mut String, name: &str, terms: &[(f64, String)], rhs: Option<&str>) {
    let mut line = format!(" {name}");
    let mut first = true;
    for (coef, var) in terms {
        let sign = if *coef < 0.0 { "-" } else { "+" };
        let mag = coef.abs();
        let term = match (first, sign, mag == 1.0) {
            (true, "+", true) => format!(" {var}"),
            (true, "+", false) => format!(" {} {var}", fmt_num(mag)),
            (_, s, true) => format!(" {s} {var}"),
            (_, s, false) => format!(" {s} {} {var}", fmt_num(mag)),
        };
        first = false;
        if line.len() + term.len() > MAX_LINE {
            out.push_str(&line);
            out.push('\n');
            line = "   ".to_string();
        }
        line.push_str(&term);
    }
    if terms.is_empty() {
        line.push_str(" 0 x_1");
    }
    if let Some(rhs) = rhs {
        line.push(' ');
        line.push_str(rhs);
    }
    out.push_str(&line);
    out.push('\n');
}

fn push_names(out: &mut String, names: &[String]) {
    let mut line = String::new();
    for name in names {
        if !line.is_empty() && line.len() + name.len() + 1 > MAX_LINE {
            out.push_str(&line);
            out.push('\n');
            line.clear();
        }
        line.push(' ');
        line.push_str(name);
    }
    if !line.is_empty() {
        out.push_str(&line);
        out.push('\n');
    }
}
