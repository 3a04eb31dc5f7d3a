use std::collections::BTreeMap;
use std::path::Path;

use mosaic_core::frontier::{
    brute_force_front, hypervolume, pareto_gavanelli, reference_point, saugmencon, score, FrontFile, ParetoFront,
};
use mosaic_core::geometry::SimplePolygon;
use mosaic_core::instance::{
    generate_synthetic, ingest_catalog_str, DiscreteInstance, IngestOptions, Meta, RawProblem, SyntheticConfig,
};
use mosaic_core::objectives::{is_cover, Cover, Objective, ObjectiveVector};
use mosaic_core::preprocess::{assign_clouds, discretize};
use mosaic_core::render::{render_svg, RenderOptions};
use mosaic_core::solver::Budget;
use mosaic_core::export::{export_lp, LpObjective, LpOptions};
use serde_json::json;

use crate::args::*;
use crate::io::{read_text, write_text};
use crate::{bench, CliError, CliResult};

pub fn dispatch(cli: Cli) -> CliResult {
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Ingest(a) => ingest(a),
        Command::Preprocess(a) => preprocess(a),
        Command::Solve(a) => solve(a),
        Command::ExportLp(a) => export(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Hypervolume(a) => hypervolume_cmd(a),
        Command::Score(a) => score_cmd(a),
        Command::Render(a) => render(a),
        Command::Bench(a) => bench::run(a),
    }
}

fn load_instance(path: &Path) -> CliResult<DiscreteInstance> {
    Ok(DiscreteInstance::from_json(&read_text(path)?)?)
}

fn load_raw(path: &Path) -> CliResult<RawProblem> {
    Ok(RawProblem::from_json(&read_text(path)?)?)
}

fn load_front(path: &Path) -> CliResult<FrontFile> {
    FrontFile::from_json(&read_text(path)?).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

fn generate(a: GenerateArgs) -> CliResult {
    let cfg = SyntheticConfig {
        width: a.width,
        height: a.height,
        images: a.images,
        seed: a.seed,
        scale: a.scale_min..=a.scale_max,
        first_covers_aoi: a.first_covers_aoi,
        ..Default::default()
    };
    let raw = generate_synthetic(&cfg)?;
    write_text(&a.output, &raw.to_json())
}

fn ingest(a: IngestArgs) -> CliResult {
    let aoi_json: serde_json::Value = serde_json::from_str(&read_text(&a.aoi)?)
        .map_err(|e| CliError::invalid(format!("{}: {e}", a.aoi.display())))?;
    let geometry = match aoi_json.get("type").and_then(|t| t.as_str()) {
        Some("Feature") => aoi_json.get("geometry").cloned().unwrap_or_default(),
        _ => aoi_json,
    };
    let aoi = SimplePolygon::from_geojson(geometry).map_err(|e| CliError::invalid(format!("{}: {e}", a.aoi.display())))?;
    let report = ingest_catalog_str(&read_text(&a.catalog)?, &IngestOptions { price_path: a.price_path })?;
    for s in &report.skipped {
        eprintln!("skipped {}: {}", s.id, s.reason);
    }
    let mut meta = Meta::new();
    meta.insert("source".into(), json!(a.catalog.display().to_string()));
    meta.insert("skipped".into(), json!(report.skipped.len()));
    let raw = RawProblem { aoi, images: report.records, meta };
    raw.validate()?;
    write_text(&a.output, &raw.to_json())
}

fn preprocess(a: PreprocessArgs) -> CliResult {
    let raw = load_raw(&a.input)?;
    let (inst, report) = discretize(&raw)?;
    let (inst, clouds) = assign_clouds(&inst, &raw, a.cloud_seed)?;
    eprintln!(
        "parts {} covered area {:.2} m2 uncoverable area {:.2} m2 in {} polygon(s)",
        report.parts, report.covered_area, report.uncoverable_area, report.uncoverable_polygons
    );
    if let Some(path) = &a.report {
        let text = mosaic_core::error::to_json_string(&json!({"discretize": report, "clouds": clouds}));
        write_text(path, &text)?;
    }
    write_text(&a.output, &inst.to_json())
}

pub fn run_algorithm(inst: &DiscreteInstance, algorithm: Algorithm, main: Objective, budget: Budget) -> CliResult<ParetoFront> {
    Ok(match algorithm {
        Algorithm::Gavanelli => pareto_gavanelli(inst, budget),
        Algorithm::Saugmencon => saugmencon(inst, main, budget),
        Algorithm::Brute => brute_force_front(inst)?,
    })
}

fn solve(a: SolveArgs) -> CliResult {
    let inst = load_instance(&a.input)?;
    let budget = Budget::new(a.budget.budget_ms, a.budget.budget_nodes);
    let front = run_algorithm(&inst, a.algorithm, a.main_objective, budget)?;
    if front.is_empty() {
        return Err(CliError::infeasible(match front.status {
            mosaic_core::frontier::FrontStatus::Complete => "no cover exists",
            mosaic_core::frontier::FrontStatus::Partial => "budget exhausted before any cover was found",
        }));
    }
    let mut meta = inst.meta.clone();
    meta.insert("algorithm".into(), json!(a.algorithm.name()));
    if a.algorithm == Algorithm::Saugmencon {
        meta.insert("main_objective".into(), json!(a.main_objective.name()));
    }
    meta.insert("budget_ms".into(), json!(a.budget.budget_ms));
    meta.insert("budget_nodes".into(), json!(a.budget.budget_nodes));
    meta.insert("stats".into(), json!(front.stats));
    let file = front.to_file(&inst, reference_point(&inst), meta);
    eprintln!("{} points, status {:?}, {} nodes", front.len(), front.status, front.stats.nodes);
    write_text(&a.output, &file.to_json())
}

fn parse_bound(s: &str) -> CliResult<(Objective, u64)> {
    let (name, value) = s.split_once('=').ok_or_else(|| CliError::invalid(format!("bound `{s}`: expected OBJECTIVE=VALUE")))?;
    let obj: Objective = name.parse().map_err(CliError::invalid)?;
    let v = value.parse().map_err(|_| CliError::invalid(format!("bound `{s}`: value must be a non-negative integer")))?;
    Ok((obj, v))
}

fn export(a: ExportLpArgs) -> CliResult {
    let inst = load_instance(&a.input)?;
    let objective = match a.weights {
        Some(w) => {
            let w: [f64; 4] = w
                .try_into()
                .map_err(|w: Vec<f64>| CliError::invalid(format!("--weights needs 4 values, got {}", w.len())))?;
            if w.iter().any(|x| !x.is_finite()) {
                return Err(CliError::invalid("--weights must be finite"));
            }
            LpObjective::Weighted(w)
        }
        None => LpObjective::Single(a.objective),
    };
    let bounds = a.bounds.iter().map(|b| parse_bound(b)).collect::<CliResult<Vec<_>>>()?;
    write_text(&a.output, &export_lp(&inst, &LpOptions { objective, bounds }))
}

fn evaluate(a: EvaluateArgs) -> CliResult {
    let inst = load_instance(&a.input)?;
    let taken = a
        .images
        .iter()
        .map(|id| {
            inst.images
                .iter()
                .position(|img| &img.id == id)
                .ok_or_else(|| CliError::invalid(format!("unknown image id `{id}`")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    if !is_cover(&inst, &taken) {
        return Err(CliError::infeasible("the selected images do not cover every part"));
    }
    let cover = Cover::new(&inst, taken)?;
    let v = cover.objectives;
    let out = json!({
        "images": cover.image_ids(&inst),
        "objectives": v,
        "cost": v.cost(),
        "cloud_area": v.cloud_area(),
        "resolution_sum": v.resolution_sum(),
        "max_incidence": v.max_incidence(),
    });
    write_text(Path::new("-"), &mosaic_core::error::to_json_string(&out))
}

fn parse_reference(s: &str) -> CliResult<Option<ObjectiveVector>> {
    if s == "auto" {
        return Ok(None);
    }
    let parts: Vec<u64> = s
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::invalid(format!("reference `{s}`: expected auto or four integers")))?;
    let arr: [u64; 4] = parts
        .try_into()
        .map_err(|_| CliError::invalid(format!("reference `{s}`: expected four integers")))?;
    Ok(Some(ObjectiveVector(arr)))
}

fn hypervolume_cmd(a: HypervolumeArgs) -> CliResult {
    let front = load_front(&a.front)?;
    let reference = parse_reference(&a.reference)?.unwrap_or(front.reference_point);
    let hv = hypervolume(&front.vectors(), reference)?;
    write_text(Path::new("-"), &format!("{hv:?}\n"))
}

fn score_cmd(a: ScoreArgs) -> CliResult {
    let fronts = a
        .fronts
        .iter()
        .map(|p| Ok((strategy_name(p), load_front(p)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let reference = match parse_reference(&a.reference)? {
        Some(r) => r,
        None => ObjectiveVector(std::array::from_fn(|j| fronts.iter().map(|(_, f)| f.reference_point.0[j]).max().unwrap_or(0))),
    };
    let mut hvs = BTreeMap::new();
    for (name, front) in &fronts {
        if hvs.insert(name.clone(), hypervolume(&front.vectors(), reference)?).is_some() {
            return Err(CliError::invalid(format!("two fronts are named `{name}`")));
        }
    }
    let scores = score(&hvs);
    let text = if a.json {
        mosaic_core::error::to_json_string(&scores)
    } else {
        scores.iter().map(|(k, v)| format!("{k}: {v:?}\n")).collect()
    };
    write_text(Path::new("-"), &text)
}

fn strategy_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn render(a: RenderArgs) -> CliResult {
    let inst = load_instance(&a.input)?;
    let cover = if let Some(path) = &a.front {
        Some(load_front(path)?.witness(&inst, a.point)?)
    } else if let Some(ids) = &a.images {
        let taken = ids
            .iter()
            .map(|id| {
                inst.images
                    .iter()
                    .position(|img| &img.id == id)
                    .ok_or_else(|| CliError::invalid(format!("unknown image id `{id}`")))
            })
            .collect::<CliResult<Vec<_>>>()?;
        if !is_cover(&inst, &taken) {
            return Err(CliError::infeasible("the selected images do not cover every part"));
        }
        Some(Cover::new(&inst, taken)?)
    } else {
        None
    };
    let raw = a.raw.as_deref().map(load_raw).transpose()?;
    let options = RenderOptions {
        cover: cover.as_ref(),
        aoi: raw.as_ref().map(|r| &r.aoi),
        title: None,
    };
    write_text(&a.output, &render_svg(&inst, &options)?)
}
