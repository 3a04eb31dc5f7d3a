//! Acceptance checks, one PASS/FAIL line per criterion. Exits non-zero if
//! any criterion fails.

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use mosaic_core::export::{export_lp, LpOptions};
use mosaic_core::frontier::{brute_force_front, hypervolume, hypervolume_points, pareto_gavanelli, saugmencon, score, FrontFile, FrontStatus};
use mosaic_core::geometry::{self, PolygonSet, SLIVER_AREA};
use mosaic_core::instance::{generate_synthetic, DiscreteInstance, RawProblem, SyntheticConfig};
use mosaic_core::objectives::{evaluate, Objective, ObjectiveVector};
use mosaic_core::preprocess::{assign_clouds, discretize};
use mosaic_core::solver::{greedy_cover, solve_satisfy, Budget, SatOutcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn synthetic(images: usize, seed: u64) -> (RawProblem, DiscreteInstance) {
    let raw = generate_synthetic(&SyntheticConfig { images, seed, ..Default::default() }).unwrap();
    let (inst, _) = discretize(&raw).unwrap();
    let (inst, _) = assign_clouds(&inst, &raw, seed).unwrap();
    (raw, inst)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// 1. Both exact algorithms reproduce the brute-force front on 50 instances.
fn oracle_front_equality() -> Outcome {
    let start = Instant::now();
    let quotas = [(6usize, 13usize), (8, 13), (10, 12), (12, 12)];
    let (mut count, mut points, mut skipped) = (0, 0, 0);
    for (m, quota) in quotas {
        let mut taken = 0;
        let mut seed = 0u64;
        while taken < quota {
            let (_, inst) = synthetic(m, seed);
            seed += 1;
            if inst.n() > 80 {
                skipped += 1;
                continue;
            }
            let oracle = brute_force_front(&inst).map_err(|e| e.to_string())?.vectors();
            let gav = pareto_gavanelli(&inst, Budget::unlimited());
            let eps = saugmencon(&inst, Objective::Cost, Budget::unlimited());
            ensure(gav.status == FrontStatus::Complete && eps.status == FrontStatus::Complete, || format!("m={m} seed={}: incomplete front", seed - 1))?;
            ensure(gav.vectors() == oracle, || format!("m={m} seed={}: gavanelli differs from brute force", seed - 1))?;
            ensure(eps.vectors() == oracle, || format!("m={m} seed={}: saugmencon differs from brute force", seed - 1))?;
            taken += 1;
            count += 1;
            points += oracle.len();
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}, limit 300 s"))?;
    Ok(format!("{count} instances ({skipped} with n > 80 skipped), {points} front points, identical; {:.2} s", elapsed.as_secs_f64()))
}

/// 2. The seven-part example: parts 5 and 6 are seen clear, 4 and 7 are not.
fn fig3_fixture() -> Outcome {
    let fixture = |areas: &str| {
        DiscreteInstance::from_json(&format!(
            r#"{{"n": 7, "areas": {areas}, "images": [
                {{"id": "I", "cost": 1, "resolution": 1, "angle": 0, "parts": [1,3,4,5,6,7], "cloudy": [4,5,7]}},
                {{"id": "II", "cost": 1, "resolution": 1, "angle": 0, "parts": [2,3,5,6,7], "cloudy": [6,7]}}]}}"#
        ))
        .unwrap()
    };
    let unit = evaluate(&fixture("[1,1,1,1,1,1,1]"), &[0, 1]).map_err(|e| e.to_string())?;
    ensure(unit.cloud_area() == 2, || format!("unit areas: cloud area {} != 2", unit.cloud_area()))?;
    // Distinct areas make A_4 + A_7 identifiable: 4 + 7.
    let distinct = evaluate(&fixture("[1,2,3,4,5,6,7]"), &[0, 1]).map_err(|e| e.to_string())?;
    ensure(distinct.cloud_area() == 11, || format!("areas 1..7: cloud area {} != A_4 + A_7 = 11", distinct.cloud_area()))?;
    Ok("cover {I, II}: cloud area = A_4 + A_7 (2 with unit areas, 11 with areas 1..7)".into())
}

/// 3. The first cover of the unconstrained search is the greedy cover.
fn greedy_first_solution() -> Outcome {
    for idx in 0..100u64 {
        let m = 5 + (idx as usize * 7) % 46;
        let (_, inst) = synthetic(m, 1000 + idx);
        let greedy = greedy_cover(&inst);
        match solve_satisfy(&inst, &[], Budget::unlimited()) {
            SatOutcome::Found(c) => ensure(c.taken == greedy.taken, || format!("instance {idx} (m={m}): {:?} != greedy {:?}", c.taken, greedy.taken))?,
            other => return Err(format!("instance {idx} (m={m}): {other:?}")),
        }
    }
    Ok("100 instances with m in 5..=50: first cover equals the greedy cover".into())
}

/// 4. Part areas add up to the covered area; parts do not overlap.
fn geometric_conservation() -> Outcome {
    let mut worst_rel = 0.0f64;
    let mut worst_time = Duration::ZERO;
    let mut instances = 0;
    for seed in 0..10u64 {
        for images in [10usize, 30] {
            let raw = generate_synthetic(&SyntheticConfig { images, seed, ..Default::default() }).unwrap();
            let start = Instant::now();
            let (inst, report) = discretize(&raw).map_err(|e| e.to_string())?;
            let elapsed = start.elapsed();
            if images == 30 {
                worst_time = worst_time.max(elapsed);
            }
            let parts = inst.provenance.as_ref().unwrap();
            let geometric: f64 = parts.iter().map(PolygonSet::area).sum();
            let clipped: Vec<PolygonSet> = raw.images.iter().map(|i| geometry::clip(&i.footprint, &raw.aoi)).collect();
            let union = geometry::union_area(&clipped);
            let rel = (geometric - union).abs() / union;
            worst_rel = worst_rel.max(rel);
            ensure(rel <= 1e-6, || format!("seed {seed}, {images} images: relative error {rel:e}"))?;
            let rounded = inst.total_area() as f64;
            ensure((rounded - report.covered_area).abs() <= inst.n() as f64, || format!("seed {seed}: rounded areas off by more than n"))?;
            for a in 0..parts.len() {
                for b in a + 1..parts.len() {
                    let (Some(ba), Some(bb)) = (parts[a].bbox(), parts[b].bbox()) else { continue };
                    if ba.overlaps(&bb) {
                        let overlap = geometry::intersection_area(&parts[a], &parts[b]);
                        ensure(overlap < SLIVER_AREA, || format!("seed {seed}: parts {} and {} overlap by {overlap}", a + 1, b + 1))?;
                    }
                }
            }
            instances += 1;
        }
    }
    ensure(worst_time < Duration::from_secs(1), || format!("30-image discretisation took {worst_time:?}"))?;
    Ok(format!(
        "{instances} instances: worst relative area error {worst_rel:.1e}, parts disjoint, slowest 30-image run {:.0} ms",
        worst_time.as_secs_f64() * 1000.0
    ))
}

/// 5. Cloud allocation overshoots by less than one part and is reproducible.
fn cloud_allocation() -> Outcome {
    let mut images = 0;
    for seed in 0..10u64 {
        let raw = generate_synthetic(&SyntheticConfig { images: 30, seed, cloud: 0..=100, ..Default::default() }).unwrap();
        let (inst, _) = discretize(&raw).map_err(|e| e.to_string())?;
        let (a, _) = assign_clouds(&inst, &raw, seed).map_err(|e| e.to_string())?;
        let (b, _) = assign_clouds(&inst, &raw, seed).map_err(|e| e.to_string())?;
        ensure(a.to_json() == b.to_json(), || format!("seed {seed}: instance files differ between runs"))?;
        for (img, rec) in a.images.iter().zip(&raw.images) {
            let total: u64 = img.parts.iter().map(|&k| inst.areas[k]).sum();
            let max_part = img.parts.iter().map(|&k| inst.areas[k]).max().unwrap_or(0);
            let cloudy: u64 = img.cloudy.iter().map(|&k| inst.areas[k]).sum();
            let target = rec.cloud_cover_pct as f64 / 100.0 * total as f64;
            let ok = cloudy as f64 >= target && ((cloudy as f64) < target + max_part as f64 || (rec.cloud_cover_pct == 0 && cloudy == 0));
            ensure(ok, || format!("seed {seed}, {}: cloudy {cloudy} target {target} max part {max_part}", img.id))?;
            images += 1;
        }
    }
    Ok(format!("{images} images within [target, target + max part area); byte-identical reruns"))
}

/// 6. Exact hypervolume against Monte Carlo estimates.
fn hypervolume_correctness() -> Outcome {
    let single = hypervolume(&[ObjectiveVector([1, 1, 1, 1])], ObjectiveVector([3, 3, 3, 3])).map_err(|e| e.to_string())?;
    ensure(single == 16.0, || format!("single point: {single} != 16"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let reference = [100.0; 4];
    let samples = 10_000_000u64;
    let mut worst = 0.0f64;
    for front_idx in 0..20 {
        let size = rng.gen_range(1..=20);
        let mut pts: Vec<Vec<f64>> = Vec::new();
        while pts.len() < size {
            // Points near the simplex x1+..+x4 = 160 are rarely dominated.
            let raw: Vec<f64> = (0..4).map(|_| rng.gen_range(1.0..99.0)).collect();
            let s: f64 = raw.iter().sum();
            let p: Vec<f64> = raw.iter().map(|v| (v * 160.0 / s).clamp(0.0, 99.0).round()).collect();
            let dominated = pts.iter().any(|q| q.iter().zip(&p).all(|(a, b)| a <= b));
            if !dominated {
                pts.retain(|q| !p.iter().zip(q).all(|(a, b)| a <= b));
                pts.push(p);
            }
        }
        let exact = hypervolume_points(&pts, &reference);
        let mut hits = 0u64;
        for _ in 0..samples {
            let x: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..100.0));
            if pts.iter().any(|p| p.iter().zip(&x).all(|(a, b)| a <= b)) {
                hits += 1;
            }
        }
        let estimate = hits as f64 / samples as f64 * 1e8;
        let rel = (exact - estimate).abs() / exact;
        worst = worst.max(rel);
        ensure(rel <= 0.01, || format!("front {front_idx}: exact {exact} vs Monte Carlo {estimate} ({:.3}%)", rel * 100.0))?;
    }
    Ok(format!("(1,1,1,1) vs (3,3,3,3) = 16; 20 fronts within {:.3}% of 1e7-sample estimates (limit 1%)", worst * 100.0))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mosaic-select"))
}

fn pipe(args: &[&str], input: &[u8]) -> Result<Vec<u8>, String> {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    child.stdin.take().unwrap().write_all(input).map_err(|e| e.to_string())?;
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

/// 7. A 200-image instance yields at least one front point within 60 s.
fn scale_smoke() -> Outcome {
    let raw = pipe(&["generate", "--images", "200", "--seed", "7"], b"")?;
    let start = Instant::now();
    let inst = pipe(&["preprocess", "--cloud-seed", "7"], &raw)?;
    let pre = start.elapsed();
    let start = Instant::now();
    let front = pipe(&["solve", "--algorithm", "gavanelli", "--budget-ms", "60000"], &inst)?;
    let solve = start.elapsed();
    let file = FrontFile::from_json(&String::from_utf8_lossy(&front)).map_err(|e| e.to_string())?;
    let parts = DiscreteInstance::from_json(&String::from_utf8_lossy(&inst)).map_err(|e| e.to_string())?.n();
    ensure(!file.points.is_empty(), || "no front point".into())?;
    ensure(solve < Duration::from_secs(62), || format!("solve took {solve:?}"))?;
    Ok(format!(
        "200 images, {parts} parts: preprocess {:.1} s, {} front points ({:?}) in {:.1} s",
        pre.as_secs_f64(),
        file.points.len(),
        file.status,
        solve.as_secs_f64()
    ))
}

/// Counts the variables and cover rows of an LP file independently of the exporter.
fn lp_counts(text: &str) -> (usize, usize, usize, usize) {
    let binaries_start = text.find("\nBinaries\n").unwrap();
    let binaries: Vec<&str> = text[binaries_start + 10..].split_whitespace().take_while(|t| *t != "End").collect();
    let x = binaries.iter().filter(|b| b.starts_with("x_")).count();
    let z = binaries.iter().filter(|b| b.starts_with("z_")).count();
    let covers = text.lines().filter(|l| l.trim_start().starts_with("cover_")).count();
    (binaries.len(), x, z, covers)
}

/// 8. LP sizes match closed forms and emission is byte-stable.
fn lp_export() -> Outcome {
    let fixture = DiscreteInstance::from_json(
        r#"{"n": 3, "areas": [4, 5, 6], "images": [
            {"cost": 300, "resolution": 2500, "angle": 150, "parts": [1,2], "cloudy": [1]},
            {"cost": 500, "resolution": 900, "angle": 47, "parts": [2,3], "cloudy": [3]}]}"#,
    )
    .unwrap();
    let (_, synthetic_inst) = synthetic(12, 5);
    let mut summary = Vec::new();
    for (name, inst) in [("fixture", &fixture), ("synthetic", &synthetic_inst)] {
        let a = export_lp(inst, &LpOptions::single(Objective::Cost));
        let b = export_lp(inst, &LpOptions::single(Objective::Cost));
        ensure(a == b, || format!("{name}: repeated exports differ"))?;
        let (_, x, z, covers) = lp_counts(&a);
        let sum_l: usize = inst.images.iter().map(|i| i.parts.len()).sum();
        ensure(x == inst.m(), || format!("{name}: {x} image binaries, m = {}", inst.m()))?;
        ensure(covers == inst.n(), || format!("{name}: {covers} cover rows, n = {}", inst.n()))?;
        ensure(z == sum_l, || format!("{name}: {z} z-variables, expected {sum_l}"))?;
        summary.push(format!("{name}: m={x} x, n={covers} cover rows, {z} z"));
    }
    // Part 2 lies in both images: two z-variables summing to 1.
    let text = export_lp(&fixture, &LpOptions::single(Objective::Cost));
    ensure(text.contains("pick_2: z_2_1 + z_2_2 = 1"), || "fixture: shared part row missing".into())?;
    Ok(format!("{}; byte-identical reruns", summary.join("; ")))
}

/// 9. Scores relative to the best hypervolume.
fn score_metric() -> Outcome {
    let input = [("A".to_string(), 10.0), ("B".to_string(), 5.0)].into_iter().collect();
    let s = score(&input);
    ensure(s["A"] == 1.0 && s["B"] == 0.5, || format!("got {s:?}"))?;
    Ok("{A: 10, B: 5} -> {A: 1.0, B: 0.5}".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle front equality", oracle_front_equality),
        ("seven-part cloud example", fig3_fixture),
        ("greedy first solution", greedy_first_solution),
        ("geometric conservation", geometric_conservation),
        ("cloud allocation", cloud_allocation),
        ("hypervolume correctness", hypervolume_correctness),
        ("200-image smoke test", scale_smoke),
        ("LP export", lp_export),
        ("score metric", score_metric),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS - {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL - {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
