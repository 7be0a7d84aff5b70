use std::io::Write;

use hpclifford::clifford::{analyze as analyze_point, build_presentation, ModuliPoint};
use hpclifford::exactfield::{CycNum, FieldElem};
use hpclifford::heisenberg::{class_reps, simple_rep, HElem};
use hpclifford::moduli::{duality_map, orbit_with_elements, projective_fixed_points, quantum_points};
use hpclifford::Error;
use serde_json::{json, Value};

use crate::point::parse_point;
use crate::{Common, Failure, Format, PointArgs};

pub type CmdResult = std::result::Result<(), Failure>;

/// JSON goes through `Value` so keys come out sorted and re-parsing then
/// re-emitting is the identity.
pub fn emit_json(v: &Value) {
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn show(v: &[CycNum]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(" : "))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn abc_label(pt: &ModuliPoint) -> String {
    match pt.abc() {
        Some(abc) => format!("  [(A:B:C) = {}]", show(&abc)),
        None => String::new(),
    }
}

pub fn analyze(common: &Common, pa: &PointArgs) -> CmdResult {
    let pt = parse_point(common.p, &pa.point, pa.coords)?;
    let pres = build_presentation(&pt)?;
    let r = analyze_point(&pt, common.monomial_order(), &common.limits())?;
    let bp = &r.base_points;
    if common.format == Format::Json {
        emit_json(&json!({
            "p": r.p,
            "point": to_value(&pt.coords()),
            "degenerate": r.degenerate,
            "relations": pres.relations().len(),
            "dual_quadrics": r.dual_quadrics,
            "verdict": to_value(&r.verdict),
            "regular": r.regular,
            "hilbert_series": r.hilbert_series,
            "pure_powers": bp.pure_powers,
            "verified_points": to_value(&bp.verified_points),
            "points_certified": bp.points_certified,
            "discriminant": r.discriminant,
            "det_triviality": r.det_triviality,
        }));
        return Ok(());
    }
    println!("p = {}, point {}{}", r.p, pt, abc_label(&pt));
    println!(
        "presentation: {} generators, {} relations{}",
        r.p,
        pres.relations().len(),
        if r.degenerate { " (degenerate, a0 = 0)" } else { "" }
    );
    println!("dual quadrics:");
    for q in &r.dual_quadrics {
        println!("  {q}");
    }
    println!("base locus: {}", r.verdict);
    println!("hilbert series: {}", r.hilbert_series);
    if let Some(pp) = &bp.pure_powers {
        let parts: Vec<String> = pp.iter().enumerate().map(|(i, n)| format!("z{i}^{n}")).collect();
        println!("pure powers in LT(I): {}", parts.join(", "));
    }
    if !bp.verified_points.is_empty() {
        let tag = match bp.points_certified {
            Some(true) => " (all points)",
            Some(false) => " (incomplete)",
            None => "",
        };
        println!("verified points{tag}:");
        for v in &bp.verified_points {
            println!("  {}", show(v));
        }
    }
    println!("regular: {}", if r.regular { "yes" } else { "no" });
    if let Some(d) = &r.discriminant {
        println!("D(a,b) = {d}");
    }
    if let Some(t) = r.det_triviality {
        println!("det(M) invariant under H_p: {}", if t { "yes" } else { "no" });
    }
    Ok(())
}

pub fn quantum(common: &Common) -> CmdResult {
    let pts = quantum_points(common.p)?;
    let duality = if common.p == 5 {
        pts.iter().map(duality_map).collect::<hpclifford::Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    if common.format == Format::Json {
        let pairs: Vec<Value> = duality
            .iter()
            .map(|d| {
                json!({
                    "quantum_point": to_value(&d.quantum_point.coords()),
                    "hyperplane_normal": to_value(&d.hyperplane_normal),
                })
            })
            .collect();
        emit_json(&json!({
            "p": common.p,
            "points": pts.iter().map(|q| to_value(&q.coords())).collect::<Vec<_>>(),
            "duality": pairs,
        }));
        return Ok(());
    }
    println!("{} quantum points at p = {}:", pts.len(), common.p);
    for q in &pts {
        println!("  {q}{}", abc_label(q));
    }
    if !duality.is_empty() {
        println!("dual lines (normals in a-coordinates):");
        for d in &duality {
            println!("  {} -> {}", d.quantum_point, show(&d.hyperplane_normal));
        }
    }
    Ok(())
}

pub fn orbit(common: &Common, pa: &PointArgs) -> CmdResult {
    let pt = parse_point(common.p, &pa.point, pa.coords)?;
    let mut orb = orbit_with_elements(&pt)?;
    orb.sort_by(|x, y| x.0.cmp(&y.0));
    if common.format == Format::Json {
        emit_json(&json!({
            "p": common.p,
            "start": to_value(&pt.coords()),
            "orbit": orb.iter().map(|(q, _)| to_value(&q.coords())).collect::<Vec<_>>(),
            "elements": orb.iter().map(|(_, g)| g.to_string()).collect::<Vec<_>>(),
        }));
        return Ok(());
    }
    println!("orbit of {} at p = {}: {} points", pt, common.p, orb.len());
    for (q, g) in &orb {
        println!("  {q}  = {g} . start");
    }
    Ok(())
}

pub fn fixed_points(common: &Common, element: &str, rep: u32) -> CmdResult {
    let p = common.p;
    let exps = element
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse(format!("--element {element:?}: {e}")))?;
    let [a, b] = exps[..] else {
        return Err(Error::Arity { expected: 2, got: exps.len() }.into());
    };
    let g = HElem::new(p, 0, a, b);
    let r = simple_rep(p, rep)?;
    let pts = projective_fixed_points(&g, &r)?;
    if common.format == Format::Json {
        emit_json(&json!({
            "p": p,
            "element": g.to_string(),
            "rep": rep,
            "points": to_value(&pts),
        }));
        return Ok(());
    }
    println!("fixed points of {g} on P(V_{rep}), p = {p}: {}", pts.len());
    for v in &pts {
        println!("  {}", show(v));
    }
    Ok(())
}

pub fn char_series(common: &Common, pa: &PointArgs) -> CmdResult {
    let p = common.p;
    let pt = parse_point(p, &pa.point, pa.coords)?;
    let pres = build_presentation(&pt)?;
    let cs = pres.algebra().character_series(common.max_degree)?;
    let reps = class_reps(p);
    // central classes of a regular point: Ch(z^k, t) = 1/(1 - w^k t)^p
    let predicted = |g: &HElem, n: usize| {
        let dim = (0..p as u64 - 1).fold(1u64, |acc, i| acc * (n as u64 + 1 + i) / (i + 1));
        CycNum::from_int(p, dim as i64).mul(&CycNum::omega_pow(p, g.z as i64 * n as i64))
    };
    let rows: Vec<(String, bool, Vec<CycNum>, Option<bool>)> = reps
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let series = cs.class_series(i);
            let matches = g
                .is_central()
                .then(|| series.iter().enumerate().all(|(n, v)| *v == predicted(g, n)));
            (g.to_string(), g.is_central(), series, matches)
        })
        .collect();
    if common.format == Format::Json {
        let classes: Vec<Value> = rows
            .iter()
            .map(|(g, central, series, m)| {
                json!({
                    "class": g,
                    "central": central,
                    "series": to_value(series),
                    "matches_central_prediction": m,
                })
            })
            .collect();
        emit_json(&json!({
            "p": p,
            "point": to_value(&pt.coords()),
            "max_degree": common.max_degree,
            "classes": classes,
        }));
        return Ok(());
    }
    println!("character series at {pt}, p = {p}, degrees 0..={}", common.max_degree);
    for (g, _, series, m) in &rows {
        let vals: Vec<String> = series.iter().map(|v| v.to_string()).collect();
        let tag = match m {
            Some(true) => "  [= 1/(1 - w^k t)^p]",
            Some(false) => "  [differs from 1/(1 - w^k t)^p]",
            None => "",
        };
        println!("  {g:>10}: {}{tag}", vals.join(", "));
    }
    let nonzero = rows.iter().any(|(_, c, s, _)| !c && s.iter().skip(1).any(|v| !v.is_zero()));
    if !nonzero {
        println!("  all non-central classes vanish in positive degree");
    }
    Ok(())
}
