use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use stablenorm::cover::{classify_curve, orientation_cover, pushforward_rank_on_e1};
use stablenorm::polyconstruct::{
    compare_on_span, normalize_lengths, parse_prescription, penalize_outside, prescription_text, Certificate,
};
use stablenorm::stablenorm::{sample_classes, unit_ball_with_cap, walk_labels, NormBall, NormContext};
use stablenorm::{homology_h1, intersection_form, parse_surface, rational, svg, ChainVector, SurfaceComplex};

use crate::output::{self, chain, chain_text, emit, matrix, pretty, rat, rats};
use crate::{Command, Common};

fn load(path: &Path) -> Result<SurfaceComplex> {
    let text = output::read(path)?;
    parse_surface(&text).with_context(|| format!("in {}", path.display()))
}

/// Emits JSON or the text summary according to `--json`.
fn finish(common: &Common, value: Value, text: String) -> Result<()> {
    if common.json {
        emit(common.output.as_deref(), &pretty(&value))
    } else {
        emit(common.output.as_deref(), &text)
    }
}

fn ball_of(ctx: &NormContext, cap: usize) -> Result<NormBall> {
    Ok(unit_ball_with_cap(ctx, cap)?)
}

/// Runs one subcommand. `Ok(false)` means a verification failed.
pub fn run(command: Command) -> Result<bool> {
    match command {
        Command::Info(common) => info(&common).map(|_| true),
        Command::Homology(common) => homology(&common).map(|_| true),
        Command::Cover(common) => cover(&common).map(|_| true),
        Command::Classify { common, cycle } => classify(&common, &cycle).map(|_| true),
        Command::Norm { common, class } => norm(&common, &class).map(|_| true),
        Command::Ball { common, cap_circuits, svg } => ball(&common, cap_circuits, svg.as_deref()).map(|_| true),
        Command::Flat { common, class, cap_circuits } => flat(&common, &class, cap_circuits).map(|_| true),
        Command::Dual { common, covector, cap_circuits } => dual(&common, &covector, cap_circuits).map(|_| true),
        Command::Construct { common, max_escalations, certificate } => {
            construct(&common, max_escalations, certificate.as_deref()).map(|_| true)
        }
        Command::Verify { common, certificate, cap_circuits } => verify(&common, certificate.as_deref(), cap_circuits),
    }
}

fn info(common: &Common) -> Result<()> {
    let s = load(&common.file)?;
    let text = format!(
        "surface {}\nvertices {}\nedges {}\nfaces {}\neuler characteristic {}\norientable {}\n",
        s.name(),
        s.vertex_count(),
        s.edge_count(),
        s.face_count(),
        s.euler_characteristic(),
        if s.is_orientable() { "yes" } else { "no" },
    );
    finish(common, output::surface_json(&s), text)
}

fn homology(common: &Common) -> Result<()> {
    let s = load(&common.file)?;
    let h = homology_h1(&s);
    let basis: Vec<Value> = h.basis_cycles.iter().map(|c| chain(&s, c)).collect();
    let mut value = json!({ "rank": h.free_rank, "torsion": h.torsion, "basis": basis });
    let mut text = format!("rank {}\ntorsion {:?}\n", h.free_rank, h.torsion);
    for (i, c) in h.basis_cycles.iter().enumerate() {
        text.push_str(&format!("basis {} {}\n", i + 1, chain_text(&s, c)));
    }
    if s.is_orientable() {
        let form = intersection_form(&s)?;
        value["intersection_form"] = json!(form.matrix);
        for row in &form.matrix {
            text.push_str(&format!("form {}\n", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")));
        }
    }
    finish(common, value, text)
}

fn cover(common: &Common) -> Result<()> {
    let s = load(&common.file)?;
    let d = orientation_cover(&s)?;
    if !common.json {
        return emit(common.output.as_deref(), &d.to_text());
    }
    let value = json!({
        "base": output::surface_json(&d.base),
        "total": output::surface_json(&d.total),
        "total_text": d.total.to_text(),
        "total_rank": d.total_homology.free_rank,
        "base_rank": d.base_homology.free_rank,
        "e1": matrix(&d.e1_basis),
        "e_minus1": matrix(&d.em1_basis),
        "involution": matrix(&d.i_star),
        "pushforward": matrix(&d.pi_star),
        "pushforward_rank_on_e1": pushforward_rank_on_e1(&d),
        "lagrangian": d.check_lagrangian()?,
        "edge_projection": d.edge_projection,
        "edge_involution": d.edge_involution,
    });
    emit(common.output.as_deref(), &pretty(&value))
}

fn classify(common: &Common, cycle: &str) -> Result<()> {
    let s = load(&common.file)?;
    let walk = s.parse_walk(cycle)?;
    if !s.is_closed_walk(&walk) {
        bail!("`{cycle}` is not a closed walk");
    }
    let d = orientation_cover(&s)?;
    let c = classify_curve(&d, &ChainVector::from_tokens(s.edge_count(), &walk))?;
    let lifts = d.lift_cycle(&walk)?;
    let value = json!({
        "cycle": walk_labels(&s, &walk),
        "classification": c,
        "lift_components": lifts.iter().map(|l| walk_labels(&d.total, l)).collect::<Vec<_>>(),
    });
    let text = format!(
        "{}\ntype {}\nlifts {}\n",
        serde_json::to_value(c.sidedness)?.as_str().unwrap_or_default(),
        serde_json::to_value(c.curve_type)?.as_str().unwrap_or_default(),
        lifts.len(),
    );
    finish(common, value, text)
}

fn norm(common: &Common, class: &str) -> Result<()> {
    let s = load(&common.file)?;
    let h = output::parse_vector("class", class)?;
    let ctx = NormContext::new(&s);
    let n = ctx.stable_norm(&h)?;
    let pieces = ctx.minimizing_cycles(&h)?;
    let cycles: Vec<Value> =
        pieces.iter().map(|p| json!({ "walk": walk_labels(&s, &p.walk), "weight": rat(&p.weight) })).collect();
    let value = json!({
        "class": rats(&h),
        "value": rat(&n.value),
        "minimizer": chain(&s, &n.minimizer),
        "covector": rats(&n.covector),
        "cycles": cycles,
    });
    let mut text = format!("{}\nminimizer {}\n", rational::format(&n.value), chain_text(&s, &n.minimizer));
    for p in &pieces {
        text.push_str(&format!("cycle {} x {}\n", rational::format(&p.weight), walk_labels(&s, &p.walk).join(" ")));
    }
    finish(common, value, text)
}

fn ball(common: &Common, cap: usize, svg_path: Option<&Path>) -> Result<()> {
    let s = load(&common.file)?;
    let b = ball_of(&NormContext::new(&s), cap)?;
    if let Some(path) = svg_path {
        output::write(path, &svg::render(&b, 0, 1)?)?;
    }
    let mut text =
        format!("dim {}\nvertices {}\nfacets {}\n", b.dim(), b.polytope.vertices.len(), b.polytope.facets.len());
    for (v, walk) in b.polytope.vertices.iter().zip(&b.provenance) {
        text.push_str(&format!("vertex {} from {}\n", rational::format_vector(v), walk_labels(&s, walk).join(" ")));
    }
    for f in &b.polytope.facets {
        text.push_str(&format!("facet {}\n", rational::format_vector(f)));
    }
    finish(common, serde_json::to_value(b.to_json(&s))?, text)
}

fn flat(common: &Common, class: &str, cap: usize) -> Result<()> {
    let s = load(&common.file)?;
    let h = output::parse_vector("class", class)?;
    let b = ball_of(&NormContext::new(&s), cap)?;
    let f = b.flat_of(&h)?;
    let vertices: Vec<Vec<_>> = f.vertices.iter().map(|&j| b.polytope.vertices[j].clone()).collect();
    let value = json!({ "dimension": f.dimension, "covector": rats(&f.covector), "vertices": matrix(&vertices) });
    let mut text = format!("dimension {}\ncovector {}\n", f.dimension, rational::format_vector(&f.covector));
    for v in &vertices {
        text.push_str(&format!("vertex {}\n", rational::format_vector(v)));
    }
    finish(common, value, text)
}

fn dual(common: &Common, covector: &str, cap: usize) -> Result<()> {
    let s = load(&common.file)?;
    let c = output::parse_vector("covector", covector)?;
    let b = ball_of(&NormContext::new(&s), cap)?;
    let d = b.dual_norm(&c)?;
    finish(common, json!({ "covector": rats(&c), "value": rat(&d) }), format!("{}\n", rational::format(&d)))
}

fn construct(common: &Common, max_escalations: usize, certificate: Option<&Path>) -> Result<()> {
    let text = output::read(&common.file)?;
    let problem = parse_prescription(&text).with_context(|| format!("in {}", common.file.display()))?;
    let (surface, cert) = penalize_outside(&normalize_lengths(&problem), &problem, max_escalations)?;
    let cert_json = pretty(&serde_json::to_value(&cert)?);
    if let Some(path) = certificate {
        output::write(path, &cert_json)?;
    }
    if common.json {
        emit(common.output.as_deref(), &cert_json)
    } else {
        emit(common.output.as_deref(), &prescription_text(&surface, &problem))?;
        if common.output.is_some() {
            println!("certified after {} escalations, factor {}", cert.rounds, rational::format(&cert.factor));
        }
        Ok(())
    }
}

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn verify(common: &Common, certificate: Option<&Path>, cap: usize) -> Result<bool> {
    let text = output::read(&common.file)?;
    let has_prescription = text.lines().any(|l| l.trim_start().starts_with("prescribe"));
    let checks = if has_prescription {
        verify_prescription_file(&text, certificate)?
    } else {
        if certificate.is_some() {
            bail!("--certificate needs a file with `prescribe` lines");
        }
        verify_surface(&parse_surface(&text)?, cap)?
    };
    let passed = checks.iter().all(|c| c.passed);
    let value = json!({
        "passed": passed,
        "checks": checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
    });
    let mut summary = String::new();
    for c in &checks {
        summary.push_str(&format!("{} {} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    finish(common, value, summary)?;
    Ok(passed)
}

fn verify_prescription_file(text: &str, certificate: Option<&Path>) -> Result<Vec<Check>> {
    let problem = parse_prescription(text)?;
    let surface = problem.surface().clone();
    let pinned = normalize_lengths(&problem) == surface;
    let cmp = compare_on_span(&surface, &problem)?;
    let mut checks = vec![
        Check { name: "lengths", passed: pinned, detail: "cycle lengths equal their targets".into() },
        Check {
            name: "span-ball",
            passed: cmp.ball_vertices == cmp.target_vertices,
            detail: format!("{} ball vertices, {} prescribed", cmp.ball_vertices.len(), cmp.target_vertices.len()),
        },
        Check {
            name: "exposed",
            passed: cmp.exposed.iter().all(|&x| x),
            detail: format!(
                "{} of {} curves are vertices",
                cmp.exposed.iter().filter(|&&x| x).count(),
                cmp.exposed.len()
            ),
        },
    ];
    if let Some(path) = certificate {
        let cert: Certificate = serde_json::from_str(&output::read(path)?)
            .map_err(|e| crate::UsageError(format!("{}: {e}", path.display())))?;
        let same_weights = cert.weights == surface.weights();
        checks.push(Check {
            name: "certificate",
            passed: same_weights && cert.verify(&problem),
            detail: format!("{} sign vectors, factor {}", cert.checks.len(), rational::format(&cert.factor)),
        });
    }
    Ok(checks)
}

fn verify_surface(s: &SurfaceComplex, cap: usize) -> Result<Vec<Check>> {
    let ctx = NormContext::new(s);
    if ctx.rank() == 0 {
        return Ok(vec![Check { name: "homology", passed: true, detail: "rank 0, nothing to check".into() }]);
    }
    let b = ball_of(&ctx, cap)?;
    let grid = sample_classes(ctx.rank(), 60);
    let mut gauge_ok = true;
    let mut symmetric = true;
    let mut unique_flat = true;
    for h in &grid {
        let n = ctx.stable_norm(h)?.value;
        gauge_ok &= b.gauge(h) == n;
        let neg: Vec<_> = h.iter().map(|x| -x).collect();
        symmetric &= ctx.stable_norm(&neg)?.value == n;
        let unit: Vec<_> = h.iter().map(|x| x / &n).collect();
        let faces = b.faces_with_interior_point(&unit);
        unique_flat &= faces.len() == 1 && faces[0] == b.flat_of(&unit)?.vertices;
    }
    let mut provenance = true;
    for walk in &b.provenance {
        let c = stablenorm::circuits::circuit_chain(s, walk);
        provenance &= ctx.stable_norm(&ctx.class_of(&c))?.value == s.mass(&c);
    }
    let lattice = b.face_lattice_report();
    Ok(vec![
        Check { name: "lp-equals-gauge", passed: gauge_ok, detail: format!("{} classes", grid.len()) },
        Check { name: "symmetry", passed: symmetric && lattice.symmetric, detail: "norm and ball".into() },
        Check { name: "provenance", passed: provenance, detail: format!("{} vertices", b.provenance.len()) },
        Check {
            name: "flat-extension",
            passed: lattice.extension_failures == 0,
            detail: format!("{} face pairs", lattice.extension_pairs),
        },
        Check { name: "unique-flat", passed: unique_flat, detail: format!("{} sphere points", grid.len()) },
    ])
}
