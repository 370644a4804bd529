//! Output documents for each command and their text rendering.

use std::fmt::Write as _;

use serde_json::{json, Value};

use hsformal::atlas::{self, CriterionResult};
use hsformal::cohomology::{betti_table, find_nontrivial_massey};
use hsformal::descriptor::{ResolvedSpace, SpaceDescriptor};
use hsformal::formality::{decide, prepared_model, DecideOptions};
use hsformal::models::{biquotient_model, homogeneous_model};
use hsformal::{Error, MinimalPureModel, PureModel, Rational};

fn head(command: &str, desc: &SpaceDescriptor) -> Value {
    json!({
        "command": command,
        "descriptor": desc.to_string(),
        "dimension": desc.dimension(),
    })
}

fn pure_model(desc: &SpaceDescriptor) -> Result<PureModel, Error> {
    match desc.resolve()? {
        ResolvedSpace::Homogeneous { g, h, embedding } => homogeneous_model(&g, &h, &embedding),
        ResolvedSpace::Biquotient { g, k, left, right } => biquotient_model(&g, &k, &left, &right),
    }
}

fn minimal(desc: &SpaceDescriptor) -> Result<MinimalPureModel, Error> {
    Ok(prepared_model::<Rational>(desc, false)?.0)
}

fn model_value(m: &PureModel) -> Value {
    let gens = |list: &[hsformal::cdga::Generator]| -> Vec<Value> {
        list.iter().map(|g| json!({"name": g.name, "degree": g.degree})).collect()
    };
    let differentials: Vec<Value> = m
        .odd_generators()
        .iter()
        .map(|g| json!({"generator": g.name, "value": m.algebra.render(m.algebra.differential_of(g.id))}))
        .collect();
    json!({
        "even": gens(m.even_generators()),
        "odd": gens(m.odd_generators()),
        "differentials": differentials,
        "formal_dimension": m.formal_dimension(),
    })
}

pub fn model(desc: &SpaceDescriptor) -> Result<Value, Error> {
    let pure = pure_model(desc)?;
    let min = hsformal::models::minimize_pure(&pure)?;
    let mut doc = head("model", desc);
    doc["formal_dimension"] = json!(pure.formal_dimension());
    doc["model"] = model_value(&pure);
    doc["minimal_model"] = model_value(&min.model);
    doc["eliminated"] = json!(min.eliminated.iter().map(|(x, c)| json!([x, c])).collect::<Vec<_>>());
    Ok(doc)
}

pub fn betti(desc: &SpaceDescriptor, cap: Option<u32>) -> Result<Value, Error> {
    let min = minimal(desc)?;
    let fd = min.model.formal_dimension().max(0) as u32;
    let cap = cap.unwrap_or(fd);
    let alg = if cap > min.model.algebra.cap() { min.model.algebra.clone().with_cap(cap) } else { min.model.algebra };
    let table = betti_table(&alg, cap)?;
    let mut doc = head("betti", desc);
    doc["formal_dimension"] = json!(fd);
    doc["cap"] = json!(cap);
    doc["betti"] = json!(table.betti);
    doc["euler_characteristic"] = json!(table.euler_characteristic());
    doc["total_dimension"] = json!(table.total_dimension());
    Ok(doc)
}

fn criterion_value(c: &CriterionResult) -> Value {
    json!({
        "family": c.family,
        "applicable": c.applicable,
        "inequality_value": c.inequality_value.to_string(),
        "verdict": c.verdict.as_str(),
        "descriptor": c.descriptor.as_ref().map(|d| d.to_string()),
        "dimension": c.dimension,
        "top_homotopy": c.top_homotopy,
        "note": c.note,
    })
}

fn massey_value(m: &hsformal::MasseyResult, render: &dyn Fn(&hsformal::Element) -> String) -> Value {
    json!({
        "classes": m.classes.iter().map(|(d, e)| json!({"degree": d, "cocycle": render(e)})).collect::<Vec<_>>(),
        "degree": m.degree,
        "representative": render(&m.representative),
        "indeterminacy_dimension": m.indeterminacy_dimension,
        "nontrivial": m.nontrivial,
    })
}

pub fn formality(desc: &SpaceDescriptor, massey_confirm: bool) -> Result<Value, Error> {
    let options = DecideOptions { massey_confirm, ..DecideOptions::default() };
    let v = decide::<Rational>(desc, options)?;
    let w = &v.splitting;
    let massey = match &v.massey {
        Some(m) => {
            let min = prepared_model::<Rational>(desc, options.shrink)?.0;
            massey_value(m, &|e| min.model.algebra.render(e))
        }
        None => Value::Null,
    };
    let mut doc = head("formality", desc);
    doc["verdict"] = json!(if v.formal { "Formal" } else { "NonFormal" });
    doc["formal"] = json!(v.formal);
    doc["method"] = json!(v.method.as_str());
    doc["decided_space"] = json!(v.decided_space);
    doc["reductions"] = json!(v.reductions);
    doc["witness"] = json!({
        "closed": w.closed.iter().map(|c| json!({"name": c.name, "degree": c.degree, "representative": c.rendered})).collect::<Vec<_>>(),
        "sphere_degrees": w.sphere_degrees(),
        "kept": w.kept,
        "f0_even_count": w.f0_even_count,
        "f0_odd_count": w.f0_odd_count,
        "f0_formal_dimension": w.f0_formal_dimension,
        "window": [w.window.0, w.window.1],
        "window_check_passed": w.window_check_passed,
    });
    doc["massey"] = massey;
    doc["criteria"] = json!(v.criteria.iter().map(criterion_value).collect::<Vec<_>>());
    Ok(doc)
}

pub fn massey(desc: &SpaceDescriptor, cap: Option<u32>) -> Result<Value, Error> {
    let min = minimal(desc)?;
    let alg = &min.model.algebra;
    let fd = min.model.formal_dimension().max(0) as u32;
    let top = cap.unwrap_or(fd);
    let table = betti_table(alg, fd.max(top).min(alg.cap()))?;
    let found = find_nontrivial_massey(alg, &table, top)?;
    let mut doc = head("massey", desc);
    doc["formal_dimension"] = json!(fd);
    doc["max_degree"] = json!(top);
    doc["massey"] = match &found {
        Some(m) => massey_value(m, &|e| alg.render(e)),
        None => Value::Null,
    };
    Ok(doc)
}

pub fn criteria(desc: &SpaceDescriptor) -> Result<Value, Error> {
    desc.resolve()?;
    let mut doc = head("criteria", desc);
    doc["criteria"] = json!(atlas::criteria_for(desc).iter().map(criterion_value).collect::<Vec<_>>());
    Ok(doc)
}

pub fn scan(from: i64, to: i64) -> Result<Value, Error> {
    if from > to || from < 1 {
        return Err(Error::InvalidParameters(format!("empty or non-positive range {from}..{to}")));
    }
    let entries: Vec<Value> = (from..=to)
        .map(|d| match atlas::scan_dimension(d) {
            Some(hit) => json!({
                "dimension": d,
                "series": hit.spec.id.key(),
                "p": hit.spec.p,
                "k": hit.spec.k,
                "n": hit.spec.n,
                "descriptor": hit.descriptor.to_string(),
            }),
            None => json!({"dimension": d, "series": Value::Null}),
        })
        .collect();
    let missing = entries.iter().filter(|e| e["series"].is_null()).count();
    Ok(json!({
        "command": "scan-dimensions",
        "from": from,
        "to": to,
        "entries": entries,
        "missing": missing,
    }))
}

/// Plain-text rendering of a document.
pub fn text(doc: &Value) -> String {
    let mut out = String::new();
    let s = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if let Some(d) = doc.get("descriptor") {
        let _ = writeln!(out, "space {}", s(d));
        let _ = writeln!(out, "dimension {}", s(&doc["dimension"]));
    }
    match doc["command"].as_str().unwrap_or_default() {
        "model" => {
            for (title, key) in [("model", "model"), ("minimal model", "minimal_model")] {
                let m = &doc[key];
                let _ = writeln!(out, "{title} (formal dimension {})", s(&m["formal_dimension"]));
                for parity in ["even", "odd"] {
                    for g in m[parity].as_array().into_iter().flatten() {
                        let _ = writeln!(out, "  {parity} {} {}", s(&g["name"]), s(&g["degree"]));
                    }
                }
                for d in m["differentials"].as_array().into_iter().flatten() {
                    let _ = writeln!(out, "  d {} = {}", s(&d["generator"]), s(&d["value"]));
                }
            }
        }
        "betti" => {
            let _ = writeln!(out, "betti {}", s(&doc["betti"]));
            let _ = writeln!(out, "euler characteristic {}", s(&doc["euler_characteristic"]));
        }
        "formality" => {
            let _ = writeln!(out, "verdict {} ({})", s(&doc["verdict"]), s(&doc["method"]));
            if doc["decided_space"] != doc["descriptor"] {
                let _ = writeln!(out, "decided on {}", s(&doc["decided_space"]));
            }
            for r in doc["reductions"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "  {}", s(r));
            }
            let w = &doc["witness"];
            for c in w["closed"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "closed {} in degree {}: {}", s(&c["name"]), s(&c["degree"]), s(&c["representative"]));
            }
            let _ = writeln!(out, "kept {}", s(&w["kept"]));
            let _ = writeln!(out, "window {} passed {}", s(&w["window"]), s(&w["window_check_passed"]));
            if !doc["massey"].is_null() {
                let _ = writeln!(out, "massey product in degree {}", s(&doc["massey"]["degree"]));
            }
            criteria_lines(&mut out, &doc["criteria"]);
        }
        "massey" => match doc["massey"].is_null() {
            true => {
                let _ = writeln!(out, "no nontrivial triple product up to degree {}", s(&doc["max_degree"]));
            }
            false => {
                let m = &doc["massey"];
                let classes: Vec<String> = m["classes"].as_array().into_iter().flatten().map(|c| s(&c["cocycle"])).collect();
                let _ = writeln!(out, "<{}> is nontrivial in degree {}", classes.join(", "), s(&m["degree"]));
                let _ = writeln!(out, "representative {}", s(&m["representative"]));
            }
        },
        "criteria" => criteria_lines(&mut out, &doc["criteria"]),
        "scan-dimensions" => {
            for e in doc["entries"].as_array().into_iter().flatten() {
                match e["descriptor"].as_str() {
                    Some(d) => {
                        let _ = writeln!(out, "{} {} {}", s(&e["dimension"]), s(&e["series"]), d);
                    }
                    None => {
                        let _ = writeln!(out, "{} none", s(&e["dimension"]));
                    }
                }
            }
        }
        _ => {}
    }
    if let Some(t) = doc.get("timings") {
        let _ = writeln!(out, "time {:.1} ms", t["total_ms"].as_f64().unwrap_or_default());
    }
    out
}

fn criteria_lines(out: &mut String, list: &Value) {
    let list = list.as_array().cloned().unwrap_or_default();
    if list.is_empty() {
        let _ = writeln!(out, "no closed-form criterion applies");
    }
    for c in list {
        let _ = writeln!(
            out,
            "criterion {}: {} (value {})",
            c["family"].as_str().unwrap_or_default(),
            c["verdict"].as_str().unwrap_or_default(),
            c["inequality_value"].as_str().unwrap_or_default()
        );
    }
}
