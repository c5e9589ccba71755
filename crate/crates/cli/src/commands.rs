use std::fs;
use std::io::Read;
use std::path::Path;

use qmarginal::catalog::{check_family, check_family_on, family, InequalityRecord, Spectra};
use qmarginal::chamber::{cubicle_arrangement, enumerate_chambers, extremal_edges, generate_from_edges, Arrangement};
use qmarginal::exact::{format_rational, parse_rational, Rational};
use qmarginal::plethysm::{decompose, gl_dimension, inner_approximation};
use qmarginal::schubert::{
    coeff_multi, edge_generation, fermi_edge_generation, generate_qubit_array, CoefficientFilter, GenerationOptions,
    Permutation, QubitModification, Substitution, TestSpectrum,
};
use qmarginal::verify::{equivalence_campaign, isospectrality_campaign, mc_verify, mc_verify_with_spectrum, witness_search};
use qmarginal::System;
use serde_json::json;

use crate::state::StateFile;
use crate::{Command, Emitter, Failure};

type Outcome = Result<bool, Failure>;
type Substituter = Box<dyn Fn(&[Vec<usize>]) -> Substitution>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn floats(s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| usage(format!("not a number: {x:?}"))))
        .collect()
}

fn rationals(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|x| parse_rational(x).ok_or_else(|| usage(format!("not a rational: {x:?}"))))
        .collect()
}

fn system(s: &str) -> Result<System, Failure> {
    s.parse().map_err(Failure::Lib)
}

fn perm(s: &str) -> Result<Permutation, Failure> {
    s.parse().map_err(Failure::Lib)
}

fn test_spectra(edge: &str) -> Result<Vec<TestSpectrum>, Failure> {
    edge.split(';').map(|site| Ok(TestSpectrum::new(rationals(site)?)?)).collect()
}

fn record_json(r: &InequalityRecord) -> serde_json::Value {
    let mut v = serde_json::to_value(r).expect("records serialize");
    v["text"] = json!(r.to_string());
    v
}

/// The spectra record emitted by `reduce`.
fn read_spectra_record(text: &str) -> Result<(Option<System>, Spectra), Failure> {
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let v: serde_json::Value = serde_json::from_str(line).map_err(|e| usage(format!("bad record: {e}")))?;
        if v["kind"] == "spectra" {
            let s: Spectra = serde_json::from_value(v.clone()).map_err(|e| usage(format!("bad spectra record: {e}")))?;
            let sys = v["system"].as_str().map(system).transpose()?;
            return Ok((sys, s));
        }
    }
    Err(usage("no spectra record in input"))
}

fn orders_at(arr: &Arrangement, tests: &[TestSpectrum], max_dim: usize) -> Result<Vec<Vec<Vec<usize>>>, Failure> {
    let chambers = enumerate_chambers(arr, max_dim)?;
    let orders = arr.orders_around(&chambers, &arr.point_of(tests)?)?;
    if orders.is_empty() {
        return Err(usage("the edge lies outside the arrangement's cone"));
    }
    Ok(orders)
}

fn filter(s: &str) -> Result<CoefficientFilter, Failure> {
    match s {
        "one" => Ok(CoefficientFilter::One),
        "odd" => Ok(CoefficientFilter::Odd),
        "nonzero" => Ok(CoefficientFilter::Nonzero),
        _ => Err(usage(format!("unknown filter {s:?}; use one, odd or nonzero"))),
    }
}

pub fn run(cmd: Command, out: &mut Emitter) -> Outcome {
    match cmd {
        Command::Reduce { state } => {
            let file: StateFile =
                serde_json::from_str(&read_input(&state)?).map_err(|e| usage(format!("bad state file: {e}")))?;
            let s = file.spectra()?;
            let mut v = serde_json::to_value(&s).expect("spectra serialize");
            v["system"] = json!(file.system.to_string());
            out.emit("spectra", v);
            Ok(true)
        }
        Command::Check { family: id, spectrum, global, input, system: sys, tol } => {
            let (from_file, s) = match input {
                Some(p) => read_spectra_record(&read_input(&p)?)?,
                None => {
                    if spectrum.is_empty() {
                        return Err(usage("give --spectrum or --input"));
                    }
                    let sites = spectrum.iter().map(|x| floats(x)).collect::<Result<Vec<_>, _>>()?;
                    (None, Spectra { sites, global: global.as_deref().map(floats).transpose()? })
                }
            };
            let sys = sys.as_deref().map(system).transpose()?.or(from_file);
            let report = match &sys {
                Some(sys) => check_family_on(&id, sys, &s, tol)?,
                None => check_family(&id, &s, tol)?,
            };
            for t in &report.transformations {
                out.emit("warning", json!({ "message": t }));
            }
            let ok = report.satisfied;
            out.emit("check", &report);
            Ok(ok)
        }
        Command::Coeff { perms, w, edge, particles } => {
            let us = perms.iter().map(|p| perm(p)).collect::<Result<Vec<_>, _>>()?;
            let w = perm(&w)?;
            let tests = test_spectra(&edge)?;
            let (arr, make): (Arrangement, Substituter) = match particles {
                Some(n) => {
                    if tests.len() != 1 || us.len() != 1 {
                        return Err(usage("fermionic coefficients take one --perm and one site in --edge"));
                    }
                    let r = tests[0].len();
                    (cubicle_arrangement(&System::fermion(r, n, false))?, Box::new(move |o| Substitution::from_subsets(r, o)))
                }
                None => {
                    let dims: Vec<usize> = tests.iter().map(TestSpectrum::len).collect();
                    let sub_dims = dims.clone();
                    (cubicle_arrangement(&System::tensor(&dims, true))?, Box::new(move |o| Substitution::from_tuples(&sub_dims, o)))
                }
            };
            for order in orders_at(&arr, &tests, qmarginal::chamber::DEFAULT_MAX_DIM)? {
                let c = coeff_multi(&us, &w, &make(&order))?;
                out.emit("coefficient", json!({ "order": order, "coefficient": c }));
            }
            Ok(true)
        }
        Command::Edges { system: sys, max_dim } => {
            let sys = system(&sys)?;
            let arr = cubicle_arrangement(&sys)?.reduced()?;
            let chambers = enumerate_chambers(&arr, max_dim)?;
            let edges = extremal_edges(&arr, &chambers);
            for e in &edges {
                out.emit("edge", json!({ "ray": e.0 }));
            }
            out.emit(
                "edges",
                json!({ "system": sys.to_string(), "count": edges.len(), "chambers": chambers.len(), "hyperplanes": arr.hyperplanes.len() }),
            );
            Ok(true)
        }
        Command::Generate { system: sys, edge, filter: f, max_length, qubit_rule, max_dim } => {
            let sys = system(&sys)?;
            let opts = GenerationOptions { max_length, filter: filter(&f)? };
            let records = match (qubit_rule, edge) {
                (Some(rule), Some(edge)) => {
                    if !(sys.is_qubit_array() && sys.is_mixed()) {
                        return Err(usage("--qubit-rule needs a mixed qubit array"));
                    }
                    let mode = match rule.as_str() {
                        "pruned" => QubitModification::Pruned,
                        "all" => QubitModification::All,
                        "none" => QubitModification::None,
                        _ => return Err(usage(format!("unknown qubit rule {rule:?}"))),
                    };
                    let a: Vec<Rational> = test_spectra(&edge)?.iter().map(|t| t.values()[0]).collect();
                    generate_qubit_array(&a, mode)?
                }
                (Some(_), None) => return Err(usage("--qubit-rule needs --edge")),
                (None, Some(edge)) => {
                    let tests = test_spectra(&edge)?;
                    let arr = cubicle_arrangement(&sys)?;
                    let mut all: Vec<InequalityRecord> = Vec::new();
                    for order in orders_at(&arr, &tests, max_dim)? {
                        let recs = match sys {
                            System::Fermion { n, .. } => fermi_edge_generation(&tests[0], n, &order, opts)?,
                            _ => edge_generation(&tests, &order, opts)?,
                        };
                        for r in recs {
                            if !all.iter().any(|o| o.same_constraint(&r)) {
                                all.push(r);
                            }
                        }
                    }
                    all
                }
                (None, None) => {
                    let arr = cubicle_arrangement(&sys)?;
                    generate_from_edges(&arr, &enumerate_chambers(&arr, max_dim)?, opts)?
                }
            };
            for r in &records {
                out.emit("inequality", record_json(r));
            }
            out.emit("generated", json!({ "system": sys.to_string(), "count": records.len() }));
            Ok(true)
        }
        Command::Plethysm { r, n, m } => {
            let d = decompose(r, n, m)?;
            for (l, c) in &d.components {
                out.emit("component", json!({ "diagram": l.rows(), "multiplicity": c, "dimension": gl_dimension(l, r) }));
            }
            out.emit(
                "plethysm",
                json!({ "r": r, "n": n, "m": m, "components": d.components.len(), "dimension": d.dimension(), "self_dual": d.is_self_dual() }),
            );
            Ok(true)
        }
        Command::Hull { r, n, max_m } => {
            let a = inner_approximation(r, n, max_m)?;
            let fmt = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
            for p in &a.points {
                out.emit("point", json!({ "spectrum": fmt(p) }));
            }
            for e in &a.hull.equalities {
                out.emit("equality", json!({ "coeffs": e.coeffs, "bound": e.bound }));
            }
            for (k, f) in a.hull.facets.iter().enumerate() {
                let matches: Vec<_> = a.matches.iter().filter(|m| m.facet == k).collect();
                out.emit("facet", json!({ "index": k, "coeffs": f.coeffs, "bound": f.bound, "matches": matches }));
            }
            out.emit(
                "hull",
                json!({ "r": r, "n": n, "max_m": max_m, "points": a.points.len(), "dim": a.hull.dim, "facets": a.hull.facets.len() }),
            );
            Ok(true)
        }
        Command::Verify { family: id, system: sys, formats, trials, seed, tol, global } => {
            if let Some(formats) = formats {
                let parsed = formats
                    .split(',')
                    .map(|f| match f.trim().split_once(['x', 'X']) {
                        Some((a, b)) => match (a.parse::<usize>(), b.parse::<usize>()) {
                            (Ok(a), Ok(b)) if a > 0 && b > 0 => Ok((a, b)),
                            _ => Err(usage(format!("bad format {f:?}"))),
                        },
                        None => Err(usage(format!("bad format {f:?}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let r = isospectrality_campaign(&parsed, trials, seed)?;
                let ok = r.max_discrepancy < 1e-10;
                out.emit("isospectrality", &r);
                return Ok(ok);
            }
            let (id, sys) = (id.expect("required by clap"), system(&sys.expect("required by clap"))?);
            family(&id)?;
            let r = match global {
                Some(g) => mc_verify_with_spectrum(&id, &sys, &floats(&g)?, trials, seed, tol)?,
                None => mc_verify(&id, &sys, trials, seed, tol)?,
            };
            let ok = r.violations == 0;
            out.emit("campaign", &r);
            Ok(ok)
        }
        Command::Equiv { a, b, system: sys, samples, seed } => {
            let sys = sys.as_deref().map(system).transpose()?;
            let r = equivalence_campaign(&a, &b, sys.as_ref(), samples, seed)?;
            let ok = r.disagreements == 0;
            out.emit("equivalence", &r);
            Ok(ok)
        }
        Command::Witness { system: sys, target, seed, restarts, iters, out: path } => {
            let sys = system(&sys)?;
            let targets = target.iter().map(|t| floats(t)).collect::<Result<Vec<_>, _>>()?;
            let w = witness_search(&targets, &sys, restarts, iters, seed)?;
            let mut v = json!({ "success": w.success, "residual": w.residual, "restarts": w.restarts, "spectra": w.spectra });
            if w.success {
                let file = StateFile::pure(sys, w.state()?.amplitudes(), Some(seed));
                if let Some(p) = path {
                    let text = serde_json::to_string(&file).expect("state serializes");
                    fs::write(&p, text + "\n").map_err(|e| usage(format!("{}: {e}", p.display())))?;
                }
                v["state"] = serde_json::to_value(&file).expect("state serializes");
            }
            out.emit("witness", v);
            Ok(w.success)
        }
    }
}
