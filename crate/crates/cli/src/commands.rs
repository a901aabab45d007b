use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::{anyhow, bail, Context, Result};
use gridclass::decide::{is_basis_element, ChiralityEvidence, DecidePlan};
use gridclass::gridding::{count_griddings, enumerate_griddings_part};
use gridclass::{
    antichain_family, basis_search, bicyclic_counterexample, build_coil, check_antichain,
    check_labelled_coil_antichain, classify, coil_type, contains, cycles, decode_indivisible, decompose, double,
    encode_indivisible, end_inflate, end_inflated_survey, longest_coil_contained, make_gridded, member, pmm_sequences,
    row_column_graph, unique_gridding_probe, Answer, Chirality, CoilCertificate, CycleDescriptor, GriddedPerm,
    GriddingMatrix, Perm,
};
use serde_json::{json, Value};

use crate::args::{parse_gridding, parse_lengths, parse_perm, parse_type, CoilArgs, Command};
use crate::report::*;

pub fn run(command: &Command, jobs: usize) -> Result<Report> {
    match command {
        Command::Classify { matrix } => classify_cmd(matrix),
        Command::Pmm { matrix } => pmm_cmd(matrix),
        Command::Double { matrix } => double_cmd(matrix),
        Command::Member { matrix, perm } => member_cmd(matrix, perm),
        Command::Griddings { matrix, perm, count } => griddings_cmd(matrix, perm, *count, jobs),
        Command::Decompose { matrix, perm, gridding } => decompose_cmd(matrix, perm, gridding.as_deref()),
        Command::Coil { matrix, coil } => coil_cmd(matrix, coil, false),
        Command::Inflate { matrix, coil } => coil_cmd(matrix, coil, true),
        Command::LongestCoil { matrix, perm } => longest_cmd(matrix, perm),
        Command::Encode { matrix, perm, gridding } => encode_cmd(matrix, perm, gridding.as_deref()),
        Command::DecideLwqo { matrix, basis } => decide_cmd(matrix, basis, jobs),
        Command::Basis { matrix, max_len } => basis_cmd(matrix, *max_len),
        Command::Antichain { matrix, coil_type, k, lengths, start, chirality } => {
            antichain_cmd(matrix, coil_type.as_deref(), *k, lengths.as_deref(), *start, (*chirality).into())
        }
        Command::Counterexample { k, verify } => counterexample_cmd(*k, *verify),
        Command::ProbeUnique { matrix, lengths } => probe_cmd(matrix, lengths),
        Command::Survey { matrix, basis, max_len } => survey_cmd(matrix, basis, *max_len),
    }
}

fn read_matrix(path: &Path) -> Result<GriddingMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    text.parse::<GriddingMatrix>().with_context(|| format!("bad matrix in {}", path.display()))
}

fn with_signs(m: GriddingMatrix) -> Result<GriddingMatrix> {
    match pmm_sequences(&m) {
        Ok(pmm) => Ok(m.with_pmm(pmm)?),
        Err(cyc) => bail!("matrix has a negative cycle through {}; double it first", cells_text(&cyc.cells)),
    }
}

fn the_cycle(m: &GriddingMatrix) -> Result<CycleDescriptor> {
    let class = classify(m);
    if class != gridclass::MatrixClass::Cyclic {
        bail!("matrix is {}, not cyclic", class_name(class));
    }
    Ok(cycles(m)?.remove(0))
}

fn start_label(start: usize, cycle: &CycleDescriptor) -> Result<usize> {
    if start == 0 || start > cycle.len() {
        bail!("start label {start} must be between 1 and {}", cycle.len());
    }
    Ok(start - 1)
}

fn inputs(matrix: &Path, m: &GriddingMatrix, extra: Value) -> Value {
    let mut v = json!({ "matrix_file": matrix.display().to_string(), "matrix": matrix_inline(m) });
    if let (Value::Object(a), Value::Object(b)) = (&mut v, extra) {
        a.extend(b);
    }
    v
}

fn gridded_input(perm: &Perm, m: &GriddingMatrix, gridding: Option<&str>) -> Result<GriddedPerm> {
    match gridding {
        Some(s) => {
            let (v, h) = parse_gridding(s)?;
            Ok(make_gridded(perm, m, &v, &h)?)
        }
        None => member(perm, m).ok_or_else(|| anyhow!("{perm} is not in the grid class")),
    }
}

/// Applies `f` to every item on `jobs` threads; results keep item order.
fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.min(items.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                out.lock().expect("worker panicked")[i] = Some(r);
            });
        }
    });
    out.into_inner().expect("worker panicked").into_iter().map(|r| r.expect("every item ran")).collect()
}

fn classify_cmd(path: &Path) -> Result<Report> {
    let m = read_matrix(path)?;
    let mut r = Report::new("classify", inputs(path, &m, json!({})));
    let class = classify(&m);
    let comps: Vec<Value> = row_column_graph(&m)
        .components()
        .iter()
        .filter(|c| !c.cells.is_empty())
        .map(|c| {
            json!({
                "cols": one_based(&c.cols),
                "rows": one_based(&c.rows),
                "cells": cells(&c.cells),
                "cycles": c.cyclomatic(),
            })
        })
        .collect();
    r.line(class_name(class));
    for c in row_column_graph(&m).components().iter().filter(|c| !c.cells.is_empty()) {
        r.line(format!("component {}: {} independent cycle(s)", cells_text(&c.cells), c.cyclomatic()));
    }
    r.result = json!({ "class": class_name(class), "components": comps });
    Ok(r)
}

fn pmm_cmd(path: &Path) -> Result<Report> {
    let m = read_matrix(path)?;
    let mut r = Report::new("pmm", inputs(path, &m, json!({})));
    match pmm_sequences(&m) {
        Ok(pmm) => {
            r.line(format!("columns: {:?}", pmm.cols));
            r.line(format!("rows: {:?}", pmm.rows));
            r.result = json!({ "pmm": true, "cols": pmm.cols, "rows": pmm.rows });
        }
        Err(cyc) => {
            r.line(format!("negative cycle: {}", cells_text(&cyc.cells)));
            r.result = json!({ "pmm": false });
            r.witnesses = json!({ "negative_cycle": cells(&cyc.cells) });
        }
    }
    Ok(r)
}

fn double_cmd(path: &Path) -> Result<Report> {
    let m = read_matrix(path)?;
    let mut r = Report::new("double", inputs(path, &m, json!({})));
    let d = double(&m);
    r.text.extend(d.to_string().lines().map(str::to_string));
    r.result = json!({ "matrix": matrix_inline(&d), "class": class_name(classify(&d)) });
    Ok(r)
}

fn member_cmd(path: &Path, perm: &str) -> Result<Report> {
    let m = read_matrix(path)?;
    let p = parse_perm(perm)?;
    let mut r = Report::new("member", inputs(path, &m, json!({ "perm": p.to_string() })));
    match member(&p, &m) {
        Some(g) => {
            r.line(format!("member  {}", gridded_text(&g)));
            r.result = json!({ "member": true });
            r.witnesses = json!({ "gridding": gridded(&g) });
        }
        None => {
            r.line("not a member");
            r.result = json!({ "member": false });
            r.exit = EXIT_NON_MEMBER;
        }
    }
    Ok(r)
}

fn griddings_cmd(path: &Path, perm: &str, count: bool, jobs: usize) -> Result<Report> {
    let m = read_matrix(path)?;
    let p = parse_perm(perm)?;
    let mut r = Report::new("griddings", inputs(path, &m, json!({ "perm": p.to_string(), "count": count })));
    let parts: Vec<usize> = (0..jobs).collect();
    if count {
        let n: usize = if jobs == 1 {
            count_griddings(&p, &m)
        } else {
            parallel_map(&parts, jobs, |&part| enumerate_griddings_part(&p, &m, part, jobs).len()).into_iter().sum()
        };
        r.line(n.to_string());
        r.result = json!({ "count": n });
    } else {
        let mut all: Vec<GriddedPerm> =
            parallel_map(&parts, jobs, |&part| enumerate_griddings_part(&p, &m, part, jobs))
                .into_iter()
                .flatten()
                .collect();
        all.sort();
        r.line(format!("{} gridding(s)", all.len()));
        for g in &all {
            r.line(gridded_text(g));
        }
        r.result = json!({ "count": all.len() });
        r.witnesses = json!({ "griddings": all.iter().map(gridded).collect::<Vec<_>>() });
    }
    Ok(r)
}

fn decompose_cmd(path: &Path, perm: &str, gridding: Option<&str>) -> Result<Report> {
    let m = with_signs(read_matrix(path)?)?;
    let p = parse_perm(perm)?;
    let g = gridded_input(&p, &m, gridding)?;
    let mut r = Report::new("decompose", inputs(path, &m, json!({ "perm": p.to_string(), "gridding": gridding })));
    let parts = decompose(&g)?;
    r.line(format!("{} indivisible part(s)", parts.len()));
    for q in &parts {
        r.line(format!("{}  {}", q.perm(), cells_text(q.cells())));
    }
    r.result = json!({
        "parts": parts.iter().map(|q| json!({ "perm": q.perm().to_string(), "cells": cells(q.cells()) })).collect::<Vec<_>>(),
    });
    r.witnesses = json!({ "gridding": gridded(&g) });
    Ok(r)
}

fn coil_json(g: &GriddedPerm, cert: &CoilCertificate) -> Value {
    let t = coil_type(cert);
    json!({
        "perm": g.perm().to_string(),
        "cells": cells(g.cells()),
        "gridding": cuts_text(g),
        "order": one_based(&cert.order),
        "type": [t.first + 1, t.second + 1, t.last + 1],
    })
}

fn coil_cmd(path: &Path, args: &CoilArgs, inflate: bool) -> Result<Report> {
    let m = with_signs(read_matrix(path)?)?;
    let cyc = the_cycle(&m)?;
    let start = start_label(args.start, &cyc)?;
    let chirality: Chirality = args.chirality.into();
    let name = if inflate { "inflate" } else { "coil" };
    let extra = json!({ "start": args.start, "chirality": chirality_name(chirality), "length": args.length });
    let mut r = Report::new(name, inputs(path, &m, extra));
    let (coil, cert) = build_coil(&m, &cyc, start, chirality, args.length)?;
    if inflate {
        let g = end_inflate(&coil, &cert)?;
        r.line(g.perm().to_string());
        r.line(cells_text(g.cells()));
        r.result = json!({ "perm": g.perm().to_string(), "cells": cells(g.cells()), "length": g.len() });
        r.witnesses = json!({ "coil": coil_json(&coil, &cert) });
    } else {
        r.line(coil.perm().to_string());
        r.line(cells_text(coil.cells()));
        r.result = coil_json(&coil, &cert);
        r.witnesses = json!({ "cycle": cycle(&cyc) });
    }
    Ok(r)
}

fn longest_cmd(path: &Path, perm: &str) -> Result<Report> {
    let m = read_matrix(path)?;
    let p = parse_perm(perm)?;
    let mut r = Report::new("longest-coil", inputs(path, &m, json!({ "perm": p.to_string() })));
    match longest_coil_contained(&p, &m)? {
        Some(best) => {
            let signed = with_signs(m.clone())?;
            let (coil, _) = build_coil(&signed, &best.cycle, best.start, best.chirality, best.length)?;
            let emb = contains(coil.perm(), &p).ok_or_else(|| anyhow!("coil vanished on rebuild"))?;
            r.line(format!(
                "{} (start {}, chirality {}): {}",
                best.length,
                best.start + 1,
                chirality_name(best.chirality),
                coil.perm()
            ));
            r.result = json!({
                "length": best.length,
                "start": best.start + 1,
                "chirality": chirality_name(best.chirality),
                "cycle": cycle(&best.cycle),
            });
            r.witnesses = json!({ "coil": coil.perm().to_string(), "embedding": one_based(&emb) });
        }
        None => {
            r.line("no coil");
            r.result = json!({ "length": null });
        }
    }
    Ok(r)
}

fn encode_cmd(path: &Path, perm: &str, gridding: Option<&str>) -> Result<Report> {
    let m = with_signs(read_matrix(path)?)?;
    let p = parse_perm(perm)?;
    let g = gridded_input(&p, &m, gridding)?;
    let mut r = Report::new("encode", inputs(path, &m, json!({ "perm": p.to_string(), "gridding": gridding })));
    let code = encode_indivisible(&g)?;
    let back = decode_indivisible(&code)?;
    r.line(format!("a = {}, b = {}", code.a, code.b));
    r.line(format!("body {}  {}", code.body.perm(), cells_text(code.body.cells())));
    r.line(format!("body matrix {}", matrix_inline(code.body.matrix())));
    r.line(format!("decodes back: {}", back == g));
    r.result = json!({
        "a": code.a,
        "b": code.b,
        "body": gridded(&code.body),
        "body_matrix": matrix_inline(code.body.matrix()),
        "box_cells": code.box_cells.iter().map(|&(n, c)| json!([cell(n), cell(c)])).collect::<Vec<_>>(),
        "round_trip": back == g,
    });
    r.witnesses = json!({ "gridding": gridded(&g) });
    Ok(r)
}

fn parse_basis(basis: &[String]) -> Result<Vec<Perm>> {
    basis.iter().map(|s| parse_perm(s)).collect()
}

fn decide_cmd(path: &Path, basis: &[String], jobs: usize) -> Result<Report> {
    let m = read_matrix(path)?;
    let b = parse_basis(basis)?;
    let shown: Vec<String> = b.iter().map(|x| x.to_string()).collect();
    let mut r = Report::new("decide-lwqo", inputs(path, &m, json!({ "basis": shown })));
    let plan = DecidePlan::new(&m, &b)?;
    let outcomes = parallel_map(plan.tasks(), jobs, |t| plan.run(t)).into_iter().collect::<Result<Vec<_>, _>>()?;
    let verdict = plan.resolve(&outcomes)?;
    if !verdict.replay() {
        bail!("verdict evidence failed to replay");
    }
    let answer = match verdict.answer {
        Answer::Lwqo => "LWQO",
        Answer::NotLwqo => "NOT_LWQO",
    };
    r.line(answer);
    if verdict.doubled {
        r.line("matrix doubled to remove a negative cycle");
    }
    for d in &verdict.dropped {
        r.line(format!("ignored basis element outside the class: {d}"));
    }
    let mut comps = Vec::new();
    for c in &verdict.components {
        let mut ev = Vec::new();
        for e in &c.evidence {
            match e {
                ChiralityEvidence::AllAvoid { chirality, length } => {
                    r.line(format!(
                        "cycle {}: every chirality {} coil of length {} avoids the basis",
                        cells_text(&c.cycle.cells),
                        chirality_name(*chirality),
                        length
                    ));
                    ev.push(json!({ "chirality": chirality_name(*chirality), "length": length, "avoids": true }));
                }
                ChiralityEvidence::Contains { chirality, start, length, basis_index, embedding } => {
                    r.line(format!(
                        "cycle {}: chirality {} coil from label {} of length {} contains {}",
                        cells_text(&c.cycle.cells),
                        chirality_name(*chirality),
                        start + 1,
                        length,
                        verdict.basis[*basis_index]
                    ));
                    ev.push(json!({
                        "chirality": chirality_name(*chirality),
                        "start": start + 1,
                        "length": length,
                        "avoids": false,
                        "basis_element": verdict.basis[*basis_index].to_string(),
                        "embedding": one_based(embedding),
                    }));
                }
            }
        }
        comps.push(json!({ "cycle": cycle(&c.cycle), "bound": c.bound, "blocks": c.blocks(), "evidence": ev }));
    }
    r.result = json!({
        "answer": answer,
        "doubled": verdict.doubled,
        "dropped": verdict.dropped.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    });
    r.witnesses = json!({ "matrix": matrix_inline(&verdict.matrix), "components": comps });
    if verdict.answer == Answer::NotLwqo {
        r.exit = EXIT_NOT_LWQO;
    }
    Ok(r)
}

fn basis_cmd(path: &Path, max_len: usize) -> Result<Report> {
    let m = read_matrix(path)?;
    let mut r = Report::new("basis", inputs(path, &m, json!({ "max_len": max_len })));
    let found = basis_search(&m, max_len)?;
    for b in &found {
        r.line(b.to_string());
    }
    r.result = json!({ "basis": found.iter().map(|b| b.to_string()).collect::<Vec<_>>() });
    Ok(r)
}

fn antichain_cmd(
    path: &Path,
    coil_type: Option<&str>,
    k: usize,
    lengths: Option<&str>,
    start: usize,
    chirality: Chirality,
) -> Result<Report> {
    let m = with_signs(read_matrix(path)?)?;
    match (coil_type, lengths) {
        (Some(t), None) => {
            let ty = parse_type(t)?;
            let extra = json!({ "type": t, "k": k });
            let mut r = Report::new("antichain", inputs(path, &m, extra));
            let fam = antichain_family(&m, ty, k)?;
            let perms: Vec<Perm> = fam.members.iter().map(|g| g.perm().clone()).collect();
            let ok = check_antichain(&perms);
            for q in &perms {
                r.line(format!("{}: {}", q.len(), q));
            }
            match ok {
                Ok(()) => r.line("antichain"),
                Err((i, j)) => r.line(format!("member {} is contained in member {}", i + 1, j + 1)),
            }
            r.result = json!({
                "antichain": ok.is_ok(),
                "lengths": perms.iter().map(|q| q.len()).collect::<Vec<_>>(),
            });
            r.witnesses = json!({ "members": perms.iter().map(|q| q.to_string()).collect::<Vec<_>>() });
            if let Err((i, j)) = ok {
                r.witnesses["comparable"] = json!([i + 1, j + 1]);
            }
            Ok(r)
        }
        (None, Some(ls)) => {
            let lens = parse_lengths(ls)?;
            let cyc = the_cycle(&m)?;
            let s = start_label(start, &cyc)?;
            let extra = json!({ "lengths": lens, "start": start, "chirality": chirality_name(chirality) });
            let mut r = Report::new("antichain", inputs(path, &m, extra));
            let ok = check_labelled_coil_antichain(&m, s, chirality, &lens)?;
            r.line(if ok { "labelled antichain" } else { "comparable pair found" });
            r.result = json!({ "labelled_antichain": ok });
            Ok(r)
        }
        _ => bail!("give exactly one of --type or --lengths"),
    }
}

fn counterexample_cmd(k: usize, verify: bool) -> Result<Report> {
    let (p, m5, n6) = bicyclic_counterexample(k)?;
    let mut r = Report::new("counterexample", json!({ "k": k, "verify": verify }));
    r.line(p.to_string());
    r.line(format!("M5 = {}", matrix_inline(&m5)));
    r.line(format!("N6 = {}", matrix_inline(&n6)));
    r.result = json!({ "perm": p.to_string(), "length": p.len(), "m5": matrix_inline(&m5), "n6": matrix_inline(&n6) });
    if verify {
        let in_m5 = is_basis_element(&p, &m5);
        let in_n6 = is_basis_element(&p, &n6);
        r.line(format!("basis element of Grid(M5): {in_m5}"));
        r.line(format!("basis element of Grid(N6): {in_n6}"));
        r.result["basis_element_m5"] = json!(in_m5);
        r.result["basis_element_n6"] = json!(in_n6);
    }
    Ok(r)
}

fn probe_cmd(path: &Path, lengths: &str) -> Result<Report> {
    let m = with_signs(read_matrix(path)?)?;
    let lens = parse_lengths(lengths)?;
    let mut r = Report::new("probe-unique", inputs(path, &m, json!({ "lengths": lens })));
    let entries = unique_gridding_probe(&m, &lens)?;
    for e in &entries {
        r.line(format!(
            "length {} start {} {}: {} gridding(s)  {}",
            e.length,
            e.start + 1,
            chirality_name(e.chirality),
            e.griddings,
            e.perm
        ));
    }
    let unique = entries.iter().all(|e| e.griddings == 1);
    r.result = json!({
        "all_unique": unique,
        "entries": entries
            .iter()
            .map(|e| json!({
                "length": e.length,
                "start": e.start + 1,
                "chirality": chirality_name(e.chirality),
                "perm": e.perm.to_string(),
                "griddings": e.griddings,
            }))
            .collect::<Vec<_>>(),
    });
    Ok(r)
}

fn survey_cmd(path: &Path, basis: &[String], bound: usize) -> Result<Report> {
    let m = with_signs(read_matrix(path)?)?;
    let b = parse_basis(basis)?;
    let shown: Vec<String> = b.iter().map(|x| x.to_string()).collect();
    let mut r = Report::new("survey", inputs(path, &m, json!({ "basis": shown, "max_len": bound })));
    let rep = end_inflated_survey(&m, &b, bound)?;
    r.line(format!("bounded survey up to length {bound}; says nothing beyond it"));
    if rep.below_threshold {
        r.line(format!("bound is below the family threshold {}", rep.threshold));
    }
    for t in &rep.types {
        r.line(format!(
            "type ({},{},{}): avoiding at {:?}{}",
            t.coil_type.first + 1,
            t.coil_type.second + 1,
            t.coil_type.last + 1,
            t.avoiding,
            if t.alive { ", alive at the bound" } else { "" }
        ));
    }
    r.result = json!({
        "bound": bound,
        "threshold": rep.threshold,
        "below_threshold": rep.below_threshold,
        "types": rep
            .types
            .iter()
            .map(|t| json!({
                "type": [t.coil_type.first + 1, t.coil_type.second + 1, t.coil_type.last + 1],
                "avoiding": t.avoiding,
                "alive": t.alive,
            }))
            .collect::<Vec<_>>(),
    });
    Ok(r)
}
