use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, Context, Result};

use fatspace::document::{self, Document};
use fatspace::expr::{eval as eval_expr, parse_for_space};
use fatspace::measure::{horn_tarski_extend, los_marczewski_extend};
use fatspace::rat;
use fatspace::set::ElemSet;
use fatspace::soberdrunk::{
    self, enumerate_w, block_splice_witness, bit_flip_witness, block_cover_check, cylinder_cover_check,
    partition_contains, region_of, restrict, soberdrunk_space, Ordinal, AB,
};
use fatspace::typespace::{enumerate_morphisms, is_type_morphism, validate as validate_space};
use fatspace::universal::{desc_fingerprint, quotient, refine};

use crate::io;

pub struct Budgets {
    pub max_states: u64,
    pub max_maps: u128,
}

pub fn validate(space_path: &Path) -> Result<i32> {
    let space = io::load_space(space_path)?;
    let report = validate_space(&space);
    let mut lines = Vec::new();
    if report.is_valid() {
        lines.push("valid".to_string());
    } else {
        for v in &report.violations {
            lines.push(format!("violation: {v}"));
        }
    }
    for (p, s) in &report.strong_introspection_failures {
        lines.push(format!(
            "note: own-type class of player {p} at state {s} is not itself a measurable mass-1 event"
        ));
    }
    let mut data = BTreeMap::new();
    data.insert("violations".to_string(), report.violations.len().to_string());
    let status = if report.is_valid() { "valid" } else { "invalid" };
    io::print_report("validate", status, lines, data);
    Ok(if report.is_valid() { 0 } else { 1 })
}

pub fn eval(space_path: &Path, expr: Option<&str>, expr_file: Option<&Path>) -> Result<i32> {
    let space = io::load_space(space_path)?;
    let texts: Vec<String> = match (expr, expr_file) {
        (Some(text), None) => vec![text.to_string()],
        (None, Some(path)) => {
            let raw = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            if raw.trim_start().starts_with('{') {
                match document::parse(&raw)? {
                    Document::ExprList(doc) => doc.exprs,
                    other => {
                        return Err(anyhow!(
                            "expected an expr_list document, found {}",
                            io::kind_of(&other)
                        ))
                    }
                }
            } else {
                raw.lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .map(str::to_string)
                    .collect()
            }
        }
        _ => return Err(anyhow!("exactly one of --expr and --expr-file is required")),
    };
    let mut lines = Vec::new();
    let mut data = BTreeMap::new();
    for (k, text) in texts.iter().enumerate() {
        let parsed = parse_for_space(text, space.nature())?;
        let event = eval_expr(&space, &parsed)?;
        let mut names: Vec<&str> =
            event.iter().map(|m| space.states()[m as usize].as_str()).collect();
        names.sort_unstable();
        lines.push(format!("expr: {}", parsed.canonical_text()));
        lines.push(format!("depth: {}", parsed.depth()));
        lines.push(format!("states: [{}]", names.join(", ")));
        data.insert(format!("expr{k}_depth"), parsed.depth().to_string());
        data.insert(format!("expr{k}_states"), names.join(","));
    }
    io::print_report("eval", "ok", lines, data);
    Ok(0)
}

pub fn describe(space_path: &Path, state: &str, depth: Option<usize>) -> Result<i32> {
    let space = io::load_space(space_path)?;
    let index = space.state_index(state)?;
    let depth = match depth {
        Some(d) => d,
        None => refine(&space)?.stabilization_index(),
    };
    let token = desc_fingerprint(&space, index, depth)?;
    let lines = vec![format!("state: {state}"), format!("depth: {depth}"), format!("fingerprint: {token}")];
    let mut data = BTreeMap::new();
    data.insert("fingerprint".to_string(), token.to_string());
    data.insert("depth".to_string(), depth.to_string());
    io::print_report("describe", "ok", lines, data);
    Ok(0)
}

pub fn minimize(space_path: &Path, out: Option<&Path>) -> Result<i32> {
    let space = io::load_space(space_path)?;
    let q = quotient(&space)?;
    let mut lines = Vec::new();
    let tower = q.tower();
    for (d, blocks) in tower.partitions().iter().enumerate() {
        lines.push(format!("depth {d}: {} blocks", blocks.len()));
    }
    lines.push(format!("stabilization index: {}", tower.stabilization_index()));
    lines.push(format!(
        "quotient: {} states from {}",
        q.space().state_count(),
        space.state_count()
    ));
    let mut data = BTreeMap::new();
    data.insert("quotient_states".to_string(), q.space().state_count().to_string());
    data.insert("stabilization_index".to_string(), tower.stabilization_index().to_string());
    if let Some(path) = out {
        io::write_document(path, &Document::TypeSpace(document::space_to_doc(q.space())))?;
        lines.push(format!("wrote {}", path.display()));
    }
    io::print_report("minimize", "ok", lines, data);
    Ok(0)
}

pub fn morphism(
    source_path: &Path,
    target_path: &Path,
    map_path: Option<&Path>,
    enumerate: bool,
    budgets: &Budgets,
) -> Result<i32> {
    let source = io::load_space(source_path)?;
    let target = io::load_space(target_path)?;
    if enumerate {
        let maps = enumerate_morphisms(&source, &target, budgets.max_maps)?;
        let mut lines = vec![format!("morphisms: {}", maps.len())];
        for map in &maps {
            let rendered: Vec<String> = map
                .iter()
                .enumerate()
                .map(|(m, &t)| {
                    format!("{}->{}", source.states()[m], target.states()[t as usize])
                })
                .collect();
            lines.push(rendered.join(", "));
        }
        let mut data = BTreeMap::new();
        data.insert("count".to_string(), maps.len().to_string());
        io::print_report("morphism", "ok", lines, data);
        return Ok(0);
    }
    let Some(map_path) = map_path else {
        return Err(anyhow!("either --map or --enumerate is required"));
    };
    let named = io::load_state_map(map_path)?;
    let mut map = Vec::with_capacity(source.state_count() as usize);
    for state in source.states() {
        let image = named
            .get(state)
            .ok_or_else(|| anyhow!("map missing source state {state:?}"))?;
        map.push(target.state_index(image)?);
    }
    let report = is_type_morphism(&source, &target, &map)?;
    let ok = report.holds();
    let lines = vec![report.to_string()];
    let mut data = BTreeMap::new();
    data.insert("morphism".to_string(), ok.to_string());
    io::print_report("morphism", if ok { "ok" } else { "fail" }, lines, data);
    Ok(if ok { 0 } else { 1 })
}

pub fn extend(
    measure_path: &Path,
    set: Option<&str>,
    p: Option<&str>,
    target_field: Option<&Path>,
    out: Option<&Path>,
) -> Result<i32> {
    let (names, measure) = io::load_measure(measure_path)?;
    let extended = match (set, p, target_field) {
        (Some(set_text), Some(p_text), None) => {
            let p = rat::parse_text(p_text).ok_or_else(|| anyhow!("malformed rational {p_text:?}"))?;
            let mut event = ElemSet::empty(names.len() as u32);
            for part in set_text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let idx = names
                    .iter()
                    .position(|n| n == part)
                    .ok_or_else(|| anyhow!("unknown element {part:?}"))?;
                event.insert(idx as u32);
            }
            los_marczewski_extend(&measure, &event, &p)?
        }
        (None, None, Some(field_path)) => {
            let (field_names, field) = io::load_set_field(field_path)?;
            if field_names != names {
                return Err(anyhow!("measure and target field have different universes"));
            }
            horn_tarski_extend(&measure, std::sync::Arc::new(field))?
        }
        _ => return Err(anyhow!("use either --set with --p, or --target-field")),
    };
    let doc = document::measure_to_doc(&names, &extended);
    let mut lines = Vec::new();
    for (key, weight) in &doc.weights {
        lines.push(format!("atom {key}: {weight}"));
    }
    let mut data = BTreeMap::new();
    data.insert("atoms".to_string(), extended.field().atom_count().to_string());
    if let Some(path) = out {
        io::write_document(path, &Document::Measure(doc))?;
        lines.push(format!("wrote {}", path.display()));
    }
    io::print_report("extend", "ok", lines, data);
    Ok(0)
}

pub fn soberdrunk_build(n: u32, out: Option<&Path>, budgets: &Budgets) -> Result<i32> {
    let space = soberdrunk_space(n, budgets.max_states)?;
    let report = validate_space(&space);
    let mut lines = vec![
        format!("level: {n}"),
        format!("states: {}", space.state_count()),
        format!("valid: {}", report.is_valid()),
    ];
    let mut data = BTreeMap::new();
    data.insert("states".to_string(), space.state_count().to_string());
    data.insert("valid".to_string(), report.is_valid().to_string());
    if let Some(path) = out {
        io::write_document(path, &Document::TypeSpace(document::space_to_doc(&space)))?;
        lines.push(format!("wrote {}", path.display()));
    }
    let ok = report.is_valid();
    io::print_report("soberdrunk build", if ok { "ok" } else { "fail" }, lines, data);
    Ok(if ok { 0 } else { 1 })
}

pub fn soberdrunk_separate(n: u32, alpha: Option<u32>, budgets: &Budgets) -> Result<i32> {
    let alpha = alpha.unwrap_or(n.saturating_sub(1));
    let space = soberdrunk_space(n, budgets.max_states)?;
    let report = soberdrunk::separation_demo(&space, n, alpha)?;
    let lines = vec![
        format!("u: {}", report.u),
        format!("w: {}", report.w),
        format!("psi: {}", report.psi.canonical_text()),
        format!("psi depth: {} (= alpha + 1 = {})", report.psi_depth, alpha + 1),
        format!("fingerprints agree at depth {alpha}: {}", report.fingerprints_agree),
        format!("corpus of depth <= {alpha} agrees: {}", report.corpus_agrees),
        format!("psi separates (u in, w out): {}", report.psi_separates),
    ];
    let mut data = BTreeMap::new();
    data.insert("verified".to_string(), report.verified().to_string());
    data.insert("psi_depth".to_string(), report.psi_depth.to_string());
    let ok = report.verified();
    io::print_report("soberdrunk separate", if ok { "ok" } else { "fail" }, lines, data);
    Ok(if ok { 0 } else { 1 })
}

pub fn soberdrunk_lemmas(n: u32, budgets: &Budgets) -> Result<i32> {
    let top = n.min(3);
    let mut lines = Vec::new();
    let mut all_ok = true;
    for level_n in 2..=top {
        let level = enumerate_w(level_n, budgets.max_states)?;
        let gamma_levels: Vec<u32> = (0..level_n).collect();

        // Splice witnesses for every admissible (w, v, γ).
        let mut checked = 0u64;
        for i in AB::BOTH {
            for w in level.states() {
                for v in level.states() {
                    for &g in &gamma_levels {
                        let gamma = Ordinal::nat(g);
                        let pre = partition_contains(
                            i,
                            &restrict(w, &gamma.succ())?,
                            &restrict(v, &gamma.succ())?,
                        )?;
                        if !pre {
                            continue;
                        }
                        let u = block_splice_witness(i, w, v, &gamma)?;
                        if !partition_contains(i, w, &u)?
                            || restrict(&u, &gamma)? != restrict(v, &gamma)?
                        {
                            all_ok = false;
                        }
                        checked += 1;
                    }
                }
            }
        }
        lines.push(format!("level {level_n}: splice witnesses verified: {checked}"));

        // Bit-flip witnesses preserve all three regions.
        let beta = Ordinal::nat(level_n - 2);
        let gamma = Ordinal::nat(level_n - 1);
        let mut checked = 0u64;
        for i in AB::BOTH {
            for w in level.states() {
                if w.bit(i, &beta.succ()) {
                    continue;
                }
                for v in level.states() {
                    let u = bit_flip_witness(i, w, v, &beta)?;
                    let same_region = region_of(i, w, &u, &gamma)? == region_of(i, w, v, &gamma)?;
                    let flipped = u.bit(i.other(), &beta) != v.bit(i.other(), &beta);
                    let agrees = restrict(&u, &beta)? == restrict(v, &beta)?;
                    if !(same_region && flipped && agrees) {
                        all_ok = false;
                    }
                    checked += 1;
                }
            }
        }
        lines.push(format!("level {level_n}: bit-flip witnesses verified: {checked}"));

        // Exhaustive field-member cover enumeration.
        let mut members = 0u64;
        for i in AB::BOTH {
            for w in level.states() {
                members += block_cover_check(i, w, &level, 24)?;
            }
        }
        lines.push(format!("level {level_n}: cover members checked: {members}"));

        // Cylinder covers over all bases.
        let mut events = 0u64;
        for i in AB::BOTH {
            for w in level.states() {
                for b in 0..level_n {
                    events += cylinder_cover_check(i, w, &level, b, 8)?;
                }
            }
        }
        lines.push(format!("level {level_n}: cylinder base events checked: {events}"));
    }
    let mut data = BTreeMap::new();
    data.insert("levels".to_string(), format!("2..={top}"));
    data.insert("all_ok".to_string(), all_ok.to_string());
    io::print_report("soberdrunk lemmas", if all_ok { "ok" } else { "fail" }, lines, data);
    Ok(if all_ok { 0 } else { 1 })
}
