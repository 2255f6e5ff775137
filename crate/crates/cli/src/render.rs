//! Label-aware text and JSON rendering of core reports. Sets print in
//! ascending index order and lists of sets in lexicographic order, so
//! output is stable across runs.

use serde_json::{json, Value};

use relkit::quotient::QuotientRelation;
use relkit::relation::{IndexSet, PropertyReport, Relation};
use relkit::solutions::{DebKind, DebReport, SolutionReport};
use relkit::zorn::{HypothesisCheck, TheoremReport, TopCycleExtraction, ZornRun};

fn label(r: &Relation, i: usize) -> &str {
    r.universe().label(i)
}

fn labels(r: &Relation, set: &IndexSet) -> Vec<String> {
    set.iter().map(|&i| label(r, i).to_string()).collect()
}

pub fn fmt_set(r: &Relation, set: &IndexSet) -> String {
    format!("{{{}}}", labels(r, set).join(", "))
}

fn fmt_sets(r: &Relation, sets: &[IndexSet]) -> String {
    if sets.is_empty() {
        return "none".into();
    }
    sets.iter().map(|s| fmt_set(r, s)).collect::<Vec<_>>().join(", ")
}

fn json_set(r: &Relation, set: &IndexSet) -> Value {
    Value::Array(labels(r, set).into_iter().map(Value::String).collect())
}

fn json_sets(r: &Relation, sets: &[IndexSet]) -> Value {
    Value::Array(sets.iter().map(|s| json_set(r, s)).collect())
}

pub fn props_text(r: &Relation, p: &PropertyReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("elements: {}\n", r.n()));
    out.push_str(&format!("pairs: {}\n", r.pair_count()));
    out.push_str(&match p.missing_loop {
        Some(x) => format!("reflexive: false  (missing ({0}, {0}))\n", label(r, x)),
        None => "reflexive: true\n".into(),
    });
    out.push_str(&match p.broken_triple {
        Some((x, z, y)) => format!(
            "transitive: false  (({}, {}) and ({}, {}) without ({}, {}))\n",
            label(r, x), label(r, z), label(r, z), label(r, y), label(r, x), label(r, y)
        ),
        None => "transitive: true\n".into(),
    });
    out.push_str(&match p.symmetric_pair {
        Some((x, y)) => format!(
            "antisymmetric: false  (({}, {}) and ({}, {}))\n",
            label(r, x), label(r, y), label(r, y), label(r, x)
        ),
        None => "antisymmetric: true\n".into(),
    });
    out.push_str(&match p.incomparable_pair {
        Some((x, y)) => {
            format!("total: false  ({} and {} incomparable)\n", label(r, x), label(r, y))
        }
        None => "total: true\n".into(),
    });
    out.push_str(&format!("partial order: {}\n", p.is_partial_order));
    out.push_str(&format!("total order: {}\n", p.is_total_order));
    out
}

pub fn props_json(r: &Relation, p: &PropertyReport) -> Value {
    let lab = |i: usize| Value::String(label(r, i).to_string());
    json!({
        "elements": r.n(),
        "pairs": r.pair_count(),
        "reflexive": p.reflexive,
        "transitive": p.transitive,
        "antisymmetric": p.antisymmetric,
        "total": p.total,
        "partial_order": p.is_partial_order,
        "total_order": p.is_total_order,
        "witnesses": {
            "missing_loop": p.missing_loop.map(lab),
            "broken_triple": p.broken_triple.map(|(x, z, y)| json!([lab(x), lab(z), lab(y)])),
            "symmetric_pair": p.symmetric_pair.map(|(x, y)| json!([lab(x), lab(y)])),
            "incomparable_pair": p.incomparable_pair.map(|(x, y)| json!([lab(x), lab(y)])),
        },
    })
}

pub fn quotient_text(r: &Relation, q: &QuotientRelation) -> String {
    let mut out = format!("classes: {}\n", q.class_count());
    for (id, class) in q.partition().classes().iter().enumerate() {
        out.push_str(&format!("  c{id}: {}\n", fmt_set(r, class)));
    }
    let edges: Vec<(usize, usize)> =
        q.pairs().iter().copied().filter(|(u, v)| u != v).collect();
    if edges.is_empty() {
        out.push_str("order: diagonal only\n");
    } else {
        out.push_str("order:\n");
        for (u, v) in edges {
            out.push_str(&format!("  c{u} -> c{v}\n"));
        }
    }
    out
}

pub fn quotient_json(r: &Relation, q: &QuotientRelation) -> Value {
    json!({
        "classes": q.partition().classes().iter().map(|c| json_set(r, c)).collect::<Vec<_>>(),
        "order": q.pairs().iter().filter(|(u, v)| u != v)
            .map(|&(u, v)| json!([format!("c{u}"), format!("c{v}")])).collect::<Vec<_>>(),
    })
}

fn cycle_suffix(r: &Relation, set: &IndexSet, strict: bool) -> &'static str {
    if set.len() == 1 {
        let x = *set.iter().next().expect("nonempty");
        let has_loop = !strict && r.contains(x, x);
        if !has_loop {
            return " (trivial)";
        }
    }
    ""
}

pub fn solve_text(r: &Relation, report: &SolutionReport, deb: &DebReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("maximal: {}\n", fmt_set(r, &report.maximal)));
    out.push_str(&format!(
        "minimal undominated: {}\n",
        fmt_sets(r, &report.minimal_undominated)
    ));
    let cycles: Vec<String> = report
        .top_cycles
        .iter()
        .map(|s| format!("{}{}", fmt_set(r, s), cycle_suffix(r, s, false)))
        .collect();
    out.push_str(&format!("top cycles: {}\n", cycles.join(", ")));
    let strong: Vec<String> = report
        .strong_top_cycles
        .iter()
        .map(|s| format!("{}{}", fmt_set(r, s), cycle_suffix(r, s, true)))
        .collect();
    out.push_str(&format!("strong top cycles: {}\n", strong.join(", ")));
    out.push_str(&format!("schwartz (gocha): {}\n", fmt_set(r, &report.schwartz_gocha)));
    out.push_str(&format!("schwartz (strict): {}\n", fmt_set(r, &report.schwartz_strict)));
    for (name, entries) in [("strict", &deb.strict), ("literal", &deb.literal)] {
        let rendered: Vec<String> = entries
            .iter()
            .map(|e| {
                let kind = match e.kind {
                    DebKind::UndominatedElement => "undominated element",
                    DebKind::StrongTopCycle => "strong top cycle",
                    DebKind::Violation => "VIOLATION",
                };
                format!("{} {}", fmt_set(r, &e.set), kind)
            })
            .collect();
        out.push_str(&format!("deb ({name}): {}\n", rendered.join(", ")));
    }
    out
}

pub fn solve_json(r: &Relation, report: &SolutionReport, deb: &DebReport) -> Value {
    let deb_entries = |entries: &[relkit::solutions::DebEntry]| -> Value {
        Value::Array(
            entries
                .iter()
                .map(|e| {
                    json!({
                        "set": json_set(r, &e.set),
                        "kind": match e.kind {
                            DebKind::UndominatedElement => "undominated_element",
                            DebKind::StrongTopCycle => "strong_top_cycle",
                            DebKind::Violation => "violation",
                        },
                    })
                })
                .collect(),
        )
    };
    json!({
        "maximal": json_set(r, &report.maximal),
        "minimal_undominated": json_sets(r, &report.minimal_undominated),
        "top_cycles": json_sets(r, &report.top_cycles),
        "strong_top_cycles": json_sets(r, &report.strong_top_cycles),
        "schwartz_gocha": json_set(r, &report.schwartz_gocha),
        "schwartz_strict": json_set(r, &report.schwartz_strict),
        "deb": { "strict": deb_entries(&deb.strict), "literal": deb_entries(&deb.literal) },
    })
}

fn json_run(r: &Relation, run: &ZornRun) -> Value {
    json!({
        "steps": run.steps.iter().map(|s| json!({
            "current": json_set(r, &s.current),
            "candidates": json_set(r, &s.candidate_set),
            "added": s.added.map(|x| Value::String(label(r, x).to_string())),
        })).collect::<Vec<_>>(),
        "terminal_chain": json_set(r, &run.terminal_chain),
    })
}

pub fn hypothesis_json(r: &Relation, check: &HypothesisCheck) -> Value {
    json!({
        "command": "check-hypothesis",
        "holds": check.holds,
        "unbounded_chain": check.unbounded_chain.as_ref().map(|c| json_set(r, c)),
    })
}

pub fn extend_chain_json(r: &Relation, run: &ZornRun) -> Value {
    let mut value = json_run(r, run);
    value["command"] = json!("extend-chain");
    value
}

pub fn extraction_json(r: &Relation, extraction: &TopCycleExtraction) -> Value {
    json!({
        "command": "find-top-cycle",
        "pivot": label(r, extraction.pivot),
        "cycle": json_set(r, &extraction.cycle),
    })
}

pub fn theorem_json(r: &Relation, report: &TheoremReport) -> Value {
    json!({
        "command": "verify-theorem",
        "hypothesis": report.hypothesis,
        "unbounded_chain": report.unbounded_chain.as_ref().map(|c| json_set(r, c)),
        "top_cycles": json_sets(r, &report.top_cycles),
        "extraction": {
            "pivot": report.run.pivot.map(|x| Value::String(label(r, x).to_string())),
            "cycle": json_set(r, &report.run.extracted),
        },
        "extraction_is_top_cycle": report.extraction_is_top_cycle,
        "conclusion": report.conclusion,
        "chain_run": json_run(r, &report.run),
    })
}
