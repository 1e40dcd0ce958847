use serde_json::{json, Value};
use stringalg::bridges::{BridgeArrow, BridgeKind, ExtendedBridgeQuiver};
use stringalg::oracle::OracleReport;
use stringalg::ranks::{Rank, RankWitness};
use stringalg::{ExpansionResult, StableRankEstimate, StringAlgebra, Word};

pub fn words(a: &StringAlgebra, ws: &[Word]) -> Value {
    Value::from(ws.iter().map(|w| a.render(w)).collect::<Vec<_>>())
}

fn kind(k: BridgeKind) -> &'static str {
    match k {
        BridgeKind::Bridge => "bridge",
        BridgeKind::Half => "half",
        BridgeKind::ReverseHalf => "reverse-half",
        BridgeKind::Zero => "zero",
    }
}

pub fn arrow(a: &StringAlgebra, x: &BridgeArrow) -> Value {
    json!({
        "source": a.render_vertex(&x.source),
        "target": a.render_vertex(&x.target),
        "label": a.render(&x.label),
        "kind": kind(x.kind),
        "weak_only": x.weak_only,
        "sigma_ba": x.sigma_ba.map(|s| s.value()),
    })
}

pub fn arrow_line(a: &StringAlgebra, x: &BridgeArrow) -> String {
    format!(
        "{} -[{}]-> {}  {}{}",
        a.render_vertex(&x.source),
        a.render(&x.label),
        a.render_vertex(&x.target),
        kind(x.kind),
        if x.weak_only { " weak-only" } else { "" }
    )
}

pub fn quiver(a: &StringAlgebra, q: &ExtendedBridgeQuiver) -> Value {
    let arrows = q.weak_arrows.as_ref().unwrap_or(&q.arrows);
    json!({
        "vertices": q.vertices.iter().map(|v| a.render_vertex(v)).collect::<Vec<_>>(),
        "arrows": arrows.iter().map(|x| arrow(a, x)).collect::<Vec<_>>(),
    })
}

pub fn expansion(a: &StringAlgebra, e: &ExpansionResult) -> Value {
    json!({
        "op": e.op.to_string(),
        "word": a.render(&e.start),
        "defined": e.is_defined(),
        "preperiod": a.render_syllables(&e.preperiod),
        "period": a.render_syllables(&e.period),
        "limit": a.render_expansion(e),
    })
}

pub fn witness(a: &StringAlgebra, w: &RankWitness) -> String {
    match w {
        RankWitness::Recursive { step, system } => format!(
            "{}: {} -> {} has recursive system tau={} tau1={} tau2={} mu={} on {}",
            step.op,
            a.render(&step.source),
            a.render(&step.target),
            system.tau,
            system.tau1,
            system.tau2,
            system.mu,
            a.render(&system.x)
        ),
        RankWitness::InfiniteInterval { step, interval } => format!(
            "{}: {} -> {} has infinite interval via ({})^n {} {} {}",
            step.op,
            a.render(&step.source),
            a.render(&step.target),
            a.render_syllables(&interval.rotation),
            a.render(&interval.z),
            a.render_syllables(&[interval.arrow]),
            a.render(&interval.x)
        ),
        RankWitness::CompositeBand { band } => format!("composite band {}", a.render(band)),
        RankWitness::Expansion { band, expansion } => {
            format!(
                "band {} meets {}",
                a.render(band),
                a.render_expansion(expansion)
            )
        }
        RankWitness::Periodic { band, left, right } => format!(
            "band {} with {} and {}",
            a.render(band),
            a.render_expansion(left),
            a.render_expansion(right)
        ),
        RankWitness::Legs { first, second } => format!(
            "legs [{}] and [{}]",
            rank_text(a, first),
            rank_text(a, second)
        ),
    }
}

pub fn class_name(r: &Rank) -> String {
    serde_json::to_value(r.class)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn rank_text(a: &StringAlgebra, r: &Rank) -> String {
    match &r.witness {
        Some(w) => format!("{} ({})", class_name(r), witness(a, w)),
        None => class_name(r),
    }
}

pub fn rank(a: &StringAlgebra, r: &Rank) -> Value {
    json!({
        "class": class_name(r),
        "witness": r.witness.as_ref().map(|w| witness(a, w)),
    })
}

pub fn stable_rank(a: &StringAlgebra, e: &StableRankEstimate) -> Value {
    let pair = |w: &stringalg::ranks::OmegaWitness| json!({"band": a.render(&w.band), "v": a.render(&w.v)});
    json!({
        "value": e.value.to_string(),
        "sb_witnesses": e.sb_witnesses.iter().map(pair).collect::<Vec<_>>(),
        "bs_witnesses": e.bs_witnesses.iter().map(pair).collect::<Vec<_>>(),
        "composable": e.composable.as_ref().map(|(bs, sb)| json!({"bs": pair(bs), "sb": pair(sb)})),
    })
}

pub fn oracle_table(reports: &[OracleReport]) -> String {
    let mut out = format!(
        "{:<28} {:>10} {:>10}  {}\n",
        "check", "population", "mismatches", "result"
    );
    for r in reports {
        out.push_str(&format!(
            "{:<28} {:>10} {:>10}  {}",
            r.check,
            r.population,
            r.mismatches.len(),
            if r.passed() { "pass" } else { "FAIL" }
        ));
        if let Some(note) = &r.note {
            out.push_str(&format!("  ({note})"));
        }
        out.push('\n');
        for m in r.mismatches.iter().take(5) {
            out.push_str(&format!(
                "    {}: fast {} / oracle {}\n",
                m.input, m.fast, m.oracle
            ));
        }
    }
    out
}
