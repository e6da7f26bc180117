//! Report assembly: one stable JSON schema shared by every subcommand.
//!
//! Schema: `{"command": .., "ring": {"expr", "cardinality", "units",
//! "idempotents", "radical", "flags": {..}}, "payload": .., "elapsed_ms",
//! "version"}`. Everything except `elapsed_ms` is deterministic for a
//! given command line.

use ringlab_core::deciders::{DecisionMethod, PropertyVerdict, RingProperty};
use ringlab_core::FiniteRing;
use serde_json::{json, Value};

pub fn ring_summary(ring: &FiniteRing) -> Value {
    json!({
        "expr": ring.expr().to_string(),
        "cardinality": ring.cardinality(),
        "units": ring.unit_codes().len(),
        "idempotents": ring.idempotent_codes().len(),
        "radical": ring.jacobson_radical().len(),
        "flags": {
            "abelian": ring.is_abelian(),
            "connected": ring.is_connected(),
            "local": ring.is_local(),
            "commutative": ring.is_commutative(),
        },
    })
}

pub fn property_name(p: RingProperty) -> &'static str {
    match p {
        RingProperty::K => "k",
        RingProperty::KBar => "kbar",
    }
}

pub fn method_name(m: DecisionMethod) -> &'static str {
    match m {
        DecisionMethod::Brute => "brute",
        DecisionMethod::UnitSearch => "units",
        DecisionMethod::Theorem => "theorem",
    }
}

pub fn verdict_json(ring: &FiniteRing, v: &PropertyVerdict) -> Value {
    let witness = v.witness.map(|(e, ep)| {
        json!([
            ring.render(e).unwrap_or_default(),
            ring.render(ep).unwrap_or_default()
        ])
    });
    json!({
        "property": property_name(v.property),
        "holds": v.holds,
        "witness": witness,
        "method": method_name(v.method),
        "idempotent_count": v.stats.idempotent_count,
        "pairs_examined": v.stats.pairs_examined,
    })
}

pub struct Report {
    pub command: String,
    pub ring: Option<Value>,
    pub payload: Value,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "ring": self.ring.clone().unwrap_or(Value::Null),
            "payload": self.payload,
            "elapsed_ms": self.elapsed_ms,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if let Some(ring) = &self.ring {
            out.push_str(&format!(
                "ring: {} | cardinality {} | {} units | {} idempotents | radical {}\n",
                ring["expr"].as_str().unwrap_or("?"),
                ring["cardinality"],
                ring["units"],
                ring["idempotents"],
                ring["radical"],
            ));
            let f = &ring["flags"];
            out.push_str(&format!(
                "flags: abelian={} connected={} local={} commutative={}\n",
                f["abelian"], f["connected"], f["local"], f["commutative"]
            ));
        }
        out.push_str(&serde_json::to_string_pretty(&self.payload).unwrap());
        out.push('\n');
        out.push_str(&format!("elapsed: {} ms\n", self.elapsed_ms));
        out
    }
}
