//! Browser bindings. Every export takes plain strings or numbers and returns
//! a JSON document; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use degseq::sigma::FormulaFamily;
use degseq::{
    closed_form_sigma, extremal_construction, extremal_sequence, is_graphical, is_potentially, layoff, DegreeSequence,
    PatternSpec,
};

fn finish(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Erdős–Gallai table and the chain of layoffs of the last term.
#[wasm_bindgen]
pub fn check_sequence(text: &str) -> String {
    finish(check_sequence_value(text))
}

/// Extremal graph for K_{r+1} - U with its sequence and formula value.
#[wasm_bindgen]
pub fn extremal(r: usize, n: usize) -> String {
    finish(extremal_value(r, n))
}

/// A realization of `seq` containing `pattern`, if one exists.
#[wasm_bindgen]
pub fn potential(seq: &str, pattern: &str) -> String {
    finish(potential_value(seq, pattern))
}

pub fn check_sequence_value(text: &str) -> Result<Value, String> {
    let (seq, resorted) = DegreeSequence::parse_lenient(text).map_err(|e| e.to_string())?;
    let d = seq.terms();
    let n = d.len();
    let rows: Vec<Value> = (1..=n)
        .map(|k| {
            let lhs: u64 = d[..k].iter().map(|&x| x as u64).sum();
            let rhs = (k * (k - 1)) as u64 + d[k..].iter().map(|&x| x.min(k as u32) as u64).sum::<u64>();
            json!({ "k": k, "lhs": lhs, "rhs": rhs, "ok": lhs <= rhs })
        })
        .collect();

    let mut chain = vec![json!(seq)];
    let mut cur = seq.clone();
    let mut stopped = None;
    while cur.len() > 1 {
        match layoff(&cur, cur.len()) {
            Ok(next) => {
                chain.push(json!(next));
                cur = next;
            }
            Err(e) => {
                stopped = Some(e.to_string());
                break;
            }
        }
    }

    Ok(json!({
        "sequence": seq,
        "resorted": resorted,
        "sigma": seq.sigma(),
        "graphical": is_graphical(&seq),
        "odd_sum": seq.sigma() % 2 == 1,
        "erdos_gallai": rows,
        "layoff_chain": chain,
        "chain_stopped": stopped,
    }))
}

pub fn extremal_value(r: usize, n: usize) -> Result<Value, String> {
    let g = extremal_construction(r, n).map_err(|e| e.to_string())?;
    let s = extremal_sequence(r, n).map_err(|e| e.to_string())?;
    let formula = closed_form_sigma(FormulaFamily::Thm11 { r }, n).ok();
    Ok(json!({
        "r": r,
        "n": n,
        "sequence": s,
        "sigma": s.sigma(),
        "formula": formula,
        "parity": if (n - r) % 2 == 1 { "odd" } else { "even" },
        "graph": g,
    }))
}

pub fn potential_value(seq: &str, pattern: &str) -> Result<Value, String> {
    let (seq, _) = DegreeSequence::parse_lenient(seq).map_err(|e| e.to_string())?;
    let spec: PatternSpec = pattern.parse().map_err(|e: degseq::Error| e.to_string())?;
    let h = spec.build().map_err(|e| e.to_string())?;
    let w = is_potentially(&seq, &h).map_err(|e| e.to_string())?;
    let highlighted: Vec<[usize; 2]> = match &w {
        Some(w) => h
            .edges()
            .map(|(a, b)| [w.embedding.image(a), w.embedding.image(b)])
            .collect(),
        None => Vec::new(),
    };
    Ok(json!({
        "sequence": seq,
        "pattern": spec.to_string(),
        "potential": w.is_some(),
        "graph": w.as_ref().map(|w| &w.realization),
        "pattern_edges": highlighted,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_table() {
        let v = check_sequence_value("3,3,1,1").unwrap();
        assert_eq!(v["graphical"], false);
        assert_eq!(v["erdos_gallai"][1]["lhs"], 6);
        assert_eq!(v["erdos_gallai"][1]["rhs"], 4);
        assert_eq!(v["erdos_gallai"][1]["ok"], false);

        let v = check_sequence_value("2,3,3,3,3,2").unwrap();
        assert_eq!(v["resorted"], true);
        assert_eq!(v["graphical"], true);
        let chain = v["layoff_chain"].as_array().unwrap();
        assert_eq!(chain.len(), 6);
        assert_eq!(chain[1].to_string(), "[3,3,2,2,2]");
        assert!(v["chain_stopped"].is_null());
    }

    #[test]
    fn chain_stops_on_failure() {
        let v = check_sequence_value("3,3,1,1").unwrap();
        assert!(v["chain_stopped"].is_string());
    }

    #[test]
    fn extremal_document() {
        let v = extremal_value(6, 48).unwrap();
        assert_eq!(v["sigma"], 322);
        assert_eq!(v["formula"], 324);
        assert_eq!(v["graph"]["n"], 48);
        let v = extremal_value(4, 7).unwrap();
        assert!(v["formula"].is_null());
        assert!(extremal(2, 7).contains("error"));
    }

    #[test]
    fn potential_document() {
        let v = potential_value("3,3,2,2,2", "C4").unwrap();
        assert_eq!(v["potential"], true);
        let edges = v["graph"]["edges"].as_array().unwrap();
        for e in v["pattern_edges"].as_array().unwrap() {
            let (a, b) = (e[0].as_u64().unwrap(), e[1].as_u64().unwrap());
            assert!(edges.iter().any(|f| f == &json!([a.min(b), a.max(b)])));
        }
        let v = potential_value("2,2,2,2", "K3").unwrap();
        assert_eq!(v["potential"], false);
        assert!(potential("2,2", "Q").contains("error"));
    }
}
