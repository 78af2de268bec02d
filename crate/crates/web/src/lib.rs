//! Browser bindings for the demo page. Every export takes plain numbers and
//! returns a JSON string; errors come back as `{"error": ...}`.

use hamlab::combin::binom;
use hamlab::cycle::validate_cycle;
use hamlab::extremal::delta_ell_extremal;
use hamlab::mc::{fk_experiment, random_family};
use hamlab::search::{find_ham_cycle, parity_certificate, SearchBudget};
use hamlab::{ExtremalSpec, Hypergraph, DEFAULT_ENUM_BUDGET};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn finish(r: hamlab::Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Minimum ℓ-degree of every parity family on `n` vertices, and the largest
/// one among families with no Hamilton cycle.
#[wasm_bindgen]
pub fn threshold_profile(n: u32, k: u32, ell: u32) -> String {
    finish(profile(n, k, ell))
}

fn profile(n: u32, k: u32, ell: u32) -> hamlab::Result<Value> {
    if n > 400 {
        return Err(hamlab::Error::Size(format!("n = {n} is too large for the demo")));
    }
    let scale = binom((n - ell.min(n)) as i64, (k - ell.min(k)) as i64) as f64;
    let mut rows = Vec::new();
    let mut best: Option<(u128, u32, u8)> = None;
    for a in 0..=n {
        for eta in [1u8, 0] {
            let spec = ExtremalSpec::with_prefix(n, k, a, eta)?;
            let f = spec.f_parity()?;
            let d = delta_ell_extremal(a, n, k, ell, eta)?;
            if f == 1 && best.is_none_or(|(b, _, _)| d > b) {
                best = Some((d, a, eta));
            }
            rows.push(json!({ "a": a, "eta": eta, "f": f, "delta": d as f64, "ratio": d as f64 / scale }));
        }
    }
    Ok(json!({
        "n": n, "k": k, "ell": ell,
        "rows": rows,
        "threshold": best.map(|b| b.0 as f64),
        "argmax": best.map(|b| json!({ "a": b.1, "eta": b.2 })),
        "scale": scale,
    }))
}

/// Exhaustive Hamilton (ℓ,k−ℓ)-cycle search in a small parity family.
#[wasm_bindgen]
pub fn search_cycle(n: u32, k: u32, a: u32, eta: u8, ell: u32, max_nodes: u32) -> String {
    finish(cycle(n, k, a, eta, ell, max_nodes))
}

fn cycle(n: u32, k: u32, a: u32, eta: u8, ell: u32, max_nodes: u32) -> hamlab::Result<Value> {
    if n > 16 {
        return Err(hamlab::Error::Size(format!("n = {n}: the demo searches up to 16 vertices")));
    }
    let spec = ExtremalSpec::with_prefix(n, k, a, eta)?;
    let h = Hypergraph::extremal(&spec);
    let s = find_ham_cycle(&h, ell, &SearchBudget::nodes(max_nodes as u64))?;
    let witness = s.outcome.found().map(|c| {
        let valid = validate_cycle(&h, c, true).is_ok();
        json!({ "blocks": c.blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>(), "valid": valid })
    });
    Ok(json!({
        "status": s.outcome.status(),
        "nodes": s.nodes,
        "f": spec.f_parity()?,
        "certificate": parity_certificate(&h, &spec, DEFAULT_ENUM_BUDGET)?,
        "edges": h.edge_count(DEFAULT_ENUM_BUDGET)? as f64,
        "witness": witness,
    }))
}

/// Histogram of how many edges of a uniform `t`-matching land in a random
/// family of density `p`.
#[wasm_bindgen]
pub fn fk_histogram(m: u32, k: u32, t: u32, p: f64, gamma: f64, trials: u32, seed: u32) -> String {
    finish(histogram(m, k, t, p, gamma, trials, seed))
}

fn histogram(m: u32, k: u32, t: u32, p: f64, gamma: f64, trials: u32, seed: u32) -> hamlab::Result<Value> {
    if m > 60 || trials > 200_000 {
        return Err(hamlab::Error::Size("the demo caps m at 60 and trials at 200000".into()));
    }
    let family = random_family(m, k, p, seed as u64)?;
    let (r, etas) = fk_experiment(&family, t, gamma, trials as u64, seed as u64, DEFAULT_ENUM_BUDGET)?;
    let mut counts = vec![0u64; t as usize + 1];
    for e in etas {
        counts[e as usize] += 1;
    }
    Ok(json!({ "result": r, "counts": counts }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn profile_threshold_matches_enumeration() {
        let v = parse(threshold_profile(12, 4, 3));
        let want = hamlab::extremal::delta_threshold(12, 4, 3, hamlab::extremal::ThresholdMethod::Enumeration).unwrap();
        assert_eq!(v["threshold"].as_f64().unwrap(), *want.value.numer() as f64);
        assert_eq!(v["rows"].as_array().unwrap().len(), 26);
    }

    #[test]
    fn extremal_cycle_is_absent() {
        let v = parse(search_cycle(6, 3, 3, 1, 2, 1_000_000));
        assert_eq!(v["status"], "none");
        assert_eq!(v["certificate"], true);
    }

    #[test]
    fn complete_like_family_has_cycle() {
        let v = parse(search_cycle(9, 3, 4, 0, 2, 1_000_000));
        assert_eq!(v["f"], 0);
        if v["status"] == "found" {
            assert_eq!(v["witness"]["valid"], true);
        }
    }

    #[test]
    fn histogram_sums_to_trials() {
        let v = parse(fk_histogram(30, 3, 5, 0.5, 2.0, 2000, 1));
        let total: u64 = v["counts"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).sum();
        assert_eq!(total, 2000);
    }

    #[test]
    fn errors_are_json() {
        assert!(parse(search_cycle(40, 3, 1, 1, 1, 10)).get("error").is_some());
    }
}
