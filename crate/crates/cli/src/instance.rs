//! Instance sources and small value parsers shared by the subcommands.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use hamlab::{ExtremalSpec, Hypergraph, VertexSet};

use crate::Failure;

/// Where the hypergraph comes from. Exactly one source must be given.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Hypergraph text file.
    #[arg(long, group = "source")]
    pub file: Option<PathBuf>,
    /// Parity family `n=..,k=..,a=..,eta=..` with `A = {0..a-1}`.
    #[arg(long, group = "source")]
    pub extremal: Option<String>,
    /// Complete graph `n=..,k=..`.
    #[arg(long, group = "source")]
    pub complete: Option<String>,
    /// Empty graph `n=..,k=..`.
    #[arg(long, group = "source")]
    pub empty: Option<String>,
    /// Random graph `n=..,k=..,p=..` (needs --seed).
    #[arg(long, group = "source")]
    pub random: Option<String>,
    /// Drop each edge with this probability (needs --seed).
    #[arg(long)]
    pub thin: Option<f64>,
    /// Reference family `a=..,eta=..` for non-extremal sources.
    #[arg(long)]
    pub against: Option<String>,
}

pub struct Instance {
    pub graph: Hypergraph,
    pub spec: Option<ExtremalSpec>,
    pub label: String,
}

pub fn keyvals(s: &str) -> Result<BTreeMap<String, String>, Failure> {
    s.split(',')
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| Failure::usage(format!("expected key=value, got {kv:?}")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn get<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str, what: &str) -> Result<T, Failure> {
    let raw = map.get(key).ok_or_else(|| Failure::usage(format!("{what}: missing {key}=")))?;
    raw.parse().map_err(|_| Failure::usage(format!("{what}: bad value for {key}: {raw:?}")))
}

pub fn parse_spec(s: &str, dims: Option<(u32, u32)>) -> Result<ExtremalSpec, Failure> {
    let map = keyvals(s)?;
    let (n, k) = match dims {
        Some(d) => d,
        None => (get(&map, "n", "extremal")?, get(&map, "k", "extremal")?),
    };
    let a: u32 = get(&map, "a", "extremal")?;
    let eta: u8 = get(&map, "eta", "extremal")?;
    Ok(ExtremalSpec::with_prefix(n, k, a, eta)?)
}

pub fn parse_set(s: &str) -> Result<VertexSet, Failure> {
    if s.trim().is_empty() {
        return Ok(VertexSet::new());
    }
    let vs: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Failure::usage(format!("bad vertex label {t:?}"))))
        .collect::<Result<_, _>>()?;
    Ok(VertexSet::from_slice(&vs))
}

impl Source {
    fn count(&self) -> usize {
        [self.file.is_some(), self.extremal.is_some(), self.complete.is_some(), self.empty.is_some(), self.random.is_some()]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    pub fn load(&self, seed: Option<u64>) -> Result<Instance, Failure> {
        if self.count() != 1 {
            return Err(Failure::usage("give exactly one of --file, --extremal, --complete, --empty, --random"));
        }
        let need_seed = |what: &str| seed.ok_or_else(|| Failure::usage(format!("{what} is randomized and needs --seed")));
        let (mut graph, mut spec, mut label) = if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
            (Hypergraph::parse_text(&text)?, None, path.display().to_string())
        } else if let Some(s) = &self.extremal {
            let spec = parse_spec(s, None)?;
            (Hypergraph::extremal(&spec), Some(spec), format!("extremal {s}"))
        } else if let Some(s) = &self.complete {
            let m = keyvals(s)?;
            (Hypergraph::complete(get(&m, "n", "complete")?, get(&m, "k", "complete")?)?, None, format!("complete {s}"))
        } else if let Some(s) = &self.empty {
            let m = keyvals(s)?;
            (Hypergraph::empty(get(&m, "n", "empty")?, get(&m, "k", "empty")?)?, None, format!("empty {s}"))
        } else {
            let s = self.random.as_deref().unwrap_or_default();
            let m = keyvals(s)?;
            let p: f64 = get(&m, "p", "random")?;
            let g = hamlab::mc::random_family(get(&m, "n", "random")?, get(&m, "k", "random")?, p, need_seed("--random")?)?;
            (g, None, format!("random {s}"))
        };
        if let Some(rate) = self.thin {
            graph = graph.thinned(rate, need_seed("--thin")?)?;
            label.push_str(&format!(" thinned {rate}"));
        }
        if let Some(s) = &self.against {
            spec = Some(parse_spec(s, Some((graph.n(), graph.k())))?);
        }
        Ok(Instance { graph, spec, label })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings() {
        let s = parse_spec("n=6,k=3,a=3,eta=1", None).unwrap();
        assert_eq!((s.n, s.k, s.a.len(), s.eta), (6, 3, 3, 1));
        assert!(parse_spec("n=6,k=3,a=3", None).is_err());
        assert!(parse_spec("n=6;k=3", None).is_err());
    }

    #[test]
    fn vertex_lists() {
        assert_eq!(parse_set("2,0,1").unwrap().to_vec(), vec![0, 1, 2]);
        assert!(parse_set("").unwrap().is_empty());
        assert!(parse_set("x").is_err());
    }
}
