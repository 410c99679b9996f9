//! Named graph families, looked up by name at runtime.
//!
//! A graph source string has the form `name` or `name:p1:p2:...` with
//! non-negative integer parameters, e.g. `cycle:12`, `grid:5:5`,
//! `random:50:100:7` or `thomassen-94`.

use std::collections::BTreeMap;

use super::{parse_edge_list, random_graph, Graph};
use crate::error::{Error, Result};

/// A constructor for one family of graphs.
pub trait GraphFamily: Send + Sync {
    fn name(&self) -> &'static str;

    /// Short parameter signature shown in usage text, e.g. `"N"` or `"A:B"`.
    fn params(&self) -> &'static str;

    fn build(&self, params: &[u64]) -> Result<Graph>;
}

pub struct GraphRegistry {
    families: BTreeMap<&'static str, Box<dyn GraphFamily>>,
}

impl GraphRegistry {
    pub fn empty() -> Self {
        Self {
            families: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, family: Box<dyn GraphFamily>) {
        self.families.insert(family.name(), family);
    }

    pub fn get(&self, name: &str) -> Option<&dyn GraphFamily> {
        self.families.get(name).map(|f| f.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.families.keys().copied()
    }

    /// Usage lines, one per family: `cycle:N`, `thomassen-94`, ...
    pub fn signatures(&self) -> Vec<String> {
        self.families
            .values()
            .map(|f| match f.params() {
                "" => f.name().to_string(),
                p => format!("{}:{}", f.name(), p),
            })
            .collect()
    }

    pub fn build(&self, name: &str, params: &[u64]) -> Result<Graph> {
        let family = self
            .get(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
        family.build(params)
    }

    /// Resolves a `name[:p1[:p2...]]` source string.
    pub fn resolve(&self, source: &str) -> Result<Graph> {
        let mut parts = source.split(':');
        let name = parts.next().unwrap_or_default();
        let params = parts
            .map(|p| {
                p.parse::<u64>().map_err(|_| Error::BadParams {
                    name: name.to_string(),
                    reason: format!("parameter {p:?} is not a non-negative integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.build(name, &params)
    }
}

impl Default for GraphRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(Path));
        reg.register(Box::new(Cycle));
        reg.register(Box::new(Complete));
        reg.register(Box::new(Grid));
        reg.register(Box::new(Random));
        reg.register(Box::new(Bundled {
            name: "faulkner-younger-44",
            data: include_str!("../../data/faulkner-younger-44.edges"),
        }));
        reg.register(Box::new(Bundled {
            name: "thomassen-94",
            data: include_str!("../../data/thomassen-94.edges"),
        }));
        reg
    }
}

fn expect_params<'a, const K: usize>(name: &str, params: &'a [u64]) -> Result<&'a [u64; K]> {
    params.try_into().map_err(|_| Error::BadParams {
        name: name.to_string(),
        reason: format!("expected {K} parameter(s), got {}", params.len()),
    })
}

fn at_least(name: &str, what: &str, value: u64, min: u64) -> Result<usize> {
    if value < min {
        return Err(Error::BadParams {
            name: name.to_string(),
            reason: format!("{what} = {value} < {min}"),
        });
    }
    usize::try_from(value).map_err(|_| Error::BadParams {
        name: name.to_string(),
        reason: format!("{what} = {value} too large"),
    })
}

struct Path;

impl GraphFamily for Path {
    fn name(&self) -> &'static str {
        "path"
    }
    fn params(&self) -> &'static str {
        "N"
    }
    fn build(&self, params: &[u64]) -> Result<Graph> {
        let [n] = *expect_params::<1>(self.name(), params)?;
        let n = at_least(self.name(), "n", n, 2)?;
        Graph::new(n, (1..n).map(|v| (v - 1, v)), Some(format!("path:{n}")))
    }
}

/// Cycle on `n >= 3` vertices (smaller cycles would need a multi-edge).
struct Cycle;

impl GraphFamily for Cycle {
    fn name(&self) -> &'static str {
        "cycle"
    }
    fn params(&self) -> &'static str {
        "N"
    }
    fn build(&self, params: &[u64]) -> Result<Graph> {
        let [n] = *expect_params::<1>(self.name(), params)?;
        let n = at_least(self.name(), "n", n, 3)?;
        Graph::new(
            n,
            (0..n).map(|v| (v, (v + 1) % n)),
            Some(format!("cycle:{n}")),
        )
    }
}

struct Complete;

impl GraphFamily for Complete {
    fn name(&self) -> &'static str {
        "complete"
    }
    fn params(&self) -> &'static str {
        "N"
    }
    fn build(&self, params: &[u64]) -> Result<Graph> {
        let [n] = *expect_params::<1>(self.name(), params)?;
        let n = at_least(self.name(), "n", n, 2)?;
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges, Some(format!("complete:{n}")))
    }
}

/// `a x b` grid graph; vertex `(r, c)` has index `r * b + c`.
struct Grid;

impl GraphFamily for Grid {
    fn name(&self) -> &'static str {
        "grid"
    }
    fn params(&self) -> &'static str {
        "A:B"
    }
    fn build(&self, params: &[u64]) -> Result<Graph> {
        let [a, b] = *expect_params::<2>(self.name(), params)?;
        let a = at_least(self.name(), "a", a, 1)?;
        let b = at_least(self.name(), "b", b, 1)?;
        if a * b < 2 {
            return Err(Error::BadParams {
                name: self.name().into(),
                reason: "grid needs at least two vertices".into(),
            });
        }
        let mut edges = Vec::new();
        for r in 0..a {
            for c in 0..b {
                let v = r * b + c;
                if c + 1 < b {
                    edges.push((v, v + 1));
                }
                if r + 1 < a {
                    edges.push((v, v + b));
                }
            }
        }
        Graph::new(a * b, edges, Some(format!("grid:{a}:{b}")))
    }
}

struct Random;

impl GraphFamily for Random {
    fn name(&self) -> &'static str {
        "random"
    }
    fn params(&self) -> &'static str {
        "N:M:SEED"
    }
    fn build(&self, params: &[u64]) -> Result<Graph> {
        let [n, m, seed] = *expect_params::<3>(self.name(), params)?;
        let n = at_least(self.name(), "n", n, 2)?;
        let m = at_least(self.name(), "m", m, 1)?;
        random_graph(n, m, seed)
    }
}

/// Graph shipped as an edge-list file under `data/`.
struct Bundled {
    name: &'static str,
    data: &'static str,
}

impl GraphFamily for Bundled {
    fn name(&self) -> &'static str {
        self.name
    }
    fn params(&self) -> &'static str {
        ""
    }
    fn build(&self, params: &[u64]) -> Result<Graph> {
        expect_params::<0>(self.name, params)?;
        Ok(parse_edge_list(self.data)?.with_name(self.name))
    }
}
