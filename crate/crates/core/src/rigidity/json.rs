//! Framework JSON: norm spec, graph, and a placement keyed by vertex name.
//! Coordinates are numbers, or strings such as `"3/4"` for exact values.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Framework;
use crate::graph::Graph;
use crate::norms::parse::parse_rational;
use crate::norms::{parse_norm_spec, RationalPair};
use crate::vector::Vector2;

#[derive(Serialize, Deserialize, Clone)]
#[serde(untagged)]
enum Coord {
    Number(f64),
    Exact(String),
}

#[derive(Serialize, Deserialize)]
struct FrameworkJson {
    norm: String,
    #[serde(flatten)]
    graph: Graph,
    placement: BTreeMap<String, [Coord; 2]>,
}

impl Serialize for Framework {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let names = self.graph.names();
        let placement = match &self.exact {
            Some(exact) => names
                .iter()
                .zip(exact)
                .map(|(n, (x, y))| {
                    (
                        n.clone(),
                        [Coord::Exact(x.to_string()), Coord::Exact(y.to_string())],
                    )
                })
                .collect(),
            None => names
                .iter()
                .zip(&self.placement)
                .map(|(n, p)| (n.clone(), [Coord::Number(p.x), Coord::Number(p.y)]))
                .collect(),
        };
        FrameworkJson {
            norm: self.norm.to_string(),
            graph: self.graph.clone(),
            placement,
        }
        .serialize(s)
    }
}

fn exact(c: &Coord) -> Result<BigRational, String> {
    match c {
        Coord::Number(v) => {
            BigRational::from_float(*v).ok_or_else(|| format!("non-finite coordinate {v}"))
        }
        Coord::Exact(s) => parse_rational(s).map_err(|(_, m)| m),
    }
}

impl<'de> Deserialize<'de> for Framework {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FrameworkJson::deserialize(d)?;
        let norm = parse_norm_spec(&raw.norm).map_err(D::Error::custom)?;
        let g = raw.graph;
        if let Some(extra) = raw.placement.keys().find(|k| g.index_of(k).is_none()) {
            return Err(D::Error::custom(format!(
                "placement names unknown vertex \"{extra}\""
            )));
        }
        let mut coords = Vec::with_capacity(g.vertex_count());
        for name in g.names() {
            let c = raw
                .placement
                .get(name)
                .ok_or_else(|| D::Error::custom(format!("vertex \"{name}\" has no placement")))?;
            coords.push(c.clone());
        }
        let any_exact = coords
            .iter()
            .flatten()
            .any(|c| matches!(c, Coord::Exact(_)));
        let fw = if any_exact {
            let pts: Vec<RationalPair> = coords
                .iter()
                .map(|[x, y]| Ok((exact(x)?, exact(y)?)))
                .collect::<Result<_, String>>()
                .map_err(D::Error::custom)?;
            Framework::from_rational(g, pts, norm)
        } else {
            let pts = coords
                .iter()
                .map(|c| match c {
                    [Coord::Number(x), Coord::Number(y)] => Vector2::new(*x, *y),
                    _ => unreachable!("no exact coordinates"),
                })
                .collect();
            Framework::new(g, pts, norm)
        };
        fw.map_err(D::Error::custom)
    }
}
