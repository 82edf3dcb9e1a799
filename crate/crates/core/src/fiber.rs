//! Fiber graphs: parsing, validation, self-intersections, total trace and
//! the character of the action on `H^1`.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::GroupRingElement;
use crate::resolution::{resolve, Singularity};
use crate::singtrace::{vertex_trace, ChainSum, TraceMethod};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub genus: u64,
    pub mult: u64,
}

/// A connected multigraph of components with genus and multiplicity.
///
/// Vertices are kept sorted by id; edges are stored as index pairs `(a, b)`
/// with `a <= b`, so `b` is the endpoint with the larger id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
}

impl FiberGraph {
    /// Build and validate a graph from vertices and id pairs.
    pub fn new<S: AsRef<str>>(vertices: Vec<Vertex>, edges: &[(S, S)]) -> Result<Self> {
        let mut vertices = vertices;
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        for w in vertices.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::Validation(format!("duplicate vertex `{}`", w[0].id)));
            }
        }
        if let Some(v) = vertices.iter().find(|v| v.mult == 0) {
            return Err(Error::Validation(format!(
                "vertex `{}` has multiplicity 0",
                v.id
            )));
        }
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let lookup = |s: &str| {
                index.get(s).copied().ok_or_else(|| {
                    Error::Validation(format!("edge refers to unknown vertex `{s}`"))
                })
            };
            let (i, j) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            idx_edges.push((i.min(j), i.max(j)));
        }
        idx_edges.sort_unstable();
        let g = Self {
            vertices,
            edges: idx_edges,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::Validation("graph has no vertices".into()));
        }
        if !self.vertices.iter().any(|v| v.mult == 1) {
            return Err(Error::Validation(
                "no vertex of multiplicity 1 (the curve needs a rational point)".into(),
            ));
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &(a, b) in &self.edges {
                let other = if a == i {
                    b
                } else if b == i {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::Validation(format!(
                "graph is not connected: `{}` is unreachable from `{}`",
                self.vertices[i].id, self.vertices[0].id
            )));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices
            .binary_search_by(|v| v.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.vertices[i])
    }

    /// Edges as id pairs, smaller id first.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(a, b)| (self.vertices[a].id.as_str(), self.vertices[b].id.as_str()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edge ends at `id`; a loop counts twice.
    pub fn degree(&self, id: &str) -> usize {
        self.edges()
            .map(|(a, b)| usize::from(a == id) + usize::from(b == id))
            .sum()
    }

    /// `lcm` of all multiplicities.
    pub fn mult_lcm(&self) -> u64 {
        self.vertices.iter().fold(1, |acc, v| acc.lcm(&v.mult))
    }

    /// Replace edge `k` (in `edges()` order) by a path through a new
    /// genus-0 vertex of multiplicity `mult`.
    pub fn subdivide_edge(&self, k: usize, new_id: &str, mult: u64) -> Result<Self> {
        if k >= self.edges.len() {
            return Err(Error::BadInput(format!("no edge with index {k}")));
        }
        let mut vertices = self.vertices.clone();
        vertices.push(Vertex {
            id: new_id.to_string(),
            genus: 0,
            mult,
        });
        let mut edges: Vec<(String, String)> = Vec::new();
        for (i, (a, b)) in self.edges().enumerate() {
            if i == k {
                edges.push((a.to_string(), new_id.to_string()));
                edges.push((new_id.to_string(), b.to_string()));
            } else {
                edges.push((a.to_string(), b.to_string()));
            }
        }
        Self::new(vertices, &edges)
    }

    fn check_n(&self, n: u64) -> Result<()> {
        let l = self.mult_lcm();
        if n < 2 || n.gcd(&l) != 1 {
            return Err(Error::BadInput(format!(
                "n = {n} must be at least 2 and coprime to the multiplicity lcm {l}"
            )));
        }
        Ok(())
    }

    /// The singularity realizing edge `(a, b)` with `a <= b`.
    fn edge_singularity(&self, a: usize, b: usize, n: u64) -> Result<Singularity> {
        Singularity::new(self.vertices[b].mult, self.vertices[a].mult, n)
    }
}

/// Parse the line-oriented graph format and validate the result.
pub fn parse_graph(text: &str) -> Result<FiberGraph> {
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut known: HashMap<String, usize> = HashMap::new();
    let mut pending_edges: Vec<(usize, String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "vertex" => {
                if tokens.len() != 4 {
                    return Err(err(format!(
                        "expected `vertex <id> genus=<int> mult=<int>`, got `{line}`"
                    )));
                }
                let id = tokens[1].to_string();
                let mut genus = None;
                let mut mult = None;
                for kv in &tokens[2..] {
                    let (key, value) = kv
                        .split_once('=')
                        .ok_or_else(|| err(format!("expected key=value, got `{kv}`")))?;
                    let value: u64 = value
                        .parse()
                        .map_err(|_| err(format!("`{value}` is not a nonnegative integer")))?;
                    let slot = match key {
                        "genus" => &mut genus,
                        "mult" => &mut mult,
                        _ => return Err(err(format!("unknown attribute `{key}`"))),
                    };
                    if slot.replace(value).is_some() {
                        return Err(err(format!("attribute `{key}` given twice")));
                    }
                }
                let (Some(genus), Some(mult)) = (genus, mult) else {
                    return Err(err("vertex needs both genus= and mult=".into()));
                };
                if mult == 0 {
                    return Err(err(format!("vertex `{id}` has multiplicity 0")));
                }
                if known.insert(id.clone(), line_no).is_some() {
                    return Err(err(format!("vertex `{id}` declared twice")));
                }
                vertices.push(Vertex { id, genus, mult });
            }
            "edge" => {
                if tokens.len() != 3 {
                    return Err(err(format!("expected `edge <id> <id>`, got `{line}`")));
                }
                pending_edges.push((line_no, tokens[1].to_string(), tokens[2].to_string()));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    for (line, a, b) in pending_edges {
        for id in [&a, &b] {
            if !known.contains_key(id) {
                return Err(Error::Parse {
                    line,
                    msg: format!("edge refers to undeclared vertex `{id}`"),
                });
            }
        }
        edges.push((a, b));
    }
    FiberGraph::new(vertices, &edges)
}

impl fmt::Display for FiberGraph {
    /// Writes the graph in the format read by [`parse_graph`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {} genus={} mult={}", v.id, v.genus, v.mult)?;
        }
        for (a, b) in self.edges() {
            writeln!(f, "edge {a} {b}")?;
        }
        Ok(())
    }
}

/// Self-intersection numbers `C_v^2` for a fixed `n`, keyed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfIntersections {
    pub n: u64,
    pub values: BTreeMap<String, i64>,
}

/// Sum of chain-end multiplicities meeting each vertex, in vertex order.
fn chain_end_sums(g: &FiberGraph, n: u64) -> Result<Vec<u64>> {
    let mut sums = vec![0u64; g.vertices.len()];
    let mut cache: HashMap<(u64, u64), (u64, u64)> = HashMap::new();
    for &(a, b) in &g.edges {
        let sing = g.edge_singularity(a, b, n)?;
        let key = (sing.m1, sing.m2);
        let (first, last) = match cache.get(&key) {
            Some(&v) => v,
            None => {
                let res = resolve(sing)?;
                let v = (res.mu_first(), res.mu_last());
                cache.insert(key, v);
                v
            }
        };
        // the m2 side (smaller id) meets mu_1, the m1 side meets mu_L
        sums[a] += first;
        sums[b] += last;
    }
    Ok(sums)
}

pub fn self_intersections(g: &FiberGraph, n: u64) -> Result<SelfIntersections> {
    g.check_n(n)?;
    let sums = chain_end_sums(g, n)?;
    let mut values = BTreeMap::new();
    for (v, &sum) in g.vertices.iter().zip(&sums) {
        if sum % v.mult != 0 {
            return Err(Error::NonIntegralSelfIntersection {
                vertex: v.id.clone(),
                sum,
                mult: v.mult,
            });
        }
        values.insert(v.id.clone(), -((sum / v.mult) as i64));
    }
    Ok(SelfIntersections { n, values })
}

/// Sum of vertex and edge contributions, using the chain sum for edges.
pub fn total_trace(g: &FiberGraph, n: u64) -> Result<GroupRingElement> {
    total_trace_with(g, n, &ChainSum)
}

pub fn total_trace_with(
    g: &FiberGraph,
    n: u64,
    method: &dyn TraceMethod,
) -> Result<GroupRingElement> {
    let si = self_intersections(g, n)?;
    let mut total = GroupRingElement::zero(n);
    for v in &g.vertices {
        let c2 = si.values[&v.id];
        total = total.try_add(&vertex_trace(v.mult, v.genus, c2, n)?)?;
    }
    let mut cache: HashMap<(u64, u64), GroupRingElement> = HashMap::new();
    for &(a, b) in &g.edges {
        let sing = g.edge_singularity(a, b, n)?;
        let key = (sing.m1, sing.m2);
        let t = match cache.entry(key) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(method.trace(&resolve(sing)?)?),
        };
        total = total.try_add(t)?;
    }
    Ok(total)
}

/// Exponents of the irreducible characters on `H^1`, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterMultiset {
    pub n: u64,
    /// exponent -> multiplicity, ascending by exponent
    pub exponents: BTreeMap<u64, u64>,
}

impl CharacterMultiset {
    /// Sum of multiplicities, i.e. the genus.
    pub fn total(&self) -> u64 {
        self.exponents.values().sum()
    }

    /// Exponents repeated according to multiplicity, ascending.
    pub fn flattened(&self) -> Vec<u64> {
        self.exponents
            .iter()
            .flat_map(|(&e, &k)| std::iter::repeat_n(e, k as usize))
            .collect()
    }

    /// Read off the characters from `1 - total_trace`.
    pub fn from_trace(trace: &GroupRingElement) -> Result<Self> {
        let n = trace.modulus();
        let h1 = GroupRingElement::one(n).try_sub(trace)?;
        let mut exponents = BTreeMap::new();
        for (e, c) in h1.terms() {
            if c.is_negative() {
                return Err(Error::NegativeCharacterCoefficient {
                    exponent: e,
                    coeff: c.to_string(),
                });
            }
            debug_assert!(!c.is_zero());
            let k = c.to_u64().ok_or_else(|| {
                Error::BadInput(format!("character multiplicity {c} out of range"))
            })?;
            exponents.insert(e, k);
        }
        Ok(Self { n, exponents })
    }
}

pub fn h1_character(g: &FiberGraph, n: u64) -> Result<CharacterMultiset> {
    CharacterMultiset::from_trace(&total_trace(g, n)?)
}

pub fn h1_character_with(
    g: &FiberGraph,
    n: u64,
    method: &dyn TraceMethod,
) -> Result<CharacterMultiset> {
    CharacterMultiset::from_trace(&total_trace_with(g, n, method)?)
}

/// Genus read off at the trivial element: `1 - Tr(1)`.
pub fn genus(g: &FiberGraph, n: u64) -> Result<BigInt> {
    Ok(BigInt::from(1) - total_trace(g, n)?.eval_at_one())
}
