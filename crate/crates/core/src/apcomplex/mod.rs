//! Anderson–Putnam graphs of one-dimensional substitution tilings.
//!
//! Edges are prototiles (or collared prototiles, one neighbour deep on each
//! side); vertices are classes of tile endpoints, where the right end of `x`
//! is glued to the left end of `y` whenever `x y` is legal (for collared
//! tiles, whenever the two collared tiles overlap in a legal 4-factor). The
//! substitution induces a self-map sending each edge to an edge path; the
//! tiling space is the inverse limit of the graph under that map.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;
use crate::substitution::{language_factors, perron, PerronData, SubstitutionRule};

/// Legal factors of length `n`.
pub fn two_factors(rule: &SubstitutionRule, n: usize) -> Result<BTreeSet<Vec<u8>>> {
    language_factors(rule, n)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Edge {
    /// The tile word: a single letter, or `left core right` when collared.
    pub tile: Vec<u8>,
    pub core: u8,
    pub tail: usize,
    pub head: usize,
    /// Exact Perron length of the core letter, when available.
    pub length: Option<QuadraticNumber>,
    pub length_approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct APGraph {
    #[serde(serialize_with = "as_string")]
    pub rule: SubstitutionRule,
    pub collared: bool,
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
    /// Image edge path of every edge.
    pub self_map: Vec<Vec<usize>>,
    /// Image class of every vertex.
    pub vertex_map: Vec<usize>,
    pub lambda: f64,
    #[serde(skip)]
    exact_lambda: Option<QuadraticNumber>,
}

fn as_string<S: serde::Serializer>(
    r: &SubstitutionRule,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }

    /// Dense class numbers in order of first appearance.
    fn classes(&mut self) -> (Vec<usize>, usize) {
        let mut id = vec![usize::MAX; self.0.len()];
        let mut out = Vec::with_capacity(self.0.len());
        let mut next = 0;
        for x in 0..self.0.len() {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out.push(id[r]);
        }
        (out, next)
    }
}

struct Lengths {
    exact: Option<Vec<QuadraticNumber>>,
    approx: Vec<f64>,
    lambda: f64,
    exact_lambda: Option<QuadraticNumber>,
}

fn lengths(rule: &SubstitutionRule) -> Result<Lengths> {
    Ok(match perron(rule)? {
        PerronData::Exact { lambda, lengths } => Lengths {
            approx: lengths.iter().map(QuadraticNumber::to_f64).collect(),
            lambda: lambda.to_f64(),
            exact: Some(lengths),
            exact_lambda: Some(lambda),
        },
        PerronData::Approximate {
            lambda, lengths, ..
        } => Lengths {
            exact: None,
            approx: lengths,
            lambda,
            exact_lambda: None,
        },
    })
}

/// Assembles a graph from tile words, the gluing pairs `(i, j)` meaning
/// "right end of tile `i` meets left end of tile `j`", and the image paths.
fn assemble(
    rule: &SubstitutionRule,
    collared: bool,
    tiles: Vec<Vec<u8>>,
    core_at: usize,
    glue: &[(usize, usize)],
    self_map: Vec<Vec<usize>>,
) -> Result<APGraph> {
    let lens = lengths(rule)?;
    let k = tiles.len();
    // node 2i is the left end of tile i, node 2i + 1 its right end
    let mut uf = UnionFind::new(2 * k);
    for &(i, j) in glue {
        uf.union(2 * i + 1, 2 * j);
    }
    let (class, vertex_count) = uf.classes();
    let edges: Vec<Edge> = tiles
        .into_iter()
        .enumerate()
        .map(|(i, tile)| {
            let core = tile[core_at];
            Edge {
                core,
                tail: class[2 * i],
                head: class[2 * i + 1],
                length: lens.exact.as_ref().map(|l| l[core as usize].clone()),
                length_approx: lens.approx[core as usize],
                tile,
            }
        })
        .collect();
    let mut vertex_map = vec![usize::MAX; vertex_count];
    for (e, path) in edges.iter().zip(&self_map) {
        let first = &edges[path[0]];
        let last = &edges[*path.last().expect("images are nonempty")];
        for (v, w) in [(e.tail, first.tail), (e.head, last.head)] {
            if vertex_map[v] == usize::MAX {
                vertex_map[v] = w;
            } else if vertex_map[v] != w {
                return Err(Error::Substitution(
                    "substitution does not induce a map on vertices".into(),
                ));
            }
        }
    }
    Ok(APGraph {
        rule: rule.clone(),
        collared,
        vertex_count,
        edges,
        self_map,
        vertex_map,
        lambda: lens.lambda,
        exact_lambda: lens.exact_lambda,
    })
}

/// One edge per letter.
pub fn build_uncollared(rule: &SubstitutionRule) -> Result<APGraph> {
    let pairs = two_factors(rule, 2)?;
    let tiles: Vec<Vec<u8>> = (0..rule.size() as u8).map(|l| vec![l]).collect();
    let glue: Vec<(usize, usize)> = pairs
        .iter()
        .map(|w| (w[0] as usize, w[1] as usize))
        .collect();
    let self_map = (0..rule.size() as u8)
        .map(|l| rule.image(l).iter().map(|&x| x as usize).collect())
        .collect();
    assemble(rule, false, tiles, 0, &glue, self_map)
}

/// One edge per legal 3-factor `l x r`, read as the tile `x` collared by its
/// neighbours.
pub fn build_collared(rule: &SubstitutionRule) -> Result<APGraph> {
    let tiles: Vec<Vec<u8>> = two_factors(rule, 3)?.into_iter().collect();
    let index = |w: &[u8]| tiles.iter().position(|t| t.as_slice() == w);
    let mut glue = Vec::new();
    for w in two_factors(rule, 4)? {
        let i = index(&w[..3]).expect("factors of legal words are legal");
        let j = index(&w[1..]).expect("factors of legal words are legal");
        glue.push((i, j));
    }
    let mut self_map = Vec::with_capacity(tiles.len());
    for t in &tiles {
        let left = rule.image(t[0]);
        let u = rule.apply_letters(t);
        let core_len = rule.image(t[1]).len();
        let path = (left.len()..left.len() + core_len)
            .map(|p| index(&u[p - 1..p + 2]).expect("collars of legal words are legal"))
            .collect();
        self_map.push(path);
    }
    assemble(rule, true, tiles, 1, &glue, self_map)
}

/// `E - V + C`.
pub fn betti1(g: &APGraph) -> usize {
    let mut uf = UnionFind::new(g.vertex_count);
    for e in &g.edges {
        uf.union(e.tail, e.head);
    }
    let components = uf.classes().1;
    g.edges.len() + components - g.vertex_count
}

impl APGraph {
    pub fn betti1(&self) -> usize {
        betti1(self)
    }

    pub fn exact_lambda(&self) -> Option<&QuadraticNumber> {
        self.exact_lambda.as_ref()
    }

    /// Edge paths are connected: each edge ends where the next begins.
    pub fn is_continuous(&self, path: &[usize]) -> bool {
        path.windows(2)
            .all(|w| self.edges[w[0]].head == self.edges[w[1]].tail)
    }

    pub fn path_length(&self, path: &[usize]) -> Option<QuadraticNumber> {
        path.iter().try_fold(QuadraticNumber::zero(), |acc, &e| {
            self.edges[e].length.as_ref().map(|l| &acc + l)
        })
    }

    fn label(&self, e: &Edge) -> String {
        let core = self.rule.alphabet()[e.core as usize];
        if self.collared {
            let a = self.rule.alphabet();
            format!(
                "{}({}){}",
                a[e.tile[0] as usize], core, a[e.tile[2] as usize]
            )
        } else {
            core.to_string()
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ap {\n");
        for v in 0..self.vertex_count {
            let _ = writeln!(s, "  v{v};");
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  v{} -> v{} [label=\"{}\"];",
                e.tail,
                e.head,
                self.label(e)
            );
        }
        s.push_str("}\n");
        s
    }
}

/// The inverse system `Omega_0 <- Omega_0 <- ...` as one graph with the
/// `n`-fold composite of the self-map.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tower {
    pub depth: u32,
    pub paths: Vec<Vec<usize>>,
    /// Whether every path length equals `lambda^n` times its edge length;
    /// `None` without exact lengths.
    pub scaling_exact: Option<bool>,
    pub continuous: bool,
}

pub fn approximant_tower(g: &APGraph, n: u32) -> Tower {
    let mut paths: Vec<Vec<usize>> = (0..g.edges.len()).map(|e| vec![e]).collect();
    for _ in 0..n {
        paths = paths
            .iter()
            .map(|p| {
                p.iter()
                    .flat_map(|&e| g.self_map[e].iter().copied())
                    .collect()
            })
            .collect();
    }
    let scaling_exact = g.exact_lambda().map(|lambda| {
        let mut scale = QuadraticNumber::one();
        for _ in 0..n {
            scale = &scale * lambda;
        }
        g.edges.iter().zip(&paths).all(|(e, p)| {
            let want = e.length.as_ref().map(|l| &scale * l);
            g.path_length(p) == want
        })
    });
    let continuous = paths.iter().all(|p| g.is_continuous(p));
    Tower {
        depth: n,
        paths,
        scaling_exact,
        continuous,
    }
}

#[cfg(test)]
mod tests;
