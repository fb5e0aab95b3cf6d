//! Finite metric trees with boundary labels and their dual arc systems.
//!
//! An [`ArcSystem`] lives in a disc, a disc with one cone point, or an annulus.
//! The `n` boundary labels sit at positions `0..n` around the outer circle, and
//! gap `g` is the boundary stretch just before position `g`. A chord from gap
//! `from` to gap `to` cuts off positions `from..to` (the side away from the
//! cone point or the inner boundary). A spoke runs from a gap to the cone point.
//!
//! All lengths are exact rationals.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::amalgam::{BookGroup, NormalForm};
use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

mod ratio_string {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(Rational::from_integer(i)),
            Raw::Text(t) => t.trim().parse().map_err(|_| D::Error::custom(format!("bad rational {t:?}"))),
        }
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeVertex {
    pub id: usize,
    #[serde(default)]
    pub labels: Vec<u32>,
    /// Marks the vertex `v_P` of the torus boundary component.
    #[serde(default, skip_serializing_if = "is_false")]
    pub peripheral: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub u: usize,
    pub v: usize,
    #[serde(with = "ratio_string")]
    pub len: Rational,
}

/// A finite tree with positive rational edge lengths.
///
/// `cone` lists the edge ids of the cone subtree `t_c`; once it has been
/// collapsed, `cone_vertex` records the resulting vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricLabeledTree {
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<TreeEdge>,
    #[serde(default)]
    pub cone: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_order: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    Disc,
    Cone { order: u32 },
    Annulus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chord {
    pub from: usize,
    pub to: usize,
    #[serde(with = "ratio_string")]
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spoke {
    pub gap: usize,
    #[serde(with = "ratio_string")]
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSystem {
    pub base: Base,
    /// Labels in cyclic order around the outer boundary.
    pub order: Vec<u32>,
    #[serde(default)]
    pub chords: Vec<Chord>,
    #[serde(default)]
    pub spokes: Vec<Spoke>,
}

/// Output of [`realize`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub order: Vec<u32>,
    pub arcs: ArcSystem,
    /// `sigma[i - 1]` is the label placed at position `i`.
    pub sigma: Vec<u32>,
}

impl MetricLabeledTree {
    pub fn new(vertices: Vec<TreeVertex>, edges: Vec<TreeEdge>) -> Result<Self> {
        let t = MetricLabeledTree { vertices, edges, cone: Vec::new(), cone_vertex: None, cone_order: None };
        t.validate()?;
        Ok(t)
    }

    /// Convenience constructor: `labels[v]` for vertex `v`, edges as `(u, v, len)`.
    pub fn from_parts(labels: &[&[u32]], edges: &[(usize, usize, Rational)]) -> Result<Self> {
        let vertices = labels
            .iter()
            .enumerate()
            .map(|(id, l)| TreeVertex { id, labels: l.to_vec(), peripheral: false })
            .collect();
        let edges = edges.iter().map(|&(u, v, len)| TreeEdge { u, v, len }).collect();
        Self::new(vertices, edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: MetricLabeledTree = serde_json::from_str(text).map_err(|e| Error::InvalidTree(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let nv = self.vertices.len();
        if nv == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return Err(Error::InvalidTree(format!("vertex ids must be 0..{nv} in order, found {} at {i}", v.id)));
            }
        }
        if self.edges.len() + 1 != nv {
            return Err(Error::InvalidTree(format!("{nv} vertices need {} edges, got {}", nv - 1, self.edges.len())));
        }
        for e in &self.edges {
            if e.u >= nv || e.v >= nv || e.u == e.v {
                return Err(Error::InvalidTree(format!("bad edge {}-{}", e.u, e.v)));
            }
            if e.len <= Rational::zero() {
                return Err(Error::InvalidTree(format!("edge {}-{} has nonpositive length {}", e.u, e.v, e.len)));
            }
        }
        let adj = self.adjacency();
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidTree("not connected".into()));
        }
        let mut labels = BTreeSet::new();
        for v in &self.vertices {
            for &l in &v.labels {
                if l == 0 || !labels.insert(l) {
                    return Err(Error::InvalidTree(format!("label {l} is zero or repeated")));
                }
            }
        }
        if self.vertices.iter().filter(|v| v.peripheral).count() > 1 {
            return Err(Error::InvalidTree("more than one peripheral vertex".into()));
        }
        for &e in &self.cone {
            if e >= self.edges.len() {
                return Err(Error::InvalidTree(format!("cone edge {e} out of range")));
            }
        }
        if let Some(c) = self.cone_vertex {
            if c >= nv {
                return Err(Error::InvalidTree(format!("cone vertex {c} out of range")));
            }
        }
        Ok(())
    }

    /// `adj[v] = [(neighbour, edge id)]`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        adj
    }

    pub fn labels(&self) -> BTreeSet<u32> {
        self.vertices.iter().flat_map(|v| v.labels.iter().copied()).collect()
    }

    pub fn vertex_of_label(&self, label: u32) -> Option<usize> {
        self.vertices.iter().position(|v| v.labels.contains(&label))
    }

    pub fn total_length(&self) -> Rational {
        self.edges.iter().map(|e| e.len).sum()
    }

    /// Distances from `src` to every vertex.
    pub fn distances_from(&self, src: usize) -> Vec<Rational> {
        let adj = self.adjacency();
        let mut dist = vec![Rational::zero(); self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([src]);
        seen[src] = true;
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    dist[y] = dist[x] + self.edges[e].len;
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

impl fmt::Display for MetricLabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            write!(f, "v{}{:?}", v.id, v.labels)?;
            if v.peripheral {
                write!(f, "P")?;
            }
            if self.cone_vertex == Some(v.id) {
                write!(f, "c")?;
            }
            write!(f, " ")?;
        }
        for e in &self.edges {
            write!(f, "| {}-{}:{} ", e.u, e.v, e.len)?;
        }
        Ok(())
    }
}

impl ArcSystem {
    pub fn empty(base: Base, order: Vec<u32>) -> Self {
        ArcSystem { base, order, chords: Vec::new(), spokes: Vec::new() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: ArcSystem = serde_json::from_str(text).map_err(|e| Error::InvalidArcSystem(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn arc_count(&self) -> usize {
        self.chords.len() + self.spokes.len()
    }

    pub fn total_weight(&self) -> Rational {
        self.chords.iter().map(|c| c.weight).chain(self.spokes.iter().map(|s| s.weight)).sum()
    }

    /// Checks labels, essentiality, positivity and that no two arcs cross.
    pub fn validate(&self) -> Result<()> {
        let n = self.order.len();
        let bad = |m: String| Err(Error::InvalidArcSystem(m));
        if n == 0 {
            return bad("no boundary labels".into());
        }
        let mut sorted = self.order.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &l)| l as usize != i + 1) {
            return bad(format!("order {:?} is not a permutation of 1..{n}", self.order));
        }
        let full_allowed = self.base == Base::Annulus;
        for c in &self.chords {
            if c.weight <= Rational::zero() {
                return bad(format!("chord {}..{} has nonpositive weight", c.from, c.to));
            }
            if c.from >= c.to || c.to > n || (c.to - c.from == n && !full_allowed) {
                return bad(format!("chord {}..{} is not essential for {n} labels", c.from, c.to));
            }
        }
        for (i, a) in self.chords.iter().enumerate() {
            for b in &self.chords[i + 1..] {
                let nested = (a.from <= b.from && b.to <= a.to) || (b.from <= a.from && a.to <= b.to);
                let disjoint = a.to <= b.from || b.to <= a.from;
                if !nested && !disjoint {
                    return bad(format!("chords {}..{} and {}..{} cross", a.from, a.to, b.from, b.to));
                }
            }
        }
        match self.base {
            Base::Cone { order } => {
                if order == 0 {
                    return bad("cone order must be positive".into());
                }
                if self.spokes.len() < 2 {
                    return bad("a cone point needs at least two spokes".into());
                }
                let gaps: BTreeSet<usize> = self.spokes.iter().map(|s| s.gap).collect();
                if gaps.len() != self.spokes.len() {
                    return bad("spokes must end in distinct gaps".into());
                }
                for s in &self.spokes {
                    if s.gap >= n {
                        return bad(format!("spoke gap {} out of range", s.gap));
                    }
                    if s.weight <= Rational::zero() {
                        return bad(format!("spoke at gap {} has nonpositive weight", s.gap));
                    }
                    if let Some(c) = self.chords.iter().find(|c| c.from < s.gap && s.gap < c.to) {
                        return bad(format!("spoke at gap {} crosses chord {}..{}", s.gap, c.from, c.to));
                    }
                }
            }
            _ => {
                if !self.spokes.is_empty() {
                    return bad("spokes need a cone point".into());
                }
            }
        }
        Ok(())
    }
}

/// The tree dual to an arc system: one vertex per complementary region, one
/// edge per arc with length equal to its weight.
///
/// In the cone case the cone point is its own vertex, joined by one edge per
/// spoke to the sector starting at that spoke.
pub fn dual_tree(s: &ArcSystem) -> Result<MetricLabeledTree> {
    s.validate()?;
    let n = s.order.len();
    // parents: chords sorted outermost first, ties by index
    let mut idx: Vec<usize> = (0..s.chords.len()).collect();
    idx.sort_by_key(|&i| (s.chords[i].from, std::cmp::Reverse(s.chords[i].to), i));
    let mut vertices: Vec<TreeVertex> = Vec::new();
    let mut edges: Vec<TreeEdge> = Vec::new();
    let mut cone_vertex = None;
    // owner[pos] = region currently holding that boundary position
    let mut owner = vec![0usize; n];
    match s.base {
        Base::Cone { .. } => {
            vertices.push(TreeVertex { id: 0, labels: Vec::new(), peripheral: false });
            cone_vertex = Some(0);
            let mut spokes = s.spokes.clone();
            spokes.sort_by_key(|sp| sp.gap);
            for (k, sp) in spokes.iter().enumerate() {
                let id = vertices.len();
                vertices.push(TreeVertex { id, labels: Vec::new(), peripheral: false });
                edges.push(TreeEdge { u: 0, v: id, len: sp.weight });
                let end = spokes.get(k + 1).map_or(spokes[0].gap + n, |x| x.gap);
                for p in sp.gap..end {
                    owner[p % n] = id;
                }
            }
        }
        base => {
            vertices.push(TreeVertex { id: 0, labels: Vec::new(), peripheral: base == Base::Annulus });
        }
    }
    // outermost first, so a chord's parent is the innermost open chord
    // containing it, or the region owning its first position
    let first = vertices.len();
    let mut stack: Vec<(usize, usize)> = Vec::new(); // (to, region)
    let mut innermost = owner;
    for (k, &i) in idx.iter().enumerate() {
        let c = &s.chords[i];
        while stack.last().is_some_and(|&(to, _)| to <= c.from) {
            stack.pop();
        }
        let parent = stack.last().map_or(innermost[c.from], |&(_, r)| r);
        let id = first + k;
        vertices.push(TreeVertex { id, labels: Vec::new(), peripheral: false });
        edges.push(TreeEdge { u: parent, v: id, len: c.weight });
        stack.push((c.to, id));
        for p in c.from..c.to {
            innermost[p] = id;
        }
    }
    for (p, &r) in innermost.iter().enumerate() {
        vertices[r].labels.push(s.order[p]);
    }
    for v in &mut vertices {
        v.labels.sort_unstable();
    }
    Ok(MetricLabeledTree { vertices, edges, cone: Vec::new(), cone_vertex, cone_order: cone_order_of(s.base) })
}

fn cone_order_of(base: Base) -> Option<u32> {
    match base {
        Base::Cone { order } => Some(order),
        _ => None,
    }
}

/// Contracts the cone subtree `t_c` to a single vertex.
pub fn collapse_cone_subtree(t: &MetricLabeledTree) -> Result<MetricLabeledTree> {
    t.validate()?;
    if t.cone.is_empty() {
        return Ok(t.clone());
    }
    let cone: BTreeSet<usize> = t.cone.iter().copied().collect();
    let touched: BTreeSet<usize> = cone.iter().flat_map(|&e| [t.edges[e].u, t.edges[e].v]).collect();
    if touched.len() != cone.len() + 1 {
        return Err(Error::InvalidTree("cone subtree is not connected".into()));
    }
    if let Some(&v) = touched.iter().find(|&&v| !t.vertices[v].labels.is_empty() || t.vertices[v].peripheral) {
        return Err(Error::InvalidTree(format!("cone subtree contains labeled vertex {v}")));
    }
    let keep = *touched.iter().next().expect("nonempty");
    let mut remap = vec![usize::MAX; t.vertices.len()];
    let mut vertices = Vec::new();
    for v in &t.vertices {
        if touched.contains(&v.id) && v.id != keep {
            continue;
        }
        remap[v.id] = vertices.len();
        vertices.push(TreeVertex { id: vertices.len(), ..v.clone() });
    }
    for &v in &touched {
        remap[v] = remap[keep];
    }
    let edges = t
        .edges
        .iter()
        .enumerate()
        .filter(|(i, _)| !cone.contains(i))
        .map(|(_, e)| TreeEdge { u: remap[e.u], v: remap[e.v], len: e.len })
        .collect();
    Ok(MetricLabeledTree { vertices, edges, cone: Vec::new(), cone_vertex: Some(remap[keep]), cone_order: t.cone_order })
}

/// Embeds the tree in a disc (or annulus, or cone disc) with labeled vertices
/// on the boundary, and returns the resulting cyclic label order and arcs.
///
/// Children are visited in order of the smallest label in their subtree and a
/// vertex's own labels come before its children.
pub fn realize(t: &MetricLabeledTree, n: usize) -> Result<Realization> {
    let t = collapse_cone_subtree(t)?;
    let labels = t.labels();
    let count: usize = t.vertices.iter().map(|v| v.labels.len()).sum();
    if count != n || labels.iter().copied().ne(1..=n as u32) {
        return Err(Error::InvalidTree(format!("labels {labels:?} are not exactly 1..{n}")));
    }
    let peripheral = t.vertices.iter().position(|v| v.peripheral);
    if peripheral.is_some() && t.cone_vertex.is_some() {
        return Err(Error::InvalidTree("a tree cannot carry both a cone point and a peripheral vertex".into()));
    }
    let adj = t.adjacency();
    if let Some(c) = t.cone_vertex {
        if !t.vertices[c].labels.is_empty() {
            return Err(Error::InvalidTree("the cone vertex carries labels".into()));
        }
        if adj[c].len() < 2 {
            return Err(Error::InvalidTree("the cone vertex needs degree at least 2".into()));
        }
    }
    for (v, a) in adj.iter().enumerate() {
        let marked = !t.vertices[v].labels.is_empty() || t.vertices[v].peripheral || t.cone_vertex == Some(v);
        if a.len() <= 1 && !marked {
            return Err(Error::InvalidTree(format!("unlabeled leaf {v}")));
        }
    }
    let root = t.cone_vertex.or(peripheral).unwrap_or_else(|| t.vertex_of_label(1).expect("label 1 present"));

    // subtree minimum labels
    let nv = t.vertices.len();
    let mut parent = vec![(usize::MAX, usize::MAX); nv];
    let mut bfs = vec![root];
    let mut seen = vec![false; nv];
    seen[root] = true;
    let mut i = 0;
    while i < bfs.len() {
        let x = bfs[i];
        for &(y, e) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = (x, e);
                bfs.push(y);
            }
        }
        i += 1;
    }
    let mut min_label = vec![u32::MAX; nv];
    for &x in bfs.iter().rev() {
        let own = t.vertices[x].labels.iter().copied().min().unwrap_or(u32::MAX);
        min_label[x] = min_label[x].min(own);
        if x != root {
            let p = parent[x].0;
            min_label[p] = min_label[p].min(min_label[x]);
        }
    }

    let mut order = Vec::with_capacity(n);
    let mut span = vec![(0usize, 0usize); nv];
    fn walk(
        x: usize,
        t: &MetricLabeledTree,
        adj: &[Vec<(usize, usize)>],
        parent: &[(usize, usize)],
        min_label: &[u32],
        order: &mut Vec<u32>,
        span: &mut [(usize, usize)],
    ) {
        let lo = order.len();
        let mut own = t.vertices[x].labels.clone();
        own.sort_unstable();
        order.extend(own);
        let mut children: Vec<usize> = adj[x].iter().map(|&(y, _)| y).filter(|&y| parent[y].0 == x).collect();
        children.sort_by_key(|&y| min_label[y]);
        for y in children {
            walk(y, t, adj, parent, min_label, order, span);
        }
        span[x] = (lo, order.len());
    }
    walk(root, &t, &adj, &parent, &min_label, &mut order, &mut span);

    let base = match (t.cone_vertex, peripheral) {
        (Some(_), _) => Base::Cone { order: t.cone_order.unwrap_or(2) },
        (None, Some(_)) => Base::Annulus,
        _ => Base::Disc,
    };
    let mut arcs = ArcSystem::empty(base, order.clone());
    for &x in &bfs[1..] {
        let (p, e) = parent[x];
        let (lo, hi) = span[x];
        let weight = t.edges[e].len;
        if Some(p) == t.cone_vertex {
            arcs.spokes.push(Spoke { gap: lo, weight });
        } else {
            arcs.chords.push(Chord { from: lo, to: hi, weight });
        }
    }
    arcs.chords.sort_by_key(|c| (c.from, std::cmp::Reverse(c.to)));
    arcs.spokes.sort_by_key(|s| s.gap);
    arcs.validate()?;
    Ok(Realization { sigma: order.clone(), order, arcs })
}

fn centers(t: &MetricLabeledTree) -> Vec<usize> {
    let adj = t.adjacency();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut remaining = t.vertices.len();
    let mut layer: Vec<usize> = (0..remaining).filter(|&v| degree[v] <= 1).collect();
    let mut removed = vec![false; remaining];
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &(w, _) in &adj[v] {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    (0..t.vertices.len()).filter(|&v| !removed[v]).collect()
}

fn canonical_rooted(t: &MetricLabeledTree, adj: &[Vec<(usize, usize)>], x: usize, from: usize) -> String {
    let v = &t.vertices[x];
    let mut labels = v.labels.clone();
    labels.sort_unstable();
    let mut children: Vec<String> = adj[x]
        .iter()
        .filter(|&&(y, _)| y != from)
        .map(|&(y, e)| format!("{}:{}", t.edges[e].len, canonical_rooted(t, adj, y, x)))
        .collect();
    children.sort();
    format!(
        "({:?}{}{}[{}])",
        labels,
        if v.peripheral { "P" } else { "" },
        if t.cone_vertex == Some(x) { "c" } else { "" },
        children.join(",")
    )
}

/// Canonical string of the tree up to label-, flag- and length-preserving
/// isomorphism.
pub fn canonical_form(t: &MetricLabeledTree) -> String {
    let adj = t.adjacency();
    centers(t).into_iter().map(|c| canonical_rooted(t, &adj, c, usize::MAX)).min().unwrap_or_default()
}

pub fn trees_isomorphic(a: &MetricLabeledTree, b: &MetricLabeledTree) -> bool {
    a.vertices.len() == b.vertices.len() && a.edges.len() == b.edges.len() && canonical_form(a) == canonical_form(b)
}

/// Arcs of weight `weight` cutting a disc into the blocks of a non-crossing
/// partition of the labels in `order`.
pub fn partition_arcs(order: &[u32], blocks: &[Vec<u32>], weight: Rational) -> Result<ArcSystem> {
    let pos: BTreeMap<u32, usize> = order.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut arcs = ArcSystem::empty(Base::Disc, order.to_vec());
    for b in blocks {
        let ps: Vec<usize> = b
            .iter()
            .map(|l| pos.get(l).copied().ok_or_else(|| Error::InvalidArgument(format!("label {l} not in order"))))
            .collect::<Result<_>>()?;
        if ps.is_empty() || ps.contains(&0) {
            continue;
        }
        let lo = *ps.iter().min().expect("nonempty");
        let hi = *ps.iter().max().expect("nonempty") + 1;
        arcs.chords.push(Chord { from: lo, to: hi, weight });
    }
    arcs.chords.sort_by_key(|c| (c.from, std::cmp::Reverse(c.to)));
    arcs.validate()?;
    let dual = dual_tree(&arcs)?;
    let mut got: Vec<Vec<u32>> = dual.vertices.iter().map(|v| v.labels.clone()).filter(|l| !l.is_empty()).collect();
    let mut want: Vec<Vec<u32>> = blocks
        .iter()
        .filter(|b| !b.is_empty())
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    got.sort();
    want.sort();
    if got != want {
        return Err(Error::InvalidArcSystem(format!("blocks {want:?} are not non-crossing in order {order:?}")));
    }
    Ok(arcs)
}

/// Translation length of `w` on the dual tree of `arcs`, whose labels are page
/// indices: the sum of tree distances between consecutive pages of the
/// cyclically reduced form.
pub fn tree_translation_length(group: &BookGroup, arcs: &ArcSystem, w: &NormalForm) -> Result<Rational> {
    let tree = dual_tree(arcs)?;
    if arcs.order.len() != group.page_count() {
        return Err(Error::InvalidArgument(format!(
            "arc system has {} labels but the group has {} pages",
            arcs.order.len(),
            group.page_count()
        )));
    }
    let (_, reduced) = group.cyclic_reduce(w);
    let pages = reduced.pages();
    if pages.len() < 2 {
        return Ok(Rational::zero());
    }
    let vertex: Vec<usize> = pages.iter().map(|&p| tree.vertex_of_label(p as u32).expect("page label present")).collect();
    let mut dist_cache: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
    let mut total = Rational::zero();
    for i in 0..vertex.len() {
        let (a, b) = (vertex[i], vertex[(i + 1) % vertex.len()]);
        let d = dist_cache.entry(a).or_insert_with(|| tree.distances_from(a));
        total += d[b];
    }
    Ok(total)
}
