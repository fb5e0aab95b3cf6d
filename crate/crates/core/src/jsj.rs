//! JSJ data of books of I-bundles: construction, windows, shuffling and
//! flipping, and the homeomorphism / homotopy-equivalence test.
//!
//! A book is a solid (or thickened) torus `V` with `n >= 3` product
//! I-bundles glued along annuli in a cyclic order. Page indices are 1-based
//! throughout, matching the attaching annuli `A_1, ..., A_n`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PageSpec {
    pub genus: usize,
    #[serde(default = "default_true")]
    pub orientable: bool,
}

fn default_true() -> bool {
    true
}

impl PageSpec {
    pub fn new(genus: usize) -> Result<Self> {
        let page = PageSpec { genus, orientable: true };
        page.validate()?;
        Ok(page)
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus == 0 {
            return Err(Error::InvalidPage("genus must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoreKind {
    #[serde(rename = "solid")]
    SolidTorus,
    #[serde(rename = "thickened")]
    ThickenedTorus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Core {
    pub kind: CoreKind,
    /// The attaching curves wrap `p` times around the core; `p = 1` is primitive.
    pub p: u32,
}

/// JSJ graph of a book: binding, pages, attachment order and flip marks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JsjGraph {
    pub core: Core,
    pub pages: Vec<PageSpec>,
    /// Circular word of page indices in attachment order around `V`.
    pub order: Vec<usize>,
    #[serde(default)]
    pub flips: BTreeSet<usize>,
}

impl JsjGraph {
    pub fn valency(&self) -> usize {
        self.pages.len()
    }

    pub fn is_primitive(&self) -> bool {
        self.core.p == 1
    }

    pub fn page(&self, index: usize) -> Result<&PageSpec> {
        self.check_index(index)?;
        Ok(&self.pages[index - 1])
    }

    pub fn genera(&self) -> Vec<usize> {
        self.pages.iter().map(|p| p.genus).collect()
    }

    fn check_index(&self, index: usize) -> Result<()> {
        let n = self.pages.len();
        if index == 0 || index > n {
            return Err(Error::PageIndex { index, n });
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.pages.len();
        if n < 3 {
            return Err(Error::TooFewPages(n));
        }
        if self.core.p == 0 {
            return Err(Error::InvalidPage("core multiplicity p must be positive".into()));
        }
        for page in &self.pages {
            page.validate()?;
        }
        Permutation::from_images(self.order.clone()).map_err(|_| Error::NotAPermutation {
            n,
            detail: format!("order {:?}", self.order),
        })?;
        if self.order.len() != n {
            return Err(Error::PageCountMismatch { expected: n, got: self.order.len() });
        }
        for &f in &self.flips {
            self.check_index(f)?;
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let graph: JsjGraph =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("book JSON: {e}")))?;
        graph.validate()?;
        Ok(graph)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("book serializes")
    }

    /// Page types read around the binding in attachment order.
    pub fn page_word(&self) -> Vec<PageSpec> {
        self.order.iter().map(|&i| self.pages[i - 1]).collect()
    }
}

/// Builds an `n`-page book with cyclic order `(1, 2, ..., n)` and no flips.
pub fn build_book(n: usize, pages: Vec<PageSpec>, p: u32) -> Result<JsjGraph> {
    if n < 3 {
        return Err(Error::TooFewPages(n));
    }
    if pages.len() != n {
        return Err(Error::PageCountMismatch { expected: n, got: pages.len() });
    }
    let graph = JsjGraph {
        core: Core { kind: CoreKind::SolidTorus, p },
        pages,
        order: (1..=n).collect(),
        flips: BTreeSet::new(),
    };
    graph.validate()?;
    Ok(graph)
}

/// Book whose pages all have the same genus.
pub fn uniform_book(n: usize, genus: usize, p: u32) -> Result<JsjGraph> {
    let page = PageSpec::new(genus)?;
    build_book(n, vec![page; n], p)
}

/// A bijection of `{1, ..., n}` stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// `images[i - 1]` is the image of `i`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::NotAPermutation { n, detail: format!("{images:?}") });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::NotAPermutation { n, detail: format!("transposition ({a} {b})") });
        }
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.apply(i)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }
}

/// Relabels every entry of the attachment order through `perm`.
///
/// Pages, multiplicity and flip marks are unchanged, so
/// `shuffle(shuffle(g, s), t) == shuffle(g, t ∘ s)`.
pub fn shuffle(g: &JsjGraph, perm: &Permutation) -> Result<JsjGraph> {
    let n = g.valency();
    if perm.len() != n {
        return Err(Error::NotAPermutation { n, detail: format!("permutation of length {}", perm.len()) });
    }
    let mut out = g.clone();
    out.order = g.order.iter().map(|&i| perm.apply(i)).collect();
    Ok(out)
}

/// Regluing with the attaching order replaced wholesale.
pub fn shuffle_to_order(g: &JsjGraph, order: &[usize]) -> Result<JsjGraph> {
    let perm = Permutation::from_images(order.to_vec())?;
    if perm.len() != g.valency() {
        return Err(Error::PageCountMismatch { expected: g.valency(), got: perm.len() });
    }
    let mut out = g.clone();
    out.order = order.to_vec();
    Ok(out)
}

/// Toggles the flip mark of page `j`.
pub fn flip(g: &JsjGraph, j: usize) -> Result<JsjGraph> {
    g.check_index(j)?;
    let mut out = g.clone();
    if !out.flips.remove(&j) {
        out.flips.insert(j);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairClass {
    Homeomorphic,
    HomotopyEquivalentOnly,
    Inequivalent,
}

/// Lexicographically least rotation or reflection of a circular word.
pub fn dihedral_canonical<T: Ord + Clone>(word: &[T]) -> Vec<T> {
    let n = word.len();
    let mut best: Option<Vec<T>> = None;
    let reversed: Vec<T> = word.iter().rev().cloned().collect();
    for base in [word.to_vec(), reversed] {
        for r in 0..n.max(1) {
            let candidate: Vec<T> = (0..n).map(|i| base[(i + r) % n].clone()).collect();
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    best.unwrap_or_default()
}

/// Compares two books. Flip marks are ignored: flipping a page of a book
/// does not change the manifold.
pub fn classify_pair(a: &JsjGraph, b: &JsjGraph) -> PairClass {
    let same_core = a.core == b.core;
    let mut ma = a.pages.clone();
    let mut mb = b.pages.clone();
    ma.sort();
    mb.sort();
    if !same_core || ma != mb {
        return PairClass::Inequivalent;
    }
    if dihedral_canonical(&a.page_word()) == dihedral_canonical(&b.page_word()) {
        PairClass::Homeomorphic
    } else {
        PairClass::HomotopyEquivalentOnly
    }
}

// ---------------------------------------------------------------------------
// Windows

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PieceKind {
    IPair,
    SolidTorus,
    ThickenedTorus,
    /// Acylindrical (or otherwise opaque) piece; only its adjacency matters.
    Opaque,
}

impl PieceKind {
    fn is_torus_pair(self) -> bool {
        matches!(self, PieceKind::SolidTorus | PieceKind::ThickenedTorus)
    }
}

/// General JSJ data as an opaque piece list: each torus-type piece lists the
/// pieces across its frontier annuli in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceGraph {
    pub pieces: Vec<PieceKind>,
    /// `frontier[v]` is the cyclic list of neighbours of piece `v` across its
    /// frontier annuli; empty for pieces that are not torus pairs.
    pub frontier: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WindowComponent {
    IPair { piece: usize },
    Annulus { torus: usize, position: usize, neighbour: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub components: Vec<WindowComponent>,
}

impl Window {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl PieceGraph {
    pub fn validate(&self) -> Result<()> {
        if self.frontier.len() != self.pieces.len() {
            return Err(Error::InvalidArgument("frontier list length must match piece count".into()));
        }
        for (v, list) in self.frontier.iter().enumerate() {
            if !list.is_empty() && !self.pieces[v].is_torus_pair() {
                return Err(Error::InvalidArgument(format!("piece {v} is not a torus pair but has frontier annuli")));
            }
            if let Some(&bad) = list.iter().find(|&&q| q >= self.pieces.len() || q == v) {
                return Err(Error::InvalidArgument(format!("piece {v} has invalid neighbour {bad}")));
            }
        }
        Ok(())
    }

    /// Piece `0` is the binding; pieces `1..=n` are the pages, in page-index order.
    pub fn from_book(g: &JsjGraph) -> PieceGraph {
        let kind = match g.core.kind {
            CoreKind::SolidTorus => PieceKind::SolidTorus,
            CoreKind::ThickenedTorus => PieceKind::ThickenedTorus,
        };
        let mut pieces = vec![kind];
        pieces.extend(std::iter::repeat_n(PieceKind::IPair, g.valency()));
        let mut frontier = vec![g.order.clone()];
        frontier.extend(std::iter::repeat_n(Vec::new(), g.valency()));
        PieceGraph { pieces, frontier }
    }
}

/// The window of a piece graph.
///
/// Every I-pair is a component. A frontier annulus of a torus pair is
/// discarded when it faces an I-pair; the remaining ones are grouped into runs
/// of cyclically consecutive annuli not separated by an I-pair-facing annulus,
/// and each run keeps only its first annulus (parallel annuli are properly
/// homotopic and contribute once).
pub fn window_of(graph: &PieceGraph) -> Result<Window> {
    graph.validate()?;
    let mut components: Vec<WindowComponent> = graph
        .pieces
        .iter()
        .enumerate()
        .filter(|(_, k)| **k == PieceKind::IPair)
        .map(|(piece, _)| WindowComponent::IPair { piece })
        .collect();
    for (v, neighbours) in graph.frontier.iter().enumerate() {
        let k = neighbours.len();
        if k == 0 {
            continue;
        }
        let faces_ipair: Vec<bool> = neighbours.iter().map(|&q| graph.pieces[q] == PieceKind::IPair).collect();
        let candidates: Vec<usize> = (0..k).filter(|&i| !faces_ipair[i]).collect();
        if candidates.is_empty() {
            continue;
        }
        if candidates.len() == k {
            // no separator anywhere: all annuli around V are parallel
            components.push(WindowComponent::Annulus { torus: v, position: 0, neighbour: neighbours[0] });
            continue;
        }
        let mut annuli: Vec<usize> = candidates
            .iter()
            .filter(|&&i| faces_ipair[(i + k - 1) % k])
            .map(|&i| run_min_position(i, &faces_ipair))
            .collect();
        annuli.sort_unstable();
        for pos in annuli {
            components.push(WindowComponent::Annulus { torus: v, position: pos, neighbour: neighbours[pos] });
        }
    }
    Ok(Window { components })
}

/// Smallest cyclic position in the run beginning at `start`.
fn run_min_position(start: usize, faces_ipair: &[bool]) -> usize {
    let k = faces_ipair.len();
    let mut pos = start;
    let mut best = start;
    while !faces_ipair[pos] {
        best = best.min(pos);
        pos = (pos + 1) % k;
        if pos == start {
            break;
        }
    }
    best
}

/// Window of a book: one I-pair per page, no annuli.
pub fn window(g: &JsjGraph) -> Window {
    let pg = PieceGraph::from_book(g);
    window_of(&pg).expect("book piece graph is valid")
}
