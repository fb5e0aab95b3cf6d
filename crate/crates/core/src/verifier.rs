//! Convergence verdicts for restrictions of an automorphism sequence, the
//! window biconditional over annular cuts of a book, non-crossing block
//! feasibility, and the shuffle rectification pipeline.
//!
//! "Diverges" is a certificate: strictly growing conjugacy length over at
//! least [`Thresholds::run`] consecutive iterates, plus trace growth when a
//! representation is supplied. It is not a proof.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::amalgam::{BookAutomorphism, BookGroup, ConjugatorSearch, NormalForm, SearchBudget, SubgroupSpec};
use crate::error::{Error, Result};
use crate::jsj::{self, JsjGraph};
use crate::repvar::{self, Representation};
use crate::rtree::{self, ArcSystem, MetricLabeledTree, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Consecutive strict increases of conjugacy length required.
    pub run: usize,
    /// `|trace|` that counts as growth.
    pub trace: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { run: 8, trace: 1e3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Cyclically reduced conjugacy length of `f^i(word)` for `i = 0..`.
    ConjugacyLength { word: String, lengths: Vec<usize>, run: usize },
    /// `|tr ρ(f^i(word))|` for `i = 0..`.
    Trace { word: String, abs_trace: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    /// `f^i` agrees with conjugation by `t^(c·i)` on the subgroup.
    Converges { c: i64 },
    Diverges { certificates: Vec<Certificate> },
    Undetermined { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub subgroup: SubgroupSpec,
    #[serde(flatten)]
    pub status: Status,
}

impl Verdict {
    pub fn converges(subgroup: SubgroupSpec, c: i64) -> Self {
        Verdict { subgroup, status: Status::Converges { c } }
    }

    pub fn diverges(subgroup: SubgroupSpec, certificates: Vec<Certificate>) -> Self {
        Verdict { subgroup, status: Status::Diverges { certificates } }
    }

    pub fn is_converges(&self) -> bool {
        matches!(self.status, Status::Converges { .. })
    }

    pub fn is_diverges(&self) -> bool {
        matches!(self.status, Status::Diverges { .. })
    }
}

/// Words whose behaviour under iteration is tracked: the subgroup generators
/// and products of two generators from different pages.
pub fn test_words(group: &BookGroup, h: &SubgroupSpec) -> Result<Vec<NormalForm>> {
    let gens = h.generators(group)?;
    let mut out = gens.clone();
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            if x.pages() != y.pages() {
                out.push(group.mul(x, y));
            }
        }
    }
    Ok(out)
}

fn longest_increasing_run(xs: &[usize]) -> usize {
    let mut best = 0;
    let mut cur = 0;
    for w in xs.windows(2) {
        cur = if w[1] > w[0] { cur + 1 } else { 0 };
        best = best.max(cur);
    }
    best
}

/// Powers `f, f^2, ..., f^i_max`.
pub fn iterates(group: &BookGroup, f: &BookAutomorphism, i_max: usize) -> Vec<BookAutomorphism> {
    let mut out = Vec::with_capacity(i_max);
    let mut cur = f.clone();
    for _ in 0..i_max {
        out.push(cur.clone());
        cur = f.compose(group, &cur);
    }
    out
}

pub fn classify_restriction(
    group: &BookGroup,
    f: &BookAutomorphism,
    h: &SubgroupSpec,
    i_max: usize,
    rep: Option<&Representation>,
    budget: SearchBudget,
    thresholds: Thresholds,
) -> Result<Verdict> {
    let powers = iterates(group, f, i_max);
    classify_with_powers(group, &powers, h, rep, budget, thresholds)
}

/// [`classify_restriction`] with precomputed iterates `powers[i - 1] = f^i`.
pub fn classify_with_powers(
    group: &BookGroup,
    powers: &[BookAutomorphism],
    h: &SubgroupSpec,
    rep: Option<&Representation>,
    budget: SearchBudget,
    thresholds: Thresholds,
) -> Result<Verdict> {
    if powers.len() < 4 {
        return Err(Error::SequenceTooShort { got: powers.len(), need: 4 });
    }
    let mut exps = Vec::new();
    for fi in powers {
        match fi_conjugator(group, fi, h, budget)? {
            Some(e) => exps.push(e),
            None => break,
        }
    }
    if exps.len() == powers.len() {
        let c = exps[0];
        if exps.iter().enumerate().all(|(k, &e)| e == c * (k as i64 + 1)) {
            return Ok(Verdict::converges(h.clone(), c));
        }
        return Ok(Verdict { subgroup: h.clone(), status: Status::Undetermined { reason: "inner at every step without a t^(c·i) pattern".into() } });
    }

    let mut certificates = Vec::new();
    for w in test_words(group, h)? {
        let orbit: Vec<NormalForm> = std::iter::once(w.clone()).chain(powers.iter().map(|fi| fi.apply(group, &w))).collect();
        let lengths: Vec<usize> = orbit.iter().map(|x| group.conjugacy_length(x, budget)).collect();
        let run = longest_increasing_run(&lengths);
        if run < thresholds.run {
            continue;
        }
        let length_cert = Certificate::ConjugacyLength { word: w.to_string(), lengths, run };
        match rep {
            None => {
                certificates.push(length_cert);
                break;
            }
            Some(rep) => {
                let abs_trace: Vec<f64> = orbit.iter().map(|x| repvar::evaluate_class(rep, group, x).trace.norm()).collect();
                if abs_trace.last().is_some_and(|&a| a > thresholds.trace) {
                    certificates.push(length_cert);
                    certificates.push(Certificate::Trace { word: w.to_string(), abs_trace });
                    break;
                }
            }
        }
    }
    if certificates.is_empty() {
        let reason = format!("no inner conjugator at i = {} and no growth certificate", exps.len() + 1);
        Ok(Verdict { subgroup: h.clone(), status: Status::Undetermined { reason } })
    } else {
        Ok(Verdict::diverges(h.clone(), certificates))
    }
}

/// The exponent `e` when `f` agrees with conjugation by `t^e` on `h`.
fn fi_conjugator(group: &BookGroup, f: &BookAutomorphism, h: &SubgroupSpec, budget: SearchBudget) -> Result<Option<i64>> {
    let (search, witness) = group.inner_conjugator_on(f, h, budget)?;
    Ok(match (search, witness) {
        (ConjugatorSearch::Found { .. }, Some(w)) => w.as_core_power(),
        _ => None,
    })
}

/// Re-checks a converging verdict: `t^(c·i) g t^-(c·i) = f^i(g)` on generators.
pub fn recheck_converges(group: &BookGroup, f: &BookAutomorphism, v: &Verdict, i_max: usize) -> Result<bool> {
    let Status::Converges { c } = v.status else { return Ok(false) };
    let gens = v.subgroup.generators(group)?;
    let powers = iterates(group, f, i_max);
    Ok(powers.iter().enumerate().all(|(k, fi)| {
        let h = NormalForm::core_power(c * (k as i64 + 1));
        gens.iter().all(|g| group.conjugate(&h, g) == fi.apply(group, g))
    }))
}

/// Pages and the surfaces `S_{i,j}` with cyclic distance 1 or 2.
pub fn required_subgroups(n: usize) -> Vec<SubgroupSpec> {
    let mut out: BTreeSet<SubgroupSpec> = (1..=n).map(SubgroupSpec::Page).collect();
    for i in 1..=n {
        for d in [1, 2] {
            let j = (i - 1 + d) % n + 1;
            if j != i {
                out.insert(SubgroupSpec::surface(i, j));
            }
        }
    }
    out.into_iter().collect()
}

fn verdict_map(n: usize, verdicts: &[Verdict]) -> Result<BTreeMap<SubgroupSpec, &Verdict>> {
    let map: BTreeMap<SubgroupSpec, &Verdict> = verdicts.iter().map(|v| (v.subgroup.clone(), v)).collect();
    let missing: Vec<String> = required_subgroups(n).iter().filter(|s| !map.contains_key(s)).map(|s| s.to_string()).collect();
    if !missing.is_empty() {
        return Err(Error::InsufficientCoverage(missing.join(", ")));
    }
    Ok(map)
}

/// `x` is a set of pages whose boundary annulus is cut out. A page subgroup
/// always lies in a component of the complement; `S_{i,j}` does iff neither
/// page is cut off.
fn carried_by_cut(h: &SubgroupSpec, x: &BTreeSet<usize>) -> bool {
    match h {
        SubgroupSpec::Page(_) => true,
        SubgroupSpec::Surface(i, j) => !x.contains(i) && !x.contains(j),
        SubgroupSpec::Custom(_) => false,
    }
}

fn subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), m.reverse_bits()));
    masks.into_iter().map(move |m| (1..=n).filter(|j| m & (1 << (j - 1)) != 0).collect())
}

fn biconditional_holds(verdicts: &BTreeMap<SubgroupSpec, &Verdict>, carried: impl Fn(&SubgroupSpec) -> bool) -> bool {
    verdicts.values().all(|v| match v.status {
        Status::Converges { .. } => carried(&v.subgroup),
        Status::Diverges { .. } => !carried(&v.subgroup),
        Status::Undetermined { .. } => true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiconditionalReport {
    pub candidates: usize,
    /// Every `x` (as a sorted page list) for which convergence matches
    /// containment in a component of the complement.
    pub satisfying: Vec<Vec<usize>>,
}

pub fn window_biconditional_test(g: &JsjGraph, verdicts: &[Verdict]) -> Result<BiconditionalReport> {
    g.validate()?;
    let n = g.valency();
    let map = verdict_map(n, verdicts)?;
    let satisfying = subsets(n)
        .filter(|x| biconditional_holds(&map, |h| carried_by_cut(h, x)))
        .map(|x| x.into_iter().collect())
        .collect();
    Ok(BiconditionalReport { candidates: 1 << n, satisfying })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockConstraints {
    pub n: usize,
    pub same_block: BTreeSet<(u32, u32)>,
    pub distinct_block: BTreeSet<(u32, u32)>,
}

fn norm_pair((a, b): (u32, u32)) -> (u32, u32) {
    (a.min(b), a.max(b))
}

impl BlockConstraints {
    pub fn new(n: usize, same: &[(u32, u32)], distinct: &[(u32, u32)]) -> Result<Self> {
        let c = BlockConstraints {
            n,
            same_block: same.iter().copied().map(norm_pair).collect(),
            distinct_block: distinct.iter().copied().map(norm_pair).collect(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidArgument("block constraints need n >= 2".into()));
        }
        for &(a, b) in self.same_block.iter().chain(&self.distinct_block) {
            if a == 0 || b == 0 || a as usize > self.n || b as usize > self.n {
                return Err(Error::InvalidArgument(format!("pair ({a},{b}) outside 1..{}", self.n)));
            }
        }
        if let Some(p) = self.same_block.intersection(&self.distinct_block).next() {
            return Err(Error::ContradictoryConstraints(format!("{p:?} is required both same and distinct")));
        }
        Ok(())
    }

    /// From verdicts: a converging `S_{i,j}` joins `i` and `j`, a diverging
    /// one separates them.
    pub fn from_verdicts(n: usize, verdicts: &[Verdict]) -> Result<Self> {
        let mut same = Vec::new();
        let mut distinct = Vec::new();
        for v in verdicts {
            if let SubgroupSpec::Surface(i, j) = v.subgroup {
                match v.status {
                    Status::Converges { .. } => same.push((i as u32, j as u32)),
                    Status::Diverges { .. } => distinct.push((i as u32, j as u32)),
                    Status::Undetermined { .. } => {}
                }
            }
        }
        Self::new(n, &same, &distinct)
    }

    /// Blocks of the transitive closure of `same_block`, sorted.
    pub fn closure_blocks(&self) -> Vec<Vec<u32>> {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(a, b) in &self.same_block {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            parent[ra.max(rb)] = ra.min(rb);
        }
        let mut blocks: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for x in 1..=self.n {
            let r = find(&mut parent, x);
            blocks.entry(r).or_default().push(x as u32);
        }
        blocks.into_values().collect()
    }

    pub fn satisfied_by(&self, blocks: &[Vec<u32>]) -> bool {
        let block_of: BTreeMap<u32, usize> = blocks.iter().enumerate().flat_map(|(i, b)| b.iter().map(move |&l| (l, i))).collect();
        self.same_block.iter().all(|(a, b)| block_of.get(a) == block_of.get(b))
            && self.distinct_block.iter().all(|(a, b)| block_of.get(a) != block_of.get(b))
    }
}

/// Two blocks cross when their labels interleave around the circle.
pub fn blocks_cross(order: &[u32], a: &[u32], b: &[u32]) -> bool {
    let pos: BTreeMap<u32, usize> = order.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut tagged: Vec<(usize, bool)> = a.iter().map(|l| (pos[l], true)).chain(b.iter().map(|l| (pos[l], false))).collect();
    tagged.sort_unstable();
    let switches = tagged.windows(2).filter(|w| w[0].1 != w[1].1).count()
        + usize::from(tagged.first().map(|x| x.1) != tagged.last().map(|x| x.1));
    switches > 2
}

pub fn is_noncrossing(order: &[u32], blocks: &[Vec<u32>]) -> bool {
    blocks.iter().enumerate().all(|(i, a)| blocks[i + 1..].iter().all(|b| !blocks_cross(order, a, b)))
}

fn normalize_blocks(mut blocks: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.retain(|b| !b.is_empty());
    blocks.sort();
    blocks
}

/// The finest non-crossing partition in `order` satisfying the constraints,
/// or `None` when none exists.
///
/// Crossing closure blocks are merged until the partition is non-crossing;
/// this gives the unique finest non-crossing coarsening, and any feasible
/// partition is coarser than it.
pub fn noncrossing_feasibility(c: &BlockConstraints, order: &[u32]) -> Result<Option<Vec<Vec<u32>>>> {
    c.validate()?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted.iter().copied().ne(1..=c.n as u32) {
        return Err(Error::InvalidArgument(format!("order {order:?} is not a permutation of 1..{}", c.n)));
    }
    let mut blocks = c.closure_blocks();
    'merge: loop {
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if blocks_cross(order, &blocks[i], &blocks[j]) {
                    let b = blocks.remove(j);
                    blocks[i].extend(b);
                    continue 'merge;
                }
            }
        }
        break;
    }
    let blocks = normalize_blocks(blocks);
    Ok(c.satisfied_by(&blocks).then_some(blocks))
}

/// Every set partition of `1..=n` that is non-crossing in `order`.
pub fn noncrossing_partitions(order: &[u32]) -> Vec<Vec<Vec<u32>>> {
    fn rec(labels: &[u32], k: usize, cur: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if k == labels.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..cur.len() {
            cur[i].push(labels[k]);
            rec(labels, k + 1, cur, out);
            cur[i].pop();
        }
        cur.push(vec![labels[k]]);
        rec(labels, k + 1, cur, out);
        cur.pop();
    }
    let mut labels = order.to_vec();
    labels.sort_unstable();
    let mut all = Vec::new();
    rec(&labels, 0, &mut Vec::new(), &mut all);
    all.into_iter().filter(|p| is_noncrossing(order, p)).map(normalize_blocks).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rectification {
    /// New cyclic order of the pages around the binding.
    pub sigma: Vec<usize>,
    pub blocks: Vec<Vec<u32>>,
    pub arcs: ArcSystem,
    /// Pages whose boundary annulus belongs to the window base.
    pub x: Vec<usize>,
    pub identity_feasible: bool,
    /// The biconditional holds on the shuffled model with `arcs` and `x`.
    pub verified: bool,
}

fn block_tree(blocks: &[Vec<u32>]) -> Result<MetricLabeledTree> {
    let one = Rational::from_integer(1);
    let labels: Vec<&[u32]> = blocks.iter().map(Vec::as_slice).collect();
    match blocks.len() {
        0 => Err(Error::InvalidArgument("no blocks".into())),
        1 => MetricLabeledTree::from_parts(&labels, &[]),
        2 => MetricLabeledTree::from_parts(&labels, &[(0, 1, one)]),
        k => {
            let mut with_centre = vec![&[][..]];
            with_centre.extend(labels);
            let edges: Vec<_> = (1..=k).map(|i| (0, i, one)).collect();
            MetricLabeledTree::from_parts(&with_centre, &edges)
        }
    }
}

/// Finds a shuffle under which the verdict blocks are non-crossing, the arcs
/// separating them, and the least `x` making the biconditional hold.
pub fn rectify(g: &JsjGraph, verdicts: &[Verdict]) -> Result<Rectification> {
    g.validate()?;
    let n = g.valency();
    let map = verdict_map(n, verdicts)?;
    let constraints = BlockConstraints::from_verdicts(n, verdicts)?;
    let closure = normalize_blocks(constraints.closure_blocks());
    if !constraints.satisfied_by(&closure) {
        return Err(Error::NoRectification(format!("same-block closure {closure:?} joins a diverging pair")));
    }
    let identity: Vec<u32> = (1..=n as u32).collect();
    let identity_feasible = noncrossing_feasibility(&constraints, &identity)?.is_some_and(|w| w == closure);
    let order = if identity_feasible {
        identity
    } else {
        rtree::realize(&block_tree(&closure)?, n)?.order
    };
    if !is_noncrossing(&order, &closure) {
        return Err(Error::NoRectification(format!("blocks {closure:?} cross in {order:?}")));
    }
    let arcs = rtree::partition_arcs(&order, &closure, Rational::from_integer(1))?;
    let block_of: BTreeMap<usize, usize> =
        closure.iter().enumerate().flat_map(|(i, b)| b.iter().map(move |&l| (l as usize, i))).collect();
    let carried = |h: &SubgroupSpec, x: &BTreeSet<usize>| match h {
        SubgroupSpec::Page(_) => true,
        SubgroupSpec::Surface(i, j) => block_of[i] == block_of[j] && !x.contains(i) && !x.contains(j),
        SubgroupSpec::Custom(_) => false,
    };
    let x = subsets(n).find(|x| biconditional_holds(&map, |h| carried(h, x)));
    let sigma: Vec<usize> = order.iter().map(|&l| l as usize).collect();
    jsj::shuffle_to_order(g, &sigma)?;
    Ok(Rectification {
        sigma,
        blocks: closure,
        arcs,
        verified: x.is_some(),
        x: x.map(|s| s.into_iter().collect()).unwrap_or_default(),
        identity_feasible,
    })
}

/// Everything the counter-example pipeline computes, with its inputs.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: ReportConfig,
    pub automorphism: String,
    pub representation: Representation,
    pub verdicts: Vec<Verdict>,
    /// `max |tr ρ(φ(w)) − tr ρ(w)|` over each subgroup's test words.
    pub character_delta: BTreeMap<String, f64>,
    pub biconditional: BiconditionalReport,
    /// Non-crossing witness for the verdict blocks in the original order.
    pub identity_order_witness: Option<Vec<Vec<u32>>>,
    pub rectification: Rectification,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub pages: usize,
    pub genus: usize,
    pub iters: usize,
    pub seed: u64,
    pub budget: SearchBudget,
    pub thresholds: Thresholds,
    pub pinch: f64,
    pub twist_span: f64,
}

impl ReportConfig {
    pub fn new(pages: usize, genus: usize, iters: usize, seed: u64) -> Self {
        let t = crate::teich::ClassifyConfig::default();
        ReportConfig {
            pages,
            genus,
            iters,
            seed,
            budget: SearchBudget::default(),
            thresholds: Thresholds::default(),
            pinch: t.pinch,
            twist_span: t.twist_span,
        }
    }
}

/// `twist(1,+1) ∘ twist(3,+1)`.
pub fn counterexample_automorphism(group: &BookGroup) -> Result<BookAutomorphism> {
    Ok(BookAutomorphism::twist(group, 1, 1)?.compose(group, &BookAutomorphism::twist(group, 3, 1)?))
}

pub fn counterexample_verdicts(
    group: &BookGroup,
    phi: &BookAutomorphism,
    i_max: usize,
    rep: Option<&Representation>,
    budget: SearchBudget,
    thresholds: Thresholds,
) -> Result<Vec<Verdict>> {
    let powers = iterates(group, phi, i_max);
    required_subgroups(group.page_count())
        .iter()
        .map(|h| classify_with_powers(group, &powers, h, rep, budget, thresholds))
        .collect()
}

/// Twists a primitive book along the first and third annuli, classifies every
/// required restriction, and runs the biconditional and rectification.
pub fn verify_counterexample(cfg: ReportConfig) -> Result<Report> {
    if cfg.pages < 4 {
        return Err(Error::InvalidArgument("the counter-example needs at least 4 pages".into()));
    }
    let g = jsj::uniform_book(cfg.pages, cfg.genus, 1)?;
    let group = BookGroup::from_book(&g);
    let phi = counterexample_automorphism(&group)?;
    let rep = repvar::build_rep(&group, cfg.seed)?;
    let verdicts = counterexample_verdicts(&group, &phi, cfg.iters, Some(&rep), cfg.budget, cfg.thresholds)?;
    let mut character_delta = BTreeMap::new();
    for v in &verdicts {
        let words = test_words(&group, &v.subgroup)?;
        character_delta.insert(v.subgroup.to_string(), repvar::character_delta(&rep, &group, &phi, &words));
    }
    let biconditional = window_biconditional_test(&g, &verdicts)?;
    let constraints = BlockConstraints::from_verdicts(cfg.pages, &verdicts)?;
    let identity: Vec<u32> = (1..=cfg.pages as u32).collect();
    let identity_order_witness = noncrossing_feasibility(&constraints, &identity)?;
    let rectification = rectify(&g, &verdicts)?;
    let passed = biconditional.satisfying.is_empty() && identity_order_witness.is_none() && rectification.verified;
    Ok(Report {
        config: cfg,
        automorphism: phi.label.clone(),
        representation: rep,
        verdicts,
        character_delta,
        biconditional,
        identity_order_witness,
        rectification,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counterexample(n: usize) -> (JsjGraph, BookGroup, BookAutomorphism) {
        let g = jsj::uniform_book(n, 1, 1).unwrap();
        let group = BookGroup::from_book(&g);
        let phi = counterexample_automorphism(&group).unwrap();
        (g, group, phi)
    }

    fn synthetic(n: usize, diverging: impl Fn(usize, usize) -> bool) -> Vec<Verdict> {
        required_subgroups(n)
            .into_iter()
            .map(|h| match h {
                SubgroupSpec::Surface(i, j) if diverging(i, j) => Verdict::diverges(h, vec![]),
                _ => Verdict::converges(h, 0),
            })
            .collect()
    }

    #[test]
    fn restriction_verdicts() {
        let (_, group, phi) = counterexample(4);
        let b = SearchBudget::default();
        let th = Thresholds::default();
        let v13 = classify_restriction(&group, &phi, &SubgroupSpec::surface(1, 3), 16, None, b, th).unwrap();
        assert_eq!(v13.status, Status::Converges { c: 1 });
        assert!(recheck_converges(&group, &phi, &v13, 16).unwrap());
        let v24 = classify_restriction(&group, &phi, &SubgroupSpec::surface(2, 4), 16, None, b, th).unwrap();
        assert_eq!(v24.status, Status::Converges { c: 0 });
        let rep = repvar::build_rep(&group, 7).unwrap();
        let v12 = classify_restriction(&group, &phi, &SubgroupSpec::surface(1, 2), 16, Some(&rep), b, th).unwrap();
        assert!(v12.is_diverges(), "{v12:?}");
        assert!(classify_restriction(&group, &phi, &SubgroupSpec::Page(1), 3, None, b, th).is_err());
    }

    #[test]
    fn biconditional_cases() {
        let g = jsj::uniform_book(4, 1, 1).unwrap();
        let ce = synthetic(4, |i, j| (i % 2) != (j % 2));
        assert!(window_biconditional_test(&g, &ce).unwrap().satisfying.is_empty());
        let all = synthetic(4, |_, _| false);
        assert_eq!(window_biconditional_test(&g, &all).unwrap().satisfying, vec![Vec::<usize>::new()]);
        let one = synthetic(4, |i, _| i == 1);
        assert_eq!(window_biconditional_test(&g, &one).unwrap().satisfying, vec![vec![1]]);
        assert!(window_biconditional_test(&g, &ce[..3]).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let c = BlockConstraints::new(4, &[(1, 3), (2, 4)], &[(1, 2)]).unwrap();
        assert_eq!(noncrossing_feasibility(&c, &[1, 2, 3, 4]).unwrap(), None);
        assert_eq!(noncrossing_feasibility(&c, &[1, 3, 2, 4]).unwrap(), Some(vec![vec![1, 3], vec![2, 4]]));
        let free = BlockConstraints::new(4, &[], &[]).unwrap();
        assert_eq!(noncrossing_feasibility(&free, &[1, 2, 3, 4]).unwrap(), Some(vec![vec![1], vec![2], vec![3], vec![4]]));
        assert!(BlockConstraints::new(4, &[(1, 2)], &[(2, 1)]).is_err());
        assert_eq!(noncrossing_partitions(&[1, 2, 3, 4]).len(), 14);
    }

    #[test]
    fn rectification_examples() {
        let g = jsj::uniform_book(4, 1, 1).unwrap();
        let r = rectify(&g, &synthetic(4, |i, j| (i % 2) != (j % 2))).unwrap();
        assert_eq!(r.sigma, vec![1, 3, 2, 4]);
        assert_eq!(r.blocks, vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(r.arcs.arc_count(), 1);
        assert!(r.verified);
        let r = rectify(&g, &synthetic(4, |_, _| false)).unwrap();
        assert_eq!((r.sigma, r.arcs.arc_count(), r.x), (vec![1, 2, 3, 4], 0, vec![]));
        let r = rectify(&g, &synthetic(4, |i, _| i == 1)).unwrap();
        assert_eq!(r.sigma, vec![1, 2, 3, 4]);
        assert_eq!(r.arcs.arc_count(), 1);
        assert_eq!(r.blocks, vec![vec![1], vec![2, 3, 4]]);
    }
}

#[cfg(test)]
mod pipeline_tests {
    use super::*;

    #[test]
    fn counterexample_report_passes() {
        let r = verify_counterexample(ReportConfig::new(4, 1, 16, 7)).unwrap();
        assert!(r.passed, "{}", serde_json::to_string_pretty(&r).unwrap());
        assert_eq!(r.rectification.sigma, vec![1, 3, 2, 4]);
    }
}
