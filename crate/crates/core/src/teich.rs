//! Fenchel–Nielsen data over a fixed pants decomposition, and the surviving
//! subsurface on which a sequence of such data converges.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cuff slot: `(pants index, slot in 0..3)`.
pub type Slot = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    pub ends: [Slot; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryLeg {
    pub name: String,
    pub at: Slot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PantsDecomposition {
    pub pants: usize,
    pub curves: Vec<Curve>,
    #[serde(default)]
    pub boundary: Vec<BoundaryLeg>,
}

impl PantsDecomposition {
    pub fn validate(&self) -> Result<()> {
        let mut used = BTreeSet::new();
        let mut names = BTreeSet::new();
        let slots = self.curves.iter().flat_map(|c| c.ends).chain(self.boundary.iter().map(|b| b.at));
        for (p, s) in slots {
            if p >= self.pants || s >= 3 {
                return Err(Error::InvalidPants(format!("slot ({p}, {s}) out of range")));
            }
            if !used.insert((p, s)) {
                return Err(Error::InvalidPants(format!("slot ({p}, {s}) used twice")));
            }
        }
        if used.len() != 3 * self.pants {
            return Err(Error::InvalidPants(format!("{} of {} cuff slots assigned", used.len(), 3 * self.pants)));
        }
        for name in self.curves.iter().map(|c| &c.name).chain(self.boundary.iter().map(|b| &b.name)) {
            if !names.insert(name) {
                return Err(Error::InvalidPants(format!("duplicate name {name}")));
            }
        }
        Ok(())
    }

    pub fn curve(&self, name: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.name == name)
    }

    /// Euler characteristic `-pants`; genus from `2 - 2g - b = -pants`.
    pub fn genus(&self) -> usize {
        (2 + self.pants - self.boundary.len()) / 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveClass {
    Shrinks,
    Converges,
    TwistDiverges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthLimit {
    Zero,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistLimit {
    Converges,
    Diverges,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveData {
    Declared { length: LengthLimit, twist: TwistLimit },
    Numeric { lengths: Vec<f64>, twists: Vec<f64> },
}

/// Per-curve data keyed by curve name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FnSequence {
    pub curves: BTreeMap<String, CurveData>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyConfig {
    pub pinch: f64,
    pub twist_span: f64,
    pub min_terms: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { pinch: 1e-3, twist_span: 1e3, min_terms: 8 }
    }
}

fn tail(xs: &[f64]) -> &[f64] {
    &xs[xs.len() / 2..]
}

fn monotone(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] >= w[0]) || xs.windows(2).all(|w| w[1] <= w[0])
}

pub fn classify_curve(data: &CurveData, cfg: &ClassifyConfig) -> Result<CurveClass> {
    match data {
        CurveData::Declared { length: LengthLimit::Zero, .. } => Ok(CurveClass::Shrinks),
        CurveData::Declared { twist: TwistLimit::Diverges, .. } => Ok(CurveClass::TwistDiverges),
        CurveData::Declared { .. } => Ok(CurveClass::Converges),
        CurveData::Numeric { lengths, twists } => {
            let n = lengths.len().min(twists.len());
            if n < cfg.min_terms || lengths.len() != twists.len() {
                return Err(Error::SequenceTooShort { got: n, need: cfg.min_terms });
            }
            if lengths.iter().any(|&l| !(l > 0.0)) {
                return Err(Error::InvalidArgument("lengths must be positive".into()));
            }
            let last = lengths[n - 1];
            if last < cfg.pinch && tail(lengths).windows(2).all(|w| w[1] <= w[0]) {
                return Ok(CurveClass::Shrinks);
            }
            let (lo, hi) = twists.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
            if hi - lo > cfg.twist_span && monotone(tail(twists)) {
                return Ok(CurveClass::TwistDiverges);
            }
            Ok(CurveClass::Converges)
        }
    }
}

pub fn classify_all(p: &PantsDecomposition, seq: &FnSequence, cfg: &ClassifyConfig) -> Result<BTreeMap<String, CurveClass>> {
    p.curves
        .iter()
        .map(|c| {
            let data = seq
                .curves
                .get(&c.name)
                .ok_or_else(|| Error::InvalidArgument(format!("no data for curve {}", c.name)))?;
            Ok((c.name.clone(), classify_curve(data, cfg)?))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subsurface {
    pub kept_pants: Vec<usize>,
    /// Interior curves of the subsurface.
    pub kept_curves: Vec<String>,
    /// Curves cut open; both sides stay in the subsurface as boundary.
    pub frontier_curves: Vec<String>,
    /// Connected components as sorted pants lists.
    pub components: Vec<Vec<usize>>,
}

impl Subsurface {
    pub fn is_whole(&self, p: &PantsDecomposition) -> bool {
        self.kept_pants.len() == p.pants && self.kept_curves.len() == p.curves.len()
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Keeps every pants, keeps converging curves as interior, and cuts along
/// curves that shrink or twist off to infinity.
pub fn surviving_subsurface(p: &PantsDecomposition, classes: &BTreeMap<String, CurveClass>) -> Result<Subsurface> {
    p.validate()?;
    let mut kept_curves = Vec::new();
    let mut frontier_curves = Vec::new();
    let mut parent: Vec<usize> = (0..p.pants).collect();
    for c in &p.curves {
        let class = classes
            .get(&c.name)
            .ok_or_else(|| Error::InvalidArgument(format!("curve {} is not classified", c.name)))?;
        if *class == CurveClass::Converges {
            kept_curves.push(c.name.clone());
            let (a, b) = (find(&mut parent, c.ends[0].0), find(&mut parent, c.ends[1].0));
            parent[a] = b;
        } else {
            frontier_curves.push(c.name.clone());
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..p.pants {
        let r = find(&mut parent, x);
        comps.entry(r).or_default().push(x);
    }
    let mut components: Vec<Vec<usize>> = comps.into_values().collect();
    components.sort();
    kept_curves.sort();
    frontier_curves.sort();
    Ok(Subsurface { kept_pants: (0..p.pants).collect(), kept_curves, frontier_curves, components })
}

/// The pants decomposition of `s`: frontier curves become pairs of boundary legs.
pub fn induced_decomposition(p: &PantsDecomposition, s: &Subsurface) -> PantsDecomposition {
    let kept: BTreeSet<usize> = s.kept_pants.iter().copied().collect();
    let index: BTreeMap<usize, usize> = s.kept_pants.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let re = |(pp, slot): Slot| (index[&pp], slot);
    let mut curves = Vec::new();
    let mut boundary: Vec<BoundaryLeg> = p.boundary.iter().filter(|b| kept.contains(&b.at.0)).map(|b| BoundaryLeg { name: b.name.clone(), at: re(b.at) }).collect();
    for c in &p.curves {
        let inside = [kept.contains(&c.ends[0].0), kept.contains(&c.ends[1].0)];
        if s.kept_curves.contains(&c.name) {
            curves.push(Curve { name: c.name.clone(), ends: [re(c.ends[0]), re(c.ends[1])] });
        } else {
            for (side, end) in c.ends.iter().enumerate() {
                if inside[side] {
                    boundary.push(BoundaryLeg { name: format!("{}#{side}", c.name), at: re(*end) });
                }
            }
        }
    }
    PantsDecomposition { pants: s.kept_pants.len(), curves, boundary }
}

#[derive(Debug, Clone, Deserialize)]
pub struct SurvivalInput {
    pub decomposition: PantsDecomposition,
    pub sequence: FnSequence,
    #[serde(default)]
    pub config: Option<ClassifyConfig>,
}
