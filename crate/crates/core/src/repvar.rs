//! Relation-exact representations of book groups into `SL(2, C)`.
//!
//! Discreteness is not certified: [`build_rep`] produces a generic
//! representation that satisfies the defining relations to within `1e-9`, and
//! every trace or length computed from it is a numerical certificate only.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::amalgam::{BookAutomorphism, BookGroup, GenLetter, Generator, NormalForm, SearchBudget, Symbol, Word};
use crate::error::{Error, Result};

pub type C = Complex64;

pub const RESIDUAL_TOL: f64 = 1e-9;
pub const TRACE_TOL: f64 = 1e-6;
const LOXODROMIC_MARGIN: f64 = 1e-6;
const MAX_ATTEMPTS: u64 = 100;
const RESCALE_AT: f64 = 1e150;

/// A 2×2 complex matrix, kept at determinant one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moebius {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
}

impl Moebius {
    pub const IDENTITY: Moebius = Moebius { a: C::new(1.0, 0.0), b: C::new(0.0, 0.0), c: C::new(0.0, 0.0), d: C::new(1.0, 0.0) };

    /// Scales the entries to determinant one.
    pub fn new(a: C, b: C, c: C, d: C) -> Option<Self> {
        let det = a * d - b * c;
        if det.norm() < 1e-12 {
            return None;
        }
        let s = det.sqrt();
        Some(Moebius { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn diag(x: C) -> Self {
        Moebius { a: x, b: C::new(0.0, 0.0), c: C::new(0.0, 0.0), d: x.inv() }
    }

    pub fn det(&self) -> C {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C {
        self.a + self.d
    }

    pub fn mul(&self, o: &Moebius) -> Moebius {
        Moebius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Inverse, assuming determinant one.
    pub fn inverse(&self) -> Moebius {
        Moebius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn renormalize(&self) -> Moebius {
        Moebius::new(self.a, self.b, self.c, self.d).unwrap_or(*self)
    }

    pub fn commutator(x: &Moebius, y: &Moebius) -> Moebius {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    pub fn conjugate_by(&self, h: &Moebius) -> Moebius {
        h.mul(self).mul(&h.inverse())
    }

    pub fn max_norm(&self) -> f64 {
        [self.a, self.b, self.c, self.d].iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn distance(&self, o: &Moebius) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d].iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: f64) -> Moebius {
        Moebius { a: self.a * s, b: self.b * s, c: self.c * s, d: self.d * s }
    }

    pub fn trlength(&self) -> f64 {
        trlength_of_trace(self.trace())
    }
}

/// `2·Re arccosh(tr/2)`. Equals `2·arccosh(|tr|/2)` for real traces and
/// vanishes for elliptic and parabolic elements.
pub fn trlength_of_trace(tr: C) -> f64 {
    if tr.im == 0.0 && tr.re.abs() <= 2.0 {
        return 0.0;
    }
    2.0 * (tr / 2.0).acosh().re.abs()
}

#[derive(Debug, Clone, Serialize)]
pub struct Representation {
    pub seed: u64,
    /// Number of reseeds needed to get a loxodromic core.
    pub reseeds: u64,
    /// Centralizer exponent `s_j` per page.
    pub exponents: Vec<f64>,
    /// Direction `c` of the centralizer family `exp(s·c)`.
    #[serde(skip)]
    pub direction: C,
    #[serde(skip)]
    pub pages: Vec<Vec<[Moebius; 2]>>,
    #[serde(skip)]
    pub core: Moebius,
}

/// Result of [`evaluate`]. When entries would overflow the matrix is kept
/// rescaled by `exp(-log_scale)` and `overflow` is set.
#[derive(Debug, Clone, Copy)]
pub struct Evaluation {
    pub matrix: Moebius,
    pub log_scale: f64,
    pub trace: C,
    pub trlength: f64,
    pub overflow: bool,
}

fn random_unit(rng: &mut ChaCha8Rng) -> Option<Moebius> {
    let mut z = || C::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
    Moebius::new(z(), z(), z(), z())
}

/// Eigenvector matrix `P` with `P⁻¹ T P` diagonal.
fn diagonalizer(t: &Moebius) -> Option<Moebius> {
    let tr = t.trace();
    let disc = (tr * tr - 4.0).sqrt();
    let l1 = (tr + disc) / 2.0;
    let l2 = (tr - disc) / 2.0;
    let col = |l: C| {
        // (T - l) v = 0
        if t.b.norm() > 1e-12 {
            (t.b, l - t.a)
        } else if t.c.norm() > 1e-12 {
            (l - t.d, t.c)
        } else if (l - t.a).norm() < 1e-12 {
            (C::new(1.0, 0.0), C::new(0.0, 0.0))
        } else {
            (C::new(0.0, 0.0), C::new(1.0, 0.0))
        }
    };
    let (x1, y1) = col(l1);
    let (x2, y2) = col(l2);
    Moebius::new(x1, x2, y1, y2)
}

impl Representation {
    pub fn genera(&self) -> Vec<usize> {
        self.pages.iter().map(Vec::len).collect()
    }

    pub fn matrix(&self, g: Generator) -> Moebius {
        let [a, b] = &self.pages[g.page - 1][g.slot - 1];
        let m = if g.letter == GenLetter::A { a } else { b };
        if g.inverse {
            m.inverse()
        } else {
            *m
        }
    }

    /// Largest distance between a page's commutator product and `T`.
    pub fn relator_residual(&self) -> f64 {
        self.pages
            .iter()
            .map(|page| {
                let prod = page.iter().fold(Moebius::IDENTITY, |acc, [a, b]| acc.mul(&Moebius::commutator(a, b)));
                prod.distance(&self.core)
            })
            .fold(0.0, f64::max)
    }
}

/// Builds a representation with centralizer exponents `s_j = j`.
pub fn build_rep(group: &BookGroup, seed: u64) -> Result<Representation> {
    let exps = (1..=group.page_count()).map(|j| j as f64).collect();
    build_rep_with(group, seed, exps)
}

/// Builds a representation whose page `j` tuple is the base tuple conjugated
/// by `exp(s_j · c)` in the centralizer of `T`.
///
/// Slots beyond the first use commuting pairs `(X, X²)`, so every page of
/// genus `g` has commutator product `T`.
pub fn build_rep_with(group: &BookGroup, seed: u64, exponents: Vec<f64>) -> Result<Representation> {
    if exponents.len() != group.page_count() {
        return Err(Error::InvalidArgument(format!("{} exponents for {} pages", exponents.len(), group.page_count())));
    }
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        let (Some(a), Some(b)) = (random_unit(&mut rng), random_unit(&mut rng)) else { continue };
        let t = Moebius::commutator(&a, &b);
        if t.trace().norm() <= 2.0 + LOXODROMIC_MARGIN {
            continue;
        }
        let Some(p) = diagonalizer(&t) else { continue };
        let direction = C::new(rng.gen_range(0.2..0.8), rng.gen_range(0.2..0.8));
        let max_genus = (1..=group.page_count()).map(|j| group.genus(j)).max().unwrap_or(1);
        let extra: Vec<Moebius> = (1..max_genus).filter_map(|_| random_unit(&mut rng)).collect();
        if extra.len() + 1 != max_genus {
            continue;
        }
        let pages = exponents
            .iter()
            .enumerate()
            .map(|(j, &s)| {
                let cj = Moebius::diag((direction * s).exp()).conjugate_by(&p);
                (0..group.genus(j + 1))
                    .map(|k| {
                        let (x, y) = if k == 0 { (a, b) } else { (extra[k - 1], extra[k - 1].mul(&extra[k - 1])) };
                        [x.conjugate_by(&cj).renormalize(), y.conjugate_by(&cj).renormalize()]
                    })
                    .collect()
            })
            .collect();
        let rep = Representation { seed, reseeds: attempt, exponents: exponents.clone(), direction, pages, core: t };
        if rep.relator_residual() <= RESIDUAL_TOL {
            return Ok(rep);
        }
    }
    Err(Error::DegenerateRepresentation(MAX_ATTEMPTS as usize))
}

pub fn evaluate_word(rep: &Representation, w: &Word) -> Evaluation {
    let mut m = Moebius::IDENTITY;
    let mut log_scale = 0.0;
    let core_inv = rep.core.inverse();
    for s in &w.0 {
        let x = match *s {
            Symbol::Gen(g) => rep.matrix(g),
            Symbol::Core(false) => rep.core,
            Symbol::Core(true) => core_inv,
        };
        m = m.mul(&x);
        let norm = m.max_norm();
        if norm > RESCALE_AT {
            m = m.scale(1.0 / norm);
            log_scale += norm.ln();
        }
    }
    let trace = m.trace();
    if log_scale > 0.0 {
        Evaluation { matrix: m, log_scale, trace, trlength: 2.0 * (log_scale + trace.norm().ln()), overflow: true }
    } else {
        Evaluation { matrix: m, log_scale, trace, trlength: trlength_of_trace(trace), overflow: false }
    }
}

pub fn evaluate(rep: &Representation, g: &NormalForm) -> Evaluation {
    evaluate_word(rep, &g.to_word())
}

/// Evaluates a shortest conjugate of `g`. Trace and trlength are class
/// functions, and the short word avoids cancellation in long products such
/// as `T^i X T^-i`.
pub fn evaluate_class(rep: &Representation, group: &BookGroup, g: &NormalForm) -> Evaluation {
    evaluate(rep, &group.shortest_conjugate(g, SearchBudget::default()))
}

/// `max |tr ρ(f(w)) − tr ρ(w)|` over `words`.
pub fn character_delta(rep: &Representation, group: &BookGroup, f: &BookAutomorphism, words: &[NormalForm]) -> f64 {
    words
        .iter()
        .map(|w| (evaluate_class(rep, group, &f.apply(group, w)).trace - evaluate_class(rep, group, w).trace).norm())
        .fold(0.0, f64::max)
}

/// The fixed generator list for `μ_i`: all generators, and products of two
/// generators from different pages.
pub fn growth_generators(group: &BookGroup) -> Vec<NormalForm> {
    let gens: Vec<Generator> = group.all_generators().into_iter().filter(|g| !g.inverse).collect();
    let mut out: Vec<NormalForm> = gens.iter().map(|&g| group.generator(g)).collect();
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            if x.page != y.page {
                out.push(group.mul(&group.generator(x), &group.generator(y)));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthRow {
    pub i: usize,
    pub trace_re: f64,
    pub trace_im: f64,
    pub trlength: f64,
    pub mu_i: f64,
    pub normalized: f64,
    pub loxodromic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthScan {
    pub rows: Vec<GrowthRow>,
    /// Least-squares slope of trlength against `i` over `i >= 8`.
    pub slope: f64,
    /// Indices excluded from the fit as non-loxodromic.
    pub excluded: Vec<usize>,
}

pub const FIT_START: usize = 8;

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Tracks `trlength ρ(f^i(w))` for `0 <= i <= i_max`, normalized by
/// `μ_i = max trlength ρ(f^i(g))` over [`growth_generators`].
pub fn growth_scan(rep: &Representation, group: &BookGroup, f: &BookAutomorphism, w: &NormalForm, i_max: usize) -> Result<GrowthScan> {
    if i_max < FIT_START {
        return Err(Error::SequenceTooShort { got: i_max, need: FIT_START });
    }
    let mut gens = growth_generators(group);
    let mut x = w.clone();
    let mut rows = Vec::with_capacity(i_max + 1);
    let mut excluded = Vec::new();
    for i in 0..=i_max {
        if i > 0 {
            x = f.apply(group, &x);
            gens = gens.iter().map(|g| f.apply(group, g)).collect();
        }
        let e = evaluate_class(rep, group, &x);
        let mu = gens.iter().map(|g| evaluate_class(rep, group, g).trlength).fold(0.0, f64::max);
        let loxodromic = e.overflow || !(e.trace.im.abs() < 1e-12 && e.trace.re.abs() <= 2.0 + LOXODROMIC_MARGIN);
        if !loxodromic {
            excluded.push(i);
        }
        rows.push(GrowthRow {
            i,
            trace_re: e.trace.re,
            trace_im: e.trace.im,
            trlength: e.trlength,
            mu_i: mu,
            normalized: if mu > 0.0 { e.trlength / mu } else { 0.0 },
            loxodromic,
        });
    }
    let points: Vec<(f64, f64)> = rows.iter().filter(|r| r.i >= FIT_START && r.loxodromic).map(|r| (r.i as f64, r.trlength)).collect();
    Ok(GrowthScan { slope: ls_slope(&points), rows, excluded })
}

impl GrowthScan {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,trace_re,trace_im,trlength,mu_i,normalized\n");
        for r in &self.rows {
            out.push_str(&format!("{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n", r.i, r.trace_re, r.trace_im, r.trlength, r.mu_i, r.normalized));
        }
        out
    }
}
