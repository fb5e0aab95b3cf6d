//! Conjugacy in the book group.
//!
//! After cyclic reduction an element is one of: a power of `t` (up to
//! conjugacy), an element of a single page not conjugate into `⟨t⟩`, or a
//! cyclic word of at least two syllables. Conjugacy is decided exactly in the
//! first two cases. In the last case two elements are conjugate iff a cyclic
//! permutation of one is conjugate to the other by a power of `t`; the power
//! is searched up to the exponent budget.

use serde::{Deserialize, Serialize};

use super::free::{self, Letter};
use super::{BookAutomorphism, BookGroup, NormalForm, SearchBudget, SubgroupSpec};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementClass {
    /// `x · g · x⁻¹ = t^power`.
    Core { power: i64, conj: NormalForm },
    /// `x · g · x⁻¹` is the cyclically reduced word `core` of page `page`.
    Factor { page: usize, core: Vec<Letter>, conj: NormalForm },
    /// `x · g · x⁻¹` is cyclically reduced with at least two syllables.
    Long { reduced: NormalForm, conj: NormalForm },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ConjugacyResult {
    /// `h · u · h⁻¹ = v`.
    Conjugate { conjugator: String },
    NotConjugate,
    UndeterminedAtBudget { budget: SearchBudget },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ConjugatorSearch {
    Found { conjugator: String },
    NoneFoundAtBudget { budget: SearchBudget },
}

impl ConjugatorSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, ConjugatorSearch::Found { .. })
    }
}

/// Returns the element `∂^k` exponent when `core` is a cyclic rotation of `∂^k`.
fn rotation_of_boundary_power(genus: usize, core: &[Letter]) -> Option<(i64, usize)> {
    let period = 4 * genus;
    if core.is_empty() || !core.len().is_multiple_of(period) {
        return None;
    }
    let m = (core.len() / period) as i64;
    for k in [m, -m] {
        let target = free::boundary_power(genus, k);
        let n = core.len();
        for i in 0..n {
            if (0..n).all(|j| core[(i + j) % n] == target[j]) {
                return Some((k, i));
            }
        }
    }
    None
}

impl BookGroup {
    pub fn classify(&self, g: &NormalForm) -> ElementClass {
        let (c, r) = self.cyclic_reduce(g);
        if let Some(k) = r.as_core_power() {
            return ElementClass::Core { power: k, conj: c };
        }
        if let Some((page, letters)) = self.in_page(&r) {
            let (prefix, core) = free::cyclic_core(&letters);
            // prefix⁻¹ · r · prefix = core
            let p_inv = self.page_word_to_nf(page, &free::invert(&prefix));
            let conj = self.mul(&p_inv, &c);
            let genus = self.genus(page);
            if let Some((k, i)) = rotation_of_boundary_power(genus, &core) {
                // x⁻¹ · core · x = ∂^k with x the first i letters of core
                let x_inv = self.page_word_to_nf(page, &free::invert(&core[..i]));
                return ElementClass::Core { power: k, conj: self.mul(&x_inv, &conj) };
            }
            return ElementClass::Factor { page, core, conj };
        }
        ElementClass::Long { reduced: r, conj: c }
    }

    /// Looks for `h` with `h · u · h⁻¹ = v`.
    pub fn are_conjugate(&self, u: &NormalForm, v: &NormalForm, budget: SearchBudget) -> ConjugacyResult {
        match self.conjugator(u, v, budget) {
            Ok(Some(h)) => ConjugacyResult::Conjugate { conjugator: h.to_string() },
            Ok(None) => ConjugacyResult::NotConjugate,
            Err(()) => ConjugacyResult::UndeterminedAtBudget { budget },
        }
    }

    /// `Ok(Some(h))` verified witness, `Ok(None)` proven non-conjugate,
    /// `Err(())` undetermined at budget.
    pub fn conjugator(&self, u: &NormalForm, v: &NormalForm, budget: SearchBudget) -> std::result::Result<Option<NormalForm>, ()> {
        let found = match (self.classify(u), self.classify(v)) {
            (ElementClass::Core { power: a, conj: xu }, ElementClass::Core { power: b, conj: xv }) => {
                if a != b {
                    return Ok(None);
                }
                self.mul(&self.inverse(&xv), &xu)
            }
            (ElementClass::Factor { page: p, core: cu, conj: xu }, ElementClass::Factor { page: q, core: cv, conj: xv }) => {
                if p != q {
                    return Ok(None);
                }
                let Some(y) = free::free_conjugator(&cu, &cv) else {
                    return Ok(None);
                };
                let y = self.page_word_to_nf(p, &y);
                self.product(&[&self.inverse(&xv), &y, &xu])
            }
            (ElementClass::Long { reduced: ru, conj: xu }, ElementClass::Long { reduced: rv, conj: xv }) => {
                match self.long_conjugator(&ru, &rv, budget) {
                    Some(y) => self.product(&[&self.inverse(&xv), &y, &xu]),
                    None => {
                        if !cyclic_page_match(&ru.pages(), &rv.pages()) {
                            return Ok(None);
                        }
                        return Err(());
                    }
                }
            }
            _ => return Ok(None),
        };
        debug_assert_eq!(&self.conjugate(&found, u), v);
        Ok(Some(found))
    }

    /// `y` with `y · u · y⁻¹ = v` for cyclically reduced long elements.
    fn long_conjugator(&self, u: &NormalForm, v: &NormalForm, budget: SearchBudget) -> Option<NormalForm> {
        let k = v.syllables.len();
        if u.syllables.len() != k {
            return None;
        }
        let pu = u.pages();
        let pv = v.pages();
        for rot in 0..k {
            if (0..k).any(|j| pv[(rot + j) % k] != pu[j]) {
                continue;
            }
            // prefix = t^e s_1 ... s_rot, rotated = prefix⁻¹ · v · prefix
            let prefix = NormalForm { lead_exponent: v.lead_exponent, syllables: v.syllables[..rot].to_vec() };
            let prefix = self.reduce(&prefix.to_word());
            let rotated = self.conjugate(&self.inverse(&prefix), v);
            for e in symmetric_range(budget.exponent) {
                let tk = NormalForm::core_power(e);
                if self.conjugate(&tk, u) == rotated {
                    // v = prefix · t^e · u · t^-e · prefix⁻¹
                    return Some(self.mul(&prefix, &tk));
                }
            }
        }
        None
    }

    /// Smallest flat length over `t`-conjugates (within budget) of the
    /// cyclic reduction of `g`. Constant along a conjugacy class as long as
    /// the budget covers the relevant core powers.
    pub fn conjugacy_length(&self, g: &NormalForm, budget: SearchBudget) -> usize {
        self.flat_length(&self.shortest_conjugate(g, budget))
    }

    /// A short conjugate of `g`: the cyclic reduction of `t^e g t^-e` found by
    /// descending in `e` from 0 in both directions, `|e| <= budget.exponent`.
    pub fn shortest_conjugate(&self, g: &NormalForm, budget: SearchBudget) -> NormalForm {
        let (_, r) = self.cyclic_reduce(g);
        match self.classify(&r) {
            ElementClass::Factor { page, core, .. } => return self.page_word_to_nf(page, &core),
            ElementClass::Core { power, .. } => return NormalForm::core_power(power),
            ElementClass::Long { .. } => {}
        }
        let at = |e: i64| {
            let (_, c) = self.cyclic_reduce(&self.conjugate(&NormalForm::core_power(e), &r));
            let len = self.flat_length(&c);
            (len, c)
        };
        let mut best_len = self.flat_length(&r);
        let mut best = r.clone();
        for dir in [1i64, -1] {
            let mut prev = best_len;
            let mut stalls = 0;
            let mut e = dir;
            while e.abs() <= budget.exponent && stalls < 2 {
                let (len, c) = at(e);
                if len < best_len {
                    best_len = len;
                    best = c;
                }
                stalls = if len < prev { 0 } else { stalls + 1 };
                prev = len;
                e += dir;
            }
        }
        best
    }

    /// Searches `h` with `f(g) = h · g · h⁻¹` for every generator `g` of `subgroup`.
    ///
    /// Core powers `t^k` are tried first. Otherwise the full conjugator set
    /// for the first page-type generator is `y · C(g)` with `C(g)` its cyclic
    /// centralizer, and that coset is enumerated up to the exponent budget.
    pub fn inner_conjugator_on(
        &self,
        f: &BookAutomorphism,
        subgroup: &SubgroupSpec,
        budget: SearchBudget,
    ) -> Result<(ConjugatorSearch, Option<NormalForm>)> {
        let gens = subgroup.generators(self)?;
        let images: Vec<NormalForm> = gens.iter().map(|g| f.apply(self, g)).collect();
        let works = |h: &NormalForm| gens.iter().zip(&images).all(|(g, fg)| &self.conjugate(h, g) == fg);
        for e in symmetric_range(budget.exponent) {
            let h = NormalForm::core_power(e);
            if works(&h) {
                return Ok((ConjugatorSearch::Found { conjugator: h.to_string() }, Some(h)));
            }
        }
        let none = ConjugatorSearch::NoneFoundAtBudget { budget };
        let Some((g, fg)) = gens.iter().zip(&images).next() else {
            return Ok((ConjugatorSearch::Found { conjugator: "1".into() }, Some(NormalForm::identity())));
        };
        let y = match self.conjugator(g, fg, budget) {
            Ok(Some(y)) => y,
            _ => return Ok((none, None)),
        };
        // centralizer generator of g: conj⁻¹ · root · conj
        let root = match self.classify(g) {
            ElementClass::Factor { page, core, conj } => {
                let (root, _) = free::primitive_root(&core);
                let root = self.page_word_to_nf(page, &root);
                self.conjugate(&self.inverse(&conj), &root)
            }
            _ => g.clone(),
        };
        let mut power = NormalForm::identity();
        let root_inv = self.inverse(&root);
        let mut powers = vec![(0i64, NormalForm::identity())];
        let mut neg = NormalForm::identity();
        for k in 1..=budget.exponent {
            power = self.mul(&power, &root);
            neg = self.mul(&neg, &root_inv);
            powers.push((k, power.clone()));
            powers.push((-k, neg.clone()));
        }
        for (_, c) in powers {
            let h = self.mul(&y, &c);
            if self.flat_length(&h) > budget.length && h.as_core_power().is_none() {
                continue;
            }
            if works(&h) {
                return Ok((ConjugatorSearch::Found { conjugator: h.to_string() }, Some(h)));
            }
        }
        Ok((none, None))
    }
}

/// `0, 1, -1, 2, -2, ..., bound, -bound`.
pub(crate) fn symmetric_range(bound: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound).flat_map(|k| [k, -k]))
}

fn cyclic_page_match(a: &[usize], b: &[usize]) -> bool {
    let k = a.len();
    if b.len() != k {
        return false;
    }
    (0..k).any(|rot| (0..k).all(|j| b[(rot + j) % k] == a[j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(group: &BookGroup, s: &str) -> NormalForm {
        group.reduce(&group.parse(s).unwrap())
    }

    fn witness(group: &BookGroup, u: &str, v: &str) -> NormalForm {
        let (u, v) = (nf(group, u), nf(group, v));
        let h = group.conjugator(&u, &v, SearchBudget::default()).unwrap().unwrap();
        assert_eq!(group.conjugate(&h, &u), v);
        h
    }

    #[test]
    fn core_conjugates_page_generator() {
        let g = BookGroup::uniform(4, 1).unwrap();
        assert_eq!(witness(&g, "a1", "t a1 T"), NormalForm::core_power(1));
    }

    #[test]
    fn free_rotation_within_page() {
        let g = BookGroup::uniform(4, 1).unwrap();
        assert_eq!(witness(&g, "a1 b1", "b1 a1"), nf(&g, "A1"));
    }

    #[test]
    fn distinct_pages_are_not_conjugate() {
        let g = BookGroup::uniform(4, 1).unwrap();
        let r = g.are_conjugate(&nf(&g, "a1"), &nf(&g, "a2"), SearchBudget::default());
        assert_eq!(r, ConjugacyResult::NotConjugate);
        let r = g.are_conjugate(&nf(&g, "t"), &nf(&g, "t t"), SearchBudget::default());
        assert_eq!(r, ConjugacyResult::NotConjugate);
    }

    #[test]
    fn core_classes_across_pages() {
        let g = BookGroup::uniform(3, 1).unwrap();
        witness(&g, "a2 b2 A2 B2", "a3 t A3");
        witness(&g, "b1 A1 B1 a1", "t");
    }

    #[test]
    fn long_elements_up_to_rotation_and_core_power() {
        let g = BookGroup::uniform(4, 1).unwrap();
        witness(&g, "a1 a2", "a2 a1");
        witness(&g, "a1 b2 a3", "t t b2 a3 a1 T T");
        witness(&g, "a1 a2 b3 a2", "a3 b2 a1 b2 t a2 b3 a2 a1 T B2 A1 B2 A3");
        let r = g.are_conjugate(&nf(&g, "a1 a2"), &nf(&g, "a1 a3"), SearchBudget::default());
        assert_eq!(r, ConjugacyResult::NotConjugate);
    }

    #[test]
    fn long_conjugacy_outside_budget_is_undetermined() {
        let g = BookGroup::uniform(4, 1).unwrap();
        let budget = SearchBudget { exponent: 2, length: 24 };
        let u = nf(&g, "a1 a2");
        let v = g.conjugate(&NormalForm::core_power(5), &nf(&g, "a1 t t t a2 T T T"));
        let r = g.are_conjugate(&u, &v, budget);
        assert!(matches!(r, ConjugacyResult::UndeterminedAtBudget { .. } | ConjugacyResult::NotConjugate));
    }

    #[test]
    fn conjugacy_length_is_class_invariant() {
        let g = BookGroup::uniform(4, 1).unwrap();
        let w = nf(&g, "a1 a3");
        let conj = g.conjugate(&NormalForm::core_power(7), &w);
        let budget = SearchBudget::default();
        assert_eq!(g.conjugacy_length(&w, budget), g.conjugacy_length(&conj, budget));
        assert_eq!(g.conjugacy_length(&w, budget), 2);
    }
}
