//! Exact arithmetic in the fundamental group of a book of I-bundles.
//!
//! The group is the amalgam of the free page groups `F_j = π_1(Σ_j)` over the
//! cyclic subgroup generated by the core class `t`, where `t` is identified
//! with each page boundary `∂_j = [a_{j,1}, b_{j,1}] ... [a_{j,g}, b_{j,g}]`.
//!
//! Elements are kept in the normal form `t^e · r_1 ... r_k`: consecutive
//! syllables lie in distinct pages, and each `r_i` is the shortlex-least
//! representative of its right coset `⟨t⟩·r_i` (and not in `⟨t⟩`).

mod automorphism;
mod conjugacy;
pub mod free;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use free::Letter;

pub use automorphism::{AutomorphismStep, BookAutomorphism};
pub use conjugacy::{ConjugacyResult, ConjugatorSearch, ElementClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenLetter {
    A,
    B,
}

/// A generator `a_{page,slot}` or `b_{page,slot}`, or its inverse. 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub page: usize,
    pub slot: usize,
    pub letter: GenLetter,
    pub inverse: bool,
}

impl Generator {
    pub fn a(page: usize, slot: usize) -> Self {
        Generator { page, slot, letter: GenLetter::A, inverse: false }
    }

    pub fn b(page: usize, slot: usize) -> Self {
        Generator { page, slot, letter: GenLetter::B, inverse: false }
    }

    pub fn inv(self) -> Self {
        Generator { inverse: !self.inverse, ..self }
    }

    fn code(&self) -> Letter {
        let base = 2 * self.slot as Letter - if self.letter == GenLetter::A { 1 } else { 0 };
        if self.inverse {
            -base
        } else {
            base
        }
    }

    fn from_code(page: usize, code: Letter) -> Self {
        let abs = code.unsigned_abs() as usize;
        Generator {
            page,
            slot: abs.div_ceil(2),
            letter: if abs % 2 == 1 { GenLetter::A } else { GenLetter::B },
            inverse: code < 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Gen(Generator),
    /// The core class `t` (`false`) or `t⁻¹` (`true`).
    Core(bool),
}

impl Symbol {
    pub fn inv(self) -> Self {
        match self {
            Symbol::Gen(g) => Symbol::Gen(g.inv()),
            Symbol::Core(i) => Symbol::Core(!i),
        }
    }
}

/// Raw input word. Serialized as whitespace-separated tokens `a1`, `b2`,
/// `A1` (inverse), `t`, `T`; slots beyond the first are written `a1.2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: Generator) -> Self {
        Word(vec![Symbol::Gen(g)])
    }

    pub fn core_power(k: i64) -> Self {
        Word(vec![Symbol::Core(k < 0); k.unsigned_abs() as usize])
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|s| s.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Core(false) => write!(f, "t"),
            Symbol::Core(true) => write!(f, "T"),
            Symbol::Gen(g) => {
                let c = match (g.letter, g.inverse) {
                    (GenLetter::A, false) => 'a',
                    (GenLetter::A, true) => 'A',
                    (GenLetter::B, false) => 'b',
                    (GenLetter::B, true) => 'B',
                };
                if g.slot == 1 {
                    write!(f, "{c}{}", g.page)
                } else {
                    write!(f, "{c}{}.{}", g.page, g.slot)
                }
            }
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut out = Vec::new();
        let read_number = |i: &mut usize| -> Option<usize> {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            chars[start..*i].iter().collect::<String>().parse().ok()
        };
        while i < chars.len() {
            let c = chars[i];
            i += 1;
            match c {
                ' ' | '\t' | '\n' | '*' | ',' | '·' => {}
                '1' if out.is_empty() && s.trim() == "1" => {}
                't' => out.push(Symbol::Core(false)),
                'T' => out.push(Symbol::Core(true)),
                'a' | 'A' | 'b' | 'B' => {
                    let page = read_number(&mut i)
                        .ok_or_else(|| Error::MalformedWord(format!("missing page index after '{c}' in {s:?}")))?;
                    let slot = if i < chars.len() && chars[i] == '.' {
                        i += 1;
                        read_number(&mut i)
                            .ok_or_else(|| Error::MalformedWord(format!("missing slot after '.' in {s:?}")))?
                    } else {
                        1
                    };
                    if page == 0 || slot == 0 {
                        return Err(Error::MalformedWord(format!("indices are 1-based in {s:?}")));
                    }
                    let letter = if c.eq_ignore_ascii_case(&'a') { GenLetter::A } else { GenLetter::B };
                    out.push(Symbol::Gen(Generator { page, slot, letter, inverse: c.is_uppercase() }));
                }
                other => return Err(Error::MalformedWord(format!("unexpected character {other:?} in {s:?}"))),
            }
        }
        Ok(Word(out))
    }
}

/// One syllable of a normal form: a reduced word in a single page.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub page: usize,
    pub letters: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub lead_exponent: i64,
    pub syllables: Vec<Syllable>,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm { lead_exponent: 0, syllables: Vec::new() }
    }

    pub fn core_power(k: i64) -> Self {
        NormalForm { lead_exponent: k, syllables: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.lead_exponent == 0 && self.syllables.is_empty()
    }

    /// `Some(k)` when the element is `t^k`.
    pub fn as_core_power(&self) -> Option<i64> {
        self.syllables.is_empty().then_some(self.lead_exponent)
    }

    pub fn syllable_length(&self) -> usize {
        self.syllables.len()
    }

    pub fn to_word(&self) -> Word {
        let mut w = Word::core_power(self.lead_exponent).0;
        for s in &self.syllables {
            w.extend(s.letters.iter().map(|&c| Symbol::Gen(Generator::from_code(s.page, c))));
        }
        Word(w)
    }

    pub fn pages(&self) -> Vec<usize> {
        self.syllables.iter().map(|s| s.page).collect()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

/// The fundamental group of a book, described by its page genera.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BookGroup {
    genera: Vec<usize>,
}

impl BookGroup {
    pub fn new(genera: Vec<usize>) -> Result<Self> {
        if genera.is_empty() || genera.contains(&0) {
            return Err(Error::InvalidArgument(format!("page genera must be positive: {genera:?}")));
        }
        Ok(BookGroup { genera })
    }

    pub fn uniform(pages: usize, genus: usize) -> Result<Self> {
        Self::new(vec![genus; pages])
    }

    pub fn from_book(book: &crate::jsj::JsjGraph) -> Self {
        BookGroup { genera: book.genera() }
    }

    pub fn page_count(&self) -> usize {
        self.genera.len()
    }

    pub fn genus(&self, page: usize) -> usize {
        self.genera[page - 1]
    }

    pub fn genera(&self) -> &[usize] {
        &self.genera
    }

    pub fn validate_word(&self, w: &Word) -> Result<()> {
        for s in &w.0 {
            if let Symbol::Gen(g) = s {
                if g.page == 0 || g.page > self.genera.len() || g.slot == 0 || g.slot > self.genera[g.page - 1] {
                    return Err(Error::GeneratorRange(format!("{s} (genera {:?})", self.genera)));
                }
            }
        }
        Ok(())
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        let w: Word = text.parse()?;
        self.validate_word(&w)?;
        Ok(w)
    }

    /// All generators of a page, in the order `a_1, b_1, a_2, b_2, ...`.
    pub fn page_generators(&self, page: usize) -> Vec<Generator> {
        (1..=self.genus(page)).flat_map(|k| [Generator::a(page, k), Generator::b(page, k)]).collect()
    }

    pub fn all_generators(&self) -> Vec<Generator> {
        (1..=self.page_count()).flat_map(|j| self.page_generators(j)).collect()
    }

    /// `∂_j` as a word in page `j`'s letters.
    pub fn boundary(&self, page: usize) -> Word {
        let letters = free::boundary_word(self.genus(page));
        Word(letters.iter().map(|&c| Symbol::Gen(Generator::from_code(page, c))).collect())
    }

    pub fn generator(&self, g: Generator) -> NormalForm {
        self.reduce(&Word::gen(g))
    }

    pub fn reduce(&self, w: &Word) -> NormalForm {
        let mut stack: Vec<Syllable> = Vec::new();
        let mut lead: i64 = 0;
        for sym in &w.0 {
            match *sym {
                Symbol::Gen(g) => {
                    let code = g.code();
                    self.push_syllable(&mut stack, &mut lead, g.page, vec![code]);
                }
                Symbol::Core(inv) => {
                    let e = if inv { -1 } else { 1 };
                    match stack.last() {
                        Some(top) => {
                            let page = top.page;
                            let letters = free::boundary_power(self.genus(page), e);
                            self.push_syllable(&mut stack, &mut lead, page, letters);
                        }
                        None => lead += e,
                    }
                }
            }
        }
        self.canonicalize(lead, stack)
    }

    /// Appends a page word to a stack of alternating non-core syllables,
    /// merging with the top and pushing `t`-powers leftwards as they appear.
    fn push_syllable(&self, stack: &mut Vec<Syllable>, lead: &mut i64, mut page: usize, mut letters: Vec<Letter>) {
        loop {
            if let Some(top) = stack.last() {
                if top.page == page {
                    let top = stack.pop().expect("nonempty");
                    letters = free::concat(&top.letters, &letters);
                    continue;
                }
            }
            letters = free::free_reduce(&letters);
            match free::as_boundary_power(self.genus(page), &letters) {
                Some(m) => match stack.pop() {
                    Some(top) => {
                        let tail = free::boundary_power(self.genus(top.page), m);
                        page = top.page;
                        letters = free::concat(&top.letters, &tail);
                    }
                    None => {
                        *lead += m;
                        return;
                    }
                },
                None => {
                    stack.push(Syllable { page, letters });
                    return;
                }
            }
        }
    }

    fn canonicalize(&self, mut lead: i64, mut syllables: Vec<Syllable>) -> NormalForm {
        let mut carry: i64 = 0;
        for i in (0..syllables.len()).rev() {
            let page = syllables[i].page;
            let genus = self.genus(page);
            let word = if carry == 0 {
                std::mem::take(&mut syllables[i].letters)
            } else {
                free::concat(&syllables[i].letters, &free::boundary_power(genus, carry))
            };
            let (m, rep) = free::coset_representative(genus, &word);
            syllables[i].letters = rep;
            carry = m;
        }
        lead += carry;
        NormalForm { lead_exponent: lead, syllables }
    }

    pub fn mul(&self, a: &NormalForm, b: &NormalForm) -> NormalForm {
        self.reduce(&a.to_word().concat(&b.to_word()))
    }

    pub fn inverse(&self, a: &NormalForm) -> NormalForm {
        self.reduce(&a.to_word().inverse())
    }

    pub fn product(&self, factors: &[&NormalForm]) -> NormalForm {
        let mut w = Word::identity();
        for f in factors {
            w = w.concat(&f.to_word());
        }
        self.reduce(&w)
    }

    /// `h · g · h⁻¹`.
    pub fn conjugate(&self, h: &NormalForm, g: &NormalForm) -> NormalForm {
        self.product(&[h, g, &self.inverse(h)])
    }

    pub fn equal(&self, a: &Word, b: &Word) -> bool {
        self.reduce(a) == self.reduce(b)
    }

    /// Conjugates `g` until its first and last syllables lie in distinct
    /// pages (or it has at most one syllable). Returns `(c, c·g·c⁻¹)`.
    pub fn cyclic_reduce(&self, g: &NormalForm) -> (NormalForm, NormalForm) {
        let mut conj = NormalForm::identity();
        let mut cur = g.clone();
        while cur.syllables.len() >= 2 && cur.syllables[0].page == cur.syllables[cur.syllables.len() - 1].page {
            let last = cur.syllables.last().expect("nonempty");
            let r = self.reduce(&NormalForm { lead_exponent: 0, syllables: vec![last.clone()] }.to_word());
            cur = self.conjugate(&r, &cur);
            conj = self.mul(&r, &conj);
        }
        (conj, cur)
    }

    /// The element as a single reduced word in page `page`, when it lies there.
    pub fn in_page(&self, g: &NormalForm) -> Option<(usize, Vec<Letter>)> {
        match g.syllables.as_slice() {
            [] => None,
            [s] => {
                let lead = free::boundary_power(self.genus(s.page), g.lead_exponent);
                Some((s.page, free::concat(&lead, &s.letters)))
            }
            _ => None,
        }
    }

    pub fn page_word_to_nf(&self, page: usize, letters: &[Letter]) -> NormalForm {
        self.reduce(&Word(letters.iter().map(|&c| Symbol::Gen(Generator::from_code(page, c))).collect()))
    }

    /// Letter count of the element written as `∂^e r_1 ... r_k`, with the
    /// core power merged into the first syllable.
    pub fn flat_length(&self, g: &NormalForm) -> usize {
        match g.syllables.first() {
            None => g.lead_exponent.unsigned_abs() as usize,
            Some(first) => {
                let lead = free::boundary_power(self.genus(first.page), g.lead_exponent);
                let head = free::concat(&lead, &first.letters).len();
                head + g.syllables[1..].iter().map(|s| s.letters.len()).sum::<usize>()
            }
        }
    }
}

/// Subgroups used by the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupSpec {
    Page(usize),
    /// `π_1(S_{i,j})`, generated by all generators of pages `i` and `j`.
    Surface(usize, usize),
    Custom(Vec<String>),
}

impl SubgroupSpec {
    pub fn surface(i: usize, j: usize) -> Self {
        SubgroupSpec::Surface(i.min(j), i.max(j))
    }

    pub fn generators(&self, group: &BookGroup) -> Result<Vec<NormalForm>> {
        let n = group.page_count();
        let check = |j: usize| {
            if j == 0 || j > n {
                Err(Error::PageIndex { index: j, n })
            } else {
                Ok(())
            }
        };
        match self {
            SubgroupSpec::Page(j) => {
                check(*j)?;
                Ok(group.page_generators(*j).into_iter().map(|g| group.generator(g)).collect())
            }
            SubgroupSpec::Surface(i, j) => {
                check(*i)?;
                check(*j)?;
                if i == j {
                    return Err(Error::InvalidArgument(format!("surface({i},{j}) needs two distinct pages")));
                }
                Ok(group
                    .page_generators(*i)
                    .into_iter()
                    .chain(group.page_generators(*j))
                    .map(|g| group.generator(g))
                    .collect())
            }
            SubgroupSpec::Custom(words) => words.iter().map(|w| Ok(group.reduce(&group.parse(w)?))).collect(),
        }
    }

    /// Pages whose generators span the subgroup, for page and surface subgroups.
    pub fn pages(&self) -> Vec<usize> {
        match self {
            SubgroupSpec::Page(j) => vec![*j],
            SubgroupSpec::Surface(i, j) => vec![*i, *j],
            SubgroupSpec::Custom(_) => Vec::new(),
        }
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Page(j) => write!(f, "page({j})"),
            SubgroupSpec::Surface(i, j) => write!(f, "surface({i},{j})"),
            SubgroupSpec::Custom(ws) => write!(f, "custom[{}]", ws.join("; ")),
        }
    }
}

/// Limits for bounded searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Largest `|k|` tried for core powers `t^k` and centralizer powers.
    pub exponent: i64,
    /// Longest candidate conjugator (in letters) considered.
    pub length: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { exponent: 64, length: 24 }
    }
}
