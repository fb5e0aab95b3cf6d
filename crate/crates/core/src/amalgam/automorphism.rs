use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BookGroup, GenLetter, Generator, NormalForm, Symbol, Word};
use crate::error::{Error, Result};

/// An endomorphism of the book group given by generator images.
///
/// `t` is not a free generator: its image is the image of `∂_1`. Inverses are
/// tracked through [`twist`](BookAutomorphism::twist),
/// [`relabel`](BookAutomorphism::relabel) and composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookAutomorphism {
    /// `images[page - 1][slot - 1] = [image of a, image of b]`.
    images: Vec<Vec<[NormalForm; 2]>>,
    inverse: Option<Box<BookAutomorphism>>,
    pub label: String,
}

/// One step of an automorphism script, `{"twist":{"page":1,"dir":1}}` or
/// `{"relabel":{"perm":[2,1,3,4]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutomorphismStep {
    Twist { page: usize, dir: i64 },
    Relabel { perm: Vec<usize> },
}

impl fmt::Display for BookAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

impl BookAutomorphism {
    pub fn identity(group: &BookGroup) -> Self {
        let images = (1..=group.page_count())
            .map(|j| (1..=group.genus(j)).map(|k| [group.generator(Generator::a(j, k)), group.generator(Generator::b(j, k))]).collect())
            .collect();
        let mut id = BookAutomorphism { images, inverse: None, label: "id".into() };
        id.inverse = Some(Box::new(id.clone()));
        id
    }

    fn without_inverse(group: &BookGroup, label: String, image: impl Fn(Generator) -> NormalForm) -> Self {
        let images = (1..=group.page_count())
            .map(|j| (1..=group.genus(j)).map(|k| [image(Generator::a(j, k)), image(Generator::b(j, k))]).collect())
            .collect();
        BookAutomorphism { images, inverse: None, label }
    }

    /// Conjugation of page `page` by `t^dir`, identity on the other pages.
    pub fn twist(group: &BookGroup, page: usize, dir: i64) -> Result<Self> {
        if page == 0 || page > group.page_count() {
            return Err(Error::PageIndex { index: page, n: group.page_count() });
        }
        let make = |d: i64| {
            let tk = NormalForm::core_power(d);
            Self::without_inverse(group, format!("twist({page},{d:+})"), |g| {
                let x = group.generator(g);
                if g.page == page {
                    group.conjugate(&tk, &x)
                } else {
                    x
                }
            })
        };
        let mut f = make(dir);
        f.inverse = Some(Box::new(make(-dir)));
        Ok(f)
    }

    /// Renames page `j` to page `perm[j - 1]`; pages exchanged must have equal genus.
    pub fn relabel(group: &BookGroup, perm: &[usize]) -> Result<Self> {
        let n = group.page_count();
        let sigma = crate::jsj::Permutation::from_images(perm.to_vec())?;
        if sigma.len() != n {
            return Err(Error::NotAPermutation { n, detail: format!("{perm:?}") });
        }
        for j in 1..=n {
            if group.genus(j) != group.genus(sigma.apply(j)) {
                return Err(Error::InvalidArgument(format!("relabel maps page {j} to page {} of different genus", sigma.apply(j))));
            }
        }
        let make = |s: &crate::jsj::Permutation| {
            Self::without_inverse(group, format!("relabel{:?}", s.images()), |g| {
                group.generator(Generator { page: s.apply(g.page), ..g })
            })
        };
        let mut f = make(&sigma);
        f.inverse = Some(Box::new(make(&sigma.inverse())));
        Ok(f)
    }

    pub fn from_script(group: &BookGroup, steps: &[AutomorphismStep]) -> Result<Self> {
        let mut f = Self::identity(group);
        let mut labels = Vec::new();
        for step in steps {
            let g = match step {
                AutomorphismStep::Twist { page, dir } => Self::twist(group, *page, *dir)?,
                AutomorphismStep::Relabel { perm } => Self::relabel(group, perm)?,
            };
            labels.push(g.label.clone());
            f = f.compose(group, &g);
        }
        if !labels.is_empty() {
            f.label = labels.join(" ∘ ");
        }
        Ok(f)
    }

    pub fn parse_script(group: &BookGroup, json: &str) -> Result<Self> {
        let steps: Vec<AutomorphismStep> =
            serde_json::from_str(json).map_err(|e| Error::InvalidArgument(format!("automorphism script: {e}")))?;
        Self::from_script(group, &steps)
    }

    pub fn image(&self, group: &BookGroup, g: Generator) -> NormalForm {
        let [a, b] = &self.images[g.page - 1][g.slot - 1];
        let x = if g.letter == GenLetter::A { a } else { b };
        if g.inverse {
            group.inverse(x)
        } else {
            x.clone()
        }
    }

    fn image_word(&self, g: Generator) -> Word {
        let [a, b] = &self.images[g.page - 1][g.slot - 1];
        let x = if g.letter == GenLetter::A { a } else { b };
        if g.inverse {
            x.to_word().inverse()
        } else {
            x.to_word()
        }
    }

    /// Image of `t = ∂_1`.
    fn core_image(&self, group: &BookGroup) -> Word {
        let mut w = Word::identity();
        for s in &group.boundary(1).0 {
            if let Symbol::Gen(g) = s {
                w = w.concat(&self.image_word(*g));
            }
        }
        w
    }

    pub fn apply_word(&self, group: &BookGroup, w: &Word) -> NormalForm {
        let mut core: Option<Word> = None;
        let mut out = Vec::new();
        for s in &w.0 {
            match *s {
                Symbol::Gen(g) => out.extend(self.image_word(g).0),
                Symbol::Core(inv) => {
                    let c = core.get_or_insert_with(|| self.core_image(group));
                    if inv {
                        out.extend(c.inverse().0);
                    } else {
                        out.extend(c.0.iter().copied());
                    }
                }
            }
        }
        group.reduce(&Word(out))
    }

    pub fn apply(&self, group: &BookGroup, x: &NormalForm) -> NormalForm {
        self.apply_word(group, &x.to_word())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, group: &BookGroup, other: &BookAutomorphism) -> BookAutomorphism {
        let images = other
            .images
            .iter()
            .map(|page| page.iter().map(|[a, b]| [self.apply(group, a), self.apply(group, b)]).collect())
            .collect();
        let inverse = match (&self.inverse, &other.inverse) {
            (Some(fi), Some(gi)) => Some(Box::new(gi.compose_without_inverse(group, fi))),
            _ => None,
        };
        BookAutomorphism { images, inverse, label: format!("{} ∘ {}", self.label, other.label) }
    }

    fn compose_without_inverse(&self, group: &BookGroup, other: &BookAutomorphism) -> BookAutomorphism {
        let images = other
            .images
            .iter()
            .map(|page| page.iter().map(|[a, b]| [self.apply(group, a), self.apply(group, b)]).collect())
            .collect();
        BookAutomorphism { images, inverse: None, label: format!("{} ∘ {}", self.label, other.label) }
    }

    /// Checks `f(f⁻¹(g)) = g = f⁻¹(f(g))` on generators.
    fn is_inverse_pair(&self, group: &BookGroup, inv: &BookAutomorphism) -> bool {
        group.all_generators().into_iter().all(|g| {
            let x = group.generator(g);
            self.apply(group, &inv.apply(group, &x)) == x && inv.apply(group, &self.apply(group, &x)) == x
        })
    }

    /// The inverse automorphism: the tracked one when it verifies, otherwise
    /// `f^{m-1}` for the least `m <= budget` with `f^m = id`.
    pub fn inverse(&self, group: &BookGroup, budget: usize) -> Result<BookAutomorphism> {
        if let Some(inv) = &self.inverse {
            if self.is_inverse_pair(group, inv) {
                let mut out = (**inv).clone();
                out.inverse = Some(Box::new(BookAutomorphism { inverse: None, ..self.clone() }));
                out.label = format!("({})^-1", self.label);
                return Ok(out);
            }
        }
        let id = Self::identity(group);
        let mut power = self.clone();
        let mut prev = id.clone();
        for _ in 1..=budget {
            if power.images == id.images {
                let mut out = prev;
                out.label = format!("({})^-1", self.label);
                return Ok(out);
            }
            prev = power.clone();
            power = self.compose_without_inverse(group, &power);
        }
        Err(Error::InverseNotFound(budget))
    }

    /// `f^k`; negative `k` goes through [`inverse`](Self::inverse).
    pub fn power(&self, group: &BookGroup, k: i64, inverse_budget: usize) -> Result<BookAutomorphism> {
        let base = if k < 0 { self.inverse(group, inverse_budget)? } else { self.clone() };
        let mut out = Self::identity(group);
        for _ in 0..k.unsigned_abs() {
            out = base.compose(group, &out);
        }
        out.label = format!("({})^{k}", self.label);
        Ok(out)
    }

    /// `f^k(w)`, computed by repeated substitution.
    pub fn apply_power(&self, group: &BookGroup, k: i64, w: &Word, inverse_budget: usize) -> Result<NormalForm> {
        let step = if k < 0 { self.inverse(group, inverse_budget)? } else { self.clone() };
        let mut x = group.reduce(w);
        for _ in 0..k.unsigned_abs() {
            x = step.apply(group, &x);
        }
        Ok(x)
    }

    /// Every relator `∂_j ∂_{j+1}⁻¹` must map to the identity.
    pub fn check_relators(&self, group: &BookGroup) -> Result<()> {
        for j in 1..group.page_count() {
            let rel = group.boundary(j).concat(&group.boundary(j + 1).inverse());
            let img = self.apply_word(group, &rel);
            if !img.is_identity() {
                return Err(Error::UnsoundAutomorphism(format!("relator ∂{j}·∂{}⁻¹ maps to {img}", j + 1)));
            }
        }
        Ok(())
    }

    /// True when `f` is the identity on every generator of `pages`.
    pub fn fixes_pages(&self, group: &BookGroup, pages: &[usize]) -> bool {
        pages
            .iter()
            .flat_map(|&j| group.page_generators(j))
            .all(|g| self.image(group, g) == group.generator(g))
    }
}
