//! Free-group words over one page.
//!
//! A page of genus `g` has free generators `a_1, b_1, ..., a_g, b_g`, encoded
//! as nonzero integers: `a_k = 2k - 1`, `b_k = 2k`, inverses negated.

use std::cmp::Ordering;

pub type Letter = i32;

pub fn free_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|&x| -x).collect()
}

pub fn concat(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    let mut out = a.to_vec();
    for &x in b {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Product of commutators `[a_1, b_1] ... [a_g, b_g]`.
pub fn boundary_word(genus: usize) -> Vec<Letter> {
    let mut w = Vec::with_capacity(4 * genus);
    for k in 1..=genus as Letter {
        let (a, b) = (2 * k - 1, 2 * k);
        w.extend_from_slice(&[a, b, -a, -b]);
    }
    w
}

pub fn boundary_power(genus: usize, m: i64) -> Vec<Letter> {
    let base = boundary_word(genus);
    let unit = if m >= 0 { base } else { invert(&base) };
    let mut out = Vec::with_capacity(unit.len() * m.unsigned_abs() as usize);
    for _ in 0..m.unsigned_abs() {
        out.extend_from_slice(&unit);
    }
    out
}

/// Returns `Some(m)` when the reduced word equals `∂^m`.
pub fn as_boundary_power(genus: usize, word: &[Letter]) -> Option<i64> {
    if word.is_empty() {
        return Some(0);
    }
    let period = 4 * genus;
    if !word.len().is_multiple_of(period) {
        return None;
    }
    let m = (word.len() / period) as i64;
    let base = boundary_word(genus);
    if word[..period] == base[..] {
        (word == boundary_power(genus, m).as_slice()).then_some(m)
    } else if word[..period] == invert(&base)[..] {
        (word == boundary_power(genus, -m).as_slice()).then_some(-m)
    } else {
        None
    }
}

fn letter_key(x: Letter) -> (Letter, bool) {
    (x.abs(), x < 0)
}

/// Shortlex order with letters ordered `a1 < A1 < b1 < B1 < a2 < ...`.
pub fn shortlex_cmp(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            let c = letter_key(*x).cmp(&letter_key(*y));
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

/// Shortlex-least element of the right coset `⟨∂⟩·word`.
///
/// Returns `(m, rep)` with `word = ∂^m · rep`. The length of `∂^{-m}·word` is
/// at least `4g|m| - |word|`, so only `|m| <= |word| / (2g) + 1` can compete
/// with `m = 0`.
pub fn coset_representative(genus: usize, word: &[Letter]) -> (i64, Vec<Letter>) {
    let bound = (word.len() / (2 * genus)) as i64 + 1;
    let mut best_m = 0;
    let mut best = word.to_vec();
    for m in -bound..=bound {
        if m == 0 {
            continue;
        }
        let candidate = concat(&boundary_power(genus, -m), word);
        if shortlex_cmp(&candidate, &best) == Ordering::Less {
            best = candidate;
            best_m = m;
        }
    }
    (best_m, best)
}

/// Splits a reduced word as `prefix · core · prefix⁻¹` with `core` cyclically reduced.
pub fn cyclic_core(word: &[Letter]) -> (Vec<Letter>, Vec<Letter>) {
    let mut lo = 0;
    let mut hi = word.len();
    while hi - lo >= 2 && word[lo] == -word[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    (word[..lo].to_vec(), word[lo..hi].to_vec())
}

/// Some `y` with `y · u · y⁻¹ = v` in the free group, if one exists.
pub fn free_conjugator(u: &[Letter], v: &[Letter]) -> Option<Vec<Letter>> {
    let (p1, c1) = cyclic_core(&free_reduce(u));
    let (p2, c2) = cyclic_core(&free_reduce(v));
    if c1.len() != c2.len() {
        return None;
    }
    if c1.is_empty() {
        return Some(Vec::new());
    }
    let n = c1.len();
    for i in 0..n {
        if (0..n).all(|j| c1[(i + j) % n] == c2[j]) {
            // c2 = x⁻¹ c1 x with x the first i letters of c1
            let x = &c1[..i];
            let y = concat(&concat(&p2, &invert(x)), &invert(&p1));
            return Some(y);
        }
    }
    None
}

/// Shortest `r` with `core = r^k`, for a cyclically reduced word.
pub fn primitive_root(core: &[Letter]) -> (Vec<Letter>, usize) {
    let n = core.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (0..n).all(|i| core[i] == core[i % d]) {
            return (core[..d].to_vec(), n / d);
        }
    }
    (core.to_vec(), 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_inverts() {
        assert!(free_reduce(&[1, 2, -2, -1]).is_empty());
        assert_eq!(free_reduce(&[1, 2, -2, 3]), vec![1, 3]);
        assert_eq!(invert(&[1, -2]), vec![2, -1]);
    }

    #[test]
    fn boundary_powers_are_recognised() {
        assert_eq!(as_boundary_power(1, &boundary_power(1, 3)), Some(3));
        assert_eq!(as_boundary_power(2, &boundary_power(2, -2)), Some(-2));
        assert_eq!(as_boundary_power(1, &[1, 2, -1]), None);
        assert_eq!(as_boundary_power(1, &[2, 1, -2, -1]), Some(-1));
        assert_eq!(as_boundary_power(1, &[2, -1, -2, 1]), None);
    }

    #[test]
    fn coset_representative_absorbs_boundary_prefix() {
        let w = concat(&boundary_power(1, 2), &[1]);
        assert_eq!(coset_representative(1, &w), (2, vec![1]));
        let (m, rep) = coset_representative(1, &concat(&[1], &boundary_power(1, -1)));
        assert_eq!(m, 0);
        assert_eq!(rep.len(), 5);
    }

    #[test]
    fn conjugator_for_rotation() {
        // a b vs b a: a⁻¹ (a b) a = b a
        let y = free_conjugator(&[1, 2], &[2, 1]).unwrap();
        assert_eq!(y, vec![-1]);
        assert!(free_conjugator(&[1], &[2]).is_none());
        assert_eq!(primitive_root(&[1, 2, 1, 2]), (vec![1, 2], 2));
    }
}
