//! Bands, prime bands and band-free strings.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{invert_syllables, StringAlgebra, Syllable, Word};

/// A band in canonical rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Band {
    pub rep: Word,
    pub length: usize,
    pub prime: bool,
}

impl Band {
    pub fn syllables(&self) -> &[Syllable] {
        self.rep.syllables()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BandFreeCatalog {
    pub strings: Vec<Word>,
    pub length_bound: usize,
}

pub fn rotation(syls: &[Syllable], k: usize) -> Vec<Syllable> {
    let mut r = syls[k..].to_vec();
    r.extend_from_slice(&syls[..k]);
    r
}

/// Whether `syls` is a proper power of a shorter word.
pub fn is_power(syls: &[Syllable]) -> bool {
    let n = syls.len();
    (1..n).any(|p| n.is_multiple_of(p) && (p..n).all(|i| syls[i] == syls[i - p]))
}

/// The shortest `p` with `syls` a power of its length-`p` prefix.
pub fn primitive_root_len(syls: &[Syllable]) -> usize {
    let n = syls.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| syls[i] == syls[i - p]))
        .unwrap_or(n)
}

impl StringAlgebra {
    /// `w` closes up and `w²` is a string.
    pub fn is_cyclic_string(&self, syls: &[Syllable]) -> bool {
        !syls.is_empty() && self.is_string_syllables(syls) && self.join(syls, syls).is_some()
    }

    pub fn is_band_syllables(&self, syls: &[Syllable]) -> bool {
        syls.len() >= 2
            && syls.iter().any(|s| s.direct)
            && syls.iter().any(|s| !s.direct)
            && !is_power(syls)
            && self.is_cyclic_string(syls)
    }

    /// Accepts every rotation of a band.
    pub fn is_band(&self, w: &Word) -> bool {
        self.is_band_syllables(w.syllables())
    }

    fn canonical_rotation(&self, syls: &[Syllable]) -> Vec<Syllable> {
        (0..syls.len())
            .map(|k| rotation(syls, k))
            .filter(|r| !r[0].direct && r[r.len() - 1].direct)
            .min_by(|x, y| self.printed_cmp(x, y))
            .expect("a mixed cyclic word has a rotation starting inverse and ending direct")
    }

    /// No rotation splits into two or more rotations of bands.
    pub fn is_prime_syllables(&self, syls: &[Syllable]) -> bool {
        let n = syls.len();
        for k in 0..n {
            let r = rotation(syls, k);
            let mut reach = vec![false; n + 1];
            reach[0] = true;
            for i in 0..n {
                if !reach[i] {
                    continue;
                }
                for j in i + 2..=n {
                    if j - i < n && self.is_band_syllables(&r[i..j]) {
                        reach[j] = true;
                    }
                }
            }
            if reach[n] {
                return false;
            }
        }
        true
    }

    pub fn canonical_band(&self, w: &Word) -> Result<Band> {
        if !self.is_band(w) {
            return Err(Error::NotABand);
        }
        let rep = self.canonical_rotation(w.syllables());
        let prime = self.is_prime_syllables(&rep);
        Ok(Band {
            length: rep.len(),
            rep: Word::Path(rep),
            prime,
        })
    }

    pub fn is_prime_band(&self, b: &Band) -> bool {
        self.is_prime_syllables(b.syllables())
    }

    /// The canonical band representing the inverse band.
    pub fn inverse_band(&self, b: &Band) -> Band {
        let rep = self.canonical_rotation(&invert_syllables(b.syllables()));
        Band {
            length: rep.len(),
            rep: Word::Path(rep),
            prime: b.prime,
        }
    }

    /// Whether `syls` is some rotation of `b`.
    pub fn is_rotation_of(&self, syls: &[Syllable], b: &[Syllable]) -> bool {
        syls.len() == b.len() && (0..b.len()).any(|k| rotation(b, k) == syls)
    }

    pub fn prime_band_bound(&self) -> usize {
        2 * self.n_ab() * (self.max_direct_len() + 1)
    }

    pub fn band_free_bound(&self) -> usize {
        let (n, m) = (self.n_ab(), self.max_direct_len());
        (n + 1) * m + 2 * n
    }

    /// Prime bands of length at most `bound`, searched over canonical
    /// shapes in which every `a B` subword occurs at most once.
    pub fn enumerate_prime_bands_upto(&self, bound: usize) -> Vec<Band> {
        let mut found: Vec<Vec<Syllable>> = Vec::new();
        for a in 0..self.arrow_count() {
            let start = Syllable::inverse(a);
            if !self.can_prepend(&[], start) {
                continue;
            }
            let mut w = vec![start];
            let mut used: HashSet<(usize, usize)> = HashSet::new();
            self.prime_search(&mut w, &mut used, bound, &mut found);
        }
        let mut bands: Vec<Band> = found
            .into_iter()
            .map(|rep| Band {
                length: rep.len(),
                rep: Word::Path(rep),
                prime: true,
            })
            .collect();
        bands.sort_by(|x, y| self.band_cmp(x, y));
        bands.dedup();
        bands
    }

    pub(crate) fn band_cmp(&self, x: &Band, y: &Band) -> Ordering {
        x.length
            .cmp(&y.length)
            .then_with(|| self.printed_cmp(x.syllables(), y.syllables()))
    }

    fn prime_search(
        &self,
        w: &mut Vec<Syllable>,
        used: &mut HashSet<(usize, usize)>,
        bound: usize,
        found: &mut Vec<Vec<Syllable>>,
    ) {
        let top = *w.last().unwrap();
        if top.direct
            && w.len() >= 2
            && self.is_band_syllables(w)
            && self.canonical_rotation(w) == *w
            && self.is_prime_syllables(w)
        {
            found.push(w.clone());
        }
        if w.len() >= bound {
            return;
        }
        for x in self.all_syllables() {
            if !self.can_prepend(w, x) {
                continue;
            }
            let pair = (top.arrow, x.arrow);
            let ab = !top.direct && x.direct;
            if ab && !used.insert(pair) {
                continue;
            }
            w.push(x);
            self.prime_search(w, used, bound, found);
            w.pop();
            if ab {
                used.remove(&pair);
            }
        }
    }

    /// All prime bands, sorted by length then printed order.
    pub fn prime_bands(&self) -> &[Band] {
        self.prime_cache
            .get_or_init(|| self.enumerate_prime_bands_upto(self.prime_band_bound()))
    }

    pub fn enumerate_prime_bands(&self) -> Vec<Band> {
        self.prime_bands().to_vec()
    }

    /// Whether any subword of `syls` ending at its top syllable is a band rotation.
    fn top_has_band(&self, syls: &[Syllable]) -> bool {
        let n = syls.len();
        (0..n.saturating_sub(1)).any(|i| self.is_band_syllables(&syls[i..]))
    }

    pub fn is_band_free(&self, w: &Word) -> bool {
        let s = w.syllables();
        (1..=s.len()).all(|k| !self.top_has_band(&s[..k]))
    }

    pub fn enumerate_band_free_upto(&self, bound: usize) -> BandFreeCatalog {
        let mut paths: Vec<Vec<Syllable>> = Vec::new();
        if bound > 0 {
            for x in self.all_syllables() {
                let mut w = vec![x];
                paths.push(w.clone());
                self.extend_left(&mut w, bound, &mut |s| {
                    if self.top_has_band(s) {
                        false
                    } else {
                        paths.push(s.to_vec());
                        true
                    }
                });
            }
        }
        paths.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| self.printed_cmp(x, y)));
        let mut strings = self.lazy_paths();
        strings.extend(paths.into_iter().map(Word::Path));
        BandFreeCatalog {
            strings,
            length_bound: bound,
        }
    }

    pub fn band_free(&self) -> &BandFreeCatalog {
        self.band_free_cache
            .get_or_init(|| self.enumerate_band_free_upto(self.band_free_bound()))
    }

    pub fn enumerate_band_free_strings(&self) -> BandFreeCatalog {
        self.band_free().clone()
    }

    /// The leftmost (in printed order), then shortest, subword that is a
    /// rotation of a band, with its printed offset.
    pub fn contains_band_rotation(&self, w: &Word) -> Option<(Band, usize)> {
        let s = w.syllables();
        let n = s.len();
        for end in (0..=n).rev() {
            for start in (0..end.saturating_sub(1)).rev() {
                let sub = &s[start..end];
                if self.is_band_syllables(sub) {
                    let band = self.canonical_band(&Word::Path(sub.to_vec())).ok()?;
                    return Some((band, n - end));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn reps(a: &StringAlgebra, bands: &[Band]) -> Vec<String> {
        bands.iter().map(|b| a.render(&b.rep)).collect()
    }

    #[test]
    fn band_detection() {
        let l = fixtures::lambda2();
        assert!(l.is_band(&l.parse_word("a b'").unwrap()));
        let g = fixtures::gp23();
        assert!(g.is_band(&g.parse_word("a b' a b' b'").unwrap()));
        assert!(!g.is_band(&g.parse_word("a b' a b'").unwrap()));
        let a = g.arrow("a").unwrap();
        assert!(!g.is_band(&Word::Path(vec![Syllable::inverse(a), Syllable::direct(a)])));
    }

    #[test]
    fn canonical_reps() {
        let g = fixtures::gp23();
        for lit in ["a b' b'", "b' a b'", "b' b' a"] {
            let b = g.canonical_band(&g.parse_word(lit).unwrap()).unwrap();
            assert_eq!(g.render(&b.rep), "a b' b'");
            assert!(b.prime);
        }
        let l = fixtures::lambda2();
        let b = l.canonical_band(&l.parse_word("b' a").unwrap()).unwrap();
        assert_eq!(l.render(&b.rep), "a b'");
        let c = g
            .canonical_band(&g.parse_word("a b' a b' b'").unwrap())
            .unwrap();
        assert!(!c.prime);
        assert_eq!(
            g.canonical_band(&g.parse_word("b'").unwrap()),
            Err(Error::NotABand)
        );
    }

    #[test]
    fn prime_bands_of_examples() {
        let l = fixtures::lambda2();
        assert_eq!(reps(&l, l.prime_bands()), ["a b'", "b a'", "d e'", "e d'"]);
        let g = fixtures::gp23();
        assert_eq!(
            reps(&g, g.prime_bands()),
            ["a b'", "b a'", "a b' b'", "b b a'"]
        );
    }

    #[test]
    fn band_free_examples() {
        let g = fixtures::gp23();
        assert!(g.is_band_free(&g.parse_word("b' b'").unwrap()));
        assert!(!g.is_band_free(&g.parse_word("a b'").unwrap()));
        let l = fixtures::lambda2();
        assert!(l.is_band_free(&l.parse_word("e c a").unwrap()));
        // the tail a b' is itself a band
        assert!(!l.is_band_free(&l.parse_word("c a b'").unwrap()));
        assert!(l.is_band_free(&Word::lazy(0, crate::Sign::Plus)));
        let cat = g.band_free();
        assert_eq!(cat.length_bound, 10);
        assert!(cat.strings.iter().all(|w| g.is_band_free(w)));
    }

    #[test]
    fn band_rotation_search() {
        let g = fixtures::gp23();
        let (b, pos) = g
            .contains_band_rotation(&g.parse_word("b' a b'").unwrap())
            .unwrap();
        assert_eq!(g.render(&b.rep), "a b'");
        assert_eq!(pos, 0);
        let l = fixtures::lambda2();
        assert!(l
            .contains_band_rotation(&l.parse_word("e c a").unwrap())
            .is_none());
        assert!(l
            .contains_band_rotation(&Word::lazy(0, crate::Sign::Plus))
            .is_none());
    }
}
