//! Strings over a string algebra: syllables, lazy paths, validity,
//! concatenation, inverses and substring extraction.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bands::{Band, BandFreeCatalog};
use crate::bridges::BridgeData;
use crate::error::{Error, Result};
use crate::presentation::{
    derive_signs, parse_presentation, validate_string_algebra, QuiverPresentation, Sign,
    SignAssignment,
};

/// An arrow or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub arrow: usize,
    pub direct: bool,
}

impl Syllable {
    pub fn direct(arrow: usize) -> Self {
        Syllable {
            arrow,
            direct: true,
        }
    }

    pub fn inverse(arrow: usize) -> Self {
        Syllable {
            arrow,
            direct: false,
        }
    }

    pub fn inv(self) -> Self {
        Syllable {
            arrow: self.arrow,
            direct: !self.direct,
        }
    }
}

/// A string `α_n … α_1`, or a lazy path `1_(v,i)`.
///
/// Syllables are stored with `α_1` first, so index `k` holds `α_{k+1}`
/// and walking the vector follows the string from source to target.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Word {
    Lazy { vertex: usize, sign: Sign },
    Path(Vec<Syllable>),
}

impl Word {
    pub fn lazy(vertex: usize, sign: Sign) -> Self {
        Word::Lazy { vertex, sign }
    }

    pub fn len(&self) -> usize {
        match self {
            Word::Lazy { .. } => 0,
            Word::Path(s) => s.len(),
        }
    }

    pub fn is_lazy(&self) -> bool {
        matches!(self, Word::Lazy { .. })
    }

    pub fn is_empty(&self) -> bool {
        self.is_lazy()
    }

    pub fn syllables(&self) -> &[Syllable] {
        match self {
            Word::Lazy { .. } => &[],
            Word::Path(s) => s,
        }
    }

    pub fn is_direct(&self) -> bool {
        self.syllables().iter().all(|s| s.direct)
    }

    pub fn is_inverse(&self) -> bool {
        self.syllables().iter().all(|s| !s.direct)
    }

    /// `α_1`
    pub fn first(&self) -> Option<Syllable> {
        self.syllables().first().copied()
    }

    /// `α_n`
    pub fn last(&self) -> Option<Syllable> {
        self.syllables().last().copied()
    }
}

/// Endpoints and extended signs of a string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignData {
    pub source: usize,
    pub target: usize,
    pub sigma: Sign,
    pub epsilon: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubstringKind {
    Image,
    Factor,
}

/// The subword occupying storage positions `start..end`; empty ranges
/// denote lazy substrings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubstringWitness {
    pub start: usize,
    pub end: usize,
    pub kind: SubstringKind,
}

/// JSON-friendly rendering of a word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordView {
    pub kind: &'static str,
    pub literal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub syllables: Option<Vec<SyllableView>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyllableView {
    pub arrow: String,
    pub direct: bool,
}

/// A validated string algebra with sign functions and lazily computed
/// combinatorial data.
#[derive(Debug, Clone)]
pub struct StringAlgebra {
    presentation: QuiverPresentation,
    signs: SignAssignment,
    relations: HashSet<Vec<usize>>,
    max_relation: usize,
    id_rank: Vec<usize>,
    pub(crate) prime_cache: OnceLock<Vec<Band>>,
    pub(crate) band_free_cache: OnceLock<BandFreeCatalog>,
    pub(crate) bridge_cache: OnceLock<BridgeData>,
}

impl StringAlgebra {
    pub fn new(presentation: QuiverPresentation) -> Result<Self> {
        let report = validate_string_algebra(&presentation);
        if !report.is_string_algebra {
            let msg = report
                .violations
                .iter()
                .map(|v| format!("{}: {}", v.axiom, v.locus))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(Error::NotAStringAlgebra(msg));
        }
        let signs = derive_signs(&presentation)?;
        let applied = presentation.relations_applied();
        let max_relation = applied.iter().map(Vec::len).max().unwrap_or(0);
        let mut order: Vec<usize> = (0..presentation.arrows.len()).collect();
        order.sort_by(|&x, &y| presentation.arrows[x].id.cmp(&presentation.arrows[y].id));
        let mut id_rank = vec![0; order.len()];
        for (r, &a) in order.iter().enumerate() {
            id_rank[a] = r;
        }
        Ok(StringAlgebra {
            presentation,
            signs,
            relations: applied.into_iter().collect(),
            max_relation,
            id_rank,
            prime_cache: OnceLock::new(),
            band_free_cache: OnceLock::new(),
            bridge_cache: OnceLock::new(),
        })
    }

    pub fn from_sqa(text: &str) -> Result<Self> {
        Self::new(parse_presentation(text)?)
    }

    pub fn presentation(&self) -> &QuiverPresentation {
        &self.presentation
    }

    pub fn signs(&self) -> &SignAssignment {
        &self.signs
    }

    pub fn name(&self) -> &str {
        &self.presentation.name
    }

    pub fn vertex_count(&self) -> usize {
        self.presentation.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.presentation.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.presentation.vertices[v]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.presentation.arrows[a].id
    }

    pub fn max_relation_len(&self) -> usize {
        self.max_relation
    }

    pub fn arrow(&self, id: &str) -> Option<usize> {
        self.presentation.arrow_index(id)
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.presentation.vertex_index(id)
    }

    // ---- syllable data ----

    pub fn syl_source(&self, s: Syllable) -> usize {
        let a = &self.presentation.arrows[s.arrow];
        if s.direct {
            a.source
        } else {
            a.target
        }
    }

    pub fn syl_target(&self, s: Syllable) -> usize {
        let a = &self.presentation.arrows[s.arrow];
        if s.direct {
            a.target
        } else {
            a.source
        }
    }

    pub fn syl_sigma(&self, s: Syllable) -> Sign {
        if s.direct {
            self.signs.sigma[s.arrow]
        } else {
            self.signs.epsilon[s.arrow]
        }
    }

    pub fn syl_epsilon(&self, s: Syllable) -> Sign {
        if s.direct {
            self.signs.epsilon[s.arrow]
        } else {
            self.signs.sigma[s.arrow]
        }
    }

    /// Fixed total order on syllables: direct before inverse, then by arrow id.
    pub fn syllable_cmp(&self, x: Syllable, y: Syllable) -> Ordering {
        (!x.direct, self.id_rank[x.arrow]).cmp(&(!y.direct, self.id_rank[y.arrow]))
    }

    /// Compares syllable sequences in printed order (`α_n` first).
    pub fn printed_cmp(&self, x: &[Syllable], y: &[Syllable]) -> Ordering {
        for (a, b) in x.iter().rev().zip(y.iter().rev()) {
            match self.syllable_cmp(*a, *b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        x.len().cmp(&y.len())
    }

    // ---- validity ----

    fn run_ok(&self, run: &[usize]) -> bool {
        let n = run.len();
        (1..=self.max_relation.min(n)).all(|k| !self.relations.contains(&run[n - k..]))
    }

    /// Whether `x` may be placed directly after (to the left of) `syls`,
    /// assuming `syls` is already a string.
    pub fn can_prepend(&self, syls: &[Syllable], x: Syllable) -> bool {
        let top = match syls.last() {
            None => return self.run_ok(&[x.arrow]),
            Some(&t) => t,
        };
        if self.syl_source(x) != self.syl_target(top) || x == top.inv() {
            return false;
        }
        // relation suffixes ending at x within the run of equal direction
        let mut run = vec![x.arrow];
        for s in syls.iter().rev() {
            if s.direct != x.direct || run.len() >= self.max_relation {
                break;
            }
            run.push(s.arrow);
        }
        if x.direct {
            // storage order is application order; x is applied last
            run.reverse();
            self.run_ok(&run)
        } else {
            // for inverse runs the reversed arrows are in application order
            // and x comes first, so check prefixes
            (1..=run.len()).all(|k| !self.relations.contains(&run[..k]))
        }
    }

    pub fn is_string_syllables(&self, syls: &[Syllable]) -> bool {
        if syls.iter().any(|s| s.arrow >= self.arrow_count()) {
            return false;
        }
        (0..syls.len()).all(|i| self.can_prepend(&syls[..i], syls[i]))
    }

    /// The word invariants: composable, no cancelling pair, no relation.
    pub fn is_string(&self, w: &Word) -> bool {
        match w {
            Word::Lazy { vertex, .. } => *vertex < self.vertex_count(),
            Word::Path(s) => !s.is_empty() && self.is_string_syllables(s),
        }
    }

    pub fn path(&self, syls: Vec<Syllable>) -> Result<Word> {
        if syls.is_empty() {
            return Err(Error::NotAString);
        }
        if self.is_string_syllables(&syls) {
            Ok(Word::Path(syls))
        } else {
            Err(Error::NotAString)
        }
    }

    // ---- endpoints and signs ----

    pub fn source(&self, w: &Word) -> usize {
        match w {
            Word::Lazy { vertex, .. } => *vertex,
            Word::Path(s) => self.syl_source(s[0]),
        }
    }

    pub fn target(&self, w: &Word) -> usize {
        match w {
            Word::Lazy { vertex, .. } => *vertex,
            Word::Path(s) => self.syl_target(*s.last().unwrap()),
        }
    }

    pub fn sigma(&self, w: &Word) -> Sign {
        match w {
            Word::Lazy { sign, .. } => -*sign,
            Word::Path(s) => self.syl_sigma(s[0]),
        }
    }

    pub fn epsilon(&self, w: &Word) -> Sign {
        match w {
            Word::Lazy { sign, .. } => *sign,
            Word::Path(s) => self.syl_epsilon(*s.last().unwrap()),
        }
    }

    pub fn sign_data(&self, w: &Word) -> SignData {
        SignData {
            source: self.source(w),
            target: self.target(w),
            sigma: self.sigma(w),
            epsilon: self.epsilon(w),
        }
    }

    /// `1_(v,i) · u` is defined.
    pub fn lazy_left_ok(&self, vertex: usize, sign: Sign, u: &Word) -> bool {
        self.target(u) == vertex && self.epsilon(u) == sign
    }

    /// `u · 1_(v,i)` is defined.
    pub fn lazy_right_ok(&self, u: &Word, vertex: usize, sign: Sign) -> bool {
        self.source(u) == vertex && self.sigma(u) == -sign
    }

    /// The lazy path `x` with `u · x` defined.
    pub fn right_base(&self, u: &Word) -> Word {
        Word::lazy(self.source(u), -self.sigma(u))
    }

    /// The lazy path `x` with `x · u` defined.
    pub fn left_base(&self, u: &Word) -> Word {
        Word::lazy(self.target(u), self.epsilon(u))
    }

    /// The composite `v u` (`u` on the right).
    pub fn concat(&self, v: &Word, u: &Word) -> Result<Word> {
        match (v, u) {
            (Word::Lazy { vertex: a, sign: i }, Word::Lazy { vertex: b, sign: j }) => {
                if a == b && i == j {
                    Ok(v.clone())
                } else {
                    Err(Error::WordsNotComposable)
                }
            }
            (Word::Lazy { vertex, sign }, Word::Path(_)) => {
                if self.lazy_left_ok(*vertex, *sign, u) {
                    Ok(u.clone())
                } else {
                    Err(Error::WordsNotComposable)
                }
            }
            (Word::Path(_), Word::Lazy { vertex, sign }) => {
                if self.lazy_right_ok(v, *vertex, *sign) {
                    Ok(v.clone())
                } else {
                    Err(Error::WordsNotComposable)
                }
            }
            (Word::Path(vs), Word::Path(us)) => {
                let top = *us.last().unwrap();
                if self.syl_source(vs[0]) != self.syl_target(top) {
                    return Err(Error::WordsNotComposable);
                }
                let mut out = us.clone();
                // only the seam window can introduce violations
                let keep = self.max_relation.max(1);
                let lo = out.len().saturating_sub(keep);
                for (k, &s) in vs.iter().enumerate() {
                    let ok = if k < keep {
                        self.can_prepend(&out[lo..], s)
                    } else {
                        true
                    };
                    if !ok {
                        return Err(Error::NotAString);
                    }
                    out.push(s);
                }
                Ok(Word::Path(out))
            }
        }
    }

    /// Concatenates raw syllable sequences (`v` on the left), returning
    /// `None` unless the result is a string.
    pub fn join(&self, v: &[Syllable], u: &[Syllable]) -> Option<Vec<Syllable>> {
        let mut out = u.to_vec();
        for &s in v {
            if !self.can_prepend(&out, s) {
                return None;
            }
            out.push(s);
        }
        Some(out)
    }

    pub fn invert(&self, w: &Word) -> Word {
        invert(w)
    }

    // ---- substrings ----

    pub fn substring(&self, w: &Word, start: usize, end: usize) -> Word {
        let syls = w.syllables();
        if start < end {
            return Word::Path(syls[start..end].to_vec());
        }
        match w {
            Word::Lazy { .. } => w.clone(),
            Word::Path(s) => {
                if start == 0 {
                    Word::lazy(self.syl_source(s[0]), -self.syl_sigma(s[0]))
                } else {
                    let below = s[start - 1];
                    Word::lazy(self.syl_target(below), self.syl_epsilon(below))
                }
            }
        }
    }

    fn substrings_of(
        &self,
        w: &Word,
        kind: SubstringKind,
        include_lazy: bool,
    ) -> Vec<SubstringWitness> {
        let syls = w.syllables();
        let n = syls.len();
        // left neighbour α_{end+1} is syls[end]; right neighbour α_{start} is syls[start-1]
        let want_left_direct = kind == SubstringKind::Factor;
        let left_ok = |end: usize| end == n || syls[end].direct == want_left_direct;
        let right_ok = |start: usize| start == 0 || syls[start - 1].direct != want_left_direct;
        let mut out = Vec::new();
        for start in 0..=n {
            for end in start..=n {
                if start == end && !include_lazy {
                    continue;
                }
                if left_ok(end) && right_ok(start) {
                    out.push(SubstringWitness { start, end, kind });
                }
            }
        }
        out
    }

    pub fn image_substrings(&self, w: &Word, include_lazy: bool) -> Vec<SubstringWitness> {
        self.substrings_of(w, SubstringKind::Image, include_lazy)
    }

    pub fn factor_substrings(&self, w: &Word, include_lazy: bool) -> Vec<SubstringWitness> {
        self.substrings_of(w, SubstringKind::Factor, include_lazy)
    }

    // ---- enumeration ----

    pub fn lazy_paths(&self) -> Vec<Word> {
        (0..self.vertex_count())
            .flat_map(|v| [Word::lazy(v, Sign::Plus), Word::lazy(v, Sign::Minus)])
            .collect()
    }

    /// All syllables `x` with `x` alone a string.
    pub fn all_syllables(&self) -> Vec<Syllable> {
        (0..self.arrow_count())
            .flat_map(|a| [Syllable::direct(a), Syllable::inverse(a)])
            .filter(|&s| self.can_prepend(&[], s))
            .collect()
    }

    /// Depth-first left extension of `start` through `visit`, which returns
    /// whether to descend further.
    pub fn extend_left<F>(&self, start: &mut Vec<Syllable>, max_len: usize, visit: &mut F)
    where
        F: FnMut(&[Syllable]) -> bool,
    {
        if start.len() >= max_len {
            return;
        }
        for x in self.all_syllables() {
            if self.can_prepend(start, x) {
                start.push(x);
                if visit(start) {
                    self.extend_left(start, max_len, visit);
                }
                start.pop();
            }
        }
    }

    /// All strings of length at most `max_len`, lazy paths first, then by
    /// length. With `collapse_inverses` one word of each pair `{u, u⁻¹}`
    /// is kept: the one with `σ = +1`, ties broken by printed order.
    pub fn enumerate_strings(&self, max_len: usize, collapse_inverses: bool) -> Vec<Word> {
        let mut out: Vec<Word> = self.lazy_paths();
        let mut paths = Vec::new();
        for x in self.all_syllables() {
            if max_len == 0 {
                break;
            }
            let mut w = vec![x];
            paths.push(w.clone());
            self.extend_left(&mut w, max_len, &mut |s| {
                paths.push(s.to_vec());
                true
            });
        }
        paths.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| self.printed_cmp(x, y)));
        out.extend(paths.into_iter().map(Word::Path));
        if collapse_inverses {
            out.retain(|w| self.is_collapse_rep(w));
        }
        out
    }

    pub(crate) fn is_collapse_rep(&self, w: &Word) -> bool {
        match w {
            Word::Lazy { sign, .. } => *sign == Sign::Plus,
            Word::Path(s) => {
                let inv = invert(w);
                let key = |u: &Word| (self.sigma(u) != Sign::Plus, u.syllables().to_vec());
                let (k1, k2) = (key(w), key(&inv));
                match k1.0.cmp(&k2.0) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => self.printed_cmp(s, inv.syllables()) != Ordering::Greater,
                }
            }
        }
    }

    /// Number of two-syllable strings of shape `a B`.
    pub fn n_ab(&self) -> usize {
        let mut n = 0;
        for b in 0..self.arrow_count() {
            let low = [Syllable::inverse(b)];
            for a in 0..self.arrow_count() {
                if self.can_prepend(&[], low[0]) && self.can_prepend(&low, Syllable::direct(a)) {
                    n += 1;
                }
            }
        }
        n
    }

    /// Length of the longest relation-avoiding directed path.
    pub fn max_direct_len(&self) -> usize {
        let mut best = 0;
        for a in 0..self.arrow_count() {
            let mut w = vec![Syllable::direct(a)];
            if !self.can_prepend(&[], w[0]) {
                continue;
            }
            best = best.max(self.longest_direct(&mut w));
        }
        best
    }

    fn longest_direct(&self, w: &mut Vec<Syllable>) -> usize {
        let mut best = w.len();
        for a in 0..self.arrow_count() {
            let x = Syllable::direct(a);
            if self.can_prepend(w, x) {
                w.push(x);
                best = best.max(self.longest_direct(w));
                w.pop();
            }
        }
        best
    }

    /// The maximal direct (`direct = true`) or inverse string `y` with
    /// `y · syls` a string, returned as the syllables appended on top.
    pub fn maximal_run(&self, syls: &[Syllable], direct: bool) -> Vec<Syllable> {
        let mut w = syls.to_vec();
        let base = w.len();
        // unique continuation: at most one candidate survives at each step
        loop {
            let next = (0..self.arrow_count())
                .map(|a| Syllable { arrow: a, direct })
                .find(|&x| self.can_prepend(&w, x));
            match next {
                Some(x) => w.push(x),
                None => break,
            }
            if w.len() > base + self.arrow_count() * self.max_relation.max(1) + 1 {
                break;
            }
        }
        w.split_off(base)
    }

    // ---- literals ----

    pub fn parse_word(&self, literal: &str) -> Result<Word> {
        let bad = |reason: &str| Error::BadWord {
            literal: literal.to_string(),
            reason: reason.to_string(),
        };
        let tokens: Vec<&str> = literal.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(bad("empty literal"));
        }
        if tokens.len() == 1 && tokens[0].starts_with("1(") {
            let inner = tokens[0]
                .strip_prefix("1(")
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| bad("expected 1(v,+) or 1(v,-)"))?;
            let (v, s) = inner
                .split_once(',')
                .ok_or_else(|| bad("expected 1(v,+) or 1(v,-)"))?;
            let vertex = self
                .vertex(v.trim())
                .ok_or_else(|| bad(&format!("unknown vertex `{}`", v.trim())))?;
            let sign = match s.trim() {
                "+" | "1" | "+1" => Sign::Plus,
                "-" | "-1" => Sign::Minus,
                other => return Err(bad(&format!("bad sign `{other}`"))),
            };
            return Ok(Word::lazy(vertex, sign));
        }
        let mut syls = Vec::with_capacity(tokens.len());
        for tok in tokens.iter().rev() {
            let (id, direct) = match tok.strip_suffix('\'') {
                Some(id) => (id, false),
                None => (*tok, true),
            };
            let arrow = self
                .arrow(id)
                .ok_or_else(|| bad(&format!("unknown arrow `{id}`")))?;
            syls.push(Syllable { arrow, direct });
        }
        if !self.is_string_syllables(&syls) {
            return Err(bad("not a string"));
        }
        Ok(Word::Path(syls))
    }

    pub fn render_syllables(&self, syls: &[Syllable]) -> String {
        syls.iter()
            .rev()
            .map(|s| {
                let id = self.arrow_name(s.arrow);
                if s.direct {
                    id.to_string()
                } else {
                    format!("{id}'")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render(&self, w: &Word) -> String {
        match w {
            Word::Lazy { vertex, sign } => {
                format!("1({},{})", self.vertex_name(*vertex), sign.symbol())
            }
            Word::Path(s) => self.render_syllables(s),
        }
    }

    pub fn display<'a>(&'a self, w: &'a Word) -> DisplayWord<'a> {
        DisplayWord {
            algebra: self,
            word: w,
        }
    }

    pub fn view(&self, w: &Word) -> WordView {
        match w {
            Word::Lazy { vertex, sign } => WordView {
                kind: "lazy",
                literal: self.render(w),
                vertex: Some(self.vertex_name(*vertex).to_string()),
                sign: Some(sign.value()),
                syllables: None,
            },
            Word::Path(s) => WordView {
                kind: "string",
                literal: self.render(w),
                vertex: None,
                sign: None,
                syllables: Some(
                    s.iter()
                        .rev()
                        .map(|x| SyllableView {
                            arrow: self.arrow_name(x.arrow).to_string(),
                            direct: x.direct,
                        })
                        .collect(),
                ),
            },
        }
    }
}

pub struct DisplayWord<'a> {
    algebra: &'a StringAlgebra,
    word: &'a Word,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.algebra.render(self.word))
    }
}

pub fn invert_syllables(s: &[Syllable]) -> Vec<Syllable> {
    s.iter().rev().map(|x| x.inv()).collect()
}

pub fn invert(w: &Word) -> Word {
    match w {
        Word::Lazy { vertex, sign } => Word::lazy(*vertex, -*sign),
        Word::Path(s) => Word::Path(invert_syllables(s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn lambda2() -> StringAlgebra {
        fixtures::lambda2()
    }

    #[test]
    fn validity_examples() {
        let l = lambda2();
        assert!(l.parse_word("d' e c a b'").is_ok());
        assert!(l.parse_word("c b").is_err());
        let a = l.arrow("a").unwrap();
        assert!(!l.is_string_syllables(&[Syllable::inverse(a), Syllable::direct(a)]));
    }

    #[test]
    fn concatenation() {
        let l = lambda2();
        let v = l.parse_word("e c").unwrap();
        let u = l.parse_word("a b'").unwrap();
        assert_eq!(l.render(&l.concat(&v, &u).unwrap()), "e c a b'");
        let c = l.parse_word("c").unwrap();
        let b = l.parse_word("b").unwrap();
        assert_eq!(l.concat(&c, &b), Err(Error::NotAString));
        assert_eq!(l.concat(&b, &c), Err(Error::WordsNotComposable));
    }

    #[test]
    fn lazy_absorption_in_gp23() {
        let g = fixtures::gp23();
        let a = g.parse_word("a").unwrap();
        let one = g.parse_word("1(v,-)").unwrap();
        assert_eq!(g.concat(&a, &one).unwrap(), a);
        let plus = g.parse_word("1(v,+)").unwrap();
        assert_eq!(g.concat(&a, &plus), Err(Error::WordsNotComposable));
        assert_eq!(g.concat(&one, &one).unwrap(), one);
        assert!(g.concat(&one, &plus).is_err());
    }

    #[test]
    fn inversion() {
        let l = lambda2();
        let u = l.parse_word("a b'").unwrap();
        assert_eq!(l.render(&invert(&u)), "b a'");
        let w = l.parse_word("d' e c a b'").unwrap();
        assert_eq!(invert(&invert(&w)), w);
        assert_eq!(
            invert(&Word::lazy(0, Sign::Plus)),
            Word::lazy(0, Sign::Minus)
        );
    }

    #[test]
    fn sign_data_examples() {
        let g = fixtures::gp23();
        let bb = g.parse_word("b'").unwrap();
        assert_eq!(g.sigma(&bb), Sign::Plus);
        assert_eq!(g.epsilon(&bb), Sign::Minus);
        let lazy = Word::lazy(0, Sign::Plus);
        assert_eq!(
            (g.sigma(&lazy), g.epsilon(&lazy)),
            (Sign::Minus, Sign::Plus)
        );
        let l = lambda2();
        let u = l.parse_word("e c a b'").unwrap();
        let d = l.sign_data(&u);
        assert_eq!(l.vertex_name(d.source), "v2");
        assert_eq!(l.vertex_name(d.target), "v4");
    }

    #[test]
    fn image_and_factor_substrings() {
        let l = lambda2();
        let u = l.parse_word("d' e c a b'").unwrap();
        let has = |ws: &[SubstringWitness], lit: &str| {
            ws.iter()
                .any(|w| l.render(&l.substring(&u, w.start, w.end)) == lit)
        };
        assert!(has(&l.image_substrings(&u, false), "e c"));
        assert!(!has(&l.factor_substrings(&u, false), "e c"));
        assert!(has(&l.factor_substrings(&u, false), "c a"));
        let c = l.parse_word("c").unwrap();
        let im = l.image_substrings(&c, false);
        assert_eq!(
            im,
            vec![SubstringWitness {
                start: 0,
                end: 1,
                kind: SubstringKind::Image
            }]
        );
    }

    #[test]
    fn enumeration_examples() {
        let l = lambda2();
        let one: Vec<String> = l
            .enumerate_strings(1, true)
            .iter()
            .filter(|w| !w.is_lazy())
            .map(|w| l.render(w))
            .collect();
        assert_eq!(one.len(), 5);
        let g = fixtures::gp23();
        assert_eq!(g.enumerate_strings(0, false).len(), 2);
        let two: Vec<String> = g
            .enumerate_strings(2, true)
            .iter()
            .map(|w| g.render(w))
            .collect();
        assert!(two.contains(&"a b'".to_string()));
        assert!(two.contains(&"b' a".to_string()));
        assert!(!two.contains(&"a b".to_string()));
    }

    #[test]
    fn literal_round_trip() {
        let l = lambda2();
        for w in l.enumerate_strings(4, false) {
            assert_eq!(l.parse_word(&l.render(&w)).unwrap(), w);
        }
    }

    #[test]
    fn counts_used_by_bounds() {
        let l = lambda2();
        assert_eq!(l.n_ab(), 4);
        assert_eq!(l.max_direct_len(), 3);
        let g = fixtures::gp23();
        assert_eq!(g.n_ab(), 2);
        assert_eq!(g.max_direct_len(), 2);
    }
}
