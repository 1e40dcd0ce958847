//! Hammock orders `H_l(v)`, `H_r(v)` and the operators `l`, `l̄`, `r`, `r̄`.
//!
//! Hammocks carry a sign: `H_l(v, i)` holds the strings `u` with
//! `u · 1_(v,i)` defined and `H_r(v, i)` those with `1_(v,i) · u` defined.
//! The classical `H_l(v)` and `H_r(v)` are the `i = +1` cases.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::bands::{primitive_root_len, Band};
use crate::error::{Error, Result};
use crate::presentation::Sign;
use crate::words::{invert, invert_syllables, StringAlgebra, Syllable, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HammockRef {
    pub vertex: usize,
    pub sign: Sign,
    pub side: Side,
}

impl HammockRef {
    pub fn new(vertex: usize, sign: Sign, side: Side) -> Self {
        HammockRef { vertex, sign, side }
    }

    pub fn base(&self) -> Word {
        Word::lazy(self.vertex, self.sign)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Op {
    #[serde(rename = "l")]
    L,
    #[serde(rename = "lbar")]
    LBar,
    #[serde(rename = "r")]
    R,
    #[serde(rename = "rbar")]
    RBar,
}

impl Op {
    pub fn side(self) -> Side {
        match self {
            Op::L | Op::LBar => Side::L,
            Op::R | Op::RBar => Side::R,
        }
    }

    /// The operator acting on inverses.
    pub fn mirror(self) -> Op {
        match self {
            Op::L => Op::R,
            Op::LBar => Op::RBar,
            Op::R => Op::L,
            Op::RBar => Op::LBar,
        }
    }

    /// Whether the operator moves up in the hammock order.
    pub fn increasing(self) -> bool {
        matches!(self, Op::L | Op::R)
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::L => "l",
            Op::LBar => "lbar",
            Op::R => "r",
            Op::RBar => "rbar",
        })
    }
}

impl std::str::FromStr for Op {
    type Err = Error;
    fn from_str(s: &str) -> Result<Op> {
        match s {
            "l" => Ok(Op::L),
            "lbar" | "l-bar" => Ok(Op::LBar),
            "r" => Ok(Op::R),
            "rbar" | "r-bar" => Ok(Op::RBar),
            other => Err(Error::BadDescriptor(format!("unknown operator `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExpansionStatus {
    Defined,
    UndefinedAtStep { step: usize },
}

/// `⟨1⟩op(u)` as an eventually periodic one-sided word.
///
/// For `l` and `l̄` the limit is `∞P · W · u`; for `r` and `r̄` it is
/// `u · W · P∞`. `W` and `P` are stored as they sit inside the limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionResult {
    pub op: Op,
    pub start: Word,
    pub status: ExpansionStatus,
    pub preperiod: Vec<Syllable>,
    pub period: Vec<Syllable>,
    pub band: Option<Band>,
}

impl ExpansionResult {
    pub fn is_defined(&self) -> bool {
        self.status == ExpansionStatus::Defined
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionWitness {
    pub word: Word,
    pub op: Op,
    pub image: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub torsion_free: bool,
    pub checked_up_to: usize,
    pub witnesses: Vec<TorsionWitness>,
}

/// Evidence that an interval below or above a graded term is infinite:
/// `rotation · z · arrow · x` is a string whose powers of `rotation`
/// stay inside the interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalWitness {
    pub rotation: Vec<Syllable>,
    pub z: Word,
    pub arrow: Syllable,
    pub x: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalReport {
    pub finite: bool,
    pub x: Word,
    pub witness: Option<IntervalWitness>,
}

impl StringAlgebra {
    pub fn in_hammock(&self, u: &Word, h: HammockRef) -> bool {
        match (u, h.side) {
            (Word::Lazy { vertex, sign }, _) => *vertex == h.vertex && *sign == h.sign,
            (_, Side::L) => self.lazy_right_ok(u, h.vertex, h.sign),
            (_, Side::R) => self.lazy_left_ok(h.vertex, h.sign, u),
        }
    }

    /// The left hammock containing `u`.
    pub fn left_hammock_of(&self, u: &Word) -> HammockRef {
        match u {
            Word::Lazy { vertex, sign } => HammockRef::new(*vertex, *sign, Side::L),
            _ => HammockRef::new(self.source(u), -self.sigma(u), Side::L),
        }
    }

    /// The right hammock containing `u`.
    pub fn right_hammock_of(&self, u: &Word) -> HammockRef {
        match u {
            Word::Lazy { vertex, sign } => HammockRef::new(*vertex, *sign, Side::R),
            _ => HammockRef::new(self.target(u), self.epsilon(u), Side::R),
        }
    }

    fn compare_left(u: &[Syllable], w: &[Syllable]) -> Ordering {
        let p = u.iter().zip(w).take_while(|(x, y)| x == y).count();
        match (u.get(p), w.get(p)) {
            (None, None) => Ordering::Equal,
            // an inverse extension is larger, a direct one smaller
            (None, Some(s)) => {
                if s.direct {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (Some(s), None) => {
                if s.direct {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Some(s), Some(_)) => {
                if s.direct {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn compare(&self, u: &Word, w: &Word, h: HammockRef) -> Result<Ordering> {
        if !self.in_hammock(u, h) || !self.in_hammock(w, h) {
            return Err(Error::NotInHammock);
        }
        Ok(match h.side {
            Side::L => Self::compare_left(u.syllables(), w.syllables()),
            Side::R => Self::compare_left(invert(u).syllables(), invert(w).syllables()),
        })
    }

    /// The unique syllable of the given direction that may be placed to the left of `u`.
    pub fn left_extension(&self, u: &Word, direct: bool) -> Option<Syllable> {
        (0..self.arrow_count())
            .map(|a| Syllable { arrow: a, direct })
            .find(|&x| match u {
                Word::Lazy { vertex, sign } => {
                    self.can_prepend(&[], x)
                        && self.syl_source(x) == *vertex
                        && self.syl_sigma(x) == -*sign
                }
                Word::Path(s) => self.can_prepend(s, x),
            })
    }

    /// `(appended, syllables)` where `l(u) = appended · u`, for `l` or `l̄`.
    fn left_step(&self, u: &Word, increasing: bool) -> Option<Vec<Syllable>> {
        let first = self.left_extension(u, !increasing)?;
        let mut syls = u.syllables().to_vec();
        syls.push(first);
        let run = self.maximal_run(&syls, increasing);
        syls.extend(run);
        Some(syls)
    }

    fn apply_left(&self, u: &Word, op: Op) -> Option<Word> {
        debug_assert_eq!(op.side(), Side::L);
        self.left_step(u, op == Op::L).map(Word::Path)
    }

    pub fn apply(&self, op: Op, u: &Word) -> Option<Word> {
        match op.side() {
            Side::L => self.apply_left(u, op),
            Side::R => self.apply_left(&invert(u), op.mirror()).map(|w| invert(&w)),
        }
    }

    pub fn op_l(&self, u: &Word) -> Option<Word> {
        self.apply(Op::L, u)
    }

    pub fn op_lbar(&self, u: &Word) -> Option<Word> {
        self.apply(Op::LBar, u)
    }

    pub fn op_r(&self, u: &Word) -> Option<Word> {
        self.apply(Op::R, u)
    }

    pub fn op_rbar(&self, u: &Word) -> Option<Word> {
        self.apply(Op::RBar, u)
    }

    /// The graded operator: `op(u)` with `i` syllables of its trailing
    /// maximal run removed (`l_i`, `l̄_i`, `r_i`, `r̄_i`).
    pub fn apply_graded(&self, op: Op, u: &Word, i: usize) -> Result<Word> {
        if op.side() == Side::R {
            return self
                .apply_graded(op.mirror(), &invert(u), i)
                .map(|w| invert(&w));
        }
        let full = self.apply(op, u).ok_or(Error::UndefinedOperator)?;
        let k = full.len() - u.len() - 1;
        if i > k {
            return Err(Error::IndexOutOfRange { index: i, max: k });
        }
        Ok(Word::Path(full.syllables()[..full.len() - i].to_vec()))
    }

    pub fn op_l_graded(&self, u: &Word, i: usize) -> Result<Word> {
        self.apply_graded(Op::L, u, i)
    }

    /// The largest grading index available for `op` at `u`.
    pub fn graded_max(&self, op: Op, u: &Word) -> Option<usize> {
        self.apply(op, u).map(|w| w.len() - u.len() - 1)
    }

    fn shrink_left(&self, u: &Word, h: HammockRef, strip_direct: bool) -> Option<Word> {
        let s = u.syllables();
        let mut k = s.len();
        while k > 0 && s[k - 1].direct == strip_direct {
            k -= 1;
        }
        if k == 0 {
            return None;
        }
        let rest = &s[..k - 1];
        Some(if rest.is_empty() {
            h.base()
        } else {
            Word::Path(rest.to_vec())
        })
    }

    /// The direct successor of `u` in `h`.
    pub fn successor(&self, u: &Word, h: HammockRef) -> Result<Option<Word>> {
        if !self.in_hammock(u, h) {
            return Err(Error::NotInHammock);
        }
        Ok(match h.side {
            Side::L => self.op_l(u).or_else(|| self.shrink_left(u, h, false)),
            Side::R => {
                let hl = HammockRef::new(h.vertex, -h.sign, Side::L);
                self.successor(&invert(u), hl)?.map(|w| invert(&w))
            }
        })
    }

    /// The direct predecessor of `u` in `h`.
    pub fn predecessor(&self, u: &Word, h: HammockRef) -> Result<Option<Word>> {
        if !self.in_hammock(u, h) {
            return Err(Error::NotInHammock);
        }
        Ok(match h.side {
            Side::L => self.op_lbar(u).or_else(|| self.shrink_left(u, h, true)),
            Side::R => {
                let hl = HammockRef::new(h.vertex, -h.sign, Side::L);
                self.predecessor(&invert(u), hl)?.map(|w| invert(&w))
            }
        })
    }

    /// Iterates `op` from `u` until it fails or the appended blocks repeat.
    pub fn one_sided_expansion(&self, u: &Word, op: Op) -> ExpansionResult {
        if op.side() == Side::R {
            let mut res = self.one_sided_expansion(&invert(u), op.mirror());
            res.op = op;
            res.start = u.clone();
            res.preperiod = invert_syllables(&res.preperiod);
            res.period = invert_syllables(&res.period);
            return res;
        }
        let window = self.max_relation_len() + 1;
        let mut seen: HashMap<Vec<Syllable>, usize> = HashMap::new();
        let mut cur = u.clone();
        let mut step = 0;
        loop {
            step += 1;
            let next = match self.apply(op, &cur) {
                Some(n) => n,
                None => {
                    return ExpansionResult {
                        op,
                        start: u.clone(),
                        status: ExpansionStatus::UndefinedAtStep { step },
                        preperiod: Vec::new(),
                        period: Vec::new(),
                        band: None,
                    }
                }
            };
            let s = next.syllables();
            if s.len() >= window {
                let key = s[s.len() - window..].to_vec();
                if let Some(&earlier) = seen.get(&key) {
                    return self.periodic_result(u, op, s, earlier);
                }
                seen.insert(key, s.len());
            }
            cur = next;
        }
    }

    fn periodic_result(&self, u: &Word, op: Op, s: &[Syllable], earlier: usize) -> ExpansionResult {
        let block = &s[earlier..];
        let p = primitive_root_len(block);
        // X[i] = s[i] below s.len(), and X[i] = X[i - p] from `earlier` on
        let at = |i: usize| -> Syllable {
            if i < s.len() {
                s[i]
            } else {
                s[earlier + (i - earlier) % p]
            }
        };
        let mut start = earlier;
        while start > u.len() && at(start - 1) == at(start - 1 + p) {
            start -= 1;
        }
        let period: Vec<Syllable> = (start..start + p).map(at).collect();
        let preperiod = s[u.len()..start].to_vec();
        let band = self.canonical_band(&Word::Path(period.clone())).ok();
        ExpansionResult {
            op,
            start: u.clone(),
            status: ExpansionStatus::Defined,
            preperiod,
            period,
            band,
        }
    }

    pub fn render_expansion(&self, e: &ExpansionResult) -> String {
        match e.status {
            ExpansionStatus::UndefinedAtStep { step } => format!("undefined@{step}"),
            ExpansionStatus::Defined => {
                let mut parts = Vec::new();
                let pre = (!e.preperiod.is_empty()).then(|| self.render_syllables(&e.preperiod));
                let start = self.render(&e.start);
                match e.op.side() {
                    Side::L => {
                        parts.push(format!("∞({})", self.render_syllables(&e.period)));
                        parts.extend(pre);
                        parts.push(start);
                    }
                    Side::R => {
                        parts.push(start);
                        parts.extend(pre);
                        parts.push(format!("({})∞", self.render_syllables(&e.period)));
                    }
                }
                parts.join("·")
            }
        }
    }

    /// Length up to which strings are examined by [`Self::is_torsion_free`].
    ///
    /// Whether `op(u)` and `op(op(u))` are defined depends only on the
    /// top `max relation length` syllables of `u`.
    pub fn torsion_check_len(&self) -> usize {
        self.max_relation_len() + self.max_direct_len() + 1
    }

    /// Decides torsion-freeness by checking that every defined `l` or `l̄`
    /// step admits a further step of the same kind; `r` and `r̄` are the
    /// same operators on inverse strings.
    pub fn is_torsion_free(&self) -> TorsionReport {
        let len = self.torsion_check_len();
        let mut words = self.enumerate_strings(len, false);
        // non-lazy strings first so that witnesses read naturally
        words.sort_by_key(|w| (w.is_lazy(), w.len()));
        let mut witnesses = Vec::new();
        for w in &words {
            for op in [Op::LBar, Op::L] {
                if let Some(image) = self.apply(op, w) {
                    if self.apply(op, &image).is_none() {
                        witnesses.push(TorsionWitness {
                            word: w.clone(),
                            op,
                            image,
                        });
                    }
                }
            }
        }
        TorsionReport {
            torsion_free: witnesses.is_empty(),
            checked_up_to: len,
            witnesses,
        }
    }

    /// Whether the interval `[1_(v,i), l_k(1_(v,i))]` in `H_l(v, i)` is finite.
    pub fn interval_is_finite(
        &self,
        vertex: usize,
        sign: Sign,
        k: usize,
    ) -> Result<IntervalReport> {
        let base = Word::lazy(vertex, sign);
        let x = self.op_l_graded(&base, k)?;
        Ok(self.interval_between(&x, Op::L))
    }

    /// Finiteness of the interval between `x` and the base of its hammock,
    /// where the bottom syllable of `x` over the base was added by `op`
    /// (`l`-type: `x` above the base; `l̄`-type: below).
    ///
    /// The interval is infinite exactly when some band rotation `r`,
    /// band-free `z` and syllable `α` of the direction opposite to the
    /// bottom syllable give a string `r z α x`.
    pub fn interval_between(&self, x: &Word, op: Op) -> IntervalReport {
        if op.side() == Side::R {
            let mut rep = self.interval_between(&invert(x), op.mirror());
            rep.x = x.clone();
            if let Some(w) = rep.witness.as_mut() {
                w.x = x.clone();
            }
            return rep;
        }
        let direct = op == Op::L;
        let witness = self.left_extension(x, direct).and_then(|alpha| {
            let mut ax = x.syllables().to_vec();
            ax.push(alpha);
            for z in &self.band_free().strings {
                let zax = match z {
                    Word::Lazy { .. } => {
                        if !self.lazy_left_ok_syl(z, &ax) {
                            continue;
                        }
                        ax.clone()
                    }
                    Word::Path(zs) => match self.join(zs, &ax) {
                        Some(j) => j,
                        None => continue,
                    },
                };
                for b in self.prime_bands() {
                    let bs = b.syllables();
                    for rot in 0..bs.len() {
                        let r = crate::bands::rotation(bs, rot);
                        if self.join(&r, &zax).is_some() {
                            return Some(IntervalWitness {
                                rotation: r,
                                z: z.clone(),
                                arrow: alpha,
                                x: x.clone(),
                            });
                        }
                    }
                }
            }
            None
        });
        IntervalReport {
            finite: witness.is_none(),
            x: x.clone(),
            witness,
        }
    }

    fn lazy_left_ok_syl(&self, lazy: &Word, syls: &[Syllable]) -> bool {
        match lazy {
            Word::Lazy { vertex, sign } => {
                let top = *syls.last().unwrap();
                self.syl_target(top) == *vertex && self.syl_epsilon(top) == *sign
            }
            Word::Path(_) => false,
        }
    }
}
