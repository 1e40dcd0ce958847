//! Complex terms, recursive systems and the rank classification of graph
//! maps between string and band modules.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::bands::rotation;
use crate::error::{Error, Result};
use crate::hammocks::{ExpansionResult, IntervalWitness, Op};
use crate::presentation::Sign;
use crate::words::{invert, StringAlgebra, SubstringKind, SubstringWitness, Syllable, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermKind {
    LTerm,
    LbarTerm,
}

/// A graded operator such as `l_1` or `l̄` (index 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GradedOp {
    pub op: Op,
    pub index: usize,
}

impl fmt::Display for GradedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            write!(f, "{}", self.op)
        } else {
            write!(f, "{}_{}", self.op, self.index)
        }
    }
}

/// A composite of graded operators, or a bracket `⟨numerator|denominator⟩`.
///
/// `factors` are kept in written order, so the last one is applied first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexTerm {
    pub kind: TermKind,
    pub factors: Vec<GradedOp>,
    pub bracket: Option<(Box<ComplexTerm>, Box<ComplexTerm>)>,
    pub base: (usize, Sign),
}

impl ComplexTerm {
    pub fn composite(kind: TermKind, factors: Vec<GradedOp>, base: (usize, Sign)) -> Self {
        ComplexTerm {
            kind,
            factors,
            bracket: None,
            base,
        }
    }

    /// `⟨mu|tau⟩`, an l-term when `mu` is an l̄-term.
    pub fn bracket(mu: ComplexTerm, tau: ComplexTerm) -> Self {
        let kind = match mu.kind {
            TermKind::LbarTerm => TermKind::LTerm,
            TermKind::LTerm => TermKind::LbarTerm,
        };
        let base = tau.base;
        ComplexTerm {
            kind,
            factors: Vec::new(),
            bracket: Some((Box::new(mu), Box::new(tau))),
            base,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty() && self.bracket.is_none()
    }
}

impl fmt::Display for ComplexTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((mu, tau)) = &self.bracket {
            return write!(f, "⟨{mu}|{tau}⟩");
        }
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursiveSystemWitness {
    pub tau: ComplexTerm,
    pub tau1: ComplexTerm,
    pub tau2: ComplexTerm,
    pub mu: ComplexTerm,
    pub base: (usize, Sign),
    pub x: Word,
    pub window: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum GraphMapDescriptor {
    /// `M(w) -> M(u)` through the factor substring `v` of `w`, an image substring of `u`.
    Ss {
        w: Word,
        v: Word,
        u: Word,
    },
    Sb {
        v: Word,
        band: Word,
        label: String,
    },
    Bs {
        band: Word,
        v: Word,
        label: String,
    },
    Bb {
        band: Word,
        via: BbVia,
        band2: Word,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "kebab-case")]
pub enum BbVia {
    String(Word),
    HomBasis(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankClass {
    Finite,
    ExactlyOmega,
    ExactlyOmegaPlusOne,
    StableRadical,
    IndeterminateAtLeastOmega,
}

/// One graded operator step `source -> op_index(source) = target` of a graph map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Step {
    pub op: Op,
    pub index: usize,
    pub source: Word,
    pub target: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum RankWitness {
    Recursive {
        step: Step,
        system: RecursiveSystemWitness,
    },
    InfiniteInterval {
        step: Step,
        interval: IntervalWitness,
    },
    CompositeBand {
        band: Word,
    },
    Expansion {
        band: Word,
        expansion: ExpansionResult,
    },
    Periodic {
        band: Word,
        left: ExpansionResult,
        right: ExpansionResult,
    },
    Legs {
        first: Box<Rank>,
        second: Box<Rank>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rank {
    pub class: RankClass,
    pub witness: Option<RankWitness>,
}

impl Rank {
    fn finite() -> Self {
        Rank {
            class: RankClass::Finite,
            witness: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StableRank {
    Omega,
    OmegaPlusOne,
    OmegaPlusTwo,
}

impl fmt::Display for StableRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StableRank::Omega => "omega",
            StableRank::OmegaPlusOne => "omega_plus_one",
            StableRank::OmegaPlusTwo => "omega_plus_two",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaWitness {
    pub band: Word,
    pub v: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableRankEstimate {
    pub value: StableRank,
    pub sb_witnesses: Vec<OmegaWitness>,
    pub bs_witnesses: Vec<OmegaWitness>,
    /// A BS target and an SB source sharing the string (up to inverse).
    pub composable: Option<(OmegaWitness, OmegaWitness)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SsAudit {
    pub descriptors: usize,
    pub counts: Vec<(RankClass, usize)>,
    pub first_indeterminate: Option<(Word, Word, Word)>,
}

fn grade_ops(kind: TermKind, max: usize) -> Vec<GradedOp> {
    let op = match kind {
        TermKind::LTerm => Op::L,
        TermKind::LbarTerm => Op::LBar,
    };
    (0..=max).map(|index| GradedOp { op, index }).collect()
}

/// All factor sequences of length `1..=len` over `ops`, shortest first.
fn sequences(ops: &[GradedOp], len: usize) -> Vec<Vec<GradedOp>> {
    let mut out: Vec<Vec<GradedOp>> = Vec::new();
    let mut layer: Vec<Vec<GradedOp>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for s in &layer {
            for &o in ops {
                let mut t = s.clone();
                t.push(o);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

impl StringAlgebra {
    // ---- terms ----

    /// Decomposes the left extension `from -> to` into graded steps of
    /// `op` (`l` or `l̄`), lowest step first.
    pub fn left_chain(&self, op: Op, from: &Word, to: &Word) -> Result<Vec<Step>> {
        let fs = from.syllables();
        let ts = to.syllables();
        match from {
            Word::Path(_) if !ts.starts_with(fs) => return Err(Error::NotAnInclusionShape),
            Word::Lazy { vertex, sign } => {
                if to.is_lazy() {
                    return if to == from {
                        Ok(Vec::new())
                    } else {
                        Err(Error::NotAnInclusionShape)
                    };
                }
                if !self.lazy_right_ok(to, *vertex, *sign) {
                    return Err(Error::NotAnInclusionShape);
                }
            }
            _ => {}
        }
        let opener_direct = op == Op::LBar;
        let mut steps = Vec::new();
        let mut cur = from.clone();
        let mut pos = fs.len();
        while pos < ts.len() {
            if ts[pos].direct != opener_direct {
                return Err(Error::NotAnInclusionShape);
            }
            let mut j = 0;
            while pos + 1 + j < ts.len() && ts[pos + 1 + j].direct != opener_direct {
                j += 1;
            }
            let full = self.apply(op, &cur).ok_or(Error::NotAnInclusionShape)?;
            let fsyl = full.syllables();
            let added = fsyl.len() - pos - 1;
            if added < j || fsyl[..pos + 1 + j] != ts[..pos + 1 + j] {
                return Err(Error::NotAnInclusionShape);
            }
            let next = Word::Path(ts[..pos + 1 + j].to_vec());
            steps.push(Step {
                op,
                index: added - j,
                source: cur,
                target: next.clone(),
            });
            cur = next;
            pos += 1 + j;
        }
        Ok(steps)
    }

    fn term_base(&self, w: &Word) -> (usize, Sign) {
        match w {
            Word::Lazy { vertex, sign } => (*vertex, *sign),
            _ => (self.target(w), self.epsilon(w)),
        }
    }

    /// The l-term labelling the canonical inclusion `M(v) -> M(u)` when `u`
    /// extends `v` on the left.
    pub fn inclusion_terms(&self, v: &Word, u: &Word) -> Result<ComplexTerm> {
        let steps = self.left_chain(Op::L, v, u)?;
        let factors = steps
            .iter()
            .rev()
            .map(|s| GradedOp {
                op: Op::L,
                index: s.index,
            })
            .collect();
        Ok(ComplexTerm::composite(
            TermKind::LTerm,
            factors,
            self.term_base(v),
        ))
    }

    fn apply_factors(&self, factors: &[GradedOp], x: &Word) -> Option<Word> {
        let mut cur = x.clone();
        for g in factors.iter().rev() {
            cur = self.apply_graded(g.op, &cur, g.index).ok()?;
        }
        Some(cur)
    }

    /// Bottom `window` syllables of `⟨1⟩t(x)`, the limit of iterating `t`.
    fn limit_prefix(&self, factors: &[GradedOp], x: &Word, window: usize) -> Option<Vec<Syllable>> {
        if factors.is_empty() {
            return None;
        }
        let mut cur = x.clone();
        while cur.len() < window {
            cur = self.apply_factors(factors, &cur)?;
        }
        Some(cur.syllables()[..window].to_vec())
    }

    /// Evaluates a complex term at `x`; brackets use the fundamental
    /// solution checked on `window` syllables.
    pub fn evaluate_term(&self, t: &ComplexTerm, x: &Word, window: usize) -> Option<Word> {
        match &t.bracket {
            None => self.apply_factors(&t.factors, x),
            Some((mu, tau)) => {
                let limit = self.limit_prefix(&tau.factors, x, window)?;
                let y = self.fundamental_solution(&mu.factors, &limit, x, window)?;
                (y.len() >= x.len()).then_some(y)
            }
        }
    }

    fn fundamental_solution(
        &self,
        mu: &[GradedOp],
        limit: &[Syllable],
        x: &Word,
        window: usize,
    ) -> Option<Word> {
        (0..=window / 2).find_map(|k| {
            let y = if k == 0 {
                if x.is_lazy() {
                    x.clone()
                } else {
                    self.right_base(&Word::Path(limit.to_vec()))
                }
            } else {
                Word::Path(limit[..k].to_vec())
            };
            (self.limit_prefix(mu, &y, window).as_deref() == Some(limit)).then_some(y)
        })
    }

    pub fn recursion_window(&self, x: &Word) -> usize {
        2 * self.prime_band_bound() + 4 * x.len() + 16
    }

    /// Checks `τ(1) = ⟨μ|τ₁ττ₂⟩(1)` on the stored window.
    pub fn verify_recursive_system(&self, w: &RecursiveSystemWitness) -> bool {
        let base = Word::lazy(w.base.0, w.base.1);
        let mut composite = w.tau1.factors.clone();
        composite.extend(w.tau.factors.iter().copied());
        composite.extend(w.tau2.factors.iter().copied());
        let lhs = self.apply_factors(&w.tau.factors, &base);
        let Some(limit) = self.limit_prefix(&composite, &base, w.window) else {
            return false;
        };
        let rhs = self.fundamental_solution(&w.mu.factors, &limit, &base, w.window);
        lhs.is_some() && lhs.as_ref() == Some(&w.x) && rhs == lhs
    }

    /// A recursive system for the inclusion `M(1_base) -> M(x)`, searched
    /// over l-terms `τ₁, τ₂` of at most two factors and l̄-terms `μ` of at
    /// most three, when `x` has a direct and an inverse extendable left
    /// extension.
    pub fn find_recursive_system(
        &self,
        x: &Word,
        base: (usize, Sign),
    ) -> Result<Option<RecursiveSystemWitness>> {
        let xs = x.syllables();
        if xs.is_empty() || xs[0].direct || !self.lazy_right_ok(x, base.0, base.1) {
            return Err(Error::NotAnInclusionShape);
        }
        let extendable = |direct: bool| {
            self.left_extension(x, direct).is_some_and(|s| {
                let mut w = xs.to_vec();
                w.push(s);
                self.is_extendable(&Word::Path(w)).is_some()
            })
        };
        if !(extendable(true) && extendable(false)) {
            return Ok(None);
        }
        let lazy = Word::lazy(base.0, base.1);
        let tau = self.inclusion_terms(&lazy, x)?;
        let window = self.recursion_window(x);
        let g = self.max_direct_len();
        let l_terms = sequences(&grade_ops(TermKind::LTerm, g), 2);
        let mu_terms = sequences(&grade_ops(TermKind::LbarTerm, g), 3);
        for t1 in &l_terms {
            for t2 in &l_terms {
                let mut composite = t1.clone();
                composite.extend(tau.factors.iter().copied());
                composite.extend(t2.iter().copied());
                let Some(limit) = self.limit_prefix(&composite, &lazy, window) else {
                    continue;
                };
                for mu in &mu_terms {
                    if self.limit_prefix(mu, x, window).as_deref() != Some(&limit[..]) {
                        continue;
                    }
                    if self
                        .fundamental_solution(mu, &limit, &lazy, window)
                        .as_ref()
                        != Some(x)
                    {
                        continue;
                    }
                    let w = RecursiveSystemWitness {
                        tau: tau.clone(),
                        tau1: ComplexTerm::composite(TermKind::LTerm, t1.clone(), base),
                        tau2: ComplexTerm::composite(TermKind::LTerm, t2.clone(), base),
                        mu: ComplexTerm::composite(TermKind::LbarTerm, mu.clone(), base),
                        base,
                        x: x.clone(),
                        window,
                    };
                    debug_assert!(self.verify_recursive_system(&w));
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }

    // ---- graph maps between string modules ----

    fn upper(&self, u: &Word, start: usize) -> Word {
        let s = u.syllables();
        if start < s.len() {
            Word::Path(s[start..].to_vec())
        } else {
            self.substring(u, start, start)
        }
    }

    /// Graded steps of the graph map `M(w) -> M(u)` through the given
    /// occurrences of its associated string: the epimorphism onto `M(v)`
    /// (`l̄`, `r̄` steps) followed by the inclusion into `M(u)` (`l`, `r`).
    pub fn ss_steps(
        &self,
        w: &Word,
        at_w: SubstringWitness,
        u: &Word,
        at_u: SubstringWitness,
    ) -> Result<Vec<Step>> {
        if at_w.kind != SubstringKind::Factor || at_u.kind != SubstringKind::Image {
            return Err(Error::BadDescriptor(
                "expected a factor and an image occurrence".into(),
            ));
        }
        let v = self.substring(w, at_w.start, at_w.end);
        if self.substring(u, at_u.start, at_u.end) != v {
            return Err(Error::BadDescriptor(
                "occurrences spell different strings".into(),
            ));
        }
        let mut steps = Vec::new();
        for (word, at, op) in [(w, at_w, Op::LBar), (u, at_u, Op::L)] {
            let v = self.substring(word, at.start, at.end);
            let up = self.upper(word, at.start);
            steps.extend(self.left_chain(op, &v, &up)?);
            let right = self
                .left_chain(op, &invert(&up), &invert(word))?
                .into_iter()
                .map(|s| Step {
                    op: op.mirror(),
                    index: s.index,
                    source: invert(&s.source),
                    target: invert(&s.target),
                });
            steps.extend(right);
        }
        Ok(steps)
    }

    pub fn rank_ss(&self, d: &GraphMapDescriptor) -> Result<Rank> {
        RankContext::new(self).rank(d)
    }

    pub fn rank_sb(&self, band: &Word, v: &Word) -> Result<Rank> {
        RankContext::new(self).rank_sb(band, v)
    }

    pub fn rank_bs(&self, band: &Word, v: &Word) -> Result<Rank> {
        RankContext::new(self).rank_bs(band, v)
    }

    pub fn rank_bb(&self, d: &GraphMapDescriptor) -> Result<Rank> {
        RankContext::new(self).rank(d)
    }

    pub fn rank(&self, d: &GraphMapDescriptor) -> Result<Rank> {
        RankContext::new(self).rank(d)
    }

    /// Occurrences of `v` inside the bi-infinite word of `band` with the
    /// given neighbour shape.
    pub fn band_occurrences(&self, band: &[Syllable], v: &Word, kind: SubstringKind) -> bool {
        self.periodic_substrings(band, v.len(), kind).contains(v)
    }

    /// All image (or factor) substrings of `∞b∞` of length `len`.
    pub fn periodic_substrings(
        &self,
        band: &[Syllable],
        len: usize,
        kind: SubstringKind,
    ) -> Vec<Word> {
        let n = band.len();
        let reps = len / n + 3;
        let long = band.repeat(reps);
        let mut out = Vec::new();
        for p in n..2 * n {
            let above = long[p + len];
            let below = long[p - 1];
            let ok = match kind {
                SubstringKind::Image => !above.direct && below.direct,
                SubstringKind::Factor => above.direct && !below.direct,
            };
            if !ok {
                continue;
            }
            let w = if len == 0 {
                Word::lazy(self.syl_target(below), self.syl_epsilon(below))
            } else {
                Word::Path(long[p..p + len].to_vec())
            };
            if !out.contains(&w) {
                out.push(w);
            }
        }
        out
    }

    /// Witness families of rank exactly ω and the resulting value of the
    /// stable rank, for a meta-torsion-free algebra.
    pub fn stable_rank_estimate(&self) -> Result<StableRankEstimate> {
        if !self.classify_algebra().meta_torsion_free {
            return Err(Error::NotMetaTorsionFree);
        }
        let ctx = RankContext::new(self);
        let bound = self.band_free_bound();
        let mut sb = Vec::new();
        let mut bs = Vec::new();
        for b in self.prime_bands() {
            let bw = b.rep.clone();
            for len in 0..=2 * b.length + bound {
                for v in self.periodic_substrings(b.syllables(), len, SubstringKind::Image) {
                    if ctx.rank_sb(&bw, &v)?.class == RankClass::ExactlyOmega {
                        sb.push(OmegaWitness {
                            band: bw.clone(),
                            v,
                        });
                    }
                }
                for v in self.periodic_substrings(b.syllables(), len, SubstringKind::Factor) {
                    if ctx.rank_bs(&bw, &v)?.class == RankClass::ExactlyOmega {
                        bs.push(OmegaWitness {
                            band: bw.clone(),
                            v,
                        });
                    }
                }
            }
        }
        let composable = bs.iter().find_map(|t| {
            sb.iter()
                .find(|s| s.v == t.v || s.v == invert(&t.v))
                .map(|s| (t.clone(), s.clone()))
        });
        let value = if sb.is_empty() && bs.is_empty() {
            StableRank::Omega
        } else if composable.is_some() {
            StableRank::OmegaPlusTwo
        } else {
            StableRank::OmegaPlusOne
        };
        Ok(StableRankEstimate {
            value,
            sb_witnesses: sb,
            bs_witnesses: bs,
            composable,
        })
    }

    /// Classifies every SS graph map between strings of length at most
    /// `max_len`, one descriptor per pair of occurrences.
    pub fn ss_audit(&self, max_len: usize) -> SsAudit {
        let ctx = RankContext::new(self);
        let strings = self.enumerate_strings(max_len, false);
        let mut factors: HashMap<Word, Vec<(usize, SubstringWitness)>> = HashMap::new();
        let mut images: HashMap<Word, Vec<(usize, SubstringWitness)>> = HashMap::new();
        for (i, s) in strings.iter().enumerate() {
            for at in self.factor_substrings(s, true) {
                factors
                    .entry(self.substring(s, at.start, at.end))
                    .or_default()
                    .push((i, at));
            }
            for at in self.image_substrings(s, true) {
                images
                    .entry(self.substring(s, at.start, at.end))
                    .or_default()
                    .push((i, at));
            }
        }
        let mut counts: HashMap<RankClass, usize> = HashMap::new();
        let mut descriptors = 0;
        let mut first = None;
        let mut keys: Vec<&Word> = factors.keys().collect();
        keys.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| self.printed_cmp(a.syllables(), b.syllables()))
        });
        for v in keys {
            let Some(ims) = images.get(v) else { continue };
            for &(wi, aw) in &factors[v] {
                let epi = ctx.half_rank(&strings[wi], aw);
                for &(ui, au) in ims {
                    descriptors += 1;
                    let mono = ctx.half_rank(&strings[ui], au);
                    let class = match (&epi, &mono) {
                        (Ok(a), Ok(b)) => RankContext::combine(a.clone(), b.clone()).class,
                        _ => continue,
                    };
                    *counts.entry(class).or_default() += 1;
                    if class == RankClass::IndeterminateAtLeastOmega && first.is_none() {
                        first = Some((strings[wi].clone(), v.clone(), strings[ui].clone()));
                    }
                }
            }
        }
        let mut counts: Vec<(RankClass, usize)> = counts.into_iter().collect();
        counts.sort();
        SsAudit {
            descriptors,
            counts,
            first_indeterminate: first,
        }
    }
}

/// Classification with memoized step results, for repeated queries.
pub struct RankContext<'a> {
    alg: &'a StringAlgebra,
    meta_torsion_free: bool,
    steps: RefCell<HashMap<Step, Rank>>,
    halves: RefCell<HashMap<(Word, usize, usize, SubstringKind), Rank>>,
}

impl<'a> RankContext<'a> {
    pub fn new(alg: &'a StringAlgebra) -> Self {
        RankContext {
            alg,
            meta_torsion_free: alg.classify_algebra().meta_torsion_free,
            steps: RefCell::new(HashMap::new()),
            halves: RefCell::new(HashMap::new()),
        }
    }

    fn step_rank(&self, s: &Step) -> Rank {
        if let Some(r) = self.steps.borrow().get(s) {
            return r.clone();
        }
        let a = self.alg;
        let report = a.interval_between(&s.target, s.op);
        let r = match report.witness {
            None => Rank::finite(),
            Some(interval) => {
                let recursive = if s.source.is_lazy() && matches!(s.op, Op::L | Op::R) {
                    let (x, base) = if s.op == Op::L {
                        (s.target.clone(), a.term_base(&s.source))
                    } else {
                        (invert(&s.target), a.term_base(&invert(&s.source)))
                    };
                    a.find_recursive_system(&x, base).ok().flatten()
                } else {
                    None
                };
                match recursive {
                    Some(system) => Rank {
                        class: RankClass::StableRadical,
                        witness: Some(RankWitness::Recursive {
                            step: s.clone(),
                            system,
                        }),
                    },
                    None => Rank {
                        class: if self.meta_torsion_free {
                            RankClass::StableRadical
                        } else {
                            RankClass::IndeterminateAtLeastOmega
                        },
                        witness: Some(RankWitness::InfiniteInterval {
                            step: s.clone(),
                            interval,
                        }),
                    },
                }
            }
        };
        self.steps.borrow_mut().insert(s.clone(), r.clone());
        r
    }

    fn combine(a: Rank, b: Rank) -> Rank {
        let key = |r: &Rank| match r.class {
            RankClass::StableRadical => 2,
            RankClass::IndeterminateAtLeastOmega => 1,
            _ => 0,
        };
        if key(&b) > key(&a) {
            b
        } else {
            a
        }
    }

    /// The rank contribution of one side (epi or mono) of an SS map.
    fn half_rank(&self, word: &Word, at: SubstringWitness) -> Result<Rank> {
        let key = (word.clone(), at.start, at.end, at.kind);
        if let Some(r) = self.halves.borrow().get(&key) {
            return Ok(r.clone());
        }
        let a = self.alg;
        let op = if at.kind == SubstringKind::Factor {
            Op::LBar
        } else {
            Op::L
        };
        let v = a.substring(word, at.start, at.end);
        let up = a.upper(word, at.start);
        let mut steps = a.left_chain(op, &v, &up)?;
        steps.extend(
            a.left_chain(op, &invert(&up), &invert(word))?
                .into_iter()
                .map(|s| Step {
                    op: op.mirror(),
                    index: s.index,
                    source: invert(&s.source),
                    target: invert(&s.target),
                }),
        );
        let r = steps
            .iter()
            .map(|s| self.step_rank(s))
            .fold(Rank::finite(), Self::combine);
        self.halves.borrow_mut().insert(key, r.clone());
        Ok(r)
    }

    fn find_occurrence(
        &self,
        word: &Word,
        v: &Word,
        kind: SubstringKind,
    ) -> Option<SubstringWitness> {
        let a = self.alg;
        let all = match kind {
            SubstringKind::Factor => a.factor_substrings(word, true),
            SubstringKind::Image => a.image_substrings(word, true),
        };
        all.into_iter()
            .find(|at| a.substring(word, at.start, at.end) == *v)
    }

    pub fn rank(&self, d: &GraphMapDescriptor) -> Result<Rank> {
        let a = self.alg;
        match d {
            GraphMapDescriptor::Ss { w, v, u } => {
                for (word, name) in [(w, "w"), (v, "v"), (u, "u")] {
                    if !a.is_string(word) {
                        return Err(Error::BadDescriptor(format!("{name} is not a string")));
                    }
                }
                let find = |word: &Word, kind| {
                    self.find_occurrence(word, v, kind)
                        .map(|at| (word.clone(), at))
                        .or_else(|| {
                            let inv = invert(word);
                            self.find_occurrence(&inv, v, kind).map(|at| (inv, at))
                        })
                };
                let (w2, aw) = find(w, SubstringKind::Factor).ok_or_else(|| {
                    Error::BadDescriptor("v is not a factor substring of w".into())
                })?;
                let (u2, au) = find(u, SubstringKind::Image).ok_or_else(|| {
                    Error::BadDescriptor("v is not an image substring of u".into())
                })?;
                Ok(Self::combine(
                    self.half_rank(&w2, aw)?,
                    self.half_rank(&u2, au)?,
                ))
            }
            GraphMapDescriptor::Sb { v, band, .. } => self.rank_sb(band, v),
            GraphMapDescriptor::Bs { band, v, .. } => self.rank_bs(band, v),
            GraphMapDescriptor::Bb { band, via, band2 } => match via {
                BbVia::HomBasis(_) => {
                    if !a.is_band(band) || !a.is_band(band2) {
                        return Err(Error::NotABand);
                    }
                    Ok(Rank::finite())
                }
                BbVia::String(v) => {
                    let first = self.rank_bs(band, v)?;
                    let second = self.rank_sb(band2, v)?;
                    let class = if first.class == RankClass::StableRadical
                        || second.class == RankClass::StableRadical
                    {
                        RankClass::StableRadical
                    } else {
                        RankClass::ExactlyOmegaPlusOne
                    };
                    Ok(Rank {
                        class,
                        witness: Some(RankWitness::Legs {
                            first: Box::new(first),
                            second: Box::new(second),
                        }),
                    })
                }
            },
        }
    }

    /// `M(v) -> B(band)`.
    pub fn rank_sb(&self, band: &Word, v: &Word) -> Result<Rank> {
        self.band_leg(band, v, SubstringKind::Image)
    }

    /// `B(band) -> M(v)`.
    pub fn rank_bs(&self, band: &Word, v: &Word) -> Result<Rank> {
        self.band_leg(band, v, SubstringKind::Factor)
    }

    fn band_leg(&self, band: &Word, v: &Word, kind: SubstringKind) -> Result<Rank> {
        let a = self.alg;
        let canon = a.canonical_band(band)?;
        let bs = band.syllables();
        if !a.band_occurrences(bs, v, kind) {
            let lit = a.render(v);
            return Err(match kind {
                SubstringKind::Image => Error::NotAnImageSubstring(lit),
                SubstringKind::Factor => Error::NotAFactorSubstring(lit),
            });
        }
        if !canon.prime {
            return Ok(Rank {
                class: RankClass::StableRadical,
                witness: Some(RankWitness::CompositeBand { band: canon.rep }),
            });
        }
        let (lop, rop) = match kind {
            SubstringKind::Image => (Op::L, Op::R),
            SubstringKind::Factor => (Op::LBar, Op::RBar),
        };
        let periodic = |e: &ExpansionResult| {
            e.is_defined() && e.preperiod.is_empty() && a.is_rotation_of(&e.period, bs)
        };
        let left = a.one_sided_expansion(v, lop);
        if !periodic(&left) {
            return Ok(Rank {
                class: RankClass::StableRadical,
                witness: Some(RankWitness::Expansion {
                    band: band.clone(),
                    expansion: left,
                }),
            });
        }
        let right = a.one_sided_expansion(v, rop);
        if !periodic(&right) {
            return Ok(Rank {
                class: RankClass::StableRadical,
                witness: Some(RankWitness::Expansion {
                    band: band.clone(),
                    expansion: right,
                }),
            });
        }
        Ok(Rank {
            class: RankClass::ExactlyOmega,
            witness: Some(RankWitness::Periodic {
                band: band.clone(),
                left,
                right,
            }),
        })
    }
}

/// All rotations of a band word, used when matching periods.
pub fn band_rotations(b: &[Syllable]) -> Vec<Vec<Syllable>> {
    (0..b.len()).map(|k| rotation(b, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn inclusion_terms_examples() {
        let g = fixtures::gp23();
        let base = Word::lazy(0, Sign::Minus);
        let t = g
            .inclusion_terms(&base, &g.parse_word("b'").unwrap())
            .unwrap();
        assert_eq!(t.to_string(), "l_1");
        let l = fixtures::lambda2();
        let a = l.parse_word("a").unwrap();
        let t = l
            .inclusion_terms(&a, &l.parse_word("e c a b' a").unwrap())
            .unwrap();
        assert_eq!(t.to_string(), "l");
        assert!(l.inclusion_terms(&a, &a).unwrap().is_identity());
    }

    #[test]
    fn gp23_recursive_system() {
        let g = fixtures::gp23();
        let x = g.parse_word("b'").unwrap();
        let w = g
            .find_recursive_system(&x, (0, Sign::Minus))
            .unwrap()
            .unwrap();
        assert!(g.verify_recursive_system(&w));
        assert_eq!(w.tau.to_string(), "l_1");
        let base = Word::lazy(0, Sign::Minus);
        let lll = [
            GradedOp {
                op: Op::L,
                index: 0,
            },
            GradedOp {
                op: Op::L,
                index: 1,
            },
            GradedOp {
                op: Op::L,
                index: 0,
            },
        ];
        assert_eq!(
            g.render(&g.apply_factors(&lll, &base).unwrap()),
            "a b' b' a b'"
        );
    }

    #[test]
    fn lambda2_has_no_recursive_system() {
        let l = fixtures::lambda2();
        let x = l.parse_word("b'").unwrap();
        let base = (l.source(&x), -l.sigma(&x));
        assert_eq!(l.find_recursive_system(&x, base).unwrap(), None);
    }
}
