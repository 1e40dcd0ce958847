//! Brute-force cross-checks of the optimized computations.
//!
//! Apart from the string validity test of the words module, everything
//! here is reimplemented naively: the hammock order from its defining
//! clauses, bands by generate-and-filter, primality by exhaustive splits.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::hammocks::{ExpansionResult, HammockRef, Op, Side};
use crate::presentation::{validate_string_algebra, Axiom, QuiverPresentation, Sign};
use crate::ranks::{GraphMapDescriptor, RankClass, RankWitness};
use crate::words::{invert, invert_syllables, StringAlgebra, Syllable, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub input: String,
    pub fast: String,
    pub oracle: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub check: String,
    pub population: usize,
    pub mismatches: Vec<Mismatch>,
    pub note: Option<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Length caps for the brute-force checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleBudget {
    /// Strings searched for hammock neighbours.
    pub search_len: usize,
    /// Hammock members whose neighbours are checked.
    pub member_len: usize,
    /// Strings compared against naive enumeration and used for expansions.
    pub string_len: usize,
    /// Cyclic words scanned by the band oracle.
    pub band_len: usize,
    pub generation_len: usize,
    pub audit_len: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            search_len: 12,
            member_len: 8,
            string_len: 8,
            band_len: 8,
            generation_len: 10,
            audit_len: 6,
        }
    }
}

impl OracleBudget {
    /// Default budget with every cap limited to `n`.
    pub fn capped(n: usize) -> Self {
        let d = OracleBudget::default();
        OracleBudget {
            search_len: n,
            member_len: d.member_len.min(n),
            string_len: d.string_len.min(n),
            band_len: d.band_len.min(n),
            generation_len: d.generation_len.min(n),
            audit_len: d.audit_len.min(n),
        }
    }
}

struct Report {
    check: &'static str,
    population: usize,
    mismatches: Vec<Mismatch>,
    note: Option<String>,
}

impl Report {
    fn new(check: &'static str) -> Self {
        Report {
            check,
            population: 0,
            mismatches: Vec::new(),
            note: None,
        }
    }

    fn miss(&mut self, input: String, fast: String, oracle: String) {
        self.mismatches.push(Mismatch {
            input,
            fast,
            oracle,
        });
    }

    fn done(self) -> OracleReport {
        OracleReport {
            check: self.check.to_string(),
            population: self.population,
            mismatches: self.mismatches,
            note: self.note,
        }
    }
}

// ---- naive combinatorics ----

fn printed(w: &Word) -> Vec<Syllable> {
    w.syllables().iter().rev().copied().collect()
}

/// `u <_r w` from the three defining clauses, read on printed words.
fn less_r(u: &[Syllable], w: &[Syllable]) -> bool {
    let p = u.iter().zip(w).take_while(|(x, y)| x == y).count();
    match (u.get(p), w.get(p)) {
        (None, None) => false,
        // w = u a x, or w = u B y (then w < u)
        (None, Some(s)) => s.direct,
        (Some(s), None) => !s.direct,
        // w = z a x and u = z B y
        (Some(s), Some(t)) => !s.direct && t.direct,
    }
}

fn oracle_cmp(h: &HammockRef, u: &Word, w: &Word) -> Ordering {
    let (pu, pw) = match h.side {
        Side::R => (printed(u), printed(w)),
        Side::L => (printed(&invert(u)), printed(&invert(w))),
    };
    if pu == pw {
        Ordering::Equal
    } else if less_r(&pu, &pw) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn oracle_member(a: &StringAlgebra, h: &HammockRef, u: &Word) -> bool {
    match u {
        Word::Lazy { vertex, sign } => *vertex == h.vertex && *sign == h.sign,
        _ => match h.side {
            Side::L => a.source(u) == h.vertex && a.sigma(u) == -h.sign,
            Side::R => a.target(u) == h.vertex && a.epsilon(u) == h.sign,
        },
    }
}

fn is_primitive(w: &[Syllable]) -> bool {
    let n = w.len();
    !(1..n).any(|p| n.is_multiple_of(p) && w.iter().enumerate().all(|(i, x)| *x == w[i % p]))
}

fn rotate(w: &[Syllable], k: usize) -> Vec<Syllable> {
    w[k..].iter().chain(&w[..k]).copied().collect()
}

fn naive_is_band(a: &StringAlgebra, w: &[Syllable]) -> bool {
    if w.len() < 2
        || !w.iter().any(|s| s.direct)
        || !w.iter().any(|s| !s.direct)
        || !is_primitive(w)
    {
        return false;
    }
    let reps = a.max_relation_len() / w.len() + 3;
    (0..w.len()).all(|k| a.is_string_syllables(&rotate(w, k)))
        && a.is_string_syllables(&w.repeat(reps))
}

fn naive_is_prime(a: &StringAlgebra, w: &[Syllable]) -> bool {
    let n = w.len();
    (0..n).all(|k| {
        let r = rotate(w, k);
        // split points 0 = c_0 < c_1 < ... < c_m = n with m >= 2
        fn splits(a: &StringAlgebra, r: &[Syllable], from: usize, parts: usize) -> bool {
            if from == r.len() {
                return parts >= 2;
            }
            (from + 2..=r.len()).any(|to| {
                to - from < r.len() && naive_is_band(a, &r[from..to]) && splits(a, r, to, parts + 1)
            })
        }
        !splits(a, &r, 0, 0)
    })
}

/// Lexicographically least rotation, a canonical key up to rotation.
fn rotation_key(w: &[Syllable]) -> Vec<(usize, bool)> {
    (0..w.len())
        .map(|k| {
            rotate(w, k)
                .iter()
                .map(|s| (s.arrow, s.direct))
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

/// All syllable sequences of length `1..=max_len` passing the validity check.
fn naive_strings(a: &StringAlgebra, max_len: usize) -> Vec<Vec<Syllable>> {
    let syls: Vec<Syllable> = (0..a.arrow_count())
        .flat_map(|x| [Syllable::direct(x), Syllable::inverse(x)])
        .collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Syllable>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &s in &syls {
                let mut t = w.clone();
                t.push(s);
                if a.is_string_syllables(&t) {
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Lazy paths followed by `naive_strings`.
fn naive_words(a: &StringAlgebra, max_len: usize) -> Vec<Word> {
    let lazies =
        (0..a.vertex_count()).flat_map(|v| [Word::lazy(v, Sign::Plus), Word::lazy(v, Sign::Minus)]);
    lazies
        .chain(naive_strings(a, max_len).into_iter().map(Word::Path))
        .collect()
}

/// Bands up to rotation of length at most `max_len`, by generate-and-filter.
pub fn oracle_bands(a: &StringAlgebra, max_len: usize) -> Vec<Vec<Syllable>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for w in naive_strings(a, max_len) {
        if naive_is_band(a, &w) && seen.insert(rotation_key(&w)) {
            out.push(w);
        }
    }
    out
}

pub fn oracle_prime_bands(a: &StringAlgebra, max_len: usize) -> Vec<Vec<Syllable>> {
    oracle_bands(a, max_len)
        .into_iter()
        .filter(|w| naive_is_prime(a, w))
        .collect()
}

/// The order-minimal strict upper bound of `u` among strings of length
/// at most `search_len` in `h`.
pub fn oracle_successor(
    a: &StringAlgebra,
    u: &Word,
    h: HammockRef,
    search_len: usize,
) -> Option<Word> {
    let mut pop = naive_words(a, search_len);
    pop.retain(|w| oracle_member(a, &h, w));
    pop.into_iter()
        .filter(|w| oracle_cmp(&h, u, w) == Ordering::Less)
        .min_by(|x, y| oracle_cmp(&h, x, y))
}

fn expansion_prefix(e: &ExpansionResult, len: usize) -> Vec<Syllable> {
    // bottom-up syllables of the left-infinite word
    let mut w: Vec<Syllable> = e.start.syllables().to_vec();
    w.extend_from_slice(&e.preperiod);
    let mut k = 0;
    while w.len() < len && !e.period.is_empty() {
        w.push(e.period[k % e.period.len()]);
        k += 1;
    }
    w.truncate(len);
    w
}

fn lit(a: &StringAlgebra, s: &[Syllable]) -> String {
    a.render_syllables(s)
}

// ---- checks ----

fn check_validate(p: &QuiverPresentation) -> OracleReport {
    let mut r = Report::new("validate");
    let mut variants = vec![("as given".to_string(), p.clone())];
    for k in 0..p.relations.len() {
        let mut q = p.clone();
        q.relations.remove(k);
        q.signs = None;
        variants.push((format!("without relation {}", k + 1), q));
    }
    let kinds = [
        Axiom::Finiteness,
        Axiom::OutDegree,
        Axiom::InDegree,
        Axiom::UniqueSuccessor,
        Axiom::UniquePredecessor,
    ];
    for (name, q) in variants {
        r.population += 1;
        let fast: BTreeSet<String> = validate_string_algebra(&q)
            .violations
            .iter()
            .filter(|v| kinds.contains(&v.axiom))
            .map(|v| format!("{:?}", v.axiom))
            .collect();
        let naive: BTreeSet<String> = naive_violations(&q)
            .into_iter()
            .map(|x| format!("{x:?}"))
            .collect();
        if fast != naive {
            r.miss(name, format!("{fast:?}"), format!("{naive:?}"));
        }
    }
    r.done()
}

/// Axioms violated by `p`, found by walking all relation-avoiding paths.
pub fn naive_violations(p: &QuiverPresentation) -> BTreeSet<Axiom> {
    let mut out = BTreeSet::new();
    let n = p.arrows.len();
    let rels = p.relations_applied();
    let rel2: HashSet<(usize, usize)> = rels
        .iter()
        .filter(|r| r.len() == 2)
        .map(|r| (r[0], r[1]))
        .collect();
    for v in 0..p.vertices.len() {
        if p.arrows.iter().filter(|x| x.source == v).count() > 2 {
            out.insert(Axiom::OutDegree);
        }
        if p.arrows.iter().filter(|x| x.target == v).count() > 2 {
            out.insert(Axiom::InDegree);
        }
    }
    for b in 0..n {
        let after = (0..n)
            .filter(|&c| p.arrows[c].source == p.arrows[b].target && !rel2.contains(&(b, c)))
            .count();
        if after > 1 {
            out.insert(Axiom::UniqueSuccessor);
        }
        let before = (0..n)
            .filter(|&c| p.arrows[c].target == p.arrows[b].source && !rel2.contains(&(c, b)))
            .count();
        if before > 1 {
            out.insert(Axiom::UniquePredecessor);
        }
    }
    let maxrel = rels.iter().map(Vec::len).max().unwrap_or(1);
    let limit = n * maxrel + 1;
    let avoids = |path: &[usize]| !rels.iter().any(|r| path.ends_with(r));
    let mut layer: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    for _ in 1..limit {
        let mut next = BTreeSet::new();
        for path in &layer {
            let last = *path.last().unwrap();
            for c in 0..n {
                if p.arrows[c].source == p.arrows[last].target {
                    let mut q = path.clone();
                    q.push(c);
                    if avoids(&q) {
                        // only the last maxrel - 1 arrows affect the continuation
                        let keep = q.len().min(maxrel.max(2) - 1);
                        next.insert(q[q.len() - keep..].to_vec());
                    }
                }
            }
        }
        layer = next.into_iter().collect();
        if layer.is_empty() {
            break;
        }
    }
    if !layer.is_empty() {
        out.insert(Axiom::Finiteness);
    }
    out
}

fn check_strings(a: &StringAlgebra, b: &OracleBudget) -> OracleReport {
    let mut r = Report::new("strings-naive");
    let fast: BTreeSet<Vec<Syllable>> = a
        .enumerate_strings(b.string_len, false)
        .into_iter()
        .filter(|w| !w.is_lazy())
        .map(|w| w.syllables().to_vec())
        .collect();
    let naive: BTreeSet<Vec<Syllable>> = naive_strings(a, b.string_len).into_iter().collect();
    r.population = naive.len();
    for w in naive.difference(&fast) {
        r.miss(lit(a, w), "missing".into(), "string".into());
    }
    for w in fast.difference(&naive) {
        r.miss(lit(a, w), "string".into(), "not a string".into());
    }
    r.done()
}

fn check_neighbours(a: &StringAlgebra, b: &OracleBudget) -> OracleReport {
    let mut r = Report::new("hammock-neighbours");
    let pop = naive_words(a, b.search_len);
    let mut skipped = 0;
    for v in 0..a.vertex_count() {
        for sign in [Sign::Plus, Sign::Minus] {
            for side in [Side::L, Side::R] {
                let h = HammockRef::new(v, sign, side);
                let mut members: Vec<&Word> =
                    pop.iter().filter(|w| oracle_member(a, &h, w)).collect();
                members.sort_by(|x, y| oracle_cmp(&h, x, y));
                for (i, u) in members.iter().enumerate() {
                    if u.len() > b.member_len {
                        continue;
                    }
                    r.population += 1;
                    let expected = [
                        members.get(i + 1),
                        i.checked_sub(1).and_then(|j| members.get(j)),
                    ];
                    let fast = [a.successor(u, h), a.predecessor(u, h)];
                    for (dir, (f, o)) in ["successor", "predecessor"]
                        .iter()
                        .zip(fast.into_iter().zip(expected))
                    {
                        let f = match f {
                            Ok(f) => f,
                            Err(e) => {
                                r.miss(
                                    format!("{dir} {} in {h:?}", a.render(u)),
                                    e.to_string(),
                                    "member".into(),
                                );
                                continue;
                            }
                        };
                        if f.as_ref().is_some_and(|w| w.len() > b.search_len) {
                            skipped += 1;
                            continue;
                        }
                        if f.as_ref() != o.copied() {
                            let show =
                                |w: Option<&Word>| w.map_or("none".to_string(), |w| a.render(w));
                            r.miss(
                                format!("{dir} {} in {h:?}", a.render(u)),
                                show(f.as_ref()),
                                show(o.copied()),
                            );
                        }
                        if f.as_ref().is_some_and(|w| w.len() == u.len()) {
                            r.miss(
                                format!("{dir} {} length", a.render(u)),
                                "equal length".into(),
                                "lengths differ".into(),
                            );
                        }
                    }
                }
            }
        }
    }
    if skipped > 0 {
        r.note = Some(format!(
            "{skipped} neighbours longer than {} skipped",
            b.search_len
        ));
    }
    r.done()
}

fn check_prime_bands(a: &StringAlgebra, b: &OracleBudget) -> Vec<OracleReport> {
    let mut r = Report::new("prime-bands");
    let cap = b.band_len.min(a.prime_band_bound());
    let oracle: BTreeSet<Vec<(usize, bool)>> = oracle_prime_bands(a, cap)
        .iter()
        .map(|w| rotation_key(w))
        .collect();
    let fast: BTreeSet<Vec<(usize, bool)>> = a
        .prime_bands()
        .iter()
        .filter(|x| x.length <= cap)
        .map(|x| rotation_key(x.syllables()))
        .collect();
    r.population = oracle.len();
    for w in oracle.symmetric_difference(&fast) {
        r.miss(
            format!("{w:?}"),
            fast.contains(w).to_string(),
            oracle.contains(w).to_string(),
        );
    }
    if cap < a.prime_band_bound() {
        r.note = Some(format!(
            "generate-and-filter up to length {cap} of bound {}",
            a.prime_band_bound()
        ));
    }

    let mut beyond = Report::new("prime-bands-beyond-bound");
    let bound = a.prime_band_bound();
    let fast_keys: BTreeSet<_> = a
        .prime_bands()
        .iter()
        .map(|x| rotation_key(x.syllables()))
        .collect();
    let next: BTreeSet<_> = if bound < b.band_len {
        beyond.note = Some(format!("generate-and-filter up to length {}", bound + 1));
        oracle_prime_bands(a, bound + 1)
            .iter()
            .map(|w| rotation_key(w))
            .collect()
    } else {
        beyond.note = Some(format!("pruned search rerun at length {}", bound + 1));
        a.enumerate_prime_bands_upto(bound + 1)
            .iter()
            .map(|x| rotation_key(x.syllables()))
            .collect()
    };
    beyond.population = next.len();
    for w in next.symmetric_difference(&fast_keys) {
        beyond.miss(
            format!("{w:?}"),
            fast_keys.contains(w).to_string(),
            next.contains(w).to_string(),
        );
    }
    vec![r.done(), beyond.done()]
}

/// Completeness of the prime-band enumerator run with a given bound,
/// against generate-and-filter up to the largest prime band found.
pub fn prime_band_completeness(a: &StringAlgebra, bound: usize, cap: usize) -> OracleReport {
    let mut r = Report::new("prime-band-completeness");
    let oracle: BTreeSet<_> = oracle_prime_bands(a, cap)
        .iter()
        .map(|w| rotation_key(w))
        .collect();
    let fast: BTreeSet<_> = a
        .enumerate_prime_bands_upto(bound)
        .iter()
        .map(|x| rotation_key(x.syllables()))
        .collect();
    r.population = oracle.len();
    for w in oracle.difference(&fast) {
        r.miss(format!("{w:?}"), "missing".into(), "prime band".into());
    }
    r.done()
}

fn check_mutation(a: &StringAlgebra, b: &OracleBudget) -> OracleReport {
    let mut r = Report::new("mutation");
    let longest = a.prime_bands().iter().map(|x| x.length).max().unwrap_or(0);
    if longest == 0 || longest > b.band_len {
        r.note = Some("no prime band within the band oracle cap".into());
        return r.done();
    }
    r.population = 1;
    let mutated = prime_band_completeness(a, longest - 1, longest);
    if mutated.passed() {
        r.miss(
            format!("bound {}", longest - 1),
            "completeness passed".into(),
            "completeness should fail".into(),
        );
    }
    r.note = Some(format!(
        "bound lowered to {} (longest prime band); the proven bound {} is not sharp",
        longest - 1,
        a.prime_band_bound()
    ));
    r.done()
}

fn check_at_most_once(a: &StringAlgebra) -> OracleReport {
    let mut r = Report::new("at-most-once");
    for band in a.prime_bands() {
        r.population += 1;
        let p: Vec<Syllable> = band.syllables().iter().rev().copied().collect();
        let n = p.len();
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for i in 0..n {
            let (x, y) = (p[i], p[(i + 1) % n]);
            if x.direct && !y.direct {
                *count.entry((x.arrow, y.arrow)).or_default() += 1;
            }
        }
        if let Some(((x, y), c)) = count.into_iter().find(|(_, c)| *c > 1) {
            r.miss(
                a.render(&band.rep),
                format!(
                    "{}{} occurs {c} times",
                    a.arrow_name(x),
                    a.arrow_name(y).to_uppercase()
                ),
                "at most once".into(),
            );
        }
    }
    r.done()
}

fn check_band_free_sharpness(a: &StringAlgebra, b: &OracleBudget) -> OracleReport {
    let mut r = Report::new("band-free-sharpness");
    let bound = a.band_free_bound();
    if bound + 1 > b.search_len {
        let grown = a.enumerate_band_free_upto(bound + 1);
        r.population = grown.strings.len();
        if let Some(w) = grown.strings.iter().find(|w| w.len() > bound) {
            r.miss(
                a.render(w),
                "band-free".into(),
                "length beyond bound".into(),
            );
        }
        r.note = Some(format!("catalog regrown to length {}", bound + 1));
        return r.done();
    }
    for w in naive_strings(a, bound + 1)
        .into_iter()
        .filter(|w| w.len() == bound + 1)
    {
        r.population += 1;
        let n = w.len();
        let has = (0..n).any(|i| (i + 2..=n).any(|j| naive_is_band(a, &w[i..j])));
        if !has {
            r.miss(
                lit(a, &w),
                "-".into(),
                "band-free string beyond bound".into(),
            );
        }
    }
    r.done()
}

fn check_rotation_invariance(a: &StringAlgebra, b: &OracleBudget) -> OracleReport {
    let mut r = Report::new("rotation-invariance");
    for w in naive_strings(a, b.band_len) {
        if !a.is_band_syllables(&w) {
            continue;
        }
        r.population += 1;
        for k in 1..w.len() {
            let rot = rotate(&w, k);
            if !a.is_band_syllables(&rot) {
                r.miss(
                    lit(a, &w),
                    format!("rotation {} rejected", lit(a, &rot)),
                    "band".into(),
                );
            }
        }
        if !naive_is_band(a, &w) {
            r.miss(lit(a, &w), "band".into(), "not a band".into());
        }
    }
    r.done()
}

fn check_generation(a: &StringAlgebra, b: &OracleBudget) -> OracleReport {
    let mut r = Report::new("generation");
    for u in naive_words(a, b.generation_len) {
        r.population += 1;
        match a.find_generating_path(&u) {
            None => r.miss(a.render(&u), "no path".into(), "generated".into()),
            Some(p) => match a.generate_string(&p) {
                Ok(w) if w == u => {}
                Ok(w) => r.miss(a.render(&u), a.render(&w), a.render(&u)),
                Err(e) => r.miss(a.render(&u), e.to_string(), a.render(&u)),
            },
        }
    }
    r.done()
}

fn check_bridge_inclusion(a: &StringAlgebra) -> OracleReport {
    let mut r = Report::new("bridge-inclusion");
    let q = a.build_extended_bridge_quiver(false);
    let band = |v: &crate::bridges::BridgeVertex| -> Vec<Syllable> {
        match v {
            crate::bridges::BridgeVertex::Band { index } => {
                a.prime_bands()[*index].syllables().to_vec()
            }
            _ => Vec::new(),
        }
    };
    for arrow in &q.arrows {
        r.population += 1;
        // target band · label · source band, lazy ends contributing nothing
        let mut w = band(&arrow.source);
        w.extend_from_slice(arrow.label.syllables());
        w.extend(band(&arrow.target));
        let mut ok = w.is_empty() || a.is_string_syllables(&w);
        let bf = arrow.label.syllables();
        if (0..bf.len()).any(|i| (i + 2..=bf.len()).any(|j| naive_is_band(a, &bf[i..j]))) {
            ok = false;
        }
        if let crate::bridges::BridgeVertex::Lazy { vertex, sign } = arrow.source {
            let whole = Word::Path(w.clone());
            if !w.is_empty() && !a.lazy_right_ok(&whole, vertex, sign) {
                ok = false;
            }
        }
        if let crate::bridges::BridgeVertex::Lazy { vertex, sign } = arrow.target {
            let whole = Word::Path(w.clone());
            if !w.is_empty() && !a.lazy_left_ok(vertex, sign, &whole) {
                ok = false;
            }
        }
        if !ok {
            r.miss(
                format!(
                    "{} -[{}]-> {}",
                    a.render_vertex(&arrow.source),
                    a.render(&arrow.label),
                    a.render_vertex(&arrow.target)
                ),
                "arrow".into(),
                "not a weak arrow".into(),
            );
        }
    }
    r.done()
}

fn check_arrows_on_prime_bands(a: &StringAlgebra, applies: bool) -> OracleReport {
    let mut r = Report::new("arrows-on-prime-bands");
    if !applies {
        r.note = Some("not torsion-free and meta-union-cyclic".into());
        return r.done();
    }
    for x in 0..a.arrow_count() {
        r.population += 1;
        if !a
            .prime_bands()
            .iter()
            .any(|b| b.syllables().iter().any(|s| s.arrow == x))
        {
            r.miss(
                a.arrow_name(x).to_string(),
                "on no prime band".into(),
                "on a prime band".into(),
            );
        }
    }
    r.done()
}

fn check_domestic(a: &StringAlgebra, b: &OracleBudget, domestic: bool) -> OracleReport {
    let mut r = Report::new("domestic");
    let bands = oracle_bands(a, b.band_len);
    r.population = bands.len();
    if let Some(w) = bands.iter().find(|w| !naive_is_prime(a, w)) {
        if domestic {
            r.miss(lit(a, w), "domestic".into(), "composite band exists".into());
        }
    } else if !domestic {
        r.note = Some(format!(
            "no composite band up to length {}; inconclusive",
            b.band_len
        ));
    }
    r.done()
}

fn check_periods(a: &StringAlgebra, b: &OracleBudget) -> OracleReport {
    let mut r = Report::new("period-primality");
    for u in naive_words(a, b.string_len) {
        for op in [Op::L, Op::LBar, Op::R, Op::RBar] {
            let e = a.one_sided_expansion(&u, op);
            if !e.is_defined() {
                continue;
            }
            r.population += 1;
            let left = if op.side() == Side::R {
                invert_syllables(&e.period)
            } else {
                e.period.clone()
            };
            let ok_band = naive_is_band(a, &left) && naive_is_prime(a, &left);
            // iterate op and compare against the claimed eventually periodic word
            let mut cur = u.clone();
            let target = u.len() + e.preperiod.len() + 2 * e.period.len() + 2;
            let mut consistent = true;
            while cur.len() < target {
                match a.apply(op, &cur) {
                    Some(n) => cur = n,
                    None => {
                        consistent = false;
                        break;
                    }
                }
            }
            if consistent {
                let (got, claim) = if op.side() == Side::R {
                    let mut e2 = e.clone();
                    e2.start = invert(&e.start);
                    e2.preperiod = invert_syllables(&e.preperiod);
                    e2.period = invert_syllables(&e.period);
                    (
                        invert(&cur).syllables().to_vec(),
                        expansion_prefix(&e2, target),
                    )
                } else {
                    (cur.syllables().to_vec(), expansion_prefix(&e, target))
                };
                consistent = got[..target] == claim[..];
            }
            if !ok_band || !consistent {
                r.miss(
                    format!("{op}({})", a.render(&u)),
                    a.render_expansion(&e),
                    if ok_band {
                        "different iterates".into()
                    } else {
                        "period not a prime band".into()
                    },
                );
            }
        }
    }
    r.done()
}

fn check_no_lbar_solution(a: &StringAlgebra, b: &OracleBudget, applies: bool) -> OracleReport {
    let mut r = Report::new("no-lbar-solution");
    if !applies {
        r.note = Some("not meta-union-cyclic".into());
        return r.done();
    }
    let window = b.search_len + 4 * a.prime_bands().iter().map(|x| x.length).max().unwrap_or(1);
    let mut limits: HashMap<Vec<Syllable>, Word> = HashMap::new();
    for v in naive_words(a, 6.min(b.search_len)) {
        let e = a.one_sided_expansion(&v, Op::L);
        if e.is_defined() {
            limits.entry(expansion_prefix(&e, window)).or_insert(v);
        }
    }
    for x in naive_words(a, b.search_len) {
        let e = a.one_sided_expansion(&x, Op::LBar);
        if !e.is_defined() {
            continue;
        }
        r.population += 1;
        if let Some(v) = limits.get(&expansion_prefix(&e, window)) {
            r.miss(
                a.render(&x),
                format!("lbar limit equals l limit of {}", a.render(v)),
                "no solution".into(),
            );
        }
    }
    r.done()
}

fn check_extendable(a: &StringAlgebra, b: &OracleBudget, applies: bool) -> OracleReport {
    let mut r = Report::new("extendable");
    if !applies {
        r.note = Some("not torsion-free and meta-union-cyclic".into());
        return r.done();
    }
    for u in naive_words(a, b.string_len) {
        r.population += 1;
        match a.is_extendable(&u) {
            None => r.miss(
                a.render(&u),
                "not extendable".into(),
                "substring of a band".into(),
            ),
            Some(w) => {
                let n = w.band.len();
                let long = w.band.repeat(u.len() / n + 2);
                let inside = u.is_lazy() || long.windows(u.len()).any(|x| x == u.syllables());
                if !naive_is_band(a, &w.band) || !inside {
                    r.miss(a.render(&u), lit(a, &w.band), "invalid band witness".into());
                }
            }
        }
    }
    r.done()
}

fn check_dichotomy(a: &StringAlgebra, b: &OracleBudget, mtf: bool) -> OracleReport {
    let mut r = Report::new("dichotomy");
    if !mtf {
        r.note = Some("not meta-torsion-free".into());
        return r.done();
    }
    let audit = a.ss_audit(b.audit_len);
    r.population = audit.descriptors;
    if let Some((w, v, u)) = audit.first_indeterminate {
        r.miss(
            format!("{} -> {} via {}", a.render(&w), a.render(&u), a.render(&v)),
            "indeterminate".into(),
            "finite or stable radical".into(),
        );
    }
    r.done()
}

fn check_stable_witnesses(a: &StringAlgebra) -> OracleReport {
    let mut r = Report::new("stable-radical-witnesses");
    for v in 0..a.vertex_count() {
        for sign in [Sign::Plus, Sign::Minus] {
            let base = Word::lazy(v, sign);
            let Some(max) = a.graded_max(Op::L, &base) else {
                continue;
            };
            for k in 0..=max {
                let Ok(x) = a.apply_graded(Op::L, &base, k) else {
                    continue;
                };
                let d = GraphMapDescriptor::Ss {
                    w: base.clone(),
                    v: base.clone(),
                    u: x.clone(),
                };
                let Ok(rank) = a.rank(&d) else { continue };
                if rank.class != RankClass::StableRadical {
                    continue;
                }
                r.population += 1;
                let ok = match &rank.witness {
                    Some(RankWitness::Recursive { system, .. }) => {
                        a.verify_recursive_system(system)
                    }
                    Some(RankWitness::InfiniteInterval { step, interval }) => {
                        let mut w = interval.x.syllables().to_vec();
                        w.push(interval.arrow);
                        w.extend_from_slice(interval.z.syllables());
                        w.extend_from_slice(&interval.rotation);
                        let h = HammockRef::new(v, sign, Side::L);
                        let mid = Word::Path(w.clone());
                        let below_target = oracle_cmp(&h, &mid, &step.target) == Ordering::Less;
                        let above_source = oracle_cmp(&h, &step.source, &mid) == Ordering::Less;
                        a.is_string_syllables(&w) && below_target && above_source
                    }
                    _ => false,
                };
                if !ok {
                    r.miss(
                        a.render(&x),
                        format!("{:?}", rank.witness),
                        "re-verifiable witness".into(),
                    );
                }
            }
        }
    }
    r.done()
}

fn check_omega_witnesses(a: &StringAlgebra, mtf: bool) -> OracleReport {
    let mut r = Report::new("omega-periodicity");
    if !mtf {
        r.note = Some("not meta-torsion-free".into());
        return r.done();
    }
    let Ok(est) = a.stable_rank_estimate() else {
        r.miss("stable rank".into(), "error".into(), "estimate".into());
        return r.done();
    };
    for (w, is_sb) in est
        .sb_witnesses
        .iter()
        .map(|w| (w, true))
        .chain(est.bs_witnesses.iter().map(|w| (w, false)))
    {
        r.population += 1;
        let rank = if is_sb {
            a.rank_sb(&w.band, &w.v)
        } else {
            a.rank_bs(&w.band, &w.v)
        };
        let ok = match rank {
            Ok(crate::ranks::Rank {
                class: RankClass::ExactlyOmega,
                witness: Some(RankWitness::Periodic { left, right, .. }),
            }) => {
                let bs = w.band.syllables();
                let rot = |p: &[Syllable]| {
                    p.len() == bs.len() && (0..bs.len()).any(|k| rotate(bs, k) == p)
                };
                rot(&left.period) && rot(&right.period)
            }
            _ => false,
        };
        if !ok {
            r.miss(
                format!("{}|{}", a.render(&w.band), a.render(&w.v)),
                "not periodic".into(),
                "periodic".into(),
            );
        }
    }
    r.done()
}

/// Runs every cross-check in a fixed order.
pub fn run_all_checks(a: &StringAlgebra, budget: &OracleBudget) -> Vec<OracleReport> {
    let class = a.classify_algebra();
    let muc = class.meta_union_cyclic;
    let tf_muc = class.torsion_free && muc;
    let mut out = vec![
        check_validate(a.presentation()),
        check_strings(a, budget),
        check_neighbours(a, budget),
    ];
    out.extend(check_prime_bands(a, budget));
    out.push(check_mutation(a, budget));
    out.push(check_at_most_once(a));
    out.push(check_band_free_sharpness(a, budget));
    out.push(check_rotation_invariance(a, budget));
    out.push(check_generation(a, budget));
    out.push(check_bridge_inclusion(a));
    out.push(check_arrows_on_prime_bands(a, tf_muc));
    out.push(check_domestic(a, budget, class.domestic));
    out.push(check_periods(a, budget));
    out.push(check_no_lbar_solution(a, budget, muc));
    out.push(check_extendable(a, budget, tf_muc));
    out.push(check_dichotomy(a, budget, class.meta_torsion_free));
    out.push(check_stable_witnesses(a));
    out.push(check_omega_witnesses(a, class.meta_torsion_free));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn successor_oracle_examples() {
        let l = fixtures::lambda2();
        let a = l.parse_word("a").unwrap();
        let h = l.left_hammock_of(&a);
        let s = oracle_successor(&l, &a, h, 6).unwrap();
        assert_eq!(l.render(&s), "e c a b' a");
    }

    #[test]
    fn band_oracle_examples() {
        let l = fixtures::lambda2();
        assert_eq!(oracle_bands(&l, 6).len(), 4);
        let g = fixtures::gp23();
        assert_eq!(oracle_prime_bands(&g, 3).len(), 4);
        assert!(oracle_bands(&g, 1).is_empty());
    }

    #[test]
    fn mutated_bound_is_detected() {
        let g = fixtures::gp23();
        assert!(prime_band_completeness(&g, 3, 3).passed());
        assert!(!prime_band_completeness(&g, 2, 3).passed());
    }
}
