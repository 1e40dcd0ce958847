//! Bridges between prime bands, the (extended) bridge quiver, algebra
//! classification and the generation of strings by bridge-quiver paths.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use petgraph::algo::{has_path_connecting, tarjan_scc};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::bands::{rotation, Band};
use crate::error::{Error, Result};
use crate::presentation::Sign;
use crate::words::{invert, invert_syllables, StringAlgebra, Syllable, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BridgeVertex {
    /// Index into [`StringAlgebra::prime_bands`].
    Band {
        index: usize,
    },
    Lazy {
        vertex: usize,
        sign: Sign,
    },
}

impl BridgeVertex {
    pub fn is_band(&self) -> bool {
        matches!(self, BridgeVertex::Band { .. })
    }

    fn band(&self) -> Option<usize> {
        match self {
            BridgeVertex::Band { index } => Some(*index),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BridgeKind {
    Bridge,
    Half,
    ReverseHalf,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BridgeArrow {
    pub source: BridgeVertex,
    pub target: BridgeVertex,
    pub label: Word,
    pub kind: BridgeKind,
    pub weak_only: bool,
    pub exit: Option<Syllable>,
    pub sigma_ba: Option<Sign>,
}

impl BridgeArrow {
    /// Zero-length bridge from a band to itself.
    pub fn is_trivial(&self) -> bool {
        self.kind == BridgeKind::Bridge && self.label.is_lazy() && self.source == self.target
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendedBridgeQuiver {
    pub vertices: Vec<BridgeVertex>,
    pub arrows: Vec<BridgeArrow>,
    pub weak_arrows: Option<Vec<BridgeArrow>>,
}

/// Whether the ⊑ relation on weak half bridges is closed transitively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum OrderMode {
    #[default]
    Closure,
    SingleStep,
}

/// All bridge data of an algebra, computed once.
#[derive(Debug, Clone)]
pub struct BridgeData {
    /// Every weak bridge between prime bands; `weak_only` marks the
    /// excluded ones.
    pub between_bands: Vec<BridgeArrow>,
    pub half: Vec<BridgeArrow>,
    pub reverse_half: Vec<BridgeArrow>,
    pub zero: Vec<BridgeArrow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSpec {
    pub arrows: Vec<BridgeArrow>,
    pub exponents: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetaBand {
    pub bands: Vec<usize>,
    pub labels: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraClassification {
    pub domestic: bool,
    pub torsion_free: bool,
    pub meta_union_cyclic: bool,
    pub meta_torsion_free: bool,
    pub witnesses: BTreeMap<String, String>,
    #[serde(skip)]
    pub meta_band: Option<MetaBand>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendabilityWitness {
    /// A band containing the string as a subword of one of its rotations.
    pub band: Vec<Syllable>,
    pub from: usize,
    pub to: usize,
}

// ---- rep-level helpers shared by the band set and its dual ----

/// A set of band words acting as vertices of a (possibly dual) bridge quiver.
struct RepSet<'a> {
    alg: &'a StringAlgebra,
    reps: Vec<Vec<Syllable>>,
}

/// Concatenation `v · u` of raw words, lazy labels contributing nothing.
fn cat(v: &[Syllable], u: &[Syllable]) -> Vec<Syllable> {
    let mut out = u.to_vec();
    out.extend_from_slice(v);
    out
}

impl<'a> RepSet<'a> {
    /// `b2 · u · b1` is a string.
    fn connects(&self, b1: usize, u: &Word, b2: usize) -> bool {
        let a = self.alg;
        let (r1, r2) = (&self.reps[b1], &self.reps[b2]);
        match u {
            Word::Lazy { vertex, sign } => {
                a.source(&Word::Path(r2.clone())) == *vertex
                    && a.syl_sigma(r2[0]) == -*sign
                    && a.syl_target(*r1.last().unwrap()) == *vertex
                    && a.syl_epsilon(*r1.last().unwrap()) == *sign
                    && a.join(r2, r1).is_some()
            }
            Word::Path(s) => a.join(s, r1).and_then(|w| a.join(r2, &w)).is_some(),
        }
    }

    fn weak_bridges(&self) -> Vec<(usize, usize, Word)> {
        let mut out = Vec::new();
        for i in 0..self.reps.len() {
            for j in 0..self.reps.len() {
                for u in &self.alg.band_free().strings {
                    if self.connects(i, u, j) {
                        out.push((i, j, u.clone()));
                    }
                }
            }
        }
        out
    }

    /// First syllable from the right where `∞b2 u b1` and `∞b1` differ.
    fn exit(&self, b1: usize, u: &Word, b2: usize) -> Option<Syllable> {
        let (r1, r2) = (&self.reps[b1], &self.reps[b2]);
        let us = u.syllables();
        let window = r1.len() + us.len() + 2 * r1.len() * r2.len() + 2;
        (0..window).find_map(|i| {
            let x = if i < r1.len() {
                r1[i]
            } else if i < r1.len() + us.len() {
                us[i - r1.len()]
            } else {
                r2[(i - r1.len() - us.len()) % r2.len()]
            };
            (x != r1[i % r1.len()]).then_some(x)
        })
    }

    /// Marks weak bridges admitting one of the excluded factorizations.
    fn bridges(&self) -> Vec<BridgeArrow> {
        let weak = self.weak_bridges();
        let index: HashSet<(usize, usize, Vec<Syllable>)> = weak
            .iter()
            .map(|(i, j, u)| (*i, *j, u.syllables().to_vec()))
            .collect();
        let is_weak = |i: usize, j: usize, s: &[Syllable]| {
            !s.is_empty() && index.contains(&(i, j, s.to_vec()))
        };
        let n = self.reps.len();
        weak.iter()
            .map(|(i, j, u)| {
                let s = u.syllables();
                let mut excluded = false;
                'outer: for k in 1..s.len() {
                    let (u1, u2) = (&s[..k], &s[k..]);
                    for b in 0..n {
                        if is_weak(*i, b, u1) && is_weak(b, *j, u2) {
                            excluded = true;
                            break 'outer;
                        }
                        let r = &self.reps[b];
                        for q in 0..=r.len() {
                            // b = u''2 u''1 with u1 = u''1 u'1 and u2 = u'2 u''2
                            let w1 = cat(&r[..q], u1);
                            let w2 = cat(u2, &r[q..]);
                            if is_weak(*i, b, &w1) && is_weak(b, *j, &w2) {
                                excluded = true;
                                break 'outer;
                            }
                        }
                    }
                }
                let exit = self.exit(*i, u, *j);
                BridgeArrow {
                    source: BridgeVertex::Band { index: *i },
                    target: BridgeVertex::Band { index: *j },
                    label: u.clone(),
                    kind: BridgeKind::Bridge,
                    weak_only: excluded,
                    exit,
                    sigma_ba: exit.map(|e| if e.direct { Sign::Minus } else { Sign::Plus }),
                }
            })
            .collect()
    }

    /// Weak half bridges from `1_(v,i)`.
    fn weak_half_from(&self, vertex: usize, sign: Sign) -> Vec<BridgeArrow> {
        let a = self.alg;
        let mut out = Vec::new();
        for (k, r) in self.reps.iter().enumerate() {
            let rw = Word::Path(r.clone());
            for u in &a.band_free().strings {
                let ok = match u {
                    Word::Lazy {
                        vertex: v2,
                        sign: s2,
                    } => *v2 == vertex && *s2 == sign && a.lazy_right_ok(&rw, vertex, sign),
                    Word::Path(s) => a.lazy_right_ok(u, vertex, sign) && a.join(r, s).is_some(),
                };
                if ok {
                    let exit = u.first().unwrap_or(r[0]);
                    out.push(BridgeArrow {
                        source: BridgeVertex::Lazy { vertex, sign },
                        target: BridgeVertex::Band { index: k },
                        label: u.clone(),
                        kind: BridgeKind::Half,
                        weak_only: false,
                        exit: Some(exit),
                        sigma_ba: Some(if exit.direct { Sign::Minus } else { Sign::Plus }),
                    });
                }
            }
        }
        out
    }

    /// Whether `to` arises from `from` by one left composition with a bridge,
    /// optionally removing a rotation of `from`'s band.
    fn below(&self, from: &BridgeArrow, to: &BridgeArrow, bridges: &[BridgeArrow]) -> bool {
        let (b, b2) = (from.target.band().unwrap(), to.target.band().unwrap());
        let r = &self.reps[b];
        let target = to.label.syllables();
        bridges.iter().filter(|br| !br.weak_only).any(|br| {
            if br.source.band() != Some(b) || br.target.band() != Some(b2) {
                return false;
            }
            let vu = cat(br.label.syllables(), from.label.syllables());
            if vu == target {
                return true;
            }
            (0..vu.len().saturating_sub(r.len()) + 1).any(|p| {
                if p + r.len() > vu.len() || !self.alg.is_rotation_of(&vu[p..p + r.len()], r) {
                    return false;
                }
                let mut rest = vu[..p].to_vec();
                rest.extend_from_slice(&vu[p + r.len()..]);
                rest == target
            })
        })
    }

    /// Sets `weak_only` on weak half bridges that are not ⊑-minimal in
    /// their σ^Ba class.
    fn mark_half(&self, arrows: &mut [BridgeArrow], bridges: &[BridgeArrow], mode: OrderMode) {
        let n = arrows.len();
        let mut le = vec![vec![false; n]; n];
        for x in 0..n {
            for y in 0..n {
                if x != y && self.below(&arrows[x], &arrows[y], bridges) {
                    le[x][y] = true;
                }
            }
        }
        if mode == OrderMode::Closure {
            for k in 0..n {
                for x in 0..n {
                    if le[x][k] {
                        let row = le[k].clone();
                        for (cell, via) in le[x].iter_mut().zip(row) {
                            *cell |= via;
                        }
                    }
                }
            }
        }
        let flags: Vec<bool> = (0..n)
            .map(|u| {
                (0..n).any(|w| {
                    w != u && le[w][u] && !le[u][w] && arrows[w].sigma_ba == arrows[u].sigma_ba
                })
            })
            .collect();
        for (a, f) in arrows.iter_mut().zip(flags) {
            a.weak_only = f;
        }
    }
}

impl StringAlgebra {
    fn rep_set(&self) -> RepSet<'_> {
        RepSet {
            alg: self,
            reps: self
                .prime_bands()
                .iter()
                .map(|b| b.syllables().to_vec())
                .collect(),
        }
    }

    fn dual_rep_set(&self) -> RepSet<'_> {
        RepSet {
            alg: self,
            reps: self
                .prime_bands()
                .iter()
                .map(|b| invert_syllables(b.syllables()))
                .collect(),
        }
    }

    pub fn bridge_data(&self) -> &BridgeData {
        self.bridge_cache
            .get_or_init(|| self.compute_bridge_data(OrderMode::Closure))
    }

    /// Recomputes all bridge data with the given ⊑ mode.
    pub fn compute_bridge_data(&self, mode: OrderMode) -> BridgeData {
        let reps = self.rep_set();
        let between_bands = reps.bridges();
        let dual = self.dual_rep_set();
        let dual_bridges = dual.bridges();

        let mut half = Vec::new();
        let mut reverse_half = Vec::new();
        for v in 0..self.vertex_count() {
            for sign in [Sign::Plus, Sign::Minus] {
                let mut h = reps.weak_half_from(v, sign);
                reps.mark_half(&mut h, &between_bands, mode);
                half.extend(h);
                // b -> 1_(v,i) is a reverse half bridge iff 1_(v,-i) -> b⁻¹ is a half bridge
                let mut d = dual.weak_half_from(v, -sign);
                dual.mark_half(&mut d, &dual_bridges, mode);
                reverse_half.extend(d.into_iter().map(|a| BridgeArrow {
                    source: a.target,
                    target: BridgeVertex::Lazy { vertex: v, sign },
                    label: invert(&a.label),
                    kind: BridgeKind::ReverseHalf,
                    weak_only: a.weak_only,
                    exit: a.exit.map(Syllable::inv),
                    sigma_ba: a.sigma_ba,
                }));
            }
        }
        let zero = self.zero_bridges_from(&half, &reverse_half);
        BridgeData {
            between_bands,
            half,
            reverse_half,
            zero,
        }
    }

    fn zero_bridges_from(
        &self,
        half: &[BridgeArrow],
        reverse_half: &[BridgeArrow],
    ) -> Vec<BridgeArrow> {
        let lazies: Vec<(usize, Sign)> = (0..self.vertex_count())
            .flat_map(|v| [(v, Sign::Plus), (v, Sign::Minus)])
            .collect();
        let mut out = Vec::new();
        for &(v1, i1) in &lazies {
            for &(v2, i2) in &lazies {
                // words u2 u1 through a band, and the same with one band rotation removed
                let mut through: HashSet<Vec<Syllable>> = HashSet::new();
                for h in half.iter().filter(|h| {
                    h.source
                        == BridgeVertex::Lazy {
                            vertex: v1,
                            sign: i1,
                        }
                        && !h.label.is_lazy()
                }) {
                    for r in reverse_half.iter().filter(|r| {
                        r.target
                            == BridgeVertex::Lazy {
                                vertex: v2,
                                sign: i2,
                            }
                            && r.source == h.target
                            && !r.label.is_lazy()
                    }) {
                        let w = cat(r.label.syllables(), h.label.syllables());
                        let band = &self.prime_bands()[h.target.band().unwrap()];
                        let bs = band.syllables();
                        for p in 0..w.len() {
                            if p + bs.len() <= w.len()
                                && self.is_rotation_of(&w[p..p + bs.len()], bs)
                            {
                                let mut rest = w[..p].to_vec();
                                rest.extend_from_slice(&w[p + bs.len()..]);
                                through.insert(rest);
                            }
                        }
                        through.insert(w);
                    }
                }
                for u in &self.band_free().strings {
                    let ok = match u {
                        Word::Lazy { vertex, sign } => {
                            *vertex == v1 && *sign == i1 && v1 == v2 && i1 == i2
                        }
                        Word::Path(_) => {
                            self.lazy_left_ok(v2, i2, u) && self.lazy_right_ok(u, v1, i1)
                        }
                    };
                    if !ok {
                        continue;
                    }
                    out.push(BridgeArrow {
                        source: BridgeVertex::Lazy {
                            vertex: v1,
                            sign: i1,
                        },
                        target: BridgeVertex::Lazy {
                            vertex: v2,
                            sign: i2,
                        },
                        label: u.clone(),
                        kind: BridgeKind::Zero,
                        weak_only: through.contains(u.syllables()),
                        exit: None,
                        sigma_ba: None,
                    });
                }
            }
        }
        out
    }

    pub fn weak_bridges(&self, b1: usize, b2: usize) -> Vec<BridgeArrow> {
        self.bridge_data()
            .between_bands
            .iter()
            .filter(|a| a.source.band() == Some(b1) && a.target.band() == Some(b2))
            .cloned()
            .collect()
    }

    pub fn bridges_between(&self, b1: usize, b2: usize) -> Vec<BridgeArrow> {
        self.weak_bridges(b1, b2)
            .into_iter()
            .filter(|a| !a.weak_only)
            .collect()
    }

    /// Index of `b` among the prime bands, matching any rotation.
    pub fn band_index(&self, w: &Word) -> Option<usize> {
        self.prime_bands()
            .iter()
            .position(|b| self.is_rotation_of(w.syllables(), b.syllables()))
    }

    pub fn band_at(&self, index: usize) -> &Band {
        &self.prime_bands()[index]
    }

    pub fn half_bridges_from(
        &self,
        vertex: usize,
        sign: Sign,
        include_weak: bool,
    ) -> Vec<BridgeArrow> {
        self.bridge_data()
            .half
            .iter()
            .filter(|a| {
                a.source == BridgeVertex::Lazy { vertex, sign } && (include_weak || !a.weak_only)
            })
            .cloned()
            .collect()
    }

    pub fn reverse_half_bridges_to(
        &self,
        vertex: usize,
        sign: Sign,
        include_weak: bool,
    ) -> Vec<BridgeArrow> {
        self.bridge_data()
            .reverse_half
            .iter()
            .filter(|a| {
                a.target == BridgeVertex::Lazy { vertex, sign } && (include_weak || !a.weak_only)
            })
            .cloned()
            .collect()
    }

    pub fn zero_bridges(&self, include_weak: bool) -> Vec<BridgeArrow> {
        self.bridge_data()
            .zero
            .iter()
            .filter(|a| include_weak || !a.weak_only)
            .cloned()
            .collect()
    }

    /// The bridge quiver on prime bands, or with `extended` also the lazy
    /// vertices with half, reverse half and zero bridges.
    pub fn build_bridge_quiver(&self, extended: bool, include_weak: bool) -> ExtendedBridgeQuiver {
        let data = self.bridge_data();
        let mut vertices: Vec<BridgeVertex> = (0..self.prime_bands().len())
            .map(|index| BridgeVertex::Band { index })
            .collect();
        let mut all: Vec<BridgeArrow> = data.between_bands.clone();
        if extended {
            for v in 0..self.vertex_count() {
                for sign in [Sign::Plus, Sign::Minus] {
                    vertices.push(BridgeVertex::Lazy { vertex: v, sign });
                }
            }
            all.extend(data.half.iter().cloned());
            all.extend(data.reverse_half.iter().cloned());
            all.extend(data.zero.iter().cloned());
        }
        let arrows = all.iter().filter(|a| !a.weak_only).cloned().collect();
        ExtendedBridgeQuiver {
            vertices,
            arrows,
            weak_arrows: include_weak.then_some(all),
        }
    }

    pub fn build_extended_bridge_quiver(&self, include_weak: bool) -> ExtendedBridgeQuiver {
        self.build_bridge_quiver(true, include_weak)
    }

    pub fn render_vertex(&self, v: &BridgeVertex) -> String {
        match v {
            BridgeVertex::Band { index } => self.render(&self.prime_bands()[*index].rep),
            BridgeVertex::Lazy { vertex, sign } => self.render(&Word::lazy(*vertex, *sign)),
        }
    }

    /// Graphviz rendering; weak-only arrows are dashed.
    pub fn to_dot(&self, q: &ExtendedBridgeQuiver) -> String {
        let mut out = format!("digraph \"{}\" {{\n", self.name());
        let id = |v: &BridgeVertex| match v {
            BridgeVertex::Band { index } => format!("b{index}"),
            BridgeVertex::Lazy { vertex, sign } => {
                format!("v{vertex}{}", if *sign == Sign::Plus { "p" } else { "m" })
            }
        };
        for v in &q.vertices {
            let shape = if v.is_band() { "box" } else { "ellipse" };
            out.push_str(&format!(
                "  {} [label=\"{}\", shape={}];\n",
                id(v),
                self.render_vertex(v),
                shape
            ));
        }
        let arrows = q.weak_arrows.as_ref().unwrap_or(&q.arrows);
        for a in arrows {
            let style = if a.weak_only { ", style=dashed" } else { "" };
            out.push_str(&format!(
                "  {} -> {} [label=\"{}\"{}];\n",
                id(&a.source),
                id(&a.target),
                self.render(&a.label),
                style
            ));
        }
        out.push_str("}\n");
        out
    }

    // ---- classification ----

    fn band_graph(&self) -> DiGraph<usize, usize> {
        let n = self.prime_bands().len();
        let mut g = DiGraph::new();
        let nodes: Vec<NodeIndex> = (0..n).map(|i| g.add_node(i)).collect();
        for (k, a) in self.bridge_data().between_bands.iter().enumerate() {
            if a.weak_only || a.is_trivial() {
                continue;
            }
            let (i, j) = (a.source.band().unwrap(), a.target.band().unwrap());
            g.add_edge(nodes[i], nodes[j], k);
        }
        g
    }

    fn find_meta_band(&self, g: &DiGraph<usize, usize>) -> Option<MetaBand> {
        let arrows = &self.bridge_data().between_bands;
        for e in g.edge_indices() {
            let (s, t) = g.edge_endpoints(e).unwrap();
            // shortest path back from t to s closes a cycle through e
            let mut prev: HashMap<NodeIndex, (NodeIndex, usize)> = HashMap::new();
            let mut queue = VecDeque::from([t]);
            let mut seen = HashSet::from([t]);
            let mut found = s == t;
            while let Some(x) = queue.pop_front() {
                if x == s {
                    found = true;
                    break;
                }
                for er in g.edges(x) {
                    use petgraph::visit::EdgeRef;
                    let y = er.target();
                    if seen.insert(y) {
                        prev.insert(y, (x, *er.weight()));
                        queue.push_back(y);
                    }
                }
            }
            if !found {
                continue;
            }
            let mut bands = vec![g[s]];
            let mut labels = vec![arrows[g[e]].label.clone()];
            let mut path = Vec::new();
            let mut cur = s;
            while cur != t {
                let (p, k) = prev[&cur];
                path.push((g[cur], k));
                cur = p;
            }
            bands.push(g[t]);
            for (b, k) in path.into_iter().rev() {
                labels.push(arrows[k].label.clone());
                if b != g[s] {
                    bands.push(b);
                }
            }
            if bands.last() == Some(&g[s]) && bands.len() > 1 {
                bands.pop();
            }
            return Some(MetaBand { bands, labels });
        }
        None
    }

    pub fn classify_algebra(&self) -> AlgebraClassification {
        let g = self.band_graph();
        let n = g.node_count();
        let sccs = tarjan_scc(&g);
        let on_cycle: HashSet<NodeIndex> = sccs
            .iter()
            .filter(|c| c.len() > 1 || g.contains_edge(c[0], c[0]))
            .flatten()
            .copied()
            .collect();
        let meta_band = self.find_meta_band(&g);
        let domestic = meta_band.is_none();

        let mut uf = UnionFind::new(n);
        for e in g.edge_indices() {
            let (s, t) = g.edge_endpoints(e).unwrap();
            uf.union(s.index(), t.index());
        }
        let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            components.entry(uf.find(i)).or_default().push(i);
        }
        let scc_of: HashMap<usize, usize> = sccs
            .iter()
            .enumerate()
            .flat_map(|(k, c)| c.iter().map(move |x| (x.index(), k)))
            .collect();
        let mut witnesses = BTreeMap::new();

        let small = components.values().find(|c| c.len() < 2);
        let not_strong = components
            .values()
            .find(|c| c.iter().any(|x| scc_of[x] != scc_of[&c[0]]));
        let meta_union_cyclic = n > 0 && small.is_none() && not_strong.is_none();

        let mut bad_arrow = None;
        for e in g.edge_indices() {
            let (s, t) = g.edge_endpoints(e).unwrap();
            let from_cycle = on_cycle
                .iter()
                .any(|&c| has_path_connecting(&g, c, s, None));
            let to_cycle = on_cycle
                .iter()
                .any(|&c| has_path_connecting(&g, t, c, None));
            if !(from_cycle && to_cycle) {
                bad_arrow = Some(g[e]);
                break;
            }
        }
        let meta_torsion_free = n > 0 && small.is_none() && bad_arrow.is_none();

        match &meta_band {
            Some(m) => {
                witnesses.insert("meta_band".to_string(), self.render_meta_band(m));
            }
            None => {
                witnesses.insert(
                    "domestic".to_string(),
                    "bridge quiver has no cycle".to_string(),
                );
            }
        }
        if let Some(c) = small {
            witnesses.insert(
                "small_component".to_string(),
                self.render(&self.prime_bands()[c[0]].rep),
            );
        }
        if let Some(c) = not_strong {
            witnesses.insert(
                "not_strongly_connected".to_string(),
                self.render(&self.prime_bands()[c[0]].rep),
            );
        }
        if let Some(k) = bad_arrow {
            let a = &self.bridge_data().between_bands[k];
            witnesses.insert(
                "non_extendable_arrow".to_string(),
                format!(
                    "{} -[{}]-> {}",
                    self.render_vertex(&a.source),
                    self.render(&a.label),
                    self.render_vertex(&a.target)
                ),
            );
        }
        let tf = self.is_torsion_free();
        if let Some(w) = tf.witnesses.first() {
            witnesses.insert(
                "torsion".to_string(),
                format!(
                    "{}({}) = {} cannot be extended",
                    w.op,
                    self.render(&w.word),
                    self.render(&w.image)
                ),
            );
        }
        AlgebraClassification {
            domestic,
            torsion_free: tf.torsion_free,
            meta_union_cyclic,
            meta_torsion_free,
            witnesses,
            meta_band,
        }
    }

    pub fn render_meta_band(&self, m: &MetaBand) -> String {
        let mut s = String::new();
        for (k, b) in m.bands.iter().enumerate() {
            s.push_str(&self.render(&self.prime_bands()[*b].rep));
            s.push_str(&format!(" -[{}]-> ", self.render(&m.labels[k])));
        }
        s.push_str(&self.render(&self.prime_bands()[m.bands[0]].rep));
        s
    }

    // ---- generation ----

    fn band_power(&self, index: usize, m: i64) -> Vec<Syllable> {
        let b = self.prime_bands()[index].syllables();
        if m < 0 {
            invert_syllables(b)
        } else {
            b.repeat(m as usize)
        }
    }

    /// Pushes `piece` (lowest syllable first) onto `stack`, cancelling inverse pairs.
    fn reduce_onto(stack: &mut Vec<Syllable>, piece: &[Syllable]) {
        for &s in piece {
            if stack.last() == Some(&s.inv()) {
                stack.pop();
            } else {
                stack.push(s);
            }
        }
    }

    /// The string spelled by a path, freely reduced.
    pub fn generate_string(&self, p: &PathSpec) -> Result<Word> {
        let n = p.arrows.len();
        if n == 0 {
            return Err(Error::BadPath("empty path".into()));
        }
        if p.exponents.len() + 1 != n {
            return Err(Error::BadPath(format!(
                "{} arrows need {} exponents, got {}",
                n,
                n - 1,
                p.exponents.len()
            )));
        }
        let start = p.arrows[0].source;
        let end = p.arrows[n - 1].target;
        let (
            Some(BridgeVertex::Lazy {
                vertex: v0,
                sign: i0,
            }),
            Some(BridgeVertex::Lazy {
                vertex: v1,
                sign: i1,
            }),
        ) = (Some(start), Some(end))
        else {
            return Err(Error::BadPath(
                "a path must start and end at lazy vertices".into(),
            ));
        };
        for k in 0..n - 1 {
            if p.arrows[k].target != p.arrows[k + 1].source || !p.arrows[k].target.is_band() {
                return Err(Error::BadPath(format!(
                    "arrows {k} and {} do not meet at a band",
                    k + 1
                )));
            }
            if p.exponents[k] < -1 {
                return Err(Error::BadPath("exponents must be at least -1".into()));
            }
        }
        let mut stack = Vec::new();
        Self::reduce_onto(&mut stack, p.arrows[0].label.syllables());
        for k in 1..n {
            let band = p.arrows[k].source.band().unwrap();
            Self::reduce_onto(&mut stack, &self.band_power(band, p.exponents[k - 1]));
            Self::reduce_onto(&mut stack, p.arrows[k].label.syllables());
        }
        if stack.is_empty() {
            return if v0 == v1 && i0 == i1 {
                Ok(Word::lazy(v0, i0))
            } else {
                Err(Error::NotAString)
            };
        }
        let w = Word::Path(stack);
        if self.is_string(&w) && self.lazy_right_ok(&w, v0, i0) && self.lazy_left_ok(v1, i1, &w) {
            Ok(w)
        } else {
            Err(Error::NotAString)
        }
    }

    fn path_arrows(&self, include_weak: bool) -> Vec<BridgeArrow> {
        let d = self.bridge_data();
        d.half
            .iter()
            .chain(d.between_bands.iter().filter(|a| !a.is_trivial()))
            .chain(d.reverse_half.iter())
            .chain(d.zero.iter())
            .filter(|a| include_weak || !a.weak_only)
            .cloned()
            .collect()
    }

    fn junk_bound(&self) -> usize {
        let maxb = self
            .prime_bands()
            .iter()
            .map(|b| b.length)
            .max()
            .unwrap_or(0);
        let maxl = self
            .band_free()
            .strings
            .iter()
            .map(Word::len)
            .max()
            .unwrap_or(0);
        2 * (maxb + maxl) + 2
    }

    /// One path of the extended bridge quiver generating `u`: the first
    /// found by breadth-first search over (vertex, reduced word) states,
    /// trying non-weak arrows before weak ones.
    pub fn find_generating_path(&self, u: &Word) -> Option<PathSpec> {
        self.search_paths(u, false, 1)
            .into_iter()
            .next()
            .or_else(|| self.search_paths(u, true, 1).into_iter().next())
    }

    /// Up to `limit` distinct generating paths with at most `max_arrows` arrows.
    pub fn generating_paths(&self, u: &Word, max_arrows: usize, limit: usize) -> Vec<PathSpec> {
        let arrows = self.path_arrows(false);
        let target = u.syllables().to_vec();
        let start = BridgeVertex::Lazy {
            vertex: self.source(u),
            sign: -self.sigma(u),
        };
        let start = if let Word::Lazy { vertex, sign } = u {
            BridgeVertex::Lazy {
                vertex: *vertex,
                sign: *sign,
            }
        } else {
            start
        };
        let end = self.left_base(u);
        let mut out = Vec::new();
        let mut path = Vec::new();
        let mut exps = Vec::new();
        self.enumerate_paths(
            &arrows,
            start,
            &end,
            &target,
            Vec::new(),
            max_arrows,
            limit,
            &mut path,
            &mut exps,
            &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_paths(
        &self,
        arrows: &[BridgeArrow],
        at: BridgeVertex,
        end: &Word,
        target: &[Syllable],
        stack: Vec<Syllable>,
        max_arrows: usize,
        limit: usize,
        path: &mut Vec<usize>,
        exps: &mut Vec<i64>,
        out: &mut Vec<PathSpec>,
    ) {
        if out.len() >= limit || path.len() >= max_arrows {
            return;
        }
        let k = self.junk_bound();
        for (idx, a) in arrows.iter().enumerate() {
            if a.source != at {
                continue;
            }
            let mut s1 = stack.clone();
            Self::reduce_onto(&mut s1, a.label.syllables());
            match a.target {
                BridgeVertex::Lazy { .. } => {
                    let lazy_end = matches!(a.target, BridgeVertex::Lazy { vertex, sign } if Word::lazy(vertex, sign) == *end);
                    if s1 == target && lazy_end {
                        path.push(idx);
                        out.push(PathSpec {
                            arrows: path.iter().map(|&i| arrows[i].clone()).collect(),
                            exponents: exps.clone(),
                        });
                        path.pop();
                        if out.len() >= limit {
                            return;
                        }
                    }
                }
                BridgeVertex::Band { index } => {
                    let b = self.prime_bands()[index].length;
                    let max_m = (target.len() / b + 2) as i64;
                    for m in -1..=max_m {
                        let mut s2 = s1.clone();
                        Self::reduce_onto(&mut s2, &self.band_power(index, m));
                        let common = s2.iter().zip(target).take_while(|(x, y)| x == y).count();
                        if s2.len() - common > k {
                            continue;
                        }
                        path.push(idx);
                        exps.push(m);
                        self.enumerate_paths(
                            arrows, a.target, end, target, s2, max_arrows, limit, path, exps, out,
                        );
                        path.pop();
                        exps.pop();
                    }
                }
            }
        }
    }

    fn search_paths(&self, u: &Word, include_weak: bool, limit: usize) -> Vec<PathSpec> {
        let arrows = self.path_arrows(include_weak);
        let target = u.syllables().to_vec();
        let start = match u {
            Word::Lazy { vertex, sign } => BridgeVertex::Lazy {
                vertex: *vertex,
                sign: *sign,
            },
            _ => BridgeVertex::Lazy {
                vertex: self.source(u),
                sign: -self.sigma(u),
            },
        };
        let end = self.left_base(u);
        let k = self.junk_bound();
        let max_len = target.len() + k;

        // node: (vertex, reduced word, parent, arrow index, exponent)
        let mut nodes: Vec<(BridgeVertex, Vec<Syllable>, usize, usize, i64)> =
            vec![(start, Vec::new(), usize::MAX, usize::MAX, 0)];
        let mut seen: HashSet<(BridgeVertex, Vec<Syllable>)> = HashSet::new();
        seen.insert((start, Vec::new()));
        let mut queue = VecDeque::from([0usize]);
        let mut out = Vec::new();
        while let Some(ni) = queue.pop_front() {
            let (at, stack) = (nodes[ni].0, nodes[ni].1.clone());
            for (idx, a) in arrows.iter().enumerate() {
                if a.source != at {
                    continue;
                }
                let mut s1 = stack.clone();
                Self::reduce_onto(&mut s1, a.label.syllables());
                match a.target {
                    BridgeVertex::Lazy { vertex, sign } => {
                        if s1 == target && Word::lazy(vertex, sign) == end {
                            let mut arrows_rev = vec![a.clone()];
                            let mut exps_rev = Vec::new();
                            let mut cur = ni;
                            while nodes[cur].2 != usize::MAX {
                                exps_rev.push(nodes[cur].4);
                                arrows_rev.push(arrows[nodes[cur].3].clone());
                                cur = nodes[cur].2;
                            }
                            arrows_rev.reverse();
                            exps_rev.reverse();
                            out.push(PathSpec {
                                arrows: arrows_rev,
                                exponents: exps_rev,
                            });
                            if out.len() >= limit {
                                return out;
                            }
                        }
                    }
                    BridgeVertex::Band { index } => {
                        let b = self.prime_bands()[index].length;
                        let max_m = (target.len() / b + 2) as i64;
                        for m in -1..=max_m {
                            let mut s2 = s1.clone();
                            Self::reduce_onto(&mut s2, &self.band_power(index, m));
                            let common = s2.iter().zip(&target).take_while(|(x, y)| x == y).count();
                            if s2.len() - common > k || s2.len() > max_len {
                                continue;
                            }
                            if seen.insert((a.target, s2.clone())) {
                                nodes.push((a.target, s2, ni, idx, m));
                                queue.push_back(nodes.len() - 1);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn render_path(&self, p: &PathSpec) -> String {
        let mut s = self.render_vertex(&p.arrows[0].source);
        for (k, a) in p.arrows.iter().enumerate() {
            s.push_str(&format!(
                " -[{}]-> {}",
                self.render(&a.label),
                self.render_vertex(&a.target)
            ));
            if k < p.exponents.len() {
                s.push_str(&format!("^{}", p.exponents[k]));
            }
        }
        s
    }

    // ---- extendability ----

    fn bridge_path(&self, from: usize, to: usize) -> Option<Vec<(usize, Word)>> {
        if from == to {
            return Some(Vec::new());
        }
        let arrows = &self.bridge_data().between_bands;
        let mut prev: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = BTreeSet::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for (k, a) in arrows.iter().enumerate() {
                if a.weak_only || a.is_trivial() || a.source.band() != Some(x) {
                    continue;
                }
                let y = a.target.band().unwrap();
                if seen.insert(y) {
                    prev.insert(y, (x, k));
                    queue.push_back(y);
                }
            }
        }
        if !prev.contains_key(&to) {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, k) = prev[&cur];
            out.push((cur, arrows[k].label.clone()));
            cur = p;
        }
        out.reverse();
        Some(out)
    }

    /// Whether `u` lies inside some band, found by closing a string
    /// `b v u v' b'` along a bridge path from `b` to `b'`.
    pub fn is_extendable(&self, u: &Word) -> Option<ExtendabilityWitness> {
        let us = u.syllables();
        let bands = self.prime_bands();
        let catalog = &self.band_free().strings;
        let attach = |lower: &[Syllable], v: &Word| -> Option<Vec<Syllable>> {
            match v {
                Word::Lazy { vertex, sign } => {
                    let top = *lower.last()?;
                    (self.syl_target(top) == *vertex && self.syl_epsilon(top) == *sign)
                        .then(|| lower.to_vec())
                }
                Word::Path(s) => self.join(s, lower),
            }
        };
        for (j, b2) in bands.iter().enumerate() {
            for v2 in catalog {
                let Some(low) = attach(b2.syllables(), v2) else {
                    continue;
                };
                let low = if us.is_empty() {
                    if let Word::Lazy { vertex, sign } = u {
                        if !self.lazy_left_ok(*vertex, *sign, &Word::Path(low.clone())) {
                            continue;
                        }
                    }
                    low
                } else {
                    match self.join(us, &low) {
                        Some(w) => w,
                        None => continue,
                    }
                };
                for v1 in catalog {
                    let Some(mid) = attach(&low, v1) else {
                        continue;
                    };
                    for (i, b1) in bands.iter().enumerate() {
                        if self.join(b1.syllables(), &mid).is_none() {
                            continue;
                        }
                        let Some(path) = self.bridge_path(i, j) else {
                            continue;
                        };
                        for p in 1..=3 {
                            let mut c = b1.syllables().repeat(p);
                            for (band, label) in &path {
                                c.extend_from_slice(label.syllables());
                                if *band != j {
                                    c.extend_from_slice(bands[*band].syllables());
                                }
                            }
                            c.extend_from_slice(&mid);
                            if self.is_band_syllables(&c) {
                                return Some(ExtendabilityWitness {
                                    band: c,
                                    from: i,
                                    to: j,
                                });
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

/// Whether `w` occurs as a subword of some power of the cyclic word `c`.
pub fn occurs_cyclically(w: &[Syllable], c: &[Syllable]) -> bool {
    if w.is_empty() {
        return true;
    }
    let reps = w.len() / c.len() + 2;
    let long = c.repeat(reps);
    long.windows(w.len()).any(|x| x == w)
}

/// All rotations of `b`.
pub fn rotations(b: &[Syllable]) -> Vec<Vec<Syllable>> {
    (0..b.len()).map(|k| rotation(b, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn labels(a: &StringAlgebra, arrows: &[BridgeArrow]) -> Vec<(String, bool)> {
        let mut v: Vec<(String, bool)> = arrows
            .iter()
            .map(|x| (a.render(&x.label), x.weak_only))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn gp23_half_bridges_into_bands() {
        let g = fixtures::gp23();
        let v = 0;
        let ab = g.band_index(&g.parse_word("a b'").unwrap()).unwrap();
        let ab2 = g.band_index(&g.parse_word("a b' b'").unwrap()).unwrap();
        let ba = g.band_index(&g.parse_word("b a'").unwrap()).unwrap();
        let b2a = g.band_index(&g.parse_word("b b a'").unwrap()).unwrap();
        let to = |sign, band| -> Vec<BridgeArrow> {
            g.half_bridges_from(v, sign, true)
                .into_iter()
                .filter(|x| x.target == BridgeVertex::Band { index: band })
                .collect()
        };
        assert_eq!(
            labels(&g, &to(Sign::Minus, ab)),
            [
                ("1(v,-)".into(), false),
                ("a".into(), false),
                ("b'".into(), true)
            ]
        );
        assert_eq!(
            labels(&g, &to(Sign::Minus, ab2)),
            [("1(v,-)".into(), false), ("a".into(), false)]
        );
        let expect = [
            ("1(v,+)".into(), false),
            ("b".into(), false),
            ("b b".into(), true),
        ];
        assert_eq!(labels(&g, &to(Sign::Plus, ba)), expect);
        assert_eq!(labels(&g, &to(Sign::Plus, b2a)), expect);
    }

    #[test]
    fn gp23_bridges() {
        let g = fixtures::gp23();
        let ab = g.band_index(&g.parse_word("a b'").unwrap()).unwrap();
        let ab2 = g.band_index(&g.parse_word("a b' b'").unwrap()).unwrap();
        let loops = labels(&g, &g.bridges_between(ab, ab));
        assert!(loops.contains(&("b'".into(), false)));
        assert!(loops.contains(&("1(v,-)".into(), false)));
        assert_eq!(
            labels(&g, &g.bridges_between(ab2, ab)),
            [("1(v,-)".into(), false), ("b'".into(), false)]
        );
        assert_eq!(
            labels(&g, &g.bridges_between(ab, ab2)),
            [("1(v,-)".into(), false)]
        );
    }

    #[test]
    fn classification_of_examples() {
        let l = fixtures::lambda2();
        let c = l.classify_algebra();
        assert!(c.domestic && !c.meta_union_cyclic && !c.meta_torsion_free);
        let g = fixtures::gp23();
        let c = g.classify_algebra();
        assert!(!c.domestic);
        assert!(c.meta_band.is_some());
        assert!(c.meta_union_cyclic);
    }

    #[test]
    fn negative_exponent_generation() {
        let n = fixtures::negative_power();
        let band = n.band_index(&n.parse_word("c d' b'").unwrap()).unwrap();
        let half = n
            .bridge_data()
            .half
            .iter()
            .find(|a| {
                n.render(&a.label) == "c d' a" && a.target == BridgeVertex::Band { index: band }
            })
            .cloned()
            .unwrap();
        let rev = n
            .bridge_data()
            .reverse_half
            .iter()
            .find(|a| {
                n.render(&a.label) == "e b'" && a.source == BridgeVertex::Band { index: band }
            })
            .cloned()
            .unwrap();
        let p = PathSpec {
            arrows: vec![half, rev],
            exponents: vec![-1],
        };
        assert_eq!(n.render(&n.generate_string(&p).unwrap()), "e a");
    }

    #[test]
    fn two_paths_generate_b_inverse() {
        let g = fixtures::gp23();
        let b = g.parse_word("b'").unwrap();
        let paths = g.generating_paths(&b, 3, 10);
        assert!(paths.len() >= 2, "{}", paths.len());
        for p in &paths {
            assert_eq!(g.generate_string(p).unwrap(), b);
        }
        let p = g.find_generating_path(&b).unwrap();
        assert_eq!(g.generate_string(&p).unwrap(), b);
    }

    #[test]
    fn extendability() {
        let g = fixtures::gp23();
        for u in g.enumerate_strings(5, false) {
            let w = g
                .is_extendable(&u)
                .unwrap_or_else(|| panic!("{}", g.render(&u)));
            assert!(g.is_band_syllables(&w.band));
            assert!(occurs_cyclically(u.syllables(), &w.band));
        }
        let l = fixtures::lambda2();
        assert!(l.is_extendable(&l.parse_word("c").unwrap()).is_none());
    }
}
