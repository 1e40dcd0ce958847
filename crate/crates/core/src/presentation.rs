//! Quiver presentations of string algebras: the `.sqa` text format,
//! validation of the string-algebra axioms and the sign functions
//! `sigma` and `epsilon`.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::Neg;

use petgraph::algo::is_cyclic_directed;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A value in `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// `sigma` and `epsilon`, indexed by arrow position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignAssignment {
    pub sigma: Vec<Sign>,
    pub epsilon: Vec<Sign>,
}

/// A finite quiver with monomial relations.
///
/// Relations are kept in the written order: `c b` is the composite "c after b".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverPresentation {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<usize>>,
    pub signs: Option<SignAssignment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Monomial,
    Finiteness,
    OutDegree,
    InDegree,
    UniqueSuccessor,
    UniquePredecessor,
    SignConsistency,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Monomial => "monomial",
            Axiom::Finiteness => "finiteness",
            Axiom::OutDegree => "out-degree",
            Axiom::InDegree => "in-degree",
            Axiom::UniqueSuccessor => "unique-successor",
            Axiom::UniquePredecessor => "unique-predecessor",
            Axiom::SignConsistency => "sign-consistency",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub locus: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub is_string_algebra: bool,
    pub violations: Vec<Violation>,
}

impl QuiverPresentation {
    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// Relations as arrow sequences in application order (first applied first).
    pub fn relations_applied(&self) -> Vec<Vec<usize>> {
        self.relations
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect()
    }

    fn relation_text(&self, rel: &[usize]) -> String {
        rel.iter()
            .map(|&a| self.arrows[a].id.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Canonical `.sqa` rendering; `parse_presentation` inverts it.
    pub fn to_sqa(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("algebra {}\n", self.name));
        out.push_str(&format!("vertices: {}\n", self.vertices.join(" ")));
        for a in &self.arrows {
            out.push_str(&format!(
                "arrow {}: {} -> {}\n",
                a.id, self.vertices[a.source], self.vertices[a.target]
            ));
        }
        if !self.relations.is_empty() {
            let rels: Vec<String> = self
                .relations
                .iter()
                .map(|r| self.relation_text(r))
                .collect();
            out.push_str(&format!("relations: {}\n", rels.join("; ")));
        }
        if let Some(signs) = &self.signs {
            let fmt_map = |v: &[Sign]| {
                self.arrows
                    .iter()
                    .zip(v)
                    .map(|(a, s)| format!("{}={}", a.id, s))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            out.push_str(&format!("sigma: {}\n", fmt_map(&signs.sigma)));
            out.push_str(&format!("epsilon: {}\n", fmt_map(&signs.epsilon)));
        }
        out
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '.')
}

/// Parses the `.sqa` presentation format.
pub fn parse_presentation(text: &str) -> Result<QuiverPresentation> {
    let mut name: Option<String> = None;
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows: Vec<Arrow> = Vec::new();
    // (line, column, raw path) resolved once all arrows are known
    let mut raw_relations: Vec<(usize, usize, String)> = Vec::new();
    let mut raw_signs: [Option<(usize, usize, String)>; 2] = [None, None];

    for (lineno, raw_line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = raw_line.len() - raw_line.trim_start().len() + 1;

        if let Some(rest) = trimmed.strip_prefix("algebra") {
            let n = rest.trim();
            if !rest.starts_with(char::is_whitespace) || !is_ident(n) {
                return Err(syntax(line_no, col, "expected `algebra <name>`"));
            }
            name = Some(n.to_string());
        } else if let Some(rest) = trimmed.strip_prefix("vertices:") {
            let vs: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if vs.is_empty() {
                return Err(Error::NoVertices);
            }
            for v in &vs {
                if !is_ident(v) {
                    return Err(syntax(line_no, col, format!("bad vertex id `{v}`")));
                }
            }
            vertices = Some(vs);
        } else if let Some(rest) = trimmed.strip_prefix("arrow ") {
            let vs = vertices
                .as_ref()
                .ok_or_else(|| syntax(line_no, col, "arrow declared before `vertices:`"))?;
            let (id, ends) = rest
                .split_once(':')
                .ok_or_else(|| syntax(line_no, col, "expected `arrow <id>: <src> -> <tgt>`"))?;
            let id = id.trim();
            if !is_ident(id) {
                return Err(syntax(line_no, col, format!("bad arrow id `{id}`")));
            }
            let (src, tgt) = ends
                .split_once("->")
                .ok_or_else(|| syntax(line_no, col + rest.len(), "expected `->`"))?;
            let (src, tgt) = (src.trim(), tgt.trim());
            let source = vs
                .iter()
                .position(|v| v == src)
                .ok_or_else(|| Error::UnknownVertex(src.to_string()))?;
            let target = vs
                .iter()
                .position(|v| v == tgt)
                .ok_or_else(|| Error::UnknownVertex(tgt.to_string()))?;
            arrows.push(Arrow {
                id: id.to_string(),
                source,
                target,
            });
        } else if let Some(rest) = trimmed.strip_prefix("relations:") {
            let offset = col + "relations:".len();
            for path in rest.split(';') {
                let p = path.trim();
                if !p.is_empty() {
                    raw_relations.push((line_no, offset, p.to_string()));
                }
            }
        } else if let Some(rest) = trimmed.strip_prefix("sigma:") {
            raw_signs[0] = Some((line_no, col, rest.to_string()));
        } else if let Some(rest) = trimmed.strip_prefix("epsilon:") {
            raw_signs[1] = Some((line_no, col, rest.to_string()));
        } else {
            return Err(syntax(
                line_no,
                col,
                format!("unrecognised directive `{trimmed}`"),
            ));
        }
    }

    let vertices = vertices.ok_or(Error::NoVertices)?;
    let name = name.unwrap_or_else(|| "unnamed".to_string());

    let mut seen = HashSet::new();
    for id in vertices.iter().chain(arrows.iter().map(|a| &a.id)) {
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateId(id.clone()));
        }
    }

    let find_arrow = |id: &str| {
        arrows
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    };

    let mut relations: Vec<Vec<usize>> = Vec::new();
    for (_, _, raw) in &raw_relations {
        let path: Vec<usize> = raw
            .split_whitespace()
            .map(find_arrow)
            .collect::<Result<_>>()?;
        // written order: path[i] is applied after path[i + 1]
        for w in path.windows(2) {
            if arrows[w[0]].source != arrows[w[1]].target {
                return Err(Error::NotComposable(raw.clone()));
            }
        }
        if !relations.contains(&path) {
            relations.push(path);
        }
    }

    let signs = match raw_signs {
        [None, None] => None,
        [Some(s), Some(e)] => {
            let parse_map = |(line, col, raw): &(usize, usize, String)| -> Result<Vec<Sign>> {
                let mut out: Vec<Option<Sign>> = vec![None; arrows.len()];
                for item in raw.split_whitespace() {
                    let (id, val) = item.split_once('=').ok_or_else(|| {
                        syntax(*line, *col, format!("expected `id=±1`, got `{item}`"))
                    })?;
                    let idx = find_arrow(id)?;
                    let v: i64 = val
                        .parse()
                        .map_err(|_| syntax(*line, *col, format!("bad sign `{val}`")))?;
                    out[idx] = Some(Sign::from_int(v).ok_or_else(|| {
                        syntax(*line, *col, format!("sign must be 1 or -1, got {v}"))
                    })?);
                }
                out.into_iter()
                    .enumerate()
                    .map(|(i, s)| {
                        s.ok_or_else(|| {
                            syntax(*line, *col, format!("missing sign for `{}`", arrows[i].id))
                        })
                    })
                    .collect()
            };
            Some(SignAssignment {
                sigma: parse_map(&s)?,
                epsilon: parse_map(&e)?,
            })
        }
        [Some((l, c, _)), None] | [None, Some((l, c, _))] => {
            return Err(syntax(
                l,
                c,
                "`sigma:` and `epsilon:` must be given together",
            ))
        }
    };

    Ok(QuiverPresentation {
        name,
        vertices,
        arrows,
        relations,
        signs,
    })
}

/// Relation-free directed paths of length `k`, plus the transition
/// structure used to decide finiteness.
fn relation_free(
    p: &QuiverPresentation,
    path: &[usize],
    rels: &HashSet<Vec<usize>>,
    max_rel: usize,
) -> bool {
    // only suffixes ending at the last arrow need checking when `path` grows by one
    let n = path.len();
    (1..=max_rel.min(n)).all(|k| !rels.contains(&path[n - k..]))
        && path
            .windows(2)
            .all(|w| p.arrows[w[0]].target == p.arrows[w[1]].source)
}

/// Whether infinitely many relation-avoiding directed paths exist, decided
/// on the automaton whose states are relation-free paths of length
/// `max(L - 1, 1)` (`L` = longest relation).
fn has_infinite_paths(p: &QuiverPresentation) -> Option<Vec<usize>> {
    let rels: HashSet<Vec<usize>> = p.relations_applied().into_iter().collect();
    let max_rel = rels.iter().map(Vec::len).max().unwrap_or(1);
    let k = max_rel.saturating_sub(1).max(1);

    // grow all relation-free paths of length k
    let mut layer: Vec<Vec<usize>> = (0..p.arrows.len())
        .map(|a| vec![a])
        .filter(|path| relation_free(p, path, &rels, max_rel))
        .collect();
    for _ in 1..k {
        let mut next = Vec::new();
        for path in &layer {
            let last = *path.last().unwrap();
            for (a, arrow) in p.arrows.iter().enumerate() {
                if arrow.source == p.arrows[last].target {
                    let mut q = path.clone();
                    q.push(a);
                    if relation_free(p, &q, &rels, max_rel) {
                        next.push(q);
                    }
                }
            }
        }
        layer = next;
    }

    let mut graph = DiGraph::<Vec<usize>, ()>::new();
    let mut index = BTreeMap::new();
    for path in &layer {
        index.insert(path.clone(), graph.add_node(path.clone()));
    }
    for path in &layer {
        let last = *path.last().unwrap();
        for (a, arrow) in p.arrows.iter().enumerate() {
            if arrow.source != p.arrows[last].target {
                continue;
            }
            let mut q = path.clone();
            q.push(a);
            if !relation_free(p, &q, &rels, max_rel) {
                continue;
            }
            let tail = q[q.len() - k..].to_vec();
            if let Some(&t) = index.get(&tail) {
                graph.add_edge(index[path], t, ());
            }
        }
    }
    if !is_cyclic_directed(&graph) {
        return None;
    }
    // report a state lying on a cycle
    let sccs = petgraph::algo::tarjan_scc(&graph);
    sccs.into_iter()
        .find(|c| c.len() > 1 || graph.contains_edge(c[0], c[0]))
        .map(|c| graph[c[0]].clone())
}

/// Checks the string-algebra axioms; all failures are collected.
pub fn validate_string_algebra(p: &QuiverPresentation) -> ValidationReport {
    let mut violations = Vec::new();
    let id = |a: usize| p.arrows[a].id.as_str();

    if let Some(cycle) = has_infinite_paths(p) {
        let walk: Vec<&str> = cycle.iter().rev().map(|&a| id(a)).collect();
        violations.push(Violation {
            axiom: Axiom::Finiteness,
            locus: format!("relation-free paths repeat through `{}`", walk.join(" ")),
        });
    }

    for (v, name) in p.vertices.iter().enumerate() {
        let out = p.arrows.iter().filter(|a| a.source == v).count();
        let inc = p.arrows.iter().filter(|a| a.target == v).count();
        if out > 2 {
            violations.push(Violation {
                axiom: Axiom::OutDegree,
                locus: format!("vertex {name} has {out} outgoing arrows"),
            });
        }
        if inc > 2 {
            violations.push(Violation {
                axiom: Axiom::InDegree,
                locus: format!("vertex {name} has {inc} incoming arrows"),
            });
        }
    }

    let rels: HashSet<Vec<usize>> = p.relations.iter().cloned().collect();
    for (b, arrow) in p.arrows.iter().enumerate() {
        let succ: Vec<usize> = (0..p.arrows.len())
            .filter(|&c| p.arrows[c].source == arrow.target && !rels.contains(&vec![c, b]))
            .collect();
        if succ.len() > 1 {
            violations.push(Violation {
                axiom: Axiom::UniqueSuccessor,
                locus: format!(
                    "arrow {} continues with {}",
                    id(b),
                    succ.iter()
                        .map(|&c| id(c))
                        .collect::<Vec<_>>()
                        .join(" and ")
                ),
            });
        }
        let pred: Vec<usize> = (0..p.arrows.len())
            .filter(|&a| p.arrows[a].target == arrow.source && !rels.contains(&vec![b, a]))
            .collect();
        if pred.len() > 1 {
            violations.push(Violation {
                axiom: Axiom::UniquePredecessor,
                locus: format!(
                    "arrow {} is preceded by {}",
                    id(b),
                    pred.iter()
                        .map(|&c| id(c))
                        .collect::<Vec<_>>()
                        .join(" and ")
                ),
            });
        }
    }

    if let Some(signs) = &p.signs {
        for c in sign_constraints(p) {
            let (x, y) = (c.left, c.right);
            if signs.get(x) != -signs.get(y) {
                violations.push(Violation {
                    axiom: Axiom::SignConsistency,
                    locus: format!("{} must equal -{} ({})", x.render(p), y.render(p), c.reason),
                });
            }
        }
    }

    ValidationReport {
        is_string_algebra: violations.is_empty(),
        violations,
    }
}

/// One of the unknowns `sigma(a)` / `epsilon(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct SignVar {
    arrow: usize,
    epsilon: bool,
}

impl SignVar {
    fn render(self, p: &QuiverPresentation) -> String {
        let f = if self.epsilon { "epsilon" } else { "sigma" };
        format!("{f}({})", p.arrows[self.arrow].id)
    }
}

impl SignAssignment {
    fn get(&self, v: SignVar) -> Sign {
        if v.epsilon {
            self.epsilon[v.arrow]
        } else {
            self.sigma[v.arrow]
        }
    }
}

/// `left = -right`
struct Constraint {
    left: SignVar,
    right: SignVar,
    reason: &'static str,
}

fn sign_constraints(p: &QuiverPresentation) -> Vec<Constraint> {
    let rels: HashSet<Vec<usize>> = p.relations.iter().cloned().collect();
    let n = p.arrows.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x < y && p.arrows[x].source == p.arrows[y].source {
                out.push(Constraint {
                    left: SignVar {
                        arrow: x,
                        epsilon: false,
                    },
                    right: SignVar {
                        arrow: y,
                        epsilon: false,
                    },
                    reason: "common source",
                });
            }
            if x < y && p.arrows[x].target == p.arrows[y].target {
                out.push(Constraint {
                    left: SignVar {
                        arrow: x,
                        epsilon: true,
                    },
                    right: SignVar {
                        arrow: y,
                        epsilon: true,
                    },
                    reason: "common target",
                });
            }
            // x after y
            if p.arrows[x].source == p.arrows[y].target && !rels.contains(&vec![x, y]) {
                out.push(Constraint {
                    left: SignVar {
                        arrow: x,
                        epsilon: false,
                    },
                    right: SignVar {
                        arrow: y,
                        epsilon: true,
                    },
                    reason: "composable pair outside the relations",
                });
            }
        }
    }
    out
}

/// Returns the sign functions: the supplied ones after checking them, or
/// a solution of the parity constraints obtained by propagation. Each
/// constraint component is seeded with `+1` at its least variable
/// (lexicographically least arrow id, `sigma` before `epsilon`).
pub fn derive_signs(p: &QuiverPresentation) -> Result<SignAssignment> {
    let constraints = sign_constraints(p);
    if let Some(signs) = &p.signs {
        for c in &constraints {
            if signs.get(c.left) != -signs.get(c.right) {
                return Err(Error::InconsistentSigns(format!(
                    "{} and {} ({})",
                    c.left.render(p),
                    c.right.render(p),
                    c.reason
                )));
            }
        }
        return Ok(signs.clone());
    }

    let mut adjacency: BTreeMap<SignVar, Vec<SignVar>> = BTreeMap::new();
    for c in &constraints {
        adjacency.entry(c.left).or_default().push(c.right);
        adjacency.entry(c.right).or_default().push(c.left);
    }
    let mut vars: Vec<SignVar> = (0..p.arrows.len())
        .flat_map(|a| {
            [
                SignVar {
                    arrow: a,
                    epsilon: false,
                },
                SignVar {
                    arrow: a,
                    epsilon: true,
                },
            ]
        })
        .collect();
    vars.sort_by(|x, y| {
        (p.arrows[x.arrow].id.as_str(), x.epsilon).cmp(&(p.arrows[y.arrow].id.as_str(), y.epsilon))
    });

    let mut value: BTreeMap<SignVar, Sign> = BTreeMap::new();
    let mut parent: BTreeMap<SignVar, SignVar> = BTreeMap::new();
    for &seed in &vars {
        if value.contains_key(&seed) {
            continue;
        }
        value.insert(seed, Sign::Plus);
        let mut queue = VecDeque::from([seed]);
        while let Some(x) = queue.pop_front() {
            let vx = value[&x];
            for &y in adjacency.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                match value.get(&y) {
                    None => {
                        value.insert(y, -vx);
                        parent.insert(y, x);
                        queue.push_back(y);
                    }
                    Some(&vy) if vy == vx => {
                        let mut cycle = BTreeSet::new();
                        for mut z in [x, y] {
                            cycle.insert(z.render(p));
                            while let Some(&q) = parent.get(&z) {
                                cycle.insert(q.render(p));
                                z = q;
                            }
                        }
                        return Err(Error::InconsistentSigns(
                            cycle.into_iter().collect::<Vec<_>>().join(", "),
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let n = p.arrows.len();
    Ok(SignAssignment {
        sigma: (0..n)
            .map(|a| {
                value[&SignVar {
                    arrow: a,
                    epsilon: false,
                }]
            })
            .collect(),
        epsilon: (0..n)
            .map(|a| {
                value[&SignVar {
                    arrow: a,
                    epsilon: true,
                }]
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_gp23() {
        let p = parse_presentation(fixtures::GP23).unwrap();
        assert_eq!(p.vertices.len(), 1);
        assert_eq!(p.arrows.len(), 2);
        assert_eq!(p.relations.len(), 4);
    }

    #[test]
    fn parses_lambda2() {
        let p = parse_presentation(fixtures::LAMBDA2).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.arrows.len(), 5);
        let c = p.arrow_index("c").unwrap();
        let b = p.arrow_index("b").unwrap();
        let d = p.arrow_index("d").unwrap();
        assert_eq!(p.relations, vec![vec![c, b], vec![d, c]]);
    }

    #[test]
    fn empty_vertex_list_is_rejected() {
        assert_eq!(
            parse_presentation("algebra x\nvertices:\n"),
            Err(Error::NoVertices)
        );
        assert_eq!(parse_presentation("algebra x\n"), Err(Error::NoVertices));
    }

    #[test]
    fn syntax_errors_carry_a_locus() {
        let err = parse_presentation("algebra x\nvertices: v\n  bogus line\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Syntax {
                    line: 3,
                    column: 3,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn unknown_ids_and_bad_paths() {
        let base = "vertices: v w\narrow a: v -> w\narrow b: v -> w\n";
        assert_eq!(
            parse_presentation(&format!("{base}relations: a z\n")),
            Err(Error::UnknownArrow("z".into()))
        );
        assert_eq!(
            parse_presentation(&format!("{base}relations: a b\n")),
            Err(Error::NotComposable("a b".into()))
        );
        assert_eq!(
            parse_presentation("vertices: v\narrow a: v -> q\n"),
            Err(Error::UnknownVertex("q".into()))
        );
    }

    #[test]
    fn validates_the_standard_examples() {
        for text in [fixtures::GP23, fixtures::LAMBDA2] {
            let report = validate_string_algebra(&parse_presentation(text).unwrap());
            assert!(report.is_string_algebra, "{report:?}");
        }
    }

    #[test]
    fn missing_square_relation_breaks_finiteness() {
        let text = fixtures::GP23.replace("relations: a a; ", "relations: ");
        let mut p = parse_presentation(&text).unwrap();
        p.signs = None;
        let report = validate_string_algebra(&p);
        assert!(!report.is_string_algebra);
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::Finiteness));
    }

    #[test]
    fn degree_and_continuation_violations() {
        let p = parse_presentation(
            "vertices: v w\narrow a: v -> w\narrow b: v -> w\narrow c: v -> w\narrow d: w -> v\n",
        )
        .unwrap();
        let report = validate_string_algebra(&p);
        let axioms: BTreeSet<Axiom> = report.violations.iter().map(|v| v.axiom).collect();
        assert!(axioms.contains(&Axiom::OutDegree));
        assert!(axioms.contains(&Axiom::InDegree));
        assert!(axioms.contains(&Axiom::UniqueSuccessor));
        assert!(axioms.contains(&Axiom::Finiteness));
    }

    #[test]
    fn supplied_signs_for_gp23() {
        let p = parse_presentation(fixtures::GP23).unwrap();
        let s = derive_signs(&p).unwrap();
        let (a, b) = (p.arrow_index("a").unwrap(), p.arrow_index("b").unwrap());
        assert_eq!((s.sigma[a], s.epsilon[b]), (Sign::Plus, Sign::Plus));
        assert_eq!((s.sigma[b], s.epsilon[a]), (Sign::Minus, Sign::Minus));
        // the propagation rule picks the same solution
        let mut bare = p.clone();
        bare.signs = None;
        assert_eq!(derive_signs(&bare).unwrap(), s);
    }

    #[test]
    fn single_arrow_gets_plus() {
        let p = parse_presentation("vertices: v1 v2\narrow a: v1 -> v2\n").unwrap();
        let s = derive_signs(&p).unwrap();
        assert_eq!(s.sigma[0], Sign::Plus);
        assert_eq!(s.epsilon[0], Sign::Plus);
    }

    #[test]
    fn parallel_arrows_get_opposite_signs() {
        let p =
            parse_presentation("vertices: v1 v2\narrow a: v1 -> v2\narrow b: v1 -> v2\n").unwrap();
        let s = derive_signs(&p).unwrap();
        assert_eq!(s.sigma[0], -s.sigma[1]);
        assert_eq!(s.epsilon[0], -s.epsilon[1]);
    }

    #[test]
    fn inconsistent_supplied_signs_are_reported() {
        let text = fixtures::GP23.replace("sigma: a=1 b=-1", "sigma: a=1 b=1");
        let p = parse_presentation(&text).unwrap();
        assert!(matches!(derive_signs(&p), Err(Error::InconsistentSigns(_))));
        let report = validate_string_algebra(&p);
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::SignConsistency));
    }

    #[test]
    fn serialization_round_trips() {
        for text in fixtures::ALL.iter().map(|(_, t)| t) {
            let p = parse_presentation(text).unwrap();
            let again = parse_presentation(&p.to_sqa()).unwrap();
            assert_eq!(p, again);
            assert_eq!(p.to_sqa(), again.to_sqa());
        }
    }
}
