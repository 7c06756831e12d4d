//! Quivers with path-length-homogeneous admissible relations, the text
//! format for algebra descriptions, and compilation into exact graded
//! structure-constant algebras.

use crate::algebra::{BasisElem, GradedBasicAlgebra, SparseVec};
use crate::linalg::{Field, Matrix, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Quiver> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::Unsupported(format!("duplicate vertex `{v}`")));
            }
        }
        let mut q = Quiver {
            vertices,
            arrows: Vec::new(),
        };
        let mut labels = std::collections::HashSet::new();
        for (label, src, tgt) in arrows {
            if !labels.insert(label.clone()) {
                return Err(Error::Unsupported(format!("duplicate arrow `{label}`")));
            }
            let s = q.vertex_index(&src)?;
            let t = q.vertex_index(&tgt)?;
            q.arrows.push(Arrow {
                label,
                src: s,
                tgt: t,
            });
        }
        Ok(q)
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow_index(&self, label: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.label == label)
            .ok_or_else(|| Error::UnknownArrow(label.to_string()))
    }
}

/// A composable chain of arrows; a length-0 path is a vertex.
/// Convention: e_{s(p)} · p = p = p · e_{t(p)}, arrows compose
/// left-to-right (target of each = source of the next).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows
            .last()
            .map_or(self.start, |&a| q.arrows[a].tgt)
    }

    pub fn concat(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.end(q) != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            start: self.start,
            arrows,
        })
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertices[self.start])
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].label.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Formal linear combination of parallel equal-length (≥ 2) paths.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Path)>, q: &Quiver) -> Result<Relation> {
        if terms.iter().all(|(c, _)| c.is_zero()) {
            return Err(Error::Unsupported("relation with no nonzero term".into()));
        }
        let first = &terms[0].1;
        let (src, tgt, len) = (first.start, first.end(q), first.len());
        if len < 2 {
            return Err(Error::Unsupported(format!(
                "relation of path length {len}; admissible relations have length ≥ 2"
            )));
        }
        for (_, p) in &terms {
            if p.start != src || p.end(q) != tgt {
                return Err(Error::Unsupported(
                    "relation mixes non-parallel paths".into(),
                ));
            }
            if p.len() != len {
                return Err(Error::Unsupported(
                    "inhomogeneous relation (mixed path lengths); unsupported input".into(),
                ));
            }
        }
        Ok(Relation { terms })
    }

    pub fn degree(&self) -> usize {
        self.terms[0].1.len()
    }

    pub fn src(&self) -> usize {
        self.terms[0].1.start
    }

    pub fn tgt(&self, q: &Quiver) -> usize {
        self.terms[0].1.end(q)
    }
}

pub const DEFAULT_DEGCAP: usize = 30;

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub degcap: usize,
}

/// All paths of length exactly `d`, optionally filtered by endpoints, in
/// lexicographic order of arrow labels.
pub fn enumerate_paths(
    q: &Quiver,
    d: usize,
    src: Option<usize>,
    tgt: Option<usize>,
) -> Vec<Path> {
    // outgoing arrows per vertex, sorted by label for lexicographic order
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); q.vertices.len()];
    let mut order: Vec<usize> = (0..q.arrows.len()).collect();
    order.sort_by(|&a, &b| q.arrows[a].label.cmp(&q.arrows[b].label));
    for &a in &order {
        outgoing[q.arrows[a].src].push(a);
    }
    let starts: Vec<usize> = match src {
        Some(s) => vec![s],
        None => (0..q.vertices.len()).collect(),
    };
    let mut out = Vec::new();
    for s in starts {
        // depth-first, children in label order, yields lex order per start
        fn rec(
            q: &Quiver,
            outgoing: &[Vec<usize>],
            at: usize,
            prefix: &mut Vec<usize>,
            d: usize,
            start: usize,
            tgt: Option<usize>,
            out: &mut Vec<Path>,
        ) {
            if prefix.len() == d {
                if tgt.is_none_or(|t| t == at) {
                    out.push(Path {
                        start,
                        arrows: prefix.clone(),
                    });
                }
                return;
            }
            for &a in &outgoing[at] {
                prefix.push(a);
                rec(q, outgoing, q.arrows[a].tgt, prefix, d, start, tgt, out);
                prefix.pop();
            }
        }
        let mut prefix = Vec::new();
        rec(q, &outgoing, s, &mut prefix, d, s, tgt, &mut out);
    }
    out
}

/// The degree-`d` component of the two-sided ideal generated by the
/// relations, as a row-reduced basis in the coordinate space of the
/// degree-`d` paths. Returns the path list, the RREF basis matrix and
/// its pivot columns.
pub fn ideal_component(p: &Presentation, d: usize) -> (Vec<Path>, Matrix, Vec<usize>) {
    let q = &p.quiver;
    let paths = enumerate_paths(q, d, None, None);
    let index: std::collections::HashMap<Path, usize> = paths
        .iter()
        .enumerate()
        .map(|(i, pa)| (pa.clone(), i))
        .collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in &p.relations {
        let dr = r.degree();
        if dr > d {
            continue;
        }
        for left_len in 0..=(d - dr) {
            let right_len = d - dr - left_len;
            let lefts = enumerate_paths(q, left_len, None, Some(r.src()));
            let rights = enumerate_paths(q, right_len, Some(r.tgt(q)), None);
            for l in &lefts {
                for rt in &rights {
                    let mut row = vec![p.field.zero(); paths.len()];
                    let mut nonzero = false;
                    for (c, mid) in &r.terms {
                        let lm = l.concat(mid, q).expect("relation endpoints");
                        let full = lm.concat(rt, q).expect("relation endpoints");
                        let idx = index[&full];
                        row[idx] = row[idx].add(c);
                        nonzero = true;
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let m = if rows.is_empty() {
        Matrix::zero(p.field, 0, paths.len())
    } else {
        Matrix::from_rows(p.field, rows).expect("uniform field")
    };
    let (rref, pivots) = m.rref();
    (paths, rref, pivots)
}

struct DegreeData {
    paths: Vec<Path>,
    rref: Matrix,
    pivots: Vec<usize>,
    /// path index -> basis position (for non-pivot paths)
    basis_paths: Vec<usize>,
}

/// Compiles a presentation into an exact graded structure-constant
/// algebra. Finite-dimensionality is certified by a zero graded piece
/// within the degree cap: since the algebra is generated in degrees 0
/// and 1, one vanishing piece forces all higher pieces to vanish.
pub fn compile(p: &Presentation) -> Result<GradedBasicAlgebra> {
    if p.degcap < 2 {
        return Err(Error::InvalidParams("degree cap must be ≥ 2".into()));
    }
    let q = &p.quiver;
    let mut degrees: Vec<DegreeData> = Vec::new();
    let mut top_degree = None;
    for d in 0..=p.degcap {
        let (paths, rref, pivots) = ideal_component(p, d);
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let basis_paths: Vec<usize> = (0..paths.len())
            .filter(|i| !pivot_set.contains(i))
            .collect();
        let empty = basis_paths.is_empty();
        degrees.push(DegreeData {
            paths,
            rref,
            pivots,
            basis_paths,
        });
        if d >= 1 && empty {
            top_degree = Some(d);
            break;
        }
    }
    let Some(top) = top_degree else {
        return Err(Error::NotFiniteDimensional(p.degcap));
    };

    // global basis: idempotents first, then chosen paths by degree
    let mut basis: Vec<BasisElem> = Vec::new();
    let mut basis_of: Vec<Vec<usize>> = Vec::new(); // per degree: global indices
    for (d, dd) in degrees.iter().enumerate() {
        let mut idxs = Vec::new();
        for &pi in &dd.basis_paths {
            let path = &dd.paths[pi];
            idxs.push(basis.len());
            basis.push(BasisElem {
                u: path.start,
                v: path.end(q),
                deg: d,
            });
        }
        basis_of.push(idxs);
        let _ = d;
    }
    let dim = basis.len();

    // reduce a degree-d path vector modulo the ideal RREF, read off the
    // coefficients on the non-pivot (basis) path coordinates
    let reduce = |d: usize, vec: &mut Vec<Scalar>| -> SparseVec {
        let dd = &degrees[d];
        for (row, &pc) in dd.pivots.iter().enumerate() {
            if vec[pc].is_zero() {
                continue;
            }
            let f = vec[pc].clone();
            for (j, s) in vec.iter_mut().enumerate() {
                *s = s.sub(&f.mul(dd.rref.at(row, j)));
            }
        }
        let mut sv = SparseVec::new();
        for (pos, &pi) in dd.basis_paths.iter().enumerate() {
            if !vec[pi].is_zero() {
                sv.push((basis_of[d][pos], vec[pi].clone()));
            }
        }
        sv
    };

    let mut products = vec![SparseVec::new(); dim * dim];
    for d1 in 0..top {
        for (pos1, &gi) in basis_of[d1].iter().enumerate() {
            let p1 = &degrees[d1].paths[degrees[d1].basis_paths[pos1]];
            for d2 in 0..top {
                let d = d1 + d2;
                for (pos2, &gj) in basis_of[d2].iter().enumerate() {
                    let p2 = &degrees[d2].paths[degrees[d2].basis_paths[pos2]];
                    let Some(cat) = p1.concat(p2, q) else { continue };
                    if d >= top {
                        continue; // lands in a vanishing graded piece
                    }
                    let dd = &degrees[d];
                    let idx = dd.paths.iter().position(|pp| *pp == cat).expect("path");
                    let mut vec = vec![p.field.zero(); dd.paths.len()];
                    vec[idx] = p.field.one();
                    products[gi * dim + gj] = reduce(d, &mut vec);
                }
            }
        }
    }
    Ok(GradedBasicAlgebra::new(
        p.field,
        q.vertices.clone(),
        basis,
        products,
    ))
}

/// Parses the algebra description text format: one declaration per line
/// (`field`, `vertex`, `arrow`, `relation`, `degcap`), `#` comments.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut field = Field::Q;
    let mut field_seen = false;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut relation_lines: Vec<(usize, String)> = Vec::new();
    let mut degcap = DEFAULT_DEGCAP;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = ln + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        match toks.next().unwrap() {
            "field" => {
                let kind = toks.next().ok_or(Error::Parse {
                    line: lineno,
                    msg: "missing field kind".into(),
                })?;
                field = match kind {
                    "Q" => Field::Q,
                    "F" => {
                        let p: u64 = toks
                            .next()
                            .and_then(|s| s.parse().ok())
                            .ok_or(Error::Parse {
                                line: lineno,
                                msg: "expected `field F <prime>`".into(),
                            })?;
                        if p < 2 || !is_prime(p) {
                            return Err(Error::Parse {
                                line: lineno,
                                msg: format!("{p} is not prime"),
                            });
                        }
                        Field::Fp(p)
                    }
                    other => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("unknown field `{other}`"),
                        })
                    }
                };
                field_seen = true;
            }
            "vertex" => {
                for v in toks {
                    vertices.push(v.to_string());
                }
            }
            "arrow" => {
                let l = toks.next().ok_or(Error::Parse {
                    line: lineno,
                    msg: "arrow: missing label".into(),
                })?;
                let s = toks.next().ok_or(Error::Parse {
                    line: lineno,
                    msg: "arrow: missing source".into(),
                })?;
                let t = toks.next().ok_or(Error::Parse {
                    line: lineno,
                    msg: "arrow: missing target".into(),
                })?;
                arrows.push((l.to_string(), s.to_string(), t.to_string()));
            }
            "relation" => {
                let rest = line["relation".len()..].trim().to_string();
                relation_lines.push((lineno, rest));
            }
            "degcap" => {
                degcap = toks
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or(Error::Parse {
                        line: lineno,
                        msg: "bad degcap".into(),
                    })?;
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown declaration `{other}`"),
                })
            }
        }
    }
    let _ = field_seen;
    let quiver = Quiver::new(vertices, arrows)?;
    let mut relations = Vec::new();
    for (lineno, text) in relation_lines {
        relations.push(parse_relation(&text, &quiver, field, lineno)?);
    }
    Ok(Presentation {
        field,
        quiver,
        relations,
        degcap,
    })
}

fn parse_relation(text: &str, q: &Quiver, field: Field, lineno: usize) -> Result<Relation> {
    let mut terms = Vec::new();
    for term in text.split(" + ") {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let parts: Vec<&str> = term.split('*').map(|s| s.trim()).collect();
        // leading coefficient is optional; detect by rational parse
        let (coeff, labels) = match field.parse_scalar(parts[0]) {
            Ok(c) => (c, &parts[1..]),
            Err(_) => (field.one(), &parts[..]),
        };
        if labels.is_empty() {
            return Err(Error::Parse {
                line: lineno,
                msg: "relation term with no path".into(),
            });
        }
        let mut arrows = Vec::new();
        for l in labels {
            arrows.push(q.arrow_index(l).map_err(|e| Error::Parse {
                line: lineno,
                msg: e.to_string(),
            })?);
        }
        // composability
        for w in arrows.windows(2) {
            if q.arrows[w[0]].tgt != q.arrows[w[1]].src {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "non-composable path in relation".into(),
                });
            }
        }
        let start = q.arrows[arrows[0]].src;
        terms.push((coeff, Path { start, arrows }));
    }
    Relation::new(terms, q).map_err(|e| Error::Parse {
        line: lineno,
        msg: e.to_string(),
    })
}

/// Serializes a presentation back to the text format (counterexample
/// witnesses are written this way so they re-run from the report).
pub fn serialize_presentation(p: &Presentation) -> String {
    let mut out = String::new();
    out.push_str(&format!("field {}\n", p.field));
    for v in &p.quiver.vertices {
        out.push_str(&format!("vertex {v}\n"));
    }
    for a in &p.quiver.arrows {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            a.label, p.quiver.vertices[a.src], p.quiver.vertices[a.tgt]
        ));
    }
    for r in &p.relations {
        let terms: Vec<String> = r
            .terms
            .iter()
            .map(|(c, path)| format!("{c}*{}", path.display(&p.quiver)))
            .collect();
        out.push_str(&format!("relation {}\n", terms.join(" + ")));
    }
    out.push_str(&format!("degcap {}\n", p.degcap));
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Canonical small algebras used across the test suites.
pub mod test_algebras {
    use super::*;

    /// Oriented n-cycle with all paths of length m as relations
    /// (Nakayama algebra of rank n with rad^m = 0).
    pub fn nakayama_presentation(n: usize, m: usize) -> Presentation {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (0..n)
            .map(|i| {
                (
                    format!("a{}", i + 1),
                    (i + 1).to_string(),
                    ((i % n) + 2 - if i == n - 1 { n } else { 0 }).to_string(),
                )
            })
            .collect();
        let quiver = Quiver::new(vertices, arrows).unwrap();
        let field = Field::Q;
        let mut relations = Vec::new();
        for start in 0..n {
            let mut path_arrows = Vec::new();
            let mut at = start;
            for _ in 0..m {
                path_arrows.push(at);
                at = (at + 1) % n;
            }
            relations.push(
                Relation::new(
                    vec![(
                        field.one(),
                        Path {
                            start,
                            arrows: path_arrows,
                        },
                    )],
                    &quiver,
                )
                .unwrap(),
            );
        }
        Presentation {
            field,
            quiver,
            relations,
            degcap: DEFAULT_DEGCAP,
        }
    }

    pub fn nakayama(n: usize, m: usize) -> GradedBasicAlgebra {
        compile(&nakayama_presentation(n, m)).unwrap()
    }

    /// Linear A_n quiver (arrows i -> i+1) with the quadratic monomial
    /// relations selected by `mask` (bit i set = relation a_i * a_{i+1}).
    pub fn linear_presentation(n: usize, mask: u32) -> Presentation {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (1..n)
            .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
            .collect();
        let quiver = Quiver::new(vertices, arrows).unwrap();
        let field = Field::Q;
        let mut relations = Vec::new();
        for i in 0..n.saturating_sub(2) {
            if mask & (1 << i) != 0 {
                relations.push(
                    Relation::new(
                        vec![(
                            field.one(),
                            Path {
                                start: i,
                                arrows: vec![i, i + 1],
                            },
                        )],
                        &quiver,
                    )
                    .unwrap(),
                );
            }
        }
        Presentation {
            field,
            quiver,
            relations,
            degcap: DEFAULT_DEGCAP,
        }
    }

    pub fn a2_path_algebra() -> GradedBasicAlgebra {
        compile(&linear_presentation(2, 0)).unwrap()
    }

    pub fn a3_path_algebra() -> GradedBasicAlgebra {
        compile(&linear_presentation(3, 0)).unwrap()
    }

    /// A_3 with the single relation a1*a2 (rad² = 0).
    pub fn a3_rad2() -> GradedBasicAlgebra {
        compile(&linear_presentation(3, 1)).unwrap()
    }

    /// k[x]/x² as a one-loop quiver algebra.
    pub fn loop_x2() -> GradedBasicAlgebra {
        compile(&loop_presentation(2)).unwrap()
    }

    /// k[x]/x^m: one vertex, one loop x, relation x^m.
    pub fn loop_presentation(m: usize) -> Presentation {
        let quiver = Quiver::new(
            vec!["1".into()],
            vec![("x".into(), "1".into(), "1".into())],
        )
        .unwrap();
        let field = Field::Q;
        let relations = vec![Relation::new(
            vec![(
                field.one(),
                Path {
                    start: 0,
                    arrows: vec![0; m],
                },
            )],
            &quiver,
        )
        .unwrap()];
        Presentation {
            field,
            quiver,
            relations,
            degcap: DEFAULT_DEGCAP,
        }
    }

    /// Semisimple algebra: n isolated vertices.
    pub fn semisimple(n: usize) -> GradedBasicAlgebra {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let quiver = Quiver::new(vertices, Vec::new()).unwrap();
        compile(&Presentation {
            field: Field::Q,
            quiver,
            relations: Vec::new(),
            degcap: DEFAULT_DEGCAP,
        })
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_algebras::*;
    use super::*;

    fn three_cycle() -> Quiver {
        Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
                ("c".into(), "3".into(), "1".into()),
            ],
        )
        .unwrap()
    }

    /// Brute-force path enumeration by repeated arrow extension, used as
    /// an order-free oracle against `enumerate_paths`.
    fn brute_paths(q: &Quiver, d: usize) -> Vec<Path> {
        let mut acc: Vec<Path> = (0..q.vertices.len())
            .map(|v| Path {
                start: v,
                arrows: vec![],
            })
            .collect();
        for _ in 0..d {
            let mut next = Vec::new();
            for p in &acc {
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.src == p.end(q) {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            start: p.start,
                            arrows,
                        });
                    }
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn paths_of_length_one_from_vertex() {
        let q = three_cycle();
        let ps = enumerate_paths(&q, 1, Some(0), None);
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].display(&q), "a");
    }

    #[test]
    fn length_zero_paths_are_vertices() {
        let q = three_cycle();
        let ps = enumerate_paths(&q, 0, None, None);
        assert_eq!(ps.len(), 3);
        assert!(ps.iter().all(|p| p.is_empty()));
    }

    #[test]
    fn cycle_path_back_to_start() {
        let q = three_cycle();
        let ps = enumerate_paths(&q, 3, Some(0), Some(0));
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].display(&q), "a*b*c");
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "1".into()),
                ("c".into(), "1".into(), "1".into()),
            ],
        )
        .unwrap();
        for d in 0..5 {
            let fast = enumerate_paths(&q, d, None, None);
            let mut brute = brute_paths(&q, d);
            assert_eq!(fast.len(), brute.len());
            let mut sorted = fast.clone();
            sorted.sort_by_key(|p| (p.start, p.arrows.clone()));
            brute.sort_by_key(|p| (p.start, p.arrows.clone()));
            assert_eq!(sorted, brute);
        }
    }

    #[test]
    fn ideal_empty_without_relations() {
        let p = linear_presentation(3, 0);
        for d in 0..4 {
            let (_, _, pivots) = ideal_component(&p, d);
            assert!(pivots.is_empty());
        }
    }

    #[test]
    fn nakayama_ideal_components() {
        let p = nakayama_presentation(3, 2);
        // degree 2: all three length-2 paths lie in the ideal
        let (paths2, _, pivots2) = ideal_component(&p, 2);
        assert_eq!(paths2.len(), 3);
        assert_eq!(pivots2.len(), 3);
        // degree 3: ideal closure p·r and r·q sweeps give all length-3 paths
        let (paths3, _, pivots3) = ideal_component(&p, 3);
        assert_eq!(pivots3.len(), paths3.len());
    }

    #[test]
    fn compile_nakayama_dimension() {
        let a = nakayama(3, 2);
        a.validate().unwrap();
        assert_eq!(a.dim(), 6); // 3 idempotents + 3 arrows, A(2) = 0
        assert_eq!(a.dim_in_degree(2), 0);
    }

    #[test]
    fn compile_a2() {
        let a = a2_path_algebra();
        a.validate().unwrap();
        assert_eq!(a.dim(), 3); // e1, e2, a
    }

    #[test]
    fn compile_uncapped_cycle_fails() {
        let mut p = nakayama_presentation(3, 2);
        p.relations.clear();
        p.degcap = 10;
        assert!(matches!(
            compile(&p),
            Err(Error::NotFiniteDimensional(10))
        ));
    }

    #[test]
    fn dim_conservation_per_degree() {
        // dim A(d) + dim ideal(d) = #paths(d) for all materialized degrees
        let p = nakayama_presentation(4, 3);
        let a = compile(&p).unwrap();
        for d in 0..=a.max_degree() + 1 {
            let (paths, _, pivots) = ideal_component(&p, d);
            assert_eq!(a.dim_in_degree(d) + pivots.len(), paths.len());
        }
    }

    #[test]
    fn idempotent_bookkeeping() {
        let a = nakayama(4, 2);
        for (i, b) in a.basis.iter().enumerate() {
            let mut x = vec![a.field.zero(); a.dim()];
            x[i] = a.field.one();
            let mut eu = vec![a.field.zero(); a.dim()];
            eu[b.u] = a.field.one();
            let mut ev = vec![a.field.zero(); a.dim()];
            ev[b.v] = a.field.one();
            let exv = a.multiply(&a.multiply(&eu, &x), &ev);
            assert_eq!(exv, x);
        }
    }

    #[test]
    fn presentation_parser_round_trip() {
        let text = "# three-cycle, rad^2 = 0\nfield Q\nvertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\narrow c 3 1\nrelation 1*a*b\nrelation 1*b*c\nrelation 1*c*a\ndegcap 30\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.quiver.vertices.len(), 3);
        assert_eq!(p.relations.len(), 3);
        let text2 = serialize_presentation(&p);
        let p2 = parse_presentation(&text2).unwrap();
        assert_eq!(p, p2);
        let a = compile(&p).unwrap();
        assert_eq!(a.dim(), 6);
    }

    #[test]
    fn parser_rejects_inhomogeneous_relation() {
        let text = "field Q\nvertex 1\narrow x 1 1\nrelation 1*x*x + 1*x*x*x\n";
        let err = parse_presentation(text);
        assert!(err.is_err());
    }

    #[test]
    fn parser_reports_line_numbers() {
        let text = "field Q\nvertex 1\nbogus decl\n";
        match parse_presentation(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rational_coefficients_parse() {
        let text = "field Q\nvertex 1\narrow x 1 1\narrow y 1 1\nrelation 1/2*x*y + -1/3*y*x\nrelation 1*x*x\nrelation 1*y*y\ndegcap 8\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.relations.len(), 3);
    }
}
