//! The universal carrier for every ring in the pipeline: a
//! finite-dimensional graded basic algebra given by structure constants
//! over labeled primitive idempotents. Corner algebras (idempotent
//! subalgebras) and opposites are again values of the same type, so the
//! downstream machinery (resolutions, Ext, Cartan) runs over A, Γ and
//! Y(e) uniformly.

use crate::linalg::{Field, Scalar};
use crate::{Error, Result};
use sha2::{Digest, Sha256};

/// One graded basis element, tagged with its idempotent endpoints:
/// x = e_u · x · e_v, homogeneous of internal degree `deg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub u: usize,
    pub v: usize,
    pub deg: usize,
}

/// Sparse coefficient vector over the graded basis.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq)]
pub struct GradedBasicAlgebra {
    pub field: Field,
    /// Idempotent labels, in order; basis[0..n] are the idempotents.
    pub labels: Vec<String>,
    pub basis: Vec<BasisElem>,
    /// products[i * dim + j] = coefficients of basis[i] · basis[j].
    products: Vec<SparseVec>,
}

impl GradedBasicAlgebra {
    pub fn new(
        field: Field,
        labels: Vec<String>,
        basis: Vec<BasisElem>,
        products: Vec<SparseVec>,
    ) -> GradedBasicAlgebra {
        assert_eq!(products.len(), basis.len() * basis.len());
        GradedBasicAlgebra {
            field,
            labels,
            basis,
            products,
        }
    }

    /// The zero algebra (no idempotents); used for Γ when e = 1.
    pub fn zero(field: Field) -> GradedBasicAlgebra {
        GradedBasicAlgebra {
            field,
            labels: Vec::new(),
            basis: Vec::new(),
            products: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn max_degree(&self) -> usize {
        self.basis.iter().map(|b| b.deg).max().unwrap_or(0)
    }

    pub fn dim_in_degree(&self, d: usize) -> usize {
        self.basis.iter().filter(|b| b.deg == d).count()
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim() + j]
    }

    /// Bilinear product of dense coefficient vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim());
        assert_eq!(y.len(), self.dim());
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                for (k, s) in self.product(i, j) {
                    out[*k] = out[*k].add(&c.mul(s));
                }
            }
        }
        out
    }

    /// Idempotent corner subalgebra on the kept labels. An empty `keep`
    /// yields the zero algebra (the cd(Γ) = 1 convention lives in
    /// `cartan`). Kept basis elements are those with both endpoint tags
    /// inside `keep`; structure constants restrict without change.
    pub fn corner(&self, keep: &[usize]) -> Result<GradedBasicAlgebra> {
        for &k in keep {
            if k >= self.n() {
                return Err(Error::UnknownLabel(format!("idempotent index {k}")));
            }
        }
        if keep.is_empty() {
            return Ok(GradedBasicAlgebra::zero(self.field));
        }
        let mut keep_sorted = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        let kept: Vec<usize> = (0..self.dim())
            .filter(|&i| {
                keep_sorted.contains(&self.basis[i].u) && keep_sorted.contains(&self.basis[i].v)
            })
            .collect();
        let old_to_new: std::collections::HashMap<usize, usize> =
            kept.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let relabel: std::collections::HashMap<usize, usize> = keep_sorted
            .iter()
            .enumerate()
            .map(|(n, &o)| (o, n))
            .collect();
        let basis: Vec<BasisElem> = kept
            .iter()
            .map(|&i| BasisElem {
                u: relabel[&self.basis[i].u],
                v: relabel[&self.basis[i].v],
                deg: self.basis[i].deg,
            })
            .collect();
        let dim = kept.len();
        let mut products = vec![SparseVec::new(); dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                let mut sv = SparseVec::new();
                for (k, c) in self.product(kept[a], kept[b]) {
                    // closed: endpoints of products of kept elements are kept
                    let nk = old_to_new[k];
                    sv.push((nk, c.clone()));
                }
                products[a * dim + b] = sv;
            }
        }
        Ok(GradedBasicAlgebra {
            field: self.field,
            labels: keep_sorted
                .iter()
                .map(|&i| self.labels[i].clone())
                .collect(),
            basis,
            products,
        })
    }

    /// Opposite algebra: same basis with u/v swapped, products reversed.
    pub fn opposite(&self) -> GradedBasicAlgebra {
        let basis: Vec<BasisElem> = self
            .basis
            .iter()
            .map(|b| BasisElem {
                u: b.v,
                v: b.u,
                deg: b.deg,
            })
            .collect();
        let dim = self.dim();
        let mut products = vec![SparseVec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                products[i * dim + j] = self.product(j, i).clone();
            }
        }
        GradedBasicAlgebra {
            field: self.field,
            labels: self.labels.clone(),
            basis,
            products,
        }
    }

    /// Checks every structural invariant: idempotent layout, endpoint
    /// compatibility, degree additivity, unit laws and associativity on
    /// all basis triples.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let dim = self.dim();
        for i in 0..n {
            let b = &self.basis[i];
            if b.u != i || b.v != i || b.deg != 0 {
                return Err(Error::Unsupported(format!(
                    "basis[{i}] is not the idempotent e_{i}"
                )));
            }
        }
        for (i, b) in self.basis.iter().enumerate() {
            if i >= n && b.deg == 0 {
                return Err(Error::Unsupported(format!(
                    "degree-0 basis element {i} outside the idempotent block"
                )));
            }
            if b.u >= n || b.v >= n {
                return Err(Error::UnknownLabel(format!("endpoint of basis element {i}")));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let prod = self.product(i, j);
                if self.basis[i].v != self.basis[j].u && !prod.is_empty() {
                    return Err(Error::Unsupported(format!(
                        "nonzero product {i}·{j} across mismatched idempotents"
                    )));
                }
                let d = self.basis[i].deg + self.basis[j].deg;
                for (k, c) in prod {
                    if c.field() != self.field {
                        return Err(Error::FieldMismatch(format!("product {i}·{j}")));
                    }
                    if !c.is_zero() && self.basis[*k].deg != d {
                        return Err(Error::Unsupported(format!(
                            "product {i}·{j} violates degree additivity"
                        )));
                    }
                }
            }
        }
        // idempotent products and unit laws
        for i in 0..n {
            for j in 0..n {
                let prod = self.dense_product(i, j);
                let mut expect = vec![self.field.zero(); dim];
                if i == j {
                    expect[i] = self.field.one();
                }
                if prod != expect {
                    return Err(Error::Unsupported(format!("e_{i} · e_{j} incorrect")));
                }
            }
        }
        for x in 0..dim {
            let eu = self.basis[x].u;
            let ev = self.basis[x].v;
            let mut unit = vec![self.field.zero(); dim];
            unit[x] = self.field.one();
            if self.dense_product(eu, x) != unit {
                return Err(Error::Unsupported(format!("e_u · x ≠ x for basis {x}")));
            }
            if self.dense_product(x, ev) != unit {
                return Err(Error::Unsupported(format!("x · e_v ≠ x for basis {x}")));
            }
        }
        // associativity on all basis triples
        for i in 0..dim {
            for j in 0..dim {
                if self.basis[i].v != self.basis[j].u {
                    continue;
                }
                let ij = self.dense_product(i, j);
                for k in 0..dim {
                    if self.basis[j].v != self.basis[k].u {
                        continue;
                    }
                    let jk = self.dense_product(j, k);
                    let mut unit_k = vec![self.field.zero(); dim];
                    unit_k[k] = self.field.one();
                    let mut unit_i = vec![self.field.zero(); dim];
                    unit_i[i] = self.field.one();
                    let lhs = self.multiply(&ij, &unit_k);
                    let rhs = self.multiply(&unit_i, &jk);
                    if lhs != rhs {
                        return Err(Error::Unsupported(format!(
                            "associativity fails on triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dense_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (k, c) in self.product(i, j) {
            out[*k] = out[*k].add(c);
        }
        out
    }

    /// Deterministic structure-constant serialization; the output of the
    /// `gamma` CLI command and the round-trip format for Y(e).
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("scalg v1\n");
        out.push_str(&format!("field {}\n", self.field));
        out.push_str("labels");
        for l in &self.labels {
            out.push_str(&format!(" {l}"));
        }
        out.push('\n');
        for (i, b) in self.basis.iter().enumerate() {
            out.push_str(&format!(
                "elem {} {} {} {}\n",
                i, self.labels[b.u], self.labels[b.v], b.deg
            ));
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let prod = self.product(i, j);
                if prod.iter().all(|(_, c)| c.is_zero()) {
                    continue;
                }
                let terms: Vec<String> = prod
                    .iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| format!("{c}*{k}"))
                    .collect();
                out.push_str(&format!("prod {} {} -> {}\n", i, j, terms.join(" + ")));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<GradedBasicAlgebra> {
        let mut field = None;
        let mut labels: Vec<String> = Vec::new();
        let mut basis: Vec<BasisElem> = Vec::new();
        let mut prods: Vec<(usize, usize, SparseVec)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = ln + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut toks = line.split_whitespace();
            match toks.next().unwrap() {
                "scalg" => {}
                "field" => {
                    let kind = toks.next().ok_or(Error::Parse {
                        line: lineno,
                        msg: "missing field kind".into(),
                    })?;
                    field = Some(match kind {
                        "Q" => Field::Q,
                        "F" => {
                            let p: u64 = toks
                                .next()
                                .and_then(|s| s.parse().ok())
                                .ok_or(Error::Parse {
                                    line: lineno,
                                    msg: "bad prime".into(),
                                })?;
                            Field::Fp(p)
                        }
                        other => {
                            return Err(Error::Parse {
                                line: lineno,
                                msg: format!("unknown field `{other}`"),
                            })
                        }
                    });
                }
                "labels" => {
                    labels = toks.map(|s| s.to_string()).collect();
                }
                "elem" => {
                    let idx: usize = toks
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or(Error::Parse {
                            line: lineno,
                            msg: "bad elem index".into(),
                        })?;
                    if idx != basis.len() {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "elem lines out of order".into(),
                        });
                    }
                    let u_lbl = toks.next().ok_or(Error::Parse {
                        line: lineno,
                        msg: "missing u".into(),
                    })?;
                    let v_lbl = toks.next().ok_or(Error::Parse {
                        line: lineno,
                        msg: "missing v".into(),
                    })?;
                    let deg: usize = toks
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or(Error::Parse {
                            line: lineno,
                            msg: "bad degree".into(),
                        })?;
                    let u = labels.iter().position(|l| l == u_lbl).ok_or(Error::Parse {
                        line: lineno,
                        msg: format!("unknown label `{u_lbl}`"),
                    })?;
                    let v = labels.iter().position(|l| l == v_lbl).ok_or(Error::Parse {
                        line: lineno,
                        msg: format!("unknown label `{v_lbl}`"),
                    })?;
                    basis.push(BasisElem { u, v, deg });
                }
                "prod" => {
                    let f = field.ok_or(Error::Parse {
                        line: lineno,
                        msg: "prod before field".into(),
                    })?;
                    let i: usize = toks
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or(Error::Parse {
                            line: lineno,
                            msg: "bad prod index".into(),
                        })?;
                    let j: usize = toks
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or(Error::Parse {
                            line: lineno,
                            msg: "bad prod index".into(),
                        })?;
                    let rest: Vec<&str> = toks.collect();
                    if rest.first() != Some(&"->") {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "expected `->`".into(),
                        });
                    }
                    let mut sv = SparseVec::new();
                    for term in rest[1..].split(|t| *t == "+") {
                        if term.is_empty() {
                            continue;
                        }
                        let t = term.join("");
                        let (coeff_s, k_s) = t.rsplit_once('*').ok_or(Error::Parse {
                            line: lineno,
                            msg: format!("bad product term `{t}`"),
                        })?;
                        let c = f.parse_scalar(coeff_s).map_err(|e| Error::Parse {
                            line: lineno,
                            msg: e.to_string(),
                        })?;
                        let k: usize = k_s.parse().map_err(|_| Error::Parse {
                            line: lineno,
                            msg: format!("bad basis index `{k_s}`"),
                        })?;
                        sv.push((k, c));
                    }
                    prods.push((i, j, sv));
                }
                other => {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("unknown declaration `{other}`"),
                    })
                }
            }
        }
        let field = field.ok_or(Error::Parse {
            line: 0,
            msg: "missing field declaration".into(),
        })?;
        let dim = basis.len();
        let mut products = vec![SparseVec::new(); dim * dim];
        for (i, j, sv) in prods {
            if i >= dim || j >= dim {
                return Err(Error::Parse {
                    line: 0,
                    msg: "product index out of range".into(),
                });
            }
            for (k, _) in &sv {
                if *k >= dim {
                    return Err(Error::Parse {
                        line: 0,
                        msg: "product target out of range".into(),
                    });
                }
            }
            products[i * dim + j] = sv;
        }
        Ok(GradedBasicAlgebra {
            field,
            labels,
            basis,
            products,
        })
    }

    /// Stable content hash (cache keys, report determinism).
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.serialize().as_bytes());
        let d = h.finalize();
        d.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::test_algebras::{a2_path_algebra, loop_x2, nakayama};

    #[test]
    fn idempotents_multiply_orthogonally() {
        let a = nakayama(3, 2);
        for i in 0..3 {
            for j in 0..3 {
                let p = a.dense_product(i, j);
                let nonzero: Vec<usize> =
                    (0..a.dim()).filter(|&k| !p[k].is_zero()).collect();
                if i == j {
                    assert_eq!(nonzero, vec![i]);
                } else {
                    assert!(nonzero.is_empty());
                }
            }
        }
    }

    #[test]
    fn rad_squared_vanishes_on_nakayama() {
        let a = nakayama(3, 2);
        // arrows occupy basis indices 3..6; all pairwise products vanish
        for i in 3..6 {
            for j in 3..6 {
                assert!(a.dense_product(i, j).iter().all(|c| c.is_zero()));
            }
        }
    }

    #[test]
    fn corner_of_nakayama_is_a2() {
        let a = nakayama(3, 2);
        let g = a.corner(&[1, 2]).unwrap();
        g.validate().unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.labels, vec!["2", "3"]);
        // basis: e_2, e_3 and the arrow b: 2 -> 3
        assert_eq!(g.basis[2].u, 0);
        assert_eq!(g.basis[2].v, 1);
        assert_eq!(g.basis[2].deg, 1);
    }

    #[test]
    fn corner_full_keep_is_identity() {
        let a = nakayama(3, 2);
        let g = a.corner(&[0, 1, 2]).unwrap();
        assert_eq!(g, a);
    }

    #[test]
    fn corner_empty_is_zero_algebra() {
        let a = nakayama(3, 2);
        let g = a.corner(&[]).unwrap();
        assert!(g.is_zero_algebra());
        assert_eq!(g.dim(), 0);
    }

    #[test]
    fn corner_multiplication_agrees_with_parent() {
        let a = nakayama(3, 3);
        let keep = vec![0, 2];
        let g = a.corner(&keep).unwrap();
        g.validate().unwrap();
        let kept: Vec<usize> = (0..a.dim())
            .filter(|&i| keep.contains(&a.basis[i].u) && keep.contains(&a.basis[i].v))
            .collect();
        for (ni, &oi) in kept.iter().enumerate() {
            for (nj, &oj) in kept.iter().enumerate() {
                let parent = a.dense_product(oi, oj);
                let child = g.dense_product(ni, nj);
                for (nk, &ok) in kept.iter().enumerate() {
                    assert_eq!(parent[ok], child[nk]);
                }
            }
        }
    }

    #[test]
    fn opposite_is_involution() {
        let a = nakayama(3, 2);
        assert_eq!(a.opposite().opposite(), a);
    }

    #[test]
    fn opposite_of_commutative_is_itself() {
        let a = loop_x2();
        assert_eq!(a.opposite(), a);
    }

    #[test]
    fn opposite_reverses_a2() {
        let a = a2_path_algebra();
        let op = a.opposite();
        op.validate().unwrap();
        // in the opposite, the arrow composes as a ∘ e_1 = a
        let arrow = 2;
        assert_eq!(op.basis[arrow].u, 1);
        assert_eq!(op.basis[arrow].v, 0);
        let p = op.dense_product(arrow, 0);
        assert!(!p[arrow].is_zero());
    }

    #[test]
    fn radical_is_an_ideal() {
        let a = nakayama(4, 3);
        a.validate().unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if a.basis[i].deg == 0 && a.basis[j].deg == 0 {
                    continue;
                }
                for (k, c) in a.product(i, j) {
                    if !c.is_zero() {
                        assert!(a.basis[*k].deg > 0);
                    }
                }
            }
        }
    }

    #[test]
    fn serialization_round_trips() {
        let a = nakayama(3, 2);
        let text = a.serialize();
        let b = GradedBasicAlgebra::parse(&text).unwrap();
        assert_eq!(a, b);
        assert_eq!(text, b.serialize());
    }
}
