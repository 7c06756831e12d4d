//! Graded right modules over a structure-constant algebra: projective
//! covers, syzygies, minimal projective resolutions, projective- and
//! global-dimension verdicts, graded module isomorphism testing,
//! linearity/Koszul certification and corner restriction.
//!
//! Modules store complete action tables (one exact matrix per algebra
//! basis element, row convention v ↦ v·b): corner algebras and Yoneda
//! algebras need not be generated in degree 1, so arrow-only actions
//! would be wrong for them.

use crate::algebra::GradedBasicAlgebra;
use crate::linalg::{Matrix, Scalar};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// One graded basis vector: v = v·e_support, homogeneous of `degree`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModBasisElem {
    pub support: usize,
    pub degree: i64,
}

#[derive(Clone, Debug)]
pub struct GradedRightModule {
    pub algebra: Arc<GradedBasicAlgebra>,
    pub basis: Vec<ModBasisElem>,
    /// action[b] describes v ↦ v · basis[b]; rows index module basis.
    pub action: Vec<Matrix>,
}

impl GradedRightModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn zero(algebra: Arc<GradedBasicAlgebra>) -> GradedRightModule {
        let action = vec![Matrix::zero(algebra.field, 0, 0); algebra.dim()];
        GradedRightModule {
            algebra,
            basis: Vec::new(),
            action,
        }
    }

    /// Graded dimension vector: (support, degree) ↦ dim.
    pub fn dim_vector(&self) -> BTreeMap<(usize, i64), usize> {
        let mut m = BTreeMap::new();
        for b in &self.basis {
            *m.entry((b.support, b.degree)).or_insert(0) += 1;
        }
        m
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.basis.iter().map(|b| b.degree).min()
    }

    /// Regrading M⟨s⟩ with M⟨s⟩(j) = M(s+j): degrees drop by s.
    pub fn shift_grading(&self, s: i64) -> GradedRightModule {
        GradedRightModule {
            algebra: self.algebra.clone(),
            basis: self
                .basis
                .iter()
                .map(|b| ModBasisElem {
                    support: b.support,
                    degree: b.degree - s,
                })
                .collect(),
            action: self.action.clone(),
        }
    }

    /// Checks support/degree bookkeeping, idempotent projections and the
    /// full compatibility of the action with the structure constants.
    pub fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        let dim = self.dim();
        if self.action.len() != alg.dim() {
            return Err(Error::Shape("action table length".into()));
        }
        for (bi, m) in self.action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(format!("action matrix {bi} shape")));
            }
            let ab = &alg.basis[bi];
            for r in 0..dim {
                for c in 0..dim {
                    if m.at(r, c).is_zero() {
                        continue;
                    }
                    if self.basis[r].support != ab.u {
                        return Err(Error::Unsupported(format!(
                            "action of basis {bi} moves a vector of wrong support"
                        )));
                    }
                    if self.basis[c].support != ab.v
                        || self.basis[c].degree != self.basis[r].degree + ab.deg as i64
                    {
                        return Err(Error::Unsupported(format!(
                            "action of basis {bi} violates grading tags"
                        )));
                    }
                }
            }
        }
        // idempotent actions are the support projections
        for i in 0..alg.n() {
            let m = &self.action[i];
            for r in 0..dim {
                for c in 0..dim {
                    let expect = if r == c && self.basis[r].support == i {
                        alg.field.one()
                    } else {
                        alg.field.zero()
                    };
                    if *m.at(r, c) != expect {
                        return Err(Error::Unsupported(format!(
                            "idempotent e_{i} does not act as the support projection"
                        )));
                    }
                }
            }
        }
        // M(b)·M(b') equals the structure-constant combination for b·b'
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.action[i].matmul(&self.action[j]);
                let mut rhs = Matrix::zero(alg.field, dim, dim);
                for (k, coeff) in alg.product(i, j) {
                    for r in 0..dim {
                        for c in 0..dim {
                            let v = rhs.at(r, c).add(&coeff.mul(self.action[*k].at(r, c)));
                            rhs.set(r, c, v);
                        }
                    }
                }
                if lhs != rhs {
                    return Err(Error::Unsupported(format!(
                        "action incompatible with structure constants at pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// v · b for a dense coefficient row vector v and algebra element
    /// given as dense coefficients.
    pub fn act(&self, v: &[Scalar], elem: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.algebra.field.zero(); self.dim()];
        for (bi, c) in elem.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = self.action[bi].apply_row(v);
            for (k, x) in img.iter().enumerate() {
                if !x.is_zero() {
                    out[k] = out[k].add(&c.mul(x));
                }
            }
        }
        out
    }
}

/// S_i = e_iA / e_i rad A: one basis vector at support i, degree 0.
pub fn simple_module(alg: &Arc<GradedBasicAlgebra>, i: usize) -> Result<GradedRightModule> {
    if i >= alg.n() {
        return Err(Error::UnknownLabel(format!("idempotent index {i}")));
    }
    let mut action = Vec::with_capacity(alg.dim());
    for (bi, b) in alg.basis.iter().enumerate() {
        let mut m = Matrix::zero(alg.field, 1, 1);
        if bi < alg.n() && b.u == i {
            m.set(0, 0, alg.field.one());
        }
        action.push(m);
    }
    Ok(GradedRightModule {
        algebra: alg.clone(),
        basis: vec![ModBasisElem {
            support: i,
            degree: 0,
        }],
        action,
    })
}

/// Direct sum of the simples over a label subset (S_e for e = subset).
pub fn semisimple_module(
    alg: &Arc<GradedBasicAlgebra>,
    labels: &[usize],
) -> Result<GradedRightModule> {
    let mut parts = Vec::new();
    for &l in labels {
        parts.push(simple_module(alg, l)?);
    }
    Ok(direct_sum(alg, &parts))
}

/// e_iA⟨−shift⟩: basis = algebra basis elements with u = i, generator in
/// internal degree `shift`.
pub fn projective_module(
    alg: &Arc<GradedBasicAlgebra>,
    i: usize,
    shift: i64,
) -> Result<GradedRightModule> {
    if i >= alg.n() {
        return Err(Error::UnknownLabel(format!("idempotent index {i}")));
    }
    let elems: Vec<usize> = (0..alg.dim()).filter(|&k| alg.basis[k].u == i).collect();
    let pos: std::collections::HashMap<usize, usize> =
        elems.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let dim = elems.len();
    let basis: Vec<ModBasisElem> = elems
        .iter()
        .map(|&k| ModBasisElem {
            support: alg.basis[k].v,
            degree: alg.basis[k].deg as i64 + shift,
        })
        .collect();
    let mut action = Vec::with_capacity(alg.dim());
    for bi in 0..alg.dim() {
        let mut m = Matrix::zero(alg.field, dim, dim);
        for (r, &k) in elems.iter().enumerate() {
            for (tgt, c) in alg.product(k, bi) {
                if !c.is_zero() {
                    let col = pos[tgt];
                    let v = m.at(r, col).add(c);
                    m.set(r, col, v);
                }
            }
        }
        action.push(m);
    }
    Ok(GradedRightModule {
        algebra: alg.clone(),
        basis,
        action,
    })
}

pub fn direct_sum(
    alg: &Arc<GradedBasicAlgebra>,
    parts: &[GradedRightModule],
) -> GradedRightModule {
    let dim: usize = parts.iter().map(|p| p.dim()).sum();
    let mut basis = Vec::with_capacity(dim);
    for p in parts {
        basis.extend(p.basis.iter().cloned());
    }
    let mut action = Vec::with_capacity(alg.dim());
    for bi in 0..alg.dim() {
        let mut m = Matrix::zero(alg.field, dim, dim);
        let mut off = 0;
        for p in parts {
            let pm = &p.action[bi];
            for r in 0..p.dim() {
                for c in 0..p.dim() {
                    if !pm.at(r, c).is_zero() {
                        m.set(off + r, off + c, pm.at(r, c).clone());
                    }
                }
            }
            off += p.dim();
        }
        action.push(m);
    }
    GradedRightModule {
        algebra: alg.clone(),
        basis,
        action,
    }
}

/// Module-level corner restriction F(M) = M·(1−e): keeps the basis
/// vectors supported on `keep` with the restricted action over the
/// corner algebra (which must be `alg.corner(keep)`).
pub fn corner_restriction(
    m: &GradedRightModule,
    keep: &[usize],
    corner: &Arc<GradedBasicAlgebra>,
) -> Result<GradedRightModule> {
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    let relabel: std::collections::HashMap<usize, usize> = keep_sorted
        .iter()
        .enumerate()
        .map(|(n, &o)| (o, n))
        .collect();
    let kept_coords: Vec<usize> = (0..m.dim())
        .filter(|&i| keep_sorted.contains(&m.basis[i].support))
        .collect();
    let kept_alg: Vec<usize> = (0..m.algebra.dim())
        .filter(|&i| {
            keep_sorted.contains(&m.algebra.basis[i].u)
                && keep_sorted.contains(&m.algebra.basis[i].v)
        })
        .collect();
    if kept_alg.len() != corner.dim() {
        return Err(Error::AlgebraMismatch(
            "corner algebra does not match keep set".into(),
        ));
    }
    let basis: Vec<ModBasisElem> = kept_coords
        .iter()
        .map(|&i| ModBasisElem {
            support: relabel[&m.basis[i].support],
            degree: m.basis[i].degree,
        })
        .collect();
    let dim = kept_coords.len();
    let mut action = Vec::with_capacity(corner.dim());
    for &ai in &kept_alg {
        let big = &m.action[ai];
        let mut small = Matrix::zero(m.algebra.field, dim, dim);
        for (r, &or) in kept_coords.iter().enumerate() {
            for (c, &oc) in kept_coords.iter().enumerate() {
                if !big.at(or, oc).is_zero() {
                    small.set(r, c, big.at(or, oc).clone());
                }
            }
        }
        action.push(small);
    }
    Ok(GradedRightModule {
        algebra: corner.clone(),
        basis,
        action,
    })
}

/// One indecomposable projective summand e_label A⟨−shift⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub label: usize,
    pub shift: i64,
}

/// A finite direct sum of shifted indecomposable projectives with the
/// bookkeeping needed to read differentials off as algebra elements.
#[derive(Clone, Debug)]
pub struct ProjStack {
    pub summands: Vec<Summand>,
    pub module: GradedRightModule,
    /// module coord -> (summand index, algebra basis index)
    pub elem: Vec<(usize, usize)>,
    /// summand index -> module coord of its generator
    pub gen_coord: Vec<usize>,
}

pub fn build_projective_stack(
    alg: &Arc<GradedBasicAlgebra>,
    summands: Vec<Summand>,
) -> ProjStack {
    let mut parts = Vec::new();
    let mut elem = Vec::new();
    let mut gen_coord = Vec::new();
    for (si, s) in summands.iter().enumerate() {
        let p = projective_module(alg, s.label, s.shift).expect("valid label");
        for k in 0..alg.dim() {
            if alg.basis[k].u == s.label {
                if k == s.label {
                    // the generator is the idempotent basis element
                    gen_coord.push(elem.len());
                }
                elem.push((si, k));
            }
        }
        debug_assert_eq!(gen_coord.len(), si + 1);
        parts.push(p);
    }
    let module = direct_sum(alg, &parts);
    ProjStack {
        summands,
        module,
        elem,
        gen_coord,
    }
}

/// Result of a projective cover: the stack P and the epimorphism
/// P → M in module coordinates (rows index P, row convention).
pub struct Cover {
    pub stack: ProjStack,
    pub epi: Matrix,
}

/// Minimal projective cover via top(M) = M / M·rad: representatives are
/// the module basis vectors at non-pivot coordinates of the radical
/// span, ordered by (support label, degree, original index).
pub fn projective_cover(m: &GradedRightModule) -> Cover {
    let alg = &m.algebra;
    let field = alg.field;
    if m.is_zero() {
        return Cover {
            stack: build_projective_stack(alg, Vec::new()),
            epi: Matrix::zero(field, 0, 0),
        };
    }
    let mut rad_rows: Vec<Vec<Scalar>> = Vec::new();
    for bi in alg.n()..alg.dim() {
        let act = &m.action[bi];
        for r in 0..m.dim() {
            let row: Vec<Scalar> = (0..m.dim()).map(|c| act.at(r, c).clone()).collect();
            if row.iter().any(|s| !s.is_zero()) {
                rad_rows.push(row);
            }
        }
    }
    let rad = if rad_rows.is_empty() {
        Matrix::zero(field, 0, m.dim())
    } else {
        Matrix::from_rows(field, rad_rows).expect("uniform field")
    };
    let (_, pivots) = rad.rref();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut tops: Vec<usize> = (0..m.dim()).filter(|c| !pivot_set.contains(c)).collect();
    tops.sort_by_key(|&c| (m.basis[c].support, m.basis[c].degree, c));
    let summands: Vec<Summand> = tops
        .iter()
        .map(|&c| Summand {
            label: m.basis[c].support,
            shift: m.basis[c].degree,
        })
        .collect();
    let stack = build_projective_stack(alg, summands);
    let mut epi = Matrix::zero(field, stack.module.dim(), m.dim());
    for (coord, &(si, bk)) in stack.elem.iter().enumerate() {
        let rep = tops[si];
        // image of (summand si, algebra element bk) = m_rep · bk
        let row = m.action[bk].row(rep);
        for (c, v) in row.iter().enumerate() {
            if !v.is_zero() {
                epi.set(coord, c, v.clone());
            }
        }
    }
    debug_assert_eq!(epi.rank(), m.dim(), "cover must be surjective");
    Cover { stack, epi }
}

/// A syzygy as an abstract module together with its embedding into the
/// covering projective (rows of `embedding` = basis vectors of the
/// syzygy in the coordinates of the projective).
pub struct SyzygyInfo {
    pub module: GradedRightModule,
    pub embedding: Matrix,
}

/// Kernel of a degree-0 graded epimorphism from a projective stack,
/// computed block-by-block over (support, degree) tags so the returned
/// basis vectors are homogeneous. Each basis vector has a lead
/// coordinate where every other basis vector vanishes, which makes
/// coefficient extraction exact and cheap.
fn graded_kernel(stack: &ProjStack, epi: &Matrix, target: &GradedRightModule) -> SyzygyInfo {
    let field = stack.module.algebra.field;
    let src = &stack.module;
    let mut blocks: BTreeMap<(usize, i64), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, b) in src.basis.iter().enumerate() {
        blocks
            .entry((b.support, b.degree))
            .or_default()
            .0
            .push(i);
    }
    for (i, b) in target.basis.iter().enumerate() {
        blocks
            .entry((b.support, b.degree))
            .or_default()
            .1
            .push(i);
    }
    let mut vectors: Vec<(Vec<Scalar>, ModBasisElem, usize)> = Vec::new(); // (coords, tag, lead)
    for ((support, degree), (rows, cols)) in &blocks {
        if rows.is_empty() {
            continue;
        }
        let mut sub = Matrix::zero(field, rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                sub.set(ri, ci, epi.at(r, c).clone());
            }
        }
        // left kernel: w with w · sub = 0
        let kern = sub.transpose().kernel_basis();
        for w in kern {
            let mut full = vec![field.zero(); src.dim()];
            let mut lead = None;
            for (wi, &r) in rows.iter().enumerate() {
                if !w[wi].is_zero() {
                    full[r] = w[wi].clone();
                }
                if w[wi].is_one() && lead.is_none() {
                    // canonical kernel vectors have 1 at their free column
                    lead = Some(r);
                }
            }
            // the free column entry is exactly 1 and unique to this vector
            let lead = lead.expect("canonical kernel vector has a unit lead");
            vectors.push((
                full,
                ModBasisElem {
                    support: *support,
                    degree: *degree,
                },
                lead,
            ));
        }
    }
    submodule_from_vectors(src, vectors)
}

/// Builds the abstract module structure on a list of homogeneous,
/// lead-normalized spanning vectors inside `parent`.
fn submodule_from_vectors(
    parent: &GradedRightModule,
    vectors: Vec<(Vec<Scalar>, ModBasisElem, usize)>,
) -> SyzygyInfo {
    let alg = &parent.algebra;
    let field = alg.field;
    let k = vectors.len();
    let mut embedding = Matrix::zero(field, k, parent.dim());
    for (i, (v, _, _)) in vectors.iter().enumerate() {
        for (c, s) in v.iter().enumerate() {
            if !s.is_zero() {
                embedding.set(i, c, s.clone());
            }
        }
    }
    let basis: Vec<ModBasisElem> = vectors.iter().map(|(_, t, _)| t.clone()).collect();
    let leads: Vec<usize> = vectors.iter().map(|(_, _, l)| *l).collect();
    let mut action = Vec::with_capacity(alg.dim());
    for bi in 0..alg.dim() {
        let mut m = Matrix::zero(field, k, k);
        for i in 0..k {
            let img = parent.action[bi].apply_row(embedding.row(i));
            // extract coefficients at the lead coordinates, then verify
            let mut residue = img.clone();
            for (j, &lead) in leads.iter().enumerate() {
                let c = residue[lead].clone();
                if c.is_zero() {
                    continue;
                }
                for (t, s) in embedding.row(j).iter().enumerate() {
                    if !s.is_zero() {
                        residue[t] = residue[t].sub(&c.mul(s));
                    }
                }
                m.set(i, j, c);
            }
            assert!(
                residue.iter().all(|s| s.is_zero()),
                "submodule action left the span"
            );
        }
        action.push(m);
    }
    SyzygyInfo {
        module: GradedRightModule {
            algebra: alg.clone(),
            basis,
            action,
        },
        embedding,
    }
}

pub struct Stage {
    pub stack: ProjStack,
    /// Differential in module coordinates: rows index this stage's
    /// projective; columns index the previous stage (stage 0: the module).
    pub map_to_prev: Matrix,
}

pub struct Resolution {
    pub module: GradedRightModule,
    pub stages: Vec<Stage>,
    /// syzygies[t] = Ω^{t+1} with its embedding into stage t.
    pub syzygies: Vec<SyzygyInfo>,
    pub terminated: bool,
}

impl Resolution {
    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// Ω^t as an abstract module (t = 0 is the resolved module itself).
    pub fn syzygy(&self, t: usize) -> &GradedRightModule {
        if t == 0 {
            &self.module
        } else {
            &self.syzygies[t - 1].module
        }
    }

    /// Multiplicity of e_label A in P_t.
    pub fn multiplicity(&self, t: usize, label: usize) -> usize {
        if t >= self.stages.len() {
            return 0;
        }
        self.stages[t]
            .stack
            .summands
            .iter()
            .filter(|s| s.label == label)
            .count()
    }

    /// Differential entries as algebra elements: entry[r][c] ∈
    /// e_{label(r)} A e_{label(c)}, the left-multiplier describing the
    /// component of the map from summand c of P_t to summand r of
    /// P_{t−1} (t ≥ 1).
    pub fn projective_map(&self, t: usize) -> Vec<Vec<Vec<Scalar>>> {
        assert!(t >= 1 && t < self.stages.len());
        let cur = &self.stages[t];
        let prev = &self.stages[t - 1];
        let alg = &self.module.algebra;
        let nr = prev.stack.summands.len();
        let nc = cur.stack.summands.len();
        let mut entries = vec![vec![vec![alg.field.zero(); alg.dim()]; nc]; nr];
        for (c, &gc) in cur.stack.gen_coord.iter().enumerate() {
            let row = cur.map_to_prev.row(gc);
            for (coord, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (r, bk) = prev.stack.elem[coord];
                entries[r][c][bk] = entries[r][c][bk].add(v);
            }
        }
        entries
    }
}

/// Iterated projective covers of successive syzygies up to `t_max`
/// stages (or until the kernel vanishes).
pub fn minimal_resolution(m: &GradedRightModule, t_max: usize) -> Resolution {
    resolution_with_stage0(m, t_max, None)
}

/// Deliberately non-minimal resolution: pads the stage-0 cover with one
/// redundant projective summand mapping to zero. Used as an independent
/// oracle — Ext dimensions must come out identical when computed as
/// honest cohomology of the Hom complex.
pub fn resolution_with_padding(
    m: &GradedRightModule,
    t_max: usize,
    pad: Summand,
) -> Resolution {
    resolution_with_stage0(m, t_max, Some(pad))
}

fn resolution_with_stage0(
    m: &GradedRightModule,
    t_max: usize,
    pad: Option<Summand>,
) -> Resolution {
    let alg = m.algebra.clone();
    let field = alg.field;
    let mut stages: Vec<Stage> = Vec::new();
    let mut syzygies: Vec<SyzygyInfo> = Vec::new();
    let mut terminated = m.is_zero();
    if !terminated {
        // stage 0
        let cover = projective_cover(m);
        let (stack, epi) = match pad {
            None => (cover.stack, cover.epi),
            Some(p) => {
                let mut summands = cover.stack.summands.clone();
                summands.push(p);
                let stack = build_projective_stack(&alg, summands);
                let mut epi = Matrix::zero(field, stack.module.dim(), m.dim());
                for r in 0..cover.epi.rows() {
                    for c in 0..cover.epi.cols() {
                        if !cover.epi.at(r, c).is_zero() {
                            epi.set(r, c, cover.epi.at(r, c).clone());
                        }
                    }
                }
                (stack, epi)
            }
        };
        let syz = graded_kernel(&stack, &epi, m);
        stages.push(Stage {
            stack,
            map_to_prev: epi,
        });
        let mut current = syz;
        let mut t = 1usize;
        loop {
            if current.module.is_zero() {
                terminated = true;
                syzygies.push(current);
                break;
            }
            if t > t_max {
                syzygies.push(current);
                break;
            }
            let cover = projective_cover(&current.module);
            // d_t = epi (P_t → Ω^t coords) followed by the embedding
            let d = cover.epi.matmul(&current.embedding);
            let next = graded_kernel(&cover.stack, &cover.epi, &current.module);
            // re-embed the next syzygy into P_t coordinates directly
            syzygies.push(current);
            stages.push(Stage {
                stack: cover.stack,
                map_to_prev: d,
            });
            current = next;
            t += 1;
        }
    }
    Resolution {
        module: m.clone(),
        stages,
        syzygies,
        terminated,
    }
}

/// Structural verification of a resolution: surjectivity at stage 0,
/// d∘d = 0, stage-wise exactness rank identities, and (for `minimal`)
/// radical differentials together with Hom-complex vanishing — the
/// three equivalent minimality readings are each checked independently.
pub fn verify_resolution(res: &Resolution, minimal: bool) -> Result<()> {
    if res.stages.is_empty() {
        if !res.module.is_zero() {
            return Err(Error::Unsupported("empty resolution of nonzero module".into()));
        }
        return Ok(());
    }
    let d0 = &res.stages[0].map_to_prev;
    if d0.rank() != res.module.dim() {
        return Err(Error::Unsupported("stage-0 map not surjective".into()));
    }
    for t in 1..res.stages.len() {
        let dt = &res.stages[t].map_to_prev;
        let prev = &res.stages[t - 1].map_to_prev;
        if !dt.matmul(prev).is_zero() {
            return Err(Error::Unsupported(format!("d∘d ≠ 0 at stage {t}")));
        }
        // exactness at P_{t-1}: dim ker d_{t-1} = rank d_t
        let ker_dim = res.stages[t - 1].stack.module.dim() - prev.rank();
        if ker_dim != dt.rank() {
            return Err(Error::Unsupported(format!("not exact at stage {}", t - 1)));
        }
    }
    if res.terminated {
        let last = res.stages.last().unwrap();
        let ker = last.stack.module.dim() - last.map_to_prev.rank();
        if ker != 0 {
            return Err(Error::Unsupported("terminated but last kernel nonzero".into()));
        }
    }
    if minimal {
        for t in 1..res.stages.len() {
            // route 1: every projective-map entry has positive degree
            let pm = res.projective_map(t);
            let alg = &res.module.algebra;
            for row in &pm {
                for entry in row {
                    for bi in 0..alg.n() {
                        if !entry[bi].is_zero() {
                            return Err(Error::Unsupported(format!(
                                "non-radical differential at stage {t}"
                            )));
                        }
                    }
                }
            }
            // route 2: induced Hom(P_•, S_j) differentials vanish
            for j in 0..alg.n() {
                let h = hom_complex_differential(res, t, j);
                if !h.is_zero() {
                    return Err(Error::Unsupported(format!(
                        "Hom complex differential nonzero at stage {t} simple {j}"
                    )));
                }
            }
            // route 3: kernels lie in the radical (no generator coords)
            let syz = &res.syzygies[t - 1];
            for r in 0..syz.embedding.rows() {
                for &g in &res.stages[t - 1].stack.gen_coord {
                    if !syz.embedding.at(r, g).is_zero() {
                        return Err(Error::Unsupported(format!(
                            "syzygy {t} not inside the radical"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The map Hom(P_t, S_j) → Hom(P_{t+1}, S_j) induced by d_{t+1}.
/// Rows index the j-labeled summands of P_{t+1}, columns those of P_t;
/// the entry is the generator-to-generator coefficient of d_{t+1}.
pub fn hom_complex_differential(res: &Resolution, t: usize, j: usize) -> Matrix {
    let field = res.module.algebra.field;
    let cols: Vec<usize> = match res.stages.get(t) {
        Some(s) => (0..s.stack.summands.len())
            .filter(|&r| s.stack.summands[r].label == j)
            .collect(),
        None => Vec::new(),
    };
    if t + 1 >= res.stages.len() {
        return Matrix::zero(field, 0, cols.len());
    }
    let next = &res.stages[t + 1];
    let rows: Vec<usize> = (0..next.stack.summands.len())
        .filter(|&r| next.stack.summands[r].label == j)
        .collect();
    let mut m = Matrix::zero(field, rows.len(), cols.len());
    for (ri, &r) in rows.iter().enumerate() {
        let gc = next.stack.gen_coord[r];
        let row = next.map_to_prev.row(gc);
        for (ci, &c) in cols.iter().enumerate() {
            let coord = res.stages[t].stack.gen_coord[c];
            m.set(ri, ci, row[coord].clone());
        }
    }
    m
}

/// Three-valued homological verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Finite(usize),
    InfiniteCertified(PeriodicityWitness),
    Unknown(usize),
}

/// Ω^i ≅ Ω^j⟨shift⟩ with i < j and Ω^i ≠ 0; under the grading
/// convention M⟨s⟩(t) = M(s+t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityWitness {
    pub i: usize,
    pub j: usize,
    pub shift: i64,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Finite(d) => write!(f, "Finite({d})"),
            Verdict::InfiniteCertified(w) => write!(
                f,
                "InfiniteCertified(Omega^{} iso Omega^{}<{}>)",
                w.i, w.j, w.shift
            ),
            Verdict::Unknown(b) => write!(f, "Unknown(bound {b})"),
        }
    }
}

impl Verdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, Verdict::Finite(_))
    }
}

/// Projective dimension with truncation honesty: Finite(d) only when a
/// kernel vanished, InfiniteCertified only with a verified syzygy
/// periodicity isomorphism, otherwise Unknown(bound).
pub fn projective_dimension(m: &GradedRightModule, t_max: usize) -> (Verdict, Resolution) {
    let res = minimal_resolution(m, t_max);
    let verdict = verdict_from_resolution(&res, t_max);
    (verdict, res)
}

pub fn verdict_from_resolution(res: &Resolution, t_max: usize) -> Verdict {
    if res.terminated {
        return Verdict::Finite(res.stages.len().saturating_sub(1));
    }
    // periodicity certificate: Ω^i ≅ Ω^j⟨s⟩ forces nonzero syzygies forever
    let max_t = res.stages.len();
    for j in 1..=max_t {
        for i in 0..j {
            let omega_i = res.syzygy(i);
            let omega_j = res.syzygy(j);
            if omega_i.is_zero() || omega_j.is_zero() {
                continue;
            }
            let (Some(mi), Some(mj)) = (omega_i.min_degree(), omega_j.min_degree()) else {
                continue;
            };
            let s = mj - mi;
            let shifted = omega_j.shift_grading(s);
            if omega_i.dim_vector() != shifted.dim_vector() {
                continue;
            }
            if let IsoResult::Iso(_) = module_iso(omega_i, &shifted) {
                return Verdict::InfiniteCertified(PeriodicityWitness { i, j, shift: s });
            }
        }
    }
    Verdict::Unknown(t_max)
}

/// Supremum of the projective dimensions of the simple modules.
pub fn global_dimension(alg: &Arc<GradedBasicAlgebra>, t_max: usize) -> Verdict {
    let (v, _) = global_dimension_with_resolutions(alg, t_max);
    v
}

pub fn global_dimension_with_resolutions(
    alg: &Arc<GradedBasicAlgebra>,
    t_max: usize,
) -> (Verdict, Vec<Resolution>) {
    if alg.is_zero_algebra() {
        return (Verdict::Finite(0), Vec::new());
    }
    let mut best = 0usize;
    let mut unknown = None;
    let mut resolutions = Vec::new();
    let mut infinite = None;
    for i in 0..alg.n() {
        let s = simple_module(alg, i).expect("valid label");
        let (v, res) = projective_dimension(&s, t_max);
        match &v {
            Verdict::Finite(d) => best = best.max(*d),
            Verdict::InfiniteCertified(w) => {
                if infinite.is_none() {
                    infinite = Some(Verdict::InfiniteCertified(w.clone()));
                }
            }
            Verdict::Unknown(b) => unknown = Some(Verdict::Unknown(*b)),
        }
        resolutions.push(res);
    }
    let verdict = if let Some(v) = infinite {
        v
    } else if let Some(v) = unknown {
        v
    } else {
        Verdict::Finite(best)
    };
    (verdict, resolutions)
}

pub enum IsoResult {
    /// Verified invertible degree-0 intertwiner, rows index the source.
    Iso(Matrix),
    /// Graded dimension vectors differ: definitely not isomorphic.
    NonIso,
    Unknown,
}

/// Searches for a graded module isomorphism M → N: solves the
/// intertwining equations for the space of degree-0 homomorphisms, then
/// looks for an invertible element (basis homs, their sum, seeded random
/// small-integer combinations, and a full small-grid sweep when the hom
/// space is tiny). "Iso" always carries a verified witness; failure to
/// find one yields Unknown, never a negative claim.
pub fn module_iso(m: &GradedRightModule, n: &GradedRightModule) -> IsoResult {
    assert_eq!(
        *m.algebra, *n.algebra,
        "module_iso requires modules over the same algebra"
    );
    if m.dim_vector() != n.dim_vector() {
        return IsoResult::NonIso;
    }
    if m.dim() == 0 {
        return IsoResult::Iso(Matrix::zero(m.algebra.field, 0, 0));
    }
    let field = m.algebra.field;
    let dm = m.dim();
    let dn = n.dim();
    // unknowns: entries (i,j) with matching (support, degree) tags
    let mut unknowns = Vec::new();
    for i in 0..dm {
        for j in 0..dn {
            if m.basis[i].support == n.basis[j].support && m.basis[i].degree == n.basis[j].degree {
                unknowns.push((i, j));
            }
        }
    }
    let uidx: std::collections::HashMap<(usize, usize), usize> = unknowns
        .iter()
        .enumerate()
        .map(|(k, &p)| (p, k))
        .collect();
    let mut eq_rows: Vec<Vec<Scalar>> = Vec::new();
    for bi in m.algebra.n()..m.algebra.dim() {
        let am = &m.action[bi];
        let an = &n.action[bi];
        for i in 0..dm {
            for j in 0..dn {
                // (M(b)·F − F·N(b))[i][j] = 0
                let mut row = vec![field.zero(); unknowns.len()];
                let mut nontrivial = false;
                for k in 0..dm {
                    if let Some(&u) = uidx.get(&(k, j)) {
                        if !am.at(i, k).is_zero() {
                            row[u] = row[u].add(am.at(i, k));
                            nontrivial = true;
                        }
                    }
                }
                for l in 0..dn {
                    if let Some(&u) = uidx.get(&(i, l)) {
                        if !an.at(l, j).is_zero() {
                            row[u] = row[u].sub(an.at(l, j));
                            nontrivial = true;
                        }
                    }
                }
                if nontrivial {
                    eq_rows.push(row);
                }
            }
        }
    }
    let eq = if eq_rows.is_empty() {
        Matrix::zero(field, 0, unknowns.len())
    } else {
        Matrix::from_rows(field, eq_rows).expect("uniform field")
    };
    let homs = eq.kernel_basis();
    if homs.is_empty() {
        return IsoResult::Unknown;
    }
    let build = |coeffs: &[Scalar]| -> Matrix {
        let mut f = Matrix::zero(field, dm, dn);
        for (h, c) in homs.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (u, &(i, j)) in unknowns.iter().enumerate() {
                if !h[u].is_zero() {
                    let v = f.at(i, j).add(&c.mul(&h[u]));
                    f.set(i, j, v);
                }
            }
        }
        f
    };
    let is_witness = |f: &Matrix| -> bool {
        if f.rank() != dm {
            return false;
        }
        // re-verify the intertwining equations on the witness
        for bi in 0..m.algebra.dim() {
            if m.action[bi].matmul(f) != f.matmul(&n.action[bi]) {
                return false;
            }
        }
        true
    };
    let hd = homs.len();
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    for t in 0..hd {
        let mut c = vec![field.zero(); hd];
        c[t] = field.one();
        candidates.push(c);
    }
    candidates.push(vec![field.one(); hd]);
    let mut rng = ChaCha8Rng::seed_from_u64(0x484f4d414c47u64);
    for _ in 0..20 {
        let c: Vec<Scalar> = (0..hd)
            .map(|_| field.from_i64(rng.gen_range(-3i64..=3)))
            .collect();
        candidates.push(c);
    }
    if hd <= 3 {
        // exhaustive small integer grid
        let vals: Vec<i64> = (-2..=2).collect();
        let mut grid = vec![vec![]];
        for _ in 0..hd {
            let mut next = Vec::new();
            for g in &grid {
                for &v in &vals {
                    let mut g2: Vec<i64> = g.clone();
                    g2.push(v);
                    next.push(g2);
                }
            }
            grid = next;
        }
        for g in grid {
            candidates.push(g.iter().map(|&v| field.from_i64(v)).collect());
        }
    }
    for c in candidates {
        let f = build(&c);
        if is_witness(&f) {
            return IsoResult::Iso(f);
        }
    }
    IsoResult::Unknown
}

/// Linearity verdict for a graded resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearVerdict {
    LinearUpTo(usize),
    FailsAt(usize),
}

/// Checks that P_t of the minimal resolution is generated purely in
/// internal degree t (module generated in degree 0 required).
pub fn is_linear_resolution(m: &GradedRightModule, t_max: usize) -> LinearVerdict {
    let res = minimal_resolution(m, t_max);
    linearity_of(&res, t_max)
}

pub fn linearity_of(res: &Resolution, t_max: usize) -> LinearVerdict {
    for (t, stage) in res.stages.iter().enumerate() {
        for s in &stage.stack.summands {
            if s.shift != t as i64 {
                return LinearVerdict::FailsAt(t);
            }
        }
    }
    LinearVerdict::LinearUpTo(t_max)
}

/// Koszul test: the degree-0 semisimple module has a linear resolution.
pub fn is_koszul(alg: &Arc<GradedBasicAlgebra>, t_max: usize) -> LinearVerdict {
    let labels: Vec<usize> = (0..alg.n()).collect();
    let m = semisimple_module(alg, &labels).expect("labels valid");
    is_linear_resolution(&m, t_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::test_algebras::*;

    fn arc(a: GradedBasicAlgebra) -> Arc<GradedBasicAlgebra> {
        Arc::new(a)
    }

    #[test]
    fn simple_modules_are_one_dimensional() {
        let a = arc(nakayama(3, 2));
        for i in 0..3 {
            let s = simple_module(&a, i).unwrap();
            s.validate().unwrap();
            assert_eq!(s.dim(), 1);
            // arrows act by zero
            for bi in a.n()..a.dim() {
                assert!(s.action[bi].is_zero());
            }
        }
    }

    #[test]
    fn semisimple_bundle_dimension() {
        let a = arc(nakayama(3, 2));
        let s = semisimple_module(&a, &[0, 1]).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn projective_modules_enumerate_u_tagged_basis() {
        let a = arc(nakayama(3, 2));
        let p = projective_module(&a, 0, 0).unwrap();
        p.validate().unwrap();
        assert_eq!(p.dim(), 2); // e_1 and the arrow out of vertex 1
        let a2 = arc(a2_path_algebra());
        let p2 = projective_module(&a2, 1, 0).unwrap();
        assert_eq!(p2.dim(), 1); // S_2 is projective
        let ss = arc(semisimple(2));
        let ps = projective_module(&ss, 0, 0).unwrap();
        assert_eq!(ps.dim(), 1); // projective = simple
    }

    #[test]
    fn cover_of_projective_is_itself() {
        let a = arc(nakayama(3, 2));
        let p = projective_module(&a, 0, 0).unwrap();
        let cover = projective_cover(&p);
        assert_eq!(cover.stack.summands, vec![Summand { label: 0, shift: 0 }]);
        let syz = graded_kernel(&cover.stack, &cover.epi, &p);
        assert!(syz.module.is_zero());
    }

    #[test]
    fn cover_of_simple_over_nakayama() {
        // rad(e_1A) = span(a) ≅ S_2⟨−1⟩
        let a = arc(nakayama(3, 2));
        let s = simple_module(&a, 0).unwrap();
        let cover = projective_cover(&s);
        assert_eq!(cover.stack.summands, vec![Summand { label: 0, shift: 0 }]);
        let syz = graded_kernel(&cover.stack, &cover.epi, &s);
        assert_eq!(syz.module.dim(), 1);
        assert_eq!(
            syz.module.basis[0],
            ModBasisElem {
                support: 1,
                degree: 1
            }
        );
    }

    #[test]
    fn cover_is_additive_on_direct_sums() {
        let a = arc(nakayama(3, 2));
        let s = simple_module(&a, 0).unwrap();
        let m = direct_sum(&a, &[s.clone(), s]);
        let cover = projective_cover(&m);
        assert_eq!(cover.stack.summands.len(), 2);
        assert!(cover.stack.summands.iter().all(|su| su.label == 0));
    }

    #[test]
    fn resolution_of_projective_simple_has_length_zero() {
        let a = arc(a2_path_algebra());
        let s = simple_module(&a, 1).unwrap();
        let (v, res) = projective_dimension(&s, 10);
        assert_eq!(v, Verdict::Finite(0));
        verify_resolution(&res, true).unwrap();
    }

    #[test]
    fn resolution_of_s1_over_a2() {
        // 0 → e_2A⟨−1⟩ → e_1A → S_1 → 0
        let a = arc(a2_path_algebra());
        let s = simple_module(&a, 0).unwrap();
        let (v, res) = projective_dimension(&s, 10);
        assert_eq!(v, Verdict::Finite(1));
        assert_eq!(res.stages[0].stack.summands, vec![Summand { label: 0, shift: 0 }]);
        assert_eq!(res.stages[1].stack.summands, vec![Summand { label: 1, shift: 1 }]);
        verify_resolution(&res, true).unwrap();
    }

    #[test]
    fn periodic_resolution_over_nakayama() {
        // P_t = e_{(t mod 3)+1}A⟨−t⟩ forever
        let a = arc(nakayama(3, 2));
        let s = simple_module(&a, 0).unwrap();
        let res = minimal_resolution(&s, 7);
        assert!(!res.terminated);
        for (t, st) in res.stages.iter().enumerate() {
            assert_eq!(
                st.stack.summands,
                vec![Summand {
                    label: t % 3,
                    shift: t as i64
                }]
            );
        }
        verify_resolution(&res, true).unwrap();
    }

    #[test]
    fn infinite_certified_via_periodicity() {
        let a = arc(nakayama(3, 2));
        let s = simple_module(&a, 0).unwrap();
        let (v, _) = projective_dimension(&s, 10);
        match v {
            Verdict::InfiniteCertified(w) => {
                assert_eq!((w.i, w.j, w.shift), (0, 3, 3));
            }
            other => panic!("expected InfiniteCertified, got {other:?}"),
        }
    }

    #[test]
    fn global_dimension_cases() {
        assert_eq!(
            global_dimension(&arc(semisimple(2)), 10),
            Verdict::Finite(0)
        );
        assert_eq!(
            global_dimension(&arc(a2_path_algebra()), 10),
            Verdict::Finite(1)
        );
        assert!(matches!(
            global_dimension(&arc(nakayama(3, 2)), 10),
            Verdict::InfiniteCertified(_)
        ));
    }

    #[test]
    fn verdicts_stable_under_escalation() {
        let a = arc(nakayama(3, 3));
        let v1 = global_dimension(&a, 10);
        let v2 = global_dimension(&a, 20);
        match (&v1, &v2) {
            (Verdict::InfiniteCertified(w1), Verdict::InfiniteCertified(w2)) => {
                assert_eq!(w1, w2)
            }
            other => panic!("expected stable InfiniteCertified, got {other:?}"),
        }
    }

    #[test]
    fn iso_identity_and_dimension_mismatch() {
        let a = arc(nakayama(3, 2));
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        assert!(matches!(module_iso(&s1, &s1), IsoResult::Iso(_)));
        assert!(matches!(module_iso(&s1, &s2), IsoResult::NonIso));
    }

    #[test]
    fn iso_of_shifted_syzygies() {
        let a = arc(nakayama(3, 2));
        let s = simple_module(&a, 0).unwrap();
        let res = minimal_resolution(&s, 5);
        let omega3 = res.syzygy(3).shift_grading(3);
        assert!(matches!(module_iso(&s, &omega3), IsoResult::Iso(_)));
    }

    #[test]
    fn linearity_verdicts() {
        // Koszul: the rad²=0 cycle algebra
        assert_eq!(
            is_koszul(&arc(nakayama(3, 2)), 10),
            LinearVerdict::LinearUpTo(10)
        );
        // A_2 path algebra is Koszul
        assert_eq!(
            is_koszul(&arc(a2_path_algebra()), 10),
            LinearVerdict::LinearUpTo(10)
        );
        // k[x]/x³: Ω(S) is generated in degree 1 but Ω²(S) in degree 3,
        // so linearity fails at stage 2 (hand computation: Ω¹ = (x),
        // covered by eA⟨−1⟩; the kernel is (x²)·⟨−1⟩ generated in
        // degree 3 ≠ 2).
        let kx3 = arc(crate::quiver::compile(&loop_presentation(3)).unwrap());
        assert_eq!(is_koszul(&kx3, 10), LinearVerdict::FailsAt(2));
    }

    #[test]
    fn corner_restriction_examples() {
        let a = arc(nakayama(3, 2));
        let keep = vec![1, 2];
        let g = arc(a.corner(&keep).unwrap());
        // S_1 restricts to zero (it lies in the Serre subcategory T)
        let s1 = simple_module(&a, 0).unwrap();
        let r = corner_restriction(&s1, &keep, &g).unwrap();
        assert!(r.is_zero());
        // e_2A restricts to the Γ-projective e_2Γ with basis {e_2, b}
        let p2 = projective_module(&a, 1, 0).unwrap();
        let r2 = corner_restriction(&p2, &keep, &g).unwrap();
        r2.validate().unwrap();
        assert_eq!(r2.dim(), 2);
        let pg = projective_module(&g, 0, 0).unwrap();
        assert!(matches!(module_iso(&r2, &pg), IsoResult::Iso(_)));
        // full keep is the identity restriction
        let full = corner_restriction(&p2, &[0, 1, 2], &a).unwrap();
        assert_eq!(full.dim(), p2.dim());
    }

    #[test]
    fn padded_resolution_is_exact_but_not_minimal() {
        let a = arc(nakayama(3, 2));
        let s = simple_module(&a, 0).unwrap();
        let res = resolution_with_padding(&s, 6, Summand { label: 1, shift: 0 });
        verify_resolution(&res, false).unwrap();
        assert!(verify_resolution(&res, true).is_err());
    }

    #[test]
    fn resolution_differentials_compose_to_zero_as_algebra_maps() {
        let a = arc(nakayama(3, 3));
        let s = simple_module(&a, 0).unwrap();
        let res = minimal_resolution(&s, 6);
        // compose successive projective maps via algebra multiplication
        for t in 2..res.stages.len() {
            let d1 = res.projective_map(t); // P_t → P_{t-1}
            let d0 = res.projective_map(t - 1); // P_{t-1} → P_{t-2}
            let nr = res.stages[t - 2].stack.summands.len();
            let nc = res.stages[t].stack.summands.len();
            for r in 0..nr {
                for c in 0..nc {
                    let mut acc = vec![a.field.zero(); a.dim()];
                    for k in 0..res.stages[t - 1].stack.summands.len() {
                        let prod = a.multiply(&d0[r][k], &d1[k][c]);
                        for (i, x) in prod.iter().enumerate() {
                            acc[i] = acc[i].add(x);
                        }
                    }
                    assert!(acc.iter().all(|x| x.is_zero()));
                }
            }
        }
    }
}
