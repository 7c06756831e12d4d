//! Cartan matrices (plain and graded), Euler matrices from minimal
//! resolutions, and the Jacobi block-determinant reduction relating
//! cd(A) to cd(Γ), with the Wilson graded-determinant check on Y(e).
//!
//! Conventions pinned here: C(i,j) = dim e_jAe_i, E(i,j) = alternating
//! multiplicity of e_iA in the minimal resolution of S_j, and with
//! these orientations C·E = I (the source text phrases the inverse as a
//! transpose; determinant-level conclusions are unaffected and reports
//! print both readings).

use crate::algebra::GradedBasicAlgebra;
use crate::ext::{ext_algebra, ExtAlgebra, FinitenessReport};
use crate::linalg::{det_bigint, det_int_poly, IntPoly};
use crate::module::{global_dimension_with_resolutions, Resolution, Verdict};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::Arc;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// C(i,j) = dim e_jAe_i, counting basis elements by (u = j, v = i).
pub fn cartan_matrix(alg: &GradedBasicAlgebra) -> IntMatrix {
    let n = alg.n();
    let mut c = vec![vec![BigInt::zero(); n]; n];
    for b in &alg.basis {
        c[b.v][b.u] += 1;
    }
    c
}

/// Degree-refined Cartan matrix: entry (i,j) = Σ_d dim(e_jAe_i)(d)·t^d.
pub fn graded_cartan(alg: &GradedBasicAlgebra) -> Vec<Vec<IntPoly>> {
    let n = alg.n();
    let mut c = vec![vec![IntPoly::zero(); n]; n];
    for b in &alg.basis {
        let mono = IntPoly::monomial(1, b.deg);
        c[b.v][b.u] = c[b.v][b.u].add(&mono);
    }
    c
}

/// cd(A); the zero algebra gets the conventional value 1.
pub fn cartan_det(alg: &GradedBasicAlgebra) -> BigInt {
    if alg.is_zero_algebra() {
        return BigInt::one();
    }
    det_bigint(&cartan_matrix(alg)).expect("square by construction")
}

pub struct EulerMatrix {
    /// E(i,j) = Σ_t (−1)^t · mult(e_iA in P_t of the resolution of S_j)
    pub entries: IntMatrix,
    /// true only when gl.dim A = Finite(d) was certified (sums complete)
    pub complete: bool,
    pub gldim: Verdict,
}

pub fn euler_matrix(alg: &Arc<GradedBasicAlgebra>, t_max: usize) -> EulerMatrix {
    let (gldim, resolutions) = global_dimension_with_resolutions(alg, t_max);
    euler_from_resolutions(alg, &resolutions, gldim)
}

pub fn euler_from_resolutions(
    alg: &Arc<GradedBasicAlgebra>,
    resolutions: &[Resolution],
    gldim: Verdict,
) -> EulerMatrix {
    let n = alg.n();
    let mut e = vec![vec![BigInt::zero(); n]; n];
    for (j, res) in resolutions.iter().enumerate() {
        for (t, stage) in res.stages.iter().enumerate() {
            let sign = if t % 2 == 0 { 1 } else { -1 };
            for s in &stage.stack.summands {
                e[s.label][j] += sign;
            }
        }
    }
    let complete = gldim.is_finite();
    EulerMatrix {
        entries: e,
        complete,
        gldim,
    }
}

fn principal_block(m: &IntMatrix, idx: &[usize]) -> IntMatrix {
    idx.iter()
        .map(|&r| idx.iter().map(|&c| m[r][c].clone()).collect())
        .collect()
}

fn matmul_int(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn is_identity(m: &IntMatrix) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, v)| {
            if i == j {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    })
}

pub struct CartanReduction {
    pub support: Vec<usize>,
    pub cd_a: BigInt,
    pub cd_gamma: BigInt,
    pub det_w: BigInt,
    /// det(C_A) · det(W) = det(Γ-block of C_A) = cd(Γ), exact
    pub jacobi_ok: bool,
    /// C_A · E = I under the pinned orientation
    pub ce_identity: bool,
    pub gldim_a: Verdict,
    pub gldim_gamma: Verdict,
    pub gldim_ye: Verdict,
    pub ye_report: FinitenessReport,
    /// Some(det W == 1) when gl.dim Y(e) is certified finite
    pub det_w_is_one: Option<bool>,
    /// det C_{Y(e)}(t) when Y(e) is certified finite-dimensional
    pub wilson_graded_det: Option<IntPoly>,
    pub euler: EulerMatrix,
    pub cartan: IntMatrix,
}

/// The §-level block-determinant reduction for one instance (A, e):
/// requires a complete Euler matrix, i.e. a certified finite global
/// dimension of A.
pub fn cartan_reduction(
    alg: &Arc<GradedBasicAlgebra>,
    e_support: &[usize],
    t_max: usize,
) -> Result<CartanReduction> {
    let mut support = e_support.to_vec();
    support.sort_unstable();
    support.dedup();
    for &l in &support {
        if l >= alg.n() {
            return Err(Error::UnknownLabel(format!("idempotent index {l}")));
        }
    }
    let euler = euler_matrix(alg, t_max);
    if !euler.complete {
        return Err(Error::Bound(format!(
            "Euler matrix incomplete: gl.dim A = {} at bound {t_max}",
            euler.gldim
        )));
    }
    let cartan = cartan_matrix(alg);
    let cd_a = cartan_det(alg);
    let complement: Vec<usize> = (0..alg.n()).filter(|l| !support.contains(l)).collect();
    let gamma = Arc::new(alg.corner(&complement)?);
    let cd_gamma = cartan_det(&gamma);
    let gldim_gamma = crate::module::global_dimension(&gamma, t_max);
    let w = principal_block(&euler.entries, &support);
    let det_w = if w.is_empty() {
        BigInt::one()
    } else {
        det_bigint(&w)?
    };
    // cd(Γ) equals the determinant of the Γ-principal block of C_A
    let gamma_block = principal_block(&cartan, &complement);
    let det_gamma_block = if gamma_block.is_empty() {
        BigInt::one()
    } else {
        det_bigint(&gamma_block)?
    };
    let jacobi_ok = &cd_a * &det_w == det_gamma_block && det_gamma_block == cd_gamma;
    let ce_identity = is_identity(&matmul_int(&cartan, &euler.entries));

    let y: ExtAlgebra = ext_algebra(alg, &support, t_max)?;
    let gldim_ye = crate::module::global_dimension(&y.algebra, t_max);
    let (det_w_is_one, wilson_graded_det) = match y.report {
        FinitenessReport::CertifiedFiniteDim { .. } => {
            let g = graded_cartan(&y.algebra);
            let wd = if g.is_empty() {
                IntPoly::one()
            } else {
                det_int_poly(&g)?
            };
            let flag = if gldim_ye.is_finite() {
                Some(det_w.is_one())
            } else {
                None
            };
            (flag, Some(wd))
        }
        _ => (None, None),
    };

    Ok(CartanReduction {
        support,
        cd_a,
        cd_gamma,
        det_w,
        jacobi_ok,
        ce_identity,
        gldim_a: euler.gldim.clone(),
        gldim_gamma,
        gldim_ye,
        ye_report: y.report,
        det_w_is_one,
        wilson_graded_det,
        euler,
        cartan,
    })
}

fn render_int_matrix(name: &str, m: &IntMatrix, out: &mut String) {
    use std::fmt::Write;
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            writeln!(out, "{name}[{}][{}] = {v}", i + 1, j + 1).unwrap();
        }
    }
}

impl CartanReduction {
    /// Deterministic text block for reports and the CLI machine block.
    pub fn render(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        writeln!(s, "det_CA = {}", self.cd_a).unwrap();
        writeln!(s, "cd_Gamma = {}", self.cd_gamma).unwrap();
        writeln!(s, "det_W = {}", self.det_w).unwrap();
        writeln!(s, "jacobi_identity = {}", self.jacobi_ok).unwrap();
        writeln!(s, "CE_identity = {}", self.ce_identity).unwrap();
        writeln!(s, "gldim_A = {}", self.gldim_a).unwrap();
        writeln!(s, "gldim_Gamma = {}", self.gldim_gamma).unwrap();
        writeln!(s, "gldim_Ye = {}", self.gldim_ye).unwrap();
        writeln!(s, "Ye_finiteness = {}", self.ye_report).unwrap();
        match &self.det_w_is_one {
            Some(ok) => writeln!(s, "det_W_is_one = {ok}").unwrap(),
            None => writeln!(s, "det_W_is_one = not-applicable").unwrap(),
        }
        match &self.wilson_graded_det {
            Some(p) => writeln!(s, "graded_det_C_Ye = {p}").unwrap(),
            None => writeln!(s, "graded_det_C_Ye = not-computed").unwrap(),
        }
        render_int_matrix("C", &self.cartan, &mut s);
        render_int_matrix("E", &self.euler.entries, &mut s);
        // orientation note: computed C·E = I; the transpose phrasing
        // E = (C^{-1})^t appears in the literature — determinants agree
        writeln!(s, "orientation = C*E=I (transpose-invariant at determinant level)")
            .unwrap();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::test_algebras::*;
    use num_traits::ToPrimitive;

    fn arc(a: GradedBasicAlgebra) -> Arc<GradedBasicAlgebra> {
        Arc::new(a)
    }

    fn ints(m: &IntMatrix) -> Vec<Vec<i64>> {
        m.iter()
            .map(|r| r.iter().map(|v| v.to_i64().unwrap()).collect())
            .collect()
    }

    #[test]
    fn cartan_matrix_examples() {
        assert_eq!(
            ints(&cartan_matrix(&semisimple(2))),
            vec![vec![1, 0], vec![0, 1]]
        );
        // A_2: e_1Ae_2 = {a} contributes to entry (2,1)
        assert_eq!(
            ints(&cartan_matrix(&a2_path_algebra())),
            vec![vec![1, 0], vec![1, 1]]
        );
        let c3 = cartan_matrix(&nakayama(3, 2));
        assert_eq!(
            ints(&c3),
            vec![vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]]
        );
        assert_eq!(det_bigint(&c3).unwrap().to_i64().unwrap(), 2);
    }

    #[test]
    fn cartan_det_conventions() {
        assert_eq!(cartan_det(&GradedBasicAlgebra::zero(crate::linalg::Field::Q)), BigInt::one());
        assert_eq!(cartan_det(&a2_path_algebra()), BigInt::one());
        assert_eq!(cartan_det(&nakayama(3, 2)).to_i64().unwrap(), 2);
    }

    #[test]
    fn graded_cartan_evaluates_to_cartan_at_one() {
        for alg in [nakayama(3, 2), a3_rad2(), a2_path_algebra()] {
            let c = cartan_matrix(&alg);
            let g = graded_cartan(&alg);
            for i in 0..alg.n() {
                for j in 0..alg.n() {
                    assert_eq!(g[i][j].eval(&BigInt::one()), c[i][j]);
                }
            }
        }
        assert_eq!(
            format!("{}", graded_cartan(&a2_path_algebra())[1][0]),
            "t"
        );
    }

    #[test]
    fn euler_matrix_of_a2() {
        let a = arc(a2_path_algebra());
        let e = euler_matrix(&a, 10);
        assert!(e.complete);
        assert_eq!(ints(&e.entries), vec![vec![1, 0], vec![-1, 1]]);
        // pinned orientation: C·E = I (not E transposed)
        let prod = matmul_int(&cartan_matrix(&a), &e.entries);
        assert!(is_identity(&prod));
    }

    #[test]
    fn euler_matrix_incomplete_on_infinite_gldim() {
        let a = arc(nakayama(3, 2));
        let e = euler_matrix(&a, 10);
        assert!(!e.complete);
        assert!(cartan_reduction(&a, &[0], 10).is_err());
    }

    #[test]
    fn corner_cartan_det_is_principal_block_det() {
        let a = nakayama(3, 2);
        let keep = vec![1, 2];
        let corner = a.corner(&keep).unwrap();
        let block = principal_block(&cartan_matrix(&a), &keep);
        assert_eq!(cartan_det(&corner), det_bigint(&block).unwrap());
    }

    #[test]
    fn reduction_on_a2_e1() {
        let a = arc(a2_path_algebra());
        let r = cartan_reduction(&a, &[0], 20).unwrap();
        assert_eq!(r.cd_a, BigInt::one());
        assert_eq!(r.cd_gamma, BigInt::one());
        assert!(r.jacobi_ok && r.ce_identity);
        assert_eq!(r.det_w_is_one, Some(true));
        assert_eq!(r.wilson_graded_det, Some(IntPoly::one()));
    }

    #[test]
    fn reduction_on_a3_rad2_e2() {
        // a genuinely nontrivial instance: gl.dim A, Γ, Y(e) all finite
        let a = arc(a3_rad2());
        let r = cartan_reduction(&a, &[1], 20).unwrap();
        assert_eq!(r.cd_a, BigInt::one());
        assert_eq!(r.cd_gamma, BigInt::one());
        assert!(r.gldim_a.is_finite());
        assert!(r.gldim_gamma.is_finite());
        assert!(r.gldim_ye.is_finite());
        assert!(r.jacobi_ok && r.ce_identity);
        assert_eq!(r.det_w_is_one, Some(true));
    }

    #[test]
    fn reduction_with_full_support() {
        // e = everything: Γ = 0, cd(Γ) = 1, det C_A · det E = 1
        let a = arc(a3_path_algebra());
        let r = cartan_reduction(&a, &[0, 1, 2], 20).unwrap();
        assert_eq!(r.cd_gamma, BigInt::one());
        assert!(r.jacobi_ok);
        assert_eq!(&r.cd_a * &r.det_w, BigInt::one());
    }

    #[test]
    fn jacobi_identity_on_random_integer_matrices() {
        // det(M)·det(M^{-1}[J,J]) = det(M[Jᶜ,Jᶜ]) — checked via the
        // adjugate to stay in integers: det(adj(M)[J,J]) =
        // det(M)^{|J|-1}·det(M[Jᶜ,Jᶜ]) avoids rationals entirely; here
        // we verify the rational identity directly over Q instead.
        use crate::linalg::{Field, Matrix};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let field = Field::Q;
        let mut tested = 0;
        while tested < 25 {
            let n = rng.gen_range(2usize..=5);
            let mut m = Matrix::zero(field, n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, field.from_i64(rng.gen_range(-3i64..=3)));
                }
            }
            let det = m.det().unwrap();
            if det.is_zero() {
                continue;
            }
            tested += 1;
            let jsz = rng.gen_range(1usize..n);
            let jset: Vec<usize> = (0..jsz).collect();
            let jcomp: Vec<usize> = (jsz..n).collect();
            // invert m over Q by solving against identity columns
            let mut inv = Matrix::zero(field, n, n);
            for c in 0..n {
                let mut b = vec![field.zero(); n];
                b[c] = field.one();
                let x = m.solve(&b).unwrap();
                for r in 0..n {
                    inv.set(r, c, x[r].clone());
                }
            }
            let sub = |mm: &Matrix, idx: &[usize]| {
                let mut s = Matrix::zero(field, idx.len(), idx.len());
                for (a, &r) in idx.iter().enumerate() {
                    for (b, &c) in idx.iter().enumerate() {
                        s.set(a, b, mm.at(r, c).clone());
                    }
                }
                s
            };
            let lhs = det.mul(&sub(&inv, &jset).det().unwrap());
            let rhs = sub(&m, &jcomp).det().unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
