//! Exact field arithmetic and dense linear algebra: arbitrary-precision
//! rationals or a prime field, reduced row echelon form, kernel bases and
//! integer-polynomial determinants.
//!
//! All pivoting is deterministic (first nonzero entry in column order) so
//! every downstream basis choice is reproducible bit-for-bit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::{Error, Result};

/// The active coefficient field of a session: exact rationals or Z/p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    pub fn zero(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::Fp(p) => Scalar::Fp { p: *p, val: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::one()),
            Field::Fp(p) => Scalar::Fp { p: *p, val: 1 },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, val: m }
            }
        }
    }

    /// Parses a field name: `Q`, `F p`, or `Fp` (prime p).
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Q);
        }
        if let Some(rest) = s.strip_prefix('F') {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::FieldMismatch(format!("bad field `{s}`")))?;
            if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                return Err(Error::FieldMismatch(format!("{p} is not prime")));
            }
            return Ok(Field::Fp(p));
        }
        Err(Error::FieldMismatch(format!("unknown field `{s}`")))
    }

    /// Parses `num` or `num/den` into a scalar of this field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let (num_s, den_s) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s, "1"),
        };
        let num: i128 = num_s
            .trim()
            .parse()
            .map_err(|_| Error::FieldMismatch(format!("bad coefficient `{s}`")))?;
        let den: i128 = den_s
            .trim()
            .parse()
            .map_err(|_| Error::FieldMismatch(format!("bad coefficient `{s}`")))?;
        if den == 0 {
            return Err(Error::FieldMismatch(format!("zero denominator in `{s}`")));
        }
        match self {
            Field::Q => Ok(Scalar::Q(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            Field::Fp(p) => {
                let pn = *p as i128;
                let n = num.rem_euclid(pn) as u64;
                let d = den.rem_euclid(pn) as u64;
                let num_sc = Scalar::Fp { p: *p, val: n };
                let den_sc = Scalar::Fp { p: *p, val: d };
                if den_sc.is_zero() {
                    return Err(Error::FieldMismatch(format!(
                        "denominator of `{s}` vanishes mod {p}"
                    )));
                }
                Ok(num_sc.div(&den_sc))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F {p}"),
        }
    }
}

/// An exact scalar in the active field. Rationals are kept in lowest
/// terms with positive denominator (the `BigRational` canonical form).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u64, val: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    fn check(&self, o: &Scalar) {
        assert_eq!(self.field(), o.field(), "mixed-field scalar arithmetic");
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: (a + b) % p,
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: ((*a as u128 * *b as u128) % *p as u128) as u64,
            },
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: mod_inverse(*val, *p),
            },
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

/// Dense exact matrix over a single field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows, rejecting entries outside `field`.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::Shape("ragged rows".into()));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "entry field {:?} differs from matrix field {:?}",
                        s.field(),
                        field
                    )));
                }
                data.push(s.clone());
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            field,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "mixed-field entry");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.at(i, j).clone());
            }
        }
        m
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        assert_eq!(self.field, other.field, "matmul field mismatch");
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row-vector application: v (len rows) -> v * self (len cols).
    pub fn apply_row(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![self.field.zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() {
                    out[j] = out[j].add(&vi.mul(a));
                }
            }
        }
        out
    }

    /// Reduced row echelon form with deterministic pivoting: for each
    /// column in order, the first row (top-down) with a nonzero entry is
    /// chosen as pivot. Returns the RREF and the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for pc in 0..m.cols {
            if pr >= m.rows {
                break;
            }
            let mut sel = None;
            for r in pr..m.rows {
                if !m.at(r, pc).is_zero() {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            if sel != pr {
                for j in 0..m.cols {
                    let a = m.at(pr, j).clone();
                    let b = m.at(sel, j).clone();
                    m.set(pr, j, b);
                    m.set(sel, j, a);
                }
            }
            let inv = m.at(pr, pc).inv();
            for j in 0..m.cols {
                let v = m.at(pr, j).mul(&inv);
                m.set(pr, j, v);
            }
            for r in 0..m.rows {
                if r == pr || m.at(r, pc).is_zero() {
                    continue;
                }
                let f = m.at(r, pc).clone();
                for j in 0..m.cols {
                    let v = m.at(r, j).sub(&f.mul(m.at(pr, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space: vectors v with self * v = 0.
    /// One canonical vector per free column; the vector for free column
    /// `c` has entry 1 at `c` and zeros at every other free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for c in 0..self.cols {
            if pivot_set[c].is_some() {
                continue;
            }
            let mut vec = vec![self.field.zero(); self.cols];
            vec[c] = self.field.one();
            for (pc, slot) in pivot_set.iter().enumerate() {
                if let Some(row) = slot {
                    vec[pc] = r.at(*row, c).neg();
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Solves self * x = b exactly. Returns None when inconsistent
    /// (certified by a pivot appearing in the augmented column).
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let mut aug = Matrix::zero(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant over the field by elimination (square matrices).
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = self.field.one();
        for pc in 0..m.cols {
            let mut sel = None;
            for r in pc..m.rows {
                if !m.at(r, pc).is_zero() {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else {
                return Ok(self.field.zero());
            };
            if sel != pc {
                det = det.neg();
                for j in 0..m.cols {
                    let a = m.at(pc, j).clone();
                    let b = m.at(sel, j).clone();
                    m.set(pc, j, b);
                    m.set(sel, j, a);
                }
            }
            det = det.mul(m.at(pc, pc));
            let inv = m.at(pc, pc).inv();
            for r in pc + 1..m.rows {
                if m.at(r, pc).is_zero() {
                    continue;
                }
                let f = m.at(r, pc).mul(&inv);
                for j in pc..m.cols {
                    let v = m.at(r, j).sub(&f.mul(m.at(pc, j)));
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }
}

/// Integer polynomial in one variable `t`, coefficient index = power.
/// No trailing zero coefficients except for the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly(Vec::new())
    }

    pub fn one() -> IntPoly {
        IntPoly(vec![BigInt::one()])
    }

    pub fn constant(n: i64) -> IntPoly {
        IntPoly::from_coeffs(vec![BigInt::from(n)])
    }

    pub fn monomial(coeff: i64, power: usize) -> IntPoly {
        let mut v = vec![BigInt::zero(); power + 1];
        v[power] = BigInt::from(coeff);
        IntPoly::from_coeffs(v)
    }

    pub fn from_coeffs(mut v: Vec<BigInt>) -> IntPoly {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        IntPoly(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] += c;
        }
        IntPoly::from_coeffs(v)
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(v)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if i == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                if i == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{i}")?;
                }
            } else if i == 1 {
                write!(f, "{abs}*t")?;
            } else {
                write!(f, "{abs}*t^{i}")?;
            }
        }
        Ok(())
    }
}

/// Exact determinant of a square grid of integer polynomials by cofactor
/// expansion, memoized over column subsets so repeated minors are shared.
pub fn det_int_poly(grid: &[Vec<IntPoly>]) -> Result<IntPoly> {
    let n = grid.len();
    for row in grid {
        if row.len() != n {
            return Err(Error::Shape("determinant of non-square grid".into()));
        }
    }
    if n == 0 {
        return Ok(IntPoly::one());
    }
    assert!(n <= 64, "grid too large for subset memoization");
    use std::collections::HashMap;
    // key: bitmask of remaining columns; row index = n - popcount(mask)
    fn minor(grid: &[Vec<IntPoly>], mask: u64, memo: &mut HashMap<u64, IntPoly>) -> IntPoly {
        if mask == 0 {
            return IntPoly::one();
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let n = grid.len();
        let row = n - mask.count_ones() as usize;
        let mut acc = IntPoly::zero();
        let mut sign = 1i64;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let entry = &grid[row][c];
            if !entry.is_zero() {
                let sub = minor(grid, mask & !(1 << c), memo);
                let term = entry.mul(&sub);
                acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            sign = -sign;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    Ok(minor(grid, full, &mut HashMap::new()))
}

/// Exact determinant of an integer matrix, via the polynomial route.
pub fn det_bigint(m: &[Vec<BigInt>]) -> Result<BigInt> {
    let grid: Vec<Vec<IntPoly>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| IntPoly::from_coeffs(vec![c.clone()]))
                .collect()
        })
        .collect();
    let p = det_int_poly(&grid)?;
    Ok(p.eval(&BigInt::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn qi(n: i64) -> Scalar {
        q(n, 1)
    }

    #[test]
    fn rref_identity_fixed() {
        let m = Matrix::identity(Field::Q, 2);
        let (r, p) = m.rref();
        assert_eq!(r, m);
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_zero_fixed() {
        let m = Matrix::zero(Field::Q, 3, 3);
        let (r, p) = m.rref();
        assert!(r.is_zero());
        assert!(p.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        // hand row-reduction: [[2,4],[1,2]] -> [[1,2],[0,0]]
        let m = Matrix::from_rows(Field::Q, vec![vec![qi(2), qi(4)], vec![qi(1), qi(2)]]).unwrap();
        let (r, p) = m.rref();
        let expect =
            Matrix::from_rows(Field::Q, vec![vec![qi(1), qi(2)], vec![qi(0), qi(0)]]).unwrap();
        assert_eq!(r, expect);
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn mixed_field_rejected() {
        let err = Matrix::from_rows(Field::Q, vec![vec![Scalar::Fp { p: 5, val: 1 }]]);
        assert!(matches!(err, Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn kernel_identity_empty() {
        assert!(Matrix::identity(Field::Q, 3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_zero_map() {
        let m = Matrix::zero(Field::Q, 2, 3);
        assert_eq!(m.kernel_basis().len(), 3);
    }

    #[test]
    fn kernel_row_solved_by_hand() {
        // [[1,1]] has kernel spanned by (−1, 1) in canonical free-column form
        let m = Matrix::from_rows(Field::Q, vec![vec![qi(1), qi(1)]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![qi(-1), qi(1)]);
    }

    #[test]
    fn rank_plus_kernel_is_cols() {
        let m = Matrix::from_rows(
            Field::Q,
            vec![
                vec![qi(1), qi(2), qi(3), qi(4)],
                vec![qi(2), qi(4), qi(6), qi(8)],
                vec![qi(0), qi(1), qi(0), qi(1)],
            ],
        )
        .unwrap();
        let k = m.kernel_basis();
        assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            for i in 0..m.rows() {
                let mut acc = Field::Q.zero();
                for j in 0..m.cols() {
                    acc = acc.add(&m.at(i, j).mul(&v[j]));
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn solve_exact_and_inconsistent() {
        let m = Matrix::from_rows(Field::Q, vec![vec![qi(2), qi(0)], vec![qi(0), qi(3)]]).unwrap();
        let x = m.solve(&[qi(1), qi(1)]).unwrap();
        assert_eq!(x, vec![q(1, 2), q(1, 3)]);
        let sing =
            Matrix::from_rows(Field::Q, vec![vec![qi(1), qi(1)], vec![qi(1), qi(1)]]).unwrap();
        assert!(sing.solve(&[qi(0), qi(1)]).is_none());
    }

    #[test]
    fn fp_arithmetic() {
        let f = Field::Fp(7);
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(a.mul(&b), f.from_i64(1));
        assert_eq!(a.inv(), f.from_i64(5));
        assert_eq!(f.from_i64(-1), f.from_i64(6));
    }

    #[test]
    fn det_poly_trivial() {
        assert_eq!(det_int_poly(&[vec![IntPoly::one()]]).unwrap(), IntPoly::one());
    }

    #[test]
    fn det_poly_diagonal() {
        // diag(1+t, 1−t) -> 1−t²
        let a = IntPoly::from_coeffs(vec![BigInt::from(1), BigInt::from(1)]);
        let b = IntPoly::from_coeffs(vec![BigInt::from(1), BigInt::from(-1)]);
        let d = det_int_poly(&[vec![a, IntPoly::zero()], vec![IntPoly::zero(), b]]).unwrap();
        assert_eq!(
            d,
            IntPoly::from_coeffs(vec![BigInt::from(1), BigInt::from(0), BigInt::from(-1)])
        );
    }

    #[test]
    fn det_poly_cofactor() {
        // [[1,t],[t,1]] -> 1−t² by cofactor expansion
        let one = IntPoly::one();
        let t = IntPoly::monomial(1, 1);
        let d = det_int_poly(&[vec![one.clone(), t.clone()], vec![t, one]]).unwrap();
        assert_eq!(
            d,
            IntPoly::from_coeffs(vec![BigInt::from(1), BigInt::from(0), BigInt::from(-1)])
        );
    }

    #[test]
    fn det_rational_matches_poly_route() {
        let rows = vec![vec![3i64, 1, -2], vec![0, 4, 5], vec![-1, 2, 2]];
        let m = Matrix::from_rows(
            Field::Q,
            rows.iter()
                .map(|r| r.iter().map(|&x| qi(x)).collect())
                .collect(),
        )
        .unwrap();
        let dq = m.det().unwrap();
        let grid: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let dz = det_bigint(&grid).unwrap();
        assert_eq!(dq, Scalar::Q(BigRational::from_integer(dz)));
    }

    #[test]
    fn nonsquare_det_rejected() {
        assert!(matches!(
            det_int_poly(&[vec![IntPoly::one(), IntPoly::one()]]),
            Err(Error::Shape(_))
        ));
    }
}
