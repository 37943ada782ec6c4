//! Symmetric invertible forms over GF(q): evaluation, isotropic counts,
//! type classification, Witt index, totally isotropic subspaces, and the
//! constructive Witt extension (isometry completion).

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linalg::{bilinear, vec_scale, vec_sub, Mat, Vect};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Parabolic,
    Hyperbolic,
    Elliptic,
}

impl std::fmt::Display for FormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FormKind::Parabolic => "parabolic",
            FormKind::Hyperbolic => "hyperbolic",
            FormKind::Elliptic => "elliptic",
        };
        write!(f, "{s}")
    }
}

/// Classification of a nondegenerate symmetric form: type, Witt index r and
/// the generator size s = (q^r - 1)/(q - 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormClass {
    pub kind: FormKind,
    pub witt_index: usize,
    pub generator_size: u64,
}

/// An invertible symmetric n x n matrix over GF(q), together with the
/// quadratic form x^T A x it defines.
#[derive(Clone, Debug, PartialEq)]
pub struct SymForm {
    pub field: Field,
    pub n: usize,
    pub a: Mat,
    /// Identifier used in certificates ("minkowski", "antidiag", ... or "custom").
    pub name: String,
}

impl SymForm {
    pub fn new(a: Mat) -> Result<SymForm> {
        Self::named(a, "custom")
    }

    pub fn named(a: Mat, name: &str) -> Result<SymForm> {
        if a.rows != a.cols || a.rows < 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: a.rows });
        }
        if !a.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if a.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(SymForm { field: a.field.clone(), n: a.rows, a, name: name.to_string() })
    }

    /// x^T A x.
    pub fn evaluate(&self, x: &[Elt]) -> Result<Elt> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        Ok(bilinear(&self.a, x, x))
    }

    /// x^T A y.
    pub fn bilin(&self, x: &[Elt], y: &[Elt]) -> Elt {
        bilinear(&self.a, x, y)
    }

    pub fn is_isotropic(&self, x: &[Elt]) -> bool {
        bilinear(&self.a, x, x).is_zero()
    }

    /// Closed-form |{x : x^T A x = b}| (even/odd n cases via v and eta).
    pub fn isotropic_count(&self, b: &Elt) -> u128 {
        let f = &self.field;
        let q = f.q() as i128;
        let n = self.n as u32;
        let det = self.a.det();
        let v_b: i128 = if b.is_zero() { q - 1 } else { -1 };
        let count: i128 = if n % 2 == 0 {
            let disc = f.scale(&det, if (n / 2) % 2 == 0 { 1 } else { -1 });
            q.pow(n - 1) + v_b * q.pow((n - 2) / 2) * f.eta(&disc) as i128
        } else {
            let arg = f.mul(&f.scale(b, if ((n - 1) / 2) % 2 == 0 { 1 } else { -1 }), &det);
            q.pow(n - 1) + q.pow((n - 1) / 2) * f.eta(&arg) as i128
        };
        count as u128
    }

    /// Brute-force |{x : x^T A x = b}| for cross-checking (q^n enumeration).
    pub fn isotropic_count_brute(&self, b: &Elt) -> u128 {
        self.vectors().filter(|x| &bilinear(&self.a, x, x) == b).count() as u128
    }

    /// All q^n vectors, first coordinate most significant, by element code.
    pub fn vectors(&self) -> impl Iterator<Item = Vect> + '_ {
        let f = self.field.clone();
        let q = f.q();
        let n = self.n;
        let total = q.checked_pow(n as u32).expect("q^n fits u64");
        (0..total).map(move |mut code| {
            let mut v = vec![f.zero(); n];
            for i in (0..n).rev() {
                v[i] = f.from_code(code % q);
                code /= q;
            }
            v
        })
    }

    pub fn classify(&self) -> FormClass {
        let f = &self.field;
        let q = f.q();
        let n = self.n;
        let (kind, r) = if n % 2 == 1 {
            (FormKind::Parabolic, (n - 1) / 2)
        } else {
            let det = self.a.det();
            let disc = f.scale(&det, if (n / 2) % 2 == 0 { 1 } else { -1 });
            if f.eta(&disc) == 1 {
                (FormKind::Hyperbolic, n / 2)
            } else {
                (FormKind::Elliptic, n / 2 - 1)
            }
        };
        let s = if r == 0 { 0 } else { (q.pow(r as u32) - 1) / (q - 1) };
        FormClass { kind, witt_index: r, generator_size: s }
    }

    /// det(A + x y^T) via the rank-one update identity (det A)(1 + y^T A^{-1} x).
    pub fn rank_one_det(&self, x: &[Elt], y: &[Elt]) -> Elt {
        let f = &self.field;
        let det = self.a.det();
        let ainv = self.a.inverse().expect("form matrix invertible");
        let inner = bilinear(&Mat::identity(f, self.n), y, &ainv.mul_vec(x));
        f.mul(&det, &f.add(&f.one(), &inner))
    }

    /// Congruence reduction to diag(1,...,1,delta) with delta in {1, d}:
    /// returns (T, delta) with T^T A T = diag(1,...,1,delta).
    pub fn canonical_congruence(&self) -> (Mat, Elt) {
        let f = &self.field;
        let n = self.n;
        // symmetric Gaussian congruence to a diagonal matrix
        let mut a = self.a.clone();
        let mut t = Mat::identity(f, n);
        for i in 0..n {
            if a.get(i, i).is_zero() {
                // try to bring a nonzero diagonal entry into position i
                if let Some(j) = (i + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                    congr_swap(&mut a, &mut t, i, j);
                } else {
                    // all remaining diagonal zero; some off-diagonal is nonzero
                    let j = (i + 1..n)
                        .find(|&j| !a.get(i, j).is_zero())
                        .expect("nondegenerate form has a nonzero entry in each row");
                    // column_i += column_j makes the diagonal entry 2 a_ij != 0
                    congr_add(&mut a, &mut t, i, j, &f.one());
                }
            }
            let pivot = a.get(i, i).clone();
            let pinv = f.inv(&pivot).expect("pivot nonzero");
            for j in i + 1..n {
                if !a.get(i, j).is_zero() {
                    let c = f.neg(&f.mul(a.get(i, j), &pinv));
                    congr_add(&mut a, &mut t, j, i, &c);
                }
            }
        }
        // normalize each diagonal entry to 1 or d
        let d = f.find_nonsquare();
        let mut kinds = vec![false; n]; // true = entry is d
        for i in 0..n {
            let v = a.get(i, i).clone();
            let (s, is_d) = match f.sqrt(&v) {
                Some(s) => (s, false),
                None => {
                    let vd = f.div(&v, &d).expect("d nonzero");
                    (f.sqrt(&vd).expect("v/d must be a square"), true)
                }
            };
            let sinv = f.inv(&s).expect("s nonzero");
            congr_scale(&mut a, &mut t, i, &sinv);
            kinds[i] = is_d;
        }
        // move the d entries to the tail
        let mut order: Vec<usize> = (0..n).filter(|&i| !kinds[i]).collect();
        order.extend((0..n).filter(|&i| kinds[i]));
        let perm = permutation_matrix(f, &order);
        a = perm.transpose().mul(&a).mul(&perm);
        t = t.mul(&perm);
        let ones = kinds.iter().filter(|&&k| !k).count();
        // collapse pairs (d, d) -> (1, 1) with a rotation block built from
        // a^2 + b^2 = 1/d
        let mut ds = n - ones;
        let dinv = f.inv(&d).expect("d nonzero");
        let (ca, cb) = f.two_square_decompose(&dinv);
        while ds >= 2 {
            let i = n - ds;
            let mut rot = Mat::identity(f, n);
            rot.set(i, i, ca.clone());
            rot.set(i + 1, i, cb.clone());
            rot.set(i, i + 1, f.neg(&cb));
            rot.set(i + 1, i + 1, ca.clone());
            a = rot.transpose().mul(&a).mul(&rot);
            t = t.mul(&rot);
            // the block is now identity; if not, the rotation above is wrong
            debug_assert_eq!(a.get(i, i), &f.one());
            ds -= 2;
        }
        let delta = if ds == 1 { d } else { f.one() };
        debug_assert_eq!(&t.transpose().mul(&self.a).mul(&t), &expected_diag(f, n, &delta));
        (t, delta)
    }

    /// P with P^T A P = B, for congruent forms over the same field.
    pub fn congruence_to(&self, other: &SymForm) -> Result<Mat> {
        let (ta, da) = self.canonical_congruence();
        let (tb, db) = other.canonical_congruence();
        if self.n != other.n || da != db {
            return Err(Error::IncompatibleValues);
        }
        let p = ta.mul(&tb.inverse()?);
        debug_assert_eq!(p.transpose().mul(&self.a).mul(&p), other.a);
        Ok(p)
    }

    /// Constructive Witt extension: P invertible with P^T A P = A and
    /// P Q1 = Q2, given rank Q1 = m = rank Q2 and Q1^T A Q1 = Q2^T A Q2.
    pub fn witt_extension(&self, q1: &Mat, q2: &Mat) -> Result<Mat> {
        let f = &self.field;
        let n = self.n;
        let m = q1.cols;
        if q1.rows != n || q2.rows != n || q2.cols != m {
            return Err(Error::DimensionMismatch { expected: n, got: q1.rows });
        }
        if q1.rank() != m || q2.rank() != m {
            return Err(Error::RankDeficient);
        }
        let g = q1.transpose().mul(&self.a).mul(q1);
        if g != q2.transpose().mul(&self.a).mul(q2) {
            return Err(Error::GramMismatch);
        }
        // Split col(Q) into a part where the Gram is invertible and the
        // radical, by one change of basis S computed from G alone (so it is
        // identical on both sides).
        let radical = g.null_space();
        let d = radical.len();
        let mut s_cols: Vec<Vect> = Vec::new();
        // complete the radical to a basis of F^m with standard vectors
        for i in 0..m {
            let mut e = vec![f.zero(); m];
            e[i] = f.one();
            let mut cand: Vec<Vect> = s_cols.clone();
            cand.extend(radical.iter().cloned());
            cand.push(e.clone());
            if Mat::from_columns(f, &cand).rank() == cand.len() {
                s_cols.push(e);
            }
            if s_cols.len() == m - d {
                break;
            }
        }
        s_cols.extend(radical.iter().cloned());
        let s = Mat::from_columns(f, &s_cols);
        let b1 = self.complete_basis(&q1.mul(&s), m - d, d)?;
        let b2 = self.complete_basis(&q2.mul(&s), m - d, d)?;
        let p = b2.mul(&b1.inverse()?);
        if p.transpose().mul(&self.a).mul(&p) != self.a || &p.mul(q1) != q2 {
            return Err(Error::VerificationFailed("witt extension postcondition"));
        }
        Ok(p)
    }

    /// Complete [W | R] (W nondegenerate part, R radical vectors) to a full
    /// basis whose Gram depends only on the input Gram: hyperbolic partners
    /// for the radical vectors, then a canonically reduced orthogonal
    /// complement.
    fn complete_basis(&self, qs: &Mat, w_cols: usize, d: usize) -> Result<Mat> {
        let f = &self.field;
        let n = self.n;
        let mut basis: Vec<Vect> = qs.columns();
        // hyperbolic partners s_i for the radical vectors r_i
        for i in 0..d {
            let mut rows: Vec<Vect> = Vec::new();
            let mut rhs: Vec<Elt> = Vec::new();
            for (j, v) in basis.iter().enumerate() {
                rows.push(self.a.mul_vec(v)); // row gives B(v, x) as dot product
                let want_one = j == w_cols + i;
                rhs.push(if want_one { f.one() } else { f.zero() });
            }
            let sys = Mat::from_columns(f, &rows).transpose();
            let sol = sys.solve(&rhs).ok_or(Error::VerificationFailed("hyperbolic partner system"))?;
            // make the partner isotropic without touching the constraints
            let norm = bilinear(&self.a, &sol, &sol);
            let half = f.inv(&f.from_int(2)).expect("odd characteristic");
            let c = f.mul(&norm, &half);
            let r_i = basis[w_cols + i].clone();
            let s_vec = vec_sub(f, &sol, &vec_scale(f, &c, &r_i));
            basis.push(s_vec);
        }
        // orthogonal complement of everything so far
        let e = n - basis.len();
        if e > 0 {
            let rows: Vec<Vect> = basis.iter().map(|v| self.a.mul_vec(v)).collect();
            let sys = Mat::from_columns(f, &rows).transpose();
            let comp = sys.null_space();
            debug_assert_eq!(comp.len(), e);
            let cmat = Mat::from_columns(f, &comp);
            let gram_c = cmat.transpose().mul(&self.a).mul(&cmat);
            let sub = SymForm::new(gram_c)?;
            let (t, _) = sub.canonical_congruence();
            let reduced = cmat.mul(&t);
            basis.extend(reduced.columns());
        }
        Ok(Mat::from_columns(f, &basis))
    }

    /// Corollary-style single-vector isometry: P with P^T A P = A and
    /// P x1 = (a1/a2) x2. Requires x_i^T A x_i * a_i^{-2} to agree.
    pub fn scale_isometry(&self, x1: &[Elt], x2: &[Elt], a1: &Elt, a2: &Elt) -> Result<Mat> {
        let f = &self.field;
        if a1.is_zero() || a2.is_zero() {
            return Err(Error::IncompatibleValues);
        }
        let v1 = self.evaluate(x1)?;
        let v2 = self.evaluate(x2)?;
        let r1 = f.mul(&v1, &f.inv(&f.mul(a1, a1))?);
        let r2 = f.mul(&v2, &f.inv(&f.mul(a2, a2))?);
        if r1 != r2 || r1.is_zero() {
            return Err(Error::IncompatibleValues);
        }
        let ratio = f.div(a1, a2)?;
        let q1 = Mat::from_columns(f, &[x1.to_vec()]);
        let q2 = Mat::from_columns(f, &[vec_scale(f, &ratio, x2)]);
        self.witt_extension(&q1, &q2)
    }

    /// Hyperbolic-pair isometry: P with P^T A P = A, P x1 = x2 and
    /// P y1 = alpha y2, alpha = (x1^T A y1)/(x2^T A y2).
    pub fn pair_isometry(&self, x1: &[Elt], y1: &[Elt], x2: &[Elt], y2: &[Elt]) -> Result<(Mat, Elt)> {
        let f = &self.field;
        for (x, y) in [(x1, y1), (x2, y2)] {
            if !self.is_isotropic(x) || !self.is_isotropic(y) || self.bilin(x, y).is_zero() {
                return Err(Error::PreconditionViolated(
                    "need isotropic x, y with x^T A y != 0 on both sides",
                ));
            }
        }
        let alpha = f.div(&self.bilin(x1, y1), &self.bilin(x2, y2))?;
        let q1 = Mat::from_columns(f, &[x1.to_vec(), y1.to_vec()]);
        let q2 = Mat::from_columns(f, &[x2.to_vec(), vec_scale(f, &alpha, y2)]);
        let p = self.witt_extension(&q1, &q2)?;
        Ok((p, alpha))
    }

    /// Lexicographically smallest nonzero isotropic vector, or None when the
    /// form is anisotropic.
    pub fn smallest_isotropic(&self) -> Option<Vect> {
        self.vectors().skip(1).find(|x| self.is_isotropic(x))
    }

    /// Basis of a maximal totally isotropic subspace (r vectors).
    pub fn totally_isotropic_subspace(&self) -> Result<Vec<Vect>> {
        let r = self.classify().witt_index;
        if r == 0 {
            return Err(Error::Anisotropic);
        }
        let f = &self.field;
        let mut out: Vec<Vect> = Vec::new();
        let mut form = self.clone();
        // embedding of the current subspace's coordinates back into F_q^n
        let mut embed = Mat::identity(f, self.n);
        for _ in 0..r {
            let x = form.smallest_isotropic().expect("witt index >= 1 guarantees isotropic vector");
            out.push(embed.mul_vec(&x));
            if out.len() == r {
                break;
            }
            // hyperbolic partner of x inside the current space
            let ax = form.a.mul_vec(&x);
            let j = (0..form.n).find(|&j| !ax[j].is_zero()).expect("form invertible");
            let mut y = vec![f.zero(); form.n];
            y[j] = f.inv(&ax[j])?;
            let norm = form.bilin(&y, &y);
            let half = f.inv(&f.from_int(2))?;
            let y = vec_sub(f, &y, &vec_scale(f, &f.mul(&norm, &half), &x));
            // orthogonal complement of the hyperbolic pair
            let rows = vec![form.a.mul_vec(&x), form.a.mul_vec(&y)];
            let sys = Mat::from_columns(f, &rows).transpose();
            let comp = Mat::from_columns(f, &sys.null_space());
            let sub_a = comp.transpose().mul(&form.a).mul(&comp);
            embed = embed.mul(&comp);
            form = SymForm::new(sub_a)?;
        }
        debug_assert_eq!(out.len(), r);
        for (i, u) in out.iter().enumerate() {
            for v in out.iter().skip(i) {
                debug_assert!(self.bilin(u, v).is_zero());
            }
        }
        Ok(out)
    }
}

fn expected_diag(f: &Field, n: usize, delta: &Elt) -> Mat {
    let mut m = Mat::identity(f, n);
    m.set(n - 1, n - 1, delta.clone());
    m
}

fn permutation_matrix(f: &Field, order: &[usize]) -> Mat {
    let n = order.len();
    let mut p = Mat::zero(f, n, n);
    for (new, &old) in order.iter().enumerate() {
        p.set(old, new, f.one());
    }
    p
}

/// Congruence transform: swap basis vectors i and j.
fn congr_swap(a: &mut Mat, t: &mut Mat, i: usize, j: usize) {
    let f = a.field.clone();
    let n = a.rows;
    let mut e = Mat::identity(&f, n);
    e.set(i, i, f.zero());
    e.set(j, j, f.zero());
    e.set(i, j, f.one());
    e.set(j, i, f.one());
    *a = e.transpose().mul(a).mul(&e);
    *t = t.mul(&e);
}

/// Congruence transform: basis vector v_i += c * v_j.
fn congr_add(a: &mut Mat, t: &mut Mat, i: usize, j: usize, c: &Elt) {
    let f = a.field.clone();
    let n = a.rows;
    let mut e = Mat::identity(&f, n);
    e.set(j, i, c.clone());
    *a = e.transpose().mul(a).mul(&e);
    *t = t.mul(&e);
}

/// Congruence transform: basis vector v_i *= c.
fn congr_scale(a: &mut Mat, t: &mut Mat, i: usize, c: &Elt) {
    let f = a.field.clone();
    let n = a.rows;
    let mut e = Mat::identity(&f, n);
    e.set(i, i, c.clone());
    *a = e.transpose().mul(a).mul(&e);
    *t = t.mul(&e);
}

/// Named canonical forms used by the paper's examples and the CLI.
///
/// * `minkowski`: diag(1, -1, ..., -1) (needs `n`)
/// * `antidiag`: the exchange matrix (needs `n`)
/// * `antidiag-hyperbolic`: diag(exchange(n-1), -1) (needs `n`)
/// * `paper-5x5`: the fixed 5x5 matrix of the Thas-Kantor model
/// * `paper-6x6-thas`: diag(paper-5x5, -1)
/// * `paper-6x6-kantor`: the fixed 6x6 matrix with a -3 corner entry
pub fn named_form(id: &str, field: &Field, n: Option<usize>) -> Result<SymForm> {
    let need_n = || n.ok_or(Error::Parse(format!("form {id:?} needs a dimension")));
    match id {
        "minkowski" => {
            let n = need_n()?;
            let mut entries = vec![0i64; n * n];
            for i in 0..n {
                entries[i * n + i] = if i == 0 { 1 } else { -1 };
            }
            SymForm::named(Mat::from_ints(field, n, n, &entries), id)
        }
        "antidiag" => {
            let n = need_n()?;
            let mut entries = vec![0i64; n * n];
            for i in 0..n {
                entries[i * n + (n - 1 - i)] = 1;
            }
            SymForm::named(Mat::from_ints(field, n, n, &entries), id)
        }
        "antidiag-hyperbolic" => {
            let n = need_n()?;
            if n < 3 {
                return Err(Error::Parse("antidiag-hyperbolic needs n >= 3".into()));
            }
            let mut entries = vec![0i64; n * n];
            for i in 0..n - 1 {
                entries[i * n + (n - 2 - i)] = 1;
            }
            entries[(n - 1) * n + (n - 1)] = -1;
            SymForm::named(Mat::from_ints(field, n, n, &entries), id)
        }
        "paper-5x5" => SymForm::named(
            Mat::from_ints(
                field,
                5,
                5,
                &[
                    0, 0, 0, 0, -1, //
                    0, 0, 0, -1, 0, //
                    0, 0, 1, 0, 0, //
                    0, -1, 0, 0, 0, //
                    -1, 0, 0, 0, 0,
                ],
            ),
            id,
        ),
        "paper-6x6-thas" => {
            let base = named_form("paper-5x5", field, None)?;
            let f = field;
            let mut m = Mat::zero(f, 6, 6);
            for r in 0..5 {
                for c in 0..5 {
                    m.set(r, c, base.a.get(r, c).clone());
                }
            }
            m.set(5, 5, f.from_int(-1));
            SymForm::named(m, id)
        }
        "paper-6x6-kantor" => SymForm::named(
            Mat::from_ints(
                field,
                6,
                6,
                &[
                    -3, 0, 0, 0, 0, 0, //
                    0, 1, 0, 0, 0, 0, //
                    0, 0, 0, -1, 0, 0, //
                    0, 0, -1, 0, 0, 0, //
                    0, 0, 0, 0, 0, 1, //
                    0, 0, 0, 0, 1, 0,
                ],
            ),
            id,
        ),
        other => Err(Error::UnknownForm(other.to_string())),
    }
}
