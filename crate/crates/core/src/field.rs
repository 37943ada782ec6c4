//! Exact arithmetic in GF(p^k) for odd primes p.
//!
//! Elements are coefficient vectors in the polynomial basis of a monic
//! irreducible modulus over GF(p). All arithmetic is exact; there is no
//! floating point anywhere in this module.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// An element of GF(p^k): `k` coefficients over GF(p), little-endian in the
/// modulus basis, always reduced mod p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Elt {
    c: SmallVec<[u64; 4]>,
}

impl Elt {
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

impl fmt::Debug for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_elt(&self.c))
    }
}

fn format_elt(c: &[u64]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (i, &ci) in c.iter().enumerate().rev() {
        if ci == 0 {
            continue;
        }
        let t = match (i, ci) {
            (0, _) => format!("{ci}"),
            (1, 1) => "t".to_string(),
            (1, _) => format!("{ci}t"),
            (_, 1) => format!("t^{i}"),
            (_, _) => format!("{ci}t^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// The finite field GF(p^k), p an odd prime, with a fixed monic irreducible
/// modulus of degree k. Cheap to clone (shared modulus).
#[derive(Clone)]
pub struct Field {
    p: u64,
    k: usize,
    /// Monic modulus, little-endian, length k+1, leading coefficient 1.
    modulus: Arc<Vec<u64>>,
    q: u64,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && *self.modulus == *other.modulus
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
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

/// Remainder of polynomial division a mod b over GF(p); b monic.
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap() % p;
        if lead != 0 {
            let shift = a.len() - 1 - db;
            for i in 0..=db {
                a[shift + i] = (a[shift + i] + p * p - (b[i] * lead) % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Irreducibility over GF(p) by trial division with every monic polynomial of
/// degree 1..=deg/2. Adequate for the small degrees in scope.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // enumerate monic polynomials of degree d by their coefficient code
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = vec![0u64; d + 1];
            let mut c = code;
            for gi in g.iter_mut().take(d) {
                *gi = c % p;
                c /= p;
            }
            g[d] = 1;
            let r = poly_rem(f.to_vec(), &g, p);
            if poly_is_zero(&r) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Construct GF(p^k). When `modulus` is omitted, the lexicographically
    /// smallest (by coefficient code, constant term fastest) monic irreducible
    /// polynomial of degree k is chosen, so results are reproducible.
    pub fn new(p: u64, k: usize, modulus: Option<Vec<u64>>) -> Result<Field> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if k == 0 {
            return Err(Error::Parse("degree k must be >= 1".into()));
        }
        let q = p.checked_pow(k as u32).ok_or_else(|| Error::Parse("q overflows u64".into()))?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k + 1 || m[k] % p != 1 {
                    return Err(Error::Parse("modulus must be monic of degree k".into()));
                }
                let m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                if !is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => {
                if k == 1 {
                    vec![0, 1]
                } else {
                    let mut found = None;
                    'outer: for code in 0..p.pow(k as u32) {
                        let mut m = vec![0u64; k + 1];
                        let mut c = code;
                        for mi in m.iter_mut().take(k) {
                            *mi = c % p;
                            c /= p;
                        }
                        m[k] = 1;
                        if is_irreducible(&m, p) {
                            found = Some(m);
                            break 'outer;
                        }
                    }
                    found.ok_or(Error::ReducibleModulus)?
                }
            }
        };
        Ok(Field { p, k, modulus: Arc::new(modulus), q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Elt {
        Elt { c: smallvec![0; self.k] }
    }

    pub fn one(&self) -> Elt {
        self.from_int(1)
    }

    /// Embed an integer (constant polynomial) into the field.
    pub fn from_int(&self, n: i64) -> Elt {
        let p = self.p as i64;
        let r = ((n % p) + p) % p;
        let mut c = smallvec![0; self.k];
        c[0] = r as u64;
        Elt { c }
    }

    /// Element with the given coefficients (little-endian), reduced mod p.
    pub fn elt(&self, coeffs: &[u64]) -> Elt {
        let mut c: SmallVec<[u64; 4]> = smallvec![0; self.k];
        for (i, &x) in coeffs.iter().enumerate().take(self.k) {
            c[i] = x % self.p;
        }
        Elt { c }
    }

    /// Coefficient code of an element: sum c_i * p^i. Defines the
    /// deterministic enumeration order used everywhere in the crate.
    pub fn code(&self, x: &Elt) -> u64 {
        let mut code = 0u64;
        for &ci in x.c.iter().rev() {
            code = code * self.p + ci;
        }
        code
    }

    pub fn from_code(&self, mut code: u64) -> Elt {
        let mut c: SmallVec<[u64; 4]> = smallvec![0; self.k];
        for ci in c.iter_mut() {
            *ci = code % self.p;
            code /= self.p;
        }
        Elt { c }
    }

    /// All q elements in coefficient-code order.
    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..self.q).map(move |code| self.from_code(code))
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        let mut c = a.c.clone();
        for i in 0..self.k {
            c[i] = (c[i] + b.c[i]) % self.p;
        }
        Elt { c }
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        let mut c = a.c.clone();
        for i in 0..self.k {
            c[i] = (c[i] + self.p - b.c[i]) % self.p;
        }
        Elt { c }
    }

    pub fn neg(&self, a: &Elt) -> Elt {
        let mut c = a.c.clone();
        for ci in c.iter_mut() {
            *ci = (self.p - *ci) % self.p;
        }
        Elt { c }
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        if self.k == 1 {
            return Elt { c: smallvec![(a.c[0] * b.c[0]) % self.p] };
        }
        let mut prod = vec![0u64; 2 * self.k - 1];
        for i in 0..self.k {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..self.k {
                prod[i + j] = (prod[i + j] + a.c[i] * b.c[j]) % self.p;
            }
        }
        let r = poly_rem(prod, &self.modulus, self.p);
        let mut c: SmallVec<[u64; 4]> = smallvec![0; self.k];
        for (i, &x) in r.iter().enumerate().take(self.k) {
            c[i] = x;
        }
        Elt { c }
    }

    pub fn scale(&self, a: &Elt, n: i64) -> Elt {
        self.mul(a, &self.from_int(n))
    }

    pub fn pow(&self, a: &Elt, mut e: u64) -> Elt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Elt) -> Result<Elt> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x^(q-2) = x^{-1} in GF(q)^*
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: &Elt, b: &Elt) -> Result<Elt> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Quadratic character: 0 at 0, +1 on nonzero squares, -1 on non-squares.
    /// Computed as x^((q-1)/2) read off in {1, -1}.
    pub fn eta(&self, x: &Elt) -> i32 {
        if x.is_zero() {
            return 0;
        }
        let e = self.pow(x, (self.q - 1) / 2);
        if e == self.one() {
            1
        } else {
            -1
        }
    }

    /// Trace to the prime field: x + x^p + ... + x^{p^{k-1}}, returned as an
    /// integer in 0..p.
    pub fn trace(&self, x: &Elt) -> u64 {
        let mut acc = x.clone();
        let mut xi = x.clone();
        for _ in 1..self.k {
            xi = self.pow(&xi, self.p);
            acc = self.add(&acc, &xi);
        }
        debug_assert!(acc.c[1..].iter().all(|&c| c == 0));
        acc.c[0]
    }

    /// Frobenius x -> x^{p^j}, 0 <= j < k.
    pub fn frobenius(&self, x: &Elt, j: usize) -> Elt {
        let mut acc = x.clone();
        for _ in 0..j % self.k {
            acc = self.pow(&acc, self.p);
        }
        acc
    }

    /// Smallest (coefficient code) non-square.
    pub fn find_nonsquare(&self) -> Elt {
        self.elements()
            .find(|x| self.eta(x) == -1)
            .expect("every odd-q field has a non-square")
    }

    /// Smallest square root of x, or None when x is a non-square.
    pub fn sqrt(&self, x: &Elt) -> Option<Elt> {
        if x.is_zero() {
            return Some(self.zero());
        }
        self.elements().find(|s| &self.mul(s, s) == x)
    }

    /// Deterministic (a, b) with a^2 + b^2 = c; a ascends first.
    pub fn two_square_decompose(&self, c: &Elt) -> (Elt, Elt) {
        for a in self.elements() {
            let rem = self.sub(c, &self.mul(&a, &a));
            if let Some(b) = self.sqrt(&rem) {
                return (a, b);
            }
        }
        unreachable!("every element of GF(q), q odd, is a sum of two squares")
    }

    pub fn parse_elt(&self, s: &str) -> Result<Elt> {
        parse_elt_str(self, s)
    }

    pub fn format_elt(&self, x: &Elt) -> String {
        format_elt(&x.c)
    }

    /// Field spec string: "p^k" or "p^k/c0,c1,...,ck".
    pub fn spec_string(&self) -> String {
        if self.k == 1 {
            format!("{}^1", self.p)
        } else {
            let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            format!("{}^{}/{}", self.p, self.k, coeffs.join(","))
        }
    }
}

/// Parse "2t^2+t+1"-style element strings.
fn parse_elt_str(field: &Field, s: &str) -> Result<Elt> {
    let s = s.trim().replace(' ', "");
    if s.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let mut coeffs = vec![0u64; field.k()];
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if ch == '-' && i == 0 {
            neg = true;
        } else {
            cur.push(ch);
        }
    }
    terms.push((neg, cur));
    let p = field.p();
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(Error::Parse(format!("bad element string {s:?}")));
        }
        let (coef_str, pow): (&str, usize) = match term.find('t') {
            None => (term.as_str(), 0),
            Some(idx) => {
                let after = &term[idx + 1..];
                let pow = if after.is_empty() {
                    1
                } else if let Some(e) = after.strip_prefix('^') {
                    e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
                } else {
                    return Err(Error::Parse(format!("bad term {term:?}")));
                };
                (&term[..idx], pow)
            }
        };
        let coef: u64 = if coef_str.is_empty() {
            1
        } else {
            coef_str.parse().map_err(|_| Error::Parse(format!("bad coefficient {coef_str:?}")))?
        };
        if pow >= field.k() {
            return Err(Error::Parse(format!("power t^{pow} exceeds degree {}", field.k() - 1)));
        }
        let coef = coef % p;
        let signed = if neg { (p - coef) % p } else { coef };
        coeffs[pow] = (coeffs[pow] + signed) % p;
    }
    Ok(field.elt(&coeffs))
}

/// Parsed "p^k" / "p^k/c0,...,ck" field specification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: usize,
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Field> {
        Field::new(self.p, self.k, self.modulus.clone())
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldSpec> {
        let (pk, modulus) = match s.split_once('/') {
            Some((pk, m)) => {
                let coeffs: std::result::Result<Vec<u64>, _> =
                    m.split(',').map(|c| c.trim().parse::<u64>()).collect();
                (pk, Some(coeffs.map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?))
            }
            None => (s, None),
        };
        let (p, k) = match pk.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad prime in {s:?}")))?,
                k.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad degree in {s:?}")))?,
            ),
            None => (pk.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad field spec {s:?}")))?, 1),
        };
        if let Some(m) = &modulus {
            if m.len() != k + 1 {
                return Err(Error::Parse("modulus must list k+1 coefficients".into()));
            }
        }
        Ok(FieldSpec { p, k, modulus })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.modulus {
            None => write!(f, "{}^{}", self.p, self.k),
            Some(m) => {
                let coeffs: Vec<String> = m.iter().map(|c| c.to_string()).collect();
                write!(f, "{}^{}/{}", self.p, self.k, coeffs.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn create_prime_field() {
        let f = Field::new(3, 1, None).unwrap();
        assert_eq!(f.q(), 3);
    }

    #[test]
    fn create_gf9_with_modulus() {
        // t^2 + 1 has no root mod 3
        let f = Field::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        assert_eq!(f.q(), 9);
    }

    #[test]
    fn even_characteristic_rejected() {
        assert_eq!(Field::new(2, 1, None).unwrap_err(), Error::EvenCharacteristic);
    }

    #[test]
    fn nonprime_rejected() {
        assert_eq!(Field::new(9, 1, None).unwrap_err(), Error::NonPrime(9));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 - 1 = (t-1)(t+1)
        assert_eq!(Field::new(3, 2, Some(vec![2, 0, 1])).unwrap_err(), Error::ReducibleModulus);
    }

    #[test]
    fn arith_gf3() {
        let f = Field::new(3, 1, None).unwrap();
        let two = f.from_int(2);
        assert_eq!(f.mul(&two, &two), f.one());
    }

    #[test]
    fn arith_gf9_t_squared() {
        let f = Field::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        let t = f.elt(&[0, 1]);
        assert_eq!(f.mul(&t, &t), f.from_int(2)); // t^2 = -1 = 2
    }

    #[test]
    fn inv_gf7() {
        let f = Field::new(7, 1, None).unwrap();
        assert_eq!(f.inv(&f.from_int(3)).unwrap(), f.from_int(5));
        assert_eq!(f.inv(&f.zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn eta_values() {
        let f7 = Field::new(7, 1, None).unwrap();
        assert_eq!(f7.eta(&f7.from_int(3)), -1);
        assert_eq!(f7.eta(&f7.zero()), 0);
        let f3 = Field::new(3, 1, None).unwrap();
        assert_eq!(f3.eta(&f3.from_int(2)), -1); // -1 non-square, q = 3 mod 4
    }

    #[test]
    fn trace_values() {
        let f3 = Field::new(3, 1, None).unwrap();
        assert_eq!(f3.trace(&f3.from_int(2)), 2);
        let f9 = Field::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        let t = f9.elt(&[0, 1]);
        assert_eq!(f9.trace(&t), 0); // t + t^3 = t + 2t = 0
        assert_eq!(f9.trace(&f9.one()), 2);
    }

    #[test]
    fn trace_additive_and_onto() {
        for (p, k) in [(3u64, 4usize), (7, 2), (3, 2)] {
            let f = Field::new(p, k, None).unwrap();
            let elems: Vec<Elt> = f.elements().collect();
            for x in elems.iter().take(20) {
                for y in elems.iter().take(20) {
                    assert_eq!(
                        f.trace(&f.add(x, y)),
                        (f.trace(x) + f.trace(y)) % p,
                    );
                }
            }
            // surjective: witness for each target value
            for target in 0..p {
                assert!(elems.iter().any(|x| f.trace(x) == target));
            }
        }
    }

    #[test]
    fn trace_zero_iff_artin_schreier() {
        // Tr(x)=0 iff x = y^p - y, exhaustively for q <= 81
        for (p, k) in [(3u64, 4usize), (3, 3), (7, 2)] {
            let f = Field::new(p, k, None).unwrap();
            let images: std::collections::HashSet<u64> = f
                .elements()
                .map(|y| f.code(&f.sub(&f.pow(&y, p), &y)))
                .collect();
            for x in f.elements() {
                assert_eq!(f.trace(&x) == 0, images.contains(&f.code(&x)));
            }
        }
    }

    #[test]
    fn square_count_and_eta_multiplicative() {
        for (p, k) in [(3u64, 4usize), (7, 2), (11, 1)] {
            let f = Field::new(p, k, None).unwrap();
            let squares = f.elements().filter(|x| f.eta(x) == 1).count() as u64;
            assert_eq!(squares, (f.q() - 1) / 2);
            let elems: Vec<Elt> = f.elements().collect();
            for x in elems.iter().take(15) {
                for y in elems.iter().take(15) {
                    if !x.is_zero() && !y.is_zero() {
                        assert_eq!(f.eta(&f.mul(x, y)), f.eta(x) * f.eta(y));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_properties() {
        let f = Field::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        let t = f.elt(&[0, 1]);
        assert_eq!(f.frobenius(&t, 0), t);
        assert_eq!(f.frobenius(&t, 1), f.elt(&[0, 2])); // t^3 = -t
        // homomorphism + fixed field
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(f.frobenius(&f.add(&x, &y), 1), f.add(&f.frobenius(&x, 1), &f.frobenius(&y, 1)));
                assert_eq!(f.frobenius(&f.mul(&x, &y), 1), f.mul(&f.frobenius(&x, 1), &f.frobenius(&y, 1)));
            }
            let fixed = f.frobenius(&x, 1) == x;
            assert_eq!(fixed, x.coeffs()[1] == 0);
        }
    }

    #[test]
    fn nonsquares() {
        assert_eq!(Field::new(3, 1, None).unwrap().find_nonsquare().coeffs()[0], 2);
        assert_eq!(Field::new(7, 1, None).unwrap().find_nonsquare().coeffs()[0], 3);
        assert_eq!(Field::new(11, 1, None).unwrap().find_nonsquare().coeffs()[0], 2);
    }

    #[test]
    fn two_squares() {
        let f3 = Field::new(3, 1, None).unwrap();
        let (a, b) = f3.two_square_decompose(&f3.from_int(2));
        assert_eq!((a.coeffs()[0], b.coeffs()[0]), (1, 1));
        let (a, b) = f3.two_square_decompose(&f3.zero());
        assert!(a.is_zero() && b.is_zero());
        let f7 = Field::new(7, 1, None).unwrap();
        let (a, b) = f7.two_square_decompose(&f7.from_int(6));
        assert_eq!((a.coeffs()[0], b.coeffs()[0]), (2, 3));
    }

    #[test]
    fn elt_string_round_trip() {
        let f = Field::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        for x in f.elements() {
            let s = f.format_elt(&x);
            assert_eq!(f.parse_elt(&s).unwrap(), x);
        }
    }

    #[test]
    fn field_spec_round_trip() {
        for s in ["3^1", "7^1", "3^2/1,0,1", "11^1"] {
            let spec: FieldSpec = s.parse().unwrap();
            let f = spec.build().unwrap();
            let spec2: FieldSpec = f.spec_string().parse().unwrap();
            assert_eq!(spec2.build().unwrap(), f);
        }
    }
}
