//! Exact arithmetic in the cyclotomic field `Q(zeta_N)`.
//!
//! Elements are stored in canonical form: a vector of `phi(N)`
//! arbitrary-precision rationals giving the coordinates in the power basis
//! `1, zeta, ..., zeta^(phi-1)`, fully reduced modulo the `N`-th cyclotomic
//! polynomial.  Two elements are equal iff their coefficient vectors are
//! identical, so equality, hashing and ordering are plain coefficient
//! comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::{Error, Result};

/// The working field `Q(zeta_N)` for a fixed conductor `N`.
///
/// `zeta` denotes a fixed primitive `N`-th root of unity; the reduction
/// polynomial is the `N`-th cyclotomic polynomial, so the representation
/// degree is `phi(N)`.
#[derive(Debug)]
pub struct FieldSpec {
    conductor: u64,
    phi: usize,
    /// Monic integer coefficients of the cyclotomic polynomial, ascending
    /// degree, length `phi + 1`.
    cyclotomic: Vec<BigInt>,
    /// `reduction[k]` holds the canonical coordinates of `zeta^(phi + k)`
    /// for `k` in `0..phi-1`, enough to reduce any product of two reduced
    /// elements.
    reduction: Vec<Vec<BigRational>>,
}

/// An element of `Q(zeta_N)` in canonical form.
#[derive(Clone)]
pub struct FieldElem {
    spec: Arc<FieldSpec>,
    coeffs: Vec<BigRational>,
}

/// Computes the `n`-th cyclotomic polynomial as a monic integer polynomial
/// (ascending coefficients) by dividing `z^n - 1` by the cyclotomic
/// polynomials of the proper divisors of `n`.
fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    let mut memo: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        // z^d - 1
        let mut poly = vec![BigInt::zero(); d as usize + 1];
        poly[0] = -BigInt::one();
        poly[d as usize] = BigInt::one();
        for (e, phi_e) in &memo {
            if d % e == 0 {
                poly = int_poly_div_exact(&poly, phi_e);
            }
        }
        memo.push((d, poly));
    }
    memo.pop().expect("n >= 1 always yields at least Phi_1").1
}

/// Exact division of integer polynomials; the divisor must be monic and
/// divide evenly.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for i in 0..=dd {
            rem[k + i] -= &c * &den[i];
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// Builds the field `Q(zeta_N)` with its cyclotomic polynomial computed
/// exactly.  Rejects `N = 0`.
pub fn make_field(conductor: u64) -> Result<Arc<FieldSpec>> {
    if conductor == 0 {
        return Err(Error::ZeroConductor);
    }
    let cyclotomic = cyclotomic_polynomial(conductor);
    let phi = cyclotomic.len() - 1;

    // Representation of z^phi in the power basis: the polynomial is monic,
    // so z^phi = -(c_0 + c_1 z + ... + c_{phi-1} z^{phi-1}).
    let base: Vec<BigRational> = cyclotomic[..phi]
        .iter()
        .map(|c| -BigRational::from_integer(c.clone()))
        .collect();
    let mut reduction = vec![base];
    for _ in 1..phi.max(1) - 1 {
        let prev = reduction.last().expect("nonempty");
        // Multiply by z: shift up; the overflowing top coefficient folds
        // back through the z^phi row.
        let top = prev[phi - 1].clone();
        let mut next = vec![BigRational::zero(); phi];
        for i in 1..phi {
            next[i] = prev[i - 1].clone();
        }
        if !top.is_zero() {
            for (i, b) in reduction[0].iter().enumerate() {
                let add = &top * b;
                next[i] += add;
            }
        }
        reduction.push(next);
    }

    Ok(Arc::new(FieldSpec {
        conductor,
        phi,
        cyclotomic,
        reduction,
    }))
}

impl FieldSpec {
    /// The conductor `N`.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Degree of the field over the rationals, `phi(N)`.
    pub fn phi(&self) -> usize {
        self.phi
    }

    /// Monic integer coefficients of the `N`-th cyclotomic polynomial in
    /// ascending degree.
    pub fn cyclotomic_coeffs(&self) -> &[BigInt] {
        &self.cyclotomic
    }
}

/// Element constructors; all take the field by `Arc` so elements can share it.
pub trait FieldOps {
    fn zero(&self) -> FieldElem;
    fn one(&self) -> FieldElem;
    fn integer(&self, value: i64) -> FieldElem;
    fn rational(&self, value: BigRational) -> FieldElem;
    /// The fixed primitive `N`-th root of unity.
    fn zeta(&self) -> FieldElem;
    /// `zeta^e` with `e` taken modulo `N` (negative exponents allowed).
    fn zeta_pow(&self, e: i64) -> FieldElem;
    /// Parses a textual expression into a canonical element.
    fn parse(&self, text: &str) -> Result<FieldElem>;
}

impl FieldOps for Arc<FieldSpec> {
    fn zero(&self) -> FieldElem {
        FieldElem {
            spec: self.clone(),
            coeffs: vec![BigRational::zero(); self.phi],
        }
    }

    fn one(&self) -> FieldElem {
        self.integer(1)
    }

    fn integer(&self, value: i64) -> FieldElem {
        self.rational(BigRational::from_integer(BigInt::from(value)))
    }

    fn rational(&self, value: BigRational) -> FieldElem {
        let mut coeffs = vec![BigRational::zero(); self.phi];
        coeffs[0] = value;
        FieldElem {
            spec: self.clone(),
            coeffs,
        }
    }

    fn zeta(&self) -> FieldElem {
        self.zeta_pow(1)
    }

    fn zeta_pow(&self, e: i64) -> FieldElem {
        let n = self.conductor as i64;
        let e = e.rem_euclid(n) as u64;
        let mut out = self.one();
        let mut base = {
            // The monomial z itself (reduced if phi = 1).
            let mut coeffs = vec![BigRational::zero(); self.phi];
            if self.phi == 1 {
                // z is congruent to a rational: Phi is linear.
                coeffs[0] = -BigRational::from_integer(self.cyclotomic[0].clone());
            } else {
                coeffs[1] = BigRational::one();
            }
            FieldElem {
                spec: self.clone(),
                coeffs,
            }
        };
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        out
    }

    fn parse(&self, text: &str) -> Result<FieldElem> {
        parse::parse(self, text)
    }
}

impl FieldElem {
    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    /// Canonical coordinates in the power basis, length `phi(N)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn assert_same_field(&self, other: &FieldElem) {
        assert_eq!(
            self.spec.conductor, other.spec.conductor,
            "field mismatch: Q(zeta_{}) vs Q(zeta_{})",
            self.spec.conductor, other.spec.conductor
        );
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// polynomials over the rationals.
    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let modulus: Vec<BigRational> = self
            .spec
            .cyclotomic
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // Invariants: r0 = s0 * a (mod Phi), r1 = s1 * a (mod Phi).
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0 = vec![];
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant gcd (the cyclotomic polynomial is
        // irreducible), so a^{-1} = s0 / r0.
        debug_assert_eq!(r0.len(), 1);
        let scale = r0[0].recip();
        let mut coeffs = vec![BigRational::zero(); self.spec.phi];
        for (i, c) in s0.iter().enumerate() {
            coeffs[i] = c * &scale;
        }
        Ok(FieldElem {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// Exponentiation by repeated squaring.
    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut out = self.spec.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        out
    }

    /// If `self = zeta_m^e` for the `m`-th root `zeta_m = zeta^(N/m)`,
    /// returns `e` in `[0, m)`; `None` otherwise.  Requires `m >= 1` and
    /// `m | N`; the decision is exact.
    pub fn root_of_unity_exponent(&self, m: u64) -> Option<u64> {
        assert!(m > 0, "root-of-unity order must be positive");
        assert!(
            self.spec.conductor % m == 0,
            "order {m} does not divide the conductor {}",
            self.spec.conductor
        );
        if !self.pow(m).is_one() {
            return None;
        }
        let zeta_m = self.spec.zeta_pow((self.spec.conductor / m) as i64);
        let mut power = self.spec.one();
        for e in 0..m {
            if *self == power {
                return Some(e);
            }
            power = &power * &zeta_m;
        }
        None
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(out)
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty(), "division by the zero polynomial");
    let mut rem = num.to_vec();
    if num.len() < den.len() {
        return (vec![], trim(rem));
    }
    let dd = den.len() - 1;
    let lead = den[dd].recip();
    let mut quot = vec![BigRational::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] * &lead;
        if c.is_zero() {
            continue;
        }
        for i in 0..=dd {
            let sub = &c * &den[i];
            rem[k + i] -= sub;
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.spec.conductor == other.spec.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spec.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.spec
            .conductor
            .cmp(&other.spec.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.assert_same_field(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        FieldElem {
            spec: self.spec.clone(),
            coeffs,
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self.assert_same_field(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        FieldElem {
            spec: self.spec.clone(),
            coeffs,
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.assert_same_field(rhs);
        let phi = self.spec.phi;
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        let mut coeffs: Vec<BigRational> = prod[..phi].to_vec();
        for (k, overflow) in prod[phi..].iter().enumerate() {
            if overflow.is_zero() {
                continue;
            }
            for (i, r) in self.spec.reduction[k].iter().enumerate() {
                if !r.is_zero() {
                    coeffs[i] += overflow * r;
                }
            }
        }
        FieldElem {
            spec: self.spec.clone(),
            coeffs,
        }
    }
}

impl fmt::Display for FieldElem {
    /// Canonical printing: the sum of monomials `q*z^k` with `k` ascending,
    /// zero terms omitted, `0` for zero.  Printing then re-parsing is the
    /// identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

mod parse {
    //! Recursive-descent parser for field expressions.
    //!
    //! Grammar (whitespace insignificant):
    //!
    //! ```text
    //! expr     := term {("+"|"-") term}
    //! term     := factor {("*"|"/") factor}
    //! factor   := "-" factor | atom ["^" uint]
    //! atom     := rational | "z" | "(" expr ")"
    //! rational := int ["/" uint]
    //! ```
    //!
    //! Unary minus applies to a whole factor, so `-z^2` denotes `-(z^2)`.
    //! Division by a constant that evaluates to zero is reported as a
    //! division-by-zero error.

    use super::*;

    pub(super) fn parse(spec: &Arc<FieldSpec>, text: &str) -> Result<FieldElem> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
            spec: spec.clone(),
        };
        let value = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(value)
    }

    struct Parser<'a> {
        bytes: &'a [u8],
        pos: usize,
        spec: Arc<FieldSpec>,
    }

    impl Parser<'_> {
        fn error(&self, msg: &str) -> Error {
            Error::Parse {
                pos: self.pos,
                msg: msg.to_string(),
            }
        }

        fn skip_ws(&mut self) {
            while self
                .bytes
                .get(self.pos)
                .is_some_and(|b| b.is_ascii_whitespace())
            {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.bytes.get(self.pos).copied()
        }

        fn eat(&mut self, b: u8) -> bool {
            if self.peek() == Some(b) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        fn expr(&mut self) -> Result<FieldElem> {
            let mut value = self.term()?;
            loop {
                if self.eat(b'+') {
                    let rhs = self.term()?;
                    value = &value + &rhs;
                } else if self.eat(b'-') {
                    let rhs = self.term()?;
                    value = &value - &rhs;
                } else {
                    return Ok(value);
                }
            }
        }

        fn term(&mut self) -> Result<FieldElem> {
            let mut value = self.factor()?;
            loop {
                if self.eat(b'*') {
                    let rhs = self.factor()?;
                    value = &value * &rhs;
                } else if self.eat(b'/') {
                    let at = self.pos - 1;
                    let rhs = self.factor()?;
                    let inv = rhs.inv().map_err(|_| Error::Parse {
                        pos: at,
                        msg: "division by zero".to_string(),
                    })?;
                    value = &value * &inv;
                } else {
                    return Ok(value);
                }
            }
        }

        fn factor(&mut self) -> Result<FieldElem> {
            if self.eat(b'-') {
                let inner = self.factor()?;
                return Ok(-&inner);
            }
            let base = self.atom()?;
            if self.eat(b'^') {
                let e = self.uint()?;
                return Ok(base.pow(e));
            }
            Ok(base)
        }

        fn atom(&mut self) -> Result<FieldElem> {
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    if !self.eat(b')') {
                        return Err(self.error("expected ')'"));
                    }
                    Ok(inner)
                }
                Some(b'z') => {
                    self.pos += 1;
                    Ok(self.spec.zeta())
                }
                Some(b'-') => {
                    self.pos += 1;
                    let inner = self.atom()?;
                    Ok(-&inner)
                }
                Some(b) if b.is_ascii_digit() => self.rational(),
                _ => Err(self.error("expected a number, 'z', '(' or '-'")),
            }
        }

        fn rational(&mut self) -> Result<FieldElem> {
            let numer = self.digits()?;
            // A '/' introduces a denominator only when digits follow;
            // otherwise it belongs to the enclosing term.
            let save = self.pos;
            if self.eat(b'/') {
                let at = self.pos - 1;
                if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    let denom = self.digits()?;
                    if denom.is_zero() {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "division by zero".to_string(),
                        });
                    }
                    return Ok(self.spec.rational(BigRational::new(numer, denom)));
                }
                self.pos = save;
            }
            Ok(self.spec.rational(BigRational::from_integer(numer)))
        }

        fn digits(&mut self) -> Result<BigInt> {
            self.skip_ws();
            let start = self.pos;
            while self
                .bytes
                .get(self.pos)
                .is_some_and(|b| b.is_ascii_digit())
            {
                self.pos += 1;
            }
            if self.pos == start {
                return Err(self.error("expected digits"));
            }
            BigInt::parse_bytes(&self.bytes[start..self.pos], 10)
                .ok_or_else(|| self.error("invalid integer"))
        }

        fn uint(&mut self) -> Result<u64> {
            use num::ToPrimitive;
            let at = self.pos;
            let d = self.digits()?;
            d.to_u64().ok_or(Error::Parse {
                pos: at,
                msg: "exponent too large".to_string(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: u64) -> Arc<FieldSpec> {
        make_field(n).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn degree_one_field_is_the_rationals() {
        let f = field(1);
        assert_eq!(f.phi(), 1);
        // Phi_1 = z - 1
        assert_eq!(f.cyclotomic_coeffs(), &[BigInt::from(-1), BigInt::from(1)]);
        assert!(f.zeta().is_one());
    }

    #[test]
    fn cyclotomic_polynomials_match_the_division_oracle() {
        // Independent oracle: Phi_N * prod_{d|N, d<N} Phi_d = z^N - 1,
        // with the product computed by plain polynomial multiplication.
        for n in 1..=30u64 {
            let mut product = vec![BigRational::one()];
            for d in 1..=n {
                if n % d == 0 {
                    let phi_d: Vec<BigRational> = cyclotomic_polynomial(d)
                        .into_iter()
                        .map(BigRational::from_integer)
                        .collect();
                    product = poly_mul(&product, &phi_d);
                }
            }
            let mut target = vec![BigRational::zero(); n as usize + 1];
            target[0] = -BigRational::one();
            target[n as usize] = BigRational::one();
            assert_eq!(product, target, "divisor product failed for N={n}");
        }
    }

    #[test]
    fn known_cyclotomic_polynomials() {
        let f8 = field(8);
        assert_eq!(f8.phi(), 4);
        let z4_plus_1: Vec<BigInt> = [1, 0, 0, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(f8.cyclotomic_coeffs(), &z4_plus_1[..]);

        let f12 = field(12);
        assert_eq!(f12.phi(), 4);
        let expected: Vec<BigInt> = [1, 0, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(f12.cyclotomic_coeffs(), &expected[..]);
    }

    #[test]
    fn rejects_zero_conductor() {
        assert_eq!(make_field(0).unwrap_err(), Error::ZeroConductor);
    }

    #[test]
    fn parse_examples() {
        let f = field(8);
        let e = f.parse("z^2 - 1/2").unwrap();
        assert_eq!(
            e.coeffs(),
            &[q(-1, 2), q(0, 1), q(1, 1), q(0, 1)],
            "z^2 - 1/2 in the power basis"
        );

        // zeta_8^4 = -1
        let e = f.parse("z^4").unwrap();
        assert_eq!(e.coeffs(), &[q(-1, 1), q(0, 1), q(0, 1), q(0, 1)]);

        match f.parse("1/(0)") {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("division by zero")),
            other => panic!("expected division-by-zero error, got {other:?}"),
        }
    }

    #[test]
    fn parse_reports_positions() {
        let f = field(4);
        match f.parse("1 + ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(f.parse("").is_err());
        assert!(f.parse("(1").is_err());
        assert!(f.parse("1 2").is_err());
    }

    #[test]
    fn ring_examples() {
        let f8 = field(8);
        let z = f8.zeta();
        assert_eq!(&z * &z.pow(3), f8.integer(-1), "zeta_8^4 = -1");
        assert!((&z + &-&z).is_zero());

        let f4 = field(4);
        let one_plus = f4.parse("1+z").unwrap();
        let one_minus = f4.parse("1-z").unwrap();
        assert_eq!(&one_plus * &one_minus, f4.integer(2), "(1+i)(1-i) = 2");
    }

    #[test]
    fn inverse_examples() {
        let f8 = field(8);
        let z = f8.zeta();
        assert_eq!(z.inv().unwrap(), f8.parse("-z^3").unwrap());
        assert_eq!(f8.integer(2).inv().unwrap(), f8.parse("1/2").unwrap());

        let f4 = field(4);
        let e = f4.parse("1+z").unwrap();
        assert_eq!(e.inv().unwrap(), f4.parse("1/2 - 1/2*z").unwrap());
        assert_eq!(f4.zero().inv().unwrap_err(), Error::ZeroInverse);
    }

    #[test]
    fn root_of_unity_examples() {
        let f = field(8);
        assert_eq!(f.zeta().root_of_unity_exponent(8), Some(1));
        assert_eq!(f.integer(-1).root_of_unity_exponent(8), Some(4));
        assert_eq!(f.parse("1/2").unwrap().root_of_unity_exponent(8), None);
        assert_eq!(f.zero().root_of_unity_exponent(8), None);
    }

    #[test]
    fn root_of_unity_round_trip_for_all_divisors() {
        let f = field(12);
        for m in [1u64, 2, 3, 4, 6, 12] {
            let zeta_m = f.zeta_pow((12 / m) as i64);
            for e in 0..m {
                assert_eq!(zeta_m.pow(e).root_of_unity_exponent(m), Some(e));
            }
        }
    }

    #[test]
    fn printing_is_a_parse_fixed_point() {
        let f = field(12);
        for text in [
            "0",
            "1",
            "-1",
            "z",
            "-z^3",
            "1/2 - 1/2*z",
            "3 + 2*z - 7/5*z^2 + z^3",
            "z^11",
            "(1+z)^5",
            "(2 - z)*(3 + z^2)",
        ] {
            let e = f.parse(text).unwrap();
            let printed = e.to_string();
            let reparsed = f.parse(&printed).unwrap();
            assert_eq!(e, reparsed, "round trip failed for {text} -> {printed}");
            assert_eq!(printed, reparsed.to_string());
        }
    }

    #[test]
    fn algebraically_equal_expressions_are_canonically_equal() {
        let f = field(8);
        for (a, b) in [
            ("z^8", "1"),
            ("z^4 + 1", "0"),
            ("(1+z)*(1-z)", "1 - z^2"),
            ("z^7", "-z^3"),
            ("2/4", "1/2"),
            ("z^2*z^2", "-1"),
        ] {
            assert_eq!(f.parse(a).unwrap(), f.parse(b).unwrap(), "{a} vs {b}");
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_elem(n: u64) -> impl Strategy<Value = FieldElem> {
            let phi = field(n).phi();
            proptest::collection::vec((-20i64..=20, 1i64..=8), phi).prop_map(move |pairs| {
                let f = field(n);
                let mut acc = f.zero();
                for (k, (num, den)) in pairs.into_iter().enumerate() {
                    let term = &f.rational(q(num, den)) * &f.zeta_pow(k as i64);
                    acc = &acc + &term;
                }
                acc
            })
        }

        fn q(n: i64, d: i64) -> BigRational {
            BigRational::new(BigInt::from(n), BigInt::from(d))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn field_axioms_hold(a in arb_elem(12), b in arb_elem(12), c in arb_elem(12)) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                if !a.is_zero() {
                    prop_assert_eq!(&a * &a.inv().unwrap(), field(12).one());
                }
            }

            #[test]
            fn printing_round_trips(a in arb_elem(8)) {
                let f = field(8);
                prop_assert_eq!(f.parse(&a.to_string()).unwrap(), a);
            }

            #[test]
            fn high_powers_reduce_canonically(e in 0u64..200) {
                let f = field(8);
                let direct = f.parse(&format!("z^{e}")).unwrap();
                prop_assert_eq!(direct, f.zeta().pow(e));
            }
        }
    }
}
