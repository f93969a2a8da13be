//! Exact base-field arithmetic with canonical representations.
//!
//! Three fields are supported: the rationals ℚ, prime fields 𝔽_p, and
//! rational function fields 𝔽_p(t). Every [`Scalar`] is kept in a canonical
//! form so that structural equality coincides with field equality:
//!
//! - ℚ: reduced fraction of arbitrary-precision integers, positive denominator;
//! - 𝔽_p: residue in `[0, p)` stored in a machine word;
//! - 𝔽_p(t): reduced fraction of dense polynomials with monic denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use std::fmt;

use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Field specification
// ---------------------------------------------------------------------------

/// Which base field scalars live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// The rational numbers ℚ.
    Rationals,
    /// The prime field 𝔽_p.
    PrimeField(u64),
    /// The rational function field 𝔽_p(t).
    RationalFunctions(u64),
}

/// A validated base field. Primality of `p` is checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
}

const MAX_PRIME: u64 = 1 << 31;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec {
            kind: FieldKind::Rationals,
        }
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec {
            kind: FieldKind::PrimeField(p),
        })
    }

    pub fn rational_functions(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec {
            kind: FieldKind::RationalFunctions(p),
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// 0 for ℚ, p otherwise.
    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Rationals => 0,
            FieldKind::PrimeField(p) | FieldKind::RationalFunctions(p) => p,
        }
    }

    /// Number of elements for finite fields, `None` for infinite ones.
    pub fn size(&self) -> Option<u64> {
        match self.kind {
            FieldKind::PrimeField(p) => Some(p),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self)
    }

    pub fn scalar_from_i64(&self, n: i64) -> Scalar {
        Scalar::from_i64(self, n)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField(p) => write!(f, "F{p}"),
            FieldKind::RationalFunctions(p) => write!(f, "F{p}(t)"),
        }
    }
}

// ---------------------------------------------------------------------------
// 𝔽_p word arithmetic (double-width products)
// ---------------------------------------------------------------------------

pub(crate) fn fp_add(p: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub(crate) fn fp_sub(p: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn fp_neg(p: u64, a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn fp_mul(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn fp_inv(p: u64, a: u64) -> u64 {
    // extended Euclid; a must be nonzero mod p
    debug_assert!(a % p != 0);
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert!(r == 1);
    (t.rem_euclid(p as i128)) as u64
}

fn fp_from_i64(p: u64, n: i64) -> u64 {
    (n as i128).rem_euclid(p as i128) as u64
}

// ---------------------------------------------------------------------------
// Dense polynomials over 𝔽_p (the payload machinery for 𝔽_p(t))
// ---------------------------------------------------------------------------

/// Dense polynomial over 𝔽_p; no trailing zero coefficients, zero = empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub(crate) p: u64,
    pub(crate) coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, coeffs: vec![1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree of a nonzero polynomial.
    pub fn degree(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().expect("leading of zero polynomial")
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = fp_add(self.p, a, b);
        }
        FpPoly::new(self.p, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = fp_sub(self.p, a, b);
        }
        FpPoly::new(self.p, out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = fp_add(self.p, out[i + j], fp_mul(self.p, a, b));
            }
        }
        FpPoly::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> Self {
        FpPoly::new(
            self.p,
            self.coeffs.iter().map(|&a| fp_mul(self.p, a, c)).collect(),
        )
    }

    /// Euclidean division; divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let p = self.p;
        if self.is_zero() || self.coeffs.len() < divisor.coeffs.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let inv_lc = fp_inv(p, divisor.leading());
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let mut quo = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = fp_mul(p, rem[k], inv_lc);
            if c == 0 {
                continue;
            }
            quo[k - dd] = c;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = fp_sub(p, rem[k - dd + i], fp_mul(p, c, dc));
            }
        }
        (FpPoly::new(p, quo), FpPoly::new(p, rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(fp_inv(self.p, self.leading()))
    }

    /// Formal derivative d/dt.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| fp_mul(self.p, k as u64 % self.p, c))
            .collect();
        FpPoly::new(self.p, out)
    }
}

fn format_fp_poly(poly: &FpPoly) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (k, &c) in poly.coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (k, c) {
            (0, _) => format!("{c}"),
            (1, 1) => "t".to_string(),
            (1, _) => format!("{c}*t"),
            (_, 1) => format!("t^{k}"),
            (_, _) => format!("{c}*t^{k}"),
        };
        terms.push(t);
    }
    terms.join("+")
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Q(BigRational),
    Fp { p: u64, val: u64 },
    FpT { p: u64, num: FpPoly, den: FpPoly },
}

/// An exact base-field element in canonical form. Two scalars of the same
/// field are equal iff their payloads are structurally identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    repr: Repr,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match &self.repr {
            Repr::Q(_) => FieldSpec::rationals(),
            Repr::Fp { p, .. } => FieldSpec {
                kind: FieldKind::PrimeField(*p),
            },
            Repr::FpT { p, .. } => FieldSpec {
                kind: FieldKind::RationalFunctions(*p),
            },
        }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: &FieldSpec, n: i64) -> Self {
        let repr = match field.kind {
            FieldKind::Rationals => Repr::Q(BigRational::from_integer(BigInt::from(n))),
            FieldKind::PrimeField(p) => Repr::Fp {
                p,
                val: fp_from_i64(p, n),
            },
            FieldKind::RationalFunctions(p) => Repr::FpT {
                p,
                num: FpPoly::new(p, vec![fp_from_i64(p, n)]),
                den: FpPoly::one(p),
            },
        };
        Scalar { repr }
    }

    /// Residue constructor for 𝔽_p (reduced mod p).
    pub fn from_residue(p: u64, r: u64) -> Self {
        Scalar {
            repr: Repr::Fp { p, val: r % p },
        }
    }

    /// The element t of 𝔽_p(t), or a polynomial in t given by its coefficients.
    pub fn from_poly(field: &FieldSpec, coeffs: &[i64]) -> Self {
        match field.kind {
            FieldKind::RationalFunctions(p) => {
                let c = coeffs.iter().map(|&c| fp_from_i64(p, c)).collect();
                Scalar {
                    repr: Repr::FpT {
                        p,
                        num: FpPoly::new(p, c),
                        den: FpPoly::one(p),
                    },
                }
            }
            _ => panic!("from_poly requires a rational function field"),
        }
    }

    fn fpt_canonical(p: u64, num: FpPoly, den: FpPoly) -> Scalar {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar {
                repr: Repr::FpT {
                    p,
                    num,
                    den: FpPoly::one(p),
                },
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let inv_lc = fp_inv(p, den.leading());
        Scalar {
            repr: Repr::FpT {
                p,
                num: num.scale(inv_lc),
                den: den.scale(inv_lc),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Q(q) => q.is_zero(),
            Repr::Fp { val, .. } => *val == 0,
            Repr::FpT { num, .. } => num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Q(q) => q.is_one(),
            Repr::Fp { val, .. } => *val == 1,
            Repr::FpT { num, den, .. } => num.is_one() && den.is_one(),
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert!(
            self.field() == other.field(),
            "scalar field mismatch: {} vs {}",
            self.field(),
            other.field()
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.assert_same_field(other);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(a + b),
            (Repr::Fp { p, val: a }, Repr::Fp { val: b, .. }) => Repr::Fp {
                p: *p,
                val: fp_add(*p, *a, *b),
            },
            (Repr::FpT { p, num: a, den: b }, Repr::FpT { num: c, den: d, .. }) => {
                let num = a.mul(d).add(&c.mul(b));
                let den = b.mul(d);
                return Scalar::fpt_canonical(*p, num, den);
            }
            _ => unreachable!(),
        };
        Scalar { repr }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        let repr = match &self.repr {
            Repr::Q(a) => Repr::Q(-a),
            Repr::Fp { p, val } => Repr::Fp {
                p: *p,
                val: fp_neg(*p, *val),
            },
            Repr::FpT { p, num, den } => Repr::FpT {
                p: *p,
                num: FpPoly::zero(*p).sub(num),
                den: den.clone(),
            },
        };
        Scalar { repr }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.assert_same_field(other);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(a * b),
            (Repr::Fp { p, val: a }, Repr::Fp { val: b, .. }) => Repr::Fp {
                p: *p,
                val: fp_mul(*p, *a, *b),
            },
            (Repr::FpT { p, num: a, den: b }, Repr::FpT { num: c, den: d, .. }) => {
                return Scalar::fpt_canonical(*p, a.mul(c), b.mul(d))
            }
            _ => unreachable!(),
        };
        Scalar { repr }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Q(a) => Repr::Q(a.recip()),
            Repr::Fp { p, val } => Repr::Fp {
                p: *p,
                val: fp_inv(*p, *val),
            },
            Repr::FpT { p, num, den } => {
                return Ok(Scalar::fpt_canonical(*p, den.clone(), num.clone()))
            }
        };
        Ok(Scalar { repr })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.assert_same_field(other);
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let field = self.field();
        let (mut base, mut e) = if exp < 0 {
            (self.inv()?, exp.unsigned_abs())
        } else {
            (self.clone(), exp as u64)
        };
        let mut acc = Scalar::one(&field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Numerator/denominator view for rational-function scalars.
    pub(crate) fn fpt_parts(&self) -> Option<(&FpPoly, &FpPoly)> {
        match &self.repr {
            Repr::FpT { num, den, .. } => Some((num, den)),
            _ => None,
        }
    }

    /// Draw a small random scalar (seeded by the caller's RNG).
    pub fn sample<R: Rng>(field: &FieldSpec, rng: &mut R) -> Scalar {
        match field.kind {
            FieldKind::Rationals => {
                let n = rng.gen_range(-20i64..=20);
                let d = rng.gen_range(1i64..=10);
                Scalar {
                    repr: Repr::Q(BigRational::new(BigInt::from(n), BigInt::from(d))),
                }
            }
            FieldKind::PrimeField(p) => Scalar::from_residue(p, rng.gen_range(0..p)),
            FieldKind::RationalFunctions(p) => {
                let num = FpPoly::new(p, (0..3).map(|_| rng.gen_range(0..p)).collect());
                let mut den_coeffs: Vec<u64> = (0..rng.gen_range(1..=2usize))
                    .map(|_| rng.gen_range(0..p))
                    .collect();
                den_coeffs.push(1); // monic
                let den = FpPoly::new(p, den_coeffs);
                Scalar::fpt_canonical(p, num, den)
            }
        }
    }

    pub fn sample_nonzero<R: Rng>(field: &FieldSpec, rng: &mut R) -> Scalar {
        loop {
            let s = Scalar::sample(field, rng);
            if !s.is_zero() {
                return s;
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_scalar(self))
    }
}

// ---------------------------------------------------------------------------
// Literal grammar
// ---------------------------------------------------------------------------

/// Renders the canonical literal; `parse_scalar(format_scalar(s), field) == s`.
pub fn format_scalar(s: &Scalar) -> String {
    match &s.repr {
        Repr::Q(q) => {
            if q.denom().is_one() {
                format!("{}", q.numer())
            } else {
                format!("{}/{}", q.numer(), q.denom())
            }
        }
        Repr::Fp { val, .. } => format!("{val}"),
        Repr::FpT { num, den, .. } => {
            if den.is_one() {
                format_fp_poly(num)
            } else {
                format!("({})/({})", format_fp_poly(num), format_fp_poly(den))
            }
        }
    }
}

/// Parses a scalar literal for the given field.
///
/// Grammar per field: ℚ `-?[0-9]+(/[1-9][0-9]*)?`; 𝔽_p a decimal integer
/// (reduced mod p); 𝔽_p(t) `poly` or `(poly)/(poly)` with `poly` built from
/// `c`, `t`, `c*t`, `t^k`, `c*t^k` terms joined by `+`/`-`.
pub fn parse_scalar(text: &str, field: &FieldSpec) -> Result<Scalar> {
    let text = text.trim();
    match field.kind {
        FieldKind::Rationals => parse_rational(text),
        FieldKind::PrimeField(p) => parse_prime_field(text, p),
        FieldKind::RationalFunctions(p) => parse_rational_function(text, p),
    }
}

fn parse_rational(text: &str) -> Result<Scalar> {
    let malformed = || Error::MalformedLiteral(text.to_string());
    let (num_str, den_str) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: BigInt = parse_decimal_int(num_str, true).ok_or_else(malformed)?;
    let den: BigInt = match den_str {
        None => BigInt::one(),
        Some(d) => {
            let den = parse_decimal_int(d, false).ok_or_else(malformed)?;
            if den.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            den
        }
    };
    Ok(Scalar {
        repr: Repr::Q(BigRational::new(num, den)),
    })
}

fn parse_decimal_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = if allow_sign {
        s.strip_prefix('-').unwrap_or(s)
    } else {
        s
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_prime_field(text: &str, p: u64) -> Result<Scalar> {
    let malformed = || Error::MalformedLiteral(text.to_string());
    let n: BigInt = parse_decimal_int(text, true).ok_or_else(malformed)?;
    let val = ((&n) % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
    let (_, digits) = val.to_u64_digits();
    Ok(Scalar::from_residue(
        p,
        digits.first().copied().unwrap_or(0),
    ))
}

fn parse_rational_function(text: &str, p: u64) -> Result<Scalar> {
    let malformed = || Error::MalformedLiteral(text.to_string());
    if let Some(rest) = text.strip_prefix('(') {
        let close = rest.find(')').ok_or_else(malformed)?;
        let num_str = &rest[..close];
        let tail = &rest[close + 1..];
        let den_part = tail.strip_prefix("/(").ok_or_else(malformed)?;
        let den_str = den_part.strip_suffix(')').ok_or_else(malformed)?;
        let num = parse_fp_poly(num_str, p).ok_or_else(malformed)?;
        let den = parse_fp_poly(den_str, p).ok_or_else(malformed)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar::fpt_canonical(p, num, den))
    } else {
        let num = parse_fp_poly(text, p).ok_or_else(malformed)?;
        Ok(Scalar::fpt_canonical(p, num, FpPoly::one(p)))
    }
}

fn parse_fp_poly(s: &str, p: u64) -> Option<FpPoly> {
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return None;
    }
    let mut coeffs: Vec<u64> = Vec::new();
    let mut pos = 0usize;
    let mut negative = false;
    if bytes[0] == b'-' {
        negative = true;
        pos = 1;
    }
    loop {
        // one term: coeff, coeff*t, coeff*t^k, t, or t^k
        let (coeff, saw_coeff) = if pos < bytes.len() && bytes[pos].is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let c: u128 = s[start..pos].parse().ok()?;
            ((c % p as u128) as u64, true)
        } else {
            (1, false)
        };
        let mut exp = 0usize;
        let has_var = if saw_coeff {
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != b't' {
                    return None;
                }
                pos += 1;
                true
            } else {
                false
            }
        } else if pos < bytes.len() && bytes[pos] == b't' {
            pos += 1;
            true
        } else {
            return None;
        };
        if has_var {
            exp = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return None;
                }
                exp = s[start..pos].parse().ok()?;
                if exp > 10_000 {
                    return None;
                }
            }
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        let signed = if negative {
            fp_neg(p, coeff % p)
        } else {
            coeff % p
        };
        coeffs[exp] = fp_add(p, coeffs[exp], signed);
        if pos == bytes.len() {
            break;
        }
        match bytes[pos] {
            b'+' => negative = false,
            b'-' => negative = true,
            _ => return None,
        }
        pos += 1;
        if pos == bytes.len() {
            return None;
        }
    }
    Some(FpPoly::new(p, coeffs))
}

// ---------------------------------------------------------------------------
// Checked arithmetic entry point
// ---------------------------------------------------------------------------

/// Binary field operations exposed with full error checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact field operation with `FIELD_MISMATCH` / `DIVISION_BY_ZERO` checking.
pub fn field_arith(op: ArithOp, x: &Scalar, y: &Scalar) -> Result<Scalar> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch);
    }
    match op {
        ArithOp::Add => Ok(x.add(y)),
        ArithOp::Sub => Ok(x.sub(y)),
        ArithOp::Mul => Ok(x.mul(y)),
        ArithOp::Div => x.div(y),
    }
}
