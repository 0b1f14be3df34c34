//! Exact arithmetic in small finite fields `F_q`, `q = p^ell <= 256`,
//! `p` in {2, 3, 5, 7}.
//!
//! Elements are stored as integers in `[0, q)` whose base-`p` digits are the
//! coefficients of the residue polynomial (low digit = constant term).
//! Multiplication goes through log/antilog tables built once per field;
//! addition through a precomputed `q x q` table.
//!
//! Default moduli per `(p, ell)` are the Conway polynomials, listed
//! low-degree-first including the leading 1:
//!
//! | field | modulus |
//! |-------|---------|
//! | 2^1   | 1,1 (x+1) |
//! | 2^2   | 1,1,1 |
//! | 2^3   | 1,1,0,1 |
//! | 2^4   | 1,1,0,0,1 |
//! | 2^5   | 1,0,1,0,0,1 |
//! | 2^6   | 1,1,0,1,1,0,1 |
//! | 2^7   | 1,1,0,0,0,0,0,1 |
//! | 2^8   | 1,0,1,1,1,0,0,0,1 |
//! | 3^1   | 1,1 |
//! | 3^2   | 2,2,1 |
//! | 3^3   | 1,2,0,1 |
//! | 3^4   | 2,0,0,2,1 |
//! | 3^5   | 1,2,0,0,0,1 |
//! | 5^1   | 3,1 |
//! | 5^2   | 2,4,1 |
//! | 5^3   | 3,3,0,1 |
//! | 7^1   | 4,1 |
//! | 7^2   | 3,6,1 |
//!
//! An explicit modulus overrides the default, so element names can match an
//! external presentation of the field (e.g. `F_81 = F_3[x]/(x^4+x^3+x^2+x+1)`).

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field cardinality.
pub const MAX_Q: u32 = 256;

#[derive(Debug, Error)]
pub enum GaloisError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic {0} is not supported (use 2, 3, 5 or 7)")]
    UnsupportedCharacteristic(u32),
    #[error("q = {p}^{ell} exceeds the supported maximum of {MAX_Q}")]
    TooLarge { p: u32, ell: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus has {got} coefficients, expected {want} for degree {degree}")]
    WrongModulusDegree { got: usize, want: usize, degree: u32 },
    #[error("modulus must be monic (leading coefficient 1)")]
    NotMonic,
    #[error("modulus coefficient {0} is not reduced mod {1}")]
    BadModulusCoefficient(u8, u32),
    #[error("modulus is reducible: divisible by {factor}")]
    ReducibleModulus { factor: String },
    #[error("no built-in modulus for degree {ell} over F_{p}")]
    NoDefaultModulus { p: u32, ell: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("conjugation needs a square field order (even extension degree)")]
    NoConjugation,
    #[error("{0} is not an element of a field with {1} elements")]
    BadElement(u32, u32),
    #[error("cannot parse field description {0:?}")]
    BadFieldText(String),
}

/// Conway polynomial for `(p, ell)`, low-degree-first, or `None` if the pair
/// is outside the supported range.
fn default_modulus(p: u32, ell: u32) -> Option<&'static [u8]> {
    let m: &'static [u8] = match (p, ell) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (2, 7) => &[1, 1, 0, 0, 0, 0, 0, 1],
        (2, 8) => &[1, 0, 1, 1, 1, 0, 0, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (3, 5) => &[1, 2, 0, 0, 0, 1],
        (5, 1) => &[3, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (7, 1) => &[4, 1],
        (7, 2) => &[3, 6, 1],
        _ => return None,
    };
    Some(m)
}

struct FieldInner {
    p: u32,
    ell: u32,
    q: u32,
    modulus: Vec<u8>,
    /// exp[i] = g^i for 0 <= i < 2(q-1); doubled so mul never reduces mod q-1.
    exp: Vec<u8>,
    /// log[a] for a != 0; log[0] is a sentinel and never read.
    log: Vec<u16>,
    /// add[a*q + b] = a + b.
    add: Vec<u8>,
    neg: Vec<u8>,
    generator: u8,
}

/// A finite field `F_q` with `q = p^ell <= 256`.
///
/// Cheap to clone (shared tables). Two `Field` values compare equal exactly
/// when they have the same characteristic, degree and modulus, so repeated
/// construction from the same inputs yields interchangeable handles.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.ell == other.inner.ell
            && self.inner.modulus == other.inner.modulus
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.to_text())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

// --- polynomial helpers over F_p used only during construction ---

fn pp_trim(v: &mut Vec<u8>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` divided by monic-led `b` over F_p.
#[allow(clippy::needless_range_loop)]
fn pp_rem(a: &[u8], b: &[u8], p: u32) -> Vec<u8> {
    let mut r: Vec<u8> = a.to_vec();
    pp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = pp_inv_mod(b[db] as u32, p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] as u32 * lead_inv) % p;
        for i in 0..=db {
            let sub = (c * b[i] as u32) % p;
            let idx = dr - db + i;
            r[idx] = ((r[idx] as u32 + p - sub) % p) as u8;
        }
        pp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn pp_inv_mod(a: u32, p: u32) -> u32 {
    // p <= 7, brute force is fine
    (1..p).find(|&x| (a * x) % p == 1).expect("unit mod p")
}

fn pp_to_string(f: &[u8]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field, GaloisError> {
        Field::new(p, 1, None)
    }

    /// Construct `F_{p^ell}`, optionally with an explicit monic irreducible
    /// modulus (`ell + 1` coefficients, constant term first).
    pub fn new(p: u32, ell: u32, modulus: Option<&[u8]>) -> Result<Field, GaloisError> {
        if !is_prime(p) {
            return Err(GaloisError::NotPrime(p));
        }
        if !matches!(p, 2 | 3 | 5 | 7) {
            return Err(GaloisError::UnsupportedCharacteristic(p));
        }
        if ell == 0 {
            return Err(GaloisError::ZeroDegree);
        }
        let q = p.checked_pow(ell).filter(|&q| q <= MAX_Q).ok_or(GaloisError::TooLarge { p, ell })?;

        let modulus: Vec<u8> = match modulus {
            Some(m) => m.to_vec(),
            None => default_modulus(p, ell).ok_or(GaloisError::NoDefaultModulus { p, ell })?.to_vec(),
        };
        if modulus.len() != ell as usize + 1 {
            return Err(GaloisError::WrongModulusDegree {
                got: modulus.len(),
                want: ell as usize + 1,
                degree: ell,
            });
        }
        if *modulus.last().unwrap() != 1 {
            return Err(GaloisError::NotMonic);
        }
        if let Some(&c) = modulus.iter().find(|&&c| c as u32 >= p) {
            return Err(GaloisError::BadModulusCoefficient(c, p));
        }

        // Trial division by every monic polynomial of degree <= ell/2.
        for d in 1..=(ell / 2) as usize {
            let count = p.pow(d as u32);
            for code in 0..count {
                let mut div = vec![0u8; d + 1];
                let mut c = code;
                for coef in div.iter_mut().take(d) {
                    *coef = (c % p) as u8;
                    c /= p;
                }
                div[d] = 1;
                if pp_rem(&modulus, &div, p).is_empty() {
                    return Err(GaloisError::ReducibleModulus { factor: pp_to_string(&div) });
                }
            }
        }

        Ok(Field { inner: Arc::new(Self::build_tables(p, ell, q, modulus)) })
    }

    #[allow(clippy::needless_range_loop)]
    fn build_tables(p: u32, ell: u32, q: u32, modulus: Vec<u8>) -> FieldInner {
        let qs = q as usize;
        let digits = |mut a: u32| -> Vec<u32> {
            let mut d = vec![0u32; ell as usize];
            for di in d.iter_mut() {
                *di = a % p;
                a /= p;
            }
            d
        };
        let undigits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * p + x) };

        let mut add = vec![0u8; qs * qs];
        let mut neg = vec![0u8; qs];
        for a in 0..q {
            let da = digits(a);
            let dn: Vec<u32> = da.iter().map(|&x| (p - x) % p).collect();
            neg[a as usize] = undigits(&dn) as u8;
            for b in 0..q {
                let db = digits(b);
                let ds: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&ds) as u8;
            }
        }

        // Polynomial multiplication mod (modulus, p), used to bootstrap the
        // log/antilog tables.
        let raw_mul = |a: u32, b: u32| -> u32 {
            let da = digits(a);
            let db = digits(b);
            let deg = ell as usize;
            let mut prod = vec![0u32; 2 * deg];
            for (i, &x) in da.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            // fold x^(deg + j) = -(modulus minus leading term) * x^j
            for k in (deg..2 * deg).rev() {
              let c = prod[k];
                if c == 0 {
                    continue;
                }
                prod[k] = 0;
                for i in 0..deg {
                    let m = modulus[i] as u32;
                    if m != 0 {
                        let idx = k - deg + i;
                        prod[idx] = (prod[idx] + p * p - (c * m) % p) % p;
                    }
                }
            }
            undigits(&prod[..deg])
        };

        // Find a multiplicative generator.
        let group = q - 1;
        let mut prime_divs = Vec::new();
        let mut rest = group;
        let mut d = 2;
        while d * d <= rest {
            if rest.is_multiple_of(d) {
                prime_divs.push(d);
                while rest.is_multiple_of(d) {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            prime_divs.push(rest);
        }
        let pow_raw = |mut base: u32, mut e: u32| -> u32 {
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = raw_mul(acc, base);
                }
                base = raw_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let generator = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&g| prime_divs.iter().all(|&r| pow_raw(g, group / r) != 1))
                .expect("the multiplicative group of a finite field is cyclic")
        };

        let mut exp = vec![0u8; 2 * group as usize];
        let mut log = vec![0u16; qs];
        let mut acc = 1u32;
        for (i, slot) in exp.iter_mut().take(group as usize).enumerate() {
            *slot = acc as u8;
            log[acc as usize] = i as u16;
            acc = raw_mul(acc, generator);
        }
        debug_assert_eq!(acc, 1, "generator order must be q-1");
        for i in group as usize..2 * group as usize {
            exp[i] = exp[i - group as usize];
        }

        FieldInner { p, ell, q, modulus, exp, log, add, neg, generator: generator as u8 }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }
    pub fn ell(&self) -> u32 {
        self.inner.ell
    }
    pub fn q(&self) -> u32 {
        self.inner.q
    }
    /// Modulus coefficients, constant term first, length `ell + 1`.
    pub fn modulus(&self) -> &[u8] {
        &self.inner.modulus
    }
    /// A fixed multiplicative generator (order `q - 1`).
    pub fn generator(&self) -> u8 {
        self.inner.generator
    }
    pub fn is_binary(&self) -> bool {
        self.inner.q == 2
    }
    /// True when conjugation `a -> a^sqrt(q)` is defined (even degree).
    pub fn has_conjugation(&self) -> bool {
        self.inner.ell.is_multiple_of(2)
    }

    /// All element representatives `0..q`.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.inner.q).map(|a| a as u8)
    }

    // --- raw operations on representatives; both arguments must belong here ---

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.inner.add[a as usize * self.inner.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.inner.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            return 0;
        }
        let i = self.inner.log[a as usize] as usize + self.inner.log[b as usize] as usize;
        self.inner.exp[i]
    }
    pub fn inv(&self, a: u8) -> Result<u8, GaloisError> {
        if a == 0 {
            return Err(GaloisError::DivisionByZero);
        }
        let group = (self.inner.q - 1) as usize;
        Ok(self.inner.exp[group - self.inner.log[a as usize] as usize])
    }
    pub fn div(&self, a: u8, b: u8) -> Result<u8, GaloisError> {
        Ok(self.mul(a, self.inv(b)?))
    }
    pub fn pow(&self, a: u8, e: i64) -> Result<u8, GaloisError> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(GaloisError::DivisionByZero),
            };
        }
        let group = (self.inner.q - 1) as i64;
        let idx = (self.inner.log[a as usize] as i64 * (e.rem_euclid(group))).rem_euclid(group);
        Ok(self.inner.exp[idx as usize])
    }
    /// `a^sqrt(q)`; an involutory field automorphism when `ell` is even.
    pub fn conjugate(&self, a: u8) -> Result<u8, GaloisError> {
        if !self.has_conjugation() {
            return Err(GaloisError::NoConjugation);
        }
        let root = self.inner.p.pow(self.inner.ell / 2);
        self.pow(a, root as i64)
    }

    /// Wrap a representative as a typed element.
    pub fn el(&self, rep: u32) -> Result<FieldElement, GaloisError> {
        if rep >= self.inner.q {
            return Err(GaloisError::BadElement(rep, self.inner.q));
        }
        Ok(FieldElement { rep: rep as u8, field: self.clone() })
    }

    /// Text form: `p^ell` for the default modulus, `p^ell/c0,c1,...,cell`
    /// otherwise.
    pub fn to_text(&self) -> String {
        let p = self.inner.p;
        let ell = self.inner.ell;
        match default_modulus(p, ell) {
            Some(d) if d == &self.inner.modulus[..] => format!("{p}^{ell}"),
            _ => {
                let coeffs: Vec<String> = self.inner.modulus.iter().map(|c| c.to_string()).collect();
                format!("{p}^{ell}/{}", coeffs.join(","))
            }
        }
    }

    /// Parse `"p"`, `"p^ell"` or `"p^ell/c0,c1,...,cell"`.
    pub fn parse(text: &str) -> Result<Field, GaloisError> {
        let text = text.trim();
        let bad = || GaloisError::BadFieldText(text.to_string());
        let (head, modulus) = match text.split_once('/') {
            Some((h, m)) => {
                let coeffs: Vec<u8> = m
                    .split(',')
                    .map(|c| c.trim().parse::<u8>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad())?;
                (h, Some(coeffs))
            }
            None => (text, None),
        };
        let (p, ell) = match head.split_once('^') {
            Some((p, e)) => (
                p.trim().parse::<u32>().map_err(|_| bad())?,
                e.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (head.parse::<u32>().map_err(|_| bad())?, 1),
        };
        Field::new(p, ell, modulus.as_deref())
    }
}

/// A typed field element: representative plus its field.
#[derive(Clone, Debug)]
pub struct FieldElement {
    rep: u8,
    field: Field,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.field == other.field
    }
}
impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl FieldElement {
    pub fn rep(&self) -> u8 {
        self.rep
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn is_zero(&self) -> bool {
        self.rep == 0
    }

    fn same(&self, other: &FieldElement) -> Result<(), GaloisError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GaloisError::SpecMismatch)
        }
    }
    fn wrap(&self, rep: u8) -> FieldElement {
        FieldElement { rep, field: self.field.clone() }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.rep, other.rep)))
    }
    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.rep, other.rep)))
    }
    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.rep, other.rep)))
    }
    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.rep))
    }
    pub fn inv(&self) -> Result<FieldElement, GaloisError> {
        Ok(self.wrap(self.field.inv(self.rep)?))
    }
    pub fn pow(&self, e: i64) -> Result<FieldElement, GaloisError> {
        Ok(self.wrap(self.field.pow(self.rep, e)?))
    }
    pub fn conjugate(&self) -> Result<FieldElement, GaloisError> {
        Ok(self.wrap(self.field.conjugate(self.rep)?))
    }
}
