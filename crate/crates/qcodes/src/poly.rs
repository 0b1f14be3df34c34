//! Dense univariate polynomials over a [`Field`], used for factoring
//! `x^m - 1` and for idempotent computation.
//!
//! Coefficients are stored low-degree-first with no trailing zeros; the zero
//! polynomial has an empty coefficient vector.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::galois::Field;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("reciprocal undefined: constant term is zero")]
    ZeroConstantTerm,
    #[error("coefficient {0} is not an element of F_{1}")]
    BadCoefficient(u8, u32),
    #[error("cannot parse polynomial {0:?}")]
    BadText(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u8>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.pretty())
    }
}

impl Poly {
    pub fn new(field: &Field, coeffs: &[u8]) -> Result<Poly, PolyError> {
        if let Some(&c) = coeffs.iter().find(|&&c| c as u32 >= field.q()) {
            return Err(PolyError::BadCoefficient(c, field.q()));
        }
        let mut coeffs = coeffs.to_vec();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(Poly { field: field.clone(), coeffs })
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }
    pub fn one(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: vec![1] }
    }
    pub fn constant(field: &Field, c: u8) -> Poly {
        Poly::new(field, &[c]).expect("constant in range")
    }
    /// The monomial `c x^k`.
    pub fn monomial(field: &Field, c: u8, k: usize) -> Poly {
        let mut coeffs = vec![0u8; k + 1];
        coeffs[k] = c;
        Poly::new(field, &coeffs).expect("coefficient in range")
    }
    /// `x^m - 1`.
    pub fn x_pow_minus_one(field: &Field, m: usize) -> Poly {
        let mut coeffs = vec![0u8; m + 1];
        coeffs[0] = field.neg(1);
        coeffs[m] = field.add(coeffs[m], 1);
        Poly { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn check_same_field(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0u8; n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = f.add(self.coeff(i), other.coeff(i));
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: f.clone(), coeffs }
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u8) -> Poly {
        if c == 0 {
            return Poly::zero(&self.field);
        }
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut coeffs = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly { field: f.clone(), coeffs }
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.check_same_field(divisor);
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let f = &self.field;
        let dd = divisor.degree().unwrap();
        let lead_inv = f.inv(*divisor.coeffs.last().unwrap()).expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u8; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let dr = rem.len() - 1;
            let c = f.mul(rem[dr], lead_inv);
            if c != 0 {
                quo[dr - dd] = c;
                for (i, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[dr - dd + i] = f.sub(rem[dr - dd + i], f.mul(c, dc));
                }
            } else {
                rem.pop();
                continue;
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        while quo.last() == Some(&0) {
            quo.pop();
        }
        Ok((Poly { field: f.clone(), coeffs: quo }, Poly { field: f.clone(), coeffs: rem }))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Divide exactly; panics if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    /// Normalize to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None | Some(&1) => self.clone(),
            Some(&lead) => self.scale(self.field.inv(lead).expect("nonzero lead")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, u, v)` with `u*self + v*other = g`,
    /// `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(f), Poly::zero(f));
        let (mut v0, mut v1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        if let Some(&lead) = r0.coeffs.last() {
            if lead != 1 {
                let inv = f.inv(lead).expect("nonzero lead");
                r0 = r0.scale(inv);
                u0 = u0.scale(inv);
                v0 = v0.scale(inv);
            }
        }
        (r0, u0, v0)
    }

    pub fn eval(&self, x: u8) -> u8 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0u8, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `self * other mod modulus`.
    pub fn mulmod(&self, other: &Poly, modulus: &Poly) -> Poly {
        self.mul(other).rem(modulus).expect("nonzero modulus")
    }

    /// The monic reciprocal `x^deg * f(1/x)`, defined when `f(0) != 0`.
    pub fn reciprocal(&self) -> Result<Poly, PolyError> {
        if self.coeff(0) == 0 {
            return Err(PolyError::ZeroConstantTerm);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Poly { field: self.field.clone(), coeffs }.monic())
    }

    pub fn is_self_reciprocal(&self) -> bool {
        match self.reciprocal() {
            Ok(r) => r == self.monic(),
            Err(_) => false,
        }
    }

    /// Order polynomials by degree, then by coefficients from the highest
    /// power down (an integer-encoding comparison in base q).
    pub fn cmp_by_encoding(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Text form `c0,c1,...`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse(field: &Field, text: &str) -> Result<Poly, PolyError> {
        let coeffs: Vec<u8> = text
            .split(',')
            .map(|c| c.trim().parse::<u8>())
            .collect::<Result<_, _>>()
            .map_err(|_| PolyError::BadText(text.to_string()))?;
        Poly::new(field, &coeffs)
    }

    /// Human-readable form like `x^4+x^3+1`.
    pub fn pretty(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}
