//! The quotient ring `R_m = F_q[x]/(x^m - 1)`: cyclic-convolution
//! arithmetic, the factorization of `x^m - 1`, the primitive idempotents of
//! its ideals, and the bar involution `v(x) -> v(x^{-1})`.

use std::fmt;

use thiserror::Error;

use crate::galois::Field;
use crate::linalg;
use crate::poly::{Poly, PolyError};

#[derive(Debug, Error)]
pub enum RingError {
    #[error("the modulus degree m must be positive")]
    ZeroModulus,
    #[error("element has {got} coefficients, expected at most {m}")]
    WrongLength { got: usize, m: usize },
    #[error("element belongs to a different ring")]
    RingMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An element of `R_m`; always exactly `m` coefficients, low-degree-first.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    field: Field,
    coeffs: Vec<u8>,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({})", self.pretty())
    }
}

impl RingElement {
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn m(&self) -> usize {
        self.coeffs.len()
    }
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
    pub fn to_poly(&self) -> Poly {
        Poly::new(&self.field, &self.coeffs).expect("coefficients already validated")
    }
    /// Full-width text form `c0,c1,...,c_{m-1}`.
    pub fn to_text(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
    pub fn pretty(&self) -> String {
        self.to_poly().pretty()
    }
}

/// Handle for `R_m = F_q[x]/(x^m - 1)`; all element operations live here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicRing {
    field: Field,
    m: usize,
}

impl CyclicRing {
    pub fn new(field: &Field, m: usize) -> Result<CyclicRing, RingError> {
        if m == 0 {
            return Err(RingError::ZeroModulus);
        }
        Ok(CyclicRing { field: field.clone(), m })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn zero(&self) -> RingElement {
        RingElement { field: self.field.clone(), coeffs: vec![0; self.m] }
    }
    pub fn one(&self) -> RingElement {
        self.monomial(1, 0)
    }
    /// `c x^j` with the exponent reduced mod m.
    pub fn monomial(&self, c: u8, j: usize) -> RingElement {
        let mut e = self.zero();
        e.coeffs[j % self.m] = c;
        e
    }

    /// Build an element from up to `m` coefficients (shorter input is padded
    /// with zeros).
    pub fn element(&self, coeffs: &[u8]) -> Result<RingElement, RingError> {
        if coeffs.len() > self.m {
            return Err(RingError::WrongLength { got: coeffs.len(), m: self.m });
        }
        Poly::new(&self.field, coeffs)?; // validates coefficient range
        let mut full = coeffs.to_vec();
        full.resize(self.m, 0);
        Ok(RingElement { field: self.field.clone(), coeffs: full })
    }

    /// Reduce an arbitrary polynomial mod `x^m - 1` (index folding).
    pub fn from_poly(&self, p: &Poly) -> RingElement {
        let mut e = self.zero();
        for (i, &c) in p.coeffs().iter().enumerate() {
            let j = i % self.m;
            e.coeffs[j] = self.field.add(e.coeffs[j], c);
        }
        e
    }

    pub fn parse_element(&self, text: &str) -> Result<RingElement, RingError> {
        let p = Poly::parse(&self.field, text.trim())?;
        if p.coeffs().len() > self.m {
            return Err(RingError::WrongLength { got: p.coeffs().len(), m: self.m });
        }
        self.element(p.coeffs())
    }

    fn check(&self, e: &RingElement) -> Result<(), RingError> {
        if e.field == self.field && e.coeffs.len() == self.m {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        debug_assert!(self.check(a).is_ok() && self.check(b).is_ok());
        let coeffs =
            a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.field.add(x, y)).collect();
        RingElement { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        let coeffs = a.coeffs.iter().map(|&x| self.field.neg(x)).collect();
        RingElement { field: self.field.clone(), coeffs }
    }

    pub fn scale(&self, c: u8, a: &RingElement) -> RingElement {
        let coeffs = a.coeffs.iter().map(|&x| self.field.mul(c, x)).collect();
        RingElement { field: self.field.clone(), coeffs }
    }

    /// Cyclic convolution.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        debug_assert!(self.check(a).is_ok() && self.check(b).is_ok());
        let mut coeffs = vec![0u8; self.m];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let k = (i + j) % self.m;
                coeffs[k] = self.field.add(coeffs[k], self.field.mul(x, y));
            }
        }
        RingElement { field: self.field.clone(), coeffs }
    }

    /// Multiplication by `x` (cyclic right shift of the coefficients).
    pub fn x_times(&self, a: &RingElement) -> RingElement {
        let mut coeffs = vec![0u8; self.m];
        for (i, &c) in a.coeffs.iter().enumerate() {
            coeffs[(i + 1) % self.m] = c;
        }
        RingElement { field: self.field.clone(), coeffs }
    }

    /// The bar involution `v(x) -> v(x^{-1})`: coefficient `i` moves to
    /// `-i mod m`.
    pub fn bar(&self, a: &RingElement) -> RingElement {
        let mut coeffs = vec![0u8; self.m];
        for (i, &c) in a.coeffs.iter().enumerate() {
            coeffs[(self.m - i) % self.m] = c;
        }
        RingElement { field: self.field.clone(), coeffs }
    }
}

/// Which kind of ideal a tag denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TagKind {
    /// `G_i`: ideal of a self-reciprocal base factor.
    SelfReciprocal,
    /// `H'_j`: ideal of the lexicographically smaller member of a pair.
    Primed,
    /// `H''_j`: ideal of the reciprocal of the primed member.
    DoublePrimed,
}

/// One CRT component of `R_m`: the ideal cut out by one irreducible-power
/// divisor of `x^m - 1`, together with its primitive idempotent.
#[derive(Clone, Debug)]
pub struct IdealTag {
    pub kind: TagKind,
    pub index: usize,
    pub idempotent: RingElement,
    /// The associated divisor `g_i^{p^a}`, `h_j^{p^a}` or `(h_j^*)^{p^a}`.
    pub factor: Poly,
}

impl IdealTag {
    pub fn name(&self) -> String {
        match self.kind {
            TagKind::SelfReciprocal => format!("G_{}", self.index),
            TagKind::Primed => format!("H'_{}", self.index),
            TagKind::DoublePrimed => format!("H''_{}", self.index),
        }
    }
}

/// The factorization data of `x^m - 1` over `F_q` with `m = p^a m'`,
/// `gcd(m', q) = 1`:
/// `x^m - 1 = delta * (g_0 g_1 ... g_r h_1 h_1^* ... h_t h_t^*)^{p^a}`.
#[derive(Clone, Debug)]
pub struct FactorSet {
    field: Field,
    m: usize,
    m_prime: usize,
    a: u32,
    exponent: u32,
    delta: u8,
    self_reciprocal: Vec<Poly>,
    pairs: Vec<(Poly, Poly)>,
}

impl FactorSet {
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn m_prime(&self) -> usize {
        self.m_prime
    }
    /// `a` in `m = p^a m'`.
    pub fn a(&self) -> u32 {
        self.a
    }
    /// `p^a`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }
    pub fn delta(&self) -> u8 {
        self.delta
    }
    /// `g_0, g_1, ..., g_r` (monic self-reciprocal base factors, `g_0 = x-1`).
    pub fn self_reciprocal(&self) -> &[Poly] {
        &self.self_reciprocal
    }
    /// Pairs `(h_j, h_j^*)`, `h_j` the lexicographically smaller member.
    pub fn pairs(&self) -> &[(Poly, Poly)] {
        &self.pairs
    }

    /// `delta * (prod g_i * prod h_j h_j^*)^{p^a}` — must equal `x^m - 1`.
    pub fn product(&self) -> Poly {
        let base = self
            .self_reciprocal
            .iter()
            .chain(self.pairs.iter().flat_map(|(h, hs)| [h, hs]))
            .fold(Poly::one(&self.field), |acc, f| acc.mul(f));
        base.pow(self.exponent).scale(self.delta)
    }

    /// All ideal tags in order `G_0..G_r, H'_1, H''_1, ..., H'_t, H''_t`,
    /// with idempotents from the extended Euclidean algorithm.
    pub fn ideal_tags(&self) -> Vec<IdealTag> {
        let ring = CyclicRing::new(&self.field, self.m).expect("m >= 1");
        let xm1 = Poly::x_pow_minus_one(&self.field, self.m);
        let mut tags = Vec::new();
        let mut push = |kind: TagKind, index: usize, base: &Poly| {
            let factor = base.pow(self.exponent);
            let cofactor = xm1.exact_div(&factor);
            let (g, _, v) = factor.xgcd(&cofactor);
            assert_eq!(g, Poly::one(&self.field), "divisors of x^m-1 must be coprime");
            let e = ring.from_poly(&v.mul(&cofactor));
            tags.push(IdealTag { kind, index, idempotent: e, factor });
        };
        for (i, g) in self.self_reciprocal.iter().enumerate() {
            push(TagKind::SelfReciprocal, i, g);
        }
        for (j, (h, hstar)) in self.pairs.iter().enumerate() {
            push(TagKind::Primed, j + 1, h);
            push(TagKind::DoublePrimed, j + 1, hstar);
        }
        tags
    }

    /// Look up a tag by its display name (`G_0`, `H'_1`, ...).
    pub fn tag_by_name(&self, name: &str) -> Option<IdealTag> {
        self.ideal_tags().into_iter().find(|t| t.name() == name)
    }
}

/// Factor `x^m - 1` over the field of `spec`.
pub fn factor_xm1(field: &Field, m: usize) -> Result<FactorSet, RingError> {
    if m == 0 {
        return Err(RingError::ZeroModulus);
    }
    let p = field.p() as usize;
    let mut m_prime = m;
    let mut a = 0u32;
    while m_prime.is_multiple_of(p) {
        m_prime /= p;
        a += 1;
    }
    let exponent = (p as u32).pow(a);

    let base = Poly::x_pow_minus_one(field, m_prime);
    let mut factors = berlekamp_squarefree(&base);
    debug_assert!(factors.iter().all(|f| f.is_monic()));
    debug_assert_eq!(
        factors.iter().fold(Poly::one(field), |acc, f| acc.mul(f)),
        base,
        "factor product mismatch"
    );
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            debug_assert_eq!(factors[i].gcd(&factors[j]), Poly::one(field));
        }
    }

    let x_minus_1 = Poly::new(field, &[field.neg(1), 1]).expect("x - 1");
    let mut self_reciprocal = vec![x_minus_1.clone()];
    factors.retain(|f| *f != x_minus_1);
    let mut rest_sr: Vec<Poly> = factors.iter().filter(|f| f.is_self_reciprocal()).cloned().collect();
    rest_sr.sort_by(|x, y| x.cmp_by_encoding(y));
    self_reciprocal.extend(rest_sr);

    let mut pairs = Vec::new();
    let mut remaining: Vec<Poly> = factors.into_iter().filter(|f| !f.is_self_reciprocal()).collect();
    while let Some(h) = remaining.pop() {
        let hstar = h.reciprocal().expect("x does not divide x^m - 1");
        let pos = remaining
            .iter()
            .position(|f| *f == hstar)
            .expect("non-self-reciprocal factors of x^m - 1 pair up");
        remaining.swap_remove(pos);
        if h.cmp_by_encoding(&hstar) == std::cmp::Ordering::Less {
            pairs.push((h, hstar));
        } else {
            pairs.push((hstar, h));
        }
    }
    pairs.sort_by(|(a, _), (b, _)| a.cmp_by_encoding(b));

    let fs = FactorSet {
        field: field.clone(),
        m,
        m_prime,
        a,
        exponent,
        delta: 1,
        self_reciprocal,
        pairs,
    };
    debug_assert_eq!(fs.product(), Poly::x_pow_minus_one(field, m));
    Ok(fs)
}

/// Berlekamp factorization of a monic squarefree polynomial over `F_q`.
fn berlekamp_squarefree(f: &Poly) -> Vec<Poly> {
    let field = f.field().clone();
    let n = f.degree().expect("nonzero polynomial");
    if n <= 1 {
        return vec![f.monic()];
    }
    let q = field.q();

    // Rows of the Frobenius matrix: x^(i*q) mod f.
    let x = Poly::monomial(&field, 1, 1);
    let xq = x.pow(q).rem(f).expect("nonzero modulus");
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(n);
    let mut cur = Poly::one(&field);
    for i in 0..n {
        let mut row = vec![0u8; n];
        row[..cur.coeffs().len()].copy_from_slice(cur.coeffs());
        // subtract the identity: kernel of (Frobenius - id)
        row[i] = field.sub(row[i], 1);
        rows.push(row);
        cur = cur.mulmod(&xq, f);
    }

    // Kernel vectors v with v(x)^q = v(x) mod f.
    let kernel = linalg::left_null_space(&field, &rows, n);
    let r = kernel.len();
    let mut factors = vec![f.monic()];
    if r == 1 {
        return factors;
    }

    'outer: for v in &kernel {
        let vp = Poly::new(&field, v).expect("kernel coefficients in range");
        if vp.degree().is_none_or(|d| d == 0) {
            continue; // constants split nothing
        }
        let mut next = Vec::with_capacity(factors.len());
        for g in factors {
            if g.degree() == Some(1) {
                next.push(g);
                continue;
            }
            let mut remaining = g;
            for c in field.elements() {
                if remaining.degree() == Some(0) {
                    break;
                }
                let shifted = vp.sub(&Poly::constant(&field, c));
                let d = remaining.gcd(&shifted);
                if let Some(dd) = d.degree() {
                    if dd >= 1 && dd < remaining.degree().unwrap() {
                        remaining = remaining.exact_div(&d);
                        next.push(d);
                    }
                }
            }
            if remaining.degree().is_some_and(|d| d >= 1) {
                next.push(remaining);
            }
        }
        factors = next;
        if factors.len() == r {
            break 'outer;
        }
    }
    assert_eq!(factors.len(), r, "Berlekamp split is incomplete");
    factors
}

/// Monic reciprocal `x^deg * f(1/x)`; errors when `f(0) = 0`.
pub fn reciprocal(f: &Poly) -> Result<Poly, PolyError> {
    f.reciprocal()
}

/// An `F_q`-basis of the ideal of `tag` (echelon-reduced x-shifts of the
/// idempotent); its length equals the degree of the tag's factor.
pub fn ideal_basis(ring: &CyclicRing, tag: &IdealTag) -> Vec<RingElement> {
    let m = ring.m();
    let mut rows = Vec::with_capacity(m);
    let mut cur = tag.idempotent.clone();
    for _ in 0..m {
        rows.push(cur.coeffs().to_vec());
        cur = ring.x_times(&cur);
    }
    linalg::rref(ring.field(), &mut rows);
    rows.into_iter().map(|r| ring.element(&r).expect("basis row has length m")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }
    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn poly(field: &Field, coeffs: &[u8]) -> Poly {
        Poly::new(field, coeffs).unwrap()
    }

    #[test]
    fn ring_arithmetic_basics() {
        let f = f2();
        // m = 1: the ring is F_2 itself
        let r1 = CyclicRing::new(&f, 1).unwrap();
        assert_eq!(r1.mul(&r1.one(), &r1.one()), r1.one());
        assert!(CyclicRing::new(&f, 0).is_err());

        // m = 10: x^9 * x = 1
        let r10 = CyclicRing::new(&f, 10).unwrap();
        let x9 = r10.monomial(1, 9);
        let x = r10.monomial(1, 1);
        assert_eq!(r10.mul(&x9, &x), r10.one());

        // F_3, m = 5: (1+x)^2 = 1 + 2x + x^2
        let r5 = CyclicRing::new(&f3(), 5).unwrap();
        let e = r5.element(&[1, 1]).unwrap();
        assert_eq!(r5.mul(&e, &e), r5.element(&[1, 2, 1]).unwrap());
    }

    #[test]
    fn bar_involution() {
        let f = f2();
        let r = CyclicRing::new(&f, 15).unwrap();
        let x = r.monomial(1, 1);
        assert_eq!(r.bar(&x), r.monomial(1, 14));
        let v = r.element(&[1, 0, 1, 1, 0, 0, 1]).unwrap();
        assert_eq!(r.bar(&r.bar(&v)), v);
        let w = r.element(&[0, 1, 1, 0, 1]).unwrap();
        assert_eq!(r.bar(&r.mul(&v, &w)), r.mul(&r.bar(&v), &r.bar(&w)));
        assert_eq!(r.bar(&r.add(&v, &w)), r.add(&r.bar(&v), &r.bar(&w)));
    }

    #[test]
    fn factorization_m15_binary() {
        let f = f2();
        let fs = factor_xm1(&f, 15).unwrap();
        assert_eq!(fs.a(), 0);
        assert_eq!(fs.exponent(), 1);
        assert_eq!(fs.m_prime(), 15);
        assert_eq!(fs.delta(), 1);
        let g: Vec<&Poly> = fs.self_reciprocal().iter().collect();
        assert_eq!(g.len(), 3);
        assert_eq!(*g[0], poly(&f, &[1, 1]));
        assert_eq!(*g[1], poly(&f, &[1, 1, 1]));
        assert_eq!(*g[2], poly(&f, &[1, 1, 1, 1, 1]));
        assert_eq!(fs.pairs().len(), 1);
        assert_eq!(fs.pairs()[0].0, poly(&f, &[1, 1, 0, 0, 1]));
        assert_eq!(fs.pairs()[0].1, poly(&f, &[1, 0, 0, 1, 1]));
    }

    #[test]
    fn factorization_m10_binary() {
        let f = f2();
        let fs = factor_xm1(&f, 10).unwrap();
        assert_eq!(fs.a(), 1);
        assert_eq!(fs.exponent(), 2);
        assert_eq!(fs.m_prime(), 5);
        assert_eq!(fs.self_reciprocal().len(), 2);
        assert_eq!(fs.self_reciprocal()[0], poly(&f, &[1, 1]));
        assert_eq!(fs.self_reciprocal()[1], poly(&f, &[1, 1, 1, 1, 1]));
        assert!(fs.pairs().is_empty());
        assert_eq!(fs.product(), Poly::x_pow_minus_one(&f, 10));
    }

    #[test]
    fn factorization_m1() {
        let f = f3();
        let fs = factor_xm1(&f, 1).unwrap();
        assert_eq!(fs.self_reciprocal().len(), 1);
        assert_eq!(fs.self_reciprocal()[0], poly(&f, &[2, 1])); // x - 1
        assert!(fs.pairs().is_empty());
        assert_eq!(fs.a(), 0);
    }

    #[test]
    fn idempotents_match_known_values_m15() {
        let f = f2();
        let fs = factor_xm1(&f, 15).unwrap();
        let tags = fs.ideal_tags();
        assert_eq!(tags.len(), 5);
        assert_eq!(tags[0].name(), "G_0");
        assert_eq!(tags[1].name(), "G_1");
        assert_eq!(tags[2].name(), "G_2");
        assert_eq!(tags[3].name(), "H'_1");
        assert_eq!(tags[4].name(), "H''_1");

        let r = CyclicRing::new(&f, 15).unwrap();
        // e_1 = x^14+x^13+x^11+x^10+x^8+x^7+x^5+x^4+x^2+x
        let e1 = r.element(&[0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1]).unwrap();
        assert_eq!(tags[1].idempotent, e1);
        // e_2 = x^14+x^13+x^12+x^11+x^9+x^8+x^7+x^6+x^4+x^3+x^2+x
        let e2 = r.element(&[0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1]).unwrap();
        assert_eq!(tags[2].idempotent, e2);
        // e' = x^12+x^9+x^8+x^6+x^4+x^3+x^2+x, e'' = bar(e')
        let ep = r.element(&[0, 1, 1, 1, 1, 0, 1, 0, 1, 1, 0, 0, 1, 0, 0]).unwrap();
        assert_eq!(tags[3].idempotent, ep);
        assert_eq!(tags[4].idempotent, r.bar(&ep));
    }

    #[test]
    fn idempotent_match_known_value_m10() {
        let f = f2();
        let fs = factor_xm1(&f, 10).unwrap();
        let tags = fs.ideal_tags();
        let r = CyclicRing::new(&f, 10).unwrap();
        // G_0 idempotent e = 1 + x^2 + x^4 + x^6 + x^8
        let e = r.element(&[1, 0, 1, 0, 1, 0, 1, 0, 1, 0]).unwrap();
        assert_eq!(tags[0].idempotent, e);
        // G_1 idempotent e' = 1 + e
        assert_eq!(tags[1].idempotent, r.add(&r.one(), &e));
    }

    #[test]
    fn idempotent_system_properties() {
        for (field, m) in [(f2(), 15), (f2(), 10), (f3(), 5), (f3(), 8), (f2(), 21)] {
            let fs = factor_xm1(&field, m).unwrap();
            let r = CyclicRing::new(&field, m).unwrap();
            let tags = fs.ideal_tags();
            let mut sum = r.zero();
            for (i, t) in tags.iter().enumerate() {
                let e = &t.idempotent;
                assert_eq!(r.mul(e, e), *e, "e^2 = e for {}", t.name());
                sum = r.add(&sum, e);
                for u in &tags[i + 1..] {
                    assert!(r.mul(e, &u.idempotent).is_zero(), "orthogonality");
                }
            }
            assert_eq!(sum, r.one(), "idempotents sum to 1");
        }
    }

    #[test]
    fn ideal_basis_dimensions() {
        for (field, m) in [(f2(), 15), (f2(), 10), (f3(), 5)] {
            let fs = factor_xm1(&field, m).unwrap();
            let r = CyclicRing::new(&field, m).unwrap();
            let mut total = 0;
            for tag in fs.ideal_tags() {
                let basis = ideal_basis(&r, &tag);
                assert_eq!(basis.len(), tag.factor.degree().unwrap(), "{}", tag.name());
                total += basis.len();
            }
            assert_eq!(total, m);
        }
    }

    #[test]
    fn g0_basis_is_all_ones_when_coprime() {
        let f = f3();
        let fs = factor_xm1(&f, 5).unwrap();
        let r = CyclicRing::new(&f, 5).unwrap();
        let basis = ideal_basis(&r, &fs.ideal_tags()[0]);
        assert_eq!(basis.len(), 1);
        let ones = r.element(&[1, 1, 1, 1, 1]).unwrap();
        let c = basis[0].coeffs()[0];
        assert_eq!(r.scale(c, &ones), basis[0]);
    }

    #[test]
    fn chain_ring_g0_in_r10() {
        // G_0 in R_10 over F_2 has dimension 2: {0, e, u, e+u}
        let f = f2();
        let fs = factor_xm1(&f, 10).unwrap();
        let r = CyclicRing::new(&f, 10).unwrap();
        let tags = fs.ideal_tags();
        let basis = ideal_basis(&r, &tags[0]);
        assert_eq!(basis.len(), 2);
        let e = tags[0].idempotent.clone();
        let u = r.element(&[1; 10]).unwrap();
        // e and u span the ideal
        for b in &basis {
            let in_span = [
                r.zero(),
                e.clone(),
                u.clone(),
                r.add(&e, &u),
            ]
            .iter()
            .any(|cand| cand == b);
            assert!(in_span);
        }
        // u is stabilized by the idempotent
        assert_eq!(r.mul(&u, &e), u);
    }

    #[test]
    fn ideals_are_fields_when_coprime() {
        // gcd(m, q) = 1: each ideal is a field with identity the idempotent
        for (field, m) in [(f2(), 7), (f3(), 4)] {
            let fs = factor_xm1(&field, m).unwrap();
            let r = CyclicRing::new(&field, m).unwrap();
            for tag in fs.ideal_tags() {
                let basis = ideal_basis(&r, &tag);
                let q = field.q() as usize;
                let card = q.pow(basis.len() as u32);
                if card > 256 {
                    continue;
                }
                // enumerate the ideal
                let mut elements = Vec::with_capacity(card);
                for idx in 0..card {
                    let mut acc = r.zero();
                    let mut rest = idx;
                    for b in &basis {
                        let c = (rest % q) as u8;
                        rest /= q;
                        acc = r.add(&acc, &r.scale(c, b));
                    }
                    elements.push(acc);
                }
                for z in elements.iter().filter(|z| !z.is_zero()) {
                    let has_inverse =
                        elements.iter().any(|w| r.mul(z, w) == tag.idempotent);
                    assert!(has_inverse, "nonzero element of {} lacks inverse", tag.name());
                }
            }
        }
    }

    #[test]
    fn element_text_round_trip() {
        let r = CyclicRing::new(&f3(), 5).unwrap();
        let e = r.element(&[2, 1, 1, 1, 1]).unwrap();
        assert_eq!(e.to_text(), "2,1,1,1,1");
        assert_eq!(r.parse_element("2,1,1,1,1").unwrap(), e);
        assert_eq!(r.parse_element("2,1").unwrap(), r.element(&[2, 1]).unwrap());
        assert!(r.parse_element("1,1,1,1,1,1").is_err());
    }
}
