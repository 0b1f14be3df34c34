//! Linear codes over `F_q` given by generator matrices: deterministic
//! echelon forms, Euclidean and Hermitian duals, hulls, the self-dual /
//! self-orthogonal / LCD / doubly-even predicates, and exact weight
//! enumeration by iterating all `q^k` codewords.

use std::fmt;

use thiserror::Error;

use crate::galois::Field;
use crate::linalg;

/// Default ceiling on `q^k` for exhaustive enumeration (2^24 codewords).
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("row {row} has {got} entries, expected {want}")]
    RaggedRow { row: usize, got: usize, want: usize },
    #[error("row {row}, column {col}: {value} is not an element of F_{q}")]
    ForeignElement { row: usize, col: usize, value: u8, q: u32 },
    #[error("vector has {got} entries, expected {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("codes live over different fields")]
    FieldMismatch,
    #[error("codes have different lengths ({0} vs {1})")]
    LengthsDiffer(usize, usize),
    #[error("the Hermitian inner product needs a square field order")]
    HermitianUnavailable,
    #[error("enumeration needs {needed} codewords, over the cap of {cap}")]
    EnumerationCap { needed: u128, cap: u64 },
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("doubly-even is defined for binary codes only")]
    NotBinary,
    #[error("coordinate {0} out of range for length {1}")]
    BadCoordinate(usize, usize),
    #[error("generator {row} is nonzero on deleted coordinate {col}")]
    ShortenNonzero { row: usize, col: usize },
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

/// Which inner product a dual or predicate refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerProduct {
    Euclidean,
    /// `(u, v) = sum u_i conj(v_i)` with `conj(a) = a^sqrt(q)`; needs square q.
    Hermitian,
}

impl fmt::Display for InnerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerProduct::Euclidean => f.write_str("euclid"),
            InnerProduct::Hermitian => f.write_str("hermitian"),
        }
    }
}

/// A linear `[n, k]` code, stored as the original generator rows plus a
/// cached deterministic reduced row echelon form.
#[derive(Clone)]
pub struct LinearCode {
    field: Field,
    n: usize,
    rows: Vec<Vec<u8>>,
    rref: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{},{}] over {}", self.n, self.dimension(), self.field)
    }
}

impl LinearCode {
    pub fn new(field: &Field, n: usize, rows: Vec<Vec<u8>>) -> Result<LinearCode, CodeError> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(CodeError::RaggedRow { row: i, got: row.len(), want: n });
            }
            for (j, &v) in row.iter().enumerate() {
                if v as u32 >= field.q() {
                    return Err(CodeError::ForeignElement { row: i, col: j, value: v, q: field.q() });
                }
            }
        }
        let mut rref = rows.clone();
        let pivots = linalg::rref(field, &mut rref);
        Ok(LinearCode { field: field.clone(), n, rows, rref, pivots })
    }

    /// The zero code of length `n`.
    pub fn zero(field: &Field, n: usize) -> LinearCode {
        LinearCode::new(field, n, Vec::new()).expect("no rows to validate")
    }

    /// The full space `F_q^n`.
    pub fn full(field: &Field, n: usize) -> LinearCode {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0u8; n];
                r[i] = 1;
                r
            })
            .collect();
        LinearCode::new(field, n, rows).expect("unit vectors are valid")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn length(&self) -> usize {
        self.n
    }
    pub fn dimension(&self) -> usize {
        self.rref.len()
    }
    /// The rows as supplied at construction.
    pub fn input_rows(&self) -> &[Vec<u8>] {
        &self.rows
    }
    /// Canonical generators: the reduced row echelon form.
    pub fn generators(&self) -> &[Vec<u8>] {
        &self.rref
    }

    /// Number of codewords (saturating at `u128::MAX`).
    pub fn cardinality(&self) -> u128 {
        (self.field.q() as u128)
            .checked_pow(self.dimension() as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn contains(&self, v: &[u8]) -> Result<bool, CodeError> {
        if v.len() != self.n {
            return Err(CodeError::LengthMismatch { got: v.len(), want: self.n });
        }
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rref.iter().zip(&self.pivots) {
            let c = w[p];
            if c != 0 {
                for (wi, &ri) in w.iter_mut().zip(row) {
                    *wi = f.sub(*wi, f.mul(c, ri));
                }
            }
        }
        Ok(w.iter().all(|&x| x == 0))
    }

    /// Row-space equality (both codes are kept in canonical echelon form).
    pub fn row_space_eq(&self, other: &LinearCode) -> bool {
        self.field == other.field && self.n == other.n && self.rref == other.rref
    }

    /// Is `other` a subcode of `self`?
    pub fn contains_code(&self, other: &LinearCode) -> Result<bool, CodeError> {
        if self.field != other.field {
            return Err(CodeError::FieldMismatch);
        }
        for row in other.generators() {
            if !self.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn conjugated_generators(&self) -> Result<Vec<Vec<u8>>, CodeError> {
        if !self.field.has_conjugation() {
            return Err(CodeError::HermitianUnavailable);
        }
        Ok(self
            .rref
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&a| self.field.conjugate(a).expect("conjugation available"))
                    .collect()
            })
            .collect())
    }

    /// Inner product of two vectors.
    pub fn inner(field: &Field, u: &[u8], v: &[u8], ip: InnerProduct) -> Result<u8, CodeError> {
        if u.len() != v.len() {
            return Err(CodeError::LengthMismatch { got: v.len(), want: u.len() });
        }
        let mut acc = 0u8;
        for (&a, &b) in u.iter().zip(v) {
            let b = match ip {
                InnerProduct::Euclidean => b,
                InnerProduct::Hermitian => {
                    field.conjugate(b).map_err(|_| CodeError::HermitianUnavailable)?
                }
            };
            acc = field.add(acc, field.mul(a, b));
        }
        Ok(acc)
    }

    /// The dual code under the given inner product; `dim + dual dim = n`.
    pub fn dual(&self, ip: InnerProduct) -> Result<LinearCode, CodeError> {
        let rows = match ip {
            InnerProduct::Euclidean => self.rref.clone(),
            InnerProduct::Hermitian => self.conjugated_generators()?,
        };
        let ns = linalg::null_space(&self.field, &rows, self.n);
        LinearCode::new(&self.field, self.n, ns)
    }

    pub fn sum_codes(&self, other: &LinearCode) -> Result<LinearCode, CodeError> {
        if self.field != other.field {
            return Err(CodeError::FieldMismatch);
        }
        if self.n != other.n {
            return Err(CodeError::LengthsDiffer(self.n, other.n));
        }
        let rows = self.rref.iter().chain(other.rref.iter()).cloned().collect();
        LinearCode::new(&self.field, self.n, rows)
    }

    /// Intersection, computed as the dual of the sum of the duals.
    pub fn intersect(&self, other: &LinearCode) -> Result<LinearCode, CodeError> {
        let d1 = self.dual(InnerProduct::Euclidean)?;
        let d2 = other.dual(InnerProduct::Euclidean)?;
        d1.sum_codes(&d2)?.dual(InnerProduct::Euclidean)
    }

    /// The hull `C ∩ C^⊥` under the given inner product.
    pub fn hull(&self, ip: InnerProduct) -> Result<LinearCode, CodeError> {
        self.intersect(&self.dual(ip)?)
    }

    /// Gram matrix of the canonical generators under the given product.
    #[allow(clippy::needless_range_loop)]
    pub fn gram(&self, ip: InnerProduct) -> Result<Vec<Vec<u8>>, CodeError> {
        let k = self.dimension();
        let mut g = vec![vec![0u8; k]; k];
        for i in 0..k {
            for j in 0..k {
                g[i][j] = Self::inner(&self.field, &self.rref[i], &self.rref[j], ip)?;
            }
        }
        Ok(g)
    }

    pub fn is_self_orthogonal(&self, ip: InnerProduct) -> Result<bool, CodeError> {
        let g = self.gram(ip)?;
        Ok(g.iter().all(|row| row.iter().all(|&v| v == 0)))
    }

    pub fn is_self_dual(&self, ip: InnerProduct) -> Result<bool, CodeError> {
        Ok(self.is_self_orthogonal(ip)? && 2 * self.dimension() == self.n)
    }

    pub fn is_lcd(&self, ip: InnerProduct) -> Result<bool, CodeError> {
        Ok(self.hull(ip)?.dimension() == 0)
    }

    /// All codeword weights divisible by 4 (binary codes only).
    pub fn is_doubly_even(&self) -> Result<bool, CodeError> {
        if !self.field.is_binary() {
            return Err(CodeError::NotBinary);
        }
        // Basis criterion: generator weights divisible by 4 and pairwise
        // overlaps even.
        for (i, u) in self.rref.iter().enumerate() {
            if u.iter().filter(|&&x| x != 0).count() % 4 != 0 {
                return Ok(false);
            }
            for v in &self.rref[i + 1..] {
                let overlap = u.iter().zip(v).filter(|(&a, &b)| a != 0 && b != 0).count();
                if overlap % 2 != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Exact weight distribution by iterating all `q^k` codewords.
    ///
    /// Refuses (reporting the required budget) when `q^k` exceeds `cap`.
    pub fn weight_enumerator(&self, cap: u64) -> Result<WeightEnumerator, CodeError> {
        let needed = self.cardinality();
        if needed > cap as u128 {
            return Err(CodeError::EnumerationCap { needed, cap });
        }
        let mut counts = vec![0u64; self.n + 1];
        if self.dimension() == 0 {
            counts[0] = 1;
            return Ok(WeightEnumerator { counts });
        }
        if self.field.is_binary() {
            self.enumerate_binary(&mut counts);
        } else {
            self.enumerate_bytes(&mut counts);
        }
        Ok(WeightEnumerator { counts })
    }

    fn enumerate_binary(&self, counts: &mut [u64]) {
        let words = self.n.div_ceil(64);
        let packed: Vec<Vec<u64>> = self
            .rref
            .iter()
            .map(|row| {
                let mut w = vec![0u64; words];
                for (j, &v) in row.iter().enumerate() {
                    if v != 0 {
                        w[j / 64] |= 1u64 << (j % 64);
                    }
                }
                w
            })
            .collect();
        let total = 1u64 << self.dimension();
        let mut cur = vec![0u64; words];
        counts[0] += 1;
        for msg in 1..total {
            let row = &packed[msg.trailing_zeros() as usize];
            let mut wt = 0u32;
            for (c, r) in cur.iter_mut().zip(row) {
                *c ^= r;
                wt += c.count_ones();
            }
            counts[wt as usize] += 1;
        }
    }

    fn enumerate_bytes(&self, counts: &mut [u64]) {
        let f = &self.field;
        let q = f.q() as u64;
        let k = self.dimension();
        let total = q.pow(k as u32);
        // Digit d of the odometer scales its row by the element with rep d,
        // so the transition d -> d+1 (or the wrap to 0) adds the difference
        // of the two scalar multiples. Precomputed per row and digit.
        let step: Vec<Vec<Vec<u8>>> = self
            .rref
            .iter()
            .map(|row| {
                (0..q as u8)
                    .map(|d| {
                        let next = if d as u64 + 1 == q { 0 } else { d + 1 };
                        let diff = f.sub(next, d);
                        row.iter().map(|&r| f.mul(diff, r)).collect()
                    })
                    .collect()
            })
            .collect();
        let mut digits = vec![0u64; k];
        let mut cur = vec![0u8; self.n];
        counts[0] += 1;
        for _ in 1..total {
            let mut pos = 0usize;
            loop {
                let d = digits[pos] as usize;
                for (c, &r) in cur.iter_mut().zip(&step[pos][d]) {
                    *c = f.add(*c, r);
                }
                digits[pos] += 1;
                if digits[pos] == q {
                    digits[pos] = 0;
                    pos += 1;
                } else {
                    break;
                }
            }
            let wt = cur.iter().filter(|&&x| x != 0).count();
            counts[wt] += 1;
        }
    }

    /// Least positive codeword weight; refuses on the zero code.
    pub fn min_distance(&self, cap: u64) -> Result<usize, CodeError> {
        if self.dimension() == 0 {
            return Err(CodeError::ZeroCode);
        }
        let we = self.weight_enumerator(cap)?;
        Ok(we.min_positive_weight().expect("a nonzero code has a nonzero word"))
    }

    /// Delete the listed coordinates; every codeword must be zero there.
    pub fn shorten_on(&self, coords: &[usize]) -> Result<LinearCode, CodeError> {
        let mut drop = vec![false; self.n];
        for &c in coords {
            if c >= self.n {
                return Err(CodeError::BadCoordinate(c, self.n));
            }
            drop[c] = true;
        }
        for (i, row) in self.rref.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if drop[j] && v != 0 {
                    return Err(CodeError::ShortenNonzero { row: i, col: j });
                }
            }
        }
        let rows: Vec<Vec<u8>> = self
            .rref
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(j, &v)| (!drop[j]).then_some(v))
                    .collect()
            })
            .collect();
        let kept = drop.iter().filter(|&&d| !d).count();
        LinearCode::new(&self.field, kept, rows)
    }

    /// Reorder coordinates: `w[perm[i]] = v[i]` for each generator.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<LinearCode, CodeError> {
        if perm.len() != self.n {
            return Err(CodeError::LengthMismatch { got: perm.len(), want: self.n });
        }
        let rows = self
            .rref
            .iter()
            .map(|row| {
                let mut w = vec![0u8; self.n];
                for (i, &v) in row.iter().enumerate() {
                    w[perm[i]] = v;
                }
                w
            })
            .collect();
        LinearCode::new(&self.field, self.n, rows)
    }

    /// Serialize: header `q n k`, then the canonical generators, one row per
    /// line (digit strings for q <= 9, comma-separated for larger q).
    pub fn to_file_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.field.to_text(), self.n, self.dimension());
        for row in &self.rref {
            if self.field.q() <= 9 {
                for &v in row {
                    out.push((b'0' + v) as char);
                }
            } else {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                out.push_str(&cells.join(","));
            }
            out.push('\n');
        }
        out
    }

    /// Parse the code file format produced by [`LinearCode::to_file_text`].
    /// Blank lines and `#` comments are skipped.
    pub fn parse_file_text(text: &str) -> Result<LinearCode, CodeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_err = |line: usize, col: usize, msg: &str| CodeError::Parse {
            line,
            col,
            msg: msg.to_string(),
        };

        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty file"))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(parse_err(hline, 1, "header must be `q n k`"));
        }
        let field = Field::parse(tokens[0])
            .map_err(|e| parse_err(hline, 1, &format!("bad field: {e}")))?;
        let n: usize = tokens[1].parse().map_err(|_| parse_err(hline, 1, "bad length"))?;
        let k: usize = tokens[2].parse().map_err(|_| parse_err(hline, 1, "bad dimension"))?;

        let mut rows = Vec::with_capacity(k);
        for r in 0..k {
            let (lno, line) = lines
                .next()
                .ok_or_else(|| parse_err(hline + r + 1, 1, "missing generator row"))?;
            let row: Vec<u8> = if field.q() <= 9 {
                if line.len() != n {
                    return Err(parse_err(
                        lno,
                        line.len().min(n) + 1,
                        &format!("row has {} symbols, expected {n}", line.len()),
                    ));
                }
                line.bytes()
                    .enumerate()
                    .map(|(col, b)| {
                        b.checked_sub(b'0')
                            .filter(|&d| (d as u32) < field.q())
                            .ok_or_else(|| parse_err(lno, col + 1, "bad symbol"))
                    })
                    .collect::<Result<_, _>>()?
            } else {
                let cells: Vec<&str> = line.split(',').collect();
                if cells.len() != n {
                    return Err(parse_err(
                        lno,
                        cells.len().min(n) + 1,
                        &format!("row has {} symbols, expected {n}", cells.len()),
                    ));
                }
                cells
                    .iter()
                    .enumerate()
                    .map(|(col, c)| {
                        c.trim()
                            .parse::<u8>()
                            .ok()
                            .filter(|&d| (d as u32) < field.q())
                            .ok_or_else(|| parse_err(lno, col + 1, "bad symbol"))
                    })
                    .collect::<Result<_, _>>()?
            };
            rows.push(row);
        }
        if let Some((lno, _)) = lines.next() {
            return Err(parse_err(lno, 1, "unexpected extra line"));
        }
        LinearCode::new(&field, n, rows)
    }
}

/// Exact weight distribution: `counts[w]` = number of codewords of weight w.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    counts: Vec<u64>,
}

impl WeightEnumerator {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
    pub fn count(&self, w: usize) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }
    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }
    pub fn min_positive_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| self.counts[w] > 0)
    }
}

impl fmt::Display for WeightEnumerator {
    /// Polynomial form `1 + 620y^8 + ... + y^32`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (w, c) {
                (0, c) => write!(f, "{c}")?,
                (w, 1) => write!(f, "y^{w}")?,
                (w, c) => write!(f, "{c}y^{w}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
