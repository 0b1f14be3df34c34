//! Permutation automorphisms given as disjoint cycles, the fixed and
//! even-sum subcodes they induce, the projection map onto one coordinate per
//! cycle, the cycle-sum map, and structured checkers for the decomposition
//! statements relating them.
//!
//! Checkers return a [`CheckReport`] with one clause per assertion and a
//! witness vector on failure, so a failing run shows what broke and where.

use std::fmt;

use thiserror::Error;

use crate::galois::Field;
use crate::linalg;
use crate::lincode::{CodeError, InnerProduct, LinearCode};

#[derive(Debug, Error)]
pub enum AutoError {
    #[error("cycle index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("index {0} appears in more than one cycle")]
    RepeatedIndex(usize),
    #[error("permutation degree {got} does not match code length {want}")]
    DegreeMismatch { got: usize, want: usize },
    #[error("the permutation is not an automorphism of the code (witness row {witness:?})")]
    NotAutomorphism { witness: Vec<u8> },
    #[error("generator {row} is not constant on cycle {cycle}")]
    NonConstantBlock { row: usize, cycle: usize },
    #[error("requires gcd(m, q) = 1, but gcd({m}, {q}) = {gcd}")]
    GcdPrecondition { m: usize, q: u32, gcd: usize },
    #[error("cycle length hypothesis fails: {0}")]
    LengthHypothesis(String),
    #[error("requires a quasi-cyclic action: all cycles of length equal to the order")]
    NotQuasiCyclic,
    #[error("the code is not self-orthogonal, the statement does not apply")]
    NotSelfOrthogonal,
    #[error("cannot parse permutation {text:?}: {msg}")]
    Parse { text: String, msg: String },
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A permutation of `{0..n}` stored as disjoint cycles `Ω_1..Ω_s`.
///
/// Cycles keep their given order; each is rotated to start at its smallest
/// element, and indices missing from the input become trailing fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleAutomorphism {
    n: usize,
    cycles: Vec<Vec<usize>>,
    image: Vec<usize>,
}

impl CycleAutomorphism {
    /// From 0-based cycles; unlisted indices become fixed points.
    pub fn new(cycles: Vec<Vec<usize>>, n: usize) -> Result<CycleAutomorphism, AutoError> {
        let mut seen = vec![false; n];
        let mut stored = Vec::with_capacity(cycles.len());
        for cycle in cycles {
            for &i in &cycle {
                if i >= n {
                    return Err(AutoError::IndexOutOfRange(i + 1, n));
                }
                if seen[i] {
                    return Err(AutoError::RepeatedIndex(i + 1));
                }
                seen[i] = true;
            }
            if cycle.is_empty() {
                continue;
            }
            let start =
                cycle.iter().enumerate().min_by_key(|&(_, &v)| v).map(|(i, _)| i).unwrap();
            let rotated: Vec<usize> =
                (0..cycle.len()).map(|k| cycle[(start + k) % cycle.len()]).collect();
            stored.push(rotated);
        }
        for (i, s) in seen.iter().enumerate() {
            if !s {
                stored.push(vec![i]);
            }
        }
        let mut image = vec![0usize; n];
        for cycle in &stored {
            for (k, &i) in cycle.iter().enumerate() {
                image[i] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(CycleAutomorphism { n, cycles: stored, image })
    }

    /// The identity permutation (n fixed points).
    pub fn identity(n: usize) -> CycleAutomorphism {
        CycleAutomorphism::new(Vec::new(), n).expect("no cycles to validate")
    }

    pub fn degree(&self) -> usize {
        self.n
    }
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }
    /// Number of cycles, counting fixed points.
    pub fn s(&self) -> usize {
        self.cycles.len()
    }
    /// Order `m = lcm(l_1, ..., l_s)`.
    pub fn order(&self) -> usize {
        self.cycles.iter().map(|c| c.len()).fold(1, lcm)
    }

    /// `Some((m, c, f))` when the stored cycles are exactly `c` cycles of
    /// length `m` followed by `f` fixed points.
    pub fn shape(&self) -> Option<(usize, usize, usize)> {
        let m = self.order();
        let c = self.cycles.iter().take_while(|cy| cy.len() == m).count();
        if self.cycles[c..].iter().all(|cy| cy.len() == 1) && (m == 1 || c > 0) {
            Some((m, c, self.cycles.len() - c))
        } else {
            None
        }
    }

    /// Long cycles and fixed coordinates when every cycle has length `m`
    /// or 1, in any order.
    pub fn aqc_split(&self) -> Option<(Vec<&[usize]>, Vec<usize>)> {
        let m = self.order();
        let mut long = Vec::new();
        let mut fixed = Vec::new();
        for cycle in &self.cycles {
            match cycle.len() {
                1 => fixed.push(cycle[0]),
                l if l == m => long.push(cycle.as_slice()),
                _ => return None,
            }
        }
        Some((long, fixed))
    }

    /// `w[sigma(i)] = v[i]`.
    pub fn apply(&self, v: &[u8]) -> Result<Vec<u8>, AutoError> {
        if v.len() != self.n {
            return Err(AutoError::DegreeMismatch { got: v.len(), want: self.n });
        }
        let mut w = vec![0u8; self.n];
        for (i, &x) in v.iter().enumerate() {
            w[self.image[i]] = x;
        }
        Ok(w)
    }

    /// Parse `(1,2,3)(4..10)(11)`: 1-based, comma-separated cycles in
    /// parentheses, `a..b` for an ascending run; unlisted indices become
    /// fixed points.
    pub fn parse(text: &str, n: usize) -> Result<CycleAutomorphism, AutoError> {
        let err = |msg: &str| AutoError::Parse { text: text.to_string(), msg: msg.to_string() };
        let trimmed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles = Vec::new();
        let mut rest = trimmed.as_str();
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return Err(err("expected '('"));
            };
            let Some(close) = stripped.find(')') else {
                return Err(err("missing ')'"));
            };
            let body = &stripped[..close];
            rest = &stripped[close + 1..];
            if body.is_empty() {
                continue;
            }
            let mut cycle = Vec::new();
            for item in body.split(',') {
                if let Some((a, b)) = item.split_once("..") {
                    let a: usize = a.parse().map_err(|_| err("bad range start"))?;
                    let b: usize = b.parse().map_err(|_| err("bad range end"))?;
                    if a == 0 || b < a {
                        return Err(err("bad range"));
                    }
                    cycle.extend((a..=b).map(|i| i - 1));
                } else {
                    let i: usize = item.parse().map_err(|_| err("bad index"))?;
                    if i == 0 {
                        return Err(err("indices are 1-based"));
                    }
                    cycle.push(i - 1);
                }
            }
            cycles.push(cycle);
        }
        CycleAutomorphism::new(cycles, n)
    }

    /// Render with `a..b` runs for three or more consecutive indices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for cycle in &self.cycles {
            out.push('(');
            let mut i = 0;
            let mut first = true;
            while i < cycle.len() {
                let mut j = i;
                while j + 1 < cycle.len() && cycle[j + 1] == cycle[j] + 1 {
                    j += 1;
                }
                if !first {
                    out.push(',');
                }
                first = false;
                if j - i >= 2 {
                    out.push_str(&format!("{}..{}", cycle[i] + 1, cycle[j] + 1));
                } else {
                    for (k, &v) in cycle[i..=j].iter().enumerate() {
                        if k > 0 {
                            out.push(',');
                        }
                        out.push_str(&(v + 1).to_string());
                    }
                }
                i = j + 1;
            }
            out.push(')');
        }
        out
    }
}

impl fmt::Display for CycleAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// One assertion inside a [`CheckReport`].
#[derive(Clone, Debug)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    pub witness: Option<Vec<u8>>,
    pub note: Option<String>,
}

impl Clause {
    pub(crate) fn ok(name: impl Into<String>) -> Clause {
        Clause { name: name.into(), pass: true, witness: None, note: None }
    }
    pub(crate) fn fail(name: impl Into<String>, witness: Option<Vec<u8>>) -> Clause {
        Clause { name: name.into(), pass: false, witness, note: None }
    }
    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Clause {
        self.note = Some(note.into());
        self
    }
}

/// Structured pass/fail report for one checker run.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: String,
    pub clauses: Vec<Clause>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.check, if self.passed() { "PASS" } else { "FAIL" })?;
        for c in &self.clauses {
            write!(f, "  [{}] {}", if c.pass { "pass" } else { "FAIL" }, c.name)?;
            if let Some(n) = &c.note {
                write!(f, " ({n})")?;
            }
            if let Some(w) = &c.witness {
                let sym: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, " witness {}", sym.join(","))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check_degree(code: &LinearCode, sigma: &CycleAutomorphism) -> Result<(), AutoError> {
    if sigma.degree() != code.length() {
        return Err(AutoError::DegreeMismatch { got: sigma.degree(), want: code.length() });
    }
    Ok(())
}

/// Does `sigma` map the code onto itself?
pub fn is_automorphism(code: &LinearCode, sigma: &CycleAutomorphism) -> Result<bool, AutoError> {
    check_degree(code, sigma)?;
    for row in code.generators() {
        if !code.contains(&sigma.apply(row)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn require_automorphism(
    code: &LinearCode,
    sigma: &CycleAutomorphism,
) -> Result<(), AutoError> {
    check_degree(code, sigma)?;
    for row in code.generators() {
        if !code.contains(&sigma.apply(row)?)? {
            return Err(AutoError::NotAutomorphism { witness: row.clone() });
        }
    }
    Ok(())
}

fn combine(field: &Field, gens: &[Vec<u8>], lambda: &[u8], n: usize) -> Vec<u8> {
    let mut v = vec![0u8; n];
    for (&c, g) in lambda.iter().zip(gens) {
        if c == 0 {
            continue;
        }
        for (vi, &gi) in v.iter_mut().zip(g) {
            *vi = field.add(*vi, field.mul(c, gi));
        }
    }
    v
}

/// The subcode fixed pointwise by `sigma` (constant on every cycle).
pub fn fixed_subcode(
    code: &LinearCode,
    sigma: &CycleAutomorphism,
) -> Result<LinearCode, AutoError> {
    require_automorphism(code, sigma)?;
    let field = code.field();
    let gens = code.generators();
    let n = code.length();
    // kernel of lambda -> lambda (G sigma - G) gives the fixed combinations
    let diff: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| {
            let gs = sigma.apply(g).expect("degree checked");
            gs.iter().zip(g).map(|(&a, &b)| field.sub(a, b)).collect()
        })
        .collect();
    let kernel = linalg::left_null_space(field, &diff, n);
    let rows = kernel.iter().map(|l| combine(field, gens, l, n)).collect();
    Ok(LinearCode::new(field, n, rows)?)
}

/// The subcode of codewords whose coordinate sum over every cycle is zero.
pub fn e_subcode(code: &LinearCode, sigma: &CycleAutomorphism) -> Result<LinearCode, AutoError> {
    require_automorphism(code, sigma)?;
    let field = code.field();
    let gens = code.generators();
    let n = code.length();
    let sums: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| {
            sigma
                .cycles()
                .iter()
                .map(|cy| cy.iter().fold(0u8, |acc, &i| field.add(acc, g[i])))
                .collect()
        })
        .collect();
    let kernel = linalg::left_null_space(field, &sums, sigma.s());
    let rows = kernel.iter().map(|l| combine(field, gens, l, n)).collect();
    Ok(LinearCode::new(field, n, rows)?)
}

/// Even-sum subcode with the fixed coordinates deleted, plus the induced
/// permutation on the remaining coordinates.
///
/// Requires every cycle length to be the order `m` or 1.
pub fn e_star(
    code: &LinearCode,
    sigma: &CycleAutomorphism,
) -> Result<(LinearCode, CycleAutomorphism), AutoError> {
    let (long, fixed) = sigma.aqc_split().ok_or(AutoError::NotQuasiCyclic)?;
    let e = e_subcode(code, sigma)?;
    let shortened = e.shorten_on(&fixed)?;
    let mut is_fixed = vec![false; code.length()];
    for &i in &fixed {
        is_fixed[i] = true;
    }
    let mut remap = vec![usize::MAX; code.length()];
    let mut next = 0usize;
    for (i, r) in remap.iter_mut().enumerate() {
        if !is_fixed[i] {
            *r = next;
            next += 1;
        }
    }
    let cycles = long.iter().map(|cy| cy.iter().map(|&i| remap[i]).collect()).collect();
    let induced = CycleAutomorphism::new(cycles, next)?;
    Ok((shortened, induced))
}

/// Project a cycle-constant code to one coordinate per cycle.
pub fn pi_project(fixed: &LinearCode, sigma: &CycleAutomorphism) -> Result<LinearCode, AutoError> {
    check_degree(fixed, sigma)?;
    let mut rows = Vec::with_capacity(fixed.dimension());
    for (r, g) in fixed.generators().iter().enumerate() {
        let mut row = Vec::with_capacity(sigma.s());
        for (cyi, cycle) in sigma.cycles().iter().enumerate() {
            let v = g[cycle[0]];
            if cycle.iter().any(|&i| g[i] != v) {
                return Err(AutoError::NonConstantBlock { row: r, cycle: cyi });
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok(LinearCode::new(fixed.field(), sigma.s(), rows)?)
}

/// Inverse of [`pi_project`]: repeat each coordinate along its cycle.
pub fn pi_lift(projected: &LinearCode, sigma: &CycleAutomorphism) -> Result<LinearCode, AutoError> {
    if projected.length() != sigma.s() {
        return Err(AutoError::DegreeMismatch { got: projected.length(), want: sigma.s() });
    }
    let rows = projected
        .generators()
        .iter()
        .map(|g| {
            let mut row = vec![0u8; sigma.degree()];
            for (cycle, &v) in sigma.cycles().iter().zip(g) {
                for &i in cycle {
                    row[i] = v;
                }
            }
            row
        })
        .collect();
    Ok(LinearCode::new(projected.field(), sigma.degree(), rows)?)
}

/// Image of the cycle-sum map `psi(v) = (sum over Ω_1, ..., sum over Ω_s)`.
pub fn psi_image(code: &LinearCode, sigma: &CycleAutomorphism) -> Result<LinearCode, AutoError> {
    require_automorphism(code, sigma)?;
    let field = code.field();
    let rows = code
        .generators()
        .iter()
        .map(|g| {
            sigma
                .cycles()
                .iter()
                .map(|cy| cy.iter().fold(0u8, |acc, &i| field.add(acc, g[i])))
                .collect()
        })
        .collect();
    Ok(LinearCode::new(field, sigma.s(), rows)?)
}

/// Check `C = F ⊕ E` with sigma-invariance and mutual orthogonality;
/// requires `gcd(m, q) = 1`.
pub fn check_direct_sum(
    code: &LinearCode,
    sigma: &CycleAutomorphism,
    ip: InnerProduct,
) -> Result<CheckReport, AutoError> {
    require_automorphism(code, sigma)?;
    let m = sigma.order();
    let q = code.field().q();
    let g = gcd(m, q as usize);
    if g != 1 {
        return Err(AutoError::GcdPrecondition { m, q, gcd: g });
    }
    let f = fixed_subcode(code, sigma)?;
    let e = e_subcode(code, sigma)?;
    let mut clauses = Vec::new();

    let inter = f.intersect(&e)?;
    clauses.push(
        if inter.dimension() == 0 {
            Clause::ok("F ∩ E = 0")
        } else {
            Clause::fail("F ∩ E = 0", inter.generators().first().cloned())
        }
        .with_note(format!("dim F = {}, dim E = {}", f.dimension(), e.dimension())),
    );

    let sum = f.sum_codes(&e)?;
    clauses.push(if sum.row_space_eq(code) {
        Clause::ok("F + E = C").with_note(format!("dim C = {}", code.dimension()))
    } else {
        let witness =
            code.generators().iter().find(|g| !sum.contains(g).unwrap_or(false)).cloned();
        Clause::fail("F + E = C", witness)
    });

    for (name, part) in [("F sigma-invariant", &f), ("E sigma-invariant", &e)] {
        let bad = part
            .generators()
            .iter()
            .map(|g| sigma.apply(g).expect("degree checked"))
            .find(|w| !part.contains(w).unwrap_or(false));
        clauses.push(match bad {
            None => Clause::ok(name),
            Some(w) => Clause::fail(name, Some(w)),
        });
    }

    let mut orth = Clause::ok(format!("F ⊥ E ({ip})"));
    'outer: for u in f.generators() {
        for v in e.generators() {
            if LinearCode::inner(code.field(), u, v, ip)? != 0 {
                orth = Clause::fail(format!("F ⊥ E ({ip})"), Some(u.clone()));
                break 'outer;
            }
        }
    }
    clauses.push(orth);

    Ok(CheckReport { check: "direct sum decomposition".into(), clauses })
}

/// Check that whichever of SO/SD/LCD holds for `C` also holds for `C_π`;
/// requires all cycle lengths congruent mod p to a common `l ≠ 0`.
pub fn check_pi_inheritance(
    code: &LinearCode,
    sigma: &CycleAutomorphism,
    ip: InnerProduct,
) -> Result<CheckReport, AutoError> {
    require_automorphism(code, sigma)?;
    let p = code.field().p() as usize;
    let lengths = sigma.cycle_lengths();
    let l = lengths[0] % p;
    if l == 0 || lengths.iter().any(|&x| x % p != l) {
        return Err(AutoError::LengthHypothesis(format!(
            "cycle lengths {lengths:?} are not all congruent to a common l ≠ 0 mod {p}"
        )));
    }
    let fixed = fixed_subcode(code, sigma)?;
    let cpi = pi_project(&fixed, sigma)?;
    let mut clauses = Vec::new();
    type Predicate = fn(&LinearCode, InnerProduct) -> Result<bool, CodeError>;
    let preds: [(&str, Predicate); 3] = [
        ("self-orthogonal", LinearCode::is_self_orthogonal),
        ("self-dual", LinearCode::is_self_dual),
        ("LCD", LinearCode::is_lcd),
    ];
    for (name, pred) in preds {
        let on_c = pred(code, ip)?;
        let on_cpi = pred(&cpi, ip)?;
        let clause_name = format!("{name} transfers to C_pi");
        let note = format!("C: {on_c}, C_pi: {on_cpi}");
        clauses.push(if !on_c || on_cpi {
            Clause::ok(clause_name).with_note(note)
        } else {
            Clause::fail(clause_name, None).with_note(note)
        });
    }
    Ok(CheckReport { check: "projection inheritance".into(), clauses })
}

/// Check `F ⊆ E` and `F` self-orthogonal; requires `p | l_i` for all cycles.
pub fn check_fixed_inside_e(
    code: &LinearCode,
    sigma: &CycleAutomorphism,
    ip: InnerProduct,
) -> Result<CheckReport, AutoError> {
    require_automorphism(code, sigma)?;
    let p = code.field().p() as usize;
    let lengths = sigma.cycle_lengths();
    if lengths.iter().any(|&l| l % p != 0) {
        return Err(AutoError::LengthHypothesis(format!(
            "cycle lengths {lengths:?} are not all divisible by p = {p}"
        )));
    }
    let f = fixed_subcode(code, sigma)?;
    let e = e_subcode(code, sigma)?;
    let mut clauses = Vec::new();
    let missing = f.generators().iter().find(|g| !e.contains(g).unwrap_or(false));
    clauses.push(match missing {
        None => Clause::ok("F ⊆ E").with_note(format!("dim F = {}", f.dimension())),
        Some(g) => Clause::fail("F ⊆ E", Some(g.clone())),
    });
    clauses.push(if f.is_self_orthogonal(ip)? {
        Clause::ok(format!("F self-orthogonal ({ip})"))
    } else {
        Clause::fail(format!("F self-orthogonal ({ip})"), None)
    });
    Ok(CheckReport { check: "fixed subcode inside even-sum subcode".into(), clauses })
}

/// For a self-orthogonal quasi-cyclic code: `psi(C)` is self-orthogonal and
/// `C_π ⊆ psi(C)^⊥`, with equality when `C` is self-dual.
pub fn check_psi_theorem(
    code: &LinearCode,
    sigma: &CycleAutomorphism,
    ip: InnerProduct,
) -> Result<CheckReport, AutoError> {
    require_automorphism(code, sigma)?;
    let m = sigma.order();
    if sigma.cycle_lengths().iter().any(|&l| l != m) {
        return Err(AutoError::NotQuasiCyclic);
    }
    if !code.is_self_orthogonal(ip)? {
        return Err(AutoError::NotSelfOrthogonal);
    }
    let psi = psi_image(code, sigma)?;
    let cpi = pi_project(&fixed_subcode(code, sigma)?, sigma)?;
    let psi_dual = psi.dual(ip)?;
    let mut clauses = Vec::new();
    clauses.push(if psi.is_self_orthogonal(ip)? {
        Clause::ok("psi(C) self-orthogonal")
            .with_note(format!("dim psi(C) = {}", psi.dimension()))
    } else {
        Clause::fail("psi(C) self-orthogonal", None)
    });
    let outside = cpi.generators().iter().find(|g| !psi_dual.contains(g).unwrap_or(false));
    clauses.push(match outside {
        None => Clause::ok("C_pi ⊆ psi(C)^⊥"),
        Some(g) => Clause::fail("C_pi ⊆ psi(C)^⊥", Some(g.clone())),
    });
    if code.is_self_dual(ip)? {
        clauses.push(if cpi.row_space_eq(&psi_dual) {
            Clause::ok("C_pi = psi(C)^⊥ (self-dual case)")
        } else {
            Clause::fail("C_pi = psi(C)^⊥ (self-dual case)", None)
        });
    }
    Ok(CheckReport { check: "cycle-sum map".into(), clauses })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }
    fn code(field: &Field, rows: &[&[u8]]) -> LinearCode {
        let n = rows.first().map_or(0, |r| r.len());
        LinearCode::new(field, n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn parse_and_render() {
        let s = CycleAutomorphism::parse(
            "(1..15)(16,17,18,19,20,21,22,23,24,25,26,27,28,29,30)(31)",
            32,
        )
        .unwrap();
        assert_eq!(s.cycle_lengths(), vec![15, 15, 1, 1]); // 32 inferred
        assert_eq!(s.order(), 15);
        assert_eq!(s.shape(), Some((15, 2, 2)));
        assert_eq!(s.to_text(), "(1..15)(16..30)(31)(32)");
        let back = CycleAutomorphism::parse(&s.to_text(), 32).unwrap();
        assert_eq!(back, s);

        assert!(CycleAutomorphism::parse("(1,1)", 4).is_err());
        assert!(CycleAutomorphism::parse("(0,1)", 4).is_err());
        assert!(CycleAutomorphism::parse("(1,9)", 4).is_err());
        assert!(CycleAutomorphism::parse("1,2", 4).is_err());
    }

    #[test]
    fn cycle_rotation_is_canonical() {
        let a = CycleAutomorphism::parse("(2,3,1)", 3).unwrap();
        let b = CycleAutomorphism::parse("(1,2,3)", 3).unwrap();
        assert_eq!(a, b);
        // apply moves coordinate values forward along the cycle
        assert_eq!(a.apply(&[1, 2, 3]).unwrap(), vec![3, 1, 2]);
    }

    #[test]
    fn shape_detection() {
        let id = CycleAutomorphism::identity(5);
        assert_eq!(id.shape(), Some((1, 5, 0)));
        let mixed = CycleAutomorphism::parse("(1,2)(3,4,5)", 5).unwrap();
        assert_eq!(mixed.shape(), None);
        assert!(mixed.aqc_split().is_none());
        let qc = CycleAutomorphism::parse("(1,2,3)(4,5,6)", 6).unwrap();
        assert_eq!(qc.shape(), Some((3, 2, 0)));
    }

    #[test]
    fn automorphism_detection() {
        let f = f2();
        let c = code(&f, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert!(is_automorphism(&c, &CycleAutomorphism::identity(4)).unwrap());
        let swap = CycleAutomorphism::parse("(1,3)(2,4)", 4).unwrap();
        assert!(is_automorphism(&c, &swap).unwrap());
        let t = CycleAutomorphism::parse("(1,2)", 4).unwrap();
        assert!(!is_automorphism(&c, &t).unwrap());
        let short = CycleAutomorphism::identity(3);
        assert!(matches!(is_automorphism(&c, &short), Err(AutoError::DegreeMismatch { .. })));
    }

    #[test]
    fn fixed_and_e_subcodes() {
        let f = f2();
        // repetition code is fixed by any permutation
        let rep = code(&f, &[&[1, 1, 1, 1, 1]]);
        let s = CycleAutomorphism::parse("(1..5)", 5).unwrap();
        let fs = fixed_subcode(&rep, &s).unwrap();
        assert!(fs.row_space_eq(&rep));
        // cycle sum of 1^5 is 5 = 1 != 0 over F_2
        let es = e_subcode(&rep, &s).unwrap();
        assert_eq!(es.dimension(), 0);

        // identity: F = C, E = 0
        let c = code(&f, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let id = CycleAutomorphism::identity(4);
        assert!(fixed_subcode(&c, &id).unwrap().row_space_eq(&c));
        assert_eq!(e_subcode(&c, &id).unwrap().dimension(), 0);

        // a non-automorphism is rejected
        let t = CycleAutomorphism::parse("(1,2)", 4).unwrap();
        assert!(matches!(fixed_subcode(&c, &t), Err(AutoError::NotAutomorphism { .. })));
    }

    #[test]
    fn pi_and_psi_basics() {
        let f = f2();
        let c = code(&f, &[&[1, 1, 0, 0, 1], &[0, 0, 1, 1, 0]]);
        let s = CycleAutomorphism::parse("(1,2)(3,4)(5)", 5).unwrap();
        assert!(is_automorphism(&c, &s).unwrap());
        let fixed = fixed_subcode(&c, &s).unwrap();
        let cpi = pi_project(&fixed, &s).unwrap();
        assert_eq!(cpi.length(), 3);
        assert_eq!(cpi.dimension(), fixed.dimension());
        let lifted = pi_lift(&cpi, &s).unwrap();
        assert!(lifted.row_space_eq(&fixed));

        // psi with identity sigma is the identity map
        let id = CycleAutomorphism::identity(5);
        assert!(psi_image(&c, &id).unwrap().row_space_eq(&c));

        // non-constant block rejected
        let bad = code(&f, &[&[1, 0, 0, 0, 0]]);
        assert!(matches!(pi_project(&bad, &s), Err(AutoError::NonConstantBlock { .. })));
    }

    #[test]
    fn direct_sum_check_and_refusal() {
        let f = f2();
        // sigma-closed code, m = 3 coprime to 2
        let c = code(&f, &[&[1, 1, 0, 1, 1, 0], &[0, 1, 1, 0, 1, 1], &[1, 1, 1, 0, 0, 0]]);
        let s = CycleAutomorphism::parse("(1,2,3)(4,5,6)", 6).unwrap();
        assert!(is_automorphism(&c, &s).unwrap());
        let report = check_direct_sum(&c, &s, InnerProduct::Euclidean).unwrap();
        assert!(report.passed(), "{report}");

        // gcd(2, 2) = 2: refusal
        let c2 = code(&f, &[&[1, 1]]);
        let s2 = CycleAutomorphism::parse("(1,2)", 2).unwrap();
        assert!(matches!(
            check_direct_sum(&c2, &s2, InnerProduct::Euclidean),
            Err(AutoError::GcdPrecondition { gcd: 2, .. })
        ));
    }

    #[test]
    fn fixed_inside_e_trivial_case() {
        let f = f2();
        let c = code(&f, &[&[1, 1]]);
        let s = CycleAutomorphism::parse("(1,2)", 2).unwrap();
        let report = check_fixed_inside_e(&c, &s, InnerProduct::Euclidean).unwrap();
        assert!(report.passed(), "{report}");
        // hypothesis refusal when a cycle length is odd
        let c3 = code(&f, &[&[1, 1, 1]]);
        let s3 = CycleAutomorphism::parse("(1,2)(3)", 3).unwrap();
        assert!(matches!(
            check_fixed_inside_e(&c3, &s3, InnerProduct::Euclidean),
            Err(AutoError::LengthHypothesis(_))
        ));
    }

    #[test]
    fn psi_theorem_identity_sigma() {
        let f = f2();
        let sd = code(&f, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let id = CycleAutomorphism::identity(4);
        let report = check_psi_theorem(&sd, &id, InnerProduct::Euclidean).unwrap();
        assert!(report.passed(), "{report}");
        // refusal on a non-self-orthogonal code
        let c = code(&f, &[&[1, 0, 0, 0]]);
        assert!(matches!(
            check_psi_theorem(&c, &id, InnerProduct::Euclidean),
            Err(AutoError::NotSelfOrthogonal)
        ));
    }

    #[test]
    fn apply_preserves_weight_and_inner_products() {
        let f = Field::new(2, 2, None).unwrap();
        let s = CycleAutomorphism::parse("(1,4,2)(3,5)", 5).unwrap();
        let u = [1u8, 2, 0, 3, 1];
        let v = [0u8, 1, 2, 2, 3];
        let us = s.apply(&u).unwrap();
        let vs = s.apply(&v).unwrap();
        assert_eq!(
            u.iter().filter(|&&x| x != 0).count(),
            us.iter().filter(|&&x| x != 0).count()
        );
        for ip in [InnerProduct::Euclidean, InnerProduct::Hermitian] {
            assert_eq!(
                LinearCode::inner(&f, &u, &v, ip).unwrap(),
                LinearCode::inner(&f, &us, &vs, ip).unwrap()
            );
        }
    }

    #[test]
    fn e_star_shortens_and_renumbers() {
        let f = f2();
        // orbit closure of (1,1,0|1,0) under the 3-cycle on the first block
        let c = code(&f, &[&[1, 1, 0, 1, 0], &[0, 1, 1, 1, 0], &[1, 0, 1, 1, 0]]);
        let s = CycleAutomorphism::parse("(1,2,3)", 5).unwrap();
        assert!(is_automorphism(&c, &s).unwrap());
        let (estar, induced) = e_star(&c, &s).unwrap();
        assert_eq!(estar.length(), 3);
        assert_eq!(induced.cycle_lengths(), vec![3]);
        for g in estar.generators() {
            assert_eq!(g.iter().fold(0u8, |a, &b| f.add(a, b)), 0);
        }
    }
}
