//! The block transform between quasi-cyclic codes of index `s` over `F_q`
//! and codes of length `s` over `R_m = F_q[x]/(x^m - 1)`; decomposition into
//! constituent codes on the ideals of `R_m`; synthesis of quasi-cyclic and
//! almost quasi-cyclic codes from constituent data; and decomposition-based
//! self-dual / self-orthogonal / LCD checks.
//!
//! All constituent-level duality is computed inside `R_m` with the bar form
//! `B(u, v) = sum_i u_i * bar(v_i)`, pulled back to `F_q^{ms}`: `B(u, v) = 0`
//! exactly when the expansion of `u` is Euclidean-orthogonal to every
//! x-multiple of the expansion of `v`. Duals inside an ideal power are then
//! plain Euclidean duals intersected with the expanded ideal power, so the
//! same formulas serve both the semisimple and the chain-ring case.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::autodecomp::{self, require_automorphism, AutoError, CheckReport, Clause, CycleAutomorphism};
use crate::cycring::{
    factor_xm1, ideal_basis, CyclicRing, FactorSet, IdealTag, RingElement, RingError, TagKind,
};
use crate::galois::Field;
use crate::lincode::{CodeError, InnerProduct, LinearCode};

#[derive(Debug, Error)]
pub enum ConstituentError {
    #[error("requires a quasi-cyclic action: every cycle must have length equal to the order")]
    NotQuasiCyclic,
    #[error("requires cycles of one length plus fixed points")]
    NotAqcAction,
    #[error("factor set is for a different ring (field or m mismatch)")]
    FactorSetMismatch,
    #[error("module rows live over a different ring")]
    RingMismatch,
    #[error("tag {tag}, row {row}: has {got} entries, expected {want}")]
    WrongRowLength { tag: String, row: usize, got: usize, want: usize },
    #[error("tag {tag}, row {row}: an entry is not stabilized by the tag idempotent")]
    EntryOutsideIdeal { tag: String, row: usize },
    #[error("unknown ideal tag {0:?} for this factorization")]
    UnknownTag(String),
    #[error("constituents of the even-sum part must exclude G_0")]
    G0NotAllowed,
    #[error("inconsistent construction data: {0}")]
    ShapeMismatch(String),
    #[error(
        "order {m} shares a factor with q = {q}; the self-orthogonal/LCD constituent \
         criteria require gcd(m, q) = 1 (only the self-dual chain-ring criterion applies)"
    )]
    ChainRingRefusal { m: usize, q: u32 },
    #[error("spec file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Auto(#[from] AutoError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A code of length `s` over `R_m`, the image of a quasi-cyclic code.
///
/// `layout[j*m + i]` is the `F_q` coordinate carrying block `j`, position
/// `i`, so expanding and rebuilding restores the original coordinate order.
#[derive(Clone, Debug)]
pub struct ModuleCode {
    ring: CyclicRing,
    s: usize,
    rows: Vec<Vec<RingElement>>,
    layout: Vec<usize>,
}

impl ModuleCode {
    /// Module rows with the identity coordinate layout.
    pub fn from_rows(
        ring: &CyclicRing,
        s: usize,
        rows: Vec<Vec<RingElement>>,
    ) -> Result<ModuleCode, ConstituentError> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != s {
                return Err(ConstituentError::WrongRowLength {
                    tag: "-".into(),
                    row: i,
                    got: row.len(),
                    want: s,
                });
            }
            for e in row {
                if e.field() != ring.field() || e.m() != ring.m() {
                    return Err(ConstituentError::RingMismatch);
                }
            }
        }
        let layout = (0..ring.m() * s).collect();
        Ok(ModuleCode { ring: ring.clone(), s, rows, layout })
    }

    pub fn ring(&self) -> &CyclicRing {
        &self.ring
    }
    pub fn index(&self) -> usize {
        self.s
    }
    pub fn rows(&self) -> &[Vec<RingElement>] {
        &self.rows
    }

    fn flatten(&self, row: &[RingElement]) -> Vec<u8> {
        let m = self.ring.m();
        let mut v = vec![0u8; m * self.s];
        for (j, entry) in row.iter().enumerate() {
            for (i, &c) in entry.coeffs().iter().enumerate() {
                v[self.layout[j * m + i]] = c;
            }
        }
        v
    }

    /// Expand to the underlying `F_q` code (closing rows under
    /// multiplication by x).
    pub fn expand(&self) -> LinearCode {
        let m = self.ring.m();
        let mut rows = Vec::with_capacity(self.rows.len() * m);
        for row in &self.rows {
            let mut cur = row.clone();
            for _ in 0..m {
                rows.push(self.flatten(&cur));
                cur = cur.iter().map(|e| self.ring.x_times(e)).collect();
            }
        }
        LinearCode::new(self.ring.field(), m * self.s, rows)
            .expect("expanded rows are well-formed")
    }
}

/// The block transform: split each generator along the cycles of `sigma`
/// into polynomial components. `sigma` must act with `s` cycles all of
/// length `m`, and the code must be invariant.
pub fn phi(code: &LinearCode, sigma: &CycleAutomorphism) -> Result<ModuleCode, ConstituentError> {
    let m = sigma.order();
    if sigma.cycle_lengths().iter().any(|&l| l != m) {
        return Err(ConstituentError::NotQuasiCyclic);
    }
    require_automorphism(code, sigma)?;
    let ring = CyclicRing::new(code.field(), m)?;
    let s = sigma.s();
    let mut layout = vec![0usize; m * s];
    for (j, cycle) in sigma.cycles().iter().enumerate() {
        for (i, &coord) in cycle.iter().enumerate() {
            layout[j * m + i] = coord;
        }
    }
    let rows = code
        .generators()
        .iter()
        .map(|g| {
            sigma
                .cycles()
                .iter()
                .map(|cycle| {
                    let coeffs: Vec<u8> = cycle.iter().map(|&i| g[i]).collect();
                    ring.element(&coeffs).expect("cycle length equals m")
                })
                .collect()
        })
        .collect();
    Ok(ModuleCode { ring, s, rows, layout })
}

/// Inverse transform: the `F_q` code generated by all x-multiples of the
/// module rows, in the recorded coordinate layout.
pub fn phi_inv(module: &ModuleCode) -> LinearCode {
    module.expand()
}

/// One constituent: the part of a module code living on one ideal.
#[derive(Clone, Debug)]
pub struct Constituent {
    pub tag: IdealTag,
    pub module_rows: Vec<Vec<RingElement>>,
    /// `F_q` expansion (length `m*s`), used for all rank computations.
    pub fq: LinearCode,
}

/// The full decomposition of a module code across the ideal tags.
#[derive(Clone, Debug)]
pub struct ConstituentSet {
    ring: CyclicRing,
    s: usize,
    layout: Vec<usize>,
    items: Vec<Constituent>,
}

impl ConstituentSet {
    pub fn items(&self) -> &[Constituent] {
        &self.items
    }
    pub fn get(&self, name: &str) -> Option<&Constituent> {
        self.items.iter().find(|c| c.tag.name() == name)
    }

    /// Sum of the constituents as an `F_q` code; equals the expansion of the
    /// decomposed module code.
    pub fn recombine(&self) -> LinearCode {
        let n = self.ring.m() * self.s;
        let mut acc = LinearCode::zero(self.ring.field(), n);
        for item in &self.items {
            acc = acc.sum_codes(&item.fq).expect("same ambient space");
        }
        acc
    }

    /// Expansion of the full ideal power `T^s` for one tag.
    pub fn ideal_power(&self, tag: &IdealTag) -> LinearCode {
        ideal_power_code(&self.ring, tag, self.s, &self.layout)
    }
}

fn ideal_power_code(ring: &CyclicRing, tag: &IdealTag, s: usize, layout: &[usize]) -> LinearCode {
    let m = ring.m();
    let basis = ideal_basis(ring, tag);
    let mut rows = Vec::with_capacity(s * basis.len());
    for pos in 0..s {
        for b in &basis {
            let mut v = vec![0u8; m * s];
            for (i, &c) in b.coeffs().iter().enumerate() {
                v[layout[pos * m + i]] = c;
            }
            rows.push(v);
        }
    }
    LinearCode::new(ring.field(), m * s, rows).expect("ideal rows are well-formed")
}

/// Project every generator row onto each ideal by multiplying with its
/// idempotent.
pub fn decompose(module: &ModuleCode, fs: &FactorSet) -> Result<ConstituentSet, ConstituentError> {
    if fs.field() != module.ring.field() || fs.m() != module.ring.m() {
        return Err(ConstituentError::FactorSetMismatch);
    }
    let ring = &module.ring;
    let items = fs
        .ideal_tags()
        .into_iter()
        .map(|tag| {
            let scaled: Vec<Vec<RingElement>> = module
                .rows
                .iter()
                .map(|row| row.iter().map(|e| ring.mul(e, &tag.idempotent)).collect())
                .collect();
            let part = ModuleCode {
                ring: ring.clone(),
                s: module.s,
                rows: scaled.clone(),
                layout: module.layout.clone(),
            };
            Constituent { tag, module_rows: scaled, fq: part.expand() }
        })
        .collect();
    Ok(ConstituentSet { ring: ring.clone(), s: module.s, layout: module.layout.clone(), items })
}

/// Build a quasi-cyclic code of index `s` from generator rows per ideal tag.
///
/// Every supplied entry must lie in its tag's ideal (checked through
/// idempotent stabilization).
pub fn build_qc(
    field: &Field,
    m: usize,
    s: usize,
    tag_rows: &[(String, Vec<Vec<RingElement>>)],
) -> Result<LinearCode, ConstituentError> {
    let fs = factor_xm1(field, m)?;
    let ring = CyclicRing::new(field, m)?;
    let tags: BTreeMap<String, IdealTag> =
        fs.ideal_tags().into_iter().map(|t| (t.name(), t)).collect();
    let mut rows = Vec::new();
    for (name, trows) in tag_rows {
        let tag = tags.get(name).ok_or_else(|| ConstituentError::UnknownTag(name.clone()))?;
        for (r, row) in trows.iter().enumerate() {
            if row.len() != s {
                return Err(ConstituentError::WrongRowLength {
                    tag: name.clone(),
                    row: r,
                    got: row.len(),
                    want: s,
                });
            }
            for entry in row {
                if entry.field() != field || entry.m() != m {
                    return Err(ConstituentError::RingMismatch);
                }
                if ring.mul(entry, &tag.idempotent) != *entry {
                    return Err(ConstituentError::EntryOutsideIdeal { tag: name.clone(), row: r });
                }
            }
            rows.push(row.clone());
        }
    }
    let module = ModuleCode::from_rows(&ring, s, rows)?;
    Ok(module.expand())
}

/// Construction data for a code with an automorphism of type `m-(c,f)`:
/// the projected code `C_π` of length `c + f` plus constituent generators
/// for the even-sum part (tags other than `G_0`).
#[derive(Clone, Debug)]
pub struct ConstructionSpec {
    pub field: Field,
    pub m: usize,
    pub c: usize,
    pub f: usize,
    pub pi_rows: Vec<Vec<u8>>,
    pub tags: Vec<(String, Vec<Vec<RingElement>>)>,
}

impl ConstructionSpec {
    pub fn length(&self) -> usize {
        self.c * self.m + self.f
    }

    /// The canonical automorphism: `c` consecutive `m`-cycles, then `f`
    /// fixed points.
    pub fn canonical_sigma(&self) -> CycleAutomorphism {
        let cycles = (0..self.c).map(|j| (j * self.m..(j + 1) * self.m).collect()).collect();
        CycleAutomorphism::new(cycles, self.length()).expect("consecutive cycles are disjoint")
    }

    pub fn build(&self) -> Result<LinearCode, ConstituentError> {
        build_aqc(self)
    }
}

/// Build an almost quasi-cyclic code from a [`ConstructionSpec`]: the
/// fixed part lifts `C_π`, the even-sum part expands the constituents and
/// is padded with `f` zero coordinates. With `f = 0` this is [`build_qc`].
pub fn build_aqc(spec: &ConstructionSpec) -> Result<LinearCode, ConstituentError> {
    let n = spec.length();
    if spec.c == 0 && spec.f == 0 {
        return Err(ConstituentError::ShapeMismatch("c and f are both zero".into()));
    }
    if spec.f == 0 {
        if !spec.pi_rows.is_empty() {
            return Err(ConstituentError::ShapeMismatch(
                "a quasi-cyclic spec (f = 0) carries its G_0 constituent instead of [pi] rows"
                    .into(),
            ));
        }
        return build_qc(&spec.field, spec.m, spec.c, &spec.tags);
    }
    if spec.tags.iter().any(|(name, _)| name == "G_0") {
        return Err(ConstituentError::G0NotAllowed);
    }
    for (i, row) in spec.pi_rows.iter().enumerate() {
        if row.len() != spec.c + spec.f {
            return Err(ConstituentError::ShapeMismatch(format!(
                "pi row {i} has {} entries, expected c + f = {}",
                row.len(),
                spec.c + spec.f
            )));
        }
    }
    let sigma = spec.canonical_sigma();
    let pi_code = LinearCode::new(&spec.field, spec.c + spec.f, spec.pi_rows.clone())?;
    let fixed_part = autodecomp::pi_lift(&pi_code, &sigma)?;

    let e_part = build_qc(&spec.field, spec.m, spec.c, &spec.tags)?;
    let padded: Vec<Vec<u8>> = e_part
        .generators()
        .iter()
        .map(|g| {
            let mut row = g.clone();
            row.resize(n, 0);
            row
        })
        .collect();
    let e_padded = LinearCode::new(&spec.field, n, padded)?;
    Ok(fixed_part.sum_codes(&e_padded)?)
}

/// Verdict of a decomposition-route check next to the direct matrix check.
#[derive(Clone, Debug)]
pub struct RouteReport {
    pub check: String,
    pub clauses: Vec<Clause>,
    pub constituent_verdict: bool,
    pub direct_verdict: bool,
}

impl RouteReport {
    pub fn routes_agree(&self) -> bool {
        self.constituent_verdict == self.direct_verdict
    }
}

impl fmt::Display for RouteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.check)?;
        for c in &self.clauses {
            write!(f, "  [{}] {}", if c.pass { "pass" } else { "fail" }, c.name)?;
            if let Some(n) = &c.note {
                write!(f, " ({n})")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "  constituent verdict: {}", self.constituent_verdict)?;
        writeln!(f, "  direct verdict:      {}", self.direct_verdict)?;
        writeln!(f, "  routes {}", if self.routes_agree() { "AGREE" } else { "DISAGREE (fault)" })?;
        Ok(())
    }
}

/// Dual of `x` under the bar pairing, inside the expanded ideal power.
fn dual_inside(x: &LinearCode, ideal_power: &LinearCode) -> Result<LinearCode, ConstituentError> {
    Ok(x.dual(InnerProduct::Euclidean)?.intersect(ideal_power)?)
}

/// Self-dual check through the constituent decomposition; requires a purely
/// quasi-cyclic action (works for any order, including `m = p^a m'`).
///
/// The verdict is compared against the direct Euclidean check and any
/// disagreement is reported as a fault.
pub fn check_sd_by_constituents(
    code: &LinearCode,
    sigma: &CycleAutomorphism,
    fs: &FactorSet,
) -> Result<RouteReport, ConstituentError> {
    let module = phi(code, sigma)?;
    if fs.field() != code.field() || fs.m() != sigma.order() {
        return Err(ConstituentError::FactorSetMismatch);
    }
    let set = decompose(&module, fs)?;
    let mut clauses = Vec::new();
    let mut verdict = true;

    let mut primed: BTreeMap<usize, &Constituent> = BTreeMap::new();
    for item in set.items() {
        match item.tag.kind {
            TagKind::SelfReciprocal => {
                let ideal = set.ideal_power(&item.tag);
                let dual = dual_inside(&item.fq, &ideal)?;
                let pass = dual.row_space_eq(&item.fq);
                verdict &= pass;
                let name = format!("C over {} self-dual (bar form)", item.tag.name());
                let note = format!("dim {} of {}", item.fq.dimension(), ideal.dimension());
                clauses.push(if pass {
                    Clause::ok(name).with_note(note)
                } else {
                    Clause::fail(name, None).with_note(note)
                });
            }
            TagKind::Primed => {
                primed.insert(item.tag.index, item);
            }
            TagKind::DoublePrimed => {
                let partner =
                    primed.get(&item.tag.index).expect("tags come primed before double-primed");
                let ideal = set.ideal_power(&item.tag);
                let dual = dual_inside(&partner.fq, &ideal)?;
                let pass = dual.row_space_eq(&item.fq);
                verdict &= pass;
                let name = format!(
                    "C over H''_{} is the dual of C over H'_{} (cross pairing)",
                    item.tag.index, item.tag.index
                );
                clauses.push(if pass { Clause::ok(name) } else { Clause::fail(name, None) });
            }
        }
    }

    let direct = code.is_self_dual(InnerProduct::Euclidean)?;
    Ok(RouteReport {
        check: "self-dual by constituents".into(),
        clauses,
        constituent_verdict: verdict,
        direct_verdict: direct,
    })
}

/// Which one-sided predicate a constituent check evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstituentPredicate {
    SelfOrthogonal,
    Lcd,
}

impl ConstituentPredicate {
    fn name(self) -> &'static str {
        match self {
            ConstituentPredicate::SelfOrthogonal => "self-orthogonal",
            ConstituentPredicate::Lcd => "LCD",
        }
    }
    fn direct(self, code: &LinearCode) -> Result<bool, CodeError> {
        match self {
            ConstituentPredicate::SelfOrthogonal => code.is_self_orthogonal(InnerProduct::Euclidean),
            ConstituentPredicate::Lcd => code.is_lcd(InnerProduct::Euclidean),
        }
    }
}

pub fn check_so_by_constituents(
    code: &LinearCode,
    sigma: &CycleAutomorphism,
    fs: &FactorSet,
) -> Result<RouteReport, ConstituentError> {
    check_one_sided(code, sigma, fs, ConstituentPredicate::SelfOrthogonal)
}

pub fn check_lcd_by_constituents(
    code: &LinearCode,
    sigma: &CycleAutomorphism,
    fs: &FactorSet,
) -> Result<RouteReport, ConstituentError> {
    check_one_sided(code, sigma, fs, ConstituentPredicate::Lcd)
}

/// Clauses shared by the quasi-cyclic and almost quasi-cyclic forms: one per
/// self-reciprocal tag, containment (SO) or two trivial-hull clauses (LCD)
/// per reciprocal pair.
fn tag_clauses(
    set: &ConstituentSet,
    pred: ConstituentPredicate,
    skip_g0: bool,
    clauses: &mut Vec<Clause>,
    verdict: &mut bool,
) -> Result<(), ConstituentError> {
    let mut primed: BTreeMap<usize, &Constituent> = BTreeMap::new();
    for item in set.items() {
        match item.tag.kind {
            TagKind::SelfReciprocal => {
                if skip_g0 && item.tag.index == 0 {
                    continue;
                }
                let pass = match pred {
                    ConstituentPredicate::SelfOrthogonal => {
                        item.fq.is_self_orthogonal(InnerProduct::Euclidean)?
                    }
                    // the hull inside the ideal equals the Euclidean hull of
                    // the expansion, which already lies in the ideal power
                    ConstituentPredicate::Lcd => item.fq.is_lcd(InnerProduct::Euclidean)?,
                };
                *verdict &= pass;
                let name = format!("C over {} {} (bar form)", item.tag.name(), pred.name());
                clauses.push(if pass { Clause::ok(name) } else { Clause::fail(name, None) });
            }
            TagKind::Primed => {
                primed.insert(item.tag.index, item);
            }
            TagKind::DoublePrimed => {
                let partner =
                    primed.get(&item.tag.index).expect("tags come primed before double-primed");
                let j = item.tag.index;
                match pred {
                    ConstituentPredicate::SelfOrthogonal => {
                        let dual_of_primed = partner.fq.dual(InnerProduct::Euclidean)?;
                        let pass = dual_of_primed.contains_code(&item.fq)?;
                        *verdict &= pass;
                        let name = format!("C over H''_{j} ⊆ (C over H'_{j})^⊥");
                        clauses.push(if pass { Clause::ok(name) } else { Clause::fail(name, None) });
                    }
                    ConstituentPredicate::Lcd => {
                        let d_primed = partner.fq.dual(InnerProduct::Euclidean)?;
                        let d_doubled = item.fq.dual(InnerProduct::Euclidean)?;
                        let first = item.fq.intersect(&d_primed)?.dimension() == 0;
                        let second = partner.fq.intersect(&d_doubled)?.dimension() == 0;
                        *verdict &= first && second;
                        let name1 = format!("C over H''_{j} ∩ (C over H'_{j})^⊥ = 0");
                        clauses.push(if first { Clause::ok(name1) } else { Clause::fail(name1, None) });
                        let name2 = format!("C over H'_{j} ∩ (C over H''_{j})^⊥ = 0");
                        clauses.push(if second { Clause::ok(name2) } else { Clause::fail(name2, None) });
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_one_sided(
    code: &LinearCode,
    sigma: &CycleAutomorphism,
    fs: &FactorSet,
    pred: ConstituentPredicate,
) -> Result<RouteReport, ConstituentError> {
    let (_, fixed_coords) = sigma.aqc_split().ok_or(ConstituentError::NotAqcAction)?;
    let m = sigma.order();
    let q = code.field().q();
    let p = code.field().p() as usize;
    if m.is_multiple_of(p) && m > 1 {
        return Err(ConstituentError::ChainRingRefusal { m, q });
    }
    if fs.field() != code.field() || fs.m() != m {
        return Err(ConstituentError::FactorSetMismatch);
    }
    require_automorphism(code, sigma)?;

    let mut clauses = Vec::new();
    let mut verdict = true;

    if fixed_coords.is_empty() {
        // quasi-cyclic: decompose the code itself; the G_0 clause plays the
        // role of the C_pi clause
        let set = decompose(&phi(code, sigma)?, fs)?;
        tag_clauses(&set, pred, false, &mut clauses, &mut verdict)?;
    } else {
        // almost quasi-cyclic: the sound route checks the fixed part and the
        // constituents of the shortened even-sum part
        let fixed = autodecomp::fixed_subcode(code, sigma)?;
        let pass_f = pred.direct(&fixed)?;
        verdict &= pass_f;
        let name = format!("F_sigma {}", pred.name());
        clauses.push(if pass_f {
            Clause::ok(name).with_note(format!("dim F = {}", fixed.dimension()))
        } else {
            Clause::fail(name, None)
        });

        let (estar, induced) = autodecomp::e_star(code, sigma)?;
        let set = decompose(&phi(&estar, &induced)?, fs)?;
        let g0 = set.get("G_0").expect("G_0 tag always exists");
        let g0_zero = g0.fq.dimension() == 0;
        verdict &= g0_zero;
        clauses.push(if g0_zero {
            Clause::ok("E* has zero G_0-constituent")
        } else {
            Clause::fail("E* has zero G_0-constituent", None)
        });
        tag_clauses(&set, pred, true, &mut clauses, &mut verdict)?;

        // literal C_pi clause; counted only under the length congruence
        // m ≡ 1 (mod p), flagged as informational otherwise
        let cpi = autodecomp::pi_project(&fixed, sigma)?;
        let pass_cpi = pred.direct(&cpi)?;
        let hypothesis = m % p == 1;
        if hypothesis {
            verdict &= pass_cpi;
        }
        let name = format!("C_pi {}", pred.name());
        let clause = if pass_cpi { Clause::ok(&*name) } else { Clause::fail(&*name, None) };
        clauses.push(if hypothesis {
            clause
        } else {
            clause.with_note(format!(
                "m = {m} ≢ 1 (mod {p}): congruence hypothesis fails, clause informational"
            ))
        });
    }

    let direct = pred.direct(code)?;
    Ok(RouteReport {
        check: format!("{} by constituents", pred.name()),
        clauses,
        constituent_verdict: verdict,
        direct_verdict: direct,
    })
}

/// Fold the route comparison into a [`CheckReport`] for uniform printing.
pub fn route_to_check(report: &RouteReport) -> CheckReport {
    let mut clauses = report.clauses.clone();
    let note = format!(
        "constituents: {}, direct: {}",
        report.constituent_verdict, report.direct_verdict
    );
    clauses.push(if report.routes_agree() {
        Clause::ok("decomposition verdict equals direct verdict").with_note(note)
    } else {
        Clause::fail("decomposition verdict equals direct verdict", None).with_note(note)
    });
    CheckReport { check: report.check.clone(), clauses }
}

// --- construction spec files ---

/// Parse the sectioned key-value construction format:
///
/// ```text
/// [field]
/// q = 2^1
/// [shape]
/// m = 15
/// c = 2
/// f = 2
/// [pi]
/// 1010
/// [tag G_1]
/// 0,1,1 ; 0,1,1
/// ```
pub fn parse_spec(text: &str) -> Result<ConstructionSpec, ConstituentError> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Field,
        Shape,
        Pi,
        Tag(usize),
    }
    let err = |line: usize, msg: &str| ConstituentError::Parse { line, msg: msg.to_string() };

    let mut field: Option<Field> = None;
    let mut m: Option<usize> = None;
    let mut c: Option<usize> = None;
    let mut f: usize = 0;
    let mut pi_lines: Vec<(usize, String)> = Vec::new();
    let mut tags: Vec<(String, Vec<(usize, String)>)> = Vec::new();
    let mut section = Section::None;

    for (lno, raw) in text.lines().enumerate() {
        let lno = lno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(header) = line.strip_prefix('[') {
            let header = header.strip_suffix(']').ok_or_else(|| err(lno, "missing ']'"))?;
            section = match header.trim() {
                "field" => Section::Field,
                "shape" => Section::Shape,
                "pi" => Section::Pi,
                other => {
                    let name = other
                        .strip_prefix("tag")
                        .map(str::trim)
                        .filter(|n| !n.is_empty())
                        .ok_or_else(|| err(lno, "unknown section"))?;
                    tags.push((name.to_string(), Vec::new()));
                    Section::Tag(tags.len() - 1)
                }
            };
            continue;
        }
        match section {
            Section::None => return Err(err(lno, "content before any [section]")),
            Section::Field => {
                let (key, value) =
                    line.split_once('=').ok_or_else(|| err(lno, "expected key = value"))?;
                if key.trim() != "q" {
                    return Err(err(lno, "only `q` is valid in [field]"));
                }
                field = Some(
                    Field::parse(value.trim()).map_err(|e| err(lno, &format!("bad field: {e}")))?,
                );
            }
            Section::Shape => {
                let (key, value) =
                    line.split_once('=').ok_or_else(|| err(lno, "expected key = value"))?;
                let v: usize = value.trim().parse().map_err(|_| err(lno, "bad shape value"))?;
                match key.trim() {
                    "m" => m = Some(v),
                    "c" | "s" => c = Some(v),
                    "f" => f = v,
                    _ => return Err(err(lno, "shape keys are m, c (or s), f")),
                }
            }
            Section::Pi => pi_lines.push((lno, line.to_string())),
            Section::Tag(i) => tags[i].1.push((lno, line.to_string())),
        }
    }

    let field = field.ok_or_else(|| err(0, "missing [field] section"))?;
    let m = m.ok_or_else(|| err(0, "missing m in [shape]"))?;
    let c = c.ok_or_else(|| err(0, "missing c (or s) in [shape]"))?;
    let ring = CyclicRing::new(&field, m)?;

    let pi_rows = pi_lines
        .into_iter()
        .map(|(lno, line)| parse_symbol_row(&field, &line).map_err(|msg| err(lno, &msg)))
        .collect::<Result<Vec<_>, _>>()?;

    let tags = tags
        .into_iter()
        .map(|(name, lines)| {
            let rows = lines
                .into_iter()
                .map(|(lno, line)| {
                    line.split(';')
                        .map(|cell| {
                            ring.parse_element(cell)
                                .map_err(|e| err(lno, &format!("bad polynomial: {e}")))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((name, rows))
        })
        .collect::<Result<Vec<_>, ConstituentError>>()?;

    Ok(ConstructionSpec { field, m, c, f, pi_rows, tags })
}

fn parse_symbol_row(field: &Field, line: &str) -> Result<Vec<u8>, String> {
    if field.q() <= 9 {
        line.bytes()
            .map(|b| {
                b.checked_sub(b'0')
                    .filter(|&d| (d as u32) < field.q())
                    .ok_or_else(|| format!("bad symbol {:?}", b as char))
            })
            .collect()
    } else {
        line.split(',')
            .map(|cell| {
                cell.trim()
                    .parse::<u8>()
                    .ok()
                    .filter(|&d| (d as u32) < field.q())
                    .ok_or_else(|| format!("bad symbol {cell:?}"))
            })
            .collect()
    }
}

fn write_symbol_row(field: &Field, row: &[u8]) -> String {
    if field.q() <= 9 {
        row.iter().map(|&v| (b'0' + v) as char).collect()
    } else {
        row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Canonical serialization; `parse_spec(write_spec(s))` restores `s`.
pub fn write_spec(spec: &ConstructionSpec) -> String {
    let mut out = String::new();
    out.push_str("[field]\n");
    out.push_str(&format!("q = {}\n", spec.field.to_text()));
    out.push_str("[shape]\n");
    out.push_str(&format!("m = {}\n", spec.m));
    out.push_str(&format!("c = {}\n", spec.c));
    out.push_str(&format!("f = {}\n", spec.f));
    if !spec.pi_rows.is_empty() {
        out.push_str("[pi]\n");
        for row in &spec.pi_rows {
            out.push_str(&write_symbol_row(&spec.field, row));
            out.push('\n');
        }
    }
    for (name, rows) in &spec.tags {
        out.push_str(&format!("[tag {name}]\n"));
        for row in rows {
            let cells: Vec<String> = row.iter().map(|e| e.to_text()).collect();
            out.push_str(&cells.join(" ; "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincode::DEFAULT_ENUM_CAP;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }
    fn f3() -> Field {
        Field::prime(3).unwrap()
    }
    fn code(field: &Field, rows: &[&[u8]]) -> LinearCode {
        let n = rows.first().map_or(0, |r| r.len());
        LinearCode::new(field, n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn phi_identity_reshaping_for_m1() {
        let f = f2();
        let c = code(&f, &[&[1, 0, 1], &[0, 1, 1]]);
        let sigma = CycleAutomorphism::identity(3);
        let module = phi(&c, &sigma).unwrap();
        assert_eq!(module.index(), 3);
        assert_eq!(module.ring().m(), 1);
        assert!(phi_inv(&module).row_space_eq(&c));
    }

    #[test]
    fn phi_round_trip_preserves_row_space() {
        let f = f3();
        // orbit closure under two 4-cycles
        let sigma = CycleAutomorphism::parse("(1,2,3,4)(5,6,7,8)", 8).unwrap();
        let seed = vec![1u8, 2, 0, 1, 0, 0, 2, 1];
        let mut rows = vec![seed.clone()];
        let mut cur = seed;
        for _ in 0..3 {
            cur = sigma.apply(&cur).unwrap();
            rows.push(cur.clone());
        }
        let c = LinearCode::new(&f, 8, rows).unwrap();
        let module = phi(&c, &sigma).unwrap();
        assert!(phi_inv(&module).row_space_eq(&c));
        // mixed cycle lengths are rejected
        let bad = CycleAutomorphism::parse("(1,2,3,4)(5,6)(7)(8)", 8).unwrap();
        assert!(matches!(phi(&c, &bad), Err(ConstituentError::NotQuasiCyclic)));
    }

    #[test]
    fn decompose_and_recombine() {
        let f = f2();
        let sigma = CycleAutomorphism::parse("(1..7)(8..14)", 14).unwrap();
        let seed = vec![1u8, 1, 0, 1, 0, 0, 0, 0, 1, 1, 0, 1, 0, 1];
        let mut rows = vec![seed.clone()];
        let mut cur = seed;
        for _ in 0..6 {
            cur = sigma.apply(&cur).unwrap();
            rows.push(cur.clone());
        }
        let c = LinearCode::new(&f, 14, rows).unwrap();
        let fs = factor_xm1(&f, 7).unwrap();
        let module = phi(&c, &sigma).unwrap();
        let set = decompose(&module, &fs).unwrap();
        assert!(set.recombine().row_space_eq(&c));
        let dim_sum: usize = set.items().iter().map(|i| i.fq.dimension()).sum();
        assert_eq!(dim_sum, c.dimension());
        // zero code decomposes to all-zero constituents
        let zero_mod = ModuleCode::from_rows(&CyclicRing::new(&f, 7).unwrap(), 2, vec![]).unwrap();
        let zero_set = decompose(&zero_mod, &fs).unwrap();
        assert!(zero_set.items().iter().all(|i| i.fq.dimension() == 0));
    }

    #[test]
    fn build_qc_basics() {
        let f = f2();
        // all-zero constituents give the zero code
        let z = build_qc(&f, 3, 2, &[]).unwrap();
        assert_eq!(z.dimension(), 0);
        assert_eq!(z.length(), 6);

        // full G_0 constituent = all cycle-constant vectors
        let fs = factor_xm1(&f, 3).unwrap();
        let ring = CyclicRing::new(&f, 3).unwrap();
        let e0 = fs.ideal_tags()[0].idempotent.clone();
        let rows = vec![vec![e0.clone(), ring.zero()], vec![ring.zero(), e0.clone()]];
        let built = build_qc(&f, 3, 2, &[("G_0".into(), rows)]).unwrap();
        let expected = code(&f, &[&[1, 1, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 1]]);
        assert!(built.row_space_eq(&expected));

        // quasi-cyclicity: shifting inside each block maps the code to itself
        let sigma = CycleAutomorphism::parse("(1,2,3)(4,5,6)", 6).unwrap();
        assert!(autodecomp::is_automorphism(&built, &sigma).unwrap());

        // entries outside the ideal are rejected with tag and row
        let x = ring.monomial(1, 1);
        let bad = build_qc(&f, 3, 2, &[("G_0".into(), vec![vec![x, ring.zero()]])]);
        match bad {
            Err(ConstituentError::EntryOutsideIdeal { tag, row }) => {
                assert_eq!(tag, "G_0");
                assert_eq!(row, 0);
            }
            other => panic!("expected ideal rejection, got {other:?}"),
        }
        assert!(matches!(
            build_qc(&f, 3, 2, &[("G_9".into(), vec![])]),
            Err(ConstituentError::UnknownTag(_))
        ));
    }

    #[test]
    fn aqc_f0_delegates_and_pi_checked() {
        let f = f2();
        let spec = ConstructionSpec {
            field: f.clone(),
            m: 3,
            c: 2,
            f: 0,
            pi_rows: vec![],
            tags: vec![],
        };
        let built = build_aqc(&spec).unwrap();
        assert_eq!(built.length(), 6);
        assert_eq!(built.dimension(), 0);

        let bad = ConstructionSpec {
            field: f.clone(),
            m: 3,
            c: 2,
            f: 1,
            pi_rows: vec![vec![1, 1]],
            tags: vec![],
        };
        assert!(matches!(build_aqc(&bad), Err(ConstituentError::ShapeMismatch(_))));

        let g0 = ConstructionSpec {
            field: f.clone(),
            m: 3,
            c: 1,
            f: 1,
            pi_rows: vec![],
            tags: vec![("G_0".into(), vec![])],
        };
        assert!(matches!(build_aqc(&g0), Err(ConstituentError::G0NotAllowed)));
    }

    #[test]
    fn sd_check_agrees_on_small_cases() {
        let f = f2();
        // the doubled code {(a, a)} over R_3 is self-dual
        let ring = CyclicRing::new(&f, 3).unwrap();
        let fs = factor_xm1(&f, 3).unwrap();
        let mut rows = Vec::new();
        for j in 0..3 {
            let xj = ring.monomial(1, j);
            rows.push(vec![xj.clone(), xj]);
        }
        let module = ModuleCode::from_rows(&ring, 2, rows).unwrap();
        let c = module.expand();
        let sigma = CycleAutomorphism::parse("(1,2,3)(4,5,6)", 6).unwrap();
        assert!(c.is_self_dual(InnerProduct::Euclidean).unwrap());
        let report = check_sd_by_constituents(&c, &sigma, &fs).unwrap();
        assert!(report.constituent_verdict, "{report}");
        assert!(report.routes_agree(), "{report}");

        // zero code: not self-dual on both routes
        let z = LinearCode::zero(&f, 6);
        let rz = check_sd_by_constituents(&z, &sigma, &fs).unwrap();
        assert!(!rz.constituent_verdict);
        assert!(rz.routes_agree(), "{rz}");
    }

    #[test]
    fn one_sided_checks_and_refusals() {
        let f = f2();
        let sigma = CycleAutomorphism::parse("(1,2,3)(4,5,6)", 6).unwrap();
        let fs = factor_xm1(&f, 3).unwrap();
        let c = code(&f, &[&[1, 1, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 1]]);
        let r = check_lcd_by_constituents(&c, &sigma, &fs).unwrap();
        assert!(r.routes_agree(), "{r}");

        // gcd(m, q) != 1 is refused for SO/LCD
        let s2 = CycleAutomorphism::parse("(1,2)(3,4)", 4).unwrap();
        let fs2 = factor_xm1(&f, 2).unwrap();
        let c2 = code(&f, &[&[1, 1, 0, 0]]);
        assert!(matches!(
            check_so_by_constituents(&c2, &s2, &fs2),
            Err(ConstituentError::ChainRingRefusal { .. })
        ));
        // ... but the self-dual criterion still applies there
        let c2 = code(&f, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let r2 = check_sd_by_constituents(&c2, &s2, &fs2).unwrap();
        assert!(r2.routes_agree(), "{r2}");
        assert!(r2.constituent_verdict);
    }

    #[test]
    fn spec_file_round_trip() {
        let f = f3();
        let ring = CyclicRing::new(&f, 5).unwrap();
        let e = ring.element(&[2, 1, 1, 1, 1]).unwrap();
        let alpha = ring.element(&[0, 0, 0, 1, 2]).unwrap();
        let spec = ConstructionSpec {
            field: f.clone(),
            m: 5,
            c: 3,
            f: 3,
            pi_rows: vec![vec![1, 1, 0, 0, 1, 1], vec![0, 0, 1, 1, 1, 0]],
            tags: vec![(
                "G_1".into(),
                vec![
                    vec![e.clone(), e.clone(), ring.zero()],
                    vec![ring.zero(), alpha, e.clone()],
                ],
            )],
        };
        let text = write_spec(&spec);
        let parsed = parse_spec(&text).unwrap();
        assert_eq!(parsed.field, spec.field);
        assert_eq!((parsed.m, parsed.c, parsed.f), (5, 3, 3));
        assert_eq!(parsed.pi_rows, spec.pi_rows);
        assert_eq!(parsed.tags.len(), 1);
        assert_eq!(parsed.tags[0].0, "G_1");
        assert_eq!(parsed.tags[0].1, spec.tags[0].1);
        // canonical writer is a fixpoint
        assert_eq!(write_spec(&parsed), text);

        // `s` is accepted as a synonym for `c`
        let qc_text = "[field]\nq = 2^1\n[shape]\nm = 10\ns = 4\n";
        let qc = parse_spec(qc_text).unwrap();
        assert_eq!((qc.m, qc.c, qc.f), (10, 4, 0));

        assert!(parse_spec("[shape]\nm = 5\n").is_err());
        assert!(parse_spec("junk\n").is_err());
    }

    #[test]
    fn build_then_enumerate_small_sd() {
        let f = f2();
        let ring = CyclicRing::new(&f, 5).unwrap();
        // the row (e_0, 1) is rejected: 1 is not in G_0
        let fs = factor_xm1(&f, 5).unwrap();
        let e0 = fs.ideal_tags()[0].idempotent.clone();
        let bad = build_qc(&f, 5, 2, &[("G_0".into(), vec![vec![e0, ring.one()]])]);
        assert!(matches!(bad, Err(ConstituentError::EntryOutsideIdeal { .. })));

        // doubled idempotent rows give a self-dual [10, 5] code over F_2
        let doubled: Vec<(String, Vec<Vec<RingElement>>)> = fs
            .ideal_tags()
            .into_iter()
            .map(|t| {
                let e = t.idempotent.clone();
                (t.name(), vec![vec![e.clone(), e]])
            })
            .collect();
        let c = build_qc(&f, 5, 2, &doubled).unwrap();
        assert_eq!(c.length(), 10);
        assert_eq!(c.dimension(), 5);
        assert!(c.is_self_dual(InnerProduct::Euclidean).unwrap());
        let we = c.weight_enumerator(DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(we.total(), 32);
    }
}
