//! Shared helpers for the integration suites: seeded random code
//! generators and brute-force oracles that stay independent of the
//! algebraic implementations they cross-check.

#![allow(dead_code)]

use qcodes::autodecomp::CycleAutomorphism;
use qcodes::cycring::{factor_xm1, ideal_basis, CyclicRing, RingElement};
use qcodes::galois::Field;
use qcodes::lincode::{InnerProduct, LinearCode};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut ChaCha8Rng, field: &Field, n: usize) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..field.q()) as u8).collect()
}

/// Canonical quasi-cyclic action: `s` consecutive `m`-cycles.
pub fn qc_sigma(m: usize, s: usize) -> CycleAutomorphism {
    let cycles = (0..s).map(|j| (j * m..(j + 1) * m).collect()).collect();
    CycleAutomorphism::new(cycles, m * s).expect("disjoint consecutive cycles")
}

/// Canonical almost quasi-cyclic action of type m-(c,f).
pub fn aqc_sigma(m: usize, c: usize, f: usize) -> CycleAutomorphism {
    let cycles = (0..c).map(|j| (j * m..(j + 1) * m).collect()).collect();
    CycleAutomorphism::new(cycles, c * m + f).expect("disjoint consecutive cycles")
}

/// Action with arbitrary consecutive cycle lengths.
pub fn sigma_with_lengths(lengths: &[usize]) -> CycleAutomorphism {
    let mut cycles = Vec::new();
    let mut base = 0;
    for &l in lengths {
        cycles.push((base..base + l).collect());
        base += l;
    }
    CycleAutomorphism::new(cycles, base).expect("disjoint consecutive cycles")
}

/// Span of the sigma-orbits of the seed vectors: always sigma-invariant.
pub fn sigma_closure(field: &Field, sigma: &CycleAutomorphism, seeds: &[Vec<u8>]) -> LinearCode {
    let mut rows = Vec::new();
    for seed in seeds {
        let mut cur = seed.clone();
        for _ in 0..sigma.order() {
            rows.push(cur.clone());
            cur = sigma.apply(&cur).expect("seed has the right length");
        }
    }
    LinearCode::new(field, sigma.degree(), rows).expect("orbit rows are valid")
}

pub fn random_invariant_code(
    rng: &mut ChaCha8Rng,
    field: &Field,
    sigma: &CycleAutomorphism,
    num_seeds: usize,
) -> LinearCode {
    let seeds: Vec<Vec<u8>> =
        (0..num_seeds).map(|_| random_vector(rng, field, sigma.degree())).collect();
    sigma_closure(field, sigma, &seeds)
}

/// A random element of the ideal of `tag`: a random combination of its
/// basis.
pub fn random_ideal_element(
    rng: &mut ChaCha8Rng,
    ring: &CyclicRing,
    basis: &[RingElement],
) -> RingElement {
    let mut acc = ring.zero();
    for b in basis {
        let c = rng.gen_range(0..ring.field().q()) as u8;
        acc = ring.add(&acc, &ring.scale(c, b));
    }
    acc
}

/// Random constituent data for `build_qc`: for each tag, 0..=s random module
/// rows of random ideal elements.
pub fn random_constituent_data(
    rng: &mut ChaCha8Rng,
    field: &Field,
    m: usize,
    s: usize,
) -> Vec<(String, Vec<Vec<RingElement>>)> {
    let fs = factor_xm1(field, m).expect("m >= 1");
    let ring = CyclicRing::new(field, m).expect("m >= 1");
    fs.ideal_tags()
        .into_iter()
        .map(|tag| {
            let basis = ideal_basis(&ring, &tag);
            let row_count = rng.gen_range(0..=s);
            let rows = (0..row_count)
                .map(|_| {
                    (0..s).map(|_| random_ideal_element(rng, &ring, &basis)).collect()
                })
                .collect();
            (tag.name(), rows)
        })
        .collect()
}

// --- brute-force oracles ---

/// All codewords, by expanding every message; guarded to small codes.
pub fn all_codewords(code: &LinearCode) -> Vec<Vec<u8>> {
    let field = code.field();
    let q = field.q() as u64;
    let k = code.dimension();
    let total = q.pow(k as u32);
    assert!(total <= 1 << 16, "oracle enumeration guard");
    let mut words = Vec::with_capacity(total as usize);
    let mut digits = vec![0u64; k];
    loop {
        let mut w = vec![0u8; code.length()];
        for (d, row) in digits.iter().zip(code.generators()) {
            let c = *d as u8;
            if c != 0 {
                for (wi, &ri) in w.iter_mut().zip(row) {
                    *wi = field.add(*wi, field.mul(c, ri));
                }
            }
        }
        words.push(w);
        // odometer over message digits
        let mut pos = 0;
        loop {
            if pos == k {
                return words;
            }
            digits[pos] += 1;
            if digits[pos] == q {
                digits[pos] = 0;
                pos += 1;
            } else {
                break;
            }
        }
    }
}

/// Hull by codeword iteration: keep every codeword orthogonal to all
/// generators of `code` under `ip`, then span.
pub fn brute_hull(code: &LinearCode, ip: InnerProduct) -> LinearCode {
    let field = code.field();
    let rows: Vec<Vec<u8>> = all_codewords(code)
        .into_iter()
        .filter(|w| {
            code.generators()
                .iter()
                .all(|g| LinearCode::inner(field, w, g, ip).unwrap() == 0)
        })
        .collect();
    LinearCode::new(field, code.length(), rows).expect("codewords are valid rows")
}

/// Self-orthogonality by full pairwise codeword iteration.
pub fn brute_self_orthogonal(code: &LinearCode, ip: InnerProduct) -> bool {
    let field = code.field();
    let words = all_codewords(code);
    words.iter().all(|u| {
        words.iter().all(|v| LinearCode::inner(field, u, v, ip).unwrap() == 0)
    })
}

/// Classify every codeword as sigma-fixed / zero-cycle-sums and return the
/// two subcode dimensions.
pub fn brute_fixed_and_e_dims(code: &LinearCode, sigma: &CycleAutomorphism) -> (usize, usize) {
    let field = code.field();
    let words = all_codewords(code);
    let fixed = words.iter().filter(|w| sigma.apply(w).unwrap() == **w).count();
    let esum = words
        .iter()
        .filter(|w| {
            sigma
                .cycles()
                .iter()
                .all(|cy| cy.iter().fold(0u8, |a, &i| field.add(a, w[i])) == 0)
        })
        .count();
    let log_q = |count: usize| -> usize {
        let q = field.q() as usize;
        let mut dim = 0;
        let mut acc = 1;
        while acc < count {
            acc *= q;
            dim += 1;
        }
        assert_eq!(acc, count, "subcode cardinality must be a power of q");
        dim
    };
    (log_q(fixed), log_q(esum))
}
