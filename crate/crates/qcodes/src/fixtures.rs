//! Bundled example constructions used by the `example` CLI command and the
//! golden tests: a binary `[32,16,8]` self-dual code with an automorphism of
//! type 15-(2,2), a binary quasi-cyclic `[40,20,8]` self-dual code with four
//! 10-cycles, and two ternary `[18,10,4]` LCD codes with an automorphism of
//! type 5-(3,3).
//!
//! The generator matrices and construction data ship embedded so the golden
//! tests never depend on files at run time.

use crate::autodecomp::CycleAutomorphism;
use crate::constituents::{parse_spec, ConstructionSpec};
use crate::lincode::LinearCode;

pub const GEN1_CODE: &str = include_str!("../data/gen1.code");
pub const GEN3_CODE: &str = include_str!("../data/gen3.code");
pub const GEN4_CODE: &str = include_str!("../data/gen4.code");
pub const EX1_SPEC: &str = include_str!("../data/ex1.spec");
pub const EX2_SPEC: &str = include_str!("../data/ex2.spec");
pub const EX3_SPEC: &str = include_str!("../data/ex3.spec");
pub const EX3B_SPEC: &str = include_str!("../data/ex3b.spec");

/// Reference generator matrix of the `[32,16,8]` example.
pub fn gen1() -> LinearCode {
    LinearCode::parse_file_text(GEN1_CODE).expect("embedded gen1 parses")
}
/// Reference generator matrix of the first `[18,10,4]` example.
pub fn gen3() -> LinearCode {
    LinearCode::parse_file_text(GEN3_CODE).expect("embedded gen3 parses")
}
/// Reference generator matrix of the second `[18,10,4]` example.
pub fn gen4() -> LinearCode {
    LinearCode::parse_file_text(GEN4_CODE).expect("embedded gen4 parses")
}

pub fn ex1_spec() -> ConstructionSpec {
    parse_spec(EX1_SPEC).expect("embedded ex1 spec parses")
}
pub fn ex2_spec() -> ConstructionSpec {
    parse_spec(EX2_SPEC).expect("embedded ex2 spec parses")
}
pub fn ex3_spec() -> ConstructionSpec {
    parse_spec(EX3_SPEC).expect("embedded ex3 spec parses")
}
pub fn ex3b_spec() -> ConstructionSpec {
    parse_spec(EX3B_SPEC).expect("embedded ex3b spec parses")
}

/// The type 15-(2,2) automorphism of the `[32,16,8]` example.
pub fn ex1_sigma() -> CycleAutomorphism {
    ex1_spec().canonical_sigma()
}
/// The four 10-cycles of the `[40,20,8]` example.
pub fn ex2_sigma() -> CycleAutomorphism {
    ex2_spec().canonical_sigma()
}
/// The type 5-(3,3) automorphism of the `[18,10,4]` examples.
pub fn ex3_sigma() -> CycleAutomorphism {
    ex3_spec().canonical_sigma()
}

/// Expected weight distribution of the `[32,16,8]` example as
/// `(weight, count)` pairs; all other weights have count zero.
pub const EX1_WEIGHT_ENUMERATOR: &[(usize, u64)] = &[
    (0, 1),
    (8, 620),
    (12, 13888),
    (16, 36518),
    (20, 13888),
    (24, 620),
    (32, 1),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_specs_round_trip_through_the_writer() {
        use crate::constituents::write_spec;
        for text in [EX1_SPEC, EX2_SPEC, EX3_SPEC, EX3B_SPEC] {
            let spec = parse_spec(text).unwrap();
            let rewritten = write_spec(&spec);
            let reparsed = parse_spec(&rewritten).unwrap();
            assert_eq!(write_spec(&reparsed), rewritten, "writer is a fixpoint");
            let a = spec.build().unwrap();
            let b = reparsed.build().unwrap();
            assert!(a.row_space_eq(&b));
        }
    }

    #[test]
    fn fixtures_parse_with_expected_parameters() {
        let g1 = gen1();
        assert_eq!((g1.length(), g1.dimension()), (32, 16));
        let g3 = gen3();
        assert_eq!((g3.length(), g3.dimension()), (18, 10));
        let g4 = gen4();
        assert_eq!((g4.length(), g4.dimension()), (18, 10));
        assert_eq!(ex1_sigma().shape(), Some((15, 2, 2)));
        assert_eq!(ex2_sigma().shape(), Some((10, 4, 0)));
        assert_eq!(ex3_sigma().shape(), Some((5, 3, 3)));
        let total: u64 = EX1_WEIGHT_ENUMERATOR.iter().map(|&(_, c)| c).sum();
        assert_eq!(total, 1 << 16);
    }
}
