use std::collections::BTreeSet;

use branchkit_core::harmonics::{complex_label_of, HarmonicLabel};
use branchkit_core::spectrum::{rat, ParamSet};
use branchkit_core::theorems::{branch, ktype_support, BranchRequest, Subgroup};
use branchkit_core::weights::{weyl_dim, GroupLabel, Weight};

fn req(n: usize, sub: Subgroup, k: i64) -> BranchRequest {
    BranchRequest::new(n, sub, k, rat(0))
}

#[test]
fn k_types_of_line_bundles() {
    // n = 3, k = -2: H^{β+2,β}(ℂ³).
    let s = branch(&req(3, Subgroup::K, -2)).unwrap();
    let types = ktype_support(&s.components[0], 6).unwrap();
    let labels: BTreeSet<_> = types
        .types
        .iter()
        .map(|w| complex_label_of(3, w).unwrap())
        .collect();
    let want: BTreeSet<_> = (0..=2)
        .map(|b| HarmonicLabel::Complex {
            n: 3,
            alpha: b + 2,
            beta: b,
        })
        .collect();
    assert_eq!(labels, want);

    // n = 2, k = 0 up to degree 2: H^{0,0}, H^{1,1} of dimensions 1, 3.
    let s = branch(&req(2, Subgroup::K, 0)).unwrap();
    let types = ktype_support(&s.components[0], 2).unwrap();
    let dims: Vec<u128> = types
        .types
        .iter()
        .map(|w| weyl_dim(&GroupLabel::u(2), w).unwrap())
        .collect();
    assert_eq!(
        types.types.iter().cloned().collect::<Vec<_>>(),
        [Weight::new(vec![0, 0]), Weight::new(vec![1, -1])]
    );
    assert_eq!(dims, [1, 3]);
}

#[test]
fn h2_rank_one_cases() {
    let s = branch(&req(4, Subgroup::H2 { p: 3, q: 1 }, 0)).unwrap();
    assert!(s
        .discrete()
        .all(|c| c.series.to_string().contains("sign=+")));
    let s = branch(&req(4, Subgroup::H2 { p: 2, q: 2 }, 0)).unwrap();
    let plus = &s.discrete().next().unwrap().params;
    assert_eq!(plus.integers_up_to(5).unwrap(), [-5, -3, -1]);
}

#[test]
fn h4_h5_h6_parameters() {
    let h4 = branch(&req(4, Subgroup::H4 { m: 2 }, 0)).unwrap();
    assert_eq!(
        h4.components[0].params.integers_up_to(4).unwrap(),
        [0, 2, 4]
    );
    let h5 = branch(&req(4, Subgroup::H5, 1)).unwrap();
    assert_eq!(h5.discrete().count(), 0);
    let h6 = branch(&req(3, Subgroup::H6, -4)).unwrap();
    assert_eq!(
        h6.discrete().next().unwrap().params,
        ParamSet::finite([rat(1), rat(3)])
    );
}
