use gt_core::oracle::{ExplicitCharTable, Gl2Oracle};
use gt_core::sl3::{restriction_decomposition, Sl3Irrep};
use gt_core::tensor::{decompose, ind_decompose};
use gt_core::{char_value, Cyclotomic, Gl2Class, Gl2Irrep, GroupParams, MultTable};
use proptest::prelude::*;

const QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn pick(g: &GroupParams, i: usize) -> Gl2Irrep {
    let irr = g.irreps();
    irr[i % irr.len()]
}

#[test]
fn gl2_of_two_is_s3() {
    // S3 on classes identity, transposition, 3-cycle
    let g = GroupParams::new(2).unwrap();
    let classes = [Gl2Class::C1(0), Gl2Class::C2(0), Gl2Class::C4(1)];
    let rows = [
        (Gl2Irrep::U(0), [1, 1, 1]),
        (Gl2Irrep::X(1), [1, -1, 1]),
        (Gl2Irrep::V(0), [2, 0, -1]),
    ];
    for (pi, vals) in rows {
        for (c, v) in classes.iter().zip(vals) {
            let got = char_value(&pi, c, &g).unwrap();
            assert_eq!(got.as_integer().unwrap(), v.into(), "{pi} on {c}");
        }
    }
    let d = decompose(&Gl2Irrep::V(0), &Gl2Irrep::V(0), &g).unwrap();
    let parts: Vec<(Gl2Irrep, u64)> = d.constituents;
    assert_eq!(parts, vec![(Gl2Irrep::U(0), 1), (Gl2Irrep::V(0), 1), (Gl2Irrep::X(1), 1)]);
}

#[test]
fn explicit_table_agrees_with_class_sums() {
    let o = Gl2Oracle::new(3).unwrap();
    let t = gt_core::oracle::gl2_explicit(&o).unwrap();
    let mt = MultTable::new(*o.params());
    let n = t.irrep_labels.len();
    for i in 0..n {
        for j in 0..n {
            let prod: Vec<Cyclotomic> = (0..t.class_labels.len())
                .map(|c| t.values[i][c].checked_mul(&t.values[j][c]).unwrap())
                .collect();
            for k in 0..n {
                let m = t.multiplicity(&prod, &t.values[k]).unwrap();
                assert_eq!(m, mt.mult_idx(i, j, k).unwrap());
            }
        }
    }
    assert!(ExplicitCharTable::new(vec![], vec![], vec![], vec![]).is_ok());
}

#[test]
fn sl3_restrictions_have_full_dimension() {
    for q in [2, 3, 4, 5] {
        let g = GroupParams::new(q).unwrap();
        for pi in Sl3Irrep::enumerate(&g) {
            let parts = restriction_decomposition(&pi, &g).unwrap();
            let total: u64 = parts.iter().map(|(t, m)| t.dim(&g) * m).sum();
            assert_eq!(total, pi.dim(&g), "{pi} at q={q}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_reciprocity(qi in 0usize..7, a in 0usize..200, b in 0usize..200, c in 0usize..200) {
        let g = GroupParams::new(QS[qi]).unwrap();
        let t = MultTable::new(g);
        let (p1, p2, p3) = (pick(&g, a), pick(&g, b), pick(&g, c));
        let m = t.mult(&p1, &p2, &p3).unwrap();
        prop_assert_eq!(m, t.mult(&p3, &p2.dual(&g), &p1).unwrap());
        prop_assert_eq!(m, t.mult(&p2, &p1, &p3).unwrap());
        prop_assert_eq!(m, t.mult(&p1.dual(&g), &p2.dual(&g), &p3.dual(&g)).unwrap());
    }

    #[test]
    fn decompositions_fill_dimension(qi in 0usize..7, a in 0usize..200, b in 0usize..200) {
        let g = GroupParams::new(QS[qi]).unwrap();
        let d = decompose(&pick(&g, a), &pick(&g, b), &g).unwrap();
        prop_assert!(d.dim_check);
    }

    #[test]
    fn induced_modules_have_index_dimension(qi in 0usize..5, a in 0usize..200) {
        let g = GroupParams::new(QS[qi]).unwrap();
        let t = MultTable::new(g);
        let pi = pick(&g, a);
        let dim: u64 = ind_decompose(&pi, &t).unwrap().iter().map(|((x, y), m)| x.dim(&g) * y.dim(&g) * m).sum();
        prop_assert_eq!(dim, g.group_order() * pi.dim(&g));
    }
}
