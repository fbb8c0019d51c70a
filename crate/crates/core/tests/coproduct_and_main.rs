//! Coproduct-side theorems at truncated scale and the main product theorem
//! E(Λ*Γ) ≅ E(Λ) ⊔ E(Γ).

use std::sync::Arc;

use augcoh_core::algebra::Algebra;
use augcoh_core::cohomology::ext_ring;
use augcoh_core::field::FieldSpec;
use augcoh_core::product_cohomology::{
    ext_coproduct_check, gr_centre_check, hoch_coproduct_check, main_theo_check,
    omega_coproduct_check,
};

fn q() -> FieldSpec {
    FieldSpec::rationals()
}

fn tp(r: usize) -> Arc<Algebra> {
    Arc::new(Algebra::truncated_polynomial(q(), r))
}

#[test]
fn ext_of_truncated_coproduct_of_dual_numbers() {
    // dims (1,2,2,2,2), cross products vanish, stable across two cutoffs
    let rep = ext_coproduct_check(&tp(2), &tp(2), 4, None).unwrap();
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
    let dims = rep.tables.get("dims_cutoff_10").or_else(|| rep.tables.get("dims_cutoff_9"));
    assert!(dims.is_some(), "tables: {:?}", rep.tables);
}

#[test]
fn ext_of_truncated_coproduct_with_ground_field() {
    // k ⊔ Λ: E = E(Λ)
    let rep = ext_coproduct_check(&tp(1), &tp(3), 3, None).unwrap();
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
}

#[test]
fn ext_of_truncated_coproduct_mixed() {
    // k[x]/x³ ⊔ k[y]/y²: E^n dims = 1 + 1 = 2 for n ≥ 1
    let rep = ext_coproduct_check(&tp(3), &tp(2), 3, Some(6)).unwrap();
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
}

#[test]
fn omega_splits_for_dual_numbers_coproduct() {
    let rep = omega_coproduct_check(&tp(2), &tp(2), 4).unwrap();
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
}

#[test]
fn omega_splits_for_mixed_coproduct() {
    let rep = omega_coproduct_check(&tp(3), &tp(2), 4).unwrap();
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
}

#[test]
fn omega_degenerate_factor() {
    // Λ = k: O_Λ = 0 and O_Γ = Ω
    let rep = omega_coproduct_check(&tp(1), &tp(2), 4).unwrap();
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
}

#[test]
fn gr_centre_trivial_for_polynomial_tables() {
    // E(k[x]/x²) = k[a]: the free product has graded centre concentrated in
    // degree 0
    let e = ext_ring(&tp(2), 4).unwrap().table;
    let rep = gr_centre_check(&e, &e, 8).unwrap();
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
}

#[test]
fn gr_centre_exceptional_case() {
    // both tables k[x]/x² as graded rings: xy+yx is central in degree 2;
    // E(k[x]) is exactly this shape, realized here by hand
    let f = q();
    let mk = || {
        let dims = [1usize, 1, 0, 0, 0];
        augcoh_core::cohomology::GradedRingTable {
            field: f,
            dims: dims.to_vec(),
            labels: vec![vec!["1".into()], vec!["x".into()], vec![], vec![], vec![]],
            mul: {
                let mut m = vec![vec![Vec::new(); 5]; 5];
                for d1 in 0..=4usize {
                    for d2 in 0..=4 - d1 {
                        let mut cell = Vec::new();
                        for _ in 0..dims[d1] * dims[d2] {
                            let mut v = vec![f.zero(); dims[d1 + d2]];
                            if d1 * d2 == 0 && !v.is_empty() {
                                v[0] = f.one();
                            }
                            cell.push(v);
                        }
                        m[d1][d2] = cell;
                    }
                }
                m
            },
            unit: vec![f.one()],
        }
    };
    let rep = gr_centre_check(&mk(), &mk(), 6).unwrap();
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
}

#[test]
fn main_theorem_for_dual_numbers_pair() {
    // E(k[x]/x² * k[y]/y²) has dims (1,2,4,8,16) with the free-product
    // multiplication table
    let rep = main_theo_check(&tp(2), &tp(2), 4).unwrap();
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
    assert_eq!(
        rep.tables.get("ranks").unwrap(),
        &serde_json::json!([1, 2, 4, 8, 16])
    );
}

#[test]
fn main_theorem_for_x3_y2() {
    let rep = main_theo_check(&tp(3), &tp(2), 4).unwrap();
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
    assert_eq!(
        rep.tables.get("ranks").unwrap(),
        &serde_json::json!([1, 2, 4, 8, 16])
    );
}

#[test]
fn hochschild_coproduct_heuristic_worked_example() {
    let rep = hoch_coproduct_check(&tp(2), &tp(2), 5, 2).unwrap();
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
}

#[test]
fn hochschild_coproduct_degenerate_factor() {
    // k ⊔ Λ: HH agrees with HH(Λ) on the nose
    let rep = hoch_coproduct_check(&tp(1), &tp(2), 4, 2).unwrap();
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
}
