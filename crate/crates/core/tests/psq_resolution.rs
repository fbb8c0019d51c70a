//! The product bimodule resolution: certificates (δ² = 0, homotopy
//! identity, exactness, smallness), rank bookkeeping against the
//! composition count, and the reduction to a small resolution of k.

use std::sync::Arc;

use augcoh_core::algebra::Algebra;
use augcoh_core::cohomology::{ext_dims, ext_table_from_resolution};
use augcoh_core::field::FieldSpec;
use augcoh_core::module::ModuleOver;
use augcoh_core::psq::build_psq;
use augcoh_core::resolution::minimal_resolution;

fn q() -> FieldSpec {
    FieldSpec::rationals()
}

fn tp(r: usize) -> Arc<Algebra> {
    Arc::new(Algebra::truncated_polynomial(q(), r))
}

#[test]
fn certificates_for_dual_numbers_pair() {
    let a = tp(2);
    let b = tp(2);
    let psq = build_psq(&a, &b, 4).unwrap();
    let rep = psq.verify_report(4);
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
    // rank over Δ^e at degree n: compositions of n in two patterns, factor
    // ranks all 1, so 2^n
    for n in 0..=4 {
        assert_eq!(psq.terms[n].gen_count, 1 << n.max(1) >> usize::from(n == 0), "degree {n}");
    }
}

#[test]
fn summand_count_for_degree_three() {
    // compositions of 3: (3), (1,2), (2,1), (1,1,1); each in two patterns;
    // all factor ranks 1, so 8 generators in degree 3
    let psq = build_psq(&tp(2), &tp(2), 3).unwrap();
    assert_eq!(psq.terms[3].gen_count, 8);
    let n_summands = psq.terms[3].summands.len();
    assert_eq!(n_summands, 8);
}

#[test]
fn certificates_for_mixed_pair() {
    // Λ = k[x]/x³, Γ = k[y]/y²: δ² = 0 and the homotopy identity on all of
    // (P⊔Q) up to degree 5
    let psq = build_psq(&tp(3), &tp(2), 4).unwrap();
    let rep = psq.verify_report(4);
    assert!(rep.pass, "witnesses: {:?}", rep.witnesses);
}

#[test]
fn tensor_down_gives_small_resolution_matching_minimal_oracle() {
    // ranks of R over Λ*Γ equal the minimal-resolution ranks (2^n here)
    let psq = build_psq(&tp(2), &tp(2), 4).unwrap();
    let r = psq.tensor_down();
    assert!(r.small, "im ∂ lies in I·R");
    assert!(r.verify_exact(), "homology of R vanishes in degrees 1..4");
    assert_eq!(r.ranks[0], 1, "R_0 = Λ*Γ free of rank 1");
    let oracle =
        minimal_resolution(&psq.delta, &ModuleOver::trivial(psq.delta.clone()), 5).unwrap();
    assert_eq!(r.ranks, oracle.ranks);
    assert_eq!(r.ranks, vec![1, 2, 4, 8, 16, 32]);
}

#[test]
fn tensor_down_mixed_pair_matches_minimal_oracle() {
    let psq = build_psq(&tp(3), &tp(2), 3).unwrap();
    let r = psq.tensor_down();
    assert!(r.small && r.verify_exact());
    let oracle =
        minimal_resolution(&psq.delta, &ModuleOver::trivial(psq.delta.clone()), 4).unwrap();
    assert_eq!(r.ranks, oracle.ranks);
}

#[test]
fn ext_table_from_tensor_down_matches_direct_table_dims() {
    let psq = build_psq(&tp(2), &tp(2), 3).unwrap();
    let r = psq.tensor_down();
    let table = ext_table_from_resolution(&r, 3).unwrap();
    assert_eq!(table.dims, ext_dims(&psq.delta, 3).unwrap());
    assert!(table.check_associativity());
}

#[test]
fn degree_one_well_definedness_of_the_modified_differential() {
    // the degree-one edge formula is independent of the chosen tensor
    // representatives: applying δ to x·(letter)·1 and to 1·(letter)·x' with
    // the coefficient pushed across the word must agree. Concretely, in
    // P̄_1 ⊗̂ Q̄_1 the elements (x·g ⊗̂ h) and (x·g ⊗̂ h) written with the
    // scalar routed through either outer coordinate give the same image.
    let psq = build_psq(&tp(2), &tp(2), 2).unwrap();
    let f = q();
    let dd = psq.delta.dim();
    // locate the P̄_1 ⊗̂ Q̄_1 summand in degree 2
    let term = &psq.terms[2];
    let si = term
        .summands
        .iter()
        .position(|s| s.shape.comp == vec![1, 1] && s.shape.starts_left)
        .unwrap();
    let s = &term.summands[si];
    let gen = s.gen_offset;
    // v1 = (x ⊗ 1)-outer acting on the generator; v2 = the same element
    // written via the right coordinate of the junction: in canonical
    // coordinates both are the single flat vector with x on the outer left,
    // so instead compare δ(x·w·y) with x·δ(w)·y directly (bilinearity of the
    // stored matrix over Δ^e).
    let x_idx = 1; // basis vector "l0" = x
    let y_idx = 2; // basis vector "r0" = y
    let col_plain = {
        let mut v = vec![f.zero(); psq.term_dim(2)];
        v[gen * dd * dd] = f.one();
        psq.diffs[1].apply(&v)
    };
    let col_moved = {
        let mut v = vec![f.zero(); psq.term_dim(2)];
        v[gen * dd * dd + x_idx * dd + y_idx] = f.one();
        psq.diffs[1].apply(&v)
    };
    // x·δ(w)·y computed by the outer action on the plain column must equal
    // the stored column for the outer coordinates (x_idx, y_idx)
    let moved_by_hand = {
        let mut out = vec![f.zero(); psq.term_dim(1)];
        for (idx, c) in col_plain.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let g = idx / (dd * dd);
            let x1 = (idx % (dd * dd)) / dd;
            let y1 = idx % dd;
            for (x2, cx) in psq.delta.basis_product(x_idx, x1) {
                for (y2, cy) in psq.delta.basis_product(y1, y_idx) {
                    let t = (g * dd + x2) * dd + y2;
                    out[t] = out[t].add(&c.mul(&cx.mul(cy)));
                }
            }
        }
        out
    };
    assert_eq!(col_moved, moved_by_hand);
}

#[test]
fn psq_certificates_over_gf3() {
    let f3 = FieldSpec::prime(3).unwrap();
    let a = Arc::new(Algebra::truncated_polynomial(f3, 2));
    let b = Arc::new(Algebra::truncated_polynomial(f3, 2));
    let psq = build_psq(&a, &b, 3).unwrap();
    assert!(psq.verify_report(3).pass);
}
