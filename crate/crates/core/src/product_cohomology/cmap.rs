//! Lifting a factor Hochschild cocycle with image in the augmentation ideal
//! to a chain map on the assembled resolution of the product.
//!
//! The chain map acts on the outer letters of a word when they come from
//! the cocycle's factor with degree at least the cocycle degree; the letter
//! is replaced through the lifted factor chain map, degree-n letters dying
//! into augmentation-ideal coefficients. The right-edge action carries sign
//! +1 and the left-edge action (-1)^{n·(degree of the suffix)}, matching
//! the differential convention.

use crate::cohomology::lift_to_chain;
use crate::error::Error;
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::psq::{PsqResolution, WordShape};

pub struct CMap {
    pub degree: usize,
    pub left_factor: bool,
    /// `maps[i]`: (P⊔Q)_{degree+i} -> (P⊔Q)_i
    pub maps: Vec<Matrix>,
}

/// Build c(f) for a factor cocycle of degree n with values in I(factor),
/// given as values on the factor resolution generators.
pub fn c_map(
    psq: &PsqResolution,
    left_factor: bool,
    n: usize,
    values: &[Vec<Scalar>],
    up_to: usize,
) -> Result<CMap, Error> {
    let fac = if left_factor { &psq.left } else { &psq.right };
    let ideal = fac.algebra.augmentation_ideal();
    for v in values {
        if !ideal.contains_vector(v) {
            return Err(Error::Invalid("c(f) requires a cocycle with image in I".into()));
        }
    }
    let f = psq.delta.field();
    let dd = psq.delta.dim();

    if n == 0 {
        // a degree-0 kernel class is a central element z of I; its lift is
        // left multiplication by the (central) embedded element
        let z = fac.embed.apply(&values[0]);
        let mut maps = Vec::new();
        for i in 0..=up_to.min(psq.top_degree()) {
            let dim = psq.term_dim(i);
            let mut m = Matrix::zero(f, dim, dim);
            for col in 0..dim {
                let mut v = vec![f.zero(); dim];
                v[col] = f.one();
                let moved = outer_left_mult(psq, &z, &v);
                for (r, c) in moved.into_iter().enumerate() {
                    if !c.is_zero() {
                        m.set(r, col, c);
                    }
                }
            }
            maps.push(m);
        }
        return Ok(CMap { degree: 0, left_factor, maps });
    }

    // lift the factor cocycle to bimodule chain maps f_i: P_{n+i} -> P_i
    let chain = lift_to_chain(&fac.res, n, values, up_to)?;
    let da = fac.algebra.dim();

    let mut maps = Vec::new();
    for i in 0..=up_to {
        let src_deg = n + i;
        if src_deg > psq.top_degree() || i >= chain.len() {
            break;
        }
        let src = &psq.terms[src_deg];
        let tgt_dim = psq.term_dim(i);
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(src.gen_count);
        for s in &src.summands {
            let shape = &s.shape;
            for tuple in &s.tuples {
                let mut acc = vec![f.zero(); tgt_dim];
                emit_cmap_value(psq, left_factor, n, &chain, da, i, shape, tuple, &mut acc);
                cols.push(acc);
            }
        }
        // extend over the outer Δ^e action
        let mut m = Matrix::zero(f, tgt_dim, psq.term_dim(src_deg));
        for (g, base) in cols.iter().enumerate() {
            for x in 0..dd {
                for y in 0..dd {
                    let moved = outer_act_vec(psq, base, x, y);
                    let col = (g * dd + x) * dd + y;
                    for (r, c) in moved.into_iter().enumerate() {
                        if !c.is_zero() {
                            m.set(r, col, c);
                        }
                    }
                }
            }
        }
        maps.push(m);
    }
    Ok(CMap { degree: n, left_factor, maps })
}

#[allow(clippy::too_many_arguments)]
fn emit_cmap_value(
    psq: &PsqResolution,
    left_factor: bool,
    n: usize,
    chain: &[Matrix],
    da: usize,
    tgt_deg: usize,
    shape: &WordShape,
    tuple: &[usize],
    acc: &mut [Scalar],
) {
    let f = psq.delta.field();
    let dd = psq.delta.dim();
    let fac = if left_factor { &psq.left } else { &psq.right };
    let nl = shape.letters();
    let total = shape.degree();

    let mut add_at = |tgt_shape: &WordShape, tgt_tuple: &[usize], x: &[Scalar], y: &[Scalar], c: &Scalar| {
        if c.is_zero() {
            return;
        }
        let term = &psq.terms[tgt_deg];
        let si = term
            .summands
            .iter()
            .position(|s| &s.shape == tgt_shape)
            .expect("target summand exists");
        let ti = term.summands[si]
            .tuples
            .iter()
            .position(|t| t == tgt_tuple)
            .expect("target tuple exists");
        let gen = term.summands[si].gen_offset + ti;
        for (xi, cx) in x.iter().enumerate() {
            if cx.is_zero() {
                continue;
            }
            for (yi, cy) in y.iter().enumerate() {
                if cy.is_zero() {
                    continue;
                }
                let idx = (gen * dd + xi) * dd + yi;
                acc[idx] = acc[idx].add(&c.mul(&cx.mul(cy)));
            }
        }
    };
    let unit_delta = {
        let mut v = vec![f.zero(); dd];
        v[0] = f.one();
        v
    };

    if nl == 1 {
        // single letter: the full induced factor chain map
        if shape.side(0) != left_factor || shape.comp[0] < n {
            return;
        }
        let m = shape.comp[0];
        let img = chain[m - n].apply(&fac.res.generator_vector(m, tuple[0]));
        if m - n >= 1 {
            let tgt_shape = WordShape { starts_left: shape.starts_left, comp: vec![m - n] };
            for (idx, c) in img.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t2 = idx / (da * da);
                let li = (idx % (da * da)) / da;
                let rj = idx % da;
                add_at(&tgt_shape, &[t2], &fac.embed.col(li), &fac.embed.col(rj), c);
            }
        } else {
            // lands in degree 0 = Δ^e
            let tgt_shape = WordShape { starts_left: true, comp: vec![] };
            for (idx, c) in img.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let li = idx / da;
                let rj = idx % da;
                add_at(&tgt_shape, &[], &fac.embed.col(li), &fac.embed.col(rj), c);
            }
        }
        return;
    }

    // first-letter action, sign (-1)^{n · (suffix degree)}
    if shape.side(0) == left_factor && shape.comp[0] >= n {
        let m1 = shape.comp[0];
        let suffix = total - m1;
        let sign = if (n * suffix) % 2 == 1 { f.from_i64(-1) } else { f.one() };
        let img = chain[m1 - n].apply(&fac.res.generator_vector(m1, tuple[0]));
        if m1 - n >= 1 {
            let mut comp2 = shape.comp.to_vec();
            comp2[0] = m1 - n;
            let tgt_shape = WordShape { starts_left: shape.starts_left, comp: comp2 };
            for (idx, c) in img.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t2 = idx / (da * da);
                let li = (idx % (da * da)) / da;
                let rj = idx % da;
                // right coordinate dies through ⊗̂
                let eps = fac.algebra.aug_row()[rj].clone();
                if eps.is_zero() {
                    continue;
                }
                let mut tgt_tuple = tuple.to_vec();
                tgt_tuple[0] = t2;
                add_at(
                    &tgt_shape,
                    &tgt_tuple,
                    &fac.embed.col(li),
                    &unit_delta,
                    &sign.mul(&c.mul(&eps)),
                );
            }
        } else {
            // the letter dies into the coefficient (1⊗ε)(f₀(gen)) ∈ I
            let mut mu = vec![f.zero(); da];
            for (idx, c) in img.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let li = idx / da;
                let rj = idx % da;
                let eps = fac.algebra.aug_row()[rj].clone();
                if !eps.is_zero() {
                    mu[li] = mu[li].add(&c.mul(&eps));
                }
            }
            let tgt_shape = WordShape {
                starts_left: !shape.starts_left,
                comp: shape.comp[1..].to_vec(),
            };
            add_at(&tgt_shape, &tuple[1..], &fac.embed.apply(&mu), &unit_delta, &sign);
        }
    }

    // last-letter action, sign +1
    let last = nl - 1;
    if shape.side(last) == left_factor && shape.comp[last] >= n {
        let ml = shape.comp[last];
        let img = chain[ml - n].apply(&fac.res.generator_vector(ml, tuple[last]));
        if ml - n >= 1 {
            let mut comp2 = shape.comp.to_vec();
            comp2[last] = ml - n;
            let tgt_shape = WordShape { starts_left: shape.starts_left, comp: comp2 };
            for (idx, c) in img.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t2 = idx / (da * da);
                let li = (idx % (da * da)) / da;
                let rj = idx % da;
                // left coordinate dies through ⊗̂
                let eps = fac.algebra.aug_row()[li].clone();
                if eps.is_zero() {
                    continue;
                }
                let mut tgt_tuple = tuple.to_vec();
                tgt_tuple[last] = t2;
                add_at(&tgt_shape, &tgt_tuple, &unit_delta, &fac.embed.col(rj), &c.mul(&eps));
            }
        } else {
            let mut nu = vec![f.zero(); da];
            for (idx, c) in img.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let li = idx / da;
                let rj = idx % da;
                let eps = fac.algebra.aug_row()[li].clone();
                if !eps.is_zero() {
                    nu[rj] = nu[rj].add(&c.mul(&eps));
                }
            }
            let tgt_shape = WordShape {
                starts_left: shape.starts_left,
                comp: shape.comp[..last].to_vec(),
            };
            add_at(&tgt_shape, &tuple[..last], &unit_delta, &fac.embed.apply(&nu), &f.one());
        }
    }
}

fn outer_left_mult(psq: &PsqResolution, z: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let f = psq.delta.field();
    let dd = psq.delta.dim();
    let mut out = vec![f.zero(); v.len()];
    for (idx, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let g = idx / (dd * dd);
        let x1 = (idx % (dd * dd)) / dd;
        let y1 = idx % dd;
        let zx = psq.delta.multiply(z, &psq.delta.basis_vector(x1));
        for (x2, cx) in zx.iter().enumerate() {
            if !cx.is_zero() {
                let t = (g * dd + x2) * dd + y1;
                out[t] = out[t].add(&c.mul(cx));
            }
        }
    }
    out
}

fn outer_act_vec(psq: &PsqResolution, v: &[Scalar], x: usize, y: usize) -> Vec<Scalar> {
    let f = psq.delta.field();
    let dd = psq.delta.dim();
    if x == 0 && y == 0 {
        return v.to_vec();
    }
    let mut out = vec![f.zero(); v.len()];
    for (idx, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let g = idx / (dd * dd);
        let x1 = (idx % (dd * dd)) / dd;
        let y1 = idx % dd;
        for (x2, cx) in psq.delta.basis_product(x, x1) {
            for (y2, cy) in psq.delta.basis_product(y1, y) {
                let t = (g * dd + x2) * dd + y2;
                out[t] = out[t].add(&c.mul(&cx.mul(cy)));
            }
        }
    }
    out
}

/// δ F = F δ at every stored stage.
pub fn is_chain_map(psq: &PsqResolution, cm: &CMap) -> bool {
    for i in 1..cm.maps.len() {
        let src = cm.degree + i;
        if src > psq.top_degree() {
            break;
        }
        let lhs = psq.diffs[i - 1].mul(&cm.maps[i]);
        let rhs = cm.maps[i - 1].mul(&psq.diffs[src - 1]);
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// The cocycle represented by the degree-0 edge: values aug(F₀(gen)) on the
/// degree-n generators.
pub fn cmap_cocycle(psq: &PsqResolution, cm: &CMap) -> Vec<Scalar> {
    let dd = psq.delta.dim();
    let n = cm.degree;
    let f = psq.delta.field();
    let mut out = Vec::with_capacity(psq.terms[n].gen_count * dd);
    for g in 0..psq.terms[n].gen_count {
        let mut gen = vec![f.zero(); psq.term_dim(n)];
        gen[g * dd * dd] = f.one();
        let img = cm.maps[0].apply(&gen);
        out.extend(psq.aug.apply(&img));
    }
    out
}

/// Does c(f) lift the expected cocycle f̂ (x f(p) y on the matching
/// single-letter summand, zero elsewhere)?
pub fn cmap_lifts_expected(
    psq: &PsqResolution,
    cm: &CMap,
    values: &[Vec<Scalar>],
) -> bool {
    let dd = psq.delta.dim();
    let fac = if cm.left_factor { &psq.left } else { &psq.right };
    let n = cm.degree;
    let f = psq.delta.field();
    let mut expected = vec![f.zero(); psq.terms[n].gen_count * dd];
    for s in &psq.terms[n].summands {
        let matches = if n == 0 {
            s.shape.comp.is_empty()
        } else {
            s.shape.comp == vec![n] && s.shape.side(0) == cm.left_factor
        };
        if !matches {
            continue;
        }
        for (ti, _) in s.tuples.iter().enumerate() {
            let g = s.gen_offset + ti;
            let val = fac.embed.apply(&values[ti]);
            expected[g * dd..(g + 1) * dd].clone_from_slice(&val);
        }
    }
    cmap_cocycle(psq, cm) == expected
}
