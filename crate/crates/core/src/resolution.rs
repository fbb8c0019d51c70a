//! Projective resolutions by free modules: minimal (small) resolutions via
//! iterated projective covers, the bar resolution oracle, Ω-kernels, and
//! left-linear contracting homotopies.
//!
//! A term F_n = ring^{rank} is flattened to k-coordinates (generator, ring
//! basis), so differentials are plain matrices and every homological
//! statement reduces to exact linear algebra. Smallness (im d inside the
//! augmentation-ideal multiples of the next term) is checked, not assumed.

use std::sync::Arc;

use crate::algebra::{Algebra, ArcAlgebra};
use crate::error::Error;
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::module::{minimal_generators_in_ambient, ModuleOver};
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: ArcAlgebra,
    pub target: ModuleOver,
    /// rank of F_n over the ring, n = 0..
    pub ranks: Vec<usize>,
    /// `diffs[n]`: the matrix of d_{n+1}: F_{n+1} -> F_n
    pub diffs: Vec<Matrix>,
    /// F_0 -> target
    pub aug: Matrix,
    pub small: bool,
}

impl Resolution {
    /// Highest homological degree with a term.
    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn term_dim(&self, n: usize) -> usize {
        self.ranks[n] * self.ring.dim()
    }

    /// d_n as a matrix, n >= 1.
    pub fn diff(&self, n: usize) -> &Matrix {
        &self.diffs[n - 1]
    }

    /// Coordinates of the t-th generator of F_n.
    pub fn generator_vector(&self, n: usize, t: usize) -> Vec<Scalar> {
        let f = self.ring.field();
        let mut v = vec![f.zero(); self.term_dim(n)];
        for (i, c) in self.ring.unit().iter().enumerate() {
            v[t * self.ring.dim() + i] = c.clone();
        }
        v
    }

    /// Left action of a ring element on F_n coordinates.
    pub fn act(&self, n: usize, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let d = self.ring.dim();
        let f = self.ring.field();
        let mut out = vec![f.zero(); self.term_dim(n)];
        for t in 0..self.ranks[n] {
            let slice = &v[t * d..(t + 1) * d];
            if slice.iter().all(|c| c.is_zero()) {
                continue;
            }
            let prod = self.ring.multiply(a, slice);
            for (i, c) in prod.into_iter().enumerate() {
                out[t * d + i] = c;
            }
        }
        out
    }

    /// Is v inside I(ring)·F_n? Per generator slice, the augmentation of the
    /// ring coordinate must vanish.
    pub fn in_ideal_multiples(&self, n: usize, v: &[Scalar]) -> bool {
        let d = self.ring.dim();
        (0..self.ranks[n]).all(|t| self.ring.aug_of(&v[t * d..(t + 1) * d]).is_zero())
    }

    /// Smallness: every column of every differential lies in I·F.
    pub fn verify_small(&self) -> bool {
        check_small(self)
    }

    /// Homology ranks: exact at degree 0 against the target and zero
    /// homology at every interior degree.
    pub fn verify_exact(&self) -> bool {
        if self.aug.rank() != self.target.dim {
            return false;
        }
        let mut prev_rank = self.aug.rank();
        for n in 0..self.diffs.len() {
            let dim_fn = self.term_dim(n);
            let rank_in = self.diffs[n].rank();
            // ker(outgoing from F_n) = dim F_n - prev_rank must equal im d_{n+1}
            if dim_fn - prev_rank != rank_in {
                return false;
            }
            prev_rank = rank_in;
        }
        true
    }

    /// d ∘ d = 0 at every composable pair, plus aug ∘ d_1 = 0.
    pub fn verify_complex(&self) -> bool {
        if !self.diffs.is_empty() && !self.aug.mul(&self.diffs[0]).is_zero() {
            return false;
        }
        for w in self.diffs.windows(2) {
            if !w[0].mul(&w[1]).is_zero() {
                return false;
            }
        }
        true
    }
}

impl Resolution {
    /// JSON bundle for caching: ranks, differentials, augmentation, and the
    /// smallness certificate. The ring and target are reconstruction
    /// context, not payload.
    pub fn to_json_bundle(&self) -> serde_json::Value {
        serde_json::json!({
            "ranks": self.ranks,
            "diffs": self.diffs.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
            "aug": self.aug.to_json(),
            "small": self.small,
        })
    }

    pub fn from_json_bundle(
        ring: ArcAlgebra,
        target: ModuleOver,
        v: &serde_json::Value,
    ) -> Result<Resolution, Error> {
        let field = ring.field();
        let ranks: Vec<usize> = v
            .get("ranks")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| Error::Parse("bundle ranks".into()))?
            .iter()
            .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| Error::Parse("rank".into())))
            .collect::<Result<_, _>>()?;
        let diffs: Vec<Matrix> = v
            .get("diffs")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| Error::Parse("bundle diffs".into()))?
            .iter()
            .map(|m| Matrix::from_json(field, m))
            .collect::<Result<_, _>>()?;
        let aug = Matrix::from_json(
            field,
            v.get("aug").ok_or_else(|| Error::Parse("bundle aug".into()))?,
        )?;
        let small = v.get("small").and_then(serde_json::Value::as_bool).unwrap_or(false);
        Ok(Resolution { ring, target, ranks, diffs, aug, small })
    }
}

fn check_small(res: &Resolution) -> bool {
    for (idx, d) in res.diffs.iter().enumerate() {
        for c in 0..d.cols() {
            if !res.in_ideal_multiples(idx, &d.col(c)) {
                return false;
            }
        }
    }
    true
}

/// Iterated projective covers of a module over a local algebra.
pub fn minimal_resolution(
    ring: &ArcAlgebra,
    target: &ModuleOver,
    n_max: usize,
) -> Result<Resolution, Error> {
    if !ring.is_local() {
        return Err(Error::NotLocal);
    }
    let f = ring.field();
    let d = ring.dim();

    let gens = crate::module::minimal_generators(target);
    let rank0 = gens.len();
    let mut aug = Matrix::zero(f, target.dim, rank0 * d);
    for (t, g) in gens.iter().enumerate() {
        for j in 0..d {
            let img = target.act_basis(j, g);
            for (r, c) in img.into_iter().enumerate() {
                aug.set(r, t * d + j, c);
            }
        }
    }

    let mut res = Resolution {
        ring: ring.clone(),
        target: target.clone(),
        ranks: vec![rank0],
        diffs: Vec::new(),
        aug,
        small: true,
    };
    extend_minimal(&mut res, n_max)?;
    res.small = check_small(&res);
    Ok(res)
}

/// Extend a minimal resolution to homological degree `n_max` by repeated
/// kernel-and-cover steps.
pub fn extend_minimal(res: &mut Resolution, n_max: usize) -> Result<(), Error> {
    while res.ranks.len() <= n_max {
        let n = res.ranks.len() - 1;
        let outgoing = if n == 0 { res.aug.clone() } else { res.diff(n).clone() };
        let kernel = Subspace::from_spanning(&outgoing.kernel());
        let ambient = free_module(res, n);
        let gens = minimal_generators_in_ambient(&ambient, &kernel);
        let rank = gens.len();
        let d = res.ring.dim();
        let f = res.ring.field();
        let mut diff = Matrix::zero(f, res.term_dim(n), rank * d);
        for (t, g) in gens.iter().enumerate() {
            for j in 0..d {
                let img = res.act(n, &res.ring.basis_vector(j), g);
                for (r, c) in img.into_iter().enumerate() {
                    diff.set(r, t * d + j, c);
                }
            }
        }
        res.ranks.push(rank);
        res.diffs.push(diff);
    }
    Ok(())
}

fn free_module(res: &Resolution, n: usize) -> ModuleOver {
    let d = res.ring.dim();
    let f = res.ring.field();
    let rank = res.ranks[n];
    let mut action = Vec::with_capacity(d);
    for i in 0..d {
        let block = res.ring.left_mult_matrix(&res.ring.basis_vector(i));
        let mut m = Matrix::zero(f, rank * d, rank * d);
        for t in 0..rank {
            for r in 0..d {
                for c in 0..d {
                    let v = block.get(r, c);
                    if !v.is_zero() {
                        m.set(t * d + r, t * d + c, v.clone());
                    }
                }
            }
        }
        action.push(m);
    }
    ModuleOver::new(res.ring.clone(), rank * d, action)
}

/// Minimal resolution of `a` as a bimodule (left module over a ⊗ a^op),
/// with the degree-0 term forced to be the enveloping algebra and the
/// augmentation the multiplication map.
pub fn minimal_bimodule_resolution(
    a: &ArcAlgebra,
    n_max: usize,
) -> Result<(Resolution, ArcAlgebra), Error> {
    if !a.is_local() {
        return Err(Error::NotLocal);
    }
    let env = Arc::new(a.enveloping());
    let target = ModuleOver::bimodule_self(a, &env);
    let f = a.field();
    let d = a.dim();
    // multiplication map env -> a on the single generator 1⊗1
    let mut aug = Matrix::zero(f, d, d * d);
    for i in 0..d {
        for j in 0..d {
            let prod = a.multiply(&a.basis_vector(i), &a.basis_vector(j));
            for (r, c) in prod.into_iter().enumerate() {
                aug.set(r, i * d + j, c);
            }
        }
    }
    let mut res =
        Resolution { ring: env.clone(), target, ranks: vec![1], diffs: Vec::new(), aug, small: true };
    extend_minimal(&mut res, n_max)?;
    res.small = check_small(&res);
    Ok((res, env))
}

/// Minimal resolution of k over a graded-connected truncated algebra,
/// windowed by internal degree: generators of internal degree above the
/// window are suppressed, which removes exactly the syzygies created by the
/// truncation relations (those live above the cutoff). Within the window
/// the complex agrees slice by slice with the resolution over the
/// untruncated algebra.
///
/// Returns the resolution plus the internal degree of every generator.
pub fn windowed_minimal_resolution(
    flat: &ArcAlgebra,
    basis_degree: &[usize],
    window: usize,
    n_max: usize,
) -> Result<(Resolution, Vec<Vec<usize>>), Error> {
    let f = flat.field();
    let d = flat.dim();
    assert_eq!(basis_degree.len(), d);
    let target = ModuleOver::trivial(flat.clone());

    let mut ranks = vec![1usize];
    let mut gen_degrees: Vec<Vec<usize>> = vec![vec![0]];
    let mut diffs: Vec<Matrix> = Vec::new();
    let mut aug = Matrix::zero(f, 1, d);
    for j in 0..d {
        aug.set(0, j, flat.aug_row()[j].clone());
    }

    // positive-degree algebra basis grouped by degree
    let mut alg_by_degree: Vec<Vec<usize>> = vec![Vec::new(); window + 1];
    for (i, &bd) in basis_degree.iter().enumerate() {
        if bd >= 1 && bd <= window {
            alg_by_degree[bd].push(i);
        }
    }

    for n in 0..n_max {
        let rank = ranks[n];
        let degs = gen_degrees[n].clone();
        let coord_degree =
            |idx: usize| -> usize { degs[idx / d] + basis_degree[idx % d] };
        let outgoing = if n == 0 { aug.clone() } else { diffs[n - 1].clone() };
        // kernel slice by slice (the outgoing map is graded, so the kernel
        // is the direct sum of the slice kernels)
        let mut slice_kernels: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(window + 1);
        for slice in 0..=window {
            let cols: Vec<usize> =
                (0..rank * d).filter(|&idx| coord_degree(idx) == slice).collect();
            let mut vecs = Vec::new();
            if !cols.is_empty() {
                let sub = Matrix::from_fn(f, outgoing.rows(), cols.len(), |r, c| {
                    outgoing.get(r, cols[c]).clone()
                });
                let kernel_small = sub.kernel();
                for r in 0..kernel_small.rows() {
                    let mut v = vec![f.zero(); rank * d];
                    for (ci, &idx) in cols.iter().enumerate() {
                        v[idx] = kernel_small.get(r, ci).clone();
                    }
                    vecs.push(v);
                }
            }
            slice_kernels.push(vecs);
        }
        // minimal generators per slice: complete (I·K) ∩ slice inside K_slice
        let mut new_gens: Vec<(usize, Vec<Scalar>)> = Vec::new();
        for slice in 0..=window {
            if slice_kernels[slice].is_empty() {
                continue;
            }
            let mut span = crate::subspace::RowSpace::new(f, rank * d);
            for e in 1..=slice {
                for &ai in &alg_by_degree[e] {
                    for v in &slice_kernels[slice - e] {
                        let acted = act_free(flat, rank, &flat.basis_vector(ai), v);
                        span.insert(acted);
                    }
                }
            }
            for v in &slice_kernels[slice] {
                if span.insert(v.clone()) {
                    new_gens.push((slice, v.clone()));
                }
            }
        }
        let new_rank = new_gens.len();
        let mut diff = Matrix::zero(f, rank * d, new_rank * d);
        for (t, (_, g)) in new_gens.iter().enumerate() {
            for j in 0..d {
                let img = act_free(flat, rank, &flat.basis_vector(j), g);
                for (r, c) in img.into_iter().enumerate() {
                    diff.set(r, t * d + j, c);
                }
            }
        }
        ranks.push(new_rank);
        gen_degrees.push(new_gens.iter().map(|(s, _)| *s).collect());
        diffs.push(diff);
    }

    let mut res = Resolution { ring: flat.clone(), target, ranks, diffs, aug, small: true };
    res.small = check_small(&res);
    Ok((res, gen_degrees))
}

/// Window-limited exactness: at each homological degree and each internal
/// degree slice within the window, the incoming rank equals the kernel
/// dimension of the outgoing slice.
pub fn verify_windowed_exactness(
    res: &Resolution,
    gen_degrees: &[Vec<usize>],
    basis_degree: &[usize],
    window: usize,
) -> bool {
    let d = res.ring.dim();
    for n in 0..res.diffs.len() {
        let degs = &gen_degrees[n];
        let coord_degree = |idx: usize| -> usize { degs[idx / d] + basis_degree[idx % d] };
        let outgoing = if n == 0 { &res.aug } else { &res.diffs[n - 1] };
        let incoming = &res.diffs[n];
        let next_degs = &gen_degrees[n + 1];
        let next_coord_degree =
            |idx: usize| -> usize { next_degs[idx / d] + basis_degree[idx % d] };
        for slice in 0..=window {
            let cols: Vec<usize> =
                (0..res.term_dim(n)).filter(|&i| coord_degree(i) == slice).collect();
            if cols.is_empty() {
                continue;
            }
            let sub = Matrix::from_fn(res.ring.field(), outgoing.rows(), cols.len(), |r, c| {
                outgoing.get(r, cols[c]).clone()
            });
            let ker_dim = cols.len() - sub.rank();
            let in_cols: Vec<usize> = (0..res.term_dim(n + 1))
                .filter(|&i| next_coord_degree(i) == slice)
                .collect();
            let in_rank = if in_cols.is_empty() {
                0
            } else {
                Matrix::from_fn(res.ring.field(), incoming.rows(), in_cols.len(), |r, c| {
                    incoming.get(r, in_cols[c]).clone()
                })
                .rank()
            };
            if ker_dim != in_rank {
                return false;
            }
        }
    }
    true
}

/// The bar resolution of k over `a`: B_n = a^{⊗(n+1)}, free of rank dim^n.
/// Exact but not small.
pub fn bar_resolution(a: &ArcAlgebra, n_max: usize) -> Resolution {
    let f = a.field();
    let d = a.dim();
    let target = ModuleOver::trivial(a.clone());
    let tuples = |n: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    (0..d).map(move |i| {
                        let mut s = t.clone();
                        s.push(i);
                        s
                    })
                })
                .collect();
        }
        out
    };
    let index = |t: &[usize]| -> usize { t.iter().fold(0, |acc, &i| acc * d + i) };

    let mut ranks = vec![1usize];
    let mut diffs = Vec::new();
    let mut aug = Matrix::zero(f, 1, d);
    for j in 0..d {
        aug.set(0, j, a.aug_row()[j].clone());
    }
    for n in 1..=n_max {
        let rank = d.pow(n as u32);
        let prev_rank = ranks[n - 1];
        let mut diff = Matrix::zero(f, prev_rank * d, rank * d);
        for (ti, t) in tuples(n).iter().enumerate() {
            // d(1 ⊗ a_{t1} ⊗ ... ⊗ a_{tn}) in B_{n-1} coordinates
            let mut image = vec![f.zero(); prev_rank * d];
            // face 0: a_{t1} becomes the module coefficient
            {
                let col = index(&t[1..]);
                image[col * d + t[0]] = image[col * d + t[0]].add(&f.one());
            }
            // interior faces
            for i in 0..n.saturating_sub(1) {
                let sign = if (i + 1) % 2 == 1 { f.from_i64(-1) } else { f.one() };
                for (k, c) in a.basis_product(t[i], t[i + 1]) {
                    let mut s = Vec::with_capacity(n - 1);
                    s.extend_from_slice(&t[..i]);
                    s.push(*k);
                    s.extend_from_slice(&t[i + 2..]);
                    let col = index(&s);
                    for (u, uc) in a.unit().iter().enumerate() {
                        if !uc.is_zero() {
                            image[col * d + u] = image[col * d + u].add(&sign.mul(&c.mul(uc)));
                        }
                    }
                }
            }
            // last face: augmentation of the last letter
            {
                let sign = if n % 2 == 1 { f.from_i64(-1) } else { f.one() };
                let eps = a.aug_row()[t[n - 1]].clone();
                if !eps.is_zero() {
                    let col = index(&t[..n - 1]);
                    for (u, uc) in a.unit().iter().enumerate() {
                        if !uc.is_zero() {
                            image[col * d + u] = image[col * d + u].add(&sign.mul(&eps.mul(uc)));
                        }
                    }
                }
            }
            for j in 0..d {
                let acted = act_free(a, prev_rank, &a.basis_vector(j), &image);
                for (r, c) in acted.into_iter().enumerate() {
                    diff.set(r, ti * d + j, c);
                }
            }
        }
        ranks.push(rank);
        diffs.push(diff);
    }
    Resolution { ring: a.clone(), target, ranks, diffs, aug, small: false }
}

fn act_free(a: &Algebra, rank: usize, elt: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let d = a.dim();
    let f = a.field();
    let mut out = vec![f.zero(); rank * d];
    for t in 0..rank {
        let slice = &v[t * d..(t + 1) * d];
        if slice.iter().all(|c| c.is_zero()) {
            continue;
        }
        for (i, c) in a.multiply(elt, slice).into_iter().enumerate() {
            out[t * d + i] = c;
        }
    }
    out
}

/// The bar resolution of `a` as a bimodule: B_n = a^{⊗(n+2)}, free over the
/// enveloping algebra of rank dim^n, with the standard face-map
/// differential and the multiplication augmentation. Exact but not small.
pub fn bar_bimodule_resolution(a: &ArcAlgebra, n_max: usize) -> (Resolution, ArcAlgebra) {
    let f = a.field();
    let d = a.dim();
    let env = Arc::new(a.enveloping());
    let target = ModuleOver::bimodule_self(a, &env);
    let tuples = |n: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    (0..d).map(move |i| {
                        let mut s = t.clone();
                        s.push(i);
                        s
                    })
                })
                .collect();
        }
        out
    };
    let index = |t: &[usize]| -> usize { t.iter().fold(0, |acc, &i| acc * d + i) };
    // B_0 = a^e -> a is multiplication
    let mut aug = Matrix::zero(f, d, d * d);
    for i in 0..d {
        for j in 0..d {
            let prod = a.multiply(&a.basis_vector(i), &a.basis_vector(j));
            for (r, c) in prod.into_iter().enumerate() {
                aug.set(r, i * d + j, c);
            }
        }
    }
    let mut ranks = vec![1usize];
    let mut diffs = Vec::new();
    let env_unit_coeff = |out: &mut Vec<Scalar>, col: usize, c: &Scalar| {
        // place c · (1⊗1) at the generator slot `col`
        for (i, ui) in a.unit().iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, uj) in a.unit().iter().enumerate() {
                if !uj.is_zero() {
                    let idx = col * d * d + i * d + j;
                    out[idx] = out[idx].add(&c.mul(&ui.mul(uj)));
                }
            }
        }
    };
    for n in 1..=n_max {
        let rank = d.pow(n as u32);
        let prev_rank = ranks[n - 1];
        let mut diff = Matrix::zero(f, prev_rank * d * d, rank * d * d);
        for (ti, t) in tuples(n).iter().enumerate() {
            // d(1 ⊗ a_{t1} ⊗ ... ⊗ a_{tn} ⊗ 1) in B_{n-1} coordinates
            let mut image = vec![f.zero(); prev_rank * d * d];
            {
                // face 0: a_{t1} moves to the left coefficient
                let col = index(&t[1..]);
                for (j, uj) in a.unit().iter().enumerate() {
                    if !uj.is_zero() {
                        let idx = col * d * d + t[0] * d + j;
                        image[idx] = image[idx].add(uj);
                    }
                }
            }
            for i in 0..n.saturating_sub(1) {
                let sign = if (i + 1) % 2 == 1 { f.from_i64(-1) } else { f.one() };
                for (k, c) in a.basis_product(t[i], t[i + 1]) {
                    let mut s = Vec::with_capacity(n - 1);
                    s.extend_from_slice(&t[..i]);
                    s.push(*k);
                    s.extend_from_slice(&t[i + 2..]);
                    env_unit_coeff(&mut image, index(&s), &sign.mul(c));
                }
            }
            {
                // last face: a_{tn} moves to the right coefficient
                let sign = if n % 2 == 1 { f.from_i64(-1) } else { f.one() };
                let col = index(&t[..n - 1]);
                for (i, ui) in a.unit().iter().enumerate() {
                    if !ui.is_zero() {
                        let idx = col * d * d + i * d + t[n - 1];
                        image[idx] = image[idx].add(&sign.mul(ui));
                    }
                }
            }
            // extend env-linearly over the generator coordinates
            for x in 0..d {
                for y in 0..d {
                    let mut env_elt = vec![f.zero(); d * d];
                    env_elt[x * d + y] = f.one();
                    let acted = act_env_free(&env, prev_rank, &env_elt, &image);
                    for (r, c) in acted.into_iter().enumerate() {
                        diff.set(r, (ti * d + x) * d + y, c);
                    }
                }
            }
        }
        ranks.push(rank);
        diffs.push(diff);
    }
    (Resolution { ring: env.clone(), target, ranks, diffs, aug, small: false }, env)
}

fn act_env_free(env: &Algebra, rank: usize, elt: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let de = env.dim();
    let f = env.field();
    let mut out = vec![f.zero(); rank * de];
    for t in 0..rank {
        let slice = &v[t * de..(t + 1) * de];
        if slice.iter().all(|c| c.is_zero()) {
            continue;
        }
        for (i, c) in env.multiply(elt, slice).into_iter().enumerate() {
            out[t * de + i] = c;
        }
    }
    out
}

/// Ω = ker(multiplication: a^e -> a) as a subspace of the enveloping
/// algebra, with the check that the differences s⊗1 - 1⊗s over algebra
/// generators s generate it as a bimodule.
pub struct OmegaBimodule {
    pub env: ArcAlgebra,
    pub subspace: Subspace,
    pub generated_by_differences: bool,
}

pub fn omega_bimodule(a: &ArcAlgebra) -> OmegaBimodule {
    let env = Arc::new(a.enveloping());
    let d = a.dim();
    let f = a.field();
    let mut mult = Matrix::zero(f, d, d * d);
    for i in 0..d {
        for j in 0..d {
            let prod = a.multiply(&a.basis_vector(i), &a.basis_vector(j));
            for (r, c) in prod.into_iter().enumerate() {
                mult.set(r, i * d + j, c);
            }
        }
    }
    let subspace = Subspace::from_spanning(&mult.kernel());
    let env_module = ModuleOver::regular(env.clone());
    let unit = a.unit().to_vec();
    let mut seeds = Vec::new();
    for g in a.ideal_generators() {
        let mut v = vec![f.zero(); d * d];
        for (i, gi) in g.iter().enumerate() {
            if gi.is_zero() {
                continue;
            }
            for (j, uj) in unit.iter().enumerate() {
                if uj.is_zero() {
                    continue;
                }
                // g⊗1 - 1⊗g
                v[i * d + j] = v[i * d + j].add(&gi.mul(uj));
                v[j * d + i] = v[j * d + i].sub(&gi.mul(uj));
            }
        }
        seeds.push(v);
    }
    let env_gens = env_algebra_generators(a);
    let closure = crate::module::module_closure(&env_module, seeds, &env_gens);
    let generated = closure == subspace;
    OmegaBimodule { env, subspace, generated_by_differences: generated }
}

/// Algebra generators of a^e: g⊗1 and 1⊗g over the ideal generators of a.
pub fn env_algebra_generators(a: &Algebra) -> Vec<Vec<Scalar>> {
    let d = a.dim();
    let f = a.field();
    let unit = a.unit().to_vec();
    let mut out = Vec::new();
    for g in a.ideal_generators() {
        let mut left = vec![f.zero(); d * d];
        let mut right = vec![f.zero(); d * d];
        for (i, gi) in g.iter().enumerate() {
            if gi.is_zero() {
                continue;
            }
            for (j, uj) in unit.iter().enumerate() {
                if uj.is_zero() {
                    continue;
                }
                left[i * d + j] = left[i * d + j].add(&gi.mul(uj));
                right[j * d + i] = right[j * d + i].add(&gi.mul(uj));
            }
        }
        out.push(left);
        out.push(right);
    }
    out
}

/// A left-linear contracting homotopy for a bimodule resolution of `a`:
/// left a-module maps s_n: P_n -> P_{n+1} with s_{-1}(x) = x⊗1,
/// d_0 s_{-1} = id and s d + d s = id, normalized so that s_0(1⊗1) = 0.
#[derive(Clone, Debug)]
pub struct LeftHomotopy {
    /// `maps[n]`: full k-matrix P_n -> P_{n+1}
    pub maps: Vec<Matrix>,
    /// s_{-1}: a -> P_0 = a^e
    pub minus_one: Matrix,
}

pub fn left_contracting_homotopy(
    a: &ArcAlgebra,
    res: &Resolution,
    up_to: usize,
) -> Result<LeftHomotopy, Error> {
    let d = a.dim();
    let env_dim = res.ring.dim();
    assert_eq!(env_dim, d * d, "homotopy requires a bimodule resolution");
    assert_eq!(res.ranks[0], 1, "bimodule resolution must start at a^e");
    let f = a.field();

    // s_{-1}: x ↦ x⊗1
    let mut minus_one = Matrix::zero(f, d * d, d);
    for i in 0..d {
        for (j, uj) in a.unit().iter().enumerate() {
            minus_one.set(i * d + j, i, uj.clone());
        }
    }

    // left basis of P_n: (t, 1⊗e_j)
    let left_basis_vec = |res: &Resolution, n: usize, t: usize, j: usize| -> Vec<Scalar> {
        let mut v = vec![f.zero(); res.term_dim(n)];
        for (i, ui) in a.unit().iter().enumerate() {
            v[t * d * d + i * d + j] = ui.clone();
        }
        v
    };

    let mut maps: Vec<Matrix> = Vec::new();
    for n in 0..=up_to {
        let dim_n = res.term_dim(n);
        let dim_next = res.term_dim(n + 1);
        let mut rhs_cols: Vec<Vec<Scalar>> = Vec::new();
        for t in 0..res.ranks[n] {
            for j in 0..d {
                let b = left_basis_vec(res, n, t, j);
                let mut rhs = b.clone();
                let correction: Vec<Scalar> = if n == 0 {
                    let m = res.aug.apply(&b);
                    minus_one.apply(&m)
                } else {
                    maps[n - 1].apply(&res.diff(n).apply(&b))
                };
                for (r, c) in rhs.iter_mut().zip(correction.iter()) {
                    *r = r.sub(c);
                }
                rhs_cols.push(rhs);
            }
        }
        let rhs = Matrix::from_fn(f, dim_n, rhs_cols.len(), |r, c| rhs_cols[c][r].clone());
        let sol = res.diff(n + 1).solve(&rhs).map_err(|_| {
            Error::Invalid(format!("homotopy solve failed at degree {n}: resolution not exact?"))
        })?;
        let mut values: Vec<Vec<Scalar>> = (0..rhs_cols.len()).map(|c| sol.col(c)).collect();
        if n == 0 {
            // normalize s_0(1⊗1) = 0
            let unit = a.unit().to_vec();
            let mut z = vec![f.zero(); dim_next];
            for (j, uj) in unit.iter().enumerate() {
                if uj.is_zero() {
                    continue;
                }
                for (r, zc) in z.iter_mut().enumerate() {
                    *zc = zc.add(&uj.mul(&values[j][r]));
                }
            }
            if let Some(jstar) = unit.iter().position(|c| !c.is_zero()) {
                let inv = unit[jstar].inv().unwrap();
                for r in 0..dim_next {
                    values[jstar][r] = values[jstar][r].sub(&inv.mul(&z[r]));
                }
            }
        }
        // assemble the full matrix: (t, e_i⊗e_j) = (e_i⊗1)·(t, 1⊗e_j)
        let mut full = Matrix::zero(f, dim_next, dim_n);
        for t in 0..res.ranks[n] {
            for i in 0..d {
                let mut env_elt = vec![f.zero(); d * d];
                for (u, uc) in a.unit().iter().enumerate() {
                    env_elt[i * d + u] = uc.clone();
                }
                for j in 0..d {
                    let base = &values[t * d + j];
                    let acted = res.act(n + 1, &env_elt, base);
                    for (r, c) in acted.into_iter().enumerate() {
                        full.set(r, t * d * d + i * d + j, c);
                    }
                }
            }
        }
        maps.push(full);
    }
    Ok(LeftHomotopy { maps, minus_one })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn minimal_resolution_of_k_over_dual_numbers() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let res = minimal_resolution(&a, &ModuleOver::trivial(a.clone()), 4).unwrap();
        assert_eq!(res.ranks, vec![1, 1, 1, 1, 1]);
        assert!(res.small);
        assert!(res.verify_exact());
        assert!(res.verify_complex());
    }

    #[test]
    fn minimal_resolution_of_k_over_x_r() {
        for r in [3, 4] {
            let a = Arc::new(Algebra::truncated_polynomial(q(), r));
            let res = minimal_resolution(&a, &ModuleOver::trivial(a.clone()), 4).unwrap();
            assert_eq!(res.ranks, vec![1, 1, 1, 1, 1], "k[x]/x^{r}");
            assert!(res.small && res.verify_exact());
        }
    }

    #[test]
    fn minimal_resolution_of_k_over_rad_square_zero_doubles() {
        let a = Arc::new(Algebra::radical_square_zero(q(), 2));
        let res = minimal_resolution(&a, &ModuleOver::trivial(a.clone()), 4).unwrap();
        assert_eq!(res.ranks, vec![1, 2, 4, 8, 16]);
        assert!(res.small && res.verify_exact());
    }

    #[test]
    fn minimal_bimodule_resolution_of_dual_numbers() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let (res, env) = minimal_bimodule_resolution(&a, 4).unwrap();
        assert_eq!(env.dim(), 4);
        assert_eq!(res.ranks, vec![1, 1, 1, 1, 1]);
        assert!(res.small && res.verify_exact());
    }

    #[test]
    fn minimal_bimodule_resolution_of_ground_field() {
        let a = Arc::new(Algebra::ground_field(q()));
        let (res, _) = minimal_bimodule_resolution(&a, 3).unwrap();
        assert_eq!(res.ranks, vec![1, 0, 0, 0]);
    }

    #[test]
    fn bar_resolution_is_exact_and_not_small() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let bar = bar_resolution(&a, 4);
        assert_eq!(bar.ranks, vec![1, 2, 4, 8, 16]);
        assert!(bar.verify_exact());
        assert!(!bar.verify_small());
        // dim B_n = dim(a)^{n+1}
        assert_eq!(bar.term_dim(3), 2usize.pow(4));
    }

    #[test]
    fn bar_resolution_differential_squares_to_zero() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 3));
        let bar = bar_resolution(&a, 3);
        assert!(bar.verify_complex());
    }

    #[test]
    fn bimodule_bar_resolution_shape_and_exactness() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let (bar, env) = bar_bimodule_resolution(&a, 4);
        // free of rank dim^n over the enveloping algebra: dim B_n = dim^{n+2}
        for n in 0..=4 {
            assert_eq!(bar.term_dim(n), a.dim().pow(n as u32 + 2));
        }
        assert!(bar.verify_complex());
        assert!(bar.verify_exact());
        assert!(!bar.verify_small());
        // B_0 -> a is multiplication
        let mut xy = vec![q().zero(); env.dim()];
        xy[1] = q().one(); // 1⊗x
        let img = bar.aug.apply(&xy);
        assert_eq!(img, a.basis_vector(1));
    }

    #[test]
    fn hh_dims_from_bimodule_bar_match_minimal() {
        use crate::cohomology::{hh_ring, hom_cohomology};
        let a = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let (bar, env) = bar_bimodule_resolution(&a, 5);
        let coeff = ModuleOver::bimodule_self(&a, &env);
        let hc = hom_cohomology(&bar, &coeff, 4);
        let bar_dims: Vec<usize> = hc.spaces.iter().map(|s| s.dim()).collect();
        let min_dims = hh_ring(&a, 4).unwrap().dims();
        assert_eq!(bar_dims, min_dims);
        // and the cochain-complex shortcut agrees too
        assert_eq!(bar_dims, crate::cohomology::hh_dims_via_bar(&a, 4));
    }

    #[test]
    fn resolution_bundle_round_trip_is_exact() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 3));
        let (res, env) = minimal_bimodule_resolution(&a, 3).unwrap();
        let bundle = res.to_json_bundle();
        let target = ModuleOver::bimodule_self(&a, &env);
        let back = Resolution::from_json_bundle(env, target, &bundle).unwrap();
        assert_eq!(back.ranks, res.ranks);
        assert_eq!(back.aug, res.aug);
        for (m1, m2) in back.diffs.iter().zip(res.diffs.iter()) {
            assert_eq!(m1, m2);
        }
        assert_eq!(back.to_json_bundle(), bundle);
    }

    #[test]
    fn omega_of_dual_numbers() {
        // dim 2, generated by x⊗1 - 1⊗x
        let a = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let om = omega_bimodule(&a);
        assert_eq!(om.subspace.dim(), 2);
        assert!(om.generated_by_differences);
    }

    #[test]
    fn omega_of_ground_field_is_zero() {
        let a = Arc::new(Algebra::ground_field(q()));
        let om = omega_bimodule(&a);
        assert_eq!(om.subspace.dim(), 0);
        assert!(om.generated_by_differences);
    }

    #[test]
    fn contracting_homotopy_identities() {
        for r in [2, 3] {
            let a = Arc::new(Algebra::truncated_polynomial(q(), r));
            let (res, _) = minimal_bimodule_resolution(&a, 4).unwrap();
            let h = left_contracting_homotopy(&a, &res, 3).unwrap();
            let f = q();
            let id_a = Matrix::identity(f, a.dim());
            assert_eq!(res.aug.mul(&h.minus_one), id_a);
            let lhs = h.minus_one.mul(&res.aug).add(&res.diff(1).mul(&h.maps[0]));
            assert_eq!(lhs, Matrix::identity(f, res.term_dim(0)));
            for n in 1..=3 {
                let lhs = h.maps[n - 1].mul(res.diff(n)).add(&res.diff(n + 1).mul(&h.maps[n]));
                assert_eq!(lhs, Matrix::identity(f, res.term_dim(n)), "degree {n}");
            }
            // normalization: s_0(1⊗1) = 0
            let d = a.dim();
            let mut one_tensor_one = vec![f.zero(); d * d];
            for (i, ui) in a.unit().iter().enumerate() {
                for (j, uj) in a.unit().iter().enumerate() {
                    one_tensor_one[i * d + j] = ui.mul(uj);
                }
            }
            assert!(h.maps[0].apply(&one_tensor_one).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn homotopy_is_left_linear() {
        let a = Arc::new(Algebra::truncated_polynomial(q(), 3));
        let (res, _) = minimal_bimodule_resolution(&a, 3).unwrap();
        let h = left_contracting_homotopy(&a, &res, 2).unwrap();
        let d = a.dim();
        let f = q();
        // x ⊗ 1 acting on the left
        let mut x_left = vec![f.zero(); d * d];
        for (j, uj) in a.unit().iter().enumerate() {
            x_left[d + j] = uj.clone();
        }
        for n in 0..=2 {
            for c in 0..res.term_dim(n) {
                let mut v = vec![f.zero(); res.term_dim(n)];
                v[c] = f.one();
                let xv = res.act(n, &x_left, &v);
                let lhs = h.maps[n].apply(&xv);
                let rhs = res.act(n + 1, &x_left, &h.maps[n].apply(&v));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
