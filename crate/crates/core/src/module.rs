//! Finite-dimensional left modules given by explicit action matrices.
//!
//! A module is a list of dim x dim matrices, one per algebra basis element,
//! acting on column vectors.  Homomorphisms are plain matrices in the same
//! column-vector convention: a map f: M -> N is a dim(N) x dim(M) matrix
//! with f * act_M(b) = act_N(b) * f for every basis element b.
//!
//! Decomposition into indecomposables runs Fitting's lemma on eigenvalues
//! of endomorphisms.  Indecomposability is certified, not guessed: the
//! non-identity part of the endomorphism ring is exhibited as a nilpotent
//! ideal of codimension one.  When neither a splitting nor a certificate
//! can be found within the search budget the failure is reported as
//! [`DecomposeError::SplitnessViolation`] rather than silently resolved.

use crate::algebra::{same_algebra, Alg, AlgebraError, SimpleId, SEARCH_BUDGET};
use crate::linalg::{IncrementalBasis, Mat, Subquotient, Subspace};
use crate::poly::{char_poly, char_poly_blocks, fp_roots};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Clone, Debug)]
pub struct ModuleRep {
    pub alg: Alg,
    pub dim: usize,
    /// One action matrix per algebra basis element.
    pub action: Vec<Mat>,
}

#[derive(Error, Debug)]
pub enum ModuleError {
    #[error("action matrices do not define a module: {0}")]
    NotAModule(String),
}

#[derive(Error, Debug)]
pub enum DecomposeError {
    #[error("could not split or certify indecomposability after {trials} eigenvalue trials")]
    SplitnessViolation { trials: usize },
}

/// Certificate that the endomorphism ring of a summand is local: the
/// span of (basis endomorphisms minus their unique eigenvalues) is a
/// multiplicatively nilpotent subspace of codimension one.
#[derive(Clone, Debug)]
pub struct LocalityCert {
    pub end_dim: usize,
    pub eigenvalues: Vec<u64>,
    pub nil_index: usize,
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub module: ModuleRep,
    /// ambient_dim x summand_dim; embeds the summand.
    pub inclusion: Mat,
    /// summand_dim x ambient_dim; projection * inclusion = identity.
    pub projection: Mat,
    pub cert: LocalityCert,
}

impl ModuleRep {
    /// Validates multiplicativity and the unit axiom.
    pub fn new(alg: &Alg, dim: usize, action: Vec<Mat>) -> Result<Self, ModuleError> {
        if action.len() != alg.dim() {
            return Err(ModuleError::NotAModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                alg.dim()
            )));
        }
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(ModuleError::NotAModule(format!("action matrix {i} is not {dim} x {dim}")));
            }
        }
        let spec = alg.spec();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let mut expected = Mat::zero(alg.p(), dim, dim);
                for (c, &coef) in spec.mult_table[i][j].iter().enumerate() {
                    if coef % alg.p() != 0 {
                        expected = expected.add(&action[c].scale(coef));
                    }
                }
                if action[i].mul(&action[j]) != expected {
                    return Err(ModuleError::NotAModule(format!("action of basis pair ({i}, {j}) is not multiplicative")));
                }
            }
        }
        let mut unit = Mat::zero(alg.p(), dim, dim);
        for &e in &spec.idempotent_indices {
            unit = unit.add(&action[e]);
        }
        if unit != Mat::identity(alg.p(), dim) {
            return Err(ModuleError::NotAModule("the unit does not act as the identity".into()));
        }
        Ok(ModuleRep { alg: alg.clone(), dim, action })
    }

    pub fn zero(alg: &Alg) -> Self {
        let action = (0..alg.dim()).map(|_| Mat::zero(alg.p(), 0, 0)).collect();
        ModuleRep { alg: alg.clone(), dim: 0, action }
    }

    pub fn p(&self) -> u64 {
        self.alg.p()
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act(&self, elt: &[u64]) -> Mat {
        let mut m = Mat::zero(self.p(), self.dim, self.dim);
        for (i, &c) in elt.iter().enumerate() {
            if c % self.p() != 0 {
                m = m.add(&self.action[i].scale(c));
            }
        }
        m
    }

    pub fn simple(alg: &Alg, s: SimpleId) -> Self {
        let e = alg.spec().idempotent_indices[s];
        let action = (0..alg.dim())
            .map(|i| if i == e { Mat::identity(alg.p(), 1) } else { Mat::zero(alg.p(), 1, 1) })
            .collect();
        ModuleRep { alg: alg.clone(), dim: 1, action }
    }

    pub fn regular(alg: &Alg) -> Self {
        ModuleRep { alg: alg.clone(), dim: alg.dim(), action: alg.left_regular().clone() }
    }

    /// The indecomposable projective A e_s.
    pub fn projective(alg: &Alg, s: SimpleId) -> Self {
        let space = alg.projective_space(s);
        let d = space.dim();
        let mut action = Vec::with_capacity(alg.dim());
        for b in 0..alg.dim() {
            let mut m = Mat::zero(alg.p(), d, d);
            for col in 0..d {
                let img = alg.mult(&alg.basis_elt(b), space.basis().row(col));
                let coords = space.coords_row(&img).expect("projective is closed under the action");
                for (r, &c) in coords.iter().enumerate() {
                    m.set(r, col, c);
                }
            }
            action.push(m);
        }
        ModuleRep { alg: alg.clone(), dim: d, action }
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> ModuleRep {
        assert!(same_algebra(&self.alg, &other.alg), "direct sum across different algebras");
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| Mat::block_diag(a, b))
            .collect();
        ModuleRep { alg: self.alg.clone(), dim: self.dim + other.dim, action }
    }

    /// Smallest submodule containing the given row vectors, with its
    /// inclusion matrix.
    pub fn submodule(&self, rows: &[Vec<u64>]) -> (ModuleRep, Mat) {
        let p = self.p();
        let mut inc = IncrementalBasis::new(p, self.dim);
        let mut queue: Vec<Vec<u64>> = rows.to_vec();
        while let Some(v) = queue.pop() {
            if inc.add(&v).is_some() {
                continue;
            }
            for b in 0..self.alg.dim() {
                let img = self.action[b].mul(&Mat::col_vec(p, &v)).col(0);
                queue.push(img);
            }
        }
        let sub = Subspace::from_spanning_rows(&Mat::from_rows(p, inc.basis_rows()));
        self.submodule_on(&sub)
    }

    /// Builds the module structure on an action-stable subspace.
    pub fn submodule_on(&self, sub: &Subspace) -> (ModuleRep, Mat) {
        let p = self.p();
        let d = sub.dim();
        let mut action = Vec::with_capacity(self.alg.dim());
        for b in 0..self.alg.dim() {
            let mut m = Mat::zero(p, d, d);
            for col in 0..d {
                let img = self.action[b].mul(&Mat::col_vec(p, sub.basis().row(col))).col(0);
                let coords = sub.coords_row(&img).expect("subspace is action-stable");
                for (r, &c) in coords.iter().enumerate() {
                    m.set(r, col, c);
                }
            }
            action.push(m);
        }
        let inclusion = Mat::from_fn(p, self.dim, d, |r, c| sub.basis().at(c, r));
        (ModuleRep { alg: self.alg.clone(), dim: d, action }, inclusion)
    }

    /// Quotient by an action-stable subspace, with the projection matrix.
    pub fn quotient(&self, sub: &Subspace) -> (ModuleRep, Mat) {
        let p = self.p();
        let total = Subspace::from_spanning_rows(&Mat::identity(p, self.dim));
        let sq = Subquotient::new(&total, sub);
        let d = sq.dim();
        let mut projection = Mat::zero(p, d, self.dim);
        for c in 0..self.dim {
            let mut unit = vec![0u64; self.dim];
            unit[c] = 1;
            let coords = sq.reduce_row(&unit);
            for (r, &v) in coords.iter().enumerate() {
                projection.set(r, c, v);
            }
        }
        let mut action = Vec::with_capacity(self.alg.dim());
        for b in 0..self.alg.dim() {
            let mut m = Mat::zero(p, d, d);
            for col in 0..d {
                let img = self.action[b].mul(&Mat::col_vec(p, sq.reps().row(col))).col(0);
                let coords = sq.reduce_row(&img);
                for (r, &v) in coords.iter().enumerate() {
                    m.set(r, col, v);
                }
            }
            action.push(m);
        }
        (ModuleRep { alg: self.alg.clone(), dim: d, action }, projection)
    }

    /// Row space of J * M.
    pub fn radical_subspace(&self) -> Subspace {
        let p = self.p();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for &r in &self.alg.spec().radical_indices {
            for c in 0..self.dim {
                rows.push(self.action[r].col(c));
            }
        }
        if rows.is_empty() {
            rows.push(vec![0; self.dim]);
        }
        Subspace::from_spanning_rows(&Mat::from_rows(p, &rows))
    }

    /// Elements killed by the radical, as a row space.
    pub fn socle_subspace(&self) -> Subspace {
        let p = self.p();
        let rad = &self.alg.spec().radical_indices;
        let mut stacked = Mat::zero(p, rad.len() * self.dim, self.dim);
        for (k, &r) in rad.iter().enumerate() {
            for row in 0..self.dim {
                for col in 0..self.dim {
                    stacked.set(k * self.dim + row, col, self.action[r].at(row, col));
                }
            }
        }
        Subspace::from_spanning_rows(&stacked.kernel_basis())
    }

    pub fn radical(&self) -> (ModuleRep, Mat) {
        self.submodule_on(&self.radical_subspace())
    }

    pub fn top(&self) -> (ModuleRep, Mat) {
        self.quotient(&self.radical_subspace())
    }

    pub fn socle(&self) -> (ModuleRep, Mat) {
        self.submodule_on(&self.socle_subspace())
    }

    /// Multiplicity of each simple in M / JM.
    pub fn top_multiplicities(&self) -> Vec<usize> {
        let (top, _) = self.top();
        (0..self.alg.n_simples())
            .map(|s| top.act(&self.alg.idempotent_elt(s)).rank())
            .collect()
    }
}

/// Basis of Hom(M, N) as matrices, in a deterministic order.
pub fn hom_basis(m: &ModuleRep, n: &ModuleRep) -> Vec<Mat> {
    assert!(same_algebra(&m.alg, &n.alg), "hom across different algebras");
    let p = m.p();
    let (dm, dn) = (m.dim, n.dim);
    if dm == 0 || dn == 0 {
        return Vec::new();
    }
    let idx = |r: usize, c: usize| r * dm + c;
    let mut eqs: Vec<Vec<u64>> = Vec::new();
    for b in 0..m.alg.dim() {
        // f * act_M(b) - act_N(b) * f = 0, entry by entry.
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vec![0u64; dn * dm];
                for k in 0..dm {
                    row[idx(r, k)] = crate::linalg::fp_add(p, row[idx(r, k)], m.action[b].at(k, c));
                }
                for k in 0..dn {
                    let cur = row[idx(k, c)];
                    row[idx(k, c)] = crate::linalg::fp_sub(p, cur, n.action[b].at(r, k));
                }
                eqs.push(row);
            }
        }
    }
    let sol = Mat::from_rows(p, &eqs).kernel_basis();
    (0..sol.rows())
        .map(|i| Mat::from_fn(p, dn, dm, |r, c| sol.at(i, idx(r, c))))
        .collect()
}

pub fn hom_dim(m: &ModuleRep, n: &ModuleRep) -> usize {
    hom_basis(m, n).len()
}

pub fn is_module_map(m: &ModuleRep, n: &ModuleRep, f: &Mat) -> bool {
    f.rows() == n.dim
        && f.cols() == m.dim
        && (0..m.alg.dim()).all(|b| f.mul(&m.action[b]) == n.action[b].mul(f))
}

/// Dimension of the maps M -> N that factor through a projective module.
/// Every such map factors through the projective cover of N.
pub fn projectively_trivial_dim(m: &ModuleRep, n: &ModuleRep) -> usize {
    let p = m.p();
    let (cover_mod, cover_map) = projective_cover(n);
    let through = hom_basis(m, &cover_mod);
    if through.is_empty() || m.dim == 0 || n.dim == 0 {
        return 0;
    }
    let rows: Vec<Vec<u64>> = through.iter().map(|h| flat(&cover_map.mul(h))).collect();
    Subspace::from_spanning_rows(&Mat::from_rows(p, &rows)).dim()
}

pub fn stable_hom_dim(m: &ModuleRep, n: &ModuleRep) -> usize {
    hom_dim(m, n) - projectively_trivial_dim(m, n)
}

/// Projective cover P(M) -> M: one copy of P_s per simple summand of the
/// top, mapped onto lifted top generators.
pub fn projective_cover(m: &ModuleRep) -> (ModuleRep, Mat) {
    let alg = &m.alg;
    let p = m.p();
    let rad = m.radical_subspace();
    let total = Subspace::from_spanning_rows(&Mat::identity(p, m.dim));
    let sq = Subquotient::new(&total, &rad);
    // Each top generator must be supported on a single idempotent, so split
    // the chosen representatives by e_s and keep those whose classes stay
    // independent.
    let mut cover = ModuleRep::zero(alg);
    let mut columns: Vec<Vec<u64>> = Vec::new();
    let mut gen_rows: Vec<(SimpleId, Vec<u64>)> = Vec::new();
    let mut seen = IncrementalBasis::new(p, sq.dim());
    for s in 0..alg.n_simples() {
        let es = m.act(&alg.idempotent_elt(s));
        for i in 0..sq.dim() {
            let v = es.mul(&Mat::col_vec(p, sq.reps().row(i))).col(0);
            let class = sq.reduce_row(&v);
            if class.iter().all(|&c| c == 0) || seen.add(&class).is_some() {
                continue;
            }
            gen_rows.push((s, v));
        }
    }
    for (s, v) in &gen_rows {
        let ps = ModuleRep::projective(alg, *s);
        let space = alg.projective_space(*s);
        // Column for each basis vector of P_s: its image b * v in M.
        for col in 0..space.dim() {
            let act = m.act(space.basis().row(col));
            columns.push(act.mul(&Mat::col_vec(p, v)).col(0));
        }
        cover = cover.direct_sum(&ps);
    }
    let mut map = Mat::zero(p, m.dim, cover.dim);
    for (c, colv) in columns.iter().enumerate() {
        for (r, &x) in colv.iter().enumerate() {
            map.set(r, c, x);
        }
    }
    debug_assert!(is_module_map(&cover, m, &map));
    debug_assert_eq!(map.rank(), m.dim, "cover must be surjective");
    (cover, map)
}

/// Kernel of the projective cover, as a module with its inclusion into the
/// cover.
pub fn syzygy(m: &ModuleRep) -> ModuleRep {
    let (cover, map) = projective_cover(m);
    let ker = map.kernel_basis();
    let sub = Subspace::from_spanning_rows(&ker);
    let (omega, _inc) = cover.submodule_on(&sub);
    omega
}

/// Dual module over the opposite algebra: actions transpose.
pub fn dual(m: &ModuleRep) -> ModuleRep {
    let op = m.alg.opposite();
    let action = m.action.iter().map(|a| a.transpose()).collect();
    ModuleRep { alg: op, dim: m.dim, action }
}

/// Transports a map along duality: f: M -> N gives D(f): D(N) -> D(M).
pub fn dual_hom(f: &Mat) -> Mat {
    f.transpose()
}

/// Hom(M, A) as a module over the opposite algebra, with the hom basis it
/// was computed from.
pub fn star(m: &ModuleRep) -> (ModuleRep, Vec<Mat>) {
    let alg = &m.alg;
    let p = m.p();
    let reg = ModuleRep::regular(alg);
    let homs = hom_basis(m, &reg);
    let d = homs.len();
    let op = alg.opposite();
    if d == 0 {
        return (ModuleRep::zero(&op), homs);
    }
    // Coordinates must come back over the hom basis in its own order, so
    // grow an incremental basis from the raw hom matrices.
    let mut coords = IncrementalBasis::new(p, m.dim * alg.dim());
    for h in &homs {
        let dep = coords.add(&flat(h));
        debug_assert!(dep.is_none(), "hom basis elements are independent");
    }
    let mut action = Vec::with_capacity(alg.dim());
    for b in 0..alg.dim() {
        // (f . b)(x) = f(x) * b, i.e. postcompose with right multiplication.
        let rb = alg.right_mult_mat(&alg.basis_elt(b));
        let mut mat = Mat::zero(p, d, d);
        for col in 0..d {
            let img = rb.mul(&homs[col]);
            let cs = coords.express(&flat(&img)).expect("right action preserves the hom space");
            for (r, &c) in cs.iter().enumerate() {
                mat.set(r, col, c);
            }
        }
        action.push(mat);
    }
    (ModuleRep { alg: op, dim: d, action }, homs)
}

/// Nakayama functor on modules: nu(M) = D Hom(M, A).
pub fn nakayama_module(m: &ModuleRep) -> ModuleRep {
    let (st, _) = star(m);
    dual(&st)
}

/// Inverse Nakayama functor: Hom over the opposite algebra applied to the
/// dual, landing back over the original algebra.
pub fn nakayama_inverse_module(m: &ModuleRep) -> ModuleRep {
    let (st, _) = star(&dual(m));
    st
}

/// Cosyzygy through the duality: the syzygy over the opposite algebra of
/// the dual, dualized back.
pub fn cosyzygy(m: &ModuleRep) -> ModuleRep {
    dual(&syzygy(&dual(m)))
}

/// The Nakayama functor on a map, in the canonical bases produced by
/// [`nakayama_module`] on both ends.
pub fn nakayama_hom(m: &ModuleRep, n: &ModuleRep, f: &Mat) -> Mat {
    debug_assert!(is_module_map(m, n, f));
    let p = m.p();
    let reg = ModuleRep::regular(&m.alg);
    let homs_m = hom_basis(m, &reg);
    let homs_n = hom_basis(n, &reg);
    let mut coords_m = IncrementalBasis::new(p, m.dim * m.alg.dim());
    for h in &homs_m {
        coords_m.add(&flat(h));
    }
    // star is contravariant: g in Hom(N, A) pulls back to g o f in Hom(M, A).
    let mut star_f = Mat::zero(p, homs_m.len(), homs_n.len());
    for (col, g) in homs_n.iter().enumerate() {
        let pulled = g.mul(f);
        let cs = coords_m.express(&flat(&pulled)).expect("pullback lies in the hom space");
        for (r, &c) in cs.iter().enumerate() {
            star_f.set(r, col, c);
        }
    }
    // Dualizing transposes, restoring covariance.
    star_f.transpose()
}

/// Searches hom bases for an explicit isomorphism between two certified
/// indecomposables; the pairwise composite test is exact for local
/// endomorphism rings.
pub fn explicit_iso(m: &ModuleRep, n: &ModuleRep) -> Option<Mat> {
    if m.dim != n.dim {
        return None;
    }
    let fwd = hom_basis(m, n);
    let bwd = hom_basis(n, m);
    for f in &fwd {
        for g in &bwd {
            if g.mul(f).is_invertible() {
                return Some(f.clone());
            }
        }
    }
    None
}

/// Realization of the Nakayama functor on projectives, computed once per
/// algebra.  Requires self-injectivity.
pub fn nu_data(alg: &Alg) -> Result<&crate::algebra::NuData, AlgebraError> {
    alg.nakayama_permutation()?;
    Ok(alg.nu_cell.get_or_init(|| build_nu_data(alg)))
}

fn build_nu_data(alg: &Alg) -> crate::algebra::NuData {
    let perm = alg.nakayama_permutation().expect("checked by caller").clone();
    let ns = alg.n_simples();
    let p = alg.p();
    let mut entry_maps: Vec<Vec<Mat>> = Vec::with_capacity(ns);
    if alg.is_symmetric() {
        // A symmetrizing form makes nu naturally isomorphic to the
        // identity; realize it as such.
        assert!(perm.iter().enumerate().all(|(i, &pi)| i == pi), "symmetric algebra with nontrivial Nakayama permutation");
        for i in 0..ns {
            entry_maps.push((0..ns).map(|j| Mat::identity(p, alg.corner(i, j).dim())).collect());
        }
    } else {
        let projs: Vec<ModuleRep> = (0..ns).map(|s| ModuleRep::projective(alg, s)).collect();
        let nus: Vec<ModuleRep> = projs.iter().map(nakayama_module).collect();
        let alphas: Vec<Mat> = (0..ns)
            .map(|i| explicit_iso(&nus[i], &projs[perm[i]]).expect("nu(P_i) is the projective with socle S_i"))
            .collect();
        for i in 0..ns {
            let mut row = Vec::with_capacity(ns);
            for j in 0..ns {
                let corner_ij = alg.corner(i, j);
                let corner_pi = alg.corner(perm[i], perm[j]);
                let gen = alg
                    .projective_space(perm[i])
                    .coords_row(&alg.idempotent_elt(perm[i]))
                    .expect("the idempotent generates its projective");
                let mut map = Mat::zero(p, corner_pi.dim(), corner_ij.dim());
                for col in 0..corner_ij.dim() {
                    let w = corner_ij.basis().row(col);
                    // Right multiplication by w as a flat map P_i -> P_j.
                    let f = right_mult_flat(alg, i, j, w);
                    let nu_f = nakayama_hom(&projs[i], &projs[j], &f);
                    let transported = alphas[j]
                        .mul(&nu_f)
                        .mul(&alphas[i].inverse().expect("alpha is an isomorphism"));
                    let img = transported.mul(&Mat::col_vec(p, &gen)).col(0);
                    // Convert from P_{perm(j)} coordinates to an algebra element.
                    let mut elt = alg.zero_elt();
                    for (k, &c) in img.iter().enumerate() {
                        if c != 0 {
                            elt = alg.elt_add(&elt, &alg.elt_scale(c, alg.projective_space(perm[j]).basis().row(k)));
                        }
                    }
                    let cs = corner_pi.coords_row(&elt).expect("transported entry lands in the permuted corner");
                    for (r, &c) in cs.iter().enumerate() {
                        map.set(r, col, c);
                    }
                }
                assert!(map.is_invertible(), "nu must be bijective on corners");
                row.push(map);
            }
            entry_maps.push(row);
        }
    }
    let mut inv_perm = vec![0; ns];
    for (i, &pi) in perm.iter().enumerate() {
        inv_perm[pi] = i;
    }
    // inv_entry_maps[i][j] undoes entry_maps[i][j]; callers index through
    // inv_perm to walk the permutation backwards.
    let inv_entry_maps: Vec<Vec<Mat>> = entry_maps
        .iter()
        .map(|row| row.iter().map(|m| m.inverse().expect("corner map inverts")).collect())
        .collect();
    crate::algebra::NuData { perm, entry_maps, inv_perm, inv_entry_maps }
}

/// Flat matrix of right multiplication by w in e_i A e_j, as a module map
/// P_i -> P_j.
pub fn right_mult_flat(alg: &Alg, i: SimpleId, j: SimpleId, w: &[u64]) -> Mat {
    let p = alg.p();
    let src = alg.projective_space(i);
    let dst = alg.projective_space(j);
    let mut f = Mat::zero(p, dst.dim(), src.dim());
    for col in 0..src.dim() {
        let img = alg.mult(src.basis().row(col), w);
        let cs = dst.coords_row(&img).expect("right multiplication lands in the target projective");
        for (r, &c) in cs.iter().enumerate() {
            f.set(r, col, c);
        }
    }
    f
}

/// Applies a corner map of [`crate::algebra::NuData`] to an algebra element
/// of the corner e_i A e_j.
pub fn apply_corner_map(alg: &Alg, map: &Mat, i: SimpleId, j: SimpleId, ti: SimpleId, tj: SimpleId, w: &[u64]) -> crate::algebra::AlgElt {
    let src = alg.corner(i, j);
    let dst = alg.corner(ti, tj);
    let cs = src.coords_row(w).expect("element outside its declared corner");
    let out = map.mul(&Mat::col_vec(alg.p(), &cs)).col(0);
    let mut elt = alg.zero_elt();
    for (k, &c) in out.iter().enumerate() {
        if c != 0 {
            elt = alg.elt_add(&elt, &alg.elt_scale(c, dst.basis().row(k)));
        }
    }
    elt
}

/// Heart of the projective P_s: Rad P_s / Soc P_s.  Requires the algebra
/// to be self-injective and P_s non-simple.
pub fn heart(alg: &Alg, s: SimpleId) -> Result<ModuleRep, AlgebraError> {
    alg.nakayama_permutation()?;
    let ps = ModuleRep::projective(alg, s);
    if ps.dim == 1 {
        return Err(AlgebraError::SimpleProjective(s));
    }
    // Soc P_s sits inside Rad P_s because P_s is not simple.
    let rad_space = ps.radical_subspace();
    let (radm, _) = ps.submodule_on(&rad_space);
    let soc = ps.socle_subspace();
    let soc_in_rad: Vec<Vec<u64>> = (0..soc.dim())
        .map(|i| rad_space.coords_row(soc.basis().row(i)).expect("socle lies in the radical"))
        .collect();
    let sub = Subspace::from_spanning_rows(&Mat::from_rows(alg.p(), &soc_in_rad));
    let (h, _) = radm.quotient(&sub);
    Ok(h)
}

/// Uniserial module of dimension d over a truncated polynomial algebra:
/// x acts as the nilpotent shift.
pub fn uniserial(alg: &Alg, d: usize) -> ModuleRep {
    assert!(alg.n_simples() == 1, "uniserial fixture expects a local algebra");
    assert!(d >= 1 && d < alg.loewy_length() + 1);
    let p = alg.p();
    let shift = Mat::from_fn(p, d, d, |r, c| u64::from(r == c + 1));
    let mut action = Vec::with_capacity(alg.dim());
    for b in 0..alg.dim() {
        // Basis element x^k acts as shift^k; the idempotent is x^0.
        action.push(shift.pow(b));
    }
    ModuleRep { alg: alg.clone(), dim: d, action }
}

/// Endomorphism data for Fitting decomposition and locality certificates.
fn end_basis(m: &ModuleRep) -> Vec<Mat> {
    hom_basis(m, m)
}

pub(crate) fn flat(h: &Mat) -> Vec<u64> {
    (0..h.rows()).flat_map(|r| (0..h.cols()).map(move |c| h.at(r, c))).collect()
}

/// Flattened coordinates of a block-diagonal endomorphism held as its
/// diagonal blocks.
pub(crate) fn flat_blocks(blocks: &[Mat]) -> Vec<u64> {
    blocks.iter().flat_map(|b| flat(b)).collect()
}

/// Tries to certify that the span of the given endomorphisms is closed
/// under multiplication into a nilpotent system: powers of the span must
/// shrink to zero.  Each power is represented by a basis, and products
/// are filtered through an incremental basis as they are produced so
/// only independent ones are ever held.
fn span_is_nilpotent(p: u64, total: usize, gens: &[Vec<Mat>]) -> Option<usize> {
    if gens.is_empty() {
        return Some(1);
    }
    let flat_len: usize = gens[0].iter().map(|b| b.rows() * b.cols()).sum();
    let mut prev_dim = {
        let mut inc = IncrementalBasis::new(p, flat_len);
        for g in gens {
            inc.add(&flat_blocks(g));
        }
        inc.dim()
    };
    let mut current: Vec<Vec<Mat>> = gens.to_vec();
    let mut index = 1;
    loop {
        if current.iter().all(|m| m.iter().all(|b| b.is_zero())) {
            return Some(index);
        }
        if index > total * total + 1 {
            return None;
        }
        let mut inc = IncrementalBasis::new(p, flat_len);
        let mut next: Vec<Vec<Mat>> = Vec::new();
        for a in &current {
            for g in gens {
                let prod: Vec<Mat> = a.iter().zip(g).map(|(x, y)| x.mul(y)).collect();
                if inc.add(&flat_blocks(&prod)).is_none() {
                    next.push(prod);
                }
            }
        }
        if inc.dim() == 0 {
            return Some(index + 1);
        }
        if inc.dim() >= prev_dim {
            return None;
        }
        prev_dim = inc.dim();
        current = next;
        index += 1;
    }
}

/// Certifies End(M) local by exhibiting the complement of the identity as
/// a nilpotent span of codimension one.
fn certify_local(m: &ModuleRep) -> Option<LocalityCert> {
    let wrapped: Vec<Vec<Mat>> = end_basis(m).into_iter().map(|e| vec![e]).collect();
    certify_local_blocks(m.p(), &wrapped)
}

/// Same certificate for any endomorphism algebra handed in as a matrix
/// basis.  Each endomorphism is a list of diagonal blocks so chain
/// endomorphisms, which are block diagonal over the degrees, never pay
/// for their zero off-diagonal entries; a plain endomorphism is a single
/// block.
pub(crate) fn certify_local_blocks(p: u64, ends: &[Vec<Mat>]) -> Option<LocalityCert> {
    let Some(first) = ends.first() else {
        return None;
    };
    let total: usize = first.iter().map(|b| b.rows()).sum();
    let mut eigenvalues = Vec::with_capacity(ends.len());
    let mut shifted: Vec<Vec<Mat>> = Vec::with_capacity(ends.len());
    for e in ends {
        let roots = fp_roots(p, &char_poly_blocks(p, e));
        if roots.len() != 1 {
            return None;
        }
        let lam = roots[0];
        let s: Vec<Mat> =
            e.iter().map(|b| b.sub(&Mat::identity(p, b.rows()).scale(lam))).collect();
        if !s.iter().all(|b| b.is_nilpotent()) {
            return None;
        }
        eigenvalues.push(lam);
        shifted.push(s);
    }
    // The shifted span must miss the identity and have codimension one.
    let rows: Vec<Vec<u64>> = shifted.iter().map(|s| flat_blocks(s)).collect();
    let span = Subspace::from_spanning_rows(&Mat::from_rows(p, &rows));
    if span.dim() + 1 != ends.len() {
        return None;
    }
    let id: Vec<Mat> = first.iter().map(|b| Mat::identity(p, b.rows())).collect();
    if span.contains_row(&flat_blocks(&id)) {
        return None;
    }
    let nil_index = span_is_nilpotent(p, total, &shifted)?;
    Some(LocalityCert { end_dim: ends.len(), eigenvalues, nil_index })
}

/// Splits off a Fitting pair from an endomorphism with at least two
/// eigenvalues, or returns None when phi provides no splitting.
fn fitting_split(m: &ModuleRep, phi: &Mat) -> Option<(Subspace, Subspace)> {
    let p = m.p();
    let roots = fp_roots(p, &char_poly(phi));
    if roots.len() < 2 {
        return None;
    }
    let shifted = phi.sub(&Mat::identity(p, m.dim).scale(roots[0]));
    let power = shifted.pow(m.dim);
    let ker = Subspace::from_spanning_rows(&power.kernel_basis());
    let im_rows: Vec<Vec<u64>> = (0..m.dim).map(|c| power.col(c)).collect();
    let im = Subspace::from_spanning_rows(&Mat::from_rows(p, &im_rows));
    if ker.dim() == 0 || im.dim() == 0 || ker.dim() + im.dim() != m.dim {
        return None;
    }
    Some((ker, im))
}

/// Full decomposition into indecomposable summands with locality
/// certificates.  Deterministic for a fixed seed.
pub fn decompose(m: &ModuleRep, seed: u64) -> Result<Vec<Summand>, DecomposeError> {
    let p = m.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d6f64);
    let mut out: Vec<Summand> = Vec::new();
    // Stack of (module, inclusion into the original M, projection back).
    let mut stack: Vec<(ModuleRep, Mat, Mat)> =
        vec![(m.clone(), Mat::identity(p, m.dim), Mat::identity(p, m.dim))];
    while let Some((cur, inc, proj)) = stack.pop() {
        if cur.dim == 0 {
            continue;
        }
        if let Some(cert) = certify_local(&cur) {
            out.push(Summand { module: cur, inclusion: inc, projection: proj, cert });
            continue;
        }
        let ends = end_basis(&cur);
        let mut split = ends.iter().find_map(|e| fitting_split(&cur, e));
        let mut trials = 0;
        while split.is_none() && trials < SEARCH_BUDGET {
            let mut combo = Mat::zero(p, cur.dim, cur.dim);
            for e in &ends {
                combo = combo.add(&e.scale(rng.gen_range(0..p)));
            }
            split = fitting_split(&cur, &combo);
            trials += 1;
        }
        let Some((ker, im)) = split else {
            return Err(DecomposeError::SplitnessViolation { trials });
        };
        for (part, other) in [(&ker, &im), (&im, &ker)] {
            let (sub, sub_inc) = cur.submodule_on(part);
            let sub_proj = projection_along(part, other);
            let new_inc = inc.mul(&sub_inc);
            let new_proj = sub_proj.mul(&proj);
            stack.push((sub, new_inc, new_proj));
        }
    }
    // Deterministic output order: by dimension, then by inclusion matrix.
    out.sort_by(|a, b| {
        a.module.dim.cmp(&b.module.dim).then_with(|| flat(&a.inclusion).cmp(&flat(&b.inclusion)))
    });
    for s in &out {
        debug_assert_eq!(s.projection.mul(&s.inclusion), Mat::identity(p, s.module.dim));
        debug_assert!(is_module_map(&s.module, m, &s.inclusion));
        debug_assert!(is_module_map(m, &s.module, &s.projection));
    }
    Ok(out)
}

/// Projection onto `part` along `other`, where the two subspaces are
/// complementary and both action-stable; the result is then a module map.
pub(crate) fn projection_along(part: &Subspace, other: &Subspace) -> Mat {
    let d = part.dim();
    let full = part.basis().vstack(other.basis()).transpose();
    let inv = full.inverse().expect("Fitting pieces span the ambient space");
    inv.submatrix(0, d, 0, full.cols())
}

/// Exact isomorphism test for certified-indecomposable modules: some
/// composite of hom basis elements must be invertible.
pub fn indecomposables_isomorphic(m: &ModuleRep, n: &ModuleRep) -> bool {
    if m.dim == 0 && n.dim == 0 {
        return true;
    }
    explicit_iso(m, n).is_some()
}

/// Isomorphism test for arbitrary modules via decomposition and summand
/// matching.
pub fn is_isomorphic(m: &ModuleRep, n: &ModuleRep, seed: u64) -> Result<bool, DecomposeError> {
    if m.dim != n.dim {
        return Ok(false);
    }
    let ms = decompose(m, seed)?;
    let ns = decompose(n, seed)?;
    if ms.len() != ns.len() {
        return Ok(false);
    }
    let mut used = vec![false; ns.len()];
    for a in &ms {
        let mut matched = false;
        for (i, b) in ns.iter().enumerate() {
            if !used[i] && indecomposables_isomorphic(&a.module, &b.module) {
                used[i] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}
