//! Split basic finite-dimensional algebras presented by structure constants.
//!
//! An algebra arrives as a multiplication table over a labelled basis that is
//! adapted to the radical: every basis element is either one of a complete
//! set of orthogonal primitive idempotents or lies in the Jacobson radical.
//! `AlgebraSpec::validate` checks all of that (associativity, unit, radical
//! ideal and nilpotency, splitness) and produces a [`ValidatedAlgebra`]
//! carrying the derived data the rest of the crate consumes: regular
//! representations, projective and corner bases, the Cartan matrix, socles,
//! the Nakayama permutation when the algebra is self-injective, and a
//! symmetrizing form when one can be certified.
//!
//! Simple modules are numbered by the position of their idempotent in
//! `idempotent_indices`; a [`SimpleId`] is that position, not a basis index.

use crate::linalg::{fp_add, is_prime, Mat, Subspace, MAX_PRIME};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

/// Element of the algebra as a coefficient vector over the declared basis.
pub type AlgElt = Vec<u64>;

/// Index of a simple module, equivalently of a primitive idempotent.
pub type SimpleId = usize;

/// Shared handle to a validated algebra.
pub type Alg = Arc<ValidatedAlgebra>;

/// How many random combinations the nondegenerate-form and isomorphism
/// searches try before giving up.
pub const SEARCH_BUDGET: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub p: u64,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub idempotent_indices: Vec<usize>,
    pub radical_indices: Vec<usize>,
    /// mult_table[i][j] = coefficients of b_i * b_j over the basis.
    pub mult_table: Vec<Vec<AlgElt>>,
}

#[derive(Error, Debug)]
pub enum AlgebraError {
    #[error("({i} * {j}) * {k} != {i} * ({j} * {k}) in the multiplication table")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("the sum of the declared idempotents is not a two-sided unit")]
    NoUnit,
    #[error("basis element {i} times radical element {r} leaves the radical span")]
    RadicalNotIdeal { i: usize, r: usize },
    #[error("the span of the declared radical elements is not nilpotent")]
    RadicalNotNilpotent,
    #[error("idempotent basis elements {i} and {j} violate the split basic structure")]
    NotSplitBasic { i: usize, j: usize },
    #[error("characteristic {0} is not a prime in [2, 2^31 - 1]")]
    BadCharacteristic(u64),
    #[error("malformed algebra description: {0}")]
    Malformed(String),
    #[error("algebra is not self-injective (projective {0} breaks the socle condition)")]
    NotSelfInjective(SimpleId),
    #[error("projective module of simple {0} is itself simple")]
    SimpleProjective(SimpleId),
}

/// Socle data of one indecomposable projective: the simple it is isomorphic
/// to and a spanning element inside the algebra.
#[derive(Clone, Debug)]
pub struct SocleInfo {
    pub simple: SimpleId,
    pub generator: AlgElt,
}

/// Matrices realizing the Nakayama functor on projectives: a permutation pi
/// with nu(P_j) = P_{pi(j)}, plus for each corner e_i A e_j the induced
/// linear map into e_{pi(i)} A e_{pi(j)} written in corner coordinates.
#[derive(Debug)]
pub struct NuData {
    pub perm: Vec<SimpleId>,
    pub entry_maps: Vec<Vec<Mat>>,
    pub inv_perm: Vec<SimpleId>,
    pub inv_entry_maps: Vec<Vec<Mat>>,
}

#[derive(Debug)]
pub struct ValidatedAlgebra {
    spec: AlgebraSpec,
    /// Smallest l with J^l = 0; equals the Loewy length.
    radical_nilpotency: usize,
    cartan: Vec<Vec<usize>>,
    nakayama_perm: Option<Vec<SimpleId>>,
    symmetrizing_form: Option<Mat>,
    left_regular: Vec<Mat>,
    right_regular: Vec<Mat>,
    proj_bases: Vec<Subspace>,
    corner_bases: Vec<Vec<Subspace>>,
    socles: Option<Vec<SocleInfo>>,
    self_injective_failure: Option<SimpleId>,
    has_semisimple_summand: bool,
    is_self_injective: bool,
    is_symmetric: bool,
    pub(crate) nu_cell: OnceLock<NuData>,
    opposite_cell: OnceLock<Alg>,
}

impl AlgebraSpec {
    pub fn validate(self) -> Result<Alg, AlgebraError> {
        let spec = self;
        if !is_prime(spec.p) || spec.p > MAX_PRIME {
            return Err(AlgebraError::BadCharacteristic(spec.p));
        }
        let n = spec.dim;
        if n == 0 {
            return Err(AlgebraError::Malformed("zero-dimensional algebra".into()));
        }
        if spec.basis_labels.len() != n {
            return Err(AlgebraError::Malformed(format!("{} labels for dimension {n}", spec.basis_labels.len())));
        }
        if spec.mult_table.len() != n || spec.mult_table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(AlgebraError::Malformed("multiplication table is not dim x dim x dim".into()));
        }
        let mut seen = vec![false; n];
        for &i in spec.idempotent_indices.iter().chain(spec.radical_indices.iter()) {
            if i >= n || seen[i] {
                return Err(AlgebraError::Malformed(format!("basis index {i} repeated or out of range")));
            }
            seen[i] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(AlgebraError::Malformed("every basis element must be an idempotent or a radical element".into()));
        }
        if spec.idempotent_indices.is_empty() {
            return Err(AlgebraError::NoUnit);
        }

        let p = spec.p;
        let mult = |a: &[u64], b: &[u64]| -> AlgElt {
            let mut out = vec![0u64; n];
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (j, &bj) in b.iter().enumerate() {
                    if bj == 0 {
                        continue;
                    }
                    let f = ai * bj % p;
                    for (c, o) in out.iter_mut().enumerate() {
                        *o = fp_add(p, *o, f * (spec.mult_table[i][j][c] % p) % p);
                    }
                }
            }
            out
        };
        let basis_elt = |i: usize| -> AlgElt {
            let mut v = vec![0u64; n];
            v[i] = 1;
            v
        };

        // Associativity on all basis triples.
        for i in 0..n {
            for j in 0..n {
                let ij = mult(&basis_elt(i), &basis_elt(j));
                for k in 0..n {
                    let left = mult(&ij, &basis_elt(k));
                    let right = mult(&basis_elt(i), &mult(&basis_elt(j), &basis_elt(k)));
                    if left != right {
                        return Err(AlgebraError::NotAssociative { i, j, k });
                    }
                }
            }
        }

        // Declared idempotents must be orthogonal idempotents.
        for (a, &ia) in spec.idempotent_indices.iter().enumerate() {
            for (b, &ib) in spec.idempotent_indices.iter().enumerate() {
                let prod = mult(&basis_elt(ia), &basis_elt(ib));
                let expected = if a == b { basis_elt(ia) } else { vec![0; n] };
                if prod != expected {
                    return Err(AlgebraError::NotSplitBasic { i: ia, j: ib });
                }
            }
        }

        // Their sum must be the unit.
        let mut unit = vec![0u64; n];
        for &ia in &spec.idempotent_indices {
            unit[ia] = 1;
        }
        for i in 0..n {
            if mult(&unit, &basis_elt(i)) != basis_elt(i) || mult(&basis_elt(i), &unit) != basis_elt(i) {
                return Err(AlgebraError::NoUnit);
            }
        }

        // The radical span must be a two-sided ideal...
        let in_radical_span = |v: &AlgElt| -> bool {
            v.iter().enumerate().all(|(c, &x)| x % p == 0 || spec.radical_indices.contains(&c))
        };
        for &r in &spec.radical_indices {
            for i in 0..n {
                if !in_radical_span(&mult(&basis_elt(i), &basis_elt(r))) {
                    return Err(AlgebraError::RadicalNotIdeal { i, r });
                }
                if !in_radical_span(&mult(&basis_elt(r), &basis_elt(i))) {
                    return Err(AlgebraError::RadicalNotIdeal { i, r });
                }
            }
        }

        // ...and nilpotent.  Power up the subspace until it dies; if the
        // dimension ever fails to drop we are stuck on an idempotent part.
        let mut radical_nilpotency = 1;
        let mut power: Vec<AlgElt> = spec.radical_indices.iter().map(|&r| basis_elt(r)).collect();
        loop {
            let span = Subspace::from_spanning_rows(&Mat::from_rows(p, &power));
            if span.dim() == 0 {
                break;
            }
            let mut next: Vec<AlgElt> = Vec::new();
            for i in 0..span.dim() {
                for &r in &spec.radical_indices {
                    next.push(mult(span.basis().row(i), &basis_elt(r)));
                }
            }
            if next.is_empty() {
                next.push(vec![0; n]);
            }
            let next_span = Subspace::from_spanning_rows(&Mat::from_rows(p, &next));
            if next_span.dim() >= span.dim() {
                return Err(AlgebraError::RadicalNotNilpotent);
            }
            radical_nilpotency += 1;
            power = (0..next_span.dim()).map(|i| next_span.basis().row(i).to_vec()).collect();
            if power.is_empty() {
                break;
            }
        }

        // Splitness: modulo the radical the corners must be e_i A e_j = delta_ij k.
        let n_simples = spec.idempotent_indices.len();
        for s in 0..n_simples {
            for t in 0..n_simples {
                let es = basis_elt(spec.idempotent_indices[s]);
                let et = basis_elt(spec.idempotent_indices[t]);
                let mut projected: Vec<AlgElt> = Vec::new();
                for b in 0..n {
                    let mut v = mult(&es, &mult(&basis_elt(b), &et));
                    for &r in &spec.radical_indices {
                        v[r] = 0;
                    }
                    projected.push(v);
                }
                let d = Subspace::from_spanning_rows(&Mat::from_rows(p, &projected)).dim();
                let expected = usize::from(s == t);
                if d != expected {
                    return Err(AlgebraError::NotSplitBasic { i: spec.idempotent_indices[s], j: spec.idempotent_indices[t] });
                }
            }
        }

        // Regular representations.
        let left_regular: Vec<Mat> =
            (0..n).map(|i| Mat::from_fn(p, n, n, |c, j| spec.mult_table[i][j][c])).collect();
        let right_regular: Vec<Mat> =
            (0..n).map(|i| Mat::from_fn(p, n, n, |c, j| spec.mult_table[j][i][c])).collect();

        // Bases of the projectives A e_s and the corners e_s A e_t.
        let mut proj_bases = Vec::with_capacity(n_simples);
        for s in 0..n_simples {
            let es = basis_elt(spec.idempotent_indices[s]);
            let rows: Vec<AlgElt> = (0..n).map(|b| mult(&basis_elt(b), &es)).collect();
            proj_bases.push(Subspace::from_spanning_rows(&Mat::from_rows(p, &rows)));
        }
        let mut corner_bases = Vec::with_capacity(n_simples);
        for s in 0..n_simples {
            let es = basis_elt(spec.idempotent_indices[s]);
            let mut row = Vec::with_capacity(n_simples);
            for t in 0..n_simples {
                let et = basis_elt(spec.idempotent_indices[t]);
                let rows: Vec<AlgElt> = (0..n).map(|b| mult(&es, &mult(&basis_elt(b), &et))).collect();
                row.push(Subspace::from_spanning_rows(&Mat::from_rows(p, &rows)));
            }
            corner_bases.push(row);
        }
        let cartan: Vec<Vec<usize>> =
            (0..n_simples).map(|s| (0..n_simples).map(|t| corner_bases[s][t].dim()).collect()).collect();

        let has_semisimple_summand = proj_bases.iter().any(|b| b.dim() == 1);

        // Socles: soc(A e_s) = elements of A e_s killed by the radical.
        let mut socles: Vec<Option<SocleInfo>> = Vec::with_capacity(n_simples);
        for s in 0..n_simples {
            let pb = &proj_bases[s];
            let d = pb.dim();
            // Stack radical left actions expressed on the projective's basis.
            let mut rows: Vec<Vec<u64>> = Vec::new();
            for &r in &spec.radical_indices {
                for col in 0..d {
                    let img = mult(&basis_elt(r), pb.basis().row(col));
                    rows.push(img);
                }
                // rows currently hold images in ambient coords, one per basis
                // vector of the projective; convert to a d x d action block.
            }
            let mut stacked = Mat::zero(p, spec.radical_indices.len() * d, d);
            for (ri, _) in spec.radical_indices.iter().enumerate() {
                for col in 0..d {
                    let img = &rows[ri * d + col];
                    let coords = pb.coords_row(img).expect("radical action leaves the projective");
                    for (rr, &cv) in coords.iter().enumerate() {
                        stacked.set(ri * d + rr, col, cv);
                    }
                }
            }
            let ker = stacked.kernel_basis();
            if ker.rows() != 1 {
                socles.push(None);
                continue;
            }
            // Lift the socle vector back to algebra coordinates.
            let mut gen = vec![0u64; n];
            for col in 0..d {
                let c = ker.at(0, col);
                if c == 0 {
                    continue;
                }
                for (g, &bv) in gen.iter_mut().zip(pb.basis().row(col)) {
                    *g = fp_add(p, *g, c * bv % p);
                }
            }
            // The simple on top of the socle is the idempotent fixing it.
            let top = (0..n_simples).find(|&t| mult(&basis_elt(spec.idempotent_indices[t]), &gen) == gen);
            match top {
                Some(t) => socles.push(Some(SocleInfo { simple: t, generator: gen })),
                None => socles.push(None),
            }
        }
        let mut nakayama_perm = None;
        let mut socle_infos = None;
        let mut is_self_injective = false;
        let mut self_injective_failure = socles.iter().position(|s| s.is_none());
        if self_injective_failure.is_none() {
            let infos: Vec<SocleInfo> = socles.into_iter().map(|s| s.unwrap()).collect();
            let mut perm = vec![usize::MAX; n_simples];
            for (i, info) in infos.iter().enumerate() {
                if perm[info.simple] != usize::MAX {
                    self_injective_failure = Some(i);
                    break;
                }
                perm[info.simple] = i;
            }
            if self_injective_failure.is_none() {
                is_self_injective = true;
                nakayama_perm = Some(perm);
                socle_infos = Some(infos);
            }
        }

        let symmetrizing_form = find_symmetrizing_form(&spec, &mult);
        let is_symmetric = symmetrizing_form.is_some();

        Ok(Arc::new(ValidatedAlgebra {
            spec,
            radical_nilpotency,
            cartan,
            nakayama_perm,
            symmetrizing_form,
            left_regular,
            right_regular,
            proj_bases,
            corner_bases,
            socles: socle_infos,
            self_injective_failure,
            has_semisimple_summand,
            is_self_injective,
            is_symmetric,
            nu_cell: OnceLock::new(),
            opposite_cell: OnceLock::new(),
        }))
    }
}

/// Solve the linear system for symmetric associative bilinear forms, then
/// look for a nondegenerate point in the solution space: each basis form
/// first, then up to [`SEARCH_BUDGET`] seeded random combinations.
fn find_symmetrizing_form(spec: &AlgebraSpec, mult: &impl Fn(&[u64], &[u64]) -> AlgElt) -> Option<Mat> {
    let n = spec.dim;
    let p = spec.p;
    let basis_elt = |i: usize| -> AlgElt {
        let mut v = vec![0u64; n];
        v[i] = 1;
        v
    };
    let idx = |r: usize, c: usize| r * n + c;
    let mut eqs: Vec<Vec<u64>> = Vec::new();
    // Symmetry: G[i][j] = G[j][i].
    for i in 0..n {
        for j in (i + 1)..n {
            let mut row = vec![0u64; n * n];
            row[idx(i, j)] = 1;
            row[idx(j, i)] = p - 1;
            eqs.push(row);
        }
    }
    // Associativity: G(b_i b_j, b_k) = G(b_i, b_j b_k).
    for i in 0..n {
        for j in 0..n {
            let ij = mult(&basis_elt(i), &basis_elt(j));
            for k in 0..n {
                let jk = mult(&basis_elt(j), &basis_elt(k));
                let mut row = vec![0u64; n * n];
                for c in 0..n {
                    row[idx(c, k)] = fp_add(p, row[idx(c, k)], ij[c]);
                }
                for c in 0..n {
                    let cur = row[idx(i, c)];
                    row[idx(i, c)] = crate::linalg::fp_sub(p, cur, jk[c]);
                }
                eqs.push(row);
            }
        }
    }
    let sol = Mat::from_rows(p, &eqs).kernel_basis();
    if sol.rows() == 0 {
        return None;
    }
    let to_mat = |v: &[u64]| Mat::from_fn(p, n, n, |r, c| v[idx(r, c)]);
    for i in 0..sol.rows() {
        let g = to_mat(sol.row(i));
        if g.is_invertible() {
            return Some(g);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x666f726d); // "form"
    for _ in 0..SEARCH_BUDGET {
        let mut v = vec![0u64; n * n];
        for i in 0..sol.rows() {
            let c = rng.gen_range(0..p);
            for (vv, &sv) in v.iter_mut().zip(sol.row(i)) {
                *vv = fp_add(p, *vv, c * sv % p);
            }
        }
        let g = to_mat(&v);
        if g.is_invertible() {
            return Some(g);
        }
    }
    None
}

impl ValidatedAlgebra {
    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn n_simples(&self) -> usize {
        self.spec.idempotent_indices.len()
    }

    /// Smallest l with J^l = 0.
    pub fn loewy_length(&self) -> usize {
        self.radical_nilpotency
    }

    pub fn cartan_matrix(&self) -> &Vec<Vec<usize>> {
        &self.cartan
    }

    pub fn has_semisimple_summand(&self) -> bool {
        self.has_semisimple_summand
    }

    pub fn is_self_injective(&self) -> bool {
        self.is_self_injective
    }

    /// True when a nondegenerate symmetric associative form was certified.
    pub fn is_symmetric(&self) -> bool {
        self.is_symmetric
    }

    pub fn symmetrizing_form(&self) -> Option<&Mat> {
        self.symmetrizing_form.as_ref()
    }

    /// pi with soc(P_{pi(j)}) = S_j, equivalently nu(P_j) = P_{pi(j)}.
    pub fn nakayama_permutation(&self) -> Result<&Vec<SimpleId>, AlgebraError> {
        match &self.nakayama_perm {
            Some(p) => Ok(p),
            None => Err(AlgebraError::NotSelfInjective(self.self_injective_failure.unwrap_or(0))),
        }
    }

    /// Socle data of P_s; present exactly when the algebra is self-injective.
    pub fn socle_info(&self, s: SimpleId) -> Option<&SocleInfo> {
        self.socles.as_ref().map(|v| &v[s])
    }

    pub fn left_regular(&self) -> &Vec<Mat> {
        &self.left_regular
    }

    pub fn right_regular(&self) -> &Vec<Mat> {
        &self.right_regular
    }

    /// Row basis of A e_s inside the algebra.
    pub fn projective_space(&self, s: SimpleId) -> &Subspace {
        &self.proj_bases[s]
    }

    /// Row basis of the corner e_s A e_t.
    pub fn corner(&self, s: SimpleId, t: SimpleId) -> &Subspace {
        &self.corner_bases[s][t]
    }

    pub fn basis_elt(&self, i: usize) -> AlgElt {
        let mut v = vec![0u64; self.dim()];
        v[i] = 1;
        v
    }

    pub fn idempotent_elt(&self, s: SimpleId) -> AlgElt {
        self.basis_elt(self.spec.idempotent_indices[s])
    }

    pub fn unit_elt(&self) -> AlgElt {
        let mut v = vec![0u64; self.dim()];
        for &i in &self.spec.idempotent_indices {
            v[i] = 1;
        }
        v
    }

    pub fn zero_elt(&self) -> AlgElt {
        vec![0; self.dim()]
    }

    pub fn mult(&self, a: &[u64], b: &[u64]) -> AlgElt {
        let p = self.p();
        let n = self.dim();
        let mut out = vec![0u64; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let f = ai * bj % p;
                for (c, o) in out.iter_mut().enumerate() {
                    *o = fp_add(p, *o, f * self.spec.mult_table[i][j][c] % p);
                }
            }
        }
        out
    }

    pub fn elt_add(&self, a: &[u64], b: &[u64]) -> AlgElt {
        a.iter().zip(b).map(|(&x, &y)| fp_add(self.p(), x % self.p(), y % self.p())).collect()
    }

    pub fn elt_scale(&self, c: u64, a: &[u64]) -> AlgElt {
        a.iter().map(|&x| x * (c % self.p()) % self.p()).collect()
    }

    pub fn elt_neg(&self, a: &[u64]) -> AlgElt {
        a.iter().map(|&x| crate::linalg::fp_neg(self.p(), x % self.p())).collect()
    }

    /// Left multiplication matrix of an arbitrary element.
    pub fn left_mult_mat(&self, a: &[u64]) -> Mat {
        let mut m = Mat::zero(self.p(), self.dim(), self.dim());
        for (i, &ai) in a.iter().enumerate() {
            if ai % self.p() != 0 {
                m = m.add(&self.left_regular[i].scale(ai));
            }
        }
        m
    }

    pub fn right_mult_mat(&self, a: &[u64]) -> Mat {
        let mut m = Mat::zero(self.p(), self.dim(), self.dim());
        for (i, &ai) in a.iter().enumerate() {
            if ai % self.p() != 0 {
                m = m.add(&self.right_regular[i].scale(ai));
            }
        }
        m
    }

    /// True when the element lies in the radical span, i.e. has no support
    /// on idempotent coordinates.
    pub fn elt_in_radical(&self, a: &[u64]) -> bool {
        self.spec.idempotent_indices.iter().all(|&i| a[i] % self.p() == 0)
    }

    /// An element of e_i A e_i is a unit of that corner iff its coefficient
    /// at e_i survives; for i != j every corner element is radical.
    pub fn corner_elt_is_unit(&self, i: SimpleId, j: SimpleId, a: &[u64]) -> bool {
        i == j && a[self.spec.idempotent_indices[i]] % self.p() != 0
    }

    /// Inverse of a unit u in the local corner algebra e_i A e_i.
    pub fn corner_inverse(&self, i: SimpleId, u: &[u64]) -> AlgElt {
        let corner = self.corner(i, i);
        let d = corner.dim();
        let p = self.p();
        // Solve x * u = e_i inside the corner.
        let mut sys = Mat::zero(p, self.dim(), d);
        for col in 0..d {
            let prod = self.mult(corner.basis().row(col), u);
            for r in 0..self.dim() {
                sys.set(r, col, prod[r]);
            }
        }
        let rhs = Mat::col_vec(p, &self.idempotent_elt(i));
        let sol = sys.solve(&rhs).expect("corner unit has no inverse");
        let mut inv = self.zero_elt();
        for col in 0..d {
            let c = sol.at(col, 0);
            if c != 0 {
                inv = self.elt_add(&inv, &self.elt_scale(c, corner.basis().row(col)));
            }
        }
        debug_assert_eq!(self.mult(&inv, u), self.idempotent_elt(i));
        debug_assert_eq!(self.mult(u, &inv), self.idempotent_elt(i));
        inv
    }

    /// The opposite algebra, with the multiplication table transposed.
    /// Taking the opposite twice returns the original handle.
    pub fn opposite(self: &Arc<Self>) -> Alg {
        self.opposite_cell
            .get_or_init(|| {
                let spec = &self.spec;
                let mut mult = vec![vec![vec![0u64; spec.dim]; spec.dim]; spec.dim];
                for i in 0..spec.dim {
                    for j in 0..spec.dim {
                        mult[i][j] = spec.mult_table[j][i].clone();
                    }
                }
                let op = AlgebraSpec {
                    name: format!("{}^op", spec.name),
                    p: spec.p,
                    dim: spec.dim,
                    basis_labels: spec.basis_labels.clone(),
                    idempotent_indices: spec.idempotent_indices.clone(),
                    radical_indices: spec.radical_indices.clone(),
                    mult_table: mult,
                }
                .validate()
                .expect("opposite of a validated algebra validates");
                let _ = op.opposite_cell.set(self.clone());
                op
            })
            .clone()
    }
}

/// Two handles denote the same algebra: pointer equality or equal
/// presentations.  The name is a label and does not participate.
pub fn same_algebra(a: &Alg, b: &Alg) -> bool {
    Arc::ptr_eq(a, b)
        || (a.spec.p == b.spec.p
            && a.spec.dim == b.spec.dim
            && a.spec.idempotent_indices == b.spec.idempotent_indices
            && a.spec.radical_indices == b.spec.radical_indices
            && a.spec.mult_table == b.spec.mult_table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn a3_validates_with_expected_invariants() {
        let a3 = fixtures::a3();
        assert_eq!(a3.loewy_length(), 3);
        assert!(a3.is_self_injective());
        assert!(a3.is_symmetric());
        assert!(!a3.has_semisimple_summand());
        assert_eq!(a3.cartan_matrix(), &vec![vec![3]]);
        assert_eq!(a3.nakayama_permutation().unwrap(), &vec![0]);
    }

    #[test]
    fn a5_is_symmetric_local_of_loewy_length_5() {
        let a5 = fixtures::a5();
        assert_eq!(a5.loewy_length(), 5);
        assert!(a5.is_symmetric());
        assert_eq!(a5.n_simples(), 1);
    }

    #[test]
    fn nakayama_permutation_of_n22_is_the_transposition() {
        let n22 = fixtures::n22();
        assert!(n22.is_self_injective());
        assert!(!n22.is_symmetric());
        assert_eq!(n22.nakayama_permutation().unwrap(), &vec![1, 0]);
        assert_eq!(n22.loewy_length(), 2);
    }

    #[test]
    fn path_algebra_of_a2_is_not_self_injective() {
        let qa2 = fixtures::qa2();
        assert!(!qa2.is_self_injective());
        assert!(matches!(qa2.nakayama_permutation(), Err(AlgebraError::NotSelfInjective(_))));
        assert!(qa2.symmetrizing_form().is_none());
        assert!(qa2.has_semisimple_summand());
    }

    #[test]
    fn symmetrizing_form_of_a3_pairs_complementary_powers() {
        let a3 = fixtures::a3();
        let g = a3.symmetrizing_form().unwrap().clone();
        assert!(g.is_invertible());
        assert_eq!(g, g.transpose());
        // form(x^a, x^b) depends only on a + b, and the top pairing is nonzero.
        assert_eq!(g.at(0, 1), g.at(1, 0));
        assert_eq!(g.at(0, 2), g.at(1, 1));
        assert_ne!(g.at(0, 2), 0);
        // Associativity spot check: form(x * x, x) = form(x, x * x).
        let x = a3.basis_elt(1);
        let xx = a3.mult(&x, &x);
        let pair = |u: &[u64], v: &[u64]| {
            let mut acc = 0u64;
            for i in 0..3 {
                for j in 0..3 {
                    acc = fp_add(2, acc, u[i] * v[j] % 2 * g.at(i, j) % 2);
                }
            }
            acc
        };
        assert_eq!(pair(&xx, &x), pair(&x, &xx));
    }

    #[test]
    fn missing_unit_is_reported() {
        let spec = AlgebraSpec {
            name: "nounit".into(),
            p: 2,
            dim: 1,
            basis_labels: vec!["r".into()],
            idempotent_indices: vec![],
            radical_indices: vec![0],
            mult_table: vec![vec![vec![0]]],
        };
        assert!(matches!(spec.validate(), Err(AlgebraError::NoUnit)));
    }

    #[test]
    fn idempotent_radical_element_is_rejected() {
        // k x k presented on the basis 1, f with f idempotent but
        // mislabelled radical: its span is an ideal yet never nilpotent.
        let spec = AlgebraSpec {
            name: "notnilpotent".into(),
            p: 3,
            dim: 2,
            basis_labels: vec!["1".into(), "f".into()],
            idempotent_indices: vec![0],
            radical_indices: vec![1],
            mult_table: vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![0, 1]],
            ],
        };
        assert!(matches!(spec.validate(), Err(AlgebraError::RadicalNotNilpotent)));
    }

    #[test]
    fn radical_escaping_its_span_is_rejected() {
        // F_4 as an F_2-algebra: w^2 = 1 + w leaves the span of w.
        let spec = AlgebraSpec {
            name: "f4".into(),
            p: 2,
            dim: 2,
            basis_labels: vec!["1".into(), "w".into()],
            idempotent_indices: vec![0],
            radical_indices: vec![1],
            mult_table: vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![1, 1]],
            ],
        };
        assert!(matches!(spec.validate(), Err(AlgebraError::RadicalNotIdeal { .. })));
    }

    #[test]
    fn non_orthogonal_idempotents_are_rejected() {
        // Basis 1, e with e^2 = e: both idempotent, but 1 * e = e != 0.
        let spec = AlgebraSpec {
            name: "overlap".into(),
            p: 2,
            dim: 2,
            basis_labels: vec!["1".into(), "e".into()],
            idempotent_indices: vec![0, 1],
            radical_indices: vec![],
            mult_table: vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![0, 1]],
            ],
        };
        assert!(matches!(spec.validate(), Err(AlgebraError::NotSplitBasic { .. })));
    }

    #[test]
    fn broken_associativity_is_rejected() {
        let mut spec = fixtures::a3_spec();
        // x * x = 1 + x^2 wrecks (x x) x = x (x x).
        spec.mult_table[1][1] = vec![1, 0, 1];
        assert!(matches!(spec.validate(), Err(AlgebraError::NotAssociative { .. })));
    }

    #[test]
    fn composite_characteristic_is_rejected() {
        let mut spec = fixtures::a3_spec();
        spec.p = 6;
        assert!(matches!(spec.validate(), Err(AlgebraError::BadCharacteristic(6))));
    }

    #[test]
    fn opposite_of_n22_swaps_the_arrow_corners() {
        let n22 = fixtures::n22();
        let op = n22.opposite();
        assert_eq!(op.corner(0, 1).dim(), n22.corner(1, 0).dim());
        assert!(op.is_self_injective());
    }

    #[test]
    fn socle_generators_span_one_dimensional_socles() {
        let a5 = fixtures::a5();
        let info = a5.socle_info(0).unwrap();
        assert_eq!(info.simple, 0);
        // The socle of k[X]/(X^5) is spanned by x^4.
        assert_eq!(info.generator, vec![0, 0, 0, 0, 1]);
        let x = a5.basis_elt(1);
        assert_eq!(a5.mult(&x, &info.generator), a5.zero_elt());
    }
}
