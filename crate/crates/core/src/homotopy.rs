//! Homotopy-category operations on perfect complexes: minimization,
//! Hom spaces with their null-homotopic subspaces, decomposition into
//! indecomposable summands, isomorphism tests, and truncated minimal
//! resolutions.
//!
//! A perfect complex is homotopy equivalent to a minimal one (all
//! differential entries in the radical), unique up to strict
//! isomorphism.  Everything here reduces questions in the homotopy
//! category to strict linear algebra on minimal representatives: a
//! null-homotopic endomorphism of a minimal complex has all entries in
//! the radical, hence is nilpotent, so locality of the strict
//! endomorphism ring and locality modulo homotopy agree.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{same_algebra, Alg, SimpleId, SEARCH_BUDGET};
use crate::complex::{types_of_cover, AlgMat, ChainMap, ComplexError, PerfectComplex};
use crate::linalg::{Mat, Subquotient, Subspace};
use crate::module::{
    self, certify_local_blocks, explicit_iso, projection_along, DecomposeError, LocalityCert,
    ModuleRep,
};
use crate::poly::{char_poly_blocks, fp_roots};

#[derive(Error, Debug)]
pub enum HomotopyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Split(#[from] DecomposeError),
    #[error("cannot resolve the zero module")]
    ZeroModule,
}

/// A minimal representative together with the homotopy equivalence
/// relating it to the input: `include` embeds the minimal complex,
/// `project` retracts onto it, and `include.then(project)` is the
/// identity on the minimal complex strictly.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub complex: PerfectComplex,
    pub include: ChainMap,
    pub project: ChainMap,
}

/// Strips unit entries from the differentials until all of them lie in
/// the radical.  Each strike cancels a projective pair across adjacent
/// degrees, so the total dimension strictly decreases and the loop
/// terminates.
pub fn minimize(c: &PerfectComplex) -> Minimized {
    let mut cur = c.clone();
    let mut include = ChainMap::identity(&cur);
    let mut project = ChainMap::identity(&cur);
    while let Some((n, ra, cb)) = find_unit_entry(&cur) {
        let (next, step_inc, step_proj) = strike(&cur, n, ra, cb);
        include = step_inc.then(&include);
        project = project.then(&step_proj);
        cur = next;
    }
    // Recompose endpoints so the maps reference the caller's complex.
    let include = ChainMap::new(
        cur.clone(),
        c.clone(),
        cur.degrees().iter().map(|&n| (n, include.mat(n))).collect(),
    )
    .expect("minimization inclusion is a chain map");
    let project = ChainMap::new(
        c.clone(),
        cur.clone(),
        c.degrees().iter().map(|&n| (n, project.mat(n))).collect(),
    )
    .expect("minimization retraction is a chain map");
    Minimized { complex: cur, include, project }
}

/// First differential entry that is a unit in its corner, scanning
/// degrees in ascending order and entries lexicographically.
fn find_unit_entry(c: &PerfectComplex) -> Option<(i64, usize, usize)> {
    for n in c.degrees() {
        let d = c.diff(n);
        for a in 0..d.src.len() {
            for b in 0..d.dst.len() {
                if c.alg.corner_elt_is_unit(d.src[a], d.dst[b], &d.entries[a][b]) {
                    return Some((n, a, b));
                }
            }
        }
    }
    None
}

/// Cancels the unit entry at (row `ra`, column `cb`) of the degree-`n`
/// differential by a change of basis, removing one summand from degree
/// n and one from degree n-1.  Returns the smaller complex with the
/// inclusion into and retraction from the input.
fn strike(c: &PerfectComplex, n: i64, ra: usize, cb: usize) -> (PerfectComplex, ChainMap, ChainMap) {
    let alg = &c.alg;
    let d = c.diff(n);
    let uinv = alg.corner_inverse(d.src[ra], &d.entries[ra][cb]);
    let keep_src: Vec<usize> = (0..d.src.len()).filter(|&a| a != ra).collect();
    let keep_dst: Vec<usize> = (0..d.dst.len()).filter(|&b| b != cb).collect();
    let src_types: Vec<SimpleId> = keep_src.iter().map(|&a| d.src[a]).collect();
    let dst_types: Vec<SimpleId> = keep_dst.iter().map(|&b| d.dst[b]).collect();

    let mut terms: BTreeMap<i64, Vec<SimpleId>> = BTreeMap::new();
    for m in c.degrees() {
        terms.insert(m, c.term(m).to_vec());
    }
    terms.insert(n, src_types.clone());
    terms.insert(n - 1, dst_types.clone());

    let mut diffs: BTreeMap<i64, AlgMat> = BTreeMap::new();
    for m in c.degrees() {
        if m == n || m == n + 1 || m == n - 1 {
            continue;
        }
        let dm = c.diff(m);
        if !dm.src.is_empty() && !dm.dst.is_empty() {
            diffs.insert(m, dm);
        }
    }
    // Schur complement at the struck entry.
    let mut entries = Vec::with_capacity(keep_src.len());
    for &a in &keep_src {
        let mut row = Vec::with_capacity(keep_dst.len());
        for &b in &keep_dst {
            let via = alg.mult(&alg.mult(&d.entries[a][cb], &uinv), &d.entries[ra][b]);
            row.push(alg.elt_add(&d.entries[a][b], &alg.elt_neg(&via)));
        }
        entries.push(row);
    }
    diffs.insert(
        n,
        AlgMat::new(alg, src_types.clone(), dst_types.clone(), entries)
            .expect("struck differential stays in its corners"),
    );
    // The incoming differential drops the struck column; the outgoing
    // one drops the struck row.
    let up = c.diff(n + 1).select(&(0..c.term(n + 1).len()).collect::<Vec<_>>(), &keep_src);
    diffs.insert(n + 1, up);
    let down = c.diff(n - 1).select(&keep_dst, &(0..c.term(n - 2).len()).collect::<Vec<_>>());
    diffs.insert(n - 1, down);
    let next = PerfectComplex::new(alg, terms, diffs).expect("striking a unit preserves d*d = 0");

    // Inclusion of the smaller complex: identity off the struck rows,
    // with a correction into the struck summand at degree n.
    let mut inc_mats: BTreeMap<i64, AlgMat> = BTreeMap::new();
    let mut proj_mats: BTreeMap<i64, AlgMat> = BTreeMap::new();
    for m in c.degrees() {
        if m == n || m == n - 1 {
            continue;
        }
        let idm = AlgMat::identity(alg, c.term(m));
        inc_mats.insert(m, idm.clone());
        proj_mats.insert(m, idm);
    }
    let mut inc_n = AlgMat::zero(alg, src_types.clone(), d.src.clone());
    for (j, &a) in keep_src.iter().enumerate() {
        inc_n.entries[j][a] = alg.idempotent_elt(d.src[a]);
        inc_n.entries[j][ra] = alg.elt_neg(&alg.mult(&d.entries[a][cb], &uinv));
    }
    inc_mats.insert(n, inc_n);
    let mut inc_n1 = AlgMat::zero(alg, dst_types.clone(), d.dst.clone());
    for (j, &b) in keep_dst.iter().enumerate() {
        inc_n1.entries[j][b] = alg.idempotent_elt(d.dst[b]);
    }
    inc_mats.insert(n - 1, inc_n1);

    let mut proj_n = AlgMat::zero(alg, d.src.clone(), src_types.clone());
    for (j, &a) in keep_src.iter().enumerate() {
        proj_n.entries[a][j] = alg.idempotent_elt(d.src[a]);
    }
    proj_mats.insert(n, proj_n);
    let mut proj_n1 = AlgMat::zero(alg, d.dst.clone(), dst_types.clone());
    for (j, &b) in keep_dst.iter().enumerate() {
        proj_n1.entries[b][j] = alg.idempotent_elt(d.dst[b]);
        proj_n1.entries[cb][j] = alg.elt_neg(&alg.mult(&uinv, &d.entries[ra][b]));
    }
    proj_mats.insert(n - 1, proj_n1);

    let inc = ChainMap::new(next.clone(), c.clone(), inc_mats).expect("strike inclusion is a chain map");
    let proj = ChainMap::new(c.clone(), next.clone(), proj_mats).expect("strike retraction is a chain map");
    (next, inc, proj)
}

/// One block of unknowns in the chain-map coordinate system: the entry
/// of a degree-`n` map from summand `a` of the source to summand `b` of
/// the target, expressed over the corner basis.
#[derive(Clone, Debug)]
struct Slot {
    n: i64,
    a: usize,
    b: usize,
    dim: usize,
    offset: usize,
}

/// Hom space between two complexes in the homotopy category: the space
/// of degree-0 chain maps together with its subspace of null-homotopic
/// ones, both in a shared coordinate system indexed by corner entries.
pub struct HomSpace {
    from: PerfectComplex,
    to: PerfectComplex,
    slots: Vec<Slot>,
    total: usize,
    chain: Subspace,
    boundaries: Subspace,
}

/// Computes Hom in the homotopy category as two nested solution spaces:
/// chain maps are the kernel of the commutation constraints, and
/// null-homotopic maps are the image of the homotopy boundary operator
/// h |-> dh + hd.
pub fn hom_space(cfrom: &PerfectComplex, cto: &PerfectComplex) -> Result<HomSpace, ComplexError> {
    if !same_algebra(&cfrom.alg, &cto.alg) {
        return Err(ComplexError::AlgebraMismatch);
    }
    let alg = cfrom.alg.clone();
    let p = alg.p();
    let mut slots: Vec<Slot> = Vec::new();
    let mut total = 0;
    for n in cfrom.degrees() {
        let src = cfrom.term(n);
        let dst = cto.term(n);
        for (a, &i) in src.iter().enumerate() {
            for (b, &j) in dst.iter().enumerate() {
                let d = alg.corner(i, j).dim();
                if d > 0 {
                    slots.push(Slot { n, a, b, dim: d, offset: total });
                    total += d;
                }
            }
        }
    }
    let slot_at = |n: i64, a: usize, b: usize| -> Option<&Slot> {
        slots.iter().find(|s| s.n == n && s.a == a && s.b == b)
    };

    // Commutation constraints f_n d^to_n = d^from_n f_{n-1}, one block
    // of algebra coordinates per (degree, source row, target column).
    let mut cbase: BTreeMap<i64, usize> = BTreeMap::new();
    let mut crows = 0;
    for n in cfrom.degrees() {
        if !cfrom.term(n).is_empty() && !cto.term(n - 1).is_empty() {
            cbase.insert(n, crows);
            crows += cfrom.term(n).len() * cto.term(n - 1).len() * alg.dim();
        }
    }
    let mut constraints = Mat::zero(p, crows, total);
    let row_base = |n: i64, a: usize, bp: usize| -> Option<usize> {
        cbase.get(&n).map(|&base| base + (a * cto.term(n - 1).len() + bp) * alg.dim())
    };
    let d_from = |n: i64| cfrom.diff(n);
    let d_to = |n: i64| cto.diff(n);
    for s in &slots {
        let corner = alg.corner(cfrom.term(s.n)[s.a], cto.term(s.n)[s.b]);
        for v in 0..s.dim {
            let w = corner.basis().row(v).to_vec();
            let col = s.offset + v;
            // f_n entry (a, b) feeds f_n d^to_n at (a, b') for every b'.
            let dt = d_to(s.n);
            for bp in 0..cto.term(s.n - 1).len() {
                if let Some(base) = row_base(s.n, s.a, bp) {
                    let prod = alg.mult(&w, &dt.entries[s.b][bp]);
                    for (k, &coef) in prod.iter().enumerate() {
                        if coef != 0 {
                            constraints.set(base + k, col, coef);
                        }
                    }
                }
            }
            // The same entry feeds d^from_{n+1} f_n at (a', b) negated.
            let df = d_from(s.n + 1);
            for ap in 0..cfrom.term(s.n + 1).len() {
                if let Some(base) = row_base(s.n + 1, ap, s.b) {
                    let prod = alg.mult(&df.entries[ap][s.a], &w);
                    for (k, &coef) in prod.iter().enumerate() {
                        if coef != 0 {
                            constraints.set(base + k, col, (p - coef) % p);
                        }
                    }
                }
            }
        }
    }
    let chain = Subspace::from_spanning_rows(&constraints.kernel_basis());

    // Boundary vectors: one homotopy component h_n: from_n -> to_{n+1}
    // per corner basis element, pushed through h |-> h d + d h.
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for n in cfrom.degrees() {
        let src = cfrom.term(n);
        let dst = cto.term(n + 1);
        for (a, &i) in src.iter().enumerate() {
            for (b, &j) in dst.iter().enumerate() {
                let corner = alg.corner(i, j);
                for v in 0..corner.dim() {
                    let w = corner.basis().row(v).to_vec();
                    let mut vec = vec![0u64; total];
                    let dt = d_to(n + 1);
                    for bp in 0..cto.term(n).len() {
                        let prod = alg.mult(&w, &dt.entries[b][bp]);
                        add_slot_coords(&alg, &mut vec, slot_at(n, a, bp), cfrom.term(n)[a], cto.term(n)[bp], &prod);
                    }
                    let df = d_from(n + 1);
                    for ap in 0..cfrom.term(n + 1).len() {
                        let prod = alg.mult(&df.entries[ap][a], &w);
                        add_slot_coords(&alg, &mut vec, slot_at(n + 1, ap, b), cfrom.term(n + 1)[ap], cto.term(n + 1)[b], &prod);
                    }
                    if vec.iter().any(|&c| c != 0) {
                        rows.push(vec);
                    }
                }
            }
        }
    }
    let boundaries = if rows.is_empty() {
        Subspace::zero(p, total)
    } else {
        Subspace::from_spanning_rows(&Mat::from_rows(p, &rows))
    };
    debug_assert!(chain.contains(&boundaries), "boundaries must be chain maps");
    Ok(HomSpace { from: cfrom.clone(), to: cto.clone(), slots, total, chain, boundaries })
}

/// Adds an algebra element to a boundary vector in the coordinates of
/// one slot.  A product landing in a zero corner must itself be zero.
fn add_slot_coords(alg: &Alg, vec: &mut Vec<u64>, slot: Option<&Slot>, i: SimpleId, j: SimpleId, elt: &[u64]) {
    let p = alg.p();
    if elt.iter().all(|&c| c % p == 0) {
        return;
    }
    let s = slot.expect("nonzero corner product must have a slot");
    let cs = alg.corner(i, j).coords_row(elt).expect("product lies in its corner");
    for (k, &c) in cs.iter().enumerate() {
        vec[s.offset + k] = (vec[s.offset + k] + c) % p;
    }
}

impl HomSpace {
    /// Dimension of the space of degree-0 chain maps.
    pub fn chain_dim(&self) -> usize {
        self.chain.dim()
    }

    pub fn null_homotopic_dim(&self) -> usize {
        self.boundaries.dim()
    }

    /// Dimension of Hom in the homotopy category.
    pub fn stable_dim(&self) -> usize {
        self.chain.dim() - self.boundaries.dim()
    }

    /// The k-th basis chain map of the strict Hom space.
    pub fn chain_basis_map(&self, k: usize) -> ChainMap {
        let row = self.chain.basis().row(k).to_vec();
        self.map_from_coords(&row)
    }

    pub fn chain_basis(&self) -> Vec<ChainMap> {
        (0..self.chain_dim()).map(|k| self.chain_basis_map(k)).collect()
    }

    /// Realizes a coordinate vector as a chain map.
    pub fn map_from_coords(&self, coords: &[u64]) -> ChainMap {
        assert_eq!(coords.len(), self.total, "coordinate length mismatch");
        let alg = &self.from.alg;
        let mut mats: BTreeMap<i64, AlgMat> = BTreeMap::new();
        for s in &self.slots {
            let m = mats.entry(s.n).or_insert_with(|| {
                AlgMat::zero(alg, self.from.term(s.n).to_vec(), self.to.term(s.n).to_vec())
            });
            let corner = alg.corner(self.from.term(s.n)[s.a], self.to.term(s.n)[s.b]);
            let mut elt = alg.zero_elt();
            for v in 0..s.dim {
                let c = coords[s.offset + v];
                if c != 0 {
                    elt = alg.elt_add(&elt, &alg.elt_scale(c, corner.basis().row(v)));
                }
            }
            m.entries[s.a][s.b] = elt;
        }
        ChainMap::new(self.from.clone(), self.to.clone(), mats)
            .expect("kernel coordinates satisfy the chain condition")
    }

    /// Slot coordinates of a chain map between the same two complexes.
    pub fn coords_of(&self, f: &ChainMap) -> Vec<u64> {
        let alg = &self.from.alg;
        let mut out = vec![0u64; self.total];
        let mut cached: BTreeMap<i64, AlgMat> = BTreeMap::new();
        for s in &self.slots {
            let m = cached.entry(s.n).or_insert_with(|| f.mat(s.n));
            let corner = alg.corner(self.from.term(s.n)[s.a], self.to.term(s.n)[s.b]);
            let cs = corner.coords_row(&m.entries[s.a][s.b]).expect("entry lies in its corner");
            out[s.offset..s.offset + s.dim].copy_from_slice(&cs);
        }
        out
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> bool {
        self.boundaries.contains_row(&self.coords_of(f))
    }

    /// Chain maps modulo null-homotopic ones as a linear-algebra object.
    pub fn stable_quotient(&self) -> Subquotient {
        Subquotient::new(&self.chain, &self.boundaries)
    }
}

/// An indecomposable direct summand of a complex, with the maps
/// realizing it: `include.then(project)` is the identity on the
/// summand, and the certificate witnesses that the strict endomorphism
/// ring of the (minimal) summand is local.
#[derive(Clone, Debug)]
pub struct ComplexSummand {
    pub complex: PerfectComplex,
    pub include: ChainMap,
    pub project: ChainMap,
    pub cert: LocalityCert,
}

/// Degreewise blocks of a chain endomorphism over the support of its
/// complex.  Chain endomorphisms are block diagonal, so all the spectral
/// computations run on the blocks.
pub(crate) fn block_flats(f: &ChainMap, degrees: &[i64]) -> Vec<Mat> {
    degrees.iter().map(|&n| f.flat(n)).collect()
}

/// Decomposes a complex into indecomposable summands of its minimal
/// representative.  Null-homotopic endomorphisms of a minimal complex
/// have all entries in the radical and are therefore nilpotent, so
/// strict Fitting splittings and locality certificates decide the
/// homotopy-category decomposition exactly.  Deterministic for a fixed
/// seed.
pub fn decompose_complex(c: &PerfectComplex, seed: u64) -> Result<Vec<ComplexSummand>, HomotopyError> {
    let min = minimize(c);
    let p = c.alg.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6378);
    let mut out: Vec<ComplexSummand> = Vec::new();
    let mut stack: Vec<(PerfectComplex, ChainMap, ChainMap)> = Vec::new();
    if !min.complex.is_zero() {
        stack.push((min.complex.clone(), ChainMap::identity(&min.complex), ChainMap::identity(&min.complex)));
    }
    while let Some((cur, inc, proj)) = stack.pop() {
        let degrees = cur.degrees();
        let ends = hom_space(&cur, &cur)?;
        let basis: Vec<ChainMap> = ends.chain_basis();
        let flats: Vec<Vec<Mat>> = basis.iter().map(|f| block_flats(f, &degrees)).collect();
        if let Some(cert) = certify_local_blocks(p, &flats) {
            out.push(ComplexSummand {
                complex: cur,
                include: inc.then(&min.include),
                project: min.project.then(&proj),
                cert,
            });
            continue;
        }
        let mut split = flats.iter().find_map(|m| fitting_split_complex(&cur, m));
        let mut trials = 0;
        while split.is_none() && trials < SEARCH_BUDGET {
            let mut combo: Vec<Mat> = degrees
                .iter()
                .map(|&n| Mat::zero(p, cur.term_dim(n), cur.term_dim(n)))
                .collect();
            for m in &flats {
                let r = rng.gen_range(0..p);
                for (cb, mb) in combo.iter_mut().zip(m) {
                    *cb = cb.add(&mb.scale(r));
                }
            }
            split = fitting_split_complex(&cur, &combo);
            trials += 1;
        }
        let Some((ker, im)) = split else {
            return Err(DecomposeError::SplitnessViolation { trials }.into());
        };
        for (part, other) in [(&ker, &im), (&im, &ker)] {
            let (piece, pinc, pproj) = realize_subcomplex(&cur, part, other, seed)?;
            stack.push((piece, pinc.then(&inc), proj.then(&pproj)));
        }
    }
    out.sort_by(|a, b| {
        let ka = (a.complex.total_dim(), a.complex.degrees());
        let kb = (b.complex.total_dim(), b.complex.degrees());
        ka.cmp(&kb).then_with(|| {
            let fa: Vec<Mat> = a.complex.degrees().iter().map(|&n| a.include.flat(n)).collect();
            let fb: Vec<Mat> = b.complex.degrees().iter().map(|&n| b.include.flat(n)).collect();
            format!("{fa:?}").cmp(&format!("{fb:?}"))
        })
    });
    Ok(out)
}

/// Tries to split the total space of a chain endomorphism into a
/// generalized eigenspace and its complement, both taken degreewise.
/// The pieces are d-stable because the endomorphism commutes with the
/// differential, and they are submodules because it is a module map.
fn fitting_split_complex(
    cur: &PerfectComplex,
    phi: &[Mat],
) -> Option<(BTreeMap<i64, Subspace>, BTreeMap<i64, Subspace>)> {
    let p = cur.alg.p();
    let degrees = cur.degrees();
    for lam in fp_roots(p, &char_poly_blocks(p, phi)) {
        let mut ker: BTreeMap<i64, Subspace> = BTreeMap::new();
        let mut im: BTreeMap<i64, Subspace> = BTreeMap::new();
        let mut kdim = 0;
        let mut idim = 0;
        for (block, &n) in phi.iter().zip(&degrees) {
            let dn = cur.term_dim(n);
            let shifted = block.sub(&Mat::identity(p, dn).scale(lam));
            let power = shifted.pow(dn);
            let k = Subspace::from_spanning_rows(&power.kernel_basis());
            let i = Subspace::from_spanning_rows(&power.column_space_basis());
            kdim += k.dim();
            idim += i.dim();
            ker.insert(n, k);
            im.insert(n, i);
        }
        if kdim > 0 && idim > 0 {
            return Some((ker, im));
        }
    }
    None
}

/// Realizes a degreewise summand of a minimal complex as a perfect
/// complex in its own projective coordinates, with the strict inclusion
/// and retraction.  Each degreewise piece is a direct summand of a
/// projective module, hence projective; matching its indecomposable
/// summands against the standard projectives produces the term types.
fn realize_subcomplex(
    cur: &PerfectComplex,
    part: &BTreeMap<i64, Subspace>,
    other: &BTreeMap<i64, Subspace>,
    seed: u64,
) -> Result<(PerfectComplex, ChainMap, ChainMap), HomotopyError> {
    let alg = &cur.alg;
    let p = alg.p();
    let mut types: BTreeMap<i64, Vec<SimpleId>> = BTreeMap::new();
    let mut embs: BTreeMap<i64, Mat> = BTreeMap::new();
    let mut prs: BTreeMap<i64, Mat> = BTreeMap::new();
    for n in cur.degrees() {
        let part_n = &part[&n];
        let amb = cur.term_dim(n);
        if part_n.dim() == 0 {
            embs.insert(n, Mat::zero(p, amb, 0));
            prs.insert(n, Mat::zero(p, 0, amb));
            types.insert(n, Vec::new());
            continue;
        }
        let (sub, sub_inc) = cur.term_module(n).submodule_on(part_n);
        let sub_proj = projection_along(part_n, &other[&n]);
        let summands = module::decompose(&sub, seed)?;
        let mut tn: Vec<SimpleId> = Vec::new();
        let mut u = Mat::zero(p, sub.dim, 0);
        for sm in &summands {
            let s = (0..alg.n_simples())
                .find_map(|s| {
                    explicit_iso(&ModuleRep::projective(alg, s), &sm.module).map(|iso| (s, iso))
                })
                .expect("a summand of a projective module is a standard projective");
            tn.push(s.0);
            u = u.hstack(&sm.inclusion.mul(&s.1));
        }
        let uinv = u.inverse().expect("projective coordinates span the summand");
        embs.insert(n, sub_inc.mul(&u));
        prs.insert(n, uinv.mul(&sub_proj));
        types.insert(n, tn);
    }
    let mut diffs: BTreeMap<i64, AlgMat> = BTreeMap::new();
    let mut inc_mats: BTreeMap<i64, AlgMat> = BTreeMap::new();
    let mut proj_mats: BTreeMap<i64, AlgMat> = BTreeMap::new();
    for n in cur.degrees() {
        let tn = types[&n].clone();
        if tn.is_empty() {
            continue;
        }
        inc_mats.insert(n, AlgMat::from_flat(alg, &tn, cur.term(n), &embs[&n])?);
        proj_mats.insert(n, AlgMat::from_flat(alg, cur.term(n), &tn, &prs[&n])?);
        let below = types.get(&(n - 1)).cloned().unwrap_or_default();
        if below.is_empty() {
            continue;
        }
        let d = prs[&(n - 1)].mul(&cur.flat_diff(n)).mul(&embs[&n]);
        diffs.insert(n, AlgMat::from_flat(alg, &tn, &below, &d)?);
    }
    let piece = PerfectComplex::new(alg, types, diffs)?;
    let pinc = ChainMap::new(piece.clone(), cur.clone(), inc_mats)?;
    let pproj = ChainMap::new(cur.clone(), piece.clone(), proj_mats)?;
    Ok((piece, pinc, pproj))
}

/// Groups summands into isomorphism classes with multiplicities,
/// keeping the first representative of each class.
pub fn summand_classes(summands: &[ComplexSummand]) -> Vec<(PerfectComplex, usize)> {
    let mut out: Vec<(PerfectComplex, usize)> = Vec::new();
    for sm in summands {
        match out.iter_mut().find(|(rep, _)| indecomposable_complexes_isomorphic(rep, &sm.complex)) {
            Some((_, count)) => *count += 1,
            None => out.push((sm.complex.clone(), 1)),
        }
    }
    out
}

/// Exact isomorphism test for minimal complexes with local strict
/// endomorphism rings: when the complexes are isomorphic, the identity
/// is a combination of composites of Hom basis elements, and since
/// non-isomorphisms form an ideal in the local endomorphism ring, some
/// single composite must already be invertible.
pub fn indecomposable_complexes_isomorphic(c: &PerfectComplex, d: &PerfectComplex) -> bool {
    if c.is_zero() && d.is_zero() {
        return true;
    }
    if c.degrees() != d.degrees() {
        return false;
    }
    for n in c.degrees() {
        let mut tc = c.term(n).to_vec();
        let mut td = d.term(n).to_vec();
        tc.sort_unstable();
        td.sort_unstable();
        if tc != td {
            return false;
        }
    }
    let fwd = hom_space(c, d).expect("same algebra");
    let bwd = hom_space(d, c).expect("same algebra");
    for i in 0..fwd.chain_dim() {
        let f = fwd.chain_basis_map(i);
        for j in 0..bwd.chain_dim() {
            let g = bwd.chain_basis_map(j);
            if f.then(&g).is_strict_iso() {
                return true;
            }
        }
    }
    false
}

/// Isomorphism in the homotopy category, decided by decomposing both
/// sides and matching indecomposable summands.
pub fn complexes_isomorphic(
    c: &PerfectComplex,
    d: &PerfectComplex,
    seed: u64,
) -> Result<bool, HomotopyError> {
    let mut left = decompose_complex(c, seed)?;
    let right = decompose_complex(d, seed)?;
    if left.len() != right.len() {
        return Ok(false);
    }
    for sm in &right {
        let Some(k) = left.iter().position(|l| indecomposable_complexes_isomorphic(&l.complex, &sm.complex)) else {
            return Ok(false);
        };
        left.swap_remove(k);
    }
    Ok(true)
}

/// The start of a minimal projective resolution of a module, as a
/// complex P_n -> ... -> P_0 in degrees n..0.  Radical differentials
/// come for free from the minimality of projective covers.
pub fn from_resolution(m: &ModuleRep, n: usize) -> Result<PerfectComplex, HomotopyError> {
    if m.dim == 0 {
        return Err(HomotopyError::ZeroModule);
    }
    let alg = &m.alg;
    let (mut cover, mut map) = module::projective_cover(m);
    let mut terms: BTreeMap<i64, Vec<SimpleId>> = BTreeMap::new();
    let mut diffs: BTreeMap<i64, AlgMat> = BTreeMap::new();
    terms.insert(0, types_of_cover(alg, &cover));
    for k in 1..=n as i64 {
        let ker = Subspace::from_spanning_rows(&map.kernel_basis());
        let (kmod, kinc) = cover.submodule_on(&ker);
        let (next, next_map) = module::projective_cover(&kmod);
        let src = types_of_cover(alg, &next);
        let dst = terms[&(k - 1)].clone();
        let d = kinc.mul(&next_map);
        if !src.is_empty() && !dst.is_empty() {
            diffs.insert(k, AlgMat::from_flat(alg, &src, &dst, &d)?);
        }
        terms.insert(k, src);
        cover = next;
        map = next_map;
    }
    let c = PerfectComplex::new(alg, terms, diffs)?;
    debug_assert!(c.is_minimal());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cone, presentation_complex};
    use crate::fixtures;
    use crate::module::uniserial;

    fn two_term(alg: &Alg, power: usize, hi: i64) -> PerfectComplex {
        // Lambda --x^power--> Lambda in degrees hi, hi-1 over a
        // truncated polynomial algebra.
        let mut w = alg.zero_elt();
        w[power] = 1;
        let d = AlgMat::new(alg, vec![0], vec![0], vec![vec![w]]).unwrap();
        let mut terms = BTreeMap::new();
        terms.insert(hi, vec![0]);
        terms.insert(hi - 1, vec![0]);
        let mut diffs = BTreeMap::new();
        diffs.insert(hi, d);
        PerfectComplex::new(alg, terms, diffs).unwrap()
    }

    #[test]
    fn minimizing_the_cone_of_an_identity_gives_zero() {
        let alg = fixtures::a3();
        let c = PerfectComplex::regular_stalk(&alg, 0);
        let (cn, _, _) = cone(&ChainMap::identity(&c));
        let min = minimize(&cn);
        assert!(min.complex.is_zero());
        assert!(min.include.is_zero());
        assert!(min.project.is_zero());
    }

    #[test]
    fn minimize_leaves_a_minimal_complex_alone() {
        let alg = fixtures::a3();
        let c = two_term(&alg, 2, 1);
        assert!(c.is_minimal());
        let min = minimize(&c);
        assert_eq!(min.complex.degrees(), c.degrees());
        assert!(min.include.is_strict_iso());
    }

    #[test]
    fn minimize_preserves_homology_and_retracts_strictly() {
        let alg = fixtures::a3();
        let base = presentation_complex(&uniserial(&alg, 1));
        let (cn, _, _) = cone(&ChainMap::identity(&PerfectComplex::regular_stalk(&alg, 0)));
        let c = base.direct_sum(&cn);
        let min = minimize(&c);
        assert!(min.complex.is_minimal());
        assert_eq!(min.complex.homology_dims(), c.homology_dims());
        let round = min.include.then(&min.project);
        let id = ChainMap::identity(&min.complex);
        assert!(round.add(&id.neg()).is_zero());
    }

    #[test]
    fn hom_space_of_the_regular_stalk_with_itself_has_dimension_three() {
        let alg = fixtures::a3();
        let c = PerfectComplex::regular_stalk(&alg, 0);
        let h = hom_space(&c, &c).unwrap();
        assert_eq!(h.chain_dim(), 3);
        assert_eq!(h.null_homotopic_dim(), 0);
        assert_eq!(h.stable_dim(), 3);
    }

    #[test]
    fn hom_space_into_a_shifted_two_term_complex_sees_its_homology() {
        let alg = fixtures::a3();
        let c = PerfectComplex::regular_stalk(&alg, 0);
        let d = two_term(&alg, 2, 1).shift(-1);
        let h = hom_space(&c, &d).unwrap();
        assert_eq!(h.stable_dim(), 2);
    }

    #[test]
    fn hom_space_between_disjoint_stalks_is_zero() {
        let alg = fixtures::a3();
        let c = PerfectComplex::regular_stalk(&alg, 0);
        let h = hom_space(&c, &c.shift(1)).unwrap();
        assert_eq!(h.chain_dim(), 0);
        assert_eq!(h.stable_dim(), 0);
    }

    #[test]
    fn representability_matches_homology_dimensions() {
        let alg = fixtures::a3();
        let c = presentation_complex(&uniserial(&alg, 2)).shift(1);
        for n in -3..=4 {
            let stalk = PerfectComplex::regular_stalk(&alg, n);
            let h = hom_space(&stalk, &c).unwrap();
            assert_eq!(h.stable_dim(), c.homology(n).dim, "degree {n}");
        }
    }

    #[test]
    fn hom_space_is_additive_in_the_source() {
        let alg = fixtures::a3();
        let a = two_term(&alg, 1, 1);
        let b = PerfectComplex::regular_stalk(&alg, 0);
        let c = presentation_complex(&uniserial(&alg, 2));
        let ab = a.direct_sum(&b);
        let lhs = hom_space(&ab, &c).unwrap().stable_dim();
        let rhs = hom_space(&a, &c).unwrap().stable_dim() + hom_space(&b, &c).unwrap().stable_dim();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_of_a_contractible_complex_is_null_homotopic() {
        let alg = fixtures::a3();
        let c = PerfectComplex::regular_stalk(&alg, 0);
        let (cn, _, _) = cone(&ChainMap::identity(&c));
        let h = hom_space(&cn, &cn).unwrap();
        let id = ChainMap::identity(&cn);
        assert!(h.is_null_homotopic(&id));
        assert_eq!(h.stable_dim(), 0);
    }

    #[test]
    fn hom_space_rejects_mixed_algebras() {
        let a3 = fixtures::a3();
        let n22 = fixtures::n22();
        let c = PerfectComplex::regular_stalk(&a3, 0);
        let d = PerfectComplex::stalk(&n22, 0, 0);
        assert!(hom_space(&c, &d).is_err());
    }

    #[test]
    fn chain_basis_maps_round_trip_through_coordinates() {
        let alg = fixtures::a3();
        let c = presentation_complex(&uniserial(&alg, 1));
        let h = hom_space(&c, &c).unwrap();
        for k in 0..h.chain_dim() {
            let f = h.chain_basis_map(k);
            let coords = h.coords_of(&f);
            assert_eq!(coords, h.chain.basis().row(k).to_vec());
        }
    }

    #[test]
    fn cone_of_zero_decomposes_into_shift_and_target() {
        let alg = fixtures::a3();
        let c = two_term(&alg, 1, 0);
        let d = two_term(&alg, 2, 1);
        let (cn, _, _) = cone(&ChainMap::zero(&c, &d));
        let sum = c.shift(1).direct_sum(&d);
        assert!(complexes_isomorphic(&cn, &sum, 0).unwrap());
        let parts = decompose_complex(&cn, 0).unwrap();
        assert_eq!(parts.len(), 2);
    }

    #[test]
    fn decomposition_summands_retract_onto_themselves() {
        let alg = fixtures::a3();
        let c = two_term(&alg, 1, 1).direct_sum(&PerfectComplex::regular_stalk(&alg, 0));
        let parts = decompose_complex(&c, 0).unwrap();
        assert_eq!(parts.len(), 2);
        for sm in &parts {
            let round = sm.include.then(&sm.project);
            let id = ChainMap::identity(&sm.complex);
            assert!(round.add(&id.neg()).is_zero());
            assert!(sm.cert.end_dim >= 1);
        }
    }

    #[test]
    fn doubled_complex_has_one_class_with_multiplicity_two() {
        let alg = fixtures::a3();
        let c = two_term(&alg, 2, 1);
        let parts = decompose_complex(&c.direct_sum(&c), 0).unwrap();
        let classes = summand_classes(&parts);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].1, 2);
        assert!(indecomposable_complexes_isomorphic(&classes[0].0, &c));
    }

    #[test]
    fn decomposition_is_stable_across_seeds() {
        let alg = fixtures::a3();
        let c = two_term(&alg, 1, 1).direct_sum(&two_term(&alg, 2, 1));
        let a = decompose_complex(&c, 1).unwrap();
        let b = decompose_complex(&c, 99).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!(indecomposable_complexes_isomorphic(&x.complex, &y.complex));
        }
    }

    #[test]
    fn shifted_complexes_are_not_isomorphic_to_the_original() {
        let alg = fixtures::a3();
        let c = two_term(&alg, 2, 1);
        assert!(!complexes_isomorphic(&c, &c.shift(1), 0).unwrap());
        assert!(complexes_isomorphic(&c, &c, 0).unwrap());
    }

    #[test]
    fn truncated_resolution_of_length_one_is_the_presentation() {
        let alg = fixtures::a3();
        let m = uniserial(&alg, 1);
        let r = from_resolution(&m, 1).unwrap();
        let p = presentation_complex(&m);
        assert!(complexes_isomorphic(&r, &p, 0).unwrap());
    }

    #[test]
    fn truncated_resolution_of_length_zero_is_the_cover() {
        let alg = fixtures::a3();
        let m = uniserial(&alg, 2);
        let r = from_resolution(&m, 0).unwrap();
        assert_eq!(r.degrees(), vec![0]);
        assert_eq!(r.term(0), &[0]);
    }

    #[test]
    fn truncated_resolution_computes_homology_of_the_module() {
        let alg = fixtures::a5();
        let m = uniserial(&alg, 2);
        let r = from_resolution(&m, 3).unwrap();
        assert_eq!(r.degrees(), vec![0, 1, 2, 3]);
        assert!(r.is_minimal());
        assert_eq!(r.homology(0).dim, m.dim);
        assert!(module::is_isomorphic(&r.homology(0), &m, 0).unwrap());
    }

    #[test]
    fn resolving_the_zero_module_is_an_error() {
        let alg = fixtures::a3();
        let z = ModuleRep::zero(&alg);
        assert!(matches!(from_resolution(&z, 2), Err(HomotopyError::ZeroModule)));
    }
}
