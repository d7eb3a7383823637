//! Bounded complexes of finitely generated projectives.
//!
//! A term is a formal direct sum of indecomposable projectives, recorded as
//! a list of simple indices.  A map between such sums is an [`AlgMat`]: a
//! block matrix of algebra elements with the (a, b) entry in the corner
//! e_{i_a} A e_{j_b}, where i_a runs over source summands and j_b over
//! target summands.  Elements of a projective sum are row vectors and maps
//! act by right multiplication, so composition "f then g" is the matrix
//! product f * g and d * d = 0 expresses that differentials square to zero.
//!
//! Homological grading: the differential out of degree n lands in degree
//! n - 1.  Shifting by j moves degree n content to degree n + j and scales
//! differentials by (-1)^j, which keeps maps out of a shifted stalk of the
//! regular module literally equal to cycles.
//!
//! Flat matrices (plain F_p matrices on the underlying vector spaces, in
//! the column convention of [`crate::linalg`]) reverse the composition
//! order: flat(f then g) = flat(g) * flat(f).

use crate::algebra::{same_algebra, Alg, AlgElt, SimpleId};
use crate::linalg::{Mat, Subspace};
use crate::module::{self, ModuleRep};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum ComplexError {
    #[error("entry ({row}, {col}) lies outside the corner for simples ({src}, {dst})")]
    EntryOutsideCorner { row: usize, col: usize, src: SimpleId, dst: SimpleId },
    #[error("differential out of degree {0} does not square to zero")]
    NotAComplex(i64),
    #[error("chain map fails the chain condition at degree {0}")]
    NotAChainMap(i64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
}

/// Block matrix of algebra elements describing a map between direct sums
/// of indecomposable projectives.
#[derive(Clone, Debug)]
pub struct AlgMat {
    pub alg: Alg,
    pub src: Vec<SimpleId>,
    pub dst: Vec<SimpleId>,
    /// entries[a][b] lies in the corner e_{src[a]} A e_{dst[b]}.
    pub entries: Vec<Vec<AlgElt>>,
}

impl AlgMat {
    pub fn new(alg: &Alg, src: Vec<SimpleId>, dst: Vec<SimpleId>, entries: Vec<Vec<AlgElt>>) -> Result<AlgMat, ComplexError> {
        if entries.len() != src.len() || entries.iter().any(|r| r.len() != dst.len()) {
            return Err(ComplexError::Shape(format!("{} x {} entries for a {} x {} block matrix", entries.len(), entries.first().map_or(0, |r| r.len()), src.len(), dst.len())));
        }
        let m = AlgMat { alg: alg.clone(), src, dst, entries };
        for a in 0..m.src.len() {
            for b in 0..m.dst.len() {
                let e = &m.entries[a][b];
                if e.len() != alg.dim() {
                    return Err(ComplexError::Shape(format!("entry ({a}, {b}) has {} coefficients", e.len())));
                }
                if !alg.corner(m.src[a], m.dst[b]).contains_row(e) {
                    return Err(ComplexError::EntryOutsideCorner { row: a, col: b, src: m.src[a], dst: m.dst[b] });
                }
            }
        }
        Ok(m)
    }

    pub fn zero(alg: &Alg, src: Vec<SimpleId>, dst: Vec<SimpleId>) -> AlgMat {
        let entries = vec![vec![alg.zero_elt(); dst.len()]; src.len()];
        AlgMat { alg: alg.clone(), src, dst, entries }
    }

    pub fn identity(alg: &Alg, types: &[SimpleId]) -> AlgMat {
        let mut m = AlgMat::zero(alg, types.to_vec(), types.to_vec());
        for (a, &s) in types.iter().enumerate() {
            m.entries[a][a] = alg.idempotent_elt(s);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        let p = self.alg.p();
        self.entries.iter().all(|r| r.iter().all(|e| e.iter().all(|&c| c % p == 0)))
    }

    /// Composition "self then other" as right multiplication demands.
    pub fn then(&self, other: &AlgMat) -> AlgMat {
        assert!(same_algebra(&self.alg, &other.alg), "composition across algebras");
        assert_eq!(self.dst, other.src, "composition type mismatch");
        let alg = &self.alg;
        let mut out = AlgMat::zero(alg, self.src.clone(), other.dst.clone());
        for a in 0..self.src.len() {
            for b in 0..other.dst.len() {
                let mut acc = alg.zero_elt();
                for k in 0..self.dst.len() {
                    acc = alg.elt_add(&acc, &alg.mult(&self.entries[a][k], &other.entries[k][b]));
                }
                out.entries[a][b] = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &AlgMat) -> AlgMat {
        assert_eq!(self.src, other.src, "addition type mismatch");
        assert_eq!(self.dst, other.dst, "addition type mismatch");
        let alg = &self.alg;
        let mut out = self.clone();
        for a in 0..self.src.len() {
            for b in 0..self.dst.len() {
                out.entries[a][b] = alg.elt_add(&self.entries[a][b], &other.entries[a][b]);
            }
        }
        out
    }

    pub fn neg(&self) -> AlgMat {
        let alg = &self.alg;
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = alg.elt_neg(e);
            }
        }
        out
    }

    pub fn scale(&self, c: u64) -> AlgMat {
        let alg = &self.alg;
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = alg.elt_scale(c, e);
            }
        }
        out
    }

    /// Builds [[tl, tr], [bl, br]] with matching block types.
    pub fn block2(tl: &AlgMat, tr: &AlgMat, bl: &AlgMat, br: &AlgMat) -> AlgMat {
        assert_eq!(tl.src, tr.src);
        assert_eq!(bl.src, br.src);
        assert_eq!(tl.dst, bl.dst);
        assert_eq!(tr.dst, br.dst);
        let alg = &tl.alg;
        let src: Vec<SimpleId> = tl.src.iter().chain(bl.src.iter()).copied().collect();
        let dst: Vec<SimpleId> = tl.dst.iter().chain(tr.dst.iter()).copied().collect();
        let mut out = AlgMat::zero(alg, src, dst);
        let (r0, c0) = (tl.src.len(), tl.dst.len());
        for a in 0..tl.src.len() {
            for b in 0..tl.dst.len() {
                out.entries[a][b] = tl.entries[a][b].clone();
            }
            for b in 0..tr.dst.len() {
                out.entries[a][c0 + b] = tr.entries[a][b].clone();
            }
        }
        for a in 0..bl.src.len() {
            for b in 0..bl.dst.len() {
                out.entries[r0 + a][b] = bl.entries[a][b].clone();
            }
            for b in 0..br.dst.len() {
                out.entries[r0 + a][c0 + b] = br.entries[a][b].clone();
            }
        }
        out
    }

    /// Block diagonal of two maps.
    pub fn direct_sum(&self, other: &AlgMat) -> AlgMat {
        let tr = AlgMat::zero(&self.alg, self.src.clone(), other.dst.clone());
        let bl = AlgMat::zero(&self.alg, other.src.clone(), self.dst.clone());
        AlgMat::block2(self, &tr, &bl, other)
    }

    /// Keeps the selected rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> AlgMat {
        let src: Vec<SimpleId> = rows.iter().map(|&a| self.src[a]).collect();
        let dst: Vec<SimpleId> = cols.iter().map(|&b| self.dst[b]).collect();
        let entries: Vec<Vec<AlgElt>> = rows
            .iter()
            .map(|&a| cols.iter().map(|&b| self.entries[a][b].clone()).collect())
            .collect();
        AlgMat { alg: self.alg.clone(), src, dst, entries }
    }

    /// True when every entry lies in the radical; diagonal-type corners
    /// contribute units exactly when the idempotent coefficient survives.
    pub fn is_radical(&self) -> bool {
        self.entries.iter().all(|row| row.iter().all(|e| self.alg.elt_in_radical(e)))
    }

    /// Flat F_p matrix of the underlying linear map, in column convention:
    /// flat(f then g) = flat(g) * flat(f).
    pub fn flat(&self) -> Mat {
        let alg = &self.alg;
        let p = alg.p();
        let src_offsets = offsets(alg, &self.src);
        let dst_offsets = offsets(alg, &self.dst);
        let src_total = *src_offsets.last().unwrap();
        let dst_total = *dst_offsets.last().unwrap();
        let mut f = Mat::zero(p, dst_total, src_total);
        for a in 0..self.src.len() {
            let sa = alg.projective_space(self.src[a]);
            for b in 0..self.dst.len() {
                let e = &self.entries[a][b];
                if e.iter().all(|&c| c % p == 0) {
                    continue;
                }
                let sb = alg.projective_space(self.dst[b]);
                for col in 0..sa.dim() {
                    let img = alg.mult(sa.basis().row(col), e);
                    let cs = sb.coords_row(&img).expect("image lies in the target projective");
                    for (r, &c) in cs.iter().enumerate() {
                        f.set(dst_offsets[b] + r, src_offsets[a] + col, c);
                    }
                }
            }
        }
        f
    }

    /// Recovers the block form of a flat module map between projective
    /// sums.  Fails when a block is not realized by right multiplication
    /// with a corner element, i.e. when the flat matrix is not a module map.
    pub fn from_flat(alg: &Alg, src: &[SimpleId], dst: &[SimpleId], f: &Mat) -> Result<AlgMat, ComplexError> {
        let p = alg.p();
        let src_offsets = offsets(alg, src);
        let dst_offsets = offsets(alg, dst);
        if f.rows() != *dst_offsets.last().unwrap() || f.cols() != *src_offsets.last().unwrap() {
            return Err(ComplexError::Shape(format!("flat map is {} x {}", f.rows(), f.cols())));
        }
        let mut entries = vec![vec![alg.zero_elt(); dst.len()]; src.len()];
        for (a, &sa) in src.iter().enumerate() {
            let gen = alg
                .projective_space(sa)
                .coords_row(&alg.idempotent_elt(sa))
                .expect("the idempotent generates its projective");
            for (b, &sb) in dst.iter().enumerate() {
                let block = f.submatrix(dst_offsets[b], dst_offsets[b + 1], src_offsets[a], src_offsets[a + 1]);
                let img = block.mul(&Mat::col_vec(p, &gen)).col(0);
                let mut elt = alg.zero_elt();
                for (k, &c) in img.iter().enumerate() {
                    if c != 0 {
                        elt = alg.elt_add(&elt, &alg.elt_scale(c, alg.projective_space(sb).basis().row(k)));
                    }
                }
                entries[a][b] = elt;
            }
        }
        let out = AlgMat::new(alg, src.to_vec(), dst.to_vec(), entries)?;
        if &out.flat() != f {
            return Err(ComplexError::Shape("flat matrix is not a module map of projective sums".into()));
        }
        Ok(out)
    }
}

/// Cumulative coordinate offsets of a projective sum, one past the end
/// included.
pub fn offsets(alg: &Alg, types: &[SimpleId]) -> Vec<usize> {
    let mut out = Vec::with_capacity(types.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &s in types {
        acc += alg.projective_space(s).dim();
        out.push(acc);
    }
    out
}

/// Total k-dimension of a projective sum.
pub fn sum_dim(alg: &Alg, types: &[SimpleId]) -> usize {
    *offsets(alg, types).last().unwrap()
}

/// Bounded complex of projective sums.  Empty terms are never stored.
#[derive(Clone, Debug)]
pub struct PerfectComplex {
    pub alg: Alg,
    terms: BTreeMap<i64, Vec<SimpleId>>,
    diffs: BTreeMap<i64, AlgMat>,
}

impl PerfectComplex {
    /// Validates block shapes and d * d = 0.
    pub fn new(alg: &Alg, terms: BTreeMap<i64, Vec<SimpleId>>, diffs: BTreeMap<i64, AlgMat>) -> Result<PerfectComplex, ComplexError> {
        let terms: BTreeMap<i64, Vec<SimpleId>> = terms.into_iter().filter(|(_, t)| !t.is_empty()).collect();
        let mut kept = BTreeMap::new();
        for (n, d) in diffs {
            let src = terms.get(&n).cloned().unwrap_or_default();
            let dst = terms.get(&(n - 1)).cloned().unwrap_or_default();
            if d.src != src || d.dst != dst {
                return Err(ComplexError::Shape(format!("differential at degree {n} has mismatched summand types")));
            }
            if src.is_empty() || dst.is_empty() {
                continue;
            }
            kept.insert(n, d);
        }
        let c = PerfectComplex { alg: alg.clone(), terms, diffs: kept };
        for (&n, _) in c.terms.iter() {
            let dd = c.diff(n).then(&c.diff(n - 1));
            if !dd.is_zero() {
                return Err(ComplexError::NotAComplex(n));
            }
        }
        Ok(c)
    }

    pub fn zero(alg: &Alg) -> PerfectComplex {
        PerfectComplex { alg: alg.clone(), terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// P_s concentrated in one degree.
    pub fn stalk(alg: &Alg, s: SimpleId, degree: i64) -> PerfectComplex {
        let mut terms = BTreeMap::new();
        terms.insert(degree, vec![s]);
        PerfectComplex { alg: alg.clone(), terms, diffs: BTreeMap::new() }
    }

    /// The regular module, one projective per simple, in one degree.
    pub fn regular_stalk(alg: &Alg, degree: i64) -> PerfectComplex {
        let mut terms = BTreeMap::new();
        terms.insert(degree, (0..alg.n_simples()).collect());
        PerfectComplex { alg: alg.clone(), terms, diffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest and highest degree carrying a term.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().next()?;
        let hi = self.terms.keys().next_back()?;
        Some((*lo, *hi))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn term(&self, n: i64) -> &[SimpleId] {
        self.terms.get(&n).map_or(&[], |v| v.as_slice())
    }

    pub fn term_dim(&self, n: i64) -> usize {
        sum_dim(&self.alg, self.term(n))
    }

    pub fn total_dim(&self) -> usize {
        self.terms.keys().map(|&n| self.term_dim(n)).sum()
    }

    /// Number of indecomposable summands across all terms.
    pub fn summand_count(&self) -> usize {
        self.terms.values().map(|t| t.len()).sum()
    }

    pub fn term_module(&self, n: i64) -> ModuleRep {
        let mut m = ModuleRep::zero(&self.alg);
        for &s in self.term(n) {
            m = m.direct_sum(&ModuleRep::projective(&self.alg, s));
        }
        m
    }

    /// The differential out of degree n, materializing zeros off support.
    pub fn diff(&self, n: i64) -> AlgMat {
        match self.diffs.get(&n) {
            Some(d) => d.clone(),
            None => AlgMat::zero(&self.alg, self.term(n).to_vec(), self.term(n - 1).to_vec()),
        }
    }

    pub fn flat_diff(&self, n: i64) -> Mat {
        self.diff(n).flat()
    }

    /// Degree shift: content of degree n moves to degree n + j and the
    /// differential picks up (-1)^j.
    pub fn shift(&self, j: i64) -> PerfectComplex {
        let p = self.alg.p();
        let sign = if j.rem_euclid(2) == 0 { 1 } else { p - 1 };
        let terms: BTreeMap<i64, Vec<SimpleId>> = self.terms.iter().map(|(&n, t)| (n + j, t.clone())).collect();
        let diffs: BTreeMap<i64, AlgMat> = self.diffs.iter().map(|(&n, d)| (n + j, d.scale(sign))).collect();
        PerfectComplex { alg: self.alg.clone(), terms, diffs }
    }

    pub fn direct_sum(&self, other: &PerfectComplex) -> PerfectComplex {
        assert!(same_algebra(&self.alg, &other.alg), "direct sum across algebras");
        let degrees: std::collections::BTreeSet<i64> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for &n in &degrees {
            let t: Vec<SimpleId> = self.term(n).iter().chain(other.term(n).iter()).copied().collect();
            terms.insert(n, t);
        }
        for &n in &degrees {
            let d = self.diff(n).direct_sum(&other.diff(n));
            diffs.insert(n, d);
            let d1 = self.diff(n + 1).direct_sum(&other.diff(n + 1));
            diffs.insert(n + 1, d1);
        }
        PerfectComplex::new(&self.alg, terms, diffs).expect("direct sum of complexes is a complex")
    }

    /// All differential entries in the radical.
    pub fn is_minimal(&self) -> bool {
        self.diffs.values().all(|d| d.is_radical())
    }

    /// Homology at degree n as a module, together with the data needed to
    /// reduce ambient cycles to homology coordinates.
    pub fn homology_at(&self, n: i64) -> HomologyAt {
        let p = self.alg.p();
        let dim_n = self.term_dim(n);
        let term = self.term_module(n);
        let cycles = if self.term(n - 1).is_empty() {
            Subspace::from_spanning_rows(&Mat::identity(p, dim_n))
        } else {
            Subspace::from_spanning_rows(&self.flat_diff(n).kernel_basis())
        };
        let boundaries_ambient = if self.term(n + 1).is_empty() {
            Subspace::zero(p, dim_n)
        } else {
            let f = self.flat_diff(n + 1);
            let rows: Vec<Vec<u64>> = (0..f.cols()).map(|c| f.col(c)).collect();
            Subspace::from_spanning_rows(&Mat::from_rows(p, &rows))
        };
        let (zmod, _inc) = term.submodule_on(&cycles);
        let b_in_z: Vec<Vec<u64>> = (0..boundaries_ambient.dim())
            .map(|i| cycles.coords_row(boundaries_ambient.basis().row(i)).expect("boundaries are cycles"))
            .collect();
        let bsub = if b_in_z.is_empty() {
            Subspace::zero(p, zmod.dim)
        } else {
            Subspace::from_spanning_rows(&Mat::from_rows(p, &b_in_z))
        };
        let (module, projection) = zmod.quotient(&bsub);
        HomologyAt { module, cycles, projection }
    }

    pub fn homology(&self, n: i64) -> ModuleRep {
        self.homology_at(n).module
    }

    /// Degrees where homology can be nonzero, i.e. the support range.
    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        if let Some((lo, hi)) = self.support() {
            for n in lo..=hi {
                let h = self.homology(n);
                if h.dim > 0 {
                    out.insert(n, h.dim);
                }
            }
        }
        out
    }

    /// Applies the Nakayama realization to every term and entry.
    pub fn nu(&self) -> Result<PerfectComplex, crate::algebra::AlgebraError> {
        let nu = module::nu_data(&self.alg)?;
        let terms: BTreeMap<i64, Vec<SimpleId>> = self
            .terms
            .iter()
            .map(|(&n, t)| (n, t.iter().map(|&s| nu.perm[s]).collect()))
            .collect();
        let mut diffs = BTreeMap::new();
        for (&n, d) in self.diffs.iter() {
            let src: Vec<SimpleId> = d.src.iter().map(|&s| nu.perm[s]).collect();
            let dst: Vec<SimpleId> = d.dst.iter().map(|&s| nu.perm[s]).collect();
            let mut entries = vec![vec![self.alg.zero_elt(); dst.len()]; src.len()];
            for a in 0..d.src.len() {
                for b in 0..d.dst.len() {
                    let (i, j) = (d.src[a], d.dst[b]);
                    entries[a][b] = module::apply_corner_map(
                        &self.alg,
                        &nu.entry_maps[i][j],
                        i,
                        j,
                        nu.perm[i],
                        nu.perm[j],
                        &d.entries[a][b],
                    );
                }
            }
            diffs.insert(n, AlgMat { alg: self.alg.clone(), src, dst, entries });
        }
        Ok(PerfectComplex::new(&self.alg, terms, diffs).expect("nu of a complex is a complex"))
    }

    /// Inverse Nakayama realization.
    pub fn nu_inverse(&self) -> Result<PerfectComplex, crate::algebra::AlgebraError> {
        let nu = module::nu_data(&self.alg)?;
        let terms: BTreeMap<i64, Vec<SimpleId>> = self
            .terms
            .iter()
            .map(|(&n, t)| (n, t.iter().map(|&s| nu.inv_perm[s]).collect()))
            .collect();
        let mut diffs = BTreeMap::new();
        for (&n, d) in self.diffs.iter() {
            let src: Vec<SimpleId> = d.src.iter().map(|&s| nu.inv_perm[s]).collect();
            let dst: Vec<SimpleId> = d.dst.iter().map(|&s| nu.inv_perm[s]).collect();
            let mut entries = vec![vec![self.alg.zero_elt(); dst.len()]; src.len()];
            for a in 0..d.src.len() {
                for b in 0..d.dst.len() {
                    let (i, j) = (nu.inv_perm[d.src[a]], nu.inv_perm[d.dst[b]]);
                    entries[a][b] = module::apply_corner_map(
                        &self.alg,
                        &nu.inv_entry_maps[i][j],
                        nu.perm[i],
                        nu.perm[j],
                        i,
                        j,
                        &d.entries[a][b],
                    );
                }
            }
            diffs.insert(n, AlgMat { alg: self.alg.clone(), src, dst, entries });
        }
        Ok(PerfectComplex::new(&self.alg, terms, diffs).expect("nu inverse of a complex is a complex"))
    }
}

/// Homology module with its coordinate bookkeeping: `cycles` is the cycle
/// subspace in term coordinates and `projection` maps cycle coordinates
/// onto homology coordinates.
pub struct HomologyAt {
    pub module: ModuleRep,
    pub cycles: Subspace,
    pub projection: Mat,
}

impl HomologyAt {
    /// Homology coordinates of an ambient cycle.
    pub fn reduce(&self, v: &[u64]) -> Option<Vec<u64>> {
        let cs = self.cycles.coords_row(v)?;
        Some(self.projection.mul(&Mat::col_vec(self.projection.modulus(), &cs)).col(0))
    }

    /// Ambient representative of the k-th homology basis vector.
    pub fn rep(&self, k: usize) -> Vec<u64> {
        // projection has a right inverse on representatives; solve for one.
        let p = self.projection.modulus();
        let mut unit = Mat::zero(p, self.module.dim, 1);
        unit.set(k, 0, 1);
        let sol = self.projection.solve(&unit).expect("projection is onto");
        let amb_dim = self.cycles.ambient();
        let mut out = vec![0u64; amb_dim];
        for i in 0..self.cycles.dim() {
            let c = sol.at(i, 0);
            if c != 0 {
                for (o, &b) in out.iter_mut().zip(self.cycles.basis().row(i)) {
                    *o = crate::linalg::fp_add(p, *o, c * b % p);
                }
            }
        }
        out
    }
}

/// Degreewise map of complexes satisfying the chain condition.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub from: PerfectComplex,
    pub to: PerfectComplex,
    mats: BTreeMap<i64, AlgMat>,
}

impl ChainMap {
    pub fn new(from: PerfectComplex, to: PerfectComplex, mats: BTreeMap<i64, AlgMat>) -> Result<ChainMap, ComplexError> {
        if !same_algebra(&from.alg, &to.alg) {
            return Err(ComplexError::AlgebraMismatch);
        }
        let mats: BTreeMap<i64, AlgMat> = mats
            .into_iter()
            .filter(|(n, _)| !from.term(*n).is_empty() && !to.term(*n).is_empty())
            .collect();
        for (&n, m) in mats.iter() {
            if m.src != from.term(n) || m.dst != to.term(n) {
                return Err(ComplexError::Shape(format!("chain map block at degree {n} has mismatched types")));
            }
        }
        let f = ChainMap { from, to, mats };
        let (lo, hi) = match (f.from.support(), f.to.support()) {
            (Some((a, b)), Some((c, d))) => (a.min(c), b.max(d)),
            _ => return Ok(f),
        };
        for n in lo..=hi + 1 {
            let lhs = f.mat(n).then(&f.to.diff(n));
            let rhs = f.from.diff(n).then(&f.mat(n - 1));
            if !lhs.add(&rhs.neg()).is_zero() {
                return Err(ComplexError::NotAChainMap(n));
            }
        }
        Ok(f)
    }

    pub fn zero(from: &PerfectComplex, to: &PerfectComplex) -> ChainMap {
        ChainMap { from: from.clone(), to: to.clone(), mats: BTreeMap::new() }
    }

    pub fn identity(c: &PerfectComplex) -> ChainMap {
        let mats: BTreeMap<i64, AlgMat> =
            c.terms.iter().map(|(&n, t)| (n, AlgMat::identity(&c.alg, t))).collect();
        ChainMap { from: c.clone(), to: c.clone(), mats }
    }

    pub fn mat(&self, n: i64) -> AlgMat {
        match self.mats.get(&n) {
            Some(m) => m.clone(),
            None => AlgMat::zero(&self.from.alg, self.from.term(n).to_vec(), self.to.term(n).to_vec()),
        }
    }

    pub fn flat(&self, n: i64) -> Mat {
        self.mat(n).flat()
    }

    pub fn is_zero(&self) -> bool {
        self.mats.values().all(|m| m.is_zero())
    }

    /// Composition "self then other".
    pub fn then(&self, other: &ChainMap) -> ChainMap {
        let mut mats = BTreeMap::new();
        for (&n, _) in self.mats.iter() {
            let m = self.mat(n).then(&other.mat(n));
            if !m.is_zero() {
                mats.insert(n, m);
            }
        }
        ChainMap { from: self.from.clone(), to: other.to.clone(), mats }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let mut mats = BTreeMap::new();
        let keys: std::collections::BTreeSet<i64> =
            self.mats.keys().chain(other.mats.keys()).copied().collect();
        for &n in &keys {
            let m = self.mat(n).add(&other.mat(n));
            if !m.is_zero() {
                mats.insert(n, m);
            }
        }
        ChainMap { from: self.from.clone(), to: self.to.clone(), mats }
    }

    pub fn neg(&self) -> ChainMap {
        let mats = self.mats.iter().map(|(&n, m)| (n, m.neg())).collect();
        ChainMap { from: self.from.clone(), to: self.to.clone(), mats }
    }

    pub fn scale(&self, c: u64) -> ChainMap {
        let mats = self.mats.iter().map(|(&n, m)| (n, m.scale(c))).collect();
        ChainMap { from: self.from.clone(), to: self.to.clone(), mats }
    }

    pub fn shift(&self, j: i64) -> ChainMap {
        let mats: BTreeMap<i64, AlgMat> = self.mats.iter().map(|(&n, m)| (n + j, m.clone())).collect();
        ChainMap { from: self.from.shift(j), to: self.to.shift(j), mats }
    }

    /// Total flat matrix over the union of supports, block diagonal by
    /// degree; invertibility here is strict isomorphism of complexes.
    pub fn is_strict_iso(&self) -> bool {
        let degrees: std::collections::BTreeSet<i64> = self
            .from
            .degrees()
            .into_iter()
            .chain(self.to.degrees())
            .collect();
        for &n in &degrees {
            if self.from.term_dim(n) != self.to.term_dim(n) {
                return false;
            }
            if !self.flat(n).is_invertible() {
                return false;
            }
        }
        true
    }

    /// Induced map on homology at degree n, in the homology coordinates of
    /// both sides.
    pub fn homology_map(&self, n: i64) -> (HomologyAt, HomologyAt, Mat) {
        let hc = self.from.homology_at(n);
        let hd = self.to.homology_at(n);
        let p = self.from.alg.p();
        let f = self.flat(n);
        let mut out = Mat::zero(p, hd.module.dim, hc.module.dim);
        for k in 0..hc.module.dim {
            let rep = hc.rep(k);
            let img = f.mul(&Mat::col_vec(p, &rep)).col(0);
            let cs = hd.reduce(&img).expect("chain maps send cycles to cycles");
            for (r, &c) in cs.iter().enumerate() {
                out.set(r, k, c);
            }
        }
        (hc, hd, out)
    }
}

/// Mapping cone of f: C -> D: term_n = C_{n-1} ++ D_n, with differential
/// [[-d_C, f], [0, d_D]].  Returns the cone with the canonical triangle
/// maps D -> cone and cone -> C[1].
pub fn cone(f: &ChainMap) -> (PerfectComplex, ChainMap, ChainMap) {
    let alg = &f.from.alg;
    let c = &f.from;
    let d = &f.to;
    let degrees: std::collections::BTreeSet<i64> = c
        .degrees()
        .iter()
        .map(|&n| n + 1)
        .chain(d.degrees().iter().copied())
        .collect();
    let mut terms = BTreeMap::new();
    for &n in &degrees {
        let t: Vec<SimpleId> = c.term(n - 1).iter().chain(d.term(n).iter()).copied().collect();
        if !t.is_empty() {
            terms.insert(n, t);
        }
    }
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        let tl = c.diff(n - 1).neg();
        let tr = f.mat(n - 1);
        let bl = AlgMat::zero(alg, d.term(n).to_vec(), c.term(n - 2).to_vec());
        let br = d.diff(n);
        diffs.insert(n, AlgMat::block2(&tl, &tr, &bl, &br));
    }
    let cone = PerfectComplex::new(alg, terms, diffs).expect("cone of a chain map is a complex");
    let shifted = c.shift(1);
    let mut inc_mats = BTreeMap::new();
    let mut proj_mats = BTreeMap::new();
    for &n in &degrees {
        // D_n includes as the lower block; the cone projects onto C[1]_n.
        let inc_tl = AlgMat::zero(alg, d.term(n).to_vec(), c.term(n - 1).to_vec());
        let inc_tr = AlgMat::identity(alg, d.term(n));
        let inc = AlgMat::block2(&inc_tl, &inc_tr, &AlgMat::zero(alg, vec![], c.term(n - 1).to_vec()), &AlgMat::zero(alg, vec![], d.term(n).to_vec()));
        inc_mats.insert(n, AlgMat { alg: alg.clone(), src: d.term(n).to_vec(), dst: cone.term(n).to_vec(), entries: inc.entries });
        let proj_top = AlgMat::identity(alg, c.term(n - 1));
        let proj_bot = AlgMat::zero(alg, d.term(n).to_vec(), c.term(n - 1).to_vec());
        let proj = AlgMat::block2(&proj_top, &AlgMat::zero(alg, c.term(n - 1).to_vec(), vec![]), &proj_bot, &AlgMat::zero(alg, d.term(n).to_vec(), vec![]));
        proj_mats.insert(n, AlgMat { alg: alg.clone(), src: cone.term(n).to_vec(), dst: shifted.term(n).to_vec(), entries: proj.entries });
    }
    let inc = ChainMap::new(d.clone(), cone.clone(), inc_mats).expect("cone inclusion is a chain map");
    let proj = ChainMap::new(cone.clone(), shifted, proj_mats).expect("cone projection is a chain map");
    (cone, inc, proj)
}

/// Minimal projective presentation of a module as a two-term complex in
/// degrees 1 and 0.
pub fn presentation_complex(m: &ModuleRep) -> PerfectComplex {
    let alg = &m.alg;
    let (p0, cover0) = module::projective_cover(m);
    let ker = Subspace::from_spanning_rows(&cover0.kernel_basis());
    let (kmod, kinc) = p0.submodule_on(&ker);
    let (p1, cover1) = module::projective_cover(&kmod);
    // d_1 = cover of the kernel followed by its inclusion into P_0.
    let d1_flat = kinc.mul(&cover1);
    let src = types_of_cover(alg, &p1);
    let dst = types_of_cover(alg, &p0);
    let d1 = AlgMat::from_flat(alg, &src, &dst, &d1_flat).expect("presentation differential is a module map");
    let mut terms = BTreeMap::new();
    terms.insert(0, dst.clone());
    terms.insert(1, src.clone());
    let mut diffs = BTreeMap::new();
    diffs.insert(1, d1);
    PerfectComplex::new(alg, terms, diffs).expect("presentation is a complex")
}

/// Recovers the projective types of a module built as a direct sum of
/// indecomposable projectives by [`module::projective_cover`].
pub(crate) fn types_of_cover(alg: &Alg, p: &ModuleRep) -> Vec<SimpleId> {
    let mut out = Vec::new();
    let mut seen = 0;
    while seen < p.dim {
        let mut found = false;
        for s in 0..alg.n_simples() {
            let d = alg.projective_space(s).dim();
            if seen + d > p.dim {
                continue;
            }
            // The cover is assembled block by block in construction order,
            // so the action restricted to the next block must match P_s.
            let ps = ModuleRep::projective(alg, s);
            let matches = (0..alg.dim()).all(|b| {
                let blk = p.action[b].submatrix(seen, seen + d, seen, seen + d);
                blk == ps.action[b]
            });
            if matches {
                out.push(s);
                seen += d;
                found = true;
                break;
            }
        }
        assert!(found, "cover block does not match any projective");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::module::uniserial;

    fn two_term_xi(alg: &Alg, i: usize) -> PerfectComplex {
        // Lambda --x^i--> Lambda in degrees 1, 0 over a truncated
        // polynomial algebra.
        let mut w = alg.zero_elt();
        w[i] = 1;
        let d = AlgMat::new(alg, vec![0], vec![0], vec![vec![w]]).unwrap();
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![0]);
        terms.insert(1, vec![0]);
        let mut diffs = BTreeMap::new();
        diffs.insert(1, d);
        PerfectComplex::new(alg, terms, diffs).unwrap()
    }

    #[test]
    fn presentation_of_uniserial_is_multiplication_by_x_to_the_i() {
        let a5 = fixtures::a5();
        for i in 1..=4 {
            let v = uniserial(&a5, i);
            let c = presentation_complex(&v);
            assert_eq!(c.term(0), &[0]);
            assert_eq!(c.term(1), &[0]);
            let expected = two_term_xi(&a5, i);
            assert_eq!(c.diff(1).entries[0][0], expected.diff(1).entries[0][0]);
        }
    }

    #[test]
    fn homology_of_a_two_term_complex_over_a3() {
        let a3 = fixtures::a3();
        let c = two_term_xi(&a3, 1);
        // Multiplication by x on k[x]/(x^3): kernel x^2, image (x).
        let h0 = c.homology(0);
        assert_eq!(h0.dim, 1);
        let h1 = c.homology(1);
        assert_eq!(h1.dim, 1);
        assert_eq!(c.homology(2).dim, 0);
    }

    #[test]
    fn stalk_homology_is_the_projective() {
        let a3 = fixtures::a3();
        let c = PerfectComplex::stalk(&a3, 0, 0);
        assert_eq!(c.homology(0).dim, 3);
        assert!(c.is_minimal());
    }

    #[test]
    fn shift_moves_support_and_squares_to_identity_twice() {
        let a3 = fixtures::a3();
        let c = two_term_xi(&a3, 1);
        let s = c.shift(1);
        assert_eq!(s.support(), Some((1, 2)));
        let back = s.shift(-1);
        assert_eq!(back.support(), c.support());
        assert_eq!(back.diff(1).entries, c.diff(1).entries);
        // Double shift restores signs.
        let twice = c.shift(2);
        assert_eq!(twice.diff(3).entries, c.diff(1).entries);
    }

    #[test]
    fn shifted_differential_changes_sign_mod_three() {
        let a = fixtures::truncated_poly_spec("a3p3", 3, 3).validate().unwrap();
        let c = {
            let mut w = a.zero_elt();
            w[1] = 1;
            let d = AlgMat::new(&a, vec![0], vec![0], vec![vec![w]]).unwrap();
            let mut terms = BTreeMap::new();
            terms.insert(0, vec![0]);
            terms.insert(1, vec![0]);
            let mut diffs = BTreeMap::new();
            diffs.insert(1, d);
            PerfectComplex::new(&a, terms, diffs).unwrap()
        };
        let s = c.shift(1);
        let orig = &c.diff(1).entries[0][0];
        let moved = &s.diff(2).entries[0][0];
        assert_eq!(moved, &a.elt_neg(orig));
    }

    #[test]
    fn cone_of_identity_has_no_homology() {
        let a3 = fixtures::a3();
        let c = two_term_xi(&a3, 1);
        let id = ChainMap::identity(&c);
        let (cn, _, _) = cone(&id);
        for n in -1..=3 {
            assert_eq!(cn.homology(n).dim, 0, "cone(id) has homology at {n}");
        }
    }

    #[test]
    fn cone_triangle_maps_are_chain_maps() {
        let a3 = fixtures::a3();
        let c = two_term_xi(&a3, 1);
        let d = PerfectComplex::stalk(&a3, 0, 0);
        // The zero map gives cone = C[1] ++ D.
        let z = ChainMap::zero(&c, &d);
        let (cn, inc, proj) = cone(&z);
        // cone(0) = C[1] ++ D degreewise.
        assert_eq!(cn.term_dim(0), 3);
        assert_eq!(cn.term_dim(1), 3);
        assert_eq!(cn.term_dim(2), 3);
        assert!(!inc.is_zero());
        assert!(!proj.is_zero());
        assert_eq!(cn.term(2), c.shift(1).term(2));
    }

    #[test]
    fn nu_fixes_complexes_over_a_symmetric_algebra() {
        let a3 = fixtures::a3();
        let c = two_term_xi(&a3, 2);
        let n = c.nu().unwrap();
        assert_eq!(n.term(0), c.term(0));
        assert_eq!(n.diff(1).entries, c.diff(1).entries);
    }

    #[test]
    fn nu_permutes_stalks_over_n22() {
        let n22 = fixtures::n22();
        let c = PerfectComplex::stalk(&n22, 0, 0);
        let nc = c.nu().unwrap();
        assert_eq!(nc.term(0), &[1]);
        let back = nc.nu_inverse().unwrap();
        assert_eq!(back.term(0), &[0]);
    }

    #[test]
    fn nu_preserves_two_term_complexes_over_n22() {
        let n22 = fixtures::n22();
        // P_0 <- P_1 via the arrow a in e_2 A e_1... source P_1, target P_0.
        let mut w = n22.zero_elt();
        w[2] = 1;
        let d = AlgMat::new(&n22, vec![1], vec![0], vec![vec![w]]).unwrap();
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![0]);
        terms.insert(1, vec![1]);
        let mut diffs = BTreeMap::new();
        diffs.insert(1, d);
        let c = PerfectComplex::new(&n22, terms, diffs).unwrap();
        let nc = c.nu().unwrap();
        assert_eq!(nc.term(1), &[0]);
        assert_eq!(nc.term(0), &[1]);
        // The transported entry must span the corner e_1 A e_2.
        assert!(!nc.diff(1).is_zero());
        assert!(nc.diff(1).is_radical());
    }

    #[test]
    fn homology_map_of_identity_is_identity() {
        let a3 = fixtures::a3();
        let c = two_term_xi(&a3, 1);
        let id = ChainMap::identity(&c);
        let (_, _, h) = id.homology_map(0);
        assert_eq!(h, Mat::identity(2, 1));
    }

    #[test]
    fn strict_iso_detects_sign_twists() {
        let a3 = fixtures::a3();
        let c = two_term_xi(&a3, 1);
        let id = ChainMap::identity(&c);
        assert!(id.is_strict_iso());
        let z = ChainMap::zero(&c, &c);
        assert!(!z.is_strict_iso());
    }

    #[test]
    fn flat_respects_composition_order() {
        let a3 = fixtures::a3();
        let mut x = a3.zero_elt();
        x[1] = 1;
        let f = AlgMat::new(&a3, vec![0], vec![0], vec![vec![x.clone()]]).unwrap();
        let g = f.clone();
        let composite = f.then(&g);
        assert_eq!(composite.flat(), g.flat().mul(&f.flat()));
        // x then x is x^2.
        let mut xx = a3.zero_elt();
        xx[2] = 1;
        assert_eq!(composite.entries[0][0], xx);
    }

    #[test]
    fn from_flat_round_trips() {
        let n22 = fixtures::n22();
        let mut w = n22.zero_elt();
        w[3] = 1;
        let m = AlgMat::new(&n22, vec![0], vec![1], vec![vec![w]]).unwrap();
        let back = AlgMat::from_flat(&n22, &[0], &[1], &m.flat()).unwrap();
        assert_eq!(back.entries, m.entries);
    }

    #[test]
    fn entry_outside_corner_is_rejected() {
        let n22 = fixtures::n22();
        // The arrow a lives in e_2 A e_1, not e_1 A e_2.
        let mut w = n22.zero_elt();
        w[2] = 1;
        assert!(matches!(
            AlgMat::new(&n22, vec![0], vec![1], vec![vec![w]]),
            Err(ComplexError::EntryOutsideCorner { .. })
        ));
    }

    #[test]
    fn non_squaring_differential_is_rejected() {
        let a3 = fixtures::a3();
        let mut one = a3.zero_elt();
        one[0] = 1;
        let d = AlgMat::new(&a3, vec![0], vec![0], vec![vec![one]]).unwrap();
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![0]);
        terms.insert(1, vec![0]);
        terms.insert(2, vec![0]);
        let mut diffs = BTreeMap::new();
        diffs.insert(1, d.clone());
        diffs.insert(2, d);
        assert!(matches!(PerfectComplex::new(&a3, terms, diffs), Err(ComplexError::NotAComplex(2))));
    }
}
