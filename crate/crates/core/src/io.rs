//! Flat-file formats for algebras, modules, and complexes.
//!
//! All three formats are JSON.  Integer entries in the files may be
//! arbitrary integers and are reduced modulo the characteristic on load,
//! then revalidated by the usual constructors, so a loaded object satisfies
//! every invariant a programmatically built one does.  The complex writer
//! minimizes before serializing; emitted files are canonical for the
//! homotopy class up to the choice of basis.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Alg, AlgElt, AlgebraError, AlgebraSpec};
use crate::complex::{AlgMat, ComplexError, PerfectComplex};
use crate::homotopy::minimize;
use crate::linalg::Mat;
use crate::module::{ModuleError, ModuleRep};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Read(#[from] std::io::Error),
    #[error("malformed file")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("the file references algebra {found}, expected {expected}")]
    WrongAlgebra { expected: String, found: String },
    #[error("{0}")]
    Shape(String),
}

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    name: String,
    p: u64,
    dim: usize,
    basis: Vec<String>,
    idempotents: Vec<usize>,
    radical: Vec<usize>,
    /// mult[i][j] = coefficients of basis[i] * basis[j] over the basis.
    mult: Vec<Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
struct ModuleFile {
    algebra: String,
    dim: usize,
    /// One dim x dim matrix per algebra basis element, given as rows.
    action: Vec<Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    algebra: String,
    /// Degree -> multiplicity of each indecomposable projective.
    terms: BTreeMap<String, Vec<usize>>,
    /// Degree n -> block matrix of coefficient vectors for d_n; rows index
    /// the degree-n summands, columns the degree n-1 summands.
    diffs: BTreeMap<String, Vec<Vec<Vec<i64>>>>,
}

fn reduce(p: u64, c: i64) -> u64 {
    let p = p as i64;
    (((c % p) + p) % p) as u64
}

fn reduce_elt(p: u64, v: &[i64]) -> AlgElt {
    v.iter().map(|&c| reduce(p, c)).collect()
}

fn parse_degree(s: &str) -> Result<i64, IoError> {
    s.parse::<i64>().map_err(|_| IoError::Shape(format!("bad degree key {s:?}")))
}

pub fn parse_algebra(text: &str) -> Result<Alg, IoError> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    if file.p < 2 {
        return Err(AlgebraError::BadCharacteristic(file.p).into());
    }
    let mult_table: Vec<Vec<AlgElt>> = file
        .mult
        .iter()
        .map(|row| row.iter().map(|e| reduce_elt(file.p, e)).collect())
        .collect();
    let spec = AlgebraSpec {
        name: file.name,
        p: file.p,
        dim: file.dim,
        basis_labels: file.basis,
        idempotent_indices: file.idempotents,
        radical_indices: file.radical,
        mult_table,
    };
    Ok(spec.validate()?)
}

pub fn render_algebra(alg: &Alg) -> String {
    let spec = alg.spec();
    let file = AlgebraFile {
        name: spec.name.clone(),
        p: spec.p,
        dim: spec.dim,
        basis: spec.basis_labels.clone(),
        idempotents: spec.idempotent_indices.clone(),
        radical: spec.radical_indices.clone(),
        mult: spec
            .mult_table
            .iter()
            .map(|row| row.iter().map(|e| e.iter().map(|&c| c as i64).collect()).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("algebra specs serialize")
}

pub fn load_algebra(path: &Path) -> Result<Alg, IoError> {
    parse_algebra(&fs::read_to_string(path)?)
}

pub fn write_algebra(alg: &Alg, path: &Path) -> Result<(), IoError> {
    Ok(fs::write(path, render_algebra(alg) + "\n")?)
}

fn check_name(alg: &Alg, found: &str) -> Result<(), IoError> {
    if alg.name() != found {
        return Err(IoError::WrongAlgebra { expected: alg.name().into(), found: found.into() });
    }
    Ok(())
}

fn mat_rows(m: &Mat) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|&c| c as i64).collect()).collect()
}

fn rows_to_mat(p: u64, dim: usize, rows: &[Vec<i64>], what: &str) -> Result<Mat, IoError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(IoError::Shape(format!("{what} is not {dim} x {dim}")));
    }
    let reduced: Vec<Vec<u64>> = rows.iter().map(|r| reduce_elt(p, r)).collect();
    if dim == 0 {
        return Ok(Mat::zero(p, 0, 0));
    }
    Ok(Mat::from_rows(p, &reduced))
}

pub fn parse_module(text: &str, alg: &Alg) -> Result<ModuleRep, IoError> {
    let file: ModuleFile = serde_json::from_str(text)?;
    check_name(alg, &file.algebra)?;
    if file.action.len() != alg.dim() {
        return Err(IoError::Shape(format!(
            "{} action matrices for an algebra of dimension {}",
            file.action.len(),
            alg.dim()
        )));
    }
    let action = file
        .action
        .iter()
        .enumerate()
        .map(|(i, rows)| rows_to_mat(alg.p(), file.dim, rows, &format!("action matrix {i}")))
        .collect::<Result<Vec<Mat>, IoError>>()?;
    Ok(ModuleRep::new(alg, file.dim, action)?)
}

pub fn render_module(m: &ModuleRep) -> String {
    let file = ModuleFile {
        algebra: m.alg.name().into(),
        dim: m.dim,
        action: m.action.iter().map(mat_rows).collect(),
    };
    serde_json::to_string_pretty(&file).expect("modules serialize")
}

pub fn load_module(path: &Path, alg: &Alg) -> Result<ModuleRep, IoError> {
    parse_module(&fs::read_to_string(path)?, alg)
}

pub fn write_module(m: &ModuleRep, path: &Path) -> Result<(), IoError> {
    Ok(fs::write(path, render_module(m) + "\n")?)
}

pub fn parse_complex(text: &str, alg: &Alg) -> Result<PerfectComplex, IoError> {
    let file: ComplexFile = serde_json::from_str(text)?;
    check_name(alg, &file.algebra)?;
    let n = alg.n_simples();
    let mut terms: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (key, mults) in &file.terms {
        let deg = parse_degree(key)?;
        if mults.len() != n {
            return Err(IoError::Shape(format!(
                "term at degree {deg} lists {} multiplicities for {n} projectives",
                mults.len()
            )));
        }
        let mut types = Vec::new();
        for (s, &count) in mults.iter().enumerate() {
            types.extend(std::iter::repeat(s).take(count));
        }
        terms.insert(deg, types);
    }
    let mut diffs: BTreeMap<i64, AlgMat> = BTreeMap::new();
    for (key, entries) in &file.diffs {
        let deg = parse_degree(key)?;
        let src = terms.get(&deg).cloned().unwrap_or_default();
        let dst = terms.get(&(deg - 1)).cloned().unwrap_or_default();
        if entries.len() != src.len() || entries.iter().any(|r| r.len() != dst.len()) {
            return Err(IoError::Shape(format!(
                "differential at degree {deg} is not {} x {}",
                src.len(),
                dst.len()
            )));
        }
        if entries.iter().flatten().any(|e| e.len() != alg.dim()) {
            return Err(IoError::Shape(format!(
                "differential entries at degree {deg} need {} coefficients",
                alg.dim()
            )));
        }
        let reduced: Vec<Vec<AlgElt>> = entries
            .iter()
            .map(|row| row.iter().map(|e| reduce_elt(alg.p(), e)).collect())
            .collect();
        diffs.insert(deg, AlgMat::new(alg, src, dst, reduced)?);
    }
    Ok(PerfectComplex::new(alg, terms, diffs)?)
}

pub fn render_complex(c: &PerfectComplex) -> String {
    let min = minimize(c).complex;
    let alg = &min.alg;
    let n = alg.n_simples();
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for deg in min.degrees() {
        let mut mults = vec![0usize; n];
        for &s in min.term(deg) {
            mults[s] += 1;
        }
        terms.insert(deg.to_string(), mults);
        let d = min.diff(deg);
        if !d.src.is_empty() && !d.dst.is_empty() {
            let entries: Vec<Vec<Vec<i64>>> = d
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.iter().map(|&c| c as i64).collect()).collect())
                .collect();
            diffs.insert(deg.to_string(), entries);
        }
    }
    let file = ComplexFile { algebra: alg.name().into(), terms, diffs };
    serde_json::to_string_pretty(&file).expect("complexes serialize")
}

pub fn load_complex(path: &Path, alg: &Alg) -> Result<PerfectComplex, IoError> {
    parse_complex(&fs::read_to_string(path)?, alg)
}

pub fn write_complex(c: &PerfectComplex, path: &Path) -> Result<(), IoError> {
    Ok(fs::write(path, render_complex(c) + "\n")?)
}
