//! Characteristic polynomials and their roots in F_p.
//!
//! The decomposition machinery only ever asks two questions about an
//! endomorphism: does its characteristic polynomial have a single eigenvalue
//! in F_p, and if not, what is one eigenvalue to split along.  Polynomials
//! are coefficient vectors, lowest degree first, always held monic when they
//! come out of `char_poly`.

use crate::linalg::{fp_add, fp_inv, fp_mul, fp_neg, fp_sub, IncrementalBasis, Mat};

/// Characteristic polynomial of a square matrix, monic of degree n.
///
/// Krylov flag method: repeatedly grow a chain v, Av, A^2 v, ... until it
/// goes dependent; the dependency coefficients on the chain itself give the
/// relative minimal polynomial of that block, and in the accumulated basis
/// the matrix is block triangular with companion diagonal blocks, so the
/// characteristic polynomial is the product over blocks.
pub fn char_poly(a: &Mat) -> Vec<u64> {
    assert_eq!(a.rows(), a.cols(), "char_poly of non-square matrix");
    let n = a.rows();
    let p = a.modulus();
    let mut acc = vec![1 % p];
    let mut basis = IncrementalBasis::new(p, n);
    for s in 0..n {
        if basis.dim() == n {
            break;
        }
        let mut w = vec![0u64; n];
        w[s] = 1;
        if basis.express(&w).is_some() {
            continue;
        }
        let chain_start = basis.raw_count();
        loop {
            match basis.add(&w) {
                None => {
                    let img = a.mul(&Mat::col_vec(p, &w));
                    w = img.col(0);
                }
                Some(coords) => {
                    let k = basis.raw_count() - chain_start;
                    let mut g = vec![0u64; k + 1];
                    g[k] = 1 % p;
                    for j in 0..k {
                        g[j] = fp_neg(p, coords[chain_start + j]);
                    }
                    acc = poly_mul(p, &acc, &g);
                    break;
                }
            }
        }
    }
    debug_assert_eq!(acc.len(), n + 1);
    acc
}

/// Characteristic polynomial of a block-diagonal matrix presented as its
/// diagonal blocks: the product over the blocks.
pub fn char_poly_blocks(p: u64, blocks: &[Mat]) -> Vec<u64> {
    let mut acc = vec![1 % p];
    for b in blocks {
        acc = poly_mul(p, &acc, &char_poly(b));
    }
    acc
}

pub fn poly_deg(f: &[u64]) -> usize {
    f.iter().rposition(|&c| c != 0).unwrap_or(0)
}

pub fn poly_is_zero(f: &[u64]) -> bool {
    f.iter().all(|&c| c == 0)
}

pub fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if poly_is_zero(a) || poly_is_zero(b) {
        return vec![0];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = fp_add(p, out[i + j], fp_mul(p, ai, bj));
        }
    }
    out
}

pub fn poly_eval(p: u64, f: &[u64], x: u64) -> u64 {
    let mut acc = 0;
    for &c in f.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

/// Remainder of a modulo m; m must be nonzero.
pub fn poly_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let dm = poly_deg(m);
    assert!(!poly_is_zero(m), "polynomial division by zero");
    let mut r: Vec<u64> = a.to_vec();
    let lead_inv = fp_inv(p, m[dm]);
    while !poly_is_zero(&r) && poly_deg(&r) >= dm {
        let dr = poly_deg(&r);
        let f = fp_mul(p, r[dr], lead_inv);
        for i in 0..=dm {
            r[dr - dm + i] = fp_sub(p, r[dr - dm + i], fp_mul(p, f, m[i]));
        }
    }
    r.truncate(poly_deg(&r) + 1);
    r
}

fn poly_monic(p: u64, f: &[u64]) -> Vec<u64> {
    let d = poly_deg(f);
    let inv = fp_inv(p, f[d]);
    f[..=d].iter().map(|&c| fp_mul(p, c, inv)).collect()
}

pub fn poly_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !poly_is_zero(&b) {
        let r = poly_rem(p, &a, &b);
        a = b;
        b = r;
    }
    if poly_is_zero(&a) {
        a
    } else {
        poly_monic(p, &a)
    }
}

/// base^exp mod m over F_p[x].
pub fn poly_pow_mod(p: u64, base: &[u64], mut exp: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1 % p];
    let mut b = poly_rem(p, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_rem(p, &poly_mul(p, &acc, &b), m);
        }
        b = poly_rem(p, &poly_mul(p, &b, &b), m);
        exp >>= 1;
    }
    acc
}

/// All distinct roots of f in F_p, sorted.
///
/// Small moduli are handled by evaluation; the fixtures never leave that
/// path.  For large p the linear part gcd(f, x^p - x) is split by the usual
/// (x + a)^((p-1)/2) probes, walking a deterministically.
pub fn fp_roots(p: u64, f: &[u64]) -> Vec<u64> {
    if poly_is_zero(f) || poly_deg(f) == 0 {
        return Vec::new();
    }
    if p <= 4096 {
        return (0..p).filter(|&x| poly_eval(p, f, x) == 0).collect();
    }
    // x^p - x mod f, then gcd: the squarefree product of the linear factors.
    let xp = poly_pow_mod(p, &[0, 1], p, f);
    let mut lin = xp;
    // subtract x
    while lin.len() < 2 {
        lin.push(0);
    }
    lin[1] = fp_sub(p, lin[1], 1);
    let g = poly_gcd(p, f, &lin);
    let mut roots = Vec::new();
    split_linear(p, &g, &mut roots);
    roots.sort_unstable();
    roots
}

fn split_linear(p: u64, g: &[u64], out: &mut Vec<u64>) {
    let d = poly_deg(g);
    if d == 0 {
        return;
    }
    if d == 1 {
        // g = c1 x + c0, root = -c0/c1
        out.push(fp_mul(p, fp_neg(p, g[0]), fp_inv(p, g[1])));
        return;
    }
    if g[0] == 0 {
        out.push(0);
        let shifted: Vec<u64> = g[1..].to_vec();
        split_linear(p, &shifted, out);
        return;
    }
    // p is odd and large here; probe a = 0, 1, 2, ... until the gcd splits.
    for a in 0..p {
        let probe = poly_pow_mod(p, &[a, 1], (p - 1) / 2, g);
        let mut probe_minus_one = probe.clone();
        if probe_minus_one.is_empty() {
            probe_minus_one.push(0);
        }
        probe_minus_one[0] = fp_sub(p, probe_minus_one[0], 1);
        let h = poly_gcd(p, g, &probe_minus_one);
        let dh = poly_deg(&h);
        if dh > 0 && dh < d {
            let rest = poly_quotient_exact(p, g, &h);
            split_linear(p, &h, out);
            split_linear(p, &rest, out);
            return;
        }
    }
    unreachable!("gcd with x^p - x guarantees a split exists");
}

fn poly_quotient_exact(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let da = poly_deg(a);
    let db = poly_deg(b);
    let mut r = a.to_vec();
    let mut q = vec![0u64; da - db + 1];
    let lead_inv = fp_inv(p, b[db]);
    while !poly_is_zero(&r) && poly_deg(&r) >= db {
        let dr = poly_deg(&r);
        let f = fp_mul(p, r[dr], lead_inv);
        q[dr - db] = f;
        for i in 0..=db {
            r[dr - db + i] = fp_sub(p, r[dr - db + i], fp_mul(p, f, b[i]));
        }
    }
    debug_assert!(poly_is_zero(&r), "inexact polynomial quotient");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_companion_block() {
        // Companion matrix of x^2 + 1 over F_2 (acting by columns).
        let m = Mat::from_rows(2, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(char_poly(&m), vec![1, 0, 1]);
    }

    #[test]
    fn char_poly_matches_diagonal() {
        let m = Mat::from_rows(5, &[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]);
        // (x-2)(x-3)^2 = x^3 - 8x^2 + 21x - 18 = x^3 + 2x^2 + x + 2 mod 5
        assert_eq!(char_poly(&m), vec![2, 1, 2, 1]);
        assert_eq!(fp_roots(5, &char_poly(&m)), vec![2, 3]);
    }

    #[test]
    fn char_poly_of_nilpotent_jordan_block() {
        let m = Mat::from_rows(7, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        assert_eq!(char_poly(&m), vec![0, 0, 0, 1]);
        assert_eq!(fp_roots(7, &char_poly(&m)), vec![0]);
    }

    #[test]
    fn roots_by_evaluation_and_by_splitting_agree() {
        // (x - 3)(x - 5)(x^2 - n) over F_1009 with n a quadratic
        // non-residue, so exactly two roots survive the irreducible factor.
        let p = 1009u64;
        let mut n = 2;
        while crate::linalg::fp_pow(p, n, (p - 1) / 2) == 1 {
            n += 1;
        }
        let f = poly_mul(p, &poly_mul(p, &[fp_neg(p, 3), 1], &[fp_neg(p, 5), 1]), &[fp_neg(p, n), 0, 1]);
        let by_eval: Vec<u64> = (0..p).filter(|&x| poly_eval(p, &f, x) == 0).collect();
        // Force the large-modulus path by calling the splitter directly.
        let xp = poly_pow_mod(p, &[0, 1], p, &f);
        let mut lin = xp;
        while lin.len() < 2 {
            lin.push(0);
        }
        lin[1] = fp_sub(p, lin[1], 1);
        let g = poly_gcd(p, &f, &lin);
        let mut roots = Vec::new();
        split_linear(p, &g, &mut roots);
        roots.sort_unstable();
        assert_eq!(roots, by_eval);
        assert_eq!(roots, vec![3, 5]);
    }

    #[test]
    fn gcd_and_rem_sanity() {
        let p = 5;
        let a = poly_mul(p, &[1, 1], &[2, 1]); // (x+1)(x+2)
        let b = poly_mul(p, &[1, 1], &[3, 1]); // (x+1)(x+3)
        assert_eq!(poly_gcd(p, &a, &b), vec![1, 1]);
        assert!(poly_is_zero(&poly_rem(p, &a, &[1, 1])));
    }
}
