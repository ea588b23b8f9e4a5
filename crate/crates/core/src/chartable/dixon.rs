//! Dixon–Schneider: class constants, simultaneous eigenvectors of the class
//! matrices over a prime field, and lifting to exact cyclotomic values.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::CharTableError;
use crate::cyclotomic::Cyclo;
use crate::perm::ClassData;

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn inv_mod(a: u64, m: u64) -> u64 {
    debug_assert!(a % m != 0);
    pow_mod(a, m - 2, m)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_root(p: u64) -> u64 {
    let fs = prime_factors(p - 1);
    (2..p)
        .find(|&r| fs.iter().all(|&q| pow_mod(r, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

/// Smallest prime `l = 1 (mod exponent)` with `l > 2 sqrt(order)`.
pub fn choose_prime(exponent: u64, order: u64) -> Result<u64, CharTableError> {
    const LIMIT: u64 = 1 << 31;
    let mut l = exponent + 1;
    while l <= LIMIT {
        if l > 2 && (l as u128 * l as u128) > 4 * order as u128 && is_prime(l) {
            return Ok(l);
        }
        l += exponent;
    }
    Err(CharTableError::PrimeSearchFailed { exponent, limit: LIMIT })
}

/// `a[k][i][j]` = number of `(x, y)` in `C_i x C_j` with `xy = rep(C_k)`.
pub fn class_constants(cd: &ClassData) -> Vec<Vec<Vec<u64>>> {
    let g = cd.group();
    let r = cd.len();
    (0..r)
        .into_par_iter()
        .map(|k| {
            let z = cd.representative(k);
            let mut a = vec![vec![0u64; r]; r];
            for x in 0..g.order() as u32 {
                let y = g.mul(g.inverse(x), z);
                a[cd.class_of(x)][cd.class_of(y)] += 1;
            }
            a
        })
        .collect()
}

// ---- polynomials over F_p, coefficients low to high ----

fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    trim(&mut r);
    let dg = g.len() - 1;
    let lead_inv = inv_mod(g[dg], p);
    while r.len() > dg {
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        let shift = r.len() - 1 - dg;
        for (i, &gi) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mul_mod(c, gi, p)) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = poly_rem(&[1], m, p);
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let li = inv_mod(lead, p);
        for c in &mut a {
            *c = mul_mod(*c, li, p);
        }
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn poly_div_exact(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    trim(&mut r);
    let dg = g.len() - 1;
    let lead_inv = inv_mod(g[dg], p);
    let mut q = vec![0u64; r.len().saturating_sub(dg)];
    while r.len() > dg {
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        let shift = r.len() - 1 - dg;
        q[shift] = c;
        for (i, &gi) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mul_mod(c, gi, p)) % p;
        }
        trim(&mut r);
    }
    q
}

/// Distinct roots in `F_p` of `f`, sorted.
pub(crate) fn roots(f: &[u64], p: u64) -> Vec<u64> {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() <= 1 {
        return Vec::new();
    }
    // Product of the distinct linear factors: gcd(f, x^p - x).
    let xp = poly_powmod(&[0, 1], p, &f, p);
    let mut g = poly_gcd(&f, &poly_sub(&xp, &[0, 1], p), p);
    let mut out = Vec::new();
    if g.len() > 1 && g[0] == 0 {
        out.push(0);
        g = poly_div_exact(&g, &[0, 1], p);
    }
    split_linear(&g, p, &mut out);
    out.sort_unstable();
    out
}

/// Cantor–Zassenhaus splitting of a squarefree product of distinct linear
/// factors with nonzero roots, using shifts 1, 2, 3, ... in turn.
fn split_linear(g: &[u64], p: u64, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => return,
        2 => {
            // x + c
            out.push((p - g[0] % p) % p);
            return;
        }
        _ => {}
    }
    let half = (p - 1) / 2;
    for delta in 1..p {
        let h = poly_powmod(&[delta, 1], half, g, p);
        let d = poly_gcd(g, &poly_sub(&h, &[1], p), p);
        if d.len() > 1 && d.len() < g.len() {
            split_linear(&d, p, out);
            split_linear(&poly_div_exact(g, &d, p), p, out);
            return;
        }
    }
    unreachable!("splitting a product of distinct linear factors always succeeds");
}

/// Characteristic polynomial via reduction to upper Hessenberg form.
pub(crate) fn charpoly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = inv_mod(h[col + 1][col], p);
        for i in col + 2..n {
            let f = mul_mod(h[i][col], inv, p);
            if f == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = (h[i][j] + p - mul_mod(f, h[col + 1][j], p)) % p;
            }
            for row in h.iter_mut() {
                let add = mul_mod(f, row[i], p);
                row[col + 1] = (row[col + 1] + add) % p;
            }
        }
    }
    // c[k] = charpoly of the leading k x k block
    let mut c: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let mut next = vec![0u64; k + 1];
        // (x - h[k-1][k-1]) * c[k-1]
        for (i, &v) in c[k - 1].iter().enumerate() {
            next[i + 1] = (next[i + 1] + v) % p;
            next[i] = (next[i] + p - mul_mod(h[k - 1][k - 1], v, p)) % p;
        }
        let mut prod = 1u64;
        for i in (0..k - 1).rev() {
            prod = mul_mod(prod, h[i + 1][i], p);
            let coeff = mul_mod(prod, h[i][k - 1], p);
            if coeff == 0 {
                continue;
            }
            for (t, &v) in c[i].iter().enumerate() {
                next[t] = (next[t] + p - mul_mod(coeff, v, p)) % p;
            }
        }
        c.push(next);
    }
    c.pop().unwrap()
}

/// Row-reduces `rows` in place to reduced echelon form; returns pivots.
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][col], p);
        for v in rows[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..width {
                    rows[i][j] = (rows[i][j] + p - mul_mod(f, rows[r][j], p)) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right null space `{c : A c = 0}`.
fn nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    let pivots = rref(&mut m, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Common eigenvectors `w` of all class matrices, normalized with `w[0] = 1`.
pub fn common_eigenvectors(
    constants: &[Vec<Vec<u64>>],
    p: u64,
) -> Result<Vec<Vec<u64>>, CharTableError> {
    let r = constants.len();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect()];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for mut basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let pivots = rref(&mut basis, p);
            let d = basis.len();
            // M_j b_s, with (M_j)_{ik} = a_{ijk}
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    (0..r)
                        .map(|i| {
                            (0..r).fold(0u64, |acc, k| {
                                (acc + mul_mod(constants[k][i][j] % p, b[k], p)) % p
                            })
                        })
                        .collect()
                })
                .collect();
            // restricted matrix a[t][s] = coordinate t of M_j b_s
            let a: Vec<Vec<u64>> = (0..d)
                .map(|t| (0..d).map(|s| images[s][pivots[t]]).collect())
                .collect();
            let mut found = 0;
            for lambda in roots(&charpoly(&a, p), p) {
                let shifted: Vec<Vec<u64>> = a
                    .iter()
                    .enumerate()
                    .map(|(t, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(s, &v)| if s == t { (v + p - lambda) % p } else { v })
                            .collect()
                    })
                    .collect();
                let coords = nullspace(&shifted, p);
                found += coords.len();
                let sub: Vec<Vec<u64>> = coords
                    .iter()
                    .map(|c| {
                        (0..r)
                            .map(|i| {
                                (0..d).fold(0u64, |acc, s| (acc + mul_mod(c[s], basis[s][i], p)) % p)
                            })
                            .collect()
                    })
                    .collect();
                next.push(sub);
            }
            if found != d {
                return Err(CharTableError::Internal(format!(
                    "class matrix {j} not diagonalizable over F_{p}"
                )));
            }
        }
        spaces = next;
    }
    spaces
        .into_iter()
        .map(|mut s| {
            if s.len() != 1 {
                return Err(CharTableError::Internal(
                    "class matrices failed to separate characters".into(),
                ));
            }
            rref(&mut s, p);
            let v = s.pop().unwrap();
            if v[0] != 1 {
                return Err(CharTableError::Internal("eigenvector vanishes at identity".into()));
            }
            Ok(v)
        })
        .collect()
}

/// Character values mod `p` from a normalized eigenvector `w`, and the degree.
pub fn modular_character(cd: &ClassData, w: &[u64], p: u64) -> Result<(u64, Vec<u64>), CharTableError> {
    let r = cd.len();
    let order = cd.group().order() as u64;
    let mut s = 0u64;
    for j in 0..r {
        let jj = cd.inverse_class(j);
        let t = mul_mod(mul_mod(w[j], w[jj], p), inv_mod(cd.size(j) as u64 % p, p), p);
        s = (s + t) % p;
    }
    let d2 = mul_mod(order % p, inv_mod(s, p), p);
    let degree = (1..=order)
        .take_while(|d| d * d <= order)
        .find(|d| (d * d) % p == d2)
        .ok_or_else(|| CharTableError::Internal("no degree matches".into()))?;
    let values = (0..r)
        .map(|j| mul_mod(mul_mod(w[j], degree, p), inv_mod(cd.size(j) as u64 % p, p), p))
        .collect();
    Ok((degree, values))
}

/// Exact values from residues: on a class of order `o`, the eigenvalue
/// multiplicities are recovered by a discrete Fourier transform mod `p`.
pub fn lift_character(
    cd: &ClassData,
    degree: u64,
    residues: &[u64],
    p: u64,
    exponent: u64,
) -> Result<Vec<Cyclo>, CharTableError> {
    let z = pow_mod(primitive_root(p), (p - 1) / exponent, p);
    (0..cd.len())
        .map(|c| {
            let o = cd.element_order(c) as u64;
            if o == 1 {
                return Ok(Cyclo::from_int(degree as i64));
            }
            let zo = pow_mod(z, exponent / o, p);
            let o_inv = inv_mod(o % p, p);
            let vals: Vec<u64> = (0..o).map(|t| residues[cd.power(c, t as i64)]).collect();
            let mut terms = Vec::new();
            let mut total = 0u64;
            for k in 0..o {
                let step = pow_mod(zo, (o - k) % o, p);
                let mut acc = 0u64;
                let mut w = 1u64;
                for &v in &vals {
                    acc = (acc + mul_mod(v, w, p)) % p;
                    w = mul_mod(w, step, p);
                }
                let mu = mul_mod(acc, o_inv, p);
                if mu > degree {
                    return Err(CharTableError::Internal(format!(
                        "eigenvalue multiplicity {mu} exceeds degree {degree}"
                    )));
                }
                total += mu;
                if mu > 0 {
                    terms.push((k as i64, BigRational::from_integer(BigInt::from(mu))));
                }
            }
            if total != degree {
                return Err(CharTableError::Internal("multiplicities do not sum to the degree".into()));
            }
            Ok(Cyclo::from_root_multiplicities(o as u32, terms))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(f: &[u64], x: u64, p: u64) -> u64 {
        f.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
    }

    #[test]
    fn prime_choice() {
        assert_eq!(choose_prime(6, 6).unwrap(), 7);
        assert_eq!(choose_prime(60, 14400).unwrap(), 241);
        let l = choose_prime(19866, 39732).unwrap();
        assert_eq!(l % 19866, 1);
        assert!(is_prime(l));
    }

    #[test]
    fn root_finding() {
        let p = 101;
        // x (x-3) (x-5)^2 (x-77)
        let mut f = vec![1u64];
        for r in [3u64, 5, 5, 0, 77] {
            let mut g = vec![0u64; f.len() + 1];
            for (i, &c) in f.iter().enumerate() {
                g[i + 1] = (g[i + 1] + c) % p;
                g[i] = (g[i] + p - mul_mod(r, c, p)) % p;
            }
            f = g;
        }
        assert_eq!(roots(&f, p), vec![0, 3, 5, 77]);
        // x^2 - 2 is irreducible mod 101 (2 is a non-residue since 101 = 5 mod 8)
        assert!(roots(&[99, 0, 1], p).is_empty());
    }

    #[test]
    fn charpoly_matches_determinant_evaluation() {
        let p = 1009;
        let m = vec![
            vec![2, 7, 0, 1],
            vec![3, 0, 5, 9],
            vec![0, 4, 4, 4],
            vec![8, 1, 6, 3],
        ];
        let f = charpoly(&m, p);
        assert_eq!(f.len(), 5);
        for x in [0u64, 1, 17, 500] {
            // det(xI - M) by elimination
            let mut a: Vec<Vec<u64>> = m
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, &v)| ((if i == j { x } else { 0 }) + p - v) % p)
                        .collect()
                })
                .collect();
            let mut det = 1u64;
            for c in 0..4 {
                let Some(piv) = (c..4).find(|&i| a[i][c] != 0) else {
                    det = 0;
                    break;
                };
                if piv != c {
                    a.swap(piv, c);
                    det = (p - det) % p;
                }
                det = mul_mod(det, a[c][c], p);
                let inv = inv_mod(a[c][c], p);
                for i in c + 1..4 {
                    let f = mul_mod(a[i][c], inv, p);
                    for j in 0..4 {
                        a[i][j] = (a[i][j] + p - mul_mod(f, a[c][j], p)) % p;
                    }
                }
            }
            assert_eq!(eval(&f, x, p), det);
        }
    }
}
