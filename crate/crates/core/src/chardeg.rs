//! Irreducible character degrees by the class-algebra method.
//!
//! The class matrices `M_j` with `(M_j)_{kl} = #{x ∈ C_j : x^-1 z_l ∈ C_k}`
//! commute, and their common eigenvectors are the central characters
//! `ω_χ(C_k) = |C_k| χ(g_k) / χ(1)`. Working over `GF(p)` with
//! `p ≡ 1 (mod exp G)`, eigenspaces are split one class matrix at a time until
//! all are lines; each line then gives `χ(1)^2 = |G| / Σ_k ω(C_k) ω(C_k') / |C_k|`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, ClassData, FiniteGroup};
use crate::numtheory::{is_prime, is_prime_power, pow_mod};

/// Character degrees with multiplicities, ascending by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeMultiset {
    pairs: Vec<(u64, usize)>,
}

impl DegreeMultiset {
    pub fn from_degrees<I: IntoIterator<Item = u64>>(degrees: I) -> DegreeMultiset {
        let mut all: Vec<u64> = degrees.into_iter().collect();
        all.sort_unstable();
        let mut pairs: Vec<(u64, usize)> = Vec::new();
        for d in all {
            match pairs.last_mut() {
                Some((e, m)) if *e == d => *m += 1,
                _ => pairs.push((d, 1)),
            }
        }
        DegreeMultiset { pairs }
    }

    /// `(degree, multiplicity)` pairs.
    pub fn pairs(&self) -> &[(u64, usize)] {
        &self.pairs
    }

    /// Distinct degrees.
    pub fn degree_set(&self) -> Vec<u64> {
        self.pairs.iter().map(|&(d, _)| d).collect()
    }

    pub fn multiplicity(&self, d: u64) -> usize {
        self.pairs
            .iter()
            .find(|&&(e, _)| e == d)
            .map_or(0, |&(_, m)| m)
    }

    /// Number of irreducible characters.
    pub fn count(&self) -> usize {
        self.pairs.iter().map(|&(_, m)| m).sum()
    }

    pub fn sum_of_squares(&self) -> u128 {
        self.pairs
            .iter()
            .map(|&(d, m)| d as u128 * d as u128 * m as u128)
            .sum()
    }

    /// Every degree, repeated by multiplicity.
    pub fn expanded(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs
            .iter()
            .flat_map(|&(d, m)| std::iter::repeat(d).take(m))
    }

    /// Degrees of a direct product.
    pub fn product(&self, other: &DegreeMultiset) -> DegreeMultiset {
        let mut pairs: Vec<(u64, usize)> = Vec::new();
        for &(d, m) in &self.pairs {
            for &(e, n) in &other.pairs {
                pairs.push((d * e, m * n));
            }
        }
        pairs.sort_unstable();
        let mut merged: Vec<(u64, usize)> = Vec::new();
        for (d, m) in pairs {
            match merged.last_mut() {
                Some((e, k)) if *e == d => *k += m,
                _ => merged.push((d, m)),
            }
        }
        DegreeMultiset { pairs: merged }
    }

    /// Checks the sum-of-squares identity, the character count and that every
    /// degree divides the order.
    pub fn check(&self, order: usize, class_count: usize) -> Result<()> {
        if self.sum_of_squares() != order as u128 {
            return Err(Error::Degrees(format!(
                "sum of squares {} differs from |G| = {order}",
                self.sum_of_squares()
            )));
        }
        if self.count() != class_count {
            return Err(Error::Degrees(format!(
                "{} characters for {class_count} classes",
                self.count()
            )));
        }
        if let Some(&(d, _)) = self.pairs.iter().find(|&&(d, _)| order as u64 % d != 0) {
            return Err(Error::Degrees(format!(
                "degree {d} does not divide {order}"
            )));
        }
        if self.multiplicity(1) == 0 {
            return Err(Error::Degrees("no linear character".into()));
        }
        Ok(())
    }
}

impl fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|&(d, m)| {
                if m == 1 {
                    d.to_string()
                } else {
                    format!("{d}x{m}")
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Degrees of `SL2(q)`, `q = 2^a`, `a ≥ 2`: `1`, `q`, `q+1` with multiplicity
/// `q/2 - 1` and `q-1` with multiplicity `q/2`.
pub fn sl2_degrees_closed_form(q: u64) -> Result<DegreeMultiset> {
    match is_prime_power(q) {
        Some((2, a)) if a >= 2 => {}
        _ => {
            return Err(Error::InvalidArgument(format!(
                "closed form needs q = 2^a with a >= 2, got {q}"
            )))
        }
    }
    let mut pairs = vec![
        (1, 1),
        (q - 1, (q / 2) as usize),
        (q, 1),
        (q + 1, (q / 2 - 1) as usize),
    ];
    pairs.sort_unstable();
    Ok(DegreeMultiset { pairs })
}

/// Least prime `p ≡ 1 (mod e)` with `p > 2 √n`.
pub fn working_prime(exponent: u64, order: usize) -> u64 {
    let bound = 2 * isqrt(order as u64) + 2;
    let mut p = (bound / exponent) * exponent + 1;
    while p <= bound || !is_prime(p) {
        p += exponent;
    }
    p
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `cd(G)` with the default working prime.
pub fn character_degrees(g: &FiniteGroup) -> Result<DegreeMultiset> {
    let classes = conjugacy_classes(g);
    let p = working_prime(g.exponent(&classes), g.order());
    degrees_with_classes(g, &classes, p)
}

/// `cd(G)` computed modulo a caller-chosen prime, which must satisfy
/// `p ≡ 1 (mod exp G)` and `p > 2 √|G|`.
pub fn character_degrees_with_prime(g: &FiniteGroup, p: u64) -> Result<DegreeMultiset> {
    let classes = conjugacy_classes(g);
    degrees_with_classes(g, &classes, p)
}

/// `cd(G)` from precomputed classes.
pub fn degrees_with_classes(
    g: &FiniteGroup,
    classes: &ClassData,
    p: u64,
) -> Result<DegreeMultiset> {
    let e = g.exponent(classes);
    if !is_prime(p) || (p - 1) % e != 0 || p <= 2 * isqrt(g.order() as u64) + 1 || p >= 1 << 31 {
        return Err(Error::InvalidArgument(format!(
            "{p} is not a usable working prime for exponent {e} and order {}",
            g.order()
        )));
    }
    let n = classes.len();
    let f = Fp(p);
    let mut pending: Vec<Vec<Vec<u64>>> = vec![identity_basis(n)];
    let mut lines: Vec<Vec<u64>> = Vec::new();

    for j in 0..n {
        pending.retain(|b| {
            if b.len() == 1 {
                lines.push(b[0].clone());
                false
            } else {
                true
            }
        });
        if pending.is_empty() {
            break;
        }
        if j == classes.identity_class() {
            continue;
        }
        let m = class_matrix(g, classes, j, p);
        let mut next = Vec::new();
        for basis in pending.drain(..) {
            next.extend(split(&f, &m, n, basis)?);
        }
        pending = next;
    }
    for b in pending {
        if b.len() != 1 {
            return Err(Error::Degrees(format!(
                "eigenspace of dimension {} left unsplit",
                b.len()
            )));
        }
        lines.push(b[0].clone());
    }

    let order = g.order() as u64;
    let inverse_class: Vec<usize> = classes
        .classes()
        .iter()
        .map(|c| classes.class_of(g.inv(c.representative)))
        .collect();
    let id = classes.identity_class();
    let mut degrees = Vec::with_capacity(lines.len());
    for w in lines {
        let scale = f
            .inv(w[id])
            .ok_or_else(|| Error::Degrees("eigenvector vanishes at 1".into()))?;
        let w: Vec<u64> = w.iter().map(|&x| f.mul(x, scale)).collect();
        let mut s = 0;
        for (k, c) in classes.classes().iter().enumerate() {
            let term = f.mul(w[k], w[inverse_class[k]]);
            let size_inv = f.inv(c.size as u64 % p).expect("p exceeds class sizes");
            s = f.add(s, f.mul(term, size_inv));
        }
        let s_inv = f
            .inv(s)
            .ok_or_else(|| Error::Degrees("degenerate norm".into()))?;
        let d2 = f.mul(order % p, s_inv);
        let d = (1..=isqrt(order))
            .find(|&d| d * d % p == d2)
            .ok_or_else(|| Error::Degrees(format!("no integer square root of {d2} mod {p}")))?;
        degrees.push(d);
    }
    let result = DegreeMultiset::from_degrees(degrees);
    result.check(g.order(), n)?;
    Ok(result)
}

fn identity_basis(n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect()
}

/// Row-major `n × n` class matrix of class `j`, reduced mod `p`.
fn class_matrix(g: &FiniteGroup, classes: &ClassData, j: usize, p: u64) -> Vec<u64> {
    let n = classes.len();
    let members = &classes.classes()[j].members;
    let inv: Vec<usize> = members.iter().map(|&x| g.inv(x as usize)).collect();
    let columns: Vec<Vec<u64>> = classes
        .classes()
        .par_iter()
        .map(|target| {
            let z = target.representative;
            let mut col = vec![0u64; n];
            for &xi in &inv {
                col[classes.class_of(g.mul(xi, z))] += 1;
            }
            col
        })
        .collect();
    let mut m = vec![0u64; n * n];
    for (l, col) in columns.iter().enumerate() {
        for (k, &c) in col.iter().enumerate() {
            m[k * n + l] = c % p;
        }
    }
    m
}

/// Splits the span of `basis` (reduced echelon rows) into eigenspaces of `m`.
fn split(f: &Fp, m: &[u64], n: usize, basis: Vec<Vec<u64>>) -> Result<Vec<Vec<Vec<u64>>>> {
    let dim = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).expect("nonzero basis row"))
        .collect();
    // restriction: column i holds the coordinates of m·b_i
    let images: Vec<Vec<u64>> = basis.iter().map(|b| f.mat_vec(m, n, b)).collect();
    let mut a = vec![0u64; dim * dim];
    for (i, img) in images.iter().enumerate() {
        for (r, &pv) in pivots.iter().enumerate() {
            a[r * dim + i] = img[pv];
        }
    }
    let scalar =
        (0..dim).all(|r| (0..dim).all(|c| a[r * dim + c] == if r == c { a[0] } else { 0 }));
    if scalar {
        return Ok(vec![basis]);
    }
    let roots = f.roots(&f.charpoly(&a, dim));
    let mut parts = Vec::new();
    let mut total = 0;
    for lambda in roots {
        let mut shifted = a.clone();
        for i in 0..dim {
            shifted[i * dim + i] = f.sub(shifted[i * dim + i], lambda);
        }
        let rows: Vec<Vec<u64>> = shifted.chunks(dim).map(|r| r.to_vec()).collect();
        let kernel = f.nullspace(rows, dim);
        let mut vectors: Vec<Vec<u64>> = kernel
            .iter()
            .map(|c| {
                let mut v = vec![0u64; n];
                for (coef, b) in c.iter().zip(&basis) {
                    if *coef != 0 {
                        for (x, y) in v.iter_mut().zip(b) {
                            *x = f.add(*x, f.mul(*coef, *y));
                        }
                    }
                }
                v
            })
            .collect();
        f.rref(&mut vectors);
        total += vectors.len();
        parts.push(vectors);
    }
    if total != dim {
        return Err(Error::Degrees(format!(
            "class matrix is not split over GF({}): eigenspaces span {total} of {dim}",
            f.0
        )));
    }
    Ok(parts)
}

/// Arithmetic in `GF(p)` for `p < 2^31`, with the dense linear algebra and
/// polynomial root finding used above.
struct Fp(u64);

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    fn inv(&self, a: u64) -> Option<u64> {
        (a % self.0 != 0).then(|| pow_mod(a, self.0 - 2, self.0))
    }

    fn mat_vec(&self, m: &[u64], n: usize, v: &[u64]) -> Vec<u64> {
        (0..n)
            .map(|k| {
                m[k * n..(k + 1) * n]
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&x, &y)| (acc + x * y) % self.0)
            })
            .collect()
    }

    /// Reduced row echelon form in place; drops zero rows.
    fn rref(&self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let s = self.inv(rows[rank][c]).expect("nonzero pivot");
            for x in rows[rank].iter_mut() {
                *x = self.mul(*x, s);
            }
            let pivot_row = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row[c] != 0 {
                    let factor = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(factor, y));
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        rows.truncate(rank);
        pivots
    }

    fn nullspace(&self, mut rows: Vec<Vec<u64>>, cols: usize) -> Vec<Vec<u64>> {
        let pivots = self.rref(&mut rows);
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut x = vec![0u64; cols];
                x[free] = 1;
                for (row, &pv) in rows.iter().zip(&pivots) {
                    x[pv] = self.sub(0, row[free]);
                }
                x
            })
            .collect()
    }

    /// Characteristic polynomial (low degree first) via Hessenberg reduction.
    fn charpoly(&self, a: &[u64], n: usize) -> Vec<u64> {
        let mut h: Vec<Vec<u64>> = a.chunks(n).map(|r| r.to_vec()).collect();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
                continue;
            };
            if i != j + 1 {
                h.swap(i, j + 1);
                for row in h.iter_mut() {
                    row.swap(i, j + 1);
                }
            }
            let pinv = self.inv(h[j + 1][j]).expect("nonzero pivot");
            for k in j + 2..n {
                let u = self.mul(h[k][j], pinv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    let t = self.mul(u, h[j + 1][c]);
                    h[k][c] = self.sub(h[k][c], t);
                }
                for row in h.iter_mut() {
                    let t = self.mul(u, row[k]);
                    row[j + 1] = self.add(row[j + 1], t);
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - Σ_i h_{m-i,m} Π h_{k,k-1} p_{m-i-1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 0..n {
            let prev = &polys[m];
            let mut next = vec![0u64; m + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.sub(next[d], self.mul(h[m][m], c));
            }
            let mut t = 1u64;
            for i in 1..=m {
                t = self.mul(t, h[m - i + 1][m - i]);
                let coef = self.mul(h[m - i][m], t);
                if coef != 0 {
                    for (d, &c) in polys[m - i].iter().enumerate() {
                        next[d] = self.sub(next[d], self.mul(coef, c));
                    }
                }
            }
            polys.push(next);
        }
        polys.pop().expect("n + 1 polynomials")
    }

    fn trim(&self, mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        if a.is_empty() {
            a.push(0);
        }
        a
    }

    fn rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = self.trim(a.to_vec());
        let lead = self
            .inv(*b.last().expect("nonzero divisor"))
            .expect("monic-able");
        while r.len() >= b.len() && !(r.len() == 1 && r[0] == 0) {
            let shift = r.len() - b.len();
            let factor = self.mul(*r.last().expect("nonempty"), lead);
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(factor, c));
            }
            r.pop();
            if r.is_empty() {
                r.push(0);
                break;
            }
            r = self.trim(r);
        }
        r
    }

    fn mulmod(&self, a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        self.rem(&out, f)
    }

    fn powmod(&self, base: &[u64], mut e: u64, f: &[u64]) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = self.rem(base, f);
        while e > 0 {
            if e & 1 == 1 {
                result = self.mulmod(&result, &b, f);
            }
            b = self.mulmod(&b, &b, f);
            e >>= 1;
        }
        result
    }

    fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        while !(b.len() == 1 && b[0] == 0) {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        let lead = self.inv(*a.last().expect("nonempty")).expect("nonzero gcd");
        a.iter().map(|&c| self.mul(c, lead)).collect()
    }

    /// Distinct roots in `GF(p)`, ascending.
    fn roots(&self, f: &[u64]) -> Vec<u64> {
        let p = self.0;
        let x = vec![0, 1];
        let mut xp = self.powmod(&x, p, f);
        xp.resize(xp.len().max(2), 0);
        xp[1] = self.sub(xp[1], 1);
        let g = self.gcd(f, &xp);
        let mut roots = Vec::new();
        self.split_linear(g, &mut roots);
        roots.sort_unstable();
        roots
    }

    /// Roots of a squarefree product of linear factors, by deterministic
    /// equal-degree splitting with `(x + a)^((p-1)/2) - 1`, `a = 0, 1, ...`.
    fn split_linear(&self, g: Vec<u64>, out: &mut Vec<u64>) {
        match g.len() {
            0 | 1 => {}
            2 => out.push(self.sub(0, self.mul(g[0], self.inv(g[1]).expect("degree 1")))),
            _ => {
                for a in 0.. {
                    let mut h = self.powmod(&[a, 1], (self.0 - 1) / 2, &g);
                    h[0] = self.sub(h[0], 1);
                    let d = self.gcd(&g, &h);
                    if d.len() > 1 && d.len() < g.len() {
                        let q = self.div_exact(&g, &d);
                        self.split_linear(d, out);
                        self.split_linear(q, out);
                        return;
                    }
                }
            }
        }
    }

    fn div_exact(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = a.to_vec();
        let lead = self.inv(*b.last().expect("nonzero")).expect("nonzero lead");
        let mut q = vec![0u64; a.len() - b.len() + 1];
        for shift in (0..q.len()).rev() {
            let factor = self.mul(r[shift + b.len() - 1], lead);
            q[shift] = factor;
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(factor, c));
            }
        }
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        module_catalog, sl2_group, small::extraspecial, ModuleLabel, DEFAULT_CEILING,
    };
    use std::sync::Arc;

    fn sl2(q: u64) -> Arc<FiniteGroup> {
        Arc::new(sl2_group(q, DEFAULT_CEILING).unwrap())
    }

    #[test]
    fn a5_matches_hand_table() {
        let d = character_degrees(&sl2(4)).unwrap();
        assert_eq!(d.expanded().collect::<Vec<_>>(), vec![1, 3, 3, 4, 5]);
        assert_eq!(d, sl2_degrees_closed_form(4).unwrap());
    }

    #[test]
    fn sl2_even_matches_closed_form() {
        for q in [8, 16] {
            let d = character_degrees(&sl2(q)).unwrap();
            assert_eq!(d, sl2_degrees_closed_form(q).unwrap(), "q = {q}");
        }
        assert_eq!(
            sl2_degrees_closed_form(8)
                .unwrap()
                .expanded()
                .collect::<Vec<_>>(),
            vec![1, 7, 7, 7, 7, 8, 9, 9, 9]
        );
        assert_eq!(
            sl2_degrees_closed_form(16).unwrap().degree_set(),
            vec![1, 15, 16, 17]
        );
        assert!(sl2_degrees_closed_form(9).is_err());
        assert!(sl2_degrees_closed_form(2).is_err());
    }

    #[test]
    fn closed_form_sum_of_squares() {
        for a in 2..=10u32 {
            let q = 1u64 << a;
            let d = sl2_degrees_closed_form(q).unwrap();
            assert_eq!(d.sum_of_squares(), (q * (q * q - 1)) as u128);
            assert_eq!(d.count() as u64, q + 1);
        }
    }

    #[test]
    fn binary_icosahedral() {
        // SL2(5): 1, 2, 2, 3, 3, 4, 4, 5, 6
        let d = character_degrees(&sl2(5)).unwrap();
        assert_eq!(
            d.expanded().collect::<Vec<_>>(),
            vec![1, 2, 2, 3, 3, 4, 4, 5, 6]
        );
    }

    #[test]
    fn abelian_and_extraspecial() {
        let c12 = FiniteGroup::cyclic(12).unwrap();
        assert_eq!(character_degrees(&c12).unwrap().pairs(), &[(1, 12)]);
        let trivial = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(character_degrees(&trivial).unwrap().pairs(), &[(1, 1)]);
        for (t, e) in [(2u64, 4u64), (3, 3), (5, 5)] {
            let g = extraspecial(t, t * t * t, e).unwrap();
            let d = character_degrees(&g).unwrap();
            assert_eq!(d.pairs(), &[(1, (t * t) as usize), (t, (t - 1) as usize)]);
        }
    }

    #[test]
    fn direct_products_multiply() {
        let a5 = sl2(4);
        let a5_deg = character_degrees(&a5).unwrap();
        for other in [
            Arc::new(FiniteGroup::cyclic(5).unwrap()),
            Arc::new(extraspecial(2, 8, 4).unwrap()),
        ] {
            let od = character_degrees(&other).unwrap();
            let prod = FiniteGroup::direct_product(a5.clone(), other, DEFAULT_CEILING).unwrap();
            assert_eq!(character_degrees(&prod).unwrap(), a5_deg.product(&od));
        }
    }

    #[test]
    fn quotient_degrees_appear() {
        let v0 = Arc::new(module_catalog(&ModuleLabel::Natural(4), DEFAULT_CEILING).unwrap());
        let g = FiniteGroup::semidirect(v0, DEFAULT_CEILING).unwrap();
        let big = character_degrees(&g).unwrap().degree_set();
        for d in character_degrees(&sl2(4)).unwrap().degree_set() {
            assert!(big.contains(&d));
        }
    }

    #[test]
    fn independent_of_working_prime() {
        let g = sl2(8);
        let classes = conjugacy_classes(&g);
        let e = g.exponent(&classes);
        let p1 = working_prime(e, g.order());
        let mut p2 = p1 + e;
        while !is_prime(p2) {
            p2 += e;
        }
        assert_eq!(
            character_degrees_with_prime(&g, p1).unwrap(),
            character_degrees_with_prime(&g, p2).unwrap()
        );
        assert_eq!(p1, 127);
        assert!(character_degrees_with_prime(&g, p1 + 1).is_err());
        assert!(character_degrees_with_prime(&g, 131).is_err());
    }

    #[test]
    fn working_prime_conditions() {
        let p = working_prime(30, 60);
        assert!(is_prime(p) && p % 30 == 1 && p > 2 * 8);
        assert_eq!(p, 31);
    }

    #[test]
    fn root_finding() {
        let f = Fp(101);
        // (x - 3)(x - 7)(x - 7)(x - 50) has distinct roots 3, 7, 50
        let mut poly = vec![1u64];
        for r in [3u64, 7, 7, 50] {
            let mut next = vec![0u64; poly.len() + 1];
            for (d, &c) in poly.iter().enumerate() {
                next[d + 1] = f.add(next[d + 1], c);
                next[d] = f.sub(next[d], f.mul(r, c));
            }
            poly = next;
        }
        assert_eq!(f.roots(&poly), vec![3, 7, 50]);
        // x^2 + 1 has no roots mod 103
        assert!(Fp(103).roots(&[1, 0, 1]).is_empty());
    }

    #[test]
    fn charpoly_of_small_matrix() {
        let f = Fp(97);
        // [[2,1,0],[0,2,0],[1,0,5]]: (x-2)^2 (x-5)
        let a = [2, 1, 0, 0, 2, 0, 1, 0, 5];
        let expected = {
            // x^3 - 9x^2 + 24x - 20
            vec![f.sub(0, 20), 24, f.sub(0, 9), 1]
        };
        assert_eq!(f.charpoly(&a, 3), expected);
    }

    #[test]
    fn multiset_bookkeeping() {
        let d = DegreeMultiset::from_degrees([5, 1, 3, 4, 3]);
        assert_eq!(d.pairs(), &[(1, 1), (3, 2), (4, 1), (5, 1)]);
        assert_eq!(d.to_string(), "{1, 3x2, 4, 5}");
        assert!(d.check(60, 5).is_ok());
        assert!(d.check(61, 5).is_err());
        assert!(d.check(60, 6).is_err());
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"pairs":[[1,1],[3,2],[4,1],[5,1]]}"#
        );
    }
}
