//! Linear actions of `SL2(q)` on vector spaces over a prime field, and the
//! catalogue of modules used throughout: `V0`, `V1`, `W`, `U`, the natural
//! modules and the `Ω4^-` modules.
//!
//! Every module is obtained from a matrix representation over `GF(q)` by
//! restricting scalars to the prime field, optionally followed by passing to
//! the fixed points of a semilinear involution (a smaller field of
//! definition). Vectors are indices in `0..r^n` whose base-`r` digits, most
//! significant first, are the coordinates.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::sl2::sl2_5_in_sl2_9;
use super::{sl2_group, FiniteGroup, Matrix};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::numtheory::is_prime_power;

/// `GF(r)^n` with vectors encoded as integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSpace {
    r: u32,
    dim: usize,
    size: usize,
}

impl VectorSpace {
    pub fn new(r: u32, dim: usize) -> VectorSpace {
        VectorSpace {
            r,
            dim,
            size: (r as usize).pow(dim as u32),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Coordinates, most significant first.
    pub fn digits(&self, mut v: usize) -> Vec<u32> {
        let mut d = vec![0u32; self.dim];
        for slot in d.iter_mut().rev() {
            *slot = (v % self.r as usize) as u32;
            v /= self.r as usize;
        }
        d
    }

    pub fn from_digits(&self, digits: &[u32]) -> Option<usize> {
        if digits.len() != self.dim || digits.iter().any(|&d| d >= self.r) {
            return None;
        }
        Some(
            digits
                .iter()
                .fold(0usize, |acc, &d| acc * self.r as usize + d as usize),
        )
    }

    /// The `k`-th standard basis vector.
    pub fn basis_vector(&self, k: usize) -> usize {
        (self.r as usize).pow((self.dim - 1 - k) as u32)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.r == 2 {
            return a ^ b;
        }
        let r = self.r as usize;
        let (mut a, mut b, mut place, mut out) = (a, b, 1usize, 0usize);
        while a > 0 || b > 0 {
            out += ((a % r + b % r) % r) * place;
            a /= r;
            b /= r;
            place *= r;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        if self.r == 2 {
            return a;
        }
        let r = self.r as usize;
        let (mut a, mut place, mut out) = (a, 1usize, 0usize);
        while a > 0 {
            out += ((r - a % r) % r) * place;
            a /= r;
            place *= r;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleLabel {
    /// Natural module of `SL2(4)` over `GF(2)`.
    V0,
    /// `SL2(4)` embedded as `Ω4^-(2)` in `SL4(2)`.
    V1,
    /// `SL2(5)` inside `SL4(3)`, through `SL2(5) < SL2(9)`.
    W,
    /// Natural module of `SL2(5)`.
    U,
    /// Natural module of `SL2(2^a)` over `GF(2)`, dimension `2a`.
    Natural(u64),
    /// `SL2(s^2) ≅ Ω4^-(s)` on its 4-dimensional `GF(s)` module, seen over `GF(2)`.
    OmegaMinus(u64),
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::V0 => write!(f, "V0"),
            ModuleLabel::V1 => write!(f, "V1"),
            ModuleLabel::W => write!(f, "W"),
            ModuleLabel::U => write!(f, "U"),
            ModuleLabel::Natural(q) => write!(f, "natural({q})"),
            ModuleLabel::OmegaMinus(q) => write!(f, "omega_minus({q})"),
        }
    }
}

/// A group `H ≅ SL2(q)` acting linearly on `GF(r)^n`.
pub struct ModuleAction {
    label: ModuleLabel,
    group: Arc<FiniteGroup>,
    sl2_q: u64,
    space: VectorSpace,
    matrices: Vec<Vec<u32>>,
    table: Vec<u32>,
    kernel: Vec<usize>,
}

impl fmt::Debug for ModuleAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleAction")
            .field("label", &self.label)
            .field("group", &self.group.name())
            .field("r", &self.space.r)
            .field("dim", &self.space.dim)
            .finish()
    }
}

impl ModuleAction {
    pub fn label(&self) -> &ModuleLabel {
        &self.label
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `q` such that the acting group is `SL2(q)`.
    pub fn sl2_q(&self) -> u64 {
        self.sl2_q
    }

    pub fn space(&self) -> &VectorSpace {
        &self.space
    }

    /// `|V|`.
    pub fn size(&self) -> usize {
        self.space.size
    }

    pub fn apply(&self, h: usize, v: usize) -> usize {
        self.table[h * self.space.size + v] as usize
    }

    /// Matrix of `h` over `GF(r)`, row-major; column `k` is the image of the
    /// `k`-th basis vector.
    pub fn matrix(&self, h: usize) -> &[u32] {
        &self.matrices[h]
    }

    /// Elements of the acting group that act trivially.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }
}

// Row reduction over the prime field GF(r). Returns pivot columns; `rows`
// becomes the reduced echelon basis of its span.
fn rref(rows: &mut Vec<Vec<u32>>, r: u32) -> Vec<usize> {
    let cols = rows.first().map_or(0, |x| x.len());
    let inv = |x: u32| crate::numtheory::pow_mod(x as u64, r as u64 - 2, r as u64) as u32;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let s = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = *x * s % r;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + r * r - factor * rows[rank][j] % r) % r;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

/// Basis of `{x : A x = 0}` over `GF(r)`; `a` is row-major `rows × cols`.
fn nullspace(a: &[Vec<u32>], cols: usize, r: u32) -> Vec<Vec<u32>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u32; cols];
            x[f] = 1;
            for (row, &p) in m.iter().zip(&pivots) {
                x[p] = (r - row[f]) % r;
            }
            x
        })
        .collect()
}

/// Builds a module from a representation `rep` over `field`, restricted to the
/// prime field. When `involution` is given, the module is its fixed space.
fn restrict_scalars(
    label: ModuleLabel,
    group: Arc<FiniteGroup>,
    sl2_q: u64,
    field: &Field,
    rep_dim: usize,
    rep: impl Fn(usize) -> Matrix,
    involution: Option<&dyn Fn(&[FieldElement]) -> Vec<FieldElement>>,
    ceiling: usize,
) -> Result<ModuleAction> {
    let r = field.characteristic();
    let a = field.degree() as usize;
    let flat_dim = rep_dim * a;
    let flatten =
        |v: &[FieldElement]| -> Vec<u32> { v.iter().flat_map(|&x| field.coeffs(x)).collect() };
    let unflatten =
        |w: &[u32]| -> Vec<FieldElement> { w.chunks(a).map(|c| field.from_coeffs(c)).collect() };

    let mut basis: Vec<Vec<u32>> = match involution {
        None => (0..flat_dim)
            .map(|k| {
                let mut e = vec![0u32; flat_dim];
                e[k] = 1;
                e
            })
            .collect(),
        Some(inv) => {
            // fixed space = kernel of (F - I), F written as a GF(r)-matrix
            let images: Vec<Vec<u32>> = (0..flat_dim)
                .map(|k| {
                    let mut e = vec![0u32; flat_dim];
                    e[k] = 1;
                    flatten(&inv(&unflatten(&e)))
                })
                .collect();
            let rows: Vec<Vec<u32>> = (0..flat_dim)
                .map(|i| {
                    (0..flat_dim)
                        .map(|k| (images[k][i] + r - u32::from(i == k)) % r)
                        .collect()
                })
                .collect();
            nullspace(&rows, flat_dim, r)
        }
    };
    let pivots = rref(&mut basis, r);
    let n = basis.len();
    let space = VectorSpace::new(r, n);
    let total = space.size as u128 * group.order() as u128;
    if total > ceiling as u128 {
        return Err(Error::CeilingExceeded {
            order: total,
            ceiling,
        });
    }

    let mut matrices = Vec::with_capacity(group.order());
    for h in group.elements() {
        let m = rep(h);
        let mut mat = vec![0u32; n * n];
        for (k, b) in basis.iter().enumerate() {
            let image = flatten(&m.apply(&unflatten(b), field));
            let coords: Vec<u32> = pivots.iter().map(|&p| image[p]).collect();
            let mut check = vec![0u32; flat_dim];
            for (c, row) in coords.iter().zip(&basis) {
                for (x, y) in check.iter_mut().zip(row) {
                    *x = (*x + c * y) % r;
                }
            }
            if check != image {
                return Err(Error::InvalidArgument(format!(
                    "{label}: subspace is not invariant"
                )));
            }
            for (j, &c) in coords.iter().enumerate() {
                mat[j * n + k] = c;
            }
        }
        matrices.push(mat);
    }

    let identity: Vec<u32> = (0..n * n).map(|i| u32::from(i % (n + 1) == 0)).collect();
    let kernel = (0..group.order())
        .filter(|&h| matrices[h] == identity)
        .collect();

    let size = space.size;
    let mut table = vec![0u32; group.order() * size];
    for (h, mat) in matrices.iter().enumerate() {
        let cols: Vec<usize> = (0..n)
            .map(|k| {
                let col: Vec<u32> = (0..n).map(|j| mat[j * n + k]).collect();
                space.from_digits(&col).expect("reduced coordinates")
            })
            .collect();
        let row = &mut table[h * size..(h + 1) * size];
        for v in 1..size {
            // strip one unit from the least significant nonzero coordinate
            let mut pos = 0;
            let mut w = v;
            while w % r as usize == 0 {
                w /= r as usize;
                pos += 1;
            }
            let prev = v - (r as usize).pow(pos);
            row[v] = space.add(row[prev] as usize, cols[n - 1 - pos as usize]) as u32;
        }
    }

    Ok(ModuleAction {
        label,
        group,
        sl2_q,
        space,
        matrices,
        table,
        kernel,
    })
}

fn natural_module(label: ModuleLabel, q: u64, ceiling: usize) -> Result<ModuleAction> {
    let group = Arc::new(sl2_group(q, ceiling)?);
    let m = group.as_matrix_group().expect("SL2 is a matrix group");
    let field = m.field().clone();
    let rep = |h: usize| m.matrix(h).clone();
    restrict_scalars(
        label.clone(),
        group.clone(),
        q,
        &field,
        2,
        rep,
        None,
        ceiling,
    )
}

/// `SL2(q)`, `q = s^2`, on `N ⊗ N^(s)` realized over `GF(s)`: the fixed points
/// of `c_(i,j) -> c_(j,i)^s`.
fn omega_minus_module(label: ModuleLabel, q: u64, ceiling: usize) -> Result<ModuleAction> {
    let bad = || Error::UnsupportedGroup(format!("omega_minus({q}) needs q = 4^b"));
    let (t, a) = is_prime_power(q).ok_or_else(bad)?;
    if t != 2 || a % 2 != 0 {
        return Err(bad());
    }
    let half = a / 2;
    let group = Arc::new(sl2_group(q, ceiling)?);
    let m = group.as_matrix_group().expect("SL2 is a matrix group");
    let field = m.field().clone();
    let rep = |h: usize| {
        let x = m.matrix(h);
        x.kron(&x.frobenius(half, &field), &field)
    };
    let swap = |c: &[FieldElement]| -> Vec<FieldElement> {
        // coordinates ordered (1,1), (1,2), (2,1), (2,2)
        [c[0], c[2], c[1], c[3]]
            .iter()
            .map(|&x| field.frobenius(x, half))
            .collect()
    };
    restrict_scalars(
        label,
        group.clone(),
        q,
        &field,
        4,
        rep,
        Some(&swap),
        ceiling,
    )
}

/// Constructs a catalogue module.
pub fn module_catalog(label: &ModuleLabel, ceiling: usize) -> Result<ModuleAction> {
    match label {
        ModuleLabel::V0 => natural_module(ModuleLabel::V0, 4, ceiling),
        ModuleLabel::V1 => omega_minus_module(ModuleLabel::V1, 4, ceiling),
        ModuleLabel::U => natural_module(ModuleLabel::U, 5, ceiling),
        ModuleLabel::W => {
            let group = Arc::new(sl2_5_in_sl2_9(ceiling)?);
            let m = group.as_matrix_group().expect("matrix group");
            let field = m.field().clone();
            let rep = |h: usize| m.matrix(h).clone();
            restrict_scalars(
                ModuleLabel::W,
                group.clone(),
                5,
                &field,
                2,
                rep,
                None,
                ceiling,
            )
        }
        ModuleLabel::Natural(q) => match is_prime_power(*q) {
            Some((2, _)) => natural_module(label.clone(), *q, ceiling),
            _ => Err(Error::UnsupportedGroup(format!(
                "natural({q}): q must be a power of 2"
            ))),
        },
        ModuleLabel::OmegaMinus(q) => omega_minus_module(label.clone(), *q, ceiling),
    }
}
