//! Dense square matrices over a `Field`, and matrix groups enumerated by
//! closure under their generators.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Row-major square matrix. Entries are only meaningful relative to a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    dim: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Matrix {
        let mut entries = vec![FieldElement::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = FieldElement::ONE;
        }
        Matrix { dim, entries }
    }

    pub fn from_rows(rows: &[&[FieldElement]]) -> Matrix {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Matrix {
            dim,
            entries: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn from_entries(dim: usize, entries: Vec<FieldElement>) -> Matrix {
        assert_eq!(entries.len(), dim * dim);
        Matrix { dim, entries }
    }

    pub fn diagonal(diag: &[FieldElement]) -> Matrix {
        let dim = diag.len();
        let mut m = Matrix {
            dim,
            entries: vec![FieldElement::ZERO; dim * dim],
        };
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * dim + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &Matrix, f: &Field) -> Matrix {
        let n = self.dim;
        debug_assert_eq!(n, other.dim);
        let mut out = vec![FieldElement::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out[idx] = f.add(out[idx], f.mul(a, other.entries[k * n + j]));
                }
            }
        }
        Matrix {
            dim: n,
            entries: out,
        }
    }

    pub fn apply(&self, v: &[FieldElement], f: &Field) -> Vec<FieldElement> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                (0..n).fold(FieldElement::ZERO, |acc, j| {
                    f.add(acc, f.mul(self.entries[i * n + j], v[j]))
                })
            })
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix, f: &Field) -> Matrix {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut entries = vec![FieldElement::ZERO; dim * dim];
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                for k in 0..m {
                    for l in 0..m {
                        entries[(i * m + k) * dim + j * m + l] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        Matrix { dim, entries }
    }

    /// Applies `x -> x^(t^k)` entrywise.
    pub fn frobenius(&self, k: u32, f: &Field) -> Matrix {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|&x| f.frobenius(x, k)).collect(),
        }
    }

    pub fn sub_identity(&self, f: &Field) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.dim {
            let idx = i * self.dim + i;
            m.entries[idx] = f.sub(m.entries[idx], FieldElement::ONE);
        }
        m
    }

    pub fn determinant(&self, f: &Field) -> FieldElement {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return FieldElement::ZERO;
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let p = a[col * n + col];
            det = f.mul(det, p);
            let pinv = f.inv(p).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = f.mul(factor, a[col * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], sub);
                }
            }
        }
        det
    }

    pub fn rank(&self, f: &Field) -> usize {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else {
                continue;
            };
            for j in 0..n {
                a.swap(pivot * n + j, rank * n + j);
            }
            let pinv = f.inv(a[rank * n + col]).expect("nonzero pivot");
            for r in 0..n {
                if r == rank {
                    continue;
                }
                let factor = f.mul(a[r * n + col], pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let sub = f.mul(factor, a[rank * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], sub);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        let n = self.dim;
        let w = 2 * n;
        let mut a = vec![FieldElement::ZERO; n * w];
        for i in 0..n {
            for j in 0..n {
                a[i * w + j] = self.get(i, j);
            }
            a[i * w + n + i] = FieldElement::ONE;
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * w + col].is_zero())?;
            for j in 0..w {
                a.swap(pivot * w + j, col * w + j);
            }
            let pinv = f.inv(a[col * w + col])?;
            for j in 0..w {
                a[col * w + j] = f.mul(a[col * w + j], pinv);
            }
            for r in 0..n {
                if r == col || a[r * w + col].is_zero() {
                    continue;
                }
                let factor = a[r * w + col];
                for j in 0..w {
                    let sub = f.mul(factor, a[col * w + j]);
                    a[r * w + j] = f.sub(a[r * w + j], sub);
                }
            }
        }
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * w + n + j])
            .collect();
        Some(Matrix { dim: n, entries })
    }

    /// Canonical bytes: each entry as its coefficient digits, two bytes per digit.
    pub(crate) fn encode_into(&self, f: &Field, out: &mut Vec<u8>) {
        for &x in &self.entries {
            for d in f.coeffs(x) {
                out.extend_from_slice(&(d as u16).to_be_bytes());
            }
        }
    }

    pub(crate) fn decode(dim: usize, f: &Field, bytes: &[u8]) -> Option<Matrix> {
        let a = f.degree() as usize;
        if bytes.len() != dim * dim * a * 2 {
            return None;
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for chunk in bytes.chunks(2 * a) {
            let digits: Vec<u32> = chunk
                .chunks(2)
                .map(|b| u16::from_be_bytes([b[0], b[1]]) as u32)
                .collect();
            if digits.iter().any(|&d| d >= f.characteristic()) {
                return None;
            }
            entries.push(f.from_coeffs(&digits));
        }
        Some(Matrix { dim, entries })
    }
}

/// Largest order for which a full multiplication table may be built.
const TABLE_LIMIT: usize = 4096;

/// A finite group of invertible matrices, fully enumerated and sorted by
/// canonical encoding.
pub struct MatrixGroup {
    field: Arc<Field>,
    dim: usize,
    elements: Vec<Matrix>,
    index: HashMap<Matrix, u32>,
    table: OnceLock<Vec<u16>>,
}

impl MatrixGroup {
    /// Closes `generators` under multiplication. Fails once more than
    /// `ceiling` elements are found.
    pub fn generate(
        field: Arc<Field>,
        dim: usize,
        generators: &[Matrix],
        ceiling: usize,
    ) -> Result<(MatrixGroup, Vec<usize>)> {
        for g in generators {
            if g.dim() != dim {
                return Err(Error::InvalidArgument(
                    "generator of wrong dimension".into(),
                ));
            }
            if g.determinant(&field).is_zero() {
                return Err(Error::InvalidArgument("singular generator".into()));
            }
        }
        let id = Matrix::identity(dim);
        let mut seen: HashMap<Matrix, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone(), ());
        queue.push_back(id);
        let mut found = vec![];
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x.mul(g, &field);
                if !seen.contains_key(&y) {
                    if seen.len() >= ceiling {
                        return Err(Error::CeilingExceeded {
                            order: seen.len() as u128 + 1,
                            ceiling,
                        });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
            found.push(x);
        }
        let mut keyed: Vec<(Vec<u8>, Matrix)> = found
            .into_iter()
            .map(|m| {
                let mut bytes = Vec::new();
                m.encode_into(&field, &mut bytes);
                (bytes, m)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let elements: Vec<Matrix> = keyed.into_iter().map(|(_, m)| m).collect();
        let index: HashMap<Matrix, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        let gens = generators.iter().map(|g| index[g] as usize).collect();
        Ok((
            MatrixGroup {
                field,
                dim,
                elements,
                index,
                table: OnceLock::new(),
            },
            gens,
        ))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }

    /// Builds the multiplication table if the group is small enough.
    pub(crate) fn enable_table(&self) {
        let n = self.order();
        if n > TABLE_LIMIT {
            return;
        }
        self.table.get_or_init(|| {
            let rows: Vec<Vec<u16>> = (0..n)
                .into_par_iter()
                .map(|a| {
                    (0..n)
                        .map(|b| self.slow_mul(a, b) as u16)
                        .collect::<Vec<u16>>()
                })
                .collect();
            rows.concat()
        });
    }

    fn slow_mul(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].mul(&self.elements[b], &self.field);
        self.index[&m] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.table.get() {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.slow_mul(a, b),
        }
    }

    pub(crate) fn inverse_index(&self, a: usize) -> usize {
        let inv = self.elements[a]
            .inverse(&self.field)
            .expect("group elements are invertible");
        self.index[&inv] as usize
    }
}
