//! Concrete finite groups, fully enumerated.
//!
//! Elements are addressed by index `0..order`, and index order agrees with
//! the byte order of the canonical encodings, so "least representative" means
//! least index everywhere.

mod classes;
pub mod matrix;
pub mod module;
pub mod sl2;
pub mod small;

use std::fmt;
use std::sync::Arc;

pub use classes::{centralizer_order, conjugacy_classes, ClassData, ConjClass};
pub use matrix::{Matrix, MatrixGroup};
pub use module::{module_catalog, ModuleAction, ModuleLabel, VectorSpace};
pub use sl2::{sl2_group, sylow2_subgroups_sl2, Subgroup};

use crate::error::{Error, Result};

/// Default limit on the number of enumerated elements.
pub const DEFAULT_CEILING: usize = 1_100_000;

/// Canonical, representation-tagged byte encoding of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u8>);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

const TAG_MATRIX: u8 = b'M';
const TAG_CYCLIC: u8 = b'C';
const TAG_AFFINE: u8 = b'A';
const TAG_DIRECT: u8 = b'D';

pub(crate) enum Kind {
    Matrix(MatrixGroup),
    Cyclic(usize),
    /// `V ⋊ H`; element `h * |V| + v` is the pair `(v, h)`.
    Semidirect(Arc<ModuleAction>),
    /// `G × H`; element `g * |H| + h` is the pair `(g, h)`.
    Direct(Arc<FiniteGroup>, Arc<FiniteGroup>),
}

pub struct FiniteGroup {
    name: String,
    kind: Kind,
    order: usize,
    identity: usize,
    generators: Vec<usize>,
    inverse: Vec<u32>,
    encoding_width: usize,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

fn check_ceiling(order: u128, ceiling: usize) -> Result<usize> {
    if order > ceiling as u128 {
        Err(Error::CeilingExceeded { order, ceiling })
    } else {
        Ok(order as usize)
    }
}

impl FiniteGroup {
    pub(crate) fn from_matrix_group(
        name: impl Into<String>,
        group: MatrixGroup,
        generators: Vec<usize>,
    ) -> FiniteGroup {
        let order = group.order();
        let identity = group
            .index_of(&Matrix::identity(group.dim()))
            .expect("identity is enumerated");
        let inverse = (0..order).map(|i| group.inverse_index(i) as u32).collect();
        let encoding_width = 1 + group.dim() * group.dim() * group.field().degree() as usize * 2;
        FiniteGroup {
            name: name.into(),
            kind: Kind::Matrix(group),
            order,
            identity,
            generators,
            inverse,
            encoding_width,
        }
    }

    /// Cyclic group `Z/n`.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group of order 0".into()));
        }
        Ok(FiniteGroup {
            name: format!("C{n}"),
            kind: Kind::Cyclic(n),
            order: n,
            identity: 0,
            generators: if n > 1 { vec![1] } else { vec![] },
            inverse: (0..n).map(|i| ((n - i) % n) as u32).collect(),
            encoding_width: 5,
        })
    }

    /// Split extension `V ⋊ H` of a module by its acting group.
    pub fn semidirect(action: Arc<ModuleAction>, ceiling: usize) -> Result<FiniteGroup> {
        let h = action.group();
        let vsize = action.space().size();
        let order = check_ceiling(vsize as u128 * h.order() as u128, ceiling)?;
        if let Kind::Matrix(m) = &h.kind {
            m.enable_table();
        }
        let space = action.space();
        let mut generators: Vec<usize> = h.generators().iter().map(|&g| g * vsize).collect();
        for k in 0..space.dim() {
            generators.push(h.identity() * vsize + space.basis_vector(k));
        }
        let inverse = (0..order)
            .map(|x| {
                let (hi, v) = (x / vsize, x % vsize);
                let hinv = h.inv(hi);
                (hinv * vsize + space.neg(action.apply(hinv, v))) as u32
            })
            .collect();
        let identity = h.identity() * vsize;
        let encoding_width = 1 + h.encoding_width + 2 * space.dim();
        Ok(FiniteGroup {
            name: format!("{}:{}", action.label(), h.name()),
            kind: Kind::Semidirect(action),
            order,
            identity,
            generators,
            inverse,
            encoding_width,
        })
    }

    pub fn direct_product(
        g: Arc<FiniteGroup>,
        h: Arc<FiniteGroup>,
        ceiling: usize,
    ) -> Result<FiniteGroup> {
        let order = check_ceiling(g.order() as u128 * h.order() as u128, ceiling)?;
        let hn = h.order();
        let mut generators: Vec<usize> = g
            .generators()
            .iter()
            .map(|&x| x * hn + h.identity())
            .collect();
        generators.extend(h.generators().iter().map(|&y| g.identity() * hn + y));
        let inverse = (0..order)
            .map(|x| (g.inv(x / hn) * hn + h.inv(x % hn)) as u32)
            .collect();
        let identity = g.identity() * hn + h.identity();
        let encoding_width = 1 + g.encoding_width + h.encoding_width;
        Ok(FiniteGroup {
            name: format!("{}x{}", g.name(), h.name()),
            kind: Kind::Direct(g, h),
            order,
            identity,
            generators,
            inverse,
            encoding_width,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Matrix(m) => m.mul(a, b),
            Kind::Cyclic(n) => (a + b) % n,
            Kind::Semidirect(action) => {
                let vsize = action.space().size();
                let (h1, v1) = (a / vsize, a % vsize);
                let (h2, v2) = (b / vsize, b % vsize);
                let v = action.space().add(v1, action.apply(h1, v2));
                action.group().mul(h1, h2) * vsize + v
            }
            Kind::Direct(g, h) => {
                let hn = h.order();
                g.mul(a / hn, b / hn) * hn + h.mul(a % hn, b % hn)
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `b^-1 a b`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The matrix group backing this group, if it is one.
    pub fn as_matrix_group(&self) -> Option<&MatrixGroup> {
        match &self.kind {
            Kind::Matrix(m) => Some(m),
            _ => None,
        }
    }

    /// The module action of a split extension.
    pub fn module_action(&self) -> Option<&Arc<ModuleAction>> {
        match &self.kind {
            Kind::Semidirect(a) => Some(a),
            _ => None,
        }
    }

    /// Factors of a direct product.
    pub fn factors(&self) -> Option<(&Arc<FiniteGroup>, &Arc<FiniteGroup>)> {
        match &self.kind {
            Kind::Direct(g, h) => Some((g, h)),
            _ => None,
        }
    }

    /// Elements of the distinguished normal subgroup `V` of a split extension.
    pub fn module_subgroup(&self) -> Option<Vec<usize>> {
        let action = self.module_action()?;
        let vsize = action.space().size();
        let base = action.group().identity() * vsize;
        Some((base..base + vsize).collect())
    }

    /// Image of an element of `V ⋊ H` in `H`.
    pub fn project_to_acting_group(&self, x: usize) -> Option<usize> {
        self.module_action().map(|a| x / a.space().size())
    }

    pub fn element(&self, i: usize) -> GroupElement {
        let mut out = Vec::with_capacity(self.encoding_width);
        self.encode_into(i, &mut out);
        GroupElement(out)
    }

    fn encode_into(&self, i: usize, out: &mut Vec<u8>) {
        match &self.kind {
            Kind::Matrix(m) => {
                out.push(TAG_MATRIX);
                m.matrix(i).encode_into(m.field(), out);
            }
            Kind::Cyclic(_) => {
                out.push(TAG_CYCLIC);
                out.extend_from_slice(&(i as u32).to_be_bytes());
            }
            Kind::Semidirect(action) => {
                let vsize = action.space().size();
                out.push(TAG_AFFINE);
                action.group().encode_into(i / vsize, out);
                for d in action.space().digits(i % vsize) {
                    out.extend_from_slice(&(d as u16).to_be_bytes());
                }
            }
            Kind::Direct(g, h) => {
                out.push(TAG_DIRECT);
                g.encode_into(i / h.order(), out);
                h.encode_into(i % h.order(), out);
            }
        }
    }

    /// Index of an encoded element, or `None` if it is not in the group.
    pub fn index_of(&self, e: &GroupElement) -> Option<usize> {
        if e.0.len() != self.encoding_width {
            return None;
        }
        self.decode(&e.0)
    }

    fn decode(&self, bytes: &[u8]) -> Option<usize> {
        let (&tag, rest) = bytes.split_first()?;
        match &self.kind {
            Kind::Matrix(m) if tag == TAG_MATRIX => {
                m.index_of(&Matrix::decode(m.dim(), m.field(), rest)?)
            }
            Kind::Cyclic(n) if tag == TAG_CYCLIC => {
                let v = u32::from_be_bytes(rest.try_into().ok()?) as usize;
                (v < *n).then_some(v)
            }
            Kind::Semidirect(action) if tag == TAG_AFFINE => {
                let h = action.group();
                let (hb, vb) = rest.split_at(h.encoding_width);
                let hi = h.decode(hb)?;
                let digits: Vec<u32> = vb
                    .chunks(2)
                    .map(|c| u16::from_be_bytes([c[0], c[1]]) as u32)
                    .collect();
                let v = action.space().from_digits(&digits)?;
                Some(hi * action.space().size() + v)
            }
            Kind::Direct(g, h) if tag == TAG_DIRECT => {
                let (gb, hb) = rest.split_at(g.encoding_width);
                Some(g.decode(gb)? * h.order() + h.decode(hb)?)
            }
            _ => None,
        }
    }

    /// Breadth-first closure of the generators; used to check that the
    /// generators really generate the enumerated element set.
    pub fn generated_order(&self) -> usize {
        let mut seen = vec![false; self.order];
        let mut stack = vec![self.identity];
        seen[self.identity] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in &self.generators {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.commutes(a, b)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self, classes: &ClassData) -> u64 {
        classes
            .classes()
            .iter()
            .map(|c| self.element_order(c.representative))
            .fold(1, crate::numtheory::lcm)
    }
}
