//! `SL2(q)` as 2×2 matrices, its Sylow 2-subgroups, and the copy of `SL2(5)`
//! inside `SL2(9)` used for the 4-dimensional module over `GF(3)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{FiniteGroup, Matrix, MatrixGroup};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::numtheory::is_prime_power;

/// A subgroup given by its sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(mut elements: Vec<usize>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// The subgroup generated by `gens` inside `g`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
        let mut seen = BTreeSet::from([g.identity()]);
        let mut stack = vec![g.identity()];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = g.mul(x, s);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        Subgroup {
            elements: seen.into_iter().collect(),
        }
    }

    /// `x^-1 S x`.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        Subgroup::new(self.elements.iter().map(|&s| g.conjugate(s, x)).collect())
    }

    /// Whether `x` normalizes this subgroup.
    pub fn is_normalized_by(&self, g: &FiniteGroup, x: usize) -> bool {
        self.elements
            .iter()
            .all(|&s| self.contains(g.conjugate(s, x)))
    }
}

/// The special linear group `SL2(q)`, generated by the two elementary
/// transvections and a diagonal element of order `q - 1`.
pub fn sl2_group(q: u64, ceiling: usize) -> Result<FiniteGroup> {
    let (t, a) = is_prime_power(q)
        .ok_or_else(|| Error::UnsupportedGroup(format!("SL2({q}): q is not a prime power")))?;
    let order = q as u128 * (q as u128 * q as u128 - 1);
    if order > ceiling as u128 {
        return Err(Error::CeilingExceeded { order, ceiling });
    }
    let field =
        Arc::new(Field::new(t, a).map_err(|_| {
            Error::UnsupportedGroup(format!("SL2({q}): field GF({q}) not supported"))
        })?);
    let (zero, one) = (field.zero(), field.one());
    let w = field.generator();
    let winv = field.inv(w).expect("generator is nonzero");
    let mut gens = vec![
        Matrix::from_rows(&[&[one, one], &[zero, one]]),
        Matrix::from_rows(&[&[one, zero], &[one, one]]),
    ];
    if q > 3 {
        gens.push(Matrix::from_rows(&[&[w, zero], &[zero, winv]]));
    }
    let (group, gens) = MatrixGroup::generate(field, 2, &gens, ceiling)?;
    debug_assert_eq!(group.order() as u128, order);
    Ok(FiniteGroup::from_matrix_group(
        format!("SL2({q})"),
        group,
        gens,
    ))
}

fn require_even_sl2(g: &FiniteGroup) -> Result<&MatrixGroup> {
    match g.as_matrix_group() {
        Some(m) if m.dim() == 2 && m.field().characteristic() == 2 => Ok(m),
        _ => Err(Error::InvalidArgument("expected SL2(q) with q even".into())),
    }
}

/// The upper unitriangular subgroup `{[[1, x], [0, 1]]}` of `SL2(q)`.
pub fn upper_unitriangular(g: &FiniteGroup) -> Result<Subgroup> {
    let m = g
        .as_matrix_group()
        .filter(|m| m.dim() == 2)
        .ok_or_else(|| Error::InvalidArgument("expected a 2x2 matrix group".into()))?;
    let f = m.field();
    let elements = f
        .elements()
        .map(|x| {
            m.index_of(&Matrix::from_rows(&[&[f.one(), x], &[f.zero(), f.one()]]))
                .ok_or(Error::NotInGroup)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subgroup::new(elements))
}

/// All Sylow 2-subgroups of `SL2(q)`, `q` even, as conjugates of the upper
/// unitriangular subgroup, sorted.
pub fn sylow2_subgroups_sl2(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    require_even_sl2(g)?;
    let base = upper_unitriangular(g)?;
    let all: BTreeSet<Subgroup> = g.elements().map(|x| base.conjugate(g, x)).collect();
    Ok(all.into_iter().collect())
}

/// `SL2(5)` realized inside `SL2(9)`: the first pair `(s, t)`, in element
/// order, with `|s| = 4`, `|t| = 6` and `|st| = 10`.
pub(crate) fn sl2_5_in_sl2_9(ceiling: usize) -> Result<FiniteGroup> {
    let big = sl2_group(9, ceiling)?;
    let m = big.as_matrix_group().expect("matrix group");
    let of_order = |k: u64| -> Vec<usize> {
        big.elements()
            .filter(|&x| big.element_order(x) == k)
            .collect()
    };
    let (fours, sixes) = (of_order(4), of_order(6));
    let (s, t) = fours
        .iter()
        .flat_map(|&s| sixes.iter().map(move |&t| (s, t)))
        .find(|&(s, t)| big.element_order(big.mul(s, t)) == 10)
        .ok_or_else(|| Error::UnsupportedGroup("no SL2(5) inside SL2(9)".into()))?;
    let gens = [m.matrix(s).clone(), m.matrix(t).clone()];
    let (sub, gens) = MatrixGroup::generate(m.field().clone(), 2, &gens, ceiling)?;
    if sub.order() != 120 {
        return Err(Error::UnsupportedGroup(format!(
            "expected a subgroup of order 120, found {}",
            sub.order()
        )));
    }
    Ok(FiniteGroup::from_matrix_group("SL2(5)", sub, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugacy_classes, DEFAULT_CEILING};

    #[test]
    fn orders() {
        assert_eq!(sl2_group(4, DEFAULT_CEILING).unwrap().order(), 60);
        assert_eq!(sl2_group(8, DEFAULT_CEILING).unwrap().order(), 504);
        assert_eq!(sl2_group(16, DEFAULT_CEILING).unwrap().order(), 4080);
        assert_eq!(sl2_group(32, DEFAULT_CEILING).unwrap().order(), 32736);
        assert!(sl2_group(6, DEFAULT_CEILING).is_err());
        assert!(sl2_group(64, 100_000).is_err());
    }

    #[test]
    fn sl2_5_has_center_of_order_2() {
        let g = sl2_group(5, DEFAULT_CEILING).unwrap();
        assert_eq!(g.order(), 120);
        let center: Vec<usize> = g
            .elements()
            .filter(|&z| g.elements().all(|x| g.commutes(x, z)))
            .collect();
        assert_eq!(center.len(), 2);
    }

    #[test]
    fn sylow_counts_and_intersections() {
        for q in [4u64, 8, 16] {
            let g = sl2_group(q, DEFAULT_CEILING).unwrap();
            let sylows = sylow2_subgroups_sl2(&g).unwrap();
            assert_eq!(sylows.len() as u64, q + 1);
            for s in &sylows {
                assert_eq!(s.order() as u64, q);
            }
            for (i, a) in sylows.iter().enumerate() {
                for b in &sylows[i + 1..] {
                    let common = a.elements().iter().filter(|&&x| b.contains(x)).count();
                    assert_eq!(common, 1);
                }
            }
        }
        let odd = sl2_group(5, DEFAULT_CEILING).unwrap();
        assert!(sylow2_subgroups_sl2(&odd).is_err());
    }

    #[test]
    fn binary_icosahedral_subgroup() {
        let g = sl2_5_in_sl2_9(DEFAULT_CEILING).unwrap();
        assert_eq!(g.order(), 120);
        let sl25 = sl2_group(5, DEFAULT_CEILING).unwrap();
        let mut a = conjugacy_classes(&g).sizes();
        let mut b = conjugacy_classes(&sl25).sizes();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }
}
