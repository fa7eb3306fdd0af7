//! Small auxiliary groups used as direct factors: extraspecial groups of
//! order `t^3` and the quaternion group.

use std::sync::Arc;

use super::{FiniteGroup, Matrix, MatrixGroup};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::numtheory::is_prime;

/// Extraspecial group of order `t^3`. For odd `t` and exponent `t` this is
/// the Heisenberg group of unitriangular 3×3 matrices over `GF(t)`; for
/// `t = 2` only the quaternion group (exponent 4) is provided.
pub fn extraspecial(t: u64, order: u64, exponent: u64) -> Result<FiniteGroup> {
    if !is_prime(t) || order != t * t * t {
        return Err(Error::UnsupportedGroup(format!(
            "extraspecial group of order {order} over t = {t}"
        )));
    }
    match (t, exponent) {
        (2, 4) => quaternion8(),
        (t, e) if t > 2 && e == t => heisenberg(t),
        _ => Err(Error::UnsupportedGroup(format!(
            "extraspecial {t}^(1+2) of exponent {exponent} is not provided"
        ))),
    }
}

fn heisenberg(t: u64) -> Result<FiniteGroup> {
    let f = Arc::new(Field::new(t, 1)?);
    let (o, l) = (f.zero(), f.one());
    let gens = [
        Matrix::from_rows(&[&[l, l, o], &[o, l, o], &[o, o, l]]),
        Matrix::from_rows(&[&[l, o, o], &[o, l, l], &[o, o, l]]),
    ];
    let (g, gens) = MatrixGroup::generate(f, 3, &gens, usize::MAX)?;
    Ok(FiniteGroup::from_matrix_group(
        format!("{t}^(1+2)"),
        g,
        gens,
    ))
}

/// `Q8` inside `SL2(3)`.
pub fn quaternion8() -> Result<FiniteGroup> {
    let f = Arc::new(Field::new(3, 1)?);
    let e = |n| f.from_int(n);
    let gens = [
        Matrix::from_rows(&[&[e(0), e(1)], &[e(-1), e(0)]]),
        Matrix::from_rows(&[&[e(1), e(1)], &[e(1), e(-1)]]),
    ];
    let (g, gens) = MatrixGroup::generate(f.clone(), 2, &gens, usize::MAX)?;
    Ok(FiniteGroup::from_matrix_group("Q8", g, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::conjugacy_classes;

    #[test]
    fn heisenberg_groups() {
        for t in [3u64, 5] {
            let g = extraspecial(t, t * t * t, t).unwrap();
            assert_eq!(g.order() as u64, t * t * t);
            assert!(!g.is_abelian());
            assert!(g.elements().all(|x| t % g.element_order(x) == 0));
            assert_eq!(conjugacy_classes(&g).len() as u64, t * t + t - 1);
        }
    }

    #[test]
    fn quaternion() {
        let g = quaternion8().unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        let involutions = g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert_eq!(extraspecial(2, 8, 4).unwrap().order(), 8);
    }

    #[test]
    fn rejects_unsupported() {
        assert!(extraspecial(5, 100, 5).is_err());
        assert!(extraspecial(3, 27, 9).is_err());
        assert!(extraspecial(2, 8, 2).is_err());
    }
}
