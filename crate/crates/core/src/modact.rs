//! Orbit data of linear actions: stabilizers, `Δ_orb`, condition `N_q`, the
//! `V_I`/`V_II` decompositions, normalizers of Sylow 2-subgroups of
//! `SL2(2^a)`, and the fixed space of the triality twist.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::graph::{graph_of_numbers, PrimeGraph};
use crate::group::{sylow2_subgroups_sl2, FiniteGroup, Matrix, ModuleAction, Subgroup};
use crate::numtheory::{factorize, is_prime, is_prime_power, p_part};

/// Coarse description of a stabilizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerTag {
    pub order: usize,
    pub abelian: bool,
    /// Primes `q` dividing the order whose Sylow `q`-subgroup is normal.
    pub normal_sylow: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Least vector of the orbit.
    pub representative: usize,
    pub coordinates: Vec<u32>,
    pub size: usize,
    pub stabilizer_order: usize,
    pub stabilizer: StabilizerTag,
    #[serde(skip)]
    pub members: Vec<usize>,
    #[serde(skip)]
    pub stabilizer_elements: Vec<usize>,
}

/// Orbits of `H` on `V - {0}`, ordered by representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub module: String,
    pub group_order: usize,
    pub kernel_order: usize,
    pub module_size: usize,
    pub orbits: Vec<Orbit>,
}

impl OrbitReport {
    /// Orbit sizes in orbit order.
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.size).collect()
    }

    pub fn orbit_of(&self, v: usize) -> Option<&Orbit> {
        self.orbits
            .iter()
            .find(|o| o.members.binary_search(&v).is_ok())
    }
}

/// Elements of `H` fixing `v`.
pub fn stabilizer(action: &ModuleAction, v: usize) -> Vec<usize> {
    action
        .group()
        .elements()
        .filter(|&h| action.apply(h, v) == v)
        .collect()
}

/// Whether the subgroup `c` of `g` has a normal Sylow `q`-subgroup whose order
/// is `q_part`: the `q`-part of `|c|` must be `q_part` and the `q`-elements of
/// `c` must number exactly `q_part`, so that they form the unique Sylow.
fn has_normal_sylow(g: &FiniteGroup, c: &[usize], q: u64, q_part: u64) -> bool {
    if p_part(c.len() as u64, q) != q_part {
        return false;
    }
    let q_elements = c
        .iter()
        .filter(|&&x| is_prime_power(g.element_order(x)).map_or(true, |(t, _)| t == q))
        .count();
    q_elements as u64 == q_part
}

/// Whether `c ≤ H` contains a full Sylow `q`-subgroup of `H` as a normal subgroup.
pub fn has_normal_full_sylow(g: &FiniteGroup, c: &[usize], q: u64) -> bool {
    has_normal_sylow(g, c, q, p_part(g.order() as u64, q))
}

fn tag(g: &FiniteGroup, c: &[usize]) -> StabilizerTag {
    let primes = factorize(c.len() as u64).expect("nonzero order");
    StabilizerTag {
        order: c.len(),
        abelian: c.iter().all(|&x| c.iter().all(|&y| g.commutes(x, y))),
        normal_sylow: primes
            .iter()
            .map(|&(q, _)| q)
            .filter(|&q| has_normal_sylow(g, c, q, p_part(c.len() as u64, q)))
            .collect(),
    }
}

/// Orbit decomposition of `V - {0}` with exact stabilizers.
pub fn orbit_report(action: &ModuleAction) -> OrbitReport {
    let g = action.group();
    let size = action.size();
    let mut seen = vec![false; size];
    let mut orbits = Vec::new();
    for start in 1..size {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            for &h in g.generators() {
                let w = action.apply(h, v);
                if !seen[w] {
                    seen[w] = true;
                    members.push(w);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        let stab = stabilizer(action, start);
        orbits.push(Orbit {
            representative: start,
            coordinates: action.space().digits(start),
            size: members.len(),
            stabilizer_order: stab.len(),
            stabilizer: tag(g, &stab),
            members,
            stabilizer_elements: stab,
        });
    }
    OrbitReport {
        module: action.label().to_string(),
        group_order: g.order(),
        kernel_order: action.kernel().len(),
        module_size: size,
        orbits,
    }
}

/// `Δ_orb`: primes of the orbit sizes, adjacent when both divide one orbit size.
pub fn delta_orb(report: &OrbitReport) -> PrimeGraph {
    graph_of_numbers(report.orbits.iter().map(|o| o.size as u64)).expect("positive orbit sizes")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NqReport {
    pub module: String,
    pub group_order: usize,
    pub q: u64,
    /// `q` divides `|H : C_H(V)|`.
    pub divides_index: bool,
    pub satisfied: bool,
    /// Nonzero vectors whose centralizer has no normal Sylow `q`-subgroup of `H`.
    pub failing: Vec<usize>,
}

/// Condition `N_q`.
pub fn check_nq(action: &ModuleAction, report: &OrbitReport, q: u64) -> Result<NqReport> {
    if !is_prime(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    let g = action.group();
    let index = (g.order() / action.kernel().len()) as u64;
    let mut failing: Vec<usize> = report
        .orbits
        .iter()
        .filter(|o| !has_normal_full_sylow(g, &o.stabilizer_elements, q))
        .flat_map(|o| o.members.iter().copied())
        .collect();
    failing.sort_unstable();
    let divides_index = index % q == 0;
    Ok(NqReport {
        module: report.module.clone(),
        group_order: g.order(),
        q,
        divides_index,
        satisfied: divides_index && failing.is_empty(),
        failing,
    })
}

/// The sets `V_I-`, `V_I+`, `V_II` of nonzero vectors whose centralizer has a
/// normal full Sylow `r`-, `s`- or `t`-subgroup respectively, `t` being the
/// characteristic of `SL2(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VSetDecomposition {
    pub module: String,
    pub r: Option<u64>,
    pub s: Option<u64>,
    pub t: u64,
    pub v_i_minus: Vec<usize>,
    pub v_i_plus: Vec<usize>,
    pub v_ii: Vec<usize>,
    pub nonzero: usize,
}

impl VSetDecomposition {
    /// `V_I = V_I- ∪ V_I+`.
    pub fn v_i(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self
            .v_i_minus
            .iter()
            .chain(&self.v_i_plus)
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// `V - {0} = V_I ∪ V_II` with both parts nonempty.
    pub fn is_dichotomy(&self) -> bool {
        let v_i = self.v_i();
        let mut union: Vec<usize> = v_i.iter().chain(&self.v_ii).copied().collect();
        union.sort_unstable();
        union.dedup();
        !v_i.is_empty() && !self.v_ii.is_empty() && union.len() == self.nonzero
    }
}

/// Computes the decomposition for the acting group `SL2(q)`. `r` must be an
/// odd prime dividing `q - 1` and `s` an odd prime dividing `q + 1`.
pub fn v_set_decomposition(
    action: &ModuleAction,
    report: &OrbitReport,
    r: Option<u64>,
    s: Option<u64>,
) -> Result<VSetDecomposition> {
    let q = action.sl2_q();
    let (t, _) = is_prime_power(q).expect("acting group is SL2 of a prime power");
    for (prime, target, name) in [(r, q - 1, "r"), (s, q + 1, "s")] {
        if let Some(x) = prime {
            if !is_prime(x) || x == 2 || target % x != 0 {
                return Err(Error::InvalidArgument(format!(
                    "{name} = {x} must be an odd prime dividing {target}"
                )));
            }
        }
    }
    let g = action.group();
    let collect = |prime: Option<u64>| -> Vec<usize> {
        let Some(x) = prime else { return vec![] };
        let mut out: Vec<usize> = report
            .orbits
            .iter()
            .filter(|o| has_normal_full_sylow(g, &o.stabilizer_elements, x))
            .flat_map(|o| o.members.iter().copied())
            .collect();
        out.sort_unstable();
        out
    };
    Ok(VSetDecomposition {
        module: report.module.clone(),
        r,
        s,
        t,
        v_i_minus: collect(r),
        v_i_plus: collect(s),
        v_ii: collect(Some(t)),
        nonzero: action.size() - 1,
    })
}

/// Number of Sylow 2-subgroups `T` of `SL2(q)`, `q` even, with `U ≤ N(T)`, for
/// a nontrivial `u`-subgroup `U` and `u` a prime dividing `q - 1`.
pub fn sylow_normalizer_count(g: &FiniteGroup, u: u64, sub: &Subgroup) -> Result<usize> {
    Ok(sylow_normalizer_counts(g, u, std::slice::from_ref(sub))?[0])
}

/// [`sylow_normalizer_count`] for several subgroups, sharing the Sylow list.
pub fn sylow_normalizer_counts(g: &FiniteGroup, u: u64, subs: &[Subgroup]) -> Result<Vec<usize>> {
    let sylows = sylow2_subgroups_sl2(g)?;
    let q = sylows.len() as u64 - 1;
    if !is_prime(u) || (q - 1) % u != 0 {
        return Err(Error::InvalidArgument(format!(
            "{u} is not a prime divisor of {}",
            q - 1
        )));
    }
    subs.iter()
        .map(|sub| {
            let n = sub.order() as u64;
            if n == 1 || p_part(n, u) != n {
                return Err(Error::InvalidArgument(format!(
                    "subgroup of order {n} is not a nontrivial {u}-group"
                )));
            }
            let elems = sub.elements();
            if !elems
                .iter()
                .all(|&x| elems.iter().all(|&y| sub.contains(g.mul(x, y))))
            {
                return Err(Error::InvalidArgument("not a subgroup".into()));
            }
            // a generating set suffices for normalizing
            let mut gens: Vec<usize> = Vec::new();
            let mut span = Subgroup::generated(g, &gens);
            for &x in elems {
                if !span.contains(x) {
                    gens.push(x);
                    span = Subgroup::generated(g, &gens);
                }
            }
            Ok(sylows
                .iter()
                .filter(|t| gens.iter().all(|&x| t.is_normalized_by(g, x)))
                .count())
        })
        .collect()
}

/// All subgroups of `g` generated by a single element of order `n`.
pub fn cyclic_subgroups_of_order(g: &FiniteGroup, n: u64) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = g
        .elements()
        .filter(|&x| g.element_order(x) == n)
        .map(|x| Subgroup::generated(g, &[x]))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Dimension of the fixed space of `⊗_j diag(μ^(2^(jc)), μ^(-2^(jc)))`,
/// `j = 0, 1, 2`, over `GF(2^(6c))`, with `μ` the least element of order
/// `2^(2c) - 2^c + 1`.
pub fn triality_fixed_space_dim(c: u32) -> Result<usize> {
    if !(1..=2).contains(&c) {
        return Err(Error::InvalidArgument(format!("c = {c} must be 1 or 2")));
    }
    let field = Field::new(2, 6 * c)?;
    let target = (1u64 << (2 * c)) - (1 << c) + 1;
    let mu = field
        .elements()
        .skip(1)
        .find(|&x| field.element_order(x).ok() == Some(target))
        .ok_or_else(|| Error::InvalidArgument(format!("no element of order {target}")))?;
    let mut m = Matrix::identity(1);
    for j in 0..3 {
        let x = field.frobenius(mu, j * c);
        let d = Matrix::diagonal(&[x, field.inv(x).expect("nonzero")]);
        m = m.kron(&d, &field);
    }
    Ok(8 - m.sub_identity(&field).rank(&field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{module_catalog, sl2_group, ModuleLabel, DEFAULT_CEILING};
    use crate::numtheory::PrimeSet;

    fn module(label: ModuleLabel) -> ModuleAction {
        module_catalog(&label, DEFAULT_CEILING).unwrap()
    }

    fn orbit_profile(r: &OrbitReport) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = r
            .orbits
            .iter()
            .map(|o| (o.size, o.stabilizer_order))
            .collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn catalogue_orbits() {
        let v0 = orbit_report(&module(ModuleLabel::V0));
        assert_eq!(orbit_profile(&v0), vec![(15, 4)]);
        let v1 = orbit_report(&module(ModuleLabel::V1));
        assert_eq!(orbit_profile(&v1), vec![(5, 12), (10, 6)]);
        let w = orbit_report(&module(ModuleLabel::W));
        assert!(w.orbits.iter().all(|o| o.stabilizer_order == 3));
        assert_eq!(w.sizes().iter().sum::<usize>(), 80);
        let u = orbit_report(&module(ModuleLabel::U));
        assert_eq!(orbit_profile(&u), vec![(24, 5)]);
    }

    #[test]
    fn v1_stabilizers_are_s3_and_a4() {
        let v1 = orbit_report(&module(ModuleLabel::V1));
        let tags: Vec<&StabilizerTag> = v1.orbits.iter().map(|o| &o.stabilizer).collect();
        let s3 = tags.iter().find(|t| t.order == 6).unwrap();
        let a4 = tags.iter().find(|t| t.order == 12).unwrap();
        assert!(!s3.abelian && s3.normal_sylow == vec![3]);
        assert!(!a4.abelian && a4.normal_sylow == vec![2]);
    }

    #[test]
    fn orbit_stabilizer_and_divisibility() {
        for label in [
            ModuleLabel::V0,
            ModuleLabel::V1,
            ModuleLabel::W,
            ModuleLabel::U,
            ModuleLabel::Natural(8),
        ] {
            let m = module(label);
            let r = orbit_report(&m);
            assert_eq!(r.sizes().iter().sum::<usize>(), m.size() - 1);
            for o in &r.orbits {
                assert_eq!(o.size * o.stabilizer_order, r.group_order);
                assert_eq!(r.group_order % o.size, 0);
                assert_eq!(o.representative, o.members[0]);
            }
        }
    }

    #[test]
    fn orbit_graphs() {
        let graph = |l| delta_orb(&orbit_report(&module(l)));
        let edge = |a, b| PrimeGraph::new(PrimeSet::new([a, b]).unwrap(), [(a, b)]).unwrap();
        assert_eq!(graph(ModuleLabel::V0), edge(3, 5));
        assert_eq!(graph(ModuleLabel::V1), edge(2, 5));
        assert_eq!(graph(ModuleLabel::U), edge(2, 3));
        // natural(8): one orbit of size 63
        assert_eq!(graph(ModuleLabel::Natural(8)), edge(3, 7));
    }

    #[test]
    fn nq_examples() {
        let check = |l: ModuleLabel, q| {
            let m = module(l);
            let r = orbit_report(&m);
            check_nq(&m, &r, q).unwrap()
        };
        assert!(check(ModuleLabel::Natural(4), 2).satisfied);
        assert!(check(ModuleLabel::W, 3).satisfied);
        assert!(check(ModuleLabel::U, 5).satisfied);
        let v1 = module(ModuleLabel::V1);
        let rep = orbit_report(&v1);
        let n2 = check_nq(&v1, &rep, 2).unwrap();
        assert!(!n2.satisfied);
        let o1 = rep.orbits.iter().find(|o| o.stabilizer_order == 6).unwrap();
        assert!(o1
            .members
            .iter()
            .all(|v| n2.failing.binary_search(v).is_ok()));
        assert!(!check_nq(&v1, &rep, 3).unwrap().satisfied);
        assert!(check_nq(&v1, &rep, 4).is_err());
    }

    #[test]
    fn nq_implies_full_q_part() {
        for label in [
            ModuleLabel::V0,
            ModuleLabel::V1,
            ModuleLabel::W,
            ModuleLabel::U,
        ] {
            let m = module(label);
            let r = orbit_report(&m);
            for q in [2u64, 3, 5] {
                if check_nq(&m, &r, q).unwrap().satisfied {
                    let full = p_part((r.group_order / r.kernel_order) as u64, q);
                    assert!(r
                        .orbits
                        .iter()
                        .all(|o| p_part(o.stabilizer_order as u64, q) == full));
                }
            }
        }
    }

    #[test]
    fn v_sets() {
        let v1 = module(ModuleLabel::V1);
        let d = v_set_decomposition(&v1, &orbit_report(&v1), Some(3), Some(5)).unwrap();
        assert_eq!(
            (d.v_i_minus.len(), d.v_i_plus.len(), d.v_ii.len()),
            (10, 0, 5)
        );
        assert!(d.is_dichotomy());

        for l in [ModuleLabel::V0, ModuleLabel::Natural(4)] {
            let m = module(l);
            let d = v_set_decomposition(&m, &orbit_report(&m), Some(3), Some(5)).unwrap();
            assert_eq!(d.v_ii.len(), 15);
            assert!(d.v_i().is_empty());
            assert!(!d.is_dichotomy());
        }

        let n8 = module(ModuleLabel::Natural(8));
        let d = v_set_decomposition(&n8, &orbit_report(&n8), Some(7), Some(3)).unwrap();
        assert_eq!(d.v_ii.len(), 63);
        assert!(!d.is_dichotomy());

        let u = module(ModuleLabel::U);
        let ru = orbit_report(&u);
        let d = v_set_decomposition(&u, &ru, None, Some(3)).unwrap();
        assert_eq!(d.t, 5);
        assert!(d.v_i_plus.is_empty());
        assert_eq!(d.v_ii.len(), 24);
        assert!(v_set_decomposition(&u, &ru, Some(2), None).is_err());
        assert!(v_set_decomposition(&u, &ru, Some(3), None).is_err());
    }

    #[test]
    fn v_sets_are_unions_of_orbits() {
        for label in [
            ModuleLabel::V0,
            ModuleLabel::V1,
            ModuleLabel::W,
            ModuleLabel::U,
        ] {
            let m = module(label);
            let r = orbit_report(&m);
            for o in &r.orbits {
                let a = o.members[0];
                let b = *o.members.last().unwrap();
                assert_ne!(a, b);
                let (sa, sb) = (stabilizer(&m, a), stabilizer(&m, b));
                for q in [2u64, 3, 5] {
                    assert_eq!(
                        has_normal_full_sylow(m.group(), &sa, q),
                        has_normal_full_sylow(m.group(), &sb, q)
                    );
                }
            }
        }
    }

    #[test]
    fn dichotomy_holds_only_for_v1() {
        let holds: Vec<bool> = [ModuleLabel::V0, ModuleLabel::V1, ModuleLabel::Natural(4)]
            .into_iter()
            .map(|l| {
                let m = module(l);
                v_set_decomposition(&m, &orbit_report(&m), Some(3), Some(5))
                    .unwrap()
                    .is_dichotomy()
            })
            .collect();
        assert_eq!(holds, vec![false, true, false]);
    }

    #[test]
    fn two_sylow_normalizers() {
        for (q, u) in [(4u64, 3u64), (8, 7), (16, 3), (16, 5)] {
            let g = sl2_group(q, DEFAULT_CEILING).unwrap();
            let subs = cyclic_subgroups_of_order(&g, u);
            assert!(!subs.is_empty());
            let counts = sylow_normalizer_counts(&g, u, &subs).unwrap();
            assert!(counts.iter().all(|&c| c == 2), "q={q} u={u}");
            assert_eq!(sylow_normalizer_count(&g, u, &subs[0]).unwrap(), 2);
        }
        let g = sl2_group(4, DEFAULT_CEILING).unwrap();
        let five = &cyclic_subgroups_of_order(&g, 5)[0];
        assert!(sylow_normalizer_count(&g, 5, five).is_err());
        let trivial = Subgroup::new(vec![g.identity()]);
        assert!(sylow_normalizer_count(&g, 3, &trivial).is_err());
    }

    // Oracle: the diagonal entry for signs e is μ^(e1 + e2 2^c + e3 2^(2c)).
    fn sign_vector_count(c: u32) -> usize {
        let m = (1i64 << (2 * c)) - (1 << c) + 1;
        let mut count = 0;
        for bits in 0..8 {
            let e = |k: u32| if bits >> k & 1 == 1 { -1i64 } else { 1 };
            let exp = e(0) + e(1) * (1 << c) + e(2) * (1 << (2 * c));
            if exp.rem_euclid(m) == 0 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn triality() {
        assert_eq!(sign_vector_count(1), 2);
        assert_eq!(triality_fixed_space_dim(1).unwrap(), sign_vector_count(1));
        assert_eq!(triality_fixed_space_dim(2).unwrap(), sign_vector_count(2));
        assert!(triality_fixed_space_dim(2).unwrap() >= 1);
        assert!(triality_fixed_space_dim(3).is_err());
    }
}
