//! Cases of the classification of groups with a composition factor
//! `SL2(2^a)` whose degree graph is connected with a cut vertex: parameter
//! checks, predicted graphs, and verification of concrete witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chardeg::{character_degrees, DegreeMultiset};
use crate::error::{Error, Result};
use crate::graph::{degree_graph, PrimeGraph};
use crate::group::FiniteGroup;
use crate::numtheory::{is_prime, prime_set, PrimeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// `a ≥ 3`, `K ≅ SL2(2^a)`.
    T1a,
    /// `a ≥ 3`, `K/L ≅ SL2(2^a)` with `L` the natural module.
    T1b,
    /// `K ≅ SL2(4)` or `SL2(5)`.
    T2a,
    /// `K/L ≅ SL2(4)`, `L` the natural module.
    #[serde(rename = "T2b_i")]
    T2bI,
    /// `K/L ≅ SL2(4)`, `L` the `Ω4^-(2)` module.
    #[serde(rename = "T2b_ii")]
    T2bII,
    /// `K/L ≅ SL2(5)`, `L` the natural module.
    #[serde(rename = "T2c_i")]
    T2cI,
    /// `K/L ≅ SL2(5)`, `L` of order `3^4`.
    #[serde(rename = "T2c_ii")]
    T2cII,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theorem::T1a => "T1a",
            Theorem::T1b => "T1b",
            Theorem::T2a => "T2a",
            Theorem::T2bI => "T2b_i",
            Theorem::T2bII => "T2b_ii",
            Theorem::T2cI => "T2c_i",
            Theorem::T2cII => "T2c_ii",
        };
        f.write_str(s)
    }
}

/// One case with its parameters. `pi_outer` is `π(G/KR)` and `v_gk` the
/// vertex set of `Δ(G/K)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationCase {
    pub theorem: Theorem,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    pub p: u64,
    #[serde(default)]
    pub pi_outer: PrimeSet,
    #[serde(default)]
    pub v_gk: PrimeSet,
    /// For `T2a`: whether `G = SL2(4) × R`. Defaults to true.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direct: Option<bool>,
}

fn invalid(case: &ClassificationCase, why: impl fmt::Display) -> Error {
    Error::InvalidCase(format!("{}: {why}", case.theorem))
}

impl ClassificationCase {
    pub fn new(
        theorem: Theorem,
        a: Option<u32>,
        p: u64,
        pi_outer: PrimeSet,
        v_gk: PrimeSet,
    ) -> Self {
        ClassificationCase {
            theorem,
            a,
            p,
            pi_outer,
            v_gk,
            direct: None,
        }
    }

    fn is_direct(&self) -> bool {
        self.direct.unwrap_or(true)
    }

    /// Checks the parameter constraints of the case.
    pub fn validate(&self) -> Result<()> {
        let p = self.p;
        if !is_prime(p) {
            return Err(invalid(self, format!("p = {p} is not prime")));
        }
        let singleton_p = PrimeSet::singleton(p)?;
        let two = PrimeSet::singleton(2)?;
        match self.theorem {
            Theorem::T1a | Theorem::T1b => {
                let a = self.a.ok_or_else(|| invalid(self, "missing a"))?;
                if !(3..=32).contains(&a) {
                    return Err(invalid(self, format!("a = {a} outside 3..=32")));
                }
                // G/KR embeds in the cyclic outer automorphism group of order a
                if !self.pi_outer.is_subset(&prime_set(a as u64)?) {
                    return Err(invalid(
                        self,
                        format!("pi_outer {} not inside pi({a})", self.pi_outer),
                    ));
                }
                if self.direct.is_some() {
                    return Err(invalid(self, "direct applies to T2a only"));
                }
                if self.theorem == Theorem::T1a && p == 2 {
                    if self.v_gk.union(&self.pi_outer) != two {
                        return Err(invalid(self, "p = 2 needs v_gk ∪ pi_outer = {2}"));
                    }
                } else {
                    if p == 2 {
                        return Err(invalid(self, "p must be odd"));
                    }
                    if self.v_gk != singleton_p {
                        return Err(invalid(self, format!("v_gk must be {{{p}}}")));
                    }
                    if self.pi_outer.contains(2) {
                        return Err(invalid(self, "G/KR must have odd order"));
                    }
                }
            }
            _ => {
                if self.a.is_some_and(|a| a != 2) {
                    return Err(invalid(self, "a is fixed to 2"));
                }
                if self.direct.is_some() && self.theorem != Theorem::T2a {
                    return Err(invalid(self, "direct applies to T2a only"));
                }
                let outer_ok = match self.theorem {
                    Theorem::T2bI | Theorem::T2bII => self.pi_outer.is_empty(),
                    _ => self.pi_outer.is_subset(&two),
                };
                if !outer_ok {
                    return Err(invalid(
                        self,
                        format!("pi_outer {} not allowed", self.pi_outer),
                    ));
                }
                let ok = match self.theorem {
                    Theorem::T2a => self.v_gk == singleton_p && (p != 5 || self.is_direct()),
                    Theorem::T2bI => p != 2 && self.v_gk == singleton_p,
                    Theorem::T2bII => p == 5 && self.v_gk.is_subset(&singleton_p),
                    Theorem::T2cI => p != 5 && self.v_gk == singleton_p,
                    Theorem::T2cII => p == 2 && self.v_gk.is_subset(&singleton_p),
                    Theorem::T1a | Theorem::T1b => unreachable!(),
                };
                if !ok {
                    return Err(invalid(
                        self,
                        format!("p = {p}, v_gk = {} not admissible", self.v_gk),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn clique_edges(set: &PrimeSet) -> Vec<(u64, u64)> {
    let v = set.as_slice();
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            out.push((v[i], v[j]));
        }
    }
    out
}

fn star_edges(center: u64, vertices: &PrimeSet) -> Vec<(u64, u64)> {
    vertices
        .iter()
        .filter(|&v| v != center)
        .map(|v| (center, v))
        .collect()
}

/// The graph the case predicts for `Δ(G)`.
pub fn predict_graph(case: &ClassificationCase) -> Result<PrimeGraph> {
    case.validate()?;
    let p = case.p;
    let ps = PrimeSet::singleton(p)?;
    let two = PrimeSet::singleton(2)?;
    match case.theorem {
        Theorem::T1a | Theorem::T1b => {
            let q = 1u64 << case.a.expect("validated");
            let minus = prime_set(q - 1)?;
            let plus = prime_set(q + 1)?;
            if case.theorem == Theorem::T1b {
                let rest = minus.union(&plus).union(&case.pi_outer).union(&ps);
                let mut edges = clique_edges(&rest);
                edges.push((2, p));
                return PrimeGraph::new(rest.union(&two), edges);
            }
            let (a_side, b_side) = if p == 2 {
                (minus.union(&two), plus.union(&two))
            } else {
                let core = case.pi_outer.union(&ps);
                (minus.union(&core), plus.union(&core))
            };
            let mut edges = clique_edges(&a_side);
            edges.extend(clique_edges(&b_side));
            if p != 2 {
                edges.push((2, p));
            }
            PrimeGraph::new(a_side.union(&b_side).union(&two), edges)
        }
        theorem => {
            let vertices = PrimeSet::new([2, 3, 5])?.union(&ps);
            let mut edges = star_edges(p, &vertices);
            match theorem {
                Theorem::T2a if !case.is_direct() => edges.push((2, 3)),
                Theorem::T2bI => edges.push((3, 5)),
                Theorem::T2cI => edges.push((2, 3)),
                _ => {}
            }
            edges.retain(|&(x, y)| x != y);
            PrimeGraph::new(vertices, edges)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub witness: String,
    pub order: usize,
    pub case: ClassificationCase,
    pub degrees: DegreeMultiset,
    pub computed: PrimeGraph,
    pub predicted: PrimeGraph,
    pub connected: bool,
    pub cut_vertices: PrimeSet,
    pub complete_vertices: PrimeSet,
    /// `V(G) = π(G/R) ∪ {p}`.
    pub vertices_match: bool,
    pub missing_edges: Vec<[u64; 2]>,
    pub extra_edges: Vec<[u64; 2]>,
    pub pass: bool,
}

/// Compares `Δ(G)` of a witness with the prediction of `case`. `pi_g_mod_r`
/// is `π(G/R)`, known from the construction of the witness.
pub fn verify_witness(
    name: &str,
    g: &FiniteGroup,
    pi_g_mod_r: &PrimeSet,
    case: &ClassificationCase,
) -> Result<VerificationReport> {
    let predicted = predict_graph(case)?;
    let degrees = character_degrees(g)?;
    Ok(report_from_degrees(
        name,
        g.order(),
        degrees,
        pi_g_mod_r,
        case,
        predicted,
    ))
}

/// Same as [`verify_witness`] for already computed degrees.
pub fn report_from_degrees(
    name: &str,
    order: usize,
    degrees: DegreeMultiset,
    pi_g_mod_r: &PrimeSet,
    case: &ClassificationCase,
    predicted: PrimeGraph,
) -> VerificationReport {
    let computed = degree_graph(&degrees);
    let p = case.p;
    let cut_vertices = computed.cut_vertices();
    let complete_vertices = computed.complete_vertices();
    let connected = computed.is_connected();
    let expected_vertices = pi_g_mod_r.union(&PrimeSet::from_sorted_unchecked(vec![p]));
    let vertices_match = computed.vertices() == &expected_vertices;
    let have = computed.edges();
    let want = predicted.edges();
    let missing_edges: Vec<[u64; 2]> = want.iter().filter(|e| !have.contains(e)).copied().collect();
    let extra_edges: Vec<[u64; 2]> = have.iter().filter(|e| !want.contains(e)).copied().collect();
    let pass = computed == predicted
        && connected
        && cut_vertices.as_slice() == [p]
        && complete_vertices.contains(p)
        && vertices_match;
    VerificationReport {
        witness: name.to_string(),
        order,
        case: case.clone(),
        degrees,
        computed,
        predicted,
        connected,
        cut_vertices,
        complete_vertices,
        vertices_match,
        missing_edges,
        extra_edges,
        pass,
    }
}

/// Every admissible T1 parameterization with `a` in `a_range` and `p` among
/// `primes`.
pub fn t1_cases(a_range: std::ops::RangeInclusive<u32>, primes: &[u64]) -> Vec<ClassificationCase> {
    let mut out = Vec::new();
    for a in a_range {
        let pi_a = prime_set(a as u64).expect("a > 0");
        let odd_outer: Vec<u64> = pi_a.iter().filter(|&r| r != 2).collect();
        let subsets: Vec<PrimeSet> = (0..1u32 << odd_outer.len())
            .map(|mask| {
                PrimeSet::from_sorted_unchecked(
                    (0..odd_outer.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| odd_outer[i])
                        .collect(),
                )
            })
            .collect();
        for &p in primes {
            let ps = PrimeSet::singleton(p).expect("prime");
            if p == 2 {
                let two = ps.clone();
                let mut options = vec![(PrimeSet::empty(), two.clone())];
                if pi_a.contains(2) {
                    options.push((two.clone(), two.clone()));
                    options.push((two.clone(), PrimeSet::empty()));
                }
                for (outer, v_gk) in options {
                    out.push(ClassificationCase::new(
                        Theorem::T1a,
                        Some(a),
                        2,
                        outer,
                        v_gk,
                    ));
                }
                continue;
            }
            for outer in &subsets {
                for theorem in [Theorem::T1a, Theorem::T1b] {
                    out.push(ClassificationCase::new(
                        theorem,
                        Some(a),
                        p,
                        outer.clone(),
                        ps.clone(),
                    ));
                }
            }
        }
    }
    out
}
