//! The full verification run behind `cdgraph suite`: every check with a
//! pass flag and a short deterministic detail line.

use std::sync::Arc;

use serde::Serialize;

use crate::chardeg::{
    character_degrees, character_degrees_with_prime, sl2_degrees_closed_form, working_prime,
    DegreeMultiset,
};
use crate::classify::{predict_graph, t1_cases, verify_witness, ClassificationCase, Theorem};
use crate::error::Result;
use crate::graph::{degree_graph, PrimeGraph};
use crate::group::small::extraspecial;
use crate::group::{conjugacy_classes, module_catalog, sl2_group, FiniteGroup, ModuleLabel};
use crate::modact::{
    check_nq, cyclic_subgroups_of_order, orbit_report, sylow_normalizer_counts,
    triality_fixed_space_dim, v_set_decomposition,
};
use crate::numtheory::{is_prime, prime_set, primitive_prime_divisors, PrimeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub long: bool,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn check(id: u32, title: &str, body: impl FnOnce(u32) -> Result<(bool, String)>) -> Check {
    let (pass, detail) = body(id).unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        id,
        title: title.to_string(),
        pass,
        detail,
    }
}

fn extension(label: ModuleLabel, ceiling: usize) -> Result<FiniteGroup> {
    FiniteGroup::semidirect(Arc::new(module_catalog(&label, ceiling)?), ceiling)
}

fn sl2_components(ceiling: usize) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = vec![];
    for a in 2..=5u32 {
        let q = 1u64 << a;
        let closed = sl2_degrees_closed_form(q)?;
        let degrees = if a <= 4 {
            let d = character_degrees(&sl2_group(q, ceiling)?)?;
            ok &= d == closed;
            d
        } else {
            closed
        };
        let g = degree_graph(&degrees);
        let mut expected = vec![
            PrimeSet::singleton(2)?,
            prime_set(q - 1)?,
            prime_set(q + 1)?,
        ];
        expected.sort_by_key(|s| s.as_slice()[0]);
        let comps = g.connected_components();
        ok &= comps == expected;
        for c in &comps {
            ok &= g.is_clique(c)?;
        }
        let shown: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
        parts.push(format!("q={q}: {}", shown.join(" ")));
    }
    Ok((ok, parts.join("; ")))
}

fn orbit_data(ceiling: usize) -> Result<(bool, String)> {
    let expected: [(ModuleLabel, Vec<(usize, usize)>); 4] = [
        (ModuleLabel::V0, vec![(15, 4)]),
        (ModuleLabel::V1, vec![(5, 12), (10, 6)]),
        (ModuleLabel::W, vec![(40, 3), (40, 3)]),
        (ModuleLabel::U, vec![(24, 5)]),
    ];
    let mut ok = true;
    let mut parts = vec![];
    for (label, want) in expected {
        let r = orbit_report(&module_catalog(&label, ceiling)?);
        let mut got: Vec<(usize, usize)> = r
            .orbits
            .iter()
            .map(|o| (o.size, o.stabilizer_order))
            .collect();
        got.sort_unstable();
        ok &= got == want;
        let shown: Vec<String> = got.iter().map(|(s, c)| format!("{s}/{c}")).collect();
        parts.push(format!("{label}: {}", shown.join(" ")));
    }
    Ok((
        ok,
        format!("orbit size/stabilizer order: {}", parts.join("; ")),
    ))
}

fn sylow_normalizers(ceiling: usize) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = vec![];
    for (q, u) in [(4u64, 3u64), (8, 7), (16, 3), (16, 5), (32, 31)] {
        let g = sl2_group(q, ceiling)?;
        let subs = cyclic_subgroups_of_order(&g, u);
        let counts = sylow_normalizer_counts(&g, u, &subs)?;
        ok &= !counts.is_empty() && counts.iter().all(|&c| c == 2);
        parts.push(format!(
            "({q},{u}): {} subgroups, counts {:?}",
            subs.len(),
            {
                let mut c = counts.clone();
                c.dedup();
                c
            }
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn nq_checks(ceiling: usize) -> Result<(bool, String)> {
    let cases = [
        (ModuleLabel::Natural(4), 2, true),
        (ModuleLabel::W, 3, true),
        (ModuleLabel::U, 5, true),
        (ModuleLabel::V1, 2, false),
        (ModuleLabel::V1, 3, false),
    ];
    let mut ok = true;
    let mut parts = vec![];
    for (label, q, want) in cases {
        let m = module_catalog(&label, ceiling)?;
        let r = check_nq(&m, &orbit_report(&m), q)?;
        ok &= r.satisfied == want;
        parts.push(format!("{label} N_{q}={}", r.satisfied));
    }
    Ok((ok, parts.join("; ")))
}

fn dichotomy(ceiling: usize) -> Result<(bool, String)> {
    let cases = [
        (ModuleLabel::V1, 3, 5, true),
        (ModuleLabel::Natural(4), 3, 5, false),
        (ModuleLabel::Natural(8), 7, 3, false),
    ];
    let mut ok = true;
    let mut parts = vec![];
    for (label, r, s, want) in cases {
        let m = module_catalog(&label, ceiling)?;
        let d = v_set_decomposition(&m, &orbit_report(&m), Some(r), Some(s))?;
        ok &= d.is_dichotomy() == want;
        parts.push(format!(
            "{label} (r={r}, s={s}): |V_I|={} |V_II|={} dichotomy={}",
            d.v_i().len(),
            d.v_ii.len(),
            d.is_dichotomy()
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn graph(vertices: &[u64], edges: &[(u64, u64)]) -> Result<PrimeGraph> {
    PrimeGraph::new(
        PrimeSet::new(vertices.iter().copied())?,
        edges.iter().copied(),
    )
}

fn extension_graphs(ceiling: usize) -> Result<(bool, String)> {
    let cases = [
        (ModuleLabel::V1, graph(&[2, 3, 5], &[(2, 5), (5, 3)])?),
        (ModuleLabel::W, graph(&[2, 3, 5], &[(3, 2), (2, 5)])?),
        (ModuleLabel::Natural(4), graph(&[2, 3, 5], &[(3, 5)])?),
        (ModuleLabel::U, graph(&[2, 3, 5], &[(2, 3)])?),
    ];
    let mut ok = true;
    let mut parts = vec![];
    for (label, want) in cases {
        let g = extension(label.clone(), ceiling)?;
        let got = degree_graph(&character_degrees(&g)?);
        ok &= got == want;
        parts.push(format!("{label} (order {}): {}", g.order(), got.to_json()));
    }
    Ok((ok, parts.join("; ")))
}

fn direct_product_witnesses(ceiling: usize) -> Result<(bool, String)> {
    let sl4 = Arc::new(sl2_group(4, ceiling)?);
    let pi = PrimeSet::new([2, 3, 5])?;
    let mut ok = true;
    let mut parts = vec![];
    for (t, e) in [(2u64, 4u64), (3, 3), (5, 5)] {
        let r = Arc::new(extraspecial(t, t * t * t, e)?);
        let g = FiniteGroup::direct_product(sl4.clone(), r, ceiling)?;
        let case = ClassificationCase::new(
            Theorem::T2a,
            None,
            t,
            PrimeSet::empty(),
            PrimeSet::singleton(t)?,
        );
        let rep = verify_witness(g.name(), &g, &pi, &case)?;
        ok &= rep.pass;
        parts.push(format!(
            "{} p={t}: {}",
            g.name(),
            if rep.pass { "pass" } else { "FAIL" }
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn t1_sweep() -> Result<(bool, String)> {
    let primes: Vec<u64> = (2..=100).filter(|&n| is_prime(n)).collect();
    let cases = t1_cases(3..=8, &primes);
    let mut bad = 0;
    for c in &cases {
        let g = predict_graph(c)?;
        if !(g.is_connected()
            && g.cut_vertices().as_slice() == [c.p]
            && g.complete_vertices().contains(c.p))
        {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("{} cases, {bad} violations", cases.len())))
}

fn zsygmondy() -> Result<(bool, String)> {
    let mut empty = vec![];
    let mut ok = true;
    for m in 2..=50u64 {
        for n in 2..=12u32 {
            let is_empty = primitive_prime_divisors(m, n)?.is_empty();
            let exceptional = (m == 2 && n == 6) || (n == 2 && (m + 1).is_power_of_two());
            ok &= is_empty == exceptional;
            if is_empty {
                empty.push(format!("({m},{n})"));
            }
        }
    }
    Ok((ok, format!("empty for {}", empty.join(" "))))
}

fn triality() -> Result<(bool, String)> {
    let d1 = triality_fixed_space_dim(1)?;
    let d2 = triality_fixed_space_dim(2)?;
    Ok((d1 == 2 && d2 >= 1, format!("c=1: {d1}, c=2: {d2}")))
}

/// Groups on which the degree invariants are exercised.
pub fn corpus(ceiling: usize) -> Result<Vec<FiniteGroup>> {
    let sl4 = Arc::new(sl2_group(4, ceiling)?);
    let mut out = vec![
        sl2_group(4, ceiling)?,
        sl2_group(5, ceiling)?,
        sl2_group(8, ceiling)?,
        sl2_group(16, ceiling)?,
    ];
    for label in [
        ModuleLabel::V1,
        ModuleLabel::W,
        ModuleLabel::U,
        ModuleLabel::Natural(4),
        ModuleLabel::Natural(8),
    ] {
        out.push(extension(label, ceiling)?);
    }
    out.push(FiniteGroup::direct_product(
        sl4.clone(),
        Arc::new(FiniteGroup::cyclic(5)?),
        ceiling,
    )?);
    for (t, e) in [(2u64, 4u64), (3, 3), (5, 5)] {
        out.push(FiniteGroup::direct_product(
            sl4.clone(),
            Arc::new(extraspecial(t, t * t * t, e)?),
            ceiling,
        )?);
    }
    Ok(out)
}

/// Degrees computed with the default working prime and with the next one.
pub fn degrees_under_two_primes(
    g: &FiniteGroup,
) -> Result<(DegreeMultiset, DegreeMultiset, u64, u64)> {
    let classes = conjugacy_classes(g);
    let e = g.exponent(&classes);
    let p1 = working_prime(e, g.order());
    let mut p2 = p1 + e;
    while !is_prime(p2) {
        p2 += e;
    }
    Ok((
        character_degrees_with_prime(g, p1)?,
        character_degrees_with_prime(g, p2)?,
        p1,
        p2,
    ))
}

fn dixon_invariants(ceiling: usize) -> Result<(bool, String)> {
    let mut ok = true;
    let groups = corpus(ceiling)?;
    for g in &groups {
        let (d1, d2, _, _) = degrees_under_two_primes(g)?;
        let classes = conjugacy_classes(g).len();
        ok &= d1 == d2 && d1.sum_of_squares() == g.order() as u128 && d1.count() == classes;
    }
    Ok((ok, format!("{} groups", groups.len())))
}

fn long_extension(ceiling: usize) -> Result<(bool, String)> {
    let g = extension(ModuleLabel::OmegaMinus(16), ceiling)?;
    let d = character_degrees(&g)?;
    let want = vec![1, 15, 16, 17, 51, 68, 204, 255, 272, 340];
    Ok((d.degree_set() == want, format!("order {}: {d}", g.order())))
}

/// Runs every check; the order-1044480 extension only when `long` is set.
pub fn run(long: bool, ceiling: usize) -> SuiteReport {
    let mut checks = vec![
        check(1, "components of the degree graph of SL2(2^a)", |_| {
            sl2_components(ceiling)
        }),
        check(2, "orbit data of V0, V1, W, U", |_| orbit_data(ceiling)),
        check(3, "two Sylow 2-normalizers", |_| sylow_normalizers(ceiling)),
        check(4, "condition N_q", |_| nq_checks(ceiling)),
        check(5, "V_I / V_II dichotomy", |_| dichotomy(ceiling)),
        check(6, "degree graphs of module extensions", |_| {
            extension_graphs(ceiling)
        }),
        check(7, "direct product witnesses", |_| {
            direct_product_witnesses(ceiling)
        }),
        check(8, "predicted T1 graphs", |_| t1_sweep()),
        check(9, "primitive prime divisors", |_| zsygmondy()),
        check(10, "triality fixed space", |_| triality()),
        check(11, "degree invariants", |_| dixon_invariants(ceiling)),
    ];
    if long {
        checks.push(check(12, "2^8 extension of SL2(16)", |_| {
            long_extension(ceiling)
        }));
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    SuiteReport {
        long,
        passed,
        failed: checks.len() - passed,
        checks,
    }
}
