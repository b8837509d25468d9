//! The computational claims, one suite per topic.

use std::sync::Arc;

use super::words::{label, reduced_words, word_run};
use super::{Check, CheckError, Outcome};
use crate::birational::{
    map_compose, maps_equal, pullback_system, system_mult_at_orbit, verify_quotient_diagram, Letter, LinearSystem,
    RationalMap,
};
use crate::catalog::curves::{find_component, nonic_pencil, push_component};
use crate::catalog::{self, groups, points, surface, IdealComponent};
use crate::exactmath::consts::{frac, int, sqrt3_i};
use crate::exactmath::{CycNum, Form, ProjPoint, SeededRng};
use crate::invariants::{invariant_basis, preserves_span, semi_invariant_split, LiftedGroup};
use crate::netlab::{self, candidate_orbits, off_locus_scan, t_family_check, table1_rows, verify_row};
use crate::projgroup::{group_closure, MatrixGroup, DEFAULT_CAP};

fn fail(msg: impl Into<String>) -> CheckError {
    msg.into().into()
}

pub(crate) fn group_orders() -> Vec<Check> {
    const EXPECTED: [(&str, usize); 15] = [
        ("G_48_50", 48),
        ("G_48_3", 48),
        ("G_96_70", 96),
        ("G_96_72", 96),
        ("G_96_227", 96),
        ("G_96_227prime", 96),
        ("G_192_955", 192),
        ("G_192_185", 192),
        ("G_324_160", 324),
        ("G_324_160prime", 324),
        ("G_648_704", 648),
        ("G_648_704prime", 648),
        ("G_576_8654", 576),
        ("G_144_184", 144),
        ("G_288_1025", 288),
    ];
    EXPECTED
        .iter()
        .map(|&(name, order)| {
            Check::new(
                format!("group-orders/{name}"),
                format!("the printed generators of {name} generate a group of order {order}"),
                move || {
                    let gens = groups::generators(name).ok_or_else(|| fail("no generators"))?;
                    let g = group_closure(&gens, DEFAULT_CAP)?;
                    Ok((g.order() == order, format!("closure has {} elements", g.order())))
                },
            )
        })
        .collect()
}

fn orbit_length_check(id: String, anchor: String, group: &'static str, p: ProjPoint, want: usize) -> Check {
    Check::new(id, anchor, move || {
        let o = catalog::group(group)?.orbit(&p)?;
        Ok((o.length == want, format!("orbit length {}, stabilizer order {}", o.length, o.stabilizer_order)))
    })
}

pub(crate) fn orbit_census() -> Vec<Check> {
    const EXPECTED: [(&str, usize); 9] = [
        ("Sigma4", 4),
        ("Sigma4prime", 4),
        ("Sigma4primeprime", 4),
        ("Sigma12", 12),
        ("Sigma12prime", 12),
        ("Sigma12primeprime", 12),
        ("Sigma12tripleprime", 12),
        ("Sigma16", 16),
        ("Sigma16prime", 16),
    ];
    let mut out: Vec<Check> = EXPECTED
        .iter()
        .map(|&(name, len)| {
            orbit_length_check(
                format!("orbit-census/{name}"),
                format!("the G_48_50-orbit {name} has {len} points"),
                "G_48_50",
                points::seed(name).expect("catalog seed"),
                len,
            )
        })
        .collect();
    for t in [2, 3, -2] {
        out.push(orbit_length_check(
            format!("orbit-census/t={t}"),
            format!("the G_48_50-orbit of [1:1:1:{t}] has 16 points"),
            "G_48_50",
            points::sigma16_t(&int(t)),
            16,
        ));
    }
    out
}

pub(crate) fn orbit_probe_192() -> Vec<Check> {
    let mut out = vec![orbit_length_check(
        "orbit-probe-192/Sigma4".into(),
        "the four coordinate points form a G_192_185-orbit".into(),
        "G_192_185",
        points::seed("Sigma4").expect("catalog seed"),
        4,
    )];
    let mut probes: Vec<(String, ProjPoint)> = points::POINT_NAMES[1..]
        .iter()
        .map(|n| (n.to_string(), points::seed(n).expect("catalog seed")))
        .collect();
    for (label, t) in [("2", int(2)), ("3", int(3)), ("-2", int(-2)), ("sqrt-3", sqrt3_i())] {
        probes.push((format!("t={label}"), points::sigma16_t(&t)));
    }
    for (name, p) in probes {
        out.push(Check::new(
            format!("orbit-probe-192/{name}"),
            "every G_192_185-orbit other than the coordinate points has at least 16 points",
            move || {
                let o = catalog::group("G_192_185")?.orbit(&p)?;
                Ok((o.length >= 16, format!("orbit length {}", o.length)))
            },
        ));
    }
    out
}

pub(crate) fn quartic_invariants() -> Vec<Check> {
    vec![
        Check::new(
            "quartic-invariants/h-hat-dimension",
            "the H-invariant quartics form a five-dimensional space",
            || {
                let d = invariant_basis(&LiftedGroup::named("H_hat")?, 4)?.len();
                Ok((d == 5, format!("dimension {d}")))
            },
        ),
        Check::new(
            "quartic-invariants/g-hat-split",
            "under the lift of G_48_50 the H-invariant quartics split as three invariants plus two distinct nontrivial characters",
            || {
                let s = semi_invariant_split(&LiftedGroup::named("G_hat")?, 4)?;
                let nontrivial: Vec<_> = s.nontrivial().collect();
                let ok = s.trivial_dim() == 3
                    && nontrivial.len() == 2
                    && nontrivial.iter().all(|b| b.basis.len() == 1)
                    && nontrivial[0].character != nontrivial[1].character
                    && s.higher_dim == 0;
                Ok((
                    ok,
                    format!(
                        "{} invariant, {} nontrivial blocks of sizes {:?}, {} in higher-dimensional pieces",
                        s.trivial_dim(),
                        nontrivial.len(),
                        nontrivial.iter().map(|b| b.basis.len()).collect::<Vec<_>>(),
                        s.higher_dim
                    ),
                ))
            },
        ),
        Check::new(
            "quartic-invariants/g144-eigenforms",
            "under the lift of G_144_184 the H-invariant quartics split into five distinct characters with eigenforms f1^2, f2, f3, f4, f5",
            || {
                let s = semi_invariant_split(&LiftedGroup::named("G_144_184_hat")?, 4)?;
                let dims_ok = s.blocks.len() == 5 && s.blocks.iter().all(|b| b.basis.len() == 1) && s.higher_dim == 0;
                let expected = [surface("f1")?.pow(2), surface("f2")?, surface("f3")?, surface("f4")?, surface("f5")?];
                let matched = expected
                    .iter()
                    .filter(|f| s.blocks.iter().filter(|b| b.basis[0].ratio_to(f).is_some()).count() == 1)
                    .count();
                Ok((dims_ok && matched == 5, format!("{} blocks, {matched} of 5 expected eigenforms found", s.blocks.len())))
            },
        ),
    ]
}

pub(crate) fn quartic_net(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for (k, row) in table1_rows().into_iter().enumerate() {
        out.push(Check::new(
            format!("quartic-net/row-{:02}", k + 1),
            format!(
                "the member {} (on {}) has discriminant zero and is singular exactly along {}",
                row.parameter,
                row.condition,
                row.expected.join(" + ")
            ),
            move || {
                let r = verify_row(&row, &candidate_orbits()?)?;
                Ok((
                    r.pass,
                    format!(
                        "discriminant zero: {}, singular orbits {:?}, partially singular {:?}",
                        r.discriminant_zero, r.singular_orbits, r.partial_orbits
                    ),
                ))
            },
        ));
    }
    for (label, t) in [("2", int(2)), ("3", int(3)), ("1/2", frac(1, 2))] {
        out.push(Check::new(
            format!("quartic-net/t-family/t={label}"),
            format!("the member [2t^3+6t : -t^2-1 : 1] at t = {label} is singular exactly along the orbit of [1:1:1:t]"),
            move || {
                let r = t_family_check(&t)?;
                Ok((
                    r.pass,
                    format!("discriminant zero: {}, orbit length {}, singular {:?}", r.discriminant_zero, r.orbit_length, r.singular_orbits),
                ))
            },
        ));
    }
    out.push(Check::new(
        "quartic-net/off-locus",
        "members off the discriminant have no singular point among the known orbits",
        move || {
            let r = off_locus_scan(20, seed)?;
            Ok((r.pass, format!("{} parameters, {} singular hits", r.parameters.len(), r.singular_hits.len())))
        },
    ));
    out
}

pub(crate) fn line_intersections() -> Vec<Check> {
    let table = Arc::new(std::sync::OnceLock::new());
    (0..7)
        .map(|k| {
            let table = table.clone();
            let names = ["L4 L4primeprime", "L4 L4prime", "L4prime L4primeprime", "L4 L4tripleprime", "L6tripleprime L6quadprime", "L4 L6quadprime", "L6 L6prime"];
            let (l, r) = names[k].split_once(' ').expect("pair");
            Check::new(
                format!("line-intersections/{l}-{r}"),
                format!("the intersection of {l} and {r} is the listed union of orbits"),
                move || {
                    let t = table.get_or_init(|| netlab::intersection_table().map_err(|e| e.to_string()));
                    let rows = t.as_ref().map_err(|e| fail(e.clone()))?;
                    let row = &rows[k];
                    Ok((row.pass, format!("{} points, expected {}", row.found_points, row.expected)))
                },
            )
        })
        .collect()
}

pub(crate) fn fano_enriques_maps(seed: u64, samples: usize) -> Vec<Check> {
    const COMMUTES: &str = "omega o zeta = psi o xi on the double cover w^2 = x0 x1 x2 x3";
    let commutes = if samples == 0 {
        Check::skipped("fano-enriques-maps/diagram-commutes", COMMUTES, "no samples requested")
    } else {
        Check::new("fano-enriques-maps/diagram-commutes", COMMUTES, move || {
            let r = verify_quotient_diagram(samples, seed)?;
            Ok((
                r.all_ones_ok && r.commuting == samples,
                format!("{} of {samples} samples commute, all-ones point ok: {}", r.commuting, r.all_ones_ok),
            ))
        })
    };
    let mut out = vec![
        commutes,
        Check::new(
            "fano-enriques-maps/eta-formulas",
            "eta_i o psi is the i-th projection of zeta followed by squaring",
            move || {
                let r = verify_quotient_diagram(50, seed.wrapping_add(1))?;
                Ok((r.eta_matches == 50, format!("{} of 50 samples match", r.eta_matches)))
            },
        ),
    ];
    for k in 0..4 {
        out.push(Check::new(
            format!("fano-enriques-maps/psi-contracts-F{}", k + 1),
            format!("psi contracts the plane x{k} = 0 to a coordinate point of P^13 that is also an omega image"),
            move || {
                let r = verify_quotient_diagram(1, seed)?;
                let c = &r.contractions[k];
                Ok((
                    c.generic_points_ok && c.omega_point_ok,
                    format!(
                        "coordinate {}: {} generic points ok: {}, omega point ok: {}",
                        c.expected_index, c.generic_points, c.generic_points_ok, c.omega_point_ok
                    ),
                ))
            },
        ));
    }
    out
}

fn r_power(k: u32) -> RationalMap {
    RationalMap::from_proj_map(&groups::mat_r().power(k))
}

/// Systems of degree at most 6 stable under `G_48_50`: each is a sum of
/// random subspaces of character blocks of the lifted group, which the group
/// scales and therefore preserves.
pub(crate) fn sampled_invariant_systems(count: usize, seed: u64) -> Result<Vec<LinearSystem>, CheckError> {
    let g = LiftedGroup::named("G_hat")?;
    let splits = [2, 4, 6].map(|d| semi_invariant_split(&g, d));
    let mut rng = SeededRng::new(seed ^ 0x6465_6772);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 50 * count {
            return Err(fail(format!("only {} usable systems after {attempts} attempts", out.len())));
        }
        let split = splits[rng.int_in(0, 2) as usize].as_ref().map_err(|e| fail(e.to_string()))?;
        let mut forms: Vec<Form> = Vec::new();
        for block in &split.blocks {
            if rng.int_in(0, 2) == 0 {
                continue;
            }
            let r = rng.int_in(1, block.basis.len() as i64) as usize;
            for _ in 0..r {
                let mut f = Form::zero(4, split.degree);
                for b in &block.basis {
                    f = f.add(&b.scale(&CycNum::from_int(rng.int_in(-5, 5))));
                }
                if !f.is_zero() {
                    forms.push(f);
                }
            }
        }
        if forms.len() < 2 {
            continue;
        }
        if let Ok(s) = LinearSystem::new(&forms, None) {
            if s.dim() >= 2 {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// The degree law `deg(s o iota) = 3n - 4 m` on sampled invariant systems.
pub(crate) fn degree_law(count: usize, seed: u64) -> Outcome {
    let iota = RationalMap::named("iota")?;
    let sigma4 = catalog::group("G_48_50")?.orbit(&points::seed("Sigma4").expect("catalog seed"))?;
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for s in sampled_invariant_systems(count, seed)? {
        let m = system_mult_at_orbit(&s, &sigma4)?;
        let image = pullback_system(&iota, &s)?;
        let law = 3 * s.degree as i64 - 4 * m as i64;
        seen.push(format!("(n={}, dim={}, m={m}) -> {}", s.degree, s.dim(), image.degree));
        if image.degree as i64 != law {
            bad.push(format!("n={} m={m}: got {}, law gives {law}", s.degree, image.degree));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { seen.join("; ") } else { bad.join("; ") }))
}

/// `iota o g o iota` lies in `G_48_50` for every element `g`.
pub(crate) fn conjugation_elementwise() -> Outcome {
    let iota = RationalMap::named("iota")?;
    let g = catalog::group("G_48_50")?;
    let mut outside = 0;
    for h in g.elements() {
        let c = map_compose(&iota, &map_compose(&RationalMap::from_proj_map(h), &iota)?)?;
        if !c.to_proj_map().is_some_and(|m| g.contains(&m)) {
            outside += 1;
        }
    }
    Ok((outside == 0, format!("{} elements, {outside} conjugates outside the group", g.order())))
}

pub(crate) fn involutive(letter: Letter) -> Outcome {
    let m = letter.map();
    let sq = map_compose(&m, &m)?;
    let ok = sq.to_proj_map().is_some_and(|p| p.is_identity());
    Ok((ok, format!("{letter} o {letter} has degree {}", sq.degree())))
}

/// Every ledger met while decomposing the words of length at most `len` has
/// exactly one untwisting inequality.
pub(crate) fn ledger_uniqueness(len: usize) -> Outcome {
    let mut ledgers = 0;
    let mut bad = Vec::new();
    for l in 1..=len {
        for w in reduced_words(l) {
            let run = word_run(&w);
            match &run.decomposition {
                Ok(d) => {
                    for ledger in &d.ledgers {
                        ledgers += 1;
                        if ledger.n > 1 && ledger.untwisting_letters().len() != 1 {
                            bad.push(format!("{} at degree {}", label(&w), ledger.n));
                        }
                    }
                }
                Err(e) => bad.push(format!("{}: {e}", label(&w))),
            }
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("{ledgers} ledgers, each with one inequality") } else { bad.join("; ") }))
}

pub(crate) fn cremona_algebra(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for l in Letter::ALL {
        out.push(Check::new(
            format!("cremona-algebra/involution/{l}"),
            format!("{l} is a birational involution"),
            move || involutive(l),
        ));
    }
    out.push(Check::new(
        "cremona-algebra/conjugate-by-r/iota_prime",
        "iota' = R o iota o R^2",
        move || {
            let m = map_compose(&r_power(1), &map_compose(&Letter::Iota.map(), &r_power(2))?)?;
            let eq = maps_equal(&m, &Letter::IotaPrime.map(), 20, seed)?;
            Ok((eq, format!("equal at 20 points: {eq}")))
        },
    ));
    out.push(Check::new(
        "cremona-algebra/conjugate-by-r/iota_double_prime",
        "iota'' = R^2 o iota o R",
        move || {
            let m = map_compose(&r_power(2), &map_compose(&Letter::Iota.map(), &r_power(1))?)?;
            let eq = maps_equal(&m, &Letter::IotaDoublePrime.map(), 20, seed)?;
            Ok((eq, format!("equal at 20 points: {eq}")))
        },
    ));
    out.push(Check::new(
        "cremona-algebra/conjugation-elementwise",
        "iota G_48_50 iota = G_48_50, element by element",
        conjugation_elementwise,
    ));
    out.push(Check::new(
        "cremona-algebra/degree-law",
        "an invariant system of degree n with multiplicity m at Sigma4 goes to degree 3n - 4m under iota",
        move || degree_law(20, seed),
    ));
    out.push(Check::new(
        "cremona-algebra/ledger-uniqueness",
        "exactly one of the three untwisting inequalities holds at each step of a decomposition",
        || ledger_uniqueness(2),
    ));
    out
}

/// The length-3 words a seed selects: six of the twelve.
pub(crate) fn sampled_long_words(seed: u64) -> Vec<Vec<Letter>> {
    let mut words = reduced_words(3);
    SeededRng::new(seed ^ 0x776f_7264).shuffle(&mut words);
    words.truncate(6);
    words.sort();
    words
}

pub(crate) fn word_check(word: Vec<Letter>, samples: usize, seed: u64) -> Outcome {
    let run = word_run(&word);
    let map = run.map.as_ref().map_err(|e| fail(e.clone()))?;
    let d = run.decomposition.as_ref().map_err(|e| fail(e.clone()))?;
    let round_trip = d.round_trip(map, samples, seed)?;
    let ok = map.degree() > 1 && run.recovers_word() && round_trip;
    let got: Vec<&str> = d.word.letters.iter().map(|l| l.as_str()).collect();
    Ok((
        ok,
        format!(
            "degree {}, decomposed as {:?}, identity tail: {}, round trip on {samples} points: {round_trip}",
            map.degree(),
            got,
            d.word.tail.is_identity()
        ),
    ))
}

pub(crate) fn sarkisov_words(seed: u64) -> Vec<Check> {
    let mut words: Vec<Vec<Letter>> = reduced_words(1);
    words.extend(reduced_words(2));
    words.extend(sampled_long_words(seed));
    words
        .into_iter()
        .map(|w| {
            Check::new(
                format!("sarkisov-words/len{}/{}", w.len(), label(&w)),
                "a reduced word in iota, iota', iota'' is not the identity and decomposes back to its letters in reverse",
                move || word_check(w.clone(), 10, seed),
            )
        })
        .collect()
}

/// Every generator sends every component of `curve` to a component of it.
fn components_stable(curve: &str, group: &MatrixGroup) -> Outcome {
    let entry = catalog::curve(curve)?;
    let comps: &[IdealComponent] = entry.ideals().ok_or_else(|| fail("curve not given by ideals"))?;
    let mut moved = 0;
    for g in group.generators() {
        for c in comps {
            if find_component(comps, &push_component(g, c)?)?.is_none() {
                moved += 1;
            }
        }
    }
    Ok((
        moved == 0,
        format!("{} components, {} generators, {moved} images outside the curve", comps.len(), group.generators().len()),
    ))
}

pub(crate) fn invariant_curves() -> Vec<Check> {
    let mut out = Vec::new();
    for name in ["C8_192", "SC8", "SC12", "SC12prime", "F12", "F12prime"] {
        out.push(Check::new(
            format!("invariant-curves/{name}"),
            format!("G_192_185 permutes the components of {name}"),
            move || components_stable(name, &*catalog::group("G_192_185")?),
        ));
    }
    for (name, second) in [("C9", false), ("C9prime", true)] {
        out.push(Check::new(
            format!("invariant-curves/{name}"),
            format!("{name} is G_324_160'-invariant"),
            move || components_stable(name, &*catalog::group("G_324_160prime")?),
        ));
        out.push(Check::new(
            format!("invariant-curves/{name}-pencil"),
            format!("G_324_160' preserves the pencil of cubics through {name}"),
            move || {
                let g = catalog::group("G_324_160prime")?;
                let ok = preserves_span(g.generators(), &nonic_pencil(second))?;
                Ok((ok, format!("span preserved by all {} generators: {ok}", g.generators().len())))
            },
        ));
    }
    out
}
