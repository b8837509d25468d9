//! Module-level properties, checked on seeded random inputs.

use std::collections::BTreeSet;

use super::suites::{conjugation_elementwise, degree_law, involutive, ledger_uniqueness};
use super::words::{label, reduced_words, word_run};
use super::{Check, CheckError, Outcome};
use crate::birational::{verify_quotient_diagram, Letter};
use crate::catalog::{self, groups, points, surface};
use crate::exactmath::linalg;
use crate::exactmath::{
    form_gcd, form_space_dim, ideal_contains, monomials, vanishing_order_along_line, vanishing_order_at_point, CycNum,
    Form, ProjLine, ProjPoint, SeededRng, DEFAULT_CONDUCTOR,
};
use crate::invariants::{act, invariant_basis, reynolds, semi_invariant_split, LiftedGroup};
use crate::netlab::{discriminant_factors, net_discriminant, t_family_check, verify_table1, NetPoint};
use crate::projgroup::{fingerprint, group_closure, ProjMap, DEFAULT_CAP};

fn fail(msg: impl Into<String>) -> CheckError {
    msg.into().into()
}

fn random_cyc(rng: &mut SeededRng) -> CycNum {
    let raw: Vec<_> = (0..8).map(|_| rng.rational(6)).collect();
    CycNum::from_power_coeffs(DEFAULT_CONDUCTOR, &raw)
}

/// A form with small random integer coefficients on every monomial.
fn random_form(rng: &mut SeededRng, nvars: usize, d: u32) -> Form {
    let terms = monomials(nvars, d).into_iter().map(|m| (m, CycNum::from_int(rng.int_in(-4, 4))));
    Form::from_terms(nvars, d, terms).expect("homogeneous")
}

fn random_nonzero_form(rng: &mut SeededRng, nvars: usize, d: u32) -> Form {
    loop {
        let f = random_form(rng, nvars, d);
        if !f.is_zero() {
            return f;
        }
    }
}

fn random_point(rng: &mut SeededRng) -> ProjPoint {
    ProjPoint::new(rng.int_vector(4, 5)).expect("nonzero")
}

fn field_axioms(seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed);
    let mut bad = 0;
    for _ in 0..1000 {
        let [a, b, c] = [0; 3].map(|_| random_cyc(&mut rng));
        bad += usize::from(&(&a + &b) + &c != &a + &(&b + &c));
        bad += usize::from(&(&a * &b) * &c != &a * &(&b * &c));
        bad += usize::from(&a * &(&b + &c) != &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            bad += usize::from(!(&a * &a.inv()?).is_one());
        }
    }
    Ok((bad == 0, format!("1000 triples, {bad} violations")))
}

fn substitution_functorial(seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed);
    let mut bad = 0;
    for trial in 0..20 {
        let f = random_form(&mut rng, 4, 1 + trial % 2);
        let g: Vec<Form> = (0..4).map(|_| random_form(&mut rng, 4, 1)).collect();
        let h: Vec<Form> = (0..4).map(|_| random_form(&mut rng, 4, 1)).collect();
        let stepwise = f.substitute(&g)?.substitute(&h)?;
        let composed: Vec<Form> = g.iter().map(|gi| gi.substitute(&h)).collect::<Result<_, _>>()?;
        bad += usize::from(stepwise != f.substitute(&composed)?);
    }
    Ok((bad == 0, format!("20 trials, {bad} mismatches")))
}

fn gcd_divides(seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed);
    let mut bad = 0;
    for _ in 0..10 {
        let hd = rng.int_in(1, 2) as u32;
        let h = random_nonzero_form(&mut rng, 4, hd);
        let d = rng.int_in(1, 2) as u32;
        let fs: Vec<Form> = (0..3).map(|_| h.mul(&random_nonzero_form(&mut rng, 4, d))).collect();
        let g = form_gcd(&fs)?;
        let divides = fs.iter().all(|f| f.exact_div(&g).is_some());
        bad += usize::from(!divides || g.degree() < h.degree());
    }
    Ok((bad == 0, format!("10 families, {bad} failures")))
}

/// A linear form vanishing at `p`.
fn linear_through(rng: &mut SeededRng, p: &ProjPoint) -> Result<Form, CheckError> {
    let l = random_nonzero_form(rng, 4, 1);
    let k = p.pivot();
    let correction = Form::var(4, k).scale(&l.eval_point(p)?.checked_div(&p.coords()[k])?);
    let out = l.sub(&correction);
    Ok(if out.is_zero() { Form::var(4, (k + 1) % 4).sub(&Form::var(4, k).scale(&p.coords()[(k + 1) % 4].checked_div(&p.coords()[k])?)) } else { out })
}

fn order_additivity(seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed);
    let mut bad = 0;
    for _ in 0..20 {
        let p = random_point(&mut rng);
        let make = |rng: &mut SeededRng| -> Result<Form, CheckError> {
            let mut f = random_nonzero_form(rng, 4, 1);
            for _ in 0..rng.int_in(0, 2) {
                f = f.mul(&linear_through(rng, &p)?);
            }
            Ok(f)
        };
        let f = make(&mut rng)?;
        let g = make(&mut rng)?;
        let lhs = vanishing_order_at_point(&f.mul(&g), &p)?;
        bad += usize::from(lhs != vanishing_order_at_point(&f, &p)? + vanishing_order_at_point(&g, &p)?);
    }
    Ok((bad == 0, format!("20 pairs, {bad} failures")))
}

fn line_order_symmetry(seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed);
    let mut bad = 0;
    let mut trials = 0;
    while trials < 10 {
        let (p, q) = (random_point(&mut rng), random_point(&mut rng));
        let (Ok(pq), Ok(qp)) = (ProjLine::through(p.clone(), q.clone()), ProjLine::through(q, p)) else { continue };
        trials += 1;
        let [a, b] = pq.equations().clone();
        let e = rng.int_in(0, 3) as u32;
        let mut f = random_nonzero_form(&mut rng, 4, 1);
        for k in 0..e {
            f = f.mul(if k % 2 == 0 { &a } else { &b });
        }
        let s = rng.next_u64();
        let one = vanishing_order_along_line(&f, &pq, s)?;
        let other = vanishing_order_along_line(&f, &qp, s)?;
        bad += usize::from(one != other || one < e);
    }
    Ok((bad == 0, format!("10 lines, {bad} failures")))
}

fn monomial_group_names() -> &'static [&'static str] {
    &groups::MONOMIAL_GROUPS
}

fn orbit_stabilizer() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for name in monomial_group_names() {
        let g = catalog::group(name)?;
        for p in points::POINT_NAMES {
            let o = g.orbit(&points::seed(p).expect("catalog seed"))?;
            count += 1;
            if o.length * o.stabilizer_order != g.order() {
                bad.push(format!("{p} under {name}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("{count} orbits, failures: {bad:?}")))
}

fn shuffled(gens: &[ProjMap], rng: &mut SeededRng) -> Vec<ProjMap> {
    let mut v = gens.to_vec();
    rng.shuffle(&mut v);
    v
}

fn closure_shuffle(seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed);
    let mut bad = Vec::new();
    for name in monomial_group_names() {
        let g = catalog::group(name)?;
        let h = group_closure(&shuffled(g.generators(), &mut rng), DEFAULT_CAP)?;
        if h.order() != g.order() || !h.elements().iter().all(|x| g.contains(x)) {
            bad.push(*name);
        }
    }
    Ok((bad.is_empty(), format!("12 groups, differing closures: {bad:?}")))
}

fn sigma4_base() -> Vec<ProjPoint> {
    points::coordinate_points()
}

fn upsilon_homomorphism(seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed);
    let mut bad = 0;
    let names = ["G_48_50", "G_96_227", "G_648_704"];
    for name in names {
        let g = catalog::group(name)?;
        let perms = g.permutations_of(&sigma4_base())?;
        let els = g.elements();
        for _ in 0..30 {
            let a = rng.int_in(0, els.len() as i64 - 1) as usize;
            let b = rng.int_in(0, els.len() as i64 - 1) as usize;
            let ab = g.index_of(&els[a].compose(&els[b])).ok_or_else(|| fail("product outside the group"))?;
            let composed: Vec<usize> = perms[b].iter().map(|&k| perms[a][k]).collect();
            bad += usize::from(perms[ab] != composed);
        }
    }
    Ok((bad == 0, format!("90 sampled pairs in {names:?}, {bad} failures")))
}

fn kernel_normal() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for name in ["G_48_50", "G_324_160prime", "G_648_704"] {
        let g = catalog::group(name)?;
        let (image, t) = g.sigma4_action(&sigma4_base())?;
        let normal = g.elements().iter().all(|x| t.elements().iter().all(|k| t.contains(&x.conjugate(k))));
        ok &= normal;
        detail.push(format!("{name}: image {image}, |T| = {}, normal: {normal}", t.order()));
    }
    Ok((ok, detail.join("; ")))
}

fn fingerprint_stable(seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed);
    let mut bad = Vec::new();
    for name in monomial_group_names() {
        let g = catalog::group(name)?;
        let reference = fingerprint(&g);
        for _ in 0..3 {
            let h = group_closure(&shuffled(g.generators(), &mut rng), DEFAULT_CAP)?;
            if fingerprint(&h) != reference {
                bad.push(*name);
                break;
            }
        }
    }
    Ok((bad.is_empty(), format!("12 groups x 3 shuffles, unstable: {bad:?}")))
}

/// The integer after the first underscore: `G_48_50 -> 48`, `H_16 -> 16`.
fn order_in_name(name: &str) -> Option<usize> {
    name.split('_').nth(1)?.trim_end_matches("prime").parse().ok()
}

fn orders_match_names() -> Outcome {
    let mut bad = Vec::new();
    for (name, _) in groups::GROUP_ORDERS {
        let g = catalog::group(name)?;
        if order_in_name(name) != Some(g.order()) {
            bad.push(format!("{name}: {}", g.order()));
        }
    }
    Ok((bad.is_empty(), format!("{} groups, mismatches: {bad:?}", groups::GROUP_ORDERS.len())))
}

fn seed_lengths_match_names() -> Outcome {
    let g = catalog::group("G_48_50")?;
    let mut bad = Vec::new();
    for name in points::POINT_NAMES {
        let digits: String = name.chars().filter(|c| c.is_ascii_digit()).collect();
        let o = g.orbit(&points::seed(name).expect("catalog seed"))?;
        if digits.parse::<usize>().ok() != Some(o.length) {
            bad.push(format!("{name}: {}", o.length));
        }
    }
    Ok((bad.is_empty(), format!("9 seeds, mismatches: {bad:?}")))
}

fn quadric_names() -> Vec<String> {
    (1..=10).map(|k| format!("Q{k}")).collect()
}

fn quadrics_h_invariant() -> Outcome {
    let h = catalog::group("H_16")?;
    let mut bad = Vec::new();
    for name in quadric_names() {
        let q = surface(&name)?;
        for g in h.elements() {
            if g.pull_back(&q)?.ratio_to(&q).is_none() {
                bad.push(name.clone());
                break;
            }
        }
    }
    Ok((bad.is_empty(), format!("10 quadrics, {} elements each, not invariant: {bad:?}", h.order())))
}

fn quadric_partition() -> Outcome {
    let g = catalog::group("G_48_50")?;
    let qs: Vec<Form> = quadric_names().iter().map(|n| surface(n)).collect::<Result<_, _>>()?;
    let index_of = |f: &Form| qs.iter().position(|q| q.ratio_to(f).is_some());
    let mut parts: BTreeSet<Vec<usize>> = BTreeSet::new();
    for q in &qs {
        let mut orbit = BTreeSet::new();
        for h in g.elements() {
            let k = index_of(&h.push_forward(q)?).ok_or_else(|| fail("a quadric leaves the set"))?;
            orbit.insert(k + 1);
        }
        parts.insert(orbit.into_iter().collect());
    }
    let expected: BTreeSet<Vec<usize>> = [vec![1], vec![2, 3, 4], vec![5, 6, 7], vec![8, 9, 10]].into_iter().collect();
    Ok((parts == expected, format!("orbits {parts:?}")))
}

fn c8_on_t_and_q1() -> Outcome {
    let t = surface("T")?;
    let q1 = surface("Q1")?;
    let c = catalog::curve("C8_1")?;
    let comps = c.ideals().ok_or_else(|| fail("C8_1 is given by ideals"))?;
    let mut ok = true;
    for comp in comps {
        ok &= ideal_contains(&comp.generators, &t)? && ideal_contains(&comp.generators, &q1)?;
    }
    Ok((ok, format!("{} components, all on T and Q1: {ok}", comps.len())))
}

fn lifted_groups() -> Result<Vec<LiftedGroup>, CheckError> {
    Ok(vec![LiftedGroup::named("G_hat")?, LiftedGroup::named("G_96_227_hat")?])
}

fn reynolds_idempotent(seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed);
    let mut bad = 0;
    for g in lifted_groups()? {
        for d in [2, 3, 4] {
            let f = random_form(&mut rng, 4, d);
            let once = reynolds(&g, &f)?;
            bad += usize::from(reynolds(&g, &once)? != once);
        }
    }
    Ok((bad == 0, format!("6 forms, {bad} failures")))
}

fn invariants_fixed() -> Outcome {
    let mut bad = 0;
    let mut checked = 0;
    for g in lifted_groups()? {
        for d in [2, 4] {
            for f in invariant_basis(&g, d)? {
                for m in g.elements() {
                    checked += 1;
                    bad += usize::from(act(m, &f)? != f);
                }
            }
        }
    }
    Ok((bad == 0, format!("{checked} (element, form) pairs, {bad} moved")))
}

fn dimension_bounds() -> Outcome {
    let h = LiftedGroup::named("H_hat")?;
    let g = LiftedGroup::named("G_hat")?;
    let mut detail = Vec::new();
    let mut ok = true;
    for d in [2, 4, 6] {
        let total = form_space_dim(4, d);
        let hdim = invariant_basis(&h, d)?.len();
        let s = semi_invariant_split(&g, d)?;
        let split: usize = s.blocks.iter().map(|b| b.basis.len()).sum::<usize>() + s.higher_dim;
        ok &= hdim <= total && split == hdim && s.trivial_dim() <= hdim;
        detail.push(format!("d={d}: total {total}, H-invariant {hdim}, split sum {split}"));
    }
    Ok((ok, detail.join("; ")))
}

fn action_contravariant(seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed);
    let g = LiftedGroup::named("G_96_227_hat")?;
    let els = g.elements();
    let mut bad = 0;
    for _ in 0..10 {
        let a = &els[rng.int_in(0, els.len() as i64 - 1) as usize];
        let b = &els[rng.int_in(0, els.len() as i64 - 1) as usize];
        let f = random_form(&mut rng, 4, 2);
        bad += usize::from(act(&linalg::mat_mul(a, b), &f)? != act(a, &act(b, &f)?)?);
    }
    Ok((bad == 0, format!("10 triples, {bad} failures")))
}

fn discriminant_rows_and_off_locus(seed: u64) -> Outcome {
    let rows = crate::netlab::table1_rows();
    let row_zero = rows.iter().filter(|r| net_discriminant(&r.parameter).is_zero()).count();
    let mut rng = SeededRng::new(seed);
    let mut off = 0;
    let mut nonzero = 0;
    while off < 20 {
        let v = rng.int_vector(3, 30);
        let p = NetPoint::new(v[0].clone(), v[1].clone(), v[2].clone())?;
        if discriminant_factors(&p).iter().any(|f| f.is_zero()) {
            continue;
        }
        off += 1;
        nonzero += usize::from(!net_discriminant(&p).is_zero());
    }
    Ok((
        row_zero == rows.len() && nonzero == 20,
        format!("{row_zero} of {} rows on the discriminant, {nonzero} of 20 random parameters off it", rows.len()),
    ))
}

fn table_rows() -> Outcome {
    let reports = verify_table1()?;
    let failing: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| r.row.parameter.to_string()).collect();
    Ok((failing.is_empty(), format!("{} rows, failing: {failing:?}", reports.len())))
}

fn t_family() -> Outcome {
    let mut ok = true;
    for t in [CycNum::from_int(2), CycNum::from_int(3), crate::exactmath::consts::frac(1, 2)] {
        ok &= t_family_check(&t)?.pass;
    }
    Ok((ok, format!("t in {{2, 3, 1/2}} all singular along their orbit: {ok}")))
}

fn euler_relation(seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed);
    let mut bad = 0;
    for d in 1..=6 {
        let f = random_form(&mut rng, 4, d);
        let mut lhs = Form::zero(4, d);
        for k in 0..4 {
            lhs = lhs.add(&Form::var(4, k).mul(&f.derivative(k)));
        }
        bad += usize::from(lhs != f.scale(&CycNum::from_int(d as i64)));
    }
    Ok((bad == 0, format!("degrees 1..6, {bad} failures")))
}

/// Every reduced word of length at most 3 has degree above one and
/// decomposes back to itself.
fn free_product_witness() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for len in 1..=3 {
        for w in reduced_words(len) {
            count += 1;
            let run = word_run(&w);
            let degree = run.map.as_ref().map(|m| m.degree()).unwrap_or(0);
            if degree <= 1 || !run.recovers_word() {
                bad.push(label(&w));
            }
        }
    }
    Ok((bad.is_empty(), format!("{count} words, failures: {bad:?}")))
}

fn diagram(seed: u64) -> Outcome {
    let r = verify_quotient_diagram(20, seed)?;
    Ok((r.pass, format!("{} of 20 commute, {} eta matches", r.commuting, r.eta_matches)))
}

type Property = (&'static str, &'static str, fn(u64) -> Outcome);

macro_rules! unseeded {
    ($f:expr) => {{
        fn wrapper(_: u64) -> Outcome {
            $f()
        }
        wrapper as fn(u64) -> Outcome
    }};
}

fn table() -> Vec<Property> {
    vec![
        ("exactmath/field-axioms", "cyclotomic arithmetic satisfies the field axioms", field_axioms),
        ("exactmath/substitution-functorial", "substituting twice equals substituting the composite", substitution_functorial),
        ("exactmath/gcd-divides", "the gcd of a family divides every member", gcd_divides),
        ("exactmath/order-additivity", "the order of vanishing at a point is additive", order_additivity),
        ("exactmath/line-order-symmetry", "the order along a line does not depend on the spanning points", line_order_symmetry),
        ("projgroup/orbit-stabilizer", "orbit length times stabilizer order is the group order", unseeded!(orbit_stabilizer)),
        ("projgroup/closure-shuffle", "the closure does not depend on the generator order", closure_shuffle),
        ("projgroup/upsilon-homomorphism", "the action on the coordinate points is a homomorphism", upsilon_homomorphism),
        ("projgroup/kernel-normal", "the kernel of the action on the coordinate points is normal", unseeded!(kernel_normal)),
        ("projgroup/fingerprint-stable", "fingerprints survive shuffling the generators", fingerprint_stable),
        ("catalog/orders-match-names", "every group order equals the number in its name", unseeded!(orders_match_names)),
        ("catalog/seed-lengths-match-names", "every seed orbit length equals the number in its name", unseeded!(seed_lengths_match_names)),
        ("catalog/quadrics-h-invariant", "each of Q1..Q10 is preserved by every element of H", unseeded!(quadrics_h_invariant)),
        ("catalog/quadric-partition", "G_48_50 splits Q1..Q10 into {Q1}, {Q2,Q3,Q4}, {Q5,Q6,Q7}, {Q8,Q9,Q10}", unseeded!(quadric_partition)),
        ("catalog/c8-on-t-and-q1", "every conic of C8_1 lies on T and on Q1", unseeded!(c8_on_t_and_q1)),
        ("invariants/reynolds-idempotent", "averaging twice is averaging once", reynolds_idempotent),
        ("invariants/fixed-by-all-elements", "invariant forms are fixed by every group element", unseeded!(invariants_fixed)),
        ("invariants/dimension-bounds", "character pieces add up to the H-invariant dimension", unseeded!(dimension_bounds)),
        ("invariants/action-contravariant", "(gh).f = g.(h.f)", action_contravariant),
        ("netlab/discriminant", "row parameters lie on the discriminant and random ones off it", discriminant_rows_and_off_locus),
        ("netlab/singular-rows", "every row is singular exactly along its listed orbits", unseeded!(table_rows)),
        ("netlab/t-family", "the cubic family is singular along the orbit of [1:1:1:t]", unseeded!(t_family)),
        ("netlab/euler-relation", "sum of x_i df/dx_i is deg(f) f", euler_relation),
        ("birational/involutive", "iota, iota', iota'' square to the identity", unseeded!(|| {
            let mut ok = true;
            let mut d = Vec::new();
            for l in Letter::ALL {
                let (pass, detail) = involutive(l)?;
                ok &= pass;
                d.push(detail);
            }
            Ok((ok, d.join("; ")))
        })),
        ("birational/degree-law", "deg(s o iota) = 3n - 4m on invariant systems", |seed| degree_law(20, seed)),
        ("birational/free-product", "reduced words of length at most 3 are never the identity and decompose uniquely", unseeded!(free_product_witness)),
        ("birational/conjugation", "iota normalizes G_48_50", unseeded!(conjugation_elementwise)),
        ("birational/diagram", "the quotient diagram commutes", diagram),
        ("birational/ledger-uniqueness", "one untwisting inequality per decomposition step", unseeded!(|| ledger_uniqueness(3))),
    ]
}

pub(crate) fn checks(seed: u64) -> Vec<Check> {
    table()
        .into_iter()
        .map(|(id, anchor, f)| Check::new(format!("properties/{id}"), anchor, move || f(seed)))
        .collect()
}
