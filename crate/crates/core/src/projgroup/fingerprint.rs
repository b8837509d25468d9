use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::{group_closure, MatrixGroup, ProjMap, DEFAULT_CAP};

/// Isomorphism-invariant summary used to tell catalog groups apart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    /// element order -> number of non-identity elements of that order
    pub element_orders: BTreeMap<u32, usize>,
    pub center_order: usize,
    pub derived_order: usize,
    /// invariant factors of the abelianization, ascending, without 1s
    pub abelianization: Vec<u64>,
}

fn element_order(g: &ProjMap) -> u32 {
    g.order(10_000).expect("elements of finite groups have finite order")
}

fn commutator(a: &ProjMap, b: &ProjMap) -> ProjMap {
    a.compose(b).compose(&a.inverse()).compose(&b.inverse())
}

/// Normal closure of the commutators of the generators.
fn derived_subgroup(g: &MatrixGroup) -> MatrixGroup {
    let gens = g.generators();
    let mut normal_gens: Vec<ProjMap> = Vec::new();
    for a in gens {
        for b in gens {
            let c = commutator(a, b);
            if !c.is_identity() && !normal_gens.contains(&c) {
                normal_gens.push(c);
            }
        }
    }
    if normal_gens.is_empty() {
        return MatrixGroup::from_elements(vec![ProjMap::identity(g.elements()[0].dim())]);
    }
    loop {
        let n = group_closure(&normal_gens, DEFAULT_CAP).expect("subgroup of a finite group");
        let mut grew = false;
        for x in gens {
            for h in normal_gens.clone() {
                let c = x.conjugate(&h);
                if !n.contains(&c) {
                    normal_gens.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            return n;
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of a finite abelian group from its element-order histogram.
fn invariant_factors(order_counts: &BTreeMap<u64, u64>, group_order: u64) -> Vec<u64> {
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in prime_factors(group_order) {
        // log_p of #{a : a^(p^j) = 1}, for j = 0, 1, ...
        let mut logs = vec![0u32];
        let mut j = 1;
        loop {
            let pj = p.pow(j);
            let count: u64 = order_counts.iter().filter(|(k, _)| pj % **k == 0).map(|(_, c)| c).sum();
            let mut l = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                l += 1;
            }
            if l == *logs.last().unwrap() {
                break;
            }
            logs.push(l);
            j += 1;
        }
        // number of cyclic factors of exponent >= j is logs[j] - logs[j-1]
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        let mut exps = Vec::new();
        for (j, &n) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(n - next) {
                exps.push(j as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push((p, exps));
    }
    let slots = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..slots)
        .map(|k| per_prime.iter().map(|(p, e)| e.get(k).map_or(1, |&x| p.pow(x))).product())
        .collect();
    factors.sort_unstable();
    factors
}

/// Computes the structural fingerprint of an enumerated group.
pub fn fingerprint(g: &MatrixGroup) -> Fingerprint {
    let mut element_orders = BTreeMap::new();
    for e in g.elements().iter().filter(|e| !e.is_identity()) {
        *element_orders.entry(element_order(e)).or_insert(0) += 1;
    }
    let center_order = g
        .elements()
        .iter()
        .filter(|e| g.generators().iter().all(|h| e.compose(h) == h.compose(e)))
        .count();
    let derived = derived_subgroup(g);
    // orders in the quotient G / G'
    let mut quotient_counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut seen: HashSet<ProjMap> = HashSet::new();
    for e in g.elements() {
        if seen.contains(e) {
            continue;
        }
        for d in derived.elements() {
            seen.insert(e.compose(d));
        }
        let mut k = 1u64;
        let mut acc = e.clone();
        while !derived.contains(&acc) {
            acc = acc.compose(e);
            k += 1;
        }
        *quotient_counts.entry(k).or_insert(0) += 1;
    }
    let quotient_order = (g.order() / derived.order()) as u64;
    Fingerprint {
        order: g.order(),
        element_orders,
        center_order,
        derived_order: derived.order(),
        abelianization: invariant_factors(&quotient_counts, quotient_order),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_recovery() {
        // Z2 x Z4: orders 1:1, 2:3, 4:4
        let counts = BTreeMap::from([(1, 1), (2, 3), (4, 4)]);
        assert_eq!(invariant_factors(&counts, 8), vec![2, 4]);
        // Z3 x Z3 x Z2 = Z3 x Z6
        let counts = BTreeMap::from([(1, 1), (2, 1), (3, 8), (6, 8)]);
        assert_eq!(invariant_factors(&counts, 18), vec![3, 6]);
        assert_eq!(invariant_factors(&BTreeMap::from([(1, 1)]), 1), Vec::<u64>::new());
    }

    #[test]
    fn trivial_group() {
        let g = group_closure(&[ProjMap::identity(4)], 4).unwrap();
        let f = fingerprint(&g);
        assert_eq!(f.order, 1);
        assert!(f.element_orders.is_empty());
        assert!(f.abelianization.is_empty());
    }
}
