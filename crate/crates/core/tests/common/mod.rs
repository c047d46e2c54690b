//! Brute-force oracles written straight from the definitions. They share
//! no code with the library beyond the graph container.
#![allow(dead_code)]

use std::collections::HashSet;

use qm_core::{Graph, Rational};

pub fn r(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

pub fn adj(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

fn edges_into(a: &[Vec<bool>], v: usize, set: u64, skip: &[usize]) -> i64 {
    (0..a.len())
        .filter(|&z| (set >> z) & 1 == 1 && !skip.contains(&z) && a[v][z])
        .count() as i64
}

/// Numerator over n³ (variants 0..2) of the functional at `(perm, set)`.
pub fn omega_num(a: &[Vec<bool>], perm: &[usize], set: u64, variant: u8) -> i64 {
    let n = a.len();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (v, w) = (perm[i], perm[j]);
            s += match variant {
                0 => (edges_into(a, v, set, &[v, w]) - edges_into(a, w, set, &[v, w])).max(0),
                1 => (edges_into(a, v, set, &[]) - edges_into(a, w, set, &[])).max(0),
                _ => {
                    (edges_into(a, v, set, &[]) - edges_into(a, w, set, &[])).max(0)
                        + (edges_into(a, v, full & !set, &[]) - edges_into(a, w, full & !set, &[])).max(0)
                }
            };
        }
    }
    s
}

/// Smallest ε > 0 (or 0) with `#{v≺w : e(v,A) > e(w,A) + εn} ≤ εn²`,
/// searched over every candidate breakpoint.
pub fn omega3_brute(a: &[Vec<bool>], perm: &[usize], set: u64) -> Rational {
    let n = a.len() as i64;
    if n <= 1 {
        return r(0, 1);
    }
    let gaps: Vec<i64> = (0..a.len())
        .flat_map(|i| (i + 1..a.len()).map(move |j| (i, j)))
        .map(|(i, j)| edges_into(a, perm[i], set, &[]) - edges_into(a, perm[j], set, &[]))
        .collect();
    let mut cands: Vec<Rational> = (0..=n * n).map(|c| r(c, n * n)).collect();
    cands.extend((1..=n).map(|g| r(g, n)));
    cands.sort();
    for e in cands {
        let bad = gaps.iter().filter(|&&g| Rational::from_integer(g) > e * n).count() as i64;
        if Rational::from_integer(bad) <= e * n * n {
            return e;
        }
    }
    unreachable!("ε = 1 is always feasible")
}

pub fn omega_value(a: &[Vec<bool>], perm: &[usize], set: u64, variant: u8) -> Rational {
    let n = a.len().max(1) as i64;
    if variant == 3 {
        omega3_brute(a, perm, set)
    } else {
        r(omega_num(a, perm, set, variant), n * n * n)
    }
}

pub fn max_over_subsets(a: &[Vec<bool>], perm: &[usize], variant: u8) -> Rational {
    (0u64..1 << a.len())
        .map(|s| omega_value(a, perm, s, variant))
        .max()
        .unwrap()
}

pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn min_over_orders(a: &[Vec<bool>], variant: u8) -> Rational {
    all_perms(a.len())
        .iter()
        .map(|p| max_over_subsets(a, p, variant))
        .min()
        .unwrap()
}

/// `Σ_{v≺w} |N(v) ∖ N(w)|`.
pub fn tilde1_num(a: &[Vec<bool>], perm: &[usize]) -> i64 {
    let n = a.len();
    let mut s = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (v, w) = (perm[i], perm[j]);
            s += (0..n).filter(|&z| a[v][z] && !a[w][z]).count() as i64;
        }
    }
    s
}

/// Every labeled threshold graph on `n` vertices as an adjacency matrix,
/// built by adding isolated or dominating vertices in every order.
pub fn labeled_threshold_graphs(n: usize) -> Vec<Vec<Vec<bool>>> {
    let mut seen = HashSet::new();
    for p in all_perms(n) {
        for roles in 0u64..(1 << n) {
            let mut a = vec![vec![false; n]; n];
            for j in 0..n {
                if (roles >> j) & 1 == 1 {
                    for &u in &p[..j] {
                        a[u][p[j]] = true;
                        a[p[j]][u] = true;
                    }
                }
            }
            seen.insert(a);
        }
    }
    seen.into_iter().collect()
}

pub fn edit_to_thresholds(a: &[Vec<bool>], thresholds: &[Vec<Vec<bool>>]) -> usize {
    let n = a.len();
    thresholds
        .iter()
        .map(|t| {
            (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| t[u][v] != a[u][v])
                .count()
        })
        .min()
        .unwrap()
}

fn encode(n: usize, rows: &[u64], perm: &[usize]) -> u64 {
    let mut code = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if (rows[perm[i]] >> perm[j]) & 1 == 1 {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

/// Canonical code: minimum encoding over labelings that sort vertices by
/// (degree, sorted neighbour degrees), permuting freely inside ties.
fn canonical(n: usize, rows: &[u64]) -> u64 {
    let deg: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let key = |v: usize| {
        let mut nd: Vec<u32> = (0..n).filter(|&u| (rows[v] >> u) & 1 == 1).map(|u| deg[u]).collect();
        nd.sort_unstable();
        (deg[v], nd)
    };
    let keys: Vec<_> = (0..n).map(key).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(c) if keys[c[0]] == keys[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(n);
    fn rec(cells: &[Vec<usize>], ci: usize, rest: &mut Vec<usize>, perm: &mut Vec<usize>, n: usize, rows: &[u64], best: &mut u64) {
        if ci == cells.len() {
            *best = (*best).min(encode(n, rows, perm));
            return;
        }
        if rest.is_empty() {
            if ci + 1 < cells.len() {
                let mut next = cells[ci + 1].clone();
                rec(cells, ci + 1, &mut next, perm, n, rows, best);
            } else {
                rec(cells, ci + 1, rest, perm, n, rows, best);
            }
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            perm.push(v);
            rec(cells, ci, rest, perm, n, rows, best);
            perm.pop();
            rest.insert(i, v);
        }
    }
    if n == 0 {
        return 0;
    }
    let mut first = cells[0].clone();
    rec(&cells, 0, &mut first, &mut perm, n, rows, &mut best);
    best
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// by extending the classes on `n − 1` vertices with every neighbourhood.
pub fn graph_classes(n: usize) -> Vec<Graph> {
    let mut classes: Vec<Vec<u64>> = vec![Vec::new()];
    for m in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for rows in &classes {
            for nb in 0u64..(1 << (m - 1)) {
                let mut r: Vec<u64> = rows.clone();
                for (u, ru) in r.iter_mut().enumerate() {
                    if (nb >> u) & 1 == 1 {
                        *ru |= 1 << (m - 1);
                    }
                }
                r.push(nb);
                if seen.insert(canonical(m, &r)) {
                    next.push(r);
                }
            }
        }
        classes = next;
    }
    classes.iter().map(|r| Graph::from_row_masks(r)).collect()
}

#[test]
fn class_counts() {
    let counts: Vec<usize> = (1..=6).map(|n| graph_classes(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
}
