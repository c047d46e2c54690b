//! Branch and bound over vertex orders for `min_≺ max_A`.
//!
//! Every subset ("scenario") keeps its own partial sum over the pairs already
//! fixed by the order prefix; since pair costs are nonnegative, the largest
//! partial sum bounds every completion from below.

use num_traits::Zero;

use super::scan::omega3_key;
use super::Variant;

pub(crate) trait Cost:
    Copy + PartialOrd + Zero + std::ops::Sub<Output = Self> + std::ops::AddAssign
{
}
impl Cost for i64 {}
impl Cost for f64 {}

#[inline]
fn max_of<T: Cost>(it: impl Iterator<Item = T>) -> T {
    it.fold(T::zero(), |m, x| if x > m { x } else { m })
}

/// Pairwise costs in vertex space for one scenario family.
pub(crate) struct CostTable<T = i64> {
    n: usize,
    scenarios: usize,
    /// `cost[(u * n + w) * scenarios + s]`: cost of `u ≺ w` in scenario `s`.
    cost: Vec<T>,
}

impl CostTable<i64> {
    /// Table for a 0/1 rows problem (`rows[v]` neighbourhood mask of `v`).
    pub(crate) fn from_rows(rows: &[u64], variant: Variant) -> Self {
        assert!(variant != Variant::Omega3);
        let n = rows.len();
        let scenarios = scenario_count(n, variant);
        let deg: Vec<i64> = rows.iter().map(|r| r.count_ones() as i64).collect();
        let mut cost = vec![0i64; n * n * scenarios];
        for s in 0..scenarios {
            let m = s as u64;
            let x: Vec<i64> = rows.iter().map(|r| (r & m).count_ones() as i64).collect();
            for u in 0..n {
                for w in 0..n {
                    if u == w {
                        continue;
                    }
                    let d = x[u] - x[w];
                    let c = match variant {
                        Variant::Omega0 => {
                            let corr = if (rows[u] >> w) & 1 == 1 {
                                ((m >> u) & 1) as i64 - ((m >> w) & 1) as i64
                            } else {
                                0
                            };
                            (d + corr).max(0)
                        }
                        Variant::Omega1 => d.max(0),
                        Variant::Omega2 => d.max(0) + (deg[u] - deg[w] - d).max(0),
                        Variant::Omega3 => unreachable!(),
                    };
                    cost[(u * n + w) * scenarios + s] = c;
                }
            }
        }
        CostTable { n, scenarios, cost }
    }
}

impl<T: Cost> CostTable<T> {
    /// Table from explicit costs `f(u, w, s)`.
    pub(crate) fn from_fn(
        n: usize,
        scenarios: usize,
        f: impl Fn(usize, usize, usize) -> T,
    ) -> Self {
        let mut cost = vec![T::zero(); n * n * scenarios];
        for u in 0..n {
            for w in 0..n {
                if u != w {
                    for s in 0..scenarios {
                        cost[(u * n + w) * scenarios + s] = f(u, w, s);
                    }
                }
            }
        }
        CostTable { n, scenarios, cost }
    }

    #[inline]
    fn pair(&self, u: usize, w: usize) -> &[T] {
        let off = (u * self.n + w) * self.scenarios;
        &self.cost[off..off + self.scenarios]
    }

    /// Objective of a full order: `max_s Σ_{u≺w} cost`.
    pub(crate) fn evaluate(&self, order: &[usize]) -> T {
        let mut acc = vec![T::zero(); self.scenarios];
        for (i, &u) in order.iter().enumerate() {
            for &w in &order[i + 1..] {
                for (a, &c) in acc.iter_mut().zip(self.pair(u, w)) {
                    *a += c;
                }
            }
        }
        max_of(acc.into_iter())
    }
}

pub(crate) fn scenario_count(n: usize, variant: Variant) -> usize {
    if variant == Variant::Omega2 && n > 0 {
        1 << (n - 1)
    } else {
        1 << n
    }
}

struct Search<'a, T> {
    table: &'a CostTable<T>,
    prev: &'a [Option<usize>],
    best: T,
    best_order: Vec<usize>,
    prefix: Vec<usize>,
}

/// Minimizes `max_s Σ_{u≺w} cost(u,w,s)` over orders in which every vertex
/// comes after its `prev` twin. `init` must be an attainable (value, order).
pub(crate) fn min_over_orders<T: Cost>(
    table: &CostTable<T>,
    prev: &[Option<usize>],
    init: (T, Vec<usize>),
) -> (T, Vec<usize>) {
    let (n, sc) = (table.n, table.scenarios);
    if n <= 1 {
        return init;
    }
    let mut search = Search {
        table,
        prev,
        best: init.0,
        best_order: init.1,
        prefix: Vec::with_capacity(n),
    };
    let mut acc = vec![T::zero(); (n + 1) * sc];
    let mut rem = vec![T::zero(); (n + 1) * n * sc];
    for u in 0..n {
        for w in 0..n {
            if u != w {
                for (r, &c) in rem[u * sc..(u + 1) * sc].iter_mut().zip(table.pair(u, w)) {
                    *r += c;
                }
            }
        }
    }
    search.dfs(0, &mut acc, &mut rem);
    (search.best, search.best_order)
}

impl<T: Cost> Search<'_, T> {
    fn dfs(&mut self, placed: u64, acc: &mut [T], rem: &mut [T]) {
        let (n, sc) = (self.table.n, self.table.scenarios);
        let depth = placed.count_ones() as usize;
        let (acc_cur, acc_next) = acc.split_at_mut(sc);
        let (rem_cur, rem_next) = rem.split_at_mut(n * sc);

        let mut kids: Vec<(T, usize)> = Vec::with_capacity(n - depth);
        for u in 0..n {
            if (placed >> u) & 1 == 1 {
                continue;
            }
            if let Some(p) = self.prev[u] {
                if (placed >> p) & 1 == 0 {
                    continue;
                }
            }
            let r = &rem_cur[u * sc..(u + 1) * sc];
            let lb = max_of(acc_cur.iter().zip(r).map(|(&a, &b)| {
                let mut t = a;
                t += b;
                t
            }));
            if lb < self.best {
                kids.push((lb, u));
            }
        }
        kids.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));

        for (lb, u) in kids {
            if lb >= self.best {
                break;
            }
            self.prefix.push(u);
            if depth + 1 == n {
                self.best = lb;
                self.best_order = self.prefix.clone();
                self.prefix.pop();
                continue;
            }
            let child_acc = &mut acc_next[..sc];
            for ((c, &a), &r) in child_acc
                .iter_mut()
                .zip(acc_cur.iter())
                .zip(&rem_cur[u * sc..(u + 1) * sc])
            {
                *c = a;
                *c += r;
            }
            let child_rem = &mut rem_next[..n * sc];
            let placed_child = placed | (1 << u);
            for v in 0..n {
                if (placed_child >> v) & 1 == 1 {
                    continue;
                }
                let dst = &mut child_rem[v * sc..(v + 1) * sc];
                let src = &rem_cur[v * sc..(v + 1) * sc];
                for ((d, &s), &c) in dst.iter_mut().zip(src).zip(self.table.pair(v, u)) {
                    *d = s - c;
                }
            }
            self.dfs(placed_child, acc_next, rem_next);
            self.prefix.pop();
        }
    }
}

/// Branch and bound for `min_≺ max_A Ω₃` on a rows problem; values are
/// `ε·n²` keys.
pub(crate) fn min_over_orders_omega3(
    rows: &[u64],
    prev: &[Option<usize>],
    init: (i64, Vec<usize>),
) -> (i64, Vec<usize>) {
    let n = rows.len();
    if n <= 1 {
        return init;
    }
    let sc = 1usize << n;
    // gap[(u * n + w) * sc + s] = x_u(s) − x_w(s)
    let mut gap = vec![0i8; n * n * sc];
    for s in 0..sc {
        let x: Vec<i8> = rows.iter().map(|r| (r & s as u64).count_ones() as i8).collect();
        for u in 0..n {
            for w in 0..n {
                gap[(u * n + w) * sc + s] = x[u] - x[w];
            }
        }
    }
    let mut st = Omega3Search {
        n,
        sc,
        gap: &gap,
        prev,
        best: init.0,
        best_order: init.1,
        prefix: Vec::with_capacity(n),
    };
    let width = n + 1;
    let mut hist = vec![0i64; (n + 1) * sc * width];
    st.dfs(0, &mut hist);
    (st.best, st.best_order)
}

struct Omega3Search<'a> {
    n: usize,
    sc: usize,
    gap: &'a [i8],
    prev: &'a [Option<usize>],
    best: i64,
    best_order: Vec<usize>,
    prefix: Vec<usize>,
}

impl Omega3Search<'_> {
    fn dfs(&mut self, placed: u64, hist: &mut [i64]) {
        let (n, sc) = (self.n, self.sc);
        let width = n + 1;
        let depth = placed.count_ones() as usize;
        let (cur, next) = hist.split_at_mut(sc * width);
        let remaining: Vec<usize> = (0..n).filter(|&v| (placed >> v) & 1 == 0).collect();

        let mut kids: Vec<(i64, usize)> = Vec::new();
        let mut scratch = vec![0i64; width];
        for &u in &remaining {
            if let Some(p) = self.prev[u] {
                if (placed >> p) & 1 == 0 {
                    continue;
                }
            }
            let mut lb = 0i64;
            for s in 0..sc {
                scratch.copy_from_slice(&cur[s * width..(s + 1) * width]);
                for &w in &remaining {
                    let g = self.gap[(u * n + w) * sc + s];
                    if w != u && g > 0 {
                        scratch[g as usize] += 1;
                    }
                }
                lb = lb.max(omega3_key(&scratch, n));
                if lb >= self.best {
                    break;
                }
            }
            if lb < self.best {
                kids.push((lb, u));
            }
        }
        kids.sort_unstable();

        for (lb, u) in kids {
            if lb >= self.best {
                break;
            }
            self.prefix.push(u);
            if depth + 1 == n {
                self.best = lb;
                self.best_order = self.prefix.clone();
                self.prefix.pop();
                continue;
            }
            let child = &mut next[..sc * width];
            child.copy_from_slice(cur);
            for s in 0..sc {
                for &w in &remaining {
                    let g = self.gap[(u * n + w) * sc + s];
                    if w != u && g > 0 {
                        child[s * width + g as usize] += 1;
                    }
                }
            }
            self.dfs(placed | (1 << u), next);
            self.prefix.pop();
        }
    }
}
