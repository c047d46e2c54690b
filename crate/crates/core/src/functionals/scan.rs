//! Subset maximization engines. Everything here works in position space:
//! `rows[p]` is the neighbourhood of the vertex at position `p`, as a mask
//! over positions, and the order is the identity.

use rayon::prelude::*;

use super::Variant;
use crate::graph::iter_bits;

/// Bits fixed per parallel chunk in the exact scan.
const CHUNK_BITS: usize = 6;

#[inline]
fn pos(x: i64) -> i64 {
    x.max(0)
}

/// `ε·n²` for the smallest feasible `ε` given a histogram of positive gaps
/// (`hist[g]` = number of pairs with gap exactly `g`).
pub(crate) fn omega3_key(hist: &[i64], n: usize) -> i64 {
    let n = n as i64;
    let mut count: i64 = hist.iter().skip(1).sum();
    if count == 0 {
        return 0;
    }
    let mut lower = 0i64;
    for (g, &h) in hist.iter().enumerate().skip(1) {
        if h == 0 {
            continue;
        }
        let cand = count.max(lower);
        if cand < g as i64 * n {
            return cand;
        }
        count -= h;
        lower = g as i64 * n;
    }
    lower
}

/// Per-pair state of a scan: neighbour counts into the current subset and
/// the running objective pieces.
struct ScanState<'a> {
    rows: &'a [u64],
    n: usize,
    variant: Variant,
    x: Vec<i64>,
    deg: Vec<i64>,
    sum: i64,
    sum_c: i64,
    hist: Vec<i64>,
}

impl<'a> ScanState<'a> {
    fn new(rows: &'a [u64], variant: Variant, mask: u64) -> Self {
        let n = rows.len();
        let x: Vec<i64> = rows.iter().map(|r| (r & mask).count_ones() as i64).collect();
        let deg: Vec<i64> = rows.iter().map(|r| r.count_ones() as i64).collect();
        let mut st = ScanState {
            rows,
            n,
            variant,
            x,
            deg,
            sum: 0,
            sum_c: 0,
            hist: vec![0; n + 1],
        };
        for p in 0..n {
            for q in p + 1..n {
                let d = st.x[p] - st.x[q];
                match variant {
                    Variant::Omega0 => st.sum += pos(d + st.correction(p, q, mask)),
                    Variant::Omega1 => st.sum += pos(d),
                    Variant::Omega2 => {
                        st.sum += pos(d);
                        st.sum_c += pos(st.deg[p] - st.deg[q] - d);
                    }
                    Variant::Omega3 => {
                        if d > 0 {
                            st.hist[d as usize] += 1;
                        }
                    }
                }
            }
        }
        st
    }

    /// `a_pq([p∈A] − [q∈A])`, the term that removes `{p,q}` from `A`.
    #[inline]
    fn correction(&self, p: usize, q: usize, mask: u64) -> i64 {
        if (self.rows[p] >> q) & 1 == 0 {
            0
        } else {
            ((mask >> p) & 1) as i64 - ((mask >> q) & 1) as i64
        }
    }

    fn value(&self) -> i64 {
        match self.variant {
            Variant::Omega0 | Variant::Omega1 => self.sum,
            Variant::Omega2 => self.sum + self.sum_c,
            Variant::Omega3 => omega3_key(&self.hist, self.n),
        }
    }

    /// Toggles `z`; `mask` is the subset before the toggle.
    fn flip(&mut self, z: usize, mask: u64) {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let touched = self.rows[z];
        let delta: i64 = if (mask >> z) & 1 == 0 { 1 } else { -1 };
        let mut others = !touched & full;
        if self.variant == Variant::Omega0 {
            others &= !(1u64 << z);
        }
        for i in iter_bits(std::slice::from_ref(&touched)) {
            if self.variant == Variant::Omega0 && i == z {
                continue;
            }
            for j in iter_bits(std::slice::from_ref(&others)) {
                let (p, q, step) = if i < j { (i, j, delta) } else { (j, i, -delta) };
                let d = self.x[p] - self.x[q];
                let nd = d + step;
                match self.variant {
                    Variant::Omega0 => {
                        let c = self.correction(p, q, mask);
                        self.sum += pos(nd + c) - pos(d + c);
                    }
                    Variant::Omega1 => self.sum += pos(nd) - pos(d),
                    Variant::Omega2 => {
                        let dd = self.deg[p] - self.deg[q];
                        self.sum += pos(nd) - pos(d);
                        self.sum_c += pos(dd - nd) - pos(dd - d);
                    }
                    Variant::Omega3 => {
                        if d > 0 {
                            self.hist[d as usize] -= 1;
                        }
                        if nd > 0 {
                            self.hist[nd as usize] += 1;
                        }
                    }
                }
            }
        }
        for i in iter_bits(std::slice::from_ref(&touched)) {
            self.x[i] += delta;
        }
    }
}

#[inline]
fn better(a: (i64, u64), b: (i64, u64)) -> (i64, u64) {
    if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
        a
    } else {
        b
    }
}

fn scan_chunk(rows: &[u64], variant: Variant, low_bits: usize, base: u64) -> (i64, u64) {
    let mut st = ScanState::new(rows, variant, base);
    let mut mask = base;
    let mut best = (st.value(), mask);
    for k in 1u64..(1u64 << low_bits) {
        let z = k.trailing_zeros() as usize;
        st.flip(z, mask);
        mask ^= 1 << z;
        best = better((st.value(), mask), best);
    }
    best
}

/// Exact maximum over all subsets. Returns the objective (numerator over
/// `n³`, or `ε·n²` for `Omega3`) and the smallest maximizing mask.
pub(crate) fn exact_max(rows: &[u64], variant: Variant) -> (i64, u64) {
    let n = rows.len();
    if n == 0 {
        return (0, 0);
    }
    // Ω₂ is invariant under complementing A; keep the top bit clear.
    let free = if variant == Variant::Omega2 { n - 1 } else { n };
    let high = if free > 12 { CHUNK_BITS } else { 0 };
    let low = free - high;
    (0u64..(1u64 << high))
        .into_par_iter()
        .map(|h| scan_chunk(rows, variant, low, h << low))
        .reduce(|| (i64::MIN, u64::MAX), better)
}

#[cfg(test)]
/// Objective at one subset, position space.
pub(crate) fn value_at_mask(rows: &[u64], variant: Variant, mask: u64) -> i64 {
    ScanState::new(rows, variant, mask).value()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(rows: &[u64], variant: Variant) -> (i64, u64) {
        let n = rows.len();
        let mut best = (i64::MIN, u64::MAX);
        for m in 0u64..(1 << n) {
            best = better((value_at_mask(rows, variant, m), m), best);
        }
        best
    }

    #[test]
    fn key_examples() {
        // no positive gaps
        assert_eq!(omega3_key(&[0, 0, 0], 2), 0);
        // one pair with gap 1, n = 2: count 1 < 1·2, so ε·n² = 1
        assert_eq!(omega3_key(&[0, 1, 0], 2), 1);
        // n = 3, three pairs with gap 1: 3 ≥ 3, so ε = 1/3 → key 3
        assert_eq!(omega3_key(&[0, 3, 0, 0], 3), 3);
    }

    #[test]
    fn gray_scan_matches_direct_evaluation() {
        let rows5 = [0b00110u64, 0b11001, 0b01001, 0b00110, 0b00010];
        for variant in [Variant::Omega0, Variant::Omega1, Variant::Omega2, Variant::Omega3] {
            let (v, m) = exact_max(&rows5, variant);
            let (bv, _) = brute(&rows5, variant);
            assert_eq!(v, bv, "{variant:?}");
            assert_eq!(value_at_mask(&rows5, variant, m), v);
        }
    }

    #[test]
    fn chunked_scan_matches_brute_force() {
        // 14 vertices so that the chunked path is used
        let n = 14;
        let mut rows = vec![0u64; n];
        let mut seed = 0x9e3779b97f4a7c15u64;
        for u in 0..n {
            for v in u + 1..n {
                seed ^= seed << 13;
                seed ^= seed >> 7;
                seed ^= seed << 17;
                if seed & 1 == 1 {
                    rows[u] |= 1 << v;
                    rows[v] |= 1 << u;
                }
            }
        }
        for variant in [Variant::Omega0, Variant::Omega1, Variant::Omega2, Variant::Omega3] {
            assert_eq!(exact_max(&rows, variant), brute(&rows, variant), "{variant:?}");
        }
    }
}
