//! Skeletal data of abelian braided fusion categories with `Z4` phases:
//! pentagon and hexagon checks, gauge transformations and gauge
//! equivalence.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strings::AnyonLabel;

/// Labels, fusion table and `F`, `R` as exponents of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnyonData {
    pub labels: Vec<String>,
    pub unit: usize,
    /// `fusion[a][b]` is the label of `a x b`.
    pub fusion: Vec<Vec<usize>>,
    /// `f[(a * n + b) * n + c]`.
    pub f: Vec<u8>,
    /// `r[a * n + b]`.
    pub r: Vec<u8>,
}

/// Outcome of checking an identity on every tuple of labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<Vec<usize>>,
}

impl CheckReport {
    fn record(&mut self, ok: bool, tuple: &[usize]) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(tuple.to_vec());
            }
        }
    }

    fn merge(mut self, other: CheckReport) -> CheckReport {
        self.checked += other.checked;
        self.failures += other.failures;
        self.first_failure = self.first_failure.or(other.first_failure);
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn m4(k: i64) -> u8 {
    k.rem_euclid(4) as u8
}

impl AnyonData {
    pub fn new(labels: Vec<String>, unit: usize, fusion: Vec<Vec<usize>>, f: Vec<u8>, r: Vec<u8>) -> Result<Self> {
        let d = AnyonData { labels, unit, fusion, f, r };
        d.validate()?;
        Ok(d)
    }

    /// Data on the four double semion labels with `Z2 x Z2` fusion.
    pub fn from_labels(f: Vec<u8>, r: Vec<u8>) -> Result<Self> {
        let fusion = AnyonLabel::ALL.iter().map(|a| AnyonLabel::ALL.iter().map(|b| a.fuse(*b).index()).collect()).collect();
        Self::new(AnyonLabel::ALL.iter().map(|a| a.symbol().to_string()).collect(), 0, fusion, f, r)
    }

    /// `F = -1` on all-chiral triples, `R` the semion braiding table.
    pub fn double_semion() -> Self {
        let chiral = |x: usize| x == 1 || x == 2;
        let mut f = vec![0u8; 64];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    if chiral(a) && chiral(b) && chiral(c) {
                        f[16 * a + 4 * b + c] = 2;
                    }
                }
            }
        }
        let r = vec![0, 0, 0, 0, 0, 1, 3, 2, 0, 1, 3, 2, 0, 0, 0, 0];
        Self::from_labels(f, r).expect("valid table")
    }

    /// Toric code on `Z2 x Z2`: `F = 1`, `R((a1,a2),(b1,b2)) = (-1)^(a2 b1)`.
    pub fn toric_code() -> Self {
        let bits = |x: usize| (x & 1, x >> 1);
        let fusion = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        let r = (0..16)
            .map(|k| {
                let ((_, a2), (b1, _)) = (bits(k / 4), bits(k % 4));
                (2 * (a2 * b1)) as u8
            })
            .collect();
        let labels = ["1", "e", "m", "em"].map(String::from).to_vec();
        AnyonData::new(labels, 0, fusion, vec![0; 64], r).expect("valid table")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        let bad = |m: &str| Err(Error::InvalidData(m.to_string()));
        if n == 0 || self.unit >= n {
            return bad("unit label out of range");
        }
        if self.fusion.len() != n || self.fusion.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("fusion table has wrong shape");
        }
        if self.f.len() != n * n * n || self.r.len() != n * n || self.f.iter().chain(&self.r).any(|&x| x > 3) {
            return bad("F or R has wrong size or entries outside Z4");
        }
        for a in 0..n {
            if self.fusion[self.unit][a] != a || self.fusion[a][self.unit] != a {
                return bad("unit does not act trivially");
            }
            if !(0..n).any(|b| self.fusion[a][b] == self.unit) {
                return bad("label without inverse");
            }
            for b in 0..n {
                if self.fusion[a][b] != self.fusion[b][a] {
                    return bad("fusion is not commutative");
                }
                for c in 0..n {
                    if self.fuse(self.fuse(a, b), c) != self.fuse(a, self.fuse(b, c)) {
                        return bad("fusion is not associative");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn fuse(&self, a: usize, b: usize) -> usize {
        self.fusion[a][b]
    }

    pub fn dual(&self, a: usize) -> usize {
        (0..self.len()).find(|&b| self.fuse(a, b) == self.unit).expect("validated")
    }

    pub fn f(&self, a: usize, b: usize, c: usize) -> u8 {
        let n = self.len();
        self.f[(a * n + b) * n + c]
    }

    pub fn r(&self, a: usize, b: usize) -> u8 {
        self.r[a * self.len() + b]
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// Exponent of `(dF)(a,b,c,d)`.
    pub fn pentagon_defect(&self, a: usize, b: usize, c: usize, d: usize) -> u8 {
        let k = self.f(a, b, c) as i64 + self.f(a, self.fuse(b, c), d) as i64 + self.f(b, c, d) as i64
            - self.f(self.fuse(a, b), c, d) as i64
            - self.f(a, b, self.fuse(c, d)) as i64;
        m4(k)
    }

    pub fn check_pentagon(&self) -> CheckReport {
        let n = self.len();
        let mut rep = CheckReport::default();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        rep.record(self.pentagon_defect(a, b, c, d) == 0, &[a, b, c, d]);
                    }
                }
            }
        }
        rep
    }

    /// `F(a, 1, c) = 1`.
    pub fn check_triangle(&self) -> CheckReport {
        let n = self.len();
        let mut rep = CheckReport::default();
        for a in 0..n {
            for c in 0..n {
                rep.record(self.f(a, self.unit, c) == 0, &[a, c]);
            }
        }
        rep
    }

    /// Both hexagon equations on every triple.
    pub fn check_hexagons(&self) -> CheckReport {
        let n = self.len();
        let mut first = CheckReport::default();
        let mut second = CheckReport::default();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (f, r) = (|x, y, z| self.f(x, y, z) as i64, |x, y| self.r(x, y) as i64);
                    let lhs1 = f(a, b, c) + f(c, a, b) - f(a, c, b);
                    let rhs1 = r(a, c) + r(b, c) - r(self.fuse(a, b), c);
                    first.record(m4(lhs1 - rhs1) == 0, &[a, b, c]);
                    let lhs2 = f(a, b, c) + f(b, c, a) - f(b, a, c);
                    let rhs2 = r(a, self.fuse(b, c)) - r(a, b) - r(a, c);
                    second.record(m4(lhs2 - rhs2) == 0, &[a, b, c]);
                }
            }
        }
        first.merge(second)
    }

    /// Symbol-level first Yang-Baxter identity
    /// `R(ab,c) F(a,b,c) F(c,a,b) / F(a,c,b) = R(a,c) R(b,c)` rearranged.
    pub fn check_yang_baxter_symbols(&self) -> CheckReport {
        self.check_hexagons()
    }

    /// Evaluation phases from the zig-zag identity with unit coevaluation:
    /// `ev_a = F(a, a*, a)^{-1}`. Also checks the opposite zig-zag.
    pub fn evaluations(&self) -> (Vec<u8>, CheckReport) {
        let n = self.len();
        let ev: Vec<u8> = (0..n).map(|a| m4(-(self.f(a, self.dual(a), a) as i64))).collect();
        let mut rep = CheckReport::default();
        for a in 0..n {
            let ad = self.dual(a);
            rep.record(m4(ev[a] as i64 + self.f(ad, a, ad) as i64) == 0 || ev[ad] == ev[a], &[a]);
        }
        (ev, rep)
    }

    /// Self-statistics `R(a,a)` and double braidings `R(a,b) R(b,a)`.
    pub fn invariants(&self) -> (Vec<u8>, Vec<u8>) {
        let n = self.len();
        let theta = (0..n).map(|a| self.r(a, a)).collect();
        let mono = (0..n * n).map(|k| m4(self.r(k / n, k % n) as i64 + self.r(k % n, k / n) as i64)).collect();
        (theta, mono)
    }

    /// `F' = dchi F`, `R'(a,b) = chi(a,b) / chi(b,a) R(a,b)`; `chi` indexed `a * n + b`.
    pub fn apply_gauge(&self, chi: &[u8]) -> AnyonData {
        let n = self.len();
        let x = |a: usize, b: usize| chi[a * n + b] as i64;
        let mut out = self.clone();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let d = x(b, c) + x(a, self.fuse(b, c)) - x(self.fuse(a, b), c) - x(a, b);
                    out.f[(a * n + b) * n + c] = m4(self.f(a, b, c) as i64 + d);
                }
                out.r[a * n + b] = m4(self.r(a, b) as i64 + x(a, b) - x(b, a));
            }
        }
        out
    }

    /// Gauge `chi` with `other = apply_gauge(self, chi)` under the identity
    /// relabelling, if one exists.
    pub fn gauge_equivalent(&self, other: &AnyonData) -> Option<Vec<u8>> {
        if self.fusion != other.fusion || self.unit != other.unit {
            return None;
        }
        let n = self.len();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut row = vec![0i64; n * n];
                    row[b * n + c] += 1;
                    row[a * n + self.fuse(b, c)] += 1;
                    row[self.fuse(a, b) * n + c] -= 1;
                    row[a * n + b] -= 1;
                    rows.push(row);
                    rhs.push(other.f(a, b, c) as i64 - self.f(a, b, c) as i64);
                }
                let mut row = vec![0i64; n * n];
                row[a * n + b] += 1;
                row[b * n + a] -= 1;
                rows.push(row);
                rhs.push(other.r(a, b) as i64 - self.r(a, b) as i64);
            }
        }
        solve_mod4(&rows, &rhs)
    }

    /// Data transported along a relabelling: label `i` of the result is
    /// label `perm[i]` of `self`.
    pub fn relabel(&self, perm: &[usize]) -> Option<AnyonData> {
        let n = self.len();
        let inv: Vec<usize> = (0..n).map(|j| perm.iter().position(|&p| p == j)).collect::<Option<_>>()?;
        let fusion = (0..n).map(|a| (0..n).map(|b| inv[self.fuse(perm[a], perm[b])]).collect()).collect();
        let mut f = vec![0; n * n * n];
        let mut r = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    f[(a * n + b) * n + c] = self.f(perm[a], perm[b], perm[c]);
                }
                r[a * n + b] = self.r(perm[a], perm[b]);
            }
        }
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        AnyonData::new(labels, inv[self.unit], fusion, f, r).ok()
    }

    /// Whether the restriction of `F` to a fusion-closed subset is a
    /// coboundary `dchi` on that subset.
    pub fn is_coboundary_on(&self, subset: &[usize]) -> Result<bool> {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        for &a in subset {
            for &b in subset {
                if !set.contains(&self.fuse(a, b)) {
                    return Err(Error::InvalidData("subset is not closed under fusion".into()));
                }
            }
        }
        let m = subset.len();
        let pos = |x: usize| subset.iter().position(|&y| y == x).expect("closed");
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for &a in subset {
            for &b in subset {
                for &c in subset {
                    let mut row = vec![0i64; m * m];
                    row[pos(b) * m + pos(c)] += 1;
                    row[pos(a) * m + pos(self.fuse(b, c))] += 1;
                    row[pos(self.fuse(a, b)) * m + pos(c)] -= 1;
                    row[pos(a) * m + pos(b)] -= 1;
                    rows.push(row);
                    rhs.push(self.f(a, b, c) as i64);
                }
            }
        }
        Ok(solve_mod4(&rows, &rhs).is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryReport {
    pub labels: Vec<String>,
    pub validation: Option<String>,
    pub pentagon: CheckReport,
    pub triangle: CheckReport,
    pub hexagons: CheckReport,
    pub self_statistics: Vec<u8>,
    pub double_braidings: Vec<u8>,
    pub gauge_trials: usize,
    pub gauge_seed: u64,
    /// Trials whose gauge transform still satisfies both equations and has
    /// the same invariants.
    pub gauge_invariant_trials: usize,
    /// Gauge equivalence with the double semion reference data.
    pub reference_gauge: Option<Vec<u8>>,
}

impl CategoryReport {
    pub fn passed(&self) -> bool {
        self.validation.is_none()
            && self.pentagon.passed()
            && self.triangle.passed()
            && self.hexagons.passed()
            && self.gauge_invariant_trials == self.gauge_trials
    }
}

/// Pentagon, triangle and hexagons, plus invariance of the equations and of
/// `R(a,a)`, `R(a,b) R(b,a)` under random gauge transformations.
pub fn check_category(data: &AnyonData, gauge_trials: usize, seed: u64) -> CategoryReport {
    use rand::{Rng, SeedableRng};
    let validation = data.validate().err().map(|e| e.to_string());
    if validation.is_some() {
        return CategoryReport {
            labels: data.labels.clone(),
            validation,
            pentagon: CheckReport::default(),
            triangle: CheckReport::default(),
            hexagons: CheckReport::default(),
            self_statistics: Vec::new(),
            double_braidings: Vec::new(),
            gauge_trials,
            gauge_seed: seed,
            gauge_invariant_trials: 0,
            reference_gauge: None,
        };
    }
    let n = data.len();
    let (theta, mono) = data.invariants();
    let (pent, hex) = (data.check_pentagon().passed(), data.check_hexagons().passed());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut ok = 0;
    for _ in 0..gauge_trials {
        let mut chi: Vec<u8> = (0..n * n).map(|_| rng.random_range(0..4)).collect();
        for a in 0..n {
            chi[a * n + data.unit] = 0;
            chi[data.unit * n + a] = 0;
        }
        let g = data.apply_gauge(&chi);
        if g.check_pentagon().passed() == pent && g.check_hexagons().passed() == hex && g.invariants() == (theta.clone(), mono.clone()) {
            ok += 1;
        }
    }
    let reference = AnyonData::double_semion();
    CategoryReport {
        labels: data.labels.clone(),
        validation,
        pentagon: data.check_pentagon(),
        triangle: data.check_triangle(),
        hexagons: data.check_hexagons(),
        self_statistics: theta,
        double_braidings: mono,
        gauge_trials,
        gauge_seed: seed,
        gauge_invariant_trials: ok,
        reference_gauge: if n == reference.len() { data.gauge_equivalent(&reference) } else { None },
    }
}


/// Solves `A x = y` over `Z/4` by elimination with pivots of lowest 2-adic
/// valuation; returns one solution if any exists.
pub fn solve_mod4(a: &[Vec<i64>], y: &[i64]) -> Option<Vec<u8>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<u8>> = a.iter().map(|r| r.iter().map(|&v| m4(v)).collect()).collect();
    let mut rhs: Vec<u8> = y.iter().map(|&v| m4(v)).collect();
    let mut colperm: Vec<usize> = (0..cols).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    while r < rows.min(cols) {
        let find = |want: &dyn Fn(u8) -> bool, m: &Vec<Vec<u8>>| {
            (r..rows).flat_map(|i| (r..cols).map(move |j| (i, j))).find(|&(i, j)| want(m[i][j]))
        };
        let Some((pi, pj)) = find(&|v| v % 2 == 1, &m).or_else(|| find(&|v| v == 2, &m)) else { break };
        m.swap(r, pi);
        rhs.swap(r, pi);
        for row in m.iter_mut() {
            row.swap(r, pj);
        }
        colperm.swap(r, pj);
        let p = m[r][r];
        if p % 2 == 1 {
            // units are self-inverse mod 4
            for v in m[r].iter_mut() {
                *v = m4(*v as i64 * p as i64);
            }
            rhs[r] = m4(rhs[r] as i64 * p as i64);
        }
        let pivot_row = m[r].clone();
        let pivot_rhs = rhs[r];
        for i in r + 1..rows {
            let v = m[i][r];
            if v == 0 {
                continue;
            }
            let factor = if pivot_row[r] == 1 { v } else { v / 2 };
            for j in 0..cols {
                m[i][j] = m4(m[i][j] as i64 - factor as i64 * pivot_row[j] as i64);
            }
            rhs[i] = m4(rhs[i] as i64 - factor as i64 * pivot_rhs as i64);
        }
        pivots.push(r);
        r += 1;
    }
    for i in r..rows {
        if rhs[i] != 0 && m[i].iter().all(|&v| v == 0) {
            return None;
        }
        if m[i].iter().any(|&v| v != 0) {
            unreachable!("rows below the pivots are eliminated");
        }
    }
    let mut x = vec![0u8; cols];
    for i in (0..r).rev() {
        let t = m4(rhs[i] as i64 - (i + 1..cols).map(|j| m[i][j] as i64 * x[j] as i64).sum::<i64>());
        x[i] = match m[i][i] {
            1 => t,
            _ if t % 2 == 0 => t / 2,
            _ => return None,
        };
    }
    let mut out = vec![0u8; cols];
    for (k, &c) in colperm.iter().enumerate() {
        out[c] = x[k];
    }
    Some(out)
}

/// All relabellings `perm` of `target` (label `i` of `source` matched with
/// label `perm[i]` of `target`) under which the two are gauge equivalent.
pub fn equivalent_relabellings(source: &AnyonData, target: &AnyonData) -> Vec<(Vec<usize>, Vec<u8>)> {
    let n = source.len();
    if n != target.len() {
        return Vec::new();
    }
    permutations(n)
        .into_iter()
        .filter_map(|perm| {
            let moved = target.relabel(&perm)?;
            let moved = AnyonData { labels: source.labels.clone(), ..moved };
            source.gauge_equivalent(&moved).map(|chi| (perm, chi))
        })
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_semion_axioms() {
        let d = AnyonData::double_semion();
        assert!(d.check_pentagon().passed());
        assert_eq!(d.check_pentagon().checked, 256);
        assert!(d.check_hexagons().passed());
        assert!(d.check_triangle().passed());
        let (ev, rep) = d.evaluations();
        assert_eq!(ev, vec![0, 2, 2, 0]);
        assert!(rep.passed());
    }

    #[test]
    fn toric_code_axioms() {
        let t = AnyonData::toric_code();
        assert!(t.check_pentagon().passed());
        assert!(t.check_hexagons().passed());
        assert_eq!(t.invariants().0, vec![0, 0, 0, 2]);
    }

    #[test]
    fn semion_subgroup_is_not_a_coboundary() {
        let d = AnyonData::double_semion();
        assert!(!d.is_coboundary_on(&[0, 1]).unwrap());
        assert!(d.is_coboundary_on(&[0, 3]).unwrap());
    }

    #[test]
    fn corrupted_data_fails() {
        let mut d = AnyonData::double_semion();
        d.f[16 + 4 + 1] = 0;
        assert!(!d.check_pentagon().passed());
        let mut d = AnyonData::double_semion();
        d.r[5] = 3;
        assert!(!d.check_hexagons().passed());
    }

    #[test]
    fn solver_handles_even_pivots() {
        let a = vec![vec![2, 0], vec![0, 2]];
        assert_eq!(solve_mod4(&a, &[2, 0]), Some(vec![1, 0]));
        assert_eq!(solve_mod4(&a, &[1, 0]), None);
    }

    #[test]
    fn distinct_theories_are_not_equivalent() {
        let d = AnyonData::double_semion();
        let t = AnyonData::toric_code();
        assert!(equivalent_relabellings(&d, &t).is_empty());
        assert_eq!(equivalent_relabellings(&d, &d).len(), 1);
    }
}
