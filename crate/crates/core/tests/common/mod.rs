//! Dense-matrix oracle for phased flip operators on a handful of edges, and
//! random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;

use dsemion::groundstate::SparseState;
use dsemion::lattice::{EdgeId, Patch};
use dsemion::pauli_ops::{DiagonalForm, PhasedXOperator};

pub type C = Complex<i64>;
/// Matrix entries; products of the unit-modulus monomial matrices used here
/// stay in `{0, +-1, +-i}`, and overflow checks are on in test builds.
pub type E = Complex<i8>;

/// Row-major `2^k x 2^k` matrix over the first `k` edges of `edges`; basis
/// index bit `i` is the occupation of `edges[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub dim: usize,
    pub data: Vec<E>,
}

fn i_pow(k: i64) -> E {
    [E::new(1, 0), E::new(0, 1), E::new(-1, 0), E::new(0, -1)][k.rem_euclid(4) as usize]
}

impl Dense {
    pub fn zeros(dim: usize) -> Self {
        Dense { dim, data: vec![E::new(0, 0); dim * dim] }
    }

    pub fn get(&self, r: usize, c: usize) -> E {
        self.data[r * self.dim + c]
    }

    /// `O|b> = i^{f(b)} |b xor x>` straight from the stored coefficients.
    pub fn from_op(op: &PhasedXOperator, edges: &[EdgeId]) -> Self {
        let k = edges.len();
        let pos = |e: &EdgeId| edges.iter().position(|x| x == e).expect("operator stays on the oracle edges");
        let x = op.xmask().iter().fold(0usize, |m, e| m | 1 << pos(e));
        let form = op.form();
        let linear: Vec<(usize, i64)> = form.linear().iter().map(|(e, c)| (pos(e), *c as i64)).collect();
        let quad: Vec<(usize, usize)> = form.quadratic().iter().map(|(a, b)| (pos(a), pos(b))).collect();
        let mut m = Dense::zeros(1 << k);
        for b in 0..1usize << k {
            let bit = |i: usize| (b >> i & 1) as i64;
            let f = form.constant().exponent() as i64
                + linear.iter().map(|&(i, c)| c * bit(i)).sum::<i64>()
                + quad.iter().map(|&(i, j)| 2 * bit(i) * bit(j)).sum::<i64>();
            m.data[(b ^ x) * m.dim + b] = i_pow(f);
        }
        m
    }

    pub fn mul(&self, rhs: &Dense) -> Dense {
        let n = self.dim;
        let zero = E::new(0, 0);
        // nonzero entries of each row of rhs
        let mut rows: Vec<Vec<(usize, E)>> = vec![Vec::new(); n];
        for (i, v) in rhs.data.iter().enumerate() {
            if *v != zero {
                rows[i / n].push((i % n, *v));
            }
        }
        let mut out = Dense::zeros(n);
        for r in 0..n {
            for t in 0..n {
                let a = self.data[r * n + t];
                if a == zero {
                    continue;
                }
                for &(c, b) in &rows[t] {
                    out.data[r * n + c] += a * b;
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Dense {
        let n = self.dim;
        let mut out = Dense::zeros(n);
        for (i, v) in self.data.iter().enumerate() {
            if *v != E::new(0, 0) {
                out.data[(i % n) * n + i / n] = v.conj();
            }
        }
        out
    }

    pub fn apply(&self, v: &[C]) -> Vec<C> {
        let n = self.dim;
        let widen = |e: E| C::new(e.re as i64, e.im as i64);
        (0..n).map(|r| (0..n).map(|c| widen(self.data[r * n + c]) * v[c]).sum()).collect()
    }
}

/// Dense amplitude vector of a sparse state living on the oracle edges,
/// which must be the first bits of the patch.
pub fn dense_vector(state: &SparseState, k: usize) -> Vec<C> {
    let mut v = vec![C::new(0, 0); 1 << k];
    for (&cfg, &a) in state.amplitudes() {
        assert!(cfg >> k == 0, "state leaves the oracle edges");
        v[cfg as usize] = a;
    }
    v
}

/// Patch whose first edges serve as oracle edges.
pub fn oracle_patch() -> Arc<Patch> {
    Arc::new(Patch::standard(2).unwrap())
}

pub fn random_op(rng: &mut impl Rng, edges: &[EdgeId]) -> PhasedXOperator {
    let k = edges.len();
    let xmask = edges.iter().filter(|_| rng.random_bool(0.5)).copied().collect();
    let mut form = DiagonalForm::zero();
    form.add_constant(rng.random_range(0..4));
    for e in edges {
        if rng.random_bool(0.6) {
            form.add_linear(*e, rng.random_range(1..4));
        }
    }
    for _ in 0..rng.random_range(0..=k) {
        let (a, b) = (rng.random_range(0..k), rng.random_range(0..k));
        if a != b {
            form.add_quadratic(edges[a], edges[b]);
        }
    }
    PhasedXOperator::new(xmask, form)
}

pub fn random_state(rng: &mut impl Rng, patch: &Arc<Patch>, k: usize) -> SparseState {
    let mut amps = HashMap::new();
    for _ in 0..rng.random_range(1..=8) {
        let cfg: u128 = rng.random_range(0..1u128 << k);
        amps.insert(cfg, C::new(rng.random_range(-3..=3), rng.random_range(-3..=3)));
    }
    amps.retain(|_, a| *a != C::new(0, 0));
    SparseState::from_parts(patch.clone(), amps, 0)
}

/// One oracle comparison of compose, adjoint, conjugation and apply on `k`
/// edges. Returns the name of the first disagreement.
pub fn oracle_case(rng: &mut impl Rng, patch: &Arc<Patch>, k: usize) -> Result<(), String> {
    let edges = &patch.edges()[..k];
    let a = random_op(rng, edges);
    let b = random_op(rng, edges);
    let (da, db) = (Dense::from_op(&a, edges), Dense::from_op(&b, edges));
    if Dense::from_op(&a.compose(&b), edges) != da.mul(&db) {
        return Err(format!("compose {a} * {b}"));
    }
    if Dense::from_op(&a.adjoint(), edges) != da.adjoint() {
        return Err(format!("adjoint {a}"));
    }
    if Dense::from_op(&a.conjugate_by(&b), edges) != db.mul(&da).mul(&db.adjoint()) {
        return Err(format!("conjugate {a} by {b}"));
    }
    let psi = random_state(rng, patch, k);
    let got = psi.apply(&a).map_err(|e| e.to_string())?;
    if dense_vector(&got, k) != da.apply(&dense_vector(&psi, k)) {
        return Err(format!("apply {a}"));
    }
    Ok(())
}
