//! Phased X operators `O |b> = i^{f(b)} |b xor x>` where `f` is a quadratic
//! form modulo 4 with even off-diagonal coefficients.
//!
//! The representation is canonical, so structural equality is operator
//! equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{EdgeId, Patch};

/// Power of `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn new(k: i64) -> Self {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn conj(self) -> Self {
        Phase::new(-(self.0 as i64))
    }

    pub fn to_complex(self) -> Complex<i64> {
        match self.0 {
            0 => Complex::new(1, 0),
            1 => Complex::new(0, 1),
            2 => Complex::new(-1, 0),
            _ => Complex::new(0, -1),
        }
    }

    pub fn to_exact(self) -> Exact {
        let c = self.to_complex();
        Complex::new(Ratio::from_integer(c.re), Ratio::from_integer(c.im))
    }

    pub fn from_complex(c: Complex<i64>) -> Option<Self> {
        (0..4).map(Phase).find(|p| p.to_complex() == c)
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

/// Exact complex rational scalar.
pub type Exact = Complex<Ratio<i64>>;

pub fn exact(re: i64, im: i64) -> Exact {
    Complex::new(Ratio::from_integer(re), Ratio::from_integer(im))
}

pub fn exact_ratio(num: i64, den: i64) -> Exact {
    Complex::new(Ratio::new(num, den), Ratio::zero())
}

/// `c0 + sum_j c_j b_j + 2 sum_{j<k} b_j b_k` modulo 4.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiagonalForm {
    constant: Phase,
    linear: BTreeMap<EdgeId, u8>,
    quadratic: BTreeSet<(EdgeId, EdgeId)>,
}

impl DiagonalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant_form(p: Phase) -> Self {
        DiagonalForm { constant: p, ..Self::default() }
    }

    pub fn constant(&self) -> Phase {
        self.constant
    }

    pub fn linear(&self) -> &BTreeMap<EdgeId, u8> {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeSet<(EdgeId, EdgeId)> {
        &self.quadratic
    }

    pub fn add_constant(&mut self, k: i64) {
        self.constant = Phase::new(self.constant.0 as i64 + k);
    }

    pub fn add_linear(&mut self, e: EdgeId, c: i64) {
        let entry = self.linear.entry(e).or_insert(0);
        *entry = (*entry as i64 + c).rem_euclid(4) as u8;
        if *entry == 0 {
            self.linear.remove(&e);
        }
    }

    /// Adds `2 b_a b_b`; on a repeated edge this is `2 b_a`.
    pub fn add_quadratic(&mut self, a: EdgeId, b: EdgeId) {
        if a == b {
            self.add_linear(a, 2);
            return;
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if !self.quadratic.remove(&key) {
            self.quadratic.insert(key);
        }
    }

    pub fn is_constant(&self) -> bool {
        self.linear.is_empty() && self.quadratic.is_empty()
    }

    pub fn eval(&self, occupied: impl Fn(EdgeId) -> bool) -> Phase {
        let mut k = self.constant.0 as i64;
        for (&e, &c) in &self.linear {
            if occupied(e) {
                k += c as i64;
            }
        }
        for &(a, b) in &self.quadratic {
            if occupied(a) && occupied(b) {
                k += 2;
            }
        }
        Phase::new(k)
    }

    /// `g(b) = f(b xor x)`.
    pub fn flip(&self, x: &BTreeSet<EdgeId>) -> DiagonalForm {
        let mut out = DiagonalForm::constant_form(self.constant);
        for (&e, &c) in &self.linear {
            if x.contains(&e) {
                out.add_constant(c as i64);
                out.add_linear(e, -(c as i64));
            } else {
                out.add_linear(e, c as i64);
            }
        }
        for &(a, b) in &self.quadratic {
            out.add_quadratic(a, b);
            let (fa, fb) = (x.contains(&a), x.contains(&b));
            if fa {
                out.add_linear(b, 2);
            }
            if fb {
                out.add_linear(a, 2);
            }
            if fa && fb {
                out.add_constant(2);
            }
        }
        out
    }

    pub fn negate(&self) -> DiagonalForm {
        let mut out = DiagonalForm::constant_form(self.constant.conj());
        for (&e, &c) in &self.linear {
            out.add_linear(e, -(c as i64));
        }
        out.quadratic = self.quadratic.clone();
        out
    }

    pub fn support(&self) -> BTreeSet<EdgeId> {
        let mut s: BTreeSet<EdgeId> = self.linear.keys().copied().collect();
        for &(a, b) in &self.quadratic {
            s.insert(a);
            s.insert(b);
        }
        s
    }

    /// Form with all edges in `frozen` set to unoccupied.
    pub fn restrict_unoccupied(&self, frozen: &BTreeSet<EdgeId>) -> DiagonalForm {
        let mut out = DiagonalForm::constant_form(self.constant);
        for (&e, &c) in &self.linear {
            if !frozen.contains(&e) {
                out.add_linear(e, c as i64);
            }
        }
        for &(a, b) in &self.quadratic {
            if !frozen.contains(&a) && !frozen.contains(&b) {
                out.add_quadratic(a, b);
            }
        }
        out
    }
}

impl Add for &DiagonalForm {
    type Output = DiagonalForm;
    fn add(self, rhs: &DiagonalForm) -> DiagonalForm {
        let mut out = self.clone();
        out.add_constant(rhs.constant.0 as i64);
        for (&e, &c) in &rhs.linear {
            out.add_linear(e, c as i64);
        }
        for &(a, b) in &rhs.quadratic {
            out.add_quadratic(a, b);
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PhasedXOperator {
    xmask: BTreeSet<EdgeId>,
    form: DiagonalForm,
}

impl PhasedXOperator {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(xmask: BTreeSet<EdgeId>, form: DiagonalForm) -> Self {
        PhasedXOperator { xmask, form }
    }

    pub fn scalar(p: Phase) -> Self {
        Self::new(BTreeSet::new(), DiagonalForm::constant_form(p))
    }

    pub fn diagonal(form: DiagonalForm) -> Self {
        Self::new(BTreeSet::new(), form)
    }

    pub fn x<I: IntoIterator<Item = EdgeId>>(edges: I) -> Self {
        let mut xmask = BTreeSet::new();
        for e in edges {
            if !xmask.remove(&e) {
                xmask.insert(e);
            }
        }
        Self::new(xmask, DiagonalForm::zero())
    }

    pub fn z<I: IntoIterator<Item = EdgeId>>(edges: I) -> Self {
        let mut form = DiagonalForm::zero();
        for e in edges {
            form.add_linear(e, 2);
        }
        Self::diagonal(form)
    }

    pub fn xmask(&self) -> &BTreeSet<EdgeId> {
        &self.xmask
    }

    pub fn form(&self) -> &DiagonalForm {
        &self.form
    }

    pub fn support(&self) -> BTreeSet<EdgeId> {
        let mut s = self.form.support();
        s.extend(self.xmask.iter().copied());
        s
    }

    pub fn is_diagonal(&self) -> bool {
        self.xmask.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.xmask.is_empty() && self.form == DiagonalForm::zero()
    }

    /// `Some(p)` when the operator is `p` times the identity.
    pub fn as_scalar(&self) -> Option<Phase> {
        (self.xmask.is_empty() && self.form.is_constant()).then_some(self.form.constant)
    }

    /// `self * rhs`, so `rhs` acts first.
    pub fn compose(&self, rhs: &PhasedXOperator) -> PhasedXOperator {
        let xmask = self.xmask.symmetric_difference(&rhs.xmask).copied().collect();
        let form = &rhs.form + &self.form.flip(&rhs.xmask);
        PhasedXOperator { xmask, form }
    }

    pub fn adjoint(&self) -> PhasedXOperator {
        PhasedXOperator { xmask: self.xmask.clone(), form: self.form.flip(&self.xmask).negate() }
    }

    /// `u * self * u^dagger`.
    pub fn conjugate_by(&self, u: &PhasedXOperator) -> PhasedXOperator {
        u.compose(self).compose(&u.adjoint())
    }

    pub fn times_phase(&self, p: Phase) -> PhasedXOperator {
        let mut out = self.clone();
        out.form.add_constant(p.0 as i64);
        out
    }

    /// `Some(k)` with `self = k * other`.
    pub fn proportionality(&self, other: &PhasedXOperator) -> Option<Phase> {
        let ratio = self.compose(&other.adjoint());
        ratio.as_scalar()
    }

    /// `Some(k)` with `self * other^dagger = k * D` where `D` is diagonal,
    /// supported on `frozen` and has unit constant term, so that the two agree
    /// up to `k` on every state with the frozen edges unoccupied.
    pub fn proportionality_mod_frozen(
        &self,
        other: &PhasedXOperator,
        frozen: &BTreeSet<EdgeId>,
    ) -> Option<Phase> {
        let ratio = self.compose(&other.adjoint());
        if !ratio.xmask.is_empty() {
            return None;
        }
        let rest = ratio.form.restrict_unoccupied(frozen);
        rest.is_constant().then_some(rest.constant)
    }

    /// Drops diagonal terms on `frozen`, i.e. evaluates them at zero occupation.
    pub fn restrict_unoccupied(&self, frozen: &BTreeSet<EdgeId>) -> PhasedXOperator {
        PhasedXOperator { xmask: self.xmask.clone(), form: self.form.restrict_unoccupied(frozen) }
    }

    /// Basis image: returns `(phase, image config)` on an explicit edge set.
    pub fn act(&self, occupied: &BTreeSet<EdgeId>) -> (Phase, BTreeSet<EdgeId>) {
        let phase = self.form.eval(|e| occupied.contains(&e));
        (phase, occupied.symmetric_difference(&self.xmask).copied().collect())
    }

    pub fn commutes_with(&self, other: &PhasedXOperator) -> bool {
        self.compose(other) == other.compose(self)
    }

    pub fn compile(&self, patch: &Patch) -> Result<CompiledOperator> {
        CompiledOperator::new(self, patch)
    }
}

impl Mul for &PhasedXOperator {
    type Output = PhasedXOperator;
    fn mul(self, rhs: &PhasedXOperator) -> PhasedXOperator {
        self.compose(rhs)
    }
}

impl fmt::Display for PhasedXOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form.constant)?;
        for e in &self.xmask {
            write!(f, " X[{e}]")?;
        }
        for (e, c) in &self.form.linear {
            write!(f, " i^({c} b[{e}])")?;
        }
        for (a, b) in &self.form.quadratic {
            write!(f, " (-1)^(b[{a}] b[{b}])")?;
        }
        Ok(())
    }
}

/// Bitmask form of an operator on a patch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledOperator {
    pub xmask: u128,
    pub constant: u8,
    /// Masks of edges with linear coefficient 1, 2 and 3.
    pub linear: [u128; 3],
    pub pairs: Vec<u128>,
}

impl CompiledOperator {
    pub fn new(op: &PhasedXOperator, patch: &Patch) -> Result<Self> {
        let xmask = patch.mask(op.xmask.iter())?;
        let mut linear = [0u128; 3];
        for (&e, &c) in &op.form.linear {
            linear[c as usize - 1] |= patch.bit(e)?;
        }
        let pairs = op
            .form
            .quadratic
            .iter()
            .map(|(a, b)| Ok(patch.bit(*a)? | patch.bit(*b)?))
            .collect::<Result<_>>()?;
        Ok(CompiledOperator { xmask, constant: op.form.constant.0, linear, pairs })
    }

    pub fn phase(&self, b: u128) -> u8 {
        let mut k = self.constant as u32
            + (b & self.linear[0]).count_ones()
            + 2 * (b & self.linear[1]).count_ones()
            + 3 * (b & self.linear[2]).count_ones();
        for &p in &self.pairs {
            if b & p == p {
                k += 2;
            }
        }
        (k % 4) as u8
    }

    pub fn apply(&self, b: u128) -> (u8, u128) {
        (self.phase(b), b ^ self.xmask)
    }
}

/// Linear combination of phased X operators with exact coefficients. Keys
/// carry a zero constant term; phases are folded into the coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorSum {
    terms: BTreeMap<PhasedXOperator, Exact>,
}

impl OperatorSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from_op(Exact::one(), &PhasedXOperator::identity())
    }

    pub fn from_op(coeff: Exact, op: &PhasedXOperator) -> Self {
        let mut s = Self::zero();
        s.add_term(coeff, op);
        s
    }

    pub fn add_term(&mut self, coeff: Exact, op: &PhasedXOperator) {
        let mut key = op.clone();
        let c = coeff * key.form.constant.to_exact();
        key.form.constant = Phase::ONE;
        let entry = self.terms.entry(key.clone()).or_insert_with(Exact::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PhasedXOperator, &Exact)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Exact) -> OperatorSum {
        let mut out = Self::zero();
        for (op, v) in &self.terms {
            out.add_term(v * c, op);
        }
        out
    }

    pub fn adjoint(&self) -> OperatorSum {
        let mut out = Self::zero();
        for (op, v) in &self.terms {
            out.add_term(v.conj(), &op.adjoint());
        }
        out
    }

    pub fn support(&self) -> BTreeSet<EdgeId> {
        self.terms.keys().flat_map(|op| op.support()).collect()
    }

    pub fn compose(&self, rhs: &OperatorSum) -> OperatorSum {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(ca * cb, &a.compose(b));
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &OperatorSum) -> OperatorSum {
        &self.compose(rhs) - &rhs.compose(self)
    }
}

impl Add for &OperatorSum {
    type Output = OperatorSum;
    fn add(self, rhs: &OperatorSum) -> OperatorSum {
        let mut out = self.clone();
        for (op, c) in &rhs.terms {
            out.add_term(*c, op);
        }
        out
    }
}

impl Sub for &OperatorSum {
    type Output = OperatorSum;
    fn sub(self, rhs: &OperatorSum) -> OperatorSum {
        self + &(-rhs)
    }
}

impl Neg for &OperatorSum {
    type Output = OperatorSum;
    fn neg(self) -> OperatorSum {
        self.scale(exact(-1, 0))
    }
}

impl Mul for &OperatorSum {
    type Output = OperatorSum;
    fn mul(self, rhs: &OperatorSum) -> OperatorSum {
        self.compose(rhs)
    }
}

/// Checks that a diagonal operator restricted to unoccupied `frozen` edges is
/// a scalar; errors otherwise.
pub fn scalar_mod_frozen(op: &PhasedXOperator, frozen: &BTreeSet<EdgeId>) -> Result<Phase> {
    op.restrict_unoccupied(frozen).as_scalar().ok_or(Error::NotScalar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::HexCoord;

    fn edges() -> Vec<EdgeId> {
        HexCoord::ORIGIN.edges().to_vec()
    }

    #[test]
    fn xz_anticommute() {
        let e = edges()[0];
        let x = PhasedXOperator::x([e]);
        let z = PhasedXOperator::z([e]);
        assert_eq!(x.compose(&z), z.compose(&x).times_phase(Phase::MINUS_ONE));
        assert_eq!(x.compose(&z).proportionality(&z.compose(&x)), Some(Phase::MINUS_ONE));
    }

    #[test]
    fn adjoint_inverts() {
        let e = edges();
        let mut f = DiagonalForm::zero();
        f.add_linear(e[0], 1);
        f.add_linear(e[2], 3);
        f.add_quadratic(e[0], e[1]);
        f.add_quadratic(e[1], e[3]);
        f.add_constant(1);
        let op = PhasedXOperator::new([e[0], e[3]].into_iter().collect(), f);
        assert!(op.compose(&op.adjoint()).is_identity());
        assert!(op.adjoint().compose(&op).is_identity());
    }

    #[test]
    fn operator_sum_projector() {
        let e = edges()[0];
        let half = exact_ratio(1, 2);
        let p = &OperatorSum::identity().scale(half) + &OperatorSum::from_op(half, &PhasedXOperator::z([e]));
        assert_eq!(p.compose(&p), p);
        assert_eq!(p.adjoint(), p);
    }
}
