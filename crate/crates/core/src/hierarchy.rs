//! Exact residual evaluators for every system handled by the engine.
//!
//! A candidate tuple solves its system exactly when every residual component
//! is the zero rational function. All other modules reduce their correctness
//! claims to this check.
//!
//! Systems, with `'` the derivative in the independent variable and all
//! indices cyclic:
//!
//! * `P4Ny` (`n` odd): `f_i' = f_i (f_{i+1} - f_{i+2} + ... - f_{i+n-1}) + a_i`
//! * `P4Dc` (`n` odd) and `P5Dc` (`2n+2` components):
//!   `g_i' + g_{i+1}' = g_{i+1}^2 - g_i^2 + a_i`
//! * `P5Ny` (`2n+2` components):
//!   `z f_i' = z f_i Phi_i - A_{i mod 2} f_* + a_i C_{i mod 2}` together with
//!   `sum f_even = C_0`, `sum f_odd = C_1`, where `f_*` is `f_i` or `f_0`
//!   depending on [`CouplingVariant`].
//! * `Kudryashov2`: a single fourth-order scalar equation in `y(x)` with
//!   parameters `beta`, `delta`.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{rational_sqrt, ratio, RatFunc, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemKind {
    P4Ny,
    P4Dc,
    P5Ny,
    P5Dc,
    Kudryashov2,
}

/// Reading of the coupling term `A_{i mod 2} f_*` of the P5 symmetric system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub enum CouplingVariant {
    /// `f_* = f_0` for every equation, as printed.
    LiteralF0,
    /// `f_* = f_i`; consistent with the even/odd sum constraints.
    #[default]
    DiagonalFi,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SystemSpec {
    pub kind: SystemKind,
    /// Hierarchy member. Odd and at least 3 for the P4 systems; the P5
    /// systems have `2n + 2` components.
    pub n: usize,
    pub c0: Option<Scalar>,
    pub c1: Option<Scalar>,
    pub variant: CouplingVariant,
    pub beta: Option<Scalar>,
    pub delta: Option<Scalar>,
}

impl SystemSpec {
    fn bare(kind: SystemKind, n: usize) -> Self {
        SystemSpec {
            kind,
            n,
            c0: None,
            c1: None,
            variant: CouplingVariant::default(),
            beta: None,
            delta: None,
        }
    }

    pub fn p4ny(n: usize) -> Self {
        Self::bare(SystemKind::P4Ny, n)
    }

    pub fn p4dc(n: usize) -> Self {
        Self::bare(SystemKind::P4Dc, n)
    }

    pub fn p5ny(n: usize, c0: Scalar, c1: Scalar, variant: CouplingVariant) -> Self {
        SystemSpec {
            c0: Some(c0),
            c1: Some(c1),
            variant,
            ..Self::bare(SystemKind::P5Ny, n)
        }
    }

    pub fn p5dc(n: usize) -> Self {
        Self::bare(SystemKind::P5Dc, n)
    }

    pub fn kudryashov2(beta: Scalar, delta: Scalar) -> Self {
        SystemSpec {
            beta: Some(beta),
            delta: Some(delta),
            ..Self::bare(SystemKind::Kudryashov2, 2)
        }
    }

    /// Number of unknown functions (and of alpha parameters, except for
    /// `Kudryashov2`, which has none).
    pub fn arity(&self) -> usize {
        match self.kind {
            SystemKind::P4Ny | SystemKind::P4Dc => self.n,
            SystemKind::P5Ny | SystemKind::P5Dc => 2 * self.n + 2,
            SystemKind::Kudryashov2 => 1,
        }
    }

    pub fn param_len(&self) -> usize {
        match self.kind {
            SystemKind::Kudryashov2 => 0,
            _ => self.arity(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            SystemKind::P4Ny | SystemKind::P4Dc => {
                if self.n < 3 || self.n.is_multiple_of(2) {
                    return Err(Error::InvalidSystem(format!(
                        "P4 systems need an odd n >= 3, got {}",
                        self.n
                    )));
                }
            }
            SystemKind::P5Ny | SystemKind::P5Dc => {
                if self.n == 0 {
                    return Err(Error::InvalidSystem("P5 systems need n >= 1".into()));
                }
            }
            SystemKind::Kudryashov2 => {
                if self.beta.is_none() || self.delta.is_none() {
                    return Err(Error::InvalidSystem(
                        "the Kudryashov member needs beta and delta".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `(C_0, C_1)`, or `MissingConstants`.
    pub fn constants(&self) -> Result<(&Scalar, &Scalar)> {
        match (&self.c0, &self.c1) {
            (Some(c0), Some(c1)) => Ok((c0, c1)),
            _ => Err(Error::MissingConstants),
        }
    }

    fn expect_kind(&self, kind: SystemKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::WrongSystem {
                expected: kind,
                found: self.kind,
            })
        }
    }
}

/// `base + offset` reduced into `0..len`.
pub(crate) fn cyclic(base: usize, offset: isize, len: usize) -> usize {
    (base as isize + offset).rem_euclid(len as isize) as usize
}

/// The alpha parameters of a system; their sum is `h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamVector {
    alphas: Vec<Scalar>,
}

impl ParamVector {
    pub fn new(alphas: Vec<Scalar>) -> Self {
        ParamVector { alphas }
    }

    pub fn from_ratios(pairs: &[(i64, i64)]) -> Self {
        Self::new(pairs.iter().map(|&(p, q)| ratio(p, q)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(alloc::vec![Scalar::zero(); len])
    }

    pub fn h(&self) -> Scalar {
        self.alphas.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.alphas
    }

    pub fn into_vec(self) -> Vec<Scalar> {
        self.alphas
    }

    /// Sum of the entries with index congruent to `parity` mod 2.
    pub fn parity_sum(&self, parity: usize) -> Scalar {
        self.alphas.iter().skip(parity).step_by(2).sum()
    }
}

impl core::ops::Index<usize> for ParamVector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.alphas[i]
    }
}

/// A candidate solution: one rational function per unknown, tagged with the
/// system and parameters it claims to solve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolutionTuple {
    pub components: Vec<RatFunc>,
    pub system: SystemSpec,
    pub params: ParamVector,
}

impl SolutionTuple {
    pub fn new(system: SystemSpec, params: ParamVector, components: Vec<RatFunc>) -> Result<Self> {
        let tuple = SolutionTuple {
            components,
            system,
            params,
        };
        tuple.check_arity()?;
        Ok(tuple)
    }

    pub fn check_arity(&self) -> Result<()> {
        let expected = self.system.arity();
        if self.components.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                found: self.components.len(),
            });
        }
        let expected = self.system.param_len();
        if self.params.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                found: self.params.len(),
            });
        }
        Ok(())
    }

    /// Sum of numerator and denominator degrees over all components.
    pub fn total_degree(&self) -> usize {
        self.components.iter().map(RatFunc::total_degree).sum()
    }
}

/// Residual vector of any supported system (a single entry for
/// `Kudryashov2`).
pub fn residual(s: &SolutionTuple) -> Result<Vec<RatFunc>> {
    match s.system.kind {
        SystemKind::P4Ny => residual_p4ny(s),
        SystemKind::P4Dc => residual_p4dc(s),
        SystemKind::P5Ny => residual_p5ny(s),
        SystemKind::P5Dc => residual_p5dc(s),
        SystemKind::Kudryashov2 => residual_kudryashov2(s).map(|r| alloc::vec![r]),
    }
}

/// `true` iff every residual component vanishes identically.
pub fn is_solution(s: &SolutionTuple) -> Result<bool> {
    Ok(residual(s)?.iter().all(RatFunc::is_zero))
}

pub fn residual_p4ny(s: &SolutionTuple) -> Result<Vec<RatFunc>> {
    s.system.expect_kind(SystemKind::P4Ny)?;
    s.check_arity()?;
    let f = &s.components;
    let n = f.len();
    Ok((0..n)
        .map(|i| {
            let alternating: RatFunc = (1..n)
                .map(|k| {
                    let term = &f[cyclic(i, k as isize, n)];
                    if k % 2 == 1 {
                        term.clone()
                    } else {
                        -term
                    }
                })
                .sum();
            &(&f[i].derivative() - &(&f[i] * &alternating)) - &RatFunc::constant(s.params[i].clone())
        })
        .collect())
}

fn dressing_chain_residual(s: &SolutionTuple) -> Vec<RatFunc> {
    let g = &s.components;
    let m = g.len();
    let derivs: Vec<RatFunc> = g.iter().map(RatFunc::derivative).collect();
    let squares: Vec<RatFunc> = g.iter().map(|gi| gi * gi).collect();
    (0..m)
        .map(|i| {
            let j = cyclic(i, 1, m);
            let lhs = &derivs[i] + &derivs[j];
            let rhs = &(&squares[j] - &squares[i]) + &RatFunc::constant(s.params[i].clone());
            &lhs - &rhs
        })
        .collect()
}

pub fn residual_p4dc(s: &SolutionTuple) -> Result<Vec<RatFunc>> {
    s.system.expect_kind(SystemKind::P4Dc)?;
    s.check_arity()?;
    Ok(dressing_chain_residual(s))
}

pub fn residual_p5dc(s: &SolutionTuple) -> Result<Vec<RatFunc>> {
    s.system.expect_kind(SystemKind::P5Dc)?;
    s.check_arity()?;
    Ok(dressing_chain_residual(s))
}

/// `Phi_i = sum_{1<=r<=s<=n} f_{i+2r-1} f_{i+2s} - sum_{1<=r<=s<=n} f_{i+2r} f_{i+2s+1}`
/// with indices mod `2n + 2`.
pub fn p5_phi(f: &[RatFunc], n: usize, i: usize) -> RatFunc {
    let m = f.len();
    let at = |k: usize| &f[(i + k) % m];
    let mut acc = RatFunc::zero();
    for r in 1..=n {
        for s in r..=n {
            acc = &acc + &(at(2 * r - 1) * at(2 * s));
            acc = &acc - &(at(2 * r) * at(2 * s + 1));
        }
    }
    acc
}

/// Residuals of the P5 symmetric system: `2n + 2` differential components
/// followed by the two constraint residuals `sum f_even - C_0` and
/// `sum f_odd - C_1`.
pub fn residual_p5ny(s: &SolutionTuple) -> Result<Vec<RatFunc>> {
    residual_p5ny_in(s, &RatFunc::x(), &RatFunc::one())
}

/// [`residual_p5ny`] for components given as functions of `x` while the
/// system's independent variable is `z = z(x)`; `dz` is `z'(x)` and
/// derivatives are taken as `f_z = f_x / z'`.
pub fn residual_p5ny_in(s: &SolutionTuple, z: &RatFunc, dz: &RatFunc) -> Result<Vec<RatFunc>> {
    s.system.expect_kind(SystemKind::P5Ny)?;
    s.check_arity()?;
    let (c0, c1) = s.system.constants()?;
    let consts = [c0, c1];
    let f = &s.components;
    let m = f.len();
    let n = s.system.n;
    let a_sums = [s.params.parity_sum(0), s.params.parity_sum(1)];
    let mut out = Vec::with_capacity(m + 2);
    for i in 0..m {
        let parity = i % 2;
        let coupled = match s.system.variant {
            CouplingVariant::LiteralF0 => &f[0],
            CouplingVariant::DiagonalFi => &f[i],
        };
        let phi = p5_phi(f, n, i);
        let lhs = (z * &f[i].derivative()).checked_div(dz)?;
        let cubic = &(z * &f[i]) * &phi;
        let linear = coupled.scale(&a_sums[parity]);
        let forcing = RatFunc::constant(&s.params[i] * consts[parity]);
        out.push(&(&(&lhs - &cubic) + &linear) - &forcing);
    }
    for (parity, c) in consts.iter().enumerate() {
        let sum: RatFunc = f.iter().skip(parity).step_by(2).cloned().sum();
        out.push(&sum - &RatFunc::constant((*c).clone()));
    }
    Ok(out)
}

/// Left-hand side of the second member of Kudryashov's P4 hierarchy,
/// evaluated on `y = components[0]` with the system's `beta` and `delta`.
pub fn residual_kudryashov2(s: &SolutionTuple) -> Result<RatFunc> {
    s.system.expect_kind(SystemKind::Kudryashov2)?;
    s.check_arity()?;
    let (Some(beta), Some(delta)) = (&s.system.beta, &s.system.delta) else {
        return Err(Error::InvalidSystem(
            "the Kudryashov member needs beta and delta".into(),
        ));
    };
    Ok(kudryashov2_lhs(&s.components[0], beta, delta))
}

pub(crate) fn kudryashov2_lhs(y: &RatFunc, beta: &Scalar, delta: &Scalar) -> RatFunc {
    let q = |p: i64, d: i64| RatFunc::constant(ratio(p, d));
    let k = |v: i64| q(v, 1);
    let b = RatFunc::constant(beta.clone());
    let d = RatFunc::constant(delta.clone());
    let x = RatFunc::x();

    let y1 = y.derivative();
    let y2 = y1.derivative();
    let y3 = y2.derivative();
    let y4 = y3.derivative();
    let yp: Vec<RatFunc> = (0..=10).map(|e| y.pow(e)).collect();
    let b2 = &b * &b;
    let y1sq = &y1 * &y1;

    // (y'' - 2xy - 2y^3 - b) y^2 y''''
    let line1_a = {
        let f = &(&(&y2 - &(&k(2) * &(&x * y))) - &(&k(2) * &yp[3])) - &b;
        &(&f * &yp[2]) * &y4
    };
    // - 1/2 y^2 (y''')^2
    let line1_b = -(&(&q(1, 2) * &yp[2]) * &(&y3 * &y3));
    // (2y^2 + 8y^3 y' + 4xyy' - y'y'' + b y') y y'''
    let line1_c = {
        let f = [
            &k(2) * &yp[2],
            &(&k(8) * &yp[3]) * &y1,
            &(&(&k(4) * &x) * y) * &y1,
            -(&y1 * &y2),
            &b * &y1,
        ]
        .into_iter()
        .sum::<RatFunc>();
        &(&f * y) * &y3
    };
    // - 4/3 y (y'')^3
    let line2_a = -(&(&q(4, 3) * y) * &y2.pow(3));
    // (3xy^2 + 3by - 3/2 y^4 + 3/2 y'^2) (y'')^2
    let line2_b = {
        let f = [
            &(&k(3) * &x) * &yp[2],
            &(&k(3) * &b) * y,
            -(&q(3, 2) * &yp[4]),
            &q(3, 2) * &y1sq,
        ]
        .into_iter()
        .sum::<RatFunc>();
        &f * &(&y2 * &y2)
    };
    // (b y^4 - 2y'y^2 - 12y'^2 y^3 - 2b^2 y + 10xy^5 - 3by'^2 + 10y^7
    //   - 4xyy'^2 - 4bxy^2) y''
    let line3_a = {
        let f = [
            &b * &yp[4],
            -(&(&k(2) * &y1) * &yp[2]),
            -(&(&k(12) * &y1sq) * &yp[3]),
            -(&(&k(2) * &b2) * y),
            &(&k(10) * &x) * &yp[5],
            -(&(&k(3) * &b) * &y1sq),
            &k(10) * &yp[7],
            -(&(&(&k(4) * &x) * y) * &y1sq),
            -(&(&(&k(4) * &b) * &x) * &yp[2]),
        ]
        .into_iter()
        .sum::<RatFunc>();
        &f * &y2
    };
    // 2(b - 4y^3) y^2 y'
    let line3_b = &(&(&k(2) * &(&b - &(&k(4) * &yp[3]))) * &yp[2]) * &y1;
    // (4bxy + 8xy^4 + 3/2 b^2 + 12by^3) y'^2
    let line4_a = {
        let f = [
            &(&(&k(4) * &b) * &x) * y,
            &(&k(8) * &x) * &yp[4],
            &q(3, 2) * &b2,
            &(&k(12) * &b) * &yp[3],
        ]
        .into_iter()
        .sum::<RatFunc>();
        &f * &y1sq
    };
    // - 10/3 y^10 - 8xy^8 - 2by^7 - 6x^2 y^6 - 2bxy^5
    let line4_b = [
        -(&q(10, 3) * &yp[10]),
        -(&(&k(8) * &x) * &yp[8]),
        -(&(&k(2) * &b) * &yp[7]),
        -(&(&k(6) * &(&x * &x)) * &yp[6]),
        -(&(&(&k(2) * &b) * &x) * &yp[5]),
    ]
    .into_iter()
    .sum::<RatFunc>();
    // (1/2 b^2 - 2 + 9d - 4/3 x^3) y^4 + bxy^2 + 1/3 b^3 y
    let line5 = {
        let f = [
            &q(1, 2) * &b2,
            k(-2),
            &k(9) * &d,
            -(&q(4, 3) * &x.pow(3)),
        ]
        .into_iter()
        .sum::<RatFunc>();
        [
            &f * &yp[4],
            &(&b * &x) * &yp[2],
            &(&q(1, 3) * &b.pow(3)) * y,
        ]
        .into_iter()
        .sum::<RatFunc>()
    };

    [
        line1_a, line1_b, line1_c, line2_a, line2_b, line3_a, line3_b, line4_a, line4_b, line5,
    ]
    .into_iter()
    .sum()
}

/// Rescales parameters to `h = 1` via `f~(t) = c f(c t)`, `c^2 = 1/h`,
/// which maps `alpha` to `c^2 alpha`. The optional solution is carried along.
pub fn rescale_to_unit_h(
    p: &ParamVector,
    s: Option<&SolutionTuple>,
) -> Result<(ParamVector, Option<SolutionTuple>)> {
    let h = p.h();
    if h.is_zero() {
        return Err(Error::ZeroH);
    }
    if h.is_one() {
        return Ok((p.clone(), s.cloned()));
    }
    let c2 = h.recip();
    let c = rational_sqrt(&c2).ok_or_else(|| Error::NonSquareScale { h: Box::new(h.clone()) })?;
    let params = ParamVector::new(p.as_slice().iter().map(|a| a * &c2).collect());
    let solution = match s {
        None => None,
        Some(s) => {
            match s.system.kind {
                SystemKind::P4Ny | SystemKind::P4Dc | SystemKind::P5Dc => {}
                other => {
                    return Err(Error::InvalidSystem(format!(
                        "no scaling law for {other:?}"
                    )))
                }
            }
            let inner = RatFunc::x().scale(&c);
            let components = s
                .components
                .iter()
                .map(|f| f.compose(&inner).map(|g| g.scale(&c)))
                .collect::<Result<Vec<_>>>()?;
            Some(SolutionTuple::new(s.system.clone(), params.clone(), components)?)
        }
    };
    Ok((params, solution))
}
