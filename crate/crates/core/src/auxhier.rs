//! The two auxiliary P4 analogues: the parameters for which `y = sigma/x`
//! solves Kudryashov's second member, and the GJP recursion operator.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{int, interpolate, ratio, Poly, RatFunc, Scalar};
use crate::hierarchy::kudryashov2_lhs;

const GRID: usize = 5;

/// Solution set of the conditions on `(beta, delta)` for the ansatz
/// `y = sigma/x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KudryashovConstraint {
    pub sigma: Scalar,
    /// Isolated rational pairs `(beta, delta)`, sorted.
    pub points: Vec<(Scalar, Scalar)>,
    /// Values of `beta` for which every `delta` works.
    pub free_delta: Vec<Scalar>,
    /// `delta = numerator(beta) / denominator(beta)` for all `beta` off the
    /// zeros of the denominator, when the conditions collapse to one curve.
    pub curve: Option<(Poly, Poly)>,
    /// Remaining factor in `beta` whose roots are irrational or were not
    /// searched; its roots are not listed above.
    pub unresolved: Option<Poly>,
}

impl KudryashovConstraint {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
            && self.free_delta.is_empty()
            && self.curve.is_none()
            && self.unresolved.is_none()
    }
}

/// The residual for `y = sigma/x`, as a rational function of `x`.
pub fn kudryashov_residual(sigma: &Scalar, beta: &Scalar, delta: &Scalar) -> RatFunc {
    let y = RatFunc::monomial(sigma.clone(), -1);
    kudryashov2_lhs(&y, beta, delta)
}

fn grid_values() -> Vec<Scalar> {
    (0..GRID as i64).map(int).collect()
}

// Numerator coefficients of `x^shift * residual`, indexed by power of x.
fn cleared(r: &RatFunc, shift: usize) -> Result<Vec<Scalar>> {
    let d = r.den().degree().unwrap_or(0);
    if r.den() != &Poly::monomial(Scalar::one(), d) || d > shift {
        return Err(Error::InterpolationDegenerate(format!(
            "unexpected denominator {}",
            r.den()
        )));
    }
    Ok(r.num().shift(shift - d).into_coeffs())
}

/// The coefficient of `x^e` in `x^K * residual`, as polynomials in `beta`
/// for each power of `delta`: `coeffs[e][k]` multiplies `delta^k`.
pub struct ResidualCoefficients {
    pub shift: usize,
    pub coeffs: Vec<Vec<Poly>>,
}

impl ResidualCoefficients {
    pub fn eval(&self, beta: &Scalar, delta: &Scalar) -> RatFunc {
        let num: Vec<Scalar> = self
            .coeffs
            .iter()
            .map(|by_delta| {
                let mut acc = Scalar::zero();
                let mut dk = Scalar::one();
                for p in by_delta {
                    acc += p.eval(beta) * &dk;
                    dk *= delta;
                }
                acc
            })
            .collect();
        RatFunc::new(Poly::from_coeffs(num), Poly::monomial(Scalar::one(), self.shift))
            .expect("monomial denominator")
    }
}

/// Reconstructs the residual's dependence on `(beta, delta)` by tensor
/// Lagrange interpolation on a 5 x 5 grid.
pub fn interpolate_residual(sigma: &Scalar) -> Result<ResidualCoefficients> {
    let grid = grid_values();
    let samples: Vec<Vec<RatFunc>> = grid
        .iter()
        .map(|b| grid.iter().map(|d| kudryashov_residual(sigma, b, d)).collect())
        .collect();
    let shift = samples
        .iter()
        .flatten()
        .map(|r| r.den().degree().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let mut table: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(GRID);
    let mut width = 0;
    for row in &samples {
        let mut cleared_row = Vec::with_capacity(GRID);
        for r in row {
            let c = cleared(r, shift)?;
            width = width.max(c.len());
            cleared_row.push(c);
        }
        table.push(cleared_row);
    }
    let at = |c: &Vec<Scalar>, e: usize| c.get(e).cloned().unwrap_or_else(Scalar::zero);
    let mut coeffs = Vec::with_capacity(width);
    for e in 0..width {
        // interpolate in delta for each beta, then each delta-coefficient in beta
        let in_delta: Vec<Poly> = table
            .iter()
            .map(|row| interpolate(&grid, &row.iter().map(|c| at(c, e)).collect::<Vec<_>>()))
            .collect();
        let by_delta: Vec<Poly> = (0..GRID)
            .map(|k| interpolate(&grid, &in_delta.iter().map(|p| p.coeff(k)).collect::<Vec<_>>()))
            .collect();
        let mut by_delta = by_delta;
        while by_delta.last().is_some_and(Poly::is_zero) {
            by_delta.pop();
        }
        coeffs.push(by_delta);
    }
    let reconstructed = ResidualCoefficients { shift, coeffs };
    // off-grid consistency check
    let (b, d) = (ratio(-7, 3), ratio(11, 5));
    if reconstructed.eval(&b, &d) != kudryashov_residual(sigma, &b, &d) {
        return Err(Error::InterpolationDegenerate(
            "reconstruction disagrees with the residual off the grid".into(),
        ));
    }
    Ok(reconstructed)
}

/// All `(beta, delta)` for which `y = sigma/x` solves the second Kudryashov
/// member. Every listed point and line is re-checked on the residual.
pub fn solve_kudryashov_params(sigma: &Scalar) -> Result<KudryashovConstraint> {
    if sigma.is_zero() {
        return Err(Error::InvalidSystem("sigma must be nonzero".into()));
    }
    let rc = interpolate_residual(sigma)?;
    // each condition reads a(beta) + b(beta) delta = 0
    let mut linear: Vec<(Poly, Poly)> = Vec::new();
    for by_delta in &rc.coeffs {
        if by_delta.len() > 2 {
            return Err(Error::InterpolationDegenerate(
                "delta enters a condition nonlinearly".into(),
            ));
        }
        let a = by_delta.first().cloned().unwrap_or_else(Poly::zero);
        let b = by_delta.get(1).cloned().unwrap_or_else(Poly::zero);
        if !(a.is_zero() && b.is_zero()) {
            linear.push((a, b));
        }
    }
    let mut out = KudryashovConstraint {
        sigma: sigma.clone(),
        points: Vec::new(),
        free_delta: Vec::new(),
        curve: None,
        unresolved: None,
    };
    if linear.is_empty() {
        return Err(Error::InterpolationDegenerate(
            "the residual vanishes for every (beta, delta)".into(),
        ));
    }

    // eliminate delta
    let mut g = Poly::zero();
    for (i, (a, b)) in linear.iter().enumerate() {
        if b.is_zero() {
            g = Poly::gcd(&g, a);
        }
        for (c, d) in &linear[i + 1..] {
            g = Poly::gcd(&g, &(a * d - c * b));
        }
    }
    if g.is_zero() {
        let (a, b) = linear
            .iter()
            .find(|(_, b)| !b.is_zero())
            .expect("some condition involves delta");
        let common = Poly::gcd(a, b);
        out.curve = Some((-&a.div_exact(&common), b.div_exact(&common)));
        return Ok(out);
    }

    let Some(roots) = g.rational_roots() else {
        out.unresolved = Some(g);
        return Ok(out);
    };
    let mut rest = g.clone();
    for beta in roots {
        let linear_factor = Poly::from_coeffs(alloc::vec![-beta.clone(), Scalar::one()]);
        while rest.eval(&beta).is_zero() {
            rest = rest.div_exact(&linear_factor);
        }
        let pivot = linear.iter().find(|(_, b)| !b.eval(&beta).is_zero());
        match pivot {
            Some((a, b)) => {
                let delta = -a.eval(&beta) / b.eval(&beta);
                if kudryashov_residual(sigma, &beta, &delta).is_zero() {
                    out.points.push((beta, delta));
                }
            }
            None => {
                if linear.iter().all(|(a, _)| a.eval(&beta).is_zero()) {
                    out.free_delta.push(beta);
                }
            }
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.unresolved = Some(rest);
    }
    out.points.sort();
    Ok(out)
}

/// The field `U = (u, v)` the recursion operator depends on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldPair {
    pub u: RatFunc,
    pub v: RatFunc,
}

fn integrate(f: &RatFunc, name: &str) -> Result<RatFunc> {
    f.antiderivative().map_err(|_| Error::NonElementaryAntiderivative {
        context: format!("{name} = {f}"),
    })
}

/// `R(a, b) = 1/2 ( (u * int a)' + 2b , 2v a + v' int a + u b + b' )`.
/// Integration constants are zero.
pub fn gjp_apply_r(p: &FieldPair, target: &(RatFunc, RatFunc)) -> Result<(RatFunc, RatFunc)> {
    let (a, b) = target;
    let ia = integrate(a, "a")?;
    let half = ratio(1, 2);
    let first = &(&p.u * &ia).derivative() + &b.scale(&int(2));
    let second = [
        (&p.v * a).scale(&int(2)),
        &p.v.derivative() * &ia,
        &p.u * b,
        b.derivative(),
    ]
    .into_iter()
    .sum::<RatFunc>();
    Ok((first.scale(&half), second.scale(&half)))
}

/// `B^{-1}(a, b) = (int b, int a)` for `B = ((0, d/dx), (d/dx, 0))`.
pub fn gjp_apply_b_inverse(target: &(RatFunc, RatFunc)) -> Result<(RatFunc, RatFunc)> {
    let (a, b) = target;
    Ok((integrate(b, "b")?, integrate(a, "a")?))
}

/// `B(p, q) = (q', p')`.
pub fn gjp_apply_b(target: &(RatFunc, RatFunc)) -> (RatFunc, RatFunc) {
    (target.1.derivative(), target.0.derivative())
}
