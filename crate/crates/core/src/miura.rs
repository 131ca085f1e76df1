//! Maps between the dressing-chain and symmetric forms.
//!
//! For P4 with odd `n` the map `f_i = g_i + g_{i+1}` is invertible, with
//! inverse `g_i = 1/2 sum_k (-1)^k f_{i+k}`. It sends the dressing-chain
//! residual to the symmetric-form residual component by component, for any
//! tuple. For P5 only a checking harness is provided: the caller supplies
//! both tuples and the change of variable.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactalg::{ratio, RatFunc};
use crate::hierarchy::{
    cyclic, residual_p5dc, residual_p5ny_in, SolutionTuple, SystemKind, SystemSpec,
};

fn expect(s: &SolutionTuple, kind: SystemKind) -> Result<()> {
    if s.system.kind != kind {
        return Err(Error::WrongSystem {
            expected: kind,
            found: s.system.kind,
        });
    }
    s.check_arity()?;
    if s.components.len().is_multiple_of(2) {
        return Err(Error::ArityMismatch {
            expected: s.components.len() + 1,
            found: s.components.len(),
        });
    }
    Ok(())
}

/// `f_i = g_i + g_{i+1}`; the parameters are carried over unchanged.
pub fn p4_dressing_to_symmetric(g: &SolutionTuple) -> Result<SolutionTuple> {
    expect(g, SystemKind::P4Dc)?;
    let n = g.components.len();
    let components = (0..n)
        .map(|i| &g.components[i] + &g.components[cyclic(i, 1, n)])
        .collect();
    Ok(SolutionTuple {
        components,
        system: SystemSpec::p4ny(g.system.n),
        params: g.params.clone(),
    })
}

/// `g_i = 1/2 sum_{k=0}^{n-1} (-1)^k f_{i+k}`.
pub fn p4_symmetric_to_dressing(f: &SolutionTuple) -> Result<SolutionTuple> {
    expect(f, SystemKind::P4Ny)?;
    let n = f.components.len();
    let half = ratio(1, 2);
    let components = (0..n)
        .map(|i| {
            let mut acc = RatFunc::zero();
            for k in 0..n {
                let term = &f.components[cyclic(i, k as isize, n)];
                acc = if k % 2 == 0 { &acc + term } else { &acc - term };
            }
            acc.scale(&half)
        })
        .collect();
    Ok(SolutionTuple {
        components,
        system: SystemSpec::p4dc(f.system.n),
        params: f.params.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformReport {
    /// The candidate solves the P5 symmetric system in the variable `z(x)`.
    pub forward_ok: bool,
    /// The source tuple solves the P5 dressing chain.
    pub source_ok: bool,
    /// Source and candidate agree on being solutions.
    pub residual_identity_ok: bool,
    /// Number of residual components examined, over both systems.
    pub samples_checked: usize,
}

/// Checks a user-supplied P5 correspondence. The candidate's components are
/// functions of `x`; the symmetric system is read in the variable `z(x)`.
pub fn p5_verify_transform(
    g: &SolutionTuple,
    candidate: &SolutionTuple,
    z: &RatFunc,
) -> Result<TransformReport> {
    if g.system.kind != SystemKind::P5Dc {
        return Err(Error::WrongSystem {
            expected: SystemKind::P5Dc,
            found: g.system.kind,
        });
    }
    if candidate.system.kind != SystemKind::P5Ny {
        return Err(Error::WrongSystem {
            expected: SystemKind::P5Ny,
            found: candidate.system.kind,
        });
    }
    let dz = z.derivative();
    if dz.is_zero() {
        return Err(Error::InvalidVariableMap);
    }
    let source: Vec<RatFunc> = residual_p5dc(g)?;
    let target = residual_p5ny_in(candidate, z, &dz)?;
    let source_ok = source.iter().all(RatFunc::is_zero);
    let forward_ok = target.iter().all(RatFunc::is_zero);
    Ok(TransformReport {
        forward_ok,
        source_ok,
        residual_identity_ok: source_ok == forward_ok,
        samples_checked: source.len() + target.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use crate::hierarchy::{
        is_solution, residual_p4dc, residual_p4ny, CouplingVariant, ParamVector,
    };
    use crate::seeds::{p4_seed, p5_alpha_row, p5_constant_seed, Arrangement};
    use alloc::vec;

    fn t() -> RatFunc {
        RatFunc::x()
    }

    fn p4dc(alphas: &[(i64, i64)], g: Vec<RatFunc>) -> SolutionTuple {
        SolutionTuple::new(SystemSpec::p4dc(g.len()), ParamVector::from_ratios(alphas), g).unwrap()
    }

    #[test]
    fn forward_example() {
        let g = p4dc(&[(1, 1), (0, 1), (0, 1)], vec![t(), RatFunc::zero(), RatFunc::zero()]);
        let f = p4_dressing_to_symmetric(&g).unwrap();
        assert_eq!(f.components, vec![t(), RatFunc::zero(), t()]);
        assert_eq!(f.params, g.params);
        let expected = vec![
            &t() * &t(),
            RatFunc::zero(),
            &RatFunc::one() - &(&t() * &t()),
        ];
        assert_eq!(residual_p4dc(&g).unwrap(), expected);
        assert_eq!(residual_p4ny(&f).unwrap(), expected);
    }

    #[test]
    fn zero_tuple() {
        let g = p4dc(&[(0, 1), (0, 1), (0, 1)], vec![RatFunc::zero(); 3]);
        let f = p4_dressing_to_symmetric(&g).unwrap();
        assert!(is_solution(&g).unwrap() && is_solution(&f).unwrap());
    }

    #[test]
    fn inverse_examples() {
        let f = SolutionTuple::new(
            SystemSpec::p4ny(3),
            ParamVector::from_ratios(&[(1, 1), (0, 1), (0, 1)]),
            vec![t(), RatFunc::zero(), t()],
        )
        .unwrap();
        let g = p4_symmetric_to_dressing(&f).unwrap();
        assert_eq!(g.components, vec![t(), RatFunc::zero(), RatFunc::zero()]);

        let seed = p4_seed(3, 0, &Arrangement::trivial(3, 1)).unwrap().solution().unwrap();
        let g = p4_symmetric_to_dressing(&seed).unwrap();
        let h = t().scale(&ratio(1, 2));
        assert_eq!(g.components, vec![h.clone(), h.clone(), -&h]);
        assert!(is_solution(&g).unwrap());
        assert_eq!(p4_dressing_to_symmetric(&g).unwrap(), seed);
    }

    #[test]
    fn rejects_wrong_input() {
        let g = p4dc(&[(1, 1), (0, 1), (0, 1)], vec![t(), RatFunc::zero(), RatFunc::zero()]);
        assert!(matches!(p4_symmetric_to_dressing(&g), Err(Error::WrongSystem { .. })));
        let mut even = g.clone();
        even.components.push(RatFunc::zero());
        even.params = ParamVector::zeros(4);
        even.system.n = 4;
        assert!(matches!(p4_dressing_to_symmetric(&even), Err(Error::ArityMismatch { .. })));
    }

    fn p5_pair() -> (SolutionTuple, SolutionTuple) {
        let spec = SystemSpec::p5ny(1, int(1), int(2), CouplingVariant::DiagonalFi);
        let (p, _) = p5_alpha_row(1, 0, &ratio(1, 3), &Arrangement::trivial(4, 2)).unwrap();
        let f = p5_constant_seed(&spec, &p).unwrap();
        let half = ratio(1, 2);
        let g = SolutionTuple::new(
            SystemSpec::p5dc(1),
            p,
            f.components.iter().map(|c| c.scale(&half)).collect(),
        )
        .unwrap();
        (g, f)
    }

    #[test]
    fn p5_harness_trivial() {
        let g = SolutionTuple::new(SystemSpec::p5dc(1), ParamVector::zeros(4), vec![RatFunc::zero(); 4]).unwrap();
        let spec = SystemSpec::p5ny(1, int(0), int(0), CouplingVariant::DiagonalFi);
        let f = SolutionTuple::new(spec, ParamVector::zeros(4), vec![RatFunc::zero(); 4]).unwrap();
        let report = p5_verify_transform(&g, &f, &t()).unwrap();
        assert!(report.forward_ok && report.source_ok && report.residual_identity_ok);
        assert_eq!(report.samples_checked, 4 + 6);

        let mut wrong = f.clone();
        wrong.components[1] = &wrong.components[1] + &RatFunc::one();
        let report = p5_verify_transform(&g, &wrong, &t()).unwrap();
        assert!(!report.forward_ok);
        assert!(!report.residual_identity_ok);

        assert_eq!(
            p5_verify_transform(&g, &f, &RatFunc::constant(int(3))),
            Err(Error::InvalidVariableMap)
        );
        assert!(matches!(p5_verify_transform(&f, &f, &t()), Err(Error::WrongSystem { .. })));
    }

    #[test]
    fn p5_harness_squared_variable_regression() {
        let (g, f) = p5_pair();
        let report = p5_verify_transform(&g, &f, &(&t() * &t())).unwrap();
        assert_eq!(
            report,
            TransformReport {
                forward_ok: true,
                source_ok: false,
                residual_identity_ok: false,
                samples_checked: 10,
            }
        );
    }
}
