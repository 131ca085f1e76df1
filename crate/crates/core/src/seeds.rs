//! Seed catalogs: the rows of the P4 and P5 parameter tables with their
//! zero-pair arrangements, the explicit P4 seed solutions, and constant seed
//! solutions for the P5 symmetric system.
//!
//! An [`Arrangement`] records which entries of a table row are zero. Zeros
//! must come in adjacent couples in the cyclic order; splitting a couple
//! breaks the P4 solution (the alternating sums no longer cancel).

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{int, RatFunc, Scalar};
use crate::hierarchy::{
    p5_phi, residual_p5ny, CouplingVariant, ParamVector, SolutionTuple, SystemKind, SystemSpec,
};

/// Which parameter table a row comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Table {
    /// Rows `(1/(2k+1), ..., 1/(2k+1), 0, ..., 0)` of length `n` (P4, `n` odd).
    P4,
    /// Rows `(a0, 1/(k+1) - a0, ..., a0, 1/(k+1) - a0, 0, ..., 0)` of length
    /// `2n + 2` (P5).
    P5,
}

impl Table {
    /// `(row length, nonzero slots)` for row `k` of member `n`.
    pub fn geometry(self, n: usize, k: usize) -> Result<(usize, usize)> {
        let (len, slots) = match self {
            Table::P4 => (n, 2 * k + 1),
            Table::P5 => (2 * n + 2, 2 * (k + 1)),
        };
        if slots > len {
            return Err(Error::RowOutOfRange { n, k });
        }
        Ok((len, slots))
    }

    pub fn rows(self, n: usize) -> usize {
        match self {
            Table::P4 => n.div_ceil(2),
            Table::P5 => n + 1,
        }
    }
}

/// Zero pattern of a table row: `true` marks a zero entry.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrangement {
    zeros: Vec<bool>,
}

impl Arrangement {
    /// Nonzero slots first, all zero couples at the end.
    pub fn trivial(len: usize, slots: usize) -> Self {
        Arrangement {
            zeros: (0..len).map(|i| i >= slots).collect(),
        }
    }

    /// Builds an arrangement from its zero mask, rejecting split couples.
    pub fn from_zero_mask(zeros: Vec<bool>) -> Result<Self> {
        let arrangement = Arrangement { zeros };
        arrangement.check_pairs()?;
        Ok(arrangement)
    }

    /// Parses the textual form, `*` for a nonzero entry and `0` for a zero,
    /// e.g. `"**00*"`.
    pub fn parse(text: &str) -> Result<Self> {
        let zeros = text
            .trim()
            .chars()
            .map(|c| match c {
                '*' => Ok(false),
                '0' => Ok(true),
                other => Err(Error::InvalidArrangement(format!(
                    "unexpected character {other:?} in {text:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_zero_mask(zeros)
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn zero_mask(&self) -> &[bool] {
        &self.zeros
    }

    pub fn nonzero_count(&self) -> usize {
        self.zeros.iter().filter(|z| !**z).count()
    }

    /// Positions of the nonzero entries, in order.
    pub fn slots(&self) -> impl Iterator<Item = usize> + '_ {
        self.zeros
            .iter()
            .enumerate()
            .filter(|(_, z)| !**z)
            .map(|(i, _)| i)
    }

    /// Every maximal cyclic run of zeros has even length.
    pub fn pairs_intact(&self) -> bool {
        let len = self.zeros.len();
        let Some(start) = self.zeros.iter().position(|z| !*z) else {
            // all zeros: one cyclic run
            return len.is_multiple_of(2);
        };
        let mut run = 0;
        for step in 1..=len {
            if self.zeros[(start + step) % len] {
                run += 1;
            } else {
                if run % 2 == 1 {
                    return false;
                }
                run = 0;
            }
        }
        true
    }

    fn check_pairs(&self) -> Result<()> {
        if self.pairs_intact() {
            Ok(())
        } else {
            Err(Error::InvalidArrangement(format!(
                "{self} splits a couple of zeros"
            )))
        }
    }

    /// Cyclic left shift by `by` positions.
    pub fn rotated(&self, by: usize) -> Arrangement {
        let len = self.zeros.len();
        Arrangement {
            zeros: (0..len).map(|i| self.zeros[(i + by) % len]).collect(),
        }
    }

    /// Representative of the rotation class: the lexicographically least
    /// rotation of the mask, which puts nonzero entries first.
    pub fn canonical(&self) -> Arrangement {
        (0..self.zeros.len().max(1))
            .map(|r| self.rotated(r))
            .min()
            .unwrap_or_else(|| self.clone())
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .zeros
            .iter()
            .map(|z| if *z { '0' } else { '*' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arrangement({self})")
    }
}

/// All rotation classes of zero-couple placements for row `k`, each given by
/// its canonical representative, sorted.
pub fn enumerate_arrangements(table: Table, n: usize, k: usize) -> Result<Vec<Arrangement>> {
    let (len, slots) = table.geometry(n, k)?;
    let zeros = len - slots;
    if zeros % 2 == 1 {
        return Err(Error::InvalidArrangement(format!(
            "{zeros} zeros cannot be grouped in couples"
        )));
    }
    let mut out = BTreeSet::new();
    let mut gaps = alloc::vec![0usize; slots];
    compositions(zeros / 2, &mut gaps, 0, &mut |gaps| {
        out.insert(layout(gaps).canonical());
    });
    Ok(out.into_iter().collect())
}

/// Every placement (not reduced by rotation) whose first entry is nonzero.
pub fn all_placements(table: Table, n: usize, k: usize) -> Result<Vec<Arrangement>> {
    let (len, slots) = table.geometry(n, k)?;
    let zeros = len - slots;
    if zeros % 2 == 1 {
        return Err(Error::InvalidArrangement(format!(
            "{zeros} zeros cannot be grouped in couples"
        )));
    }
    let mut out = Vec::new();
    let mut gaps = alloc::vec![0usize; slots];
    compositions(zeros / 2, &mut gaps, 0, &mut |gaps| out.push(layout(gaps)));
    Ok(out)
}

// Distributes `remaining` couples over gaps[at..].
fn compositions(remaining: usize, gaps: &mut [usize], at: usize, emit: &mut impl FnMut(&[usize])) {
    if at + 1 == gaps.len() {
        gaps[at] = remaining;
        emit(gaps);
        return;
    }
    for here in 0..=remaining {
        gaps[at] = here;
        compositions(remaining - here, gaps, at + 1, emit);
    }
}

// gaps[j] couples of zeros follow nonzero slot j
fn layout(gaps: &[usize]) -> Arrangement {
    let mut zeros = Vec::new();
    for &g in gaps {
        zeros.push(false);
        zeros.extend(core::iter::repeat_n(true, 2 * g));
    }
    Arrangement { zeros }
}

/// One row of a parameter table, with its seed solution when the table
/// provides one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedRow {
    pub table: Table,
    pub n: usize,
    pub k: usize,
    pub params: ParamVector,
    pub components: Option<Vec<RatFunc>>,
    pub arrangement: Arrangement,
}

impl SeedRow {
    /// The seed as a P4 symmetric-form solution tuple, when it carries one.
    pub fn solution(&self) -> Option<SolutionTuple> {
        let components = self.components.clone()?;
        SolutionTuple::new(SystemSpec::p4ny(self.n), self.params.clone(), components).ok()
    }
}

fn check_shape(arrangement: &Arrangement, len: usize, slots: usize) -> Result<()> {
    if arrangement.len() != len || arrangement.nonzero_count() != slots {
        return Err(Error::InvalidArrangement(format!(
            "{arrangement} does not have length {len} with {slots} nonzero entries"
        )));
    }
    arrangement.check_pairs()
}

/// Row `k` of the P4 table for member `n`: `2k + 1` entries `1/(2k+1)` with
/// seed components `t/(2k+1)`, zeros placed by `arrangement`.
pub fn p4_seed(n: usize, k: usize, arrangement: &Arrangement) -> Result<SeedRow> {
    SystemSpec::p4ny(n).validate()?;
    let (len, slots) = Table::P4.geometry(n, k)?;
    check_shape(arrangement, len, slots)?;
    let value = Scalar::new(One::one(), (2 * k as i64 + 1).into());
    let mut alphas = alloc::vec![Scalar::zero(); n];
    let mut components = alloc::vec![RatFunc::zero(); n];
    for i in arrangement.slots() {
        alphas[i] = value.clone();
        components[i] = RatFunc::x().scale(&value);
    }
    Ok(SeedRow {
        table: Table::P4,
        n,
        k,
        params: ParamVector::new(alphas),
        components: Some(components),
        arrangement: arrangement.clone(),
    })
}

/// `a0` lies outside `[0, 1/(k+1)]`, the range used by the normalized
/// classification. Algebraically harmless.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeViolation {
    pub a0: Scalar,
    pub upper: Scalar,
}

/// Row `k` of the P5 table for member `n` with free entry `a0`.
pub fn p5_alpha_row(
    n: usize,
    k: usize,
    a0: &Scalar,
    arrangement: &Arrangement,
) -> Result<(ParamVector, Option<RangeViolation>)> {
    let (len, slots) = Table::P5.geometry(n, k)?;
    check_shape(arrangement, len, slots)?;
    let upper = Scalar::new(One::one(), (k as i64 + 1).into());
    let partner = &upper - a0;
    let mut alphas = alloc::vec![Scalar::zero(); len];
    for (j, i) in arrangement.slots().enumerate() {
        alphas[i] = if j % 2 == 0 { a0.clone() } else { partner.clone() };
    }
    let warning = (a0.is_negative() || a0 > &upper).then(|| RangeViolation {
        a0: a0.clone(),
        upper,
    });
    Ok((ParamVector::new(alphas), warning))
}

/// Constant candidate for the P5 symmetric system, accepted only when the
/// residual oracle returns all zeros.
///
/// Under the diagonal coupling, `f_i = a_i C_p / A_p` (`p = i mod 2`). When
/// `A_p = 0` with every parity-`p` alpha zero, the parity-`p` entries only
/// have to sum to `C_p`; `C_p` is shared equally over each nonempty subset of
/// them in turn (the `a0 -> 0` limit of a row is one of these).
/// Under the literal coupling `f_0` is fixed by `A_p f_0 = a_i C_p` and the
/// remaining entries follow the diagonal formula.
pub fn p5_constant_seed(spec: &SystemSpec, p: &ParamVector) -> Result<SolutionTuple> {
    if spec.kind != SystemKind::P5Ny {
        return Err(Error::WrongSystem {
            expected: SystemKind::P5Ny,
            found: spec.kind,
        });
    }
    spec.validate()?;
    let (c0, c1) = spec.constants()?;
    if c0.is_zero() || c1.is_zero() {
        return Err(Error::InvalidSystem("constant seeds need C0 != 0 and C1 != 0".into()));
    }
    let m = spec.arity();
    if p.len() != m {
        return Err(Error::ArityMismatch {
            expected: m,
            found: p.len(),
        });
    }
    let consts = [c0, c1];
    let a_sums = [p.parity_sum(0), p.parity_sum(1)];

    // per parity: either the forced values or the list of equal-split choices
    let mut choices: [Vec<Vec<Scalar>>; 2] = [Vec::new(), Vec::new()];
    for parity in 0..2 {
        let idx: Vec<usize> = (parity..m).step_by(2).collect();
        if !a_sums[parity].is_zero() {
            choices[parity].push(
                idx.iter()
                    .map(|&i| &p[i] * consts[parity] / &a_sums[parity])
                    .collect(),
            );
        } else if idx.iter().any(|&i| !p[i].is_zero()) {
            return Err(Error::ZeroA { parity });
        } else {
            // every nonempty subset, sharing C_p equally
            for mask in 1u64..(1u64 << idx.len()) {
                let share = consts[parity] / Scalar::from_integer(mask.count_ones().into());
                choices[parity].push(
                    (0..idx.len())
                        .map(|j| if mask >> j & 1 == 1 { share.clone() } else { Scalar::zero() })
                        .collect(),
                );
            }
        }
    }

    let mut first_failure = None;
    for even in &choices[0] {
        for odd in &choices[1] {
            let mut values: Vec<Scalar> = (0..m)
                .map(|i| if i % 2 == 0 { even[i / 2].clone() } else { odd[i / 2].clone() })
                .collect();
            if spec.variant == CouplingVariant::LiteralF0 {
                values[0] = if !a_sums[0].is_zero() {
                    &p[0] * c0 / &a_sums[0]
                } else if !a_sums[1].is_zero() {
                    &p[1] * c1 / &a_sums[1]
                } else {
                    values[0].clone()
                };
            }
            let components = values.into_iter().map(RatFunc::constant).collect();
            let candidate = SolutionTuple::new(spec.clone(), p.clone(), components)?;
            let residual = residual_p5ny(&candidate)?;
            match residual.iter().position(|r| !r.is_zero()) {
                None => return Ok(candidate),
                Some(index) if first_failure.is_none() => {
                    let value = residual[index].eval(&int(1)).unwrap_or_else(Scalar::zero);
                    let phi = (index < m).then(|| {
                        p5_phi(&candidate.components, spec.n, index)
                            .as_constant()
                            .unwrap_or_else(Scalar::zero)
                    });
                    first_failure = Some(Error::NoConstantSolution {
                        index,
                        residual: Box::new(value),
                        phi: phi.map(Box::new),
                    });
                }
                Some(_) => {}
            }
        }
    }
    Err(first_failure.expect("at least one candidate is always built"))
}
