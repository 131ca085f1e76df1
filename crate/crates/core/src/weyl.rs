//! Bäcklund transformations: the generators of the extended affine Weyl group
//! acting on (parameters, solution) pairs of the P4 and P5 symmetric forms.
//!
//! Parameter action of the reflection `s_i` (indices cyclic):
//! `a_i -> -a_i`, `a_{i±1} -> a_{i±1} + a_i`, others fixed.
//!
//! Solution action: `f_{i+1} -> f_{i+1} + q`, `f_{i-1} -> f_{i-1} - q` with
//! `q = a_i / f_i` for P4 and `q = a_i / (z f_i)` for P5. The rotation `pi`
//! shifts every index down by one (`a_i -> a_{i+1}`); on the P5 system it
//! also swaps `C_0` and `C_1`, since the parities trade places.
//!
//! Words are applied left to right.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{RatFunc, Scalar};
use crate::hierarchy::{cyclic, is_solution, ParamVector, SolutionTuple, SystemKind};

pub const DEFAULT_DEGREE_CAP: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    S(usize),
    Pi,
    PiInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::S(i) => Letter::S(i),
            Letter::Pi => Letter::PiInv,
            Letter::PiInv => Letter::Pi,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::S(i) => write!(f, "s{i}"),
            Letter::Pi => f.write_str("pi"),
            Letter::PiInv => f.write_str("pi_inv"),
        }
    }
}

/// A sequence of generators, applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord {
    pub letters: Vec<Letter>,
}

impl WeylWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        WeylWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Parses comma-separated letters such as `"s0,s1,pi,pi_inv"` and checks
    /// the reflection indices against `arity`.
    pub fn parse(text: &str, arity: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let letter = match token {
                "pi" => Letter::Pi,
                "pi_inv" | "pinv" | "pi^-1" => Letter::PiInv,
                _ => {
                    let index = token
                        .strip_prefix('s')
                        .and_then(|d| d.parse::<usize>().ok())
                        .ok_or_else(|| Error::InvalidLetter(String::from(token)))?;
                    Letter::S(index)
                }
            };
            letters.push(letter);
        }
        let word = WeylWord { letters };
        word.validate(arity)?;
        Ok(word)
    }

    pub fn validate(&self, arity: usize) -> Result<()> {
        for letter in &self.letters {
            if let Letter::S(i) = letter {
                if *i >= arity {
                    return Err(Error::InvalidLetter(format!(
                        "s{i} (system has {arity} generators)"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn then(&self, letter: Letter) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.push(letter);
        WeylWord { letters }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, letter) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// Which neighbour receives `+q` under `s_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConvention {
    /// `f_{i+1} + q`, `f_{i-1} - q`
    Forward,
    /// `f_{i+1} - q`, `f_{i-1} + q`
    Backward,
}

impl SignConvention {
    /// The convention under which the table seeds stay solutions, for both
    /// the P4 and the P5 (diagonal coupling) systems.
    pub const VERIFIED: SignConvention = SignConvention::Forward;
}

pub fn reflect_params(i: usize, p: &ParamVector) -> ParamVector {
    let m = p.len();
    let a = p[i].clone();
    let mut alphas = p.as_slice().to_vec();
    if a.is_zero() {
        return p.clone();
    }
    alphas[cyclic(i, 1, m)] += &a;
    alphas[cyclic(i, -1, m)] += &a;
    alphas[i] = -a;
    ParamVector::new(alphas)
}

/// `a_i -> a_{i+1}` (`forward`) or `a_i -> a_{i-1}`.
pub fn rotate_params(p: &ParamVector, forward: bool) -> ParamVector {
    let m = p.len();
    let shift = if forward { 1 } else { -1 };
    ParamVector::new((0..m).map(|i| p[cyclic(i, shift, m)].clone()).collect())
}

pub fn apply_letter_params(letter: Letter, p: &ParamVector) -> ParamVector {
    match letter {
        Letter::S(i) => reflect_params(i, p),
        Letter::Pi => rotate_params(p, true),
        Letter::PiInv => rotate_params(p, false),
    }
}

pub fn apply_word_params(word: &WeylWord, p: &ParamVector) -> ParamVector {
    word.letters
        .iter()
        .fold(p.clone(), |acc, &l| apply_letter_params(l, &acc))
}

fn check_symmetric(s: &SolutionTuple) -> Result<()> {
    match s.system.kind {
        SystemKind::P4Ny => Ok(()),
        SystemKind::P5Ny => {
            if s.params.h().is_one() {
                Ok(())
            } else {
                Err(Error::InvalidSystem(
                    "P5 reflections require the parameters to sum to 1".into(),
                ))
            }
        }
        other => Err(Error::InvalidSystem(format!(
            "Bäcklund generators act on the symmetric forms only, not {other:?}"
        ))),
    }
}

/// `s_i` on a P4 or P5 symmetric-form tuple.
pub fn apply_reflection(i: usize, s: &SolutionTuple) -> Result<SolutionTuple> {
    apply_reflection_with(SignConvention::VERIFIED, i, s)
}

pub fn apply_reflection_with(
    convention: SignConvention,
    i: usize,
    s: &SolutionTuple,
) -> Result<SolutionTuple> {
    check_symmetric(s)?;
    s.check_arity()?;
    let m = s.components.len();
    if i >= m {
        return Err(Error::InvalidLetter(format!("s{i} (system has {m} generators)")));
    }
    let a = &s.params[i];
    let params = reflect_params(i, &s.params);
    if a.is_zero() {
        return Ok(SolutionTuple {
            params,
            ..s.clone()
        });
    }
    let pivot = &s.components[i];
    if pivot.is_zero() {
        return Err(Error::ZeroPivot {
            index: i,
            prefix_len: 0,
        });
    }
    let denom = match s.system.kind {
        SystemKind::P5Ny => &RatFunc::x() * pivot,
        _ => pivot.clone(),
    };
    let q = RatFunc::constant(a.clone()).checked_div(&denom)?;
    let (plus, minus) = match convention {
        SignConvention::Forward => (cyclic(i, 1, m), cyclic(i, -1, m)),
        SignConvention::Backward => (cyclic(i, -1, m), cyclic(i, 1, m)),
    };
    let mut components = s.components.clone();
    components[plus] = &components[plus] + &q;
    components[minus] = &components[minus] - &q;
    Ok(SolutionTuple {
        components,
        params,
        system: s.system.clone(),
    })
}

/// `pi` (or its inverse) on a symmetric-form tuple.
pub fn apply_rotation(s: &SolutionTuple, forward: bool) -> Result<SolutionTuple> {
    check_symmetric(s)?;
    s.check_arity()?;
    let m = s.components.len();
    let shift = if forward { 1 } else { -1 };
    let components = (0..m)
        .map(|i| s.components[cyclic(i, shift, m)].clone())
        .collect();
    let mut system = s.system.clone();
    if system.kind == SystemKind::P5Ny {
        core::mem::swap(&mut system.c0, &mut system.c1);
    }
    Ok(SolutionTuple {
        components,
        params: rotate_params(&s.params, forward),
        system,
    })
}

pub fn apply_letter(letter: Letter, s: &SolutionTuple) -> Result<SolutionTuple> {
    match letter {
        Letter::S(i) => apply_reflection(i, s),
        Letter::Pi => apply_rotation(s, true),
        Letter::PiInv => apply_rotation(s, false),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordOptions {
    /// Run the residual oracle after every letter.
    pub verify_each: bool,
    pub degree_cap: usize,
}

impl Default for WordOptions {
    fn default() -> Self {
        WordOptions {
            verify_each: false,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BtResult {
    pub params: ParamVector,
    pub solution: SolutionTuple,
    /// Outcome of the final residual check.
    pub verified: bool,
    pub word: WeylWord,
}

/// Applies `word` letter by letter. Errors carry the number of letters that
/// were applied successfully before the failure.
pub fn apply_word(word: &WeylWord, s: &SolutionTuple, options: WordOptions) -> Result<BtResult> {
    word.validate(s.components.len())?;
    let mut current = s.clone();
    for (k, &letter) in word.letters.iter().enumerate() {
        current = apply_letter(letter, &current).map_err(|e| match e {
            Error::ZeroPivot { index, .. } => Error::ZeroPivot {
                index,
                prefix_len: k,
            },
            other => other,
        })?;
        let degree = current.total_degree();
        if degree > options.degree_cap {
            return Err(Error::DegreeOverflow {
                degree,
                cap: options.degree_cap,
                prefix_len: k + 1,
            });
        }
        if options.verify_each && !is_solution(&current)? {
            return Err(Error::VerificationFailed { letter_index: k });
        }
    }
    let verified = is_solution(&current)?;
    Ok(BtResult {
        params: current.params.clone(),
        solution: current,
        verified,
        word: word.clone(),
    })
}

/// Parameter images of all generators of a system with `arity` entries,
/// in a fixed letter order: `s_0 .. s_{m-1}, pi, pi_inv`.
pub fn generators(arity: usize) -> impl Iterator<Item = Letter> {
    (0..arity)
        .map(Letter::S)
        .chain([Letter::Pi, Letter::PiInv])
}

/// `true` if every entry of `p` lies in `[0, 1]`.
pub fn in_unit_box(p: &ParamVector) -> bool {
    let one = Scalar::one();
    p.as_slice().iter().all(|a| !a.is_negative() && a <= &one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, ratio};
    use crate::hierarchy::{CouplingVariant, SystemSpec};
    use crate::seeds::{p4_seed, p5_alpha_row, p5_constant_seed, Arrangement};
    use alloc::vec;

    fn seed3() -> SolutionTuple {
        p4_seed(3, 0, &Arrangement::trivial(3, 1))
            .unwrap()
            .solution()
            .unwrap()
    }

    fn rcp(c: i64) -> RatFunc {
        RatFunc::monomial(int(c), -1)
    }

    #[test]
    fn first_reflection_example() {
        let out = apply_reflection(0, &seed3()).unwrap();
        assert_eq!(out.params, ParamVector::from_ratios(&[(-1, 1), (1, 1), (1, 1)]));
        assert_eq!(out.components, vec![RatFunc::x(), rcp(1), rcp(-1)]);
        assert!(is_solution(&out).unwrap());
    }

    #[test]
    fn sign_convention_is_discriminated_by_the_oracle() {
        let backward = apply_reflection_with(SignConvention::Backward, 0, &seed3()).unwrap();
        assert!(!is_solution(&backward).unwrap());
        let forward = apply_reflection_with(SignConvention::Forward, 0, &seed3()).unwrap();
        assert!(is_solution(&forward).unwrap());
    }

    #[test]
    fn p5_sign_convention() {
        let spec = SystemSpec::p5ny(1, int(1), int(2), CouplingVariant::DiagonalFi);
        let (p, _) = p5_alpha_row(1, 0, &ratio(1, 3), &Arrangement::trivial(4, 2)).unwrap();
        let seed = p5_constant_seed(&spec, &p).unwrap();
        for i in [0, 1] {
            let fwd = apply_reflection_with(SignConvention::Forward, i, &seed).unwrap();
            assert!(is_solution(&fwd).unwrap(), "s{i}");
            let bwd = apply_reflection_with(SignConvention::Backward, i, &seed).unwrap();
            assert!(!is_solution(&bwd).unwrap(), "s{i}");
        }
    }

    #[test]
    fn zero_alpha_reflection_is_identity_on_solution() {
        let s = seed3();
        let out = apply_reflection(1, &s).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn zero_pivot() {
        let mut s = seed3();
        s.params = ParamVector::from_ratios(&[(0, 1), (1, 1), (0, 1)]);
        assert_eq!(
            apply_reflection(1, &s),
            Err(Error::ZeroPivot {
                index: 1,
                prefix_len: 0
            })
        );
        let w = WeylWord::parse("s0,s1", 3).unwrap();
        assert_eq!(
            apply_word(&w, &s, WordOptions::default()),
            Err(Error::ZeroPivot {
                index: 1,
                prefix_len: 1
            })
        );
    }

    #[test]
    fn involution_example() {
        let s = seed3();
        let twice = apply_reflection(0, &apply_reflection(0, &s).unwrap()).unwrap();
        assert_eq!(twice, s);
    }

    #[test]
    fn rotation_examples() {
        let s = seed3();
        let r = apply_rotation(&s, true).unwrap();
        assert_eq!(r.params, ParamVector::from_ratios(&[(0, 1), (0, 1), (1, 1)]));
        assert_eq!(r.components, vec![RatFunc::zero(), RatFunc::zero(), RatFunc::x()]);
        assert!(is_solution(&r).unwrap());
        let back = apply_rotation(&r, false).unwrap();
        assert_eq!(back, s);
        let full = (0..3).try_fold(s.clone(), |acc, _| apply_rotation(&acc, true)).unwrap();
        assert_eq!(full, s);
    }

    #[test]
    fn words() {
        let s = seed3();
        let empty = apply_word(&WeylWord::empty(), &s, WordOptions::default()).unwrap();
        assert!(empty.verified);
        assert_eq!(empty.solution, s);

        let w = WeylWord::parse("s0,s1", 3).unwrap();
        let out = apply_word(&w, &s, WordOptions { verify_each: true, ..Default::default() }).unwrap();
        assert!(out.verified);
        assert!(out.solution.total_degree() > s.total_degree());

        let w = WeylWord::parse("s0,s0", 3).unwrap();
        assert_eq!(apply_word(&w, &s, WordOptions::default()).unwrap().solution, s);
    }

    #[test]
    fn degree_cap() {
        let w = WeylWord::parse("s0,s1,s2,s0,s1,s2", 3).unwrap();
        let opts = WordOptions {
            verify_each: false,
            degree_cap: 3,
        };
        assert!(matches!(
            apply_word(&w, &seed3(), opts),
            Err(Error::DegreeOverflow { cap: 3, .. })
        ));
    }

    #[test]
    fn literal_p5_variant_fails_verification() {
        let spec = SystemSpec::p5ny(1, int(1), int(1), CouplingVariant::LiteralF0);
        // a tuple that does solve the literal system: f = (1/2, 1/2, 1/2, 1/2)
        let p = ParamVector::from_ratios(&[(1, 4), (1, 4), (1, 4), (1, 4)]);
        let half = RatFunc::constant(ratio(1, 2));
        let s = SolutionTuple::new(spec, p, vec![half; 4]).unwrap();
        assert!(is_solution(&s).unwrap());
        let w = WeylWord::parse("s0", 4).unwrap();
        let opts = WordOptions { verify_each: true, ..Default::default() };
        assert_eq!(
            apply_word(&w, &s, opts),
            Err(Error::VerificationFailed { letter_index: 0 })
        );
    }

    #[test]
    fn parse_and_display() {
        let w = WeylWord::parse(" s0, pi ,s2,pi_inv", 3).unwrap();
        assert_eq!(
            w.letters,
            vec![Letter::S(0), Letter::Pi, Letter::S(2), Letter::PiInv]
        );
        assert_eq!(w.to_string(), "s0,pi,s2,pi_inv");
        assert_eq!(WeylWord::parse("", 3).unwrap(), WeylWord::empty());
        assert!(matches!(WeylWord::parse("s9", 3), Err(Error::InvalidLetter(_))));
        assert!(matches!(WeylWord::parse("t1", 3), Err(Error::InvalidLetter(_))));
        assert_eq!(w.inverse().to_string(), "pi,s2,pi_inv,s0");
    }

    #[test]
    fn dressing_chain_has_no_generators() {
        let s = SolutionTuple::new(
            SystemSpec::p4dc(3),
            ParamVector::from_ratios(&[(1, 1), (0, 1), (0, 1)]),
            vec![RatFunc::x(), RatFunc::zero(), RatFunc::zero()],
        )
        .unwrap();
        assert!(matches!(apply_reflection(0, &s), Err(Error::InvalidSystem(_))));
    }

    #[test]
    fn unit_box() {
        assert!(in_unit_box(&ParamVector::from_ratios(&[(1, 1), (0, 1), (0, 1)])));
        assert!(!in_unit_box(&ParamVector::from_ratios(&[(-1, 1), (1, 1), (1, 1)])));
        assert!(!in_unit_box(&ParamVector::from_ratios(&[(3, 2), (-1, 2), (0, 1)])));
    }
}
