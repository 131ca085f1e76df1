//! Classification of rational parameter vectors against the seed tables.
//!
//! With `h = 1` the unit box `0 <= a_i <= 1` is the closed fundamental alcove
//! of the affine Weyl group, so an orbit meets it only in the rotations of a
//! single point. Reaching the box therefore settles the question: either a
//! rotation of that point is a table row, or no orbit element is.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::Scalar;
use crate::hierarchy::{is_solution, ParamVector, SolutionTuple, SystemKind, SystemSpec};
use crate::seeds::{enumerate_arrangements, p4_seed, p5_alpha_row, p5_constant_seed, Arrangement, Table};
use crate::weyl::{apply_letter_params, apply_word, generators, in_unit_box, BtResult, Letter, WeylWord, WordOptions};

pub const DEFAULT_MAX_DEPTH: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Admits,
    NotInTables,
    UndecidedAtDepth,
}

/// A table row matched exactly, with the zeros at the positions they occupy
/// in the matched vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMatch {
    pub table: Table,
    pub k: usize,
    pub arrangement: Arrangement,
    /// The free entry of a P5 row.
    pub a0: Option<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub status: Status,
    pub witness: Option<BtResult>,
    pub normalized_params: ParamVector,
    pub matched_row: Option<TableMatch>,
    pub search_depth_used: usize,
}

fn table_for(kind: SystemKind) -> Result<Table> {
    match kind {
        SystemKind::P4Ny => Ok(Table::P4),
        SystemKind::P5Ny => Ok(Table::P5),
        other => Err(Error::InvalidSystem(format!(
            "classification is available for the symmetric forms only, not {other:?}"
        ))),
    }
}

fn table_member(table: Table, len: usize) -> Option<usize> {
    match table {
        Table::P4 => (len >= 3 && len % 2 == 1).then_some(len),
        Table::P5 => (len >= 4 && len.is_multiple_of(2)).then(|| (len - 2) / 2),
    }
}

fn placements(arrangement: &Arrangement) -> BTreeSet<Arrangement> {
    (0..arrangement.len()).map(|r| arrangement.rotated(r)).collect()
}

/// Exact comparison of `p` with every row, arrangement and rotation of the
/// table. P5 rows take their free entry from the first nonzero slot.
pub fn match_tables(p: &ParamVector, table: Table) -> Option<TableMatch> {
    let n = table_member(table, p.len())?;
    for k in 0..table.rows(n) {
        let Ok(classes) = enumerate_arrangements(table, n, k) else {
            continue;
        };
        for class in &classes {
            for arrangement in placements(class) {
                let (row, a0) = match table {
                    Table::P4 => match p4_seed(n, k, &arrangement) {
                        Ok(seed) => (seed.params, None),
                        Err(_) => continue,
                    },
                    Table::P5 => {
                        let first = arrangement.slots().next().expect("rows have slots");
                        let a0 = p[first].clone();
                        match p5_alpha_row(n, k, &a0, &arrangement) {
                            Ok((row, _)) => (row, Some(a0)),
                            Err(_) => continue,
                        }
                    }
                };
                if &row == p {
                    return Some(TableMatch {
                        table,
                        k,
                        arrangement,
                        a0,
                    });
                }
            }
        }
    }
    None
}

/// Breadth-first search over the parameter action for a representative in
/// the unit box. Ties are broken by generator order `s_0, .., pi, pi_inv`,
/// so the returned word is the first shortest one in that order.
pub fn normalize_real(p: &ParamVector, max_depth: usize) -> Result<(ParamVector, WeylWord)> {
    if !p.h().is_one() {
        return Err(Error::InvalidSystem(format!(
            "normalization needs the parameters to sum to 1, got {}",
            p.h()
        )));
    }
    let mut visited = BTreeSet::new();
    visited.insert(p.clone());
    let mut frontier = VecDeque::new();
    frontier.push_back((p.clone(), WeylWord::empty()));
    for depth in 0..=max_depth {
        let mut next = VecDeque::new();
        for (q, word) in &frontier {
            if in_unit_box(q) {
                return Ok((q.clone(), word.clone()));
            }
        }
        if depth == max_depth {
            break;
        }
        for (q, word) in frontier {
            for letter in generators(q.len()) {
                if let Letter::S(i) = letter {
                    if q[i].is_zero() {
                        continue;
                    }
                }
                let image = apply_letter_params(letter, &q);
                if visited.insert(image.clone()) {
                    next.push_back((image, word.then(letter)));
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Err(Error::DepthExhausted {
        frontier: frontier.len(),
    })
}

// The seed living at `p_star`, for the system obtained from `spec` by `word`.
fn seed_at(spec: &SystemSpec, word: &WeylWord, matched: &TableMatch, p_star: &ParamVector) -> Result<SolutionTuple> {
    match matched.table {
        Table::P4 => {
            let n = spec.n;
            let seed = p4_seed(n, matched.k, &matched.arrangement)?;
            seed.solution()
                .ok_or_else(|| Error::InvalidSystem("P4 seed without components".into()))
        }
        Table::P5 => {
            let mut shifted = spec.clone();
            let rotations = word
                .letters
                .iter()
                .filter(|l| matches!(l, Letter::Pi | Letter::PiInv))
                .count();
            if rotations % 2 == 1 {
                core::mem::swap(&mut shifted.c0, &mut shifted.c1);
            }
            p5_constant_seed(&shifted, p_star)
        }
    }
}

/// Normalizes `p`, matches the representative against the tables and, on a
/// match, transports the seed back to `p` and checks it with the oracle.
pub fn classify(spec: &SystemSpec, p: &ParamVector, max_depth: usize) -> Result<ClassificationVerdict> {
    let table = table_for(spec.kind)?;
    spec.validate()?;
    if p.len() != spec.arity() {
        return Err(Error::ArityMismatch {
            expected: spec.arity(),
            found: p.len(),
        });
    }
    let (p_star, word) = match normalize_real(p, max_depth) {
        Ok(found) => found,
        Err(Error::DepthExhausted { .. }) => {
            return Ok(ClassificationVerdict {
                status: Status::UndecidedAtDepth,
                witness: None,
                normalized_params: p.clone(),
                matched_row: None,
                search_depth_used: max_depth,
            })
        }
        Err(e) => return Err(e),
    };
    let depth = word.len();
    let Some(matched) = match_tables(&p_star, table) else {
        return Ok(ClassificationVerdict {
            status: Status::NotInTables,
            witness: None,
            normalized_params: p_star,
            matched_row: None,
            search_depth_used: depth,
        });
    };
    let seed = seed_at(spec, &word, &matched, &p_star)?;
    if !is_solution(&seed)? {
        return Err(Error::VerificationFailed { letter_index: 0 });
    }
    let witness = match apply_word(&word.inverse(), &seed, WordOptions::default()) {
        Ok(result) if result.verified => Some(result),
        Ok(_) => return Err(Error::VerificationFailed { letter_index: word.len() }),
        Err(Error::DegreeOverflow { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(ClassificationVerdict {
        status: Status::Admits,
        witness,
        normalized_params: p_star,
        matched_row: Some(matched),
        search_depth_used: depth,
    })
}

/// All vectors of length `m` with entries in `(1/d) Z`, each within
/// `[lo, hi]` (given in units of `1/d`), summing to 1.
pub fn lattice_vectors(m: usize, d: i64, lo: i64, hi: i64) -> Vec<ParamVector> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn go(m: usize, d: i64, lo: i64, hi: i64, left: i64, current: &mut Vec<i64>, out: &mut Vec<ParamVector>) {
        if current.len() + 1 == m {
            if (lo..=hi).contains(&left) {
                current.push(left);
                out.push(ParamVector::new(
                    current.iter().map(|&c| Scalar::new(c.into(), d.into())).collect(),
                ));
                current.pop();
            }
            return;
        }
        for c in lo..=hi {
            current.push(c);
            go(m, d, lo, hi, left - c, current, out);
            current.pop();
        }
    }
    if m > 0 {
        go(m, d, lo, hi, d, &mut current, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, ratio, RatFunc};
    use crate::hierarchy::CouplingVariant;
    use crate::weyl::apply_word_params;
    use alloc::vec;

    fn pv(pairs: &[(i64, i64)]) -> ParamVector {
        ParamVector::from_ratios(pairs)
    }

    #[test]
    fn match_examples() {
        let m = match_tables(&pv(&[(1, 3), (1, 3), (1, 3)]), Table::P4).unwrap();
        assert_eq!((m.k, m.arrangement.to_string().as_str()), (1, "***"));

        let m = match_tables(&pv(&[(1, 3), (1, 3), (0, 1), (0, 1), (1, 3)]), Table::P4).unwrap();
        assert_eq!(m.k, 1);
        assert_eq!(m.arrangement.to_string(), "**00*");
        let seed = p4_seed(5, 1, &m.arrangement).unwrap().solution().unwrap();
        assert!(is_solution(&seed).unwrap());

        assert_eq!(match_tables(&pv(&[(1, 2), (1, 2), (0, 1)]), Table::P4), None);
        // a split couple is not a row
        assert_eq!(
            match_tables(&pv(&[(1, 3), (0, 1), (1, 3), (0, 1), (1, 3)]), Table::P4),
            None
        );
        // wrong length for the table
        assert_eq!(match_tables(&pv(&[(1, 2), (1, 2)]), Table::P4), None);
    }

    #[test]
    fn match_p5_rows() {
        let m = match_tables(&pv(&[(1, 3), (2, 3), (0, 1), (0, 1)]), Table::P5).unwrap();
        assert_eq!((m.k, m.a0), (0, Some(ratio(1, 3))));
        let m = match_tables(&pv(&[(0, 1), (0, 1), (1, 5), (4, 5)]), Table::P5).unwrap();
        assert_eq!(m.arrangement.to_string(), "00**");
        // a0 = 0 leaves only the partner entries
        let m = match_tables(&pv(&[(0, 1), (1, 2), (0, 1), (1, 2), (0, 1), (0, 1)]), Table::P5).unwrap();
        assert_eq!(m.k, 1);
        assert_eq!(match_tables(&pv(&[(1, 3), (1, 3), (1, 3), (0, 1)]), Table::P5), None);
    }

    #[test]
    fn normalize_examples() {
        let p = pv(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(normalize_real(&p, 16).unwrap(), (p.clone(), WeylWord::empty()));

        let (q, w) = normalize_real(&pv(&[(-1, 1), (1, 1), (1, 1)]), 16).unwrap();
        assert_eq!(q, p);
        assert_eq!(w.to_string(), "s0");

        let start = pv(&[(5, 1), (-2, 1), (-2, 1)]);
        let (q, w) = normalize_real(&start, 12).unwrap();
        assert!(w.len() <= 12);
        assert!(in_unit_box(&q));
        assert_eq!(apply_word_params(&w, &start), q);
    }

    #[test]
    fn normalize_errors() {
        assert!(matches!(
            normalize_real(&pv(&[(1, 1), (1, 1), (0, 1)]), 4),
            Err(Error::InvalidSystem(_))
        ));
        assert!(matches!(
            normalize_real(&pv(&[(9, 1), (-4, 1), (-4, 1)]), 1),
            Err(Error::DepthExhausted { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let spec = SystemSpec::p4ny(3);
        let v = classify(&spec, &pv(&[(1, 1), (0, 1), (0, 1)]), DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(v.status, Status::Admits);
        let w = v.witness.unwrap();
        assert_eq!(w.solution.components, vec![RatFunc::x(), RatFunc::zero(), RatFunc::zero()]);

        let v = classify(&spec, &pv(&[(1, 2), (1, 2), (0, 1)]), DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(v.status, Status::NotInTables);
        assert!(v.witness.is_none());

        let v = classify(&spec, &pv(&[(-1, 1), (1, 1), (1, 1)]), DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(v.status, Status::Admits);
        let w = v.witness.unwrap();
        assert_eq!(w.word.to_string(), "s0");
        assert_eq!(
            w.solution.components,
            vec![RatFunc::x(), RatFunc::monomial(int(1), -1), RatFunc::monomial(int(-1), -1)]
        );
        assert!(is_solution(&w.solution).unwrap());

        let v = classify(&spec, &pv(&[(9, 1), (-4, 1), (-4, 1)]), 1).unwrap();
        assert_eq!(v.status, Status::UndecidedAtDepth);
    }

    #[test]
    fn classify_p5() {
        let spec = SystemSpec::p5ny(1, int(1), int(2), CouplingVariant::DiagonalFi);
        let start = pv(&[(1, 1), (-2, 3), (2, 3), (0, 1)]);
        let v = classify(&spec, &start, DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(v.status, Status::Admits);
        let w = v.witness.unwrap();
        assert_eq!(w.solution.params, start);
        assert_eq!(w.solution.system, spec);
        assert!(is_solution(&w.solution).unwrap());

        let v = classify(&spec, &pv(&[(1, 4), (1, 4), (1, 4), (1, 4)]), DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(v.status, Status::Admits);
        assert_eq!(v.matched_row.unwrap().k, 1);

        // a single zero never fits a row
        let v = classify(&spec, &pv(&[(1, 2), (1, 4), (1, 4), (0, 1)]), DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(v.status, Status::NotInTables);
    }

    #[test]
    fn classify_rejects_bad_input() {
        assert!(matches!(
            classify(&SystemSpec::p4dc(3), &pv(&[(1, 1), (0, 1), (0, 1)]), 4),
            Err(Error::InvalidSystem(_))
        ));
        assert!(matches!(
            classify(&SystemSpec::p4ny(3), &pv(&[(1, 1), (0, 1)]), 4),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn lattice() {
        let all = lattice_vectors(3, 2, 0, 2);
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|p| p.h().is_one()));
    }
}
