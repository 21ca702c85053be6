//! The cobar complex of a connected graded coalgebra.
//!
//! Letters are the positive-degree basis elements of a [`CoalgebraData`];
//! a word `[l_1 | ... | l_s]` has degree `Σ (deg l_i - 1)`. The
//! differential replaces one letter at a time by the pairs of its reduced
//! coproduct, lowering that degree by exactly 1, and [`cotor`] is the
//! degreewise homology — for the coalgebras built here, the homology of
//! the loop space of the original object.
//!
//! Degree-1 basis elements would be weight-0 letters and make every
//! degree infinite-dimensional, so they are rejected up front.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::gf2::{homology_dim, Gf2Error, Gf2Matrix, Gf2MatrixBuilder};
use crate::grading::GradedDims;
use crate::hopf::CoalgebraData;

/// A cobar word: letter ids into the coalgebra's basis.
pub type CobarWord = Vec<usize>;

/// GF(2) sum of cobar words.
pub type CobarElement = BTreeSet<CobarWord>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CobarError {
    #[error("basis element `{0}` has degree 1; cobar words would not be finitely enumerable")]
    DegreeOneLetter(String),
    #[error("class mixes words of degrees {0} and {1}")]
    MixedDegrees(usize, usize),
    #[error("class is not a cycle: its differential is `{boundary}`")]
    NotACycle { boundary: String },
    #[error("cotor through degree {cap} needs the coalgebra through degree {need}, have {have}")]
    CapTooSmall {
        cap: usize,
        need: usize,
        have: usize,
    },
    #[error(transparent)]
    LinearAlgebra(#[from] Gf2Error),
}

fn check_letters(coalg: &CoalgebraData) -> Result<(), CobarError> {
    for id in 0..coalg.num_elements() {
        if coalg.degree(id) == 1 {
            return Err(CobarError::DegreeOneLetter(coalg.name(id).to_string()));
        }
    }
    Ok(())
}

/// Weight of a letter: its coalgebra degree minus 1.
fn weight(coalg: &CoalgebraData, id: usize) -> usize {
    coalg.degree(id) - 1
}

/// Degree of a word: the sum of its letter weights.
pub fn word_degree(coalg: &CoalgebraData, word: &CobarWord) -> usize {
    word.iter().map(|&l| weight(coalg, l)).sum()
}

/// All words of the given degree, ascending lexicographically by letter
/// ids. Degree 0 is the empty word alone.
pub fn words_in_degree(coalg: &CoalgebraData, n: usize) -> Vec<CobarWord> {
    let mut letters: Vec<usize> = (0..coalg.num_elements()).collect();
    letters.sort();
    let mut out = Vec::new();
    let mut current = Vec::new();
    enumerate(coalg, &letters, n, &mut current, &mut out);
    out
}

fn enumerate(
    coalg: &CoalgebraData,
    letters: &[usize],
    remaining: usize,
    current: &mut CobarWord,
    out: &mut Vec<CobarWord>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for &l in letters {
        let w = weight(coalg, l);
        if w <= remaining {
            current.push(l);
            enumerate(coalg, letters, remaining - w, current, out);
            current.pop();
        }
    }
}

/// Differential of a single word: each letter is replaced in turn by the
/// pairs of its reduced coproduct.
pub fn differential_of_word(coalg: &CoalgebraData, word: &CobarWord) -> CobarElement {
    let mut out = CobarElement::new();
    for (i, &l) in word.iter().enumerate() {
        for &(x, y) in coalg.reduced(l) {
            let mut nw = Vec::with_capacity(word.len() + 1);
            nw.extend_from_slice(&word[..i]);
            nw.push(x);
            nw.push(y);
            nw.extend_from_slice(&word[i + 1..]);
            if !out.remove(&nw) {
                out.insert(nw);
            }
        }
    }
    out
}

/// Differential of a GF(2) sum of words.
pub fn differential(coalg: &CoalgebraData, e: &CobarElement) -> CobarElement {
    let mut out = CobarElement::new();
    for word in e {
        for nw in differential_of_word(coalg, word) {
            if !out.remove(&nw) {
                out.insert(nw);
            }
        }
    }
    out
}

/// Matrix of the differential from degree `n`, with columns indexed by
/// `source` (the degree-`n` words) and rows by the degree-`n-1` words.
fn differential_matrix(
    coalg: &CoalgebraData,
    source: &[CobarWord],
    target_index: &BTreeMap<CobarWord, usize>,
) -> Gf2Matrix {
    let mut b = Gf2MatrixBuilder::new(target_index.len(), source.len());
    for (c, word) in source.iter().enumerate() {
        for nw in differential_of_word(coalg, word) {
            let r = *target_index
                .get(&nw)
                .expect("differential image is a word one degree down");
            b.flip(r, c);
        }
    }
    b.build()
}

/// Degreewise homology of the cobar complex through `cap`. Requires the
/// coalgebra through degree `cap + 2`: a degree-`n` word can contain a
/// letter of coalgebra degree `n + 1`, and boundaries into degree `cap`
/// come from degree `cap + 1`.
pub fn cotor(coalg: &CoalgebraData, cap: usize) -> Result<GradedDims, CobarError> {
    check_letters(coalg)?;
    if coalg.cap() < cap + 2 {
        return Err(CobarError::CapTooSmall {
            cap,
            need: cap + 2,
            have: coalg.cap(),
        });
    }
    let mut dims = GradedDims::zeros(cap);
    let mut words: Vec<Vec<CobarWord>> = (0..=cap + 1)
        .map(|n| words_in_degree(coalg, n))
        .collect();
    let mut indexes: Vec<BTreeMap<CobarWord, usize>> = words
        .iter()
        .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
        .collect();
    // Degree 0 has no outgoing differential target; treat it as mapping
    // to nothing.
    let empty: BTreeMap<CobarWord, usize> = BTreeMap::new();
    for n in 0..=cap {
        let below = if n == 0 { &empty } else { &indexes[n - 1] };
        let d_out = differential_matrix(coalg, &words[n], below);
        let d_in = differential_matrix(coalg, &words[n + 1], &indexes[n]);
        dims.set(n, homology_dim(&d_out, &d_in)? as u64);
    }
    words.clear();
    indexes.clear();
    Ok(dims)
}

/// Outcome of a boundary query on a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryVerdict {
    /// The class is a boundary; `preimage` is one explicit element whose
    /// differential equals it.
    Boundary { preimage: CobarElement },
    /// The class is a cycle but not a boundary — certified by exhausting
    /// the row space of the incoming differential.
    NotABoundary,
}

/// Decides whether a homogeneous cycle is a boundary, producing either an
/// explicit preimage or a certified refusal. Requires the coalgebra
/// through degree `n + 2` where `n` is the class degree.
pub fn is_boundary(
    coalg: &CoalgebraData,
    class: &CobarElement,
) -> Result<BoundaryVerdict, CobarError> {
    check_letters(coalg)?;
    let mut degrees = class.iter().map(|w| word_degree(coalg, w));
    let Some(n) = degrees.next() else {
        // The zero class is the boundary of the zero element.
        return Ok(BoundaryVerdict::Boundary {
            preimage: CobarElement::new(),
        });
    };
    if let Some(other) = degrees.find(|&d| d != n) {
        return Err(CobarError::MixedDegrees(n, other));
    }
    if coalg.cap() < n + 2 {
        return Err(CobarError::CapTooSmall {
            cap: n,
            need: n + 2,
            have: coalg.cap(),
        });
    }
    let boundary = differential(coalg, class);
    if !boundary.is_empty() {
        return Err(CobarError::NotACycle {
            boundary: format_element(coalg, &boundary),
        });
    }
    let words_n = words_in_degree(coalg, n);
    let index_n: BTreeMap<CobarWord, usize> =
        words_n.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let words_above = words_in_degree(coalg, n + 1);
    let matrix = differential_matrix(coalg, &words_above, &index_n);
    let mut rhs = crate::gf2::Gf2Vec::zero(words_n.len());
    for w in class {
        rhs.set(index_n[w], true);
    }
    match matrix.solve(&rhs) {
        Some(solution) => {
            let preimage: CobarElement = solution
                .iter_ones()
                .map(|c| words_above[c].clone())
                .collect();
            Ok(BoundaryVerdict::Boundary { preimage })
        }
        None => Ok(BoundaryVerdict::NotABoundary),
    }
}

pub fn format_word(coalg: &CoalgebraData, word: &CobarWord) -> String {
    if word.is_empty() {
        return "[]".to_string();
    }
    let names: Vec<&str> = word.iter().map(|&l| coalg.name(l)).collect();
    format!("[{}]", names.join(" | "))
}

pub fn format_element(coalg: &CoalgebraData, e: &CobarElement) -> String {
    if e.is_empty() {
        return "0".to_string();
    }
    e.iter()
        .map(|w| format_word(coalg, w))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Finds the letter with the given name, for building classes by hand.
pub fn letter_named(coalg: &CoalgebraData, name: &str) -> Option<usize> {
    (0..coalg.num_elements()).find(|&id| coalg.name(id) == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GeneratorSpec, Presentation};
    use crate::groebner::testutil::five_var_ring;
    use crate::groebner::CommutativeRing;
    use crate::hopf::CoproductSpec;

    fn exterior_coalgebra(degrees: &[usize], cap: usize) -> CoalgebraData {
        let gens = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| GeneratorSpec::nil(&format!("x{d}_{i}"), d, 2))
            .collect();
        let pres = Presentation::new(gens).unwrap();
        let cop = CoproductSpec::primitive(&pres);
        CoalgebraData::from_presented(&pres, &cop, cap).unwrap()
    }

    #[test]
    fn loops_on_a_single_exterior_class_form_a_polynomial_series() {
        // Cobar of E[x3]: the letter x3 has weight 2, Δ̄ = 0, so cotor is
        // a polynomial algebra on one degree-2 class.
        let coalg = exterior_coalgebra(&[3], 16);
        let dims = cotor(&coalg, 12).unwrap();
        assert_eq!(dims, GradedDims::single_generator(2, None, 12));
    }

    #[test]
    fn loops_on_two_exterior_classes_form_a_two_variable_series() {
        let coalg = exterior_coalgebra(&[3, 5], 16);
        let dims = cotor(&coalg, 12).unwrap();
        let expected = GradedDims::single_generator(2, None, 12)
            .convolve(&GradedDims::single_generator(4, None, 12), 12);
        assert_eq!(dims, expected);
    }

    #[test]
    fn loops_on_a_divided_power_tower_form_an_exterior_class() {
        // Dual of P[u2]: the divided-power coalgebra. Its cobar homology
        // is a single exterior class in degree 1.
        let ring = CommutativeRing::new(vec![("u".into(), 2)]).unwrap();
        let gb = ring.groebner_basis(12);
        let dual = CoalgebraData::dual_of_ring(&gb, 12).unwrap();
        let dims = cotor(&dual, 8).unwrap();
        assert_eq!(dims.as_slice(), &[1, 1, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn differential_squares_to_zero_on_all_low_degree_words() {
        let ring = five_var_ring();
        let gb = ring.groebner_basis(14);
        let dual = CoalgebraData::dual_of_ring(&gb, 14).unwrap();
        for n in 0..=9 {
            for word in words_in_degree(&dual, n) {
                let once = differential_of_word(&dual, &word);
                assert!(differential(&dual, &once).is_empty(), "d² on {word:?}");
            }
        }
    }

    #[test]
    fn symmetric_two_letter_class_is_the_boundary_of_a_product_letter() {
        // In the dual of the five-variable ring, the degree-8 cycle
        // [y5 | y5] + [y3 | t7] + [t7 | y3] bounds: it is exactly the
        // differential of the one-letter word on the dual of y3*t7.
        let ring = five_var_ring();
        let gb = ring.groebner_basis(12);
        let dual = CoalgebraData::dual_of_ring(&gb, 12).unwrap();
        let y3 = letter_named(&dual, "y3").unwrap();
        let y5 = letter_named(&dual, "y5").unwrap();
        let t7 = letter_named(&dual, "t7").unwrap();
        let class: CobarElement =
            [vec![y5, y5], vec![y3, t7], vec![t7, y3]].into_iter().collect();
        match is_boundary(&dual, &class).unwrap() {
            BoundaryVerdict::Boundary { preimage } => {
                assert_eq!(differential(&dual, &preimage), class);
                let y3t7 = letter_named(&dual, "y3*t7").unwrap();
                assert!(preimage.contains(&vec![y3t7]));
            }
            BoundaryVerdict::NotABoundary => panic!("class must bound"),
        }
    }

    #[test]
    fn generator_letters_are_certified_non_boundaries() {
        let ring = five_var_ring();
        let gb = ring.groebner_basis(12);
        let dual = CoalgebraData::dual_of_ring(&gb, 12).unwrap();
        let y3 = letter_named(&dual, "y3").unwrap();
        let class: CobarElement = [vec![y3]].into_iter().collect();
        assert_eq!(is_boundary(&dual, &class).unwrap(), BoundaryVerdict::NotABoundary);
    }

    #[test]
    fn non_cycles_are_rejected_with_their_boundary() {
        let ring = five_var_ring();
        let gb = ring.groebner_basis(12);
        let dual = CoalgebraData::dual_of_ring(&gb, 12).unwrap();
        let y3t7 = letter_named(&dual, "y3*t7").unwrap();
        let class: CobarElement = [vec![y3t7]].into_iter().collect();
        match is_boundary(&dual, &class) {
            Err(CobarError::NotACycle { boundary }) => {
                assert!(boundary.contains("[y5 | y5]"), "got `{boundary}`");
            }
            other => panic!("expected NotACycle, got {other:?}"),
        }
    }

    #[test]
    fn degree_one_letters_are_rejected() {
        let coalg = exterior_coalgebra(&[1, 3], 8);
        assert!(matches!(
            cotor(&coalg, 4),
            Err(CobarError::DegreeOneLetter(_))
        ));
    }

    #[test]
    fn insufficient_coalgebra_cap_is_reported() {
        let coalg = exterior_coalgebra(&[3], 8);
        assert!(matches!(
            cotor(&coalg, 7),
            Err(CobarError::CapTooSmall { need: 9, have: 8, .. })
        ));
    }

    #[test]
    fn word_enumeration_is_degreewise_and_lexicographic() {
        let coalg = exterior_coalgebra(&[3, 5], 12);
        // Letters: x3 (weight 2), x5 (weight 4), x3*x5 (weight 7).
        assert_eq!(words_in_degree(&coalg, 0), vec![Vec::<usize>::new()]);
        assert_eq!(words_in_degree(&coalg, 1), Vec::<CobarWord>::new());
        let w6 = words_in_degree(&coalg, 6);
        assert_eq!(w6.len(), 3); // [x3|x3|x3], [x3|x5]-ish pairs
        for w in &w6 {
            assert_eq!(word_degree(&coalg, w), 6);
        }
    }
}
