//! Degree `-1` derivations and staged spectral-sequence schedules.
//!
//! A [`DerivationSpec`] assigns each generator a value one degree lower and
//! extends by the Leibniz rule (no signs over GF(2), but order matters:
//! `d(g^2) = d(g)·g + g·d(g)`, which need not vanish in a braided algebra).
//! [`verify_derivation`] checks `d² = 0` together with compatibility with
//! the commutator and height relations, and [`homology_of_derivation`]
//! computes the degreewise homology.
//!
//! A [`BssSchedule`] strings pages together: each stage is a presentation
//! with a differential, the homology of one stage must match the Poincaré
//! series of the next, and the last stage must collapse to the ground
//! field. [`run_bss`] verifies the whole ladder and reports the first
//! degree where a handoff fails.

use thiserror::Error;

use crate::algebra::{AlgebraError, Element, Presentation};
use crate::gf2::{homology_dim, Gf2Error, Gf2Matrix, Gf2MatrixBuilder};
use crate::grading::GradedDims;
use crate::steenrod::SteenrodAction;

/// Values of a degree `-1` derivation on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpec {
    values: Vec<Element>,
}

impl DerivationSpec {
    /// The zero derivation.
    pub fn zero(pres: &Presentation) -> Self {
        DerivationSpec {
            values: vec![Element::zero(); pres.num_generators()],
        }
    }

    /// Sets `d(gen) = value`; a nonzero value must be homogeneous of degree
    /// `deg gen - 1`.
    pub fn set(
        &mut self,
        pres: &Presentation,
        gen: &str,
        value: Element,
    ) -> Result<(), AlgebraError> {
        let g = pres.generator_index(gen)?;
        if let Some(got) = pres.element_degree(&value) {
            let want = pres.generator(g).degree - 1;
            if got != want {
                return Err(AlgebraError::Invalid(format!(
                    "derivation value for `{gen}` must have degree {want}, got {got}"
                )));
            }
        }
        self.values[g] = value;
        Ok(())
    }

    /// The first squaring operation as a differential.
    pub fn from_sq1(pres: &Presentation, action: &SteenrodAction) -> Self {
        let mut d = DerivationSpec::zero(pres);
        for g in 0..pres.num_generators() {
            d.values[g] = action.of_generator(1, g);
        }
        d
    }

    pub fn of_generator(&self, gen: usize) -> &Element {
        &self.values[gen]
    }
}

/// Leibniz extension of the derivation to an element: each letter of each
/// monomial is replaced by its value in turn.
pub fn apply_derivation(pres: &Presentation, d: &DerivationSpec, e: &Element) -> Element {
    let mut out = Element::zero();
    for m in e.iter() {
        let letters: Vec<usize> = m.letters().collect();
        for (i, &g) in letters.iter().enumerate() {
            for vm in d.of_generator(g).iter() {
                let mut word = Vec::with_capacity(letters.len() + vm.letter_count());
                word.extend_from_slice(&letters[..i]);
                word.extend(vm.letters());
                word.extend_from_slice(&letters[i + 1..]);
                out.add_assign(&pres.normal_form(&word));
            }
        }
    }
    out
}

#[derive(Debug, Error)]
pub enum DerivationFailure {
    #[error("d² is nonzero on `{generator}`: d(d({generator})) = `{value}`")]
    NotSquareZero { generator: String, value: String },
    #[error("derivation does not respect [{earlier}, {later}]: defect `{defect}`")]
    RelationNotPreserved {
        earlier: String,
        later: String,
        defect: String,
    },
    #[error("derivation does not annihilate the height relation of `{generator}`: got `{value}`")]
    HeightNotPreserved { generator: String, value: String },
}

/// Checks that the derivation is well defined on the quotient and squares
/// to zero. All three checks are exact and finite: `d² = 0` on generators
/// extends to everything because `d²` is again a derivation over GF(2).
pub fn verify_derivation(
    pres: &Presentation,
    d: &DerivationSpec,
) -> Result<(), DerivationFailure> {
    for g in 0..pres.num_generators() {
        let dd = apply_derivation(pres, d, d.of_generator(g));
        if !dd.is_zero() {
            return Err(DerivationFailure::NotSquareZero {
                generator: pres.generator(g).name.clone(),
                value: pres.format_element(&dd),
            });
        }
    }
    for (i, j, c) in pres.commutator_pairs() {
        // d(g_j g_i) and d(g_i g_j) + d(c) must agree.
        let defect = derive_word(pres, d, &[j, i])
            .sum(&derive_word(pres, d, &[i, j]))
            .sum(&apply_derivation(pres, d, c));
        if !defect.is_zero() {
            return Err(DerivationFailure::RelationNotPreserved {
                earlier: pres.generator(i).name.clone(),
                later: pres.generator(j).name.clone(),
                defect: pres.format_element(&defect),
            });
        }
    }
    for g in 0..pres.num_generators() {
        let Some(h) = pres.generator(g).height else {
            continue;
        };
        let value = derive_word(pres, d, &vec![g; h as usize]);
        if !value.is_zero() {
            return Err(DerivationFailure::HeightNotPreserved {
                generator: pres.generator(g).name.clone(),
                value: pres.format_element(&value),
            });
        }
    }
    Ok(())
}

/// Leibniz sum over an explicit word (which need not be normal).
fn derive_word(pres: &Presentation, d: &DerivationSpec, word: &[usize]) -> Element {
    let mut out = Element::zero();
    for (i, &g) in word.iter().enumerate() {
        for vm in d.of_generator(g).iter() {
            let mut w = Vec::with_capacity(word.len() + vm.letter_count());
            w.extend_from_slice(&word[..i]);
            w.extend(vm.letters());
            w.extend_from_slice(&word[i + 1..]);
            out.add_assign(&pres.normal_form(&w));
        }
    }
    out
}

/// Matrix of the derivation from degree `n` to degree `n - 1`, columns
/// indexed by the degree-`n` basis.
pub fn derivation_matrix(pres: &Presentation, d: &DerivationSpec, n: usize) -> Gf2Matrix {
    let source = pres.basis_in_degree(n);
    let target = pres.basis_in_degree(n.saturating_sub(1));
    let index: std::collections::BTreeMap<_, _> =
        target.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut b = Gf2MatrixBuilder::new(if n == 0 { 0 } else { target.len() }, source.len());
    if n > 0 {
        for (c, m) in source.iter().enumerate() {
            let dm = apply_derivation(pres, d, &Element::from_monomial(m.clone()));
            for t in dm.iter() {
                b.flip(r_of(&index, t), c);
            }
        }
    }
    b.build()
}

fn r_of(index: &std::collections::BTreeMap<crate::algebra::Monomial, usize>, m: &crate::algebra::Monomial) -> usize {
    *index.get(m).expect("derivation image lies in the lower basis")
}

/// Degreewise homology of the derivation through `cap`. Boundaries into
/// degree `cap` come from degree `cap + 1`, so the basis is enumerated one
/// degree beyond the cap.
pub fn homology_of_derivation(
    pres: &Presentation,
    d: &DerivationSpec,
    cap: usize,
) -> Result<GradedDims, Gf2Error> {
    let mut dims = GradedDims::zeros(cap);
    for n in 0..=cap {
        let d_out = derivation_matrix(pres, d, n);
        let d_in = derivation_matrix(pres, d, n + 1);
        dims.set(n, homology_dim(&d_out, &d_in)? as u64);
    }
    Ok(dims)
}

/// One page of a staged spectral sequence: a presentation with its
/// differential.
#[derive(Clone, Debug)]
pub struct BssStage {
    pub name: String,
    pub pres: Presentation,
    pub diff: DerivationSpec,
}

impl BssStage {
    pub fn new(name: &str, pres: Presentation, diff: DerivationSpec) -> Self {
        BssStage {
            name: name.to_string(),
            pres,
            diff,
        }
    }
}

/// A ladder of pages ending in total collapse.
#[derive(Clone, Debug)]
pub struct BssSchedule {
    pub name: String,
    pub stages: Vec<BssStage>,
}

#[derive(Debug, Error)]
pub enum BssFailure {
    #[error("stage `{stage}`: {source}")]
    Stage {
        stage: String,
        #[source]
        source: DerivationFailure,
    },
    #[error("stage `{stage}`: homology is not exact ({source})")]
    NotAComplex {
        stage: String,
        #[source]
        source: Gf2Error,
    },
    #[error(
        "homology of stage `{stage}` disagrees with `{next}` in degree {degree}: \
         got {got}, want {want}"
    )]
    StageMismatch {
        stage: String,
        next: String,
        degree: usize,
        got: u64,
        want: u64,
    },
}

/// Statistics from a successful schedule run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BssReport {
    pub stages: usize,
    pub cap: usize,
}

/// Verifies every stage differential, then checks the ladder: the homology
/// of each stage must equal the Poincaré series of the next, and the last
/// stage must collapse to the ground field, all through degree `cap`.
pub fn run_bss(schedule: &BssSchedule, cap: usize) -> Result<BssReport, BssFailure> {
    for (i, stage) in schedule.stages.iter().enumerate() {
        verify_derivation(&stage.pres, &stage.diff).map_err(|source| BssFailure::Stage {
            stage: stage.name.clone(),
            source,
        })?;
        let homology =
            homology_of_derivation(&stage.pres, &stage.diff, cap).map_err(|source| {
                BssFailure::NotAComplex {
                    stage: stage.name.clone(),
                    source,
                }
            })?;
        let (next_name, want) = match schedule.stages.get(i + 1) {
            Some(next) => (next.name.clone(), next.pres.poincare(cap)),
            None => ("the ground field".to_string(), GradedDims::unit(cap)),
        };
        if let Some(degree) = homology.first_mismatch(&want) {
            return Err(BssFailure::StageMismatch {
                stage: stage.name.clone(),
                next: next_name,
                degree,
                got: homology.get(degree),
                want: want.get(degree),
            });
        }
    }
    Ok(BssReport {
        stages: schedule.stages.len(),
        cap,
    })
}
