//! Degree-lowering squaring operations on presented algebras.
//!
//! A [`SteenrodAction`] records `Sq^k` on each generator (unstated values
//! are zero) and extends to products by the Cartan formula
//! `Sq^k(xy) = Σ_{i+j=k} Sq^i(x) Sq^j(y)`. Composites follow the word
//! order: the word `Sq^a Sq^b` acts as `Sq^a ∘ Sq^b`, applying `Sq^b`
//! first. [`verify_steenrod_module`] checks that such data is an honest
//! module over the operation algebra:
//!
//! * the Cartan extension is well defined on the quotient (commutator and
//!   height relations are respected for every `k`),
//! * every Adem instance `Sq^a Sq^b = Σ_c binom(b-c-1, a-2c) Sq^{a+b-c} Sq^c`
//!   (for `a < 2b`, binomials mod 2) holds on every basis element through
//!   the degree cap,
//! * the coproduct is a map of modules on every generator, with the
//!   operations acting on tensors through the Cartan formula again.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::algebra::{AlgebraError, Element, Presentation};
use crate::hopf::{coproduct, CoproductSpec, TensorElement};

/// Rewriting budget for [`adem_reduce`]; iterated Adem rewriting always
/// terminates, so hitting this indicates a bug rather than bad input.
const ADEM_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SteenrodError {
    #[error("operation index 0 is the identity and cannot be assigned")]
    ZeroOperation,
    #[error("Sq^{k} on `{gen}` must land in degree {want}, got {got}")]
    WrongDegree {
        k: u32,
        gen: String,
        want: usize,
        got: usize,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A composite of squaring operations in admissible form:
/// `ops[j] >= 2 * ops[j+1]` with all entries positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AdmissibleWord {
    ops: Vec<u32>,
}

impl AdmissibleWord {
    pub fn new(ops: Vec<u32>) -> Option<Self> {
        if ops.iter().any(|&i| i == 0) {
            return None;
        }
        if ops.windows(2).any(|w| w[0] < 2 * w[1]) {
            return None;
        }
        Some(AdmissibleWord { ops })
    }

    pub fn ops(&self) -> &[u32] {
        &self.ops
    }

    /// Total degree shift of the composite.
    pub fn degree(&self) -> u32 {
        self.ops.iter().sum()
    }
}

/// `C(n, k) mod 2` by Lucas' theorem: odd exactly when `k` is a binary
/// submask of `n`.
pub fn binom_mod2(n: u32, k: u32) -> bool {
    k <= n && (k & n) == k
}

/// Adem expansion of a single inadmissible pair `Sq^a Sq^b` with
/// `0 < a < 2b`: the words `Sq^{a+b-c} Sq^c` (or `Sq^{a+b}` for `c = 0`)
/// whose binomial coefficient is odd. Every output is admissible.
fn adem_pair(a: u32, b: u32) -> Vec<Vec<u32>> {
    debug_assert!(a > 0 && a < 2 * b);
    let mut out = Vec::new();
    for c in 0..=a / 2 {
        if binom_mod2(b - c - 1, a - 2 * c) {
            if c == 0 {
                out.push(vec![a + b]);
            } else {
                out.push(vec![a + b - c, c]);
            }
        }
    }
    out
}

/// Rewrites an arbitrary composite of squaring operations into its GF(2)
/// sum of admissible words. Entries equal to 0 are identity operations and
/// are dropped.
pub fn adem_reduce(word: &[u32]) -> BTreeSet<AdmissibleWord> {
    let start: Vec<u32> = word.iter().copied().filter(|&i| i > 0).collect();
    let mut out: BTreeSet<AdmissibleWord> = BTreeSet::new();
    let mut stack = vec![start];
    let mut steps = 0usize;
    while let Some(w) = stack.pop() {
        steps += 1;
        assert!(steps <= ADEM_BUDGET, "Adem rewriting exceeded its budget");
        match w.windows(2).position(|p| p[0] < 2 * p[1]) {
            None => {
                let adm = AdmissibleWord::new(w).expect("no inadmissible pair remains");
                if !out.remove(&adm) {
                    out.insert(adm);
                }
            }
            Some(p) => {
                for replacement in adem_pair(w[p], w[p + 1]) {
                    let mut nw = Vec::with_capacity(w.len() + replacement.len());
                    nw.extend_from_slice(&w[..p]);
                    nw.extend_from_slice(&replacement);
                    nw.extend_from_slice(&w[p + 2..]);
                    stack.push(nw);
                }
            }
        }
    }
    out
}

/// Values of the squaring operations on generators; unstated values vanish.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SteenrodAction {
    ops: BTreeMap<(u32, usize), Element>,
}

impl SteenrodAction {
    pub fn new() -> Self {
        SteenrodAction::default()
    }

    /// Declares `Sq^k(gen) = value`. The value must be homogeneous of
    /// degree `deg gen - k` (zero is always fine).
    pub fn set(
        &mut self,
        pres: &Presentation,
        k: u32,
        gen: &str,
        value: Element,
    ) -> Result<(), SteenrodError> {
        if k == 0 {
            return Err(SteenrodError::ZeroOperation);
        }
        let g = pres.generator_index(gen)?;
        let want = pres.generator(g).degree.checked_sub(k as usize);
        if let Some(got) = pres.element_degree(&value) {
            if want != Some(got) {
                return Err(SteenrodError::WrongDegree {
                    k,
                    gen: gen.to_string(),
                    want: want.unwrap_or(0),
                    got,
                });
            }
        }
        if value.is_zero() {
            self.ops.remove(&(k, g));
        } else {
            self.ops.insert((k, g), value);
        }
        Ok(())
    }

    /// `Sq^k` of a single generator (`k >= 1`).
    pub fn of_generator(&self, k: u32, gen: usize) -> Element {
        self.ops.get(&(k, gen)).cloned().unwrap_or_else(Element::zero)
    }

    pub fn stated(&self) -> impl Iterator<Item = (u32, usize, &Element)> {
        self.ops.iter().map(|(&(k, g), e)| (k, g, e))
    }
}

/// `Sq^k` of an element, by the Cartan formula over the letters of each
/// monomial. `Sq^0` is the identity.
pub fn act(pres: &Presentation, action: &SteenrodAction, k: u32, e: &Element) -> Element {
    let mut out = Element::zero();
    for m in e.iter() {
        let word: Vec<usize> = m.letters().collect();
        out.add_assign(&act_word(pres, action, k, &word));
    }
    out
}

/// Cartan dynamic program over an arbitrary word of generators: after each
/// letter, `table[j]` holds `Sq^j` of the product so far.
fn act_word(pres: &Presentation, action: &SteenrodAction, k: u32, word: &[usize]) -> Element {
    let k = k as usize;
    let mut table: Vec<Element> = Vec::with_capacity(k + 1);
    table.push(pres.unit_element());
    table.resize(k + 1, Element::zero());
    for &g in word {
        let gen_deg = pres.generator(g).degree;
        let mut next: Vec<Element> = vec![Element::zero(); k + 1];
        for (t, slot) in next.iter_mut().enumerate() {
            for j in 0..=t.min(gen_deg) {
                if table[t - j].is_zero() {
                    continue;
                }
                let sq_g = if j == 0 {
                    crate::algebra::Element::from_monomial(
                        pres.monomial(&[(&pres.generator(g).name, 1)]).expect("generator"),
                    )
                } else {
                    action.of_generator(j as u32, g)
                };
                if sq_g.is_zero() {
                    continue;
                }
                slot.add_assign(&pres.mul(&table[t - j], &sq_g));
            }
        }
        table = next;
    }
    table.swap_remove(k)
}

#[derive(Debug, Error)]
pub enum SteenrodFailure {
    #[error(
        "Sq^{k} is not well defined across [{earlier}, {later}]: \
         the two sides differ by `{defect}`"
    )]
    RelationNotRespected {
        earlier: String,
        later: String,
        k: u32,
        defect: String,
    },
    #[error("Sq^{k} does not annihilate the height relation of `{generator}`: got `{value}`")]
    HeightNotRespected {
        generator: String,
        k: u32,
        value: String,
    },
    #[error(
        "Adem instance Sq^{a} Sq^{b} fails on `{monomial}`: \
         composite gives `{lhs}`, admissible expansion gives `{rhs}`"
    )]
    AdemNotRespected {
        a: u32,
        b: u32,
        monomial: String,
        lhs: String,
        rhs: String,
    },
    #[error("Sq^{k} does not commute with the coproduct on `{generator}`")]
    CoproductNotRespected { generator: String, k: u32 },
}

/// Statistics from a successful module verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SteenrodReport {
    pub relation_instances: usize,
    pub height_instances: usize,
    pub adem_instances: usize,
    pub coproduct_instances: usize,
}

/// Checks that the action data defines a module over the operation algebra
/// compatible with the multiplication, the quotient relations, and the
/// coproduct. Adem instances are verified on every basis element through
/// degree `cap`; relation and height instances are exact and not capped.
pub fn verify_steenrod_module(
    pres: &Presentation,
    cop: &CoproductSpec,
    action: &SteenrodAction,
    cap: usize,
) -> Result<SteenrodReport, SteenrodFailure> {
    let mut report = SteenrodReport {
        relation_instances: 0,
        height_instances: 0,
        adem_instances: 0,
        coproduct_instances: 0,
    };

    // Commutator relations: Sq^k(g_j g_i) computed via Cartan on the two
    // word orders must differ by exactly Sq^k of the commutator value.
    for (i, j, c) in pres.commutator_pairs() {
        let top = pres.generator(i).degree + pres.generator(j).degree;
        for k in 1..=top as u32 {
            let mut defect = act_word(pres, action, k, &[j, i]);
            defect.add_assign(&act_word(pres, action, k, &[i, j]));
            defect.add_assign(&act(pres, action, k, c));
            if !defect.is_zero() {
                return Err(SteenrodFailure::RelationNotRespected {
                    earlier: pres.generator(i).name.clone(),
                    later: pres.generator(j).name.clone(),
                    k,
                    defect: pres.format_element(&defect),
                });
            }
            report.relation_instances += 1;
        }
    }

    // Height relations: Sq^k(g^h) must vanish.
    for g in 0..pres.num_generators() {
        let Some(h) = pres.generator(g).height else {
            continue;
        };
        let word = vec![g; h as usize];
        let top = pres.generator(g).degree * h as usize;
        for k in 1..=top as u32 {
            let value = act_word(pres, action, k, &word);
            if !value.is_zero() {
                return Err(SteenrodFailure::HeightNotRespected {
                    generator: pres.generator(g).name.clone(),
                    k,
                    value: pres.format_element(&value),
                });
            }
            report.height_instances += 1;
        }
    }

    // Adem instances on the basis through the cap.
    for n in 2..=cap {
        for m in pres.basis_in_degree(n) {
            let x = Element::from_monomial(m.clone());
            for b in 1..=(n as u32) {
                let sq_b_x = act(pres, action, b, &x);
                for a in 1..2 * b {
                    if (a + b) as usize > n {
                        break;
                    }
                    let lhs = act(pres, action, a, &sq_b_x);
                    let mut rhs = Element::zero();
                    for word in adem_pair(a, b) {
                        let mut v = x.clone();
                        for &op in word.iter().rev() {
                            v = act(pres, action, op, &v);
                        }
                        rhs.add_assign(&v);
                    }
                    if lhs != rhs {
                        return Err(SteenrodFailure::AdemNotRespected {
                            a,
                            b,
                            monomial: pres.format_monomial(&m),
                            lhs: pres.format_element(&lhs),
                            rhs: pres.format_element(&rhs),
                        });
                    }
                    report.adem_instances += 1;
                }
            }
        }
    }

    // Coproduct compatibility on generators: Sq^k(Δg) via the tensor
    // Cartan formula must be Δ(Sq^k g).
    for g in 0..pres.num_generators() {
        let deg = pres.generator(g).degree;
        let dg = cop.of_generator(pres, g);
        for k in 1..=deg as u32 {
            let mut lhs = TensorElement::zero();
            for (x, y) in dg.iter() {
                let xe = Element::from_monomial(x.clone());
                let ye = Element::from_monomial(y.clone());
                for i in 0..=k {
                    let sx = act(pres, action, i, &xe);
                    let sy = act(pres, action, k - i, &ye);
                    for mx in sx.iter() {
                        for my in sy.iter() {
                            lhs.toggle((mx.clone(), my.clone()));
                        }
                    }
                }
            }
            let rhs = coproduct(pres, cop, &act(pres, action, k, &pres.generator_element(&pres.generator(g).name).expect("generator")));
            if lhs != rhs {
                return Err(SteenrodFailure::CoproductNotRespected {
                    generator: pres.generator(g).name.clone(),
                    k,
                });
            }
            report.coproduct_instances += 1;
        }
    }

    Ok(report)
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;

    /// The compatible action on the braided six-generator presentation:
    /// `Sq^1(z6) = x5`, `Sq^2(a4) = a2`, `Sq^2(x5) = x3`, `Sq^2(b10) = a4^2`.
    pub fn braided_six_action(pres: &Presentation) -> SteenrodAction {
        let mut action = SteenrodAction::new();
        action
            .set(pres, 1, "z6", pres.generator_element("x5").unwrap())
            .unwrap();
        action
            .set(pres, 2, "a4", pres.generator_element("a2").unwrap())
            .unwrap();
        action
            .set(pres, 2, "x5", pres.generator_element("x3").unwrap())
            .unwrap();
        action
            .set(pres, 2, "b10", pres.element(&[&[("a4", 2)]]).unwrap())
            .unwrap();
        action
    }
}
