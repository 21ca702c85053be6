//! Coproducts, bialgebra verification, primitives, and dual coalgebras.
//!
//! A [`CoproductSpec`] assigns each generator of a [`Presentation`] its
//! *reduced* coproduct (the part of `Δ(g)` away from `g ⊗ 1 + 1 ⊗ g`) and
//! extends multiplicatively. [`verify_bialgebra`] checks that this extension
//! is actually well defined on the quotient — the coproduct must respect
//! every commutator relation and nilpotence height — and that the result is
//! a counital coassociative coalgebra on the PBW basis through a degree cap.
//!
//! [`CoalgebraData`] is the basis-level view the cobar complex consumes:
//! a list of positive-degree basis elements with reduced coproducts in
//! index form. It is produced either from a presented bialgebra or as the
//! graded dual of a commutative ring, where the structure constants are
//! read off from multiplication: the coefficient of `x ⊗ y` in the reduced
//! coproduct dual to `z` is the coefficient of `z` in `x · y`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::algebra::{AlgebraError, Element, Monomial, Presentation};
use crate::gf2::Gf2MatrixBuilder;
use crate::grading::GradedDims;
use crate::groebner::GroebnerBasis;

/// GF(2) sum of two-sided tensors of normal monomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorElement {
    pairs: BTreeSet<(Monomial, Monomial)>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn from_pair(left: Monomial, right: Monomial) -> Self {
        let mut pairs = BTreeSet::new();
        pairs.insert((left, right));
        TensorElement { pairs }
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Monomial, Monomial)> {
        self.pairs.iter()
    }

    pub fn contains(&self, pair: &(Monomial, Monomial)) -> bool {
        self.pairs.contains(pair)
    }

    pub fn toggle(&mut self, pair: (Monomial, Monomial)) {
        if !self.pairs.remove(&pair) {
            self.pairs.insert(pair);
        }
    }

    pub fn add_assign(&mut self, other: &TensorElement) {
        for p in &other.pairs {
            self.toggle(p.clone());
        }
    }

    pub fn sum(mut self, other: &TensorElement) -> TensorElement {
        self.add_assign(other);
        self
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`; over GF(2) there
    /// are no Koszul signs to track.
    pub fn mul(&self, pres: &Presentation, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (a, b) in &self.pairs {
            for (c, d) in &other.pairs {
                let left = pres.mul_monomials(a, c);
                let right = pres.mul_monomials(b, d);
                for lm in left.iter() {
                    for rm in right.iter() {
                        out.toggle((lm.clone(), rm.clone()));
                    }
                }
            }
        }
        out
    }

    /// Drops every pair with a unit component.
    pub fn reduced(&self) -> TensorElement {
        TensorElement {
            pairs: self
                .pairs
                .iter()
                .filter(|(a, b)| !a.is_unit() && !b.is_unit())
                .cloned()
                .collect(),
        }
    }

    pub fn format(&self, pres: &Presentation) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.pairs
            .iter()
            .map(|(a, b)| format!("{} (x) {}", pres.format_monomial(a), pres.format_monomial(b)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl FromIterator<(Monomial, Monomial)> for TensorElement {
    fn from_iter<T: IntoIterator<Item = (Monomial, Monomial)>>(iter: T) -> Self {
        let mut e = TensorElement::zero();
        for p in iter {
            e.toggle(p);
        }
        e
    }
}

/// Reduced coproducts of the generators; everything else extends
/// multiplicatively. An absent entry means the generator is primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductSpec {
    reduced: Vec<TensorElement>,
}

impl CoproductSpec {
    /// All generators primitive.
    pub fn primitive(pres: &Presentation) -> Self {
        CoproductSpec {
            reduced: vec![TensorElement::zero(); pres.num_generators()],
        }
    }

    /// Sets `Δ(g) = g ⊗ 1 + 1 ⊗ g + value`. Each pair of `value` must have
    /// positive-degree components whose degrees sum to `deg g`.
    pub fn set_reduced(
        &mut self,
        pres: &Presentation,
        gen: &str,
        value: TensorElement,
    ) -> Result<(), AlgebraError> {
        let g = pres.generator_index(gen)?;
        let expected = pres.generator(g).degree;
        for (a, b) in value.iter() {
            if a.is_unit() || b.is_unit() {
                return Err(AlgebraError::Invalid(format!(
                    "reduced coproduct of `{gen}` contains a unit component"
                )));
            }
            if pres.monomial_degree(a) + pres.monomial_degree(b) != expected {
                return Err(AlgebraError::Invalid(format!(
                    "reduced coproduct of `{gen}` is not homogeneous of degree {expected}"
                )));
            }
        }
        self.reduced[g] = value;
        Ok(())
    }

    pub fn reduced_of(&self, gen: usize) -> &TensorElement {
        &self.reduced[gen]
    }

    /// Full coproduct of a single generator.
    pub fn of_generator(&self, pres: &Presentation, gen: usize) -> TensorElement {
        let n = pres.num_generators();
        let mut exps = vec![0u32; n];
        exps[gen] = 1;
        let g = Monomial::from_exponents(exps);
        let unit = Monomial::unit(n);
        let mut out = self.reduced[gen].clone();
        out.toggle((g.clone(), unit.clone()));
        out.toggle((unit, g));
        out
    }
}

/// Full coproduct of an element, extending multiplicatively over the
/// letters of each monomial.
pub fn coproduct(pres: &Presentation, cop: &CoproductSpec, e: &Element) -> TensorElement {
    let mut out = TensorElement::zero();
    for m in e.iter() {
        out.add_assign(&coproduct_of_monomial(pres, cop, m));
    }
    out
}

fn coproduct_of_monomial(pres: &Presentation, cop: &CoproductSpec, m: &Monomial) -> TensorElement {
    let unit = Monomial::unit(pres.num_generators());
    let mut acc = TensorElement::from_pair(unit.clone(), unit);
    for g in m.letters() {
        acc = acc.mul(pres, &cop.of_generator(pres, g));
    }
    acc
}

/// Reduced coproduct of an element: the full coproduct minus all terms with
/// a unit component.
pub fn reduced_coproduct(pres: &Presentation, cop: &CoproductSpec, e: &Element) -> TensorElement {
    coproduct(pres, cop, e).reduced()
}

#[derive(Debug, Error)]
pub enum BialgebraFailure {
    #[error("coproduct does not respect [{earlier}, {later}]: defect `{defect}`")]
    RelationNotRespected {
        earlier: String,
        later: String,
        defect: String,
    },
    #[error("coproduct does not respect the height of `{generator}`: defect `{defect}`")]
    HeightNotRespected { generator: String, defect: String },
    #[error("counit axiom fails on `{monomial}`")]
    CounitFailed { monomial: String },
    #[error("coproduct is not coassociative on `{monomial}`")]
    NotCoassociative { monomial: String },
}

/// Statistics from a successful bialgebra verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BialgebraReport {
    pub relations_checked: usize,
    pub heights_checked: usize,
    pub basis_elements_checked: usize,
}

/// Verifies that the coproduct spec makes the presented algebra a bialgebra
/// through degree `cap`:
///
/// 1. every commutator relation is respected: `Δ(g_j)Δ(g_i) + Δ(g_i)Δ(g_j)`
///    equals the coproduct of the commutator value (in full degree, not
///    capped);
/// 2. every height relation is respected: `Δ(g)^h = 0`;
/// 3. the counit axiom holds on every basis monomial of degree `<= cap`;
/// 4. the coproduct is coassociative on every basis monomial of degree
///    `<= cap`.
pub fn verify_bialgebra(
    pres: &Presentation,
    cop: &CoproductSpec,
    cap: usize,
) -> Result<BialgebraReport, BialgebraFailure> {
    // Relations.
    let mut relations_checked = 0;
    for (i, j, c) in pres.commutator_pairs() {
        let di = cop.of_generator(pres, i);
        let dj = cop.of_generator(pres, j);
        let mut defect = dj.mul(pres, &di);
        defect.add_assign(&di.mul(pres, &dj));
        defect.add_assign(&coproduct(pres, cop, c));
        if !defect.is_zero() {
            return Err(BialgebraFailure::RelationNotRespected {
                earlier: pres.generator(i).name.clone(),
                later: pres.generator(j).name.clone(),
                defect: defect.format(pres),
            });
        }
        relations_checked += 1;
    }

    // Heights.
    let mut heights_checked = 0;
    for g in 0..pres.num_generators() {
        let Some(h) = pres.generator(g).height else {
            continue;
        };
        let dg = cop.of_generator(pres, g);
        let mut power = dg.clone();
        for _ in 1..h {
            power = power.mul(pres, &dg);
        }
        if !power.is_zero() {
            return Err(BialgebraFailure::HeightNotRespected {
                generator: pres.generator(g).name.clone(),
                defect: power.format(pres),
            });
        }
        heights_checked += 1;
    }

    // Full coproducts of all basis monomials through the cap, bottom-up:
    // Δ(g · m') = Δ(g) · Δ(m') with the lower factor memoized.
    let mut table: BTreeMap<Monomial, TensorElement> = BTreeMap::new();
    let unit = Monomial::unit(pres.num_generators());
    table.insert(unit.clone(), TensorElement::from_pair(unit.clone(), unit.clone()));
    let mut basis_elements_checked = 0;
    let mut by_degree: Vec<Vec<Monomial>> = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        by_degree.push(pres.basis_in_degree(n));
        for m in &by_degree[n] {
            if n == 0 {
                continue;
            }
            let first = m.letters().next().expect("positive degree");
            let mut rest = m.exponents().to_vec();
            rest[first] -= 1;
            let rest = Monomial::from_exponents(rest);
            let dm = cop
                .of_generator(pres, first)
                .mul(pres, &table[&rest]);
            // Counit: the unit-component part of Δ(m) must be exactly
            // m ⊗ 1 + 1 ⊗ m.
            let mut unit_part: TensorElement = dm
                .iter()
                .filter(|(a, b)| a.is_unit() || b.is_unit())
                .cloned()
                .collect();
            unit_part.toggle((m.clone(), unit.clone()));
            unit_part.toggle((unit.clone(), m.clone()));
            if !unit_part.is_zero() {
                return Err(BialgebraFailure::CounitFailed {
                    monomial: pres.format_monomial(m),
                });
            }
            table.insert(m.clone(), dm);
        }
    }

    // Coassociativity on indices: global ids for positive-degree basis
    // monomials keep the triple-tensor bookkeeping cheap.
    let mut ids: BTreeMap<&Monomial, usize> = BTreeMap::new();
    let mut reduced: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut order: Vec<&Monomial> = Vec::new();
    for bucket in by_degree.iter().skip(1) {
        for m in bucket {
            ids.insert(m, order.len());
            order.push(m);
        }
    }
    for &m in &order {
        let pairs = table[m]
            .reduced()
            .iter()
            .map(|(a, b)| (ids[a], ids[b]))
            .collect();
        reduced.push(pairs);
    }
    for (e, &m) in order.iter().enumerate() {
        let mut defect: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        let mut toggle = |t: (usize, usize, usize)| {
            if !defect.remove(&t) {
                defect.insert(t);
            }
        };
        for &(x, y) in &reduced[e] {
            for &(a, b) in &reduced[x] {
                toggle((a, b, y));
            }
            for &(a, b) in &reduced[y] {
                toggle((x, a, b));
            }
        }
        if !defect.is_empty() {
            return Err(BialgebraFailure::NotCoassociative {
                monomial: pres.format_monomial(m),
            });
        }
        basis_elements_checked += 1;
    }

    Ok(BialgebraReport {
        relations_checked,
        heights_checked,
        basis_elements_checked,
    })
}

/// Basis of the space of primitives in degree `n`: the kernel of the
/// reduced coproduct restricted to that degree.
pub fn primitives_in_degree(
    pres: &Presentation,
    cop: &CoproductSpec,
    n: usize,
) -> Vec<Element> {
    let basis = pres.basis_in_degree(n);
    let mut col_of: BTreeMap<(Monomial, Monomial), usize> = BTreeMap::new();
    for i in 1..n {
        for x in pres.basis_in_degree(i) {
            for y in pres.basis_in_degree(n - i) {
                let next = col_of.len();
                col_of.insert((x.clone(), y), next);
            }
        }
    }
    let mut b = Gf2MatrixBuilder::new(basis.len(), col_of.len());
    for (r, m) in basis.iter().enumerate() {
        let red = reduced_coproduct(pres, cop, &Element::from_monomial(m.clone()));
        for pair in red.iter() {
            b.flip(r, col_of[pair]);
        }
    }
    b.build()
        .transpose()
        .kernel_basis()
        .iter()
        .map(|v| {
            v.iter_ones()
                .map(|i| basis[i].clone())
                .collect::<Element>()
        })
        .collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoalgebraError {
    #[error("reduced coproduct of `{0}` is not coassociative")]
    NotCoassociative(String),
    #[error("reduced coproduct of `{element}` pairs degrees {got} where {want} is required")]
    DegreeMismatch {
        element: String,
        got: usize,
        want: usize,
    },
}

/// A connected graded coalgebra presented by basis: the positive-degree
/// basis elements carry names, degrees, and reduced coproducts written in
/// the same basis. Degree 0 is implicitly one-dimensional on the unit.
#[derive(Clone, Debug)]
pub struct CoalgebraData {
    names: Vec<String>,
    degrees: Vec<usize>,
    reduced: Vec<Vec<(usize, usize)>>,
    by_degree: Vec<Vec<usize>>,
}

impl CoalgebraData {
    fn assemble(
        names: Vec<String>,
        degrees: Vec<usize>,
        reduced: Vec<Vec<(usize, usize)>>,
        cap: usize,
    ) -> Result<Self, CoalgebraError> {
        let mut by_degree = vec![Vec::new(); cap + 1];
        for (i, &d) in degrees.iter().enumerate() {
            by_degree[d].push(i);
        }
        let data = CoalgebraData {
            names,
            degrees,
            reduced,
            by_degree,
        };
        data.validate()?;
        Ok(data)
    }

    /// Checks degree bookkeeping and coassociativity of every reduced
    /// coproduct. Cobar differentials square to zero exactly because of
    /// this, so the constructors refuse inconsistent data outright.
    fn validate(&self) -> Result<(), CoalgebraError> {
        for (e, pairs) in self.reduced.iter().enumerate() {
            for &(x, y) in pairs {
                let got = self.degrees[x] + self.degrees[y];
                if got != self.degrees[e] {
                    return Err(CoalgebraError::DegreeMismatch {
                        element: self.names[e].clone(),
                        got,
                        want: self.degrees[e],
                    });
                }
            }
        }
        for e in 0..self.reduced.len() {
            let mut defect: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
            let mut toggle = |t: (usize, usize, usize)| {
                if !defect.remove(&t) {
                    defect.insert(t);
                }
            };
            for &(x, y) in &self.reduced[e] {
                for &(a, b) in &self.reduced[x] {
                    toggle((a, b, y));
                }
                for &(a, b) in &self.reduced[y] {
                    toggle((x, a, b));
                }
            }
            if !defect.is_empty() {
                return Err(CoalgebraError::NotCoassociative(self.names[e].clone()));
            }
        }
        Ok(())
    }

    /// Extracts the coalgebra underlying a presented bialgebra, through
    /// degree `cap`. Callers wanting a consistency guarantee should run
    /// [`verify_bialgebra`] first; this constructor revalidates
    /// coassociativity on the extracted data regardless.
    pub fn from_presented(
        pres: &Presentation,
        cop: &CoproductSpec,
        cap: usize,
    ) -> Result<Self, CoalgebraError> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut monos = Vec::new();
        let mut ids: BTreeMap<Monomial, usize> = BTreeMap::new();
        for n in 1..=cap {
            for m in pres.basis_in_degree(n) {
                ids.insert(m.clone(), names.len());
                names.push(pres.format_monomial(&m));
                degrees.push(n);
                monos.push(m);
            }
        }
        let reduced = monos
            .iter()
            .map(|m| {
                reduced_coproduct(pres, cop, &Element::from_monomial(m.clone()))
                    .iter()
                    .map(|(a, b)| (ids[a], ids[b]))
                    .collect()
            })
            .collect();
        Self::assemble(names, degrees, reduced, cap)
    }

    /// Graded dual of a commutative quotient ring, through degree `cap`.
    /// Basis elements are dual to the standard monomials, and the reduced
    /// coproduct records multiplication upstairs: `x ⊗ y` appears in the
    /// coproduct dual to `z` exactly when `z` appears in `x · y`.
    pub fn dual_of_ring(gb: &GroebnerBasis, cap: usize) -> Result<Self, CoalgebraError> {
        assert!(cap <= gb.cap(), "dual requested beyond the basis cap");
        let ring = gb.ring();
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut monos = Vec::new();
        let mut ids: BTreeMap<crate::groebner::RingMonomial, usize> = BTreeMap::new();
        for n in 1..=cap {
            for m in gb.standard_monomials(n) {
                ids.insert(m.clone(), names.len());
                names.push(ring.format_monomial(&m));
                degrees.push(n);
                monos.push(m);
            }
        }
        let mut reduced: Vec<Vec<(usize, usize)>> = vec![Vec::new(); monos.len()];
        for (xi, x) in monos.iter().enumerate() {
            for (yi, y) in monos.iter().enumerate() {
                let d = degrees[xi] + degrees[yi];
                if d > cap {
                    continue;
                }
                let product = gb.normal_form(crate::groebner::RingElement::from_monomial(x.mul(y)));
                for z in product.iter() {
                    reduced[ids[z]].push((xi, yi));
                }
            }
        }
        Self::assemble(names, degrees, reduced, cap)
    }

    pub fn cap(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn num_elements(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn degree(&self, id: usize) -> usize {
        self.degrees[id]
    }

    pub fn reduced(&self, id: usize) -> &[(usize, usize)] {
        &self.reduced[id]
    }

    pub fn basis_in_degree(&self, n: usize) -> &[usize] {
        &self.by_degree[n]
    }

    /// Dimensions including the implicit unit in degree 0.
    pub fn dims(&self) -> GradedDims {
        let mut dims = GradedDims::zeros(self.cap());
        dims.set(0, 1);
        for (n, bucket) in self.by_degree.iter().enumerate().skip(1) {
            dims.set(n, bucket.len() as u64);
        }
        dims
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use crate::algebra::testutil::braided_six;

    /// The braided six-generator presentation with its compatible coproduct:
    /// `Δ̄(a4) = a2 ⊗ a2`, `Δ̄(z6) = x3 ⊗ x3`, everything else primitive.
    pub fn braided_six_with_coproduct() -> (Presentation, CoproductSpec) {
        let pres = braided_six();
        let mut cop = CoproductSpec::primitive(&pres);
        let a2 = pres.monomial(&[("a2", 1)]).unwrap();
        cop.set_reduced(&pres, "a4", TensorElement::from_pair(a2.clone(), a2))
            .unwrap();
        let x3 = pres.monomial(&[("x3", 1)]).unwrap();
        cop.set_reduced(&pres, "z6", TensorElement::from_pair(x3.clone(), x3))
            .unwrap();
        (pres, cop)
    }
}

#[cfg(test)]
mod tests {
    use super::testutil::braided_six_with_coproduct;
    use super::*;
    use crate::algebra::GeneratorSpec;
    use crate::groebner::testutil::five_var_ring;
    use crate::groebner::CommutativeRing;

    fn exterior_two() -> (Presentation, CoproductSpec) {
        let pres = Presentation::new(vec![
            GeneratorSpec::nil("x3", 3, 2),
            GeneratorSpec::nil("x5", 5, 2),
        ])
        .unwrap();
        let cop = CoproductSpec::primitive(&pres);
        (pres, cop)
    }

    #[test]
    fn coproduct_of_a_product_multiplies_coproducts() {
        let (pres, cop) = exterior_two();
        let m = pres.element(&[&[("x3", 1), ("x5", 1)]]).unwrap();
        let red = reduced_coproduct(&pres, &cop, &m);
        let x3 = pres.monomial(&[("x3", 1)]).unwrap();
        let x5 = pres.monomial(&[("x5", 1)]).unwrap();
        let expected: TensorElement =
            [(x3.clone(), x5.clone()), (x5, x3)].into_iter().collect();
        assert_eq!(red, expected);
    }

    #[test]
    fn braided_coproduct_is_a_bialgebra_through_twenty() {
        let (pres, cop) = braided_six_with_coproduct();
        let report = verify_bialgebra(&pres, &cop, 20).expect("bialgebra axioms hold");
        assert_eq!(report.relations_checked, 3);
        assert_eq!(report.heights_checked, 4);
        assert!(report.basis_elements_checked > 10);
    }

    #[test]
    fn dropping_a_twist_breaks_a_commutator_relation() {
        // With Δ̄(a4) forced to zero, [a2, z6] = a4^2 still holds (a4 only
        // enters squared and the cross terms cancel), but [a4, z6] breaks
        // with defect a2 ⊗ a4^2 + a4^2 ⊗ a2.
        let (pres, _) = braided_six_with_coproduct();
        let mut cop = CoproductSpec::primitive(&pres);
        let x3 = pres.monomial(&[("x3", 1)]).unwrap();
        cop.set_reduced(&pres, "z6", TensorElement::from_pair(x3.clone(), x3))
            .unwrap();
        let err = verify_bialgebra(&pres, &cop, 12).expect_err("must fail");
        match err {
            BialgebraFailure::RelationNotRespected { earlier, later, defect } => {
                assert_eq!((earlier.as_str(), later.as_str()), ("a4", "z6"));
                assert_eq!(defect, "a4^2 (x) a2 + a2 (x) a4^2");
            }
            other => panic!("unexpected failure kind: {other}"),
        }
    }

    #[test]
    fn primitive_spaces_have_expected_dimensions() {
        let (pres, cop) = braided_six_with_coproduct();
        let dims: Vec<usize> = (1..=6)
            .map(|n| primitives_in_degree(&pres, &cop, n).len())
            .collect();
        // a2, x3 primitive; a4 has Δ̄ = a2 ⊗ a2 so degree 4 is empty;
        // x5 primitive; degree 6 holds z6 and a2*a4, neither primitive
        // nor any combination.
        assert_eq!(dims, [0, 1, 1, 0, 1, 0]);
    }

    #[test]
    fn primitives_are_exactly_the_kernel_of_the_reduced_coproduct() {
        let (pres, cop) = braided_six_with_coproduct();
        for n in 1..=14 {
            for p in primitives_in_degree(&pres, &cop, n) {
                assert!(reduced_coproduct(&pres, &cop, &p).is_zero());
            }
        }
    }

    #[test]
    fn coalgebra_from_presentation_matches_direct_reduced_coproducts() {
        let (pres, cop) = braided_six_with_coproduct();
        let data = CoalgebraData::from_presented(&pres, &cop, 12).unwrap();
        assert_eq!(data.dims(), pres.poincare(12));
        // Find z6 and check its reduced coproduct is x3 ⊗ x3 in index form.
        let z6 = (0..data.num_elements()).find(|&i| data.name(i) == "z6").unwrap();
        let x3 = (0..data.num_elements()).find(|&i| data.name(i) == "x3").unwrap();
        assert_eq!(data.reduced(z6), [(x3, x3)]);
    }

    #[test]
    fn dual_of_polynomial_ring_is_divided_powers() {
        let ring = CommutativeRing::new(vec![("u".into(), 2)]).unwrap();
        let gb = ring.groebner_basis(8);
        let dual = CoalgebraData::dual_of_ring(&gb, 8).unwrap();
        assert_eq!(dual.dims().as_slice(), &[1, 0, 1, 0, 1, 0, 1, 0, 1]);
        // Δ̄(dual of u^n) = Σ dual(u^i) ⊗ dual(u^{n-i}).
        let of = |name: &str| (0..dual.num_elements()).find(|&i| dual.name(i) == name).unwrap();
        let (u1, u2, u3, u4) = (of("u"), of("u^2"), of("u^3"), of("u^4"));
        assert_eq!(dual.reduced(u1), []);
        assert_eq!(dual.reduced(u2), [(u1, u1)]);
        assert_eq!(dual.reduced(u3), [(u1, u2), (u2, u1)]);
        assert_eq!(dual.reduced(u4), [(u1, u3), (u2, u2), (u3, u1)]);
    }

    #[test]
    fn dual_of_truncated_ring_stops_at_the_truncation() {
        let mut ring = CommutativeRing::new(vec![("a".into(), 2)]).unwrap();
        let a4 = ring.element(&[&[("a", 4)]]).unwrap();
        ring.add_relation(a4).unwrap();
        let gb = ring.groebner_basis(10);
        let dual = CoalgebraData::dual_of_ring(&gb, 10).unwrap();
        assert_eq!(dual.dims().as_slice(), &[1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn dual_coproduct_picks_up_relation_cross_terms() {
        // In the five-variable ring, y5 · y5 rewrites to y3*t7 + y3^2*u4,
        // so the coproduct dual to y3*t7 contains y5 ⊗ y5 besides the
        // obvious splittings.
        let ring = five_var_ring();
        let gb = ring.groebner_basis(12);
        let dual = CoalgebraData::dual_of_ring(&gb, 12).unwrap();
        let of = |name: &str| {
            (0..dual.num_elements())
                .find(|&i| dual.name(i) == name)
                .unwrap_or_else(|| panic!("no dual element `{name}`"))
        };
        let (y3t7, y3, t7, y5) = (of("y3*t7"), of("y3"), of("t7"), of("y5"));
        let got: BTreeSet<(usize, usize)> = dual.reduced(y3t7).iter().copied().collect();
        let expected: BTreeSet<(usize, usize)> =
            [(y3, t7), (t7, y3), (y5, y5)].into_iter().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn coalgebra_validation_rejects_broken_coassociativity() {
        // Hand-built data: w in degree 4 with Δ̄(w) = x ⊗ y only (x deg 1,
        // y deg 3, y itself with Δ̄(y) = x ⊗ z): coassociativity fails.
        let names = vec!["x".into(), "z".into(), "y".into(), "w".into()];
        let degrees = vec![1, 2, 3, 4];
        let reduced = vec![vec![], vec![], vec![(0, 1)], vec![(0, 2)]];
        let err = CoalgebraData::assemble(names, degrees, reduced, 4)
            .expect_err("not coassociative");
        assert_eq!(err, CoalgebraError::NotCoassociative("w".into()));
    }

    #[test]
    fn coalgebra_validation_rejects_degree_mismatches() {
        let names = vec!["x".into(), "w".into()];
        let degrees = vec![1, 3];
        let reduced = vec![vec![], vec![(0, 0)]];
        let err = CoalgebraData::assemble(names, degrees, reduced, 3).expect_err("degrees wrong");
        assert!(matches!(err, CoalgebraError::DegreeMismatch { .. }));
    }

    #[test]
    fn coproduct_spec_validation() {
        let (pres, _) = exterior_two();
        let mut cop = CoproductSpec::primitive(&pres);
        let x3 = pres.monomial(&[("x3", 1)]).unwrap();
        let unit = Monomial::unit(pres.num_generators());
        assert!(cop
            .set_reduced(&pres, "x5", TensorElement::from_pair(x3.clone(), unit))
            .is_err());
        assert!(cop
            .set_reduced(&pres, "x5", TensorElement::from_pair(x3.clone(), x3))
            .is_err());
    }
}
