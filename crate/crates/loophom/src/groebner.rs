//! Graded commutative GF(2) polynomial rings modulo homogeneous relations.
//!
//! The quotient is handled through a degree-truncated Gröbner basis: the
//! term order is graded (by the ring's own grading) with ties broken
//! lexicographically, the *first listed variable most significant*. The
//! listing order therefore decides which monomials count as standard, and
//! callers that care about a specific standard basis choose it deliberately.
//! Dimensions of the quotient are order-independent, so any listing gives
//! the same [`GroebnerBasis::quotient_dims`].

use std::collections::{BTreeMap, BTreeSet};
use std::cmp::Ordering;

use thiserror::Error;

use crate::grading::GradedDims;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("variable `{0}` has degree 0; the ring must be connected")]
    DegreeZero(String),
    #[error("relation `{0}` is not homogeneous")]
    InhomogeneousRelation(String),
    #[error("a relation is zero or contains the unit monomial")]
    DegenerateRelation,
}

/// Commutative monomial: one exponent per listed variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RingMonomial {
    exps: Vec<u32>,
}

impl RingMonomial {
    pub fn unit(num_vars: usize) -> Self {
        RingMonomial {
            exps: vec![0; num_vars],
        }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        RingMonomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &RingMonomial) -> RingMonomial {
        RingMonomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &RingMonomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_into(&self, other: &RingMonomial) -> RingMonomial {
        RingMonomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &RingMonomial) -> RingMonomial {
        RingMonomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }
}

/// GF(2) polynomial: a set of monomials, added by symmetric difference.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RingElement {
    monos: BTreeSet<RingMonomial>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn from_monomial(m: RingMonomial) -> Self {
        let mut monos = BTreeSet::new();
        monos.insert(m);
        RingElement { monos }
    }

    pub fn is_zero(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &RingMonomial> {
        self.monos.iter()
    }

    pub fn contains(&self, m: &RingMonomial) -> bool {
        self.monos.contains(m)
    }

    pub fn toggle(&mut self, m: RingMonomial) {
        if !self.monos.remove(&m) {
            self.monos.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &RingElement) {
        for m in &other.monos {
            self.toggle(m.clone());
        }
    }

    pub fn mul_monomial(&self, m: &RingMonomial) -> RingElement {
        RingElement {
            monos: self.monos.iter().map(|t| t.mul(m)).collect(),
        }
    }
}

impl FromIterator<RingMonomial> for RingElement {
    fn from_iter<T: IntoIterator<Item = RingMonomial>>(iter: T) -> Self {
        let mut e = RingElement::zero();
        for m in iter {
            e.toggle(m);
        }
        e
    }
}

/// A graded polynomial ring over GF(2) with homogeneous relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativeRing {
    vars: Vec<(String, usize)>,
    index: BTreeMap<String, usize>,
    relations: Vec<RingElement>,
}

impl CommutativeRing {
    /// Variables keep their listed order — it is the tie-break significance
    /// order of the term order, not a sorting key.
    pub fn new(vars: Vec<(String, usize)>) -> Result<Self, RingError> {
        let mut index = BTreeMap::new();
        for (i, (name, deg)) in vars.iter().enumerate() {
            if *deg == 0 {
                return Err(RingError::DegreeZero(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(RingError::DuplicateVariable(name.clone()));
            }
        }
        Ok(CommutativeRing {
            vars,
            index,
            relations: Vec::new(),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[(String, usize)] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize, RingError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| RingError::UnknownVariable(name.to_string()))
    }

    pub fn monomial_degree(&self, m: &RingMonomial) -> usize {
        m.exponents()
            .iter()
            .enumerate()
            .map(|(i, &e)| self.vars[i].1 * e as usize)
            .sum()
    }

    pub fn element_degree(&self, e: &RingElement) -> Option<usize> {
        e.iter().next().map(|m| self.monomial_degree(m))
    }

    pub fn monomial(&self, factors: &[(&str, u32)]) -> Result<RingMonomial, RingError> {
        let mut exps = vec![0u32; self.vars.len()];
        for &(name, e) in factors {
            exps[self.var_index(name)?] += e;
        }
        Ok(RingMonomial::from_exponents(exps))
    }

    pub fn element(&self, monomials: &[&[(&str, u32)]]) -> Result<RingElement, RingError> {
        let mut e = RingElement::zero();
        for factors in monomials {
            e.toggle(self.monomial(factors)?);
        }
        Ok(e)
    }

    /// Adds a homogeneous relation of positive degree.
    pub fn add_relation(&mut self, rel: RingElement) -> Result<(), RingError> {
        if rel.is_zero() {
            return Err(RingError::DegenerateRelation);
        }
        let degrees: Vec<usize> = rel.iter().map(|m| self.monomial_degree(m)).collect();
        let first = degrees[0];
        if degrees.iter().any(|&d| d != first) {
            return Err(RingError::InhomogeneousRelation(self.format_element(&rel)));
        }
        if first == 0 {
            return Err(RingError::DegenerateRelation);
        }
        self.relations.push(rel);
        Ok(())
    }

    pub fn relations(&self) -> &[RingElement] {
        &self.relations
    }

    /// Graded-lex comparison: higher graded degree wins; ties compare
    /// exponents left to right, first listed variable most significant.
    pub fn cmp_monomials(&self, a: &RingMonomial, b: &RingMonomial) -> Ordering {
        let da = self.monomial_degree(a);
        let db = self.monomial_degree(b);
        da.cmp(&db).then_with(|| a.exponents().cmp(b.exponents()))
    }

    pub fn leading_monomial<'a>(&self, e: &'a RingElement) -> Option<&'a RingMonomial> {
        e.iter().max_by(|a, b| self.cmp_monomials(a, b))
    }

    /// All monomials of graded degree `n`, ascending lexicographically by
    /// exponent vector.
    pub fn monomials_in_degree(&self, n: usize) -> Vec<RingMonomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.vars.len()];
        self.enumerate(0, n, &mut exps, &mut out);
        out
    }

    fn enumerate(&self, var: usize, remaining: usize, exps: &mut Vec<u32>, out: &mut Vec<RingMonomial>) {
        if var == self.vars.len() {
            if remaining == 0 {
                out.push(RingMonomial::from_exponents(exps.clone()));
            }
            return;
        }
        let deg = self.vars[var].1;
        for e in 0..=(remaining / deg) as u32 {
            exps[var] = e;
            self.enumerate(var + 1, remaining - deg * e as usize, exps, out);
        }
        exps[var] = 0;
    }

    /// Fully reduces `f` modulo `basis`: while any term is divisible by some
    /// leading monomial, cancel it. Terminates because each step replaces a
    /// term by strictly smaller ones in the term order.
    fn reduce(&self, mut f: RingElement, basis: &[(RingMonomial, RingElement)]) -> RingElement {
        'outer: loop {
            let mut terms: Vec<&RingMonomial> = f.iter().collect();
            terms.sort_by(|a, b| self.cmp_monomials(b, a));
            for t in terms {
                for (lead, g) in basis {
                    if lead.divides(t) {
                        let q = lead.quotient_into(t);
                        let t = t.clone();
                        f.add_assign(&g.mul_monomial(&q));
                        debug_assert!(!f.contains(&t));
                        continue 'outer;
                    }
                }
            }
            return f;
        }
    }

    /// Buchberger's algorithm truncated at graded degree `cap`: S-pairs whose
    /// lcm exceeds `cap` are skipped, and new elements of degree above `cap`
    /// are dropped (they cannot affect monomials at or below the cap).
    pub fn groebner_basis(&self, cap: usize) -> GroebnerBasis {
        let mut basis: Vec<(RingMonomial, RingElement)> = Vec::new();
        let mut queue: Vec<RingElement> = self.relations.clone();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        loop {
            while let Some(f) = queue.pop() {
                let f = self.reduce(f, &basis);
                if f.is_zero() {
                    continue;
                }
                if self.element_degree(&f).expect("nonzero") > cap {
                    continue;
                }
                let lead = self.leading_monomial(&f).expect("nonzero").clone();
                let id = basis.len();
                for other in 0..id {
                    pairs.push((other, id));
                }
                basis.push((lead, f));
            }
            let Some((i, j)) = pairs.pop() else {
                return GroebnerBasis {
                    ring: self.clone(),
                    basis,
                    cap,
                };
            };
            let (li, fi) = &basis[i];
            let (lj, fj) = &basis[j];
            let lcm = li.lcm(lj);
            if self.monomial_degree(&lcm) > cap {
                continue;
            }
            if lcm == li.mul(lj) {
                continue; // coprime leading terms: the S-pair reduces to zero
            }
            let mut s = fi.mul_monomial(&li.quotient_into(&lcm));
            s.add_assign(&fj.mul_monomial(&lj.quotient_into(&lcm)));
            queue.push(s);
        }
    }

    pub fn format_monomial(&self, m: &RingMonomial) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].0.clone()),
                _ => parts.push(format!("{}^{}", self.vars[i].0, e)),
            }
        }
        parts.join("*")
    }

    pub fn format_element(&self, e: &RingElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        e.iter()
            .map(|m| self.format_monomial(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A Gröbner basis valid through graded degree `cap`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: CommutativeRing,
    basis: Vec<(RingMonomial, RingElement)>,
    cap: usize,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &CommutativeRing {
        &self.ring
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &RingMonomial> {
        self.basis.iter().map(|(l, _)| l)
    }

    pub fn elements(&self) -> impl Iterator<Item = &RingElement> {
        self.basis.iter().map(|(_, f)| f)
    }

    /// Normal form of `f` modulo the ideal; exact for degrees `<= cap`.
    pub fn normal_form(&self, f: RingElement) -> RingElement {
        self.ring.reduce(f, &self.basis)
    }

    /// Monomials of degree `n` not divisible by any leading monomial —
    /// a GF(2) basis of the quotient in that degree (`n <= cap`).
    pub fn standard_monomials(&self, n: usize) -> Vec<RingMonomial> {
        assert!(
            n <= self.cap,
            "standard monomials requested in degree {n} beyond the basis cap {}",
            self.cap
        );
        self.ring
            .monomials_in_degree(n)
            .into_iter()
            .filter(|m| !self.basis.iter().any(|(l, _)| l.divides(m)))
            .collect()
    }

    /// Degreewise dimensions of the quotient ring through `cap`.
    pub fn quotient_dims(&self) -> GradedDims {
        let mut dims = GradedDims::zeros(self.cap);
        for n in 0..=self.cap {
            dims.set(n, self.standard_monomials(n).len() as u64);
        }
        dims
    }
}
