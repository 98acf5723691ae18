use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::moments::MomentIndex;
use crate::toric::GradedBinomial;

/// A multiset of moment coordinates, sorted.
pub type Monomial = Vec<MomentIndex>;

/// A polynomial in the moment coordinates with rational coefficients.
/// Terms are kept in a map, so there are no repeated monomials, and zero
/// coefficients are dropped on insertion.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparsePolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl SparsePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, Monomial)>) -> Self {
        let mut p = Self::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_terms([(BigRational::one(), m)])
    }

    pub fn from_binomial(b: &GradedBinomial) -> Self {
        Self::from_terms([
            (BigRational::one(), b.plus.clone()),
            (-BigRational::one(), b.minus.clone()),
        ])
    }

    pub fn add_term(&mut self, coeff: BigRational, mut monomial: Monomial) {
        if coeff.is_zero() {
            return;
        }
        monomial.sort();
        match self.terms.entry(monomial) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Total degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Vec::len);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn variables(&self) -> BTreeSet<MomentIndex> {
        self.terms.keys().flatten().cloned().collect()
    }

    pub fn neg(&self) -> Self {
        SparsePolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                m.extend(m2.iter().cloned());
                out.add_term(c1 * c2, m);
            }
        }
        out
    }

    /// The polynomial with sign chosen so that its first term is positive.
    pub fn normalized_sign(&self) -> Self {
        match self.terms.values().next() {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn map_indices(&self, f: impl Fn(&MomentIndex) -> MomentIndex) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (c.clone(), m.iter().map(&f).collect())),
        )
    }

    /// The binomial plus - minus when this is a difference of two monomials.
    pub fn to_binomial(&self) -> Option<GradedBinomial> {
        let mut it = self.terms.iter();
        let (m1, c1) = it.next()?;
        let (m2, c2) = it.next()?;
        if it.next().is_some() || !(c1 + c2).is_zero() || c1.abs() != BigRational::one() {
            return None;
        }
        let (plus, minus) = if c1.is_positive() { (m1, m2) } else { (m2, m1) };
        GradedBinomial::new(plus.clone(), minus.clone()).ok()
    }

    /// Evaluates at the given coordinate values. `zero` fixes the scalar
    /// domain for the empty sum.
    pub fn evaluate<T: crate::field::Scalar>(&self, values: &HashMap<MomentIndex, T>, zero: &T) -> Result<T> {
        let mut acc = zero.zero_like();
        for (m, c) in &self.terms {
            let coeff = zero
                .from_rational_like(c)
                .ok_or_else(|| Error::PreconditionFailed(format!("coefficient {c} not representable")))?;
            let mut term = coeff;
            for idx in m {
                let v = values.get(idx).ok_or_else(|| Error::ScopeMismatch(idx.clone()))?;
                term = term.mul(v);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{sign}")?;
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let names: Vec<String> = m.iter().map(|i| format!("m{i}")).collect();
            write!(f, "{}", names.join("*"))?;
        }
        Ok(())
    }
}

struct TermView<'a>(&'a Monomial, &'a BigRational);

impl Serialize for TermView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("coeff", &self.1.to_string())?;
        map.serialize_entry("monomial", self.0)?;
        map.end()
    }
}

struct TermList<'a>(&'a BTreeMap<Monomial, BigRational>);

impl Serialize for TermList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (m, c) in self.0 {
            seq.serialize_element(&TermView(m, c))?;
        }
        seq.end()
    }
}

impl Serialize for SparsePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        map.serialize_entry("terms", &TermList(&self.terms))?;
        map.end()
    }
}
