//! Sparse multivariate polynomials over the working field, used to expand
//! products of linear forms (pencil fibers, arrangement block polynomials)
//! exactly.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cyclo::{FieldElem, FieldOps, FieldSpec};

/// A polynomial in `V` variables with exact field coefficients, keyed by
/// exponent vectors.  Zero coefficients are never stored.
#[derive(Debug, Clone)]
pub struct SparsePoly<const V: usize> {
    spec: Arc<FieldSpec>,
    terms: BTreeMap<[u32; V], FieldElem>,
}

impl<const V: usize> PartialEq for SparsePoly<V> {
    fn eq(&self, other: &Self) -> bool {
        self.spec.conductor() == other.spec.conductor() && self.terms == other.terms
    }
}

impl<const V: usize> Eq for SparsePoly<V> {}

impl<const V: usize> SparsePoly<V> {
    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert([0u32; V], spec.one());
        SparsePoly {
            spec: spec.clone(),
            terms,
        }
    }

    /// The single-term polynomial `coeff * x^exp`.
    pub fn monomial(spec: &Arc<FieldSpec>, exp: [u32; V], coeff: FieldElem) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        SparsePoly {
            spec: spec.clone(),
            terms,
        }
    }

    /// The linear form with the given coefficients.
    pub fn linear(spec: &Arc<FieldSpec>, coeffs: &[FieldElem]) -> Self {
        assert_eq!(coeffs.len(), V);
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exp = [0u32; V];
                exp[i] = 1;
                terms.insert(exp, c.clone());
            }
        }
        SparsePoly {
            spec: spec.clone(),
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<[u32; V], FieldElem> {
        &self.terms
    }

    fn insert_add(&mut self, exp: [u32; V], value: FieldElem) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(slot) => {
                if !value.is_zero() {
                    slot.insert(value);
                }
            }
            Entry::Occupied(mut slot) => {
                let sum = &*slot.get() + &value;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn mul_linear(&self, coeffs: &[FieldElem]) -> Self {
        assert_eq!(coeffs.len(), V);
        let mut out = SparsePoly {
            spec: self.spec.clone(),
            terms: BTreeMap::new(),
        };
        for (exp, c) in &self.terms {
            for (i, l) in coeffs.iter().enumerate() {
                if l.is_zero() {
                    continue;
                }
                let mut e = *exp;
                e[i] += 1;
                out.insert_add(e, c * l);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.insert_add(*exp, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = SparsePoly {
            spec: self.spec.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for (slot, add) in e.iter_mut().zip(eb) {
                    *slot += add;
                }
                out.insert_add(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, factor: &FieldElem) -> Self {
        if factor.is_zero() {
            return SparsePoly {
                spec: self.spec.clone(),
                terms: BTreeMap::new(),
            };
        }
        SparsePoly {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    /// Product of `line^mult` over the given (linear form, multiplicity)
    /// pairs.
    pub fn product_of_linears<'a, I>(spec: &Arc<FieldSpec>, factors: I) -> Self
    where
        I: IntoIterator<Item = (&'a [FieldElem], u64)>,
    {
        let mut out = Self::one(spec);
        for (coeffs, mult) in factors {
            for _ in 0..mult {
                out = out.mul_linear(coeffs);
            }
        }
        out
    }

    /// Scales so the lexicographically-first monomial has coefficient one;
    /// makes projectively-equal products comparable.
    pub fn normalized(&self) -> Self {
        match self.terms.iter().next() {
            None => self.clone(),
            Some((_, lead)) => self.scale(&lead.inv().expect("leading coefficient is nonzero")),
        }
    }
}

/// Dimension of the span of the given polynomials, computed by exact row
/// reduction of their coefficient vectors over the union of monomials.
pub fn span_dimension<const V: usize>(polys: &[SparsePoly<V>]) -> usize {
    let Some(first) = polys.first() else {
        return 0;
    };
    let spec = first.spec.clone();
    let mut monomials: Vec<[u32; V]> = Vec::new();
    for p in polys {
        for exp in p.terms.keys() {
            if !monomials.contains(exp) {
                monomials.push(*exp);
            }
        }
    }
    monomials.sort_unstable();
    let rows: Vec<Vec<FieldElem>> = polys
        .iter()
        .map(|p| {
            monomials
                .iter()
                .map(|m| p.terms.get(m).cloned().unwrap_or_else(|| spec.zero()))
                .collect()
        })
        .collect();
    crate::linalg::rank(&rows)
}
