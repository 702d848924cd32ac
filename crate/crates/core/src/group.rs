//! Finitely generated abelian groups, bicharacters, and finitely supported
//! group-algebra elements (including tensor powers of the group algebra).
//!
//! Elements are integer exponent vectors, canonically reduced modulo the
//! torsion orders, so equality and map keys are well defined.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::{LinMap, SparseVec};
use crate::scalar::Scalar;

/// Z^r x Z/m_1 x ... x Z/m_s with the free part first.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

/// A group element as a reduced exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<i64>);

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: vec![order],
        }
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        if self.is_finite() {
            Some(self.torsion.iter().product())
        } else {
            None
        }
    }

    pub fn reduce(&self, coords: Vec<i64>) -> Result<GroupElement, Error> {
        if coords.len() != self.rank() {
            return Err(Error::Invalid("group element has wrong rank".into()));
        }
        let mut c = coords;
        for (i, m) in self.torsion.iter().enumerate() {
            let k = self.free_rank + i;
            c[k] = c[k].rem_euclid(*m as i64);
        }
        Ok(GroupElement(c))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce(coords).expect("rank-checked elements")
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().map(|x| -x).collect())
            .expect("rank-checked element")
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        GroupElement(c)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    /// All elements with free coordinates in [-window, window] and torsion
    /// coordinates in full range, in lexicographic order.
    pub fn window(&self, window: i64) -> Vec<GroupElement> {
        let mut ranges: Vec<Vec<i64>> = Vec::new();
        for _ in 0..self.free_rank {
            ranges.push((-window..=window).collect());
        }
        for m in &self.torsion {
            ranges.push((0..*m as i64).collect());
        }
        let mut out = vec![GroupElement(Vec::new())];
        for r in ranges {
            let mut next = Vec::with_capacity(out.len() * r.len());
            for e in &out {
                for v in &r {
                    let mut c = e.0.clone();
                    c.push(*v);
                    next.push(GroupElement(c));
                }
            }
            out = next;
        }
        out
    }

    /// Enumerates the whole group; only defined for finite groups.
    pub fn elements(&self) -> Result<Vec<GroupElement>, Error> {
        if !self.is_finite() {
            return Err(Error::Invalid("cannot enumerate an infinite group".into()));
        }
        Ok(self.window(0))
    }
}

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        alloc::format!("({})", parts.join(","))
    }
}

/// A bicharacter G x G -> k\{0}, stored by its values on generator pairs and
/// extended bimultiplicatively.
#[derive(Clone, Debug, PartialEq)]
pub struct Bicharacter {
    pub group: AbelianGroup,
    /// values[i][j] = chi(gen_i, gen_j)
    pub values: Vec<Vec<Scalar>>,
}

impl Bicharacter {
    pub fn new(group: AbelianGroup, values: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let r = group.rank();
        if values.len() != r || values.iter().any(|row| row.len() != r) {
            return Err(Error::Invalid("bicharacter table must be rank x rank".into()));
        }
        for row in &values {
            for v in row {
                if v.is_zero() {
                    return Err(Error::Invalid("bicharacter value must be nonzero".into()));
                }
            }
        }
        let chi = Bicharacter { group, values };
        chi.check_torsion_consistency()?;
        Ok(chi)
    }

    pub fn trivial(group: AbelianGroup) -> Self {
        let r = group.rank();
        Bicharacter {
            group,
            values: vec![vec![Scalar::one(); r]; r],
        }
    }

    /// chi(gen_i, gen_j)^m = 1 whenever gen_i or gen_j has torsion order m.
    fn check_torsion_consistency(&self) -> Result<(), Error> {
        let r = self.group.rank();
        for i in 0..r {
            for j in 0..r {
                for (t, m) in self.group.torsion.iter().enumerate() {
                    let k = self.group.free_rank + t;
                    if (i == k || j == k) && self.values[i][j].pow(*m as i64)? != Scalar::one() {
                        return Err(Error::Invalid(
                            "bicharacter value incompatible with torsion order".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, a: &GroupElement, b: &GroupElement) -> Scalar {
        let mut out = Scalar::one();
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                out = out.mul(&self.values[i][j].pow(ai * bj).expect("nonzero value"));
            }
        }
        out
    }

    /// Antisymmetry chi(g,h)chi(h,g) = 1, checked on the generator pairs which
    /// determine chi bimultiplicatively.
    pub fn is_antisymmetric(&self) -> bool {
        let r = self.group.rank();
        (0..r).all(|i| (0..r).all(|j| self.values[i][j].mul(&self.values[j][i]) == Scalar::one()))
    }
}

/// A finitely supported element of k[G]^(x arity).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgElement {
    pub group: AbelianGroup,
    pub arity: usize,
    terms: BTreeMap<Vec<GroupElement>, Scalar>,
}

impl GroupAlgElement {
    pub fn zero(group: AbelianGroup, arity: usize) -> Self {
        GroupAlgElement {
            group,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: AbelianGroup, arity: usize) -> Self {
        let key = vec![group.identity(); arity];
        let mut terms = BTreeMap::new();
        terms.insert(key, Scalar::one());
        GroupAlgElement {
            group,
            arity,
            terms,
        }
    }

    pub fn monomial(
        group: AbelianGroup,
        legs: Vec<GroupElement>,
        coeff: Scalar,
    ) -> Result<Self, Error> {
        for leg in &legs {
            if leg.0.len() != group.rank() {
                return Err(Error::Invalid("monomial leg has wrong rank".into()));
            }
        }
        let legs: Vec<GroupElement> = legs
            .into_iter()
            .map(|g| group.reduce(g.0).expect("rank checked"))
            .collect();
        let arity = legs.len();
        let mut out = GroupAlgElement::zero(group, arity);
        out.add_term(legs, &coeff);
        Ok(out)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<GroupElement>, &Scalar)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, key: Vec<GroupElement>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, c.clone());
            }
            Some(old) => {
                let s = old.add(c);
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return GroupAlgElement::zero(self.group.clone(), self.arity);
        }
        GroupAlgElement {
            group: self.group.clone(),
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.clone(), x.mul(c)))
                .collect(),
        }
    }

    /// Convolution product: legwise group multiplication.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = GroupAlgElement::zero(self.group.clone(), self.arity);
        for (ka, ca) in self.terms() {
            for (kb, cb) in other.terms() {
                let key: Vec<GroupElement> = ka
                    .iter()
                    .zip(kb)
                    .map(|(x, y)| self.group.add(x, y))
                    .collect();
                out.add_term(key, &ca.mul(cb));
            }
        }
        out
    }

    /// Inverse: direct for monomials; by solving the regular representation
    /// for general elements over a finite group.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().expect("one term");
            let key: Vec<GroupElement> = k.iter().map(|g| self.group.neg(g)).collect();
            return GroupAlgElement::monomial(self.group.clone(), key, c.inv()?);
        }
        if !self.group.is_finite() {
            return Err(Error::Invalid(
                "cannot invert a non-monomial element over an infinite group".into(),
            ));
        }
        // basis of k[G]^(x arity) = arity-tuples of group elements
        let elems = self.group.elements()?;
        let mut tuples = vec![Vec::new()];
        for _ in 0..self.arity {
            let mut next = Vec::new();
            for t in &tuples {
                for e in &elems {
                    let mut tt: Vec<GroupElement> = t.clone();
                    tt.push(e.clone());
                    next.push(tt);
                }
            }
            tuples = next;
        }
        let index: BTreeMap<Vec<GroupElement>, usize> = tuples
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let dim = tuples.len();
        // left multiplication operator
        let mut cols = Vec::with_capacity(dim);
        for t in &tuples {
            let mut col = SparseVec::new();
            for (k, c) in self.terms() {
                let key: Vec<GroupElement> =
                    k.iter().zip(t).map(|(x, y)| self.group.add(x, y)).collect();
                col.add_entry(index[&key], c);
            }
            cols.push(col);
        }
        let lmul = LinMap::from_cols(dim, dim, cols)?;
        let one_key = vec![self.group.identity(); self.arity];
        let target = SparseVec::unit(index[&one_key]);
        let x = lmul
            .solve(&target)
            .ok_or_else(|| Error::Invalid("element is not invertible".into()))?;
        let mut out = GroupAlgElement::zero(self.group.clone(), self.arity);
        for (i, c) in x.iter() {
            out.add_term(tuples[i].clone(), c);
        }
        Ok(out)
    }

    /// Applies the group-like coproduct to leg `leg`, duplicating it.
    pub fn apply_delta(&self, leg: usize) -> Self {
        let mut out = GroupAlgElement::zero(self.group.clone(), self.arity + 1);
        for (k, c) in self.terms() {
            let mut key = k.clone();
            key.insert(leg + 1, k[leg].clone());
            out.add_term(key, c);
        }
        out
    }

    /// Applies the counit to leg `leg`, deleting it (group-likes have counit 1).
    pub fn apply_counit(&self, leg: usize) -> Self {
        let mut out = GroupAlgElement::zero(self.group.clone(), self.arity - 1);
        for (k, c) in self.terms() {
            let mut key = k.clone();
            key.remove(leg);
            out.add_term(key, c);
        }
        out
    }

    /// Inserts the identity as a new leg at position `leg`.
    pub fn insert_unit(&self, leg: usize) -> Self {
        let mut out = GroupAlgElement::zero(self.group.clone(), self.arity + 1);
        for (k, c) in self.terms() {
            let mut key = k.clone();
            key.insert(leg, self.group.identity());
            out.add_term(key, c);
        }
        out
    }

    /// Tensor product: concatenates legs.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = GroupAlgElement::zero(self.group.clone(), self.arity + other.arity);
        for (ka, ca) in self.terms() {
            for (kb, cb) in other.terms() {
                let mut key = ka.clone();
                key.extend(kb.iter().cloned());
                out.add_term(key, &ca.mul(cb));
            }
        }
        out
    }

    /// Permutes the legs: new leg i is old leg perm[i].
    pub fn permute_legs(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.arity);
        let mut out = GroupAlgElement::zero(self.group.clone(), self.arity);
        for (k, c) in self.terms() {
            let key: Vec<GroupElement> = perm.iter().map(|&i| k[i].clone()).collect();
            out.add_term(key, c);
        }
        out
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.terms() {
            let legs: Vec<String> = k.iter().map(|g| alloc::format!("g{}", g.display())).collect();
            parts.push(alloc::format!("({})*{}", c, legs.join("(x)")));
        }
        parts.join(" + ")
    }
}
