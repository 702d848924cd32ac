//! Sparse exact linear algebra over the scalar field: vectors, linear maps,
//! echelon spans, kernels and subspace arithmetic.
//!
//! Basis order is declaration order; tensor bases are ordered lexicographically
//! by factor with the leftmost factor most significant. All results are
//! canonical (reduced echelon) so serialized output is deterministic.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::scalar::Scalar;

/// A finite-dimensional space with named basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedSpace {
    labels: Vec<String>,
}

impl BasedSpace {
    pub fn new(labels: Vec<String>) -> Result<Self, Error> {
        for i in 0..labels.len() {
            for j in (i + 1)..labels.len() {
                if labels[i] == labels[j] {
                    return Err(Error::Invalid("duplicate basis label".into()));
                }
            }
        }
        Ok(BasedSpace { labels })
    }

    pub fn of_dim(dim: usize) -> Self {
        let labels = (0..dim).map(|i| alloc::format!("e{}", i)).collect();
        BasedSpace { labels }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A sparse vector: index -> nonzero scalar.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: BTreeMap<usize, Scalar>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    pub fn unit(i: usize) -> Self {
        let mut v = SparseVec::new();
        v.entries.insert(i, Scalar::one());
        v
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in entries {
            v.add_entry(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.entries.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn min_index(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn add_entry(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.remove(&i) {
            None => {
                self.entries.insert(i, c.clone());
            }
            Some(old) => {
                let s = old.add(c);
                if !s.is_zero() {
                    self.entries.insert(i, s);
                }
            }
        }
    }

    /// self += c * other
    pub fn add_scaled(&mut self, other: &SparseVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_entry(i, &x.mul(c));
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::int(-1));
        out
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(&Scalar::int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x.mul(c))).collect(),
        }
    }

    /// Reindexes entries through `f` (must be injective on the support).
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in self.iter() {
            out.add_entry(f(i), c);
        }
        out
    }

    /// Renders the vector over labeled basis elements, e.g. "x + 2*y".
    pub fn display_with(&self, label: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (i, c)) in self.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            if c.is_one() {
                out.push_str(&label(i));
            } else {
                out.push_str(&alloc::format!("({})*{}", c, label(i)));
            }
        }
        out
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|i| alloc::format!("e{}", i)))
    }
}

/// A sparse linear map stored column-major: column j is the image of the j-th
/// domain basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    domain: usize,
    codomain: usize,
    cols: Vec<SparseVec>,
}

impl LinMap {
    pub fn zero(domain: usize, codomain: usize) -> Self {
        LinMap {
            domain,
            codomain,
            cols: alloc::vec![SparseVec::new(); domain],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let cols = (0..dim).map(SparseVec::unit).collect();
        LinMap {
            domain: dim,
            codomain: dim,
            cols,
        }
    }

    pub fn from_cols(domain: usize, codomain: usize, cols: Vec<SparseVec>) -> Result<Self, Error> {
        if cols.len() != domain {
            return Err(Error::Shape("column count != domain dimension".into()));
        }
        for c in &cols {
            if let Some(m) = c.max_index() {
                if m >= codomain {
                    return Err(Error::Shape("entry index out of codomain range".into()));
                }
            }
        }
        Ok(LinMap {
            domain,
            codomain,
            cols,
        })
    }

    /// Builds from (row, col, value) triples.
    pub fn from_entries(
        domain: usize,
        codomain: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self, Error> {
        let mut m = LinMap::zero(domain, codomain);
        for (r, c, v) in entries {
            if c >= domain || r >= codomain {
                return Err(Error::Shape("entry index out of range".into()));
            }
            m.cols[c].add_entry(r, &v);
        }
        Ok(m)
    }

    pub fn from_fn(
        domain: usize,
        codomain: usize,
        f: impl Fn(usize) -> SparseVec,
    ) -> Result<Self, Error> {
        LinMap::from_cols(domain, codomain, (0..domain).map(f).collect())
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        self.cols[col].get(row)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            debug_assert!(j < self.domain, "vector index outside domain");
            out.add_scaled(&self.cols[j], c);
        }
        out
    }

    /// self after first: (self . first)(v) = self(first(v)).
    pub fn compose(&self, first: &LinMap) -> Result<LinMap, Error> {
        if self.domain != first.codomain {
            return Err(Error::Shape("compose: inner dimensions differ".into()));
        }
        let cols = first.cols.iter().map(|c| self.apply(c)).collect();
        LinMap::from_cols(first.domain, self.codomain, cols)
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap, Error> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::Shape("add: shapes differ".into()));
        }
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.add(b))
            .collect();
        LinMap::from_cols(self.domain, self.codomain, cols)
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap, Error> {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> LinMap {
        LinMap {
            domain: self.domain,
            codomain: self.codomain,
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain
            && self
                .cols
                .iter()
                .enumerate()
                .all(|(j, c)| c.len() == 1 && c.get(j).is_one())
    }

    /// Kronecker product on tensor bases ordered lexicographically by factor:
    /// index of e_i (x) e_j is i * dim_right + j.
    pub fn tensor(&self, other: &LinMap) -> LinMap {
        let domain = self.domain * other.domain;
        let codomain = self.codomain * other.codomain;
        let mut cols = Vec::with_capacity(domain);
        for j1 in 0..self.domain {
            for j2 in 0..other.domain {
                let mut col = SparseVec::new();
                for (i1, a) in self.cols[j1].iter() {
                    for (i2, b) in other.cols[j2].iter() {
                        col.add_entry(i1 * other.codomain + i2, &a.mul(b));
                    }
                }
                cols.push(col);
            }
        }
        LinMap {
            domain,
            codomain,
            cols,
        }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &LinMap) -> LinMap {
        let domain = self.domain + other.domain;
        let codomain = self.codomain + other.codomain;
        let mut cols: Vec<SparseVec> = self.cols.clone();
        for c in &other.cols {
            cols.push(c.map_indices(|i| i + self.codomain));
        }
        LinMap {
            domain,
            codomain,
            cols,
        }
    }

    pub fn transpose(&self) -> LinMap {
        let mut m = LinMap::zero(self.codomain, self.domain);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                m.cols[i].add_entry(j, c);
            }
        }
        m
    }

    /// Rank, and a canonical (reduced echelon, min-pivot) nullspace basis.
    pub fn rank_and_nullspace(&self) -> (usize, Vec<SparseVec>) {
        let mut ech = Echelon::new(PivotRule::Min);
        let mut kernel = Vec::new();
        for j in 0..self.domain {
            // reduce column j while tracking the combination of original columns
            let (residual, mut comb) = ech.reduce_tracked(&self.cols[j]);
            comb.add_entry(self.domain + j, &Scalar::one());
            if residual.is_zero() {
                kernel.push(comb.map_indices(|i| i - self.domain));
            } else {
                ech.insert_tracked(residual, comb);
            }
        }
        let rank = ech.rank();
        let null = canonical_basis(kernel, PivotRule::Min);
        (rank, null)
    }

    pub fn rank(&self) -> usize {
        self.rank_and_nullspace().0
    }

    /// One solution x of self(x) = b, if any.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let mut ech = Echelon::new(PivotRule::Min);
        for j in 0..self.domain {
            let (residual, mut comb) = ech.reduce_tracked(&self.cols[j]);
            comb.add_entry(self.domain + j, &Scalar::one());
            if !residual.is_zero() {
                ech.insert_tracked(residual, comb);
            }
        }
        let (residual, comb) = ech.reduce_tracked(b);
        if residual.is_zero() {
            Some(comb.map_indices(|i| i - self.domain).neg())
        } else {
            None
        }
    }

    /// Inverse of a square invertible map (one echelon pass, all columns).
    pub fn inverse(&self) -> Result<LinMap, Error> {
        if self.domain != self.codomain {
            return Err(Error::Shape("inverse of non-square map".into()));
        }
        let mut ech = Echelon::new(PivotRule::Min);
        for j in 0..self.domain {
            let (residual, mut comb) = ech.reduce_tracked(&self.cols[j]);
            comb.add_entry(self.domain + j, &Scalar::one());
            if residual.is_zero() {
                return Err(Error::Invalid("map is not invertible".into()));
            }
            ech.insert_tracked(residual, comb);
        }
        let mut cols = Vec::with_capacity(self.domain);
        for i in 0..self.codomain {
            let (residual, comb) = ech.reduce_tracked(&SparseVec::unit(i));
            if !residual.is_zero() {
                return Err(Error::Invalid("map is not invertible".into()));
            }
            cols.push(comb.map_indices(|k| k - self.domain).neg());
        }
        LinMap::from_cols(self.codomain, self.domain, cols)
    }
}

/// Pivot selection convention for echelon spans.
///
/// `Min` is the usual reduced-echelon convention. `Max` pivots on the largest
/// index, which for graded-lex ordered bases makes the non-pivot complement a
/// normal basis and keeps spans adapted to the degree filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    Min,
    Max,
}

/// An incrementally built echelon span. Rows are keyed by pivot index and
/// kept forward-reduced; `canonical_rows` back-substitutes on demand.
#[derive(Clone, Debug)]
pub struct Echelon {
    rule: PivotRule,
    rows: BTreeMap<usize, SparseVec>,
    tracks: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(rule: PivotRule) -> Self {
        Echelon {
            rule,
            rows: BTreeMap::new(),
            tracks: BTreeMap::new(),
        }
    }

    pub fn rule(&self) -> PivotRule {
        self.rule
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn has_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    fn next_pivot(&self, v: &SparseVec) -> Option<usize> {
        match self.rule {
            PivotRule::Min => v.min_index(),
            PivotRule::Max => v.max_index(),
        }
    }

    /// Cancels the extremal entry against pivot rows until it no longer hits
    /// one. Rows under a given rule only carry entries on the non-extremal
    /// side of their pivot, and any span member's extremal index is a pivot,
    /// so the residual is zero iff v lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        loop {
            let ext = match self.rule {
                PivotRule::Min => v.min_index(),
                PivotRule::Max => v.max_index(),
            };
            let p = match ext {
                None => return v,
                Some(p) => p,
            };
            match self.rows.get(&p) {
                None => return v,
                Some(row) => {
                    let c = v.get(p).div(&row.get(p)).expect("pivot nonzero").neg();
                    v.add_scaled(row, &c);
                    debug_assert!(v.get(p).is_zero());
                }
            }
        }
    }

    fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut comb = SparseVec::new();
        loop {
            let ext = match self.rule {
                PivotRule::Min => v.min_index(),
                PivotRule::Max => v.max_index(),
            };
            let p = match ext {
                None => return (v, comb),
                Some(p) => p,
            };
            match self.rows.get(&p) {
                None => return (v, comb),
                Some(row) => {
                    let c = v.get(p).div(&row.get(p)).expect("pivot nonzero").neg();
                    v.add_scaled(row, &c);
                    if let Some(t) = self.tracks.get(&p) {
                        comb.add_scaled(t, &c);
                    }
                }
            }
        }
    }

    /// Inserts a vector; returns true when the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        match self.next_pivot(&r) {
            None => false,
            Some(p) => {
                self.rows.insert(p, r);
                true
            }
        }
    }

    fn insert_tracked(&mut self, residual: SparseVec, comb: SparseVec) {
        if let Some(p) = self.next_pivot(&residual) {
            self.rows.insert(p, residual);
            self.tracks.insert(p, comb);
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Canonical fully-reduced rows (each pivot normalized to 1 and cleared
    /// from all other rows), in ascending pivot order.
    pub fn canonical_rows(&self) -> Vec<SparseVec> {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut canon: BTreeMap<usize, SparseVec> = BTreeMap::new();
        // process in reduction-safe order: for Max rule, a row can only contain
        // smaller indices, so go ascending; for Min rule descending.
        let order: Vec<usize> = match self.rule {
            PivotRule::Max => pivots.clone(),
            PivotRule::Min => pivots.iter().rev().copied().collect(),
        };
        for p in order {
            let mut row = self.rows[&p].clone();
            // clear entries at other pivot columns using already-canonical rows
            loop {
                let hit = row
                    .iter()
                    .map(|(i, _)| i)
                    .find(|i| *i != p && canon.contains_key(i));
                match hit {
                    None => break,
                    Some(q) => {
                        let c = row.get(q).neg();
                        let other = canon[&q].clone();
                        row.add_scaled(&other, &c);
                    }
                }
            }
            let inv = row.get(p).inv().expect("pivot nonzero");
            canon.insert(p, row.scale(&inv));
        }
        canon.into_values().collect()
    }
}

/// Canonicalizes a list of vectors into a reduced-echelon basis.
pub fn canonical_basis(vectors: Vec<SparseVec>, rule: PivotRule) -> Vec<SparseVec> {
    let mut ech = Echelon::new(rule);
    for v in &vectors {
        ech.insert(v);
    }
    ech.canonical_rows()
}

/// A subspace of a based ambient space, held in canonical echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn from_vectors(ambient: usize, vectors: &[SparseVec]) -> Result<Self, Error> {
        for v in vectors {
            if let Some(m) = v.max_index() {
                if m >= ambient {
                    return Err(Error::Shape("vector outside ambient space".into()));
                }
            }
        }
        Ok(Subspace {
            ambient,
            basis: canonical_basis(vectors.to_vec(), PivotRule::Min),
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut ech = Echelon::new(PivotRule::Min);
        for b in &self.basis {
            ech.insert(b);
        }
        ech.contains(v)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        if self.ambient != other.ambient {
            return Err(Error::Shape("subspace sum: ambient dimensions differ".into()));
        }
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.ambient, &all)
    }

    /// Intersection via the nullspace of the concatenated system
    /// [a_1 ... a_p | b_1 ... b_q].
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        if self.ambient != other.ambient {
            return Err(Error::Shape(
                "subspace intersection: ambient dimensions differ".into(),
            ));
        }
        let p = self.basis.len();
        let q = other.basis.len();
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(SparseVec::neg));
        let m = LinMap::from_cols(p + q, self.ambient, cols)?;
        let (_, null) = m.rank_and_nullspace();
        let mut vecs = Vec::new();
        for k in null {
            // x-part gives a vector sum_i x_i a_i in the intersection
            let mut v = SparseVec::new();
            for (i, c) in k.iter() {
                if i < p {
                    v.add_scaled(&self.basis[i], c);
                }
            }
            if !v.is_zero() {
                vecs.push(v);
            }
        }
        Subspace::from_vectors(self.ambient, &vecs)
    }
}
