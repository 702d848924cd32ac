//! Yang-Baxter operators, braided vector spaces, bicharacter braidings and
//! the graded braiding c^{m,n} acting on tensor powers.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::group::{AbelianGroup, Bicharacter, GroupElement};
use crate::linalg::{BasedSpace, LinMap, SparseVec};
use crate::scalar::Scalar;

/// Basis tensor where the two sides of a failed identity differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWitness {
    pub index: usize,
    pub lhs: SparseVec,
    pub rhs: SparseVec,
}

impl BraidWitness {
    pub fn describe(&self, dim: usize) -> String {
        let label = |mut idx: usize, legs: usize| {
            let mut parts = alloc::vec![0usize; legs];
            for k in (0..legs).rev() {
                parts[k] = idx % dim;
                idx /= dim;
            }
            let strs: Vec<String> = parts.iter().map(|p| alloc::format!("e{}", p)).collect();
            strs.join("(x)")
        };
        alloc::format!(
            "on {}: lhs = {}, rhs = {}",
            label(self.index, 3),
            self.lhs,
            self.rhs
        )
    }
}

/// Checks the quantum Yang-Baxter equation
/// (c(x)V)(V(x)c)(c(x)V) = (V(x)c)(c(x)V)(V(x)c) on V(x)V(x)V.
/// Returns None when it holds, or a witness basis tensor.
pub fn check_yang_baxter(c: &LinMap, dim: usize) -> Result<Option<BraidWitness>, Error> {
    if c.domain() != dim * dim || c.codomain() != dim * dim {
        return Err(Error::Shape("braiding must be square on V(x)V".into()));
    }
    let id = LinMap::identity(dim);
    let c_left = c.tensor(&id);
    let c_right = id.tensor(c);
    let lhs = c_left.compose(&c_right.compose(&c_left)?)?;
    let rhs = c_right.compose(&c_left.compose(&c_right)?)?;
    for j in 0..dim * dim * dim {
        let l = lhs.col(j);
        let r = rhs.col(j);
        if l != r {
            return Ok(Some(BraidWitness {
                index: j,
                lhs: l.clone(),
                rhs: r.clone(),
            }));
        }
    }
    Ok(None)
}

/// Per-basis-vector grading by an abelian group.
#[derive(Clone, Debug, PartialEq)]
pub struct Grading {
    pub group: AbelianGroup,
    pub degrees: Vec<GroupElement>,
}

impl Grading {
    pub fn degree_of_word(&self, word: &[usize]) -> GroupElement {
        let mut d = self.group.identity();
        for &i in word {
            d = self.group.add(&d, &self.degrees[i]);
        }
        d
    }
}

/// A based space with an invertible Yang-Baxter operator, and a computed
/// symmetry flag (never trusted from input).
#[derive(Clone, Debug)]
pub struct BraidedVectorSpace {
    pub space: BasedSpace,
    braiding: LinMap,
    inverse: LinMap,
    symmetric: bool,
    pub grading: Option<Grading>,
}

impl BraidedVectorSpace {
    pub fn new(space: BasedSpace, braiding: LinMap) -> Result<Self, Error> {
        let dim = space.dim();
        if let Some(w) = check_yang_baxter(&braiding, dim)? {
            return Err(Error::Precondition(alloc::format!(
                "Yang-Baxter equation fails {}",
                w.describe(dim)
            )));
        }
        let inverse = braiding
            .inverse()
            .map_err(|_| Error::Precondition("braiding is not invertible".into()))?;
        let symmetric = braiding.compose(&braiding)?.is_identity();
        Ok(BraidedVectorSpace {
            space,
            braiding,
            inverse,
            symmetric,
            grading: None,
        })
    }

    /// The canonical flip v(x)w -> w(x)v.
    pub fn flip(space: BasedSpace) -> Self {
        let dim = space.dim();
        let c = flip_map(dim);
        let inverse = c.clone();
        BraidedVectorSpace {
            space,
            braiding: c,
            inverse,
            symmetric: true,
            grading: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn braiding(&self) -> &LinMap {
        &self.braiding
    }

    pub fn braiding_inverse(&self) -> &LinMap {
        &self.inverse
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn with_grading(mut self, grading: Grading) -> Result<Self, Error> {
        if grading.degrees.len() != self.dim() {
            return Err(Error::Invalid("grading must cover the whole basis".into()));
        }
        self.grading = Some(grading);
        Ok(self)
    }
}

/// The flip map on V(x)V for dim-d V.
pub fn flip_map(dim: usize) -> LinMap {
    LinMap::from_fn(dim * dim, dim * dim, |j| {
        let (a, b) = (j / dim, j % dim);
        SparseVec::unit(b * dim + a)
    })
    .expect("square by construction")
}

/// Braiding induced by a bicharacter on a graded basis:
/// c(v(x)w) = chi(|v|,|w|) w(x)v on homogeneous basis tensors.
pub fn braiding_from_bicharacter(
    space: BasedSpace,
    grading: Grading,
    chi: &Bicharacter,
) -> Result<BraidedVectorSpace, Error> {
    let dim = space.dim();
    if grading.degrees.len() != dim {
        return Err(Error::Invalid("every basis vector must be graded".into()));
    }
    if grading.group != chi.group {
        return Err(Error::Invalid(
            "bicharacter group differs from grading group".into(),
        ));
    }
    let c = LinMap::from_fn(dim * dim, dim * dim, |j| {
        let (a, b) = (j / dim, j % dim);
        let coeff = chi.eval(&grading.degrees[a], &grading.degrees[b]);
        SparseVec::from_entries([(b * dim + a, coeff)])
    })?;
    let mut v = BraidedVectorSpace::new(space, c)?;
    // the symmetric flag equals antisymmetry of chi on the occurring degrees
    debug_assert_eq!(v.is_symmetric(), chi_symmetric_on_degrees(chi, &grading));
    v = v.with_grading(grading)?;
    Ok(v)
}

fn chi_symmetric_on_degrees(chi: &Bicharacter, grading: &Grading) -> bool {
    grading.degrees.iter().all(|a| {
        grading
            .degrees
            .iter()
            .all(|b| chi.eval(a, b).mul(&chi.eval(b, a)) == Scalar::one())
    })
}

/// True iff f is a morphism of braided objects: c_W (f(x)f) = (f(x)f) c_V.
pub fn is_braided_morphism(
    f: &LinMap,
    src: &BraidedVectorSpace,
    dst: &BraidedVectorSpace,
) -> Result<bool, Error> {
    if f.domain() != src.dim() || f.codomain() != dst.dim() {
        return Err(Error::Shape("morphism shape does not match spaces".into()));
    }
    let ff = f.tensor(f);
    let lhs = dst.braiding().compose(&ff)?;
    let rhs = ff.compose(src.braiding())?;
    Ok(lhs == rhs)
}

/// Cached graded braiding c^{m,n}: V^(x m) (x) V^(x n) -> V^(x n) (x) V^(x m),
/// built by the braid-group recursion
///   c^{1,1} = c,
///   c^{1,n+1} = (id^(x n) (x) c) . (c^{1,n} (x) id),
///   c^{m+1,n} = (c^{1,n} (x) id^(x m)) . (id (x) c^{m,n}),
/// with identity boundary cases. Population is write-once per key and
/// deterministic.
#[derive(Clone, Debug)]
pub struct GradedBraiding {
    dim: usize,
    max_pair_sum: usize,
    table: BTreeMap<(usize, usize), LinMap>,
}

impl GradedBraiding {
    /// Precomputes c^{m,n} for all m + n <= max_pair_sum.
    pub fn new(v: &BraidedVectorSpace, max_pair_sum: usize) -> Result<Self, Error> {
        let dim = v.dim();
        let mut table: BTreeMap<(usize, usize), LinMap> = BTreeMap::new();
        let id = |k: usize| LinMap::identity(dim.pow(k as u32));
        for total in 0..=max_pair_sum {
            for m in 0..=total {
                let n = total - m;
                let map = if m == 0 || n == 0 {
                    id(total)
                } else if m == 1 && n == 1 {
                    v.braiding().clone()
                } else if m == 1 {
                    // c^{1,n} = (id^(x n-1) (x) c) . (c^{1,n-1} (x) id)
                    let prev = table.get(&(1, n - 1)).expect("built in order");
                    id(n - 1)
                        .tensor(v.braiding())
                        .compose(&prev.tensor(&id(1)))?
                } else {
                    // c^{m,n} = (c^{1,n} (x) id^(x m-1)) . (id (x) c^{m-1,n})
                    let c1n = table.get(&(1, n)).expect("built in order");
                    let cmn = table.get(&(m - 1, n)).expect("built in order");
                    c1n.tensor(&id(m - 1)).compose(&id(1).tensor(cmn))?
                };
                table.insert((m, n), map);
            }
        }
        Ok(GradedBraiding {
            dim,
            max_pair_sum,
            table,
        })
    }

    pub fn max_pair_sum(&self) -> usize {
        self.max_pair_sum
    }

    pub fn graded(&self, m: usize, n: usize) -> Result<&LinMap, Error> {
        self.table.get(&(m, n)).ok_or_else(|| {
            Error::Invalid(alloc::format!(
                "graded braiding budget exceeded: ({m},{n}) beyond cached sum {}",
                self.max_pair_sum
            ))
        })
    }

    /// Hexagon identity from the enveloping construction:
    /// c^{l,n+m} (id^l (x) c^{m,n}) = (c^{m,n} (x) id^l) c^{l,m+n}.
    pub fn hexagon_holds(&self, l: usize, m: usize, n: usize) -> Result<bool, Error> {
        let idl = LinMap::identity(self.dim.pow(l as u32));
        let lhs = self
            .graded(l, n + m)?
            .compose(&idl.tensor(self.graded(m, n)?))?;
        let rhs = self
            .graded(m, n)?
            .tensor(&idl)
            .compose(self.graded(l, m + n)?)?;
        Ok(lhs == rhs)
    }

    /// For symmetric braidings: c^{n,m} c^{m,n} = Id.
    pub fn symmetric_pair_holds(&self, m: usize, n: usize) -> Result<bool, Error> {
        Ok(self
            .graded(n, m)?
            .compose(self.graded(m, n)?)?
            .is_identity())
    }
}
