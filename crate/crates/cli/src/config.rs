//! JSON configuration schema and its translation into engine objects.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use braidmm_core::braiding::{BraidedVectorSpace, Grading};
use braidmm_core::group::{AbelianGroup, Bicharacter, GroupAlgElement, GroupElement};
use braidmm_core::lie::{BraidedLieAlgebra, ColorLieData, FiniteAlgebra};
use braidmm_core::linalg::{BasedSpace, LinMap, SparseVec};
use braidmm_core::quasi::{DualQuasiData, HModule, PairFn, QuasiBialgebraData, TripleFn};
use braidmm_core::scalar::{FieldSpec, Scalar};
use braidmm_core::transport::{MonoidalFunctorData, SourceObject, TransportContext};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleConfig {
    pub schema_version: u32,
    pub name: String,
    pub field: FieldCfg,
    pub example: ExampleKind,
    pub degree: usize,
    #[serde(default = "default_buffer")]
    pub buffer: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub checks: Vec<String>,
    #[serde(default = "default_window")]
    pub window: i64,
}

fn default_buffer() -> usize {
    1
}

fn default_window() -> i64 {
    3
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldCfg {
    Rational,
    Cyclotomic { order: u32 },
}

impl FieldCfg {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldCfg::Rational => FieldSpec::Rational,
            FieldCfg::Cyclotomic { order } => FieldSpec::Cyclotomic(*order),
        }
    }
}

/// A scalar: "p/q", or a coefficient list in the declared cyclotomic field.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarCfg {
    Rational(String),
    Cyclotomic(Vec<String>),
}

impl ScalarCfg {
    pub fn to_scalar(&self, field: &FieldSpec) -> Result<Scalar> {
        match self {
            ScalarCfg::Rational(s) => Ok(field.parse(s)?),
            ScalarCfg::Cyclotomic(coeffs) => {
                let order = match field {
                    FieldSpec::Cyclotomic(n) => *n,
                    FieldSpec::Rational => {
                        bail!("cyclotomic coefficient list needs a cyclotomic field")
                    }
                };
                let zeta = Scalar::root_of_unity(order, 1);
                let mut acc = Scalar::zero();
                let mut power = Scalar::one();
                for c in coeffs {
                    let coeff = field.parse(c)?;
                    acc = acc.add(&coeff.mul(&power));
                    power = power.mul(&zeta);
                }
                Ok(acc)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupCfg {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl GroupCfg {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup {
            free_rank: self.free_rank,
            torsion: self.torsion.clone(),
        }
    }
}

/// Sparse matrix entries [row, col, scalar].
pub type MatrixCfg = Vec<(usize, usize, ScalarCfg)>;

pub fn matrix(field: &FieldSpec, entries: &MatrixCfg, domain: usize, codomain: usize) -> Result<LinMap> {
    let mut list = Vec::new();
    for (r, c, s) in entries {
        list.push((*r, *c, s.to_scalar(field)?));
    }
    Ok(LinMap::from_entries(domain, codomain, list)?)
}

/// Braiding on the generators: the flip, a bicharacter on a graded basis,
/// or an explicit matrix on V (x) V.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BraidingCfg {
    Flip,
    Bicharacter {
        group: GroupCfg,
        /// chi on generator pairs, row-major
        values: Vec<Vec<ScalarCfg>>,
        /// degree of each basis vector as an exponent vector
        degrees: Vec<Vec<i64>>,
    },
    Matrix { entries: MatrixCfg },
}

impl BraidingCfg {
    pub fn build(&self, field: &FieldSpec, space: BasedSpace) -> Result<BraidedVectorSpace> {
        match self {
            BraidingCfg::Flip => Ok(BraidedVectorSpace::flip(space)),
            BraidingCfg::Bicharacter {
                group,
                values,
                degrees,
            } => {
                let g = group.group();
                let chi = bicharacter(field, &g, values)?;
                let grading = grading(&g, degrees, space.dim())?;
                Ok(braidmm_core::braiding::braiding_from_bicharacter(
                    space, grading, &chi,
                )?)
            }
            BraidingCfg::Matrix { entries } => {
                let d = space.dim();
                let m = matrix(field, entries, d * d, d * d)?;
                Ok(BraidedVectorSpace::new(space, m)?)
            }
        }
    }

    /// The raw matrix, for reporting Yang-Baxter failures before
    /// construction is attempted.
    pub fn raw_matrix(&self, field: &FieldSpec, dim: usize) -> Result<Option<LinMap>> {
        match self {
            BraidingCfg::Matrix { entries } => {
                Ok(Some(matrix(field, entries, dim * dim, dim * dim)?))
            }
            _ => Ok(None),
        }
    }
}

pub fn bicharacter(field: &FieldSpec, g: &AbelianGroup, values: &[Vec<ScalarCfg>]) -> Result<Bicharacter> {
    let vals: Result<Vec<Vec<Scalar>>> = values
        .iter()
        .map(|row| row.iter().map(|s| s.to_scalar(field)).collect())
        .collect();
    Ok(Bicharacter::new(g.clone(), vals?)?)
}

pub fn grading(g: &AbelianGroup, degrees: &[Vec<i64>], dim: usize) -> Result<Grading> {
    if degrees.len() != dim {
        bail!("expected {} degree vectors, got {}", dim, degrees.len());
    }
    let ds: Result<Vec<GroupElement>> = degrees
        .iter()
        .map(|d| Ok(g.reduce(d.clone())?))
        .collect();
    Ok(Grading {
        group: g.clone(),
        degrees: ds?,
    })
}

/// Bracket structure constants: "x,y" -> {target: scalar}.
pub type BracketCfg = BTreeMap<String, BTreeMap<String, ScalarCfg>>;

pub fn bracket_map(
    field: &FieldSpec,
    space: &BasedSpace,
    brackets: &BracketCfg,
) -> Result<LinMap> {
    let d = space.dim();
    let mut entries = Vec::new();
    for (pair, value) in brackets {
        let (a, b) = pair
            .split_once(',')
            .ok_or_else(|| anyhow!("bracket key must be \"x,y\""))?;
        let i = space
            .index_of(a.trim())
            .ok_or_else(|| anyhow!("unknown basis label {a}"))?;
        let j = space
            .index_of(b.trim())
            .ok_or_else(|| anyhow!("unknown basis label {b}"))?;
        for (target, s) in value {
            let t = space
                .index_of(target)
                .ok_or_else(|| anyhow!("unknown basis label {target}"))?;
            entries.push((t, i * d + j, s.to_scalar(field)?));
        }
    }
    Ok(LinMap::from_entries(d * d, d, entries)?)
}

/// A monomial q * g^(e1) (x) ... (x) g^(ek) in k[G]^(x k).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonomialCfg {
    pub coeff: ScalarCfg,
    pub legs: Vec<Vec<i64>>,
}

pub fn group_alg_element(
    field: &FieldSpec,
    g: &AbelianGroup,
    terms: &[MonomialCfg],
    arity: usize,
) -> Result<GroupAlgElement> {
    let mut out = GroupAlgElement::zero(g.clone(), arity);
    for t in terms {
        if t.legs.len() != arity {
            bail!("expected {} legs", arity);
        }
        let legs: Result<Vec<GroupElement>> =
            t.legs.iter().map(|l| Ok(g.reduce(l.clone())?)).collect();
        let m = GroupAlgElement::monomial(g.clone(), legs?, t.coeff.to_scalar(field)?)?;
        out = out.add(&m);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairFnCfg {
    Trivial,
    Bicharacter { values: Vec<Vec<ScalarCfg>> },
    Table { entries: Vec<(Vec<i64>, Vec<i64>, ScalarCfg)> },
}

impl PairFnCfg {
    pub fn build(&self, field: &FieldSpec, g: &AbelianGroup) -> Result<PairFn> {
        Ok(match self {
            PairFnCfg::Trivial => PairFn::Trivial,
            PairFnCfg::Bicharacter { values } => PairFn::Bichar(bicharacter(field, g, values)?),
            PairFnCfg::Table { entries } => {
                let mut t = BTreeMap::new();
                for (a, b, s) in entries {
                    t.insert(
                        (g.reduce(a.clone())?, g.reduce(b.clone())?),
                        s.to_scalar(field)?,
                    );
                }
                PairFn::Table(t)
            }
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TripleFnCfg {
    Trivial,
    /// the inverse coboundary of a gauge (a genuine unital 3-cocycle)
    CoboundaryInverse { gauge: PairFnCfg },
}

impl TripleFnCfg {
    pub fn build(&self, field: &FieldSpec, g: &AbelianGroup) -> Result<TripleFn> {
        Ok(match self {
            TripleFnCfg::Trivial => TripleFn::Trivial,
            TripleFnCfg::CoboundaryInverse { gauge } => TripleFn::Inverse(Box::new(
                TripleFn::Coboundary(gauge.build(field, g)?),
            )),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleCfg {
    pub dim: usize,
    /// one invertible matrix per group generator
    pub actions: Vec<MatrixCfg>,
}

impl ModuleCfg {
    pub fn build(&self, field: &FieldSpec) -> Result<HModule> {
        let actions: Result<Vec<LinMap>> = self
            .actions
            .iter()
            .map(|a| matrix(field, a, self.dim, self.dim))
            .collect();
        Ok(HModule {
            space: BasedSpace::of_dim(self.dim),
            gen_actions: actions?,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExampleKind {
    /// An explicit braided Lie algebra (braiding + structure constants).
    BraidedLie {
        basis: Vec<String>,
        braiding: BraidingCfg,
        #[serde(default)]
        brackets: BracketCfg,
    },
    /// A color Lie algebra over (G, chi).
    ColorLie {
        group: GroupCfg,
        bicharacter: Vec<Vec<ScalarCfg>>,
        basis: Vec<String>,
        degrees: Vec<Vec<i64>>,
        #[serde(default)]
        brackets: BracketCfg,
    },
    /// A Lie superalgebra: color over Z/2 with the sign bicharacter.
    SuperLie {
        basis: Vec<String>,
        /// parity (0 or 1) per basis vector
        parities: Vec<i64>,
        #[serde(default)]
        brackets: BracketCfg,
    },
    /// The bracket m(Id - c) of a finite braided algebra.
    AlgebraDerived {
        basis: Vec<String>,
        braiding: BraidingCfg,
        mult: MatrixCfg,
        unit: Vec<(usize, ScalarCfg)>,
    },
    /// A Lie object of the Hom-category attached to k[<g>]_q^{a,b}.
    HomLie {
        q: ScalarCfg,
        a: i64,
        b: i64,
        basis: Vec<String>,
        /// the automorphism action of the group generator
        automorphism: MatrixCfg,
        /// the source bracket (e.g. a Yau twist), as structure constants
        #[serde(default)]
        brackets: BracketCfg,
    },
    /// Quasi-bialgebra data on k[Z]: the (q, a, b) family with a module.
    Quasi {
        q: ScalarCfg,
        a: i64,
        b: i64,
        #[serde(default)]
        module: Option<ModuleCfg>,
    },
    /// Dual quasi-bialgebra data on k[G].
    DualQuasi {
        group: GroupCfg,
        omega: TripleFnCfg,
        #[serde(default)]
        r: Option<PairFnCfg>,
        /// gauge used for the coboundary-twist trivialization check
        #[serde(default)]
        gauge: Option<PairFnCfg>,
    },
    /// Transport of a Lie object along the Hom-context functor.
    Transport {
        q: ScalarCfg,
        a: i64,
        b: i64,
        basis: Vec<String>,
        automorphism: MatrixCfg,
        #[serde(default)]
        brackets: BracketCfg,
    },
}

impl ExampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            bail!(
                "unsupported schema_version {} (engine speaks {})",
                self.schema_version,
                SCHEMA_VERSION
            );
        }
        if self.degree < 1 {
            bail!("degree must be at least 1");
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field.spec()
    }

    /// The braided Lie algebra described by a Lie-flavoured config.
    pub fn lie_algebra(&self) -> Result<BraidedLieAlgebra> {
        let field = self.field();
        match &self.example {
            ExampleKind::BraidedLie {
                basis,
                braiding,
                brackets,
            } => {
                let space = BasedSpace::new(basis.clone())?;
                let carrier = braiding.build(&field, space.clone())?;
                let bracket = bracket_map(&field, &space, brackets)?;
                Ok(BraidedLieAlgebra::new(carrier, bracket)?)
            }
            ExampleKind::ColorLie { .. } | ExampleKind::SuperLie { .. } => {
                let data = self.color_data()?;
                Ok(braidmm_core::lie::color_lie(&data)?)
            }
            ExampleKind::AlgebraDerived { .. } => {
                let alg = self.finite_algebra()?;
                Ok(braidmm_core::lie::lie_from_algebra(&alg)?)
            }
            ExampleKind::HomLie { .. } | ExampleKind::Transport { .. } => {
                let (f, obj, bracket) = self.transport_data()?;
                Ok(braidmm_core::transport::transport_lie(&f, &obj, &bracket)?)
            }
            _ => bail!("config kind has no Lie structure"),
        }
    }

    pub fn color_data(&self) -> Result<ColorLieData> {
        let field = self.field();
        match &self.example {
            ExampleKind::ColorLie {
                group,
                bicharacter: chi,
                basis,
                degrees,
                brackets,
            } => {
                let g = group.group();
                let chi = bicharacter(&field, &g, chi)?;
                let space = BasedSpace::new(basis.clone())?;
                let grading = grading(&g, degrees, space.dim())?;
                let bracket = bracket_map(&field, &space, brackets)?;
                let d = space.dim();
                let mut table = BTreeMap::new();
                for i in 0..d {
                    for j in 0..d {
                        let v = bracket.col(i * d + j).clone();
                        if !v.is_zero() {
                            table.insert((i, j), v);
                        }
                    }
                }
                Ok(ColorLieData {
                    chi,
                    space,
                    grading,
                    brackets: table,
                })
            }
            ExampleKind::SuperLie {
                basis,
                parities,
                brackets,
            } => {
                let g = AbelianGroup::cyclic(2);
                let chi = Bicharacter::new(g.clone(), vec![vec![Scalar::int(-1)]])?;
                let space = BasedSpace::new(basis.clone())?;
                let degrees: Result<Vec<GroupElement>> = parities
                    .iter()
                    .map(|p| Ok(g.reduce(vec![*p])?))
                    .collect();
                let grading = Grading {
                    group: g,
                    degrees: degrees?,
                };
                let bracket = bracket_map(&field, &space, brackets)?;
                let d = space.dim();
                let mut table = BTreeMap::new();
                for i in 0..d {
                    for j in 0..d {
                        let v = bracket.col(i * d + j).clone();
                        if !v.is_zero() {
                            table.insert((i, j), v);
                        }
                    }
                }
                Ok(ColorLieData {
                    chi,
                    space,
                    grading,
                    brackets: table,
                })
            }
            _ => bail!("config kind carries no color data"),
        }
    }

    pub fn finite_algebra(&self) -> Result<FiniteAlgebra> {
        let field = self.field();
        match &self.example {
            ExampleKind::AlgebraDerived {
                basis,
                braiding,
                mult,
                unit,
            } => {
                let space = BasedSpace::new(basis.clone())?;
                let d = space.dim();
                let carrier = braiding.build(&field, space)?;
                let m = matrix(&field, mult, d * d, d)?;
                let mut u = SparseVec::new();
                for (i, s) in unit {
                    u.add_entry(*i, &s.to_scalar(&field)?);
                }
                Ok(FiniteAlgebra::new(carrier, m, u)?)
            }
            _ => bail!("config kind is not algebra_derived"),
        }
    }

    pub fn quasi_data(&self) -> Result<(QuasiBialgebraData, GroupAlgElement, Option<HModule>)> {
        let field = self.field();
        match &self.example {
            ExampleKind::Quasi { q, a, b, module } => {
                let qv = q.to_scalar(&field)?;
                let data = QuasiBialgebraData::kz_family(qv.clone(), *a, *b)?;
                let gamma = QuasiBialgebraData::kz_trivializing_twist(qv, *a, *b)?;
                let m = match module {
                    None => None,
                    Some(mc) => Some(mc.build(&field)?),
                };
                Ok((data, gamma, m))
            }
            _ => bail!("config kind is not quasi"),
        }
    }

    pub fn dual_quasi_data(&self) -> Result<(DualQuasiData, Option<PairFn>)> {
        let field = self.field();
        match &self.example {
            ExampleKind::DualQuasi {
                group,
                omega,
                r,
                gauge,
            } => {
                let g = group.group();
                let data = DualQuasiData {
                    omega: omega.build(&field, &g)?,
                    r: match r {
                        None => None,
                        Some(rc) => Some(rc.build(&field, &g)?),
                    },
                    window: self.window,
                    group: g.clone(),
                };
                let gauge = match gauge {
                    None => None,
                    Some(gc) => Some(gc.build(&field, &g)?),
                };
                Ok((data, gauge))
            }
            _ => bail!("config kind is not dual_quasi"),
        }
    }

    /// Functor data, source object and source bracket for Hom-context kinds.
    pub fn transport_data(&self) -> Result<(MonoidalFunctorData, SourceObject, LinMap)> {
        let field = self.field();
        match &self.example {
            ExampleKind::HomLie {
                q,
                a,
                b,
                basis,
                automorphism,
                brackets,
            }
            | ExampleKind::Transport {
                q,
                a,
                b,
                basis,
                automorphism,
                brackets,
            } => {
                let qv = q.to_scalar(&field)?;
                let data = QuasiBialgebraData::kz_family(qv.clone(), *a, *b)?;
                let alpha = QuasiBialgebraData::kz_trivializing_twist(qv, *a, *b)?;
                let f = MonoidalFunctorData {
                    ctx: TransportContext::Quasi { data, alpha },
                };
                let space = BasedSpace::new(basis.clone())?;
                let d = space.dim();
                let auto = matrix(&field, automorphism, d, d)?;
                let bracket = bracket_map(&field, &space, brackets)?;
                let obj = SourceObject::Module(HModule {
                    space,
                    gen_actions: vec![auto],
                });
                Ok((f, obj, bracket))
            }
            _ => bail!("config kind is not a transport context"),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.example {
            ExampleKind::BraidedLie { .. } => "braided_lie",
            ExampleKind::ColorLie { .. } => "color_lie",
            ExampleKind::SuperLie { .. } => "super_lie",
            ExampleKind::AlgebraDerived { .. } => "algebra_derived",
            ExampleKind::HomLie { .. } => "hom_lie",
            ExampleKind::Quasi { .. } => "quasi",
            ExampleKind::DualQuasi { .. } => "dual_quasi",
            ExampleKind::Transport { .. } => "transport",
        }
    }
}

pub fn load_config(path: &std::path::Path) -> Result<ExampleConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let cfg: ExampleConfig = serde_json::from_str(&text)
        .with_context(|| format!("config {} does not match the schema", path.display()))?;
    cfg.validate()?;
    Ok(cfg)
}

/// Canonical JSON for hashing: serde_json::Value uses sorted object keys.
pub fn canonical_json(cfg: &ExampleConfig) -> Result<String> {
    let value = serde_json::to_value(cfg)?;
    Ok(serde_json::to_string(&value)?)
}
