//! Subcommand implementations: dispatch a validated config to the engine and
//! collect a deterministic outcome.

use std::collections::BTreeMap;

use anyhow::{bail, Result};

use braidmm_core::envelope::{
    adjunction_triangle_check, build_enveloping, mm_verify, theta_primitivity, StabilizationInfo,
};
use braidmm_core::error::Error as CoreError;
use braidmm_core::lie::check_color_axioms;
use braidmm_core::report::AxiomCheck;
use braidmm_core::tensor_bialgebra::{
    build_trunc_tensor_bialgebra, check_braided_structure, primitives, StructureKind,
};
use braidmm_core::transport::{envelope_transport_check, transport_lie, zeta_check};

use crate::config::{ExampleConfig, ExampleKind};
use crate::report::MmSummary;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Check,
    Envelop,
    Primitives,
    Mm,
    Quasi,
    Transport,
}

impl Subcommand {
    pub fn name(&self) -> &'static str {
        match self {
            Subcommand::Check => "check",
            Subcommand::Envelop => "envelop",
            Subcommand::Primitives => "primitives",
            Subcommand::Mm => "mm",
            Subcommand::Quasi => "quasi",
            Subcommand::Transport => "transport",
        }
    }
}

#[derive(Debug, Default)]
pub struct RunOutcome {
    pub checks: Vec<AxiomCheck>,
    pub dimensions: BTreeMap<String, Vec<usize>>,
    pub matrices: BTreeMap<String, Vec<(usize, usize, String)>>,
    pub stabilization: Option<StabilizationInfo>,
    pub mm: Option<MmSummary>,
    pub notes: Vec<String>,
}

/// Errors that map to distinct exit codes; mathematical check failures are
/// not errors (they live inside the outcome).
#[derive(Debug)]
pub enum RunError {
    /// invalid input or config (exit 2)
    Config(anyhow::Error),
    /// truncated ideal did not stabilize (exit 3)
    Stabilization(String),
}

impl From<anyhow::Error> for RunError {
    fn from(e: anyhow::Error) -> Self {
        RunError::Config(e)
    }
}

fn lift(e: CoreError) -> RunError {
    match e {
        CoreError::Stabilization(m) => RunError::Stabilization(m),
        other => RunError::Config(anyhow::Error::new(other)),
    }
}

pub fn run(cfg: &ExampleConfig, sub: Subcommand) -> Result<RunOutcome, RunError> {
    match sub {
        Subcommand::Check => run_check(cfg),
        Subcommand::Envelop => run_envelop(cfg),
        Subcommand::Primitives => run_primitives(cfg),
        Subcommand::Mm => run_mm(cfg),
        Subcommand::Quasi => run_quasi(cfg),
        Subcommand::Transport => run_transport(cfg),
    }
}

fn is_lie_kind(cfg: &ExampleConfig) -> bool {
    matches!(
        cfg.example,
        ExampleKind::BraidedLie { .. }
            | ExampleKind::ColorLie { .. }
            | ExampleKind::SuperLie { .. }
            | ExampleKind::AlgebraDerived { .. }
            | ExampleKind::HomLie { .. }
            | ExampleKind::Transport { .. }
    )
}

fn require_lie(cfg: &ExampleConfig, sub: &str) -> Result<(), RunError> {
    if !is_lie_kind(cfg) {
        return Err(RunError::Config(anyhow::anyhow!(
            "subcommand {sub} needs a Lie-flavoured config, got kind {}",
            cfg.kind_name()
        )));
    }
    Ok(())
}

fn run_check(cfg: &ExampleConfig) -> Result<RunOutcome, RunError> {
    let mut out = RunOutcome::default();
    match &cfg.example {
        ExampleKind::Quasi { .. } => return run_quasi(cfg),
        ExampleKind::DualQuasi { .. } => return run_quasi(cfg),
        _ => {}
    }
    require_lie(cfg, "check")?;

    // explicit braiding matrices are Yang-Baxter-checked up front so a
    // failing config yields a failing check with a witness, not an error
    if let ExampleKind::BraidedLie {
        basis, braiding, ..
    } = &cfg.example
    {
        if let Some(m) = braiding
            .raw_matrix(&cfg.field(), basis.len())
            .map_err(RunError::Config)?
        {
            match braidmm_core::check_yang_baxter(&m, basis.len()).map_err(lift)? {
                None => out.checks.push(AxiomCheck::pass("qybe", basis.len().pow(3), 0)),
                Some(w) => {
                    out.checks.push(AxiomCheck::fail(
                        "qybe",
                        w.describe(basis.len()),
                        basis.len().pow(3),
                        0,
                    ));
                    return Ok(out);
                }
            }
        }
    }

    let lie = cfg.lie_algebra().map_err(RunError::Config)?;
    out.checks
        .push(AxiomCheck::pass("qybe", lie.dim().pow(3), 0));
    out.checks.extend(lie.check());

    // the displayed color axioms must agree with the categorical ones
    if matches!(
        cfg.example,
        ExampleKind::ColorLie { .. } | ExampleKind::SuperLie { .. }
    ) {
        let data = cfg.color_data().map_err(RunError::Config)?;
        out.checks.extend(check_color_axioms(&data));
    }

    if let ExampleKind::AlgebraDerived { .. } = &cfg.example {
        let alg = cfg.finite_algebra().map_err(RunError::Config)?;
        out.checks.extend(alg.check());
    }

    // free braided bialgebra axioms over the carrier
    let free = build_trunc_tensor_bialgebra(&lie.carrier, cfg.degree).map_err(lift)?;
    out.checks
        .extend(check_braided_structure(StructureKind::Bialgebra, &free.structure));
    out.dimensions.insert(
        "free_filtration".into(),
        free.structure.filtration_dims(),
    );
    Ok(out)
}

fn run_envelop(cfg: &ExampleConfig) -> Result<RunOutcome, RunError> {
    require_lie(cfg, "envelop")?;
    let lie = cfg.lie_algebra().map_err(RunError::Config)?;
    let env = build_enveloping(&lie, cfg.degree, cfg.buffer).map_err(lift)?;
    let mut out = RunOutcome::default();
    out.checks.extend(env.build_checks.clone());
    out.checks.extend(check_braided_structure(
        StructureKind::Bialgebra,
        &env.structure,
    ));
    out.dimensions
        .insert("filtration".into(), env.filtration_dims.clone());
    out.stabilization = Some(env.quotient.stabilization.clone());
    Ok(out)
}

fn run_primitives(cfg: &ExampleConfig) -> Result<RunOutcome, RunError> {
    require_lie(cfg, "primitives")?;
    let lie = cfg.lie_algebra().map_err(RunError::Config)?;
    let free = build_trunc_tensor_bialgebra(&lie.carrier, cfg.degree).map_err(lift)?;
    let p = primitives(&free.structure);
    let mut out = RunOutcome::default();
    out.dimensions
        .insert("free_filtration".into(), free.structure.filtration_dims());
    out.dimensions
        .insert("primitive_filtration".into(), p.filtration_dims.clone());
    for (k, v) in p.basis.iter().enumerate() {
        out.notes.push(format!(
            "primitive p{k} = {}",
            free.structure.display_elem(v)
        ));
    }
    // the coproduct of the free bialgebra as a sparse matrix: rows index
    // flattened basis pairs u*dim + v, columns index basis words
    let mut delta = Vec::new();
    for col in 0..free.structure.dim() {
        for (row, c) in free.structure.delta_basis(col).iter() {
            delta.push((row, col, c.to_string()));
        }
    }
    delta.sort();
    out.matrices.insert("delta".into(), delta);
    out.checks
        .push(AxiomCheck::pass("primitives_computed", p.dim(), 0));
    Ok(out)
}

fn run_mm(cfg: &ExampleConfig) -> Result<RunOutcome, RunError> {
    require_lie(cfg, "mm")?;
    let lie = cfg.lie_algebra().map_err(RunError::Config)?;
    let env = build_enveloping(&lie, cfg.degree, cfg.buffer).map_err(lift)?;
    let rep = mm_verify(&env).map_err(lift)?;
    let mut out = RunOutcome::default();
    out.checks.extend(env.build_checks.clone());
    out.checks.push(theta_primitivity(&env));
    let triangle = adjunction_triangle_check(&env).map_err(lift)?;
    out.checks.push(if triangle {
        AxiomCheck::pass("adjunction_triangle", lie.dim(), 0)
    } else {
        AxiomCheck::fail(
            "adjunction_triangle",
            "unit does not factor through the primitive inclusion".into(),
            lie.dim(),
            0,
        )
    });
    out.checks.push(if rep.iso {
        AxiomCheck::pass("mm_unit_iso", 1, 0)
    } else {
        AxiomCheck::fail(
            "mm_unit_iso",
            format!(
                "injective {}, onto primitives {}, brackets {}",
                rep.injective, rep.surjective_onto_primitives, rep.bracket_matches
            ),
            1,
            0,
        )
    });
    out.dimensions
        .insert("filtration".into(), env.filtration_dims.clone());
    out.dimensions
        .insert("primitive_filtration".into(), rep.primitive_filtration.clone());
    out.stabilization = Some(env.quotient.stabilization.clone());
    out.mm = Some(MmSummary {
        injective: rep.injective,
        surjective_onto_primitives: rep.surjective_onto_primitives,
        bracket_matches: rep.bracket_matches,
        iso: rep.iso,
    });
    // recovered bracket table on the unit images, for regression
    let eta = env.eta();
    for x in 0..lie.dim() {
        for y in 0..lie.dim() {
            let v = lie.bracket_of(x, y);
            if !v.is_zero() {
                let img = eta.apply(v);
                out.notes.push(format!(
                    "[{},{}] -> {}",
                    lie.label(x),
                    lie.label(y),
                    env.structure.display_elem(&img)
                ));
            }
        }
    }
    Ok(out)
}

fn run_quasi(cfg: &ExampleConfig) -> Result<RunOutcome, RunError> {
    let mut out = RunOutcome::default();
    match &cfg.example {
        ExampleKind::Quasi { .. } => {
            let (data, gamma, module) = cfg.quasi_data().map_err(RunError::Config)?;
            out.checks.extend(data.check().map_err(lift)?);
            // twist trivialization
            let twisted = data.twist(&gamma).map_err(lift)?;
            let trivial = twisted.is_ordinary_bialgebra()
                && twisted.r
                    == Some(braidmm_core::group::GroupAlgElement::one(
                        data.group.clone(),
                        2,
                    ));
            out.checks.push(if trivial {
                AxiomCheck::pass("twist_trivializes", 1, 0)
            } else {
                AxiomCheck::fail(
                    "twist_trivializes",
                    format!(
                        "phi = {}, lambda = {}, rho = {}",
                        twisted.phi.display(),
                        twisted.lambda.display(),
                        twisted.rho.display()
                    ),
                    1,
                    0,
                )
            });
            out.notes
                .push(format!("trivializing gauge = {}", gamma.display()));
            if let Some(m) = module {
                out.checks.extend(
                    braidmm_core::quasi::module_constraints(&data, &[m]).map_err(lift)?,
                );
            }
        }
        ExampleKind::DualQuasi { .. } => {
            let (data, gauge) = cfg.dual_quasi_data().map_err(RunError::Config)?;
            out.checks.extend(data.check().map_err(lift)?);
            if let Some(v) = gauge {
                let twisted = data.gauge_twist(&v).map_err(lift)?;
                let trivial = twisted.omega_trivial().map_err(lift)?;
                out.checks.push(if trivial {
                    AxiomCheck::pass("gauge_twist_trivializes", 1, 0)
                } else {
                    AxiomCheck::fail(
                        "gauge_twist_trivializes",
                        "twisted reassociator is not trivial".into(),
                        1,
                        0,
                    )
                });
                let matches = data.omega_matches_gauge(&v).map_err(lift)?;
                out.checks.push(if matches == trivial {
                    AxiomCheck::pass("gauge_criterion_equivalence", 1, 0)
                } else {
                    AxiomCheck::fail(
                        "gauge_criterion_equivalence",
                        "trivialization criterion disagrees with the twist".into(),
                        1,
                        0,
                    )
                });
            }
            out.notes.push(format!("window = {}", data.window));
        }
        _ => {
            return Err(RunError::Config(anyhow::anyhow!(
                "subcommand quasi needs a quasi or dual_quasi config, got {}",
                cfg.kind_name()
            )))
        }
    }
    Ok(out)
}

fn run_transport(cfg: &ExampleConfig) -> Result<RunOutcome, RunError> {
    if !matches!(
        cfg.example,
        ExampleKind::HomLie { .. } | ExampleKind::Transport { .. }
    ) {
        return Err(RunError::Config(anyhow::anyhow!(
            "subcommand transport needs a hom_lie or transport config, got {}",
            cfg.kind_name()
        )));
    }
    let (f, obj, bracket) = cfg.transport_data().map_err(RunError::Config)?;
    let mut out = RunOutcome::default();
    let lie = transport_lie(&f, &obj, &bracket).map_err(lift)?;
    out.checks.extend(lie.check());
    out.checks.extend(zeta_check(&f, &obj, cfg.degree).map_err(lift)?);
    let rep = envelope_transport_check(&f, &obj, &bracket, cfg.degree, cfg.buffer).map_err(lift)?;
    out.checks.push(if rep.iso {
        AxiomCheck::pass("envelope_comparison_iso", 1, 0)
    } else {
        AxiomCheck::fail(
            "envelope_comparison_iso",
            format!(
                "spans match: {}, dims {:?} vs {:?}",
                rep.spans_match, rep.dims_strict, rep.dims_transported
            ),
            1,
            0,
        )
    });
    out.dimensions
        .insert("filtration".into(), rep.dims_strict.clone());
    out.dimensions
        .insert("transported_filtration".into(), rep.dims_transported.clone());
    Ok(out)
}

/// Ensures subcommand/kind compatibility early (cheap validation).
pub fn supports(cfg: &ExampleConfig, sub: Subcommand) -> bool {
    match sub {
        Subcommand::Check => true,
        Subcommand::Envelop | Subcommand::Primitives | Subcommand::Mm => is_lie_kind(cfg),
        Subcommand::Quasi => matches!(
            cfg.example,
            ExampleKind::Quasi { .. } | ExampleKind::DualQuasi { .. }
        ),
        Subcommand::Transport => matches!(
            cfg.example,
            ExampleKind::HomLie { .. } | ExampleKind::Transport { .. }
        ),
    }
}

pub fn bail_unsupported(cfg: &ExampleConfig, sub: Subcommand) -> Result<()> {
    if !supports(cfg, sub) {
        bail!(
            "subcommand {} does not apply to kind {}",
            sub.name(),
            cfg.kind_name()
        );
    }
    Ok(())
}
