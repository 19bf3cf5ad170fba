//! Subcommand bodies. Each returns the rendered document and whether the
//! run succeeded; writing it out is left to the caller.

use frenet_core::indicatrix::working_grid;
use frenet_core::{
    build_involute, classify_curve_with, frame_field, indicatrix_curve, indicatrix_field, involute_frame, run_suite,
    ArcLengthMap, CurveSpec, IndicatrixKind, InvoluteSpec, Suite, Tolerances,
};
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::output::{frame_row, Table, UNITS};
use crate::{CliError, Command, KindArg, SuiteArg, Target};

const ARC_NODES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, success: true }
    }
}

fn kind_of(k: KindArg) -> IndicatrixKind {
    match k {
        KindArg::Tangent => IndicatrixKind::Tangent,
        KindArg::Normal => IndicatrixKind::PrincipalNormal,
        KindArg::Binormal => IndicatrixKind::Binormal,
    }
}

fn involute_spec(cfg: &RunConfig) -> Result<InvoluteSpec, CliError> {
    let p = &cfg.preset;
    Ok(InvoluteSpec::with_anchor(&p.curve()?, p.c_inv, p.s_anchor)?)
}

fn render(table: Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

pub fn run(command: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Sample => sample(cfg).map(Outcome::ok),
        Command::Involute => involute(cfg).map(Outcome::ok),
        Command::Indicatrix { kind } => indicatrix(cfg, kind_of(*kind)).map(Outcome::ok),
        Command::Classify { curve } => classify(cfg, *curve).map(Outcome::ok),
        Command::Verify { suite } => verify(cfg, *suite),
    }
}

fn sample(cfg: &RunConfig) -> Result<String, CliError> {
    let p = &cfg.preset;
    let curve = p.curve()?;
    let grid = p.domain.grid(cfg.grid_n);
    let arc = ArcLengthMap::anchored(&curve, ARC_NODES, p.s_anchor)?;
    let field = frame_field(&curve, &grid, &arc)?;
    let comments = vec![
        "frenet sample".to_string(),
        cfg.describe(),
        format!("s measured from t={:?}", p.s_anchor),
        UNITS.to_string(),
    ];
    Ok(render(
        Table::frames(comments, field.samples),
        cfg.format.unwrap_or(Format::Csv),
    ))
}

fn involute(cfg: &RunConfig) -> Result<String, CliError> {
    let spec = involute_spec(cfg)?;
    let grid = working_grid(&spec, cfg.grid_n);
    let samples = grid
        .iter()
        .map(|&t| involute_frame(&spec, t).map(|f| f.sample))
        .collect::<Result<Vec<_>, _>>()?;
    let d = spec.domain();
    let comments = vec![
        "frenet involute".to_string(),
        cfg.describe(),
        format!(
            "working subdomain [{:?}, {:?}] where c - s > 0; {} rows",
            d.min,
            d.max,
            grid.len()
        ),
        "s is the involute arc length from the anchor".to_string(),
        UNITS.to_string(),
    ];
    Ok(render(
        Table::frames(comments, samples),
        cfg.format.unwrap_or(Format::Csv),
    ))
}

fn indicatrix(cfg: &RunConfig, kind: IndicatrixKind) -> Result<String, CliError> {
    let spec = involute_spec(cfg)?;
    let grid = working_grid(&spec, cfg.grid_n);
    let points = indicatrix_field(&spec, kind, &grid)?;
    let arc = spec.involute_arc()?;
    let rows = points
        .iter()
        .map(|pt| {
            let mut sample = pt.sample;
            let s_ind = sample.s;
            sample.s = arc.s_of_t(sample.t);
            let mut row = frame_row(&sample);
            row.push(s_ind);
            row
        })
        .collect();
    let d = spec.domain();
    let mut comments = vec![
        format!("frenet indicatrix --kind {}", kind.name()),
        cfg.describe(),
        format!(
            "working subdomain [{:?}, {:?}] where c - s > 0; {} rows",
            d.min,
            d.max,
            grid.len()
        ),
        "s is the involute arc length; s_ind is the indicatrix arc length".to_string(),
    ];
    if kind == IndicatrixKind::PrincipalNormal {
        comments.push("kappa, tau and Gamma are the corrected closed forms".to_string());
    }
    if kind == IndicatrixKind::Binormal {
        comments.push("kappa is |kappa_b|; s_ind grows with |tau| of the involute".to_string());
    }
    comments.push(format!("{UNITS}, s_ind (length)"));
    let mut columns = crate::output::FRAME_COLUMNS.to_vec();
    columns.push("s_ind");
    let table = Table {
        comments,
        columns,
        rows,
    };
    Ok(render(table, cfg.format.unwrap_or(Format::Csv)))
}

fn classify(cfg: &RunConfig, target: Target) -> Result<String, CliError> {
    if cfg.format == Some(Format::Csv) {
        return Err(CliError::Config("classify writes json only".to_string()));
    }
    let curve: CurveSpec = match target {
        Target::Base => cfg.preset.curve()?,
        Target::Involute => build_involute(&involute_spec(cfg)?),
        Target::Tangent => indicatrix_curve(&involute_spec(cfg)?, IndicatrixKind::Tangent)?,
        Target::Normal => indicatrix_curve(&involute_spec(cfg)?, IndicatrixKind::PrincipalNormal)?,
        Target::Binormal => indicatrix_curve(&involute_spec(cfg)?, IndicatrixKind::Binormal)?,
    };
    let tolerances = match cfg.tol {
        Some(t) => Tolerances {
            constancy: t,
            sphere: t,
        },
        None => Tolerances::for_source(curve.derivative_source()),
    };
    let report = classify_curve_with(&curve, cfg.grid_n, tolerances)?;
    let d = curve.domain();
    let doc = json!({
        "config": cfg.describe(),
        "curve": curve.label(),
        "domain": [d.min, d.max],
        "report": report,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    Ok(text)
}

fn verify(cfg: &RunConfig, suite: SuiteArg) -> Result<Outcome, CliError> {
    if cfg.format == Some(Format::Csv) {
        return Err(CliError::Config("verify writes json only".to_string()));
    }
    let suite = match suite {
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Theorems => Suite::Theorems,
        SuiteArg::All => Suite::All,
    };
    let report = run_suite(&cfg.preset, suite, cfg.grid_n)?;
    Ok(Outcome {
        text: report.to_json(),
        success: report.ok(),
    })
}
