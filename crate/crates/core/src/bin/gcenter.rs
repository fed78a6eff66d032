use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gcenter::compactify::{chart_field, chart_field_with_degree, infinite_equilibria_with_degree, ChartId};
use gcenter::desing::{BlowupChain, StepKind};
use gcenter::family::{build_system, center_cases, global_cases, FamilyParams};
use gcenter::flow::{default_radii, global_center_verdict, GlobalTag, IntegratorConfig};
use gcenter::portrait::{render_svg, PortraitSpec};
use gcenter::{Error, VectorField};

const EXIT_PARSE: u8 = 3;
const EXIT_FAILURE: u8 = 4;

#[derive(Parser)]
#[command(name = "gcenter", version, about = "Center and global-center analysis for a family of cubic planar systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Parameter file: {"a1": "p/q", ..., "d2": "p/q"}; `-` reads stdin
    #[arg(long)]
    params: PathBuf,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FlowArgs {
    /// Section closure tolerance
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_time: Option<f64>,
    /// Depth `ln r` beyond which an orbit counts as escaping
    #[arg(long)]
    infinity_depth: Option<f64>,
    /// Comma-separated sample radii
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
}

impl FlowArgs {
    fn config(&self) -> IntegratorConfig {
        let mut cfg = IntegratorConfig::default();
        if let Some(t) = self.tol {
            cfg.section_closure_tol = t;
        }
        if let Some(t) = self.max_time {
            cfg.max_time = t;
        }
        if let Some(d) = self.infinity_depth {
            cfg.infinity_depth = d;
        }
        cfg
    }

    fn radii(&self) -> Vec<f64> {
        self.radii.clone().unwrap_or_else(default_radii)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Center conditions and global-center statements (exit 0 global, 1 center only, 2 no center)
    Decide {
        #[command(flatten)]
        common: Common,
    },
    /// The field in a chart of the compactification, with its infinite equilibria
    Compactify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "u1")]
        chart: String,
        /// Compactify with this degree instead of the field degree
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Apply a list of transformations to a chart field, e.g. `blowup,rescale:u:1,twist:-1,translate:0:-1`
    Blowup {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "u1")]
        chart: String,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        steps: String,
    },
    /// Numerical global-center test (exit 0 consistent, 1 not global, 2 inconclusive)
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        flow: FlowArgs,
    },
    /// Phase portrait on the Poincaré disc as SVG
    Portrait {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        flow: FlowArgs,
        #[arg(long, default_value_t = 600)]
        width: u32,
        #[arg(long, default_value_t = 600)]
        height: u32,
    },
}

enum Failure {
    Parse(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Parse(m),
            other => Failure::Other(other.to_string()),
        }
    }
}

fn read_params(path: &Path) -> Result<FamilyParams, Failure> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Parse(e.to_string()))?
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?
    };
    Ok(FamilyParams::from_json(&text)?)
}

fn parse_chart(s: &str) -> Result<ChartId, Failure> {
    ChartId::parse(s).ok_or_else(|| Failure::Parse(format!("unknown chart `{s}`")))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Other(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn chart_of(vf: &VectorField, chart: ChartId, degree: Option<u32>) -> Result<VectorField, Failure> {
    Ok(match degree {
        Some(n) => chart_field_with_degree(vf, chart, n)?.field,
        None => chart_field(vf, chart).field,
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Decide { common } => {
            let params = read_params(&common.params)?;
            let center = center_cases(&params);
            let global = global_cases(&params);
            let report = serde_json::json!({
                "params": params.to_json(),
                "center": center.to_json(),
                "global": global.to_json(),
            });
            emit(&common.out, &json_text(&report))?;
            Ok(if global.is_global() {
                0
            } else if center.is_center() {
                1
            } else {
                2
            })
        }
        Command::Compactify { common, chart, degree } => {
            let params = read_params(&common.params)?;
            let chart = parse_chart(&chart)?;
            let vf = build_system(&params);
            let n = degree.unwrap_or_else(|| vf.effective_degree());
            let cf = chart_field_with_degree(&vf, chart, n)?;
            let inf = infinite_equilibria_with_degree(&vf, n)?;
            let report = serde_json::json!({
                "chart": chart.to_string(),
                "n_used": cf.n_used,
                "u_dot": cf.field.p.to_text("u", "v"),
                "v_dot": cf.field.q.to_text("u", "v"),
                "infinity": inf,
            });
            emit(&common.out, &json_text(&report))?;
            Ok(0)
        }
        Command::Blowup {
            common,
            chart,
            degree,
            steps,
        } => {
            let params = read_params(&common.params)?;
            let chart = parse_chart(&chart)?;
            let steps = StepKind::parse_list(&steps)?;
            let start = chart_of(&build_system(&params), chart, degree)?;
            let mut chain = BlowupChain::new(start);
            for step in steps {
                chain.apply(step)?;
            }
            let mut report = chain.to_json();
            report["chart"] = serde_json::json!(chart.to_string());
            emit(&common.out, &json_text(&report))?;
            Ok(0)
        }
        Command::Verify { common, flow } => {
            let params = read_params(&common.params)?;
            let cfg = flow.config();
            cfg.validate()?;
            let verdict = global_center_verdict(&params, &cfg, &flow.radii());
            emit(&common.out, &json_text(&verdict.to_json()))?;
            Ok(match verdict.tag {
                GlobalTag::GlobalCenterConsistent => 0,
                GlobalTag::NotGlobal => 1,
                GlobalTag::Inconclusive => 2,
            })
        }
        Command::Portrait {
            common,
            flow,
            width,
            height,
        } => {
            let params = read_params(&common.params)?;
            let cfg = flow.config();
            cfg.validate()?;
            let spec = PortraitSpec {
                width,
                height,
                seeds: gcenter::flow::sample_points(&flow.radii()),
                ..Default::default()
            };
            let svg = render_svg(&build_system(&params), &spec, &cfg);
            emit(&common.out, &svg)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Parse(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
