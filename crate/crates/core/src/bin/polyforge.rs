use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polyforge::catalog::parse_group_spec;
use polyforge::config::DEFAULT_MAX_COSETS;
use polyforge::fpres::{flat_presentation, presentation_44, universal_presentation, Presentation, Strategy};
use polyforge::geometry::build_poset;
use polyforge::mix::predicted_exponent;
use polyforge::report::{self, Report, VerifySelection};
use polyforge::toroidal::{params_for_exponent, TorusParams};
use polyforge::{Error, Limits, Result};

#[derive(Parser, Debug)]
#[command(name = "polyforge", version, about = "Build and verify 2-group polytopes")]
struct Cli {
    /// Print the report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Toroidal map {4,4}_(s,t), chosen by exponent or parameters.
    Toroidal {
        /// Exponent n with group order 2^n.
        #[arg(long, conflicts_with = "params", required_unless_present = "params")]
        n: Option<u32>,
        /// Parameters `s,t`.
        #[arg(long, value_parser = parse_pair)]
        params: Option<(u32, u32)>,
    },
    /// Flat tower with rank-3 sections of the given exponents.
    Flat {
        #[arg(long, value_delimiter = ',', required = true)]
        types: Vec<u32>,
    },
    /// Alternating semiregular polytope from a tail-triangle group.
    Semireg {
        /// Tail exponents `n3,..`; may be empty.
        #[arg(long, default_value = "")]
        tail: String,
        /// The two last exponents `n,m`.
        #[arg(long, value_parser = parse_pair)]
        last: (u32, u32),
        /// Largest group order for which the face poset is built.
        #[arg(long, default_value_t = 1 << 16)]
        poset_cap: u64,
    },
    /// Power polytope 2^K of a base group.
    Power {
        /// Group spec, e.g. `square`, `torus:2,0`.
        #[arg(long)]
        base: String,
        /// Also predict the order of 2^{K,G(2^m)}.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Run axiom and polytopality checks on the given groups.
    Verify {
        /// Group specs to check (repeatable).
        #[arg(long = "group")]
        groups: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        fap: bool,
        #[arg(long)]
        intersection: bool,
        #[arg(long)]
        orders: bool,
        #[arg(long)]
        diamond: bool,
    },
    /// Export the face lattice of a group.
    Lattice {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum)]
        export: ExportFormat,
        /// For DOT output, draw the flag graph instead of the Hasse diagram.
        #[arg(long)]
        flags: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Coset enumeration of a preset or imported presentation.
    Tc {
        #[arg(long, value_enum, required_unless_present = "import")]
        preset: Option<Preset>,
        /// Torus parameters `s,t` for the `torus` preset.
        #[arg(long, value_parser = parse_pair)]
        params: Option<(u32, u32)>,
        /// Exponents for the `flat` preset.
        #[arg(long, value_delimiter = ',')]
        types: Vec<u32>,
        /// Drop the commutator relators of the `flat` preset.
        #[arg(long)]
        no_commutators: bool,
        /// Sections `s,t/s,t/..` for the `universal` preset.
        #[arg(long)]
        sections: Option<String>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Hlt)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        /// Read the presentation from a JSON file.
        #[arg(long, conflicts_with = "preset")]
        import: Option<PathBuf>,
        /// Write the presentation as JSON.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Regenerate every checked claim and print a pass/fail table.
    Reproduce,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    Torus,
    Flat,
    Universal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Hlt,
    Felsch,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Hlt => Strategy::Hlt,
            StrategyArg::Felsch => Strategy::Felsch,
        }
    }
}

fn parse_pair(s: &str) -> std::result::Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got {s:?}"))?;
    let num = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

fn parse_tail(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("not a number: {x:?}")))
        })
        .collect()
}

fn torus_presentation(params: Option<(u32, u32)>) -> Result<(String, Presentation, u64)> {
    let (s, t) = params.ok_or_else(|| Error::InvalidParams("--params s,t is required".into()))?;
    let p = TorusParams::new(s, t)?;
    Ok((p.to_string(), presentation_44(s, t)?, p.group_order()))
}

fn run(cli: Cli) -> Result<Report> {
    let limits = Limits::from_env();
    match cli.command {
        Command::Toroidal { n, params } => {
            let p = match (n, params) {
                (Some(n), _) => params_for_exponent(n)?,
                (None, Some((s, t))) => TorusParams::new(s, t)?,
                (None, None) => return Err(Error::InvalidParams("give --n or --params".into())),
            };
            report::toroidal_report(p)
        }
        Command::Flat { types } => report::flat_report(&types),
        Command::Semireg { tail, last, poset_cap } => report::semireg_report(&parse_tail(&tail)?, last, poset_cap),
        Command::Power { base, m } => {
            let k = parse_group_spec(&base)?;
            report::power_report(&base, &k, m)
        }
        Command::Verify {
            groups,
            all,
            fap,
            intersection,
            orders,
            diamond,
        } => {
            let mut sel = VerifySelection {
                fap,
                intersection,
                orders,
                diamond,
            };
            if all || sel == VerifySelection::default() {
                sel = VerifySelection::all();
            }
            let parsed = groups
                .iter()
                .map(|s| Ok((s.clone(), parse_group_spec(s)?)))
                .collect::<Result<Vec<_>>>()?;
            report::verify_report(&parsed, sel)
        }
        Command::Lattice {
            group,
            export,
            flags,
            out,
        } => {
            let g = parse_group_spec(&group)?;
            let g = polyforge::StringCGroup::new(g.group().with_new_limits(limits))?;
            let poset = build_poset(&g)?;
            let text = match (export, flags) {
                (ExportFormat::Json, _) => poset.to_json()?,
                (ExportFormat::Dot, false) => poset.to_dot_hasse(),
                (ExportFormat::Dot, true) => poset.to_dot_flags(),
            };
            std::fs::write(&out, text)?;
            let f: Vec<String> = poset.f_vector().iter().map(|x| x.to_string()).collect();
            Ok(Report::new(vec![report::Claim::info(
                format!("lattice/{group}/f-vector"),
                f.join(","),
            )]))
        }
        Command::Tc {
            preset,
            params,
            types,
            no_commutators,
            sections,
            strategy,
            max_cosets,
            import,
            export,
        } => {
            let (label, p, expected) = match (preset, import) {
                (_, Some(path)) => {
                    let p = Presentation::from_json(&std::fs::read_to_string(&path)?)?;
                    (path.display().to_string(), p, None)
                }
                (Some(Preset::Torus), None) => {
                    let (label, p, order) = torus_presentation(params)?;
                    (label, p, Some(order))
                }
                (Some(Preset::Flat), None) => {
                    let p = flat_presentation(&types, !no_commutators)?;
                    let expected = (!no_commutators).then(|| 1u64 << predicted_exponent(&types));
                    let label = format!(
                        "flat:{}{}",
                        types.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                        if no_commutators { ":universal" } else { "" }
                    );
                    (label, p, expected)
                }
                (Some(Preset::Universal), None) => {
                    let text = sections.ok_or_else(|| Error::InvalidParams("--sections is required".into()))?;
                    let params = text
                        .split('/')
                        .map(|s| {
                            let (a, b) = parse_pair(s).map_err(Error::InvalidParams)?;
                            TorusParams::new(a, b)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    (format!("universal:{text}"), universal_presentation(&params)?, None)
                }
                (None, None) => return Err(Error::InvalidParams("give --preset or --import".into())),
            };
            if let Some(path) = export {
                std::fs::write(path, p.to_json()?)?;
            }
            report::tc_report(&label, &p, expected, max_cosets, strategy.into())
        }
        Command::Reproduce => Ok(report::reproduce()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            let text = if json {
                report.to_json().unwrap_or_else(|e| format!("{{\"error\": \"{e}\"}}"))
            } else {
                report.to_table()
            };
            println!("{text}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
