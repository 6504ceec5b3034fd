use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use polycensus::census::{census, verify, verify_against_oracle, CensusFilter, CensusRecord};
use polycensus::embedding::format::{format_ascii, read_graphs, GraphFormat, PLANAR_CODE_HEADER};
use polycensus::enumeration::{
    brute_force_oracle, enumerate_streaming, enumerate_with, EnumerationConfig, ORACLE_MAX_VERTICES,
};
use polycensus::generators::{bipyramid, prism_stack, pyramid, stellate};
use polycensus::reduction::factorize;
use polycensus::rigidity::{check_identities, IdentityCheck};
use polycensus::validity::ValidationReport;
use polycensus::{validate_polyhedral, CanonicalCode, PolyhedralGraph};

/// Polyhedral graph census and analysis.
#[derive(Parser)]
#[command(name = "polycensus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every polyhedral type up to a vertex count.
    Enumerate {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, value_enum, default_value_t = EnumerateFormat::PlanarCode)]
        format: EnumerateFormat,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Emit types as they are found instead of storing them; lifts the
        /// vertex cap. Output is grouped by edge count.
        #[arg(long)]
        stream: bool,
    },
    /// Profile, identity checks and reducibility of each input graph.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
    },
    /// Census records (JSONL) for the enumerated types.
    Census {
        #[arg(long)]
        max_vertices: usize,
        /// Keep only types with exactly this many rigid vertices.
        #[arg(long)]
        rigid: Option<usize>,
        #[arg(long)]
        irreducible: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the rigid-vertex classification over an enumeration.
    Verify {
        #[arg(long)]
        max_vertices: usize,
        /// Also compare against the brute-force oracle at 8 vertices.
        #[arg(long)]
        long: bool,
        #[arg(long)]
        json: bool,
    },
    /// Factor tree (JSON) of each input graph.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
    },
    /// Build a named polyhedron, optionally stellating triangles.
    Generate {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Face index to stellate; repeatable, applied in order.
        #[arg(long)]
        stellate: Vec<usize>,
        #[arg(long, value_enum, default_value_t = InputFormat::Ascii)]
        format: InputFormat,
    },
    /// Codes from the brute-force oracle, one hex code per line.
    Oracle {
        #[arg(long)]
        vertices: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    stdin: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumerateFormat {
    #[value(name = "planar_code")]
    PlanarCode,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    #[value(name = "planar_code")]
    PlanarCode,
    Ascii,
}

impl From<InputFormat> for GraphFormat {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::PlanarCode => GraphFormat::PlanarCode,
            InputFormat::Ascii => GraphFormat::Ascii,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Pyramid,
    Bipyramid,
    PrismStack,
}

/// A failed check whose details were already written.
struct CheckFailed;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(CheckFailed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn config(max_vertices: usize) -> Result<EnumerationConfig> {
    Ok(EnumerationConfig::new(max_vertices).threads_from_env()?)
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_input(input: &Input, format: Option<InputFormat>) -> Result<Vec<polycensus::Embedding>> {
    let bytes = match &input.file {
        Some(p) => std::fs::read(p).with_context(|| format!("cannot read {}", p.display()))?,
        None => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            buf
        }
    };
    Ok(read_graphs(&bytes, format.map(Into::into))?)
}

fn write_jsonl<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

#[derive(Serialize)]
struct Analysis<'a> {
    index: usize,
    polyhedral: bool,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    record: Option<CensusRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    identities: Option<Vec<IdentityCheck>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    validation: Option<&'a ValidationReport>,
}

fn run(command: Command) -> Result<Result<(), CheckFailed>> {
    let mut ok = true;
    match command {
        Command::Enumerate {
            max_vertices,
            format,
            output,
            stream,
        } => {
            let config = config(max_vertices)?;
            let mut out = open_output(output.as_ref())?;
            // the header waits for the first graph so errors leave no output
            let mut header = matches!(format, EnumerateFormat::PlanarCode);
            let mut emit = |code: &CanonicalCode| -> Result<()> {
                if std::mem::take(&mut header) {
                    out.write_all(PLANAR_CODE_HEADER)?;
                }
                match format {
                    EnumerateFormat::PlanarCode => out.write_all(code.as_bytes())?,
                    EnumerateFormat::Jsonl => {
                        write_jsonl(&mut out, &CensusRecord::from_code(code)?)?
                    }
                }
                Ok(())
            };
            if stream {
                let mut failure = None;
                enumerate_streaming(&config, |code| {
                    if failure.is_none() {
                        failure = emit(code).err();
                    }
                })?;
                if let Some(e) = failure {
                    return Err(e);
                }
            } else {
                let run = enumerate_with(&config)?;
                for code in run.iter() {
                    emit(code)?;
                }
            }
            out.flush()?;
        }
        Command::Analyze { input, format } => {
            let graphs = read_input(&input, format)?;
            let mut out = open_output(None)?;
            for (index, e) in graphs.iter().enumerate() {
                match validate_polyhedral(e) {
                    Ok(p) => {
                        let identities = check_identities(&p);
                        ok &= identities.all_passed();
                        write_jsonl(
                            &mut out,
                            &Analysis {
                                index,
                                polyhedral: true,
                                record: Some(CensusRecord::new(&p)),
                                identities: Some(identities.checks),
                                validation: None,
                            },
                        )?;
                    }
                    Err(polycensus::validity::ValidityError::Invalid(report)) => {
                        ok = false;
                        write_jsonl(
                            &mut out,
                            &Analysis {
                                index,
                                polyhedral: false,
                                record: None,
                                identities: None,
                                validation: Some(&report),
                            },
                        )?;
                    }
                }
            }
            out.flush()?;
        }
        Command::Census {
            max_vertices,
            rigid,
            irreducible,
            output,
        } => {
            let config = config(max_vertices)?;
            let run = enumerate_with(&config)?;
            let records = config
                .pool()?
                .install(|| census(&run, CensusFilter { rigid, irreducible }));
            let mut out = open_output(output.as_ref())?;
            for r in &records {
                write_jsonl(&mut out, r)?;
            }
            out.flush()?;
        }
        Command::Verify {
            max_vertices,
            long,
            json,
        } => {
            let config = config(max_vertices)?;
            let run = enumerate_with(&config)?;
            let mut report = config.pool()?.install(|| verify(&run));
            let oracle_limit = if long {
                ORACLE_MAX_VERTICES
            } else {
                ORACLE_MAX_VERTICES - 1
            };
            report
                .claims
                .push(verify_against_oracle(&run, oracle_limit));
            let mut out = open_output(None)?;
            if json {
                write_jsonl(&mut out, &report)?;
            } else {
                write!(out, "{report}")?;
            }
            out.flush()?;
            ok = report.passed();
        }
        Command::Decompose { input, format } => {
            let graphs = read_input(&input, format)?;
            let mut out = open_output(None)?;
            for (index, e) in graphs.iter().enumerate() {
                let p = validate_polyhedral(e).with_context(|| format!("graph {index}"))?;
                write_jsonl(&mut out, &factorize(&p))?;
            }
            out.flush()?;
        }
        Command::Generate {
            family,
            n,
            stellate: faces,
            format,
        } => {
            let mut p: PolyhedralGraph = match family {
                Family::Pyramid => pyramid(n)?,
                Family::Bipyramid => bipyramid(n)?,
                Family::PrismStack => prism_stack(n)?,
            };
            for face in faces {
                p = stellate(&p, face)?;
            }
            let mut out = open_output(None)?;
            match format {
                InputFormat::Ascii => writeln!(out, "{}", format_ascii(p.embedding()))?,
                InputFormat::PlanarCode => {
                    out.write_all(PLANAR_CODE_HEADER)?;
                    out.write_all(&polycensus::embedding::format::encode_planar_code(
                        p.embedding(),
                    )?)?;
                }
            }
            out.flush()?;
        }
        Command::Oracle { vertices } => {
            let codes = brute_force_oracle(vertices)?;
            let mut out = open_output(None)?;
            for c in codes {
                writeln!(out, "{c}")?;
            }
            out.flush()?;
        }
    }
    if ok {
        Ok(Ok(()))
    } else {
        Ok(Err(CheckFailed))
    }
}
