//! Flag parsing and the run configuration shared by all subcommands.

use fgprim_core::error::Error;
use fgprim_core::f2prim::WordSet;
use fgprim_core::words::{count_ball, Alphabet};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or malformed input text (exit 2).
    Usage(String),
    /// Refused oversized brute-force scan (exit 3).
    Guardrail(String),
    /// Library-level error (exit 2 for parse, 4 otherwise).
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Convolution,
    Bruteforce,
    Both,
}

impl Method {
    pub fn uses_bruteforce(self) -> bool {
        matches!(self, Method::Bruteforce | Method::Both)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub enum StructureChoice {
    Modular,
    Traces(f64, f64),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub word_text: Option<String>,
    pub rank: u32,
    pub max_length: Option<u32>,
    pub set: WordSet,
    pub method: Method,
    pub structure: StructureChoice,
    pub format: Format,
    pub threads: usize,
    pub force: bool,
}

impl RunConfig {
    pub fn parse(command: &str, args: &[String]) -> Result<RunConfig, CliError> {
        let mut config = RunConfig {
            word_text: None,
            rank: 2,
            max_length: None,
            set: WordSet::Primitive,
            method: Method::Convolution,
            structure: StructureChoice::Modular,
            format: Format::Csv,
            threads: 0,
            force: false,
        };
        let mut traces_arg: Option<(f64, f64)> = None;
        let mut structure_arg: Option<String> = None;
        let mut iter = args.iter().peekable();
        while let Some(arg) = iter.next() {
            let mut take_value = |name: &str| -> Result<String, CliError> {
                iter.next()
                    .cloned()
                    .ok_or_else(|| CliError::Usage(format!("{name} needs a value")))
            };
            match arg.as_str() {
                "--rank" => {
                    config.rank = parse_number(&take_value("--rank")?, "--rank")?;
                }
                "--max-length" => {
                    config.max_length =
                        Some(parse_number(&take_value("--max-length")?, "--max-length")?);
                }
                "--set" => {
                    config.set = WordSet::parse(&take_value("--set")?)
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                }
                "--method" => {
                    config.method = match take_value("--method")?.as_str() {
                        "convolution" => Method::Convolution,
                        "bruteforce" => Method::Bruteforce,
                        "both" => Method::Both,
                        other => return Err(CliError::Usage(format!("unknown method {other:?}"))),
                    };
                }
                "--structure" => {
                    structure_arg = Some(take_value("--structure")?);
                }
                "--traces" => {
                    let text = take_value("--traces")?;
                    let Some((x, y)) = text.split_once(',') else {
                        return Err(CliError::Usage(format!(
                            "--traces expects x,y — got {text:?}"
                        )));
                    };
                    let parse = |s: &str| {
                        s.trim().parse::<f64>().map_err(|_| {
                            CliError::Usage(format!("--traces component {s:?} is not a number"))
                        })
                    };
                    traces_arg = Some((parse(x)?, parse(y)?));
                }
                "--format" => {
                    config.format = match take_value("--format")?.as_str() {
                        "csv" => Format::Csv,
                        "json" => Format::Json,
                        other => return Err(CliError::Usage(format!("unknown format {other:?}"))),
                    };
                }
                "--threads" => {
                    let text = take_value("--threads")?;
                    config.threads = if text == "auto" {
                        0
                    } else {
                        let k: usize = text.parse().map_err(|_| {
                            CliError::Usage(format!(
                                "--threads expects a number or auto, got {text:?}"
                            ))
                        })?;
                        if k == 0 {
                            return Err(CliError::Usage("--threads must be at least 1".into()));
                        }
                        k
                    };
                }
                "--force" => config.force = true,
                other if other.starts_with("--") => {
                    return Err(CliError::Usage(format!("unknown flag {other:?}")));
                }
                positional => {
                    if config.word_text.is_some() {
                        return Err(CliError::Usage(format!(
                            "unexpected extra argument {positional:?}"
                        )));
                    }
                    config.word_text = Some(positional.to_string());
                }
            }
        }

        config.structure = match (structure_arg.as_deref(), traces_arg) {
            (None, None) | (Some("modular"), None) => StructureChoice::Modular,
            (Some("traces"), Some((x, y))) | (None, Some((x, y))) => StructureChoice::Traces(x, y),
            (Some("traces"), None) => {
                return Err(CliError::Usage(
                    "--structure traces needs --traces x,y".into(),
                ));
            }
            (Some("modular"), Some(_)) => {
                return Err(CliError::Usage(
                    "--traces conflicts with --structure modular".into(),
                ));
            }
            (Some(other), _) => {
                return Err(CliError::Usage(format!("unknown structure {other:?}")));
            }
        };

        if command == "is-primitive" && config.word_text.is_none() {
            return Err(CliError::Usage("is-primitive needs a word argument".into()));
        }
        if matches!(command, "count" | "growth" | "geodesics") && config.max_length.is_none() {
            return Err(CliError::Usage(format!("{command} needs --max-length")));
        }
        Ok(config)
    }

    pub fn alphabet(&self) -> Result<Alphabet, CliError> {
        Ok(Alphabet::new(self.rank)?)
    }

    /// Brute-force scans beyond the rank-2, length-16 ball need --force.
    pub fn check_guardrail(&self, n_max: u32) -> Result<(), CliError> {
        if !self.method.uses_bruteforce() || self.force {
            return Ok(());
        }
        let alphabet = self.alphabet()?;
        let limit = count_ball(Alphabet::new(2).expect("rank 2"), 16);
        if count_ball(alphabet, n_max) > limit {
            return Err(CliError::Guardrail(format!(
                "brute-force scan of the rank-{} ball of radius {n_max} exceeds the \
                 built-in budget (the rank-2 radius-16 ball, {limit} words); pass --force to run it",
                self.rank
            )));
        }
        Ok(())
    }
}

fn parse_number(text: &str, flag: &str) -> Result<u32, CliError> {
    text.parse::<u32>().map_err(|_| {
        CliError::Usage(format!(
            "{flag} expects a non-negative integer, got {text:?}"
        ))
    })
}
