//! The four subcommands. All stdout payloads are deterministic for a fixed
//! configuration, independent of thread count.

use std::collections::BTreeMap;

use serde::Serialize;

use fgprim_core::error::Error;
use fgprim_core::f2prim::{count_table, count_table_bruteforce, CountTable, WordSet};
use fgprim_core::growth::{cumulative_series, growth_report};
use fgprim_core::hyperbolic::{
    comparability, geodesic_census, quadratic_growth_fit, GeodesicCensus, PuncturedTorusStructure,
    QuadraticFit,
};
use fgprim_core::whitehead::minimize;
use fgprim_core::words::Word;

use crate::config::{CliError, Format, Method, RunConfig, StructureChoice};

pub fn is_primitive(config: &RunConfig) -> Result<u8, CliError> {
    let alphabet = config.alphabet()?;
    let text = config.word_text.as_deref().expect("validated by parse");
    let word = Word::parse(alphabet, text)?;
    let (core, conjugator) = word.cyclic_reduce();
    let (minimal, trace) = minimize(&core);
    let verdict = !core.is_empty() && minimal.len() == 1;
    println!("word: {word}");
    println!("cyclic_reduction: {core}");
    println!("conjugator: {conjugator}");
    if trace.is_empty() {
        println!("moves: (none)");
    } else {
        let rendered: Vec<String> = trace.iter().map(|m| m.to_string()).collect();
        println!("moves: {}", rendered.join(" "));
    }
    println!("minimal: {minimal}");
    println!("primitive: {verdict}");
    Ok(if verdict { 0 } else { 1 })
}

#[derive(Serialize)]
struct CountJson<'a> {
    rank: u32,
    set: &'a str,
    method: &'a str,
    per_length: BTreeMap<u32, String>,
    cumulative: BTreeMap<u32, String>,
}

#[derive(Serialize)]
struct CompareRowJson {
    n: u32,
    convolution: String,
    bruteforce: String,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct CompareJson<'a> {
    rank: u32,
    set: &'a str,
    method: &'a str,
    rows: Vec<CompareRowJson>,
    all_match: bool,
}

pub fn count(config: &RunConfig) -> Result<u8, CliError> {
    let alphabet = config.alphabet()?;
    let n_max = config.max_length.expect("validated by parse");
    config.check_guardrail(n_max)?;
    match config.method {
        Method::Convolution => {
            let table = count_table(config.set, alphabet, n_max)?;
            emit_table(config, &table, "convolution")
        }
        Method::Bruteforce => {
            let table = count_table_bruteforce(config.set, alphabet, n_max, config.threads);
            emit_table(config, &table, "bruteforce")
        }
        Method::Both => {
            let conv = count_table(config.set, alphabet, n_max)?;
            let brute = count_table_bruteforce(config.set, alphabet, n_max, config.threads);
            let mut rows = Vec::new();
            let mut all_match = true;
            for (&n, conv_count) in conv.per_length() {
                let brute_count = brute.get(n).expect("same coverage");
                let matches = conv_count == brute_count;
                all_match &= matches;
                rows.push(CompareRowJson {
                    n,
                    convolution: conv_count.to_string(),
                    bruteforce: brute_count.to_string(),
                    matches,
                });
            }
            match config.format {
                Format::Csv => {
                    println!("n,convolution,bruteforce,match");
                    for row in &rows {
                        println!(
                            "{},{},{},{}",
                            row.n, row.convolution, row.bruteforce, row.matches
                        );
                    }
                }
                Format::Json => {
                    let doc = CompareJson {
                        rank: alphabet.rank(),
                        set: config.set.name(),
                        method: "both",
                        rows,
                        all_match,
                    };
                    println!("{}", serde_json::to_string(&doc).expect("serializes"));
                }
            }
            if !all_match {
                return Err(CliError::Core(Error::Domain(
                    "brute-force and convolution counts disagree".into(),
                )));
            }
            Ok(0)
        }
    }
}

fn emit_table(config: &RunConfig, table: &CountTable, method: &str) -> Result<u8, CliError> {
    let n_max = config.max_length.expect("validated by parse");
    match config.format {
        Format::Csv => {
            print!("{}", table.to_csv());
            eprintln!("cumulative({n_max}) = {}", table.cumulative(n_max)?);
        }
        Format::Json => {
            let mut cumulative = BTreeMap::new();
            for &n in table.per_length().keys() {
                cumulative.insert(n, table.cumulative(n)?.to_string());
            }
            let doc = CountJson {
                rank: table.rank(),
                set: config.set.name(),
                method,
                per_length: table
                    .per_length()
                    .iter()
                    .map(|(n, c)| (*n, c.to_string()))
                    .collect(),
                cumulative,
            };
            println!("{}", serde_json::to_string(&doc).expect("serializes"));
        }
    }
    Ok(0)
}

pub fn growth(config: &RunConfig) -> Result<u8, CliError> {
    let alphabet = config.alphabet()?;
    let n_max = config.max_length.expect("validated by parse");
    if config.method == Method::Both {
        return Err(CliError::Usage(
            "growth needs a single method, not both".into(),
        ));
    }
    config.check_guardrail(n_max)?;
    let table = match config.method {
        Method::Convolution => count_table(config.set, alphabet, n_max)?,
        Method::Bruteforce => count_table_bruteforce(config.set, alphabet, n_max, config.threads),
        Method::Both => unreachable!(),
    };
    // the subexponential series is fit on cumulative counts, the others on
    // per-length counts; density checkpoints always use the raw series
    let fit_series = match config.set {
        WordSet::CycPrimitive => cumulative_series(&table),
        _ => table.clone(),
    };
    let mut checkpoints: Vec<u32> = (1..=n_max / 10).map(|k| k * 10).collect();
    if checkpoints.last() != Some(&n_max) {
        checkpoints.push(n_max);
    }
    let fit_lo = (n_max / 2).max(1);
    let base = f64::from(2 * alphabet.rank() - 1);
    let report = growth_report(
        config.set.name(),
        &table,
        &fit_series,
        &checkpoints,
        fit_lo,
        n_max,
        base,
    )?;
    println!("{}", report.to_json());
    Ok(0)
}

#[derive(Serialize)]
struct CensusEntryJson {
    class_vector: [i64; 2],
    word: String,
    trace: String,
    length: f64,
}

#[derive(Serialize)]
struct QuadraticFitJson {
    complete_bound: f64,
    window: [f64; 2],
    exponent: f64,
    residual: f64,
    points: usize,
}

#[derive(Serialize)]
struct ComparabilityJson {
    n_max: u32,
    min_ratio: f64,
    max_ratio: f64,
    c_emp: f64,
    trajectory: Vec<(u32, f64, f64)>,
}

#[derive(Serialize)]
struct GeodesicsJson<'a> {
    structure: &'a str,
    n_max: u32,
    l_max: f64,
    counting: &'static str,
    entries: Vec<CensusEntryJson>,
    quadratic_fit: Option<QuadraticFitJson>,
    comparability: ComparabilityJson,
}

pub fn geodesics(config: &RunConfig) -> Result<u8, CliError> {
    let n_max = config.max_length.expect("validated by parse");
    let structure = match config.structure {
        StructureChoice::Modular => PuncturedTorusStructure::modular_torus(),
        StructureChoice::Traces(x, y) => PuncturedTorusStructure::from_traces(x, y)?,
    };
    let census = geodesic_census(&structure, n_max)?;
    let report = comparability(&structure, n_max)?;
    // small censuses leave too few complete-window points to fit
    let fit: Option<QuadraticFit> = quadratic_growth_fit(&census, report.min_ratio).ok();
    match config.format {
        Format::Csv => {
            print!("{}", census.to_csv());
            emit_census_summary(&census, &report, fit.as_ref());
        }
        Format::Json => {
            let doc = GeodesicsJson {
                structure: &census.structure_label,
                n_max: census.n_max,
                l_max: census.l_max,
                counting: fgprim_core::hyperbolic::COUNTING_CONVENTION,
                entries: census
                    .entries
                    .iter()
                    .map(|e| CensusEntryJson {
                        class_vector: [e.class.vector().0, e.class.vector().1],
                        word: e.class.representative().to_string(),
                        trace: e.trace.to_decimal_string(),
                        length: e.length,
                    })
                    .collect(),
                quadratic_fit: fit.map(|f| QuadraticFitJson {
                    complete_bound: f.complete_bound,
                    window: [f.window.0, f.window.1],
                    exponent: f.exponent,
                    residual: f.residual,
                    points: f.points,
                }),
                comparability: ComparabilityJson {
                    n_max: report.n_max,
                    min_ratio: report.min_ratio,
                    max_ratio: report.max_ratio,
                    c_emp: report.c_emp,
                    trajectory: report.trajectory.clone(),
                },
            };
            println!("{}", serde_json::to_string(&doc).expect("serializes"));
        }
    }
    Ok(0)
}

fn emit_census_summary(
    census: &GeodesicCensus,
    report: &fgprim_core::hyperbolic::ComparabilityReport,
    fit: Option<&QuadraticFit>,
) {
    eprintln!(
        "geodesics: {}  n_max: {}  L_max: {:.9}  ({})",
        census.entries.len(),
        census.n_max,
        census.l_max,
        fgprim_core::hyperbolic::COUNTING_CONVENTION
    );
    match fit {
        Some(f) => eprintln!(
            "quadratic_fit: exponent {:.4} over [{:.3}, {:.3}] ({} points; census complete below {:.3})",
            f.exponent, f.window.0, f.window.1, f.points, f.complete_bound
        ),
        None => eprintln!("quadratic_fit: unavailable (too few complete-window points)"),
    }
    eprintln!(
        "comparability: length/word-length in [{:.6}, {:.6}], C_emp {:.6}",
        report.min_ratio, report.max_ratio, report.c_emp
    );
}
