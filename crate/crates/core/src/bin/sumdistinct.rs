use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sumdistinct::cactus::recognize;
use sumdistinct::cli::{
    read_graph, run_classify, run_crosscheck, run_generate, run_verify, ClassifyOptions, CrosscheckFamily,
    GenerateRequest, EXIT_INPUT,
};
use sumdistinct::graph::{to_dot, to_edge_list, Family};
use sumdistinct::parity::{f_factor_mod2, ParityTarget};
use sumdistinct::trees::StatusLabel;
use sumdistinct::weighting::{WeightPair, DEFAULT_EDGE_BUDGET};

#[derive(Parser)]
#[command(
    name = "sumdistinct",
    version,
    about = "Neighbour sum-distinguishing edge-weightings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph has a proper {a,b}-weighting.
    Classify {
        /// Edge-list file; stdin when absent.
        input: Option<String>,
        #[arg(long, default_value = "0,1", value_parser = parse_pair)]
        pair: WeightPair,
        /// Largest number of edge copies the exhaustive search will take.
        #[arg(long, default_value_t = DEFAULT_EDGE_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check a weighting for conflicts.
    Verify {
        graph: String,
        weighting: String,
        /// Comma-separated increment per vertex.
        #[arg(long)]
        increments: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print a graph in edge-list form.
    Generate {
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        m: usize,
        /// Cycles in a random odd multi-cactus.
        #[arg(long, default_value_t = 2)]
        cycles: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Construction in s-expression form.
        #[arg(long, conflicts_with = "family")]
        spec: Option<String>,
        /// Expected class of the construction: bad, minus, or `a,b`.
        #[arg(long, requires = "spec", value_parser = parse_label)]
        expect: Option<StatusLabel>,
        #[arg(long)]
        dot: bool,
    },
    /// Edge set whose degrees have the requested parities.
    Factor {
        input: Option<String>,
        /// Comma-separated vertices that should get odd degree.
        #[arg(long, default_value = "")]
        odd: String,
    },
    /// Odd multi-cactus test with certificate.
    Recognize { input: Option<String> },
    /// Compare the polynomial procedures against exhaustive search.
    Crosscheck {
        #[arg(long, value_enum)]
        family: CrossFamily,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 18)]
        max_copies: usize,
        #[arg(long, default_value_t = DEFAULT_EDGE_BUDGET)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Path,
    Cycle,
    Star,
    Tree,
    Bridgeless,
    Lu,
    Cactus,
}

#[derive(Clone, Copy, ValueEnum)]
enum CrossFamily {
    Trees,
    Bridgeless,
    Recipes,
}

fn parse_pair(s: &str) -> Result<WeightPair, String> {
    let (a, b) = s.split_once(',').ok_or("expected `a,b`")?;
    let a = a.trim().parse().map_err(|_| format!("bad weight `{a}`"))?;
    let b = b.trim().parse().map_err(|_| format!("bad weight `{b}`"))?;
    WeightPair::new(a, b).map_err(|e| e.to_string())
}

fn parse_label(s: &str) -> Result<StatusLabel, String> {
    match s {
        "bad" => Ok(StatusLabel::Bad),
        "minus" => Ok(StatusLabel::GvMinus),
        _ => {
            let (a, b) = s.split_once(',').ok_or("expected bad, minus or `a,b`")?;
            let num = |x: &str| x.trim().parse::<i64>().map_err(|_| format!("bad number `{x}`"));
            Ok(StatusLabel::GvPair(num(a)?, num(b)?))
        }
    }
}

fn read_input(path: Option<&str>) -> Result<String, String> {
    match path {
        Some(p) if p != "-" => std::fs::read_to_string(p).map_err(|e| format!("{p}: {e}")),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
            Ok(s)
        }
    }
}

fn numbers<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse().map_err(|_| format!("bad number `{x}`")))
        .collect()
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Classify {
            input,
            pair,
            budget,
            seed,
            json: as_json,
        } => {
            let g = read_graph(&read_input(input.as_deref())?)?;
            let opts = ClassifyOptions {
                budget,
                seed,
                ..Default::default()
            };
            let v = run_classify(&g, pair, &opts);
            print!("{}", if as_json { json(&v) + "\n" } else { v.to_record() });
            Ok(v.exit_code())
        }
        Command::Verify {
            graph,
            weighting,
            increments,
            json: as_json,
        } => {
            let g = read_graph(&read_input(Some(&graph))?)?;
            let w = read_input(Some(&weighting))?;
            let inc = increments.as_deref().map(numbers).transpose()?;
            let r = run_verify(&g, &w, inc).map_err(|e| e.to_string())?;
            if as_json {
                println!("{}", json(&r));
            } else {
                println!("proper: {}", if r.conflicts.is_empty() { "yes" } else { "no" });
                for (u, v) in &r.conflicts {
                    println!("conflict: {u} {v}");
                }
            }
            Ok(r.exit_code())
        }
        Command::Generate {
            family,
            n,
            m,
            cycles,
            seed,
            spec,
            expect,
            dot,
        } => {
            let req = match (spec, family) {
                (Some(text), _) => GenerateRequest::Spec { text, expect },
                (None, Some(f)) => match f {
                    FamilyArg::Path => GenerateRequest::Family(Family::Path(n)),
                    FamilyArg::Cycle => GenerateRequest::Family(Family::Cycle(n)),
                    FamilyArg::Star => GenerateRequest::Family(Family::Star(n)),
                    FamilyArg::Tree => GenerateRequest::Family(Family::RandomTree { n, seed }),
                    FamilyArg::Bridgeless => GenerateRequest::Family(Family::RandomBridgelessBipartite { n, m, seed }),
                    FamilyArg::Lu => GenerateRequest::Family(Family::LuExample),
                    FamilyArg::Cactus => GenerateRequest::Cactus {
                        cycles,
                        max_multiplicity: 3,
                        seed,
                    },
                },
                (None, None) => return Err("give --family or --spec".into()),
            };
            let g = run_generate(&req).map_err(|e| e.to_string())?;
            print!("{}", if dot { to_dot(&g) } else { to_edge_list(&g) });
            Ok(0)
        }
        Command::Factor { input, odd } => {
            let g = read_graph(&read_input(input.as_deref())?)?;
            let odd: Vec<usize> = numbers(&odd)?;
            if let Some(&v) = odd.iter().find(|&&v| v >= g.n()) {
                return Err(format!("no vertex {v}"));
            }
            let target = ParityTarget::from_fn(g.n(), |v| odd.contains(&v));
            let f = f_factor_mod2(&g, &target).map_err(|e| e.to_string())?;
            for c in f.iter() {
                let (u, v) = g.endpoints(c);
                println!("{u} {v} {}", c.copy);
            }
            Ok(0)
        }
        Command::Recognize { input } => {
            let g = read_graph(&read_input(input.as_deref())?)?;
            match recognize(&g) {
                Some(cert) => {
                    print!("{}", cert.to_text());
                    Ok(0)
                }
                None => {
                    println!("not an odd multi-cactus");
                    Ok(1)
                }
            }
        }
        Command::Crosscheck {
            family,
            max_n,
            seeds,
            max_copies,
            budget,
            json: as_json,
        } => {
            let fam = match family {
                CrossFamily::Trees => {
                    if max_n == 0 || max_n > sumdistinct::trees::MAX_ENUMERATED_ORDER {
                        return Err(format!(
                            "--max-n must be in 1..={}",
                            sumdistinct::trees::MAX_ENUMERATED_ORDER
                        ));
                    }
                    CrosscheckFamily::Trees { max_n }
                }
                CrossFamily::Bridgeless => CrosscheckFamily::Bridgeless { seeds, max_copies },
                CrossFamily::Recipes => CrosscheckFamily::Recipes { seeds },
            };
            let r = run_crosscheck(&fam, budget);
            if as_json {
                println!("{}", json(&r));
            } else {
                println!(
                    "family: {}\ninstances: {}\nagreements: {}",
                    r.family, r.instances, r.agreements
                );
                for d in &r.disagreements {
                    println!("disagreement: {d}");
                }
            }
            Ok(r.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
