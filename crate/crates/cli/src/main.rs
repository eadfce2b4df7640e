use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use cremona_lab::classifier::{self, ActionDescriptor, Registry, Resolved};
use cremona_lab::cohomology::h1;
use cremona_lab::geometry::{small_orbits_dp4, QuarticModel};
use cremona_lab::groups::{iso_type, subgroups};
use cremona_lab::lattice::{exceptional_classes, weyl_group, PicardLattice};
use cremona_lab::links::{reachable, ModelNode, OrbitOracle};
use cremona_lab::Error;

#[derive(Parser)]
#[command(name = "cremona-lab", version, about = "Linearizability verdicts for finite group actions on del Pezzo surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the action in a descriptor file.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Force a named strategy instead of the first one that applies.
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Run every built-in example and compare against the expected verdicts.
    Certify {
        #[arg(long)]
        json: bool,
    },
    /// Count exceptional classes and the Weyl group order for a degree.
    LatticeInfo {
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        json: bool,
    },
    /// H¹ of the Picard lattice for every subgroup of a lattice action.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Short orbits on a built-in explicit model.
    Orbits {
        #[arg(long)]
        example: String,
        #[arg(long)]
        json: bool,
    },
    /// Models reachable by links from a starting model.
    Links {
        #[arg(long)]
        start: String,
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List built-in descriptors, or print one as a template.
    Examples { name: Option<String> },
}

/// Input the user should fix; maps to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct BadInput(String);

fn bad_input(e: Error) -> anyhow::Error {
    match e {
        Error::MalformedDescriptor { .. } | Error::MissingOracleEntry(_) => BadInput(e.to_string()).into(),
        other => other.into(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(|e| BadInput(format!("{e:#}")).into())
}

fn load_descriptor(path: &Path) -> Result<ActionDescriptor> {
    ActionDescriptor::from_json(&read(path)?).map_err(bad_input)
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn classify(file: &Path, json: bool, strategy: Option<&str>) -> Result<ExitCode> {
    let d = load_descriptor(file)?;
    let (verdict, cert) = Registry::standard().classify(&d, strategy).map_err(bad_input)?;
    if json {
        print_json(&json!({ "verdict": verdict, "certificate": cert }))?;
    } else {
        println!("verdict: {verdict}");
        print!("{cert}");
    }
    Ok(ExitCode::SUCCESS)
}

fn certify(json: bool) -> Result<ExitCode> {
    let report = classifier::certify_suite();
    if json {
        print_json(&report)?;
    } else {
        println!("{report}");
    }
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn lattice_info(degree: i64, json: bool) -> Result<ExitCode> {
    let lat = PicardLattice::del_pezzo(degree).map_err(|e| BadInput(e.to_string()))?;
    let classes = exceptional_classes(&lat).len();
    let weyl = weyl_group(&lat).ok().map(|w| (w.group.order(), iso_type(&w.group)));
    if json {
        print_json(&json!({
            "degree": degree,
            "classes": classes,
            "weyl_order": weyl.as_ref().map(|w| w.0),
            "weyl_type": weyl.as_ref().map(|w| w.1.to_string()),
        }))?;
    } else {
        match weyl {
            Some((order, _)) => println!("classes: {classes}, weyl_order: {order}"),
            None => println!("classes: {classes}, weyl_order: n/a"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cohomology(file: &Path, json: bool) -> Result<ExitCode> {
    let d = load_descriptor(file)?;
    let Resolved::Lattice { action, .. } = d.resolve().map_err(bad_input)? else {
        return Err(BadInput("malformed descriptor at `kind`: cohomology needs a del_pezzo_lattice descriptor".into()).into());
    };
    let mut rows = Vec::new();
    for sub in subgroups(action.group(), None)? {
        let h = h1(&action.restrict(&sub))?;
        rows.push((sub.order(), iso_type(&sub).to_string(), h));
    }
    if json {
        let rows: Vec<_> = rows
            .iter()
            .map(|(o, t, h)| json!({ "order": o, "type": t, "h1": h }))
            .collect();
        print_json(&rows)?;
    } else {
        for (o, t, h) in &rows {
            println!("order {o:>4}  {t:<12} H1 = {h}");
        }
        let nonzero = rows.iter().filter(|r| !r.2.is_trivial()).count();
        println!("{} subgroups, {nonzero} with nonzero H1", rows.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn orbits(example: &str, json: bool) -> Result<ExitCode> {
    if example != "dp4" {
        return Err(BadInput(format!("malformed descriptor at `example`: unknown example `{example}` (known: dp4)")).into());
    }
    let found = small_orbits_dp4(&QuarticModel::standard(), 3)?;
    let show = |o: &Vec<_>| -> Vec<String> {
        o.iter()
            .map(|p: &Vec<_>| {
                let cs: Vec<String> = p.iter().map(ToString::to_string).collect();
                format!("({})", cs.join(":"))
            })
            .collect()
    };
    let of_len = |n: usize| -> Vec<Vec<String>> { found.iter().filter(|o| o.len() == n).map(show).collect() };
    if json {
        print_json(&json!({ "len1": of_len(1), "len2": of_len(2), "len3": of_len(3) }))?;
        return Ok(ExitCode::SUCCESS);
    }
    let line = |n: usize| {
        let os = of_len(n);
        match os.len() {
            0 => "none".to_string(),
            1 => format!("one orbit {}", os[0].join(" ")),
            k => format!(
                "{k} orbits {}",
                os.iter().map(|o| o.join(" ")).collect::<Vec<_>>().join("; ")
            ),
        }
    };
    let fixed = of_len(1);
    println!("fixed: {}", if fixed.is_empty() { "none".into() } else { fixed.concat().join(" ") });
    println!("len2: {}", line(2));
    println!("len3: {}", line(3));
    Ok(ExitCode::SUCCESS)
}

fn links(start: &str, oracle: &Path, json: bool) -> Result<ExitCode> {
    let start: ModelNode = start.parse().map_err(bad_input)?;
    let oracle = OrbitOracle::from_json(&read(oracle)?).map_err(bad_input)?;
    let set = reachable(start, &oracle).map_err(bad_input)?;
    let names: Vec<String> = set.iter().map(ToString::to_string).collect();
    let plane = set.contains(&ModelNode::ProjectivePlane);
    if json {
        print_json(&json!({ "start": start, "reachable": names, "plane_reachable": plane }))?;
    } else {
        println!("reachable: {}", names.join(", "));
        println!("plane reachable: {plane}");
    }
    Ok(ExitCode::SUCCESS)
}

fn examples(name: Option<&str>) -> Result<ExitCode> {
    match name {
        Some(n) => {
            let text = classifier::builtin_text(n)
                .ok_or_else(|| BadInput(format!("malformed descriptor at `name`: no built-in example `{n}`")))?;
            print!("{text}");
        }
        None => {
            for d in classifier::builtin_examples() {
                println!("{:<14} {}", d.name, d.summary);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify { file, json, strategy } => classify(&file, json, strategy.as_deref()),
        Command::Certify { json } => certify(json),
        Command::LatticeInfo { degree, json } => lattice_info(degree, json),
        Command::Cohomology { file, json } => cohomology(&file, json),
        Command::Orbits { example, json } => orbits(&example, json),
        Command::Links { start, oracle, json } => links(&start, &oracle, json),
        Command::Examples { name } => examples(name.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if e.is::<BadInput>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
