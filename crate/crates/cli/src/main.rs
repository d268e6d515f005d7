use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cyclic_mackey::bredon::oracle_table;
use cyclic_mackey::cohomology::mackey_table;
use cyclic_mackey::error::{Error, Result};
use cyclic_mackey::picard::{pic_structure_string, rep_to_pic, PicCoord, VirtualRep};
use cyclic_mackey::stratcomb::{gluing_index, FiniteGroup};
use cyclic_mackey::verify::{run_suite, Suite};

/// Picard-graded equivariant cohomology of a point for cyclic p-groups.
#[derive(Parser)]
#[command(name = "cyclic-mackey", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Group {
    /// An odd prime.
    #[arg(long, allow_negative_numbers = true)]
    p: u64,
    /// The group is C_{p^n}.
    #[arg(long)]
    n: u32,
}

#[derive(Args)]
struct Window {
    #[arg(long, default_value_t = -20, allow_negative_numbers = true)]
    imin: i64,
    #[arg(long, default_value_t = 20, allow_negative_numbers = true)]
    imax: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Structure of the Picard group.
    Pic {
        #[command(flatten)]
        group: Group,
    },
    /// Picard coordinates of a virtual representation sphere.
    Rep2pic {
        #[command(flatten)]
        group: Group,
        /// e.g. "triv*2, rho(1)*-1"
        #[arg(long)]
        rep: String,
    },
    /// Values, inclusions and transfers in a degree window.
    Cohomology {
        #[command(flatten)]
        group: Group,
        /// "b0,…,bn;g1,…,gn"
        #[arg(long, conflicts_with = "rep", required_unless_present = "rep", allow_hyphen_values = true)]
        pic: Option<String>,
        #[arg(long)]
        rep: Option<String>,
        /// Use the inverse of the representation's Picard element.
        #[arg(long, requires = "rep")]
        negate: bool,
        #[command(flatten)]
        window: Window,
        #[arg(long)]
        json: bool,
    },
    /// Orbit-space cohomology of a representation sphere, computed cellularly.
    Oracle {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        rep: String,
        #[command(flatten)]
        window: Window,
    },
    /// Gluing index data for a pair of subgroups H ⊆ K.
    Strat {
        /// Cn, Sn, An, Dn, or generators in cycle notation separated by ';'
        #[arg(long)]
        group: String,
        /// "e", "G", or generators
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
    },
    /// Run acceptance checks.
    Verify {
        #[arg(long, value_parser = ["catalog", "tate", "unit", "oracle", "stratcomb", "all"])]
        suite: String,
    },
}

fn odd_prime(g: &Group) -> Result<()> {
    if g.p == 2 {
        return Err(Error::EvenPrime);
    }
    if g.p < 2 || !(2..g.p).take_while(|d| d * d <= g.p).all(|d| !g.p.is_multiple_of(d)) {
        return Err(Error::InvalidArgument(format!("p = {} is not a prime", g.p)));
    }
    Ok(())
}

fn window(w: &Window) -> Result<(i64, i64)> {
    if w.imin > w.imax {
        return Err(Error::InvalidArgument(format!("empty window {}..={}", w.imin, w.imax)));
    }
    Ok((w.imin, w.imax))
}

fn run(cmd: Command, out: &mut String) -> Result<bool> {
    match cmd {
        Command::Pic { group } => {
            odd_prime(&group)?;
            writeln!(out, "{}", pic_structure_string(group.p, group.n)?).unwrap();
        }
        Command::Rep2pic { group, rep } => {
            odd_prime(&group)?;
            let v: VirtualRep = rep.parse()?;
            writeln!(out, "{}", rep_to_pic(group.p, group.n, &v)?).unwrap();
        }
        Command::Cohomology { group, pic, rep, negate, window: w, json } => {
            odd_prime(&group)?;
            let w = window(&w)?;
            let coords = match (pic, rep) {
                (Some(s), _) => PicCoord::parse(group.p, group.n, &s)?,
                (None, Some(s)) => {
                    let c = rep_to_pic(group.p, group.n, &s.parse()?)?;
                    if negate {
                        c.neg()
                    } else {
                        c
                    }
                }
                (None, None) => unreachable!("clap requires one of --pic and --rep"),
            };
            let table = mackey_table(&coords, w)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&table.to_json()).expect("JSON values serialize")).unwrap();
            } else {
                out.push_str(&table.render());
            }
        }
        Command::Oracle { group, rep, window: w } => {
            odd_prime(&group)?;
            let w = window(&w)?;
            let v: VirtualRep = rep.parse()?;
            let t = oracle_table(group.p, group.n, &v, w)?;
            writeln!(out, "p = {}, n = {}, V = {v}, degrees {}..={}", group.p, group.n, w.0, w.1).unwrap();
            for (a, values) in t.values.iter().enumerate() {
                writeln!(out, "level a = {a}").unwrap();
                for (i, g) in values {
                    let mut line = format!("  i = {i:>4}: {g}");
                    if let Some((_, h)) = t.inc.get(a).and_then(|m| m.iter().find(|(j, _)| j == i)) {
                        if !h.src.is_zero() || !h.dst.is_zero() {
                            line.push_str(&format!("   inc from a={}: {}", a + 1, h.describe()));
                        }
                    }
                    writeln!(out, "{line}").unwrap();
                }
            }
        }
        Command::Strat { group, h, k } => {
            let g = FiniteGroup::parse(&group)?;
            let (h, k) = (g.parse_subgroup(&h)?, g.parse_subgroup(&k)?);
            if !FiniteGroup::is_subset(&h, &k) {
                return Err(Error::InvalidArgument("H must be contained in K".into()));
            }
            let data = gluing_index(&g, &h, &k);
            writeln!(out, "G of order {}, |H| = {}, |K| = {}: {} summand(s)", g.order(), h.len(), k.len(), data.len()).unwrap();
            for d in data {
                writeln!(out, "  {d}").unwrap();
            }
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let reports = run_suite(suite);
            for r in &reports {
                writeln!(out, "{r}").unwrap();
            }
            return Ok(reports.iter().all(|r| r.passed));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("CYCLIC_MACKEY_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Ignored if the global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let mut out = String::new();
    let outcome = run(cli.command, &mut out);
    // A closed pipe on stdout is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::EvenPrime | Error::InvalidArgument(_) | Error::Parse(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
