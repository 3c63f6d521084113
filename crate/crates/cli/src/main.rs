//! Batch front-end: seed reports, quasigap dumps, factorizations, oracle
//! verification and scaling benchmarks over generated input families.
//!
//! Positions in all output are 1-based; the library itself is 0-based.

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use seedex::factorization::{lpnf, Factorization};
use seedex::families::{generate, Family};
use seedex::quasigap_core::brute_quasigaps;
use seedex::seed_solver::is_seed;
use seedex::{Analysis, Metrics, QuasigapValue, Text};

#[derive(Parser)]
#[command(name = "seedex", version, about = "Seeds, covers and quasigaps of a text")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Input decoding: raw bytes, or whitespace-separated integer tokens.
    #[arg(long, global = true, value_enum, default_value_t = Alphabet::Bytes)]
    alphabet: Alphabet,

    /// Seed for the randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Keep a trailing newline instead of stripping it from the input.
    #[arg(long, global = true)]
    keep_trailing_newline: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print every seed, grouped as per-edge length ranges.
    Seeds {
        /// Input file, or `-` for stdin.
        input: String,
        /// Also print each seed word.
        #[arg(long)]
        enumerate: bool,
        /// Stop enumerating after this many words (implies --enumerate).
        #[arg(long, value_name = "K")]
        max_count: Option<usize>,
    },
    /// Print one shortest seed.
    ShortestSeed { input: String },
    /// Dump the quasigap of every explicit suffix-tree node.
    Quasigaps { input: String },
    /// Print the f-factorization and the LPnF table.
    Factorize { input: String },
    /// Check the fast path against brute force; sizes are guarded.
    Verify { input: String },
    /// Time the analysis over a generated family and report operation counts.
    Bench {
        /// Sizes as `2^14..2^22` (doubling), a single size, or a comma list.
        #[arg(long)]
        sizes: String,
        /// random | fibonacci | thue-morse | periodic
        #[arg(long)]
        family: String,
        /// Timed repetitions per size; the fastest one is reported.
        #[arg(long, default_value_t = 1)]
        reps: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alphabet {
    Bytes,
    Tokens,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Seeds {
            input,
            enumerate,
            max_count,
        } => {
            let w = read_input(input, cli)?;
            let cap = max_count.unwrap_or(usize::MAX);
            cmd_seeds(&w, cli, *enumerate || max_count.is_some(), cap)
        }
        Command::ShortestSeed { input } => cmd_shortest(&read_input(input, cli)?, cli),
        Command::Quasigaps { input } => cmd_quasigaps(&read_input(input, cli)?, cli),
        Command::Factorize { input } => cmd_factorize(&read_input(input, cli)?, cli),
        Command::Verify { input } => cmd_verify(&read_input(input, cli)?),
        Command::Bench {
            sizes,
            family,
            reps,
        } => cmd_bench(sizes, family, *reps, cli),
    }
}

fn read_input(path: &str, cli: &Cli) -> Result<Vec<u32>> {
    let mut bytes = if path == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).context("reading stdin")?;
        buf
    } else {
        fs::read(path).with_context(|| format!("reading {path}"))?
    };
    if !cli.keep_trailing_newline && bytes.last() == Some(&b'\n') {
        bytes.pop();
        if bytes.last() == Some(&b'\r') {
            bytes.pop();
        }
    }
    let symbols: Vec<u32> = match cli.alphabet {
        Alphabet::Bytes => bytes.iter().map(|&b| u32::from(b)).collect(),
        Alphabet::Tokens => {
            let text = std::str::from_utf8(&bytes).context("token input is not UTF-8")?;
            text.split_whitespace()
                .map(|t| t.parse::<u32>().with_context(|| format!("bad token {t:?}")))
                .collect::<Result<_>>()?
        }
    };
    ensure!(!symbols.is_empty(), "empty input");
    Ok(symbols)
}

/// Printable rendering of a word; non-ASCII symbols show as `.` in bytes
/// mode and as plain integers in tokens mode.
fn show_word(w: &[u32], alphabet: Alphabet) -> String {
    match alphabet {
        Alphabet::Bytes => w
            .iter()
            .map(|&c| match u8::try_from(c) {
                Ok(b) if (0x20..0x7f).contains(&b) => char::from(b),
                _ => '.',
            })
            .collect(),
        Alphabet::Tokens => {
            let parts: Vec<String> = w.iter().map(u32::to_string).collect();
            parts.join(" ")
        }
    }
}

fn seeds_json(set: &seedex::SeedSet) -> Vec<serde_json::Value> {
    set.ranges
        .iter()
        .map(|r| {
            json!({
                "edgeNode": r.edge_node,
                "pos": r.pos + 1,
                "lo": r.lo,
                "hi": r.hi,
            })
        })
        .collect()
}

fn cmd_seeds(w: &[u32], cli: &Cli, enumerate: bool, cap: usize) -> Result<u8> {
    let a = Analysis::new(Text::new(w.to_vec())?);
    let set = a.all_seeds();
    let (spos, slen) = a.shortest_seed();
    if cli.format == Format::Json {
        let mut doc = json!({
            "n": w.len(),
            "seeds": seeds_json(&set),
            "shortest": { "pos": spos + 1, "len": slen },
        });
        if enumerate {
            let mut words = Vec::new();
            'outer: for r in &set.ranges {
                for len in r.lo..=r.hi {
                    if words.len() == cap {
                        break 'outer;
                    }
                    words.push(json!(&w[r.pos..r.pos + len]));
                }
            }
            doc["words"] = json!(words);
        }
        println!("{doc}");
        return Ok(0);
    }

    let out = io::stdout().lock();
    let mut out = BufWriter::new(out);
    writeln!(
        out,
        "n {}, {} seeds in {} ranges",
        w.len(),
        set.word_count(),
        set.ranges.len()
    )?;
    let mut left = cap;
    for r in &set.ranges {
        writeln!(
            out,
            "node {} pos {} len {}..{}",
            r.edge_node,
            r.pos + 1,
            r.lo,
            r.hi
        )?;
        if enumerate {
            for len in r.lo..=r.hi {
                if left == 0 {
                    break;
                }
                writeln!(out, "  {}", show_word(&w[r.pos..r.pos + len], cli.alphabet))?;
                left -= 1;
            }
        }
    }
    if enumerate && left == 0 && set.word_count() > cap {
        writeln!(out, "  ... {} more not shown", set.word_count() - cap)?;
    }
    Ok(0)
}

fn cmd_shortest(w: &[u32], cli: &Cli) -> Result<u8> {
    let a = Analysis::new(Text::new(w.to_vec())?);
    let (pos, len) = a.shortest_seed();
    let word = a.seed_word(pos, len).to_vec();
    if cli.format == Format::Json {
        let doc = json!({
            "n": w.len(),
            "shortest": { "pos": pos + 1, "len": len },
            "word": word,
        });
        println!("{doc}");
    } else {
        println!("{}", show_word(&word, cli.alphabet));
        println!("length {}, position {}", len, pos + 1);
    }
    Ok(0)
}

fn cmd_quasigaps(w: &[u32], cli: &Cli) -> Result<u8> {
    let a = Analysis::new(Text::new(w.to_vec())?);
    let tree = a.tree();
    let qgs = a.quasigaps();
    if cli.format == Format::Json {
        let nodes: Vec<_> = (1..tree.node_count())
            .map(|v| {
                json!({
                    "node": v,
                    "parent": tree.parent(v),
                    "pos": tree.occ_first(v) + 1,
                    "minLen": tree.word_len(tree.parent(v)) + 1,
                    "maxLen": tree.word_len(v),
                    "quasigap": qgs[v].finite(),
                })
            })
            .collect();
        println!("{}", json!({ "n": w.len(), "nodes": nodes }));
        return Ok(0);
    }

    let out = io::stdout().lock();
    let mut out = BufWriter::new(out);
    writeln!(out, "n {}, {} nodes", w.len(), tree.node_count())?;
    for v in 1..tree.node_count() {
        let first = tree.occ_first(v);
        let wl = tree.word_len(v);
        let shown = wl.min(24);
        let mut word = show_word(&w[first..first + shown], cli.alphabet);
        if shown < wl {
            word.push_str("..");
        }
        let qg = match qgs[v] {
            QuasigapValue::Finite(q) => q.to_string(),
            QuasigapValue::Infinite => "inf".to_string(),
        };
        writeln!(
            out,
            "node {v} parent {} pos {} len {}..{} quasigap {qg} word {word}",
            tree.parent(v),
            first + 1,
            tree.word_len(tree.parent(v)) + 1,
            wl,
        )?;
    }
    Ok(0)
}

fn cmd_factorize(w: &[u32], cli: &Cli) -> Result<u8> {
    let fact = Factorization::new(w);
    let table = lpnf(w);
    if cli.format == Format::Json {
        let factors: Vec<_> = fact
            .factors()
            .iter()
            .map(|&(s, l)| json!({ "pos": s + 1, "len": l }))
            .collect();
        println!(
            "{}",
            json!({ "n": w.len(), "factors": factors, "lpnf": table })
        );
        return Ok(0);
    }
    println!("n {}, {} factors", w.len(), fact.count());
    for (k, &(s, l)) in fact.factors().iter().enumerate() {
        let (s, l) = (s as usize, l as usize);
        println!(
            "{}: pos {} len {} {}",
            k + 1,
            s + 1,
            l,
            show_word(&w[s..s + l.min(24)], cli.alphabet)
        );
    }
    let parts: Vec<String> = table.iter().map(u32::to_string).collect();
    println!("lpnf {}", parts.join(" "));
    Ok(0)
}

/// Full differential against the brute-force definitions when the input is
/// tiny, quasigap differential plus spot checks up to the guard size.
fn cmd_verify(w: &[u32]) -> Result<u8> {
    const GUARD: usize = 4096;
    const FULL_SEED_SET: usize = 128;
    let n = w.len();
    ensure!(
        n <= GUARD,
        "input of length {n} exceeds the verification guard ({GUARD})"
    );

    let a = Analysis::new(Text::new(w.to_vec())?);
    let mut ok = true;

    let mut scratch = Metrics::default();
    let want = brute_quasigaps(a.tree(), (0, n - 1), &mut scratch);
    match a.quasigaps().iter().zip(&want).position(|(x, y)| x != y) {
        None => println!("quasigaps: ok ({} nodes)", want.len()),
        Some(v) => {
            println!(
                "quasigaps: MISMATCH at node {v}: {:?} vs brute {:?}",
                a.quasigaps()[v],
                want[v]
            );
            ok = false;
        }
    }

    let set = a.all_seeds();
    if n <= FULL_SEED_SET {
        let mut mine = std::collections::BTreeSet::new();
        for r in &set.ranges {
            for len in r.lo..=r.hi {
                mine.insert(w[r.pos..r.pos + len].to_vec());
            }
        }
        let brute = seedex_oracle::all_seeds(w);
        if mine == brute {
            println!("seeds: ok ({} words)", brute.len());
        } else {
            let missing = brute.difference(&mine).count();
            let extra = mine.difference(&brute).count();
            println!("seeds: MISMATCH ({missing} missing, {extra} extra)");
            ok = false;
        }
    } else {
        // Spot-check a bounded sample of the reported ranges end to end.
        let step = (set.ranges.len() / 32).max(1);
        let mut checked = 0;
        for r in set.ranges.iter().step_by(step) {
            for len in [r.lo, r.hi] {
                if !is_seed(w, &w[r.pos..r.pos + len]) {
                    println!("seeds: MISMATCH, reported non-seed at pos {} len {len}", r.pos + 1);
                    ok = false;
                }
                checked += 1;
            }
        }
        println!("seeds: spot-checked {checked} of {} words", set.word_count());
    }

    println!("verify: {}", if ok { "ok" } else { "MISMATCH" });
    Ok(u8::from(!ok))
}

fn parse_size(s: &str) -> Result<usize> {
    if let Some((b, e)) = s.split_once('^') {
        let b: usize = b.trim().parse().context("bad size base")?;
        let e: u32 = e.trim().parse().context("bad size exponent")?;
        b.checked_pow(e).context("size overflows")
    } else {
        s.trim().parse().context("bad size")
    }
}

fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    let sizes = if let Some((a, b)) = s.split_once("..") {
        let (lo, hi) = (parse_size(a)?, parse_size(b)?);
        ensure!(2 <= lo && lo <= hi, "bad size range {s:?}");
        let mut v = Vec::new();
        let mut x = lo;
        while x <= hi {
            v.push(x);
            x *= 2;
        }
        v
    } else {
        s.split(',').map(parse_size).collect::<Result<_>>()?
    };
    ensure!(!sizes.is_empty(), "no sizes given");
    Ok(sizes)
}

fn cmd_bench(sizes: &str, family: &str, reps: usize, cli: &Cli) -> Result<u8> {
    let family = Family::parse(family)
        .with_context(|| format!("unknown family {family:?}, expected one of random, fibonacci, thue-morse, periodic"))?;
    let sizes = parse_sizes(sizes)?;
    ensure!(reps >= 1, "reps must be at least 1");

    // One untimed run soaks up allocator and page-cache warmup.
    drop(Analysis::new(Text::new(generate(family, sizes[0], cli.seed))?));

    let mut rows = Vec::new();
    for &n in &sizes {
        let w = generate(family, n, cli.seed);
        let mut best = f64::INFINITY;
        let mut last = None;
        for _ in 0..reps {
            let text = Text::new(w.clone())?;
            let t0 = Instant::now();
            let a = Analysis::new(text);
            best = best.min(t0.elapsed().as_secs_f64());
            last = Some(a);
        }
        let a = last.expect("reps >= 1");
        let m = a.metrics();
        let seeds = a.all_seeds().word_count();
        rows.push((n, best, m.update_bucket_ops, m.merge_ops, m.extract_ops, seeds));
    }

    if cli.format == Format::Json {
        let rows: Vec<_> = rows
            .iter()
            .map(|&(n, secs, ub, mg, ex, seeds)| {
                json!({
                    "family": family.name(),
                    "n": n,
                    "seconds": secs,
                    "updateBucketOps": ub,
                    "mergeOps": mg,
                    "extractOps": ex,
                    "seeds": seeds,
                })
            })
            .collect();
        println!("{}", json!({ "rows": rows }));
    } else {
        for &(n, secs, ub, mg, ex, seeds) in &rows {
            println!(
                "{} n={n} seconds={secs:.6} update_bucket_ops={ub} merge_ops={mg} extract_ops={ex} seeds={seeds}",
                family.name()
            );
        }
    }
    Ok(0)
}
