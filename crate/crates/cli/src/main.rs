//! Command-line surface for the nonrep library.
//!
//! Exit codes: 0 success, 1 domain verdict against the input (a repetition
//! witness, an unsatisfiable search, an illegal event, a refuted palette),
//! 2 usage or input errors. Primary output is line-delimited JSON on stdout;
//! human-oriented notes go to stderr.

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use nonrep::adversary::{self, GameOutcome, PathSolver};
use nonrep::engine::{EngineError, OracleMode, Session, SessionConfig, Trace};
use nonrep::graph::{
    coloring_from_jsonl, graph_from_jsonl, GameEvent, GameScript, GraphClassRule, VertexId,
};
use nonrep::listgame::{AdversarySource, ListSolver, PainterStrategy};
use nonrep::palette::{precompute, FrozenPalette, PaletteError, PaletteTarget, Verification};
use nonrep::repetition::{self, Digraph, RepetitionWitness, RootedTree};
use nonrep::sequences;
use nonrep::universal;

#[derive(Parser)]
#[command(name = "nonrep", version, about = "Online nonrepetitive graph coloring toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the square-free ternary word prefix, one symbol per line.
    Thue {
        #[arg(long)]
        n: usize,
    },
    /// Check a colored graph for repetitively colored paths.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        colors: PathBuf,
        /// full, vertical or directed. Vertical needs --root on undirected
        /// trees; on a directed dump it means the stored orientation.
        #[arg(long, default_value = "full")]
        mode: String,
        #[arg(long)]
        max_half: Option<usize>,
        #[arg(long)]
        root: Option<VertexId>,
        /// Vertex budget for unbounded checks.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Search for a frozen palette of a universal graph and persist it.
    Precompute {
        /// O or U.
        #[arg(long)]
        target: String,
        #[arg(long)]
        k: Option<u8>,
        #[arg(long)]
        palette: u32,
        #[arg(long)]
        horizon: u32,
        /// full, vertical-full, bounded:L or sampled:COUNT:MAXHALF:SEED.
        #[arg(long)]
        verify: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Dump a universal graph stage as a graph file plus id sidecar.
    Dump {
        /// O or U.
        #[arg(long)]
        target: String,
        #[arg(long)]
        k: Option<u8>,
        #[arg(long)]
        stage: u32,
        /// Emit height-directed arcs instead of undirected edges (O only).
        #[arg(long)]
        directed: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Color an online game, one color per event.
    Play {
        #[arg(long)]
        class: String,
        #[arg(long)]
        k: Option<u8>,
        /// frozen:FILE or lazy:N.
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        script: Option<PathBuf>,
        /// Read events from stdin, answering immediately.
        #[arg(long)]
        interactive: bool,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        no_self_check: bool,
    },
    /// Replay a script file and write the full trace.
    Replay {
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        no_self_check: bool,
    },
    /// Solve the adversarial path game exactly.
    GameSearch {
        #[arg(long)]
        palette: u32,
        #[arg(long)]
        max_plies: u32,
        #[arg(long)]
        left_to_right: bool,
        #[arg(long)]
        strategy_out: Option<PathBuf>,
        #[arg(long)]
        node_cap: Option<usize>,
    },
    /// Solve the online list-coloring game exactly.
    ListGame {
        #[arg(long)]
        size: u32,
        #[arg(long)]
        max_plies: u32,
        #[arg(long)]
        node_cap: Option<usize>,
    },
    /// Play the list game against a seeded random adversary.
    ListPlay {
        /// greedy or lookahead:D.
        #[arg(long)]
        strategy: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 4)]
        size: u32,
        /// Color universe for the random adversary.
        #[arg(long)]
        universe: Option<u32>,
    },
    /// Exact minimum palette size by exhaustive search.
    MinColors {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "full")]
        mode: String,
        #[arg(long)]
        root: Option<VertexId>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Generate seeded random game scripts.
    Corpus {
        #[arg(long)]
        class: String,
        #[arg(long)]
        k: Option<u8>,
        #[arg(long)]
        count: u32,
        #[arg(long)]
        length: u32,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        palette: u32,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Thue { n } => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            let mut out = String::new();
            for s in sequences::thue_ternary(n) {
                out.push_str(&s.to_string());
                out.push('\n');
            }
            print!("{out}");
            Ok(0)
        }
        Command::Verify { graph, colors, mode, max_half, root, budget } => {
            cmd_verify(&graph, &colors, &mode, max_half, root, budget)
        }
        Command::Precompute { target, k, palette, horizon, verify, out } => {
            cmd_precompute(&target, k, palette, horizon, &verify, &out)
        }
        Command::Dump { target, k, stage, directed, out, sidecar } => {
            cmd_dump(&target, k, stage, directed, &out, sidecar.as_deref())
        }
        Command::Play { class, k, oracle, script, interactive, trace, no_self_check } => {
            let rule = parse_class(&class, k)?;
            let oracle = parse_oracle(&oracle)?;
            let config = SessionConfig { self_check: !no_self_check, ..Default::default() };
            match (script, interactive) {
                (Some(path), false) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let script = GameScript::from_jsonl(&text)?;
                    if script.rule != rule {
                        bail!(
                            "script is for class {}, not {}",
                            script.rule.class_name(),
                            rule.class_name()
                        );
                    }
                    cmd_play_script(&script, oracle, config, trace.as_deref())
                }
                (None, true) => cmd_play_interactive(rule, oracle, config, trace.as_deref()),
                _ => bail!("pass exactly one of --script FILE or --interactive"),
            }
        }
        Command::Replay { script, oracle, trace, no_self_check } => {
            let text = std::fs::read_to_string(&script)
                .with_context(|| format!("reading {}", script.display()))?;
            let script = GameScript::from_jsonl(&text)?;
            let oracle = parse_oracle(&oracle)?;
            let config = SessionConfig { self_check: !no_self_check, ..Default::default() };
            cmd_play_script(&script, oracle, config, trace.as_deref())
        }
        Command::GameSearch { palette, max_plies, left_to_right, strategy_out, node_cap } => {
            cmd_game_search(palette, max_plies, left_to_right, strategy_out.as_deref(), node_cap)
        }
        Command::ListGame { size, max_plies, node_cap } => cmd_list_game(size, max_plies, node_cap),
        Command::ListPlay { strategy, n, seed, size, universe } => {
            cmd_list_play(&strategy, n, seed, size, universe)
        }
        Command::MinColors { graph, mode, root, budget } => {
            cmd_min_colors(&graph, &mode, root, budget)
        }
        Command::Corpus { class, k, count, length, seed, palette, out_dir } => {
            cmd_corpus(&class, k, count, length, seed, palette, &out_dir)
        }
    }
}

fn parse_class(class: &str, k: Option<u8>) -> Result<GraphClassRule> {
    GraphClassRule::from_name(class, k).ok_or_else(|| {
        anyhow::anyhow!(
            "unknown class {class:?} (k = {k:?}); classes: left_to_right_path, path, tree, \
             cycle, series_parallel, partial_k_tree (needs --k), k_tree (needs --k)"
        )
    })
}

fn parse_oracle(text: &str) -> Result<OracleMode> {
    if let Some(n) = text.strip_prefix("lazy:") {
        let palette_size: u32 = n.parse().context("lazy palette size")?;
        if palette_size == 0 {
            bail!("lazy palette size must be positive");
        }
        return Ok(OracleMode::Lazy { palette_size });
    }
    if let Some(path) = text.strip_prefix("frozen:") {
        let content = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        eprintln!("verifying palette {path} at its declared level");
        let palette = FrozenPalette::from_text(&content)
            .map_err(|e| anyhow::anyhow!("palette {path}: {e}"))?;
        return Ok(OracleMode::Frozen(palette));
    }
    bail!("oracle must be frozen:FILE or lazy:N")
}

fn parse_verification(text: &str) -> Result<Verification> {
    match text {
        "full" => Ok(Verification::Full),
        "vertical-full" => Ok(Verification::VerticalFull),
        other => {
            if let Some(l) = other.strip_prefix("bounded:") {
                return Ok(Verification::Bounded(l.parse().context("bounded half length")?));
            }
            if let Some(rest) = other.strip_prefix("sampled:") {
                let parts: Vec<&str> = rest.split(':').collect();
                if parts.len() == 3 {
                    return Ok(Verification::Sampled {
                        samples: parts[0].parse().context("sample count")?,
                        max_half: parts[1].parse().context("sample max half")?,
                        seed: parts[2].parse().context("sample seed")?,
                    });
                }
            }
            bail!("verification must be full, vertical-full, bounded:L or sampled:N:L:SEED")
        }
    }
}

fn witness_json(w: &RepetitionWitness) -> String {
    let path: Vec<String> = w.path.iter().map(|v| v.to_string()).collect();
    format!(
        "{{\"witness\":{{\"path\":[{}],\"half_len\":{}}}}}",
        path.join(","),
        w.half_len
    )
}

fn cmd_verify(
    graph_path: &Path,
    colors_path: &Path,
    mode: &str,
    max_half: Option<usize>,
    root: Option<VertexId>,
    budget: Option<usize>,
) -> Result<i32> {
    let gtext = std::fs::read_to_string(graph_path)
        .with_context(|| format!("reading {}", graph_path.display()))?;
    let (g, arcs) = graph_from_jsonl(&gtext)?;
    let ctext = std::fs::read_to_string(colors_path)
        .with_context(|| format!("reading {}", colors_path.display()))?;
    let coloring = coloring_from_jsonl(&ctext)?;
    let budget = budget.unwrap_or(repetition::GENERAL_CHECK_BUDGET);
    let witness = match (mode, &arcs) {
        ("full", None) => repetition::check_graph_budgeted(&g, &coloring, max_half, budget)?,
        ("directed", Some(arcs)) | ("vertical", Some(arcs)) => {
            let mut d = Digraph::new();
            for v in g.vertices() {
                d.add_vertex(v);
            }
            for &(a, b) in arcs {
                d.add_arc(a, b);
            }
            repetition::check_directed_budgeted(&d, &coloring, max_half, budget)?
        }
        ("vertical", None) => {
            let root = root.ok_or_else(|| anyhow::anyhow!("--mode vertical needs --root"))?;
            let t = RootedTree::new(g.clone(), root)?;
            repetition::check_vertical(&t, &coloring)
        }
        ("full", Some(_)) => bail!("--mode full needs an undirected graph file"),
        ("directed", None) => bail!("--mode directed needs a directed graph file"),
        _ => bail!("unknown mode {mode:?}"),
    };
    match witness {
        Some(w) => {
            println!("{}", witness_json(&w));
            eprintln!("repetition found: half length {}", w.half_len);
            Ok(1)
        }
        None => {
            println!("{{\"verdict\":\"nonrepetitive\"}}");
            Ok(0)
        }
    }
}

fn parse_target(target: &str, k: Option<u8>) -> Result<PaletteTarget> {
    match (target, k) {
        ("O", None) => Ok(PaletteTarget::OPath),
        ("U", Some(k)) => Ok(PaletteTarget::UTree { k }),
        ("O", Some(_)) => bail!("target O takes no --k"),
        ("U", None) => bail!("target U needs --k"),
        _ => bail!("target must be O or U"),
    }
}

fn cmd_precompute(
    target: &str,
    k: Option<u8>,
    palette: u32,
    horizon: u32,
    verify: &str,
    out: &Path,
) -> Result<i32> {
    let target = parse_target(target, k)?;
    let verification = parse_verification(verify)?;
    match precompute(target, palette, horizon, verification) {
        Ok(frozen) => {
            std::fs::write(out, frozen.to_text())
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "{{\"written\":\"{}\",\"vertices\":{},\"palette\":{},\"horizon\":{}}}",
                out.display(),
                frozen.len(),
                frozen.palette_size,
                frozen.horizon
            );
            Ok(0)
        }
        Err(PaletteError::Unsatisfiable) => {
            println!("{{\"error\":\"unsatisfiable\"}}");
            eprintln!("no such coloring exists: the search space is exhausted");
            Ok(1)
        }
        Err(other) => Err(other.into()),
    }
}

fn cmd_dump(
    target: &str,
    k: Option<u8>,
    stage: u32,
    directed: bool,
    out: &Path,
    sidecar: Option<&Path>,
) -> Result<i32> {
    let target = parse_target(target, k)?;
    let (graph_text, sidecar_text) = match target {
        PaletteTarget::OPath => {
            let (g, ids) = universal::o_graph(stage);
            let graph_text = if directed {
                let mut d = Digraph::new();
                for v in g.vertices() {
                    d.add_vertex(v);
                }
                // Heights increase with the id numbering, so direct upward.
                for (a, b) in g.edges() {
                    d.add_arc(a.min(b), a.max(b));
                }
                d.to_jsonl()
            } else {
                nonrep::graph::graph_to_jsonl(&g)
            };
            let mut side = String::new();
            for (v, q) in &ids {
                side.push_str(&format!(
                    "{{\"node\":{},\"canon\":\"{}\"}}\n",
                    v,
                    q.canonical_string()
                ));
            }
            (graph_text, side)
        }
        PaletteTarget::UTree { k } => {
            if directed {
                bail!("--directed applies to target O only");
            }
            let (g, ids) = universal::u_graph(k, stage)?;
            let mut side = String::new();
            for (v, canon) in &ids {
                side.push_str(&format!(
                    "{{\"node\":{},\"canon\":\"{}\"}}\n",
                    v,
                    canon.canonical_string()
                ));
            }
            (nonrep::graph::graph_to_jsonl(&g), side)
        }
    };
    std::fs::write(out, &graph_text).with_context(|| format!("writing {}", out.display()))?;
    if let Some(side_path) = sidecar {
        std::fs::write(side_path, &sidecar_text)
            .with_context(|| format!("writing {}", side_path.display()))?;
    }
    println!("{{\"written\":\"{}\"}}", out.display());
    Ok(0)
}

fn report_engine_error(err: &EngineError) -> i32 {
    let kind = match err {
        EngineError::Violation(_) => "violation",
        EngineError::HorizonExceeded { .. } => "horizon_exceeded",
        EngineError::PaletteExhausted { .. } => "palette_exhausted",
        EngineError::SelfCheckFailed(_) => "self_check_failed",
        EngineError::IncompatibleOracle(_) => "incompatible_oracle",
        EngineError::SessionPoisoned => "session_poisoned",
    };
    println!("{{\"error\":\"{kind}\",\"detail\":\"{err}\"}}");
    eprintln!("{err}");
    1
}

fn write_trace(session: &Session, oracle_desc: &str, palette_size: u32, path: &Path) -> Result<()> {
    let trace = Trace {
        rule: session.rule(),
        palette_size,
        oracle_desc: oracle_desc.to_string(),
        g0: session.g0_colors().to_vec(),
        steps: session.steps().to_vec(),
    };
    std::fs::write(path, trace.to_jsonl()).with_context(|| format!("writing {}", path.display()))
}

fn cmd_play_script(
    script: &GameScript,
    oracle: OracleMode,
    config: SessionConfig,
    trace: Option<&Path>,
) -> Result<i32> {
    let oracle_desc = oracle.describe();
    let palette_size = oracle.palette_size();
    let mut session = match Session::start(script.rule, oracle, config) {
        Ok(s) => s,
        Err(err) => return Ok(report_engine_error(&err)),
    };
    for (v, c) in session.g0_colors().to_vec() {
        println!("{{\"init\":{v},\"color\":{c}}}");
    }
    for e in &script.events {
        match session.step(e) {
            Ok(color) => println!("{{\"v\":{},\"color\":{}}}", e.v, color),
            Err(err) => {
                let code = report_engine_error(&err);
                if let Some(path) = trace {
                    write_trace(&session, &oracle_desc, palette_size, path)?;
                }
                return Ok(code);
            }
        }
    }
    if let Some(path) = trace {
        write_trace(&session, &oracle_desc, palette_size, path)?;
    }
    eprintln!(
        "colored {} events; palette exhaustions: {}",
        script.events.len(),
        session.palette_exhausted_count()
    );
    Ok(0)
}

fn cmd_play_interactive(
    rule: GraphClassRule,
    oracle: OracleMode,
    config: SessionConfig,
    trace: Option<&Path>,
) -> Result<i32> {
    let oracle_desc = oracle.describe();
    let palette_size = oracle.palette_size();
    let mut session = match Session::start(rule, oracle, config) {
        Ok(s) => s,
        Err(err) => return Ok(report_engine_error(&err)),
    };
    let stdout = std::io::stdout();
    for (v, c) in session.g0_colors().to_vec() {
        let mut lock = stdout.lock();
        writeln!(lock, "{{\"init\":{v},\"color\":{c}}}")?;
        lock.flush()?;
    }
    let stdin = std::io::stdin();
    for line in stdin.lock().lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let event = parse_event_line(&line)?;
        match session.step(&event) {
            Ok(color) => {
                let mut lock = stdout.lock();
                writeln!(lock, "{{\"v\":{},\"color\":{}}}", event.v, color)?;
                lock.flush()?;
            }
            Err(err) => {
                let code = report_engine_error(&err);
                if let Some(path) = trace {
                    write_trace(&session, &oracle_desc, palette_size, path)?;
                }
                return Ok(code);
            }
        }
    }
    if let Some(path) = trace {
        write_trace(&session, &oracle_desc, palette_size, path)?;
    }
    Ok(0)
}

fn parse_event_line(line: &str) -> Result<GameEvent> {
    // Piggyback on the script parser: a one-event script under any class.
    let text = format!("{{\"class\":\"path\",\"k\":null,\"palette\":0}}\n{line}\n");
    let script = GameScript::from_jsonl(&text).context("event record")?;
    script
        .events
        .into_iter()
        .next()
        .ok_or_else(|| anyhow::anyhow!("empty event line"))
}

fn cmd_game_search(
    palette: u32,
    max_plies: u32,
    left_to_right: bool,
    strategy_out: Option<&Path>,
    node_cap: Option<usize>,
) -> Result<i32> {
    if palette == 0 {
        bail!("--palette must be positive");
    }
    let cap = node_cap.unwrap_or(adversary::DEFAULT_NODE_CAP);
    let mut solver = PathSolver::new(palette, left_to_right, cap);
    let outcome = solver.solve(max_plies);
    let (kind, depth) = match outcome {
        GameOutcome::AdversaryWins { depth } => ("adversary_wins", depth),
        GameOutcome::PainterSurvives { depth } => ("painter_survives", depth),
        GameOutcome::Inconclusive { completed_depth } => ("inconclusive", completed_depth),
    };
    println!(
        "{{\"outcome\":\"{kind}\",\"depth\":{depth},\"palette\":{palette},\"left_to_right\":{left_to_right},\"nodes\":{}}}",
        solver.nodes()
    );
    eprintln!("{outcome}; {} positions explored", solver.nodes());
    if let (GameOutcome::AdversaryWins { depth }, Some(path)) = (&outcome, strategy_out) {
        let strategy = solver
            .extract_strategy(*depth)
            .expect("winning outcomes yield a strategy");
        std::fs::write(path, strategy.to_jsonl())
            .with_context(|| format!("writing {}", path.display()))?;
        eprintln!("strategy with {} positions written to {}", strategy.moves.len(), path.display());
    }
    Ok(match outcome {
        GameOutcome::AdversaryWins { .. } => 1,
        _ => 0,
    })
}

fn cmd_list_game(size: u32, max_plies: u32, node_cap: Option<usize>) -> Result<i32> {
    if size == 0 {
        bail!("--size must be positive");
    }
    let cap = node_cap.unwrap_or(nonrep::listgame::DEFAULT_LIST_NODE_CAP);
    let mut solver = ListSolver::new(size, cap);
    let outcome = solver.solve(max_plies);
    let (kind, depth) = match outcome {
        GameOutcome::AdversaryWins { depth } => ("adversary_wins", depth),
        GameOutcome::PainterSurvives { depth } => ("painter_survives", depth),
        GameOutcome::Inconclusive { completed_depth } => ("inconclusive", completed_depth),
    };
    println!(
        "{{\"outcome\":\"{kind}\",\"depth\":{depth},\"size\":{size},\"nodes\":{}}}",
        solver.nodes()
    );
    eprintln!("{outcome}; {} positions explored", solver.nodes());
    Ok(match outcome {
        GameOutcome::AdversaryWins { .. } => 1,
        _ => 0,
    })
}

fn cmd_list_play(
    strategy: &str,
    n: u32,
    seed: Option<u64>,
    size: u32,
    universe: Option<u32>,
) -> Result<i32> {
    let painter = if strategy == "greedy" {
        PainterStrategy::Greedy
    } else if let Some(d) = strategy.strip_prefix("lookahead:") {
        PainterStrategy::Lookahead { depth: d.parse().context("lookahead depth")? }
    } else {
        bail!("strategy must be greedy or lookahead:D");
    };
    let seed = seed.unwrap_or_else(generate_seed);
    eprintln!("seed: {seed}");
    let universe = universe.unwrap_or(2 * size);
    let trace = nonrep::listgame::play_list_game(
        painter,
        AdversarySource::Random { universe, seed },
        size,
        n,
    );
    for (list, choice) in &trace.steps {
        let list_text: Vec<String> = list.iter().map(|c| c.to_string()).collect();
        match choice {
            Some(c) => println!("{{\"list\":[{}],\"color\":{}}}", list_text.join(","), c),
            None => println!("{{\"list\":[{}],\"color\":null}}", list_text.join(",")),
        }
    }
    match trace.died_at {
        Some(t) => {
            let (color, square) = trace.witness.expect("lost games carry a witness");
            println!(
                "{{\"died_at\":{t},\"seed\":{seed},\"witness\":{{\"tried\":{color},\"start\":{},\"half_len\":{}}}}}",
                square.start, square.half_len
            );
            Ok(1)
        }
        None => {
            println!("{{\"survived\":{n},\"seed\":{seed}}}");
            Ok(0)
        }
    }
}

fn cmd_min_colors(
    graph_path: &Path,
    mode: &str,
    root: Option<VertexId>,
    budget: Option<usize>,
) -> Result<i32> {
    let gtext = std::fs::read_to_string(graph_path)
        .with_context(|| format!("reading {}", graph_path.display()))?;
    let (g, arcs) = graph_from_jsonl(&gtext)?;
    let value = match (mode, &arcs) {
        ("full", None) => repetition::min_colors_budgeted(
            &g,
            budget.unwrap_or(repetition::MIN_COLORS_FULL_BUDGET),
        )?,
        ("vertical", Some(arcs)) | ("directed", Some(arcs)) => {
            let mut d = Digraph::new();
            for v in g.vertices() {
                d.add_vertex(v);
            }
            for &(a, b) in arcs {
                d.add_arc(a, b);
            }
            repetition::min_colors_directed_budgeted(
                &d,
                budget.unwrap_or(repetition::MIN_COLORS_VERTICAL_BUDGET),
            )?
        }
        ("vertical", None) => {
            let root = root.ok_or_else(|| anyhow::anyhow!("--mode vertical needs --root"))?;
            let t = RootedTree::new(g.clone(), root)?;
            repetition::min_colors_vertical_budgeted(
                &t,
                budget.unwrap_or(repetition::MIN_COLORS_VERTICAL_BUDGET),
            )?
        }
        ("full", Some(_)) => bail!("--mode full needs an undirected graph file"),
        ("directed", None) => bail!("--mode directed needs a directed graph file"),
        _ => bail!("unknown mode {mode:?}"),
    };
    println!("{{\"min_colors\":{value},\"mode\":\"{mode}\"}}");
    Ok(0)
}

fn generate_seed() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0x5eed)
}

fn cmd_corpus(
    class: &str,
    k: Option<u8>,
    count: u32,
    length: u32,
    seed: Option<u64>,
    palette: u32,
    out_dir: &Path,
) -> Result<i32> {
    let rule = parse_class(class, k)?;
    let seed = seed.unwrap_or_else(generate_seed);
    eprintln!("seed: {seed}");
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;
    for i in 0..count {
        let mut script = adversary::random_game(rule, length, seed.wrapping_add(i as u64));
        script.palette_size = palette;
        let path = out_dir.join(format!("script_{i:04}.jsonl"));
        std::fs::write(&path, script.to_jsonl())
            .with_context(|| format!("writing {}", path.display()))?;
        println!(
            "{{\"script\":\"{}\",\"events\":{},\"seed\":{}}}",
            path.display(),
            script.events.len(),
            seed.wrapping_add(i as u64)
        );
    }
    eprintln!("{count} scripts written to {}", out_dir.display());
    Ok(0)
}
