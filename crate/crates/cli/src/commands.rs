use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use stackgpa::gpa::{
    build_deterministic_gpa, build_sampled_gpa, sampling_bound_approx, GamePlayingAlgorithm, PrescribedSequenceGpa,
};
use stackgpa::hardness::{
    balanced_vertex_cover, cover_strategies, grid_audit_player3_with_budget, player3_audit, player3_threshold,
    reduce_graph, Graph, ThreePlayerGame, DEFAULT_GRID_BUDGET,
};
use stackgpa::oracle::DEFAULT_STATE_BUDGET;
use stackgpa::rational::int;
use stackgpa::{
    average_payoffs, external_regret, format_rational, simulate, stackelberg_lp, threat, verify_prescription,
    BimatrixGame, GpaRecord, MixedStrategy, Oracle, Rational, Side, Transcript, Verdict,
};

use crate::{Cli, Command, SideArg, VerificationFailed};

pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Threat { game } => cmd_threat(cli, &load_game(game)?),
        Command::Solve { game } => cmd_solve(cli, &load_game(game)?),
        Command::Build {
            game,
            horizon,
            sampled,
            seed,
            out,
        } => cmd_build(cli, &load_game(game)?, *horizon, sampled.then_some(*seed), out.as_deref()),
        Command::Evaluate {
            game,
            gpa,
            horizon,
            verify_only,
        } => cmd_evaluate(cli, &load_game(game)?, gpa, *horizon, *verify_only),
        Command::Simulate {
            game,
            leader,
            follower,
            horizon,
            seed,
            out,
        } => cmd_simulate(cli, &load_game(game)?, leader, follower.as_deref(), *horizon, *seed, out.as_deref()),
        Command::Regret { game, transcript, side } => cmd_regret(cli, &load_game(game)?, transcript, *side),
        Command::Reduce { graph, out } => cmd_reduce(cli, &load_graph(graph)?, out.as_deref()),
        Command::AuditVc {
            graph,
            resolution,
            c_exponent,
        } => cmd_audit_vc(cli, &load_graph(graph)?, *resolution, *c_exponent),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_game(path: &Path) -> Result<BimatrixGame> {
    BimatrixGame::from_json(&read(path)?).with_context(|| format!("in game file {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&read(path)?).with_context(|| format!("in graph file {}", path.display()))
}

fn load_record(path: &Path) -> Result<GpaRecord> {
    GpaRecord::from_json(&read(path)?).with_context(|| format!("in GPA file {}", path.display()))
}

fn fmt_list(values: &[Rational]) -> String {
    let items: Vec<String> = values.iter().map(format_rational).collect();
    format!("[{}]", items.join(", "))
}

fn json_out(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    text
}

fn oracle(cli: &Cli) -> Oracle {
    Oracle::new(cli.budget.map_or(DEFAULT_STATE_BUDGET, |b| b as usize))
}

fn cmd_threat(cli: &Cli, game: &BimatrixGame) -> Result<String> {
    let t = threat(game);
    if cli.json {
        return Ok(json_out(&json!({
            "threat_value": format_rational(&t.value),
            "strategy": t.strategy,
        })));
    }
    Ok(format!("V = {}, x* = {}\n", t.value, fmt_list(t.strategy.weights())))
}

fn cmd_solve(cli: &Cli, game: &BimatrixGame) -> Result<String> {
    let lp = stackelberg_lp(game);
    if cli.json {
        let alpha: Vec<Value> = lp
            .support(game)
            .map(|(pair, w)| json!({"pair": pair, "weight": format_rational(w)}))
            .collect();
        return Ok(json_out(&json!({
            "opt": format_rational(&lp.opt),
            "threat_value": format_rational(&lp.threat.value),
            "threat_strategy": lp.threat.strategy,
            "alpha": alpha,
        })));
    }
    let mut out = format!("OPT_LP = {}\nV = {}\nalpha:\n", lp.opt, lp.threat.value);
    for (pair, w) in lp.support(game) {
        writeln!(out, "  {pair}  {w}")?;
    }
    Ok(out)
}

fn cmd_build(cli: &Cli, game: &BimatrixGame, horizon: usize, sampled: Option<u64>, out: Option<&Path>) -> Result<String> {
    let (record, mut report, mut text) = match sampled {
        None => {
            let built = build_deterministic_gpa(game, horizon)?;
            let p = &built.params;
            let report = json!({
                "variant": "deterministic",
                "horizon": horizon,
                "cycle_length": p.cycle_length,
                "repetitions": p.repetitions,
                "remainder": p.remainder,
                "treat": built.treat,
                "opt": format_rational(&built.lp.opt),
                "bound": format_rational(&p.cycle_bound()),
                "remainder_bound": format_rational(&p.remainder_bound()),
            });
            let text = format!(
                "deterministic leader, T = {horizon}\nN = {}, c = {}, r = {}\ntreat pair {}\nOPT_LP = {}\nbound 2N/T = {} (2r/T = {})\n",
                p.cycle_length,
                p.repetitions,
                p.remainder,
                built.treat,
                built.lp.opt,
                p.cycle_bound(),
                p.remainder_bound()
            );
            (GpaRecord::from(&built.gpa), report, text)
        }
        Some(seed) => {
            let built = build_sampled_gpa(game, horizon, seed)?;
            let a = game.granularity();
            let approx = sampling_bound_approx(4, a, horizon);
            let report = json!({
                "variant": "sampled",
                "horizon": horizon,
                "seed": seed,
                "swaps": built.swaps,
                "degenerate": built.degenerate,
                "granularity": a.to_string(),
                "opt": format_rational(&built.lp.opt),
                "bound_approx": approx,
            });
            let text = format!(
                "sampled leader, T = {horizon}, seed {seed}\nswaps = {}{}\nOPT_LP = {}\nbound 4*sqrt(10A)/T^(1/4) ≈ {approx:.4} (A = {a}, approximate)\n",
                built.swaps,
                if built.degenerate { " (best follower pair every round)" } else { "" },
                built.lp.opt
            );
            (GpaRecord::from(&built.gpa), report, text)
        }
    };
    match out {
        Some(path) => {
            write(path, &(record.to_json() + "\n"))?;
            report["written"] = json!(path.display().to_string());
            writeln!(text, "wrote {}", path.display())?;
        }
        None => {
            report["gpa"] = serde_json::to_value(&record)?;
            writeln!(text, "{}", record.to_json())?;
        }
    }
    Ok(if cli.json { json_out(&report) } else { text })
}

/// The record's own horizon when it has one, checked against `--horizon`.
fn resolve_horizon(record: &GpaRecord, horizon: Option<usize>) -> Result<usize> {
    match (record, horizon) {
        (GpaRecord::Prescribed { prescription, .. } | GpaRecord::Obedient { prescription }, h) => match h {
            Some(h) if h != prescription.len() => {
                bail!("--horizon {h} disagrees with the prescription length {}", prescription.len())
            }
            _ => Ok(prescription.len()),
        },
        (_, Some(h)) if h >= 1 => Ok(h),
        (_, Some(_)) => bail!("the horizon must be at least 1"),
        (_, None) => bail!("--horizon is required for a {} GPA", record.kind()),
    }
}

fn require_side(record: &GpaRecord, side: Side, role: &str) -> Result<()> {
    if record.side() != side {
        bail!("the {role} file holds a {} GPA for the {:?} side", record.kind(), record.side());
    }
    Ok(())
}

fn cmd_evaluate(cli: &Cli, game: &BimatrixGame, path: &Path, horizon: Option<usize>, verify_only: bool) -> Result<String> {
    let record = load_record(path)?;
    require_side(&record, Side::Leader, "leader")?;
    let horizon = resolve_horizon(&record, horizon)?;
    let verdict = match &record {
        GpaRecord::Prescribed { prescription, threat } => {
            let threat = MixedStrategy::new(threat.weights().to_vec())?;
            let gpa = PrescribedSequenceGpa::new(game, prescription.clone(), threat)?;
            Some(verify_prescription(&gpa, game))
        }
        _ => None,
    };
    if let Some(Verdict::DeviationProfitableAt(round)) = verdict {
        let report = if cli.json {
            json_out(&json!({ "verification": verdict }))
        } else {
            format!("verdict: deviation profitable at round {round}\n")
        };
        return Err(VerificationFailed {
            reason: format!("the follower gains by leaving the prescription at round {round}"),
            report,
        }
        .into());
    }
    if verify_only {
        return match verdict {
            Some(v) if cli.json => Ok(json_out(&json!({ "verification": v }))),
            Some(_) => Ok("verdict: obeys\n".into()),
            None => bail!("--verify-only needs a prescribed leader, found {}", record.kind()),
        };
    }
    let leader = record.instantiate(game)?;
    let response = oracle(cli)
        .best_response(leader.as_ref(), game, horizon)
        .context("best response search failed")?;
    let opt = stackelberg_lp(game).opt;
    let gap = &opt - response.leader_average();
    if cli.json {
        return Ok(json_out(&json!({
            "verification": verdict,
            "leader_average": format_rational(&response.leader_average()),
            "follower_average": format_rational(&response.follower_average()),
            "opt": format_rational(&opt),
            "gap": format_rational(&gap),
            "best_response": serde_json::to_value(&response)?,
        })));
    }
    let mut out = String::new();
    if verdict.is_some() {
        writeln!(out, "verdict: obeys")?;
    }
    writeln!(out, "T = {horizon}")?;
    writeln!(out, "leader average = {}", response.leader_average())?;
    writeln!(out, "follower average = {}", response.follower_average())?;
    writeln!(out, "OPT_LP = {opt}")?;
    writeln!(out, "gap = {gap}")?;
    if let Some(path) = response.deterministic_path() {
        let pairs: Vec<String> = path.iter().map(ToString::to_string).collect();
        writeln!(out, "path: {}", pairs.join(" "))?;
    }
    Ok(out)
}

fn cmd_simulate(
    cli: &Cli,
    game: &BimatrixGame,
    leader_path: &Path,
    follower_path: Option<&Path>,
    horizon: Option<usize>,
    seed: u64,
    out: Option<&Path>,
) -> Result<String> {
    let leader_record = load_record(leader_path)?;
    require_side(&leader_record, Side::Leader, "leader")?;
    let horizon = resolve_horizon(&leader_record, horizon)?;
    let leader = leader_record.instantiate(game)?;
    let follower: Box<dyn GamePlayingAlgorithm> = match follower_path {
        Some(path) => {
            let record = load_record(path)?;
            require_side(&record, Side::Follower, "follower")?;
            Box::new(record.instantiate(game)?)
        }
        None => Box::new(
            oracle(cli)
                .best_response(leader.as_ref(), game, horizon)
                .context("best response search failed")?
                .lookup_table(),
        ),
    };
    let transcript = simulate(leader.as_ref(), follower.as_ref(), game, horizon, seed)?;
    let text = transcript.to_json() + "\n";
    if let Some(path) = out {
        write(path, &text)?;
    }
    if cli.json {
        return Ok(text);
    }
    let (l, f) = average_payoffs(game, &transcript.pairs)?;
    let pairs: Vec<String> = transcript.pairs.iter().map(ToString::to_string).collect();
    let mut report = format!(
        "T = {horizon}, seed {seed}\nleader average = {l}\nfollower average = {f}\npairs: {}\n",
        pairs.join(" ")
    );
    if let Some(path) = out {
        writeln!(report, "wrote {}", path.display())?;
    }
    Ok(report)
}

fn cmd_regret(cli: &Cli, game: &BimatrixGame, path: &Path, side: SideArg) -> Result<String> {
    let transcript = Transcript::from_json(&read(path)?).with_context(|| format!("in transcript {}", path.display()))?;
    let side = match side {
        SideArg::Leader => Side::Leader,
        SideArg::Follower => Side::Follower,
    };
    let report = external_regret(&transcript, game, side)?;
    if cli.json {
        return Ok(report.to_json() + "\n");
    }
    let horizon = transcript.horizon();
    Ok(format!(
        "T = {horizon}\ntotal regret = {}\nper-round regret = {}\nbest fixed action = {}\nrealized total = {}\n",
        report.total_regret,
        report.per_round(horizon),
        report.best_fixed_action + 1,
        report.realized_total
    ))
}

fn cmd_reduce(cli: &Cli, graph: &Graph, out: Option<&Path>) -> Result<String> {
    let game = reduce_graph(graph)?;
    let text = game.to_json() + "\n";
    if let Some(path) = out {
        write(path, &text)?;
    }
    if cli.json {
        return Ok(text);
    }
    let (r, s, t) = game.shape();
    let labels: Vec<String> = (0..t).map(|k| game.player3_label(k)).collect();
    let mut report = format!(
        "shape {r}x{s}x{t}\nPlayer 3 actions: {}\nbonus = {}\n",
        labels.join(" "),
        game.bonus()
    );
    match out {
        Some(path) => writeln!(report, "wrote {}", path.display())?,
        None => report.push_str(&text),
    }
    Ok(report)
}

fn cmd_audit_vc(cli: &Cli, graph: &Graph, resolution: usize, c_exponent: u32) -> Result<String> {
    let game = reduce_graph(graph)?;
    match balanced_vertex_cover(graph)? {
        Some(cover) => audit_cover(cli, &game, &cover),
        None => audit_grid(cli, &game, resolution, c_exponent),
    }
}

fn audit_cover(cli: &Cli, game: &ThreePlayerGame, cover: &[usize]) -> Result<String> {
    let (p1, p2) = cover_strategies(game.graph(), cover)?;
    let (action, value) = player3_audit(game, &p1, &p2)?;
    let one_based: Vec<usize> = cover.iter().map(|v| v + 1).collect();
    let report = if cli.json {
        json_out(&json!({
            "balanced_cover": one_based,
            "p1": p1,
            "p2": p2,
            "best_action": game.player3_label(action),
            "value": format_rational(&value),
        }))
    } else {
        let names: Vec<String> = one_based.iter().map(ToString::to_string).collect();
        format!(
            "balanced cover {{{}}}\nPlayer 3 best reply {} with value {value}\n",
            names.join(", "),
            game.player3_label(action)
        )
    };
    if value < int(1) {
        return Err(VerificationFailed {
            reason: format!("Player 3 gets {value} < 1 against the cover strategies"),
            report,
        }
        .into());
    }
    Ok(report)
}

fn audit_grid(cli: &Cli, game: &ThreePlayerGame, resolution: usize, c_exponent: u32) -> Result<String> {
    let budget = cli.budget.unwrap_or(DEFAULT_GRID_BUDGET);
    let audit = grid_audit_player3_with_budget(game, resolution, budget)?;
    let n = game.graph().vertex_count();
    let threshold = player3_threshold(n, c_exponent);
    let above = audit.worst_case > threshold;
    let report = if cli.json {
        json_out(&json!({
            "balanced_cover": null,
            "resolution": resolution,
            "points": audit.points,
            "worst_case": format_rational(&audit.worst_case),
            "threshold": format_rational(&threshold),
            "above_threshold": above,
            "p1": audit.p1,
            "p2": audit.p2,
            "best_action": game.player3_label(audit.best_action),
        }))
    } else {
        format!(
            "no balanced cover\ngrid resolution {resolution}, {} strategy pairs (empirical: grid points only)\nworst case {} at p1 = {}, p2 = {} (reply {})\nthreshold 1 + 1/((n-2) n^(c-1)) = {threshold} with c = {c_exponent}\n{}\n",
            audit.points,
            audit.worst_case,
            fmt_list(audit.p1.weights()),
            fmt_list(audit.p2.weights()),
            game.player3_label(audit.best_action),
            if above { "above the threshold at every grid point" } else { "NOT above the threshold" }
        )
    };
    if !above {
        return Err(VerificationFailed {
            reason: format!("grid worst case {} does not exceed {threshold}", audit.worst_case),
            report,
        }
        .into());
    }
    Ok(report)
}
