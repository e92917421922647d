use std::f64::consts::{PI, TAU};
use std::fmt;
use std::fs;
use std::path::Path;

use qgame::ewl::{EwlGame, StrategySpace};
use qgame::game::{find_strong_isomorphisms, strategic_equivalence, PAYOFF_TOL};
use qgame::lift::{lift, operator_identity_suite, verify_lift, IDENTITY_TOL, LIFT_TOL};
use qgame::linalg::SU2Params;
use qgame::search::{linspace, scan_grid, ParamGrid};
use qgame::GameFile;

use crate::report::{fmt_g15, RunReport};
use crate::{Angles, GridSpec};

/// What a command prints and whether its finding was affirmative.
pub struct Outcome {
    pub text: String,
    pub affirmative: bool,
}

impl Outcome {
    fn from_report(report: RunReport, affirmative: bool) -> Self {
        Self { text: report.to_string(), affirmative }
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            Self::Input(_) => 2,
            Self::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Input(m) | Self::Io(m) => f.write_str(m),
        }
    }
}

impl From<qgame::Error> for CliError {
    fn from(e: qgame::Error) -> Self {
        Self::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn load(path: &Path) -> CliResult<GameFile> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    GameFile::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// One space name for everyone, or a comma-separated name per player.
fn parse_spaces(spec: &str, players: usize) -> CliResult<Vec<StrategySpace>> {
    let names: Vec<&str> = spec.split(',').map(str::trim).collect();
    let spaces: Vec<StrategySpace> = names.iter().map(|n| n.parse()).collect::<Result<_, _>>()?;
    match spaces.len() {
        1 => Ok(vec![spaces[0]; players]),
        k if k == players => Ok(spaces),
        k => Err(CliError::Input(format!("{k} strategy spaces given for {players} players"))),
    }
}

fn spaces_for(file: &GameFile, spec: Option<&str>) -> CliResult<Vec<StrategySpace>> {
    let n = file.game.num_players();
    match spec {
        Some(s) => parse_spaces(s, n),
        None => Ok(file.spaces.clone().unwrap_or_else(|| vec![StrategySpace::FullSU2; n])),
    }
}

fn describe_space_list(spaces: &[StrategySpace]) -> String {
    spaces.iter().map(StrategySpace::name).collect::<Vec<_>>().join(",")
}

pub fn iso(a: &Path, b: &Path) -> CliResult<Outcome> {
    let (fa, fb) = (load(a)?, load(b)?);
    let mut r = RunReport::new(format!("qgame iso {} {}", a.display(), b.display()));
    r.tolerance("payoff", PAYOFF_TOL);
    let isos = find_strong_isomorphisms(&fa.game, &fb.game);
    if isos.is_empty() {
        r.line("strong isomorphisms: none");
    } else {
        r.line(format!("strong isomorphisms: {}", isos.len()));
        for f in &isos {
            r.line(format!("  {f}"));
        }
    }
    match strategic_equivalence(&fa.game, &fb.game) {
        Some(maps) => {
            r.line("strategic equivalence:");
            for (i, m) in maps.iter().enumerate() {
                r.line(format!("  player {}: u' = {} * u + {}", i + 1, fmt_g15(m.scale), fmt_g15(m.shift)));
            }
        }
        None => r.line("strategic equivalence: none"),
    }
    let found = !isos.is_empty();
    r.verdict("isomorphic", found);
    Ok(Outcome::from_report(r, found))
}

pub fn lift_verify(a: &Path, b: &Path, samples: usize, seed: u64, spaces: Option<&str>) -> CliResult<Outcome> {
    let (fa, fb) = (load(a)?, load(b)?);
    let qa = EwlGame::new(fa.game.clone(), spaces_for(&fa, spaces)?)?;
    let qb = EwlGame::new(fb.game.clone(), spaces_for(&fb, spaces)?)?;
    let mut r = RunReport::new(format!("qgame lift-verify {} {} --samples {samples}", a.display(), b.display()));
    r.seed = Some(seed);
    r.tolerance("lift", LIFT_TOL);
    r.line(format!("spaces: {} -> {}", describe_space_list(qa.spaces()), describe_space_list(qb.spaces())));

    let isos = find_strong_isomorphisms(&fa.game, &fb.game);
    if isos.is_empty() {
        r.line("no strong isomorphism to lift");
        r.verdict("lift", false);
        return Ok(Outcome::from_report(r, false));
    }
    for f in &isos {
        let lm = lift(f, &fa.game, &fb.game)?;
        let rep = verify_lift(&lm, &qa, &qb, samples, seed)?;
        r.line(format!("mapping {f}"));
        r.line(format!("  lifted: {lm}"));
        r.line(format!("  max payoff deviation: {:.3e}", rep.max_deviation));
        if let Some((player, p)) = rep.first_escape {
            r.line(format!(
                "  {} of {} images leave the target spaces (first: player {} gets {p})",
                rep.escapes,
                rep.samples,
                player + 1
            ));
        }
        r.verdict(format!("{f}: {}", rep.verdict), rep.passed());
    }
    let ok = r.all_passed();
    Ok(Outcome::from_report(r, ok))
}

pub fn ne(file: &Path, spaces: Option<&str>, grid: GridSpec, eps: f64, csv: Option<&Path>) -> CliResult<Outcome> {
    let f = load(file)?;
    let q = EwlGame::new(f.game.clone(), spaces_for(&f, spaces)?)?;
    let pg = ParamGrid::uniform(q.spaces(), grid.theta, grid.alpha, grid.beta);
    let scan = scan_grid(&q, &pg)?;
    let found = scan.equilibria(eps);

    let mut r = RunReport::new(format!(
        "qgame ne {} --grid {},{},{} --eps {eps:e}",
        file.display(),
        grid.theta,
        grid.alpha,
        grid.beta
    ));
    r.tolerance("eps", eps);
    r.line(format!("spaces: {}", describe_space_list(q.spaces())));
    r.line(format!("grid profiles: {}", scan.num_profiles()));
    let (_, min_eps) = scan.min_eps();
    r.line(format!("smallest deviation gain on the grid: {min_eps:.6e}"));
    r.line(format!("equilibria: {}", found.len()));
    for e in &found {
        r.line(format!("  {e}"));
    }

    if let Some(path) = csv {
        let n = q.num_players();
        let mut header: Vec<String> =
            (1..=n).flat_map(|i| [format!("theta{i}"), format!("alpha{i}"), format!("beta{i}")]).collect();
        header.extend((1..=n).map(|i| format!("payoff{i}")));
        header.push("eps".into());
        let mut out = header.join(",") + "\n";
        for e in &found {
            let mut row: Vec<String> =
                e.profile.iter().flat_map(|p| [p.theta(), p.alpha(), p.beta()]).map(fmt_g15).collect();
            row.extend(e.payoffs.iter().copied().map(fmt_g15));
            row.push(fmt_g15(e.eps));
            out += &(row.join(",") + "\n");
        }
        write(path, &out)?;
        r.line(format!("wrote {}", path.display()));
    }
    let any = !found.is_empty();
    r.verdict("equilibrium found", any);
    Ok(Outcome::from_report(r, any))
}

/// CSV of `theta,alpha,payoff1,payoff2`; θ and α are inclusive linspaces
/// over `[0, π]` and `[0, 2π]`.
pub fn surface_csv(q: &EwlGame, player: usize, opponent: SU2Params, grid: GridSpec) -> CliResult<String> {
    let mut out = String::from("theta,alpha,payoff1,payoff2\n");
    for theta in linspace(0.0, PI, grid.theta) {
        for alpha in linspace(0.0, TAU, grid.alpha) {
            let own = SU2Params::new(theta, alpha, 0.0)?;
            let profile = if player == 1 { [own, opponent] } else { [opponent, own] };
            let u = q.payoffs_unrestricted(&profile)?;
            out += &format!("{},{},{},{}\n", fmt_g15(theta), fmt_g15(alpha), fmt_g15(u[0]), fmt_g15(u[1]));
        }
    }
    Ok(out)
}

pub fn surface(file: &Path, player: usize, opponent: Angles, grid: GridSpec, csv: Option<&Path>) -> CliResult<Outcome> {
    let f = load(file)?;
    if f.game.num_players() != 2 {
        return Err(CliError::Input("payoff surfaces need a two-player game".into()));
    }
    if player != 1 && player != 2 {
        return Err(CliError::Input(format!("player must be 1 or 2, got {player}")));
    }
    let q = EwlGame::full(f.game)?;
    let opp = SU2Params::new(opponent.0, opponent.1, opponent.2)?;
    let text = surface_csv(&q, player, opp, grid)?;
    match csv {
        None => Ok(Outcome { text, affirmative: true }),
        Some(path) => {
            write(path, &text)?;
            let mut r = RunReport::new(format!(
                "qgame surface {} --player {player} --grid {},{}",
                file.display(),
                grid.theta,
                grid.alpha
            ));
            r.line(format!("opponent: {opp}"));
            r.line(format!("wrote {} rows to {}", grid.theta * grid.alpha, path.display()));
            Ok(Outcome::from_report(r, true))
        }
    }
}

pub fn identities(samples: usize, seed: u64) -> CliResult<Outcome> {
    let rep = operator_identity_suite(samples, seed);
    let mut r = RunReport::new(format!("qgame identities --samples {samples}"));
    r.seed = Some(seed);
    r.tolerance("identity", IDENTITY_TOL);
    for c in &rep.checks {
        r.line(format!("({}) {}  max residual {:.3e}", c.label, c.statement, c.max_residual));
    }
    r.line(format!("elapsed: {:.3} s", rep.elapsed_secs));
    for c in &rep.checks {
        r.verdict(format!("identity ({})", c.label), c.passed);
    }
    let ok = rep.passed();
    Ok(Outcome::from_report(r, ok))
}
