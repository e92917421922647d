//! A line-oriented text format for games.
//!
//! ```text
//! # Prisoner's Dilemma
//! players: 2
//! strategies 1: C D
//! strategies 2: C D
//! spaces: alpha alpha
//! payoff (C,C): 3 3
//! payoff (C,D): 0 5
//! payoff (D,C): 5 0
//! payoff (D,D): 1 1
//! ```
//!
//! `spaces` is optional. Every profile must have exactly one `payoff` line.
//! Blank lines and text after `#` are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::ewl::StrategySpace;
use crate::game::{profiles_of, ClassicalGame};

/// A parsed game file.
#[derive(Clone, Debug, PartialEq)]
pub struct GameFile {
    pub game: ClassicalGame,
    pub spaces: Option<Vec<StrategySpace>>,
}

impl GameFile {
    pub fn new(game: ClassicalGame) -> Self {
        Self { game, spaces: None }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    /// Canonical text: header, strategies, optional spaces, then payoffs in
    /// lexicographic profile order.
    pub fn to_text(&self) -> Result<String> {
        serialize(self)
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || matches!(c, ',' | '(' | ')' | '#' | ':'))
}

pub fn parse(text: &str) -> Result<GameFile> {
    let mut players: Option<(usize, usize)> = None;
    let mut labels: Vec<Option<Vec<String>>> = Vec::new();
    let mut spaces: Option<Vec<StrategySpace>> = None;
    let mut payoff_lines: Vec<(usize, Vec<String>, Vec<f64>)> = Vec::new();
    let mut last_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let ln = k + 1;
        last_line = ln;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return err(ln, format!("expected 'key: value', found '{line}'"));
        };
        let (key, value) = (key.trim(), value.trim());

        if key == "players" {
            if players.is_some() {
                return err(ln, "duplicate 'players' line");
            }
            let n: usize =
                value.parse().map_err(|_| Error::Parse { line: ln, message: format!("bad player count '{value}'") })?;
            if n == 0 {
                return err(ln, "a game needs at least one player");
            }
            players = Some((n, ln));
            labels = vec![None; n];
            continue;
        }
        let Some((n, _)) = players else {
            return err(ln, "'players' must come first");
        };

        if let Some(idx) = key.strip_prefix("strategies") {
            let i: usize = match idx.trim().parse() {
                Ok(i) if (1..=n).contains(&i) => i,
                _ => return err(ln, format!("bad player number '{}' (expected 1..={n})", idx.trim())),
            };
            if labels[i - 1].is_some() {
                return err(ln, format!("duplicate strategies for player {i}"));
            }
            let ls: Vec<String> = value.split_whitespace().map(str::to_string).collect();
            if ls.len() < 2 {
                return err(ln, format!("player {i} needs at least two strategies"));
            }
            if let Some(bad) = ls.iter().find(|l| !valid_label(l)) {
                return err(ln, format!("invalid strategy label '{bad}'"));
            }
            if let Some(dup) = ls.iter().enumerate().find(|(k, l)| ls[..*k].contains(l)) {
                return err(ln, format!("strategy label '{}' repeated", dup.1));
            }
            labels[i - 1] = Some(ls);
        } else if key == "spaces" {
            if spaces.is_some() {
                return err(ln, "duplicate 'spaces' line");
            }
            let parsed: Result<Vec<StrategySpace>> = value.split_whitespace().map(str::parse).collect();
            let parsed = parsed.map_err(|e| Error::Parse { line: ln, message: e.to_string() })?;
            if parsed.len() != n {
                return err(ln, format!("{} spaces given for {n} players", parsed.len()));
            }
            spaces = Some(parsed);
        } else if let Some(rest) = key.strip_prefix("payoff") {
            let rest = rest.trim();
            let inner = match rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                Some(inner) => inner,
                None => return err(ln, format!("expected a profile like '(a,b)', found '{rest}'")),
            };
            let profile: Vec<String> = inner.split(',').map(|s| s.trim().to_string()).collect();
            let values: std::result::Result<Vec<f64>, _> = value.split_whitespace().map(str::parse::<f64>).collect();
            let values =
                values.map_err(|_| Error::Parse { line: ln, message: format!("bad payoff values '{value}'") })?;
            if values.iter().any(|v| !v.is_finite()) {
                return err(ln, "payoffs must be finite");
            }
            payoff_lines.push((ln, profile, values));
        } else {
            return err(ln, format!("unknown key '{key}'"));
        }
    }

    let Some((n, players_line)) = players else {
        return err(last_line.max(1), "missing 'players' line");
    };
    if let Some(i) = labels.iter().position(Option::is_none) {
        return err(players_line, format!("missing strategies for player {}", i + 1));
    }
    let labels: Vec<Vec<String>> = labels.into_iter().flatten().collect();
    let shape: Vec<usize> = labels.iter().map(Vec::len).collect();

    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut cells: Vec<Option<Vec<f64>>> = vec![None; shape.iter().product()];
    for (pos, profile) in profiles_of(&shape).enumerate() {
        index.insert(profile, pos);
    }
    for (ln, names, values) in payoff_lines {
        if names.len() != n {
            return err(ln, format!("profile has {} entries, expected {n}", names.len()));
        }
        let mut profile = Vec::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            match labels[i].iter().position(|l| l == name) {
                Some(s) => profile.push(s),
                None => return err(ln, format!("'{name}' is not a strategy of player {}", i + 1)),
            }
        }
        if values.len() != n {
            return err(ln, format!("{} payoffs given, expected {n}", values.len()));
        }
        let cell = &mut cells[index[&profile]];
        if cell.is_some() {
            return err(ln, format!("duplicate payoff for profile ({})", names.join(",")));
        }
        *cell = Some(values);
    }
    if let Some(pos) = cells.iter().position(Option::is_none) {
        let missing = profiles_of(&shape).nth(pos).expect("position is in range");
        let names: Vec<&str> = missing.iter().enumerate().map(|(i, &s)| labels[i][s].as_str()).collect();
        return err(last_line, format!("missing payoff for profile ({})", names.join(",")));
    }
    let game = ClassicalGame::new(labels, cells.into_iter().flatten().collect())
        .map_err(|e| Error::Parse { line: players_line, message: e.to_string() })?;
    Ok(GameFile { game, spaces })
}

pub fn serialize(file: &GameFile) -> Result<String> {
    let g = &file.game;
    let mut out = String::new();
    writeln!(out, "players: {}", g.num_players()).unwrap();
    for (i, ls) in g.labels().iter().enumerate() {
        if let Some(bad) = ls.iter().find(|l| !valid_label(l)) {
            return invalid(format!("label '{bad}' cannot be written to a game file"));
        }
        writeln!(out, "strategies {}: {}", i + 1, ls.join(" ")).unwrap();
    }
    if let Some(spaces) = &file.spaces {
        let names: Vec<&str> = spaces.iter().map(StrategySpace::name).collect();
        writeln!(out, "spaces: {}", names.join(" ")).unwrap();
    }
    for profile in g.profiles() {
        let names: Vec<&str> = profile.0.iter().enumerate().map(|(i, &s)| g.labels()[i][s].as_str()).collect();
        let values: Vec<String> = g.payoff_vector(&profile.0).iter().map(|v| v.to_string()).collect();
        writeln!(out, "payoff ({}): {}", names.join(","), values.join(" ")).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::sampling::{random_real_game, seeded_rng};
    use proptest::prelude::*;

    const PD: &str = "\
# Prisoner's Dilemma
players: 2
strategies 1: C D   # row player
strategies 2: C D

payoff (C,C): 3 3
payoff (C,D): 0 5
payoff (D,C): 5 0
payoff (D,D): 1 1
";

    fn parse_err(text: &str) -> (usize, String) {
        match parse(text) {
            Err(Error::Parse { line, message }) => (line, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_example() {
        let f = parse(PD).unwrap();
        assert_eq!(f.spaces, None);
        assert_eq!(f.game.payoff_vector(&[1, 0]), &[5.0, 0.0]);
        assert_eq!(f.game.labels()[0], vec!["C", "D"]);
    }

    #[test]
    fn payoff_order_is_free() {
        let shuffled = PD.replace("payoff (C,C): 3 3\n", "") + "payoff (C,C): 3 3\n";
        assert_eq!(parse(&shuffled).unwrap(), parse(PD).unwrap());
    }

    #[test]
    fn spaces_line() {
        let text = PD.replace("\npayoff (C,C)", "spaces: alpha beta\npayoff (C,C)");
        let f = parse(&text).unwrap();
        assert_eq!(f.spaces, Some(vec![StrategySpace::TwoParamAlpha, StrategySpace::TwoParamBeta]));
        let (line, msg) = parse_err(&PD.replace("\npayoff (C,C)", "spaces: alpha gamma\npayoff (C,C)"));
        assert_eq!(line, 5);
        assert!(msg.contains("gamma"));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_err(&PD.replace("payoff (D,C): 5 0", "payoff (D,X): 5 0")).0, 8);
        assert_eq!(parse_err(&PD.replace("payoff (D,C): 5 0", "payoff (D,C): 5")).0, 8);
        assert_eq!(parse_err(&PD.replace("payoff (D,C): 5 0", "payoff (D,C): 5 zero")).0, 8);
        assert_eq!(parse_err(&PD.replace("payoff (D,C): 5 0", "payoff (C,C): 5 0")).0, 8);
        assert_eq!(parse_err(&PD.replace("payoff (D,C): 5 0", "payoff D,C: 5 0")).0, 8);
        assert_eq!(parse_err(&PD.replace("payoff (D,C): 5 0", "bogus")).0, 8);
        assert_eq!(parse_err(&PD.replace("strategies 2: C D", "strategies 3: C D")).0, 4);
        assert_eq!(parse_err(&PD.replace("strategies 2: C D", "strategies 2: C C")).0, 4);
        assert_eq!(parse_err("strategies 1: a b\n").0, 1);
        assert!(parse_err(&PD.replace("payoff (D,C): 5 0\n", "")).1.contains("(D,C)"));
        assert!(parse_err(&PD.replace("strategies 2: C D\n", "")).1.contains("player 2"));
        assert!(parse_err("").1.contains("players"));
    }

    #[test]
    fn bundled_style_roundtrip() {
        let (g, g2) = catalog::prisoners_dilemma_pair(5.0, 3.0, 1.0, 0.0).unwrap();
        for game in [g, g2] {
            let f = GameFile { game, spaces: Some(vec![StrategySpace::TwoParamAlpha; 2]) };
            let text = f.to_text().unwrap();
            assert_eq!(parse(&text).unwrap(), f);
            assert_eq!(parse(&text).unwrap().to_text().unwrap(), text);
        }
    }

    #[test]
    fn unwritable_labels() {
        let g = ClassicalGame::new(vec![vec!["a b".into(), "c".into()]], vec![vec![1.0], vec![2.0]]).unwrap();
        assert!(GameFile::new(g).to_text().is_err());
    }

    proptest! {
        #[test]
        fn roundtrip(seed in any::<u64>(), shape in prop::collection::vec(2usize..4, 1..4), with_spaces in any::<bool>()) {
            let mut rng = seeded_rng(seed);
            let game = random_real_game(&mut rng, &shape, -1e3, 1e3);
            let spaces = with_spaces.then(|| vec![StrategySpace::FullSU2; shape.len()]);
            let f = GameFile { game, spaces };
            let text = f.to_text().unwrap();
            let back = parse(&text).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.to_text().unwrap(), text);
        }
    }
}
