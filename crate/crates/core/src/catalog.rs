//! The worked example games: the Prisoner's Dilemma pair, the three-player
//! pair with a cyclic player relabeling, and the anti-diagonal pair.

use crate::error::Result;
use crate::game::{image_game, ClassicalGame, GameMapping};

fn strs(ls: &[&[&str]]) -> Vec<Vec<String>> {
    ls.iter().map(|l| l.iter().map(|s| s.to_string()).collect()).collect()
}

/// Prisoner's Dilemma `Γ` and its copy `Γ'` with player 2's strategies swapped.
///
/// ```text
/// Γ:      l      r        Γ':      l'     r'
///   t   (R,R)  (S,T)        t'   (S,T)  (R,R)
///   b   (T,S)  (P,P)        b'   (P,P)  (T,S)
/// ```
pub fn prisoners_dilemma_pair(t: f64, r: f64, p: f64, s: f64) -> Result<(ClassicalGame, ClassicalGame)> {
    let g = ClassicalGame::bimatrix(["t", "b"], ["l", "r"], [[(r, r), (s, t)], [(t, s), (p, p)]])?;
    let g2 = ClassicalGame::bimatrix(["t'", "b'"], ["l'", "r'"], [[(s, t), (r, r)], [(p, p), (t, s)]])?;
    Ok((g, g2))
}

/// `η = id`, player 2's strategies swapped: the isomorphism of the PD pair.
pub fn column_swap_mapping() -> GameMapping {
    GameMapping::new(vec![0, 1], vec![vec![0, 1], vec![1, 0]]).expect("valid mapping")
}

/// `η = (1→2, 2→1)`, `φ1 = (t→l', b→r')`, `φ2 = (l→b', r→t')`.
pub fn swap_players_mapping() -> GameMapping {
    GameMapping::new(vec![1, 0], vec![vec![0, 1], vec![1, 0]]).expect("valid mapping")
}

/// `η = (1→2, 2→3, 3→1)`, `φ1 = (t→l', b→r')`, `φ2 = (l→w', r→v')`, `φ3 = (v→b', w→t')`.
pub fn three_player_mapping() -> GameMapping {
    GameMapping::new(vec![1, 2, 0], vec![vec![0, 1], vec![1, 0], vec![1, 0]]).expect("valid mapping")
}

/// A three-player game with strategies `{t,b} × {l,r} × {v,w}` and its image
/// under [`three_player_mapping`], relabeled `{t',b'} × {l',r'} × {v',w'}`.
///
/// `payoff(j1, j2, j3)` gives the payoff vector `(a, b, c)` at that profile.
pub fn three_player_pair(payoff: impl FnMut(&[usize]) -> Vec<f64>) -> Result<(ClassicalGame, ClassicalGame)> {
    let g = ClassicalGame::from_fn(strs(&[&["t", "b"], &["l", "r"], &["v", "w"]]), payoff)?;
    let g2 =
        image_game(&three_player_mapping(), &g)?.relabeled(strs(&[&["t'", "b'"], &["l'", "r'"], &["v'", "w'"]]))?;
    Ok((g, g2))
}

/// Two bimatrix games differing only by the order of the anti-diagonal cells.
///
/// `cells` lists `(a00,b00), (a01,b01), (a10,b10), (a11,b11)`.
pub fn antidiagonal_pair(cells: [(f64, f64); 4]) -> Result<(ClassicalGame, ClassicalGame)> {
    let [c00, c01, c10, c11] = cells;
    let g = ClassicalGame::bimatrix(["t", "b"], ["l", "r"], [[c00, c01], [c10, c11]])?;
    let g2 = ClassicalGame::bimatrix(["t'", "b'"], ["l'", "r'"], [[c00, c10], [c01, c11]])?;
    Ok((g, g2))
}

/// The anti-diagonal pair with payoffs (4,4), (1,3), (3,1), (2,2).
pub fn converse_counterexample() -> (ClassicalGame, ClassicalGame) {
    antidiagonal_pair([(4.0, 4.0), (1.0, 3.0), (3.0, 1.0), (2.0, 2.0)]).expect("valid game")
}
