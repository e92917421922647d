//! Pure-strategy equilibrium search on finite grids of EWL strategies, and
//! the analytic best reply of the two-parameter Prisoner's Dilemma copy.
//!
//! A grid profile is an ε-equilibrium when no player can gain more than ε by
//! switching to another point of their own grid axis. This is evidence about
//! the continuous game, not a proof: deviations off the grid are not checked.

use std::f64::consts::{PI, TAU};
use std::fmt;

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::ewl::{final_state_from_unitaries, EwlGame, StrategySpace, TwoParam};
use crate::linalg::{normalize_angle, su2, CMatrix, SU2Params};

/// Nodes `linspace(0, upper, steps)`; one step gives `{0}`. When the last node
/// coincides with the first modulo 2π it is dropped.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleAxis {
    pub steps: usize,
    pub upper: f64,
}

impl AngleAxis {
    pub fn new(steps: usize, upper: f64) -> Self {
        Self { steps, upper }
    }

    /// A single node at zero.
    pub fn frozen() -> Self {
        Self { steps: 1, upper: 0.0 }
    }

    /// `steps` nodes spanning a full period `[0, 2π]`.
    pub fn full_period(steps: usize) -> Self {
        Self { steps, upper: TAU }
    }

    pub fn nodes(&self) -> Vec<f64> {
        let mut out = linspace(0.0, self.upper, self.steps);
        if out.len() > 1 && normalize_angle(*out.last().unwrap()) == 0.0 {
            out.pop();
        }
        out
    }
}

/// Inclusive `linspace(lo, hi, steps)`; a single step yields `lo`.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|k| if k + 1 == steps { hi } else { lo + (hi - lo) * k as f64 / (steps - 1) as f64 })
            .collect(),
    }
}

/// One player's grid: θ from 0 to π inclusive, α and β along their axes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlayerGrid {
    pub theta_steps: usize,
    pub alpha: AngleAxis,
    pub beta: AngleAxis,
}

impl PlayerGrid {
    /// A grid inside `space`: angles frozen by the space get the single node 0.
    pub fn for_space(space: StrategySpace, theta_steps: usize, alpha_steps: usize, beta_steps: usize) -> Self {
        let axis = |free: bool, steps: usize| if free { AngleAxis::full_period(steps) } else { AngleAxis::frozen() };
        Self { theta_steps, alpha: axis(space.alpha_free(), alpha_steps), beta: axis(space.beta_free(), beta_steps) }
    }

    /// Grid points in θ-major, then α, then β order.
    pub fn points(&self) -> Vec<SU2Params> {
        let thetas = linspace(0.0, PI, self.theta_steps);
        let (alphas, betas) = (self.alpha.nodes(), self.beta.nodes());
        let mut out = Vec::with_capacity(thetas.len() * alphas.len() * betas.len());
        for &t in &thetas {
            for &a in &alphas {
                for &b in &betas {
                    out.push(SU2Params::new(t, a, b).expect("grid angles are in range"));
                }
            }
        }
        out
    }

    fn check(&self, space: StrategySpace) -> Result<()> {
        if self.theta_steps < 2 {
            return invalid("θ needs at least 2 steps so that both 0 and π are on the grid");
        }
        if self.alpha.steps == 0 || self.beta.steps == 0 {
            return invalid("empty angle axis");
        }
        if let Some(p) = self.points().into_iter().find(|p| !space.contains(p)) {
            return invalid(format!("grid point {p} lies outside the '{space}' space"));
        }
        Ok(())
    }
}

/// Per-player grids for a whole game.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamGrid {
    pub players: Vec<PlayerGrid>,
}

impl ParamGrid {
    /// The same step counts for every player, honoring each player's space.
    pub fn uniform(spaces: &[StrategySpace], theta_steps: usize, alpha_steps: usize, beta_steps: usize) -> Self {
        Self {
            players: spaces.iter().map(|&s| PlayerGrid::for_space(s, theta_steps, alpha_steps, beta_steps)).collect(),
        }
    }

    /// `θ ∈ {0, π}` with the phases at zero: the classical pure strategies.
    pub fn classical(num_players: usize) -> Self {
        Self::uniform(&vec![StrategySpace::OneParam; num_players], 2, 1, 1)
    }

    /// Every step count doubled; θ endpoints stay on the grid.
    pub fn doubled(&self) -> Self {
        let dbl = |axis: AngleAxis| if axis.steps > 1 { AngleAxis { steps: 2 * axis.steps - 1, ..axis } } else { axis };
        Self {
            players: self
                .players
                .iter()
                .map(|p| PlayerGrid { theta_steps: 2 * p.theta_steps - 1, alpha: dbl(p.alpha), beta: dbl(p.beta) })
                .collect(),
        }
    }

    pub fn num_profiles(&self) -> usize {
        self.players.iter().map(|p| p.points().len()).product()
    }
}

/// A grid profile together with the largest gain any player can get by a
/// grid deviation.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsEquilibrium {
    pub profile: Vec<SU2Params>,
    pub eps: f64,
    pub payoffs: Vec<f64>,
}

impl fmt::Display for EpsEquilibrium {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.profile.iter().map(|p| p.to_string()).collect();
        let pay: Vec<String> = self.payoffs.iter().map(|u| format!("{u:.6}")).collect();
        write!(f, "{}  payoffs ({})  eps {:.3e}", parts.join(" x "), pay.join(", "), self.eps)
    }
}

/// Payoffs and deviation gains at every profile of a grid.
#[derive(Clone, Debug)]
pub struct GridScan {
    points: Vec<Vec<SU2Params>>,
    strides: Vec<usize>,
    // flat [profile][player]
    payoffs: Vec<f64>,
    eps: Vec<f64>,
}

impl GridScan {
    pub fn num_profiles(&self) -> usize {
        self.eps.len()
    }

    pub fn profile(&self, index: usize) -> Vec<SU2Params> {
        self.points.iter().zip(&self.strides).map(|(pts, &stride)| pts[(index / stride) % pts.len()]).collect()
    }

    pub fn payoffs(&self, index: usize) -> &[f64] {
        let n = self.points.len();
        &self.payoffs[index * n..(index + 1) * n]
    }

    pub fn eps(&self, index: usize) -> f64 {
        self.eps[index]
    }

    /// The smallest deviation gain over all profiles, with its profile index.
    pub fn min_eps(&self) -> (usize, f64) {
        self.eps
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::INFINITY), |best, (i, e)| if e < best.1 { (i, e) } else { best })
    }

    /// Profiles whose deviation gain is at most `eps`, in grid order.
    pub fn equilibria(&self, eps: f64) -> Vec<EpsEquilibrium> {
        (0..self.num_profiles())
            .filter(|&i| self.eps[i] <= eps)
            .map(|i| EpsEquilibrium { profile: self.profile(i), eps: self.eps[i], payoffs: self.payoffs(i).to_vec() })
            .collect()
    }
}

/// Evaluate `g` on every profile of `grid` and record each profile's deviation gain.
pub fn scan_grid(g: &EwlGame, grid: &ParamGrid) -> Result<GridScan> {
    let n = g.num_players();
    if grid.players.len() != n {
        return invalid(format!("grid has {} players, game has {n}", grid.players.len()));
    }
    for (pg, &space) in grid.players.iter().zip(g.spaces()) {
        pg.check(space)?;
    }
    let points: Vec<Vec<SU2Params>> = grid.players.iter().map(PlayerGrid::points).collect();
    let mats: Vec<Vec<CMatrix>> = points.iter().map(|pts| pts.iter().map(su2).collect()).collect();
    let lens: Vec<usize> = points.iter().map(Vec::len).collect();
    let total: usize = lens.iter().product();

    // player 0 is the most significant coordinate
    let mut strides = vec![1; n];
    for i in (0..n.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * lens[i + 1];
    }

    let mut payoffs = vec![0.0; total * n];
    payoffs.par_chunks_mut(n).enumerate().for_each(|(idx, out)| {
        let us: Vec<CMatrix> = (0..n).map(|i| mats[i][(idx / strides[i]) % lens[i]].clone()).collect();
        let probs = final_state_from_unitaries(&us).probabilities();
        out.copy_from_slice(&g.payoffs_from_probabilities(&probs));
    });

    // best payoff along each player's axis, keyed by the other coordinates
    let line_key = |idx: usize, i: usize| (idx / (strides[i] * lens[i])) * strides[i] + idx % strides[i];
    let line_max: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut best = vec![f64::NEG_INFINITY; total / lens[i]];
            for idx in 0..total {
                let k = line_key(idx, i);
                best[k] = best[k].max(payoffs[idx * n + i]);
            }
            best
        })
        .collect();
    let eps = (0..total)
        .map(|idx| (0..n).map(|i| line_max[i][line_key(idx, i)] - payoffs[idx * n + i]).fold(0.0, f64::max))
        .collect();
    Ok(GridScan { points, strides, payoffs, eps })
}

/// All grid profiles at which no player gains more than `eps` by a grid deviation.
pub fn grid_pure_ne(g: &EwlGame, grid: &ParamGrid, eps: f64) -> Result<Vec<EpsEquilibrium>> {
    if eps.is_nan() || eps < 0.0 {
        return invalid(format!("eps must be non-negative, got {eps}"));
    }
    Ok(scan_grid(g, grid)?.equilibria(eps))
}

/// Player 1's best reply in the PD copy with player 2's strategies swapped:
/// it puts all weight on the profile paying player 1 `T`.
pub fn best_reply_two_param(opponent: TwoParam) -> TwoParam {
    let a = normalize_angle(opponent.alpha);
    let alpha = if a <= 1.5 * PI { 1.5 * PI - a } else { 3.5 * PI - a };
    TwoParam::new(opponent.theta, normalize_angle(alpha))
}

/// Player 2's profitable deviation against any player 1 strategy:
/// `(0, 2π − α₁)`, which keeps player 2's payoff strictly above `S`.
pub fn counterexample_witness(p1: TwoParam) -> TwoParam {
    TwoParam::new(0.0, normalize_angle(TAU - p1.alpha))
}
