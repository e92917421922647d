//! The generalized Eisert–Wilkens–Lewenstein scheme for games with two
//! strategies per player.
//!
//! Each player applies a local SU(2) strategy between the entangler `J` and
//! its inverse, starting from `|0...0>`. The final state is measured in the
//! computational basis and player `i` receives the expectation of the
//! diagonal observable `M_i = Σ_j a^i_j |j><j|`, where `a^i_j` is the classical
//! payoff at the profile whose strategy indices are the bits of `j`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{invalid, Error, Result};
use crate::game::ClassicalGame;
use crate::linalg::{index_bits, su2, CMatrix, CVector, SU2Params, MAX_QUBITS};

/// The set of SU(2) strategies a player may choose from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrategySpace {
    /// All of SU(2).
    FullSU2,
    /// `U(θ, α, 0)`.
    TwoParamAlpha,
    /// `U(θ, 0, β)`.
    TwoParamBeta,
    /// `U(θ, 0, 0)`.
    OneParam,
}

impl StrategySpace {
    pub fn contains(&self, p: &SU2Params) -> bool {
        match self {
            Self::FullSU2 => true,
            Self::TwoParamAlpha => p.beta() == 0.0,
            Self::TwoParamBeta => p.alpha() == 0.0,
            Self::OneParam => p.alpha() == 0.0 && p.beta() == 0.0,
        }
    }

    pub fn alpha_free(&self) -> bool {
        matches!(self, Self::FullSU2 | Self::TwoParamAlpha)
    }

    pub fn beta_free(&self) -> bool {
        matches!(self, Self::FullSU2 | Self::TwoParamBeta)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::FullSU2 => "full",
            Self::TwoParamAlpha => "alpha",
            Self::TwoParamBeta => "beta",
            Self::OneParam => "one",
        }
    }
}

impl fmt::Display for StrategySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategySpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "full" | "su2" => Ok(Self::FullSU2),
            "alpha" | "d" => Ok(Self::TwoParamAlpha),
            "beta" | "f" => Ok(Self::TwoParamBeta),
            "one" => Ok(Self::OneParam),
            _ => invalid(format!("unknown strategy space '{s}' (expected full, alpha, beta or one)")),
        }
    }
}

/// A quantum game built from a binary classical game.
#[derive(Clone, Debug, PartialEq)]
pub struct EwlGame {
    base: ClassicalGame,
    spaces: Vec<StrategySpace>,
    // diagonal of M_i, indexed [player][basis index]
    observables: Vec<Vec<f64>>,
}

impl EwlGame {
    pub fn new(base: ClassicalGame, spaces: Vec<StrategySpace>) -> Result<Self> {
        let n = base.num_players();
        if !base.is_binary() {
            return invalid("the EWL scheme needs exactly two strategies per player");
        }
        if n > MAX_QUBITS {
            return invalid(format!("{n} players exceeds the supported maximum of {MAX_QUBITS}"));
        }
        if spaces.len() != n {
            return invalid(format!("{} strategy spaces given for {n} players", spaces.len()));
        }
        let observables = (0..n).map(|i| observable_diagonal(&base, i)).collect();
        Ok(Self { base, spaces, observables })
    }

    /// Every player unrestricted.
    pub fn full(base: ClassicalGame) -> Result<Self> {
        let n = base.num_players();
        Self::new(base, vec![StrategySpace::FullSU2; n])
    }

    pub fn base(&self) -> &ClassicalGame {
        &self.base
    }

    pub fn spaces(&self) -> &[StrategySpace] {
        &self.spaces
    }

    pub fn num_players(&self) -> usize {
        self.spaces.len()
    }

    pub fn observable(&self, player: usize) -> &[f64] {
        &self.observables[player]
    }

    pub fn with_spaces(&self, spaces: Vec<StrategySpace>) -> Result<Self> {
        Self::new(self.base.clone(), spaces)
    }

    /// Index of the first player whose strategy lies outside their space.
    pub fn first_space_violation(&self, params: &[SU2Params]) -> Option<usize> {
        self.spaces.iter().zip(params).position(|(s, p)| !s.contains(p))
    }

    /// Payoffs for `params` regardless of the declared strategy spaces.
    pub fn payoffs_unrestricted(&self, params: &[SU2Params]) -> Result<Vec<f64>> {
        if params.len() != self.num_players() {
            return invalid(format!("{} strategies given for {} players", params.len(), self.num_players()));
        }
        let probs = final_state(params)?.probabilities();
        Ok(self.payoffs_from_probabilities(&probs))
    }

    pub(crate) fn payoffs_from_probabilities(&self, probs: &[f64]) -> Vec<f64> {
        self.observables.iter().map(|m| m.iter().zip(probs).map(|(a, p)| a * p).sum()).collect()
    }
}

fn observable_diagonal(g: &ClassicalGame, player: usize) -> Vec<f64> {
    let n = g.num_players();
    (0..1usize << n).map(|j| g.payoff(&index_bits(j, n), player)).collect()
}

/// The observable `M_i` of player `player` as a diagonal matrix.
pub fn payoff_operator(g: &ClassicalGame, player: usize) -> Result<CMatrix> {
    if !g.is_binary() {
        return invalid("payoff operators need exactly two strategies per player");
    }
    if player >= g.num_players() {
        return invalid(format!("player {player} out of range"));
    }
    Ok(CMatrix::from_diagonal(&observable_diagonal(g, player)))
}

/// `J† (⊗ U_i) J |0...0>` for the given strategies.
pub fn final_state(params: &[SU2Params]) -> Result<CVector> {
    let n = params.len();
    if n == 0 || n > MAX_QUBITS {
        return invalid(format!("{n} players outside 1..={MAX_QUBITS}"));
    }
    let us: Vec<CMatrix> = params.iter().map(su2).collect();
    Ok(final_state_from_unitaries(&us))
}

/// Same as [`final_state`] with the single-qubit matrices already built.
pub(crate) fn final_state_from_unitaries(us: &[CMatrix]) -> CVector {
    let n = us.len();
    let dim = 1usize << n;
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let i = C64::new(0.0, 1.0);

    // J|0...0> = (|0...0> + i|1...1>) / √2
    let mut v = CVector::zeros(dim);
    let amp = v.entries_mut();
    amp[0] += h;
    amp[dim - 1] += i * h;

    for (k, u) in us.iter().enumerate() {
        let mask = 1usize << (n - 1 - k);
        for idx in (0..dim).filter(|idx| idx & mask == 0) {
            let (x0, x1) = (amp[idx], amp[idx | mask]);
            amp[idx] = u[(0, 0)] * x0 + u[(0, 1)] * x1;
            amp[idx | mask] = u[(1, 0)] * x0 + u[(1, 1)] * x1;
        }
    }

    // J† = (1 - i σ_x^{⊗n}) / √2 and σ_x^{⊗n} maps |k> to |!k>
    let out = (0..dim).map(|k| h * (amp[k] - i * amp[dim - 1 - k])).collect();
    CVector::new(out)
}

/// Payoff vector `(<Ψ|M_i|Ψ>)_i`; every strategy must lie in its player's space.
pub fn ewl_payoffs(g: &EwlGame, params: &[SU2Params]) -> Result<Vec<f64>> {
    if params.len() != g.num_players() {
        return invalid(format!("{} strategies given for {} players", params.len(), g.num_players()));
    }
    if let Some(i) = g.first_space_violation(params) {
        return invalid(format!("strategy {} of player {} lies outside the '{}' space", params[i], i + 1, g.spaces[i]));
    }
    g.payoffs_unrestricted(params)
}

/// Probability of each classical bit-profile after measurement.
pub fn outcome_distribution(params: &[SU2Params]) -> Result<Vec<(Vec<usize>, f64)>> {
    let n = params.len();
    let probs = final_state(params)?.probabilities();
    Ok(probs.into_iter().enumerate().map(|(j, p)| (index_bits(j, n), p)).collect())
}

/// Payoff symbols of a generalized Prisoner's Dilemma.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PdPayoffs {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub p: f64,
}

impl PdPayoffs {
    pub fn new(t: f64, r: f64, p: f64, s: f64) -> Self {
        Self { r, s, t, p }
    }

    /// `T > R > P > S`.
    pub fn is_dilemma(&self) -> bool {
        self.t > self.r && self.r > self.p && self.p > self.s
    }
}

/// A strategy `U(θ, α, 0)` of the two-parameter family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoParam {
    pub theta: f64,
    pub alpha: f64,
}

impl TwoParam {
    pub fn new(theta: f64, alpha: f64) -> Self {
        Self { theta, alpha }
    }

    pub fn to_params(self) -> Result<SU2Params> {
        SU2Params::new(self.theta, self.alpha, 0.0)
    }
}

/// Closed-form payoffs of the PD copy with player 2's strategies swapped,
/// `(M'_1, M'_2) = (S,T)P00 + (R,R)P01 + (P,P)P10 + (T,S)P11`, when both
/// players use two-parameter strategies `U(θ, α, 0)`.
pub fn two_param_payoff_closed_form(p1: TwoParam, p2: TwoParam, pd: &PdPayoffs) -> (f64, f64) {
    let (s1, c1) = (p1.theta / 2.0).sin_cos();
    let (s2, c2) = (p2.theta / 2.0).sin_cos();
    let (a1, a2) = (p1.alpha, p2.alpha);
    let w00 = ((a1 + a2).cos() * c1 * c2).powi(2);
    let w01 = (a1.cos() * c1 * s2 + a2.sin() * s1 * c2).powi(2);
    let w10 = (a1.sin() * c1 * s2 + a2.cos() * s1 * c2).powi(2);
    let w11 = ((a1 + a2).sin() * c1 * c2 - s1 * s2).powi(2);
    (w00 * pd.s + w01 * pd.r + w10 * pd.p + w11 * pd.t, w00 * pd.t + w01 * pd.r + w10 * pd.p + w11 * pd.s)
}
