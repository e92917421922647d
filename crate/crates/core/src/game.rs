//! Finite strategic-form games, game mappings and strong isomorphisms.

use std::fmt;

use itertools::Itertools;

use crate::error::{contract, invalid, Result};

/// Absolute tolerance for payoff equality.
pub const PAYOFF_TOL: f64 = 1e-12;

/// Absolute tolerance when checking a fitted affine relation.
pub const AFFINE_TOL: f64 = 1e-9;

/// A pure strategy profile: one strategy index per player.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyProfile(pub Vec<usize>);

impl StrategyProfile {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for StrategyProfile {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

/// A game `(N, (S_i), (u_i))` with finitely many strategies per player.
///
/// Payoffs are stored profile-major; profiles are ordered lexicographically
/// with player 0 as the most significant digit.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalGame {
    labels: Vec<Vec<String>>,
    shape: Vec<usize>,
    payoffs: Vec<f64>,
}

impl ClassicalGame {
    /// `payoffs[k]` is the payoff vector of the `k`-th profile in lexicographic order.
    pub fn new(labels: Vec<Vec<String>>, payoffs: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return invalid("a game needs at least one player");
        }
        for (i, ls) in labels.iter().enumerate() {
            if ls.len() < 2 {
                return invalid(format!("player {} has fewer than two strategies", i + 1));
            }
            if ls.iter().all_unique() {
                continue;
            }
            return invalid(format!("player {} has duplicate strategy labels", i + 1));
        }
        let shape: Vec<usize> = labels.iter().map(Vec::len).collect();
        let count: usize = shape.iter().product();
        if payoffs.len() != count {
            return invalid(format!("expected {count} payoff entries, got {}", payoffs.len()));
        }
        let mut flat = Vec::with_capacity(count * n);
        for (k, v) in payoffs.iter().enumerate() {
            if v.len() != n {
                return invalid(format!("payoff entry {k} has {} values, expected {n}", v.len()));
            }
            if let Some(x) = v.iter().find(|x| !x.is_finite()) {
                return invalid(format!("payoff entry {k} contains non-finite value {x}"));
            }
            flat.extend_from_slice(v);
        }
        Ok(Self { labels, shape, payoffs: flat })
    }

    /// Build a game by evaluating `f` on every profile.
    pub fn from_fn(labels: Vec<Vec<String>>, mut f: impl FnMut(&[usize]) -> Vec<f64>) -> Result<Self> {
        let shape: Vec<usize> = labels.iter().map(Vec::len).collect();
        let payoffs = profiles_of(&shape).map(|p| f(&p)).collect();
        Self::new(labels, payoffs)
    }

    /// Default labels `s1_0, s1_1, ...` for a given shape.
    pub fn default_labels(shape: &[usize]) -> Vec<Vec<String>> {
        shape.iter().enumerate().map(|(i, &k)| (0..k).map(|s| format!("s{}_{}", i + 1, s)).collect()).collect()
    }

    /// A bimatrix game from `[[(a00,b00),(a01,b01)],[(a10,b10),(a11,b11)]]`-style rows.
    pub fn bimatrix(row_labels: [&str; 2], col_labels: [&str; 2], cells: [[(f64, f64); 2]; 2]) -> Result<Self> {
        let labels = vec![
            row_labels.iter().map(|s| s.to_string()).collect(),
            col_labels.iter().map(|s| s.to_string()).collect(),
        ];
        Self::from_fn(labels, |p| {
            let (a, b) = cells[p[0]][p[1]];
            vec![a, b]
        })
    }

    pub fn num_players(&self) -> usize {
        self.labels.len()
    }

    pub fn num_strategies(&self, player: usize) -> usize {
        self.shape[player]
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn num_profiles(&self) -> usize {
        self.payoffs.len() / self.num_players()
    }

    pub fn is_binary(&self) -> bool {
        self.shape.iter().all(|&k| k == 2)
    }

    pub fn profile_index(&self, profile: &[usize]) -> usize {
        debug_assert_eq!(profile.len(), self.shape.len());
        profile.iter().zip(&self.shape).fold(0, |acc, (&s, &k)| acc * k + s)
    }

    pub fn profile_at(&self, index: usize) -> StrategyProfile {
        profile_at(&self.shape, index)
    }

    /// All profiles in lexicographic order.
    pub fn profiles(&self) -> impl Iterator<Item = StrategyProfile> + '_ {
        profiles_of(&self.shape).map(StrategyProfile)
    }

    pub fn contains_profile(&self, profile: &[usize]) -> bool {
        profile.len() == self.shape.len() && profile.iter().zip(&self.shape).all(|(&s, &k)| s < k)
    }

    pub fn payoff(&self, profile: &[usize], player: usize) -> f64 {
        self.payoffs[self.profile_index(profile) * self.num_players() + player]
    }

    pub fn payoff_vector(&self, profile: &[usize]) -> &[f64] {
        let n = self.num_players();
        let k = self.profile_index(profile);
        &self.payoffs[k * n..(k + 1) * n]
    }

    /// Payoffs of `player` over all profiles, in profile order.
    pub fn player_payoffs(&self, player: usize) -> Vec<f64> {
        self.payoffs.iter().skip(player).step_by(self.num_players()).copied().collect()
    }

    /// Apply `x -> scale_i * x + shift_i` to each player's payoffs.
    pub fn affine_image(&self, maps: &[AffineMap]) -> Result<Self> {
        if maps.len() != self.num_players() {
            return invalid("one affine map per player is required");
        }
        let n = self.num_players();
        let payoffs =
            self.payoffs.chunks(n).map(|v| v.iter().zip(maps).map(|(x, m)| m.scale * x + m.shift).collect()).collect();
        Self::new(self.labels.clone(), payoffs)
    }

    /// The same game with new strategy labels.
    pub fn relabeled(&self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.iter().map(Vec::len).ne(self.shape.iter().copied()) {
            return invalid("new labels do not match the game's shape");
        }
        let n = self.num_players();
        Self::new(labels, self.payoffs.chunks(n).map(<[f64]>::to_vec).collect())
    }

    pub fn format_profile(&self, profile: &[usize]) -> String {
        let parts: Vec<&str> = profile.iter().enumerate().map(|(i, &s)| self.labels[i][s].as_str()).collect();
        format!("({})", parts.join(","))
    }
}

pub(crate) fn profiles_of(shape: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    shape.iter().map(|&k| 0..k).multi_cartesian_product()
}

/// A game mapping `f = (η, (φ_i))`.
///
/// `eta[i] = η(i)` and `phi[i][k]` is the index in `S'_{η(i)}` that strategy
/// `k` of player `i` is sent to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameMapping {
    eta: Vec<usize>,
    phi: Vec<Vec<usize>>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

impl GameMapping {
    pub fn new(eta: Vec<usize>, phi: Vec<Vec<usize>>) -> Result<Self> {
        if eta.len() != phi.len() {
            return invalid("eta and phi must cover the same players");
        }
        if !is_permutation(&eta) {
            return invalid(format!("eta {eta:?} is not a bijection"));
        }
        if let Some(i) = phi.iter().position(|p| !is_permutation(p)) {
            return invalid(format!("phi for player {} is not a bijection", i + 1));
        }
        Ok(Self { eta, phi })
    }

    pub fn identity(shape: &[usize]) -> Self {
        Self { eta: (0..shape.len()).collect(), phi: shape.iter().map(|&k| (0..k).collect()).collect() }
    }

    pub fn eta(&self) -> &[usize] {
        &self.eta
    }

    pub fn phi(&self) -> &[Vec<usize>] {
        &self.phi
    }

    pub fn num_players(&self) -> usize {
        self.eta.len()
    }

    /// Whether `self` can map games of `shape` onto games of `target`.
    pub fn fits(&self, shape: &[usize], target: &[usize]) -> bool {
        shape.len() == self.eta.len()
            && target.len() == self.eta.len()
            && (0..shape.len()).all(|i| self.phi[i].len() == shape[i] && target[self.eta[i]] == shape[i])
    }

    pub fn inverse(&self) -> Self {
        let n = self.eta.len();
        let mut eta = vec![0; n];
        let mut phi = vec![Vec::new(); n];
        for i in 0..n {
            let j = self.eta[i];
            eta[j] = i;
            let mut inv = vec![0; self.phi[i].len()];
            for (k, &m) in self.phi[i].iter().enumerate() {
                inv[m] = k;
            }
            phi[j] = inv;
        }
        Self { eta, phi }
    }

    /// The mapping that applies `self` first, then `next`.
    pub fn then(&self, next: &GameMapping) -> Result<Self> {
        if self.num_players() != next.num_players() {
            return invalid("cannot compose mappings over different player counts");
        }
        let n = self.num_players();
        let mut eta = Vec::with_capacity(n);
        let mut phi = Vec::with_capacity(n);
        for i in 0..n {
            let mid = self.eta[i];
            let outer = &next.phi[mid];
            if outer.len() != self.phi[i].len() {
                return invalid("strategy counts do not line up for composition");
            }
            eta.push(next.eta[mid]);
            phi.push(self.phi[i].iter().map(|&k| outer[k]).collect());
        }
        Ok(Self { eta, phi })
    }

    /// Whether player `i`'s bijection swaps the two strategies of a binary game.
    pub fn swaps(&self, player: usize) -> bool {
        self.phi[player] == [1, 0]
    }
}

impl fmt::Display for GameMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eta: Vec<String> = self.eta.iter().enumerate().map(|(i, e)| format!("{}->{}", i + 1, e + 1)).collect();
        let phi: Vec<String> = self.phi.iter().map(|p| format!("{p:?}")).collect();
        write!(f, "eta=[{}] phi=[{}]", eta.join(" "), phi.join(" "))
    }
}

/// Map a profile through `f`: `s'_{η(i)} = φ_i(s_i)`.
pub fn apply_mapping(f: &GameMapping, s: &StrategyProfile) -> Result<StrategyProfile> {
    if s.len() != f.num_players() {
        return contract(format!("profile has {} players, mapping has {}", s.len(), f.num_players()));
    }
    let mut out = vec![0; s.len()];
    for (i, &si) in s.indices().iter().enumerate() {
        match f.phi[i].get(si) {
            Some(&t) => out[f.eta[i]] = t,
            None => return contract(format!("strategy {si} out of range for player {}", i + 1)),
        }
    }
    Ok(StrategyProfile(out))
}

/// The game `g'` for which `f` is a strong isomorphism from `g`.
///
/// Labels of the image carry a trailing prime.
pub fn image_game(f: &GameMapping, g: &ClassicalGame) -> Result<ClassicalGame> {
    let n = g.num_players();
    let mut target_shape = vec![0; n];
    for i in 0..n.min(f.num_players()) {
        target_shape[f.eta[i]] = g.num_strategies(i);
    }
    if !f.fits(g.shape(), &target_shape) {
        return invalid("mapping does not fit the game's shape");
    }
    let mut labels = vec![Vec::new(); n];
    for i in 0..n {
        let mut ls = vec![String::new(); g.num_strategies(i)];
        for (k, &m) in f.phi[i].iter().enumerate() {
            ls[m] = format!("{}'", g.labels()[i][k]);
        }
        labels[f.eta[i]] = ls;
    }
    let mut payoffs = vec![vec![0.0; n]; g.num_profiles()];
    let inv = f.inverse();
    for (k, slot) in payoffs.iter_mut().enumerate() {
        let target = profile_at(&target_shape, k);
        let source = apply_mapping(&inv, &target)?;
        for i in 0..n {
            slot[f.eta[i]] = g.payoff(source.indices(), i);
        }
    }
    ClassicalGame::new(labels, payoffs)
}

pub(crate) fn profile_at(shape: &[usize], mut index: usize) -> StrategyProfile {
    let mut p = vec![0; shape.len()];
    for (slot, &k) in p.iter_mut().zip(shape).rev() {
        *slot = index % k;
        index /= k;
    }
    StrategyProfile(p)
}

/// `u_i(s) = u'_{η(i)}(f(s))` for every player and profile, within [`PAYOFF_TOL`].
pub fn is_strong_isomorphism(f: &GameMapping, g: &ClassicalGame, g2: &ClassicalGame) -> bool {
    if !f.fits(g.shape(), g2.shape()) {
        return false;
    }
    g.profiles().all(|s| {
        let image = match apply_mapping(f, &s) {
            Ok(t) => t,
            Err(_) => return false,
        };
        (0..g.num_players())
            .all(|i| (g.payoff(s.indices(), i) - g2.payoff(image.indices(), f.eta[i])).abs() <= PAYOFF_TOL)
    })
}

/// Every strong isomorphism from `g` to `g2`, η-major lexicographic order.
pub fn find_strong_isomorphisms(g: &ClassicalGame, g2: &ClassicalGame) -> Vec<GameMapping> {
    let n = g.num_players();
    if g2.num_players() != n {
        return Vec::new();
    }
    let mut found = Vec::new();
    for eta in (0..n).permutations(n) {
        if (0..n).any(|i| g.num_strategies(i) != g2.num_strategies(eta[i])) {
            continue;
        }
        let phis = g.shape().iter().map(|&k| (0..k).permutations(k).collect::<Vec<_>>()).multi_cartesian_product();
        for phi in phis {
            let f = GameMapping { eta: eta.clone(), phi };
            if is_strong_isomorphism(&f, g, g2) {
                found.push(f);
            }
        }
    }
    found
}

/// A positive affine map `x -> scale * x + shift`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap {
    pub scale: f64,
    pub shift: f64,
}

/// Per-player positive affine maps taking `g`'s payoffs to `g2`'s, if they exist.
///
/// A player with constant payoffs in `g` gets `scale = 1`, any scale would do.
pub fn strategic_equivalence(g: &ClassicalGame, g2: &ClassicalGame) -> Option<Vec<AffineMap>> {
    if g.shape() != g2.shape() {
        return None;
    }
    (0..g.num_players()).map(|i| fit_affine(&g.player_payoffs(i), &g2.player_payoffs(i))).collect()
}

fn fit_affine(u: &[f64], v: &[f64]) -> Option<AffineMap> {
    let anchor = 0;
    // the profile farthest from the anchor gives the best-conditioned slope
    let (far, spread) = u
        .iter()
        .enumerate()
        .map(|(k, x)| (k, (x - u[anchor]).abs()))
        .fold((anchor, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    let map = if spread <= PAYOFF_TOL {
        AffineMap { scale: 1.0, shift: v[anchor] - u[anchor] }
    } else {
        let scale = (v[far] - v[anchor]) / (u[far] - u[anchor]);
        if scale <= 0.0 {
            return None;
        }
        AffineMap { scale, shift: v[anchor] - scale * u[anchor] }
    };
    let fits = u.iter().zip(v).all(|(x, y)| (map.scale * x + map.shift - y).abs() <= AFFINE_TOL);
    fits.then_some(map)
}

/// Whether some player can strictly gain by deviating from `profile`.
fn has_profitable_deviation(g: &ClassicalGame, profile: &[usize]) -> bool {
    let mut dev = profile.to_vec();
    (0..g.num_players()).any(|i| {
        let current = g.payoff(profile, i);
        let gain = (0..g.num_strategies(i)).any(|k| {
            dev[i] = k;
            g.payoff(&dev, i) > current + PAYOFF_TOL
        });
        dev[i] = profile[i];
        gain
    })
}

/// All pure Nash equilibria (weak inequality), in profile order.
pub fn pure_nash_equilibria(g: &ClassicalGame) -> Vec<StrategyProfile> {
    g.profiles().filter(|s| !has_profitable_deviation(g, s.indices())).collect()
}

/// A mixed profile of a 2×2 game: probabilities of each player's first strategy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixedProfile2x2 {
    pub p: f64,
    pub q: f64,
}

impl MixedProfile2x2 {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
            return invalid(format!("mixed profile ({p}, {q}) outside the unit square"));
        }
        Ok(Self { p, q })
    }

    fn close(&self, other: &Self) -> bool {
        (self.p - other.p).abs() <= 1e-12 && (self.q - other.q).abs() <= 1e-12
    }
}

/// Equilibria of a 2×2 bimatrix game found by support enumeration.
///
/// When `continuum` is set the game has a connected component of equilibria;
/// `profiles` then lists the component's extreme points.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedEquilibria {
    pub profiles: Vec<MixedProfile2x2>,
    pub continuum: bool,
}

impl MixedEquilibria {
    fn push(&mut self, m: MixedProfile2x2) {
        if !self.profiles.iter().any(|x| x.close(&m)) {
            self.profiles.push(m);
        }
    }
}

/// Interval of `x ∈ [0,1]` with `x·d0 + (1−x)·d1 ≥ 0`.
fn nonneg_interval(d0: f64, d1: f64) -> Option<(f64, f64)> {
    let at = |x: f64| x * d0 + (1.0 - x) * d1;
    let (lo_ok, hi_ok) = (at(0.0) >= -PAYOFF_TOL, at(1.0) >= -PAYOFF_TOL);
    match (lo_ok, hi_ok) {
        (true, true) => Some((0.0, 1.0)),
        (false, false) => None,
        _ => {
            let root = d1 / (d1 - d0);
            if lo_ok {
                Some((0.0, root))
            } else {
                Some((root, 1.0))
            }
        }
    }
}

/// All Nash equilibria of a two-player game with two strategies each.
pub fn mixed_nash_2x2(g: &ClassicalGame) -> Result<MixedEquilibria> {
    if g.shape() != [2, 2] {
        return invalid("mixed equilibria are only computed for 2x2 bimatrix games");
    }
    let a = |r: usize, c: usize| g.payoff(&[r, c], 0);
    let b = |r: usize, c: usize| g.payoff(&[r, c], 1);
    // strategy index 0 is played with probability p (row) / q (column)
    let prob = |s: usize| if s == 0 { 1.0 } else { 0.0 };
    let mut out = MixedEquilibria { profiles: Vec::new(), continuum: false };

    for s in pure_nash_equilibria(g) {
        out.push(MixedProfile2x2 { p: prob(s.0[0]), q: prob(s.0[1]) });
    }

    // row player mixes against a pure column
    for c in 0..2 {
        if (a(0, c) - a(1, c)).abs() > PAYOFF_TOL {
            continue;
        }
        let (d0, d1) = (b(0, c) - b(0, 1 - c), b(1, c) - b(1, 1 - c));
        if let Some((lo, hi)) = nonneg_interval(d0, d1) {
            if hi - lo > PAYOFF_TOL {
                out.continuum = true;
                out.push(MixedProfile2x2 { p: lo, q: prob(c) });
                out.push(MixedProfile2x2 { p: hi, q: prob(c) });
            }
        }
    }
    // column player mixes against a pure row
    for r in 0..2 {
        if (b(r, 0) - b(r, 1)).abs() > PAYOFF_TOL {
            continue;
        }
        let (d0, d1) = (a(r, 0) - a(1 - r, 0), a(r, 1) - a(1 - r, 1));
        if let Some((lo, hi)) = nonneg_interval(d0, d1) {
            if hi - lo > PAYOFF_TOL {
                out.continuum = true;
                out.push(MixedProfile2x2 { p: prob(r), q: lo });
                out.push(MixedProfile2x2 { p: prob(r), q: hi });
            }
        }
    }

    // both mix: p makes the column player indifferent, q the row player
    let col_slope = (b(0, 0) - b(0, 1)) - (b(1, 0) - b(1, 1));
    let col_const = b(1, 0) - b(1, 1);
    let row_slope = (a(0, 0) - a(1, 0)) - (a(0, 1) - a(1, 1));
    let row_const = a(0, 1) - a(1, 1);
    let solve = |slope: f64, constant: f64| -> Option<Option<f64>> {
        if slope.abs() <= PAYOFF_TOL {
            // indifferent everywhere or nowhere
            (constant.abs() <= PAYOFF_TOL).then_some(None)
        } else {
            let x = -constant / slope;
            (x > 0.0 && x < 1.0).then_some(Some(x))
        }
    };
    match (solve(col_slope, col_const), solve(row_slope, row_const)) {
        (Some(Some(p)), Some(Some(q))) => out.push(MixedProfile2x2 { p, q }),
        (Some(None), Some(_)) | (Some(_), Some(None)) => out.continuum = true,
        _ => {}
    }
    Ok(out)
}

/// Whether `f` maps the pure equilibria of `g` bijectively onto those of `g2`.
pub fn equilibria_transport_check(f: &GameMapping, g: &ClassicalGame, g2: &ClassicalGame) -> Result<bool> {
    if !is_strong_isomorphism(f, g, g2) {
        return contract("mapping is not a strong isomorphism between the games");
    }
    let mut mapped = pure_nash_equilibria(g).iter().map(|s| apply_mapping(f, s)).collect::<Result<Vec<_>>>()?;
    mapped.sort();
    let mut target = pure_nash_equilibria(g2);
    target.sort();
    Ok(mapped == target)
}
