//! Lifting a classical strong isomorphism of binary games to a mapping of
//! the corresponding EWL games, and numerical verification of the lift.
//!
//! A player whose strategy bijection keeps the order of the two strategies
//! keeps their SU(2) strategy unchanged. A player whose bijection swaps them
//! has `(θ, α, β)` sent to `(π − θ, 2π − β, π − α)`, which equals
//! left-multiplication by `−iσ_x`. Together with the qubit permutation `S_η`
//! this makes the final state of the image game equal to `(⊗V) S_η |Ψ>`,
//! whose outcome distribution is the original one relabeled by `f`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::time::Instant;

use num_complex::Complex64 as C64;
use rand::seq::SliceRandom;

use crate::catalog;
use crate::error::{contract, invalid, Result};
use crate::ewl::{final_state, EwlGame};
use crate::game::{apply_mapping, is_strong_isomorphism, ClassicalGame, GameMapping, StrategyProfile};
use crate::linalg::{
    basis_index, entangler, index_bits, pauli_x, permutation_operator, su2, tensor, CMatrix, CVector, QubitPermutation,
    SU2Params,
};
use crate::sampling::{random_params, random_profile, seeded_rng};

/// End-to-end payoff tolerance for lifted mappings.
pub const LIFT_TOL: f64 = 1e-10;

/// Tolerance of the operator identities.
pub const IDENTITY_TOL: f64 = 1e-12;

/// How a lifted mapping transforms one player's strategy angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ParamTransform {
    /// `(θ, α, β) -> (θ, α, β)`
    Keep,
    /// `(θ, α, β) -> (π − θ, 2π − β, π − α)`
    Flip,
    /// `(θ, α, β) -> (π − θ, alpha_offset − β, beta_offset − α)`
    Reflect { alpha_offset: f64, beta_offset: f64 },
}

impl ParamTransform {
    pub fn apply(&self, p: &SU2Params) -> SU2Params {
        let (theta, alpha, beta) = match *self {
            Self::Keep => return *p,
            Self::Flip => (PI - p.theta(), TAU - p.beta(), PI - p.alpha()),
            Self::Reflect { alpha_offset, beta_offset } => {
                (PI - p.theta(), alpha_offset - p.beta(), beta_offset - p.alpha())
            }
        };
        SU2Params::new(theta.clamp(0.0, PI), alpha, beta).expect("reflected angles stay in range")
    }

    /// The fixed left factor `V` with `U(transformed) = V U`, when one exists.
    pub fn correction(&self) -> Option<CMatrix> {
        match self {
            Self::Keep => Some(CMatrix::identity(2)),
            Self::Flip => Some(pauli_x().scale(C64::new(0.0, -1.0))),
            Self::Reflect { .. } => None,
        }
    }
}

impl fmt::Display for ParamTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Keep => f.write_str("keep"),
            Self::Flip => f.write_str("flip"),
            Self::Reflect { alpha_offset, beta_offset } => {
                write!(f, "reflect({alpha_offset:.6}, {beta_offset:.6})")
            }
        }
    }
}

/// A mapping of quantum strategy profiles: player `i`'s strategy, transformed,
/// becomes player `η(i)`'s strategy.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedMapping {
    eta: QubitPermutation,
    transforms: Vec<ParamTransform>,
}

impl LiftedMapping {
    pub fn new(eta: Vec<usize>, transforms: Vec<ParamTransform>) -> Result<Self> {
        if eta.len() != transforms.len() {
            return invalid("one transform per player is required");
        }
        Ok(Self { eta: QubitPermutation::new(eta)?, transforms })
    }

    pub fn eta(&self) -> &QubitPermutation {
        &self.eta
    }

    pub fn transforms(&self) -> &[ParamTransform] {
        &self.transforms
    }

    pub fn num_players(&self) -> usize {
        self.transforms.len()
    }

    /// Left factors `V` placed on qubit `η(i)` for each player `i`, if all exist.
    pub fn corrections(&self) -> Option<Vec<CMatrix>> {
        let mut out = vec![CMatrix::identity(2); self.num_players()];
        for (i, t) in self.transforms.iter().enumerate() {
            out[self.eta.image(i)] = t.correction()?;
        }
        Some(out)
    }
}

impl fmt::Display for LiftedMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .transforms
            .iter()
            .enumerate()
            .map(|(i, t)| format!("{}->{}:{}", i + 1, self.eta.image(i) + 1, t))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Lift a strong isomorphism `f: g → g2` of binary games.
pub fn lift(f: &GameMapping, g: &ClassicalGame, g2: &ClassicalGame) -> Result<LiftedMapping> {
    if !g.is_binary() || !g2.is_binary() {
        return invalid("lifting needs two strategies per player");
    }
    if !is_strong_isomorphism(f, g, g2) {
        return contract("mapping is not a strong isomorphism between the games");
    }
    let transforms =
        (0..f.num_players()).map(|i| if f.swaps(i) { ParamTransform::Flip } else { ParamTransform::Keep }).collect();
    LiftedMapping::new(f.eta().to_vec(), transforms)
}

/// Image of a strategy profile: position `η(i)` holds player `i`'s transformed strategy.
pub fn apply_lift(lm: &LiftedMapping, params: &[SU2Params]) -> Result<Vec<SU2Params>> {
    if params.len() != lm.num_players() {
        return invalid(format!("{} strategies for a mapping over {} players", params.len(), lm.num_players()));
    }
    let mut out = vec![SU2Params::identity(); params.len()];
    for (i, p) in params.iter().enumerate() {
        out[lm.eta.image(i)] = lm.transforms[i].apply(p);
    }
    Ok(out)
}

/// `(⊗V) S_η |Ψ>`, the final state the image game reaches for Keep/Flip lifts.
pub fn predicted_image_state(lm: &LiftedMapping, psi: &CVector) -> Result<CVector> {
    let n = lm.num_players();
    let v = match lm.corrections() {
        Some(v) => tensor(&v)?,
        None => return invalid("only keep/flip lifts have a fixed correction"),
    };
    let s = permutation_operator(&lm.eta, n)?;
    Ok((&v * &s).apply(psi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftVerdict {
    Pass,
    Fail,
    /// Some image strategy left the target player's strategy space.
    SpaceEscape,
}

impl fmt::Display for LiftVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::SpaceEscape => "space-escape",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftReport {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Largest `|u_i(U) − u'_{η(i)}(f̃(U))|` over samples and players.
    pub max_deviation: f64,
    /// Number of samples whose image left the target spaces.
    pub escapes: usize,
    /// First escape seen: target player and the offending strategy.
    pub first_escape: Option<(usize, SU2Params)>,
    pub verdict: LiftVerdict,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.verdict == LiftVerdict::Pass
    }
}

/// Sample strategy profiles from `g`'s spaces and compare payoffs with the
/// image game at the lifted profile.
pub fn verify_lift(lm: &LiftedMapping, g: &EwlGame, g2: &EwlGame, samples: usize, seed: u64) -> Result<LiftReport> {
    let n = g.num_players();
    if g2.num_players() != n || lm.num_players() != n {
        return invalid("games and mapping disagree on the number of players");
    }
    let mut rng = seeded_rng(seed);
    let mut max_deviation: f64 = 0.0;
    let mut escapes = 0;
    let mut first_escape = None;
    for _ in 0..samples {
        let params = random_profile(&mut rng, g.spaces());
        let image = apply_lift(lm, &params)?;
        if let Some(j) = g2.first_space_violation(&image) {
            escapes += 1;
            first_escape.get_or_insert((j, image[j]));
        }
        let before = g.payoffs_unrestricted(&params)?;
        let after = g2.payoffs_unrestricted(&image)?;
        for (i, u) in before.iter().enumerate() {
            max_deviation = max_deviation.max((u - after[lm.eta.image(i)]).abs());
        }
    }
    let verdict = if escapes > 0 {
        LiftVerdict::SpaceEscape
    } else if max_deviation <= LIFT_TOL {
        LiftVerdict::Pass
    } else {
        LiftVerdict::Fail
    };
    Ok(LiftReport { samples, seed, tolerance: LIFT_TOL, max_deviation, escapes, first_escape, verdict })
}

/// The quantum mapping of the anti-diagonal pair: `η = id` and
/// `(θ, α, β) -> (π − θ, π/4 − β, π/4 − α)` for both players.
pub fn antidiagonal_lift() -> LiftedMapping {
    let t = ParamTransform::Reflect { alpha_offset: PI / 4.0, beta_offset: PI / 4.0 };
    LiftedMapping::new(vec![0, 1], vec![t, t]).expect("valid mapping")
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub label: &'static str,
    pub statement: &'static str,
    pub max_residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub draws: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub checks: Vec<IdentityCheck>,
    pub elapsed_secs: f64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Numerically check the operator identities behind the lift construction
/// over `draws` seeded random strategy draws.
pub fn operator_identity_suite(draws: usize, seed: u64) -> IdentityReport {
    let start = Instant::now();
    let mut rng = seeded_rng(seed);
    let full = crate::ewl::StrategySpace::FullSU2;
    let minus_i = C64::new(0.0, -1.0);
    let x = pauli_x();
    let id2 = CMatrix::identity(2);
    let minus_i_x = x.scale(minus_i);
    let xix = tensor(&[x.clone(), id2.clone(), x.clone()]).expect("nonempty");
    let cycle = QubitPermutation::new(vec![1, 2, 0]).expect("valid permutation");
    let s_cycle = permutation_operator(&cycle, 3).expect("three qubits");
    let j3 = entangler(3).expect("three qubits");
    let f = catalog::three_player_mapping();

    let mut res = [0.0f64; 6];
    for _ in 0..draws {
        let ps: Vec<SU2Params> = (0..3).map(|_| random_params(&mut rng, full)).collect();
        let us: Vec<CMatrix> = ps.iter().map(su2).collect();
        let (p1, p2, p3) = (ps[0], ps[1], ps[2]);

        // (a) two-parameter strategies
        let two = SU2Params::new(p1.theta(), p1.alpha(), 0.0).expect("in range");
        let reflected = SU2Params::new(PI - two.theta(), 0.0, PI - two.alpha()).expect("in range");
        res[0] = res[0].max(su2(&reflected).max_abs_diff(&(&minus_i_x * &su2(&two))));

        // (b) general flip
        let flipped = ParamTransform::Flip.apply(&p1);
        res[1] = res[1].max(su2(&flipped).max_abs_diff(&(&minus_i_x * &us[0])));

        // (c) three-factor reduction
        let lhs =
            tensor(&[su2(&ParamTransform::Flip.apply(&p3)), us[0].clone(), su2(&ParamTransform::Flip.apply(&p2))])
                .expect("nonempty");
        let rhs = (&xix * &tensor(&[us[2].clone(), us[0].clone(), us[1].clone()]).expect("nonempty"))
            .scale(-C64::new(1.0, 0.0));
        res[2] = res[2].max(lhs.max_abs_diff(&rhs));

        // (d) conjugation by S_η reorders the factors, for the 3-cycle and a random η
        let mut perm: Vec<usize> = (0..3).collect();
        perm.shuffle(&mut rng);
        let random_eta = QubitPermutation::new(perm).expect("shuffled permutation");
        for eta in [&cycle, &random_eta] {
            let s = permutation_operator(eta, 3).expect("three qubits");
            let conj = &(&s * &tensor(&us).expect("nonempty")) * &s.transpose();
            let inv = eta.inverse();
            let reordered: Vec<CMatrix> = (0..3).map(|k| us[inv.image(k)].clone()).collect();
            res[3] = res[3].max(conj.max_abs_diff(&tensor(&reordered).expect("nonempty")));
        }

        // (f) the relabeling operator sends |j> amplitudes to |f(j)>
        let psi = final_state(&ps).expect("three players");
        let moved = (&xix * &s_cycle).apply(&psi);
        for j in 0..8 {
            let image = apply_mapping(&f, &StrategyProfile(index_bits(j, 3))).expect("binary profile");
            let k = basis_index(image.indices());
            res[5] = res[5].max((moved.entries()[k].norm() - psi.entries()[j].norm()).abs());
        }
    }

    // (e) commutators are parameter free
    let neg_xix = xix.scale(C64::new(-1.0, 0.0));
    let jd = j3.adjoint();
    res[4] = [jd.commutator(&neg_xix).max_abs(), jd.commutator(&s_cycle).max_abs(), j3.commutator(&s_cycle).max_abs()]
        .into_iter()
        .fold(0.0, f64::max);

    let statements = [
        ("a", "U(pi-t, 0, pi-a) = -i sx U(t, a, 0)"),
        ("b", "U(pi-t, 2pi-b, pi-a) = -i sx U(t, a, b)"),
        ("c", "flip(U3) x U1 x flip(U2) = -(sx x 1 x sx)(U3 x U1 x U2)"),
        ("d", "S_eta (x U_i) S_eta^T = x U_{eta^-1(i)}"),
        ("e", "[J^dag, -sx x 1 x sx] = [J^dag, S_eta] = [J, S_eta] = 0"),
        ("f", "|<f(j)| (sx x 1 x sx) S_eta |psi>| = |<j|psi>|"),
    ];
    let checks = statements
        .iter()
        .zip(res)
        .map(|(&(label, statement), r)| IdentityCheck { label, statement, max_residual: r, passed: r <= IDENTITY_TOL })
        .collect();
    IdentityReport { draws, seed, tolerance: IDENTITY_TOL, checks, elapsed_secs: start.elapsed().as_secs_f64() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ewl::StrategySpace;
    use crate::game::image_game;
    use crate::sampling::{random_integer_game, random_mapping};

    fn p(t: f64, a: f64, b: f64) -> SU2Params {
        SU2Params::new(t, a, b).unwrap()
    }

    #[test]
    fn lift_flags() {
        let (g, g2) = catalog::prisoners_dilemma_pair(5.0, 3.0, 1.0, 0.0).unwrap();
        let id = lift(&GameMapping::identity(&[2, 2]), &g, &g).unwrap();
        assert_eq!(id.transforms(), &[ParamTransform::Keep, ParamTransform::Keep]);
        let lm = lift(&catalog::column_swap_mapping(), &g, &g2).unwrap();
        assert_eq!(lm.transforms(), &[ParamTransform::Keep, ParamTransform::Flip]);
        assert!(lift(&GameMapping::identity(&[2, 2]), &g, &g2).is_err());

        let (h, h2) =
            catalog::three_player_pair(|j| vec![j[0] as f64, 2.0 * j[1] as f64 + 0.5, (j[2] + j[0]) as f64]).unwrap();
        let lm = lift(&catalog::three_player_mapping(), &h, &h2).unwrap();
        assert_eq!(lm.transforms(), &[ParamTransform::Keep, ParamTransform::Flip, ParamTransform::Flip]);

        let wide = ClassicalGame::from_fn(ClassicalGame::default_labels(&[2, 3]), |_| vec![0.0; 2]).unwrap();
        assert!(lift(&GameMapping::identity(&[2, 3]), &wide, &wide).is_err());
    }

    #[test]
    fn apply_three_player_lift() {
        let lm =
            LiftedMapping::new(vec![1, 2, 0], vec![ParamTransform::Keep, ParamTransform::Flip, ParamTransform::Flip])
                .unwrap();
        let ps = [p(0.3, 0.4, 0.5), p(1.1, 1.2, 1.3), p(2.1, 2.2, 2.3)];
        let out = apply_lift(&lm, &ps).unwrap();
        let expected = [p(PI - 2.1, TAU - 2.3, PI - 2.2), p(0.3, 0.4, 0.5), p(PI - 1.1, TAU - 1.3, PI - 1.2)];
        for (o, e) in out.iter().zip(&expected) {
            assert!(o.approx_eq(e, 1e-14), "{o} vs {e}");
        }
        let id = LiftedMapping::new(vec![0, 1], vec![ParamTransform::Keep; 2]).unwrap();
        assert_eq!(apply_lift(&id, &ps[..2]).unwrap(), ps[..2].to_vec());
        assert!(apply_lift(&id, &ps).is_err());
    }

    #[test]
    fn double_flip_is_a_global_sign() {
        // (−iσ_x)² = −1: angles move by π but the payoffs cannot change
        let (g, _) = catalog::prisoners_dilemma_pair(5.0, 3.0, 1.0, 0.0).unwrap();
        let q = EwlGame::full(g).unwrap();
        let mut rng = seeded_rng(12);
        let lm = LiftedMapping::new(vec![0, 1], vec![ParamTransform::Flip, ParamTransform::Keep]).unwrap();
        for _ in 0..100 {
            let ps = random_profile(&mut rng, &[StrategySpace::FullSU2; 2]);
            let once = apply_lift(&lm, &ps).unwrap();
            let twice = apply_lift(&lm, &once).unwrap();
            assert!(su2(&twice[0]).approx_eq(&-&su2(&ps[0]), 1e-12));
            assert_eq!(twice[1], ps[1]);
            let (u, w) = (q.payoffs_unrestricted(&ps).unwrap(), q.payoffs_unrestricted(&twice).unwrap());
            assert!(u.iter().zip(&w).all(|(a, b)| (a - b).abs() < 1e-12));
        }
    }

    #[test]
    fn flip_sends_alpha_space_to_beta_space() {
        let mut rng = seeded_rng(13);
        for _ in 0..100 {
            let q = random_params(&mut rng, StrategySpace::TwoParamAlpha);
            let out = ParamTransform::Flip.apply(&q);
            assert_eq!(out.alpha(), 0.0);
            assert!(StrategySpace::TwoParamBeta.contains(&out));
            let expected = SU2Params::new(PI - q.theta(), 0.0, PI - q.alpha()).unwrap();
            assert_eq!(out, expected);
        }
    }

    #[test]
    fn pd_lift_into_beta_space_passes() {
        let (g, g2) = catalog::prisoners_dilemma_pair(5.0, 3.0, 1.0, 0.0).unwrap();
        use StrategySpace::*;
        let q = EwlGame::new(g.clone(), vec![TwoParamAlpha, TwoParamAlpha]).unwrap();
        let q2 = EwlGame::new(g2.clone(), vec![TwoParamAlpha, TwoParamBeta]).unwrap();
        let lm = lift(&catalog::column_swap_mapping(), &g, &g2).unwrap();
        let report = verify_lift(&lm, &q, &q2, 200, 1).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn pd_two_param_games_admit_no_keep_flip_lift() {
        let (g, g2) = catalog::prisoners_dilemma_pair(5.0, 3.0, 1.0, 0.0).unwrap();
        let q = EwlGame::new(g, vec![StrategySpace::TwoParamAlpha; 2]).unwrap();
        let q2 = EwlGame::new(g2, vec![StrategySpace::TwoParamAlpha; 2]).unwrap();
        let options = [ParamTransform::Keep, ParamTransform::Flip];
        for eta in [vec![0, 1], vec![1, 0]] {
            for &t1 in &options {
                for &t2 in &options {
                    let lm = LiftedMapping::new(eta.clone(), vec![t1, t2]).unwrap();
                    let r = verify_lift(&lm, &q, &q2, 100, 2).unwrap();
                    assert!(!r.passed(), "{lm} unexpectedly passed");
                    let has_flip = t1 == ParamTransform::Flip || t2 == ParamTransform::Flip;
                    let expected = if has_flip { LiftVerdict::SpaceEscape } else { LiftVerdict::Fail };
                    assert_eq!(r.verdict, expected, "{lm}");
                }
            }
        }
    }

    #[test]
    fn three_player_lift_passes() {
        let (h, h2) = catalog::three_player_pair(|j| {
            let k = (4 * j[0] + 2 * j[1] + j[2]) as f64;
            vec![k, 7.0 - k, (k * 3.0) % 5.0]
        })
        .unwrap();
        let lm = lift(&catalog::three_player_mapping(), &h, &h2).unwrap();
        let r = verify_lift(&lm, &EwlGame::full(h).unwrap(), &EwlGame::full(h2).unwrap(), 200, 3).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn image_state_is_corrected_permutation() {
        let mut rng = seeded_rng(14);
        for n in [2, 3, 4] {
            let shape = vec![2; n];
            for _ in 0..10 {
                let g = random_integer_game(&mut rng, &shape, -5, 5);
                let f = random_mapping(&mut rng, &shape);
                let g2 = image_game(&f, &g).unwrap();
                let lm = lift(&f, &g, &g2).unwrap();
                let ps = random_profile(&mut rng, &vec![StrategySpace::FullSU2; n]);
                let psi = final_state(&ps).unwrap();
                let image = final_state(&apply_lift(&lm, &ps).unwrap()).unwrap();
                assert!(image.max_abs_diff(&predicted_image_state(&lm, &psi).unwrap()) < 1e-12);
            }
        }
    }

    #[test]
    fn antidiagonal_lift_preserves_payoffs() {
        let (g, g2) = catalog::converse_counterexample();
        let r =
            verify_lift(&antidiagonal_lift(), &EwlGame::full(g).unwrap(), &EwlGame::full(g2).unwrap(), 300, 4).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(antidiagonal_lift().corrections().is_none());
    }

    #[test]
    fn antidiagonal_image_state_is_signed_swap() {
        // F = |00><00| + |01><10| + |10><01| - |11><11|; the image state is exactly F|Ψ>
        let mut fm = CMatrix::zeros(4, 4);
        for (ket, bra, sign) in [(0, 0, 1.0), (1, 2, 1.0), (2, 1, 1.0), (3, 3, -1.0)] {
            fm[(ket, bra)] = C64::new(sign, 0.0);
        }
        let mut rng = seeded_rng(15);
        let lm = antidiagonal_lift();
        for _ in 0..100 {
            let ps = random_profile(&mut rng, &[StrategySpace::FullSU2; 2]);
            let psi = final_state(&ps).unwrap();
            let image = final_state(&apply_lift(&lm, &ps).unwrap()).unwrap();
            assert!(image.max_abs_diff(&fm.apply(&psi)) < 1e-12);
        }
    }

    #[test]
    fn identity_suite_passes() {
        let report = operator_identity_suite(200, 5);
        for c in &report.checks {
            assert!(c.passed, "({}) {} residual {:e}", c.label, c.statement, c.max_residual);
        }
    }

    #[test]
    fn two_param_reflection_is_minus_i_sigma_x() {
        // U(π−θ, 0, π−α) is −iσ_x U(θ, α, 0); with +iσ_x it is off by exactly −1
        let x = pauli_x();
        let (theta, alpha) = (0.7, 2.9);
        let lhs = su2(&p(PI - theta, 0.0, PI - alpha));
        let base = su2(&p(theta, alpha, 0.0));
        let plus = &x.scale(C64::new(0.0, 1.0)) * &base;
        assert!(lhs.approx_eq(&(-&plus), 1e-14));
        assert!(su2(&p(PI, 0.0, PI)).approx_eq(&x.scale(C64::new(0.0, -1.0)), 1e-15));
    }

    #[test]
    fn dual_vectors_move_inversely() {
        // <j| S_η = (S_η† |j>)†, so S_η acts on bras by the inverse relabeling
        let eta = QubitPermutation::new(vec![1, 2, 0]).unwrap();
        let s = permutation_operator(&eta, 3).unwrap();
        for j in 0..8 {
            let bits = index_bits(j, 3);
            // <j| S picks up the input ket whose moved bits equal j
            let source: Vec<usize> = (0..3).map(|i| bits[eta.image(i)]).collect();
            let k = basis_index(&source);
            for col in 0..8 {
                let expected = if col == k { 1.0 } else { 0.0 };
                assert_eq!(s[(j, col)].re, expected);
            }
            assert_eq!(s.adjoint().apply(&CVector::basis(8, j)), CVector::basis(8, k));
        }
    }
}
