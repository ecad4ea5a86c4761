//! The bootstrap engine.
//!
//! State lives in *slowness* coordinates `s_i = 1/k_i`: the reciprocal of the
//! integrability index currently controlled for component `i`, with `s = 0`
//! meaning `L^∞`. In these coordinates every one-step estimate is affine: a
//! step on component `i` from a state `s` to a new slowness `t` is justified
//! exactly when
//!
//! ```text
//!   sigma_i(s) <= 1        and        sigma_i(s) - t < 1/p_c'
//! ```
//!
//! where `sigma_i(s) = max( sum_j p_ij s_j , r_i s_i , 1/theta )` is the
//! slowness of the best source norm the `i`-th equation offers (the Holder
//! split of the product term, the self term, and the inhomogeneity floor),
//! and `1/p_c'` is the gain of the linear theory for the chosen solution
//! kind. A certificate is a finite chain of such steps from a strictly
//! below-critical initial state to the all-zero state, and the checker
//! re-derives every inequality from scratch in exact arithmetic.

use std::fmt;

use crate::criticality::{classify, critical_exponent, CriticalExponent, VerdictStatus};
use crate::matrix::RMatrix;
use crate::rational::Rational;
use crate::scaling::{compute_chain, lambda_by_replacement};
use crate::system::SystemSpec;

/// Reciprocal integrability index in `[0, 1]`; `0` encodes `L^∞`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Slowness(Rational);

impl Slowness {
    pub fn new(value: Rational) -> Result<Self, SlownessOutOfRange> {
        if value.is_negative() || value > Rational::one() {
            return Err(SlownessOutOfRange(value));
        }
        Ok(Slowness(value))
    }

    pub fn zero() -> Self {
        Slowness(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Slowness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlownessOutOfRange(pub Rational);

impl fmt::Display for SlownessOutOfRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "slowness {} outside [0, 1]", self.0)
    }
}

impl std::error::Error for SlownessOutOfRange {}

/// Current integrability of each component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BootstrapState {
    pub s: Vec<Slowness>,
}

/// The slowness of the best source norm the `i`-th equation offers at the
/// given state.
pub fn source_slowness(spec: &SystemSpec, state: &[Rational], i: usize) -> Rational {
    let mut product_term = Rational::zero();
    for j in 0..spec.n() {
        product_term += &(spec.p_at(i, j) * &state[j]);
    }
    let self_term = &spec.r()[i] * &state[i];
    let mut sigma = product_term.max(self_term);
    if let Some(theta) = spec.theta() {
        sigma = sigma.max(theta.recip());
    }
    sigma
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCheck {
    pub valid: bool,
    pub sigma: Rational,
    pub margin: Rational,
}

/// The one-step rule. Valid iff `sigma <= 1` and `sigma - new_s < 1/p_c'`;
/// the margin is `1/p_c' - (sigma - new_s)`, positive exactly when the strict
/// inequality holds.
pub fn step_valid(
    spec: &SystemSpec,
    crit: &CriticalExponent,
    state: &BootstrapState,
    i: usize,
    new_s: &Slowness,
) -> StepCheck {
    let values: Vec<Rational> = state.s.iter().map(|s| s.value().clone()).collect();
    let sigma = source_slowness(spec, &values, i);
    let margin = &crit.inv_conjugate - &(&sigma - new_s.value());
    let valid = sigma <= Rational::one() && margin.is_positive();
    StepCheck {
        valid,
        sigma,
        margin,
    }
}

/// The limiting exponent a truncated subsystem can deliver, with sign:
/// negative means the component can be driven straight to `L^∞`, infinite
/// means every finite exponent is reachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WaypointExponent {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for WaypointExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WaypointExponent::Finite(q) => write!(f, "{q}"),
            WaypointExponent::Infinite => write!(f, "inf"),
        }
    }
}

/// Sign pattern of the waypoint exponents, scanned rank by rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WaypointCase {
    /// The rank-1 exponent is negative: the first component jumps straight
    /// to `L^∞`.
    FirstNegative,
    /// The rank-1 exponent is infinite: the first component reaches every
    /// finite integrability.
    FirstInfinite,
    /// All earlier ranks strictly positive finite; a negative entry first
    /// appears at this rank (1-based).
    NegativeAtRank { rank: usize },
    /// All earlier ranks strictly positive finite; an infinite entry first
    /// appears at this rank, the rest positive.
    InfiniteAtRank { rank: usize },
    /// Every waypoint exponent strictly positive and finite.
    AllFinitePositive,
}

impl WaypointCase {
    pub fn as_str(&self) -> String {
        match self {
            WaypointCase::FirstNegative => "first-negative".to_string(),
            WaypointCase::FirstInfinite => "first-infinite".to_string(),
            WaypointCase::NegativeAtRank { rank } => format!("negative-at-rank-{rank}"),
            WaypointCase::InfiniteAtRank { rank } => format!("infinite-at-rank-{rank}"),
            WaypointCase::AllFinitePositive => "all-finite-positive".to_string(),
        }
    }
}

/// Waypoint systems for every proper prefix of the ordering: rank `r` solves
/// the fixed point of the first `r` equations with the tail held at the
/// critical slowness `1/p_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaypointTable {
    pub order: Vec<usize>,
    /// Slowness-form solutions, rank `r = 1..=n-1`; an entry may be
    /// negative (exponent negative) or zero (exponent infinite).
    pub slowness: Vec<Vec<Rational>>,
    /// Exponent-form entries `k* = 1/w`, sign carried.
    pub exponents: Vec<Vec<WaypointExponent>>,
    pub case: WaypointCase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WaypointError {
    BadOrder,
    /// A prefix of `I-P` is singular; cannot occur for admissible structures.
    SingularPrefix { rank: usize },
}

impl fmt::Display for WaypointError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WaypointError::BadOrder => write!(f, "order is not a permutation"),
            WaypointError::SingularPrefix { rank } => {
                write!(f, "singular prefix system at rank {rank}")
            }
        }
    }
}

impl std::error::Error for WaypointError {}

/// Solve the prefix fixed-point systems in slowness form and classify the
/// sign pattern.
pub fn waypoints(spec: &SystemSpec, order: &[usize]) -> Result<WaypointTable, WaypointError> {
    let n = spec.n();
    {
        let mut seen = vec![false; n];
        if order.len() != n
            || order
                .iter()
                .any(|&i| i >= n || std::mem::replace(&mut seen[i], true))
        {
            return Err(WaypointError::BadOrder);
        }
    }
    let crit = critical_exponent(spec.d(), spec.kind());
    let inv_pc = crit.p_c.recip();
    let tail_state: Vec<Rational> = vec![inv_pc; n];
    let mut slowness = Vec::new();
    let mut exponents = Vec::new();
    for r in 1..n {
        let w = prefix_fixed_point(spec, order, r, &tail_state)
            .map_err(|_| WaypointError::SingularPrefix { rank: r })?;
        let exps = w
            .iter()
            .map(|wi| {
                if wi.is_zero() {
                    WaypointExponent::Infinite
                } else {
                    WaypointExponent::Finite(wi.recip())
                }
            })
            .collect();
        slowness.push(w);
        exponents.push(exps);
    }
    let mut case = WaypointCase::AllFinitePositive;
    for (idx, w) in slowness.iter().enumerate() {
        let rank = idx + 1;
        if w.iter().all(Rational::is_positive) {
            continue;
        }
        if w.iter().any(Rational::is_negative) {
            case = if rank == 1 {
                WaypointCase::FirstNegative
            } else {
                WaypointCase::NegativeAtRank { rank }
            };
        } else {
            case = if rank == 1 {
                WaypointCase::FirstInfinite
            } else {
                WaypointCase::InfiniteAtRank { rank }
            };
        }
        break;
    }
    Ok(WaypointTable {
        order: order.to_vec(),
        slowness,
        exponents,
        case,
    })
}

/// Fixed point of the first `r` equations of the reordered system with the
/// remaining components pinned at `tail_state` (indexed by original
/// component): solves `(I-P)_prefix w = P_tail * t - (1/p_c') * 1` exactly.
fn prefix_fixed_point(
    spec: &SystemSpec,
    order: &[usize],
    r: usize,
    tail_state: &[Rational],
) -> Result<Vec<Rational>, crate::matrix::MatrixError> {
    let crit = critical_exponent(spec.d(), spec.kind());
    let n = spec.n();
    let mut a = RMatrix::zero(r, r);
    let mut rhs = Vec::with_capacity(r);
    for ai in 0..r {
        let i = order[ai];
        for aj in 0..r {
            let j = order[aj];
            let v = if ai == aj {
                Rational::one() - spec.p_at(i, j).clone()
            } else {
                -spec.p_at(i, j)
            };
            *a.at_mut(ai, aj) = v;
        }
        let mut tail = Rational::zero();
        for aj in r..n {
            let j = order[aj];
            tail += &(spec.p_at(i, j) * &tail_state[j]);
        }
        rhs.push(tail - crit.inv_conjugate.clone());
    }
    a.solve(&rhs)
}

/// One integrability improvement: component `i` moves from `pre_state` to
/// `new_s`, justified by the source slowness `sigma` with positive `margin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub component: usize,
    pub pre_state: Vec<Slowness>,
    pub new_s: Slowness,
    pub sigma: Rational,
    pub margin: Rational,
}

/// A finite, independently checkable run of the bootstrap: from a strictly
/// below-critical initial state to all components in `L^∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BootstrapCertificate {
    /// Digest of the canonical spec serialization this certificate belongs to.
    pub spec_digest: String,
    pub initial: Vec<Slowness>,
    pub steps: Vec<Step>,
    pub final_state: Vec<Slowness>,
}

#[derive(Debug, Clone)]
pub struct CertifyConfig {
    /// Fraction of the admissible window kept as margin when choosing a
    /// step target; in `(0, 1)`.
    pub epsilon: Rational,
    pub max_steps: usize,
    /// Initial offset above the critical slowness; derived from the instance
    /// when absent.
    pub delta0: Option<Rational>,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            epsilon: Rational::new(1, 100),
            max_steps: 10_000,
            delta0: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenerateError {
    NotSupercritical { status: VerdictStatus },
    SearchExhausted { steps_emitted: usize, detail: String },
    InvalidConfig { detail: String },
}

impl fmt::Display for GenerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenerateError::NotSupercritical { status } => {
                write!(
                    f,
                    "certificate generation requires a supercritical or auto-regular verdict, got {status}"
                )
            }
            GenerateError::SearchExhausted {
                steps_emitted,
                detail,
            } => write!(
                f,
                "certificate search exhausted after {steps_emitted} steps: {detail}"
            ),
            GenerateError::InvalidConfig { detail } => write!(f, "invalid config: {detail}"),
        }
    }
}

impl std::error::Error for GenerateError {}

/// Number of prefix sweeps allowed before the tail component must unlock.
const PREFIX_SWEEP_CAP: usize = 96;
/// Halvings of the initial offset before giving up on a safe start.
const DELTA_SHRINK_CAP: usize = 200;
/// A component whose descent window has shrunk below `gain / 2^40` is pinned
/// at its current truncated limit: stepping it further cannot unlock anything
/// at ordinary input scales and only breeds gigantic rationals. Near-critical
/// instances instead restart from a smaller initial offset.
const WINDOW_FLOOR_LOG2: u32 = 40;
/// Restarts with a reduced initial offset in adaptive mode. Each retry
/// divides the offset by 4, so the deepest attempt sits `4^-30` above
/// critical.
const ADAPTIVE_RETRIES: usize = 30;

/// Generate a certificate for a supercritical (or auto-regular) spec.
///
/// Strategy: all components start just above the critical slowness.
/// Components whose source slowness already beats the gain jump straight to
/// zero and stay frozen (their column then contributes nothing, which is the
/// reduced-system induction); the rest descend by aggressive steps that keep
/// an `epsilon` fraction of the admissible window as margin, sweeping in the
/// chain order. When the waypoint table is all-finite-positive, the proper
/// prefix descends first until the last component's equation unlocks, which
/// reproduces the truncated-system limits. Every emitted step passes
/// [`step_valid`]; the checker is the final authority.
///
/// Near-critical data needs a start closer to critical than the default
/// offset: the reachable limits sit an `O(delta)` distance above the
/// truncated-system waypoints, and with too large a `delta` the descent
/// pins against them. Without an explicit `delta0` the generator retries
/// with geometrically smaller offsets before giving up.
pub fn generate_certificate(
    spec: &SystemSpec,
    config: &CertifyConfig,
) -> Result<BootstrapCertificate, GenerateError> {
    let verdict = classify(spec);
    match verdict.status {
        VerdictStatus::Supercritical | VerdictStatus::AutoRegular => {}
        status => return Err(GenerateError::NotSupercritical { status }),
    }
    if !config.epsilon.is_positive() || config.epsilon >= Rational::one() {
        return Err(GenerateError::InvalidConfig {
            detail: format!("epsilon must be in (0, 1), got {}", config.epsilon),
        });
    }
    let n = spec.n();
    let crit = critical_exponent(spec.d(), spec.kind());
    let gain = crit.inv_conjugate.clone();
    let inv_pc = crit.p_c.recip();

    let (mut delta, retries) = match &config.delta0 {
        Some(d) if d.is_positive() => (d.clone(), 0),
        Some(d) => {
            return Err(GenerateError::InvalidConfig {
                detail: format!("delta0 must be positive, got {d}"),
            })
        }
        None => (
            (Rational::one() - inv_pc.clone()) * Rational::new(1, 100),
            ADAPTIVE_RETRIES,
        ),
    };

    // component sweep order: the chain ordering when available, otherwise by
    // ascending replacement determinant (a maximizer of the rate last)
    let order: Vec<usize> = match compute_chain(spec) {
        Ok(chain) => chain.permutation,
        Err(_) => {
            let lambda = lambda_by_replacement(spec);
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by(|&a, &b| lambda[a].cmp(&lambda[b]).then(a.cmp(&b)));
            idx
        }
    };

    let mut last_err = None;
    for _ in 0..=retries {
        match generate_with_offset(spec, config, &order, &gain, &inv_pc, delta.clone()) {
            Ok(cert) => return Ok(cert),
            Err(e @ GenerateError::SearchExhausted { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        delta = delta * Rational::new(1, 4);
    }
    Err(last_err.expect("at least one attempt ran"))
}

fn generate_with_offset(
    spec: &SystemSpec,
    config: &CertifyConfig,
    order: &[usize],
    gain: &Rational,
    inv_pc: &Rational,
    mut delta: Rational,
) -> Result<BootstrapCertificate, GenerateError> {
    let n = spec.n();

    // shrink until the start state is legal, no component is self-stalled by
    // its own r_i term, and the cheapest row can move
    let min_row_sum = (0..n).map(|i| spec.row_sum(i)).min().expect("n >= 1");
    let mut shrinks = 0;
    let s0 = loop {
        let s0 = inv_pc + &delta;
        let legal = s0 <= Rational::one();
        let no_self_stall = (0..n).all(|i| {
            let ri = &spec.r()[i];
            *ri <= Rational::one() || &(&(ri - &Rational::one()) * &s0) < gain
        });
        let entry_row_usable = &min_row_sum * &s0 <= Rational::one();
        if legal && no_self_stall && entry_row_usable {
            break s0;
        }
        delta = delta * Rational::new(1, 2);
        shrinks += 1;
        if shrinks > DELTA_SHRINK_CAP {
            return Err(GenerateError::SearchExhausted {
                steps_emitted: 0,
                detail: "no legal initial offset: side conditions unsatisfiable".to_string(),
            });
        }
    };

    let window_floor = gain * &Rational::new(1, 1i64 << WINDOW_FLOOR_LOG2);
    let mut gen = Generator {
        spec,
        gain,
        epsilon: &config.epsilon,
        window_floor,
        max_steps: config.max_steps,
        state: vec![s0.clone(); n],
        frozen: vec![false; n],
        steps: Vec::new(),
    };

    // prefix descent toward the truncated-system limits when every waypoint
    // exponent is positive finite
    if n >= 2 {
        if let Ok(table) = waypoints(spec, order) {
            if table.case == WaypointCase::AllFinitePositive {
                let tail = order[n - 1];
                let mut sweeps = 0;
                while sweeps < PREFIX_SWEEP_CAP {
                    let sig_tail = source_slowness(spec, &gen.state, tail);
                    if sig_tail <= Rational::one() && &(&sig_tail - &gen.state[tail]) < gain {
                        break;
                    }
                    let mut moved = false;
                    for &i in &order[..n - 1] {
                        moved |= gen.greedy_step(i)?;
                    }
                    if !moved {
                        break;
                    }
                    sweeps += 1;
                }
            }
        }
    }

    loop {
        let mut progress = false;
        // zero jumps to fixpoint
        loop {
            let mut fired = false;
            for &i in order {
                if gen.frozen[i] {
                    continue;
                }
                let sigma = source_slowness(spec, &gen.state, i);
                if sigma <= Rational::one() && &sigma < gain {
                    gen.emit(i, Rational::zero(), sigma)?;
                    gen.frozen[i] = true;
                    fired = true;
                    progress = true;
                }
            }
            if !fired {
                break;
            }
        }
        if gen.frozen.iter().all(|&f| f) {
            let final_state: Vec<Slowness> = gen
                .state
                .iter()
                .map(|v| Slowness::new(v.clone()).expect("state stays in range"))
                .collect();
            return Ok(BootstrapCertificate {
                spec_digest: crate::formats::spec_document::digest_hex(spec),
                initial: vec![Slowness::new(s0).expect("initial in range"); n],
                steps: gen.steps,
                final_state,
            });
        }
        for &i in order {
            if gen.frozen[i] {
                continue;
            }
            progress |= gen.greedy_step(i)?;
        }
        if !progress {
            return Err(GenerateError::SearchExhausted {
                steps_emitted: gen.steps.len(),
                detail: "no component can improve: descent pinned at its truncated limits (a smaller initial offset may unlock it)"
                    .to_string(),
            });
        }
    }
}

struct Generator<'a> {
    spec: &'a SystemSpec,
    gain: &'a Rational,
    epsilon: &'a Rational,
    /// Descent windows below this are treated as pinned; see
    /// [`WINDOW_FLOOR_LOG2`].
    window_floor: Rational,
    max_steps: usize,
    state: Vec<Rational>,
    frozen: Vec<bool>,
    steps: Vec<Step>,
}

impl Generator<'_> {
    /// Aggressive valid step on component `i` if one exists: the new slowness
    /// lands in the open window `(sigma - gain, current)`, biased toward the
    /// lower end with an `epsilon` fraction kept as margin, then simplified
    /// to the roundest rational in the window.
    fn greedy_step(&mut self, i: usize) -> Result<bool, GenerateError> {
        let sigma = source_slowness(self.spec, &self.state, i);
        if sigma > Rational::one() {
            return Ok(false);
        }
        let bound = &sigma - self.gain;
        if bound >= self.state[i] {
            return Ok(false);
        }
        if bound.is_negative() {
            // zero-jump territory; handled by the caller's jump sweep
            return Ok(false);
        }
        let window = &self.state[i] - &bound;
        if window <= self.window_floor {
            // pinned against the current truncated limit
            return Ok(false);
        }
        let backoff = &bound + &(self.epsilon * &window);
        let new_s = Rational::simplest_in_open(&bound, &backoff);
        self.emit(i, new_s, sigma)?;
        Ok(true)
    }

    fn emit(&mut self, i: usize, new_s: Rational, sigma: Rational) -> Result<(), GenerateError> {
        if self.steps.len() >= self.max_steps {
            return Err(GenerateError::SearchExhausted {
                steps_emitted: self.steps.len(),
                detail: "step budget exhausted".to_string(),
            });
        }
        let margin = self.gain - &(&sigma - &new_s);
        debug_assert!(margin.is_positive(), "generator emitted an invalid step");
        debug_assert!(
            new_s < self.state[i],
            "generator emitted a non-descending step"
        );
        let pre_state = self
            .state
            .iter()
            .map(|v| Slowness::new(v.clone()).expect("state in range"))
            .collect();
        self.steps.push(Step {
            component: i,
            pre_state,
            new_s: Slowness::new(new_s.clone()).expect("target in range"),
            sigma,
            margin,
        });
        self.state[i] = new_s;
        Ok(())
    }
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckFailure {
    MalformedCertificate { detail: String },
    /// Initial slowness not strictly above `1/p_c` (or outside `[0, 1]`).
    IllegalInitialState,
    /// Recomputed source slowness exceeds 1: no Lebesgue exponent backs it.
    SigmaTooLarge,
    /// Stored pre-state or stored sigma disagrees with the replayed state:
    /// the step sequence does not chain.
    ChainBroken,
    /// `sigma - new_s >= 1/p_c'`: the linear estimate does not cover the jump.
    MarginViolation,
    /// Stored margin differs from the recomputed one.
    MarginMismatch,
    /// Step does not strictly decrease its component.
    NotDescending,
    /// Stored final state differs from the replayed one.
    FinalStateMismatch,
    /// Final state is not all-zero.
    IncompleteFinalState,
}

impl CheckFailure {
    pub fn as_str(&self) -> String {
        match self {
            CheckFailure::MalformedCertificate { detail } => {
                format!("malformed-certificate: {detail}")
            }
            CheckFailure::IllegalInitialState => "illegal-initial-state".to_string(),
            CheckFailure::SigmaTooLarge => "sigma-too-large".to_string(),
            CheckFailure::ChainBroken => "chain-broken".to_string(),
            CheckFailure::MarginViolation => "margin-violation".to_string(),
            CheckFailure::MarginMismatch => "margin-mismatch".to_string(),
            CheckFailure::NotDescending => "not-descending".to_string(),
            CheckFailure::FinalStateMismatch => "final-state-mismatch".to_string(),
            CheckFailure::IncompleteFinalState => "incomplete-final-state".to_string(),
        }
    }
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_str())
    }
}

/// Location of the first failure: `step` is the 0-based step index, `None`
/// for failures of the preamble (shape, initial state) or of the final state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFinding {
    pub step: Option<usize>,
    pub reason: CheckFailure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub ok: bool,
    pub first_failure: Option<CheckFinding>,
}

impl CheckOutcome {
    fn fail(step: Option<usize>, reason: CheckFailure) -> Self {
        CheckOutcome {
            ok: false,
            first_failure: Some(CheckFinding { step, reason }),
        }
    }
}

/// Re-derive every step of a certificate from scratch and accept only if the
/// whole chain is sound. Shares no code with the generator's step selection;
/// the source slowness is recomputed inline.
pub fn check_certificate(spec: &SystemSpec, cert: &BootstrapCertificate) -> CheckOutcome {
    let n = spec.n();
    let crit = critical_exponent(spec.d(), spec.kind());
    let gain = &crit.inv_conjugate;
    let inv_pc = crit.p_c.recip();

    if cert.initial.len() != n {
        return CheckOutcome::fail(
            None,
            CheckFailure::MalformedCertificate {
                detail: format!(
                    "initial state has {} entries, expected {n}",
                    cert.initial.len()
                ),
            },
        );
    }
    if cert.final_state.len() != n {
        return CheckOutcome::fail(
            None,
            CheckFailure::MalformedCertificate {
                detail: format!(
                    "final state has {} entries, expected {n}",
                    cert.final_state.len()
                ),
            },
        );
    }
    for s in &cert.initial {
        // strictly below-critical norm control: s > 1/p_c
        if *s.value() <= inv_pc || *s.value() > Rational::one() {
            return CheckOutcome::fail(None, CheckFailure::IllegalInitialState);
        }
    }

    let mut state: Vec<Rational> = cert.initial.iter().map(|s| s.value().clone()).collect();
    for (t, step) in cert.steps.iter().enumerate() {
        let i = step.component;
        if i >= n {
            return CheckOutcome::fail(
                Some(t),
                CheckFailure::MalformedCertificate {
                    detail: format!("component {} out of range", i + 1),
                },
            );
        }
        if step.pre_state.len() != n
            || step
                .pre_state
                .iter()
                .zip(state.iter())
                .any(|(a, b)| a.value() != b)
        {
            return CheckOutcome::fail(Some(t), CheckFailure::ChainBroken);
        }
        // independent recomputation of the source slowness
        let mut sigma = Rational::zero();
        for j in 0..n {
            sigma += &(spec.p_at(i, j) * &state[j]);
        }
        let self_term = &spec.r()[i] * &state[i];
        if self_term > sigma {
            sigma = self_term;
        }
        if let Some(theta) = spec.theta() {
            let floor = theta.recip();
            if floor > sigma {
                sigma = floor;
            }
        }
        if sigma > Rational::one() {
            return CheckOutcome::fail(Some(t), CheckFailure::SigmaTooLarge);
        }
        if step.sigma != sigma {
            return CheckOutcome::fail(Some(t), CheckFailure::ChainBroken);
        }
        let deficit = &sigma - step.new_s.value();
        if &deficit >= gain {
            return CheckOutcome::fail(Some(t), CheckFailure::MarginViolation);
        }
        if step.new_s.value() >= &state[i] {
            return CheckOutcome::fail(Some(t), CheckFailure::NotDescending);
        }
        let margin = gain - &deficit;
        if step.margin != margin {
            return CheckOutcome::fail(Some(t), CheckFailure::MarginMismatch);
        }
        state[i] = step.new_s.value().clone();
    }

    if cert
        .final_state
        .iter()
        .zip(state.iter())
        .any(|(a, b)| a.value() != b)
    {
        return CheckOutcome::fail(None, CheckFailure::FinalStateMismatch);
    }
    if state.iter().any(|s| !s.is_zero()) {
        return CheckOutcome::fail(None, CheckFailure::IncompleteFinalState);
    }
    CheckOutcome {
        ok: true,
        first_failure: None,
    }
}
