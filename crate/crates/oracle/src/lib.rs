//! First-principles simulation of conditional teleportation on the full
//! three-system state vector.
//!
//! The protocol is simulated literally: build |Φ⟩_A ⊗ |σ⟩_BC, apply the
//! projector |σ_q⟩⟨σ_q|_AB ⊗ I_C by explicit index contraction, and read the
//! outcome probability and the conditioned state of system C off the result.
//! This crate deliberately depends only on the linear-algebra layer, so it
//! shares no code with the operator-calculus engine it is used to check.
//!
//! Index convention for the joint vector: amplitude `i·N² + j·N + k` carries
//! |i⟩_A |j⟩_B |k⟩_C.

use num_complex::Complex64;
use thiserror::Error;

use entmatch_linalg::{tol, vec_norm, PureState};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("all subsystem dimensions must be equal: got {0}, {1}, {2}")]
    DimensionMismatch(usize, usize, usize),
    #[error("shared and outcome states must have two factors")]
    WrongFactorCount,
    #[error("outcome probability {probability} is below the zero threshold; conditional state undefined")]
    ZeroProbabilityOutcome { probability: f64 },
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// Probability and conditioned output of a single measurement outcome.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub probability: f64,
    pub conditional_state: PureState,
    pub outcome_index: usize,
}

fn common_dim(shared: &PureState, sigma_q: &PureState, phi: &PureState) -> Result<usize> {
    if shared.dims().len() != 2 || sigma_q.dims().len() != 2 {
        return Err(OracleError::WrongFactorCount);
    }
    let n = phi.total_dim();
    let ok = shared.dims() == [n, n] && sigma_q.dims() == [n, n];
    if !ok {
        return Err(OracleError::DimensionMismatch(
            n,
            shared.dims()[0],
            sigma_q.dims()[0],
        ));
    }
    Ok(n)
}

/// Simulates one projective outcome of the joint measurement on A and B.
///
/// `shared` is the resource state of systems B and C, `sigma_q` the state the
/// measurement projects onto (factors A and B), and `phi` the input state of
/// system A. Returns the outcome probability and the renormalized state of
/// system C after the projection.
pub fn simulate_outcome(
    shared: &PureState,
    sigma_q: &PureState,
    phi: &PureState,
) -> Result<OracleResult> {
    let n = common_dim(shared, sigma_q, phi)?;
    let psi = phi.amplitudes();
    let sigma = shared.amplitudes();
    let proj = sigma_q.amplitudes();

    // Joint state |Φ⟩_A ⊗ |σ⟩_BC over N³ amplitudes.
    let mut joint = vec![Complex64::new(0.0, 0.0); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                joint[i * n * n + j * n + k] = psi[i] * sigma[j * n + k];
            }
        }
    }

    // Overlap of the AB factor with |σ_q⟩ for each C index:
    // c_k = Σ_ij conj(σ_q[i,j]) · joint[i,j,k].
    let mut overlap = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        for j in 0..n {
            let w = proj[i * n + j].conj();
            if w == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..n {
                overlap[k] += w * joint[i * n * n + j * n + k];
            }
        }
    }

    // Post-measurement vector (|σ_q⟩⟨σ_q| ⊗ I) |joint⟩ = |σ_q⟩ ⊗ |overlap⟩.
    let mut projected = vec![Complex64::new(0.0, 0.0); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let s = proj[i * n + j];
            for k in 0..n {
                projected[i * n * n + j * n + k] = s * overlap[k];
            }
        }
    }

    let norm = vec_norm(&projected);
    let probability = norm * norm;
    if probability <= tol::ZERO_PROBABILITY {
        return Err(OracleError::ZeroProbabilityOutcome { probability });
    }

    // The C factor, extracted by contracting the projected vector against
    // |σ_q⟩ (phase-coherent; the post-measurement state is a product).
    let mut c_state = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        for j in 0..n {
            let w = proj[i * n + j].conj();
            if w == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..n {
                c_state[k] += w * projected[i * n * n + j * n + k];
            }
        }
    }
    let cnorm = vec_norm(&c_state);
    let conditional_state = PureState::new(vec![n], c_state.iter().map(|z| z / cnorm).collect())
        .expect("normalized by construction");

    Ok(OracleResult {
        probability,
        conditional_state,
        outcome_index: 0,
    })
}

/// One entry of a whole-measurement simulation; outcomes whose probability
/// falls below the zero threshold carry no conditional state.
#[derive(Debug, Clone)]
pub struct BasisOutcome {
    pub probability: f64,
    pub conditional_state: Option<PureState>,
    pub outcome_index: usize,
}

/// Runs [`simulate_outcome`] once per outcome state of a full measurement.
pub fn simulate_basis(
    shared: &PureState,
    outcome_states: &[PureState],
    phi: &PureState,
) -> Result<Vec<BasisOutcome>> {
    let mut results = Vec::with_capacity(outcome_states.len());
    for (q, sigma_q) in outcome_states.iter().enumerate() {
        match simulate_outcome(shared, sigma_q, phi) {
            Ok(r) => results.push(BasisOutcome {
                probability: r.probability,
                conditional_state: Some(r.conditional_state),
                outcome_index: q,
            }),
            Err(OracleError::ZeroProbabilityOutcome { .. }) => results.push(BasisOutcome {
                probability: 0.0,
                conditional_state: None,
                outcome_index: q,
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(results)
}
