//! Brute-force reference in a truncated photon-number basis.
//!
//! The Gaussian state is built twice, once as D(α)S(ξ)ρ₀S(−ξ)D(−α) and once
//! by running the amplifier Hamiltonian for the preparation time. Time
//! evolution uses the eigendecomposition of the truncated Hamiltonian, so a
//! single diagonalization serves every delay.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::charfunc::{CharVariable, MomentSet};
use crate::error::{Error, Result};
use crate::params::{hamiltonian_coeffs, require_dynamics, validate, GaussianParams, ScaledTime};

pub type CMatrix = DMatrix<Complex64>;

pub const DEFAULT_DIM: usize = 80;
pub const MIN_DIM: usize = 16;
/// Escalation stops doubling here.
pub const MAX_ESCALATED_DIM: usize = 320;
pub const MAX_DIM: usize = 512;
/// Largest population allowed in the top Fock level.
pub const LEAKAGE_GATE: f64 = 1e-10;
/// Evenly spaced times at which an evolution is checked against the gate.
/// A truncated generator can carry a state to the edge of the basis and
/// back, so the final state alone does not reveal the truncation.
pub const TRAJECTORY_SAMPLES: usize = 32;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Density operator in a truncated Fock basis together with the matching
/// annihilation operator.
#[derive(Debug, Clone)]
pub struct TruncatedState {
    pub dim: usize,
    pub rho: CMatrix,
    pub annihilator: CMatrix,
}

impl TruncatedState {
    fn gated(rho: CMatrix, annihilator: CMatrix) -> Result<Self> {
        let state = TruncatedState { dim: rho.nrows(), rho, annihilator };
        let leakage = state.leakage();
        if leakage < LEAKAGE_GATE {
            Ok(state)
        } else {
            Err(Error::Truncation { dim: state.dim, leakage })
        }
    }

    /// Population of the highest retained level, ⟨dim−1|ρ|dim−1⟩.
    pub fn leakage(&self) -> f64 {
        self.rho[(self.dim - 1, self.dim - 1)].re.abs()
    }

    pub fn trace(&self) -> Complex64 {
        self.rho.trace()
    }

    /// max |ρ − ρ†|.
    pub fn hermiticity_error(&self) -> f64 {
        max_abs_diff(&self.rho, &self.rho.adjoint())
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.rho + self.rho.adjoint()) * Complex64::new(0.5, 0.0);
        SymmetricEigen::new(herm).eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Tr[ρ X].
    pub fn expect(&self, op: &CMatrix) -> Complex64 {
        trace_product(&self.rho, op)
    }

    /// Σ_k k ρ_kk
    pub fn mean_photon_number(&self) -> f64 {
        self.diagonal_sum(|k| k)
    }

    /// Σ_k w(k) ρ_kk for operators diagonal in the number basis.
    fn diagonal_sum(&self, w: impl Fn(f64) -> f64) -> f64 {
        (0..self.dim).map(|k| w(k as f64) * self.rho[(k, k)].re).sum()
    }

    /// Normally ordered moments by direct trace.
    pub fn moments(&self) -> MomentSet {
        let mean_a = self.expect(&self.annihilator);
        let n_mean = self.mean_photon_number();
        let a2dag_a2 = self.diagonal_sum(|k| k * (k - 1.0));
        // ⟨a²⟩ = Σ_m √((m+1)(m+2)) ρ_{m+2,m}
        let aa: Complex64 =
            (0..self.dim.saturating_sub(2)).map(|m| self.rho[(m + 2, m)] * (((m + 1) * (m + 2)) as f64).sqrt()).sum();
        MomentSet { mean_a, n_mean, aa_central: aa - mean_a * mean_a, n_central: n_mean - mean_a.norm_sqr(), a2dag_a2 }
    }

    /// Tr[ρ e^{ηa†} e^{−η*a}], computed as Tr[e^{−η*a} ρ (e^{η*a})†].
    /// Both factors only lower the photon number, so truncation is exact.
    pub fn chi(&self, eta: CharVariable) -> Complex64 {
        let left = lowering_exp(self.dim, -eta.conj());
        let right = lowering_exp(self.dim, eta.conj());
        trace_product(&cmul(&left, &self.rho), &right.adjoint())
    }
}

/// Complex product through four real products, which go to a blocked GEMM.
fn cmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, Complex64::new)
}

fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// a with ⟨k−1|a|k⟩ = √k.
pub fn annihilator(dim: usize) -> CMatrix {
    let mut a = CMatrix::zeros(dim, dim);
    for k in 1..dim {
        a[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    a
}

/// Thermal state with weights (n̄/(n̄+1))^k, renormalized on the basis.
pub fn thermal_state(nbar: f64, dim: usize) -> CMatrix {
    let ratio = nbar / (nbar + 1.0);
    let weights: Vec<f64> = (0..dim).map(|k| ratio.powi(k as i32)).collect();
    let total: f64 = weights.iter().sum();
    let mut rho = CMatrix::zeros(dim, dim);
    for (k, w) in weights.iter().enumerate() {
        rho[(k, k)] = Complex64::new(w / total, 0.0);
    }
    rho
}

/// e^{λa}, upper triangular with ⟨m|e^{λa}|m+k⟩ = λ^k √((m+k)!/m!) / k!.
fn lowering_exp(dim: usize, lambda: Complex64) -> CMatrix {
    let mut e = CMatrix::zeros(dim, dim);
    for m in 0..dim {
        let mut term = ONE;
        e[(m, m)] = term;
        for k in 1..dim - m {
            term *= lambda * ((m + k) as f64).sqrt() / k as f64;
            e[(m, m + k)] = term;
        }
    }
    e
}

/// Eigendecomposition of a Hermitian generator K, giving e^{−iKs}.
#[derive(Debug, Clone)]
pub struct Propagator {
    vectors: CMatrix,
    values: Vec<f64>,
}

impl Propagator {
    pub fn new(generator: &CMatrix) -> Self {
        // Symmetrize away rounding before diagonalizing.
        let herm = (generator + generator.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(herm);
        Propagator { vectors: eig.eigenvectors, values: eig.eigenvalues.iter().cloned().collect() }
    }

    /// e^{−iKs}
    pub fn unitary(&self, s: f64) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for (j, &e) in self.values.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -e * s);
            for i in 0..scaled.nrows() {
                scaled[(i, j)] *= phase;
            }
        }
        cmul(&scaled, &self.vectors.adjoint())
    }

    /// Row `i` of e^{−iKs}.
    fn row(&self, i: usize, s: f64) -> Vec<Complex64> {
        let n = self.values.len();
        let w: Vec<Complex64> =
            (0..n).map(|k| self.vectors[(i, k)] * Complex64::from_polar(1.0, -self.values[k] * s)).collect();
        (0..n).map(|j| (0..n).map(|k| w[k] * self.vectors[(j, k)].conj()).sum()).collect()
    }

    /// Largest top-level population of e^{−iKs} ρ e^{iKs} over
    /// [`TRAJECTORY_SAMPLES`] times in (0, s_end], relative to Tr ρ.
    pub fn edge_population(&self, rho: &CMatrix, s_end: f64) -> f64 {
        let n = rho.nrows();
        let norm = rho.trace().re;
        let mut worst = 0.0f64;
        for k in 1..=TRAJECTORY_SAMPLES {
            let r = self.row(n - 1, s_end * k as f64 / TRAJECTORY_SAMPLES as f64);
            let mut pop = ZERO;
            for j in 0..n {
                let mut acc = ZERO;
                for l in 0..n {
                    acc += rho[(j, l)] * r[l].conj();
                }
                pop += r[j] * acc;
            }
            worst = worst.max(pop.re.abs() / norm);
        }
        worst
    }

    /// e^{−iKs} ρ e^{iKs}, refused if the trajectory touches the basis edge.
    pub fn evolve(&self, rho: &CMatrix, s: f64) -> Result<CMatrix> {
        let leakage = self.edge_population(rho, s);
        if leakage >= LEAKAGE_GATE {
            return Err(Error::Truncation { dim: rho.nrows(), leakage });
        }
        let u = self.unitary(s);
        Ok(cmul(&cmul(&u, rho), &u.adjoint()))
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < MIN_DIM {
        return Err(Error::domain("dim", format!("must be at least {MIN_DIM}, got {dim}")));
    }
    if dim > MAX_DIM {
        return Err(Error::domain("dim", format!("must be at most {MAX_DIM}, got {dim}")));
    }
    Ok(())
}

/// H = c a†² + c* a² + b a + b* a† on the truncated basis.
pub fn hamiltonian_matrix(params: &GaussianParams, dim: usize) -> Result<CMatrix> {
    let h = hamiltonian_coeffs(params)?;
    let a = annihilator(dim);
    let ad = a.adjoint();
    let aa = &a * &a;
    let adad = &ad * &ad;
    Ok(adad * h.c + aa * h.c.conj() + &a * h.b + ad * h.b.conj())
}

/// ρ_G = D(α) S(ξ) ρ₀ S(−ξ) D(−α) from matrix exponentials of the
/// displacement and squeeze generators.
pub fn build_gaussian_state(params: &GaussianParams, dim: usize) -> Result<TruncatedState> {
    let p = validate(*params)?;
    check_dim(dim)?;
    let a = annihilator(dim);
    let ad = a.adjoint();
    let alpha = p.alpha();
    let xi = p.xi();
    let mut rho = thermal_state(p.nbar, dim);
    if xi != ZERO {
        // S = exp(−ξ/2 a†² + ξ*/2 a²) = exp(−iK), K = i(−ξ/2 a†² + ξ*/2 a²)
        let k = ((&ad * &ad) * (-0.5 * xi) + (&a * &a) * (0.5 * xi.conj())) * I;
        rho = Propagator::new(&k).evolve(&rho, 1.0)?;
    }
    if alpha != ZERO {
        // D = exp(αa† − α*a) = exp(−iK), K = i(αa† − α*a)
        let k = (&ad * alpha - &a * alpha.conj()) * I;
        rho = Propagator::new(&k).evolve(&rho, 1.0)?;
    }
    TruncatedState::gated(rho, a)
}

/// ρ_G = e^{−iHt} ρ₀ e^{iHt} with the amplifier coefficients.
pub fn build_via_hamiltonian(params: &GaussianParams, dim: usize) -> Result<TruncatedState> {
    let p = validate(*params)?;
    check_dim(dim)?;
    let h = hamiltonian_matrix(&p, dim)?;
    let rho = Propagator::new(&h).evolve(&thermal_state(p.nbar, dim), p.t_prep)?;
    TruncatedState::gated(rho, annihilator(dim))
}

/// Everything the oracle measures at one delay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleObservables {
    pub dim: usize,
    pub moments: MomentSet,
    pub g2: f64,
    /// χ(η) at the requested arguments, in order.
    pub chi: Vec<Complex64>,
}

/// A prepared state plus the diagonalized Hamiltonian that evolves it.
#[derive(Debug, Clone)]
pub struct FockOracle {
    params: GaussianParams,
    prepared: TruncatedState,
    propagator: Option<Propagator>,
}

impl FockOracle {
    pub fn new(params: &GaussianParams, dim: usize) -> Result<Self> {
        let p = validate(*params)?;
        let prepared = build_gaussian_state(&p, dim)?;
        let propagator = if p.r > 0.0 { Some(Propagator::new(&hamiltonian_matrix(&p, dim)?)) } else { None };
        Ok(FockOracle { params: p, prepared, propagator })
    }

    pub fn dim(&self) -> usize {
        self.prepared.dim
    }

    pub fn prepared(&self) -> &TruncatedState {
        &self.prepared
    }

    /// The prepared state rebuilt as e^{−iHt} ρ₀ e^{iHt} with the stored
    /// propagator, for comparison against [`FockOracle::prepared`].
    pub fn prepared_via_hamiltonian(&self) -> Result<TruncatedState> {
        let prop = self.propagator.as_ref().ok_or_else(|| Error::domain("r", "Hamiltonian path needs r > 0"))?;
        let rho = prop.evolve(&thermal_state(self.params.nbar, self.dim()), self.params.t_prep)?;
        TruncatedState::gated(rho, self.prepared.annihilator.clone())
    }

    /// e^{−iHτ} ρ e^{iHτ} for τ = x t / r, gated along the whole
    /// trajectory; identity at x = 0.
    fn evolve(&self, x: ScaledTime, rho: &CMatrix) -> Result<CMatrix> {
        if x.value() == 0.0 {
            return Ok(rho.clone());
        }
        require_dynamics(&self.params, x)?;
        let tau = self.params.tau(x)?;
        self.propagator.as_ref().expect("r > 0 implies a propagator").evolve(rho, tau)
    }

    /// ρ(t+τ) = e^{−iHτ} ρ_G e^{iHτ}.
    pub fn evolved_state(&self, x: ScaledTime) -> Result<TruncatedState> {
        TruncatedState::gated(self.evolve(x, &self.prepared.rho)?, self.prepared.annihilator.clone())
    }

    pub fn observables(&self, x: ScaledTime, etas: &[CharVariable]) -> Result<OracleObservables> {
        let a = &self.prepared.annihilator;
        let evolved = self.evolved_state(x)?;
        // ⟨a†(0) a†(τ) a(τ) a(0)⟩ = Tr[U (a ρ_G a†) U† a†a]
        let kicked = cmul(&cmul(a, &self.prepared.rho), &a.adjoint());
        if kicked.trace().re <= 0.0 {
            return Err(Error::DegenerateState("oracle photon number vanishes".into()));
        }
        let kicked_evolved = self.evolve(x, &kicked)?;
        let n0 = self.prepared.mean_photon_number();
        let n_tau = evolved.mean_photon_number();
        if n0 <= 0.0 || n_tau <= 0.0 {
            return Err(Error::DegenerateState("oracle photon number vanishes".into()));
        }
        let correlator = (0..self.dim()).map(|k| k as f64 * kicked_evolved[(k, k)].re).sum::<f64>();
        Ok(OracleObservables {
            dim: self.dim(),
            moments: evolved.moments(),
            g2: correlator / (n0 * n_tau),
            chi: etas.iter().map(|&eta| evolved.chi(eta)).collect(),
        })
    }
}

/// Runs `f` at `dim`, doubling the dimension (up to
/// [`MAX_ESCALATED_DIM`]) while the truncation gate trips.
pub fn with_escalation<T>(dim: usize, mut f: impl FnMut(usize) -> Result<T>) -> Result<T> {
    let mut d = dim;
    loop {
        match f(d) {
            Err(Error::Truncation { .. }) if d < MAX_ESCALATED_DIM => d = (2 * d).min(MAX_ESCALATED_DIM),
            other => return other,
        }
    }
}

pub fn oracle_observables(
    params: &GaussianParams,
    x: ScaledTime,
    etas: &[CharVariable],
    dim: usize,
) -> Result<OracleObservables> {
    with_escalation(dim, |d| FockOracle::new(params, d)?.observables(x, etas))
}

/// Two-time g² from the truncated model.
pub fn oracle_g2(params: &GaussianParams, x: ScaledTime, dim: usize) -> Result<f64> {
    Ok(oracle_observables(params, x, &[], dim)?.g2)
}
