#pragma once

#include "diraclab/field.hpp"
#include "diraclab/params.hpp"
#include "diraclab/potentials.hpp"
#include "diraclab/scheme.hpp"

#include <optional>
#include <vector>

namespace diraclab {

/// Replayable state of one of the four finite-difference integrators.
struct FdtdState {
    Scheme scheme;
    SpinorField current;
    std::optional<SpinorField> previous;
    long n = 0;
    SimParams params;

    FdtdState(Scheme s, const SimParams& p);
};

/// Phi^1 from Phi^0 with the sin(tau/eps), sin(tau/eps^2) corrected Taylor step.
SpinorField first_step(const SimParams& params);

SpinorField step_lffd(const FdtdState& state);
SpinorField step_sifd1(const FdtdState& state);
SpinorField step_sifd2(const FdtdState& state);
SpinorField step_cnfd(const FdtdState& state);

/// One step of state.scheme, including the first step of the two-level schemes.
/// Throws BlowUpError if the result is not finite.
FdtdState advance(FdtdState state);

struct StabilityBound {
    bool unconditional = false;
    double tau_max = 0.0;
};

/// Sufficient step-size bound of each scheme for constant potentials of size Vmax, Amax.
/// Spectral schemes and CNFD report unconditional.
StabilityBound stability_bound(Scheme scheme, double eps, double h, double Vmax, double Amax);

/// h sum_j [ -(i/eps) Phi^* sigma_1 delta_x Phi + Phi^* sigma_3 Phi / eps^2 + V|Phi|^2 - A Phi^* sigma_1 Phi ].
/// Throws ContractError for time-dependent potentials.
double discrete_energy_fdtd(const SpinorField& field, const PotentialSet& potentials, double eps);

namespace kernels {

/// out = H u with central differences; H = -(i/eps) sigma_1 delta_x + sigma_3/eps^2 + V - A sigma_1.
void apply_hamiltonian(const SpinorField& u, double eps, const PotentialSamples& s, SpinorField& out);

/// The update formulas with an explicit (possibly negative) step size.
SpinorField lffd_update(const SpinorField& prev, const SpinorField& cur, double tau, double eps,
                        const PotentialSamples& s);
SpinorField sifd1_update(const SpinorField& prev, const SpinorField& cur, double tau, double eps,
                         const PotentialSamples& s);
SpinorField sifd2_update(const SpinorField& prev, const SpinorField& cur, double tau, double eps,
                         const PotentialSamples& s);
SpinorField cnfd_update(const SpinorField& cur, double tau, double eps, const PotentialSamples& half);

} // namespace kernels

/// Direct solver for (I + i tau/2 H) x = r, H the central-difference Hamiltonian on a
/// periodic 1D grid: block Thomas elimination on the 2x2 block tridiagonal part plus a
/// Woodbury correction for the two periodic corner blocks.
class CnfdSolver {
public:
    CnfdSolver(const Grid1D& grid, double eps, double tau, const PotentialSamples& half);

    /// Solves and refines until the residual is below 1e-12 ||r|| (max two refinements).
    /// Throws NumericalError if it stays above 1e-10 ||r||.
    SpinorField solve(const SpinorField& rhs) const;
    /// Single direct solve without residual control.
    void solve_raw(const cplx* ra, const cplx* rb, cplx* xa, cplx* xb) const;
    /// out = (I + i tau/2 H) x.
    void apply(const SpinorField& x, SpinorField& out) const;
    /// out = (I - i tau/2 H) x.
    void apply_explicit(const SpinorField& x, SpinorField& out) const;

    double last_residual() const noexcept { return last_residual_; }

private:
    void thomas(const cplx* ra, const cplx* rb, cplx* xa, cplx* xb) const;

    Grid1D grid_;
    double c_;  // tau/(4 eps h)
    std::vector<CMat2> diag_;
    std::vector<CMat2> diag_explicit_;
    std::vector<CMat2> winv_;
    std::vector<CMat2> cprime_;
    std::vector<cplx> z_;  // T^{-1} Y, 4 columns of length 2M, column-major
    Eigen::Matrix<cplx, 4, 4> s_;
    mutable double last_residual_ = 0.0;
};

/// Stateful integrator over the four finite-difference schemes with cached operators.
class FdtdIntegrator : public Integrator {
public:
    FdtdIntegrator(Scheme s, const SimParams& p);
    ~FdtdIntegrator() override;

    Scheme scheme() const noexcept override { return scheme_; }
    const SpinorField& current() const override { return cur_; }
    const SpinorField* previous() const { return n_ > 0 ? &prev_ : nullptr; }

    /// Residual check cadence for CNFD solves (every k-th step, k >= 1).
    void set_cnfd_check_interval(long k) { check_interval_ = k < 1 ? 1 : k; }

protected:
    void advance() override;

private:
    struct Sifd2Cache;

    const PotentialSamples& samples_at(double t);
    void step_sifd2_cached();
    void step_cnfd_cached();

    Scheme scheme_;
    SpinorField cur_;
    SpinorField prev_;
    SpinorField work_;
    PotentialSamples fixed_;
    PotentialSamples scratch_;
    std::unique_ptr<CnfdSolver> cnfd_;
    std::unique_ptr<Sifd2Cache> sifd2_;
    long check_interval_ = 1;
};

} // namespace diraclab
