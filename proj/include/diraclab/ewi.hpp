#pragma once

#include "diraclab/mode_operator.hpp"
#include "diraclab/params.hpp"
#include "diraclab/scheme.hpp"

#include <optional>
#include <vector>

namespace diraclab {

/// Exponential wave integrator with Fourier pseudospectral discretization (1D or 2D).
///
/// Mode data live in FFT slot order: slot s of `current_modes` holds the normalized
/// coefficient of the mode returned by fft::slot_modes(mesh, s).
struct EwiState {
    SpinorField current_modes;
    std::optional<SpinorField> prev_gphi_modes;
    std::vector<CMat2> flow;
    std::vector<CMat2> q1;
    std::vector<CMat2> q2;
    long n = 0;
    double tau;
    SimParams params;
    std::optional<PotentialSamples> fixed_samples;

    explicit EwiState(const SimParams& p);
    EwiState(const SimParams& p, double step);
};

/// Phi~^{n+1} = E Phi~^n - i Q1 F~^n - i Q2 (F~^n - F~^{n-1})/tau, F = G(t_n) Phi^n;
/// the Q2 term is absent at n = 0.
EwiState ewi_step(EwiState state);

/// In-place step given the nodal field of the current modes.
void ewi_advance(EwiState& state, const SpinorField& nodal);

/// Nodal field of the state's current modes.
SpinorField ewi_field(const EwiState& state);

class EwiIntegrator : public Integrator {
public:
    explicit EwiIntegrator(const SimParams& p);
    Scheme scheme() const noexcept override { return Scheme::ewi; }
    const SpinorField& current() const override { return field_; }
    const EwiState& state() const noexcept { return state_; }

protected:
    void advance() override;

private:
    EwiState state_;
    SpinorField field_;
};

} // namespace diraclab
