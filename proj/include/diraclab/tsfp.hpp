#pragma once

#include "diraclab/mode_operator.hpp"
#include "diraclab/params.hpp"
#include "diraclab/scheme.hpp"

#include <vector>

namespace diraclab {

/// Strang splitting state: half free flight, nodal potential phase, half free flight.
struct TsfpState {
    SpinorField current;
    std::vector<CMat2> half_flow;  // per FFT slot
    std::vector<CMat2> phase;      // per node, cached for time-independent potentials
    long n = 0;
    double tau;
    SimParams params;

    explicit TsfpState(const SimParams& p);
    TsfpState(const SimParams& p, double step);
};

/// In-place Strang step (1D or 2D).
void tsfp_advance(TsfpState& state);

TsfpState tsfp_step_1d(TsfpState state);
TsfpState tsfp_step_2d(TsfpState state);

/// Nodal phase P e^{-i Lambda} P^* of int_{t_n}^{t_n+tau} G dt at every node.
std::vector<CMat2> tsfp_phases(const SimParams& p, double t_n, double tau);

class TsfpIntegrator : public Integrator {
public:
    explicit TsfpIntegrator(const SimParams& p);
    Scheme scheme() const noexcept override { return Scheme::tsfp; }
    const SpinorField& current() const override { return state_.current; }

protected:
    void advance() override;

private:
    TsfpState state_;
};

} // namespace diraclab
