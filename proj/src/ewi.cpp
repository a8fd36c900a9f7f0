#include "diraclab/ewi.hpp"

#include "diraclab/errors.hpp"
#include "diraclab/spectral.hpp"

namespace diraclab {

namespace {

void to_modes(SpinorField& u) {
    const double scale = 1.0 / static_cast<double>(u.nodes());
    for (int c = 0; c < 2; ++c) {
        fft::forward(u.mesh(), u.component(c));
        cplx* d = u.component(c);
        for (std::size_t s = 0; s < u.nodes(); ++s) d[s] *= scale;
    }
}

void gphi(const SpinorField& u, const PotentialSamples& s, SpinorField& out) {
    for (std::size_t j = 0; j < u.nodes(); ++j) {
        const cplx a = u(0, j);
        const cplx b = u(1, j);
        const double V = s.V[j];
        const double A1 = s.A_at(0, j);
        const double A2 = s.A_at(1, j);
        out(0, j) = V * a - A1 * b + I_unit * A2 * b;
        out(1, j) = V * b - A1 * a - I_unit * A2 * a;
    }
}

} // namespace

EwiState::EwiState(const SimParams& p) : EwiState(p, p.tau) {}

EwiState::EwiState(const SimParams& p, double step) : current_modes(p.initial), tau(step), params(p) {
    if (p.initial.components() != 2) throw ArgumentError("ewi: two-component field required");
    if (step == 0.0) throw ArgumentError("ewi: step must be nonzero");
    to_modes(current_modes);
    const Mesh& mesh = p.grid;
    const std::size_t n = mesh.size();
    flow.resize(n);
    q1.resize(n);
    q2.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        const auto [l1, l2] = fft::slot_modes(mesh, s);
        const double mu2 = mesh.dims() == 2 ? mesh.axis(1).freq(l2) : 0.0;
        const ModeOperator op = mode_operator_2d(p.eps, mesh.axis(0).freq(l1), mu2);
        flow[s] = mode_flow(op, step);
        const EwiFilters f = ewi_filters(op, step);
        q1[s] = f.q1;
        q2[s] = f.q2;
    }
    if (p.potentials.time_independent) fixed_samples = sample_potential(p.potentials, 0.0, mesh);
}

SpinorField ewi_field(const EwiState& state) {
    SpinorField u = state.current_modes;
    for (int c = 0; c < 2; ++c) fft::backward(u.mesh(), u.component(c));
    return u;
}

void ewi_advance(EwiState& state, const SpinorField& nodal) {
    const Mesh& mesh = state.params.grid;
    const PotentialSamples s =
        state.fixed_samples ? *state.fixed_samples
                            : sample_potential(state.params.potentials, state.n * state.tau, mesh);
    SpinorField f(mesh);
    gphi(nodal, s, f);
    to_modes(f);
    const std::size_t n = mesh.size();
    const double inv_tau = 1.0 / state.tau;
    SpinorField& u = state.current_modes;
    for (std::size_t k = 0; k < n; ++k) {
        const CVec2 fk = f.spinor(k);
        CVec2 next = state.flow[k] * u.spinor(k) - I_unit * (state.q1[k] * fk);
        if (state.prev_gphi_modes) {
            const CVec2 df = (fk - state.prev_gphi_modes->spinor(k)) * inv_tau;
            next -= I_unit * (state.q2[k] * df);
        }
        u.set_spinor(k, next);
    }
    state.prev_gphi_modes = std::move(f);
    ++state.n;
}

EwiState ewi_step(EwiState state) {
    const SpinorField nodal = ewi_field(state);
    ewi_advance(state, nodal);
    return state;
}

EwiIntegrator::EwiIntegrator(const SimParams& p) : Integrator(p), state_(p), field_(p.initial) {}

void EwiIntegrator::advance() {
    ewi_advance(state_, field_);
    field_ = ewi_field(state_);
}

} // namespace diraclab
