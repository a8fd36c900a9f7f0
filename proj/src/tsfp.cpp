#include "diraclab/tsfp.hpp"

#include "diraclab/errors.hpp"
#include "diraclab/potential_integrals.hpp"
#include "diraclab/spectral.hpp"

namespace diraclab {

std::vector<CMat2> tsfp_phases(const SimParams& p, double t_n, double tau) {
    const Mesh& mesh = p.grid;
    std::vector<CMat2> out(mesh.size());
    for (std::size_t j = 0; j < mesh.size(); ++j) {
        const PotentialIntegral g = potential_integrals(p.potentials, t_n, tau, node_point(mesh, j));
        const double a1 = g.A1.empty() ? 0.0 : g.A1[0];
        const double a2 = g.A1.size() > 1 ? g.A1[1] : 0.0;
        out[j] = potential_phase(g.V1, a1, a2);
    }
    return out;
}

TsfpState::TsfpState(const SimParams& p) : TsfpState(p, p.tau) {}

TsfpState::TsfpState(const SimParams& p, double step) : current(p.initial), tau(step), params(p) {
    if (p.initial.components() != 2) throw ArgumentError("tsfp: two-component field required");
    if (step == 0.0) throw ArgumentError("tsfp: step must be nonzero");
    const Mesh& mesh = p.grid;
    const std::size_t n = mesh.size();
    half_flow.resize(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t s = 0; s < n; ++s) {
        const auto [l1, l2] = fft::slot_modes(mesh, s);
        const double mu2 = mesh.dims() == 2 ? mesh.axis(1).freq(l2) : 0.0;
        half_flow[s] = mode_flow(mode_operator_2d(p.eps, mesh.axis(0).freq(l1), mu2), 0.5 * step) * scale;
    }
    if (p.potentials.time_independent) phase = tsfp_phases(p, 0.0, step);
}

namespace {

void half_flight(TsfpState& st) {
    SpinorField& u = st.current;
    const Mesh& mesh = u.mesh();
    fft::forward(mesh, u.component(0));
    fft::forward(mesh, u.component(1));
    for (std::size_t s = 0; s < u.nodes(); ++s) {
        const CMat2& e = st.half_flow[s];
        const cplx a = u(0, s);
        const cplx b = u(1, s);
        u(0, s) = e(0, 0) * a + e(0, 1) * b;
        u(1, s) = e(1, 0) * a + e(1, 1) * b;
    }
    fft::backward(mesh, u.component(0));
    fft::backward(mesh, u.component(1));
}

void apply_phase(SpinorField& u, const std::vector<CMat2>& ph) {
    for (std::size_t j = 0; j < u.nodes(); ++j) {
        const CMat2& e = ph[j];
        const cplx a = u(0, j);
        const cplx b = u(1, j);
        u(0, j) = e(0, 0) * a + e(0, 1) * b;
        u(1, j) = e(1, 0) * a + e(1, 1) * b;
    }
}

} // namespace

void tsfp_advance(TsfpState& st) {
    half_flight(st);
    if (st.params.potentials.time_independent) {
        apply_phase(st.current, st.phase);
    } else {
        apply_phase(st.current, tsfp_phases(st.params, st.n * st.tau, st.tau));
    }
    half_flight(st);
    ++st.n;
}

TsfpState tsfp_step_1d(TsfpState state) {
    if (state.params.grid.dims() != 1) throw ArgumentError("tsfp_step_1d: 1D grid required");
    tsfp_advance(state);
    return state;
}

TsfpState tsfp_step_2d(TsfpState state) {
    if (state.params.grid.dims() != 2) throw ArgumentError("tsfp_step_2d: 2D grid required");
    tsfp_advance(state);
    return state;
}

TsfpIntegrator::TsfpIntegrator(const SimParams& p) : Integrator(p), state_(p) {}

void TsfpIntegrator::advance() { tsfp_advance(state_); }

} // namespace diraclab
