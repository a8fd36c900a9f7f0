#include "diraclab/potential_integrals.hpp"

#include "diraclab/errors.hpp"

namespace diraclab {

namespace {

double simpson(const ScalarField& f, double t, double tau, const Point& x) {
    return tau / 6.0 * (f(t, x) + 4.0 * f(t + 0.5 * tau, x) + f(t + tau, x));
}

} // namespace

PotentialIntegral potential_integrals_simpson(const PotentialSet& p, double t_n, double tau, const Point& x) {
    PotentialIntegral out;
    out.V1 = p.V ? simpson(p.V, t_n, tau, x) : 0.0;
    for (const auto& a : p.A) out.A1.push_back(simpson(a, t_n, tau, x));
    return out;
}

PotentialIntegral potential_integrals(const PotentialSet& p, double t_n, double tau, const Point& x) {
    if (tau == 0.0) throw ArgumentError("potential_integrals: tau must be nonzero");
    PotentialIntegral out;
    if (p.time_independent) {
        out.V1 = p.V ? p.V(t_n, x) * tau : 0.0;
        for (const auto& a : p.A) out.A1.push_back(a(t_n, x) * tau);
        return out;
    }
    if (p.has_integrals()) {
        out.V1 = p.V_integral(t_n + tau, x) - p.V_integral(t_n, x);
        for (const auto& a : p.A_integral) out.A1.push_back(a(t_n + tau, x) - a(t_n, x));
        return out;
    }
    return potential_integrals_simpson(p, t_n, tau, x);
}

} // namespace diraclab
