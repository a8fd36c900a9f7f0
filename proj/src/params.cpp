#include "diraclab/params.hpp"

#include "diraclab/errors.hpp"

#include <cmath>
#include <sstream>

namespace diraclab {

void require_eps(double eps, const char* who) {
    if (!(eps > 0.0 && eps <= 1.0)) {
        std::ostringstream os;
        os << who << ": eps must lie in (0, 1], got " << eps;
        throw ArgumentError(os.str());
    }
}

SimParams::SimParams(double eps_, double tau_, double T_, const Mesh& grid_, PotentialSet pot, SpinorField init)
    : eps(eps_), tau(tau_), T(T_), grid(grid_), potentials(std::move(pot)), initial(std::move(init)) {
    validate();
}

long SimParams::steps() const {
    const double r = T / tau;
    const double n = std::round(r);
    if (n < 1.0 || std::abs(r - n) > 1e-12 * n) {
        std::ostringstream os;
        os << "T/tau = " << r << " is not an integer";
        throw ArgumentError(os.str());
    }
    return static_cast<long>(n);
}

void SimParams::validate() const {
    require_eps(eps, "params");
    if (!(tau > 0.0) || !(T > 0.0)) {
        throw ArgumentError("params: tau and T must be positive");
    }
    if (tau > T * (1.0 + 1e-12)) {
        throw ArgumentError("params: tau must not exceed T");
    }
    (void)steps();
    if (!(initial.mesh() == grid)) {
        throw ArgumentError("params: initial data lives on a different grid");
    }
    if (initial_derivative && !(initial_derivative->mesh() == grid)) {
        throw ArgumentError("params: initial derivative lives on a different grid");
    }
    if (!initial.all_finite()) {
        throw DataError("params: initial data is not finite");
    }
}

} // namespace diraclab
