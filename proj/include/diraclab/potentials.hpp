#pragma once

#include "diraclab/grid.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace diraclab {

using Point = std::array<double, 3>;
using ScalarField = std::function<double(double t, const Point& x)>;

/// Electric potential V and magnetic components A_1..A_d as closures of (t, x).
///
/// V_integral / A_integral, when set, return the antiderivative s -> int_0^s of the
/// field at fixed x; TSFP uses them instead of Simpson quadrature.
struct PotentialSet {
    ScalarField V;
    std::vector<ScalarField> A;
    bool time_independent = true;
    ScalarField V_integral;
    std::vector<ScalarField> A_integral;
    std::string name = "custom";

    int magnetic_dims() const noexcept { return static_cast<int>(A.size()); }
    bool has_integrals() const noexcept {
        return static_cast<bool>(V_integral) && A_integral.size() == A.size();
    }

    static PotentialSet zero();
    static PotentialSet constant(double V0, std::vector<double> A0);
    /// V = (1-x)/(1+x^2), A_1 = (x+1)^2/(1+x^2).
    static PotentialSet gaussian_1d();
    /// V = sum_k cos((4 pi / sqrt 3) e_k . x) over the three honeycomb lattice directions, A = 0.
    static PotentialSet honeycomb();
};

/// Per-node samples at a fixed time; A[k][j] is component k+1 at node j.
struct PotentialSamples {
    std::vector<double> V;
    std::vector<std::vector<double>> A;

    double A_at(int k, std::size_t j) const noexcept {
        return k < static_cast<int>(A.size()) ? A[k][j] : 0.0;
    }
};

/// Physical coordinates of flat node index `node`.
Point node_point(const Mesh& mesh, std::size_t node);

/// Evaluates V and every A_k at the interior nodes at time t.
PotentialSamples sample_potential(const PotentialSet& p, double t, const Mesh& mesh);

/// max over nodes of |V| and of |A| (Euclidean over components) at time t.
std::pair<double, double> potential_maxima(const PotentialSet& p, double t, const Mesh& mesh);

} // namespace diraclab
