#include "diraclab/potentials.hpp"

#include "diraclab/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace diraclab {

PotentialSet PotentialSet::zero() {
    PotentialSet p = constant(0.0, {});
    p.name = "free";
    return p;
}

PotentialSet PotentialSet::constant(double V0, std::vector<double> A0) {
    PotentialSet p;
    p.V = [V0](double, const Point&) { return V0; };
    p.V_integral = [V0](double t, const Point&) { return V0 * t; };
    for (double a : A0) {
        p.A.emplace_back([a](double, const Point&) { return a; });
        p.A_integral.emplace_back([a](double t, const Point&) { return a * t; });
    }
    p.time_independent = true;
    p.name = "constant";
    return p;
}

PotentialSet PotentialSet::gaussian_1d() {
    PotentialSet p;
    p.V = [](double, const Point& x) { return (1.0 - x[0]) / (1.0 + x[0] * x[0]); };
    p.A.emplace_back([](double, const Point& x) {
        return (x[0] + 1.0) * (x[0] + 1.0) / (1.0 + x[0] * x[0]);
    });
    p.V_integral = [](double t, const Point& x) { return t * (1.0 - x[0]) / (1.0 + x[0] * x[0]); };
    p.A_integral.emplace_back([](double t, const Point& x) {
        return t * (x[0] + 1.0) * (x[0] + 1.0) / (1.0 + x[0] * x[0]);
    });
    p.time_independent = true;
    p.name = "gaussian-1d";
    return p;
}

PotentialSet PotentialSet::honeycomb() {
    PotentialSet p;
    p.V = [](double, const Point& x) {
        const double k = 4.0 * std::numbers::pi / std::sqrt(3.0);
        const double s3 = std::sqrt(3.0) / 2.0;
        return std::cos(k * (-x[0])) + std::cos(k * (0.5 * x[0] + s3 * x[1])) +
               std::cos(k * (0.5 * x[0] - s3 * x[1]));
    };
    ScalarField v = p.V;
    p.V_integral = [v](double t, const Point& x) { return t * v(0.0, x); };
    p.time_independent = true;
    p.name = "honeycomb";
    return p;
}

Point node_point(const Mesh& mesh, std::size_t node) {
    if (mesh.dims() == 1) {
        return {mesh.axis(0).node(static_cast<int>(node)), 0.0, 0.0};
    }
    const auto My = static_cast<std::size_t>(mesh.axis(1).M());
    return {mesh.axis(0).node(static_cast<int>(node / My)), mesh.axis(1).node(static_cast<int>(node % My)),
            0.0};
}

namespace {

void check_finite(double v, const char* field, std::size_t node, double t) {
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "potential " << field << " is not finite at node " << node << " (t = " << t << ")";
        throw DataError(os.str());
    }
}

} // namespace

PotentialSamples sample_potential(const PotentialSet& p, double t, const Mesh& mesh) {
    if (!(t >= 0.0)) {
        throw ArgumentError("sample_potential: t must be >= 0");
    }
    const std::size_t n = mesh.size();
    PotentialSamples s;
    s.V.resize(n);
    s.A.assign(p.A.size(), std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        const Point x = node_point(mesh, j);
        s.V[j] = p.V ? p.V(t, x) : 0.0;
        check_finite(s.V[j], "V", j, t);
        for (std::size_t k = 0; k < p.A.size(); ++k) {
            s.A[k][j] = p.A[k](t, x);
            check_finite(s.A[k][j], "A", j, t);
        }
    }
    return s;
}

std::pair<double, double> potential_maxima(const PotentialSet& p, double t, const Mesh& mesh) {
    const PotentialSamples s = sample_potential(p, t, mesh);
    double vmax = 0.0;
    double amax = 0.0;
    for (std::size_t j = 0; j < s.V.size(); ++j) {
        vmax = std::max(vmax, std::abs(s.V[j]));
        double a2 = 0.0;
        for (const auto& comp : s.A) a2 += comp[j] * comp[j];
        amax = std::max(amax, std::sqrt(a2));
    }
    return {vmax, amax};
}

} // namespace diraclab
