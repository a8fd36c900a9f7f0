#include "diraclab/problems.hpp"

#include "diraclab/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace diraclab {

Mesh Problem::mesh(double h) const {
    if (dims() == 1) return Grid1D::with_mesh(domain[0].first, domain[0].second, h);
    return Grid2D(Grid1D::with_mesh(domain[0].first, domain[0].second, h),
                  Grid1D::with_mesh(domain[1].first, domain[1].second, h));
}

Problem gaussian_1d_problem() {
    Problem p;
    p.name = "gaussian-1d";
    p.domain = {{-16.0, 16.0}};
    p.potentials = PotentialSet::gaussian_1d();
    p.initial = [](const Mesh& m) {
        SpinorField u(m);
        for (std::size_t j = 0; j < u.nodes(); ++j) {
            const double x = node_point(m, j)[0];
            u(0, j) = std::exp(-0.5 * x * x);
            u(1, j) = std::exp(-0.5 * (x - 1.0) * (x - 1.0));
        }
        return u;
    };
    return p;
}

Problem free_dirac_problem(int mode_index) {
    Problem p;
    p.name = "free-dirac";
    p.domain = {{-1.0, 1.0}};
    p.potentials = PotentialSet::zero();
    p.analytic_reference = true;
    p.initial = [mode_index](const Mesh& m) {
        SpinorField u(m);
        for (std::size_t j = 0; j < u.nodes(); ++j) {
            const double x = node_point(m, j)[0];
            const cplx z = std::polar(1.0, mode_index * std::numbers::pi * (x + 1.0));
            u(0, j) = z;
            u(1, j) = z;
        }
        return u;
    };
    return p;
}

Problem honeycomb_problem() {
    Problem p;
    p.name = "honeycomb-2d";
    p.domain = {{-10.0, 10.0}, {-10.0, 10.0}};
    p.potentials = PotentialSet::honeycomb();
    p.initial = [](const Mesh& m) {
        SpinorField u(m);
        for (std::size_t j = 0; j < u.nodes(); ++j) {
            const Point x = node_point(m, j);
            u(0, j) = std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]));
            u(1, j) = std::exp(-0.5 * ((x[0] - 1.0) * (x[0] - 1.0) + x[1] * x[1]));
        }
        return u;
    };
    return p;
}

Problem constant_problem(double V0, double A0, unsigned long seed) {
    Problem p;
    p.name = "constant";
    p.domain = {{-16.0, 16.0}};
    p.potentials = PotentialSet::constant(V0, {A0});
    p.initial = [seed](const Mesh& m) {
        std::mt19937_64 rng(seed);
        // raw 53-bit draws keep the data identical across standard libraries
        auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
        SpinorField u(m);
        for (std::size_t j = 0; j < u.nodes(); ++j) {
            const double x = node_point(m, j)[0];
            const double g = std::exp(-0.5 * x * x);
            for (int c = 0; c < 2; ++c) {
                const double re = uniform();
                const double im = uniform();
                u(c, j) = g + 0.1 * cplx(re, im);
            }
        }
        return u;
    };
    return p;
}

namespace {

Problem lookup(const std::string& preset, const ProblemOptions& opt) {
    if (preset == "gaussian-1d") return gaussian_1d_problem();
    if (preset == "free-dirac") return free_dirac_problem(opt.mode_index);
    if (preset == "honeycomb-2d") return honeycomb_problem();
    if (preset == "constant") return constant_problem(opt.V0, opt.A0, opt.seed);
    throw ConfigError("unknown preset '" + preset + "'");
}

} // namespace

Problem make_problem(const std::string& preset, const ProblemOptions& opt) {
    Problem p = lookup(preset, opt);
    if (opt.zero_initial) {
        p.initial = [](const Mesh& m) { return SpinorField(m); };
    }
    return p;
}

} // namespace diraclab
