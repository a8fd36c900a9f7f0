#include "oracles.hpp"

#include "diraclab/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

using namespace diraclab;

namespace {

double l2sq(const SpinorField& u) {
    double s = 0.0;
    for (const cplx& z : u.data()) s += std::norm(z);
    return s * u.mesh().cell_volume();
}

} // namespace

TEST_CASE("analyze constant and single modes") {
    const Grid1D g(-16.0, 16.0, 16);
    SpinorField u(g);
    for (std::size_t j = 0; j < 16; ++j) {
        u(0, j) = cplx(2.0, -1.0);
        u(1, j) = std::polar(1.0, g.freq(1) * (g.node(static_cast<int>(j)) - g.a()));
    }
    const ModeCoeffs c = analyze(u);
    for (int l = -8; l < 8; ++l) {
        CHECK(std::abs(c.at(0, l) - (l == 0 ? cplx(2.0, -1.0) : cplx(0.0))) < 1e-14);
        CHECK(std::abs(c.at(1, l) - (l == 1 ? cplx(1.0) : cplx(0.0))) < 1e-14);
    }
}

TEST_CASE("analyze matches direct summation") {
    std::mt19937_64 rng(11);
    for (int M : {8, 12, 64}) {
        const Grid1D g(-1.0, 3.0, M);
        const SpinorField u = oracle::random_field(g, rng);
        const ModeCoeffs c = analyze(u);
        for (int comp = 0; comp < 2; ++comp) {
            const std::vector<cplx> col(u.component(comp), u.component(comp) + M);
            const auto ref = oracle::dft(col);
            const auto lib = naive_dft(col);
            for (int l = -M / 2; l < M / 2; ++l) {
                CHECK(std::abs(c.at(comp, l) - ref[l + M / 2]) < 1e-13);
                CHECK(std::abs(lib[l + M / 2] - ref[l + M / 2]) < 1e-13);
            }
            const auto back = naive_idft(ref);
            for (int j = 0; j < M; ++j) CHECK(std::abs(back[j] - col[j]) < 1e-13);
        }
    }
}

TEST_CASE("two dimensional transform is separable") {
    std::mt19937_64 rng(12);
    const Grid1D gx(-2.0, 2.0, 8);
    const Grid1D gy(0.0, 1.0, 4);
    const Mesh m(Grid2D(gx, gy));
    const SpinorField u = oracle::random_field(m, rng);
    const ModeCoeffs c = analyze(u);
    for (int l1 = -4; l1 < 4; ++l1)
        for (int l2 = -2; l2 < 2; ++l2) {
            cplx s = 0.0;
            for (int i = 0; i < 8; ++i)
                for (int k = 0; k < 4; ++k)
                    s += u(1, static_cast<std::size_t>(i * 4 + k)) *
                         std::polar(1.0, -gx.freq(l1) * (gx.node(i) - gx.a()) - gy.freq(l2) * (gy.node(k) - gy.a()));
            CHECK(std::abs(c.at(1, l1, l2) - s / 32.0) < 1e-13);
        }
    CHECK(oracle::rel_diff(synthesize(c), u) < 1e-13);
}

TEST_CASE("synthesize") {
    const Grid1D g(-16.0, 16.0, 64);
    CHECK(synthesize(ModeCoeffs(g, 2)).sup_norm() == 0.0);

    SpinorField u(g);
    for (std::size_t j = 0; j < 64; ++j) {
        const double x = g.node(static_cast<int>(j));
        u(0, j) = std::exp(-x * x / 2);
        u(1, j) = std::exp(-(x - 1) * (x - 1) / 2);
    }
    CHECK(oracle::rel_diff(synthesize(analyze(u)), u) < 1e-12);

    ModeCoeffs ny(g, 2);
    ny.at(0, -32) = 1.0;
    const SpinorField w = synthesize(ny);
    for (int j = 0; j < 64; ++j) {
        const cplx direct = std::polar(1.0, g.freq(-32) * (g.node(j) - g.a()));
        CHECK(std::abs(w(0, j) - direct) < 1e-13);
        CHECK(std::abs(w(0, j) - (j % 2 == 0 ? 1.0 : -1.0)) < 1e-13);
    }
}

TEST_CASE("spectral derivative") {
    const Grid1D g(-16.0, 16.0, 256);
    SpinorField c(g);
    for (auto& z : c.data()) z = cplx(0.3, 0.1);
    CHECK(spectral_derivative(c, 0).sup_norm() < 1e-14);

    SpinorField e(g);
    for (std::size_t j = 0; j < 256; ++j) {
        e(0, j) = std::polar(1.0, g.freq(2) * (g.node(static_cast<int>(j)) - g.a()));
        e(1, j) = std::exp(-0.5 * g.node(static_cast<int>(j)) * g.node(static_cast<int>(j)));
    }
    const SpinorField d = spectral_derivative(e, 0);
    for (std::size_t j = 0; j < 256; ++j) {
        const double x = g.node(static_cast<int>(j));
        CHECK(std::abs(d(0, j) - cplx(0, g.freq(2)) * e(0, j)) < 1e-12);
        CHECK(std::abs(d(1, j) + x * std::exp(-0.5 * x * x)) < 1e-10);
    }

    const Grid1D gx(0.0, 2.0 * std::numbers::pi, 16);
    const Grid1D gy(0.0, 2.0 * std::numbers::pi, 8);
    const Mesh m(Grid2D(gx, gy));
    SpinorField f(m);
    for (std::size_t n = 0; n < m.size(); ++n) {
        const Point p = node_point(m, n);
        f(0, n) = std::sin(3 * p[0]) * std::cos(2 * p[1]);
    }
    const SpinorField fx = spectral_derivative(f, 0);
    const SpinorField fy = spectral_derivative(f, 1);
    for (std::size_t n = 0; n < m.size(); ++n) {
        const Point p = node_point(m, n);
        CHECK(std::abs(fx(0, n) - 3 * std::cos(3 * p[0]) * std::cos(2 * p[1])) < 1e-12);
        CHECK(std::abs(fy(0, n) + 2 * std::sin(3 * p[0]) * std::sin(2 * p[1])) < 1e-12);
    }
}

TEST_CASE("parseval and linearity") {
    std::mt19937_64 rng(13);
    for (int M : {8, 64, 256}) {
        const Grid1D g(-16.0, 16.0, M);
        const SpinorField u = oracle::random_field(g, rng);
        const SpinorField w = oracle::random_field(g, rng);
        const ModeCoeffs c = analyze(u);
        double s = 0.0;
        for (const cplx& z : c.data()) s += std::norm(z);
        CHECK(std::abs(32.0 * s - l2sq(u)) <= 1e-12 * l2sq(u));

        const cplx a(0.7, -0.2);
        const cplx b(-1.3, 0.4);
        const ModeCoeffs lhs = analyze(a * u + b * w);
        const ModeCoeffs cw = analyze(w);
        for (std::size_t k = 0; k < lhs.data().size(); ++k)
            CHECK(std::abs(lhs.data()[k] - (a * c.data()[k] + b * cw.data()[k])) < 1e-14);
    }
}

TEST_CASE("fourier resample") {
    const Grid1D coarse(-1.0, 1.0, 16);
    const Grid1D fine(-1.0, 1.0, 64);
    auto fill = [](const Grid1D& g) {
        SpinorField u(g);
        for (std::size_t j = 0; j < static_cast<std::size_t>(g.M()); ++j) {
            const double x = g.node(static_cast<int>(j));
            u(0, j) = std::polar(1.0, 3 * std::numbers::pi * (x + 1)) + 0.5 * std::cos(std::numbers::pi * x);
            u(1, j) = std::sin(5 * std::numbers::pi * x);
        }
        return u;
    };
    CHECK(oracle::rel_diff(fourier_resample(fill(coarse), fine), fill(fine)) < 1e-13);
    CHECK(oracle::rel_diff(fourier_resample(fill(fine), coarse), fill(coarse)) < 1e-13);
    std::mt19937_64 rng(3);
    const SpinorField r = oracle::random_field(coarse, rng);
    CHECK(oracle::rel_diff(fourier_resample(fourier_resample(r, fine), coarse), r) < 1e-13);
}

TEST_CASE("concurrent transforms agree") {
    std::mt19937_64 rng(5);
    const Grid1D g(0.0, 1.0, 512);
    const SpinorField u = oracle::random_field(g, rng);
    const ModeCoeffs ref = analyze(u);
    std::vector<std::vector<cplx>> got(4);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t) {
        pool.emplace_back([&, t] {
            for (int rep = 0; rep < 20; ++rep) got[t] = analyze(u).data();
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& v : got) CHECK(v == ref.data());
}
