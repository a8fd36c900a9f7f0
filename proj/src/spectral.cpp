#include "diraclab/spectral.hpp"

#include "diraclab/errors.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace diraclab {

namespace fft {

namespace {

using PlanKey = std::tuple<int, int, int, int>;

struct PlanCache {
    std::mutex mu;
    std::map<PlanKey, fftw_plan> plans;

    ~PlanCache() {
        for (auto& kv : plans) fftw_destroy_plan(kv.second);
    }

    fftw_plan get(const Mesh& mesh, int sign) {
        const int M0 = mesh.axis(0).M();
        const int M1 = mesh.dims() == 2 ? mesh.axis(1).M() : 0;
        const PlanKey key{mesh.dims(), M0, M1, sign};
        std::lock_guard<std::mutex> lock(mu);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        const std::size_t n = mesh.size();
        auto* buf = fftw_alloc_complex(n);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan p = mesh.dims() == 1 ? fftw_plan_dft_1d(M0, buf, buf, sign, flags)
                                       : fftw_plan_dft_2d(M0, M1, buf, buf, sign, flags);
        fftw_free(buf);
        if (p == nullptr) throw NumericalError("fft: plan creation failed");
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(const Mesh& mesh, cplx* data, int sign) {
    fftw_plan p = cache().get(mesh, sign);
    auto* z = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p, z, z);
}

} // namespace

void forward(const Mesh& mesh, cplx* data) { run(mesh, data, FFTW_FORWARD); }
void backward(const Mesh& mesh, cplx* data) { run(mesh, data, FFTW_BACKWARD); }

} // namespace fft

ModeCoeffs::ModeCoeffs(const Mesh& mesh, int components)
    : mesh_(mesh), nc_(components), n_(mesh.size()), data_(n_ * static_cast<std::size_t>(components)) {}

namespace {

// Natural index of FFT slot s.
std::size_t natural_of_slot(const Mesh& mesh, std::size_t s) {
    const auto [l1, l2] = fft::slot_modes(mesh, s);
    if (mesh.dims() == 1) return static_cast<std::size_t>(l1 + mesh.axis(0).M() / 2);
    return static_cast<std::size_t>(l1 + mesh.axis(0).M() / 2) * mesh.axis(1).M() +
           (l2 + mesh.axis(1).M() / 2);
}

} // namespace

ModeCoeffs analyze(const SpinorField& U) {
    const Mesh& mesh = U.mesh();
    const std::size_t n = U.nodes();
    ModeCoeffs out(mesh, U.components());
    std::vector<cplx> buf(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (int c = 0; c < U.components(); ++c) {
        std::copy(U.component(c), U.component(c) + n, buf.begin());
        fft::forward(mesh, buf.data());
        cplx* dst = out.data().data() + c * n;
        for (std::size_t s = 0; s < n; ++s) dst[natural_of_slot(mesh, s)] = buf[s] * scale;
    }
    return out;
}

SpinorField synthesize(const ModeCoeffs& coeffs) {
    const Mesh& mesh = coeffs.mesh();
    const std::size_t n = coeffs.modes();
    SpinorField out(mesh, coeffs.components());
    for (int c = 0; c < coeffs.components(); ++c) {
        const cplx* src = coeffs.data().data() + c * n;
        cplx* dst = out.component(c);
        for (std::size_t s = 0; s < n; ++s) dst[s] = src[natural_of_slot(mesh, s)];
        fft::backward(mesh, dst);
    }
    return out;
}

SpinorField spectral_derivative(const SpinorField& U, int axis) {
    const Mesh& mesh = U.mesh();
    if (axis < 0 || axis >= mesh.dims()) {
        throw ArgumentError("spectral_derivative: axis out of range");
    }
    const std::size_t n = U.nodes();
    SpinorField out = U;
    const Grid1D& g = mesh.axis(axis);
    const double scale = 1.0 / static_cast<double>(n);
    for (int c = 0; c < U.components(); ++c) {
        cplx* d = out.component(c);
        fft::forward(mesh, d);
        for (std::size_t s = 0; s < n; ++s) {
            const auto [l1, l2] = fft::slot_modes(mesh, s);
            const int l = axis == 0 ? l1 : l2;
            d[s] *= cplx(0.0, g.freq(l)) * scale;
        }
        fft::backward(mesh, d);
    }
    return out;
}

SpinorField fourier_resample(const SpinorField& U, const Mesh& target) {
    const Mesh& src = U.mesh();
    if (src.dims() != target.dims()) throw ArgumentError("fourier_resample: dimension mismatch");
    for (int k = 0; k < src.dims(); ++k) {
        const Grid1D& a = src.axis(k);
        const Grid1D& b = target.axis(k);
        if (std::abs(a.a() - b.a()) > 1e-12 * a.length() || std::abs(a.b() - b.b()) > 1e-12 * a.length()) {
            throw ArgumentError("fourier_resample: domains differ");
        }
    }
    const ModeCoeffs c = analyze(U);
    ModeCoeffs d(target, U.components());
    const int S0 = src.axis(0).M() / 2;
    const int T0 = target.axis(0).M() / 2;
    const int lo0 = -std::min(S0, T0);
    const int hi0 = std::min(S0, T0) - 1;
    for (int comp = 0; comp < U.components(); ++comp) {
        if (src.dims() == 1) {
            for (int l = lo0; l <= hi0; ++l) d.at(comp, l) = c.at(comp, l);
        } else {
            const int S1 = src.axis(1).M() / 2;
            const int T1 = target.axis(1).M() / 2;
            for (int l1 = lo0; l1 <= hi0; ++l1) {
                for (int l2 = -std::min(S1, T1); l2 <= std::min(S1, T1) - 1; ++l2) {
                    d.at(comp, l1, l2) = c.at(comp, l1, l2);
                }
            }
        }
    }
    return synthesize(d);
}

std::vector<cplx> naive_dft(const std::vector<cplx>& u) {
    const int M = static_cast<int>(u.size());
    std::vector<cplx> out(M);
    for (int l = -M / 2; l < M / 2; ++l) {
        cplx s{};
        for (int j = 0; j < M; ++j) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(j) * l / M;
            s += u[j] * cplx(std::cos(ang), std::sin(ang));
        }
        out[l + M / 2] = s / static_cast<double>(M);
    }
    return out;
}

std::vector<cplx> naive_idft(const std::vector<cplx>& c) {
    const int M = static_cast<int>(c.size());
    std::vector<cplx> out(M);
    for (int j = 0; j < M; ++j) {
        cplx s{};
        for (int l = -M / 2; l < M / 2; ++l) {
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) * l / M;
            s += c[l + M / 2] * cplx(std::cos(ang), std::sin(ang));
        }
        out[j] = s;
    }
    return out;
}

} // namespace diraclab
