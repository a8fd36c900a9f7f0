#include "diraclab/scheme.hpp"

#include "diraclab/errors.hpp"
#include "diraclab/ewi.hpp"
#include "diraclab/fdtd.hpp"
#include "diraclab/tsfp.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace diraclab {

std::string to_string(Scheme s) {
    switch (s) {
    case Scheme::lffd: return "lffd";
    case Scheme::sifd1: return "sifd1";
    case Scheme::sifd2: return "sifd2";
    case Scheme::cnfd: return "cnfd";
    case Scheme::ewi: return "ewi";
    case Scheme::tsfp: return "tsfp";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "lffd") return Scheme::lffd;
    if (s == "sifd1") return Scheme::sifd1;
    if (s == "sifd2") return Scheme::sifd2;
    if (s == "cnfd") return Scheme::cnfd;
    if (s == "ewi" || s == "ewi-fp") return Scheme::ewi;
    if (s == "tsfp") return Scheme::tsfp;
    throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

bool is_fdtd(Scheme s) noexcept {
    return s == Scheme::lffd || s == Scheme::sifd1 || s == Scheme::sifd2 || s == Scheme::cnfd;
}

Integrator::Integrator(const SimParams& p) : params_(p), initial_sup_(p.initial.sup_norm()) {}

void Integrator::step() {
    advance();
    ++n_;
    const SpinorField& u = current();
    const double limit = initial_sup_ > 0.0 ? blowup_factor * initial_sup_ : 0.0;
    const double limit2 = limit > 0.0 ? limit * limit : std::numeric_limits<double>::infinity();
    bool bad = false;
    for (const cplx& z : u.data()) {
        bad |= !(z.real() * z.real() + z.imag() * z.imag() < limit2);
    }
    if (!bad) return;
    if (!u.all_finite()) {
        throw BlowUpError(n_, "field became non-finite at step " + std::to_string(n_));
    }
    throw BlowUpError(n_, "sup-norm exceeded the blow-up threshold at step " + std::to_string(n_));
}

void Integrator::run() {
    const long N = params_.steps();
    while (n_ < N) step();
}

std::unique_ptr<Integrator> make_integrator(Scheme s, const SimParams& p) {
    if (is_fdtd(s)) return std::make_unique<FdtdIntegrator>(s, p);
    if (s == Scheme::ewi) return std::make_unique<EwiIntegrator>(p);
    return std::make_unique<TsfpIntegrator>(p);
}

} // namespace diraclab
