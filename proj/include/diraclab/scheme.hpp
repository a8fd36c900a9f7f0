#pragma once

#include "diraclab/field.hpp"
#include "diraclab/params.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace diraclab {

enum class Scheme { lffd, sifd1, sifd2, cnfd, ewi, tsfp };

std::string to_string(Scheme s);
/// Accepts lffd, sifd1, sifd2, cnfd, ewi (or ewi-fp), tsfp; case-insensitive.
Scheme parse_scheme(std::string_view name);
bool is_fdtd(Scheme s) noexcept;

/// A time integrator advancing one SimParams problem step by step.
///
/// step() throws BlowUpError when the field becomes non-finite or its sup-norm exceeds
/// blowup_factor times the initial sup-norm.
class Integrator {
public:
    explicit Integrator(const SimParams& p);
    virtual ~Integrator() = default;

    Integrator(const Integrator&) = delete;
    Integrator& operator=(const Integrator&) = delete;

    virtual Scheme scheme() const noexcept = 0;
    virtual const SpinorField& current() const = 0;

    void step();
    /// Steps until t = T.
    void run();

    long steps_taken() const noexcept { return n_; }
    double time() const noexcept { return static_cast<double>(n_) * params_.tau; }
    const SimParams& params() const noexcept { return params_; }

    static constexpr double blowup_factor = 1e3;

protected:
    virtual void advance() = 0;

    SimParams params_;
    long n_ = 0;

private:
    double initial_sup_;
};

std::unique_ptr<Integrator> make_integrator(Scheme s, const SimParams& p);

} // namespace diraclab
