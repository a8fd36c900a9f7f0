#include "diraclab/harness.hpp"

#include "diraclab/errors.hpp"
#include "diraclab/mode_operator.hpp"
#include "diraclab/spectral.hpp"
#include "diraclab/tsfp.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

namespace diraclab {

// ---------------------------------------------------------------------------------------
// error norms

namespace {

int refinement_factor(const Grid1D& fine, const Grid1D& coarse) {
    const double tol = 1e-12 * coarse.length();
    if (std::abs(fine.a() - coarse.a()) > tol || std::abs(fine.b() - coarse.b()) > tol) return 0;
    if (fine.M() % coarse.M() != 0) return 0;
    return fine.M() / coarse.M();
}

} // namespace

SpinorField restrict_to(const SpinorField& reference, const Mesh& mesh) {
    const Mesh& rm = reference.mesh();
    if (rm.dims() != mesh.dims()) throw ArgumentError("restrict: dimension mismatch");
    int f[2] = {1, 1};
    for (int k = 0; k < mesh.dims(); ++k) {
        f[k] = refinement_factor(rm.axis(k), mesh.axis(k));
        if (f[k] == 0) throw ArgumentError("restrict: reference grid is not an integer refinement of the target grid");
    }
    SpinorField out(mesh, reference.components());
    if (mesh.dims() == 1) {
        for (int c = 0; c < out.components(); ++c) {
            for (int j = 0; j < mesh.axis(0).M(); ++j) out(c, j) = reference(c, static_cast<std::size_t>(j) * f[0]);
        }
        return out;
    }
    const std::size_t M2 = mesh.axis(1).M();
    const std::size_t R2 = rm.axis(1).M();
    for (int c = 0; c < out.components(); ++c) {
        for (int i = 0; i < mesh.axis(0).M(); ++i) {
            for (std::size_t k = 0; k < M2; ++k) {
                out(c, i * M2 + k) = reference(c, static_cast<std::size_t>(i) * f[0] * R2 + k * f[1]);
            }
        }
    }
    return out;
}

double error_norm(const SpinorField& numeric, const SpinorField& reference) {
    const SpinorField r = numeric.mesh() == reference.mesh() ? reference : restrict_to(reference, numeric.mesh());
    if (r.components() != numeric.components()) throw ArgumentError("error_norm: component counts differ");
    double s = 0.0;
    for (std::size_t i = 0; i < r.data().size(); ++i) s += std::norm(numeric.data()[i] - r.data()[i]);
    return std::sqrt(numeric.mesh().cell_volume() * s);
}

double observable_error_l1(const SpinorField& numeric, const SpinorField& reference, double eps,
                           ObservableKind kind) {
    const SpinorField r = numeric.mesh() == reference.mesh() ? reference : restrict_to(reference, numeric.mesh());
    const DensityCurrent a = density_current(numeric, eps);
    const DensityCurrent b = density_current(r, eps);
    double s = 0.0;
    if (kind == ObservableKind::density) {
        for (std::size_t j = 0; j < a.rho.size(); ++j) s += std::abs(a.rho[j] - b.rho[j]);
    } else {
        for (std::size_t k = 0; k < a.J.size(); ++k) {
            for (std::size_t j = 0; j < a.J[k].size(); ++j) s += std::abs(a.J[k][j] - b.J[k][j]);
        }
    }
    return numeric.mesh().cell_volume() * s;
}

double observed_order(double e_prev, double e, double ratio) {
    return std::log(e_prev / e) / std::log(ratio);
}

// ---------------------------------------------------------------------------------------
// experiments

std::string to_string(CellStatus s) {
    switch (s) {
    case CellStatus::ok: return "ok";
    case CellStatus::unstable: return "unstable";
    case CellStatus::reference_limited: return "reference-limited";
    }
    return "?";
}

double auto_tau(Scheme s, double eps, double h, double T, const Problem& problem) {
    const Mesh mesh = problem.mesh(h);
    const auto [vmax, amax] = potential_maxima(problem.potentials, 0.0, mesh);
    const StabilityBound b = stability_bound(s, eps, h, vmax, amax);
    if (b.unconditional) {
        throw ConfigError("tau auto: scheme " + to_string(s) + " has no stability bound for this problem");
    }
    const double target = 0.9 * b.tau_max;
    return T / std::ceil(T / target - 1e-12);
}

std::pair<std::vector<double>, std::vector<double>> coupled_fdtd_levels(double h0, double tau0, double eps,
                                                                         double eps0, int levels) {
    std::vector<double> hs;
    std::vector<double> taus;
    double p8 = 1.0;
    for (int k = 0; k < levels; ++k) {
        const double thr = eps0 / std::ldexp(1.0, k);
        const double delta = eps >= thr ? eps * eps : eps0 * eps0 / std::ldexp(1.0, 2 * k);
        hs.push_back(h0 / p8 * delta);
        taus.push_back(tau0 / p8);
        p8 *= 8.0;
    }
    return {hs, taus};
}

std::vector<Cell> expand_cells(const ExperimentSpec& spec) {
    if (spec.schemes.empty() || spec.eps.empty() || spec.h.empty()) {
        throw ConfigError("experiment: schemes, eps and h lists must be non-empty");
    }
    if (!spec.tau_auto && spec.tau.empty()) throw ConfigError("experiment: tau list is empty");
    const Problem problem = make_problem(spec.problem, spec.problem_options);
    std::vector<Cell> cells;
    int row = 0;
    for (Scheme s : spec.schemes) {
        for (double eps : spec.eps) {
            require_eps(eps, "experiment");
            if (spec.layout == CellLayout::coupled) {
                if (spec.tau.empty()) throw ConfigError("experiment: coupled layout needs tau[0]");
                const auto [hs, taus] =
                    coupled_fdtd_levels(spec.h[0], spec.tau[0], eps, spec.coupled_eps0, spec.coupled_levels);
                for (std::size_t i = 0; i < hs.size(); ++i) cells.push_back({s, eps, hs[i], taus[i], row});
                ++row;
                continue;
            }
            if (spec.layout == CellLayout::zip || spec.tau_auto) {
                const std::size_t n = spec.h.size();
                if (!spec.tau_auto && spec.tau.size() != n) {
                    throw ConfigError("experiment: zip layout needs equally long h and tau lists");
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double tau = spec.tau_auto ? auto_tau(s, eps, spec.h[i], spec.T, problem) : spec.tau[i];
                    cells.push_back({s, eps, spec.h[i], tau, row});
                }
                ++row;
                continue;
            }
            const bool by_tau = spec.tau.size() > 1 || spec.h.size() == 1;
            if (by_tau) {
                for (double h : spec.h) {
                    for (double tau : spec.tau) cells.push_back({s, eps, h, tau, row});
                    ++row;
                }
            } else {
                for (double h : spec.h) cells.push_back({s, eps, h, spec.tau[0], row});
                ++row;
            }
        }
    }
    for (const Cell& c : cells) {
        if (!(c.tau > 0.0) || c.tau > spec.T * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "experiment: tau = " << c.tau << " must lie in (0, T]";
            throw ConfigError(os.str());
        }
    }
    return cells;
}

SpinorField run_scheme(Scheme s, const Problem& problem, double eps, double h, double tau, double T) {
    const Mesh mesh = problem.mesh(h);
    SimParams p(eps, tau, T, mesh, problem.potentials, problem.initial(mesh));
    auto integ = make_integrator(s, p);
    integ->run();
    return integ->current();
}

SpinorField align_reference(const SpinorField& reference, const Mesh& mesh) {
    if (reference.mesh() == mesh) return reference;
    bool finer = true;
    for (int k = 0; k < mesh.dims(); ++k) {
        finer = finer && refinement_factor(reference.mesh().axis(k), mesh.axis(k)) > 0;
    }
    if (finer) return restrict_to(reference, mesh);
    return fourier_resample(reference, mesh);
}

SpinorField reference_solution(const Problem& problem, const ReferenceSpec& ref, double eps, double T,
                               double h_cell) {
    if (ref.kind == ReferenceKind::analytic) {
        if (!problem.analytic_reference) {
            throw ConfigError("analytic reference requested for a problem with potentials");
        }
        const Mesh mesh = problem.mesh(h_cell);
        return exact_free_solution(problem.initial(mesh), eps, T);
    }
    return run_scheme(Scheme::tsfp, problem, eps, ref.h_e, ref.tau_e, T);
}

int default_threads() {
    if (const char* v = std::getenv("DIRAC_LAB_THREADS")) {
        const int n = std::atoi(v);
        if (n > 0) return n;
    }
    return 1;
}

namespace {

template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
    const int nt = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (nt == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&]() {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

struct RefEntry {
    std::optional<SpinorField> field;
    double estimate = 0.0;
};

} // namespace

std::vector<ConvergenceRecord> run_convergence(const ExperimentSpec& spec, int threads) {
    const Problem problem = make_problem(spec.problem, spec.problem_options);
    const std::vector<Cell> cells = expand_cells(spec);

    std::vector<double> eps_list;
    for (const Cell& c : cells) {
        if (std::find(eps_list.begin(), eps_list.end(), c.eps) == eps_list.end()) eps_list.push_back(c.eps);
    }
    std::vector<RefEntry> refs(eps_list.size());
    if (spec.reference.kind == ReferenceKind::tsfp_fine) {
        parallel_for(eps_list.size(), threads, [&](std::size_t i) {
            refs[i].field = reference_solution(problem, spec.reference, eps_list[i], spec.T, spec.reference.h_e);
            if (spec.reference.self_check) {
                ReferenceSpec half = spec.reference;
                half.tau_e *= 0.5;
                const SpinorField r2 = reference_solution(problem, half, eps_list[i], spec.T, half.h_e);
                refs[i].estimate = error_norm(*refs[i].field, r2);
            }
        });
    }
    auto ref_index = [&](double eps) {
        return static_cast<std::size_t>(std::find(eps_list.begin(), eps_list.end(), eps) - eps_list.begin());
    };

    std::vector<ConvergenceRecord> out(cells.size());
    parallel_for(cells.size(), threads, [&](std::size_t i) {
        const Cell& c = cells[i];
        ConvergenceRecord& r = out[i];
        r.scheme = c.scheme;
        r.eps = c.eps;
        r.h = c.h;
        r.tau = c.tau;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const SpinorField u = run_scheme(c.scheme, problem, c.eps, c.h, c.tau, spec.T);
            const RefEntry& re = refs[ref_index(c.eps)];
            const SpinorField ref = re.field ? align_reference(*re.field, u.mesh())
                                             : reference_solution(problem, spec.reference, c.eps, spec.T, c.h);
            r.error = spec.norm == ErrorNormKind::l2 ? error_norm(u, ref)
                                                     : observable_error_l1(u, ref, c.eps, ObservableKind::density);
            if (re.estimate > 0.0 && *r.error < 10.0 * re.estimate) r.status = CellStatus::reference_limited;
        } catch (const BlowUpError& e) {
            r.status = CellStatus::unstable;
            r.blowup_step = e.step();
        }
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });

    for (std::size_t i = 1; i < cells.size(); ++i) {
        if (cells[i].row != cells[i - 1].row) continue;
        if (!out[i].error || !out[i - 1].error) continue;
        const double ratio = cells[i].tau != cells[i - 1].tau ? cells[i - 1].tau / cells[i].tau
                                                              : cells[i - 1].h / cells[i].h;
        if (ratio == 1.0) continue;
        out[i].order = observed_order(*out[i - 1].error, *out[i].error, ratio);
    }
    return out;
}

// ---------------------------------------------------------------------------------------
// stability

std::vector<StabilityOutcome> stability_scan(Scheme scheme, double eps, double h, const std::vector<double>& factors,
                                             const StabilityScanOptions& opt) {
    const Problem problem = constant_problem(opt.V0, opt.A0, opt.seed);
    const Mesh mesh = problem.mesh(h);
    StabilityBound b = stability_bound(scheme, eps, h, opt.V0, opt.A0);
    if (b.unconditional) {
        b = stability_bound(opt.bound_scheme.value_or(Scheme::lffd), eps, h, opt.V0, opt.A0);
        if (b.unconditional) throw ConfigError("stability_scan: no finite bound to scale");
    }
    std::vector<StabilityOutcome> out;
    for (double f : factors) {
        const double tau = f * b.tau_max;
        const long n = static_cast<long>(std::ceil(opt.T / tau - 1e-12));
        SimParams p(eps, tau, n * tau, mesh, problem.potentials, problem.initial(mesh));
        auto integ = make_integrator(scheme, p);
        StabilityOutcome o{f, tau, true, -1};
        try {
            integ->run();
        } catch (const BlowUpError& e) {
            o.stable = false;
            o.blowup_step = e.step();
        }
        out.push_back(o);
    }
    return out;
}

// ---------------------------------------------------------------------------------------
// honeycomb

HoneycombResult run_honeycomb_2d(const Grid2D& grid, double eps, double tau, double T,
                                 const std::vector<double>& snapshot_times, std::size_t max_nodes) {
    if (grid.size() > max_nodes) {
        std::ostringstream os;
        os << "honeycomb: grid of " << grid.size() << " nodes exceeds the cap of " << max_nodes;
        throw ArgumentError(os.str());
    }
    const Problem problem = honeycomb_problem();
    const Mesh mesh(grid);
    SimParams p(eps, tau, T, mesh, problem.potentials, problem.initial(mesh));
    TsfpIntegrator integ(p);
    HoneycombResult res{grid, {}, {}, 0.0, 0.0};
    res.initial_mass = mass(p.initial);

    std::vector<long> snap_steps;
    for (double t : snapshot_times) snap_steps.push_back(std::lround(t / tau));
    auto record = [&]() {
        const SpinorField& u = integ.current();
        ObservableReport r = observe(u, integ.time(), problem.potentials, eps);
        res.snapshots.push_back({integ.time(), r.density.rho_comp[0], r.density.rho_comp[1]});
        res.reports.push_back(std::move(r));
    };
    auto wanted = [&](long n) { return std::find(snap_steps.begin(), snap_steps.end(), n) != snap_steps.end(); };
    if (wanted(0)) record();
    const long N = p.steps();
    while (integ.steps_taken() < N) {
        integ.step();
        const double drift = std::abs(mass(integ.current()) - res.initial_mass) / res.initial_mass;
        res.max_mass_drift = std::max(res.max_mass_drift, drift);
        if (wanted(integ.steps_taken())) record();
    }
    return res;
}

} // namespace diraclab
