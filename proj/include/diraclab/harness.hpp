#pragma once

#include "diraclab/fdtd.hpp"
#include "diraclab/field.hpp"
#include "diraclab/observables.hpp"
#include "diraclab/problems.hpp"
#include "diraclab/scheme.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace diraclab {

// ---------------------------------------------------------------------------------------
// error norms

/// Restriction of `reference` onto `mesh` by node subsampling; the reference grid must be
/// an integer refinement of `mesh` over the same box.
SpinorField restrict_to(const SpinorField& reference, const Mesh& mesh);

/// sqrt(h sum_j |U_j - R_j|^2) with R restricted to the numeric grid.
double error_norm(const SpinorField& numeric, const SpinorField& reference);

enum class ObservableKind { density, current };

/// h sum_j |rho_num - rho_ref| (density) or h sum_j sum_k |J_k,num - J_k,ref| (current).
double observable_error_l1(const SpinorField& numeric, const SpinorField& reference, double eps,
                           ObservableKind kind);

/// log(e_prev / e) / log(ratio).
double observed_order(double e_prev, double e, double ratio);

// ---------------------------------------------------------------------------------------
// experiments

enum class ReferenceKind { analytic, tsfp_fine };
enum class ErrorNormKind { l2, l1_density };
enum class CellLayout { product, zip, coupled };

struct ReferenceSpec {
    ReferenceKind kind = ReferenceKind::tsfp_fine;
    double h_e = 1.0 / 16.0;
    double tau_e = 1e-5;
    /// Also run the reference at tau_e/2 and flag cells within 10x of the difference.
    bool self_check = false;
};

struct ExperimentSpec {
    std::string problem = "gaussian-1d";
    ProblemOptions problem_options;
    std::vector<Scheme> schemes;
    std::vector<double> eps;
    std::vector<double> h;
    std::vector<double> tau;
    bool tau_auto = false;
    CellLayout layout = CellLayout::product;
    /// coupled layout: levels of coupled_fdtd_levels(h[0], tau[0], eps, coupled_eps0, coupled_levels)
    int coupled_levels = 4;
    double coupled_eps0 = 1.0;
    double T = 2.0;
    ReferenceSpec reference;
    ErrorNormKind norm = ErrorNormKind::l2;
};

enum class CellStatus { ok, unstable, reference_limited };
std::string to_string(CellStatus s);

struct ConvergenceRecord {
    Scheme scheme;
    double eps = 1.0;
    double h = 0.0;
    double tau = 0.0;
    std::optional<double> error;
    std::optional<double> order;
    CellStatus status = CellStatus::ok;
    double wall_time = 0.0;
    long blowup_step = -1;
};

struct Cell {
    Scheme scheme;
    double eps;
    double h;
    double tau;
    int row;  // cells sharing a row get orders against their predecessor
};

/// Expands the spec into cells (tau auto resolved) in output order.
std::vector<Cell> expand_cells(const ExperimentSpec& spec);

/// 0.9 * stability bound, shrunk so that it divides T. Throws ConfigError for
/// unconditionally stable schemes.
double auto_tau(Scheme s, double eps, double h, double T, const Problem& problem);

/// Coupled refinement for two-level FDTD temporal tables: level k uses
/// tau = tau0/8^k and h = h0/8^k * delta_k, delta_k = eps^2 if eps >= eps0/2^k else eps0^2/4^k.
std::pair<std::vector<double>, std::vector<double>> coupled_fdtd_levels(double h0, double tau0, double eps,
                                                                         double eps0, int levels);

/// Runs one scheme on a problem; throws BlowUpError on instability.
SpinorField run_scheme(Scheme s, const Problem& problem, double eps, double h, double tau, double T);

/// Reference solution at time T on mesh spacing h_e (or the analytic free flow).
SpinorField reference_solution(const Problem& problem, const ReferenceSpec& ref, double eps, double T,
                               double h_cell);

/// Reference brought to a cell's mesh: subsampled when finer, trigonometric interpolation when coarser.
SpinorField align_reference(const SpinorField& reference, const Mesh& mesh);

/// Worker count: DIRAC_LAB_THREADS when set, else 1.
int default_threads();

/// One record per cell, references computed once per eps. Deterministic for a fixed spec.
std::vector<ConvergenceRecord> run_convergence(const ExperimentSpec& spec, int threads = default_threads());

// ---------------------------------------------------------------------------------------
// stability

struct StabilityOutcome {
    double factor;
    double tau;
    bool stable;
    long blowup_step;  // -1 when stable
};

struct StabilityScanOptions {
    double V0 = 1.0;
    double A0 = 1.0;
    double T = 2.0;
    unsigned long seed = 20140603;
    /// Bound used when the scheme itself is unconditional (CNFD scans use the LFFD bound).
    std::optional<Scheme> bound_scheme;
};

/// For each factor runs ceil(T/tau) steps at tau = factor * bound and classifies by blow-up.
std::vector<StabilityOutcome> stability_scan(Scheme scheme, double eps, double h, const std::vector<double>& factors,
                                             const StabilityScanOptions& opt = {});

// ---------------------------------------------------------------------------------------
// honeycomb

struct DensitySnapshot {
    double t;
    std::vector<double> rho1;
    std::vector<double> rho2;
};

struct HoneycombResult {
    Grid2D grid;
    std::vector<ObservableReport> reports;
    std::vector<DensitySnapshot> snapshots;
    double initial_mass = 0.0;
    double max_mass_drift = 0.0;  // relative
};

/// TSFP run of the honeycomb problem, snapshotting at the requested times (rounded to steps).
HoneycombResult run_honeycomb_2d(const Grid2D& grid, double eps, double tau, double T,
                                 const std::vector<double>& snapshot_times, std::size_t max_nodes = 1u << 22);

} // namespace diraclab
