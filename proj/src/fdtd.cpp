#include "diraclab/fdtd.hpp"

#include "diraclab/errors.hpp"
#include "diraclab/spectral.hpp"

#include <cmath>
#include <sstream>

namespace diraclab {

namespace {

void require_1d(const SpinorField& u, const char* who) {
    if (u.mesh().dims() != 1 || u.components() != 2) {
        throw ArgumentError(std::string(who) + ": requires a 1D two-component field");
    }
}

void require_finite(const SpinorField& u, long step) {
    if (!u.all_finite()) {
        throw BlowUpError(step, "field became non-finite at step " + std::to_string(step));
    }
}

double A1(const PotentialSamples& s, std::size_t j) { return s.A.empty() ? 0.0 : s.A[0][j]; }

} // namespace

FdtdState::FdtdState(Scheme s, const SimParams& p) : scheme(s), current(p.initial), params(p) {
    if (!is_fdtd(s)) throw ArgumentError("fdtd state: scheme is not a finite-difference scheme");
    require_1d(p.initial, "fdtd state");
}

namespace kernels {

void apply_hamiltonian(const SpinorField& u, double eps, const PotentialSamples& s, SpinorField& out) {
    const int M = u.mesh().axis(0).M();
    const double h = u.mesh().axis(0).h();
    const double ie = 1.0 / (eps * eps);
    const double dc = 1.0 / (2.0 * h * eps);
    const cplx* a = u.component(0);
    const cplx* b = u.component(1);
    cplx* oa = out.component(0);
    cplx* ob = out.component(1);
    for (int j = 0; j < M; ++j) {
        const int jp = j + 1 == M ? 0 : j + 1;
        const int jm = j == 0 ? M - 1 : j - 1;
        const cplx da = (a[jp] - a[jm]) * dc;
        const cplx db = (b[jp] - b[jm]) * dc;
        const double V = s.V[j];
        const double A = A1(s, j);
        oa[j] = cplx(db.imag(), -db.real()) + (ie + V) * a[j] - A * b[j];
        ob[j] = cplx(da.imag(), -da.real()) + (V - ie) * b[j] - A * a[j];
    }
}

SpinorField lffd_update(const SpinorField& prev, const SpinorField& cur, double tau, double eps,
                        const PotentialSamples& s) {
    require_1d(cur, "lffd");
    require_compatible(prev, cur, "lffd");
    SpinorField hu(cur.mesh());
    apply_hamiltonian(cur, eps, s, hu);
    SpinorField next = prev;
    const cplx f(0.0, -2.0 * tau);
    for (std::size_t i = 0; i < next.data().size(); ++i) next.data()[i] += f * hu.data()[i];
    return next;
}

SpinorField sifd1_update(const SpinorField& prev, const SpinorField& cur, double tau, double eps,
                         const PotentialSamples& s) {
    require_1d(cur, "sifd1");
    require_compatible(prev, cur, "sifd1");
    const int M = cur.mesh().axis(0).M();
    const double h = cur.mesh().axis(0).h();
    const double te = tau / (eps * eps);
    const cplx k(0.0, -2.0 * tau / (eps * 2.0 * h));
    SpinorField next(cur.mesh());
    for (int j = 0; j < M; ++j) {
        const double V = s.V[j];
        const double A = A1(s, j);
        CMat2 lhs;
        lhs << cplx(-tau * V - te, 1.0), tau * A, tau * A, cplx(-tau * V + te, 1.0);
        CMat2 rhs;
        rhs << cplx(tau * V + te, 1.0), -tau * A, -tau * A, cplx(tau * V - te, 1.0);
        const CVec2 d(cur.at(1, j + 1) - cur.at(1, j - 1), cur.at(0, j + 1) - cur.at(0, j - 1));
        const CVec2 r = rhs * prev.spinor(j) + k * d;
        const cplx det = lhs(0, 0) * lhs(1, 1) - lhs(0, 1) * lhs(1, 0);
        if (std::abs(det) == 0.0) throw NumericalError("sifd1: singular nodal matrix");
        next.set_spinor(j, CVec2(lhs(1, 1) * r(0) - lhs(0, 1) * r(1), lhs(0, 0) * r(1) - lhs(1, 0) * r(0)) / det);
    }
    return next;
}

SpinorField sifd2_update(const SpinorField& prev, const SpinorField& cur, double tau, double eps,
                         const PotentialSamples& s) {
    require_1d(cur, "sifd2");
    require_compatible(prev, cur, "sifd2");
    const Mesh& mesh = cur.mesh();
    const Grid1D& g = mesh.axis(0);
    const int M = g.M();
    SpinorField p = prev;
    SpinorField gphi(mesh);
    for (int j = 0; j < M; ++j) {
        const double A = A1(s, j);
        gphi(0, j) = s.V[j] * cur(0, j) - A * cur(1, j);
        gphi(1, j) = s.V[j] * cur(1, j) - A * cur(0, j);
    }
    for (int c = 0; c < 2; ++c) {
        fft::forward(mesh, p.component(c));
        fft::forward(mesh, gphi.component(c));
    }
    const double h = g.h();
    for (int k = 0; k < M; ++k) {
        const double sym = std::sin(g.freq(g.mode_of_slot(k)) * h) / (eps * h);
        CMat2 K;
        K << 1.0 / (eps * eps), sym, sym, -1.0 / (eps * eps);
        const CMat2 lhs = I_unit * CMat2::Identity() - tau * K;
        const CMat2 rhs = I_unit * CMat2::Identity() + tau * K;
        p.set_spinor(k, lhs.inverse() * (rhs * p.spinor(k) + 2.0 * tau * gphi.spinor(k)));
    }
    const double scale = 1.0 / M;
    for (int c = 0; c < 2; ++c) {
        fft::backward(mesh, p.component(c));
        for (int j = 0; j < M; ++j) p(c, j) *= scale;
    }
    return p;
}

SpinorField cnfd_update(const SpinorField& cur, double tau, double eps, const PotentialSamples& half) {
    require_1d(cur, "cnfd");
    CnfdSolver solver(cur.mesh().axis(0), eps, tau, half);
    SpinorField rhs(cur.mesh());
    solver.apply_explicit(cur, rhs);
    return solver.solve(rhs);
}

} // namespace kernels

SpinorField first_step(const SimParams& params) {
    const SpinorField& u0 = params.initial;
    require_1d(u0, "first_step");
    const SpinorField du = params.initial_derivative ? *params.initial_derivative : spectral_derivative(u0, 0);
    const PotentialSamples s = sample_potential(params.potentials, 0.0, params.grid);
    const double eps = params.eps;
    const double tau = params.tau;
    const double s1 = std::sin(tau / eps);
    const double s3 = std::sin(tau / (eps * eps));
    SpinorField u1 = u0;
    const int M = params.grid.axis(0).M();
    for (int j = 0; j < M; ++j) {
        const cplx a = u0(0, j);
        const cplx b = u0(1, j);
        const double V = s.V[j];
        const double A = A1(s, j);
        const cplx ha = s3 * a + tau * V * a - tau * A * b;
        const cplx hb = -s3 * b + tau * V * b - tau * A * a;
        u1(0, j) = a - s1 * du(1, j) - I_unit * ha;
        u1(1, j) = b - s1 * du(0, j) - I_unit * hb;
    }
    return u1;
}

namespace {

SpinorField two_level_step(const FdtdState& state) {
    if (state.n < 1 || !state.previous) {
        throw ArgumentError("fdtd step: two-level scheme needs n >= 1 and a previous level");
    }
    const SimParams& p = state.params;
    const PotentialSamples s = sample_potential(p.potentials, state.n * p.tau, p.grid);
    switch (state.scheme) {
    case Scheme::lffd: return kernels::lffd_update(*state.previous, state.current, p.tau, p.eps, s);
    case Scheme::sifd1: return kernels::sifd1_update(*state.previous, state.current, p.tau, p.eps, s);
    default: return kernels::sifd2_update(*state.previous, state.current, p.tau, p.eps, s);
    }
}

} // namespace

SpinorField step_lffd(const FdtdState& state) {
    SpinorField out = two_level_step(state);
    require_finite(out, state.n + 1);
    return out;
}

SpinorField step_sifd1(const FdtdState& state) {
    SpinorField out = two_level_step(state);
    require_finite(out, state.n + 1);
    return out;
}

SpinorField step_sifd2(const FdtdState& state) {
    SpinorField out = two_level_step(state);
    require_finite(out, state.n + 1);
    return out;
}

SpinorField step_cnfd(const FdtdState& state) {
    const SimParams& p = state.params;
    const PotentialSamples half = sample_potential(p.potentials, (state.n + 0.5) * p.tau, p.grid);
    SpinorField out = kernels::cnfd_update(state.current, p.tau, p.eps, half);
    require_finite(out, state.n + 1);
    return out;
}

FdtdState advance(FdtdState state) {
    SpinorField next = state.current;
    if (state.scheme == Scheme::cnfd) {
        next = step_cnfd(state);
    } else if (state.n == 0) {
        next = first_step(state.params);
    } else if (state.scheme == Scheme::lffd) {
        next = step_lffd(state);
    } else if (state.scheme == Scheme::sifd1) {
        next = step_sifd1(state);
    } else {
        next = step_sifd2(state);
    }
    if (state.scheme != Scheme::cnfd) state.previous = std::move(state.current);
    state.current = std::move(next);
    ++state.n;
    return state;
}

StabilityBound stability_bound(Scheme scheme, double eps, double h, double Vmax, double Amax) {
    require_eps(eps, "stability_bound");
    if (!(h > 0.0)) throw ArgumentError("stability_bound: h must be positive");
    const double V = std::abs(Vmax);
    const double A = std::abs(Amax);
    switch (scheme) {
    case Scheme::lffd: {
        const double e2 = eps * eps;
        const double w = 1.0 + eps * h * A;
        return {false, e2 * h / (V * e2 * h + std::sqrt(h * h + e2 * w * w))};
    }
    case Scheme::sifd1: return {false, eps * h};
    case Scheme::sifd2:
        if (V + A == 0.0) return {true, 0.0};
        return {false, 1.0 / (V + A)};
    default: return {true, 0.0};
    }
}

double discrete_energy_fdtd(const SpinorField& field, const PotentialSet& potentials, double eps) {
    require_1d(field, "discrete_energy_fdtd");
    require_eps(eps, "discrete_energy_fdtd");
    if (!potentials.time_independent) {
        throw ContractError("discrete_energy_fdtd: potentials must be time independent");
    }
    const Grid1D& g = field.mesh().axis(0);
    const int M = g.M();
    const double h = g.h();
    const PotentialSamples s = sample_potential(potentials, 0.0, field.mesh());
    cplx kin{};
    double rest = 0.0;
    double pot = 0.0;
    double scale = 0.0;
    for (int j = 0; j < M; ++j) {
        const cplx a = field(0, j);
        const cplx b = field(1, j);
        const cplx da = (field.at(0, j + 1) - field.at(0, j - 1)) / (2.0 * h);
        const cplx db = (field.at(1, j + 1) - field.at(1, j - 1)) / (2.0 * h);
        kin += std::conj(a) * db + std::conj(b) * da;
        rest += std::norm(a) - std::norm(b);
        const double n2 = std::norm(a) + std::norm(b);
        pot += s.V[j] * n2 - A1(s, j) * 2.0 * (std::conj(a) * b).real();
        scale += n2;
    }
    const cplx kterm = -I_unit / eps * kin;
    const double tol = 1e-12 * std::max(1.0, std::abs(kterm) + scale / (eps * eps));
    if (std::abs(kterm.imag()) > tol) {
        std::ostringstream os;
        os << "discrete_energy_fdtd: imaginary residue " << kterm.imag();
        throw NumericalError(os.str());
    }
    return h * (kterm.real() + rest / (eps * eps) + pot);
}

// ---------------------------------------------------------------------------------------
// CnfdSolver

CnfdSolver::CnfdSolver(const Grid1D& grid, double eps, double tau, const PotentialSamples& half)
    : grid_(grid), c_(tau / (4.0 * eps * grid.h())) {
    const int M = grid.M();
    const double ie = 1.0 / (eps * eps);
    diag_.resize(M);
    diag_explicit_.resize(M);
    for (int j = 0; j < M; ++j) {
        const double V = half.V[j];
        const double A = A1(half, j);
        CMat2 h;
        h << ie + V, -A, -A, V - ie;
        diag_[j] = CMat2::Identity() + I_unit * (0.5 * tau) * h;
        diag_explicit_[j] = CMat2::Identity() - I_unit * (0.5 * tau) * h;
    }
    CMat2 U;
    U << 0.0, c_, c_, 0.0;
    const CMat2 L = -U;
    winv_.resize(M);
    cprime_.resize(M);
    winv_[0] = diag_[0].inverse();
    cprime_[0] = winv_[0] * U;
    for (int j = 1; j < M; ++j) {
        const CMat2 w = diag_[j] - L * cprime_[j - 1];
        if (std::abs(w.determinant()) < 1e-300) throw NumericalError("cnfd: singular pivot block");
        winv_[j] = w.inverse();
        cprime_[j] = winv_[j] * U;
    }

    z_.assign(static_cast<std::size_t>(4) * 2 * M, cplx{});
    std::vector<cplx> ya(M);
    std::vector<cplx> yb(M);
    for (int k = 0; k < 4; ++k) {
        std::fill(ya.begin(), ya.end(), cplx{});
        std::fill(yb.begin(), yb.end(), cplx{});
        const CMat2& blk = k < 2 ? L : U;
        const int row = k < 2 ? 0 : M - 1;
        ya[row] = blk(0, k % 2);
        yb[row] = blk(1, k % 2);
        cplx* za = z_.data() + static_cast<std::size_t>(k) * 2 * M;
        thomas(ya.data(), yb.data(), za, za + M);
    }
    // the corner responses decay geometrically into the interior; drop the subnormal tail
    for (cplx& z : z_) {
        if (std::abs(z.real()) < 1e-290) z.real(0.0);
        if (std::abs(z.imag()) < 1e-290) z.imag(0.0);
    }
    Eigen::Matrix<cplx, 4, 4> g = Eigen::Matrix<cplx, 4, 4>::Identity();
    for (int k = 0; k < 4; ++k) {
        const cplx* za = z_.data() + static_cast<std::size_t>(k) * 2 * M;
        g(0, k) += za[M - 1];
        g(1, k) += za[M + M - 1];
        g(2, k) += za[0];
        g(3, k) += za[M];
    }
    s_ = g.inverse();
}

void CnfdSolver::thomas(const cplx* ra, const cplx* rb, cplx* xa, cplx* xb) const {
    const int M = grid_.M();
    const double c = c_;
    // forward: d_j = Winv_j (r_j - L d_{j-1}), L v = -c (v_b, v_a)
    cplx pa = 0.0;
    cplx pb = 0.0;
    for (int j = 0; j < M; ++j) {
        const cplx qa = ra[j] + c * pb;
        const cplx qb = rb[j] + c * pa;
        const CMat2& w = winv_[j];
        pa = w(0, 0) * qa + w(0, 1) * qb;
        pb = w(1, 0) * qa + w(1, 1) * qb;
        xa[j] = pa;
        xb[j] = pb;
    }
    for (int j = M - 2; j >= 0; --j) {
        const CMat2& cp = cprime_[j];
        const cplx na = xa[j + 1];
        const cplx nb = xb[j + 1];
        xa[j] -= cp(0, 0) * na + cp(0, 1) * nb;
        xb[j] -= cp(1, 0) * na + cp(1, 1) * nb;
    }
}

void CnfdSolver::solve_raw(const cplx* ra, const cplx* rb, cplx* xa, cplx* xb) const {
    const int M = grid_.M();
    thomas(ra, rb, xa, xb);
    Eigen::Matrix<cplx, 4, 1> v(xa[M - 1], xb[M - 1], xa[0], xb[0]);
    const Eigen::Matrix<cplx, 4, 1> w = s_ * v;
    const std::size_t stride = static_cast<std::size_t>(2) * M;
    const cplx* z0 = z_.data();
    const cplx* z1 = z0 + stride;
    const cplx* z2 = z1 + stride;
    const cplx* z3 = z2 + stride;
    for (int j = 0; j < M; ++j) {
        xa[j] -= z0[j] * w(0) + z1[j] * w(1) + z2[j] * w(2) + z3[j] * w(3);
        xb[j] -= z0[M + j] * w(0) + z1[M + j] * w(1) + z2[M + j] * w(2) + z3[M + j] * w(3);
    }
}

void CnfdSolver::apply(const SpinorField& x, SpinorField& out) const {
    const int M = grid_.M();
    const cplx* a = x.component(0);
    const cplx* b = x.component(1);
    cplx* oa = out.component(0);
    cplx* ob = out.component(1);
    for (int j = 0; j < M; ++j) {
        const int jp = j + 1 == M ? 0 : j + 1;
        const int jm = j == 0 ? M - 1 : j - 1;
        const CMat2& d = diag_[j];
        oa[j] = d(0, 0) * a[j] + d(0, 1) * b[j] + c_ * (b[jp] - b[jm]);
        ob[j] = d(1, 0) * a[j] + d(1, 1) * b[j] + c_ * (a[jp] - a[jm]);
    }
}

void CnfdSolver::apply_explicit(const SpinorField& x, SpinorField& out) const {
    const int M = grid_.M();
    const cplx* a = x.component(0);
    const cplx* b = x.component(1);
    cplx* oa = out.component(0);
    cplx* ob = out.component(1);
    for (int j = 0; j < M; ++j) {
        const int jp = j + 1 == M ? 0 : j + 1;
        const int jm = j == 0 ? M - 1 : j - 1;
        const CMat2& d = diag_explicit_[j];
        oa[j] = d(0, 0) * a[j] + d(0, 1) * b[j] - c_ * (b[jp] - b[jm]);
        ob[j] = d(1, 0) * a[j] + d(1, 1) * b[j] - c_ * (a[jp] - a[jm]);
    }
}

namespace {

double l2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

} // namespace

SpinorField CnfdSolver::solve(const SpinorField& rhs) const {
    const Mesh mesh(grid_);
    const int M = grid_.M();
    SpinorField x(mesh);
    solve_raw(rhs.component(0), rhs.component(1), x.component(0), x.component(1));
    const double rn = l2(rhs.data());
    SpinorField r(mesh);
    SpinorField dx(mesh);
    for (int it = 0;; ++it) {
        apply(x, r);
        for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] = rhs.data()[i] - r.data()[i];
        last_residual_ = rn > 0.0 ? l2(r.data()) / rn : l2(r.data());
        if (last_residual_ <= 1e-12 || it == 2) break;
        solve_raw(r.component(0), r.component(1), dx.component(0), dx.component(1));
        for (int j = 0; j < 2 * M; ++j) x.data()[j] += dx.data()[j];
    }
    if (!(last_residual_ <= 1e-10)) {
        std::ostringstream os;
        os << "cnfd: relative residual " << last_residual_ << " after 2 refinements (M = " << M << ")";
        throw NumericalError(os.str());
    }
    return x;
}

// ---------------------------------------------------------------------------------------
// FdtdIntegrator

struct FdtdIntegrator::Sifd2Cache {
    std::vector<CMat2> lhs_inv;
    std::vector<CMat2> rhs;
    SpinorField gphi;
    explicit Sifd2Cache(const Mesh& m) : gphi(m) {}
};

FdtdIntegrator::FdtdIntegrator(Scheme s, const SimParams& p)
    : Integrator(p), scheme_(s), cur_(p.initial), prev_(p.initial), work_(p.initial) {
    if (!is_fdtd(s)) throw ArgumentError("fdtd integrator: not a finite-difference scheme");
    require_1d(p.initial, "fdtd integrator");
    if (p.potentials.time_independent) fixed_ = sample_potential(p.potentials, 0.0, p.grid);
    if (s == Scheme::sifd2) {
        const Grid1D& g = p.grid.axis(0);
        sifd2_ = std::make_unique<Sifd2Cache>(p.grid);
        sifd2_->lhs_inv.resize(g.M());
        sifd2_->rhs.resize(g.M());
        for (int k = 0; k < g.M(); ++k) {
            const double sym = std::sin(g.freq(g.mode_of_slot(k)) * g.h()) / (p.eps * g.h());
            CMat2 K;
            K << 1.0 / (p.eps * p.eps), sym, sym, -1.0 / (p.eps * p.eps);
            sifd2_->lhs_inv[k] = (I_unit * CMat2::Identity() - p.tau * K).inverse();
            sifd2_->rhs[k] = I_unit * CMat2::Identity() + p.tau * K;
        }
    }
    if (s == Scheme::cnfd && p.potentials.time_independent) {
        cnfd_ = std::make_unique<CnfdSolver>(p.grid.axis(0), p.eps, p.tau, fixed_);
    }
}

FdtdIntegrator::~FdtdIntegrator() = default;

const PotentialSamples& FdtdIntegrator::samples_at(double t) {
    if (params_.potentials.time_independent) return fixed_;
    scratch_ = sample_potential(params_.potentials, t, params_.grid);
    return scratch_;
}

void FdtdIntegrator::step_sifd2_cached() {
    const Mesh& mesh = params_.grid;
    const int M = mesh.axis(0).M();
    const PotentialSamples& s = samples_at(n_ * params_.tau);
    SpinorField& g = sifd2_->gphi;
    for (int j = 0; j < M; ++j) {
        const double A = A1(s, j);
        g(0, j) = s.V[j] * cur_(0, j) - A * cur_(1, j);
        g(1, j) = s.V[j] * cur_(1, j) - A * cur_(0, j);
    }
    // prev_ becomes the new level in place
    for (int c = 0; c < 2; ++c) {
        fft::forward(mesh, prev_.component(c));
        fft::forward(mesh, g.component(c));
    }
    const double tau2 = 2.0 * params_.tau;
    for (int k = 0; k < M; ++k) {
        prev_.set_spinor(k, sifd2_->lhs_inv[k] * (sifd2_->rhs[k] * prev_.spinor(k) + tau2 * g.spinor(k)));
    }
    const double scale = 1.0 / M;
    for (int c = 0; c < 2; ++c) {
        fft::backward(mesh, prev_.component(c));
        for (int j = 0; j < M; ++j) prev_(c, j) *= scale;
    }
    std::swap(prev_, cur_);
}

void FdtdIntegrator::step_cnfd_cached() {
    const double th = (n_ + 0.5) * params_.tau;
    std::unique_ptr<CnfdSolver> fresh;
    const CnfdSolver* solver = cnfd_.get();
    if (!solver) {
        fresh = std::make_unique<CnfdSolver>(params_.grid.axis(0), params_.eps, params_.tau,
                                             sample_potential(params_.potentials, th, params_.grid));
        solver = fresh.get();
    }
    solver->apply_explicit(cur_, work_);
    if (n_ % check_interval_ == 0) {
        cur_ = solver->solve(work_);
    } else {
        solver->solve_raw(work_.component(0), work_.component(1), cur_.component(0), cur_.component(1));
    }
}

void FdtdIntegrator::advance() {
    if (scheme_ == Scheme::cnfd) {
        step_cnfd_cached();
        return;
    }
    if (n_ == 0) {
        prev_ = cur_;
        cur_ = first_step(params_);
        return;
    }
    if (scheme_ == Scheme::sifd2) {
        step_sifd2_cached();
        return;
    }
    const PotentialSamples& s = samples_at(n_ * params_.tau);
    if (scheme_ == Scheme::lffd) {
        kernels::apply_hamiltonian(cur_, params_.eps, s, work_);
        const cplx f(0.0, -2.0 * params_.tau);
        auto& pd = prev_.data();
        const auto& wd = work_.data();
        for (std::size_t i = 0; i < pd.size(); ++i) pd[i] += f * wd[i];
        std::swap(prev_, cur_);
        return;
    }
    SpinorField next = kernels::sifd1_update(prev_, cur_, params_.tau, params_.eps, s);
    prev_ = std::move(cur_);
    cur_ = std::move(next);
}

} // namespace diraclab
