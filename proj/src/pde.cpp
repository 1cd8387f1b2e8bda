#include "httlab/pde.hpp"

#include <cmath>
#include <random>

#include "httlab/errors.hpp"

namespace httlab {

FieldState default_initial_state(const Grid& grid, const Equilibrium& eq, double amplitude,
                                 std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    FieldState st;
    st.t = 0;
    st.u.resize(grid.n_points);
    st.v.resize(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        st.u[i] = eq.u + amplitude * unif(rng);
        st.v[i] = eq.v + amplitude * unif(rng);
    }
    return st;
}

PdeSimulator::PdeSimulator(Model model, SystemParams params, Grid grid, PdeOptions opt)
    : model_(std::move(model)), params_(params), grid_(grid), opt_(opt) {
    if (grid_.n_points < 8) throw ConfigError("pde: grid too coarse");
    const int n = grid_.n_points;
    lap_u_.resize(n); lap_v_.resize(n);
    ru_.resize(n); rv_.resize(n); ru2_.resize(n); rv2_.resize(n);
    pu_.resize(n); pv_.resize(n); wrk_.resize(2 * n);
}

void PdeSimulator::laplacian(const std::vector<double>& f, std::vector<double>& out) const {
    const int n = grid_.n_points;
    const double idx2 = 1.0 / (grid_.dx * grid_.dx);
    if (grid_.bc == BoundaryCondition::Neumann) {
        out[0] = 2.0 * (f[1] - f[0]) * idx2;  // reflecting ghost f[-1] = f[1]
        for (int i = 1; i + 1 < n; ++i) out[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) * idx2;
        out[n - 1] = 2.0 * (f[n - 2] - f[n - 1]) * idx2;
    } else {
        for (int i = 0; i < n; ++i) {
            const double fm = f[(i + n - 1) % n], fp = f[(i + 1) % n];
            out[i] = (fm - 2.0 * f[i] + fp) * idx2;
        }
    }
}

// Solve (I - coef * Lap) x = rhs in place. Tridiagonal (Thomas) for Neumann,
// Sherman-Morrison around the cyclic corner terms for periodic.
void PdeSimulator::solve_helmholtz(std::vector<double>& rhs, double coef) const {
    const int n = grid_.n_points;
    const double r = coef / (grid_.dx * grid_.dx);
    std::vector<double>& cp = wrk_;
    if (grid_.bc == BoundaryCondition::Neumann) {
        // rows: [1+2r, -2r] ... [-r, 1+2r, -r] ... [-2r, 1+2r]
        double beta = 1.0 + 2.0 * r;
        cp[0] = -2.0 * r / beta;
        rhs[0] /= beta;
        for (int i = 1; i < n; ++i) {
            const double a = -r * ((i == n - 1) ? 2.0 : 1.0);
            const double c = -r;
            beta = (1.0 + 2.0 * r) - a * cp[i - 1];
            cp[i] = c / beta;
            rhs[i] = (rhs[i] - a * rhs[i - 1]) / beta;
        }
        for (int i = n - 2; i >= 0; --i) rhs[i] -= cp[i] * rhs[i + 1];
    } else {
        // cyclic system with diagonal 1+2r, off-diagonals -r, corner entries -r
        const double b = 1.0 + 2.0 * r, off = -r;
        const double gamma = -b;
        auto thomas = [&](std::vector<double>& x, double b0, double bn) {
            double beta = b0;
            cp[0] = off / beta;
            x[0] /= beta;
            for (int i = 1; i < n; ++i) {
                const double diag = (i == n - 1) ? bn : b;
                beta = diag - off * cp[i - 1];
                cp[i] = off / beta;
                x[i] = (x[i] - off * x[i - 1]) / beta;
            }
            for (int i = n - 2; i >= 0; --i) x[i] -= cp[i] * x[i + 1];
        };
        std::vector<double> z(n, 0.0);
        z[0] = gamma;
        z[n - 1] = off;
        const double b0 = b - gamma, bn = b - off * off / gamma;
        thomas(rhs, b0, bn);
        thomas(z, b0, bn);
        const double fact = (rhs[0] + off * rhs[n - 1] / gamma) /
                            (1.0 + z[0] + off * z[n - 1] / gamma);
        for (int i = 0; i < n; ++i) rhs[i] -= fact * z[i];
    }
}

void PdeSimulator::check_finite(const FieldState& st) const {
    for (int i = 0; i < grid_.n_points; ++i) {
        if (!std::isfinite(st.u[i]) || !std::isfinite(st.v[i]) ||
            std::abs(st.u[i]) + std::abs(st.v[i]) > 1e8)
            throw NumericalError("pde: blow-up detected at t = " + std::to_string(st.t));
    }
}

void PdeSimulator::step_imex(FieldState& st, double& dt, double t_end) {
    const int n = grid_.n_points;
    const double Du = params_.D_u, Dv = params_.alpha * params_.D_v;
    const auto& f = model_.pair.f;
    const auto& g = model_.pair.g;
    const double alpha = params_.alpha;

    for (;;) {
        double h = std::min(dt, t_end - st.t);
        laplacian(st.u, lap_u_);
        laplacian(st.v, lap_v_);
        for (int i = 0; i < n; ++i) {
            ru_[i] = f(st.u[i], st.v[i]);
            rv_[i] = alpha * g(st.u[i], st.v[i]);
        }
        // predictor: (I - h/2 D Lap) u* = u + h/2 D Lap u + h R(u)
        for (int i = 0; i < n; ++i) {
            pu_[i] = st.u[i] + 0.5 * h * Du * lap_u_[i] + h * ru_[i];
            pv_[i] = st.v[i] + 0.5 * h * Dv * lap_v_[i] + h * rv_[i];
        }
        solve_helmholtz(pu_, 0.5 * h * Du);
        solve_helmholtz(pv_, 0.5 * h * Dv);
        // corrector with averaged reaction
        for (int i = 0; i < n; ++i) {
            ru2_[i] = f(pu_[i], pv_[i]);
            rv2_[i] = alpha * g(pu_[i], pv_[i]);
        }
        double err = 0.0;
        for (int i = 0; i < n; ++i) {
            const double eu = 0.5 * h * (ru2_[i] - ru_[i]);
            const double ev = 0.5 * h * (rv2_[i] - rv_[i]);
            err = std::max(err, std::abs(eu) / (opt_.atol + opt_.rtol * std::abs(st.u[i])));
            err = std::max(err, std::abs(ev) / (opt_.atol + opt_.rtol * std::abs(st.v[i])));
        }
        if (err <= 1.0 || h <= 1e-12) {
            for (int i = 0; i < n; ++i) {
                pu_[i] = st.u[i] + 0.5 * h * Du * lap_u_[i] + 0.5 * h * (ru_[i] + ru2_[i]);
                pv_[i] = st.v[i] + 0.5 * h * Dv * lap_v_[i] + 0.5 * h * (rv_[i] + rv2_[i]);
            }
            solve_helmholtz(pu_, 0.5 * h * Du);
            solve_helmholtz(pv_, 0.5 * h * Dv);
            st.u.swap(pu_);
            st.v.swap(pv_);
            st.t += h;
            const double fac = std::clamp(0.9 / std::sqrt(std::max(err, 1e-8)), 0.3, 2.0);
            dt = std::min(h * fac, opt_.dt_max);
            check_finite(st);
            return;
        }
        dt = h * std::max(0.9 / std::sqrt(err), 0.1);
        if (dt < 1e-13) throw NumericalError("pde: step-size underflow");
    }
}

void PdeSimulator::step_explicit(FieldState& st, double& dt, double t_end) {
    const int n = grid_.n_points;
    const double Du = params_.D_u, Dv = params_.alpha * params_.D_v;
    const double cfl = 0.45 * grid_.dx * grid_.dx / std::max(Du, Dv);
    double h = std::min({dt, cfl, t_end - st.t});
    const auto& f = model_.pair.f;
    const auto& g = model_.pair.g;
    const double alpha = params_.alpha;
    auto rhs = [&](const std::vector<double>& u, const std::vector<double>& v,
                   std::vector<double>& du, std::vector<double>& dv) {
        laplacian(u, lap_u_);
        laplacian(v, lap_v_);
        for (int i = 0; i < n; ++i) {
            du[i] = Du * lap_u_[i] + f(u[i], v[i]);
            dv[i] = Dv * lap_v_[i] + alpha * g(u[i], v[i]);
        }
    };
    // classical RK4
    static thread_local std::vector<double> k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v, tu, tv;
    for (auto* vp : {&k1u, &k1v, &k2u, &k2v, &k3u, &k3v, &k4u, &k4v, &tu, &tv}) vp->resize(n);
    rhs(st.u, st.v, k1u, k1v);
    for (int i = 0; i < n; ++i) { tu[i] = st.u[i] + 0.5 * h * k1u[i]; tv[i] = st.v[i] + 0.5 * h * k1v[i]; }
    rhs(tu, tv, k2u, k2v);
    for (int i = 0; i < n; ++i) { tu[i] = st.u[i] + 0.5 * h * k2u[i]; tv[i] = st.v[i] + 0.5 * h * k2v[i]; }
    rhs(tu, tv, k3u, k3v);
    for (int i = 0; i < n; ++i) { tu[i] = st.u[i] + h * k3u[i]; tv[i] = st.v[i] + h * k3v[i]; }
    rhs(tu, tv, k4u, k4v);
    for (int i = 0; i < n; ++i) {
        st.u[i] += h / 6.0 * (k1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4u[i]);
        st.v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    }
    st.t += h;
    dt = std::min(opt_.dt_max, cfl);
    check_finite(st);
}

void PdeSimulator::advance(FieldState& st, double t_end) {
    double dt = opt_.dt_init;
    std::size_t guard = 0;
    while (st.t < t_end - 1e-12) {
        if (opt_.method == PdeMethod::Imex)
            step_imex(st, dt, t_end);
        else
            step_explicit(st, dt, t_end);
        if (++guard > 200'000'000) throw NumericalError("pde: step budget exhausted");
    }
    st.t = t_end;
}

std::vector<FieldState> PdeSimulator::run(const FieldState& state0, double t_end,
                                          std::size_t n_samples) {
    std::vector<FieldState> out;
    out.reserve(n_samples + 1);
    FieldState st = state0;
    out.push_back(st);
    for (std::size_t i = 1; i <= n_samples; ++i) {
        const double t =
            state0.t + (t_end - state0.t) * static_cast<double>(i) / static_cast<double>(n_samples);
        advance(st, t);
        out.push_back(st);
    }
    return out;
}

double state_norm(const std::vector<double>& f, const Grid& grid) {
    // trapezoid for Neumann data, plain sum for the periodic wrap
    double acc = 0;
    const int n = grid.n_points;
    if (grid.bc == BoundaryCondition::Neumann) {
        for (int i = 0; i < n; ++i) {
            const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            acc += w * f[i] * f[i];
        }
    } else {
        for (int i = 0; i < n; ++i) acc += f[i] * f[i];
    }
    return std::sqrt(acc * grid.dx / grid.L);
}

double solution_norm(const std::vector<FieldState>& window, const Grid& grid, NormKind kind,
                     bool use_v) {
    if (window.empty()) throw ConfigError("solution_norm: empty window");
    if (kind == NormKind::Stationary) {
        const auto& f = use_v ? window.back().v : window.back().u;
        return state_norm(f, grid);
    }
    if (window.size() < 3) throw ConfigError("solution_norm: periodic window too short");
    // space-time L2 over the window, trapezoid in t
    double acc = 0;
    for (std::size_t s = 0; s + 1 < window.size(); ++s) {
        const double dt = window[s + 1].t - window[s].t;
        const double n0 = state_norm(use_v ? window[s].v : window[s].u, grid);
        const double n1 = state_norm(use_v ? window[s + 1].v : window[s + 1].u, grid);
        acc += 0.5 * dt * (n0 * n0 + n1 * n1);
    }
    const double T = window.back().t - window.front().t;
    return std::sqrt(acc / T);
}

Fig19Result run_fig19(const Fig19Config& cfg) {
    Model model = builtin_model("schnakenberg", {{"A", cfg.A}, {"B", cfg.B}});
    SystemParams params{cfg.D_u, cfg.D_v, cfg.alpha, cfg.L};
    Grid grid = Grid::periodic(cfg.n_points, cfg.L);
    PdeSimulator sim(model, params, grid, cfg.options);

    FieldState st = default_initial_state(grid, model.equilibrium, cfg.ic_amplitude, cfg.seed);
    sim.advance(st, cfg.t_transient);

    Fig19Result res;
    const std::size_t n_samples =
        static_cast<std::size_t>((cfg.t_end - cfg.t_transient) / cfg.sample_dt);
    res.t.reserve(n_samples + 1);
    res.norm.reserve(n_samples + 1);
    const std::size_t snap_every = std::max<std::size_t>(1, n_samples / 200);
    for (std::size_t i = 0; i <= n_samples; ++i) {
        if (i > 0) sim.advance(st, cfg.t_transient + static_cast<double>(i) * cfg.sample_dt);
        res.t.push_back(st.t);
        res.norm.push_back(state_norm(st.u, grid));
        if (i % snap_every == 0) res.snapshots.push_back(st);
    }
    res.period = estimate_period(res.t, res.norm);
    return res;
}

}  // namespace httlab
