#pragma once

#include <cstdint>
#include <vector>

#include "httlab/diagnostics.hpp"
#include "httlab/reaction.hpp"

namespace httlab {

enum class BoundaryCondition { Neumann, Periodic };

struct Grid {
    int n_points = 0;
    double dx = 0;
    BoundaryCondition bc = BoundaryCondition::Neumann;
    double L = 0;

    static Grid neumann(int n_points, double L) {
        return {n_points, L / (n_points - 1), BoundaryCondition::Neumann, L};
    }
    static Grid periodic(int n_points, double L) {
        return {n_points, L / n_points, BoundaryCondition::Periodic, L};
    }
    double x(int i) const { return i * dx; }
};

struct FieldState {
    double t = 0;
    std::vector<double> u, v;
};

enum class PdeMethod {
    Imex,     // Crank-Nicolson diffusion, Heun reaction, dt adapted on reaction error
    Explicit  // RK4 with a CFL guard
};

struct PdeOptions {
    PdeMethod method = PdeMethod::Imex;
    double rtol = 1e-6;
    double atol = 1e-9;
    double dt_init = 1e-3;
    double dt_max = 0.05;
};

// Equilibrium plus a uniform random perturbation with a fixed seed.
FieldState default_initial_state(const Grid& grid, const Equilibrium& eq,
                                 double amplitude = 1e-3, std::uint64_t seed = 42);

class PdeSimulator {
public:
    PdeSimulator(Model model, SystemParams params, Grid grid, PdeOptions opt = {});

    // Advance st in place to time t_end.
    void advance(FieldState& st, double t_end);

    // Sampled trajectory from state0 over [state0.t, t_end].
    std::vector<FieldState> run(const FieldState& state0, double t_end,
                                std::size_t n_samples);

    const Grid& grid() const { return grid_; }
    const SystemParams& params() const { return params_; }
    const Model& model() const { return model_; }

private:
    void step_imex(FieldState& st, double& dt, double t_end);
    void step_explicit(FieldState& st, double& dt, double t_end);
    void laplacian(const std::vector<double>& f, std::vector<double>& out) const;
    void solve_helmholtz(std::vector<double>& rhs, double coef) const;  // (I - coef*Lap) x = rhs
    void check_finite(const FieldState& st) const;

    Model model_;
    SystemParams params_;
    Grid grid_;
    PdeOptions opt_;
    // scratch
    mutable std::vector<double> lap_u_, lap_v_, ru_, rv_, ru2_, rv2_, pu_, pv_, wrk_;
};

enum class NormKind { Stationary, Periodic };

// ||u||_* : L2(0,L)/sqrt(L) of a single state, or the space-time L2 over one
// period window normalized by sqrt(T L).
double solution_norm(const std::vector<FieldState>& window, const Grid& grid, NormKind kind,
                     bool use_v = false);

// L2(0,L)/sqrt(L) norm of one field sample.
double state_norm(const std::vector<double>& f, const Grid& grid);

struct Fig19Result {
    std::vector<FieldState> snapshots;
    std::vector<double> t, norm;  // L2-norm series of u
    PeriodEstimate period;        // expected not periodic
};

// The periodic-boundary chaotic run: Schnakenberg with D_u = 0.014,
// D_v = 0.1502, A = 0.1, B = 1.0, alpha = 0.6, L = 2.
struct Fig19Config {
    double D_u = 0.014, D_v = 0.1502, A = 0.1, B = 1.0, alpha = 0.6, L = 2.0;
    int n_points = 256;
    double t_end = 500.0;
    double t_transient = 100.0;
    double sample_dt = 0.05;
    double ic_amplitude = 1e-3;
    std::uint64_t seed = 42;
    PdeOptions options;
};

Fig19Result run_fig19(const Fig19Config& cfg = {});

}  // namespace httlab
