#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>

namespace httlab {

// All partials of (f, g) at the equilibrium up to third order.
struct ReactionDerivatives {
    double f_u = 0, f_v = 0, g_u = 0, g_v = 0;
    double f_uu = 0, f_uv = 0, f_vv = 0;
    double g_uu = 0, g_uv = 0, g_vv = 0;
    double f_uuu = 0, f_uuv = 0, f_uvv = 0, f_vvv = 0;
    double g_uuu = 0, g_uuv = 0, g_uvv = 0, g_vvv = 0;

    double trace() const { return f_u + g_v; }
    double det() const { return f_u * g_v - f_v * g_u; }

    // tr M < 0, det M > 0: the equilibrium is stable for the pure kinetics.
    bool ode_stable() const { return trace() < 0.0 && det() > 0.0; }
    // f_u > 0 > g_v is what makes the Hopf time-constant alpha* exist.
    bool hopf_sign_condition() const { return f_u > 0.0 && g_v < 0.0; }
};

struct Equilibrium {
    double u = 0, v = 0;
};

// Reaction pair f, g with an optional analytic-derivative hook (set for built-ins).
struct ReactionPair {
    std::function<double(double, double)> f;
    std::function<double(double, double)> g;
    std::string label;
    std::map<std::string, double> model_params;
    std::function<ReactionDerivatives(double, double)> analytic_derivs;  // may be empty
};

// (D_u, D_v, alpha, L); the base wavenumber k = pi/L is derived, never stored.
struct SystemParams {
    double D_u = 0, D_v = 0, alpha = 1, L = 1;
    double k() const { return M_PI / L; }
};

struct Model {
    ReactionPair pair;
    Equilibrium equilibrium;
};

// name in {schnakenberg, mimura_murray, artificial}; params validated eagerly.
Model builtin_model(const std::string& name, const std::map<std::string, double>& params);

// User-supplied reaction pair from expression strings; equilibrium as given.
Model custom_model(const std::string& f_expr, const std::string& g_expr,
                   Equilibrium equilibrium, const std::map<std::string, double>& params);

double equilibrium_residual(const ReactionPair& pair, const Equilibrium& eq);

// Analytic partials when the pair carries them, otherwise 4th-order central
// finite differences with a step-halving cross-check.
ReactionDerivatives derivatives_at(const ReactionPair& pair, const Equilibrium& eq,
                                   double residual_tol = 1e-12);

// Always the finite-difference path (test hook for the analytic/FD agreement property).
ReactionDerivatives finite_difference_derivatives(const ReactionPair& pair,
                                                  const Equilibrium& eq);

}  // namespace httlab
