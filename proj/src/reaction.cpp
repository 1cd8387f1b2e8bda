#include "httlab/reaction.hpp"

#include <array>
#include <cmath>

#include "httlab/errors.hpp"
#include "httlab/expr.hpp"

namespace httlab {

namespace {

double require(const std::map<std::string, double>& params, const std::string& name,
               const std::string& model) {
    auto it = params.find(name);
    if (it == params.end())
        throw ConfigError(model + ": missing parameter '" + name + "'");
    return it->second;
}

Model make_schnakenberg(const std::map<std::string, double>& params) {
    const double A = require(params, "A", "schnakenberg");
    const double B = require(params, "B", "schnakenberg");
    if (A + B <= 0.0) throw ConfigError("schnakenberg: A + B must be positive");
    if (B <= 0.0) throw ConfigError("schnakenberg: B must be positive");
    Model m;
    m.pair.label = "schnakenberg";
    m.pair.model_params = {{"A", A}, {"B", B}};
    m.pair.f = [A](double u, double v) { return A - u + u * u * v; };
    m.pair.g = [B](double u, double v) { return B - u * u * v; };
    m.pair.analytic_derivs = [](double u, double v) {
        ReactionDerivatives d;
        d.f_u = -1.0 + 2.0 * u * v; d.f_v = u * u;
        d.g_u = -2.0 * u * v;       d.g_v = -u * u;
        d.f_uu = 2.0 * v; d.f_uv = 2.0 * u;
        d.g_uu = -2.0 * v; d.g_uv = -2.0 * u;
        d.f_uuv = 2.0; d.g_uuv = -2.0;
        return d;
    };
    m.equilibrium = {A + B, B / ((A + B) * (A + B))};
    return m;
}

Model make_mimura_murray(const std::map<std::string, double>& params) {
    const double a = require(params, "a", "mimura_murray");
    const double b = require(params, "b", "mimura_murray");
    const double c = require(params, "c", "mimura_murray");
    const double d = require(params, "d", "mimura_murray");
    if (c == 0.0) throw ConfigError("mimura_murray: c must be nonzero");
    Model m;
    m.pair.label = "mimura_murray";
    m.pair.model_params = {{"a", a}, {"b", b}, {"c", c}, {"d", d}};
    m.pair.f = [a, b, c](double u, double v) { return ((a + b * u - u * u) / c - v) * u; };
    // alpha multiplies the whole second equation of the system; g itself stays alpha-free
    m.pair.g = [d](double u, double v) { return (u - (1.0 + d * v)) * v; };
    m.pair.analytic_derivs = [a, b, c, d](double u, double v) {
        ReactionDerivatives r;
        r.f_u = (a + 2.0 * b * u - 3.0 * u * u) / c - v;
        r.f_v = -u;
        r.f_uu = (2.0 * b - 6.0 * u) / c;
        r.f_uv = -1.0;
        r.f_uuu = -6.0 / c;
        r.g_u = v;
        r.g_v = u - 1.0 - 2.0 * d * v;
        r.g_uv = 1.0;
        r.g_vv = -2.0 * d;
        return r;
    };
    // interior equilibrium: v = (u-1)/d on the u-nullcline (a + b u - u^2)/c = v
    double ue, ve;
    if (d == 0.0) {
        ue = 1.0;
        ve = (a + b - 1.0) / c;
    } else {
        const double qa = d, qb = c - b * d, qc = -(a * d + c);
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc < 0.0)
            throw ConfigError("mimura_murray: parameters give no real interior equilibrium");
        ue = (-qb + std::sqrt(disc)) / (2.0 * qa);
        ve = (ue - 1.0) / d;
    }
    if (!(ue > 0.0) || !(ve > 0.0))
        throw ConfigError("mimura_murray: interior equilibrium is not positive");
    m.equilibrium = {ue, ve};
    return m;
}

Model make_artificial() {
    Model m;
    m.pair.label = "artificial";
    m.pair.f = [](double u, double v) { return u - 3.0 * v - u * u; };
    m.pair.g = [](double u, double v) { return 2.0 * u - 4.0 * v - 3.0 * u * u; };
    m.pair.analytic_derivs = [](double u, double) {
        ReactionDerivatives d;
        d.f_u = 1.0 - 2.0 * u; d.f_v = -3.0; d.f_uu = -2.0;
        d.g_u = 2.0 - 6.0 * u; d.g_v = -4.0; d.g_uu = -6.0;
        return d;
    };
    m.equilibrium = {0.0, 0.0};
    return m;
}

}  // namespace

Model builtin_model(const std::string& name, const std::map<std::string, double>& params) {
    if (name == "schnakenberg") return make_schnakenberg(params);
    if (name == "mimura_murray") return make_mimura_murray(params);
    if (name == "artificial") return make_artificial();
    throw ConfigError("unknown model '" + name + "'");
}

Model custom_model(const std::string& f_expr, const std::string& g_expr,
                   Equilibrium equilibrium, const std::map<std::string, double>& params) {
    const Expr fe = Expr::parse(f_expr);
    const Expr ge = Expr::parse(g_expr);
    for (const Expr* e : {&fe, &ge})
        for (const auto& p : e->param_names())
            if (!params.count(p))
                throw ConfigError("custom model: parameter '" + p + "' not provided");
    Model m;
    m.pair.label = "custom";
    m.pair.model_params = params;
    m.pair.f = [fe, params](double u, double v) { return fe.eval(u, v, params); };
    m.pair.g = [ge, params](double u, double v) { return ge.eval(u, v, params); };
    m.equilibrium = equilibrium;
    if (!std::isfinite(m.pair.f(equilibrium.u, equilibrium.v)) ||
        !std::isfinite(m.pair.g(equilibrium.u, equilibrium.v)))
        throw ConfigError("custom model: f or g not evaluable at the equilibrium");
    return m;
}

double equilibrium_residual(const ReactionPair& pair, const Equilibrium& eq) {
    return std::max(std::abs(pair.f(eq.u, eq.v)), std::abs(pair.g(eq.u, eq.v)));
}

namespace {

using Fn = std::function<double(double, double)>;

// 4th-order central stencils on a 7x7 tensor patch around (u0, v0).
struct Stencil {
    std::array<std::array<double, 7>, 7> val{};  // val[i][j] = fn(u0 + (i-3)h, v0 + (j-3)h)

    Stencil(const Fn& fn, double u0, double v0, double h) {
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j)
                val[i][j] = fn(u0 + (i - 3) * h, v0 + (j - 3) * h);
    }

    // weights indexed by offset -3..3
    static constexpr std::array<double, 7> d1 = {0, 1.0 / 12, -8.0 / 12, 0, 8.0 / 12, -1.0 / 12, 0};
    static constexpr std::array<double, 7> d2 = {0, -1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12, 0};
    static constexpr std::array<double, 7> d3 = {1.0 / 8, -1.0, 13.0 / 8, 0, -13.0 / 8, 1.0, -1.0 / 8};
    static constexpr std::array<double, 7> id = {0, 0, 0, 1, 0, 0, 0};

    double apply(const std::array<double, 7>& wu, const std::array<double, 7>& wv,
                 bool u_major) const {
        double acc = 0;
        if (u_major) {
            for (int i = 0; i < 7; ++i) {
                if (wu[i] == 0) continue;
                double row = 0;
                for (int j = 0; j < 7; ++j)
                    if (wv[j] != 0) row += wv[j] * val[i][j];
                acc += wu[i] * row;
            }
        } else {
            for (int j = 0; j < 7; ++j) {
                if (wv[j] == 0) continue;
                double col = 0;
                for (int i = 0; i < 7; ++i)
                    if (wu[i] != 0) col += wu[i] * val[i][j];
                acc += wv[j] * col;
            }
        }
        return acc;
    }

    // mixed partials averaged over the two summation orders
    double mixed(const std::array<double, 7>& wu, const std::array<double, 7>& wv) const {
        return 0.5 * (apply(wu, wv, true) + apply(wu, wv, false));
    }
};

// Steps are chosen per derivative order so that 4th-order truncation and
// rounding noise balance near the double-precision optimum; a single tiny step
// would drown the third derivatives (h^-3 noise amplification).
void fill_one(const Fn& fn, double u0, double v0, double scale, double shrink, double* out) {
    const double h1 = 1e-4 * scale * shrink;
    const double h2 = 2e-3 * scale * shrink;
    const double h3 = 8e-3 * scale * shrink;
    const Stencil s1(fn, u0, v0, h1), s2(fn, u0, v0, h2), s3(fn, u0, v0, h3);
    out[0] = s1.mixed(Stencil::d1, Stencil::id) / h1;                 // _u
    out[1] = s1.mixed(Stencil::id, Stencil::d1) / h1;                 // _v
    out[2] = s2.mixed(Stencil::d2, Stencil::id) / (h2 * h2);          // _uu
    out[3] = s2.mixed(Stencil::d1, Stencil::d1) / (h2 * h2);          // _uv
    out[4] = s2.mixed(Stencil::id, Stencil::d2) / (h2 * h2);          // _vv
    out[5] = s3.mixed(Stencil::d3, Stencil::id) / (h3 * h3 * h3);     // _uuu
    out[6] = s3.mixed(Stencil::d2, Stencil::d1) / (h3 * h3 * h3);     // _uuv
    out[7] = s3.mixed(Stencil::d1, Stencil::d2) / (h3 * h3 * h3);     // _uvv
    out[8] = s3.mixed(Stencil::id, Stencil::d3) / (h3 * h3 * h3);     // _vvv
}

}  // namespace

ReactionDerivatives finite_difference_derivatives(const ReactionPair& pair,
                                                  const Equilibrium& eq) {
    const double scale = std::max({std::abs(eq.u), std::abs(eq.v), 1.0});

    double f_h[9], g_h[9], f_h2[9], g_h2[9];
    fill_one(pair.f, eq.u, eq.v, scale, 1.0, f_h);
    fill_one(pair.g, eq.u, eq.v, scale, 1.0, g_h);
    fill_one(pair.f, eq.u, eq.v, scale, 0.5, f_h2);
    fill_one(pair.g, eq.u, eq.v, scale, 0.5, g_h2);

    double mag = 1e-30;
    for (int i = 0; i < 9; ++i) mag = std::max({mag, std::abs(f_h[i]), std::abs(g_h[i])});
    // relative gate with an absolute floor so that rounding noise on exact
    // zeros does not masquerade as disagreement
    for (int i = 0; i < 9; ++i) {
        const double df = std::abs(f_h[i] - f_h2[i]), dg = std::abs(g_h[i] - g_h2[i]);
        const double sf = std::max(std::abs(f_h[i]), std::abs(f_h2[i]));
        const double sg = std::max(std::abs(g_h[i]), std::abs(g_h2[i]));
        if (df > 1e-4 * sf + 1e-7 * mag || dg > 1e-4 * sg + 1e-7 * mag)
            throw NumericalError("derivative-unreliable: finite-difference estimates for '" +
                                 pair.label + "' disagree between steps h and h/2");
    }

    ReactionDerivatives d;
    d.f_u = f_h2[0]; d.f_v = f_h2[1];
    d.f_uu = f_h2[2]; d.f_uv = f_h2[3]; d.f_vv = f_h2[4];
    d.f_uuu = f_h2[5]; d.f_uuv = f_h2[6]; d.f_uvv = f_h2[7]; d.f_vvv = f_h2[8];
    d.g_u = g_h2[0]; d.g_v = g_h2[1];
    d.g_uu = g_h2[2]; d.g_uv = g_h2[3]; d.g_vv = g_h2[4];
    d.g_uuu = g_h2[5]; d.g_uuv = g_h2[6]; d.g_uvv = g_h2[7]; d.g_vvv = g_h2[8];
    return d;
}

ReactionDerivatives derivatives_at(const ReactionPair& pair, const Equilibrium& eq,
                                   double residual_tol) {
    if (equilibrium_residual(pair, eq) > residual_tol)
        throw NumericalError("derivatives_at: equilibrium residual above tolerance for '" +
                             pair.label + "'");
    if (pair.analytic_derivs) return pair.analytic_derivs(eq.u, eq.v);
    return finite_difference_derivatives(pair, eq);
}

}  // namespace httlab
