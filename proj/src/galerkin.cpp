#include "httlab/galerkin.hpp"

#include <memory>

#include <cmath>

#include "httlab/errors.hpp"
#include "httlab/stability.hpp"

namespace httlab {

bool FourierState::finite() const {
    for (const auto& c : u)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    for (const auto& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

double FourierState::max_imag() const {
    double m = 0;
    for (const auto& c : u) m = std::max(m, std::abs(c.imag()));
    for (const auto& c : v) m = std::max(m, std::abs(c.imag()));
    return m;
}

TruncatedVectorField::TruncatedVectorField(ReactionDerivatives derivs, SystemParams params,
                                           int N, Nonlinearity mode, ReactionPair pair,
                                           Equilibrium eq)
    : derivs_(derivs), params_(params), N_(N), mode_(mode), pair_(std::move(pair)), eq_(eq) {
    if (N < 4)
        throw ConfigError("galerkin: N must be >= 4 (modes 3 and 4 carry slaved variables)");
    if (mode_ == Nonlinearity::Exact && (!pair_.f || !pair_.g))
        throw ConfigError("galerkin: exact nonlinearity needs the reaction pair");
    M_ = 4 * (N_ + 1);  // resolves cubic products of band-limited states exactly
    fwd_.resize(static_cast<size_t>(N_ + 1) * M_);
    bwd_.resize(static_cast<size_t>(N_ + 1) * M_);
    for (int m = 0; m <= N_; ++m)
        for (int j = 0; j < M_; ++j) {
            const double th = 2.0 * M_PI * m * j / M_;
            bwd_[static_cast<size_t>(m) * M_ + j] = Complex(std::cos(th), std::sin(th));
            fwd_[static_cast<size_t>(m) * M_ + j] = Complex(std::cos(th), -std::sin(th));
        }
    mode_mats_.reserve(N_ + 1);
    for (int m = 0; m <= N_; ++m) mode_mats_.push_back(mode_matrix(derivs_, params_, m).entries);
}

void TruncatedVectorField::nonlinear_grid(std::vector<Complex>& fo, std::vector<Complex>& go,
                                          const std::vector<Complex>& ug,
                                          const std::vector<Complex>& vg) const {
    const auto& d = derivs_;
    if (mode_ == Nonlinearity::TaylorCubic) {
        for (int j = 0; j < M_; ++j) {
            const Complex U = ug[j], V = vg[j];
            fo[j] = 0.5 * d.f_uu * U * U + d.f_uv * U * V + 0.5 * d.f_vv * V * V +
                    d.f_uuu / 6.0 * U * U * U + 0.5 * d.f_uuv * U * U * V +
                    0.5 * d.f_uvv * U * V * V + d.f_vvv / 6.0 * V * V * V;
            go[j] = 0.5 * d.g_uu * U * U + d.g_uv * U * V + 0.5 * d.g_vv * V * V +
                    d.g_uuu / 6.0 * U * U * U + 0.5 * d.g_uuv * U * U * V +
                    0.5 * d.g_uvv * U * V * V + d.g_vvv / 6.0 * V * V * V;
        }
    } else {
        const double f0 = pair_.f(eq_.u, eq_.v), g0 = pair_.g(eq_.u, eq_.v);
        for (int j = 0; j < M_; ++j) {
            if (std::abs(ug[j].imag()) > 1e-9 || std::abs(vg[j].imag()) > 1e-9)
                throw NumericalError("galerkin: exact nonlinearity needs a real state");
            const double U = ug[j].real(), V = vg[j].real();
            fo[j] = pair_.f(eq_.u + U, eq_.v + V) - f0 - d.f_u * U - d.f_v * V;
            go[j] = pair_.g(eq_.u + U, eq_.v + V) - g0 - d.g_u * U - d.g_v * V;
        }
    }
}

void TruncatedVectorField::rhs(const FourierState& s, FourierState& ds) const {
    if (ds.N != N_) ds = FourierState(N_);
    std::vector<Complex> ug(M_), vg(M_), fg(M_), gg(M_);
    for (int j = 0; j < M_; ++j) {
        Complex su = s.u[0], sv = s.v[0];
        for (int m = 1; m <= N_; ++m) {
            const Complex w = bwd_[static_cast<size_t>(m) * M_ + j];
            su += s.u[m] * (w + std::conj(w));  // u_m e^{im th} + u_{-m} e^{-im th}, u_{-m} = u_m
            sv += s.v[m] * (w + std::conj(w));
        }
        ug[j] = su;
        vg[j] = sv;
    }
    nonlinear_grid(fg, gg, ug, vg);
    for (int m = 0; m <= N_; ++m) {
        Complex Fm(0, 0), Gm(0, 0);
        const Complex* w = &fwd_[static_cast<size_t>(m) * M_];
        for (int j = 0; j < M_; ++j) {
            Fm += fg[j] * w[j];
            Gm += gg[j] * w[j];
        }
        Fm /= static_cast<double>(M_);
        Gm /= static_cast<double>(M_);
        const auto& A = mode_mats_[m];
        ds.u[m] = A.a11 * s.u[m] + A.a12 * s.v[m] + Fm;
        ds.v[m] = A.a21 * s.u[m] + A.a22 * s.v[m] + params_.alpha * Gm;
    }
}

void TruncatedVectorField::rhs_direct(const FourierState& s, FourierState& ds) const {
    if (mode_ == Nonlinearity::Exact)
        throw ConfigError("galerkin: direct convolutions exist only for the cubic truncation");
    if (ds.N != N_) ds = FourierState(N_);
    const auto& d = derivs_;
    auto at_u = [&](int m) -> Complex {
        const int a = std::abs(m);
        return a <= N_ ? s.u[a] : Complex(0, 0);
    };
    auto at_v = [&](int m) -> Complex {
        const int a = std::abs(m);
        return a <= N_ ? s.v[a] : Complex(0, 0);
    };
    for (int m = 0; m <= N_; ++m) {
        Complex Fm(0, 0), Gm(0, 0);
        for (int m1 = -N_; m1 <= N_; ++m1) {
            const int m2 = m - m1;
            if (m2 < -N_ || m2 > N_) continue;
            const Complex u1 = at_u(m1), v1 = at_v(m1), u2 = at_u(m2), v2 = at_v(m2);
            Fm += 0.5 * d.f_uu * u1 * u2 + d.f_uv * u1 * v2 + 0.5 * d.f_vv * v1 * v2;
            Gm += 0.5 * d.g_uu * u1 * u2 + d.g_uv * u1 * v2 + 0.5 * d.g_vv * v1 * v2;
        }
        for (int m1 = -N_; m1 <= N_; ++m1)
            for (int m2 = -N_; m2 <= N_; ++m2) {
                const int m3 = m - m1 - m2;
                if (m3 < -N_ || m3 > N_) continue;
                const Complex u1 = at_u(m1), v1 = at_v(m1);
                const Complex u2 = at_u(m2), v2 = at_v(m2);
                const Complex u3 = at_u(m3), v3 = at_v(m3);
                Fm += d.f_uuu / 6.0 * u1 * u2 * u3 + 0.5 * d.f_uuv * u1 * u2 * v3 +
                      0.5 * d.f_uvv * u1 * v2 * v3 + d.f_vvv / 6.0 * v1 * v2 * v3;
                Gm += d.g_uuu / 6.0 * u1 * u2 * u3 + 0.5 * d.g_uuv * u1 * u2 * v3 +
                      0.5 * d.g_uvv * u1 * v2 * v3 + d.g_vvv / 6.0 * v1 * v2 * v3;
            }
        const auto& A = mode_mats_[m];
        ds.u[m] = A.a11 * s.u[m] + A.a12 * s.v[m] + Fm;
        ds.v[m] = A.a21 * s.u[m] + A.a22 * s.v[m] + params_.alpha * Gm;
    }
}

void TruncatedVectorField::rhs_bilateral(const std::vector<Complex>& u,
                                         const std::vector<Complex>& v,
                                         std::vector<Complex>& du,
                                         std::vector<Complex>& dv) const {
    const int n2 = 2 * N_ + 1;
    if (static_cast<int>(u.size()) != n2 || static_cast<int>(v.size()) != n2)
        throw ConfigError("galerkin: bilateral state must have 2N+1 entries");
    du.assign(n2, Complex(0, 0));
    dv.assign(n2, Complex(0, 0));
    const auto& d = derivs_;
    auto at_u = [&](int m) { return u[m + N_]; };
    auto at_v = [&](int m) { return v[m + N_]; };
    for (int m = -N_; m <= N_; ++m) {
        Complex Fm(0, 0), Gm(0, 0);
        for (int m1 = -N_; m1 <= N_; ++m1) {
            const int m2 = m - m1;
            if (m2 < -N_ || m2 > N_) continue;
            const Complex u1 = at_u(m1), v1 = at_v(m1), u2 = at_u(m2), v2 = at_v(m2);
            Fm += 0.5 * d.f_uu * u1 * u2 + d.f_uv * u1 * v2 + 0.5 * d.f_vv * v1 * v2;
            Gm += 0.5 * d.g_uu * u1 * u2 + d.g_uv * u1 * v2 + 0.5 * d.g_vv * v1 * v2;
        }
        for (int m1 = -N_; m1 <= N_; ++m1)
            for (int m2 = -N_; m2 <= N_; ++m2) {
                const int m3 = m - m1 - m2;
                if (m3 < -N_ || m3 > N_) continue;
                const Complex u1 = at_u(m1), v1 = at_v(m1);
                const Complex u2 = at_u(m2), v2 = at_v(m2);
                const Complex u3 = at_u(m3), v3 = at_v(m3);
                Fm += d.f_uuu / 6.0 * u1 * u2 * u3 + 0.5 * d.f_uuv * u1 * u2 * v3 +
                      0.5 * d.f_uvv * u1 * v2 * v3 + d.f_vvv / 6.0 * v1 * v2 * v3;
                Gm += d.g_uuu / 6.0 * u1 * u2 * u3 + 0.5 * d.g_uuv * u1 * u2 * v3 +
                      0.5 * d.g_uvv * u1 * v2 * v3 + d.g_vvv / 6.0 * v1 * v2 * v3;
            }
        const auto& A = mode_mats_[std::abs(m)];
        du[m + N_] = A.a11 * u[m + N_] + A.a12 * v[m + N_] + Fm;
        dv[m + N_] = A.a21 * u[m + N_] + A.a22 * v[m + N_] + params_.alpha * Gm;
    }
}

std::vector<double> TruncatedVectorField::pack(const FourierState& s) const {
    std::vector<double> y(4 * (N_ + 1));
    for (int m = 0; m <= N_; ++m) {
        y[4 * m + 0] = s.u[m].real();
        y[4 * m + 1] = s.u[m].imag();
        y[4 * m + 2] = s.v[m].real();
        y[4 * m + 3] = s.v[m].imag();
    }
    return y;
}

FourierState TruncatedVectorField::unpack(const std::vector<double>& y) const {
    FourierState s(N_);
    for (int m = 0; m <= N_; ++m) {
        s.u[m] = Complex(y[4 * m + 0], y[4 * m + 1]);
        s.v[m] = Complex(y[4 * m + 2], y[4 * m + 3]);
    }
    return s;
}

OdeField TruncatedVectorField::as_ode() const {
    // shared scratch keeps the hot path allocation-free
    auto scratch = std::make_shared<std::pair<FourierState, FourierState>>(FourierState(N_),
                                                                           FourierState(N_));
    const TruncatedVectorField* self = this;
    return [self, scratch](double, const std::vector<double>& y, std::vector<double>& dy) {
        FourierState& s = scratch->first;
        FourierState& ds = scratch->second;
        for (int m = 0; m <= self->N_; ++m) {
            s.u[m] = Complex(y[4 * m + 0], y[4 * m + 1]);
            s.v[m] = Complex(y[4 * m + 2], y[4 * m + 3]);
        }
        self->rhs(s, ds);
        dy.resize(y.size());
        for (int m = 0; m <= self->N_; ++m) {
            dy[4 * m + 0] = ds.u[m].real();
            dy[4 * m + 1] = ds.u[m].imag();
            dy[4 * m + 2] = ds.v[m].real();
            dy[4 * m + 3] = ds.v[m].imag();
        }
    };
}

FourierState project(const std::vector<double>& u_grid, const std::vector<double>& v_grid,
                     int N, const Equilibrium& eq, double L) {
    const int n = static_cast<int>(u_grid.size());
    if (n != static_cast<int>(v_grid.size()))
        throw ConfigError("project: u and v grids differ in size");
    if (n < 4 * N)
        throw ConfigError("project: grid too coarse (aliasing), need at least 4N points");
    // trapezoid on the even extension over [0, 2L] == exact discrete transform
    const int M = 2 * (n - 1);
    FourierState s(N);
    for (int m = 0; m <= N; ++m) {
        Complex cu(0, 0), cv(0, 0);
        for (int j = 0; j < M; ++j) {
            const int idx = (j < n) ? j : M - j;  // even reflection
            const double th = M_PI * m * j / (n - 1.0);  // m k x_j with x_j = j L/(n-1)
            const Complex w(std::cos(th), -std::sin(th));
            cu += (u_grid[idx] - eq.u) * w;
            cv += (v_grid[idx] - eq.v) * w;
        }
        s.u[m] = cu / static_cast<double>(M);
        s.v[m] = cv / static_cast<double>(M);
    }
    (void)L;
    return s;
}

void reconstruct(const FourierState& s, const Equilibrium& eq, double L, int n_points,
                 std::vector<double>& u_grid, std::vector<double>& v_grid) {
    u_grid.assign(n_points, 0.0);
    v_grid.assign(n_points, 0.0);
    const double k = M_PI / L;
    for (int i = 0; i < n_points; ++i) {
        const double x = L * i / (n_points - 1.0);
        Complex su = s.u[0], sv = s.v[0];
        for (int m = 1; m <= s.N; ++m) {
            const double c = 2.0 * std::cos(m * k * x);
            su += s.u[m] * c;
            sv += s.v[m] * c;
        }
        u_grid[i] = eq.u + su.real();
        v_grid[i] = eq.v + sv.real();
    }
}

std::vector<GalerkinSample> simulate(const TruncatedVectorField& field,
                                     const FourierState& state0, double t0, double t1,
                                     std::size_t n_samples, double rtol, double atol) {
    if (!state0.finite()) throw NumericalError("galerkin: non-finite initial state");
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;
    auto raw = integrate(field.as_ode(), field.pack(state0), t0, t1, n_samples, opt);
    std::vector<GalerkinSample> out;
    out.reserve(raw.size());
    for (auto& smp : raw) out.push_back({smp.t, field.unpack(smp.y)});
    return out;
}

}  // namespace httlab
