#include "httlab/stability.hpp"

#include <cmath>

#include "httlab/errors.hpp"

namespace httlab {

ModeMatrix mode_matrix(const ReactionDerivatives& d, const SystemParams& p, int n) {
    if (n < 0) throw ConfigError("mode_matrix: n must be >= 0");
    const double q = n * p.k();
    ModeMatrix m;
    m.n = n;
    m.entries_tilde = {-p.D_u * q * q + d.f_u, d.f_v,
                       d.g_u, -p.D_v * q * q + d.g_v};
    m.entries = {m.entries_tilde.a11, m.entries_tilde.a12,
                 p.alpha * m.entries_tilde.a21, p.alpha * m.entries_tilde.a22};
    m.trace = m.entries.trace();
    m.determinant = m.entries.det();
    m.det_tilde = m.entries_tilde.det();
    return m;
}

double hopf_alpha(const ReactionDerivatives& d) {
    if (!d.hopf_sign_condition())
        throw NumericalError("hopf_alpha: requires f_u > 0 > g_v, no 0-mode Hopf exists");
    const double alpha = -d.f_u / d.g_v;
    // det M_{0,alpha} = alpha det M > 0 holds whenever det M > 0
    if (alpha * d.det() <= 0.0)
        throw NumericalError("hopf_alpha: det M_{0,alpha*} not positive");
    return alpha;
}

double neutral_curve(const ReactionDerivatives& d, int n, double D_u, double L) {
    if (n < 1) throw ConfigError("neutral_curve: n must be >= 1");
    const double q2 = std::pow(n * M_PI / L, 2);
    const double den = D_u * q2 - d.f_u;
    if (std::abs(den) < 1e-14 * std::max(std::abs(D_u * q2), std::abs(d.f_u)))
        throw NumericalError("neutral_curve: singular at D_u = f_u/(nk)^2");
    return (d.g_v + d.f_v * d.g_u / den) / q2;
}

DegeneratePoint degenerate_point_12(const ReactionDerivatives& d, double k) {
    const double delta = d.det();
    const double disc = 25.0 * delta * delta - 16.0 * d.f_u * d.g_v * delta;
    if (disc < 0.0)
        throw NumericalError("degenerate_point_12: negative discriminant");
    if (d.g_v == 0.0)
        throw NumericalError("degenerate_point_12: g_v = 0");
    const double k2 = k * k;
    DegeneratePoint pt;
    pt.D_u = (5.0 * delta - std::sqrt(disc)) / (8.0 * d.g_v * k2);
    if (pt.D_u <= 0.0) {
        pt.D_u = (5.0 * delta + std::sqrt(disc)) / (8.0 * d.g_v * k2);
        pt.plus_branch = true;
    }
    if (pt.D_u <= 0.0 || std::abs(k2 * pt.D_u - d.f_u) < 1e-14)
        throw NumericalError("degenerate_point_12: no physical point (D_u* <= 0 or singular)");
    pt.D_v = (d.g_v * k2 * pt.D_u - delta) / (k2 * (k2 * pt.D_u - d.f_u));
    if (pt.D_v <= 0.0)
        throw NumericalError("degenerate_point_12: no physical point (D_v* <= 0)");

    SystemParams p{pt.D_u, pt.D_v, 1.0, M_PI / k};
    const double s1 = std::abs(mode_matrix(d, p, 1).det_tilde);
    const double s2 = std::abs(mode_matrix(d, p, 2).det_tilde);
    const double scale = std::max(std::abs(delta), 1.0);
    if (s1 > 1e-10 * scale || s2 > 1e-10 * scale)
        throw NumericalError("degenerate_point_12: determinant residuals above 1e-10");
    return pt;
}

BifurcationPoint htt_point(const ReactionDerivatives& d, double L, int n_check) {
    const double alpha = hopf_alpha(d);
    const DegeneratePoint dp = degenerate_point_12(d, M_PI / L);

    BifurcationPoint pt;
    pt.kind = BifurcationKind::HTT;
    pt.params = {dp.D_u, dp.D_v, alpha, L};

    auto& ver = pt.verification;
    const ModeMatrix m0 = mode_matrix(d, pt.params, 0);
    const ModeMatrix m1 = mode_matrix(d, pt.params, 1);
    const ModeMatrix m2 = mode_matrix(d, pt.params, 2);
    ver["tr_M0"] = std::abs(m0.trace);
    ver["det_M0"] = m0.determinant;
    ver["det_M1"] = std::abs(m1.determinant);
    ver["det_M2"] = std::abs(m2.determinant);
    ver["tr_M1"] = m1.trace;
    ver["tr_M2"] = m2.trace;

    const double scale = std::max({1.0, std::abs(d.det())});
    if (ver["tr_M0"] > 1e-10 * scale || m0.determinant <= 0.0)
        throw NumericalError("htt_point: 0-mode Hopf condition failed");
    if (ver["det_M1"] > 1e-10 * scale || ver["det_M2"] > 1e-10 * scale)
        throw NumericalError("htt_point: mode-1/2 degeneracy residual too large");
    if (m1.trace >= 0.0 || m2.trace >= 0.0)
        throw NumericalError("htt_point: tr M_{1,2} not negative, zero eigenvalues not simple");

    double gap = 1e300;
    for (int n = 3; n <= n_check; ++n) {
        const ModeMatrix mn = mode_matrix(d, pt.params, n);
        const auto ev = eigenvalues(mn.entries);
        const double worst = std::max(ev[0].real(), ev[1].real());
        if (worst >= 0.0)
            throw NumericalError("htt_point: mode " + std::to_string(n) +
                                 " is not strictly stable");
        gap = std::min(gap, -worst);
    }
    ver["spectral_gap"] = gap;
    return pt;
}

EigenQuantities eigen_quantities(const ReactionDerivatives& d, const SystemParams& p) {
    const ModeMatrix m0 = mode_matrix(d, p, 0);
    EigenQuantities e;
    const double disc0 = 4.0 * m0.determinant - m0.trace * m0.trace;
    if (disc0 <= 0.0)
        throw NumericalError("eigen_quantities: 0-mode pair is not complex (4 det <= tr^2)");
    e.mu0 = m0.trace / 2.0;
    e.omega0 = 0.5 * std::sqrt(disc0);
    for (int j = 1; j <= 2; ++j) {
        const ModeMatrix mj = mode_matrix(d, p, j);
        // standard discriminant tr^2 - 4 det; dropping the 4 would only agree
        // on the neutral curves where det = 0
        const double disc = mj.trace * mj.trace - 4.0 * mj.determinant;
        if (disc < 0.0)
            throw NumericalError("eigen_quantities: mode " + std::to_string(j) +
                                 " pair is complex, outside the near-HTT regime");
        const double mp = (mj.trace + std::sqrt(disc)) / 2.0;
        const double mm = (mj.trace - std::sqrt(disc)) / 2.0;
        if (j == 1) { e.mu1_plus = mp; e.mu1_minus = mm; }
        else        { e.mu2_plus = mp; e.mu2_minus = mm; }
    }
    return e;
}

SystemParams params_at(const BifurcationPoint& pt) { return pt.params; }

}  // namespace httlab
