#include "httlab/manifold.hpp"

#include <cmath>

#include "httlab/errors.hpp"

namespace httlab {

TransformMatrices transform_matrices(const ReactionDerivatives& d, const SystemParams& p,
                                     const EigenQuantities& eq) {
    if (d.f_v == 0.0)
        throw NumericalError("transform_matrices: f_v = 0, eigenvector columns degenerate");
    if (!(eq.omega0 > 0.0))
        throw NumericalError("transform_matrices: omega0 must be positive");

    TransformMatrices T;
    T.T0 = {-d.f_v, 0.0, d.f_u - eq.mu0, eq.omega0};
    for (int j = 1; j <= 2; ++j) {
        const double mp = eq.mu_plus(j), mm = eq.mu_minus(j);
        if (mp == mm)
            throw NumericalError("transform_matrices: mu_j^+ = mu_j^-, mode not semisimple");
        // first row of M_{j,alpha}; the eigenvector second entry is M11 - mu,
        // which collapses to f_u - mu only at j = 0
        const double M11 = -p.D_u * std::pow(j * p.k(), 2) + d.f_u;
        const Mat2 Tj = {-d.f_v, -d.f_v, M11 - mp, M11 - mm};
        if (j == 1) T.T1 = Tj; else T.T2 = Tj;
    }
    T.det0 = T.T0.det();
    T.det1 = T.T1.det();
    T.det2 = T.T2.det();
    T.T0_inv = T.T0.inverse();
    T.T1_inv = T.T1.inverse();
    T.T2_inv = T.T2.inverse();
    return T;
}

// ---------------------------------------------------------------------------
// coupling forms
// ---------------------------------------------------------------------------

CouplingForms::CouplingForms(const ReactionDerivatives& d, double alpha,
                             const TransformMatrices& T)
    : d_(d), alpha_(alpha), T_(&T) {}

double CouplingForms::col(int m, int row, int i) const {
    const Mat2& t = T_->T(m);
    if (row == 1) return i == 1 ? t.a11 : t.a12;
    return i == 1 ? t.a21 : t.a22;
}

double CouplingForms::f2(int m, int i, int n, int j) const {
    const double Am = col(m, 1, i), Bm = col(m, 2, i);
    const double An = col(n, 1, j), Bn = col(n, 2, j);
    return d_.f_uu * Am * An + d_.f_uv * (Am * Bn + Bm * An) + d_.f_vv * Bm * Bn;
}

double CouplingForms::g2(int m, int i, int n, int j) const {
    const double Am = col(m, 1, i), Bm = col(m, 2, i);
    const double An = col(n, 1, j), Bn = col(n, 2, j);
    return alpha_ * (d_.g_uu * Am * An + d_.g_uv * (Am * Bn + Bm * An) + d_.g_vv * Bm * Bn);
}

double CouplingForms::f3(int m, int i, int n, int j, int p, int k) const {
    const double Am = col(m, 1, i), Bm = col(m, 2, i);
    const double An = col(n, 1, j), Bn = col(n, 2, j);
    const double Ap = col(p, 1, k), Bp = col(p, 2, k);
    return d_.f_uuu * Am * An * Ap +
           d_.f_uuv * (Am * An * Bp + Am * Bn * Ap + Bm * An * Ap) +
           d_.f_uvv * (Am * Bn * Bp + Bm * An * Bp + Bm * Bn * Ap) +
           d_.f_vvv * Bm * Bn * Bp;
}

double CouplingForms::g3(int m, int i, int n, int j, int p, int k) const {
    const double Am = col(m, 1, i), Bm = col(m, 2, i);
    const double An = col(n, 1, j), Bn = col(n, 2, j);
    const double Ap = col(p, 1, k), Bp = col(p, 2, k);
    return alpha_ * (d_.g_uuu * Am * An * Ap +
                     d_.g_uuv * (Am * An * Bp + Am * Bn * Ap + Bm * An * Ap) +
                     d_.g_uvv * (Am * Bn * Bp + Bm * An * Bp + Bm * Bn * Ap) +
                     d_.g_vvv * Bm * Bn * Bp);
}

double CouplingForms::f_slaved(int j, double U, double V) const {
    const double Aj = col(j, 1, 1), Bj = col(j, 2, 1);
    return d_.f_uu * Aj * U + d_.f_uv * (Aj * V + Bj * U) + d_.f_vv * Bj * V;
}

double CouplingForms::g_slaved(int j, double U, double V) const {
    const double Aj = col(j, 1, 1), Bj = col(j, 2, 1);
    return alpha_ * (d_.g_uu * Aj * U + d_.g_uv * (Aj * V + Bj * U) + d_.g_vv * Bj * V);
}

// ---------------------------------------------------------------------------
// slaved-mode quadratics
// ---------------------------------------------------------------------------

ManifoldQuadratics manifold_quadratics(const ReactionDerivatives& d, const SystemParams& p,
                                       const EigenQuantities& eq, const TransformMatrices& T) {
    const CouplingForms cf(d, p.alpha, T);
    ManifoldQuadratics q;

    const Mat2 M3 = mode_matrix(d, p, 3).entries;
    const Mat2 M4 = mode_matrix(d, p, 4).entries;
    const double dM3 = M3.det(), dM4 = M4.det();
    const double om = eq.omega0;
    const double m1m = eq.mu1_minus, m2m = eq.mu2_minus;

    const double scale = std::max({std::abs(d.det()), 1.0});
    auto margin = [&](const std::string& name, double den) {
        q.denominator_margins[name] = std::abs(den);
        if (std::abs(den) < 1e-8 * scale)
            q.warnings.push_back("small denominator: " + name);
    };
    margin("det_M3", dM3);
    margin("det_M4", dM4);
    margin("mu1m_detT1", m1m * T.det1);
    margin("mu2m_detT2", m2m * T.det2);
    margin("osc1_detT1", (m1m * m1m + om * om) * T.det1);
    margin("osc2_detT2", (m2m * m2m + om * om) * T.det2);

    const double f12 = cf.f2(1, 1, 2, 1), g12 = cf.g2(1, 1, 2, 1);
    const double f22 = cf.f2(2, 1, 2, 1), g22 = cf.g2(2, 1, 2, 1);
    q.U3_0011 = -(M3.a22 * f12 - M3.a12 * g12) / dM3;
    q.V3_0011 = (M3.a21 * f12 - M3.a11 * g12) / dM3;
    q.U4_0002 = -(M4.a22 * f22 - M4.a12 * g22) / (2.0 * dM4);
    q.V4_0002 = (M4.a21 * f22 - M4.a11 * g22) / (2.0 * dM4);

    // beta_1: coefficients solve the 2x2 rotation-coupled system from the
    // invariance equation; S(m,i) pairs (mode m, column i) with (mode 1, column 1)
    auto S1 = [&](int m, int i, int n, int j) {
        return T.T1.a21 * cf.f2(m, i, n, j) - T.T1.a11 * cf.g2(m, i, n, j);
    };
    auto S2 = [&](int m, int i, int n, int j) {
        return T.T2.a21 * cf.f2(m, i, n, j) - T.T2.a11 * cf.g2(m, i, n, j);
    };
    const double den1 = T.det1 * (m1m * m1m + om * om);
    q.B1_1010 = (m1m * S1(0, 1, 1, 1) + om * S1(0, 2, 1, 1)) / den1;
    q.B1_0110 = (m1m * S1(0, 2, 1, 1) - om * S1(0, 1, 1, 1)) / den1;
    q.B1_0011 = S1(1, 1, 2, 1) / (m1m * T.det1);

    const double den2 = T.det2 * (m2m * m2m + om * om);
    q.B2_0020 = S2(1, 1, 1, 1) / (2.0 * m2m * T.det2);
    q.B2_1001 = (m2m * S2(0, 1, 2, 1) + om * S2(0, 2, 2, 1)) / den2;
    q.B2_0101 = (m2m * S2(0, 2, 2, 1) - om * S2(0, 1, 2, 1)) / den2;
    return q;
}

// ---------------------------------------------------------------------------
// reduced system coefficients
// ---------------------------------------------------------------------------

ReducedCoeffs reduced_coeffs(const ReactionDerivatives& d, const SystemParams& p,
                             const EigenQuantities& eq, const ManifoldQuadratics& q,
                             const TransformMatrices& T) {
    const CouplingForms cf(d, p.alpha, T);
    (void)eq;
    ReducedCoeffs r;

    auto P0 = [&](double xf, double xg) { return (T.T0.a22 * xf - T.T0.a12 * xg) / T.det0; };
    auto Q0 = [&](double xf, double xg) { return (-T.T0.a21 * xf + T.T0.a11 * xg) / T.det0; };
    auto P1 = [&](double xf, double xg) { return (T.T1.a22 * xf - T.T1.a12 * xg) / T.det1; };
    auto P2 = [&](double xf, double xg) { return (T.T2.a22 * xf - T.T2.a12 * xg) / T.det2; };

    // mode-3/4 couplings entering c5, d4, d5 (flow-matching oracle validates these)
    const double ft23 = cf.f_slaved(2, q.U3_0011, q.V3_0011);
    const double gt23 = cf.g_slaved(2, q.U3_0011, q.V3_0011);
    const double ft13 = cf.f_slaved(1, q.U3_0011, q.V3_0011);
    const double gt13 = cf.g_slaved(1, q.U3_0011, q.V3_0011);
    const double ft24 = cf.f_slaved(2, q.U4_0002, q.V4_0002);
    const double gt24 = cf.g_slaved(2, q.U4_0002, q.V4_0002);

    r.A1 = P0(cf.f2(0, 1, 0, 1), cf.g2(0, 1, 0, 1)) / 2.0;
    r.A2 = P0(cf.f2(0, 1, 0, 2), cf.g2(0, 1, 0, 2));
    r.A3 = P0(cf.f2(0, 2, 0, 2), cf.g2(0, 2, 0, 2)) / 2.0;
    r.A4 = P0(cf.f2(1, 1, 1, 1), cf.g2(1, 1, 1, 1));
    r.A5 = P0(cf.f2(2, 1, 2, 1), cf.g2(2, 1, 2, 1));

    r.a1 = P0(cf.f3(0, 1, 0, 1, 0, 1), cf.g3(0, 1, 0, 1, 0, 1)) / 6.0;
    r.a2 = P0(2.0 * cf.f2(1, 1, 1, 2) * q.B1_1010 + cf.f3(0, 1, 1, 1, 1, 1),
              2.0 * cf.g2(1, 1, 1, 2) * q.B1_1010 + cf.g3(0, 1, 1, 1, 1, 1));
    r.a3 = P0(2.0 * cf.f2(2, 1, 2, 2) * q.B2_1001 + cf.f3(0, 1, 2, 1, 2, 1),
              2.0 * cf.g2(2, 1, 2, 2) * q.B2_1001 + cf.g3(0, 1, 2, 1, 2, 1));
    r.a4 = P0(cf.f3(0, 1, 0, 1, 0, 2), cf.g3(0, 1, 0, 1, 0, 2)) / 2.0;
    r.a5 = P0(cf.f3(0, 1, 0, 2, 0, 2), cf.g3(0, 1, 0, 2, 0, 2)) / 2.0;
    r.a6 = P0(cf.f3(0, 2, 0, 2, 0, 2), cf.g3(0, 2, 0, 2, 0, 2)) / 6.0;
    r.a7 = P0(2.0 * cf.f2(1, 1, 1, 2) * q.B1_0110 + cf.f3(0, 2, 1, 1, 1, 1),
              2.0 * cf.g2(1, 1, 1, 2) * q.B1_0110 + cf.g3(0, 2, 1, 1, 1, 1));
    r.a8 = P0(2.0 * cf.f2(2, 1, 2, 2) * q.B2_0101 + cf.f3(0, 2, 2, 1, 2, 1),
              2.0 * cf.g2(2, 1, 2, 2) * q.B2_0101 + cf.g3(0, 2, 2, 1, 2, 1));
    r.a9 = 2.0 * P0(cf.f2(1, 1, 1, 2) * q.B1_0011 + cf.f2(2, 1, 2, 2) * q.B2_0020 +
                        cf.f3(1, 1, 1, 1, 2, 1) / 2.0,
                    cf.g2(1, 1, 1, 2) * q.B1_0011 + cf.g2(2, 1, 2, 2) * q.B2_0020 +
                        cf.g3(1, 1, 1, 1, 2, 1) / 2.0);

    r.B1 = Q0(cf.f2(0, 1, 0, 1), cf.g2(0, 1, 0, 1)) / 2.0;
    r.B2 = Q0(cf.f2(0, 1, 0, 2), cf.g2(0, 1, 0, 2));
    r.B3 = Q0(cf.f2(0, 2, 0, 2), cf.g2(0, 2, 0, 2)) / 2.0;
    r.B4 = Q0(cf.f2(1, 1, 1, 1), cf.g2(1, 1, 1, 1));
    r.B5 = Q0(cf.f2(2, 1, 2, 1), cf.g2(2, 1, 2, 1));

    r.b1 = Q0(cf.f3(0, 1, 0, 1, 0, 1), cf.g3(0, 1, 0, 1, 0, 1)) / 6.0;
    r.b2 = Q0(2.0 * cf.f2(1, 1, 1, 2) * q.B1_1010 + cf.f3(0, 1, 1, 1, 1, 1),
              2.0 * cf.g2(1, 1, 1, 2) * q.B1_1010 + cf.g3(0, 1, 1, 1, 1, 1));
    r.b3 = Q0(2.0 * cf.f2(2, 1, 2, 2) * q.B2_1001 + cf.f3(0, 1, 2, 1, 2, 1),
              2.0 * cf.g2(2, 1, 2, 2) * q.B2_1001 + cf.g3(0, 1, 2, 1, 2, 1));
    r.b4 = Q0(cf.f3(0, 1, 0, 1, 0, 2), cf.g3(0, 1, 0, 1, 0, 2)) / 2.0;
    r.b5 = Q0(cf.f3(0, 1, 0, 2, 0, 2), cf.g3(0, 1, 0, 2, 0, 2)) / 2.0;
    r.b6 = Q0(cf.f3(0, 2, 0, 2, 0, 2), cf.g3(0, 2, 0, 2, 0, 2)) / 6.0;
    r.b7 = Q0(2.0 * cf.f2(1, 1, 1, 2) * q.B1_0110 + cf.f3(0, 2, 1, 1, 1, 1),
              2.0 * cf.g2(1, 1, 1, 2) * q.B1_0110 + cf.g3(0, 2, 1, 1, 1, 1));
    r.b8 = Q0(2.0 * cf.f2(2, 1, 2, 2) * q.B2_0101 + cf.f3(0, 2, 2, 1, 2, 1),
              2.0 * cf.g2(2, 1, 2, 2) * q.B2_0101 + cf.g3(0, 2, 2, 1, 2, 1));
    r.b9 = 2.0 * Q0(cf.f2(1, 1, 1, 2) * q.B1_0011 + cf.f2(2, 1, 2, 2) * q.B2_0020 +
                        cf.f3(1, 1, 1, 1, 2, 1) / 2.0,
                    cf.g2(1, 1, 1, 2) * q.B1_0011 + cf.g2(2, 1, 2, 2) * q.B2_0020 +
                        cf.g3(1, 1, 1, 1, 2, 1) / 2.0);

    r.C1 = P1(cf.f2(0, 1, 1, 1), cf.g2(0, 1, 1, 1));
    r.C2 = P1(cf.f2(1, 1, 0, 2), cf.g2(1, 1, 0, 2));
    r.C3 = P1(cf.f2(1, 1, 2, 1), cf.g2(1, 1, 2, 1));

    r.c1 = P1(cf.f2(0, 1, 1, 2) * q.B1_1010 + cf.f3(0, 1, 0, 1, 1, 1) / 2.0,
              cf.g2(0, 1, 1, 2) * q.B1_1010 + cf.g3(0, 1, 0, 1, 1, 1) / 2.0);
    r.c2 = P1(cf.f2(0, 1, 1, 2) * q.B1_0110 + cf.f2(0, 2, 1, 2) * q.B1_1010 +
                  cf.f3(0, 1, 0, 2, 1, 1),
              cf.g2(0, 1, 1, 2) * q.B1_0110 + cf.g2(0, 2, 1, 2) * q.B1_1010 +
                  cf.g3(0, 1, 0, 2, 1, 1));
    r.c3 = P1(cf.f2(0, 2, 1, 2) * q.B1_0110 + cf.f3(0, 2, 0, 2, 1, 1) / 2.0,
              cf.g2(0, 2, 1, 2) * q.B1_0110 + cf.g3(0, 2, 0, 2, 1, 1) / 2.0);
    r.c4 = P1(cf.f2(2, 2, 1, 1) * q.B2_0020 + cf.f3(1, 1, 1, 1, 1, 1) / 2.0,
              cf.g2(2, 2, 1, 1) * q.B2_0020 + cf.g3(1, 1, 1, 1, 1, 1) / 2.0);
    r.c5 = P1(cf.f2(2, 1, 1, 2) * q.B1_0011 + ft23 + cf.f3(1, 1, 2, 1, 2, 1),
              cf.g2(2, 1, 1, 2) * q.B1_0011 + gt23 + cf.g3(1, 1, 2, 1, 2, 1));
    r.c6 = P1(cf.f2(0, 1, 1, 2) * q.B1_0011 + cf.f2(2, 2, 1, 1) * q.B2_1001 +
                  cf.f2(2, 1, 1, 2) * q.B1_1010 + cf.f3(0, 1, 1, 1, 2, 1),
              cf.g2(0, 1, 1, 2) * q.B1_0011 + cf.g2(2, 2, 1, 1) * q.B2_1001 +
                  cf.g2(2, 1, 1, 2) * q.B1_1010 + cf.g3(0, 1, 1, 1, 2, 1));
    r.c7 = P1(cf.f2(0, 2, 1, 2) * q.B1_0011 + cf.f2(2, 1, 1, 2) * q.B1_0110 +
                  cf.f2(2, 2, 1, 1) * q.B2_0101 + cf.f3(0, 2, 1, 1, 2, 1),
              cf.g2(0, 2, 1, 2) * q.B1_0011 + cf.g2(2, 1, 1, 2) * q.B1_0110 +
                  cf.g2(2, 2, 1, 1) * q.B2_0101 + cf.g3(0, 2, 1, 1, 2, 1));

    r.D1 = P2(cf.f2(1, 1, 1, 1), cf.g2(1, 1, 1, 1)) / 2.0;
    r.D2 = P2(cf.f2(0, 1, 2, 1), cf.g2(0, 1, 2, 1));
    r.D3 = P2(cf.f2(0, 2, 2, 1), cf.g2(0, 2, 2, 1));

    r.d1 = P2(cf.f2(0, 1, 2, 2) * q.B2_1001 + cf.f3(0, 1, 0, 1, 2, 1) / 2.0,
              cf.g2(0, 1, 2, 2) * q.B2_1001 + cf.g3(0, 1, 0, 1, 2, 1) / 2.0);
    r.d2 = P2(cf.f2(0, 1, 2, 2) * q.B2_0101 + cf.f2(0, 2, 2, 2) * q.B2_1001 +
                  cf.f3(0, 1, 0, 2, 2, 1),
              cf.g2(0, 1, 2, 2) * q.B2_0101 + cf.g2(0, 2, 2, 2) * q.B2_1001 +
                  cf.g3(0, 1, 0, 2, 2, 1));
    r.d3 = P2(cf.f2(0, 2, 2, 2) * q.B2_0101 + cf.f3(0, 2, 0, 2, 2, 1) / 2.0,
              cf.g2(0, 2, 2, 2) * q.B2_0101 + cf.g3(0, 2, 0, 2, 2, 1) / 2.0);
    r.d4 = P2(cf.f2(1, 1, 1, 2) * q.B1_0011 + ft13 + cf.f3(2, 1, 1, 1, 1, 1),
              cf.g2(1, 1, 1, 2) * q.B1_0011 + gt13 + cf.g3(2, 1, 1, 1, 1, 1));
    r.d5 = P2(ft24 + cf.f3(2, 1, 2, 1, 2, 1) / 2.0, gt24 + cf.g3(2, 1, 2, 1, 2, 1) / 2.0);
    r.d6 = P2(cf.f2(1, 1, 1, 2) * q.B1_1010 + cf.f2(0, 1, 2, 2) * q.B2_0020 +
                  cf.f3(1, 1, 1, 1, 0, 1) / 2.0,
              cf.g2(1, 1, 1, 2) * q.B1_1010 + cf.g2(0, 1, 2, 2) * q.B2_0020 +
                  cf.g3(1, 1, 1, 1, 0, 1) / 2.0);
    r.d7 = P2(cf.f2(1, 1, 1, 2) * q.B1_0110 + cf.f2(0, 2, 2, 2) * q.B2_0020 +
                  cf.f3(1, 1, 1, 1, 0, 2) / 2.0,
              cf.g2(1, 1, 1, 2) * q.B1_0110 + cf.g2(0, 2, 2, 2) * q.B2_0020 +
                  cf.g3(1, 1, 1, 1, 0, 2) / 2.0);
    return r;
}

std::array<double, 4> reduced_field(const ReducedCoeffs& r, const EigenQuantities& eq,
                                    const std::array<double, 4>& y) {
    const double a0 = y[0], b0 = y[1], x1 = y[2], x2 = y[3];
    const double om = eq.omega0, m0 = eq.mu0;
    std::array<double, 4> dy{};
    dy[0] = m0 * a0 - om * b0 + r.A1 * a0 * a0 + r.A2 * a0 * b0 + r.A3 * b0 * b0 +
            r.A4 * x1 * x1 + r.A5 * x2 * x2 +
            (r.a1 * a0 * a0 + r.a2 * x1 * x1 + r.a3 * x2 * x2) * a0 +
            (r.a4 * a0 + r.a5 * b0) * a0 * b0 +
            (r.a6 * b0 * b0 + r.a7 * x1 * x1 + r.a8 * x2 * x2) * b0 + r.a9 * x1 * x1 * x2;
    dy[1] = om * a0 + m0 * b0 + r.B1 * a0 * a0 + r.B2 * a0 * b0 + r.B3 * b0 * b0 +
            r.B4 * x1 * x1 + r.B5 * x2 * x2 +
            (r.b1 * a0 * a0 + r.b2 * x1 * x1 + r.b3 * x2 * x2) * a0 +
            (r.b4 * a0 + r.b5 * b0) * a0 * b0 +
            (r.b6 * b0 * b0 + r.b7 * x1 * x1 + r.b8 * x2 * x2) * b0 + r.b9 * x1 * x1 * x2;
    dy[2] = eq.mu1_plus * x1 + (r.C1 * a0 + r.C2 * b0) * x1 + r.C3 * x1 * x2 +
            (r.c1 * a0 * a0 + r.c2 * a0 * b0 + r.c3 * b0 * b0 + r.c4 * x1 * x1 +
             r.c5 * x2 * x2) * x1 +
            r.c6 * a0 * x1 * x2 + r.c7 * b0 * x1 * x2;
    dy[3] = eq.mu2_plus * x2 + r.D1 * x1 * x1 + (r.D2 * a0 + r.D3 * b0) * x2 +
            (r.d1 * a0 * a0 + r.d2 * a0 * b0 + r.d3 * b0 * b0 + r.d4 * x1 * x1 +
             r.d5 * x2 * x2) * x2 +
            (r.d6 * a0 + r.d7 * b0) * x1 * x1;
    return dy;
}

// ---------------------------------------------------------------------------
// complexification
// ---------------------------------------------------------------------------

ComplexCoeffs complex_coeffs(const ReducedCoeffs& r, const EigenQuantities& eq) {
    if (!(eq.omega0 > 0.0)) throw NumericalError("complex_coeffs: omega0 must be positive");
    ComplexCoeffs c;
    const double om = eq.omega0;
    // bar p entries enter every projection; store p itself
    c.p1 = Complex(1.0 / (2.0 * om), 0.0);
    c.p2 = Complex(0.0, -1.0 / (2.0 * om));
    c.q1 = Complex(om, 0.0);
    c.q2 = Complex(0.0, -om);

    const Complex p1b = std::conj(c.p1), p2b = std::conj(c.p2);
    const Complex q1 = c.q1, q2 = c.q2;
    const Complex q1b = std::conj(q1), q2b = std::conj(q2);
    const double q1a2 = std::norm(q1), q2a2 = std::norm(q2);

    const Complex L1 = r.A1 * q1 * q1 + r.A2 * q1 * q2 + r.A3 * q2 * q2;
    const Complex L2 = 2.0 * (r.A1 * q1a2 + r.A3 * q2a2);
    const Complex L3 = r.a1 * q1 * q1 * q1 + (r.a4 * q1 + r.a5 * q2) * q1 * q2 +
                       r.a6 * q2 * q2 * q2;
    const Complex L4 = 3.0 * r.a1 * q1a2 * q1 + (r.a4 * q1b + r.a5 * q2b) * q1 * q2 +
                       3.0 * r.a6 * q2a2 * q2;
    const Complex L5 = r.a2 * q1 + r.a7 * q2;
    const Complex L6 = r.a3 * q1 + r.a8 * q2;
    const Complex N1 = r.B1 * q1 * q1 + r.B2 * q1 * q2 + r.B3 * q2 * q2;
    const Complex N2 = 2.0 * (r.B1 * q1a2 + r.B3 * q2a2);
    const Complex N3 = r.b1 * q1 * q1 * q1 + (r.b4 * q1 + r.b5 * q2) * q1 * q2 +
                       r.b6 * q2 * q2 * q2;
    const Complex N4 = 3.0 * r.b1 * q1a2 * q1 + (r.b4 * q1b + r.b5 * q2b) * q1 * q2 +
                       3.0 * r.b6 * q2a2 * q2;
    const Complex N5 = r.b2 * q1 + r.b7 * q2;
    const Complex N6 = r.b3 * q1 + r.b8 * q2;

    c.E1 = p1b * L1 + p2b * N1;
    c.E2 = p1b * L2 + p2b * N2;
    c.E3 = p1b * std::conj(L1) + p2b * std::conj(N1);
    c.E4 = p1b * r.A4 + p2b * r.B4;
    c.E5 = p1b * r.A5 + p2b * r.B5;
    c.e1 = p1b * L3 + p2b * N3;
    c.e2 = p1b * L4 + p2b * N4;
    c.e3 = p1b * std::conj(L4) + p2b * std::conj(N4);
    c.e4 = p1b * std::conj(L3) + p2b * std::conj(N3);
    c.e5 = p1b * L5 + p2b * N5;
    c.e6 = p1b * std::conj(L5) + p2b * std::conj(N5);
    c.e7 = p1b * L6 + p2b * N6;
    c.e8 = p1b * std::conj(L6) + p2b * std::conj(N6);
    c.e9 = p1b * r.a9 + p2b * r.b9;

    c.H1 = q1 * r.C1 + q2 * r.C2;
    c.H2 = q1 * q1 * r.c1 + q1 * q2 * r.c2 + q2 * q2 * r.c3;
    c.H3 = 2.0 * (q1a2 * r.c1 + q2a2 * r.c3);
    c.H4 = q1 * r.c6 + q2 * r.c7;
    c.I1 = q1 * r.D2 + q2 * r.D3;
    c.I2 = q1 * q1 * r.d1 + q1 * q2 * r.d2 + q2 * q2 * r.d3;
    c.I3 = 2.0 * (q1a2 * r.d1 + q2a2 * r.d3);
    c.I4 = q1 * r.d6 + q2 * r.d7;
    return c;
}

// ---------------------------------------------------------------------------
// normal form
// ---------------------------------------------------------------------------

NormalFormCoeffs normal_form_coeffs(const ComplexCoeffs& c, const ReducedCoeffs& r,
                                    const EigenQuantities& eq) {
    NormalFormCoeffs nf;
    const Complex lam(eq.mu0, eq.omega0);
    const Complex lamb = std::conj(lam);
    nf.lambda0 = lam;
    nf.mu1 = eq.mu1_plus;
    nf.mu2 = eq.mu2_plus;

    const Complex G2000 = c.E1 / lam;
    const Complex G1100 = c.E2 / lamb;
    const Complex G0200 = c.E3 / (2.0 * lamb - lam);
    const Complex G0020 = c.E4 / (2.0 * eq.mu1_plus - lam);
    const Complex G0002 = c.E5 / (2.0 * eq.mu2_plus - lam);
    const Complex Th1010 = c.H1 / lam;
    const Complex Th0110 = std::conj(Th1010);  // conjugate pairing keeps X.... real
    const Complex La1001 = c.I1 / lam;
    const Complex La0101 = std::conj(La1001);

    nf.a0t = 2.0 * c.E1 * G1100 + c.E2 * (std::conj(G1100) + G2000) +
             2.0 * c.E3 * std::conj(G0200) + c.e2;
    nf.a1t = 2.0 * c.E1 * G0020 + c.E2 * std::conj(G0020) + 2.0 * c.E4 * Th1010 + c.e5;
    nf.a2t = 2.0 * c.E1 * G0002 + c.E2 * std::conj(G0002) + 2.0 * c.E5 * La1001 + c.e7;

    const Complex X1110 = c.H1 * (Th0110 + G1100) +
                          std::conj(c.H1) * (Th1010 + std::conj(G1100)) + c.H3;
    const Complex X0030 = c.H1 * G0020 + std::conj(c.H1) * std::conj(G0020) + r.c4;
    const Complex X0012 = c.H1 * G0002 + std::conj(c.H1) * std::conj(G0002) + r.c5;
    const Complex Y1101 = c.I1 * (La0101 + G1100) +
                          std::conj(c.I1) * (La1001 + std::conj(G1100)) + c.I3;
    const Complex Y0021 = c.I1 * G0020 + std::conj(c.I1) * std::conj(G0020) + r.d4;
    const Complex Y0003 = c.I1 * G0002 + std::conj(c.I1) * std::conj(G0002) + r.d5;

    double worst = 0.0;
    for (const Complex& z : {X1110, X0030, X0012, Y1101, Y0021, Y0003})
        worst = std::max(worst, std::abs(z.imag()));
    if (worst > 1e-8)
        throw NumericalError("normal_form_coeffs: reduction inconsistency, nominally real "
                             "coefficient has |Im| = " + std::to_string(worst));

    nf.b0t = X1110.real();
    nf.b1t = X0030.real();
    nf.b2t = X0012.real();
    nf.c0t = Y1101.real();
    nf.c1t = Y0021.real();
    nf.c2t = Y0003.real();
    nf.Bt = r.C3;
    nf.Ct = r.D1;
    return nf;
}

// ---------------------------------------------------------------------------
// canonical rescaling
// ---------------------------------------------------------------------------

CanonicalCoeffs canonical_rescale(const NormalFormCoeffs& nf) {
    const double rea0 = nf.a0t.real();
    if (nf.Bt == 0.0 || nf.Ct == 0.0 || nf.c2t == 0.0 || rea0 == 0.0)
        throw NumericalError("canonical_rescale: zero denominator (Bt, Ct, c2t or Re a0t)");

    CanonicalCoeffs c;
    const double l = std::abs(nf.c2t) / (nf.Bt * nf.Bt);
    c.scale.l = l;
    c.scale.s_r0 = std::sqrt(1.0 / (l * std::abs(rea0)));
    c.scale.s_z1 = std::sqrt(std::abs(nf.Bt) / (l * std::abs(nf.c2t * nf.Ct)));
    c.scale.s_z2 = 1.0 / (l * nf.Bt);

    c.sigma1 = rea0 > 0 ? 1.0 : -1.0;
    c.sigma2 = nf.c2t > 0 ? 1.0 : -1.0;
    c.sigma3 = nf.Bt * nf.Ct > 0 ? 1.0 : -1.0;
    // every cross coupling carries the same l*s^2 factor; a sqrt on d01 alone
    // would be inconsistent with d11 and break invertibility, so the plain
    // ratio is used throughout
    c.d01 = nf.a1t.real() * std::abs(nf.Bt) / std::abs(nf.c2t * nf.Ct);
    c.d02 = nf.a2t.real() / std::abs(nf.c2t);
    c.d10 = nf.b0t / std::abs(rea0);
    c.d11 = nf.b1t * std::abs(nf.Bt) / std::abs(nf.c2t * nf.Ct);
    c.d12 = nf.b2t / std::abs(nf.c2t);
    c.d20 = nf.c0t / std::abs(rea0);
    c.d21 = nf.c1t * std::abs(nf.Bt) / std::abs(nf.c2t * nf.Ct);
    return c;
}

NormalFormCoeffs canonical_unscale(const CanonicalCoeffs& c, const Complex& lambda0) {
    // recover the real parts the rescaling consumed; imaginary parts of the
    // a-coefficients are not represented in the canonical system
    NormalFormCoeffs nf;
    nf.lambda0 = lambda0;
    const double l = c.scale.l;
    const double sr2 = c.scale.s_r0 * c.scale.s_r0;
    const double s12 = c.scale.s_z1 * c.scale.s_z1;
    const double s22 = c.scale.s_z2 * c.scale.s_z2;
    nf.a0t = Complex(c.sigma1 / (l * sr2), 0.0);
    nf.a1t = Complex(c.d01 / (l * s12), 0.0);
    nf.a2t = Complex(c.d02 / (l * s22), 0.0);
    nf.b0t = c.d10 / (l * sr2);
    nf.b1t = c.d11 / (l * s12);
    nf.b2t = c.d12 / (l * s22);
    nf.c0t = c.d20 / (l * sr2);
    nf.c1t = c.d21 / (l * s12);
    nf.c2t = c.sigma2 / (l * s22);
    nf.Bt = 1.0 / (l * c.scale.s_z2);
    nf.Ct = c.sigma3 * c.scale.s_z2 / (l * s12);
    return nf;
}

CoefficientSet compute_coefficients(const ReactionDerivatives& d, const BifurcationPoint& htt) {
    CoefficientSet set;
    set.point = htt;
    set.eigen = eigen_quantities(d, htt.params);
    set.transforms = transform_matrices(d, htt.params, set.eigen);
    set.quadratics = manifold_quadratics(d, htt.params, set.eigen, set.transforms);
    set.reduced = reduced_coeffs(d, htt.params, set.eigen, set.quadratics, set.transforms);
    set.complexified = complex_coeffs(set.reduced, set.eigen);
    set.normal_form = normal_form_coeffs(set.complexified, set.reduced, set.eigen);
    try {
        set.canonical = canonical_rescale(set.normal_form);
    } catch (const NumericalError& err) {
        set.canonical_ok = false;
        set.canonical_error = err.what();
    }
    return set;
}

}  // namespace httlab
