#include "httlab/nf_dynamics.hpp"

#include <cmath>

#include "httlab/errors.hpp"

namespace httlab {

ReducedState nf_vector_field(const ReducedState& s, const ReducedParams& p) {
    const auto& c = p.coeffs;
    const double r0 = s.r0, z1 = s.z1, z2 = s.z2;
    ReducedState ds;
    ds.r0 = (p.mu0 + c.sigma1 * r0 * r0 + c.d01 * z1 * z1 + c.d02 * z2 * z2) * r0;
    ds.z1 = (p.mu1 + c.d10 * r0 * r0 + c.d11 * z1 * z1 + c.d12 * z2 * z2) * z1;
    ds.z2 = (p.mu2 + c.d20 * r0 * r0 + c.d21 * z1 * z1 + c.sigma2 * z2 * z2) * z2;
    if (p.resonance_terms) {
        ds.z1 += z1 * z2;
        ds.z2 += c.sigma3 * z1 * z1;
    }
    return ds;
}

std::array<std::array<double, 3>, 3> nf_jacobian(const ReducedState& s,
                                                 const ReducedParams& p) {
    const auto& c = p.coeffs;
    const double r0 = s.r0, z1 = s.z1, z2 = s.z2;
    std::array<std::array<double, 3>, 3> J{};
    J[0][0] = p.mu0 + 3.0 * c.sigma1 * r0 * r0 + c.d01 * z1 * z1 + c.d02 * z2 * z2;
    J[0][1] = 2.0 * c.d01 * r0 * z1;
    J[0][2] = 2.0 * c.d02 * r0 * z2;
    J[1][0] = 2.0 * c.d10 * r0 * z1;
    J[1][1] = p.mu1 + c.d10 * r0 * r0 + 3.0 * c.d11 * z1 * z1 + c.d12 * z2 * z2;
    J[1][2] = 2.0 * c.d12 * z1 * z2;
    J[2][0] = 2.0 * c.d20 * r0 * z2;
    J[2][1] = 2.0 * c.d21 * z1 * z2;
    J[2][2] = p.mu2 + c.d20 * r0 * r0 + c.d21 * z1 * z1 + 3.0 * c.sigma2 * z2 * z2;
    if (p.resonance_terms) {
        J[1][1] += z2;
        J[1][2] += z1;
        J[2][1] += 2.0 * c.sigma3 * z1;
    }
    return J;
}

std::string to_string(EquilibriumLabel l) {
    switch (l) {
        case EquilibriumLabel::O: return "O";
        case EquilibriumLabel::PM0: return "PM0";
        case EquilibriumLabel::PM2plus: return "PM2+";
        case EquilibriumLabel::PM2minus: return "PM2-";
        case EquilibriumLabel::MM02plus: return "MM02+";
        case EquilibriumLabel::MM02minus: return "MM02-";
        case EquilibriumLabel::MM12: return "MM12";
    }
    return "?";
}

namespace {

EquilibriumInfo make_info(EquilibriumLabel label, const ReducedState& st, bool exists,
                          const ReducedParams& p, std::string note = {}) {
    EquilibriumInfo info;
    info.label = label;
    info.state = st;
    info.note = std::move(note);
    const ReducedState f = nf_vector_field(st, p);
    info.field_residual = std::sqrt(f.r0 * f.r0 + f.z1 * f.z1 + f.z2 * f.z2);
    info.existence_ok = exists && info.field_residual < 1e-10;
    info.eigenvalues = eigenvalues3(nf_jacobian(st, p));
    return info;
}

}  // namespace

std::vector<EquilibriumInfo> nf_equilibria(const ReducedParams& p) {
    const auto& c = p.coeffs;
    std::vector<EquilibriumInfo> out;

    out.push_back(make_info(EquilibriumLabel::O, {0, 0, 0}, true, p));

    {  // PM0: spatially homogeneous oscillation
        const double s = -p.mu0 / c.sigma1;
        ReducedState st{s > 0 ? std::sqrt(s) : 0.0, 0, 0};
        out.push_back(make_info(EquilibriumLabel::PM0, st, s > 0, p,
                                s > 0 ? "" : "requires mu0*sigma1 < 0"));
    }
    {  // PM2±: stationary 2-mode pattern
        const double s = -p.mu2 / c.sigma2;
        const double z = s > 0 ? std::sqrt(s) : 0.0;
        out.push_back(make_info(EquilibriumLabel::PM2plus, {0, 0, z}, s > 0, p,
                                s > 0 ? "" : "requires mu2*sigma2 < 0"));
        out.push_back(make_info(EquilibriumLabel::PM2minus, {0, 0, -z}, s > 0, p,
                                s > 0 ? "" : "requires mu2*sigma2 < 0"));
    }
    {  // MM02±: oscillation with constant 2-mode amplitude
        const double delta = c.sigma1 * c.sigma2 - c.d02 * c.d20;
        std::string note;
        bool ok = delta != 0.0;
        double r2 = 0, z2 = 0;
        if (ok) {
            r2 = (c.d02 * p.mu2 - c.sigma2 * p.mu0) / delta;
            z2 = (c.d20 * p.mu0 - c.sigma1 * p.mu2) / delta;
            ok = r2 > 0 && z2 > 0;
            if (!ok) note = "existence ratios not both positive";
        } else {
            note = "degenerate: sigma1*sigma2 = d02*d20";
        }
        const double rr = ok ? std::sqrt(r2) : 0.0, zz = ok ? std::sqrt(z2) : 0.0;
        out.push_back(make_info(EquilibriumLabel::MM02plus, {rr, 0, zz}, ok, p, note));
        out.push_back(make_info(EquilibriumLabel::MM02minus, {rr, 0, -zz}, ok, p, note));
    }
    if (p.resonance_terms) {
        // MM12 via 2-D Newton on the rho-parameterized balance equations
        //   0 = mu1 + (d11 rho^2 z2 + d12 z2 + rho) z2
        //   0 = mu2 + (d21 rho^2 z2 + sigma2 z2 + sigma3 rho^2) z2
        auto F = [&](double rho, double z2, double& f1, double& f2) {
            f1 = p.mu1 + (c.d11 * rho * rho * z2 + c.d12 * z2 + rho) * z2;
            f2 = p.mu2 + (c.d21 * rho * rho * z2 + c.sigma2 * z2 + c.sigma3 * rho * rho) * z2;
        };
        bool found = false;
        ReducedState best{};
        double best_res = 1e300;
        for (double rho0 : {0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 0.25, -0.25})
            for (double z20 : {0.1, -0.1, 0.3, -0.3}) {
                double rho = rho0, z2 = z20;
                bool conv = false;
                for (int it = 0; it < 60; ++it) {
                    double f1, f2;
                    F(rho, z2, f1, f2);
                    const double j11 = (2.0 * c.d11 * rho * z2 + 1.0) * z2;
                    const double j12 = 2.0 * c.d11 * rho * rho * z2 + 2.0 * c.d12 * z2 + rho;
                    const double j21 = (c.d21 * rho * z2 + c.sigma3) * 2.0 * rho * z2;
                    const double j22 =
                        2.0 * c.d21 * rho * rho * z2 + 2.0 * c.sigma2 * z2 + c.sigma3 * rho * rho;
                    const double det = j11 * j22 - j12 * j21;
                    if (std::abs(det) < 1e-14) break;
                    const double drho = (f1 * j22 - f2 * j12) / det;
                    const double dz2 = (j11 * f2 - j21 * f1) / det;
                    rho -= drho;
                    z2 -= dz2;
                    if (std::abs(drho) + std::abs(dz2) < 1e-13 * (1.0 + std::abs(rho) + std::abs(z2))) {
                        conv = true;
                        break;
                    }
                }
                if (!conv || std::abs(rho) < 1e-8 || std::abs(z2) < 1e-12) continue;
                double f1, f2;
                F(rho, z2, f1, f2);
                const double res = std::abs(f1) + std::abs(f2);
                if (res < 1e-10 && res < best_res) {
                    best = {0.0, rho * z2, z2};
                    best_res = res;
                    found = true;
                }
            }
        if (found) {
            auto info = make_info(EquilibriumLabel::MM12, best, true, p,
                                  "root of the rho-form balance equations");
            // the balance equations' root need not null the cubic field exactly;
            // keep the flag honest and carry the residual
            info.existence_ok = info.existence_ok && info.field_residual < 1e-10;
            out.push_back(info);
        }
    }
    return out;
}

std::string to_string(UnfoldingCase cse) {
    switch (cse) {
        case UnfoldingCase::Ia: return "Ia";
        case UnfoldingCase::Ib: return "Ib";
        case UnfoldingCase::II: return "II";
        case UnfoldingCase::III: return "III";
        case UnfoldingCase::IVa: return "IVa";
        case UnfoldingCase::IVb: return "IVb";
        case UnfoldingCase::V: return "V";
        case UnfoldingCase::VIa: return "VIa";
        case UnfoldingCase::VIb: return "VIb";
        case UnfoldingCase::VIIa: return "VIIa";
        case UnfoldingCase::VIIb: return "VIIb";
        case UnfoldingCase::VIII: return "VIII";
    }
    return "?";
}

HopfHopfData mm12_hopf_hopf(double rho, const CanonicalCoeffs& c) {
    if (c.sigma3 != -1.0)
        throw NumericalError("mm12_hopf_hopf: closed forms exist for sigma3 = -1 only");
    HopfHopfData h;
    h.rho = rho;
    const double w = c.d11 * rho * rho + c.sigma2;
    if (w == 0.0) throw NumericalError("mm12_hopf_hopf: d11 rho^2 + sigma2 = 0");
    h.z2s = -rho * rho / (2.0 * w);
    h.z1s = rho * h.z2s;
    h.mu0s = -(rho * rho * c.d01 + c.d02) * std::pow(rho, 4) / (4.0 * w * w);
    h.mu1s = rho * rho * (2.0 * rho * w - (c.d12 + c.d11 * rho * rho) * rho * rho) /
             (4.0 * w * w);
    h.mu2s = -std::pow(rho, 4) * (rho * rho * (2.0 * c.d11 + c.d21) + 3.0 * c.sigma2) /
             (4.0 * w * w);
    h.nu11 = 2.0 * c.d11 * h.z1s * h.z1s;
    h.nu12 = h.z1s * (2.0 * c.d12 * h.z2s + 1.0);
    h.nu21 = 2.0 * h.z1s * (c.d21 * h.z2s - 1.0);
    h.nu22 = h.z2s * (2.0 * c.sigma2 * h.z2s + rho * rho);
    const double positivity =
        c.d11 * (2.0 * c.sigma2 * h.z2s - c.sigma3 * rho * rho) * h.z2s -
        (2.0 * c.d12 * h.z2s + 1.0) * (c.d21 * h.z2s + c.sigma3);
    if (positivity <= 0.0)
        throw NumericalError("mm12_hopf_hopf: positivity condition fails, no purely "
                             "imaginary pair at this rho");
    const double disc = 4.0 * (h.nu11 * h.nu22 - h.nu12 * h.nu21) -
                        std::pow(h.nu11 + h.nu22, 2);
    if (disc <= 0.0)
        throw NumericalError("mm12_hopf_hopf: discriminant not positive");
    h.omega12 = 0.5 * std::sqrt(disc);
    return h;
}

void hopf_hopf_coeffs(HopfHopfData& h, const CanonicalCoeffs& c) {
    if (!(h.omega12 > 0.0)) throw NumericalError("hopf_hopf_coeffs: omega12 must be positive");
    const double z1 = h.z1s, z2 = h.z2s;
    const double n11 = h.nu11, n12 = h.nu12, n21 = h.nu21, n22 = h.nu22;
    const double om = h.omega12;
    const Complex iom(0.0, om);
    const Complex lam = Complex((n11 + n22) / 2.0, om);  // = i omega12 on the Hopf set

    const Complex P1 = c.d10 * z1;
    const Complex P2 = 2.0 * (3.0 * c.d11 * z1 * n12 * n12 + c.d12 * z1 * (n11 * n11 + om * om) -
                              (2.0 * c.d12 * z2 + 1.0) * n11 * n12);
    const Complex P3 = n12 * c.d10;
    const Complex P4 = 3.0 * n12 * n12 * c.d11 * z1 +
                       (2.0 * n11 * n11 - 2.0 * n11 * iom + n12 * n21) * c.d12 * z1 +
                       n12 * (2.0 * c.d12 * z2 + 1.0) * (iom - n11);
    const Complex P5 = n12 * (3.0 * c.d11 * n12 * n12 +
                              c.d12 * (3.0 * n11 * n11 + om * om - 2.0 * iom * n11));
    const Complex Q1 = c.d20 * z2;
    const Complex Q2 = 2.0 * ((c.d21 * z2 - 1.0) * n12 * n12 +
                              3.0 * c.sigma2 * z2 * (n11 * n11 + om * om) -
                              2.0 * c.d21 * z1 * n11 * n12);
    const Complex Q3 = c.d20 * (iom - n11);
    const Complex Q4 = n12 * n12 * (c.d21 * z2 - 1.0) +
                       (2.0 * n11 * n11 - 2.0 * n11 * iom + n12 * n21) * 3.0 * c.sigma2 * z2 +
                       2.0 * c.d21 * z1 * n12 * (iom - n11);
    const Complex Q5 = c.d21 * n12 * n12 * (iom - 3.0 * n11) +
                       3.0 * c.sigma2 * (iom - n11) * (om * om + n11 * n11);

    auto U = [&](const Complex& P, const Complex& Q) {
        return ((Complex(n11, om) / n12) * P + Q) / (2.0 * iom);
    };
    const Complex U1 = U(P1, Q1), U2 = U(P2, Q2), U3 = U(P3, Q3), U4 = U(P4, Q4),
                  U5 = U(P5, Q5);
    const Complex U4t = ((Complex(n11, om) / n12) * std::conj(P4) + std::conj(Q4)) / (2.0 * iom);
    const Complex V1 = 2.0 * (z1 * c.d01 * n12 - z2 * c.d02 * Complex(n11, -om));
    const Complex V2 = 2.0 * n12 * (c.d01 * n12 - c.d02 * n21);

    const double nu0 = 0.0;  // evaluated on the Hopf-Hopf set
    h.J1 = c.sigma1 - 2.0 * std::real(U1 * V1 / lam);
    h.J2 = std::real(V2) - 2.0 * std::real(U2 * V1 / lam);
    h.K1 = U3 + (std::conj(U1) * U2 - U1 * U4) / lam - U1 * V1 / (2.0 * nu0 - lam);
    h.K2 = U5 + (std::norm(U2) - U2 * U4) / lam -
           2.0 * std::norm(U4t) / (2.0 * std::conj(lam) - lam);

    if (h.J1 == 0.0 || h.K2.real() == 0.0)
        throw NumericalError("hopf_hopf_coeffs: degenerate rescale (J1 = 0 or Re K2 = 0)");
    if (h.J1 > 0.0) {
        h.b = h.J2 / std::abs(h.K2.real());
        h.c = h.K1.real() / std::abs(h.J1);
        h.d = h.K2.real() > 0 ? 1.0 : -1.0;
    } else {
        // J1 < 0: flip the unfolding parameters and time
        h.b = -h.J2 / std::abs(h.K2.real());
        h.c = h.K1.real() / std::abs(h.J1);
        h.d = h.K2.real() > 0 ? -1.0 : 1.0;
    }
    h.delta_tilde = h.d - h.b * h.c;
    try {
        h.unfolding = classify_unfolding(h.b, h.c, h.d, h.delta_tilde);
    } catch (const NumericalError&) {
        h.unfolding.reset();  // boundary data, no case label
    }
}

UnfoldingCase classify_unfolding(double b, double c, double d, double delta_tilde) {
    if (b == 0.0 || c == 0.0 || delta_tilde == 0.0 || (d != 1.0 && d != -1.0))
        throw NumericalError("classify_unfolding: boundary (zero) input rejected");
    const bool bp = b > 0, cp = c > 0, dp = delta_tilde > 0;
    if (d > 0) {
        if (bp && cp) return dp ? UnfoldingCase::Ia : UnfoldingCase::Ib;
        if (bp && !cp) return UnfoldingCase::II;
        if (!bp && cp) return UnfoldingCase::III;
        return dp ? UnfoldingCase::IVa : UnfoldingCase::IVb;
    }
    if (bp && cp) return UnfoldingCase::V;
    if (bp && !cp) return dp ? UnfoldingCase::VIa : UnfoldingCase::VIb;
    if (!bp && cp) return dp ? UnfoldingCase::VIIa : UnfoldingCase::VIIb;
    return UnfoldingCase::VIII;
}

std::vector<PlanarEquilibrium> planar_equilibria(double nu0, double nu12, double b, double c,
                                                 double d) {
    auto jac = [&](double x, double y) {
        Mat2 J{nu0 + 3.0 * x * x + b * y * y, 2.0 * b * x * y,
               2.0 * c * x * y, nu12 + c * x * x + 3.0 * d * y * y};
        return eigenvalues(J);
    };
    std::vector<PlanarEquilibrium> out(4);
    out[0] = {"E1", 0, 0, true, jac(0, 0), "equilibrium", "1:2 mixed mode stationary sol."};
    {
        auto& e = out[1];
        e.name = "E2";
        e.exists = nu0 < 0;
        e.rho0 = e.exists ? std::sqrt(-nu0) : 0;
        e.eigenvalues = jac(e.rho0, 0);
        e.correspondence_4d = "periodic orbit";
        e.correspondence_rd = "uniform osci. + 1:2 stationary sol.";
    }
    {
        auto& e = out[2];
        e.name = "E3";
        e.exists = nu12 * d < 0;
        e.rho12 = e.exists ? std::sqrt(-nu12 / d) : 0;
        e.eigenvalues = jac(0, e.rho12);
        e.correspondence_4d = "periodic orbit";
        e.correspondence_rd = "1:2 mixed mode osci.";
    }
    {
        auto& e = out[3];
        e.name = "E4";
        const double dt = d - b * c;
        if (dt != 0.0) {
            const double x2 = (b * nu12 - d * nu0) / dt;
            const double y2 = (c * nu0 - nu12) / dt;
            e.exists = x2 > 0 && y2 > 0;
            if (e.exists) {
                e.rho0 = std::sqrt(x2);
                e.rho12 = std::sqrt(y2);
            }
        }
        e.eigenvalues = jac(e.rho0, e.rho12);
        e.correspondence_4d = "invariant 2-torus";
        e.correspondence_rd = "uniform osci. + 1:2 mixed mode osci.";
    }
    return out;
}

std::array<double, 2> planar_quintic_field(const std::array<double, 2>& s, double nu0,
                                           double nu12, double b, double c, double d,
                                           double e23) {
    const double x = s[0], y = s[1];
    return {(nu0 + x * x + b * y * y) * x,
            (nu12 + c * x * x + d * y * y) * y + e23 * std::pow(y, 5)};
}

HopfPitchforkDiagnosis hopf_pitchfork_conditions(double mu0, double mu1, double mu2,
                                                 const CanonicalCoeffs& c) {
    HopfPitchforkDiagnosis d;
    d.delta_hat = c.sigma1 * c.sigma2 - c.d02 * c.d20;
    d.via_pattern_plus = c.sigma1 == 1.0 && c.d02 > 0 && c.d20 < 0 && c.sigma2 == -1.0 &&
                         d.delta_hat > 0;
    d.via_pattern_minus = c.sigma1 == -1.0 && c.d02 < 0 && c.d20 > 0 && c.sigma2 == 1.0 &&
                          d.delta_hat > 0;
    if (d.delta_hat != 0.0) {
        const double r2 = (c.d02 * mu2 - c.sigma2 * mu0) / d.delta_hat;
        const double z2 = (c.d20 * mu0 - c.sigma1 * mu2) / d.delta_hat;
        d.e4_exists = r2 > 0 && z2 > 0;
        if (d.e4_exists) {
            d.r0 = std::sqrt(r2);
            d.z2 = std::sqrt(z2);
            d.rz_block_trace = 2.0 * c.sigma1 * r2 + 2.0 * c.sigma2 * z2;
            d.z1_row_eigenvalue_plus = mu1 + c.d10 * r2 + c.d12 * z2 + d.z2;
            d.z1_row_eigenvalue_minus = mu1 + c.d10 * r2 + c.d12 * z2 - d.z2;
            d.pitchfork_mu1_plus = -(c.d10 * r2 + c.d12 * z2 + d.z2);
            d.pitchfork_mu1_minus = -(c.d10 * r2 + c.d12 * z2 - d.z2);
            d.pitchfork_residual = std::min(std::abs(mu1 - d.pitchfork_mu1_plus),
                                            std::abs(mu1 - d.pitchfork_mu1_minus));
        }
    }
    const double den = c.d20 + c.sigma2;
    if (den != 0.0) {
        d.hopf_mu0 = (c.d02 + c.sigma1) * mu2 / den;
        d.hopf_residual = std::abs(mu0 - d.hopf_mu0);
    } else {
        d.hopf_mu0 = std::nan("");
        d.hopf_residual = std::nan("");
    }
    return d;
}

namespace {

OdeField reduced_ode(const ReducedParams& p) {
    return [p](double, const std::vector<double>& y, std::vector<double>& dy) {
        const ReducedState s{y[0], y[1], y[2]};
        const ReducedState ds = nf_vector_field(s, p);
        dy.resize(3);
        dy[0] = ds.r0;
        dy[1] = ds.z1;
        dy[2] = ds.z2;
    };
}

}  // namespace

std::vector<ReducedSample> integrate_reduced(const ReducedParams& p, const ReducedState& s0,
                                             double t0, double t1, std::size_t n_samples,
                                             double rtol, double atol) {
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;
    // the field is odd in r0, so trajectories that numerically cross r0 = 0 are
    // reflections of the physical ones; |r0| is reported
    auto raw = integrate(reduced_ode(p), {s0.r0, s0.z1, s0.z2}, t0, t1, n_samples, opt);
    std::vector<ReducedSample> out;
    out.reserve(raw.size());
    for (auto& smp : raw)
        out.push_back({smp.t, {std::abs(smp.y[0]), smp.y[1], smp.y[2]}});
    return out;
}

LyapunovResult lyapunov_max(const ReducedParams& p, const ReducedState& s0, double t_total,
                            double t_renorm, double transient_fraction, double rtol,
                            double atol) {
    if (t_total < 100.0 * t_renorm)
        throw ConfigError("lyapunov_max: t_total must cover at least 100 renormalizations");
    OdeField aug = [p](double, const std::vector<double>& y, std::vector<double>& dy) {
        const ReducedState s{y[0], y[1], y[2]};
        const ReducedState ds = nf_vector_field(s, p);
        const auto J = nf_jacobian(s, p);
        dy.resize(6);
        dy[0] = ds.r0;
        dy[1] = ds.z1;
        dy[2] = ds.z2;
        for (int i = 0; i < 3; ++i)
            dy[3 + i] = J[i][0] * y[3] + J[i][1] * y[4] + J[i][2] * y[5];
    };
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;
    std::vector<double> y0{s0.r0, s0.z1, s0.z2, 1.0, 0.7, -0.4};
    {
        double n = std::sqrt(y0[3] * y0[3] + y0[4] * y0[4] + y0[5] * y0[5]);
        for (int i = 3; i < 6; ++i) y0[i] /= n;
    }
    RungeKutta45 rk(aug, y0, 0.0, opt);
    const std::size_t n_seg = static_cast<std::size_t>(t_total / t_renorm);
    LyapunovResult res;
    res.history.reserve(n_seg);
    std::vector<double> logs;
    logs.reserve(n_seg);
    for (std::size_t seg = 1; seg <= n_seg; ++seg) {
        rk.advance_to(static_cast<double>(seg) * t_renorm);
        auto& y = rk.state();
        const double orbit_norm = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
        if (orbit_norm > 1e6)
            throw NumericalError("lyapunov_max: orbit escaped (norm > 1e6)");
        const double vn = std::sqrt(y[3] * y[3] + y[4] * y[4] + y[5] * y[5]);
        logs.push_back(std::log(vn));
        for (int i = 3; i < 6; ++i) y[i] /= vn;
        const std::size_t skip = static_cast<std::size_t>(transient_fraction * seg);
        double acc = 0;
        for (std::size_t i = skip; i < logs.size(); ++i) acc += logs[i];
        res.history.push_back(acc / (static_cast<double>(logs.size() - skip) * t_renorm));
    }
    res.lambda_max = res.history.back();
    return res;
}

std::vector<FieldSnapshot> reconstruct_solution(const std::vector<ReducedSample>& traj,
                                                const NfMeta& meta, int n_points) {
    std::vector<FieldSnapshot> out;
    out.reserve(traj.size());
    const double k = M_PI / meta.L;
    const Mat2& T0 = meta.transforms.T0;
    const Mat2& T1 = meta.transforms.T1;
    const Mat2& T2 = meta.transforms.T2;
    for (const auto& smp : traj) {
        // canonical -> physical amplitudes and time
        const double t_phys = meta.scale.l > 0 ? meta.scale.l * smp.t : smp.t;
        const double r0 = (meta.scale.s_r0 != 0 ? meta.scale.s_r0 : 1.0) * smp.state.r0;
        const double z1 = (meta.scale.s_z1 != 0 ? meta.scale.s_z1 : 1.0) * smp.state.z1;
        const double z2 = (meta.scale.s_z2 != 0 ? meta.scale.s_z2 : 1.0) * smp.state.z2;
        const double th = meta.omega0 * t_phys;
        const double a0 = 2.0 * meta.omega0 * r0 * std::cos(th);
        const double b0 = 2.0 * meta.omega0 * r0 * std::sin(th);
        FieldSnapshot snap;
        snap.t = t_phys;
        snap.u.resize(n_points);
        snap.v.resize(n_points);
        for (int i = 0; i < n_points; ++i) {
            const double x = meta.L * i / (n_points - 1.0);
            const double c1 = 2.0 * std::cos(k * x), c2 = 2.0 * std::cos(2.0 * k * x);
            snap.u[i] = meta.equilibrium.u + T0.a11 * a0 + T0.a12 * b0 +
                        c1 * T1.a11 * z1 + c2 * T2.a11 * z2;
            snap.v[i] = meta.equilibrium.v + T0.a21 * a0 + T0.a22 * b0 +
                        c1 * T1.a21 * z1 + c2 * T2.a21 * z2;
        }
        out.push_back(std::move(snap));
    }
    return out;
}

}  // namespace httlab
