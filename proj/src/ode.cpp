#include "httlab/ode.hpp"

#include <algorithm>
#include <cmath>

#include "httlab/errors.hpp"

namespace httlab {

namespace {

// Dormand–Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// embedded 4th-order weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

}  // namespace

RungeKutta45::RungeKutta45(OdeField field, std::vector<double> y0, double t0, OdeOptions opt)
    : field_(std::move(field)), y_(std::move(y0)), t_(t0), opt_(opt) {
    const std::size_t n = y_.size();
    ynew_.resize(n);
    scratch_.resize(n);
    for (auto& k : k_) k.resize(n);
    h_ = opt_.initial_step;
}

double RungeKutta45::attempt_step(double h) {
    const std::size_t n = y_.size();
    field_(t_, y_, k_[0]);
    for (std::size_t i = 0; i < n; ++i) scratch_[i] = y_[i] + h * a21 * k_[0][i];
    field_(t_ + c2 * h, scratch_, k_[1]);
    for (std::size_t i = 0; i < n; ++i)
        scratch_[i] = y_[i] + h * (a31 * k_[0][i] + a32 * k_[1][i]);
    field_(t_ + c3 * h, scratch_, k_[2]);
    for (std::size_t i = 0; i < n; ++i)
        scratch_[i] = y_[i] + h * (a41 * k_[0][i] + a42 * k_[1][i] + a43 * k_[2][i]);
    field_(t_ + c4 * h, scratch_, k_[3]);
    for (std::size_t i = 0; i < n; ++i)
        scratch_[i] =
            y_[i] + h * (a51 * k_[0][i] + a52 * k_[1][i] + a53 * k_[2][i] + a54 * k_[3][i]);
    field_(t_ + c5 * h, scratch_, k_[4]);
    for (std::size_t i = 0; i < n; ++i)
        scratch_[i] = y_[i] + h * (a61 * k_[0][i] + a62 * k_[1][i] + a63 * k_[2][i] +
                                   a64 * k_[3][i] + a65 * k_[4][i]);
    field_(t_ + h, scratch_, k_[5]);
    for (std::size_t i = 0; i < n; ++i)
        ynew_[i] = y_[i] + h * (b1 * k_[0][i] + b3 * k_[2][i] + b4 * k_[3][i] +
                                b5 * k_[4][i] + b6 * k_[5][i]);
    field_(t_ + h, ynew_, k_[6]);

    double err2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y4 = y_[i] + h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] +
                                       e5 * k_[4][i] + e6 * k_[5][i] + e7 * k_[6][i]);
        const double sc =
            opt_.atol + opt_.rtol * std::max(std::abs(y_[i]), std::abs(ynew_[i]));
        const double e = (ynew_[i] - y4) / sc;
        err2 += e * e;
    }
    return std::sqrt(err2 / static_cast<double>(n));
}

void RungeKutta45::advance_to(double t_end) {
    if (t_end == t_) return;
    const double dir = (t_end > t_) ? 1.0 : -1.0;
    const double span = std::abs(t_end - t_);

    if (h_ == 0.0 || h_ * dir <= 0.0) h_ = dir * std::min(1e-3 * span + 1e-12, span);
    if (opt_.max_step > 0.0 && std::abs(h_) > opt_.max_step) h_ = dir * opt_.max_step;

    std::size_t steps = 0;
    while (dir * (t_end - t_) > 0.0) {
        if (++steps > opt_.max_steps)
            throw NumericalError("ode: step budget exhausted");
        double h = h_;
        if (dir * (t_ + h) > dir * t_end) h = t_end - t_;

        const double err = attempt_step(h);
        if (err <= 1.0) {
            t_ += h;
            y_.swap(ynew_);
            ++accepted_;
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            fac = std::clamp(fac, 0.2, 5.0);
            h_ = h * fac;
        } else {
            ++rejected_;
            double fac = std::isfinite(err) ? std::max(0.9 * std::pow(err, -0.2), 0.1) : 0.1;
            h_ = h * fac;
        }
        if (opt_.max_step > 0.0 && std::abs(h_) > opt_.max_step) h_ = dir * opt_.max_step;
        if (std::abs(h_) < 1e-14 * std::max(1.0, std::abs(t_)))
            throw NumericalError("ode: step-size underflow (stiffness)");
    }
}

std::vector<OdeSample> integrate(const OdeField& field, std::vector<double> y0, double t0,
                                 double t1, std::size_t n_samples, OdeOptions opt) {
    RungeKutta45 rk(field, std::move(y0), t0, opt);
    std::vector<OdeSample> out;
    out.reserve(n_samples + 1);
    out.push_back({t0, rk.state()});
    for (std::size_t i = 1; i <= n_samples; ++i) {
        const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n_samples);
        rk.advance_to(t);
        out.push_back({t, rk.state()});
    }
    return out;
}

}  // namespace httlab
