#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace httlab {

using OdeField =
    std::function<void(double t, const std::vector<double>& y, std::vector<double>& dy)>;

struct OdeOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    double initial_step = 0.0;  // 0 = auto; sign follows integration direction
    double max_step = 0.0;      // 0 = unlimited
    std::size_t max_steps = 50'000'000;
};

struct OdeSample {
    double t = 0;
    std::vector<double> y;
};

// Dormand–Prince 5(4) embedded pair with elementary step control.
// Steps are clipped at requested output times, so results are deterministic.
class RungeKutta45 {
public:
    RungeKutta45(OdeField field, std::vector<double> y0, double t0, OdeOptions opt = {});

    // Advance to exactly t_end (forward or backward).
    void advance_to(double t_end);

    double time() const { return t_; }
    const std::vector<double>& state() const { return y_; }
    std::vector<double>& state() { return y_; }

    std::size_t accepted() const { return accepted_; }
    std::size_t rejected() const { return rejected_; }

private:
    double attempt_step(double h);  // returns error norm; fills ynew_
    OdeField field_;
    std::vector<double> y_, ynew_, k_[7], scratch_;
    double t_ = 0, h_ = 0;
    OdeOptions opt_;
    std::size_t accepted_ = 0, rejected_ = 0;
};

// Convenience wrapper: trajectory sampled at evenly spaced times over [t0, t1].
std::vector<OdeSample> integrate(const OdeField& field, std::vector<double> y0, double t0,
                                 double t1, std::size_t n_samples, OdeOptions opt = {});

}  // namespace httlab
