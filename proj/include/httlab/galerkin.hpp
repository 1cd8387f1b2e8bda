#pragma once

#include <vector>

#include "httlab/linalg.hpp"
#include "httlab/ode.hpp"
#include "httlab/reaction.hpp"

namespace httlab {

// Cosine-mode amplitudes for m = 0..N; negative modes implied by u_{-m} = u_m.
struct FourierState {
    int N = 0;
    std::vector<Complex> u, v;  // size N+1

    explicit FourierState(int n = 0) : N(n), u(n + 1, Complex(0, 0)), v(n + 1, Complex(0, 0)) {}
    bool finite() const;
    double max_imag() const;
};

enum class Nonlinearity {
    TaylorCubic,  // the cubic truncation the reduction is derived from
    Exact         // true f, g (for pde-comparison runs); real states only
};

// The infinite cosine-mode system restricted to |m| <= N.
class TruncatedVectorField {
public:
    TruncatedVectorField(ReactionDerivatives derivs, SystemParams params, int N,
                         Nonlinearity mode = Nonlinearity::TaylorCubic,
                         ReactionPair pair = {}, Equilibrium eq = {});

    // pseudo-spectral evaluation with dealiasing padding (fast path)
    void rhs(const FourierState& s, FourierState& ds) const;
    // direct convolution sums restricted to index triples within +-N (test oracle)
    void rhs_direct(const FourierState& s, FourierState& ds) const;
    // the unrestricted two-sided system on m = -N..N (stored at index m+N); this is
    // where the O(2) actions u_m -> e^{imk eta} u_m live
    void rhs_bilateral(const std::vector<Complex>& u, const std::vector<Complex>& v,
                       std::vector<Complex>& du, std::vector<Complex>& dv) const;

    int N() const { return N_; }
    const SystemParams& params() const { return params_; }
    const ReactionDerivatives& derivs() const { return derivs_; }

    std::vector<double> pack(const FourierState& s) const;
    FourierState unpack(const std::vector<double>& y) const;
    OdeField as_ode() const;

private:
    void nonlinear_grid(std::vector<Complex>& fu_out, std::vector<Complex>& gv_out,
                        const std::vector<Complex>& ug, const std::vector<Complex>& vg) const;

    ReactionDerivatives derivs_;
    SystemParams params_;
    int N_;
    Nonlinearity mode_;
    ReactionPair pair_;
    Equilibrium eq_;
    int M_;                          // dealiased grid size
    std::vector<Complex> fwd_, bwd_; // DFT twiddle tables, (N+1) x M
    std::vector<Mat2> mode_mats_;
};

// Fourier coefficients of grid data sampled uniformly on [0, L] (both endpoints).
FourierState project(const std::vector<double>& u_grid, const std::vector<double>& v_grid,
                     int N, const Equilibrium& eq, double L);

// Field values on n uniform points over [0, L]; real parts of the cosine sum.
void reconstruct(const FourierState& s, const Equilibrium& eq, double L, int n_points,
                 std::vector<double>& u_grid, std::vector<double>& v_grid);

struct GalerkinSample {
    double t = 0;
    FourierState state;
};

std::vector<GalerkinSample> simulate(const TruncatedVectorField& field,
                                     const FourierState& state0, double t0, double t1,
                                     std::size_t n_samples, double rtol = 1e-8,
                                     double atol = 1e-10);

}  // namespace httlab
