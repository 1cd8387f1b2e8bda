#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "httlab/linalg.hpp"
#include "httlab/manifold.hpp"
#include "httlab/ode.hpp"

namespace httlab {

// Point of the rescaled reduced system; r0 is a polar radius.
struct ReducedState {
    double r0 = 0, z1 = 0, z2 = 0;
};

struct ReducedParams {
    double mu0 = 0, mu1 = 0, mu2 = 0;
    CanonicalCoeffs coeffs;
    // false drops the 1:2 resonance terms z1 z2 and sigma3 z1^2, the shape the
    // 0:m:m+1 interaction takes for m >= 2
    bool resonance_terms = true;
};

ReducedState nf_vector_field(const ReducedState& s, const ReducedParams& p);
std::array<std::array<double, 3>, 3> nf_jacobian(const ReducedState& s, const ReducedParams& p);

enum class EquilibriumLabel { O, PM0, PM2plus, PM2minus, MM02plus, MM02minus, MM12 };
std::string to_string(EquilibriumLabel l);

struct EquilibriumInfo {
    EquilibriumLabel label = EquilibriumLabel::O;
    ReducedState state;
    std::array<Complex, 3> eigenvalues{};
    bool existence_ok = false;
    double field_residual = 0;
    std::string note;
};

// O, PM0, PM2±, MM02± in closed form; MM12 by Newton on the rho-parameterized
// balance equations when it converges.
std::vector<EquilibriumInfo> nf_equilibria(const ReducedParams& p);

enum class UnfoldingCase { Ia, Ib, II, III, IVa, IVb, V, VIa, VIb, VIIa, VIIb, VIII };
std::string to_string(UnfoldingCase c);

struct HopfHopfData {
    double rho = 0;
    double z1s = 0, z2s = 0, mu0s = 0, mu1s = 0, mu2s = 0;
    double nu11 = 0, nu12 = 0, nu21 = 0, nu22 = 0;
    double omega12 = 0;
    double J1 = 0, J2 = 0;
    Complex K1, K2;
    double b = 0, c = 0, d = 0;
    double delta_tilde = 0;
    std::optional<UnfoldingCase> unfolding;
};

// Point part: z2*, z1*, mu* and the nu-matrix entries (sigma3 = -1 branch).
HopfHopfData mm12_hopf_hopf(double rho, const CanonicalCoeffs& coeffs);

// J1, J2, K1, K2, then (b, c, d) and the unfolding case.
void hopf_hopf_coeffs(HopfHopfData& data, const CanonicalCoeffs& coeffs);

UnfoldingCase classify_unfolding(double b, double c, double d, double delta_tilde);

struct PlanarEquilibrium {
    std::string name;  // E1..E4
    double rho0 = 0, rho12 = 0;
    bool exists = false;
    std::array<Complex, 2> eigenvalues{};
    std::string correspondence_4d;  // what the point lifts to one level up
    std::string correspondence_rd;  // and in the reaction-diffusion system
};

std::vector<PlanarEquilibrium> planar_equilibria(double nu0, double nu12, double b, double c,
                                                 double d);

// Planar amplitude system plus the surviving quintic term e23 rho12^5.
std::array<double, 2> planar_quintic_field(const std::array<double, 2>& s, double nu0,
                                           double nu12, double b, double c, double d,
                                           double e23);

struct HopfPitchforkDiagnosis {
    bool e4_exists = false;
    double r0 = 0, z2 = 0;                 // E4^+ coordinates on S2
    bool via_pattern_plus = false;         // (sigma1, d02, d20, sigma2) = (1,+,-,-1)
    bool via_pattern_minus = false;        // (-1,-,+,1)
    double delta_hat = 0;
    double hopf_mu0 = 0;                   // mu0 on the Hopf line
    double hopf_residual = 0;              // |mu0 - hopf_mu0|
    double pitchfork_mu1_plus = 0;         // mu1 making the z1-row vanish at E4^+
    double pitchfork_mu1_minus = 0;        //   ... at E4^-
    double pitchfork_residual = 0;
    double z1_row_eigenvalue_plus = 0;     // mu1 + d10 r0^2 + d12 z2^2 + z2
    double z1_row_eigenvalue_minus = 0;
    double rz_block_trace = 0;             // trace of the (r0, z2) block at E4
};

HopfPitchforkDiagnosis hopf_pitchfork_conditions(double mu0, double mu1, double mu2,
                                                 const CanonicalCoeffs& coeffs);

struct ReducedSample {
    double t = 0;
    ReducedState state;
};

std::vector<ReducedSample> integrate_reduced(const ReducedParams& p, const ReducedState& s0,
                                             double t0, double t1, std::size_t n_samples,
                                             double rtol = 1e-9, double atol = 1e-12);

struct LyapunovResult {
    double lambda_max = 0;
    std::vector<double> history;  // running estimate at each renormalization
};

// Largest Lyapunov exponent by tangent-vector renormalization.
LyapunovResult lyapunov_max(const ReducedParams& p, const ReducedState& s0, double t_total,
                            double t_renorm = 1.0, double transient_fraction = 0.2,
                            double rtol = 1e-9, double atol = 1e-12);

// Leading-order spatial reconstruction metadata (HTT point context).
struct NfMeta {
    double omega0 = 0;
    double L = 1;
    Equilibrium equilibrium;
    TransformMatrices transforms;
    ScaleRecord scale;   // canonical -> physical amplitudes and time
};

struct FieldSnapshot {
    double t = 0;
    std::vector<double> u, v;
};

std::vector<FieldSnapshot> reconstruct_solution(const std::vector<ReducedSample>& traj,
                                                const NfMeta& meta, int n_points);

}  // namespace httlab
