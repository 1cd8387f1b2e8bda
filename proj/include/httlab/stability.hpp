#pragma once

#include <map>
#include <string>

#include "httlab/linalg.hpp"
#include "httlab/reaction.hpp"

namespace httlab {

// M_{n,alpha} for one Fourier cosine mode, with the alpha-free M~_n alongside.
struct ModeMatrix {
    int n = 0;
    Mat2 entries;        // M_{n,alpha}
    Mat2 entries_tilde;  // M~_n
    double trace = 0, determinant = 0;
    double det_tilde = 0;
};

// mu0, omega0 of the 0-mode pair and mu_j^± of modes 1, 2.
struct EigenQuantities {
    double mu0 = 0, omega0 = 0;
    double mu1_plus = 0, mu1_minus = 0;
    double mu2_plus = 0, mu2_minus = 0;
    double mu_plus(int j) const { return j == 1 ? mu1_plus : mu2_plus; }
    double mu_minus(int j) const { return j == 1 ? mu1_minus : mu2_minus; }
};

enum class BifurcationKind { HopfAlpha, Degenerate12, HTT, DegenerateMM1 };

struct BifurcationPoint {
    BifurcationKind kind = BifurcationKind::HTT;
    SystemParams params;
    std::map<std::string, double> verification;  // residuals, margins, spectral gap
};

ModeMatrix mode_matrix(const ReactionDerivatives& d, const SystemParams& p, int n);

// alpha* = -f_u/g_v, the unique root of tr M_{0,alpha} = 0.
double hopf_alpha(const ReactionDerivatives& d);

// D_v on the mode-n neutral curve det M~_n = 0 at the given D_u.
double neutral_curve(const ReactionDerivatives& d, int n, double D_u, double L);

// Closed-form intersection of the mode-1 and mode-2 neutral curves.
struct DegeneratePoint {
    double D_u = 0, D_v = 0;
    bool plus_branch = false;  // set when the minus root branch gave D_u <= 0
};
DegeneratePoint degenerate_point_12(const ReactionDerivatives& d, double k);

// (alpha*, D_u*, D_v*) with the full spectrum verification of modes 0..n_check.
BifurcationPoint htt_point(const ReactionDerivatives& d, double L, int n_check = 64);

EigenQuantities eigen_quantities(const ReactionDerivatives& d, const SystemParams& p);

SystemParams params_at(const BifurcationPoint& pt);

}  // namespace httlab
