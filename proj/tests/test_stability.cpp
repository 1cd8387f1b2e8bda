#include <doctest.h>

#include <cmath>
#include <random>

#include "httlab/errors.hpp"
#include "httlab/stability.hpp"

using namespace httlab;

namespace {

ReactionDerivatives schnak_derivs() {
    auto m = builtin_model("schnakenberg", {{"A", 0.1}, {"B", 1.0}});
    return derivatives_at(m.pair, m.equilibrium);
}

ReactionDerivatives random_derivs(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    ReactionDerivatives d;
    d.f_u = std::abs(unif(rng)) + 0.1;
    d.g_v = -(std::abs(unif(rng)) + 0.1);
    d.f_v = unif(rng);
    d.g_u = unif(rng);
    return d;
}

}  // namespace

TEST_SUITE_BEGIN("stability");

TEST_CASE("mode 0 at alpha 1 is the kinetics Jacobian with the worked values") {
    auto d = schnak_derivs();
    SystemParams p{0.02, 0.2, 1.0, 1.0};
    auto m0 = mode_matrix(d, p, 0);
    CHECK(m0.trace == doctest::Approx(-431.0 / 1100).epsilon(1e-14));
    CHECK(m0.determinant == doctest::Approx(121.0 / 100).epsilon(1e-14));
    CHECK(m0.entries.a11 == d.f_u);
    CHECK(m0.entries.a12 == d.f_v);
    CHECK(m0.entries.a21 == d.g_u);
    CHECK(m0.entries.a22 == d.g_v);
}

TEST_CASE("det M_{n,alpha} = alpha det M~_n on random inputs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.01, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        auto d = random_derivs(rng);
        SystemParams p{unif(rng), unif(rng), unif(rng), unif(rng)};
        const int n = trial % 7;
        auto m = mode_matrix(d, p, n);
        const double lhs = m.determinant, rhs = p.alpha * m.det_tilde;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1.0}));
        CHECK(((lhs > 0) == (m.det_tilde > 0) || lhs == 0.0));
    }
}

TEST_CASE("mode-1 matrix at the reported destabilized point") {
    // at D_v = 0.262314 the mode-1 determinant has crossed to the unstable side
    auto d = schnak_derivs();
    SystemParams p{0.02, 0.262314, 0.63, 1.0};
    auto m1 = mode_matrix(d, p, 1);
    CHECK(m1.det_tilde < 0.0);
    // oracle: characteristic-polynomial eigenvalues multiply/sum to det/trace
    auto ev = eigenvalues(m1.entries);
    CHECK((ev[0] * ev[1]).real() == doctest::Approx(m1.determinant).epsilon(1e-12));
    CHECK((ev[0] + ev[1]).real() == doctest::Approx(m1.trace).epsilon(1e-12));
    CHECK(std::max(ev[0].real(), ev[1].real()) > 0.0);  // Turing unstable
}

TEST_CASE("hopf_alpha reproduces the three critical time constants") {
    CHECK(hopf_alpha(schnak_derivs()) == doctest::Approx(900.0 / 1331).epsilon(1e-12));

    auto mm = builtin_model("mimura_murray", {{"a", 35}, {"b", 16}, {"c", 9}, {"d", 0.4}});
    CHECK(hopf_alpha(derivatives_at(mm.pair, mm.equilibrium)) ==
          doctest::Approx(5.0 / 6).epsilon(1e-12));

    auto art = builtin_model("artificial", {});
    CHECK(hopf_alpha(derivatives_at(art.pair, art.equilibrium)) ==
          doctest::Approx(0.25).epsilon(1e-12));

    ReactionDerivatives bad;
    bad.f_u = -1.0;
    bad.g_v = -1.0;
    CHECK_THROWS_AS(hopf_alpha(bad), NumericalError);
}

TEST_CASE("neutral curve plugs back to a zero determinant") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.001, 0.1);
    auto d = schnak_derivs();
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 3;
        const double L = 1.0 + 0.1 * (trial % 5);
        const double Du = unif(rng);
        const double q2 = std::pow(n * M_PI / L, 2);
        if (std::abs(Du * q2 - d.f_u) < 1e-3) continue;
        const double Dv = neutral_curve(d, n, Du, L);
        SystemParams p{Du, Dv, 1.0, L};
        auto m = mode_matrix(d, p, n);
        CHECK(std::abs(m.det_tilde) < 1e-12 * std::max(1.0, std::abs(d.det())));
    }
}

TEST_CASE("neutral curve agrees with a bisection oracle") {
    auto d = schnak_derivs();
    const double Du = 0.02, L = 1.0;
    const double closed = neutral_curve(d, 1, Du, L);
    // bisection on det M~_1 as a function of D_v
    double lo = 1e-4, hi = 10.0;
    auto det1 = [&](double Dv) {
        return mode_matrix(d, {Du, Dv, 1.0, L}, 1).det_tilde;
    };
    REQUIRE(det1(lo) * det1(hi) < 0.0);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (det1(lo) * det1(mid) <= 0.0) hi = mid;
        else lo = mid;
    }
    CHECK(closed == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));
}

TEST_CASE("mode-2 curve lies below mode-1 for small D_u (Schnakenberg)") {
    // small means below the 1:2 crossing at D_u* ~ 0.0148
    auto d = schnak_derivs();
    for (int i = 0; i < 20; ++i) {
        const double Du = 0.002 + 0.0005 * i;
        CHECK(neutral_curve(d, 2, Du, 1.0) < neutral_curve(d, 1, Du, 1.0));
    }
}

TEST_CASE("neutral curve singularity is rejected") {
    auto d = schnak_derivs();
    const double Du_sing = d.f_u / std::pow(M_PI, 2);
    CHECK_THROWS_AS(neutral_curve(d, 1, Du_sing, 1.0), NumericalError);
}

TEST_CASE("degenerate point: closed form vs 2-D Newton oracle for all builtins") {
    auto newton_oracle = [](const ReactionDerivatives& d, double k, double Du0, double Dv0) {
        double Du = Du0, Dv = Dv0;
        for (int it = 0; it < 100; ++it) {
            SystemParams p{Du, Dv, 1.0, M_PI / k};
            const double f1 = mode_matrix(d, p, 1).det_tilde;
            const double f2 = mode_matrix(d, p, 2).det_tilde;
            const double h = 1e-7;
            const double f1u = (mode_matrix(d, {Du + h, Dv, 1, p.L}, 1).det_tilde - f1) / h;
            const double f1v = (mode_matrix(d, {Du, Dv + h, 1, p.L}, 1).det_tilde - f1) / h;
            const double f2u = (mode_matrix(d, {Du + h, Dv, 1, p.L}, 2).det_tilde - f2) / h;
            const double f2v = (mode_matrix(d, {Du, Dv + h, 1, p.L}, 2).det_tilde - f2) / h;
            const double det = f1u * f2v - f1v * f2u;
            Du -= (f1 * f2v - f2 * f1v) / det;
            Dv -= (f1u * f2 - f2u * f1) / det;
        }
        return std::pair<double, double>{Du, Dv};
    };
    auto check = [&](const Model& m) {
        auto d = derivatives_at(m.pair, m.equilibrium);
        auto pt = degenerate_point_12(d, M_PI);
        // coarse grid seed: scan for a sign change region center
        auto [Du_o, Dv_o] = newton_oracle(d, M_PI, pt.D_u * 1.35, pt.D_v * 0.8);
        CHECK(pt.D_u == doctest::Approx(Du_o).epsilon(1e-8));
        CHECK(pt.D_v == doctest::Approx(Dv_o).epsilon(1e-8));
        SystemParams p{pt.D_u, pt.D_v, 1.0, 1.0};
        CHECK(std::abs(mode_matrix(d, p, 1).det_tilde) < 1e-10 * std::max(1.0, d.det()));
        CHECK(std::abs(mode_matrix(d, p, 2).det_tilde) < 1e-10 * std::max(1.0, d.det()));
    };
    check(builtin_model("schnakenberg", {{"A", 0.1}, {"B", 1.0}}));
    check(builtin_model("mimura_murray", {{"a", 35}, {"b", 16}, {"c", 9}, {"d", 0.4}}));
    check(builtin_model("artificial", {}));
}

TEST_CASE("degenerate point sits on a transversal crossing of the two curves") {
    // all four sign combinations of (det M~_1, det M~_2) appear in a neighborhood
    auto mm = builtin_model("mimura_murray", {{"a", 35}, {"b", 16}, {"c", 9}, {"d", 0.4}});
    auto d = derivatives_at(mm.pair, mm.equilibrium);
    auto pt = degenerate_point_12(d, M_PI);
    bool seen[2][2] = {{false, false}, {false, false}};
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j) {
            if (i == 0 || j == 0) continue;
            SystemParams p{pt.D_u * (1.0 + 0.02 * i), pt.D_v * (1.0 + 0.02 * j), 1.0, 1.0};
            const bool s1 = mode_matrix(d, p, 1).det_tilde > 0;
            const bool s2 = mode_matrix(d, p, 2).det_tilde > 0;
            seen[s1][s2] = true;
        }
    CHECK(seen[0][0]);
    CHECK(seen[0][1]);
    CHECK(seen[1][0]);
    CHECK(seen[1][1]);
}

TEST_CASE("htt_point verifies the full spectral pattern") {
    auto d = schnak_derivs();
    auto pt = htt_point(d, 1.0);
    CHECK(pt.params.alpha == doctest::Approx(900.0 / 1331).epsilon(1e-12));
    CHECK(pt.verification.at("tr_M0") < 1e-10);
    CHECK(pt.verification.at("det_M1") < 1e-10);
    CHECK(pt.verification.at("det_M2") < 1e-10);
    CHECK(pt.verification.at("det_M0") > 0.0);
    CHECK(pt.verification.at("tr_M1") < 0.0);
    CHECK(pt.verification.at("tr_M2") < 0.0);
    CHECK(pt.verification.at("spectral_gap") > 0.0);

    // direct eigenvalue scan oracle for modes 0..64
    for (int n = 0; n <= 64; ++n) {
        auto ev = eigenvalues(mode_matrix(d, pt.params, n).entries);
        const double worst = std::max(ev[0].real(), ev[1].real());
        if (n == 0 || n == 1 || n == 2)
            CHECK(std::abs(worst) < 1e-9);
        else
            CHECK(worst < -1e-6);
    }
}

TEST_CASE("htt_point is idempotent") {
    auto d = schnak_derivs();
    auto p1 = htt_point(d, 1.0);
    auto p2 = htt_point(d, 1.0);
    CHECK(p1.params.D_u == doctest::Approx(p2.params.D_u).epsilon(1e-12));
    CHECK(p1.params.D_v == doctest::Approx(p2.params.D_v).epsilon(1e-12));
    CHECK(p1.params.alpha == doctest::Approx(p2.params.alpha).epsilon(1e-12));
}

TEST_CASE("eigen quantities at and near the HTT point") {
    auto d = schnak_derivs();
    auto pt = htt_point(d, 1.0);
    auto eq = eigen_quantities(d, pt.params);
    CHECK(std::abs(eq.mu0) < 1e-12);
    CHECK(std::abs(eq.mu1_plus) < 1e-10);
    CHECK(std::abs(eq.mu2_plus) < 1e-10);
    CHECK(eq.mu1_minus == doctest::Approx(mode_matrix(d, pt.params, 1).trace).epsilon(1e-10));
    CHECK(eq.mu2_minus == doctest::Approx(mode_matrix(d, pt.params, 2).trace).epsilon(1e-10));
    CHECK(eq.omega0 > 0.0);

    // perturbing D_v breaks the mode-2 degeneracy but not the 0-mode Hopf
    SystemParams pp = pt.params;
    pp.D_v += 1e-3;
    CHECK(std::abs(mode_matrix(d, pp, 2).det_tilde) > 1e-6);
    CHECK(std::abs(mode_matrix(d, pp, 0).trace) < 1e-12);
}

TEST_CASE("eigen quantities match the quadratic-formula oracle at alpha 1") {
    auto d = schnak_derivs();
    const double tr = -431.0 / 1100, det = 121.0 / 100;
    const double re = tr / 2.0, im = 0.5 * std::sqrt(4.0 * det - tr * tr);
    SystemParams p{0.02, 0.2, 1.0, 1.0};
    auto m0 = mode_matrix(d, p, 0);
    auto ev = eigenvalues(m0.entries);
    CHECK(ev[0].real() == doctest::Approx(re).epsilon(1e-12));
    CHECK(std::abs(ev[0].imag()) == doctest::Approx(im).epsilon(1e-12));
}

TEST_CASE("Vieta identities hold on random admissible matrices") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> unif(0.01, 2.0);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto d = random_derivs(rng);
        SystemParams p{unif(rng) * 0.05, unif(rng), unif(rng), 1.0};
        EigenQuantities eq;
        try {
            eq = eigen_quantities(d, p);
        } catch (const NumericalError&) {
            continue;  // regime violation is a documented error path
        }
        ++checked;
        for (int j = 1; j <= 2; ++j) {
            auto m = mode_matrix(d, p, j);
            CHECK(eq.mu_plus(j) + eq.mu_minus(j) == doctest::Approx(m.trace).epsilon(1e-12));
            CHECK(eq.mu_plus(j) * eq.mu_minus(j) ==
                  doctest::Approx(m.determinant).epsilon(1e-10));
        }
        auto m0 = mode_matrix(d, p, 0);
        CHECK(2.0 * eq.mu0 == doctest::Approx(m0.trace).epsilon(1e-12));
        CHECK(eq.mu0 * eq.mu0 + eq.omega0 * eq.omega0 ==
              doctest::Approx(m0.determinant).epsilon(1e-10));
    }
    CHECK(checked > 100);
}

TEST_SUITE_END();
