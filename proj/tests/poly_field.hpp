#pragma once

// Test-only machinery: truncated polynomial vector fields on the variables
// (zeta, zeta_bar, x, y) and their push-forward under near-identity changes of
// coordinates. Used to validate the quadratic/cubic normal-form transforms
// against generic coefficient tables.

#include <array>
#include <map>

#include "httlab/linalg.hpp"

namespace nftest {

using httlab::Complex;
using Index = std::array<int, 4>;  // exponents of (zeta, zbar, x, y)

inline int degree(const Index& i) { return i[0] + i[1] + i[2] + i[3]; }

struct Poly {
    std::map<Index, Complex> c;

    static Poly var(int which) {
        Poly p;
        Index i{0, 0, 0, 0};
        i[which] = 1;
        p.c[i] = 1.0;
        return p;
    }
    static Poly constant(const Complex& z) {
        Poly p;
        if (z != 0.0) p.c[{0, 0, 0, 0}] = z;
        return p;
    }

    Complex at(const Index& i) const {
        auto it = c.find(i);
        return it == c.end() ? Complex(0, 0) : it->second;
    }

    Poly& add(const Index& i, const Complex& z) {
        if (z != 0.0) {
            auto& slot = c[i];
            slot += z;
            if (std::abs(slot) == 0.0) c.erase(i);
        }
        return *this;
    }

    Poly truncated(int maxdeg) const {
        Poly out;
        for (const auto& [i, z] : c)
            if (degree(i) <= maxdeg) out.c.emplace(i, z);
        return out;
    }

    // conjugation: conj coefficients and swap the (zeta, zbar) exponents;
    // x and y are real variables
    Poly conj_swap() const {
        Poly out;
        for (const auto& [i, z] : c) out.c[{i[1], i[0], i[2], i[3]}] = std::conj(z);
        return out;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly out = a;
        for (const auto& [i, z] : b.c) out.add(i, z);
        return out;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly out = a;
        for (const auto& [i, z] : b.c) out.add(i, -z);
        return out;
    }
    friend Poly operator*(const Complex& s, const Poly& a) {
        Poly out;
        for (const auto& [i, z] : a.c) out.add(i, s * z);
        return out;
    }
    // product truncated at degree maxdeg
    Poly mul(const Poly& b, int maxdeg) const {
        Poly out;
        for (const auto& [i, zi] : c)
            for (const auto& [j, zj] : b.c) {
                Index k{i[0] + j[0], i[1] + j[1], i[2] + j[2], i[3] + j[3]};
                if (degree(k) <= maxdeg) out.add(k, zi * zj);
            }
        return out;
    }
    Poly pow(int n, int maxdeg) const {
        Poly out = constant(1.0);
        for (int k = 0; k < n; ++k) out = out.mul(*this, maxdeg);
        return out;
    }
    Poly diff(int which) const {
        Poly out;
        for (const auto& [i, z] : c) {
            if (i[which] == 0) continue;
            Index j = i;
            j[which] -= 1;
            out.add(j, static_cast<double>(i[which]) * z);
        }
        return out;
    }
    // composition: substitute vars -> four polynomials, truncate
    Poly subst(const std::array<Poly, 4>& vars, int maxdeg) const {
        Poly out;
        for (const auto& [i, z] : c) {
            Poly term = constant(z);
            for (int w = 0; w < 4; ++w)
                if (i[w] > 0) term = term.mul(vars[w].pow(i[w], maxdeg), maxdeg);
            out = out + term;
        }
        return out;
    }
    double max_abs() const {
        double m = 0;
        for (const auto& [i, z] : c) m = std::max(m, std::abs(z));
        return m;
    }
    Complex eval(const std::array<Complex, 4>& w) const {
        Complex acc = 0;
        for (const auto& [i, z] : c) {
            Complex t = z;
            for (int v = 0; v < 4; ++v)
                for (int k = 0; k < i[v]; ++k) t *= w[v];
            acc += t;
        }
        return acc;
    }
};

// Four-component field; component order matches the variables.
struct PolyField {
    std::array<Poly, 4> f;

    // (D Phi)^{-1} (F o Phi) truncated at degree maxdeg, for Phi = id + phi with
    // phi at least quadratic
    PolyField pushforward(const std::array<Poly, 4>& phi, int maxdeg) const {
        std::array<Poly, 4> Phi;
        for (int i = 0; i < 4; ++i) Phi[i] = Poly::var(i) + phi[i];
        std::array<Poly, 4> Ftilde;
        for (int i = 0; i < 4; ++i) Ftilde[i] = f[i].subst(Phi, maxdeg);
        // solve (I + Dphi) G = Ftilde by grading iteration
        std::array<Poly, 4> G = Ftilde;
        for (int iter = 0; iter < maxdeg; ++iter) {
            std::array<Poly, 4> next;
            for (int i = 0; i < 4; ++i) {
                Poly corr;
                for (int j = 0; j < 4; ++j)
                    corr = corr + phi[i].diff(j).mul(G[j], maxdeg);
                next[i] = Ftilde[i] - corr;
            }
            G = next;
        }
        PolyField out;
        out.f = G;
        return out;
    }
};

}  // namespace nftest
