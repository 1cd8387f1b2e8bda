#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace httlab {

using Complex = std::complex<double>;

// 2x2 real matrix with value semantics. Row-major.
struct Mat2 {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }

    Mat2 inverse() const {
        const double d = det();
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }

    std::array<double, 2> apply(double x, double y) const {
        return {a11 * x + a12 * y, a21 * x + a22 * y};
    }
    std::array<Complex, 2> apply(const Complex& x, const Complex& y) const {
        return {a11 * x + a12 * y, a21 * x + a22 * y};
    }

    friend Mat2 operator*(const Mat2& l, const Mat2& r) {
        return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
                l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
    }
};

// Eigenvalues of a 2x2 real matrix via the characteristic polynomial.
inline std::array<Complex, 2> eigenvalues(const Mat2& m) {
    const double tr = m.trace(), de = m.det();
    const Complex disc = std::sqrt(Complex(tr * tr - 4.0 * de, 0.0));
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

// Roots of x^3 + a x^2 + b x + c = 0 (real coefficients).
inline std::array<Complex, 3> cubic_roots(double a, double b, double c) {
    // depressed cubic t^3 + p t + q with x = t - a/3
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const Complex u = std::pow(
        -q / 2.0 + std::sqrt(Complex(q * q / 4.0 + p * p * p / 27.0, 0.0)), 1.0 / 3.0);
    std::array<Complex, 3> roots;
    const Complex w(-0.5, std::sqrt(3.0) / 2.0);
    Complex uk = u;
    for (int k = 0; k < 3; ++k) {
        const Complex t = (std::abs(uk) > 1e-300) ? uk - p / (3.0 * uk) : Complex(0, 0);
        roots[k] = t - a / 3.0;
        uk *= w;
    }
    // one Newton polish per root; the trigonometric branch issues wash out here
    for (auto& x : roots) {
        for (int it = 0; it < 2; ++it) {
            const Complex f = ((x + a) * x + b) * x + c;
            const Complex df = (3.0 * x + 2.0 * a) * x + b;
            if (std::abs(df) > 1e-300) x -= f / df;
        }
    }
    return roots;
}

// Eigenvalues of a 3x3 real matrix via its characteristic polynomial.
inline std::array<Complex, 3> eigenvalues3(const std::array<std::array<double, 3>, 3>& m) {
    const double tr = m[0][0] + m[1][1] + m[2][2];
    const double c2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] -
                      m[0][2] * m[2][0] + m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    // det(m - x I) = -x^3 + tr x^2 - c2 x + det  =>  x^3 - tr x^2 + c2 x - det = 0
    return cubic_roots(-tr, c2, -det);
}

inline bool almost_equal(double x, double y, double rtol, double atol = 0.0) {
    return std::abs(x - y) <= atol + rtol * std::max(std::abs(x), std::abs(y));
}

}  // namespace httlab
