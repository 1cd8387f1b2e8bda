#include "httlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "httlab/errors.hpp"

namespace httlab {

PeriodEstimate estimate_period(const std::vector<double>& t, const std::vector<double>& x,
                               double max_spread) {
    PeriodEstimate est;
    if (t.size() != x.size() || t.size() < 8) {
        est.reason = "series too short";
        return est;
    }
    const std::size_t n = x.size();
    double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    double amp = 0;
    for (double v : x) amp = std::max(amp, std::abs(v - mean));
    if (amp < 1e-13 * std::max(1.0, std::abs(mean))) {
        est.reason = "series is constant";
        return est;
    }

    std::vector<double> crossings;
    for (std::size_t i = 1; i < n; ++i) {
        const double a = x[i - 1] - mean, b = x[i] - mean;
        if (a < 0.0 && b >= 0.0) {
            double tc = t[i - 1] + (t[i] - t[i - 1]) * (-a) / (b - a);
            // quadratic refinement through the three samples around the crossing
            if (i + 1 < n) {
                const double y0 = a, y1 = b, y2 = x[i + 1] - mean;
                const double h = t[i] - t[i - 1];
                const double c2 = (y2 - 2.0 * y1 + y0) / 2.0;
                const double c1 = (y2 - y0) / 2.0;
                // parabola about t[i]: y(s) = y1 + c1 s + c2 s^2, s in units of h
                const double disc = c1 * c1 - 4.0 * c2 * y1;
                if (std::abs(c2) > 1e-14 * std::abs(c1) && disc >= 0.0) {
                    const double s = (-c1 + std::sqrt(disc)) / (2.0 * c2);
                    if (std::abs(s) <= 1.0) tc = t[i] + s * h;
                } else if (std::abs(c1) > 0.0) {
                    const double s = -y1 / c1;
                    if (std::abs(s) <= 1.0) tc = t[i] + s * h;
                }
            }
            crossings.push_back(tc);
        }
    }
    if (crossings.size() < 3) {
        est.reason = "no repeated up-crossings";
        return est;
    }
    std::vector<double> intervals;
    for (std::size_t i = 1; i < crossings.size(); ++i)
        intervals.push_back(crossings[i] - crossings[i - 1]);
    double imean = 0;
    for (double v : intervals) imean += v;
    imean /= static_cast<double>(intervals.size());
    const double imin = *std::min_element(intervals.begin(), intervals.end());
    const double imax = *std::max_element(intervals.begin(), intervals.end());
    est.period = imean;
    est.spread = (imax - imin) / imean;
    est.n_intervals = static_cast<int>(intervals.size());
    est.periodic = est.spread <= max_spread;
    if (!est.periodic) est.reason = "interval spread above tolerance";
    return est;
}

void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw ConfigError("fft_radix2: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j], v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<SpectralPeak> spectral_peaks(const std::vector<double>& x, double dt,
                                         std::size_t max_peaks, double min_rel_power) {
    if (x.size() < 16) return {};
    std::size_t n = 1;
    while (n * 2 <= x.size()) n *= 2;

    double mean = 0;
    for (std::size_t i = x.size() - n; i < x.size(); ++i) mean += x[i];
    mean /= static_cast<double>(n);

    std::vector<std::complex<double>> a(n);
    const std::size_t off = x.size() - n;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / (n - 1.0));
        a[i] = (x[off + i] - mean) * w;
    }
    fft_radix2(a);

    const std::size_t nf = n / 2;
    std::vector<double> pw(nf);
    for (std::size_t i = 0; i < nf; ++i) pw[i] = std::norm(a[i]);

    std::vector<SpectralPeak> peaks;
    for (std::size_t k = 2; k + 1 < nf; ++k) {
        if (pw[k] > pw[k - 1] && pw[k] >= pw[k + 1] && pw[k] > 0.0) {
            // parabolic refinement on log power
            double fk = static_cast<double>(k);
            if (pw[k - 1] > 0 && pw[k + 1] > 0) {
                const double l0 = std::log(pw[k - 1]), l1 = std::log(pw[k]),
                             l2 = std::log(pw[k + 1]);
                const double den = l0 - 2.0 * l1 + l2;
                if (den < 0) fk += 0.5 * (l0 - l2) / den;
            }
            peaks.push_back({fk / (static_cast<double>(n) * dt), pw[k]});
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const SpectralPeak& l, const SpectralPeak& r) { return l.power > r.power; });
    if (peaks.empty()) return peaks;
    const double top = peaks.front().power;
    std::vector<SpectralPeak> out;
    for (const auto& p : peaks) {
        if (p.power < min_rel_power * top || out.size() >= max_peaks) break;
        out.push_back({p.freq, p.power / top});
    }
    return out;
}

IncommensurateResult incommensurate_pair(const std::vector<SpectralPeak>& peaks,
                                         double min_rel_power, double min_integer_distance) {
    IncommensurateResult res;
    if (peaks.size() < 2) return res;
    const double f1 = peaks.front().freq;
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        if (peaks[i].power < min_rel_power) continue;
        const double f2 = peaks[i].freq;
        const double ratio = std::max(f1, f2) / std::min(f1, f2);
        const double dist = std::abs(ratio - std::round(ratio));
        if (dist > min_integer_distance) {
            res.found = true;
            res.f1 = f1;
            res.f2 = f2;
            res.ratio = ratio;
            res.integer_distance = dist;
            return res;
        }
    }
    return res;
}

double series_lyapunov(const std::vector<double>& x, double dt, int embed_dim, int delay,
                       double fit_time) {
    const int n = static_cast<int>(x.size());
    const int span = (embed_dim - 1) * delay;
    const int m = n - span;
    if (m < 400) throw ConfigError("series_lyapunov: series too short for embedding");
    auto point = [&](int i, int d) { return x[i + d * delay]; };
    auto dist2 = [&](int i, int j) {
        double s = 0;
        for (int d = 0; d < embed_dim; ++d) {
            const double e = point(i, d) - point(j, d);
            s += e * e;
        }
        return s;
    };
    const int theiler = span + 1;
    const int k_follow = std::max(2, static_cast<int>(fit_time / dt));
    const int limit = m - k_follow;
    if (limit < 200) throw ConfigError("series_lyapunov: series too short for follow window");

    std::vector<double> mean_log(k_follow, 0.0);
    std::vector<int> counts(k_follow, 0);
    const int stride = std::max(1, limit / 500);  // subsample reference points
    for (int i = 0; i < limit; i += stride) {
        int best = -1;
        double bd = 1e300;
        for (int j = 0; j < limit; ++j) {
            if (std::abs(i - j) <= theiler) continue;
            const double d2 = dist2(i, j);
            if (d2 < bd && d2 > 0) {
                bd = d2;
                best = j;
            }
        }
        if (best < 0) continue;
        for (int k = 1; k < k_follow; ++k) {
            const double d2 = dist2(i + k, best + k);
            if (d2 > 0) {
                mean_log[k] += 0.5 * std::log(d2);
                counts[k] += 1;
            }
        }
    }
    // least-squares slope of <log distance>(k) over the follow window
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int np = 0;
    for (int k = 1; k < k_follow; ++k) {
        if (counts[k] == 0) continue;
        const double tx = k * dt, ty = mean_log[k] / counts[k];
        sx += tx; sy += ty; sxx += tx * tx; sxy += tx * ty;
        ++np;
    }
    if (np < 3) throw NumericalError("series_lyapunov: not enough divergence data");
    return (np * sxy - sx * sy) / (np * sxx - sx * sx);
}

}  // namespace httlab
