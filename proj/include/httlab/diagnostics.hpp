#pragma once

#include <complex>
#include <string>
#include <vector>

namespace httlab {

struct PeriodEstimate {
    bool periodic = false;
    double period = 0;
    double spread = 0;  // relative spread of successive return intervals
    int n_intervals = 0;
    std::string reason;  // set when not periodic
};

// Period of a uniformly sampled scalar series by mean-subtracted up-crossings,
// crossing times refined by local quadratic interpolation.
PeriodEstimate estimate_period(const std::vector<double>& t, const std::vector<double>& x,
                               double max_spread = 0.05);

struct SpectralPeak {
    double freq = 0;
    double power = 0;  // relative to the strongest peak
};

// Hann-windowed power spectrum peaks, strongest first; frequencies refined by
// parabolic interpolation on log power.
std::vector<SpectralPeak> spectral_peaks(const std::vector<double>& x, double dt,
                                         std::size_t max_peaks = 16,
                                         double min_rel_power = 1e-8);

// True when a significant peak sits away from every integer multiple (or
// divisor) of the dominant frequency: the two-frequency torus signature.
struct IncommensurateResult {
    bool found = false;
    double f1 = 0, f2 = 0;     // the offending pair, f1 dominant
    double ratio = 0;          // max/min
    double integer_distance = 0;
};
IncommensurateResult incommensurate_pair(const std::vector<SpectralPeak>& peaks,
                                         double min_rel_power = 1e-3,
                                         double min_integer_distance = 0.1);

// Largest Lyapunov exponent from a scalar series by delay embedding and mean
// neighbor-divergence growth (Rosenstein's method). Diagnostic quality only.
double series_lyapunov(const std::vector<double>& x, double dt, int embed_dim = 5,
                       int delay = 10, double fit_time = 10.0);

// In-place radix-2 FFT (size must be a power of two).
void fft_radix2(std::vector<std::complex<double>>& a);

}  // namespace httlab
