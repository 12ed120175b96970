#pragma once

// Frequency-response sampling, closed-form magnitude oracles for both
// families, square-wave transient simulation, and side-by-side design
// comparison.
//
// sample_response evaluates grid points in parallel (OpenMP) when the
// library is built with it; sample_response_serial is the plain-loop
// reference kept for testing and benchmarking. Both produce identical
// output for identical inputs — the per-point arithmetic is the same.

#include "anafilt/model.hpp"

#include <optional>

namespace anafilt::response {

enum class Spacing { Log, Linear };

/// Strictly increasing sample frequencies, rad/s. Log grids require all
/// points > 0; linear grids allow omega = 0.
struct FrequencyGrid {
    std::vector<double> points;
    Spacing spacing = Spacing::Log;
};

FrequencyGrid log_grid(double lo, double hi, int points);
FrequencyGrid linear_grid(double lo, double hi, int points);

/// Sampled magnitude (dB) and unwrapped phase (degrees) over a grid.
struct FrequencyResponse {
    FrequencyGrid grid;
    std::vector<double> magnitude_db;
    std::vector<double> phase_deg;
};

FrequencyResponse sample_response(const TransferFunction& tf,
                                  const FrequencyGrid& grid);
FrequencyResponse sample_response_serial(const TransferFunction& tf,
                                         const FrequencyGrid& grid);

/// Butterworth magnitude, linear scale: (1 + (w/wc)^(2n))^(-1/2).
double closed_form_butterworth(int n, double omega_c, double omega);

/// Chebyshev polynomial C_n: cos(n*acos x) for |x| <= 1,
/// cosh(n*acosh x) for x > 1 (and parity-reflected for x < -1).
double chebyshev_polynomial(int n, double x);

/// Chebyshev-I magnitude, linear scale: (1 + eps^2 * C_n^2(w/wp))^(-1/2).
double closed_form_chebyshev(int n, double epsilon, double omega_p,
                             double omega);

/// Time-domain samples of a driven cascade. samples_in and samples_out
/// have equal length; state_dim is the total cascade order.
struct TransientTrace {
    double dt;
    std::vector<double> samples_in;
    std::vector<double> samples_out;
    int state_dim;
};

/// Drives the cascade with a +/-amplitude, 50%-duty square wave that
/// starts high at t = 0 (f_in_hz == 0 means a constant +amplitude input).
/// Each stage runs as a controllable-canonical state-space block, chained
/// output-to-input, integrated with classic fixed-step 4th-order
/// Runge-Kutta from zero initial state.
///
/// Resolution guards (ResolutionError if violated):
///   dt <= 1/(50*f_in), dt <= 0.02/max_pole_magnitude,
///   duration >= 20/f_in.
TransientTrace simulate_square_wave(const TransferFunction& tf,
                                    double f_in_hz, double amplitude,
                                    double duration_s, double dt_s);

/// Per-point difference and roll-off summary for two responses sampled on
/// the identical grid. Slopes are measured between band_lo and band_hi
/// (dB per octave, interpolated in log-frequency). crossover is the
/// highest frequency at which the two magnitude curves intersect, if any.
struct Comparison {
    std::vector<double> diff_db; // a - b per point
    double band_lo;
    double band_hi;
    double slope_a_db_per_octave;
    double slope_b_db_per_octave;
    std::optional<double> crossover;
};

Comparison compare(const FrequencyResponse& a, const FrequencyResponse& b,
                   double band_lo, double band_hi);

/// dB magnitude at an arbitrary frequency, linearly interpolated in
/// log-frequency between grid points.
double interpolate_db(const FrequencyResponse& resp, double omega);

} // namespace anafilt::response
