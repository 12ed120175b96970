#include "anafilt/response.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace anafilt::response {

namespace {

void sample_point(const TransferFunction& tf, double omega, double& mag_db,
                  double& phase_raw_deg) {
    const Complex h = evaluate(tf, omega);
    mag_db = 20.0 * std::log10(std::abs(h));
    phase_raw_deg = std::arg(h) * 180.0 / std::numbers::pi;
}

// Sequential by construction: each correction depends on the previous
// point's already-corrected value.
void unwrap_degrees(std::vector<double>& phase) {
    for (std::size_t i = 1; i < phase.size(); ++i) {
        while (phase[i] - phase[i - 1] > 180.0) phase[i] -= 360.0;
        while (phase[i - 1] - phase[i] > 180.0) phase[i] += 360.0;
    }
}

double chain_output(const std::vector<CascadeStage>& stages,
                    const std::vector<double>& x) {
    std::size_t i = 0;
    double y = 0.0;
    for (const CascadeStage& stage : stages) {
        if (const auto* fo = std::get_if<FirstOrder>(&stage)) {
            y = fo->w0 * x[i];
            i += 1;
        } else {
            const auto& so = std::get<SecondOrder>(stage);
            y = so.b * x[i];
            i += 2;
        }
    }
    return y;
}

// Chained controllable-canonical blocks. Every stage is strictly proper,
// so each stage's output depends only on its own state and the chain has
// no algebraic loop.
void chain_derivative(const std::vector<CascadeStage>& stages,
                      const std::vector<double>& x, double u,
                      std::vector<double>& dx) {
    std::size_t i = 0;
    double drive = u;
    for (const CascadeStage& stage : stages) {
        if (const auto* fo = std::get_if<FirstOrder>(&stage)) {
            dx[i] = -fo->w0 * x[i] + drive;
            drive = fo->w0 * x[i];
            i += 1;
        } else {
            const auto& so = std::get<SecondOrder>(stage);
            dx[i] = x[i + 1];
            dx[i + 1] = -so.b * x[i] - so.a * x[i + 1] + drive;
            drive = so.b * x[i];
            i += 2;
        }
    }
}

} // namespace

FrequencyGrid log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("log grid requires 0 < lo < hi");
    if (points < 2) throw std::invalid_argument("grid requires >= 2 points");
    FrequencyGrid grid;
    grid.spacing = Spacing::Log;
    grid.points.resize(static_cast<std::size_t>(points));
    const double llo = std::log10(lo);
    const double lhi = std::log10(hi);
    for (int i = 0; i < points; ++i)
        grid.points[static_cast<std::size_t>(i)] =
            std::pow(10.0, llo + (lhi - llo) * i / (points - 1));
    grid.points.front() = lo; // endpoints exact, not rounded through pow
    grid.points.back() = hi;
    return grid;
}

FrequencyGrid linear_grid(double lo, double hi, int points) {
    if (!(lo >= 0.0) || !(hi > lo))
        throw std::invalid_argument("linear grid requires 0 <= lo < hi");
    if (points < 2) throw std::invalid_argument("grid requires >= 2 points");
    FrequencyGrid grid;
    grid.spacing = Spacing::Linear;
    grid.points.resize(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid.points[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * i / (points - 1);
    grid.points.front() = lo;
    grid.points.back() = hi;
    return grid;
}

FrequencyResponse sample_response(const TransferFunction& tf,
                                  const FrequencyGrid& grid) {
    FrequencyResponse resp;
    resp.grid = grid;
    const auto n = static_cast<std::ptrdiff_t>(grid.points.size());
    resp.magnitude_db.resize(grid.points.size());
    resp.phase_deg.resize(grid.points.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        sample_point(tf, grid.points[static_cast<std::size_t>(i)],
                     resp.magnitude_db[static_cast<std::size_t>(i)],
                     resp.phase_deg[static_cast<std::size_t>(i)]);
    unwrap_degrees(resp.phase_deg);
    return resp;
}

FrequencyResponse sample_response_serial(const TransferFunction& tf,
                                         const FrequencyGrid& grid) {
    FrequencyResponse resp;
    resp.grid = grid;
    const std::size_t n = grid.points.size();
    resp.magnitude_db.resize(n);
    resp.phase_deg.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        sample_point(tf, grid.points[i], resp.magnitude_db[i],
                     resp.phase_deg[i]);
    unwrap_degrees(resp.phase_deg);
    return resp;
}

double closed_form_butterworth(int n, double omega_c, double omega) {
    if (n < 1) throw std::invalid_argument("filter order must be >= 1");
    if (!(omega_c > 0.0))
        throw std::invalid_argument("cutoff must be positive");
    return 1.0 / std::sqrt(1.0 + std::pow(omega / omega_c, 2.0 * n));
}

double chebyshev_polynomial(int n, double x) {
    if (n < 0) throw std::invalid_argument("polynomial degree must be >= 0");
    const double ax = std::abs(x);
    double cn;
    if (ax <= 1.0) {
        cn = std::cos(n * std::acos(x));
    } else {
        cn = std::cosh(n * std::acosh(ax));
        if (x < 0.0 && n % 2 == 1) cn = -cn; // C_n(-x) = (-1)^n C_n(x)
    }
    return cn;
}

double closed_form_chebyshev(int n, double epsilon, double omega_p,
                             double omega) {
    if (n < 1) throw std::invalid_argument("filter order must be >= 1");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("epsilon must be positive");
    if (!(omega_p > 0.0))
        throw std::invalid_argument("passband edge must be positive");
    const double cn = chebyshev_polynomial(n, omega / omega_p);
    return 1.0 / std::sqrt(1.0 + epsilon * epsilon * cn * cn);
}

TransientTrace simulate_square_wave(const TransferFunction& tf,
                                    double f_in_hz, double amplitude,
                                    double duration_s, double dt_s) {
    if (tf.stages.empty())
        throw EmptyCascade("cannot simulate an empty cascade");
    if (!(dt_s > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(duration_s > 0.0))
        throw std::invalid_argument("duration must be positive");
    if (f_in_hz < 0.0)
        throw std::invalid_argument("input frequency must be >= 0");

    double max_pole = 0.0;
    for (const CascadeStage& stage : tf.stages) {
        const double mag = std::holds_alternative<FirstOrder>(stage)
                               ? std::get<FirstOrder>(stage).w0
                               : std::sqrt(std::get<SecondOrder>(stage).b);
        max_pole = std::max(max_pole, mag);
    }

    if (f_in_hz > 0.0) {
        if (dt_s * 50.0 * f_in_hz > 1.0 + 1e-9)
            throw ResolutionError("dt too coarse: need dt <= 1/(50*f_in)");
        if (duration_s * f_in_hz < 20.0 - 1e-9)
            throw ResolutionError(
                "duration too short: need >= 20 input periods");
    }
    if (dt_s * max_pole > 0.02 + 1e-9)
        throw ResolutionError(
            "dt too coarse for fastest pole: need dt <= 0.02/max|pole|");

    const double period = f_in_hz > 0.0 ? 1.0 / f_in_hz : 0.0;
    const auto square = [&](double t) {
        if (f_in_hz <= 0.0) return amplitude;
        const double phase = std::fmod(t, period);
        return phase < 0.5 * period ? amplitude : -amplitude;
    };

    const double raw_steps = duration_s / dt_s;
    auto steps = static_cast<long long>(std::llround(raw_steps));
    if (steps < 1 ||
        std::abs(raw_steps - static_cast<double>(steps)) > 1e-9 * raw_steps)
        steps = static_cast<long long>(std::ceil(raw_steps));

    const int dim = total_order(tf);
    std::vector<double> x(static_cast<std::size_t>(dim), 0.0);
    std::vector<double> xt(x.size()), k1(x.size()), k2(x.size()),
        k3(x.size()), k4(x.size());

    TransientTrace trace;
    trace.dt = dt_s;
    trace.state_dim = dim;
    trace.samples_in.reserve(static_cast<std::size_t>(steps) + 1);
    trace.samples_out.reserve(static_cast<std::size_t>(steps) + 1);

    const auto record = [&](double t) {
        trace.samples_in.push_back(square(t));
        trace.samples_out.push_back(tf.gain * chain_output(tf.stages, x));
    };

    record(0.0);
    for (long long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt_s;
        const double u1 = square(t);
        const double u2 = square(t + 0.5 * dt_s); // shared by k2 and k3
        const double u4 = square(t + dt_s);

        chain_derivative(tf.stages, x, u1, k1);
        for (std::size_t i = 0; i < x.size(); ++i)
            xt[i] = x[i] + 0.5 * dt_s * k1[i];
        chain_derivative(tf.stages, xt, u2, k2);
        for (std::size_t i = 0; i < x.size(); ++i)
            xt[i] = x[i] + 0.5 * dt_s * k2[i];
        chain_derivative(tf.stages, xt, u2, k3);
        for (std::size_t i = 0; i < x.size(); ++i)
            xt[i] = x[i] + dt_s * k3[i];
        chain_derivative(tf.stages, xt, u4, k4);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += dt_s / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        record(static_cast<double>(k + 1) * dt_s);
    }
    return trace;
}

double interpolate_db(const FrequencyResponse& resp, double omega) {
    const auto& w = resp.grid.points;
    if (w.size() < 2)
        throw GridMismatch("interpolation requires >= 2 grid points");
    const double slack = 1e-12;
    if (omega < w.front() * (1.0 - slack) || omega > w.back() * (1.0 + slack))
        throw std::out_of_range("frequency outside the sampled grid");
    omega = std::clamp(omega, w.front(), w.back());

    const auto it = std::lower_bound(w.begin(), w.end(), omega);
    const auto hi = static_cast<std::size_t>(
        std::max<std::ptrdiff_t>(1, it - w.begin()));
    const std::size_t lo = hi - 1;
    if (w[hi] == omega) return resp.magnitude_db[hi];
    if (w[lo] == omega) return resp.magnitude_db[lo];

    double t;
    if (w[lo] > 0.0) // log-frequency interpolation whenever well defined
        t = (std::log(omega) - std::log(w[lo])) /
            (std::log(w[hi]) - std::log(w[lo]));
    else
        t = (omega - w[lo]) / (w[hi] - w[lo]);
    return resp.magnitude_db[lo] +
           t * (resp.magnitude_db[hi] - resp.magnitude_db[lo]);
}

Comparison compare(const FrequencyResponse& a, const FrequencyResponse& b,
                   double band_lo, double band_hi) {
    const auto& wa = a.grid.points;
    const auto& wb = b.grid.points;
    if (wa.size() != wb.size())
        throw GridMismatch("responses sampled on different grid sizes");
    for (std::size_t i = 0; i < wa.size(); ++i)
        if (std::abs(wa[i] - wb[i]) >
            1e-12 * std::max(std::abs(wa[i]), std::abs(wb[i])))
            throw GridMismatch("responses sampled on different grids");
    if (!(band_lo > 0.0) || !(band_hi > band_lo))
        throw std::invalid_argument("slope band requires 0 < lo < hi");

    Comparison cmp;
    cmp.band_lo = band_lo;
    cmp.band_hi = band_hi;
    cmp.diff_db.resize(wa.size());
    for (std::size_t i = 0; i < wa.size(); ++i)
        cmp.diff_db[i] = a.magnitude_db[i] - b.magnitude_db[i];

    const double octaves = std::log2(band_hi / band_lo);
    cmp.slope_a_db_per_octave =
        (interpolate_db(a, band_hi) - interpolate_db(a, band_lo)) / octaves;
    cmp.slope_b_db_per_octave =
        (interpolate_db(b, band_hi) - interpolate_db(b, band_lo)) / octaves;

    // Highest-frequency intersection: scan adjacent pairs from the top.
    for (std::size_t i = wa.size(); i-- > 1;) {
        const double d1 = cmp.diff_db[i];
        const double d0 = cmp.diff_db[i - 1];
        if (d1 == 0.0) {
            cmp.crossover = wa[i];
            break;
        }
        if (d0 == 0.0) {
            cmp.crossover = wa[i - 1];
            break;
        }
        if ((d0 < 0.0) != (d1 < 0.0)) {
            const double t = d0 / (d0 - d1);
            cmp.crossover = std::exp(std::log(wa[i - 1]) +
                                     t * (std::log(wa[i]) -
                                          std::log(wa[i - 1])));
            break;
        }
    }
    return cmp;
}

} // namespace anafilt::response
