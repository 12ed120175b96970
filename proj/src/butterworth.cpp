#include "anafilt/butterworth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace anafilt::butterworth {

namespace {

// Ceiling with a 1e-9 guard: real-valued orders a hair below an integer
// (floating-point dust from the log/ratio arithmetic) round down to it
// instead of inflating the design by a whole order.
int guarded_ceil(double x) {
    const double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-9) return static_cast<int>(nearest);
    return static_cast<int>(std::ceil(x));
}

double attenuation_db(int n, double omega_c, double omega) {
    return 10.0 * std::log10(1.0 + std::pow(omega / omega_c, 2.0 * n));
}

} // namespace

Geometry geometry(int n) {
    if (n < 1) throw std::invalid_argument("filter order must be >= 1");
    Geometry g;
    g.total_poles = 2 * n;
    g.theta_deg = 360.0 / (2.0 * n);
    g.first_pole_offset_deg = (n % 2 == 0) ? g.theta_deg / 2.0 : 0.0;
    for (int k = 0; k < g.total_poles; ++k) {
        const double angle = g.first_pole_offset_deg + k * g.theta_deg;
        if (angle > 90.0 && angle < 270.0) g.valid_angles_deg.push_back(angle);
    }
    return g;
}

int minimal_order(const FilterSpecification& spec) {
    const double num = std::pow(10.0, spec.as_db / 10.0) - 1.0;
    const double den = std::pow(10.0, spec.ap_db / 10.0) - 1.0;
    const double n_real =
        std::log10(num / den) / (2.0 * std::log10(spec.omega_s / spec.omega_p));
    return std::max(1, guarded_ceil(n_real));
}

double cutoff_frequency(const FilterSpecification& spec, int n,
                        CornerRule rule) {
    if (n < 1) throw std::invalid_argument("filter order must be >= 1");
    if (rule == CornerRule::Passband) {
        const double eps2 = std::pow(10.0, spec.ap_db / 10.0) - 1.0;
        return spec.omega_p / std::pow(eps2, 1.0 / (2.0 * n));
    }
    const double delta2 = std::pow(10.0, spec.as_db / 10.0) - 1.0;
    return spec.omega_s / std::pow(delta2, 1.0 / (2.0 * n));
}

std::vector<Complex> valid_poles(int n, double omega_c) {
    if (!(omega_c > 0.0)) throw std::invalid_argument("cutoff must be positive");
    const Geometry g = geometry(n);
    const std::size_t count = g.valid_angles_deg.size();
    std::vector<Complex> poles(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double angle_deg = g.valid_angles_deg[i];
        if (angle_deg == 180.0) {
            poles[i] = Complex(-omega_c, 0.0);
        } else if (angle_deg < 180.0) {
            const double a = angle_deg * std::numbers::pi / 180.0;
            poles[i] = Complex(omega_c * std::cos(a), omega_c * std::sin(a));
        } else {
            // The ascending fan is symmetric about 180 deg, so the partner
            // of angle i sits at index count-1-i and is already filled.
            // Conjugating it keeps the pair closed to the last bit even when
            // the angle value itself is not exactly representable.
            poles[i] = std::conj(poles[count - 1 - i]);
        }
    }
    return poles;
}

FilterRealization design(const FilterSpecification& spec, CornerRule rule) {
    const int n = minimal_order(spec);
    const double wc = cutoff_frequency(spec, n, rule);

    // Direct corner verification; the intermediate real-valued order is
    // not trusted as ground truth.
    if (attenuation_db(n, wc, spec.omega_p) > spec.ap_db + 1e-6 ||
        attenuation_db(n, wc, spec.omega_s) < spec.as_db - 1e-6) {
        throw std::logic_error("designed order fails an attenuation corner");
    }

    return FilterRealization{Family::Butterworth, n, wc, valid_poles(n, wc),
                             std::nullopt};
}

} // namespace anafilt::butterworth
