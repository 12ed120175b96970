#include "anafilt/chebyshev.hpp"

#include "anafilt/butterworth.hpp"
#include "anafilt/response.hpp"

#include <cmath>
#include <stdexcept>

namespace anafilt::cheby1 {

namespace {

int guarded_ceil(double x) {
    const double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-9) return static_cast<int>(nearest);
    return static_cast<int>(std::ceil(x));
}

double attenuation_db(int n, double epsilon, double omega_p, double omega) {
    const double cn = response::chebyshev_polynomial(n, omega / omega_p);
    return 10.0 * std::log10(1.0 + epsilon * epsilon * cn * cn);
}

} // namespace

double ripple_epsilon(double ap_db) {
    if (!(ap_db > 0.0)) throw std::invalid_argument("ripple must be positive dB");
    return std::sqrt(std::pow(10.0, ap_db / 10.0) - 1.0);
}

int minimal_order(const FilterSpecification& spec) {
    const double epsilon = ripple_epsilon(spec.ap_db);
    const double cn_required =
        std::sqrt(std::pow(10.0, spec.as_db / 10.0) - 1.0) / epsilon;
    if (cn_required <= 1.0) return 1;
    const double n_real =
        std::acosh(cn_required) / std::acosh(spec.omega_s / spec.omega_p);
    return std::max(1, guarded_ceil(n_real));
}

Transform transform(int n, double epsilon) {
    if (n < 1) throw std::invalid_argument("filter order must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    Transform t;
    t.epsilon = epsilon;
    t.k = std::asinh(1.0 / epsilon) / n;
    t.tanh_k = std::tanh(t.k);
    t.cosh_k = std::cosh(t.k);
    t.sinh_k = std::sinh(t.k);
    return t;
}

std::vector<Complex> chebyshev_poles(int n, double epsilon, double omega_p) {
    const Transform t = transform(n, epsilon);
    std::vector<Complex> poles = butterworth::valid_poles(n, omega_p);
    for (Complex& p : poles) {
        // Two-step scaling: real part by tanh k, whole pole by cosh k.
        // Net effect re*sinh k + j*im*cosh k.
        p = Complex(p.real() * t.tanh_k * t.cosh_k, p.imag() * t.cosh_k);
    }
    return poles;
}

FilterRealization design(const FilterSpecification& spec) {
    const double epsilon = ripple_epsilon(spec.ap_db);
    const int n = minimal_order(spec);

    if (attenuation_db(n, epsilon, spec.omega_p, spec.omega_p) >
            spec.ap_db + 1e-6 ||
        attenuation_db(n, epsilon, spec.omega_p, spec.omega_s) <
            spec.as_db - 1e-6) {
        throw std::logic_error("designed order fails an attenuation corner");
    }

    return FilterRealization{Family::ChebyshevI, n, spec.omega_p,
                             chebyshev_poles(n, epsilon, spec.omega_p),
                             epsilon};
}

} // namespace anafilt::cheby1
