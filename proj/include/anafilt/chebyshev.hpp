#pragma once

// Chebyshev-I low-pass design. Poles come from the hyperbolic scaling of
// the Butterworth poles at omega_p: multiply real parts by tanh k
// (normalization), then the whole pole by cosh k (denormalization) —
// net effect re*sinh k + j*im*cosh k, which places the poles on the
// classical Chebyshev ellipse.

#include "anafilt/model.hpp"

namespace anafilt::cheby1 {

/// Hyperbolic factors for a given order and ripple.
/// Invariant: tanh_k * cosh_k == sinh_k (to rounding).
struct Transform {
    double epsilon;
    double k; // (1/n) * asinh(1/epsilon)
    double tanh_k;
    double cosh_k;
    double sinh_k;
};

/// Ripple parameter from the passband attenuation:
/// epsilon = sqrt(10^(Ap/10) - 1).
double ripple_epsilon(double ap_db);

/// Smallest order meeting the stopband corner:
/// ceil( acosh(Cn_required) / acosh(ws/wp) ), clamped to >= 1, where
/// Cn_required = sqrt(10^(As/10)-1)/epsilon. Same 1e-9 integer guard as
/// the Butterworth order.
int minimal_order(const FilterSpecification& spec);

Transform transform(int n, double epsilon);

/// Butterworth valid_poles(n, omega_p), real parts scaled by sinh k and
/// imaginary parts by cosh k. Strictly left-half-plane for finite inputs.
std::vector<Complex> chebyshev_poles(int n, double epsilon, double omega_p);

/// Full design: family ChebyshevI, char_freq = omega_p, epsilon recorded.
/// Verifies both corners by direct closed-form evaluation before
/// returning.
FilterRealization design(const FilterSpecification& spec);

} // namespace anafilt::cheby1
