#pragma once

// Butterworth low-pass design from an attenuation spec: minimal order,
// corner-exact cutoff frequency, and valid (left-half-plane) pole
// placement on the circle |s| = wc.

#include "anafilt/model.hpp"

namespace anafilt::butterworth {

/// Which attenuation corner the cutoff meets with equality. Passband is
/// the default; the stopband-exact alternative leaves margin at the
/// passband edge instead.
enum class CornerRule { Passband, Stopband };

/// Full-circle pole geometry for order n. Angles are degrees, measured
/// from the positive x-axis; valid_angles_deg holds the n angles strictly
/// between 90 and 270 (ascending), symmetric about 180.
struct Geometry {
    int total_poles;             // 2n
    double theta_deg;            // 360 / (2n)
    double first_pole_offset_deg; // theta/2 if n even, 0 if n odd
    std::vector<double> valid_angles_deg;
};

Geometry geometry(int n);

/// Smallest integer order whose magnitude response can satisfy both
/// corners: ceil of log10[(10^(As/10)-1)/(10^(Ap/10)-1)] / (2*log10(ws/wp)),
/// clamped to >= 1. Real values within 1e-9 below an integer are treated
/// as that integer before the ceiling.
int minimal_order(const FilterSpecification& spec);

/// Cutoff that meets the selected corner with equality:
///   passband: wc = wp / (10^(Ap/10) - 1)^(1/(2n))
///   stopband: wc = ws / (10^(As/10) - 1)^(1/(2n))
double cutoff_frequency(const FilterSpecification& spec, int n,
                        CornerRule rule = CornerRule::Passband);

/// The n stable poles wc*(cos a + j sin a) for each valid angle a. Exact
/// conjugate closure and an exact real pole at -wc for odd n.
std::vector<Complex> valid_poles(int n, double omega_c);

/// minimal_order -> cutoff_frequency -> valid_poles. Verifies both
/// attenuation corners by direct closed-form evaluation before returning.
FilterRealization design(const FilterSpecification& spec,
                         CornerRule rule = CornerRule::Passband);

} // namespace anafilt::butterworth
