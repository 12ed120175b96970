#pragma once

// Core domain types for analog low-pass filter design: attenuation
// specifications, s-plane pole sets, and factored transfer-function
// cascades. Everything here is an immutable value; all functions are
// pure and safe to call from any thread.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace anafilt {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class SpecErrorCode {
    NonPositiveFrequency,
    EdgesOutOfOrder,       // omega_s <= omega_p
    AttenuationsOutOfOrder // As <= Ap, or Ap <= 0
};

class SpecError : public std::runtime_error {
public:
    SpecError(SpecErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    SpecErrorCode code() const noexcept { return code_; }

private:
    SpecErrorCode code_;
};

class PairingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyCascade : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Specification
// ---------------------------------------------------------------------------

/// Four-corner attenuation spec. Attenuations are stored as positive dB
/// magnitudes (a "-0.5 dB passband gain" requirement is ap_db = 0.5);
/// frequencies are rad/s. Invariants: 0 < ap_db < as_db and
/// 0 < omega_p < omega_s.
struct FilterSpecification {
    double ap_db;   // max passband attenuation, dB > 0
    double omega_p; // passband edge, rad/s
    double as_db;   // min stopband attenuation, dB > ap_db
    double omega_s; // stopband edge, rad/s
};

/// Validates the four numbers and returns the spec, or throws SpecError.
FilterSpecification validate_spec(double ap_db, double omega_p,
                                  double as_db, double omega_s);

// ---------------------------------------------------------------------------
// Realization
// ---------------------------------------------------------------------------

enum class Family { Butterworth, ChebyshevI };

std::string_view family_name(Family family) noexcept;

/// A designed filter: family, order, characteristic frequency (the -3 dB
/// cutoff for Butterworth, the ripple-band edge omega_p for Chebyshev-I),
/// and the left-half-plane pole set, closed under conjugation. Chebyshev
/// realizations also carry the ripple parameter epsilon.
struct FilterRealization {
    Family family;
    int order;
    double char_freq;
    std::vector<Complex> poles;
    std::optional<double> epsilon;
};

// ---------------------------------------------------------------------------
// Cascade
// ---------------------------------------------------------------------------

/// w0 / (s + w0) — unity DC gain.
struct FirstOrder {
    double w0;
};

/// b / (s^2 + a*s + b) — unity DC gain, a > 0 and b > 0 (left-half-plane
/// conjugate roots).
struct SecondOrder {
    double a;
    double b;
};

using CascadeStage = std::variant<FirstOrder, SecondOrder>;

/// Stage quality factor: sqrt(b)/a for a biquad. A first-order stage is
/// assigned Q = 0.5 (the critically damped bound) so that cascades sort
/// with the real-pole stage first.
double stage_q(const CascadeStage& stage) noexcept;

int stage_order(const CascadeStage& stage) noexcept;

/// Stage value at s = j*omega.
Complex stage_response(const CascadeStage& stage, double omega) noexcept;

/// Gain constant times a factored cascade of first/second-order sections.
/// H(0) = gain, since every stage contributes unity at DC.
struct TransferFunction {
    double gain = 1.0;
    std::vector<CascadeStage> stages;
};

int total_order(const TransferFunction& tf) noexcept;

/// Pairs conjugate poles into SecondOrder stages (a = -2*re, b = |p|^2) and
/// turns lone real poles into FirstOrder stages; gain = 1. Stages are
/// ordered by ascending Q. Throws PairingError if the pole set is not
/// closed under conjugation within 1e-9 * |pole| relative tolerance.
TransferFunction stages_from_poles(const FilterRealization& realization);

/// H(j*omega): product over stages times gain.
Complex evaluate(const TransferFunction& tf, double omega) noexcept;

/// 20*log10 |H(j*omega)|.
double magnitude_db(const TransferFunction& tf, double omega) noexcept;

} // namespace anafilt
