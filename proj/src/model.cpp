#include "anafilt/model.hpp"

#include <algorithm>
#include <cmath>

namespace anafilt {

FilterSpecification validate_spec(double ap_db, double omega_p,
                                  double as_db, double omega_s) {
    if (!(omega_p > 0.0) || !(omega_s > 0.0)) {
        throw SpecError(SpecErrorCode::NonPositiveFrequency,
                        "band edges must be positive (rad/s)");
    }
    if (!(omega_p < omega_s)) {
        throw SpecError(SpecErrorCode::EdgesOutOfOrder,
                        "stopband edge must lie above the passband edge");
    }
    if (!(ap_db > 0.0) || !(ap_db < as_db)) {
        throw SpecError(SpecErrorCode::AttenuationsOutOfOrder,
                        "attenuations must satisfy 0 < Ap < As (dB)");
    }
    return FilterSpecification{ap_db, omega_p, as_db, omega_s};
}

std::string_view family_name(Family family) noexcept {
    switch (family) {
    case Family::Butterworth: return "butterworth";
    case Family::ChebyshevI: return "cheby1";
    }
    return "unknown";
}

double stage_q(const CascadeStage& stage) noexcept {
    if (std::holds_alternative<FirstOrder>(stage)) return 0.5;
    const auto& s = std::get<SecondOrder>(stage);
    return std::sqrt(s.b) / s.a;
}

int stage_order(const CascadeStage& stage) noexcept {
    return std::holds_alternative<FirstOrder>(stage) ? 1 : 2;
}

Complex stage_response(const CascadeStage& stage, double omega) noexcept {
    if (const auto* fo = std::get_if<FirstOrder>(&stage)) {
        return fo->w0 / Complex(fo->w0, omega);
    }
    const auto& so = std::get<SecondOrder>(stage);
    // b / (b - w^2 + j*a*w)
    return so.b / Complex(so.b - omega * omega, so.a * omega);
}

int total_order(const TransferFunction& tf) noexcept {
    int n = 0;
    for (const auto& stage : tf.stages) n += stage_order(stage);
    return n;
}

TransferFunction stages_from_poles(const FilterRealization& realization) {
    std::vector<CascadeStage> stages;
    std::vector<Complex> upper; // poles with im > tolerance, awaiting a mate
    std::vector<Complex> lower;

    for (const Complex& p : realization.poles) {
        const double tol = 1e-9 * std::abs(p);
        if (std::abs(p.imag()) <= tol) {
            if (!(p.real() < 0.0)) {
                throw PairingError("real pole is not strictly left-half-plane");
            }
            stages.push_back(FirstOrder{-p.real()});
        } else if (p.imag() > 0.0) {
            upper.push_back(p);
        } else {
            lower.push_back(p);
        }
    }

    for (const Complex& p : upper) {
        const double tol = 1e-9 * std::abs(p);
        auto mate = std::find_if(lower.begin(), lower.end(), [&](const Complex& q) {
            return std::abs(q - std::conj(p)) <= tol;
        });
        if (mate == lower.end()) {
            throw PairingError("pole set is not closed under conjugation");
        }
        lower.erase(mate);
        const double a = -2.0 * p.real();
        const double b = std::norm(p);
        if (!(a > 0.0) || !(b > 0.0)) {
            throw PairingError("conjugate pair is not strictly left-half-plane");
        }
        stages.push_back(SecondOrder{a, b});
    }
    if (!lower.empty()) {
        throw PairingError("pole set is not closed under conjugation");
    }

    std::stable_sort(stages.begin(), stages.end(),
                     [](const CascadeStage& x, const CascadeStage& y) {
                         return stage_q(x) < stage_q(y);
                     });
    return TransferFunction{1.0, std::move(stages)};
}

Complex evaluate(const TransferFunction& tf, double omega) noexcept {
    Complex h(tf.gain, 0.0);
    for (const auto& stage : tf.stages) h *= stage_response(stage, omega);
    return h;
}

double magnitude_db(const TransferFunction& tf, double omega) noexcept {
    return 20.0 * std::log10(std::abs(evaluate(tf, omega)));
}

} // namespace anafilt
