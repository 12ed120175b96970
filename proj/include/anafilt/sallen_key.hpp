#pragma once

// Equal-R unity-gain Sallen-Key synthesis. A biquad b/(s^2 + a*s + b)
// realized with two equal resistors R has denominator
//   s^2 + (2/(R*C1))*s + 1/(R^2*C1*C2)
// so C1 = 2/(a*R) and C2 = a/(2*R*b), giving C1/C2 = 4*Q^2 by
// construction. First-order stages are a plain RC with R = 1/(w0*C).

#include "anafilt/model.hpp"
#include "anafilt/response.hpp"

namespace anafilt::sallen_key {

struct FirstOrderRC {
    double r_ohms;
    double c_farads;
};

struct SecondOrderSK {
    double r_ohms; // both resistors
    double c1_farads;
    double c2_farads;
};

using SallenKeyStage = std::variant<FirstOrderRC, SecondOrderSK>;

/// Component values per stage plus the transfer function recomputed from
/// those values (exact before rounding, perturbed after).
struct SallenKeyCascade {
    std::vector<SallenKeyStage> stages;
    TransferFunction realized_tf;
};

enum class ESeries { None, E24, E96 };

FirstOrderRC synth_first_order(double w0, double c_choice);
SecondOrderSK synth_second_order(double a, double b, double r_choice);

/// Per-stage synthesis of a whole cascade. r_choice feeds every biquad,
/// c_choice_first_order every RC stage.
SallenKeyCascade synth_cascade(const TransferFunction& tf,
                               double r_choice = 10e3,
                               double c_choice_first_order = 100e-9);

/// Nearest preferred value, geometric rounding across decades.
double round_component(double value, ESeries series);

/// Every component snapped to the series; realized_tf recomputed from the
/// rounded values. ESeries::None returns the cascade unchanged.
SallenKeyCascade round_to_series(const SallenKeyCascade& cascade,
                                 ESeries series);

/// Deviation of a realized response from the source design.
struct RealizationError {
    double max_db;
    double rms_db;
    std::vector<double> pole_displacement_rel; // per stage
};

RealizationError realization_error(const TransferFunction& original,
                                   const TransferFunction& realized,
                                   const response::FrequencyGrid& grid);

const std::vector<double>& eseries_mantissas(ESeries series);

} // namespace anafilt::sallen_key
