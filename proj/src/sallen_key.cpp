#include "anafilt/sallen_key.hpp"

#include <cmath>
#include <stdexcept>

namespace anafilt::sallen_key {

namespace {

CascadeStage stage_from_components(const SallenKeyStage& stage) {
    if (const auto* rc = std::get_if<FirstOrderRC>(&stage))
        return FirstOrder{1.0 / (rc->r_ohms * rc->c_farads)};
    const auto& sk = std::get<SecondOrderSK>(stage);
    return SecondOrder{2.0 / (sk.r_ohms * sk.c1_farads),
                       1.0 / (sk.r_ohms * sk.r_ohms * sk.c1_farads *
                              sk.c2_farads)};
}

TransferFunction tf_from_components(const std::vector<SallenKeyStage>& stages,
                                    double gain) {
    TransferFunction tf;
    tf.gain = gain;
    tf.stages.reserve(stages.size());
    for (const SallenKeyStage& stage : stages)
        tf.stages.push_back(stage_from_components(stage));
    return tf;
}

/// Representative pole of a stage: the real pole, or the upper-half member
/// of the conjugate pair.
Complex stage_pole(const CascadeStage& stage) {
    if (const auto* fo = std::get_if<FirstOrder>(&stage))
        return Complex(-fo->w0, 0.0);
    const auto& so = std::get<SecondOrder>(stage);
    const double disc = so.a * so.a / 4.0 - so.b;
    if (disc <= 0.0) return Complex(-so.a / 2.0, std::sqrt(-disc));
    return Complex(-so.a / 2.0 + std::sqrt(disc), 0.0);
}

} // namespace

FirstOrderRC synth_first_order(double w0, double c_choice) {
    if (!(w0 > 0.0))
        throw std::invalid_argument("stage frequency must be positive");
    if (!(c_choice > 0.0))
        throw std::invalid_argument("capacitor choice must be positive");
    return FirstOrderRC{1.0 / (w0 * c_choice), c_choice};
}

SecondOrderSK synth_second_order(double a, double b, double r_choice) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("biquad coefficients must be positive");
    if (!(r_choice > 0.0))
        throw std::invalid_argument("resistor choice must be positive");
    return SecondOrderSK{r_choice, 2.0 / (a * r_choice),
                         a / (2.0 * r_choice * b)};
}

SallenKeyCascade synth_cascade(const TransferFunction& tf, double r_choice,
                               double c_choice_first_order) {
    if (tf.stages.empty())
        throw EmptyCascade("cannot synthesize an empty cascade");
    SallenKeyCascade cascade;
    cascade.stages.reserve(tf.stages.size());
    for (const CascadeStage& stage : tf.stages) {
        if (const auto* fo = std::get_if<FirstOrder>(&stage))
            cascade.stages.emplace_back(
                synth_first_order(fo->w0, c_choice_first_order));
        else {
            const auto& so = std::get<SecondOrder>(stage);
            cascade.stages.emplace_back(
                synth_second_order(so.a, so.b, r_choice));
        }
    }
    cascade.realized_tf = tf_from_components(cascade.stages, tf.gain);
    return cascade;
}

const std::vector<double>& eseries_mantissas(ESeries series) {
    static const std::vector<double> none;
    static const std::vector<double> e24 = {
        1.0, 1.1, 1.2, 1.3, 1.5, 1.6, 1.8, 2.0, 2.2, 2.4, 2.7, 3.0,
        3.3, 3.6, 3.9, 4.3, 4.7, 5.1, 5.6, 6.2, 6.8, 7.5, 8.2, 9.1};
    static const std::vector<double> e96 = {
        1.00, 1.02, 1.05, 1.07, 1.10, 1.13, 1.15, 1.18, 1.21, 1.24,
        1.27, 1.30, 1.33, 1.37, 1.40, 1.43, 1.47, 1.50, 1.54, 1.58,
        1.62, 1.65, 1.69, 1.74, 1.78, 1.82, 1.87, 1.91, 1.96, 2.00,
        2.05, 2.10, 2.15, 2.21, 2.26, 2.32, 2.37, 2.43, 2.49, 2.55,
        2.61, 2.67, 2.74, 2.80, 2.87, 2.94, 3.01, 3.09, 3.16, 3.24,
        3.32, 3.40, 3.48, 3.57, 3.65, 3.74, 3.83, 3.92, 4.02, 4.12,
        4.22, 4.32, 4.42, 4.53, 4.64, 4.75, 4.87, 4.99, 5.11, 5.23,
        5.36, 5.49, 5.62, 5.76, 5.90, 6.04, 6.19, 6.34, 6.49, 6.65,
        6.81, 6.98, 7.15, 7.32, 7.50, 7.68, 7.87, 8.06, 8.25, 8.45,
        8.66, 8.87, 9.09, 9.31, 9.53, 9.76};
    switch (series) {
    case ESeries::E24: return e24;
    case ESeries::E96: return e96;
    case ESeries::None: return none;
    }
    return none;
}

double round_component(double value, ESeries series) {
    if (series == ESeries::None) return value;
    if (!(value > 0.0))
        throw std::invalid_argument("component value must be positive");
    const auto& mantissas = eseries_mantissas(series);
    const double decade = std::pow(10.0, std::floor(std::log10(value)));
    const double lm = std::log10(value / decade);

    // Candidates are the in-decade mantissas plus the next decade's 1.0,
    // so 9.9 rounds up to 10 instead of down to the series top.
    double best = 10.0;
    double best_dist = std::abs(lm - 1.0);
    for (const double cand : mantissas) {
        const double dist = std::abs(lm - std::log10(cand));
        if (dist < best_dist) {
            best_dist = dist;
            best = cand;
        }
    }
    return best * decade;
}

SallenKeyCascade round_to_series(const SallenKeyCascade& cascade,
                                 ESeries series) {
    if (series == ESeries::None) return cascade;
    SallenKeyCascade rounded;
    rounded.stages.reserve(cascade.stages.size());
    for (const SallenKeyStage& stage : cascade.stages) {
        if (const auto* rc = std::get_if<FirstOrderRC>(&stage))
            rounded.stages.emplace_back(
                FirstOrderRC{round_component(rc->r_ohms, series),
                             round_component(rc->c_farads, series)});
        else {
            const auto& sk = std::get<SecondOrderSK>(stage);
            rounded.stages.emplace_back(
                SecondOrderSK{round_component(sk.r_ohms, series),
                              round_component(sk.c1_farads, series),
                              round_component(sk.c2_farads, series)});
        }
    }
    rounded.realized_tf =
        tf_from_components(rounded.stages, cascade.realized_tf.gain);
    return rounded;
}

RealizationError realization_error(const TransferFunction& original,
                                   const TransferFunction& realized,
                                   const response::FrequencyGrid& grid) {
    if (original.stages.size() != realized.stages.size())
        throw std::invalid_argument(
            "realizations have different cascade structure");
    for (std::size_t i = 0; i < original.stages.size(); ++i)
        if (original.stages[i].index() != realized.stages[i].index())
            throw std::invalid_argument(
                "realizations have different cascade structure");
    if (grid.points.empty())
        throw std::invalid_argument("error metric requires a non-empty grid");

    const auto resp_orig = response::sample_response(original, grid);
    const auto resp_real = response::sample_response(realized, grid);

    RealizationError err{0.0, 0.0, {}};
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const double d =
            resp_real.magnitude_db[i] - resp_orig.magnitude_db[i];
        err.max_db = std::max(err.max_db, std::abs(d));
        sum_sq += d * d;
    }
    err.rms_db = std::sqrt(sum_sq / static_cast<double>(grid.points.size()));

    err.pole_displacement_rel.reserve(original.stages.size());
    for (std::size_t i = 0; i < original.stages.size(); ++i) {
        const Complex po = stage_pole(original.stages[i]);
        const Complex pr = stage_pole(realized.stages[i]);
        err.pole_displacement_rel.push_back(std::abs(pr - po) /
                                            std::abs(po));
    }
    return err;
}

} // namespace anafilt::sallen_key
