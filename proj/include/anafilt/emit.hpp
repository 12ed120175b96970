#pragma once

// File emitters: SPICE netlist (ngspice-compatible subset), CSV response
// and transient tables, pole-zero JSON, and SVG Bode plots. Every emitter
// is deterministic — byte-identical output for identical inputs.

#include "anafilt/model.hpp"
#include "anafilt/response.hpp"
#include "anafilt/sallen_key.hpp"

#include <span>
#include <string>
#include <variant>

namespace anafilt::emit {

/// .ac dec <points_per_decade> <f_lo_hz> <f_hi_hz>
struct AcAnalysis {
    double f_lo_hz;
    double f_hi_hz;
    int points_per_decade = 100;
};

/// .tran with a PULSE source reproducing the square-wave drive.
struct TranAnalysis {
    double f_in_hz;
    double amplitude_v = 1.0;
    double duration_s;
};

using Analysis = std::variant<AcAnalysis, TranAnalysis>;

/// SPICE netlist for the cascade: ideal op-amps as VCVS (gain 1e6) in
/// unity-gain feedback, stage-indexed node names (n_<stage>_<point>).
/// Throws EmptyCascade for a cascade with no stages.
std::string netlist(const sallen_key::SallenKeyCascade& cascade,
                    const Analysis& analysis);

/// Header omega_rad_s,magnitude_db,phase_deg; one row per grid point.
std::string response_csv(const response::FrequencyResponse& resp);

/// Header t_s,input_v,output_v; one row per sample.
std::string transient_csv(const response::TransientTrace& trace);

/// family, order, char_freq, epsilon?, poles as [re, im] sorted by
/// (re, im), zeros always empty (all-pole families).
std::string pole_zero_json(const FilterRealization& realization);

/// Log-frequency Bode magnitude plot, one polyline per response, legend
/// from labels. All responses must share the identical grid
/// (GridMismatch otherwise); empty or zero-point input is invalid.
std::string bode_svg(std::span<const response::FrequencyResponse> responses,
                     std::span<const std::string> labels);

} // namespace anafilt::emit
