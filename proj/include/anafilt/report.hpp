#pragma once

// DesignReport: the full record of one design run — spec echo, realized
// family/order/poles, stage coefficients, optional component values, and
// free-form notes. Serializes deterministically (stable key order, fixed
// 9-significant-digit numbers) so identical inputs give identical bytes.

#include "anafilt/model.hpp"
#include "anafilt/sallen_key.hpp"

#include <optional>
#include <string>
#include <vector>

namespace anafilt {

struct DesignReport {
    FilterSpecification spec;
    Family family;
    int order;
    double char_freq;
    std::optional<double> epsilon;
    std::vector<Complex> poles;
    TransferFunction tf;
    std::optional<sallen_key::SallenKeyCascade> components;
    std::vector<std::string> notes;
};

DesignReport build_report(const FilterSpecification& spec,
                          const FilterRealization& realization,
                          const TransferFunction& tf);

std::string report_to_json(const DesignReport& report);

/// Re-parses report_to_json output. Round trip preserves every stored
/// digit: parse(json) re-serialized is byte-identical.
DesignReport report_from_json(const std::string& json_text);

std::string report_to_text(const DesignReport& report);

} // namespace anafilt
