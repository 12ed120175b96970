#include "anafilt/numfmt.hpp"

#include <charconv>
#include <cmath>

namespace anafilt {

std::string sig9(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
    if (value == 0.0) return "0"; // fold -0 into 0 for stable output
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

} // namespace anafilt
