#pragma once

// Locale-independent numeric formatting shared by every emitter: fixed
// 9-significant-digit shortest form, '.' decimal separator, byte-stable
// across runs and platforms.

#include <string>

namespace anafilt {

std::string sig9(double value);

} // namespace anafilt
