#pragma once

#include <string>

namespace ultradist {

/// Fixed textual form for doubles in every report: 17 significant digits
/// ("%.17g"), with "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double x);

}  // namespace ultradist
