#pragma once

#include <string>

namespace cga {

/// Shortest decimal text that round-trips to the same double; "nan", "inf"
/// and "-inf" for non-finite values.
std::string format_number(double v);

}  // namespace cga
