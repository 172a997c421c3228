#pragma once

namespace entmono {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace entmono
