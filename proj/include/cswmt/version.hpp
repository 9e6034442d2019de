#pragma once

namespace cswmt {

inline constexpr const char* kVersion = "0.1.0";

}
