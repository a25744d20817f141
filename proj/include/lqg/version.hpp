#pragma once

#ifndef LQG_VERSION
#define LQG_VERSION "0.0.0"
#endif

namespace lqg {

inline constexpr const char* version() { return LQG_VERSION; }

}  // namespace lqg
