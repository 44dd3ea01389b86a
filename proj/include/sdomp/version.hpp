#ifndef SDOMP_VERSION_HPP
#define SDOMP_VERSION_HPP

namespace sdomp {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
