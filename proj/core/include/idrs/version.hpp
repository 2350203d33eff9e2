#ifndef IDRS_VERSION_HPP
#define IDRS_VERSION_HPP

namespace idrs {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
