#ifndef CLOUDBURST_VERSION_HPP
#define CLOUDBURST_VERSION_HPP

namespace cloudburst {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cloudburst

#endif  // CLOUDBURST_VERSION_HPP
