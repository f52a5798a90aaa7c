#ifndef CLOUDBURST_DIGEST_HPP
#define CLOUDBURST_DIGEST_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace cloudburst {

/// FNV-1a 64-bit. Used for file digests in run manifests and for the
/// deterministic decoy draws in the attribution model.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 0xCBF29CE484222325ULL) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string digest_hex(std::string_view data);

/// Digest of a file's bytes; throws std::runtime_error if unreadable.
std::string digest_file(const std::string& path);

}  // namespace cloudburst

#endif  // CLOUDBURST_DIGEST_HPP
