#include "lforge/common.hpp"

#include "lforge/rng.hpp"

namespace lforge {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::config: return "config";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    case ErrorKind::solver: return "solver";
    case ErrorKind::colouring: return "colouring";
    case ErrorKind::assembly: return "assembly";
  }
  return "unknown";
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
  // FNV-1a over the label folded into a splitmix64 stream keyed by the base
  // seed; labels give independent, reproducible sub-streams.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t state = base ^ h;
  splitmix64(state);
  return splitmix64(state);
}

}  // namespace lforge
