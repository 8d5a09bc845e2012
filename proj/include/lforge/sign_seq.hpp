#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lforge {

// A +-1 coefficient sequence indexed by degree. `offset` is the lowest
// degree represented (0 for the plain polynomials handled here).
struct SignSeq {
  std::vector<std::int8_t> coeffs;
  std::int64_t offset = 0;

  std::int64_t size() const { return static_cast<std::int64_t>(coeffs.size()); }
  std::int64_t degree() const { return offset + size() - 1; }

  // Throws on empty sequences or entries outside {-1,+1}.
  void validate() const;

  // One line of '+'/'-' characters, lowest degree first.
  std::string to_line() const;

  // Parses a '+'/'-' line; trailing newline/spaces tolerated. On bad input
  // throws a parse error naming the byte offset.
  static SignSeq from_line(std::string_view line);
};

}  // namespace lforge
