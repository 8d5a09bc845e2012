#include "lforge/sign_seq.hpp"

#include "lforge/common.hpp"

namespace lforge {

void SignSeq::validate() const {
  if (coeffs.empty()) fail(ErrorKind::validation, "sign sequence is empty");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 1 && coeffs[i] != -1)
      fail(ErrorKind::validation,
           "sign sequence entry " + std::to_string(i) + " is not +-1");
  }
}

std::string SignSeq::to_line() const {
  std::string out;
  out.reserve(coeffs.size());
  for (std::int8_t c : coeffs) out.push_back(c > 0 ? '+' : '-');
  return out;
}

SignSeq SignSeq::from_line(std::string_view line) {
  SignSeq s;
  s.coeffs.reserve(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '+') {
      s.coeffs.push_back(1);
    } else if (c == '-') {
      s.coeffs.push_back(-1);
    } else if (c == '\n' || c == '\r' || c == ' ' || c == '\t') {
      for (std::size_t j = i; j < line.size(); ++j) {
        const char d = line[j];
        if (d != '\n' && d != '\r' && d != ' ' && d != '\t')
          fail(ErrorKind::parse,
               "unexpected character at byte " + std::to_string(j));
      }
      break;
    } else {
      fail(ErrorKind::parse, "unexpected character at byte " + std::to_string(i));
    }
  }
  if (s.coeffs.empty()) fail(ErrorKind::parse, "no coefficients at byte 0");
  return s;
}

}  // namespace lforge
