#include "doctest.h"
#include "lforge/common.hpp"
#include "lforge/discrepancy.hpp"
#include "lforge/sign_seq.hpp"

using namespace lforge;

TEST_CASE("sign line round trip") {
  SignSeq q;
  q.coeffs = {1, 1, -1, 1, -1};
  CHECK(q.to_line() == "++-+-");
  const SignSeq back = SignSeq::from_line(q.to_line() + "\n");
  CHECK(back.coeffs == q.coeffs);
}

TEST_CASE("sign line parse errors carry the byte offset") {
  try {
    (void)SignSeq::from_line("++x-");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find("byte 2") != std::string::npos);
  }
  CHECK_THROWS_AS((void)SignSeq::from_line(""), Error);
  CHECK_THROWS_AS((void)SignSeq::from_line("\n"), Error);
  CHECK_THROWS_AS((void)SignSeq::from_line("++ +-"), Error);
}

TEST_CASE("sign validation") {
  SignSeq q;
  CHECK_THROWS_AS(q.validate(), Error);
  q.coeffs = {1, 0};
  CHECK_THROWS_AS(q.validate(), Error);
  q.coeffs = {1, -1};
  CHECK_NOTHROW(q.validate());
}

TEST_CASE("colouring JSON carries the seed and the verification flag") {
  Colouring col;
  col.x = {1.0, -1.0, 1.0};
  col.seed = 42;
  col.verified = true;
  const std::string body = col.to_json();
  CHECK(body.find("\"seed\": 42") != std::string::npos);
  CHECK(body.find("\"verified\": true") != std::string::npos);
}

TEST_CASE("seed derivation separates labels and keeps determinism") {
  CHECK(derive_seed(7, "alpha") == derive_seed(7, "alpha"));
  CHECK(derive_seed(7, "alpha") != derive_seed(7, "odd"));
  CHECK(derive_seed(7, "alpha") != derive_seed(8, "alpha"));
}
