#include <sstream>

#include "cli_util.hpp"
#include "doctest.h"

using namespace rhombsaw;
using namespace rhombsaw::cli;

TEST_CASE("angles in radians and as fractions of pi") {
  CHECK(parse_angle("1.5") == 1.5);
  CHECK(parse_angle("pi") == doctest::Approx(kPi));
  CHECK(parse_angle("pi/3") == doctest::Approx(kPi / 3));
  CHECK(parse_angle("2pi/3") == doctest::Approx(2 * kPi / 3));
  CHECK(parse_angle("2*pi/3") == doctest::Approx(2 * kPi / 3));
  CHECK(parse_angle("5pi/12") == doctest::Approx(5 * kPi / 12));
  CHECK(parse_angle("-pi/6") == doctest::Approx(-kPi / 6));
  CHECK(parse_angle("0.5pi") == doctest::Approx(kPi / 2));
  CHECK_THROWS(parse_angle("pi/0"));
  CHECK_THROWS(parse_angle("three"));
  CHECK_THROWS(parse_angle("1.5x"));
}

TEST_CASE("csv and json tables") {
  Table t;
  t.columns = {"n", "x", "walk", "note"};
  t.add({1LL, 0.5, std::string("0,0,H;"), Cell{}});
  std::ostringstream csv;
  t.write_csv(csv);
  CHECK(csv.str() == "n,x,walk,note\n1,0.5,\"0,0,H;\",\n");
  std::ostringstream js;
  t.write_json(js, {{"command", "x"}});
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["meta"]["command"] == "x");
  CHECK(doc["rows"][0]["walk"] == "0,0,H;");
  CHECK(doc["rows"][0]["note"].is_null());
  CHECK_THROWS(t.add({1LL}));
}
