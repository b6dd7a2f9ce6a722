#include <doctest.h>

#include <string>

#include "lapkit/config.hpp"
#include "lapkit/error.hpp"
#include "support.hpp"

using namespace lapkit;

namespace {

const std::string kListing = R"(<?xml version="1.0" encoding="UTF-8"?>
<laplace>
  <case name="l1d_16_dd" dimension="1" force="1.0"></case>
  <mesh direction="x">
    <length>1.0</length>
    <ntotal>16</ntotal>
    <nclust>6</nclust>
    <cltype>2</cltype>
    <cratio>1.2</cratio>
    <btype>D, D</btype>
    <bvalue>0.0, 0.0</bvalue>
    <degfix>8</degfix>
  </mesh>
</laplace>
)";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

}  // namespace

TEST_CASE("listing case parses to the expected fields") {
  const auto c = parse_case(kListing);
  CHECK(c.name == "l1d_16_dd");
  CHECK(c.dimension == 1);
  CHECK(c.force == 1.0);
  REQUIRE(c.meshes.size() == 1);
  const auto& m = c.meshes[0];
  CHECK(m.direction == Axis::X);
  CHECK(m.length == 1.0);
  CHECK(m.ntotal == 16);
  CHECK(m.nclust == 6);
  CHECK(m.cltype == 2);
  CHECK(m.cratio == 1.2);
  CHECK(m.btype[0] == BoundaryKind::Dirichlet);
  CHECK(m.btype[1] == BoundaryKind::Dirichlet);
  CHECK(m.bvalue[0] == 0.0);
  CHECK(m.bvalue[1] == 0.0);
  CHECK(m.degfix == 8);
}

TEST_CASE("unclosed cltype tag is rejected") {
  const auto broken = replace(kListing, "<cltype>2</cltype>", "<cltype>2</cltype");
  expect_error(ErrorCode::MalformedXml, [&] { parse_case(broken); });
}

TEST_CASE("boundary letters and list splitting") {
  auto c = parse_case(replace(kListing, "D, D", "R, R"));
  CHECK(c.meshes[0].btype[0] == BoundaryKind::Repeat);
  CHECK(c.meshes[0].btype[1] == BoundaryKind::Repeat);
  c = parse_case(replace(kListing, "D, D", "  S ,N  "));
  CHECK(c.meshes[0].btype[0] == BoundaryKind::Symmetry);
  CHECK(c.meshes[0].btype[1] == BoundaryKind::Neumann);
  c = parse_case(replace(kListing, "0.0, 0.0", "0.6,0.8"));
  CHECK(c.meshes[0].bvalue[1] == 0.8);
}

TEST_CASE("field errors") {
  expect_error(ErrorCode::MissingField, [&] { parse_case(replace(kListing, "D, D", "D")); });
  expect_error(ErrorCode::InvalidValue, [&] { parse_case(replace(kListing, "D, D", "D, Q")); });
  expect_error(ErrorCode::InvalidValue, [&] { parse_case(replace(kListing, "D, D", "R, D")); });
  expect_error(ErrorCode::InvalidValue, [&] { parse_case(replace(kListing, "<ntotal>16", "<ntotal>1")); });
  expect_error(ErrorCode::InvalidValue, [&] { parse_case(replace(kListing, "<cratio>1.2", "<cratio>0.9")); });
  expect_error(ErrorCode::InvalidValue, [&] { parse_case(replace(kListing, "dimension=\"1\"", "dimension=\"4\"")); });
  expect_error(ErrorCode::DimensionMismatch, [&] { parse_case(replace(kListing, "dimension=\"1\"", "dimension=\"2\"")); });
  expect_error(ErrorCode::MissingField, [&] { parse_case(replace(kListing, "<length>1.0</length>", "")); });
  expect_error(ErrorCode::InvalidValue, [&] { parse_case(replace(kListing, "<nclust>6", "<nclust>9")); });
  expect_error(ErrorCode::MalformedXml, [] { parse_case("not xml <"); });
}

TEST_CASE("degfix is optional") {
  const auto c = parse_case(replace(kListing, "<degfix>8</degfix>", ""));
  CHECK(c.meshes[0].degfix == 0);
}

TEST_CASE("serialize and parse again gives the same case") {
  auto c = parse_case(kListing);
  c.force = 0.1;
  c.meshes[0].cratio = 1.0 / 3.0 + 1.0;
  c.meshes[0].bvalue = {0.6, -1e-7};
  CHECK(parse_case(to_xml(c)) == c);
  for (const char* file : {"l2d_16x16_nnnn.xml", "l3d_4x8x8_channel.xml", "l1d_128_rr.xml"}) {
    const auto k = load_case(cases_path(file));
    CHECK(parse_case(to_xml(k)) == k);
  }
}

TEST_CASE("mesh sections may appear in any order") {
  auto c = load_case(cases_path("l2d_4x8_channel.xml"));
  std::string text = to_xml(c);
  const auto x0 = text.find("  <mesh direction=\"x\">");
  const auto y0 = text.find("  <mesh direction=\"y\">");
  const std::string xs = text.substr(x0, y0 - x0);
  text.erase(x0, y0 - x0);
  text.insert(text.find("</laplace>"), xs);
  CHECK(parse_case(text) == c);
}
