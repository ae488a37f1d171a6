#include "ultradist/format.hpp"
#include "ultradist/integrability.hpp"
#include "ultradist/report.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <string>

using namespace ultradist;

TEST(Format, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(3.0), "3");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Report, CanonicalLayout) {
  const std::string in = R"({"b":[1,2.5e-3],"a":{"x":0.1,"y":[]},"s":"t","n":null,"t":true,"o":[{"k":1}]})";
  const std::string want =
      "{\n"
      "  \"b\": [1, 0.0025000000000000001],\n"
      "  \"a\": {\n"
      "    \"x\": 0.10000000000000001,\n"
      "    \"y\": []\n"
      "  },\n"
      "  \"s\": \"t\",\n"
      "  \"n\": null,\n"
      "  \"t\": true,\n"
      "  \"o\": [\n"
      "    {\n"
      "      \"k\": 1\n"
      "    }\n"
      "  ]\n"
      "}\n";
  EXPECT_EQ(canonical_json(in), want);
  EXPECT_EQ(canonical_json(canonical_json(in)), want);
}

TEST(Report, SeminormNonFiniteAsString) {
  SeminormReport r;
  r.value = std::numeric_limits<double>::infinity();
  r.ratios = {1.0, r.value};
  const std::string j = to_json(r);
  EXPECT_NE(j.find("\"value\": \"inf\""), std::string::npos) << j;
  EXPECT_NE(j.find("[1, \"inf\"]"), std::string::npos) << j;
}

TEST(Report, ConditionReportIsDeterministic) {
  const ConditionReport a = classify(delta(0.0, 1), HarnessConfig{}, "delta_prime");
  const ConditionReport b = classify(delta(0.0, 1), HarnessConfig{}, "delta_prime");
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_EQ(trajectories_csv(a), trajectories_csv(b));
  const std::string csv = trajectories_csv(a);
  EXPECT_EQ(csv.rfind("family,n,value_re,value_im\n", 0), 0u);
  EXPECT_NE(csv.find("+psi,"), std::string::npos);
}
