#include "doctest.h"
#include "lp_reader.hpp"
#include "orbcover/model_ir.hpp"

using namespace orbcover;

namespace {

MilpModel tiny_sclp() {
  // J=2, T=3, P=1 with columns [1,0,1] and [0,1,0].
  MilpModel m;
  const int x1 = m.add_binary("x_1");
  const int x2 = m.add_binary("x_2");
  m.set_objective(ObjectiveSense::Minimize, {{x1, 1.0}, {x2, 1.0}});
  m.add_constraint("cover_1_1", {{x1, 1.0}}, ConstraintSense::GE, 1.0);
  m.add_constraint("cover_2_1", {{x2, 1.0}}, ConstraintSense::GE, 1.0);
  m.add_constraint("cover_3_1", {{x1, 1.0}}, ConstraintSense::GE, 1.0);
  m.set_metadata({"SCLP", 0xdeadbeefULL});
  return m;
}

}  // namespace

TEST_CASE("builder: ids, duplicate names, unknown references") {
  MilpModel m;
  CHECK(m.add_binary("x_1") == 0);
  CHECK(m.add_variable("w", VarDomain::Integer, 0, 10) == 1);
  CHECK_THROWS_AS(m.add_binary("x_1"), ValidationError);
  CHECK_THROWS_AS(m.add_variable("bad", VarDomain::Continuous, 2.0, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(
      m.add_constraint("c", {{7, 1.0}}, ConstraintSense::LE, 0.0),
      ValidationError);
  CHECK_THROWS_AS(
      m.add_constraint("c", {{0, 1.0}, {0, 2.0}}, ConstraintSense::LE, 0.0),
      ValidationError);
  CHECK(m.find_variable("w") == 1);
  CHECK(m.find_variable("nope") == -1);
}

TEST_CASE("set_objective replaces the previous objective") {
  MilpModel m;
  const int x = m.add_binary("x_1");
  m.set_objective(ObjectiveSense::Minimize, {{x, 1.0}});
  m.set_objective(ObjectiveSense::Maximize, {{x, 5.0}});
  CHECK(m.objective().sense == ObjectiveSense::Maximize);
  REQUIRE(m.objective().terms.size() == 1);
  CHECK(m.objective().terms[0].coef == 5.0);
}

TEST_CASE("tiny sclp exports one row per (t,p)") {
  const MilpModel m = tiny_sclp();
  const std::string lp = export_lp(m);
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.find("cover_1_1:") != std::string::npos);
  CHECK(lp.find("cover_2_1:") != std::string::npos);
  CHECK(lp.find("cover_3_1:") != std::string::npos);
  CHECK(lp.find("Binaries") != std::string::npos);
  CHECK(lp.find("End\n") != std::string::npos);
}

TEST_CASE("export is deterministic") {
  CHECK(export_lp(tiny_sclp()) == export_lp(tiny_sclp()));
}

TEST_CASE("empty objective exports a zero marker row") {
  MilpModel m;
  m.add_binary("x_1");
  m.set_objective(ObjectiveSense::Minimize, {});
  const std::string lp = export_lp(m);
  CHECK(lp.find("obj: 0 x_1") != std::string::npos);
  // The reader treats the zero marker as an empty objective.
  const MilpModel back = testing::read_lp(lp);
  CHECK(back.objective().terms.empty());
}

TEST_CASE("round trip through the reader reproduces the model") {
  const MilpModel m = tiny_sclp();
  std::string why;
  const MilpModel back = testing::read_lp(export_lp(m));
  CHECK_MESSAGE(models_equal(m, back, &why), why);
  // Re-export of the parsed model is byte-identical.
  CHECK(export_lp(back) == export_lp(m));
}

TEST_CASE("round trip with mixed domains, senses and bounds") {
  MilpModel m;
  const int x = m.add_binary("x_1");
  const int w = m.add_variable("w_2_1", VarDomain::Integer, 0.0, 287.0);
  const int alpha = m.add_variable("alpha_1", VarDomain::Continuous, 0.0,
                                   std::numeric_limits<double>::infinity());
  const int free_var = m.add_variable(
      "f", VarDomain::Continuous, -std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity());
  const int fixed = m.add_variable("u_1", VarDomain::Integer, 3.0, 3.0);
  m.set_objective(ObjectiveSense::Maximize,
                  {{x, 2.5}, {alpha, -1.0 / 3.0}, {w, 1e-17}});
  m.add_constraint("le", {{x, 1.0}, {w, -2.0}}, ConstraintSense::LE, 4.5);
  m.add_constraint("ge", {{alpha, 0.125}, {free_var, 1.0}},
                   ConstraintSense::GE, -2.0);
  m.add_constraint("eq", {{w, 1.0}, {fixed, -1.0}}, ConstraintSense::EQ, 0.0);
  m.set_metadata({"MMRT", 0x1234abcdULL});

  std::string why;
  const MilpModel back = testing::read_lp(export_lp(m));
  CHECK_MESSAGE(models_equal(m, back, &why), why);
  CHECK(export_lp(back) == export_lp(m));
}

TEST_CASE("json dump carries the structure") {
  const std::string js = model_to_json(tiny_sclp());
  CHECK(js.find("\"formulation\": \"SCLP\"") != std::string::npos);
  CHECK(js.find("cover_2_1") != std::string::npos);
  CHECK(js.find("\"binary\"") != std::string::npos);
}

TEST_CASE("activity and satisfaction helpers") {
  MilpModel m;
  const int x = m.add_binary("x_1");
  const int y = m.add_binary("x_2");
  m.add_constraint("c", {{x, 2.0}, {y, -1.0}}, ConstraintSense::LE, 1.0);
  const std::vector<double> v{1.0, 0.0};
  CHECK(activity(m.constraints()[0], v) == 2.0);
  CHECK_FALSE(constraint_satisfied(m.constraints()[0], v, 1e-6));
  CHECK(constraint_satisfied(m.constraints()[0], {1.0, 1.0}, 1e-6));
}
