#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "hypenergy/report_io.hpp"
#include "hypenergy/set_spec.hpp"
#include "hypenergy/suites.hpp"

#include "json.hpp"

using namespace hypenergy;

TEST(SetSpec, ParseAndMaterialize) {
  const auto ctx = make_context(101);
  const auto iv = parse_set_spec("interval:1..10");
  EXPECT_EQ(materialize(iv, ctx), interval(ctx, 1, 10));
  const auto ap = parse_set_spec("ap:5,1,20");
  EXPECT_TRUE(is_unit_step_progression(materialize(ap, ctx)));
  EXPECT_EQ(materialize(ap, ctx).size(), 20u);
  const auto r = parse_set_spec("random:15@42");
  EXPECT_EQ(materialize(r, ctx), materialize(parse_set_spec("random:15@42"), ctx));
  EXPECT_EQ(materialize(r, ctx).size(), 15u);
  EXPECT_EQ(materialize(parse_set_spec("subgroup:4"), ctx), multiplicative_subgroup(ctx, 4));
  EXPECT_EQ(materialize(parse_set_spec("geom:2,5"), ctx), FpSet(ctx, {1, 2, 4, 8, 16}));
  EXPECT_EQ(materialize(parse_set_spec("explicit:{3,-1,104}"), ctx), FpSet(ctx, {3, 100}));
  EXPECT_TRUE(materialize(parse_set_spec("explicit:{}"), ctx).empty());
}

TEST(SetSpec, RoundTrip) {
  for (const char* text : {"interval:-3..7", "ap:5,1,20", "geom:3,12", "random:15@42", "subgroup:5",
                           "explicit:{1,-2,3}", "explicit:{}"}) {
    const auto s = parse_set_spec(text);
    EXPECT_EQ(render(s), text);
    EXPECT_EQ(parse_set_spec(render(s)), s);
  }
}

TEST(SetSpec, Errors) {
  auto position = [](const char* text) -> std::size_t {
    try {
      parse_set_spec(text);
    } catch (const SetSpecError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  EXPECT_EQ(position("interval:1-5"), 10u);
  EXPECT_EQ(position("ap:1,x,3"), 5u);
  EXPECT_EQ(position("nope:3"), 0u);
  EXPECT_EQ(position("interval"), 0u);
  EXPECT_EQ(position("explicit:{1,2"), 13u);
  EXPECT_EQ(position("interval:5..1"), 12u);
  EXPECT_EQ(position("random:3@1x"), 10u);

  const auto ctx = make_context(11);
  EXPECT_THROW(materialize(parse_set_spec("interval:1..12"), ctx), std::invalid_argument);
  EXPECT_THROW(materialize(parse_set_spec("ap:1,11,3"), ctx), std::invalid_argument);
  EXPECT_THROW(materialize(parse_set_spec("subgroup:3"), ctx), std::invalid_argument);
  EXPECT_THROW(materialize(parse_set_spec("geom:22,3"), ctx), std::invalid_argument);
  EXPECT_THROW(materialize_integers(parse_set_spec("random:3@1")), std::invalid_argument);
  EXPECT_EQ(materialize_integers(parse_set_spec("ap:1,2,3")), (std::vector<std::int64_t>{1, 3, 5}));
}

TEST(Suites, IdentitiesPassOnDefaults) {
  const auto rows = run_suite("identities", {});
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) EXPECT_TRUE(r.pass) << r.check << " p=" << r.p << " A=" << r.a;
}

TEST(Suites, Thm1WithSingletons) {
  SuiteConfig cfg;
  cfg.primes = {53};
  cfg.a = cfg.b = cfg.c = cfg.d = parse_set_spec("explicit:{1}");
  const auto rows = run_suite("thm1", cfg);
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) EXPECT_TRUE(r.pass);
  EXPECT_TRUE(failed_rows(rows).empty());
}

TEST(Suites, ConfigErrors) {
  EXPECT_THROW(run_suite("no-such-suite", {}), ConfigError);
  SuiteConfig bad_prime;
  bad_prime.primes = {15};
  EXPECT_THROW(run_suite("thm1", bad_prime), ConfigError);
  SuiteConfig too_long;
  too_long.primes = {11};
  too_long.a = parse_set_spec("interval:1..20");
  EXPECT_THROW(run_suite("thm1", too_long), ConfigError);
  SuiteConfig zero_lambda;
  zero_lambda.primes = {11};
  zero_lambda.lambda = 0;
  EXPECT_THROW(run_suite("thm1", zero_lambda), ConfigError);
  SuiteConfig bad_env;
  bad_env.envelope = -1;
  EXPECT_THROW(run_suite("thm1", bad_env), ConfigError);
  EXPECT_THROW(parse_output_format("xml"), ConfigError);
}

TEST(Suites, Deterministic) {
  SuiteConfig cfg;
  cfg.primes = {53, 101};
  cfg.seed = 99;
  EXPECT_EQ(to_csv(run_suite("thm1", cfg)), to_csv(run_suite("thm1", cfg)));
  cfg.seed = 100;
  const auto other = to_csv(run_suite("thm1", cfg));
  cfg.seed = 99;
  EXPECT_NE(to_csv(run_suite("thm1", cfg)), other);
}

TEST(Suites, EnvelopeOverrideCanFail) {
  SuiteConfig cfg;
  cfg.primes = {101};
  cfg.envelope = 1e-9;
  const auto rows = run_suite("thm1", cfg);
  EXPECT_FALSE(failed_rows(rows).empty());
}

TEST(Registry, CoversEveryOperation) {
  const std::vector<std::string> required = {
      // energies
      "additive_energy", "multiplicative_energy", "t_plus_k", "e_plus_k", "d2_quantity",
      "check_progression_energy",
      // sl2
      "unipotent_u", "lower_unipotent", "v_matrix", "g_lambda_set", "mobius_apply", "t_k_group",
      "e_rk_group", "e_lk_group", "action_sum", "transitivity_bound_check", "trace_formula_check",
      "free_group_check", "t_2k_integer_mode",
      // incidence
      "count_hyperbola", "deviation", "bound_thm1", "rho_bound", "shift_inverse_profile",
      // kloosterman
      "kloosterman_sum", "bilinear_form", "bound_basic", "bound_thm_NM", "saving_exponent_scan"};
  std::set<std::string> covered;
  for (const auto& s : suite_registry()) covered.insert(s.ops.begin(), s.ops.end());
  for (const auto& op : required) EXPECT_TRUE(covered.count(op)) << op;

  for (const char* name : {"identities", "thm1", "progression", "rAA", "kloosterman-NM", "sl2-free",
                           "lemma27-Z", "asym-Z"})
    EXPECT_NE(find_suite(name), nullptr) << name;
}

TEST(ReportIo, CsvAndJson) {
  ExperimentRow r;
  r.suite = "thm1";
  r.check = "x";
  r.p = 11;
  r.a = "explicit:{1,2}";
  r.lhs = "3";
  r.main_term = "1";
  r.rhs = 0.5;
  r.ratio = 4;
  r.pass = true;
  r.notes = {"say \"hi\""};
  const auto csv = to_csv({r});
  const auto header = csv.substr(0, csv.find('\n'));
  EXPECT_EQ(header,
            "suite,check,p,A,B,C,D,lambda,lhs,main_term,rhs,ratio,exponent,pass,millis,asserted,notes");
  EXPECT_NE(csv.find("\"explicit:{1,2}\""), std::string::npos);
  EXPECT_NE(csv.find("\"say \"\"hi\"\"\""), std::string::npos);
  EXPECT_NE(csv.find(",0.5,4,,true,0,true,"), std::string::npos);

  std::ostringstream js;
  write_json(js, {r});
  const auto parsed = nlohmann::json::parse(js.str());
  ASSERT_TRUE(parsed.is_array());
  EXPECT_EQ(parsed[0]["A"], "explicit:{1,2}");
  EXPECT_EQ(parsed[0]["p"], 11);
  EXPECT_TRUE(parsed[0]["exponent"].is_null());
  EXPECT_EQ(parsed[0]["pass"], true);
}
