#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "locpa/recursion.hpp"
#include "locpa/rewrite.hpp"
#include "locpa/syntax.hpp"

using namespace locpa;

static TermPtr T(const std::string& s) {
  auto r = parse_term(s);
  REQUIRE_MESSAGE(r.ok(), s);
  return *r.value;
}

static LinearSpec S(const std::string& s) {
  auto r = parse_spec(s);
  REQUIRE_MESSAGE(r.ok(), (r.error ? r.error->message : s));
  return *r.value;
}

static Alphabet demo() {
  Alphabet al;
  for (auto a : {"a", "b", "c", "e"}) al.declare_action(a);
  al.hide_sets["I"] = {"a"};
  al.hide_sets["Empty"] = {};
  al.finalize();
  return al;
}

TEST_CASE("guardedness") {
  CHECK(!validate_guarded(S("spec E { X = <a>.X }")).has_value());
  auto err = validate_guarded(S("spec E { X = <tau>.X }"));
  REQUIRE(err.has_value());
  CHECK(err->find("X") != std::string::npos);
  CHECK(!validate_guarded(S("spec E { X = <tau>.Y ; Y = <a>.X }")).has_value());
  CHECK(validate_guarded(S("spec E { X = <tau>.Y ; Y = <tau>.X }")).has_value());
}

TEST_CASE("spec_to_lts shapes") {
  Alphabet al = demo();
  auto l1 = spec_to_lts(al, S("spec E { X = <a>.X + b }"), Mode::Static);
  REQUIRE(l1.size() == 2);  // X and the termination state
  REQUIRE(l1.out[l1.initial].size() == 2);
  CHECK(!l1.truncated);
  bool self = false, exit = false;
  for (auto& tr : l1.out[l1.initial]) {
    if (tr.to == l1.initial && tr.step.key() == "a@eps") self = true;
    if (l1.terminated[tr.to] && tr.step.key() == "b@eps") exit = true;
  }
  CHECK(self);
  CHECK(exit);

  auto l2 = spec_to_lts(al, S("spec E { X = <l1::a>.Y ; Y = b }"), Mode::Static);
  CHECK(l2.size() == 3);
  CHECK(l2.out[l2.initial][0].step.key() == "a@l1");

  auto l3 = spec_to_lts(al, S("spec E { X = d }"), Mode::Static);
  CHECK(l3.size() == 1);
  CHECK(l3.out[0].empty());
}

TEST_CASE("projection of specifications") {
  Alphabet al = demo();
  auto E = S("spec E { X = <a>.X }");
  CHECK(print_term(project_spec(al, E, "X", 0)) == "d");
  CHECK(print_term(project_spec(al, E, "X", 2)) == "a ; (a ; d)");
  auto F = S("spec F { X = a }");
  CHECK(print_term(project_spec(al, F, "X", 1)) == "a");
  auto G = S("spec G { X = <l1::a // l2::b>.X }");
  CHECK(print_term(project_spec(al, G, "X", 1)) == "(l1 :: a << l2 :: b) ; d");
}

TEST_CASE("projection depth property") {
  // every maximal path of pi(n) has length exactly min(n, depth) and ends
  // in deadlock when cut
  Alphabet al = demo();
  auto E = S("spec E { X = <a>.Y ; Y = <b>.X }");
  for (int n : {1, 2, 3}) {
    auto t = project_spec(al, E, "X", n);
    Lts l = build_lts(al, t, Mode::Static);
    // longest path
    std::function<int(int)> depth = [&](int s) {
      int best = 0;
      for (auto& tr : l.out[s]) best = std::max(best, 1 + depth(tr.to));
      return best;
    };
    CHECK(depth(l.initial) == n);
  }
}

TEST_CASE("aip agreement with direct bisimulation") {
  Alphabet al = demo();
  auto k = *parse_kind("step-sl-strong");
  auto E = S("spec E { X = <a>.X }");
  auto F = S("spec F { Y = <a>.Y }");
  auto G = S("spec G { Y = <a>.Y + a }");

  CHECK(aip_check(al, E, "X", F, "Y", 2, k).outcome == Outcome::Equivalent);
  auto bad = aip_check(al, E, "X", G, "Y", 2, k);
  CHECK(bad.outcome == Outcome::Inequivalent);
  CHECK(bad.note.find("depth 1") != std::string::npos);
  CHECK(aip_check(al, E, "X", E, "X", 1, k).outcome == Outcome::Equivalent);
  // bound too small for the product upgrade
  auto two = S("spec H { X = <a>.Y ; Y = <b>.X }");
  auto low = aip_check(al, two, "X", two, "X", 1, k);
  CHECK(low.outcome == Outcome::Unknown);
  CHECK(low.bounds_hit);
}

TEST_CASE("clusters and exits") {
  Alphabet al = demo();
  auto E = S("spec E { X = <a>.X + b }");
  auto cs = clusters(al, E, "I");
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].vars == std::vector<std::string>{"X"});
  REQUIRE(cs[0].exits.size() == 1);
  CHECK(!cs[0].exits[0].has_target);

  auto F = S("spec F { X = <a>.Y ; Y = <a>.X + <c>.Z ; Z = e }");
  auto cf = clusters(al, F, "I");
  REQUIRE(cf.size() == 2);
  CHECK(cf[0].vars == std::vector<std::string>{"X", "Y"});
  REQUIRE(cf[0].exits.size() == 1);
  CHECK(cf[0].exits[0].target == "Z");
  CHECK(cf[1].vars == std::vector<std::string>{"Z"});

  auto ce = clusters(al, E, "Empty");
  REQUIRE(ce.size() == 1);  // no tau/I loops: singleton
  CHECK(ce[0].vars == std::vector<std::string>{"X"});
  CHECK(ce[0].exits.size() == 2);  // both summands leave
}

TEST_CASE("cfar builds the exit sum") {
  Alphabet al = demo();
  auto E = S("spec E { X = <a>.X + b }");
  auto r = cfar_apply(al, E, "I", "X");
  CHECK(!r.exit_free);
  CHECK(print_term(r.term) == "tau ; hide(I, b)");

  auto loop = S("spec L { X = <a>.X }");
  auto rf = cfar_apply(al, loop, "I", "X");
  CHECK(rf.exit_free);
  CHECK(print_term(rf.term) == "tau ; hide(I, d)");

  auto F = S("spec F { X = <a>.Y ; Y = <a>.X + <c>.Z ; Z = e }");
  auto r2 = cfar_apply(al, F, "I", "X");
  CHECK(print_term(r2.term) == "tau ; hide(I, c ; Z@F)");
}

TEST_CASE("cfar output is rooted branching equivalent to the abstraction") {
  Alphabet al = demo();
  SpecRegistry reg;
  auto E = S("spec E { X = <a>.X + b }");
  reg.specs["E"] = E;
  auto r = cfar_apply(al, E, "I", "X");
  TermPtr lhs = mk_seq(mk_tau(), mk_hide("I", mk_recref("X", "E")));
  auto k = *parse_kind("rb-step-sl");
  CHECK(check(al, lhs, r.term, k, {}, &reg).outcome == Outcome::Equivalent);
}

TEST_CASE("cluster report json") {
  Alphabet al = demo();
  auto cs = clusters(al, S("spec E { X = <a>.X + b }"), "I");
  auto j = clusters_json(cs);
  CHECK(j["clusters"].size() == 1);
  CHECK(j["clusters"][0]["vars"][0] == "X");
}
