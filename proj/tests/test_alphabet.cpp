#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "locpa/alphabet.hpp"
#include "locpa/syntax.hpp"

using namespace locpa;

static Alphabet demo() {
  Alphabet al;
  for (auto a : {"a", "b", "c"}) al.declare_action(a);
  al.declare_comm("a", "b", "c");
  al.declare_conflict("a", "b");
  al.declare_causal("a", "b");
  al.declare_causal("b", "c");
  al.finalize();
  return al;
}

TEST_CASE("gamma is total with d default and symmetric") {
  Alphabet al = demo();
  CHECK(al.gamma("a", "b") == "c");
  CHECK(al.gamma("b", "a") == "c");
  CHECK(al.gamma("a", "tau") == "d");
  CHECK(al.gamma("tau", "a") == "d");
  CHECK(al.gamma("a", "a") == "d");
  CHECK(al.gamma("c", "c") == "d");
}

TEST_CASE("causal closure and reflexivity") {
  Alphabet al = demo();
  CHECK(al.causal_le("a", "a"));
  CHECK(al.causal_le("a", "b"));
  CHECK(al.causal_le("a", "c"));  // transitive
  CHECK(al.causal_le("b", "c"));
  CHECK(!al.causal_le("c", "a"));
  CHECK(!al.causal_le("b", "a"));
}

TEST_CASE("conflict is symmetric and irreflexive") {
  Alphabet al = demo();
  CHECK(al.in_conflict("a", "b"));
  CHECK(al.in_conflict("b", "a"));
  CHECK(!al.in_conflict("a", "a"));
  CHECK(!al.in_conflict("a", "c"));
}

TEST_CASE("relabel defaults to identity and fixes tau") {
  Alphabet al = demo();
  al.relabellings["f"] = {{"a", "b"}};
  CHECK(al.relabel("f", "a") == "b");
  CHECK(al.relabel("f", "tau") == "tau");
  CHECK(al.relabel("f", "c") == "c");
  CHECK_THROWS(al.relabel("nope", "a"));
}

TEST_CASE("validate flags violations") {
  Alphabet ok = demo();
  CHECK(ok.validate().empty());

  Alphabet bad;
  bad.declare_action("a");
  bad.declare_action("b");
  bad.declare_causal("a", "b");
  bad.declare_causal("b", "a");
  bad.conflict.insert({"a", "a"});
  bad.finalize();
  auto errs = bad.validate();
  bool cyclic = false, refl = false;
  for (auto& e : errs) {
    if (e.find("cyclic causal") != std::string::npos) cyclic = true;
    if (e.find("reflexive conflict") != std::string::npos) refl = true;
  }
  CHECK(cyclic);
  CHECK(refl);
}

TEST_CASE("alphabet file round trip") {
  std::string text =
      "# demo alphabet\n"
      "actions: a b c\n"
      "comm: a * b = c\n"
      "conflict: a # b\n"
      "causal: a < b\n"
      "causal: b < c   # chain\n"
      "relabel f: a -> b, b -> a\n"
      "encap H: {a}\n"
      "hide I: {c}\n";
  auto r = parse_alphabet(text);
  REQUIRE(r.ok());
  const Alphabet& al = *r.value;
  CHECK(al.actions.size() == 3);
  CHECK(al.gamma("a", "b") == "c");
  CHECK(al.in_conflict("a", "b"));
  CHECK(al.causal_le("a", "c"));
  CHECK(al.relabel("f", "a") == "b");
  CHECK(al.encap_set("H").count("a") == 1);
  CHECK(al.hide_set("I").count("c") == 1);
}

TEST_CASE("alphabet file errors carry line info") {
  auto r = parse_alphabet("actions: a\nbogus a b\n");
  CHECK(!r.ok());
  CHECK(r.error->span.line == 2);
}

TEST_CASE("comm partners for restriction") {
  Alphabet al = demo();
  auto p = al.comm_partners({"a"});
  CHECK(p.count("b") == 1);
  CHECK(p.count("c") == 0);
}
