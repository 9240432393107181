#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "locpa/sos.hpp"
#include "locpa/syntax.hpp"

using namespace locpa;

static TermPtr T(const std::string& s) {
  auto r = parse_term(s);
  REQUIRE_MESSAGE(r.ok(), s);
  return *r.value;
}

static Alphabet demo() {
  Alphabet al;
  for (auto a : {"a", "b", "c", "e", "f"}) al.declare_action(a);
  al.declare_comm("a", "b", "c");
  al.declare_conflict("a", "b");
  al.declare_causal("a", "b");
  al.declare_causal("b", "c");
  al.declare_causal("a", "c");
  al.encap_sets["H"] = {"a"};
  al.hide_sets["I"] = {"a"};
  al.finalize();
  return al;
}

// step key -> target text (or the termination mark)
static std::multiset<std::string> arrows(const TermPtr& t, Mode mode = Mode::Static) {
  static Alphabet al = demo();
  SosCtx ctx{&al, nullptr, mode, has_ctc_marker(t)};
  std::multiset<std::string> out;
  for (auto& s : successors(ctx, t)) {
    std::string tgt = s.target ? print_term(canonical(s.target)) : "end";
    out.insert(s.step.key() + " -> " + tgt);
  }
  return out;
}

using SS = std::multiset<std::string>;

TEST_CASE("atoms and location prefixes") {
  CHECK(arrows(T("l1 :: a")) == SS{"a@l1 -> end"});
  CHECK(arrows(T("a")) == SS{"a@eps -> end"});
  CHECK(arrows(T("d")) == SS{});
  CHECK(arrows(T("0")) == SS{});
  CHECK(arrows(T("tau")) == SS{"tau -> end"});
  CHECK(arrows(T("l1 :: (l2 :: e)")) == SS{"e@l1.l2 -> end"});
}

TEST_CASE("sequence, choice") {
  CHECK(arrows(T("a ; b")) == SS{"a@eps -> b"});
  CHECK(arrows(T("a + b")) == SS{"a@eps -> end", "b@eps -> end"});
  CHECK(arrows(T("l1::e ; f")) == SS{"e@l1 -> f"});
}

TEST_CASE("parallel requires both components to move") {
  CHECK(arrows(T("a // b")) == SS{"a@eps,b@eps -> end"});
  CHECK(arrows(T("e // (f ; e)")) == SS{"e@eps,f@eps -> e"});
  // a lone component cannot move in pure APTC even when the other side
  // is stuck
  CHECK(arrows(T("e // d")) == SS{});
}

TEST_CASE("communication merge") {
  CHECK(arrows(T("a | b")) == SS{"c@eps -> end"});
  CHECK(arrows(T("e | f")) == SS{});  // gamma undefined
  CHECK(arrows(T("(l1::a) | (l2::b)")) == SS{"c@eps -> end"});
  CHECK(arrows(T("(l1.l2::a) | (l1.l3::b)")) == SS{"c@l1 -> end"});
  CHECK(arrows(T("(a;e) | b")) == SS{"c@eps -> e"});
}

TEST_CASE("whole merge is parallel plus communication") {
  CHECK(arrows(T("a || b")) == SS{"a@eps,b@eps -> end", "c@eps -> end"});
  CHECK(arrows(T("e || f")) == SS{"e@eps,f@eps -> end"});
}

TEST_CASE("left merge gate uses the causal order") {
  CHECK(arrows(T("a << b")) == SS{"a@eps,b@eps -> end"});
  CHECK(arrows(T("b << a")) == SS{});  // least event sits on the right
  CHECK(arrows(T("a << a")) == SS{"a@eps,a@eps -> end"});
  CHECK(arrows(T("(a ; e) << b")) == SS{"a@eps,b@eps -> e"});
  CHECK(arrows(T("a << tau")) == SS{"a@eps -> end"});  // silent right side
}

TEST_CASE("multi prefix") {
  CHECK(arrows(T("<a, e> . 0")) == SS{"a@eps,e@eps -> 0"});
  CHECK(arrows(T("<a, b> . 0")) == SS{});  // Act2: communicable pair blocked
  CHECK(arrows(T("<l1::a> . (e ; f)")) == SS{"a@l1 -> e ; f"});
  CHECK(arrows(T("<tau> . e")) == SS{"tau -> e"});
}

TEST_CASE("encapsulation, restriction, hiding, relabelling") {
  CHECK(arrows(T("encap(H, a)")) == SS{});
  CHECK(arrows(T("encap(H, b)")) == SS{"b@eps -> end"});
  CHECK(arrows(T("hide(I, a ; b)")) == SS{"tau -> hide(I, b)"});
  CHECK(arrows(T("hide(I, b)")) == SS{"b@eps -> end"});
  CHECK(arrows(T("restrict({e}, e . 0 + f . 0)")) == SS{"f@eps -> restrict({e}, 0)"});
  // restriction blocks communication partners too
  CHECK(arrows(T("restrict({a}, b . 0)")) == SS{});
  Alphabet al = demo();
  al.relabellings["g"] = {{"e", "f"}};
  SosCtx ctx{&al, nullptr, Mode::Static, true};
  auto ss = successors(ctx, T("relabel(g, e ; f)"));
  REQUIRE(ss.size() == 1);
  CHECK(ss[0].step.key() == "f@eps");
}

TEST_CASE("projection") {
  CHECK(arrows(T("pi(1, a ; b)")) == SS{"a@eps -> pi(0, b)"});
  CHECK(arrows(T("pi(0, a)")) == SS{});
  CHECK(arrows(T("pi(2, a)")) == SS{"a@eps -> end"});
}

TEST_CASE("theta follows its laws under declared conflict") {
  // theta(a+b) with #(a,b): both branches silence to tau
  CHECK(arrows(T("theta(a + b)")) == SS{"tau -> end"});
  CHECK(arrows(T("theta(e + f)")) == SS{"e@eps -> end", "f@eps -> end"});
  CHECK(arrows(T("theta(a)")) == SS{"a@eps -> end"});
}

TEST_CASE("unless silences by conflict and causal inheritance") {
  CHECK(arrows(T("unless(a, b)")) == SS{"tau -> end"});
  CHECK(arrows(T("unless(a, e)")) == SS{"a@eps -> end"});
  CHECK(arrows(T("unless(c, a)")) == SS{"tau -> end"});  // #(a,b), b<=c
  CHECK(arrows(T("unless(a, d)")) == SS{"a@eps -> end"});
  CHECK(arrows(T("unless(d, a)")) == SS{});
  CHECK(arrows(T("unless(a ; e, b)")) == SS{"tau -> unless(e, b)"});
}

TEST_CASE("CTC composition: lone moves only when the other side is stuck") {
  // prefix notation activates the CTC rules
  CHECK(arrows(T("a . 0 // 0")) == SS{"a@eps -> 0 // 0"});
  CHECK(arrows(T("e . 0 // f . 0")) == SS{"e@eps,f@eps -> 0 // 0"});
  // communicable pair: Com3 blocked, Com4 fires tau
  CHECK(arrows(T("a . 0 // b . 0")) == SS{"tau -> 0 // 0"});
  // non-communicable pairs in a sum both move
  CHECK(arrows(T("(e . 0 + f . 0) // f . 0")) ==
        SS{"e@eps,f@eps -> 0 // 0", "f@eps,f@eps -> 0 // 0"});
}

TEST_CASE("dynamic mode mints canonical locations") {
  CHECK(arrows(T("a . 0"), Mode::Dynamic) == SS{"a@loc0 -> loc0 :: 0"});
  CHECK(arrows(T("e"), Mode::Dynamic) == SS{"e@loc0 -> end"});
  CHECK(arrows(T("e ; f"), Mode::Dynamic) == SS{"e@loc0 -> loc0 :: f"});
  CHECK(arrows(T("e // f"), Mode::Dynamic) == SS{"e@loc0,f@loc1 -> end"});
  CHECK(arrows(T("tau ; e"), Mode::Dynamic) == SS{"tau -> e"});
}

TEST_CASE("dynamic locations stay distinct along paths") {
  Alphabet al = demo();
  auto lts = build_lts(al, T("e ; (f ; e)"), Mode::Dynamic);
  // chain: e@loc0, then f@loc0.loc1, then e@loc0.loc1.loc2
  std::set<std::string> labels;
  for (size_t i = 0; i < lts.size(); ++i)
    for (auto& tr : lts.out[i]) labels.insert(tr.step.key());
  CHECK(labels == std::set<std::string>{"e@loc0", "f@loc0.loc1", "e@loc0.loc1.loc2"});
}

TEST_CASE("weak successors absorb tau") {
  Alphabet al = demo();
  SosCtx ctx{&al, nullptr, Mode::Static, false};
  auto w = weak_successors(ctx, T("tau ; e"));
  REQUIRE(w.size() == 1);
  CHECK(w[0].step.key() == "e@eps");
  CHECK(w[0].target == nullptr);
  CHECK(weak_successors(ctx, T("e")).size() == 1);
  CHECK(weak_successors(ctx, T("tau ; tau ; 0")).empty());
  auto w2 = weak_successors(ctx, T("e ; tau"));
  REQUIRE(w2.size() == 2);  // e -> tau and e => end
}

TEST_CASE("build_lts shapes") {
  Alphabet al = demo();
  auto chain = build_lts(al, T("e ; f"), Mode::Static);
  CHECK(chain.size() == 3);
  CHECK(!chain.truncated);
  int end = -1;
  for (size_t i = 0; i < chain.size(); ++i)
    if (chain.terminated[i]) end = static_cast<int>(i);
  REQUIRE(end >= 0);
  CHECK(chain.out[end].empty());

  SpecRegistry reg;
  auto sp = parse_spec("spec E { X = <e>.X }");
  REQUIRE(sp.ok());
  reg.specs["E"] = *sp.value;
  auto loop = build_lts(al, T("X@E"), Mode::Static, {}, &reg);
  CHECK(loop.size() == 1);
  REQUIRE(loop.out[0].size() == 1);
  CHECK(loop.out[0][0].to == 0);

  Bounds tiny;
  tiny.max_states = 1;
  auto cut = build_lts(al, T("e ; f"), Mode::Static, tiny);
  CHECK(cut.truncated);
}

TEST_CASE("exports are deterministic and well formed") {
  Alphabet al = demo();
  auto lts = build_lts(al, T("e ; f + e"), Mode::Static);
  auto d1 = export_dot(lts);
  auto d2 = export_dot(build_lts(al, T("e ; f + e"), Mode::Static));
  CHECK(d1 == d2);
  CHECK(d1.find("doublecircle") != std::string::npos);
  auto j = export_lts_json(lts);
  CHECK(j.find("\"transitions\"") != std::string::npos);
}

TEST_CASE("static location words extend by exactly the prefix nesting") {
  // instrumented check of the Loc rule on nested prefixes
  auto t = T("l1 :: (l2 :: (e ; l3 :: f))");
  auto a1 = arrows(t);
  REQUIRE(a1.size() == 1);
  CHECK(a1.begin()->rfind("e@l1.l2", 0) == 0);
  Alphabet al = demo();
  auto lts = build_lts(al, t, Mode::Static);
  std::set<std::string> keys;
  for (size_t i = 0; i < lts.size(); ++i)
    for (auto& tr : lts.out[i]) keys.insert(tr.step.key());
  CHECK(keys == std::set<std::string>{"e@l1.l2", "f@l1.l2.l3"});
}
