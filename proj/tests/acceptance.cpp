// Acceptance suite: executes every acceptance property at its stated
// sample counts and tolerances and prints one pass/fail line per
// criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "locpa/gen.hpp"
#include "locpa/pes.hpp"
#include "locpa/recursion.hpp"
#include "locpa/rewrite.hpp"
#include "locpa/syntax.hpp"

using namespace locpa;

namespace {

bool g_fast = false;
int scale(int n) { return g_fast ? std::max(1, n / 20) : n; }

struct Line {
  bool pass;
  std::string detail;
};

TermPtr T(const std::string& s) { return *parse_term(s).value; }

Alphabet plain_abc() {
  Alphabet al;
  for (auto a : {"a", "b", "c"}) al.declare_action(a);
  al.finalize();
  return al;
}

// ---- criterion 1: axiom soundness suites ----

Line axiom_soundness() {
  Alphabet al = law_alphabet();
  int fails = 0, checks = 0;
  std::string first;
  auto run = [&](const std::string& suite, int n, const RelationKind& kind, int size) {
    set_law_term_size(size);
    bool finer = kind.flavor != Flavor::Step;
    for (const Law* law : laws_in_suite(suite)) {
      Rng rng((finer ? 0x2bull : 0x1aull) ^ std::hash<std::string>{}(law->name));
      const auto& gen =
          finer && law->instantiate_finer ? law->instantiate_finer : law->instantiate;
      for (int i = 0; i < n; ++i) {
        auto inst = gen(rng, al);
        if (!inst) continue;
        ++checks;
        Verdict v = check(al, inst->lhs, inst->rhs, kind);
        if (v.outcome != Outcome::Equivalent) {
          ++fails;
          if (first.empty()) first = law->name + " under " + kind_str(kind);
        }
      }
    }
  };
  for (auto s : {"batc", "aptc", "encap", "proj"}) {
    run(s, scale(500), *parse_kind("step-sl-strong"), 4);
    run(s, scale(100), *parse_kind("pomset-sl-strong"), 2);
    run(s, scale(100), *parse_kind("hp-sl-strong"), 2);
  }
  set_law_term_size(4);
  std::ostringstream os;
  os << checks << " instances, " << fails << " failures";
  if (!first.empty()) os << " (first: " << first << ")";
  return {fails == 0, os.str()};
}

// ---- criterion 2: tau/abstraction suites + discriminator ----

Line tau_suites() {
  Alphabet al = law_alphabet();
  int fails = 0, checks = 0;
  std::string first;
  RelationKind rb = *parse_kind("rb-step-sl");
  set_law_term_size(3);
  for (auto s : {"tau", "hide"}) {
    for (const Law* law : laws_in_suite(s)) {
      Rng rng(0x77ull ^ std::hash<std::string>{}(law->name));
      for (int i = 0; i < scale(200); ++i) {
        auto inst = law->instantiate(rng, al);
        if (!inst) continue;
        ++checks;
        Verdict v = check(al, inst->lhs, inst->rhs, rb);
        if (v.outcome != Outcome::Equivalent) {
          ++fails;
          if (first.empty())
            first = law->name + ": " + print_term(inst->lhs) + " vs " + print_term(inst->rhs);
        }
      }
    }
  }
  // discriminator sanity: B1 instances must fail the strong checker
  int b1_strong_fails = 0;
  for (const Law* law : laws_in_suite("tau")) {
    if (law->name != "B1") continue;
    Rng rng(0x78);
    for (int i = 0; i < scale(200); ++i) {
      auto inst = law->instantiate(rng, al);
      if (!inst) continue;
      if (check(al, inst->lhs, inst->rhs, *parse_kind("step-sl-strong")).outcome ==
          Outcome::Inequivalent)
        ++b1_strong_fails;
    }
  }
  set_law_term_size(4);
  std::ostringstream os;
  os << checks << " instances, " << fails << " failures; B1 strong-discriminator hits: "
     << b1_strong_fails;
  if (!first.empty()) os << " (first: " << first << ")";
  return {fails == 0 && b1_strong_fails >= 1, os.str()};
}

// ---- criterion 3: elimination on the exhaustive corpus ----

std::vector<TermPtr> batc_corpus() { return exhaustive_batc(g_fast ? 5 : 7, {"a", "b"}, "l1"); }

Line elimination() {
  Alphabet al = plain_abc();
  auto corpus = batc_corpus();
  const RuleSet& rs = ruleset("batc_sl");
  int bad = 0;
  std::string first;
  for (const auto& t : corpus) {
    long n = term_size(t);
    auto r = normalize(al, t, rs, 10 * n * n + 10);
    if (r.fuel_exhausted || !is_basic(r.term, System::BatcSl)) {
      ++bad;
      if (first.empty()) first = print_term(t);
    }
  }
  std::ostringstream os;
  os << corpus.size() << " terms, " << bad << " failures";
  if (!first.empty()) os << " (first: " << first << ")";
  return {bad == 0, os.str()};
}

// ---- criterion 4: completeness bridge ----

// canonical signature of the exact-word pomset behaviour (the relation the
// completeness argument matches summands with)
struct SigCalc {
  const Pes& p;
  std::map<std::string, std::string> memo;

  static std::string cfg_key(const Config& c) {
    std::string k;
    for (int e : c) k += std::to_string(e) + ",";
    return k;
  }

  std::string label_of(const std::set<int>& x) {
    // canonical encoding of the labelled located poset: minimum over
    // orderings of the event list
    std::vector<int> v(x.begin(), x.end());
    std::sort(v.begin(), v.end());
    std::string best;
    do {
      std::string enc;
      for (size_t i = 0; i < v.size(); ++i) {
        enc += p.events[v[i]].label + "@" + p.events[v[i]].at.str();
        for (size_t j = 0; j < i; ++j) enc += p.le(v[j], v[i]) ? "<" : ".";
        enc += "|";
      }
      if (best.empty() || enc < best) best = enc;
    } while (std::next_permutation(v.begin(), v.end()));
    return best;
  }

  std::string sig(const Config& c) {
    std::string key = cfg_key(c);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::set<std::string> entries;
    for (auto& t : aligned_pomsets(p, c)) entries.insert(label_of(t.fired) + "->" + sig(t.target));
    std::string out = p.successful(c) ? "D{" : "{";
    for (auto& e : entries) out += e + ";";
    out += "}";
    memo[key] = out;
    return out;
  }
};

Line completeness_bridge() {
  Alphabet al = plain_abc();
  auto corpus = batc_corpus();
  const RuleSet& rs = ruleset("batc_sl");

  std::map<std::string, int> nf_class, sig_class;
  std::vector<int> nf_of(corpus.size()), sig_of(corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i) {
    auto r = normalize(al, corpus[i], rs);
    std::string nf = print_term(ac_normal(r.term));
    auto [it, fresh] = nf_class.try_emplace(nf, static_cast<int>(nf_class.size()));
    (void)fresh;
    nf_of[i] = it->second;

    Pes p = term_to_pes(al, corpus[i], Mode::Static);
    SigCalc sc{p, {}};
    std::string sg = sc.sig({});
    auto [jt, fresh2] = sig_class.try_emplace(sg, static_cast<int>(sig_class.size()));
    (void)fresh2;
    sig_of[i] = jt->second;
  }
  // the two partitions must coincide
  std::map<int, int> fwd, bwd;
  int mismatches = 0;
  std::string first;
  for (size_t i = 0; i < corpus.size(); ++i) {
    auto f = fwd.find(nf_of[i]);
    if (f == fwd.end()) fwd[nf_of[i]] = sig_of[i];
    else if (f->second != sig_of[i]) {
      ++mismatches;
      if (first.empty()) first = print_term(corpus[i]);
    }
    auto b = bwd.find(sig_of[i]);
    if (b == bwd.end()) bwd[sig_of[i]] = nf_of[i];
    else if (b->second != nf_of[i]) {
      ++mismatches;
      if (first.empty()) first = print_term(corpus[i]);
    }
  }
  // cross-validate the signature against the checker on sampled pairs
  Rng rng(0x04);
  RelationKind exact = *parse_kind("pomset-dl-strong");
  RelationKind phi = *parse_kind("pomset-sl-strong");
  int spot = scale(400), spot_bad = 0, phi_bad = 0;
  for (int k = 0; k < spot; ++k) {
    const auto& t1 = corpus[rng.below(static_cast<int>(corpus.size()))];
    const auto& t2 = corpus[rng.below(static_cast<int>(corpus.size()))];
    Pes p1 = term_to_pes(al, t1, Mode::Static);
    Pes p2 = term_to_pes(al, t2, Mode::Static);
    SigCalc s1{p1, {}}, s2{p2, {}};
    bool sig_eq = s1.sig({}) == s2.sig({});
    Verdict v = check(al, t1, t2, exact, {}, nullptr, Mode::Static);
    if ((v.outcome == Outcome::Equivalent) != sig_eq) ++spot_bad;
    // soundness direction under the relaxed location association
    if (sig_eq) {
      Verdict w = check(al, t1, t2, phi, {}, nullptr, Mode::Static);
      if (w.outcome != Outcome::Equivalent) ++phi_bad;
    }
  }
  std::ostringstream os;
  os << corpus.size() << " terms, " << nf_class.size() << " normal-form classes, "
     << sig_class.size() << " behaviour classes, " << mismatches
     << " partition disagreements; spot checks: " << spot_bad << "/" << spot
     << " checker mismatches, " << phi_bad << " relaxed-soundness failures";
  if (!first.empty()) os << " (first: " << first << ")";
  return {mismatches == 0 && spot_bad == 0 && phi_bad == 0, os.str()};
}

// ---- criterion 5: hp/hhp separation ----

Line separation() {
  Alphabet al = plain_abc();
  struct Pair {
    const char* s;
    const char* t;
  } pairs[] = {{"(a+b)//c", "(a//c)+(b//c)"}, {"a//(b+c)", "(a//b)+(a//c)"}};
  RelationKind hp = *parse_kind("hp-sl-strong");
  RelationKind hhp = *parse_kind("hhp-sl-strong");
  std::ostringstream os;
  bool ok = true;
  for (auto& pr : pairs) {
    Verdict vh = check(al, T(pr.s), T(pr.t), hp);
    Verdict vx = check(al, T(pr.s), T(pr.t), hhp);
    bool replay = vx.outcome == Outcome::Inequivalent &&
                  replay_witness(al, T(pr.s), T(pr.t), hhp, vx.trace);
    bool this_ok =
        vh.outcome == Outcome::Equivalent && vx.outcome == Outcome::Inequivalent && replay;
    ok = ok && this_ok;
    os << pr.s << ": hp=" << (vh.outcome == Outcome::Equivalent ? "eq" : "NEQ")
       << " hhp=" << (vx.outcome == Outcome::Inequivalent ? "neq" : "EQ")
       << " replay=" << (replay ? "ok" : "FAIL") << "; ";
  }
  return {ok, os.str()};
}

// ---- criterion 6: expansion law ----

Line expansion() {
  Alphabet al = law_alphabet();
  RelationKind kind = *parse_kind("step-sl-strong");
  Rng rng(0x06);
  int n = scale(100), fails = 0;
  std::string first;
  for (int i = 0; i < n; ++i) {
    TermPtr p = gen_prefix_composition(rng, al);
    TermPtr q = expand_composition(al, p);
    if (check(al, p, q, kind).outcome != Outcome::Equivalent) {
      ++fails;
      if (first.empty()) first = print_term(p);
    }
  }
  std::ostringstream os;
  os << n << " compositions, " << fails << " failures";
  if (!first.empty()) os << " (first: " << first << ")";
  return {fails == 0, os.str()};
}

// ---- criterion 7: location laws ----

Line location_laws() {
  Alphabet al = law_alphabet();
  int fails = 0, checks = 0;
  std::string first;
  struct Chk {
    const char* kind;
    int size;
  } chks[] = {{"pomset-sl-strong", 3}, {"step-sl-strong", 4}, {"hp-sl-strong", 3}};
  for (auto& ck : chks) {
    set_law_term_size(ck.size);
    RelationKind kind = *parse_kind(ck.kind);
    for (const Law* law : laws_in_suite("ctc-location")) {
      Rng rng(0x07ull ^ std::hash<std::string>{}(std::string(law->name) + ck.kind));
      for (int i = 0; i < scale(200); ++i) {
        auto inst = law->instantiate(rng, al);
        if (!inst) continue;
        ++checks;
        if (check(al, inst->lhs, inst->rhs, kind).outcome != Outcome::Equivalent) {
          ++fails;
          if (first.empty()) first = law->name + " under " + ck.kind;
        }
      }
    }
  }
  set_law_term_size(4);
  std::ostringstream os;
  os << checks << " instances, " << fails << " failures";
  if (!first.empty()) os << " (first: " << first << ")";
  return {fails == 0, os.str()};
}

// ---- criterion 8: event structure / transition system agreement ----

Line pes_lts_agreement() {
  Alphabet al;
  for (auto a : {"a", "b"}) al.declare_action(a);
  al.finalize();
  auto corpus = batc_corpus();
  for (auto& t : exhaustive_parallel(g_fast ? 4 : 6, {"a", "b"}, "l1")) corpus.push_back(t);
  RelationKind exact = *parse_kind("step-dl-strong");
  int bad = 0;
  std::string first;
  for (const auto& t : corpus) {
    Lts sos = build_lts(al, t, Mode::Static);
    Pes p = term_to_pes(al, t, Mode::Static);
    Lts steps = pes_max_step_lts(p);
    Verdict v = check_step_lts(sos, steps, exact);
    if (v.outcome != Outcome::Equivalent) {
      ++bad;
      if (first.empty()) first = print_term(t);
    }
  }
  std::ostringstream os;
  os << corpus.size() << " terms, " << bad << " mismatches";
  if (!first.empty()) os << " (first: " << first << ")";
  return {bad == 0, os.str()};
}

// ---- criterion 9: AIP agreement ----

Line aip_agreement() {
  // projections of multi-action summands pass through the left-merge
  // ordering gate, so the actions must be totally ordered
  Alphabet al;
  al.declare_action("a");
  al.declare_action("b");
  al.declare_causal("a", "b");
  al.finalize();
  RelationKind kind = *parse_kind("step-sl-strong");
  Rng rng(0x09);
  int pairs = scale(300), bad = 0;
  std::string first;
  for (int k = 0; k < pairs; ++k) {
    LinearSpec s1 = gen_linear_spec(rng, "E", 1 + rng.below(3), 2, {"a", "b"}, false);
    LinearSpec s2 = gen_linear_spec(rng, "F", 1 + rng.below(3), 2, {"a", "b"}, false);
    std::string v1 = s1.vars.front(), v2 = s2.vars.front();
    int N = static_cast<int>(s1.vars.size() * s2.vars.size());
    Verdict via_aip = aip_check(al, s1, v1, s2, v2, N, kind);
    Lts l1 = spec_to_lts(al, s1, Mode::Static);
    Lts l2 = spec_to_lts(al, s2, Mode::Static);
    Verdict direct = check_step_lts(l1, l2, kind);
    if ((via_aip.outcome == Outcome::Equivalent) != (direct.outcome == Outcome::Equivalent) ||
        via_aip.outcome == Outcome::Unknown || direct.outcome == Outcome::Unknown) {
      ++bad;
      if (first.empty())
        first = "pair " + std::to_string(k) + " aip=" +
                std::to_string(static_cast<int>(via_aip.outcome)) + " direct=" +
                std::to_string(static_cast<int>(direct.outcome));
    }
  }
  std::ostringstream os;
  os << pairs << " spec pairs, " << bad << " disagreements";
  if (!first.empty()) os << " (" << first << ")";
  return {bad == 0, os.str()};
}

// ---- criterion 10: CFAR ----

Line cfar_soundness() {
  Alphabet al = law_alphabet();
  RelationKind rb = *parse_kind("rb-step-sl");
  Rng rng(0x0a);
  int want = scale(50), done = 0, bad = 0, guard = 0;
  std::string first;
  while (done < want && guard++ < want * 40) {
    LinearSpec sp = gen_linear_spec(rng, "E", 1 + rng.below(3), 2, {"a", "b"}, rng.flip());
    // only specs where the chosen variable's cluster actually loops
    auto cs = clusters(al, sp, "I");
    std::string var;
    for (auto& c : cs) {
      bool loops = false;
      for (auto& v : c.vars)
        for (auto& s : sp.equations.at(v))
          if (s.has_target &&
              std::find(c.vars.begin(), c.vars.end(), s.target) != c.vars.end()) {
            bool internal = true;
            for (auto& la : s.actions)
              if (!is_tau(la.action) && !al.hide_set("I").count(la.action)) internal = false;
            if (internal) loops = true;
          }
      if (loops) { var = c.vars.front(); break; }
    }
    if (var.empty()) continue;
    ++done;
    SpecRegistry reg;
    reg.specs["E"] = sp;
    auto res = cfar_apply(al, sp, "I", var);
    TermPtr lhs = mk_seq(mk_tau(), mk_hide("I", mk_recref(var, "E")));
    if (check(al, lhs, res.term, rb, {}, &reg).outcome != Outcome::Equivalent) {
      ++bad;
      if (first.empty()) first = "spec #" + std::to_string(done);
    }
  }
  std::ostringstream os;
  os << done << " specs with looping clusters, " << bad << " failures";
  if (!first.empty()) os << " (" << first << ")";
  return {bad == 0 && done == want, os.str()};
}

// ---- criterion 11: congruence sampling ----

TermPtr replace_ptr(const TermPtr& t, const TermPtr& from, const TermPtr& to) {
  if (t.get() == from.get()) return to;
  if (!t->a) return t;
  auto n = std::make_shared<Term>(*t);
  n->a = replace_ptr(t->a, from, to);
  if (t->b) n->b = replace_ptr(t->b, from, to);
  return n;
}

Line congruence() {
  Alphabet al = law_alphabet();
  RelationKind kind = *parse_kind("step-sl-strong");
  Rng rng(0x0b);
  auto pool = laws_in_suite("batc");
  for (auto s : {"aptc", "encap", "proj"})
    for (auto* l : laws_in_suite(s)) pool.push_back(l);
  int want = scale(200), done = 0, bad = 0, guard = 0;
  std::string first;
  set_law_term_size(3);
  while (done < want && guard++ < want * 30) {
    const Law* law = pool[rng.below(static_cast<int>(pool.size()))];
    auto inst = law->instantiate(rng, al);
    if (!inst) continue;
    if (check(al, inst->lhs, inst->rhs, kind).outcome != Outcome::Equivalent) continue;
    TermPtr c1 = gen_context(rng, al, inst->lhs);
    TermPtr c2 = replace_ptr(c1, inst->lhs, inst->rhs);
    ++done;
    if (check(al, c1, c2, kind).outcome != Outcome::Equivalent) {
      ++bad;
      if (first.empty()) first = law->name + " in " + print_term(c1);
    }
  }
  set_law_term_size(4);
  std::ostringstream os;
  os << done << " embedded pairs, " << bad << " failures";
  if (!first.empty()) os << " (first: " << first << ")";
  return {bad == 0 && done == want, os.str()};
}

// ---- criterion 12: determinism ----

Line determinism() {
  Alphabet al = law_alphabet();
  auto one_round = [&]() {
    std::ostringstream os;
    set_law_term_size(4);
    for (const Law* law : laws_in_suite("batc")) {
      Rng rng(0x0c ^ std::hash<std::string>{}(law->name));
      for (int i = 0; i < 40; ++i) {
        auto inst = law->instantiate(rng, al);
        if (!inst) continue;
        Verdict v = check(al, inst->lhs, inst->rhs, *parse_kind("step-sl-strong"));
        os << law->name << "|" << print_term(inst->lhs) << "|" << print_term(inst->rhs) << "|"
           << static_cast<int>(v.outcome) << "\n";
      }
    }
    Lts l = build_lts(al, T("l1::(a;b) // (c + a;tau)"), Mode::Static);
    os << export_dot(l) << export_lts_json(l);
    os << export_pes_json(term_to_pes(al, T("(a+b) || (c;e)"), Mode::Static));
    Rng rng(0x0d);
    for (int i = 0; i < 10; ++i) os << print_term(gen_prefix_composition(rng, al)) << "\n";
    return os.str();
  };
  std::string r1 = one_round();
  std::string r2 = one_round();
  bool ok = r1 == r2;
  return {ok, ok ? "two seeded rounds byte-identical (" + std::to_string(r1.size()) + " bytes)"
                 : "rounds differ"};
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--fast") == 0) g_fast = true;

  struct Crit {
    const char* name;
    std::function<Line()> run;
  } criteria[] = {
      {"axiom soundness suites", axiom_soundness},
      {"tau/abstraction suites", tau_suites},
      {"elimination", elimination},
      {"completeness bridge", completeness_bridge},
      {"hp/hhp separation", separation},
      {"expansion law", expansion},
      {"location laws", location_laws},
      {"PES/LTS agreement", pes_lts_agreement},
      {"AIP agreement", aip_agreement},
      {"CFAR soundness", cfar_soundness},
      {"congruence sampling", congruence},
      {"determinism", determinism},
  };

  int failed = 0;
  auto t0 = std::chrono::steady_clock::now();
  for (size_t i = 0; i < sizeof(criteria) / sizeof(criteria[0]); ++i) {
    auto c0 = std::chrono::steady_clock::now();
    Line line = criteria[i].run();
    auto secs =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - c0)
            .count() /
        1000.0;
    std::ostringstream os;
    os << "[" << (i + 1 < 10 ? " " : "") << i + 1 << "] " << criteria[i].name << ": "
       << (line.pass ? "PASS" : "FAIL") << " - " << line.detail << " [" << secs << "s]";
    std::cout << os.str() << std::endl;
    if (!line.pass) ++failed;
  }
  auto total =
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - t0)
          .count();
  std::cout << "ACCEPTANCE: " << (12 - failed) << "/12 PASS in " << total << "s" << std::endl;
  return failed == 0 ? 0 : 1;
}
