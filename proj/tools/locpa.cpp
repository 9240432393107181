// locpa - a workbench for truly concurrent process calculi with localities:
// normalization by the axiom systems, located transition systems and event
// structures, location-sensitive equivalence checking, and randomized law
// suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "locpa/equiv.hpp"
#include "locpa/gen.hpp"
#include "locpa/pes.hpp"
#include "locpa/recursion.hpp"
#include "locpa/rewrite.hpp"
#include "locpa/syntax.hpp"

using namespace locpa;

namespace {

struct Common {
  std::string alphabet_path;
  std::string specs_path;
  std::string bounds_text;
  std::string mode_text = "static";
  uint64_t seed = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-a,--alphabet", c.alphabet_path, "alphabet file");
  cmd->add_option("--specs", c.specs_path, "file with linear recursive specifications");
  cmd->add_option("--bounds", c.bounds_text, "states=..,depth=..,phi=..,fuel=..");
  cmd->add_option("--mode", c.mode_text, "static|dynamic")
      ->check(CLI::IsMember({"static", "dynamic"}));
}

int fail_with(const std::string& where, const Diagnostic& d) {
  std::cerr << where << ":" << d.str() << "\n";
  return 2;
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// unknown names used by the term are declared on the fly so terms can be
// explored without an alphabet file
void auto_declare(Alphabet& al, const TermPtr& t) {
  if (t->op == Op::Act) al.declare_action(t->name);
  for (const auto& it : t->prefix_items)
    if (!is_tau(it.action)) al.declare_action(it.action);
  if (t->a) auto_declare(al, t->a);
  if (t->b) auto_declare(al, t->b);
}

struct Setup {
  Alphabet al;
  SpecRegistry reg;
  Bounds bounds;
  Mode mode = Mode::Static;
};

int load_setup(const Common& c, Setup& s) {
  if (!c.alphabet_path.empty()) {
    auto text = slurp(c.alphabet_path);
    if (!text) {
      std::cerr << "cannot read " << c.alphabet_path << "\n";
      return 2;
    }
    auto r = parse_alphabet(*text);
    if (!r.ok()) return fail_with(c.alphabet_path, *r.error);
    s.al = *r.value;
  }
  if (!c.specs_path.empty()) {
    auto text = slurp(c.specs_path);
    if (!text) {
      std::cerr << "cannot read " << c.specs_path << "\n";
      return 2;
    }
    auto r = parse_spec_file(*text);
    if (!r.ok()) return fail_with(c.specs_path, *r.error);
    for (auto& sp : *r.value) {
      for (const auto& v : sp.vars)
        for (const auto& sum : sp.equations.at(v))
          for (const auto& la : sum.actions)
            if (!is_tau(la.action)) s.al.declare_action(la.action);
      s.reg.specs[sp.name] = sp;
    }
    s.al.finalize();
  }
  if (!c.bounds_text.empty()) {
    std::stringstream ss(c.bounds_text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      auto eq = piece.find('=');
      if (eq == std::string::npos) {
        std::cerr << "bad --bounds entry: " << piece << "\n";
        return 2;
      }
      std::string key = piece.substr(0, eq);
      long val = std::atol(piece.c_str() + eq + 1);
      if (key == "states") s.bounds.max_states = static_cast<size_t>(val);
      else if (key == "depth") s.bounds.max_depth = static_cast<size_t>(val);
      else if (key == "phi") s.bounds.phi_max = static_cast<size_t>(val);
      else if (key == "fuel") s.bounds.fuel = val;
      else {
        std::cerr << "bad --bounds key: " << key << "\n";
        return 2;
      }
    }
  }
  s.mode = c.mode_text == "dynamic" ? Mode::Dynamic : Mode::Static;
  return 0;
}

TermPtr parse_or_exit(Setup& s, const std::string& text, int& rc) {
  auto r = parse_term(text);
  if (!r.ok()) {
    std::cerr << "term:" << r.error->str() << "\n";
    rc = 2;
    return nullptr;
  }
  auto_declare(s.al, *r.value);
  s.al.finalize();
  return *r.value;
}

nlohmann::json trace_json(const Trace& tr) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& st : tr) {
    nlohmann::json j;
    j["rule"] = st.rule;
    j["position"] = st.path;
    j["before"] = print_term(st.before);
    j["after"] = print_term(st.after);
    out.push_back(j);
  }
  return out;
}

uint64_t env_seed() {
  if (const char* e = std::getenv("LOCPA_SEED")) return std::strtoull(e, nullptr, 10);
  return 1;
}

int run_laws(Setup& s, const std::string& suite, int samples, uint64_t seed, int size,
             bool as_json, const std::string& kind_override) {
  Alphabet al = s.al.actions.empty() ? law_alphabet() : s.al;
  set_law_term_size(size);
  nlohmann::json report;
  report["suite"] = suite;
  report["seed"] = seed;
  report["samples"] = samples;
  report["results"] = nlohmann::json::array();
  int total_pass = 0, total_fail = 0;
  std::ostringstream text;
  text << "suite: " << suite << "  seed: " << seed << "  samples: " << samples << "\n";

  auto record = [&](const std::string& name, int pass, int fail,
                    const std::string& first_failure) {
    nlohmann::json r;
    r["law"] = name;
    r["pass"] = pass;
    r["fail"] = fail;
    if (!first_failure.empty()) r["first_failure"] = first_failure;
    report["results"].push_back(r);
    text << "  " << name << ": " << pass << "/" << (pass + fail) << " pass";
    if (fail) text << "  first failure: " << first_failure;
    text << "\n";
    total_pass += pass;
    total_fail += fail;
  };

  auto pick_kind = [&](const std::string& st) {
    if (!kind_override.empty()) {
      auto k = parse_kind(kind_override);
      if (k) return *k;
    }
    return suite_checker(st);
  };
  if (suite == "expansion") {
    Rng rng(seed);
    auto kind = pick_kind(suite);
    int pass = 0, fail = 0;
    std::string first;
    for (int i = 0; i < samples; ++i) {
      TermPtr p = gen_prefix_composition(rng, al);
      TermPtr q = expand_composition(al, p);
      Verdict v = check(al, p, q, kind, s.bounds);
      if (v.outcome == Outcome::Equivalent) ++pass;
      else {
        ++fail;
        if (first.empty()) first = print_term(p);
      }
    }
    record("expansion", pass, fail, first);
  } else if (suite == "cfar") {
    Rng rng(seed);
    auto kind = pick_kind(suite);
    int pass = 0, fail = 0;
    std::string first;
    for (int i = 0; i < samples; ++i) {
      LinearSpec sp = gen_linear_spec(rng, "E", 1 + rng.below(3), 2, {"a", "b"}, false);
      SpecRegistry reg;
      reg.specs["E"] = sp;
      std::string var = sp.vars[rng.below(static_cast<int>(sp.vars.size()))];
      auto res = cfar_apply(al, sp, "I", var);
      TermPtr lhs = mk_seq(mk_tau(), mk_hide("I", mk_recref(var, "E")));
      Verdict v = check(al, lhs, res.term, kind, s.bounds, &reg);
      if (v.outcome == Outcome::Equivalent) ++pass;
      else {
        ++fail;
        if (first.empty()) first = var + " of a generated specification";
      }
    }
    record("cfar", pass, fail, first);
  } else {
    auto laws = laws_in_suite(suite);
    if (laws.empty()) {
      std::cerr << "unknown suite: " << suite << "\n";
      return 2;
    }
    RelationKind kind = pick_kind(suite);
    bool finer = kind.flavor == Flavor::Pomset || kind.flavor == Flavor::Hp ||
                 kind.flavor == Flavor::Hhp;
    for (const Law* law : laws) {
      Rng rng(seed ^ std::hash<std::string>{}(law->name));
      int pass = 0, fail = 0;
      std::string first;
      const auto& gen =
          finer && law->instantiate_finer ? law->instantiate_finer : law->instantiate;
      for (int i = 0; i < samples; ++i) {
        auto inst = gen(rng, al);
        if (!inst) continue;
        Verdict v = check(al, inst->lhs, inst->rhs, kind, s.bounds);
        if (v.outcome == Outcome::Equivalent) ++pass;
        else {
          ++fail;
          if (first.empty())
            first = print_term(inst->lhs) + "  vs  " + print_term(inst->rhs);
        }
      }
      record(law->name, pass, fail, first);
    }
  }
  text << "total: " << total_pass << " pass, " << total_fail << " fail\n";
  report["pass"] = total_pass;
  report["fail"] = total_fail;
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text.str();
  return total_fail == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"process algebra workbench for truly concurrent calculi with localities"};
  app.require_subcommand(1);

  Common c;
  c.seed = env_seed();

  // norm
  auto* norm = app.add_subcommand("norm", "normalize a term with an axiom system");
  std::string norm_term, rules_name = "strong";
  bool norm_trace = false;
  add_common(norm, c);
  norm->add_option("term", norm_term, "term text")->required();
  norm->add_option("--rules", rules_name,
                   "batc_sl|aptc_sl|encap|proj|tau_laws|hide|strong|branching");
  norm->add_flag("--trace", norm_trace, "emit the rewrite trace as JSON lines");

  // eq
  auto* eq = app.add_subcommand("eq", "decide an equivalence between two terms");
  std::string eq_t1, eq_t2, kind_text = "step-sl-strong";
  bool eq_json = false;
  add_common(eq, c);
  eq->add_option("t1", eq_t1)->required();
  eq->add_option("t2", eq_t2)->required();
  eq->add_option("--kind", kind_text, "e.g. step-sl-strong, pomset-dl-weak, rb-step-sl");
  eq->add_flag("--json", eq_json);

  // laws
  auto* laws = app.add_subcommand("laws", "run a randomized law suite");
  std::string suite;
  int samples = 100, law_size = 4;
  bool laws_json = false;
  add_common(laws, c);
  laws->add_option("--suite", suite,
                   "batc|aptc|encap|proj|tau|hide|ctc-static|ctc-location|expansion|cfar")
      ->required();
  laws->add_option("-n,--samples", samples);
  laws->add_option("--seed", c.seed);
  laws->add_option("--size", law_size, "metavariable term size cap");
  std::string laws_kind;
  laws->add_option("--kind", laws_kind, "override the suite's checker (e.g. step-sl-strong)");
  laws->add_flag("--json", laws_json);

  // lts
  auto* lts = app.add_subcommand("lts", "generate the located transition system");
  std::string lts_term;
  bool lts_dot = false, lts_json = false, lts_dyn = false;
  add_common(lts, c);
  lts->add_option("term", lts_term)->required();
  lts->add_flag("--dot", lts_dot);
  lts->add_flag("--json", lts_json);
  lts->add_flag("--dyn", lts_dyn, "shorthand for --mode dynamic");

  // pes
  auto* pes = app.add_subcommand("pes", "compile to a prime event structure");
  std::string pes_term;
  bool pes_json = true;
  add_common(pes, c);
  pes->add_option("term", pes_term)->required();
  pes->add_flag("--json", pes_json);

  CLI11_PARSE(app, argc, argv);

  Setup s;
  if (int rc = load_setup(c, s)) return rc;

  if (norm->parsed()) {
    int rc = 0;
    TermPtr t = parse_or_exit(s, norm_term, rc);
    if (!t) return rc;
    const RuleSet* rs;
    try {
      rs = &ruleset(rules_name);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    auto r = normalize(s.al, t, *rs, s.bounds.fuel);
    if (r.fuel_exhausted) {
      std::cerr << "normalize: fuel exhausted (divergence sentinel)\n";
      return 2;
    }
    if (norm_trace)
      for (const auto& st : trace_json(r.trace)) std::cout << st.dump() << "\n";
    std::cout << print_term(r.term) << "\n";
    return 0;
  }

  if (eq->parsed()) {
    int rc = 0;
    TermPtr t1 = parse_or_exit(s, eq_t1, rc);
    if (!t1) return rc;
    TermPtr t2 = parse_or_exit(s, eq_t2, rc);
    if (!t2) return rc;
    auto kind = parse_kind(kind_text);
    if (!kind) {
      std::cerr << "unknown kind: " << kind_text << "\n";
      return 2;
    }
    std::optional<Mode> mode;
    if (c.mode_text == "dynamic") mode = Mode::Dynamic;
    Verdict v;
    try {
      v = check(s.al, t1, t2, *kind, s.bounds, &s.reg, mode);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    if (eq_json)
      std::cout << v.to_json(*kind).dump(2) << "\n";
    else {
      std::cout << (v.outcome == Outcome::Equivalent     ? "equivalent"
                    : v.outcome == Outcome::Inequivalent ? "inequivalent"
                                                         : "unknown");
      if (!v.note.empty()) std::cout << "  (" << v.note << ")";
      std::cout << "\n";
      if (v.outcome == Outcome::Inequivalent) std::cout << v.trace.dump(2) << "\n";
    }
    return v.outcome == Outcome::Equivalent ? 0 : v.outcome == Outcome::Inequivalent ? 1 : 3;
  }

  if (laws->parsed()) return run_laws(s, suite, samples, c.seed, law_size, laws_json, laws_kind);

  if (lts->parsed()) {
    int rc = 0;
    TermPtr t = parse_or_exit(s, lts_term, rc);
    if (!t) return rc;
    Mode mode = lts_dyn ? Mode::Dynamic : s.mode;
    Lts l;
    try {
      l = build_lts(s.al, t, mode, s.bounds, &s.reg);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    if (l.truncated) std::cerr << "warning: state space truncated\n";
    if (lts_dot)
      std::cout << export_dot(l);
    else
      std::cout << export_lts_json(l) << "\n";
    return 0;
  }

  if (pes->parsed()) {
    int rc = 0;
    TermPtr t = parse_or_exit(s, pes_term, rc);
    if (!t) return rc;
    try {
      Pes p = term_to_pes(s.al, t, s.mode);
      std::cout << export_pes_json(p) << "\n";
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    return 0;
  }

  return 0;
}
