#include "locpa/recursion.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace locpa {

namespace {

bool all_silent(const Summand& s) {
  for (const auto& la : s.actions)
    if (!is_tau(la.action)) return false;
  return true;
}

bool summand_in(const Summand& s, const std::set<std::string>& I) {
  for (const auto& la : s.actions)
    if (!is_tau(la.action) && !I.count(la.action)) return false;
  return true;
}

TermPtr head_term(const std::vector<LocatedAction>& acts) {
  TermPtr t;
  for (const auto& la : acts) {
    TermPtr atom = mk_act(la.action);
    if (!is_tau(la.action) && !la.at.empty()) atom = mk_locprefix(la.at, atom);
    t = t ? mk_bin(Op::LeftMerge, t, atom) : atom;
  }
  return t ? t : mk_delta();
}

}  // namespace

std::optional<std::string> validate_guarded(const LinearSpec& spec) {
  // edge X -> Y for every all-tau summand; a cycle is an unguarded tau loop
  std::map<std::string, std::vector<std::string>> g;
  for (const auto& v : spec.vars)
    for (const auto& s : spec.equations.at(v))
      if (s.has_target && all_silent(s)) g[v].push_back(s.target);

  std::map<std::string, int> state;  // 0 unseen, 1 on stack, 2 done
  std::vector<std::string> path;
  std::string witness;
  std::function<bool(const std::string&)> dfs = [&](const std::string& v) {
    state[v] = 1;
    path.push_back(v);
    for (const auto& w : g[v]) {
      if (state[w] == 1) {
        witness = "tau cycle:";
        auto it = std::find(path.begin(), path.end(), w);
        for (; it != path.end(); ++it) witness += " " + *it;
        return true;
      }
      if (state[w] == 0 && dfs(w)) return true;
    }
    path.pop_back();
    state[v] = 2;
    return false;
  };
  for (const auto& v : spec.vars)
    if (state[v] == 0 && dfs(v)) return witness;
  return std::nullopt;
}

Lts spec_to_lts(const Alphabet&, const LinearSpec& spec, Mode mode) {
  Lts lts;
  lts.mode = mode;
  std::map<std::string, int> idx;
  for (const auto& v : spec.vars) {
    idx[v] = static_cast<int>(lts.keys.size());
    lts.keys.push_back(v + "@" + spec.name);
    lts.terms.push_back(mk_recref(v, spec.name));
    lts.out.emplace_back();
    lts.terminated.push_back(0);
  }
  int sqrt_state = -1;
  auto need_sqrt = [&]() {
    if (sqrt_state < 0) {
      sqrt_state = static_cast<int>(lts.keys.size());
      lts.keys.push_back("√");
      lts.terms.push_back(nullptr);
      lts.out.emplace_back();
      lts.terminated.push_back(1);
    }
    return sqrt_state;
  };
  for (const auto& v : spec.vars) {
    for (const auto& s : spec.equations.at(v)) {
      Step st;
      for (const auto& la : s.actions) {
        if (is_tau(la.action))
          st.ghosts.push_back(kTau);
        else
          st.events.push_back({la.action, la.at});
      }
      std::sort(st.events.begin(), st.events.end());
      int to = s.has_target ? idx.at(s.target) : need_sqrt();
      lts.out[idx.at(v)].push_back({st, to});
    }
    auto& row = lts.out[idx.at(v)];
    std::sort(row.begin(), row.end(), [](const Lts::Tr& a, const Lts::Tr& b) {
      std::string ka = a.step.key(), kb = b.step.key();
      if (ka != kb) return ka < kb;
      return a.to < b.to;
    });
  }
  lts.initial = spec.vars.empty() ? 0 : idx.at(spec.vars.front());
  return lts;
}

TermPtr project_spec(const Alphabet&, const LinearSpec& spec, const std::string& var, int n) {
  if (!spec.has_var(var)) throw std::invalid_argument("unknown variable " + var);
  std::function<TermPtr(const std::string&, int)> go = [&](const std::string& v,
                                                           int depth) -> TermPtr {
    if (depth <= 0) return mk_delta();
    const auto& sums = spec.equations.at(v);
    if (sums.empty()) return mk_delta();
    TermPtr acc;
    for (const auto& s : sums) {
      TermPtr head = head_term(s.actions);
      TermPtr piece = s.has_target ? mk_seq(head, go(s.target, depth - 1)) : head;
      acc = acc ? mk_alt(acc, piece) : piece;
    }
    return acc;
  };
  return go(var, n);
}

Verdict aip_check(const Alphabet& al, const LinearSpec& s1, const std::string& v1,
                  const LinearSpec& s2, const std::string& v2, int N, const RelationKind& kind,
                  const Bounds& bounds) {
  Verdict out;
  if (auto e1 = validate_guarded(s1)) {
    out.note = s1.name + ": " + *e1;
    return out;
  }
  if (auto e2 = validate_guarded(s2)) {
    out.note = s2.name + ": " + *e2;
    return out;
  }
  for (int n = 0; n <= N; ++n) {
    TermPtr p1 = project_spec(al, s1, v1, n);
    TermPtr p2 = project_spec(al, s2, v2, n);
    Verdict v = check(al, p1, p2, kind, bounds);
    if (v.outcome == Outcome::Inequivalent) {
      v.note = "projections differ at depth " + std::to_string(n);
      return v;
    }
    if (v.outcome == Outcome::Unknown) {
      v.note = "projection check inconclusive at depth " + std::to_string(n);
      return v;
    }
  }
  size_t product = s1.vars.size() * s2.vars.size();
  if (static_cast<size_t>(N) >= product) {
    // finite-state argument: all projections up to the product bound agree
    out.outcome = Outcome::Equivalent;
    out.witness_size = product;
    out.note = "projections agree up to the product bound";
  } else {
    out.outcome = Outcome::Unknown;
    out.bounds_hit = true;
    out.note = "equivalent up to depth " + std::to_string(N);
  }
  return out;
}

std::vector<Cluster> clusters(const Alphabet& al, const LinearSpec& spec, const std::string& I) {
  if (!al.has_hide(I)) throw std::invalid_argument("unknown hidden set " + I);
  const auto& hidden = al.hide_set(I);

  // restricted graph: summands whose actions all lie in I or are silent
  std::map<std::string, std::set<std::string>> g;
  for (const auto& v : spec.vars)
    for (const auto& s : spec.equations.at(v))
      if (s.has_target && summand_in(s, hidden)) g[v].insert(s.target);

  // mutual reachability
  auto reach = [&](const std::string& from) {
    std::set<std::string> seen{from};
    std::vector<std::string> work{from};
    while (!work.empty()) {
      auto x = work.back();
      work.pop_back();
      for (const auto& y : g[x])
        if (seen.insert(y).second) work.push_back(y);
    }
    return seen;
  };
  std::map<std::string, std::set<std::string>> rs;
  for (const auto& v : spec.vars) rs[v] = reach(v);

  std::vector<Cluster> out;
  std::set<std::string> assigned;
  for (const auto& v : spec.vars) {
    if (assigned.count(v)) continue;
    Cluster c;
    for (const auto& w : spec.vars)
      if (rs[v].count(w) && rs[w].count(v)) {
        c.vars.push_back(w);
        assigned.insert(w);
      }
    std::set<std::string> members(c.vars.begin(), c.vars.end());
    std::set<Summand> exits;
    for (const auto& m : c.vars)
      for (const auto& s : spec.equations.at(m)) {
        bool exit;
        if (!s.has_target) {
          exit = true;  // terminating summands always leave
        } else {
          bool stays = members.count(s.target) && summand_in(s, hidden);
          exit = !stays;
        }
        if (exit) exits.insert(s);
      }
    c.exits.assign(exits.begin(), exits.end());
    out.push_back(std::move(c));
  }
  return out;
}

nlohmann::json clusters_json(const std::vector<Cluster>& cs) {
  nlohmann::json j;
  j["clusters"] = nlohmann::json::array();
  for (const auto& c : cs) {
    nlohmann::json e;
    e["vars"] = c.vars;
    e["exits"] = nlohmann::json::array();
    for (const auto& s : c.exits) {
      nlohmann::json x;
      x["actions"] = nlohmann::json::array();
      for (const auto& la : s.actions)
        x["actions"].push_back({{"a", la.action}, {"loc", la.at.str()}});
      if (s.has_target) x["target"] = s.target;
      e["exits"].push_back(x);
    }
    j["clusters"].push_back(e);
  }
  return j;
}

CfarResult cfar_apply(const Alphabet& al, const LinearSpec& spec, const std::string& I,
                      const std::string& var) {
  if (!spec.has_var(var)) throw std::invalid_argument("unknown variable " + var);
  auto cs = clusters(al, spec, I);
  const Cluster* mine = nullptr;
  for (const auto& c : cs)
    if (std::find(c.vars.begin(), c.vars.end(), var) != c.vars.end()) mine = &c;
  CfarResult out;
  TermPtr sum;
  for (const auto& s : mine->exits) {
    TermPtr head = head_term(s.actions);
    TermPtr piece = s.has_target ? mk_seq(head, mk_recref(s.target, spec.name)) : head;
    sum = sum ? mk_alt(sum, piece) : piece;
  }
  if (!sum) {
    sum = mk_delta();
    out.exit_free = true;
  }
  out.term = mk_seq(mk_tau(), mk_hide(I, sum));
  return out;
}

}  // namespace locpa
