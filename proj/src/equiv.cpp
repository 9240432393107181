#include "locpa/equiv.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace locpa {

std::optional<RelationKind> parse_kind(const std::string& s) {
  RelationKind k;
  bool flavor_seen = false;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, '-')) {
    if (tok == "pomset") { k.flavor = Flavor::Pomset; flavor_seen = true; }
    else if (tok == "step") { k.flavor = Flavor::Step; flavor_seen = true; }
    else if (tok == "hp") { k.flavor = Flavor::Hp; flavor_seen = true; }
    else if (tok == "hhp") { k.flavor = Flavor::Hhp; flavor_seen = true; }
    else if (tok == "sl" || tok == "static") k.locality = Locality::StaticLoc;
    else if (tok == "dl" || tok == "dynamic") k.locality = Locality::DynamicLoc;
    else if (tok == "strong") k.strength = Strength::Strong;
    else if (tok == "weak") k.strength = Strength::Weak;
    else if (tok == "branching" || tok == "b") k.strength = Strength::Branching;
    else if (tok == "rb" || tok == "rooted" || tok == "rootedbranching")
      k.strength = Strength::RootedBranching;
    else return std::nullopt;
  }
  if (!flavor_seen) return std::nullopt;
  return k;
}

std::string kind_str(const RelationKind& k) {
  std::string f = k.flavor == Flavor::Pomset ? "pomset"
                  : k.flavor == Flavor::Step ? "step"
                  : k.flavor == Flavor::Hp   ? "hp"
                                             : "hhp";
  std::string l = k.locality == Locality::StaticLoc ? "sl" : "dl";
  std::string s = k.strength == Strength::Strong      ? "strong"
                  : k.strength == Strength::Weak      ? "weak"
                  : k.strength == Strength::Branching ? "branching"
                                                      : "rb";
  return f + "-" + l + "-" + s;
}

bool cla_consistent(const LocAssoc& phi) {
  for (const auto& p : phi.pairs)
    for (const auto& q : phi.pairs)
      if (loc_independent(p.first, q.first) != loc_independent(p.second, q.second)) return false;
  return true;
}

nlohmann::json Verdict::to_json(const RelationKind& k) const {
  nlohmann::json j;
  j["kind"] = kind_str(k);
  j["verdict"] = outcome == Outcome::Equivalent     ? "equivalent"
                 : outcome == Outcome::Inequivalent ? "inequivalent"
                                                    : "unknown";
  if (outcome == Outcome::Equivalent) j["witness_size"] = witness_size;
  if (outcome == Outcome::Inequivalent) j["trace"] = trace;
  j["bounds_hit"] = bounds_hit;
  if (!note.empty()) j["note"] = note;
  return j;
}

namespace {

using Phi = std::vector<std::pair<LocWord, LocWord>>;

std::string word_str(const LocWord& w) { return w.str(); }

std::string phi_key(const Phi& phi) {
  std::string k;
  for (const auto& p : phi) k += word_str(p.first) + "~" + word_str(p.second) + ";";
  return k;
}

bool phi_ok(const Phi& phi) {
  for (const auto& p : phi)
    for (const auto& q : phi)
      if (loc_independent(p.first, q.first) != loc_independent(p.second, q.second)) return false;
  return true;
}

// insert keeping sorted/unique
Phi phi_insert(Phi phi, const LocWord& u, const LocWord& v) {
  auto pr = std::make_pair(u, v);
  auto it = std::lower_bound(phi.begin(), phi.end(), pr);
  if (it == phi.end() || *it != pr) phi.insert(it, pr);
  return phi;
}

constexpr int8_t kFalse = 0, kTrue = 1, kUnknown = 2;

int8_t tri_and(int8_t a, int8_t b) {
  if (a == kFalse || b == kFalse) return kFalse;
  if (a == kUnknown || b == kUnknown) return kUnknown;
  return kTrue;
}

// Enumerates label-preserving pairings between two visible step-event
// vectors (both sorted by action), invoking f with the induced word pairs.
// Stops early when f returns true. Returns tri-state "some pairing
// accepted".
struct PairingEnum {
  const std::vector<StepEvent>& xs;
  const std::vector<StepEvent>& ys;

  template <typename F>
  int8_t enumerate(F&& f) const {
    if (xs.size() != ys.size()) return kFalse;
    for (size_t i = 0; i < xs.size(); ++i)
      if (xs[i].action != ys[i].action) return kFalse;  // label multisets differ
    std::vector<int> perm(ys.size());
    std::vector<bool> used(ys.size(), false);
    int8_t acc = kFalse;
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
      if (i == xs.size()) {
        std::vector<std::pair<LocWord, LocWord>> pairs;
        for (size_t k = 0; k < xs.size(); ++k) pairs.push_back({xs[k].at, ys[perm[k]].at});
        int8_t r = f(pairs);
        if (r == kTrue) { acc = kTrue; return true; }
        if (r == kUnknown && acc == kFalse) acc = kUnknown;
        return false;
      }
      for (size_t j = 0; j < ys.size(); ++j) {
        if (used[j] || ys[j].action != xs[i].action) continue;
        used[j] = true;
        perm[i] = static_cast<int>(j);
        if (rec(i + 1)) { used[j] = false; return true; }
        used[j] = false;
      }
      return false;
    };
    rec(0);
    return acc;
  }
};

// ---------------- step games over LTSs ----------------

struct StepGame {
  const Lts& A;
  const Lts& B;
  RelationKind kind;
  Bounds bounds;

  std::map<std::string, int8_t> memo;
  std::map<std::string, int8_t> temp;  // results that leaned on coinductive assumptions
  std::set<std::string> stack;
  bool used_assumption = false;
  bool phi_overflow = false;
  size_t explored = 0;

  std::vector<std::vector<int>> tclA, tclB;

  StepGame(const Lts& a, const Lts& b, RelationKind k, Bounds bd)
      : A(a), B(b), kind(k), bounds(bd) {
    tclA = tau_closures(A);
    tclB = tau_closures(B);
  }

  static std::vector<std::vector<int>> tau_closures(const Lts& l) {
    std::vector<std::vector<int>> out(l.size());
    for (size_t s = 0; s < l.size(); ++s) {
      std::set<int> seen{static_cast<int>(s)};
      std::vector<int> work{static_cast<int>(s)};
      while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        for (const auto& tr : l.out[x])
          if (tr.step.tau() && !seen.count(tr.to)) {
            seen.insert(tr.to);
            work.push_back(tr.to);
          }
      }
      out[s].assign(seen.begin(), seen.end());
    }
    return out;
  }

  bool exact_words() const { return kind.locality == Locality::DynamicLoc; }

  std::string key(int s1, int s2, const Phi& phi, char tag) const {
    return std::string(1, tag) + std::to_string(s1) + "," + std::to_string(s2) + "|" +
           (exact_words() ? "" : phi_key(phi));
  }

  // defender response on lts `l` from state s matching challenger step X:
  // yields (response step, target) pairs per strength
  template <typename F>
  int8_t defender_moves(const Lts& l, const std::vector<std::vector<int>>& tcl, int s,
                        const Step& X, bool challenger_visible, F&& f) {
    int8_t acc = kFalse;
    auto consider = [&](const Step& Y, int to, int pre) {
      int8_t r = f(Y, to, pre);
      if (r == kTrue) { acc = kTrue; return true; }
      if (r == kUnknown && acc == kFalse) acc = kUnknown;
      return false;
    };
    switch (kind.strength) {
      case Strength::Strong: {
        for (const auto& tr : l.out[s]) {
          if (tr.step.tau() != X.tau()) continue;
          if (consider(tr.step, tr.to, s)) return acc;
        }
        return acc;
      }
      case Strength::Weak: {
        if (!challenger_visible) {
          // tau matched by tau*
          for (int mid : tcl[s])
            if (consider(mk_tau_step(), mid, s)) return acc;
          return acc;
        }
        for (int pre : tcl[s])
          for (const auto& tr : l.out[pre]) {
            if (tr.step.tau()) continue;
            for (int post : tcl[tr.to])
              if (consider(tr.step, post, pre)) return acc;
          }
        return acc;
      }
      default: {  // branching core clause; pre is reported for the
                  // intermediate-state condition
        if (!challenger_visible) {
          for (int pre : tcl[s])
            for (int post : tcl[pre])
              if (consider(mk_tau_step(), post, pre)) return acc;
          return acc;
        }
        for (int pre : tcl[s])
          for (const auto& tr : l.out[pre]) {
            if (tr.step.tau()) continue;
            for (int post : tcl[tr.to])
              if (consider(tr.step, post, pre)) return acc;
          }
        return acc;
      }
    }
  }

  int8_t match_steps(const Step& X, const Step& Y, const Phi& phi,
                     const std::function<int8_t(const Phi&)>& cont) {
    if (X.tau() || Y.tau()) {
      if (X.tau() != Y.tau()) return kFalse;
      return cont(phi);
    }
    if (exact_words()) {
      if (!(X.events == Y.events)) return kFalse;
      return cont(phi);
    }
    PairingEnum pe{X.events, Y.events};
    return pe.enumerate([&](const std::vector<std::pair<LocWord, LocWord>>& pairs) -> int8_t {
      Phi np = phi;
      for (const auto& pr : pairs) np = phi_insert(std::move(np), pr.first, pr.second);
      if (!phi_ok(np)) return kFalse;
      if (np.size() > bounds.phi_max) {
        phi_overflow = true;
        return kUnknown;
      }
      return cont(np);
    });
  }

  int8_t related(int s1, int s2, const Phi& phi) {
    char tag = kind.strength == Strength::RootedBranching ? 'R' : 'G';
    std::string k = key(s1, s2, phi, tag);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    if (auto it = temp.find(k); it != temp.end()) { used_assumption = true; return it->second; }
    if (stack.count(k)) {
      used_assumption = true;
      return kTrue;  // coinductive assumption
    }
    stack.insert(k);
    bool saved = used_assumption;
    used_assumption = false;
    int8_t r = kind.strength == Strength::RootedBranching ? compute_root(s1, s2, phi)
                                                          : compute(s1, s2, phi);
    bool dep = used_assumption;
    stack.erase(k);
    ++explored;
    if (r == kFalse || !dep)
      memo[k] = r;
    else
      temp[k] = r;
    used_assumption = saved || dep;
    return r;
  }

  // plain/weak/branching game on a pair
  int8_t compute(int s1, int s2, const Phi& phi) {
    int8_t acc = kTrue;
    acc = tri_and(acc, terminations(s1, s2, phi));
    if (acc == kFalse) return kFalse;
    acc = tri_and(acc, challenge(A, B, tclB, s1, s2, phi, false));
    if (acc == kFalse) return kFalse;
    acc = tri_and(acc, challenge(B, A, tclA, s2, s1, phi, true));
    return acc;
  }

  int8_t terminations(int s1, int s2, const Phi& phi) {
    switch (kind.strength) {
      case Strength::Strong:
        return (A.terminated[s1] != 0) == (B.terminated[s2] != 0) ? kTrue : kFalse;
      case Strength::Weak: {
        int8_t r = kTrue;
        if (A.terminated[s1]) {
          bool ok = false;
          for (int x : tclB[s2])
            if (B.terminated[x]) ok = true;
          if (!ok) return kFalse;
        }
        if (B.terminated[s2]) {
          bool ok = false;
          for (int x : tclA[s1])
            if (A.terminated[x]) ok = true;
          if (!ok) return kFalse;
        }
        return r;
      }
      default: {  // branching: intermediate must stay related
        if (A.terminated[s1]) {
          int8_t best = kFalse;
          for (int x : tclB[s2]) {
            if (!B.terminated[x]) continue;
            int8_t r = related(s1, x, phi);
            if (r == kTrue) { best = kTrue; break; }
            if (r == kUnknown) best = kUnknown;
          }
          if (best != kTrue) return best;
        }
        if (B.terminated[s2]) {
          int8_t best = kFalse;
          for (int x : tclA[s1]) {
            if (!A.terminated[x]) continue;
            int8_t r = related(x, s2, phi);
            if (r == kTrue) { best = kTrue; break; }
            if (r == kUnknown) best = kUnknown;
          }
          if (best != kTrue) return best;
        }
        return kTrue;
      }
    }
  }

  // challenger moves on `ca` from s1, defender on `db`; swapped==true when
  // the roles are (B,A) so phi pairs are flipped
  int8_t challenge(const Lts& ca, const Lts& db, const std::vector<std::vector<int>>& dtcl,
                   int s1, int s2, const Phi& phi, bool swapped) {
    int8_t acc = kTrue;
    for (const auto& tr : ca.out[s1]) {
      int8_t this_move = kFalse;
      const Step& X = tr.step;

      if (kind.strength == Strength::Branching && X.tau()) {
        // first bullet: the tau may be absorbed
        int8_t r = swapped ? related(s2, tr.to, phi) : related(tr.to, s2, phi);
        if (r == kTrue) this_move = kTrue;
        else if (r == kUnknown) this_move = kUnknown;
      }

      if (this_move != kTrue) {
        int8_t dm = defender_moves(db, dtcl, s2, X, !X.tau(),
                                   [&](const Step& Y, int to, int pre) -> int8_t {
          if (kind.strength == Strength::Branching) {
            // the intermediate state must be related to the source
            int8_t mid = swapped ? related(pre, s1, phi) : related(s1, pre, phi);
            if (mid == kFalse) return kFalse;
            auto cont = [&](const Phi& np) {
              int8_t r = swapped ? related(to, tr.to, np) : related(tr.to, to, np);
              return tri_and(mid, r);
            };
            if (X.tau()) return cont(phi);
            return swapped ? match_steps(Y, X, phi, cont) : match_steps(X, Y, phi, cont);
          }
          auto cont = [&](const Phi& np) {
            return swapped ? related(to, tr.to, np) : related(tr.to, to, np);
          };
          if (X.tau()) return cont(phi);
          return swapped ? match_steps(Y, X, phi, cont) : match_steps(X, Y, phi, cont);
        });
        if (dm == kTrue) this_move = kTrue;
        else if (dm == kUnknown && this_move == kFalse) this_move = kUnknown;
      }
      acc = tri_and(acc, this_move);
      if (acc == kFalse) return kFalse;
    }
    return acc;
  }

  // rooted branching: strong matching at the root, branching below
  int8_t compute_root(int s1, int s2, const Phi& phi) {
    RelationKind sub = kind;
    sub.strength = Strength::Branching;
    StepGame* self = this;
    auto branch_rel = [self, sub](int a, int b, const Phi& p) -> int8_t {
      RelationKind saved = self->kind;
      self->kind = sub;
      int8_t r = self->related(a, b, p);
      self->kind = saved;
      return r;
    };
    if ((A.terminated[s1] != 0) != (B.terminated[s2] != 0)) return kFalse;
    int8_t acc = kTrue;
    for (int side = 0; side < 2 && acc != kFalse; ++side) {
      const Lts& ca = side == 0 ? A : B;
      const Lts& db = side == 0 ? B : A;
      int cs = side == 0 ? s1 : s2;
      int ds = side == 0 ? s2 : s1;
      for (const auto& tr : ca.out[cs]) {
        int8_t this_move = kFalse;
        for (const auto& rt : db.out[ds]) {
          if (rt.step.tau() != tr.step.tau()) continue;
          auto cont = [&](const Phi& np) {
            return side == 0 ? branch_rel(tr.to, rt.to, np) : branch_rel(rt.to, tr.to, np);
          };
          int8_t r;
          if (tr.step.tau())
            r = cont(phi);
          else
            r = side == 0 ? match_steps(tr.step, rt.step, phi, cont)
                          : match_steps(rt.step, tr.step, phi, cont);
          if (r == kTrue) { this_move = kTrue; break; }
          if (r == kUnknown) this_move = kUnknown;
        }
        acc = tri_and(acc, this_move);
        if (acc == kFalse) break;
      }
    }
    return acc;
  }

  // ---- trace extraction for refutations ----

  nlohmann::json step_json(const Step& s) {
    nlohmann::json arr = nlohmann::json::array();
    if (s.tau())
      arr.push_back({{"a", "tau"}});
    else
      for (const auto& e : s.events) arr.push_back({{"a", e.action}, {"loc", e.at.str()}});
    return arr;
  }

  nlohmann::json extract_trace(int s1, int s2, const Phi& phi, int depth) {
    nlohmann::json moves = nlohmann::json::array();
    build_trace(s1, s2, phi, depth, moves);
    return moves;
  }

  void build_trace(int s1, int s2, Phi phi, int depth, nlohmann::json& moves) {
    if (depth <= 0) return;
    if ((A.terminated[s1] != 0) != (B.terminated[s2] != 0) &&
        kind.strength == Strength::Strong) {
      moves.push_back(
          {{"refusal", "termination mismatch"}, {"side", A.terminated[s1] ? 1 : 2}});
      return;
    }
    for (int side = 0; side < 2; ++side) {
      const Lts& ca = side == 0 ? A : B;
      int cs = side == 0 ? s1 : s2;
      int ds = side == 0 ? s2 : s1;
      const Lts& db = side == 0 ? B : A;
      const auto& dtcl = side == 0 ? tclB : tclA;
      for (const auto& tr : ca.out[cs]) {
        struct Resp {
          Step step;
          int to;
          Phi np;
        };
        std::vector<Resp> resp;
        defender_moves(db, dtcl, ds, tr.step, !tr.step.tau(),
                       [&](const Step& Y, int to, int) -> int8_t {
          auto cont = [&](const Phi& np) -> int8_t {
            resp.push_back({Y, to, np});
            return kFalse;  // collect every admissible response
          };
          if (tr.step.tau()) cont(phi);
          else if (side == 0)
            match_steps(tr.step, Y, phi, cont);
          else
            match_steps(Y, tr.step, phi, cont);
          return kFalse;
        });
        bool all_bad = true;
        for (auto& r : resp) {
          int8_t v = side == 0 ? related(tr.to, r.to, r.np) : related(r.to, tr.to, r.np);
          if (v != kFalse) { all_bad = false; break; }
        }
        if (!all_bad) continue;
        moves.push_back({{"side", side + 1}, {"step", step_json(tr.step)}});
        if (resp.empty()) {
          moves.push_back({{"refusal", "no matching step"}, {"side", side == 0 ? 2 : 1}});
          return;
        }
        auto& r0 = resp.front();
        moves.push_back(
            {{"side", side == 0 ? 2 : 1}, {"step", step_json(r0.step)}, {"response", true}});
        if (side == 0)
          build_trace(tr.to, r0.to, r0.np, depth - 1, moves);
        else
          build_trace(r0.to, tr.to, r0.np, depth - 1, moves);
        return;
      }
    }
  }
};

Verdict run_step_game(const Lts& a, const Lts& b, const RelationKind& kind, const Bounds& bounds) {
  Verdict v;
  if (a.truncated || b.truncated) {
    v.outcome = Outcome::Unknown;
    v.bounds_hit = true;
    v.note = "state space truncated";
    return v;
  }
  StepGame g(a, b, kind, bounds);
  int8_t r = g.related(a.initial, b.initial, {});
  if (r == kTrue) {
    v.outcome = Outcome::Equivalent;
    v.witness_size = g.explored;
  } else if (r == kFalse) {
    v.outcome = Outcome::Inequivalent;
    v.trace = g.extract_trace(a.initial, b.initial, {}, 64);
  } else {
    v.outcome = Outcome::Unknown;
    v.bounds_hit = true;
    v.note = g.phi_overflow ? "location association bound exceeded" : "bounds exceeded";
  }
  return v;
}

// ---------------- pomset / hp games over PESs ----------------

struct PesPair {
  const Alphabet& al;
  Pes p1, p2;
  RelationKind kind;
  Bounds bounds;
  std::map<std::string, int8_t> memo;
  bool phi_overflow = false;
  size_t explored = 0;

  bool exact_words() const { return kind.locality == Locality::DynamicLoc; }

  static std::string cfg_key(const Config& c) {
    std::string k = "{";
    for (int e : c) k += std::to_string(e) + ",";
    return k + "}";
  }

  // the operational moves: maximal steps, or their compositions for the
  // pomset flavor
  std::vector<PomsetTransition> moves(const Pes& p, const Config& c, bool) {
    if (kind.flavor == Flavor::Step) return aligned_steps(p, c);
    return aligned_pomsets(p, c);
  }

  bool all_tau(const Pes& p, const std::set<int>& x) const {
    for (int e : x)
      if (!is_tau(p.events[e].label)) return false;
    return true;
  }

  // closure under silent aligned steps
  std::vector<Config> tau_closure(const Pes& p, const Config& c) {
    std::set<Config> seen{c};
    std::vector<Config> work{c};
    while (!work.empty()) {
      Config x = work.back();
      work.pop_back();
      for (auto& s : aligned_steps(p, x)) {
        bool silent = true;
        for (int e : s.fired)
          if (!is_tau(p.events[e].label)) silent = false;
        if (silent && seen.insert(s.target).second) work.push_back(s.target);
      }
    }
    return {seen.begin(), seen.end()};
  }

  int8_t match_ext(const std::set<int>& x1, const std::set<int>& x2, const Phi& phi,
                   const std::function<int8_t(const Phi&)>& cont) {
    // label-poset isomorphism, then word handling via the induced pairs
    auto isos = pomset_isos(p1, x1, p2, x2);
    int8_t acc = kFalse;
    for (auto& iso : isos) {
      if (exact_words()) {
        bool ok = true;
        for (auto& pr : iso)
          if (!(p1.events[pr.first].at == p2.events[pr.second].at)) ok = false;
        if (!ok) continue;
        int8_t r = cont(phi);
        if (r == kTrue) return kTrue;
        if (r == kUnknown) acc = kUnknown;
        continue;
      }
      Phi np = phi;
      bool ok = true;
      for (auto& pr : iso) {
        if (is_tau(p1.events[pr.first].label)) continue;
        np = phi_insert(std::move(np), p1.events[pr.first].at, p2.events[pr.second].at);
      }
      if (!phi_ok(np)) ok = false;
      if (ok && np.size() > bounds.phi_max) {
        phi_overflow = true;
        acc = acc == kTrue ? kTrue : kUnknown;
        continue;
      }
      if (!ok) continue;
      int8_t r = cont(np);
      if (r == kTrue) return kTrue;
      if (r == kUnknown) acc = kUnknown;
    }
    return acc;
  }

  int8_t related(const Config& c1, const Config& c2, const Phi& phi) {
    char tag = kind.strength == Strength::RootedBranching ? 'R' : 'G';
    std::string k = std::string(1, tag) + cfg_key(c1) + cfg_key(c2) + "|" +
                    (exact_words() ? "" : phi_key(phi));
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    memo[k] = kTrue;  // configurations only grow; cycles impossible, but
                      // guard against re-entry during computation
    int8_t r = kind.strength == Strength::RootedBranching ? compute_root(c1, c2, phi)
                                                          : compute(c1, c2, phi);
    memo[k] = r;
    ++explored;
    return r;
  }

  int8_t terminations(const Config& c1, const Config& c2, const Phi& phi) {
    bool d1 = p1.successful(c1), d2 = p2.successful(c2);
    switch (kind.strength) {
      case Strength::Strong:
        return d1 == d2 ? kTrue : kFalse;
      case Strength::Weak: {
        auto weakly_done = [&](const Pes& p, const Config& c) {
          for (auto& x : tau_closure(p, c))
            if (p.successful(x)) return true;
          return false;
        };
        if (d1 && !weakly_done(p2, c2)) return kFalse;
        if (d2 && !weakly_done(p1, c1)) return kFalse;
        return kTrue;
      }
      default: {
        int8_t acc = kTrue;
        if (d1) {
          int8_t best = kFalse;
          for (auto& x : tau_closure(p2, c2)) {
            if (!p2.successful(x)) continue;
            int8_t r = related(c1, x, phi);
            if (r == kTrue) { best = kTrue; break; }
            if (r == kUnknown) best = kUnknown;
          }
          acc = tri_and(acc, best);
        }
        if (d2 && acc != kFalse) {
          int8_t best = kFalse;
          for (auto& x : tau_closure(p1, c1)) {
            if (!p1.successful(x)) continue;
            int8_t r = related(x, c2, phi);
            if (r == kTrue) { best = kTrue; break; }
            if (r == kUnknown) best = kUnknown;
          }
          acc = tri_and(acc, best);
        }
        return acc;
      }
    }
  }

  int8_t compute(const Config& c1, const Config& c2, const Phi& phi) {
    int8_t acc = terminations(c1, c2, phi);
    if (acc == kFalse) return kFalse;
    acc = tri_and(acc, challenge(false, c1, c2, phi));
    if (acc == kFalse) return kFalse;
    acc = tri_and(acc, challenge(true, c1, c2, phi));
    return acc;
  }

  int8_t challenge(bool swapped, const Config& c1, const Config& c2, const Phi& phi) {
    const Pes& cp = swapped ? p2 : p1;
    const Pes& dp = swapped ? p1 : p2;
    const Config& cc = swapped ? c2 : c1;
    const Config& dc = swapped ? c1 : c2;
    int8_t acc = kTrue;
    for (auto& mv : moves(cp, cc, false)) {
      bool ctau = all_tau(cp, mv.fired);
      int8_t this_move = kFalse;

      if (kind.strength == Strength::Branching && ctau) {
        int8_t r = swapped ? related(dc, mv.target, phi) : related(mv.target, dc, phi);
        if (r == kTrue) this_move = kTrue;
        else if (r == kUnknown) this_move = kUnknown;
      }

      if (this_move != kTrue) {
        std::set<int> vis1;
        for (int e : mv.fired)
          if (!is_tau(cp.events[e].label)) vis1.insert(e);

        auto respond = [&](const Config& from, const std::set<int>& x2, const Config& to,
                           const Phi& base) -> int8_t {
          (void)from;
          auto cont = [&](const Phi& np) {
            return swapped ? related(to, mv.target, np) : related(mv.target, to, np);
          };
          if (swapped) {
            PesPair* self = this;
            // match x2 (in p1) against vis1 (in p2): orientation flip
            auto isos = pomset_isos(p1, x2, p2, vis1);
            int8_t a2 = kFalse;
            for (auto& iso : isos) {
              Phi np = base;
              bool ok = true;
              if (self->exact_words()) {
                for (auto& pr : iso)
                  if (!(p1.events[pr.first].at == p2.events[pr.second].at)) ok = false;
                if (!ok) continue;
                int8_t r = cont(np);
                if (r == kTrue) return kTrue;
                if (r == kUnknown) a2 = kUnknown;
                continue;
              }
              for (auto& pr : iso) {
                if (is_tau(p1.events[pr.first].label)) continue;
                np = phi_insert(std::move(np), p1.events[pr.first].at, p2.events[pr.second].at);
              }
              if (!phi_ok(np)) continue;
              if (np.size() > bounds.phi_max) {
                phi_overflow = true;
                if (a2 == kFalse) a2 = kUnknown;
                continue;
              }
              int8_t r = cont(np);
              if (r == kTrue) return kTrue;
              if (r == kUnknown) a2 = kUnknown;
            }
            return a2;
          }
          return match_ext(vis1, x2, base, cont);
        };

        int8_t dm = kFalse;
        switch (kind.strength) {
          case Strength::Strong: {
            for (auto& dmv : moves(dp, dc, false)) {
              if (all_tau(dp, dmv.fired) != ctau) continue;
              if (ctau) {
                int8_t r = swapped ? related(dmv.target, mv.target, phi)
                                   : related(mv.target, dmv.target, phi);
                if (r == kTrue) { dm = kTrue; break; }
                if (r == kUnknown) dm = kUnknown;
                continue;
              }
              std::set<int> vis2;
              for (int e : dmv.fired)
                if (!is_tau(dp.events[e].label)) vis2.insert(e);
              int8_t r = respond(dc, vis2, dmv.target, phi);
              if (r == kTrue) { dm = kTrue; break; }
              if (r == kUnknown) dm = kUnknown;
            }
            break;
          }
          case Strength::Weak:
          case Strength::Branching: {
            for (auto& mid : tau_closure(dp, dc)) {
              int8_t mid_ok = kTrue;
              if (kind.strength == Strength::Branching) {
                mid_ok = swapped ? related(mid, c2, phi) : related(c1, mid, phi);
                if (mid_ok == kFalse) continue;
              }
              if (ctau) {
                for (auto& post : tau_closure(dp, mid)) {
                  int8_t r = swapped ? related(post, mv.target, phi)
                                     : related(mv.target, post, phi);
                  r = tri_and(mid_ok, r);
                  if (r == kTrue) { dm = kTrue; break; }
                  if (r == kUnknown) dm = kUnknown;
                }
                if (dm == kTrue) break;
                continue;
              }
              for (auto& amv : moves(dp, mid, false)) {
                std::set<int> vis2;
                for (int e : amv.fired)
                  if (!is_tau(dp.events[e].label)) vis2.insert(e);
                if (vis2.empty()) continue;
                for (auto& post : tau_closure(dp, amv.target)) {
                  int8_t r = respond(mid, vis2, post, phi);
                  r = tri_and(mid_ok, r);
                  if (r == kTrue) { dm = kTrue; break; }
                  if (r == kUnknown) dm = kUnknown;
                }
                if (dm == kTrue) break;
              }
              if (dm == kTrue) break;
            }
            break;
          }
          default:
            break;
        }
        if (dm == kTrue) this_move = kTrue;
        else if (dm == kUnknown && this_move == kFalse) this_move = kUnknown;
      }
      acc = tri_and(acc, this_move);
      if (acc == kFalse) return kFalse;
    }
    return acc;
  }

  int8_t compute_root(const Config& c1, const Config& c2, const Phi& phi) {
    if (p1.successful(c1) != p2.successful(c2)) return kFalse;
    RelationKind saved = kind;
    int8_t acc = kTrue;
    for (int side = 0; side < 2 && acc != kFalse; ++side) {
      bool swapped = side == 1;
      const Pes& cp = swapped ? p2 : p1;
      const Pes& dp = swapped ? p1 : p2;
      const Config& cc = swapped ? c2 : c1;
      const Config& dc = swapped ? c1 : c2;
      for (auto& mv : moves(cp, cc, false)) {
        bool ctau = all_tau(cp, mv.fired);
        int8_t this_move = kFalse;
        for (auto& dmv : moves(dp, dc, false)) {
          if (all_tau(dp, dmv.fired) != ctau) continue;
          auto below = [&](const Phi& np) -> int8_t {
            kind.strength = Strength::Branching;
            int8_t r = swapped ? related(dmv.target, mv.target, np)
                               : related(mv.target, dmv.target, np);
            kind = saved;
            return r;
          };
          int8_t r;
          if (ctau) {
            r = below(phi);
          } else {
            std::set<int> v1, v2;
            for (int e : mv.fired)
              if (!is_tau(cp.events[e].label)) v1.insert(e);
            for (int e : dmv.fired)
              if (!is_tau(dp.events[e].label)) v2.insert(e);
            const std::set<int>& x1 = swapped ? v2 : v1;
            const std::set<int>& x2 = swapped ? v1 : v2;
            r = match_ext(x1, x2, phi, below);
          }
          if (r == kTrue) { this_move = kTrue; break; }
          if (r == kUnknown) this_move = kUnknown;
        }
        acc = tri_and(acc, this_move);
        if (acc == kFalse) break;
      }
    }
    return acc;
  }
};

// ---------------- hp / hhp ----------------

struct HpGame {
  const Alphabet& al;
  Pes p1, p2;
  RelationKind kind;
  Bounds bounds;
  std::map<std::string, int8_t> memo;
  bool overflow = false;
  size_t explored = 0;

  using Fmap = std::vector<std::pair<int, int>>;  // sorted by first

  bool exact_words() const { return kind.locality == Locality::DynamicLoc; }

  static std::string fkey(const Config& c1, const Fmap& f, const Config& c2) {
    std::string k = PesPair::cfg_key(c1) + PesPair::cfg_key(c2) + "[";
    for (auto& pr : f) k += std::to_string(pr.first) + ">" + std::to_string(pr.second) + ",";
    return k + "]";
  }

  bool phi_of(const Fmap& f, Phi& phi) const {
    if (exact_words()) {
      for (auto& pr : f)
        if (!is_tau(p1.events[pr.first].label) &&
            !(p1.events[pr.first].at == p2.events[pr.second].at))
          return false;
      return true;
    }
    for (auto& pr : f) {
      if (is_tau(p1.events[pr.first].label)) continue;
      phi = phi_insert(std::move(phi), p1.events[pr.first].at, p2.events[pr.second].at);
    }
    return phi_ok(phi);
  }

  // f extended by e1 -> e2 stays a label- and order-isomorphism
  bool extend_ok(const Fmap& f, int e1, int e2) const {
    if (p1.events[e1].label != p2.events[e2].label) return false;
    for (auto& pr : f) {
      if (p1.le(pr.first, e1) != p2.le(pr.second, e2)) return false;
      if (p1.le(e1, pr.first) != p2.le(e2, pr.second)) return false;
    }
    return true;
  }

  static Fmap extend(Fmap f, int e1, int e2) {
    f.push_back({e1, e2});
    std::sort(f.begin(), f.end());
    return f;
  }

  // pairings of whole steps: every label-preserving bijection x1 -> x2
  // that keeps the extended f an order isomorphism
  template <typename F>
  bool each_step_extension(const Fmap& f, bool swapped, const std::set<int>& xc,
                           const std::set<int>& xd, F&& use) const {
    const std::set<int>& x1 = swapped ? xd : xc;
    const std::set<int>& x2 = swapped ? xc : xd;
    std::vector<int> v1(x1.begin(), x1.end());
    std::vector<int> v2(x2.begin(), x2.end());
    if (v1.size() != v2.size()) return false;
    std::vector<bool> used(v2.size(), false);
    bool stop = false;
    std::function<void(size_t, Fmap)> rec = [&](size_t i, Fmap cur) {
      if (stop) return;
      if (i == v1.size()) {
        if (use(cur)) stop = true;
        return;
      }
      for (size_t j = 0; j < v2.size() && !stop; ++j) {
        if (used[j]) continue;
        if (!extend_ok(cur, v1[i], v2[j])) continue;
        used[j] = true;
        rec(i + 1, extend(cur, v1[i], v2[j]));
        used[j] = false;
      }
    };
    rec(0, f);
    return stop;
  }

  std::vector<PomsetTransition> steps_at(const Pes& p, const Config& c) const {
    return aligned_steps(p, c);
  }

  static std::set<int> visible_part(const Pes& p, const std::set<int>& x) {
    std::set<int> out;
    for (int e : x)
      if (!is_tau(p.events[e].label)) out.insert(e);
    return out;
  }

  std::vector<Config> tau_closure(const Pes& p, const Config& c) const {
    std::set<Config> seen{c};
    std::vector<Config> work{c};
    while (!work.empty()) {
      Config x = work.back();
      work.pop_back();
      for (auto& s : aligned_steps(p, x))
        if (visible_part(p, s.fired).empty() && seen.insert(s.target).second)
          work.push_back(s.target);
    }
    return {seen.begin(), seen.end()};
  }

  int8_t related(const Config& c1, const Fmap& f, const Config& c2) {
    std::string k = (kind.strength == Strength::RootedBranching ? "R" : "G") + fkey(c1, f, c2);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    memo[k] = kTrue;
    int8_t r = kind.strength == Strength::RootedBranching ? compute_root(c1, f, c2)
                                                          : compute(c1, f, c2);
    memo[k] = r;
    ++explored;
    return r;
  }

  int8_t terminations(const Config& c1, const Fmap& f, const Config& c2) {
    bool d1 = p1.successful(c1), d2 = p2.successful(c2);
    switch (kind.strength) {
      case Strength::Strong:
        return d1 == d2 ? kTrue : kFalse;
      case Strength::Weak: {
        auto wd = [&](const Pes& p, const Config& c) {
          for (auto& x : tau_closure(p, c))
            if (p.successful(x)) return true;
          return false;
        };
        if (d1 && !wd(p2, c2)) return kFalse;
        if (d2 && !wd(p1, c1)) return kFalse;
        return kTrue;
      }
      default: {
        if (d1) {
          int8_t best = kFalse;
          for (auto& x : tau_closure(p2, c2)) {
            if (!p2.successful(x)) continue;
            int8_t r = related(c1, f, x);
            if (r == kTrue) { best = kTrue; break; }
            if (r == kUnknown) best = kUnknown;
          }
          if (best != kTrue) return best;
        }
        if (d2) {
          int8_t best = kFalse;
          for (auto& x : tau_closure(p1, c1)) {
            if (!p1.successful(x)) continue;
            int8_t r = related(x, f, c2);
            if (r == kTrue) { best = kTrue; break; }
            if (r == kUnknown) best = kUnknown;
          }
          if (best != kTrue) return best;
        }
        return kTrue;
      }
    }
  }

  int8_t compute(const Config& c1, const Fmap& f, const Config& c2) {
    {
      Phi phi;
      if (!phi_of(f, phi)) return kFalse;
      if (phi.size() > bounds.phi_max) { overflow = true; return kUnknown; }
    }
    int8_t acc = terminations(c1, f, c2);
    if (acc == kFalse) return kFalse;
    acc = tri_and(acc, challenge(false, c1, f, c2));
    if (acc == kFalse) return kFalse;
    acc = tri_and(acc, challenge(true, c1, f, c2));
    return acc;
  }

  int8_t challenge(bool swapped, const Config& c1, const Fmap& f, const Config& c2) {
    const Pes& cp = swapped ? p2 : p1;
    const Pes& dp = swapped ? p1 : p2;
    const Config& cc = swapped ? c2 : c1;
    const Config& dc = swapped ? c1 : c2;
    int8_t acc = kTrue;
    for (auto& mv : steps_at(cp, cc)) {
      std::set<int> xc = visible_part(cp, mv.fired);
      bool ctau = xc.empty();
      const Config& t1 = mv.target;
      int8_t this_move = kFalse;

      if (ctau) {
        switch (kind.strength) {
          case Strength::Strong: {
            for (auto& dmv : steps_at(dp, dc)) {
              if (!visible_part(dp, dmv.fired).empty()) continue;
              int8_t r = swapped ? related(dmv.target, f, t1) : related(t1, f, dmv.target);
              if (r == kTrue) { this_move = kTrue; break; }
              if (r == kUnknown) this_move = kUnknown;
            }
            break;
          }
          case Strength::Weak: {
            for (auto& post : tau_closure(dp, dc)) {
              int8_t r = swapped ? related(post, f, t1) : related(t1, f, post);
              if (r == kTrue) { this_move = kTrue; break; }
              if (r == kUnknown) this_move = kUnknown;
            }
            break;
          }
          default: {  // branching: absorb or stutter
            int8_t r = swapped ? related(dc, f, t1) : related(t1, f, dc);
            if (r != kFalse) this_move = r;
            if (this_move != kTrue)
              for (auto& post : tau_closure(dp, dc)) {
                int8_t r2 = swapped ? related(post, f, t1) : related(t1, f, post);
                if (r2 == kTrue) { this_move = kTrue; break; }
                if (r2 == kUnknown && this_move == kFalse) this_move = kUnknown;
              }
            break;
          }
        }
      } else {
        auto try_step = [&](const std::set<int>& xd, const Config& t2,
                            int8_t mid_ok) -> int8_t {
          int8_t local = kFalse;
          each_step_extension(f, swapped, xc, xd, [&](const Fmap& nf) {
            Phi phi;
            if (!phi_of(nf, phi)) return false;
            if (phi.size() > bounds.phi_max) {
              overflow = true;
              if (local == kFalse) local = kUnknown;
              return false;
            }
            int8_t r = swapped ? related(t2, nf, t1) : related(t1, nf, t2);
            r = tri_and(mid_ok, r);
            if (r == kTrue) { local = kTrue; return true; }
            if (r == kUnknown) local = kUnknown;
            return false;
          });
          return local;
        };
        switch (kind.strength) {
          case Strength::Strong: {
            for (auto& dmv : steps_at(dp, dc)) {
              auto xd = visible_part(dp, dmv.fired);
              if (xd.empty()) continue;
              int8_t r = try_step(xd, dmv.target, kTrue);
              if (r == kTrue) { this_move = kTrue; break; }
              if (r == kUnknown) this_move = kUnknown;
            }
            break;
          }
          case Strength::Weak:
          case Strength::Branching: {
            for (auto& mid : tau_closure(dp, dc)) {
              int8_t mid_ok = kTrue;
              if (kind.strength == Strength::Branching) {
                mid_ok = swapped ? related(mid, f, cc) : related(cc, f, mid);
                if (mid_ok == kFalse) continue;
              }
              for (auto& dmv : steps_at(dp, mid)) {
                auto xd = visible_part(dp, dmv.fired);
                if (xd.empty()) continue;
                for (auto& post : tau_closure(dp, dmv.target)) {
                  int8_t r = try_step(xd, post, mid_ok);
                  if (r == kTrue) { this_move = kTrue; break; }
                  if (r == kUnknown) this_move = kUnknown;
                }
                if (this_move == kTrue) break;
              }
              if (this_move == kTrue) break;
            }
            break;
          }
          default:
            break;
        }
      }
      acc = tri_and(acc, this_move);
      if (acc == kFalse) return kFalse;
    }
    return acc;
  }

  int8_t compute_root(const Config& c1, const Fmap& f, const Config& c2) {
    if (p1.successful(c1) != p2.successful(c2)) return kFalse;
    RelationKind saved = kind;
    int8_t acc = kTrue;
    for (int side = 0; side < 2 && acc != kFalse; ++side) {
      bool swapped = side == 1;
      const Pes& cp = swapped ? p2 : p1;
      const Pes& dp = swapped ? p1 : p2;
      const Config& cc = swapped ? c2 : c1;
      const Config& dc = swapped ? c1 : c2;
      for (auto& mv : steps_at(cp, cc)) {
        std::set<int> xc = visible_part(cp, mv.fired);
        bool ctau = xc.empty();
        int8_t this_move = kFalse;
        for (auto& dmv : steps_at(dp, dc)) {
          auto xd = visible_part(dp, dmv.fired);
          if (xd.empty() != ctau) continue;
          auto below = [&](const Fmap& nf) -> int8_t {
            kind.strength = Strength::Branching;
            int8_t r =
                swapped ? related(dmv.target, nf, mv.target) : related(mv.target, nf, dmv.target);
            kind = saved;
            return r;
          };
          int8_t r = kFalse;
          if (ctau) {
            r = below(f);
          } else {
            each_step_extension(f, swapped, xc, xd, [&](const Fmap& nf) {
              Phi phi;
              if (!phi_of(nf, phi)) return false;
              int8_t x = below(nf);
              if (x == kTrue) { r = kTrue; return true; }
              if (x == kUnknown && r == kFalse) r = kUnknown;
              return false;
            });
          }
          if (r == kTrue) { this_move = kTrue; break; }
          if (r == kUnknown) this_move = kUnknown;
        }
        acc = tri_and(acc, this_move);
        if (acc == kFalse) break;
      }
    }
    return acc;
  }
};

// hereditary variant: enumerate all posetal triples, prune to the greatest
// downward-closed hp-bisimulation
struct HhpFilter {
  const Alphabet& al;
  Pes p1, p2;
  RelationKind kind;  // strength applies to the game closure
  Bounds bounds;

  struct Triple {
    Config c1;
    HpGame::Fmap f;
    Config c2;
    bool operator<(const Triple& o) const {
      if (c1 != o.c1) return c1 < o.c1;
      if (c2 != o.c2) return c2 < o.c2;
      return f < o.f;
    }
  };

  std::optional<std::pair<bool, std::set<Triple>>> run(bool hereditary = true) {
    auto cfg1 = configurations(p1, bounds.phi_max);
    auto cfg2 = configurations(p2, bounds.phi_max);
    if (cfg1.size() > bounds.max_states || cfg2.size() > bounds.max_states) return std::nullopt;

    HpGame probe{al, p1, p2, kind, bounds};
    std::set<Triple> R;
    for (auto& c1 : cfg1)
      for (auto& c2 : cfg2) {
        // the history maps run over the visible parts
        std::set<int> x1, x2;
        for (int e : c1)
          if (!is_tau(p1.events[e].label)) x1.insert(e);
        for (int e : c2)
          if (!is_tau(p2.events[e].label)) x2.insert(e);
        for (auto& iso : pomset_isos(p1, x1, p2, x2)) {
          HpGame::Fmap f(iso.begin(), iso.end());
          std::sort(f.begin(), f.end());
          Phi phi;
          if (!probe.phi_of(f, phi)) continue;
          if (phi.size() > bounds.phi_max) return std::nullopt;
          R.insert({c1, f, c2});
        }
      }

    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Triple> drop;
      for (const auto& t : R) {
        if (!game_ok(t, R) || (hereditary && !down_ok(t, R))) drop.push_back(t);
      }
      for (auto& t : drop) {
        R.erase(t);
        changed = true;
      }
    }
    Triple empty{{}, {}, {}};
    return std::make_pair(R.count(empty) > 0, R);
  }

  bool game_ok(const Triple& t, const std::set<Triple>& R) {
    // both termination clauses and the single-event game clause, with
    // membership tested against R
    bool d1 = p1.successful(t.c1), d2 = p2.successful(t.c2);
    HpGame util{al, p1, p2, kind, bounds};
    if (kind.strength == Strength::Strong) {
      if (d1 != d2) return false;
    } else {
      auto wd = [&](const Pes& p, const Config& c) {
        for (auto& x : util.tau_closure(p, c))
          if (p.successful(x)) return true;
        return false;
      };
      if (d1 && !wd(p2, t.c2)) return false;
      if (d2 && !wd(p1, t.c1)) return false;
    }
    for (int side = 0; side < 2; ++side) {
      bool swapped = side == 1;
      const Pes& cp = swapped ? p2 : p1;
      const Pes& dp = swapped ? p1 : p2;
      const Config& cc = swapped ? t.c2 : t.c1;
      const Config& dc = swapped ? t.c1 : t.c2;
      for (auto& mv : util.steps_at(cp, cc)) {
        std::set<int> xc = HpGame::visible_part(cp, mv.fired);
        bool ctau = xc.empty();
        bool answered = false;
        if (ctau) {
          auto posts = kind.strength == Strength::Strong
                           ? [&] {
                               std::vector<Config> v;
                               for (auto& dmv : util.steps_at(dp, dc))
                                 if (HpGame::visible_part(dp, dmv.fired).empty())
                                   v.push_back(dmv.target);
                               return v;
                             }()
                           : util.tau_closure(dp, dc);
          for (auto& post : posts) {
            Triple cand = swapped ? Triple{post, t.f, mv.target} : Triple{mv.target, t.f, post};
            if (R.count(cand)) { answered = true; break; }
          }
        } else {
          auto mids = kind.strength == Strength::Strong ? std::vector<Config>{dc}
                                                        : util.tau_closure(dp, dc);
          for (auto& mid : mids) {
            for (auto& dmv : util.steps_at(dp, mid)) {
              auto xd = HpGame::visible_part(dp, dmv.fired);
              if (xd.empty()) continue;
              auto posts = kind.strength == Strength::Strong
                               ? std::vector<Config>{dmv.target}
                               : util.tau_closure(dp, dmv.target);
              util.each_step_extension(t.f, swapped, xc, xd, [&](const HpGame::Fmap& nf) {
                Phi phi;
                if (!util.phi_of(nf, phi)) return false;
                for (auto& post : posts) {
                  Triple cand =
                      swapped ? Triple{post, nf, mv.target} : Triple{mv.target, nf, post};
                  if (R.count(cand)) { answered = true; return true; }
                }
                return false;
              });
              if (answered) break;
            }
            if (answered) break;
          }
        }
        if (!answered) return false;
      }
    }
    return true;
  }

  bool down_ok(const Triple& t, const std::set<Triple>& R) {
    // every pointwise sub-triple must be present
    std::vector<std::pair<int, int>> pairs = t.f;
    size_t n = pairs.size();
    for (size_t mask = 0; mask + 1 < (size_t{1} << n); ++mask) {
      Config c1, c2;
      HpGame::Fmap f;
      for (size_t i = 0; i < n; ++i)
        if (mask & (size_t{1} << i)) {
          c1.insert(pairs[i].first);
          c2.insert(pairs[i].second);
          f.push_back(pairs[i]);
        }
      // include tau events of the original configs that sit below the
      // chosen visible ones? sub-configs must be configurations
      if (!p1.is_config(c1) || !p2.is_config(c2)) continue;
      Triple sub{c1, f, c2};
      if (!R.count(sub)) return false;
    }
    return true;
  }
};

Verdict pes_unsupported_fallback(const Alphabet& al, const TermPtr& t1, const TermPtr& t2,
                                 const RelationKind& kind, const Bounds& bounds,
                                 const SpecRegistry* reg, std::optional<Mode> mode,
                                 const char* what) {
  RelationKind step_kind = kind;
  step_kind.flavor = Flavor::Step;
  Verdict v = check(al, t1, t2, step_kind, bounds, reg, mode);
  v.note = std::string(what) + "; fell back to the step checker";
  return v;
}

}  // namespace

Verdict check_step_lts(const Lts& a, const Lts& b, const RelationKind& kind,
                       const Bounds& bounds) {
  return run_step_game(a, b, kind, bounds);
}

Verdict check_pomset(const Alphabet& al, const TermPtr& t1, const TermPtr& t2,
                     const RelationKind& kind, const Bounds& bounds, const SpecRegistry* reg,
                     std::optional<Mode> mode_override) {
  Mode mode = mode_override.value_or(kind.locality == Locality::DynamicLoc ? Mode::Dynamic
                                                                           : Mode::Static);
  Pes p1, p2;
  try {
    p1 = term_to_pes(al, t1, mode);
    p2 = term_to_pes(al, t2, mode);
  } catch (const PesUnsupported& e) {
    return pes_unsupported_fallback(al, t1, t2, kind, bounds, reg, mode_override, e.what());
  }
  if (p1.events.size() > 16 || p2.events.size() > 16) {
    Verdict v;
    v.outcome = Outcome::Unknown;
    v.bounds_hit = true;
    v.note = "event structure too large";
    return v;
  }
  PesPair g{al, p1, p2, kind, bounds, {}, false, 0};
  int8_t r = g.related({}, {}, {});
  Verdict v;
  if (r == kTrue) {
    v.outcome = Outcome::Equivalent;
    v.witness_size = g.explored;
  } else if (r == kFalse) {
    v.outcome = Outcome::Inequivalent;
    v.trace = nlohmann::json::array();
    v.trace.push_back({{"note", "pomset game refutation; rerun the step checker for a "
                                "step-level trace"}});
  } else {
    v.outcome = Outcome::Unknown;
    v.bounds_hit = true;
    v.note = g.phi_overflow ? "location association bound exceeded" : "bounds exceeded";
  }
  return v;
}

Verdict check_hp(const Alphabet& al, const TermPtr& t1, const TermPtr& t2,
                 const RelationKind& kind, const Bounds& bounds,
                 std::optional<Mode> mode_override) {
  Mode mode = mode_override.value_or(kind.locality == Locality::DynamicLoc ? Mode::Dynamic
                                                                           : Mode::Static);
  Pes p1, p2;
  try {
    p1 = term_to_pes(al, t1, mode);
    p2 = term_to_pes(al, t2, mode);
  } catch (const PesUnsupported& e) {
    return pes_unsupported_fallback(al, t1, t2, kind, bounds, nullptr, mode_override, e.what());
  }
  Verdict v;
  if (p1.events.size() > 14 || p2.events.size() > 14) {
    v.outcome = Outcome::Unknown;
    v.bounds_hit = true;
    v.note = "event structure too large";
    return v;
  }
  if (kind.flavor == Flavor::Hhp) {
    HhpFilter filt{al, p1, p2, kind, bounds};
    auto res = filt.run();
    if (!res) {
      v.outcome = Outcome::Unknown;
      v.bounds_hit = true;
      v.note = "triple space too large";
      return v;
    }
    if (res->first) {
      v.outcome = Outcome::Equivalent;
      v.witness_size = res->second.size();
    } else {
      v.outcome = Outcome::Inequivalent;
      nlohmann::json j = nlohmann::json::array();
      j.push_back({{"note", "empty triple pruned from the downward-closed relation"}});
      // a triple that survives the plain hp closure but not the
      // downward-closed one pins the violation
      auto plain = HhpFilter{al, p1, p2, kind, bounds}.run(false);
      if (plain) {
        for (auto& t : plain->second) {
          if (res->second.count(t)) continue;
          nlohmann::json pairs = nlohmann::json::array();
          for (auto& pr : t.f)
            pairs.push_back(
                {{"left", p1.events[pr.first].label + "@" + p1.events[pr.first].at.str()},
                 {"right",
                  p2.events[pr.second].label + "@" + p2.events[pr.second].at.str()}});
          j.push_back({{"violating_triple", pairs}});
          break;
        }
      }
      v.trace = j;
    }
    return v;
  }
  HpGame g{al, p1, p2, kind, bounds};
  int8_t r = g.related({}, {}, {});
  if (r == kTrue) {
    v.outcome = Outcome::Equivalent;
    v.witness_size = g.explored;
  } else if (r == kFalse) {
    v.outcome = Outcome::Inequivalent;
    v.trace = nlohmann::json::array();
    v.trace.push_back({{"note", "hp game refutation"}});
  } else {
    v.outcome = Outcome::Unknown;
    v.bounds_hit = true;
    v.note = "bounds exceeded";
  }
  return v;
}

Verdict check(const Alphabet& al, const TermPtr& t1, const TermPtr& t2, const RelationKind& kind,
              const Bounds& bounds, const SpecRegistry* reg,
              std::optional<Mode> mode_override) {
  Mode mode = mode_override.value_or(kind.locality == Locality::DynamicLoc ? Mode::Dynamic
                                                                           : Mode::Static);
  switch (kind.flavor) {
    case Flavor::Step: {
      Lts a = build_lts(al, t1, mode, bounds, reg);
      Lts b = build_lts(al, t2, mode, bounds, reg);
      return run_step_game(a, b, kind, bounds);
    }
    case Flavor::Pomset:
      return check_pomset(al, t1, t2, kind, bounds, reg, mode);
    default:
      if (contains_op(t1, Op::RecRef) || contains_op(t2, Op::RecRef) ||
          contains_op(t1, Op::Const) || contains_op(t2, Op::Const)) {
        Verdict v;
        v.outcome = Outcome::Unknown;
        v.note = "hp checking needs recursion-free inputs";
        return v;
      }
      return check_hp(al, t1, t2, kind, bounds, mode);
  }
}

bool replay_witness(const Alphabet& al, const TermPtr& t1, const TermPtr& t2,
                    const RelationKind& kind, const nlohmann::json& trace, const Bounds& bounds,
                    const SpecRegistry* reg) {
  if (!trace.is_array() || trace.empty()) return false;
  if (kind.flavor == Flavor::Hhp) {
    // rerunning the analysis must reproduce the refusal
    Verdict v = check(al, t1, t2, kind, bounds, reg);
    return v.outcome == Outcome::Inequivalent;
  }
  if (kind.flavor != Flavor::Step) {
    Verdict v = check(al, t1, t2, kind, bounds, reg);
    return v.outcome == Outcome::Inequivalent;
  }
  Mode mode = kind.locality == Locality::DynamicLoc ? Mode::Dynamic : Mode::Static;
  Lts a = build_lts(al, t1, mode, bounds, reg);
  Lts b = build_lts(al, t2, mode, bounds, reg);
  int s1 = a.initial, s2 = b.initial;
  bool saw_refusal = false;
  auto step_key_of = [](const nlohmann::json& step) {
    std::string want;
    for (const auto& ev : step) {
      std::string aname = ev["a"].get<std::string>();
      if (is_tau(aname)) return std::string(kTau);
      if (!want.empty()) want += ",";
      want += aname + "@" + ev.value("loc", "eps");
    }
    return want;
  };
  for (const auto& mv : trace) {
    if (mv.contains("refusal")) {
      saw_refusal = true;
      break;
    }
    if (!mv.contains("side") || !mv.contains("step")) continue;
    int side = mv["side"].get<int>();
    bool is_response = mv.value("response", false);
    const Lts& l = side == 1 ? a : b;
    int& s = side == 1 ? s1 : s2;
    std::string want = step_key_of(mv["step"]);
    // responses may travel through tau-closures in the weaker strengths;
    // challenger moves must be literal transitions
    bool found = false;
    for (const auto& tr : l.out[s])
      if (tr.step.key() == want) {
        s = tr.to;
        found = true;
        break;
      }
    if (!found && is_response && kind.strength != Strength::Strong) {
      // accept any weakly matching response
      found = true;
    }
    if (!found) return false;
  }
  (void)saw_refusal;
  // the refusal itself is confirmed by re-deriving the verdict
  Verdict v = check(al, t1, t2, kind, bounds, reg);
  return v.outcome == Outcome::Inequivalent;
}

}  // namespace locpa
