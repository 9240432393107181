#include "locpa/rewrite.hpp"

#include <map>
#include <stdexcept>

namespace locpa {

namespace {

// ---- pattern helpers ----

// e or u::e (or tau); the "atomic event" of the axiom tables.
bool located_event(const TermPtr& t, std::string* action = nullptr, LocWord* at = nullptr) {
  if (t->op == Op::Act || t->op == Op::TauAtom) {
    if (action) *action = t->op == Op::Act ? t->name : kTau;
    if (at) *at = LocWord::eps();
    return true;
  }
  if (t->op == Op::LocPrefix) {
    std::string a;
    LocWord inner;
    if (!located_event(t->a, &a, &inner)) return false;
    if (action) *action = a;
    if (at) *at = t->word.concat(inner);
    return true;
  }
  return false;
}

// << combinations of located events (the step heads of basic APTC terms).
bool step_head(const TermPtr& t) {
  if (located_event(t)) return true;
  if (t->op == Op::LeftMerge) return step_head(t->a) && step_head(t->b);
  if (t->op == Op::LocPrefix) return step_head(t->a);
  return false;
}

bool is_delta_term(const TermPtr& t) { return t->op == Op::Delta; }

std::vector<TermPtr> flatten_alt(const TermPtr& t) {
  if (t->op != Op::Alt) return {t};
  auto l = flatten_alt(t->a);
  auto r = flatten_alt(t->b);
  l.insert(l.end(), r.begin(), r.end());
  return l;
}

TermPtr rebuild_alt(const std::vector<TermPtr>& xs) {
  if (xs.empty()) return mk_delta();
  TermPtr t = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) t = mk_alt(t, xs[i]);
  return t;
}

std::optional<TermPtr> none() { return std::nullopt; }

using RF = std::function<std::optional<TermPtr>(const Alphabet&, const TermPtr&)>;

Rule R(const char* name, RF f) { return Rule{name, std::move(f)}; }

// ---- rule tables ----

std::vector<Rule> batc_rules() {
  std::vector<Rule> rs;
  rs.push_back(R("RA3", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op != Op::Alt) return none();
    auto xs = flatten_alt(t);
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = i + 1; j < xs.size(); ++j)
        if (ac_equal(xs[i], xs[j])) {
          xs.erase(xs.begin() + j);
          return rebuild_alt(xs);
        }
    return none();
  }));
  rs.push_back(R("RA4", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Seq && t->a->op == Op::Alt)
      return mk_alt(mk_seq(t->a->a, t->b), mk_seq(t->a->b, t->b));
    return none();
  }));
  rs.push_back(R("RA5", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Seq && t->a->op == Op::Seq)
      return mk_seq(t->a->a, mk_seq(t->a->b, t->b));
    return none();
  }));
  rs.push_back(R("RL1", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LocPrefix && t->word.empty()) return t->a;
    return none();
  }));
  rs.push_back(R("RL2", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LocPrefix && t->a->op == Op::Seq)
      return mk_seq(mk_locprefix(t->word, t->a->a), mk_locprefix(t->word, t->a->b));
    return none();
  }));
  rs.push_back(R("RL3", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LocPrefix && t->a->op == Op::Alt)
      return mk_alt(mk_locprefix(t->word, t->a->a), mk_locprefix(t->word, t->a->b));
    return none();
  }));
  rs.push_back(R("RL4", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LocPrefix && t->a->op == Op::LocPrefix)
      return mk_locprefix(t->word.concat(t->a->word), t->a->a);
    return none();
  }));
  return rs;
}

// left-merge side condition: e1 <= e2 in the reflexive causal order; tau
// never participates (the tau laws handle it)
bool lm_cond(const Alphabet& al, const std::string& e1, const std::string& e2) {
  if (is_tau(e1) || is_tau(e2)) return false;
  return al.causal_le(e1, e2);
}

std::vector<Rule> aptc_rules() {
  std::vector<Rule> rs;
  rs.push_back(R("RA6", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op != Op::Alt) return none();
    auto xs = flatten_alt(t);
    for (size_t i = 0; i < xs.size(); ++i)
      if (is_delta_term(xs[i]) && xs.size() > 1) {
        xs.erase(xs.begin() + i);
        return rebuild_alt(xs);
      }
    return none();
  }));
  rs.push_back(R("RA7", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Seq && is_delta_term(t->a)) return mk_delta();
    return none();
  }));
  rs.push_back(R("RP1", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Merge) return mk_alt(mk_bin(Op::Par, t->a, t->b), mk_bin(Op::Comm, t->a, t->b));
    return none();
  }));
  // RP2/RP3 (commutativity and associativity of the parallel operator) are
  // equations, not reductions; they do not decrease any simplification
  // order and are omitted from the executable system.
  rs.push_back(R("RP4", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Par)
      return mk_alt(mk_bin(Op::LeftMerge, t->a, t->b), mk_bin(Op::LeftMerge, t->b, t->a));
    return none();
  }));
  rs.push_back(R("RP5", [](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e1, e2;
    if (t->op == Op::LeftMerge && located_event(t->a, &e1) && t->b->op == Op::Seq &&
        located_event(t->b->a, &e2) && lm_cond(al, e1, e2))
      return mk_seq(mk_bin(Op::LeftMerge, t->a, t->b->a), t->b->b);
    return none();
  }));
  rs.push_back(R("RP6", [](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e1, e2;
    if (t->op == Op::LeftMerge && t->a->op == Op::Seq && located_event(t->a->a, &e1) &&
        located_event(t->b, &e2) && lm_cond(al, e1, e2))
      return mk_seq(mk_bin(Op::LeftMerge, t->a->a, t->b), t->a->b);
    return none();
  }));
  rs.push_back(R("RP7", [](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e1, e2;
    if (t->op == Op::LeftMerge && t->a->op == Op::Seq && t->b->op == Op::Seq &&
        located_event(t->a->a, &e1) && located_event(t->b->a, &e2) && lm_cond(al, e1, e2))
      return mk_seq(mk_bin(Op::LeftMerge, t->a->a, t->b->a), mk_bin(Op::Merge, t->a->b, t->b->b));
    return none();
  }));
  rs.push_back(R("RP8", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LeftMerge && t->a->op == Op::Alt)
      return mk_alt(mk_bin(Op::LeftMerge, t->a->a, t->b), mk_bin(Op::LeftMerge, t->a->b, t->b));
    return none();
  }));
  rs.push_back(R("RP9", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LeftMerge && is_delta_term(t->a)) return mk_delta();
    return none();
  }));
  // Not in the source tables: the mirrored deadlock absorption. Both
  // components of a left merge must fire, so a deadlocked right side kills
  // it; without this rule, (e << d);x style normal forms escape the basic
  // term grammar.
  rs.push_back(R("RP10", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LeftMerge && is_delta_term(t->b)) return mk_delta();
    return none();
  }));

  // communication merge; the result of gamma is placed at the longest
  // common prefix of the participants' words
  auto comm_result = [](const Alphabet& al, const std::string& e1, const LocWord& u,
                        const std::string& e2, const LocWord& v) -> TermPtr {
    std::string c = al.gamma(e1, e2);
    if (is_delta(c)) return mk_delta();
    LocWord w = loc_common_prefix(u, v);
    TermPtr atom = mk_act(c);
    return w.empty() ? atom : mk_locprefix(w, atom);
  };
  rs.push_back(R("RC1", [comm_result](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e1, e2;
    LocWord u, v;
    if (t->op == Op::Comm && located_event(t->a, &e1, &u) && located_event(t->b, &e2, &v))
      return comm_result(al, e1, u, e2, v);
    return none();
  }));
  rs.push_back(R("RC2", [comm_result](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e1, e2;
    LocWord u, v;
    if (t->op == Op::Comm && located_event(t->a, &e1, &u) && t->b->op == Op::Seq &&
        located_event(t->b->a, &e2, &v))
      return mk_seq(comm_result(al, e1, u, e2, v), t->b->b);
    return none();
  }));
  rs.push_back(R("RC3", [comm_result](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e1, e2;
    LocWord u, v;
    if (t->op == Op::Comm && t->a->op == Op::Seq && located_event(t->a->a, &e1, &u) &&
        located_event(t->b, &e2, &v))
      return mk_seq(comm_result(al, e1, u, e2, v), t->a->b);
    return none();
  }));
  rs.push_back(R("RC4", [comm_result](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e1, e2;
    LocWord u, v;
    if (t->op == Op::Comm && t->a->op == Op::Seq && t->b->op == Op::Seq &&
        located_event(t->a->a, &e1, &u) && located_event(t->b->a, &e2, &v))
      return mk_seq(comm_result(al, e1, u, e2, v), mk_bin(Op::Merge, t->a->b, t->b->b));
    return none();
  }));
  rs.push_back(R("RC5", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Comm && t->a->op == Op::Alt)
      return mk_alt(mk_bin(Op::Comm, t->a->a, t->b), mk_bin(Op::Comm, t->a->b, t->b));
    return none();
  }));
  rs.push_back(R("RC6", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Comm && t->b->op == Op::Alt)
      return mk_alt(mk_bin(Op::Comm, t->a, t->b->a), mk_bin(Op::Comm, t->a, t->b->b));
    return none();
  }));
  rs.push_back(R("RC7", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Comm && is_delta_term(t->a)) return mk_delta();
    return none();
  }));
  rs.push_back(R("RC8", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Comm && is_delta_term(t->b)) return mk_delta();
    return none();
  }));
  // Not in the source tables: a communication merge whose operand starts
  // with a multi-event step can never synchronize, so it deadlocks. Needed
  // to eliminate | over left-merge combinations.
  auto multi_head = [](const TermPtr& x) {
    const TermPtr& h = x->op == Op::Seq ? x->a : x;
    if (h->op == Op::LeftMerge) return true;
    if (h->op == Op::LocPrefix && step_head(h) && !located_event(h)) return true;
    return false;
  };
  rs.push_back(R("RC9", [multi_head](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Comm && (multi_head(t->a) || multi_head(t->b))) return mk_delta();
    return none();
  }));

  rs.push_back(R("RCE1", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Theta && located_event(t->a)) return t->a;
    return none();
  }));
  rs.push_back(R("RCE2", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Theta && is_delta_term(t->a)) return mk_delta();
    return none();
  }));
  rs.push_back(R("RCE3", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Theta && t->a->op == Op::Alt) {
      TermPtr x = t->a->a, y = t->a->b;
      return mk_alt(mk_unless(mk_theta(x), y), mk_unless(mk_theta(y), x));
    }
    return none();
  }));
  rs.push_back(R("RCE4", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Theta && t->a->op == Op::Seq)
      return mk_seq(mk_theta(t->a->a), mk_theta(t->a->b));
    return none();
  }));
  rs.push_back(R("RCE5", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Theta && t->a->op == Op::Par) {
      TermPtr x = t->a->a, y = t->a->b;
      return mk_alt(mk_bin(Op::Par, mk_unless(mk_theta(x), y), y),
                    mk_bin(Op::Par, mk_unless(mk_theta(y), x), x));
    }
    return none();
  }));
  rs.push_back(R("RCE6", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Theta && t->a->op == Op::Comm) {
      TermPtr x = t->a->a, y = t->a->b;
      return mk_alt(mk_bin(Op::Comm, mk_unless(mk_theta(x), y), y),
                    mk_bin(Op::Comm, mk_unless(mk_theta(y), x), x));
    }
    return none();
  }));
  // Not in the source tables: the conflict-elimination cases do not cover
  // left-merge combinations, which are basic terms here, so elimination
  // needs one more case. Mirrors the SOS expansion of Theta.
  rs.push_back(R("RCE7", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Theta && t->a->op == Op::LeftMerge) {
      TermPtr x = t->a->a, y = t->a->b;
      return mk_bin(Op::LeftMerge, mk_unless(mk_theta(x), y), mk_unless(mk_theta(y), x));
    }
    return none();
  }));

  // unless on atomic events: RU1 direct conflict, RU3 conflict inherited
  // through the causal order, RU2 the surviving case
  rs.push_back(R("RU1", [](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e1, e2;
    if (t->op == Op::Unless && located_event(t->a, &e1) && located_event(t->b, &e2) &&
        al.in_conflict(e1, e2))
      return mk_tau();
    return none();
  }));
  rs.push_back(R("RU3", [](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e3, e1;
    if (t->op == Op::Unless && located_event(t->a, &e3) && located_event(t->b, &e1) &&
        al.silenced_by_any(e3, {e1}))
      return mk_tau();
    return none();
  }));
  rs.push_back(R("RU2", [](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e1, e3;
    if (t->op == Op::Unless && located_event(t->a, &e1) && located_event(t->b, &e3) &&
        !al.in_conflict(e1, e3) && !al.silenced_by_any(e1, {e3}))
      return t->a;
    return none();
  }));
  rs.push_back(R("RU4", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Unless && is_delta_term(t->b)) return t->a;
    return none();
  }));
  rs.push_back(R("RU5", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Unless && is_delta_term(t->a)) return mk_delta();
    return none();
  }));
  rs.push_back(R("RU6", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Unless && t->a->op == Op::Alt)
      return mk_alt(mk_unless(t->a->a, t->b), mk_unless(t->a->b, t->b));
    return none();
  }));
  rs.push_back(R("RU7", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Unless && t->a->op == Op::Seq)
      return mk_seq(mk_unless(t->a->a, t->b), mk_unless(t->a->b, t->b));
    return none();
  }));
  rs.push_back(R("RU8", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Unless && t->a->op == Op::LeftMerge)
      return mk_bin(Op::LeftMerge, mk_unless(t->a->a, t->b), mk_unless(t->a->b, t->b));
    return none();
  }));
  rs.push_back(R("RU9", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Unless && t->a->op == Op::Comm)
      return mk_bin(Op::Comm, mk_unless(t->a->a, t->b), mk_unless(t->a->b, t->b));
    return none();
  }));
  rs.push_back(R("RU10", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Unless && t->b->op == Op::Alt)
      return mk_unless(mk_unless(t->a, t->b->a), t->b->b);
    return none();
  }));
  rs.push_back(R("RU11", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Unless && t->b->op == Op::Seq)
      return mk_unless(mk_unless(t->a, t->b->a), t->b->b);
    return none();
  }));
  rs.push_back(R("RU12", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Unless && t->b->op == Op::LeftMerge)
      return mk_unless(mk_unless(t->a, t->b->a), t->b->b);
    return none();
  }));
  rs.push_back(R("RU13", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Unless && t->b->op == Op::Comm)
      return mk_unless(mk_unless(t->a, t->b->a), t->b->b);
    return none();
  }));
  // Not in the source tables: location prefixes over non-events block the
  // U-rules above; the silencing data of u::y is that of y, and a prefix
  // on the left commutes out. Needed for elimination.
  rs.push_back(R("RU14", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Unless && t->b->op == Op::LocPrefix && !located_event(t->b))
      return mk_unless(t->a, t->b->a);
    return none();
  }));
  rs.push_back(R("RU15", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Unless && t->a->op == Op::LocPrefix && !located_event(t->a))
      return mk_locprefix(t->a->word, mk_unless(t->a->a, t->b));
    return none();
  }));

  rs.push_back(R("RL5", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LocPrefix && t->a->op == Op::Merge)
      return mk_bin(Op::Merge, mk_locprefix(t->word, t->a->a), mk_locprefix(t->word, t->a->b));
    return none();
  }));
  rs.push_back(R("RL6", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LocPrefix && t->a->op == Op::Par)
      return mk_bin(Op::Par, mk_locprefix(t->word, t->a->a), mk_locprefix(t->word, t->a->b));
    return none();
  }));
  rs.push_back(R("RL7", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LocPrefix && t->a->op == Op::Comm)
      return mk_bin(Op::Comm, mk_locprefix(t->word, t->a->a), mk_locprefix(t->word, t->a->b));
    return none();
  }));
  // L8 oriented inward (Theta(u::x) -> u::Theta(x)); the table's direction
  // would leave Theta stuck over located left-merge combinations
  rs.push_back(R("RL8", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Theta && t->a->op == Op::LocPrefix && !located_event(t->a))
      return mk_locprefix(t->a->word, mk_theta(t->a->a));
    return none();
  }));
  // RL9 (u::(x<|y) -> u::x <| u::y) is omitted: under the innermost
  // strategy the inner unless always eliminates first, and together with
  // RU14/RU15 the rule would loop on stuck operands.
  rs.push_back(R("RL10", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LocPrefix && is_delta_term(t->a)) return mk_delta();
    return none();
  }));
  return rs;
}

std::vector<Rule> encap_rules() {
  std::vector<Rule> rs;
  rs.push_back(R("RD1", [](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e;
    if (t->op == Op::Encap && located_event(t->a, &e) &&
        (is_tau(e) || !al.encap_set(t->name).count(e)))
      return t->a;
    return none();
  }));
  rs.push_back(R("RD2", [](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e;
    if (t->op == Op::Encap && located_event(t->a, &e) && al.encap_set(t->name).count(e))
      return mk_delta();
    return none();
  }));
  rs.push_back(R("RD3", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Encap && is_delta_term(t->a)) return mk_delta();
    return none();
  }));
  rs.push_back(R("RD4", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Encap && t->a->op == Op::Alt)
      return mk_alt(mk_encap(t->name, t->a->a), mk_encap(t->name, t->a->b));
    return none();
  }));
  rs.push_back(R("RD5", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Encap && t->a->op == Op::Seq)
      return mk_seq(mk_encap(t->name, t->a->a), mk_encap(t->name, t->a->b));
    return none();
  }));
  rs.push_back(R("RD6", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Encap && t->a->op == Op::LeftMerge)
      return mk_bin(Op::LeftMerge, mk_encap(t->name, t->a->a), mk_encap(t->name, t->a->b));
    return none();
  }));
  // RL11 (u::encap(H,x) -> encap(H,u::x)) is omitted: the inner
  // encapsulation always eliminates first under the innermost strategy,
  // and with RD7 present the pair would loop on stuck operands.
  // RD7 is not in the source tables; it unblocks encapsulation over
  // located left-merge combinations (RD1/RD2 only see events).
  rs.push_back(R("RD7", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Encap && t->a->op == Op::LocPrefix && !located_event(t->a))
      return mk_locprefix(t->a->word, mk_encap(t->name, t->a->a));
    return none();
  }));
  return rs;
}

std::vector<Rule> proj_rules() {
  std::vector<Rule> rs;
  rs.push_back(R("PR5", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Proj && t->proj_n == 0) return mk_delta();
    return none();
  }));
  rs.push_back(R("PR6", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Proj && is_delta_term(t->a)) return mk_delta();
    return none();
  }));
  rs.push_back(R("PR1", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Proj && t->a->op == Op::Alt)
      return mk_alt(mk_proj(t->proj_n, t->a->a), mk_proj(t->proj_n, t->a->b));
    return none();
  }));
  rs.push_back(R("PR2", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Proj && t->a->op == Op::LeftMerge && !step_head(t->a))
      return mk_bin(Op::LeftMerge, mk_proj(t->proj_n, t->a->a), mk_proj(t->proj_n, t->a->b));
    return none();
  }));
  rs.push_back(R("PR3", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Proj && t->proj_n >= 1 && step_head(t->a)) return t->a;
    return none();
  }));
  rs.push_back(R("PR4", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Proj && t->proj_n >= 1 && t->a->op == Op::Seq && step_head(t->a->a))
      return mk_seq(t->a->a, mk_proj(t->proj_n - 1, t->a->b));
    return none();
  }));
  // RL12 (u::pi(n,x) -> pi(n,u::x)) omitted for the same reason as RL11.
  return rs;
}

std::vector<Rule> tau_rules() {
  std::vector<Rule> rs;
  rs.push_back(R("B1", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Seq && step_head(t->a) && t->b->op == Op::TauAtom) return t->a;
    return none();
  }));
  rs.push_back(R("B2", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    // e . (tau . (x+y) + x) -> e . (x+y), the sum matched in either order
    if (t->op != Op::Seq || !step_head(t->a) || t->b->op != Op::Alt) return none();
    auto try_match = [&](const TermPtr& l, const TermPtr& r) -> std::optional<TermPtr> {
      if (l->op == Op::Seq && l->a->op == Op::TauAtom && l->b->op == Op::Alt) {
        const TermPtr& x = r;
        const TermPtr& sum = l->b;
        if (ac_equal(sum->a, x) || ac_equal(sum->b, x) ||
            [&] {  // x may itself be a sub-sum of the flattened summands
              auto inner = flatten_alt(sum);
              auto outer = flatten_alt(x);
              for (auto& o : outer) {
                bool found = false;
                for (auto& i2 : inner)
                  if (ac_equal(i2, o)) { found = true; break; }
                if (!found) return false;
              }
              return true;
            }())
          return mk_seq(t->a, sum);
      }
      return std::nullopt;
    };
    if (auto m = try_match(t->b->a, t->b->b)) return m;
    if (auto m = try_match(t->b->b, t->b->a)) return m;
    return none();
  }));
  rs.push_back(R("B3", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LeftMerge && t->b->op == Op::TauAtom) return t->a;
    return none();
  }));
  rs.push_back(R("L13", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::LocPrefix && t->a->op == Op::TauAtom) return mk_tau();
    return none();
  }));
  return rs;
}

std::vector<Rule> hide_rules() {
  std::vector<Rule> rs;
  // TI1/TI2 on located events also realize L15/L16
  rs.push_back(R("TI1", [](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e;
    if (t->op == Op::Hide && located_event(t->a, &e) &&
        (is_tau(e) || !al.hide_set(t->name).count(e)))
      return t->a;
    return none();
  }));
  rs.push_back(R("TI2", [](const Alphabet& al, const TermPtr& t) -> std::optional<TermPtr> {
    std::string e;
    if (t->op == Op::Hide && located_event(t->a, &e) && al.hide_set(t->name).count(e))
      return mk_tau();
    return none();
  }));
  rs.push_back(R("TI3", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Hide && is_delta_term(t->a)) return mk_delta();
    return none();
  }));
  rs.push_back(R("TI4", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Hide && t->a->op == Op::Alt)
      return mk_alt(mk_hide(t->name, t->a->a), mk_hide(t->name, t->a->b));
    return none();
  }));
  rs.push_back(R("TI5", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Hide && t->a->op == Op::Seq)
      return mk_seq(mk_hide(t->name, t->a->a), mk_hide(t->name, t->a->b));
    return none();
  }));
  rs.push_back(R("TI6", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Hide && t->a->op == Op::LeftMerge)
      return mk_bin(Op::LeftMerge, mk_hide(t->name, t->a->a), mk_hide(t->name, t->a->b));
    return none();
  }));
  // RL14 (u::hide(I,x) -> hide(I,u::x)) omitted for the same reason as
  // RL11; TI7 below is the completion that is actually needed.
  rs.push_back(R("TI7", [](const Alphabet&, const TermPtr& t) -> std::optional<TermPtr> {
    if (t->op == Op::Hide && t->a->op == Op::LocPrefix && !located_event(t->a))
      return mk_locprefix(t->a->word, mk_hide(t->name, t->a->a));
    return none();
  }));
  return rs;
}

RuleSet make_set(const std::string& name, std::vector<std::vector<Rule>> groups) {
  RuleSet rs;
  rs.name = name;
  for (auto& g : groups)
    for (auto& r : g) rs.rules.push_back(std::move(r));
  return rs;
}

}  // namespace

const RuleSet& ruleset(const std::string& name) {
  static const std::map<std::string, RuleSet> sets = [] {
    std::map<std::string, RuleSet> m;
    m.emplace("batc_sl", make_set("batc_sl", {batc_rules()}));
    m.emplace("aptc_sl", make_set("aptc_sl", {batc_rules(), aptc_rules()}));
    m.emplace("encap", make_set("encap", {encap_rules()}));
    m.emplace("proj", make_set("proj", {proj_rules()}));
    m.emplace("tau_laws", make_set("tau_laws", {tau_rules()}));
    m.emplace("hide", make_set("hide", {hide_rules()}));
    m.emplace("strong",
              make_set("strong", {batc_rules(), aptc_rules(), encap_rules(), proj_rules()}));
    m.emplace("branching", make_set("branching", {batc_rules(), aptc_rules(), encap_rules(),
                                                  proj_rules(), tau_rules(), hide_rules()}));
    return m;
  }();
  auto it = sets.find(name);
  if (it == sets.end()) throw std::invalid_argument("unknown rule set: " + name);
  return it->second;
}

namespace {

struct FuelGone {};

struct Normalizer {
  const Alphabet& alph;
  const RuleSet& rs;
  long fuel;
  Trace trace;

  TermPtr go(TermPtr t, std::vector<int>& path) {
    for (;;) {
      // innermost: children first, left to right
      if (t->a) {
        path.push_back(0);
        TermPtr na = go(t->a, path);
        path.pop_back();
        TermPtr nb = t->b;
        if (nb) {
          path.push_back(1);
          nb = go(t->b, path);
          path.pop_back();
        }
        if (na.get() != t->a.get() || (t->b && nb.get() != t->b.get())) {
          auto n = std::make_shared<Term>(*t);
          n->a = na;
          n->b = nb;
          t = n;
        }
      }
      bool fired = false;
      for (const auto& r : rs.rules) {
        if (auto m = r.apply(alph, t)) {
          if (--fuel < 0) throw FuelGone{};
          trace.push_back({r.name, path, t, *m});
          t = *m;
          fired = true;
          break;
        }
      }
      if (!fired) return t;
    }
  }
};

}  // namespace

NormResult normalize(const Alphabet& alph, const TermPtr& t, const RuleSet& rs, long fuel) {
  if (fuel <= 0) {
    long n = term_size(t);
    fuel = 10 * n * n + 100;
  }
  Normalizer nz{alph, rs, fuel, {}};
  NormResult out;
  std::vector<int> path;
  try {
    out.term = nz.go(t, path);
    out.fuel_exhausted = false;
  } catch (FuelGone&) {
    out.term = t;
    out.fuel_exhausted = true;
  }
  out.trace = std::move(nz.trace);
  out.steps = static_cast<long>(out.trace.size());
  return out;
}

static TermPtr replace_at(const TermPtr& t, const std::vector<int>& path, size_t k,
                          const TermPtr& before, const TermPtr& after) {
  if (k == path.size()) {
    if (!term_eq(t, before)) return nullptr;
    return after;
  }
  TermPtr child = path[k] == 0 ? t->a : t->b;
  if (!child) return nullptr;
  TermPtr nc = replace_at(child, path, k + 1, before, after);
  if (!nc) return nullptr;
  auto n = std::make_shared<Term>(*t);
  (path[k] == 0 ? n->a : n->b) = nc;
  return n;
}

TermPtr replay_trace(const TermPtr& start, const Trace& trace) {
  TermPtr t = start;
  for (const auto& s : trace) {
    t = replace_at(t, s.path, 0, s.before, s.after);
    if (!t) return nullptr;
  }
  return t;
}

TermPtr ac_normal(const TermPtr& t0) {
  TermPtr t = canonical(t0);
  std::function<TermPtr(const TermPtr&)> go = [&](const TermPtr& u) -> TermPtr {
    if (u->op == Op::Alt) {
      std::vector<TermPtr> xs;
      std::function<void(const TermPtr&)> flat = [&](const TermPtr& v) {
        if (v->op == Op::Alt) {
          flat(v->a);
          flat(v->b);
        } else
          xs.push_back(go(v));
      };
      flat(u);
      std::sort(xs.begin(), xs.end(), [](const TermPtr& x, const TermPtr& y) {
        return term_cmp(x, y) < 0;
      });
      TermPtr r = xs[0];
      for (size_t i = 1; i < xs.size(); ++i) r = mk_alt(r, xs[i]);
      return r;
    }
    if (!u->a) return u;
    auto n = std::make_shared<Term>(*u);
    n->a = go(u->a);
    if (u->b) n->b = go(u->b);
    return n;
  };
  return go(t);
}

bool ac_equal(const TermPtr& a, const TermPtr& b) {
  return term_eq(ac_normal(a), ac_normal(b));
}

bool axiom_equal(const Alphabet& alph, const TermPtr& a, const TermPtr& b, const RuleSet& rs,
                 long fuel) {
  auto na = normalize(alph, a, rs, fuel);
  auto nb = normalize(alph, b, rs, fuel);
  if (na.fuel_exhausted || nb.fuel_exhausted)
    throw std::runtime_error("normalize: fuel exhausted");
  return ac_equal(na.term, nb.term);
}

}  // namespace locpa
