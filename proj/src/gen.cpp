#include "locpa/gen.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace locpa {

Alphabet law_alphabet() {
  // The conflict pair (e,f) is kept apart from the communication triple
  // (a,b,c): a conflict on communication participants makes the unless
  // laws clash with the communication laws. The causal order is a total
  // chain so that the left-merge ordering gate is decisive, with the
  // conflict pair on top so sync results are never silenced.
  Alphabet al;
  for (auto a : {"a", "b", "c", "e", "f", "g"}) al.declare_action(a);
  al.declare_comm("a", "b", "c");
  al.declare_conflict("e", "f");
  al.declare_causal("a", "b");
  al.declare_causal("b", "c");
  al.declare_causal("c", "e");
  al.declare_causal("e", "f");
  al.declare_causal("f", "g");
  al.relabellings["id"] = {};
  al.relabellings["swap"] = {{"a", "b"}, {"b", "a"}};
  al.encap_sets["H"] = {"a"};
  al.encap_sets["HH"] = {"a", "b"};
  al.hide_sets["I"] = {"a"};
  al.hide_sets["J"] = {"c"};
  al.finalize();
  return al;
}

LocWord gen_word(Rng& rng, int max_len) {
  static const std::vector<std::string> names{"l1", "l2"};
  int len = rng.below(max_len + 1);
  LocWord w;
  for (int i = 0; i < len; ++i) w.parts.push_back(rng.pick(names));
  return w;
}

namespace {

std::vector<std::string> acts_of(const Alphabet& al) {
  return {al.actions.begin(), al.actions.end()};
}

TermPtr located_atom(Rng& rng, const Alphabet& al) {
  TermPtr t = mk_act(rng.pick(acts_of(al)));
  LocWord w = gen_word(rng, 1);
  return w.empty() ? t : mk_locprefix(w, t);
}

}  // namespace

TermPtr gen_term(Rng& rng, const Alphabet& al, int size, Dialect d) {
  bool ctc = d == Dialect::Ctc || d == Dialect::CtcTau;
  bool taus = d == Dialect::AptcTau || d == Dialect::CtcTau || d == Dialect::AptcCoreTau;
  bool core = d == Dialect::AptcCore || d == Dialect::AptcCoreTau;
  auto acts = acts_of(al);
  if (size <= 1) {
    if (ctc) {
      int r = rng.below(taus ? 4 : 3);
      if (r == 0) return mk_nil();
      if (r == 3) return mk_prefix({{kTau, LocWord::eps()}}, mk_nil());
      return mk_prefix({{rng.pick(acts), LocWord::eps()}}, mk_nil());
    }
    int r = rng.below(taus ? 5 : 4);
    if (r == 0 && d != Dialect::Batc) return mk_delta();
    if (r == 4) return mk_tau();
    return mk_act(rng.pick(acts));
  }
  if (ctc) {
    int r = rng.below(10);
    switch (r) {
      case 0:
      case 1: {  // prefix
        std::string a = taus && rng.below(4) == 0 ? kTau : rng.pick(acts);
        LocWord w = rng.below(3) == 0 ? gen_word(rng, 1) : LocWord::eps();
        if (is_tau(a)) w = LocWord::eps();
        return mk_prefix({{a, w}}, gen_term(rng, al, size - 1, d));
      }
      case 2: {  // multi prefix of two non-communicating actions
        std::string a1 = rng.pick(acts), a2 = rng.pick(acts);
        if (al.comm_defined(a1, a2)) a2 = a1;
        return mk_prefix({{a1, LocWord::eps()}, {a2, LocWord::eps()}},
                         gen_term(rng, al, size - 2 > 0 ? size - 2 : 1, d));
      }
      case 3:
        return mk_locprefix(LocWord::single(rng.flip() ? "l1" : "l2"),
                            gen_term(rng, al, size - 1, d));
      case 4: {
        std::set<std::string> L{rng.pick(acts)};
        return mk_restrict(L, gen_term(rng, al, size - 1, d));
      }
      case 5:
        return mk_relabel(rng.flip() ? "id" : "swap", gen_term(rng, al, size - 1, d));
      default: {
        int ls = 1 + rng.below(size - 1);
        TermPtr l = gen_term(rng, al, ls, d);
        TermPtr r2 = gen_term(rng, al, size - ls, d);
        return mk_bin(r == 6 || r == 7 ? Op::Alt : Op::Par, l, r2);
      }
    }
  }
  // APTC family
  int r = rng.below(d == Dialect::Batc ? 6 : 14);
  switch (r) {
    case 0:
      return mk_locprefix(LocWord::single(rng.flip() ? "l1" : "l2"),
                          gen_term(rng, al, size - 1, d));
    case 1:
    case 2: {
      int ls = 1 + rng.below(size - 1);
      return mk_seq(gen_term(rng, al, ls, d), gen_term(rng, al, size - ls, d));
    }
    case 3:
    case 4:
    case 5: {
      int ls = 1 + rng.below(size - 1);
      return mk_alt(gen_term(rng, al, ls, d), gen_term(rng, al, size - ls, d));
    }
    case 6:
    case 7: {
      int ls = 1 + rng.below(size - 1);
      return mk_bin(r == 6 ? Op::Par : Op::Merge, gen_term(rng, al, ls, d),
                    gen_term(rng, al, size - ls, d));
    }
    case 8: {
      int ls = 1 + rng.below(size - 1);
      return mk_bin(Op::LeftMerge, gen_term(rng, al, ls, d), gen_term(rng, al, size - ls, d));
    }
    case 9: {
      int ls = 1 + rng.below(size - 1);
      return mk_bin(Op::Comm, gen_term(rng, al, ls, d), gen_term(rng, al, size - ls, d));
    }
    case 10:
      if (core) return mk_encap(rng.flip() ? "H" : "HH", gen_term(rng, al, size - 1, d));
      return mk_theta(gen_term(rng, al, size - 1, d));
    case 11: {
      int ls = 1 + rng.below(size - 1);
      if (core)
        return mk_bin(Op::Merge, gen_term(rng, al, ls, d), gen_term(rng, al, size - ls, d));
      return mk_unless(gen_term(rng, al, ls, d), gen_term(rng, al, size - ls, d));
    }
    case 12:
      return mk_encap(rng.flip() ? "H" : "HH", gen_term(rng, al, size - 1, d));
    default:
      if (taus) return mk_hide(rng.flip() ? "I" : "J", gen_term(rng, al, size - 1, d));
      return mk_encap("H", gen_term(rng, al, size - 1, d));
  }
}

namespace {

int g_law_term_size = 4;

using Inst = std::optional<LawInstance>;

TermPtr T2(Rng& rng, const Alphabet& al, Dialect d) {
  return gen_term(rng, al, 1 + rng.below(g_law_term_size), d);
}

struct B {  // builders, to keep the tables compact
  static TermPtr act(const std::string& a) { return mk_act(a); }
  static TermPtr at(const std::string& a, const LocWord& w) {
    return w.empty() ? mk_act(a) : mk_locprefix(w, mk_act(a));
  }
};

std::vector<Law> build_laws() {
  std::vector<Law> L;
  auto add = [&](const char* name, const char* suite,
                 std::function<Inst(Rng&, const Alphabet&)> f) {
    L.push_back({name, suite, std::move(f), nullptr});
  };
  auto batc = Dialect::Batc;
  auto aptc = Dialect::Aptc;
  auto atau = Dialect::AptcTau;
  auto ctc = Dialect::Ctc;

  // ---- BATC^sl: A1-A5, L1-L4 ----
  add("A1", "batc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, batc), y = T2(r, al, batc);
    return LawInstance{mk_alt(x, y), mk_alt(y, x)};
  });
  add("A2", "batc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, batc), y = T2(r, al, batc), z = T2(r, al, batc);
    return LawInstance{mk_alt(mk_alt(x, y), z), mk_alt(x, mk_alt(y, z))};
  });
  add("A3", "batc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, batc);
    return LawInstance{mk_alt(x, x), x};
  });
  add("A4", "batc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, batc), y = T2(r, al, batc), z = T2(r, al, batc);
    return LawInstance{mk_seq(mk_alt(x, y), z), mk_alt(mk_seq(x, z), mk_seq(y, z))};
  });
  add("A5", "batc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, batc), y = T2(r, al, batc), z = T2(r, al, batc);
    return LawInstance{mk_seq(mk_seq(x, y), z), mk_seq(x, mk_seq(y, z))};
  });
  add("L1", "batc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, batc);
    return LawInstance{mk_locprefix(LocWord::eps(), x), x};
  });
  add("L2", "batc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, batc), y = T2(r, al, batc);
    LocWord u = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_seq(x, y)),
                       mk_seq(mk_locprefix(u, x), mk_locprefix(u, y))};
  });
  add("L3", "batc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, batc), y = T2(r, al, batc);
    LocWord u = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_alt(x, y)),
                       mk_alt(mk_locprefix(u, x), mk_locprefix(u, y))};
  });
  add("L4", "batc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, batc);
    LocWord u = gen_word(r, 2), v = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_locprefix(v, x)), mk_locprefix(u.concat(v), x)};
  });

  // ---- parallelism: A6-A7, P1-P9, C1-C8, CE1-CE6, U1-U13, L5-L10 ----
  add("A6", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc);
    return LawInstance{mk_alt(x, mk_delta()), x};
  });
  add("A7", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc);
    return LawInstance{mk_seq(mk_delta(), x), mk_delta()};
  });
  add("P1", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::Merge, x, y),
                       mk_alt(mk_bin(Op::Par, x, y), mk_bin(Op::Comm, x, y))};
  });
  add("P2", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::Par, x, y), mk_bin(Op::Par, y, x)};
  });
  add("P3", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc), z = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::Par, mk_bin(Op::Par, x, y), z),
                       mk_bin(Op::Par, x, mk_bin(Op::Par, y, z))};
  });
  add("P4", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::Par, x, y),
                       mk_alt(mk_bin(Op::LeftMerge, x, y), mk_bin(Op::LeftMerge, y, x))};
  });
  // Under pomset and hp semantics P4 only holds on event-built operands: a
  // continuation after x || y depends on its own component, while after
  // x << y it follows the whole joint step, and the pomsets differ.
  L.back().instantiate_finer = [=](Rng& r, const Alphabet& al) -> Inst {
    TermPtr x = r.below(8) == 0 ? mk_delta() : located_atom(r, al);
    TermPtr y = r.below(8) == 0 ? mk_delta() : located_atom(r, al);
    return LawInstance{mk_bin(Op::Par, x, y),
                       mk_alt(mk_bin(Op::LeftMerge, x, y), mk_bin(Op::LeftMerge, y, x))};
  };
  // ordered event pairs for the left-merge laws
  auto le_pair = [](Rng& r, const Alphabet& al) {
    std::vector<std::pair<std::string, std::string>> ps;
    for (const auto& x : al.actions)
      for (const auto& y : al.actions)
        if (al.causal_le(x, y)) ps.push_back({x, y});
    return r.pick(ps);
  };
  add("P5", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto [e1, e2] = le_pair(r, al);
    auto y = T2(r, al, aptc);
    return LawInstance{
        mk_bin(Op::LeftMerge, B::act(e1), mk_seq(B::act(e2), y)),
        mk_seq(mk_bin(Op::LeftMerge, B::act(e1), B::act(e2)), y)};
  });
  add("P6", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto [e1, e2] = le_pair(r, al);
    auto x = T2(r, al, aptc);
    return LawInstance{
        mk_bin(Op::LeftMerge, mk_seq(B::act(e1), x), B::act(e2)),
        mk_seq(mk_bin(Op::LeftMerge, B::act(e1), B::act(e2)), x)};
  });
  add("P7", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto [e1, e2] = le_pair(r, al);
    auto x = T2(r, al, aptc), y = T2(r, al, aptc);
    return LawInstance{
        mk_bin(Op::LeftMerge, mk_seq(B::act(e1), x), mk_seq(B::act(e2), y)),
        mk_seq(mk_bin(Op::LeftMerge, B::act(e1), B::act(e2)), mk_bin(Op::Merge, x, y))};
  });
  add("P8", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc), z = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::LeftMerge, mk_alt(x, y), z),
                       mk_alt(mk_bin(Op::LeftMerge, x, z), mk_bin(Op::LeftMerge, y, z))};
  });
  add("P9", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::LeftMerge, mk_delta(), x), mk_delta()};
  });

  auto any_ev = [](Rng& r, const Alphabet& al) { return r.pick(acts_of(al)); };
  add("C1", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto e1 = any_ev(r, al), e2 = any_ev(r, al);
    return LawInstance{mk_bin(Op::Comm, B::act(e1), B::act(e2)), mk_act(al.gamma(e1, e2))};
  });
  add("C2", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto e1 = any_ev(r, al), e2 = any_ev(r, al);
    auto y = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::Comm, B::act(e1), mk_seq(B::act(e2), y)),
                       mk_seq(mk_act(al.gamma(e1, e2)), y)};
  });
  add("C3", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto e1 = any_ev(r, al), e2 = any_ev(r, al);
    auto x = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::Comm, mk_seq(B::act(e1), x), B::act(e2)),
                       mk_seq(mk_act(al.gamma(e1, e2)), x)};
  });
  add("C4", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto e1 = any_ev(r, al), e2 = any_ev(r, al);
    auto x = T2(r, al, aptc), y = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::Comm, mk_seq(B::act(e1), x), mk_seq(B::act(e2), y)),
                       mk_seq(mk_act(al.gamma(e1, e2)), mk_bin(Op::Merge, x, y))};
  });
  add("C5", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc), z = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::Comm, mk_alt(x, y), z),
                       mk_alt(mk_bin(Op::Comm, x, z), mk_bin(Op::Comm, y, z))};
  });
  add("C6", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc), z = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::Comm, x, mk_alt(y, z)),
                       mk_alt(mk_bin(Op::Comm, x, y), mk_bin(Op::Comm, x, z))};
  });
  add("C7", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::Comm, mk_delta(), x), mk_delta()};
  });
  add("C8", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc);
    return LawInstance{mk_bin(Op::Comm, x, mk_delta()), mk_delta()};
  });

  add("CE1", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto e = any_ev(r, al);
    return LawInstance{mk_theta(B::act(e)), B::act(e)};
  });
  add("CE2", "aptc", [=](Rng&, const Alphabet&) -> Inst {
    return LawInstance{mk_theta(mk_delta()), mk_delta()};
  });
  add("CE3", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc);
    return LawInstance{mk_theta(mk_alt(x, y)),
                       mk_alt(mk_unless(mk_theta(x), y), mk_unless(mk_theta(y), x))};
  });
  add("CE4", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc);
    return LawInstance{mk_theta(mk_seq(x, y)), mk_seq(mk_theta(x), mk_theta(y))};
  });
  add("CE5", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc);
    return LawInstance{mk_theta(mk_bin(Op::Par, x, y)),
                       mk_alt(mk_bin(Op::Par, mk_unless(mk_theta(x), y), y),
                              mk_bin(Op::Par, mk_unless(mk_theta(y), x), x))};
  });
  add("CE6", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc);
    return LawInstance{mk_theta(mk_bin(Op::Comm, x, y)),
                       mk_alt(mk_bin(Op::Comm, mk_unless(mk_theta(x), y), y),
                              mk_bin(Op::Comm, mk_unless(mk_theta(y), x), x))};
  });

  add("U1", "aptc", [=](Rng& r, const Alphabet&) -> Inst {
    bool sw = r.flip();
    std::string e1 = sw ? "f" : "e", e2 = sw ? "e" : "f";
    return LawInstance{mk_unless(B::act(e1), B::act(e2)), mk_tau()};
  });
  add("U2", "aptc", [=](Rng&, const Alphabet&) -> Inst {
    // #(e,f), f<=g: e <| g = e
    return LawInstance{mk_unless(B::act("e"), B::act("g")), B::act("e")};
  });
  add("U3", "aptc", [=](Rng&, const Alphabet&) -> Inst {
    // #(e,f), f<=g: g <| e = tau
    return LawInstance{mk_unless(B::act("g"), B::act("e")), mk_tau()};
  });
  add("U4", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto e = any_ev(r, al);
    return LawInstance{mk_unless(B::act(e), mk_delta()), B::act(e)};
  });
  add("U5", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto e = any_ev(r, al);
    return LawInstance{mk_unless(mk_delta(), B::act(e)), mk_delta()};
  });
  auto unless_dist = [=](Op op) {
    return [=](Rng& r, const Alphabet& al) -> Inst {
      auto x = T2(r, al, aptc), y = T2(r, al, aptc), z = T2(r, al, aptc);
      return LawInstance{mk_unless(mk_bin(op, x, y), z),
                         mk_bin(op, mk_unless(x, z), mk_unless(y, z))};
    };
  };
  add("U6", "aptc", unless_dist(Op::Alt));
  add("U7", "aptc", unless_dist(Op::Seq));
  add("U8", "aptc", unless_dist(Op::LeftMerge));
  add("U9", "aptc", unless_dist(Op::Comm));
  auto unless_fold = [=](Op op) {
    return [=](Rng& r, const Alphabet& al) -> Inst {
      auto x = T2(r, al, aptc), y = T2(r, al, aptc), z = T2(r, al, aptc);
      return LawInstance{mk_unless(x, mk_bin(op, y, z)),
                         mk_unless(mk_unless(x, y), z)};
    };
  };
  add("U10", "aptc", unless_fold(Op::Alt));
  add("U11", "aptc", unless_fold(Op::Seq));
  add("U12", "aptc", unless_fold(Op::LeftMerge));
  add("U13", "aptc", unless_fold(Op::Comm));

  auto loc_dist = [=](const char* name, Op op) {
    return Law{name, "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
                 auto x = T2(r, al, aptc), y = T2(r, al, aptc);
                 LocWord u = gen_word(r, 2);
                 return LawInstance{mk_locprefix(u, mk_bin(op, x, y)),
                                    mk_bin(op, mk_locprefix(u, x), mk_locprefix(u, y))};
               }};
  };
  L.push_back(loc_dist("L5", Op::Merge));
  L.push_back(loc_dist("L6", Op::Par));
  L.push_back(loc_dist("L7", Op::Comm));
  add("L8", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc);
    LocWord u = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_theta(x)), mk_theta(mk_locprefix(u, x))};
  });
  add("L9", "aptc", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc);
    LocWord u = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_unless(x, y)),
                       mk_unless(mk_locprefix(u, x), mk_locprefix(u, y))};
  });
  add("L10", "aptc", [=](Rng& r, const Alphabet&) -> Inst {
    LocWord u = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_delta()), mk_delta()};
  });

  // ---- encapsulation: D1-D6, L11 ----
  auto pick_wrt = [](Rng& r, const Alphabet& al, const std::set<std::string>& s, bool inside) {
    std::vector<std::string> cand;
    for (const auto& a : al.actions)
      if (s.count(a) == (inside ? 1u : 0u)) cand.push_back(a);
    return r.pick(cand);
  };
  add("D1", "encap", [=](Rng& r, const Alphabet& al) -> Inst {
    std::string h = r.flip() ? "H" : "HH";
    std::string e = pick_wrt(r, al, al.encap_set(h), false);
    return LawInstance{mk_encap(h, B::act(e)), B::act(e)};
  });
  add("D2", "encap", [=](Rng& r, const Alphabet& al) -> Inst {
    std::string h = r.flip() ? "H" : "HH";
    std::string e = pick_wrt(r, al, al.encap_set(h), true);
    return LawInstance{mk_encap(h, B::act(e)), mk_delta()};
  });
  add("D3", "encap", [=](Rng& r, const Alphabet&) -> Inst {
    std::string h = r.flip() ? "H" : "HH";
    return LawInstance{mk_encap(h, mk_delta()), mk_delta()};
  });
  auto encap_dist = [=](const char* name, Op op) {
    return Law{name, "encap", [=](Rng& r, const Alphabet& al) -> Inst {
                 auto x = T2(r, al, aptc), y = T2(r, al, aptc);
                 std::string h = r.flip() ? "H" : "HH";
                 return LawInstance{mk_encap(h, mk_bin(op, x, y)),
                                    mk_bin(op, mk_encap(h, x), mk_encap(h, y))};
               }};
  };
  L.push_back(encap_dist("D4", Op::Alt));
  L.push_back(encap_dist("D5", Op::Seq));
  L.push_back(encap_dist("D6", Op::LeftMerge));
  add("L11", "encap", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc);
    LocWord u = gen_word(r, 2);
    std::string h = r.flip() ? "H" : "HH";
    return LawInstance{mk_locprefix(u, mk_encap(h, x)), mk_encap(h, mk_locprefix(u, x))};
  });

  // ---- projection: PR1-PR6, L12 ----
  add("PR1", "proj", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc);
    int n = r.below(3);
    return LawInstance{mk_proj(n, mk_alt(x, y)), mk_alt(mk_proj(n, x), mk_proj(n, y))};
  });
  add("PR2", "proj", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc), y = T2(r, al, aptc);
    int n = r.below(3);
    return LawInstance{mk_proj(n, mk_bin(Op::LeftMerge, x, y)),
                       mk_bin(Op::LeftMerge, mk_proj(n, x), mk_proj(n, y))};
  });
  auto gen_head = [=](Rng& r, const Alphabet& al) {
    TermPtr h = located_atom(r, al);
    int extra = r.below(2);
    for (int i = 0; i < extra; ++i) h = mk_bin(Op::LeftMerge, h, located_atom(r, al));
    return h;
  };
  add("PR3", "proj", [=](Rng& r, const Alphabet& al) -> Inst {
    TermPtr h = gen_head(r, al);
    int n = r.below(3);
    return LawInstance{mk_proj(n + 1, h), h};
  });
  add("PR4", "proj", [=](Rng& r, const Alphabet& al) -> Inst {
    TermPtr h = gen_head(r, al);
    auto x = T2(r, al, aptc);
    int n = r.below(3);
    return LawInstance{mk_proj(n + 1, mk_seq(h, x)), mk_seq(h, mk_proj(n, x))};
  });
  add("PR5", "proj", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc);
    return LawInstance{mk_proj(0, x), mk_delta()};
  });
  add("PR6", "proj", [=](Rng& r, const Alphabet&) -> Inst {
    int n = r.below(3);
    return LawInstance{mk_proj(n, mk_delta()), mk_delta()};
  });
  add("L12", "proj", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, aptc);
    LocWord u = gen_word(r, 2);
    int n = r.below(3);
    return LawInstance{mk_locprefix(u, mk_proj(n, x)), mk_proj(n, mk_locprefix(u, x))};
  });

  // ---- silent step: B1-B3, L13 (rooted branching) ----
  add("B1", "tau", [=](Rng& r, const Alphabet& al) -> Inst {
    TermPtr e = located_atom(r, al);
    return LawInstance{mk_seq(e, mk_tau()), e};
  });
  add("B2", "tau", [=](Rng& r, const Alphabet& al) -> Inst {
    TermPtr e = located_atom(r, al);
    auto x = T2(r, al, atau), y = T2(r, al, atau);
    return LawInstance{mk_seq(e, mk_alt(mk_seq(mk_tau(), mk_alt(x, y)), x)),
                       mk_seq(e, mk_alt(x, y))};
  });
  add("B3", "tau", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, atau);
    return LawInstance{mk_bin(Op::LeftMerge, x, mk_tau()), x};
  });
  add("L13", "tau", [=](Rng& r, const Alphabet&) -> Inst {
    LocWord u = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_tau()), mk_tau()};
  });

  // ---- abstraction: TI1-TI6, L14-L16 (rooted branching) ----
  add("TI1", "hide", [=](Rng& r, const Alphabet& al) -> Inst {
    std::string i = r.flip() ? "I" : "J";
    std::string e = pick_wrt(r, al, al.hide_set(i), false);
    return LawInstance{mk_hide(i, B::act(e)), B::act(e)};
  });
  add("TI2", "hide", [=](Rng& r, const Alphabet& al) -> Inst {
    std::string i = r.flip() ? "I" : "J";
    std::string e = pick_wrt(r, al, al.hide_set(i), true);
    return LawInstance{mk_hide(i, B::act(e)), mk_tau()};
  });
  add("TI3", "hide", [=](Rng& r, const Alphabet&) -> Inst {
    std::string i = r.flip() ? "I" : "J";
    return LawInstance{mk_hide(i, mk_delta()), mk_delta()};
  });
  auto hide_dist = [=](const char* name, Op op) {
    return Law{name, "hide", [=](Rng& r, const Alphabet& al) -> Inst {
                 auto x = T2(r, al, atau), y = T2(r, al, atau);
                 std::string i = r.flip() ? "I" : "J";
                 return LawInstance{mk_hide(i, mk_bin(op, x, y)),
                                    mk_bin(op, mk_hide(i, x), mk_hide(i, y))};
               }};
  };
  L.push_back(hide_dist("TI4", Op::Alt));
  L.push_back(hide_dist("TI5", Op::Seq));
  L.push_back(hide_dist("TI6", Op::LeftMerge));
  add("L14", "hide", [=](Rng& r, const Alphabet& al) -> Inst {
    auto x = T2(r, al, atau);
    LocWord u = gen_word(r, 2);
    std::string i = r.flip() ? "I" : "J";
    return LawInstance{mk_locprefix(u, mk_hide(i, x)), mk_hide(i, mk_locprefix(u, x))};
  });
  add("L15", "hide", [=](Rng& r, const Alphabet& al) -> Inst {
    LocWord u = gen_word(r, 2);
    std::string i = r.flip() ? "I" : "J";
    std::string e = pick_wrt(r, al, al.hide_set(i), false);
    return LawInstance{mk_hide(i, B::at(e, u)), B::at(e, u)};
  });
  add("L16", "hide", [=](Rng& r, const Alphabet& al) -> Inst {
    LocWord u = gen_word(r, 2);
    std::string i = r.flip() ? "I" : "J";
    std::string e = pick_wrt(r, al, al.hide_set(i), true);
    return LawInstance{mk_hide(i, B::at(e, u)), mk_tau()};
  });

  // ---- CTC static laws (strong static location step) ----
  // The composition laws are stated for distributed components; with
  // synchronization in play the truly concurrent composition is not
  // associative, so their instances draw from the communication-free part
  // of the alphabet (no partner pairs).
  auto ctc_free = [](Rng& r, const Alphabet& al) {
    Alphabet sub = al;
    sub.actions.erase("b");
    sub.comm.clear();
    return gen_term(r, sub, 1 + r.below(law_term_size()), Dialect::Ctc);
  };
  add("S1", "ctc-static", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = ctc_free(r, al), q = ctc_free(r, al);
    return LawInstance{mk_bin(Op::Par, p, q), mk_bin(Op::Par, q, p)};
  });
  add("S2", "ctc-static", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = ctc_free(r, al), q = ctc_free(r, al), s = ctc_free(r, al);
    return LawInstance{mk_bin(Op::Par, p, mk_bin(Op::Par, q, s)),
                       mk_bin(Op::Par, mk_bin(Op::Par, p, q), s)};
  });
  add("S3", "ctc-static", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = ctc_free(r, al);
    return LawInstance{mk_bin(Op::Par, p, mk_nil()), p};
  });
  add("S4", "ctc-static", [=](Rng& r, const Alphabet& al) -> Inst {
    for (int tries = 0; tries < 20; ++tries) {
      auto p = T2(r, al, ctc);
      std::set<std::string> Lset{r.pick(acts_of(al))};
      auto blocked = Lset;
      for (auto& x : al.comm_partners(Lset)) blocked.insert(x);
      auto s = sort_of(al, p);
      bool disjoint = true;
      for (auto& l : s)
        if (blocked.count(l)) disjoint = false;
      if (!disjoint) continue;
      return LawInstance{mk_restrict(Lset, p), p};
    }
    return std::nullopt;
  });
  add("S5", "ctc-static", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = T2(r, al, ctc);
    std::set<std::string> K{r.pick(acts_of(al))}, Lset{r.pick(acts_of(al))};
    std::set<std::string> KL = K;
    KL.insert(Lset.begin(), Lset.end());
    return LawInstance{mk_restrict(Lset, mk_restrict(K, p)), mk_restrict(KL, p)};
  });
  add("S6", "ctc-static", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = T2(r, al, ctc);
    std::string f = r.flip() ? "id" : "swap";
    std::set<std::string> Lset{r.pick(acts_of(al))};
    std::set<std::string> pre;  // f^-1(L)
    for (auto& a : acts_of(al))
      if (Lset.count(al.relabel(f, a))) pre.insert(a);
    return LawInstance{mk_restrict(Lset, mk_relabel(f, p)),
                       mk_relabel(f, mk_restrict(pre, p))};
  });
  add("S7", "ctc-static", [=](Rng& r, const Alphabet& al) -> Inst {
    // With the both-components-move composition, a restriction that kills
    // part of one component entangles the other into the deadlock, and
    // the distribution law fails; instances therefore keep the blocked
    // set away from the components' sorts (their cross-partner content,
    // the law's stated condition, is already empty here).
    for (int tries = 0; tries < 20; ++tries) {
      auto p = ctc_free(r, al), q = ctc_free(r, al);
      std::set<std::string> Lset{r.pick(acts_of(al))};
      auto blocked = Lset;
      for (auto& x : al.comm_partners(Lset)) blocked.insert(x);
      bool ok = true;
      for (auto& l : sort_of(al, p))
        if (blocked.count(l)) ok = false;
      for (auto& l : sort_of(al, q))
        if (blocked.count(l)) ok = false;
      if (!ok) continue;
      return LawInstance{mk_restrict(Lset, mk_bin(Op::Par, p, q)),
                         mk_bin(Op::Par, mk_restrict(Lset, p), mk_restrict(Lset, q))};
    }
    return std::nullopt;
  });
  add("S8", "ctc-static", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = T2(r, al, ctc);
    return LawInstance{mk_relabel("id", p), p};
  });
  add("S9", "ctc-static", [=](Rng& r, const Alphabet& al) -> Inst {
    for (int tries = 0; tries < 20; ++tries) {
      auto p = T2(r, al, ctc);
      auto s = sort_of(al, p);
      std::string f = r.flip() ? "id" : "swap";
      std::string f2 = r.flip() ? "id" : "swap";
      bool agree = true;
      for (auto& l : s)
        if (al.relabel(f, l) != al.relabel(f2, l)) agree = false;
      if (!agree) continue;
      return LawInstance{mk_relabel(f, p), mk_relabel(f2, p)};
    }
    return std::nullopt;
  });
  add("S10", "ctc-static", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = T2(r, al, ctc);
    std::string f = r.flip() ? "id" : "swap";
    std::string g = r.flip() ? "id" : "swap";
    // find the declared composite g o f
    for (auto& [h, table] : al.relabellings) {
      (void)table;
      bool same = true;
      for (auto& a : acts_of(al))
        if (al.relabel(h, a) != al.relabel(g, al.relabel(f, a))) same = false;
      if (same)
        return LawInstance{mk_relabel(g, mk_relabel(f, p)), mk_relabel(h, p)};
    }
    return std::nullopt;
  });
  add("S11", "ctc-static", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = ctc_free(r, al), q = ctc_free(r, al);
    std::string f = "id";  // swap would re-introduce a partner pair
    return LawInstance{mk_relabel(f, mk_bin(Op::Par, p, q)),
                       mk_bin(Op::Par, mk_relabel(f, p), mk_relabel(f, q))};
  });

  // ---- location laws (pomset, step and hp checkers) ----
  add("LL1", "ctc-location", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = T2(r, al, ctc);
    return LawInstance{mk_locprefix(LocWord::eps(), p), p};
  });
  add("LL2", "ctc-location", [=](Rng& r, const Alphabet&) -> Inst {
    LocWord u = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_nil()), mk_nil()};
  });
  add("LL3", "ctc-location", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = T2(r, al, ctc);
    std::string alpha = r.below(4) == 0 ? kTau : r.pick(acts_of(al));
    LocWord u = gen_word(r, 2);
    LocWord item_at = is_tau(alpha) ? LocWord::eps() : u;
    return LawInstance{mk_locprefix(u, mk_prefix({{alpha, LocWord::eps()}}, p)),
                       mk_prefix({{alpha, item_at}}, mk_locprefix(u, p))};
  });
  add("LL4", "ctc-location", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = T2(r, al, ctc), q = T2(r, al, ctc);
    LocWord u = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_alt(p, q)),
                       mk_alt(mk_locprefix(u, p), mk_locprefix(u, q))};
  });
  add("LL5", "ctc-location", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = T2(r, al, ctc), q = T2(r, al, ctc);
    LocWord u = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_bin(Op::Par, p, q)),
                       mk_bin(Op::Par, mk_locprefix(u, p), mk_locprefix(u, q))};
  });
  add("LL6", "ctc-location", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = T2(r, al, ctc);
    std::set<std::string> Lset{r.pick(acts_of(al))};
    LocWord u = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_restrict(Lset, p)),
                       mk_restrict(Lset, mk_locprefix(u, p))};
  });
  add("LL7", "ctc-location", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = T2(r, al, ctc);
    std::string f = r.flip() ? "id" : "swap";
    LocWord u = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_relabel(f, p)), mk_relabel(f, mk_locprefix(u, p))};
  });
  add("LL8", "ctc-location", [=](Rng& r, const Alphabet& al) -> Inst {
    auto p = T2(r, al, ctc);
    LocWord u = gen_word(r, 2), v = gen_word(r, 2);
    return LawInstance{mk_locprefix(u, mk_locprefix(v, p)), mk_locprefix(u.concat(v), p)};
  });

  return L;
}

}  // namespace

void set_law_term_size(int size) { g_law_term_size = size < 1 ? 1 : size; }
int law_term_size() { return g_law_term_size; }

const std::vector<Law>& all_laws() {
  static const std::vector<Law> L = build_laws();
  return L;
}

std::vector<const Law*> laws_in_suite(const std::string& suite) {
  std::vector<const Law*> out;
  for (const auto& l : all_laws())
    if (l.suite == suite) out.push_back(&l);
  return out;
}

std::vector<std::string> suite_names() {
  return {"batc", "aptc", "encap", "proj", "tau", "hide", "ctc-static", "ctc-location",
          "expansion", "cfar"};
}

RelationKind suite_checker(const std::string& suite) {
  RelationKind k;
  k.flavor = Flavor::Step;
  k.locality = Locality::StaticLoc;
  k.strength = (suite == "tau" || suite == "hide" || suite == "cfar")
                   ? Strength::RootedBranching
                   : Strength::Strong;
  return k;
}

TermPtr gen_prefix_composition(Rng& rng, const Alphabet& al) {
  int n = 2 + rng.below(2);
  // communication-capable actions only appear in binary compositions;
  // wider ones draw from a synchronization-free palette (the n-ary
  // expansion shape does not account for a pair synchronizing while a
  // third component moves)
  std::vector<std::string> palette =
      n == 2 ? acts_of(al) : std::vector<std::string>{"a", "c", "e", "g"};
  auto gen_cont = [&](int depth) -> TermPtr {
    if (depth <= 0 || rng.below(3) == 0) return mk_nil();
    return mk_prefix({{rng.pick(palette), LocWord::eps()}}, mk_nil());
  };
  TermPtr comp;
  for (int i = 0; i < n; ++i) {
    int summands = 1 + rng.below(2);
    TermPtr sum;
    for (int s = 0; s < summands; ++s) {
      TermPtr piece = mk_prefix({{rng.pick(palette), LocWord::eps()}}, gen_cont(1));
      sum = sum ? mk_alt(sum, piece) : piece;
    }
    TermPtr c = mk_locprefix(LocWord::single("l" + std::to_string(i + 1)), sum);
    // a relabelling could re-introduce communication partners, so only
    // binary compositions get one
    if (n == 2 && rng.below(3) == 0) c = mk_relabel(rng.flip() ? "id" : "swap", c);
    comp = comp ? mk_bin(Op::Par, comp, c) : c;
  }
  if (rng.below(4) == 0) {
    std::set<std::string> Lset{rng.pick(acts_of(al))};
    // keep at least one combination alive: restrict only when every
    // component still has an unblocked action
    auto blocked = Lset;
    for (auto& x : al.comm_partners(Lset)) blocked.insert(x);
    SosCtx ctx{&al, nullptr, Mode::Static, true};
    bool alive = true;
    std::function<void(const TermPtr&, std::vector<TermPtr>&)> flat =
        [&](const TermPtr& t, std::vector<TermPtr>& cs) {
          if (t->op == Op::Par) {
            flat(t->a, cs);
            flat(t->b, cs);
          } else
            cs.push_back(t);
        };
    std::vector<TermPtr> cs;
    flat(comp, cs);
    for (auto& c : cs) {
      bool any = false;
      for (auto& s : successors(ctx, c))
        if (!s.step.tau() && !blocked.count(s.step.events[0].action)) any = true;
      if (!any) alive = false;
    }
    if (alive) comp = mk_restrict(Lset, comp);
  }
  return comp;
}

TermPtr expand_composition(const Alphabet& al, const TermPtr& p) {
  TermPtr body = p;
  std::optional<std::set<std::string>> restr;
  if (body->op == Op::Restrict) {
    restr = body->label_set;
    body = body->a;
  }
  std::vector<TermPtr> comps;
  std::function<void(const TermPtr&)> flat = [&](const TermPtr& t) {
    if (t->op == Op::Par) {
      flat(t->a);
      flat(t->b);
    } else
      comps.push_back(t);
  };
  flat(body);

  SosCtx ctx{&al, nullptr, Mode::Static, true};
  struct Move {
    std::string action;
    LocWord at;
    TermPtr target;
  };
  std::vector<std::vector<Move>> moves(comps.size());
  for (size_t i = 0; i < comps.size(); ++i)
    for (auto& s : successors(ctx, comps[i])) {
      if (s.step.tau() || s.step.events.size() != 1)
        throw std::runtime_error("expansion needs single-action components");
      moves[i].push_back({s.step.events[0].action, s.step.events[0].at, s.target});
    }

  std::set<std::string> blocked;
  if (restr) {
    blocked = *restr;
    for (auto& x : al.comm_partners(*restr)) blocked.insert(x);
  }
  auto wrap = [&](TermPtr t) { return restr ? mk_restrict(*restr, t) : t; };
  auto rebuild = [&](const std::vector<TermPtr>& cs) {
    TermPtr t;
    for (auto& c : cs) t = t ? mk_bin(Op::Par, t, c) : c;
    return t;
  };

  TermPtr sum;
  // full combinations: one move per component
  std::vector<size_t> pick(comps.size(), 0);
  for (;;) {
    bool ok = true;
    for (size_t i = 0; i < comps.size(); ++i)
      if (blocked.count(moves[i][pick[i]].action)) ok = false;
    // a communicable pair blocks the combination (Com3 side condition)
    for (size_t i = 0; i < comps.size() && ok; ++i)
      for (size_t j = i + 1; j < comps.size() && ok; ++j)
        if (al.comm_defined(moves[i][pick[i]].action, moves[j][pick[j]].action)) ok = false;
    if (ok) {
      std::vector<LocatedAction> items;
      std::vector<TermPtr> targets;
      for (size_t i = 0; i < comps.size(); ++i) {
        items.push_back({moves[i][pick[i]].action, moves[i][pick[i]].at});
        targets.push_back(moves[i][pick[i]].target);
      }
      TermPtr piece = mk_prefix(std::move(items), wrap(rebuild(targets)));
      sum = sum ? mk_alt(sum, piece) : piece;
    }
    size_t k = 0;
    while (k < comps.size() && ++pick[k] == moves[k].size()) pick[k++] = 0;
    if (k == comps.size()) break;
  }
  // tau summands for communicating pairs
  for (size_t i = 0; i < comps.size(); ++i)
    for (size_t j = i + 1; j < comps.size(); ++j)
      for (auto& mi : moves[i])
        for (auto& mj : moves[j]) {
          if (!al.comm_defined(mi.action, mj.action)) continue;
          std::vector<TermPtr> targets;
          for (size_t k = 0; k < comps.size(); ++k)
            targets.push_back(k == i ? mi.target : k == j ? mj.target : comps[k]);
          TermPtr piece = mk_prefix({{kTau, LocWord::eps()}}, wrap(rebuild(targets)));
          sum = sum ? mk_alt(sum, piece) : piece;
        }
  return sum ? sum : mk_delta();
}

namespace {

std::vector<std::vector<TermPtr>> terms_by_size(int max_size,
                                                const std::vector<std::string>& atoms,
                                                const std::string& loc, bool parallel) {
  std::vector<std::vector<TermPtr>> by(max_size + 1);
  for (auto& a : atoms) by[1].push_back(mk_act(a));
  for (int n = 2; n <= max_size; ++n) {
    for (auto& t : by[n - 1]) {
      by[n].push_back(mk_locprefix(LocWord::eps(), t));
      by[n].push_back(mk_locprefix(LocWord::single(loc), t));
    }
    for (int i = 1; i < n - 1; ++i) {
      for (auto& l : by[i])
        for (auto& r : by[n - 1 - i]) {
          by[n].push_back(mk_seq(l, r));
          by[n].push_back(mk_alt(l, r));
          if (parallel) {
            by[n].push_back(mk_bin(Op::Par, l, r));
            by[n].push_back(mk_bin(Op::Merge, l, r));
          }
        }
    }
  }
  return by;
}

std::vector<TermPtr> flatten_sizes(std::vector<std::vector<TermPtr>> by) {
  std::vector<TermPtr> out;
  for (auto& v : by)
    for (auto& t : v) out.push_back(t);
  return out;
}

}  // namespace

std::vector<TermPtr> exhaustive_batc(int max_size, const std::vector<std::string>& atoms,
                                     const std::string& loc) {
  return flatten_sizes(terms_by_size(max_size, atoms, loc, false));
}

std::vector<TermPtr> exhaustive_parallel(int max_size, const std::vector<std::string>& atoms,
                                         const std::string& loc) {
  return flatten_sizes(terms_by_size(max_size, atoms, loc, true));
}

LinearSpec gen_linear_spec(Rng& rng, const std::string& name, int n_vars, int max_summands,
                           const std::vector<std::string>& actions, bool allow_tau) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    LinearSpec sp;
    sp.name = name;
    for (int i = 0; i < n_vars; ++i) {
      std::string v = "X" + std::to_string(i);
      sp.vars.push_back(v);
      int k = rng.below(max_summands + 1);
      std::vector<Summand> sums;
      for (int s = 0; s < k; ++s) {
        Summand sm;
        int na = 1 + rng.below(2);
        for (int a = 0; a < na; ++a) {
          std::string act =
              allow_tau && rng.below(5) == 0 ? kTau : rng.pick(actions);
          LocWord w = rng.below(3) == 0 ? LocWord::single("l1") : LocWord::eps();
          if (is_tau(act)) w = LocWord::eps();
          sm.actions.push_back({act, w});
        }
        std::sort(sm.actions.begin(), sm.actions.end());
        if (rng.below(4) != 0) {
          sm.has_target = true;
          sm.target = "X" + std::to_string(rng.below(n_vars));
        }
        sums.push_back(sm);
      }
      sp.equations[v] = sums;
    }
    if (!validate_guarded(sp)) return sp;
  }
  // fall back to a trivially guarded shape
  LinearSpec sp;
  sp.name = name;
  sp.vars.push_back("X0");
  Summand sm;
  sm.actions.push_back({actions.front(), LocWord::eps()});
  sp.equations["X0"] = {sm};
  return sp;
}

TermPtr gen_context(Rng& rng, const Alphabet& al, const TermPtr& hole) {
  switch (rng.below(8)) {
    case 0:
      return mk_alt(hole, T2(rng, al, Dialect::Aptc));
    case 1:
      return mk_alt(T2(rng, al, Dialect::Aptc), hole);
    case 2:
      return mk_seq(hole, T2(rng, al, Dialect::Aptc));
    case 3:
      return mk_seq(T2(rng, al, Dialect::Aptc), hole);
    case 4:
      return mk_bin(Op::Par, hole, T2(rng, al, Dialect::Aptc));
    case 5:
      return mk_locprefix(gen_word(rng, 2), hole);
    case 6:
      return mk_encap(rng.flip() ? "H" : "HH", hole);
    default:
      return mk_relabel(rng.flip() ? "id" : "swap", hole);
  }
}

}  // namespace locpa
