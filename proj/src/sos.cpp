#include "locpa/sos.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "locpa/syntax.hpp"

namespace locpa {

std::vector<std::string> Step::labels() const {
  std::vector<std::string> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.action);
  return out;  // events sorted by (action, word) so labels are sorted
}

std::string Step::key() const {
  if (tau()) return kTau;
  std::string s;
  for (size_t i = 0; i < events.size(); ++i) {
    if (i) s += ',';
    s += events[i].action + "@" + events[i].at.str();
  }
  return s;
}

Step mk_tau_step() { return Step{}; }

Step mk_step(std::vector<StepEvent> evs) {
  Step s;
  s.events = std::move(evs);
  std::sort(s.events.begin(), s.events.end());
  return s;
}

namespace {

constexpr const char* kMintPrefix = "loc";

std::string mint_name(int k) { return kMintPrefix + std::to_string(k); }

// combined residual of a binary composition; op is what survives when
// both sides keep running
TermPtr combine(Op op, const TermPtr& l, const TermPtr& r) {
  if (!l && !r) return nullptr;
  if (!l) return r;
  if (!r) return l;
  return mk_bin(op, l, r);
}

// the transition word of a step: longest common prefix of its events'
// words (tau steps have none)
LocWord step_word(const Step& s) {
  if (s.events.empty()) return LocWord::eps();
  LocWord w = s.events[0].at;
  for (size_t i = 1; i < s.events.size(); ++i) w = loc_common_prefix(w, s.events[i].at);
  return w;
}

Step merge_steps(const Step& a, const Step& b) {
  Step out;
  out.events = a.events;
  out.events.insert(out.events.end(), b.events.begin(), b.events.end());
  std::sort(out.events.begin(), out.events.end());
  out.ghosts = a.ghosts;
  out.ghosts.insert(out.ghosts.end(), b.ghosts.begin(), b.ghosts.end());
  std::sort(out.ghosts.begin(), out.ghosts.end());
  return out;
}

// effective actions for the left-merge ordering gate
std::vector<std::string> effective(const Step& s) {
  std::vector<std::string> out;
  for (const auto& e : s.events) out.push_back(e.action);
  for (const auto& g : s.ghosts)
    if (!is_tau(g)) out.push_back(g);
  return out;
}

// gate for x << y: the left step must contain an event at or below every
// event of the combination in the causal order; an all-silent left side
// passes
bool left_merge_gate(const Alphabet& al, const Step& l, const Step& r) {
  auto el = effective(l), er = effective(r);
  if (el.empty()) return true;
  for (const auto& m : el) {
    bool least = true;
    for (const auto& e : el)
      if (!al.causal_le(m, e)) { least = false; break; }
    if (least)
      for (const auto& e : er)
        if (!al.causal_le(m, e)) { least = false; break; }
    if (least) return true;
  }
  return false;
}

struct Engine {
  const SosCtx& ctx;
  std::map<const Term*, bool> stuck_memo;

  const Alphabet& al() const { return *ctx.al; }

  bool is_stuck(const TermPtr& t, int base) {
    auto it = stuck_memo.find(t.get());
    if (it != stuck_memo.end()) return it->second;
    bool s = succs(t, base).empty();
    stuck_memo[t.get()] = s;
    return s;
  }

  std::vector<Succ> succs(const TermPtr& t, int base) {
    std::vector<Succ> out;
    switch (t->op) {
      case Op::Nil:
      case Op::Delta:
        break;
      case Op::TauAtom:
        out.push_back({mk_tau_step(), nullptr, 0});
        break;
      case Op::Act: {
        if (ctx.mode == Mode::Dynamic) {
          Step s = mk_step({{t->name, LocWord::single(mint_name(base))}});
          out.push_back({s, nullptr, 1});
        } else {
          out.push_back({mk_step({{t->name, LocWord::eps()}}), nullptr, 0});
        }
        break;
      }
      case Op::LocPrefix: {
        for (auto& s : succs(t->a, base)) {
          Step st = s.step;
          for (auto& e : st.events) {
            e.at = t->word.concat(e.at);
            if (e.has_sync) {
              e.sync_u = t->word.concat(e.sync_u);
              e.sync_v = t->word.concat(e.sync_v);
            }
          }
          std::sort(st.events.begin(), st.events.end());
          TermPtr tgt = s.target ? mk_locprefix(t->word, s.target) : nullptr;
          out.push_back({st, tgt, s.minted});
        }
        break;
      }
      case Op::Prefix: {
        std::vector<StepEvent> vis;
        int minted = 0;
        LocWord fresh;
        bool fresh_minted = false;
        for (const auto& it : t->prefix_items) {
          if (is_tau(it.action)) continue;
          LocWord w = it.at;
          if (ctx.mode == Mode::Dynamic && w.empty()) {
            if (!fresh_minted) {
              fresh = LocWord::single(mint_name(base));
              fresh_minted = true;
              minted = 1;
            }
            w = fresh;
          }
          vis.push_back({it.action, w});
        }
        // Act2 side condition: no two prefix actions may communicate
        bool blocked = false;
        for (size_t i = 0; i < vis.size() && !blocked; ++i)
          for (size_t j = i + 1; j < vis.size() && !blocked; ++j)
            if (al().comm_defined(vis[i].action, vis[j].action)) blocked = true;
        if (blocked) break;
        Step s = mk_step(std::move(vis));
        for (const auto& it : t->prefix_items)
          if (is_tau(it.action)) s.ghosts.push_back(kTau);
        TermPtr tgt = t->a;
        if (ctx.mode == Mode::Dynamic && fresh_minted) tgt = mk_locprefix(fresh, tgt);
        out.push_back({s, tgt, minted});
        break;
      }
      case Op::Seq: {
        for (auto& s : succs(t->a, base)) {
          TermPtr cont;
          if (ctx.mode == Mode::Dynamic) {
            LocWord u = step_word(s.step);
            TermPtr rest = s.target ? mk_seq(s.target, t->b) : t->b;
            cont = u.empty() ? rest : mk_locprefix(u, rest);
          } else {
            cont = s.target ? mk_seq(s.target, t->b) : t->b;
          }
          out.push_back({s.step, cont, s.minted});
        }
        break;
      }
      case Op::Alt: {
        auto l = succs(t->a, base);
        auto r = succs(t->b, base);
        out.insert(out.end(), l.begin(), l.end());
        out.insert(out.end(), r.begin(), r.end());
        break;
      }
      case Op::Par: {
        // the CTC composition rules activate when this composition's own
        // subtree uses the CTC constructors; deciding it per subtree keeps
        // embedded terms stable under surrounding contexts
        bool ctc = has_ctc_marker(t);
        auto ls = succs(t->a, base);
        Op res_op = ctc ? Op::Par : Op::Merge;
        if (ctc) {
          // Com1/Com2: a lone move is derivable only if the other side
          // has no transitions at all
          if (is_stuck(t->b, base)) {
            for (auto& s : ls)
              out.push_back({s.step, combine(Op::Par, s.target, t->b), s.minted});
          }
          if (is_stuck(t->a, base)) {
            for (auto& s : succs(t->b, base))
              out.push_back({s.step, combine(Op::Par, t->a, s.target), s.minted});
          }
        }
        for (auto& sl : ls) {
          // the right component mints after the left, so its fresh names
          // start past the left step's allocations
          auto rs = succs(t->b, base + sl.minted);
          for (auto& sr : rs) {
            const Step& right = sr.step;
            TermPtr rtgt = sr.target;
            if (ctc) {
              // Com4 replaces Com3 exactly on single communicable pairs;
              // wider combinations are unrestricted (blocking them would
              // break associativity of the composition)
              if (sl.step.events.size() == 1 && right.events.size() == 1 &&
                  al().comm_defined(sl.step.events[0].action, right.events[0].action)) {
                Step tau = mk_tau_step();
                out.push_back({tau, combine(Op::Par, sl.target, rtgt), sl.minted + sr.minted});
                continue;
              }
            }
            out.push_back({merge_steps(sl.step, right), combine(res_op, sl.target, rtgt),
                           sl.minted + sr.minted});
          }
        }
        break;
      }
      case Op::Merge: {
        auto ls = succs(t->a, base);
        for (auto& sl : ls) {
          auto rs = succs(t->b, base + sl.minted);
          for (auto& sr : rs) {
            out.push_back({merge_steps(sl.step, sr.step), combine(Op::Merge, sl.target, sr.target),
                           sl.minted + sr.minted});
            add_sync(out, sl, sr);
          }
        }
        break;
      }
      case Op::Comm: {
        auto ls = succs(t->a, base);
        for (auto& sl : ls)
          for (auto& sr : succs(t->b, base + sl.minted)) add_sync(out, sl, sr);
        break;
      }
      case Op::LeftMerge: {
        auto ls = succs(t->a, base);
        for (auto& sl : ls) {
          auto rs = succs(t->b, base + sl.minted);
          for (auto& sr : rs) {
            if (!left_merge_gate(al(), sl.step, sr.step)) continue;
            out.push_back({merge_steps(sl.step, sr.step), combine(Op::Merge, sl.target, sr.target),
                           sl.minted + sr.minted});
          }
        }
        break;
      }
      case Op::Theta: {
        TermPtr ex = theta_expand(t->a);
        if (ex) {
          out = succs(ex, base);
        } else {
          for (auto& s : succs(t->a, base))
            out.push_back({s.step, s.target ? mk_theta(s.target) : nullptr, s.minted});
        }
        break;
      }
      case Op::Unless: {
        std::set<std::string> sil = sort_resolved(al(), t->b, ctx.reg);
        for (auto& s : succs(t->a, base)) {
          Step st;
          st.ghosts = s.step.ghosts;
          for (const auto& e : s.step.events) {
            if (al().silenced_by_any(e.action, sil))
              st.ghosts.push_back(e.action);
            else
              st.events.push_back(e);
          }
          std::sort(st.events.begin(), st.events.end());
          std::sort(st.ghosts.begin(), st.ghosts.end());
          out.push_back({st, s.target ? mk_unless(s.target, t->b) : nullptr, s.minted});
        }
        break;
      }
      case Op::Encap: {
        const auto& H = al().encap_set(t->name);
        for (auto& s : succs(t->a, base)) {
          bool blocked = false;
          for (const auto& e : s.step.events)
            if (H.count(e.action)) blocked = true;
          if (blocked) continue;
          out.push_back({s.step, s.target ? mk_encap(t->name, s.target) : nullptr, s.minted});
        }
        break;
      }
      case Op::Hide: {
        const auto& I = al().hide_set(t->name);
        for (auto& s : succs(t->a, base)) {
          Step st;
          st.ghosts = s.step.ghosts;
          for (const auto& e : s.step.events) {
            if (I.count(e.action))
              st.ghosts.push_back(e.action);
            else
              st.events.push_back(e);
          }
          std::sort(st.events.begin(), st.events.end());
          std::sort(st.ghosts.begin(), st.ghosts.end());
          out.push_back({st, s.target ? mk_hide(t->name, s.target) : nullptr, s.minted});
        }
        break;
      }
      case Op::Proj: {
        if (t->proj_n <= 0) break;
        for (auto& s : succs(t->a, base))
          out.push_back(
              {s.step, s.target ? mk_proj(t->proj_n - 1, s.target) : nullptr, s.minted});
        break;
      }
      case Op::Restrict: {
        std::set<std::string> blocked = t->label_set;
        for (const auto& p : al().comm_partners(t->label_set)) blocked.insert(p);
        for (auto& s : succs(t->a, base)) {
          bool hit = false;
          for (const auto& e : s.step.events)
            if (blocked.count(e.action)) hit = true;
          if (hit) continue;
          out.push_back({s.step, s.target ? mk_restrict(t->label_set, s.target) : nullptr,
                         s.minted});
        }
        break;
      }
      case Op::Relabel: {
        for (auto& s : succs(t->a, base)) {
          Step st = s.step;
          for (auto& e : st.events) e.action = al().relabel(t->name, e.action);
          std::sort(st.events.begin(), st.events.end());
          out.push_back({st, s.target ? mk_relabel(t->name, s.target) : nullptr, s.minted});
        }
        break;
      }
      case Op::Const: {
        const TermPtr* body = ctx.reg ? ctx.reg->find_const(t->name) : nullptr;
        if (!body) throw std::runtime_error("unresolved constant: " + t->name);
        out = succs(*body, base);
        break;
      }
      case Op::RecRef: {
        const LinearSpec* sp = ctx.reg ? ctx.reg->find_spec(t->spec_name) : nullptr;
        if (!sp) throw std::runtime_error("unresolved specification: " + t->spec_name);
        auto it = sp->equations.find(t->name);
        if (it == sp->equations.end())
          throw std::runtime_error("unknown variable " + t->name + " in " + t->spec_name);
        for (const auto& sum : it->second) {
          Step st;
          for (const auto& la : sum.actions) {
            if (is_tau(la.action))
              st.ghosts.push_back(kTau);
            else
              st.events.push_back({la.action, la.at});
          }
          std::sort(st.events.begin(), st.events.end());
          TermPtr tgt = sum.has_target ? mk_recref(sum.target, t->spec_name) : nullptr;
          out.push_back({st, tgt, 0});
        }
        break;
      }
    }
    return out;
  }

  void add_sync(std::vector<Succ>& out, const Succ& sl, const Succ& sr) {
    // communication merge: single visible event on each side
    if (sl.step.events.size() != 1 || sr.step.events.size() != 1) return;
    if (!sl.step.ghosts.empty() || !sr.step.ghosts.empty()) return;
    const auto& e1 = sl.step.events[0];
    const auto& e2 = sr.step.events[0];
    std::string c = al().gamma(e1.action, e2.action);
    if (is_delta(c)) return;
    StepEvent ev;
    ev.action = c;
    ev.at = loc_common_prefix(e1.at, e2.at);
    ev.has_sync = true;
    ev.sync_u = e1.at;
    ev.sync_v = e2.at;
    out.push_back({mk_step({ev}), combine(Op::Merge, sl.target, sr.target),
                   sl.minted + sr.minted});
  }

  // conflict elimination expands by its own laws; shapes outside them
  // pass through
  TermPtr theta_expand(const TermPtr& x) {
    switch (x->op) {
      case Op::Delta:
      case Op::TauAtom:
      case Op::Act:
        return x;
      case Op::LocPrefix:
        return mk_locprefix(x->word, mk_theta(x->a));
      case Op::Alt:
        return mk_alt(mk_unless(mk_theta(x->a), x->b), mk_unless(mk_theta(x->b), x->a));
      case Op::Seq:
        return mk_seq(mk_theta(x->a), mk_theta(x->b));
      case Op::Par:
        return mk_alt(mk_bin(Op::Par, mk_unless(mk_theta(x->a), x->b), x->b),
                      mk_bin(Op::Par, mk_unless(mk_theta(x->b), x->a), x->a));
      case Op::Comm:
        return mk_alt(mk_bin(Op::Comm, mk_unless(mk_theta(x->a), x->b), x->b),
                      mk_bin(Op::Comm, mk_unless(mk_theta(x->b), x->a), x->a));
      case Op::LeftMerge:
        return mk_bin(Op::LeftMerge, mk_unless(mk_theta(x->a), x->b),
                      mk_unless(mk_theta(x->b), x->a));
      case Op::Merge: {
        TermPtr par = mk_bin(Op::Par, x->a, x->b);
        TermPtr com = mk_bin(Op::Comm, x->a, x->b);
        return mk_alt(mk_unless(mk_theta(par), com), mk_unless(mk_theta(com), par));
      }
      default:
        return nullptr;
    }
  }
};

std::string state_key(const TermPtr& t, int counter, Mode mode) {
  TermPtr c = canonical(t);
  std::string k = print_term(c);
  if (mode == Mode::Dynamic) k += " #" + std::to_string(counter);
  return k;
}

}  // namespace

std::vector<Succ> successors(const SosCtx& ctx, const TermPtr& t, int mint_base) {
  Engine e{ctx, {}};
  auto out = e.succs(t, mint_base);
  std::sort(out.begin(), out.end(), [](const Succ& a, const Succ& b) {
    std::string ka = a.step.key(), kb = b.step.key();
    if (ka != kb) return ka < kb;
    std::string ta = a.target ? print_term(canonical(a.target)) : "√";
    std::string tb = b.target ? print_term(canonical(b.target)) : "√";
    return ta < tb;
  });
  // deduplicate identical (step, target) pairs arising from symmetric rules
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Succ& a, const Succ& b) {
                          if (!(a.step.events == b.step.events)) return false;
                          if (a.step.tau() != b.step.tau()) return false;
                          if ((a.target == nullptr) != (b.target == nullptr)) return false;
                          if (a.target && !term_eq(canonical(a.target), canonical(b.target)))
                            return false;
                          return a.minted == b.minted;
                        }),
            out.end());
  return out;
}

std::vector<Succ> weak_successors(const SosCtx& ctx, const TermPtr& t, const Bounds& bounds) {
  // collect the tau-closure of t, then one visible step, then tau-closure
  struct Node {
    TermPtr term;  // nullptr = terminated
    int mint;
  };
  auto closure = [&](const TermPtr& start, int mint0) {
    std::vector<Node> seen;
    std::deque<Node> work{{start, mint0}};
    std::set<std::string> keys;
    while (!work.empty() && seen.size() < bounds.max_states) {
      Node n = work.front();
      work.pop_front();
      std::string k = n.term ? state_key(n.term, n.mint, ctx.mode) : "√";
      if (!keys.insert(k).second) continue;
      seen.push_back(n);
      if (!n.term) continue;
      for (auto& s : successors(ctx, n.term, n.mint))
        if (s.step.tau()) work.push_back({s.target, n.mint + s.minted});
    }
    return seen;
  };
  std::vector<Succ> out;
  std::set<std::string> dedup;
  for (auto& pre : closure(t, 0)) {
    if (!pre.term) continue;
    for (auto& s : successors(ctx, pre.term, pre.mint)) {
      if (s.step.tau()) continue;
      for (auto& post : closure(s.target, pre.mint + s.minted)) {
        std::string k =
            s.step.key() + "->" + (post.term ? state_key(post.term, post.mint, ctx.mode) : "√");
        if (!dedup.insert(k).second) continue;
        out.push_back({s.step, post.term, post.mint});
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](const Succ& a, const Succ& b) {
    std::string ka = a.step.key(), kb = b.step.key();
    if (ka != kb) return ka < kb;
    std::string ta = a.target ? print_term(canonical(a.target)) : "√";
    std::string tb = b.target ? print_term(canonical(b.target)) : "√";
    return ta < tb;
  });
  return out;
}

Lts build_lts(const Alphabet& al, const TermPtr& t, Mode mode, const Bounds& bounds,
              const SpecRegistry* reg) {
  SosCtx ctx{&al, reg, mode, has_ctc_marker(t)};
  Lts lts;
  lts.mode = mode;

  std::map<std::string, int> index;
  struct Pending {
    TermPtr term;
    int mint;
    size_t depth;
  };
  std::deque<Pending> work;

  auto intern = [&](const TermPtr& term, int mint) {
    std::string k = term ? state_key(term, mint, mode) : "√";
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(lts.keys.size());
    index[k] = id;
    lts.keys.push_back(k);
    lts.terms.push_back(term ? canonical(term) : nullptr);
    lts.out.emplace_back();
    lts.terminated.push_back(term ? 0 : 1);
    return id;
  };

  int init = intern(t, 0);
  lts.initial = init;
  work.push_back({t, 0, 0});
  std::set<int> expanded;

  while (!work.empty()) {
    Pending p = work.front();
    work.pop_front();
    int id = intern(p.term, p.mint);
    if (expanded.count(id)) continue;
    expanded.insert(id);
    if (p.depth >= bounds.max_depth) {
      lts.truncated = true;
      continue;
    }
    for (auto& s : successors(ctx, p.term, p.mint)) {
      std::string tk = s.target ? state_key(s.target, p.mint + s.minted, mode) : "√";
      if (lts.keys.size() >= bounds.max_states && !index.count(tk)) {
        lts.truncated = true;
        continue;
      }
      int to = intern(s.target, p.mint + s.minted);
      lts.out[id].push_back({s.step, to});
      if (s.target && !expanded.count(to)) work.push_back({s.target, p.mint + s.minted, p.depth + 1});
    }
    std::sort(lts.out[id].begin(), lts.out[id].end(), [&](const Lts::Tr& a, const Lts::Tr& b) {
      std::string ka = a.step.key(), kb = b.step.key();
      if (ka != kb) return ka < kb;
      return a.to < b.to;
    });
  }
  return lts;
}

std::string export_dot(const Lts& lts) {
  std::ostringstream os;
  os << "digraph lts {\n  rankdir=LR;\n";
  for (size_t i = 0; i < lts.size(); ++i) {
    os << "  n" << i << " [label=\"";
    std::string label = lts.terminated[i] ? std::string("√") : lts.keys[i];
    for (char c : label) {
      if (c == '"' || c == '\\') os << '\\';
      os << c;
    }
    os << "\"";
    if (lts.terminated[i]) os << ", shape=doublecircle";
    if (static_cast<int>(i) == lts.initial) os << ", penwidth=2";
    os << "];\n";
  }
  for (size_t i = 0; i < lts.size(); ++i)
    for (const auto& tr : lts.out[i])
      os << "  n" << i << " -> n" << tr.to << " [label=\"" << tr.step.key() << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string export_lts_json(const Lts& lts) {
  nlohmann::json j;
  j["mode"] = lts.mode == Mode::Static ? "static" : "dynamic";
  j["initial"] = lts.initial;
  j["truncated"] = lts.truncated;
  j["states"] = nlohmann::json::array();
  for (size_t i = 0; i < lts.size(); ++i) {
    nlohmann::json s;
    s["id"] = i;
    s["term"] = lts.terminated[i] ? "√" : lts.keys[i];
    s["terminated"] = static_cast<bool>(lts.terminated[i]);
    j["states"].push_back(s);
  }
  j["transitions"] = nlohmann::json::array();
  for (size_t i = 0; i < lts.size(); ++i)
    for (const auto& tr : lts.out[i]) {
      nlohmann::json x;
      x["from"] = i;
      x["to"] = tr.to;
      x["step"] = nlohmann::json::array();
      if (tr.step.tau()) {
        x["step"].push_back({{"a", "tau"}});
      } else {
        for (const auto& e : tr.step.events) {
          nlohmann::json ev{{"a", e.action}, {"loc", e.at.str()}};
          if (e.has_sync) {
            ev["sync"] = {e.sync_u.str(), e.sync_v.str()};
          }
          x["step"].push_back(ev);
        }
      }
      j["transitions"].push_back(x);
    }
  return j.dump(2);
}

std::set<std::string> sort_resolved(const Alphabet& al, const TermPtr& t,
                                    const SpecRegistry* reg) {
  std::set<std::string> visiting;  // guard against recursive constants
  std::function<std::set<std::string>(const TermPtr&)> go =
      [&](const TermPtr& u) -> std::set<std::string> {
    if (u->op == Op::Const) {
      const TermPtr* body = reg ? reg->find_const(u->name) : nullptr;
      if (!body) throw std::runtime_error("sort: unresolved constant " + u->name);
      if (!visiting.insert("c:" + u->name).second) return {};
      auto s = go(*body);
      visiting.erase("c:" + u->name);
      return s;
    }
    if (u->op == Op::RecRef) {
      const LinearSpec* sp = reg ? reg->find_spec(u->spec_name) : nullptr;
      if (!sp) throw std::runtime_error("sort: unresolved specification " + u->spec_name);
      std::string key = "r:" + u->spec_name + ":" + u->name;
      if (!visiting.insert(key).second) return {};
      std::set<std::string> s;
      auto it = sp->equations.find(u->name);
      if (it != sp->equations.end())
        for (const auto& sum : it->second) {
          for (const auto& la : sum.actions)
            if (!is_tau(la.action)) s.insert(la.action);
          if (sum.has_target)
            for (const auto& l : go(mk_recref(sum.target, u->spec_name))) s.insert(l);
        }
      visiting.erase(key);
      return s;
    }
    if (!u->a) return sort_of(al, u);
    // rebuild around resolved children via the plain clauses
    TermPtr ra = u->a, rb = u->b;
    if (contains_op(u, Op::Const) || contains_op(u, Op::RecRef)) {
      std::set<std::string> s = go(u->a);
      if (u->b)
        for (const auto& l : go(u->b)) s.insert(l);
      // apply the unary clause of this operator on the joined sort
      switch (u->op) {
        case Op::Restrict: {
          auto blocked = u->label_set;
          for (const auto& p : al.comm_partners(u->label_set)) blocked.insert(p);
          for (const auto& l : blocked) s.erase(l);
          return s;
        }
        case Op::Relabel: {
          std::set<std::string> r;
          for (const auto& l : s) r.insert(al.relabel(u->name, l));
          r.erase(kTau);
          return r;
        }
        case Op::Encap: {
          for (const auto& l : al.encap_set(u->name)) s.erase(l);
          return s;
        }
        case Op::Hide: {
          for (const auto& l : al.hide_set(u->name)) s.erase(l);
          return s;
        }
        case Op::Prefix: {
          for (const auto& it2 : u->prefix_items)
            if (!is_tau(it2.action)) s.insert(it2.action);
          return s;
        }
        default:
          return s;
      }
    }
    return sort_of(al, u);
  };
  return go(t);
}

}  // namespace locpa
