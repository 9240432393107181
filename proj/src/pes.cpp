#include "locpa/pes.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <json.hpp>

namespace locpa {

std::vector<int> Pes::causes(int e) const {
  std::vector<int> out;
  for (const auto& ev : events)
    if (ev.id != e && le(ev.id, e)) out.push_back(ev.id);
  return out;
}

bool Pes::is_config(const Config& c) const {
  for (int e : c) {
    for (int f : c)
      if (in_conflict(e, f)) return false;
    for (int pre : causes(e))
      if (!c.count(pre)) return false;
  }
  return true;
}

void Pes::close() {
  // transitive closure of causality
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<int, int>> add;
    for (const auto& p : causal)
      for (const auto& q : causal)
        if (p.second == q.first && !causal.count({p.first, q.second}))
          add.push_back({p.first, q.second});
    for (auto& pr : add) {
      causal.insert(pr);
      changed = true;
    }
  }
  // hereditary closure of conflict: e # e' <= e'' implies e # e''
  changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<int, int>> add;
    for (const auto& cf : conflict)
      for (const auto& ca : causal) {
        if (ca.first == cf.second) {
          int lo = std::min(cf.first, ca.second), hi = std::max(cf.first, ca.second);
          if (lo != hi && !conflict.count({lo, hi})) add.push_back({lo, hi});
        }
        if (ca.first == cf.first) {
          int lo = std::min(cf.second, ca.second), hi = std::max(cf.second, ca.second);
          if (lo != hi && !conflict.count({lo, hi})) add.push_back({lo, hi});
        }
      }
    for (auto& pr : add) {
      conflict.insert(pr);
      changed = true;
    }
  }
  for (const auto& pr : causal)
    if (pr.first == pr.second) throw std::runtime_error("pes: reflexive causality");
  for (const auto& pr : conflict)
    if (pr.first == pr.second) throw std::runtime_error("pes: reflexive conflict");
}

namespace {

void add_conflict(Pes& p, int a, int b) {
  if (a == b) return;
  p.conflict.insert({std::min(a, b), std::max(a, b)});
}

struct Builder {
  const Alphabet& al;


  Pes remap(const Pes& src, std::map<int, int>& out_map, Pes& dst) const {
    for (const auto& e : src.events) {
      int nid = static_cast<int>(dst.events.size());
      out_map[e.id] = nid;
      dst.events.push_back({nid, e.label, e.at});
    }
    for (const auto& pr : src.causal) dst.causal.insert({out_map[pr.first], out_map[pr.second]});
    for (const auto& pr : src.conflict)
      add_conflict(dst, out_map[pr.first], out_map[pr.second]);
    return dst;
  }

  static Config map_config(const Config& c, const std::map<int, int>& m) {
    Config out;
    for (int e : c) out.insert(m.at(e));
    return out;
  }

  Pes empty_pes(bool terminates) const {
    Pes p;
    if (terminates) p.successes.insert(Config{});
    return p;
  }

  Pes atom(const std::string& label, const LocWord& at) const {
    Pes p;
    p.events.push_back({0, label, at});
    p.successes.insert(Config{0});
    return p;
  }

  Pes prefix_word(const Pes& src, const LocWord& w) const {
    Pes p = src;
    for (auto& e : p.events)
      if (!is_tau(e.label)) e.at = w.concat(e.at);
    return p;
  }

  std::vector<int> initials(const Pes& p) const {
    std::vector<int> out;
    for (const auto& e : p.events)
      if (p.causes(e.id).empty()) out.push_back(e.id);
    return out;
  }

  // events strictly above a, as a sub-structure; keeps a note of causes
  // pointing outside the cone
  struct Residual {
    Pes pes;
    std::map<int, std::vector<int>> external;  // new id -> original cause ids
    std::map<int, int> back;                   // new id -> original id
  };

  Residual residual(const Pes& src, int a) const {
    Residual r;
    std::map<int, int> fwd;
    for (const auto& e : src.events) {
      if (e.id == a || !src.le(a, e.id)) continue;
      int nid = static_cast<int>(r.pes.events.size());
      fwd[e.id] = nid;
      r.back[nid] = e.id;
      r.pes.events.push_back({nid, e.label, e.at});
    }
    for (const auto& [oid, nid] : fwd) {
      for (int c : src.causes(oid)) {
        if (c == a) continue;
        auto it = fwd.find(c);
        if (it != fwd.end())
          r.pes.causal.insert({it->second, nid});
        else
          r.external[nid].push_back(c);
      }
    }
    for (const auto& pr : src.conflict) {
      auto i = fwd.find(pr.first), j = fwd.find(pr.second);
      if (i != fwd.end() && j != fwd.end()) add_conflict(r.pes, i->second, j->second);
    }
    for (const auto& M : src.successes) {
      if (!M.count(a)) continue;
      Config sub;
      for (int e : M)
        if (fwd.count(e)) sub.insert(fwd[e]);
      r.pes.successes.insert(sub);
    }
    return r;
  }

  // parallel composition; when sync is set, initial gamma-pairs spawn
  // fused events with recursively merged residuals. comm_only keeps just
  // the fused worlds. ctc_par adds conflicts between communicable initial
  // pairs and labels the fusion tau.
  Pes merge(const Pes& P, const Pes& Q, bool sync, bool comm_only, bool ctc_par) const {
    // a side that can neither move nor terminate deadlocks the whole
    // composition (both components must fire)
    auto dead = [](const Pes& p) { return p.events.empty() && !p.successes.count(Config{}); };
    if (dead(P) || dead(Q)) return Pes{};
    Pes R;
    std::map<int, int> mp, mq;
    remap(P, mp, R);
    remap(Q, mq, R);
    for (const auto& MP : P.successes)
      for (const auto& MQ : Q.successes) {
        Config m = map_config(MP, mp);
        for (int e : map_config(MQ, mq)) m.insert(e);
        R.successes.insert(m);
      }

    std::vector<int> fused_ids;
    if (sync || ctc_par) {
      for (int a : initials(P))
        for (int b : initials(Q)) {
          const auto& ea = P.events[a];
          const auto& eb = Q.events[b];
          std::string c = al.gamma(ea.label, eb.label);
          if (is_delta(c)) continue;
          if (ctc_par) {
            add_conflict(R, mp.at(a), mq.at(b));
            c = kTau;
          }
          int s = static_cast<int>(R.events.size());
          R.events.push_back({s, c, is_tau(c) ? LocWord::eps() : loc_common_prefix(ea.at, eb.at)});
          fused_ids.push_back(s);
          // the fused event excludes the separate occurrences
          add_conflict(R, s, mp.at(a));
          add_conflict(R, s, mq.at(b));
          for (const auto& pr : P.conflict) {
            if (pr.first == a) add_conflict(R, s, mp.at(pr.second));
            if (pr.second == a) add_conflict(R, s, mp.at(pr.first));
          }
          for (const auto& pr : Q.conflict) {
            if (pr.first == b) add_conflict(R, s, mq.at(pr.second));
            if (pr.second == b) add_conflict(R, s, mq.at(pr.first));
          }
          // merged residual world above the fused event
          Residual ra = residual(P, a);
          Residual rb = residual(Q, b);
          Pes sub = merge(ra.pes, rb.pes, sync, false, false);
          std::map<int, int> ms;
          remap(sub, ms, R);
          // rebase: sub initials hang below s; external causes return to
          // the surviving originals
          size_t na = ra.pes.events.size();
          for (const auto& e : sub.events) {
            int nid = ms.at(e.id);
            R.causal.insert({s, nid});
            const auto* ext = static_cast<size_t>(e.id) < na
                                  ? (ra.external.count(e.id) ? &ra.external.at(e.id) : nullptr)
                                  : (rb.external.count(static_cast<int>(e.id - na))
                                         ? &rb.external.at(static_cast<int>(e.id - na))
                                         : nullptr);
            if (ext) {
              const auto& back_map = static_cast<size_t>(e.id) < na ? mp : mq;
              for (int oc : *ext) R.causal.insert({back_map.at(oc), nid});
            }
          }
          // successes through this fused world
          for (const auto& MP : P.successes) {
            if (!MP.count(a)) continue;
            for (const auto& MQ : Q.successes) {
              if (!MQ.count(b)) continue;
              for (const auto& MS : sub.successes) {
                Config m;
                m.insert(s);
                for (int e : MP)
                  if (e != a && !P.le(a, e)) m.insert(mp.at(e));
                for (int e : MQ)
                  if (e != b && !Q.le(b, e)) m.insert(mq.at(e));
                for (int e : MS) m.insert(ms.at(e));
                R.successes.insert(m);
              }
              if (sub.events.empty() && sub.successes.empty()) {
                // no residual at all: the fused event alone completes the
                // cones of a and b
                Config m;
                m.insert(s);
                for (int e : MP)
                  if (e != a && !P.le(a, e)) m.insert(mp.at(e));
                for (int e : MQ)
                  if (e != b && !Q.le(b, e)) m.insert(mq.at(e));
                R.successes.insert(m);
              }
            }
          }
        }
      // fused events over a shared component exclude each other
      for (size_t i = 0; i < fused_ids.size(); ++i)
        for (size_t j = i + 1; j < fused_ids.size(); ++j)
          add_conflict(R, fused_ids[i], fused_ids[j]);
    }

    R.close();
    if (comm_only) {
      // runs must pass through a fused event: keep the fused cones plus
      // events concurrent with some fusion (cause-closed); alternatives
      // that conflict with every fusion disappear
      std::set<int> keep;
      for (int s : fused_ids) {
        keep.insert(s);
        for (const auto& e : R.events)
          if (R.le(s, e.id)) keep.insert(e.id);
      }
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& e : R.events) {
          if (keep.count(e.id)) continue;
          bool compat = false;
          for (int s : fused_ids)
            if (!R.in_conflict(e.id, s)) compat = true;
          if (!compat) continue;
          bool causes_ok = true;
          for (int c2 : R.causes(e.id))
            if (!keep.count(c2)) causes_ok = false;
          if (causes_ok) {
            keep.insert(e.id);
            grew = true;
          }
        }
      }
      R = restrict_events(R, keep);
      R.close();
    }
    // drop success candidates invalidated by cross conflicts
    std::set<Config> ok;
    for (const auto& M : R.successes)
      if (R.is_config(M)) ok.insert(M);
    R.successes = std::move(ok);
    return R;
  }

  static Pes restrict_events(const Pes& src, const std::set<int>& keep) {
    Pes out;
    std::map<int, int> m;
    for (const auto& e : src.events) {
      if (!keep.count(e.id)) continue;
      int nid = static_cast<int>(out.events.size());
      m[e.id] = nid;
      out.events.push_back({nid, e.label, e.at});
    }
    for (const auto& pr : src.causal)
      if (m.count(pr.first) && m.count(pr.second)) out.causal.insert({m[pr.first], m[pr.second]});
    for (const auto& pr : src.conflict)
      if (m.count(pr.first) && m.count(pr.second))
        out.conflict.insert({std::min(m[pr.first], m[pr.second]),
                             std::max(m[pr.first], m[pr.second])});
    for (const auto& M : src.successes) {
      bool fits = true;
      for (int e : M)
        if (!m.count(e)) { fits = false; break; }
      if (!fits) continue;
      Config c;
      for (int e : M) c.insert(m[e]);
      out.successes.insert(c);
    }
    return out;
  }

  // sequential composition: a copy of Q above every success of P
  Pes seq(const Pes& P, const Pes& Q) const {
    Pes R;
    std::map<int, int> mp;
    remap(P, mp, R);
    R.successes.clear();
    std::vector<std::pair<Config, std::map<int, int>>> copies;
    for (const auto& M : P.successes) {
      std::map<int, int> mq;
      remap(Q, mq, R);
      for (int a : M)
        for (const auto& e : Q.events) R.causal.insert({mp.at(a), mq.at(e.id)});
      copies.push_back({map_config(M, mp), mq});
    }
    // distinct continuations exclude each other
    for (size_t i = 0; i < copies.size(); ++i)
      for (size_t j = i + 1; j < copies.size(); ++j)
        for (const auto& [qa, ia] : copies[i].second)
          for (const auto& [qb, ib] : copies[j].second) {
            (void)qa;
            (void)qb;
            add_conflict(R, ia, ib);
          }
    for (const auto& [M, mq] : copies)
      for (const auto& MQ : Q.successes) {
        Config m = M;
        for (int e : map_config(MQ, mq)) m.insert(e);
        R.successes.insert(m);
      }
    R.close();
    std::set<Config> ok;
    for (const auto& M : R.successes)
      if (R.is_config(M)) ok.insert(M);
    R.successes = std::move(ok);
    return R;
  }

  Pes alt(const Pes& P, const Pes& Q) const {
    Pes R;
    std::map<int, int> mp, mq;
    remap(P, mp, R);
    remap(Q, mq, R);
    for (const auto& ep : P.events)
      for (const auto& eq : Q.events) add_conflict(R, mp.at(ep.id), mq.at(eq.id));
    for (const auto& M : P.successes) R.successes.insert(map_config(M, mp));
    for (const auto& M : Q.successes) R.successes.insert(map_config(M, mq));
    R.close();
    return R;
  }

  // left merge in step form: both heads fire together (subject to the
  // ordering gate), continuations above all head events
  struct StepForm {
    std::vector<PesEvent> heads;
    TermPtr rest;  // may be null
  };

  bool step_form(const TermPtr& t, const LocWord& pre, StepForm& out) const {
    switch (t->op) {
      case Op::Act:
        out.heads.push_back({0, t->name, pre});
        return true;
      case Op::TauAtom:
        out.heads.push_back({0, kTau, LocWord::eps()});
        return true;
      case Op::LocPrefix:
        return step_form(t->a, pre.concat(t->word), out);
      case Op::LeftMerge:
        return step_form(t->a, pre, out) && step_form(t->b, pre, out);
      case Op::Seq: {
        StepForm head;
        if (!step_form(t->a, pre, head)) return false;
        if (out.rest || head.rest) return false;
        for (auto& h : head.heads) out.heads.push_back(h);
        out.rest = t->b;  // only valid for the top-level call
        return true;
      }
      default:
        return false;
    }
  }

  Pes left_merge(const TermPtr& x, const TermPtr& y, Mode mode) const {
    if (x->op == Op::Alt)  // distribute, mirroring P8
      return alt(left_merge(x->a, y, mode), left_merge(x->b, y, mode));
    if (x->op == Op::Delta || y->op == Op::Delta) return empty_pes(false);
    StepForm fx, fy;
    if (!step_form(x, LocWord::eps(), fx) || !step_form(y, LocWord::eps(), fy))
      throw PesUnsupported("left merge outside step form");
    // ordering gate over the visible head actions
    std::vector<std::string> el, er;
    for (auto& h : fx.heads)
      if (!is_tau(h.label)) el.push_back(h.label);
    for (auto& h : fy.heads)
      if (!is_tau(h.label)) er.push_back(h.label);
    bool pass = el.empty();
    for (const auto& m : el) {
      bool least = true;
      for (const auto& e : el)
        if (!al.causal_le(m, e)) least = false;
      for (const auto& e : er)
        if (least && !al.causal_le(m, e)) least = false;
      if (least) pass = true;
    }
    if (!pass) return empty_pes(false);
    Pes heads;
    for (auto& h : fx.heads)
      heads.events.push_back({static_cast<int>(heads.events.size()), h.label, h.at});
    for (auto& h : fy.heads)
      heads.events.push_back({static_cast<int>(heads.events.size()), h.label, h.at});
    Config all;
    for (const auto& e : heads.events) all.insert(e.id);
    heads.successes.insert(all);
    Pes restx = fx.rest ? build(fx.rest, mode) : empty_pes(true);
    Pes resty = fy.rest ? build(fy.rest, mode) : empty_pes(true);
    Pes cont = merge(restx, resty, true, false, false);
    return seq(heads, cont);
  }

  Pes build(const TermPtr& t, Mode mode) const {
    switch (t->op) {
      case Op::Nil:
      case Op::Delta:
        return empty_pes(false);
      case Op::TauAtom:
        return atom(kTau, LocWord::eps());
      case Op::Act:
        return atom(t->name, LocWord::eps());
      case Op::LocPrefix:
        return prefix_word(build(t->a, mode), t->word);
      case Op::Prefix: {
        Pes heads;
        for (const auto& it : t->prefix_items) {
          if (is_tau(it.action)) continue;
          heads.events.push_back({static_cast<int>(heads.events.size()), it.action, it.at});
        }
        if (heads.events.empty())
          heads.events.push_back({0, kTau, LocWord::eps()});
        else {
          bool blocked = false;
          for (const auto& a : heads.events)
            for (const auto& b : heads.events)
              if (a.id < b.id && al.comm_defined(a.label, b.label)) blocked = true;
          if (blocked) return empty_pes(false);
        }
        Config all;
        for (const auto& e : heads.events) all.insert(e.id);
        heads.successes.insert(all);
        // prefix continues to its body; no termination of its own
        Pes body = build(t->a, mode);
        return seq(heads, body);
      }
      case Op::Seq:
        return seq(build(t->a, mode), build(t->b, mode));
      case Op::Alt:
        return alt(build(t->a, mode), build(t->b, mode));
      case Op::Par:
        // CTC composition behaviour is decided by this subtree, mirroring
        // the transition rules
        return merge(build(t->a, mode), build(t->b, mode), false, false, has_ctc_marker(t));
      case Op::Merge:
        return merge(build(t->a, mode), build(t->b, mode), true, false, false);
      case Op::Comm:
        return merge(build(t->a, mode), build(t->b, mode), true, true, false);
      case Op::LeftMerge:
        return left_merge(t->a, t->b, mode);
      case Op::Restrict: {
        Pes p = build(t->a, mode);
        std::set<std::string> blocked = t->label_set;
        for (const auto& x : al.comm_partners(t->label_set)) blocked.insert(x);
        return delete_labelled(p, blocked);
      }
      case Op::Encap:
        return delete_labelled(build(t->a, mode), al.encap_set(t->name));
      case Op::Hide: {
        Pes p = build(t->a, mode);
        const auto& I = al.hide_set(t->name);
        for (auto& e : p.events)
          if (I.count(e.label)) {
            e.label = kTau;
            e.at = LocWord::eps();
          }
        return p;
      }
      case Op::Relabel: {
        Pes p = build(t->a, mode);
        for (auto& e : p.events)
          if (!is_tau(e.label)) e.label = al.relabel(t->name, e.label);
        return p;
      }
      default:
        throw PesUnsupported("operator unsupported in event structure semantics");
    }
  }

  static Pes delete_labelled(const Pes& p, const std::set<std::string>& blocked) {
    std::set<int> keep;
    for (const auto& e : p.events) keep.insert(e.id);
    for (const auto& e : p.events)
      if (blocked.count(e.label)) {
        keep.erase(e.id);
        for (const auto& f : p.events)
          if (p.le(e.id, f.id)) keep.erase(f.id);
      }
    return restrict_events(p, keep);
  }
};

// canonical dynamic words: each event is placed at the common prefix of
// its immediate causes, extended by a fresh location; fresh indices count
// consistent earlier events
void assign_dynamic_words(Pes& p) {
  std::vector<int> order;
  for (const auto& e : p.events) order.push_back(e.id);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    size_t da = p.causes(a).size(), db = p.causes(b).size();
    if (da != db) return da < db;
    return a < b;
  });
  std::map<int, LocWord> words;
  std::map<int, int> index;
  for (int e : order) {
    int k = 0;
    for (int f : order) {
      if (f == e) break;
      if (!p.in_conflict(e, f)) ++k;
    }
    index[e] = k;
    if (is_tau(p.events[e].label)) {
      words[e] = LocWord::eps();
      continue;
    }
    auto cs = p.causes(e);
    LocWord base;
    bool first = true;
    for (int c : cs) {
      // immediate causes only: no strictly intermediate event
      bool immediate = true;
      for (int d : cs)
        if (d != c && p.le(c, d)) immediate = false;
      if (!immediate) continue;
      base = first ? words[c] : loc_common_prefix(base, words[c]);
      first = false;
    }
    words[e] = base.concat(LocWord::single("loc" + std::to_string(k)));
  }
  for (auto& e : p.events)
    if (!is_tau(e.label)) e.at = words[e.id];
}

}  // namespace

Pes term_to_pes(const Alphabet& al, const TermPtr& t, Mode mode) {
  if (contains_op(t, Op::Const) || contains_op(t, Op::RecRef))
    throw PesUnsupported("recursion unsupported in event structure semantics");
  Builder b{al};
  Pes p = b.build(t, mode);
  p.close();
  if (mode == Mode::Dynamic) assign_dynamic_words(p);
  return p;
}

std::vector<int> enabled_events(const Pes& p, const Config& c) {
  std::vector<int> out;
  for (const auto& e : p.events) {
    if (c.count(e.id)) continue;
    bool ok = true;
    for (int pre : p.causes(e.id))
      if (!c.count(pre)) { ok = false; break; }
    for (int f : c)
      if (ok && p.in_conflict(e.id, f)) ok = false;
    if (ok) out.push_back(e.id);
  }
  return out;
}

std::vector<Config> configurations(const Pes& p, size_t max_events) {
  std::vector<Config> out;
  std::set<Config> seen;
  std::vector<Config> work{Config{}};
  while (!work.empty()) {
    Config c = work.back();
    work.pop_back();
    if (seen.count(c)) continue;
    seen.insert(c);
    if (c.size() >= max_events) continue;
    for (int e : enabled_events(p, c)) {
      Config n = c;
      n.insert(e);
      if (!seen.count(n)) work.push_back(n);
    }
  }
  out.assign(seen.begin(), seen.end());
  return out;
}

namespace {

void collect_extensions(const Pes& p, const Config& c, std::vector<int>& cand, size_t i,
                        Config cur, std::vector<PomsetTransition>& out, size_t max_width) {
  if (cur.size() > max_width) return;
  if (!cur.empty()) {
    // the fired set must be causally closed relative to c
    bool closed = true;
    for (int e : cur)
      for (int pre : p.causes(e))
        if (!c.count(pre) && !cur.count(pre)) closed = false;
    if (closed) {
      Config tgt = c;
      for (int e : cur) tgt.insert(e);
      bool step = true;
      for (int a : cur)
        for (int b : cur)
          if (a < b && !p.concurrent(a, b)) step = false;
      out.push_back({cur, tgt, step});
    }
  }
  for (size_t j = i; j < cand.size(); ++j) {
    int e = cand[j];
    bool ok = true;
    for (int f : cur)
      if (p.in_conflict(e, f)) ok = false;
    if (!ok) continue;
    Config n = cur;
    n.insert(e);
    collect_extensions(p, c, cand, j + 1, n, out, max_width);
  }
}

}  // namespace

std::vector<PomsetTransition> pomset_transitions(const Pes& p, const Config& c,
                                                 size_t max_width) {
  // candidates: events not in c, compatible with c
  std::vector<int> cand;
  for (const auto& e : p.events) {
    if (c.count(e.id)) continue;
    bool ok = true;
    for (int f : c)
      if (p.in_conflict(e.id, f)) ok = false;
    // all causes must lie inside c or among other candidates
    if (ok) cand.push_back(e.id);
  }
  std::vector<PomsetTransition> out;
  collect_extensions(p, c, cand, 0, {}, out, max_width);
  std::sort(out.begin(), out.end(), [](const PomsetTransition& a, const PomsetTransition& b) {
    if (a.fired != b.fired) return a.fired < b.fired;
    return a.target < b.target;
  });
  return out;
}

std::vector<PomsetTransition> weak_pomset_transitions(const Pes& p, const Config& c,
                                                      size_t max_width) {
  // reach by any extension whose visible part is X
  std::vector<PomsetTransition> all = pomset_transitions(p, c, max_width + 8);
  std::vector<PomsetTransition> out;
  std::set<std::pair<std::set<int>, Config>> seen;
  for (auto& t : all) {
    std::set<int> vis;
    for (int e : t.fired)
      if (!is_tau(p.events[e].label)) vis.insert(e);
    if (vis.empty() || vis.size() > max_width) continue;
    if (!seen.insert({vis, t.target}).second) continue;
    bool step = true;
    for (int a : vis)
      for (int b : vis)
        if (a < b && !p.concurrent(a, b)) step = false;
    out.push_back({vis, t.target, step});
  }
  return out;
}

std::vector<std::vector<std::pair<int, int>>> pomset_isos(const Pes& p1, const std::set<int>& x1,
                                                          const Pes& p2, const std::set<int>& x2) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (x1.size() != x2.size()) return out;
  std::vector<int> v1(x1.begin(), x1.end());
  std::vector<int> v2(x2.begin(), x2.end());
  std::vector<int> perm(v2.size());
  std::vector<bool> used(v2.size(), false);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == v1.size()) {
      out.push_back({});
      for (size_t k = 0; k < v1.size(); ++k) out.back().push_back({v1[k], v2[perm[k]]});
      return;
    }
    for (size_t j = 0; j < v2.size(); ++j) {
      if (used[j]) continue;
      if (p1.events[v1[i]].label != p2.events[v2[j]].label) continue;
      bool ok = true;
      for (size_t k = 0; k < i && ok; ++k) {
        bool le1 = p1.le(v1[k], v1[i]), ge1 = p1.le(v1[i], v1[k]);
        bool le2 = p2.le(v2[perm[k]], v2[j]), ge2 = p2.le(v2[j], v2[perm[k]]);
        if (le1 != le2 || ge1 != ge2) ok = false;
      }
      if (!ok) continue;
      used[j] = true;
      perm[i] = static_cast<int>(j);
      rec(i + 1);
      used[j] = false;
    }
  };
  rec(0);
  return out;
}

std::vector<PomsetTransition> aligned_steps(const Pes& p, const Config& c) {
  auto trans = pomset_transitions(p, c, 16);
  std::vector<PomsetTransition> steps;
  for (auto& t : trans)
    if (t.is_step) steps.push_back(t);
  std::vector<PomsetTransition> out;
  for (auto& t : steps) {
    bool maximal = true;
    for (auto& u : steps)
      if (u.fired != t.fired &&
          std::includes(u.fired.begin(), u.fired.end(), t.fired.begin(), t.fired.end()))
        maximal = false;
    if (maximal) out.push_back(t);
  }
  return out;
}

std::vector<PomsetTransition> aligned_pomsets(const Pes& p, const Config& c, int max_steps,
                                              size_t max_width) {
  std::vector<PomsetTransition> out;
  std::set<std::pair<std::set<int>, Config>> seen;
  std::function<void(const Config&, std::set<int>, int)> rec = [&](const Config& cur,
                                                                   std::set<int> fired,
                                                                   int depth) {
    if (!fired.empty()) {
      if (seen.insert({fired, cur}).second) {
        bool step = true;
        for (int a : fired)
          for (int b : fired)
            if (a < b && !p.concurrent(a, b)) step = false;
        out.push_back({fired, cur, step});
      } else {
        return;  // already expanded from here with this history
      }
    }
    if (depth >= max_steps) return;
    for (auto& s : aligned_steps(p, cur)) {
      std::set<int> nf = fired;
      for (int e : s.fired) nf.insert(e);
      if (nf.size() > max_width) continue;
      rec(s.target, nf, depth + 1);
    }
  };
  rec(c, {}, 0);
  std::sort(out.begin(), out.end(), [](const PomsetTransition& a, const PomsetTransition& b) {
    if (a.fired != b.fired) return a.fired < b.fired;
    return a.target < b.target;
  });
  return out;
}

Lts pes_max_step_lts(const Pes& p, const Bounds& bounds) {
  Lts lts;
  lts.mode = Mode::Static;
  std::map<Config, int> index;
  auto key_of = [&](const Config& c) {
    std::string k = "{";
    bool first = true;
    for (int e : c) {
      if (!first) k += ",";
      first = false;
      k += std::to_string(e);
    }
    return k + "}";
  };
  std::function<int(const Config&)> intern = [&](const Config& c) {
    auto it = index.find(c);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(lts.keys.size());
    index[c] = id;
    lts.keys.push_back(key_of(c));
    lts.terms.push_back(nullptr);
    lts.out.emplace_back();
    lts.terminated.push_back(p.successful(c) ? 1 : 0);
    return id;
  };
  std::vector<Config> work{Config{}};
  lts.initial = intern(Config{});
  std::set<Config> done;
  while (!work.empty()) {
    Config c = work.back();
    work.pop_back();
    if (done.count(c)) continue;
    done.insert(c);
    if (lts.size() > bounds.max_states) {
      lts.truncated = true;
      break;
    }
    int id = intern(c);
    for (auto& t : aligned_steps(p, c)) {
      std::vector<StepEvent> evs;
      bool all_tau = true;
      for (int e : t.fired) {
        if (is_tau(p.events[e].label)) continue;
        all_tau = false;
        evs.push_back({p.events[e].label, p.events[e].at});
      }
      Step st = all_tau ? mk_tau_step() : mk_step(std::move(evs));
      int to = intern(t.target);
      lts.out[id].push_back({st, to});
      work.push_back(t.target);
    }
    std::sort(lts.out[id].begin(), lts.out[id].end(), [](const Lts::Tr& a, const Lts::Tr& b) {
      std::string ka = a.step.key(), kb = b.step.key();
      if (ka != kb) return ka < kb;
      return a.to < b.to;
    });
  }
  return lts;
}

std::string export_pes_json(const Pes& p) {
  nlohmann::json j;
  j["events"] = nlohmann::json::array();
  for (const auto& e : p.events)
    j["events"].push_back({{"id", e.id}, {"label", e.label}, {"loc", e.at.str()}});
  j["causal"] = nlohmann::json::array();
  for (const auto& pr : p.causal) j["causal"].push_back({pr.first, pr.second});
  j["conflict"] = nlohmann::json::array();
  for (const auto& pr : p.conflict) j["conflict"].push_back({pr.first, pr.second});
  return j.dump(2);
}

}  // namespace locpa
