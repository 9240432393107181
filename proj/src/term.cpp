#include "locpa/term.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace locpa {

LocWord LocWord::concat(const LocWord& v) const {
  LocWord out = *this;
  out.parts.insert(out.parts.end(), v.parts.begin(), v.parts.end());
  return out;
}

std::string LocWord::str() const {
  if (parts.empty()) return "eps";
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += '.';
    s += parts[i];
  }
  return s;
}

LocOrder loc_compare(const LocWord& u, const LocWord& v) {
  size_t n = std::min(u.parts.size(), v.parts.size());
  for (size_t i = 0; i < n; ++i)
    if (u.parts[i] != v.parts[i]) return LocOrder::Independent;
  if (u.parts.size() == v.parts.size()) return LocOrder::Equal;
  return u.parts.size() < v.parts.size() ? LocOrder::LeftExtends : LocOrder::RightExtends;
}

bool loc_independent(const LocWord& u, const LocWord& v) {
  return loc_compare(u, v) == LocOrder::Independent;
}

LocWord loc_common_prefix(const LocWord& u, const LocWord& v) {
  LocWord out;
  size_t n = std::min(u.parts.size(), v.parts.size());
  for (size_t i = 0; i < n && u.parts[i] == v.parts[i]; ++i) out.parts.push_back(u.parts[i]);
  return out;
}

static TermPtr leaf(Op op) {
  auto t = std::make_shared<Term>();
  t->op = op;
  return t;
}

TermPtr mk_nil() { return leaf(Op::Nil); }
TermPtr mk_delta() { return leaf(Op::Delta); }
TermPtr mk_tau() { return leaf(Op::TauAtom); }

TermPtr mk_act(const std::string& name) {
  if (is_tau(name)) return mk_tau();
  if (is_delta(name)) return mk_delta();
  auto t = std::make_shared<Term>();
  t->op = Op::Act;
  t->name = name;
  return t;
}

TermPtr mk_locprefix(const LocWord& w, TermPtr p) {
  auto t = std::make_shared<Term>();
  t->op = Op::LocPrefix;
  t->word = w;
  t->a = std::move(p);
  return t;
}

TermPtr mk_prefix(std::vector<LocatedAction> items, TermPtr p) {
  auto t = std::make_shared<Term>();
  t->op = Op::Prefix;
  t->prefix_items = std::move(items);
  t->a = std::move(p);
  return t;
}

TermPtr mk_bin(Op op, TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>();
  t->op = op;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

TermPtr mk_seq(TermPtr a, TermPtr b) { return mk_bin(Op::Seq, std::move(a), std::move(b)); }
TermPtr mk_alt(TermPtr a, TermPtr b) { return mk_bin(Op::Alt, std::move(a), std::move(b)); }

TermPtr mk_theta(TermPtr p) {
  auto t = std::make_shared<Term>();
  t->op = Op::Theta;
  t->a = std::move(p);
  return t;
}

TermPtr mk_unless(TermPtr a, TermPtr b) { return mk_bin(Op::Unless, std::move(a), std::move(b)); }

TermPtr mk_encap(const std::string& H, TermPtr p) {
  auto t = std::make_shared<Term>();
  t->op = Op::Encap;
  t->name = H;
  t->a = std::move(p);
  return t;
}

TermPtr mk_hide(const std::string& I, TermPtr p) {
  auto t = std::make_shared<Term>();
  t->op = Op::Hide;
  t->name = I;
  t->a = std::move(p);
  return t;
}

TermPtr mk_proj(int n, TermPtr p) {
  if (n < 0) throw std::invalid_argument("projection index must be >= 0");
  auto t = std::make_shared<Term>();
  t->op = Op::Proj;
  t->proj_n = n;
  t->a = std::move(p);
  return t;
}

TermPtr mk_restrict(std::set<std::string> L, TermPtr p) {
  auto t = std::make_shared<Term>();
  t->op = Op::Restrict;
  t->label_set = std::move(L);
  t->a = std::move(p);
  return t;
}

TermPtr mk_relabel(const std::string& f, TermPtr p) {
  auto t = std::make_shared<Term>();
  t->op = Op::Relabel;
  t->name = f;
  t->a = std::move(p);
  return t;
}

TermPtr mk_const(const std::string& name) {
  auto t = std::make_shared<Term>();
  t->op = Op::Const;
  t->name = name;
  return t;
}

TermPtr mk_recref(const std::string& var, const std::string& spec) {
  auto t = std::make_shared<Term>();
  t->op = Op::RecRef;
  t->name = var;
  t->spec_name = spec;
  return t;
}

static int cmp3(int c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); }

template <typename T>
static int seq_cmp(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (b[i] < a[i]) return 1;
  }
  return 0;
}

int term_cmp(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  switch (a->op) {
    case Op::Nil:
    case Op::Delta:
    case Op::TauAtom:
      return 0;
    case Op::Act:
    case Op::Const:
      return cmp3(a->name.compare(b->name));
    case Op::RecRef: {
      if (int c = cmp3(a->name.compare(b->name))) return c;
      return cmp3(a->spec_name.compare(b->spec_name));
    }
    case Op::LocPrefix: {
      if (int c = seq_cmp(a->word.parts, b->word.parts)) return c;
      return term_cmp(a->a, b->a);
    }
    case Op::Prefix: {
      if (int c = seq_cmp(a->prefix_items, b->prefix_items)) return c;
      return term_cmp(a->a, b->a);
    }
    case Op::Theta:
      return term_cmp(a->a, b->a);
    case Op::Encap:
    case Op::Hide:
    case Op::Relabel: {
      if (int c = cmp3(a->name.compare(b->name))) return c;
      return term_cmp(a->a, b->a);
    }
    case Op::Proj: {
      if (a->proj_n != b->proj_n) return a->proj_n < b->proj_n ? -1 : 1;
      return term_cmp(a->a, b->a);
    }
    case Op::Restrict: {
      if (a->label_set != b->label_set) return a->label_set < b->label_set ? -1 : 1;
      return term_cmp(a->a, b->a);
    }
    default: {  // binary
      if (int c = term_cmp(a->a, b->a)) return c;
      return term_cmp(a->b, b->b);
    }
  }
}

bool term_eq(const TermPtr& a, const TermPtr& b) { return term_cmp(a, b) == 0; }

TermPtr canonical(const TermPtr& t) {
  switch (t->op) {
    case Op::Nil:
    case Op::Delta:
    case Op::TauAtom:
    case Op::Act:
    case Op::Const:
    case Op::RecRef:
      return t;
    case Op::LocPrefix: {
      TermPtr p = canonical(t->a);
      LocWord w = t->word;
      while (p->op == Op::LocPrefix) {
        w = w.concat(p->word);
        p = p->a;
      }
      if (w.empty()) return p;
      return mk_locprefix(w, p);
    }
    case Op::Prefix:
      return mk_prefix(t->prefix_items, canonical(t->a));
    case Op::Theta:
      return mk_theta(canonical(t->a));
    case Op::Encap:
      return mk_encap(t->name, canonical(t->a));
    case Op::Hide:
      return mk_hide(t->name, canonical(t->a));
    case Op::Relabel:
      return mk_relabel(t->name, canonical(t->a));
    case Op::Proj:
      return mk_proj(t->proj_n, canonical(t->a));
    case Op::Restrict:
      return mk_restrict(t->label_set, canonical(t->a));
    default:
      return mk_bin(t->op, canonical(t->a), canonical(t->b));
  }
}

int term_size(const TermPtr& t) {
  int n = 1;
  if (t->a) n += term_size(t->a);
  if (t->b) n += term_size(t->b);
  return n;
}

bool contains_op(const TermPtr& t, Op op) {
  if (t->op == op) return true;
  if (t->a && contains_op(t->a, op)) return true;
  if (t->b && contains_op(t->b, op)) return true;
  return false;
}

bool has_ctc_marker(const TermPtr& t) {
  if (t->op == Op::Prefix || t->op == Op::Restrict || t->op == Op::Relabel || t->op == Op::Const)
    return true;
  if (t->a && has_ctc_marker(t->a)) return true;
  if (t->b && has_ctc_marker(t->b)) return true;
  return false;
}

std::set<std::string> sort_of(const Alphabet& alph, const TermPtr& t) {
  switch (t->op) {
    case Op::Nil:
    case Op::Delta:
    case Op::TauAtom:
      return {};
    case Op::Act:
      return {t->name};
    case Op::LocPrefix:
      return sort_of(alph, t->a);
    case Op::Prefix: {
      auto s = sort_of(alph, t->a);
      for (const auto& it : t->prefix_items)
        if (!is_tau(it.action)) s.insert(it.action);
      return s;
    }
    case Op::Restrict: {
      auto s = sort_of(alph, t->a);
      auto blocked = t->label_set;
      for (const auto& p : alph.comm_partners(t->label_set)) blocked.insert(p);
      for (const auto& l : blocked) s.erase(l);
      return s;
    }
    case Op::Relabel: {
      std::set<std::string> s;
      for (const auto& l : sort_of(alph, t->a)) s.insert(alph.relabel(t->name, l));
      s.erase(kTau);
      return s;
    }
    case Op::Encap: {
      auto s = sort_of(alph, t->a);
      for (const auto& l : alph.encap_set(t->name)) s.erase(l);
      return s;
    }
    case Op::Hide: {
      auto s = sort_of(alph, t->a);
      for (const auto& l : alph.hide_set(t->name)) s.erase(l);
      return s;
    }
    case Op::Theta:
    case Op::Proj:
      return sort_of(alph, t->a);
    case Op::Const:
    case Op::RecRef:
      throw std::runtime_error("sort: unresolved constant " + t->name);
    default: {
      auto s = sort_of(alph, t->a);
      for (const auto& l : sort_of(alph, t->b)) s.insert(l);
      return s;
    }
  }
}

// An atom in the sense of the basic-term definitions: e or u::e.
static bool is_located_event(const TermPtr& t) {
  if (t->op == Op::Act || t->op == Op::TauAtom) return true;
  if (t->op == Op::LocPrefix) return is_located_event(t->a);
  return false;
}

bool is_basic(const TermPtr& t, System sys) {
  // left arguments of sequencing: an event in the basic system, and in
  // the APTC system also << combinations (which keep failed ordering side
  // conditions as normal forms), possibly under location prefixes
  std::function<bool(const TermPtr&)> seq_head = [&](const TermPtr& h) {
    if (is_located_event(h)) return true;
    if (sys != System::AptcSl) return false;
    if (h->op == Op::LocPrefix) return seq_head(h->a);
    if (h->op == Op::LeftMerge) return is_basic(h->a, sys) && is_basic(h->b, sys);
    return false;
  };
  switch (t->op) {
    case Op::Act:
    case Op::TauAtom:
    case Op::Delta:
      return true;
    case Op::LocPrefix:
      return is_basic(t->a, sys);
    case Op::Alt:
      return is_basic(t->a, sys) && is_basic(t->b, sys);
    case Op::Seq:
      return seq_head(t->a) && is_basic(t->b, sys);
    case Op::LeftMerge:
      if (sys != System::AptcSl) return false;
      return is_basic(t->a, sys) && is_basic(t->b, sys);
    default:
      return false;
  }
}

TermPtr subst_const(const TermPtr& t, const std::string& name, const TermPtr& body) {
  if (t->op == Op::Const && t->name == name) return body;
  if (!t->a) return t;
  if (!t->b) {
    TermPtr na = subst_const(t->a, name, body);
    if (na.get() == t->a.get()) return t;
    auto n = std::make_shared<Term>(*t);
    n->a = na;
    return n;
  }
  TermPtr na = subst_const(t->a, name, body);
  TermPtr nb = subst_const(t->b, name, body);
  if (na.get() == t->a.get() && nb.get() == t->b.get()) return t;
  auto n = std::make_shared<Term>(*t);
  n->a = na;
  n->b = nb;
  return n;
}

}  // namespace locpa
