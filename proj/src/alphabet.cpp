#include "locpa/alphabet.hpp"

#include <stdexcept>

namespace locpa {

static std::pair<std::string, std::string> norm_pair(const std::string& a, const std::string& b) {
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void Alphabet::declare_action(const std::string& a) { actions.insert(a); }

void Alphabet::declare_comm(const std::string& a, const std::string& b, const std::string& c) {
  comm[norm_pair(a, b)] = c;
}

void Alphabet::declare_conflict(const std::string& a, const std::string& b) {
  conflict.insert(norm_pair(a, b));
}

void Alphabet::declare_causal(const std::string& a, const std::string& b) {
  causal.insert({a, b});
}

std::string Alphabet::gamma(const std::string& a, const std::string& b) const {
  if (is_tau(a) || is_tau(b) || is_delta(a) || is_delta(b)) return kDelta;
  auto it = comm.find(norm_pair(a, b));
  return it == comm.end() ? kDelta : it->second;
}

bool Alphabet::comm_defined(const std::string& a, const std::string& b) const {
  return !is_delta(gamma(a, b));
}

std::set<std::string> Alphabet::comm_partners(const std::set<std::string>& L) const {
  std::set<std::string> out;
  for (const auto& [pr, c] : comm) {
    (void)c;
    if (L.count(pr.first)) out.insert(pr.second);
    if (L.count(pr.second)) out.insert(pr.first);
  }
  return out;
}

bool Alphabet::in_conflict(const std::string& a, const std::string& b) const {
  if (a == b) return false;
  return conflict.count(norm_pair(a, b)) > 0;
}

bool Alphabet::causal_le(const std::string& a, const std::string& b) const {
  if (a == b) return true;
  return causal_closure_.count({a, b}) > 0;
}

bool Alphabet::silences(const std::string& b, const std::string& e) const {
  if (is_tau(e) || is_tau(b)) return false;
  if (in_conflict(e, b)) return true;
  for (const auto& pr : conflict) {
    if (pr.first == b && pr.second != e && causal_le(pr.second, e)) return true;
    if (pr.second == b && pr.first != e && causal_le(pr.first, e)) return true;
  }
  return false;
}

bool Alphabet::silenced_by_any(const std::string& e, const std::set<std::string>& bs) const {
  for (const auto& b : bs)
    if (silences(b, e)) return true;
  return false;
}

std::string Alphabet::relabel(const std::string& fname, const std::string& a) const {
  auto it = relabellings.find(fname);
  if (it == relabellings.end()) throw std::out_of_range("unknown relabelling: " + fname);
  if (is_tau(a) || is_delta(a)) return a;
  auto jt = it->second.find(a);
  return jt == it->second.end() ? a : jt->second;
}

bool Alphabet::has_relabelling(const std::string& fname) const {
  return relabellings.count(fname) > 0;
}

static const std::set<std::string> kEmptySet;

const std::set<std::string>& Alphabet::encap_set(const std::string& name) const {
  auto it = encap_sets.find(name);
  return it == encap_sets.end() ? kEmptySet : it->second;
}

const std::set<std::string>& Alphabet::hide_set(const std::string& name) const {
  auto it = hide_sets.find(name);
  return it == hide_sets.end() ? kEmptySet : it->second;
}

bool Alphabet::has_encap(const std::string& name) const { return encap_sets.count(name) > 0; }
bool Alphabet::has_hide(const std::string& name) const { return hide_sets.count(name) > 0; }

void Alphabet::finalize() {
  causal_closure_ = causal;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<std::string, std::string>> add;
    for (const auto& p : causal_closure_)
      for (const auto& q : causal_closure_)
        if (p.second == q.first && !causal_closure_.count({p.first, q.second}))
          add.push_back({p.first, q.second});
    for (auto& pr : add) {
      causal_closure_.insert(pr);
      changed = true;
    }
  }
}

std::vector<std::string> Alphabet::validate() const {
  std::vector<std::string> errs;
  auto known = [&](const std::string& a) { return actions.count(a) || is_tau(a) || is_delta(a); };

  if (actions.count(kTau)) errs.push_back("reserved name declared as action: tau");
  if (actions.count(kDelta)) errs.push_back("reserved name declared as action: d");

  for (const auto& [pr, c] : comm) {
    if (is_tau(pr.first) || is_tau(pr.second))
      errs.push_back("comm declared on tau: " + pr.first + " * " + pr.second);
    if (is_delta(pr.first) || is_delta(pr.second) || is_delta(c))
      errs.push_back("comm declared on d: " + pr.first + " * " + pr.second);
    if (!known(pr.first) || !known(pr.second) || !known(c))
      errs.push_back("comm over undeclared action: " + pr.first + " * " + pr.second + " = " + c);
  }
  for (const auto& pr : conflict) {
    if (pr.first == pr.second) errs.push_back("reflexive conflict: " + pr.first);
    if (!known(pr.first) || !known(pr.second))
      errs.push_back("conflict over undeclared action: " + pr.first + " # " + pr.second);
  }
  // cycle check on declared causal pairs
  Alphabet tmp = *this;
  tmp.finalize();
  for (const auto& a : actions)
    if (tmp.causal_closure_.count({a, a})) errs.push_back("cyclic causal: " + a);
  for (const auto& pr : causal) {
    if (pr.first == pr.second) errs.push_back("reflexive causal: " + pr.first);
    if (!known(pr.first) || !known(pr.second))
      errs.push_back("causal over undeclared action: " + pr.first + " < " + pr.second);
  }
  for (const auto& [f, table] : relabellings) {
    for (const auto& [a, b] : table) {
      if (is_tau(a) && !is_tau(b)) errs.push_back("relabelling " + f + " moves tau");
      if (is_delta(a) && !is_delta(b)) errs.push_back("relabelling " + f + " moves d");
      if (!known(a) || !known(b))
        errs.push_back("relabelling " + f + " over undeclared action: " + a + " -> " + b);
    }
  }
  for (const auto& [h, s] : encap_sets)
    for (const auto& a : s)
      if (!actions.count(a)) errs.push_back("encap " + h + " over undeclared action: " + a);
  for (const auto& [i, s] : hide_sets)
    for (const auto& a : s)
      if (!actions.count(a)) errs.push_back("hide " + i + " over undeclared action: " + a);
  return errs;
}

}  // namespace locpa
