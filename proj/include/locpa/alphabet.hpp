#ifndef LOCPA_ALPHABET_HPP
#define LOCPA_ALPHABET_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace locpa {

// Reserved action names. "tau" is the silent step, "d" the deadlock constant.
inline const std::string kTau = "tau";
inline const std::string kDelta = "d";

inline bool is_tau(const std::string& a) { return a == kTau; }
inline bool is_delta(const std::string& a) { return a == kDelta; }

// The action universe together with the user-declared side data the SOS
// rules and rewrite rules consume: the communication function gamma, the
// label-level conflict (#) and causal (<) relations, named relabellings,
// and named encapsulation / hiding sets.
class Alphabet {
public:
  std::set<std::string> actions;
  // stored with key.first < key.second; gamma is kept symmetric
  std::map<std::pair<std::string, std::string>, std::string> comm;
  std::set<std::pair<std::string, std::string>> conflict;  // normalized pairs
  std::set<std::pair<std::string, std::string>> causal;    // as declared
  std::map<std::string, std::map<std::string, std::string>> relabellings;
  std::map<std::string, std::set<std::string>> encap_sets;
  std::map<std::string, std::set<std::string>> hide_sets;

  void declare_action(const std::string& a);
  void declare_comm(const std::string& a, const std::string& b, const std::string& c);
  void declare_conflict(const std::string& a, const std::string& b);
  void declare_causal(const std::string& a, const std::string& b);

  // gamma(a,b): declared result, or "d" when undeclared or either side is
  // tau/delta. Total by construction.
  std::string gamma(const std::string& a, const std::string& b) const;
  bool comm_defined(const std::string& a, const std::string& b) const;

  // Every action that communicates with some member of L. Restriction \L
  // blocks L together with these partners.
  std::set<std::string> comm_partners(const std::set<std::string>& L) const;

  bool in_conflict(const std::string& a, const std::string& b) const;
  // reflexive: a <= a always; otherwise the transitive closure of the
  // declared causal pairs
  bool causal_le(const std::string& a, const std::string& b) const;

  // The unless/conflict-elimination silencing test: b silences e when
  // #(e,b) holds directly, or some c with #(b,c) sits at or below e in the
  // causal order. Realizes the U1/U3 side conditions.
  bool silences(const std::string& b, const std::string& e) const;
  bool silenced_by_any(const std::string& e, const std::set<std::string>& bs) const;

  // relabel through the named table; unlisted actions map to themselves,
  // tau and d are fixed points. Throws std::out_of_range on unknown name.
  std::string relabel(const std::string& fname, const std::string& a) const;
  bool has_relabelling(const std::string& fname) const;

  const std::set<std::string>& encap_set(const std::string& name) const;
  const std::set<std::string>& hide_set(const std::string& name) const;
  bool has_encap(const std::string& name) const;
  bool has_hide(const std::string& name) const;

  // Reports every invariant violation: asymmetric comm, comm involving
  // tau/d, reflexive conflict, cyclic causal, relabelling moving tau, and
  // declarations over undeclared actions.
  std::vector<std::string> validate() const;

  // Call after populating; computes the transitive closure of causal.
  void finalize();

private:
  std::set<std::pair<std::string, std::string>> causal_closure_;
};

}  // namespace locpa

#endif
