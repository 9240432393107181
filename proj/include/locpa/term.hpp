#ifndef LOCPA_TERM_HPP
#define LOCPA_TERM_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "locpa/alphabet.hpp"

namespace locpa {

// A finite word over location names; the empty word is eps.
struct LocWord {
  std::vector<std::string> parts;

  LocWord() = default;
  explicit LocWord(std::vector<std::string> p) : parts(std::move(p)) {}
  static LocWord eps() { return LocWord{}; }
  static LocWord single(const std::string& l) { return LocWord{{l}}; }

  bool empty() const { return parts.empty(); }
  LocWord concat(const LocWord& v) const;
  std::string str() const;  // "l1.l2.l3", "eps" for the empty word

  bool operator==(const LocWord& o) const { return parts == o.parts; }
  bool operator<(const LocWord& o) const { return parts < o.parts; }
};

enum class LocOrder { Equal, LeftExtends, RightExtends, Independent };

// Prefix comparison: LeftExtends means u is a strict prefix of v (u << v).
LocOrder loc_compare(const LocWord& u, const LocWord& v);
bool loc_independent(const LocWord& u, const LocWord& v);
LocWord loc_common_prefix(const LocWord& u, const LocWord& v);

// An action occurrence placed at a location word. Prefix constructors and
// steps use these; plain actions sit at eps.
struct LocatedAction {
  std::string action;
  LocWord at;

  bool operator==(const LocatedAction& o) const { return action == o.action && at == o.at; }
  bool operator<(const LocatedAction& o) const {
    if (action != o.action) return action < o.action;
    return at < o.at;
  }
};

enum class Op {
  Nil,        // 0
  Delta,      // d
  TauAtom,    // tau
  Act,        // atomic event
  LocPrefix,  // u :: P
  Prefix,     // <a1,...,an> . P   (CTC action prefix; items may be located)
  Seq,        // P ; Q
  Alt,        // P + Q
  Par,        // P // Q
  Merge,      // P || Q
  Comm,       // P | Q
  LeftMerge,  // P << Q
  Theta,      // theta(P)
  Unless,     // unless(P,Q)
  Encap,      // encap(H,P)
  Hide,       // hide(I,P)
  Proj,       // pi(n,P)
  Restrict,   // restrict({..},P)
  Relabel,    // relabel(f,P)
  Const,      // named process constant
  RecRef,     // X@E
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  Op op;
  std::string name;                         // Act/Encap/Hide/Relabel/Const/RecRef
  std::string spec_name;                    // RecRef
  LocWord word;                             // LocPrefix
  std::vector<LocatedAction> prefix_items;  // Prefix
  std::set<std::string> label_set;          // Restrict
  int proj_n = 0;                           // Proj
  TermPtr a, b;
};

TermPtr mk_nil();
TermPtr mk_delta();
TermPtr mk_tau();
TermPtr mk_act(const std::string& name);
TermPtr mk_locprefix(const LocWord& w, TermPtr p);
TermPtr mk_prefix(std::vector<LocatedAction> items, TermPtr p);
TermPtr mk_bin(Op op, TermPtr a, TermPtr b);
TermPtr mk_seq(TermPtr a, TermPtr b);
TermPtr mk_alt(TermPtr a, TermPtr b);
TermPtr mk_theta(TermPtr p);
TermPtr mk_unless(TermPtr a, TermPtr b);
TermPtr mk_encap(const std::string& H, TermPtr p);
TermPtr mk_hide(const std::string& I, TermPtr p);
TermPtr mk_proj(int n, TermPtr p);
TermPtr mk_restrict(std::set<std::string> L, TermPtr p);
TermPtr mk_relabel(const std::string& f, TermPtr p);
TermPtr mk_const(const std::string& name);
TermPtr mk_recref(const std::string& var, const std::string& spec);

// Total order on terms; 0 iff structurally equal.
int term_cmp(const TermPtr& a, const TermPtr& b);
bool term_eq(const TermPtr& a, const TermPtr& b);

// Canonical form for state identity: nested LocPrefix flattened
// (u::(v::p) -> uv::p) and eps:: dropped, applied recursively.
TermPtr canonical(const TermPtr& t);

// Number of AST nodes.
int term_size(const TermPtr& t);

bool contains_op(const TermPtr& t, Op op);
// CTC rule group is active when the term mentions Prefix, Restrict,
// Relabel or a process constant.
bool has_ctc_marker(const TermPtr& t);

// The sort L(t): visible labels the term may ever perform, computed by the
// syntactic clauses (tau never included). Requires constants resolved.
std::set<std::string> sort_of(const Alphabet& alph, const TermPtr& t);

enum class System { BatcSl, AptcSl };
bool is_basic(const TermPtr& t, System sys);

TermPtr subst_const(const TermPtr& t, const std::string& name, const TermPtr& body);

}  // namespace locpa

#endif
