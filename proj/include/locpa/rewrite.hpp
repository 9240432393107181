#ifndef LOCPA_REWRITE_HPP
#define LOCPA_REWRITE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "locpa/alphabet.hpp"
#include "locpa/term.hpp"

namespace locpa {

// A root-rewrite: returns the contractum when the rule matches at the root.
struct Rule {
  std::string name;
  std::function<std::optional<TermPtr>(const Alphabet&, const TermPtr&)> apply;
};

struct RuleSet {
  std::string name;
  std::vector<Rule> rules;
};

// Named rule sets from the axiom tables. "strong" bundles
// batc_sl+aptc_sl+encap+proj; "branching" adds tau_laws+hide (sound only
// modulo rooted branching equivalences).
const RuleSet& ruleset(const std::string& name);

struct TraceStep {
  std::string rule;
  std::vector<int> path;  // 0 = left/only child, 1 = right child
  TermPtr before, after;  // the redex and its contractum
};
using Trace = std::vector<TraceStep>;

struct NormResult {
  TermPtr term;
  Trace trace;
  bool fuel_exhausted = false;
  long steps = 0;
};

// Innermost-leftmost normalization. fuel <= 0 selects 10 * size^2.
NormResult normalize(const Alphabet& alph, const TermPtr& t, const RuleSet& rs, long fuel = 0);

// Replays a trace from a start term; returns the final term or nullptr if
// some step does not match.
TermPtr replay_trace(const TermPtr& start, const Trace& trace);

// Equality modulo associativity/commutativity of + (plus canonical
// location-prefix flattening). Intended for normal forms.
TermPtr ac_normal(const TermPtr& t);
bool ac_equal(const TermPtr& a, const TermPtr& b);

// normalize both sides with rs, then ac_equal. Throws on fuel exhaustion.
bool axiom_equal(const Alphabet& alph, const TermPtr& a, const TermPtr& b, const RuleSet& rs,
                 long fuel = 0);

}  // namespace locpa

#endif
