#ifndef LOCPA_SOS_HPP
#define LOCPA_SOS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "locpa/alphabet.hpp"
#include "locpa/spec.hpp"
#include "locpa/term.hpp"

namespace locpa {

enum class Mode { Static, Dynamic };

// One event of a step. Silenced or hidden occurrences are absorbed into
// the step as ghosts and carry no visible event; their original actions
// still feed the left-merge ordering gate.
struct StepEvent {
  std::string action;
  LocWord at;
  // set for a communication result: the participants' words
  bool has_sync = false;
  LocWord sync_u, sync_v;

  bool operator<(const StepEvent& o) const {
    if (action != o.action) return action < o.action;
    return at < o.at;
  }
  bool operator==(const StepEvent& o) const { return action == o.action && at == o.at; }
};

// Either a pure silent step (no visible events) or a nonempty multiset of
// located visible actions.
struct Step {
  std::vector<StepEvent> events;     // sorted; empty means tau
  std::vector<std::string> ghosts;   // effective actions of absorbed events

  bool tau() const { return events.empty(); }
  std::vector<std::string> labels() const;  // visible action multiset, sorted
  std::string key() const;                  // "a@l1,b@l2" or "tau"
};

Step mk_tau_step();
Step mk_step(std::vector<StepEvent> evs);

struct Bounds {
  size_t max_states = 4000;
  size_t max_depth = 256;
  size_t phi_max = 128;
  long fuel = 0;  // 0 = automatic
};

struct Lts {
  struct Tr {
    Step step;
    int to;
  };
  std::vector<std::string> keys;       // canonical state identities
  std::vector<TermPtr> terms;          // may hold nullptr for foreign graphs
  std::vector<std::vector<Tr>> out;    // sorted per state
  std::vector<char> terminated;       // the successful-termination predicate
  int initial = 0;
  Mode mode = Mode::Static;
  bool truncated = false;

  size_t size() const { return keys.size(); }
};

struct SosCtx {
  const Alphabet* al;
  const SpecRegistry* reg = nullptr;  // may be null
  Mode mode = Mode::Static;
  bool ctc = false;  // CTC rule group active (set from the root term)
};

struct Succ {
  Step step;
  TermPtr target;  // nullptr is successful termination
  int minted = 0;  // fresh locations created (dynamic mode)
};

// The one-step transitions derivable for t by the SOS rules.
std::vector<Succ> successors(const SosCtx& ctx, const TermPtr& t, int mint_base = 0);

// tau* . step . tau* closure of the strong relation; visible steps only.
std::vector<Succ> weak_successors(const SosCtx& ctx, const TermPtr& t, const Bounds& bounds = {});

// BFS closure of successors; states are canonical terms (keyed together
// with the mint counter in dynamic mode).
Lts build_lts(const Alphabet& al, const TermPtr& t, Mode mode, const Bounds& bounds = {},
              const SpecRegistry* reg = nullptr);

std::string export_dot(const Lts& lts);
std::string export_lts_json(const Lts& lts);

// Sort computation that resolves constants and recursion references
// through the registry (visible labels of all reachable equations).
std::set<std::string> sort_resolved(const Alphabet& al, const TermPtr& t, const SpecRegistry* reg);

}  // namespace locpa

#endif
