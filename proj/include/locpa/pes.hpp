#ifndef LOCPA_PES_HPP
#define LOCPA_PES_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "locpa/sos.hpp"
#include "locpa/term.hpp"

namespace locpa {

struct PesEvent {
  int id;
  std::string label;  // may be tau
  LocWord at;
};

using Config = std::set<int>;

// A finite prime event structure with located, labelled events, together
// with the configurations that count as successful termination (needed to
// compile sequential composition and to decide the termination predicate).
struct Pes {
  std::vector<PesEvent> events;
  std::set<std::pair<int, int>> causal;    // strict; kept transitively closed
  std::set<std::pair<int, int>> conflict;  // normalized (lo,hi); hereditarily closed
  std::set<Config> successes;

  bool le(int a, int b) const { return a == b || causal.count({a, b}) > 0; }
  bool in_conflict(int a, int b) const {
    if (a == b) return false;
    return conflict.count({std::min(a, b), std::max(a, b)}) > 0;
  }
  bool concurrent(int a, int b) const {
    return a != b && !le(a, b) && !le(b, a) && !in_conflict(a, b);
  }
  std::vector<int> causes(int e) const;  // strict causes
  bool is_config(const Config& c) const;
  bool successful(const Config& c) const { return successes.count(c) > 0; }

  void close();  // transitive/hereditary closure; checks invariants
};

struct PesUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Compiles a closed recursion-free term. Throws PesUnsupported for Proj,
// Theta, Unless and for left merges outside step form.
Pes term_to_pes(const Alphabet& al, const TermPtr& t, Mode mode = Mode::Static);

// All configurations with at most max_events events (including the empty
// one), in a deterministic order.
std::vector<Config> configurations(const Pes& p, size_t max_events = 64);

// Events enabled at c one at a time.
std::vector<int> enabled_events(const Pes& p, const Config& c);

struct PomsetTransition {
  std::set<int> fired;  // the set X
  Config target;
  bool is_step;  // pairwise concurrent
};

std::vector<PomsetTransition> pomset_transitions(const Pes& p, const Config& c,
                                                 size_t max_width = 8);

// tau* X tau* with X visible; the fired set contains only visible events.
std::vector<PomsetTransition> weak_pomset_transitions(const Pes& p, const Config& c,
                                                      size_t max_width = 8);

// The transitions the operational rules actually generate: maximal steps
// (simultaneous parallel components fire together), and their
// compositions as pomsets. The equivalence games run over these.
std::vector<PomsetTransition> aligned_steps(const Pes& p, const Config& c);
std::vector<PomsetTransition> aligned_pomsets(const Pes& p, const Config& c, int max_steps = 3,
                                              size_t max_width = 8);

// All label-preserving order isomorphisms X1 -> X2 (posets restricted to
// the fired sets); empty when the pomsets are not isomorphic.
std::vector<std::vector<std::pair<int, int>>> pomset_isos(const Pes& p1, const std::set<int>& x1,
                                                          const Pes& p2, const std::set<int>& x2);

// The maximal-step transition graph reachable from the empty
// configuration, as an Lts (states keyed by configuration contents).
Lts pes_max_step_lts(const Pes& p, const Bounds& bounds = {});

std::string export_pes_json(const Pes& p);

}  // namespace locpa

#endif
