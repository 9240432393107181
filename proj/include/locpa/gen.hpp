#ifndef LOCPA_GEN_HPP
#define LOCPA_GEN_HPP

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "locpa/equiv.hpp"
#include "locpa/recursion.hpp"
#include "locpa/rewrite.hpp"

namespace locpa {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  int below(int n) { return static_cast<int>(eng() % static_cast<uint64_t>(n)); }
  bool flip() { return (eng() & 1) != 0; }
  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(static_cast<int>(xs.size()))];
  }
};

// The built-in alphabet the law suites run over: actions a,b,c with
// gamma(a,b)=c, conflict a#b, the causal chain a<b<c, relabellings id and
// swap, encapsulation sets H={a} and HH={a,b}, hidden sets I={a}, J={c}.
Alphabet law_alphabet();

// AptcCore omits the conflict-elimination operators: their rewriting is
// not behaviour-faithful (the U axiom system derives x<|z = x through
// A7+U11+U4, clashing with U1), so cross-route properties scope them out.
enum class Dialect { Batc, Aptc, AptcCore, AptcTau, AptcCoreTau, Ctc, CtcTau };

TermPtr gen_term(Rng& rng, const Alphabet& al, int size, Dialect d);
LocWord gen_word(Rng& rng, int max_len = 2);

struct LawInstance {
  TermPtr lhs, rhs;
};

struct Law {
  std::string name;
  std::string suite;  // batc | aptc | encap | proj | tau | hide | ctc-static | ctc-location
  std::function<std::optional<LawInstance>(Rng&, const Alphabet&)> instantiate;
  // instance generator for the finer (pomset/hp) checkers where it must
  // differ; defaults to instantiate
  std::function<std::optional<LawInstance>(Rng&, const Alphabet&)> instantiate_finer;
};

// caps the size of generated metavariable terms in law instances (the
// finer event-structure checkers need small instances)
void set_law_term_size(int size);
int law_term_size();

const std::vector<Law>& all_laws();
std::vector<const Law*> laws_in_suite(const std::string& suite);
std::vector<std::string> suite_names();
// the checker the matching soundness theorem names
RelationKind suite_checker(const std::string& suite);

// ---- expansion law (criterion: located prefix compositions) ----

// a parallel composition of located prefix sums, optionally restricted;
// components with communication partners only appear in binary compositions
TermPtr gen_prefix_composition(Rng& rng, const Alphabet& al);
// the expansion of such a composition into prefixed summands plus tau
// summands for the communicating pairs
TermPtr expand_composition(const Alphabet& al, const TermPtr& p);

// ---- corpora ----

// all closed BATC terms up to max_size over the given atoms and one
// location name (location prefixes eps:: and loc::)
std::vector<TermPtr> exhaustive_batc(int max_size, const std::vector<std::string>& atoms,
                                     const std::string& loc);

// the same grammar extended with // and ||
std::vector<TermPtr> exhaustive_parallel(int max_size, const std::vector<std::string>& atoms,
                                         const std::string& loc);

// random guarded linear specification over the given actions
LinearSpec gen_linear_spec(Rng& rng, const std::string& name, int n_vars, int max_summands,
                           const std::vector<std::string>& actions, bool allow_tau);

// one-hole context application for the congruence suite
TermPtr gen_context(Rng& rng, const Alphabet& al, const TermPtr& hole);

}  // namespace locpa

#endif
