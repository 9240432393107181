#ifndef LOCPA_RECURSION_HPP
#define LOCPA_RECURSION_HPP

#include <optional>
#include <string>
#include <vector>

#include "locpa/equiv.hpp"
#include "locpa/sos.hpp"
#include "locpa/spec.hpp"

namespace locpa {

// ok iff the tau-only summand graph over the variables is acyclic; the
// error names a cycle witness.
std::optional<std::string> validate_guarded(const LinearSpec& spec);

// states are the variables plus the termination state; one transition per
// summand. Never truncated.
Lts spec_to_lts(const Alphabet& al, const LinearSpec& spec, Mode mode);

// The n-th projection of <var|spec> as a closed recursion-free term:
// unfold the equations n times and cut with the projection laws.
TermPtr project_spec(const Alphabet& al, const LinearSpec& spec, const std::string& var, int n);

// Approximation induction: compare projections up to N; complete LTS pairs
// upgrade to a definitive verdict at N >= |vars1|*|vars2|.
Verdict aip_check(const Alphabet& al, const LinearSpec& s1, const std::string& v1,
                  const LinearSpec& s2, const std::string& v2, int N, const RelationKind& kind,
                  const Bounds& bounds = {});

struct Cluster {
  std::vector<std::string> vars;
  std::vector<Summand> exits;
};

// Strongly connected components of the I-union-tau summand graph, with the
// exits of each cluster (deduplicated).
std::vector<Cluster> clusters(const Alphabet& al, const LinearSpec& spec, const std::string& I);

nlohmann::json clusters_json(const std::vector<Cluster>& cs);

struct CfarResult {
  TermPtr term;
  bool exit_free = false;  // flagged: the cluster has no exits
};

// The right-hand side of the cluster fair abstraction rule for var:
// tau ; hide(I, sum of the cluster's exits).
CfarResult cfar_apply(const Alphabet& al, const LinearSpec& spec, const std::string& I,
                      const std::string& var);

}  // namespace locpa

#endif
