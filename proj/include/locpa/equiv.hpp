#ifndef LOCPA_EQUIV_HPP
#define LOCPA_EQUIV_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "locpa/pes.hpp"
#include "locpa/sos.hpp"

namespace locpa {

enum class Flavor { Pomset, Step, Hp, Hhp };
enum class Locality { StaticLoc, DynamicLoc };
enum class Strength { Strong, Weak, Branching, RootedBranching };

struct RelationKind {
  Flavor flavor = Flavor::Step;
  Locality locality = Locality::StaticLoc;
  Strength strength = Strength::Strong;
};

// "step-sl-strong", "hhp-sl-strong", "rb-step-sl", "pomset-dl-weak", ...
std::optional<RelationKind> parse_kind(const std::string& s);
std::string kind_str(const RelationKind& k);

struct LocAssoc {
  std::set<std::pair<LocWord, LocWord>> pairs;
};

// u (.) u'  <=>  v (.) v' for all pairs of pairs
bool cla_consistent(const LocAssoc& phi);

enum class Outcome { Equivalent, Inequivalent, Unknown };

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  size_t witness_size = 0;       // explored relation size when equivalent
  nlohmann::json trace;          // attacker trace when inequivalent
  std::string note;
  bool bounds_hit = false;

  bool equivalent() const { return outcome == Outcome::Equivalent; }
  nlohmann::json to_json(const RelationKind& k) const;
};

// Dispatches on the kind's flavor. mode selects how transition systems are
// generated; by default it follows the locality.
Verdict check(const Alphabet& al, const TermPtr& t1, const TermPtr& t2, const RelationKind& kind,
              const Bounds& bounds = {}, const SpecRegistry* reg = nullptr,
              std::optional<Mode> mode_override = std::nullopt);

// step games over prebuilt transition systems (also used for the
// event-structure agreement check)
Verdict check_step_lts(const Lts& a, const Lts& b, const RelationKind& kind,
                       const Bounds& bounds = {});

Verdict check_pomset(const Alphabet& al, const TermPtr& t1, const TermPtr& t2,
                     const RelationKind& kind, const Bounds& bounds = {},
                     const SpecRegistry* reg = nullptr,
                     std::optional<Mode> mode_override = std::nullopt);

Verdict check_hp(const Alphabet& al, const TermPtr& t1, const TermPtr& t2,
                 const RelationKind& kind, const Bounds& bounds = {},
                 std::optional<Mode> mode_override = std::nullopt);

// Replays an inequivalence trace produced by check; true when every stated
// move exists and the final refusal is confirmed.
bool replay_witness(const Alphabet& al, const TermPtr& t1, const TermPtr& t2,
                    const RelationKind& kind, const nlohmann::json& trace,
                    const Bounds& bounds = {}, const SpecRegistry* reg = nullptr);

}  // namespace locpa

#endif
