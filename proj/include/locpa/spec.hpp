#ifndef LOCPA_SPEC_HPP
#define LOCPA_SPEC_HPP

#include <map>
#include <string>
#include <vector>

#include "locpa/term.hpp"

namespace locpa {

// One summand of a linear recursive equation: a multiset of located
// actions, optionally followed by a target variable. No target means the
// summand terminates. An equation with no summands is the deadlock d.
struct Summand {
  std::vector<LocatedAction> actions;  // kept sorted
  bool has_target = false;
  std::string target;

  bool operator==(const Summand& o) const {
    return actions == o.actions && has_target == o.has_target && target == o.target;
  }
  bool operator<(const Summand& o) const {
    if (actions != o.actions) return actions < o.actions;
    if (has_target != o.has_target) return has_target < o.has_target;
    return target < o.target;
  }
};

struct LinearSpec {
  std::string name;
  std::vector<std::string> vars;  // declaration order
  std::map<std::string, std::vector<Summand>> equations;

  bool has_var(const std::string& v) const { return equations.count(v) > 0; }
};

// Resolves recursion references X@E and named process constants.
struct SpecRegistry {
  std::map<std::string, LinearSpec> specs;
  std::map<std::string, TermPtr> constants;

  const LinearSpec* find_spec(const std::string& name) const {
    auto it = specs.find(name);
    return it == specs.end() ? nullptr : &it->second;
  }
  const TermPtr* find_const(const std::string& name) const {
    auto it = constants.find(name);
    return it == constants.end() ? nullptr : &it->second;
  }
};

}  // namespace locpa

#endif
