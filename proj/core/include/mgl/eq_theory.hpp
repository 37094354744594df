#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mgl/deriv.hpp"

namespace mgl {

// Child indices from the root.
using DerivPath = std::vector<std::size_t>;

// Parses "root", "root/1/0" (or "", "1/0").
DerivPath parse_path(std::string_view text);
std::string print_path(const DerivPath& p);

// Names of the directed rewrites, in a fixed order.
const std::vector<std::string>& eq_rule_names();

// Rewrites the subtree at `at` by the named rule, read left to right, and
// rebuilds the ancestors. The conclusion (sequent and term) is unchanged.
// Throws CheckError when the subtree does not match the rule's left shape.
DerivP apply_eq_rule(std::string_view name, const DerivP& d, const DerivPath& at);

// Positions where apply_eq_rule(name, d, .) succeeds.
std::vector<DerivPath> eq_rule_matches(std::string_view name, const DerivP& d);

enum class Equiv { Equal, Unknown };

// Sound approximation of proof equality: both sides are cut-eliminated and
// their terms compared up to alpha. Throws CheckError when the conclusions
// differ.
Equiv equiv_oracle(const DerivP& a, const DerivP& b);

}  // namespace mgl
