#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mgl/deriv.hpp"

namespace mgl {

// Structural rules of the system and fragment a derivation belongs to.
struct StructuralRules {
  Rule ex_graded;
  std::optional<Rule> ex_linear;  // mixed fragments only
  Rule cont;
  Rule weak;
  Rule sub;
};
StructuralRules structural_rules(System sys, Frag frag);
inline System system_of(const Deriv& d) { return rule_info(d.rule).system; }

// Names that `node` removes from the contexts of premise `kid`: binders of
// left rules and eliminations, cut formulas, the dropped side of a contraction.
std::vector<std::string> consumed_names(const Deriv& node, std::size_t kid);

// Simultaneous renaming of conclusion context names. Names bound inside the
// tree that collide with a new name are freshened from `supply`. The map must
// be injective and must not target a name the conclusion keeps.
DerivP rename_deriv(const DerivP& d, const std::map<std::string, std::string>& m, NameSupply& supply);

// Renames every name consumed at the root that lies in `avoid`. The conclusion
// is unchanged up to alpha.
DerivP freshen_root(const DerivP& d, const std::set<std::string>& avoid, NameSupply& supply);

// Applies node's rule again over `kids`, whose contexts may be reordered or
// extended. Positional parameters are carried over by entry name; entries a
// rule needs adjacent (or last, for implication introduction) are moved
// there with exchange steps first.
DerivP reapply(const Deriv& node, std::vector<DerivP> kids, std::optional<Grade> grade = std::nullopt);

// Reorders both contexts with exchange steps; the orders must be permutations
// of the current contexts.
DerivP permute_to(const DerivP& d, const std::vector<std::string>& gorder, const std::vector<std::string>& lorder);

// Permutes to the target's context order, then raises grades with one sub
// step when they differ. Throws CheckError when the target is not reachable.
DerivP adjust(const DerivP& d, const Judgment& target);

// Contracts graded entry `drop` into `keep` wherever both sit.
DerivP contract(const DerivP& d, const std::string& keep, const std::string& drop);

// Inserts a grade-0 graded hypothesis at the end of the graded context.
DerivP weaken(const DerivP& d, const std::string& name, const TypeP& type);

// Conclusion of cutting `left` into `right` at the named hypotheses: mcut
// (GS into GS), gmcut (GS into MS) or cut_MS (MS into MS, one linear name).
Judgment cut_target(SemiringId sr, const Judgment& left, const Judgment& right, const std::vector<std::string>& occ);

std::vector<std::string> gnames(const Judgment& j);
std::vector<std::string> lnames(const Judgment& j);

}  // namespace mgl
