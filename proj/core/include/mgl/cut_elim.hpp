#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mgl/deriv.hpp"

namespace mgl {

// Height of the formula tree; atoms and units have rank 0.
std::size_t rank(const Type& ty);
// Longest root-to-leaf path; axioms have depth 0.
std::size_t depth(const Deriv& d);
// 0 for cut-free trees, else one more than the largest cut-formula rank.
std::size_t cut_rank(const Deriv& d);
// Formula discharged by a cut node (the left premise's type).
const Type& cut_formula(const Deriv& cut);

// Cut-free proof of `name : ty |- name : ty` (a graded hypothesis at grade 1
// for a graded ty, a linear hypothesis otherwise) built from introduction and
// left rules.
DerivP eta_expand(SemiringId sr, const TypeP& ty, const std::string& name);

enum class CaseFamily {
  Structural,
  Axiom,
  SecondaryHypothesis,
  CommutingConversion,
  SecondaryConclusion,
  Principal,
};
std::string_view family_name(CaseFamily f);

// One reduction of one cut node by the global loop.
struct TraceStep {
  std::string position;   // path of the cut node, e.g. "root/1"
  CaseFamily family;      // case taken at the cut itself
  std::string connective; // principal cases: the connective, e.g. "Lin"
  std::vector<CaseFamily> inner;  // cases taken by same-rank recursive reductions
  std::size_t formula_rank = 0;
  std::size_t premise_depth = 0;  // depth of left plus depth of right premise
  std::size_t local_cut_rank_after = 0;  // cut_rank of the replacement subtree
  std::size_t cut_rank_before = 0;  // of the whole derivation
  std::size_t cut_rank_after = 0;
  std::size_t max_rank_cuts_before = 0;  // cuts of rank cut_rank_before - 1
  std::size_t max_rank_cuts_after = 0;   // cuts of rank cut_rank_before - 1 after the step
};

// Replaces the cut node `cut` (premises of cut_rank at most the cut formula's
// rank) by a derivation of the same sequent whose cut_rank is at most that
// rank. Throws InternalError when a measure fails to decrease.
DerivP reduce_cut(const DerivP& cut, TraceStep* step = nullptr);

struct Normalized {
  DerivP deriv;
  std::vector<TraceStep> trace;
};

// Repeatedly reduces the topmost, then leftmost, cut of maximal rank. The
// result is cut-free and concludes the same sequent.
Normalized eliminate_cuts(const DerivP& d);

// Subformulas of ty, ty itself included; Grd and Lin bodies count as subformulas.
std::vector<TypeP> subformulas(const TypeP& ty);

// True iff d is cut-free and every formula in every node's conclusion is a
// subformula of a formula in the root conclusion.
bool check_subformula(const Deriv& d);

bool is_cut_free(const Deriv& d);

}  // namespace mgl
