#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgl/deriv.hpp"

namespace mgl {

// Rechecks every node against its natural-deduction rule and returns the root
// judgment. Throws CheckError carrying the node path.
Judgment check_nd(const Deriv& d);

struct InferOptions {
  // Require the variable bound by a Grd pattern to be used at exactly the
  // pattern's grade instead of at most that grade.
  bool strict_grd = false;
};

// Least structural usage of each graded hypothesis, in context order, and
// the synthesized type. `let unitJ` scales its scrutinee by 1.
struct Usage {
  GradeVec grades;
  TypeP type;
};

// Grades stored in `delta` are ignored; only names and types are read.
// Throws CheckError on unbound variables, linear misuse, type mismatches and
// Grd-bound variables used above their grade.
Usage infer_usage_gt(SemiringId sr, const TermP& term, const GCtx& delta, const InferOptions& opts = {});
Usage infer_usage_mt(SemiringId sr, const TermP& lterm, const GCtx& delta, const LCtx& gamma,
                     const InferOptions& opts = {});

// Builds an ND derivation concluding `goal` (term up to alpha), inserting
// weakening, contraction, exchange and sub nodes. Throws CheckError when the
// usage exceeds a declared grade or the types disagree.
DerivP elaborate_nd(SemiringId sr, const Judgment& goal, const InferOptions& opts = {});

// Executable substitution lemma. `arg` proves the formula of every name in
// `occ`: graded hypotheses of `body` when `arg` is graded, otherwise exactly
// one linear hypothesis. The result concludes the multicut of `arg` into
// `body` at `occ` (context spliced at the first occurrence, grades via
// boxast) with term multi_subst(body, occ, arg). Cut-free, ND only.
DerivP nd_subst(const DerivP& arg, const DerivP& body, const std::vector<std::string>& occ);

// The promotion example in natural deduction (see promotion_example_sc).
DerivP promotion_example_nd(SemiringId sr, bool with_sub = true);

// Random check_nd-valid derivation of depth at most `max_depth`.
DerivP gen_nd_derivation(SemiringId sr, std::uint64_t seed, std::size_t max_depth, Frag frag);

// Random ND derivation (GT) of a given graded formula.
DerivP gen_nd_of_type(SemiringId sr, std::uint64_t seed, std::size_t max_depth, const TypeP& type);

}  // namespace mgl
