#pragma once

#include <cstdint>
#include <string>

#include "mgl/deriv.hpp"

namespace mgl {

// Rechecks every node against its sequent-calculus rule and returns the root
// judgment. Throws CheckError carrying the node path.
Judgment check_sc(const Deriv& d);

// The box at `grade` over a linear formula is Grd[grade](Lin(formula)).
// Introduction: from a premise `delta (.) Delta ; . |- term : formula` derive
// `grade*delta (.) Delta ; . |- Grd[grade] (Lin term) : Grd[grade](Lin(formula))`
// by Lin_R then Grd_R.
DerivP derive_box_intro(const Grade& grade, const DerivP& premise);
// Elimination: `boxed` proves a box; `body` holds a graded hypothesis of the
// boxed formula at its grade, at position `x_pos`. Grd_L on the body, then a
// linear cut.
DerivP derive_box_elim(const DerivP& boxed, const DerivP& body, std::size_t x_pos);

// Graded implication: Grd[grade](graded formula) -o linear formula.
// Left: `arg` (GS) proves the graded formula; `cont` holds a linear hypothesis
// at `y_pos`. Grd_R on `arg` at `grade`, then the implication left rule
// introducing `f`.
DerivP derive_gimpl_left(const Grade& grade, const DerivP& arg, const DerivP& cont, std::size_t y_pos,
                         const std::string& f);
// Right: `premise` is an MS proof holding the graded hypothesis at position
// `x_pos`. Grd_L moves it into the linear context as `hyp_name`, then the
// implication right rule binds it.
DerivP derive_gimpl_right(const DerivP& premise, std::size_t x_pos, const std::string& hyp_name);

// `; |- ... : Grd[grade](left >< right) -o Grd[grade](left) * Grd[grade](right)`,
// cut-free.
DerivP derive_grd_tensor_dist(const Grade& grade, const TypeP& left_ty, const TypeP& right_ty);

// The promotion example: two identities paired, contracted, raised from 2 to
// 3 by sub (when `with_sub`), then promoted at grade 2. In nat-leq the root is
// `MS: x @ 6 : X ; |- Grd[2] (x,x) : Grd[2](X >< X)`; in nat-exact the sub node
// is rejected. Throws CheckError when the semiring rejects a step.
DerivP promotion_example_sc(SemiringId sr, bool with_sub = true);

// Cut of `Lin_R(Grd_R 1 (Lin_R (Lin_L id)))` against its inverse over a linear
// atom A; normalizes in three principal steps to the eta-expanded identity on
// Lin(A).
DerivP notable_cut_example(SemiringId sr);

enum class CutFlavor { GS, GSIntoMS, MS };  // cut_GS, gcut_MS, cut_MS

struct GenOptions {
  double cut_probability = 0.0;  // chance that an inner node is a cut
};

// Random check_sc-valid derivation of depth at most `max_depth` concluding in
// `frag`. Atoms X, Y (graded) and A, B (linear) are used.
DerivP gen_sc_derivation(SemiringId sr, std::uint64_t seed, std::size_t max_depth, Frag frag,
                         const GenOptions& opts = {});

// Random derivation whose root is a cut of the given flavor.
DerivP gen_sc_cut(SemiringId sr, std::uint64_t seed, std::size_t max_depth, CutFlavor flavor);

}  // namespace mgl
