#pragma once

#include "mgl/deriv.hpp"

namespace mgl {

// Sequent calculus to natural deduction. Left rules become eliminations of a
// hypothesis; cuts and left rules that substitute become nd_subst calls. The
// result concludes the same sequent with an alpha-equal term.
DerivP sc_to_nd(const DerivP& d);

// Natural deduction to sequent calculus. Eliminations become left rules under
// a single cut (cut_GS, gcut_MS or cut_MS; never a multicut). The result
// concludes the same sequent with an alpha-equal term.
DerivP nd_to_sc(const DerivP& d);

}  // namespace mgl
