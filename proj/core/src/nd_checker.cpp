#include "mgl/nd_checker.hpp"

namespace mgl {

Judgment check_nd(const Deriv& d) { return recheck(d, System::ND); }

DerivP promotion_example_nd(SemiringId sr, bool with_sub) {
  TypeP gatom = g_atom("X");
  DerivP d = make_deriv(sr, Rule::BoxtimesI, {},
                        {make_deriv(sr, Rule::IdGT, Params{}.named("x").typed(gatom), {}),
                         make_deriv(sr, Rule::IdGT, Params{}.named("y").typed(gatom), {})});
  d = make_deriv(sr, Rule::ContGT, Params{}.at(0), {d});
  if (with_sub) d = make_deriv(sr, Rule::SubGT, Params{}.vector({Grade::natural(sr, 3)}), {d});
  return make_deriv(sr, Rule::GrdI, Params{}.graded(Grade::natural(sr, 2)), {d});
}

}  // namespace mgl
