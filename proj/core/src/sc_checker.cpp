#include "mgl/sc_checker.hpp"

namespace mgl {

Judgment check_sc(const Deriv& d) { return recheck(d, System::SC); }

}  // namespace mgl
