#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mgl/deriv.hpp"

namespace mgl::cli {

// Exit codes of the command-line front end.
enum Exit : int { kOk = 0, kFail = 1, kParse = 2, kInternal = 3 };

// Called with each item's final derivation before it is reported. Exceptions
// it throws are classified like those of the pipeline itself.
using ItemHook = std::function<void(const std::string& name, const Deriv& d)>;

// Runs one invocation. `args` excludes the program name; `-` as FILE reads
// `in`. `env_semiring` is the MGL_SEMIRING default (empty when unset).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const std::string& env_semiring = "", const ItemHook& hook = {});

}  // namespace mgl::cli
