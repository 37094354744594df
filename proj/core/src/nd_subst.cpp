#include <algorithm>

#include "mgl/nd_checker.hpp"
#include "mgl/structural.hpp"

namespace mgl {

namespace {

class Substituter {
 public:
  explicit Substituter(NameSupply& supply) : supply_(supply) {}

  DerivP run(const DerivP& arg, const DerivP& body, std::vector<std::string> occ) {
    const SemiringId sr = body->semiring;
    Judgment target = cut_target(sr, arg->concl, body->concl, occ);
    return adjust(step(arg, body, std::move(occ)), target);
  }

 private:
  DerivP step(const DerivP& arg, const DerivP& body, std::vector<std::string> occ) {
    auto is_occ = [&](const std::string& n) { return std::find(occ.begin(), occ.end(), n) != occ.end(); };

    if (occ.empty()) {
      DerivP out = body;
      for (const auto& e : arg->concl.gctx) out = weaken(out, e.name, e.type);
      return out;
    }
    if ((body->rule == Rule::IdGT || body->rule == Rule::IdMT) && is_occ(body->params.name)) return arg;

    switch (body->rule) {
      case Rule::WeakGT:
      case Rule::WeakMT:
        if (is_occ(body->params.name)) {
          occ.erase(std::find(occ.begin(), occ.end(), body->params.name));
          return run(arg, body->kids[0], occ);
        }
        break;
      case Rule::ContGT:
      case Rule::ContMT: {
        const auto& kid = body->kids[0]->concl;
        const std::string& keep = kid.gctx[body->params.pos[0]].name;
        if (is_occ(keep)) {
          occ.push_back(kid.gctx[body->params.pos[0] + 1].name);
          return run(arg, body->kids[0], occ);
        }
        break;
      }
      case Rule::ExGT:
      case Rule::GexMT:
      case Rule::ExMT:
      case Rule::SubGT:
      case Rule::GSub:
        return run(arg, body->kids[0], occ);
      default:
        break;
    }

    std::set<std::string> arg_names = ctx_names(arg->concl);
    DerivP node = freshen_root(body, arg_names, supply_);
    std::vector<DerivP> kids = node->kids;
    std::vector<std::map<std::string, std::string>> copies;
    bool first = true;
    for (std::size_t k = 0; k < kids.size(); ++k) {
      auto consumed = consumed_names(*node, k);
      std::vector<std::string> here;
      for (const auto& o : occ) {
        if (std::find(consumed.begin(), consumed.end(), o) != consumed.end()) continue;
        if (ctx_names(kids[k]->concl).count(o)) here.push_back(o);
      }
      if (here.empty()) continue;
      DerivP use = arg;
      if (!first) {
        std::map<std::string, std::string> m;
        for (const auto& n : arg_names) m.emplace(n, supply_.fresh(n));
        use = rename_deriv(arg, m, supply_);
        copies.push_back(m);
      }
      first = false;
      kids[k] = run(use, kids[k], here);
    }
    DerivP out = reapply(*node, std::move(kids));
    for (const auto& m : copies) {
      for (const auto& [orig, copy] : m) {
        if (find_g(out->concl.gctx, orig)) out = contract(out, orig, copy);
      }
    }
    return out;
  }

  NameSupply& supply_;
};

}  // namespace

DerivP nd_subst(const DerivP& arg, const DerivP& body, const std::vector<std::string>& occ) {
  if (system_of(*arg) != System::ND || system_of(*body) != System::ND) {
    throw InternalError("nd_subst expects natural-deduction derivations");
  }
  NameSupply supply;
  std::set<std::string> names;
  collect_deriv_names(*arg, names);
  collect_deriv_names(*body, names);
  for (const auto& n : names) supply.reserve(n);
  Substituter s(supply);
  return s.run(arg, body, occ);
}

}  // namespace mgl
