#include "mgl/translate.hpp"

#include "mgl/nd_checker.hpp"
#include "mgl/structural.hpp"

namespace mgl {

namespace {

Rule nd_twin(Rule rule) {
  switch (rule) {
    case Rule::IdGS: return Rule::IdGT;
    case Rule::IdMS: return Rule::IdMT;
    case Rule::UnitJR: return Rule::UnitJI;
    case Rule::UnitIR: return Rule::UnitII;
    case Rule::BoxtimesR: return Rule::BoxtimesI;
    case Rule::LinR: return Rule::LinI;
    case Rule::OtimesR: return Rule::OtimesI;
    case Rule::LolliR: return Rule::LolliI;
    case Rule::GrdR: return Rule::GrdI;
    case Rule::WeakGS: return Rule::WeakGT;
    case Rule::ContGS: return Rule::ContGT;
    case Rule::ExGS: return Rule::ExGT;
    case Rule::SubGS: return Rule::SubGT;
    case Rule::WeakMS: return Rule::WeakMT;
    case Rule::ContMS: return Rule::ContMT;
    case Rule::ExMS: return Rule::ExMT;
    case Rule::GexMS: return Rule::GexMT;
    case Rule::SubMS: return Rule::GSub;
    default: throw InternalError("no natural-deduction twin for " + std::string(rule_info(rule).name));
  }
}

Rule sc_twin(Rule rule) {
  for (Rule cand : all_rules()) {
    if (rule_info(cand).system != System::SC) continue;
    try {
      if (nd_twin(cand) == rule) return cand;
    } catch (const InternalError&) {
    }
  }
  throw InternalError("no sequent-calculus twin for " + std::string(rule_info(rule).name));
}

class Translator {
 public:
  explicit Translator(const Deriv& d) {
    std::set<std::string> names;
    collect_deriv_names(d, names);
    for (const auto& n : names) supply_.reserve(n);
  }

  DerivP to_nd(const DerivP& d) {
    const SemiringId sr = d->semiring;
    auto mk = [sr](Rule rule, Params p, std::vector<DerivP> kids) { return make_deriv(sr, rule, std::move(p), std::move(kids)); };
    std::vector<DerivP> kids;
    for (const auto& k : d->kids) kids.push_back(to_nd(k));
    const Params& p = d->params;
    const auto& k0 = d->kids.empty() ? d->concl : d->kids[0]->concl;
    DerivP out;
    switch (d->rule) {
      case Rule::UnitJL:
      case Rule::UnitJLMS: {
        DerivP inner = mk(Rule::IdGT, Params{}.named(p.name).typed(unit_j()), {});
        Rule e = d->rule == Rule::UnitJL ? Rule::UnitJE : Rule::UnitJEMT;
        out = mk(e, Params{}.at(p.pos[0]).graded(*p.grade), {inner, kids[0]});
        break;
      }
      case Rule::BoxtimesL:
      case Rule::BoxtimesLMS: {
        const auto& first = k0.gctx[p.pos[0]];
        const auto& second = k0.gctx[p.pos[0] + 1];
        DerivP inner = mk(Rule::IdGT, Params{}.named(p.name).typed(g_tensor(first.type, second.type)), {});
        Rule e = d->rule == Rule::BoxtimesL ? Rule::BoxtimesE : Rule::BoxtimesEMT;
        out = mk(e, Params{}.at(p.pos[0]), {inner, kids[0]});
        break;
      }
      case Rule::UnitIL: {
        DerivP inner = mk(Rule::IdMT, Params{}.named(p.name).typed(unit_i()), {});
        out = mk(Rule::UnitIE, Params{}.at(p.pos[0]), {inner, kids[0]});
        break;
      }
      case Rule::OtimesL: {
        const auto& first = k0.lctx[p.pos[0]];
        const auto& second = k0.lctx[p.pos[0] + 1];
        DerivP inner = mk(Rule::IdMT, Params{}.named(p.name).typed(l_tensor(first.type, second.type)), {});
        out = mk(Rule::OtimesE, Params{}.at(p.pos[0]), {inner, kids[0]});
        break;
      }
      case Rule::GrdL: {
        const auto& entry = k0.gctx[p.pos[0]];
        DerivP inner = mk(Rule::IdMT, Params{}.named(p.name).typed(grd_type(entry.grade, entry.type)), {});
        out = mk(Rule::GrdE, Params{}.at(p.pos[0]), {inner, kids[0]});
        break;
      }
      case Rule::LinL: {
        const auto& entry = k0.lctx[p.pos[0]];
        DerivP inner = mk(Rule::IdGT, Params{}.named(p.name).typed(lin_type(entry.type)), {});
        out = nd_subst(mk(Rule::LinE, {}, {inner}), kids[0], {entry.name});
        break;
      }
      case Rule::LolliL: {
        const auto& arg = d->kids[0]->concl;
        const auto& target = d->kids[1]->concl.lctx[p.pos[0]];
        DerivP f = mk(Rule::IdMT, Params{}.named(p.name).typed(lolli(arg.type, target.type)), {});
        out = nd_subst(mk(Rule::LolliE, {}, {f, kids[0]}), kids[1], {target.name});
        break;
      }
      case Rule::CutGS:
      case Rule::GcutMS:
        out = nd_subst(kids[0], kids[1], {d->kids[1]->concl.gctx[p.pos[0]].name});
        break;
      case Rule::CutMS:
        out = nd_subst(kids[0], kids[1], {d->kids[1]->concl.lctx[p.pos[0]].name});
        break;
      case Rule::Mcut:
      case Rule::Gmcut: {
        std::vector<std::string> occ;
        for (auto o : p.occ) occ.push_back(d->kids[1]->concl.gctx[o].name);
        out = nd_subst(kids[0], kids[1], occ);
        break;
      }
      default:
        out = mk(nd_twin(d->rule), p, std::move(kids));
        break;
    }
    return adjust(out, d->concl);
  }

  DerivP to_sc(const DerivP& d) {
    const SemiringId sr = d->semiring;
    auto mk = [sr](Rule rule, Params p, std::vector<DerivP> kids) { return make_deriv(sr, rule, std::move(p), std::move(kids)); };
    std::vector<DerivP> kids;
    for (const auto& k : d->kids) kids.push_back(to_sc(k));
    const Params& p = d->params;
    DerivP out;
    auto at_g = [](const DerivP& hyp, const std::string& n) { return *find_g(hyp->concl.gctx, n); };
    auto at_l = [](const DerivP& hyp, const std::string& n) { return *find_l(hyp->concl.lctx, n); };
    switch (d->rule) {
      case Rule::UnitJE:
      case Rule::UnitJEMT: {
        std::string hyp_name = supply_.fresh("j");
        bool ms = d->rule == Rule::UnitJEMT;
        DerivP left = mk(ms ? Rule::UnitJLMS : Rule::UnitJL, Params{}.at(p.pos[0]).named(hyp_name).graded(*p.grade), {kids[1]});
        out = mk(ms ? Rule::GcutMS : Rule::CutGS, Params{}.at(at_g(left, hyp_name)), {kids[0], left});
        break;
      }
      case Rule::BoxtimesE:
      case Rule::BoxtimesEMT: {
        std::string hyp_name = supply_.fresh("p");
        bool ms = d->rule == Rule::BoxtimesEMT;
        DerivP left = mk(ms ? Rule::BoxtimesLMS : Rule::BoxtimesL, Params{}.at(p.pos[0]).named(hyp_name), {kids[1]});
        out = mk(ms ? Rule::GcutMS : Rule::CutGS, Params{}.at(at_g(left, hyp_name)), {kids[0], left});
        break;
      }
      case Rule::UnitIE: {
        std::string hyp_name = supply_.fresh("u");
        DerivP left = mk(Rule::UnitIL, Params{}.at(p.pos[0]).named(hyp_name), {kids[1]});
        out = mk(Rule::CutMS, Params{}.at(at_l(left, hyp_name)), {kids[0], left});
        break;
      }
      case Rule::OtimesE: {
        std::string hyp_name = supply_.fresh("q");
        DerivP left = mk(Rule::OtimesL, Params{}.at(p.pos[0]).named(hyp_name), {kids[1]});
        out = mk(Rule::CutMS, Params{}.at(at_l(left, hyp_name)), {kids[0], left});
        break;
      }
      case Rule::GrdE: {
        std::string hyp_name = supply_.fresh("g");
        DerivP left = mk(Rule::GrdL, Params{}.at(p.pos[0]).at(kids[1]->concl.lctx.size()).named(hyp_name), {kids[1]});
        out = mk(Rule::CutMS, Params{}.at(at_l(left, hyp_name)), {kids[0], left});
        break;
      }
      case Rule::LolliE: {
        const TypeP& fn = d->kids[0]->concl.type;
        std::string f = supply_.fresh("f");
        DerivP hyp2 = mk(Rule::IdMS, Params{}.named(supply_.fresh("y")).typed(fn->right), {});
        DerivP left = mk(Rule::LolliL, Params{}.at(0).named(f), {kids[1], hyp2});
        out = mk(Rule::CutMS, Params{}.at(at_l(left, f)), {kids[0], left});
        break;
      }
      case Rule::LinE: {
        const TypeP& lt = d->kids[0]->concl.type;
        std::string hyp_name = supply_.fresh("z");
        DerivP hyp = mk(Rule::IdMS, Params{}.named(supply_.fresh("x")).typed(lt->left), {});
        DerivP left = mk(Rule::LinL, Params{}.at(0).at(0).named(hyp_name), {hyp});
        out = mk(Rule::GcutMS, Params{}.at(0), {kids[0], left});
        break;
      }
      default:
        out = mk(sc_twin(d->rule), p, std::move(kids));
        break;
    }
    return adjust(out, d->concl);
  }

 private:
  NameSupply supply_;
};

void check_preserved(const DerivP& in, const DerivP& out, const char* what) {
  if (!same_sequent(in->concl, out->concl) || !alpha_eq(*in->concl.term, *out->concl.term)) {
    throw InternalError(std::string(what) + " changed the conclusion");
  }
}

}  // namespace

DerivP sc_to_nd(const DerivP& d) {
  if (system_of(*d) != System::SC) throw CheckError("sc_to_nd expects a sequent-calculus derivation");
  Translator t(*d);
  DerivP out;
  try {
    out = t.to_nd(d);
  } catch (const CheckError& e) {
    throw InternalError(std::string("sc_to_nd produced an ill-formed step: ") + e.what());
  }
  check_preserved(d, out, "sc_to_nd");
  return out;
}

DerivP nd_to_sc(const DerivP& d) {
  if (system_of(*d) != System::ND) throw CheckError("nd_to_sc expects a natural-deduction derivation");
  Translator t(*d);
  DerivP out;
  try {
    out = t.to_sc(d);
  } catch (const CheckError& e) {
    throw InternalError(std::string("nd_to_sc produced an ill-formed step: ") + e.what());
  }
  check_preserved(d, out, "nd_to_sc");
  return out;
}

}  // namespace mgl
