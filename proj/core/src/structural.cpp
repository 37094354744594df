#include "mgl/structural.hpp"

#include <algorithm>

namespace mgl {

StructuralRules structural_rules(System sys, Frag frag) {
  if (sys == System::SC) {
    if (frag == Frag::GS) return {Rule::ExGS, std::nullopt, Rule::ContGS, Rule::WeakGS, Rule::SubGS};
    return {Rule::GexMS, Rule::ExMS, Rule::ContMS, Rule::WeakMS, Rule::SubMS};
  }
  if (frag == Frag::GS) return {Rule::ExGT, std::nullopt, Rule::ContGT, Rule::WeakGT, Rule::SubGT};
  return {Rule::GexMT, Rule::ExMT, Rule::ContMT, Rule::WeakMT, Rule::GSub};
}

std::vector<std::string> gnames(const Judgment& j) {
  std::vector<std::string> out;
  for (const auto& e : j.gctx) out.push_back(e.name);
  return out;
}

std::vector<std::string> lnames(const Judgment& j) {
  std::vector<std::string> out;
  for (const auto& e : j.lctx) out.push_back(e.name);
  return out;
}

std::vector<std::string> consumed_names(const Deriv& node, std::size_t kid) {
  const RuleInfo& info = rule_info(node.rule);
  const Judgment& k = node.kids.at(kid)->concl;
  const auto& pos = node.params.pos;
  bool at_pos_kid = static_cast<int>(kid) == info.pos_kid;
  switch (node.rule) {
    case Rule::BoxtimesL:
    case Rule::BoxtimesLMS:
    case Rule::BoxtimesE:
    case Rule::BoxtimesEMT:
      if (!at_pos_kid) return {};
      return {k.gctx[pos[0]].name, k.gctx[pos[0] + 1].name};
    case Rule::OtimesL:
    case Rule::OtimesE:
      if (!at_pos_kid) return {};
      return {k.lctx[pos[0]].name, k.lctx[pos[0] + 1].name};
    case Rule::LinL:
    case Rule::LolliL:
    case Rule::CutMS:
      if (!at_pos_kid) return {};
      return {k.lctx[pos[0]].name};
    case Rule::GrdL:
    case Rule::GrdE:
    case Rule::CutGS:
    case Rule::GcutMS:
      if (!at_pos_kid) return {};
      return {k.gctx[pos[0]].name};
    case Rule::Mcut:
    case Rule::Gmcut: {
      if (!at_pos_kid) return {};
      std::vector<std::string> out;
      for (auto o : node.params.occ) out.push_back(k.gctx[o].name);
      return out;
    }
    case Rule::LolliR:
    case Rule::LolliI:
      return {k.lctx.back().name};
    case Rule::ContGS:
    case Rule::ContMS:
    case Rule::ContGT:
    case Rule::ContMT:
      return {k.gctx[pos[0] + 1].name};
    default:
      return {};
  }
}

namespace {

bool has_name_role(Rule rule) {
  for (Role role : rule_info(rule).roles) {
    if (role == Role::Name) return true;
  }
  return false;
}

DerivP rebuild(const Deriv& node, Params params, std::vector<DerivP> kids) {
  return make_deriv(node.semiring, node.rule, std::move(params), std::move(kids));
}

DerivP rename_rec(const DerivP& d, const std::map<std::string, std::string>& m, NameSupply& supply) {
  std::set<std::string> here = ctx_names(d->concl);
  std::map<std::string, std::string> local;
  std::set<std::string> targets;
  for (const auto& [a, b] : m) {
    if (a != b && here.count(a)) {
      local.emplace(a, b);
      targets.insert(b);
    }
  }
  if (local.empty()) return d;
  Params params = d->params;
  if (has_name_role(d->rule)) {
    auto it = local.find(params.name);
    if (it != local.end()) params.name = it->second;
  }
  std::vector<DerivP> kids;
  for (std::size_t k = 0; k < d->kids.size(); ++k) {
    const DerivP& kid = d->kids[k];
    auto consumed = consumed_names(*d, k);
    std::set<std::string> cset(consumed.begin(), consumed.end());
    std::map<std::string, std::string> km;
    for (const auto& name : ctx_names(kid->concl)) {
      if (cset.count(name)) {
        if (targets.count(name)) km.emplace(name, supply.fresh(name));
      } else {
        auto it = local.find(name);
        if (it != local.end()) km.emplace(name, it->second);
      }
    }
    kids.push_back(rename_rec(kid, km, supply));
  }
  return rebuild(*d, std::move(params), std::move(kids));
}

void reserve_all(const Deriv& d, NameSupply& supply) {
  std::set<std::string> names;
  collect_deriv_names(d, names);
  for (const auto& n : names) supply.reserve(n);
}

// Positions to reach `order` from `cur` by adjacent swaps; applies each swap.
template <class Swap>
void bubble(std::vector<std::string> cur, const std::vector<std::string>& order, Swap swap) {
  if (cur.size() != order.size()) throw InternalError("permutation of a context with a different size");
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto it = std::find(cur.begin() + static_cast<long>(i), cur.end(), order[i]);
    if (it == cur.end()) throw InternalError("permutation target '" + order[i] + "' is not in the context");
    for (auto j = static_cast<std::size_t>(it - cur.begin()); j > i; --j) {
      swap(j - 1);
      std::swap(cur[j - 1], cur[j]);
    }
  }
}

std::size_t index_of(const std::vector<std::string>& v, const std::string& name) {
  auto it = std::find(v.begin(), v.end(), name);
  if (it == v.end()) throw InternalError("entry '" + name + "' vanished while re-applying a rule");
  return static_cast<std::size_t>(it - v.begin());
}

std::vector<std::string> move_after(std::vector<std::string> v, const std::string& anchor, const std::string& moved) {
  v.erase(v.begin() + static_cast<long>(index_of(v, moved)));
  v.insert(v.begin() + static_cast<long>(index_of(v, anchor)) + 1, moved);
  return v;
}

std::size_t insertion_point(const std::vector<std::string>& old_names, std::size_t p,
                            const std::vector<std::string>& new_names) {
  if (p == 0) return 0;
  auto it = std::find(new_names.begin(), new_names.end(), old_names[p - 1]);
  if (it == new_names.end()) return new_names.size();
  return static_cast<std::size_t>(it - new_names.begin()) + 1;
}

}  // namespace

DerivP rename_deriv(const DerivP& d, const std::map<std::string, std::string>& m, NameSupply& supply) {
  std::set<std::string> here = ctx_names(d->concl);
  std::set<std::string> targets;
  for (const auto& [a, b] : m) {
    if (a == b || !here.count(a)) continue;
    if (!targets.insert(b).second) throw InternalError("renaming maps two names to '" + b + "'");
    if (here.count(b) && !m.count(b)) throw InternalError("renaming target '" + b + "' is already in the context");
  }
  reserve_all(*d, supply);
  for (const auto& [a, b] : m) supply.reserve(b);
  return rename_rec(d, m, supply);
}

DerivP freshen_root(const DerivP& d, const std::set<std::string>& avoid, NameSupply& supply) {
  bool any = false;
  std::vector<std::vector<std::string>> consumed;
  for (std::size_t k = 0; k < d->kids.size(); ++k) {
    consumed.push_back(consumed_names(*d, k));
    for (const auto& c : consumed.back()) any = any || avoid.count(c);
  }
  if (!any) return d;
  reserve_all(*d, supply);
  for (const auto& a : avoid) supply.reserve(a);
  std::vector<DerivP> kids;
  for (std::size_t k = 0; k < d->kids.size(); ++k) {
    std::map<std::string, std::string> m;
    for (const auto& c : consumed[k]) {
      if (avoid.count(c)) m.emplace(c, supply.fresh(c));
    }
    kids.push_back(m.empty() ? d->kids[k] : rename_rec(d->kids[k], m, supply));
  }
  return rebuild(*d, d->params, std::move(kids));
}

DerivP permute_to(const DerivP& d, const std::vector<std::string>& gorder, const std::vector<std::string>& lorder) {
  const SemiringId sr = d->semiring;
  StructuralRules rules = structural_rules(system_of(*d), d->concl.frag);
  DerivP cur = d;
  bubble(gnames(d->concl), gorder, [&](std::size_t p) {
    cur = make_deriv(sr, rules.ex_graded, Params{}.at(p), {cur});
  });
  if (!lorder.empty() || !d->concl.lctx.empty()) {
    if (!rules.ex_linear) throw InternalError("linear permutation in a graded judgment");
    bubble(lnames(d->concl), lorder, [&](std::size_t p) {
      cur = make_deriv(sr, *rules.ex_linear, Params{}.at(p), {cur});
    });
  }
  return cur;
}

DerivP adjust(const DerivP& d, const Judgment& target) {
  if (d->concl.frag != target.frag || !type_eq(*d->concl.type, *target.type)) {
    throw CheckError("cannot adjust `" + std::string(target.frag == Frag::GS ? "GS" : "MS") +
                     "` judgment: fragment or type differs");
  }
  if (d->concl.gctx.size() != target.gctx.size() || d->concl.lctx.size() != target.lctx.size()) {
    throw CheckError("cannot adjust judgment: contexts have different sizes");
  }
  DerivP cur = permute_to(d, gnames(target), lnames(target));
  for (std::size_t i = 0; i < target.gctx.size(); ++i) {
    if (!type_eq(*cur->concl.gctx[i].type, *target.gctx[i].type)) {
      throw CheckError("cannot adjust judgment: '" + target.gctx[i].name + "' has a different type");
    }
  }
  for (std::size_t i = 0; i < target.lctx.size(); ++i) {
    if (!type_eq(*cur->concl.lctx[i].type, *target.lctx[i].type)) {
      throw CheckError("cannot adjust judgment: '" + target.lctx[i].name + "' has a different type");
    }
  }
  GradeVec want = grades_of(target.gctx);
  if (grades_of(cur->concl.gctx) != want) {
    StructuralRules rules = structural_rules(system_of(*cur), cur->concl.frag);
    cur = make_deriv(cur->semiring, rules.sub, Params{}.vector(want), {cur});
  }
  return cur;
}

DerivP contract(const DerivP& d, const std::string& keep, const std::string& drop) {
  auto order = move_after(gnames(d->concl), keep, drop);
  DerivP cur = permute_to(d, order, lnames(d->concl));
  StructuralRules rules = structural_rules(system_of(*cur), cur->concl.frag);
  return make_deriv(cur->semiring, rules.cont, Params{}.at(index_of(order, keep)), {cur});
}

DerivP weaken(const DerivP& d, const std::string& name, const TypeP& type) {
  StructuralRules rules = structural_rules(system_of(*d), d->concl.frag);
  return make_deriv(d->semiring, rules.weak, Params{}.at(d->concl.gctx.size()).named(name).typed(type), {d});
}

DerivP reapply(const Deriv& node, std::vector<DerivP> kids, std::optional<Grade> grade) {
  const RuleInfo& info = rule_info(node.rule);
  if (kids.size() != node.kids.size()) throw InternalError("reapply with a different number of premises");
  Params params = node.params;
  if (grade) params.grade = grade;
  if (info.pos_kid >= 0) {
    auto pk = static_cast<std::size_t>(info.pos_kid);
    const Judgment& old_kid = node.kids[pk]->concl;
    auto old_g = gnames(old_kid);
    auto old_l = lnames(old_kid);
    // First settle adjacency requirements, then read off positions.
    auto new_g = gnames(kids[pk]->concl);
    auto new_l = lnames(kids[pk]->concl);
    std::size_t pi = 0;
    for (Role role : info.roles) {
      if (role == Role::KidG2) {
        std::size_t p = node.params.pos[pi];
        new_g = move_after(new_g, old_g[p], old_g[p + 1]);
      } else if (role == Role::KidL2) {
        std::size_t p = node.params.pos[pi];
        new_l = move_after(new_l, old_l[p], old_l[p + 1]);
      }
      if (role == Role::InsG || role == Role::InsL || role == Role::KidG1 || role == Role::KidG2 ||
          role == Role::KidL1 || role == Role::KidL2) {
        ++pi;
      }
    }
    if (new_g != gnames(kids[pk]->concl) || new_l != lnames(kids[pk]->concl)) {
      kids[pk] = permute_to(kids[pk], new_g, new_l);
    }
    pi = 0;
    for (Role role : info.roles) {
      switch (role) {
        case Role::InsG:
          params.pos[pi] = insertion_point(old_g, node.params.pos[pi], new_g);
          ++pi;
          break;
        case Role::InsL:
          params.pos[pi] = insertion_point(old_l, node.params.pos[pi], new_l);
          ++pi;
          break;
        case Role::KidG1:
        case Role::KidG2:
          params.pos[pi] = index_of(new_g, old_g[node.params.pos[pi]]);
          ++pi;
          break;
        case Role::KidL1:
        case Role::KidL2:
          params.pos[pi] = index_of(new_l, old_l[node.params.pos[pi]]);
          ++pi;
          break;
        case Role::KidGList: {
          std::vector<std::size_t> occ;
          for (auto o : node.params.occ) occ.push_back(index_of(new_g, old_g[o]));
          std::sort(occ.begin(), occ.end());
          params.occ = occ;
          break;
        }
        default:
          break;
      }
    }
  }
  if (node.rule == Rule::LolliR || node.rule == Rule::LolliI) {
    const std::string& bound = node.kids[0]->concl.lctx.back().name;
    auto order = lnames(kids[0]->concl);
    if (order.empty() || order.back() != bound) {
      order.erase(order.begin() + static_cast<long>(index_of(order, bound)));
      order.push_back(bound);
      kids[0] = permute_to(kids[0], gnames(kids[0]->concl), order);
    }
  }
  return make_deriv(node.semiring, node.rule, std::move(params), std::move(kids));
}

Judgment cut_target(SemiringId sr, const Judgment& left, const Judgment& right,
                    const std::vector<std::string>& occ) {
  if (left.frag == Frag::MS) {
    if (occ.size() != 1) throw InternalError("a linear cut needs exactly one occurrence");
    auto at = find_l(right.lctx, occ[0]);
    if (!at) throw InternalError("linear occurrence '" + occ[0] + "' is not in the context");
    return conclude(sr, Rule::CutMS, Params{}.at(*at), {&left, &right});
  }
  std::vector<std::size_t> pos;
  for (const auto& o : occ) {
    auto at = find_g(right.gctx, o);
    if (!at) throw InternalError("graded occurrence '" + o + "' is not in the context");
    pos.push_back(*at);
  }
  std::sort(pos.begin(), pos.end());
  Rule rule = right.frag == Frag::GS ? Rule::Mcut : Rule::Gmcut;
  return conclude(sr, rule, Params{}.occurrences(pos), {&left, &right});
}

}  // namespace mgl
