#include "mgl/cut_elim.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "mgl/structural.hpp"

namespace mgl {

std::size_t rank(const Type& ty) {
  std::size_t m = 0;
  bool composite = false;
  if (ty.left) {
    m = std::max(m, rank(*ty.left));
    composite = true;
  }
  if (ty.right) {
    m = std::max(m, rank(*ty.right));
    composite = true;
  }
  return composite ? m + 1 : 0;
}

std::size_t depth(const Deriv& d) {
  std::size_t m = 0;
  for (const auto& k : d.kids) m = std::max(m, depth(*k) + 1);
  return m;
}

const Type& cut_formula(const Deriv& cut) {
  if (!is_cut_rule(cut.rule)) throw InternalError("cut_formula on a non-cut node");
  return *cut.kids[0]->concl.type;
}

std::size_t cut_rank(const Deriv& d) {
  std::size_t m = is_cut_rule(d.rule) ? rank(cut_formula(d)) + 1 : 0;
  for (const auto& k : d.kids) m = std::max(m, cut_rank(*k));
  return m;
}

bool is_cut_free(const Deriv& d) { return cut_rank(d) == 0 && !is_cut_rule(d.rule); }

std::string_view family_name(CaseFamily f) {
  switch (f) {
    case CaseFamily::Structural: return "structural";
    case CaseFamily::Axiom: return "axiom";
    case CaseFamily::SecondaryHypothesis: return "secondary-hypothesis";
    case CaseFamily::CommutingConversion: return "commuting-conversion";
    case CaseFamily::SecondaryConclusion: return "secondary-conclusion";
    case CaseFamily::Principal: return "principal";
  }
  return "?";
}

namespace {

// Mixed-fragment counterpart of a graded left or structural rule, used when a
// cut into a mixed sequent is pushed above it. Parameter layouts coincide.
Rule mixed_variant(Rule rule) {
  switch (rule) {
    case Rule::UnitJL: return Rule::UnitJLMS;
    case Rule::BoxtimesL: return Rule::BoxtimesLMS;
    case Rule::CutGS: return Rule::GcutMS;
    case Rule::Mcut: return Rule::Gmcut;
    case Rule::WeakGS: return Rule::WeakMS;
    case Rule::ContGS: return Rule::ContMS;
    case Rule::ExGS: return Rule::GexMS;
    default: return rule;
  }
}

DerivP eta_rec(SemiringId sr, const TypeP& ty, const std::string& name, NameSupply& names) {
  auto mk = [sr](Rule rule, Params p, std::vector<DerivP> kids) { return make_deriv(sr, rule, std::move(p), std::move(kids)); };
  switch (ty->kind) {
    case TypeKind::GAtom:
      return mk(Rule::IdGS, Params{}.named(name).typed(ty), {});
    case TypeKind::LAtom:
      return mk(Rule::IdMS, Params{}.named(name).typed(ty), {});
    case TypeKind::UnitJ:
      return mk(Rule::UnitJL, Params{}.at(0).named(name).graded(Grade::one(sr)), {mk(Rule::UnitJR, {}, {})});
    case TypeKind::UnitI:
      return mk(Rule::UnitIL, Params{}.at(0).named(name), {mk(Rule::UnitIR, {}, {})});
    case TypeKind::GTensor: {
      DerivP a = eta_rec(sr, ty->left, names.fresh(name), names);
      DerivP b = eta_rec(sr, ty->right, names.fresh(name), names);
      return mk(Rule::BoxtimesL, Params{}.at(0).named(name), {mk(Rule::BoxtimesR, {}, {a, b})});
    }
    case TypeKind::LTensor: {
      DerivP a = eta_rec(sr, ty->left, names.fresh(name), names);
      DerivP b = eta_rec(sr, ty->right, names.fresh(name), names);
      return mk(Rule::OtimesL, Params{}.at(0).named(name), {mk(Rule::OtimesR, {}, {a, b})});
    }
    case TypeKind::Lin: {
      DerivP a = eta_rec(sr, ty->left, names.fresh(name), names);
      return mk(Rule::LinR, {}, {mk(Rule::LinL, Params{}.at(0).at(0).named(name), {a})});
    }
    case TypeKind::Lolli: {
      DerivP a = eta_rec(sr, ty->left, names.fresh(name), names);
      DerivP b = eta_rec(sr, ty->right, names.fresh(name), names);
      return mk(Rule::LolliR, {}, {mk(Rule::LolliL, Params{}.at(0).named(name), {a, b})});
    }
    case TypeKind::Grd: {
      DerivP a = eta_rec(sr, ty->left, names.fresh(name), names);
      DerivP g = mk(Rule::GrdR, Params{}.graded(*ty->grade), {a});
      return mk(Rule::GrdL, Params{}.at(0).at(0).named(name), {g});
    }
  }
  throw InternalError("eta_expand: unknown formula");
}

bool is_right_rule(Rule rule) {
  switch (rule) {
    case Rule::UnitJR:
    case Rule::BoxtimesR:
    case Rule::LinR:
    case Rule::UnitIR:
    case Rule::OtimesR:
    case Rule::LolliR:
    case Rule::GrdR:
      return true;
    default:
      return false;
  }
}

// Names in the conclusion that no premise carries: those the root introduces.
std::vector<std::string> introduced(const Deriv& d) {
  std::set<std::string> below;
  for (const auto& k : d.kids) {
    for (const auto& n : ctx_names(k->concl)) below.insert(n);
  }
  std::vector<std::string> out;
  for (const auto& n : ctx_names(d.concl)) {
    if (!below.count(n)) out.push_back(n);
  }
  return out;
}

// Premise of a non-right rule proving the conclusion's formula.
std::size_t main_kid(const Deriv& d) {
  if (is_cut_rule(d.rule) || d.rule == Rule::LolliL) return 1;
  return 0;
}

bool contains(const std::vector<std::string>& v, const std::string& var) {
  return std::find(v.begin(), v.end(), var) != v.end();
}

class Reducer {
 public:
  Reducer(SemiringId sr, NameSupply& supply) : sr_(sr), supply_(supply) {}

  std::vector<CaseFamily> cases;
  std::string connective;

  // Result concludes cut_target(left, right, occ), contexts in that order.
  DerivP run(const DerivP& left, const DerivP& right, std::vector<std::string> occ, std::size_t bound) {
    std::size_t here = depth(*left) + depth(*right);
    if (here >= bound) {
      throw InternalError("cut reduction: premise depth did not decrease (" + std::to_string(here) +
                          " >= " + std::to_string(bound) + ")");
    }
    Judgment target = cut_target(sr_, left->concl, right->concl, occ);
    return adjust(step(left, right, std::move(occ), here), target);
  }

 private:
  DerivP mk(Rule rule, Params p, std::vector<DerivP> kids) { return make_deriv(sr_, rule, std::move(p), std::move(kids)); }

  void note(CaseFamily f) { cases.push_back(f); }

  DerivP fresh_copy(const DerivP& d, std::map<std::string, std::string>& m) {
    for (const auto& n : ctx_names(d->concl)) m.emplace(n, supply_.fresh(n));
    return rename_deriv(d, m, supply_);
  }

  std::set<std::string> all_names(const Deriv& d) {
    std::set<std::string> names;
    collect_deriv_names(d, names);
    return names;
  }

  // Pushes the cut into every premise of `node` that holds occurrences not
  // consumed by `node`, using renamed copies of `left` after the first.
  DerivP push_into_kids(const DerivP& left, const DerivP& node_in, const std::vector<std::string>& occ,
                        std::size_t here, std::vector<std::map<std::string, std::string>>& copies,
                        bool first_is_copy) {
    DerivP node = freshen_root(node_in, ctx_names(left->concl), supply_);
    std::vector<DerivP> kids = node->kids;
    bool first = !first_is_copy;
    for (std::size_t k = 0; k < kids.size(); ++k) {
      auto consumed = consumed_names(*node, k);
      std::vector<std::string> occ_here;
      auto kid_names = ctx_names(kids[k]->concl);
      for (const auto& o : occ) {
        if (!contains(consumed, o) && kid_names.count(o)) occ_here.push_back(o);
      }
      if (occ_here.empty()) continue;
      DerivP use = left;
      if (!first) {
        std::map<std::string, std::string> m;
        use = fresh_copy(left, m);
        copies.push_back(m);
      }
      first = false;
      kids[k] = run(use, kids[k], occ_here, here);
    }
    return reapply(*node, std::move(kids));
  }

  DerivP contract_copies(DerivP d, const std::vector<std::map<std::string, std::string>>& copies) {
    for (const auto& m : copies) {
      for (const auto& [orig, copy] : m) {
        if (find_g(d->concl.gctx, orig) && find_g(d->concl.gctx, copy)) d = contract(d, orig, copy);
      }
    }
    return d;
  }

  DerivP step(const DerivP& left, const DerivP& right, std::vector<std::string> occ, std::size_t here) {
    // Structural: nothing to discharge.
    if (occ.empty()) {
      note(CaseFamily::Structural);
      DerivP out = right;
      for (const auto& e : left->concl.gctx) out = weaken(out, e.name, e.type);
      return out;
    }
    // Axiom on the left: the occurrences become the identity's hypothesis.
    if (left->rule == Rule::IdGS || left->rule == Rule::IdMS) {
      note(CaseFamily::Axiom);
      const std::string& var = left->params.name;
      DerivP out = rename_deriv(right, {{occ[0], var}}, supply_);
      for (std::size_t i = 1; i < occ.size(); ++i) out = contract(out, var, occ[i]);
      return out;
    }
    // Axiom on the right.
    if ((right->rule == Rule::IdGS || right->rule == Rule::IdMS) && contains(occ, right->params.name)) {
      note(CaseFamily::Axiom);
      return left;
    }
    // Structural rules of the right premise acting on the occurrences.
    switch (right->rule) {
      case Rule::WeakGS:
      case Rule::WeakMS:
        if (contains(occ, right->params.name)) {
          note(CaseFamily::Structural);
          occ.erase(std::find(occ.begin(), occ.end(), right->params.name));
          return run(left, right->kids[0], occ, here);
        }
        break;
      case Rule::ContGS:
      case Rule::ContMS: {
        const auto& kid = right->kids[0]->concl;
        if (contains(occ, kid.gctx[right->params.pos[0]].name)) {
          note(CaseFamily::Structural);
          occ.push_back(kid.gctx[right->params.pos[0] + 1].name);
          return run(left, right->kids[0], occ, here);
        }
        break;
      }
      case Rule::ExGS:
      case Rule::GexMS:
      case Rule::ExMS:
      case Rule::SubGS:
      case Rule::SubMS:
        note(CaseFamily::Structural);
        return run(left, right->kids[0], occ, here);
      default:
        break;
    }

    auto intro = introduced(*right);
    bool principal_right = std::any_of(occ.begin(), occ.end(), [&](const std::string& o) { return contains(intro, o); });

    // Secondary hypothesis / commuting conversion: every occurrence is a side
    // formula of the right premise's last rule.
    if (!principal_right) {
      note(is_cut_rule(right->rule) ? CaseFamily::CommutingConversion : CaseFamily::SecondaryHypothesis);
      std::vector<std::map<std::string, std::string>> copies;
      DerivP out = push_into_kids(left, right, occ, here, copies, false);
      return contract_copies(out, copies);
    }

    // Secondary conclusion: the cut formula is not principal on the left.
    if (!is_right_rule(left->rule)) {
      note(CaseFamily::SecondaryConclusion);
      DerivP node = freshen_root(left, all_names(*right), supply_);
      std::size_t mk_i = main_kid(*node);
      if (is_sub_rule(node->rule) || node->rule == Rule::ExGS || node->rule == Rule::ExMS ||
          node->rule == Rule::GexMS) {
        return run(node->kids[0], right, occ, here);
      }
      std::vector<DerivP> kids = node->kids;
      kids[mk_i] = run(kids[mk_i], right, occ, here);
      if (kids[mk_i]->concl.frag != node->kids[mk_i]->concl.frag) {
        auto alt = std::make_shared<Deriv>(*node);
        alt->rule = mixed_variant(node->rule);
        node = alt;
      }
      std::optional<Grade> g;
      if ((node->rule == Rule::UnitJL || node->rule == Rule::UnitJLMS) && left->concl.frag == Frag::GS) {
        Grade scale = Grade::zero(sr_);
        for (const auto& o : occ) scale = scale + right->concl.gctx[*find_g(right->concl.gctx, o)].grade;
        g = scale * *node->params.grade;
      }
      return reapply(*node, std::move(kids), g);
    }

    // Principal formula against principal formula.
    note(CaseFamily::Principal);
    std::string o;
    for (const auto& n : occ) {
      if (contains(intro, n)) {
        o = n;
        break;
      }
    }
    std::vector<std::string> others;
    for (const auto& n : occ) {
      if (n != o) others.push_back(n);
    }
    std::vector<std::map<std::string, std::string>> copies;
    DerivP rnode = right;
    if (!others.empty()) {
      rnode = push_into_kids(left, right, others, here, copies, true);
    } else {
      rnode = freshen_root(right, ctx_names(left->concl), supply_);
    }
    DerivP lnode = freshen_root(left, all_names(*rnode), supply_);
    DerivP out = principal(lnode, rnode, o);
    return contract_copies(out, copies);
  }

  DerivP principal(const DerivP& left, const DerivP& right, const std::string& o) {
    const DerivP& p = right->kids[static_cast<std::size_t>(rule_info(right->rule).pos_kid)];
    const Judgment& pj = p->concl;
    const bool right_gs = right->concl.frag == Frag::GS;
    const Rule gcut = right_gs ? Rule::CutGS : Rule::GcutMS;
    auto gat = [&](const DerivP& d, const std::string& n) { return *find_g(d->concl.gctx, n); };
    auto lat = [&](const DerivP& d, const std::string& n) { return *find_l(d->concl.lctx, n); };
    switch (left->rule) {
      case Rule::UnitJR:
        connective = "J";
        return p;
      case Rule::UnitIR:
        connective = "I";
        return p;
      case Rule::BoxtimesR: {
        connective = "boxtimes";
        const std::string a = pj.gctx[right->params.pos[0]].name;
        const std::string b = pj.gctx[right->params.pos[0] + 1].name;
        DerivP inner = mk(gcut, Params{}.at(gat(p, b)), {left->kids[1], p});
        return mk(gcut, Params{}.at(gat(inner, a)), {left->kids[0], inner});
      }
      case Rule::OtimesR: {
        connective = "otimes";
        const std::string a = pj.lctx[right->params.pos[0]].name;
        const std::string b = pj.lctx[right->params.pos[0] + 1].name;
        DerivP inner = mk(Rule::CutMS, Params{}.at(lat(p, b)), {left->kids[1], p});
        return mk(Rule::CutMS, Params{}.at(lat(inner, a)), {left->kids[0], inner});
      }
      case Rule::LinR: {
        connective = "Lin";
        const std::string var = pj.lctx[right->params.pos[0]].name;
        return mk(Rule::CutMS, Params{}.at(lat(p, var)), {left->kids[0], p});
      }
      case Rule::GrdR: {
        connective = "Grd";
        const std::string var = pj.gctx[right->params.pos[0]].name;
        return mk(Rule::GcutMS, Params{}.at(gat(p, var)), {left->kids[0], p});
      }
      case Rule::LolliR: {
        connective = "lolli";
        const DerivP& arg = right->kids[0];
        const DerivP& cont = right->kids[1];
        const DerivP& body = left->kids[0];
        const std::string var = body->concl.lctx.back().name;
        const std::string var2 = cont->concl.lctx[right->params.pos[0]].name;
        DerivP applied = mk(Rule::CutMS, Params{}.at(lat(body, var)), {arg, body});
        return mk(Rule::CutMS, Params{}.at(lat(cont, var2)), {applied, cont});
      }
      default:
        throw InternalError("principal case on rule " + std::string(rule_info(left->rule).name) + " against " +
                            std::string(rule_info(right->rule).name) + " at '" + o + "'");
    }
  }

  SemiringId sr_;
  NameSupply& supply_;
};

std::vector<std::string> occurrences(const Deriv& cut) {
  const Judgment& rj = cut.kids[1]->concl;
  switch (cut.rule) {
    case Rule::CutGS:
    case Rule::GcutMS:
      return {rj.gctx[cut.params.pos[0]].name};
    case Rule::CutMS:
      return {rj.lctx[cut.params.pos[0]].name};
    default: {
      std::vector<std::string> out;
      for (auto k : cut.params.occ) out.push_back(rj.gctx[k].name);
      return out;
    }
  }
}

std::size_t count_cuts_of_rank(const Deriv& d, std::size_t formula_rank) {
  std::size_t n = is_cut_rule(d.rule) && rank(cut_formula(d)) == formula_rank ? 1 : 0;
  for (const auto& k : d.kids) n += count_cuts_of_rank(*k, formula_rank);
  return n;
}

// Post-order search: the first cut of the wanted rank has none below it.
bool find_topmost(const Deriv& d, std::size_t formula_rank, std::vector<std::size_t>& path) {
  for (std::size_t i = 0; i < d.kids.size(); ++i) {
    path.push_back(i);
    if (find_topmost(*d.kids[i], formula_rank, path)) return true;
    path.pop_back();
  }
  return is_cut_rule(d.rule) && rank(cut_formula(d)) == formula_rank;
}

DerivP replace_at(const DerivP& d, const std::vector<std::size_t>& path, std::size_t i, const DerivP& with) {
  if (i == path.size()) return with;
  std::vector<DerivP> kids = d->kids;
  kids[path[i]] = replace_at(kids[path[i]], path, i + 1, with);
  return make_deriv(d->semiring, d->rule, d->params, std::move(kids));
}

const DerivP& node_at(const DerivP& d, const std::vector<std::size_t>& path) {
  const DerivP* cur = &d;
  for (auto i : path) cur = &(*cur)->kids[i];
  return *cur;
}

std::string path_string(const std::vector<std::size_t>& path) {
  std::string text = "root";
  for (auto i : path) text += "/" + std::to_string(i);
  return text;
}

}  // namespace

DerivP eta_expand(SemiringId sr, const TypeP& ty, const std::string& name) {
  NameSupply names;
  names.reserve(name);
  return eta_rec(sr, ty, name, names);
}

DerivP reduce_cut(const DerivP& cut, TraceStep* step) {
  if (!is_cut_rule(cut->rule)) throw InternalError("reduce_cut on a non-cut node");
  const SemiringId sr = cut->semiring;
  NameSupply supply;
  std::set<std::string> names;
  collect_deriv_names(*cut, names);
  for (const auto& n : names) supply.reserve(n);

  DerivP left = cut->kids[0];
  DerivP right = cut->kids[1];
  std::vector<std::string> occ = occurrences(*cut);

  // The left context may reuse an occurrence's name; separate them first.
  std::map<std::string, std::string> back;
  {
    std::set<std::string> rn = ctx_names(right->concl);
    std::map<std::string, std::string> m;
    for (const auto& n : ctx_names(left->concl)) {
      if (rn.count(n)) {
        std::string f = supply.fresh(n);
        m.emplace(n, f);
        back.emplace(f, n);
      }
    }
    if (!m.empty()) left = rename_deriv(left, m, supply);
  }

  Reducer red(sr, supply);
  DerivP out;
  try {
    out = red.run(left, right, occ, std::numeric_limits<std::size_t>::max());
    if (!back.empty()) out = rename_deriv(out, back, supply);
    out = adjust(out, cut->concl);
  } catch (const CheckError& e) {
    throw InternalError(std::string("cut reduction produced an ill-formed step: ") + e.what());
  }
  const std::size_t r = rank(cut_formula(*cut));
  const std::size_t after = cut_rank(*out);
  if (after > r) {
    throw InternalError("cut reduction left cut rank " + std::to_string(after) + " above the formula rank " +
                        std::to_string(r));
  }
  if (step) {
    step->family = red.cases.empty() ? CaseFamily::Structural : red.cases.front();
    step->connective = red.connective;
    step->inner.assign(red.cases.begin() + (red.cases.empty() ? 0 : 1), red.cases.end());
    step->formula_rank = r;
    step->premise_depth = depth(*cut->kids[0]) + depth(*cut->kids[1]);
    step->local_cut_rank_after = after;
  }
  return out;
}

Normalized eliminate_cuts(const DerivP& d) {
  Normalized out{d, {}};
  for (;;) {
    std::size_t cr = cut_rank(*out.deriv);
    if (cr == 0) break;
    std::vector<std::size_t> path;
    if (!find_topmost(*out.deriv, cr - 1, path)) throw InternalError("no cut of maximal rank found");
    const DerivP& cut = node_at(out.deriv, path);
    TraceStep step;
    step.position = path_string(path);
    step.cut_rank_before = cr;
    step.max_rank_cuts_before = count_cuts_of_rank(*out.deriv, cr - 1);
    DerivP reduced = reduce_cut(cut, &step);
    DerivP next;
    try {
      next = replace_at(out.deriv, path, 0, reduced);
    } catch (const CheckError& e) {
      throw InternalError(std::string("reduced cut does not fit its context: ") + e.what());
    }
    step.cut_rank_after = cut_rank(*next);
    step.max_rank_cuts_after = count_cuts_of_rank(*next, cr - 1);
    if (step.cut_rank_after > cr ||
        (step.cut_rank_after == cr && step.max_rank_cuts_after >= step.max_rank_cuts_before)) {
      throw InternalError("cut elimination measure did not decrease at " + step.position);
    }
    out.deriv = next;
    out.trace.push_back(std::move(step));
  }
  if (!same_sequent(out.deriv->concl, d->concl)) throw InternalError("cut elimination changed the sequent");
  return out;
}

std::vector<TypeP> subformulas(const TypeP& ty) {
  std::vector<TypeP> out;
  std::function<void(const TypeP&)> go = [&](const TypeP& node) {
    for (const auto& seen : out) {
      if (type_eq(*seen, *node)) return;
    }
    out.push_back(node);
    if (node->left) go(node->left);
    if (node->right) go(node->right);
  };
  go(ty);
  return out;
}

bool check_subformula(const Deriv& d) {
  if (!is_cut_free(d)) return false;
  std::vector<TypeP> sf;
  auto add = [&](const TypeP& ty) {
    for (const auto& sub : subformulas(ty)) {
      if (std::none_of(sf.begin(), sf.end(), [&](const TypeP& seen) { return type_eq(*seen, *sub); })) sf.push_back(sub);
    }
  };
  add(d.concl.type);
  for (const auto& e : d.concl.gctx) add(e.type);
  for (const auto& e : d.concl.lctx) add(e.type);
  auto in_sf = [&](const TypeP& ty) {
    return std::any_of(sf.begin(), sf.end(), [&](const TypeP& seen) { return type_eq(*seen, *ty); });
  };
  std::function<bool(const Deriv&)> ok = [&](const Deriv& n) {
    if (!in_sf(n.concl.type)) return false;
    for (const auto& e : n.concl.gctx) {
      if (!in_sf(e.type)) return false;
    }
    for (const auto& e : n.concl.lctx) {
      if (!in_sf(e.type)) return false;
    }
    return std::all_of(n.kids.begin(), n.kids.end(), [&](const DerivP& k) { return ok(*k); });
  };
  return ok(d);
}

}  // namespace mgl
