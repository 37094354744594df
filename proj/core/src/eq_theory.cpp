#include "mgl/eq_theory.hpp"

#include <functional>
#include <map>

#include "mgl/cut_elim.hpp"
#include "mgl/structural.hpp"

namespace mgl {

namespace {

[[noreturn]] void mismatch(std::string_view rule, const std::string& why) {
  throw CheckError(std::string(rule) + ": " + why);
}

bool is_cont(Rule rule) { return rule == Rule::ContGS || rule == Rule::ContMS; }
bool is_weak(Rule rule) { return rule == Rule::WeakGS || rule == Rule::WeakMS; }
bool is_sc_sub(Rule rule) { return rule == Rule::SubGS || rule == Rule::SubMS; }

DerivP mk(const Deriv& like, Rule rule, Params p, std::vector<DerivP> kids) {
  return make_deriv(like.semiring, rule, std::move(p), std::move(kids));
}

const DerivP& only_kid(const DerivP& d) { return d->kids.at(0); }

DerivP contr_unit_left(const DerivP& d) {
  if (!is_cont(d->rule) || !is_weak(only_kid(d)->rule)) mismatch("contr-unitL", "expects contraction over weakening");
  const DerivP& w = only_kid(d);
  std::size_t k = d->params.pos[0];
  if (w->params.pos[0] != k) mismatch("contr-unitL", "weakening must insert the kept hypothesis");
  const DerivP& p = only_kid(w);
  const std::string y1 = w->concl.gctx[k].name;
  const std::string y2 = w->concl.gctx[k + 1].name;
  NameSupply supply;
  return rename_deriv(p, {{y2, y1}}, supply);
}

DerivP contr_unit_right(const DerivP& d) {
  if (!is_cont(d->rule) || !is_weak(only_kid(d)->rule)) mismatch("contr-unitR", "expects contraction over weakening");
  const DerivP& w = only_kid(d);
  if (w->params.pos[0] != d->params.pos[0] + 1) mismatch("contr-unitR", "weakening must insert the dropped hypothesis");
  return only_kid(w);
}

DerivP contr_sym(const DerivP& d) {
  if (!is_cont(d->rule)) mismatch("contr-sym", "expects a contraction");
  StructuralRules structural = structural_rules(System::SC, d->concl.frag);
  std::size_t k = d->params.pos[0];
  const DerivP& p = only_kid(d);
  const std::string y1 = p->concl.gctx[k].name;
  const std::string y2 = p->concl.gctx[k + 1].name;
  DerivP swapped = mk(*d, structural.ex_graded, Params{}.at(k), {p});
  DerivP c = mk(*d, d->rule, Params{}.at(k), {swapped});
  NameSupply supply;
  return rename_deriv(c, {{y2, y1}}, supply);
}

DerivP contr_assoc(const DerivP& d) {
  if (!is_cont(d->rule) || !is_cont(only_kid(d)->rule)) mismatch("contr-assoc", "expects two contractions");
  std::size_t k = d->params.pos[0];
  if (only_kid(d)->params.pos[0] != k) mismatch("contr-assoc", "both contractions must act at one position");
  const DerivP& p = only_kid(only_kid(d));
  DerivP inner = mk(*d, d->rule, Params{}.at(k + 1), {p});
  return mk(*d, d->rule, Params{}.at(k), {inner});
}

DerivP ex_ex(const DerivP& d, std::string_view name, std::vector<Rule> rules) {
  auto ok = [&](Rule rule) { return std::find(rules.begin(), rules.end(), rule) != rules.end(); };
  if (!ok(d->rule) || only_kid(d)->rule != d->rule) mismatch(name, "expects two equal exchanges");
  if (only_kid(d)->params.pos != d->params.pos) mismatch(name, "exchanges must act at one position");
  return only_kid(only_kid(d));
}

DerivP sub_refl(const DerivP& d) {
  if (!is_sc_sub(d->rule)) mismatch("sub-refl", "expects an approximation");
  if (grades_of(only_kid(d)->concl.gctx) != d->params.vec) mismatch("sub-refl", "grades are raised");
  return only_kid(d);
}

DerivP sub_trans(const DerivP& d) {
  if (!is_sc_sub(d->rule) || only_kid(d)->rule != d->rule) mismatch("sub-trans", "expects two approximations");
  return mk(*d, d->rule, Params{}.vector(d->params.vec), {only_kid(only_kid(d))});
}

DerivP contr_mono(const DerivP& d) {
  if (!is_cont(d->rule) || !is_sc_sub(only_kid(d)->rule)) mismatch("contr-mono", "expects contraction over approximation");
  const DerivP& p = only_kid(only_kid(d));
  DerivP c = mk(*d, d->rule, d->params, {p});
  return mk(*d, only_kid(d)->rule, Params{}.vector(grades_of(d->concl.gctx)), {c});
}

DerivP sub_unit_left(const DerivP& d) {
  if (!is_sc_sub(d->rule)) mismatch("sub-unitL", "expects an approximation");
  const DerivP& use = only_kid(d);
  if (use->rule != Rule::UnitJL && use->rule != Rule::UnitJLMS) mismatch("sub-unitL", "expects unitJ left under it");
  std::size_t at = use->params.pos[0];
  GradeVec inner = d->params.vec;
  Grade raised = inner[at];
  inner.erase(inner.begin() + static_cast<long>(at));
  DerivP p = only_kid(use);
  if (grades_of(p->concl.gctx) != inner) p = mk(*d, d->rule, Params{}.vector(inner), {p});
  Params params = use->params;
  params.grade = raised;
  return mk(*d, use->rule, params, {p});
}

DerivP sub_tensor_left(const DerivP& d) {
  if (!is_sc_sub(d->rule)) mismatch("sub-tensorL", "expects an approximation");
  const DerivP& b = only_kid(d);
  if (b->rule != Rule::BoxtimesL && b->rule != Rule::BoxtimesLMS) mismatch("sub-tensorL", "expects a pair left rule under it");
  std::size_t at = b->params.pos[0];
  GradeVec inner = d->params.vec;
  inner.insert(inner.begin() + static_cast<long>(at), inner[at]);
  DerivP p = mk(*d, d->rule, Params{}.vector(inner), {only_kid(b)});
  return mk(*d, b->rule, b->params, {p});
}

DerivP mult_mono(const DerivP& d) {
  if (!is_cut_rule(d->rule)) mismatch("mult-mono", "expects a cut");
  std::vector<DerivP> kids = d->kids;
  bool any = false;
  for (auto& k : kids) {
    if (is_sc_sub(k->rule)) {
      k = only_kid(k);
      any = true;
    }
  }
  if (!any) mismatch("mult-mono", "no premise is an approximation");
  DerivP c = mk(*d, d->rule, d->params, std::move(kids));
  StructuralRules structural = structural_rules(System::SC, d->concl.frag);
  return mk(*d, structural.sub, Params{}.vector(grades_of(d->concl.gctx)), {c});
}

bool commutes_with_sub(Rule rule) {
  switch (rule) {
    case Rule::LinR:
    case Rule::LolliR:
    case Rule::UnitIL:
    case Rule::OtimesL:
    case Rule::LinL:
    case Rule::GrdL:
    case Rule::UnitJL:
    case Rule::UnitJLMS:
    case Rule::BoxtimesL:
    case Rule::BoxtimesLMS:
    case Rule::WeakGS:
    case Rule::WeakMS:
    case Rule::ExGS:
    case Rule::ExMS:
    case Rule::GexMS:
      return true;
    default:
      return false;
  }
}

DerivP sub_comm_conv(const DerivP& d) {
  if (!is_sc_sub(d->rule)) mismatch("sub-comm-conv", "expects an approximation");
  const DerivP& phi = only_kid(d);
  if (!commutes_with_sub(phi->rule)) {
    mismatch("sub-comm-conv", std::string("does not commute with ") + std::string(rule_info(phi->rule).name));
  }
  const DerivP& p = only_kid(phi);
  std::map<std::string, Grade> want;
  for (std::size_t i = 0; i < phi->concl.gctx.size(); ++i) want.emplace(phi->concl.gctx[i].name, d->params.vec[i]);
  std::set<std::string> below;
  for (const auto& e : p->concl.gctx) below.insert(e.name);
  for (std::size_t i = 0; i < phi->concl.gctx.size(); ++i) {
    const auto& e = phi->concl.gctx[i];
    if (!below.count(e.name) && d->params.vec[i] != e.grade) {
      mismatch("sub-comm-conv", "introduced hypothesis '" + e.name + "' is raised");
    }
  }
  GradeVec inner;
  for (const auto& e : p->concl.gctx) {
    auto it = want.find(e.name);
    inner.push_back(it == want.end() ? e.grade : it->second);
  }
  StructuralRules structural = structural_rules(System::SC, p->concl.frag);
  DerivP raised = mk(*d, structural.sub, Params{}.vector(inner), {p});
  return mk(*d, phi->rule, phi->params, {raised});
}

using Rewrite = std::function<DerivP(const DerivP&)>;

const std::vector<std::pair<std::string, Rewrite>>& rewrites() {
  static const std::vector<std::pair<std::string, Rewrite>> table = {
      {"contr-sym", contr_sym},
      {"contr-unitL", contr_unit_left},
      {"contr-unitR", contr_unit_right},
      {"contr-assoc", contr_assoc},
      {"ex-ex", [](const DerivP& d) { return ex_ex(d, "ex-ex", {Rule::ExGS, Rule::ExMS}); }},
      {"sub-refl", sub_refl},
      {"sub-trans", sub_trans},
      {"contr-mono", contr_mono},
      {"sub-unitL", sub_unit_left},
      {"sub-tensorL", sub_tensor_left},
      {"mult-mono", mult_mono},
      {"sub-comm-conv", sub_comm_conv},
      {"gex-gex", [](const DerivP& d) { return ex_ex(d, "gex-gex", {Rule::GexMS}); }},
  };
  return table;
}

DerivP rewrite_at(const DerivP& d, const DerivPath& at, std::size_t i, const Rewrite& f) {
  if (i == at.size()) return f(d);
  if (at[i] >= d->kids.size()) throw CheckError("no child " + std::to_string(at[i]), print_path(DerivPath(at.begin(), at.begin() + static_cast<long>(i))));
  std::vector<DerivP> kids = d->kids;
  kids[at[i]] = rewrite_at(kids[at[i]], at, i + 1, f);
  return make_deriv(d->semiring, d->rule, d->params, std::move(kids));
}

void all_paths(const Deriv& d, DerivPath& cur, std::vector<DerivPath>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < d.kids.size(); ++i) {
    cur.push_back(i);
    all_paths(*d.kids[i], cur, out);
    cur.pop_back();
  }
}

}  // namespace

DerivPath parse_path(std::string_view text) {
  DerivPath out;
  if (text.substr(0, 4) == "root") text.remove_prefix(4);
  while (!text.empty()) {
    if (text.front() == '/') text.remove_prefix(1);
    std::size_t n = 0;
    std::size_t used = 0;
    while (used < text.size() && text[used] >= '0' && text[used] <= '9') n = n * 10 + static_cast<std::size_t>(text[used++] - '0');
    if (used == 0) throw CheckError("malformed position '" + std::string(text) + "'");
    out.push_back(n);
    text.remove_prefix(used);
  }
  return out;
}

std::string print_path(const DerivPath& p) {
  std::string text = "root";
  for (auto i : p) text += "/" + std::to_string(i);
  return text;
}

const std::vector<std::string>& eq_rule_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : rewrites()) out.push_back(n);
    return out;
  }();
  return names;
}

DerivP apply_eq_rule(std::string_view name, const DerivP& d, const DerivPath& at) {
  if (system_of(*d) != System::SC) throw CheckError("equational rewrites apply to sequent-calculus derivations");
  const Rewrite* f = nullptr;
  for (const auto& [n, g] : rewrites()) {
    if (n == name) f = &g;
  }
  if (!f) throw CheckError("unknown equation '" + std::string(name) + "'");
  DerivP out;
  try {
    out = rewrite_at(d, at, 0, *f);
  } catch (const CheckError& e) {
    throw CheckError(e.bare_message(), print_path(at));
  }
  if (!same_sequent(out->concl, d->concl) || !alpha_eq(*out->concl.term, *d->concl.term)) {
    throw InternalError("equation " + std::string(name) + " changed the conclusion at " + print_path(at));
  }
  return out;
}

std::vector<DerivPath> eq_rule_matches(std::string_view name, const DerivP& d) {
  std::vector<DerivPath> paths, out;
  DerivPath cur;
  all_paths(*d, cur, paths);
  for (const auto& p : paths) {
    try {
      apply_eq_rule(name, d, p);
      out.push_back(p);
    } catch (const CheckError&) {
    }
  }
  return out;
}

Equiv equiv_oracle(const DerivP& a, const DerivP& b) {
  if (!same_sequent(a->concl, b->concl)) throw CheckError("derivations conclude different sequents");
  DerivP na = eliminate_cuts(a).deriv;
  DerivP nb = eliminate_cuts(b).deriv;
  return alpha_eq(*na->concl.term, *nb->concl.term) ? Equiv::Equal : Equiv::Unknown;
}

}  // namespace mgl
