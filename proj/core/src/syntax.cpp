#include "mgl/syntax.hpp"

#include <algorithm>

namespace mgl {

namespace {

TypeP make_type(TypeKind k, std::string name, std::optional<Grade> g, TypeP lhs, TypeP rhs) {
  return std::make_shared<const Type>(Type{k, std::move(name), std::move(g), std::move(lhs), std::move(rhs)});
}

TermP make_term(TermKind k, std::string var, std::string var2, TypeP ann, std::optional<Grade> g,
                TermP a, TermP b) {
  return std::make_shared<const Term>(
      Term{k, std::move(var), std::move(var2), std::move(ann), std::move(g), std::move(a), std::move(b)});
}

void fv(const Term& term, std::multiset<std::string>& bound, std::set<std::string>& out) {
  auto under = [&](const TermP& body, std::initializer_list<const std::string*> binders) {
    for (auto* b : binders) bound.insert(*b);
    fv(*body, bound, out);
    for (auto* b : binders) bound.erase(bound.find(*b));
  };
  switch (term.kind) {
    case TermKind::Var:
      if (!bound.count(term.name)) out.insert(term.name);
      return;
    case TermKind::UnitJ:
    case TermKind::UnitI:
      return;
    case TermKind::Pair:
    case TermKind::App:
    case TermKind::LetUnitJ:
    case TermKind::LetUnitI:
      fv(*term.a, bound, out);
      fv(*term.b, bound, out);
      return;
    case TermKind::Lin:
    case TermKind::Grd:
    case TermKind::Unlin:
      fv(*term.a, bound, out);
      return;
    case TermKind::Lam:
      under(term.a, {&term.name});
      return;
    case TermKind::LetPair:
      fv(*term.a, bound, out);
      under(term.b, {&term.name, &term.name2});
      return;
    case TermKind::LetGrd:
      fv(*term.a, bound, out);
      under(term.b, {&term.name});
      return;
  }
}

using Env = std::vector<std::pair<std::string, std::string>>;

// Index of the innermost binder for name on the given side, counted from the top.
std::optional<std::size_t> lookup(const Env& env, const std::string& name, bool left) {
  for (std::size_t i = env.size(); i-- > 0;) {
    if ((left ? env[i].first : env[i].second) == name) return i;
  }
  return std::nullopt;
}

bool ann_eq(const TypeP& a, const TypeP& b) {
  if (!a || !b) return true;
  return type_eq(*a, *b);
}

bool alpha(const Term& a, const Term& b, Env& env) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TermKind::Var: {
      auto ia = lookup(env, a.name, true);
      auto ib = lookup(env, b.name, false);
      if (ia || ib) return ia == ib;
      return a.name == b.name;
    }
    case TermKind::UnitJ:
    case TermKind::UnitI:
      return true;
    case TermKind::Pair:
    case TermKind::App:
    case TermKind::LetUnitJ:
    case TermKind::LetUnitI:
      return alpha(*a.a, *b.a, env) && alpha(*a.b, *b.b, env);
    case TermKind::Lin:
    case TermKind::Unlin:
      return alpha(*a.a, *b.a, env);
    case TermKind::Grd:
      return *a.grade == *b.grade && alpha(*a.a, *b.a, env);
    case TermKind::Lam: {
      if (!ann_eq(a.ann, b.ann)) return false;
      env.emplace_back(a.name, b.name);
      bool ok = alpha(*a.a, *b.a, env);
      env.pop_back();
      return ok;
    }
    case TermKind::LetPair: {
      if (!alpha(*a.a, *b.a, env)) return false;
      env.emplace_back(a.name, b.name);
      env.emplace_back(a.name2, b.name2);
      bool ok = alpha(*a.b, *b.b, env);
      env.pop_back();
      env.pop_back();
      return ok;
    }
    case TermKind::LetGrd: {
      if (*a.grade != *b.grade || !alpha(*a.a, *b.a, env)) return false;
      env.emplace_back(a.name, b.name);
      bool ok = alpha(*a.b, *b.b, env);
      env.pop_back();
      return ok;
    }
  }
  return false;
}

std::string fresh_avoiding(const std::string& base, const std::set<std::string>& avoid) {
  NameSupply supply(avoid);
  return supply.fresh(base);
}

TermP subst_rec(const TermP& term, const std::map<std::string, TermP>& sigma);

// Rebuilds a binder scope. Drops shadowed entries and renames binders that
// would capture a free variable of a substituted term.
TermP subst_under(const TermP& body, std::vector<std::string>& binders,
                  const std::map<std::string, TermP>& sigma) {
  std::map<std::string, TermP> inner = sigma;
  for (const auto& b : binders) inner.erase(b);
  if (inner.empty()) return body;
  auto body_fv = free_vars(*body);
  std::set<std::string> range_fv;
  bool any = false;
  for (const auto& [k, v] : inner) {
    if (!body_fv.count(k)) continue;
    any = true;
    auto f = free_vars(*v);
    range_fv.insert(f.begin(), f.end());
  }
  if (!any) return body;
  std::set<std::string> avoid = range_fv;
  avoid.insert(body_fv.begin(), body_fv.end());
  for (const auto& [k, v] : inner) avoid.insert(k);
  for (const auto& b : binders) avoid.insert(b);
  for (auto& b : binders) {
    if (range_fv.count(b)) {
      std::string nb = fresh_avoiding(b, avoid);
      avoid.insert(nb);
      inner[b] = var(nb);
      b = nb;
    }
  }
  return subst_rec(body, inner);
}

TermP subst_rec(const TermP& term, const std::map<std::string, TermP>& sigma) {
  switch (term->kind) {
    case TermKind::Var: {
      auto it = sigma.find(term->name);
      return it == sigma.end() ? term : it->second;
    }
    case TermKind::UnitJ:
    case TermKind::UnitI:
      return term;
    case TermKind::Pair:
    case TermKind::App:
    case TermKind::LetUnitJ:
    case TermKind::LetUnitI:
      return make_term(term->kind, "", "", nullptr, std::nullopt, subst_rec(term->a, sigma),
                       subst_rec(term->b, sigma));
    case TermKind::Lin:
    case TermKind::Unlin:
    case TermKind::Grd:
      return make_term(term->kind, "", "", nullptr, term->grade, subst_rec(term->a, sigma), nullptr);
    case TermKind::Lam: {
      std::vector<std::string> bs{term->name};
      auto body = subst_under(term->a, bs, sigma);
      return lam(bs[0], term->ann, body);
    }
    case TermKind::LetPair: {
      auto scrut = subst_rec(term->a, sigma);
      std::vector<std::string> bs{term->name, term->name2};
      auto body = subst_under(term->b, bs, sigma);
      return let_pair(bs[0], bs[1], scrut, body);
    }
    case TermKind::LetGrd: {
      auto scrut = subst_rec(term->a, sigma);
      std::vector<std::string> bs{term->name};
      auto body = subst_under(term->b, bs, sigma);
      return let_grd(*term->grade, bs[0], scrut, body);
    }
  }
  return term;
}

}  // namespace

TypeP g_atom(std::string name) { return make_type(TypeKind::GAtom, std::move(name), std::nullopt, nullptr, nullptr); }
TypeP unit_j() { return make_type(TypeKind::UnitJ, "", std::nullopt, nullptr, nullptr); }
TypeP g_tensor(TypeP a, TypeP b) { return make_type(TypeKind::GTensor, "", std::nullopt, std::move(a), std::move(b)); }
TypeP lin_type(TypeP a) { return make_type(TypeKind::Lin, "", std::nullopt, std::move(a), nullptr); }
TypeP l_atom(std::string name) { return make_type(TypeKind::LAtom, std::move(name), std::nullopt, nullptr, nullptr); }
TypeP unit_i() { return make_type(TypeKind::UnitI, "", std::nullopt, nullptr, nullptr); }
TypeP l_tensor(TypeP a, TypeP b) { return make_type(TypeKind::LTensor, "", std::nullopt, std::move(a), std::move(b)); }
TypeP lolli(TypeP a, TypeP b) { return make_type(TypeKind::Lolli, "", std::nullopt, std::move(a), std::move(b)); }
TypeP grd_type(Grade grade, TypeP body) { return make_type(TypeKind::Grd, "", std::move(grade), std::move(body), nullptr); }

bool is_graded_type(const Type& ty) {
  switch (ty.kind) {
    case TypeKind::GAtom:
    case TypeKind::UnitJ:
    case TypeKind::GTensor:
    case TypeKind::Lin:
      return true;
    default:
      return false;
  }
}

bool type_eq(const Type& a, const Type& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TypeKind::GAtom:
    case TypeKind::LAtom:
      return a.name == b.name;
    case TypeKind::UnitJ:
    case TypeKind::UnitI:
      return true;
    case TypeKind::Lin:
      return type_eq(*a.left, *b.left);
    case TypeKind::Grd:
      return *a.grade == *b.grade && type_eq(*a.left, *b.left);
    default:
      return type_eq(*a.left, *b.left) && type_eq(*a.right, *b.right);
  }
}

TermP var(std::string var) { return make_term(TermKind::Var, std::move(var), "", nullptr, std::nullopt, nullptr, nullptr); }
TermP unit_j_term() { return make_term(TermKind::UnitJ, "", "", nullptr, std::nullopt, nullptr, nullptr); }
TermP unit_i_term() { return make_term(TermKind::UnitI, "", "", nullptr, std::nullopt, nullptr, nullptr); }
TermP pair(TermP a, TermP b) { return make_term(TermKind::Pair, "", "", nullptr, std::nullopt, std::move(a), std::move(b)); }
TermP let_unit_j(TermP scrut, TermP body) { return make_term(TermKind::LetUnitJ, "", "", nullptr, std::nullopt, std::move(scrut), std::move(body)); }
TermP let_unit_i(TermP scrut, TermP body) { return make_term(TermKind::LetUnitI, "", "", nullptr, std::nullopt, std::move(scrut), std::move(body)); }
TermP let_pair(std::string var, std::string var2, TermP scrut, TermP body) {
  return make_term(TermKind::LetPair, std::move(var), std::move(var2), nullptr, std::nullopt, std::move(scrut), std::move(body));
}
TermP lin_term(TermP a) { return make_term(TermKind::Lin, "", "", nullptr, std::nullopt, std::move(a), nullptr); }
TermP lam(std::string var, TypeP ann, TermP body) {
  return make_term(TermKind::Lam, std::move(var), "", std::move(ann), std::nullopt, std::move(body), nullptr);
}
TermP app(TermP f, TermP arg) { return make_term(TermKind::App, "", "", nullptr, std::nullopt, std::move(f), std::move(arg)); }
TermP grd_term(Grade grade, TermP a) { return make_term(TermKind::Grd, "", "", nullptr, std::move(grade), std::move(a), nullptr); }
TermP let_grd(Grade grade, std::string var, TermP scrut, TermP body) {
  return make_term(TermKind::LetGrd, std::move(var), "", nullptr, std::move(grade), std::move(scrut), std::move(body));
}
TermP unlin(TermP a) { return make_term(TermKind::Unlin, "", "", nullptr, std::nullopt, std::move(a), nullptr); }

std::set<std::string> free_vars(const Term& term) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  fv(term, bound, out);
  return out;
}

void collect_names(const Term& term, std::set<std::string>& out) {
  if (!term.name.empty()) out.insert(term.name);
  if (!term.name2.empty()) out.insert(term.name2);
  if (term.a) collect_names(*term.a, out);
  if (term.b) collect_names(*term.b, out);
}

bool alpha_eq(const Term& a, const Term& b) {
  Env env;
  return alpha(a, b, env);
}

bool term_identical(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.name != b.name || a.name2 != b.name2) return false;
  if (a.grade.has_value() != b.grade.has_value()) return false;
  if (a.grade && *a.grade != *b.grade) return false;
  if (static_cast<bool>(a.ann) != static_cast<bool>(b.ann)) return false;
  if (a.ann && !type_eq(*a.ann, *b.ann)) return false;
  if (static_cast<bool>(a.a) != static_cast<bool>(b.a)) return false;
  if (a.a && !term_identical(*a.a, *b.a)) return false;
  if (static_cast<bool>(a.b) != static_cast<bool>(b.b)) return false;
  if (a.b && !term_identical(*a.b, *b.b)) return false;
  return true;
}

TermP subst_map(const TermP& body, const std::map<std::string, TermP>& sigma) {
  if (sigma.empty()) return body;
  return subst_rec(body, sigma);
}

TermP subst(const TermP& body, const std::string& v, const TermP& arg) {
  return subst_map(body, {{v, arg}});
}

TermP multi_subst(const TermP& body, const std::vector<std::string>& vars, const TermP& arg) {
  std::map<std::string, TermP> sigma;
  for (const auto& v : vars) sigma[v] = arg;
  return subst_map(body, sigma);
}

std::string NameSupply::fresh(std::string_view base) {
  std::string stem(base);
  // Strip a previous counter suffix so repeated freshening stays short.
  auto us = stem.rfind('_');
  if (us != std::string::npos && us + 1 < stem.size() && us > 0 &&
      std::all_of(stem.begin() + static_cast<long>(us) + 1, stem.end(),
                  [](char c) { return c >= '0' && c <= '9'; })) {
    stem.resize(us);
  }
  if (stem.empty()) stem = "v";
  unsigned& n = next_[stem];
  for (;;) {
    std::string cand = stem + "_" + std::to_string(++n);
    if (!used_.count(cand)) {
      used_.insert(cand);
      return cand;
    }
  }
}

GradeVec grades_of(const GCtx& ctx) {
  GradeVec out;
  out.reserve(ctx.size());
  for (const auto& e : ctx) out.push_back(e.grade);
  return out;
}

bool gentry_eq(const GEntry& a, const GEntry& b) {
  return a.name == b.name && a.grade == b.grade && type_eq(*a.type, *b.type);
}

bool lentry_eq(const LEntry& a, const LEntry& b) { return a.name == b.name && type_eq(*a.type, *b.type); }

bool same_sequent(const Judgment& a, const Judgment& b) {
  if (a.frag != b.frag || a.gctx.size() != b.gctx.size() || a.lctx.size() != b.lctx.size()) return false;
  for (std::size_t i = 0; i < a.gctx.size(); ++i) {
    if (!gentry_eq(a.gctx[i], b.gctx[i])) return false;
  }
  for (std::size_t i = 0; i < a.lctx.size(); ++i) {
    if (!lentry_eq(a.lctx[i], b.lctx[i])) return false;
  }
  return type_eq(*a.type, *b.type);
}

bool judgment_eq(const Judgment& a, const Judgment& b) {
  return same_sequent(a, b) && alpha_eq(*a.term, *b.term);
}

std::optional<std::size_t> find_g(const GCtx& ctx, const std::string& name) {
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (ctx[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> find_l(const LCtx& ctx, const std::string& name) {
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (ctx[i].name == name) return i;
  }
  return std::nullopt;
}

std::set<std::string> ctx_names(const Judgment& j) {
  std::set<std::string> out;
  for (const auto& e : j.gctx) out.insert(e.name);
  for (const auto& e : j.lctx) out.insert(e.name);
  return out;
}

}  // namespace mgl
