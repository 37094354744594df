#include "mgl/deriv.hpp"

#include <algorithm>
#include <map>

namespace mgl {

namespace {

using enum Role;
constexpr Frag G = Frag::GS;
constexpr Frag M = Frag::MS;

const std::vector<RuleInfo>& table() {
  static const std::vector<RuleInfo> rules = {
      {Rule::IdGS, "id_GS", System::SC, G, {}, {Name, TypeArg}, -1},
      {Rule::UnitJR, "unitJ_R", System::SC, G, {}, {}, -1},
      {Rule::UnitJL, "unitJ_L", System::SC, G, {G}, {InsG, Name, GradeArg}, 0},
      {Rule::BoxtimesR, "boxtimes_R", System::SC, G, {G, G}, {}, -1},
      {Rule::BoxtimesL, "boxtimes_L", System::SC, G, {G}, {KidG2, Name}, 0},
      {Rule::LinR, "Lin_R", System::SC, G, {M}, {}, -1},
      {Rule::CutGS, "cut_GS", System::SC, G, {G, G}, {KidG1}, 1},
      {Rule::WeakGS, "weak_GS", System::SC, G, {G}, {InsG, Name, TypeArg}, 0},
      {Rule::ContGS, "cont_GS", System::SC, G, {G}, {KidG2}, 0},
      {Rule::ExGS, "ex_GS", System::SC, G, {G}, {KidG2}, 0},
      {Rule::SubGS, "sub_GS", System::SC, G, {G}, {GradeVecArg}, 0},
      {Rule::Mcut, "mcut", System::SC, G, {G, G}, {KidGList}, 1},
      {Rule::IdMS, "id_MS", System::SC, M, {}, {Name, TypeArg}, -1},
      {Rule::UnitIR, "unitI_R", System::SC, M, {}, {}, -1},
      {Rule::UnitIL, "unitI_L", System::SC, M, {M}, {InsL, Name}, 0},
      {Rule::LolliR, "lolli_R", System::SC, M, {M}, {}, -1},
      {Rule::LolliL, "lolli_L", System::SC, M, {M, M}, {KidL1, Name}, 1},
      {Rule::OtimesR, "otimes_R", System::SC, M, {M, M}, {}, -1},
      {Rule::OtimesL, "otimes_L", System::SC, M, {M}, {KidL2, Name}, 0},
      {Rule::UnitJLMS, "unitJ_L_MS", System::SC, M, {M}, {InsG, Name, GradeArg}, 0},
      {Rule::BoxtimesLMS, "boxtimes_L_MS", System::SC, M, {M}, {KidG2, Name}, 0},
      {Rule::GrdR, "Grd_R", System::SC, M, {G}, {GradeArg}, -1},
      {Rule::LinL, "Lin_L", System::SC, M, {M}, {KidL1, InsG, Name}, 0},
      {Rule::GrdL, "Grd_L", System::SC, M, {M}, {KidG1, InsL, Name}, 0},
      {Rule::CutMS, "cut_MS", System::SC, M, {M, M}, {KidL1}, 1},
      {Rule::GcutMS, "gcut_MS", System::SC, M, {G, M}, {KidG1}, 1},
      {Rule::WeakMS, "weak_MS", System::SC, M, {M}, {InsG, Name, TypeArg}, 0},
      {Rule::ContMS, "cont_MS", System::SC, M, {M}, {KidG2}, 0},
      {Rule::ExMS, "ex_MS", System::SC, M, {M}, {KidL2}, 0},
      {Rule::GexMS, "gex_MS", System::SC, M, {M}, {KidG2}, 0},
      {Rule::SubMS, "sub_MS", System::SC, M, {M}, {GradeVecArg}, 0},
      {Rule::Gmcut, "gmcut", System::SC, M, {G, M}, {KidGList}, 1},
      {Rule::IdGT, "Id_GT", System::ND, G, {}, {Name, TypeArg}, -1},
      {Rule::UnitJI, "unitJ_I", System::ND, G, {}, {}, -1},
      {Rule::UnitJE, "unitJ_E", System::ND, G, {G, G}, {InsG, GradeArg}, 1},
      {Rule::BoxtimesI, "boxtimes_I", System::ND, G, {G, G}, {}, -1},
      {Rule::BoxtimesE, "boxtimes_E", System::ND, G, {G, G}, {KidG2}, 1},
      {Rule::LinI, "Lin_I", System::ND, G, {M}, {}, -1},
      {Rule::WeakGT, "weak_GT", System::ND, G, {G}, {InsG, Name, TypeArg}, 0},
      {Rule::ContGT, "cont_GT", System::ND, G, {G}, {KidG2}, 0},
      {Rule::ExGT, "ex_GT", System::ND, G, {G}, {KidG2}, 0},
      {Rule::SubGT, "sub_GT", System::ND, G, {G}, {GradeVecArg}, 0},
      {Rule::IdMT, "Id_MT", System::ND, M, {}, {Name, TypeArg}, -1},
      {Rule::GSub, "GSub", System::ND, M, {M}, {GradeVecArg}, 0},
      {Rule::UnitII, "unitI_I", System::ND, M, {}, {}, -1},
      {Rule::UnitIE, "unitI_E", System::ND, M, {M, M}, {InsL}, 1},
      {Rule::OtimesI, "otimes_I", System::ND, M, {M, M}, {}, -1},
      {Rule::OtimesE, "otimes_E", System::ND, M, {M, M}, {KidL2}, 1},
      {Rule::LolliI, "lolli_I", System::ND, M, {M}, {}, -1},
      {Rule::LolliE, "lolli_E", System::ND, M, {M, M}, {}, -1},
      {Rule::GrdI, "Grd_I", System::ND, M, {G}, {GradeArg}, -1},
      {Rule::LinE, "Lin_E", System::ND, M, {G}, {}, -1},
      {Rule::GrdE, "Grd_E", System::ND, M, {M, M}, {KidG1}, 1},
      {Rule::WeakMT, "weak_MT", System::ND, M, {M}, {InsG, Name, TypeArg}, 0},
      {Rule::ContMT, "cont_MT", System::ND, M, {M}, {KidG2}, 0},
      {Rule::ExMT, "ex_MT", System::ND, M, {M}, {KidL2}, 0},
      {Rule::GexMT, "gex_MT", System::ND, M, {M}, {KidG2}, 0},
      {Rule::BoxtimesEMT, "boxtimes_E_MT", System::ND, M, {G, M}, {KidG2}, 1},
      {Rule::UnitJEMT, "unitJ_E_MT", System::ND, M, {G, M}, {InsG, GradeArg}, 1},
  };
  return rules;
}

[[noreturn]] void fail(const std::string& msg) { throw CheckError(msg); }

std::string rname(Rule rule) { return std::string(rule_info(rule).name); }

void need(bool cond, Rule rule, const std::string& msg) {
  if (!cond) fail(rname(rule) + ": " + msg);
}

std::size_t count_pos_roles(const RuleInfo& info) {
  std::size_t n = 0;
  for (Role role : info.roles) {
    if (role == InsG || role == InsL || role == KidG1 || role == KidG2 || role == KidL1 || role == KidL2) ++n;
  }
  return n;
}

GCtx scale(const Grade& grade, GCtx ctx) {
  for (auto& e : ctx) e.grade = grade * e.grade;
  return ctx;
}

template <class Ctx>
Ctx splice(const Ctx& base, std::size_t at, std::size_t drop, const Ctx& mid) {
  Ctx out(base.begin(), base.begin() + static_cast<long>(at));
  out.insert(out.end(), mid.begin(), mid.end());
  out.insert(out.end(), base.begin() + static_cast<long>(at + drop), base.end());
  return out;
}

template <class Ctx>
Ctx concat(const Ctx& a, const Ctx& b) {
  Ctx out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void need_graded(const TypeP& ty, Rule rule, const char* what) {
  need(ty && is_graded_type(*ty), rule, std::string(what) + " must be a graded formula");
}

void need_linear(const TypeP& ty, Rule rule, const char* what) {
  need(ty && !is_graded_type(*ty), rule, std::string(what) + " must be a linear formula");
}

void need_distinct(const Judgment& j, Rule rule) {
  std::set<std::string> seen;
  for (const auto& e : j.gctx) need(seen.insert(e.name).second, rule, "context-name clash on '" + e.name + "'");
  for (const auto& e : j.lctx) need(seen.insert(e.name).second, rule, "context-name clash on '" + e.name + "'");
}

Judgment gs(GCtx g, TermP term, TypeP ty) { return Judgment{Frag::GS, std::move(g), {}, std::move(term), std::move(ty)}; }
Judgment ms(GCtx g, LCtx lin, TermP term, TypeP ty) {
  return Judgment{Frag::MS, std::move(g), std::move(lin), std::move(term), std::move(ty)};
}

// Raises every grade of j to vec; premise grades must lie below.
Judgment raise(Rule rule, const Judgment& j, const GradeVec& vec) {
  need(vec.size() == j.gctx.size(), rule,
       "expects " + std::to_string(j.gctx.size()) + " grades, got " + std::to_string(vec.size()));
  Judgment out = j;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    need(grade_leq(j.gctx[i].grade, vec[i]), rule,
         "grade of '" + j.gctx[i].name + "' cannot be raised from " + to_string(j.gctx[i].grade) + " to " +
             to_string(vec[i]));
    out.gctx[i].grade = vec[i];
  }
  return out;
}

// Grade-multiplying replacement of the entries at occ by scaled ctx2
// (multicut bookkeeping); ctx2 lands at the first occurrence or at the end.
GCtx multicut_ctx(Rule rule, const GCtx& ctx, const std::vector<std::size_t>& occ, const GCtx& ctx2,
                  const TypeP& cut_type) {
  GradeVec delta;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    need(occ[i] < ctx.size(), rule, "occurrence position " + std::to_string(occ[i]) + " out of range");
    need(i == 0 || occ[i - 1] < occ[i], rule, "occurrence positions must be strictly increasing");
    need(type_eq(*ctx[occ[i]].type, *cut_type), rule, "occurrence '" + ctx[occ[i]].name + "' has the wrong type");
    delta.push_back(ctx[occ[i]].grade);
  }
  GradeVec prod = boxast(delta, grades_of(ctx2), occ.size());
  GCtx mid = ctx2;
  for (std::size_t i = 0; i < mid.size(); ++i) mid[i].grade = prod[i];
  GCtx rest;
  std::size_t at = ctx.size() - occ.size();
  for (std::size_t i = 0, k = 0; i < ctx.size(); ++i) {
    if (k < occ.size() && occ[k] == i) {
      if (k == 0) at = rest.size();
      ++k;
      continue;
    }
    rest.push_back(ctx[i]);
  }
  return splice(rest, at, 0, mid);
}

bool grades_in(const Type& ty, SemiringId sr) {
  if (ty.grade && ty.grade->semiring() != sr) return false;
  if (ty.left && !grades_in(*ty.left, sr)) return false;
  if (ty.right && !grades_in(*ty.right, sr)) return false;
  return true;
}

Judgment conclude_impl(SemiringId sr, Rule rule, const Params& p, const std::vector<const Judgment*>& prem) {
  const RuleInfo& info = rule_info(rule);
  need(prem.size() == info.kids.size(), rule,
       "expects " + std::to_string(info.kids.size()) + " premises, got " + std::to_string(prem.size()));
  for (std::size_t i = 0; i < prem.size(); ++i) {
    need(prem[i]->frag == info.kids[i], rule,
         "premise " + std::to_string(i) + " must be " + (info.kids[i] == Frag::GS ? "GS" : "MS"));
  }
  need(p.pos.size() == count_pos_roles(info), rule, "wrong number of position parameters");
  for (Role role : info.roles) {
    if (role == Name) need(!p.name.empty(), rule, "missing variable name");
    if (role == TypeArg) {
      need(p.type != nullptr, rule, "missing type");
      need(grades_in(*p.type, sr), rule, "type carries a grade of another semiring");
    }
    if (role == GradeArg) {
      need(p.grade.has_value(), rule, "missing grade");
      need(p.grade->semiring() == sr, rule, "grade from another semiring");
    }
  }
  for (const auto& g : p.vec) need(g.semiring() == sr, rule, "grade from another semiring");

  auto pos = [&](std::size_t i) { return p.pos.at(i); };
  auto P = [&](std::size_t i) -> const Judgment& { return *prem[i]; };
  auto gpos = [&](const Judgment& j, std::size_t at, std::size_t width) {
    need(at + width <= j.gctx.size(), rule, "graded position " + std::to_string(at) + " out of range");
  };
  auto lpos = [&](const Judgment& j, std::size_t at, std::size_t width) {
    need(at + width <= j.lctx.size(), rule, "linear position " + std::to_string(at) + " out of range");
  };
  auto ins_g = [&](const Judgment& j, std::size_t at) {
    need(at <= j.gctx.size(), rule, "insertion position " + std::to_string(at) + " out of range");
  };
  auto ins_l = [&](const Judgment& j, std::size_t at) {
    need(at <= j.lctx.size(), rule, "insertion position " + std::to_string(at) + " out of range");
  };
  auto lempty = [&](const Judgment& j, const char* which) {
    need(j.lctx.empty(), rule, std::string(which) + " linear context must be empty");
  };
  auto is = [&](const TypeP& ty, TypeKind k, const std::string& what) { need(ty->kind == k, rule, what); };
  const Grade one = Grade::one(sr);
  const Grade zero = Grade::zero(sr);

  Judgment out;
  switch (rule) {
    // ---------------- identities and units
    case Rule::IdGS:
    case Rule::IdGT:
      need_graded(p.type, rule, "identity type");
      out = gs({{p.name, one, p.type}}, var(p.name), p.type);
      break;
    case Rule::IdMS:
    case Rule::IdMT:
      need_linear(p.type, rule, "identity type");
      out = ms({}, {{p.name, p.type}}, var(p.name), p.type);
      break;
    case Rule::UnitJR:
    case Rule::UnitJI:
      out = gs({}, unit_j_term(), unit_j());
      break;
    case Rule::UnitIR:
    case Rule::UnitII:
      out = ms({}, {}, unit_i_term(), unit_i());
      break;

    // ---------------- graded left rules on a context variable
    case Rule::UnitJL:
    case Rule::UnitJLMS: {
      const Judgment& a = P(0);
      ins_g(a, pos(0));
      out = a;
      out.gctx = splice(a.gctx, pos(0), 0, GCtx{{p.name, *p.grade, unit_j()}});
      out.term = let_unit_j(var(p.name), a.term);
      break;
    }
    case Rule::BoxtimesL:
    case Rule::BoxtimesLMS: {
      const Judgment& a = P(0);
      gpos(a, pos(0), 2);
      const GEntry& entry = a.gctx[pos(0)];
      const GEntry& entry2 = a.gctx[pos(0) + 1];
      need(entry.grade == entry2.grade, rule,
           "components '" + entry.name + "' and '" + entry2.name + "' must share one grade (" + to_string(entry.grade) +
               " vs " + to_string(entry2.grade) + ")");
      out = a;
      out.gctx = splice(a.gctx, pos(0), 2, GCtx{{p.name, entry.grade, g_tensor(entry.type, entry2.type)}});
      out.term = let_pair(entry.name, entry2.name, var(p.name), a.term);
      break;
    }

    // ---------------- graded right rules and introductions
    case Rule::BoxtimesR:
    case Rule::BoxtimesI:
      out = gs(concat(P(0).gctx, P(1).gctx), pair(P(0).term, P(1).term), g_tensor(P(0).type, P(1).type));
      break;
    case Rule::LinR:
    case Rule::LinI:
      lempty(P(0), "premise");
      out = gs(P(0).gctx, lin_term(P(0).term), lin_type(P(0).type));
      break;

    // ---------------- structural rules on the graded context
    case Rule::WeakGS:
    case Rule::WeakGT:
    case Rule::WeakMS:
    case Rule::WeakMT:
      need_graded(p.type, rule, "weakened type");
      ins_g(P(0), pos(0));
      out = P(0);
      out.gctx = splice(P(0).gctx, pos(0), 0, GCtx{{p.name, zero, p.type}});
      break;
    case Rule::ContGS:
    case Rule::ContGT:
    case Rule::ContMS:
    case Rule::ContMT: {
      const Judgment& a = P(0);
      gpos(a, pos(0), 2);
      const GEntry& y1 = a.gctx[pos(0)];
      const GEntry& y2 = a.gctx[pos(0) + 1];
      need(type_eq(*y1.type, *y2.type), rule, "contracted hypotheses '" + y1.name + "' and '" + y2.name +
                                                  "' have different types");
      out = a;
      out.gctx = splice(a.gctx, pos(0), 2, GCtx{{y1.name, y1.grade + y2.grade, y1.type}});
      out.term = subst(a.term, y2.name, var(y1.name));
      break;
    }
    case Rule::ExGS:
    case Rule::ExGT:
    case Rule::GexMS:
    case Rule::GexMT:
      gpos(P(0), pos(0), 2);
      out = P(0);
      std::swap(out.gctx[pos(0)], out.gctx[pos(0) + 1]);
      break;
    case Rule::ExMS:
    case Rule::ExMT:
      lpos(P(0), pos(0), 2);
      out = P(0);
      std::swap(out.lctx[pos(0)], out.lctx[pos(0) + 1]);
      break;
    case Rule::SubGS:
    case Rule::SubGT:
    case Rule::SubMS:
    case Rule::GSub:
      out = raise(rule, P(0), p.vec);
      break;

    // ---------------- cuts
    case Rule::CutGS:
    case Rule::GcutMS: {
      const Judgment& left = P(0);
      const Judgment& right = P(1);
      gpos(right, pos(0), 1);
      const GEntry& entry = right.gctx[pos(0)];
      need(type_eq(*entry.type, *left.type), rule, "cut formula mismatch at '" + entry.name + "'");
      out = right;
      out.gctx = splice(right.gctx, pos(0), 1, scale(entry.grade, left.gctx));
      out.term = subst(right.term, entry.name, left.term);
      break;
    }
    case Rule::Mcut:
    case Rule::Gmcut: {
      const Judgment& left = P(0);
      const Judgment& right = P(1);
      out = right;
      out.gctx = multicut_ctx(rule, right.gctx, p.occ, left.gctx, left.type);
      std::vector<std::string> names;
      for (auto k : p.occ) names.push_back(right.gctx[k].name);
      out.term = multi_subst(right.term, names, left.term);
      break;
    }
    case Rule::CutMS: {
      const Judgment& left = P(0);
      const Judgment& right = P(1);
      lpos(right, pos(0), 1);
      const LEntry& lentry = right.lctx[pos(0)];
      need(type_eq(*lentry.type, *left.type), rule, "cut formula mismatch at '" + lentry.name + "'");
      out = ms(concat(right.gctx, left.gctx), splice(right.lctx, pos(0), 1, left.lctx),
               subst(right.term, lentry.name, left.term), right.type);
      break;
    }

    // ---------------- linear right rules and introductions
    case Rule::LolliR:
    case Rule::LolliI: {
      const Judgment& a = P(0);
      need(!a.lctx.empty(), rule, "premise must bind a linear hypothesis");
      const LEntry& lentry = a.lctx.back();
      out = ms(a.gctx, LCtx(a.lctx.begin(), a.lctx.end() - 1), lam(lentry.name, lentry.type, a.term), lolli(lentry.type, a.type));
      break;
    }
    case Rule::OtimesR:
    case Rule::OtimesI:
      out = ms(concat(P(0).gctx, P(1).gctx), concat(P(0).lctx, P(1).lctx), pair(P(0).term, P(1).term),
               l_tensor(P(0).type, P(1).type));
      break;
    case Rule::GrdR:
    case Rule::GrdI:
      out = ms(scale(*p.grade, P(0).gctx), {}, grd_term(*p.grade, P(0).term), grd_type(*p.grade, P(0).type));
      break;

    // ---------------- linear left rules
    case Rule::UnitIL: {
      const Judgment& a = P(0);
      ins_l(a, pos(0));
      out = a;
      out.lctx = splice(a.lctx, pos(0), 0, LCtx{{p.name, unit_i()}});
      out.term = let_unit_i(var(p.name), a.term);
      break;
    }
    case Rule::OtimesL: {
      const Judgment& a = P(0);
      lpos(a, pos(0), 2);
      const LEntry& lentry = a.lctx[pos(0)];
      const LEntry& lentry2 = a.lctx[pos(0) + 1];
      out = a;
      out.lctx = splice(a.lctx, pos(0), 2, LCtx{{p.name, l_tensor(lentry.type, lentry2.type)}});
      out.term = let_pair(lentry.name, lentry2.name, var(p.name), a.term);
      break;
    }
    case Rule::LolliL: {
      const Judgment& arg = P(0);
      const Judgment& cont = P(1);
      lpos(cont, pos(0), 1);
      const LEntry& lentry = cont.lctx[pos(0)];
      LCtx mid{{p.name, lolli(arg.type, lentry.type)}};
      mid.insert(mid.end(), arg.lctx.begin(), arg.lctx.end());
      out = ms(concat(cont.gctx, arg.gctx), splice(cont.lctx, pos(0), 1, mid),
               subst(cont.term, lentry.name, app(var(p.name), arg.term)), cont.type);
      break;
    }
    case Rule::LinL: {
      const Judgment& a = P(0);
      lpos(a, pos(0), 1);
      const LEntry& lentry = a.lctx[pos(0)];
      need(pos(1) <= a.gctx.size(), rule, "insertion position " + std::to_string(pos(1)) + " out of range");
      out = a;
      out.lctx = splice(a.lctx, pos(0), 1, LCtx{});
      out.gctx = splice(a.gctx, pos(1), 0, GCtx{{p.name, one, lin_type(lentry.type)}});
      out.term = subst(a.term, lentry.name, unlin(var(p.name)));
      break;
    }
    case Rule::GrdL: {
      const Judgment& a = P(0);
      gpos(a, pos(0), 1);
      const GEntry& entry = a.gctx[pos(0)];
      need(pos(1) <= a.lctx.size(), rule, "insertion position " + std::to_string(pos(1)) + " out of range");
      out = a;
      out.gctx = splice(a.gctx, pos(0), 1, GCtx{});
      out.lctx = splice(a.lctx, pos(1), 0, LCtx{{p.name, grd_type(entry.grade, entry.type)}});
      out.term = let_grd(entry.grade, entry.name, var(p.name), a.term);
      break;
    }

    // ---------------- natural deduction eliminations
    case Rule::UnitJE:
    case Rule::UnitJEMT: {
      const Judgment& scrut = P(0);
      const Judgment& body = P(1);
      is(scrut.type, TypeKind::UnitJ, "scrutinee must have type J");
      ins_g(body, pos(0));
      out = body;
      out.gctx = splice(body.gctx, pos(0), 0, scale(*p.grade, scrut.gctx));
      out.term = let_unit_j(scrut.term, body.term);
      break;
    }
    case Rule::BoxtimesE:
    case Rule::BoxtimesEMT: {
      const Judgment& scrut = P(0);
      const Judgment& body = P(1);
      is(scrut.type, TypeKind::GTensor, "scrutinee must have a graded tensor type");
      gpos(body, pos(0), 2);
      const GEntry& entry = body.gctx[pos(0)];
      const GEntry& entry2 = body.gctx[pos(0) + 1];
      need(entry.grade == entry2.grade, rule,
           "bound variables '" + entry.name + "' and '" + entry2.name + "' must share one grade");
      need(type_eq(*entry.type, *scrut.type->left) && type_eq(*entry2.type, *scrut.type->right), rule,
           "bound variable types do not match the scrutinee");
      out = body;
      out.gctx = splice(body.gctx, pos(0), 2, scale(entry.grade, scrut.gctx));
      out.term = let_pair(entry.name, entry2.name, scrut.term, body.term);
      break;
    }
    case Rule::UnitIE: {
      const Judgment& scrut = P(0);
      const Judgment& body = P(1);
      is(scrut.type, TypeKind::UnitI, "scrutinee must have type I");
      ins_l(body, pos(0));
      out = ms(concat(body.gctx, scrut.gctx), splice(body.lctx, pos(0), 0, scrut.lctx),
               let_unit_i(scrut.term, body.term), body.type);
      break;
    }
    case Rule::OtimesE: {
      const Judgment& scrut = P(0);
      const Judgment& body = P(1);
      is(scrut.type, TypeKind::LTensor, "scrutinee must have a linear tensor type");
      lpos(body, pos(0), 2);
      const LEntry& lentry = body.lctx[pos(0)];
      const LEntry& lentry2 = body.lctx[pos(0) + 1];
      need(type_eq(*lentry.type, *scrut.type->left) && type_eq(*lentry2.type, *scrut.type->right), rule,
           "bound variable types do not match the scrutinee");
      out = ms(concat(body.gctx, scrut.gctx), splice(body.lctx, pos(0), 2, scrut.lctx),
               let_pair(lentry.name, lentry2.name, scrut.term, body.term), body.type);
      break;
    }
    case Rule::LolliE: {
      const Judgment& fn = P(0);
      const Judgment& arg = P(1);
      is(fn.type, TypeKind::Lolli, "function must have an implication type");
      need(type_eq(*fn.type->left, *arg.type), rule, "argument type mismatch");
      out = ms(concat(fn.gctx, arg.gctx), concat(fn.lctx, arg.lctx), app(fn.term, arg.term), fn.type->right);
      break;
    }
    case Rule::LinE: {
      const Judgment& a = P(0);
      is(a.type, TypeKind::Lin, "premise must have a Lin type");
      out = ms(a.gctx, {}, unlin(a.term), a.type->left);
      break;
    }
    case Rule::GrdE: {
      const Judgment& scrut = P(0);
      const Judgment& body = P(1);
      is(scrut.type, TypeKind::Grd, "scrutinee must have a Grd type");
      gpos(body, pos(0), 1);
      const GEntry& entry = body.gctx[pos(0)];
      const Grade& grade = *scrut.type->grade;
      need(entry.grade == grade, rule, "'" + entry.name + "' must be bound at exactly grade " + to_string(grade) + ", found " +
                                   to_string(entry.grade));
      need(type_eq(*entry.type, *scrut.type->left), rule, "bound variable type does not match the scrutinee");
      out = ms(splice(body.gctx, pos(0), 1, scrut.gctx), concat(body.lctx, scrut.lctx),
               let_grd(grade, entry.name, scrut.term, body.term), body.type);
      break;
    }
  }
  need_distinct(out, rule);
  return out;
}

}  // namespace

const RuleInfo& rule_info(Rule rule) {
  const auto& rules = table();
  return rules[static_cast<std::size_t>(rule)];
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& info : table()) {
    if (info.name == name) return info.rule;
  }
  return std::nullopt;
}

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = [] {
    std::vector<Rule> out;
    for (const auto& info : table()) out.push_back(info.rule);
    return out;
  }();
  return rules;
}

bool is_cut_rule(Rule rule) {
  return rule == Rule::CutGS || rule == Rule::CutMS || rule == Rule::GcutMS || rule == Rule::Mcut || rule == Rule::Gmcut;
}

bool is_sub_rule(Rule rule) {
  return rule == Rule::SubGS || rule == Rule::SubMS || rule == Rule::SubGT || rule == Rule::GSub;
}

Judgment conclude(SemiringId sr, Rule rule, const Params& params, const std::vector<const Judgment*>& premises) {
  try {
    return conclude_impl(sr, rule, params, premises);
  } catch (const SemiringError& e) {
    throw CheckError(rname(rule) + ": grade arithmetic: " + e.what());
  }
}

DerivP make_deriv(SemiringId sr, Rule rule, Params params, std::vector<DerivP> kids) {
  std::vector<const Judgment*> prem;
  prem.reserve(kids.size());
  for (const auto& k : kids) {
    if (!k) throw CheckError(rname(rule) + ": missing premise");
    if (k->semiring != sr) throw CheckError(rname(rule) + ": premise from another semiring");
    prem.push_back(&k->concl);
  }
  Judgment j = conclude(sr, rule, params, prem);
  return std::make_shared<const Deriv>(Deriv{sr, rule, std::move(params), std::move(kids), std::move(j)});
}

namespace {

Judgment recheck_rec(const Deriv& d, std::optional<System> expect, const std::string& path) {
  if (expect && rule_info(d.rule).system != *expect) {
    throw CheckError(std::string("rule ") + rname(d.rule) + " does not belong to the " +
                         (*expect == System::SC ? "sequent calculus" : "natural deduction system"),
                     path);
  }
  std::vector<Judgment> prem;
  prem.reserve(d.kids.size());
  for (std::size_t i = 0; i < d.kids.size(); ++i) {
    prem.push_back(recheck_rec(*d.kids[i], expect, path + "/" + std::to_string(i)));
  }
  std::vector<const Judgment*> ptrs;
  for (const auto& j : prem) ptrs.push_back(&j);
  try {
    return conclude(d.semiring, d.rule, d.params, ptrs);
  } catch (const CheckError& e) {
    throw CheckError(e.bare_message(), path);
  }
}

}  // namespace

Judgment recheck(const Deriv& d, std::optional<System> expect) { return recheck_rec(d, expect, "root"); }

std::size_t deriv_size(const Deriv& d) {
  std::size_t n = 1;
  for (const auto& k : d.kids) n += deriv_size(*k);
  return n;
}

bool deriv_identical(const Deriv& a, const Deriv& b) {
  if (a.rule != b.rule || a.kids.size() != b.kids.size()) return false;
  const Params& p = a.params;
  const Params& q = b.params;
  if (p.pos != q.pos || p.occ != q.occ || p.name != q.name || p.vec != q.vec || p.grade != q.grade) return false;
  if (static_cast<bool>(p.type) != static_cast<bool>(q.type)) return false;
  if (p.type && !type_eq(*p.type, *q.type)) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    if (!deriv_identical(*a.kids[i], *b.kids[i])) return false;
  }
  return true;
}

void collect_deriv_names(const Deriv& d, std::set<std::string>& out) {
  for (const auto& e : d.concl.gctx) out.insert(e.name);
  for (const auto& e : d.concl.lctx) out.insert(e.name);
  collect_names(*d.concl.term, out);
  if (!d.params.name.empty()) out.insert(d.params.name);
  for (const auto& k : d.kids) collect_deriv_names(*k, out);
}

}  // namespace mgl
