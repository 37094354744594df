// Random derivation generators for property tests. Every tree is built from
// make_deriv, so each output is valid by construction. Generation is
// type-directed: a proof of a chosen formula is an introduction, a leaf, or a
// type-preserving rule (left rule, structural rule, cut) over a smaller proof.
// Sizes are counted in levels: a leaf is one level.
#include <algorithm>
#include <functional>
#include <random>

#include "mgl/nd_checker.hpp"
#include "mgl/sc_checker.hpp"
#include "mgl/structural.hpp"

namespace mgl {

namespace {

std::size_t levels(const Deriv& d) {
  std::size_t m = 0;
  for (const auto& k : d.kids) m = std::max(m, levels(*k));
  return m + 1;
}

DerivP fits(DerivP d, std::size_t budget) { return d && levels(*d) <= budget ? d : nullptr; }

using Builder = std::function<DerivP()>;

class GenBase {
 public:
  GenBase(SemiringId sr, std::uint64_t seed) : sr_(sr), rng_(seed) {}

 protected:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  // Tries builders in random order; the first non-null result wins.
  DerivP first_of(std::vector<Builder> bs) {
    std::shuffle(bs.begin(), bs.end(), rng_);
    for (auto& b : bs) {
      if (DerivP d = b()) return d;
    }
    return nullptr;
  }

  Grade rand_grade() {
    switch (sr_) {
      case SemiringId::NatExact:
      case SemiringId::NatLeq:
        return Grade::natural(sr_, pick(4));
      case SemiringId::Rat:
        return Grade::rational(pick(5), 1 + pick(3));
      case SemiringId::N01w: {
        std::size_t k = pick(3);
        return k == 0 ? Grade::zero(sr_) : k == 1 ? Grade::one(sr_) : Grade::omega();
      }
      case SemiringId::Sec:
        return coin(0.5) ? Grade::lo() : Grade::hi();
    }
    return Grade::one(sr_);
  }

  // A grade at or above g.
  Grade raise(const Grade& g) {
    std::vector<Grade> cands{g};
    switch (sr_) {
      case SemiringId::NatExact:
        break;
      case SemiringId::NatLeq:
        cands.push_back(g + Grade::one(sr_));
        cands.push_back(g + Grade::natural(sr_, 2));
        break;
      case SemiringId::Rat:
        cands.push_back(g + Grade::rational(1, 2));
        cands.push_back(g + Grade::one(sr_));
        break;
      case SemiringId::N01w:
        cands.push_back(Grade::omega());
        break;
      case SemiringId::Sec:
        cands.push_back(Grade::hi());
        break;
    }
    return cands[pick(cands.size())];
  }

  TypeP rand_gtype(int depth) {
    std::size_t k = pick(depth > 0 ? 5 : 3);
    switch (k) {
      case 0: return g_atom("X");
      case 1: return g_atom("Y");
      case 2: return unit_j();
      case 3: return g_tensor(rand_gtype(depth - 1), rand_gtype(depth - 1));
      default: return lin_type(rand_ltype(depth - 1));
    }
  }

  TypeP rand_ltype(int depth) {
    std::size_t k = pick(depth > 0 ? 6 : 3);
    switch (k) {
      case 0: return l_atom("A");
      case 1: return l_atom("B");
      case 2: return unit_i();
      case 3: return l_tensor(rand_ltype(depth - 1), rand_ltype(depth - 1));
      case 4: return lolli(rand_ltype(depth - 1), rand_ltype(depth - 1));
      default: return grd_type(rand_grade(), rand_gtype(depth - 1));
    }
  }

  DerivP mk(Rule rule, Params p, std::vector<DerivP> kids) { return make_deriv(sr_, rule, std::move(p), std::move(kids)); }

  std::string fresh(const char* base) { return names_.fresh(base); }

  // Shared structural moves on the graded context, for any system/fragment.
  std::vector<Builder> graded_structural(const DerivP& p, const StructuralRules& structural) {
    const GCtx& g = p->concl.gctx;
    std::vector<Builder> out;
    out.push_back([this, p, structural, &g] {
      return mk(structural.weak, Params{}.at(pick(g.size() + 1)).named(fresh("w")).typed(rand_gtype(1)), {p});
    });
    if (g.size() >= 2) {
      out.push_back([this, p, structural, &g] { return mk(structural.ex_graded, Params{}.at(pick(g.size() - 1)), {p}); });
    }
    std::vector<std::size_t> same;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      if (type_eq(*g[i].type, *g[i + 1].type)) same.push_back(i);
    }
    if (!same.empty()) {
      out.push_back([this, p, structural, same] { return mk(structural.cont, Params{}.at(same[pick(same.size())]), {p}); });
    }
    if (!g.empty()) {
      out.push_back([this, p, structural, &g] {
        GradeVec v;
        for (const auto& e : g) v.push_back(raise(e.grade));
        return mk(structural.sub, Params{}.vector(v), {p});
      });
    }
    return out;
  }

  // Adjacent graded pairs sharing one grade (candidates for pair eliminations).
  static std::vector<std::size_t> equal_grade_pairs(const GCtx& g) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      if (g[i].grade == g[i + 1].grade) out.push_back(i);
    }
    return out;
  }

  SemiringId sr_;
  std::mt19937_64 rng_;
  NameSupply names_;
};

class ScGen : public GenBase {
 public:
  ScGen(SemiringId sr, std::uint64_t seed, double cut_p) : GenBase(sr, seed), cut_p_(cut_p) {}

  DerivP gs(const TypeP& ty, std::size_t b) {
    if (b == 0) return nullptr;
    if (b > 1) {
      double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
      if (roll < wrap_share()) {
        if (DerivP p = gs(ty, b - 1)) {
          if (DerivP w = wrap_gs(p, b)) return w;
        }
      } else if (roll < 0.85) {
        if (DerivP d = fits(gs_intro(ty, b), b)) return d;
      }
    }
    return gs_leaf(ty);
  }

  DerivP ms(const TypeP& ty, std::size_t b, bool lin_ok) {
    if (b == 0) return nullptr;
    if (b > 1) {
      double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
      if (roll < wrap_share()) {
        if (DerivP p = ms(ty, b - 1, lin_ok)) {
          if (DerivP w = wrap_ms(p, b, lin_ok)) return w;
        }
      } else if (roll < 0.85) {
        if (DerivP d = fits(ms_intro(ty, b, lin_ok), b)) return d;
      }
    }
    return fits(ms_leaf(ty, lin_ok), b);
  }

  DerivP random_gs(std::size_t b) {
    for (int i = 0; i < 20; ++i) {
      if (DerivP d = gs(rand_gtype(2), b)) return d;
    }
    return gs_leaf(g_atom("X"));
  }

  DerivP random_ms(std::size_t b) {
    for (int i = 0; i < 20; ++i) {
      if (DerivP d = ms(rand_ltype(2), b, true)) return d;
    }
    return ms_leaf(l_atom("A"), true);
  }

  DerivP cut_of(CutFlavor flavor, std::size_t b) {
    DerivP right;
    for (int i = 0; i < 30 && !right; ++i) {
      DerivP cand = flavor == CutFlavor::GS ? random_gs(b - 1) : random_ms(b - 1);
      bool ok = flavor == CutFlavor::MS ? !cand->concl.lctx.empty() : !cand->concl.gctx.empty();
      if (ok) right = cand;
    }
    if (!right) {
      switch (flavor) {
        case CutFlavor::GS: right = gs_leaf(g_atom("X")); break;
        case CutFlavor::GSIntoMS: right = ms_leaf(l_atom("A"), false); break;
        case CutFlavor::MS: right = ms_leaf(l_atom("A"), true); break;
      }
    }
    DerivP out;
    if (flavor == CutFlavor::MS) {
      std::size_t i = pick(right->concl.lctx.size());
      DerivP left = ms(right->concl.lctx[i].type, b - 1, true);
      out = mk(Rule::CutMS, Params{}.at(i), {left, right});
    } else {
      std::size_t i = pick(right->concl.gctx.size());
      DerivP left = gs(right->concl.gctx[i].type, b - 1);
      out = mk(flavor == CutFlavor::GS ? Rule::CutGS : Rule::GcutMS, Params{}.at(i), {left, right});
    }
    return out;
  }

 private:
  DerivP gs_leaf(const TypeP& ty) {
    if (ty->kind == TypeKind::UnitJ && coin(0.5)) return mk(Rule::UnitJR, {}, {});
    return mk(Rule::IdGS, Params{}.named(fresh("x")).typed(ty), {});
  }

  // Without linear hypotheses an atom needs a graded Lin hypothesis.
  DerivP ms_leaf(const TypeP& ty, bool lin_ok) {
    if (ty->kind == TypeKind::UnitI && (coin(0.5) || !lin_ok)) return mk(Rule::UnitIR, {}, {});
    DerivP id = mk(Rule::IdMS, Params{}.named(fresh("a")).typed(ty), {});
    if (lin_ok) return id;
    return mk(Rule::LinL, Params{}.at(0).at(0).named(fresh("z")), {id});
  }

  DerivP gs_intro(const TypeP& ty, std::size_t b) {
    switch (ty->kind) {
      case TypeKind::UnitJ:
        return mk(Rule::UnitJR, {}, {});
      case TypeKind::GTensor: {
        DerivP left = gs(ty->left, b - 1);
        DerivP right = gs(ty->right, b - 1);
        return left && right ? mk(Rule::BoxtimesR, {}, {left, right}) : nullptr;
      }
      case TypeKind::Lin: {
        DerivP p = ms(ty->left, b - 1, false);
        return p ? mk(Rule::LinR, {}, {p}) : nullptr;
      }
      default:
        return nullptr;
    }
  }

  DerivP ms_intro(const TypeP& ty, std::size_t b, bool lin_ok) {
    switch (ty->kind) {
      case TypeKind::UnitI:
        return mk(Rule::UnitIR, {}, {});
      case TypeKind::LTensor: {
        DerivP left = ms(ty->left, b - 1, lin_ok);
        DerivP right = ms(ty->right, b - 1, lin_ok);
        return left && right ? mk(Rule::OtimesR, {}, {left, right}) : nullptr;
      }
      case TypeKind::Grd: {
        DerivP p = gs(ty->left, b - 1);
        return p ? mk(Rule::GrdR, Params{}.graded(*ty->grade), {p}) : nullptr;
      }
      case TypeKind::Lolli: {
        // The bound hypothesis must end up last in the linear context.
        if (ty->left->kind == TypeKind::UnitI && coin(0.5)) {
          DerivP body = ms(ty->right, b - 1, lin_ok);
          if (!body) return nullptr;
          DerivP p = mk(Rule::UnitIL, Params{}.at(body->concl.lctx.size()).named(fresh("u")), {body});
          return mk(Rule::LolliR, {}, {p});
        }
        DerivP arg = mk(Rule::IdMS, Params{}.named(fresh("a")).typed(ty->left), {});
        DerivP cont = mk(Rule::IdMS, Params{}.named(fresh("y")).typed(ty->right), {});
        DerivP p = mk(Rule::LolliL, Params{}.at(0).named(fresh("f")), {arg, cont});
        if (!lin_ok) p = mk(Rule::LinL, Params{}.at(0).at(0).named(fresh("z")), {p});
        return mk(Rule::LolliR, {}, {p});
      }
      default:
        return nullptr;
    }
  }

  DerivP wrap_gs(const DerivP& p, std::size_t b) {
    const GCtx& g = p->concl.gctx;
    if (!g.empty() && coin(cut_p_)) {
      std::size_t i = pick(g.size());
      if (DerivP left = gs(g[i].type, b - 1)) return mk(Rule::CutGS, Params{}.at(i), {left, p});
    }
    std::vector<Builder> bs = graded_structural(p, structural_rules(System::SC, Frag::GS));
    bs.push_back([this, p, &g] {
      return mk(Rule::UnitJL, Params{}.at(pick(g.size() + 1)).named(fresh("j")).graded(rand_grade()), {p});
    });
    auto pairs = equal_grade_pairs(g);
    if (!pairs.empty()) {
      bs.push_back([this, p, pairs] {
        return mk(Rule::BoxtimesL, Params{}.at(pairs[pick(pairs.size())]).named(fresh("p")), {p});
      });
    }
    return first_of(std::move(bs));
  }

  DerivP wrap_ms(const DerivP& p, std::size_t b, bool lin_ok) {
    const GCtx& g = p->concl.gctx;
    const LCtx& lin = p->concl.lctx;
    if (coin(cut_p_)) {
      bool graded = !g.empty() && (lin.empty() || coin(0.5));
      if (graded) {
        std::size_t i = pick(g.size());
        if (DerivP left = gs(g[i].type, b - 1)) return mk(Rule::GcutMS, Params{}.at(i), {left, p});
      } else if (!lin.empty()) {
        std::size_t i = pick(lin.size());
        if (DerivP left = ms(lin[i].type, b - 1, lin_ok)) return mk(Rule::CutMS, Params{}.at(i), {left, p});
      }
    }
    std::vector<Builder> bs = graded_structural(p, structural_rules(System::SC, Frag::MS));
    bs.push_back([this, p, &g] {
      return mk(Rule::UnitJLMS, Params{}.at(pick(g.size() + 1)).named(fresh("j")).graded(rand_grade()), {p});
    });
    auto pairs = equal_grade_pairs(g);
    if (!pairs.empty()) {
      bs.push_back([this, p, pairs] {
        return mk(Rule::BoxtimesLMS, Params{}.at(pairs[pick(pairs.size())]).named(fresh("p")), {p});
      });
    }
    if (lin.size() >= 2) {
      bs.push_back([this, p, &lin] { return mk(Rule::ExMS, Params{}.at(pick(lin.size() - 1)), {p}); });
      bs.push_back([this, p, &lin] {
        return mk(Rule::OtimesL, Params{}.at(pick(lin.size() - 1)).named(fresh("q")), {p});
      });
    }
    if (!lin.empty()) {
      bs.push_back([this, p, &g, &lin] {
        return mk(Rule::LinL, Params{}.at(pick(lin.size())).at(pick(g.size() + 1)).named(fresh("z")), {p});
      });
    }
    if (lin_ok) {
      bs.push_back([this, p, &lin] {
        return mk(Rule::UnitIL, Params{}.at(pick(lin.size() + 1)).named(fresh("u")), {p});
      });
      if (!g.empty()) {
        bs.push_back([this, p, &g, &lin] {
          return mk(Rule::GrdL, Params{}.at(pick(g.size())).at(pick(lin.size() + 1)).named(fresh("g")), {p});
        });
      }
      if (!lin.empty()) {
        bs.push_back([this, p, b, &lin] {
          DerivP arg = ms(rand_ltype(1), b - 1, true);
          if (!arg) return DerivP{};
          return mk(Rule::LolliL, Params{}.at(pick(lin.size())).named(fresh("f")), {arg, p});
        });
      }
    }
    return first_of(std::move(bs));
  }

  // Cuts arise only while wrapping, so wrapping gets a larger share as the
  // cut probability grows; 0.45 when cuts are off.
  double wrap_share() const { return 0.45 + 0.5 * cut_p_; }

  double cut_p_;
};

class NdGen : public GenBase {
 public:
  using GenBase::GenBase;

  DerivP gt(const TypeP& ty, std::size_t b) {
    if (b == 0) return nullptr;
    if (b > 1) {
      double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
      if (roll < 0.45) {
        if (DerivP p = gt(ty, b - 1)) {
          if (DerivP w = wrap_gt(p, b)) return w;
        }
      } else if (roll < 0.85) {
        if (DerivP d = fits(gt_intro(ty, b), b)) return d;
      }
    }
    if (ty->kind == TypeKind::UnitJ && coin(0.5)) return mk(Rule::UnitJI, {}, {});
    return mk(Rule::IdGT, Params{}.named(fresh("x")).typed(ty), {});
  }

  DerivP mt(const TypeP& ty, std::size_t b, bool lin_ok) {
    if (b == 0) return nullptr;
    if (b > 1) {
      double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
      if (roll < 0.45) {
        if (DerivP p = mt(ty, b - 1, lin_ok)) {
          if (DerivP w = wrap_mt(p, b, lin_ok)) return w;
        }
      } else if (roll < 0.85) {
        if (DerivP d = fits(mt_intro(ty, b, lin_ok), b)) return d;
      }
    }
    return fits(mt_leaf(ty, lin_ok), b);
  }

  DerivP random_gt(std::size_t b) {
    for (int i = 0; i < 20; ++i) {
      if (DerivP d = gt(rand_gtype(2), b)) return d;
    }
    return mk(Rule::IdGT, Params{}.named(fresh("x")).typed(g_atom("X")), {});
  }

  DerivP random_mt(std::size_t b) {
    for (int i = 0; i < 20; ++i) {
      if (DerivP d = mt(rand_ltype(2), b, true)) return d;
    }
    return mt_leaf(l_atom("A"), true);
  }

 private:
  DerivP mt_leaf(const TypeP& ty, bool lin_ok) {
    if (ty->kind == TypeKind::UnitI && (coin(0.5) || !lin_ok)) return mk(Rule::UnitII, {}, {});
    if (lin_ok) return mk(Rule::IdMT, Params{}.named(fresh("a")).typed(ty), {});
    DerivP inner = mk(Rule::IdGT, Params{}.named(fresh("z")).typed(lin_type(ty)), {});
    return mk(Rule::LinE, {}, {inner});
  }

  DerivP gt_intro(const TypeP& ty, std::size_t b) {
    switch (ty->kind) {
      case TypeKind::UnitJ:
        return mk(Rule::UnitJI, {}, {});
      case TypeKind::GTensor: {
        DerivP left = gt(ty->left, b - 1);
        DerivP right = gt(ty->right, b - 1);
        return left && right ? mk(Rule::BoxtimesI, {}, {left, right}) : nullptr;
      }
      case TypeKind::Lin: {
        DerivP p = mt(ty->left, b - 1, false);
        return p ? mk(Rule::LinI, {}, {p}) : nullptr;
      }
      default:
        return nullptr;
    }
  }

  DerivP mt_intro(const TypeP& ty, std::size_t b, bool lin_ok) {
    // Eliminations that produce any formula: application and Unlin.
    if (coin(0.25)) {
      if (coin(0.5)) {
        TypeP a = rand_ltype(1);
        DerivP f = mt(lolli(a, ty), b - 1, lin_ok);
        DerivP hyp = mt(a, b - 1, lin_ok);
        if (f && hyp) return mk(Rule::LolliE, {}, {f, hyp});
      } else if (DerivP inner = gt(lin_type(ty), b - 1)) {
        return mk(Rule::LinE, {}, {inner});
      }
    }
    switch (ty->kind) {
      case TypeKind::UnitI:
        return mk(Rule::UnitII, {}, {});
      case TypeKind::LTensor: {
        DerivP left = mt(ty->left, b - 1, lin_ok);
        DerivP right = mt(ty->right, b - 1, lin_ok);
        return left && right ? mk(Rule::OtimesI, {}, {left, right}) : nullptr;
      }
      case TypeKind::Grd: {
        DerivP p = gt(ty->left, b - 1);
        return p ? mk(Rule::GrdI, Params{}.graded(*ty->grade), {p}) : nullptr;
      }
      case TypeKind::Lolli: {
        DerivP f = lin_ok ? mk(Rule::IdMT, Params{}.named(fresh("f")).typed(ty), {})
                          : mk(Rule::LinE, {}, {mk(Rule::IdGT, Params{}.named(fresh("z")).typed(lin_type(ty)), {})});
        DerivP a = mk(Rule::IdMT, Params{}.named(fresh("a")).typed(ty->left), {});
        return mk(Rule::LolliI, {}, {mk(Rule::LolliE, {}, {f, a})});
      }
      default:
        return nullptr;
    }
  }

  DerivP wrap_gt(const DerivP& p, std::size_t b) {
    const GCtx& g = p->concl.gctx;
    std::vector<Builder> bs = graded_structural(p, structural_rules(System::ND, Frag::GS));
    bs.push_back([this, p, b, &g] {
      DerivP sub = gt(unit_j(), b - 1);
      if (!sub) return DerivP{};
      return mk(Rule::UnitJE, Params{}.at(pick(g.size() + 1)).graded(rand_grade()), {sub, p});
    });
    auto pairs = equal_grade_pairs(g);
    if (!pairs.empty()) {
      bs.push_back([this, p, b, pairs, &g] {
        std::size_t i = pairs[pick(pairs.size())];
        DerivP sub = gt(g_tensor(g[i].type, g[i + 1].type), b - 1);
        return sub ? mk(Rule::BoxtimesE, Params{}.at(i), {sub, p}) : nullptr;
      });
    }
    return first_of(std::move(bs));
  }

  DerivP wrap_mt(const DerivP& p, std::size_t b, bool lin_ok) {
    const GCtx& g = p->concl.gctx;
    const LCtx& lin = p->concl.lctx;
    std::vector<Builder> bs = graded_structural(p, structural_rules(System::ND, Frag::MS));
    bs.push_back([this, p, b, &g] {
      DerivP sub = gt(unit_j(), b - 1);
      if (!sub) return DerivP{};
      return mk(Rule::UnitJEMT, Params{}.at(pick(g.size() + 1)).graded(rand_grade()), {sub, p});
    });
    bs.push_back([this, p, b, lin_ok, &lin] {
      DerivP sub = mt(unit_i(), b - 1, lin_ok);
      return sub ? mk(Rule::UnitIE, Params{}.at(pick(lin.size() + 1)), {sub, p}) : nullptr;
    });
    auto pairs = equal_grade_pairs(g);
    if (!pairs.empty()) {
      bs.push_back([this, p, b, pairs, &g] {
        std::size_t i = pairs[pick(pairs.size())];
        DerivP sub = gt(g_tensor(g[i].type, g[i + 1].type), b - 1);
        return sub ? mk(Rule::BoxtimesEMT, Params{}.at(i), {sub, p}) : nullptr;
      });
    }
    if (!g.empty()) {
      bs.push_back([this, p, b, lin_ok, &g] {
        std::size_t i = pick(g.size());
        DerivP sub = mt(grd_type(g[i].grade, g[i].type), b - 1, lin_ok);
        return sub ? mk(Rule::GrdE, Params{}.at(i), {sub, p}) : nullptr;
      });
    }
    if (lin.size() >= 2) {
      bs.push_back([this, p, &lin] { return mk(Rule::ExMT, Params{}.at(pick(lin.size() - 1)), {p}); });
      bs.push_back([this, p, b, lin_ok, &lin] {
        std::size_t i = pick(lin.size() - 1);
        DerivP sub = mt(l_tensor(lin[i].type, lin[i + 1].type), b - 1, lin_ok);
        return sub ? mk(Rule::OtimesE, Params{}.at(i), {sub, p}) : nullptr;
      });
    }
    return first_of(std::move(bs));
  }
};

}  // namespace

DerivP gen_sc_derivation(SemiringId sr, std::uint64_t seed, std::size_t max_depth, Frag frag,
                         const GenOptions& opts) {
  ScGen gen(sr, seed, opts.cut_probability);
  std::size_t b = std::max<std::size_t>(max_depth, 1);
  return frag == Frag::GS ? gen.random_gs(b) : gen.random_ms(b);
}

DerivP gen_sc_cut(SemiringId sr, std::uint64_t seed, std::size_t max_depth, CutFlavor flavor) {
  ScGen gen(sr, seed, 0.2);
  return gen.cut_of(flavor, std::max<std::size_t>(max_depth, 2));
}

DerivP gen_nd_derivation(SemiringId sr, std::uint64_t seed, std::size_t max_depth, Frag frag) {
  NdGen gen(sr, seed);
  std::size_t b = std::max<std::size_t>(max_depth, 1);
  return frag == Frag::GS ? gen.random_gt(b) : gen.random_mt(b);
}

DerivP gen_nd_of_type(SemiringId sr, std::uint64_t seed, std::size_t max_depth, const TypeP& type) {
  NdGen gen(sr, seed);
  return gen.gt(type, std::max<std::size_t>(max_depth, 1));
}

}  // namespace mgl
