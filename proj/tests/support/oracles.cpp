#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "mgl/parser.hpp"

namespace mgl::oracle {

namespace {

Value reduce(std::int64_t n, std::int64_t d) {
  std::int64_t g = std::gcd(n, d);
  if (g == 0) return {0, 1};
  return {n / g, d / g};
}

// The n01w carrier read as "how many uses": 0, exactly 1, or many.
std::int64_t saturate(std::int64_t n) { return n > 1 ? 2 : n; }

}  // namespace

Value add(SemiringId sr, Value a, Value b) {
  switch (sr) {
    case SemiringId::NatExact:
    case SemiringId::NatLeq: return {a.num + b.num, 1};
    case SemiringId::N01w: return {saturate(a.num + b.num), 1};
    case SemiringId::Sec: return {a.num & b.num, 1};  // Hi only when both are Hi
    case SemiringId::Rat: return reduce(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  throw std::logic_error("unknown semiring");
}

Value mul(SemiringId sr, Value a, Value b) {
  switch (sr) {
    case SemiringId::NatExact:
    case SemiringId::NatLeq: return {a.num * b.num, 1};
    case SemiringId::N01w: return {saturate(a.num * b.num), 1};
    case SemiringId::Sec: return {a.num | b.num, 1};  // Hi when either is Hi
    case SemiringId::Rat: return reduce(a.num * b.num, a.den * b.den);
  }
  throw std::logic_error("unknown semiring");
}

bool leq(SemiringId sr, Value a, Value b) {
  switch (sr) {
    case SemiringId::NatExact: return a == b;
    case SemiringId::NatLeq: return a.num <= b.num;
    case SemiringId::N01w: return a == b || b.num == 2;
    case SemiringId::Sec: return a.num <= b.num;
    case SemiringId::Rat: return a.num * b.den <= b.num * a.den;
  }
  throw std::logic_error("unknown semiring");
}

Value zero(SemiringId sr) { return sr == SemiringId::Sec ? Value{1, 1} : Value{0, 1}; }
Value one(SemiringId sr) { return sr == SemiringId::Sec ? Value{0, 1} : Value{1, 1}; }

std::string literal(SemiringId sr, Value v) {
  switch (sr) {
    case SemiringId::N01w: return v.num == 2 ? "w" : std::to_string(v.num);
    case SemiringId::Sec: return v.num == 0 ? "Lo" : "Hi";
    case SemiringId::Rat:
      return v.den == 1 ? std::to_string(v.num) : std::to_string(v.num) + "/" + std::to_string(v.den);
    default: return std::to_string(v.num);
  }
}

Grade to_grade(SemiringId sr, Value v) {
  auto g = parse_grade(sr, literal(sr, v));
  if (!g) throw std::logic_error("literal rejected: " + literal(sr, v));
  return *g;
}

Value random_value(SemiringId sr, std::mt19937_64& rng) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  switch (sr) {
    case SemiringId::NatExact:
    case SemiringId::NatLeq: return {pick(0, 9), 1};
    case SemiringId::N01w: return {pick(0, 2), 1};
    case SemiringId::Sec: return {pick(0, 1), 1};
    case SemiringId::Rat: return reduce(pick(0, 7), pick(1, 6));
  }
  throw std::logic_error("unknown semiring");
}

std::vector<SecTables> enumerate_sec_tables() {
  constexpr int lo = 0, hi = 1;
  std::vector<SecTables> out;
  for (int ab = 0; ab < 16; ++ab) {
    for (int mb = 0; mb < 16; ++mb) {
      SecTables t{};
      for (int i = 0; i < 4; ++i) {
        t.add[i / 2][i % 2] = (ab >> i) & 1;
        t.mul[i / 2][i % 2] = (mb >> i) & 1;
      }
      bool ok = true;
      for (int a = 0; a < 2 && ok; ++a) {
        ok = t.add[hi][a] == a && t.add[a][hi] == a && t.mul[lo][a] == a && t.mul[a][lo] == a &&
             t.mul[hi][a] == hi && t.mul[a][hi] == hi;
        for (int b = 0; b < 2 && ok; ++b) {
          ok = t.add[a][b] == t.add[b][a] && t.mul[a][b] == t.mul[b][a];
          if (a <= b) {
            for (int c = 0; c < 2 && ok; ++c) {
              ok = t.add[a][c] <= t.add[b][c] && t.mul[a][c] <= t.mul[b][c];
            }
          }
          for (int c = 0; c < 2 && ok; ++c) {
            ok = t.add[t.add[a][b]][c] == t.add[a][t.add[b][c]] && t.mul[t.mul[a][b]][c] == t.mul[a][t.mul[b][c]] &&
                 t.mul[a][t.add[b][c]] == t.add[t.mul[a][b]][t.mul[a][c]];
          }
        }
      }
      if (ok) out.push_back(t);
    }
  }
  return out;
}

GradeVec boxast_fold(SemiringId sr, const GradeVec& delta, const GradeVec& delta2) {
  GradeVec acc(delta2.size(), Grade::zero(sr));
  for (const Grade& d : delta) {
    for (std::size_t j = 0; j < delta2.size(); ++j) acc[j] = acc[j] + d * delta2[j];
  }
  return acc;
}

namespace {

class Counter {
 public:
  explicit Counter(SemiringId sr) : sr_(sr) {}

  std::optional<Grade> count(const Term& term, const std::string& name, std::set<std::string> graded, bool gt) {
    const Grade zero = Grade::zero(sr_);
    auto plus = [](std::optional<Grade> a, std::optional<Grade> b) -> std::optional<Grade> {
      if (!a || !b) return std::nullopt;
      return *a + *b;
    };
    switch (term.kind) {
      case TermKind::Var: return term.name == name ? Grade::one(sr_) : zero;
      case TermKind::UnitJ:
      case TermKind::UnitI: return zero;
      case TermKind::Pair:
      case TermKind::App:
      case TermKind::LetUnitJ:
      case TermKind::LetUnitI: return plus(count(*term.a, name, graded, gt), count(*term.b, name, graded, gt));
      case TermKind::Lin: return count(*term.a, name, graded, false);
      case TermKind::Unlin: return count(*term.a, name, graded, false);
      case TermKind::Lam:
        if (term.name == name) return zero;
        graded.erase(term.name);
        return count(*term.a, name, graded, false);
      case TermKind::Grd: {
        auto usage = count(*term.a, name, graded, true);
        if (!usage) return std::nullopt;
        return *term.grade * *usage;
      }
      case TermKind::LetGrd: {
        auto head = count(*term.a, name, graded, false);
        graded.insert(term.name);
        // The bound variable may be used at most at the pattern grade.
        auto own = count(*term.b, term.name, graded, false);
        if (!own || !grade_leq(*own, *term.grade)) return std::nullopt;
        auto body = term.name == name ? std::optional<Grade>(zero) : count(*term.b, name, graded, false);
        return plus(head, body);
      }
      case TermKind::LetPair: {
        const bool graded_scrut = gt || graded_term(*term.a, graded);
        auto inner = graded;
        if (graded_scrut) {
          inner.insert(term.name);
          inner.insert(term.name2);
        } else {
          inner.erase(term.name);
          inner.erase(term.name2);
        }
        auto body = (term.name == name || term.name2 == name) ? std::optional<Grade>(zero) : count(*term.b, name, inner, gt);
        auto head = count(*term.a, name, graded, gt);
        if (!graded_scrut) return plus(head, body);
        auto sx = count(*term.b, term.name, inner, gt);
        auto sy = count(*term.b, term.name2, inner, gt);
        if (!sx || !sy || *sx != *sy || !head) return std::nullopt;
        return plus(*sx * *head, body);
      }
    }
    return std::nullopt;
  }

 private:
  // Whether the term inhabits a graded type, read off its head constructor.
  static bool graded_term(const Term& term, std::set<std::string> graded) {
    switch (term.kind) {
      case TermKind::Var: return graded.count(term.name) > 0;
      case TermKind::UnitJ:
      case TermKind::Lin: return true;
      case TermKind::Pair: return graded_term(*term.a, graded);
      case TermKind::LetUnitJ:
      case TermKind::LetUnitI: return graded_term(*term.b, graded);
      case TermKind::LetGrd:
        graded.insert(term.name);
        return graded_term(*term.b, graded);
      case TermKind::LetPair:
        if (graded_term(*term.a, graded)) {
          graded.insert(term.name);
          graded.insert(term.name2);
        } else {
          graded.erase(term.name);
          graded.erase(term.name2);
        }
        return graded_term(*term.b, graded);
      default: return false;
    }
  }

  SemiringId sr_;
};

}  // namespace

std::optional<Grade> usage_of(SemiringId sr, const Term& term, const std::string& name,
                              const std::set<std::string>& graded, Frag frag) {
  Counter c(sr);
  return c.count(term, name, graded, frag == Frag::GS);
}

TermP naive_subst(const TermP& body, const std::set<std::string>& vars, const TermP& arg) {
  const Term& term = *body;
  auto sub = [&](const TermP& p) { return p ? naive_subst(p, vars, arg) : p; };
  auto without = [&](std::initializer_list<std::string> bound) {
    std::set<std::string> v = vars;
    for (const auto& b : bound) v.erase(b);
    return v;
  };
  switch (term.kind) {
    case TermKind::Var: return vars.count(term.name) ? arg : body;
    case TermKind::UnitJ:
    case TermKind::UnitI: return body;
    case TermKind::Pair: return pair(sub(term.a), sub(term.b));
    case TermKind::App: return app(sub(term.a), sub(term.b));
    case TermKind::LetUnitJ: return let_unit_j(sub(term.a), sub(term.b));
    case TermKind::LetUnitI: return let_unit_i(sub(term.a), sub(term.b));
    case TermKind::Lin: return lin_term(sub(term.a));
    case TermKind::Unlin: return unlin(sub(term.a));
    case TermKind::Grd: return grd_term(*term.grade, sub(term.a));
    case TermKind::Lam: return lam(term.name, term.ann, naive_subst(term.a, without({term.name}), arg));
    case TermKind::LetGrd: return let_grd(*term.grade, term.name, sub(term.a), naive_subst(term.b, without({term.name}), arg));
    case TermKind::LetPair: return let_pair(term.name, term.name2, sub(term.a), naive_subst(term.b, without({term.name, term.name2}), arg));
  }
  return body;
}

std::set<std::string> printed_subformulas(const Type& ty) {
  std::set<std::string> out{print_type(ty)};
  for (const TypeP& kid : {ty.left, ty.right}) {
    if (!kid) continue;
    auto sub = printed_subformulas(*kid);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::size_t height(const Type& ty) {
  std::size_t h = 0;
  bool composite = false;
  for (const TypeP& kid : {ty.left, ty.right}) {
    if (!kid) continue;
    composite = true;
    h = std::max(h, height(*kid));
  }
  return composite ? h + 1 : 0;
}

}  // namespace mgl::oracle

namespace mgl::oracle {

namespace {

bool is_let(const Term& term) {
  return term.kind == TermKind::LetUnitJ || term.kind == TermKind::LetUnitI || term.kind == TermKind::LetPair ||
         term.kind == TermKind::LetGrd;
}

std::vector<std::string> let_binders(const Term& term) {
  switch (term.kind) {
    case TermKind::LetPair: return {term.name, term.name2};
    case TermKind::LetGrd: return {term.name};
    default: return {};
  }
}

// Same let with a new scrutinee and body.
TermP relet(const Term& let, TermP scrut, TermP body) {
  switch (let.kind) {
    case TermKind::LetUnitJ: return let_unit_j(std::move(scrut), std::move(body));
    case TermKind::LetUnitI: return let_unit_i(std::move(scrut), std::move(body));
    case TermKind::LetPair: return let_pair(let.name, let.name2, std::move(scrut), std::move(body));
    case TermKind::LetGrd: return let_grd(*let.grade, let.name, std::move(scrut), std::move(body));
    default: throw std::logic_error("not a let");
  }
}

class ConversionNf {
 public:
  explicit ConversionNf(const Term& term) {
    std::set<std::string> used;
    collect_names(term, used);
    supply_ = NameSupply(used);
  }

  TermP run(const TermP& term) { return canon(norm(term), 0); }

 private:
  // The let with its binders renamed apart from every name seen so far.
  TermP freshen(const TermP& let) {
    const Term& t = *let;
    auto binders = let_binders(t);
    if (binders.empty()) return let;
    std::map<std::string, TermP> sigma;
    std::vector<std::string> fresh;
    for (const auto& b : binders) {
      fresh.push_back(supply_.fresh("f"));
      sigma[b] = var(fresh.back());
    }
    TermP body = subst_map(t.b, sigma);
    if (t.kind == TermKind::LetPair) return let_pair(fresh[0], fresh[1], t.a, body);
    return let_grd(*t.grade, fresh[0], t.a, body);
  }

  // Beta-normal form; a let in an elimination position is floated out first
  // so the redex underneath becomes visible.
  TermP norm(const TermP& term) {
    const Term& t = *term;
    switch (t.kind) {
      case TermKind::Var:
      case TermKind::UnitJ:
      case TermKind::UnitI: return term;
      case TermKind::Pair: return pair(norm(t.a), norm(t.b));
      case TermKind::Lin: return lin_term(norm(t.a));
      case TermKind::Grd: return grd_term(*t.grade, norm(t.a));
      case TermKind::Lam: return lam(t.name, t.ann, norm(t.a));
      case TermKind::Unlin: {
        TermP arg = norm(t.a);
        if (arg->kind == TermKind::Lin) return arg->a;
        if (is_let(*arg)) {
          TermP let = freshen(arg);
          return norm(relet(*let, let->a, unlin(let->b)));
        }
        return unlin(arg);
      }
      case TermKind::App: {
        TermP fn = norm(t.a);
        TermP arg = norm(t.b);
        if (fn->kind == TermKind::Lam) return norm(subst_map(fn->a, {{fn->name, arg}}));
        if (is_let(*fn)) {
          TermP let = freshen(fn);
          return norm(relet(*let, let->a, app(let->b, arg)));
        }
        return app(fn, arg);
      }
      case TermKind::LetUnitJ:
      case TermKind::LetUnitI:
      case TermKind::LetPair:
      case TermKind::LetGrd: {
        TermP scrut = norm(t.a);
        if (is_let(*scrut)) {
          TermP outer = freshen(scrut);
          return norm(relet(*outer, outer->a, relet(t, outer->b, t.b)));
        }
        switch (t.kind) {
          case TermKind::LetUnitJ:
            if (scrut->kind == TermKind::UnitJ) return norm(t.b);
            break;
          case TermKind::LetUnitI:
            if (scrut->kind == TermKind::UnitI) return norm(t.b);
            break;
          case TermKind::LetPair:
            if (scrut->kind == TermKind::Pair) return norm(subst_map(t.b, {{t.name, scrut->a}, {t.name2, scrut->b}}));
            break;
          default:
            if (scrut->kind == TermKind::Grd) return norm(subst_map(t.b, {{t.name, scrut->a}}));
        }
        return relet(t, scrut, norm(t.b));
      }
    }
    throw std::logic_error("unknown term");
  }

  struct Frame {
    TermP let;  // body unused
    std::set<std::string> needs;
  };

  // Pulls every let out of `term` up to the nearest lambda whose variable it
  // depends on; returns the pulled lets in dependency order and the rest.
  std::pair<std::vector<Frame>, TermP> hoist(const TermP& term) {
    const Term& t = *term;
    auto frame = [](const TermP& let, std::set<std::string> needs) { return Frame{let, std::move(needs)}; };
    switch (t.kind) {
      case TermKind::Var:
      case TermKind::UnitJ:
      case TermKind::UnitI: return {{}, term};
      case TermKind::Lin:
      case TermKind::Unlin:
      case TermKind::Grd: {
        auto [lets, core] = hoist(t.a);
        TermP rebuilt = t.kind == TermKind::Lin     ? lin_term(core)
                        : t.kind == TermKind::Unlin ? unlin(core)
                                                    : grd_term(*t.grade, core);
        return {lets, rebuilt};
      }
      case TermKind::Pair:
      case TermKind::App: {
        auto [left, lcore] = hoist(t.a);
        auto [right, rcore] = hoist(t.b);
        left.insert(left.end(), right.begin(), right.end());
        return {left, t.kind == TermKind::Pair ? pair(lcore, rcore) : app(lcore, rcore)};
      }
      case TermKind::Lam: {
        auto [lets, core] = hoist(t.a);
        std::set<std::string> bound{t.name};
        std::vector<Frame> inside, outside;
        for (auto& f : lets) {
          bool depends = std::any_of(f.needs.begin(), f.needs.end(), [&](const std::string& n) { return bound.count(n) > 0; });
          if (depends) {
            for (const auto& b : let_binders(*f.let)) bound.insert(b);
            inside.push_back(f);
          } else {
            outside.push_back(f);
          }
        }
        return {outside, lam(t.name, t.ann, wrap(inside, core))};
      }
      default: {
        TermP let = freshen(term);
        auto [scrut_lets, scrut_core] = hoist(let->a);
        auto [body_lets, body_core] = hoist(let->b);
        std::vector<Frame> out = scrut_lets;
        auto fv = free_vars(*scrut_core);
        out.push_back(frame(relet(*let, scrut_core, unit_j_term()), fv));
        out.insert(out.end(), body_lets.begin(), body_lets.end());
        return {out, body_core};
      }
    }
  }

  static TermP wrap(const std::vector<Frame>& lets, TermP core) {
    for (auto it = lets.rbegin(); it != lets.rend(); ++it) core = relet(*it->let, it->let->a, core);
    return core;
  }

  // Hoists, merges lets with equal scrutinees, orders independent lets by
  // their printed scrutinee, and recurses under lambdas.
  // Canonical names depend only on the lambda depth and the let's index in
  // its block, so sort keys agree between alpha-equal inputs.
  TermP canon(const TermP& term, std::size_t level) {
    auto [lets, core] = hoist(term);
    std::map<std::string, TermP> renaming;
    std::vector<Frame> placed;
    std::vector<std::string> keys;
    std::set<std::string> pending_binders;
    for (const auto& f : lets) {
      for (const auto& b : let_binders(*f.let)) pending_binders.insert(b);
    }
    std::vector<bool> done(lets.size(), false);
    std::size_t index = 0;
    for (std::size_t round = 0; round < lets.size(); ++round) {
      std::optional<std::size_t> best;
      std::string best_key;
      for (std::size_t i = 0; i < lets.size(); ++i) {
        if (done[i]) continue;
        const auto& needs = lets[i].needs;
        if (std::any_of(needs.begin(), needs.end(), [&](const std::string& n) { return pending_binders.count(n) > 0; })) continue;
        TermP scrut = canon(subst_map(lets[i].let->a, renaming), level);
        std::string key = std::to_string(static_cast<int>(lets[i].let->kind)) + "|" +
                          (lets[i].let->grade ? to_string(*lets[i].let->grade) : "") + "|" + print_term(*scrut);
        if (!best || key < best_key) {
          best = i;
          best_key = key;
        }
      }
      if (!best) throw std::logic_error("cyclic let dependencies");
      const Frame& f = lets[*best];
      done[*best] = true;
      auto binders = let_binders(*f.let);
      for (const auto& b : binders) pending_binders.erase(b);
      auto same = std::find(keys.begin(), keys.end(), best_key);
      if (same != keys.end()) {
        auto earlier = let_binders(*placed[static_cast<std::size_t>(same - keys.begin())].let);
        for (std::size_t k = 0; k < binders.size(); ++k) renaming[binders[k]] = var(earlier[k]);
        continue;
      }
      std::vector<std::string> canonical;
      for (const auto& b : binders) {
        canonical.push_back("k" + std::to_string(level) + "_" + std::to_string(index++));
        renaming[b] = var(canonical.back());
      }
      Term copy = *f.let;
      if (!canonical.empty()) copy.name = canonical[0];
      if (canonical.size() > 1) copy.name2 = canonical[1];
      TermP scrut = canon(subst_map(f.let->a, renaming), level);
      placed.push_back(Frame{relet(copy, scrut, unit_j_term()), {}});
      keys.push_back(best_key);
    }
    return wrap(placed, under_lambdas(subst_map(core, renaming), level));
  }

  TermP under_lambdas(const TermP& term, std::size_t level) {
    const Term& t = *term;
    auto rec = [&](const TermP& sub) { return under_lambdas(sub, level); };
    switch (t.kind) {
      case TermKind::Lam: {
        std::string binder = "l" + std::to_string(level);
        return lam(binder, t.ann, canon(subst_map(t.a, {{t.name, var(binder)}}), level + 1));
      }
      case TermKind::Pair: return pair(rec(t.a), rec(t.b));
      case TermKind::App: return app(rec(t.a), rec(t.b));
      case TermKind::Lin: return lin_term(rec(t.a));
      case TermKind::Unlin: return unlin(rec(t.a));
      case TermKind::Grd: return grd_term(*t.grade, rec(t.a));
      default: return term;
    }
  }

  NameSupply supply_;
};

}  // namespace

TermP conversion_nf(const TermP& term) { return ConversionNf(*term).run(term); }

}  // namespace mgl::oracle
