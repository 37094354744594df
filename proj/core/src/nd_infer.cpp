#include <algorithm>

#include "mgl/nd_checker.hpp"
#include "mgl/parser.hpp"
#include "mgl/structural.hpp"

namespace mgl {

namespace {

struct Binding {
  std::string name;  // as written in the term
  int key;
  TypeP type;
  bool linear;
};

// Usage of each binding (by key) in one subterm.
struct Use {
  std::map<int, Grade> graded;
  std::map<int, int> linear;
  TypeP type;
};

// Elaborated subterm: the derivation plus, per binding, the hypothesis names
// standing for its occurrences.
struct Built {
  DerivP d;
  std::map<int, std::vector<std::string>> copies;
};

void merge_copies(std::map<int, std::vector<std::string>>& into, const std::map<int, std::vector<std::string>>& from) {
  for (const auto& [k, v] : from) into[k].insert(into[k].end(), v.begin(), v.end());
}

class Engine {
 public:
  Engine(SemiringId sr, InferOptions opts) : sr_(sr), opts_(opts) {}

  int bind(const std::string& name, TypeP type, bool linear) {
    int key = next_key_++;
    env_.push_back({name, key, std::move(type), linear});
    return key;
  }
  void unbind(std::size_t n) { env_.resize(env_.size() - n); }

  // ---------------------------------------------------------------- inference
  Use infer_gt(const Term& term) {
    switch (term.kind) {
      case TermKind::Var: {
        const Binding& b = lookup(term.name);
        if (b.linear) fail("linear variable '" + term.name + "' used in a graded term");
        Use usage;
        usage.graded.emplace(b.key, Grade::one(sr_));
        usage.type = b.type;
        return usage;
      }
      case TermKind::UnitJ:
        return Use{{}, {}, unit_j()};
      case TermKind::Pair: {
        Use a = infer_gt(*term.a);
        Use b = infer_gt(*term.b);
        Use usage = sum(a, b);
        usage.type = g_tensor(a.type, b.type);
        return usage;
      }
      case TermKind::LetUnitJ: {
        Use head = infer_gt(*term.a);
        expect(head.type, TypeKind::UnitJ, "scrutinee of `let unitJ` must have type J");
        Use body = infer_gt(*term.b);
        Use usage = sum(head, body);
        usage.type = body.type;
        return usage;
      }
      case TermKind::LetPair: {
        Use head = infer_gt(*term.a);
        expect(head.type, TypeKind::GTensor, "scrutinee of a graded `let (x,y)` must have a graded tensor type");
        int kx = bind(term.name, head.type->left, false);
        int ky = bind(term.name2, head.type->right, false);
        Use body = infer_gt(*term.b);
        unbind(2);
        Grade gx = take_graded(body, kx);
        Grade gy = take_graded(body, ky);
        if (gx != gy) joint_grade_error(term.name, gx, term.name2, gy);
        Use usage = sum(scale(gx, head), body);
        usage.type = body.type;
        return usage;
      }
      case TermKind::Lin: {
        std::size_t saved = floor_;
        floor_ = env_.size();
        Use a = infer_mt(*term.a);
        floor_ = saved;
        a.type = lin_type(a.type);
        return a;
      }
      default:
        fail("`" + print_term(term) + "` is not a graded term");
    }
  }

  Use infer_mt(const Term& term) {
    switch (term.kind) {
      case TermKind::Var: {
        const Binding& b = lookup(term.name);
        if (!b.linear) fail("graded variable '" + term.name + "' used in a linear term (use Unlin or a Grd pattern)");
        Use usage;
        usage.linear.emplace(b.key, 1);
        usage.type = b.type;
        return usage;
      }
      case TermKind::UnitI:
        return Use{{}, {}, unit_i()};
      case TermKind::Pair: {
        Use a = infer_mt(*term.a);
        Use b = infer_mt(*term.b);
        Use usage = sum(a, b);
        usage.type = l_tensor(a.type, b.type);
        return usage;
      }
      case TermKind::LetUnitI: {
        Use head = infer_mt(*term.a);
        expect(head.type, TypeKind::UnitI, "scrutinee of `let unitI` must have type I");
        Use body = infer_mt(*term.b);
        Use usage = sum(head, body);
        usage.type = body.type;
        return usage;
      }
      case TermKind::LetUnitJ: {
        Use head = infer_gt(*term.a);
        expect(head.type, TypeKind::UnitJ, "scrutinee of `let unitJ` must have type J");
        Use body = infer_mt(*term.b);
        Use usage = sum(head, body);
        usage.type = body.type;
        return usage;
      }
      case TermKind::LetPair: {
        bool linear_scrut = scrutinee_is_linear(*term.a);
        Use head = linear_scrut ? infer_mt(*term.a) : infer_gt(*term.a);
        if (linear_scrut) {
          expect(head.type, TypeKind::LTensor, "scrutinee of a linear `let (x,y)` must have a linear tensor type");
          int kx = bind(term.name, head.type->left, true);
          int ky = bind(term.name2, head.type->right, true);
          Use body = infer_mt(*term.b);
          unbind(2);
          take_linear(body, kx, term.name);
          take_linear(body, ky, term.name2);
          Use usage = sum(head, body);
          usage.type = body.type;
          return usage;
        }
        expect(head.type, TypeKind::GTensor, "scrutinee of `let (x,y)` must have a tensor type");
        int kx = bind(term.name, head.type->left, false);
        int ky = bind(term.name2, head.type->right, false);
        Use body = infer_mt(*term.b);
        unbind(2);
        Grade gx = take_graded(body, kx);
        Grade gy = take_graded(body, ky);
        if (gx != gy) joint_grade_error(term.name, gx, term.name2, gy);
        Use usage = sum(scale(gx, head), body);
        usage.type = body.type;
        return usage;
      }
      case TermKind::Lam: {
        if (!term.ann) fail("lambda binder '" + term.name + "' needs a type annotation");
        int k = bind(term.name, term.ann, true);
        Use body = infer_mt(*term.a);
        unbind(1);
        take_linear(body, k, term.name);
        body.type = lolli(term.ann, body.type);
        return body;
      }
      case TermKind::App: {
        Use f = infer_mt(*term.a);
        expect(f.type, TypeKind::Lolli, "applied term must have an implication type");
        Use a = infer_mt(*term.b);
        if (!type_eq(*f.type->left, *a.type)) {
          fail("argument has type " + print_type(*a.type) + ", expected " + print_type(*f.type->left));
        }
        Use usage = sum(f, a);
        usage.type = f.type->right;
        return usage;
      }
      case TermKind::Grd: {
        std::size_t saved = floor_;
        floor_ = env_.size();
        Use a = infer_gt(*term.a);
        floor_ = saved;
        Use usage = scale(*term.grade, a);
        usage.type = grd_type(*term.grade, a.type);
        return usage;
      }
      case TermKind::LetGrd: {
        Use head = infer_mt(*term.a);
        expect(head.type, TypeKind::Grd, "scrutinee of `let Grd` must have a Grd type");
        const Grade& grade = *head.type->grade;
        if (grade != *term.grade) {
          fail("pattern grade " + to_string(*term.grade) + " does not match scrutinee type " + print_type(*head.type));
        }
        int k = bind(term.name, head.type->left, false);
        Use body = infer_mt(*term.b);
        unbind(1);
        Grade g = take_graded(body, k);
        check_grd_binder(term.name, g, grade);
        Use usage = sum(head, body);
        usage.type = body.type;
        return usage;
      }
      case TermKind::Unlin: {
        Use a = infer_gt(*term.a);
        expect(a.type, TypeKind::Lin, "argument of Unlin must have a Lin type");
        a.type = a.type->left;
        return a;
      }
      default:
        fail("`" + print_term(term) + "` is not a linear term");
    }
  }

  // ------------------------------------------------------------- elaboration
  Built elab_gt(const Term& term) {
    switch (term.kind) {
      case TermKind::Var: {
        const Binding& b = lookup(term.name);
        std::string c = supply_.fresh(term.name);
        return Built{make_deriv(sr_, Rule::IdGT, Params{}.named(c).typed(b.type), {}), {{b.key, {c}}}};
      }
      case TermKind::UnitJ:
        return Built{make_deriv(sr_, Rule::UnitJI, {}, {}), {}};
      case TermKind::Pair: {
        Built a = elab_gt(*term.a);
        Built b = elab_gt(*term.b);
        merge_copies(a.copies, b.copies);
        a.d = make_deriv(sr_, Rule::BoxtimesI, {}, {a.d, b.d});
        return a;
      }
      case TermKind::LetUnitJ: {
        Built head = elab_gt(*term.a);
        Built body = elab_gt(*term.b);
        merge_copies(head.copies, body.copies);
        head.d = make_deriv(sr_, Rule::UnitJE, Params{}.at(0).graded(Grade::one(sr_)), {head.d, body.d});
        return head;
      }
      case TermKind::LetPair: {
        Built head = elab_gt(*term.a);
        const TypeP& st = head.d->concl.type;
        int kx = bind(term.name, st->left, false);
        int ky = bind(term.name2, st->right, false);
        Built body = elab_gt(*term.b);
        unbind(2);
        return finish_graded_pair(std::move(head), std::move(body), kx, ky, term, Rule::BoxtimesE);
      }
      case TermKind::Lin: {
        std::size_t saved = floor_;
        floor_ = env_.size();
        Built a = elab_mt(*term.a);
        floor_ = saved;
        a.d = make_deriv(sr_, Rule::LinI, {}, {a.d});
        return a;
      }
      default:
        fail("`" + print_term(term) + "` is not a graded term");
    }
  }

  Built elab_mt(const Term& term) {
    switch (term.kind) {
      case TermKind::Var: {
        const Binding& b = lookup(term.name);
        std::string c = supply_.fresh(term.name);
        return Built{make_deriv(sr_, Rule::IdMT, Params{}.named(c).typed(b.type), {}), {{b.key, {c}}}};
      }
      case TermKind::UnitI:
        return Built{make_deriv(sr_, Rule::UnitII, {}, {}), {}};
      case TermKind::Pair: {
        Built a = elab_mt(*term.a);
        Built b = elab_mt(*term.b);
        merge_copies(a.copies, b.copies);
        a.d = make_deriv(sr_, Rule::OtimesI, {}, {a.d, b.d});
        return a;
      }
      case TermKind::LetUnitI: {
        Built head = elab_mt(*term.a);
        Built body = elab_mt(*term.b);
        merge_copies(head.copies, body.copies);
        head.d = make_deriv(sr_, Rule::UnitIE, Params{}.at(0), {head.d, body.d});
        return head;
      }
      case TermKind::LetUnitJ: {
        Built head = elab_gt(*term.a);
        Built body = elab_mt(*term.b);
        merge_copies(head.copies, body.copies);
        head.d = make_deriv(sr_, Rule::UnitJEMT, Params{}.at(0).graded(Grade::one(sr_)), {head.d, body.d});
        return head;
      }
      case TermKind::LetPair: {
        if (scrutinee_is_linear(*term.a)) {
          Built head = elab_mt(*term.a);
          const TypeP& st = head.d->concl.type;
          int kx = bind(term.name, st->left, true);
          int ky = bind(term.name2, st->right, true);
          Built body = elab_mt(*term.b);
          unbind(2);
          std::string xn = single_copy(body, kx, term.name);
          std::string yn = single_copy(body, ky, term.name2);
          auto order = lnames(body.d->concl);
          order.erase(std::find(order.begin(), order.end(), xn));
          order.erase(std::find(order.begin(), order.end(), yn));
          order.push_back(xn);
          order.push_back(yn);
          DerivP b = permute_to(body.d, gnames(body.d->concl), order);
          merge_copies(head.copies, body.copies);
          head.d = make_deriv(sr_, Rule::OtimesE, Params{}.at(order.size() - 2), {head.d, b});
          return head;
        }
        Built head = elab_gt(*term.a);
        const TypeP& st = head.d->concl.type;
        int kx = bind(term.name, st->left, false);
        int ky = bind(term.name2, st->right, false);
        Built body = elab_mt(*term.b);
        unbind(2);
        return finish_graded_pair(std::move(head), std::move(body), kx, ky, term, Rule::BoxtimesEMT);
      }
      case TermKind::Lam: {
        int k = bind(term.name, term.ann, true);
        Built body = elab_mt(*term.a);
        unbind(1);
        std::string xn = single_copy(body, k, term.name);
        auto order = lnames(body.d->concl);
        order.erase(std::find(order.begin(), order.end(), xn));
        order.push_back(xn);
        body.d = make_deriv(sr_, Rule::LolliI, {}, {permute_to(body.d, gnames(body.d->concl), order)});
        return body;
      }
      case TermKind::App: {
        Built f = elab_mt(*term.a);
        Built a = elab_mt(*term.b);
        merge_copies(f.copies, a.copies);
        f.d = make_deriv(sr_, Rule::LolliE, {}, {f.d, a.d});
        return f;
      }
      case TermKind::Grd: {
        std::size_t saved = floor_;
        floor_ = env_.size();
        Built a = elab_gt(*term.a);
        floor_ = saved;
        a.d = make_deriv(sr_, Rule::GrdI, Params{}.graded(*term.grade), {a.d});
        return a;
      }
      case TermKind::LetGrd: {
        Built head = elab_mt(*term.a);
        const TypeP& st = head.d->concl.type;
        const Grade& grade = *st->grade;
        int k = bind(term.name, st->left, false);
        Built body = elab_mt(*term.b);
        unbind(1);
        std::string xn = gather(body, k, st->left);
        std::size_t at = *find_g(body.d->concl.gctx, xn);
        const Grade g = body.d->concl.gctx[at].grade;
        check_grd_binder(term.name, g, grade);
        if (g != grade) {
          GradeVec v = grades_of(body.d->concl.gctx);
          v[at] = grade;
          body.d = make_deriv(sr_, Rule::GSub, Params{}.vector(v), {body.d});
        }
        merge_copies(head.copies, body.copies);
        head.d = make_deriv(sr_, Rule::GrdE, Params{}.at(at), {head.d, body.d});
        return head;
      }
      case TermKind::Unlin: {
        Built a = elab_gt(*term.a);
        a.d = make_deriv(sr_, Rule::LinE, {}, {a.d});
        return a;
      }
      default:
        fail("`" + print_term(term) + "` is not a linear term");
    }
  }

  // Contracts all occurrences of binding `key` into one hypothesis (weakening
  // one in when unused) and returns its name.
  std::string gather(Built& b, int key, const TypeP& type) {
    auto it = b.copies.find(key);
    std::vector<std::string> cs = it == b.copies.end() ? std::vector<std::string>{} : it->second;
    b.copies.erase(key);
    if (cs.empty()) {
      std::string n = supply_.fresh("w");
      b.d = weaken(b.d, n, type);
      return n;
    }
    for (std::size_t i = 1; i < cs.size(); ++i) b.d = contract(b.d, cs[0], cs[i]);
    return cs[0];
  }

  NameSupply& supply() { return supply_; }
  SemiringId semiring() const { return sr_; }

  [[noreturn]] static void fail(const std::string& msg) { throw CheckError(msg); }

  std::string single_copy(Built& b, int key, const std::string& name) {
    auto it = b.copies.find(key);
    std::size_t n = it == b.copies.end() ? 0 : it->second.size();
    if (n != 1) fail("linear variable '" + name + "' used " + std::to_string(n) + " times");
    std::string c = it->second[0];
    b.copies.erase(it);
    return c;
  }

 private:
  const Binding& lookup(const std::string& name) const {
    for (std::size_t i = env_.size(); i-- > 0;) {
      if (env_[i].name != name) continue;
      if (env_[i].linear && i < floor_) {
        fail("linear variable '" + name + "' is not available under Lin or Grd");
      }
      return env_[i];
    }
    fail("unbound variable '" + name + "'");
  }

  bool scrutinee_is_linear(const Term& term) {
    std::size_t saved = env_.size();
    std::size_t saved_floor = floor_;
    try {
      infer_mt(term);
      return true;
    } catch (const CheckError&) {
      env_.resize(saved);
      floor_ = saved_floor;
      return false;
    }
  }

  static void expect(const TypeP& ty, TypeKind k, const std::string& msg) {
    if (ty->kind != k) fail(msg + ", found " + print_type(*ty));
  }

  Use sum(const Use& a, const Use& b) const {
    Use usage = a;
    for (const auto& [k, g] : b.graded) {
      auto it = usage.graded.find(k);
      if (it == usage.graded.end()) {
        usage.graded.emplace(k, g);
      } else {
        it->second = it->second + g;
      }
    }
    for (const auto& [k, n] : b.linear) usage.linear[k] += n;
    return usage;
  }

  Use scale(const Grade& grade, Use usage) const {
    for (auto& [k, g] : usage.graded) g = grade * g;
    return usage;
  }

  Grade take_graded(Use& usage, int key) const {
    auto it = usage.graded.find(key);
    if (it == usage.graded.end()) return Grade::zero(sr_);
    Grade g = it->second;
    usage.graded.erase(it);
    return g;
  }

  static void take_linear(Use& usage, int key, const std::string& name) {
    auto it = usage.linear.find(key);
    int n = it == usage.linear.end() ? 0 : it->second;
    if (n != 1) fail("linear variable '" + name + "' used " + std::to_string(n) + " times");
    usage.linear.erase(it);
  }

  static void joint_grade_error(const std::string& var, const Grade& gx, const std::string& var2, const Grade& gy) {
    fail("components '" + var + "' and '" + var2 + "' are used at different grades (" + to_string(gx) + " vs " +
         to_string(gy) + ")");
  }

  void check_grd_binder(const std::string& var, const Grade& g, const Grade& grade) const {
    bool ok = opts_.strict_grd ? g == grade : grade_leq(g, grade);
    if (!ok) {
      fail("'" + var + "' is used at grade " + to_string(g) + ", which " +
           (opts_.strict_grd ? "differs from " : "is not below ") + "its pattern grade " + to_string(grade));
    }
  }

  Built finish_graded_pair(Built head, Built body, int kx, int ky, const Term& term, Rule rule) {
    const TypeP& st = head.d->concl.type;
    std::string xn = gather(body, kx, st->left);
    std::string yn = gather(body, ky, st->right);
    const Grade gx = body.d->concl.gctx[*find_g(body.d->concl.gctx, xn)].grade;
    const Grade gy = body.d->concl.gctx[*find_g(body.d->concl.gctx, yn)].grade;
    if (gx != gy) joint_grade_error(term.name, gx, term.name2, gy);
    auto g = gnames(body.d->concl);
    g.erase(std::find(g.begin(), g.end(), xn));
    g.erase(std::find(g.begin(), g.end(), yn));
    g.push_back(xn);
    g.push_back(yn);
    DerivP b = permute_to(body.d, g, lnames(body.d->concl));
    merge_copies(head.copies, body.copies);
    head.d = make_deriv(sr_, rule, Params{}.at(g.size() - 2), {head.d, b});
    return head;
  }

  SemiringId sr_;
  InferOptions opts_;
  std::vector<Binding> env_;
  std::size_t floor_ = 0;
  int next_key_ = 0;
  NameSupply supply_;
};

Usage infer_root(SemiringId sr, const TermP& term, const GCtx& delta, const LCtx& gamma, Frag frag,
                 const InferOptions& opts) {
  Engine e(sr, opts);
  std::vector<int> gkeys, lkeys;
  for (const auto& en : delta) gkeys.push_back(e.bind(en.name, en.type, false));
  for (const auto& en : gamma) lkeys.push_back(e.bind(en.name, en.type, true));
  Use usage = frag == Frag::GS ? e.infer_gt(*term) : e.infer_mt(*term);
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    auto it = usage.linear.find(lkeys[i]);
    int n = it == usage.linear.end() ? 0 : it->second;
    if (n != 1) Engine::fail("linear variable '" + gamma[i].name + "' used " + std::to_string(n) + " times");
  }
  Usage out;
  for (int k : gkeys) {
    auto it = usage.graded.find(k);
    out.grades.push_back(it == usage.graded.end() ? Grade::zero(sr) : it->second);
  }
  out.type = usage.type;
  return out;
}

}  // namespace

Usage infer_usage_gt(SemiringId sr, const TermP& term, const GCtx& delta, const InferOptions& opts) {
  return infer_root(sr, term, delta, {}, Frag::GS, opts);
}

Usage infer_usage_mt(SemiringId sr, const TermP& lterm, const GCtx& delta, const LCtx& gamma, const InferOptions& opts) {
  return infer_root(sr, lterm, delta, gamma, Frag::MS, opts);
}

DerivP elaborate_nd(SemiringId sr, const Judgment& goal, const InferOptions& opts) {
  // Inference first: it reports type and linearity errors in source terms.
  Usage usage = infer_root(sr, goal.term, goal.gctx, goal.lctx, goal.frag, opts);
  if (!type_eq(*usage.type, *goal.type)) {
    throw CheckError("term has type " + print_type(*usage.type) + ", goal declares " + print_type(*goal.type));
  }
  for (std::size_t i = 0; i < goal.gctx.size(); ++i) {
    if (!grade_leq(usage.grades[i], goal.gctx[i].grade)) {
      throw CheckError("'" + goal.gctx[i].name + "' is used at grade " + to_string(usage.grades[i]) +
                       ", above its declared grade " + to_string(goal.gctx[i].grade));
    }
  }

  Engine e(sr, opts);
  std::set<std::string> reserved;
  collect_names(*goal.term, reserved);
  for (const auto& n : ctx_names(goal)) reserved.insert(n);
  for (const auto& n : reserved) e.supply().reserve(n);
  std::vector<int> gkeys, lkeys;
  for (const auto& en : goal.gctx) gkeys.push_back(e.bind(en.name, en.type, false));
  for (const auto& en : goal.lctx) lkeys.push_back(e.bind(en.name, en.type, true));
  Built b = goal.frag == Frag::GS ? e.elab_gt(*goal.term) : e.elab_mt(*goal.term);

  std::map<std::string, std::string> rename;
  for (std::size_t i = 0; i < goal.gctx.size(); ++i) {
    auto it = b.copies.find(gkeys[i]);
    if (it == b.copies.end() || it->second.empty()) {
      b.d = weaken(b.d, goal.gctx[i].name, goal.gctx[i].type);
      continue;
    }
    const auto& cs = it->second;
    for (std::size_t k = 1; k < cs.size(); ++k) b.d = contract(b.d, cs[0], cs[k]);
    rename.emplace(cs[0], goal.gctx[i].name);
  }
  for (std::size_t i = 0; i < goal.lctx.size(); ++i) {
    rename.emplace(e.single_copy(b, lkeys[i], goal.lctx[i].name), goal.lctx[i].name);
  }
  b.d = rename_deriv(b.d, rename, e.supply());
  DerivP out = adjust(b.d, goal);
  if (!alpha_eq(*out->concl.term, *goal.term)) {
    throw InternalError("elaboration changed the term: " + print_term(*out->concl.term));
  }
  return out;
}

}  // namespace mgl
