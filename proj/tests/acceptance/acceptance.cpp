// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "golden.hpp"
#include "mgl/cut_elim.hpp"
#include "mgl/eq_theory.hpp"
#include "mgl/nd_checker.hpp"
#include "mgl/parser.hpp"
#include "mgl/sc_checker.hpp"
#include "mgl/structural.hpp"
#include "mgl/translate.hpp"
#include "oracles.hpp"

using namespace mgl;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  std::vector<std::string> failures;

  void fail(const std::string& why) {
    pass = false;
    if (failures.size() < 5) failures.push_back(why);
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void semiring_laws(Outcome& o) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t cases = 0;
  for (auto sr : all_semirings()) {
    const Grade zero = Grade::zero(sr), one = Grade::one(sr);
    const std::string inst(semiring_name(sr));
    for (int i = 0; i < 1000; ++i, ++cases) {
      auto va = oracle::random_value(sr, rng), vb = oracle::random_value(sr, rng), vc = oracle::random_value(sr, rng);
      Grade a = oracle::to_grade(sr, va), b = oracle::to_grade(sr, vb), c = oracle::to_grade(sr, vc);
      o.expect((a + b) + c == a + (b + c), inst + ": + associative");
      o.expect((a * b) * c == a * (b * c), inst + ": * associative");
      o.expect(a + b == b + a, inst + ": + commutative");
      o.expect(a * b == b * a, inst + ": * commutative");
      o.expect(a + zero == a && zero + a == a, inst + ": 0 unit");
      o.expect(a * one == a && one * a == a, inst + ": 1 unit");
      o.expect(a * (b + c) == a * b + a * c, inst + ": left distributive");
      o.expect((a + b) * c == a * c + b * c, inst + ": right distributive");
      o.expect(zero * a == zero && a * zero == zero, inst + ": annihilation");
      o.expect(grade_leq(a, a), inst + ": reflexive");
      if (grade_leq(a, b) && grade_leq(b, c)) o.expect(grade_leq(a, c), inst + ": transitive");
      if (grade_leq(a, b)) {
        o.expect(grade_leq(a + c, b + c), inst + ": + monotone");
        o.expect(grade_leq(a * c, b * c) && grade_leq(c * a, c * b), inst + ": * monotone");
      }
      o.expect(a + b == oracle::to_grade(sr, oracle::add(sr, va, vb)), inst + ": + agrees with oracle");
      o.expect(a * b == oracle::to_grade(sr, oracle::mul(sr, va, vb)), inst + ": * agrees with oracle");
    }
  }
  const double secs = seconds_since(t0);
  o.expect(secs < 1.0, "took longer than 1 s");
  o.note << all_semirings().size() << " instances, " << cases << " random triples, " << secs << " s (limit 1 s)";
}

// ---------------------------------------------------------------------------

void promotion_example(Outcome& o) {
  const auto nl = SemiringId::NatLeq;
  const Grade six = Grade::natural(nl, 2) * Grade::natural(nl, 3);
  o.expect(six == Grade::natural(nl, 6), "2 * 3 != 6");
  const std::string expect = "MS: x @ 6 : X ; |- Grd[2] (x,x) : Grd[2](X >< X)";
  for (auto [label, build, check] :
       {std::tuple<const char*, std::function<DerivP(SemiringId)>, std::function<Judgment(const Deriv&)>>{
            "SC", [](SemiringId inst) { return promotion_example_sc(inst); }, check_sc},
        {"ND", [](SemiringId inst) { return promotion_example_nd(inst); }, check_nd}}) {
    try {
      DerivP d = build(nl);
      Judgment j = check(*d);
      o.expect(j.gctx.size() == 1 && j.gctx[0].grade == six, std::string(label) + ": grade is not 6");
      o.expect(print_judgment(j) == expect, std::string(label) + ": conclusion " + print_judgment(j));
    } catch (const std::exception& e) {
      o.fail(std::string(label) + " in nat-leq: " + e.what());
    }
    try {
      build(SemiringId::NatExact);
      o.fail(std::string(label) + ": nat-exact accepted 2 <= 3");
    } catch (const CheckError& e) {
      o.expect(e.bare_message().find("2 to 3") != std::string::npos, std::string(label) + ": wrong rejection " + e.what());
    }
  }
  o.note << "SC and ND conclude `" << expect << "` in nat-leq; both rejected in nat-exact";
}

// ---------------------------------------------------------------------------

// Cut-free proof of `z @ 1 : Lin(A) ; |- Unlin-ish : A` for any linear A.
DerivP dereliction(SemiringId sr, const TypeP& a, const std::string& hyp_name) {
  DerivP eta = eta_expand(sr, a, hyp_name + "_a");
  return make_deriv(sr, Rule::LinL, Params{}.at(0).at(0).named(hyp_name), {eta});
}

void derived_rules(Outcome& o) {
  std::size_t combos = 0;
  for (auto sr : all_semirings()) {
    std::mt19937_64 rng(99 + static_cast<unsigned>(sr));
    const std::vector<TypeP> linear = {l_atom("A"), l_atom("B"), unit_i(), l_tensor(l_atom("A"), l_atom("B")),
                                       lolli(l_atom("A"), l_atom("B"))};
    const std::vector<TypeP> graded = {g_atom("X"), g_atom("Y"), unit_j(), g_tensor(g_atom("X"), g_atom("Y")),
                                       lin_type(l_atom("A"))};
    for (int i = 0; i < 100; ++i, ++combos) {
      const Grade grade = oracle::to_grade(sr, oracle::random_value(sr, rng));
      const TypeP a = linear[rng() % linear.size()];
      const TypeP first_ty = graded[rng() % graded.size()];
      const TypeP b = linear[rng() % linear.size()];
      const std::string tag = std::string(semiring_name(sr)) + " r=" + to_string(grade) + " A=" + print_type(*a);
      try {
        DerivP intro = derive_box_intro(grade, dereliction(sr, a, "z"));
        o.expect(judgment_eq(check_sc(*intro), intro->concl), tag + ": box intro does not recheck");
        o.expect(type_eq(intro->concl.type, grd_type(grade, lin_type(a))), tag + ": box intro type");
        o.expect(intro->concl.gctx.size() == 1 && intro->concl.gctx[0].grade == grade * Grade::one(sr),
                 tag + ": box intro grade");

        DerivP boxed = derive_box_intro(grade, dereliction(sr, a, "u"));
        DerivP elim = derive_box_elim(boxed, intro, 0);
        o.expect(judgment_eq(check_sc(*elim), elim->concl), tag + ": box elim does not recheck");
        o.expect(type_eq(elim->concl.type, intro->concl.type), tag + ": box elim type");

        DerivP graded_premise = make_deriv(sr, Rule::GrdR, Params{}.graded(grade), {eta_expand(sr, first_ty, "x")});
        DerivP right = derive_gimpl_right(graded_premise, 0, "g");
        o.expect(judgment_eq(check_sc(*right), right->concl), tag + ": graded implication right does not recheck");
        o.expect(type_eq(right->concl.type, lolli(grd_type(grade, first_ty), grd_type(grade, first_ty))), tag + ": graded implication right type");

        DerivP left = derive_gimpl_left(grade, eta_expand(sr, first_ty, "x"), eta_expand(sr, b, "y"), 0, "f");
        o.expect(judgment_eq(check_sc(*left), left->concl), tag + ": graded implication left does not recheck");
        o.expect(type_eq(left->concl.type, b), tag + ": graded implication left type");
        auto f = find_l(left->concl.lctx, "f");
        o.expect(f && type_eq(left->concl.lctx[*f].type, lolli(grd_type(grade, first_ty), b)), tag + ": implication hypothesis");
      } catch (const std::exception& e) {
        o.fail(tag + ": " + e.what());
      }
    }
  }
  o.note << combos << " (grade, formula) combinations over " << all_semirings().size()
         << " semirings; box intro/elim and graded implication left/right";
}

// ---------------------------------------------------------------------------

void grd_distribution(Outcome& o) {
  std::vector<Grade> grades = {Grade::zero(SemiringId::N01w), Grade::one(SemiringId::N01w), Grade::omega()};
  std::mt19937_64 rng(4242);
  for (auto sr : {SemiringId::NatExact, SemiringId::NatLeq}) {
    for (int i = 0; i < 20; ++i) grades.push_back(Grade::natural(sr, rng() % 1000));
  }
  for (const Grade& grade : grades) {
    const std::string tag = std::string(semiring_name(grade.semiring())) + " r=" + to_string(grade);
    try {
      DerivP d = derive_grd_tensor_dist(grade, g_atom("X"), g_atom("Y"));
      o.expect(judgment_eq(check_sc(*d), d->concl), tag + ": does not recheck");
      o.expect(d->concl.gctx.empty() && d->concl.lctx.empty(), tag + ": contexts not empty");
      const std::string rs = to_string(grade);
      o.expect(print_type(*d->concl.type) == "Grd[" + rs + "](X >< Y) -o Grd[" + rs + "](X) * Grd[" + rs + "](Y)",
               tag + ": type " + print_type(*d->concl.type));
      o.expect(is_cut_free(*d), tag + ": not cut-free");
    } catch (const std::exception& e) {
      o.fail(tag + ": " + e.what());
    }
  }
  o.note << grades.size() << " grades (0, 1, w in n01w; 20 random naturals each in nat-exact and nat-leq)";
}

// ---------------------------------------------------------------------------

void check_normalization(Outcome& o, const DerivP& d, const std::string& tag, std::size_t& steps) {
  Normalized n = eliminate_cuts(d);
  steps += n.trace.size();
  o.expect(is_cut_free(*n.deriv), tag + ": output has cuts");
  o.expect(same_sequent(check_sc(*n.deriv), d->concl), tag + ": sequent changed");
  o.expect(check_subformula(*n.deriv), tag + ": subformula property fails");
  std::size_t last_rank = cut_rank(*d);
  for (const auto& step : n.trace) {
    o.expect(step.cut_rank_before == last_rank, tag + ": trace is not contiguous");
    o.expect(step.cut_rank_after <= step.cut_rank_before, tag + ": cut rank increased at " + step.position);
    o.expect(step.cut_rank_after < step.cut_rank_before || step.max_rank_cuts_after < step.max_rank_cuts_before,
             tag + ": measure did not decrease at " + step.position);
    o.expect(step.local_cut_rank_after <= step.formula_rank, tag + ": replacement exceeds the cut formula's rank");
    last_rank = step.cut_rank_after;
  }
  o.expect(last_rank == 0, tag + ": final cut rank");
}

void cut_elimination(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t steps = 0;

  const auto sr = SemiringId::NatLeq;
  Normalized notable = eliminate_cuts(notable_cut_example(sr));
  std::size_t principal = 0;
  for (const auto& step : notable.trace) {
    principal += step.family == CaseFamily::Principal;
    principal += static_cast<std::size_t>(std::count(step.inner.begin(), step.inner.end(), CaseFamily::Principal));
  }
  o.expect(principal == 3, "worked example: " + std::to_string(principal) + " principal steps, expected 3");
  DerivP eta = eta_expand(sr, lin_type(l_atom("A")), "u");
  o.expect(alpha_eq(notable.deriv->concl.term, eta->concl.term), "worked example: not the eta-expanded identity");
  check_normalization(o, notable_cut_example(sr), "worked example", steps);

  std::map<CutFlavor, std::size_t> per_flavor;
  std::size_t count = 0, max_depth = 0;
  for (auto inst : all_semirings()) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      for (auto flavor : {CutFlavor::GS, CutFlavor::GSIntoMS, CutFlavor::MS}) {
        DerivP d = gen_sc_cut(inst, seed, 8, flavor);
        max_depth = std::max(max_depth, depth(*d));
        const std::string tag = std::string(semiring_name(inst)) + " seed " + std::to_string(seed) + " flavor " +
                                std::to_string(static_cast<int>(flavor));
        try {
          check_normalization(o, d, tag, steps);
        } catch (const std::exception& e) {
          o.fail(tag + ": " + e.what());
        }
        ++per_flavor[flavor];
        ++count;
      }
    }
  }
  o.expect(max_depth <= 8, "generated depth above 8");
  const double secs = seconds_since(t0);
  o.expect(secs < 60.0, "took longer than 60 s");
  o.note << "worked example: " << principal << " principal steps to the eta-expanded identity; " << count
         << " generated cuts (" << per_flavor[CutFlavor::GS] << " cut_GS, " << per_flavor[CutFlavor::GSIntoMS]
         << " gcut_MS, " << per_flavor[CutFlavor::MS] << " cut_MS; depth <= " << max_depth << "), " << steps
         << " reduction steps, " << secs << " s (limit 60 s)";
}

// ---------------------------------------------------------------------------

void interderivability(Outcome& o) {
  std::size_t corpus = 0, random = 0;
  auto both_ways = [&](const DerivP& d, const std::string& tag) {
    try {
      if (system_of(*d) == System::SC) {
        DerivP nd = sc_to_nd(d);
        o.expect(judgment_eq(check_nd(*nd), d->concl), tag + ": SC to ND changed the judgment or term");
        DerivP back = nd_to_sc(nd);
        o.expect(judgment_eq(check_sc(*back), d->concl), tag + ": round trip changed the judgment or term");
      } else {
        DerivP sc = nd_to_sc(d);
        o.expect(judgment_eq(check_sc(*sc), d->concl), tag + ": ND to SC changed the judgment or term");
        DerivP back = sc_to_nd(sc);
        o.expect(judgment_eq(check_nd(*back), d->concl), tag + ": round trip changed the judgment or term");
      }
    } catch (const std::exception& e) {
      o.fail(tag + ": " + e.what());
    }
  };
  for (const auto& item : testing::load_corpus()) {
    both_ways(item.deriv, item.file + ":" + item.name);
    ++corpus;
  }
  for (auto sr : all_semirings()) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      both_ways(gen_nd_derivation(sr, seed, 7, seed % 2 ? Frag::GS : Frag::MS),
                std::string(semiring_name(sr)) + " seed " + std::to_string(seed));
      ++random;
    }
  }
  o.expect(random >= 300, "fewer than 300 random derivations");
  o.note << corpus << " corpus items and " << random << " random ND derivations; terms alpha-equal in both directions";
}

// ---------------------------------------------------------------------------

struct SubstPair {
  DerivP arg;
  DerivP body;
  std::vector<std::string> occ;
};

bool inferable(const Judgment& j) {
  const SemiringId sr = j.gctx.empty() ? SemiringId::NatExact : j.gctx[0].grade.semiring();
  if (j.gctx.empty()) return true;
  try {
    elaborate_nd(sr, j);
    return true;
  } catch (const CheckError&) {
    return false;
  }
}

std::optional<SubstPair> make_pair(SemiringId sr, std::uint64_t seed, Frag frag) {
  std::mt19937_64 rng(seed * 7919 + static_cast<unsigned>(sr));
  DerivP body = gen_nd_derivation(sr, seed, 6, frag);
  const GCtx& g = body->concl.gctx;
  if (g.empty()) return std::nullopt;
  const TypeP type = g[rng() % g.size()].type;
  std::vector<std::string> occ;
  for (const auto& e : g) {
    if (type_eq(e.type, type) && (occ.empty() || rng() % 2)) occ.push_back(e.name);
  }
  DerivP arg = gen_nd_of_type(sr, seed + 100000, 5, type);
  // Keep the argument's hypotheses apart from the body's names.
  std::set<std::string> used;
  collect_deriv_names(*body, used);
  collect_deriv_names(*arg, used);
  NameSupply supply(used);
  std::map<std::string, std::string> rename;
  for (const auto& e : arg->concl.gctx) rename[e.name] = supply.fresh("s");
  arg = rename_deriv(arg, rename, supply);
  if (!inferable(arg->concl) || !inferable(body->concl)) return std::nullopt;
  return SubstPair{arg, body, occ};
}

// The context the substitution lemma predicts: the occurrences removed, the
// argument's hypotheses spliced in at the first one with grades boxast(delta, delta2, n).
Judgment predicted(const SubstPair& p) {
  const SemiringId sr = p.body->semiring;
  const Judgment& b = p.body->concl;
  const Judgment& a = p.arg->concl;
  GradeVec delta;
  std::size_t first = b.gctx.size();
  for (std::size_t i = 0; i < b.gctx.size(); ++i) {
    if (std::find(p.occ.begin(), p.occ.end(), b.gctx[i].name) != p.occ.end()) {
      delta.push_back(b.gctx[i].grade);
      first = std::min(first, i);
    }
  }
  GradeVec spliced = boxast(delta, grades_of(a.gctx), delta.size());
  Judgment out = b;
  out.gctx.clear();
  for (std::size_t i = 0; i < b.gctx.size(); ++i) {
    if (i == first) {
      for (std::size_t k = 0; k < a.gctx.size(); ++k) out.gctx.push_back({a.gctx[k].name, spliced[k], a.gctx[k].type});
    }
    if (std::find(p.occ.begin(), p.occ.end(), b.gctx[i].name) == p.occ.end()) out.gctx.push_back(b.gctx[i]);
  }
  out.term = multi_subst(b.term, p.occ, a.term);
  (void)sr;
  return out;
}

void substitution_lemma(Outcome& o) {
  std::map<Frag, std::size_t> accepted;
  std::size_t skipped = 0;
  for (auto frag : {Frag::GS, Frag::MS}) {
    std::uint64_t seed = 0;
    while (accepted[frag] < 300 && seed < 20000) {
      for (auto sr : all_semirings()) {
        if (accepted[frag] >= 300) break;
        auto pair = make_pair(sr, seed, frag);
        if (!pair) {
          ++skipped;
          continue;
        }
        ++accepted[frag];
        const std::string tag = std::string(semiring_name(sr)) + " seed " + std::to_string(seed) +
                                (frag == Frag::GS ? " GS" : " MS");
        try {
          Judgment goal = predicted(*pair);
          Usage usage = frag == Frag::GS ? infer_usage_gt(sr, goal.term, goal.gctx)
                                     : infer_usage_mt(sr, goal.term, goal.gctx, goal.lctx);
          o.expect(vec_leq(usage.grades, grades_of(goal.gctx)), tag + ": inferred usage exceeds the prediction");
          DerivP e = elaborate_nd(sr, goal);
          o.expect(judgment_eq(check_nd(*e), goal), tag + ": elaboration does not conclude the prediction");
          DerivP sub = nd_subst(pair->arg, pair->body, pair->occ);
          o.expect(judgment_eq(check_nd(*sub), goal), tag + ": nd_subst disagrees with the prediction");
        } catch (const std::exception& ex) {
          o.fail(tag + ": " + ex.what());
        }
      }
      ++seed;
    }
    o.expect(accepted[frag] >= 300, "fewer than 300 pairs for a fragment");
  }
  o.note << accepted[Frag::GS] << " GS and " << accepted[Frag::MS]
         << " MS pairs; usage <= boxast prediction, elaboration and nd_subst both conclude it (" << skipped
         << " generated pairs skipped as not inferable)";
}

// ---------------------------------------------------------------------------

void equational_rewrites(Outcome& o) {
  std::vector<DerivP> pool;
  std::vector<std::pair<std::string, DerivP>> corpus_sc;
  for (const auto& item : testing::load_corpus()) {
    DerivP sc = system_of(*item.deriv) == System::SC ? item.deriv : nd_to_sc(item.deriv);
    corpus_sc.emplace_back(item.file + ":" + item.name, sc);
    pool.push_back(sc);
  }
  for (auto sr : all_semirings()) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      pool.push_back(gen_sc_derivation(sr, seed, 7, seed % 2 ? Frag::GS : Frag::MS, {0.2}));
    }
  }
  std::map<std::string, std::size_t> applied;
  for (const auto& d : pool) {
    for (const auto& name : eq_rule_names()) {
      for (const auto& at : eq_rule_matches(name, d)) {
        try {
          DerivP out = apply_eq_rule(name, d, at);
          Judgment j = check_sc(*out);
          o.expect(judgment_eq(j, d->concl) && term_identical(*j.term, *d->concl.term),
                   name + " at " + print_path(at) + " changed the conclusion");
          o.expect(equiv_oracle(d, out) == Equiv::Equal, name + ": oracle does not identify the rewrite");
          ++applied[name];
        } catch (const std::exception& e) {
          o.fail(name + " at " + print_path(at) + ": " + e.what());
        }
      }
    }
  }
  std::size_t total = 0;
  for (const auto& name : eq_rule_names()) {
    o.expect(applied[name] > 0, name + " never matched");
    total += applied[name];
  }
  for (const auto& [tag, d] : corpus_sc) {
    try {
      o.expect(equiv_oracle(d, eliminate_cuts(d).deriv) == Equiv::Equal, tag + ": not equal to its normal form");
    } catch (const std::exception& e) {
      o.fail(tag + ": " + e.what());
    }
  }
  o.note << eq_rule_names().size() << " rules, " << total << " applications (min per rule "
         << std::min_element(applied.begin(), applied.end(), [](auto& a, auto& b) { return a.second < b.second; })->second
         << "); " << corpus_sc.size() << " corpus items equal to their normal forms";
}

// ---------------------------------------------------------------------------

void cli_golden(Outcome& o) {
  for (const auto& c : testing::golden_cases()) {
    auto res = testing::run_golden_case(c);
    o.expect(res.passed, c.name + ": " + res.detail);
  }
  o.note << testing::golden_cases().size() << " scripted invocations; exit codes and stdout bytes match fixtures";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"semiring laws", semiring_laws},
      {"promotion example", promotion_example},
      {"derived box and graded implication rules", derived_rules},
      {"Grd distribution over the graded tensor", grd_distribution},
      {"cut elimination", cut_elimination},
      {"interderivability", interderivability},
      {"executable substitution", substitution_lemma},
      {"equational rewrites", equational_rewrites},
      {"CLI golden files", cli_golden},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("uncaught: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.note.str()
              << "\n";
    for (const auto& f : o.failures) std::cout << "        " << f << "\n";
    failed += !o.pass;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
