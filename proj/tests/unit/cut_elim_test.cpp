#include <doctest.h>

#include <algorithm>

#include "../support/oracles.hpp"
#include "mgl/cut_elim.hpp"
#include "mgl/parser.hpp"
#include "mgl/sc_checker.hpp"

using namespace mgl;

namespace {

DerivP build(const std::string& text, SemiringId sr = SemiringId::NatLeq) {
  return build_deriv(parse_deriv(text, sr), sr);
}

std::size_t principal_steps(const std::vector<TraceStep>& trace) {
  std::size_t n = 0;
  for (const auto& step : trace) {
    n += step.family == CaseFamily::Principal;
    n += static_cast<std::size_t>(std::count(step.inner.begin(), step.inner.end(), CaseFamily::Principal));
  }
  return n;
}

void check_normal_form(const DerivP& d) {
  Normalized n = eliminate_cuts(d);
  CHECK(is_cut_free(*n.deriv));
  CHECK(cut_rank(*n.deriv) == 0);
  CHECK(same_sequent(n.deriv->concl, d->concl));
  CHECK(same_sequent(check_sc(*n.deriv), d->concl));
  CHECK(check_subformula(*n.deriv));
  TermP before = oracle::conversion_nf(d->concl.term);
  TermP after = oracle::conversion_nf(n.deriv->concl.term);
  CHECK_MESSAGE(alpha_eq(before, after), (print_term(*d->concl.term) + "  vs  " + print_term(*n.deriv->concl.term)));
  for (const auto& step : n.trace) {
    CHECK(step.cut_rank_after <= step.cut_rank_before);
    CHECK(step.local_cut_rank_after <= step.formula_rank);
    const bool decreased = step.cut_rank_after < step.cut_rank_before ||
                           step.max_rank_cuts_after < step.max_rank_cuts_before;
    CHECK(decreased);
  }
}

}  // namespace

TEST_SUITE("cut_elim") {
  TEST_CASE("rank") {
    const auto sr = SemiringId::NatLeq;
    CHECK(rank(*unit_j()) == 0);
    CHECK(rank(*unit_i()) == 0);
    CHECK(rank(*l_atom("P")) == 0);
    CHECK(rank(*grd_type(Grade::one(sr), lin_type(l_atom("P")))) == 2);
    CHECK(rank(*parse_ltype("(A -o B) * Grd[2](X >< J)", sr)) == 3);
  }

  TEST_CASE("rank agrees with the height oracle on generated formulas") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      DerivP d = gen_sc_derivation(SemiringId::Rat, seed, 6, seed % 2 ? Frag::GS : Frag::MS);
      CHECK(rank(*d->concl.type) == oracle::height(*d->concl.type));
      for (const auto& e : d->concl.gctx) CHECK(rank(*e.type) == oracle::height(*e.type));
    }
  }

  TEST_CASE("depth and cut rank") {
    DerivP ax = build("(rule id_GS x : X)");
    CHECK(depth(*ax) == 0);
    CHECK(cut_rank(*ax) == 0);
    DerivP promo = promotion_example_sc(SemiringId::NatLeq);
    CHECK(depth(*promo) == 4);
    CHECK(cut_rank(*promo) == 0);
    DerivP c = build("(rule cut_GS 0 (rule id_GS x : X >< J) (rule id_GS y : X >< J))");
    CHECK(cut_rank(*c) == 2);
    CHECK(print_type(cut_formula(*c)) == "X >< J");
  }

  TEST_CASE("principal Lin case reduces to a cut of the premises") {
    DerivP left = build("(rule Lin_R (rule Lin_L 0 0 u (rule id_MS a : A)))");
    DerivP right = build("(rule Lin_L 0 0 z (rule id_MS b : A))");
    DerivP cut = make_deriv(SemiringId::NatLeq, Rule::GcutMS, Params{}.at(0), {left, right});
    TraceStep step;
    DerivP out = reduce_cut(cut, &step);
    CHECK(step.family == CaseFamily::Principal);
    CHECK(step.connective == "Lin");
    CHECK(out->rule == Rule::CutMS);
    CHECK(same_sequent(out->concl, cut->concl));
    CHECK(cut_rank(*out) <= rank(cut_formula(*cut)));
  }

  TEST_CASE("the worked example takes three principal steps to the eta-expanded identity") {
    const auto sr = SemiringId::NatLeq;
    DerivP d = notable_cut_example(sr);
    CHECK(print_judgment(d->concl).rfind("GS: u @ 1 : Lin(A) |- ", 0) == 0);
    Normalized n = eliminate_cuts(d);
    CHECK(principal_steps(n.trace) == 3);
    std::vector<std::string> connectives;
    for (const auto& step : n.trace) {
      if (step.family == CaseFamily::Principal) connectives.push_back(step.connective);
    }
    CHECK(connectives == std::vector<std::string>{"Grd", "Lin"});
    CHECK(n.trace.front().inner == std::vector<CaseFamily>{CaseFamily::Principal});
    DerivP eta = eta_expand(sr, lin_type(l_atom("A")), "u");
    CHECK(alpha_eq(n.deriv->concl.term, eta->concl.term));
    CHECK(same_sequent(n.deriv->concl, eta->concl));
    check_normal_form(d);
  }

  TEST_CASE("axiom on the left renames the hypothesis and keeps its grade") {
    DerivP d = build(R"((rule cut_GS 0
      (rule id_GS x : X)
      (rule cont_GS 0 (rule boxtimes_R (rule id_GS p : X) (rule id_GS q : X)))))");
    TraceStep step;
    DerivP out = reduce_cut(d, &step);
    CHECK(step.family == CaseFamily::Axiom);
    CHECK(print_judgment(out->concl) == "GS: x @ 2 : X |- (x,x) : X >< X");
    CHECK(is_cut_free(*out));
  }

  TEST_CASE("a cut-free input comes back unchanged") {
    DerivP d = promotion_example_sc(SemiringId::NatLeq);
    Normalized n = eliminate_cuts(d);
    CHECK(n.trace.empty());
    CHECK(deriv_identical(*n.deriv, *d));
  }

  TEST_CASE("an identity cut inside the promotion example") {
    DerivP d = build(R"((rule Grd_R 2 (rule sub_GS 3 (rule cont_GS 0 (rule boxtimes_R
        (rule cut_GS 0 (rule id_GS x : X) (rule id_GS p : X))
        (rule id_GS y : X))))))");
    Normalized n = eliminate_cuts(d);
    CHECK(print_judgment(n.deriv->concl) == "MS: x @ 6 : X ; |- Grd[2] (x,x) : Grd[2](X >< X)");
    CHECK(is_cut_free(*n.deriv));
  }

  TEST_CASE("generated cuts of every flavor normalize") {
    for (auto sr : all_semirings()) {
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        for (auto flavor : {CutFlavor::GS, CutFlavor::GSIntoMS, CutFlavor::MS}) {
          DerivP d = gen_sc_cut(sr, seed, 7, flavor);
          const Rule root = flavor == CutFlavor::GS ? Rule::CutGS
                            : flavor == CutFlavor::GSIntoMS ? Rule::GcutMS
                                                            : Rule::CutMS;
          CHECK(d->rule == root);
          check_normal_form(d);
        }
      }
    }
  }

  TEST_CASE("the conversion normal form identifies reordered lets and beta redexes only") {
    const auto sr = SemiringId::NatLeq;
    auto same = [&](const char* lhs, const char* rhs) {
      return alpha_eq(oracle::conversion_nf(parse_term(lhs, sr)), oracle::conversion_nf(parse_term(rhs, sr)));
    };
    CHECK(same("let (a,b) = p in let (c,d) = q in (a,c)", "let (c,d) = q in let (a,b) = p in (a,c)"));
    CHECK(same("let Grd[2] x = g in (x,x)", "let Grd[2] y = g in let Grd[2] z = g in (y,z)"));
    CHECK(same("(\\x . x) y", "y"));
    CHECK(same("Unlin (Lin y)", "y"));
    CHECK(same("let (a,b) = (p,q) in (b,a)", "(q,p)"));
    CHECK(same("(let unitI = u in f) y", "let unitI = u in f y"));
    CHECK(same("\\x . let (a,b) = p in x a", "let (a,b) = p in \\x . x a"));
    CHECK_FALSE(same("\\x . let (a,b) = x in a", "let (a,b) = x in \\x . a"));
    CHECK_FALSE(same("(p,q)", "(q,p)"));
    CHECK_FALSE(same("let (a,b) = p in (a,b)", "let (a,b) = p in (b,a)"));
  }

  TEST_CASE("subformulas") {
    const auto sr = SemiringId::NatLeq;
    TypeP ty = parse_ltype("Grd[2](X >< Lin(A -o B))", sr);
    std::set<std::string> got;
    for (const auto& sub : subformulas(ty)) got.insert(print_type(*sub));
    CHECK(got == oracle::printed_subformulas(*ty));
    CHECK(got.size() == 7);
  }

  TEST_CASE("subformula property") {
    CHECK(check_subformula(*build("(rule id_GS x : X)")));
    CHECK(check_subformula(*build("(rule id_MS a : A * B)")));
    // A tree with a cut is reported as not applicable.
    CHECK_FALSE(check_subformula(*build("(rule cut_GS 0 (rule id_GS x : X) (rule id_GS y : X))")));
  }

  TEST_CASE("a grafted tree that leaves the subformulas of its root is rejected") {
    DerivP good = build("(rule Lin_R (rule Lin_L 0 0 z (rule id_MS a : A)))");
    REQUIRE(check_subformula(*good));
    // Replace the axiom on A by one on B without rechecking, so the B at the
    // leaf is no subformula of the root's Lin(A).
    DerivP leaf_b = build("(rule id_MS a : B)");
    auto lin_l = std::make_shared<Deriv>(*good->kids[0]);
    lin_l->kids[0] = leaf_b;
    auto root = std::make_shared<Deriv>(*good);
    root->kids[0] = lin_l;
    CHECK_FALSE(check_subformula(*root));
  }

  TEST_CASE("eta expansion is cut-free and proves the identity") {
    const auto sr = SemiringId::NatLeq;
    for (const char* ty : {"Lin(A -o B)", "X >< (J >< Y)", "Lin(Grd[2](X) * I)"}) {
      TypeP type_ = parse_gtype(ty, sr);
      DerivP d = eta_expand(sr, type_, "h");
      CHECK(is_cut_free(*d));
      CHECK(type_eq(d->concl.type, type_));
      REQUIRE(d->concl.gctx.size() == 1);
      CHECK(d->concl.gctx[0].grade == Grade::one(sr));
    }
  }
}
