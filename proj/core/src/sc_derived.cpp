#include "mgl/parser.hpp"
#include "mgl/sc_checker.hpp"

namespace mgl {

namespace {

NameSupply supply_for(std::initializer_list<const Deriv*> ds) {
  NameSupply supply;
  for (const Deriv* d : ds) {
    std::set<std::string> names;
    collect_deriv_names(*d, names);
    for (const auto& n : names) supply.reserve(n);
  }
  return supply;
}

}  // namespace

DerivP derive_box_intro(const Grade& grade, const DerivP& premise) {
  const Judgment& j = premise->concl;
  if (j.frag != Frag::MS || !j.lctx.empty()) {
    throw CheckError("box introduction needs an MS premise with an empty linear context");
  }
  DerivP lin = make_deriv(premise->semiring, Rule::LinR, {}, {premise});
  return make_deriv(premise->semiring, Rule::GrdR, Params{}.graded(grade), {lin});
}

DerivP derive_box_elim(const DerivP& boxed, const DerivP& body, std::size_t x_pos) {
  const Judgment& b = boxed->concl;
  if (b.frag != Frag::MS || b.type->kind != TypeKind::Grd || b.type->left->kind != TypeKind::Lin) {
    throw CheckError("box elimination needs a first premise of type Grd[r](Lin(A))");
  }
  const Judgment& j = body->concl;
  if (j.frag != Frag::MS || x_pos >= j.gctx.size()) {
    throw CheckError("box elimination needs an MS second premise with a graded hypothesis at the given position");
  }
  const GEntry& entry = j.gctx[x_pos];
  if (entry.grade != *b.type->grade || !type_eq(*entry.type, *b.type->left)) {
    throw CheckError("box elimination: '" + entry.name + "' must have grade " + to_string(*b.type->grade) + " and type " +
                     print_type(*b.type->left));
  }
  NameSupply names = supply_for({boxed.get(), body.get()});
  std::string hyp_name = names.fresh("z");
  std::size_t at = j.lctx.size();
  DerivP opened = make_deriv(body->semiring, Rule::GrdL, Params{}.at(x_pos).at(at).named(hyp_name), {body});
  return make_deriv(body->semiring, Rule::CutMS, Params{}.at(at), {boxed, opened});
}

DerivP derive_gimpl_left(const Grade& grade, const DerivP& arg, const DerivP& cont, std::size_t y_pos,
                         const std::string& f) {
  if (arg->concl.frag != Frag::GS) throw CheckError("graded implication left rule needs a GS first premise");
  if (cont->concl.frag != Frag::MS || y_pos >= cont->concl.lctx.size()) {
    throw CheckError("graded implication left rule needs an MS second premise with a linear hypothesis at the given position");
  }
  DerivP promoted = make_deriv(arg->semiring, Rule::GrdR, Params{}.graded(grade), {arg});
  return make_deriv(arg->semiring, Rule::LolliL, Params{}.at(y_pos).named(f), {promoted, cont});
}

DerivP derive_gimpl_right(const DerivP& premise, std::size_t x_pos, const std::string& hyp_name) {
  const Judgment& j = premise->concl;
  if (j.frag != Frag::MS || x_pos >= j.gctx.size()) {
    throw CheckError("graded implication right rule needs an MS premise with a graded hypothesis at the given position");
  }
  DerivP opened = make_deriv(premise->semiring, Rule::GrdL, Params{}.at(x_pos).at(j.lctx.size()).named(hyp_name), {premise});
  return make_deriv(premise->semiring, Rule::LolliR, {}, {opened});
}

DerivP derive_grd_tensor_dist(const Grade& grade, const TypeP& left_ty, const TypeP& right_ty) {
  const SemiringId sr = grade.semiring();
  if (!is_graded_type(*left_ty) || !is_graded_type(*right_ty)) throw CheckError("Grd distribution needs graded formulas");
  DerivP left = make_deriv(sr, Rule::GrdR, Params{}.graded(grade), {make_deriv(sr, Rule::IdGS, Params{}.named("x").typed(left_ty), {})});
  DerivP right = make_deriv(sr, Rule::GrdR, Params{}.graded(grade), {make_deriv(sr, Rule::IdGS, Params{}.named("y").typed(right_ty), {})});
  DerivP both = make_deriv(sr, Rule::OtimesR, {}, {left, right});
  DerivP split = make_deriv(sr, Rule::BoxtimesLMS, Params{}.at(0).named("p"), {both});
  DerivP opened = make_deriv(sr, Rule::GrdL, Params{}.at(0).at(0).named("z"), {split});
  return make_deriv(sr, Rule::LolliR, {}, {opened});
}

DerivP promotion_example_sc(SemiringId sr, bool with_sub) {
  TypeP gatom = g_atom("X");
  DerivP d = make_deriv(sr, Rule::BoxtimesR, {},
                        {make_deriv(sr, Rule::IdGS, Params{}.named("x").typed(gatom), {}),
                         make_deriv(sr, Rule::IdGS, Params{}.named("y").typed(gatom), {})});
  d = make_deriv(sr, Rule::ContGS, Params{}.at(0), {d});
  if (with_sub) d = make_deriv(sr, Rule::SubGS, Params{}.vector({Grade::natural(sr, 3)}), {d});
  return make_deriv(sr, Rule::GrdR, Params{}.graded(Grade::natural(sr, 2)), {d});
}

DerivP notable_cut_example(SemiringId sr) {
  TypeP latom = l_atom("A");
  const Grade one = Grade::one(sr);
  DerivP left = make_deriv(sr, Rule::IdMS, Params{}.named("a").typed(latom), {});
  left = make_deriv(sr, Rule::LinL, Params{}.at(0).at(0).named("u"), {left});
  left = make_deriv(sr, Rule::LinR, {}, {left});
  left = make_deriv(sr, Rule::GrdR, Params{}.graded(one), {left});
  left = make_deriv(sr, Rule::LinR, {}, {left});

  DerivP right = make_deriv(sr, Rule::IdMS, Params{}.named("b").typed(latom), {});
  right = make_deriv(sr, Rule::LinL, Params{}.at(0).at(0).named("v"), {right});
  right = make_deriv(sr, Rule::GrdL, Params{}.at(0).at(0).named("g"), {right});
  right = make_deriv(sr, Rule::LinL, Params{}.at(0).at(0).named("w"), {right});
  right = make_deriv(sr, Rule::LinR, {}, {right});
  return make_deriv(sr, Rule::CutGS, Params{}.at(0), {left, right});
}

}  // namespace mgl
