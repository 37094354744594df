#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mgl/syntax.hpp"

namespace mgl {

// Sequent calculus rules followed by natural deduction rules. ASCII spellings:
// boxtimes = graded tensor, otimes = linear tensor, lolli = linear implication.
enum class Rule {
  // sequent calculus, graded fragment
  IdGS, UnitJR, UnitJL, BoxtimesR, BoxtimesL, LinR, CutGS, WeakGS, ContGS, ExGS, SubGS, Mcut,
  // sequent calculus, mixed fragment
  IdMS, UnitIR, UnitIL, LolliR, LolliL, OtimesR, OtimesL, UnitJLMS, BoxtimesLMS, GrdR, LinL, GrdL,
  CutMS, GcutMS, WeakMS, ContMS, ExMS, GexMS, SubMS, Gmcut,
  // natural deduction, graded fragment
  IdGT, UnitJI, UnitJE, BoxtimesI, BoxtimesE, LinI, WeakGT, ContGT, ExGT, SubGT,
  // natural deduction, mixed fragment
  IdMT, GSub, UnitII, UnitIE, OtimesI, OtimesE, LolliI, LolliE, GrdI, LinE, GrdE, WeakMT, ContMT,
  ExMT, GexMT, BoxtimesEMT, UnitJEMT
};

enum class System { SC, ND };

// How a rule's parameters are read. Positions are 0-based.
enum class Role {
  InsG,      // insertion position in the graded context (free choice)
  InsL,      // insertion position in the linear context (free choice)
  KidG1,     // one entry of the graded context of the positional child
  KidG2,     // two adjacent entries of the graded context of the positional child
  KidL1,     // one entry of the linear context of the positional child
  KidL2,     // two adjacent entries of the linear context of the positional child
  KidGList,  // strictly increasing graded positions of the positional child, printed `n k1 .. kn`
  Name,      // a newly introduced variable
  TypeArg,   // type of the preceding Name, printed `x : T`
  GradeArg,  // a grade
  GradeVecArg  // full grade vector of the conclusion (sub rules)
};

struct RuleInfo {
  Rule rule;
  std::string_view name;
  System system;
  Frag frag;                 // fragment of the conclusion
  std::vector<Frag> kids;    // fragment of each premise
  std::vector<Role> roles;
  int pos_kid;               // child that Kid* roles refer to
};

const RuleInfo& rule_info(Rule rule);
std::optional<Rule> rule_from_name(std::string_view name);
const std::vector<Rule>& all_rules();
bool is_cut_rule(Rule rule);
bool is_sub_rule(Rule rule);

struct Params {
  std::vector<std::size_t> pos;  // InsG/InsL/Kid* roles in role order
  std::vector<std::size_t> occ;  // KidGList
  std::string name;
  TypeP type;
  std::optional<Grade> grade;
  GradeVec vec;

  Params& at(std::size_t p) { pos.push_back(p); return *this; }
  Params& named(std::string n) { name = std::move(n); return *this; }
  Params& typed(TypeP ty) { type = std::move(ty); return *this; }
  Params& graded(Grade g) { grade = std::move(g); return *this; }
  Params& vector(GradeVec v) { vec = std::move(v); return *this; }
  Params& occurrences(std::vector<std::size_t> o) { occ = std::move(o); return *this; }
};

struct Deriv;
using DerivP = std::shared_ptr<const Deriv>;

// A checked derivation node. Instances only come from make_deriv, so the
// stored conclusion always matches the rule applied to the children.
struct Deriv {
  SemiringId semiring;
  Rule rule;
  Params params;
  std::vector<DerivP> kids;
  Judgment concl;
};

// Computes the conclusion of one rule application; throws CheckError.
Judgment conclude(SemiringId sr, Rule rule, const Params& params,
                  const std::vector<const Judgment*>& premises);

// Checks one rule application and returns the node; throws CheckError.
DerivP make_deriv(SemiringId sr, Rule rule, Params params, std::vector<DerivP> kids);

// Recomputes every conclusion bottom-up; errors carry the node path.
Judgment recheck(const Deriv& d, std::optional<System> expect = std::nullopt);

std::size_t deriv_size(const Deriv& d);
bool deriv_identical(const Deriv& a, const Deriv& b);

// Every name appearing anywhere in the tree (contexts, terms, params).
void collect_deriv_names(const Deriv& d, std::set<std::string>& out);

}  // namespace mgl
