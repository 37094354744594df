#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mgl/semiring.hpp"

namespace mgl {

// Graded formulas (GAtom, UnitJ, GTensor, Lin) and linear formulas
// (LAtom, UnitI, LTensor, Lolli, Grd) share one node type.
enum class TypeKind { GAtom, UnitJ, GTensor, Lin, LAtom, UnitI, LTensor, Lolli, Grd };

struct Type;
using TypeP = std::shared_ptr<const Type>;

struct Type {
  TypeKind kind;
  std::string name;            // atoms only
  std::optional<Grade> grade;  // Grd only
  TypeP left;                  // GTensor/LTensor/Lolli left, Lin body, Grd body
  TypeP right;                 // GTensor/LTensor/Lolli right
};

TypeP g_atom(std::string name);
TypeP unit_j();
TypeP g_tensor(TypeP a, TypeP b);
TypeP lin_type(TypeP a);
TypeP l_atom(std::string name);
TypeP unit_i();
TypeP l_tensor(TypeP a, TypeP b);
TypeP lolli(TypeP a, TypeP b);
TypeP grd_type(Grade grade, TypeP body);

bool is_graded_type(const Type& ty);
bool type_eq(const Type& a, const Type& b);
inline bool type_eq(const TypeP& a, const TypeP& b) { return type_eq(*a, *b); }

enum class TermKind {
  Var,
  UnitJ,
  UnitI,
  Pair,      // (a, b) for both tensors
  LetUnitJ,  // let unitJ = a in b
  LetUnitI,  // let unitI = a in b
  LetPair,   // let (x, y) = a in b
  Lin,       // Lin a
  Lam,       // \x : ann . a
  App,       // a b
  Grd,       // Grd[grade] a
  LetGrd,    // let Grd[grade] x = a in b
  Unlin      // Unlin a
};

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  std::string name;   // variable name or first binder
  std::string name2;  // second binder of LetPair
  TypeP ann;          // Lam annotation; may be null for unannotated input
  std::optional<Grade> grade;
  TermP a;
  TermP b;
};

TermP var(std::string name);
TermP unit_j_term();
TermP unit_i_term();
TermP pair(TermP a, TermP b);
TermP let_unit_j(TermP scrut, TermP body);
TermP let_unit_i(TermP scrut, TermP body);
TermP let_pair(std::string first, std::string second, TermP scrut, TermP body);
TermP lin_term(TermP a);
TermP lam(std::string binder, TypeP ann, TermP body);
TermP app(TermP f, TermP arg);
TermP grd_term(Grade grade, TermP a);
TermP let_grd(Grade grade, std::string binder, TermP scrut, TermP body);
TermP unlin(TermP a);

std::set<std::string> free_vars(const Term& term);
// Every variable name occurring in the term, bound or free.
void collect_names(const Term& term, std::set<std::string>& out);

// Equal up to consistent renaming of bound variables. Lambda annotations are
// compared only when both sides carry one.
bool alpha_eq(const Term& a, const Term& b);
inline bool alpha_eq(const TermP& a, const TermP& b) { return alpha_eq(*a, *b); }

// Structural equality, binder names included.
bool term_identical(const Term& a, const Term& b);

// Capture-avoiding replacement of var by arg in body.
TermP subst(const TermP& body, const std::string& var, const TermP& arg);
// Simultaneous replacement of every name in vars by arg.
TermP multi_subst(const TermP& body, const std::vector<std::string>& vars, const TermP& arg);
// Simultaneous capture-avoiding substitution for a general map.
TermP subst_map(const TermP& body, const std::map<std::string, TermP>& sigma);

// Hands out names of the form base_N that avoid every reserved name.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}
  void reserve(const std::string& name) { used_.insert(name); }
  bool used(const std::string& name) const { return used_.count(name) > 0; }
  std::string fresh(std::string_view base);

 private:
  std::set<std::string> used_;
  std::map<std::string, unsigned, std::less<>> next_;
};

struct GEntry {
  std::string name;
  Grade grade;
  TypeP type;
};

struct LEntry {
  std::string name;
  TypeP type;
};

using GCtx = std::vector<GEntry>;
using LCtx = std::vector<LEntry>;

enum class Frag { GS, MS };

struct Judgment {
  Frag frag = Frag::GS;
  GCtx gctx;
  LCtx lctx;  // empty for GS
  TermP term;
  TypeP type;
};

GradeVec grades_of(const GCtx& ctx);
bool gentry_eq(const GEntry& a, const GEntry& b);
bool lentry_eq(const LEntry& a, const LEntry& b);
// Same fragment, contexts (names, grades, types, order) and type; terms ignored.
bool same_sequent(const Judgment& a, const Judgment& b);
// same_sequent plus alpha-equal terms.
bool judgment_eq(const Judgment& a, const Judgment& b);

std::optional<std::size_t> find_g(const GCtx& ctx, const std::string& name);
std::optional<std::size_t> find_l(const LCtx& ctx, const std::string& name);
// Names of both contexts.
std::set<std::string> ctx_names(const Judgment& j);

}  // namespace mgl
