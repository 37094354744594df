#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mgl/deriv.hpp"

namespace mgl {

// Derivation as written, before checking. The conclusion annotation, when
// present, is compared against the recomputed conclusion by build_deriv.
struct ParsedDeriv {
  Rule rule;
  Params params;
  std::vector<ParsedDeriv> kids;
  std::optional<Judgment> annotation;
  int line = 0;
  int column = 0;
};

enum class ItemKind { Goal, Deriv };

struct Item {
  ItemKind kind;
  std::string name;  // "#N" (1-based item index) for unnamed goals
  int line = 0;
  std::optional<Judgment> goal;
  std::optional<ParsedDeriv> deriv;
};

struct ProofFile {
  SemiringId semiring = SemiringId::NatExact;
  std::vector<std::string> atoms;  // declaration order
  std::vector<Item> items;
};

// `override_semiring` replaces the header's choice; grade literals are read
// in the resulting semiring. Throws ParseError.
ProofFile parse_file(std::string_view text, std::optional<SemiringId> override_semiring = std::nullopt);

// Fragment parsers. Without an atom set every non-keyword name is an atom.
TypeP parse_gtype(std::string_view text, SemiringId sr);
TypeP parse_ltype(std::string_view text, SemiringId sr);
TermP parse_term(std::string_view text, SemiringId sr);
Judgment parse_judgment(std::string_view text, SemiringId sr);
ParsedDeriv parse_deriv(std::string_view text, SemiringId sr);

// Checks the tree bottom-up and compares annotations; throws CheckError with
// the node path.
DerivP build_deriv(const ParsedDeriv& pd, SemiringId sr);

std::string print_type(const Type& ty);
std::string print_term(const Term& term);
std::string print_judgment(const Judgment& j);
// Multi-line S-expression; `annotate_root` appends `:conclude` to the root.
std::string print_deriv(const Deriv& d, bool annotate_root = false);

struct PrintedItem {
  std::string name;
  DerivP deriv;
};
std::string print_file(SemiringId sr, const std::vector<std::string>& atoms, const std::vector<PrintedItem>& items);

}  // namespace mgl
