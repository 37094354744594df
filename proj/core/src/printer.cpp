#include "mgl/parser.hpp"

namespace mgl {

namespace {

// Graded types: tensor 0, atomic 1. Linear types: lolli 0, tensor 1, atomic 2.
int type_level(const Type& ty) {
  switch (ty.kind) {
    case TypeKind::GTensor:
      return 0;
    case TypeKind::Lolli:
      return 0;
    case TypeKind::LTensor:
      return 1;
    default:
      return is_graded_type(ty) ? 1 : 2;
  }
}

void print_type_at(const Type& ty, int min_level, std::string& out) {
  bool paren = type_level(ty) < min_level;
  if (paren) out += '(';
  switch (ty.kind) {
    case TypeKind::GAtom:
    case TypeKind::LAtom:
      out += ty.name;
      break;
    case TypeKind::UnitJ:
      out += 'J';
      break;
    case TypeKind::UnitI:
      out += 'I';
      break;
    case TypeKind::GTensor:
      print_type_at(*ty.left, 0, out);
      out += " >< ";
      print_type_at(*ty.right, 1, out);
      break;
    case TypeKind::LTensor:
      print_type_at(*ty.left, 1, out);
      out += " * ";
      print_type_at(*ty.right, 2, out);
      break;
    case TypeKind::Lolli:
      print_type_at(*ty.left, 1, out);
      out += " -o ";
      print_type_at(*ty.right, 0, out);
      break;
    case TypeKind::Lin:
      out += "Lin(";
      print_type_at(*ty.left, 0, out);
      out += ')';
      break;
    case TypeKind::Grd:
      out += "Grd[" + to_string(*ty.grade) + "](";
      print_type_at(*ty.left, 0, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

// Terms: binders 0, application 1, prefix operators 2, atoms 3.
int term_level(const Term& term) {
  switch (term.kind) {
    case TermKind::LetUnitJ:
    case TermKind::LetUnitI:
    case TermKind::LetPair:
    case TermKind::LetGrd:
    case TermKind::Lam:
      return 0;
    case TermKind::App:
      return 1;
    case TermKind::Lin:
    case TermKind::Grd:
    case TermKind::Unlin:
      return 2;
    default:
      return 3;
  }
}

void print_term_at(const Term& term, int min_level, std::string& out) {
  bool paren = term_level(term) < min_level;
  if (paren) out += '(';
  switch (term.kind) {
    case TermKind::Var:
      out += term.name;
      break;
    case TermKind::UnitJ:
      out += "unitJ";
      break;
    case TermKind::UnitI:
      out += "unitI";
      break;
    case TermKind::Pair:
      out += '(';
      print_term_at(*term.a, 0, out);
      out += ',';
      print_term_at(*term.b, 0, out);
      out += ')';
      break;
    case TermKind::LetUnitJ:
    case TermKind::LetUnitI:
      out += term.kind == TermKind::LetUnitJ ? "let unitJ = " : "let unitI = ";
      print_term_at(*term.a, 0, out);
      out += " in ";
      print_term_at(*term.b, 0, out);
      break;
    case TermKind::LetPair:
      out += "let (" + term.name + "," + term.name2 + ") = ";
      print_term_at(*term.a, 0, out);
      out += " in ";
      print_term_at(*term.b, 0, out);
      break;
    case TermKind::LetGrd:
      out += "let Grd[" + to_string(*term.grade) + "] " + term.name + " = ";
      print_term_at(*term.a, 0, out);
      out += " in ";
      print_term_at(*term.b, 0, out);
      break;
    case TermKind::Lam:
      out += "\\" + term.name;
      if (term.ann) {
        out += " : ";
        print_type_at(*term.ann, 0, out);
      }
      out += " . ";
      print_term_at(*term.a, 0, out);
      break;
    case TermKind::App:
      print_term_at(*term.a, 1, out);
      out += ' ';
      print_term_at(*term.b, 2, out);
      break;
    case TermKind::Lin:
      out += "Lin ";
      print_term_at(*term.a, 2, out);
      break;
    case TermKind::Unlin:
      out += "Unlin ";
      print_term_at(*term.a, 2, out);
      break;
    case TermKind::Grd:
      out += "Grd[" + to_string(*term.grade) + "] ";
      print_term_at(*term.a, 2, out);
      break;
  }
  if (paren) out += ')';
}

void print_deriv_rec(const Deriv& d, int indent, bool annotate, std::string& out) {
  const RuleInfo& info = rule_info(d.rule);
  out += std::string(static_cast<std::size_t>(indent), ' ');
  out += "(rule ";
  out += info.name;
  std::size_t next_pos = 0;
  for (Role role : info.roles) {
    switch (role) {
      case Role::InsG:
      case Role::InsL:
      case Role::KidG1:
      case Role::KidG2:
      case Role::KidL1:
      case Role::KidL2:
        out += ' ' + std::to_string(d.params.pos.at(next_pos++));
        break;
      case Role::KidGList:
        out += ' ' + std::to_string(d.params.occ.size());
        for (auto k : d.params.occ) out += ' ' + std::to_string(k);
        break;
      case Role::Name:
        out += ' ' + d.params.name;
        break;
      case Role::TypeArg:
        out += " : " + print_type(*d.params.type);
        break;
      case Role::GradeArg:
        out += ' ' + to_string(*d.params.grade);
        break;
      case Role::GradeVecArg:
        for (const auto& g : d.params.vec) out += ' ' + to_string(g);
        break;
    }
  }
  for (const auto& k : d.kids) {
    out += '\n';
    print_deriv_rec(*k, indent + 2, false, out);
  }
  if (annotate) out += "\n" + std::string(static_cast<std::size_t>(indent + 2), ' ') + ":conclude " + print_judgment(d.concl);
  out += ')';
}

}  // namespace

std::string print_type(const Type& ty) {
  std::string out;
  print_type_at(ty, 0, out);
  return out;
}

std::string print_term(const Term& term) {
  std::string out;
  print_term_at(term, 0, out);
  return out;
}

std::string print_judgment(const Judgment& j) {
  std::string out = j.frag == Frag::GS ? "GS: " : "MS: ";
  for (std::size_t i = 0; i < j.gctx.size(); ++i) {
    if (i) out += ", ";
    out += j.gctx[i].name + " @ " + to_string(j.gctx[i].grade) + " : " + print_type(*j.gctx[i].type);
  }
  if (!j.gctx.empty()) out += ' ';
  if (j.frag == Frag::MS) {
    out += "; ";
    for (std::size_t i = 0; i < j.lctx.size(); ++i) {
      if (i) out += ", ";
      out += j.lctx[i].name + " : " + print_type(*j.lctx[i].type);
    }
    if (!j.lctx.empty()) out += ' ';
  }
  out += "|- " + print_term(*j.term) + " : " + print_type(*j.type);
  return out;
}

std::string print_deriv(const Deriv& d, bool annotate_root) {
  std::string out;
  print_deriv_rec(d, 0, annotate_root, out);
  return out;
}

std::string print_file(SemiringId sr, const std::vector<std::string>& atoms, const std::vector<PrintedItem>& items) {
  std::string out = "semiring " + std::string(semiring_name(sr)) + ";\n";
  if (!atoms.empty()) {
    out += "atom ";
    for (std::size_t i = 0; i < atoms.size(); ++i) out += (i ? ", " : "") + atoms[i];
    out += ";\n";
  }
  for (const auto& it : items) {
    out += "\nderiv " + it.name + " =\n" + print_deriv(*it.deriv, true) + ";\n";
  }
  return out;
}

}  // namespace mgl
