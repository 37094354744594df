#include "mgl/parser.hpp"

#include <cctype>

namespace mgl {

namespace {

enum class Tok { Name, Number, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int start_line = line, cc = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Name, std::string(src.substr(i, j - i)), start_line, cc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '/' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), start_line, cc});
      advance(j - i);
      continue;
    }
    auto starts = [&](std::string_view text) { return src.substr(i, text.size()) == text; };
    if (starts(":conclude") && (i + 9 >= src.size() || !ident_char(src[i + 9]))) {
      out.push_back({Tok::Sym, ":conclude", start_line, cc});
      advance(9);
      continue;
    }
    if (starts("-o") && (i + 2 >= src.size() || !ident_char(src[i + 2]))) {
      out.push_back({Tok::Sym, "-o", start_line, cc});
      advance(2);
      continue;
    }
    bool matched = false;
    for (std::string_view text : {"><", "|-"}) {
      if (starts(text)) {
        out.push_back({Tok::Sym, std::string(text), start_line, cc});
        advance(text.size());
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("()[],;:@=.\\*-").find(c) != std::string_view::npos) {
      out.push_back({Tok::Sym, std::string(1, c), start_line, cc});
      advance(1);
      continue;
    }
    throw ParseError(start_line, cc, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> kw = {
      "let", "in", "unitJ", "unitI", "Lin", "Grd", "Unlin", "J", "I", "GS", "MS",
      "semiring", "atom", "goal", "deriv", "rule"};
  return kw;
}

class Parser {
 public:
  Parser(std::string_view src, SemiringId sr, const std::set<std::string>* atoms)
      : toks_(lex(src)), sr_(sr), atoms_(atoms) {}

  ProofFile file(std::optional<SemiringId> override_sr) {
    ProofFile pf;
    std::optional<SemiringId> header;
    if (is_name("semiring")) {
      const Token& kw = next();
      std::string id = expect_name_raw("semiring identifier");
      while (is_sym("-")) {
        next();
        id += "-" + expect_name_raw("semiring identifier");
      }
      header = semiring_from_name(id);
      if (!header) throw ParseError(kw.line, kw.column, "unknown semiring '" + id + "'");
      expect_sym(";");
    }
    if (override_sr) {
      sr_ = *override_sr;
    } else if (header) {
      sr_ = *header;
    } else {
      throw ParseError(peek().line, peek().column, "missing `semiring ID;` header");
    }
    pf.semiring = sr_;
    std::set<std::string> declared;
    atoms_ = &declared;
    while (peek().kind != Tok::End) {
      const Token& head = peek();
      if (is_name("atom")) {
        next();
        for (;;) {
          const Token& tok = peek();
          std::string a = expect_ident("atom name");
          if (!declared.insert(a).second) throw ParseError(tok.line, tok.column, "atom '" + a + "' declared twice");
          pf.atoms.push_back(a);
          if (!is_sym(",")) break;
          next();
        }
        expect_sym(";");
      } else if (is_name("goal")) {
        next();
        Item item{ItemKind::Goal, "", head.line, std::nullopt, std::nullopt};
        if (peek().kind == Tok::Name && !is_name("GS") && !is_name("MS")) {
          item.name = expect_ident("goal name");
          expect_sym("=");
        }
        item.goal = judgment();
        expect_sym(";");
        if (item.name.empty()) item.name = "#" + std::to_string(pf.items.size() + 1);
        add_item(pf, std::move(item), head);
      } else if (is_name("deriv")) {
        next();
        Item item{ItemKind::Deriv, expect_ident("derivation name"), head.line, std::nullopt, std::nullopt};
        expect_sym("=");
        item.deriv = deriv();
        expect_sym(";");
        add_item(pf, std::move(item), head);
      } else {
        throw error(head, "expected `atom`, `goal` or `deriv`");
      }
    }
    return pf;
  }

  TypeP whole_gtype() { return finish(gtype()); }
  TypeP whole_ltype() { return finish(ltype()); }
  TermP whole_term() { return finish(term()); }
  Judgment whole_judgment() { return finish(judgment()); }
  ParsedDeriv whole_deriv() { return finish(deriv()); }

 private:
  template <class T>
  T finish(T v) {
    if (peek().kind != Tok::End) throw error(peek(), "unexpected trailing input");
    return v;
  }

  void add_item(ProofFile& pf, Item item, const Token& head) {
    for (const auto& it : pf.items) {
      if (it.name == item.name) throw ParseError(head.line, head.column, "duplicate item name '" + item.name + "'");
    }
    pf.items.push_back(std::move(item));
  }

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& tok = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return tok;
  }
  bool is_sym(std::string_view text, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == text;
  }
  bool is_name(std::string_view text, std::size_t k = 0) const {
    return peek(k).kind == Tok::Name && peek(k).text == text;
  }
  static ParseError error(const Token& tok, const std::string& msg) {
    std::string found = tok.kind == Tok::End ? "end of input" : "'" + tok.text + "'";
    return ParseError(tok.line, tok.column, msg + ", found " + found);
  }
  void expect_sym(std::string_view text) {
    if (!is_sym(text)) throw error(peek(), "expected '" + std::string(text) + "'");
    next();
  }
  void expect_kw(std::string_view text) {
    if (!is_name(text)) throw error(peek(), "expected '" + std::string(text) + "'");
    next();
  }
  std::string expect_name_raw(const char* what) {
    if (peek().kind != Tok::Name) throw error(peek(), std::string("expected ") + what);
    return next().text;
  }
  std::string expect_ident(const char* what) {
    if (peek().kind != Tok::Name || keywords().count(peek().text)) {
      throw error(peek(), std::string("expected ") + what);
    }
    return next().text;
  }
  std::size_t expect_index(const char* what) {
    if (peek().kind != Tok::Number || peek().text.find('/') != std::string::npos) {
      throw error(peek(), std::string("expected ") + what);
    }
    const Token& tok = next();
    try {
      return static_cast<std::size_t>(std::stoull(tok.text));
    } catch (const std::exception&) {
      throw ParseError(tok.line, tok.column, "index out of range");
    }
  }

  bool at_grade() const {
    if (peek().kind == Tok::Number) return true;
    return peek().kind == Tok::Name && !keywords().count(peek().text);
  }
  Grade grade() {
    const Token& tok = peek();
    if (tok.kind != Tok::Number && tok.kind != Tok::Name) throw error(tok, "expected a grade");
    next();
    auto g = parse_grade(sr_, tok.text);
    if (!g) {
      throw ParseError(tok.line, tok.column,
                       "grade literal '" + tok.text + "' invalid for semiring " + std::string(semiring_name(sr_)));
    }
    return *g;
  }

  std::string atom_name() {
    const Token& tok = peek();
    std::string a = expect_ident("an atom or type");
    if (atoms_ && !atoms_->count(a)) throw ParseError(tok.line, tok.column, "undeclared atom '" + a + "'");
    return a;
  }

  // ---- types
  TypeP gtype() {
    TypeP ty = gtype_atomic();
    while (is_sym("><")) {
      next();
      ty = g_tensor(ty, gtype_atomic());
    }
    return ty;
  }
  TypeP gtype_atomic() {
    if (is_sym("(")) {
      next();
      TypeP ty = gtype();
      expect_sym(")");
      return ty;
    }
    if (is_name("J")) {
      next();
      return unit_j();
    }
    if (is_name("Lin")) {
      next();
      expect_sym("(");
      TypeP a = ltype();
      expect_sym(")");
      return lin_type(a);
    }
    return g_atom(atom_name());
  }
  TypeP ltype() {
    TypeP ty = ltensor();
    if (is_sym("-o")) {
      next();
      return lolli(ty, ltype());
    }
    return ty;
  }
  TypeP ltensor() {
    TypeP ty = ltype_atomic();
    while (is_sym("*")) {
      next();
      ty = l_tensor(ty, ltype_atomic());
    }
    return ty;
  }
  TypeP ltype_atomic() {
    if (is_sym("(")) {
      next();
      TypeP ty = ltype();
      expect_sym(")");
      return ty;
    }
    if (is_name("I")) {
      next();
      return unit_i();
    }
    if (is_name("Grd")) {
      next();
      expect_sym("[");
      Grade level = grade();
      expect_sym("]");
      expect_sym("(");
      TypeP body = gtype();
      expect_sym(")");
      return grd_type(level, body);
    }
    return l_atom(atom_name());
  }

  // ---- terms
  TermP term() {
    if (is_name("let")) {
      next();
      if (is_name("unitJ") || is_name("unitI")) {
        bool j = next().text == "unitJ";
        expect_sym("=");
        TermP scrut = term();
        expect_kw("in");
        TermP b = term();
        return j ? let_unit_j(scrut, b) : let_unit_i(scrut, b);
      }
      if (is_sym("(")) {
        next();
        std::string var = expect_ident("a variable");
        expect_sym(",");
        std::string var2 = expect_ident("a variable");
        expect_sym(")");
        expect_sym("=");
        TermP scrut = term();
        expect_kw("in");
        return let_pair(var, var2, scrut, term());
      }
      if (is_name("Grd")) {
        next();
        expect_sym("[");
        Grade level = grade();
        expect_sym("]");
        std::string var = expect_ident("a variable");
        expect_sym("=");
        TermP scrut = term();
        expect_kw("in");
        return let_grd(level, var, scrut, term());
      }
      throw error(peek(), "expected `unitJ`, `unitI`, `(` or `Grd` after `let`");
    }
    if (is_sym("\\")) {
      next();
      std::string var = expect_ident("a variable");
      TypeP ann;
      if (is_sym(":")) {
        next();
        ann = ltype();
      }
      expect_sym(".");
      return lam(var, ann, term());
    }
    TermP term = prefix();
    while (starts_prefix()) term = app(term, prefix());
    return term;
  }
  bool starts_prefix() const {
    if (is_sym("(")) return true;
    if (peek().kind != Tok::Name) return false;
    const std::string& text = peek().text;
    if (text == "Lin" || text == "Grd" || text == "Unlin" || text == "unitJ" || text == "unitI") return true;
    return !keywords().count(text);
  }
  TermP prefix() {
    if (is_name("Lin")) {
      next();
      return lin_term(prefix());
    }
    if (is_name("Unlin")) {
      next();
      return unlin(prefix());
    }
    if (is_name("Grd")) {
      next();
      expect_sym("[");
      Grade level = grade();
      expect_sym("]");
      return grd_term(level, prefix());
    }
    return atomic_term();
  }
  TermP atomic_term() {
    if (is_name("unitJ")) {
      next();
      return unit_j_term();
    }
    if (is_name("unitI")) {
      next();
      return unit_i_term();
    }
    if (is_sym("(")) {
      next();
      TermP a = term();
      if (is_sym(",")) {
        next();
        TermP b = term();
        expect_sym(")");
        return pair(a, b);
      }
      expect_sym(")");
      return a;
    }
    return var(expect_ident("a term"));
  }

  // ---- judgments
  Judgment judgment() {
    Judgment j;
    if (is_name("GS")) {
      j.frag = Frag::GS;
    } else if (is_name("MS")) {
      j.frag = Frag::MS;
    } else {
      throw error(peek(), "expected `GS:` or `MS:`");
    }
    next();
    expect_sym(":");
    if (!is_sym("|-") && !(j.frag == Frag::MS && is_sym(";"))) {
      for (;;) {
        std::string var = expect_ident("a variable");
        expect_sym("@");
        Grade g = grade();
        expect_sym(":");
        j.gctx.push_back({var, g, gtype()});
        if (!is_sym(",")) break;
        next();
      }
    }
    if (j.frag == Frag::MS) {
      expect_sym(";");
      if (!is_sym("|-")) {
        for (;;) {
          std::string var = expect_ident("a variable");
          expect_sym(":");
          j.lctx.push_back({var, ltype()});
          if (!is_sym(",")) break;
          next();
        }
      }
    }
    expect_sym("|-");
    j.term = term();
    expect_sym(":");
    j.type = j.frag == Frag::GS ? gtype() : ltype();
    return j;
  }

  // ---- derivations
  ParsedDeriv deriv() {
    const Token& open = peek();
    expect_sym("(");
    expect_kw("rule");
    const Token& nt = peek();
    std::string rn = expect_name_raw("a rule name");
    auto rule = rule_from_name(rn);
    if (!rule) throw ParseError(nt.line, nt.column, "unknown rule name '" + rn + "'");
    ParsedDeriv pd{*rule, {}, {}, std::nullopt, open.line, open.column};
    const RuleInfo& info = rule_info(*rule);
    for (Role role : info.roles) {
      switch (role) {
        case Role::InsG:
        case Role::InsL:
        case Role::KidG1:
        case Role::KidG2:
        case Role::KidL1:
        case Role::KidL2:
          pd.params.pos.push_back(expect_index("a position"));
          break;
        case Role::KidGList: {
          std::size_t n = expect_index("an occurrence count");
          for (std::size_t k = 0; k < n; ++k) pd.params.occ.push_back(expect_index("an occurrence position"));
          break;
        }
        case Role::Name:
          pd.params.name = expect_ident("a variable name");
          break;
        case Role::TypeArg:
          expect_sym(":");
          pd.params.type = info.frag == Frag::GS || *rule == Rule::WeakMS || *rule == Rule::WeakMT ? gtype() : ltype();
          break;
        case Role::GradeArg:
          pd.params.grade = grade();
          break;
        case Role::GradeVecArg:
          while (at_grade()) pd.params.vec.push_back(grade());
          break;
      }
    }
    while (is_sym("(")) pd.kids.push_back(deriv());
    if (is_sym(":conclude")) {
      next();
      pd.annotation = judgment();
    }
    expect_sym(")");
    return pd;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SemiringId sr_;
  const std::set<std::string>* atoms_;
};

DerivP build_rec(const ParsedDeriv& pd, SemiringId sr, const std::string& path) {
  std::vector<DerivP> kids;
  for (std::size_t i = 0; i < pd.kids.size(); ++i) {
    kids.push_back(build_rec(pd.kids[i], sr, path + "/" + std::to_string(i)));
  }
  DerivP d;
  try {
    d = make_deriv(sr, pd.rule, pd.params, std::move(kids));
  } catch (const CheckError& e) {
    throw CheckError(e.bare_message(), path);
  }
  if (pd.annotation && !judgment_eq(*pd.annotation, d->concl)) {
    throw CheckError("annotated conclusion `" + print_judgment(*pd.annotation) + "` differs from computed `" +
                         print_judgment(d->concl) + "`",
                     path);
  }
  return d;
}

}  // namespace

ProofFile parse_file(std::string_view text, std::optional<SemiringId> override_semiring) {
  Parser p(text, override_semiring.value_or(SemiringId::NatExact), nullptr);
  return p.file(override_semiring);
}

TypeP parse_gtype(std::string_view text, SemiringId sr) { return Parser(text, sr, nullptr).whole_gtype(); }
TypeP parse_ltype(std::string_view text, SemiringId sr) { return Parser(text, sr, nullptr).whole_ltype(); }
TermP parse_term(std::string_view text, SemiringId sr) { return Parser(text, sr, nullptr).whole_term(); }
Judgment parse_judgment(std::string_view text, SemiringId sr) { return Parser(text, sr, nullptr).whole_judgment(); }
ParsedDeriv parse_deriv(std::string_view text, SemiringId sr) { return Parser(text, sr, nullptr).whole_deriv(); }

DerivP build_deriv(const ParsedDeriv& pd, SemiringId sr) { return build_rec(pd, sr, "root"); }

}  // namespace mgl
