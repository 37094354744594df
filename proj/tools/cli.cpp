#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mgl/cut_elim.hpp"
#include "mgl/eq_theory.hpp"
#include "mgl/nd_checker.hpp"
#include "mgl/parser.hpp"
#include "mgl/sc_checker.hpp"
#include "mgl/structural.hpp"
#include "mgl/translate.hpp"

namespace mgl::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Command { Check, Normalize, Translate, Infer, Eq };

struct Options {
  Command cmd = Command::Check;
  std::string file;
  std::string semiring;
  std::string format = "text";
  std::string output;
  std::string to;
  bool trace = false;
  bool strict_grd = false;
  std::string left;
  std::string right;
};

struct ItemResult {
  std::string name;
  std::optional<std::string> judgment;
  bool cut_free = false;
  std::vector<std::string> errors;
  DerivP deriv;
  std::vector<TraceStep> trace;
  bool internal = false;
};

// `#N` names of unnamed goals are not lexable; output files use goal_N.
std::string printable_name(const std::string& name) {
  return !name.empty() && name[0] == '#' ? "goal_" + name.substr(1) : name;
}

bool cut_free(const Deriv& d) { return system_of(d) == System::ND || is_cut_free(d); }

DerivP source_deriv(const Item& item, SemiringId sr, const InferOptions& iopts) {
  if (item.kind == ItemKind::Deriv) return build_deriv(*item.deriv, sr);
  return elaborate_nd(sr, *item.goal, iopts);
}

std::string inferred_judgment(const Item& item, SemiringId sr, const InferOptions& iopts) {
  const Judgment& g = *item.goal;
  Usage usage = g.frag == Frag::GS ? infer_usage_gt(sr, g.term, g.gctx, iopts)
                               : infer_usage_mt(sr, g.term, g.gctx, g.lctx, iopts);
  Judgment j = g;
  for (std::size_t i = 0; i < j.gctx.size(); ++i) j.gctx[i].grade = usage.grades[i];
  j.type = usage.type;
  return print_judgment(j);
}

ItemResult process(const Item& item, SemiringId sr, const Options& o, const ItemHook& hook) {
  ItemResult r;
  r.name = printable_name(item.name);
  InferOptions iopts{o.strict_grd};
  try {
    DerivP d = source_deriv(item, sr, iopts);
    switch (o.cmd) {
      case Command::Check:
      case Command::Infer:
      case Command::Eq:
        break;
      case Command::Normalize:
        if (system_of(*d) == System::SC) {
          Normalized n = eliminate_cuts(d);
          if (!check_subformula(*n.deriv)) throw InternalError("normal form violates the subformula property");
          d = n.deriv;
          r.trace = std::move(n.trace);
        }
        break;
      case Command::Translate:
        if (o.to == "nd" && system_of(*d) == System::SC) d = sc_to_nd(d);
        if (o.to == "sc" && system_of(*d) == System::ND) d = nd_to_sc(d);
        break;
    }
    if (hook) hook(r.name, *d);
    r.deriv = d;
    r.cut_free = cut_free(*d);
    // Every pipeline stage preserves the sequent and the term up to alpha, so
    // goals are reported with the binder names the user wrote.
    if (item.kind == ItemKind::Goal) {
      r.judgment = o.cmd == Command::Infer ? inferred_judgment(item, sr, iopts) : print_judgment(*item.goal);
    } else {
      r.judgment = print_judgment(d->concl);
    }
  } catch (const CheckError& e) {
    r.errors.push_back(e.what());
  } catch (const SemiringError& e) {
    r.errors.push_back(e.what());
  } catch (const InternalError& e) {
    r.errors.push_back(std::string("internal: ") + e.what());
    r.internal = true;
  }
  return r;
}

json trace_json(const std::vector<TraceStep>& trace) {
  json arr = json::array();
  for (const auto& step : trace) {
    json inner = json::array();
    for (auto f : step.inner) inner.push_back(std::string(family_name(f)));
    arr.push_back({{"position", step.position},
                   {"family", std::string(family_name(step.family))},
                   {"connective", step.connective},
                   {"rank", step.formula_rank},
                   {"depth", step.premise_depth},
                   {"inner", inner},
                   {"cut_rank_before", step.cut_rank_before},
                   {"cut_rank_after", step.cut_rank_after}});
  }
  return arr;
}

json item_json(const ItemResult& r, bool with_trace) {
  json j{{"name", r.name},
         {"judgment", r.judgment ? json(*r.judgment) : json(nullptr)},
         {"cut_free", r.cut_free},
         {"errors", r.errors}};
  if (with_trace) j["trace"] = trace_json(r.trace);
  return j;
}

void text_item(std::ostream& out, const ItemResult& r, bool with_trace) {
  if (r.errors.empty()) {
    out << "ok    " << r.name << "  " << *r.judgment << (r.cut_free ? "" : "  [cuts]") << "\n";
  } else {
    for (const auto& e : r.errors) out << "fail  " << r.name << "  " << e << "\n";
  }
  if (with_trace) {
    std::size_t i = 0;
    for (const auto& step : r.trace) {
      out << "  step " << ++i << "  " << step.position << "  " << family_name(step.family);
      if (!step.connective.empty()) out << "(" << step.connective << ")";
      out << "  rank " << step.formula_rank << "  cut_rank " << step.cut_rank_before << " -> " << step.cut_rank_after
          << "\n";
    }
  }
}

std::string status_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kFail: return "fail";
    case kParse: return "parse_error";
    default: return "internal_error";
  }
}

int report_error(const Options& o, std::ostream& out, std::ostream& err, int code, const std::string& msg) {
  if (o.format == "json") {
    json j{{"status", status_name(code)}, {"items", json::array()}, {"errors", json::array({msg})}};
    out << j.dump(2) << "\n";
  } else {
    err << "mgl: " << msg << "\n";
  }
  return code;
}

std::optional<std::string> read_input(const std::string& file, std::istream& in) {
  std::ostringstream ss;
  if (file == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(file, std::ios::binary);
  if (!f) return std::nullopt;
  ss << f.rdbuf();
  return ss.str();
}

int run_eq(const ProofFile& pf, const Options& o, std::ostream& out, std::ostream& err, const ItemHook& hook) {
  const Item* items[2] = {nullptr, nullptr};
  const std::string* names[2] = {&o.left, &o.right};
  for (int k = 0; k < 2; ++k) {
    for (const auto& it : pf.items) {
      if (it.name == *names[k] || printable_name(it.name) == *names[k]) items[k] = &it;
    }
    if (!items[k]) return report_error(o, out, err, kParse, "no item named '" + *names[k] + "'");
  }
  ItemResult res[2] = {process(*items[0], pf.semiring, o, hook), process(*items[1], pf.semiring, o, hook)};
  std::vector<std::string> errors;
  std::string verdict = "unknown";
  int code = kFail;
  bool internal = res[0].internal || res[1].internal;
  if (res[0].errors.empty() && res[1].errors.empty()) {
    try {
      DerivP a = system_of(*res[0].deriv) == System::ND ? nd_to_sc(res[0].deriv) : res[0].deriv;
      DerivP b = system_of(*res[1].deriv) == System::ND ? nd_to_sc(res[1].deriv) : res[1].deriv;
      if (equiv_oracle(a, b) == Equiv::Equal) {
        verdict = "equal";
        code = kOk;
      }
    } catch (const CheckError& e) {
      errors.push_back(e.what());
    } catch (const InternalError& e) {
      errors.push_back(std::string("internal: ") + e.what());
      internal = true;
    }
  }
  if (internal) code = kInternal;
  if (o.format == "json") {
    json j{{"status", status_name(code)},
           {"items", json::array({item_json(res[0], false), item_json(res[1], false)})},
           {"errors", errors},
           {"equiv", verdict}};
    out << j.dump(2) << "\n";
  } else {
    for (const auto& result : res) text_item(out, result, false);
    for (const auto& e : errors) out << "error  " << e << "\n";
    out << verdict << "\n";
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const std::string& env_semiring, const ItemHook& hook) {
  Options o;
  o.semiring = env_semiring;
  CLI::App app{"Proof checker and normalizer for mixed graded/linear logic", "mgl"};
  app.require_subcommand(1);
  auto common = [&o](CLI::App* sub) {
    sub->add_option("FILE", o.file, "input .mgl file, or - for stdin")->required();
    sub->add_option("--semiring", o.semiring, "semiring id overriding the file header")
        ->check(CLI::IsMember({"nat-exact", "nat-leq", "n01w", "sec", "rat"}));
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto* check = app.add_subcommand("check", "check every derivation and goal");
  common(check);
  auto* norm = app.add_subcommand("normalize", "eliminate cuts from sequent-calculus derivations");
  common(norm);
  norm->add_option("-o", o.output, "write the normal forms to this file");
  norm->add_flag("--trace", o.trace, "report each cut reduction");
  auto* tr = app.add_subcommand("translate", "translate between sequent calculus and natural deduction");
  tr->add_option("--to", o.to, "target system")->required()->check(CLI::IsMember({"nd", "sc"}));
  common(tr);
  tr->add_option("-o", o.output, "write the translations to this file");
  auto* inf = app.add_subcommand("infer", "infer least grades for goals");
  common(inf);
  inf->add_flag("--strict-grd", o.strict_grd, "require Grd-bound variables at exactly their grade");
  auto* eq = app.add_subcommand("eq", "probe equality of two derivations");
  common(eq);
  eq->add_option("NAME1", o.left)->required();
  eq->add_option("NAME2", o.right)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kParse;
  }
  if (*norm) o.cmd = Command::Normalize;
  if (*tr) o.cmd = Command::Translate;
  if (*inf) o.cmd = Command::Infer;
  if (*eq) o.cmd = Command::Eq;

  std::optional<SemiringId> override_sr;
  if (!o.semiring.empty()) {
    override_sr = semiring_from_name(o.semiring);
    if (!override_sr) return report_error(o, out, err, kParse, "unknown semiring '" + o.semiring + "'");
  }
  auto text = read_input(o.file, in);
  if (!text) return report_error(o, out, err, kParse, "cannot read '" + o.file + "'");

  ProofFile pf;
  try {
    pf = parse_file(*text, override_sr);
  } catch (const ParseError& e) {
    return report_error(o, out, err, kParse, e.what());
  }
  if (o.cmd == Command::Eq) return run_eq(pf, o, out, err, hook);

  std::vector<ItemResult> results;
  for (const auto& item : pf.items) results.push_back(process(item, pf.semiring, o, hook));
  int code = kOk;
  for (const auto& res : results) {
    if (res.internal) code = kInternal;
    else if (!res.errors.empty() && code == kOk) code = kFail;
  }

  if (!o.output.empty()) {
    std::vector<PrintedItem> printed;
    for (const auto& res : results) {
      if (res.deriv) printed.push_back({printable_name(res.name), res.deriv});
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) return report_error(o, out, err, kParse, "cannot write '" + o.output + "'");
    f << print_file(pf.semiring, pf.atoms, printed);
  }

  if (o.format == "json") {
    json items = json::array();
    for (const auto& res : results) items.push_back(item_json(res, o.trace));
    json j{{"status", status_name(code)}, {"items", items}, {"errors", json::array()}};
    out << j.dump(2) << "\n";
  } else {
    for (const auto& res : results) text_item(out, res, o.trace);
  }
  return code;
}

}  // namespace mgl::cli
