#include "corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mgl/nd_checker.hpp"

namespace mgl::testing {

const std::vector<std::string>& good_corpus_files() {
  static const std::vector<std::string> files = {"promotion.mgl", "cuts.mgl",      "nd.mgl",   "empty.mgl",
                                                 "equiv.mgl",     "semirings.mgl", "rewrites.mgl"};
  return files;
}

std::string corpus_path(const std::string& file) { return std::string(MGL_CORPUS_DIR) + "/" + file; }
std::string golden_path(const std::string& file) { return std::string(MGL_GOLDEN_DIR) + "/" + file; }

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ProofFile load_file(const std::string& file) { return parse_file(read_text(corpus_path(file))); }

std::vector<CorpusItem> load_corpus() {
  std::vector<CorpusItem> out;
  for (const auto& file : good_corpus_files()) {
    ProofFile pf = load_file(file);
    for (const auto& item : pf.items) {
      DerivP d = item.kind == ItemKind::Deriv ? build_deriv(*item.deriv, pf.semiring)
                                              : elaborate_nd(pf.semiring, *item.goal);
      out.push_back({file, item.name, d});
    }
  }
  return out;
}

}  // namespace mgl::testing
