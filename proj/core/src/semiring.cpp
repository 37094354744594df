#include "mgl/semiring.hpp"

#include <array>
#include <charconv>

namespace mgl {

namespace {

struct NamedInstance {
  SemiringId id;
  std::string_view name;
};

constexpr std::array<NamedInstance, 5> kInstances{{
    {SemiringId::NatExact, "nat-exact"},
    {SemiringId::NatLeq, "nat-leq"},
    {SemiringId::N01w, "n01w"},
    {SemiringId::Sec, "sec"},
    {SemiringId::Rat, "rat"},
}};

// Sec encoding: Lo = 0, Hi = 1. Multiplication has unit Lo and is the join;
// addition has unit Hi and is the meet.
constexpr int kLo = 0;
constexpr int kHi = 1;
constexpr int kOmega = 2;

void require_same(const Grade& a, const Grade& b) {
  if (a.semiring() != b.semiring()) {
    throw SemiringError("grade instance mismatch: " + std::string(semiring_name(a.semiring())) +
                        " vs " + std::string(semiring_name(b.semiring())));
  }
}

int small(const Rational& v) { return static_cast<int>(boost::multiprecision::numerator(v)); }

bool parse_uint(std::string_view text, std::uint64_t& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::string_view semiring_name(SemiringId id) {
  for (const auto& inst : kInstances) {
    if (inst.id == id) return inst.name;
  }
  return "?";
}

std::optional<SemiringId> semiring_from_name(std::string_view name) {
  for (const auto& inst : kInstances) {
    if (inst.name == name) return inst.id;
  }
  return std::nullopt;
}

const std::vector<SemiringId>& all_semirings() {
  static const std::vector<SemiringId> ids = {SemiringId::NatExact, SemiringId::NatLeq,
                                              SemiringId::N01w, SemiringId::Sec, SemiringId::Rat};
  return ids;
}

Grade Grade::zero(SemiringId id) { return Grade(id, id == SemiringId::Sec ? kHi : 0); }
Grade Grade::one(SemiringId id) { return Grade(id, id == SemiringId::Sec ? kLo : 1); }

Grade Grade::natural(SemiringId id, std::uint64_t n) {
  if (id == SemiringId::N01w || id == SemiringId::Sec) {
    throw SemiringError("natural literal in " + std::string(semiring_name(id)));
  }
  return Grade(id, Rational(n));
}

Grade Grade::omega() { return Grade(SemiringId::N01w, kOmega); }
Grade Grade::lo() { return Grade(SemiringId::Sec, kLo); }
Grade Grade::hi() { return Grade(SemiringId::Sec, kHi); }

Grade Grade::rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw SemiringError("zero denominator");
  return Grade(SemiringId::Rat, Rational(num, den));
}

Grade grade_add(const Grade& a, const Grade& b) {
  require_same(a, b);
  switch (a.id_) {
    case SemiringId::N01w: {
      int lhs_bits = small(a.value_), y = small(b.value_);
      return Grade(a.id_, std::min(lhs_bits + y, kOmega));
    }
    case SemiringId::Sec:
      return Grade(a.id_, std::min(small(a.value_), small(b.value_)));
    default:
      return Grade(a.id_, a.value_ + b.value_);
  }
}

Grade grade_mul(const Grade& a, const Grade& b) {
  require_same(a, b);
  switch (a.id_) {
    case SemiringId::N01w: {
      int lhs_bits = small(a.value_), y = small(b.value_);
      return Grade(a.id_, std::min(lhs_bits * y, kOmega));
    }
    case SemiringId::Sec:
      return Grade(a.id_, std::max(small(a.value_), small(b.value_)));
    default:
      return Grade(a.id_, a.value_ * b.value_);
  }
}

bool grade_leq(const Grade& a, const Grade& b) {
  require_same(a, b);
  switch (a.semiring()) {
    case SemiringId::NatExact:
      return a.raw() == b.raw();
    case SemiringId::N01w:
      // 0 and 1 are incomparable; both lie below w.
      return a.raw() == b.raw() || small(b.raw()) == kOmega;
    default:
      return a.raw() <= b.raw();
  }
}

std::optional<Grade> parse_grade(SemiringId id, std::string_view text) {
  std::uint64_t n = 0;
  switch (id) {
    case SemiringId::NatExact:
    case SemiringId::NatLeq:
      if (parse_uint(text, n)) return Grade(id, Rational(n));
      return std::nullopt;
    case SemiringId::N01w:
      if (text == "0") return Grade(id, 0);
      if (text == "1") return Grade(id, 1);
      if (text == "w") return Grade(id, kOmega);
      return std::nullopt;
    case SemiringId::Sec:
      if (text == "Lo") return Grade(id, kLo);
      if (text == "Hi") return Grade(id, kHi);
      return std::nullopt;
    case SemiringId::Rat: {
      auto slash = text.find('/');
      if (slash == std::string_view::npos) {
        if (parse_uint(text, n)) return Grade(id, Rational(n));
        return std::nullopt;
      }
      std::uint64_t d = 0;
      if (!parse_uint(text.substr(0, slash), n) || !parse_uint(text.substr(slash + 1), d) || d == 0) {
        return std::nullopt;
      }
      return Grade(id, Rational(n, d));
    }
  }
  return std::nullopt;
}

std::string to_string(const Grade& g) {
  switch (g.semiring()) {
    case SemiringId::N01w: {
      int v = small(g.raw());
      return v == kOmega ? "w" : std::to_string(v);
    }
    case SemiringId::Sec:
      return small(g.raw()) == kLo ? "Lo" : "Hi";
    default: {
      auto num = boost::multiprecision::numerator(g.raw());
      auto den = boost::multiprecision::denominator(g.raw());
      if (den == 1) return num.str();
      return num.str() + "/" + den.str();
    }
  }
}

GradeVec zero_vec(SemiringId id, std::size_t n) { return GradeVec(n, Grade::zero(id)); }

GradeVec vec_add(const GradeVec& a, const GradeVec& b) {
  if (a.size() != b.size()) {
    throw SemiringError("vector length mismatch: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
  }
  GradeVec out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

GradeVec vec_scale(const Grade& grade, const GradeVec& v) {
  GradeVec out;
  out.reserve(v.size());
  for (const auto& g : v) out.push_back(grade * g);
  return out;
}

bool vec_leq(const GradeVec& a, const GradeVec& b) {
  if (a.size() != b.size()) {
    throw SemiringError("vector length mismatch: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!grade_leq(a[i], b[i])) return false;
  }
  return true;
}

GradeVec boxast(const GradeVec& delta, const GradeVec& delta2, std::size_t n) {
  if (delta.size() != n) {
    throw SemiringError("boxast arity: expected " + std::to_string(n) + " grades, got " +
                        std::to_string(delta.size()));
  }
  if (delta2.empty()) return {};
  GradeVec acc = zero_vec(delta2.front().semiring(), delta2.size());
  for (const auto& g : delta) acc = vec_add(acc, vec_scale(g, delta2));
  return acc;
}

}  // namespace mgl
