#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mgl/errors.hpp"

namespace mgl {

// The five built-in preordered semirings.
//   NatExact  naturals, discrete order
//   NatLeq    naturals, usual order
//   N01w      {0, 1, w}; sums and products leaving {0, 1} saturate to w
//   Sec       {Lo, Hi}; 1 = Lo, 0 = Hi, Lo <= Hi
//   Rat       nonnegative rationals, usual order
enum class SemiringId { NatExact, NatLeq, N01w, Sec, Rat };

std::string_view semiring_name(SemiringId id);
std::optional<SemiringId> semiring_from_name(std::string_view name);
const std::vector<SemiringId>& all_semirings();

using Rational = boost::multiprecision::cpp_rational;

// An element of one semiring carrier. The carrier is encoded in a rational:
// naturals and rationals directly, N01w as 0/1/2 (2 is w), Sec as 0 (Lo) / 1 (Hi).
class Grade {
 public:
  static Grade zero(SemiringId id);
  static Grade one(SemiringId id);
  static Grade natural(SemiringId id, std::uint64_t n);  // NatExact, NatLeq, Rat
  static Grade omega();                                  // N01w
  static Grade lo();                                     // Sec
  static Grade hi();                                     // Sec
  static Grade rational(std::uint64_t num, std::uint64_t den);

  SemiringId semiring() const { return id_; }
  const Rational& raw() const { return value_; }

  friend bool operator==(const Grade& a, const Grade& b) {
    return a.id_ == b.id_ && a.value_ == b.value_;
  }
  friend bool operator!=(const Grade& a, const Grade& b) { return !(a == b); }

 private:
  Grade(SemiringId id, Rational v) : id_(id), value_(std::move(v)) {}
  friend Grade grade_add(const Grade&, const Grade&);
  friend Grade grade_mul(const Grade&, const Grade&);
  friend std::optional<Grade> parse_grade(SemiringId, std::string_view);

  SemiringId id_;
  Rational value_;
};

// Throw SemiringError when the operands come from different instances.
Grade grade_add(const Grade& a, const Grade& b);
Grade grade_mul(const Grade& a, const Grade& b);
bool grade_leq(const Grade& a, const Grade& b);

inline Grade operator+(const Grade& a, const Grade& b) { return grade_add(a, b); }
inline Grade operator*(const Grade& a, const Grade& b) { return grade_mul(a, b); }

std::optional<Grade> parse_grade(SemiringId id, std::string_view text);
std::string to_string(const Grade& g);

using GradeVec = std::vector<Grade>;

GradeVec zero_vec(SemiringId id, std::size_t n);
GradeVec vec_add(const GradeVec& a, const GradeVec& b);
GradeVec vec_scale(const Grade& grade, const GradeVec& v);
bool vec_leq(const GradeVec& a, const GradeVec& b);

// Multicut product: sum over k of delta[k] * delta2. Requires delta.size() == n.
GradeVec boxast(const GradeVec& delta, const GradeVec& delta2, std::size_t n);

}  // namespace mgl
