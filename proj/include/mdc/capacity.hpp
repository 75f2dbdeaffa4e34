#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdc/patterns.hpp"
#include "mdc/rational.hpp"

namespace mdc {

/// A rate pair measured in units of the per-path capacity C.
struct Rate {
  Rational r1{0};
  Rational r2{0};

  friend bool operator==(const Rate&, const Rate&) = default;
};

/// a1*R1 + a2*R2 <= bound*C, with a1, a2, bound >= 0 and (a1, a2) != 0.
struct RateInequality {
  Rational a1;
  Rational a2;
  Rational bound;

  RateInequality(Rational a1, Rational a2, Rational bound);

  bool satisfied_by(const Rate& r) const {
    return a1 * r.r1 + a2 * r.r2 <= bound;
  }
  bool tight_at(const Rate& r) const {
    return a1 * r.r1 + a2 * r.r2 == bound;
  }

  friend bool operator==(const RateInequality&,
                         const RateInequality&) = default;
};

enum class Exactness { ExactClosedForm, OuterOnly, NumericallyBracketed };

enum class CaseLabel {
  G2Empty,
  G1Empty,
  C1Holds,
  Case2_SingletonG1,
  Case2_LargeG1_Kappa2Eq2,
  Case3_LargeG1_Kappa2Eq3,
  ExternalSmallG1,
  AllPatterns,
  Unsupported,
};

const char* to_string(CaseLabel label);
const char* to_string(Exactness exactness);

struct RateRegion {
  std::vector<RateInequality> inequalities;
  Exactness exactness = Exactness::OuterOnly;
  std::vector<Rate> corner_points;
  CaseLabel case_label = CaseLabel::Unsupported;
};

struct C1Result {
  bool holds = false;
  std::optional<PatternSet> witness;
};

C1Result check_c1(const Grouping& g);

// Throws Error(InvalidGrouping) when A1, A2 or the all-unblocked rule fails,
// Error(DegenerateInstance) when both groups are empty.
CaseLabel classify(const Grouping& g, const NetworkConfig& cfg);

RateRegion region(const Grouping& g, const NetworkConfig& cfg);

RateRegion cutset_outer_bound(const Grouping& g, const NetworkConfig& cfg);

// `rate` in units of C. Throws Error(InvalidInput) on negative rates.
bool contains(const RateRegion& region, const Rate& rate);

// Drops inequalities implied by the others over the nonnegative quadrant.
std::vector<RateInequality> remove_redundant(std::vector<RateInequality> ineqs);

// Non-origin vertices of {R >= 0 : ineqs}, ascending in R1. The region must
// be bounded.
std::vector<Rate> corner_points(const std::vector<RateInequality>& ineqs);

// True when `rate` lies in the region and no feasible point exceeds it in
// both coordinates.
bool on_dominant_face(const RateRegion& region, const Rate& rate);

bool is_exact_case(CaseLabel label);

// "R1 + 0.5·R2 ≤ 1" with the bound scaled by `capacity`.
std::string format_inequality(const RateInequality& ineq, double capacity);

}  // namespace mdc
