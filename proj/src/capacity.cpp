#include "mdc/capacity.hpp"

#include <algorithm>

#include "mdc/error.hpp"

namespace mdc {

RateInequality::RateInequality(Rational a1_, Rational a2_, Rational bound_)
    : a1(a1_), a2(a2_), bound(bound_) {
  if (a1 < 0 || a2 < 0 || bound < 0 || (a1 == 0 && a2 == 0))
    throw Error(ErrorKind::InvalidInput,
                "rate inequality needs nonnegative coefficients, not both "
                "zero, and a nonnegative bound");
}

const char* to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::G2Empty: return "G2Empty";
    case CaseLabel::G1Empty: return "G1Empty";
    case CaseLabel::C1Holds: return "C1Holds";
    case CaseLabel::Case2_SingletonG1: return "Case2_SingletonG1";
    case CaseLabel::Case2_LargeG1_Kappa2Eq2: return "Case2_LargeG1_Kappa2Eq2";
    case CaseLabel::Case3_LargeG1_Kappa2Eq3: return "Case3_LargeG1_Kappa2Eq3";
    case CaseLabel::ExternalSmallG1: return "ExternalSmallG1";
    case CaseLabel::AllPatterns: return "AllPatterns";
    case CaseLabel::Unsupported: return "Unsupported";
  }
  return "Unsupported";
}

const char* to_string(Exactness exactness) {
  switch (exactness) {
    case Exactness::ExactClosedForm: return "ExactClosedForm";
    case Exactness::OuterOnly: return "OuterOnly";
    case Exactness::NumericallyBracketed: return "NumericallyBracketed";
  }
  return "OuterOnly";
}

bool is_exact_case(CaseLabel label) {
  switch (label) {
    case CaseLabel::G2Empty:
    case CaseLabel::G1Empty:
    case CaseLabel::C1Holds:
    case CaseLabel::Case2_SingletonG1:
    case CaseLabel::Case2_LargeG1_Kappa2Eq2:
    case CaseLabel::Case3_LargeG1_Kappa2Eq3:
      return true;
    default:
      return false;
  }
}

C1Result check_c1(const Grouping& g) {
  if (g.g2().empty())
    throw Error(ErrorKind::Precondition,
                "condition C1 needs a non-empty group 2");
  // Single-path patterns in G1 are distinct, so they have distinct paths. At
  // least kappa2 of them covering S(b*) exactly means every path of b* has its
  // own single-path pattern in G1.
  for (const auto& bstar : kappa_minimizers(g.g2())) {
    PatternSet witness;
    for (int path : unblocked_set(bstar)) {
      const auto single = BlockagePattern::from_bits(
          g.num_paths(), 1u << (g.num_paths() - path));
      if (!g.g1().contains(single)) break;
      witness.insert(single);
    }
    if (static_cast<int>(witness.size()) == bstar.count())
      return {true, std::move(witness)};
  }
  return {false, std::nullopt};
}

CaseLabel classify(const Grouping& g, const NetworkConfig& cfg) {
  if (cfg.num_paths != g.num_paths())
    throw Error(ErrorKind::InvalidInput,
                "grouping and configuration disagree on the number of paths");
  if (g.empty())
    throw Error(ErrorKind::DegenerateInstance, "both groups are empty");
  const auto report = validate_grouping(g);
  if (!report.conforming()) {
    std::string msg = "grouping violates the ordering assumptions:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw Error(ErrorKind::InvalidGrouping, msg);
  }
  if (g.g2().empty()) return CaseLabel::G2Empty;
  if (g.g1().empty()) return CaseLabel::G1Empty;
  const std::size_t total = (std::size_t{1} << g.num_paths()) - 1;
  if (g.num_paths() <= 24 && g.g1().size() + g.g2().size() == total)
    return CaseLabel::AllPatterns;
  if (check_c1(g).holds) return CaseLabel::C1Holds;
  if (g.num_paths() != 3) return CaseLabel::Unsupported;

  const std::size_t n1 = g.g1().size();
  const int kappa2 = *report.kappa2;
  if (n1 == 1) return CaseLabel::Case2_SingletonG1;
  if (n1 == 2 || n1 == 3) return CaseLabel::ExternalSmallG1;
  if (kappa2 == 2) return CaseLabel::Case2_LargeG1_Kappa2Eq2;
  if (kappa2 == 3) return CaseLabel::Case3_LargeG1_Kappa2Eq3;
  return CaseLabel::Unsupported;
}

namespace {

std::optional<Rate> intersect(const RateInequality& a,
                              const RateInequality& b) {
  const Rational det = a.a1 * b.a2 - a.a2 * b.a1;
  if (det == 0) return std::nullopt;
  return Rate{(a.bound * b.a2 - a.a2 * b.bound) / det,
              (a.a1 * b.bound - a.bound * b.a1) / det};
}

bool feasible(const std::vector<RateInequality>& ineqs, const Rate& r) {
  if (r.r1 < 0 || r.r2 < 0) return false;
  return std::all_of(ineqs.begin(), ineqs.end(),
                     [&](const auto& q) { return q.satisfied_by(r); });
}

// Vertices of {R >= 0 : ineqs}, origin included, unsorted.
std::vector<Rate> vertices(const std::vector<RateInequality>& ineqs) {
  std::vector<RateInequality> lines = ineqs;
  lines.emplace_back(1, 0, 0);  // R1 = 0
  lines.emplace_back(0, 1, 0);  // R2 = 0
  std::vector<Rate> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto p = intersect(lines[i], lines[j]);
      if (!p || !feasible(ineqs, *p)) continue;
      if (std::find(out.begin(), out.end(), *p) == out.end()) out.push_back(*p);
    }
  }
  return out;
}

RateRegion finish(std::vector<RateInequality> ineqs, Exactness exactness,
                  CaseLabel label) {
  RateRegion r;
  r.inequalities = remove_redundant(std::move(ineqs));
  r.exactness = exactness;
  r.corner_points = corner_points(r.inequalities);
  r.case_label = label;
  return r;
}

}  // namespace

std::vector<RateInequality> remove_redundant(std::vector<RateInequality> ineqs) {
  for (std::size_t i = 0; i < ineqs.size();) {
    std::vector<RateInequality> others;
    for (std::size_t j = 0; j < ineqs.size(); ++j)
      if (j != i) others.push_back(ineqs[j]);
    const bool r1_bounded = std::any_of(
        others.begin(), others.end(), [](const auto& q) { return q.a1 > 0; });
    const bool r2_bounded = std::any_of(
        others.begin(), others.end(), [](const auto& q) { return q.a2 > 0; });
    bool redundant = false;
    if ((ineqs[i].a1 == 0 || r1_bounded) && (ineqs[i].a2 == 0 || r2_bounded)) {
      // The others bound every direction ineqs[i] measures, so the maximum of
      // its left-hand side is attained at a vertex.
      const auto vs = vertices(others);
      redundant = std::all_of(vs.begin(), vs.end(), [&](const Rate& v) {
        return ineqs[i].satisfied_by(v);
      });
    }
    if (redundant)
      ineqs.erase(ineqs.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return ineqs;
}

std::vector<Rate> corner_points(const std::vector<RateInequality>& ineqs) {
  auto vs = vertices(ineqs);
  std::erase(vs, Rate{});
  std::sort(vs.begin(), vs.end(), [](const Rate& a, const Rate& b) {
    if (a.r1 != b.r1) return a.r1 < b.r1;
    return a.r2 > b.r2;
  });
  return vs;
}

RateRegion cutset_outer_bound(const Grouping& g, const NetworkConfig& cfg) {
  if (cfg.num_paths != g.num_paths())
    throw Error(ErrorKind::InvalidInput,
                "grouping and configuration disagree on the number of paths");
  if (g.empty())
    throw Error(ErrorKind::DegenerateInstance,
                "cut-set bound of an instance with no patterns");
  std::vector<RateInequality> ineqs;
  for (const auto& b : g.g1()) ineqs.emplace_back(1, 0, b.count());
  for (const auto& b : g.g2()) ineqs.emplace_back(1, 1, b.count());
  if (g.g2().empty()) ineqs.emplace_back(0, 1, 0);
  CaseLabel label = CaseLabel::Unsupported;
  try {
    label = classify(g, cfg);
  } catch (const Error&) {
  }
  return finish(std::move(ineqs), Exactness::OuterOnly, label);
}

RateRegion region(const Grouping& g, const NetworkConfig& cfg) {
  const CaseLabel label = classify(g, cfg);
  const bool large_e = g.num_paths() > 3;
  if (!is_exact_case(label) ||
      (large_e && label != CaseLabel::G2Empty && label != CaseLabel::G1Empty &&
       label != CaseLabel::C1Holds)) {
    auto outer = cutset_outer_bound(g, cfg);
    outer.case_label = label;
    return outer;
  }
  const int k1 = g.g1().empty() ? 0 : kappa(g.g1()).kappa;
  const int k2 = g.g2().empty() ? 0 : kappa(g.g2()).kappa;
  std::vector<RateInequality> ineqs;
  switch (label) {
    case CaseLabel::G2Empty:
      ineqs.emplace_back(1, 0, k1);
      ineqs.emplace_back(0, 1, 0);
      break;
    case CaseLabel::G1Empty:
      ineqs.emplace_back(1, 1, k2);
      break;
    case CaseLabel::C1Holds:
      ineqs.emplace_back(1, Rational(1, k2), 1);
      break;
    case CaseLabel::Case2_SingletonG1:
    case CaseLabel::Case2_LargeG1_Kappa2Eq2:
      ineqs.emplace_back(1, 0, k1);
      ineqs.emplace_back(1, 1, k2);
      break;
    case CaseLabel::Case3_LargeG1_Kappa2Eq3:
      ineqs.emplace_back(1, 0, k1);
      ineqs.emplace_back(2, 1, 3);
      break;
    default:
      break;
  }
  return finish(std::move(ineqs), Exactness::ExactClosedForm, label);
}

bool contains(const RateRegion& region, const Rate& rate) {
  if (rate.r1 < 0 || rate.r2 < 0)
    throw Error(ErrorKind::InvalidInput, "rates must be nonnegative");
  return feasible(region.inequalities, rate);
}

bool on_dominant_face(const RateRegion& region, const Rate& rate) {
  if (!contains(region, rate)) return false;
  const auto& cs = region.corner_points;
  if (std::find(cs.begin(), cs.end(), rate) != cs.end()) return true;
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
    const Rate& a = cs[i];
    const Rate& b = cs[i + 1];
    const Rational cross = (b.r1 - a.r1) * (rate.r2 - a.r2) -
                           (b.r2 - a.r2) * (rate.r1 - a.r1);
    if (cross != 0) continue;
    if (rate.r1 >= std::min(a.r1, b.r1) && rate.r1 <= std::max(a.r1, b.r1) &&
        rate.r2 >= std::min(a.r2, b.r2) && rate.r2 <= std::max(a.r2, b.r2))
      return true;
  }
  return false;
}

std::string format_inequality(const RateInequality& ineq, double capacity) {
  auto term = [](const Rational& c, const char* name) {
    if (c == 1) return std::string(name);
    return to_decimal_string(c) + "·" + name;
  };
  std::string lhs;
  if (ineq.a1 != 0) lhs = term(ineq.a1, "R1");
  if (ineq.a2 != 0) lhs += (lhs.empty() ? "" : " + ") + term(ineq.a2, "R2");
  const Rational scaled = ineq.bound * rational_from_double(capacity);
  return lhs + " ≤ " + to_decimal_string(scaled);
}

}  // namespace mdc
