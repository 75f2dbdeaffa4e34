// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <array>
#include <bit>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "mdc/capacity.hpp"
#include "mdc/codes.hpp"
#include "mdc/combnet.hpp"
#include "mdc/oracle.hpp"
#include "mdc/simulate.hpp"

using namespace mdc;

namespace {

const NetworkConfig kCfg = mdc::test::config(3);

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

bool same_ineqs(const RateRegion& r,
                std::initializer_list<std::array<Rational, 3>> rows) {
  if (r.inequalities.size() != rows.size()) return false;
  std::size_t i = 0;
  for (const auto& row : rows)
    if (!(r.inequalities[i++] == RateInequality(row[0], row[1], row[2])))
      return false;
  return true;
}

std::string rate_text(const Rate& r) {
  return "(" + to_string(r.r1) + ", " + to_string(r.r2) + ")";
}

// Example 3: C1 with witness {100, 010}; region R1 + R2/2 <= C.
Outcome criterion1() {
  Outcome o;
  const auto g = mdc::test::example3();
  const auto c1 = check_c1(g);
  o.require(c1.holds, "C1 does not hold");
  o.require(c1.witness && *c1.witness == mdc::test::patterns({"100", "010"}),
            "witness is not {100, 010}");
  const auto r = region(g, kCfg);
  o.require(r.case_label == CaseLabel::C1Holds, "case is not C1Holds");
  o.require(r.exactness == Exactness::ExactClosedForm, "region is not exact");
  o.require(same_ineqs(r, {{1, Rational(1, 2), 1}}),
            "region is not {R1 + R2/2 <= C}");
  if (o.ok) o.detail = "C1 holds, witness {100,010}, region R1 + 0.5·R2 ≤ 1";
  return o;
}

// Example 4: C1 fails, Case2 large-G1, region {R1 <= C, R1 + R2 <= 2C},
// corner (C, C) scheme decodes.
Outcome criterion2() {
  Outcome o;
  const auto g = mdc::test::example4();
  o.require(!check_c1(g).holds, "C1 unexpectedly holds");
  const auto r = region(g, kCfg);
  o.require(r.case_label == CaseLabel::Case2_LargeG1_Kappa2Eq2,
            std::string("case is ") + to_string(r.case_label));
  o.require(r.exactness == Exactness::ExactClosedForm, "region is not exact");
  o.require(same_ineqs(r, {{1, 0, 1}, {1, 1, 2}}),
            "region is not {R1 <= C, R1 + R2 <= 2C}");
  const auto s = build_scheme(g, kCfg, {1, 1});
  o.require(s.rate() == Rate{1, 1}, "corner scheme has the wrong rate");
  o.require(check_decodable(s, g).overall_ok, "corner scheme fails check_decodable");
  if (o.ok)
    o.detail = "region R1 ≤ 1, R1 + R2 ≤ 2; (1,1) scheme '" +
               s.construction_tag + "' decodes";
  return o;
}

// Example 5: region {R1 <= C, 2R1 + R2 <= 3C}; three corners built and
// independently found by the oracle.
Outcome criterion3() {
  Outcome o;
  const auto g = mdc::test::example5();
  const auto r = region(g, kCfg);
  o.require(r.case_label == CaseLabel::Case3_LargeG1_Kappa2Eq3,
            std::string("case is ") + to_string(r.case_label));
  o.require(same_ineqs(r, {{1, 0, 1}, {2, 1, 3}}),
            "region is not {R1 <= C, 2R1 + R2 <= 3C}");
  const std::vector<Rate> expected = {{0, 3}, {1, 1}, {1, 0}};
  o.require(r.corner_points == expected, "corners are not (0,3),(1,1),(1,0)");
  for (const auto& c : expected) {
    const auto s = build_scheme(g, kCfg, c);
    o.require(s.rate() == c, "scheme rate differs at " + rate_text(c));
    o.require(check_decodable(s, g).overall_ok,
              "built scheme fails at " + rate_text(c));
    const int k1 = static_cast<int>(c.r1.numerator());
    const int k2 = static_cast<int>(c.r2.numerator());
    bool found = false;
    for (int q : {2, 4}) {
      const auto v = search_linear_scheme(g, kCfg, 1, q, k1, k2, 0, 0);
      if (v.achievable && check_decodable(*v.scheme, g).overall_ok) found = true;
      if (found) break;
    }
    o.require(found, "oracle finds no scheme at " + rate_text(c));
  }
  if (o.ok) o.detail = "corners (0,3),(1,1),(1,0) built and oracle-confirmed";
  return o;
}

// Example 2: combination network K=3, D=4 with the right receiver kinds and
// min cuts equal to |S(b)|·C.
Outcome criterion4() {
  Outcome o;
  const auto net = reduce_to_combination_network(mdc::test::example2(), kCfg);
  o.require(net.num_intermediates() == 3, "K != 3");
  o.require(net.num_destinations() == 4, "D != 4");
  o.require(net.destinations(NodeKind::Public) ==
                std::vector<std::string>{"100", "110"},
            "publics are not {100, 110}");
  o.require(net.destinations(NodeKind::Private) ==
                std::vector<std::string>{"011", "101"},
            "privates are not {011, 101}");
  for (const auto& d : {"100", "110", "011", "101"})
    o.require(min_cut(net, d) == BlockagePattern::parse(d).count() * kCfg.capacity,
              std::string("min cut mismatch at ") + d);
  if (o.ok) o.detail = "K=3, D=4, min_cut(b) = |S(b)|·C for all destinations";
  return o;
}

// Example 3 converse at desk scale: no linear scheme with
// k1/n + k2/(2n) > 1 for n <= 3 over GF(2) and GF(4).
Outcome criterion5() {
  Outcome o;
  const auto g = mdc::test::example3();
  int refuted = 0;
  int by_search = 0;
  for (int n = 1; n <= 3; ++n)
    for (int q : {2, 4})
      for (int k1 = 0; k1 <= 3 * n; ++k1)
        for (int k2 = 0; k2 <= 3 * n; ++k2) {
          if (2 * k1 + k2 <= 2 * n) continue;
          const auto v = search_linear_scheme(g, kCfg, n, q, k1, k2, 0, 0);
          const std::string at = "n=" + std::to_string(n) + " q=" +
                                 std::to_string(q) + " k=(" +
                                 std::to_string(k1) + "," +
                                 std::to_string(k2) + ")";
          o.require(!v.achievable, "scheme found at " + at);
          o.require(v.search_exhausted, "search not exhaustive at " + at);
          ++refuted;
          by_search += v.mode == SearchMode::Exhaustive;
        }
  if (o.ok)
    o.detail = std::to_string(refuted) + " rate points refuted (" +
               std::to_string(by_search) +
               " by exhaustive subspace search, the rest by cut-set)";
  return o;
}

// Every conforming three-path grouping: total classification, exact regions
// inside the cut-set bound on a C/20 grid, integer corners decodable.
Outcome criterion6() {
  Outcome o;
  int groupings = 0;
  int exact = 0;
  int corners = 0;
  mdc::test::for_each_grouping(3, [&](const Grouping& g) {
    if (g.empty() || !validate_grouping(g).conforming()) return;
    ++groupings;
    CaseLabel label = CaseLabel::Unsupported;
    try {
      label = classify(g, kCfg);
    } catch (const std::exception& e) {
      o.require(false, std::string("classify threw: ") + e.what());
      return;
    }
    o.require(label != CaseLabel::Unsupported, "unsupported three-path grouping");
    const auto r = region(g, kCfg);
    if (r.exactness != Exactness::ExactClosedForm) return;
    ++exact;
    const auto outer = cutset_outer_bound(g, kCfg);
    for (int i = 0; i <= 60; ++i)
      for (int j = 0; j <= 60; ++j) {
        const Rate p{Rational(i, 20), Rational(j, 20)};
        if (contains(r, p))
          o.require(contains(outer, p), "exact region exceeds the cut-set bound");
      }
    for (const auto& c : r.corner_points) {
      if (c.r1.denominator() != 1 || c.r2.denominator() != 1) continue;
      ++corners;
      const auto s = build_scheme(g, kCfg, c);
      o.require(check_decodable(s, g).overall_ok,
                "corner scheme fails at " + rate_text(c));
    }
  });
  if (o.ok)
    o.detail = std::to_string(groupings) + " groupings classified, " +
               std::to_string(exact) + " exact regions, " +
               std::to_string(corners) + " corner schemes decodable";
  return o;
}

// Monte Carlo on the Example 5 (C, C) scheme.
Outcome criterion7() {
  Outcome o;
  const auto g = mdc::test::example5();
  const auto s = build_scheme(g, kCfg, {1, 1});
  const auto r = run_monte_carlo(s, g, kCfg, 100000, 20240501);
  const auto chi = pattern_chi_square(r, kCfg);
  const double dev = std::abs(r.empirical_p_u2 - 0.504);
  o.require(r.required_success_rate == 1.0, "required_success_rate != 1");
  o.require(dev <= 3 * r.stderr_u2, "empirical_p_u2 outside 3 stderr of 0.504");
  o.require(chi.p_value >= 1e-3, "chi-square rejects at 1e-3");
  std::ostringstream d;
  d << "p_u2 = " << r.empirical_p_u2 << " (|Δ| = " << dev << ", 3σ = "
    << 3 * r.stderr_u2 << "), chi-square p = " << chi.p_value;
  if (o.ok) o.detail = d.str();
  else o.detail += "; " + d.str();
  return o;
}

// Round trips through every exact-case corner scheme, and the MDS property.
Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  int schemes = 0;
  mdc::test::for_each_grouping(3, [&](const Grouping& g) {
    if (g.empty() || !validate_grouping(g).conforming()) return;
    const auto r = region(g, kCfg);
    if (r.exactness != Exactness::ExactClosedForm) return;
    for (const auto& c : r.corner_points) {
      const auto s = build_scheme(g, kCfg, c);
      ++schemes;
      for (int rep = 0; rep < 100; ++rep) {
        Message m;
        for (int i = 0; i < s.k1; ++i) m.u1.push_back(rng() % s.field_order);
        for (int i = 0; i < s.k2; ++i) m.u2.push_back(rng() % s.field_order);
        const auto sent = encode(s, m);
        for (int level : {1, 2})
          for (const auto& b : g.group(level)) {
            const auto d = decode(s, apply_mask(sent, b));
            o.require(d.u1 && *d.u1 == m.u1, "u1 lost under " + b.to_string());
            if (level == 2)
              o.require(d.u2 && *d.u2 == m.u2, "u2 lost under " + b.to_string());
          }
      }
    }
  });
  int subsets = 0;
  for (int q : {2, 4, 256})
    for (int n = 1; n <= 8; ++n)
      for (int k = 1; k <= n; ++k) {
        if (q == 2 && k != 1 && k != n) continue;
        if (q == 4 && k != 1 && k != n && n > 4) continue;
        const Matrix gen = mds_generator(n, k, q);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          if (std::popcount(mask) != k) continue;
          std::vector<int> cols;
          for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) cols.push_back(i);
          ++subsets;
          o.require(rank(gen.select_columns(cols)) == k,
                    "MDS subset not invertible");
        }
      }
  if (o.ok)
    o.detail = std::to_string(schemes) + " corner schemes × 100 messages, " +
               std::to_string(subsets) + " MDS column subsets invertible";
  return o;
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return out + "\n<exit " + std::to_string(status) + ">";
}

// Two separate processes per command must print identical bytes.
Outcome criterion9() {
  Outcome o;
  const std::string cli = MDC_CLI_PATH;
  const std::string data = MDC_EXAMPLES_DIR;
  const std::string scheme_path =
      (std::filesystem::temp_directory_path() / "mdc_accept_scheme.json").string();
  capture(cli + " scheme " + data + "/example5.json --target 1,1 > " + scheme_path);
  const std::vector<std::string> commands = {
      cli + " analyze " + data + "/example3.json",
      cli + " analyze " + data + "/example5.json --pretty",
      cli + " verify " + data + "/example3.json --max-n 2 --field 4 --seed 7",
      cli + " verify " + data + "/example5.json --max-n 1 --seed 7 --format csv",
      cli + " simulate " + data + "/example5.json --scheme " + scheme_path +
          " --trials 20000 --seed 7"};
  for (const auto& c : commands) {
    const std::string a = capture(c + " 2>&1");
    const std::string b = capture(c + " 2>&1");
    o.require(a == b, "output differs: " + c);
    o.require(a.find("<exit 0>") != std::string::npos, "command failed: " + c);
  }
  if (o.ok) o.detail = "analyze, verify and simulate byte-identical across runs";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 = no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Example 3 golden", 1.0, criterion1},
      {2, "Example 4 golden", 0, criterion2},
      {3, "Example 5 golden", 0, criterion3},
      {4, "Example 2 combination network", 0, criterion4},
      {5, "Example 3 converse falsification", 60.0, criterion5},
      {6, "exhaustive three-path property suite", 300.0, criterion6},
      {7, "Monte Carlo consistency", 10.0, criterion7},
      {8, "round-trip coding", 0, criterion8},
      {9, "CLI determinism", 0, criterion9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && dt >= c.limit_s) {
      o.ok = false;
      o.detail += " [runtime limit " + std::to_string(c.limit_s) + " s exceeded]";
    }
    failed += !o.ok;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s", dt);
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << " ("
              << c.name << ", " << timing;
    if (c.limit_s > 0) std::cout << " < " << c.limit_s << " s";
    std::cout << "): " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
