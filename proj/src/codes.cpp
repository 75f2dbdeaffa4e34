#include "mdc/codes.hpp"

#include <algorithm>
#include <numeric>

#include "mdc/error.hpp"

namespace mdc {

namespace {

std::string dims(const CodingScheme& s) {
  return "(k1=" + std::to_string(s.k1) + ", k2=" + std::to_string(s.k2) +
         ", n=" + std::to_string(s.block_length) +
         ", E=" + std::to_string(s.num_paths) + ")";
}

// Rows [0, k) of the k x k identity restricted to columns [first, first+count).
Matrix selector(int field_order, int k, int first, int count) {
  Matrix m(field_order, k, count);
  for (int j = 0; j < count; ++j) m(first + j, j) = 1;
  return m;
}

CodingScheme make_scheme(int num_paths, int field_order, int k1, int k2,
                         std::string tag) {
  CodingScheme s;
  s.num_paths = num_paths;
  s.block_length = 1;
  s.field_order = field_order;
  s.k1 = k1;
  s.k2 = k2;
  s.generator = Matrix(field_order, k1 + k2, num_paths);
  s.construction_tag = std::move(tag);
  return s;
}

// One MDS code carrying only U1 (k1 = k) or only U2 (k2 = k).
CodingScheme mds_scheme(int num_paths, int field_order, int k, bool for_u1) {
  CodingScheme s = make_scheme(num_paths, field_order, for_u1 ? k : 0,
                               for_u1 ? 0 : k,
                               k == 1 ? "repetition" : "mds");
  s.generator = mds_generator(num_paths, k, field_order);
  return s;
}

std::vector<int> single_path_patterns(const PatternSet& group) {
  std::vector<int> paths;
  for (const auto& b : group)
    if (b.count() == 1) paths.push_back(unblocked_set(b).front());
  std::sort(paths.begin(), paths.end());
  return paths;
}

// Places u1 symbols on `u1_paths` (each path carries one u1 symbol, all the
// same symbol when `duplicate`) and u2 symbols on the other paths in order.
CodingScheme placement(int num_paths, int field_order,
                       const std::vector<int>& u1_paths, bool duplicate,
                       std::string tag) {
  const int u1_count = duplicate ? 1 : static_cast<int>(u1_paths.size());
  std::vector<int> u2_paths;
  for (int p = 1; p <= num_paths; ++p)
    if (std::find(u1_paths.begin(), u1_paths.end(), p) == u1_paths.end())
      u2_paths.push_back(p);
  CodingScheme s = make_scheme(num_paths, field_order, u1_count,
                               static_cast<int>(u2_paths.size()), std::move(tag));
  for (std::size_t i = 0; i < u1_paths.size(); ++i)
    s.generator(duplicate ? 0 : static_cast<int>(i), u1_paths[i] - 1) = 1;
  for (std::size_t i = 0; i < u2_paths.size(); ++i)
    s.generator(u1_count + static_cast<int>(i), u2_paths[i] - 1) = 1;
  return s;
}

// Minimum field order for the corner construction at `corner`.
int corner_field(int num_paths, const Rate& corner) {
  if (corner.r2 == 0) return mds_field_order(num_paths, static_cast<int>(corner.r1.numerator()));
  if (corner.r1 == 0) return mds_field_order(num_paths, static_cast<int>(corner.r2.numerator()));
  return 2;
}

CodingScheme corner_scheme(const Grouping& g, CaseLabel label,
                           const Rate& corner, int field_order) {
  const int e = g.num_paths();
  if (corner.r1.denominator() != 1 || corner.r2.denominator() != 1)
    throw Error(ErrorKind::UnsupportedCase, "non-integer corner point");
  const int r1 = static_cast<int>(corner.r1.numerator());
  const int r2 = static_cast<int>(corner.r2.numerator());
  if (r2 == 0) return mds_scheme(e, field_order, r1, true);
  if (r1 == 0) return mds_scheme(e, field_order, r2, false);

  const auto singles = single_path_patterns(g.g1());
  switch (label) {
    case CaseLabel::Case2_SingletonG1: {
      const BlockagePattern& b1 = *g.g1().begin();
      const int kappa2 = kappa(g.g2()).kappa;
      if (kappa2 == 2) {
        // u1 on the group-1 path, u2 on the lowest other path, u1 + u2 on
        // the last one.
        const int p1 = unblocked_set(b1).front();
        std::vector<int> others;
        for (int p = 1; p <= e; ++p)
          if (p != p1) others.push_back(p);
        CodingScheme s = make_scheme(e, field_order, 1, 1, "network-coding");
        s.generator(0, p1 - 1) = 1;
        s.generator(1, others[0] - 1) = 1;
        s.generator(0, others[1] - 1) = 1;
        s.generator(1, others[1] - 1) = 1;
        return s;
      }
      return placement(e, field_order, unblocked_set(b1), false, "split");
    }
    case CaseLabel::Case2_LargeG1_Kappa2Eq2:
      return placement(e, field_order, singles, true, "u1-on-single-paths");
    case CaseLabel::Case3_LargeG1_Kappa2Eq3:
      if (singles.size() == 1) {
        std::vector<int> u1_paths = singles;
        for (int p = 1; p <= e; ++p)
          if (p != singles.front()) {
            u1_paths.push_back(p);
            break;
          }
        std::sort(u1_paths.begin(), u1_paths.end());
        return placement(e, field_order, u1_paths, true, "u1-duplicated");
      }
      return placement(e, field_order, singles, true, "u1-on-single-paths");
    default:
      throw Error(ErrorKind::UnsupportedCase,
                  std::string("no corner construction for case ") +
                      to_string(label));
  }
}

// Keeps the first `k1` u1 rows and first `k2` u2 rows.
CodingScheme drop_rows(const CodingScheme& s, int k1, int k2) {
  std::vector<int> rows;
  for (int i = 0; i < k1; ++i) rows.push_back(i);
  for (int i = 0; i < k2; ++i) rows.push_back(s.k1 + i);
  CodingScheme out = s;
  out.k1 = k1;
  out.k2 = k2;
  out.generator = s.generator.select_rows(rows);
  out.construction_tag = s.construction_tag + "+subset";
  return out;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace

void CodingScheme::validate() const {
  if (num_paths < 2 || block_length < 1 || k1 < 0 || k2 < 0)
    throw Error(ErrorKind::InvalidInput, "invalid scheme dimensions " + dims(*this));
  if (generator.field_order() != field_order ||
      generator.rows() != k1 + k2 ||
      generator.cols() != num_paths * block_length)
    throw Error(ErrorKind::InvalidInput,
                "generator shape does not match scheme " + dims(*this));
}

std::vector<int> CodingScheme::columns_for(const BlockagePattern& mask) const {
  if (mask.num_paths() != num_paths)
    throw Error(ErrorKind::InvalidInput,
                "mask " + mask.to_string() + " does not match a " +
                    std::to_string(num_paths) + "-path scheme");
  std::vector<int> cols;
  for (int p = 1; p <= num_paths; ++p)
    if (mask.unblocked(p))
      for (int j = 0; j < block_length; ++j)
        cols.push_back((p - 1) * block_length + j);
  return cols;
}

Decoder::Decoder(const CodingScheme& s, const BlockagePattern& mask)
    : block_length_(s.block_length), mask_(mask), columns_(s.columns_for(mask)) {
  const Matrix received = s.generator.select_columns(columns_);
  const int k = s.k1 + s.k2;
  u1_map_ = solve_right(received, selector(s.field_order, k, 0, s.k1));
  u2_map_ = solve_right(received, selector(s.field_order, k, s.k1, s.k2));
}

DecodeResult Decoder::apply(const PathTransmission& received) const {
  if (received.mask != mask_)
    throw Error(ErrorKind::InvalidInput, "decoder built for another mask");
  std::vector<Element> y;
  y.reserve(columns_.size());
  for (int col : columns_) {
    const auto& path = received.paths.at(col / block_length_);
    const auto& sym = path.at(col % block_length_);
    if (!sym)
      throw Error(ErrorKind::InvalidInput,
                  "symbol on an unblocked path is erased");
    y.push_back(*sym);
  }
  DecodeResult out;
  if (u1_map_) out.u1 = u1_map_->left_multiply(y);
  if (u2_map_) out.u2 = u2_map_->left_multiply(y);
  return out;
}

int mds_field_order(int n_out, int k) {
  if (k == 1 || k == n_out) return 2;
  for (int q : {4, 256})
    if (n_out <= q) return q;
  throw Error(ErrorKind::InvalidCodeParameters,
              "no supported field holds an MDS code of length " +
                  std::to_string(n_out));
}

Matrix mds_generator(int n_out, int k, int field_order) {
  if (!Field::supported(field_order))
    throw Error(ErrorKind::InvalidCodeParameters,
                "unsupported field order " + std::to_string(field_order));
  if (k < 1 || k > n_out)
    throw Error(ErrorKind::InvalidCodeParameters,
                "MDS code needs 1 <= k <= n, got (" + std::to_string(n_out) +
                    ", " + std::to_string(k) + ")");
  if (k == n_out) return Matrix::identity(field_order, k);
  Matrix g(field_order, k, n_out);
  if (k == 1) {
    for (int c = 0; c < n_out; ++c) g(0, c) = 1;
    return g;
  }
  if (n_out > field_order)
    throw Error(ErrorKind::InvalidCodeParameters,
                "(" + std::to_string(n_out) + ", " + std::to_string(k) +
                    ") Vandermonde code needs a field of order >= " +
                    std::to_string(n_out) + ", got " +
                    std::to_string(field_order));
  const Field& f = Field::get(field_order);
  for (int c = 0; c < n_out; ++c) {
    Element power = 1;
    for (int r = 0; r < k; ++r) {
      g(r, c) = power;
      power = f.mul(power, static_cast<Element>(c));
    }
  }
  return g;
}

CodingScheme concatenate(const std::vector<CodingScheme>& parts) {
  if (parts.empty())
    throw Error(ErrorKind::InvalidInput, "nothing to concatenate");
  const int e = parts.front().num_paths;
  const int q = parts.front().field_order;
  int n = 0, k1 = 0, k2 = 0;
  for (const auto& p : parts) {
    p.validate();
    if (p.num_paths != e || p.field_order != q)
      throw Error(ErrorKind::InvalidInput,
                  "schemes differ in path count or field order");
    n += p.block_length;
    k1 += p.k1;
    k2 += p.k2;
  }
  CodingScheme out;
  out.num_paths = e;
  out.block_length = n;
  out.field_order = q;
  out.k1 = k1;
  out.k2 = k2;
  out.generator = Matrix(q, k1 + k2, e * n);
  int row1 = 0, row2 = k1, col_offset = 0;
  for (const auto& p : parts) {
    for (int r = 0; r < p.k1 + p.k2; ++r) {
      const int dst = r < p.k1 ? row1 + r : row2 + (r - p.k1);
      for (int path = 0; path < e; ++path)
        for (int j = 0; j < p.block_length; ++j)
          out.generator(dst, path * n + col_offset + j) =
              p.generator(r, path * p.block_length + j);
    }
    row1 += p.k1;
    row2 += p.k2;
    col_offset += p.block_length;
  }
  out.construction_tag = parts.front().construction_tag;
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (parts[i].construction_tag != parts[i - 1].construction_tag)
      out.construction_tag += "|" + parts[i].construction_tag;
  return out;
}

CodingScheme repeat(const CodingScheme& s, int times) {
  if (times < 1) throw Error(ErrorKind::InvalidInput, "repeat count must be >= 1");
  if (times == 1) return s;
  return concatenate(std::vector<CodingScheme>(times, s));
}

CodingScheme timeshare(const CodingScheme& a, const CodingScheme& b,
                       const Rational& weight) {
  if (weight < 0 || weight > 1)
    throw Error(ErrorKind::InvalidInput, "time-sharing weight must be in [0, 1]");
  if (a.num_paths != b.num_paths || a.field_order != b.field_order)
    throw Error(ErrorKind::InvalidInput,
                "time-sharing needs schemes over the same paths and field");
  a.validate();
  b.validate();
  if (weight == 1) return a;
  if (weight == 0) return b;
  const std::int64_t l = lcm64(a.block_length, b.block_length);
  const std::int64_t num = weight.numerator();
  const std::int64_t den = weight.denominator();
  std::vector<CodingScheme> parts;
  parts.push_back(repeat(a, static_cast<int>(num * (l / a.block_length))));
  parts.push_back(repeat(b, static_cast<int>((den - num) * (l / b.block_length))));
  CodingScheme out = concatenate(parts);
  out.construction_tag = "timeshare(" + a.construction_tag + "," +
                         b.construction_tag + ")";
  return out;
}

CodingScheme build_scheme(const Grouping& g, const NetworkConfig& cfg,
                          const Rate& target) {
  const RateRegion reg = region(g, cfg);
  if (reg.exactness != Exactness::ExactClosedForm)
    throw Error(ErrorKind::UnsupportedCase,
                std::string("no exact region for case ") +
                    to_string(reg.case_label));
  if (!contains(reg, target))
    throw Error(ErrorKind::UnachievableTarget,
                "rate pair (" + to_string(target.r1) + ", " +
                    to_string(target.r2) + ")·C lies outside the region");
  const int e = g.num_paths();
  if (target == Rate{}) return make_scheme(e, 2, 0, 0, "empty");

  int q = 2;
  for (const auto& c : reg.corner_points) q = std::max(q, corner_field(e, c));
  const auto& cs = reg.corner_points;
  auto corner_at = [&](std::size_t i) {
    return corner_scheme(g, reg.case_label, cs[i], q);
  };

  // Point on the segment between adjacent corners.
  auto on_boundary = [&](const Rate& t) -> std::optional<CodingScheme> {
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (cs[i] == t) return corner_at(i);
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
      const Rate& a = cs[i];
      const Rate& b = cs[i + 1];
      const Rational cross =
          (b.r1 - a.r1) * (t.r2 - a.r2) - (b.r2 - a.r2) * (t.r1 - a.r1);
      if (cross != 0) continue;
      // t = w*a + (1-w)*b along whichever coordinate varies.
      const Rational w = a.r1 != b.r1 ? (t.r1 - b.r1) / (a.r1 - b.r1)
                                      : (t.r2 - b.r2) / (a.r2 - b.r2);
      if (w < 0 || w > 1) continue;
      return timeshare(corner_at(i), corner_at(i + 1), w);
    }
    return std::nullopt;
  };

  if (auto s = on_boundary(target)) return *s;

  // Dominated target: build a boundary point above it, then drop symbols.
  std::optional<CodingScheme> face;
  std::optional<Rational> max_r2, max_r1;
  for (const auto& ineq : reg.inequalities) {
    if (ineq.a2 > 0) {
      const Rational v = (ineq.bound - ineq.a1 * target.r1) / ineq.a2;
      max_r2 = max_r2 ? std::min(*max_r2, v) : v;
    }
    if (ineq.a1 > 0) {
      const Rational v = (ineq.bound - ineq.a2 * target.r2) / ineq.a1;
      max_r1 = max_r1 ? std::min(*max_r1, v) : v;
    }
  }
  if (max_r2) face = on_boundary(Rate{target.r1, *max_r2});
  if (!face && max_r1) face = on_boundary(Rate{*max_r1, target.r2});
  for (std::size_t i = 0; !face && i < cs.size(); ++i)
    if (cs[i].r1 >= target.r1 && cs[i].r2 >= target.r2) face = corner_at(i);
  if (!face)
    throw Error(ErrorKind::UnachievableTarget, "no boundary point dominates target");

  const Rational n1 = target.r1 * face->block_length;
  const Rational n2 = target.r2 * face->block_length;
  const int times = static_cast<int>(lcm64(n1.denominator(), n2.denominator()));
  const CodingScheme big = repeat(*face, times);
  return drop_rows(big, static_cast<int>((n1 * times).numerator()),
                   static_cast<int>((n2 * times).numerator()));
}

PathTransmission encode(const CodingScheme& s, const Message& m) {
  s.validate();
  if (static_cast<int>(m.u1.size()) != s.k1 ||
      static_cast<int>(m.u2.size()) != s.k2)
    throw Error(ErrorKind::InvalidInput,
                "message lengths (" + std::to_string(m.u1.size()) + ", " +
                    std::to_string(m.u2.size()) + ") do not match scheme " +
                    dims(s));
  std::vector<Element> row = m.u1;
  row.insert(row.end(), m.u2.begin(), m.u2.end());
  for (Element e : row)
    if (e >= s.field_order)
      throw Error(ErrorKind::InvalidInput, "message symbol outside the field");
  const auto symbols = s.generator.left_multiply(row);
  PathTransmission t{{}, BlockagePattern::all_unblocked(s.num_paths)};
  t.paths.resize(s.num_paths);
  for (int p = 0; p < s.num_paths; ++p)
    for (int j = 0; j < s.block_length; ++j)
      t.paths[p].push_back(symbols[p * s.block_length + j]);
  return t;
}

PathTransmission apply_mask(PathTransmission t, const BlockagePattern& mask) {
  if (mask.num_paths() != static_cast<int>(t.paths.size()))
    throw Error(ErrorKind::InvalidInput, "mask length does not match transmission");
  for (int p = 1; p <= mask.num_paths(); ++p)
    if (!mask.unblocked(p))
      for (auto& sym : t.paths[p - 1]) sym.reset();
  t.mask = mask;
  return t;
}

DecodeResult decode(const CodingScheme& s, const PathTransmission& received) {
  s.validate();
  if (received.mask.num_paths() != s.num_paths ||
      static_cast<int>(received.paths.size()) != s.num_paths)
    throw Error(ErrorKind::InvalidInput,
                "received mask does not match a " +
                    std::to_string(s.num_paths) + "-path scheme");
  return Decoder(s, received.mask).apply(received);
}

nlohmann::json to_json(const CodingScheme& s) {
  const auto entries = s.generator.entries();
  return {
      {"block_length", s.block_length},
      {"construction_tag", s.construction_tag},
      {"field_order", s.field_order},
      {"generator", std::vector<int>(entries.begin(), entries.end())},
      {"k1", s.k1},
      {"k2", s.k2},
      {"num_paths", s.num_paths},
  };
}

CodingScheme scheme_from_json(const nlohmann::json& j) {
  try {
    CodingScheme s;
    s.num_paths = j.at("num_paths").get<int>();
    s.block_length = j.at("block_length").get<int>();
    s.field_order = j.at("field_order").get<int>();
    s.k1 = j.at("k1").get<int>();
    s.k2 = j.at("k2").get<int>();
    s.construction_tag = j.value("construction_tag", "");
    std::vector<Element> entries;
    for (int v : j.at("generator").get<std::vector<int>>()) {
      if (v < 0 || v > 255)
        throw Error(ErrorKind::InvalidInput, "generator entry out of range");
      entries.push_back(static_cast<Element>(v));
    }
    if (s.num_paths < 2 || s.block_length < 1 || s.k1 < 0 || s.k2 < 0)
      throw Error(ErrorKind::InvalidInput, "invalid scheme dimensions");
    s.generator = Matrix(s.field_order, s.k1 + s.k2,
                         s.num_paths * s.block_length, std::move(entries));
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("scheme document: ") + e.what());
  }
}

}  // namespace mdc
