#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdc/capacity.hpp"
#include "mdc/field.hpp"
#include "mdc/patterns.hpp"

namespace mdc {

/// A linear block code for the two-stream problem. The stacked message row
/// (u1 | u2) times `generator` gives all transmitted symbols; columns are
/// grouped path-major, so path i owns columns [(i-1)n, i*n).
struct CodingScheme {
  int num_paths = 0;
  int block_length = 1;
  int field_order = 2;
  int k1 = 0;
  int k2 = 0;
  Matrix generator{2, 0, 0};
  std::string construction_tag;

  // Checks generator shape against num_paths, block_length, k1 and k2.
  void validate() const;

  Rate rate() const {
    return {Rational(k1, block_length), Rational(k2, block_length)};
  }
  // Generator columns owned by the unblocked paths of `mask`.
  std::vector<int> columns_for(const BlockagePattern& mask) const;
};

struct Message {
  std::vector<Element> u1;
  std::vector<Element> u2;

  friend bool operator==(const Message&, const Message&) = default;
};

/// Per-path symbol sequences; an erased symbol is nullopt.
struct PathTransmission {
  std::vector<std::vector<std::optional<Element>>> paths;
  BlockagePattern mask;
};

struct DecodeResult {
  std::optional<std::vector<Element>> u1;
  std::optional<std::vector<Element>> u2;
};

/// Precomputed recovery maps for one availability mask: u_i = y * X_i where
/// y are the received symbols in column order.
class Decoder {
 public:
  Decoder(const CodingScheme& s, const BlockagePattern& mask);

  bool recovers_u1() const noexcept { return u1_map_.has_value(); }
  bool recovers_u2() const noexcept { return u2_map_.has_value(); }
  DecodeResult apply(const PathTransmission& received) const;

 private:
  int block_length_;
  BlockagePattern mask_;
  std::vector<int> columns_;
  std::optional<Matrix> u1_map_;
  std::optional<Matrix> u2_map_;
};

// k x n_out generator in which every k columns are independent. k == n_out
// gives the identity, k == 1 the all-ones row (any field); otherwise a
// Vandermonde matrix on the points 0..n_out-1, which needs n_out <= q.
Matrix mds_generator(int n_out, int k, int field_order);

// Smallest supported field admitting mds_generator(n_out, k, .).
int mds_field_order(int n_out, int k);

// A scheme whose rates equal `target` (units of C) and which meets the
// decoding requirements of `g`. Throws Error(UnsupportedCase) for instances
// without an exact region and Error(UnachievableTarget) outside the region.
CodingScheme build_scheme(const Grouping& g, const NetworkConfig& cfg,
                          const Rate& target);

// Time-sharing: fraction `weight` of the network uses runs `a`, the rest `b`.
CodingScheme timeshare(const CodingScheme& a, const CodingScheme& b,
                       const Rational& weight);

// Runs each scheme in its own slice of a longer block, in order.
CodingScheme concatenate(const std::vector<CodingScheme>& parts);

// Repeats `s` `times` times back to back.
CodingScheme repeat(const CodingScheme& s, int times);

PathTransmission encode(const CodingScheme& s, const Message& m);

// Applies `mask`: blocked paths become erasures.
PathTransmission apply_mask(PathTransmission t, const BlockagePattern& mask);

DecodeResult decode(const CodingScheme& s, const PathTransmission& received);

nlohmann::json to_json(const CodingScheme& s);
CodingScheme scheme_from_json(const nlohmann::json& j);

}  // namespace mdc
