#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "psmt/field.hpp"
#include "psmt/random.hpp"

namespace psmt {

class ThresholdError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SharingSpec {
 public:
  // Evaluation points a_i = i.
  SharingSpec(std::size_t t, std::size_t n, const FieldSpec& field);
  SharingSpec(std::size_t t, std::size_t n, const FieldSpec& field, std::vector<FieldElement> eval_points);

  std::size_t t() const { return t_; }
  std::size_t n() const { return n_; }
  const FieldSpec& field() const { return field_; }
  const FieldElement& eval_point(std::size_t i) const { return points_.at(i - 1); }  // i in 1..n

 private:
  std::size_t t_;
  std::size_t n_;
  FieldSpec field_;
  std::vector<FieldElement> points_;
};

// A share is a vector of field elements, one per secret coordinate.
using ShareVector = std::vector<FieldElement>;
using ShareSet = std::map<std::size_t, ShareVector>;

ShareSet shamir_share(const SharingSpec& spec, const std::vector<FieldElement>& secret, RandomSource& rng);
ShareSet shamir_share(const SharingSpec& spec, const FieldElement& secret, RandomSource& rng);
// coefficients[c] holds r_1..r_t of coordinate c.
ShareSet shamir_share_with(const SharingSpec& spec, const std::vector<FieldElement>& secret,
                           const std::vector<std::vector<FieldElement>>& coefficients);

// Lagrange at 0 through every supplied share. ThresholdError below t+1 shares.
ShareVector shamir_reconstruct(const SharingSpec& spec, const ShareSet& subset);

// Berlekamp-Welch per coordinate. Needs |shares| >= t+1+2e (std::invalid_argument
// otherwise). nullopt when no degree-<=t polynomial agrees with all but e shares.
std::optional<ShareVector> rs_reconstruct(const SharingSpec& spec, const ShareSet& shares, std::size_t max_errors);

// Single coordinate form, returns the decoded polynomial.
std::optional<Polynomial> berlekamp_welch(const std::vector<Point>& points, std::size_t t, std::size_t max_errors);

class AmdSpec {
 public:
  AmdSpec(const FieldSpec& field, std::size_t d);
  const FieldSpec& field() const { return field_; }
  std::size_t d() const { return d_; }
  double failure_bound() const;  // (d+1)/q

 private:
  FieldSpec field_;
  std::size_t d_;
};

struct AmdCodeword {
  std::vector<FieldElement> s;
  FieldElement x;
  FieldElement tag;

  // (s_1..s_d, x, tag)
  std::vector<FieldElement> flatten() const;
  static AmdCodeword unflatten(const std::vector<FieldElement>& v);
  bool operator==(const AmdCodeword&) const = default;
};

// x^{d+2} + sum_i s_i x^i
FieldElement amd_tag(const AmdSpec& spec, const std::vector<FieldElement>& s, const FieldElement& x);
AmdCodeword amd_encode(const AmdSpec& spec, const std::vector<FieldElement>& s, RandomSource& rng);
AmdCodeword amd_encode_with(const AmdSpec& spec, const std::vector<FieldElement>& s, const FieldElement& x);
std::optional<std::vector<FieldElement>> amd_decode(const AmdSpec& spec, const AmdCodeword& c);

class RobustSharingSpec {
 public:
  RobustSharingSpec(const AmdSpec& amd, std::size_t t, std::size_t n);
  const AmdSpec& amd() const { return amd_; }
  const SharingSpec& inner() const { return inner_; }
  double delta() const { return amd_.failure_bound(); }
  std::size_t share_length() const { return amd_.d() + 2; }

 private:
  AmdSpec amd_;
  SharingSpec inner_;
};

ShareSet robust_share(const RobustSharingSpec& spec, const std::vector<FieldElement>& secret, RandomSource& rng);
// ThresholdError below t+1 shares; nullopt if the AMD check fails.
std::optional<std::vector<FieldElement>> robust_reconstruct(const RobustSharingSpec& spec, const ShareSet& subset);

}  // namespace psmt
