#include "psmt/sharing.hpp"

#include <algorithm>
#include <string>

namespace psmt {

namespace {

struct LinearSolution {
  std::optional<std::vector<FieldElement>> x;  // nullopt when inconsistent
  bool singular = false;
};

// Gauss-Jordan elimination; free variables are set to zero.
LinearSolution solve_linear(std::vector<std::vector<FieldElement>> a, std::vector<FieldElement> b,
                            const FieldSpec& f) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const FieldElement scale = inv(a[r][c]);
    for (std::size_t k = c; k < cols; ++k) a[r][k] = a[r][k] * scale;
    b[r] = b[r] * scale;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const FieldElement factor = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] = a[i][k] - factor * a[r][k];
      b[i] = b[i] - factor * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  LinearSolution out;
  out.singular = pivot_col.size() < cols;
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return out;
  std::vector<FieldElement> x(cols, FieldElement::zero(f));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  out.x = std::move(x);
  return out;
}

std::size_t agreement(const Polynomial& p, const std::vector<Point>& points) {
  std::size_t n = 0;
  for (const auto& [x, y] : points)
    if (poly_eval(p, x) == y) ++n;
  return n;
}

// First (t+1)-subset, in lexicographic order, whose interpolant agrees with
// at least points.size() - e points.
std::optional<Polynomial> subset_vote(const std::vector<Point>& points, std::size_t t, std::size_t e) {
  const std::size_t n = points.size();
  std::vector<std::size_t> idx(t + 1);
  for (std::size_t i = 0; i <= t; ++i) idx[i] = i;
  for (;;) {
    std::vector<Point> sub;
    for (auto i : idx) sub.push_back(points[i]);
    Polynomial p = interpolate(sub);
    if (agreement(p, points) + e >= n) return p;
    std::size_t k = t + 1;
    while (k > 0 && idx[k - 1] == n - (t + 1) + (k - 1)) --k;
    if (k == 0) return std::nullopt;
    ++idx[k - 1];
    for (std::size_t j = k; j <= t; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

SharingSpec::SharingSpec(std::size_t t, std::size_t n, const FieldSpec& field) : t_(t), n_(n), field_(field) {
  if (n >= field.order()) throw std::invalid_argument("sharing needs n <= q - 1");
  for (std::size_t i = 1; i <= n; ++i) points_.emplace_back(field, i);
  if (!(0 < t && t < n)) throw ThresholdError("sharing needs 0 < t < n");
}

SharingSpec::SharingSpec(std::size_t t, std::size_t n, const FieldSpec& field, std::vector<FieldElement> eval_points)
    : t_(t), n_(n), field_(field), points_(std::move(eval_points)) {
  if (!(0 < t && t < n)) throw ThresholdError("sharing needs 0 < t < n");
  if (n >= field.order()) throw std::invalid_argument("sharing needs n <= q - 1");
  if (points_.size() != n) throw std::invalid_argument("need exactly n evaluation points");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(points_[i].field() == field) || points_[i].is_zero())
      throw std::invalid_argument("evaluation points must be nonzero elements of the field");
    for (std::size_t j = 0; j < i; ++j)
      if (points_[i] == points_[j]) throw std::invalid_argument("evaluation points must be distinct");
  }
}

ShareSet shamir_share_with(const SharingSpec& spec, const std::vector<FieldElement>& secret,
                           const std::vector<std::vector<FieldElement>>& coefficients) {
  if (coefficients.size() != secret.size()) throw std::invalid_argument("one coefficient list per coordinate");
  ShareSet out;
  for (std::size_t c = 0; c < secret.size(); ++c) {
    if (coefficients[c].size() != spec.t()) throw std::invalid_argument("need exactly t coefficients");
    std::vector<FieldElement> coeffs{secret[c]};
    coeffs.insert(coeffs.end(), coefficients[c].begin(), coefficients[c].end());
    const Polynomial f(spec.field(), std::move(coeffs));
    for (std::size_t i = 1; i <= spec.n(); ++i) out[i].push_back(poly_eval(f, spec.eval_point(i)));
  }
  return out;
}

ShareSet shamir_share(const SharingSpec& spec, const std::vector<FieldElement>& secret, RandomSource& rng) {
  std::vector<std::vector<FieldElement>> coefficients(secret.size());
  for (auto& cs : coefficients)
    for (std::size_t k = 0; k < spec.t(); ++k) cs.emplace_back(spec.field(), rng.uniform(spec.field().order()));
  return shamir_share_with(spec, secret, coefficients);
}

ShareSet shamir_share(const SharingSpec& spec, const FieldElement& secret, RandomSource& rng) {
  return shamir_share(spec, std::vector<FieldElement>{secret}, rng);
}

namespace {

std::size_t coordinate_count(const ShareSet& shares) {
  const std::size_t len = shares.begin()->second.size();
  for (const auto& [i, v] : shares)
    if (v.size() != len) throw std::invalid_argument("shares have different lengths");
  return len;
}

std::vector<Point> coordinate_points(const SharingSpec& spec, const ShareSet& shares, std::size_t c) {
  std::vector<Point> pts;
  for (const auto& [i, v] : shares) {
    if (i < 1 || i > spec.n()) throw std::invalid_argument("share index " + std::to_string(i) + " out of range");
    pts.emplace_back(spec.eval_point(i), v[c]);
  }
  return pts;
}

}  // namespace

ShareVector shamir_reconstruct(const SharingSpec& spec, const ShareSet& subset) {
  if (subset.size() < spec.t() + 1)
    throw ThresholdError("need at least " + std::to_string(spec.t() + 1) + " shares, got " +
                         std::to_string(subset.size()));
  const std::size_t len = coordinate_count(subset);
  ShareVector out;
  for (std::size_t c = 0; c < len; ++c)
    out.push_back(interpolate_at(coordinate_points(spec, subset, c), FieldElement::zero(spec.field())));
  return out;
}

std::optional<Polynomial> berlekamp_welch(const std::vector<Point>& points, std::size_t t, std::size_t max_errors) {
  const std::size_t n = points.size();
  if (n < t + 1 + 2 * max_errors)
    throw std::invalid_argument("error correction needs at least t+1+2e shares");
  const FieldSpec& f = points.front().first.field();
  bool singular = false;
  for (std::size_t e = 0; e <= max_errors; ++e) {
    // Unknowns: Q_0..Q_{t+e}, then E_0..E_{e-1}; E is monic of degree e.
    const std::size_t nq = t + e + 1;
    std::vector<std::vector<FieldElement>> a;
    std::vector<FieldElement> b;
    for (const auto& [x, y] : points) {
      std::vector<FieldElement> row;
      FieldElement xp = FieldElement::one(f);
      for (std::size_t k = 0; k < nq; ++k) {
        row.push_back(xp);
        xp = xp * x;
      }
      xp = FieldElement::one(f);
      for (std::size_t k = 0; k < e; ++k) {
        row.push_back(-(y * xp));
        xp = xp * x;
      }
      a.push_back(std::move(row));
      b.push_back(y * xp);
    }
    LinearSolution sol = solve_linear(std::move(a), std::move(b), f);
    singular = singular || sol.singular;
    if (!sol.x) continue;
    std::vector<FieldElement> q(sol.x->begin(), sol.x->begin() + static_cast<std::ptrdiff_t>(nq));
    std::vector<FieldElement> el(sol.x->begin() + static_cast<std::ptrdiff_t>(nq), sol.x->end());
    el.push_back(FieldElement::one(f));
    auto [p, rem] = poly_divmod(Polynomial(f, std::move(q)), Polynomial(f, std::move(el)));
    if (!rem.is_zero() || p.degree() > static_cast<int>(t)) continue;
    if (agreement(p, points) + max_errors >= n) return p;
  }
  if (singular && n <= 12) return subset_vote(points, t, max_errors);
  return std::nullopt;
}

std::optional<ShareVector> rs_reconstruct(const SharingSpec& spec, const ShareSet& shares, std::size_t max_errors) {
  if (shares.size() < spec.t() + 1 + 2 * max_errors)
    throw std::invalid_argument("error correction needs at least t+1+2e shares");
  const std::size_t len = coordinate_count(shares);
  ShareVector out;
  for (std::size_t c = 0; c < len; ++c) {
    auto p = berlekamp_welch(coordinate_points(spec, shares, c), spec.t(), max_errors);
    if (!p) return std::nullopt;
    out.push_back(p->coeff(0));
  }
  return out;
}

}  // namespace psmt
