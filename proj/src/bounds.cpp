#include "psmt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psmt {

namespace {

// Absorbs floating noise in exact-integer right-hand sides before ceil.
constexpr double kSlack = 1e-9;

RequiredEll finish(double raw) {
  const double c = std::ceil(raw - kSlack);
  return {raw, c < 1 ? 1u : static_cast<unsigned>(c)};
}

double p1_term(double u1, double u2, double u4, std::size_t n) {
  if (!(u2 > u4) || !(u1 >= u2)) throw std::domain_error("needs u1 >= u2 > u4");
  return std::log2((u1 - u4) / (u2 - u4)) + 2 * std::log2(static_cast<double>(n) + 1) - 1;
}

}  // namespace

double default_alpha(const UValues& u) { return (u.u2 - u.u4) / 2; }

RequiredEll required_ell_sjst(const UValues& u, double alpha, std::size_t t) {
  if (t < 1) throw std::domain_error("t must be >= 1");
  if (!(alpha > 0 && alpha < u.u2 - u.u4)) throw std::domain_error("alpha must lie in (0, u2 - u4)");
  if (!(u.u1 > u.u3 && u.u3 > u.u4)) throw std::domain_error("needs u1 > u3 > u4");
  const double td = static_cast<double>(t);
  const double a = 1 + std::log2(td) + std::log2((u.u3 - u.u4) / (u.u2 - u.u4 - alpha));
  const double b = 1 + std::log2((u.u1 - u.u3) / alpha) / td;
  return finish(std::max(a, b));
}

RequiredEll required_ell_sjst_multi(const UValues& primed, double alpha, std::span<const std::size_t> slots) {
  if (slots.empty()) throw std::domain_error("no adversary slots");
  RequiredEll best{-INFINITY, 1};
  for (auto t : slots) {
    const RequiredEll r = required_ell_sjst(primed, alpha, t);
    if (r.raw > best.raw) best = r;
  }
  return best;
}

double required_delta_rss(const UValues& u) {
  if (!(u.u2 > u.u3)) throw std::domain_error("robust sharing bound needs u2 > u3");
  if (!(u.u1 > u.u3)) throw std::domain_error("robust sharing bound needs u1 > u3");
  return (u.u2 - u.u3) / (u.u1 - u.u3);
}

RequiredEll required_ell_rss(const UValues& u, std::size_t d) {
  const double delta = required_delta_rss(u);
  return finish(std::log2(static_cast<double>(d) + 1) - std::log2(delta));
}

RequiredEll required_ell_p1(const UValues& u, std::size_t n) { return finish(p1_term(u.u1, u.u2, u.u4, n)); }

RequiredEll required_ell_p2(double u1p, double u2p, double u3dd) {
  if (!(u2p > u3dd) || !(u1p > u3dd)) throw std::domain_error("needs u1' > u3'' and u2' > u3''");
  return finish(std::log2((u1p - u3dd) / (u2p - u3dd)) - 1);
}

RequiredEll required_ell_p3(const UValues& primed, const UValues& doubled, std::size_t n) {
  return finish(std::max(p1_term(primed.u1, primed.u2, primed.u4, n), p1_term(doubled.u1, doubled.u2, doubled.u4, n)));
}

}  // namespace psmt
