#pragma once

#include <span>

#include "psmt/game.hpp"

namespace psmt {

// raw is the real-valued right-hand side; ell = max(1, ceil(raw)).
struct RequiredEll {
  double raw;
  unsigned ell;
};

// Throws std::domain_error when alpha is outside (0, u2 - u4) or the
// table does not have u1 > u3 > u4.
RequiredEll required_ell_sjst(const UValues& u, double alpha, std::size_t t);
// Several rational adversaries: the single-adversary bound maximised over their slot sizes.
RequiredEll required_ell_sjst_multi(const UValues& primed, double alpha, std::span<const std::size_t> slots);
double default_alpha(const UValues& u);

// Largest admissible delta. std::domain_error unless u2 > u3.
double required_delta_rss(const UValues& u);
RequiredEll required_ell_rss(const UValues& u, std::size_t d);

RequiredEll required_ell_p1(const UValues& u, std::size_t n);
RequiredEll required_ell_p2(double u1p, double u2p, double u3dd);
// u1..u4 of `rational` and `malicious_detected` triples (u3 unused).
RequiredEll required_ell_p3(const UValues& primed, const UValues& doubled, std::size_t n);

}  // namespace psmt
