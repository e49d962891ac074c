#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "psmt/hashing.hpp"
#include "psmt/protocols.hpp"
#include "psmt/sharing.hpp"

namespace psmt {

struct CheckResult {
  std::string name;
  bool pass = false;
  double observed = 0;  // worst value found
  double bound = 0;
  std::uint64_t cases = 0;
  std::string detail;
};

// Every (x1 != x2, y1, y2): #{(a,b) : h(x1)=y1, h(x2)=y2} == 2^{2m-2l}.
CheckResult check_hash_strong_universality(const HashFamilySpec& spec, const HashEvaluator& eval = {});
// Max offset-collision probability over all (x1,c1) != (x2,c2), against 2^{1-l}.
CheckResult check_hash_offset_collision(const HashFamilySpec& spec, const HashEvaluator& eval = {});
// Max over s and nonzero offsets of Pr_x[decode(encode(s) + delta) != FAIL], against (d+1)/q.
CheckResult check_amd_security(const AmdSpec& spec);
// Every t-subset of shares: joint distribution identical across secrets.
CheckResult check_shamir_privacy(const FieldSpec& field, std::size_t t, std::size_t n);

// View of a passive adversary owning `corrupted`, enumerated over all protocol
// randomness (except draws in `pinned`) for every message; distance is the maximal
// total-variation distance to the first message's view distribution.
CheckResult check_protocol_privacy(const Protocol& protocol, const std::set<std::size_t>& corrupted,
                                   const std::map<std::size_t, std::uint64_t>& pinned = {});

// Branching factor of one protocol run (product of draw bounds), measured by a dry run.
long double protocol_run_space(const Protocol& protocol);

// Work estimates used by the CLI guard.
long double hash_check_size(const HashFamilySpec& spec);
long double amd_check_size(const AmdSpec& spec);
long double shamir_check_size(const FieldSpec& field, std::size_t t, std::size_t n);

}  // namespace psmt
