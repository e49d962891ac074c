#include "psmt/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psmt {

Outcome assemble_outcome(const Transcript& t) {
  Outcome o;
  o.suc = t.receiver_output && *t.receiver_output == t.sent_message;
  for (std::size_t j = 1; j <= t.profile.adversaries(); ++j) {
    o.guess.push_back(j <= t.adversary_outputs.size() && t.adversary_outputs[j - 1] == t.sent_message);
    bool d = false;
    for (const auto& e : t.detect_events) d = d || t.profile.channels_of(j).count(e.channel) > 0;
    o.detect.push_back(d);
  }
  return o;
}

UtilityTable::UtilityTable(std::array<double, 8> base, double others_detected_bonus, std::uint64_t message_space_size)
    : base_(base), bonus_(others_detected_bonus), msize_(message_space_size) {
  if (msize_ == 0) throw std::invalid_argument("message space size must be positive");
  if (bonus_ < 0) throw std::invalid_argument("others-detected bonus must be >= 0");
}

UtilityTable UtilityTable::from_sd(double s0d0, double s1d0, double s0d1, double s1d1, double bonus,
                                   std::uint64_t message_space_size) {
  return UtilityTable({s0d0, s0d1, s1d0, s1d1, s0d0, s0d1, s1d0, s1d1}, bonus, message_space_size);
}

UtilityTable UtilityTable::with_message_space(std::uint64_t size) const { return UtilityTable(base_, bonus_, size); }

double UtilityTable::utility(const Outcome& o, std::size_t j) const {
  double u = base(o.guess.at(j - 1), o.suc, o.detect.at(j - 1));
  for (std::size_t k = 0; k < o.detect.size(); ++k)
    if (k != j - 1 && o.detect[k]) u += bonus_;
  return u;
}

void to_json(nlohmann::json& j, const UtilityTable& t) {
  nlohmann::json base = nlohmann::json::object();
  for (int g = 0; g < 2; ++g)
    for (int s = 0; s < 2; ++s)
      for (int d = 0; d < 2; ++d) base[std::to_string(g) + std::to_string(s) + std::to_string(d)] = t.base(g, s, d);
  j = {{"base", base}, {"bonus", t.bonus()}};
}

UtilityTable utility_from_json(const nlohmann::json& j, std::uint64_t message_space_size) {
  const auto& base = j.at("base");
  std::array<double, 8> b{};
  std::array<bool, 8> seen{};
  for (auto it = base.begin(); it != base.end(); ++it) {
    const std::string& key = it.key();
    if (key.size() != 3 || key.find_first_not_of("01") != std::string::npos)
      throw std::invalid_argument("utility key '" + key + "' must be a 3-bit string gsd");
    const int idx = (key[0] - '0') * 4 + (key[1] - '0') * 2 + (key[2] - '0');
    b[idx] = it.value().get<double>();
    seen[idx] = true;
  }
  for (int i = 0; i < 4; ++i) {
    if (!seen[i]) throw std::invalid_argument("utility table lacks guess=0 entries");
    if (!seen[i + 4]) b[i + 4] = b[i];
  }
  return UtilityTable(b, j.value("bonus", 0.0), message_space_size);
}

UValues derive_u_values(const UtilityTable& t, std::size_t others_detected) {
  const double pg = 1.0 / static_cast<double>(t.message_space_size());
  const double extra = t.bonus() * static_cast<double>(others_detected);
  auto at = [&](bool s, bool d) { return pg * t.base(true, s, d) + (1 - pg) * t.base(false, s, d) + extra; };
  return {at(false, false), at(true, false), at(false, true), at(true, true)};
}

std::vector<std::string> table_violations(const UtilityTable& t, TableClass cls, std::size_t adversaries) {
  std::vector<std::string> v;
  for (int s = 0; s < 2; ++s)
    for (int d = 0; d < 2; ++d)
      if (t.base(true, s, d) < t.base(false, s, d)) v.push_back("base(1,s,d) >= base(0,s,d)");
  for (int g = 0; g < 2; ++g)
    for (int d = 0; d < 2; ++d)
      if (!(t.base(g, false, d) > t.base(g, true, d))) v.push_back("base(g,0,d) > base(g,1,d)");
  for (int g = 0; g < 2; ++g)
    for (int s = 0; s < 2; ++s)
      if (!(t.base(g, s, false) > t.base(g, s, true))) v.push_back("base(g,s,0) > base(g,s,1)");
  const UValues u = derive_u_values(t);
  if (!(u.u1 > std::max(u.u2, u.u3))) v.push_back("u1 > max(u2, u3)");
  if (!(std::min(u.u2, u.u3) > u.u4)) v.push_back("min(u2, u3) > u4");
  if (cls == TableClass::strictly_timid && !(u.u1 > u.u2 && u.u2 > u.u3 && u.u3 > u.u4))
    v.push_back("u1 > u2 > u3 > u4");
  if (adversaries >= 2) {
    const UValues dd = derive_u_values(t, adversaries - 1);
    if (!(t.bonus() > 0)) v.push_back("bonus > 0");
    if (!(u.u1 > std::max(u.u2, dd.u3))) v.push_back("u1' > max(u2', u3'')");
    if (!(dd.u3 > u.u3)) v.push_back("u3'' > u3'");
  }
  // Each pointwise rule is checked over four cells; report it once.
  std::vector<std::string> unique;
  for (auto& s : v)
    if (std::find(unique.begin(), unique.end(), s) == unique.end()) unique.push_back(s);
  return unique;
}

GameResult play_game(const Protocol& protocol, const CorruptionProfile& profile,
                     std::span<AdversaryStrategy* const> strategies, const UtilityTable& table,
                     std::uint64_t master_seed) {
  SeededRng mrng(derive_seed(master_seed, "message"));
  const Message m = protocol.message_space().sample(mrng);
  GameResult r;
  r.transcript = execute(protocol, m, profile, strategies, derive_seed(master_seed, "execute"));
  r.outcome = assemble_outcome(r.transcript);
  for (std::size_t j = 1; j <= profile.adversaries(); ++j) r.utilities.push_back(table.utility(r.outcome, j));
  return r;
}

void RunningStats::add(double x) {
  ++n_;
  sum_ += x;
  sumsq_ += x * x;
}

void RunningStats::merge(const RunningStats& o) {
  n_ += o.n_;
  sum_ += o.sum_;
  sumsq_ += o.sumsq_;
}

double RunningStats::variance() const {
  if (n_ < 2) return 0.0;
  const double m = mean();
  const double v = (sumsq_ - static_cast<double>(n_) * m * m) / static_cast<double>(n_ - 1);
  return v < 0 ? 0.0 : v;
}

double RunningStats::std_error() const { return n_ ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

Estimate estimate_utility(const Protocol& protocol, const ProfileSampler& sampler,
                          std::span<AdversaryStrategy* const> strategies, const UtilityTable& table, std::size_t j,
                          std::size_t trials, std::uint64_t master_seed, const TrialObserver& observer) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  RunningStats u;
  std::size_t suc = 0, fail = 0, wrong = 0, silent = 0, det = 0, any_det = 0, guess = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t seed = derive_seed(master_seed, "trial", i);
    SeededRng prng(derive_seed(seed, "profile"));
    const CorruptionProfile profile = sampler(prng);
    if (j < 1 || j > profile.adversaries()) throw std::invalid_argument("no such adversary slot");
    GameResult r = play_game(protocol, profile, strategies, table, seed);
    u.add(r.utilities[j - 1]);
    suc += r.outcome.suc;
    fail += !r.transcript.receiver_output;
    wrong += r.transcript.receiver_output && !r.outcome.suc;
    silent += r.transcript.receiver_output && !r.outcome.suc && r.transcript.detect_events.empty();
    det += r.outcome.detect[j - 1];
    any_det += !r.transcript.detect_events.empty();
    guess += r.outcome.guess[j - 1];
    if (observer) observer(i, r);
  }
  const double n = static_cast<double>(trials);
  Estimate e;
  e.trials = trials;
  e.mean = u.mean();
  e.ci95 = u.ci95();
  e.std_error = u.std_error();
  e.suc_rate = static_cast<double>(suc) / n;
  e.fail_rate = static_cast<double>(fail) / n;
  e.wrong_rate = static_cast<double>(wrong) / n;
  e.silent_wrong_rate = static_cast<double>(silent) / n;
  e.detect_rate = static_cast<double>(det) / n;
  e.any_detect_rate = static_cast<double>(any_det) / n;
  e.guess_rate = static_cast<double>(guess) / n;
  return e;
}

Estimate estimate_utility(const Protocol& protocol, const CorruptionProfile& profile,
                          std::span<AdversaryStrategy* const> strategies, const UtilityTable& table, std::size_t j,
                          std::size_t trials, std::uint64_t master_seed, const TrialObserver& observer) {
  return estimate_utility(
      protocol, [&profile](RandomSource&) { return profile; }, strategies, table, j, trials, master_seed, observer);
}

}  // namespace psmt
