#include "psmt/verification.hpp"

#include <cmath>
#include <sstream>

namespace psmt {

namespace {

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Total-variation distance between two count histograms.
template <typename Key>
double tv_distance(const std::map<Key, std::uint64_t>& a, std::uint64_t na, const std::map<Key, std::uint64_t>& b,
                   std::uint64_t nb) {
  double d = 0;
  for (const auto& [k, c] : a) {
    auto it = b.find(k);
    const double pb = it == b.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(nb);
    d += std::fabs(static_cast<double>(c) / static_cast<double>(na) - pb);
  }
  for (const auto& [k, c] : b)
    if (!a.count(k)) d += static_cast<double>(c) / static_cast<double>(nb);
  return d / 2;
}

// Records the bound of every draw while producing zeros.
class RecordingSource final : public RandomSource {
 public:
  std::uint64_t uniform(std::uint64_t bound) override {
    if (bound == 0) throw std::invalid_argument("uniform: bound must be positive");
    space *= static_cast<long double>(bound);
    return 0;
  }
  long double space = 1;
};

}  // namespace

CheckResult check_hash_strong_universality(const HashFamilySpec& spec, const HashEvaluator& given) {
  const HashEvaluator eval = given ? given : standard_evaluator(spec);
  const std::uint64_t q = spec.field().order();
  const std::uint64_t tags = std::uint64_t{1} << spec.range_bits();
  const std::uint64_t expected = (q * q) / (tags * tags);
  CheckResult r{"hash strong universality m=" + std::to_string(spec.domain_bits()) +
                    " l=" + std::to_string(spec.range_bits()),
                true, 0, static_cast<double>(expected), 0, {}};
  std::uint64_t worst = 0;
  for (std::uint64_t x1 = 0; x1 < q; ++x1)
    for (std::uint64_t x2 = 0; x2 < q; ++x2) {
      if (x1 == x2) continue;
      std::vector<std::uint64_t> count(tags * tags, 0);
      for (std::uint64_t a = 0; a < q; ++a)
        for (std::uint64_t b = 0; b < q; ++b) ++count[eval(a, b, x1) * tags + eval(a, b, x2)];
      for (auto c : count) {
        ++r.cases;
        const std::uint64_t dev = c > expected ? c - expected : expected - c;
        worst = std::max(worst, dev);
        if (c != expected) r.pass = false;
      }
    }
  r.observed = static_cast<double>(worst);
  r.detail = "max |count - " + std::to_string(expected) + "| = " + std::to_string(worst) + " over " +
             std::to_string(r.cases) + " (x1,x2,y1,y2) tuples";
  return r;
}

CheckResult check_hash_offset_collision(const HashFamilySpec& spec, const HashEvaluator& given) {
  const HashEvaluator eval = given ? given : standard_evaluator(spec);
  const std::uint64_t q = spec.field().order();
  const std::uint64_t tags = std::uint64_t{1} << spec.range_bits();
  const double bound = std::ldexp(1.0, 1 - static_cast<int>(spec.range_bits()));
  CheckResult r{"hash offset collision m=" + std::to_string(spec.domain_bits()) +
                    " l=" + std::to_string(spec.range_bits()),
                true, 0, bound, 0, {}};
  // Tabulate h once: table[(a*q+b)*q + x].
  std::vector<std::uint64_t> table(q * q * q);
  for (std::uint64_t a = 0; a < q; ++a)
    for (std::uint64_t b = 0; b < q; ++b)
      for (std::uint64_t x = 0; x < q; ++x) table[(a * q + b) * q + x] = eval(a, b, x);
  for (std::uint64_t x1 = 0; x1 < q; ++x1)
    for (std::uint64_t c1 = 0; c1 < tags; ++c1)
      for (std::uint64_t x2 = 0; x2 < q; ++x2)
        for (std::uint64_t c2 = 0; c2 < tags; ++c2) {
          if (x1 == x2 && c1 == c2) continue;
          std::uint64_t hits = 0;
          for (std::uint64_t ab = 0; ab < q * q; ++ab)
            if ((c1 ^ table[ab * q + x1]) == (c2 ^ table[ab * q + x2])) ++hits;
          const double p = static_cast<double>(hits) / static_cast<double>(q * q);
          ++r.cases;
          r.observed = std::max(r.observed, p);
        }
  r.pass = r.observed <= bound;
  std::ostringstream os;
  os << "max probability " << r.observed << " vs bound " << bound << " over " << r.cases << " tuples";
  r.detail = os.str();
  return r;
}

CheckResult check_amd_security(const AmdSpec& spec) {
  const FieldSpec& f = spec.field();
  const std::uint64_t q = f.order();
  const std::size_t d = spec.d();
  const std::uint64_t secrets = ipow(q, d);
  const std::uint64_t offsets = ipow(q, d + 2);
  CheckResult r{"AMD security q=" + std::to_string(q) + " d=" + std::to_string(d), true, 0, spec.failure_bound(), 0,
                {}};
  auto digits = [&](std::uint64_t idx, std::size_t len) {
    std::vector<FieldElement> v;
    for (std::size_t i = 0; i < len; ++i) {
      v.emplace_back(f, idx % q);
      idx /= q;
    }
    return v;
  };
  for (std::uint64_t si = 0; si < secrets; ++si) {
    const auto s = digits(si, d);
    for (std::uint64_t di = 1; di < offsets; ++di) {
      const auto delta = digits(di, d + 2);
      std::uint64_t undetected = 0;
      for (std::uint64_t x = 0; x < q; ++x) {
        auto c = amd_encode_with(spec, s, FieldElement(f, x)).flatten();
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = c[k] + delta[k];
        if (amd_decode(spec, AmdCodeword::unflatten(c))) ++undetected;
      }
      ++r.cases;
      r.observed = std::max(r.observed, static_cast<double>(undetected) / static_cast<double>(q));
    }
  }
  r.pass = r.observed <= r.bound + 1e-12;
  std::ostringstream os;
  os << "max undetected probability " << r.observed << " vs " << r.bound << " over " << r.cases
     << " (s, offset) pairs";
  r.detail = os.str();
  return r;
}

CheckResult check_shamir_privacy(const FieldSpec& field, std::size_t t, std::size_t n) {
  const SharingSpec spec(t, n, field);
  const std::uint64_t q = field.order();
  const std::uint64_t polys = ipow(q, t);
  CheckResult r{"Shamir privacy " + field.describe() + " t=" + std::to_string(t) + " n=" + std::to_string(n), true, 0,
                0, 0, {}};
  // histograms[subset][secret]
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> pick(t);
  for (std::size_t i = 0; i < t; ++i) pick[i] = i + 1;
  for (;;) {
    subsets.push_back(pick);
    std::size_t k = t;
    while (k > 0 && pick[k - 1] == n - t + k) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < t; ++j) pick[j] = pick[j - 1] + 1;
  }
  using Hist = std::map<std::vector<std::uint64_t>, std::uint64_t>;
  std::vector<std::vector<Hist>> hist(subsets.size(), std::vector<Hist>(q));
  for (std::uint64_t s = 0; s < q; ++s)
    for (std::uint64_t pi = 0; pi < polys; ++pi) {
      std::vector<std::vector<FieldElement>> coeffs(1);
      std::uint64_t idx = pi;
      for (std::size_t k = 0; k < t; ++k) {
        coeffs[0].emplace_back(field, idx % q);
        idx /= q;
      }
      const ShareSet shares = shamir_share_with(spec, {FieldElement(field, s)}, coeffs);
      for (std::size_t si = 0; si < subsets.size(); ++si) {
        std::vector<std::uint64_t> key;
        for (auto i : subsets[si]) key.push_back(shares.at(i)[0].value());
        ++hist[si][s][key];
      }
      ++r.cases;
    }
  for (std::size_t si = 0; si < subsets.size(); ++si)
    for (std::uint64_t a = 0; a < q; ++a)
      for (std::uint64_t b = a + 1; b < q; ++b)
        r.observed = std::max(r.observed, tv_distance(hist[si][a], polys, hist[si][b], polys));
  r.pass = r.observed == 0;
  std::ostringstream os;
  os << "max statistical distance " << r.observed << " over " << subsets.size() << " share subsets, "
     << q * (q - 1) / 2 << " secret pairs";
  r.detail = os.str();
  return r;
}

long double protocol_run_space(const Protocol& protocol) {
  RecordingSource rec;
  SeededRng adv(0);
  PassiveStrategy passive;
  AdversaryStrategy* strategies[] = {&passive};
  RandomStreams streams{rec, rec, {&adv}};
  const Message m = protocol.message_space().from_index(0);
  execute_with(protocol, m, CorruptionProfile::single({}), strategies, streams);
  return rec.space;
}

CheckResult check_protocol_privacy(const Protocol& protocol, const std::set<std::size_t>& corrupted,
                                   const std::map<std::size_t, std::uint64_t>& pinned) {
  const MessageSpace& space = protocol.message_space();
  CheckResult r;
  {
    std::ostringstream os;
    os << protocol.name() << " view privacy, corrupted {";
    bool first = true;
    for (auto c : corrupted) {
      os << (first ? "" : ",") << c;
      first = false;
    }
    os << "}";
    if (!pinned.empty()) os << ", " << pinned.size() << " draws pinned";
    r.name = os.str();
  }
  const CorruptionProfile profile = CorruptionProfile::single(corrupted);
  using Hist = std::map<Payload, std::uint64_t>;
  Hist reference;
  std::uint64_t reference_runs = 0;
  long double weight = -1;
  for (std::uint64_t mi = 0; mi < space.size(); ++mi) {
    const Message m = space.from_index(mi);
    EnumeratingSource src(pinned);
    Hist hist;
    std::uint64_t runs = 0;
    do {
      SeededRng adv(mi);
      PassiveStrategy passive;
      AdversaryStrategy* strategies[] = {&passive};
      RandomStreams streams{src, src, {&adv}};
      const Transcript t = execute_with(protocol, m, profile, strategies, streams);
      if (t.receiver_output != m) throw std::logic_error("passive run did not deliver the message");
      if (weight < 0) weight = src.run_weight();
      if (src.run_weight() != weight) throw std::logic_error("runs with unequal probability; counts not comparable");
      ++hist[serialize_view(view_of(t, 1))];
      ++runs;
    } while (src.next());
    r.cases += runs;
    if (mi == 0) {
      reference = std::move(hist);
      reference_runs = runs;
    } else {
      r.observed = std::max(r.observed, tv_distance(reference, reference_runs, hist, runs));
    }
  }
  r.pass = r.observed == 0;
  std::ostringstream os;
  os << "max statistical distance " << r.observed << " over " << space.size() << " messages, " << r.cases
     << " runs";
  r.detail = os.str();
  return r;
}

long double hash_check_size(const HashFamilySpec& spec) {
  const long double q = static_cast<long double>(spec.field().order());
  const long double tags = std::ldexp(1.0L, static_cast<int>(spec.range_bits()));
  return q * q * q * q + (q * tags) * (q * tags) * q * q;
}

long double amd_check_size(const AmdSpec& spec) {
  const long double q = static_cast<long double>(spec.field().order());
  return std::pow(q, static_cast<long double>(2 * spec.d() + 3));
}

long double shamir_check_size(const FieldSpec& field, std::size_t t, std::size_t) {
  const long double q = static_cast<long double>(field.order());
  return std::pow(q, static_cast<long double>(t + 1));
}

}  // namespace psmt
