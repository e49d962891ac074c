#include "psmt/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "psmt/attacks.hpp"
#include "psmt/bounds.hpp"
#include "psmt/verification.hpp"

namespace psmt {

namespace {

void header(std::ostream& out, const ExperimentConfig& c) {
  out << "# config: " << c.to_json().dump() << "\n";
  out << "# seed: " << c.seed << "\n";
}

ExperimentConfig with_overrides(ExperimentConfig c, const CommandOptions& o) {
  if (o.seed) c.seed = *o.seed;
  if (o.trials) c.trials = *o.trials;
  return c;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

std::string u_str(const UValues& u) {
  return "u=(" + fmt(u.u1) + " " + fmt(u.u2) + " " + fmt(u.u3) + " " + fmt(u.u4) + ")";
}

// Runs a command body and maps the documented failure classes to exit codes.
template <typename F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitError;
  }
}

class TranscriptDump {
 public:
  TranscriptDump(const CommandOptions& o) : path_(o.dump_transcript), limit_(o.dump_limit) {}
  bool enabled() const { return path_.has_value(); }

  void offer(std::size_t adversary, const std::string& cell, std::size_t trial, const GameResult& r) {
    if (!path_ || items_.size() >= limit_) return;
    const bool failing = !r.outcome.suc;
    if (trial != 0 && !failing) return;
    items_.push_back({{"adversary", adversary},
                      {"attack", cell},
                      {"trial", trial},
                      {"failing", failing},
                      {"transcript", r.transcript}});
  }

  void write() const {
    if (!path_) return;
    std::ofstream f(*path_);
    if (!f) throw std::runtime_error("cannot write transcript dump '" + *path_ + "'");
    f << items_.dump(1) << "\n";
  }

 private:
  std::optional<std::string> path_;
  std::size_t limit_;
  nlohmann::json items_ = nlohmann::json::array();
};

CorruptionProfile default_profile(const ExperimentConfig& c) {
  if (c.profile) return *c.profile;
  std::set<std::size_t> own;
  const std::size_t t = c.t ? *c.t : c.protocol.threshold();
  for (std::size_t i = 1; i <= t && i <= c.protocol.n; ++i) own.insert(i);
  return CorruptionProfile::single(own);
}

UtilityTable table_or_witness(const ExperimentConfig& c) {
  const std::uint64_t msize = MessageSpace(c.protocol.field, c.protocol.d).size();
  return c.utility ? c.utility->with_message_space(msize) : witness_table(msize);
}

}  // namespace

int cmd_bounds(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    const ExperimentConfig c = with_overrides(cfg, o);
    if (!c.utility) throw ConfigError("bounds needs a utility table");
    const UValues u = derive_u_values(*c.utility);
    const std::size_t n = c.protocol.n;
    const std::size_t lambda = c.profile ? c.profile->adversaries() : 1;
    const std::size_t t = c.t ? *c.t : (c.profile ? c.profile->max_slot() : c.protocol.threshold());
    const double alpha = c.alpha ? *c.alpha : default_alpha(u);

    header(out, c);
    out << "rule,inputs,quantity,raw,value,status,note\n";
    auto row = [&](const std::string& rule, const std::string& inputs, const std::string& qty, auto&& compute) {
      try {
        const auto [raw, value] = compute();
        out << rule << ",\"" << inputs << "\"," << qty << "," << fmt(raw) << "," << fmt(value) << ",ok,\n";
      } catch (const std::domain_error& e) {
        out << rule << ",\"" << inputs << "\"," << qty << ",,,N/A,\"" << e.what() << "\"\n";
      }
    };
    auto ell = [](RequiredEll r) { return std::pair<double, double>{r.raw, r.ell}; };

    row("sjst", u_str(u) + " alpha=" + fmt(alpha) + " t=" + std::to_string(t), "ell",
        [&] { return ell(required_ell_sjst(u, alpha, t)); });
    if (lambda > 1) {
      std::vector<std::size_t> slots;
      for (const auto& s : c.profile->assignments) slots.push_back(std::max<std::size_t>(1, s.size()));
      row("sjst-multi", u_str(u) + " alpha=" + fmt(alpha) + " slots=" + std::to_string(slots.size()), "ell",
          [&] { return ell(required_ell_sjst_multi(u, alpha, slots)); });
    }
    row("rss-delta", u_str(u), "delta", [&] {
      const double d = required_delta_rss(u);
      return std::pair<double, double>{d, d};
    });
    row("rss-ell", u_str(u) + " d=" + std::to_string(c.protocol.d), "ell",
        [&] { return ell(required_ell_rss(u, c.protocol.d)); });
    row("p1", u_str(u) + " n=" + std::to_string(n), "ell", [&] { return ell(required_ell_p1(u, n)); });
    const UValues dd3 = derive_u_values(*c.utility, lambda > 1 ? lambda - 1 : 0);
    row("p2", "u1'=" + fmt(u.u1) + " u2'=" + fmt(u.u2) + " u3''=" + fmt(dd3.u3), "ell",
        [&] { return ell(required_ell_p2(u.u1, u.u2, dd3.u3)); });
    const UValues dd = derive_u_values(*c.utility, 1);
    row("p3", u_str(u) + " detected-other " + u_str(dd) + " n=" + std::to_string(n), "ell",
        [&] { return ell(required_ell_p3(u, dd, n)); });
    return kExitOk;
  });
}

int cmd_simulate(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    ExperimentConfig c = with_overrides(cfg, o);
    if (!c.utility) throw ConfigError("simulate needs a utility table");
    const CorruptionProfile profile = default_profile(c);
    profile.validate(c.protocol.n);
    c.profile = profile;
    const BoundCheck bc = protocol_bound_check(c);
    if (bc.applicable && !bc.ok && !o.allow_underspec)
      throw ConfigError("configured " + bc.quantity + "=" + fmt(bc.actual) + " does not meet the " + bc.rule +
                        " requirement " + fmt(bc.required) + " (use --allow-underspec for probes)");
    const auto protocol = make_protocol(c.protocol);
    const UtilityTable table = c.utility->with_message_space(protocol->message_space().size());

    TranscriptDump dump(o);
    NashOptions opts;
    opts.attacks = c.attacks;
    opts.trials = c.trials;
    opts.seed = c.seed;
    opts.malicious_attack = c.malicious_attack;
    if (dump.enabled())
      opts.observer = [&dump](std::size_t j, const std::string& a, std::size_t i, const GameResult& r) {
        dump.offer(j, a, i, r);
      };
    const NashReport report = nash_catalog_check(*protocol, profile, table, opts);

    header(out, c);
    if (bc.applicable)
      out << "# bound: " << bc.rule << " requires " << bc.quantity << (bc.quantity == "delta" ? " <= " : " >= ")
          << fmt(bc.required) << ", configured " << fmt(bc.actual) << (bc.ok ? "" : " (underspecified)") << "\n";
    out << "protocol,adversary,attack,trials,mean,ci95,threshold,flag,suc_rate,detect_rate,guess_rate,fail_rate,"
           "wrong_rate,silent_wrong_rate\n";
    auto line = [&](std::size_t j, const std::string& a, const Estimate& e, const std::string& thr, bool flag) {
      out << protocol->name() << "," << j << "," << a << "," << e.trials << "," << fmt(e.mean) << "," << fmt(e.ci95)
          << "," << thr << "," << (flag ? 1 : 0) << "," << fmt(e.suc_rate) << "," << fmt(e.detect_rate) << ","
          << fmt(e.guess_rate) << "," << fmt(e.fail_rate) << "," << fmt(e.wrong_rate) << ","
          << fmt(e.silent_wrong_rate) << "\n";
    };
    std::size_t last = 0;
    for (const auto& r : report.rows) {
      if (r.adversary != last) {
        line(r.adversary, "passive-random-guess", r.baseline, "", false);
        last = r.adversary;
      }
      line(r.adversary, r.attack, r.estimate, fmt(r.threshold), r.flag);
    }
    out << "# summary: " << report.summary() << "\n";
    dump.write();
    if (report.any_flag()) {
      log << "Nash flag raised: " << report.summary() << "\n";
      return kExitNashFlag;
    }
    return kExitOk;
  });
}

namespace {

const char* kDefaultVerify = R"({
  "hash": {"m": 3, "ells": [1, 2, 3]},
  "amd": [{"field": {"kind": "prime", "p": 5}, "d": 1}, {"field": {"kind": "prime", "p": 7}, "d": 1}],
  "shamir": {"field": {"kind": "prime", "p": 5}, "t": 2, "n": 4},
  "protocols": [{"protocol": {"variant": "rss", "n": 3, "field": {"kind": "binary", "m": 2}, "d": 1, "t": 2},
                 "corrupted": [1, 2]}],
  "limit": 1e9
})";

}  // namespace

int cmd_verify(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    const ExperimentConfig c = with_overrides(cfg, o);
    nlohmann::json v = nlohmann::json::parse(kDefaultVerify);
    for (auto it = c.verify.begin(); it != c.verify.end(); ++it) {
      if (!v.contains(it.key())) throw ConfigError("verify: unknown key '" + it.key() + "'");
      v[it.key()] = it.value();
    }
    const long double limit = v.at("limit").get<double>();
    auto guard = [&](const std::string& what, long double size) {
      if (size > limit) {
        std::ostringstream os;
        os << what << ": enumeration size ~" << std::setprecision(3) << static_cast<double>(size)
           << " exceeds limit " << static_cast<double>(limit);
        throw ConfigError(os.str());
      }
    };

    std::vector<CheckResult> results;
    try {
      const unsigned m = v.at("hash").at("m").get<unsigned>();
      for (unsigned ell : v.at("hash").at("ells").get<std::vector<unsigned>>()) {
        const HashFamilySpec spec(m, ell);
        guard("hash", hash_check_size(spec));
        if (m > 12) throw ConfigError("hash: m > 12 cannot be enumerated");
        results.push_back(check_hash_strong_universality(spec));
        results.push_back(check_hash_offset_collision(spec));
      }
      for (const auto& a : v.at("amd")) {
        const AmdSpec spec(field_from_json(a.at("field")), a.at("d").get<std::size_t>());
        guard("amd", amd_check_size(spec));
        results.push_back(check_amd_security(spec));
      }
      {
        const auto& s = v.at("shamir");
        const FieldSpec f = field_from_json(s.at("field"));
        const std::size_t t = s.at("t").get<std::size_t>();
        guard("shamir", shamir_check_size(f, t, s.at("n").get<std::size_t>()));
        results.push_back(check_shamir_privacy(f, t, s.at("n").get<std::size_t>()));
      }
      for (const auto& p : v.at("protocols")) {
        const auto protocol = make_protocol(protocol_from_json(p.at("protocol")));
        const auto corrupted = p.at("corrupted").get<std::set<std::size_t>>();
        std::map<std::size_t, std::uint64_t> pinned;
        if (p.contains("pinned"))
          for (auto it = p.at("pinned").begin(); it != p.at("pinned").end(); ++it)
            pinned[std::stoul(it.key())] = it.value().get<std::uint64_t>();
        long double size = protocol_run_space(*protocol) * static_cast<long double>(protocol->message_space().size());
        for (std::size_t k = 0; k < pinned.size(); ++k) size /= 2;  // pinned draws branch at least twice
        guard(protocol->name() + " privacy", size);
        results.push_back(check_protocol_privacy(*protocol, corrupted, pinned));
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("verify: ") + e.what());
    }

    header(out, c);
    out << "check,pass,observed,bound,cases,detail\n";
    bool ok = true;
    for (const auto& r : results) {
      ok = ok && r.pass;
      out << "\"" << r.name << "\"," << (r.pass ? "PASS" : "FAIL") << "," << fmt(r.observed) << "," << fmt(r.bound)
          << "," << r.cases << ",\"" << r.detail << "\"\n";
    }
    return ok ? kExitOk : kExitVerify;
  });
}

int cmd_sweep(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    const ExperimentConfig c = with_overrides(cfg, o);
    if (!c.sweep) throw ConfigError("sweep needs a 'sweep' section");
    if (c.sweep->values.empty()) throw ConfigError("sweep: empty axis values");
    const SweepConfig& sw = *c.sweep;
    const std::size_t base_t = c.profile ? c.profile->max_slot() : c.protocol.threshold();

    header(out, c);
    out << "axis,value,protocol,attack,trials,mean,ci95,suc_rate,wrong_rate,silent_wrong_rate,detect_rate,fail_rate,"
           "required\n";
    for (double value : sw.values) {
      if (value < 0 || value != std::floor(value)) throw ConfigError("sweep: values must be non-negative integers");
      const auto iv = static_cast<std::size_t>(value);
      ExperimentConfig cell = c;
      if (sw.axis == "ell") cell.protocol.ell = static_cast<unsigned>(iv);
      if (sw.axis == "trials") cell.trials = iv;
      if (sw.axis == "n") {
        cell.protocol.n = iv;
        const std::size_t t = std::min(base_t, cell.protocol.threshold());
        std::set<std::size_t> own;
        for (std::size_t i = 1; i <= t; ++i) own.insert(i);
        cell.profile = CorruptionProfile::single(own);
      }
      if (sw.axis == "t") {
        std::set<std::size_t> own;
        for (std::size_t i = 1; i <= iv; ++i) own.insert(i);
        cell.profile = CorruptionProfile::single(own);
        if (cell.protocol.variant == Variant::rss || cell.protocol.variant == Variant::strawman) cell.protocol.t = iv;
      }
      if (cell.trials == 0) throw ConfigError("sweep: trials must be positive");
      try {
        cell.protocol.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("sweep value ") + fmt(value) + ": " + e.what());
      }
      const CorruptionProfile profile = default_profile(cell);
      profile.validate(cell.protocol.n);
      cell.profile = profile;
      const auto protocol = make_protocol(cell.protocol);
      if (!find_attack(sw.attack).applies_to(cell.protocol.variant))
        throw ConfigError("sweep: attack '" + sw.attack + "' does not apply to " + to_string(cell.protocol.variant));
      const UtilityTable table = table_or_witness(cell);
      auto strats = build_strategies(profile, 1, sw.attack, cell.malicious_attack);
      auto ptrs = raw_pointers(strats);
      const Estimate e = estimate_utility(*protocol, profile, ptrs, table, 1, cell.trials, cell.seed);
      if (!cell.utility) cell.utility = table;
      const BoundCheck bc = protocol_bound_check(cell);
      out << sw.axis << "," << iv << "," << protocol->name() << "," << sw.attack << "," << e.trials << ","
          << fmt(e.mean) << "," << fmt(e.ci95) << "," << fmt(e.suc_rate) << "," << fmt(e.wrong_rate) << ","
          << fmt(e.silent_wrong_rate) << "," << fmt(e.detect_rate) << "," << fmt(e.fail_rate) << ","
          << (bc.applicable ? fmt(bc.required) : "") << "\n";
    }
    return kExitOk;
  });
}

}  // namespace psmt
