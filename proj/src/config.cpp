#include "psmt/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "psmt/attacks.hpp"
#include "psmt/bounds.hpp"

namespace psmt {

namespace {

const std::set<std::string> kTopLevel{"protocol", "profile", "utility", "attacks", "malicious_attack", "trials",
                                      "seed",     "alpha",   "t",       "sweep",   "verify"};

template <typename F>
auto field_guard(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

}  // namespace

UtilityTable witness_table(std::uint64_t message_space_size, double bonus) {
  return UtilityTable::from_sd(3, 2, 1, 0, bonus, message_space_size);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["protocol"] = protocol;
  if (profile) j["profile"] = *profile;
  if (utility) {
    j["utility"] = *utility;
    j["utility"]["class"] = table_class == TableClass::timid ? "timid" : "strictly-timid";
  }
  j["attacks"] = attacks;
  j["malicious_attack"] = malicious_attack;
  j["trials"] = trials;
  j["seed"] = seed;
  if (alpha) j["alpha"] = *alpha;
  if (t) j["t"] = *t;
  if (sweep) j["sweep"] = {{"axis", sweep->axis}, {"values", sweep->values}, {"attack", sweep->attack}};
  j["verify"] = verify;
  return j;
}

ExperimentConfig load_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!kTopLevel.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
  if (!j.contains("protocol")) throw ConfigError("config needs a 'protocol' section");

  ExperimentConfig c;
  c.protocol = field_guard("protocol", [&] { return protocol_from_json(j.at("protocol")); });
  const std::uint64_t msize = MessageSpace(c.protocol.field, c.protocol.d).size();

  if (j.contains("profile")) {
    c.profile = field_guard("profile", [&] { return profile_from_json(j.at("profile")); });
    field_guard("profile", [&] {
      c.profile->validate(c.protocol.n);
      return 0;
    });
    if (c.profile->adversaries() == 0) throw ConfigError("profile: needs at least one adversary");
  }

  if (j.contains("utility")) {
    const auto& u = j.at("utility");
    c.utility = field_guard("utility", [&] { return utility_from_json(u, msize); });
    const std::string cls = u.value("class", "timid");
    if (cls == "timid")
      c.table_class = TableClass::timid;
    else if (cls == "strictly-timid")
      c.table_class = TableClass::strictly_timid;
    else
      throw ConfigError("utility: class must be 'timid' or 'strictly-timid'");
    const std::size_t lambda = c.profile ? c.profile->adversaries() : 1;
    const auto bad = table_violations(*c.utility, c.table_class, lambda);
    if (!bad.empty()) throw ConfigError("utility table violates: " + join(bad, "; "));
  }

  const Variant v = c.protocol.variant;
  if (j.contains("attacks")) {
    for (const auto& a : j.at("attacks")) {
      const std::string name = a.get<std::string>();
      const auto& entry = field_guard("attacks", [&]() -> const AttackCatalogEntry& { return find_attack(name); });
      if (!entry.applies_to(v)) throw ConfigError("attacks: '" + name + "' does not apply to " + to_string(v));
      c.attacks.push_back(name);
    }
  }
  if (j.contains("malicious_attack")) {
    c.malicious_attack = j.at("malicious_attack").get<std::string>();
    field_guard("malicious_attack", [&] { return find_attack(c.malicious_attack).name; });
  }
  c.trials = field_guard("trials", [&] { return j.value("trials", c.trials); });
  if (c.trials == 0) throw ConfigError("trials must be positive");
  c.seed = field_guard("seed", [&] { return j.value("seed", c.seed); });
  if (j.contains("alpha")) c.alpha = field_guard("alpha", [&] { return j.at("alpha").get<double>(); });
  if (j.contains("t")) c.t = field_guard("t", [&] { return j.at("t").get<std::size_t>(); });
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    SweepConfig sw;
    sw.axis = field_guard("sweep", [&] { return s.at("axis").get<std::string>(); });
    if (sw.axis != "ell" && sw.axis != "n" && sw.axis != "t" && sw.axis != "trials")
      throw ConfigError("sweep: axis must be one of ell, n, t, trials");
    sw.values = field_guard("sweep", [&] { return s.value("values", std::vector<double>{}); });
    sw.attack = s.value("attack", sw.attack);
    field_guard("sweep", [&] { return find_attack(sw.attack).name; });
    c.sweep = sw;
  }
  if (j.contains("verify")) c.verify = j.at("verify");
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return load_config(j);
}

BoundCheck protocol_bound_check(const ExperimentConfig& c) {
  BoundCheck b;
  if (!c.utility) {
    b.note = "no utility table";
    return b;
  }
  const ProtocolSpec& p = c.protocol;
  const std::size_t lambda = c.profile ? c.profile->adversaries() : 1;
  const UValues u = derive_u_values(*c.utility);
  try {
    switch (p.variant) {
      case Variant::sjst: {
        const double alpha = c.alpha ? *c.alpha : default_alpha(u);
        std::vector<std::size_t> slots;
        if (c.profile)
          for (const auto& s : c.profile->assignments) slots.push_back(std::max<std::size_t>(1, s.size()));
        else
          slots.push_back(c.t ? *c.t : p.threshold());
        b.rule = slots.size() > 1 ? "sjst-multi" : "sjst";
        b.required = required_ell_sjst_multi(u, alpha, slots).ell;
        b.quantity = "ell";
        b.actual = p.ell;
        break;
      }
      case Variant::rss:
        b.rule = "rss-delta";
        b.quantity = "delta";
        b.required = required_delta_rss(u);
        b.actual = AmdSpec(p.field, p.d).failure_bound();
        b.applicable = true;
        b.ok = b.actual <= b.required + 1e-12;
        return b;
      case Variant::p1:
        b.rule = lambda > 1 ? "p1" : "p1-single";
        b.quantity = "ell";
        b.required = required_ell_p1(u, p.n).ell;
        b.actual = p.ell;
        break;
      case Variant::p2: {
        const UValues dd = derive_u_values(*c.utility, lambda - 1);
        b.rule = "p2";
        b.quantity = "ell";
        b.required = required_ell_p2(u.u1, u.u2, dd.u3).ell;
        b.actual = p.ell;
        break;
      }
      case Variant::p3: {
        const bool mal = c.profile && c.profile->malicious_id;
        const UValues dd = derive_u_values(*c.utility, mal ? 1 : 0);
        b.rule = "p3";
        b.quantity = "ell";
        b.required = required_ell_p3(u, dd, p.n).ell;
        b.actual = p.ell;
        break;
      }
      case Variant::strawman:
        b.note = "no security bound for the detection-free strawman";
        return b;
    }
  } catch (const std::domain_error& e) {
    b.note = e.what();
    return b;
  }
  b.applicable = true;
  b.ok = b.actual >= b.required;
  return b;
}

}  // namespace psmt
