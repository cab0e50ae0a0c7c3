#ifndef PPA_REPORT_HPP
#define PPA_REPORT_HPP

#include <cstdint>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "ppa/maxrank.hpp"
#include "ppa/polyhl.hpp"

namespace ppa {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64 of a byte string; stable across platforms, used to fingerprint
/// quiver files inside reports.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline Json to_json(const Subspace<Fp>& s) {
  Json basis = Json::array();
  for (Index i = 0; i < s.basis.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < s.basis.cols(); ++j) row.push_back(s.basis(i, j).value());
    basis.push_back(std::move(row));
  }
  return Json{{"ambient", s.ambient}, {"dim", s.dim()}, {"basis", std::move(basis)}};
}

inline Json to_json(const Witness& w) {
  Json tuple = Json::array();
  for (const auto& s : w.tuple) tuple.push_back(to_json(s));
  Json j{{"tuple", std::move(tuple)},
         {"restricted_rank", w.restricted_rank},
         {"rows", w.rows},
         {"cols", w.cols}};
  if (w.trial >= 0) j["trial"] = w.trial;
  else j["case_index"] = w.case_index;
  return j;
}

inline Json to_json(const Verdict& v) {
  Json mode{{"kind", v.exhaustive ? "exhaustive" : "sampled"}};
  if (!v.exhaustive) {
    mode["trials"] = v.trials;
    mode["seed"] = v.seed;
  }
  Json j{{"property", property_name(v.property)},
         {"mode", std::move(mode)},
         {"field", "F" + std::to_string(v.p)},
         {"result", v.pass ? "PASS" : "FAIL"},
         {"cases", v.cases},
         {"failures", v.failures},
         {"failure_fraction", v.failure_fraction}};
  if (!v.exhaustive) {
    j["worst_profile_failure_fraction"] = v.worst_profile_failure_fraction;
    j["first_trial_pass"] = v.first_trial_pass;
  }
  if (v.short_circuit) j["short_circuit"] = true;
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

inline Json to_json(const BasisCertificate& c) {
  return Json{{"dim", c.dim},
              {"trials", c.trials},
              {"seed", c.seed},
              {"field", "F" + std::to_string(c.p)},
              {"passes", c.passes},
              {"pass_fraction", c.pass_fraction},
              {"first_pass_trial", c.first_pass_trial},
              {"first_fail_trial", c.first_fail_trial},
              {"result", c.all_passed() ? "PASS" : (c.passes ? "PARTIAL" : "FAIL")}};
}

inline Json to_json(const BoundReport& b) {
  return Json{{"lhs", b.lhs}, {"rhs", b.rhs}, {"applicable", b.applicable}, {"holds", b.holds}};
}

inline Json to_json(const HlPolyCertificate& c) {
  Json j{{"r", c.r}, {"d", c.d}, {"target_dim", c.n_target}, {"n", c.n}, {"s", c.s}};
  j["certificate"] = to_json(c.certificate);
  return j;
}

}  // namespace ppa

#endif  // PPA_REPORT_HPP
