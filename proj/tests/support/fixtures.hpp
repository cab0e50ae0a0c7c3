#ifndef PPA_TESTS_FIXTURES_HPP
#define PPA_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppa/quiver.hpp"

namespace ppa_tests {

#ifndef PPA_FIXTURE_DIR
#define PPA_FIXTURE_DIR "fixtures"
#endif

inline std::string fixture_path(const std::string& name) { return std::string(PPA_FIXTURE_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::pair<ppa::Quiver, ppa::Weights> load_fixture(const std::string& name) {
  return ppa::parse_quiver(slurp(fixture_path(name)));
}

inline const std::vector<std::string>& all_fixture_names() {
  static const std::vector<std::string> names = {
      "a2.quiver",     "kronecker.quiver", "a3_ff.quiver",  "a3_fb.quiver",  "a3_bf.quiver",
      "a3_bb.quiver",  "d4_000.quiver",    "d4_001.quiver", "d4_010.quiver", "d4_011.quiver",
      "d4_100.quiver", "d4_101.quiver",    "d4_110.quiver", "d4_111.quiver"};
  return names;
}

inline const std::vector<std::string>& dynkin_fixture_names() {
  static const std::vector<std::string> names = {
      "a2.quiver",     "a3_ff.quiver",  "a3_fb.quiver",  "a3_bf.quiver",  "a3_bb.quiver",  "d4_000.quiver",
      "d4_001.quiver", "d4_010.quiver", "d4_011.quiver", "d4_100.quiver", "d4_101.quiver", "d4_110.quiver",
      "d4_111.quiver"};
  return names;
}

}  // namespace ppa_tests

#endif  // PPA_TESTS_FIXTURES_HPP
