#include "support.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

namespace tfgp::testing {

const HastingsMcLeod& default_nu0() {
  static const HastingsMcLeod nu0 = solve_hastings_mcleod();
  return nu0;
}

const std::vector<CorrectionFunction>& default_corrections(int d) {
  static std::map<int, std::vector<CorrectionFunction>> cache;
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, solve_corrections(3, d, default_nu0())).first;
  return it->second;
}

std::filesystem::path scratch_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() /
           ("tfgp_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tfgp::testing
