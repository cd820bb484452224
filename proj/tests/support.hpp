#pragma once

#include <filesystem>
#include <string>

#include "tfgp/corrections.hpp"
#include "tfgp/painleve.hpp"

namespace tfgp::testing {

/// Default-window solve shared by every test in a binary.
const HastingsMcLeod& default_nu0();
/// nu_1..nu_3 on the default window.
const std::vector<CorrectionFunction>& default_corrections(int d);

/// Fresh empty directory under the system temp path.
std::filesystem::path scratch_dir(const std::string& tag);

std::string slurp(const std::filesystem::path& p);

}  // namespace tfgp::testing
