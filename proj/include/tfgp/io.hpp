#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tfgp/corrections.hpp"
#include "tfgp/painleve.hpp"

namespace tfgp {

inline constexpr const char* kVersion = "1.0.0";

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);
double parse_double(const std::string& s);

std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t h);

using Header = std::vector<std::pair<std::string, std::string>>;

/// Delimiter-separated table with `# key = value` header lines followed by a
/// `# columns:` line.
struct Table {
  Header header;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  const std::string* find(const std::string& key) const;
  const std::string& at(const std::string& key) const;
  const std::vector<double>& column(const std::string& name) const;
};

void write_table(const std::string& path, const Table& t, char delim = '\t');
Table read_table(const std::string& path);

/// key = value report, one pair per line, `#` comments allowed.
void write_report(const std::string& path, const Header& comments, const Header& entries);
Header read_report(const std::string& path);

void save_hastings_mcleod(const std::string& path, const HastingsMcLeod& hm,
                          const Header& extra = {}, char delim = '\t');
HastingsMcLeod load_hastings_mcleod(const std::string& path);

void save_correction(const std::string& path, const CorrectionFunction& cf,
                     const Header& extra = {}, char delim = '\t');
CorrectionFunction load_correction(const std::string& path, const HastingsMcLeod& nu0);

}  // namespace tfgp
