#include "tfgp/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tfgp/errors.hpp"

namespace tfgp {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == delim) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  for (const auto& part : split(s, ',')) out.push_back(parse_double(trim(part)));
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

double parse_double(const std::string& s) {
  double x = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw FormatError("not a number: '" + s + "'");
  }
  return x;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::string* Table::find(const std::string& key) const {
  for (const auto& [k, v] : header) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::string& Table::at(const std::string& key) const {
  if (const auto* v = find(key)) return *v;
  throw FormatError("header key '" + key + "' missing");
}

const std::vector<double>& Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return columns[i];
  }
  throw FormatError("column '" + name + "' missing");
}

void write_table(const std::string& path, const Table& t, char delim) {
  if (t.names.size() != t.columns.size()) throw std::invalid_argument("write_table: name/column mismatch");
  const std::size_t rows = t.columns.empty() ? 0 : t.columns.front().size();
  for (const auto& c : t.columns) {
    if (c.size() != rows) throw std::invalid_argument("write_table: ragged columns");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& [k, v] : t.header) out << "# " << k << " = " << v << '\n';
  out << "# delimiter = " << (delim == '\t' ? "tab" : std::string(1, delim)) << '\n';
  out << "# columns:";
  for (const auto& n : t.names) out << ' ' << n;
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (c) out << delim;
      out << format_double(t.columns[c][r]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

Table read_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  Table t;
  char delim = '\t';
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      if (body.rfind("columns:", 0) == 0) {
        std::istringstream ss(body.substr(8));
        std::string n;
        while (ss >> n) t.names.push_back(n);
        t.columns.assign(t.names.size(), {});
        continue;
      }
      const auto eq = body.find(" = ");
      if (eq == std::string::npos) continue;
      const std::string k = body.substr(0, eq), v = body.substr(eq + 3);
      if (k == "delimiter") {
        delim = v == "tab" ? '\t' : v.at(0);
      } else {
        t.header.emplace_back(k, v);
      }
      continue;
    }
    const auto fields = split(line, delim);
    if (fields.size() != t.names.size()) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(t.names.size()) + " fields");
    }
    for (std::size_t c = 0; c < fields.size(); ++c) t.columns[c].push_back(parse_double(fields[c]));
  }
  return t;
}

void write_report(const std::string& path, const Header& comments, const Header& entries) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& [k, v] : comments) out << "# " << k << " = " << v << '\n';
  for (const auto& [k, v] : entries) out << k << '=' << v << '\n';
  if (!out) throw std::runtime_error("write failed for " + path);
}

Header read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  Header h;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError(path + ": line without '='");
    h.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return h;
}

void save_hastings_mcleod(const std::string& path, const HastingsMcLeod& hm, const Header& extra,
                          char delim) {
  const auto& o = hm.options();
  Table t;
  t.header = {{"format", "tfgp-hastings-mcleod"},
              {"version", kVersion},
              {"window_left", format_double(o.window.left)},
              {"window_right", format_double(o.window.right)},
              {"nodes_per_unit", std::to_string(o.nodes_per_unit)},
              {"n_nodes", std::to_string(hm.grid().size())},
              {"tol", format_double(o.tol)},
              {"tail_terms", std::to_string(o.tail_terms)},
              {"residual_norm", format_double(hm.residual_norm())},
              {"iterations", std::to_string(hm.iterations())}};
  t.header.insert(t.header.end(), extra.begin(), extra.end());
  const auto y = hm.grid().nodes();
  t.names = {"y", "nu0", "nu0_d1", "w0", "nu0_d2"};
  t.columns = {{y.begin(), y.end()},
               {hm.values().begin(), hm.values().end()},
               {hm.first_derivative().begin(), hm.first_derivative().end()},
               {hm.w0().values().begin(), hm.w0().values().end()},
               {hm.second_derivative().begin(), hm.second_derivative().end()}};
  write_table(path, t, delim);
}

HastingsMcLeod load_hastings_mcleod(const std::string& path) {
  const Table t = read_table(path);
  if (t.at("format") != "tfgp-hastings-mcleod") throw FormatError(path + ": not a nu0 file");
  PainleveOptions o;
  o.window.left = parse_double(t.at("window_left"));
  o.window.right = parse_double(t.at("window_right"));
  o.nodes_per_unit = std::stoi(t.at("nodes_per_unit"));
  o.tol = parse_double(t.at("tol"));
  o.tail_terms = std::stoi(t.at("tail_terms"));
  auto grid = std::make_shared<const Grid>(
      Grid::uniform_per_unit(-o.window.left, o.window.right, o.nodes_per_unit));
  const auto& y = t.column("y");
  if (y.size() != grid->size()) throw GridMismatch(path + ": node count does not match header");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != (*grid)[i]) throw GridMismatch(path + ": node " + std::to_string(i) + " differs");
  }
  ScalarField field(grid, t.column("nu0"), t.column("nu0_d1"), t.column("nu0_d2"));
  ScalarField w0(grid, t.column("w0"));
  return HastingsMcLeod(std::move(field), std::move(w0), b_coefficients(o.tail_terms - 1),
                        parse_double(t.at("residual_norm")), o, std::stoi(t.at("iterations")));
}

void save_correction(const std::string& path, const CorrectionFunction& cf, const Header& extra,
                     char delim) {
  Table t;
  t.header = {{"format", "tfgp-correction"},
              {"version", kVersion},
              {"n", std::to_string(cf.order)},
              {"d", std::to_string(cf.dimension)},
              {"residual_norm", format_double(cf.residual_norm)},
              {"right_boundary", "tail series value " + format_double(cf.right_value)},
              {"left_boundary", "0"},
              {"dominance_margin", format_double(cf.dominance_margin)},
              {"tail_leading_power_x2", std::to_string(cf.tail.leading_power_x2())},
              {"tail_coefficients", join_doubles(cf.tail.normalized().coeffs())}};
  t.header.insert(t.header.end(), extra.begin(), extra.end());
  const auto y = cf.field.grid().nodes();
  t.names = {"y", "nu", "nu_d1", "nu_d2"};
  t.columns = {{y.begin(), y.end()},
               {cf.field.values().begin(), cf.field.values().end()},
               {cf.field.first_derivative().begin(), cf.field.first_derivative().end()},
               {cf.field.second_derivative().begin(), cf.field.second_derivative().end()}};
  write_table(path, t, delim);
}

CorrectionFunction load_correction(const std::string& path, const HastingsMcLeod& nu0) {
  const Table t = read_table(path);
  if (t.at("format") != "tfgp-correction") throw FormatError(path + ": not a correction file");
  const auto& y = t.column("y");
  const Grid& g = nu0.grid();
  if (y.size() != g.size()) throw GridMismatch(path + ": grid differs from nu0 grid");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != g[i]) throw GridMismatch(path + ": node " + std::to_string(i) + " differs");
  }
  CorrectionFunction cf;
  cf.order = std::stoi(t.at("n"));
  cf.dimension = std::stoi(t.at("d"));
  cf.residual_norm = parse_double(t.at("residual_norm"));
  cf.dominance_margin = parse_double(t.at("dominance_margin"));
  cf.tail = TailSeries(std::stoi(t.at("tail_leading_power_x2")),
                       parse_doubles(t.at("tail_coefficients")));
  cf.field = ScalarField(nu0.grid_ptr(), t.column("nu"), t.column("nu_d1"), t.column("nu_d2"));
  cf.right_value = cf.field.values().back();
  return cf;
}

}  // namespace tfgp
