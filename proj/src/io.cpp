#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "eigenwise/errors.hpp"
#include "eigenwise/io.hpp"

namespace eigenwise {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct ConfigLine {
  int number = 0;
  std::string key;
  std::string value;
};

std::vector<ConfigLine> split_config(const std::string& text) {
  std::vector<ConfigLine> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    ConfigLine cl;
    cl.number = number;
    cl.key = trim(line.substr(0, eq));
    cl.value = trim(line.substr(eq + 1));
    if (cl.key.empty())
      throw ConfigError("config line " + std::to_string(number) + ": empty key");
    out.push_back(cl);
  }
  return out;
}

[[noreturn]] void bad_value(const ConfigLine& cl, const std::string& what) {
  throw ConfigError("config line " + std::to_string(cl.number) + ": key '" + cl.key + "' " + what);
}

double parse_double_token(const std::string& tok, const ConfigLine& cl) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = b + tok.size();
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e) bad_value(cl, "has a malformed number '" + tok + "'");
  if (!std::isfinite(v)) bad_value(cl, "must be finite");
  return v;
}

double parse_double(const ConfigLine& cl) { return parse_double_token(cl.value, cl); }

long parse_long(const ConfigLine& cl) {
  long v = 0;
  const char* b = cl.value.data();
  const char* e = b + cl.value.size();
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e) bad_value(cl, "has a malformed integer '" + cl.value + "'");
  return v;
}

std::uint64_t parse_u64(const ConfigLine& cl) {
  std::uint64_t v = 0;
  const char* b = cl.value.data();
  const char* e = b + cl.value.size();
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e)
    bad_value(cl, "has a malformed unsigned integer '" + cl.value + "'");
  return v;
}

std::vector<double> parse_double_list(const ConfigLine& cl) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= cl.value.size()) {
    const std::size_t comma = cl.value.find(',', pos);
    const std::string tok =
        trim(cl.value.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (tok.empty()) bad_value(cl, "has an empty list element");
    out.push_back(parse_double_token(tok, cl));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) bad_value(cl, "needs at least one value");
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& experiment_override) {
  const std::vector<ConfigLine> lines = split_config(text);

  std::string experiment = "sbm-edgeworth";
  for (const ConfigLine& cl : lines)
    if (cl.key == "experiment") experiment = cl.value;
  if (!experiment_override.empty()) experiment = experiment_override;

  RunConfig rc;
  rc.exp = ExperimentConfig::defaults(experiment);  // ConfigError on unknown name

  for (const ConfigLine& cl : lines) {
    if (cl.key == "experiment") {
      continue;  // consumed above
    } else if (cl.key == "n") {
      const long v = parse_long(cl);
      if (v < 2) bad_value(cl, "must be at least 2");
      rc.exp.n = static_cast<int>(v);
    } else if (cl.key == "rho_exponent") {
      const double v = parse_double(cl);
      if (v < -1.0 || v > 0.0) bad_value(cl, "must lie in [-1, 0]");
      rc.exp.rho_exponent = v;
    } else if (cl.key == "beta_delta") {
      const double v = parse_double(cl);
      if (v <= 0.0 || v >= 1.0) bad_value(cl, "must lie in (0, 1)");
      rc.exp.beta_delta = v;
    } else if (cl.key == "a") {
      const double v = parse_double(cl);
      if (v <= 0.0) bad_value(cl, "must be positive");
      rc.exp.a = v;
    } else if (cl.key == "b") {
      const double v = parse_double(cl);
      if (v <= 0.0) bad_value(cl, "must be positive");
      rc.exp.b = v;
    } else if (cl.key == "n_mc" || cl.key == "nmc") {
      const long v = parse_long(cl);
      if (v < 100) bad_value(cl, "must be at least 100");
      rc.exp.n_mc = v;
    } else if (cl.key == "repeats") {
      const long v = parse_long(cl);
      if (v < 1) bad_value(cl, "must be at least 1");
      rc.exp.repeats = static_cast<int>(v);
    } else if (cl.key == "n_boot" || cl.key == "nboot") {
      const long v = parse_long(cl);
      if (v < 1) bad_value(cl, "must be at least 1");
      rc.exp.n_boot = static_cast<int>(v);
    } else if (cl.key == "replicates") {
      const long v = parse_long(cl);
      if (v < 1) bad_value(cl, "must be at least 1");
      rc.exp.replicates = static_cast<int>(v);
    } else if (cl.key == "rho_exponents") {
      std::vector<double> vs = parse_double_list(cl);
      for (const double v : vs)
        if (v < -1.0 || v > 0.0) bad_value(cl, "entries must lie in [-1, 0]");
      rc.exp.rho_exponents = std::move(vs);
    } else if (cl.key == "p_scale") {
      const double v = parse_double(cl);
      if (v <= 0.0) bad_value(cl, "must be positive");
      rc.exp.p_scale = v;
    } else if (cl.key == "q_scale") {
      const double v = parse_double(cl);
      if (v <= 0.0) bad_value(cl, "must be positive");
      rc.exp.q_scale = v;
    } else if (cl.key == "target_i") {
      const long v = parse_long(cl);
      if (v < 1) bad_value(cl, "must be at least 1");
      rc.exp.target_i = static_cast<int>(v);
    } else if (cl.key == "target_k") {
      const long v = parse_long(cl);
      if (v < 1) bad_value(cl, "must be at least 1");
      rc.exp.target_k = static_cast<int>(v);
    } else if (cl.key == "curve_points") {
      const long v = parse_long(cl);
      if (v < 2) bad_value(cl, "must be at least 2");
      rc.exp.curve_points = static_cast<int>(v);
    } else if (cl.key == "curve_lo") {
      rc.exp.curve_lo = parse_double(cl);
    } else if (cl.key == "curve_hi") {
      rc.exp.curve_hi = parse_double(cl);
    } else if (cl.key == "bias") {
      if (cl.value == "population")
        rc.exp.bias = BiasSource::population;
      else if (cl.value == "plugin")
        rc.exp.bias = BiasSource::plugin;
      else
        bad_value(cl, "must be 'population' or 'plugin'");
    } else if (cl.key == "seed") {
      rc.seed = parse_u64(cl);
    } else if (cl.key == "threads") {
      const long v = parse_long(cl);
      if (v < 0) bad_value(cl, "must be nonnegative");
      rc.threads = static_cast<int>(v);
    } else if (cl.key == "out") {
      if (cl.value.empty()) bad_value(cl, "must not be empty");
      rc.out_dir = cl.value;
    } else if (cl.key == "tau") {
      const double v = parse_double(cl);
      if (v < 0.0) bad_value(cl, "must be nonnegative");
      rc.tau = v;
    } else {
      throw ConfigError("config line " + std::to_string(cl.number) + ": unknown key '" + cl.key +
                        "'");
    }
  }

  if (!(rc.exp.curve_lo < rc.exp.curve_hi))
    throw ConfigError("config: curve_lo must be below curve_hi");
  return rc;
}

std::vector<std::pair<std::string, std::string>> echo_config(const RunConfig& rc) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("experiment", rc.exp.experiment);
  kv.emplace_back("n", std::to_string(rc.exp.n));
  kv.emplace_back("rho_exponent", format_double(rc.exp.rho_exponent));
  kv.emplace_back("beta_delta", format_double(rc.exp.beta_delta));
  kv.emplace_back("a", format_double(rc.exp.a));
  kv.emplace_back("b", format_double(rc.exp.b));
  kv.emplace_back("n_mc", std::to_string(rc.exp.n_mc));
  kv.emplace_back("repeats", std::to_string(rc.exp.repeats));
  kv.emplace_back("n_boot", std::to_string(rc.exp.n_boot));
  kv.emplace_back("replicates", std::to_string(rc.exp.replicates));
  std::string exps;
  for (std::size_t t = 0; t < rc.exp.rho_exponents.size(); ++t) {
    if (t) exps += ",";
    exps += format_double(rc.exp.rho_exponents[t]);
  }
  kv.emplace_back("rho_exponents", exps);
  kv.emplace_back("p_scale", format_double(rc.exp.p_scale));
  kv.emplace_back("q_scale", format_double(rc.exp.q_scale));
  kv.emplace_back("target_i", std::to_string(rc.exp.target_i));
  kv.emplace_back("target_k", std::to_string(rc.exp.target_k));
  kv.emplace_back("curve_points", std::to_string(rc.exp.curve_points));
  kv.emplace_back("curve_lo", format_double(rc.exp.curve_lo));
  kv.emplace_back("curve_hi", format_double(rc.exp.curve_hi));
  kv.emplace_back("bias", rc.exp.bias == BiasSource::population ? "population" : "plugin");
  kv.emplace_back("seed", std::to_string(rc.seed));
  kv.emplace_back("threads", std::to_string(rc.threads));
  kv.emplace_back("out", rc.out_dir);
  kv.emplace_back("tau", format_double(rc.tau));
  return kv;
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

namespace {

// Whitespace-separated numeric tokens after a dimension header.
struct TokenReader {
  const std::string& text;
  std::size_t pos = 0;

  bool next(std::string& tok) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) return false;
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    tok = text.substr(start, pos - start);
    return true;
  }
};

long read_dim(TokenReader& tr, const char* what) {
  std::string tok;
  if (!tr.next(tok)) throw FormatError(std::string("matrix text: missing ") + what);
  long v = 0;
  const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (r.ec != std::errc() || r.ptr != tok.data() + tok.size() || v < 1)
    throw FormatError(std::string("matrix text: bad ") + what + " '" + tok + "'");
  return v;
}

double read_entry(TokenReader& tr, long i, long j) {
  std::string tok;
  if (!tr.next(tok))
    throw FormatError("matrix text: missing entry at row " + std::to_string(i + 1) + ", column " +
                      std::to_string(j + 1));
  double v = 0.0;
  const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
    throw FormatError("matrix text: malformed entry '" + tok + "' at row " + std::to_string(i + 1) +
                      ", column " + std::to_string(j + 1));
  return v;
}

void expect_end(TokenReader& tr) {
  std::string tok;
  if (tr.next(tok)) throw FormatError("matrix text: trailing token '" + tok + "'");
}

}  // namespace

std::string write_matrix_text(const SymmetricMatrix& A) {
  const int n = A.n();
  std::string out = std::to_string(n) + "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out += format_double(A(i, j));
      out += (j + 1 < n) ? ' ' : '\n';
    }
  }
  return out;
}

SymmetricMatrix read_matrix_text(const std::string& text) {
  TokenReader tr{text};
  const long n = read_dim(tr, "dimension");
  if (n > 100000) throw FormatError("matrix text: dimension too large");
  RectMatrix full(static_cast<int>(n), static_cast<int>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) full(static_cast<int>(i), static_cast<int>(j)) = read_entry(tr, i, j);
  expect_end(tr);
  SymmetricMatrix A(static_cast<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (std::fabs(full(i, j) - full(j, i)) > 1e-12)
        throw FormatError("matrix text: asymmetry beyond 1e-12 at row " + std::to_string(i + 1) +
                          ", column " + std::to_string(j + 1));
      A.set(i, j, full(i, j));
    }
  return A;
}

std::string write_rect_text(const RectMatrix& X) {
  std::string out = std::to_string(X.rows()) + " " + std::to_string(X.cols()) + "\n";
  for (int i = 0; i < X.rows(); ++i) {
    for (int j = 0; j < X.cols(); ++j) {
      out += format_double(X(i, j));
      out += (j + 1 < X.cols()) ? ' ' : '\n';
    }
  }
  return out;
}

RectMatrix read_rect_text(const std::string& text) {
  TokenReader tr{text};
  const long p1 = read_dim(tr, "row count");
  const long p2 = read_dim(tr, "column count");
  if (p1 > 100000 || p2 > 100000) throw FormatError("matrix text: dimension too large");
  RectMatrix X(static_cast<int>(p1), static_cast<int>(p2));
  for (long i = 0; i < p1; ++i)
    for (long j = 0; j < p2; ++j) X(static_cast<int>(i), static_cast<int>(j)) = read_entry(tr, i, j);
  expect_end(tr);
  return X;
}

std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    out += header[c];
    out += (c + 1 < header.size()) ? ',' : '\n';
  }
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw ShapeError("csv row width " + std::to_string(row.size()) + " does not match header " +
                       std::to_string(header.size()));
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += format_double(row[c]);
      out += (c + 1 < row.size()) ? ',' : '\n';
    }
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for '" + path + "'");
  return ss.str();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  write_text_file(path, csv_text(header, rows));
}

void write_matrix_file(const std::string& path, const SymmetricMatrix& A) {
  write_text_file(path, write_matrix_text(A));
}

SymmetricMatrix read_matrix_file(const std::string& path) {
  try {
    return read_matrix_text(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(std::string(e.what()) + " (file '" + path + "')");
  }
}

RectMatrix read_rect_file(const std::string& path) {
  try {
    return read_rect_text(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(std::string(e.what()) + " (file '" + path + "')");
  }
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string json_str(const std::string& s) { return "\"" + json_escape(s) + "\""; }

}  // namespace

std::string RunManifest::to_json() const {
  std::string j = "{\n";
  j += "  \"experiment\": " + json_str(experiment) + ",\n";
  j += "  \"version\": " + json_str(version) + ",\n";
  j += "  \"base_seed\": " + json_str(std::to_string(base_seed)) + ",\n";
  j += "  \"threads\": " + std::to_string(threads) + ",\n";
  j += "  \"config\": {\n";
  for (std::size_t t = 0; t < config_echo.size(); ++t)
    j += "    " + json_str(config_echo[t].first) + ": " + json_str(config_echo[t].second) +
         (t + 1 < config_echo.size() ? ",\n" : "\n");
  j += "  },\n";
  j += "  \"counters\": {\n";
  j += "    \"mc_requested\": " + std::to_string(mc_requested) + ",\n";
  j += "    \"mc_dropped\": " + std::to_string(mc_dropped) + ",\n";
  j += "    \"boot_requested\": " + std::to_string(boot_requested) + ",\n";
  j += "    \"boot_dropped\": " + std::to_string(boot_dropped) + "\n";
  j += "  },\n";
  j += "  \"derived_seeds\": {\n";
  for (std::size_t t = 0; t < derived_seeds.size(); ++t)
    j += "    " + json_str(derived_seeds[t].first) + ": " +
         json_str(std::to_string(derived_seeds[t].second)) +
         (t + 1 < derived_seeds.size() ? ",\n" : "\n");
  j += "  },\n";
  j += "  \"wall_seconds\": {\n";
  for (std::size_t t = 0; t < wall_seconds.size(); ++t)
    j += "    " + json_str(wall_seconds[t].first) + ": " + format_double(wall_seconds[t].second) +
         (t + 1 < wall_seconds.size() ? ",\n" : "\n");
  j += "  }\n";
  j += "}\n";
  return j;
}

}  // namespace eigenwise
