#include "cregf/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "cregf/error.hpp"
#include "cregf/format.hpp"

namespace cregf {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(seps, pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(seps, start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view value) {
  std::vector<T> out;
  for (auto tok : split(value, " \t,")) {
    T v{};
    if (!parse_number(tok, v)) fail(ErrorKind::ParseError, "bad value '" + std::string(tok) + "' for " + std::string(key));
    out.push_back(v);
  }
  if (out.empty()) fail(ErrorKind::ParseError, "empty list for " + std::string(key));
  return out;
}

template <class T>
T parse_scalar(std::string_view key, std::string_view value) {
  const auto list = parse_list<T>(key, value);
  if (list.size() != 1) fail(ErrorKind::ParseError, std::string(key) + " takes a single value");
  return list.front();
}

}  // namespace

std::vector<double> parse_data(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const bool first_content = !seen_content;
    seen_content = true;

    if (text.find(',') != std::string_view::npos) {
      std::size_t fields = 0;
      for (auto f : split(text, ",")) fields += trim(f).empty() ? 0 : 1;
      if (fields > 1) fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": more than one CSV column");
    }
    const auto tokens = split(text, " \t,");
    std::vector<double> parsed;
    bool ok = true;
    for (auto tok : tokens) {
      double v = 0.0;
      if (!parse_number(tok, v)) {
        ok = false;
        break;
      }
      parsed.push_back(v);
    }
    if (!ok) {
      if (first_content && tokens.size() == 1) continue;  // CSV header
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": not a number: '" + std::string(text) + "'");
    }
    values.insert(values.end(), parsed.begin(), parsed.end());
  }
  if (values.empty()) fail(ErrorKind::EmptyInput, "no observations found");
  return values;
}

std::vector<double> read_data_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open data file '" + path.string() + "'");
  return parse_data(in);
}

void write_data(std::ostream& out, std::span<const double> values) {
  for (double v : values) out << shortest(v) << '\n';
}

SimSpec parse_sim_config(std::istream& in) {
  SimSpec spec;
  spec.alpha_list = {0.01, 0.05};
  bool have_kind = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(std::string_view(line).substr(0, line.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::ParseError, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));
    if (key == "kind") {
      if (value == "size_power") {
        spec.kind = SimKind::SizePower;
      } else if (value == "bias_mse") {
        spec.kind = SimKind::BiasMse;
      } else {
        fail(ErrorKind::ParseError, "kind must be size_power or bias_mse, got '" + std::string(value) + "'");
      }
      have_kind = true;
    } else if (key == "models" || key == "model") {
      for (auto tok : split(value, " \t")) spec.models.emplace_back(tok);
    } else if (key == "n") {
      spec.n_list = parse_list<std::size_t>(key, value);
    } else if (key == "s") {
      spec.s_list = parse_list<int>(key, value);
    } else if (key == "alpha") {
      spec.alpha_list = parse_list<double>(key, value);
    } else if (key == "reps") {
      spec.reps = parse_scalar<std::size_t>(key, value);
    } else if (key == "seed") {
      spec.master_seed = parse_scalar<std::uint64_t>(key, value);
    } else if (key == "workers") {
      spec.workers = parse_scalar<std::size_t>(key, value);
    } else {
      fail(ErrorKind::ParseError, "unknown config key '" + std::string(key) + "'");
    }
  }
  if (!have_kind) fail(ErrorKind::ParseError, "config is missing 'kind'");
  if (spec.models.empty()) fail(ErrorKind::ParseError, "config is missing 'models'");
  if (spec.n_list.empty()) fail(ErrorKind::ParseError, "config is missing 'n'");
  if (spec.s_list.empty()) fail(ErrorKind::ParseError, "config is missing 's'");
  return spec;
}

SimSpec load_sim_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open config file '" + path.string() + "'");
  return parse_sim_config(in);
}

}  // namespace cregf
