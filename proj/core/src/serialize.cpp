#include "mibench/serialize.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mibench {

using nlohmann::ordered_json;

std::string_view to_string(Units units) { return units == Units::nats ? "nats" : "bits"; }

double to_units(double nats, Units units) {
  return units == Units::nats ? nats : nats / std::numbers::ln2;
}

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf, ptr);
}

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, const std::string& what) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument(what + ": not a number '" + std::string(text) + "'");
  }
  return value;
}

void set_spec_field(DistributionSpec& spec, std::string_view key, std::string_view value) {
  const std::string k(key);
  if (key == "family" || key == "dist") {
    const auto family = parse_family(value);
    if (!family) throw std::invalid_argument("unknown family '" + std::string(value) + "'");
    spec.family = *family;
  } else if (key == "transform") {
    const auto transform = parse_transform(value);
    if (!transform) throw std::invalid_argument("unknown transform '" + std::string(value) + "'");
    spec.transform = *transform;
  } else if (key == "rho") {
    spec.rho = parse_real(value, k);
  } else if (key == "nu") {
    spec.nu = parse_real(value, k);
  } else if (key == "mu1") {
    spec.mu[0] = parse_real(value, k);
  } else if (key == "mu2") {
    spec.mu[1] = parse_real(value, k);
  } else if (key == "sigma1") {
    spec.sigma[0] = parse_real(value, k);
  } else if (key == "sigma2") {
    spec.sigma[1] = parse_real(value, k);
  } else {
    throw std::invalid_argument("unknown distribution key '" + k + "'");
  }
}

}  // namespace

DistributionSpec parse_spec_config(std::string_view text) {
  DistributionSpec spec;
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') {
    const auto json = nlohmann::json::parse(body);
    for (const auto& [key, value] : json.items()) {
      set_spec_field(spec, key, value.is_string() ? value.get<std::string>() : value.dump());
    }
  } else {
    std::istringstream in{std::string(body)};
    std::string line;
    while (std::getline(in, line)) {
      auto content = trim(std::string_view(line).substr(0, line.find('#')));
      if (content.empty()) continue;
      const auto eq = content.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("expected key=value, got '" + std::string(content) + "'");
      }
      set_spec_field(spec, trim(content.substr(0, eq)), trim(content.substr(eq + 1)));
    }
  }
  spec.validate();
  return spec;
}

namespace {

ordered_json spec_json(const DistributionSpec& spec) {
  ordered_json j;
  j["family"] = to_string(spec.family);
  j["rho"] = spec.rho;
  if (spec.family == Family::student_t) j["nu"] = spec.nu;
  j["mu1"] = spec.mu[0];
  j["mu2"] = spec.mu[1];
  j["sigma1"] = spec.sigma[0];
  j["sigma2"] = spec.sigma[1];
  j["transform"] = to_string(spec.transform);
  return j;
}

}  // namespace

std::string spec_to_json(const DistributionSpec& spec) { return spec_json(spec).dump(); }

std::string spec_to_key_value(const DistributionSpec& spec) {
  std::ostringstream out;
  out << "family=" << to_string(spec.family) << '\n'
      << "rho=" << format_real(spec.rho) << '\n';
  if (spec.family == Family::student_t) out << "nu=" << format_real(spec.nu) << '\n';
  out << "mu1=" << format_real(spec.mu[0]) << '\n'
      << "mu2=" << format_real(spec.mu[1]) << '\n'
      << "sigma1=" << format_real(spec.sigma[0]) << '\n'
      << "sigma2=" << format_real(spec.sigma[1]) << '\n'
      << "transform=" << to_string(spec.transform) << '\n';
  return out.str();
}

void write_result_csv(std::ostream& out, const ExperimentResult& result, Units units) {
  const auto& cfg = result.config;
  out << kResultCsvHeader << '\n';
  for (const auto& cell : result.cells) {
    out << to_string(cfg.spec.family) << ',' << to_string(cfg.spec.transform) << ','
        << to_string(cfg.estimator.kind) << ',' << cfg.estimator.k_or_bins(cell.n) << ','
        << cell.n << ',' << cell.estimates.size() << ',' << format_real(to_units(cell.mean, units))
        << ',' << format_real(to_units(cell.q_lo, units)) << ','
        << format_real(to_units(cell.q_hi, units)) << ','
        << format_real(to_units(cell.analytic, units)) << ',' << cfg.master_seed << '\n';
  }
}

void write_result_json(std::ostream& out, const ExperimentResult& result, Units units) {
  const auto& cfg = result.config;
  ordered_json j;
  j["units"] = to_string(units);
  j["spec"] = spec_json(cfg.spec);
  j["estimator"] = {{"kind", to_string(cfg.estimator.kind)},
                    {"k", cfg.estimator.k},
                    {"bins", cfg.estimator.bins},
                    {"miller_madow", cfg.estimator.miller_madow},
                    {"duplicates", to_string(cfg.estimator.duplicates)}};
  j["master_seed"] = cfg.master_seed;
  j["quantiles"] = {cfg.quantiles.first, cfg.quantiles.second};
  j["cells"] = ordered_json::array();
  for (const auto& cell : result.cells) {
    ordered_json c;
    c["N"] = cell.n;
    c["R"] = cell.estimates.size();
    c["k_or_bins"] = cfg.estimator.k_or_bins(cell.n);
    c["mean"] = to_units(cell.mean, units);
    c["q_lo"] = to_units(cell.q_lo, units);
    c["q_hi"] = to_units(cell.q_hi, units);
    c["analytic"] = to_units(cell.analytic, units);
    auto& estimates = c["estimates"] = ordered_json::array();
    for (const double e : cell.estimates) estimates.push_back(to_units(e, units));
    j["cells"].push_back(std::move(c));
  }
  out << j.dump(2) << '\n';
}

std::vector<std::pair<std::size_t, double>> read_n_mean_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n_col = 0, mean_col = 0, width = 0;
  bool have_header = false;
  std::vector<std::pair<std::size_t, double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (!have_header) {
      bool found_n = false, found_mean = false;
      for (std::size_t c = 0; c < fields.size(); ++c) {
        const auto name = trim(fields[c]);
        if (name == "N") { n_col = c; found_n = true; }
        if (name == "mean") { mean_col = c; found_mean = true; }
      }
      if (!found_n || !found_mean) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": header must name 'N' and 'mean' columns");
      }
      width = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != width) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(width) + " fields");
    }
    try {
      const double n = parse_real(fields[n_col], "N");
      if (!(n >= 1.0) || n != std::floor(n)) throw std::invalid_argument("N must be a positive integer");
      rows.emplace_back(static_cast<std::size_t>(n), parse_real(fields[mean_col], "mean"));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw std::runtime_error("empty result file");
  return rows;
}

void write_sample_csv(std::ostream& out, const Sample& sample) {
  out << "x,y\n";
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out << format_real(sample.x[i]) << ',' << format_real(sample.y[i]) << '\n';
  }
}

Sample read_sample_csv(std::istream& in) {
  Sample sample;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (!have_header) {
      if (fields.size() != 2 || trim(fields[0]) != "x" || trim(fields[1]) != "y") {
        throw std::runtime_error("line " + std::to_string(line_no) + ": expected header 'x,y'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != 2) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 2 fields");
    }
    try {
      sample.x.push_back(parse_real(fields[0], "x"));
      sample.y.push_back(parse_real(fields[1], "y"));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw std::runtime_error("empty sample file");
  sample.provenance = "file";
  return sample;
}

}  // namespace mibench
