#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mibench/harness.hpp"
#include "mibench/sampling.hpp"

namespace mibench {

enum class Units { nats, bits };

std::string_view to_string(Units units);
double to_units(double nats, Units units);

/// Shortest decimal text that round-trips to the same double.
std::string format_real(double value);

/// Parses either a JSON object or key=value lines ('#' starts a comment).
/// Recognized keys: family, rho, nu, mu1, mu2, sigma1, sigma2, transform.
DistributionSpec parse_spec_config(std::string_view text);
std::string spec_to_json(const DistributionSpec& spec);
std::string spec_to_key_value(const DistributionSpec& spec);

/// Column order of the sweep table.
inline constexpr std::string_view kResultCsvHeader =
    "family,transform,estimator,k_or_bins,N,R,mean,q05,q95,analytic,master_seed";

void write_result_csv(std::ostream& out, const ExperimentResult& result, Units units);
void write_result_json(std::ostream& out, const ExperimentResult& result, Units units);

/// (N, mean) pairs from any CSV whose header names an `N` and a `mean`
/// column. Throws std::runtime_error with the offending line on bad input.
std::vector<std::pair<std::size_t, double>> read_n_mean_csv(std::istream& in);

void write_sample_csv(std::ostream& out, const Sample& sample);
Sample read_sample_csv(std::istream& in);

/// Splits one CSV record on commas, honouring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace mibench
