#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace pbsched::experiments {

inline constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

/// One (algorithm, parameters, instance) run.
struct TrialRecord {
    std::string figure;
    std::string algorithm;
    std::string params;  ///< "key=value;..." including the rng identifier
    double x = 0.0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double alg_cost = 0.0;
    double opt_cost = 0.0;
    double ratio = 0.0;
    double timing_err = kNotApplicable;
    double inversion_err = kNotApplicable;
    double l1_err = kNotApplicable;
    /// Optional JSON audit trail (combining runs); not part of the CSV.
    std::string metadata;
};

inline constexpr const char* kCsvHeader =
    "figure,algorithm,params,x,trial,seed,alg_cost,opt_cost,ratio,timing_err,inversion_err,l1_err";

/// "%.10g", with "nan" for missing values.
std::string format_number(double x);

void write_csv(std::ostream& os, const std::vector<TrialRecord>& records);
/// Creates parent directories; throws std::runtime_error naming the path on
/// I/O failure.
void write_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records);

/// One JSON object per line for every record that carries metadata, keyed
/// by algorithm, x, trial and seed. Writes nothing if no record has any.
void write_metadata(const std::filesystem::path& path, const std::vector<TrialRecord>& records);

/// Parses a file written by write_csv; throws std::runtime_error on a header
/// or field mismatch.
std::vector<TrialRecord> read_csv(std::istream& is);

struct Summary {
    std::string algorithm;
    std::string params;
    double x = 0.0;
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;  ///< sample standard deviation (0 for one trial)
};

/// Ratio mean and sample standard deviation per (algorithm, params, x), in
/// order of first appearance.
std::vector<Summary> aggregate(const std::vector<TrialRecord>& records);

} // namespace pbsched::experiments
