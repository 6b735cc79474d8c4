#include <pbsched/experiments/trial_record.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace pbsched::experiments {

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
    os << kCsvHeader << '\n';
    for (const auto& r : records) {
        os << r.figure << ',' << r.algorithm << ',' << r.params << ',' << format_number(r.x) << ',' << r.trial
           << ',' << r.seed << ',' << format_number(r.alg_cost) << ',' << format_number(r.opt_cost) << ','
           << format_number(r.ratio) << ',' << format_number(r.timing_err) << ','
           << format_number(r.inversion_err) << ',' << format_number(r.l1_err) << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " +
                                     ec.message());
        }
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    write_csv(out, records);
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

void write_metadata(const std::filesystem::path& path, const std::vector<TrialRecord>& records) {
    const bool any = std::any_of(records.begin(), records.end(), [](const auto& r) { return !r.metadata.empty(); });
    if (!any) {
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    for (const auto& r : records) {
        if (!r.metadata.empty()) {
            out << "{\"figure\":\"" << r.figure << "\",\"algorithm\":\"" << r.algorithm << "\",\"x\":"
                << format_number(r.x) << ",\"trial\":" << r.trial << ",\"seed\":" << r.seed
                << ",\"metadata\":" << r.metadata << "}\n";
        }
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

namespace {

double parse_double(const std::string& s) {
    if (s == "nan") {
        return kNotApplicable;
    }
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) {
        throw std::runtime_error("malformed number '" + s + "'");
    }
    return v;
}

} // namespace

std::vector<TrialRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) {
        throw std::runtime_error("unexpected CSV header");
    }
    std::vector<TrialRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(cell);
        }
        if (f.size() != 12) {
            throw std::runtime_error("expected 12 fields, got " + std::to_string(f.size()));
        }
        try {
            TrialRecord r;
            r.figure = f[0];
            r.algorithm = f[1];
            r.params = f[2];
            r.x = parse_double(f[3]);
            r.trial = std::stoull(f[4]);
            r.seed = std::stoull(f[5]);
            r.alg_cost = parse_double(f[6]);
            r.opt_cost = parse_double(f[7]);
            r.ratio = parse_double(f[8]);
            r.timing_err = parse_double(f[9]);
            r.inversion_err = parse_double(f[10]);
            r.l1_err = parse_double(f[11]);
            records.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw std::runtime_error("malformed CSV row: " + line);
        }
    }
    return records;
}

std::vector<Summary> aggregate(const std::vector<TrialRecord>& records) {
    using Key = std::tuple<std::string, std::string, double>;
    std::map<Key, std::size_t> index;
    std::vector<Summary> out;
    std::vector<double> sum_sq;
    for (const auto& r : records) {
        const Key key{r.algorithm, r.params, r.x};
        auto [it, inserted] = index.emplace(key, out.size());
        if (inserted) {
            out.push_back({r.algorithm, r.params, r.x, 0, 0.0, 0.0});
            sum_sq.push_back(0.0);
        }
        // Welford update.
        Summary& s = out[it->second];
        ++s.count;
        const double delta = r.ratio - s.mean;
        s.mean += delta / static_cast<double>(s.count);
        sum_sq[it->second] += delta * (r.ratio - s.mean);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].stddev = out[i].count > 1 ? std::sqrt(sum_sq[i] / static_cast<double>(out[i].count - 1)) : 0.0;
    }
    return out;
}

} // namespace pbsched::experiments
