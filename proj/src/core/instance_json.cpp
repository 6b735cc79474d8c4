#include <pbsched/core/instance_json.hpp>

#include <fstream>
#include <stdexcept>

namespace pbsched {

nlohmann::json instance_to_json(const Instance& instance) {
    nlohmann::json doc;
    doc["machines"] = instance.machines();
    doc["levels"] = instance.levels();
    auto jobs = nlohmann::json::array();
    for (const auto& job : instance.jobs()) {
        jobs.push_back({{"p", job.p}, {"thresholds", instance.bar(job.id).thresholds()}});
    }
    doc["jobs"] = std::move(jobs);
    if (!instance.clairvoyant()) {
        doc["clairvoyant"] = false;
    }
    return doc;
}

Instance instance_from_json(const nlohmann::json& doc) {
    try {
        const int machines = doc.value("machines", 1);
        const auto levels = doc.at("levels").get<std::vector<double>>();
        std::vector<double> sizes;
        std::vector<StepProgressBar> bars;
        for (const auto& job : doc.at("jobs")) {
            sizes.push_back(job.at("p").get<double>());
            auto thresholds = job.at("thresholds").get<std::vector<double>>();
            if (thresholds.size() != levels.size() + 1) {
                throw std::invalid_argument("thresholds length must be levels length + 1");
            }
            bars.emplace_back(levels, std::move(thresholds));
        }
        Instance instance(std::move(sizes), std::move(bars), machines);
        if (!doc.value("clairvoyant", true)) {
            instance = instance.with_clairvoyance(false);
        }
        return instance;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed instance document: ") + e.what());
    }
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open instance file " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path.string() + ": " + e.what());
    }
    return instance_from_json(doc);
}

void save_instance(const std::filesystem::path& path, const Instance& instance) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write instance file " + path.string());
    }
    out << instance_to_json(instance).dump(2) << '\n';
}

} // namespace pbsched
