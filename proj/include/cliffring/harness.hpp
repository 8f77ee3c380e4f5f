#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cliffring/quadratic_module.hpp"

namespace cliffring {

// Ring descriptor plus a module given by its diagonal and optional Gram matrix.
struct Instance {
    std::string ring;
    std::vector<int64_t> qdiag;
    std::optional<std::vector<std::vector<int64_t>>> gram;

    QuadraticModule build() const;
    std::string label() const;
    nlohmann::json to_json() const;
    static Instance from_json(const nlohmann::json& j);
};

struct CheckSpec {
    std::string id;
    Instance instance;
    uint64_t budget = 10'000'000;
    uint64_t seed = 1;
};

enum class Verdict { Pass, Fail, Skipped, Report };
std::string to_string(Verdict v);

struct CheckReport {
    std::string id;
    Instance instance;
    bool must_pass = true;
    Verdict verdict = Verdict::Pass;
    std::string reason;
    std::vector<std::pair<std::string, bool>> checks;
    nlohmann::json witness = nlohmann::json::object();
    double wall_ms = 0;

    // Without the time field the serialization is a pure function of the spec.
    nlohmann::json to_json(bool with_time = true) const;
};

// The fixed registry, in suite order.
const std::vector<std::string>& registry();
bool in_registry(const std::string& id);
bool is_report_only(const std::string& id);

// Throws Error on an unknown id; errors raised while building the instance
// propagate.
CheckReport run_check(const CheckSpec& spec);

// Built-in instances for one id (never empty for a registry id).
std::vector<Instance> default_instances(const std::string& id);
std::vector<CheckSpec> default_battery(uint64_t budget = 10'000'000, uint64_t seed = 1);

// Runs `specs`, followed by the default battery when requested; reports in
// registry order, stable within an id.
std::vector<CheckReport> run_suite(const std::vector<CheckSpec>& specs, bool default_instances_on,
                                   uint64_t budget = 10'000'000, uint64_t seed = 1);
// True iff no must-pass check failed.
bool suite_passed(const std::vector<CheckReport>& reports);

nlohmann::json to_json(const std::vector<CheckReport>& reports, bool with_time = true);
std::string to_table(const std::vector<CheckReport>& reports);

}  // namespace cliffring
