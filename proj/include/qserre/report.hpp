#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qserre {

// Outcome of a verification: a verdict, human-readable findings and machine-readable data.
struct Report {
    std::string name;
    bool passed = true;
    std::vector<std::string> messages;
    nlohmann::json data = nlohmann::json::object();

    explicit Report(std::string n = {}) : name(std::move(n)) {}

    void fail(const std::string& m) {
        passed = false;
        messages.push_back(m);
    }
    void note(const std::string& m) { messages.push_back(m); }
    void require(bool ok, const std::string& m) {
        if (!ok) fail(m);
    }
    void absorb(const Report& sub) {
        if (!sub.passed) passed = false;
        for (const auto& m : sub.messages) messages.push_back(sub.name + ": " + m);
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["name"] = name;
        j["passed"] = passed;
        j["messages"] = messages;
        if (!data.empty()) j["data"] = data;
        return j;
    }
};

// Caps how many failures a long scan records.
constexpr std::size_t kMaxReportedFailures = 8;

}  // namespace qserre
