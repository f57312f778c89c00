#pragma once

#include <cctype>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fghopf
{

enum class verdict { pass, fail, error };

inline const char *to_string(verdict v)
{
    switch (v) {
    case verdict::pass:
        return "pass";
    case verdict::fail:
        return "fail";
    case verdict::error:
        return "error";
    }
    return "error";
}

struct failure {
    std::string location;
    std::string residual;

    friend bool operator==(const failure &, const failure &) = default;
};

/// Outcome of one named check. The verdict is fail exactly when failures is
/// nonempty, unless an error was recorded.
struct verification_report {
    std::string subject;
    std::string check;
    std::optional<int> cutoff;
    std::vector<failure> failures;
    std::optional<std::string> error_message;
    // Text-only remarks (advisories, scope notes); not part of the machine format.
    std::vector<std::string> notes;
    double timing_ms = 0.0;

    [[nodiscard]] verdict result() const
    {
        if (error_message) {
            return verdict::error;
        }
        return failures.empty() ? verdict::pass : verdict::fail;
    }

    [[nodiscard]] bool passed() const { return result() == verdict::pass; }

    void fail(std::string location, std::string residual)
    {
        failures.push_back({std::move(location), std::move(residual)});
    }
};

/// Measures wall time into a report on destruction.
class report_timer
{
public:
    explicit report_timer(verification_report &r) : r_(r), start_(std::chrono::steady_clock::now()) {}
    report_timer(const report_timer &) = delete;
    report_timer &operator=(const report_timer &) = delete;
    ~report_timer()
    {
        const auto d = std::chrono::steady_clock::now() - start_;
        r_.timing_ms = std::chrono::duration<double, std::milli>(d).count();
    }

private:
    verification_report &r_;
    std::chrono::steady_clock::time_point start_;
};

/// Machine format: one JSON object, keys in fixed order.
inline nlohmann::ordered_json to_json(const verification_report &r)
{
    nlohmann::ordered_json j;
    j["subject"] = r.subject;
    j["check"] = r.check;
    j["verdict"] = to_string(r.result());
    if (r.cutoff) {
        j["cutoff"] = *r.cutoff;
    } else {
        j["cutoff"] = nullptr;
    }
    auto fs = nlohmann::ordered_json::array();
    for (const auto &f : r.failures) {
        nlohmann::ordered_json e;
        e["location"] = f.location;
        e["residual"] = f.residual;
        fs.push_back(std::move(e));
    }
    if (r.error_message) {
        nlohmann::ordered_json e;
        e["location"] = "error";
        e["residual"] = *r.error_message;
        fs.push_back(std::move(e));
    }
    j["failures"] = std::move(fs);
    j["timing_ms"] = static_cast<long long>(r.timing_ms + 0.5);
    return j;
}

inline std::string emit_machine(const verification_report &r) { return to_json(r).dump(); }

inline std::string emit_text(const verification_report &r, bool color = false)
{
    std::string v = to_string(r.result());
    for (auto &ch : v) {
        ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
    if (color) {
        const char *code = r.passed() ? "\x1b[32m" : "\x1b[31m";
        v = code + v + "\x1b[0m";
    }
    std::string s = r.subject + " " + r.check + ": " + v;
    if (r.cutoff) {
        s += " (cutoff " + std::to_string(*r.cutoff) + ")";
    }
    s += "\n";
    if (r.error_message) {
        s += "  error: " + *r.error_message + "\n";
    }
    for (const auto &f : r.failures) {
        s += "  at " + f.location + ": " + f.residual + "\n";
    }
    for (const auto &n : r.notes) {
        s += "  note: " + n + "\n";
    }
    return s;
}

} // namespace fghopf
