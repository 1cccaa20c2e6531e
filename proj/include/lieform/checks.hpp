#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lieform {

using json = nlohmann::json;

struct CheckDescriptor {
    std::string check;
    std::string ring;
    std::string algebra;
    std::string mode;  // "full", "sampled" or empty for automatic
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 2025;
    std::uint64_t budget = 5'000'000;
    unsigned threads = 1;
    json params = json::object();
};

CheckDescriptor descriptor_from_json(const json& j);
json descriptor_to_json(const CheckDescriptor& d);
std::vector<CheckDescriptor> parse_manifest(std::string_view text);
// Named manifests compiled into the binary; empty when unknown.
std::string bundled_manifest(std::string_view name);

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2, kSize = 3, kPrecondition = 4 };

struct CheckOutcome {
    json report;
    int exit_code = kPass;
};

std::vector<std::string> check_ids();
std::string check_summary(const std::string& id);
CheckOutcome run_check(const CheckDescriptor& d);
// Reports follow manifest order whatever the completion order.
CheckOutcome run_suite(const std::vector<CheckDescriptor>& checks, unsigned workers = 1);

// Report without timing fields, for comparisons.
json strip_timing(json report);

}  // namespace lieform
