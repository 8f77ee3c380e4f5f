#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cliffring/harness.hpp"

namespace cliffring {

// Syntax errors carry a position; semantic errors name the violated rule.
struct ConfigError : Error {
    size_t line = 0, column = 0;
    std::string rule;
    ConfigError(const std::string& what, size_t line, size_t column, std::string rule);
};

// key=value pairs, optionally grouped under [block] headers. Values are
// integers, strings ("..." or a bare word) and bracketed lists.
struct Config {
    std::optional<std::string> ring;
    std::vector<int64_t> qdiag;
    std::optional<std::vector<std::vector<int64_t>>> gram;
    nlohmann::json params = nlohmann::json::object();  // every other key

    bool has_module() const { return ring.has_value(); }
    Instance instance() const;
};

Config parse_config(std::string_view text, std::string_view source = "config");

// Full command line: returns the process exit status (0 ok, 1 a must-pass
// check failed, 2 usage or config error, 3 computation error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cliffring
