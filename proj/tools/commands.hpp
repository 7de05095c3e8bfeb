#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "elastoplasmon/errors.hpp"
#include "elastoplasmon/io.hpp"

namespace epl::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kVerificationFailure = 2, kSingular = 3 };

class ConfigError : public Error {
    using Error::Error;
};

struct Options {
    std::string command;
    std::string config_path;  // empty: defaults only
    std::string out_dir = ".";
    int threads = -1;          // -1: keep the config value
    long long seed = -1;       // -1: keep the config value
    std::vector<std::string> checks;  // verify: overrides verify.checks when non-empty
};

Json default_config();
// Defaults merged with the user document; unknown keys are rejected.
Json resolve_config(const Json& user);
Json load_config(const std::string& path);

int run(const Options& opt, std::ostream& log);
int main_entry(int argc, char** argv);

}  // namespace epl::cli
