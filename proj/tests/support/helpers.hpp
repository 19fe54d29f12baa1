#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ll1/cli.hpp"

namespace ll1::testing {

/// Absolute path of a file under the repository's data/ directory.
inline std::string data_path(std::string_view relative) {
    return std::string(LL1_TEST_DATA_DIR) + "/" + std::string(relative);
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw std::runtime_error("test fixture unreadable: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

/// Runs the CLI in-process with captured streams; args exclude argv[0].
inline CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("ll1kit");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(storage.size());
    for (const std::string& s : storage) argv.push_back(s.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace ll1::testing
