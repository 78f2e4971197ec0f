#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace clab::cli {

enum class ExitCode : int { Pass = 0, CheckFailed = 1, Usage = 2 };

enum class Format { Csv, Json };

struct RunConfig {
    std::string subcommand;  // "exppair apply" etc. for nested commands
    std::optional<unsigned long long> p;
    unsigned m = 1;
    std::optional<long long> alpha2;
    std::optional<long long> alpha3;
    std::optional<double> N;
    double epsilon = 0.0;
    std::optional<double> delta;
    std::optional<std::string> gamma;
    std::optional<double> Delta;
    std::optional<std::string> mode;
    unsigned long long budget = 100000;
    std::optional<std::string> output_path;
    std::optional<std::string> format;
    std::optional<unsigned> threads;
    std::optional<unsigned long long> sample;
    unsigned long long seed = 0;
    std::string route = "auto";
    std::string word;
    std::string k = "1/9";
    std::string l = "13/18";
    std::optional<unsigned long long> p_max;
    unsigned long long twisted_p_max = 61;
    unsigned long long q_cap = 10000;
};

/// Parses args (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clab::cli
