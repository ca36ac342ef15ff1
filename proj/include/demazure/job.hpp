#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "demazure/error.hpp"
#include "demazure/serialize.hpp"
#include "demazure/verify.hpp"

namespace demazure {

// Everything a CLI invocation depends on. Thread count is deliberately absent:
// results do not depend on it.
struct JobConfig {
    Json datum = Json{{"type", "A2"}, {"lattice", "sc"}};
    std::string ring = "Z";
    Json fgl = "additive";
    int prec = 6;                       // output precision
    std::optional<int> slack;           // extra working degrees; default l(w0) + 2
    std::map<std::string, std::string> words;  // canonical word -> replacement reduced word
    uint64_t seed = 1;

    // Keys absent from j keep their current values.
    void merge_json(const Json& j);
    Json to_json() const;
};

// The algebra stack for one configuration.
struct Job {
    JobConfig config;
    int working_prec = 0;
    ContextPtr ctx;
    std::shared_ptr<const TwistedAlgebra> qw;
    std::shared_ptr<const DemazureAlgebra> df;

    // min_prec raises the working precision for commands that need it.
    static Job build(const JobConfig& cfg, int min_prec = 0);
};

// Grammar: sums and products of integers, x(c_1,...,c_n) in lattice
// coordinates, X[word] with 1-based letters, and parentheses. Errors carry
// the 1-based column.
QWElem parse_expr(const std::string& text, const TwistedAlgebra& T);

struct CommandOutput {
    Json doc;
    int exit_code = 0;
};

// Runs args[0] with the remaining arguments. Throws Error for configuration,
// hypothesis and precision failures.
CommandOutput run_command(const JobConfig& cfg, const std::vector<std::string>& args);

// {"error": {...}} for an Error, with its exit code.
CommandOutput error_output(const Error& e, const std::vector<std::string>& args);
int exit_code_for(const Error& e);

// Plain-text summary of a command document.
std::string human_summary(const Json& doc);

}  // namespace demazure
