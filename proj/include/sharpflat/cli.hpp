#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sharpflat::cli {

struct JobConfig {
    std::string subcommand;
    long p = 0;
    long ap = 0;
    long eps = 1;
    std::size_t deg = 30;
    std::optional<std::size_t> degy;
    long prec = 60;
    std::vector<long> levels{1, 2};
    std::uint64_t seed = 1;
    std::string in;
    std::string out;
    /// logmatrix: level n of M_p^(n); defaults to the least n with p^n >= deg.
    std::optional<long> level;
    /// pollack: number m of companion pairs.
    long pairs = 1;
    /// growth / eval: order u and offset c of the growth hypothesis.
    double u = 0.0;
    double v = 0.0;
    double c = 0.0;
    /// eval: variable fixed by partial application of a two-variable series.
    std::string axis = "X";
    /// growth: scan a built-in series instead of reading input ("log1p").
    std::string builtin;
};

extern const std::vector<std::string> kSubcommands;

/// Parses argv; on failure writes a message to err and returns the exit status.
struct ParseResult {
    std::optional<JobConfig> config;
    int status = 0;
};
ParseResult parse_arguments(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs a validated configuration. Input is read from config.in or `in`, output written to config.out or `out`.
int run(const JobConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// parse_arguments followed by run.
int main_entry(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace sharpflat::cli
