#pragma once

#include "heb/verify.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace heb {

enum class Command { Analyze, Certify, Exponent, Verify, Slope, Quadratic };
enum class OutputFormat { Text, Json };

Command parse_command(std::string_view name);

struct RunConfig {
    Command command = Command::Analyze;
    std::string input_path;
    std::uint64_t seed = 42;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> multistarts;
    std::optional<double> tau_zero;
    std::vector<double> tau_axis;
    std::vector<Interval> box;
    std::vector<double> rings;
    std::vector<double> point;
    OutputFormat format = OutputFormat::Text;
    std::optional<std::string> out_path;
    unsigned workers = 1;
};

/// "lo:hi,lo:hi"
std::vector<Interval> parse_box(std::string_view text);
/// "a,b,c"
std::vector<double> parse_list(std::string_view text);

/// Exit status: 0 success, 1 degenerate or violating findings, 2 usage or input errors.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace heb
