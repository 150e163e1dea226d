#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ballpoly/error.hpp"
#include "ballpoly/geometry.hpp"

namespace ballpoly::cli {

inline constexpr const char* kInstanceVersion = "ballpoly-instance/1";
inline constexpr const char* kReportSchema = "ballpoly-report/1";

enum ExitCode : int { Ok = 0, Parse = 1, Degenerate = 2, Precondition = 3, Negative = 4 };

ExitCode exit_code_for(ErrorKind kind);

struct Instance {
    std::optional<double> radius;
    std::vector<Point3> centers;  // divided by radius: unit balls
    std::vector<std::string> labels;
};

/// Parses and validates an instance document. Throws ParseError.
Instance parse_instance(const std::string& text);
std::string instance_json(const Instance& inst);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a64(const std::string& bytes);

/// Writes to a temporary file next to `path` and renames it into place.
void write_atomic(const std::string& path, const std::string& contents);

/// Runs the command line; all output goes through `out` and `err` unless a
/// command is given an output path.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ballpoly::cli
