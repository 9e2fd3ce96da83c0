#ifndef CRACKPERT_SCENARIO_IO_HPP
#define CRACKPERT_SCENARIO_IO_HPP

#include "crackpert/sweep.hpp"

#include <iosfwd>
#include <string>

namespace crackpert {

/// Reads a scenario file (INI: sections [material], [load], [upper_bump],
/// [lower_bump], [interface_bump], [sweep]; see docs/scenario_format.md).
///
/// Syntax problems, unknown sections or keys and malformed numbers are collected
/// and thrown together as one ValidationError. Domain checks are left to
/// SweepSpec::violations().
SweepSpec read_scenario(std::istream& in, const std::string& origin = "<input>");
SweepSpec read_scenario_file(const std::string& path);

/// Writes `spec` in the same format; read_scenario(write_scenario(s)) == s.
void write_scenario(const SweepSpec& spec, std::ostream& out);

}  // namespace crackpert

#endif
