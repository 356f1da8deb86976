#pragma once

/// @file tsplib.hpp
/// @brief Reader and writer for TSPLIB EXPLICIT / FULL_MATRIX files (ATSP or TSP).

#include <filesystem>
#include <iosfwd>
#include <string>

#include "orsched/instance.hpp"

namespace orsched {

/// Parses a TSPLIB stream. Header keys accept "KEY: value", "KEY : value" and
/// "KEY value"; the weight section may split its k*k tokens across lines freely.
/// Throws ParseError naming the field and line on any malformed input.
Instance parse_tsplib(std::istream& in);

Instance parse_tsplib_string(const std::string& text);

Instance load_tsplib(const std::filesystem::path& path);

/// Writes FULL_MATRIX text that parse_tsplib reads back to the same matrix,
/// diagonal included.
void write_tsplib(const Instance& inst, std::ostream& out);

std::string to_tsplib_string(const Instance& inst);

} // namespace orsched
