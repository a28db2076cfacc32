#pragma once

#include <filesystem>
#include <iosfwd>

#include "driftreg/sample.hpp"

namespace driftreg {

// CSV stream format: header `t,x_1,...,x_d,y`, one sample per line.
// Values are written in shortest round-trip form so a load reproduces them exactly.
void write_csv_stream(const Stream& stream, std::ostream& out);
void write_csv_stream(const Stream& stream, const std::filesystem::path& path);

// Throws DataError naming the line for malformed rows, wrong field counts and
// non-numeric fields, and for empty input.
Stream read_csv_stream(std::istream& in, const std::string& source = "<stream>");
Stream load_csv_stream(const std::filesystem::path& path);

// Shortest text that parses back to the same double.
std::string format_double(double v);
// Strict parse of a full field; accepts "inf", "-inf" and "nan".
bool parse_double(std::string_view text, double& out) noexcept;

}  // namespace driftreg
