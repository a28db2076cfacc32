#include "driftreg/stream_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "driftreg/datagen.hpp"
#include "driftreg/error.hpp"

namespace driftreg {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

std::string_view chomp(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

bool parse_double(std::string_view text, double& out) noexcept {
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

void write_csv_stream(const Stream& stream, std::ostream& out) {
  const std::size_t d = stream.dim();
  out << "t";
  for (std::size_t j = 1; j <= d; ++j) out << ",x_" << j;
  out << ",y\n";
  for (std::size_t t = 0; t < stream.size(); ++t) {
    const Sample& s = stream.samples[t];
    if (s.x.size() != d) throw DimensionMismatch("write_csv_stream", d, s.x.size());
    out << (t + 1);
    for (std::size_t j = 0; j < d; ++j) out << ',' << format_double(s.x[j]);
    out << ',' << format_double(s.y) << '\n';
  }
}

void write_csv_stream(const Stream& stream, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  write_csv_stream(stream, out);
  if (!out) throw DataError("write failed: " + path.string());
}

Stream read_csv_stream(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source + ": empty file");
  const auto header = split(chomp(line));
  if (header.size() < 3 || header.front() != "t" || header.back() != "y")
    throw DataError(source + ":1: header must be t,x_1,...,x_d,y");
  const std::size_t d = header.size() - 2;
  for (std::size_t j = 1; j <= d; ++j) {
    if (header[j] != "x_" + std::to_string(j))
      throw DataError(source + ":1: expected column x_" + std::to_string(j) + ", got '" + std::string(header[j]) + "'");
  }

  Stream stream;
  stream.meta.generator = "csv";
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = chomp(line);
    if (row.empty()) continue;
    const auto fields = split(row);
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (fields.size() != d + 2)
      throw DataError(where + "expected " + std::to_string(d + 2) + " fields, got " + std::to_string(fields.size()));
    Sample s{Vector(d), 0.0};
    double tmp = 0.0;
    if (!parse_double(fields[0], tmp)) throw DataError(where + "non-numeric t field");
    for (std::size_t j = 0; j < d; ++j) {
      if (!parse_double(fields[j + 1], s.x[j]))
        throw DataError(where + "non-numeric field '" + std::string(fields[j + 1]) + "'");
    }
    if (!parse_double(fields[d + 1], s.y)) throw DataError(where + "non-numeric label '" + std::string(fields[d + 1]) + "'");
    stream.samples.push_back(std::move(s));
  }
  if (stream.empty()) throw DataError(source + ": no samples");
  record_bounds(stream);
  return stream;
}

Stream load_csv_stream(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_csv_stream(in, path.string());
}

}  // namespace driftreg
