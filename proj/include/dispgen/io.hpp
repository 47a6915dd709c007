#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dispgen/core.hpp"
#include "dispgen/rational.hpp"

namespace dispgen {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class FileFormat { rational, decimal };

struct PointSetFile {
  UnitPointSet points;
  std::string algo;
  std::optional<std::uint64_t> seed;
  FileFormat format = FileFormat::rational;
};

// Format v1, bit-exact:
//   #dispgen v1 d=<d> m=<m> n=<N> algo=<name> seed=<seed|->
// then one point per line, d comma-separated fields. Rational fields are
// <num>/<2^m> with the denominator literal and unreduced; decimal fields are
// the exact m-digit expansions and exist for human inspection only.
inline std::string format_point_set(const UnitPointSet& p, std::string_view algo,
                                    std::optional<std::uint64_t> seed,
                                    FileFormat format = FileFormat::rational) {
  std::ostringstream out;
  out << "#dispgen v1 d=" << p.dim() << " m=" << p.m() << " n=" << p.size() << " algo=" << algo
      << " seed=";
  if (seed)
    out << *seed;
  else
    out << '-';
  out << '\n';
  const BigInt den = BigInt(p.scale());
  const BigInt five_m = ipow(BigInt(5), static_cast<unsigned>(p.m()));
  for (const auto& x : p.numerators()) {
    for (std::size_t a = 0; a < x.size(); ++a) {
      if (a != 0) out << ',';
      if (format == FileFormat::rational) {
        out << x[a] << '/' << den;
      } else {
        std::string digits = (BigInt(x[a]) * five_m).str();
        if (static_cast<int>(digits.size()) < p.m())
          digits.insert(digits.begin(), static_cast<std::size_t>(p.m()) - digits.size(), '0');
        out << "0." << digits;
      }
    }
    out << '\n';
  }
  return out.str();
}

inline PointSetFile parse_point_set(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) throw ParseError("empty file", 1);
  std::istringstream header(line);
  std::string magic, version;
  header >> magic >> version;
  if (magic != "#dispgen" || version != "v1")
    throw ParseError("expected '#dispgen v1' header", lineno);
  int dim = -1, m = -1;
  std::uint64_t count = 0;
  bool have_n = false;
  std::string algo = "-";
  std::optional<std::uint64_t> seed;
  std::string field;
  while (header >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("malformed header field '" + field + "'", lineno);
    const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    try {
      if (key == "d")
        dim = std::stoi(value);
      else if (key == "m")
        m = std::stoi(value);
      else if (key == "n") {
        count = std::stoull(value);
        have_n = true;
      } else if (key == "algo")
        algo = value;
      else if (key == "seed")
        seed = value == "-" ? std::nullopt : std::optional<std::uint64_t>(std::stoull(value));
      else
        throw ParseError("unknown header key '" + key + "'", lineno);
    } catch (const std::invalid_argument&) {
      throw ParseError("bad value for header key '" + key + "'", lineno);
    } catch (const std::out_of_range&) {
      throw ParseError("bad value for header key '" + key + "'", lineno);
    }
  }
  if (dim < 1 || m < 1 || !have_n) throw ParseError("header must define d, m and n", lineno);
  if (m > 30) throw ParseError("grid order out of range", lineno);
  const std::int64_t den = std::int64_t{1} << m;

  std::optional<FileFormat> format;
  std::vector<std::vector<std::int32_t>> pts;
  while (next_line()) {
    if (line.empty()) {
      if (pts.size() == count && in.peek() == EOF) break;
      throw ParseError("unexpected blank line", lineno);
    }
    std::vector<std::int32_t> x;
    std::size_t start = 0;
    for (int a = 0; a < dim; ++a) {
      const std::size_t end = a + 1 == dim ? line.size() : line.find(',', start);
      if (end == std::string::npos) throw ParseError("expected " + std::to_string(dim) + " fields", lineno);
      const std::string_view fieldv = std::string_view(line).substr(start, end - start);
      if (fieldv.empty()) throw ParseError("empty coordinate field", lineno);
      const FileFormat this_format =
          fieldv.find('/') != std::string_view::npos ? FileFormat::rational : FileFormat::decimal;
      if (format && *format != this_format)
        throw ParseError("mixed rational and decimal fields", lineno);
      format = this_format;
      Rational value;
      try {
        value = parse_rational(fieldv);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lineno);
      }
      if (this_format == FileFormat::rational) {
        const auto slash = fieldv.find('/');
        if (std::string(fieldv.substr(slash + 1)) != std::to_string(den))
          throw ParseError("denominator must be the literal 2^m = " + std::to_string(den), lineno);
      }
      const Rational scaled = value * den;
      if (denominator(scaled) != 1)
        throw ParseError("coordinate " + std::string(fieldv) + " is not a multiple of 2^-m", lineno);
      const BigInt num = numerator(scaled);
      if (num < 1 || num > den - 1)
        throw ParseError("grid coordinates must lie strictly inside (0,1)", lineno);
      x.push_back(num.convert_to<std::int32_t>());
      start = end + 1;
    }
    if (pts.size() == count) throw ParseError("more points than the header announced", lineno);
    pts.push_back(std::move(x));
  }
  if (pts.size() != count)
    throw ParseError("header announced " + std::to_string(count) + " points, found " +
                         std::to_string(pts.size()),
                     lineno + 1);
  try {
    UnitPointSet points(m, dim, std::move(pts));
    return PointSetFile{std::move(points), std::move(algo), seed,
                        format.value_or(FileFormat::rational)};
  } catch (const std::exception& e) {
    throw ParseError(e.what(), lineno);
  }
}

inline void write_point_set_file(const std::string& path, const UnitPointSet& p,
                                 std::string_view algo, std::optional<std::uint64_t> seed,
                                 FileFormat format = FileFormat::rational) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << format_point_set(p, algo, seed, format);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline PointSetFile read_point_set_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return parse_point_set(in);
}

}  // namespace dispgen
