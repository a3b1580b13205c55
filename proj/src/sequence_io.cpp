#include "volconf/sequence_io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "volconf/error.hpp"

namespace volconf {

std::string format_real(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_sequence_file(const std::string& path, const SequenceFile& file) {
  if (file.header.find('\n') != std::string::npos) {
    fail(ErrorCode::InvalidArgument, "sequence header must be a single line");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << "# " << file.header << '\n';
  for (double v : file.values) out << format_real(v) << '\n';
  out.flush();
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

SequenceFile read_sequence_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "' for reading");
  SequenceFile file;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (!have_header) {
        std::string text = line.substr(first + 1);
        if (!text.empty() && text.front() == ' ') text.erase(0, 1);
        file.header = text;
        have_header = true;
      }
      continue;
    }
    const char* begin = line.c_str() + first;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    while (end != nullptr && (*end == ' ' || *end == '\t')) ++end;
    if (end == begin || (end != nullptr && *end != '\0') || errno == ERANGE || !std::isfinite(v)) {
      fail(ErrorCode::InvalidArgument, path + ":" + std::to_string(lineno) + ": not a finite real: '" + line + "'");
    }
    file.values.push_back(v);
  }
  if (in.bad()) fail(ErrorCode::Io, "read from '" + path + "' failed");
  return file;
}

}  // namespace volconf
