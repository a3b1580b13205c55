#pragma once

#include <string>
#include <vector>

namespace volconf {

/// One value per line as shortest round-trip decimal text, preceded by a
/// single `# ` header line. Reading skips every `#` line and blank line.
struct SequenceFile {
  std::string header;
  std::vector<double> values;
};

void write_sequence_file(const std::string& path, const SequenceFile& file);
SequenceFile read_sequence_file(const std::string& path);

/// Shortest decimal text that parses back to the identical double.
std::string format_real(double value);

}  // namespace volconf
