#pragma once

#include <iosfwd>
#include <string>

#include "caseval/probe/types.hpp"

namespace caseval::probe {

/// Flat text format: one sample per line, space-separated decimals followed
/// by trailing |label|category fields, e.g.
///   0.25 -1.5 0.75 |scheming|code_backdoor
/// Blank lines and lines starting with '#' are skipped.
Dataset read_dataset(std::istream& in);
Dataset read_dataset_file(const std::string& path);

void write_dataset(std::ostream& out, const Dataset& data);
void write_dataset_file(const std::string& path, const Dataset& data);

}  // namespace caseval::probe
