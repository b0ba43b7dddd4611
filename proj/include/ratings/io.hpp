#pragma once

#include <string>

namespace ratings {

// Whole-file read; throws IoError when the file cannot be opened.
std::string read_text_file(const std::string& path);

// Writes to a sibling temp file and renames it into place, so readers never
// observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace ratings
