#pragma once

#include <filesystem>
#include <string>

namespace trustq {

// Whole-file read; throws IoError when the file cannot be opened or read.
std::string read_text_file(const std::filesystem::path& path);

// Replaces `path` with `contents` via a sibling temporary and rename.
void write_text_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace trustq
