#pragma once

#include <filesystem>

#include "notaria/bytes.hpp"

namespace notaria::io {

/// Throws Error(Io) when the file cannot be read.
Bytes read_file(const std::filesystem::path& file);
void write_file(const std::filesystem::path& file, ByteView data);
void write_text(const std::filesystem::path& file, std::string_view text);
void append_file(const std::filesystem::path& file, ByteView data);

}  // namespace notaria::io
