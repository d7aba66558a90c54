#include "notaria/io.hpp"

#include <fstream>
#include <iterator>

#include "notaria/error.hpp"

namespace notaria::io {

namespace {

void ensure_parent(const std::filesystem::path& file) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
}

}  // namespace

Bytes read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + file.string());
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& file, ByteView data) {
    ensure_parent(file);
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + file.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

void write_text(const std::filesystem::path& file, std::string_view text) {
    write_file(file, ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void append_file(const std::filesystem::path& file, ByteView data) {
    ensure_parent(file);
    std::ofstream out(file, std::ios::binary | std::ios::app);
    if (!out) throw Error(ErrorCode::Io, "cannot append to " + file.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

}  // namespace notaria::io
