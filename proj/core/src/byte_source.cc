#include "acctlens/byte_source.h"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <string>

#include "acctlens/errors.h"

namespace acctlens {

FileByteSource::FileByteSource(const std::filesystem::path& path)
    : path_(path), file_(std::fopen(path.c_str(), "rb")) {
  if (!file_) {
    throw IoError("cannot open " + path.string() + ": " +
                  std::strerror(errno));
  }
  std::error_code ec;
  size_ = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat " + path.string() + ": " + ec.message());
}

std::size_t FileByteSource::Read(std::span<std::uint8_t> out) {
  const std::size_t n = std::fread(out.data(), 1, out.size(), file_.get());
  if (n < out.size() && std::ferror(file_.get())) {
    throw IoError("read error on " + path_.string());
  }
  return n;
}

void FileByteSource::Rewind() {
  if (std::fseek(file_.get(), 0, SEEK_SET) != 0) {
    throw IoError("cannot rewind " + path_.string());
  }
}

std::size_t MemoryByteSource::Read(std::span<std::uint8_t> out) {
  const std::size_t n = std::min(out.size(), data_.size() - pos_);
  std::copy_n(data_.data() + pos_, n, out.data());
  pos_ += n;
  return n;
}

}  // namespace acctlens
