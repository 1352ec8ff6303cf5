#ifndef ACCTLENS_BYTE_SOURCE_H_
#define ACCTLENS_BYTE_SOURCE_H_

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <span>

namespace acctlens {

// Sequential, forward-only reader over a log. Rewind() exists for format
// probing; record streams never call it.
class ByteSource {
 public:
  virtual ~ByteSource() = default;

  // Reads up to out.size() bytes from the current position. Returns the
  // number of bytes read; 0 means end of data. Throws IoError.
  virtual std::size_t Read(std::span<std::uint8_t> out) = 0;

  // Total length in bytes.
  virtual std::uint64_t Size() const = 0;

  virtual void Rewind() = 0;
};

class FileByteSource final : public ByteSource {
 public:
  // Throws IoError when the file cannot be opened.
  explicit FileByteSource(const std::filesystem::path& path);

  std::size_t Read(std::span<std::uint8_t> out) override;
  std::uint64_t Size() const override { return size_; }
  void Rewind() override;

 private:
  struct Closer {
    void operator()(std::FILE* f) const { std::fclose(f); }
  };

  std::filesystem::path path_;
  std::unique_ptr<std::FILE, Closer> file_;
  std::uint64_t size_ = 0;
};

// Non-owning view over bytes already in memory.
class MemoryByteSource final : public ByteSource {
 public:
  explicit MemoryByteSource(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t Read(std::span<std::uint8_t> out) override;
  std::uint64_t Size() const override { return data_.size(); }
  void Rewind() override { pos_ = 0; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace acctlens

#endif  // ACCTLENS_BYTE_SOURCE_H_
