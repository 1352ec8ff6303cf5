#ifndef ACCTLENS_RECORD_STREAM_H_
#define ACCTLENS_RECORD_STREAM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acctlens/byte_source.h"
#include "acctlens/format.h"
#include "acctlens/warnings.h"

namespace acctlens {

// Producer of normalized records, consumed once front to back.
class RecordSource {
 public:
  virtual ~RecordSource() = default;

  // Next record, or nullopt at end of stream.
  virtual std::optional<ProcessRecord> Next() = 0;

  // Diagnostics gathered while producing records.
  virtual std::vector<std::string> Warnings() const { return {}; }

  virtual std::optional<FormatKind> Format() const { return std::nullopt; }
};

// Decodes records from a ByteSource in a single forward pass. Malformed
// records are skipped with a warning; a trailing partial record produces a
// warning and a clean end of stream.
class RecordStream final : public RecordSource {
 public:
  // Throws std::invalid_argument when ahz == 0.
  RecordStream(ByteSource& source, FormatKind kind, Endianness order,
               unsigned ahz = kDefaultAhz);

  std::optional<ProcessRecord> Next() override;
  std::vector<std::string> Warnings() const override { return warnings_.Lines(); }
  std::optional<FormatKind> Format() const override { return kind_; }

  std::uint64_t records_yielded() const { return yielded_; }
  std::uint64_t malformed_records() const { return malformed_; }
  std::uint64_t trailing_bytes() const { return trailing_; }

 private:
  bool Refill();

  ByteSource& source_;
  FormatKind kind_;
  Endianness order_;
  unsigned ahz_;
  std::size_t record_size_;
  std::vector<std::uint8_t> buffer_;
  std::size_t begin_ = 0;
  std::size_t end_ = 0;
  bool eof_ = false;
  std::uint64_t index_ = 0;
  std::uint64_t yielded_ = 0;
  std::uint64_t malformed_ = 0;
  std::uint64_t trailing_ = 0;
  WarningLog warnings_;
};

// Replays records held in memory.
class VectorRecordSource final : public RecordSource {
 public:
  explicit VectorRecordSource(std::vector<ProcessRecord> records,
                              std::optional<FormatKind> kind = std::nullopt)
      : records_(std::move(records)), kind_(kind) {}

  std::optional<ProcessRecord> Next() override {
    if (pos_ >= records_.size()) return std::nullopt;
    return records_[pos_++];
  }
  std::optional<FormatKind> Format() const override { return kind_; }

 private:
  std::vector<ProcessRecord> records_;
  std::optional<FormatKind> kind_;
  std::size_t pos_ = 0;
};

}  // namespace acctlens

#endif  // ACCTLENS_RECORD_STREAM_H_
