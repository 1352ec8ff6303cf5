#include "acctlens/record_stream.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "acctlens/errors.h"

namespace acctlens {
namespace {
constexpr std::size_t kRecordsPerChunk = 4096;
}  // namespace

RecordStream::RecordStream(ByteSource& source, FormatKind kind,
                           Endianness order, unsigned ahz)
    : source_(source),
      kind_(kind),
      order_(order),
      ahz_(ahz),
      record_size_(RecordSize(kind)),
      buffer_(record_size_ * kRecordsPerChunk) {
  if (ahz == 0) throw std::invalid_argument("ahz must be positive");
}

bool RecordStream::Refill() {
  // Keep any partial record at the front and read behind it.
  const std::size_t leftover = end_ - begin_;
  std::copy(buffer_.begin() + begin_, buffer_.begin() + end_, buffer_.begin());
  begin_ = 0;
  end_ = leftover;
  while (!eof_ && end_ < buffer_.size()) {
    const std::size_t n = source_.Read(std::span(buffer_).subspan(end_));
    if (n == 0) {
      eof_ = true;
      break;
    }
    end_ += n;
  }
  return end_ - begin_ >= record_size_;
}

std::optional<ProcessRecord> RecordStream::Next() {
  while (true) {
    if (end_ - begin_ < record_size_ && !Refill()) {
      if (end_ > begin_ && trailing_ == 0) {
        trailing_ = end_ - begin_;
        warnings_.Add("truncated trailing record: " +
                      std::to_string(trailing_) + " of " +
                      std::to_string(record_size_) + " bytes ignored");
        begin_ = end_;
      }
      return std::nullopt;
    }
    const std::span<const std::uint8_t> bytes(buffer_.data() + begin_,
                                              record_size_);
    begin_ += record_size_;
    const std::uint64_t index = index_++;
    try {
      ProcessRecord record = ParseRecord(bytes, kind_, order_, ahz_);
      ++yielded_;
      return record;
    } catch (const MalformedRecord& e) {
      ++malformed_;
      warnings_.Add("record " + std::to_string(index) + " skipped: " +
                    e.what());
    }
  }
}

}  // namespace acctlens
