#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace dxsim::indirect {

struct ColumnEntry {
  bool valid = false;
  bool sent = false;
  bool hit = false;  // H bit captured on first touch
  std::uint32_t column = 0;
  std::int32_t tail = -1;  // Word Table index of the newest iteration
  std::uint32_t words = 0;
};

struct RowEntry {
  bool valid = false;
  bool sent = false;
  std::uint32_t row = 0;
  std::uint64_t order = 0;  // allocation stamp; drains go oldest first
  std::vector<ColumnEntry> columns;
  std::uint32_t live_columns = 0;
};

struct WordEntry {
  bool valid = false;
  std::uint32_t offset = 0;  // word index within the cacheline
  std::int32_t previous = -1;
};

/// A column ready to leave the table as one memory request.
struct PendingColumn {
  std::uint32_t slice = 0;
  std::uint32_t row = 0;
  std::uint32_t column = 0;
  bool hit = false;
};

struct WordRef {
  std::uint32_t iteration = 0;
  std::uint32_t offset = 0;
};

/// Row Table (one slice per bank) plus the shared Word Table. Fill groups
/// iterations by (row, column) per slice; drain marks rows sent and hands out
/// one request per column; respond walks a column's linked list.
class RowTable {
 public:
  enum class Status : std::uint8_t { Inserted, RowsFull, ColumnsFull };
  struct InsertResult {
    Status status = Status::Inserted;
    bool new_column = false;
    bool hit = false;
    /// Row entry that overflowed (ColumnsFull only).
    std::uint32_t row_entry = 0;
  };

  RowTable(std::uint32_t slices, std::uint32_t rows, std::uint32_t columns,
           std::uint32_t word_entries);

  /// `snoop` is called only when a new column entry is allocated.
  InsertResult insert(std::uint32_t slice, std::uint32_t row, std::uint32_t column,
                      std::uint32_t iteration, std::uint32_t offset,
                      const std::function<bool()>& snoop);

  /// Marks every valid unsent row of the slice sent, oldest first; columns of
  /// one row are returned consecutively.
  std::vector<PendingColumn> drain_slice(std::uint32_t slice);
  std::vector<PendingColumn> drain_row(std::uint32_t slice, std::uint32_t row_entry);
  /// Oldest valid unsent row entry, or -1.
  std::int32_t oldest_unsent(std::uint32_t slice) const;

  /// Frees the sent column matching (row, column) and returns its iterations
  /// in ascending order. Throws ConsistencyError when nothing matches.
  std::vector<WordRef> respond(std::uint32_t slice, std::uint32_t row, std::uint32_t column);

  std::uint32_t slices() const { return static_cast<std::uint32_t>(slices_.size()); }
  std::uint32_t valid_rows(std::uint32_t slice) const;
  std::uint32_t unsent_rows(std::uint32_t slice) const;
  bool empty() const;
  const std::vector<RowEntry>& slice(std::uint32_t s) const { return slices_.at(s); }
  const WordEntry& word(std::uint32_t i) const { return words_.at(i); }

 private:
  std::vector<PendingColumn> send_row(std::uint32_t slice, RowEntry& r);

  std::uint32_t columns_;
  std::vector<std::vector<RowEntry>> slices_;
  std::vector<WordEntry> words_;
  std::uint64_t stamp_ = 0;
};

}  // namespace dxsim::indirect
