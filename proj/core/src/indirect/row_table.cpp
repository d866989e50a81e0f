#include "dxsim/indirect/row_table.hpp"

#include <algorithm>
#include <string>

#include "dxsim/common.hpp"

namespace dxsim::indirect {

RowTable::RowTable(std::uint32_t slices, std::uint32_t rows, std::uint32_t columns,
                   std::uint32_t word_entries)
    : columns_(columns),
      slices_(slices, std::vector<RowEntry>(rows, RowEntry{false, false, 0, 0,
                                                           std::vector<ColumnEntry>(columns), 0})),
      words_(word_entries) {}

RowTable::InsertResult RowTable::insert(std::uint32_t slice, std::uint32_t row,
                                        std::uint32_t column, std::uint32_t iteration,
                                        std::uint32_t offset,
                                        const std::function<bool()>& snoop) {
  auto& rows = slices_.at(slice);
  WordEntry& w = words_.at(iteration);
  if (w.valid) throw ConsistencyError("word table entry " + std::to_string(iteration) + " reused");

  auto link_new = [&](RowEntry& r, ColumnEntry& c) {
    c = ColumnEntry{true, false, snoop ? snoop() : false, column, static_cast<std::int32_t>(iteration), 1};
    ++r.live_columns;
    w = WordEntry{true, offset, -1};
    return InsertResult{Status::Inserted, true, c.hit, 0};
  };

  for (std::uint32_t e = 0; e < rows.size(); ++e) {
    RowEntry& r = rows[e];
    if (!r.valid || r.sent || r.row != row) continue;
    for (ColumnEntry& c : r.columns) {
      if (c.valid && c.column == column) {
        w = WordEntry{true, offset, c.tail};
        c.tail = static_cast<std::int32_t>(iteration);
        ++c.words;
        return {Status::Inserted, false, c.hit, e};
      }
    }
    for (ColumnEntry& c : r.columns)
      if (!c.valid) return link_new(r, c);
    return {Status::ColumnsFull, false, false, e};
  }
  for (RowEntry& r : rows) {
    if (r.valid) continue;
    r.valid = true;
    r.sent = false;
    r.row = row;
    r.order = stamp_++;
    r.live_columns = 0;
    for (auto& c : r.columns) c = ColumnEntry{};
    return link_new(r, r.columns[0]);
  }
  return {Status::RowsFull, false, false, 0};
}

std::vector<PendingColumn> RowTable::send_row(std::uint32_t slice, RowEntry& r) {
  std::vector<PendingColumn> out;
  r.sent = true;
  for (ColumnEntry& c : r.columns) {
    if (!c.valid) continue;
    c.sent = true;
    out.push_back({slice, r.row, c.column, c.hit});
  }
  return out;
}

std::vector<PendingColumn> RowTable::drain_slice(std::uint32_t slice) {
  auto& rows = slices_.at(slice);
  std::vector<RowEntry*> order;
  for (RowEntry& r : rows)
    if (r.valid && !r.sent) order.push_back(&r);
  std::sort(order.begin(), order.end(),
            [](const RowEntry* a, const RowEntry* b) { return a->order < b->order; });
  std::vector<PendingColumn> out;
  for (RowEntry* r : order) {
    auto cols = send_row(slice, *r);
    out.insert(out.end(), cols.begin(), cols.end());
  }
  return out;
}

std::vector<PendingColumn> RowTable::drain_row(std::uint32_t slice, std::uint32_t row_entry) {
  RowEntry& r = slices_.at(slice).at(row_entry);
  if (!r.valid || r.sent) return {};
  return send_row(slice, r);
}

std::int32_t RowTable::oldest_unsent(std::uint32_t slice) const {
  const auto& rows = slices_.at(slice);
  std::int32_t best = -1;
  for (std::uint32_t e = 0; e < rows.size(); ++e) {
    if (!rows[e].valid || rows[e].sent) continue;
    if (best < 0 || rows[e].order < rows[best].order) best = static_cast<std::int32_t>(e);
  }
  return best;
}

std::vector<WordRef> RowTable::respond(std::uint32_t slice, std::uint32_t row,
                                       std::uint32_t column) {
  // The same (row, column) can be in flight twice after a capacity drain;
  // responses come back in request order, so the oldest entry owns this one.
  RowEntry* owner = nullptr;
  ColumnEntry* col = nullptr;
  for (RowEntry& r : slices_.at(slice)) {
    if (!r.valid || !r.sent || r.row != row) continue;
    if (owner && owner->order < r.order) continue;
    for (ColumnEntry& c : r.columns) {
      if (c.valid && c.sent && c.column == column) {
        owner = &r;
        col = &c;
        break;
      }
    }
  }
  if (!col)
    throw ConsistencyError("response for slice " + std::to_string(slice) + " row " +
                           std::to_string(row) + " column " + std::to_string(column) +
                           " matches no sent column");
  std::vector<WordRef> out;
  out.reserve(col->words);
  for (std::int32_t i = col->tail; i >= 0;) {
    WordEntry& w = words_.at(static_cast<std::uint32_t>(i));
    if (!w.valid || out.size() >= col->words)
      throw ConsistencyError("broken word list at iteration " + std::to_string(i));
    out.push_back({static_cast<std::uint32_t>(i), w.offset});
    w.valid = false;
    i = w.previous;
  }
  std::reverse(out.begin(), out.end());
  *col = ColumnEntry{};
  if (--owner->live_columns == 0) owner->valid = false;
  return out;
}

std::uint32_t RowTable::valid_rows(std::uint32_t slice) const {
  std::uint32_t n = 0;
  for (const RowEntry& r : slices_.at(slice)) n += r.valid;
  return n;
}

std::uint32_t RowTable::unsent_rows(std::uint32_t slice) const {
  std::uint32_t n = 0;
  for (const RowEntry& r : slices_.at(slice)) n += r.valid && !r.sent;
  return n;
}

bool RowTable::empty() const {
  for (std::uint32_t s = 0; s < slices_.size(); ++s)
    if (valid_rows(s)) return false;
  return true;
}

}  // namespace dxsim::indirect
