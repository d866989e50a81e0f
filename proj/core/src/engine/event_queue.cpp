#include "dxsim/event_queue.hpp"

#include <algorithm>
#include <utility>

namespace dxsim {

void EventQueue::schedule(Tick when, Callback fn) {
  if (when < now_) when = now_;
  heap_.push_back(Entry{when, seq_++, std::move(fn)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
}

bool EventQueue::run_one() {
  if (heap_.empty()) return false;
  std::pop_heap(heap_.begin(), heap_.end(), Later{});
  Entry e = std::move(heap_.back());
  heap_.pop_back();
  now_ = e.when;
  ++executed_;
  e.fn();
  return true;
}

}  // namespace dxsim
