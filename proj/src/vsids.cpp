#include "phasesat/vsids.hpp"

#include <cassert>

namespace phasesat {

void VarOrderHeap::insert(Var v) {
  if (v.index >= pos_.size()) pos_.resize(v.index + 1, -1);
  if (contains(v)) return;
  pos_[v.index] = static_cast<int>(heap_.size());
  heap_.push_back(v.index);
  siftUp(heap_.size() - 1);
}

Var VarOrderHeap::removeTop() {
  assert(!heap_.empty());
  const std::uint32_t top = heap_.front();
  const std::uint32_t last = heap_.back();
  heap_.pop_back();
  pos_[top] = -1;
  if (!heap_.empty()) {
    heap_[0] = last;
    pos_[last] = 0;
    siftDown(0);
  }
  return Var{top};
}

void VarOrderHeap::siftUp(std::size_t i) {
  const std::uint32_t x = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!before(x, heap_[parent])) break;
    heap_[i] = heap_[parent];
    pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = x;
  pos_[x] = static_cast<int>(i);
}

void VarOrderHeap::siftDown(std::size_t i) {
  const std::uint32_t x = heap_[i];
  const std::size_t n = heap_.size();
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= n) break;
    if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], x)) break;
    heap_[i] = heap_[child];
    pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = x;
  pos_[x] = static_cast<int>(i);
}

void VsidsState::resize(std::uint32_t numVars) {
  const auto old = static_cast<std::uint32_t>(activity_.size());
  activity_.resize(numVars, 0.0);
  for (std::uint32_t v = old; v < numVars; ++v) heap_.insert(Var{v});
}

void VsidsState::setActivity(Var v, double a) {
  // Only used from tests and setup; a full rebuild keeps the heap exact.
  activity_[v.index] = a;
  std::vector<Var> members;
  while (!heap_.empty()) members.push_back(heap_.removeTop());
  for (Var m : members) heap_.insert(m);
}

std::uint64_t lubyTerm(std::uint64_t i) {
  assert(i >= 1);
  // Find the finite subsequence containing index i-1 (0-based), MiniSat style.
  std::uint64_t x = i - 1;
  std::uint64_t size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::uint64_t{1} << seq;
}

}  // namespace phasesat
