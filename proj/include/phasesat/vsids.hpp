// EVSIDS variable activity and the order heap used for branching.
#pragma once

#include <cstdint>
#include <vector>

#include "phasesat/core.hpp"

namespace phasesat {

/// Binary max-heap of variables keyed by an external activity array. Equal
/// activities are ordered by lower variable index.
class VarOrderHeap {
 public:
  explicit VarOrderHeap(const std::vector<double>& activity) : activity_(&activity) {}

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(Var v) const { return v.index < pos_.size() && pos_[v.index] >= 0; }
  Var top() const { return Var{heap_.front()}; }

  void insert(Var v);
  Var removeTop();
  /// Restores heap order after activity[v] increased.
  void increased(Var v) {
    if (contains(v)) siftUp(static_cast<std::size_t>(pos_[v.index]));
  }

 private:
  bool before(std::uint32_t a, std::uint32_t b) const {
    const double x = (*activity_)[a], y = (*activity_)[b];
    return x > y || (x == y && a < b);
  }
  void siftUp(std::size_t i);
  void siftDown(std::size_t i);

  const std::vector<double>* activity_;
  std::vector<std::uint32_t> heap_;
  std::vector<int> pos_;
};

class VsidsState {
 public:
  static constexpr double kRescaleLimit = 1e100;
  static constexpr double kRescaleFactor = 1e-100;

  explicit VsidsState(double varDecay = 0.95) : decay_(varDecay), heap_(activity_) {}
  VsidsState(const VsidsState&) = delete;
  VsidsState& operator=(const VsidsState&) = delete;

  /// Adds variables up to `numVars`, each inserted into the heap.
  void resize(std::uint32_t numVars);

  void bump(Var v) {
    double& a = activity_[v.index];
    a += inc_;
    if (a > kRescaleLimit) rescale();
    heap_.increased(v);
  }
  void decay() { inc_ *= 1.0 / decay_; }
  void rescale() {
    for (double& a : activity_) a *= kRescaleFactor;
    inc_ *= kRescaleFactor;
  }

  double activity(Var v) const { return activity_[v.index]; }
  double inc() const { return inc_; }
  void setActivity(Var v, double a);
  void setInc(double inc) { inc_ = inc; }

  VarOrderHeap& heap() { return heap_; }
  const VarOrderHeap& heap() const { return heap_; }

 private:
  double decay_;
  double inc_ = 1.0;
  std::vector<double> activity_;
  VarOrderHeap heap_;
};

/// 1-based Luby sequence: 1,1,2,1,1,2,4,1,1,2,...
std::uint64_t lubyTerm(std::uint64_t i);

}  // namespace phasesat
