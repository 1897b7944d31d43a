#pragma once

#include <cstdint>
#include <vector>

namespace fifonet {

/// Record of which branch every piecewise operation took during one
/// evaluation (argmin of each min, segment of each piecewise-linear curve,
/// whether a coordinate was clamped). Two evaluations with equal traces lie on
/// the same smooth piece of the function.
class BranchTrace {
 public:
  void record(std::uint32_t branch) { branches_.push_back(branch); }
  void clear() noexcept { branches_.clear(); }
  const std::vector<std::uint32_t>& branches() const noexcept { return branches_; }

  friend bool operator==(const BranchTrace&, const BranchTrace&) = default;

 private:
  std::vector<std::uint32_t> branches_;
};

inline void record(BranchTrace* trace, std::uint32_t branch) {
  if (trace != nullptr) trace->record(branch);
}

}  // namespace fifonet
