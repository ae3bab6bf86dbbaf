#pragma once

#include <functional>
#include <vector>

namespace ghor {

// Dancing links over primary items 0..items-1. Options are lists of distinct
// items; every solution lists option indices in increasing order.
class ExactCover {
 public:
  explicit ExactCover(int items);

  int add_option(const std::vector<int>& items);
  // Visits every exact cover; return false from the callback to stop.
  void solve(const std::function<bool(const std::vector<int>&)>& visit);
  std::vector<std::vector<int>> all_solutions();

 private:
  struct Node {
    int left, right, up, down, column, option;
  };

  void cover(int c);
  void uncover(int c);
  bool search(const std::function<bool(const std::vector<int>&)>& visit);

  int items_;
  std::vector<Node> nodes_;
  std::vector<int> size_;
  std::vector<int> chosen_;
  int options_ = 0;
};

}  // namespace ghor
