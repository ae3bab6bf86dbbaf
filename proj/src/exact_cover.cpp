#include "ghor/exact_cover.hpp"

#include <algorithm>
#include <stdexcept>

namespace ghor {

ExactCover::ExactCover(int items) : items_(items), size_(items + 1, 0) {
  // node 0 is the header root, nodes 1..items are column headers
  nodes_.resize(items + 1);
  for (int i = 0; i <= items; ++i) {
    nodes_[i] = {i == 0 ? items : i - 1, i == items ? 0 : i + 1, i, i, i, -1};
  }
}

int ExactCover::add_option(const std::vector<int>& items) {
  if (items.empty()) throw std::invalid_argument("empty option");
  int first = -1;
  for (int item : items) {
    if (item < 0 || item >= items_) throw std::invalid_argument("item out of range");
    int col = item + 1;
    int id = static_cast<int>(nodes_.size());
    Node n{id, id, nodes_[col].up, col, col, options_};
    nodes_.push_back(n);
    nodes_[nodes_[col].up].down = id;
    nodes_[col].up = id;
    ++size_[col];
    if (first < 0) {
      first = id;
    } else {
      nodes_[id].left = nodes_[first].left;
      nodes_[id].right = first;
      nodes_[nodes_[first].left].right = id;
      nodes_[first].left = id;
    }
  }
  return options_++;
}

void ExactCover::cover(int c) {
  nodes_[nodes_[c].right].left = nodes_[c].left;
  nodes_[nodes_[c].left].right = nodes_[c].right;
  for (int i = nodes_[c].down; i != c; i = nodes_[i].down) {
    for (int j = nodes_[i].right; j != i; j = nodes_[j].right) {
      nodes_[nodes_[j].down].up = nodes_[j].up;
      nodes_[nodes_[j].up].down = nodes_[j].down;
      --size_[nodes_[j].column];
    }
  }
}

void ExactCover::uncover(int c) {
  for (int i = nodes_[c].up; i != c; i = nodes_[i].up) {
    for (int j = nodes_[i].left; j != i; j = nodes_[j].left) {
      ++size_[nodes_[j].column];
      nodes_[nodes_[j].down].up = j;
      nodes_[nodes_[j].up].down = j;
    }
  }
  nodes_[nodes_[c].right].left = c;
  nodes_[nodes_[c].left].right = c;
}

bool ExactCover::search(const std::function<bool(const std::vector<int>&)>& visit) {
  if (nodes_[0].right == 0) {
    std::vector<int> sol = chosen_;
    std::sort(sol.begin(), sol.end());
    return visit(sol);
  }
  // fewest remaining options first, lowest item on ties
  int best = -1;
  for (int c = nodes_[0].right; c != 0; c = nodes_[c].right) {
    if (best < 0 || size_[c] < size_[best]) best = c;
  }
  if (size_[best] == 0) return true;
  cover(best);
  bool keep_going = true;
  for (int r = nodes_[best].down; r != best && keep_going; r = nodes_[r].down) {
    chosen_.push_back(nodes_[r].option);
    for (int j = nodes_[r].right; j != r; j = nodes_[j].right) cover(nodes_[j].column);
    keep_going = search(visit);
    for (int j = nodes_[r].left; j != r; j = nodes_[j].left) uncover(nodes_[j].column);
    chosen_.pop_back();
  }
  uncover(best);
  return keep_going;
}

void ExactCover::solve(const std::function<bool(const std::vector<int>&)>& visit) { search(visit); }

std::vector<std::vector<int>> ExactCover::all_solutions() {
  std::vector<std::vector<int>> out;
  solve([&](const std::vector<int>& s) {
    out.push_back(s);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ghor
