#pragma once

#include <functional>
#include <random>
#include <vector>

namespace testwords {

inline int random_letter(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> d(1, n);
  int l = d(rng);
  return rng() % 2 ? l : -l;
}

inline std::vector<int> random_word(std::mt19937& rng, int n, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::vector<int> w(len(rng));
  for (int& l : w) l = random_letter(rng, n);
  return w;
}

inline std::vector<int> rotation(const std::vector<int>& r, std::size_t k, bool inverted) {
  std::vector<int> base = r;
  if (inverted) {
    base.assign(r.rbegin(), r.rend());
    for (int& l : base) l = -l;
  }
  std::vector<int> out(base.begin() + k % base.size(), base.end());
  out.insert(out.end(), base.begin(), base.begin() + k % base.size());
  return out;
}

// Every word (reduced or not) of length <= len over ±1..±n.
inline void for_each_word(int n, int len, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> w;
  std::function<void()> rec = [&] {
    f(w);
    if (static_cast<int>(w.size()) == len) return;
    for (int l = -n; l <= n; ++l) {
      if (l == 0) continue;
      w.push_back(l);
      rec();
      w.pop_back();
    }
  };
  rec();
}

// A product of conjugated relator rotations, hence trivial in the group.
inline std::vector<int> random_relator_product(std::mt19937& rng, const std::vector<int>& r, int max_len) {
  int n = 0;
  for (int l : r) n = std::max(n, std::abs(l));
  std::vector<int> out;
  while (true) {
    std::vector<int> rot = rotation(r, rng() % r.size(), rng() % 2);
    int c = random_letter(rng, n);
    std::vector<int> word{c};
    word.insert(word.end(), rot.begin(), rot.end());
    word.push_back(-c);
    if (static_cast<int>(out.size() + word.size()) > max_len) break;
    out.insert(out.end(), word.begin(), word.end());
  }
  return out;
}

inline std::vector<int> insert_relators(std::mt19937& rng, std::vector<int> w, const std::vector<int>& r, int count) {
  for (int i = 0; i < count; ++i) {
    std::size_t pos = w.empty() ? 0 : rng() % (w.size() + 1);
    std::vector<int> ins;
    int n = 0;
    for (int l : r) n = std::max(n, std::abs(l));
    int c = random_letter(rng, n);
    ins.push_back(c);
    auto rot = rotation(r, rng() % r.size(), rng() % 2);
    ins.insert(ins.end(), rot.begin(), rot.end());
    ins.push_back(-c);
    w.insert(w.begin() + pos, ins.begin(), ins.end());
  }
  return w;
}

}  // namespace testwords
