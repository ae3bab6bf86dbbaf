#include "ghor/labels.hpp"

#include <algorithm>
#include <numeric>

#include "ghor/errors.hpp"

namespace ghor {

const char* basis_name(Basis b) { return b == Basis::Perfect ? "perfect" : "simple"; }

int64_t ExponentVector::degree() const { return std::accumulate(exps.begin(), exps.end(), int64_t{0}); }

bool ExponentVector::nonnegative() const {
  return std::all_of(exps.begin(), exps.end(), [](int64_t e) { return e >= 0; });
}

namespace {

void require_same(const ExponentVector& a, const ExponentVector& b) {
  if (a.basis != b.basis) throw PreconditionError("labels over different matching sets");
  if (a.size() != b.size()) throw PreconditionError("labels of different lengths");
}

}  // namespace

ExponentVector& ExponentVector::operator+=(const ExponentVector& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < exps.size(); ++i) exps[i] += o.exps[i];
  return *this;
}

ExponentVector operator-(const ExponentVector& a, const ExponentVector& b) {
  require_same(a, b);
  ExponentVector r = a;
  for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] -= b.exps[i];
  return r;
}

ExponentVector zero_vector(Basis b, std::size_t n) { return {std::vector<int64_t>(n, 0), b}; }
ExponentVector sigma_vector(Basis b, std::size_t n) { return {std::vector<int64_t>(n, 1), b}; }
ExponentVector scaled_sigma(const ExponentVector& like, int64_t m) {
  return {std::vector<int64_t>(like.size(), m), like.basis};
}

ExponentVector arrow_label(const MatchingIndex& ix, ArrowId a, Basis b) {
  const auto& col = b == Basis::Perfect ? ix.perfect_member.at(a) : ix.simple_member.at(a);
  ExponentVector v{std::vector<int64_t>(col.size()), b};
  for (std::size_t i = 0; i < col.size(); ++i) v.exps[i] = col[i];
  return v;
}

namespace {

ExponentVector path_label(const DimerQuiver& q, const MatchingIndex& ix, const Path& p, Basis b) {
  if (!p.arrows.empty()) {
    Path checked = make_path(q, p.arrows);
    if (checked.start != p.start) throw CompositionError("path does not start at its declared vertex");
  }
  ExponentVector v = zero_vector(b, b == Basis::Perfect ? ix.perfect.size() : ix.simple.size());
  for (ArrowId a : p.arrows) {
    const auto& col = b == Basis::Perfect ? ix.perfect_member.at(a) : ix.simple_member.at(a);
    for (std::size_t i = 0; i < col.size(); ++i) v.exps[i] += col[i];
  }
  return v;
}

}  // namespace

ExponentVector eta_bar(const DimerQuiver& q, const MatchingIndex& ix, const Path& p) {
  return path_label(q, ix, p, Basis::Perfect);
}

ExponentVector tau_bar(const DimerQuiver& q, const MatchingIndex& ix, const Path& p) {
  return path_label(q, ix, p, Basis::Simple);
}

std::optional<int64_t> sigma_equal(const ExponentVector& u, const ExponentVector& v) {
  require_same(u, v);
  if (u.exps.empty()) return 0;
  const int64_t l = u.exps[0] - v.exps[0];
  for (std::size_t i = 1; i < u.size(); ++i)
    if (u.exps[i] - v.exps[i] != l) return std::nullopt;
  return l;
}

SigmaNormal sigma_normal(const ExponentVector& v) {
  if (v.exps.empty()) return {v, 0};
  int64_t m = *std::min_element(v.exps.begin(), v.exps.end());
  return {v - scaled_sigma(v, m), m};
}

bool paths_equal_mod_ker(const DimerQuiver& q, const MatchingIndex& ix, const Path& a, const Path& b) {
  if (a.start != b.start || path_head(q, a) != path_head(q, b)) return false;
  return eta_bar(q, ix, a) == eta_bar(q, ix, b);
}

std::string to_string(const ExponentVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.exps.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.exps[i]);
  }
  return s + "]";
}

std::string monomial(const ExponentVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.exps.size(); ++i) {
    if (v.exps[i] == 0) continue;
    if (!s.empty()) s += " ";
    s += "x" + std::to_string(i);
    if (v.exps[i] != 1) s += "^" + std::to_string(v.exps[i]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace ghor
