#include "ghor/central.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <future>
#include <numeric>
#include <set>

#include "ghor/errors.hpp"

namespace ghor {

namespace {

nlohmann::json path_json(const DimerQuiver& q, const Path& p) {
  nlohmann::json j = nlohmann::json::array();
  for (ArrowId a : p.arrows) j.push_back(q.arrow(a).name);
  return j;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in Smith normal form");
  return r;
}

int64_t checked_sub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error("integer overflow in Smith normal form");
  return r;
}

bool leq(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool is_zero(const std::vector<int64_t>& v) {
  return std::all_of(v.begin(), v.end(), [](int64_t x) { return x == 0; });
}

ExponentVector scaled(const ExponentVector& v, int64_t n) {
  ExponentVector r = v;
  for (auto& e : r.exps) e = checked_mul(e, n);
  return r;
}

nlohmann::json generator_json(const DimerQuiver& q, const GeneratorRecord& g) {
  return {{"cycle", path_json(q, g.cycle)}, {"class", g.cls}, {"label", g.label.exps}};
}

}  // namespace

bool SemigroupSample::contains(const ExponentVector& v) const {
  return std::binary_search(elements.begin(), elements.end(), v);
}

std::map<int64_t, std::size_t> SemigroupSample::count_by_degree() const {
  std::map<int64_t, std::size_t> out;
  for (const auto& e : elements) ++out[e.degree()];
  return out;
}

SemigroupSample SemigroupSample::slice(int d) const {
  SemigroupSample s;
  s.basis = basis;
  s.degree = d;
  for (const auto& e : elements)
    if (e.degree() <= d) s.elements.push_back(e);
  for (const auto& e : generators)
    if (e.degree() <= d) s.generators.push_back(e);
  return s;
}

nlohmann::json SemigroupSample::to_json() const {
  nlohmann::json j;
  j["basis"] = basis_name(basis);
  j["degree"] = degree;
  j["elements"] = nlohmann::json::array();
  for (const auto& e : elements) j["elements"].push_back(e.exps);
  j["generators"] = nlohmann::json::array();
  for (const auto& e : generators) j["generators"].push_back(e.exps);
  nlohmann::json counts = nlohmann::json::object();
  for (auto [d, c] : count_by_degree()) counts[std::to_string(d)] = c;
  j["count_by_degree"] = counts;
  return j;
}

nlohmann::json LatticeSummary::to_json() const {
  return {{"matrix", matrix}, {"rank", rank}, {"elementary_divisors", elementary_divisors}};
}

LatticeSummary smith_summary(std::vector<std::vector<int64_t>> matrix) {
  LatticeSummary out;
  out.matrix = matrix;
  auto& a = matrix;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (const auto& r : a)
    if (r.size() != cols) throw PreconditionError("lattice rows have different lengths");

  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest nonzero magnitude in the remaining block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& r : a) std::swap(r[t], r[pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        int64_t f = a[i][t] / a[t][t];
        if (f != 0)
          for (std::size_t j = t; j < cols; ++j) a[i][j] = checked_sub(a[i][j], checked_mul(f, a[t][j]));
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        int64_t f = a[t][j] / a[t][t];
        if (f != 0)
          for (std::size_t i = t; i < rows; ++i) a[i][j] = checked_sub(a[i][j], checked_mul(f, a[i][t]));
        if (a[t][j] != 0) {
          for (auto& r : a) std::swap(r[t], r[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // the pivot must divide the rest of the block
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] = a[t][k] + a[i][k];
            clean = false;
            break;
          }
    }
    out.elementary_divisors.push_back(std::llabs(a[t][t]));
    ++t;
  }
  out.rank = static_cast<int>(out.elementary_divisors.size());
  return out;
}

LatticeSummary krull_dimension(const std::vector<ExponentVector>& vectors) {
  std::vector<std::vector<int64_t>> m;
  for (const auto& v : vectors) {
    if (!m.empty() && (v.size() != m[0].size() || v.basis != vectors[0].basis))
      throw PreconditionError("vectors are not over a common basis");
    m.push_back(v.exps);
  }
  return smith_summary(std::move(m));
}

bool TReport::normalized() const {
  return std::all_of(normalization.begin(), normalization.end(),
                     [](const std::optional<int64_t>& l) { return l.has_value(); });
}

nlohmann::json TReport::to_json() const {
  nlohmann::json j = lattice.to_json();
  j["expected_rank"] = expected_rank;
  j["rank_ok"] = rank_ok();
  j["normalization"] = nlohmann::json::array();
  for (const auto& l : normalization) j["normalization"].push_back(l ? nlohmann::json(*l) : nlohmann::json());
  j["normalized"] = normalized();
  return j;
}

bool AgreementReport::all_in_center() const {
  return std::all_of(entries.begin(), entries.end(), [](const AgreementEntry& e) { return e.center_shift.has_value(); });
}

bool AgreementReport::all_in_t() const {
  return t_available &&
         std::all_of(entries.begin(), entries.end(), [](const AgreementEntry& e) { return e.t_sigma_power.has_value(); });
}

nlohmann::json AgreementReport::to_json(const DimerQuiver& q) const {
  nlohmann::json j;
  j["max_shift"] = max_shift;
  j["t_available"] = t_available;
  j["all_in_center"] = all_in_center();
  j["all_in_t"] = all_in_t();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json x = generator_json(q, e.generator);
    x["center_shift"] = e.center_shift ? nlohmann::json(*e.center_shift) : nlohmann::json();
    if (t_available) {
      x["t_exponents"] = e.t_exponents;
      x["t_sigma_power"] = e.t_sigma_power ? nlohmann::json(*e.t_sigma_power) : nlohmann::json();
    }
    j["entries"].push_back(x);
  }
  return j;
}

const char* verdict_name(NoetherianVerdict v) {
  switch (v) {
    case NoetherianVerdict::Certified: return "noetherian-certified-at-bound";
    case NoetherianVerdict::NotNoetherian: return "nonnoetherian-certified";
    case NoetherianVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

nlohmann::json NoetherianReport::to_json(const DimerQuiver& q) const {
  nlohmann::json j;
  j["verdict"] = verdict_name(verdict);
  j["nmax"] = nmax;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json x = generator_json(q, e.generator);
    x["power"] = e.power ? nlohmann::json(*e.power) : nlohmann::json();
    x["obstruction_vertex"] = e.obstruction_vertex ? nlohmann::json(q.vertex_name(*e.obstruction_vertex)) : nlohmann::json();
    j["entries"].push_back(x);
  }
  j["witness"] = witness ? generator_json(q, entries[*witness].generator) : nlohmann::json();
  return j;
}

nlohmann::json DepictionReport::to_json(const DimerQuiver& q) const {
  nlohmann::json j;
  j["degree"] = degree;
  j["per_degree"] = nlohmann::json::array();
  for (auto [d, c] : per_degree) j["per_degree"].push_back({{"degree", d}, {"center", c.first}, {"cycle_algebra", c.second}});
  j["center_equals_cycle_algebra"] = center_equals_cycle_algebra;
  j["agreement"] = agreement.to_json(q);
  j["noetherian"] = noetherian.to_json(q);
  j["note"] = note;
  return j;
}

int longest_path_without_cyclic_subpath(const DimerQuiver& q) {
  // vertex-simple paths, or vertex-simple paths closed up once
  const int n = q.vertex_count();
  int best = 0;
  std::vector<char> on(n, 0);
  std::function<void(VertexId, VertexId, int)> dfs = [&](VertexId start, VertexId v, int len) {
    best = std::max(best, len);
    for (ArrowId a : q.out_arrows(v)) {
      VertexId h = q.arrow(a).head;
      if (h == start) best = std::max(best, len + 1);
      else if (!on[h]) {
        on[h] = 1;
        dfs(start, h, len + 1);
        on[h] = 0;
      }
    }
  };
  for (VertexId s = 0; s < n; ++s) {
    on[s] = 1;
    dfs(s, s, 0);
    on[s] = 0;
  }
  return best;
}

CentralGeometry::CentralGeometry(const CycleTopology& topology) : top_(topology) {
  const auto& q = top_.quiver();
  const auto& ix = top_.index();
  basis_ = ix.simple_covers_arrows() ? Basis::Simple : Basis::Perfect;
  if (basis_ == Basis::Perfect)
    note_ = "some arrow lies in no simple matching; labels use all perfect matchings and the centre identification is not guaranteed";
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    arrow_labels_.push_back(arrow_label(ix, a, basis_));
    if (arrow_labels_.back().degree() == 0)
      throw PreconditionError("arrow '" + q.arrow(a).name + "' has a zero label over the " + basis_name(basis_) +
                              " matchings");
  }
}

std::size_t CentralGeometry::width() const {
  return basis_ == Basis::Simple ? top_.index().simple.size() : top_.index().perfect.size();
}

int CentralGeometry::default_degree() const {
  int64_t dmax = 1;
  for (const auto& l : arrow_labels_) dmax = std::max(dmax, l.degree());
  return static_cast<int>(2 * (longest_path_without_cyclic_subpath(top_.quiver()) + 1) * dmax);
}

ExponentVector CentralGeometry::label(const Path& p) const {
  ExponentVector v = zero_vector(basis_, width());
  make_path(top_.quiver(), p.arrows);
  for (ArrowId a : p.arrows) v += arrow_labels_[a];
  return v;
}

SemigroupSample CentralGeometry::finish(std::vector<ExponentVector> elements, int degree) const {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  SemigroupSample s;
  s.basis = basis_;
  s.degree = degree;
  s.elements = std::move(elements);
  for (const auto& e : s.elements) {
    if (is_zero(e.exps)) continue;
    bool reducible = false;
    for (const auto& a : s.elements) {
      if (is_zero(a.exps) || a == e || !leq(a.exps, e.exps)) continue;
      if (s.contains(e - a)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) s.generators.push_back(e);
  }
  return s;
}

SemigroupSample CentralGeometry::vertex_semigroup(VertexId i, int degree) const {
  const auto& q = top_.quiver();
  if (i < 0 || i >= q.vertex_count()) throw PreconditionError("vertex out of range");
  ExponentVector zero = zero_vector(basis_, width());
  std::set<std::pair<VertexId, std::vector<int64_t>>> seen{{i, zero.exps}};
  std::deque<std::pair<VertexId, ExponentVector>> queue{{i, zero}};
  std::vector<ExponentVector> found{zero};
  while (!queue.empty()) {
    auto [v, lab] = queue.front();
    queue.pop_front();
    for (ArrowId a : q.out_arrows(v)) {
      ExponentVector next = lab + arrow_labels_[a];
      if (next.degree() > degree) continue;
      VertexId h = q.arrow(a).head;
      if (!seen.emplace(h, next.exps).second) continue;
      if (h == i) found.push_back(next);
      queue.emplace_back(h, next);
    }
  }
  return finish(std::move(found), degree);
}

SemigroupSample CentralGeometry::center_sample(int degree) const {
  const int n = top_.quiver().vertex_count();
  std::vector<std::future<SemigroupSample>> jobs;
  for (VertexId i = 0; i < n; ++i)
    jobs.push_back(std::async(std::launch::async, [this, i, degree] { return vertex_semigroup(i, degree); }));
  std::vector<ExponentVector> common = jobs[0].get().elements;
  for (VertexId i = 1; i < n; ++i) {
    SemigroupSample s = jobs[i].get();
    std::vector<ExponentVector> kept;
    std::set_intersection(common.begin(), common.end(), s.elements.begin(), s.elements.end(), std::back_inserter(kept));
    common = std::move(kept);
  }
  return finish(std::move(common), degree);
}

std::vector<GeneratorRecord> CentralGeometry::cycle_algebra_generators() const {
  std::map<std::vector<int64_t>, GeneratorRecord> by_label;
  for (const auto& c : top_.elementary_cycles()) {
    ExponentVector l = label(c.path);
    by_label.emplace(l.exps, GeneratorRecord{c.path, c.cls, l});
  }
  std::vector<GeneratorRecord> out;
  for (auto& [k, g] : by_label) out.push_back(std::move(g));
  return out;
}

SemigroupSample CentralGeometry::cycle_algebra_sample(int degree) const {
  auto gens = cycle_algebra_generators();
  ExponentVector zero = zero_vector(basis_, width());
  std::set<ExponentVector> seen{zero};
  std::deque<ExponentVector> queue{zero};
  while (!queue.empty()) {
    ExponentVector v = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      ExponentVector next = v + g.label;
      if (next.degree() <= degree && seen.insert(next).second) queue.push_back(next);
    }
  }
  return finish({seen.begin(), seen.end()}, degree);
}

bool CentralGeometry::realizable_at(VertexId i, const ExponentVector& target) const {
  const auto& q = top_.quiver();
  if (target.basis != basis_ || target.size() != width())
    throw PreconditionError("target label is over a different basis");
  if (!target.nonnegative()) return false;
  if (is_zero(target.exps)) return true;
  std::set<std::pair<VertexId, std::vector<int64_t>>> dead;
  std::function<bool(VertexId, const std::vector<int64_t>&)> dfs = [&](VertexId v, const std::vector<int64_t>& rest) {
    if (v == i && is_zero(rest)) return true;
    if (dead.count({v, rest})) return false;
    for (ArrowId a : q.out_arrows(v)) {
      const auto& l = arrow_labels_[a].exps;
      if (!leq(l, rest)) continue;
      std::vector<int64_t> next = rest;
      for (std::size_t k = 0; k < next.size(); ++k) next[k] -= l[k];
      if (dfs(q.arrow(a).head, next)) return true;
    }
    dead.insert({v, rest});
    return false;
  };
  return dfs(i, target.exps);
}

bool CentralGeometry::in_center(const ExponentVector& target) const {
  for (VertexId i = 0; i < top_.quiver().vertex_count(); ++i)
    if (!realizable_at(i, target)) return false;
  return true;
}

TReport CentralGeometry::t_subalgebra(const std::vector<std::optional<Path>>& gammas) const {
  const int n = top_.quiver().polygon().half_sides();
  if (static_cast<int>(gammas.size()) != 2 * n) throw PreconditionError("expected one geodesic cycle per direction");
  std::vector<ExponentVector> vecs{sigma_vector(basis_, width())};
  for (int k = 0; k < 2 * n; ++k) {
    if (!gammas[k]) throw PreconditionError("no geodesic cycle in direction " + std::to_string(k + 1));
    vecs.push_back(label(*gammas[k]));
  }
  TReport r;
  r.lattice = krull_dimension(vecs);
  r.expected_rank = n + 1;
  for (int k = 1; k <= n; ++k)
    r.normalization.push_back(sigma_equal(vecs[k] + vecs[k + n], scaled_sigma(vecs[0], 0)));
  return r;
}

AgreementReport CentralGeometry::sigma_inverted_agreement(int max_shift,
                                                          const std::vector<std::optional<Path>>& gammas) const {
  const int n = top_.quiver().polygon().half_sides();
  AgreementReport r;
  r.max_shift = max_shift;
  r.t_available = static_cast<int>(gammas.size()) == 2 * n &&
                  std::all_of(gammas.begin(), gammas.end(), [](const std::optional<Path>& g) { return g.has_value(); });
  std::vector<ExponentVector> glabels;
  if (r.t_available)
    for (const auto& g : gammas) glabels.push_back(label(*g));
  for (auto& g : cycle_algebra_generators()) {
    AgreementEntry e;
    for (int m = 0; m <= max_shift && !e.center_shift; ++m)
      if (in_center(g.label + scaled_sigma(g.label, m))) e.center_shift = m;
    if (r.t_available) {
      // the class decides the product of gammas; the labels then differ by a sigma power
      e.t_exponents.assign(2 * n, 0);
      ExponentVector prod = zero_vector(basis_, g.label.size());
      for (int k = 0; k < n; ++k) {
        int c = static_cast<int>(g.cls[k]);
        int idx = c >= 0 ? k : k + n;
        e.t_exponents[idx] = std::abs(c);
        prod += scaled(glabels[idx], std::abs(c));
      }
      e.t_sigma_power = sigma_equal(g.label, prod);
    }
    e.generator = std::move(g);
    r.entries.push_back(std::move(e));
  }
  return r;
}

NoetherianReport CentralGeometry::noetherian_center_test(int nmax) const {
  const auto& q = top_.quiver();
  NoetherianReport r;
  r.nmax = nmax;
  for (auto& g : cycle_algebra_generators()) {
    NoetherianReport::Entry e;
    for (int k = 1; k <= nmax && !e.power; ++k)
      if (in_center(scaled(g.label, k))) e.power = k;
    if (!e.power) {
      // any walk labelled by a multiple of g only uses arrows supported in supp(g)
      std::vector<char> allowed(q.arrow_count(), 0);
      for (ArrowId a = 0; a < q.arrow_count(); ++a) {
        bool inside = true;
        for (std::size_t k = 0; k < g.label.size(); ++k)
          if (arrow_labels_[a].exps[k] > 0 && g.label.exps[k] == 0) inside = false;
        allowed[a] = inside;
      }
      for (VertexId j = 0; j < q.vertex_count() && !e.obstruction_vertex; ++j) {
        std::vector<char> seen(q.vertex_count(), 0);
        std::vector<VertexId> stack;
        bool back = false;
        for (ArrowId a : q.out_arrows(j))
          if (allowed[a] && !seen[q.arrow(a).head]) {
            seen[q.arrow(a).head] = 1;
            stack.push_back(q.arrow(a).head);
          }
        while (!stack.empty()) {
          VertexId v = stack.back();
          stack.pop_back();
          if (v == j) back = true;
          for (ArrowId a : q.out_arrows(v))
            if (allowed[a] && !seen[q.arrow(a).head]) {
              seen[q.arrow(a).head] = 1;
              stack.push_back(q.arrow(a).head);
            }
        }
        if (!back) e.obstruction_vertex = j;
      }
    }
    e.generator = std::move(g);
    r.entries.push_back(std::move(e));
  }
  std::optional<std::size_t> unpowered;
  for (std::size_t k = 0; k < r.entries.size(); ++k) {
    if (r.entries[k].obstruction_vertex && !r.witness) r.witness = k;
    if (!r.entries[k].power && !unpowered) unpowered = k;
  }
  if (r.witness) r.verdict = NoetherianVerdict::NotNoetherian;
  else if (unpowered) {
    r.verdict = NoetherianVerdict::Inconclusive;
    r.witness = unpowered;
  } else r.verdict = NoetherianVerdict::Certified;
  return r;
}

DepictionReport CentralGeometry::depiction_report(int degree, int nmax,
                                                  const std::vector<std::optional<Path>>& gammas) const {
  DepictionReport r;
  r.degree = degree;
  SemigroupSample center = center_sample(degree), cyc = cycle_algebra_sample(degree);
  for (int d = 0; d <= degree; ++d) r.per_degree[d] = {0, 0};
  for (auto [d, c] : center.count_by_degree()) r.per_degree[d].first = c;
  for (auto [d, c] : cyc.count_by_degree()) r.per_degree[d].second = c;
  r.center_equals_cycle_algebra = center.elements == cyc.elements;
  r.agreement = sigma_inverted_agreement(degree, gammas);
  r.noetherian = noetherian_center_test(nmax);
  r.note = "monomial-level evidence only; surjectivity of the induced map on prime spectra is not checked";
  if (!note_.empty()) r.note += "; " + note_;
  return r;
}

}  // namespace ghor
