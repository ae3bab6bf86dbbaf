#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghor/cycles.hpp"
#include "ghor/labels.hpp"

namespace ghor {

struct SemigroupSample {
  Basis basis = Basis::Simple;
  int degree = 0;
  std::vector<ExponentVector> elements;    // sorted, includes zero
  std::vector<ExponentVector> generators;  // irreducible within the sample

  bool contains(const ExponentVector& v) const;
  std::map<int64_t, std::size_t> count_by_degree() const;
  SemigroupSample slice(int d) const;
  nlohmann::json to_json() const;
};

struct LatticeSummary {
  std::vector<std::vector<int64_t>> matrix;
  int rank = 0;
  std::vector<int64_t> elementary_divisors;

  nlohmann::json to_json() const;
};

// Rank of the integer lattice spanned by the vectors, via Smith normal form.
// Throws Error on int64 overflow.
LatticeSummary krull_dimension(const std::vector<ExponentVector>& vectors);
LatticeSummary smith_summary(std::vector<std::vector<int64_t>> matrix);

struct GeneratorRecord {
  Path cycle;
  ClassVector cls;
  ExponentVector label;
};

struct TReport {
  LatticeSummary lattice;
  int expected_rank = 0;
  // l with tau(gamma_k) + tau(gamma_{k+N}) = l * sigma, for k = 1..N
  std::vector<std::optional<int64_t>> normalization;

  bool rank_ok() const { return lattice.rank == expected_rank; }
  bool normalized() const;
  nlohmann::json to_json() const;
};

struct AgreementEntry {
  GeneratorRecord generator;
  std::optional<int> center_shift;  // m with s + m*sigma in the centre
  std::vector<int> t_exponents;     // powers of gamma_1..gamma_2N
  std::optional<int64_t> t_sigma_power;
};

struct AgreementReport {
  int max_shift = 0;
  bool t_available = false;
  std::vector<AgreementEntry> entries;

  bool all_in_center() const;
  bool all_in_t() const;
  nlohmann::json to_json(const DimerQuiver& q) const;
};

enum class NoetherianVerdict { Certified, NotNoetherian, Inconclusive };
const char* verdict_name(NoetherianVerdict v);

struct NoetherianReport {
  NoetherianVerdict verdict = NoetherianVerdict::Inconclusive;
  int nmax = 0;
  struct Entry {
    GeneratorRecord generator;
    std::optional<int> power;                    // least n <= nmax with n*g in the centre
    std::optional<VertexId> obstruction_vertex;  // no closed walk there within supp(g)
  };
  std::vector<Entry> entries;
  std::optional<std::size_t> witness;  // entry proving the verdict, when not certified

  nlohmann::json to_json(const DimerQuiver& q) const;
};

struct DepictionReport {
  int degree = 0;
  std::map<int64_t, std::pair<std::size_t, std::size_t>> per_degree;  // degree -> (|R|, |S|)
  bool center_equals_cycle_algebra = false;
  AgreementReport agreement;
  NoetherianReport noetherian;
  std::string note;

  nlohmann::json to_json(const DimerQuiver& q) const;
};

// Centre and cycle algebra of one quiver, as semigroups of labels. Labels use
// the simple matchings when every arrow lies in one, else all perfect
// matchings (and the centre identification then carries no guarantee).
class CentralGeometry {
 public:
  explicit CentralGeometry(const CycleTopology& topology);

  Basis basis() const { return basis_; }
  const std::string& mode_note() const { return note_; }
  // 2 * (longest path without a cyclic proper subpath + 1)
  int default_degree() const;

  ExponentVector label(const Path& p) const;

  SemigroupSample vertex_semigroup(VertexId i, int degree) const;
  SemigroupSample center_sample(int degree) const;
  SemigroupSample cycle_algebra_sample(int degree) const;
  std::vector<GeneratorRecord> cycle_algebra_generators() const;

  // Some closed walk at i has exactly this label.
  bool realizable_at(VertexId i, const ExponentVector& target) const;
  bool in_center(const ExponentVector& target) const;

  TReport t_subalgebra(const std::vector<std::optional<Path>>& gammas) const;
  AgreementReport sigma_inverted_agreement(int max_shift, const std::vector<std::optional<Path>>& gammas) const;
  NoetherianReport noetherian_center_test(int nmax) const;
  DepictionReport depiction_report(int degree, int nmax, const std::vector<std::optional<Path>>& gammas) const;

 private:
  std::size_t width() const;
  SemigroupSample finish(std::vector<ExponentVector> elements, int degree) const;

  const CycleTopology& top_;
  Basis basis_;
  std::string note_;
  std::vector<ExponentVector> arrow_labels_;
};

int longest_path_without_cyclic_subpath(const DimerQuiver& q);

}  // namespace ghor
