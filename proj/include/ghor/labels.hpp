#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghor/matchings.hpp"
#include "ghor/quiver.hpp"

namespace ghor {

enum class Basis { Perfect, Simple };

const char* basis_name(Basis b);

// Exponents of a monomial in the matching variables. The all-ones vector is
// sigma.
struct ExponentVector {
  std::vector<int64_t> exps;
  Basis basis = Basis::Perfect;

  std::size_t size() const { return exps.size(); }
  int64_t degree() const;
  bool nonnegative() const;

  ExponentVector& operator+=(const ExponentVector& o);
  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
  friend ExponentVector operator-(const ExponentVector& a, const ExponentVector& b);
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend auto operator<=>(const ExponentVector& a, const ExponentVector& b) { return a.exps <=> b.exps; }
};

ExponentVector zero_vector(Basis b, std::size_t n);
ExponentVector sigma_vector(Basis b, std::size_t n);
ExponentVector scaled_sigma(const ExponentVector& like, int64_t m);

ExponentVector eta_bar(const DimerQuiver& q, const MatchingIndex& ix, const Path& p);
ExponentVector tau_bar(const DimerQuiver& q, const MatchingIndex& ix, const Path& p);
ExponentVector arrow_label(const MatchingIndex& ix, ArrowId a, Basis b);

// l with u - v = l * sigma, if any. Throws PreconditionError on a basis or
// length mismatch.
std::optional<int64_t> sigma_equal(const ExponentVector& u, const ExponentVector& v);

// Subtracts the largest sigma power that keeps every exponent nonnegative.
struct SigmaNormal {
  ExponentVector reduced;
  int64_t power = 0;
};
SigmaNormal sigma_normal(const ExponentVector& v);

// Same endpoints and equal eta labels: equal in the algebra kQ / ker eta.
bool paths_equal_mod_ker(const DimerQuiver& q, const MatchingIndex& ix, const Path& a, const Path& b);

std::string to_string(const ExponentVector& v);
// Monomial in the matching names, e.g. "x0^2 x3" (matchings numbered in index order).
std::string monomial(const ExponentVector& v);

}  // namespace ghor
