#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qliar {

using Amplitude = std::complex<double>;

inline constexpr double kEpsNorm = 1e-9;
inline constexpr double kEpsZero = 1e-12;

// Pure state over a tensor product of finite sites. Index encoding is mixed
// radix with the leftmost site most significant, so |ab> sits at a*d1 + b.
class StateVector {
 public:
  StateVector(std::vector<std::size_t> dims, std::vector<Amplitude> amplitudes);

  // Computational basis state with the given per-site digits.
  static StateVector basis_state(std::vector<std::size_t> dims, std::span<const std::size_t> digits);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  std::size_t site_count() const { return dims_.size(); }
  std::size_t size() const { return amps_.size(); }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const;
  std::size_t index_of(std::span<const std::size_t> digits) const;
  std::vector<std::size_t> digits_of(std::size_t index) const;

  bool operator==(const StateVector&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<Amplitude> amps_;
};

// Complete orthonormal basis of a d-dimensional space with one label per
// vector. Which sites it acts on is decided by the caller.
class Basis {
 public:
  Basis(std::vector<std::vector<Amplitude>> vectors, std::vector<std::string> labels);

  static Basis computational(std::size_t dim = 2);
  // {|+>, |->} with labels "+" and "-".
  static Basis diagonal();

  std::size_t dim() const { return vectors_.size(); }
  const std::vector<std::vector<Amplitude>>& vectors() const { return vectors_; }
  const std::vector<Amplitude>& vector(std::size_t i) const { return vectors_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find_label(const std::string& label) const;

  bool operator==(const Basis&) const = default;

 private:
  std::vector<std::vector<Amplitude>> vectors_;
  std::vector<std::string> labels_;
};

// A basis applied to a group of sites. Group order fixes how the group's
// digits combine into one index (first listed site most significant).
struct BasisFactor {
  std::vector<std::size_t> sites;
  Basis basis;

  bool operator==(const BasisFactor&) const = default;
};

class ProductBasis {
 public:
  explicit ProductBasis(std::vector<BasisFactor> factors);

  const std::vector<BasisFactor>& factors() const { return factors_; }
  std::vector<std::size_t> measured_sites() const;
  std::vector<std::size_t> unmeasured_sites(std::size_t site_count) const;
  std::size_t outcome_count() const;

  // Label tuple of the outcome at a given flat position (leftmost factor
  // most significant), and its inverse.
  std::vector<std::string> outcome_labels(std::size_t flat) const;
  std::optional<std::size_t> outcome_index(std::span<const std::string> labels) const;

  bool operator==(const ProductBasis&) const = default;

 private:
  std::vector<BasisFactor> factors_;
};

class Distribution {
 public:
  struct Entry {
    std::vector<std::string> outcome;
    double probability;
  };

  explicit Distribution(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double total() const;
  // Probability of an outcome tuple; throws std::out_of_range if unknown.
  double at(std::span<const std::string> outcome) const;
  double at(std::initializer_list<std::string> outcome) const;

 private:
  std::vector<Entry> entries_;
};

struct Projection {
  double probability = 0.0;
  std::optional<StateVector> state;  // empty for an impossible branch
};

StateVector tensor(const StateVector& a, const StateVector& b);

Distribution born(const StateVector& state, const ProductBasis& basis);

Projection project(const StateVector& state, const ProductBasis& basis,
                   std::span<const std::string> outcome);

// Observer-as-unitary: each component |b_i> of the measured group is mapped
// to |b_i>|M_i>, with the memory site of dimension basis.dim() inserted right
// after the last site of the group.
StateVector premeasure(const StateVector& state, std::span<const std::size_t> sites, const Basis& basis);
StateVector premeasure(const StateVector& state, std::size_t site, const Basis& basis);

// Inner product <a|b>.
Amplitude inner(const StateVector& a, const StateVector& b);

}  // namespace qliar
