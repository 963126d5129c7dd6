#include "qliar/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qliar {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
  return strides;
}

// Addressing of one site group inside a full index: flat offset of each group
// value, and the group value of each full index.
struct GroupMap {
  std::vector<std::size_t> offset_of_value;
  std::vector<std::size_t> value_of_index;
};

GroupMap map_group(std::span<const std::size_t> dims, std::span<const std::size_t> sites) {
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] >= dims.size()) throw std::invalid_argument("site index out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (sites[i] == sites[j]) throw std::invalid_argument("duplicate site in measured group");
  }
  const auto strides = strides_of(dims);
  std::vector<std::size_t> group_dims;
  for (auto s : sites) group_dims.push_back(dims[s]);
  const std::size_t group_size = product(group_dims);
  const auto group_strides = strides_of(group_dims);

  GroupMap m;
  m.offset_of_value.resize(group_size);
  for (std::size_t v = 0; v < group_size; ++v) {
    std::size_t off = 0;
    for (std::size_t g = 0; g < sites.size(); ++g) off += ((v / group_strides[g]) % group_dims[g]) * strides[sites[g]];
    m.offset_of_value[v] = off;
  }
  const std::size_t total = product(dims);
  m.value_of_index.resize(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t v = 0;
    for (std::size_t g = 0; g < sites.size(); ++g) v += ((idx / strides[sites[g]]) % dims[sites[g]]) * group_strides[g];
    m.value_of_index[idx] = v;
  }
  return m;
}

// Rewrites the group's digits from computational coordinates into basis
// coordinates: out[.., k, ..] = sum_j conj(b_k[j]) in[.., j, ..].
std::vector<Amplitude> to_basis_coordinates(std::span<const Amplitude> amps, const GroupMap& g, const Basis& basis) {
  std::vector<Amplitude> out(amps.size());
  const std::size_t d = basis.dim();
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    if (amps[idx] == Amplitude{}) continue;
    const std::size_t j = g.value_of_index[idx];
    const std::size_t base = idx - g.offset_of_value[j];
    for (std::size_t k = 0; k < d; ++k) out[base + g.offset_of_value[k]] += std::conj(basis.vector(k)[j]) * amps[idx];
  }
  return out;
}

std::vector<Amplitude> from_basis_coordinates(std::span<const Amplitude> coords, const GroupMap& g, const Basis& basis) {
  std::vector<Amplitude> out(coords.size());
  const std::size_t d = basis.dim();
  for (std::size_t idx = 0; idx < coords.size(); ++idx) {
    if (coords[idx] == Amplitude{}) continue;
    const std::size_t k = g.value_of_index[idx];
    const std::size_t base = idx - g.offset_of_value[k];
    for (std::size_t j = 0; j < d; ++j) out[base + g.offset_of_value[j]] += basis.vector(k)[j] * coords[idx];
  }
  return out;
}

void check_factor_dims(const StateVector& state, const BasisFactor& f) {
  std::size_t dim = 1;
  for (auto s : f.sites) {
    if (s >= state.site_count()) throw std::invalid_argument("basis refers to site " + std::to_string(s) + " outside the state");
    dim *= state.dims()[s];
  }
  if (dim != f.basis.dim())
    throw std::invalid_argument("basis dimension " + std::to_string(f.basis.dim()) + " does not match site group dimension " +
                                std::to_string(dim));
}

struct Coordinates {
  std::vector<Amplitude> amps;
  std::vector<GroupMap> groups;
};

Coordinates measurement_coordinates(const StateVector& state, const ProductBasis& basis) {
  Coordinates c{state.amplitudes(), {}};
  for (const auto& f : basis.factors()) {
    check_factor_dims(state, f);
    c.groups.push_back(map_group(state.dims(), f.sites));
    c.amps = to_basis_coordinates(c.amps, c.groups.back(), f.basis);
  }
  return c;
}

std::size_t flat_outcome(const Coordinates& c, const ProductBasis& basis, std::size_t idx) {
  std::size_t flat = 0;
  for (std::size_t f = 0; f < c.groups.size(); ++f) flat = flat * basis.factors()[f].basis.dim() + c.groups[f].value_of_index[idx];
  return flat;
}

}  // namespace

StateVector::StateVector(std::vector<std::size_t> dims, std::vector<Amplitude> amplitudes)
    : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  if (dims_.empty()) throw std::invalid_argument("state needs at least one site");
  for (auto d : dims_)
    if (d < 2) throw std::invalid_argument("site dimension must be at least 2");
  if (amps_.size() != product(dims_))
    throw std::invalid_argument("amplitude count " + std::to_string(amps_.size()) + " does not match site dimensions");
  if (std::abs(norm_squared() - 1.0) > kEpsNorm) throw std::invalid_argument("state is not normalized");
}

StateVector StateVector::basis_state(std::vector<std::size_t> dims, std::span<const std::size_t> digits) {
  std::vector<Amplitude> amps(product(dims));
  if (digits.size() != dims.size()) throw std::invalid_argument("digit count does not match site count");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (digits[i] >= dims[i]) throw std::invalid_argument("digit out of range");
    idx = idx * dims[i] + digits[i];
  }
  amps[idx] = 1.0;
  return StateVector(std::move(dims), std::move(amps));
}

double StateVector::norm_squared() const {
  double n = 0.0;
  for (const auto& a : amps_) n += std::norm(a);
  return n;
}

std::size_t StateVector::index_of(std::span<const std::size_t> digits) const {
  if (digits.size() != dims_.size()) throw std::invalid_argument("digit count does not match site count");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (digits[i] >= dims_[i]) throw std::invalid_argument("digit out of range");
    idx = idx * dims_[i] + digits[i];
  }
  return idx;
}

std::vector<std::size_t> StateVector::digits_of(std::size_t index) const {
  std::vector<std::size_t> digits(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    digits[i] = index % dims_[i];
    index /= dims_[i];
  }
  return digits;
}

Basis::Basis(std::vector<std::vector<Amplitude>> vectors, std::vector<std::string> labels)
    : vectors_(std::move(vectors)), labels_(std::move(labels)) {
  const std::size_t d = vectors_.size();
  if (d < 2) throw std::invalid_argument("basis needs at least two vectors");
  if (labels_.size() != d) throw std::invalid_argument("basis needs one label per vector");
  for (std::size_t i = 0; i < d; ++i) {
    if (vectors_[i].size() != d) throw std::invalid_argument("basis vector length does not match basis size");
    if (labels_[i].empty()) throw std::invalid_argument("empty basis label");
    for (std::size_t j = 0; j < i; ++j)
      if (labels_[i] == labels_[j]) throw std::invalid_argument("duplicate basis label '" + labels_[i] + "'");
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Amplitude ip{};
      for (std::size_t k = 0; k < d; ++k) ip += std::conj(vectors_[i][k]) * vectors_[j][k];
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(ip - expected) > kEpsNorm) throw std::invalid_argument("basis vectors are not orthonormal");
    }
  }
}

Basis Basis::computational(std::size_t dim) {
  std::vector<std::vector<Amplitude>> v(dim, std::vector<Amplitude>(dim));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dim; ++i) {
    v[i][i] = 1.0;
    labels.push_back(std::to_string(i));
  }
  return Basis(std::move(v), std::move(labels));
}

Basis Basis::diagonal() {
  const double h = 1.0 / std::sqrt(2.0);
  return Basis({{h, h}, {h, -h}}, {"+", "-"});
}

std::optional<std::size_t> Basis::find_label(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

ProductBasis::ProductBasis(std::vector<BasisFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("product basis needs at least one factor");
  std::vector<std::size_t> seen;
  for (const auto& f : factors_) {
    if (f.sites.empty()) throw std::invalid_argument("basis factor without sites");
    for (auto s : f.sites) {
      if (std::find(seen.begin(), seen.end(), s) != seen.end())
        throw std::invalid_argument("site " + std::to_string(s) + " measured twice");
      seen.push_back(s);
    }
  }
}

std::vector<std::size_t> ProductBasis::measured_sites() const {
  std::vector<std::size_t> out;
  for (const auto& f : factors_) out.insert(out.end(), f.sites.begin(), f.sites.end());
  return out;
}

std::vector<std::size_t> ProductBasis::unmeasured_sites(std::size_t site_count) const {
  const auto measured = measured_sites();
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < site_count; ++s)
    if (std::find(measured.begin(), measured.end(), s) == measured.end()) out.push_back(s);
  return out;
}

std::size_t ProductBasis::outcome_count() const {
  std::size_t n = 1;
  for (const auto& f : factors_) n *= f.basis.dim();
  return n;
}

std::vector<std::string> ProductBasis::outcome_labels(std::size_t flat) const {
  std::vector<std::string> labels(factors_.size());
  for (std::size_t f = factors_.size(); f-- > 0;) {
    const auto d = factors_[f].basis.dim();
    labels[f] = factors_[f].basis.labels()[flat % d];
    flat /= d;
  }
  return labels;
}

std::optional<std::size_t> ProductBasis::outcome_index(std::span<const std::string> labels) const {
  if (labels.size() != factors_.size()) return std::nullopt;
  std::size_t flat = 0;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    auto k = factors_[f].basis.find_label(labels[f]);
    if (!k) return std::nullopt;
    flat = flat * factors_[f].basis.dim() + *k;
  }
  return flat;
}

Distribution::Distribution(std::vector<Entry> entries) : entries_(std::move(entries)) {}

double Distribution::total() const {
  double t = 0.0;
  for (const auto& e : entries_) t += e.probability;
  return t;
}

double Distribution::at(std::span<const std::string> outcome) const {
  for (const auto& e : entries_)
    if (std::equal(e.outcome.begin(), e.outcome.end(), outcome.begin(), outcome.end())) return e.probability;
  throw std::out_of_range("outcome not in distribution");
}

double Distribution::at(std::initializer_list<std::string> outcome) const {
  return at(std::span<const std::string>(outcome.begin(), outcome.size()));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<Amplitude> amps;
  amps.reserve(a.size() * b.size());
  for (const auto& x : a.amplitudes())
    for (const auto& y : b.amplitudes()) amps.push_back(x * y);
  return StateVector(std::move(dims), std::move(amps));
}

Distribution born(const StateVector& state, const ProductBasis& basis) {
  const auto coords = measurement_coordinates(state, basis);
  std::vector<double> probs(basis.outcome_count(), 0.0);
  for (std::size_t idx = 0; idx < coords.amps.size(); ++idx) probs[flat_outcome(coords, basis, idx)] += std::norm(coords.amps[idx]);
  std::vector<Distribution::Entry> entries;
  entries.reserve(probs.size());
  for (std::size_t k = 0; k < probs.size(); ++k) entries.push_back({basis.outcome_labels(k), std::clamp(probs[k], 0.0, 1.0)});
  return Distribution(std::move(entries));
}

Projection project(const StateVector& state, const ProductBasis& basis, std::span<const std::string> outcome) {
  const auto target = basis.outcome_index(outcome);
  if (!target) throw std::invalid_argument("unknown outcome label for this basis");
  auto coords = measurement_coordinates(state, basis);
  double p = 0.0;
  for (std::size_t idx = 0; idx < coords.amps.size(); ++idx) {
    if (flat_outcome(coords, basis, idx) == *target)
      p += std::norm(coords.amps[idx]);
    else
      coords.amps[idx] = Amplitude{};
  }
  Projection result{std::clamp(p, 0.0, 1.0), std::nullopt};
  if (p < kEpsZero) return result;
  for (std::size_t f = basis.factors().size(); f-- > 0;)
    coords.amps = from_basis_coordinates(coords.amps, coords.groups[f], basis.factors()[f].basis);
  const double scale = 1.0 / std::sqrt(p);
  for (auto& a : coords.amps) a *= scale;
  result.state = StateVector(state.dims(), std::move(coords.amps));
  return result;
}

StateVector premeasure(const StateVector& state, std::span<const std::size_t> sites, const Basis& basis) {
  BasisFactor factor{{sites.begin(), sites.end()}, basis};
  check_factor_dims(state, factor);
  const auto group = map_group(state.dims(), sites);
  const auto coords = to_basis_coordinates(state.amplitudes(), group, basis);

  const std::size_t d = basis.dim();
  const std::size_t memory_pos = *std::max_element(sites.begin(), sites.end()) + 1;
  std::vector<std::size_t> dims = state.dims();
  dims.insert(dims.begin() + static_cast<std::ptrdiff_t>(memory_pos), d);
  // Memory digit splits the old index into a high part (sites before the
  // memory) and a low part (sites after it).
  std::size_t low = 1;
  for (std::size_t s = memory_pos; s < state.site_count(); ++s) low *= state.dims()[s];

  std::vector<Amplitude> amps(state.size() * d);
  for (std::size_t idx = 0; idx < coords.size(); ++idx) {
    if (coords[idx] == Amplitude{}) continue;
    const std::size_t m = group.value_of_index[idx];
    const std::size_t base = idx - group.offset_of_value[m];
    for (std::size_t j = 0; j < d; ++j) {
      const Amplitude a = basis.vector(m)[j] * coords[idx];
      if (a == Amplitude{}) continue;
      const std::size_t old = base + group.offset_of_value[j];
      const std::size_t hi = old / low;
      const std::size_t lo = old % low;
      amps[(hi * d + m) * low + lo] += a;
    }
  }
  return StateVector(std::move(dims), std::move(amps));
}

StateVector premeasure(const StateVector& state, std::size_t site, const Basis& basis) {
  const std::size_t sites[] = {site};
  return premeasure(state, std::span<const std::size_t>(sites), basis);
}

Amplitude inner(const StateVector& a, const StateVector& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("inner product of states with different site layouts");
  Amplitude ip{};
  for (std::size_t i = 0; i < a.size(); ++i) ip += std::conj(a[i]) * b[i];
  return ip;
}

}  // namespace qliar
