#pragma once

// Pure n-qubit stabilizer states (n <= 3), generated as the orbit of |0...0>
// under single-qubit H, S and all CNOTs.

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <vector>

#include "relmagic/bloch.hpp"
#include "relmagic/errors.hpp"
#include "relmagic/qmat.hpp"

namespace relmagic {

struct PureStabilizer {
  int label = 0;                  // position in the canonical (sorted) order
  std::vector<cplx> amplitudes;   // normalized, global phase fixed
  DensityMatrix projector;
};

// Gate set generating the n-qubit Clifford group: H_i, S_i for every qubit and
// CNOT_ij for every ordered pair. Qubit 0 is the most significant tensor factor.
inline std::vector<Matrix> clifford_generators(int n) {
  const std::size_t dim = std::size_t{1} << n;
  const Matrix h{{M_SQRT1_2, M_SQRT1_2}, {M_SQRT1_2, -M_SQRT1_2}};
  const Matrix s{{1.0, 0.0}, {0.0, cplx(0.0, 1.0)}};
  auto on_qubit = [&](const Matrix& g, int q) {
    Matrix m = q == 0 ? g : Matrix::identity(2);
    for (int k = 1; k < n; ++k) m = tensor(m, k == q ? g : Matrix::identity(2));
    return m;
  };
  std::vector<Matrix> gates;
  for (int q = 0; q < n; ++q) {
    gates.push_back(on_qubit(h, q));
    gates.push_back(on_qubit(s, q));
  }
  for (int c = 0; c < n; ++c)
    for (int t = 0; t < n; ++t) {
      if (c == t) continue;
      Matrix m(dim);
      const std::size_t cbit = std::size_t{1} << (n - 1 - c), tbit = std::size_t{1} << (n - 1 - t);
      for (std::size_t b = 0; b < dim; ++b) m((b & cbit) ? (b ^ tbit) : b, b) = 1.0;
      gates.push_back(m);
    }
  return gates;
}

namespace detail {

inline std::vector<cplx> apply(const Matrix& g, const std::vector<cplx>& v) {
  std::vector<cplx> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += g(i, j) * v[j];
  return out;
}

// Projector entries rounded to 1e-9: identifies a state up to global phase.
inline std::vector<std::int64_t> projector_key(const std::vector<cplx>& v) {
  std::vector<std::int64_t> key;
  key.reserve(2 * v.size() * v.size());
  for (const auto& a : v)
    for (const auto& b : v) {
      const cplx e = a * std::conj(b);
      key.push_back(std::llround(e.real() * 1e9));
      key.push_back(std::llround(e.imag() * 1e9));
    }
  return key;
}

inline std::vector<cplx> fix_phase(std::vector<cplx> v) {
  for (const auto& a : v) {
    if (std::abs(a) > 1e-9) {
      const cplx phase = std::conj(a) / std::abs(a);
      for (auto& b : v) {
        b *= phase;
        if (std::abs(b.real()) < 1e-15) b.real(0.0);
        if (std::abs(b.imag()) < 1e-15) b.imag(0.0);
      }
      break;
    }
  }
  return v;
}

inline std::vector<PureStabilizer> generate_stabilizers(int n) {
  const auto gates = clifford_generators(n);
  std::vector<cplx> zero(std::size_t{1} << n);
  zero[0] = 1.0;

  std::map<std::vector<std::int64_t>, std::vector<cplx>> seen;
  std::deque<std::vector<cplx>> frontier{zero};
  seen.emplace(projector_key(zero), zero);
  while (!frontier.empty()) {
    const auto v = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : gates) {
      auto w = apply(g, v);
      auto key = projector_key(w);
      if (seen.find(key) == seen.end()) {
        seen.emplace(std::move(key), w);
        frontier.push_back(std::move(w));
      }
    }
  }

  std::vector<PureStabilizer> out;
  out.reserve(seen.size());
  int label = 0;
  for (auto& [key, v] : seen) {
    auto amps = fix_phase(std::move(v));
    DensityMatrix proj = DensityMatrix::pure(amps);
    out.push_back({label++, std::move(amps), std::move(proj)});
  }
  return out;
}

}  // namespace detail

inline constexpr int kMaxStabilizerQubits = 3;

// Known orbit size prod_{k=1..n} (2^k + 1) * 2^n.
inline std::size_t stabilizer_count(int n) {
  std::size_t c = std::size_t{1} << n;
  for (int k = 1; k <= n; ++k) c *= (std::size_t{1} << k) + 1;
  return c;
}

// Cached after the first call; the returned list is immutable.
inline const std::vector<PureStabilizer>& enumerate_pure_stabilizers(int n) {
  if (n < 1 || n > kMaxStabilizerQubits)
    throw InvalidInput("enumerate_pure_stabilizers: n must be in 1..3, got " + std::to_string(n));
  static std::array<std::once_flag, kMaxStabilizerQubits> flags;
  static std::array<std::vector<PureStabilizer>, kMaxStabilizerQubits> cache;
  std::call_once(flags[n - 1], [n] {
    cache[n - 1] = detail::generate_stabilizers(n);
    if (cache[n - 1].size() != stabilizer_count(n))
      throw ConsistencyError("enumerate_pure_stabilizers: orbit size " + std::to_string(cache[n - 1].size()) +
                             " differs from " + std::to_string(stabilizer_count(n)));
  });
  return cache[n - 1];
}

}  // namespace relmagic
