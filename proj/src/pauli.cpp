#include "lapkit/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>

#include "lapkit/error.hpp"

namespace lapkit {

namespace {

using Mask = std::uint64_t;

char letter(bool x, bool z) { return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I'); }

std::string word(Mask x, Mask z, int n) {
  std::string s(n, 'I');
  for (int q = 0; q < n; ++q) s[n - 1 - q] = letter((x >> q) & 1U, (z >> q) & 1U);
  return s;
}

void parse_word(const std::string& s, Mask& x, Mask& z) {
  x = z = 0;
  const int n = static_cast<int>(s.size());
  for (int q = 0; q < n; ++q) {
    const char c = s[n - 1 - q];
    if (c == 'X' || c == 'Y') x |= Mask{1} << q;
    if (c == 'Z' || c == 'Y') z |= Mask{1} << q;
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') throw Error(ErrorCode::InvalidValue, "bad Pauli letter");
  }
}

std::complex<double> i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// <row| P |row ^ x> = i^popcount(x & z) (-1)^popcount(z & (row ^ x)).
std::complex<double> string_element(Mask x, Mask z, Mask row, Mask col) {
  if ((row ^ col) != x) return {0.0, 0.0};
  const int sign = std::popcount(z & col) & 1;
  return i_power(std::popcount(x & z)) * (sign ? -1.0 : 1.0);
}

void fwht(std::vector<double>& v) {
  const std::size_t n = v.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

}  // namespace

int qubits_for(Index n) {
  if (n < 1 || !std::has_single_bit(static_cast<std::uint64_t>(n))) {
    throw Error(ErrorCode::NonPowerOfTwo, "dimension " + std::to_string(n) + " is not a power of two");
  }
  return std::countr_zero(static_cast<std::uint64_t>(n));
}

HermitizeResult hermitize(const SparseMatrixCSR& a) {
  if (!a.square()) throw Error(ErrorCode::NonSquare, "hermitize needs a square matrix");
  qubits_for(a.nrows);
  if (is_symmetric(a, 1e-12)) return {a, false};
  const Index n = a.nrows;
  std::vector<Triplet> t;
  t.reserve(2 * a.nnz());
  for (Index i = 0; i < n; ++i) {
    for (Index k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      t.push_back({i, n + a.col_idx[k], a.values[k]});
      t.push_back({n + a.col_idx[k], i, a.values[k]});
    }
  }
  return {from_triplets(2 * n, 2 * n, std::move(t)), true};
}

PauliDecomposition decompose(const SparseMatrixCSR& a, double tol) {
  if (!a.square()) throw Error(ErrorCode::NonSquare, "decompose needs a square matrix");
  const int n = qubits_for(a.nrows);
  if (n < 1) throw Error(ErrorCode::NonPowerOfTwo, "decompose needs at least one qubit");
  if (n > 30) throw Error(ErrorCode::TooLarge, "too many qubits for decomposition");

  std::map<Mask, std::vector<std::pair<Mask, double>>> slices;
  for (Index i = 0; i < a.nrows; ++i) {
    for (Index k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      slices[static_cast<Mask>(i) ^ static_cast<Mask>(a.col_idx[k])].emplace_back(i, a.values[k]);
    }
  }

  PauliDecomposition out;
  out.n_qubits = n;
  out.tolerance = tol;
  const double norm = std::ldexp(1.0, -n);
  std::vector<double> v(a.nrows);
  for (const auto& [x, entries] : slices) {
    std::fill(v.begin(), v.end(), 0.0);
    double peak = 0.0;
    // Indexed by column so the transform sign is (-1)^popcount(z & col).
    for (const auto& [row, value] : entries) {
      v[row ^ x] = value;
      peak = std::max(peak, std::abs(value));
    }
    if (peak <= tol) continue;
    fwht(v);
    for (Mask z = 0; z < static_cast<Mask>(a.nrows); ++z) {
      const double w = v[z] * norm;
      if (std::abs(w) <= tol) continue;
      out.terms.push_back({word(x, z, n), std::conj(i_power(std::popcount(x & z))) * w});
    }
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const PauliTerm& p, const PauliTerm& q) { return p.string < q.string; });
  return out;
}

std::complex<double> reconstruct_entry(const PauliDecomposition& d, Index row, Index col) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& t : d.terms) {
    Mask x = 0;
    Mask z = 0;
    parse_word(t.string, x, z);
    acc += t.coefficient * string_element(x, z, static_cast<Mask>(row), static_cast<Mask>(col));
  }
  return acc;
}

std::vector<std::complex<double>> reconstruct_dense(const PauliDecomposition& d) {
  const Index dim = Index{1} << d.n_qubits;
  std::vector<std::complex<double>> m(static_cast<std::size_t>(dim * dim));
  for (const auto& t : d.terms) {
    Mask x = 0;
    Mask z = 0;
    parse_word(t.string, x, z);
    for (Index r = 0; r < dim; ++r) {
      const Index c = static_cast<Index>(static_cast<Mask>(r) ^ x);
      m[r * dim + c] += t.coefficient * string_element(x, z, r, c);
    }
  }
  return m;
}

std::vector<std::complex<double>> pauli_matrix(const std::string& string) {
  Mask x = 0;
  Mask z = 0;
  parse_word(string, x, z);
  const Index dim = Index{1} << string.size();
  std::vector<std::complex<double>> m(static_cast<std::size_t>(dim * dim));
  for (Index r = 0; r < dim; ++r) {
    const Index c = static_cast<Index>(static_cast<Mask>(r) ^ x);
    m[r * dim + c] = string_element(x, z, r, c);
  }
  return m;
}

PrepSelectStats prep_select_stats(const SparseMatrixCSR& original, const PauliDecomposition& d, bool hermitized) {
  if (d.terms.empty()) throw Error(ErrorCode::EmptyDecomposition, "no Pauli strings above tolerance");
  PrepSelectStats s;
  s.num_strings = static_cast<std::int64_t>(d.terms.size());
  s.hermitized = hermitized;
  s.system_qubits = qubits_for(original.nrows) + 1;
  s.select_qubits = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(s.num_strings - 1)));
  s.total_qubits = s.system_qubits + s.select_qubits;
  s.normalized_count = static_cast<double>(s.num_strings) / static_cast<double>(original.nnz());
  return s;
}

std::string to_text(const PauliDecomposition& d) {
  std::string out;
  char buf[96];
  for (const auto& t : d.terms) {
    if (t.coefficient.imag() == 0.0) {
      std::snprintf(buf, sizeof buf, " %.17g\n", t.coefficient.real());
    } else {
      std::snprintf(buf, sizeof buf, " %.17g%+.17gi\n", t.coefficient.real(), t.coefficient.imag());
    }
    out += t.string;
    out += buf;
  }
  return out;
}

}  // namespace lapkit
