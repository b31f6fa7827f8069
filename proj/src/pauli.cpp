// Copyright 2026 The ktr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ktr/pauli.hpp"

#include <bit>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "ktr/errors.hpp"

namespace ktr {
namespace {

int mod4(int k) { return ((k % 4) + 4) % 4; }

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

void require_same_n(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw DimensionMismatch("Pauli strings act on " + std::to_string(p.num_qubits()) + " and " +
                            std::to_string(q.num_qubits()) + " qubits");
  }
}

const cplx kPhases[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

std::string format_coeff(double c) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), c);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

PauliString::PauliString(int n, std::uint64_t x, std::uint64_t z, int phase_exp)
    : n_(n), x_(x), z_(z), phase_(mod4(phase_exp)) {
  if (n < 0 || n > kMaxPauliQubits) {
    throw ResourceLimit("Pauli strings support 0.." + std::to_string(kMaxPauliQubits) + " qubits, got " +
                        std::to_string(n));
  }
  if ((x & ~low_mask(n)) != 0 || (z & ~low_mask(n)) != 0) {
    throw DimensionMismatch("Pauli support exceeds " + std::to_string(n) + " qubits");
  }
}

PauliString PauliString::identity(int n) { return PauliString(n, 0, 0, 0); }

PauliString PauliString::from_label(std::string_view label) {
  if (label.empty()) throw ConfigError("empty Pauli label");
  const int n = static_cast<int>(label.size());
  if (n > kMaxPauliQubits) throw ResourceLimit("Pauli label longer than 64 qubits");
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (label[q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Z': z |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      default:
        throw ConfigError("invalid Pauli label character '" + std::string(1, label[q]) + "' in \"" +
                          std::string(label) + "\"");
    }
  }
  return PauliString(n, x, z, std::popcount(x & z));
}

PauliString PauliString::single(int n, int qubit, char op) {
  if (qubit < 0 || qubit >= n) throw DimensionMismatch("qubit index out of range");
  std::string label(static_cast<std::size_t>(n), 'I');
  label[qubit] = op;
  return from_label(label);
}

int PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }

bool PauliString::is_hermitian() const noexcept { return ((phase_ - y_count()) & 1) == 0; }

int PauliString::label_phase() const noexcept { return mod4(phase_ - y_count()); }

std::string PauliString::label() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) {
    const bool xb = (x_ >> q) & 1, zb = (z_ >> q) & 1;
    s[q] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return s;
}

PauliString PauliString::literal() const { return PauliString(n_, x_, z_, y_count()); }

PauliString PauliString::embedded(int n_total, int offset) const {
  if (offset < 0 || offset + n_ > n_total) throw DimensionMismatch("embedding exceeds register");
  return PauliString(n_total, x_ << offset, z_ << offset, phase_);
}

int symplectic_product(const PauliString& p, const PauliString& q) {
  require_same_n(p, q);
  return std::popcount((p.x() & q.z()) ^ (p.z() & q.x())) & 1;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  require_same_n(p, q);
  // Z^a X^b = (-1)^{a.b} X^b Z^a moves q's X-part left past p's Z-part.
  const int phase = p.phase_exp() + q.phase_exp() + 2 * std::popcount(p.z() & q.x());
  return PauliString(p.num_qubits(), p.x() ^ q.x(), p.z() ^ q.z(), phase);
}

PauliString tensor(const PauliString& p, const PauliString& q) {
  const int n = p.num_qubits() + q.num_qubits();
  if (n > kMaxPauliQubits) throw ResourceLimit("tensor product exceeds 64 qubits");
  return PauliString(n, p.x() | (q.x() << p.num_qubits()), p.z() | (q.z() << p.num_qubits()),
                     p.phase_exp() + q.phase_exp());
}

PauliSum::PauliSum(int n) : n_(n) {
  if (n < 1 || n > kMaxPauliQubits) throw ResourceLimit("Pauli sums need 1..64 qubits");
}

PauliSum::PauliSum(int n, std::initializer_list<std::pair<double, std::string_view>> terms) : PauliSum(n) {
  for (const auto& [c, label] : terms) add(c, label);
}

void PauliSum::add(double coeff, const PauliString& op) {
  if (op.num_qubits() != n_) {
    throw DimensionMismatch("term on " + std::to_string(op.num_qubits()) + " qubits added to a " +
                            std::to_string(n_) + "-qubit sum");
  }
  if (!std::isfinite(coeff)) throw ConfigError("non-finite Pauli coefficient");
  if (!op.is_hermitian()) throw InternalInconsistency("non-Hermitian string " + op.label() + " in Pauli sum");
  terms_.push_back({op.label_phase() == 2 ? -coeff : coeff, op.literal()});
}

void PauliSum::add(double coeff, std::string_view label) { add(coeff, PauliString::from_label(label)); }

double PauliSum::one_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

PauliSum PauliSum::normalized() const {
  PauliSum out(n_);
  for (const auto& t : terms_) {
    bool merged = false;
    for (auto& o : out.terms_) {
      if (o.op == t.op) {
        o.coeff += t.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) out.terms_.push_back(t);
  }
  std::erase_if(out.terms_, [](const PauliTerm& t) { return t.coeff == 0.0; });
  return out;
}

PauliSum build_iht_observable(const PauliSum& h, const PauliString& t) {
  if (t.num_qubits() != h.num_qubits()) throw DimensionMismatch("T and H act on different registers");
  if (!t.is_hermitian()) throw NotTimeReversal("T = " + t.label() + " is not Hermitian");
  PauliSum out(h.num_qubits());
  for (const auto& term : h.terms()) {
    if (symplectic_product(term.op, t) == 0) {
      throw NotTimeReversal("term " + term.op.label() + " commutes with T = " + t.label());
    }
    const PauliString prod = multiply(term.op, t);
    out.add(term.coeff, PauliString(prod.num_qubits(), prod.x(), prod.z(), prod.phase_exp() + 1));
  }
  return out;
}

std::uint64_t index_mask(std::uint64_t qubit_mask, int n) {
  std::uint64_t m = 0;
  for (int q = 0; q < n; ++q) {
    if ((qubit_mask >> q) & 1) m |= std::uint64_t{1} << (n - 1 - q);
  }
  return m;
}

Eigen::MatrixXcd dense_matrix(const PauliString& p, int cap) {
  const int n = p.num_qubits();
  if (n > cap) {
    throw ResourceLimit("dense matrix for " + std::to_string(n) + " qubits exceeds cap " + std::to_string(cap));
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t xi = index_mask(p.x(), n), zi = index_mask(p.z(), n);
  const cplx ph = kPhases[p.phase_exp()];
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t c = 0; c < dim; ++c) {
    m(static_cast<Eigen::Index>(c ^ xi), static_cast<Eigen::Index>(c)) = (std::popcount(zi & c) & 1) ? -ph : ph;
  }
  return m;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& h, int cap) {
  const int n = h.num_qubits();
  if (n > cap) {
    throw ResourceLimit("dense matrix for " + std::to_string(n) + " qubits exceeds cap " + std::to_string(cap));
  }
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) {
    const std::uint64_t xi = index_mask(t.op.x(), n), zi = index_mask(t.op.z(), n);
    const cplx ph = t.coeff * kPhases[t.op.phase_exp()];
    for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(dim); ++c) {
      m(static_cast<Eigen::Index>(c ^ xi), static_cast<Eigen::Index>(c)) += (std::popcount(zi & c) & 1) ? -ph : ph;
    }
  }
  return m;
}

std::string to_text(const PauliSum& h) {
  std::string out;
  for (const auto& t : h.terms()) {
    out += format_coeff(t.coeff);
    out += ' ';
    out += t.op.label();
    out += '\n';
  }
  return out;
}

PauliSum parse_pauli_sum(std::string_view text) {
  std::vector<std::pair<double, std::string>> parsed;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream in{std::string(line)};
    std::string coeff_tok, label, extra;
    if (!(in >> coeff_tok)) continue;
    if (!(in >> label) || (in >> extra)) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected `<coeff> <label>`");
    }
    double c = 0.0;
    auto res = std::from_chars(coeff_tok.data(), coeff_tok.data() + coeff_tok.size(), c);
    if (res.ec != std::errc{} || res.ptr != coeff_tok.data() + coeff_tok.size()) {
      throw ConfigError("line " + std::to_string(line_no) + ": bad coefficient '" + coeff_tok + "'");
    }
    if (!parsed.empty() && parsed.front().second.size() != label.size()) {
      throw ConfigError("line " + std::to_string(line_no) + ": label length differs from earlier terms");
    }
    parsed.emplace_back(c, std::move(label));
  }
  if (parsed.empty()) throw ConfigError("Pauli sum has no terms");
  PauliSum h(static_cast<int>(parsed.front().second.size()));
  for (const auto& [c, label] : parsed) h.add(c, label);
  return h;
}

PauliSum read_pauli_sum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::system_error(errno, std::generic_category(), path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_pauli_sum(ss.str());
}

std::ostream& operator<<(std::ostream& os, const PauliString& p) {
  static const char* kPrefix[4] = {"", "i*", "-", "-i*"};
  return os << kPrefix[p.label_phase()] << p.label();
}

}  // namespace ktr
