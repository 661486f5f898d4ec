#pragma once

// Irreducible labels and fusion with a generator for free products of
// universal orthogonal (A_o) and unitary (A_u) discrete quantum groups.
//
// An irreducible is an alternating word of letters; a letter of an A_o factor
// is the k-th irreducible of that factor (k >= 1), a letter of an A_u factor is
// a nonempty word over {u, U} where U stands for the conjugate generator.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <optional>
#include <string_view>
#include <vector>

#include "qcayley/errors.hpp"
#include "qcayley/scalar.hpp"

namespace qcayley {

enum class FactorKind { orthogonal, unitary };

struct FactorSpec {
  FactorKind kind = FactorKind::orthogonal;
  Rational dimq{1};

  friend bool operator==(const FactorSpec&, const FactorSpec&) = default;
};

/// A generating direction: one per A_o factor, two (gamma, gamma-bar) per
/// A_u factor.
struct Direction {
  std::uint32_t factor = 0;
  bool bar = false;

  friend auto operator<=>(const Direction&, const Direction&) = default;
};

class QuantumGroupSpec {
 public:
  QuantumGroupSpec() = default;
  explicit QuantumGroupSpec(std::vector<FactorSpec> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw DomainError("a quantum group spec needs at least one factor");
    for (const auto& f : factors_) {
      if (f.dimq < 1) throw DomainError("dimq below 1 (" + f.dimq.get_str() + ")");
    }
    for (std::uint32_t i = 0; i < factors_.size(); ++i) {
      directions_.push_back({i, false});
      if (factors_[i].kind == FactorKind::unitary) directions_.push_back({i, true});
    }
  }

  const std::vector<FactorSpec>& factors() const { return factors_; }
  const FactorSpec& factor(std::uint32_t i) const {
    if (i >= factors_.size()) throw DomainError("factor index out of range");
    return factors_[i];
  }
  const std::vector<Direction>& directions() const { return directions_; }

  std::uint32_t direction_index(Direction d) const {
    for (std::uint32_t i = 0; i < directions_.size(); ++i) {
      if (directions_[i] == d) return i;
    }
    throw DomainError("unknown direction");
  }
  const Direction& direction(std::uint32_t index) const {
    if (index >= directions_.size()) throw DomainError("unknown direction index " + std::to_string(index));
    return directions_[index];
  }
  Direction dual(Direction d) const {
    if (factor(d.factor).kind == FactorKind::unitary) d.bar = !d.bar;
    return d;
  }
  const Rational& dimq(Direction d) const { return factor(d.factor).dimq; }

  /// Smallest generator dimension over all directions.
  Rational min_dimq() const {
    Rational m = factors_.front().dimq;
    for (const auto& f : factors_) m = std::min(m, f.dimq);
    return m;
  }

  friend bool operator==(const QuantumGroupSpec& a, const QuantumGroupSpec& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<FactorSpec> factors_;
  std::vector<Direction> directions_;
};

/// Parses `Factor ("*" Factor)*` with `Factor = Ao(<rational>) | Au(<rational>)`.
/// Whitespace around tokens is ignored.
inline QuantumGroupSpec parse_spec(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) {
      throw ParseError(std::string("expected '") + c + "'", pos);
    }
    ++pos;
  };
  std::vector<FactorSpec> factors;
  while (true) {
    skip_ws();
    FactorSpec f;
    if (text.substr(pos, 2) == "Ao") {
      f.kind = FactorKind::orthogonal;
    } else if (text.substr(pos, 2) == "Au") {
      f.kind = FactorKind::unitary;
    } else {
      throw ParseError("expected 'Ao' or 'Au'", pos);
    }
    pos += 2;
    expect('(');
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != ')' && text[pos] != ' ') ++pos;
    try {
      f.dimq = parse_rational(text.substr(start, pos - start));
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad dimension: ") + e.what(), start + e.position());
    }
    if (f.dimq < 1) throw ParseError("dimq below 1", start);
    expect(')');
    factors.push_back(f);
    skip_ws();
    if (pos == text.size()) break;
    expect('*');
  }
  return QuantumGroupSpec(std::move(factors));
}

inline std::string to_string(const QuantumGroupSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.factors().size(); ++i) {
    const auto& f = spec.factors()[i];
    if (i != 0) out += "*";
    out += f.kind == FactorKind::orthogonal ? "Ao(" : "Au(";
    out += f.dimq.get_str();
    out += ")";
  }
  return out;
}

inline std::string to_string(const QuantumGroupSpec& spec, Direction d) {
  std::string out = d.bar ? "gbar" : "g";
  if (spec.factors().size() > 1) out += std::to_string(d.factor);
  return out;
}

// ---------------------------------------------------------------------------
// Irreps

struct Letter {
  std::uint32_t factor = 0;
  std::uint32_t power = 0;  // A_o letter: k >= 1
  std::string symbols;      // A_u letter: nonempty word over {'u','U'}

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

class Irrep {
 public:
  Irrep() = default;
  explicit Irrep(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Irrep trivial() { return Irrep(); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::vector<Letter>& letters() { return letters_; }
  bool is_trivial() const { return letters_.empty(); }

  friend auto operator<=>(const Irrep&, const Irrep&) = default;

 private:
  std::vector<Letter> letters_;
};

inline char bar_symbol(char s) { return s == 'u' ? 'U' : 'u'; }

/// Throws DomainError unless `alpha` is a reduced alternating word of `spec`.
inline void check_irrep(const QuantumGroupSpec& spec, const Irrep& alpha) {
  const auto& ls = alpha.letters();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const auto& l = ls[i];
    if (l.factor >= spec.factors().size()) throw DomainError("letter refers to a missing factor");
    if (i != 0 && ls[i - 1].factor == l.factor) throw DomainError("consecutive letters from the same factor");
    if (spec.factor(l.factor).kind == FactorKind::orthogonal) {
      if (l.power == 0 || !l.symbols.empty()) throw DomainError("invalid A_o letter");
    } else {
      if (l.symbols.empty() || l.power != 0) throw DomainError("invalid A_u letter");
      for (char c : l.symbols) {
        if (c != 'u' && c != 'U') throw DomainError("invalid A_u symbol");
      }
    }
  }
}

/// Text form: "1" for the trivial irrep, otherwise letters joined by '.',
/// each written "<factor>:<k>" (A_o) or "<factor>:<symbols>" (A_u).
inline std::string to_string(const Irrep& alpha) {
  if (alpha.is_trivial()) return "1";
  std::string out;
  for (std::size_t i = 0; i < alpha.letters().size(); ++i) {
    const auto& l = alpha.letters()[i];
    if (i != 0) out += ".";
    out += std::to_string(l.factor) + ":";
    out += l.symbols.empty() ? std::to_string(l.power) : l.symbols;
  }
  return out;
}

inline Irrep parse_irrep(const QuantumGroupSpec& spec, std::string_view text) {
  if (text == "1") return Irrep::trivial();
  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t colon = text.find(':', pos);
    if (colon == std::string_view::npos) throw ParseError("expected '<factor>:<symbol>'", pos);
    std::size_t end = text.find('.', colon);
    if (end == std::string_view::npos) end = text.size();
    Letter l;
    std::string_view factor_text = text.substr(pos, colon - pos);
    std::string_view body = text.substr(colon + 1, end - colon - 1);
    if (factor_text.empty() || factor_text.find_first_not_of("0123456789") != std::string_view::npos) {
      throw ParseError("bad factor index", pos);
    }
    l.factor = static_cast<std::uint32_t>(std::stoul(std::string(factor_text)));
    if (l.factor >= spec.factors().size()) throw ParseError("factor index out of range", pos);
    if (body.empty()) throw ParseError("empty letter", colon + 1);
    if (spec.factor(l.factor).kind == FactorKind::orthogonal) {
      if (body.find_first_not_of("0123456789") != std::string_view::npos) {
        throw ParseError("A_o letter must be a positive integer", colon + 1);
      }
      l.power = static_cast<std::uint32_t>(std::stoul(std::string(body)));
    } else {
      if (body.find_first_not_of("uU") != std::string_view::npos) {
        throw ParseError("A_u letter must be a word over {u,U}", colon + 1);
      }
      l.symbols = std::string(body);
    }
    letters.push_back(std::move(l));
    pos = end == text.size() ? end : end + 1;
  }
  Irrep alpha(std::move(letters));
  try {
    check_irrep(spec, alpha);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
  return alpha;
}

inline int length(const Irrep& alpha) {
  int n = 0;
  for (const auto& l : alpha.letters()) n += l.symbols.empty() ? static_cast<int>(l.power) : static_cast<int>(l.symbols.size());
  return n;
}

inline Irrep dual(const Irrep& alpha) {
  std::vector<Letter> out(alpha.letters().rbegin(), alpha.letters().rend());
  for (auto& l : out) {
    std::reverse(l.symbols.begin(), l.symbols.end());
    for (char& c : l.symbols) c = bar_symbol(c);
  }
  return Irrep(std::move(out));
}

// ---------------------------------------------------------------------------
// Dimensions

/// m_0 = 1, m_1 = dimq, m_{k+1} = dimq m_k - m_{k-1}.
inline std::vector<Rational> ao_dims(const Rational& dimq, int count) {
  if (count < 1) throw DomainError("ao_dims: count must be >= 1");
  std::vector<Rational> m;
  m.reserve(static_cast<std::size_t>(count));
  m.emplace_back(1);
  if (count > 1) m.push_back(dimq);
  while (static_cast<int>(m.size()) < count) {
    const auto n = m.size();
    m.push_back(dimq * m[n - 1] - m[n - 2]);
  }
  return m;
}

/// Dimension of an A_u letter: m_{wx} = m_w m_1 - m_{w'} [last(w) = bar(x)],
/// w' being w without its last symbol.
inline Rational au_letter_dim(const Rational& dimq, std::string_view symbols) {
  Rational before_prev = 0;  // m of prefix length j-1
  Rational prev = 1;         // m of prefix length j
  for (std::size_t j = 0; j < symbols.size(); ++j) {
    Rational next = prev * dimq;
    if (j > 0 && symbols[j - 1] == bar_symbol(symbols[j])) next -= before_prev;
    before_prev = prev;
    prev = next;
  }
  return prev;
}

inline Rational letter_dim(const QuantumGroupSpec& spec, const Letter& l) {
  const auto& f = spec.factor(l.factor);
  if (f.kind == FactorKind::orthogonal) {
    Rational prev = 1, cur = f.dimq;
    for (std::uint32_t k = 1; k < l.power; ++k) {
      Rational next = f.dimq * cur - prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    return l.power == 0 ? Rational(1) : cur;
  }
  return au_letter_dim(f.dimq, l.symbols);
}

/// Quantum dimension: product of the letter dimensions.
inline Rational quantum_dim(const QuantumGroupSpec& spec, const Irrep& alpha) {
  Rational m = 1;
  for (const auto& l : alpha.letters()) m *= letter_dim(spec, l);
  return m;
}

// ---------------------------------------------------------------------------
// Fusion with a generator

struct FusionResult {
  Irrep ascending;
  std::optional<Irrep> descending;
};

/// Both candidate summands of alpha (x) gamma_d, before discarding
/// zero-dimensional ones.
inline FusionResult fuse_raw(const QuantumGroupSpec& spec, const Irrep& alpha, Direction d) {
  const auto& factor = spec.factor(d.factor);
  FusionResult r;
  std::vector<Letter> up = alpha.letters();
  const bool same_factor = !up.empty() && up.back().factor == d.factor;
  if (factor.kind == FactorKind::orthogonal) {
    if (same_factor) {
      Letter& last = up.back();
      std::vector<Letter> down = up;
      last.power += 1;
      if (down.back().power == 1) down.pop_back();
      else down.back().power -= 1;
      r.descending = Irrep(std::move(down));
    } else {
      up.push_back(Letter{d.factor, 1, {}});
    }
  } else {
    const char sym = d.bar ? 'U' : 'u';
    if (same_factor) {
      Letter& last = up.back();
      if (last.symbols.back() == bar_symbol(sym)) {
        std::vector<Letter> down = up;
        down.back().symbols.pop_back();
        if (down.back().symbols.empty()) down.pop_back();
        r.descending = Irrep(std::move(down));
      }
      last.symbols.push_back(sym);
    } else {
      up.push_back(Letter{d.factor, 0, std::string(1, sym)});
    }
  }
  r.ascending = Irrep(std::move(up));
  return r;
}

struct Summand {
  Irrep irrep;
  Rational dim;
};

/// m_beta from a known m_alpha (nonzero) when alpha and beta share a long
/// prefix: only the differing trailing letters are evaluated.
inline Rational quantum_dim_from(const QuantumGroupSpec& spec, const Irrep& alpha, const Rational& alpha_dim,
                                 const Irrep& beta) {
  const auto& a = alpha.letters();
  const auto& b = beta.letters();
  std::size_t p = 0;
  while (p < a.size() && p < b.size() && a[p] == b[p]) ++p;
  if (sgn(alpha_dim) == 0 || 2 * p < a.size()) return quantum_dim(spec, beta);
  Rational m = alpha_dim;
  for (std::size_t i = p; i < a.size(); ++i) m /= letter_dim(spec, a[i]);
  for (std::size_t i = p; i < b.size(); ++i) m *= letter_dim(spec, b[i]);
  return m;
}

/// The nonzero summands of alpha (x) gamma_d together with their dimensions.
/// `alpha_dim`, when given, must be m_alpha; it saves recomputing the common
/// prefix of the words.
inline std::vector<Summand> fuse_generator_with_dims(const QuantumGroupSpec& spec, const Irrep& alpha, Direction d,
                                                     const Rational* alpha_dim = nullptr) {
  check_irrep(spec, alpha);
  (void)spec.direction_index(d);
  FusionResult raw = fuse_raw(spec, alpha, d);
  std::vector<Summand> out;
  auto keep = [&](Irrep&& beta) {
    Rational m = alpha_dim != nullptr ? quantum_dim_from(spec, alpha, *alpha_dim, beta) : quantum_dim(spec, beta);
    if (sgn(m) < 0) {
      throw DomainError("negative quantum dimension for " + to_string(beta) +
                        "; no universal quantum group has a generator dimension strictly between 1 and 2");
    }
    if (sgn(m) > 0) out.push_back({std::move(beta), std::move(m)});
  };
  keep(std::move(raw.ascending));
  if (raw.descending) keep(std::move(*raw.descending));
  return out;
}

/// Irreducible summands of alpha (x) gamma_d: the ascending word first, then
/// the descending one when the last letter absorbs the generator.  Summands of
/// quantum dimension 0 (which occur only for dimq = 1) do not exist and are
/// dropped.
inline std::vector<Irrep> fuse_generator(const QuantumGroupSpec& spec, const Irrep& alpha, Direction d) {
  std::vector<Irrep> out;
  for (auto& s : fuse_generator_with_dims(spec, alpha, d)) out.push_back(std::move(s.irrep));
  return out;
}

inline std::vector<Irrep> fuse_generator(const QuantumGroupSpec& spec, const Irrep& alpha, std::uint32_t direction_index) {
  return fuse_generator(spec, alpha, spec.direction(direction_index));
}

// ---------------------------------------------------------------------------
// Growth parameter

/// The root a >= 1 of a + 1/a = dimq, enclosed in a rational interval.
struct GrowthParam {
  Rational dimq;
  Interval a;
};

/// Encloses a = (dimq + sqrt(dimq^2 - 4)) / 2 with width at most `tolerance`.
inline GrowthParam a_param(const Rational& dimq, const Rational& tolerance = Rational(Integer(1), Integer("1000000000000000000000000000000"))) {
  if (dimq < 2) {
    throw GateError("a_param: dimq = " + dimq.get_str() + " < 2 has no real root a >= 1 of a + 1/a = dimq");
  }
  if (sgn(tolerance) <= 0) throw DomainError("a_param: tolerance must be positive");
  unsigned bits = 8;
  while (dyadic_unit(bits) > tolerance) ++bits;
  Interval disc = Interval::sqrt(dimq * dimq - 4, bits + 1);
  Interval a(Rational((dimq + disc.lo()) / 2), Rational((dimq + disc.hi()) / 2));
  return {dimq, a};
}

}  // namespace qcayley
