#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lacuna/random.hpp"

namespace lacuna {

/// Finite window of an integer spectrum, strictly increasing.
///
/// The lacunarity parameter of a window is a lower bound for the parameter
/// of any infinite sequence containing it.
class LacunarySequence {
 public:
  LacunarySequence() = default;

  explicit LacunarySequence(std::vector<std::int64_t> terms) : terms_(std::move(terms)) {
    for (std::size_t i = 1; i < terms_.size(); ++i)
      if (terms_[i] <= terms_[i - 1])
        throw std::invalid_argument("LacunarySequence: terms must be strictly increasing");
  }

  /// Sorts and deduplicates arbitrary input.
  static LacunarySequence from_unsorted(std::vector<std::int64_t> terms) {
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    return LacunarySequence(std::move(terms));
  }

  const std::vector<std::int64_t>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  std::int64_t operator[](std::size_t i) const { return terms_[i]; }

  /// Window of terms [first, first + count).
  LacunarySequence window(std::size_t first, std::size_t count) const {
    if (first + count > terms_.size()) throw std::out_of_range("LacunarySequence::window");
    return LacunarySequence(std::vector<std::int64_t>(terms_.begin() + first,
                                                      terms_.begin() + first + count));
  }

  LacunarySequence shifted(std::int64_t m) const {
    auto t = terms_;
    for (auto& v : t) v += m;
    return LacunarySequence(std::move(t));
  }

  LacunarySequence reflected() const {
    std::vector<std::int64_t> t(terms_.rbegin(), terms_.rend());
    for (auto& v : t) v = -v;
    return LacunarySequence(std::move(t));
  }

  friend bool operator==(const LacunarySequence&, const LacunarySequence&) = default;

 private:
  std::vector<std::int64_t> terms_;
};

/// Windowed lacunarity parameter: max over r != 0 of #{(i, j) : n_i - n_j = r}.
///
/// Counts for r and -r coincide, so only positive differences are tallied.
/// Windows of size <= 1 have no nonzero differences and return 0.
inline std::int64_t lacunarity_parameter(const LacunarySequence& seq) {
  const auto& t = seq.terms();
  if (t.size() < 2) return 0;
  std::vector<std::uint64_t> diffs;
  diffs.reserve(t.size() * (t.size() - 1) / 2);
  for (std::size_t j = 1; j < t.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      // exact in unsigned arithmetic because t[j] > t[i]
      diffs.push_back(static_cast<std::uint64_t>(t[j]) - static_cast<std::uint64_t>(t[i]));
  std::sort(diffs.begin(), diffs.end());
  std::int64_t best = 0;
  for (std::size_t i = 0; i < diffs.size();) {
    std::size_t j = i;
    while (j < diffs.size() && diffs[j] == diffs[i]) ++j;
    best = std::max<std::int64_t>(best, static_cast<std::int64_t>(j - i));
    i = j;
  }
  return best;
}

inline bool is_sidon(const LacunarySequence& seq) {
  return seq.size() <= 1 || lacunarity_parameter(seq) == 1;
}

struct Ratio {
  std::int64_t num = 2;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// First `count` terms of n_{i+1} = max(n_i + 1, ceil(q n_i)), starting at n0.
inline LacunarySequence hadamard_sequence(std::int64_t n0, Ratio q, std::int64_t count) {
  if (n0 < 1) throw std::invalid_argument("hadamard_sequence: n0 must be >= 1");
  if (q.den <= 0 || q.num <= q.den) throw std::invalid_argument("hadamard_sequence: q must exceed 1");
  if (count < 1) throw std::invalid_argument("hadamard_sequence: count must be positive");
  std::vector<std::int64_t> t;
  t.reserve(static_cast<std::size_t>(count));
  t.push_back(n0);
  constexpr auto max64 = static_cast<__int128>(std::numeric_limits<std::int64_t>::max());
  while (static_cast<std::int64_t>(t.size()) < count) {
    const __int128 prod = static_cast<__int128>(t.back()) * q.num;
    __int128 next = (prod + q.den - 1) / q.den;  // ceil for positive operands
    if (next <= t.back()) next = static_cast<__int128>(t.back()) + 1;
    if (next > max64)
      throw std::overflow_error("hadamard_sequence: term " + std::to_string(t.size()) +
                                " exceeds the 64-bit integer range");
    t.push_back(static_cast<std::int64_t>(next));
  }
  return LacunarySequence(std::move(t));
}

/// Random Sidon window of size n drawn greedily from [0, max_value].
/// Returns nullopt when `attempts` candidate draws do not suffice.
inline std::optional<LacunarySequence> random_sidon(std::size_t n, Rng& rng, std::int64_t max_value,
                                                    std::size_t attempts = 100000) {
  std::vector<std::int64_t> terms;
  std::set<std::int64_t> diffs;
  for (std::size_t a = 0; a < attempts && terms.size() < n; ++a) {
    const std::int64_t c = rng.uniform_int(0, max_value);
    std::vector<std::int64_t> fresh;
    bool ok = true;
    for (const auto t : terms) {
      const std::int64_t d = c > t ? c - t : t - c;
      if (d == 0 || diffs.count(d) ||
          std::find(fresh.begin(), fresh.end(), d) != fresh.end()) {
        ok = false;
        break;
      }
      fresh.push_back(d);
    }
    if (!ok) continue;
    terms.push_back(c);
    diffs.insert(fresh.begin(), fresh.end());
  }
  if (terms.size() < n) return std::nullopt;
  return LacunarySequence::from_unsorted(std::move(terms));
}

/// Random window of size n whose windowed parameter equals exactly r.
///
/// Seeds with the progression {0, ..., r} (difference 1 occurs r times) and
/// then adds random points from [0, max_value] that keep the parameter <= r.
inline std::optional<LacunarySequence> random_with_parameter(std::int64_t r, std::size_t n, Rng& rng,
                                                             std::int64_t max_value,
                                                             std::size_t attempts = 20000) {
  if (r < 1 || static_cast<std::size_t>(r) + 1 > n || max_value < r) return std::nullopt;
  std::vector<std::int64_t> terms;
  std::map<std::int64_t, std::int64_t> counts;  // positive difference -> multiplicity
  for (std::int64_t i = 0; i <= r; ++i) {
    for (const auto t : terms) ++counts[i - t];
    terms.push_back(i);
  }
  for (std::size_t a = 0; a < attempts && terms.size() < n; ++a) {
    const std::int64_t c = rng.uniform_int(0, max_value);
    if (std::find(terms.begin(), terms.end(), c) != terms.end()) continue;
    std::map<std::int64_t, std::int64_t> fresh;
    for (const auto t : terms) ++fresh[c > t ? c - t : t - c];
    bool ok = true;
    for (const auto& [d, m] : fresh) {
      const auto it = counts.find(d);
      if ((it == counts.end() ? 0 : it->second) + m > r) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (const auto& [d, m] : fresh) counts[d] += m;
    terms.push_back(c);
  }
  if (terms.size() < n) return std::nullopt;
  return LacunarySequence::from_unsorted(std::move(terms));
}

}  // namespace lacuna
