#include "leibniz/modular.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace leibniz {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

using ModRow = std::vector<std::pair<std::uint32_t, u64>>;

// Reduction of rationals mod p; denominators repeat a lot, so their inverses are cached.
class ModReducer {
 public:
  explicit ModReducer(u64 p) : p_(p) {}

  // False when the denominator vanishes mod p.
  bool operator()(const Scalar& s, u64& out) {
    const u64 num = mpz_fdiv_ui(s.get_num_mpz_t(), p_);
    if (mpz_cmp_ui(s.get_den_mpz_t(), 1) == 0) {
      out = num;
      return true;
    }
    const u64 den = mpz_fdiv_ui(s.get_den_mpz_t(), p_);
    if (den == 0) return false;
    auto [it, fresh] = inverses_.try_emplace(den, 0);
    if (fresh) it->second = inv_mod(den, p_);
    out = mul_mod(num, it->second, p_);
    return true;
  }

 private:
  u64 p_;
  std::unordered_map<u64, u64> inverses_;
};

ModRow axpy_mod(const ModRow& row, u64 coef, const ModRow& other, u64 p) {
  const u64 neg = coef == 0 ? 0 : p - coef;
  ModRow out;
  out.reserve(row.size() + other.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < row.size() || j < other.size()) {
    if (j >= other.size() || (i < row.size() && row[i].first < other[j].first)) {
      out.push_back(row[i++]);
    } else if (i >= row.size() || other[j].first < row[i].first) {
      out.push_back({other[j].first, mul_mod(neg, other[j].second, p)});
      ++j;
    } else {
      const u64 v = (row[i].second + mul_mod(neg, other[j].second, p)) % p;
      if (v) out.push_back({row[i].first, v});
      ++i;
      ++j;
    }
  }
  return out;
}

// Reduced echelon form mod p, maintained incrementally like the rational builder.
class ModEchelon {
 public:
  ModEchelon(std::size_t cols, u64 p) : p_(p), pivot_row_(cols, -1), scratch_(cols, 0), touched_(cols, 0) {}

  // True when the row was independent of the rows inserted so far.
  bool insert(const ModRow& row) {
    ModRow r = reduce(row);
    if (r.empty()) return false;
    const u64 inv = inv_mod(r.front().second, p_);
    if (inv != 1)
      for (auto& e : r) e.second = mul_mod(e.second, inv, p_);
    const std::uint32_t pivot = r.front().first;
    for (auto& existing : rows_) {
      auto it = std::lower_bound(existing.begin(), existing.end(), pivot,
                                 [](const auto& e, std::uint32_t c) { return e.first < c; });
      if (it == existing.end() || it->first != pivot) continue;
      const u64 coef = it->second;
      existing = axpy_mod(existing, coef, r, p_);
    }
    pivot_row_[pivot] = static_cast<std::int64_t>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < pivot_row_.size(); ++c)
      if (pivot_row_[c] >= 0) out.push_back(c);
    return out;
  }

  const ModRow& row_for_pivot(std::size_t c) const { return rows_[static_cast<std::size_t>(pivot_row_[c])]; }

 private:
  // Products are accumulated unreduced in 128 bits; with p < 2^55 each is below 2^110, so
  // a slot can absorb 2^18 of them before it must be folded back mod p.
  ModRow reduce(const ModRow& row) {
    constexpr std::size_t kFoldEvery = std::size_t{1} << 17;
    used_.clear();
    auto touch = [&](std::uint32_t c) {
      if (!touched_[c]) {
        touched_[c] = 1;
        used_.push_back(c);
      }
    };
    std::size_t since_fold = 0;
    for (const auto& [c, v] : row) {
      const auto owner = pivot_row_[c];
      if (owner < 0) {
        touch(c);
        scratch_[c] += v;
        continue;
      }
      const ModRow& pr = rows_[static_cast<std::size_t>(owner)];
      const u128 neg = p_ - v;
      for (std::size_t i = 1; i < pr.size(); ++i) {
        touch(pr[i].first);
        scratch_[pr[i].first] += neg * pr[i].second;
      }
      if (++since_fold == kFoldEvery) {
        for (const auto u : used_) scratch_[u] %= p_;
        since_fold = 0;
      }
    }
    std::sort(used_.begin(), used_.end());
    ModRow out;
    for (const auto c : used_) {
      const u64 value = static_cast<u64>(scratch_[c] % p_);
      if (value) out.push_back({c, value});
      scratch_[c] = 0;
      touched_[c] = 0;
    }
    return out;
  }

  u64 p_;
  std::vector<ModRow> rows_;
  std::vector<std::int64_t> pivot_row_;
  std::vector<u128> scratch_;
  std::vector<char> touched_;
  std::vector<std::uint32_t> used_;
};

struct ModImage {
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> independent;  // input rows that raised the rank
  std::vector<std::vector<u64>> values;  // per pivot row, entries at the free columns
};

// Image of the rows listed in `subset`, or of every row when it is empty.
std::optional<ModImage> image_mod(const SparseMatrix& m, u64 p, const std::vector<std::size_t>& subset) {
  ModEchelon e(m.cols(), p);
  ModReducer to_mod(p);
  ModImage out;
  ModRow row;
  const std::size_t count = subset.empty() ? m.rows() : subset.size();
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t r = subset.empty() ? i : subset[i];
    row.clear();
    for (const auto& entry : m.row(r)) {
      u64 v = 0;
      if (!to_mod(entry.value, v)) return std::nullopt;
      if (v) row.push_back({static_cast<std::uint32_t>(entry.col), v});
    }
    if (e.insert(row)) out.independent.push_back(r);
  }
  out.pivots = e.pivots();
  std::vector<std::size_t> free_cols;
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : out.pivots) is_pivot[c] = 1;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  for (auto c : out.pivots) {
    const ModRow& r = e.row_for_pivot(c);
    std::vector<u64> vals(free_cols.size(), 0);
    std::size_t j = 0;
    for (std::size_t i = 1; i < r.size(); ++i) {
      while (j < free_cols.size() && free_cols[j] < r[i].first) ++j;
      if (j < free_cols.size() && free_cols[j] == r[i].first) vals[j] = r[i].second;
    }
    out.values.push_back(std::move(vals));
  }
  return out;
}

// Every row of m lies in the span of the reduced rows. Row r of m is in the span iff it is
// orthogonal to each kernel vector v_f (one per free column f: 1 at f, -R_c[f] at pivot c).
// The check runs on integers: v_f is scaled by the lcm of its denominators and each row of m
// by the lcm of its own.
bool rows_in_span(const SparseMatrix& m, const std::vector<SparseVector>& rows, const std::vector<std::size_t>& pivots) {
  const std::size_t cols = m.cols();
  std::vector<std::int64_t> pivot_row(cols, -1);
  for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = static_cast<std::int64_t>(i);
  std::vector<std::int64_t> free_index(cols, -1);
  std::size_t free_count = 0;
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_row[c] < 0) free_index[c] = static_cast<std::int64_t>(free_count++);

  std::vector<Integer> scale(free_count, 1);
  for (const auto& row : rows)
    for (std::size_t i = 1; i < row.size(); ++i) {
      Integer& l = scale[static_cast<std::size_t>(free_index[row[i].col])];
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), row[i].value.get_den_mpz_t());
    }
  using IntEntries = std::vector<std::pair<std::size_t, Integer>>;
  std::vector<IntEntries> w(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t i = 1; i < rows[r].size(); ++i) {
      const auto f = static_cast<std::size_t>(free_index[rows[r][i].col]);
      Integer v = -rows[r][i].value.get_num() * (scale[f] / rows[r][i].value.get_den());
      w[r].push_back({f, std::move(v)});
    }

  std::vector<Integer> acc(free_count);
  std::vector<char> touched(free_count, 0);
  std::vector<std::size_t> used;
  Integer row_scale;
  Integer value;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const SparseVector& row = m.row(r);
    row_scale = 1;
    for (const auto& e : row) mpz_lcm(row_scale.get_mpz_t(), row_scale.get_mpz_t(), e.value.get_den_mpz_t());
    used.clear();
    auto touch = [&](std::size_t f) {
      if (!touched[f]) {
        touched[f] = 1;
        used.push_back(f);
      }
    };
    for (const auto& e : row) {
      value = e.value.get_num() * (row_scale / e.value.get_den());
      const auto owner = pivot_row[e.col];
      if (owner < 0) {
        const auto f = static_cast<std::size_t>(free_index[e.col]);
        touch(f);
        mpz_addmul(acc[f].get_mpz_t(), value.get_mpz_t(), scale[f].get_mpz_t());
        continue;
      }
      for (const auto& [f, x] : w[static_cast<std::size_t>(owner)]) {
        touch(f);
        mpz_addmul(acc[f].get_mpz_t(), value.get_mpz_t(), x.get_mpz_t());
      }
    }
    bool zero = true;
    for (const auto f : used) {
      if (sgn(acc[f]) != 0) zero = false;
      acc[f] = 0;
      touched[f] = 0;
    }
    if (!zero) return false;
  }
  return true;
}

}  // namespace

std::uint64_t modular_prime(std::size_t i) {
  static std::mutex mutex;
  static std::vector<u64> primes;
  std::lock_guard<std::mutex> lock(mutex);
  while (primes.size() <= i) {
    Integer candidate = primes.empty() ? Integer(u64{1} << 55) : Integer(primes.back());
    // Largest prime below the previous one.
    do {
      candidate -= 1;
    } while (mpz_probab_prime_p(candidate.get_mpz_t(), 30) == 0);
    primes.push_back(candidate.get_ui());
  }
  return primes[i];
}

std::optional<Scalar> rational_reconstruction(const Integer& u, const Integer& m) {
  Integer bound;
  mpz_fdiv_q_2exp(bound.get_mpz_t(), m.get_mpz_t(), 1);
  mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
  Integer r0 = m;
  Integer r1 = u % m;
  if (r1 < 0) r1 += m;
  Integer t0 = 0;
  Integer t1 = 1;
  Integer q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (abs(t1) > bound || t1 == 0) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  Scalar out(r1, t1);
  out.canonicalize();
  return out;
}

std::optional<SparseRref> modular_rref(const SparseMatrix& m, std::size_t max_primes) {
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> free_cols;
  std::vector<std::vector<Integer>> residues;  // CRT images, per pivot row and free column
  Integer modulus = 0;
  std::vector<std::size_t> basis_rows;
  std::optional<std::pair<std::size_t, std::size_t>> stuck;

  for (std::size_t i = 0; i < max_primes; ++i) {
    const u64 p = modular_prime(i);
    // A full image bounds the rational rank from below; later primes reduce just the rows
    // it found independent, and the exact check below covers the rest.
    const bool full = basis_rows.empty();
    auto image = image_mod(m, p, basis_rows);
    if (!image) continue;
    const bool restart = modulus == 0 || image->pivots.size() > pivots.size() ||
                         (image->pivots.size() == pivots.size() && image->pivots < pivots);
    if (!restart && image->pivots != pivots) continue;  // unlucky prime
    if (full) basis_rows = image->independent;
    if (restart) {
      pivots = image->pivots;
      free_cols.clear();
      std::vector<char> is_pivot(m.cols(), 0);
      for (auto c : pivots) is_pivot[c] = 1;
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
      residues.assign(pivots.size(), std::vector<Integer>(free_cols.size()));
      for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t f = 0; f < free_cols.size(); ++f) residues[r][f] = Integer(image->values[r][f]);
      modulus = Integer(p);
    } else {
      // x = x + M * ((v - x) * M^{-1} mod p)
      const u64 m_inv = inv_mod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
      for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t f = 0; f < free_cols.size(); ++f) {
          Integer& x = residues[r][f];
          const u64 xm = mpz_fdiv_ui(x.get_mpz_t(), p);
          const u64 diff = (image->values[r][f] + p - xm) % p;
          const u64 k = mul_mod(diff, m_inv, p);
          if (k) x += modulus * Integer(k);
        }
      modulus *= Integer(p);
    }

    // The entry that failed last time usually fails again; try it before the full pass.
    if (stuck && stuck->first < pivots.size() && stuck->second < free_cols.size() &&
        !rational_reconstruction(residues[stuck->first][stuck->second], modulus))
      continue;
    stuck.reset();
    std::vector<SparseVector> rows(pivots.size());
    bool reconstructed = true;
    for (std::size_t r = 0; r < pivots.size() && reconstructed; ++r) {
      rows[r].push_back({pivots[r], Scalar(1)});
      for (std::size_t f = 0; f < free_cols.size(); ++f) {
        if (residues[r][f] == 0) continue;
        auto v = rational_reconstruction(residues[r][f], modulus);
        if (!v) {
          reconstructed = false;
          stuck = {r, f};
          break;
        }
        rows[r].push_back({free_cols[f], std::move(*v)});
      }
    }
    if (!reconstructed) continue;
    for (auto& row : rows)
      std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    // A reduced row has nothing left of its pivot.
    bool leading = true;
    for (std::size_t r = 0; r < rows.size(); ++r) leading = leading && rows[r].front().col == pivots[r];
    if (!leading) continue;
    if (!rows_in_span(m, rows, pivots)) {
      // Either too few primes or an unlucky first prime; look at every row again.
      basis_rows.clear();
      continue;
    }
    SparseRref out;
    out.cols = m.cols();
    out.pivots = pivots;
    out.rows = std::move(rows);
    return out;
  }
  return std::nullopt;
}

}  // namespace leibniz
