#include "lambdak/reconstruct.hpp"

#include <set>

namespace lambdak {

std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> rows, std::size_t cols) {
  std::vector<long> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pick = rank;
    while (pick < rows.size() && rows[pick][col] == 0) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[rank], rows[pick]);
    Rational inv = 1 / rows[rank][col];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col];
      for (std::size_t c = col; c < cols; ++c) rows[r][c] -= f * rows[rank][c];
    }
    pivot_col.push_back(static_cast<long>(col));
    ++rank;
  }
  std::set<long> pivots(pivot_col.begin(), pivot_col.end());
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivots.count(static_cast<long>(free))) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalFn rational_reconstruct(const std::vector<Sample>& samples, int degree_bound) {
  if (degree_bound < 0) throw InputError("degree bound must be non-negative");
  std::set<RootOfUnity> distinct;
  for (const auto& s : samples) {
    if (s.value.order() != s.point.n) throw InputError("sample value is not in Q(zeta_n) for its point");
    distinct.insert(s.point);
  }
  if (distinct.size() < static_cast<std::size_t>(2 * degree_bound + 1)) throw PreconditionError("insufficient samples");

  const std::size_t width = static_cast<std::size_t>(degree_bound) + 1;
  std::vector<std::vector<Rational>> rows;
  for (const auto& s : samples) {
    const long n = s.point.n;
    const std::size_t dim = static_cast<std::size_t>(euler_phi(n));
    // Column j: coordinates of z^j (numerator) or -f z^j (denominator).
    std::vector<CyclotomicValue> column(2 * width);
    for (std::size_t j = 0; j < width; ++j) {
      CyclotomicValue zj = CyclotomicValue::root_power(n, static_cast<long>(j) * s.point.k);
      column[j] = zj;
      column[width + j] = CyclotomicValue(n, Rational(0)) - s.value * zj;
    }
    for (std::size_t coord = 0; coord < dim; ++coord) {
      std::vector<Rational> row(2 * width, Rational(0));
      bool any = false;
      for (std::size_t j = 0; j < 2 * width; ++j) {
        const auto& c = column[j].coeffs();
        if (coord < c.size()) {
          row[j] = c[coord];
          any = any || c[coord] != 0;
        }
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  auto kernel = nullspace(std::move(rows), 2 * width);
  if (kernel.empty()) throw PreconditionError("inconsistent samples");

  const auto& v = kernel.front();
  poly::QPoly num(v.begin(), v.begin() + static_cast<long>(width));
  poly::QPoly den(v.begin() + static_cast<long>(width), v.end());
  poly::trim(num);
  poly::trim(den);
  if (den.empty()) throw PreconditionError("inconsistent samples");
  // Common scale so both sides become integer polynomials.
  poly::QPoly joined = num;
  joined.insert(joined.end(), den.begin(), den.end());
  Integer lcm = 1;
  for (const auto& c : joined) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  auto to_z = [&](const poly::QPoly& p) {
    std::vector<Integer> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].get_num() * (lcm / p[i].get_den());
    return out;
  };
  RationalFn candidate(HalfLaurent::from_g_coeffs(0, to_z(num)), HalfLaurent::from_g_coeffs(0, to_z(den)));
  for (const auto& s : samples) {
    try {
      if (!(evaluate_exact(candidate, s.point) == s.value)) throw PreconditionError("inconsistent samples");
    } catch (const PreconditionError&) {
      throw PreconditionError("inconsistent samples");
    }
  }
  return candidate;
}

}  // namespace lambdak
