#include "wkit/cone.hpp"

#include <algorithm>
#include <bit>

#include "wkit/error.hpp"

namespace wkit {

namespace {

// a . x <= b; `origin` records which of the initial nonnegativity rows were
// combined into this one.
struct Row {
  std::vector<Rational> a;
  Rational b;
  std::uint64_t origin = 0;
};

void normalize(Row& row) {
  auto lead = std::find_if(row.a.begin(), row.a.end(), [](const Rational& c) { return c != 0; });
  if (lead == row.a.end()) return;
  const Rational scale = abs(*lead);
  for (auto& c : row.a) c /= scale;
  row.b /= scale;
}

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

// Keeps one row per coefficient vector: the tightest bound.
void dedupe(std::vector<Row>& rows) {
  std::vector<Row> kept;
  kept.reserve(rows.size());
  for (auto& row : rows) {
    auto same = std::find_if(kept.begin(), kept.end(), [&](const Row& k) { return k.a == row.a; });
    if (same == kept.end()) {
      kept.push_back(std::move(row));
    } else if (row.b < same->b ||
               (row.b == same->b && std::popcount(row.origin) < std::popcount(same->origin))) {
      *same = std::move(row);
    }
  }
  rows = std::move(kept);
}

void check_scope(std::size_t dim, const std::vector<IntVector>& generators) {
  if (generators.size() > cone_max_generators)
    throw UnsupportedInstance("cone with more than 8 generators");
  if (dim > cone_max_dim) throw UnsupportedInstance("cone dimension above 6");
  for (const auto& g : generators)
    if (g.size() != dim) throw DimensionMismatch("cone generator has wrong dimension");
}

}  // namespace

bool nonnegative_solution_exists(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("equation count mismatch");
  const std::size_t vars = a.empty() ? 0 : a.front().size();
  if (vars > 64) throw UnsupportedInstance("too many variables for elimination");

  std::vector<Row> eqs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != vars) throw DimensionMismatch("ragged equation matrix");
    eqs.push_back(Row{a[i], b[i], 0});
  }
  std::vector<Row> ineqs;
  for (std::size_t j = 0; j < vars; ++j) {
    Row r{std::vector<Rational>(vars), 0, std::uint64_t{1} << j};
    r.a[j] = -1;
    ineqs.push_back(std::move(r));
  }

  // Gaussian substitution: each usable equality removes one variable.
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    const Row& eq = eqs[e];
    auto lead = std::find_if(eq.a.begin(), eq.a.end(), [](const Rational& c) { return c != 0; });
    if (lead == eq.a.end()) {
      if (eq.b != 0) return false;
      continue;
    }
    const std::size_t j = static_cast<std::size_t>(lead - eq.a.begin());
    auto eliminate = [&](Row& r) {
      if (r.a[j] == 0) return;
      const Rational f = r.a[j] / eq.a[j];
      for (std::size_t l = 0; l < vars; ++l) r.a[l] -= f * eq.a[l];
      r.b -= f * eq.b;
    };
    for (std::size_t o = e + 1; o < eqs.size(); ++o) eliminate(eqs[o]);
    for (auto& r : ineqs) eliminate(r);
  }

  // Fourier-Motzkin on what remains.
  std::size_t eliminated = 0;
  while (true) {
    std::vector<Row> next;
    for (auto& r : ineqs) {
      if (all_zero(r.a)) {
        if (r.b < 0) return false;
        continue;
      }
      normalize(r);
      next.push_back(std::move(r));
    }
    dedupe(next);
    ineqs = std::move(next);
    if (ineqs.empty()) return true;

    // Pick the variable with the fewest generated combinations.
    std::size_t best = vars;
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j < vars; ++j) {
      std::size_t pos = 0, neg = 0;
      for (const auto& r : ineqs) {
        if (r.a[j] > 0) ++pos;
        if (r.a[j] < 0) ++neg;
      }
      if (pos + neg == 0) continue;
      const std::size_t cost = pos * neg;
      if (best == vars || cost < best_cost) {
        best = j;
        best_cost = cost;
      }
    }

    ++eliminated;
    std::vector<Row> pos, neg;
    next.clear();
    for (auto& r : ineqs) {
      if (r.a[best] > 0)
        pos.push_back(std::move(r));
      else if (r.a[best] < 0)
        neg.push_back(std::move(r));
      else
        next.push_back(std::move(r));
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        const std::uint64_t origin = p.origin | n.origin;
        if (static_cast<std::size_t>(std::popcount(origin)) > eliminated + 1) continue;
        const Rational wp = -n.a[best];
        const Rational wn = p.a[best];
        Row c{std::vector<Rational>(vars), wp * p.b + wn * n.b, origin};
        for (std::size_t l = 0; l < vars; ++l) c.a[l] = wp * p.a[l] + wn * n.a[l];
        c.a[best] = 0;
        next.push_back(std::move(c));
      }
    ineqs = std::move(next);
  }
}

bool cone_member(std::span<const Rational> v, const std::vector<IntVector>& generators) {
  check_scope(v.size(), generators);
  std::vector<std::vector<Rational>> a(v.size(), std::vector<Rational>(generators.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < generators.size(); ++j) a[i][j] = Rational(static_cast<long>(generators[j][i]));
  return nonnegative_solution_exists(a, std::vector<Rational>(v.begin(), v.end()));
}

bool cone_pointed(const std::vector<IntVector>& generators) {
  if (generators.empty()) return true;
  const std::size_t dim = generators.front().size();
  check_scope(dim, generators);
  // With nu = lambda + mu, "sum lambda g = -sum mu g, sum lambda + sum mu = 1"
  // is feasible iff some nu >= 0 with sum nu = 1 has sum nu g = 0.
  std::vector<std::vector<Rational>> a(dim + 1, std::vector<Rational>(generators.size()));
  std::vector<Rational> b(dim + 1);
  for (std::size_t j = 0; j < generators.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) a[i][j] = Rational(static_cast<long>(generators[j][i]));
    a[dim][j] = 1;
  }
  b[dim] = 1;
  return !nonnegative_solution_exists(a, b);
}

}  // namespace wkit
