#include <doctest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "wkit/error.hpp"
#include "wkit/pogroup.hpp"

using namespace wkit;

namespace {

GroupValue q(std::initializer_list<const char*> entries) {
  std::vector<Rational> e;
  for (const char* s : entries) e.push_back(parse_rational(s));
  return GroupValue(GroupKind::qvec, e.size(), e);
}

GroupValue z(std::initializer_list<long> entries, GroupKind kind = GroupKind::zvec) {
  std::vector<Rational> e;
  for (long v : entries) e.emplace_back(v);
  return GroupValue(kind, e.size(), e);
}

GroupValue m2(const char* a, const char* b, const char* c) {
  return GroupValue(GroupKind::symmat, 2, {parse_rational(a), parse_rational(b), parse_rational(b), parse_rational(c)});
}

RationalMatrix mat(std::size_t d, std::initializer_list<long> entries) {
  std::vector<Rational> e;
  for (long v : entries) e.emplace_back(v);
  return RationalMatrix(d, e);
}

// Carathéodory: when the generators span R^k, v is in their cone iff it has
// a nonnegative solution over some basis drawn from them.
bool cone_oracle(const std::vector<IntVector>& gens, const std::vector<Rational>& v) {
  const std::size_t k = v.size();
  const std::size_t m = gens.size();
  for (std::uint32_t pick = 0; pick < (1U << m); ++pick) {
    if (static_cast<std::size_t>(__builtin_popcount(pick)) != k) continue;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < m; ++j)
      if (pick >> j & 1U) idx.push_back(j);
    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) a[r][c] = static_cast<long>(gens[idx[c]][r]);
    const Rational det = oracle::determinant(a);
    if (det == 0) continue;
    bool ok = true;
    for (std::size_t c = 0; c < k && ok; ++c) {
      auto ac = a;
      for (std::size_t r = 0; r < k; ++r) ac[r][c] = v[r];
      ok = oracle::determinant(ac) / det >= 0;
    }
    if (ok) return true;
  }
  return false;
}

bool spans(const std::vector<IntVector>& gens, std::size_t k) {
  for (std::uint32_t pick = 0; pick < (1U << gens.size()); ++pick) {
    if (static_cast<std::size_t>(__builtin_popcount(pick)) != k) continue;
    std::vector<std::vector<Rational>> a;
    for (std::size_t r = 0; r < k; ++r) {
      std::vector<Rational> row;
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (pick >> j & 1U) row.emplace_back(static_cast<long>(gens[j][r]));
      a.push_back(row);
    }
    if (oracle::determinant(a) != 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("rational parsing is canonical and strict") {
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(format_rational(parse_rational("2/4")) == "1/2");
  CHECK(format_rational(parse_rational("-6/3")) == "-2");
  CHECK(format_rational(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), LoadError);
  CHECK_THROWS_AS(parse_rational("1.5"), LoadError);
  CHECK_THROWS_AS(parse_rational(""), LoadError);
  CHECK_THROWS_AS(parse_rational("1/-2"), LoadError);
}

TEST_CASE("group arithmetic") {
  CHECK(q({"1/2"}) + q({"1/3"}) == q({"5/6"}));
  CHECK(z({1, 0}) + z({0, 1}) == z({1, 1}));
  const GroupValue p = m2("1", "0", "0");
  CHECK((p - p).is_zero());
  CHECK(p - p == GroupValue::zero(GroupKind::symmat, 2));
  CHECK(-q({"1/2", "-3"}) == q({"-1/2", "3"}));

  SUBCASE("mismatches are errors") {
    CHECK_THROWS_AS(q({"1"}) + q({"1", "2"}), DimensionMismatch);
    CHECK_THROWS_AS(z({1}) + q({"1"}), DimensionMismatch);
    CHECK_THROWS_AS(z({1}, GroupKind::cone) - z({1}), DimensionMismatch);
  }
  SUBCASE("construction invariants") {
    CHECK_THROWS_AS(GroupValue(GroupKind::symmat, 2, {1, 2, 3, 4}), ContractViolation);
    CHECK_THROWS_AS(GroupValue(GroupKind::zvec, 1, {Rational(1, 2)}), ContractViolation);
    CHECK_THROWS_AS(GroupValue(GroupKind::qvec, 2, {1}), DimensionMismatch);
    CHECK_THROWS_AS(z({1}).scaled(Rational(1, 2)), ContractViolation);
  }
  SUBCASE("entries stay reduced") {
    const GroupValue s = q({"1/6"}) + q({"1/3"});
    CHECK(s.entries()[0].get_den() == 2);
    CHECK(s == q({"1/2"}));
  }
}

TEST_CASE("leq in each backend") {
  const auto qv = GroupSpec::qvec(2);
  CHECK(qv.leq(q({"1/2", "1/3"}), q({"1/2", "1"})));
  CHECK_FALSE(qv.leq(q({"1/2", "1"}), q({"1/2", "1/3"})));

  // [[1/2,1/2],[1/2,1/2]] - [[1,0],[0,0]] has determinant -1/2.
  const auto sm = GroupSpec::symmat(2);
  const GroupValue diff = m2("1/2", "1/2", "1/2") - m2("1", "0", "0");
  CHECK(oracle::determinant({{diff.entries()[0], diff.entries()[1]}, {diff.entries()[2], diff.entries()[3]}}) ==
        Rational(-1, 2));
  CHECK_FALSE(sm.leq(m2("1", "0", "0"), m2("1/2", "1/2", "1/2")));
  CHECK(sm.leq(m2("1/2", "0", "0"), m2("1", "0", "0")));

  const auto cone = GroupSpec::cone(2, {{2, -1}, {-1, 2}});
  CHECK(cone.leq(z({0, 0}, GroupKind::cone), z({1, 1}, GroupKind::cone)));
  CHECK_FALSE(cone.leq(z({0, 0}, GroupKind::cone), z({1, -1}, GroupKind::cone)));
  CHECK_THROWS_AS(cone.leq(z({0, 0}), z({1, 1})), DimensionMismatch);
}

TEST_CASE("psd_check examples") {
  CHECK(psd_check(RationalMatrix(3)));
  // Principal minors 1, 1, -3.
  CHECK(oracle::determinant({{1, 2}, {2, 1}}) == -3);
  CHECK_FALSE(psd_check(mat(2, {1, 2, 2, 1})));
  // Principal minors 2, 2, 3.
  CHECK(oracle::determinant({{2, 1}, {1, 2}}) == 3);
  CHECK(psd_check(mat(2, {2, 1, 1, 2})));
  CHECK(psd_check(mat(2, {1, 1, 1, 1})));
  CHECK_FALSE(psd_check(mat(2, {0, 1, 1, 0})));
  CHECK_FALSE(psd_check(mat(3, {1, 0, 0, 0, 0, 1, 0, 1, 0})));
  CHECK(psd_check(mat(3, {0, 0, 0, 0, 1, 0, 0, 0, 0})));
  CHECK_THROWS_AS(psd_check(mat(2, {1, 2, 3, 4})), ContractViolation);
}

TEST_CASE("psd_check agrees with the principal-minor oracle") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    RationalMatrix m(d);
    if (trial % 2 == 0) {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) m(i, j) = m(j, i) = gen::rational(rng, 3, 3);
    } else {
      // B B^T with a low-rank B hits the semidefinite boundary often.
      RationalMatrix b(d);
      for (std::size_t i = 0; i < d; ++i) b(i, 0) = gen::rational(rng, 3, 2);
      if (trial % 4 == 1)
        for (std::size_t i = 0; i < d; ++i) b(i, d - 1) = gen::rational(rng, 3, 2);
      m = b * b.transposed();
      if (trial % 8 == 3) m(0, 0) -= Rational(1, 9);
    }
    CHECK(psd_check(m) == oracle::psd_by_principal_minors(d, m.entries()));
  }
}

TEST_CASE("cone_member") {
  const std::vector<IntVector> gens{{2, -1}, {-1, 2}};
  auto v = [](long a, long b) { return std::vector<Rational>{a, b}; };

  CHECK(cone_member(v(2, -1), gens));
  // (1,1) = 1*(2,-1) + 1*(-1,2)
  CHECK(oracle::cone2_member(gens[0], gens[1], 1, 1));
  CHECK(cone_member(v(1, 1), gens));
  // (1,0) = 2/3 (2,-1) + 1/3 (-1,2): a positive instance.
  CHECK(oracle::cone2_member(gens[0], gens[1], 1, 0));
  CHECK(cone_member(v(1, 0), gens));
  // (1,-1) needs l2 = -1/3: the negative instance.
  CHECK_FALSE(oracle::cone2_member(gens[0], gens[1], 1, -1));
  CHECK_FALSE(cone_member(v(1, -1), gens));
  CHECK(cone_member(v(0, 0), gens));

  SUBCASE("scope limits") {
    std::vector<IntVector> many(9, IntVector{1, 0});
    CHECK_THROWS_AS(cone_member(v(1, 0), many), UnsupportedInstance);
    std::vector<IntVector> wide{IntVector(7, 1)};
    CHECK_THROWS_AS(cone_member(std::vector<Rational>(7, 1), wide), UnsupportedInstance);
  }
}

TEST_CASE("cone_member agrees with a Caratheodory oracle") {
  gen::Rng rng(5);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t k = static_cast<std::size_t>(gen::uniform(rng, 2, 3));
    const std::size_t m = static_cast<std::size_t>(gen::uniform(rng, static_cast<long>(k), 6));
    std::vector<IntVector> gens(m, IntVector(k));
    for (auto& g : gens)
      for (auto& c : g) c = gen::uniform(rng, -3, 3);
    if (!spans(gens, k)) continue;
    std::vector<Rational> target(k);
    for (auto& c : target) c = gen::uniform(rng, -4, 4);
    CHECK(cone_member(target, gens) == cone_oracle(gens, target));
    ++checked;
  }
  CHECK(checked > 200);
}

TEST_CASE("cone groups are validated at construction") {
  CHECK_NOTHROW(GroupSpec::cone(2, {{1, 0}, {0, 1}, {1, 1}}));
  CHECK_THROWS_AS(GroupSpec::cone(2, {{1, 0}, {-1, 0}}), ContractViolation);
  CHECK_THROWS_AS(GroupSpec::cone(2, {{1, 2}, {-1, 1}, {0, -3}}), ContractViolation);
  CHECK_THROWS_AS(GroupSpec::cone(2, {{0, 0}, {1, 0}}), ContractViolation);
  CHECK_THROWS_AS(GroupSpec::cone(2, {{1, 0, 0}}), DimensionMismatch);
  CHECK(cone_pointed({{2, -1}, {-1, 2}}));
  CHECK_FALSE(cone_pointed({{1, 1, 0}, {0, 0, 1}, {-1, -1, -1}}));
}

TEST_CASE("order laws on random samples") {
  gen::Rng rng(17);
  const std::vector<GroupSpec> specs{GroupSpec::zvec(2), GroupSpec::qvec(3), GroupSpec::symmat(2),
                                     GroupSpec::cone(2, {{2, -1}, {-1, 2}}),
                                     GroupSpec::cone(3, {{1, 0, 0}, {1, 1, 0}, {0, 1, 1}, {0, 0, 1}})};
  for (const auto& spec : specs) {
    CAPTURE(to_string(spec.kind()));
    int comparable = 0;
    for (int trial = 0; trial < 150; ++trial) {
      const GroupValue x = gen::any_value(rng, spec);
      // Bias toward comparable pairs: y = x + (something often positive).
      GroupValue y = x + (trial % 2 ? gen::any_value(rng, spec) : spec.zero());
      if (trial % 3 == 0 && spec.kind() != GroupKind::symmat) {
        std::vector<Rational> e(x.entries().begin(), x.entries().end());
        for (auto& c : e) c = abs(c);
        y = x + GroupValue(spec.kind(), spec.dim(), e);
      }
      const GroupValue shift = gen::any_value(rng, spec);
      const bool le = spec.leq(x, y);
      comparable += le;
      CHECK(spec.leq(x, x));
      CHECK(le == spec.leq(x + shift, y + shift));
      if (le && spec.leq(y, x)) CHECK(x == y);
      const GroupValue w = y + (y - x);
      if (le) CHECK(spec.leq(x, w));  // x <= y <= 2y - x
    }
    CHECK(comparable > 0);
  }
}
