#include <doctest.h>

#include <functional>
#include <set>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "wkit/error.hpp"
#include "wkit/extend.hpp"

using namespace wkit;

namespace {

GroupValue q1(const char* v) { return GroupValue(GroupKind::qvec, 1, {parse_rational(v)}); }
GroupValue q2(const char* x, const char* y) {
  return GroupValue(GroupKind::qvec, 2, {parse_rational(x), parse_rational(y)});
}
GroupValue diag(const char* x, const char* y) {
  return GroupValue::from_matrix(RationalMatrix::diagonal({parse_rational(x), parse_rational(y)}));
}
FinSubset mask(std::uint32_t m) { return FinSubset{m}; }

/// qvec u = 1, S = {a = 1/2, b = 1/3}, beta = min.
WitnessPair small_pair() { return WitnessPair(gen::min_table(gen::unit_cube(1), {{"a", q1("1/2")}, {"b", q1("1/3")}})); }

/// qvec u = (1,1), S = {a = (1/2,1), b = (1,1/3)}, beta = min.
WitnessPair plane_pair() {
  return WitnessPair(gen::min_table(gen::unit_cube(2), {{"a", q2("1/2", "1")}, {"b", q2("1", "1/3")}}));
}

WitnessPair diagonal_pair() {
  auto alg = gen::identity_algebra(2);
  return WitnessPair(gen::product_table(alg, {{"s", diag("1/2", "1/4")}}));
}

GroupValue d(std::span<const GroupValue> table, FinSubset x, FinSubset a) { return delta(table, x, a); }

/// Assembles, re-verifies and checks both directions of the theorem plus the
/// case identities from its proof.
void check_round_trip(const WitnessPair& pair, const ExtensionCandidate& cand) {
  REQUIRE(check_candidate(pair, cand).passed());
  const WitnessPair ext = assemble_extension(pair, cand, "t");
  CHECK(verify_witness(ext.table()).passed());
  CHECK(restrict_pair(ext, "t") == pair);
  CHECK(restrict_to_candidate(ext, "t") == cand);

  const std::size_t n = pair.table().ground_size();
  const FinSubset t = FinSubset::singleton(n);
  const auto bt = ext.table().values();
  ext.table().full().for_each_subset([&](FinSubset a) {
    FinSubset{}.for_each_between(a, [&](FinSubset x) {
      if (x.contains(n)) {
        CHECK(d(bt, x, a) == d(cand.values(), x - t, a - t));
      } else if (a.contains(n)) {
        CHECK(d(bt, x, a) == d(bt, x, a - t) - d(cand.values(), x, a - t));
      }
    });
  });
}

/// Every construction that applies to `pair`, skipping already-present targets.
std::vector<ExtensionCandidate> constructions(const WitnessPair& pair) {
  std::vector<ExtensionCandidate> out;
  auto attempt = [&](const std::function<ExtensionCandidate()>& make) {
    try {
      out.push_back(make());
    } catch (const AlreadyPresent&) {
    }
  };
  const WitnessTable& table = pair.table();
  attempt([&] { return candidate_zero(pair); });
  attempt([&] { return candidate_one(pair); });
  for (const auto& g : table.ground()) attempt([&] { return candidate_complement(pair, g.label); });
  table.full().for_each_subset([&](FinSubset u) { attempt([&] { return candidate_range(pair, u); }); });
  return out;
}

}  // namespace

TEST_CASE("check_candidate examples") {
  const WitnessPair p = small_pair();
  CHECK(check_candidate(p, candidate_zero(p)).passed());
  CHECK(check_candidate(p, candidate_one(p)).passed());
  CHECK(candidate_one(p).values().size() == 4);

  auto alg = p.algebra();
  const ExtensionCandidate flat(alg, q1("3/4"), std::vector<GroupValue>(4, q1("3/4")));
  CHECK(d(flat.values(), {}, FinSubset::singleton(0)).is_zero());
  const DeltaReport r = check_candidate(p, flat);
  REQUIRE_FALSE(r.passed());
  CHECK(r.violation->check == Check::candidate_dominated);
  CHECK(r.violation->x == FinSubset::singleton(0));
  CHECK(r.violation->a == FinSubset::singleton(0));
  CHECK(r.violation->value == q1("3/4"));
  CHECK_THROWS_AS(assemble_extension(p, flat, "t"), RejectedCandidate);
  try {
    assemble_extension(p, flat, "t");
  } catch (const RejectedCandidate& e) {
    CHECK(e.report().violation->x == FinSubset::singleton(0));
  }

  const ExtensionCandidate present(alg, q1("1/2"), std::vector<GroupValue>(4, q1("1/2")));
  CHECK_THROWS_AS(check_candidate(p, present), AlreadyPresent);
  const ExtensionCandidate small(alg, q1("1/4"), std::vector<GroupValue>(2, q1("1/4")));
  CHECK_THROWS_AS(check_candidate(p, small), PreconditionError);
  auto other = make_algebra(GroupSpec::qvec(1), GroupValue(GroupKind::qvec, 1, {2}));
  CHECK_THROWS_AS(check_candidate(p, ExtensionCandidate(other, q1("0"), std::vector<GroupValue>(4, q1("0")))),
                  AlgebraMismatch);

  CHECK_THROWS_AS(ExtensionCandidate(alg, q1("1/4"), {q1("1/5"), q1("0")}), ContractViolation);
  CHECK_THROWS_AS(ExtensionCandidate(alg, q1("1/4"), {q1("1/4"), q1("2")}), ContractViolation);
  CHECK_THROWS_AS(ExtensionCandidate(alg, q1("1/4"), {q1("1/4"), q1("0"), q1("0")}), PreconditionError);
}

TEST_CASE("zero and one extensions") {
  const WitnessPair p = small_pair();
  const WitnessPair with_zero = assemble_extension(p, candidate_zero(p), "0");
  const std::size_t z = 2;
  with_zero.table().full().for_each_subset([&](FinSubset x) {
    if (x.contains(z)) CHECK(with_zero.table()[x].is_zero());
  });
  CHECK(restrict_to_candidate(with_zero, "0") == candidate_zero(p));
  CHECK_THROWS_AS(candidate_zero(with_zero), AlreadyPresent);

  const WitnessPair both = assemble_extension(with_zero, candidate_one(with_zero), "1");
  CHECK(verify_witness(both.table()).passed());
  const FinSubset w = FinSubset::singleton(3);
  both.table().full().for_each_subset([&](FinSubset x) {
    if (!x.contains(3)) CHECK(both.table()[x | w] == both.table()[x]);
  });
  CHECK_THROWS_AS(candidate_one(both), AlreadyPresent);
  CHECK(both.table()[FinSubset{}] == q1("1"));
}

TEST_CASE("complement construction") {
  const WitnessPair p = small_pair();
  const ExtensionCandidate c = candidate_complement(p, "b");
  CHECK(c.target() == q1("2/3"));
  CHECK(c[mask(0)] == q1("2/3"));
  CHECK(c[mask(1)] == q1("1/6"));
  CHECK(c[mask(2)] == q1("0"));
  CHECK(c[mask(3)] == q1("0"));
  check_round_trip(p, c);

  const WitnessPair ext = assemble_extension(p, c, "b'");
  CHECK(ext.table()[ext.table().parse_key("a,b'")] == q1("1/6"));
  CHECK(ext.table()[ext.table().parse_key("b,b'")] == q1("0"));

  CHECK_THROWS_AS(candidate_complement(p, "z"), PreconditionError);
  // 1/2 is its own complement.
  CHECK_THROWS_AS(candidate_complement(p, "a"), AlreadyPresent);

  const WitnessPair with_unit = WitnessPair(gen::min_table(gen::unit_cube(1), {{"h", q1("1/3")}, {"u", q1("1")}}));
  const ExtensionCandidate degenerate = candidate_complement(with_unit, "u");
  CHECK(degenerate == candidate_zero(with_unit));
}

TEST_CASE("range construction") {
  const WitnessPair p = plane_pair();
  const ExtensionCandidate c = candidate_range(p, mask(3));
  CHECK(c.target() == q2("1/2", "1/3"));
  for (std::uint32_t m = 0; m < 4; ++m) CHECK(c[mask(m)] == q2("1/2", "1/3"));
  CHECK(d(c.values(), {}, FinSubset::singleton(0)).is_zero());
  check_round_trip(p, c);

  CHECK(candidate_range(p, {}) == candidate_one(p));
  CHECK_THROWS_AS(candidate_range(p, mask(1)), AlreadyPresent);
  CHECK_THROWS_AS(candidate_range(p, mask(4)), PreconditionError);

  const WitnessPair bare(gen::min_table(gen::unit_cube(1), {{"a", q1("1/2")}}));
  CHECK(candidate_range(bare, {}) == candidate_one(bare));
}

TEST_CASE("commuting construction") {
  const WitnessPair p = diagonal_pair();
  const ExtensionCandidate c = candidate_commuting(p, diag("1/3", "1"));
  CHECK(c[FinSubset::singleton(0)] == diag("1/6", "1/4"));
  CHECK(c.target() == diag("1/3", "1"));
  check_round_trip(p, c);

  CHECK(candidate_commuting(p, GroupValue::zero(GroupKind::symmat, 2)) == candidate_zero(p));
  CHECK(candidate_commuting(p, p.algebra()->unit()) == candidate_one(p));

  const ExtensionCandidate half = candidate_commuting(p, diag("1/2", "1/2"));
  for (std::uint32_t m = 0; m < 2; ++m) CHECK(half[mask(m)] == p.table()[mask(m)].scaled(Rational(1, 2)));

  const GroupValue off = GroupValue(GroupKind::symmat, 2, {Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(1, 2)});
  try {
    candidate_commuting(p, off);
    FAIL("expected a commutation failure");
  } catch (const CommutationFailure& e) {
    CHECK(std::string(e.what()).find("{s}") != std::string::npos);
  }
  CHECK_THROWS_AS(candidate_commuting(p, diag("2", "0")), PreconditionError);
  CHECK_THROWS_AS(candidate_commuting(p, diag("1/2", "1/4")), AlreadyPresent);
  CHECK_THROWS_AS(candidate_commuting(small_pair(), q1("1/5")), UnsupportedInstance);
}

TEST_CASE("convex construction") {
  const WitnessPair p = small_pair();
  const ExtensionCandidate zero = candidate_zero(p), one = candidate_one(p);
  // The midpoint 1/2 is already a ground value.
  CHECK_THROWS_AS(candidate_convex(p, zero, one, Rational(1, 2)), AlreadyPresent);
  const WitnessPair pp = plane_pair();
  const ExtensionCandidate half = candidate_convex(pp, candidate_zero(pp), candidate_one(pp), Rational(1, 2));
  CHECK(half.target() == q2("1/2", "1/2"));
  for (std::uint32_t m = 0; m < 4; ++m) CHECK(half[mask(m)] == pp.table()[mask(m)].scaled(Rational(1, 2)));
  check_round_trip(pp, half);

  CHECK(candidate_convex(p, zero, one, 1) == zero);
  CHECK(candidate_convex(p, zero, one, 0) == one);
  CHECK_THROWS_AS(candidate_convex(p, zero, one, Rational(3, 2)), PreconditionError);
  CHECK_THROWS_AS(candidate_convex(p, zero, one, -1), PreconditionError);
  const ExtensionCandidate bad(p.algebra(), q1("3/4"), std::vector<GroupValue>(4, q1("3/4")));
  CHECK_THROWS_AS(candidate_convex(p, zero, bad, Rational(1, 2)), RejectedCandidate);

  auto zalg = make_algebra(GroupSpec::zvec(1), GroupValue(GroupKind::zvec, 1, {2}));
  const WitnessPair zp(WitnessTable(zalg, {{"a", GroupValue(GroupKind::zvec, 1, {1})}},
                                    {zalg->unit(), GroupValue(GroupKind::zvec, 1, {1})}));
  CHECK_THROWS_AS(candidate_convex(zp, candidate_zero(zp), candidate_one(zp), Rational(1, 2)), UnsupportedInstance);
}

TEST_CASE("restriction") {
  const WitnessPair p = small_pair();
  const ExtensionCandidate e = restrict_to_candidate(p, "b");
  REQUIRE(e.values().size() == 2);
  CHECK(e[FinSubset{}] == q1("1/3"));
  CHECK(e[FinSubset::singleton(0)] == q1("1/3"));
  const WitnessPair rest = restrict_pair(p, "b");
  CHECK(delta(rest.table().values(), {}, FinSubset::singleton(0)) == q1("1/2"));
  CHECK(d(e.values(), {}, FinSubset::singleton(0)).is_zero());
  CHECK(check_candidate(rest, e).passed());
  CHECK_THROWS_AS(restrict_to_candidate(p, "c"), PreconditionError);

  gen::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 5));
    const WitnessPair ext(gen::random_min_table(rng, 1 + trial % 2, n, 5));
    for (const auto& g : ext.table().ground()) {
      const WitnessPair base = restrict_pair(ext, g.label);
      const ExtensionCandidate cand = restrict_to_candidate(ext, g.label);
      CHECK(check_candidate(base, cand).passed());
    }
  }
}

TEST_CASE("every construction passes on random instances") {
  gen::Rng rng(37);
  std::size_t tested = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    const WitnessPair p(gen::random_min_table(rng, 1 + trial % 2, n, 5));
    const auto cands = constructions(p);
    for (const auto& c : cands) {
      check_round_trip(p, c);
      ++tested;
    }
    // Convex mixtures of the constructions, with linearity of D.
    for (std::size_t k = 0; k + 1 < cands.size(); ++k) {
      const Rational theta(gen::uniform(rng, 1, 4), 5);
      try {
        const ExtensionCandidate mix = candidate_convex(p, cands[k], cands[k + 1], theta);
        check_round_trip(p, mix);
        ++tested;
        p.table().full().for_each_subset([&](FinSubset a) {
          FinSubset{}.for_each_between(a, [&](FinSubset x) {
            CHECK(d(mix.values(), x, a) == d(cands[k].values(), x, a).scaled(theta) +
                                               d(cands[k + 1].values(), x, a).scaled(1 - theta));
          });
        });
      } catch (const AlreadyPresent&) {
      }
    }
    // Range candidates vanish off the diagonal X ∩ U = A ∩ U.
    p.table().full().for_each_subset([&](FinSubset u) {
      try {
        const ExtensionCandidate r = candidate_range(p, u);
        p.table().full().for_each_subset([&](FinSubset a) {
          FinSubset{}.for_each_between(a, [&](FinSubset x) {
            if ((x & u) != (a & u)) CHECK(d(r.values(), x, a).is_zero());
          });
        });
      } catch (const AlreadyPresent&) {
      }
    });
  }
  CHECK(tested > 100);

  SUBCASE("commuting products") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto dim = static_cast<std::size_t>(gen::uniform(rng, 2, 3));
      const auto q = gen::orthogonal(dim);
      auto ground = gen::commuting_family(rng, q, static_cast<std::size_t>(gen::uniform(rng, 1, 3)), 3);
      const WitnessPair p(gen::product_table(gen::identity_algebra(dim), ground));
      std::vector<Rational> lambda(dim);
      for (auto& l : lambda) l = gen::unit_fraction(rng, 5);
      const GroupValue t = gen::in_basis(q, lambda);
      if (p.table().find_value(t)) continue;
      const ExtensionCandidate c = candidate_commuting(p, t);
      check_round_trip(p, c);
      p.table().full().for_each_subset([&](FinSubset a) {
        FinSubset{}.for_each_between(a, [&](FinSubset x) {
          CHECK(d(c.values(), x, a) == GroupValue::from_matrix(matrix_product(t, d(p.table().values(), x, a))));
        });
      });
    }
  }
}

TEST_CASE("candidate check decides whether the assembled table is a witness") {
  gen::Rng rng(41);
  int accepted = 0, rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    const WitnessPair p(gen::random_min_table(rng, 1, n, 4));
    const auto alg = p.algebra();
    GroupValue t = q1("0");
    do {
      t = GroupValue(GroupKind::qvec, 1, {gen::unit_fraction(rng, 6)});
    } while (p.table().find_value(t));
    std::vector<GroupValue> values{t};
    for (std::size_t m = 1; m < (std::size_t{1} << n); ++m) {
      // Mostly below beta so that a fair share of candidates pass.
      const Rational cap = std::min(Rational(t.entries()[0]), Rational(p.table()[mask(static_cast<std::uint32_t>(m))].entries()[0]));
      Rational v = cap * gen::unit_fraction(rng, 3);
      if (gen::uniform(rng, 0, 5) == 0) v = gen::unit_fraction(rng, 4);
      values.push_back(GroupValue(GroupKind::qvec, 1, {v}));
    }
    const ExtensionCandidate cand(alg, t, values);

    auto ground = p.table().ground();
    ground.push_back({"t", t});
    auto table = std::vector<GroupValue>(p.table().values().begin(), p.table().values().end());
    table.insert(table.end(), values.begin(), values.end());
    const bool witness = verify_witness(WitnessTable(alg, ground, table)).passed();

    const bool ok = check_candidate(p, cand).passed();
    CHECK(ok == witness);
    (ok ? accepted : rejected)++;
  }
  CHECK(accepted > 20);
  CHECK(rejected > 20);
}

TEST_CASE("closure_scan") {
  SUBCASE("single element") {
    const WitnessPair p(gen::min_table(gen::unit_cube(1), {{"a", q1("1/2")}}));
    const ClosureResult r = closure_scan(p, 64);
    CHECK(r.fixed_point);
    CHECK_FALSE(r.budget_exhausted);
    CHECK(r.all_properties());
    REQUIRE(r.steps.size() == 2);
    CHECK(r.steps[0].method == "zero");
    CHECK(r.steps[1].method == "one");
    std::set<std::string> values;
    for (const auto& g : r.pair.table().ground()) values.insert(to_string(g.value));
    CHECK(values == std::set<std::string>{"(0)", "(1/2)", "(1)"});
  }
  SUBCASE("already closed") {
    const WitnessPair p(gen::min_table(gen::unit_cube(1), {{"0", q1("0")}, {"1", q1("1")}}));
    const ClosureResult r = closure_scan(p, 64);
    CHECK(r.steps.empty());
    CHECK(r.fixed_point);
    CHECK(r.all_properties());
    CHECK(r.pair == p);
  }
  SUBCASE("plane example") {
    const WitnessPair p = plane_pair();
    const ClosureResult r = closure_scan(p, 64);
    CHECK(r.fixed_point);
    CHECK(r.all_properties());
    CHECK(verify_witness(r.pair.table()).passed());
    const WitnessTable& t = r.pair.table();
    for (const auto& v : {q2("1/2", "1/3"), q2("1/2", "2/3"), q2("0", "0"), q2("1", "1"), q2("1/2", "0"), q2("0", "2/3")})
      CHECK(t.find_value(v).has_value());
    // The original pair survives as a restriction.
    WitnessPair back = r.pair;
    for (auto it = r.steps.rbegin(); it != r.steps.rend(); ++it) back = restrict_pair(back, it->label);
    CHECK(back == p);
  }
  SUBCASE("budget") {
    const ClosureResult r = closure_scan(plane_pair(), 1);
    CHECK(r.budget_exhausted);
    CHECK_FALSE(r.fixed_point);
    CHECK(r.steps.size() == 1);
  }
  SUBCASE("random fixed points satisfy the closure properties") {
    gen::Rng rng(43);
    int reached = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const WitnessPair p(gen::random_min_table(rng, 1, static_cast<std::size_t>(gen::uniform(rng, 1, 3)), 4));
      const ClosureResult r = closure_scan(p, 64);
      CHECK(verify_witness(r.pair.table()).passed());
      if (!r.fixed_point) continue;
      ++reached;
      CHECK(r.all_properties());
    }
    CHECK(reached > 0);
  }
}

TEST_CASE("fresh labels") {
  const WitnessPair p(gen::min_table(gen::unit_cube(1), {{"0", q1("1/2")}, {"0#2", q1("1/3")}}));
  CHECK(fresh_label(p.table(), "x") == "x");
  CHECK(fresh_label(p.table(), "0") == "0#3");
}
