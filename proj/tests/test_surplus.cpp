#include <doctest.h>

#include <functional>
#include <nlohmann/json.hpp>
#include <vector>

#include "coopls/simulate.hpp"
#include "coopls/surplus.hpp"
#include "support/core_sampling.hpp"
#include "support/fixtures.hpp"

using namespace coopls;

namespace {

Allocation alloc(std::vector<Rat> shares) {
  Allocation x;
  x.shares = std::move(shares);
  return x;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::BadInput;
}

}  // namespace

TEST_CASE("cheapest unit prices across coalitions") {
  SUBCASE("two firms: minima mix the grand and singleton rows") {
    const ValidatedInstance inst = validate(fixtures::two_firms_three_periods());
    const GameAndProfile built = build_game(inst);
    const UnitPriceVector best = minimum_unitary_prices(inst, built.profile);
    CHECK(best.price == fixtures::fracs({"0", "21/11", "5/2"}));
  }
  SUBCASE("three firms, three periods: the grand row is cheapest everywhere") {
    const ValidatedInstance inst =
        validate(fixtures::three_firms_three_periods());
    const GameAndProfile built = build_game(inst);
    const UnitPriceVector best = minimum_unitary_prices(inst, built.profile);
    CHECK(best.price == fixtures::fracs({"6/5", "11/10", "21/10"}));
  }
}

TEST_CASE("leftover game after billing at the cheapest prices") {
  SUBCASE("two firms") {
    const ValidatedInstance inst = validate(fixtures::two_firms_three_periods());
    const GameAndProfile built = build_game(inst);
    const CostGame leftovers = surplus_game(inst, built.profile);
    CHECK(leftovers.tag == GameTag::Surplus);
    CHECK(leftovers.values ==
          fixtures::fracs({"21/11", "46/11", "45/11"}));
  }
  SUBCASE("three firms") {
    const ValidatedInstance inst =
        validate(fixtures::three_firms_three_periods());
    const GameAndProfile built = build_game(inst);
    const CostGame leftovers = surplus_game(inst, built.profile);
    CHECK(leftovers.values == fixtures::fracs({"7/5", "32/5", "4/5", "51/5",
                                               "3/5", "78/5", "0"}));
  }
  SUBCASE("every coordinate is nonnegative on random draws") {
    SimConfig config;
    config.players = 3;
    config.periods = 3;
    config.seed = 555;
    for (long long trial = 0; trial < 150; ++trial) {
      const ValidatedInstance inst = validate(generate_instance(config, trial));
      const GameAndProfile built = build_game(inst);
      const CostGame leftovers = surplus_game(inst, built.profile);
      for (const Rat& v : leftovers.values) REQUIRE(v >= 0);
    }
  }
}

TEST_CASE("settlement-period situation built from surplus shares") {
  const ValidatedInstance inst = validate(fixtures::two_firms_three_periods());
  const GameAndProfile built = build_game(inst);
  const Allocation alpha = alloc(fixtures::fracs({"10/11", "35/11"}));

  const PISituation pi = build_pi_situation(inst, built.profile, alpha);
  CHECK(pi.n == 2);
  CHECK(pi.periods == 4);
  CHECK(pi.shared_price == fixtures::fracs({"0", "21/11", "5/2", "1"}));
  CHECK(pi.demand[0] == fixtures::fracs({"0", "10", "10", "10/11"}));
  CHECK(pi.demand[1] == fixtures::fracs({"0", "35", "0", "35/11"}));
  CHECK(pi.blocking_rate == 149);  // 1 plus the sum of every cost entry

  const Allocation owen = pi_owen_point(pi);
  CHECK(owen.shares == fixtures::rats({45, 70}));
  CHECK(core_via_surplus(inst, built.profile, alpha).shares == owen.shares);

  // Shares outside the surplus core are refused.
  const Allocation bad = alloc(fixtures::fracs({"2", "23/11"}));
  CHECK(code_of([&] { build_pi_situation(inst, built.profile, bad); }) ==
        Errc::NotInSurplusCore);
  CHECK(code_of([&] { core_via_surplus(inst, built.profile, bad); }) ==
        Errc::NotInSurplusCore);
}

TEST_CASE("settlement situation serializes with blocked carrying") {
  const ValidatedInstance inst = validate(fixtures::two_firms_three_periods());
  const GameAndProfile built = build_game(inst);
  const Allocation alpha = alloc(fixtures::fracs({"10/11", "35/11"}));
  const PISituation pi = build_pi_situation(inst, built.profile, alpha);

  const nlohmann::json j = nlohmann::json::parse(pi_situation_to_json(pi));
  CHECK(j["n"] == 2);
  CHECK(j["T"] == 4);
  REQUIRE(j["players"].size() == 2);
  const auto& p0 = j["players"][0];
  CHECK(p0["d"] == nlohmann::json({0, 10, 10, "10/11"}));
  CHECK(p0["p"] == nlohmann::json({0, "21/11", "5/2", 1}));
  CHECK(p0["h"] == nlohmann::json({149, 149, 149, 149}));
  CHECK(p0["b"] == p0["h"]);
  CHECK(p0["k"] == nlohmann::json({0, 0, 0, 0}));
  CHECK(j["players"][1]["d"] == nlohmann::json({0, 35, 0, "35/11"}));
}

TEST_CASE("core members and surplus shares translate both ways") {
  SUBCASE("fixture pair") {
    const ValidatedInstance inst = validate(fixtures::two_firms_three_periods());
    const GameAndProfile built = build_game(inst);
    const Allocation x = alloc(fixtures::rats({46, 69}));
    const Allocation alpha = surplus_of_core(inst, built.profile, x);
    CHECK(alpha.shares == fixtures::fracs({"21/11", "24/11"}));
    CHECK(core_via_surplus(inst, built.profile, alpha).shares == x.shares);

    const Allocation outside = alloc(fixtures::rats({47, 68}));
    CHECK(code_of([&] { surplus_of_core(inst, built.profile, outside); }) ==
          Errc::NotInCore);
  }
  SUBCASE("sampled cost-game core points") {
    SimConfig config;
    config.players = 3;
    config.periods = 3;
    config.seed = 60601;
    int sampled = 0;
    for (long long trial = 0; trial < 40; ++trial) {
      const ValidatedInstance inst = validate(generate_instance(config, trial));
      const GameAndProfile built = build_game(inst);
      const CostGame leftovers = surplus_game(inst, built.profile);
      const auto points =
          core_sampling::sample_core_points(built.game, 5, 1000 + trial);
      for (const Allocation& x : points) {
        ++sampled;
        const Allocation alpha = surplus_of_core(inst, built.profile, x);
        REQUIRE(core_membership(leftovers, alpha).member());
        REQUIRE(core_via_surplus(inst, built.profile, alpha).shares == x.shares);
      }
    }
    CHECK(sampled > 100);
  }
  SUBCASE("sampled surplus-core points") {
    SimConfig config;
    config.players = 3;
    config.periods = 3;
    config.seed = 70707;
    int sampled = 0;
    for (long long trial = 0; trial < 40; ++trial) {
      const ValidatedInstance inst = validate(generate_instance(config, trial));
      const GameAndProfile built = build_game(inst);
      const CostGame leftovers = surplus_game(inst, built.profile);
      const auto points =
          core_sampling::sample_core_points(leftovers, 5, 2000 + trial);
      for (const Allocation& alpha : points) {
        ++sampled;
        const Allocation x = core_via_surplus(inst, built.profile, alpha);
        REQUIRE(core_membership(built.game, x).member());
        REQUIRE(surplus_of_core(inst, built.profile, x).shares == alpha.shares);
      }
    }
    CHECK(sampled > 100);
  }
}

TEST_CASE("lexicographic center of small games") {
  SUBCASE("single player pays their own cost") {
    CostGame solo;
    solo.n = 1;
    solo.values = fixtures::rats({17});
    CHECK(nucleolus(solo).shares == fixtures::rats({17}));
  }
  SUBCASE("symmetric pair splits evenly") {
    CostGame pair;
    pair.n = 2;
    pair.values = fixtures::rats({5, 5, 8});
    CHECK(nucleolus(pair).shares == fixtures::rats({4, 4}));
  }
  SUBCASE("two-firm fixture, cost game and leftover game") {
    const ValidatedInstance inst = validate(fixtures::two_firms_three_periods());
    const GameAndProfile built = build_game(inst);
    CHECK(nucleolus(built.game).shares == fixtures::rats({45, 70}));
    const CostGame leftovers = surplus_game(inst, built.profile);
    CHECK(nucleolus(leftovers).shares == fixtures::fracs({"10/11", "35/11"}));
  }
  SUBCASE("three-firm fixture, cost game and leftover game") {
    const ValidatedInstance inst =
        validate(fixtures::three_firms_three_periods());
    const GameAndProfile built = build_game(inst);
    const Allocation eta = nucleolus(built.game);
    CHECK(eta.shares == fixtures::fracs({"-1", "17/2", "29/2"}));
    CHECK(core_membership(built.game, eta).member());
    const CostGame leftovers = surplus_game(inst, built.profile);
    CHECK(nucleolus(leftovers).shares ==
          fixtures::fracs({"-38/5", "29/10", "47/10"}));
  }
  SUBCASE("empty core is detected at the first level") {
    CostGame tight;
    tight.n = 2;
    tight.values = fixtures::rats({1, 1, 3});
    CHECK(code_of([&] { nucleolus(tight); }) == Errc::EmptyCore);
  }
  SUBCASE("player cap") {
    CostGame big;
    big.n = 11;
    big.values.assign((1 << 11) - 1, Rat(1));
    CHECK(code_of([&] { nucleolus(big); }) == Errc::CapExceeded);
  }
}

TEST_CASE("lexicographic center lands in the core whenever it is nonempty") {
  SimConfig config;
  config.players = 3;
  config.periods = 3;
  config.seed = 424242;
  int nonempty = 0;
  for (long long trial = 0; trial < 60; ++trial) {
    const ValidatedInstance inst = validate(generate_instance(config, trial));
    const CostGame game = build_game(inst).game;
    const bool has_core =
        !core_sampling::sample_core_points(game, 1, trial).empty();
    try {
      const Allocation eta = nucleolus(game);
      REQUIRE(has_core);
      REQUIRE(core_membership(game, eta).member());
      ++nonempty;
    } catch (const Error& e) {
      REQUIRE(e.code() == Errc::EmptyCore);
      REQUIRE_FALSE(has_core);
    }
  }
  CHECK(nonempty > 30);
}

TEST_CASE("center of the cost game equals priced demand plus the center of "
          "the leftover game") {
  SimConfig config;
  config.players = 3;
  config.periods = 3;
  config.seed = 515151;
  int verified = 0;
  for (long long trial = 0; trial < 60; ++trial) {
    const ValidatedInstance inst = validate(generate_instance(config, trial));
    const GameAndProfile built = build_game(inst);
    const CostGame leftovers = surplus_game(inst, built.profile);
    Allocation eta_cost;
    Allocation eta_left;
    try {
      eta_left = nucleolus(leftovers);
    } catch (const Error& e) {
      REQUIRE(e.code() == Errc::EmptyCore);
      // The translation preserves the core either way.
      CHECK_THROWS_AS(nucleolus(built.game), Error);
      continue;
    }
    eta_cost = nucleolus(built.game);
    CHECK(core_via_surplus(inst, built.profile, eta_left).shares ==
          eta_cost.shares);
    ++verified;
  }
  CHECK(verified > 30);
}

TEST_CASE("zero grand surplus coincides with priced billing being stable") {
  for (const SIInstance& raw : {fixtures::three_firms_two_periods(),
                                fixtures::three_firms_three_periods(),
                                fixtures::two_firms_three_periods()}) {
    const ValidatedInstance inst = validate(raw);
    const GameAndProfile built = build_game(inst);
    CHECK(check_zero_surplus_criterion(inst, built.profile));
  }
  SimConfig config;
  config.players = 3;
  config.periods = 3;
  config.seed = 616161;
  for (long long trial = 0; trial < 100; ++trial) {
    const ValidatedInstance inst = validate(generate_instance(config, trial));
    const GameAndProfile built = build_game(inst);
    REQUIRE(check_zero_surplus_criterion(inst, built.profile));
  }
}
