#include "coopls/allocations.hpp"

#include <ostream>
#include <string>

namespace coopls {

namespace {

/// Total demand assigned to each ordering period under the plan.
std::vector<long long> served_demand(const CoalitionParams& params,
                                     const OrderingPlan& plan) {
  std::vector<long long> out(params.periods(), 0);
  for (int t : plan.open_periods) {
    for (int tau : plan.served[t]) out[t] += params.demand[tau];
  }
  return out;
}

void check_plan_fits(const CoalitionParams& params, const OrderingPlan& plan) {
  const int T = params.periods();
  if (static_cast<int>(plan.producer.size()) != T ||
      static_cast<int>(plan.unit_cost.size()) != T ||
      static_cast<int>(plan.served.size()) != T) {
    fail(Errc::InconsistentPlan, "plan shape does not match the horizon");
  }
  const UnitCostMatrix matrix = unit_cost_matrix(params);
  for (int tau = 0; tau < T; ++tau) {
    const int t = plan.producer[tau];
    if (params.demand[tau] == 0) {
      if (t != kNoOrder) {
        fail(Errc::InconsistentPlan, "plan orders for zero demand in period " +
                                         std::to_string(tau + 1));
      }
      continue;
    }
    if (t < 0 || t >= T) {
      fail(Errc::InconsistentPlan, "plan leaves demand of period " +
                                       std::to_string(tau + 1) + " unserved");
    }
    if (plan.unit_cost[tau] != matrix.cost[t][tau]) {
      fail(Errc::InconsistentPlan, "plan unit cost out of sync in period " +
                                       std::to_string(tau + 1));
    }
  }
}

}  // namespace

UnitPriceVector unitary_prices(const CoalitionParams& params,
                               const OrderingPlan& plan) {
  check_plan_fits(params, plan);
  const int T = params.periods();
  const std::vector<long long> load = served_demand(params, plan);
  UnitPriceVector out;
  out.price.assign(T, Rat(0));
  for (int tau = 0; tau < T; ++tau) {
    const int t = plan.producer[tau];
    if (t == kNoOrder) continue;
    out.price[tau] =
        plan.unit_cost[tau] + params.setup[t] / Rat(static_cast<long>(load[t]));
  }
  return out;
}

Allocation unitary_owen_point(const ValidatedInstance& inst,
                              const OrderingPlan& grand_plan) {
  const CoalitionParams grand = coalition_params(inst, inst.grand());
  const UnitPriceVector prices = unitary_prices(grand, grand_plan);
  Allocation x;
  x.shares.assign(inst.n(), Rat(0));
  for (int i = 0; i < inst.n(); ++i) {
    for (int t = 0; t < inst.T(); ++t) {
      const long long d = inst.player(i).demand[t];
      if (d != 0) x.shares[i] += prices.price[t] * Rat(static_cast<long>(d));
    }
  }
  return x;
}

SufficiencyReport check_price_dominance(const ValidatedInstance& inst,
                              const PlanProfile& profile) {
  const Coalition grand = inst.grand();
  const CoalitionParams grand_params = coalition_params(inst, grand);
  const UnitPriceVector grand_prices =
      unitary_prices(grand_params, profile.plan(grand));
  SufficiencyReport report;
  for (std::uint32_t mask = 1; mask < grand.mask; ++mask) {
    const Coalition S{mask};
    const CoalitionParams params = coalition_params(inst, S);
    const UnitPriceVector prices = unitary_prices(params, profile.plan(S));
    for (int t = 0; t < inst.T(); ++t) {
      if (params.demand[t] == 0) continue;
      if (grand_prices.price[t] > prices.price[t]) {
        report.holds = false;
        report.coalition_mask = mask;
        report.period = t;
        return report;
      }
    }
  }
  return report;
}

Rat unit_cost_gap(const OrderingPlan& left, const OrderingPlan& right, int t) {
  return left.unit_cost[t] - right.unit_cost[t];
}

CertificateResult core_certificate(const ValidatedInstance& inst,
                                       const PlanProfile& profile) {
  const Coalition grand = inst.grand();
  const CoalitionParams grand_params = coalition_params(inst, grand);
  const OrderingPlan& grand_plan = profile.plan(grand);
  check_plan_fits(grand_params, grand_plan);
  const std::vector<long long> grand_load = served_demand(grand_params, grand_plan);

  CertificateResult result;
  for (std::uint32_t mask = 1; mask < grand.mask; ++mask) {
    const Coalition S{mask};
    const CoalitionParams params = coalition_params(inst, S);
    const OrderingPlan& own_plan = profile.plan(S);
    check_plan_fits(params, own_plan);

    // For each ordering period of the grand plan, how much the coalition's
    // members would overpay (relative to their own plan) if billed at the
    // grand plan's operation costs plus their share of that period's setup.
    BetaCertificate::Row row;
    row.mask = mask;
    row.weight_sum = 0;
    Rat aggregate = 0;
    std::vector<std::pair<int, Rat>> overpay;  // (grand ordering period, amount)
    for (int t : grand_plan.open_periods) {
      Rat amount = 0;
      long long coalition_load = 0;
      for (int tau : grand_plan.served[t]) {
        const long long d = params.demand[tau];
        if (d == 0) continue;
        coalition_load += d;
        const Rat dr(static_cast<long>(d));
        amount += dr * unit_cost_gap(grand_plan, own_plan, tau);
        amount += dr * grand_params.setup[t] /
                  Rat(static_cast<long>(grand_load[t]));
      }
      aggregate += amount;
      if (coalition_load > 0) overpay.emplace_back(t, std::move(amount));
    }

    if (own_plan.total_setup == 0) {
      // No setup budget to spread: the certificate degenerates to the
      // aggregate comparison itself.
      row.degenerate_setup = true;
      row.weight_sum = aggregate;
      row.budget = 0;
    } else {
      for (auto& [t, amount] : overpay) {
        Rat weight = amount / own_plan.total_setup;
        row.weight_sum += weight;
        row.weights.push_back({t, std::move(weight)});
      }
      row.budget = 1;
    }
    if (!row.satisfied()) {
      result.exists = false;
      result.witness_mask = mask;
      result.certificate.rows.clear();
      return result;
    }
    result.certificate.rows.push_back(std::move(row));
  }
  result.exists = true;
  return result;
}

void write_certificate_csv(std::ostream& out, const BetaCertificate& cert) {
  out << "coalition,period,beta,bound\n";
  for (const auto& row : cert.rows) {
    if (row.degenerate_setup) {
      out << row.mask << ",," << rat_to_string(row.weight_sum) << ",0\n";
      continue;
    }
    for (const auto& entry : row.weights) {
      out << row.mask << "," << (entry.period + 1) << ","
          << rat_to_string(entry.weight) << "," << rat_to_string(entry.weight)
          << "\n";
    }
  }
}

}  // namespace coopls
