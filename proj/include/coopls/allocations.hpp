#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "coopls/game.hpp"

namespace coopls {

/// Per-period unit prices induced by an optimal plan: a period with demand
/// pays its per-unit operation cost plus an equal per-unit split of the
/// setup charge of the period that serves it; zero-demand periods pay 0.
/// For an optimal plan, price-weighted demand reproduces the plan cost
/// exactly.
struct UnitPriceVector {
  std::vector<Rat> price;
};

/// Throws Error(InconsistentPlan) when the plan does not fit the params
/// (wrong length, zero-demand mismatch, or derived fields out of sync).
UnitPriceVector unitary_prices(const CoalitionParams& params,
                               const OrderingPlan& plan);

/// Charges every player their own demand at the grand-coalition unit
/// prices. Efficient by construction when grand_plan is optimal.
Allocation unitary_owen_point(const ValidatedInstance& inst,
                              const OrderingPlan& grand_plan);

/// Checks the price-dominance sufficient condition: the grand-coalition
/// unit price must not exceed any proper coalition's unit price wherever
/// that coalition has demand. When it holds, the unitary Owen point is in
/// the core. On failure reports the first offending (coalition, period) in
/// ascending (mask, period) order.
struct SufficiencyReport {
  bool holds = true;
  std::uint32_t coalition_mask = 0;
  int period = -1;
};

SufficiencyReport check_price_dominance(const ValidatedInstance& inst,
                              const PlanProfile& profile);

/// Core certificate in setup-apportionment form. For each proper coalition
/// the grand plan's setup charges are spread over the periods it serves:
/// weight(t) says which fraction of the coalition's own setup total the
/// serving period t absorbs, and the certificate is valid when the weights
/// sum to at most one. Coalitions whose own plan pays no setup at all
/// (degenerate_setup) carry the aggregate inequality directly: their
/// weight_sum must be at most zero. The certificate exists if and only if
/// the unitary Owen point of the profile's grand plan lies in the core.
struct BetaCertificate {
  struct Entry {
    int period;
    Rat weight;
  };
  struct Row {
    std::uint32_t mask = 0;
    bool degenerate_setup = false;
    std::vector<Entry> weights;  // empty for degenerate rows
    Rat weight_sum;              // sum of weights, or the aggregate bound
    Rat budget;                  // 1 normally, 0 for degenerate rows
    bool satisfied() const { return weight_sum <= budget; }
  };
  std::vector<Row> rows;
};

struct CertificateResult {
  bool exists = false;
  BetaCertificate certificate;     // filled when exists
  std::uint32_t witness_mask = 0;  // first failing coalition otherwise
};

CertificateResult core_certificate(const ValidatedInstance& inst,
                                       const PlanProfile& profile);

/// Difference of the per-unit operation costs two plans pay in period t
/// (positive when `left` pays more). Antisymmetric by construction.
Rat unit_cost_gap(const OrderingPlan& left, const OrderingPlan& right, int t);

/// CSV with header "coalition,period,beta,bound". Normal rows emit one line
/// per (coalition, period): beta is the chosen weight and bound the smallest
/// admissible weight (equal here, since the tight choice is exported).
/// Degenerate rows emit a single line with an empty period, the aggregate
/// value as beta, and bound 0 (the aggregate must stay at or below it).
void write_certificate_csv(std::ostream& out, const BetaCertificate& cert);

}  // namespace coopls
