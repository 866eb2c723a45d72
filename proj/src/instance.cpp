#include "coopls/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace coopls {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string place(int player, int period) {
  return "(player " + std::to_string(player + 1) + ", period " +
         std::to_string(period + 1) + ")";
}

void check_cost_vector(std::vector<Rat>& costs, int player, const char* field) {
  for (std::size_t t = 0; t < costs.size(); ++t) {
    costs[t].canonicalize();
    if (costs[t] < 0) {
      fail(Errc::NegativeCost, std::string("negative ") + field + " cost at " +
                                   place(player, static_cast<int>(t)));
    }
  }
}

/// hold/backlog vectors may be given with T-1 entries (the meaningful ones);
/// normalize to length T with a trailing zero.
void normalize_transition_costs(std::vector<Rat>& costs, int T, int player,
                                const char* field) {
  if (static_cast<int>(costs.size()) == T - 1) {
    costs.emplace_back(0);
  }
  if (static_cast<int>(costs.size()) != T) {
    fail(Errc::ShapeMismatch,
         std::string(field) + " array of player " + std::to_string(player + 1) +
             " has " + std::to_string(costs.size()) + " entries, expected " +
             std::to_string(T));
  }
}

Rat cost_entry_from_json(const ordered_json& j, int player, const char* field) {
  if (j.is_number_integer()) {
    return Rat(static_cast<long>(j.get<long long>()));
  }
  if (j.is_string()) {
    return rat_from_string(j.get<std::string>());
  }
  fail(Errc::BadInput, std::string("cost entry of player ") +
                           std::to_string(player + 1) + " field '" + field +
                           "' must be an integer or an \"a/b\" string");
}

std::vector<Rat> cost_vector_from_json(const ordered_json& j, int player,
                                       const char* field) {
  if (!j.is_array()) {
    fail(Errc::BadInput, std::string("field '") + field + "' of player " +
                             std::to_string(player + 1) + " must be an array");
  }
  std::vector<Rat> out;
  out.reserve(j.size());
  for (const auto& entry : j) out.push_back(cost_entry_from_json(entry, player, field));
  return out;
}

ordered_json cost_vector_to_json(const std::vector<Rat>& costs) {
  ordered_json arr = ordered_json::array();
  for (const Rat& c : costs) {
    if (c.get_den() == 1 && c.get_num().fits_slong_p()) {
      arr.push_back(c.get_num().get_si());
    } else {
      arr.push_back(rat_to_string(c));
    }
  }
  return arr;
}

}  // namespace

std::vector<int> Coalition::members() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string Coalition::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int i : members()) {
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  out += "}";
  return out;
}

long long CoalitionParams::total_demand() const {
  long long total = 0;
  for (long long d : demand) total += d;
  return total;
}

ValidatedInstance validate(SIInstance inst) {
  if (inst.n < 1) {
    fail(Errc::ShapeMismatch, "instance needs at least one player");
  }
  if (inst.n > 31) {
    fail(Errc::ShapeMismatch, "player count above the 31-bit coalition mask limit");
  }
  if (inst.T < 1) {
    fail(Errc::ShapeMismatch, "instance needs at least one period");
  }
  if (static_cast<int>(inst.players.size()) != inst.n) {
    fail(Errc::ShapeMismatch,
         "declared n=" + std::to_string(inst.n) + " but " +
             std::to_string(inst.players.size()) + " player records given");
  }
  for (int i = 0; i < inst.n; ++i) {
    PlayerData& pd = inst.players[i];
    if (static_cast<int>(pd.demand.size()) != inst.T) {
      fail(Errc::ShapeMismatch, "demand array of player " + std::to_string(i + 1) +
                                    " has " + std::to_string(pd.demand.size()) +
                                    " entries, expected " + std::to_string(inst.T));
    }
    if (static_cast<int>(pd.prod.size()) != inst.T) {
      fail(Errc::ShapeMismatch, "production cost array of player " +
                                    std::to_string(i + 1) + " has " +
                                    std::to_string(pd.prod.size()) +
                                    " entries, expected " + std::to_string(inst.T));
    }
    if (static_cast<int>(pd.setup.size()) != inst.T) {
      fail(Errc::ShapeMismatch, "setup cost array of player " +
                                    std::to_string(i + 1) + " has " +
                                    std::to_string(pd.setup.size()) +
                                    " entries, expected " + std::to_string(inst.T));
    }
    normalize_transition_costs(pd.hold, inst.T, i, "holding cost");
    normalize_transition_costs(pd.backlog, inst.T, i, "backlogging cost");
    for (int t = 0; t < inst.T; ++t) {
      if (pd.demand[t] < 0) {
        fail(Errc::NegativeDemand, "negative demand at " + place(i, t));
      }
    }
    check_cost_vector(pd.prod, i, "production");
    check_cost_vector(pd.hold, i, "holding");
    check_cost_vector(pd.backlog, i, "backlogging");
    check_cost_vector(pd.setup, i, "setup");
  }
  return ValidatedInstance(std::move(inst));
}

CoalitionParams coalition_params(const ValidatedInstance& inst, Coalition S) {
  if (S.mask == 0) {
    fail(Errc::EmptyCoalition, "coalition mask 0 has no members");
  }
  if (S.mask >= (1u << inst.n())) {
    fail(Errc::BadInput, "coalition mask " + std::to_string(S.mask) +
                             " names players beyond n=" + std::to_string(inst.n()));
  }
  const int T = inst.T();
  CoalitionParams out;
  out.demand.assign(T, 0);
  bool first = true;
  for (int i : S.members()) {
    const PlayerData& pd = inst.player(i);
    for (int t = 0; t < T; ++t) out.demand[t] += pd.demand[t];
    if (first) {
      out.prod = pd.prod;
      out.hold = pd.hold;
      out.backlog = pd.backlog;
      out.setup = pd.setup;
      first = false;
    } else {
      for (int t = 0; t < T; ++t) {
        out.prod[t] = std::min(out.prod[t], pd.prod[t]);
        out.hold[t] = std::min(out.hold[t], pd.hold[t]);
        out.backlog[t] = std::min(out.backlog[t], pd.backlog[t]);
        out.setup[t] = std::min(out.setup[t], pd.setup[t]);
      }
    }
  }
  return out;
}

SIInstance instance_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::BadInput, std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("T") || !j.contains("players")) {
    fail(Errc::BadInput, "instance JSON must be an object with n, T and players");
  }
  if (!j["n"].is_number_integer() || !j["T"].is_number_integer()) {
    fail(Errc::BadInput, "n and T must be integers");
  }
  SIInstance inst;
  inst.n = j["n"].get<int>();
  inst.T = j["T"].get<int>();
  if (!j["players"].is_array()) {
    fail(Errc::BadInput, "players must be an array");
  }
  int index = 0;
  for (const auto& pj : j["players"]) {
    if (!pj.is_object()) {
      fail(Errc::BadInput, "player record " + std::to_string(index + 1) +
                               " must be an object");
    }
    for (const char* key : {"d", "p", "h", "b", "k"}) {
      if (!pj.contains(key)) {
        fail(Errc::BadInput, "player record " + std::to_string(index + 1) +
                                 " is missing field '" + key + "'");
      }
    }
    PlayerData pd;
    if (!pj["d"].is_array()) {
      fail(Errc::BadInput, "field 'd' of player " + std::to_string(index + 1) +
                               " must be an array");
    }
    for (const auto& dj : pj["d"]) {
      if (!dj.is_number_integer()) {
        fail(Errc::BadInput, "demands of player " + std::to_string(index + 1) +
                                 " must be JSON integers");
      }
      pd.demand.push_back(dj.get<long long>());
    }
    pd.prod = cost_vector_from_json(pj["p"], index, "p");
    pd.hold = cost_vector_from_json(pj["h"], index, "h");
    pd.backlog = cost_vector_from_json(pj["b"], index, "b");
    pd.setup = cost_vector_from_json(pj["k"], index, "k");
    inst.players.push_back(std::move(pd));
    ++index;
  }
  return inst;
}

std::string instance_to_json(const SIInstance& inst) {
  ordered_json j;
  j["n"] = inst.n;
  j["T"] = inst.T;
  j["players"] = ordered_json::array();
  for (const PlayerData& pd : inst.players) {
    ordered_json pj;
    pj["d"] = pd.demand;
    pj["p"] = cost_vector_to_json(pd.prod);
    pj["h"] = cost_vector_to_json(pd.hold);
    pj["b"] = cost_vector_to_json(pd.backlog);
    pj["k"] = cost_vector_to_json(pd.setup);
    j["players"].push_back(std::move(pj));
  }
  return j.dump(2);
}

SIInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(Errc::BadInput, "cannot open instance file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json(buffer.str());
}

}  // namespace coopls
