// Copyright 2026 The bargain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// `bargain` command line: solve | simulate | verify | sweep.
//
// Exit codes: 0 success / verified, 1 counterexample found, 2 usage or
// configuration error.

#ifndef BARGAIN_TOOLS_BARGAIN_CLI_HPP
#define BARGAIN_TOOLS_BARGAIN_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bargain/bargain.hpp"

namespace bargain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kConfigSchema = "bargain.config/1";

// Error already carrying its user-facing location prefix.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  std::string variable;  // s<i> or b<i>, 1-based
  double from = 0.1;
  double to = 0.9;
  std::size_t points = 9;
  std::size_t curve_points = 11;
};

struct RunConfig {
  std::vector<double> sellers;
  std::vector<double> buyers;
  std::uint64_t seed = 0;
  unsigned max_rounds = 100;
  double value_epsilon = 1e-9;
  std::size_t grid = kDefaultGridResolution;
  std::string format;  // empty: command default
  int precision = 12;
  std::string out;
  std::string curves_out;
  bool details = false;

  std::vector<std::string> seller_strategies{"equilibrium"};
  std::vector<std::string> buyer_strategies{"equilibrium"};

  std::optional<double> verify_price;
  std::string verify_trace;

  SweepConfig sweep;

  // Where the market came from, for error messages.
  std::string spec_origin;
};

namespace detail {

inline std::string fmt(double v, int digits) { return format_real(v, digits); }

inline std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

inline std::size_t line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  return pos == std::string::npos ? 1 : line_of_offset(text, pos);
}

inline std::vector<double> parse_list(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw UsageError(flag + ": not a number: \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

inline std::vector<std::string> split_strategies(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

inline std::vector<std::string> strategies_from_json(const Json& j) {
  if (j.is_string()) return {j.get<std::string>()};
  std::vector<std::string> out;
  for (const Json& e : j) out.push_back(e.get<std::string>());
  return out;
}

// Applies a config file. Keys absent from the file keep their defaults.
inline void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("config:" + path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto where = [&](const std::string& key) {
    return "config:" + path + ":" + std::to_string(line_of_key(text, key)) + ": ";
  };

  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError("config:" + path + ":" + std::to_string(line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1)) +
                     ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config:" + path + ":1: top level must be an object");
  if (!j.contains("schema") || j["schema"] != kConfigSchema) {
    throw UsageError(where("schema") + "expected \"schema\": \"" + kConfigSchema + "\"");
  }

  const auto read = [&](const char* key, auto& target) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(target);
    } catch (const Json::exception&) {
      throw UsageError(where(key) + "bad value for \"" + key + "\"");
    }
  };
  read("sellers", cfg.sellers);
  read("buyers", cfg.buyers);
  read("seed", cfg.seed);
  read("max_rounds", cfg.max_rounds);
  read("value_epsilon", cfg.value_epsilon);
  read("grid", cfg.grid);
  read("format", cfg.format);
  read("precision", cfg.precision);
  if (j.contains("sellers") || j.contains("buyers")) {
    cfg.spec_origin = where(j.contains("sellers") ? "sellers" : "buyers");
  }

  if (j.contains("strategies")) {
    try {
      const Json& s = j.at("strategies");
      if (s.contains("sellers")) cfg.seller_strategies = strategies_from_json(s.at("sellers"));
      if (s.contains("buyers")) cfg.buyer_strategies = strategies_from_json(s.at("buyers"));
    } catch (const Json::exception&) {
      throw UsageError(where("strategies") + "bad strategy table");
    }
  }
  if (j.contains("verify")) {
    try {
      const Json& v = j.at("verify");
      if (v.contains("price")) cfg.verify_price = v.at("price").get<double>();
      if (v.contains("trace")) cfg.verify_trace = v.at("trace").get<std::string>();
    } catch (const Json::exception&) {
      throw UsageError(where("verify") + "bad verify section");
    }
  }
  if (j.contains("sweep")) {
    try {
      const Json& s = j.at("sweep");
      if (s.contains("variable")) cfg.sweep.variable = s.at("variable").get<std::string>();
      if (s.contains("from")) cfg.sweep.from = s.at("from").get<double>();
      if (s.contains("to")) cfg.sweep.to = s.at("to").get<double>();
      if (s.contains("points")) cfg.sweep.points = s.at("points").get<std::size_t>();
      if (s.contains("curve_points")) cfg.sweep.curve_points = s.at("curve_points").get<std::size_t>();
    } catch (const Json::exception&) {
      throw UsageError(where("sweep") + "bad sweep section");
    }
  }
}

inline MarketSpec make_spec(const RunConfig& cfg) {
  if (cfg.sellers.empty() || cfg.buyers.empty()) {
    throw UsageError("no market given: use --sellers/--buyers or a config file");
  }
  try {
    return MarketSpec(cfg.sellers, cfg.buyers);
  } catch (const ConfigError& e) {
    throw UsageError(cfg.spec_origin + e.what());
  }
}

inline std::shared_ptr<const Strategy> make_strategy(const std::string& text, const MarketSpec& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw UsageError("empty strategy");
  const auto num = [&](std::size_t k, double fallback) {
    if (k >= parts.size()) return fallback;
    char* end = nullptr;
    const double v = std::strtod(parts[k].c_str(), &end);
    if (parts[k].empty() || *end != '\0') throw UsageError("strategy \"" + text + "\": bad number");
    return v;
  };
  const Price target = n_pair_equilibrium(spec).price;
  try {
    if (parts[0] == "equilibrium") return std::make_shared<EquilibriumStrategy>(spec);
    if (parts[0] == "fixed") {
      if (parts.size() != 2) throw UsageError("strategy \"" + text + "\": use fixed:<price>");
      return std::make_shared<FixedPriceStrategy>(Price(num(1, 0.0)));
    }
    if (parts[0] == "greedy") return std::make_shared<GreedyConcederStrategy>(target, num(1, 1.0), num(2, 0.5));
    if (parts[0] == "random") {
      return std::make_shared<RandomStrategy>(num(1, 0.5 * target.value()), num(2, 2.0 * target.value()));
    }
  } catch (const Error& e) {
    throw UsageError("strategy \"" + text + "\": " + e.what());
  }
  throw UsageError("unknown strategy \"" + parts[0] + "\" (equilibrium|fixed|greedy|random)");
}

inline StrategyTable make_table(const RunConfig& cfg, const MarketSpec& spec) {
  const std::size_t n = spec.size();
  StrategyTable table;
  const auto add_side = [&](const std::vector<std::string>& names, const char* side) {
    if (names.size() != 1 && names.size() != n) {
      throw UsageError(std::string(side) + " strategies: need 1 or " + std::to_string(n) + " entries, got " +
                       std::to_string(names.size()));
    }
    for (std::size_t i = 0; i < n; ++i) table.push_back(make_strategy(names[names.size() == 1 ? 0 : i], spec));
  };
  add_side(cfg.seller_strategies, "seller");
  add_side(cfg.buyer_strategies, "buyer");
  return table;
}

inline void check_format(const std::string& format) {
  if (format != "text" && format != "json" && format != "csv") {
    throw UsageError("--format must be text, json or csv");
  }
}

// Writes to --out when given, otherwise to `fallback`.
inline void emit(const RunConfig& cfg, std::ostream& fallback, const std::string& body) {
  if (cfg.out.empty()) {
    fallback << body;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("--out: cannot write " + cfg.out);
  f << body;
}

}  // namespace detail

inline int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const MarketSpec spec = detail::make_spec(cfg);
  const std::string format = cfg.format.empty() ? "text" : cfg.format;
  detail::check_format(format);
  const int p = cfg.precision;
  const Equilibrium eq = n_pair_equilibrium(spec);

  std::vector<std::pair<std::string, double>> rows{{"price", eq.price.value()},
                                                   {"seller_share", eq.seller_share},
                                                   {"buyer_share", eq.buyer_share},
                                                   {"avg_seller_delta", eq.avg_seller_delta},
                                                   {"avg_buyer_delta", eq.avg_buyer_delta}};
  if (cfg.details) {
    if (spec.size() == 2) {
      const PairEquilibrium pe = pair_equilibrium_2x2(spec);
      rows.emplace_back("x_star", pe.x_star);
      rows.emplace_back("y_star", pe.y_star);
    }
    const double nash = nash_product_argmax(spec).value();
    rows.emplace_back("nash_price", nash);
    rows.emplace_back("nash_residual", std::abs(nash - eq.price.value()));
  }

  std::ostringstream s;
  if (format == "json") {
    Json j = Json::object();
    for (const auto& [k, v] : rows) j[k] = detail::fmt(v, p);
    s << j.dump(2) << "\n";
  } else if (format == "csv") {
    for (std::size_t k = 0; k < rows.size(); ++k) s << (k ? "," : "") << rows[k].first;
    s << "\n";
    for (std::size_t k = 0; k < rows.size(); ++k) s << (k ? "," : "") << detail::fmt(rows[k].second, p);
    s << "\n";
  } else {
    for (const auto& [k, v] : rows) s << std::left << std::setw(18) << k << detail::fmt(v, p) << "\n";
  }
  detail::emit(cfg, out, s.str());
  return kExitOk;
}

// Spread of all prices posted in one round (asks and bids together).
inline double offer_spread(const RoundRecord& r) {
  std::vector<double> prices;
  for (const Offer& o : r.book.selling) prices.push_back(o.price.value());
  for (const Offer& o : r.book.buying) prices.push_back(o.price.value());
  if (prices.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(prices.begin(), prices.end());
  return *hi - *lo;
}

inline std::string simulate_summary(const Trace& trace, int p, const std::string& format) {
  const auto agreements = trace.agreements();
  double lo = 0.0, hi = 0.0;
  if (!agreements.empty()) {
    lo = hi = agreements.front().price.value();
    for (const Agreement& a : agreements) {
      lo = std::min(lo, a.price.value());
      hi = std::max(hi, a.price.value());
    }
  }
  const Payoffs pay = discounted_payoffs(trace);
  std::ostringstream s;
  if (format == "json") {
    Json rounds = Json::array();
    for (const RoundRecord& r : trace.rounds) {
      rounds.push_back(Json{{"round", r.round},
                            {"asks", r.book.selling.size()},
                            {"bids", r.book.buying.size()},
                            {"agreements", r.agreements.size()},
                            {"offer_spread", detail::fmt(offer_spread(r), p)}});
    }
    Json payoffs = Json::object();
    for (std::size_t i = 0; i < pay.sellers.size(); ++i) {
      payoffs[to_string(AgentId{Side::kSeller, i})] = detail::fmt(pay.sellers[i], p);
    }
    for (std::size_t i = 0; i < pay.buyers.size(); ++i) {
      payoffs[to_string(AgentId{Side::kBuyer, i})] = detail::fmt(pay.buyers[i], p);
    }
    Json j{{"agreements", agreements.size()},
           {"rounds", trace.rounds.size()},
           {"terminated_reason", to_string(trace.terminated_reason)},
           {"price_min", agreements.empty() ? Json(nullptr) : Json(detail::fmt(lo, p))},
           {"price_max", agreements.empty() ? Json(nullptr) : Json(detail::fmt(hi, p))},
           {"dispersion", detail::fmt(hi - lo, p)},
           {"per_round", rounds},
           {"payoffs", payoffs}};
    s << j.dump(2) << "\n";
    return s.str();
  }

  s << "agreements   " << agreements.size() << "\n";
  s << "rounds       " << trace.rounds.size() << "\n";
  s << "termination  " << to_string(trace.terminated_reason) << "\n";
  if (agreements.empty()) {
    s << "no trade\n";
  } else {
    s << "price_min    " << detail::fmt(lo, p) << "\n";
    s << "price_max    " << detail::fmt(hi, p) << "\n";
  }
  s << "dispersion   " << detail::fmt(hi - lo, p) << "\n";
  s << "\nround  asks  bids  agreements  offer_spread\n";
  for (const RoundRecord& r : trace.rounds) {
    s << std::left << std::setw(7) << r.round << std::setw(6) << r.book.selling.size() << std::setw(6)
      << r.book.buying.size() << std::setw(12) << r.agreements.size() << detail::fmt(offer_spread(r), p) << "\n";
  }
  s << "\nagent  payoff\n";
  for (std::size_t i = 0; i < pay.sellers.size(); ++i) {
    s << std::left << std::setw(7) << to_string(AgentId{Side::kSeller, i}) << detail::fmt(pay.sellers[i], p) << "\n";
  }
  for (std::size_t i = 0; i < pay.buyers.size(); ++i) {
    s << std::left << std::setw(7) << to_string(AgentId{Side::kBuyer, i}) << detail::fmt(pay.buyers[i], p) << "\n";
  }
  return s.str();
}

inline int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const MarketSpec spec = detail::make_spec(cfg);
  const std::string format = cfg.format.empty() ? "text" : cfg.format;
  detail::check_format(format);
  const StrategyTable table = detail::make_table(cfg, spec);
  Trace trace = [&] {
    try {
      return simulate(spec, table, cfg.max_rounds, cfg.value_epsilon, cfg.seed);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }();
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw UsageError("--out: cannot write " + cfg.out);
    f << dump_canonical(to_json(trace));
  }
  out << simulate_summary(trace, cfg.precision, format);
  return kExitOk;
}

inline std::string describe(const Deviation& d, int p) {
  std::ostringstream s;
  s << to_string(d.kind) << " deviation by";
  for (const AgentId& id : d.participants) s << " " << to_string(id);
  if (d.counterparty) s << " (accepted by " << to_string(*d.counterparty) << ")";
  s << " at split " << detail::fmt(d.new_split, p) << ", time " << d.new_time << ", gains";
  for (double g : d.payoff_gains) s << " " << detail::fmt(g, p);
  return s.str();
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const std::string format = cfg.format.empty() ? "text" : cfg.format;
  detail::check_format(format);
  if (cfg.verify_price.has_value() == !cfg.verify_trace.empty()) {
    throw UsageError("verify: give exactly one of --price or --trace");
  }
  const PriceGrid grid = [&] {
    try {
      return PriceGrid(cfg.grid);
    } catch (const ConfigError& e) {
      throw UsageError(std::string("--grid: ") + e.what());
    }
  }();
  const int p = cfg.precision;
  std::ostringstream s;

  if (cfg.verify_price) {
    const MarketSpec spec = detail::make_spec(cfg);
    const double candidate = *cfg.verify_price;
    if (!(candidate > 0.0) || !std::isfinite(candidate)) throw UsageError("--price must be finite and > 0");
    const double p_n = n_pair_equilibrium(spec).price.value();
    const auto d = find_unilateral_deviation(Price(candidate), spec, grid);
    if (format == "json") {
      s << price_report(candidate, p_n, d).dump(2) << "\n";
    } else {
      s << "candidate    " << detail::fmt(candidate, p) << "\n";
      s << "p_n          " << detail::fmt(p_n, p) << "\n";
      s << (d ? describe(*d, p) : std::string("no deviation found on grid of ") + std::to_string(grid.resolution()))
        << "\n";
    }
    detail::emit(cfg, out, s.str());
    return d ? kExitCounterexample : kExitOk;
  }

  Trace trace = [&] {
    std::ifstream in(cfg.verify_trace);
    if (!in) throw UsageError("--trace: cannot open " + cfg.verify_trace);
    try {
      return trace_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
      throw UsageError("--trace: " + cfg.verify_trace + ": " + e.what());
    } catch (const Error& e) {
      throw UsageError("--trace: " + cfg.verify_trace + ": " + e.what());
    }
  }();
  TraceReport report = verify_trace(trace, trace.spec, grid);
  std::optional<Deviation> unilateral;
  if (!report.deviation && report.common_price && *report.common_price > 0.0) {
    unilateral = find_unilateral_deviation(Price(*report.common_price), trace.spec, grid);
  }
  if (format == "json") {
    Json j = to_json(report);
    if (unilateral) j["deviations"].push_back(to_json(*unilateral));
    s << j.dump(2) << "\n";
  } else {
    s << "agreements   " << report.agreement_count << (report.vacuous ? " (vacuous)" : "") << "\n";
    s << "unanimous    " << (report.unanimous ? "yes" : "no") << "\n";
    if (report.common_price) s << "common_price " << detail::fmt(*report.common_price, p) << "\n";
    s << "p_n          " << detail::fmt(report.p_n, p) << "\n";
    s << "matches_p_n  " << (report.matches_p_n ? "yes" : "no") << "\n";
    if (report.deviation) s << describe(*report.deviation, p) << "\n";
    if (unilateral) s << describe(*unilateral, p) << "\n";
    if (!report.deviation && !unilateral) s << "no deviation found\n";
  }
  detail::emit(cfg, out, s.str());
  return (report.deviation || unilateral) ? kExitCounterexample : kExitOk;
}

struct SweepRow {
  double value = 0.0;
  Equilibrium eq;
  double x_star = 0.0;
  double y_star = 0.0;
  std::optional<IndependentPairings> corners;
};

inline std::vector<SweepRow> sweep_rows(const RunConfig& cfg, const MarketSpec& base) {
  const SweepConfig& sw = cfg.sweep;
  if (sw.variable.size() < 2 || (sw.variable[0] != 's' && sw.variable[0] != 'b')) {
    throw UsageError("--sweep: variable must be s<i> or b<i>");
  }
  char* end = nullptr;
  const long idx = std::strtol(sw.variable.c_str() + 1, &end, 10);
  if (*end != '\0' || idx < 1 || static_cast<std::size_t>(idx) > base.size()) {
    throw UsageError("--sweep: no agent " + sw.variable);
  }
  if (sw.points < 1) throw UsageError("--points must be >= 1");

  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < sw.points; ++k) {
    const double v = sw.points == 1 ? sw.from
                                    : sw.from + (sw.to - sw.from) * static_cast<double>(k) /
                                                    static_cast<double>(sw.points - 1);
    std::vector<double> sellers = base.sellers(), buyers = base.buyers();
    (sw.variable[0] == 's' ? sellers : buyers)[static_cast<std::size_t>(idx - 1)] = v;
    MarketSpec spec = [&] {
      try {
        return MarketSpec(sellers, buyers);
      } catch (const ConfigError& e) {
        throw UsageError("--sweep: " + sw.variable + " = " + format_real(v) + ": " + e.what());
      }
    }();
    SweepRow row;
    row.value = v;
    row.eq = n_pair_equilibrium(spec);
    if (spec.size() == 2) {
      const PairEquilibrium pe = pair_equilibrium_2x2(spec);
      row.x_star = pe.x_star;
      row.y_star = pe.y_star;
      row.corners = independent_pairings_2x2(spec);
    } else {
      // Coalitions bargain like two players with the average factors.
      const PieSplit rep = rubinstein_split(DiscountFactor(spec.seller_average()),
                                            DiscountFactor(spec.buyer_average()));
      row.x_star = rep.x;
      row.y_star = rep.y;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const MarketSpec base = detail::make_spec(cfg);
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  detail::check_format(format);
  const int p = cfg.precision;
  const auto rows = sweep_rows(cfg, base);
  const std::vector<std::string> corner_names{"corner_s1b1", "corner_s1b2", "corner_s2b1", "corner_s2b2"};

  // Continuation-value curves of the base 2x2 market.
  std::vector<std::array<double, 3>> curves;
  if (base.size() == 2 && cfg.sweep.curve_points >= 2) {
    for (std::size_t k = 0; k < cfg.sweep.curve_points; ++k) {
      const double x = static_cast<double>(k) / static_cast<double>(cfg.sweep.curve_points - 1);
      curves.push_back({x, continuation_value(base, Side::kSeller, x, 1), continuation_value(base, Side::kBuyer, x, 1)});
    }
  }

  std::ostringstream s;
  if (format == "json") {
    Json jrows = Json::array();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const SweepRow& r = rows[k];
      Json row{{"index", k},
               {"variable", cfg.sweep.variable},
               {"value", detail::fmt(r.value, p)},
               {"p_n", detail::fmt(r.eq.price.value(), p)},
               {"seller_share", detail::fmt(r.eq.seller_share, p)},
               {"buyer_share", detail::fmt(r.eq.buyer_share, p)},
               {"x_star", detail::fmt(r.x_star, p)},
               {"y_star", detail::fmt(r.y_star, p)}};
      for (std::size_t c = 0; c < 4; ++c) {
        row[corner_names[c]] = r.corners ? Json(detail::fmt(r.corners->splits[c].x, p)) : Json(nullptr);
      }
      jrows.push_back(row);
    }
    Json jcurves = Json::array();
    for (const auto& c : curves) {
      jcurves.push_back(Json{{"x", detail::fmt(c[0], p)}, {"v_seller", detail::fmt(c[1], p)},
                             {"v_buyer", detail::fmt(c[2], p)}});
    }
    s << Json{{"schema", "bargain.sweep/1"}, {"rows", jrows}, {"curves", jcurves}}.dump(2) << "\n";
  } else {
    s << "index,variable,value,p_n,seller_share,buyer_share,x_star,y_star";
    for (const auto& c : corner_names) s << "," << c;
    s << "\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const SweepRow& r = rows[k];
      s << k << "," << cfg.sweep.variable << "," << detail::fmt(r.value, p) << "," << detail::fmt(r.eq.price.value(), p)
        << "," << detail::fmt(r.eq.seller_share, p) << "," << detail::fmt(r.eq.buyer_share, p) << ","
        << detail::fmt(r.x_star, p) << "," << detail::fmt(r.y_star, p);
      for (std::size_t c = 0; c < 4; ++c) s << "," << (r.corners ? detail::fmt(r.corners->splits[c].x, p) : "");
      s << "\n";
    }
    if (!cfg.curves_out.empty()) {
      std::ofstream f(cfg.curves_out, std::ios::binary);
      if (!f) throw UsageError("--curves-out: cannot write " + cfg.curves_out);
      f << "x,v_seller,v_buyer\n";
      for (const auto& c : curves) f << detail::fmt(c[0], p) << "," << detail::fmt(c[1], p) << "," << detail::fmt(c[2], p) << "\n";
    }
  }
  detail::emit(cfg, out, s.str());
  return kExitOk;
}

// Entry point shared by the executable and the tests. `args` excludes the
// program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bargaining-market equilibria: solve, simulate, verify, sweep", "bargain"};
  app.require_subcommand(1);

  std::string config_path, sellers, buyers, seller_strats, buyer_strats, format, out_path, trace_path, curves_out,
      sweep_var;
  std::uint64_t seed = 0;
  unsigned max_rounds = 0;
  double value_epsilon = 0.0, price = 0.0, from = 0.0, to = 0.0;
  std::size_t grid = 0, points = 0, curve_points = 0;
  int precision = 0;
  bool details = false;

  std::vector<CLI::App*> subs;
  subs.push_back(app.add_subcommand("solve", "closed-form unanimous price and shares"));
  subs.push_back(app.add_subcommand("simulate", "run the offer/accept market"));
  subs.push_back(app.add_subcommand("verify", "search for deviations from a price or a trace"));
  subs.push_back(app.add_subcommand("sweep", "sweep one discount factor and emit plot data"));

  for (CLI::App* sub : subs) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--sellers", sellers, "seller discount factors a,b,...");
    sub->add_option("--buyers", buyers, "buyer discount factors a,b,...");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--max-rounds", max_rounds, "round limit");
    sub->add_option("--value-epsilon", value_epsilon, "stop when every remaining pie is worth less");
    sub->add_option("--grid", grid, "split grid resolution for deviation search");
    sub->add_option("--out", out_path, "output file");
    sub->add_option("--format", format, "text|json|csv");
    sub->add_option("--precision", precision, "significant digits");
  }
  subs[0]->add_flag("--details", details, "also print x*, y* (n = 2) and the Nash-product cross-check");
  subs[1]->add_option("--seller-strategy", seller_strats, "equilibrium|fixed:P|greedy[:spread[:rate]]|random[:lo:hi], comma list per agent");
  subs[1]->add_option("--buyer-strategy", buyer_strats, "as --seller-strategy");
  subs[2]->add_option("--price", price, "candidate unanimous price");
  subs[2]->add_option("--trace", trace_path, "trace JSON written by simulate");
  subs[3]->add_option("--sweep", sweep_var, "variable to sweep: s<i> or b<i>");
  subs[3]->add_option("--from", from, "sweep start");
  subs[3]->add_option("--to", to, "sweep end");
  subs[3]->add_option("--points", points, "number of sweep points");
  subs[3]->add_option("--curve-points", curve_points, "continuation-curve samples");
  subs[3]->add_option("--curves-out", curves_out, "CSV file for continuation-curve samples");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto given = [&](const char* name) { return sub->count(name) > 0; };

  try {
    RunConfig cfg;
    if (given("--config")) detail::load_config_file(config_path, cfg);
    if (given("--sellers")) {
      cfg.sellers = detail::parse_list(sellers, "--sellers");
      cfg.spec_origin = "--sellers: ";
    }
    if (given("--buyers")) {
      cfg.buyers = detail::parse_list(buyers, "--buyers");
      if (!given("--sellers")) cfg.spec_origin = "--buyers: ";
    }
    if (given("--seed")) cfg.seed = seed;
    if (given("--max-rounds")) cfg.max_rounds = max_rounds;
    if (given("--value-epsilon")) cfg.value_epsilon = value_epsilon;
    if (given("--grid")) cfg.grid = grid;
    if (given("--out")) cfg.out = out_path;
    if (given("--format")) cfg.format = format;
    if (given("--precision")) cfg.precision = precision;
    if (cfg.precision < 1 || cfg.precision > 17) throw UsageError("--precision must lie in [1,17]");

    const std::string name = sub->get_name();
    if (name == "solve") {
      cfg.details = details;
      return cmd_solve(cfg, out);
    }
    if (name == "simulate") {
      if (given("--seller-strategy")) cfg.seller_strategies = detail::split_strategies(seller_strats);
      if (given("--buyer-strategy")) cfg.buyer_strategies = detail::split_strategies(buyer_strats);
      return cmd_simulate(cfg, out);
    }
    if (name == "verify") {
      if (given("--price")) cfg.verify_price = price;
      if (given("--trace")) cfg.verify_trace = trace_path;
      return cmd_verify(cfg, out);
    }
    if (given("--sweep")) cfg.sweep.variable = sweep_var;
    if (given("--from")) cfg.sweep.from = from;
    if (given("--to")) cfg.sweep.to = to;
    if (given("--points")) cfg.sweep.points = points;
    if (given("--curve-points")) cfg.sweep.curve_points = curve_points;
    if (given("--curves-out")) cfg.curves_out = curves_out;
    return cmd_sweep(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace bargain::cli

#endif  // BARGAIN_TOOLS_BARGAIN_CLI_HPP
