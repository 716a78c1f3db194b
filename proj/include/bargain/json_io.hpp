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

// Canonical JSON for traces and verifier reports.
//
// Object keys are emitted in sorted order and every real number is a decimal
// string with 15 significant digits, so equal traces serialize to equal
// bytes.

#ifndef BARGAIN_JSON_IO_HPP
#define BARGAIN_JSON_IO_HPP

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "bargain/market_protocol.hpp"
#include "bargain/verifier.hpp"

namespace bargain {

using Json = nlohmann::json;

inline constexpr const char* kTraceSchema = "bargain.trace/1";
inline constexpr const char* kReportSchema = "bargain.report/1";
inline constexpr int kCanonicalDigits = 15;

inline std::string format_real(double v, int digits = kCanonicalDigits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline double parse_real(const Json& j, const char* what) {
  if (!j.is_string()) throw ConfigError(std::string(what) + ": expected a decimal string");
  const std::string s = j.get<std::string>();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError(std::string(what) + ": not a number: \"" + s + "\"");
  }
  return v;
}

inline std::string price_string(const Price& p) {
  return p.is_infinite() ? "inf" : format_real(p.value());
}

inline AgentId parse_agent(const Json& j) {
  if (!j.is_string()) throw ConfigError("agent id: expected a string like \"S1\"");
  const std::string s = j.get<std::string>();
  if (s.size() < 2 || (s[0] != 'S' && s[0] != 'B')) throw ConfigError("bad agent id \"" + s + "\"");
  char* end = nullptr;
  const long k = std::strtol(s.c_str() + 1, &end, 10);
  if (*end != '\0' || k < 1) throw ConfigError("bad agent id \"" + s + "\"");
  return AgentId{s[0] == 'S' ? Side::kSeller : Side::kBuyer, static_cast<std::size_t>(k - 1)};
}

inline Json offer_to_json(const Offer& o) {
  return Json{{"poster", to_string(o.poster)}, {"price", price_string(o.price)}, {"round", o.round}};
}

inline Json to_json(const Trace& trace) {
  Json spec{{"sellers", Json::array()}, {"buyers", Json::array()}};
  for (double d : trace.spec.sellers()) spec["sellers"].push_back(format_real(d));
  for (double d : trace.spec.buyers()) spec["buyers"].push_back(format_real(d));

  Json rounds = Json::array();
  for (const RoundRecord& r : trace.rounds) {
    Json asks = Json::array(), bids = Json::array(), agreements = Json::array();
    for (const Offer& o : r.book.selling) asks.push_back(offer_to_json(o));
    for (const Offer& o : r.book.buying) bids.push_back(offer_to_json(o));
    for (const Agreement& a : r.agreements) {
      agreements.push_back(Json{{"seller", to_string(a.seller)},
                                {"buyer", to_string(a.buyer)},
                                {"price", price_string(a.price)},
                                {"round", a.round}});
    }
    rounds.push_back(Json{{"round", r.round}, {"asks", asks}, {"bids", bids}, {"agreements", agreements}});
  }

  Json unmatched = Json::array();
  for (const AgentId& id : trace.unmatched) unmatched.push_back(to_string(id));

  return Json{{"schema", kTraceSchema},
              {"spec", spec},
              {"seed", trace.seed},
              {"rounds", rounds},
              {"unmatched", unmatched},
              {"terminated_reason", to_string(trace.terminated_reason)}};
}

inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline Offer offer_from_json(const Json& j) {
  return Offer{parse_agent(member(j, "poster")), Price(parse_real(member(j, "price"), "price")),
               member(j, "round").get<unsigned>()};
}

inline Termination termination_from_string(const std::string& s) {
  if (s == "all-matched") return Termination::kAllMatched;
  if (s == "max-rounds") return Termination::kMaxRounds;
  if (s == "value-epsilon") return Termination::kValueEpsilon;
  throw ConfigError("unknown terminated_reason \"" + s + "\"");
}

}  // namespace detail

// Inverse of to_json. Throws ConfigError on anything malformed.
inline Trace trace_from_json(const Json& j) {
  try {
    if (detail::member(j, "schema") != kTraceSchema) throw ConfigError("unsupported trace schema");
    const Json& spec_j = detail::member(j, "spec");
    std::vector<double> sellers, buyers;
    for (const Json& d : detail::member(spec_j, "sellers")) sellers.push_back(parse_real(d, "seller delta"));
    for (const Json& d : detail::member(spec_j, "buyers")) buyers.push_back(parse_real(d, "buyer delta"));

    Trace t{MarketSpec(std::move(sellers), std::move(buyers)), detail::member(j, "seed").get<std::uint64_t>(),
            {}, {}, detail::termination_from_string(detail::member(j, "terminated_reason").get<std::string>())};
    for (const Json& r : detail::member(j, "rounds")) {
      RoundRecord rec;
      rec.round = detail::member(r, "round").get<unsigned>();
      for (const Json& o : detail::member(r, "asks")) rec.book.selling.push_back(detail::offer_from_json(o));
      for (const Json& o : detail::member(r, "bids")) rec.book.buying.push_back(detail::offer_from_json(o));
      for (const Json& a : detail::member(r, "agreements")) {
        rec.agreements.push_back(Agreement{parse_agent(detail::member(a, "seller")),
                                           parse_agent(detail::member(a, "buyer")),
                                           Price(parse_real(detail::member(a, "price"), "price")),
                                           detail::member(a, "round").get<unsigned>()});
      }
      t.rounds.push_back(std::move(rec));
    }
    for (const Json& id : detail::member(j, "unmatched")) t.unmatched.push_back(parse_agent(id));

    const std::size_t n = t.spec.size();
    std::vector<bool> seen_s(n, false), seen_b(n, false);
    const auto claim = [&](AgentId id) {
      if (id.index >= n) throw ConfigError("agent " + to_string(id) + " out of range");
      auto& seen = id.role == Side::kSeller ? seen_s : seen_b;
      if (seen[id.index]) throw ConfigError("agent " + to_string(id) + " appears twice");
      seen[id.index] = true;
    };
    for (const Agreement& a : t.agreements()) {
      if (a.seller.role != Side::kSeller || a.buyer.role != Side::kBuyer) {
        throw ConfigError("agreement with swapped roles");
      }
      claim(a.seller);
      claim(a.buyer);
    }
    for (const AgentId& id : t.unmatched) claim(id);
    return t;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed trace: ") + e.what());
  } catch (const PreconditionViolation& e) {
    throw ConfigError(std::string("malformed trace: ") + e.what());
  }
}

inline Json to_json(const Deviation& d) {
  Json participants = Json::array(), gains = Json::array();
  for (const AgentId& id : d.participants) participants.push_back(to_string(id));
  for (double g : d.payoff_gains) gains.push_back(format_real(g));
  Json out{{"kind", to_string(d.kind)},
           {"participants", participants},
           {"new_split", format_real(d.new_split)},
           {"new_time", d.new_time},
           {"payoff_gains", gains}};
  if (d.counterparty) out["counterparty"] = to_string(*d.counterparty);
  return out;
}

inline Json to_json(const TraceReport& r) {
  Json deviations = Json::array();
  if (r.deviation) deviations.push_back(to_json(*r.deviation));
  return Json{{"schema", kReportSchema},
              {"agreements", r.agreement_count},
              {"vacuous", r.vacuous},
              {"unanimous", r.unanimous},
              {"common_price", r.common_price ? Json(format_real(*r.common_price)) : Json(nullptr)},
              {"p_n", format_real(r.p_n)},
              {"matches_p_n", r.matches_p_n},
              {"deviations", deviations}};
}

// Report for a candidate unanimous price.
inline Json price_report(double candidate, double p_n, const std::optional<Deviation>& d) {
  Json deviations = Json::array();
  if (d) deviations.push_back(to_json(*d));
  return Json{{"schema", kReportSchema},
              {"unanimous", true},
              {"common_price", format_real(candidate)},
              {"p_n", format_real(p_n)},
              {"deviations", deviations}};
}

}  // namespace bargain

#endif  // BARGAIN_JSON_IO_HPP
