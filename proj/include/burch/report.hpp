#pragma once

// Structured verification outcomes shared by the invariant and analysis layers.

#include <burch/ideal.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace burch {

using Json = nlohmann::ordered_json;

enum class Subject { BIG1, BIG2, DUAL2, DUALPOS, TWIST1, DUALITY, PERIODICITY };
enum class Conclusion { VERIFIED, FALSIFIED, INCONCLUSIVE };

inline const char* to_string(Subject s) {
  switch (s) {
    case Subject::BIG1: return "BIG1";
    case Subject::BIG2: return "BIG2";
    case Subject::DUAL2: return "DUAL2";
    case Subject::DUALPOS: return "DUALPOS";
    case Subject::TWIST1: return "TWIST1";
    case Subject::DUALITY: return "DUALITY";
    case Subject::PERIODICITY: return "PERIODICITY";
  }
  return "?";
}

inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::VERIFIED: return "VERIFIED";
    case Conclusion::FALSIFIED: return "FALSIFIED";
    case Conclusion::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

struct Precondition {
  std::string name;
  bool met = false;
  std::string witness;
};

/// FALSIFIED is reserved for a conclusion that fails on the computed prefix
/// while every precondition holds.
struct Report {
  Subject subject = Subject::PERIODICITY;
  std::vector<Precondition> preconditions;
  Conclusion conclusion = Conclusion::INCONCLUSIVE;
  Json data = Json::object();
  int prefix_length = 0;
  std::optional<std::uint64_t> seed;

  bool preconditions_met() const {
    for (const auto& p : preconditions)
      if (!p.met) return false;
    return true;
  }
  void require(std::string name, bool met, std::string witness = {}) {
    preconditions.push_back({std::move(name), met, std::move(witness)});
  }
};

inline Json to_json(const Report& r) {
  Json j;
  j["subject"] = to_string(r.subject);
  j["preconditions"] = Json::array();
  for (const auto& p : r.preconditions)
    j["preconditions"].push_back({{"name", p.name}, {"met", p.met}, {"witness", p.witness}});
  j["conclusion"] = to_string(r.conclusion);
  j["data"] = r.data;
  j["prefix_length"] = r.prefix_length;
  if (r.seed) j["seed"] = *r.seed;
  else j["seed"] = nullptr;
  return j;
}

inline Json to_json(const Length& l) {
  if (l.is_infinite()) return "INFINITE";
  return l.value();
}

inline Json polys_json(const std::vector<Polynomial>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_string(p));
  return a;
}

/// Canonical minimal generators of an S-ideal.
inline Json ideal_json(const Ideal& a) { return polys_json(minimal_generators(a)); }

/// Minimal generators of the image in S/I.
inline Json ideal_mod_json(const Ideal& a, const Ideal& I) { return polys_json(minimal_generators_mod(a, I)); }

}  // namespace burch
