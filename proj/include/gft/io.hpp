#pragma once

// JSON and CSV emission with byte-stable output: sorted keys, doubles at 17
// significant digits, big integers as decimal strings. Also loads tower
// descriptions from JSON.

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gft/asymptotics.hpp"
#include "gft/bounds.hpp"
#include "gft/density.hpp"
#include "gft/quadfield.hpp"
#include "gft/tower.hpp"

namespace gft {

using Json = nlohmann::json;

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline void emit(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted keys
        if (!first) os << ',' << nl;
        first = false;
        os << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
        emit(os, it.value(), indent, depth + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[' << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',' << nl;
        os << pad;
        emit(os, j[i], indent, depth + 1);
      }
      os << nl << close_pad << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      // JSON has no infinities; they travel as strings.
      if (std::isfinite(x)) {
        os << format_double(x);
      } else {
        os << '"' << format_double(x) << '"';
      }
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace detail

inline std::string dump_json(const Json& j, int indent = 2) {
  std::ostringstream os;
  detail::emit(os, j, indent, 0);
  if (indent > 0) os << '\n';
  return os.str();
}

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

inline Json to_json(const ConstructionResult& c) {
  Json j;
  j["n"] = c.n;
  j["rn"] = c.rn;
  j["P"] = c.P;
  j["Q"] = c.Q;
  j["r"] = to_decimal(c.r.r);
  j["r_factors"] = c.r.factors;
  j["d"] = to_decimal(c.field.d());
  j["discriminant"] = to_decimal(c.field.discriminant());
  j["genus"] = c.field.genus();
  j["ramified"] = c.field.ramified_primes();
  j["gs_threshold"] = c.gs_threshold;
  j["gs_satisfied"] = c.gs_satisfied;
  return j;
}

inline Json to_json(const QuadField& k) {
  Json j;
  j["d"] = to_decimal(k.d());
  j["discriminant"] = to_decimal(k.discriminant());
  j["genus"] = k.genus();
  j["r1"] = k.r1();
  j["r2"] = k.r2();
  j["ramified"] = k.ramified_primes();
  return j;
}

inline Json to_json(const PhiVector& v) {
  Json j;
  j["variant"] = v.is_number_field() ? "nf" : "ff";
  if (!v.is_number_field()) j["r"] = v.constant_field();
  j["phi_infinity"] = v.phi_infinity();
  Json entries = Json::object();
  for (const auto& [place, value] : v.entries()) entries[place.to_string()] = value;
  j["entries"] = entries;
  return j;
}

inline Json to_json(const Tower& t) {
  Json j;
  j["constant_field"] = t.constant_field;
  if (t.base) {
    j["base_d"] = to_decimal(t.base->d());
    j["base_primes"] = t.base->d_primes();
  }
  Json levels = Json::array();
  for (const auto& l : t.levels) {
    Json lj;
    lj["degree"] = l.degree;
    lj["genus_star"] = l.genus_star;
    lj["r1"] = l.r1;
    lj["r2"] = l.r2;
    Json counts = Json::object();
    for (const auto& [q, c] : l.place_counts) counts[std::to_string(q)] = c;
    lj["place_counts"] = counts;
    levels.push_back(lj);
  }
  j["levels"] = levels;
  Json events = Json::array();
  for (const auto& ev : t.events) {
    Json ej;
    ej["level"] = ev.level;
    Json places = Json::array();
    for (const auto& pl : ev.places) {
      Json pj;
      pj["norm"] = pl.norm;
      Json factors = Json::array();
      for (const auto& f : pl.factors) {
        Json fj;
        fj["e"] = f.e;
        fj["f"] = f.f;
        fj["multiplicity"] = f.multiplicity;
        if (f.different) fj["different"] = *f.different;
        factors.push_back(fj);
      }
      pj["factors"] = factors;
      places.push_back(pj);
    }
    ej["places"] = places;
    events.push_back(ej);
  }
  j["events"] = events;
  Json split = Json::object();
  for (const auto& [q, c] : t.split_norms) split[std::to_string(q)] = c;
  j["split_norms"] = split;
  return j;
}

namespace detail {
inline std::map<std::uint64_t, std::uint64_t> count_map(const Json& j, const char* what) {
  std::map<std::uint64_t, std::uint64_t> out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw std::invalid_argument(std::string("tower: ") + what + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) out[std::stoull(it.key())] = it.value().get<std::uint64_t>();
  return out;
}
}  // namespace detail

// Tower description: {"constant_field": 0, "base_d": "105", "base_primes": [3, 5, 7],
// "levels": [...], "events": [...], "split_norms": {...}}, fields as emitted by to_json.
inline Tower tower_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("tower: expected a JSON object");
  Tower t;
  t.constant_field = j.value("constant_field", std::uint64_t{0});
  if (j.contains("base_d")) {
    const auto& b = j["base_d"];
    if (j.contains("base_primes")) {
      // d may exceed 64 bits; rebuild it from its factorization and check
      const bool negative = b.is_string() ? b.get<std::string>().starts_with('-') : b.get<std::int64_t>() < 0;
      t.base = QuadField::from_factorization(negative ? -1 : 1, j["base_primes"].get<std::vector<std::uint64_t>>());
      const std::string given = b.is_string() ? b.get<std::string>() : std::to_string(b.get<std::int64_t>());
      if (to_decimal(t.base->d()) != given) throw std::invalid_argument("tower: base_d does not match base_primes");
    } else {
      try {
        t.base = QuadField::from_int(b.is_string() ? std::stoll(b.get<std::string>()) : b.get<std::int64_t>());
      } catch (const std::out_of_range&) {
        throw std::invalid_argument("tower: base_d beyond 64 bits needs base_primes");
      }
    }
  }
  if (!j.contains("levels") || !j["levels"].is_array()) throw std::invalid_argument("tower: missing levels array");
  for (const auto& lj : j["levels"]) {
    TowerLevel l;
    l.degree = lj.at("degree").get<std::uint64_t>();
    l.genus_star = lj.at("genus_star").get<double>();
    l.r1 = lj.value("r1", std::uint64_t{0});
    l.r2 = lj.value("r2", std::uint64_t{0});
    l.place_counts = detail::count_map(lj.value("place_counts", Json()), "place_counts");
    t.levels.push_back(std::move(l));
  }
  for (const auto& ej : j.value("events", Json::array())) {
    RamificationEvent ev;
    ev.level = ej.at("level").get<std::size_t>();
    for (const auto& pj : ej.value("places", Json::array())) {
      RamifiedPlace pl;
      pl.norm = pj.at("norm").get<std::uint64_t>();
      for (const auto& fj : pj.value("factors", Json::array())) {
        RamifiedFactor f;
        f.e = fj.value("e", std::uint64_t{1});
        f.f = fj.value("f", std::uint64_t{1});
        f.multiplicity = fj.value("multiplicity", std::uint64_t{1});
        if (fj.contains("different")) f.different = fj["different"].get<std::uint64_t>();
        pl.factors.push_back(f);
      }
      ev.places.push_back(std::move(pl));
    }
    t.events.push_back(std::move(ev));
  }
  t.split_norms = detail::count_map(j.value("split_norms", Json()), "split_norms");
  t.validate();
  return t;
}

inline Json to_json(const InequalityReport& r) {
  Json j;
  j["variant"] = to_string(r.variant);
  j["lhs"] = r.lhs;
  j["deficiency"] = r.deficiency;
  j["finite_term"] = r.finite_term;
  j["arch_term"] = r.arch_term;
  Json b = Json::object();
  for (const auto& [place, c] : r.breakdown) b[place.to_string()] = c;
  j["breakdown"] = b;
  return j;
}

inline Json to_json(const IharaReport& r) {
  Json j;
  j["sum"] = r.sum;
  j["simple_bound"] = r.simple_bound;
  j["refined_bound"] = r.refined_bound;
  j["holds"] = r.holds;
  return j;
}

inline Json to_json(const DeficiencyLowerBound& b) {
  Json j;
  Json places = Json::array();
  for (const auto& o : b.P_set) places.push_back({{"prime", o.prime}, {"norm", o.norm}, {"count", o.count}});
  j["P"] = places;
  j["p0"] = b.p0;
  j["p0_norm"] = b.p0_norm;
  j["alpha"] = b.alpha;
  j["exact"] = b.exact;
  j["target"] = b.target;
  j["place_sum"] = b.place_sum;
  j["norm_cap"] = b.norm_cap;
  return j;
}

inline Json to_json(const DensityReport& r) {
  Json j;
  j["context"] = r.context;
  j["value"] = r.value.get_str();
  j["lower_bound"] = r.lower_bound.get_str();
  j["upper_bound"] = r.upper_bound.get_str();
  j["value_approx"] = r.value.get_d();
  j["normal"] = r.normal;
  j["lower_attained"] = r.lower_attained;
  return j;
}

inline Json to_json(const EmpiricalDensity& e) {
  return Json{{"fraction", e.fraction}, {"split", e.split}, {"unramified", e.unramified}, {"density", "natural"}};
}

inline Json to_json(const NortonPoint& p) {
  return Json{{"x", p.x}, {"partial_sum", p.partial_sum}, {"deviation", p.deviation}};
}

inline Json to_json(const SequenceReport& r) {
  Json j;
  j["name"] = r.name;
  Json s = Json::array();
  for (const auto& x : r.samples)
    s.push_back({{"n", x.n}, {"computed", x.computed}, {"asymptote", x.asymptote}, {"ratio", x.ratio}});
  j["samples"] = s;
  if (r.abel_max_rel_error) j["abel_max_rel_error"] = *r.abel_max_rel_error;
  return j;
}

// CSV, fixed columns per report type.

namespace detail {
template <class T>
std::string join(const std::vector<T>& v, char sep = ';') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}
}  // namespace detail

inline std::string construction_csv(const std::vector<ConstructionResult>& rows) {
  std::string out = "n,rn,P,Q,r,d,discriminant,genus,ramified,gs_threshold,gs_satisfied\n";
  for (const auto& c : rows) {
    out += std::to_string(c.n) + ',' + std::to_string(c.rn) + ',' + detail::join(c.P) + ',' + detail::join(c.Q) + ',' +
           to_decimal(c.r.r) + ',' + to_decimal(c.field.d()) + ',' + to_decimal(c.field.discriminant()) + ',' +
           format_double(c.field.genus()) + ',' + detail::join(c.field.ramified_primes()) + ',' +
           format_double(c.gs_threshold) + ',' + (c.gs_satisfied ? "true" : "false") + '\n';
  }
  return out;
}

struct InequalityRow {
  Variant variant = Variant::nf;
  std::uint64_t n = 0;
  double lhs = 0.0;
  double deficiency = 0.0;
  double alpha = 0.0;
};

inline std::string inequality_csv(const std::vector<InequalityRow>& rows) {
  std::string out = "variant,n,lhs,deficiency,alpha\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.variant)) + ',' + std::to_string(r.n) + ',' + format_double(r.lhs) + ',' +
           format_double(r.deficiency) + ',' + format_double(r.alpha) + '\n';
  }
  return out;
}

inline std::string norton_csv(const std::vector<NortonPoint>& rows) {
  std::string out = "x,partial_sum,deviation\n";
  for (const auto& p : rows)
    out += std::to_string(p.x) + ',' + format_double(p.partial_sum) + ',' + format_double(p.deviation) + '\n';
  return out;
}

inline std::string sequence_csv(const SequenceReport& r) {
  std::string out = "n,computed,asymptote,ratio\n";
  for (const auto& s : r.samples) {
    out += std::to_string(s.n) + ',' + format_double(s.computed) + ',' + format_double(s.asymptote) + ',' +
           format_double(s.ratio) + '\n';
  }
  return out;
}

}  // namespace gft
